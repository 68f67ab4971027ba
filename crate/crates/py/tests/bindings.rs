use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let module = PyModule::new(py, "antibunch").unwrap();
        antibunch_py::register(&module).unwrap();
        let globals = PyDict::new(py);
        globals.set_item("ab", module).unwrap();
        if let Err(e) = py.run(code, Some(&globals), None) {
            panic!("{e}");
        }
    });
}

#[test]
fn params_roundtrip_through_python() {
    run(c"
p = ab.SystemParams('cavity', g=0.7, epsilon=0.01, gamma=1.0)
assert p.drive == 'cavity'
assert p.gamma1 == p.gamma2 == 1.0
p.V = 0.3
assert p.V == 0.3
q = ab.SystemParams.experimental('atom')
assert abs(q.g - 3.12) < 1e-12 and q.x2 == 1.0
try:
    ab.SystemParams(kappa=-1.0)
    raise AssertionError('accepted negative kappa')
except ValueError:
    pass
try:
    ab.SystemParams('laser')
    raise AssertionError('accepted unknown drive')
except ValueError:
    pass
");
}

#[test]
fn numeric_and_analytic_agree_in_weak_drive() {
    run(c"
p = ab.SystemParams.experimental('atom')
p.delta_a, p.delta_c, p.V, p.epsilon = -8.0, 12.0, 5.0, 0.005
num = ab.g2_numeric(p, fock=3)
ana = ab.g2_analytic(p)
assert abs(num - ana) / ana < 0.05, (num, ana)
obs = ab.steady_observables(p, fock='auto')
assert obs['cutoff'] >= 5 and obs['mean_photon'] > 0
amps = ab.amplitudes(p)
assert amps['gg0'] == 1 and isinstance(amps['gg2'], complex)
upb, pb = ab.optimal_detunings(10.0, 13.9, 3.12)
assert abs(upb - 1.95) < 1e-12 and abs(pb - 2 * 3.12**2 / 10) < 1e-12
assert abs(ab.rydberg_coupling(4.0) - 28.33) / 28.33 < 0.01
assert abs(ab.optimal_g_cavity_driven(0.01) - 0.70718) < 1e-4
");
}

#[test]
fn delay_trace_and_spectrum() {
    run(c"
p = ab.SystemParams.experimental('atom')
p.delta_a, p.delta_c, p.V, p.epsilon = 1.95, 10.0, 13.9, 0.2
trace = ab.g2_tau(p, [0.0, 1.0, 2.0], cutoff=4)
assert len(trace) == 3 and trace[0] < trace[1]
spectrum = ab.liouvillian_spectrum(ab.SystemParams('cavity', g=0.5, epsilon=0.1, gamma=0.5))
assert sum(abs(z) < 1e-10 for z in spectrum) == 1
try:
    ab.g2_tau(p, [1.0, 0.0])
    raise AssertionError('accepted unsorted grid')
except ValueError:
    pass
");
}

#[test]
fn sweep_from_toml() {
    run(c"
cfg = '''
engine = \"weakdrive\"
[params]
drive = \"cavity\"
gamma = 1.0
epsilon = 0.01
[[axes]]
param = \"g\"
min = 0.5
max = 0.9
steps = 5
'''
r = ab.run_sweep(cfg, jobs=1)
assert r.shape == (5, 1)
assert list(r.axes) == ['g']
col = r.observable('g2_0_analytic')
assert min(range(5), key=lambda i: col[i][0]) == 2
assert r.to_csv().splitlines()[0] == 'g,g2_0_analytic,flags'
assert '\"schema_version\": 1' in r.to_json()
assert 'fig9a' in ab.presets()
try:
    ab.run_sweep('bogus = 1')
    raise AssertionError('accepted bad config')
except ValueError:
    pass
");
}
