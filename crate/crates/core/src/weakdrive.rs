//! Weak-drive analytics: the two-excitation amplitude ansatz, its stationary
//! closed forms, analytic g²(0) and the optimal-condition formulas.
//!
//! Amplitudes are written on `|gg,0>, |gg,1>, |gg,2>, |+,0>, |+,1>, |rr,0>`
//! with `|+> = (|rg> + |gr>)/√2` and `c_gg0` pinned to 1. Each equation of
//! motion has the form `i dc/dt = A c + b` over the five excited amplitudes.
//!
//! Atom drive keeps only the terms that raise the excitation number (strict
//! hierarchy). Cavity drive keeps the back-coupling terms `√2ε c_gg2` and
//! `ε c_+1` as well; its closed form is exact for that system.

use faer::{c64, Mat};

use crate::error::{Error, Result};
use crate::linalg::{self, I, ONE, ZERO};
use crate::model::{DriveScheme, SystemParams};

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Relative size below which a closed-form denominator counts as a pole.
pub const SINGULAR_RTOL: f64 = 1e-12;
/// Largest pump, in units of κ, for which the amplitude hierarchy is trusted.
pub const MAX_WEAK_EPSILON: f64 = 0.1;
/// Relative rate of change below which integrated amplitudes are stationary.
pub const STATIONARY_RTOL: f64 = 1e-8;

/// Probability amplitudes of the truncated weak-drive wave function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeSet {
    pub c_gg0: c64,
    pub c_gg1: c64,
    pub c_gg2: c64,
    /// Symmetric single excitation with zero photons.
    pub c_p0: c64,
    /// Symmetric single excitation with one photon.
    pub c_p1: c64,
    pub c_rr0: c64,
}

impl AmplitudeSet {
    fn from_excited(x: [c64; 5]) -> Self {
        AmplitudeSet {
            c_gg0: ONE,
            c_gg1: x[0],
            c_gg2: x[1],
            c_rr0: x[2],
            c_p0: x[3],
            c_p1: x[4],
        }
    }

    fn excited(&self) -> [c64; 5] {
        [self.c_gg1, self.c_gg2, self.c_rr0, self.c_p0, self.c_p1]
    }

    /// `2|c_gg2|² / |c_gg1|⁴`.
    pub fn g2(&self) -> Result<f64> {
        let n1 = self.c_gg1.norm_sqr();
        if n1 == 0.0 || !n1.is_finite() {
            return Err(Error::UndefinedCorrelation { mean_photon: n1 });
        }
        Ok(2.0 * self.c_gg2.norm_sqr() / (n1 * n1))
    }

    /// `|c_gg0| ≥ max(|c_gg1|, |c_p0|) ≥ max(|c_gg2|, |c_p1|, |c_rr0|)`.
    pub fn respects_hierarchy(&self) -> bool {
        let first = self.c_gg1.norm().max(self.c_p0.norm());
        let second = self.c_gg2.norm().max(self.c_p1.norm()).max(self.c_rr0.norm());
        self.c_gg0.norm() >= first && first >= second
    }

    /// Largest relative difference over all six amplitudes.
    pub fn max_relative_diff(&self, other: &AmplitudeSet) -> f64 {
        let a = [self.c_gg0, self.c_gg1, self.c_gg2, self.c_p0, self.c_p1, self.c_rr0];
        let b = [other.c_gg0, other.c_gg1, other.c_gg2, other.c_p0, other.c_p1, other.c_rr0];
        a.iter()
            .zip(&b)
            .map(|(x, y)| {
                let scale = x.norm().max(y.norm());
                if scale == 0.0 {
                    0.0
                } else {
                    (x - y).norm() / scale
                }
            })
            .fold(0.0, f64::max)
    }
}

/// `(A, b)` with `i dc/dt = A c + b` on `[gg1, gg2, rr0, +0, +1]`.
fn equations_of_motion(p: &SystemParams) -> Result<([[c64; 5]; 5], [c64; 5])> {
    p.validate()?;
    let gamma = p.gamma()?;
    let (da, dc, g, v, e, k) = (p.delta_a, p.delta_c, p.g, p.v, p.epsilon, p.kappa);
    let c = |re: f64, im: f64| c64::new(re, im);
    let r = |re: f64| c64::new(re, 0.0);
    let mut a = [[ZERO; 5]; 5];
    let mut b = [ZERO; 5];

    a[0][0] = c(-dc, -0.5 * k);
    a[0][3] = r(SQRT2 * g);
    a[1][1] = c(-2.0 * dc, -k);
    a[1][4] = r(2.0 * g);
    a[2][2] = c(-2.0 * da + v, -gamma);
    a[2][4] = r(SQRT2 * g);
    a[3][3] = c(-da, -0.5 * gamma);
    a[3][0] = r(SQRT2 * g);
    a[4][4] = c(-da - dc, -0.5 * (gamma + k));
    a[4][2] = r(SQRT2 * g);
    a[4][1] = r(2.0 * g);

    match p.drive {
        DriveScheme::AtomDriven => {
            b[3] = r(SQRT2 * e);
            a[2][3] = r(SQRT2 * e);
            a[4][0] = r(SQRT2 * e);
        }
        DriveScheme::CavityDriven => {
            b[0] = r(e);
            a[0][1] = r(SQRT2 * e);
            a[1][0] = r(SQRT2 * e);
            a[3][4] = r(e);
            a[4][3] = r(e);
        }
    }
    Ok((a, b))
}

fn solve5(a: &[[c64; 5]; 5], b: &[c64; 5]) -> Result<[c64; 5]> {
    let m = Mat::from_fn(5, 5, |i, j| a[i][j]);
    let rhs = Mat::from_fn(5, 1, |i, _| -b[i]);
    let x = linalg::solve(m.as_ref(), rhs.as_ref()).map_err(|_| Error::Singular {
        what: "stationary amplitude system",
        magnitude: 0.0,
        scale: 1.0,
    })?;
    let mut out = [ZERO; 5];
    for (i, o) in out.iter_mut().enumerate() {
        *o = x[(i, 0)];
    }
    Ok(out)
}

/// Stationary amplitudes by direct solution of the equations of motion.
/// Valid for either drive and any detunings.
pub fn stationary_amplitudes(params: &SystemParams) -> Result<AmplitudeSet> {
    let (a, b) = equations_of_motion(params)?;
    Ok(AmplitudeSet::from_excited(solve5(&a, &b)?))
}

/// Sum of terms, rejected as a pole when it cancels to `SINGULAR_RTOL` of its term scale.
fn checked_sum(what: &'static str, terms: &[c64]) -> Result<c64> {
    let sum: c64 = terms.iter().sum();
    let scale: f64 = terms.iter().map(|t| t.norm()).sum();
    if !(sum.norm() > SINGULAR_RTOL * scale) {
        return Err(Error::Singular {
            what,
            magnitude: sum.norm(),
            scale,
        });
    }
    Ok(sum)
}

fn require(params: &SystemParams, drive: DriveScheme) -> Result<f64> {
    params.validate()?;
    if params.drive != drive {
        return Err(Error::invalid(format!("expected {drive}-driven parameters, got {}", params.drive)));
    }
    params.gamma()
}

/// `M = 8g² − 2iκΔa − 2iγΔc − 4ΔaΔc + κγ`.
pub fn denominator_m(params: &SystemParams) -> Result<c64> {
    let gamma = params.gamma()?;
    let (da, dc, g, k) = (params.delta_a, params.delta_c, params.g, params.kappa);
    checked_sum(
        "M",
        &[
            c64::new(8.0 * g * g, 0.0),
            c64::new(0.0, -2.0 * k * da),
            c64::new(0.0, -2.0 * gamma * dc),
            c64::new(-4.0 * da * dc, 0.0),
            c64::new(k * gamma, 0.0),
        ],
    )
}

/// Two-photon denominator of the atom-driven closed form.
pub fn denominator_n(params: &SystemParams) -> Result<c64> {
    let gm = params.gamma()?;
    let (da, dc, g, v, k) = (params.delta_a, params.delta_c, params.g, params.v, params.kappa);
    let g2 = g * g;
    let re = |x: f64| c64::new(x, 0.0);
    let im = |x: f64| c64::new(0.0, x);
    checked_sum(
        "N",
        &[
            im(8.0 * da * da * dc),
            re(-4.0 * da * da * k),
            im(8.0 * da * dc * dc),
            im(-4.0 * da * dc * v),
            re(-8.0 * da * dc * gm),
            re(-8.0 * da * dc * k),
            re(2.0 * da * v * k),
            im(-16.0 * da * g2),
            im(-4.0 * da * gm * k),
            im(-2.0 * da * k * k),
            im(-4.0 * dc * dc * v),
            re(-4.0 * dc * dc * gm),
            re(2.0 * dc * v * gm),
            re(4.0 * dc * v * k),
            im(-8.0 * dc * g2),
            im(-2.0 * dc * gm * gm),
            im(-4.0 * dc * gm * k),
            im(8.0 * v * g2),
            im(v * gm * k),
            im(v * k * k),
            re(8.0 * g2 * gm),
            re(4.0 * g2 * k),
            re(gm * gm * k),
            re(gm * k * k),
        ],
    )
}

/// Closed-form stationary amplitudes under atom drive.
///
/// `c_gg1 = −8gε/M`, `c_gg2 = 16√2 g²ε²(κ + 2γ − 4iΔa − 2iΔc + 2iV)/(M N)`;
/// the single- and double-atom amplitudes come from the stationary system.
pub fn steady_amplitudes_atom_driven(params: &SystemParams) -> Result<AmplitudeSet> {
    let gamma = require(params, DriveScheme::AtomDriven)?;
    let m = denominator_m(params)?;
    let n = denominator_n(params)?;
    let (da, dc, g, v, e, k) = (
        params.delta_a,
        params.delta_c,
        params.g,
        params.v,
        params.epsilon,
        params.kappa,
    );
    let c1 = c64::new(-8.0 * g * e, 0.0) / m;
    let numer = c64::new(k + 2.0 * gamma, -4.0 * da - 2.0 * dc + 2.0 * v);
    let c2 = numer * (16.0 * SQRT2 * g * g * e * e) / (m * n);
    let mut amps = stationary_amplitudes(params)?;
    amps.c_gg1 = c1;
    amps.c_gg2 = c2;
    Ok(amps)
}

/// Two-photon denominator of the cavity-driven closed form (Δa = Δc = 0).
pub fn denominator_cavity(params: &SystemParams) -> Result<c64> {
    let gm = params.gamma()?;
    let (g, v, e, k) = (params.g, params.v, params.epsilon, params.kappa);
    let (e2, g2) = (e * e, g * g);
    let level = 4.0 * e2 + gm * (gm + k);
    checked_sum(
        "N",
        &[
            c64::new(gm, v) * ((4.0 * e2 + k * k) * level),
            c64::new(k + 2.0 * gm, 2.0 * v) * (32.0 * g2 * g2),
            c64::new(gm * k * (3.0 * k + 4.0 * gm), 0.0) * (4.0 * g2),
            c64::new(3.0 * gm, 4.0 * v) * (-16.0 * e2 * g2),
            I * (8.0 * g2 * k * (k + 2.0 * gm) * v),
        ],
    )
}

/// Closed-form stationary amplitudes under cavity drive at zero detunings.
///
/// `c_gg2 = −2√2ε²[(4ε² + γ(γ+κ))(γ+iV) − 4g²(γ+2iV)]/N`; the remaining
/// amplitudes come from the stationary system.
pub fn steady_amplitudes_cavity_driven(params: &SystemParams) -> Result<AmplitudeSet> {
    let gamma = require(params, DriveScheme::CavityDriven)?;
    if params.delta_a != 0.0 || params.delta_c != 0.0 {
        return Err(Error::invalid(format!(
            "cavity-driven closed form needs delta_a = delta_c = 0, got {} and {}",
            params.delta_a, params.delta_c
        )));
    }
    let n = denominator_cavity(params)?;
    let (g, v, e, k) = (params.g, params.v, params.epsilon, params.kappa);
    let level = 4.0 * e * e + gamma * (gamma + k);
    let numer = c64::new(gamma, v) * level - c64::new(gamma, 2.0 * v) * (4.0 * g * g);
    let c2 = -numer * (2.0 * SQRT2 * e * e) / n;
    let mut amps = stationary_amplitudes(params)?;
    amps.c_gg2 = c2;
    Ok(amps)
}

pub fn g2_analytic_atom_driven(params: &SystemParams) -> Result<f64> {
    steady_amplitudes_atom_driven(params)?.g2()
}

pub fn g2_analytic_cavity_driven(params: &SystemParams) -> Result<f64> {
    steady_amplitudes_cavity_driven(params)?.g2()
}

/// Analytic g²(0) for whichever drive `params` selects.
pub fn g2_analytic(params: &SystemParams) -> Result<f64> {
    match params.drive {
        DriveScheme::AtomDriven => g2_analytic_atom_driven(params),
        DriveScheme::CavityDriven => g2_analytic_cavity_driven(params),
    }
}

/// `16(2g² − ΔaΔc)²(2Δa + Δc − V)²`, the large-detuning numerator of the atom-driven g²(0).
pub fn large_detuning_numerator(params: &SystemParams) -> f64 {
    let pb = 2.0 * params.g * params.g - params.delta_a * params.delta_c;
    let upb = 2.0 * params.delta_a + params.delta_c - params.v;
    16.0 * pb * pb * upb * upb
}

/// Atom-driven g²(0) in the large-detuning limit, `numerator / |N|²`.
pub fn g2_large_detuning_atom_driven(params: &SystemParams) -> Result<f64> {
    require(params, DriveScheme::AtomDriven)?;
    Ok(large_detuning_numerator(params) / denominator_n(params)?.norm_sqr())
}

/// Atom detunings that null the two-photon amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalDetunings {
    /// Interference condition `Δa = (V − Δc)/2`.
    pub upb: f64,
    /// Level-shift condition `Δa = 2g²/Δc`.
    pub pb: f64,
}

pub fn optimal_detunings_atom_driven(delta_c: f64, v: f64, g: f64) -> Result<OptimalDetunings> {
    if delta_c == 0.0 {
        return Err(Error::invalid("the blockade branch Δa = 2g²/Δc needs delta_c ≠ 0"));
    }
    Ok(OptimalDetunings {
        upb: 0.5 * (v - delta_c),
        pb: 2.0 * g * g / delta_c,
    })
}

/// `V = Δc + 4g²/Δc`, where both optimal detunings coincide.
pub fn upb_pb_intersection_curve(delta_c: f64, g: f64) -> Result<f64> {
    if delta_c == 0.0 {
        return Err(Error::invalid("intersection curve needs delta_c ≠ 0"));
    }
    Ok(delta_c + 4.0 * g * g / delta_c)
}

/// Coupling that nulls the cavity-driven two-photon amplitude at V = 0:
/// `g = sqrt(ε² + (κγ + γ²)/4)`.
pub fn optimal_g_cavity_driven(epsilon: f64, kappa: f64, gamma: f64) -> Result<f64> {
    for (name, x) in [("epsilon", epsilon), ("kappa", kappa), ("gamma", gamma)] {
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::invalid(format!("{name} must be finite and non-negative, got {x}")));
        }
    }
    Ok((epsilon * epsilon + 0.25 * (kappa * gamma + gamma * gamma)).sqrt())
}

/// Evolves the amplitudes from `c_gg0 = 1`, all others 0, with RK4 at step `dt`.
///
/// Fails with [`Error::NotConverged`] unless the final relative rate of change
/// `|dc/dt| / |c|` is below [`STATIONARY_RTOL`].
pub fn integrate_amplitudes(params: &SystemParams, t_final: f64, dt: f64) -> Result<AmplitudeSet> {
    let (a, b) = equations_of_motion(params)?;
    if params.epsilon > MAX_WEAK_EPSILON * params.kappa {
        return Err(Error::invalid(format!(
            "epsilon = {} exceeds the weak-drive window {MAX_WEAK_EPSILON}κ",
            params.epsilon
        )));
    }
    if !(t_final >= 0.0 && t_final.is_finite()) {
        return Err(Error::invalid(format!("t_final must be finite and non-negative, got {t_final}")));
    }
    let max_rate = a.iter().flatten().chain(b.iter()).map(|z| z.norm()).fold(0.0, f64::max);
    let dt_max = if max_rate > 0.0 { 0.01 / max_rate } else { f64::INFINITY };
    if !(dt > 0.0 && dt <= dt_max) {
        return Err(Error::invalid(format!("dt = {dt} must lie in (0, {dt_max:e}]")));
    }

    let rhs = |x: &[c64; 5]| {
        let mut out = [ZERO; 5];
        for i in 0..5 {
            let row: c64 = (0..5).map(|j| a[i][j] * x[j]).sum();
            out[i] = -I * (row + b[i]);
        }
        out
    };
    let axpy = |x: &[c64; 5], h: f64, k: &[c64; 5]| {
        let mut out = *x;
        for i in 0..5 {
            out[i] += k[i] * h;
        }
        out
    };

    let steps = (t_final / dt).ceil() as usize;
    let h = if steps == 0 { 0.0 } else { t_final / steps as f64 };
    let mut x = [ZERO; 5];
    for _ in 0..steps {
        let k1 = rhs(&x);
        let k2 = rhs(&axpy(&x, 0.5 * h, &k1));
        let k3 = rhs(&axpy(&x, 0.5 * h, &k2));
        let k4 = rhs(&axpy(&x, h, &k3));
        for i in 0..5 {
            x[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
        }
    }

    let amps = AmplitudeSet::from_excited(x);
    let norm = |v: &[c64; 5]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let size = norm(&amps.excited());
    let rate = norm(&rhs(&x));
    let residual = if size > 0.0 { rate / size } else { rate };
    if !(residual < STATIONARY_RTOL) {
        return Err(Error::NotConverged { residual });
    }
    Ok(amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::experiment::G_KAPPA;

    fn atom(da: f64, dc: f64, v: f64, e: f64) -> SystemParams {
        SystemParams {
            delta_a: da,
            delta_c: dc,
            v,
            epsilon: e,
            ..SystemParams::experimental(DriveScheme::AtomDriven)
        }
    }

    fn cavity(g: f64, v: f64, e: f64) -> SystemParams {
        SystemParams {
            g,
            v,
            epsilon: e,
            ..SystemParams::new(DriveScheme::CavityDriven)
        }
        .with_gamma(1.0)
    }

    #[test]
    fn upb_surface_nulls_two_photon_amplitude() {
        let a = steady_amplitudes_atom_driven(&atom(1.95, 10.0, 13.9, 0.4)).unwrap();
        assert_eq!(2.0 * 1.95 + 10.0 - 13.9, 0.0);
        assert!(a.c_gg2.norm() < 1e-3 * a.c_gg1.norm().powi(2), "{:?}", a);
        assert!(g2_analytic_atom_driven(&atom(1.95, 10.0, 13.9, 0.4)).unwrap() < 1e-4);
    }

    #[test]
    fn no_coupling_means_no_cavity_photon() {
        let p = SystemParams { g: 0.0, ..atom(1.0, 2.0, 1.0, 0.01) };
        let a = steady_amplitudes_atom_driven(&p).unwrap();
        assert_eq!(a.c_gg1.norm(), 0.0);
        assert!(matches!(a.g2(), Err(Error::UndefinedCorrelation { .. })));
    }

    #[test]
    fn pole_is_reported() {
        let p = SystemParams { g: 0.0, ..atom(0.0, 0.0, 0.0, 0.01) }.with_gamma(0.0);
        assert!(matches!(denominator_m(&p), Err(Error::Singular { what: "M", .. })));
        assert!(steady_amplitudes_atom_driven(&p).is_err());
    }

    #[test]
    fn wrong_scheme_or_regime_rejected() {
        assert!(steady_amplitudes_atom_driven(&cavity(0.5, 0.1, 0.01)).is_err());
        assert!(steady_amplitudes_cavity_driven(&atom(1.0, 1.0, 1.0, 0.01)).is_err());
        let detuned = SystemParams { delta_c: 0.5, ..cavity(0.5, 0.1, 0.01) };
        assert!(steady_amplitudes_cavity_driven(&detuned).is_err());
        let uneven = SystemParams { gamma2: 0.3, ..atom(1.0, 1.0, 1.0, 0.01) };
        assert!(steady_amplitudes_atom_driven(&uneven).is_err());
    }

    #[test]
    fn cavity_zero_surface() {
        let e = 0.01;
        let g = optimal_g_cavity_driven(e, 1.0, 1.0).unwrap();
        let a = steady_amplitudes_cavity_driven(&cavity(g, 0.0, e)).unwrap();
        assert!(a.c_gg2.norm() < 1e-15, "{}", a.c_gg2);
        let shallow = g2_analytic_cavity_driven(&cavity(g, 0.3, e)).unwrap();
        assert!(shallow > 1e-2);
    }

    #[test]
    fn cavity_without_atoms_is_coherent() {
        let g2 = g2_analytic_cavity_driven(&cavity(0.0, 0.0, 0.01)).unwrap();
        assert!((g2 - 1.0).abs() < 1e-3, "{g2}");
        let dark = steady_amplitudes_cavity_driven(&cavity(0.5, 0.1, 0.0)).unwrap();
        assert!(dark.excited().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn optimal_formulas() {
        let o = optimal_detunings_atom_driven(10.0, 13.9, G_KAPPA).unwrap();
        assert!((o.upb - 1.95).abs() < 1e-12);
        assert!((o.pb - 1.946_88).abs() < 1e-5);
        assert_eq!(optimal_detunings_atom_driven(5.0, 5.0, 1.0).unwrap().upb, 0.0);
        assert!(optimal_detunings_atom_driven(0.0, 1.0, 1.0).is_err());

        assert!((upb_pb_intersection_curve(10.0, G_KAPPA).unwrap() - 13.893_76).abs() < 1e-5);
        assert_eq!(upb_pb_intersection_curve(7.0, 0.0).unwrap(), 7.0);
        assert!(upb_pb_intersection_curve(0.0, 1.0).is_err());

        assert!((optimal_g_cavity_driven(0.01, 1.0, 1.0).unwrap() - 0.707_177).abs() < 1e-6);
        assert_eq!(optimal_g_cavity_driven(0.0, 1.0, 0.0).unwrap(), 0.0);
        assert!((optimal_g_cavity_driven(0.5, 1.0, 1.0).unwrap() - 0.75f64.sqrt()).abs() < 1e-12);
        assert!(optimal_g_cavity_driven(-0.1, 1.0, 1.0).is_err());
    }

    #[test]
    fn large_detuning_numerator_vanishes_on_both_surfaces() {
        let pb = atom(2.0 * G_KAPPA * G_KAPPA / 8.0, 8.0, 3.0, 0.01);
        assert!(large_detuning_numerator(&pb) < 1e-20);
        let upb = atom(0.5 * (3.0 - 8.0), 8.0, 3.0, 0.01);
        assert!(large_detuning_numerator(&upb) < 1e-20);
        assert!(large_detuning_numerator(&atom(1.0, 8.0, 3.0, 0.01)) > 1.0);
    }

    #[test]
    fn hierarchy_holds_for_weak_drive() {
        let a = steady_amplitudes_atom_driven(&atom(6.0, -7.0, 4.0, 0.01)).unwrap();
        assert!(a.respects_hierarchy());
    }

    #[test]
    fn integration_rejects_bad_inputs() {
        let p = SystemParams { gamma1: 0.5, gamma2: 0.5, ..atom(1.0, 2.0, 1.0, 0.01) };
        assert!(integrate_amplitudes(&SystemParams { epsilon: 0.2, ..p }, 10.0, 1e-4).is_err());
        assert!(integrate_amplitudes(&p, 10.0, 1.0).is_err());
        assert!(integrate_amplitudes(&p, -1.0, 1e-4).is_err());
        assert!(matches!(integrate_amplitudes(&p, 0.5, 1e-4), Err(Error::NotConverged { .. })));
    }

    #[test]
    fn undriven_amplitudes_stay_zero() {
        let p = SystemParams { epsilon: 0.0, g: 0.0, ..atom(3.0, -2.0, 1.0, 0.0) };
        let r = integrate_amplitudes(&p, 5.0, 1e-3);
        let a = match r {
            Ok(a) => a,
            Err(Error::NotConverged { residual }) => panic!("zero state must be stationary, {residual}"),
            Err(e) => panic!("{e}"),
        };
        assert!(a.excited().iter().all(|z| z.norm() == 0.0));
    }
}
