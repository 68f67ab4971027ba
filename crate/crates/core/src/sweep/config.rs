//! TOML sweep configuration.
//!
//! Every key is optional so a file can overlay a preset; without a preset the
//! base parameters are the experimental atom-driven values with ε = 0.4κ.

use std::path::Path;

use serde::Deserialize;

use super::{figure_preset, Axis, AxisValues, Constraint, Engine, Observable, Param, SweepSpec};
use crate::error::{Error, Result};
use crate::lindblad::{FockPolicy, HamiltonianChoice};
use crate::model::{DriveScheme, SystemParams, Units};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    schema_version: Option<u32>,
    preset: Option<String>,
    units: Option<Units>,
    engine: Option<Engine>,
    hamiltonian: Option<HamiltonianChoice>,
    fock: Option<FockSetting>,
    observables: Option<Vec<Observable>>,
    constraints: Option<Vec<String>>,
    params: Option<ParamsTable>,
    axes: Option<Vec<AxisTable>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FockSetting {
    Cutoff(usize),
    Word(String),
    Range { start: usize, max: usize },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsTable {
    drive: Option<DriveScheme>,
    delta_a: Option<f64>,
    delta_c: Option<f64>,
    g: Option<f64>,
    x1: Option<f64>,
    x2: Option<f64>,
    #[serde(rename = "V", alias = "v")]
    v: Option<f64>,
    epsilon: Option<f64>,
    kappa: Option<f64>,
    gamma: Option<f64>,
    gamma1: Option<f64>,
    gamma2: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AxisTable {
    param: String,
    min: Option<f64>,
    max: Option<f64>,
    steps: Option<usize>,
    values: Option<Vec<f64>>,
}

impl FockSetting {
    fn policy(&self) -> Result<FockPolicy> {
        match self {
            FockSetting::Cutoff(n) => Ok(FockPolicy::Fixed(*n)),
            FockSetting::Word(w) if w == "auto" => Ok(FockPolicy::default()),
            FockSetting::Word(w) => w
                .parse()
                .map(FockPolicy::Fixed)
                .map_err(|_| Error::config(format!("fock must be an integer or \"auto\", got '{w}'"))),
            FockSetting::Range { start, max } => Ok(FockPolicy::Auto { start: *start, max: *max }),
        }
    }
}

impl AxisTable {
    fn axis(&self, scale: f64) -> Result<Axis> {
        let param: Param = self.param.parse()?;
        let s = if param.is_rate() { scale } else { 1.0 };
        let values = match (self.min, self.max, self.steps, &self.values) {
            (Some(min), Some(max), Some(steps), None) => AxisValues::Linspace {
                min: min * s,
                max: max * s,
                steps,
            },
            (None, None, None, Some(v)) => AxisValues::List {
                values: v.iter().map(|x| x * s).collect(),
            },
            _ => {
                return Err(Error::config(format!(
                    "axis '{}' needs either min, max and steps or a values list",
                    self.param
                )))
            }
        };
        Ok(Axis { param, values })
    }
}

/// Parses a config; `preset` overrides the file's own `preset` key.
pub fn load_config(text: &str, preset: Option<&str>) -> Result<SweepSpec> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| Error::config(e.to_string()))?;
    if let Some(v) = file.schema_version {
        if v != SCHEMA_VERSION {
            return Err(Error::config(format!("unsupported schema_version {v}, expected {SCHEMA_VERSION}")));
        }
    }

    let preset = preset.map(str::to_string).or(file.preset.clone());
    let mut spec = match &preset {
        Some(name) => figure_preset(name)?,
        None => SweepSpec::new(
            SystemParams {
                epsilon: 0.4,
                ..SystemParams::experimental(DriveScheme::AtomDriven)
            },
            Vec::new(),
            vec![Observable::G2Zero],
        ),
    };

    let units = file.units.unwrap_or_default();
    let table = file.params.unwrap_or_default();
    let scale = match units {
        Units::Kappa => 1.0,
        Units::TwoPiMhz => {
            let k = table
                .kappa
                .ok_or_else(|| Error::config("units = \"2pi_mhz\" needs params.kappa in MHz"))?;
            if !(k > 0.0) {
                return Err(Error::config("params.kappa must be positive"));
            }
            1.0 / k
        }
    };

    let p = &mut spec.base;
    if let Some(d) = table.drive {
        p.drive = d;
    }
    let fields = [
        (Param::DeltaA, table.delta_a),
        (Param::DeltaC, table.delta_c),
        (Param::G, table.g),
        (Param::X1, table.x1),
        (Param::X2, table.x2),
        (Param::V, table.v),
        (Param::Epsilon, table.epsilon),
        (Param::Gamma, table.gamma),
        (Param::Gamma1, table.gamma1),
        (Param::Gamma2, table.gamma2),
    ];
    for (param, value) in fields {
        if let Some(v) = value {
            param.set(p, if param.is_rate() { v * scale } else { v });
        }
    }
    if let Some(k) = table.kappa {
        p.kappa = k * scale;
    }

    if let Some(axes) = &file.axes {
        spec.axes = axes.iter().map(|a| a.axis(scale)).collect::<Result<_>>()?;
    }
    if let Some(c) = &file.constraints {
        spec.constraints = c.iter().map(|s| s.parse::<Constraint>()).collect::<Result<_>>()?;
    }
    if let Some(o) = file.observables {
        spec.observables = o;
    }
    if let Some(e) = file.engine {
        spec.engine = e;
    }
    if let Some(h) = file.hamiltonian {
        spec.hamiltonian = h;
    }
    if let Some(f) = &file.fock {
        spec.fock = f.policy()?;
    }
    spec.validate()?;
    Ok(spec)
}

pub fn load_config_file(path: &Path, preset: Option<&str>) -> Result<SweepSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
    load_config(&text, preset)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config() {
        let text = r#"
            schema_version = 1
            units = "kappa"
            engine = "both"
            fock = 4
            observables = ["g2_0", "mean_photon"]
            constraints = ["delta_a = 0.5*V - 0.5*delta_c"]

            [params]
            drive = "atom"
            g = 3.12
            gamma = 1.6e-4
            epsilon = 0.01

            [[axes]]
            param = "delta_c"
            min = 5.0
            max = 10.0
            steps = 3

            [[axes]]
            param = "V"
            values = [1.0, 2.0]
        "#;
        let spec = load_config(text, None).unwrap();
        assert_eq!(spec.shape(), (3, 2));
        assert_eq!(spec.engine, Engine::Both);
        assert_eq!(spec.fock, FockPolicy::Fixed(4));
        assert_eq!(spec.base.gamma2, 1.6e-4);
        let p = spec.point_params(2, 1).unwrap();
        assert_eq!((p.delta_c, p.v, p.delta_a), (10.0, 2.0, -4.0));
    }

    #[test]
    fn overlay_on_preset() {
        let spec = load_config("fock = \"auto\"\n[params]\nepsilon = 0.3\n", Some("fig9b")).unwrap();
        assert_eq!(spec.base.epsilon, 0.3);
        assert_eq!(spec.base.delta_c, 10.0);
        assert_eq!(spec.fock, FockPolicy::default());
        let spec = load_config("preset = \"fig8a\"\nfock = { start = 3, max = 9 }\n", None).unwrap();
        assert_eq!(spec.fock, FockPolicy::Auto { start: 3, max: 9 });
    }

    #[test]
    fn megahertz_units_are_scaled_by_kappa() {
        let text = r#"
            units = "2pi_mhz"
            [params]
            kappa = 2.5
            g = 7.8
            gamma = 0.0004
            epsilon = 1.0
            x2 = 1.0
            [[axes]]
            param = "delta_c"
            min = -25.0
            max = 25.0
            steps = 3
        "#;
        let spec = load_config(text, None).unwrap();
        assert!((spec.base.g - 3.12).abs() < 1e-12);
        assert!((spec.base.gamma1 - 1.6e-4).abs() < 1e-15);
        assert_eq!(spec.base.kappa, 1.0);
        assert_eq!(spec.base.x2, 1.0);
        assert_eq!(spec.axes[0].values.values(), vec![-10.0, 0.0, 10.0]);
        assert!(load_config("units = \"2pi_mhz\"\n", Some("fig3a")).is_err());
    }

    #[test]
    fn config_errors() {
        for bad in [
            "schema_version = 2",
            "unknown_key = 1",
            "[params]\nfoo = 1.0",
            "[[axes]]\nparam = \"delta_c\"\nmin = 0.0\nmax = 1.0\nsteps = 1",
            "[[axes]]\nparam = \"delta_c\"\nmin = 0.0\nmax = 1.0",
            "[[axes]]\nparam = \"nope\"\nvalues = [1.0, 2.0]",
            "fock = \"many\"",
            "engine = \"exact\"",
            "observables = []",
        ] {
            assert!(matches!(load_config(bad, None), Err(Error::Config(_))), "{bad}");
        }
        assert!(load_config("[params]\nkappa = -1.0\n", Some("fig3a")).is_err());
    }
}
