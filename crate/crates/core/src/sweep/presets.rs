//! Parameter sets of the published figures, in κ units.
//!
//! Colour-map ranges are only readable from the plots; the axis ranges below
//! cover every feature the published figures show.

use super::{Axis, Constraint, Engine, Observable, Param, SweepSpec};
use crate::error::{Error, Result};
use crate::model::{DriveScheme, SystemParams};

pub const PRESET_NAMES: [&str; 10] = [
    "fig3a", "fig3b", "fig4", "fig5a", "fig5b", "fig6", "fig8a", "fig8b", "fig9a", "fig9b",
];

pub fn preset_description(name: &str) -> Option<&'static str> {
    Some(match name {
        "fig3a" => "atom drive, g2(0) over delta_c x delta_a at V = 2",
        "fig3b" => "atom drive, g2(0) over delta_c x delta_a at V = 6",
        "fig4" => "atom drive, g2(0) and mean photon number over delta_c x V with delta_a = (V - delta_c)/2",
        "fig5a" => "atom drive, g2(0) over delta_c x V with delta_a = 2 g^2 / delta_c",
        "fig5b" => "atom drive, g2(0) over delta_c x g with delta_a = 2 g^2 / delta_c at V = 1",
        "fig6" => "atom drive, g2(0) and mean photon number over delta_c x V with delta_a = (V - delta_c)/2, delta_c > 0",
        "fig8a" => "cavity drive, g2(0) over g for V in {0, 0.1, 0.3}, both engines",
        "fig8b" => "cavity drive, g2(0) over g x epsilon at V = 0.1",
        "fig9a" => "atom drive, g2(tau) at the combined optimum with epsilon = 0.2",
        "fig9b" => "atom drive, g2(tau) at the combined optimum with epsilon = 0.4",
        _ => return None,
    })
}

fn atom_base(epsilon: f64) -> SystemParams {
    SystemParams {
        epsilon,
        ..SystemParams::experimental(DriveScheme::AtomDriven)
    }
}

fn cavity_base() -> SystemParams {
    SystemParams {
        g: 0.7,
        epsilon: 0.01,
        ..SystemParams::new(DriveScheme::CavityDriven)
    }
    .with_gamma(1.0)
}

fn constraint(s: &str) -> Constraint {
    s.parse().expect("preset constraint parses")
}

pub fn figure_preset(name: &str) -> Result<SweepSpec> {
    use Observable::{G2Tau, G2Zero, MeanPhoton};
    let detunings = |v: f64| {
        SweepSpec::new(
            SystemParams { v, ..atom_base(0.4) },
            vec![
                Axis::linspace(Param::DeltaC, -20.0, 20.0, 81),
                Axis::linspace(Param::DeltaA, -20.0, 20.0, 81),
            ],
            vec![G2Zero],
        )
    };
    let interference = |dc_min: f64, v_max: f64| SweepSpec {
        constraints: vec![constraint("delta_a = 0.5*V - 0.5*delta_c")],
        ..SweepSpec::new(
            atom_base(0.4),
            vec![
                Axis::linspace(Param::DeltaC, dc_min, 20.0, 81),
                Axis::linspace(Param::V, 0.0, v_max, 61),
            ],
            vec![G2Zero, MeanPhoton],
        )
    };
    // 40 points on [-20, 20] step over delta_c = 0, where the condition is singular.
    let blockade = |second: Axis, v: f64| SweepSpec {
        constraints: vec![constraint("delta_a = 2*g^2/delta_c")],
        ..SweepSpec::new(
            SystemParams { v, ..atom_base(0.4) },
            vec![Axis::linspace(Param::DeltaC, -20.0, 20.0, 40), second],
            vec![G2Zero],
        )
    };
    let delay = |epsilon: f64| {
        SweepSpec::new(
            SystemParams {
                delta_c: 10.0,
                delta_a: 1.95,
                v: 13.9,
                ..atom_base(epsilon)
            },
            vec![Axis::linspace(Param::Tau, 0.0, 40.0, 401)],
            vec![G2Tau],
        )
    };

    let mut spec = match name {
        "fig3a" => detunings(2.0),
        "fig3b" => detunings(6.0),
        "fig4" => interference(-20.0, 20.0),
        "fig5a" => blockade(Axis::linspace(Param::V, 0.0, 20.0, 41), 0.0),
        "fig5b" => blockade(Axis::linspace(Param::G, 0.5, 5.0, 46), 1.0),
        "fig6" => interference(1.0, 30.0),
        "fig8a" => SweepSpec {
            engine: Engine::Both,
            ..SweepSpec::new(
                cavity_base(),
                vec![
                    Axis::linspace(Param::G, 0.3, 1.2, 91),
                    Axis::list(Param::V, vec![0.0, 0.1, 0.3]),
                ],
                vec![G2Zero],
            )
        },
        "fig8b" => SweepSpec::new(
            SystemParams { v: 0.1, ..cavity_base() },
            vec![
                Axis::linspace(Param::G, 0.3, 1.2, 46),
                Axis::linspace(Param::Epsilon, 0.01, 0.5, 50),
            ],
            vec![G2Zero],
        ),
        "fig9a" => delay(0.2),
        "fig9b" => delay(0.4),
        other => {
            return Err(Error::config(format!(
                "unknown preset '{other}' (known: {})",
                PRESET_NAMES.join(", ")
            )))
        }
    };
    spec.name = Some(name.to_string());
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_is_valid() {
        for name in PRESET_NAMES {
            let spec = figure_preset(name).unwrap();
            spec.validate().unwrap();
            assert!(preset_description(name).is_some());
        }
        assert!(figure_preset("fig7").is_err());
    }

    #[test]
    fn published_parameter_values() {
        let s = figure_preset("fig9a").unwrap();
        assert_eq!((s.base.delta_c, s.base.delta_a, s.base.v, s.base.epsilon), (10.0, 1.95, 13.9, 0.2));
        let s = figure_preset("fig8a").unwrap();
        assert_eq!(s.base.drive, DriveScheme::CavityDriven);
        assert_eq!((s.base.epsilon, s.base.gamma1, s.base.gamma2), (0.01, 1.0, 1.0));
        let s = figure_preset("fig4").unwrap();
        let p = s.point_params(60, 30).unwrap();
        assert!((p.delta_a + 0.5 * (p.delta_c - p.v)).abs() < 1e-12);
        let s = figure_preset("fig5a").unwrap();
        assert!(s.axes[0].values.values().iter().all(|&x| x != 0.0));
    }
}
