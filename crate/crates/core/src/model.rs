//! Physical parameters and the Hamiltonians of two Rydberg atoms in a driven cavity.
//!
//! All rates and detunings are angular frequencies in units of the cavity loss
//! rate κ (so `kappa == 1.0` for anything coming out of a config loader).
//! Atom positions are in units of the cavity wavelength, so the standing-wave
//! coupling of atom `j` is `g cos(2π x_j)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{annihilation, atomic_sigma, AtomLevel, HilbertSpace, Operator};

/// Values of the rubidium cavity-QED setup, as `ω / 2π` in MHz.
pub mod experiment {
    pub const KAPPA_MHZ: f64 = 2.5;
    pub const G_MHZ: f64 = 7.8;
    /// Spontaneous decay of the |nD_{3/2}> Rydberg state, n ≈ 60.
    pub const GAMMA_MHZ: f64 = 0.4e-3;
    /// Van der Waals coefficient of |62D_{3/2}>, GHz·μm⁶.
    pub const C6_GHZ_UM6: f64 = 730.0;
    /// Atom separations reachable in the optical lattice, μm.
    pub const MIN_DISTANCE_UM: f64 = 4.0;
    pub const MAX_DISTANCE_UM: f64 = 15.0;

    pub const G_KAPPA: f64 = G_MHZ / KAPPA_MHZ;
    pub const GAMMA_KAPPA: f64 = GAMMA_MHZ / KAPPA_MHZ;

    /// Converts `ω / 2π` in MHz to κ units.
    pub fn kappa_units(nu_mhz: f64) -> f64 {
        nu_mhz / KAPPA_MHZ
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriveScheme {
    /// Pump `ε Σ_j (σ^j_rg + σ^j_gr)` perpendicular to the cavity axis.
    #[serde(alias = "atom")]
    AtomDriven,
    /// Pump `ε (a + a†)` through a cavity mirror.
    #[serde(alias = "cavity")]
    CavityDriven,
}

impl fmt::Display for DriveScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DriveScheme::AtomDriven => "atom",
            DriveScheme::CavityDriven => "cavity",
        })
    }
}

impl FromStr for DriveScheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "atom" | "atom_driven" => Ok(DriveScheme::AtomDriven),
            "cavity" | "cavity_driven" => Ok(DriveScheme::CavityDriven),
            other => Err(Error::invalid(format!("unknown drive scheme '{other}'"))),
        }
    }
}

/// Unit system of values read from a config file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Units {
    /// Already in units of κ.
    #[default]
    #[serde(rename = "kappa")]
    Kappa,
    /// `ω / 2π` in MHz; divided by the configured κ on load.
    #[serde(rename = "2pi_mhz")]
    TwoPiMhz,
}

impl FromStr for Units {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kappa" => Ok(Units::Kappa),
            "2pi_mhz" => Ok(Units::TwoPiMhz),
            other => Err(Error::invalid(format!("unknown units '{other}' (expected kappa or 2pi_mhz)"))),
        }
    }
}

/// Every physical input of the model in one record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Laser-atom detuning Δa = ω_L − ω_a.
    pub delta_a: f64,
    /// Laser-cavity detuning Δc = ω_L − ω_c.
    pub delta_c: f64,
    /// Peak atom-cavity coupling.
    pub g: f64,
    /// Atom positions along the cavity axis, in wavelengths.
    pub x1: f64,
    pub x2: f64,
    /// Rydberg-Rydberg interaction.
    #[serde(rename = "V")]
    pub v: f64,
    /// Pump amplitude, shared by both drive schemes.
    pub epsilon: f64,
    pub kappa: f64,
    /// Spontaneous decay of atom 1 and atom 2.
    pub gamma1: f64,
    pub gamma2: f64,
    pub drive: DriveScheme,
}

impl SystemParams {
    /// Zero detunings, coupling, interaction and pump; κ = 1, γ = 0.
    pub fn new(drive: DriveScheme) -> Self {
        SystemParams {
            delta_a: 0.0,
            delta_c: 0.0,
            g: 0.0,
            x1: 0.0,
            x2: 0.0,
            v: 0.0,
            epsilon: 0.0,
            kappa: 1.0,
            gamma1: 0.0,
            gamma2: 0.0,
            drive,
        }
    }

    /// Experimental rubidium values (g = 3.12κ, γ = 1.6e-4κ), atoms one wavelength apart.
    pub fn experimental(drive: DriveScheme) -> Self {
        SystemParams {
            g: experiment::G_KAPPA,
            x2: 1.0,
            ..Self::new(drive)
        }
        .with_gamma(experiment::GAMMA_KAPPA)
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma1 = gamma;
        self.gamma2 = gamma;
        self
    }

    /// Common atomic decay rate; errors if the atoms differ.
    pub fn gamma(&self) -> Result<f64> {
        if self.gamma1 != self.gamma2 {
            return Err(Error::invalid(format!(
                "identical atoms required, got gamma1 = {} and gamma2 = {}",
                self.gamma1, self.gamma2
            )));
        }
        Ok(self.gamma1)
    }

    /// Position-dependent couplings `g cos(2π x_j)`.
    pub fn couplings(&self) -> [f64; 2] {
        [self.g * (2.0 * PI * self.x1).cos(), self.g * (2.0 * PI * self.x2).cos()]
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("delta_a", self.delta_a),
            ("delta_c", self.delta_c),
            ("g", self.g),
            ("x1", self.x1),
            ("x2", self.x2),
            ("V", self.v),
            ("epsilon", self.epsilon),
            ("kappa", self.kappa),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
        ];
        if let Some((name, value)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::invalid(format!("{name} must be finite, got {value}")));
        }
        if self.kappa <= 0.0 {
            return Err(Error::invalid(format!("kappa must be positive, got {}", self.kappa)));
        }
        for (name, value) in [
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("epsilon", self.epsilon),
            ("g", self.g),
        ] {
            if value < 0.0 {
                return Err(Error::invalid(format!("{name} must be non-negative, got {value}")));
            }
        }
        Ok(())
    }

    /// Rescales every rate by κ so the result has `kappa == 1`.
    pub fn to_kappa_units(&self, units: Units) -> Self {
        match units {
            Units::Kappa => *self,
            Units::TwoPiMhz => {
                let k = self.kappa;
                SystemParams {
                    delta_a: self.delta_a / k,
                    delta_c: self.delta_c / k,
                    g: self.g / k,
                    v: self.v / k,
                    epsilon: self.epsilon / k,
                    kappa: 1.0,
                    gamma1: self.gamma1 / k,
                    gamma2: self.gamma2 / k,
                    ..*self
                }
            }
        }
    }
}

/// The single-atom and cavity operators every Hamiltonian is assembled from.
struct Ladder {
    a: Operator,
    ad: Operator,
    raise: [Operator; 2],
    lower: [Operator; 2],
    excited: [Operator; 2],
}

impl Ladder {
    fn new(space: HilbertSpace) -> Self {
        use AtomLevel::{Ground, Rydberg};
        let sigma = |j, m, n| atomic_sigma(space, j, m, n).expect("atom index is 1 or 2");
        let a = annihilation(space);
        Ladder {
            ad: a.adjoint(),
            a,
            raise: [sigma(1, Rydberg, Ground), sigma(2, Rydberg, Ground)],
            lower: [sigma(1, Ground, Rydberg), sigma(2, Ground, Rydberg)],
            excited: [sigma(1, Rydberg, Rydberg), sigma(2, Rydberg, Rydberg)],
        }
    }

    /// `Σ_j g_j (σ^j_rg a + σ^j_gr a†)`.
    fn interaction(&self, couplings: [f64; 2]) -> Operator {
        let mut h = Operator::zero(self.a.space());
        for ((raise, lower), g) in self.raise.iter().zip(&self.lower).zip(couplings) {
            let term = &(raise * &self.a) + &(lower * &self.ad);
            h = &h + &term.scaled(g);
        }
        h
    }

    fn hamiltonian(&self, p: &SystemParams, couplings: [f64; 2]) -> Operator {
        let excited = &self.excited[0] + &self.excited[1];
        let number = &self.ad * &self.a;
        let blockade = &self.excited[0] * &self.excited[1];
        let drive = match p.drive {
            DriveScheme::CavityDriven => &self.a + &self.ad,
            DriveScheme::AtomDriven => {
                let r = &self.raise[0] + &self.raise[1];
                let l = &self.lower[0] + &self.lower[1];
                &r + &l
            }
        };
        let mut h = excited.scaled(-p.delta_a);
        h = &h - &number.scaled(p.delta_c);
        h = &h + &self.interaction(couplings);
        h = &h + &blockade.scaled(p.v);
        &h + &drive.scaled(p.epsilon)
    }
}

/// Rotating-frame Hamiltonian with position-dependent couplings.
pub fn hamiltonian_full(space: HilbertSpace, params: &SystemParams) -> Result<Operator> {
    params.validate()?;
    Ok(Ladder::new(space).hamiltonian(params, params.couplings()))
}

/// Same Hamiltonian with both atoms coupled at the full strength `g`
/// (atoms an integer number of wavelengths apart).
pub fn hamiltonian_reduced(space: HilbertSpace, params: &SystemParams) -> Result<Operator> {
    params.validate()?;
    Ok(Ladder::new(space).hamiltonian(params, [params.g; 2]))
}

/// Atom-cavity exchange part of [`hamiltonian_full`].
pub fn interaction_hamiltonian(space: HilbertSpace, params: &SystemParams) -> Result<Operator> {
    params.validate()?;
    Ok(Ladder::new(space).interaction(params.couplings()))
}

/// Exchange Hamiltonian split over the symmetric and antisymmetric collective
/// excitations, `D±† = (σ¹_rg ± σ²_rg)/√2`. Returns `(H+, H-)`.
pub fn collective_decomposition(space: HilbertSpace, params: &SystemParams) -> Result<(Operator, Operator)> {
    params.validate()?;
    let l = Ladder::new(space);
    let phase = |x: f64| (2.0 * PI * x).cos();
    let (c1, c2) = (phase(params.x1), phase(params.x2));
    let branch = |sign: f64| {
        let d_dag = (&l.raise[0] + &l.raise[1].scaled(sign)).scaled(FRAC_1_SQRT_2);
        let d = d_dag.adjoint();
        let exchange = &(&l.a * &d_dag) + &(&l.ad * &d);
        exchange.scaled(params.g * FRAC_1_SQRT_2 * (c1 + sign * c2))
    };
    Ok((branch(1.0), branch(-1.0)))
}

/// `H_reduced − iκ a†a/2 − i Σ_j γ_j σ^j_rr / 2`.
///
/// Atomic decay is `σ_j = |g><r|`, so `σ_j†σ_j` is the Rydberg projector.
pub fn effective_nonhermitian(space: HilbertSpace, params: &SystemParams) -> Result<Operator> {
    let l = Ladder::new(space);
    let h = hamiltonian_reduced(space, params)?;
    let number = &l.ad * &l.a;
    let loss = &(&number.scaled(params.kappa) + &l.excited[0].scaled(params.gamma1))
        + &l.excited[1].scaled(params.gamma2);
    Ok(&h + &loss.scaled(faer::c64::new(0.0, -0.5)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RydbergPotentialKind {
    /// `V = C6 / d⁶`, coefficient in GHz·μm⁶.
    VanDerWaals,
    /// `V = C3 / d³`, coefficient in GHz·μm³.
    DipoleDipole,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RydbergPotential {
    kind: RydbergPotentialKind,
    coefficient: f64,
}

impl RydbergPotential {
    pub fn new(kind: RydbergPotentialKind, coefficient: f64) -> Result<Self> {
        if !(coefficient > 0.0 && coefficient.is_finite()) {
            return Err(Error::invalid(format!("potential coefficient must be positive, got {coefficient}")));
        }
        Ok(RydbergPotential { kind, coefficient })
    }

    pub fn van_der_waals(c6: f64) -> Result<Self> {
        Self::new(RydbergPotentialKind::VanDerWaals, c6)
    }

    pub fn dipole_dipole(c3: f64) -> Result<Self> {
        Self::new(RydbergPotentialKind::DipoleDipole, c3)
    }

    /// `|62D_{3/2}>` van der Waals potential.
    pub fn rubidium_62d() -> Self {
        Self::van_der_waals(experiment::C6_GHZ_UM6).expect("positive constant")
    }

    pub fn kind(&self) -> RydbergPotentialKind {
        self.kind
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn exponent(&self) -> i32 {
        match self.kind {
            RydbergPotentialKind::VanDerWaals => 6,
            RydbergPotentialKind::DipoleDipole => 3,
        }
    }
}

/// Interaction strength at separation `d` (μm), returned as ν with `V = 2π × ν MHz`.
///
/// Frequency convention: `C/dⁿ` (GHz → MHz) is read as an angular frequency and
/// divided by 2π. With C6 = 730 GHz·μm⁶ this puts 4 μm at 2π × 28.4 MHz and
/// 15 μm at 2π × 0.0102 MHz, the quoted tunable range of the lattice setup.
pub fn rydberg_coupling_from_distance(distance_um: f64, potential: &RydbergPotential) -> Result<f64> {
    if !(distance_um > 0.0 && distance_um.is_finite()) {
        return Err(Error::invalid(format!("distance must be positive, got {distance_um}")));
    }
    let angular_mhz = potential.coefficient * 1e3 / distance_um.powi(potential.exponent());
    Ok(angular_mhz / (2.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::Ket;
    use faer::c64;
    use AtomLevel::{Ground, Rydberg};

    fn space() -> HilbertSpace {
        HilbertSpace::new(3).unwrap()
    }

    fn fig9(drive: DriveScheme) -> SystemParams {
        SystemParams {
            delta_c: 10.0,
            delta_a: 1.95,
            v: 13.9,
            epsilon: 0.4,
            ..SystemParams::experimental(drive)
        }
    }

    #[test]
    fn zero_parameters_give_zero_hamiltonian() {
        let p = SystemParams::new(DriveScheme::AtomDriven);
        assert_eq!(hamiltonian_full(space(), &p).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn full_equals_reduced_at_integer_wavelength_spacing() {
        let s = HilbertSpace::new(2).unwrap();
        let p = SystemParams { x1: 0.0, x2: 1.0, ..fig9(DriveScheme::AtomDriven) };
        let diff = hamiltonian_full(s, &p).unwrap().max_abs_diff(&hamiltonian_reduced(s, &p).unwrap());
        assert!(diff < 1e-12, "{diff}");
    }

    #[test]
    fn doubly_excited_diagonal_element() {
        let s = space();
        let h = hamiltonian_full(s, &fig9(DriveScheme::AtomDriven)).unwrap();
        let i = s.index(Rydberg, Rydberg, 0);
        assert!((h.get(i, i).re - 10.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_limit_of_reduced_hamiltonian() {
        let s = space();
        let p = SystemParams {
            delta_a: 1.3,
            delta_c: -0.7,
            v: 4.2,
            ..SystemParams::new(DriveScheme::CavityDriven)
        };
        let h = hamiltonian_reduced(s, &p).unwrap();
        for i in 0..s.dim() {
            let (a1, a2, n) = s.decompose(i);
            let excited = (a1 == Rydberg) as usize + (a2 == Rydberg) as usize;
            let both = (a1 == Rydberg && a2 == Rydberg) as usize as f64;
            let expected = -1.3 * excited as f64 + 0.7 * n as f64 + 4.2 * both;
            for j in 0..s.dim() {
                let want = if i == j { expected } else { 0.0 };
                assert!((h.get(i, j) - c64::new(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn symmetric_state_couples_to_two_photons_with_2g() {
        let s = space();
        let p = SystemParams { g: 0.83, ..SystemParams::new(DriveScheme::AtomDriven) };
        let h = hamiltonian_reduced(s, &p).unwrap();
        let plus1 = Ket::basis(s, Rydberg, Ground, 1)
            .plus(&Ket::basis(s, Ground, Rydberg, 1))
            .normalized()
            .unwrap();
        let gg2 = Ket::basis(s, Ground, Ground, 2);
        let elem = plus1.inner(&h.apply(&gg2).unwrap());
        assert!((elem - c64::new(2.0 * 0.83, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn collective_branches() {
        let s = space();
        let base = SystemParams { g: 1.7, ..SystemParams::new(DriveScheme::AtomDriven) };
        let (_, minus) = collective_decomposition(s, &SystemParams { x1: 0.0, x2: 1.0, ..base }).unwrap();
        assert!(minus.max_abs() < 1e-12);
        let (plus, _) = collective_decomposition(s, &SystemParams { x1: 0.0, x2: 0.5, ..base }).unwrap();
        assert!(plus.max_abs() < 1e-12);
        let p = SystemParams { x1: 0.13, x2: 0.71, ..base };
        let (plus, minus) = collective_decomposition(s, &p).unwrap();
        let h_i = interaction_hamiltonian(s, &p).unwrap();
        assert!((&plus + &minus).max_abs_diff(&h_i) < 1e-12);
    }

    #[test]
    fn effective_hamiltonian_diagonals() {
        let s = space();
        let p = fig9(DriveScheme::AtomDriven);
        let h = effective_nonhermitian(s, &p).unwrap();
        let gg1 = s.index(Ground, Ground, 1);
        assert!((h.get(gg1, gg1) - c64::new(-10.0, -0.5)).norm() < 1e-12);
        let rr0 = s.index(Rydberg, Rydberg, 0);
        let gamma = experiment::GAMMA_KAPPA;
        assert!((h.get(rr0, rr0) - c64::new(-2.0 * 1.95 + 13.9, -gamma)).norm() < 1e-12);

        let lossless = SystemParams { kappa: 1.0, ..p }.with_gamma(0.0);
        let h = effective_nonhermitian(s, &SystemParams { kappa: f64::MIN_POSITIVE, ..lossless }).unwrap();
        assert!(h.max_abs_diff(&hamiltonian_reduced(s, &lossless).unwrap()) < 1e-12);
    }

    #[test]
    fn params_validation() {
        let ok = fig9(DriveScheme::AtomDriven);
        ok.validate().unwrap();
        assert!(SystemParams { kappa: 0.0, ..ok }.validate().is_err());
        assert!(SystemParams { epsilon: -0.1, ..ok }.validate().is_err());
        assert!(SystemParams { g: f64::NAN, ..ok }.validate().is_err());
        assert!(ok.with_gamma(-1.0).validate().is_err());
        assert!(SystemParams { gamma2: 0.3, ..ok }.gamma().is_err());
    }

    #[test]
    fn unit_conversion() {
        let mhz = SystemParams {
            g: 7.8,
            kappa: 2.5,
            delta_c: 25.0,
            ..SystemParams::new(DriveScheme::AtomDriven)
        }
        .with_gamma(0.4e-3);
        let k = mhz.to_kappa_units(Units::TwoPiMhz);
        assert!((k.g - 3.12).abs() < 1e-12);
        assert!((k.gamma1 - 1.6e-4).abs() < 1e-15);
        assert_eq!(k.delta_c, 10.0);
        assert_eq!(k.kappa, 1.0);
        assert_eq!(mhz.to_kappa_units(Units::Kappa), mhz);
    }

    #[test]
    fn van_der_waals_endpoints() {
        let pot = RydbergPotential::rubidium_62d();
        let near = rydberg_coupling_from_distance(4.0, &pot).unwrap();
        assert!((near - 28.33).abs() / 28.33 < 0.01, "{near}");
        let far = rydberg_coupling_from_distance(15.0, &pot).unwrap();
        assert!((far - 0.0102).abs() / 0.0102 < 0.05, "{far}");
        let doubled = rydberg_coupling_from_distance(8.0, &pot).unwrap();
        assert!((near / doubled - 64.0).abs() < 1e-9);
        let dd = RydbergPotential::dipole_dipole(1.0).unwrap();
        let r = rydberg_coupling_from_distance(2.0, &dd).unwrap() / rydberg_coupling_from_distance(4.0, &dd).unwrap();
        assert!((r - 8.0).abs() < 1e-12);
    }

    #[test]
    fn van_der_waals_rejects_bad_input() {
        let pot = RydbergPotential::rubidium_62d();
        assert!(rydberg_coupling_from_distance(0.0, &pot).is_err());
        assert!(rydberg_coupling_from_distance(-3.0, &pot).is_err());
        assert!(RydbergPotential::van_der_waals(0.0).is_err());
    }
}
