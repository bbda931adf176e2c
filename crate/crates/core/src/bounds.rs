//! Topological arithmetic for real structures on surfaces: the Smith
//! bound, the Lefschetz relation for complex conjugation, the identities
//! for maximal Miyaoka-Yau surfaces, and the fixed-point count ruling out
//! involutions of fake projective planes.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{rat, ratio, serialize_rational, Rational};
use crate::error::{Error, Result};

/// Z/2-Betti numbers `(b0, b1, b2)` of a real component.
pub type Betti = [u64; 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeData {
    pub h10: u64,
    pub h20: u64,
    pub h11: u64,
    /// Rank of the 2-torsion of `H_1(X; Z)`.
    #[serde(default)]
    pub nu: u64,
    /// Dimensions of the invariant and anti-invariant parts of the
    /// primitive `(1,1)` classes under conjugation.
    #[serde(default)]
    pub p_plus: u64,
    #[serde(default)]
    pub p_minus: u64,
    #[serde(default)]
    pub components: Vec<Betti>,
}

impl HodgeData {
    pub fn new(h10: u64, h20: u64, h11: u64) -> Self {
        HodgeData {
            h10,
            h20,
            h11,
            nu: 0,
            p_plus: 0,
            p_minus: h11.saturating_sub(1),
            components: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.h11 == 0 {
            return Err(Error::Inconsistent("h11 must be at least 1".into()));
        }
        if self.p_plus + self.p_minus != self.h11 - 1 {
            return Err(Error::Inconsistent(format!(
                "p_plus + p_minus = {} but h11 - 1 = {}",
                self.p_plus + self.p_minus,
                self.h11 - 1
            )));
        }
        Ok(())
    }

    pub fn real_betti_total(&self) -> u64 {
        self.components.iter().flatten().sum()
    }

    /// Fills `p_plus`, `p_minus` from the trace given by the real
    /// components.
    pub fn with_components(mut self, components: Vec<Betti>) -> Result<Self> {
        self.components = components;
        let tr = lefschetz_trace(&self)?;
        let minus = self.h11 as i64 - 1 - tr;
        if minus % 2 != 0 {
            return Err(Error::Inconsistent(format!("h11 - 1 - trace = {minus} is odd")));
        }
        self.p_minus = (minus / 2) as u64;
        self.p_plus = self.h11 - 1 - self.p_minus;
        Ok(self)
    }
}

/// `(h10, h20, h11)` of a surface from `K^2`, `e` and `q`, via Noether's
/// formula and `e = 2 - 4q + 2p_g + h11`.
pub fn hodge_from_invariants(k_squared: i64, euler: i64, q: u64) -> Result<HodgeData> {
    if (k_squared + euler) % 12 != 0 {
        return Err(Error::Inconsistent(format!(
            "K^2 + e = {} is not divisible by 12",
            k_squared + euler
        )));
    }
    let chi = (k_squared + euler) / 12;
    let pg = chi - 1 + q as i64;
    let h11 = euler - 2 + 4 * q as i64 - 2 * pg;
    if pg < 0 || h11 < 1 {
        return Err(Error::Inconsistent(format!(
            "negative Hodge numbers (p_g = {pg}, h11 = {h11})"
        )));
    }
    Ok(HodgeData::new(q, pg as u64, h11 as u64))
}

/// `2 + 4(h10 + nu) + 2 h20 + h11`, the total Z/2-Betti number of `X`.
pub fn smith_total(h: &HodgeData) -> u64 {
    2 + 4 * (h.h10 + h.nu) + 2 * h.h20 + h.h11
}

pub fn is_maximal(h: &HodgeData) -> bool {
    h.real_betti_total() == smith_total(h)
}

/// `tr P^{1,1} = sum (b0 - b1 + b2) - 1`.
pub fn lefschetz_trace(h: &HodgeData) -> Result<i64> {
    let chi: i64 = h
        .components
        .iter()
        .map(|b| b[0] as i64 - b[1] as i64 + b[2] as i64)
        .sum();
    let tr = chi - 1;
    let bound = h.h11 as i64 - 1;
    if tr.abs() > bound {
        return Err(Error::Inconsistent(format!(
            "|trace| = {} exceeds h11 - 1 = {bound}",
            tr.abs()
        )));
    }
    Ok(tr)
}

/// `h11 = h20 + h10 + 1`, equivalent to `K^2 = 3e` for these surfaces.
pub fn my_identity(h: &HodgeData) -> bool {
    h.h11 == h.h20 + h.h10 + 1
}

/// `b1` of the real part of a maximal surface from the Smith equality and
/// the Lefschetz relation: `1 + 2(h10 + nu) + h20 + p_minus`.
pub fn maximal_b1(h: &HodgeData) -> u64 {
    1 + 2 * (h.h10 + h.nu) + h.h20 + h.p_minus
}

/// The same quantity rewritten with the MY identity:
/// `h11 + p_minus + h10 + 2 nu`.
pub fn maximal_b1_my(h: &HodgeData) -> Result<u64> {
    if !my_identity(h) {
        return Err(Error::Inconsistent("h11 != h20 + h10 + 1".into()));
    }
    Ok(h.h11 + h.p_minus + h.h10 + 2 * h.nu)
}

/// Lower bound `h20 >= 2 nu + 5 p_plus + 4` for maximal MY surfaces.
pub fn prop51_bound(h: &HodgeData) -> Result<u64> {
    if !my_identity(h) {
        return Err(Error::Inconsistent("h11 != h20 + h10 + 1".into()));
    }
    Ok(2 * h.nu + 5 * h.p_plus + 4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Feasibility {
    Infeasible,
    Boundary,
    Feasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentBound {
    pub k3: u64,
    /// `(h11 + h10 + 2 nu + p_minus) - (2 h11 + 2 h10 + 4 nu + 2 p_plus + 2 - k3)`.
    pub slack: i64,
    pub verdict: Feasibility,
}

/// `b1 >= 4k - k3` against the maximal value of `b1`, where `k3` counts
/// components with `b1 >= 3`.
pub fn prop52_component_bound(h: &HodgeData, k3: u64) -> Result<ComponentBound> {
    h.validate()?;
    let lhs = (h.h11 + h.h10 + 2 * h.nu + h.p_minus) as i64;
    let rhs = (2 * h.h11 + 2 * h.h10 + 4 * h.nu + 2 * h.p_plus + 2) as i64 - k3 as i64;
    let slack = lhs - rhs;
    let verdict = match slack {
        s if s < 0 => Feasibility::Infeasible,
        0 => Feasibility::Boundary,
        _ => Feasibility::Feasible,
    };
    Ok(ComponentBound { k3, slack, verdict })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedCurveStep {
    #[serde(serialize_with = "serialize_rational")]
    pub r: Rational,
    /// `e(C) = 2 C^2` from proportionality.
    #[serde(serialize_with = "serialize_rational")]
    pub e_proportional: Rational,
    /// `e(C) = -(C^2 + C.K)` from adjunction.
    #[serde(serialize_with = "serialize_rational")]
    pub e_adjunction: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FakePlaneReport {
    /// Samples of `C = rK` showing the two Euler characteristics have
    /// opposite signs.
    pub fixed_curve_steps: Vec<FixedCurveStep>,
    pub fixed_curves_excluded: bool,
    pub lefschetz_fixed_points: i64,
    pub det_per_point: i64,
    #[serde(serialize_with = "serialize_rational")]
    pub holomorphic_sum: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub holomorphic_expected: Rational,
    pub contradiction: bool,
}

fn det2(m: [[i64; 2]; 2]) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// A holomorphic involution of a surface with `b0 = b2 = b4 = 1`,
/// `b1 = b3 = 0`, `p_g = q = 0`, `K^2 = 9`.
pub fn fake_plane_involution_check() -> FakePlaneReport {
    let k_squared = rat(9);
    // C = rK with r > 0: C^2 = 9 r^2, C.K = 9 r.
    let samples = [ratio(1, 3), ratio(1, 2), rat(1), rat(2), rat(3)];
    let fixed_curve_steps: Vec<FixedCurveStep> = samples
        .iter()
        .map(|r| {
            let c2 = r * r * &k_squared;
            let ck = r * &k_squared;
            FixedCurveStep {
                r: r.clone(),
                e_proportional: rat(2) * &c2,
                e_adjunction: -(c2 + ck),
            }
        })
        .collect();
    let fixed_curves_excluded = fixed_curve_steps
        .iter()
        .all(|s| s.e_proportional > rat(0) && s.e_adjunction < rat(0));

    let betti = [1i64, 0, 1, 0, 1];
    let lefschetz_fixed_points: i64 = betti
        .iter()
        .enumerate()
        .map(|(i, b)| if i % 2 == 0 { *b } else { -*b })
        .sum();
    // The differential at an isolated fixed point of an involution is -1.
    let d = [[-1, 0], [0, -1]];
    let det_per_point = det2([[1 - d[0][0], -d[0][1]], [-d[1][0], 1 - d[1][1]]]);
    let holomorphic_sum = ratio(lefschetz_fixed_points, det_per_point);
    // Holomorphic Lefschetz number = sum (-1)^q tr H^{0,q} = 1 for p_g = q = 0.
    let holomorphic_expected = rat(1);
    let contradiction = fixed_curves_excluded && holomorphic_sum != holomorphic_expected;
    FakePlaneReport {
        fixed_curve_steps,
        fixed_curves_excluded,
        lefschetz_fixed_points,
        det_per_point,
        holomorphic_sum,
        holomorphic_expected,
        contradiction,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum ComponentVerdict {
    Accepted,
    Rejected(String),
}

/// Real components of a negatively curved surface cannot be a sphere,
/// `RP^2`, a torus or a Klein bottle, i.e. need `b1 >= 3`.
pub fn small_component_exclusion(component: Betti, negatively_curved: bool) -> ComponentVerdict {
    if !negatively_curved {
        return ComponentVerdict::Accepted;
    }
    match component[1] {
        0 => ComponentVerdict::Rejected("sphere".into()),
        1 => ComponentVerdict::Rejected("real projective plane".into()),
        2 => ComponentVerdict::Rejected("torus or Klein bottle".into()),
        _ => ComponentVerdict::Accepted,
    }
}
