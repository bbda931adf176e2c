//! First homology of the arrangement complement and its quotients.
//!
//! `H_1(P^2 \ L)` is generated by the meridians `lambda_1..lambda_n` subject
//! to `lambda_1 + ... + lambda_n = 0`. An [`Epimorphism`] onto `(Z/m)^k` is
//! given by the images of the meridians, one row per line.

use std::collections::HashSet;

use serde::Serialize;

use crate::arrangement::{Arrangement, IncidencePoint};
use crate::error::{Error, Result};
use crate::intersection::BlowUp;
use crate::linalg::modp;

pub fn is_prime(m: u32) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `phi(lambda_i) = rows[i]` in `(Z/m)^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Epimorphism {
    m: u32,
    k: usize,
    rows: Vec<Vec<u32>>,
}

impl Epimorphism {
    /// Shape checks only; see [`validate_epimorphism`] for the group-theoretic
    /// conditions.
    pub fn new(m: u32, rows: Vec<Vec<i64>>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidEpimorphism(format!("modulus must be >= 2, got {m}")));
        }
        let k = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || k == 0 {
            return Err(Error::InvalidEpimorphism("no rows".into()));
        }
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidEpimorphism("rows have different lengths".into()));
        }
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| modp::reduce(x, m)).collect())
            .collect();
        Ok(Epimorphism { m, k, rows })
    }

    /// Like [`Epimorphism::new`] but also requires zero column sums and
    /// surjectivity.
    pub fn validated(m: u32, rows: Vec<Vec<i64>>) -> Result<Self> {
        let phi = Epimorphism::new(m, rows)?;
        let report = validate_epimorphism(&phi);
        if !report.is_valid() {
            return Err(Error::InvalidEpimorphism(report.problems.join("; ")));
        }
        Ok(phi)
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn line_count(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i]
    }

    /// Column `j` as a vector indexed by lines.
    pub fn column(&self, j: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// `phi(sum_i c_i lambda_i)`.
    pub fn image(&self, coeffs: &[i64]) -> Vec<u32> {
        let mut out = vec![0i64; self.k];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            for (o, &x) in out.iter_mut().zip(row) {
                *o += c * x as i64;
            }
        }
        out.into_iter().map(|x| modp::reduce(x, self.m)).collect()
    }

    /// `phi(eps_p)`, the image of the loop around the exceptional curve.
    pub fn eps_image(&self, point: &IncidencePoint) -> Vec<u32> {
        self.image(&eps_class(point, self.line_count()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpimorphismReport {
    pub column_sums: Vec<u32>,
    pub zero_sum: bool,
    pub surjective: bool,
    pub problems: Vec<String>,
}

impl EpimorphismReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Size of the subgroup of `(Z/m)^k` generated by `gens`, by closure.
pub fn generated_subgroup_order(gens: &[Vec<u32>], m: u32) -> usize {
    let k = gens.first().map_or(0, Vec::len);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut frontier = vec![vec![0u32; k]];
    seen.insert(vec![0u32; k]);
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y: Vec<u32> = x.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

/// Checks the zero-sum relation and surjectivity. For prime `m`,
/// surjectivity is `rank = k` over `Z/m`; other moduli use an explicit
/// subgroup closure when `m^k` is small.
pub fn validate_epimorphism(phi: &Epimorphism) -> EpimorphismReport {
    let m = phi.m;
    let column_sums: Vec<u32> = (0..phi.k)
        .map(|j| (phi.rows.iter().map(|r| r[j] as u64).sum::<u64>() % m as u64) as u32)
        .collect();
    let zero_sum = column_sums.iter().all(|&s| s == 0);
    let mut problems = Vec::new();
    if !zero_sum {
        problems.push(format!("column sums {column_sums:?} are not 0 mod {m}"));
    }
    let surjective = if is_prime(m) {
        modp::rank(&phi.rows, m) == phi.k
    } else {
        let order = (m as u64).checked_pow(phi.k as u32);
        match order {
            Some(o) if o <= 1 << 20 => generated_subgroup_order(&phi.rows, m) as u64 == o,
            _ => {
                problems.push(format!(
                    "surjectivity check unsupported for composite m={m} at this size"
                ));
                false
            }
        }
    };
    if !surjective && problems.iter().all(|p| !p.contains("unsupported")) {
        problems.push(format!("rows do not generate (Z/{m})^{}", phi.k));
    }
    EpimorphismReport {
        column_sums,
        zero_sum,
        surjective,
        problems,
    }
}

/// Class of the loop around `E_p` in the meridian basis: the indicator of
/// the lines through `p`.
pub fn eps_class(point: &IncidencePoint, n: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    for &i in &point.incident {
        v[i] = 1;
    }
    v
}

/// Whether the vectors span a subgroup isomorphic to `(Z/m)^r`; over a
/// prime field this is `rank = r`.
pub fn independence(vecs: &[Vec<u32>], r: usize, m: u32) -> Result<bool> {
    if !is_prime(m) {
        return Err(Error::CompositeModulus(m));
    }
    Ok(modp::rank(vecs, m) == r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    /// Unblown double point: the two meridian images must be independent.
    DoublePoint,
    /// Blown point: each `(phi(eps_p), phi(lambda_i))` must be independent.
    BlownPoint,
    /// Unblown point of multiplicity >= 3; the cover is singular over it.
    UnresolvedMultiplePoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub independent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCheck {
    pub point: usize,
    pub label: String,
    pub kind: PointKind,
    pub pairs: Vec<PairCheck>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessCertificate {
    pub checks: Vec<PointCheck>,
    pub smooth: bool,
}

impl SmoothnessCertificate {
    pub fn failures(&self) -> impl Iterator<Item = &PointCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Per-point smoothness conditions for the cover of the blown-up plane.
pub fn smoothness_check(arr: &Arrangement, phi: &Epimorphism, blown: &BlowUp) -> Result<SmoothnessCertificate> {
    let m = phi.m;
    if !is_prime(m) {
        return Err(Error::CompositeModulus(m));
    }
    if phi.line_count() != arr.line_count() {
        return Err(Error::Inconsistent(format!(
            "epimorphism has {} rows but the arrangement has {} lines",
            phi.line_count(),
            arr.line_count()
        )));
    }
    let mut checks = Vec::new();
    for (id, point) in arr.points().iter().enumerate() {
        let pair = |a: Vec<u32>, b: Vec<u32>| -> Result<PairCheck> {
            let independent = independence(&[a.clone(), b.clone()], 2, m)?;
            Ok(PairCheck {
                left: a,
                right: b,
                independent,
            })
        };
        let (kind, pairs) = if blown.contains(id) {
            let eps = phi.eps_image(point);
            let pairs = point
                .incident
                .iter()
                .map(|&i| pair(eps.clone(), phi.row(i).to_vec()))
                .collect::<Result<Vec<_>>>()?;
            (PointKind::BlownPoint, pairs)
        } else if point.multiplicity() == 2 {
            let (a, b) = (point.incident[0], point.incident[1]);
            (
                PointKind::DoublePoint,
                vec![pair(phi.row(a).to_vec(), phi.row(b).to_vec())?],
            )
        } else {
            (PointKind::UnresolvedMultiplePoint, Vec::new())
        };
        let passed = kind != PointKind::UnresolvedMultiplePoint && pairs.iter().all(|p| p.independent);
        checks.push(PointCheck {
            point: id,
            label: point.label(),
            kind,
            pairs,
            passed,
        });
    }
    let smooth = checks.iter().all(|c| c.passed);
    Ok(SmoothnessCertificate { checks, smooth })
}

/// The deck group `(Z/m)^k` together with the kernel
/// `H = {gamma in G : sum_{i<n} a_{i,j} gamma_i = 0 for all j}` inside
/// `G = {gamma in (Z/m)^n : sum gamma_i = 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeckGroup {
    pub m: u32,
    pub k: usize,
    pub n: usize,
    /// The `k` congruences, one per column, on the first `n-1` coordinates.
    pub congruences: Vec<Vec<u32>>,
    /// Basis of the kernel as vectors in `(Z/m)^n`.
    pub kernel_basis: Vec<Vec<u32>>,
}

impl DeckGroup {
    pub fn order(&self) -> u64 {
        (self.m as u64).pow(self.k as u32)
    }

    pub fn kernel_order(&self) -> u64 {
        (self.m as u64).pow(self.kernel_basis.len() as u32)
    }

    /// `|G / H|` from the dimensions: `m^{(n-1) - dim H}`.
    pub fn quotient_order(&self) -> u64 {
        (self.m as u64).pow((self.n - 1 - self.kernel_basis.len()) as u32)
    }

    pub fn contains(&self, gamma: &[u32]) -> bool {
        let m = self.m as u64;
        gamma.len() == self.n
            && gamma.iter().map(|&x| x as u64).sum::<u64>() % m == 0
            && self
                .congruences
                .iter()
                .all(|c| c.iter().zip(gamma).map(|(&a, &g)| a as u64 * g as u64).sum::<u64>() % m == 0)
    }

    /// All kernel elements (there are `m^{n-1-k}` of them).
    pub fn kernel_elements(&self) -> Vec<Vec<u32>> {
        let m = self.m;
        let mut out = vec![vec![0u32; self.n]];
        for b in &self.kernel_basis {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for x in &out {
                for c in 0..m {
                    next.push(x.iter().zip(b).map(|(xi, bi)| (xi + c * bi) % m).collect());
                }
            }
            out = next;
        }
        out
    }
}

/// Pairing `(gamma, a) = sum_{i<n} gamma_i a_i mod m` between the Galois
/// group of the maximal cover and the exponent vectors.
pub fn pairing(gamma: &[u32], a: &[u32], m: u32) -> u32 {
    let n = gamma.len().min(a.len());
    let s: u64 = gamma[..n - 1]
        .iter()
        .zip(&a[..n - 1])
        .map(|(&g, &x)| g as u64 * x as u64)
        .sum();
    (s % m as u64) as u32
}

pub fn galois_kernel(phi: &Epimorphism) -> Result<DeckGroup> {
    let m = phi.m;
    if !is_prime(m) {
        return Err(Error::CompositeModulus(m));
    }
    let report = validate_epimorphism(phi);
    if !report.is_valid() {
        return Err(Error::InvalidEpimorphism(report.problems.join("; ")));
    }
    let n = phi.line_count();
    let congruences: Vec<Vec<u32>> = (0..phi.k)
        .map(|j| {
            let mut c = phi.column(j);
            c[n - 1] = 0;
            c
        })
        .collect();
    let mut system = congruences.clone();
    system.push(vec![1; n]);
    let kernel_basis = modp::nullspace(&system, n, m);
    Ok(DeckGroup {
        m,
        k: phi.k,
        n,
        congruences,
        kernel_basis,
    })
}
