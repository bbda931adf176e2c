//! Numerical invariants of the smooth `(Z/m)^k`-cover `X` of the blown-up
//! plane branched over the strict transforms `L'_i` and the exceptional
//! curves `E_p`.
//!
//! Preimages: `C_i = (f^* L'_i)_red`, `D_p = (f^* E_p)_red`, with
//! `f^* L'_i = m C_i`. Everything is pulled back from the plane using
//! `(f^* A, f^* B) = m^k (A, B)`.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::arrangement::Arrangement;
use crate::cyclotomic::{rat, ratio, serialize_rational, Rational};
use crate::error::{Error, Result};
use crate::homology::{galois_kernel, smoothness_check, DeckGroup, Epimorphism, SmoothnessCertificate};
use crate::intersection::{canonical_class, pairing, strict_transform, BlowUp, DivisorClass};

/// Arrangement, blow-up and epimorphism together with the derived
/// smoothness certificate and deck group.
#[derive(Clone, Debug)]
pub struct CoverModel {
    arrangement: Arrangement,
    blown: Arc<BlowUp>,
    phi: Epimorphism,
    certificate: SmoothnessCertificate,
    deck: DeckGroup,
}

impl CoverModel {
    pub fn new(arrangement: Arrangement, phi: Epimorphism, blown: BlowUp) -> Result<Self> {
        let certificate = smoothness_check(&arrangement, &phi, &blown)?;
        let deck = galois_kernel(&phi)?;
        Ok(CoverModel {
            arrangement,
            blown: Arc::new(blown),
            phi,
            certificate,
            deck,
        })
    }

    /// Blows up every point of multiplicity at least 3.
    pub fn with_default_blowup(arrangement: Arrangement, phi: Epimorphism) -> Result<Self> {
        let blown = BlowUp::all_r_ge_3(&arrangement);
        CoverModel::new(arrangement, phi, blown)
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn blown(&self) -> &Arc<BlowUp> {
        &self.blown
    }

    pub fn phi(&self) -> &Epimorphism {
        &self.phi
    }

    pub fn certificate(&self) -> &SmoothnessCertificate {
        &self.certificate
    }

    pub fn deck(&self) -> &DeckGroup {
        &self.deck
    }

    pub fn is_smooth(&self) -> bool {
        self.certificate.smooth
    }

    fn require_smooth(&self) -> Result<()> {
        if self.is_smooth() {
            return Ok(());
        }
        let failed: Vec<String> = self.certificate.failures().map(|c| c.label.clone()).collect();
        Err(Error::NotSmooth(format!("condition fails at {}", failed.join(" "))))
    }

    fn layout(&self) -> Result<BranchLayout> {
        BranchLayout::from_arrangement(&self.arrangement, &self.blown)
    }
}

/// Which curve of the branch divisor a component lies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum BranchComponent {
    /// Over the strict transform of line `i`.
    Line(usize),
    /// Over the exceptional curve of incidence point `p`.
    Exceptional(usize),
}

/// Branch components on the blown-up plane and how they meet. Any two
/// components cross transversally at distinct points.
#[derive(Clone, Debug)]
pub struct BranchLayout {
    blown: Arc<BlowUp>,
    components: Vec<(BranchComponent, DivisorClass, String)>,
    /// Number of crossing points on each component.
    crossings_on: Vec<usize>,
    crossings: usize,
}

impl BranchLayout {
    pub fn from_arrangement(arr: &Arrangement, blown: &Arc<BlowUp>) -> Result<Self> {
        if let Some(p) = (0..arr.points().len()).find(|&p| arr.point(p).multiplicity() > 2 && !blown.contains(p)) {
            return Err(Error::Unsupported(format!(
                "{} branch components pass through {}; blow it up first",
                arr.point(p).multiplicity(),
                arr.point(p).label()
            )));
        }
        let mut components = Vec::new();
        let mut crossings_on = Vec::new();
        for i in 0..arr.line_count() {
            let class = strict_transform(arr, i, blown);
            components.push((BranchComponent::Line(i), class, format!("C{}", i + 1)));
            // Every point on the line is either blown (meeting E_p) or a
            // double point (meeting the other line).
            crossings_on.push(arr.points_on_line(i).len());
        }
        for &p in blown.points() {
            let class = DivisorClass::exceptional(blown.clone(), p)?;
            let label = format!("D[{}]", arr.point(p).label());
            components.push((BranchComponent::Exceptional(p), class, label));
            crossings_on.push(arr.point(p).multiplicity());
        }
        let doubles = (0..arr.points().len())
            .filter(|&p| !blown.contains(p) && arr.point(p).multiplicity() == 2)
            .count();
        let on_exceptional: usize = blown.points().iter().map(|&p| arr.point(p).multiplicity()).sum();
        Ok(BranchLayout {
            blown: blown.clone(),
            components,
            crossings_on,
            crossings: doubles + on_exceptional,
        })
    }

    /// The plane with a single line and nothing blown up.
    pub fn single_line() -> Self {
        let blown = Arc::new(BlowUp::none());
        let h = DivisorClass::hyperplane(blown.clone());
        BranchLayout {
            blown,
            components: vec![(BranchComponent::Line(0), h, "C1".into())],
            crossings_on: vec![0],
            crossings: 0,
        }
    }

    /// `B`, the sum of all branch components.
    pub fn branch_divisor(&self) -> DivisorClass {
        self.components
            .iter()
            .fold(DivisorClass::zero(self.blown.clone()), |acc, (_, c, _)| {
                acc.add(c).expect("same blow-up")
            })
    }

    /// `e` of the blown-up plane minus the branch divisor.
    pub fn complement_euler(&self) -> i64 {
        3 + self.blown.len() as i64 - 2 * self.components.len() as i64 + self.crossings as i64
    }
}

/// `K_tilde + ((m-1)/m) B`, whose pull-back is `K_X`.
pub fn canonical_of_layout(layout: &BranchLayout, m: u32) -> DivisorClass {
    let k = canonical_class(&layout.blown);
    let w = ratio(m as i64 - 1, m as i64);
    k.add(&layout.branch_divisor().scale(&w)).expect("same blow-up")
}

pub fn cover_canonical(cover: &CoverModel) -> Result<DivisorClass> {
    cover.require_smooth()?;
    Ok(canonical_of_layout(&cover.layout()?, cover.phi.modulus()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub name: String,
    pub component: BranchComponent,
    #[serde(serialize_with = "serialize_rational")]
    pub self_intersection: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub canonical_degree: Rational,
    pub genus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub m: u32,
    pub k: usize,
    /// The class `K_tilde + ((m-1)/m) B` on the blown-up plane.
    pub canonical_class: String,
    pub k_squared: i64,
    pub euler: i64,
    pub chi: i64,
    /// `K^2 - 3e`; zero on ball quotients.
    pub my_defect: i64,
    pub curves: Vec<CurveInvariants>,
}

fn power(m: u32, exp: i64) -> Rational {
    let base = rat(m as i64);
    if exp >= 0 {
        num_traits::pow(base, exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

fn to_i64(r: &Rational, what: &str) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::Inconsistent(format!("{what} = {r} is not an integer")));
    }
    r.to_integer()
        .to_i64()
        .ok_or_else(|| Error::Inconsistent(format!("{what} out of range")))
}

/// Invariants of the `(Z/m)^k`-cover branched over `layout`, by pull-back
/// and by the stratified Euler characteristic
/// `e(X) = m^k e(U) + m^{k-1} sum e(open parts) + m^{k-2} #crossings`.
pub fn layout_invariants(layout: &BranchLayout, m: u32, k: usize) -> Result<InvariantReport> {
    let kq = canonical_of_layout(layout, m);
    let deg = power(m, k as i64);
    let k_squared = to_i64(&(&deg * pairing(&kq, &kq)?), "K^2")?;

    let open: i64 = layout.crossings_on.iter().map(|&c| 2 - c as i64).sum();
    let euler = &deg * rat(layout.complement_euler())
        + power(m, k as i64 - 1) * rat(open)
        + power(m, k as i64 - 2) * rat(layout.crossings as i64);
    let euler = to_i64(&euler, "e")?;

    if (k_squared + euler) % 12 != 0 {
        return Err(Error::Inconsistent(format!(
            "K^2 + e = {} is not divisible by 12",
            k_squared + euler
        )));
    }

    let mut curves = Vec::new();
    for (component, class, name) in &layout.components {
        let self_intersection = power(m, k as i64 - 2) * pairing(class, class)?;
        let canonical_degree = power(m, k as i64 - 1) * pairing(class, &kq)?;
        let two_g_minus_2 = &self_intersection + &canonical_degree;
        let genus = to_i64(&((two_g_minus_2 + rat(2)) / rat(2)), &format!("genus of {name}"))?;
        if genus < 0 {
            return Err(Error::Inconsistent(format!("genus of {name} is negative")));
        }
        curves.push(CurveInvariants {
            name: name.clone(),
            component: *component,
            self_intersection,
            canonical_degree,
            genus,
        });
    }

    Ok(InvariantReport {
        m,
        k,
        canonical_class: kq.to_string(),
        k_squared,
        euler,
        chi: (k_squared + euler) / 12,
        my_defect: k_squared - 3 * euler,
        curves,
    })
}

pub fn invariants(cover: &CoverModel) -> Result<InvariantReport> {
    cover.require_smooth()?;
    layout_invariants(&cover.layout()?, cover.phi.modulus(), cover.phi.rank())
}

impl InvariantReport {
    pub fn curve(&self, name: &str) -> Option<&CurveInvariants> {
        self.curves.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group        (Z/{})^{}", self.m, self.k)?;
        writeln!(f, "K_quotient   {}", self.canonical_class)?;
        writeln!(f, "K^2          {}", self.k_squared)?;
        writeln!(f, "e            {}", self.euler)?;
        writeln!(f, "chi(O)       {}", self.chi)?;
        writeln!(f, "K^2 - 3e     {}", self.my_defect)?;
        writeln!(f, "{:<14} {:>6} {:>6} {:>6}", "curve", "C^2", "C.K", "genus")?;
        for c in &self.curves {
            writeln!(
                f,
                "{:<14} {:>6} {:>6} {:>6}",
                c.name,
                c.self_intersection.to_string(),
                c.canonical_degree.to_string(),
                c.genus
            )?;
        }
        Ok(())
    }
}

/// `3 K_X` written as a combination of the `C_i` and `D_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeCanonical {
    pub terms: Vec<DecompositionTerm>,
    pub integral: bool,
    pub positive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionTerm {
    pub name: String,
    pub component: BranchComponent,
    #[serde(serialize_with = "serialize_rational")]
    pub coefficient: Rational,
}

impl ThreeCanonical {
    pub fn coefficient(&self, component: BranchComponent) -> Option<&Rational> {
        self.terms
            .iter()
            .find(|t| t.component == component)
            .map(|t| &t.coefficient)
    }
}

/// Writes `3 K_tilde = x sum L'_i + sum y_p E_p` with the symmetric choice
/// `x = -9/n`, `y_p = 3 - 9 r_p / n`, then pulls back:
/// `3 K_X = sum (m x + 3(m-1)) C_i + sum (m y_p + 3(m-1)) D_p`.
/// Coefficients may be fractional; `integral` reports it.
pub fn three_canonical_decomposition(cover: &CoverModel) -> Result<ThreeCanonical> {
    cover.require_smooth()?;
    let m = cover.phi.modulus() as i64;
    if m < 2 {
        return Err(Error::Unsupported("no branch curves for m = 1".into()));
    }
    let arr = &cover.arrangement;
    let n = arr.line_count() as i64;
    let mr = rat(m);
    let ramification = rat(3 * (m - 1));
    let x = ratio(-9, n);
    let mut terms = Vec::new();
    for i in 0..arr.line_count() {
        terms.push(DecompositionTerm {
            name: format!("C{}", i + 1),
            component: BranchComponent::Line(i),
            coefficient: &mr * &x + &ramification,
        });
    }
    for &p in cover.blown.points() {
        let r = arr.point(p).multiplicity() as i64;
        let y = rat(3) - ratio(9 * r, n);
        terms.push(DecompositionTerm {
            name: format!("D[{}]", arr.point(p).label()),
            component: BranchComponent::Exceptional(p),
            coefficient: &mr * &y + &ramification,
        });
    }
    let integral = terms.iter().all(|t| t.coefficient.is_integer());
    let positive = terms.iter().all(|t| t.coefficient.is_positive());
    Ok(ThreeCanonical {
        terms,
        integral,
        positive,
    })
}

/// All non-negative integer solutions of `sum coeffs[i] x_i = target`,
/// in lexicographic order.
pub fn invariant_curve_filter(coeffs: &[u64], target: u64) -> Result<Vec<Vec<u64>>> {
    if coeffs.contains(&0) {
        return Err(Error::Inconsistent("coefficients must be positive".into()));
    }
    fn go(coeffs: &[u64], rest: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let Some((&c, tail)) = coeffs.split_first() else {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        for x in 0..=rest / c {
            prefix.push(x);
            go(tail, rest - x * c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(coeffs, target, &mut Vec::new(), &mut out);
    Ok(out)
}

/// The monomial `w_j^m = l_1^{e_1} ... l_n^{e_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorWord {
    pub exponents: Vec<u32>,
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("l{}", i + 1)
                } else {
                    format!("l{}^{e}", i + 1)
                }
            })
            .collect();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

/// One word per generator of the deck group; the exponents of `l_1..l_{n-1}`
/// are read from the columns of `phi` and the last is fixed by the zero-sum
/// relation.
pub fn generator_words(phi: &Epimorphism) -> Vec<GeneratorWord> {
    let m = phi.modulus();
    (0..phi.rank())
        .map(|j| {
            let mut exponents = phi.column(j);
            let n = exponents.len();
            let head: u64 = exponents[..n - 1].iter().map(|&e| e as u64).sum();
            exponents[n - 1] = ((m as u64 - 1) * head % m as u64) as u32;
            GeneratorWord { exponents }
        })
        .collect()
}
