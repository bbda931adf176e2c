//! Intersection theory on the plane blown up at finitely many incidence
//! points. Classes are written in the basis `H, E_p` with
//! `H^2 = 1`, `E_p^2 = -1`, `H.E_p = 0`, `E_p.E_q = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::arrangement::Arrangement;
use crate::cyclotomic::{rat, rational_string, Rational};
use crate::error::{Error, Result};

/// The set of blown-up incidence points (ids into the arrangement's point
/// list), sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BlowUp {
    points: Vec<usize>,
}

impl BlowUp {
    pub fn none() -> Self {
        BlowUp { points: Vec::new() }
    }

    /// All points of multiplicity at least 3.
    pub fn all_r_ge_3(arr: &Arrangement) -> Self {
        BlowUp {
            points: arr.points_with_multiplicity_at_least(3),
        }
    }

    pub fn from_ids(arr: &Arrangement, ids: &[usize]) -> Result<Self> {
        let mut points = ids.to_vec();
        points.sort_unstable();
        points.dedup();
        if let Some(&bad) = points.iter().find(|&&p| p >= arr.points().len()) {
            return Err(Error::Inconsistent(format!(
                "point id {bad} out of range (arrangement has {} points)",
                arr.points().len()
            )));
        }
        Ok(BlowUp { points })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.points.binary_search(&p).is_ok()
    }
}

/// A `Q`-divisor class `h*H + sum e_p E_p` on a fixed blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    context: Arc<BlowUp>,
    pub h: Rational,
    /// Coefficients of `E_p`; absent entries are zero.
    pub e: BTreeMap<usize, Rational>,
}

impl DivisorClass {
    pub fn zero(context: Arc<BlowUp>) -> Self {
        DivisorClass {
            context,
            h: Rational::zero(),
            e: BTreeMap::new(),
        }
    }

    pub fn hyperplane(context: Arc<BlowUp>) -> Self {
        DivisorClass {
            h: Rational::one(),
            ..DivisorClass::zero(context)
        }
    }

    pub fn exceptional(context: Arc<BlowUp>, p: usize) -> Result<Self> {
        if !context.contains(p) {
            return Err(Error::Inconsistent(format!("point {p} is not blown up")));
        }
        let mut d = DivisorClass::zero(context);
        d.e.insert(p, Rational::one());
        Ok(d)
    }

    pub fn context(&self) -> &Arc<BlowUp> {
        &self.context
    }

    pub fn e_coeff(&self, p: usize) -> Rational {
        self.e.get(&p).cloned().unwrap_or_else(Rational::zero)
    }

    fn same_context(&self, other: &DivisorClass) -> Result<()> {
        if Arc::ptr_eq(&self.context, &other.context) || self.context == other.context {
            Ok(())
        } else {
            Err(Error::MismatchedContext)
        }
    }

    fn normalized(mut self) -> Self {
        self.e.retain(|_, v| !v.is_zero());
        self
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.same_context(other)?;
        let mut out = self.clone();
        out.h += &other.h;
        for (p, c) in &other.e {
            *out.e.entry(*p).or_insert_with(Rational::zero) += c;
        }
        Ok(out.normalized())
    }

    pub fn sub(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> DivisorClass {
        DivisorClass {
            context: self.context.clone(),
            h: &self.h * c,
            e: self.e.iter().map(|(p, v)| (*p, v * c)).collect(),
        }
        .normalized()
    }
}

/// The intersection form.
pub fn pairing(d1: &DivisorClass, d2: &DivisorClass) -> Result<Rational> {
    d1.same_context(d2)?;
    let mut acc = &d1.h * &d2.h;
    for (p, c) in &d1.e {
        if let Some(c2) = d2.e.get(p) {
            acc -= c * c2;
        }
    }
    Ok(acc)
}

/// `L'_i = H - sum_{p blown, p on L_i} E_p`.
pub fn strict_transform(arr: &Arrangement, line: usize, blown: &Arc<BlowUp>) -> DivisorClass {
    let mut d = DivisorClass::hyperplane(blown.clone());
    for &p in blown.points() {
        if arr.point(p).contains_line(line) {
            d.e.insert(p, -Rational::one());
        }
    }
    d
}

/// `K = -3H + sum E_p`.
pub fn canonical_class(blown: &Arc<BlowUp>) -> DivisorClass {
    let mut d = DivisorClass::zero(blown.clone());
    d.h = rat(-3);
    for &p in blown.points() {
        d.e.insert(p, Rational::one());
    }
    d
}

/// Prints as e.g. `21/5H - 3/5E[1] - 3/5E[2]` (exceptional ids 1-based).
impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.h.is_zero() {
            parts.push(format!("{}H", rational_string(&self.h)));
        }
        for (p, c) in &self.e {
            let term = format!("{}E[{}]", rational_string(&c.abs()), p + 1);
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{term}") } else { term });
            } else {
                parts.push(format!("{} {term}", if c.is_negative() { "-" } else { "+" }));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{complete_quadrilateral, dual_hesse};

    #[test]
    fn basic_pairings() {
        let h = dual_hesse();
        let blown = Arc::new(BlowUp::all_r_ge_3(&h));
        let hh = DivisorClass::hyperplane(blown.clone());
        assert_eq!(pairing(&hh, &hh).unwrap(), rat(1));
        let e = DivisorClass::exceptional(blown.clone(), blown.points()[0]).unwrap();
        assert_eq!(pairing(&e, &e).unwrap(), rat(-1));
        assert_eq!(pairing(&hh, &e).unwrap(), rat(0));
    }

    #[test]
    fn hesse_strict_transforms() {
        let h = dual_hesse();
        let blown = Arc::new(BlowUp::all_r_ge_3(&h));
        for i in 0..9 {
            let l = strict_transform(&h, i, &blown);
            assert_eq!(l.e.len(), 4);
            assert_eq!(pairing(&l, &l).unwrap(), rat(-3));
        }
    }

    #[test]
    fn pullback_of_line_is_hyperplane() {
        let h = dual_hesse();
        let blown = Arc::new(BlowUp::all_r_ge_3(&h));
        for i in 0..9 {
            let mut pullback = strict_transform(&h, i, &blown);
            for &p in blown.points() {
                if h.point(p).contains_line(i) {
                    pullback = pullback
                        .add(&DivisorClass::exceptional(blown.clone(), p).unwrap())
                        .unwrap();
                }
            }
            assert_eq!(pullback, DivisorClass::hyperplane(blown.clone()));
            assert_eq!(pairing(&pullback, &pullback).unwrap(), rat(1));
        }
    }

    #[test]
    fn quadrilateral_and_unblown_strict_transforms() {
        let q = complete_quadrilateral();
        let blown = Arc::new(BlowUp::all_r_ge_3(&q));
        for i in 0..6 {
            assert_eq!(strict_transform(&q, i, &blown).e.len(), 2);
        }
        let none = Arc::new(BlowUp::none());
        assert_eq!(strict_transform(&q, 0, &none), DivisorClass::hyperplane(none.clone()));
    }

    #[test]
    fn canonical_classes() {
        let none = Arc::new(BlowUp::none());
        let k = canonical_class(&none);
        assert_eq!(pairing(&k, &k).unwrap(), rat(9));

        let h = dual_hesse();
        let blown = Arc::new(BlowUp::all_r_ge_3(&h));
        let k = canonical_class(&blown);
        assert_eq!(pairing(&k, &k).unwrap(), rat(-3));
        // 3K = -sum L'_i
        let mut sum = DivisorClass::zero(blown.clone());
        for i in 0..9 {
            sum = sum.add(&strict_transform(&h, i, &blown)).unwrap();
        }
        assert_eq!(k.scale(&rat(3)), sum.scale(&rat(-1)));
    }

    #[test]
    fn mismatched_contexts() {
        let h = dual_hesse();
        let a = Arc::new(BlowUp::all_r_ge_3(&h));
        let b = Arc::new(BlowUp::none());
        let x = DivisorClass::hyperplane(a);
        let y = DivisorClass::hyperplane(b);
        assert!(matches!(pairing(&x, &y), Err(Error::MismatchedContext)));
        assert!(x.add(&y).is_err());
    }

    #[test]
    fn display() {
        let h = dual_hesse();
        let blown = Arc::new(BlowUp::from_ids(&h, &[0, 2]).unwrap());
        let mut d = canonical_class(&blown);
        d.h = crate::cyclotomic::ratio(21, 5);
        d.e.insert(0, crate::cyclotomic::ratio(-3, 5));
        assert_eq!(d.to_string(), "21/5H - 3/5E[1] + 1E[3]");
    }
}
