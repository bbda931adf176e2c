//! Symmetries of a cover: arrangement automorphisms preserving the
//! character set, their (anti-)projective realizations, the group
//! `Kl = (realized symmetries) ⋉ G`, and real structures up to conjugacy.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::arrangement::{combinatorial_automorphisms_with, fixed_points_of, Arrangement, LineSymmetry};
use crate::characters::{enumerate_characters, preserves, CharacterSet};
use crate::cover::CoverModel;
use crate::error::{Error, Result};
use crate::homology::Epimorphism;
use crate::linalg::modp;
use crate::par::{self, Execution};
use crate::perm::Permutation;

/// Combinatorial automorphisms whose coordinate action maps `set` onto
/// itself, sorted.
///
/// The test is a plain coordinate permutation: it assumes a lift multiplies
/// the eigenfunctions without a unit twist, for holomorphic and
/// anti-holomorphic symmetries alike.
pub fn character_preserving_symmetries(arr: &Arrangement, set: &CharacterSet) -> Vec<Permutation> {
    character_preserving_symmetries_with(arr, set, Execution::default())
}

pub fn character_preserving_symmetries_with(
    arr: &Arrangement,
    set: &CharacterSet,
    exec: Execution,
) -> Vec<Permutation> {
    let all = combinatorial_automorphisms_with(arr, exec);
    par::filter(exec, &all, |p| preserves(p, set))
}

/// The automorphism `T` of `G = (Z/m)^k` with `T phi(lambda_i) =
/// eps * phi(lambda_{pi(i)})`, where `eps = -1` for anti-holomorphic
/// symmetries (they reverse the orientation of meridians). Returned as a
/// `k x k` matrix acting on column vectors.
pub fn deck_action_of(perm: &Permutation, anti: bool, phi: &Epimorphism) -> Result<Vec<Vec<u32>>> {
    let m = phi.modulus();
    let n = phi.line_count();
    if perm.len() != n {
        return Err(Error::Inconsistent(format!(
            "permutation of {} lines, epimorphism has {n} rows",
            perm.len()
        )));
    }
    let sign = |x: u32| if anti { (m - x) % m } else { x };
    let target = |i: usize| -> Vec<u32> { phi.row(perm.apply(i)).iter().map(|&x| sign(x)).collect() };

    // Rows forming a basis of (Z/m)^k.
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..n {
        let mut trial: Vec<Vec<u32>> = basis.iter().map(|&b| phi.row(b).to_vec()).collect();
        trial.push(phi.row(i).to_vec());
        if modp::rank(&trial, m) == trial.len() {
            basis.push(i);
        }
        if basis.len() == phi.rank() {
            break;
        }
    }
    let b: Vec<Vec<u32>> = basis.iter().map(|&i| phi.row(i).to_vec()).collect();
    let b_inv = modp::inverse(&b, m).ok_or_else(|| Error::InvalidEpimorphism("rows do not span".into()))?;
    let tgt: Vec<Vec<u32>> = basis.iter().map(|&i| target(i)).collect();
    // R T^t = target  =>  T^t = B^{-1} target
    let t_transposed = modp::mat_mul(&b_inv, &tgt, m);
    let t = transpose(&t_transposed);
    if (0..n).any(|i| modp::mat_vec(&t, phi.row(i), m) != target(i)) {
        return Err(Error::NotCharacterPreserving);
    }
    Ok(t)
}

fn transpose(a: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// A realized symmetry with its induced automorphism of the deck group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExternalSymmetry {
    pub symmetry: LineSymmetry,
    pub deck_action: Vec<Vec<u32>>,
}

/// An element `(s, gamma)` of `Kl`, with `s` an index into
/// [`KleinModel::symmetries`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KleinElement {
    pub symmetry: usize,
    pub gamma: Vec<u32>,
}

/// `Kl(X)` as the split extension of the realized character-preserving
/// symmetries by the deck group, with
/// `(s, g)(t, h) = (st, g + T_s h)`.
#[derive(Clone, Debug)]
pub struct KleinModel {
    cover: CoverModel,
    /// Sorted by `(perm, anti)`; index 0 is the identity.
    symmetries: Vec<ExternalSymmetry>,
    /// Character-preserving candidates with no (anti-)projective realization.
    combinatorial_only: Vec<(Permutation, bool)>,
    index: BTreeMap<(Permutation, bool), usize>,
}

pub fn klein_model(cover: &CoverModel) -> Result<KleinModel> {
    klein_model_with(cover, Execution::default())
}

pub fn klein_model_with(cover: &CoverModel, exec: Execution) -> Result<KleinModel> {
    if !cover.is_smooth() {
        return Err(Error::NotSmooth(
            "symmetries are only classified for smooth covers".into(),
        ));
    }
    let arr = cover.arrangement();
    let set = enumerate_characters(cover.phi())?;
    let perms = character_preserving_symmetries_with(arr, &set, exec);
    let candidates: Vec<(Permutation, bool)> = perms
        .iter()
        .flat_map(|p| [(p.clone(), false), (p.clone(), true)])
        .collect();
    let realized = par::map(exec, &candidates, |(p, anti)| {
        LineSymmetry::realized(arr, p.clone(), *anti)
    });

    let mut symmetries = Vec::new();
    let mut combinatorial_only = Vec::new();
    for ((perm, anti), sym) in candidates.into_iter().zip(realized) {
        if sym.matrix.is_none() {
            combinatorial_only.push((perm, anti));
            continue;
        }
        let deck_action = deck_action_of(&perm, anti, cover.phi())?;
        symmetries.push(ExternalSymmetry {
            symmetry: sym,
            deck_action,
        });
    }
    symmetries.sort_by(|a, b| (&a.symmetry.perm, a.symmetry.anti).cmp(&(&b.symmetry.perm, b.symmetry.anti)));
    let index = symmetries
        .iter()
        .enumerate()
        .map(|(i, s)| ((s.symmetry.perm.clone(), s.symmetry.anti), i))
        .collect();
    let model = KleinModel {
        cover: cover.clone(),
        symmetries,
        combinatorial_only,
        index,
    };
    model.check_closed()?;
    Ok(model)
}

impl KleinModel {
    pub fn cover(&self) -> &CoverModel {
        &self.cover
    }

    pub fn symmetries(&self) -> &[ExternalSymmetry] {
        &self.symmetries
    }

    pub fn combinatorial_only(&self) -> &[(Permutation, bool)] {
        &self.combinatorial_only
    }

    pub fn modulus(&self) -> u32 {
        self.cover.phi().modulus()
    }

    pub fn order(&self) -> u64 {
        self.cover.deck().order() * self.symmetries.len() as u64
    }

    pub fn has_anti(&self) -> bool {
        self.symmetries.iter().any(|s| s.symmetry.anti)
    }

    fn symmetry_index(&self, perm: &Permutation, anti: bool) -> Option<usize> {
        self.index.get(&(perm.clone(), anti)).copied()
    }

    fn compose_symmetries(&self, s: usize, t: usize) -> usize {
        let (a, b) = (&self.symmetries[s].symmetry, &self.symmetries[t].symmetry);
        self.symmetry_index(&a.perm.compose(&b.perm), a.anti ^ b.anti)
            .expect("realized symmetries are closed under composition")
    }

    fn check_closed(&self) -> Result<()> {
        let m = self.modulus();
        for s in 0..self.symmetries.len() {
            for t in 0..self.symmetries.len() {
                let (a, b) = (&self.symmetries[s].symmetry, &self.symmetries[t].symmetry);
                let Some(st) = self.symmetry_index(&a.perm.compose(&b.perm), a.anti ^ b.anti) else {
                    return Err(Error::Inconsistent(format!(
                        "realized symmetries {} and {} do not compose to a realized symmetry",
                        a.perm, b.perm
                    )));
                };
                let product = modp::mat_mul(&self.symmetries[s].deck_action, &self.symmetries[t].deck_action, m);
                if product != self.symmetries[st].deck_action {
                    return Err(Error::Inconsistent("deck action is not multiplicative".into()));
                }
            }
        }
        Ok(())
    }

    fn add(&self, g: &[u32], h: &[u32]) -> Vec<u32> {
        let m = self.modulus();
        g.iter().zip(h).map(|(x, y)| (x + y) % m).collect()
    }

    fn negate(&self, g: &[u32]) -> Vec<u32> {
        let m = self.modulus();
        g.iter().map(|x| (m - x) % m).collect()
    }

    fn act(&self, s: usize, g: &[u32]) -> Vec<u32> {
        modp::mat_vec(&self.symmetries[s].deck_action, g, self.modulus())
    }

    pub fn identity(&self) -> KleinElement {
        KleinElement {
            symmetry: 0,
            gamma: vec![0; self.cover.phi().rank()],
        }
    }

    pub fn multiply(&self, x: &KleinElement, y: &KleinElement) -> KleinElement {
        KleinElement {
            symmetry: self.compose_symmetries(x.symmetry, y.symmetry),
            gamma: self.add(&x.gamma, &self.act(x.symmetry, &y.gamma)),
        }
    }

    pub fn inverse(&self, x: &KleinElement) -> KleinElement {
        let s = &self.symmetries[x.symmetry].symmetry;
        let inv = self
            .symmetry_index(&s.perm.inverse(), s.anti)
            .expect("closed under inverses");
        KleinElement {
            symmetry: inv,
            gamma: self.negate(&self.act(inv, &x.gamma)),
        }
    }

    pub fn is_anti(&self, x: &KleinElement) -> bool {
        self.symmetries[x.symmetry].symmetry.anti
    }

    pub fn symmetry_of(&self, x: &KleinElement) -> &LineSymmetry {
        &self.symmetries[x.symmetry].symmetry
    }

    /// All elements, sorted.
    pub fn elements(&self) -> Vec<KleinElement> {
        let deck = self.cover.deck();
        let m = deck.m;
        let mut gammas = vec![Vec::new()];
        for _ in 0..deck.k {
            gammas = gammas
                .into_iter()
                .flat_map(|g: Vec<u32>| {
                    (0..m).map(move |c| {
                        let mut h = g.clone();
                        h.push(c);
                        h
                    })
                })
                .collect();
        }
        (0..self.symmetries.len())
            .flat_map(|s| {
                gammas.iter().map(move |g| KleinElement {
                    symmetry: s,
                    gamma: g.clone(),
                })
            })
            .collect()
    }

    /// Anti-holomorphic involutions: `s^2 = id` on lines and
    /// `gamma + T_s gamma = 0`.
    pub fn anti_involutions(&self) -> Vec<KleinElement> {
        let id = self.identity();
        self.elements()
            .into_iter()
            .filter(|x| self.is_anti(x) && self.multiply(x, x) == id)
            .collect()
    }

    pub fn conjugate(&self, h: &KleinElement, x: &KleinElement) -> KleinElement {
        self.multiply(&self.multiply(h, x), &self.inverse(h))
    }

    fn conjugacy_class(&self, x: &KleinElement, all: &[KleinElement], exec: Execution) -> BTreeSet<KleinElement> {
        par::map(exec, all, |h| self.conjugate(h, x)).into_iter().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealTopology {
    pub euler: i64,
    pub z2_betti: [u64; 3],
}

impl RealTopology {
    pub fn total_betti(&self) -> u64 {
        self.z2_betti.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    /// Lines mapped to themselves (1-based): their curves `C_i` are real.
    pub real_lines: Vec<usize>,
    /// Labels of blown-up points fixed by the anti-projectivity.
    pub real_blown_centers: Vec<String>,
    pub topology: Option<RealTopology>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealStructureClass {
    pub representative: KleinElement,
    pub permutation: Permutation,
    pub size: usize,
    pub fingerprint: Fingerprint,
}

pub fn classify_real_structures(model: &KleinModel) -> Result<Vec<RealStructureClass>> {
    classify_real_structures_with(model, Execution::default())
}

pub fn classify_real_structures_with(model: &KleinModel, exec: Execution) -> Result<Vec<RealStructureClass>> {
    let involutions = model.anti_involutions();
    let all = model.elements();
    let mut assigned: BTreeSet<KleinElement> = BTreeSet::new();
    let mut classes = Vec::new();
    for x in &involutions {
        if assigned.contains(x) {
            continue;
        }
        let class = model.conjugacy_class(x, &all, exec);
        let representative = class.iter().next().expect("class contains x").clone();
        let size = class.len();
        assigned.extend(class);
        let fingerprint = fingerprint(model, &representative)?;
        classes.push(RealStructureClass {
            permutation: model.symmetry_of(&representative).perm.clone(),
            representative,
            size,
            fingerprint,
        });
    }
    Ok(classes)
}

fn real_blown_centers(model: &KleinModel, x: &KleinElement) -> Result<Vec<usize>> {
    let cover = model.cover();
    let fixed = fixed_points_of(cover.arrangement(), model.symmetry_of(x))?;
    Ok(fixed.into_iter().filter(|&p| cover.blown().contains(p)).collect())
}

fn fingerprint(model: &KleinModel, x: &KleinElement) -> Result<Fingerprint> {
    let arr = model.cover().arrangement();
    let sym = model.symmetry_of(x);
    let centers = real_blown_centers(model, x)?;
    let topology = match real_part_topology(model, x) {
        Ok(t) => Some(t),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(Fingerprint {
        real_lines: sym.perm.fixed_points().into_iter().map(|i| i + 1).collect(),
        real_blown_centers: centers.iter().map(|&p| arr.point(p).label()).collect(),
        topology,
    })
}

/// For odd `m` the real locus of `X` maps homeomorphically onto the real
/// locus of the blown-up plane, which is `RP^2` blown up at the real
/// centers.
pub fn real_part_topology(model: &KleinModel, x: &KleinElement) -> Result<RealTopology> {
    if model.modulus().is_multiple_of(2) {
        return Err(Error::Unsupported("real part topology needs odd m".into()));
    }
    if !model.is_anti(x) {
        return Err(Error::Inconsistent("not an anti-holomorphic element".into()));
    }
    let centers = real_blown_centers(model, x)?.len() as u64;
    Ok(RealTopology {
        euler: 1 - centers as i64,
        z2_betti: [1, 1 + centers, 1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{combinatorial_automorphisms, complete_quadrilateral, dual_hesse, realize_symmetry};
    use crate::builtin;
    use crate::linalg;

    fn model(name: &str) -> KleinModel {
        let e = builtin::example(name).unwrap();
        klein_model(&CoverModel::with_default_blowup(e.arrangement, e.phi).unwrap()).unwrap()
    }

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn preserving_symmetries_hesse() {
        let h = dual_hesse();
        let a1 = enumerate_characters(&builtin::phi1()).unwrap();
        assert_eq!(character_preserving_symmetries(&h, &a1), vec![Permutation::identity(9)]);
        let a2 = enumerate_characters(&builtin::phi2()).unwrap();
        let p2 = character_preserving_symmetries(&h, &a2);
        assert_eq!(p2, vec![Permutation::identity(9), cyc(9, "(2 3)(4 6)(7 8)")]);
    }

    #[test]
    fn preserving_symmetries_quadrilateral() {
        let q = complete_quadrilateral();
        let a3 = enumerate_characters(&builtin::phi3()).unwrap();
        let p3 = character_preserving_symmetries(&q, &a3);
        assert!(p3.contains(&Permutation::identity(6)));
        assert!(p3.contains(&cyc(6, "(1 2)(4 5)")));
        // The opposite-side swap preserves A as a coordinate action but is
        // not an automorphism of this incidence structure.
        let swap = cyc(6, "(1 4)(2 5)(3 6)");
        assert!(preserves(&swap, &a3));
        assert!(!q.preserves_incidence(&swap));
        assert!(!p3.contains(&swap));
        assert_eq!(p3.len(), 2);
    }

    #[test]
    fn deck_actions() {
        let phi2 = builtin::phi2();
        let s = cyc(9, "(2 3)(4 6)(7 8)");
        assert_eq!(deck_action_of(&s, true, &phi2).unwrap(), vec![vec![4, 0], vec![0, 4]]);
        assert_eq!(
            deck_action_of(&Permutation::identity(9), false, &phi2).unwrap(),
            vec![vec![1, 0], vec![0, 1]]
        );
        let swap = cyc(6, "(1 4)(2 5)(3 6)");
        assert_eq!(
            deck_action_of(&swap, false, &builtin::phi3()).unwrap(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert!(matches!(
            deck_action_of(&s, false, &builtin::phi1()),
            Err(Error::NotCharacterPreserving)
        ));
    }

    #[test]
    fn deck_action_is_multiplicative() {
        let phi = builtin::phi3();
        let a3 = enumerate_characters(&phi).unwrap();
        let auts = character_preserving_symmetries(&complete_quadrilateral(), &a3);
        for p in &auts {
            for q in &auts {
                for (ap, aq) in [(false, false), (true, false), (true, true)] {
                    let tp = deck_action_of(p, ap, &phi).unwrap();
                    let tq = deck_action_of(q, aq, &phi).unwrap();
                    let tpq = deck_action_of(&p.compose(q), ap ^ aq, &phi).unwrap();
                    assert_eq!(modp::mat_mul(&tp, &tq, 5), tpq);
                }
            }
        }
    }

    #[test]
    fn example1_has_no_anti_elements() {
        let k = model("example1");
        assert_eq!(k.order(), 25);
        assert!(!k.has_anti());
        assert!(classify_real_structures(&k).unwrap().is_empty());
    }

    #[test]
    fn example2_single_real_structure() {
        let k = model("example2");
        assert_eq!(k.order(), 50);
        assert!(k.has_anti());
        let anti = k.symmetries().iter().find(|s| s.symmetry.anti).unwrap();
        assert_eq!(anti.symmetry.perm, cyc(9, "(2 3)(4 6)(7 8)"));
        assert_eq!(anti.symmetry.matrix.as_ref().unwrap(), &linalg::identity());
        assert_eq!(anti.deck_action, vec![vec![4, 0], vec![0, 4]]);
        assert_eq!(
            k.combinatorial_only(),
            &[(Permutation::identity(9), true), (cyc(9, "(2 3)(4 6)(7 8)"), false)]
        );

        assert_eq!(k.anti_involutions().len(), 25);
        let classes = classify_real_structures(&k).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].size, 25);
        assert_eq!(classes[0].fingerprint.real_blown_centers.len(), 4);
        let t = classes[0].fingerprint.topology.clone().unwrap();
        assert_eq!((t.euler, t.z2_betti, t.total_betti()), (-3, [1, 5, 1], 7));
    }

    #[test]
    fn example3_two_real_structures() {
        let k = model("example3");
        assert_eq!(k.order(), 100);
        let classes = classify_real_structures(&k).unwrap();
        assert_eq!(classes.len(), 2);
        let all_real = &classes[0];
        assert!(all_real.permutation.is_identity());
        assert_eq!(all_real.fingerprint.real_lines, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(all_real.fingerprint.real_blown_centers.len(), 4);
        assert_eq!(all_real.fingerprint.topology.as_ref().unwrap().total_betti(), 7);
        let partial = &classes[1];
        assert_eq!(partial.permutation, cyc(6, "(1 2)(4 5)"));
        assert_eq!(partial.fingerprint.real_lines, vec![3, 6]);
        assert_eq!(partial.fingerprint.real_blown_centers.len(), 2);
        let t = partial.fingerprint.topology.clone().unwrap();
        assert_eq!((t.euler, t.z2_betti), (-1, [1, 3, 1]));
    }

    #[test]
    fn group_axioms_and_involutions() {
        let k = model("example3");
        let all = k.elements();
        assert_eq!(all.len() as u64, k.order());
        let id = k.identity();
        for x in all.iter().step_by(7) {
            assert_eq!(k.multiply(x, &k.inverse(x)), id);
            assert_eq!(k.multiply(&k.inverse(x), x), id);
            for y in all.iter().step_by(11) {
                for z in all.iter().step_by(13) {
                    assert_eq!(k.multiply(&k.multiply(x, y), z), k.multiply(x, &k.multiply(y, z)));
                }
            }
        }
        for c in classify_real_structures(&k).unwrap() {
            assert_eq!(k.multiply(&c.representative, &c.representative), id);
        }
    }

    #[test]
    fn classes_partition_involutions() {
        for name in ["example2", "example3"] {
            let k = model(name);
            let classes = classify_real_structures(&k).unwrap();
            let total: usize = classes.iter().map(|c| c.size).sum();
            assert_eq!(total, k.anti_involutions().len());
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let e = builtin::example("example3").unwrap();
        let cover = CoverModel::with_default_blowup(e.arrangement, e.phi).unwrap();
        let seq = klein_model_with(&cover, Execution::Sequential).unwrap();
        let par = klein_model_with(&cover, Execution::Parallel).unwrap();
        assert_eq!(seq.symmetries(), par.symmetries());
        assert_eq!(
            classify_real_structures_with(&seq, Execution::Sequential).unwrap(),
            classify_real_structures_with(&par, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn realizability_composes() {
        let q = complete_quadrilateral();
        let auts = combinatorial_automorphisms(&q);
        for p in auts.iter().take(6) {
            for r in auts.iter().take(6) {
                for (a, b) in [(false, true), (true, true)] {
                    if realize_symmetry(&q, p, a).is_some() && realize_symmetry(&q, r, b).is_some() {
                        assert!(realize_symmetry(&q, &p.compose(r), a ^ b).is_some());
                    }
                }
            }
        }
    }
}
