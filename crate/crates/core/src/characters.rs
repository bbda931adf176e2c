//! The character set `A_phi`: the exponent vectors `a` for which `z^a`
//! spans an eigenline of the deck group in the function field of the cover.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{validate_epimorphism, Epimorphism};
use crate::perm::Permutation;

/// A zero-sum vector in `{0..m-1}^n`.
pub type Character = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterSet {
    pub m: u32,
    /// Sorted lexicographically, no duplicates.
    pub elements: Vec<Character>,
}

impl CharacterSet {
    pub fn new(m: u32, mut elements: Vec<Character>) -> Self {
        elements.sort();
        elements.dedup();
        CharacterSet { m, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        self.elements.binary_search_by(|x| x.as_slice().cmp(a)).is_ok()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &Character> {
        self.elements.iter().filter(|a| a.iter().any(|&x| x != 0))
    }
}

/// `{ sum_j c_j * column_j(phi) mod m : c in (Z/m)^k }`.
pub fn enumerate_characters(phi: &Epimorphism) -> Result<CharacterSet> {
    let report = validate_epimorphism(phi);
    if !report.is_valid() {
        return Err(Error::InvalidEpimorphism(report.problems.join("; ")));
    }
    let m = phi.modulus();
    let n = phi.line_count();
    let mut elements = vec![vec![0u32; n]];
    for j in 0..phi.rank() {
        let col = phi.column(j);
        let mut next = Vec::with_capacity(elements.len() * m as usize);
        for a in &elements {
            for c in 0..m {
                next.push(a.iter().zip(&col).map(|(x, y)| (x + c * y) % m).collect());
            }
        }
        elements = next;
    }
    Ok(CharacterSet::new(m, elements))
}

/// `r_i = #{j : a_j = i}` for `i` in `0..m`.
pub fn r_profile(a: &[u32], m: u32) -> Vec<usize> {
    let mut r = vec![0; m as usize];
    for &x in a {
        r[x as usize] += 1;
    }
    r
}

/// Characters whose r-profile occurs exactly once in the set.
pub fn unique_profile_elements(set: &CharacterSet) -> Vec<Character> {
    let mut count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for a in &set.elements {
        *count.entry(r_profile(a, set.m)).or_default() += 1;
    }
    set.elements
        .iter()
        .filter(|a| count[&r_profile(a, set.m)] == 1)
        .cloned()
        .collect()
}

/// `a ∘ pi`, i.e. `(a_{pi(1)}, ..., a_{pi(n)})`.
pub fn permute_character(a: &[u32], pi: &Permutation) -> Character {
    (0..a.len()).map(|i| a[pi.apply(i)]).collect()
}

pub fn character_action(pi: &Permutation, set: &CharacterSet) -> CharacterSet {
    CharacterSet::new(set.m, set.elements.iter().map(|a| permute_character(a, pi)).collect())
}

pub fn preserves(pi: &Permutation, set: &CharacterSet) -> bool {
    set.elements.iter().all(|a| set.contains(&permute_character(a, pi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::homology::{galois_kernel, pairing};

    #[test]
    fn sizes_and_designated_elements() {
        let a1 = enumerate_characters(&builtin::phi1()).unwrap();
        assert_eq!(a1.len(), 25);
        assert!(a1.contains(&[1, 1, 1, 3, 3, 0, 0, 0, 1]));
        assert!(a1.contains(&[1, 0, 1, 3, 0, 1, 1, 2, 1]));
        assert!(a1.contains(&[0; 9]));
        let a2 = enumerate_characters(&builtin::phi2()).unwrap();
        assert!(a2.contains(&[0, 1, 1, 0, 1, 0, 1, 1, 0]));
        assert!(a2.contains(&[1, 0, 0, 1, 0, 1, 2, 2, 3]));
        for a in a1.elements.iter().chain(&a2.elements) {
            assert_eq!(a.iter().sum::<u32>() % 5, 0);
        }
    }

    #[test]
    fn profiles() {
        assert_eq!(r_profile(&[1, 1, 1, 3, 3, 0, 0, 0, 1], 5), vec![3, 4, 0, 2, 0]);
        assert_eq!(r_profile(&[1, 0, 1, 3, 0, 1, 1, 2, 1], 5), vec![2, 5, 1, 1, 0]);
        assert_eq!(r_profile(&[0; 9], 5), vec![9, 0, 0, 0, 0]);
    }

    #[test]
    fn unique_profiles_in_a1() {
        let a1 = enumerate_characters(&builtin::phi1()).unwrap();
        let unique = unique_profile_elements(&a1);
        assert!(unique.contains(&vec![1, 1, 1, 3, 3, 0, 0, 0, 1]));
        assert!(unique.contains(&vec![1, 0, 1, 3, 0, 1, 1, 2, 1]));
        let zero = CharacterSet::new(5, vec![vec![0; 9]]);
        assert_eq!(unique_profile_elements(&zero), vec![vec![0; 9]]);
    }

    #[test]
    fn actions() {
        let a2 = enumerate_characters(&builtin::phi2()).unwrap();
        assert_eq!(character_action(&Permutation::identity(9), &a2), a2);
        let s = Permutation::parse_cycles(9, "(2 3)(4 6)(7 8)").unwrap();
        assert_eq!(character_action(&s, &a2), a2);
        let a3 = enumerate_characters(&builtin::phi3()).unwrap();
        let swap = Permutation::parse_cycles(6, "(1 4)(2 5)(3 6)").unwrap();
        assert_eq!(character_action(&swap, &a3), a3);
        assert!(preserves(&swap, &a3));
        let a1 = enumerate_characters(&builtin::phi1()).unwrap();
        assert!(!preserves(&s, &a1));
    }

    #[test]
    fn action_composes() {
        let a1 = enumerate_characters(&builtin::phi1()).unwrap();
        let p = Permutation::parse_cycles(9, "(1 2 3)(4 5)").unwrap();
        let q = Permutation::parse_cycles(9, "(2 7)(3 9 8)").unwrap();
        // (a ∘ p) ∘ q = a ∘ (p ∘ q)
        assert_eq!(
            character_action(&p.compose(&q), &a1),
            character_action(&q, &character_action(&p, &a1))
        );
    }

    #[test]
    fn kernel_annihilates_characters() {
        for phi in [builtin::phi1(), builtin::phi2(), builtin::phi3()] {
            let a = enumerate_characters(&phi).unwrap();
            let g = galois_kernel(&phi).unwrap();
            for gamma in g.kernel_elements() {
                for x in &a.elements {
                    assert_eq!(pairing(&gamma, x, 5), 0);
                }
            }
        }
    }
}
