//! Projective line arrangements over `Q(z)`.
//!
//! An [`Arrangement`] owns its lines together with the exact incidence
//! structure: every pairwise intersection point, the lines through it, and
//! the table `t_r` of `r`-fold points. Points and lines are 0-based
//! internally; reports print them 1-based.

use std::collections::{BTreeMap, BTreeSet};

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Vec3};
use crate::par::{self, Execution};
use crate::perm::Permutation;

/// Scales a nonzero vector so that its first nonzero coordinate is 1.
pub fn canonical_projective(v: &Vec3) -> Option<Vec3> {
    let pivot = v.iter().find(|x| !x.is_zero())?;
    let inv = pivot.inverse()?;
    Some(linalg::scale_vec(&inv, v))
}

/// A line `c0*x1 + c1*x2 + c2*x3 = 0`, stored in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    coeffs: Vec3,
}

impl Line {
    pub fn new(coeffs: Vec3) -> Result<Self> {
        let coeffs =
            canonical_projective(&coeffs).ok_or_else(|| Error::InvalidLine("all coefficients are zero".into()))?;
        Ok(Line { coeffs })
    }

    pub fn from_ints(c: [i64; 3]) -> Result<Self> {
        Line::new(c.map(CycNumber::from_int))
    }

    pub fn coeffs(&self) -> &Vec3 {
        &self.coeffs
    }

    pub fn conjugate(&self) -> Line {
        Line::new(linalg::conj_vec(&self.coeffs)).expect("conjugate of a nonzero vector")
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(CycNumber::is_real)
    }

    pub fn contains(&self, point: &Vec3) -> bool {
        linalg::dot(&self.coeffs, point).is_zero()
    }
}

/// A point where at least two lines of the arrangement meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidencePoint {
    pub coords: Vec3,
    /// Sorted indices of the lines through the point.
    pub incident: Vec<usize>,
}

impl IncidencePoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }

    pub fn contains_line(&self, i: usize) -> bool {
        self.incident.binary_search(&i).is_ok()
    }

    /// 1-based label such as `p1,2,3`.
    pub fn label(&self) -> String {
        let ids: Vec<String> = self.incident.iter().map(|i| (i + 1).to_string()).collect();
        format!("p{}", ids.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    lines: Vec<Line>,
    points: Vec<IncidencePoint>,
    /// `pair_point[i][j]` is the id of the point `L_i ∩ L_j` (`i != j`).
    pair_point: Vec<Vec<usize>>,
    multiplicities: BTreeMap<usize, usize>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.lines == other.lines
    }
}

impl Eq for Arrangement {}

impl Arrangement {
    /// Computes all pairwise intersections exactly and merges them into
    /// incidence points.
    pub fn new(lines: Vec<Line>) -> Result<Self> {
        let n = lines.len();
        if n < 2 {
            return Err(Error::TooFewLines(n));
        }
        for i in 0..n {
            for j in i + 1..n {
                if lines[i] == lines[j] {
                    return Err(Error::DuplicateLine(i, j));
                }
            }
        }
        let mut by_coords: BTreeMap<Vec3, BTreeSet<usize>> = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                let p = linalg::cross(lines[i].coeffs(), lines[j].coeffs());
                let p = canonical_projective(&p).expect("distinct lines meet in a point");
                let entry = by_coords.entry(p).or_default();
                entry.insert(i);
                entry.insert(j);
            }
        }
        let mut points: Vec<IncidencePoint> = by_coords
            .into_iter()
            .map(|(coords, inc)| IncidencePoint {
                coords,
                incident: inc.into_iter().collect(),
            })
            .collect();
        points.sort_by(|a, b| a.incident.cmp(&b.incident));

        let mut pair_point = vec![vec![usize::MAX; n]; n];
        let mut multiplicities = BTreeMap::new();
        for (id, p) in points.iter().enumerate() {
            *multiplicities.entry(p.multiplicity()).or_insert(0) += 1;
            for &a in &p.incident {
                for &b in &p.incident {
                    if a != b {
                        debug_assert_eq!(pair_point[a][b], usize::MAX);
                        pair_point[a][b] = id;
                    }
                }
            }
        }
        let arr = Arrangement {
            lines,
            points,
            pair_point,
            multiplicities,
        };
        debug_assert_eq!(arr.pair_count_from_table(), n * (n - 1) / 2);
        Ok(arr)
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn points(&self) -> &[IncidencePoint] {
        &self.points
    }

    pub fn point(&self, id: usize) -> &IncidencePoint {
        &self.points[id]
    }

    /// Number of `r`-fold points.
    pub fn t(&self, r: usize) -> usize {
        self.multiplicities.get(&r).copied().unwrap_or(0)
    }

    /// The table `r -> t_r` for the multiplicities that occur.
    pub fn multiplicity_table(&self) -> &BTreeMap<usize, usize> {
        &self.multiplicities
    }

    /// `sum_r t_r * C(r, 2)`; equals `C(n, 2)` for every arrangement.
    pub fn pair_count_from_table(&self) -> usize {
        self.multiplicities.iter().map(|(r, t)| t * r * (r - 1) / 2).sum()
    }

    pub fn point_of_pair(&self, i: usize, j: usize) -> usize {
        self.pair_point[i][j]
    }

    pub fn points_on_line(&self, i: usize) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&p| self.points[p].contains_line(i))
            .collect()
    }

    /// Sorted multiplicities of the points on line `i`.
    pub fn line_profile(&self, i: usize) -> Vec<usize> {
        let mut prof: Vec<usize> = self
            .points_on_line(i)
            .iter()
            .map(|&p| self.points[p].multiplicity())
            .collect();
        prof.sort_unstable();
        prof
    }

    /// Id of the point whose incident set is exactly `lines` (sorted).
    pub fn find_point(&self, lines: &[usize]) -> Option<usize> {
        self.points.binary_search_by(|p| p.incident.as_slice().cmp(lines)).ok()
    }

    pub fn points_with_multiplicity_at_least(&self, r: usize) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&p| self.points[p].multiplicity() >= r)
            .collect()
    }

    fn concurrent(&self, a: usize, b: usize, c: usize) -> bool {
        self.pair_point[a][b] == self.pair_point[a][c]
    }

    /// Image of a point under a line permutation, if the permuted incident
    /// set is again a point of the arrangement.
    pub fn point_image(&self, perm: &Permutation, point: usize) -> Option<usize> {
        let mut img: Vec<usize> = self.points[point].incident.iter().map(|&i| perm.apply(i)).collect();
        img.sort_unstable();
        self.find_point(&img)
    }

    /// Whether the permutation maps the incidence relation onto itself.
    pub fn preserves_incidence(&self, perm: &Permutation) -> bool {
        perm.len() == self.line_count() && (0..self.points.len()).all(|p| self.point_image(perm, p).is_some())
    }

    /// The permutation induced on lines by complex conjugation of the
    /// coefficients, when conjugation maps the arrangement to itself.
    pub fn conjugation_permutation(&self) -> Option<Permutation> {
        let images: Option<Vec<usize>> = self
            .lines
            .iter()
            .map(|l| {
                let c = l.conjugate();
                self.lines.iter().position(|m| *m == c)
            })
            .collect();
        Permutation::from_images(images?).ok()
    }

    /// Indices of lines with all coefficients real.
    pub fn real_lines(&self) -> Vec<usize> {
        (0..self.line_count()).filter(|&i| self.lines[i].is_real()).collect()
    }
}

fn cyc(a: i64, b: i64) -> CycNumber {
    CycNumber::new(crate::cyclotomic::rat(a), crate::cyclotomic::rat(b))
}

/// The nine lines dual to the inflection points of `x1^3 + x2^3 + x3^3 = 0`,
/// with `mu = z`:
///
/// ```text
/// L1: x1 - x3       L2: x1 - mu^2 x3   L3: x1 + mu x3
/// L4: x2 - mu^2 x3  L5: x2 - x3        L6: x2 + mu x3
/// L7: x1 + mu x2    L8: x1 - mu^2 x2   L9: x1 - x2
/// ```
pub fn dual_hesse() -> Arrangement {
    let one = cyc(1, 0);
    let zero = cyc(0, 0);
    let minus_one = cyc(-1, 0);
    let mu = cyc(0, 1);
    // -mu^2 = -(mu - 1) = 1 - mu
    let minus_mu2 = cyc(1, -1);
    let rows: [Vec3; 9] = [
        [one.clone(), zero.clone(), minus_one.clone()],
        [one.clone(), zero.clone(), minus_mu2.clone()],
        [one.clone(), zero.clone(), mu.clone()],
        [zero.clone(), one.clone(), minus_mu2.clone()],
        [zero.clone(), one.clone(), minus_one.clone()],
        [zero.clone(), one.clone(), mu.clone()],
        [one.clone(), mu.clone(), zero.clone()],
        [one.clone(), minus_mu2, zero.clone()],
        [one, minus_one, zero],
    ];
    let lines = rows.into_iter().map(|r| Line::new(r).expect("nonzero")).collect();
    Arrangement::new(lines).expect("dual Hesse lines are distinct")
}

/// The complete quadrilateral on the base points `a=[1:0:0]`, `b=[0:1:0]`,
/// `c=[0:0:1]`, `d=[1:1:1]`, labelled so that the double points are
/// `L1∩L4`, `L2∩L5`, `L3∩L6`:
///
/// ```text
/// L1 = ad   L2 = ab   L3 = bd   L4 = bc   L5 = cd   L6 = ac
/// ```
///
/// The triple points are then `p1,2,6` (a), `p2,3,4` (b), `p4,5,6` (c) and
/// `p1,3,5` (d).
pub fn complete_quadrilateral() -> Arrangement {
    let lines = [
        [0, 1, -1], // x2 = x3
        [0, 0, 1],  // x3 = 0
        [1, 0, -1], // x1 = x3
        [1, 0, 0],  // x1 = 0
        [1, -1, 0], // x1 = x2
        [0, 1, 0],  // x2 = 0
    ]
    .into_iter()
    .map(|c| Line::from_ints(c).expect("nonzero"))
    .collect();
    Arrangement::new(lines).expect("quadrilateral lines are distinct")
}

/// All line permutations preserving the incidence relation, in
/// lexicographic order of their image tables.
pub fn combinatorial_automorphisms(arr: &Arrangement) -> Vec<Permutation> {
    combinatorial_automorphisms_with(arr, Execution::default())
}

pub fn combinatorial_automorphisms_with(arr: &Arrangement, exec: Execution) -> Vec<Permutation> {
    let n = arr.line_count();
    let profiles: Vec<Vec<usize>> = (0..n).map(|i| arr.line_profile(i)).collect();
    let first: Vec<usize> = (0..n).filter(|&x| profiles[x] == profiles[0]).collect();
    let branches = par::map(exec, &first, |&x| {
        let mut out = Vec::new();
        let mut images = vec![usize::MAX; n];
        let mut used = vec![false; n];
        images[0] = x;
        used[x] = true;
        extend_automorphism(arr, &profiles, 1, &mut images, &mut used, &mut out);
        out
    });
    branches.into_iter().flatten().collect()
}

fn extend_automorphism(
    arr: &Arrangement,
    profiles: &[Vec<usize>],
    i: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Permutation>,
) {
    let n = arr.line_count();
    if i == n {
        let perm = Permutation::from_images(images.clone()).expect("bijective by construction");
        debug_assert!(arr.preserves_incidence(&perm));
        out.push(perm);
        return;
    }
    for x in 0..n {
        if used[x] || profiles[x] != profiles[i] {
            continue;
        }
        let consistent =
            (0..i).all(|a| (a + 1..i).all(|b| arr.concurrent(a, b, i) == arr.concurrent(images[a], images[b], x)));
        if !consistent {
            continue;
        }
        images[i] = x;
        used[x] = true;
        extend_automorphism(arr, profiles, i + 1, images, used, out);
        used[x] = false;
        images[i] = usize::MAX;
    }
}

/// A line permutation, optionally anti-holomorphic, with an optional
/// realizing matrix.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LineSymmetry {
    pub perm: Permutation,
    pub anti: bool,
    pub matrix: Option<Mat3>,
}

impl LineSymmetry {
    pub fn realized(arr: &Arrangement, perm: Permutation, anti: bool) -> Self {
        let matrix = realize_symmetry(arr, &perm, anti);
        LineSymmetry { perm, anti, matrix }
    }

    pub fn identity(arr: &Arrangement) -> Self {
        LineSymmetry::realized(arr, Permutation::identity(arr.line_count()), false)
    }
}

fn source_lines(arr: &Arrangement, anti: bool) -> Vec<Vec3> {
    arr.lines()
        .iter()
        .map(|l| {
            if anti {
                linalg::conj_vec(l.coeffs())
            } else {
                l.coeffs().clone()
            }
        })
        .collect()
}

/// Whether `M * src_i ∝ dst_i` for every `i`.
fn maps_all(m: &Mat3, src: &[Vec3], dst: &[Vec3]) -> bool {
    src.iter()
        .zip(dst)
        .all(|(u, v)| linalg::proportional(&linalg::mat_vec(m, u), v))
}

/// First quadruple of vectors no three of which are linearly dependent.
fn find_frame(vs: &[Vec3]) -> Option<[usize; 4]> {
    let n = vs.len();
    let indep = |i: usize, j: usize, k: usize| !linalg::det(&[vs[i].clone(), vs[j].clone(), vs[k].clone()]).is_zero();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !indep(i, j, k) {
                    continue;
                }
                for l in k + 1..n {
                    if indep(i, j, l) && indep(i, k, l) && indep(j, k, l) {
                        return Some([i, j, k, l]);
                    }
                }
            }
        }
    }
    None
}

/// The projectivity sending a frame `u` to a frame `v` (as lines, up to
/// scale): `M = V diag(beta/alpha) U^{-1}` where `u4 = U alpha`, `v4 = V beta`.
fn frame_map(u: [&Vec3; 4], v: [&Vec3; 4]) -> Option<Mat3> {
    let um = linalg::from_columns(u[0], u[1], u[2]);
    let vm = linalg::from_columns(v[0], v[1], v[2]);
    let u_inv = linalg::inverse(&um)?;
    let v_inv = linalg::inverse(&vm)?;
    let alpha = linalg::mat_vec(&u_inv, u[3]);
    let beta = linalg::mat_vec(&v_inv, v[3]);
    let mut diag = linalg::zero_mat();
    for i in 0..3 {
        if alpha[i].is_zero() || beta[i].is_zero() {
            return None;
        }
        diag[i][i] = &beta[i] / &alpha[i];
    }
    Some(linalg::mat_mul(&linalg::mat_mul(&vm, &diag), &u_inv))
}

/// Finds `M` with `M * sigma(line_i) ∝ line_{perm(i)}` for all `i`, where
/// `sigma` conjugates coefficients when `anti` is set. The matrix is pinned
/// on a frame of four lines in general position and then checked on every
/// line; arrangements without such a frame fall back to solving the linear
/// system directly.
pub fn realize_symmetry(arr: &Arrangement, perm: &Permutation, anti: bool) -> Option<Mat3> {
    if perm.len() != arr.line_count() {
        return None;
    }
    let src = source_lines(arr, anti);
    let dst: Vec<Vec3> = (0..arr.line_count())
        .map(|i| arr.lines()[perm.apply(i)].coeffs().clone())
        .collect();
    let m = match find_frame(&src) {
        Some([i, j, k, l]) => frame_map(
            [&src[i], &src[j], &src[k], &src[l]],
            [&dst[i], &dst[j], &dst[k], &dst[l]],
        )?,
        None => realize_by_nullspace(&src, &dst)?,
    };
    if linalg::det(&m).is_zero() || !maps_all(&m, &src, &dst) {
        return None;
    }
    Some(linalg::normalize_mat(&m))
}

/// Solves the linear conditions `(M u_i) x v_i = 0` on the nine entries of
/// `M` and searches the solution space for an invertible member.
pub fn realize_by_nullspace(src: &[Vec3], dst: &[Vec3]) -> Option<Mat3> {
    let mut rows: Vec<Vec<CycNumber>> = Vec::new();
    for (u, v) in src.iter().zip(dst) {
        // (Mu)_r = sum_c m[3r + c] u_c ; cross-product component equations.
        for (r, s) in [(1usize, 2usize), (2, 0), (0, 1)] {
            let mut row = vec![CycNumber::zero(); 9];
            for c in 0..3 {
                row[3 * r + c] = &row[3 * r + c] + &(&u[c] * &v[s]);
                row[3 * s + c] = &row[3 * s + c] - &(&u[c] * &v[r]);
            }
            rows.push(row);
        }
    }
    let basis = linalg::nullspace(&rows, 9);
    if basis.is_empty() {
        return None;
    }
    let to_mat = |x: &[CycNumber]| -> Mat3 {
        let mut m = linalg::zero_mat();
        for r in 0..3 {
            for c in 0..3 {
                m[r][c] = x[3 * r + c].clone();
            }
        }
        m
    };
    // Deterministic small-coefficient combinations; a generic member of the
    // solution space is invertible whenever any member is.
    let dim = basis.len();
    let max_coeff = 3i64;
    let mut coeffs = vec![0i64; dim];
    loop {
        let mut carry = true;
        for c in coeffs.iter_mut() {
            if !carry {
                break;
            }
            *c += 1;
            carry = *c > max_coeff;
            if carry {
                *c = 0;
            }
        }
        if carry {
            return None;
        }
        let mut x = vec![CycNumber::zero(); 9];
        for (b, &c) in basis.iter().zip(&coeffs) {
            if c == 0 {
                continue;
            }
            let cc = CycNumber::from_int(c);
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi = &*xi + &(&cc * bi);
            }
        }
        let m = to_mat(&x);
        if !linalg::det(&m).is_zero() && maps_all(&m, src, dst) {
            return Some(m);
        }
    }
}

/// Point action of a realized symmetry: `x -> M^{-T} sigma(x)`, computed
/// with the cofactor matrix (which is proportional to `M^{-T}`).
pub fn point_map(matrix: &Mat3, anti: bool, x: &Vec3) -> Vec3 {
    let cof = linalg::transpose(&linalg::adjugate(matrix));
    let sx = if anti { linalg::conj_vec(x) } else { x.clone() };
    linalg::mat_vec(&cof, &sx)
}

/// Ids of the incidence points fixed by the realized (anti-)projectivity.
pub fn fixed_points_of(arr: &Arrangement, sym: &LineSymmetry) -> Result<Vec<usize>> {
    let m = sym.matrix.as_ref().ok_or(Error::UnrealizedSymmetry)?;
    Ok((0..arr.points().len())
        .filter(|&p| {
            let x = &arr.point(p).coords;
            linalg::proportional(&point_map(m, sym.anti, x), x)
        })
        .collect())
}
