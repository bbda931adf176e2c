//! Small exact linear algebra: 3x3 matrices over `Q(z)`, Gaussian
//! elimination over `Q(z)`, and elimination over the prime field `Z/p`.

use crate::cyclotomic::CycNumber;

pub type Vec3 = [CycNumber; 3];
pub type Mat3 = [[CycNumber; 3]; 3];

pub fn zero_vec() -> Vec3 {
    [CycNumber::zero(), CycNumber::zero(), CycNumber::zero()]
}

pub fn identity() -> Mat3 {
    let mut m = zero_mat();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = CycNumber::one();
    }
    m
}

pub fn zero_mat() -> Mat3 {
    [zero_vec(), zero_vec(), zero_vec()]
}

pub fn is_zero_vec(v: &Vec3) -> bool {
    v.iter().all(CycNumber::is_zero)
}

pub fn cross(u: &Vec3, v: &Vec3) -> Vec3 {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

pub fn dot(u: &Vec3, v: &Vec3) -> CycNumber {
    let mut acc = CycNumber::zero();
    for i in 0..3 {
        acc = &acc + &(&u[i] * &v[i]);
    }
    acc
}

/// Whether two nonzero vectors span the same line.
pub fn proportional(u: &Vec3, v: &Vec3) -> bool {
    is_zero_vec(&cross(u, v))
}

pub fn conj_vec(v: &Vec3) -> Vec3 {
    [v[0].conjugate(), v[1].conjugate(), v[2].conjugate()]
}

pub fn conj_mat(m: &Mat3) -> Mat3 {
    [conj_vec(&m[0]), conj_vec(&m[1]), conj_vec(&m[2])]
}

pub fn scale_vec(c: &CycNumber, v: &Vec3) -> Vec3 {
    [c * &v[0], c * &v[1], c * &v[2]]
}

pub fn mat_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    [dot(&m[0], v), dot(&m[1], v), dot(&m[2], v)]
}

pub fn transpose(m: &Mat3) -> Mat3 {
    let mut t = zero_mat();
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            t[j][i] = x.clone();
        }
    }
    t
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let bt = transpose(b);
    let mut out = zero_mat();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = dot(&a[i], &bt[j]);
        }
    }
    out
}

/// Matrix with the given vectors as columns.
pub fn from_columns(c0: &Vec3, c1: &Vec3, c2: &Vec3) -> Mat3 {
    transpose(&[c0.clone(), c1.clone(), c2.clone()])
}

pub fn det(m: &Mat3) -> CycNumber {
    dot(&m[0], &cross(&m[1], &m[2]))
}

/// Transposed cofactor matrix: `m * adjugate(m) = det(m) * I`.
pub fn adjugate(m: &Mat3) -> Mat3 {
    // Columns of the adjugate are the cross products of row pairs.
    let c0 = cross(&m[1], &m[2]);
    let c1 = cross(&m[2], &m[0]);
    let c2 = cross(&m[0], &m[1]);
    from_columns(&c0, &c1, &c2)
}

pub fn inverse(m: &Mat3) -> Option<Mat3> {
    let d = det(m);
    let inv_d = d.inverse()?;
    let adj = adjugate(m);
    Some(adj.map(|row| scale_vec(&inv_d, &row)))
}

/// Scales `m` so its first nonzero entry (row-major) is 1.
pub fn normalize_mat(m: &Mat3) -> Mat3 {
    let pivot = m.iter().flatten().find(|x| !x.is_zero());
    match pivot.and_then(CycNumber::inverse) {
        Some(inv) => m.clone().map(|row| scale_vec(&inv, &row)),
        None => m.clone(),
    }
}

/// Whether `a` is a nonzero scalar multiple of `b`.
pub fn mat_proportional(a: &Mat3, b: &Mat3) -> bool {
    let fa: Vec<&CycNumber> = a.iter().flatten().collect();
    let fb: Vec<&CycNumber> = b.iter().flatten().collect();
    let Some(k) = fb.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if fa[k].is_zero() {
        return false;
    }
    let s = fa[k] / fb[k];
    fa.iter().zip(&fb).all(|(x, y)| **x == &s * *y)
}

/// Basis of the right null space of a matrix over `Q(z)` given as rows.
pub fn nullspace(rows: &[Vec<CycNumber>], ncols: usize) -> Vec<Vec<CycNumber>> {
    let mut a: Vec<Vec<CycNumber>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].inverse().expect("nonzero pivot");
        a[r] = a[r].iter().map(|x| x * &inv).collect();
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![CycNumber::zero(); ncols];
            v[fc] = CycNumber::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[row][fc];
            }
            v
        })
        .collect()
}

/// Linear algebra over `Z/p` for a prime `p`, on residues stored as `u32`.
pub mod modp {
    pub fn reduce(x: i64, p: u32) -> u32 {
        x.rem_euclid(p as i64) as u32
    }

    pub fn inv(x: u32, p: u32) -> u32 {
        // Fermat; p is prime and small.
        let mut base = x as u64 % p as u64;
        let mut e = p as u64 - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(a: &mut [Vec<u32>], p: u32) -> Vec<usize> {
        let ncols = a.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            if r == a.len() {
                break;
            }
            let Some(pr) = (r..a.len()).find(|&i| !a[i][col].is_multiple_of(p)) else {
                continue;
            };
            a.swap(r, pr);
            let iv = inv(a[r][col], p) as u64;
            for x in a[r].iter_mut() {
                *x = (*x as u64 * iv % p as u64) as u32;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && row[col] != 0 {
                    let f = row[col] as u64;
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        let sub = f * y as u64 % p as u64;
                        *x = ((*x as u64 + p as u64 - sub) % p as u64) as u32;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub fn rank(rows: &[Vec<u32>], p: u32) -> usize {
        let mut a: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
        rref(&mut a, p).len()
    }

    /// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
    pub fn nullspace(rows: &[Vec<u32>], ncols: usize, p: u32) -> Vec<Vec<u32>> {
        let mut a: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
        let pivots = rref(&mut a, p);
        (0..ncols)
            .filter(|c| !pivots.contains(c))
            .map(|fc| {
                let mut v = vec![0u32; ncols];
                v[fc] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - a[row][fc]) % p;
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(a: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
        let k = a.len();
        let mut aug: Vec<Vec<u32>> = a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r: Vec<u32> = row.iter().map(|x| x % p).collect();
                r.extend((0..k).map(|j| u32::from(i == j)));
                r
            })
            .collect();
        let pivots = rref(&mut aug, p);
        if pivots.len() < k || pivots[k - 1] >= k {
            return None;
        }
        Some(aug.into_iter().map(|r| r[k..].to_vec()).collect())
    }

    pub fn mat_mul(a: &[Vec<u32>], b: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| {
                        let s: u64 = row.iter().zip(b).map(|(&x, r)| x as u64 * r[j] as u64).sum();
                        (s % p as u64) as u32
                    })
                    .collect()
            })
            .collect()
    }

    pub fn mat_vec(a: &[Vec<u32>], v: &[u32], p: u32) -> Vec<u32> {
        a.iter()
            .map(|row| {
                let s: u64 = row.iter().zip(v).map(|(&x, &y)| x as u64 * y as u64).sum();
                (s % p as u64) as u32
            })
            .collect()
    }

    /// Solves `x * B = target` for a row vector `x`, where `B` has the given
    /// rows; returns one solution when it exists.
    pub fn solve_left(basis_rows: &[Vec<u32>], target: &[u32], p: u32) -> Option<Vec<u32>> {
        // Transpose to a column system B^T x = target and eliminate the
        // augmented matrix.
        let k = basis_rows.len();
        let d = target.len();
        let mut aug: Vec<Vec<u32>> = (0..d)
            .map(|j| {
                let mut row: Vec<u32> = basis_rows.iter().map(|b| b[j] % p).collect();
                row.push(target[j] % p);
                row
            })
            .collect();
        let pivots = rref(&mut aug, p);
        if pivots.contains(&k) {
            return None;
        }
        let mut x = vec![0u32; k];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[row][k];
        }
        Some(x)
    }
}
