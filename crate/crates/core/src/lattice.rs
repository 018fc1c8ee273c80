//! Integer lattices: Hermite normal form, integer kernels and Smith normal form.
//!
//! Matrices are dense `Vec<Vec<BigInt>>` in row-major order. Lattices are
//! spanned by the *rows* of a matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntVec = Vec<BigInt>;
pub type IntMatrix = Vec<IntVec>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn int_vec(xs: &[i64]) -> IntVec {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols).map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul(v: &[BigInt], m: &IntMatrix) -> IntVec {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| v.iter().zip(m).fold(BigInt::zero(), |acc, (x, row)| acc + x * &row[j])).collect()
}

fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Replace rows (i, j) by the unimodular combination that puts gcd(a_i, a_j) in row i
/// and 0 in row j, where a is column `col`.
fn gcd_rows(rows: &mut [IntVec], i: usize, j: usize, col: usize) {
    let a = rows[i][col].clone();
    let b = rows[j][col].clone();
    if b.is_zero() {
        return;
    }
    let e = a.extended_gcd(&b);
    let (g, x, y) = (e.gcd, e.x, e.y);
    let (ag, bg) = (&a / &g, &b / &g);
    let len = rows[i].len();
    for k in 0..len {
        let ri = rows[i][k].clone();
        let rj = rows[j][k].clone();
        rows[i][k] = &x * &ri + &y * &rj;
        rows[j][k] = &ag * &rj - &bg * &ri;
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns a basis in echelon form: pivots strictly positive and moving right,
/// entries above each pivot reduced into `[0, pivot)`, zero rows removed.
pub fn hnf(rows: &[IntVec]) -> IntMatrix {
    let (h, _) = hnf_with_transform(rows);
    h.into_iter().filter(|r| !is_zero_vec(r)).collect()
}

/// HNF together with the unimodular `U` such that `U · rows = H` (zero rows kept at the bottom).
pub fn hnf_with_transform(rows: &[IntVec]) -> (IntMatrix, IntMatrix) {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    // augment with identity to track the transform
    let mut aug: IntMatrix =
        rows.iter().enumerate().map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            v
        }).collect();
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        for i in pivot_row + 1..m {
            gcd_rows(&mut aug, pivot_row, i, col);
        }
        if aug[pivot_row][col].is_zero() {
            continue;
        }
        if aug[pivot_row][col].is_negative() {
            for x in aug[pivot_row].iter_mut() {
                *x = -x.clone();
            }
        }
        let p = aug[pivot_row][col].clone();
        for i in 0..pivot_row {
            let q = aug[i][col].div_floor(&p);
            if !q.is_zero() {
                let prow = aug[pivot_row].clone();
                for (x, y) in aug[i].iter_mut().zip(&prow) {
                    *x -= &q * y;
                }
            }
        }
        pivot_row += 1;
    }
    let h = aug.iter().map(|r| r[..n].to_vec()).collect();
    let u = aug.iter().map(|r| r[n..].to_vec()).collect();
    (h, u)
}

/// Basis (in HNF) of `{x ∈ ℤⁿ : A·x = 0}` for an m×n matrix `A`.
///
/// The result is saturated: it is the full integer kernel, not a finite-index sublattice.
pub fn integer_kernel(a: &[IntVec], n: usize) -> IntMatrix {
    // Row-reduce Aᵀ; rows of the transform belonging to zero rows span the kernel.
    let at: IntMatrix = (0..n).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect();
    if a.is_empty() {
        return identity(n);
    }
    let (h, u) = hnf_with_transform(&at);
    let kernel: IntMatrix = h.iter().zip(&u).filter(|(hr, _)| is_zero_vec(hr)).map(|(_, ur)| ur.clone()).collect();
    hnf(&kernel)
}

/// Whether `v` lies in the lattice with HNF basis `basis`.
pub fn hnf_contains(basis: &[IntVec], v: &[BigInt]) -> bool {
    let mut r = v.to_vec();
    for row in basis {
        let Some(col) = row.iter().position(|x| !x.is_zero()) else { continue };
        // everything left of `col` must already be cleared
        if r[..col].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, rem) = r[col].div_rem(&row[col]);
        if !rem.is_zero() {
            return false;
        }
        for (x, y) in r.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    is_zero_vec(&r)
}

/// `U · A · V = D` with `D` diagonal, `dᵢ | dᵢ₊₁`, `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub right_inverse: IntMatrix,
}

pub fn smith(a: &[IntVec], n: usize) -> Smith {
    let m = a.len();
    let mut d: IntMatrix = a.to_vec();
    let mut left = identity(m);
    let mut right = identity(n);
    let mut right_inv = identity(n);

    let mut t = 0;
    while t < m.min(n) {
        // pick the smallest nonzero entry in the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut d, &mut left, t, pi);
        swap_cols(&mut d, &mut right, &mut right_inv, t, pj);

        loop {
            for i in t + 1..m {
                gcd_rows_tracked(&mut d, &mut left, t, i, t);
            }
            for j in t + 1..n {
                gcd_cols_tracked(&mut d, &mut right, &mut right_inv, t, j, t);
            }
            if (t + 1..m).any(|i| !d[i][t].is_zero()) {
                continue;
            }
            // divisibility: the pivot must divide the whole trailing block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&d[i][j] % &d[t][t]).is_zero()));
            match bad {
                Some(i) => add_row(&mut d, &mut left, t, i, &BigInt::one()),
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in left[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let diagonal = (0..m.min(n)).map(|i| d[i][i].clone()).collect();
    Smith { diagonal, left, right, right_inverse: right_inv }
}

/// Rows (t, i) of `d` and `left` become (gcd row, row with 0) in column `col`.
fn gcd_rows_tracked(d: &mut IntMatrix, left: &mut IntMatrix, t: usize, i: usize, col: usize) {
    if d[i][col].is_zero() {
        return;
    }
    let (a, b) = (d[t][col].clone(), d[i][col].clone());
    if (&b % &a).is_zero() {
        add_row(d, left, i, t, &-(&b / &a));
        return;
    }
    let e = a.extended_gcd(&b);
    let (x, y, ag, bg) = (e.x, e.y, &a / &e.gcd, &b / &e.gcd);
    for mat in [d, left] {
        for k in 0..mat[t].len() {
            let (rt, ri) = (mat[t][k].clone(), mat[i][k].clone());
            mat[t][k] = &x * &rt + &y * &ri;
            mat[i][k] = &ag * &ri - &bg * &rt;
        }
    }
}

/// Column analogue of [`gcd_rows_tracked`]; `right_inv` receives the inverse step.
fn gcd_cols_tracked(d: &mut IntMatrix, right: &mut IntMatrix, right_inv: &mut IntMatrix, t: usize, j: usize, row: usize) {
    if d[row][j].is_zero() {
        return;
    }
    let (a, b) = (d[row][t].clone(), d[row][j].clone());
    if (&b % &a).is_zero() {
        add_col(d, right, right_inv, j, t, &-(&b / &a));
        return;
    }
    let e = a.extended_gcd(&b);
    let (x, y, ag, bg) = (e.x, e.y, &a / &e.gcd, &b / &e.gcd);
    for r in d.iter_mut().chain(right.iter_mut()) {
        let (ct, cj) = (r[t].clone(), r[j].clone());
        r[t] = &x * &ct + &y * &cj;
        r[j] = &ag * &cj - &bg * &ct;
    }
    for k in 0..right_inv[t].len() {
        let (rt, rj) = (right_inv[t][k].clone(), right_inv[j][k].clone());
        right_inv[t][k] = &ag * &rt + &bg * &rj;
        right_inv[j][k] = &x * &rj - &y * &rt;
    }
}

fn swap_rows(d: &mut IntMatrix, left: &mut IntMatrix, i: usize, j: usize) {
    if i != j {
        d.swap(i, j);
        left.swap(i, j);
    }
}

fn swap_cols(d: &mut IntMatrix, right: &mut IntMatrix, right_inv: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in d.iter_mut().chain(right.iter_mut()) {
        row.swap(i, j);
    }
    right_inv.swap(i, j);
}

/// row_i += k · row_j
fn add_row(d: &mut IntMatrix, left: &mut IntMatrix, i: usize, j: usize, k: &BigInt) {
    for mat in [d, left] {
        let src = mat[j].clone();
        for (x, y) in mat[i].iter_mut().zip(&src) {
            *x += k * y;
        }
    }
}

/// col_i += k · col_j, with the inverse transform row_j -= k · row_i
fn add_col(d: &mut IntMatrix, right: &mut IntMatrix, right_inv: &mut IntMatrix, i: usize, j: usize, k: &BigInt) {
    for row in d.iter_mut().chain(right.iter_mut()) {
        let y = row[j].clone();
        row[i] += k * y;
    }
    let src = right_inv[i].clone();
    for (x, y) in right_inv[j].iter_mut().zip(&src) {
        *x -= k * y;
    }
}

pub fn is_identity(m: &IntMatrix) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| int_vec(r)).collect()
    }

    #[test]
    fn hnf_small() {
        assert_eq!(hnf(&m(&[&[2, 0], &[0, 3]])), m(&[&[2, 0], &[0, 3]]));
        assert_eq!(hnf(&m(&[&[-1, 1]])), m(&[&[1, -1]]));
        assert_eq!(hnf(&m(&[&[4, 6], &[6, 9]])), m(&[&[2, 3]]));
        assert_eq!(hnf(&m(&[&[0, 0]])), IntMatrix::new());
        assert_eq!(hnf(&m(&[&[3, 1], &[0, 2], &[6, 0]])), m(&[&[3, 1], &[0, 2]]));
        assert_eq!(hnf(&m(&[&[3, 1], &[0, 2], &[1, 0]])), m(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn kernel_small() {
        assert_eq!(integer_kernel(&m(&[&[1, -1]]), 2), m(&[&[1, 1]]));
        assert_eq!(integer_kernel(&m(&[&[2, 4]]), 2), m(&[&[2, -1]]));
        assert_eq!(integer_kernel(&m(&[&[1, 0], &[0, 1]]), 2), IntMatrix::new());
        assert_eq!(integer_kernel(&[], 2), identity(2));
    }

    #[test]
    fn smith_small() {
        let s = smith(&m(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(s.diagonal, int_vec(&[1, 6]));
        let s = smith(&m(&[&[1, -1]]), 2);
        assert_eq!(s.diagonal, int_vec(&[1]));
    }

    fn check_smith(a: &IntMatrix, n: usize) {
        let s = smith(a, n);
        let prod = mat_mul(&mat_mul(&s.left, a), &s.right);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(x, &s.diagonal[i]);
                } else {
                    assert!(x.is_zero(), "off-diagonal entry in {prod:?}");
                }
            }
        }
        for w in s.diagonal.windows(2) {
            assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()), "{:?}", s.diagonal);
        }
        assert!(s.diagonal.iter().all(|x| !x.is_negative()));
        assert!(is_identity(&mat_mul(&s.right, &s.right_inverse)));
    }

    #[test]
    fn smith_dense_stays_small() {
        // Dense 8×9 with entries in [−9, 9]; swap-based reduction used to blow up here.
        let mut x = 7u64;
        let a: IntMatrix = (0..8)
            .map(|_| {
                (0..9)
                    .map(|_| {
                        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        BigInt::from(((x >> 33) % 19) as i64 - 9)
                    })
                    .collect()
            })
            .collect();
        check_smith(&a, 9);
        let s = smith(&a, 9);
        assert!(s.left.iter().chain(&s.right).flatten().all(|v| v.bits() < 256));
    }

    proptest! {
        #[test]
        fn smith_dense_is_valid(rows in 4usize..7, seed in proptest::collection::vec(-9i64..10, 49)) {
            let a: IntMatrix = (0..rows).map(|i| (0..7).map(|j| BigInt::from(seed[i * 7 + j])).collect()).collect();
            check_smith(&a, 7);
        }

        #[test]
        fn smith_is_a_valid_decomposition(rows in 0usize..4, cols in 1usize..5, seed in proptest::collection::vec(-9i64..10, 16)) {
            let a: IntMatrix = (0..rows).map(|i| (0..cols).map(|j| BigInt::from(seed[i * 4 + j])).collect()).collect();
            check_smith(&a, cols);
        }

        #[test]
        fn hnf_is_canonical_and_spans(rows in 1usize..5, seed in proptest::collection::vec(-9i64..10, 12), mix in proptest::collection::vec(-3i64..4, 16)) {
            let a: IntMatrix = (0..rows).map(|i| (0..3).map(|j| BigInt::from(seed[(i * 3 + j) % 12])).collect()).collect();
            let h = hnf(&a);
            // every original row is in the HNF lattice and vice versa
            for r in &a {
                prop_assert!(hnf_contains(&h, r));
            }
            let ha = hnf(&h);
            prop_assert_eq!(&ha, &h);
            // HNF of a unimodularly mixed generating set is identical
            let mut mixed = a.clone();
            for (k, c) in mix.iter().enumerate() {
                let (i, j) = (k % rows, (k / 3) % rows);
                if i != j {
                    let src = mixed[j].clone();
                    for (x, y) in mixed[i].iter_mut().zip(&src) {
                        *x += BigInt::from(*c) * y;
                    }
                }
            }
            prop_assert_eq!(hnf(&mixed), h);
        }

        #[test]
        fn kernel_vectors_are_annihilated(seed in proptest::collection::vec(-5i64..6, 8)) {
            let a = m(&[&seed[..4], &seed[4..]]);
            let k = integer_kernel(&a, 4);
            for v in &k {
                for row in &a {
                    let dot: BigInt = row.iter().zip(v).map(|(x, y)| x * y).sum();
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
