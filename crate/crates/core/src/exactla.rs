//! Exact linear algebra over the rationals.
//!
//! Rank is computed two ways. [`bareiss_rank`] is plain fraction-free
//! elimination on the dense matrix. [`rank_certificate`] is the route used at
//! large dimension: independent rows are selected modulo a 61-bit prime
//! (independence mod p implies independence over Q), and the matching upper
//! bound comes from exact integer kernel vectors that annihilate every row.
//! The two halves together pin the rank exactly and can be re-checked cheaply.
//!
//! Conic membership is decided by a phase-1 simplex over the rationals with
//! Bland's rule. Infeasibility yields a Farkas functional.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::entrospace::Rational;
use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn from_integer_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Nonzero entries of row `r` as `(column, value)`.
    pub fn row_nonzeros(&self, r: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.row(r).iter().enumerate().filter(|(_, v)| !v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Each row scaled by the lcm of its denominators, as sparse integer rows.
    pub fn integer_rows(&self) -> Vec<IntRow> {
        (0..self.rows)
            .map(|r| {
                let l = self
                    .row(r)
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                self.row_nonzeros(r)
                    .map(|(c, x)| (c, x.numer() * (&l / x.denom())))
                    .collect()
            })
            .collect()
    }
}

/// Sparse integer row: `(column, value)` pairs with nonzero values.
pub type IntRow = Vec<(usize, BigInt)>;

fn dense_rows(rows: &[&IntRow], cols: usize) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let mut d = vec![BigInt::zero(); cols];
            for (c, v) in r.iter() {
                d[*c] = v.clone();
            }
            d
        })
        .collect()
}

/// Result of fraction-free forward elimination.
struct Echelon {
    /// Eliminated rows; the first `pivots.len()` are the nonzero echelon rows.
    rows: Vec<Vec<BigInt>>,
    /// Original index of each row after pivoting swaps.
    order: Vec<usize>,
    pivots: Vec<usize>,
}

/// Bareiss elimination. Every intermediate entry is a minor of the input, so
/// the division by the previous pivot is exact.
fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let m = a.len();
    let mut order: Vec<usize> = (0..m).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut k = 0;
    for c in 0..cols {
        if k == m {
            break;
        }
        let Some(p) = (k..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(k, p);
        order.swap(k, p);
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pv = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let mut v = &pv * &row[j];
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    v -= &f * &pivot_row[j];
                }
                if !v.is_zero() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = pv;
        pivots.push(c);
        k += 1;
    }
    Echelon {
        rows: a,
        order,
        pivots,
    }
}

/// Exact rank by fraction-free Gaussian elimination on the dense matrix.
pub fn bareiss_rank(m: &RationalMatrix) -> usize {
    let rows = m.integer_rows();
    let refs: Vec<&IntRow> = rows.iter().collect();
    bareiss_echelon(dense_rows(&refs, m.cols), m.cols).pivots.len()
}

/// Integer kernel basis of an echelon form (one primitive vector per free column).
fn kernel_from_echelon(e: &Echelon, cols: usize) -> Vec<Vec<BigInt>> {
    let r = e.pivots.len();
    let mut is_pivot = vec![false; cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::one();
            for k in (0..r).rev() {
                let p = e.pivots[k];
                let row = &e.rows[k];
                let mut s = Rational::zero();
                for j in p + 1..cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s += &x[j] * Rational::from_integer(row[j].clone());
                    }
                }
                x[p] = -s / Rational::from_integer(row[p].clone());
            }
            primitive_integer(&x)
        })
        .collect()
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(x: &[Rational]) -> Vec<BigInt> {
    let l = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&l / v.denom())).collect();
    primitive(ints)
}

/// Divides an integer vector by the gcd of its entries (sign preserved).
pub fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

const PRIME: u64 = (1 << 61) - 1;

#[inline]
fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn to_mod(x: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = x.mod_floor(&p);
    r.to_u64().unwrap()
}

/// Greedy maximal set of rows independent modulo p, in input order.
fn independent_rows_mod_p(rows: &[IntRow], cols: usize) -> Vec<usize> {
    // Fully reduced basis: basis[k] has a 1 at pivot[k] and 0 at every other pivot.
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        if basis.len() == cols {
            break;
        }
        let mut v = vec![0u64; cols];
        for (c, x) in row {
            v[*c] = to_mod(x);
        }
        for (c, _) in row {
            if let Some(k) = pivot_of_col[*c] {
                let f = v[*c];
                if f != 0 {
                    let b = &basis[k];
                    for j in 0..cols {
                        if b[j] != 0 {
                            v[j] = (v[j] + PRIME - mulmod(f, b[j])) % PRIME;
                        }
                    }
                }
            }
        }
        // Entries outside the original support may have been filled in, but
        // they never sit on a pivot column of a fully reduced basis.
        let Some(p) = (0..cols).find(|&j| v[j] != 0) else {
            continue;
        };
        let inv = powmod(v[p], PRIME - 2);
        for x in v.iter_mut() {
            if *x != 0 {
                *x = mulmod(*x, inv);
            }
        }
        for b in basis.iter_mut() {
            let f = b[p];
            if f != 0 {
                for j in 0..cols {
                    if v[j] != 0 {
                        b[j] = (b[j] + PRIME - mulmod(f, v[j])) % PRIME;
                    }
                }
            }
        }
        pivot_of_col[p] = Some(basis.len());
        basis.push(v);
        chosen.push(idx);
    }
    chosen
}

fn rank_mod_p(vectors: &[Vec<BigInt>], cols: usize) -> usize {
    let rows: Vec<IntRow> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (c, x.clone()))
                .collect()
        })
        .collect();
    independent_rows_mod_p(&rows, cols).len()
}

fn annihilates(row: &IntRow, k: &[BigInt]) -> bool {
    row.iter()
        .fold(BigInt::zero(), |acc, (c, x)| acc + x * &k[*c])
        .is_zero()
}

/// Self-checking rank statement for a set of integer rows.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub cols: usize,
    /// Indices of `rank` input rows that are linearly independent.
    pub basis: Vec<usize>,
    /// `cols − rank` independent integer vectors annihilating every row.
    #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
    pub kernel: Vec<Vec<BigInt>>,
}

impl RankCertificate {
    /// Re-checks the certificate against `rows` without redoing elimination:
    /// basis rows independent mod p, kernel vectors independent mod p and
    /// exactly orthogonal to every row, and the dimensions add up.
    pub fn verify(&self, rows: &[IntRow]) -> bool {
        if self.basis.len() != self.rank || self.rank + self.kernel.len() != self.cols {
            return false;
        }
        if self.basis.iter().any(|&i| i >= rows.len()) {
            return false;
        }
        let basis_rows: Vec<IntRow> = self.basis.iter().map(|&i| rows[i].clone()).collect();
        if independent_rows_mod_p(&basis_rows, self.cols).len() != self.rank {
            return false;
        }
        if self.kernel.iter().any(|k| k.len() != self.cols) {
            return false;
        }
        if rank_mod_p(&self.kernel, self.cols) != self.kernel.len() {
            return false;
        }
        rows.iter()
            .all(|r| self.kernel.iter().all(|k| annihilates(r, k)))
    }
}

/// Exact rank of sparse integer rows with a re-checkable certificate.
///
/// `kernel_hint`, when given, is a vector already known to annihilate every
/// row; if the modular lower bound reaches `cols − 1` it closes the argument
/// without any big-integer elimination.
pub fn rank_certificate(
    rows: &[IntRow],
    cols: usize,
    kernel_hint: Option<&[BigInt]>,
) -> RankCertificate {
    let basis = independent_rows_mod_p(rows, cols);
    if let Some(h) = kernel_hint {
        if basis.len() + 1 == cols
            && h.len() == cols
            && h.iter().any(|x| !x.is_zero())
            && rows.iter().all(|r| annihilates(r, h))
        {
            return RankCertificate {
                rank: basis.len(),
                cols,
                basis,
                kernel: vec![primitive(h.to_vec())],
            };
        }
    }
    let selected: Vec<&IntRow> = basis.iter().map(|&i| &rows[i]).collect();
    let kernel = kernel_from_echelon(&bareiss_echelon(dense_rows(&selected, cols), cols), cols);
    if rows.iter().all(|r| kernel.iter().all(|k| annihilates(r, k))) {
        return RankCertificate {
            rank: basis.len(),
            cols,
            basis,
            kernel,
        };
    }
    // The prime divided a minor: fall back to elimination over all rows.
    let all: Vec<&IntRow> = rows.iter().collect();
    let e = bareiss_echelon(dense_rows(&all, cols), cols);
    let kernel = kernel_from_echelon(&e, cols);
    let mut basis: Vec<usize> = e.order[..e.pivots.len()].to_vec();
    basis.sort_unstable();
    RankCertificate {
        rank: e.pivots.len(),
        cols,
        basis,
        kernel,
    }
}

/// Exact rank over the rationals.
pub fn rank(m: &RationalMatrix) -> usize {
    if m.rows * m.cols <= 4096 {
        return bareiss_rank(m);
    }
    rank_certificate(&m.integer_rows(), m.cols, None).rank
}

pub fn nullspace_dim(m: &RationalMatrix) -> usize {
    m.cols - rank(m)
}

/// Outcome of a conic-membership query, checkable without the solver.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConicCertificate {
    /// `q = Σ λ_i · rays[i]` with every `λ_i > 0` listed (others are zero).
    Member {
        #[serde_as(as = "Vec<(_, DisplayFromStr)>")]
        coefficients: Vec<(usize, Rational)>,
    },
    /// `w · r ≥ 0` for every ray and `w · q < 0`.
    NonMember {
        #[serde_as(as = "Vec<DisplayFromStr>")]
        functional: Vec<BigInt>,
    },
}

impl ConicCertificate {
    pub fn is_member(&self) -> bool {
        matches!(self, ConicCertificate::Member { .. })
    }

    pub fn verify(&self, q: &[Rational], rays: &[Vec<Rational>]) -> bool {
        match self {
            ConicCertificate::Member { coefficients } => {
                let mut acc = vec![Rational::zero(); q.len()];
                for (i, lambda) in coefficients {
                    if lambda.is_negative() || *i >= rays.len() || rays[*i].len() != q.len() {
                        return false;
                    }
                    for (a, r) in acc.iter_mut().zip(&rays[*i]) {
                        *a += lambda * r;
                    }
                }
                acc.as_slice() == q
            }
            ConicCertificate::NonMember { functional } => {
                if functional.len() != q.len() {
                    return false;
                }
                let w: Vec<Rational> = functional
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect();
                let dot = |v: &[Rational]| -> Rational {
                    w.iter().zip(v).map(|(a, b)| a * b).sum()
                };
                dot(q).is_negative()
                    && rays
                        .iter()
                        .all(|r| r.len() == q.len() && !dot(r).is_negative())
            }
        }
    }
}

/// Decides `q ∈ cone(rays)` exactly.
pub fn conic_membership(q: &[Rational], rays: &[Vec<Rational>]) -> Result<ConicCertificate> {
    let d = q.len();
    for r in rays {
        if r.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: r.len(),
            });
        }
    }
    let m = rays.len();
    // Rows: s_i · (Σ_j R_ij λ_j) + a_i = s_i q_i with s_i chosen so the rhs is ≥ 0.
    let sign: Vec<bool> = q.iter().map(|x| x.is_negative()).collect();
    let width = m + d;
    let mut tab: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut row = Vec::with_capacity(width + 1);
            for r in rays {
                row.push(if sign[i] { -&r[i] } else { r[i].clone() });
            }
            for k in 0..d {
                row.push(if k == i { Rational::one() } else { Rational::zero() });
            }
            row.push(q[i].abs());
            row
        })
        .collect();
    let mut basic: Vec<usize> = (m..m + d).collect();
    // Reduced costs of the phase-1 objective Σ a_i, last entry is −objective.
    let mut cost: Vec<Rational> = (0..=width)
        .map(|j| {
            if (m..m + d).contains(&j) {
                Rational::zero()
            } else {
                -tab.iter().map(|row| &row[j]).sum::<Rational>()
            }
        })
        .collect();

    // Bland's rule: smallest entering index, ties on leaving by smallest basic index.
    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basic[i] < basic[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase-1 objective is bounded below by zero.
        let (pr, _) = leave.expect("phase-1 simplex cannot be unbounded");
        pivot(&mut tab, &mut cost, pr, enter);
        basic[pr] = enter;
    }

    if cost[width].is_zero() {
        let mut coefficients: Vec<(usize, Rational)> = basic
            .iter()
            .zip(&tab)
            .filter(|(&b, row)| b < m && !row[width].is_zero())
            .map(|(&b, row)| (b, row[width].clone()))
            .collect();
        coefficients.sort_by_key(|(i, _)| *i);
        return Ok(ConicCertificate::Member { coefficients });
    }
    // Artificial column reduced cost is 1 − y_i, with y the phase-1 duals.
    let y: Vec<Rational> = (0..d)
        .map(|i| {
            let yi = Rational::one() - &cost[m + i];
            if sign[i] {
                -yi
            } else {
                yi
            }
        })
        .collect();
    // y·R ≤ 0 and y·q > 0, so w = −y separates.
    let w: Vec<Rational> = y.iter().map(|v| -v).collect();
    Ok(ConicCertificate::NonMember {
        functional: primitive_integer(&w),
    })
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], pr: usize, pc: usize) {
    let pv = tab[pr][pc].clone();
    for x in tab[pr].iter_mut() {
        if !x.is_zero() {
            *x /= &pv;
        }
    }
    let prow = tab[pr].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == pr {
            continue;
        }
        let f = row[pc].clone();
        if f.is_zero() {
            continue;
        }
        for (x, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
    }
    let f = cost[pc].clone();
    if !f.is_zero() {
        for (x, p) in cost.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
    }
}

/// Integer vector to rationals.
pub fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&RationalMatrix::zeros(4, 7)), 0);
        assert_eq!(nullspace_dim(&RationalMatrix::identity(5)), 0);
        assert_eq!(nullspace_dim(&RationalMatrix::zeros(2, 7)), 7);
    }

    #[test]
    fn bell_saturated_rows_n2() {
        // SA instances at N = 2 saturated by (1, 1, 0): S_1 + S_12 − S_2 and
        // S_2 + S_12 − S_1 and 2 S_12.
        let m = RationalMatrix::from_integer_rows(
            3,
            &[vec![1, -1, 1], vec![-1, 1, 1], vec![0, 0, 2]],
        )
        .unwrap();
        assert_eq!(rank(&m), 2);
        assert_eq!(nullspace_dim(&m), 1);
    }

    #[test]
    fn certificate_path_matches_bareiss() {
        let m = RationalMatrix::from_integer_rows(
            4,
            &[
                vec![1, 2, 3, 4],
                vec![2, 4, 6, 8],
                vec![0, 1, 0, 1],
                vec![1, 3, 3, 5],
                vec![5, 0, 0, 1],
            ],
        )
        .unwrap();
        let rows = m.integer_rows();
        let cert = rank_certificate(&rows, 4, None);
        assert_eq!(cert.rank, bareiss_rank(&m));
        assert_eq!(cert.rank, 3);
        assert!(cert.verify(&rows));
        let mut bad = cert.clone();
        bad.kernel.clear();
        assert!(!bad.verify(&rows));
    }

    #[test]
    fn kernel_hint_shortcut() {
        let rows: Vec<IntRow> = vec![
            vec![(0, 1.into()), (1, (-1).into())],
            vec![(1, 1.into()), (2, (-1).into())],
        ];
        let hint = vec![BigInt::from(2), 2.into(), 2.into()];
        let cert = rank_certificate(&rows, 3, Some(&hint));
        assert_eq!(cert.rank, 2);
        assert_eq!(cert.kernel, vec![vec![BigInt::from(1), 1.into(), 1.into()]]);
        assert!(cert.verify(&rows));
    }

    #[test]
    fn membership_constructed_combination() {
        let r1 = qv(&[1, 0, 1]);
        let r2 = qv(&[0, 1, 1]);
        let target = qv(&[1, 2, 3]);
        let rays = vec![r1, r2];
        let cert = conic_membership(&target, &rays).unwrap();
        assert_eq!(
            cert,
            ConicCertificate::Member {
                coefficients: vec![(0, q(1)), (1, q(2))]
            }
        );
        assert!(cert.verify(&target, &rays));
    }

    #[test]
    fn membership_apex() {
        let rays = vec![qv(&[1, 2]), qv(&[3, -1])];
        let cert = conic_membership(&qv(&[0, 0]), &rays).unwrap();
        assert_eq!(
            cert,
            ConicCertificate::Member {
                coefficients: vec![]
            }
        );
    }

    #[test]
    fn membership_nonmember_certificate() {
        let rays = vec![qv(&[1, 0]), qv(&[1, 1])];
        let target = qv(&[0, 1]);
        let cert = conic_membership(&target, &rays).unwrap();
        assert!(!cert.is_member());
        assert!(cert.verify(&target, &rays));
        let target = qv(&[-1, -3]);
        let cert = conic_membership(&target, &rays).unwrap();
        assert!(!cert.is_member());
        assert!(cert.verify(&target, &rays));
    }

    #[test]
    fn membership_dimension_mismatch() {
        assert!(matches!(
            conic_membership(&qv(&[1, 2]), &[qv(&[1])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn empty_ray_set() {
        let cert = conic_membership(&qv(&[1, 0]), &[]).unwrap();
        assert!(!cert.is_member());
        assert!(cert.verify(&qv(&[1, 0]), &[]));
    }
}
