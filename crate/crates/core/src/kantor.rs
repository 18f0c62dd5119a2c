//! Inclusion matrices between subset layers and their ranks.
//!
//! Rows are indexed by the `e`-subsets of `{1..d}` and columns by the
//! `f`-subsets, both in colexicographic order. A subset is a bitmask with
//! bit `i - 1` set for element `i`, so colex order is numeric mask order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Scalar> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &K {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[K] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Reduced row echelon form by Gaussian elimination; returns the pivot
    /// columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).negligible()) else {
                continue;
            };
            for c in 0..self.cols {
                self.data.swap(row * self.cols + c, p * self.cols + c);
            }
            let inv = K::one() / self.get(row, col).clone();
            for c in 0..self.cols {
                let v = self.get(row, c).clone() * inv.clone();
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).negligible() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in 0..self.cols {
                    let v = self.get(r, c).clone() - factor.clone() * self.get(row, c).clone();
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank by Gaussian elimination over `K`. Exact when `K::EXACT`.
    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{x : self · x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<K>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![K::zero(); self.cols];
                x[f] = K::one();
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = -m.get(r, f).clone();
                }
                x
            })
            .collect()
    }

    pub fn mul_vec(&self, x: &[K]) -> Vec<K> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(K::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

impl<K: Scalar> fmt::Display for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Exact rank over the rationals: denominators are cleared row by row and
/// the integer matrix is reduced with fraction-free (Bareiss) elimination.
pub fn rank_exact(m: &Matrix<Rational>) -> usize {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    bareiss_rank(&mut rows, m.cols())
}

fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let n = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for c in col..cols {
                // each step's quotient is exact (Sylvester's identity)
                let v = &pivot * &row[c] - &lead * &pivot_row[c];
                row[c] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// `k`-subsets of `{1..d}` as bitmasks, colex order.
pub fn subsets(d: u32, k: u32) -> Vec<u32> {
    assert!(d < 32, "subset masks are 32-bit");
    if k > d {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut x: u32 = (1 << k) - 1;
    let limit = 1u64 << d;
    while (x as u64) < limit {
        out.push(x);
        // Gosper's hack: next mask with the same popcount
        let c = x & x.wrapping_neg();
        let r = x + c;
        if r == 0 {
            break;
        }
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// Formats a subset mask as `{1,3,4}`.
pub fn subset_string(mask: u32) -> String {
    let elems: Vec<String> = (0..32)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", elems.join(","))
}

fn check_shape(d: u32, e: u32, f: u32, slack: u32) -> Result<()> {
    if d >= 32 {
        return Err(Error::InvalidParameter(format!("d = {d} is too large")));
    }
    if !(e < f && f + slack * e <= d) {
        let bound = if slack == 1 { "d-e" } else { "d-2e" };
        return Err(Error::InvalidParameter(format!(
            "need 0 <= e < f <= {bound}, got d={d} e={e} f={f}"
        )));
    }
    Ok(())
}

/// `(E, F) = 1` if `E ⊂ F`, else `0`.
pub fn incidence_matrix<K: Scalar>(d: u32, e: u32, f: u32) -> Result<Matrix<K>> {
    check_shape(d, e, f, 1)?;
    Ok(inclusion(d, e, f, |_| K::one()))
}

fn inclusion<K: Scalar>(d: u32, e: u32, f: u32, weight: impl Fn(u32) -> K) -> Matrix<K> {
    let rows = subsets(d, e);
    let cols = subsets(d, f);
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (i, &er) in rows.iter().enumerate() {
        for (j, &fc) in cols.iter().enumerate() {
            if er & fc == er {
                m.set(i, j, weight(fc & !er));
            }
        }
    }
    m
}

/// `(E, F) = w(F \ E)` if `E ⊂ F`, else `0`, where `w` is 1 on every
/// `(f-e)`-subset not contained in `e0`. `weights` gives the values on
/// subsets of `e0`; missing ones default to 1.
pub fn weighted_incidence_matrix<K: Scalar>(
    d: u32,
    e: u32,
    f: u32,
    e0: u32,
    weights: &BTreeMap<u32, K>,
) -> Result<Matrix<K>> {
    check_shape(d, e, f, 2)?;
    if e0.count_ones() != e || (d < 32 && e0 >> d != 0) {
        return Err(Error::InvalidParameter(format!(
            "E0 = {} is not an {e}-subset of 1..{d}",
            subset_string(e0)
        )));
    }
    for &x in weights.keys() {
        if x.count_ones() != f - e || x & e0 != x {
            return Err(Error::InvalidParameter(format!(
                "weight given on {} which is not an {}-subset of E0",
                subset_string(x),
                f - e
            )));
        }
    }
    Ok(inclusion(d, e, f, |x| {
        weights.get(&x).cloned().unwrap_or_else(K::one)
    }))
}

/// One point of a rank sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepPoint {
    pub d: u32,
    pub e: u32,
    pub f: u32,
    pub trials: usize,
    /// Ranks that differed from `C(d, e)`.
    pub bad_ranks: Vec<usize>,
    /// Whether `Mᵀ x = 0` has only the zero solution (checked once).
    pub kernel_trivial: bool,
}

impl fmt::Display for SweepPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict}\td={} e={} f={}\texpected rank {}\t{} trials",
            self.d,
            self.e,
            self.f,
            self.expected_rank(),
            self.trials
        )?;
        if !self.bad_ranks.is_empty() {
            write!(f, "\tbad ranks {:?}", self.bad_ranks)?;
        }
        if !self.kernel_trivial {
            write!(f, "\tnontrivial left kernel")?;
        }
        Ok(())
    }
}

impl SweepPoint {
    pub fn passed(&self) -> bool {
        self.bad_ranks.is_empty() && self.kernel_trivial
    }

    pub fn expected_rank(&self) -> usize {
        binomial(self.d as u64, self.e as u64) as usize
    }
}

fn unweighted_shapes(max_d: u32) -> Vec<(u32, u32, u32)> {
    let mut v = Vec::new();
    for d in 1..=max_d {
        for e in 0..d {
            for f in e + 1..=d.saturating_sub(e) {
                v.push((d, e, f));
            }
        }
    }
    v
}

fn weighted_shapes(max_d: u32) -> Vec<(u32, u32, u32)> {
    unweighted_shapes(max_d)
        .into_iter()
        .filter(|&(d, e, f)| f + 2 * e <= d)
        .collect()
}

fn left_kernel_trivial(m: &Matrix<Rational>) -> bool {
    m.transpose().kernel().is_empty()
}

/// Rank of the incidence matrix of one shape.
pub fn unweighted_point(d: u32, e: u32, f: u32) -> Result<SweepPoint> {
    let m: Matrix<Rational> = incidence_matrix(d, e, f)?;
    let expected = binomial(d as u64, e as u64) as usize;
    let r = rank_exact(&m);
    Ok(SweepPoint {
        d,
        e,
        f,
        trials: 1,
        bad_ranks: if r == expected { vec![] } else { vec![r] },
        kernel_trivial: left_kernel_trivial(&m),
    })
}

/// Ranks of all incidence matrices with `d <= max_d`.
pub fn sweep_unweighted(max_d: u32) -> Vec<SweepPoint> {
    unweighted_shapes(max_d)
        .into_par_iter()
        .map(|(d, e, f)| unweighted_point(d, e, f).expect("admissible shape"))
        .collect()
}

/// A random admissible weight function: `E0` and rational values on the
/// `(f-e)`-subsets of `E0`. Trial 0 uses all zeros and trial 1 all `-1`;
/// later trials draw `p/q` with `p` in `-6..=6`, `q` in `1..=5`.
pub fn random_weights(
    d: u32,
    e: u32,
    f: u32,
    trial: usize,
    rng: &mut ChaCha8Rng,
) -> (u32, BTreeMap<u32, Rational>) {
    let all_e = subsets(d, e);
    let e0 = all_e[rng.gen_range(0..all_e.len())];
    let weights = subsets(d, f - e)
        .into_iter()
        .filter(|x| x & e0 == *x)
        .map(|x| {
            let v = match trial {
                0 => Rational::zero(),
                1 => -Rational::one(),
                _ => Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=5).into()),
            };
            (x, v)
        })
        .collect();
    (e0, weights)
}

/// Ranks of `trials` weighted incidence matrices of one shape. The
/// weights come from a stream seeded by `seed` and the shape.
pub fn weighted_point(d: u32, e: u32, f: u32, trials: usize, seed: u64) -> Result<SweepPoint> {
    check_shape(d, e, f, 2)?;
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ ((d as u64) << 40 | (e as u64) << 20 | f as u64));
    let expected = binomial(d as u64, e as u64) as usize;
    let mut bad_ranks = Vec::new();
    let mut kernel_trivial = true;
    for t in 0..trials {
        let (e0, w) = random_weights(d, e, f, t, &mut rng);
        let m = weighted_incidence_matrix(d, e, f, e0, &w)?;
        let r = rank_exact(&m);
        if r != expected {
            bad_ranks.push(r);
        }
        if t == 0 {
            kernel_trivial = left_kernel_trivial(&m);
        }
    }
    Ok(SweepPoint {
        d,
        e,
        f,
        trials,
        bad_ranks,
        kernel_trivial,
    })
}

/// Weighted ranks for every shape with `d <= max_d`.
pub fn sweep_weighted(max_d: u32, trials: usize, seed: u64) -> Vec<SweepPoint> {
    weighted_shapes(max_d)
        .into_par_iter()
        .map(|(d, e, f)| weighted_point(d, e, f, trials, seed).expect("admissible shape"))
        .collect()
}

/// Whether `x` is the zero vector.
pub fn is_zero_vector<K: Scalar>(x: &[K]) -> bool {
    x.iter().all(Scalar::negligible)
}
