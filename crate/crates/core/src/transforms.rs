//! Integer sequence transforms linking letter counts `a`, word counts `w`
//! and Lyndon word counts `l` of a weighted alphabet.
//!
//! All series are 1-indexed and truncated at an explicit order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// A truncated integer sequence `x_1, ..., x_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    values: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl IntSeries {
    /// Truncates or zero-pads `values` to `order` terms.
    pub fn new(mut values: Vec<BigInt>, order: usize) -> Self {
        values.resize(order, BigInt::zero());
        IntSeries { values }
    }

    pub fn from_i64(values: &[i64], order: usize) -> Self {
        Self::new(values.iter().map(|&v| v.into()).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    /// `k` ones followed by zeros: one letter of each weight `1..=k`.
    pub fn profile(k: usize, order: usize) -> Self {
        Self::new(vec![BigInt::one(); k.min(order)], order)
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// The `n`-th term, `1 <= n <= order`.
    pub fn get(&self, n: usize) -> &BigInt {
        assert!(
            n >= 1 && n <= self.order(),
            "index {n} outside 1..={}",
            self.order()
        );
        &self.values[n - 1]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.values.clone(), order.min(self.order()))
    }

    /// Parses one integer per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, order: Option<usize>) -> Result<Self> {
        let mut values = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let v = BigInt::from_str(line).map_err(|_| Error::Table {
                line: i + 1,
                msg: format!("not an integer: {line:?}"),
            })?;
            values.push(v);
        }
        let n = order.unwrap_or(values.len());
        Ok(Self::new(values, n))
    }

    /// Comma separated terms.
    pub fn to_csv(&self) -> String {
        self.values
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    fn coeff(&self, n: usize) -> BigInt {
        self.values
            .get(n.wrapping_sub(1))
            .cloned()
            .unwrap_or_default()
    }
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.values {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// `1 + Σ w_n x^n = 1 / (1 - Σ a_n x^n)`.
pub fn invert(s: &IntSeries, direction: Direction) -> IntSeries {
    let n = s.order();
    let mut out: Vec<BigInt> = Vec::with_capacity(n);
    for m in 1..=n {
        let v = match direction {
            // w_m = a_m + Σ a_k w_{m-k}
            Direction::Forward => {
                (1..m).fold(s.coeff(m), |acc, k| acc + s.coeff(k) * &out[m - k - 1])
            }
            // a_m = w_m - Σ a_k w_{m-k}
            Direction::Inverse => {
                (1..m).fold(s.coeff(m), |acc, k| acc - &out[k - 1] * s.coeff(m - k))
            }
        };
        out.push(v);
    }
    IntSeries { values: out }
}

/// `1 + Σ w_n x^n = Π 1 / (1 - x^n)^{l_n}`.
///
/// Both directions go through `b_n = Σ_{d|n} d l_d`, which satisfies
/// `n w_n = b_n + Σ_{k<n} b_k w_{n-k}`.
pub fn euler(s: &IntSeries, direction: Direction) -> Result<IntSeries> {
    let n = s.order();
    match direction {
        Direction::Forward => {
            let b: Vec<BigInt> = (1..=n)
                .map(|m| {
                    divisors(m)
                        .into_iter()
                        .map(|d| BigInt::from(d) * s.coeff(d))
                        .sum()
                })
                .collect();
            let mut w: Vec<BigInt> = Vec::with_capacity(n);
            for m in 1..=n {
                let total = (1..m).fold(b[m - 1].clone(), |acc, k| acc + &b[k - 1] * &w[m - k - 1]);
                let (q, r) = total.div_rem(&BigInt::from(m));
                debug_assert!(r.is_zero());
                w.push(q);
            }
            Ok(IntSeries { values: w })
        }
        Direction::Inverse => {
            let mut b: Vec<BigInt> = Vec::with_capacity(n);
            for m in 1..=n {
                let v = (1..m).fold(BigInt::from(m) * s.coeff(m), |acc, k| {
                    acc - &b[k - 1] * s.coeff(m - k)
                });
                b.push(v);
            }
            mobius_divide(&b, false)
        }
    }
}

/// `c_n = n a_n + Σ_{k<n} c_k a_{n-k}`.
pub fn a_to_c(a: &IntSeries) -> IntSeries {
    let n = a.order();
    let mut c: Vec<BigInt> = Vec::with_capacity(n);
    for m in 1..=n {
        let v = (1..m).fold(BigInt::from(m) * a.coeff(m), |acc, k| {
            acc + &c[k - 1] * a.coeff(m - k)
        });
        c.push(v);
    }
    IntSeries { values: c }
}

/// `l_n = (1/n) Σ_{d|n} μ(n/d) c_d`, required to be a nonnegative integer.
pub fn c_to_l(c: &IntSeries) -> Result<IntSeries> {
    mobius_divide(c.values(), true)
}

/// Lyndon word counts of the alphabet with letter counts `a`.
pub fn a_to_l(a: &IntSeries) -> Result<IntSeries> {
    c_to_l(&a_to_c(a))
}

fn mobius_quotient(b: &[BigInt], n: usize) -> Rational {
    let s: BigInt = divisors(n)
        .into_iter()
        .map(|d| BigInt::from(mobius(n / d)) * &b[d - 1])
        .sum();
    Rational::new(s, BigInt::from(n))
}

fn mobius_divide(b: &[BigInt], nonnegative: bool) -> Result<IntSeries> {
    let mut out = Vec::with_capacity(b.len());
    for n in 1..=b.len() {
        let q = mobius_quotient(b, n);
        if !q.is_integer() {
            return Err(Error::NonIntegral {
                index: n,
                value: q.to_string(),
            });
        }
        if nonnegative && q.is_negative() {
            return Err(Error::Negative {
                index: n,
                value: q.to_string(),
            });
        }
        out.push(q.to_integer());
    }
    Ok(IntSeries { values: out })
}

/// First coefficient where the two sides of a series identity differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Checks `1 - Σ a_n x^n = Π (1 - x^n)^{l_n}` up to `x^order`.
pub fn verify_weigh_identity(
    a: &IntSeries,
    l: &IntSeries,
    order: usize,
) -> std::result::Result<(), Mismatch> {
    let mut lhs = vec![BigInt::zero(); order + 1];
    lhs[0] = BigInt::one();
    for (n, v) in lhs.iter_mut().enumerate().skip(1) {
        *v = -a.coeff(n);
    }
    let mut rhs = vec![BigInt::zero(); order + 1];
    rhs[0] = BigInt::one();
    for n in 1..=order {
        let e = l.coeff(n);
        let times = e.magnitude().clone();
        let mut k = num_bigint::BigUint::zero();
        while k < times {
            if e.is_positive() {
                // multiply by 1 - x^n
                for i in (n..=order).rev() {
                    let t = rhs[i - n].clone();
                    rhs[i] -= t;
                }
            } else {
                // multiply by 1 / (1 - x^n)
                for i in n..=order {
                    let t = rhs[i - n].clone();
                    rhs[i] += t;
                }
            }
            k += 1u32;
        }
    }
    match (1..=order).find(|&i| lhs[i] != rhs[i]) {
        Some(index) => Err(Mismatch {
            index,
            lhs: lhs[index].clone(),
            rhs: rhs[index].clone(),
        }),
        None => Ok(()),
    }
}

/// The Möbius function.
pub fn mobius(n: usize) -> i32 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Checks `Σ_{d|n} μ(d) = [n = 1]` for `n <= limit`.
pub fn mobius_self_test(limit: usize) -> bool {
    (1..=limit).all(|n| divisors(n).into_iter().map(mobius).sum::<i32>() == i32::from(n == 1))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Realizability {
    /// Nonnegative integer terms computed before any failure.
    pub witness: IntSeries,
    /// First index where `(1/n) Σ μ(n/d) b_d` fails, with its value.
    pub failure: Option<(usize, Rational)>,
}

impl Realizability {
    pub fn realizable(&self) -> bool {
        self.failure.is_none()
    }
}

/// Whether `(1/n) Σ_{d|n} μ(n/d) b_d` is a nonnegative integer for all
/// `n <= order`.
pub fn exactly_realizable(b: &IntSeries, order: usize) -> Realizability {
    let b = b.truncate(order);
    let mut witness = Vec::new();
    for n in 1..=b.order() {
        let q = mobius_quotient(b.values(), n);
        if !q.is_integer() || q.is_negative() {
            return Realizability {
                witness: IntSeries { values: witness },
                failure: Some((n, q)),
            };
        }
        witness.push(q.to_integer());
    }
    Realizability {
        witness: IntSeries { values: witness },
        failure: None,
    }
}
