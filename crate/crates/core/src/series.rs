//! Dense truncated power series in one and two formal variables.
//!
//! Every product discards the terms above the total-degree cap exactly, so
//! with an exact scalar type the ring axioms hold without error.

use crate::error::{MzvError, Result};
use crate::scalar::Scalar;

/// `a X + b Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<T> {
    pub a: T,
    pub b: T,
}

impl<T: Scalar> LinearForm<T> {
    pub fn new(a: T, b: T) -> Self {
        LinearForm { a, b }
    }

    /// Integer-coefficient form, e.g. `(−1, 1)` for `Y − X`.
    pub fn from_ints(a: i64, b: i64, ctx: &T::Context) -> Self {
        LinearForm {
            a: T::from_i64(a, ctx),
            b: T::from_i64(b, ctx),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Truncated series `Σ_{k≤D} c_k t^k` in one variable.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries1<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries1<T> {
    pub fn zero(cap: usize, ctx: &T::Context) -> Self {
        TruncatedSeries1 {
            coeffs: vec![T::zero(ctx); cap + 1],
        }
    }

    pub fn one(cap: usize, ctx: &T::Context) -> Self {
        let mut s = Self::zero(cap, ctx);
        s.coeffs[0] = T::one(ctx);
        s
    }

    /// Builds a series from coefficients `c_0..=c_D`; an empty vector is rejected.
    pub fn from_coeffs(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(MzvError::OutOfRange("series needs at least one coefficient".into()));
        }
        Ok(TruncatedSeries1 { coeffs })
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn context(&self) -> T::Context {
        self.coeffs[0].context()
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn set(&mut self, k: usize, v: T) {
        self.coeffs[k] = v;
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.cap() != other.cap() {
            return Err(MzvError::CapMismatch {
                left: self.cap(),
                right: other.cap(),
            });
        }
        check_context(&self.coeffs[0], &other.coeffs[0])
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b)
            .collect();
        Ok(TruncatedSeries1 { coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let cap = self.cap();
        let mut out = Self::zero(cap, &self.context());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=cap - i].iter().enumerate() {
                out.coeffs[i + j] += &(a.clone() * b);
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn recip(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(MzvError::ZeroConstant);
        }
        let ctx = self.context();
        let mut inv = Self::zero(self.cap(), &ctx);
        inv.coeffs[0] = T::one(&ctx) / c0;
        for k in 1..=self.cap() {
            let mut acc = T::zero(&ctx);
            for j in 1..=k {
                acc += &(self.coeffs[j].clone() * &inv.coeffs[k - j]);
            }
            inv.coeffs[k] = -(acc / c0);
        }
        Ok(inv)
    }

    /// Substitutes `t = aX + bY`, giving a bivariate series with the same cap.
    pub fn compose_linear(&self, form: &LinearForm<T>) -> TruncatedSeries2<T> {
        let cap = self.cap();
        let mut out = TruncatedSeries2::zero(cap, &self.context());
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = pow_linear_form(&form.a, &form.b, m as u32, cap);
            out.add_scaled_in_place(&power, c);
        }
        out
    }
}

/// Bivariate series `Σ c_{i,j} X^i Y^j` with `i + j ≤ D`, stored by total degree.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries2<T> {
    cap: usize,
    coeffs: Vec<T>,
}

#[inline]
fn slot(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

fn check_context<T: Scalar>(a: &T, b: &T) -> Result<()> {
    let (ca, cb) = (a.context(), b.context());
    if ca != cb {
        return Err(MzvError::ContextMismatch(format!("{ca:?} vs {cb:?}")));
    }
    Ok(())
}

impl<T: Scalar> TruncatedSeries2<T> {
    pub fn zero(cap: usize, ctx: &T::Context) -> Self {
        TruncatedSeries2 {
            cap,
            coeffs: vec![T::zero(ctx); slot(0, cap) + 1],
        }
    }

    pub fn one(cap: usize, ctx: &T::Context) -> Self {
        Self::constant(T::one(ctx), cap)
    }

    pub fn constant(c: T, cap: usize) -> Self {
        let mut s = Self::zero(cap, &c.context());
        s.coeffs[0] = c;
        s
    }

    /// The series `aX + bY`.
    pub fn linear(form: &LinearForm<T>, cap: usize) -> Self {
        pow_linear_form(&form.a, &form.b, 1, cap)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn context(&self) -> T::Context {
        self.coeffs[0].context()
    }

    /// Coefficient of `X^i Y^j`; zero above the cap.
    pub fn coeff(&self, i: usize, j: usize) -> T {
        if i + j > self.cap {
            T::zero(&self.context())
        } else {
            self.coeffs[slot(i, j)].clone()
        }
    }

    pub fn coeff_ref(&self, i: usize, j: usize) -> &T {
        &self.coeffs[slot(i, j)]
    }

    /// Sets the coefficient of `X^i Y^j`; writes above the cap are dropped.
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        if i + j <= self.cap {
            self.coeffs[slot(i, j)] = v;
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &T) {
        if i + j <= self.cap {
            self.coeffs[slot(i, j)] += v;
        }
    }

    /// Iterates `(i, j, coefficient)` in order of total degree, then `j`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        (0..=self.cap)
            .flat_map(|d| (0..=d).map(move |j| (d - j, j)))
            .map(move |(i, j)| (i, j, &self.coeffs[slot(i, j)]))
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.cap != other.cap {
            return Err(MzvError::CapMismatch {
                left: self.cap,
                right: other.cap,
            });
        }
        check_context(&self.coeffs[0], &other.coeffs[0])
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        TruncatedSeries2 {
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|c| c.clone() * k).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries2 {
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// `self += k * other`, assuming equal caps.
    fn add_scaled_in_place(&mut self, other: &Self, k: &T) {
        debug_assert_eq!(self.cap, other.cap);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += &(b.clone() * k);
            }
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let cap = self.cap;
        let mut out = Self::zero(cap, &self.context());
        for (i1, j1, a) in self.terms() {
            if a.is_zero() {
                continue;
            }
            let room = cap - i1 - j1;
            for d in 0..=room {
                for j2 in 0..=d {
                    let b = &other.coeffs[slot(d - j2, j2)];
                    if b.is_zero() {
                        continue;
                    }
                    out.coeffs[slot(i1 + d - j2, j1 + j2)] += &(a.clone() * b);
                }
            }
        }
        Ok(out)
    }

    /// Homogeneous part of total degree `d` as a series.
    fn homogeneous(&self, d: usize) -> Self {
        let mut out = Self::zero(self.cap, &self.context());
        for j in 0..=d {
            out.coeffs[slot(d - j, j)] = self.coeffs[slot(d - j, j)].clone();
        }
        out
    }

    /// `exp(s)` truncated at the cap; requires a zero constant term.
    ///
    /// Uses the Euler-operator recurrence `k f_k = Σ_{j=1..k} j s_j f_{k-j}`
    /// on homogeneous components.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(MzvError::NonZeroConstant);
        }
        let ctx = self.context();
        let cap = self.cap;
        let parts: Vec<Self> = (0..=cap).map(|d| self.homogeneous(d)).collect();
        let mut result: Vec<Self> = Vec::with_capacity(cap + 1);
        result.push(Self::one(cap, &ctx));
        for k in 1..=cap {
            let mut acc = Self::zero(cap, &ctx);
            for j in 1..=k {
                let prod = parts[j].try_mul(&result[k - j])?;
                acc.add_scaled_in_place(&prod, &T::from_i64(j as i64, &ctx));
            }
            let inv_k = T::from_ratio(1, k as i64, &ctx);
            result.push(acc.scale(&inv_k));
        }
        let mut out = Self::zero(cap, &ctx);
        for part in &result {
            for (a, b) in out.coeffs.iter_mut().zip(&part.coeffs) {
                *a += b;
            }
        }
        Ok(out)
    }

    /// Largest absolute coefficient difference, with its position.
    pub fn max_abs_diff(&self, other: &Self) -> Result<(T, (usize, usize))> {
        self.compatible(other)?;
        let mut best = T::zero(&self.context());
        let mut at = (0, 0);
        for (i, j, a) in self.terms() {
            let diff = (a.clone() - other.coeff_ref(i, j)).abs();
            if diff > best {
                best = diff;
                at = (i, j);
            }
        }
        Ok((best, at))
    }
}

/// `(aX + bY)^m` by binomial expansion, truncated at `cap`.
pub fn pow_linear_form<T: Scalar>(a: &T, b: &T, m: u32, cap: usize) -> TruncatedSeries2<T> {
    let ctx = a.context();
    let mut out = TruncatedSeries2::zero(cap, &ctx);
    let m = m as usize;
    if m > cap {
        return out;
    }
    let row = binomial_row::<T>(m, &ctx);
    let a_pows = powers(a, m);
    let b_pows = powers(b, m);
    for (k, binom) in row.into_iter().enumerate() {
        let c = binom * &a_pows[m - k] * &b_pows[k];
        out.set(m - k, k, c);
    }
    out
}

/// `[x^0, x^1, …, x^m]`.
pub(crate) fn powers<T: Scalar>(x: &T, m: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(m + 1);
    out.push(T::one(&x.context()));
    for k in 1..=m {
        let next = out[k - 1].clone() * x;
        out.push(next);
    }
    out
}

/// `C(m, 0..=m)` via Pascal additions, exact in any scalar type.
fn binomial_row<T: Scalar>(m: usize, ctx: &T::Context) -> Vec<T> {
    let mut row = vec![T::one(ctx)];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(T::one(ctx));
        for w in row.windows(2) {
            next.push(w[0].clone() + &w[1]);
        }
        next.push(T::one(ctx));
        row = next;
    }
    row
}
