//! Residual computations, one function per identity.
//!
//! Each function returns `(lhs, rhs)`; series identities return the largest
//! coefficient deviation as `lhs` and zero as `rhs`.

use num_rational::Rational64;

use super::psi::psi_finite_difference;
use crate::error::{MzvError, Result};
use crate::eval::Evaluator;
use crate::generating::{g_series, sin_expansion_series, thm1_lhs_series, thm1_rhs_series, zeta_pair_series};
use crate::index::{admissible_indices, compositions, MultiIndex};
use crate::scalar::RealField;
use crate::series::{powers, LinearForm, TruncatedSeries2};
use crate::weighted::{s_derivative, s_hat_polylog, s_weighted, t_double, z_coeff};

pub(crate) type Sides<T> = (T, T);

fn out_of_range(msg: String) -> MzvError {
    MzvError::OutOfRange(msg)
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(out_of_range(msg()))
    }
}

fn sign(n: u32) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `S_l^n(x+y, y) + (−1)^n S_l^n(y+x, x)`.
fn symmetric_pair<T: RealField>(ev: &Evaluator<T>, l: u32, n: u32, x: &T, y: &T) -> Result<T> {
    let sum = x.clone() + y;
    let a = s_weighted(ev, l, n, &sum, y)?;
    let b = s_weighted(ev, l, n, &sum, x)?;
    Ok(if n % 2 == 0 { a + &b } else { a - &b })
}

pub(crate) fn sum_formula<T: RealField>(ev: &Evaluator<T>, l: u32, n: u32) -> Result<Sides<T>> {
    require(n >= 1 && l > n, || format!("SUM_FORMULA needs l > n >= 1, got l={l}, n={n}"))?;
    let mut lhs = ev.int(0);
    for idx in admissible_indices(l, n as usize) {
        lhs += &ev.zeta(&idx)?;
    }
    Ok((lhs, ev.zeta_parts(&[l])?))
}

pub(crate) fn euler_sum<T: RealField>(ev: &Evaluator<T>, l: u32, weighted: bool) -> Result<Sides<T>> {
    require(l >= 3, || format!("needs l >= 3, got {l}"))?;
    let mut lhs = ev.int(0);
    for j in 2..l {
        let z = ev.zeta_parts(&[j, l - j])?;
        lhs += &if weighted { z.mul_i64(1 << j) } else { z };
    }
    let zl = ev.zeta_parts(&[l])?;
    let rhs = if weighted { zl.mul_i64(l as i64 + 1) } else { zl };
    Ok((lhs, rhs))
}

pub(crate) fn gkz_param<T: RealField>(ev: &Evaluator<T>, l: u32, xq: &Rational64, yq: &Rational64) -> Result<Sides<T>> {
    require(l >= 3, || format!("GKZ_PARAM needs l >= 3, got {l}"))?;
    let (x, y) = (ev.rational(xq), ev.rational(yq));
    let sum = x.clone() + &y;
    let lhs = t_double(ev, l, &sum, &y)? + &t_double(ev, l, &sum, &x)?;
    let quotient = if xq == yq {
        x.powi(l - 2).mul_i64(l as i64 - 1)
    } else {
        (x.powi(l - 1) - &y.powi(l - 1)) / (x.clone() - &y)
    };
    let rhs = t_double(ev, l, &x, &y)? + &t_double(ev, l, &y, &x)? + &(quotient * &ev.zeta_parts(&[l])?);
    Ok((lhs, rhs))
}

pub(crate) fn harmonic_double<T: RealField>(ev: &Evaluator<T>, m: u32, n: u32) -> Result<Sides<T>> {
    require(m >= 2 && n >= 2, || format!("HARMONIC_DOUBLE needs m, n >= 2, got m={m}, n={n}"))?;
    let lhs = ev.zeta_parts(&[m])? * &ev.zeta_parts(&[n])?;
    let rhs = ev.zeta_parts(&[m, n])? + &ev.zeta_parts(&[n, m])? + &ev.zeta_parts(&[m + n])?;
    Ok((lhs, rhs))
}

pub(crate) fn duality<T: RealField>(ev: &Evaluator<T>, idx: &MultiIndex) -> Result<Sides<T>> {
    Ok((ev.zeta(idx)?, ev.zeta(&idx.dual()?)?))
}

/// Values `f(k, j)` for the hook indices `(k+1, {1}^{j−1})`.
fn hook_table<T: RealField>(
    kmax: u32,
    jmax: u32,
    mut f: impl FnMut(&MultiIndex) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    (0..=kmax)
        .map(|k| (1..=jmax.max(1)).map(|j| f(&MultiIndex::hook(k, j))).collect())
        .collect()
}

pub(crate) fn lemma_2_1<T: RealField>(
    ev: &Evaluator<T>,
    l: u32,
    n: u32,
    x: &T,
    y: &T,
    z: &T,
) -> Result<Sides<T>> {
    require(n >= 1 && l >= n, || format!("LEMMA_2_1 needs l >= n >= 1, got l={l}, n={n}"))?;
    require(z.abs().to_f64() <= 0.7, || format!("LEMMA_2_1 needs |z| <= 0.7, got {}", z.to_f64()))?;
    let sum = x.clone() + y;
    let a = s_hat_polylog(ev, l, n, &sum, y, z)?;
    let b = s_hat_polylog(ev, l, n, &sum, x, z)?;
    let lhs = a + &b.mul_i64(sign(n));
    let k = l - n;
    let li = hook_table(k, n, |idx| ev.li(idx, z))?;
    let (xp, yp) = (powers(x, k as usize), powers(y, k as usize));
    let mut rhs = ev.int(0);
    for j1 in 1..n {
        let j2 = n - j1;
        let mut inner = ev.int(0);
        for k1 in 0..=k {
            let k2 = k - k1;
            let w = xp[k1 as usize].clone() * &yp[k2 as usize];
            inner += &(w * &li[k1 as usize][(j1 - 1) as usize] * &li[k2 as usize][(j2 - 1) as usize]);
        }
        rhs += &inner.mul_i64(sign(j2 - 1));
    }
    Ok((lhs, rhs))
}

pub(crate) fn prop_2_1<T: RealField>(ev: &Evaluator<T>, l: u32, n: u32, x: &T, y: &T) -> Result<Sides<T>> {
    require(n >= 1 && l > n, || format!("PROP_2_1 needs l > n >= 1, got l={l}, n={n}"))?;
    let k = l - n;
    let (xp, yp) = (powers(x, k as usize), powers(y, k as usize));
    let zl = ev.zeta_parts(&[l])?;
    let lhs = symmetric_pair(ev, l, n, x, y)? - &((xp[k as usize].clone().mul_i64(sign(n)) + &yp[k as usize]) * &zl);
    let zh = hook_table(k, n, |idx| ev.zeta_or_zero(idx))?;
    let mut rhs = ev.int(0);
    for j1 in 1..n {
        let j2 = n - j1;
        let mut inner = ev.int(0);
        for k1 in 1..k {
            let k2 = k - k1;
            let w = xp[k1 as usize].clone() * &yp[k2 as usize];
            inner += &(w * &zh[k1 as usize][(j1 - 1) as usize] * &zh[k2 as usize][(j2 - 1) as usize]);
        }
        rhs += &inner.mul_i64(sign(j2 - 1));
    }
    let edge = xp[k as usize].clone() + &yp[k as usize].clone().mul_i64(sign(n));
    rhs += &(edge * &zh[k as usize][(n - 1) as usize]);
    Ok((lhs, rhs))
}

pub(crate) fn ak_corollary<T: RealField>(ev: &Evaluator<T>, l: u32, n: u32, r: u32) -> Result<Sides<T>> {
    require(n >= 1 && l > n, || format!("AK_COROLLARY needs l > n >= 1, got l={l}, n={n}"))?;
    require(r >= 1 && r < l - n, || format!("AK_COROLLARY needs 1 <= r <= l-n-1, got r={r}"))?;
    let lhs = z_coeff(ev, l, n, r)? + &z_coeff(ev, l, n, l - n - r)?.mul_i64(sign(n));
    let mut rhs = ev.int(0);
    for j1 in 1..n {
        let j2 = n - j1;
        let a = ev.zeta(&MultiIndex::hook(r, j1))?;
        let b = ev.zeta(&MultiIndex::hook(l - n - r, j2))?;
        rhs += &(a * &b).mul_i64(sign(j2 - 1));
    }
    Ok((lhs, rhs))
}

fn series_residual<T: RealField>(ev: &Evaluator<T>, a: &TruncatedSeries2<T>, b: &TruncatedSeries2<T>) -> Result<Sides<T>> {
    let (diff, _) = a.max_abs_diff(b)?;
    Ok((diff, ev.int(0)))
}

pub(crate) fn thm1_series<T: RealField>(ev: &Evaluator<T>, x: &T, y: &T, cap: usize) -> Result<Sides<T>> {
    require(cap >= 2, || format!("series checks need cap >= 2, got {cap}"))?;
    let lhs = thm1_lhs_series(ev, x, y, cap)?;
    let rhs = thm1_rhs_series(ev, x, y, cap)?;
    series_residual(ev, &lhs, &rhs)
}

/// Inverse of `yx(y−x)` applied to `y^{l+1} − x^{l+1}`, written as a
/// polynomial in `x, y, 1/x, 1/y` so that `x = y` is allowed.
fn power_quotient<T: RealField>(ev: &Evaluator<T>, l: u32, x: &T, y: &T) -> T {
    let xp = powers(x, l as usize);
    let yp = powers(y, l as usize);
    let mut acc = xp[(l - 1) as usize].clone() / y + &(yp[(l - 1) as usize].clone() / x);
    for j in 1..l {
        acc += &(yp[(j - 1) as usize].clone() * &xp[(l - j - 1) as usize]);
    }
    let _ = ev;
    acc
}

/// `(y−x)^{l−2} ((1+(−1)^l)(2^{l−1}−1)/2^{l−1} + (−1)^l x/y + y/x)`.
fn even_zeta_term<T: RealField>(ev: &Evaluator<T>, l: u32, x: &T, y: &T) -> T {
    let half_pow = 1i64 << (l - 1);
    let mut bracket = ev.int(0);
    if l % 2 == 0 {
        bracket += &ev.ratio(2 * (half_pow - 1), half_pow);
    }
    bracket += &(x.clone() / y).mul_i64(sign(l));
    bracket += &(y.clone() / x);
    (y.clone() - x).powi(l - 2) * &bracket
}

pub(crate) fn thm_2<T: RealField>(ev: &Evaluator<T>, l: u32, x: &T, y: &T) -> Result<Sides<T>> {
    require(l >= 3, || format!("THM_2 needs l >= 3, got {l}"))?;
    require(!x.is_zero() && !y.is_zero(), || "THM_2 needs x, y != 0".to_string())?;
    let diff = y.clone() - x;
    let mut lhs = ev.int(0);
    for n in 2..l {
        lhs += &(diff.powi(n - 2) * &symmetric_pair(ev, l, n, x, y)?);
    }
    let rhs = (power_quotient(ev, l, x, y) - &even_zeta_term(ev, l, x, y)) * &ev.zeta_parts(&[l])?;
    Ok((lhs, rhs))
}

fn xform<T: RealField>(ev: &Evaluator<T>, a: &T) -> LinearForm<T> {
    LinearForm::new(a.clone(), ev.int(0))
}

pub(crate) fn func_eq_3_2<T: RealField>(ev: &Evaluator<T>, x: &T, y: &T, cap: usize) -> Result<Sides<T>> {
    require(cap >= 2, || format!("series checks need cap >= 2, got {cap}"))?;
    let ctx = ev.context();
    let sum = xform(ev, &(x.clone() + y));
    let plus_y = LinearForm::from_ints(0, 1, ctx);
    let minus_y = LinearForm::from_ints(0, -1, ctx);
    let lhs = g_series(ev, &sum, &xform(ev, y), &plus_y, cap)?
        .try_add(&g_series(ev, &sum, &xform(ev, x), &minus_y, cap)?)?
        .try_sub(&zeta_pair_series(ev, &xform(ev, x), &minus_y, cap)?)?
        .try_sub(&zeta_pair_series(ev, &xform(ev, y), &plus_y, cap)?)?;
    let rhs = thm1_rhs_series(ev, x, y, cap)?;
    series_residual(ev, &lhs, &rhs)
}

pub(crate) fn prop_3_1<T: RealField>(ev: &Evaluator<T>, cap: usize) -> Result<Sides<T>> {
    require(cap >= 2, || format!("series checks need cap >= 2, got {cap}"))?;
    let ctx = ev.context();
    let f = |a, b| LinearForm::<T>::from_ints(a, b, ctx);
    let lhs = g_series(ev, &f(1, 1), &f(0, 1), &f(-1, 1), cap)?
        .try_add(&g_series(ev, &f(1, 1), &f(1, 0), &f(1, -1), cap)?)?;
    let rhs = TruncatedSeries2::one(cap, ctx)
        .try_sub(&sin_expansion_series(ev, &f(-1, 1), cap)?)?
        .try_add(&zeta_pair_series(ev, &f(1, 0), &f(1, -1), cap)?)?
        .try_add(&zeta_pair_series(ev, &f(0, 1), &f(-1, 1), cap)?)?;
    series_residual(ev, &lhs, &rhs)
}

/// Sum over `j_1 + … + j_k = l` with `j_i ≥ mins[i]` of `weight(js) · Π f_i(j_i)`.
fn product_sum<T: RealField>(
    ev: &Evaluator<T>,
    l: u32,
    mins: &[u32],
    weight: impl Fn(&[u32]) -> i64,
    factor: impl Fn(usize, u32) -> T,
) -> T {
    let mut acc = ev.int(0);
    for js in compositions(l, mins.len()) {
        if js.iter().zip(mins).any(|(j, m)| j < m) {
            continue;
        }
        let mut term = ev.int(weight(&js));
        for (i, &j) in js.iter().enumerate() {
            term *= &factor(i, j);
        }
        acc += &term;
    }
    acc
}

/// Single zeta values `ζ(0..=l)` (entries below 2 are unused zeros).
fn single_zetas<T: RealField>(ev: &Evaluator<T>, l: u32) -> Result<Vec<T>> {
    (0..=l)
        .map(|j| if j >= 2 { ev.zeta_parts(&[j]) } else { Ok(ev.int(0)) })
        .collect()
}

pub(crate) fn prop_4_1<T: RealField>(ev: &Evaluator<T>, part: u32, l: u32, x: &T, y: &T) -> Result<Sides<T>> {
    let min_l = part + 2;
    require(l >= min_l, || format!("PROP_4_1 part {part} needs l >= {min_l}, got {l}"))?;
    let z = single_zetas(ev, l)?;
    let (xp, yp) = (powers(x, l as usize), powers(y, l as usize));
    // (x^e − y^e) ζ(j) and (x^e + y^e) ζ(j) with e = j − shift.
    let minus = |j: u32, shift: u32| (xp[(j - shift) as usize].clone() - &yp[(j - shift) as usize]) * &z[j as usize];
    let plus = |j: u32, shift: u32| (xp[(j - shift) as usize].clone() + &yp[(j - shift) as usize]) * &z[j as usize];
    let li = l as i64;
    match part {
        1 => {
            let lhs = symmetric_pair(ev, l, 2, x, y)?;
            let lead = plus(l, 2).mul_i64(li + 1).div_i64(2);
            let pairs = product_sum(ev, l, &[2, 2], |_| 1, |_, j| minus(j, 1));
            Ok((lhs, lead - &pairs.div_i64(2)))
        }
        2 => {
            let lhs = symmetric_pair(ev, l, 3, x, y)?;
            let lead = minus(l, 3).mul_i64((li + 1) * (li - 4)).div_i64(6);
            let pairs = product_sum(ev, l, &[2, 3], |js| js[1] as i64 - 1, |i, j| {
                if i == 0 {
                    minus(j, 1)
                } else {
                    plus(j, 2)
                }
            });
            let triples = product_sum(ev, l, &[2, 2, 2], |_| 1, |_, j| minus(j, 1));
            Ok((lhs, lead - &pairs.div_i64(2) + &triples.div_i64(6)))
        }
        3 => {
            let lhs = symmetric_pair(ev, l, 4, x, y)?;
            let lead = plus(l, 4).mul_i64((li + 1) * (li * li - 7 * li + 18)).div_i64(24);
            let a = product_sum(
                ev,
                l,
                &[2, 4],
                |js| (js[1] as i64 - 1) * (js[1] as i64 - 2),
                |i, j| if i == 0 { minus(j, 1) } else { minus(j, 3) },
            );
            let b = product_sum(ev, l, &[3, 3], |js| (js[0] as i64 - 1) * (js[1] as i64 - 1), |_, j| plus(j, 2));
            let c = product_sum(ev, l, &[2, 2, 3], |js| js[2] as i64 - 1, |i, j| {
                if i < 2 {
                    minus(j, 1)
                } else {
                    plus(j, 2)
                }
            });
            let d = product_sum(ev, l, &[2, 2, 2, 2], |_| 1, |_, j| minus(j, 1));
            let rhs = lead - &a.div_i64(6) - &b.div_i64(8) + &c.div_i64(4) - &d.div_i64(24);
            Ok((lhs, rhs))
        }
        _ => Err(out_of_range(format!("PROP_4_1 has parts 1..=3, got {part}"))),
    }
}

/// `Ψ` applied numerically and the closed form, for one equation of
/// Second-derivative vanishing. `eq = 1` is the depth-`n` vanishing statement.
pub(crate) fn lemma_4_1_i<T: RealField>(ev: &Evaluator<T>, l: u32, eq: u32, n: Option<u32>, h: &T) -> Result<Sides<T>> {
    require(l >= 5, || format!("LEMMA_4_1_I needs l >= 5, got {l}"))?;
    let two = ev.int(2);
    let one = ev.int(1);
    match eq {
        1 => {
            let n = n.ok_or_else(|| out_of_range("LEMMA_4_1_I equation 1 needs n".into()))?;
            require((3..l).contains(&n), || format!("LEMMA_4_1_I needs 3 <= n <= l-1, got n={n}"))?;
            let fd = psi_finite_difference(
                |x, y| Ok((y.clone() - x).powi(n) * &symmetric_pair(ev, l, n, x, y)?),
                h,
            )?;
            Ok((fd, ev.int(0)))
        }
        2 => {
            let fd = psi_finite_difference(
                |x, y| Ok((y.clone() - x).powi(2) * &symmetric_pair(ev, l, 4, x, y)?),
                h,
            )?;
            Ok((fd, s_weighted(ev, l, 4, &two, &one)?.mul_i64(8)))
        }
        3 => {
            let fd = psi_finite_difference(|x, y| Ok((y.clone() - x) * &symmetric_pair(ev, l, 3, x, y)?), h)?;
            Ok((fd, s_derivative(ev, l, 3, 0, 1, &two, &one)?.mul_i64(4)))
        }
        4 => {
            let fd = psi_finite_difference(|x, y| symmetric_pair(ev, l, 2, x, y), h)?;
            Ok((fd, s_derivative(ev, l, 2, 0, 2, &two, &one)?))
        }
        _ => Err(out_of_range(format!("LEMMA_4_1_I has equations 1..=4, got {eq}"))),
    }
}

pub(crate) fn lemma_4_1_ii<T: RealField>(ev: &Evaluator<T>, l: u32, eq: u32, h: &T) -> Result<Sides<T>> {
    require(l >= 5, || format!("LEMMA_4_1_II needs l >= 5, got {l}"))?;
    let li = l as i64;
    match eq {
        1 => {
            let fd = psi_finite_difference(|x, y| Ok(power_quotient(ev, l, x, y)), h)?;
            Ok((fd, ev.ratio((li + 1) * (li * li - li + 6), 6)))
        }
        2 => {
            let fd = psi_finite_difference(|x, y| Ok(even_zeta_term(ev, l, x, y)), h)?;
            Ok((fd, ev.int(0)))
        }
        _ => Err(out_of_range(format!("LEMMA_4_1_II has equations 1..=2, got {eq}"))),
    }
}

/// `Σ w(idx) ζ(idx)` over admissible indices of weight `l`, depth `n`.
fn weighted_zeta_sum<T: RealField>(ev: &Evaluator<T>, l: u32, n: usize, w: impl Fn(&[u32]) -> i64) -> Result<T> {
    let mut acc = ev.int(0);
    for idx in admissible_indices(l, n) {
        let c = w(idx.parts());
        if c != 0 {
            acc += &ev.zeta(&idx)?.mul_i64(c);
        }
    }
    Ok(acc)
}

pub(crate) fn prop_4_2<T: RealField>(ev: &Evaluator<T>, part: u32, l: u32) -> Result<Sides<T>> {
    require(l >= 5, || format!("PROP_4_2 needs l >= 5, got {l}"))?;
    let li = l as i64;
    let zl = ev.zeta_parts(&[l])?;
    let pow2 = |p: &[u32]| 1i64 << (p[0] - 1);
    let depth4 = weighted_zeta_sum(ev, l, 4, pow2)?;
    match part {
        1 => {
            let lhs = zl.mul_i64((li + 1) * (li * li - li + 6)).div_i64(48);
            let depth3 = weighted_zeta_sum(ev, l, 3, |p| (li - p[0] as i64 - 2) * pow2(p))?;
            let depth2 = weighted_zeta_sum(ev, l, 2, |p| {
                let r = li - p[0] as i64;
                (r - 1) * (r - 2) * pow2(p)
            })?;
            Ok((lhs, depth4 + &depth3.div_i64(2) + &depth2.div_i64(8)))
        }
        2 => {
            let lhs = zl.mul_i64((li + 1) * (li * li - 7 * li + 18)).div_i64(24);
            let z = single_zetas(ev, l)?;
            let pairs = product_sum(ev, l, &[3, 3], |js| (js[0] as i64 - 1) * (js[1] as i64 - 1), |_, j| {
                z[j as usize].clone()
            });
            Ok((lhs, depth4 + &pairs.div_i64(4)))
        }
        _ => Err(out_of_range(format!("PROP_4_2 has parts 1..=2, got {part}"))),
    }
}

pub(crate) fn guo_xie_d4<T: RealField>(ev: &Evaluator<T>, l: u32) -> Result<Sides<T>> {
    require(l >= 5, || format!("GUO_XIE_D4 needs l >= 5, got {l}"))?;
    let lhs = ev.zeta_parts(&[l])?.mul_i64(l as i64);
    let rhs = weighted_zeta_sum(ev, l, 4, |p| {
        let a = 1i64 << (p[0] - 1);
        a + (a - 1) * ((1i64 << (p[1] - 1)) + (1i64 << (p[1] + p[2] - 1)))
    })?;
    Ok((lhs, rhs))
}
