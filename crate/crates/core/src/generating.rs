//! Bivariate generating series built from zeta values.

use crate::error::Result;
use crate::eval::Evaluator;
use crate::index::admissible_indices;
use crate::scalar::RealField;
use crate::series::{pow_linear_form, LinearForm, TruncatedSeries1, TruncatedSeries2};
use crate::weighted::s_weighted;

/// `Σ_{m=2}^{D} ζ(m) u^m / m`, the part of `log Γ(1 − u)` beyond the linear term.
pub fn log_gamma_series<T: RealField>(ev: &Evaluator<T>, cap: usize) -> Result<TruncatedSeries1<T>> {
    let mut s = TruncatedSeries1::zero(cap, ev.context());
    for m in 2..=cap as u32 {
        s.set(m as usize, ev.zeta_parts(&[m])?.div_i64(m as i64));
    }
    Ok(s)
}

/// Left side of the two-parameter generating identity:
/// `Σ_{l>n≥1} [S_l^n(x+y, y) + (−1)^n S_l^n(y+x, x) − ((−1)^n x^{l−n} + y^{l−n}) ζ(l)] X^{l−n} Y^n`.
pub fn thm1_lhs_series<T: RealField>(ev: &Evaluator<T>, x: &T, y: &T, cap: usize) -> Result<TruncatedSeries2<T>> {
    let mut out = TruncatedSeries2::zero(cap, ev.context());
    let sum = x.clone() + y;
    for l in 2..=cap as u32 {
        let zl = ev.zeta_parts(&[l])?;
        for n in 1..l {
            let a = s_weighted(ev, l, n, &sum, y)?;
            let b = s_weighted(ev, l, n, &sum, x)?;
            let k = l - n;
            let corr = (x.powi(k) + &y.powi(k)) * &zl;
            let corr_odd = (y.powi(k) - &x.powi(k)) * &zl;
            let c = if n % 2 == 0 { a + &b - &corr } else { a - &b - &corr_odd };
            out.set(k as usize, n as usize, c);
        }
    }
    Ok(out)
}

/// `1 − exp(Σ_{m≥2} ζ(m)[(x^m + y^m)X^m + (1 + (−1)^m)Y^m − (xX + Y)^m − (yX − Y)^m]/m)`.
pub fn thm1_rhs_series<T: RealField>(ev: &Evaluator<T>, x: &T, y: &T, cap: usize) -> Result<TruncatedSeries2<T>> {
    let ctx = ev.context();
    let (zero, one, minus_one) = (ev.int(0), ev.int(1), ev.int(-1));
    let mut arg = TruncatedSeries2::zero(cap, ctx);
    for m in 2..=cap as u32 {
        let mut bracket = pow_linear_form(x, &zero, m, cap)
            .try_add(&pow_linear_form(y, &zero, m, cap))?
            .try_sub(&pow_linear_form(x, &one, m, cap))?
            .try_sub(&pow_linear_form(y, &minus_one, m, cap))?;
        if m % 2 == 0 {
            bracket.add_to(0, m as usize, &ev.int(2));
        }
        let w = ev.zeta_parts(&[m])?.div_i64(m as i64);
        arg = arg.try_add(&bracket.scale(&w))?;
    }
    TruncatedSeries2::one(cap, ctx).try_sub(&arg.exp()?)
}

/// `G(L1, L2, L3) = Σ_{l>n≥1} H_{l,n}(L1, L2) L3^n` with
/// `H_{l,n}(u, v) = Σ ζ(l_1, …, l_n) u^{l_1−1} v^{l−l_1−(n−1)}`.
///
/// With `L1 = xX`, `L2 = yX`, `L3 = Y` the coefficient of `X^{l−n} Y^n`
/// is `S_l^n(x, y)`.
pub fn g_series<T: RealField>(
    ev: &Evaluator<T>,
    l1: &LinearForm<T>,
    l2: &LinearForm<T>,
    l3: &LinearForm<T>,
    cap: usize,
) -> Result<TruncatedSeries2<T>> {
    let ctx = ev.context();
    let up: Vec<_> = (0..=cap as u32).map(|k| pow_linear_form(&l1.a, &l1.b, k, cap)).collect();
    let vp: Vec<_> = (0..=cap as u32).map(|k| pow_linear_form(&l2.a, &l2.b, k, cap)).collect();
    let wp: Vec<_> = (0..=cap as u32).map(|k| pow_linear_form(&l3.a, &l3.b, k, cap)).collect();
    // uv[e][f] = L1^e L2^f for e ≥ 1, e + f < cap.
    let mut uv: Vec<Vec<TruncatedSeries2<T>>> = vec![Vec::new(); cap];
    for e in 1..cap {
        for f in 0..cap - e {
            uv[e].push(up[e].try_mul(&vp[f])?);
        }
    }
    let mut out = TruncatedSeries2::zero(cap, ctx);
    for l in 2..=cap as u32 {
        for n in 1..l {
            let k = (l - n) as usize;
            // Coefficient of u^e v^{k−e}, e = l_1 − 1 ranging over 1..=k.
            let mut c = vec![ev.int(0); k + 1];
            for idx in admissible_indices(l, n as usize) {
                let e = (idx.parts()[0] - 1) as usize;
                c[e] += &ev.zeta(&idx)?;
            }
            let mut h = TruncatedSeries2::zero(cap, ctx);
            for (e, ce) in c.iter().enumerate().skip(1) {
                h = h.try_add(&uv[e][k - e].scale(ce))?;
            }
            out = out.try_add(&h.try_mul(&wp[n as usize])?)?;
        }
    }
    Ok(out)
}

/// `Σ_{l,n≥1} ζ(l+n) A^l B^n`.
pub fn zeta_pair_series<T: RealField>(
    ev: &Evaluator<T>,
    a: &LinearForm<T>,
    b: &LinearForm<T>,
    cap: usize,
) -> Result<TruncatedSeries2<T>> {
    let ctx = ev.context();
    let ap: Vec<_> = (0..=cap as u32).map(|k| pow_linear_form(&a.a, &a.b, k, cap)).collect();
    let bp: Vec<_> = (0..=cap as u32).map(|k| pow_linear_form(&b.a, &b.b, k, cap)).collect();
    let mut out = TruncatedSeries2::zero(cap, ctx);
    for l in 1..cap {
        for n in 1..=cap - l {
            let z = ev.zeta_parts(&[(l + n) as u32])?;
            out = out.try_add(&ap[l].try_mul(&bp[n])?.scale(&z))?;
        }
    }
    Ok(out)
}

/// `πz / sin(πz) = 1 + 2 Σ_{l≥2 even} (2^{l−1} − 1)/2^{l−1} ζ(l) z^l` at `z = L`.
pub fn sin_expansion_series<T: RealField>(ev: &Evaluator<T>, form: &LinearForm<T>, cap: usize) -> Result<TruncatedSeries2<T>> {
    let mut one_var = TruncatedSeries1::zero(cap, ev.context());
    one_var.set(0, ev.int(1));
    for l in (2..=cap as u32).step_by(2) {
        let half_pow = 1i64 << (l - 1);
        let c = ev.zeta_parts(&[l])?.mul_i64(2 * (half_pow - 1)).div_i64(half_pow);
        one_var.set(l as usize, c);
    }
    Ok(one_var.compose_linear(form))
}
