//! Multiple zeta values: Hölder convolution at 1/2 and the direct
//! truncated series.

use crate::error::{MzvError, Result};
use crate::index::MultiIndex;
use crate::polylog::{running_values, term_count};
use crate::scalar::RealField;

/// `ζ(idx)` without caching.
///
/// For the word `a_1…a_L` the value is
/// `Σ_j Li(dual(a_1…a_j); 1/2) · Li(a_{j+1}…a_L; 1/2)`. Both families of
/// factors come out of one left-to-right and one right-to-left pass.
pub fn zeta_convolution<T: RealField>(idx: &MultiIndex, ctx: &T::Context) -> Result<T> {
    if !idx.is_admissible() {
        return Err(MzvError::NotAdmissible(idx.to_string()));
    }
    let word = idx.to_word();
    let letters = word.letters();
    let len = letters.len();
    let half = T::from_ratio(1, 2, ctx);
    let terms = term_count(0.5, len, T::digits(ctx));

    // suffix[k-1] = Li(a_{L-k+1}…a_L), prefix[j-1] = Li(dual(a_1…a_j)).
    let suffix = running_values(letters.iter().rev().copied(), &half, terms);
    let prefix = running_values(letters.iter().map(|l| l.swapped()), &half, terms);

    let mut total = suffix[len - 1].clone() + &prefix[len - 1];
    for j in 1..len {
        total += &(prefix[j - 1].clone() * &suffix[len - j - 1]);
    }
    Ok(total)
}

/// Result of the direct truncation.
#[derive(Clone, Debug)]
pub struct NaiveZeta<T> {
    pub value: T,
    /// Rigorous upper bound on the omitted tail `m_1 > M`.
    pub error_bound: T,
}

/// Partial sum of `ζ(idx)` over `m_1 ≤ cutoff`, with a tail bound.
///
/// Uses the nested prefix sums `T_k(m) = T_k(m−1) + m^{−l_k} T_{k+1}(m−1)`,
/// so the cost is `O(cutoff · (depth + max part))`.
pub fn zeta_naive<T: RealField>(idx: &MultiIndex, cutoff: u64, ctx: &T::Context) -> Result<NaiveZeta<T>> {
    if !idx.is_admissible() {
        return Err(MzvError::NotAdmissible(idx.to_string()));
    }
    if cutoff < idx.depth() as u64 {
        return Err(MzvError::OutOfRange(format!(
            "cutoff {cutoff} is below the depth {}",
            idx.depth()
        )));
    }
    let parts = idx.parts();
    let n = parts.len();
    let max_part = *parts.iter().max().expect("nonempty") as usize;
    let one = T::one(ctx);
    let mut acc = vec![T::zero(ctx); n];
    let mut pows = vec![one.clone(); max_part + 1];
    for m in 1..=cutoff {
        let inv = one.clone().div_i64(m as i64);
        for p in 1..=max_part {
            pows[p] = pows[p - 1].clone() * &inv;
        }
        for k in 0..n {
            let term = if k + 1 < n {
                acc[k + 1].clone() * &pows[parts[k] as usize]
            } else {
                pows[parts[k] as usize].clone()
            };
            acc[k] += &term;
        }
    }
    let bound = naive_tail_bound(idx, cutoff);
    Ok(NaiveZeta {
        value: acc.swap_remove(0),
        error_bound: T::from_f64(bound, ctx),
    })
}

/// Upper bound on `Σ_{m_1 > M}` of the terms of `ζ(idx)`.
///
/// The inner sums are bounded by `H_{m−1}^{n−1}/(n−1)! ≤ (1 + ln m)^{n−1}/(n−1)!`,
/// and the outer sum by the integral of `t^{−s}(1 + ln t)^k` from `M`
/// once the integrand decreases.
pub fn naive_tail_bound(idx: &MultiIndex, cutoff: u64) -> f64 {
    let s = idx.parts()[0] as f64;
    let k = idx.depth() as i32 - 1;
    let fact: f64 = (1..=k).map(f64::from).product();
    let f = |t: f64| t.powf(-s) * (1.0 + t.ln()).powi(k);
    // f decreases for t ≥ exp(k/s − 1).
    let turn = (k as f64 / s - 1.0).exp().ceil() as u64;
    let start = cutoff.max(turn);
    let mut head = 0.0;
    for m in cutoff + 1..=start {
        head += f(m as f64);
    }
    let c = s - 1.0;
    let big_m = start as f64;
    let u0 = 1.0 + big_m.ln();
    let mut integral = 0.0;
    let mut falling = 1.0;
    for j in 0..=k {
        integral += falling * u0.powi(k - j) / c.powi(j + 1);
        falling *= (k - j) as f64;
    }
    integral *= big_m.powf(1.0 - s);
    // Slack for the double-precision evaluation of the bound itself.
    (head + integral) / fact * (1.0 + 1e-9)
}
