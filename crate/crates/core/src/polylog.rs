//! Multiple polylogarithms as iterated integrals of words.
//!
//! A word is read right to left. Starting from the constant series `1`,
//! the letter `e1` maps `Σ c_m t^m` to `Σ_N (c_0 + … + c_N) t^(N+1)/(N+1)`
//! and the letter `e0` maps it to `Σ c_m t^m / m`. After the last letter
//! the coefficient sequence is summed at `z`.

use crate::error::{MzvError, Result};
use crate::index::{Letter, MultiIndex, Word};
use crate::scalar::RealField;

/// Default bound on `|z|` for series evaluation.
pub const DEFAULT_Z_MAX: f64 = 0.75;

/// Extra terms per unit of depth on top of the geometric estimate.
const DEPTH_PAD: usize = 10;

/// Number of terms `M` so that `|z|^M · M^depth ≤ 10^-(digits+5)`.
pub fn term_count(z_abs: f64, depth: usize, digits: u32) -> usize {
    if z_abs == 0.0 {
        return 0;
    }
    let target = digits as f64 + 5.0;
    let decay = -z_abs.log10();
    let mut m = (target / decay).ceil() as usize + depth * DEPTH_PAD;
    let log_bound = |m: usize| -(m as f64) * decay + depth as f64 * (m as f64).log10();
    while log_bound(m) > -target {
        m += 1 + m / 16;
    }
    m
}

/// Coefficient sequence `c_0..=c_M` of a partially read word.
struct IteratedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: RealField> IteratedSeries<T> {
    fn unit(terms: usize, ctx: &T::Context) -> Self {
        let mut coeffs = vec![T::zero(ctx); terms + 1];
        coeffs[0] = T::one(ctx);
        IteratedSeries { coeffs }
    }

    fn apply(&mut self, letter: Letter) {
        let c = &mut self.coeffs;
        match letter {
            Letter::E1 => {
                let ctx = c[0].context();
                let mut prefix = T::zero(&ctx);
                let mut carry = std::mem::replace(&mut c[0], T::zero(&ctx));
                for n in 1..c.len() {
                    prefix += &carry;
                    carry = std::mem::replace(&mut c[n], prefix.clone().div_i64(n as i64));
                }
            }
            Letter::E0 => {
                debug_assert!(c[0].is_zero(), "e0 applied to a series with a constant term");
                for (m, cm) in c.iter_mut().enumerate().skip(1) {
                    *cm = cm.clone().div_i64(m as i64);
                }
            }
        }
    }

    fn eval(&self, z: &T) -> T {
        let ctx = z.context();
        let mut acc = T::zero(&ctx);
        for c in self.coeffs.iter().rev() {
            acc *= z;
            acc += c;
        }
        acc
    }
}

/// Values after each letter of `letters` is applied, in processing order.
///
/// `letters` lists the word from its last letter to its first, so entry
/// `k` is the value of the length-`k+1` suffix. The first letter must be `e1`.
pub(crate) fn running_values<T: RealField>(
    letters: impl IntoIterator<Item = Letter>,
    z: &T,
    terms: usize,
) -> Vec<T> {
    let ctx = z.context();
    let mut series = IteratedSeries::unit(terms, &ctx);
    letters
        .into_iter()
        .map(|l| {
            series.apply(l);
            series.eval(z)
        })
        .collect()
}

fn check_argument<T: RealField>(z: &T, z_max: f64) -> Result<()> {
    let abs = z.abs().to_f64();
    if abs > z_max {
        return Err(MzvError::ArgumentOutOfRange { abs, limit: z_max });
    }
    Ok(())
}

/// Iterated integral of `word` from 0 to `z`.
pub fn li_word<T: RealField>(word: &Word, z: &T, z_max: f64) -> Result<T> {
    if !word.ends_with_e1() {
        return Err(MzvError::DivergentWord);
    }
    check_argument(z, z_max)?;
    if z.is_zero() {
        return Ok(z.clone());
    }
    let digits = T::digits(&z.context());
    let terms = term_count(z.abs().to_f64(), word.depth(), digits);
    let values = running_values(word.letters().iter().rev().copied(), z, terms);
    Ok(values.into_iter().last().expect("word is nonempty"))
}

/// `Li_{l_1,…,l_n}(z) = Σ_{m_1>…>m_n>0} z^{m_1} / (m_1^{l_1} ⋯ m_n^{l_n})`.
pub fn li_index<T: RealField>(idx: &MultiIndex, z: &T, z_max: f64) -> Result<T> {
    li_word(&idx.to_word(), z, z_max)
}
