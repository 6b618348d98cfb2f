use std::sync::Arc;

use num_rational::Rational64;

use crate::cache::ZetaCache;
use crate::error::{MzvError, Result};
use crate::index::{MultiIndex, Word};
use crate::polylog::{self, DEFAULT_Z_MAX};
use crate::scalar::RealField;
use crate::zeta;

/// Evaluation context: working precision, shared zeta cache and the
/// polylogarithm argument bound.
#[derive(Clone, Debug)]
pub struct Evaluator<T: RealField> {
    ctx: T::Context,
    cache: Arc<ZetaCache<T>>,
    z_max: f64,
}

impl<T: RealField> Evaluator<T> {
    pub fn new(ctx: T::Context) -> Self {
        Self::with_cache(ctx, Arc::new(ZetaCache::new()))
    }

    pub fn with_cache(ctx: T::Context, cache: Arc<ZetaCache<T>>) -> Self {
        Evaluator {
            ctx,
            cache,
            z_max: DEFAULT_Z_MAX,
        }
    }

    /// Sets the bound on `|z|`; it must lie in `(0, 1)`.
    pub fn with_z_max(mut self, z_max: f64) -> Result<Self> {
        if !(z_max > 0.0 && z_max < 1.0) {
            return Err(MzvError::OutOfRange(format!("z_max must lie in (0, 1), got {z_max}")));
        }
        self.z_max = z_max;
        Ok(self)
    }

    pub fn context(&self) -> &T::Context {
        &self.ctx
    }

    pub fn cache(&self) -> &Arc<ZetaCache<T>> {
        &self.cache
    }

    pub fn z_max(&self) -> f64 {
        self.z_max
    }

    pub fn digits(&self) -> u32 {
        T::digits(&self.ctx)
    }

    /// Verdict tolerance `10^-(P-10)`.
    pub fn tolerance(&self) -> T {
        T::tolerance(&self.ctx)
    }

    pub fn int(&self, v: i64) -> T {
        T::from_i64(v, &self.ctx)
    }

    pub fn ratio(&self, num: i64, den: i64) -> T {
        T::from_ratio(num, den, &self.ctx)
    }

    pub fn rational(&self, q: &Rational64) -> T {
        T::from_rational(q, &self.ctx)
    }

    /// `ζ(idx)`, served from the cache when possible.
    pub fn zeta(&self, idx: &MultiIndex) -> Result<T> {
        if let Some(v) = self.cache.get(idx, &self.ctx) {
            return Ok(v);
        }
        let v: T = zeta::zeta_convolution(idx, &self.ctx)?;
        self.cache.insert(idx.clone(), v.clone());
        Ok(v)
    }

    pub fn zeta_parts(&self, parts: &[u32]) -> Result<T> {
        self.zeta(&MultiIndex::new(parts.to_vec())?)
    }

    /// `ζ(idx)`, or zero when `l_1 = 1`.
    pub fn zeta_or_zero(&self, idx: &MultiIndex) -> Result<T> {
        if idx.is_admissible() {
            self.zeta(idx)
        } else {
            Ok(self.int(0))
        }
    }

    pub fn li(&self, idx: &MultiIndex, z: &T) -> Result<T> {
        polylog::li_index(idx, z, self.z_max)
    }

    pub fn li_word(&self, word: &Word, z: &T) -> Result<T> {
        polylog::li_word(word, z, self.z_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{Precision, Real};

    #[test]
    fn warm_cache_is_bit_identical() {
        let ev = Evaluator::<Real>::new(Precision::default());
        let idx: MultiIndex = "3,1,2".parse().unwrap();
        let cold = ev.zeta(&idx).unwrap();
        let warm = ev.zeta(&idx).unwrap();
        assert_eq!(cold.as_float().to_string_radix(16, None), warm.as_float().to_string_radix(16, None));
        assert_eq!(ev.cache().stats().hits, 1);
        let other = Evaluator::<Real>::new(Precision::default());
        assert_eq!(other.zeta(&idx).unwrap(), cold);
    }

    #[test]
    fn zero_convention_and_bounds() {
        let ev = Evaluator::<Real>::new(Precision::default());
        assert!(ev.zeta_or_zero(&"1,2".parse().unwrap()).unwrap() == ev.int(0));
        assert!(ev.clone().with_z_max(1.0).is_err());
        let ev = ev.with_z_max(0.5).unwrap();
        assert!(ev.li(&MultiIndex::single(2), &ev.ratio(3, 5)).is_err());
    }

    #[test]
    fn double_precision_evaluator() {
        let ev = Evaluator::<f64>::new(());
        let v = ev.zeta(&MultiIndex::single(2)).unwrap();
        assert!((v - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
    }
}
