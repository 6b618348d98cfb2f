//! Weighted sums of multiple zeta values and polylogarithms.
//!
//! `S_l^n(x, y) = Σ x^{l_1−1} y^{l−l_1−(n−1)} ζ(l_1, …, l_n)` over admissible
//! indices of weight `l` and depth `n`, enumerated lexicographically.
//! `0^0` is taken to be 1 throughout.

use crate::error::{MzvError, Result};
use crate::eval::Evaluator;
use crate::index::{admissible_indices, compositions, MultiIndex};
use crate::scalar::RealField;
use crate::series::powers;

/// `m (m−1) ⋯ (m−k+1)`, zero when `m < k`.
pub fn pochhammer_desc(m: u64, k: u32) -> u64 {
    if m < k as u64 {
        return 0;
    }
    (0..k as u64).map(|i| m - i).product()
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn check_weight_depth(l: u32, n: u32) -> Result<()> {
    if n == 0 || l <= n {
        return Err(MzvError::OutOfRange(format!("need l > n >= 1, got l={l}, n={n}")));
    }
    Ok(())
}

/// `S_l^n(x, y)`; for `n = 1` this is `x^{l−1} ζ(l)`.
pub fn s_weighted<T: RealField>(ev: &Evaluator<T>, l: u32, n: u32, x: &T, y: &T) -> Result<T> {
    s_derivative(ev, l, n, 0, 0, x, y)
}

/// `T_l(x, y) = Σ_{j=2}^{l−1} x^{j−1} y^{l−j−1} ζ(j, l−j)`.
pub fn t_double<T: RealField>(ev: &Evaluator<T>, l: u32, x: &T, y: &T) -> Result<T> {
    if l < 3 {
        return Err(MzvError::OutOfRange(format!("T_l needs l >= 3, got {l}")));
    }
    let xp = powers(x, l as usize);
    let yp = powers(y, l as usize);
    let mut acc = ev.int(0);
    for j in 2..l {
        let w = xp[(j - 1) as usize].clone() * &yp[(l - j - 1) as usize];
        acc += &(w * &ev.zeta_parts(&[j, l - j])?);
    }
    Ok(acc)
}

/// `Ŝ_l^n(x, y; z)`: like `S_l^n` but over every composition, `l_1 = 1`
/// included, weighting `Li_{l_1,…,l_n}(z)`.
pub fn s_hat_polylog<T: RealField>(ev: &Evaluator<T>, l: u32, n: u32, x: &T, y: &T, z: &T) -> Result<T> {
    if n == 0 || l < n {
        return Err(MzvError::OutOfRange(format!("need l >= n >= 1, got l={l}, n={n}")));
    }
    let xp = powers(x, l as usize);
    let yp = powers(y, l as usize);
    let mut acc = ev.int(0);
    for parts in compositions(l, n as usize) {
        let l1 = parts[0];
        let w = xp[(l1 - 1) as usize].clone() * &yp[(l - l1 - (n - 1)) as usize];
        let li = ev.li(&MultiIndex::new(parts)?, z)?;
        acc += &(w * &li);
    }
    Ok(acc)
}

/// `Z_{l,n,r} = Σ C(l_1+r−1, r) ζ(l_1+r, l_2, …, l_n)` over compositions of
/// `l − r` into `n` parts, with `ζ(1, …) = 0`.
pub fn z_coeff<T: RealField>(ev: &Evaluator<T>, l: u32, n: u32, r: u32) -> Result<T> {
    check_weight_depth(l, n)?;
    if r > l - n {
        return Err(MzvError::OutOfRange(format!("need 0 <= r <= l-n = {}, got r={r}", l - n)));
    }
    let mut acc = ev.int(0);
    for mut parts in compositions(l - r, n as usize) {
        let c = binomial((parts[0] + r - 1) as u64, r as u64);
        parts[0] += r;
        let idx = MultiIndex::new(parts)?;
        if idx.is_admissible() {
            acc += &ev.zeta(&idx)?.mul_i64(c as i64);
        }
    }
    Ok(acc)
}

/// `∂^{p+q} S_l^n / ∂x^p ∂y^q` in closed form.
pub fn s_derivative<T: RealField>(
    ev: &Evaluator<T>,
    l: u32,
    n: u32,
    p: u32,
    q: u32,
    x: &T,
    y: &T,
) -> Result<T> {
    check_weight_depth(l, n)?;
    let xp = powers(x, l as usize);
    let yp = powers(y, l as usize);
    let mut acc = ev.int(0);
    for idx in admissible_indices(l, n as usize) {
        let ex = idx.parts()[0] - 1;
        let ey = l - idx.parts()[0] - (n - 1);
        let c = pochhammer_desc(ex as u64, p) * pochhammer_desc(ey as u64, q);
        if c == 0 {
            continue;
        }
        let w = xp[(ex - p) as usize].clone() * &yp[(ey - q) as usize];
        acc += &(w * &ev.zeta(&idx)?).mul_i64(c as i64);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{Precision, Real};
    use crate::scalar::Scalar;

    fn ev() -> Evaluator<Real> {
        Evaluator::new(Precision::default())
    }

    fn close(ev: &Evaluator<Real>, a: &Real, b: &Real) -> bool {
        (a.clone() - b).abs() < ev.tolerance()
    }

    fn z(ev: &Evaluator<Real>, parts: &[u32]) -> Real {
        ev.zeta_parts(parts).unwrap()
    }

    #[test]
    fn small_integer_helpers() {
        assert_eq!(pochhammer_desc(5, 0), 1);
        assert_eq!(pochhammer_desc(5, 2), 20);
        assert_eq!(pochhammer_desc(1, 2), 0);
        assert_eq!(pochhammer_desc(0, 0), 1);
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(13, 6), 1716);
    }

    #[test]
    fn depth_one_and_sum_formula() {
        let ev = ev();
        let (x, y) = (ev.int(2), ev.int(5));
        let s = s_weighted(&ev, 4, 1, &x, &y).unwrap();
        assert!(close(&ev, &s, &(z(&ev, &[4]).mul_i64(8))));
        let one = ev.int(1);
        let s = s_weighted(&ev, 4, 2, &one, &one).unwrap();
        assert!(close(&ev, &s, &z(&ev, &[4])));
    }

    #[test]
    fn weighted_euler_at_two_one() {
        let ev = ev();
        for l in 3..=8 {
            let s = s_weighted(&ev, l, 2, &ev.int(2), &ev.int(1)).unwrap();
            let expected = z(&ev, &[l]).mul_i64(l as i64 + 1).div_i64(2);
            assert!(close(&ev, &s, &expected), "l={l}");
        }
    }

    #[test]
    fn t_double_matches_depth_two() {
        let ev = ev();
        let (x, y) = (ev.ratio(3, 4), ev.ratio(-5, 8));
        for l in 3..=8 {
            let t = t_double(&ev, l, &x, &y).unwrap();
            let s = s_weighted(&ev, l, 2, &x, &y).unwrap();
            assert!(close(&ev, &t, &s));
        }
        let t = t_double(&ev, 3, &ev.int(1), &ev.int(0)).unwrap();
        assert!(close(&ev, &t, &z(&ev, &[2, 1])));
        assert!(t_double(&ev, 2, &ev.int(1), &ev.int(1)).is_err());
    }

    #[test]
    fn s_hat_small_cases() {
        let ev = ev();
        let half = ev.ratio(1, 2);
        let (x, y) = (ev.ratio(7, 4), ev.int(-3));
        let s = s_hat_polylog(&ev, 2, 1, &x, &y, &half).unwrap();
        let li2 = ev.li(&MultiIndex::single(2), &half).unwrap();
        assert!(close(&ev, &s, &(x.clone() * &li2)));
        let s = s_hat_polylog(&ev, 2, 2, &x, &y, &half).unwrap();
        let li1 = ev.li(&MultiIndex::single(1), &half).unwrap();
        assert!(close(&ev, &s, &(li1.clone() * &li1).div_i64(2)));
        assert!(s_hat_polylog(&ev, 2, 3, &x, &y, &half).is_err());
    }

    #[test]
    fn z_coeff_examples() {
        let ev = ev();
        for (l, n) in [(4, 2), (6, 3), (7, 1)] {
            assert!(close(&ev, &z_coeff(&ev, l, n, 0).unwrap(), &z(&ev, &[l])));
        }
        let expected = z(&ev, &[2, 2]) + &z(&ev, &[3, 1]).mul_i64(2);
        assert!(close(&ev, &z_coeff(&ev, 4, 2, 1).unwrap(), &expected));
        assert!(close(&ev, &expected, &z(&ev, &[4]).mul_i64(5).div_i64(4)));
        assert!(close(&ev, &z_coeff(&ev, 3, 2, 1).unwrap(), &z(&ev, &[3])));
        assert!(z_coeff(&ev, 4, 2, 3).is_err());
    }

    #[test]
    fn derivative_examples() {
        let ev = ev();
        let one = ev.int(1);
        let d = s_derivative(&ev, 4, 2, 1, 0, &one, &one).unwrap();
        let expected = z(&ev, &[2, 2]) + &z(&ev, &[3, 1]).mul_i64(2);
        assert!(close(&ev, &d, &expected));
        let (x, y) = (ev.ratio(1, 3), ev.ratio(5, 2));
        let d = s_derivative(&ev, 7, 3, 0, 0, &x, &y).unwrap();
        assert!(close(&ev, &d, &s_weighted(&ev, 7, 3, &x, &y).unwrap()));
    }

    #[test]
    fn range_errors() {
        let ev = ev();
        let one = ev.int(1);
        assert!(s_weighted(&ev, 3, 3, &one, &one).is_err());
        assert!(s_weighted(&ev, 3, 0, &one, &one).is_err());
    }
}
