//! Finite-difference estimate of `Ψ = ∂²/∂y² − ∂²/∂x∂y` at `x = y = 1`.

use crate::error::Result;
use crate::scalar::RealField;

/// Plain central stencils with step `h`: the 3-point `∂²/∂y²` minus the
/// 4-point cross `∂²/∂x∂y`. Truncation error is `O(h²)`.
pub fn psi_stencil<T, F>(f: F, h: &T) -> Result<T>
where
    T: RealField,
    F: Fn(&T, &T) -> Result<T>,
{
    let ctx = h.context();
    let one = T::one(&ctx);
    let up = one.clone() + h;
    let down = one.clone() - h;
    let yy = f(&one, &up)? - &f(&one, &one)?.mul_i64(2) + &f(&one, &down)?;
    let xy = f(&up, &up)? - &f(&up, &down)? - &f(&down, &up)? + &f(&down, &down)?;
    let h2 = h.clone() * h;
    Ok((yy - &xy.div_i64(4)) / h2)
}

/// `Ψ[f]` from the stencils at `h` and `h/2` combined by one Richardson
/// step, which cancels the `h²` term and leaves `O(h⁴)`.
pub fn psi_finite_difference<T, F>(f: F, h: &T) -> Result<T>
where
    T: RealField,
    F: Fn(&T, &T) -> Result<T>,
{
    let coarse = psi_stencil(&f, h)?;
    let fine = psi_stencil(&f, &h.clone().div_i64(2))?;
    Ok((fine.mul_i64(4) - &coarse).div_i64(3))
}
