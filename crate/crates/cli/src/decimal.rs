//! Fixed-point rendering of exact rationals, for the columns explicitly
//! labelled as decimal.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use permratio::{BigInt, BigRational};

/// `x` rounded half away from zero to `digits` places after the point.
pub fn render(x: &BigRational, digits: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let num = x.numer().abs() * &scale;
    let den = x.denom();
    let (mut q, r) = num.div_rem(den);
    if (r * 2u32) >= *den {
        q += 1u32;
    }
    let (int_part, frac) = q.div_rem(&scale);
    let sign = if x.is_negative() && !(int_part.is_zero() && frac.is_zero()) {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{frac:0>width$}", width = digits as usize)
}
