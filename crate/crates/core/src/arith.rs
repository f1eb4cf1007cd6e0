//! Exact scalars: big integers, reduced rationals and the quadratic field
//! `Q(sqrt 2)`.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`; every
//! `BigRational` produced by that crate is kept in lowest terms with a
//! positive denominator, which is what the exact-equality checks rely on.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Builds the rational `num/den`, reduced.
///
/// Panics if `den` is zero.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
/// The sign sits on the numerator.
pub fn rational_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Inverse of [`rational_to_string`]. Accepts any `p/q` with `q != 0` and
/// normalizes it.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = |msg: &str| Error::Parse {
        line: 1,
        msg: format!("{msg}: {s:?}"),
    };
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| bad("bad numerator"))?;
    let q = BigInt::from_str(q).map_err(|_| bad("bad denominator"))?;
    if q.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(p, q))
}

/// An element `a + b*sqrt(2)` of `Q(sqrt 2)` with rational components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sqrt2Ext {
    pub a: BigRational,
    pub b: BigRational,
}

impl Sqrt2Ext {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Sqrt2Ext { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Sqrt2Ext {
            a,
            b: BigRational::zero(),
        }
    }

    /// `p + q*sqrt(2)` for integers `p`, `q`.
    pub fn from_ints(p: i64, q: i64) -> Self {
        Sqrt2Ext::new(int(p), int(q))
    }

    pub fn zero() -> Self {
        Sqrt2Ext::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Sqrt2Ext::from_ints(1, 0)
    }

    /// `1 + sqrt(2)`.
    pub fn silver() -> Self {
        Sqrt2Ext::from_ints(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The Galois conjugate `a - b*sqrt(2)`.
    pub fn conjugate(&self) -> Self {
        Sqrt2Ext::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `x * conj(x) = a^2 - 2b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - int(2) * &self.b * &self.b
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Sqrt2Ext::new(&self.a * c, &self.b * c)
    }

    /// Square-and-multiply power; `x^0 = 1`.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Sqrt2Ext::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Extracts the rational part of a value known to lie in `Q`.
    pub fn as_rational(&self) -> Result<BigRational> {
        if self.b.is_zero() {
            Ok(self.a.clone())
        } else {
            Err(Error::NonRational)
        }
    }
}

impl fmt::Display for Sqrt2Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{} {} {}*sqrt2",
            rational_to_string(&self.a),
            sign,
            rational_to_string(&self.b.abs())
        )
    }
}

impl<'a> Mul<&'a Sqrt2Ext> for &'a Sqrt2Ext {
    type Output = Sqrt2Ext;

    fn mul(self, rhs: &'a Sqrt2Ext) -> Sqrt2Ext {
        let a = &self.a * &rhs.a + int(2) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &rhs.a * &self.b;
        Sqrt2Ext::new(a, b)
    }
}

impl Mul for Sqrt2Ext {
    type Output = Sqrt2Ext;

    fn mul(self, rhs: Sqrt2Ext) -> Sqrt2Ext {
        &self * &rhs
    }
}

impl<'a> Add<&'a Sqrt2Ext> for &'a Sqrt2Ext {
    type Output = Sqrt2Ext;

    fn add(self, rhs: &'a Sqrt2Ext) -> Sqrt2Ext {
        Sqrt2Ext::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Add for Sqrt2Ext {
    type Output = Sqrt2Ext;

    fn add(self, rhs: Sqrt2Ext) -> Sqrt2Ext {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Sqrt2Ext> for &'a Sqrt2Ext {
    type Output = Sqrt2Ext;

    fn sub(self, rhs: &'a Sqrt2Ext) -> Sqrt2Ext {
        Sqrt2Ext::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Sub for Sqrt2Ext {
    type Output = Sqrt2Ext;

    fn sub(self, rhs: Sqrt2Ext) -> Sqrt2Ext {
        &self - &rhs
    }
}

impl Neg for Sqrt2Ext {
    type Output = Sqrt2Ext;

    fn neg(self) -> Sqrt2Ext {
        Sqrt2Ext::new(-self.a, -self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn half_silver() -> Sqrt2Ext {
        Sqrt2Ext::new(ratio(1, 2), ratio(1, 2))
    }

    #[test]
    fn mul_examples() {
        let s = Sqrt2Ext::silver();
        assert_eq!(&s * &s, Sqrt2Ext::from_ints(3, 2));
        let prod = &half_silver() * &half_silver().conjugate();
        assert_eq!(prod, Sqrt2Ext::new(ratio(-1, 4), int(0)));
        assert!((&Sqrt2Ext::zero() * &s).is_zero());
    }

    #[test]
    fn pow_examples() {
        let s = Sqrt2Ext::silver();
        assert_eq!(s.pow(0), Sqrt2Ext::one());
        assert_eq!(s.pow(3), Sqrt2Ext::from_ints(7, 5));
        assert_eq!(
            half_silver().pow(2),
            Sqrt2Ext::new(ratio(3, 4), ratio(1, 2))
        );
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(Sqrt2Ext::silver().conjugate(), Sqrt2Ext::from_ints(1, -1));
        assert_eq!(
            Sqrt2Ext::from_ints(3, 0).conjugate(),
            Sqrt2Ext::from_ints(3, 0)
        );
        assert_eq!(
            Sqrt2Ext::silver().pow(3).conjugate(),
            Sqrt2Ext::from_ints(7, -5)
        );
    }

    #[test]
    fn as_rational_examples() {
        let x = Sqrt2Ext::from_rational(ratio(8, 3));
        assert_eq!(x.as_rational().unwrap(), ratio(8, 3));
        assert_eq!(Sqrt2Ext::from_ints(2, 0).as_rational().unwrap(), int(2));
        assert_eq!(Sqrt2Ext::silver().as_rational(), Err(Error::NonRational));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational_to_string(&ratio(16, 6)), "8/3");
        assert_eq!(rational_to_string(&ratio(4, 2)), "2");
        assert_eq!(rational_to_string(&ratio(3, -6)), "-1/2");
        assert_eq!(rational_to_string(&int(0)), "0");
        assert_eq!(parse_rational("-10/4").unwrap(), ratio(-5, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-20i64..=20, 1i64..=9).prop_map(|(p, q)| ratio(p, q))
    }

    fn element() -> impl Strategy<Value = Sqrt2Ext> {
        (small_rational(), small_rational()).prop_map(|(a, b)| Sqrt2Ext::new(a, b))
    }

    proptest! {
        #[test]
        fn ring_laws(x in element(), y in element(), z in element()) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn conjugation_is_an_involutive_homomorphism(x in element(), y in element()) {
            prop_assert_eq!(x.conjugate().conjugate(), x.clone());
            prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
            prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
            let n = &x * &x.conjugate();
            prop_assert!(n.is_rational());
            prop_assert_eq!(n.a, x.norm());
        }

        #[test]
        fn results_are_reduced(x in element(), y in element()) {
            let p = &x * &y;
            for c in [&p.a, &p.b] {
                prop_assert!(c.denom().is_positive());
                prop_assert!(num_integer::Integer::gcd(c.numer(), c.denom()).is_one());
            }
        }

        #[test]
        fn string_round_trip(x in small_rational()) {
            prop_assert_eq!(parse_rational(&rational_to_string(&x)).unwrap(), x);
        }
    }
}
