//! Named tree families and the closed forms attached to brooms.
//!
//! Labeling conventions:
//! - `Path(n)`: vertices `0..n` in order.
//! - `Star(n)`: center `0`, leaves `1..n`.
//! - `Broom(n, k)`: path `0..k`, then pendants `k..n` hanging off `k-1`.
//! - `DoubleStar(p, q)`: centers `0` and `1`; `p-1` leaves of `0`, then
//!   `q-1` leaves of `1`.
//! - `Caterpillar(c)`: spine `0..m`, then `c[0]` pendants on spine vertex
//!   `0`, `c[1]` on `1`, and so on.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::arith::{int, ratio, BigInt, BigRational, Sqrt2Ext};
use crate::error::{Error, Result};
use crate::graph::Tree;
use crate::permanent::PermanentValue;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Star(usize),
    Broom(usize, usize),
    DoubleStar(usize, usize),
    Caterpillar(Vec<usize>),
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        match self {
            FamilySpec::Path(0) | FamilySpec::Star(0) => bad("order must be at least 1".into()),
            FamilySpec::Broom(n, k) => check_broom(*n, *k),
            FamilySpec::DoubleStar(p, q) if *p < 2 || *q < 2 => {
                bad(format!("double star needs p, q >= 2, got {p}, {q}"))
            }
            FamilySpec::Caterpillar(c) if c.is_empty() => bad("caterpillar needs a spine".into()),
            _ => Ok(()),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Path(n) | FamilySpec::Star(n) | FamilySpec::Broom(n, _) => *n,
            FamilySpec::DoubleStar(p, q) => p + q,
            FamilySpec::Caterpillar(c) => c.len() + c.iter().sum::<usize>(),
        }
    }

    pub fn build(&self) -> Result<Tree> {
        self.validate()?;
        let mut edges = Vec::new();
        let n = self.order();
        match self {
            FamilySpec::Path(n) => edges.extend((1..*n).map(|i| (i - 1, i))),
            FamilySpec::Star(n) => edges.extend((1..*n).map(|i| (0, i))),
            FamilySpec::Broom(n, k) => {
                edges.extend((1..*k).map(|i| (i - 1, i)));
                edges.extend((*k..*n).map(|i| (k - 1, i)));
            }
            FamilySpec::DoubleStar(p, q) => {
                edges.push((0, 1));
                edges.extend((0..p - 1).map(|i| (0, 2 + i)));
                edges.extend((0..q - 1).map(|i| (1, 1 + p + i)));
            }
            FamilySpec::Caterpillar(c) => {
                let m = c.len();
                edges.extend((1..m).map(|i| (i - 1, i)));
                let mut next = m;
                for (spine, &count) in c.iter().enumerate() {
                    for _ in 0..count {
                        edges.push((spine, next));
                        next += 1;
                    }
                }
            }
        }
        Tree::from_edges(n, edges)
    }
}

/// Parses `path:N`, `star:N`, `broom:N,K`, `dstar:P,Q`, `cat:c1,...,cm`.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(s.to_string());
        let (kind, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let spec = match (kind.trim(), nums.as_slice()) {
            ("path", [n]) => FamilySpec::Path(*n),
            ("star", [n]) => FamilySpec::Star(*n),
            ("broom", [n, k]) => FamilySpec::Broom(*n, *k),
            ("dstar", [p, q]) => FamilySpec::DoubleStar(*p, *q),
            ("cat", c) if !c.is_empty() => FamilySpec::Caterpillar(c.to_vec()),
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Star(n) => write!(f, "star:{n}"),
            FamilySpec::Broom(n, k) => write!(f, "broom:{n},{k}"),
            FamilySpec::DoubleStar(p, q) => write!(f, "dstar:{p},{q}"),
            FamilySpec::Caterpillar(c) => {
                let parts: Vec<String> = c.iter().map(usize::to_string).collect();
                write!(f, "cat:{}", parts.join(","))
            }
        }
    }
}

/// Brooms need `n > k >= 2`; `n = k` would have no pendant edge.
fn check_broom(n: usize, k: usize) -> Result<()> {
    if k >= 2 && n > k {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!(
            "broom needs n > k >= 2, got n={n}, k={k}"
        )))
    }
}

pub fn broom(n: usize, k: usize) -> Result<Tree> {
    FamilySpec::Broom(n, k).build()
}

pub fn path(n: usize) -> Tree {
    FamilySpec::Path(n.max(1)).build().expect("paths are valid")
}

pub fn star(n: usize) -> Tree {
    FamilySpec::Star(n.max(1)).build().expect("stars are valid")
}

/// `per Q_k`, with `Q_k` the tridiagonal matrix `L(P_{k+1})` minus its first
/// row and column: `q_0 = q_1 = 1`, `q_k = 2 q_{k-1} + q_{k-2}`.
pub fn pell_q(k: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    for _ in 0..k {
        let next = &b * 2 + &a;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `(1 + sqrt2)^k / 2 + (1 - sqrt2)^k / 2`, evaluated in `Q(sqrt 2)`.
pub fn pell_q_binet(k: u32) -> Sqrt2Ext {
    let half = ratio(1, 2);
    let up = Sqrt2Ext::silver().pow(k);
    let down = Sqrt2Ext::silver().conjugate().pow(k);
    (&up + &down).scale(&half)
}

/// `per L(B(n,k)) = (2n - 2k + 1) per Q_{k-1} + per Q_{k-2}`.
pub fn broom_permanent(n: usize, k: usize) -> Result<PermanentValue> {
    check_broom(n, k)?;
    Ok(BigInt::from(2 * (n - k) + 1) * pell_q(k - 1) + pell_q(k - 2))
}

/// `PD(B(n,k)) = (n - k + 1) 2^{k-2}`.
pub fn broom_pd(n: usize, k: usize) -> Result<BigInt> {
    check_broom(n, k)?;
    Ok(BigInt::from(n - k + 1) << (k - 2))
}

/// The closed-form lower bound on `pi(T)` over trees with `n` vertices and
/// diameter at least `k`:
///
/// `[1 + s - s/(2m)] ((1+s)/2)^{k-2} + [1 - s + s/(2m)] ((1-s)/2)^{k-2}`
///
/// with `s = sqrt 2` and `m = n - k + 1`. The two terms are conjugate, so the
/// sum is rational; a nonzero `sqrt 2` part would be a bug.
pub fn theorem_bound(n: usize, k: usize) -> Result<BigRational> {
    check_broom(n, k)?;
    let m = (n - k + 1) as i64;
    // 1 + sqrt2 * (1 - 1/(2m))
    let coeff = Sqrt2Ext::new(int(1), int(1) - ratio(1, 2 * m));
    let base = Sqrt2Ext::new(ratio(1, 2), ratio(1, 2));
    let e = u32::try_from(k - 2).map_err(|_| Error::InvalidSpec(format!("k={k} too large")))?;
    let term = &coeff * &base.pow(e);
    (&term + &term.conjugate()).as_rational()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;
    use crate::matching::{laplacian_ratio, tree_permanent};
    use crate::permanent::naive;

    #[test]
    fn build_examples() {
        let b = broom(5, 3).unwrap();
        assert_eq!(b.edges(), &[(0, 1), (1, 2), (2, 3), (2, 4)]);
        let ds = FamilySpec::DoubleStar(2, 2).build().unwrap();
        assert_eq!(canonical_code(&ds), canonical_code(&path(4)));
        let cat = FamilySpec::Caterpillar(vec![0, 0, 0]).build().unwrap();
        assert_eq!(cat, path(3));
    }

    #[test]
    fn build_shapes() {
        let ds = FamilySpec::DoubleStar(3, 4).build().unwrap();
        assert_eq!(ds.degrees(), vec![3, 4, 1, 1, 1, 1, 1]);
        let cat = FamilySpec::Caterpillar(vec![1, 0, 2]).build().unwrap();
        assert_eq!(cat.degrees(), vec![2, 2, 3, 1, 1, 1]);
        assert_eq!(star(1).order(), 1);
        assert_eq!(FamilySpec::Star(2).build().unwrap(), path(2));
    }

    #[test]
    fn invalid_specs() {
        for bad in [
            FamilySpec::Broom(4, 4),
            FamilySpec::Broom(5, 1),
            FamilySpec::DoubleStar(1, 3),
            FamilySpec::Path(0),
            FamilySpec::Caterpillar(vec![]),
        ] {
            assert!(matches!(bad.build(), Err(Error::InvalidSpec(_))), "{bad:?}");
        }
    }

    #[test]
    fn spec_strings() {
        for s in ["path:5", "star:7", "broom:5,3", "dstar:2,3", "cat:1,0,2"] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "broom:6,4".parse::<FamilySpec>().unwrap(),
            FamilySpec::Broom(6, 4)
        );
        for s in ["broom:4,4", "path", "tree:3", "star:x", "dstar:2", "cat:"] {
            assert!(s.parse::<FamilySpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn pell_examples() {
        assert_eq!(pell_q(0), BigInt::from(1));
        assert_eq!(pell_q(2), BigInt::from(3));
        assert_eq!(pell_q(5), BigInt::from(41));
        assert_eq!(pell_q_binet(2).as_rational().unwrap(), int(3));
    }

    #[test]
    fn pell_matches_tridiagonal_permanent() {
        // Q_k is L(P_{k+1}) with row/column 0 removed.
        for k in 0..=8 {
            let l = path(k + 1).laplacian().strike(&[0]).unwrap().to_matrix();
            assert_eq!(naive(&l).unwrap(), pell_q(k), "k={k}");
        }
    }

    #[test]
    fn broom_examples() {
        assert_eq!(broom_permanent(3, 2).unwrap(), BigInt::from(4));
        assert_eq!(broom_permanent(5, 3).unwrap(), BigInt::from(16));
        assert_eq!(broom_permanent(6, 4).unwrap(), BigInt::from(38));
        assert_eq!(
            broom_permanent(3, 2).unwrap(),
            naive(&star(3).laplacian().to_matrix()).unwrap()
        );
        assert_eq!(broom_pd(5, 3).unwrap(), BigInt::from(6));
        assert_eq!(broom_pd(6, 4).unwrap(), BigInt::from(12));
        for n in 3..10 {
            assert_eq!(broom_pd(n, 2).unwrap(), BigInt::from(n - 1));
        }
        assert!(broom_permanent(4, 4).is_err());
        assert!(broom_pd(4, 1).is_err());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(theorem_bound(5, 3).unwrap(), ratio(8, 3));
        for n in 3..=10 {
            assert_eq!(theorem_bound(n, 2).unwrap(), int(2));
        }
        assert_eq!(theorem_bound(6, 5).unwrap(), ratio(29, 8));
        assert_eq!(
            theorem_bound(6, 5).unwrap(),
            laplacian_ratio(&path(6)).unwrap()
        );
        assert!(theorem_bound(3, 3).is_err());
    }

    #[test]
    fn brooms_agree_with_dp_on_small_grid() {
        for n in 3..=9 {
            for k in 2..n {
                let b = broom(n, k).unwrap();
                assert_eq!(tree_permanent(&b), broom_permanent(n, k).unwrap());
                assert_eq!(b.product_of_degrees().unwrap(), broom_pd(n, k).unwrap());
                assert_eq!(laplacian_ratio(&b).unwrap(), theorem_bound(n, k).unwrap());
                assert_eq!(b.diameter().unwrap(), k);
            }
        }
    }
}
