//! Exact permanents of integer matrices.
//!
//! [`PermanentEngine::ryser`] is the workhorse: inclusion-exclusion over
//! column subsets in Gray-code order, with incremental row sums in machine
//! integers and big-integer accumulation only when a product or partial sum
//! would overflow. [`PermanentEngine::naive`] is the literal sum over the
//! symmetric group, kept as an oracle for small orders.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::BigInt;
use crate::error::{Error, Result};
use crate::graph::{Graph, IntMatrix, LaplacianMatrix};

/// Exact value of a permanent.
pub type PermanentValue = BigInt;

/// Default largest order the Ryser engine accepts.
pub const DEFAULT_ORDER_CAP: usize = 20;

/// Largest order the naive engine accepts.
pub const NAIVE_CAP: usize = 9;

/// Orders at or above this split the subset loop across threads.
const PARALLEL_THRESHOLD: usize = 14;

/// Permanent evaluator with an order cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PermanentEngine {
    cap: usize,
}

impl Default for PermanentEngine {
    fn default() -> Self {
        PermanentEngine {
            cap: DEFAULT_ORDER_CAP,
        }
    }
}

impl PermanentEngine {
    pub fn with_cap(cap: usize) -> Self {
        PermanentEngine { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, order: usize) -> Result<()> {
        if order > self.cap {
            Err(Error::TooLarge {
                order,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    pub fn ryser(&self, m: &IntMatrix) -> Result<PermanentValue> {
        self.check(m.order())?;
        Ok(ryser(m))
    }

    pub fn naive(&self, m: &IntMatrix) -> Result<PermanentValue> {
        naive(m)
    }

    /// Permanent of a (possibly struck) Laplacian.
    pub fn laplacian(&self, l: &LaplacianMatrix) -> Result<PermanentValue> {
        self.ryser(&l.to_matrix())
    }

    /// `per L(G)`.
    pub fn graph(&self, g: &Graph) -> Result<PermanentValue> {
        self.laplacian(&g.laplacian())
    }

    /// `per L_S(G)`: the principal submatrix with the rows and columns of
    /// `struck` removed.
    pub fn struck(&self, g: &Graph, struck: &[usize]) -> Result<PermanentValue> {
        self.laplacian(&g.laplacian().strike(struck)?)
    }

    /// Expansion along row `i`: `sum_j a_ij per A_ij`.
    pub fn expand_row(&self, m: &IntMatrix, i: usize) -> Result<PermanentValue> {
        let n = m.order();
        if i >= n {
            return Err(Error::Index { index: i, order: n });
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            let a = m.get(i, j);
            if a != 0 {
                total += BigInt::from(a) * self.ryser(&m.minor(i, j))?;
            }
        }
        Ok(total)
    }
}

/// Running sum that stays in `i128` until it would overflow.
#[derive(Default)]
struct Accumulator {
    small: i128,
    big: BigInt,
}

impl Accumulator {
    fn add_i128(&mut self, x: i128) {
        match self.small.checked_add(x) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = x;
            }
        }
    }

    fn add_big(&mut self, x: BigInt) {
        self.big += x;
    }

    fn finish(self) -> BigInt {
        self.big + self.small
    }
}

fn row_product(sums: &[i64]) -> std::result::Result<i128, BigInt> {
    let mut p: i128 = 1;
    for (idx, &s) in sums.iter().enumerate() {
        if s == 0 {
            return Ok(0);
        }
        match p.checked_mul(s as i128) {
            Some(q) => p = q,
            None => {
                let mut big = BigInt::from(p);
                for &t in &sums[idx..] {
                    big *= t;
                }
                return Err(big);
            }
        }
    }
    Ok(p)
}

/// Gray-code Ryser sum over subset indices `start..end` (indices into the
/// Gray sequence, `start >= 1`).
fn ryser_range(m: &IntMatrix, start: u64, end: u64) -> BigInt {
    let n = m.order();
    let mut sums = vec![0i64; n];
    let gray = start ^ (start >> 1);
    for j in 0..n {
        if gray >> j & 1 == 1 {
            for (i, s) in sums.iter_mut().enumerate() {
                *s += m.get(i, j);
            }
        }
    }
    let mut subset_size = gray.count_ones() as usize;
    let mut acc = Accumulator::default();
    let mut idx = start;
    loop {
        // (-1)^{n - |S|} prod_i r_i(S)
        let negative = (n - subset_size) % 2 == 1;
        match row_product(&sums) {
            Ok(p) => acc.add_i128(if negative { -p } else { p }),
            Err(big) => acc.add_big(if negative { -big } else { big }),
        }
        idx += 1;
        if idx >= end {
            break;
        }
        let j = idx.trailing_zeros() as usize;
        let entering = (idx ^ (idx >> 1)) >> j & 1 == 1;
        for (i, s) in sums.iter_mut().enumerate() {
            let a = m.get(i, j);
            if entering {
                *s += a;
            } else {
                *s -= a;
            }
        }
        if entering {
            subset_size += 1;
        } else {
            subset_size -= 1;
        }
    }
    acc.finish()
}

/// Ryser's formula, `per A = (-1)^n sum_S (-1)^{|S|} prod_i sum_{j in S} a_ij`.
/// No cap is applied here; the empty matrix has permanent 1.
pub fn ryser(m: &IntMatrix) -> BigInt {
    let n = m.order();
    if n == 0 {
        return BigInt::one();
    }
    let total: u64 = 1 << n;
    if n < PARALLEL_THRESHOLD {
        return ryser_range(m, 1, total);
    }
    // Exact partial sums, so the split cannot change the result.
    let chunks: u64 = 64;
    let step = total / chunks;
    (0..chunks)
        .into_par_iter()
        .map(|c| ryser_range(m, (c * step).max(1), (c + 1) * step))
        .reduce(BigInt::zero, |a, b| a + b)
}

/// The defining sum over all permutations, skipping zero entries.
pub fn naive(m: &IntMatrix) -> Result<BigInt> {
    let n = m.order();
    if n > NAIVE_CAP {
        return Err(Error::TooLarge {
            order: n,
            cap: NAIVE_CAP,
        });
    }
    let mut total = BigInt::zero();
    naive_rec(m, 0, 0, BigInt::one(), &mut total);
    Ok(total)
}

fn naive_rec(m: &IntMatrix, row: usize, used: u32, prod: BigInt, total: &mut BigInt) {
    if row == m.order() {
        *total += prod;
        return;
    }
    for col in 0..m.order() {
        let a = m.get(row, col);
        if used >> col & 1 == 0 && a != 0 {
            naive_rec(m, row + 1, used | 1 << col, &prod * a, total);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn star(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (0, i))).unwrap()
    }

    fn both(m: &IntMatrix) -> (BigInt, BigInt) {
        (ryser(m), naive(m).unwrap())
    }

    #[test]
    fn ryser_examples() {
        let e = PermanentEngine::default();
        let l2 = IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]);
        assert_eq!(e.ryser(&l2).unwrap(), BigInt::from(2));
        assert_eq!(e.ryser(&IntMatrix::identity(5)).unwrap(), BigInt::one());
        assert_eq!(e.graph(&path(3)).unwrap(), BigInt::from(4));
    }

    #[test]
    fn naive_examples() {
        assert_eq!(
            naive(&star(4).laplacian().to_matrix()).unwrap(),
            BigInt::from(6)
        );
        assert_eq!(
            naive(&path(4).laplacian().to_matrix()).unwrap(),
            BigInt::from(10)
        );
        assert_eq!(naive(&IntMatrix::identity(0)).unwrap(), BigInt::one());
        assert_eq!(ryser(&IntMatrix::identity(0)), BigInt::one());
    }

    #[test]
    fn caps() {
        let e = PermanentEngine::with_cap(3);
        assert_eq!(
            e.ryser(&IntMatrix::identity(4)),
            Err(Error::TooLarge { order: 4, cap: 3 })
        );
        assert!(matches!(
            naive(&IntMatrix::identity(10)),
            Err(Error::TooLarge { order: 10, cap: 9 })
        ));
    }

    #[test]
    fn all_ones_is_factorial() {
        let ones = |n: usize| IntMatrix::from_vec(n, vec![1; n * n]);
        let mut fact = BigInt::one();
        for n in 1..=9 {
            fact *= n;
            let (r, nv) = both(&ones(n));
            assert_eq!(r, fact);
            assert_eq!(nv, fact);
        }
        // Parallel path: 15! = 1307674368000.
        assert_eq!(ryser(&ones(15)), BigInt::from(1_307_674_368_000u64));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let n = 6;
        let m = IntMatrix::from_vec(n, vec![1i64 << 40; n * n]);
        let expected = BigInt::from(720) * BigInt::from(1i64 << 40).pow(6);
        assert_eq!(ryser(&m), expected);
        assert_eq!(naive(&m).unwrap(), expected);
    }

    #[test]
    fn row_expansion_examples() {
        let e = PermanentEngine::default();
        let l2 = path(2).laplacian().to_matrix();
        assert_eq!(e.expand_row(&l2, 0).unwrap(), BigInt::from(2));
        let l3 = path(3).laplacian().to_matrix();
        assert_eq!(e.expand_row(&l3, 1).unwrap(), naive(&l3).unwrap());
        let b53 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        let l = b53.laplacian().to_matrix();
        for i in 0..5 {
            assert_eq!(e.expand_row(&l, i).unwrap(), BigInt::from(16));
        }
        assert!(matches!(e.expand_row(&l, 5), Err(Error::Index { .. })));
    }

    #[test]
    fn struck_permanents() {
        let e = PermanentEngine::default();
        assert_eq!(e.struck(&path(3), &[0]).unwrap(), BigInt::from(3));
        assert_eq!(e.struck(&path(3), &[0, 1, 2]).unwrap(), BigInt::one());
    }

    #[test]
    fn random_small_matrices_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.random_range(0..=7);
            let data = (0..n * n).map(|_| rng.random_range(-1..=1)).collect();
            let m = IntMatrix::from_vec(n, data);
            let (r, nv) = both(&m);
            assert_eq!(r, nv, "{m:?}");
        }
    }

    #[test]
    fn block_diagonal_is_multiplicative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let (na, nb) = (rng.random_range(0..=4), rng.random_range(0..=4));
            let mut block = |n: usize| {
                IntMatrix::from_vec(n, (0..n * n).map(|_| rng.random_range(-2..=3)).collect())
            };
            let a = block(na);
            let b = block(nb);
            assert_eq!(ryser(&a.direct_sum(&b)), ryser(&a) * ryser(&b));
        }
    }
}
