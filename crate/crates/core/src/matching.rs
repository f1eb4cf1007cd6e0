//! Polynomial-time Laplacian permanents of trees.
//!
//! For a tree `T`, `per L(T) = sum_k N_k` where `N_k` sums, over all
//! `k`-matchings, the product of the degrees (in `T`) of the vertices the
//! matching leaves uncovered. Dividing by `PD(T)` gives `pi_k(T)`, the sum
//! of `1/d(mu)` over `k`-matchings.

use num_traits::Zero;

use crate::arith::{BigInt, BigRational};
use crate::error::Result;
use crate::graph::Tree;
use crate::permanent::PermanentValue;

/// The per-size matching sums `N_k` and the weights `pi_k = N_k / PD(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingWeightVector {
    pub n_k: Vec<BigInt>,
    pub pi_k: Vec<BigRational>,
}

impl MatchingWeightVector {
    pub fn ratio(&self) -> BigRational {
        self.pi_k.iter().fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn permanent(&self) -> BigInt {
        self.n_k.iter().sum()
    }
}

/// Polynomial in the matching size, coefficients indexed by `k`.
type Poly = Vec<BigInt>;

fn add_into(dst: &mut Poly, src: &Poly, shift: usize) {
    if dst.len() < src.len() + shift {
        dst.resize(src.len() + shift, BigInt::zero());
    }
    for (i, c) in src.iter().enumerate() {
        dst[i + shift] += c;
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// `N_k` for `k = 0..`, rooted at `root`. Trailing zeros are dropped, so the
/// length is one more than the matching number (or 0 for `K_1`).
pub fn matching_sums_rooted(t: &Tree, root: usize) -> Vec<BigInt> {
    let n = t.order();
    let deg = t.degrees();

    // BFS order; children processed before parents when reversed.
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    parent[root] = root;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in t.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                order.push(y);
            }
        }
    }

    // Per vertex x, over matchings inside the subtree of x:
    //   open[x]:    x uncovered, weight excludes d(x) (x may still match its parent)
    //   covered[x]: x matched to a child
    // Children are merged one at a time.
    let mut open: Vec<Poly> = vec![vec![BigInt::from(1)]; n];
    let mut covered: Vec<Poly> = vec![Vec::new(); n];
    for &x in order.iter().rev() {
        if x == root {
            break;
        }
        let p = parent[x];
        let mut closed = open[x].iter().map(|c| c * deg[x]).collect::<Poly>();
        add_into(&mut closed, &covered[x], 0);

        let mut new_covered = mul(&covered[p], &closed);
        add_into(&mut new_covered, &mul(&open[p], &open[x]), 1);
        covered[p] = new_covered;
        open[p] = mul(&open[p], &closed);
    }
    let mut total: Poly = open[root].iter().map(|c| c * deg[root]).collect();
    add_into(&mut total, &covered[root], 0);
    trim(total)
}

/// `N_k` rooted at vertex 0.
pub fn matching_sums(t: &Tree) -> Vec<BigInt> {
    matching_sums_rooted(t, 0)
}

/// `N_k` and `pi_k` for `k = 0..=floor(n/2)`. Fails for `K_1`, whose only
/// vertex has degree zero.
pub fn matching_weights(t: &Tree) -> Result<MatchingWeightVector> {
    let pd = t.product_of_degrees()?;
    let mut n_k = matching_sums(t);
    n_k.resize(t.order() / 2 + 1, BigInt::zero());
    let pi_k = n_k
        .iter()
        .map(|c| BigRational::new(c.clone(), pd.clone()))
        .collect();
    Ok(MatchingWeightVector { n_k, pi_k })
}

/// `per L(T)` as `sum_k N_k`. Defined for every tree, including `K_1`
/// (where it is 0).
pub fn tree_permanent(t: &Tree) -> PermanentValue {
    matching_sums(t).into_iter().sum()
}

/// `pi(T) = per L(T) / PD(T)`.
pub fn laplacian_ratio(t: &Tree) -> Result<BigRational> {
    let pd = t.product_of_degrees()?;
    Ok(BigRational::new(tree_permanent(t), pd))
}

/// Size of a maximum matching, by greedily matching leaves to their
/// parents from the bottom up.
pub fn matching_number(t: &Tree) -> usize {
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![0];
    parent[0] = 0;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in t.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                order.push(y);
            }
        }
    }
    let mut matched = vec![false; n];
    let mut count = 0;
    for &x in order.iter().rev() {
        if x == 0 {
            break;
        }
        let p = parent[x];
        if !matched[x] && !matched[p] {
            matched[x] = true;
            matched[p] = true;
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};
    use crate::error::Error;

    fn tree(n: usize, edges: &[(usize, usize)]) -> Tree {
        Tree::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn path(n: usize) -> Tree {
        Tree::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn star(n: usize) -> Tree {
        Tree::from_edges(n, (1..n).map(|i| (0, i))).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn weight_examples() {
        let w = matching_weights(&path(3)).unwrap();
        assert_eq!(w.n_k, ints(&[2, 2]));
        assert_eq!(w.pi_k, vec![int(1), int(1)]);
        let w = matching_weights(&star(4)).unwrap();
        assert_eq!(w.n_k, ints(&[3, 3, 0]));
        assert_eq!(&w.pi_k[..2], &[int(1), int(1)]);
        assert_eq!(matching_weights(&path(4)).unwrap().n_k, ints(&[4, 5, 1]));
    }

    #[test]
    fn permanent_examples() {
        assert_eq!(tree_permanent(&path(4)), BigInt::from(10));
        assert_eq!(tree_permanent(&path(5)), BigInt::from(24));
        let b53 = tree(5, &[(0, 1), (1, 2), (2, 3), (2, 4)]);
        assert_eq!(tree_permanent(&b53), BigInt::from(16));
        assert_eq!(tree_permanent(&path(1)), BigInt::zero());
    }

    #[test]
    fn ratio_examples() {
        for n in 3..12 {
            assert_eq!(laplacian_ratio(&star(n)).unwrap(), int(2));
        }
        assert_eq!(laplacian_ratio(&path(5)).unwrap(), int(3));
        let b64 = tree(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (3, 5)]);
        assert_eq!(laplacian_ratio(&b64).unwrap(), ratio(19, 6));
        assert_eq!(laplacian_ratio(&path(1)), Err(Error::ZeroDegree(0)));
        assert!(matching_weights(&path(1)).is_err());
    }

    #[test]
    fn matching_number_examples() {
        assert_eq!(matching_number(&path(5)), 2);
        assert_eq!(matching_number(&star(6)), 1);
        let ds33 = tree(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]);
        assert_eq!(matching_number(&ds33), 2);
        assert_eq!(matching_number(&path(1)), 0);
    }

    #[test]
    fn weights_shape() {
        let t = tree(7, &[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6)]);
        let w = matching_weights(&t).unwrap();
        assert_eq!(w.n_k.len(), 4);
        assert_eq!(w.pi_k[0], int(1));
        assert_eq!(w.n_k[0], t.product_of_degrees().unwrap());
        for k in matching_number(&t) + 1..w.n_k.len() {
            assert!(w.n_k[k].is_zero());
        }
        assert_eq!(w.ratio(), laplacian_ratio(&t).unwrap());
    }

    #[test]
    fn root_invariance() {
        let t = tree(8, &[(0, 1), (1, 2), (2, 3), (2, 4), (4, 5), (5, 6), (5, 7)]);
        let base = matching_sums_rooted(&t, 0);
        for r in 1..8 {
            assert_eq!(matching_sums_rooted(&t, r), base);
        }
    }
}
