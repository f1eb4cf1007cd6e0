//! Tree surgeries that never increase the Laplacian ratio, each returned
//! together with the ratios needed to check the claimed inequality.
//!
//! - [`split_at_edge`] / [`to_pendant_star`]: cut `G1` at an edge `uv` into
//!   `H` (containing `u`) and `T_r` (containing `v`, `r` vertices), then
//!   replace `T_r` by `r` pendant edges at `u` to get `G2`.
//! - [`move_pendants`]: given two degree-2 vertices `u`, `v` of a base tree
//!   carrying `s` and `t` extra pendants, compare against moving all of them
//!   onto one vertex.
//! - [`caterpillarize`]: collapse every branch hanging off a diametral path
//!   into pendants at its attachment vertex.

use std::collections::BTreeSet;

use crate::arith::{ratio, BigRational};
use crate::error::{Error, Result};
use crate::graph::Tree;
use crate::matching::laplacian_ratio;

/// `G1` cut at the edge `uv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDecomposition {
    pub source: Tree,
    pub u: usize,
    pub v: usize,
    /// `G1` labels of `H`, ascending.
    pub h_vertices: Vec<usize>,
    /// `G1` labels of `T_r`, ascending.
    pub tr_vertices: Vec<usize>,
    /// `H` relabeled densely in the order of `h_vertices`.
    pub h: Tree,
    /// `T_r` relabeled densely in the order of `tr_vertices`.
    pub t_r: Tree,
}

impl SplitDecomposition {
    pub fn r(&self) -> usize {
        self.tr_vertices.len()
    }

    /// `T_r` is a star whose center is `v` (true for `r <= 2`).
    pub fn is_star_at_v(&self) -> bool {
        self.source.degree(self.v) == self.r()
    }
}

pub fn split_at_edge(g1: &Tree, u: usize, v: usize) -> Result<SplitDecomposition> {
    if !g1.has_edge(u, v) {
        return Err(Error::NoSuchEdge(u, v));
    }
    let h_vertices: Vec<usize> = g1.side_of(u, v).into_iter().collect();
    let tr_vertices: Vec<usize> = g1.side_of(v, u).into_iter().collect();
    let h = Tree::new(g1.induced(&h_vertices))?;
    let t_r = Tree::new(g1.induced(&tr_vertices))?;
    Ok(SplitDecomposition {
        source: g1.clone(),
        u,
        v,
        h_vertices,
        tr_vertices,
        h,
        t_r,
    })
}

/// `G2`: `H` with `r` pendant edges at `u`. Labels are those of `G1`; each
/// vertex of `T_r` becomes one of the new pendants.
pub fn to_pendant_star(d: &SplitDecomposition) -> Tree {
    let in_h: BTreeSet<usize> = d.h_vertices.iter().copied().collect();
    let mut edges: Vec<(usize, usize)> = d
        .source
        .edges()
        .iter()
        .copied()
        .filter(|(a, b)| in_h.contains(a) && in_h.contains(b))
        .collect();
    edges.extend(d.tr_vertices.iter().map(|&w| (d.u, w)));
    Tree::from_edges(d.source.order(), edges).expect("pendant star is a tree")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiTheta {
    /// Sum of `1/d(e)` over `uv` and the edges of `T_r`, degrees in `G1`.
    pub psi: BigRational,
    /// Sum of `1/d(e)` over the `r` new pendant edges, degrees in `G2`.
    pub theta: BigRational,
}

pub fn psi_theta(d: &SplitDecomposition) -> PsiTheta {
    let g1 = &d.source;
    let inv = |a: usize, b: usize| ratio(1, (g1.degree(a) * g1.degree(b)) as i64);
    let in_tr: BTreeSet<usize> = d.tr_vertices.iter().copied().collect();
    let mut psi = inv(d.u, d.v);
    for &(a, b) in g1.edges() {
        if in_tr.contains(&a) && in_tr.contains(&b) {
            psi += inv(a, b);
        }
    }
    let r = d.r();
    let du_g2 = g1.degree(d.u) + r - 1;
    let theta = ratio(r as i64, du_g2 as i64);
    PsiTheta { psi, theta }
}

/// Closed forms when `T_r` is a star centered at `v` and `u` has degree
/// `du` in `G1`: `psi = 1/(du r) + (r-1)/r`, `theta = r/(du + r - 1)`.
pub fn star_psi_theta(du: usize, r: usize) -> PsiTheta {
    let (du, r) = (du as i64, r as i64);
    PsiTheta {
        psi: ratio(1, du * r) + ratio(r - 1, r),
        theta: ratio(r, du + r - 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCheck {
    pub split: SplitDecomposition,
    pub g2: Tree,
    pub pi_g1: BigRational,
    pub pi_g2: BigRational,
    pub psi_theta: PsiTheta,
    /// `pi(G1) >= pi(G2)`.
    pub verdict: bool,
}

/// Splits `g1` at `uv`, builds `G2`, and compares the two ratios.
pub fn check_split(g1: &Tree, u: usize, v: usize) -> Result<SplitCheck> {
    let split = split_at_edge(g1, u, v)?;
    let g2 = to_pendant_star(&split);
    let pi_g1 = laplacian_ratio(g1)?;
    let pi_g2 = laplacian_ratio(&g2)?;
    let psi_theta = psi_theta(&split);
    let verdict = pi_g1 >= pi_g2;
    Ok(SplitCheck {
        split,
        g2,
        pi_g1,
        pi_g2,
        psi_theta,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PendantMove {
    /// Base tree plus `s` pendants at `u` and `t` at `v`.
    pub t: Tree,
    /// All `s + t` pendants at `u`.
    pub t1: Tree,
    /// All `s + t` pendants at `v`.
    pub t2: Tree,
    pub pi_t: BigRational,
    pub pi_t1: BigRational,
    pub pi_t2: BigRational,
    /// `pi(T) > min(pi(T1), pi(T2))`.
    pub verdict: bool,
}

/// Builds `T`, `T1`, `T2` from `base` and compares their ratios. The base
/// must have at least 4 vertices, `u != v` must both have degree 2, and
/// `s >= t >= 1`. New pendants are labeled after the base vertices.
pub fn move_pendants(base: &Tree, u: usize, v: usize, s: usize, t: usize) -> Result<PendantMove> {
    if base.order() < 4 {
        return Err(Error::InvalidSpec(format!(
            "base tree needs at least 4 vertices, has {}",
            base.order()
        )));
    }
    if t < 1 || s < t {
        return Err(Error::InvalidSpec(format!(
            "need s >= t >= 1, got s={s}, t={t}"
        )));
    }
    for x in [u, v] {
        if x >= base.order() {
            return Err(Error::Index {
                index: x,
                order: base.order(),
            });
        }
        if base.degree(x) != 2 {
            return Err(Error::DegreeMismatch {
                vertex: x,
                expected: 2,
                actual: base.degree(x),
            });
        }
    }
    if u == v {
        return Err(Error::InvalidSpec("u and v must differ".into()));
    }
    let t_tree = base.with_pendants(u, s).with_pendants(v, t);
    let t1 = base.with_pendants(u, s + t);
    let t2 = base.with_pendants(v, s + t);
    let pi_t = laplacian_ratio(&t_tree)?;
    let pi_t1 = laplacian_ratio(&t1)?;
    let pi_t2 = laplacian_ratio(&t2)?;
    let verdict = pi_t > pi_t1.clone().min(pi_t2.clone());
    Ok(PendantMove {
        t: t_tree,
        t1,
        t2,
        pi_t,
        pi_t1,
        pi_t2,
        verdict,
    })
}

/// Checks that `spine` is a path of `t` realizing its diameter.
fn check_diametral(t: &Tree, spine: &[usize]) -> Result<()> {
    let distinct: BTreeSet<usize> = spine.iter().copied().collect();
    if spine.is_empty()
        || distinct.len() != spine.len()
        || spine.iter().any(|&x| x >= t.order())
        || spine.windows(2).any(|w| !t.has_edge(w[0], w[1]))
    {
        return Err(Error::NotAPath);
    }
    let diameter = t.tree_diameter();
    if spine.len() - 1 != diameter {
        return Err(Error::NotDiametral {
            length: spine.len() - 1,
            diameter,
        });
    }
    Ok(())
}

/// Replaces every branch hanging off the diametral path `spine` by as many
/// pendant vertices at its attachment point as the branch has vertices.
/// Labels are preserved: each branch vertex becomes a pendant of the spine
/// vertex its branch hangs from.
pub fn caterpillarize(t: &Tree, spine: &[usize]) -> Result<Tree> {
    check_diametral(t, spine)?;
    let on_spine: BTreeSet<usize> = spine.iter().copied().collect();
    let mut edges: Vec<(usize, usize)> = spine.windows(2).map(|w| (w[0], w[1])).collect();
    for &x in spine {
        for &y in t.neighbors(x).iter().filter(|y| !on_spine.contains(y)) {
            edges.extend(t.side_of(y, x).into_iter().map(|w| (x, w)));
        }
    }
    Tree::from_edges(t.order(), edges)
}

/// `pi(t) - pi(caterpillarize(t))`; nonnegative when the step is sound.
pub fn caterpillar_gap(t: &Tree, spine: &[usize]) -> Result<(Tree, BigRational)> {
    let cat = caterpillarize(t, spine)?;
    let gap = laplacian_ratio(t)? - laplacian_ratio(&cat)?;
    Ok((cat, gap))
}

/// True when every vertex off `spine` is a leaf adjacent to it.
pub fn is_caterpillar_with_spine(t: &Tree, spine: &[usize]) -> bool {
    let on_spine: BTreeSet<usize> = spine.iter().copied().collect();
    (0..t.order())
        .filter(|x| !on_spine.contains(x))
        .all(|x| t.degree(x) == 1 && on_spine.contains(&t.neighbors(x)[0]))
}

/// Convenience: `pi(G1) - pi(G2)`.
pub fn split_gap(check: &SplitCheck) -> BigRational {
    &check.pi_g1 - &check.pi_g2
}
