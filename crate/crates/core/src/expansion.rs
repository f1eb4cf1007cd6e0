//! Evaluators for the right-hand sides of the Laplacian permanent expansion
//! identities. Each returns a value the caller compares against a direct
//! permanent, so every identity doubles as a cross-check of the engines.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::arith::BigInt;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::permanent::{PermanentEngine, PermanentValue};

/// Simple cycles (length >= 3), each stored once as a vertex sequence that
/// starts at the anchor vertex, in the lexicographically smaller of its
/// two directions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleSet {
    pub cycles: Vec<Vec<usize>>,
}

impl CycleSet {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.cycles.iter()
    }
}

/// All simple cycles of `g` through `v`, by DFS over simple paths from `v`.
pub fn cycles_through_vertex(g: &Graph, v: usize) -> CycleSet {
    let mut found = BTreeSet::new();
    let mut path = vec![v];
    let mut on_path = vec![false; g.order()];
    on_path[v] = true;
    extend_paths(g, v, &mut path, &mut on_path, &mut found);
    CycleSet {
        cycles: found.into_iter().collect(),
    }
}

fn extend_paths(
    g: &Graph,
    anchor: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    found: &mut BTreeSet<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if w == anchor && path.len() >= 3 {
            let mut reversed = vec![anchor];
            reversed.extend(path[1..].iter().rev());
            found.insert(path.clone().min(reversed));
        } else if !on_path[w] {
            on_path[w] = true;
            path.push(w);
            extend_paths(g, anchor, path, on_path, found);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// Simple cycles through the edge `uv`, anchored at `u`.
pub fn cycles_through_edge(g: &Graph, u: usize, v: usize) -> CycleSet {
    let mut all = cycles_through_vertex(g, u);
    all.cycles.retain(|c| c[1] == v || c.last() == Some(&v));
    all
}

/// `2 * sum (-1)^{|V(C)|} per L_{V(C) + extra}(G)` over `cycles`.
fn cycle_terms(
    engine: &PermanentEngine,
    g: &Graph,
    cycles: &CycleSet,
    extra: &[usize],
) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for c in cycles.iter() {
        let mut struck = extra.to_vec();
        struck.extend(c);
        let p = engine.struck(g, &struck)?;
        if c.len() % 2 == 0 {
            total += p;
        } else {
            total -= p;
        }
    }
    Ok(total * 2)
}

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v >= g.order() {
        Err(Error::Index {
            index: v,
            order: g.order(),
        })
    } else {
        Ok(())
    }
}

/// Vertex expansion:
/// `d(v) per L_v(G) + sum_{u in N(v)} per L_{vu}(G)
///   + 2 sum_{C through v} (-1)^{|V(C)|} per L_{V(C)}(G)`.
pub fn expand_vertex(engine: &PermanentEngine, g: &Graph, v: usize) -> Result<PermanentValue> {
    check_vertex(g, v)?;
    let mut total = BigInt::from(g.degree(v)) * engine.struck(g, &[v])?;
    for &u in g.neighbors(v) {
        total += engine.struck(g, &[v, u])?;
    }
    total += cycle_terms(engine, g, &cycles_through_vertex(g, v), &[])?;
    Ok(total)
}

/// Pendant reduction: `per L(G - v) + 2 per L_u(G - v)` where `u` is the
/// unique neighbor of the pendant vertex `v`. Degrees are those of `G - v`.
pub fn pendant_reduction(engine: &PermanentEngine, g: &Graph, v: usize) -> Result<PermanentValue> {
    check_vertex(g, v)?;
    if g.degree(v) != 1 {
        return Err(Error::NotPendant(v));
    }
    let u = g.neighbors(v)[0];
    let (h, map) = g.without_vertex(v);
    let u = map[u].expect("neighbor survives deletion");
    Ok(engine.graph(&h)? + engine.struck(&h, &[u])? * 2)
}

/// Submatrix expansion for `per L_S(G)` around a vertex `v` outside `S`:
/// `d(v) per L_{S+v}(G) + sum_{uv in E, u not in S} per L_{S+u+v}(G)
///   + 2 sum_{C through v, C disjoint from S} (-1)^{|V(C)|} per L_{S+V(C)}(G)`.
pub fn expand_submatrix(
    engine: &PermanentEngine,
    g: &Graph,
    struck: &[usize],
    v: usize,
) -> Result<PermanentValue> {
    check_vertex(g, v)?;
    // Validates the strike set (range, duplicates).
    g.laplacian().strike(struck)?;
    let in_struck: BTreeSet<usize> = struck.iter().copied().collect();
    if in_struck.contains(&v) {
        return Err(Error::Index {
            index: v,
            order: g.order(),
        });
    }
    let mut with_v = struck.to_vec();
    with_v.push(v);
    let mut total = BigInt::from(g.degree(v)) * engine.struck(g, &with_v)?;
    for &u in g.neighbors(v).iter().filter(|u| !in_struck.contains(u)) {
        let mut s = with_v.clone();
        s.push(u);
        total += engine.struck(g, &s)?;
    }
    let mut cycles = cycles_through_vertex(g, v);
    cycles
        .cycles
        .retain(|c| c.iter().all(|x| !in_struck.contains(x)));
    total += cycle_terms(engine, g, &cycles, struck)?;
    Ok(total)
}

/// Edge deletion for `e = uv`:
/// `per L(G-e) + per L_v(G-e) + per L_u(G-e) + 2 per L_{uv}(G)
///   + 2 sum_{C through e} (-1)^{|V(C)|} per L_{V(C)}(G)`.
pub fn edge_deletion(
    engine: &PermanentEngine,
    g: &Graph,
    u: usize,
    v: usize,
) -> Result<PermanentValue> {
    let h = g.without_edge(u, v)?;
    let mut total = engine.graph(&h)?;
    total += engine.struck(&h, &[v])?;
    total += engine.struck(&h, &[u])?;
    total += engine.struck(g, &[u, v])? * 2;
    total += cycle_terms(engine, g, &cycles_through_edge(g, u, v), &[])?;
    Ok(total)
}
