//! Canonical codes for free trees.
//!
//! The tree is rooted at its center (or at both ends of its central edge)
//! and encoded AHU-style: each rooted subtree becomes `(` + sorted child
//! codes + `)`. Unicentral trees get the prefix byte `1`; bicentral trees
//! get `2` followed by the two half-codes in sorted order. Two trees share
//! a code exactly when they are isomorphic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Tree;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Lowercase hex, as used in reports and golden files.
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if !s.len().is_multiple_of(2) {
            return None;
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonicalCode)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalCode::from_hex(&s).ok_or_else(|| serde::de::Error::custom("bad hex code"))
    }
}

/// Center vertices: one or two, found by peeling leaves.
pub fn centers(t: &Tree) -> Vec<usize> {
    let n = t.order();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg = t.degrees();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in t.neighbors(leaf) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// AHU code of the subtree at `root`, never crossing into `blocked`.
fn rooted_code(t: &Tree, root: usize, blocked: Option<usize>) -> Vec<u8> {
    // Iterative post-order so deep paths don't recurse.
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in t.neighbors(x) {
            if parent[y] == usize::MAX && Some(y) != blocked && y != root {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut child_codes: Vec<Vec<Vec<u8>>> = vec![Vec::new(); n];
    let mut code = Vec::new();
    for &x in order.iter().rev() {
        let mut kids = std::mem::take(&mut child_codes[x]);
        kids.sort_unstable();
        let mut c = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        c.push(b'(');
        for k in kids {
            c.extend(k);
        }
        c.push(b')');
        if x == root {
            code = c;
        } else {
            child_codes[parent[x]].push(c);
        }
    }
    code
}

pub fn canonical_code(t: &Tree) -> CanonicalCode {
    match centers(t).as_slice() {
        [c] => {
            let mut out = vec![b'1'];
            out.extend(rooted_code(t, *c, None));
            CanonicalCode(out)
        }
        [a, b] => {
            let mut halves = [rooted_code(t, *a, Some(*b)), rooted_code(t, *b, Some(*a))];
            halves.sort_unstable();
            let mut out = vec![b'2'];
            for h in halves {
                out.extend(h);
            }
            CanonicalCode(out)
        }
        _ => unreachable!("a tree has one or two centers"),
    }
}
