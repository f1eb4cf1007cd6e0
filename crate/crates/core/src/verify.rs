//! Checkable claims about Laplacian permanents and ratios, each run over an
//! exhaustive corpus or a seeded batch of instances.
//!
//! A claim is selected by a short tag (the numbering used on the command
//! line). Instances are generated from per-index random streams and
//! evaluated in parallel; results are collected in index order, so a
//! summary depends only on the options, never on scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{rational_to_string, BigRational};
use crate::canon::canonical_code;
use crate::enumeration::{
    enumerate_trees, search, with_jobs, Objective, SearchOptions, DEFAULT_ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::expansion::{edge_deletion, expand_submatrix, expand_vertex, pendant_reduction};
use crate::families::{
    broom, broom_pd, broom_permanent, path, pell_q, pell_q_binet, theorem_bound,
};
use crate::graph::{Graph, Tree};
use crate::matching::{laplacian_ratio, matching_sums};
use crate::permanent::{PermanentEngine, DEFAULT_ORDER_CAP};
use crate::random::{instance_rng, random_connected, random_tree, shuffled, GraphKind, PRNG_ID};
use crate::report::EdgeListJson;
use crate::transforms::{
    caterpillar_gap, check_split, is_caterpillar_with_spine, move_pendants, star_psi_theta,
    SplitCheck,
};

/// The claims the harness can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    /// Vertex expansion of `per L(G)` with cycle terms (tag `2.2`).
    VertexExpansion,
    /// Pendant reduction (tag `2.3`).
    PendantReduction,
    /// Expansion of a principal submatrix around a vertex (tag `2.4`).
    SubmatrixExpansion,
    /// Edge deletion (tag `2.5`).
    EdgeDeletion,
    /// `pi(T) = sum_k pi_k(T)` for trees (tag `2.6`).
    MatchingDecomposition,
    /// `pi(T) >= pi(P_{d+1})` for trees of diameter `d` (tag `2.7`).
    PathLowerBound,
    /// Split surgery when `psi >= theta` (tag `2.8i`).
    SplitWhenPsiDominates,
    /// Split surgery when the cut-off part is a star centered at `v`
    /// (tag `2.8ii`).
    SplitStar,
    /// Split surgery, unconditionally (tag `2.8iii`).
    Split,
    /// Merging two pendant clusters strictly helps one side (tag `2.9`).
    PendantMerge,
    /// The broom minimizes `per L(T)` (tag `2.10`).
    PermanentMinimum,
    /// Broom permanent closed form and the Pell recurrence (tag `2.11`).
    BroomClosedForm,
    /// The broom uniquely minimizes `pi(T)` and the closed-form bound is
    /// exact (tag `thm1.1`).
    RatioMinimum,
    /// Collapsing branches onto a diametral path never increases `pi`
    /// (tag `cat`).
    Caterpillarize,
}

impl Claim {
    pub const ALL: [Claim; 14] = [
        Claim::VertexExpansion,
        Claim::PendantReduction,
        Claim::SubmatrixExpansion,
        Claim::EdgeDeletion,
        Claim::MatchingDecomposition,
        Claim::PathLowerBound,
        Claim::SplitWhenPsiDominates,
        Claim::SplitStar,
        Claim::Split,
        Claim::PendantMerge,
        Claim::PermanentMinimum,
        Claim::BroomClosedForm,
        Claim::RatioMinimum,
        Claim::Caterpillarize,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Claim::VertexExpansion => "2.2",
            Claim::PendantReduction => "2.3",
            Claim::SubmatrixExpansion => "2.4",
            Claim::EdgeDeletion => "2.5",
            Claim::MatchingDecomposition => "2.6",
            Claim::PathLowerBound => "2.7",
            Claim::SplitWhenPsiDominates => "2.8i",
            Claim::SplitStar => "2.8ii",
            Claim::Split => "2.8iii",
            Claim::PendantMerge => "2.9",
            Claim::PermanentMinimum => "2.10",
            Claim::BroomClosedForm => "2.11",
            Claim::RatioMinimum => "thm1.1",
            Claim::Caterpillarize => "cat",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Claim::VertexExpansion => "vertex expansion of per L(G) with cycle terms",
            Claim::PendantReduction => "per L(G) = per L(G-v) + 2 per L_u(G-v) for pendant v",
            Claim::SubmatrixExpansion => "expansion of per L_S(G) around a vertex outside S",
            Claim::EdgeDeletion => "edge deletion expansion of per L(G)",
            Claim::MatchingDecomposition => "pi(T) = sum_k pi_k(T) for trees",
            Claim::PathLowerBound => "pi(T) >= pi(P_{d+1}) for trees of diameter d",
            Claim::SplitWhenPsiDominates => "pi(G1) >= pi(G2) when psi >= theta",
            Claim::SplitStar => "pi(G1) >= pi(G2) when T_r is a star centered at v",
            Claim::Split => "pi(G1) >= pi(G2)",
            Claim::PendantMerge => "pi(T) > min(pi(T1), pi(T2))",
            Claim::PermanentMinimum => "per L(T) >= per L(B(n,k)), equality only for the broom",
            Claim::BroomClosedForm => "per L(B(n,k)) closed form and Pell/Binet agreement",
            Claim::RatioMinimum => "min pi over diameter >= k equals the bound, uniquely at B(n,k)",
            Claim::Caterpillarize => "pi(T) >= pi(caterpillarized T)",
        }
    }

    /// Largest order examined when the caller gives none.
    pub fn default_n_max(self) -> usize {
        match self {
            Claim::VertexExpansion | Claim::SubmatrixExpansion | Claim::EdgeDeletion => 8,
            Claim::PendantReduction | Claim::MatchingDecomposition => 9,
            Claim::PathLowerBound => 10,
            Claim::SplitWhenPsiDominates
            | Claim::SplitStar
            | Claim::Split
            | Claim::PendantMerge
            | Claim::Caterpillarize => 11,
            Claim::PermanentMinimum | Claim::RatioMinimum => 12,
            Claim::BroomClosedForm => 14,
        }
    }

    /// Number of seeded instances, or `None` for exhaustive claims.
    pub fn default_instances(self) -> Option<usize> {
        match self {
            Claim::VertexExpansion | Claim::SubmatrixExpansion | Claim::EdgeDeletion => Some(100),
            Claim::SplitWhenPsiDominates
            | Claim::SplitStar
            | Claim::Split
            | Claim::PendantMerge
            | Claim::Caterpillarize => Some(200),
            _ => None,
        }
    }

    pub fn is_seeded(self) -> bool {
        self.default_instances().is_some()
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub n_max: Option<usize>,
    pub instances: Option<usize>,
    pub seed: u64,
    pub jobs: usize,
    pub order_cap: usize,
    pub enumeration_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_max: None,
            instances: None,
            seed: 42,
            jobs: 0,
            order_cap: DEFAULT_ORDER_CAP,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// A failed instance, self-contained enough to replay by hand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub lemma: String,
    pub seed: Option<u64>,
    pub instance: usize,
    pub trees: Vec<EdgeListJson>,
    /// Exact values (`p/q` or integers), in the order described by `detail`.
    pub ratios: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub lemma: String,
    pub description: String,
    pub seed: Option<u64>,
    pub prng: Option<String>,
    pub n_max: usize,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    /// Named counts describing what the instances covered.
    pub breakdown: BTreeMap<String, usize>,
    pub counterexamples: Vec<Counterexample>,
}

impl VerifySummary {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.instances > 0
    }
}

/// Outcome of one instance.
#[derive(Default)]
struct Outcome {
    labels: Vec<String>,
    failure: Option<Failure>,
}

struct Failure {
    graphs: Vec<Graph>,
    values: Vec<String>,
    detail: String,
}

impl Outcome {
    fn pass(labels: impl IntoIterator<Item = String>) -> Self {
        Outcome {
            labels: labels.into_iter().collect(),
            failure: None,
        }
    }

    fn fail(graphs: Vec<Graph>, values: Vec<String>, detail: impl Into<String>) -> Self {
        Outcome {
            labels: Vec::new(),
            failure: Some(Failure {
                graphs,
                values,
                detail: detail.into(),
            }),
        }
    }

    fn label(mut self, l: impl Into<String>) -> Self {
        self.labels.push(l.into());
        self
    }
}

struct Ctx {
    claim: Claim,
    opts: VerifyOptions,
    n_max: usize,
    engine: PermanentEngine,
}

/// Runs one claim.
pub fn verify(claim: Claim, opts: &VerifyOptions) -> Result<VerifySummary> {
    let n_max = opts.n_max.unwrap_or_else(|| claim.default_n_max());
    let ctx = Ctx {
        claim,
        opts: *opts,
        n_max,
        engine: PermanentEngine::with_cap(opts.order_cap),
    };
    let outcomes = with_jobs(opts.jobs, || run(&ctx))?;

    let seeded = claim.is_seeded();
    let mut summary = VerifySummary {
        lemma: claim.tag().to_string(),
        description: claim.description().to_string(),
        seed: seeded.then_some(opts.seed),
        prng: seeded.then(|| PRNG_ID.to_string()),
        n_max,
        instances: outcomes.len(),
        passed: 0,
        failed: 0,
        breakdown: BTreeMap::new(),
        counterexamples: Vec::new(),
    };
    for (index, outcome) in outcomes.into_iter().enumerate() {
        for l in outcome.labels {
            *summary.breakdown.entry(l).or_default() += 1;
        }
        match outcome.failure {
            None => summary.passed += 1,
            Some(f) => {
                summary.failed += 1;
                summary.counterexamples.push(Counterexample {
                    lemma: claim.tag().to_string(),
                    seed: summary.seed,
                    instance: index,
                    trees: f.graphs.iter().map(EdgeListJson::from).collect(),
                    ratios: f.values,
                    detail: f.detail,
                });
            }
        }
    }
    Ok(summary)
}

fn run(ctx: &Ctx) -> Result<Vec<Outcome>> {
    match ctx.claim {
        Claim::VertexExpansion | Claim::SubmatrixExpansion | Claim::EdgeDeletion => {
            seeded(ctx, expansion_instance)
        }
        Claim::SplitWhenPsiDominates | Claim::SplitStar | Claim::Split => {
            seeded(ctx, split_instance)
        }
        Claim::PendantMerge => seeded(ctx, pendant_merge_instance),
        Claim::Caterpillarize => seeded(ctx, caterpillar_instance),
        Claim::PendantReduction => corpus(ctx, 1, pendant_reduction_instance),
        Claim::MatchingDecomposition => corpus(ctx, 1, matching_instance),
        Claim::PathLowerBound => corpus(ctx, 2, path_bound_instance),
        Claim::PermanentMinimum | Claim::RatioMinimum => extremal_grid(ctx),
        Claim::BroomClosedForm => broom_closed_form(ctx),
    }
}

fn seeded<F>(ctx: &Ctx, f: F) -> Result<Vec<Outcome>>
where
    F: Fn(&Ctx, usize) -> Result<Outcome> + Sync,
{
    let count = ctx
        .opts
        .instances
        .or(ctx.claim.default_instances())
        .unwrap_or(0);
    (0..count).into_par_iter().map(|i| f(ctx, i)).collect()
}

/// Every non-isomorphic tree with `n_min <= n <= n_max`.
fn corpus<F>(ctx: &Ctx, n_min: usize, f: F) -> Result<Vec<Outcome>>
where
    F: Fn(&Ctx, &Tree) -> Result<Outcome> + Sync,
{
    let mut trees = Vec::new();
    for n in n_min..=ctx.n_max {
        trees.extend(enumerate_trees(n, ctx.opts.enumeration_cap)?);
    }
    trees.par_iter().map(|t| f(ctx, t)).collect()
}

fn s(x: &impl ToString) -> String {
    x.to_string()
}

fn r(x: &BigRational) -> String {
    rational_to_string(x)
}

const KINDS: [GraphKind; 3] = [GraphKind::Tree, GraphKind::Unicyclic, GraphKind::Dense];

fn expansion_instance(ctx: &Ctx, index: usize) -> Result<Outcome> {
    let mut rng = instance_rng(ctx.opts.seed, index as u64);
    let kind = KINDS[index % KINDS.len()];
    let n = rng.random_range(1..=ctx.n_max.max(1));
    let g = random_connected(&mut rng, n, kind);
    let per = ctx.engine.graph(&g)?;
    let e = &ctx.engine;
    match ctx.claim {
        Claim::VertexExpansion => {
            for v in 0..n {
                let rhs = expand_vertex(e, &g, v)?;
                if rhs != per {
                    return Ok(Outcome::fail(
                        vec![g],
                        vec![s(&per), s(&rhs)],
                        format!("per L(G) vs expansion at vertex {v}"),
                    ));
                }
            }
        }
        Claim::EdgeDeletion => {
            for &(u, v) in g.edges() {
                let rhs = edge_deletion(e, &g, u, v)?;
                if rhs != per {
                    return Ok(Outcome::fail(
                        vec![g.clone()],
                        vec![s(&per), s(&rhs)],
                        format!("per L(G) vs deletion of edge {u}-{v}"),
                    ));
                }
            }
        }
        Claim::SubmatrixExpansion => {
            let struck: Vec<usize> = {
                let mut all: Vec<usize> = (0..n).collect();
                let size = rng.random_range(0..n);
                let (picked, _) =
                    rand::seq::SliceRandom::partial_shuffle(&mut all[..], &mut rng, size);
                let mut p = picked.to_vec();
                p.sort_unstable();
                p
            };
            let lhs = ctx.engine.struck(&g, &struck)?;
            for v in (0..n).filter(|v| !struck.contains(v)) {
                let rhs = expand_submatrix(e, &g, &struck, v)?;
                if rhs != lhs {
                    return Ok(Outcome::fail(
                        vec![g],
                        vec![s(&lhs), s(&rhs)],
                        format!("per L_S(G) vs expansion at {v}, S = {struck:?}"),
                    ));
                }
            }
        }
        _ => unreachable!(),
    }
    let cyclic = if g.size() >= g.order() {
        "cyclic"
    } else {
        "acyclic"
    };
    Ok(Outcome::pass([kind.name().to_string(), cyclic.to_string()]))
}

fn pendant_reduction_instance(ctx: &Ctx, t: &Tree) -> Result<Outcome> {
    let per = ctx.engine.graph(t)?;
    let mut labels = vec![format!("n={:02}", t.order())];
    for v in (0..t.order()).filter(|&v| t.degree(v) == 1) {
        let rhs = pendant_reduction(&ctx.engine, t, v)?;
        if rhs != per {
            return Ok(Outcome::fail(
                vec![t.graph().clone()],
                vec![s(&per), s(&rhs)],
                format!("per L(T) vs pendant reduction at {v}"),
            ));
        }
        labels.push("pendant checks".into());
    }
    Ok(Outcome::pass(labels))
}

fn matching_instance(ctx: &Ctx, t: &Tree) -> Result<Outcome> {
    let per = ctx.engine.graph(t)?;
    let sums = matching_sums(t);
    let total: crate::arith::BigInt = sums.iter().sum();
    if total != per {
        return Ok(Outcome::fail(
            vec![t.graph().clone()],
            vec![s(&per), s(&total)],
            "per L(T) vs sum_k N_k",
        ));
    }
    let label = format!("n={:02}", t.order());
    let Ok(pd) = t.product_of_degrees() else {
        // K1: PD = 0 and the ratio is undefined; only the integer form applies.
        return Ok(Outcome::pass([label, "integer form only".into()]));
    };
    let ratio = BigRational::new(per, pd.clone());
    let pi_sum = sums
        .iter()
        .map(|c| BigRational::new(c.clone(), pd.clone()))
        .fold(BigRational::zero(), |a, b| a + b);
    if ratio != pi_sum {
        return Ok(Outcome::fail(
            vec![t.graph().clone()],
            vec![r(&ratio), r(&pi_sum)],
            "per L(T)/PD(T) vs sum_k pi_k",
        ));
    }
    Ok(Outcome::pass([label]))
}

fn path_bound_instance(_ctx: &Ctx, t: &Tree) -> Result<Outcome> {
    let d = t.tree_diameter();
    let p = path(d + 1);
    let pi_t = laplacian_ratio(t)?;
    let pi_p = laplacian_ratio(&p)?;
    let is_path = canonical_code(t) == canonical_code(&p);
    let equal = pi_t == pi_p;
    let ok = pi_t >= pi_p && (!equal || is_path || d == 2);
    if !ok {
        return Ok(Outcome::fail(
            vec![t.graph().clone(), p.into_graph()],
            vec![r(&pi_t), r(&pi_p)],
            format!("pi(T) vs pi(P_{}) for diameter {d}", d + 1),
        ));
    }
    let label = match (equal, is_path) {
        (true, true) => "equality: path",
        (true, false) => "equality: star",
        (false, _) => "strict",
    };
    Ok(Outcome::pass([label.to_string()]))
}

/// Joins a random `H` (containing `u`) and `T_r` (containing `v`) by `uv`
/// and shuffles the labels. With `star`, `T_r` is a star centered at `v`.
fn random_split<R: Rng>(rng: &mut R, n_max: usize, star: bool) -> (Tree, usize, usize) {
    let n = rng.random_range(3..=n_max.max(3));
    let r = rng.random_range(1..=n - 2);
    let h = random_tree(rng, n - r);
    let t_r = if star {
        path(1).with_pendants(0, r - 1)
    } else {
        random_tree(rng, r)
    };
    let u = rng.random_range(0..h.order());
    let v = if star { 0 } else { rng.random_range(0..r) };
    let offset = h.order();
    let mut edges: Vec<(usize, usize)> = h.edges().to_vec();
    edges.extend(t_r.edges().iter().map(|&(a, b)| (a + offset, b + offset)));
    edges.push((u, v + offset));
    let g1 = Tree::from_edges(n, edges).expect("joined trees form a tree");
    let mut perm: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(&mut perm[..], rng);
    (g1.relabel(&perm), perm[u], perm[v + offset])
}

fn split_failure(check: &SplitCheck, detail: impl Into<String>) -> Outcome {
    Outcome::fail(
        vec![check.split.source.graph().clone(), check.g2.graph().clone()],
        vec![
            r(&check.pi_g1),
            r(&check.pi_g2),
            r(&check.psi_theta.psi),
            r(&check.psi_theta.theta),
        ],
        detail,
    )
}

fn split_instance(ctx: &Ctx, index: usize) -> Result<Outcome> {
    let mut rng = instance_rng(ctx.opts.seed, index as u64);
    let star = ctx.claim == Claim::SplitStar;
    let check = loop {
        let (g1, u, v) = random_split(&mut rng, ctx.n_max, star);
        let check = check_split(&g1, u, v)?;
        // r = 1 always has psi = theta, so this terminates quickly.
        if ctx.claim != Claim::SplitWhenPsiDominates || check.psi_theta.psi >= check.psi_theta.theta
        {
            break check;
        }
    };
    let r_val = check.split.r();
    let detail = "values: pi(G1), pi(G2), psi, theta";
    if !check.verdict {
        return Ok(split_failure(&check, format!("pi(G1) < pi(G2); {detail}")));
    }
    if r_val == 1
        && (check.pi_g1 != check.pi_g2
            || canonical_code(&check.split.source) != canonical_code(&check.g2))
    {
        return Ok(split_failure(
            &check,
            format!("r = 1 but G1 and G2 differ; {detail}"),
        ));
    }
    if star {
        let du = check.split.source.degree(check.split.u);
        if !check.split.is_star_at_v() || check.psi_theta != star_psi_theta(du, r_val) {
            return Ok(split_failure(
                &check,
                format!("star closed form for psi/theta disagrees; {detail}"),
            ));
        }
    }
    let mut out = Outcome::pass([if r_val == 1 {
        "r=1 (equality)".to_string()
    } else {
        "r>=2".to_string()
    }]);
    if check.pi_g1 > check.pi_g2 {
        out = out.label("strict");
    }
    if ctx.claim == Claim::SplitWhenPsiDominates && check.psi_theta.psi > check.psi_theta.theta {
        out = out.label("psi>theta");
    }
    Ok(out)
}

fn pendant_merge_instance(ctx: &Ctx, index: usize) -> Result<Outcome> {
    let mut rng = instance_rng(ctx.opts.seed, index as u64);
    let n_max = ctx.n_max.max(6);
    let (base, u, v) = loop {
        let m = rng.random_range(4..=n_max - 2);
        let base = random_tree(&mut rng, m);
        let twos: Vec<usize> = (0..m).filter(|&x| base.degree(x) == 2).collect();
        if twos.len() >= 2 {
            let picked: Vec<usize> = twos.choose_multiple(&mut rng, 2).copied().collect();
            break (base, picked[0], picked[1]);
        }
    };
    let budget = n_max - base.order();
    let t = rng.random_range(1..=budget / 2);
    let s_count = rng.random_range(t..=budget - t);
    let m = move_pendants(&base, u, v, s_count, t)?;
    let adjacency = if base.has_edge(u, v) {
        "adjacent"
    } else {
        "non-adjacent"
    };
    if !m.verdict {
        return Ok(Outcome::fail(
            vec![m.t.into_graph(), m.t1.into_graph(), m.t2.into_graph()],
            vec![r(&m.pi_t), r(&m.pi_t1), r(&m.pi_t2)],
            format!("pi(T) <= min(pi(T1), pi(T2)); u, v {adjacency}; s={s_count}, t={t}"),
        ));
    }
    Ok(Outcome::pass([adjacency.to_string()]))
}

fn caterpillar_instance(ctx: &Ctx, index: usize) -> Result<Outcome> {
    let mut rng = instance_rng(ctx.opts.seed, index as u64);
    let n = rng.random_range(4..=ctx.n_max.max(4));
    let t = random_tree(&mut rng, n);
    let t = shuffled(&mut rng, &t);
    let mut spine = t.diametral_path();
    if rng.random_bool(0.5) {
        spine.reverse();
    }
    let (cat, gap) = caterpillar_gap(&t, &spine)?;
    if gap < BigRational::zero() || !is_caterpillar_with_spine(&cat, &spine) {
        return Ok(Outcome::fail(
            vec![t.into_graph(), cat.into_graph()],
            vec![r(&gap)],
            format!("pi(T) - pi(T0) is negative or T0 malformed; spine {spine:?}"),
        ));
    }
    let label = if gap.is_zero() {
        "unchanged ratio"
    } else {
        "strict decrease"
    };
    Ok(Outcome::pass([label.to_string()]))
}

fn extremal_grid(ctx: &Ctx) -> Result<Vec<Outcome>> {
    let objective = match ctx.claim {
        Claim::PermanentMinimum => Objective::Permanent,
        _ => Objective::Ratio,
    };
    let cells: Vec<(usize, usize)> = (3..=ctx.n_max)
        .flat_map(|n| (2..n).map(move |k| (n, k)))
        .collect();
    let opts = SearchOptions {
        jobs: 0,
        enumeration_cap: ctx.opts.enumeration_cap,
    };
    cells
        .par_iter()
        .map(|&(n, k)| {
            let rep = search(objective, n, k, &opts)?;
            if rep.agreement {
                Ok(Outcome::pass([format!("n={n:02}")]))
            } else {
                Ok(Outcome::fail(
                    vec![broom(n, k)?.into_graph()],
                    vec![r(&rep.minimum), r(&rep.expected)],
                    format!(
                        "n={n}, k={k}: minimum vs broom value; minimizers {:?}",
                        rep.minimizers
                            .iter()
                            .map(|c| c.to_hex())
                            .collect::<Vec<_>>()
                    ),
                ))
            }
        })
        .collect()
}

fn broom_closed_form(ctx: &Ctx) -> Result<Vec<Outcome>> {
    let cells: Vec<(usize, usize)> = (3..=ctx.n_max)
        .flat_map(|n| (2..n).map(move |k| (n, k)))
        .collect();
    let mut out: Vec<Outcome> = cells
        .par_iter()
        .map(|&(n, k)| -> Result<Outcome> {
            let b = broom(n, k)?;
            let per = ctx.engine.graph(&b)?;
            let pd = b.product_of_degrees()?;
            let formula = broom_permanent(n, k)?;
            let formula_pd = broom_pd(n, k)?;
            let bound = theorem_bound(n, k)?;
            let ratio = BigRational::new(per.clone(), pd.clone());
            let diameter = b.diameter()?;
            if per != formula || pd != formula_pd || ratio != bound || diameter != k {
                return Ok(Outcome::fail(
                    vec![b.into_graph()],
                    vec![s(&per), s(&formula), s(&pd), s(&formula_pd), r(&ratio), r(&bound)],
                    format!(
                        "B({n},{k}): per, formula, PD, formula PD, ratio, bound; diameter {diameter}"
                    ),
                ));
            }
            Ok(Outcome::pass(["broom cells".to_string()]))
        })
        .collect::<Result<_>>()?;
    for k in 0..=40u32 {
        let binet = pell_q_binet(k);
        let rec = BigRational::from_integer(pell_q(k as usize));
        if !binet.is_rational() || binet.a != rec {
            out.push(Outcome::fail(
                vec![],
                vec![r(&rec), binet.to_string()],
                format!("Q_{k}: recurrence vs Binet form"),
            ));
        } else {
            out.push(Outcome::pass(["pell indices".to_string()]));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.tag().parse::<Claim>().unwrap(), c);
        }
        assert!(matches!(
            "2.12".parse::<Claim>(),
            Err(Error::UnknownLemma(_))
        ));
        assert_eq!("THM1.1".parse::<Claim>().unwrap(), Claim::RatioMinimum);
    }

    fn quick(claim: Claim, n_max: usize, instances: usize) -> VerifySummary {
        let opts = VerifyOptions {
            n_max: Some(n_max),
            instances: Some(instances),
            ..Default::default()
        };
        verify(claim, &opts).unwrap()
    }

    #[test]
    fn every_claim_passes_small() {
        for c in Claim::ALL {
            let s = quick(c, 7, 20);
            assert!(s.ok(), "{c}: {:?}", s.counterexamples);
        }
    }

    #[test]
    fn corpus_sizes() {
        assert_eq!(
            quick(Claim::MatchingDecomposition, 6, 0).instances,
            1 + 1 + 1 + 2 + 3 + 6
        );
        assert_eq!(quick(Claim::PathLowerBound, 5, 0).instances, 1 + 1 + 2 + 3);
        // grid 3 <= n <= 6, 2 <= k < n: 1 + 2 + 3 + 4 cells
        assert_eq!(quick(Claim::RatioMinimum, 6, 0).instances, 10);
        assert_eq!(quick(Claim::BroomClosedForm, 6, 0).instances, 10 + 41);
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let a = quick(Claim::Split, 9, 30);
        let b = quick(Claim::Split, 9, 30);
        assert_eq!(a, b);
        let par = verify(
            Claim::Split,
            &VerifyOptions {
                n_max: Some(9),
                instances: Some(30),
                jobs: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a, par);
    }

    #[test]
    fn cap_is_enforced() {
        let opts = VerifyOptions {
            n_max: Some(8),
            order_cap: 4,
            ..Default::default()
        };
        assert!(matches!(
            verify(Claim::MatchingDecomposition, &opts),
            Err(Error::TooLarge { .. })
        ));
    }
}
