//! Admissible colored graphs: the two-point families Q_{n,2} and the
//! reduction families B_t, W_i, B_lW_m with a dangling minus edge.
//!
//! Every internal (type I) vertex emits an ordered pair of edges; per-vertex
//! edge orderings are distinct graphs. Wheels are normalized so the first
//! slot derives the ground function and the second follows the cycle, and
//! rotations are identified. Colors are induced at labeling time; the only
//! intrinsic color is the minus on the dangling edge.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Target {
    /// Another type I vertex, 0-based.
    Internal(usize),
    /// A type II vertex: 0 is F, 1 is G.
    Ground(usize),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub target: Target,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredGraph {
    n_internal: usize,
    n_ground: usize,
    /// 2 * n_internal edges; slots (2r, 2r+1) are vertex r's ordered pair.
    edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    WrongEdgeCount { vertex: usize },
    Loop { vertex: usize },
    DoubleEdge { vertex: usize },
    MultipleInfinity,
    BadTarget(String),
    SizeOutOfRange { got: usize, min: usize, max: usize },
    Parse(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::WrongEdgeCount { vertex } => {
                write!(f, "vertex {} does not emit exactly two edges", vertex + 1)
            }
            GraphError::Loop { vertex } => write!(f, "loop at vertex {}", vertex + 1),
            GraphError::DoubleEdge { vertex } => write!(f, "double edge at vertex {}", vertex + 1),
            GraphError::MultipleInfinity => write!(f, "more than one dangling edge"),
            GraphError::BadTarget(msg) => write!(f, "bad edge target: {msg}"),
            GraphError::SizeOutOfRange { got, min, max } => {
                write!(f, "size {got} outside supported range {min}..={max}")
            }
            GraphError::Parse(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for GraphError {}

impl ColoredGraph {
    pub fn new(n_internal: usize, n_ground: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        if edges.len() != 2 * n_internal {
            return Err(GraphError::WrongEdgeCount { vertex: 0 });
        }
        let mut infinity_seen = false;
        for r in 0..n_internal {
            let (a, b) = (&edges[2 * r], &edges[2 * r + 1]);
            if a.source != r || b.source != r {
                return Err(GraphError::WrongEdgeCount { vertex: r });
            }
            for e in [a, b] {
                match e.target {
                    Target::Internal(t) => {
                        if t == r {
                            return Err(GraphError::Loop { vertex: r });
                        }
                        if t >= n_internal {
                            return Err(GraphError::BadTarget(format!(
                                "vertex {} points at missing vertex {}",
                                r + 1,
                                t + 1
                            )));
                        }
                    }
                    Target::Ground(j) => {
                        if j >= n_ground {
                            return Err(GraphError::BadTarget(format!(
                                "vertex {} points at missing ground vertex",
                                r + 1
                            )));
                        }
                    }
                    Target::Infinity => {
                        if infinity_seen {
                            return Err(GraphError::MultipleInfinity);
                        }
                        infinity_seen = true;
                    }
                }
            }
            if a.target == b.target {
                return Err(GraphError::DoubleEdge { vertex: r });
            }
        }
        Ok(ColoredGraph { n_internal, n_ground, edges })
    }

    pub fn n_internal(&self) -> usize {
        self.n_internal
    }

    pub fn n_ground(&self) -> usize {
        self.n_ground
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The ordered pair of edge indices leaving vertex r.
    pub fn slots(&self, r: usize) -> (usize, usize) {
        (2 * r, 2 * r + 1)
    }

    /// Index of the dangling edge, when present; it carries color minus.
    pub fn infinity_edge(&self) -> Option<usize> {
        self.edges.iter().position(|e| e.target == Target::Infinity)
    }

    /// Incoming edge indices per internal vertex.
    pub fn incoming(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n_internal];
        for (i, e) in self.edges.iter().enumerate() {
            if let Target::Internal(t) = e.target {
                inc[t].push(i);
            }
        }
        inc
    }

    /// Text form `n; [(src,tgt,color),...]`, 1-based vertices, `F`/`G` for
    /// the ground vertices, `inf` for the dangling end.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                let (tgt, color) = match e.target {
                    Target::Internal(t) => ((t + 1).to_string(), '+'),
                    Target::Ground(0) => ("F".to_string(), '+'),
                    Target::Ground(_) => ("G".to_string(), '+'),
                    Target::Infinity => ("inf".to_string(), '-'),
                };
                format!("({},{},{})", e.source + 1, tgt, color)
            })
            .collect();
        format!("{}; [{}]", self.n_internal, body.join(","))
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let (head, body) = text
            .split_once(';')
            .ok_or_else(|| GraphError::Parse("expected `n; [...]`".into()))?;
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| GraphError::Parse("bad vertex count".into()))?;
        let body = body.trim();
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| GraphError::Parse("expected bracketed edge list".into()))?;
        let mut edges = Vec::new();
        let mut has_g = false;
        for chunk in body.split("),") {
            let chunk = chunk.trim().trim_start_matches('(').trim_end_matches(')');
            if chunk.is_empty() {
                continue;
            }
            let parts: Vec<&str> = chunk.split(',').map(|s| s.trim()).collect();
            if parts.len() != 3 {
                return Err(GraphError::Parse(format!("bad edge `{chunk}`")));
            }
            let source: usize = parts[0]
                .parse::<usize>()
                .map_err(|_| GraphError::Parse(format!("bad source `{}`", parts[0])))?
                .checked_sub(1)
                .ok_or_else(|| GraphError::Parse("vertices are 1-based".into()))?;
            let target = match parts[1] {
                "F" => Target::Ground(0),
                "G" => {
                    has_g = true;
                    Target::Ground(1)
                }
                "inf" => Target::Infinity,
                other => Target::Internal(
                    other
                        .parse::<usize>()
                        .map_err(|_| GraphError::Parse(format!("bad target `{other}`")))?
                        .checked_sub(1)
                        .ok_or_else(|| GraphError::Parse("vertices are 1-based".into()))?,
                ),
            };
            if parts[2] == "-" && target != Target::Infinity {
                return Err(GraphError::Parse("only the dangling edge carries minus".into()));
            }
            edges.push(Edge { source, target });
        }
        ColoredGraph::new(n, if has_g { 2 } else { 1 }, edges)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyTag {
    Bernoulli(usize),
    Wheel(usize),
    BernoulliWheel { total: usize, chain: usize, wheel: usize },
    TwoPoint(usize),
    Other,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Bernoulli(t) => write!(f, "B({t})"),
            FamilyTag::Wheel(i) => write!(f, "W({i})"),
            FamilyTag::BernoulliWheel { total, chain, wheel } => {
                write!(f, "BW({total};b={chain},w={wheel})")
            }
            FamilyTag::TwoPoint(n) => write!(f, "Q({n},2)"),
            FamilyTag::Other => write!(f, "OTHER"),
        }
    }
}

/// Maximum supported n for two-point enumeration.
pub const Q_N2_CAP: usize = 4;

/// The B_t chain: vertices 1..t in path order, each deriving the ground
/// function once, terminal vertex emitting the dangling edge. All 2^t
/// per-vertex slot orderings are emitted; variant 0 has every ground edge
/// in the first slot.
pub fn enumerate_bernoulli(t: usize) -> Result<Vec<ColoredGraph>, GraphError> {
    if t < 1 {
        return Err(GraphError::SizeOutOfRange { got: t, min: 1, max: usize::MAX });
    }
    let mut out = Vec::with_capacity(1 << t);
    for mask in 0..(1u64 << t) {
        let mut edges = Vec::with_capacity(2 * t);
        for k in 0..t {
            let fun = Edge { source: k, target: Target::Ground(0) };
            let next = Edge {
                source: k,
                target: if k + 1 < t { Target::Internal(k + 1) } else { Target::Infinity },
            };
            if mask >> k & 1 == 0 {
                edges.extend([fun, next]);
            } else {
                edges.extend([next, fun]);
            }
        }
        out.push(ColoredGraph::new(t, 1, edges)?);
    }
    Ok(out)
}

/// The canonical wheel: a directed i-cycle, each vertex deriving the
/// ground function through its first slot. Rotations are identified, so
/// one graph per size.
pub fn enumerate_wheels(i: usize) -> Result<Vec<ColoredGraph>, GraphError> {
    if i < 2 {
        return Err(GraphError::SizeOutOfRange { got: i, min: 2, max: usize::MAX });
    }
    let mut edges = Vec::with_capacity(2 * i);
    for k in 0..i {
        edges.push(Edge { source: k, target: Target::Ground(0) });
        edges.push(Edge { source: k, target: Target::Internal((k + 1) % i) });
    }
    Ok(vec![ColoredGraph::new(i, 1, edges)?])
}

/// All B_lW_m shapes with l + m = total, l ≥ 1, m ≥ 2: a directed m-cycle
/// whose distinguished vertex feeds the chain root instead of deriving the
/// ground function, the chain keeping the dangling edge. Wheel vertices are
/// labeled from the successor of the distinguished vertex, then the chain
/// in path order. All per-vertex slot orderings are emitted.
pub fn enumerate_bw(total: usize) -> Result<Vec<ColoredGraph>, GraphError> {
    if total < 4 {
        return Err(GraphError::SizeOutOfRange { got: total, min: 4, max: usize::MAX });
    }
    let mut out = Vec::new();
    for wheel in 2..total {
        let chain = total - wheel;
        if chain < 1 {
            continue;
        }
        for mask in 0..(1u64 << total) {
            let mut edges = Vec::with_capacity(2 * total);
            for k in 0..total {
                let (first, second) = if k < wheel {
                    let cycle = Edge { source: k, target: Target::Internal((k + 1) % wheel) };
                    let other = if k == wheel - 1 {
                        // distinguished vertex: feeds the chain root
                        Edge { source: k, target: Target::Internal(wheel) }
                    } else {
                        Edge { source: k, target: Target::Ground(0) }
                    };
                    (other, cycle)
                } else {
                    let fun = Edge { source: k, target: Target::Ground(0) };
                    let next = Edge {
                        source: k,
                        target: if k + 1 < total { Target::Internal(k + 1) } else { Target::Infinity },
                    };
                    (fun, next)
                };
                if mask >> k & 1 == 0 {
                    edges.extend([first, second]);
                } else {
                    edges.extend([second, first]);
                }
            }
            out.push(ColoredGraph::new(total, 1, edges)?);
        }
    }
    Ok(out)
}

/// All admissible two-point graphs on n internal vertices: each vertex
/// emits an ordered pair of edges to distinct targets among the other
/// internal vertices and the two ground vertices.
pub fn enumerate_q_n2(n: usize, cap: usize) -> Result<Vec<ColoredGraph>, GraphError> {
    if n < 1 || n > cap {
        return Err(GraphError::SizeOutOfRange { got: n, min: 1, max: cap });
    }
    let targets: Vec<Vec<Target>> = (0..n)
        .map(|r| {
            let mut t: Vec<Target> = (0..n).filter(|&x| x != r).map(Target::Internal).collect();
            t.push(Target::Ground(0));
            t.push(Target::Ground(1));
            t
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![(0usize, 0usize); n];
    'outer: loop {
        let mut edges = Vec::with_capacity(2 * n);
        let mut ok = true;
        for r in 0..n {
            let (a, b) = choice[r];
            if a == b {
                ok = false;
                break;
            }
            edges.push(Edge { source: r, target: targets[r][a] });
            edges.push(Edge { source: r, target: targets[r][b] });
        }
        if ok {
            out.push(ColoredGraph::new(n, 2, edges)?);
        }
        // advance the mixed-radix counter over ordered pairs
        for r in (0..n).rev() {
            let base = targets[r].len();
            choice[r].1 += 1;
            if choice[r].1 == base {
                choice[r].1 = 0;
                choice[r].0 += 1;
                if choice[r].0 == base {
                    choice[r].0 = 0;
                    if r == 0 {
                        break 'outer;
                    }
                    continue;
                }
            }
            break;
        }
    }
    Ok(out)
}

/// Structural family classification; slot orderings do not affect the tag.
pub fn classify(g: &ColoredGraph) -> FamilyTag {
    let n = g.n_internal();
    if g.n_ground() == 2 {
        return if g.infinity_edge().is_none() { FamilyTag::TwoPoint(n) } else { FamilyTag::Other };
    }
    let ground_count: Vec<usize> = (0..n)
        .map(|r| {
            let (a, b) = g.slots(r);
            [a, b]
                .iter()
                .filter(|&&i| matches!(g.edges()[i].target, Target::Ground(_)))
                .count()
        })
        .collect();
    let internal_out: Vec<Vec<usize>> = (0..n)
        .map(|r| {
            let (a, b) = g.slots(r);
            [a, b]
                .iter()
                .filter_map(|&i| match g.edges()[i].target {
                    Target::Internal(t) => Some(t),
                    _ => None,
                })
                .collect()
        })
        .collect();
    let mut in_deg = vec![0usize; n];
    for outs in &internal_out {
        for &t in outs {
            in_deg[t] += 1;
        }
    }

    match g.infinity_edge() {
        None => {
            // wheel: single cycle covering all vertices, one ground edge each
            if !(ground_count.iter().all(|&c| c == 1)
                && internal_out.iter().all(|o| o.len() == 1)
                && in_deg.iter().all(|&d| d == 1))
            {
                return FamilyTag::Other;
            }
            let mut at = 0;
            for step in 1..=n {
                at = internal_out[at][0];
                if at == 0 {
                    return if step == n { FamilyTag::Wheel(n) } else { FamilyTag::Other };
                }
            }
            FamilyTag::Other
        }
        Some(inf_edge) => {
            let terminal = g.edges()[inf_edge].source;
            if ground_count.iter().all(|&c| c == 1) {
                // chain: unique root, a path covering all vertices, dangling
                // edge at the far end
                let roots: Vec<usize> = (0..n).filter(|&v| in_deg[v] == 0).collect();
                if roots.len() != 1 || in_deg.iter().any(|&d| d > 1) {
                    return FamilyTag::Other;
                }
                let mut seen = 1;
                let mut at = roots[0];
                while let Some(&next) = internal_out[at].first() {
                    at = next;
                    seen += 1;
                    if seen > n {
                        return FamilyTag::Other;
                    }
                }
                if seen == n && at == terminal {
                    FamilyTag::Bernoulli(n)
                } else {
                    FamilyTag::Other
                }
            } else {
                // chain attached to a wheel: every in-degree 1, exactly one
                // vertex derives nothing and emits the attachment
                let silent: Vec<usize> = (0..n).filter(|&v| ground_count[v] == 0).collect();
                if silent.len() != 1
                    || in_deg.iter().any(|&d| d != 1)
                    || ground_count.iter().any(|&c| c > 1)
                {
                    return FamilyTag::Other;
                }
                let a = silent[0];
                if internal_out[a].len() != 2 {
                    return FamilyTag::Other;
                }
                // in-degree 1 everywhere gives unique predecessors; the
                // cycle through a is its predecessor orbit
                let mut pred = vec![0usize; n];
                for (src, outs) in internal_out.iter().enumerate() {
                    for &t in outs {
                        pred[t] = src;
                    }
                }
                let mut on_cycle = vec![false; n];
                on_cycle[a] = true;
                let mut wheel = 1;
                let mut cur = pred[a];
                while cur != a {
                    if on_cycle[cur] || wheel > n {
                        return FamilyTag::Other;
                    }
                    on_cycle[cur] = true;
                    wheel += 1;
                    cur = pred[cur];
                }
                let chain = n - wheel;
                if chain < 1 || wheel < 2 || on_cycle[terminal] {
                    return FamilyTag::Other;
                }
                // the attachment leaves the cycle and the chain walks from
                // its target to the dangling vertex
                let attach_targets: Vec<usize> =
                    internal_out[a].iter().copied().filter(|&t| !on_cycle[t]).collect();
                if attach_targets.len() != 1 {
                    return FamilyTag::Other;
                }
                let mut at = attach_targets[0];
                let mut seen = 1;
                while let Some(&next) = internal_out[at].first() {
                    if on_cycle[next] || seen > n {
                        return FamilyTag::Other;
                    }
                    at = next;
                    seen += 1;
                }
                if seen == chain && at == terminal {
                    FamilyTag::BernoulliWheel { total: n, chain, wheel }
                } else {
                    FamilyTag::Other
                }
            }
        }
    }
}
