use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Crystal, CrystalError, ExtInt};
use crate::cartan::{CartanSpec, Weight};

/// Default cap on the number of nodes a single exploration may create.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Where `e_i` or `f_i` of a node leads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Link {
    /// The operator gives 0.
    Absent,
    To(usize),
    /// The target exists but was not added to the graph (depth bound,
    /// budget, or a direction that was not explored).
    Outside,
}

impl Link {
    pub fn target(self) -> Option<usize> {
        match self {
            Link::To(t) => Some(t),
            _ => None,
        }
    }
}

/// A node with its cached statistics. `eps`, `phi`, `f` and `e` are indexed
/// by position in [`CrystalGraph::indices`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub label: String,
    pub wt: Weight,
    pub eps: Vec<ExtInt>,
    pub phi: Vec<ExtInt>,
    pub f: Vec<Link>,
    pub e: Vec<Link>,
    pub depth: usize,
}

/// An explored piece of a crystal, detached from its element type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalGraph {
    pub cartan: CartanSpec,
    /// Active indices (positions in `cartan`), in increasing order.
    pub indices: Vec<usize>,
    pub nodes: Vec<Node>,
    pub sources: Vec<usize>,
    pub truncated: bool,
    pub depth_bound: Option<usize>,
    pub budget_exceeded: bool,
    pub axiom_unsafe: bool,
}

/// Which operators grow the exploration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// `f_i` only.
    Lower,
    /// `e_i` only.
    Raise,
    #[default]
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreOptions {
    pub depth: Option<usize>,
    pub direction: Direction,
    pub budget: usize,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            depth: None,
            direction: Direction::Both,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl ExploreOptions {
    pub fn depth(mut self, depth: usize) -> Self {
        self.depth = Some(depth);
        self
    }

    pub fn direction(mut self, direction: Direction) -> Self {
        self.direction = direction;
        self
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
}

/// A [`CrystalGraph`] together with the elements behind its nodes.
#[derive(Clone, Debug)]
pub struct Exploration<E> {
    pub graph: CrystalGraph,
    pub elements: Vec<E>,
    index: HashMap<E, usize>,
}

impl<E: Clone + Eq + std::hash::Hash> Exploration<E> {
    pub fn node_of(&self, elem: &E) -> Option<usize> {
        self.index.get(elem).copied()
    }

    pub fn element(&self, id: usize) -> &E {
        &self.elements[id]
    }
}

#[derive(Debug, Error)]
#[error("node budget of {budget} exceeded; partial graph has {} nodes", partial.graph.nodes.len())]
pub struct BudgetExceeded<E: fmt::Debug> {
    pub budget: usize,
    pub partial: Box<Exploration<E>>,
}

/// Breadth-first closure of `seeds` under the operators selected by
/// `opts.direction`. Node order is BFS layer, then insertion order; for each
/// node the indices are visited in increasing order, `f` before `e`.
///
/// Both links of every recorded node are filled in; a target that the
/// exploration was not allowed to add is recorded as [`Link::Outside`].
pub fn explore<C: Crystal>(
    crystal: &C,
    seeds: &[C::Elem],
    opts: ExploreOptions,
) -> Result<Exploration<C::Elem>, BudgetExceeded<C::Elem>> {
    let indices = crystal.indices();
    let mut ex = Exploration {
        graph: CrystalGraph {
            cartan: crystal.cartan().clone(),
            indices: indices.clone(),
            nodes: Vec::new(),
            sources: Vec::new(),
            truncated: false,
            depth_bound: opts.depth,
            budget_exceeded: false,
            axiom_unsafe: crystal.axiom_unsafe(),
        },
        elements: Vec::new(),
        index: HashMap::new(),
    };

    let add = |ex: &mut Exploration<C::Elem>, elem: C::Elem, depth: usize| -> usize {
        let id = ex.elements.len();
        let k = indices.len();
        ex.graph.nodes.push(Node {
            label: crystal.render(&elem),
            wt: crystal.wt(&elem),
            eps: indices.iter().map(|&i| crystal.eps(&elem, i)).collect(),
            phi: indices.iter().map(|&i| crystal.phi(&elem, i)).collect(),
            f: vec![Link::Outside; k],
            e: vec![Link::Outside; k],
            depth,
        });
        ex.index.insert(elem.clone(), id);
        ex.elements.push(elem);
        id
    };

    for seed in seeds {
        let id = match ex.index.get(seed) {
            Some(&id) => id,
            None => {
                if ex.elements.len() >= opts.budget {
                    ex.graph.budget_exceeded = true;
                    ex.graph.truncated = true;
                    break;
                }
                add(&mut ex, seed.clone(), 0)
            }
        };
        if !ex.graph.sources.contains(&id) {
            ex.graph.sources.push(id);
        }
    }

    let grow_f = matches!(opts.direction, Direction::Lower | Direction::Both);
    let grow_e = matches!(opts.direction, Direction::Raise | Direction::Both);
    let mut cursor = 0;
    while cursor < ex.elements.len() {
        let id = cursor;
        cursor += 1;
        let elem = ex.elements[id].clone();
        let depth = ex.graph.nodes[id].depth;
        for (p, &i) in indices.iter().enumerate() {
            for (is_f, grow) in [(true, grow_f), (false, grow_e)] {
                let target = if is_f { crystal.f(&elem, i) } else { crystal.e(&elem, i) };
                let link = match target {
                    None => Link::Absent,
                    Some(t) => match ex.index.get(&t) {
                        Some(&tid) => Link::To(tid),
                        None if !grow => Link::Outside,
                        None if opts.depth.is_some_and(|b| depth >= b) => {
                            ex.graph.truncated = true;
                            Link::Outside
                        }
                        None if ex.elements.len() >= opts.budget => {
                            ex.graph.budget_exceeded = true;
                            ex.graph.truncated = true;
                            Link::Outside
                        }
                        None => Link::To(add(&mut ex, t, depth + 1)),
                    },
                };
                let node = &mut ex.graph.nodes[id];
                if is_f {
                    node.f[p] = link;
                } else {
                    node.e[p] = link;
                }
            }
        }
    }

    if ex.graph.budget_exceeded {
        Err(BudgetExceeded {
            budget: opts.budget,
            partial: Box::new(ex),
        })
    } else {
        Ok(ex)
    }
}

/// Which string statistic a semi-normality witness refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StringStat {
    Eps,
    Phi,
}

/// Outcome of [`CrystalGraph::is_semi_normal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiNormality {
    Holds { checked: usize, skipped: usize },
    Fails { node: usize, index: usize, stat: StringStat, expected: ExtInt, found: usize },
    /// Every string left the explored region.
    Inconclusive { skipped: usize },
}

impl SemiNormality {
    pub fn holds(&self) -> bool {
        matches!(self, SemiNormality::Holds { .. })
    }
}

impl CrystalGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Position of index `i` in [`CrystalGraph::indices`].
    pub fn position(&self, i: usize) -> Option<usize> {
        self.indices.iter().position(|&x| x == i)
    }

    pub fn index_label(&self, p: usize) -> &str {
        self.cartan.label(self.indices[p])
    }

    /// `f`-edges `(source, position of i, target)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.nodes.iter().enumerate().flat_map(|(a, n)| {
            n.f.iter()
                .enumerate()
                .filter_map(move |(p, l)| l.target().map(|b| (a, p, b)))
        })
    }

    /// `e`-edges `(source, position of i, target)`.
    pub fn e_edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.nodes.iter().enumerate().flat_map(|(a, n)| {
            n.e.iter()
                .enumerate()
                .filter_map(move |(p, l)| l.target().map(|b| (a, p, b)))
        })
    }

    /// Length of the `e_i` (or `f_i`) string starting at `node`, or `None`
    /// if it leaves the graph. Strings longer than the graph are cut at
    /// `len() + 1`.
    pub fn string_length(&self, node: usize, p: usize, stat: StringStat) -> Option<usize> {
        let mut cur = node;
        let mut count = 0;
        loop {
            let link = match stat {
                StringStat::Eps => self.nodes[cur].e[p],
                StringStat::Phi => self.nodes[cur].f[p],
            };
            match link {
                Link::Absent => return Some(count),
                Link::Outside => return None,
                Link::To(t) => {
                    count += 1;
                    cur = t;
                    if count > self.nodes.len() {
                        return Some(count);
                    }
                }
            }
        }
    }

    /// Checks `eps_i(b) = max{n ; e_i^n b != 0}` and the `phi`/`f` analogue
    /// at every node whose strings stay inside the graph.
    pub fn is_semi_normal(&self) -> SemiNormality {
        let (mut checked, mut skipped) = (0, 0);
        for (id, node) in self.nodes.iter().enumerate() {
            for p in 0..self.indices.len() {
                for stat in [StringStat::Eps, StringStat::Phi] {
                    let expected = match stat {
                        StringStat::Eps => node.eps[p],
                        StringStat::Phi => node.phi[p],
                    };
                    match self.string_length(id, p, stat) {
                        None => skipped += 1,
                        Some(found) => {
                            checked += 1;
                            if expected != ExtInt::Fin(found as i64) {
                                return SemiNormality::Fails {
                                    node: id,
                                    index: self.indices[p],
                                    stat,
                                    expected,
                                    found,
                                };
                            }
                        }
                    }
                }
            }
        }
        if checked == 0 && skipped > 0 {
            SemiNormality::Inconclusive { skipped }
        } else {
            SemiNormality::Holds { checked, skipped }
        }
    }

    /// Nodes annihilated by every `e_i`.
    pub fn hw_elements(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&id| self.nodes[id].e.iter().all(|l| *l == Link::Absent))
            .collect()
    }

    /// The graph seen through `Psi_J`: only the indices in `j` remain.
    pub fn restrict(&self, j: &[usize]) -> CrystalGraph {
        let keep: Vec<usize> = (0..self.indices.len())
            .filter(|&p| j.contains(&self.indices[p]))
            .collect();
        let pick = |v: &Vec<ExtInt>| keep.iter().map(|&p| v[p]).collect::<Vec<_>>();
        let pick_l = |v: &Vec<Link>| keep.iter().map(|&p| v[p]).collect::<Vec<_>>();
        CrystalGraph {
            indices: keep.iter().map(|&p| self.indices[p]).collect(),
            nodes: self
                .nodes
                .iter()
                .map(|n| Node {
                    label: n.label.clone(),
                    wt: n.wt.clone(),
                    eps: pick(&n.eps),
                    phi: pick(&n.phi),
                    f: pick_l(&n.f),
                    e: pick_l(&n.e),
                    depth: n.depth,
                })
                .collect(),
            ..self.clone_header()
        }
    }

    fn clone_header(&self) -> CrystalGraph {
        CrystalGraph {
            cartan: self.cartan.clone(),
            indices: self.indices.clone(),
            nodes: Vec::new(),
            sources: self.sources.clone(),
            truncated: self.truncated,
            depth_bound: self.depth_bound,
            budget_exceeded: self.budget_exceeded,
            axiom_unsafe: self.axiom_unsafe,
        }
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// ordered by smallest node id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, _, b) in self.edges().chain(self.e_edges()) {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![start];
            comp[start] = c;
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                for &b in &adj[a] {
                    if comp[b] == usize::MAX {
                        comp[b] = c;
                        members.push(b);
                        stack.push(b);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// The subgraph on `members` (renumbered in the given order). Links
    /// leaving the set become [`Link::Outside`].
    pub fn induced(&self, members: &[usize]) -> CrystalGraph {
        let remap: HashMap<usize, usize> = members.iter().enumerate().map(|(k, &id)| (id, k)).collect();
        let map_link = |l: &Link| match l {
            Link::To(t) => remap.get(t).map_or(Link::Outside, |&k| Link::To(k)),
            other => *other,
        };
        let outside_any = members.iter().any(|id| {
            let n = &self.nodes[*id];
            n.f.iter().chain(&n.e).any(|l| matches!(l, Link::To(t) if !remap.contains_key(t)))
        });
        CrystalGraph {
            nodes: members
                .iter()
                .map(|&id| {
                    let n = &self.nodes[id];
                    Node {
                        f: n.f.iter().map(map_link).collect(),
                        e: n.e.iter().map(map_link).collect(),
                        ..n.clone()
                    }
                })
                .collect(),
            sources: self.sources.iter().filter_map(|s| remap.get(s).copied()).collect(),
            truncated: self.truncated || outside_any,
            ..self.clone_header()
        }
    }

    /// Whether any link of the given nodes leaves the graph.
    pub fn touches_boundary(&self, members: &[usize]) -> bool {
        members.iter().any(|&id| {
            let n = &self.nodes[id];
            n.f.iter().chain(&n.e).any(|l| *l == Link::Outside)
        })
    }

    /// Root-preserving isomorphism certificate: BFS from `root` following
    /// `f_i` then `e_i` for each index in order, nodes renamed by visit order.
    /// Labels are not part of the certificate.
    pub fn canonical_form(&self, root: usize) -> Result<String, CrystalError> {
        if root >= self.nodes.len() {
            return Err(CrystalError::UnknownNode(root));
        }
        let mut order = vec![root];
        let mut seen: HashMap<usize, usize> = HashMap::from([(root, 0)]);
        let mut queue = VecDeque::from([root]);
        while let Some(a) = queue.pop_front() {
            let n = &self.nodes[a];
            for p in 0..self.indices.len() {
                for l in [n.f[p], n.e[p]] {
                    if let Link::To(t) = l {
                        if let std::collections::hash_map::Entry::Vacant(v) = seen.entry(t) {
                            v.insert(order.len());
                            order.push(t);
                            queue.push_back(t);
                        }
                    }
                }
            }
        }
        if order.len() != self.nodes.len() {
            return Err(CrystalError::Disconnected {
                reached: order.len(),
                total: self.nodes.len(),
            });
        }
        let link = |l: Link| match l {
            Link::Absent => "-".to_string(),
            Link::Outside => "?".to_string(),
            Link::To(t) => seen[&t].to_string(),
        };
        let join = |v: Vec<String>| v.join(",");
        let mut out = String::new();
        let labels: Vec<&str> = (0..self.indices.len()).map(|p| self.index_label(p)).collect();
        writeln!(out, "indices {}", labels.join(" ")).unwrap();
        for (k, &id) in order.iter().enumerate() {
            let n = &self.nodes[id];
            writeln!(
                out,
                "{k} wt=[{}] eps=[{}] phi=[{}] f=[{}] e=[{}]",
                join(n.wt.0.iter().map(|x| x.to_string()).collect()),
                join(n.eps.iter().map(|x| x.to_string()).collect()),
                join(n.phi.iter().map(|x| x.to_string()).collect()),
                join(n.f.iter().map(|&l| link(l)).collect()),
                join(n.e.iter().map(|&l| link(l)).collect()),
            )
            .unwrap();
        }
        Ok(out)
    }

    /// Human-readable listing with labels: nodes in graph order, then
    /// `f`-edges.
    pub fn listing(&self) -> String {
        let mut out = String::new();
        for (id, n) in self.nodes.iter().enumerate() {
            writeln!(out, "node {id} {} wt={}", n.label, n.wt).unwrap();
        }
        for (a, p, b) in self.edges() {
            writeln!(out, "edge {a} -{}-> {b}", self.index_label(p)).unwrap();
        }
        out
    }

    /// Multiset of node weights.
    pub fn weight_multiset(&self) -> BTreeMap<Weight, u64> {
        let mut m = BTreeMap::new();
        for n in &self.nodes {
            *m.entry(n.wt.clone()).or_insert(0) += 1;
        }
        m
    }

    pub fn to_dot(&self) -> String {
        let esc = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
        let mut out = String::from("digraph crystal {\n  node [shape=box];\n");
        for (id, n) in self.nodes.iter().enumerate() {
            let shape = if self.sources.contains(&id) { ", style=bold" } else { "" };
            writeln!(out, "  n{id} [label=\"{}\"{shape}];", esc(&n.label)).unwrap();
        }
        for (a, p, b) in self.edges() {
            writeln!(out, "  n{a} -> n{b} [label=\"{}\"];", esc(self.index_label(p))).unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphJson::from(self)).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<CrystalGraph, GraphFormatError> {
        let raw: GraphJson = serde_json::from_str(s).map_err(|e| GraphFormatError::Json(e.to_string()))?;
        raw.try_into()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphFormatError {
    #[error("invalid graph JSON: {0}")]
    Json(String),
    #[error("invalid graph: {0}")]
    Invalid(String),
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    src: usize,
    i: String,
    dst: usize,
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    id: usize,
    wt: Weight,
    eps: Vec<ExtInt>,
    phi: Vec<ExtInt>,
    label: String,
    #[serde(default)]
    depth: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    outside_f: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    outside_e: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    cartan: CartanSpec,
    indices: Vec<String>,
    nodes: Vec<NodeJson>,
    edges: Vec<EdgeJson>,
    /// Absent in hand-written files: then `e` is taken as the inverse of `f`.
    #[serde(default)]
    e_edges: Option<Vec<EdgeJson>>,
    sources: Vec<usize>,
    truncated: bool,
    #[serde(default)]
    depth_bound: Option<usize>,
    #[serde(default)]
    budget_exceeded: bool,
    #[serde(default)]
    axiom_unsafe: bool,
}

impl From<&CrystalGraph> for GraphJson {
    fn from(g: &CrystalGraph) -> Self {
        let edge = |(src, p, dst): (usize, usize, usize)| EdgeJson {
            src,
            i: g.index_label(p).to_string(),
            dst,
        };
        let outside = |links: &[Link]| {
            links
                .iter()
                .enumerate()
                .filter(|(_, l)| **l == Link::Outside)
                .map(|(p, _)| g.index_label(p).to_string())
                .collect()
        };
        GraphJson {
            cartan: g.cartan.clone(),
            indices: (0..g.indices.len()).map(|p| g.index_label(p).to_string()).collect(),
            nodes: g
                .nodes
                .iter()
                .enumerate()
                .map(|(id, n)| NodeJson {
                    id,
                    wt: n.wt.clone(),
                    eps: n.eps.clone(),
                    phi: n.phi.clone(),
                    label: n.label.clone(),
                    depth: n.depth,
                    outside_f: outside(&n.f),
                    outside_e: outside(&n.e),
                })
                .collect(),
            edges: g.edges().map(edge).collect(),
            e_edges: Some(g.e_edges().map(edge).collect()),
            sources: g.sources.clone(),
            truncated: g.truncated,
            depth_bound: g.depth_bound,
            budget_exceeded: g.budget_exceeded,
            axiom_unsafe: g.axiom_unsafe,
        }
    }
}

impl TryFrom<GraphJson> for CrystalGraph {
    type Error = GraphFormatError;

    fn try_from(raw: GraphJson) -> Result<Self, Self::Error> {
        let bad = |m: String| GraphFormatError::Invalid(m);
        let cartan = raw.cartan;
        let indices = raw
            .indices
            .iter()
            .map(|l| cartan.index_of(l).map_err(|e| bad(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let k = indices.len();
        let pos = |label: &str| -> Result<usize, GraphFormatError> {
            let i = cartan.index_of(label).map_err(|e| bad(e.to_string()))?;
            indices
                .iter()
                .position(|&x| x == i)
                .ok_or_else(|| bad(format!("index {label} is not active")))
        };
        let n = raw.nodes.len();
        let mut nodes = Vec::with_capacity(n);
        for (id, nj) in raw.nodes.into_iter().enumerate() {
            if nj.id != id {
                return Err(bad(format!("node ids must be 0..{n} in order (found {} at {id})", nj.id)));
            }
            if nj.eps.len() != k || nj.phi.len() != k || nj.wt.rank() != cartan.rank() {
                return Err(bad(format!("node {id} has vectors of the wrong length")));
            }
            let mut f = vec![Link::Absent; k];
            let mut e = vec![Link::Absent; k];
            for l in &nj.outside_f {
                f[pos(l)?] = Link::Outside;
            }
            for l in &nj.outside_e {
                e[pos(l)?] = Link::Outside;
            }
            nodes.push(Node {
                label: nj.label,
                wt: nj.wt,
                eps: nj.eps,
                phi: nj.phi,
                f,
                e,
                depth: nj.depth,
            });
        }
        let check = |id: usize| if id < n { Ok(id) } else { Err(bad(format!("edge endpoint {id} out of range"))) };
        for ed in &raw.edges {
            let (a, b, p) = (check(ed.src)?, check(ed.dst)?, pos(&ed.i)?);
            if nodes[a].f[p] != Link::Absent {
                return Err(bad(format!("node {a} has two outgoing {}-edges", ed.i)));
            }
            nodes[a].f[p] = Link::To(b);
        }
        match raw.e_edges {
            Some(e_edges) => {
                for ed in &e_edges {
                    let (a, b, p) = (check(ed.src)?, check(ed.dst)?, pos(&ed.i)?);
                    if nodes[a].e[p] != Link::Absent {
                        return Err(bad(format!("node {a} has two outgoing {}-e-edges", ed.i)));
                    }
                    nodes[a].e[p] = Link::To(b);
                }
            }
            None => {
                for ed in &raw.edges {
                    let (a, b, p) = (ed.src, ed.dst, pos(&ed.i)?);
                    if nodes[b].e[p] != Link::Absent {
                        return Err(bad(format!("node {b} has two incoming {}-edges", ed.i)));
                    }
                    nodes[b].e[p] = Link::To(a);
                }
            }
        }
        for &s in &raw.sources {
            check(s)?;
        }
        Ok(CrystalGraph {
            cartan,
            indices,
            nodes,
            sources: raw.sources,
            truncated: raw.truncated,
            depth_bound: raw.depth_bound,
            budget_exceeded: raw.budget_exceeded,
            axiom_unsafe: raw.axiom_unsafe,
        })
    }
}
