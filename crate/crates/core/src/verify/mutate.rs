//! Deliberate corruptions of a crystal graph, used to show that the
//! checkers notice broken input.

use crate::crystal::{CrystalGraph, ExtInt, Link};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Remove the first `f_i` edge together with its `e_i` partner.
    DeleteEdge,
    /// Move the first movable `i`-edge to another free color `j`.
    RelabelEdge,
    /// Add one to `eps_i` at the first node.
    EpsOffByOne,
}

pub const STANDARD_MUTATIONS: [Mutation; 3] = [Mutation::DeleteEdge, Mutation::RelabelEdge, Mutation::EpsOffByOne];

/// Applies `m` and describes what changed, or `None` if the graph offers no
/// place to apply it.
pub fn mutate(g: &CrystalGraph, m: Mutation) -> Option<(CrystalGraph, String)> {
    let mut out = g.clone();
    match m {
        Mutation::DeleteEdge => {
            let (a, p, b) = g.edges().next()?;
            out.nodes[a].f[p] = Link::Absent;
            if out.nodes[b].e[p] == Link::To(a) {
                out.nodes[b].e[p] = Link::Absent;
            }
            Some((out, format!("deleted edge {a} -{}-> {b}", g.index_label(p))))
        }
        Mutation::RelabelEdge => {
            let k = g.indices.len();
            for (a, p, b) in g.edges() {
                for q in (0..k).filter(|&q| q != p) {
                    if g.nodes[a].f[q] == Link::Absent && g.nodes[b].e[q] == Link::Absent {
                        out.nodes[a].f[p] = Link::Absent;
                        if out.nodes[b].e[p] == Link::To(a) {
                            out.nodes[b].e[p] = Link::Absent;
                        }
                        out.nodes[a].f[q] = Link::To(b);
                        out.nodes[b].e[q] = Link::To(a);
                        return Some((
                            out,
                            format!("relabelled edge {a} -{}-> {b} as {}", g.index_label(p), g.index_label(q)),
                        ));
                    }
                }
            }
            None
        }
        Mutation::EpsOffByOne => {
            let node = out.nodes.first_mut()?;
            let e = node.eps.first_mut()?;
            *e = match *e {
                ExtInt::Fin(v) => ExtInt::Fin(v + 1),
                ExtInt::NegInf => ExtInt::Fin(0),
            };
            Some((out, format!("eps_{} of node 0 increased by one", g.index_label(0))))
        }
    }
}
