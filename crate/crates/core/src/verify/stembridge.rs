//! Stembridge's local axioms for simply-laced crystal graphs, with
//! `delta_j = -eps_j` and the difference operators
//! `D_i g(x) = g(e_i x) - g(x)`, `N_i g(y) = g(y) - g(f_i y)`.

use crate::crystal::{CrystalGraph, Link};

use super::report::{CheckReport, Violation, Witness};

pub const AXIOMS: [&str; 6] = ["P3", "P4", "P5", "P6", "P5'", "P6'"];

#[derive(Clone, Copy)]
enum Op {
    E(usize),
    F(usize),
}

/// Applies the word right to left (the last entry acts first). `None`
/// means the walk left the graph, `Some(None)` that it hit 0.
fn apply(g: &CrystalGraph, x: usize, word: &[Op]) -> Option<Option<usize>> {
    let mut cur = x;
    for op in word.iter().rev() {
        let link = match *op {
            Op::E(p) => g.nodes[cur].e[p],
            Op::F(p) => g.nodes[cur].f[p],
        };
        match link {
            Link::To(t) => cur = t,
            Link::Absent => return Some(None),
            Link::Outside => return None,
        }
    }
    Some(Some(cur))
}

fn delta(g: &CrystalGraph, x: usize, p: usize) -> Option<i64> {
    g.nodes[x].eps[p].finite().map(|v| -v)
}

fn phi(g: &CrystalGraph, x: usize, p: usize) -> Option<i64> {
    g.nodes[x].phi[p].finite()
}

/// `D_i delta_j(x)` and `D_i phi_j(x)`, if `e_i x` is a node.
fn d_raise(g: &CrystalGraph, x: usize, pi: usize, pj: usize) -> Option<(i64, i64)> {
    let y = apply(g, x, &[Op::E(pi)])??;
    Some((delta(g, y, pj)? - delta(g, x, pj)?, phi(g, y, pj)? - phi(g, x, pj)?))
}

/// `N_i delta_j(y)` and `N_i phi_j(y)`, if `f_i y` is a node.
fn d_lower(g: &CrystalGraph, y: usize, pi: usize, pj: usize) -> Option<(i64, i64)> {
    let x = apply(g, y, &[Op::F(pi)])??;
    Some((delta(g, y, pj)? - delta(g, x, pj)?, phi(g, y, pj)? - phi(g, x, pj)?))
}

fn both_defined(g: &CrystalGraph, x: usize, a: Op, b: Op) -> bool {
    matches!(apply(g, x, &[a]), Some(Some(_))) && matches!(apply(g, x, &[b]), Some(Some(_)))
}

/// Evaluates one axiom at node `x` for the ordered pair of index positions
/// `(pi, pj)`. `Some(true)` is a violation, `Some(false)` a pass and `None`
/// means the axiom does not apply or needs nodes outside the graph.
fn eval(g: &CrystalGraph, x: usize, pi: usize, pj: usize, axiom: &str) -> Option<bool> {
    let (i, j) = (g.indices[pi], g.indices[pj]);
    match axiom {
        "P3" => {
            let (dd, dp) = d_raise(g, x, pi, pj)?;
            Some(dd + dp != g.cartan.a(j, i))
        }
        "P4" => {
            let (dd, dp) = d_raise(g, x, pi, pj)?;
            Some(dd > 0 || dp > 0)
        }
        "P5" => {
            if !both_defined(g, x, Op::E(pi), Op::E(pj)) || d_raise(g, x, pi, pj)?.0 != 0 {
                return None;
            }
            let y1 = apply(g, x, &[Op::E(pi), Op::E(pj)])?;
            let y2 = apply(g, x, &[Op::E(pj), Op::E(pi)])?;
            match (y1, y2) {
                (Some(a), Some(b)) if a == b => Some(d_lower(g, a, pj, pi)?.1 != 0),
                _ => Some(true),
            }
        }
        "P6" => {
            if !both_defined(g, x, Op::E(pi), Op::E(pj))
                || d_raise(g, x, pi, pj)?.0 != -1
                || d_raise(g, x, pj, pi)?.0 != -1
            {
                return None;
            }
            let y1 = apply(g, x, &[Op::E(pi), Op::E(pj), Op::E(pj), Op::E(pi)])?;
            let y2 = apply(g, x, &[Op::E(pj), Op::E(pi), Op::E(pi), Op::E(pj)])?;
            match (y1, y2) {
                (Some(a), Some(b)) if a == b => {
                    Some(d_lower(g, a, pi, pj)?.1 != -1 || d_lower(g, a, pj, pi)?.1 != -1)
                }
                _ => Some(true),
            }
        }
        "P5'" => {
            if !both_defined(g, x, Op::F(pi), Op::F(pj)) || d_lower(g, x, pi, pj)?.1 != 0 {
                return None;
            }
            let y1 = apply(g, x, &[Op::F(pi), Op::F(pj)])?;
            let y2 = apply(g, x, &[Op::F(pj), Op::F(pi)])?;
            match (y1, y2) {
                (Some(a), Some(b)) if a == b => Some(d_raise(g, a, pj, pi)?.0 != 0),
                _ => Some(true),
            }
        }
        "P6'" => {
            if !both_defined(g, x, Op::F(pi), Op::F(pj))
                || d_lower(g, x, pi, pj)?.1 != -1
                || d_lower(g, x, pj, pi)?.1 != -1
            {
                return None;
            }
            let y1 = apply(g, x, &[Op::F(pi), Op::F(pj), Op::F(pj), Op::F(pi)])?;
            let y2 = apply(g, x, &[Op::F(pj), Op::F(pi), Op::F(pi), Op::F(pj)])?;
            match (y1, y2) {
                (Some(a), Some(b)) if a == b => {
                    Some(d_raise(g, a, pi, pj)?.0 != -1 || d_raise(g, a, pj, pi)?.0 != -1)
                }
                _ => Some(true),
            }
        }
        _ => None,
    }
}

/// Checks the local axioms at every node and ordered pair of indices.
/// Only meaningful for simply-laced Cartan data; other types are reported
/// `INCONCLUSIVE`.
pub fn stembridge_check(g: &CrystalGraph) -> CheckReport {
    let mut r = CheckReport::new("stembridge");
    r.stats.nodes = g.len();
    r.stats.depth = g.depth_bound;
    if !g.cartan.is_simply_laced() {
        r.inconclusive("the local axioms only characterize simply-laced crystals");
        return r;
    }
    let k = g.indices.len();
    for x in 0..g.len() {
        for pi in 0..k {
            for pj in 0..k {
                if pi == pj {
                    continue;
                }
                for axiom in AXIOMS {
                    match eval(g, x, pi, pj, axiom) {
                        None => {}
                        Some(false) => r.stats.checked += 1,
                        Some(true) => {
                            r.stats.checked += 1;
                            let (i, j) = (g.indices[pi], g.indices[pj]);
                            r.fail(Witness {
                                violation: Violation::Stembridge { node: x, i, j, axiom: axiom.to_string() },
                                labels: vec![g.nodes[x].label.clone()],
                                detail: format!(
                                    "{axiom} fails at {} for (i, j) = ({}, {})",
                                    g.nodes[x].label,
                                    g.cartan.label(i),
                                    g.cartan.label(j)
                                ),
                            });
                        }
                    }
                }
            }
        }
    }
    r
}

pub(super) fn recheck(g: &CrystalGraph, x: usize, i: usize, j: usize, axiom: &str) -> Option<bool> {
    eval(g, x, g.position(i)?, g.position(j)?, axiom)
}
