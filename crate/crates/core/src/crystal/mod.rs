//! The uniform crystal interface and the generic constructions built on it:
//! the one-element crystals `T_lambda`, the elementary crystals `B_i`, duals,
//! tensor products, restriction to a subset of indices, and component
//! exploration into a [`CrystalGraph`].

mod elementary;
mod ext_int;
mod graph;
mod ops;

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::cartan::{CartanSpec, Weight};

pub use elementary::{ElementaryBi, TLambda};
pub use ext_int::ExtInt;
pub use graph::{
    explore, BudgetExceeded, CrystalGraph, Direction, Exploration, ExploreOptions, GraphFormatError, Link,
    Node, SemiNormality, StringStat, DEFAULT_BUDGET,
};
pub use ops::{dual, restrict, tensor, Dual, Restricted, Tensor, TensorList};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrystalError {
    #[error("tensor factors use different Cartan data ({0} vs {1})")]
    MismatchedCartan(String, String),
    #[error("graph is not connected from the chosen root ({reached} of {total} nodes reached)")]
    Disconnected { reached: usize, total: usize },
    #[error("node {0} is not in the graph")]
    UnknownNode(usize),
    #[error("index {0} is not part of the crystal interface")]
    UnknownIndex(usize),
    #[error("a tensor product needs at least one factor")]
    EmptyTensor,
}

/// A crystal: a weight map, the statistics `eps_i`, `phi_i` and the partial
/// operators `e_i`, `f_i`. The crystal value `0` is `None`.
///
/// Indices are positions in [`Crystal::cartan`]'s label list.
pub trait Crystal {
    type Elem: Clone + Eq + Hash + fmt::Debug;

    fn cartan(&self) -> &CartanSpec;
    fn wt(&self, b: &Self::Elem) -> Weight;
    fn eps(&self, b: &Self::Elem, i: usize) -> ExtInt;
    fn phi(&self, b: &Self::Elem, i: usize) -> ExtInt;
    fn e(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem>;
    fn f(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem>;

    /// The indices this crystal exposes (all of `I` unless restricted).
    fn indices(&self) -> Vec<usize> {
        (0..self.cartan().rank()).collect()
    }

    fn render(&self, b: &Self::Elem) -> String {
        format!("{b:?}")
    }

    /// Set by realizations that are known to violate the crystal axioms, so
    /// that checkers report an expected failure rather than a bug.
    fn axiom_unsafe(&self) -> bool {
        false
    }
}

impl<C: Crystal + ?Sized> Crystal for &C {
    type Elem = C::Elem;

    fn cartan(&self) -> &CartanSpec {
        (**self).cartan()
    }
    fn wt(&self, b: &Self::Elem) -> Weight {
        (**self).wt(b)
    }
    fn eps(&self, b: &Self::Elem, i: usize) -> ExtInt {
        (**self).eps(b, i)
    }
    fn phi(&self, b: &Self::Elem, i: usize) -> ExtInt {
        (**self).phi(b, i)
    }
    fn e(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem> {
        (**self).e(b, i)
    }
    fn f(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem> {
        (**self).f(b, i)
    }
    fn indices(&self) -> Vec<usize> {
        (**self).indices()
    }
    fn render(&self, b: &Self::Elem) -> String {
        (**self).render(b)
    }
    fn axiom_unsafe(&self) -> bool {
        (**self).axiom_unsafe()
    }
}
