use super::{Crystal, ExtInt};
use crate::cartan::{CartanSpec, Weight};

/// The one-element crystal `{t_lambda}`: all operators vanish and
/// `eps_i = phi_i = -inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TLambda {
    cartan: CartanSpec,
    lam: Weight,
}

impl TLambda {
    pub fn new(cartan: CartanSpec, lam: Weight) -> Self {
        assert_eq!(lam.rank(), cartan.rank(), "weight rank does not match Cartan data");
        TLambda { cartan, lam }
    }

    pub fn weight(&self) -> &Weight {
        &self.lam
    }
}

impl Crystal for TLambda {
    type Elem = ();

    fn cartan(&self) -> &CartanSpec {
        &self.cartan
    }
    fn wt(&self, _: &()) -> Weight {
        self.lam.clone()
    }
    fn eps(&self, _: &(), _: usize) -> ExtInt {
        ExtInt::NegInf
    }
    fn phi(&self, _: &(), _: usize) -> ExtInt {
        ExtInt::NegInf
    }
    fn e(&self, _: &(), _: usize) -> Option<()> {
        None
    }
    fn f(&self, _: &(), _: usize) -> Option<()> {
        None
    }
    fn render(&self, _: &()) -> String {
        format!("t{}", self.lam)
    }
}

/// The elementary crystal `B_i = {b_i(n) ; n in Z}`, elements stored as `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryBi {
    cartan: CartanSpec,
    i: usize,
}

impl ElementaryBi {
    pub fn new(cartan: CartanSpec, i: usize) -> Self {
        assert!(i < cartan.rank(), "index out of range");
        ElementaryBi { cartan, i }
    }

    pub fn index(&self) -> usize {
        self.i
    }
}

impl Crystal for ElementaryBi {
    type Elem = i64;

    fn cartan(&self) -> &CartanSpec {
        &self.cartan
    }
    fn wt(&self, n: &i64) -> Weight {
        self.cartan.simple_root(self.i).scaled(*n)
    }
    fn eps(&self, n: &i64, j: usize) -> ExtInt {
        if j == self.i {
            ExtInt::Fin(-n)
        } else {
            ExtInt::NegInf
        }
    }
    fn phi(&self, n: &i64, j: usize) -> ExtInt {
        if j == self.i {
            ExtInt::Fin(*n)
        } else {
            ExtInt::NegInf
        }
    }
    fn e(&self, n: &i64, j: usize) -> Option<i64> {
        (j == self.i).then_some(n + 1)
    }
    fn f(&self, n: &i64, j: usize) -> Option<i64> {
        (j == self.i).then_some(n - 1)
    }
    fn render(&self, n: &i64) -> String {
        format!("b{}({n})", self.cartan.label(self.i))
    }
}
