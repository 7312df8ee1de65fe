use std::collections::BTreeSet;

use super::{Crystal, CrystalError, ExtInt};
use crate::cartan::{CartanSpec, Weight};

/// `B^vee`: arrows reversed, weights negated, `eps` and `phi` swapped.
/// Elements are shared with the underlying crystal.
#[derive(Clone, Debug)]
pub struct Dual<C>(pub C);

pub fn dual<C: Crystal>(b: C) -> Dual<C> {
    Dual(b)
}

impl<C: Crystal> Crystal for Dual<C> {
    type Elem = C::Elem;

    fn cartan(&self) -> &CartanSpec {
        self.0.cartan()
    }
    fn wt(&self, b: &Self::Elem) -> Weight {
        -self.0.wt(b)
    }
    fn eps(&self, b: &Self::Elem, i: usize) -> ExtInt {
        self.0.phi(b, i)
    }
    fn phi(&self, b: &Self::Elem, i: usize) -> ExtInt {
        self.0.eps(b, i)
    }
    fn e(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem> {
        self.0.f(b, i)
    }
    fn f(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem> {
        self.0.e(b, i)
    }
    fn indices(&self) -> Vec<usize> {
        self.0.indices()
    }
    fn render(&self, b: &Self::Elem) -> String {
        format!("({})^v", self.0.render(b))
    }
    fn axiom_unsafe(&self) -> bool {
        self.0.axiom_unsafe()
    }
}

/// `B1 (x) B2`: `f_i` acts on the left factor iff
/// `phi_i(a) > eps_i(b)`, `e_i` acts on the left factor iff `phi_i(a) >= eps_i(b)`.
#[derive(Clone, Debug)]
pub struct Tensor<A, B> {
    left: A,
    right: B,
}

pub fn tensor<A: Crystal, B: Crystal>(left: A, right: B) -> Result<Tensor<A, B>, CrystalError> {
    Tensor::new(left, right)
}

impl<A: Crystal, B: Crystal> Tensor<A, B> {
    pub fn new(left: A, right: B) -> Result<Self, CrystalError> {
        if left.cartan().gcm() != right.cartan().gcm() {
            return Err(CrystalError::MismatchedCartan(
                left.cartan().to_string(),
                right.cartan().to_string(),
            ));
        }
        Ok(Tensor { left, right })
    }

    pub fn left(&self) -> &A {
        &self.left
    }

    pub fn right(&self) -> &B {
        &self.right
    }
}

impl<A: Crystal, B: Crystal> Crystal for Tensor<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn cartan(&self) -> &CartanSpec {
        self.left.cartan()
    }
    fn wt(&self, (a, b): &Self::Elem) -> Weight {
        self.left.wt(a) + self.right.wt(b)
    }
    fn eps(&self, (a, b): &Self::Elem, i: usize) -> ExtInt {
        let shift = self.left.wt(a).pairing(i);
        self.left.eps(a, i).max(self.right.eps(b, i) - shift)
    }
    fn phi(&self, (a, b): &Self::Elem, i: usize) -> ExtInt {
        let shift = self.right.wt(b).pairing(i);
        self.right.phi(b, i).max(self.left.phi(a, i) + shift)
    }
    fn e(&self, (a, b): &Self::Elem, i: usize) -> Option<Self::Elem> {
        if self.left.phi(a, i) >= self.right.eps(b, i) {
            self.left.e(a, i).map(|a2| (a2, b.clone()))
        } else {
            self.right.e(b, i).map(|b2| (a.clone(), b2))
        }
    }
    fn f(&self, (a, b): &Self::Elem, i: usize) -> Option<Self::Elem> {
        if self.left.phi(a, i) > self.right.eps(b, i) {
            self.left.f(a, i).map(|a2| (a2, b.clone()))
        } else {
            self.right.f(b, i).map(|b2| (a.clone(), b2))
        }
    }
    fn indices(&self) -> Vec<usize> {
        let right: BTreeSet<usize> = self.right.indices().into_iter().collect();
        self.left.indices().into_iter().filter(|i| right.contains(i)).collect()
    }
    fn render(&self, (a, b): &Self::Elem) -> String {
        format!("{} ⊗ {}", self.left.render(a), self.right.render(b))
    }
    fn axiom_unsafe(&self) -> bool {
        self.left.axiom_unsafe() || self.right.axiom_unsafe()
    }
}

/// `C_0 (x) C_1 (x) ... (x) C_{N-1}` over factors of one crystal type, with
/// elements stored left to right. The binary rule is applied right-nested.
#[derive(Clone, Debug)]
pub struct TensorList<C> {
    factors: Vec<C>,
}

impl<C: Crystal> TensorList<C> {
    pub fn new(factors: Vec<C>) -> Result<Self, CrystalError> {
        let first = factors.first().ok_or(CrystalError::EmptyTensor)?;
        for c in &factors[1..] {
            if c.cartan().gcm() != first.cartan().gcm() {
                return Err(CrystalError::MismatchedCartan(
                    first.cartan().to_string(),
                    c.cartan().to_string(),
                ));
            }
        }
        Ok(TensorList { factors })
    }

    pub fn factors(&self) -> &[C] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `eps_i` of every suffix `x_k (x) ... (x) x_{N-1}`, plus the pairings
    /// `<h_i, wt(x_k)>`.
    fn suffix_eps(&self, xs: &[C::Elem], i: usize) -> (Vec<ExtInt>, Vec<i64>) {
        let n = self.factors.len();
        let pair: Vec<i64> = self
            .factors
            .iter()
            .zip(xs)
            .map(|(c, x)| c.wt(x).pairing(i))
            .collect();
        let mut eps = vec![ExtInt::NegInf; n];
        eps[n - 1] = self.factors[n - 1].eps(&xs[n - 1], i);
        for k in (0..n - 1).rev() {
            eps[k] = self.factors[k].eps(&xs[k], i).max(eps[k + 1] - pair[k]);
        }
        (eps, pair)
    }

    /// The factor that `e_i` (weak) or `f_i` (strict) acts on.
    fn acting_factor(&self, xs: &[C::Elem], i: usize, strict: bool) -> usize {
        let (eps, _) = self.suffix_eps(xs, i);
        let n = self.factors.len();
        for k in 0..n - 1 {
            let phi = self.factors[k].phi(&xs[k], i);
            let left_wins = if strict { phi > eps[k + 1] } else { phi >= eps[k + 1] };
            if left_wins {
                return k;
            }
        }
        n - 1
    }

    /// Position of the factor `e_i` would act on.
    pub fn e_position(&self, xs: &[C::Elem], i: usize) -> usize {
        self.acting_factor(xs, i, false)
    }

    /// Position of the factor `f_i` would act on.
    pub fn f_position(&self, xs: &[C::Elem], i: usize) -> usize {
        self.acting_factor(xs, i, true)
    }
}

impl<C: Crystal> Crystal for TensorList<C> {
    type Elem = Vec<C::Elem>;

    fn cartan(&self) -> &CartanSpec {
        self.factors[0].cartan()
    }
    fn wt(&self, xs: &Self::Elem) -> Weight {
        let mut w = Weight::zero(self.cartan().rank());
        for (c, x) in self.factors.iter().zip(xs) {
            w += &c.wt(x);
        }
        w
    }
    fn eps(&self, xs: &Self::Elem, i: usize) -> ExtInt {
        self.suffix_eps(xs, i).0[0]
    }
    fn phi(&self, xs: &Self::Elem, i: usize) -> ExtInt {
        let n = self.factors.len();
        let mut phi = self.factors[n - 1].phi(&xs[n - 1], i);
        let mut right_pair = self.factors[n - 1].wt(&xs[n - 1]).pairing(i);
        for k in (0..n - 1).rev() {
            phi = phi.max(self.factors[k].phi(&xs[k], i) + right_pair);
            right_pair += self.factors[k].wt(&xs[k]).pairing(i);
        }
        phi
    }
    fn e(&self, xs: &Self::Elem, i: usize) -> Option<Self::Elem> {
        let k = self.e_position(xs, i);
        let y = self.factors[k].e(&xs[k], i)?;
        let mut out = xs.clone();
        out[k] = y;
        Some(out)
    }
    fn f(&self, xs: &Self::Elem, i: usize) -> Option<Self::Elem> {
        let k = self.f_position(xs, i);
        let y = self.factors[k].f(&xs[k], i)?;
        let mut out = xs.clone();
        out[k] = y;
        Some(out)
    }
    fn render(&self, xs: &Self::Elem) -> String {
        self.factors
            .iter()
            .zip(xs)
            .map(|(c, x)| c.render(x))
            .collect::<Vec<_>>()
            .join(" ⊗ ")
    }
    fn axiom_unsafe(&self) -> bool {
        self.factors.iter().any(Crystal::axiom_unsafe)
    }
}

/// `Psi_J(B)`: the same elements with only the indices in `J` exposed.
#[derive(Clone, Debug)]
pub struct Restricted<C> {
    inner: C,
    indices: Vec<usize>,
}

pub fn restrict<C: Crystal>(b: C, j: &[usize]) -> Result<Restricted<C>, CrystalError> {
    let available: BTreeSet<usize> = b.indices().into_iter().collect();
    let mut indices = Vec::new();
    for &i in j {
        if !available.contains(&i) {
            return Err(CrystalError::UnknownIndex(i));
        }
        if !indices.contains(&i) {
            indices.push(i);
        }
    }
    indices.sort_unstable();
    Ok(Restricted { inner: b, indices })
}

impl<C: Crystal> Restricted<C> {
    fn active(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}

impl<C: Crystal> Crystal for Restricted<C> {
    type Elem = C::Elem;

    fn cartan(&self) -> &CartanSpec {
        self.inner.cartan()
    }
    fn wt(&self, b: &Self::Elem) -> Weight {
        self.inner.wt(b)
    }
    fn eps(&self, b: &Self::Elem, i: usize) -> ExtInt {
        assert!(self.active(i), "index {i} was restricted away");
        self.inner.eps(b, i)
    }
    fn phi(&self, b: &Self::Elem, i: usize) -> ExtInt {
        assert!(self.active(i), "index {i} was restricted away");
        self.inner.phi(b, i)
    }
    fn e(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem> {
        if self.active(i) {
            self.inner.e(b, i)
        } else {
            None
        }
    }
    fn f(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem> {
        if self.active(i) {
            self.inner.f(b, i)
        } else {
            None
        }
    }
    fn indices(&self) -> Vec<usize> {
        self.indices.clone()
    }
    fn render(&self, b: &Self::Elem) -> String {
        self.inner.render(b)
    }
    fn axiom_unsafe(&self) -> bool {
        self.inner.axiom_unsafe()
    }
}
