//! The rank-two crystal `K = ... (x) K_1 (x) K_0 (x) K_{-1} (x) ...` with
//! `K_n = B_1 (x) B_2 (x) T_{lambda(n)}`, and the map `Phi` from `K` to the
//! variant monomial crystal with `c_12 = 0`, `c_21 = 1`.
//!
//! Elements have finite support. Operators are evaluated on the support
//! window padded by one all-zero `K_n` on each side, which already gives the
//! values of the infinite product. An `e_i` that would act on the left
//! padding, or an `f_i` on the right padding, would move off to infinity
//! and is treated as 0.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartan::{CartanSpec, Weight};
use crate::crystal::{Crystal, ElementaryBi, ExtInt, TLambda, TensorList};
use crate::monomial::{a_variant, CMatrix, Monomial, MonomialCrystal, Step};

use super::report::{CheckReport, Violation, Witness};

/// `b = (x)_n (b_1(z_1(n)) (x) b_2(z_2(n)) (x) t_{lambda(n)})`. Both maps
/// omit zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KElement {
    /// `(index position, n) -> z_i(n)`.
    pub z: BTreeMap<(usize, i64), i64>,
    pub lam: BTreeMap<i64, Weight>,
}

impl KElement {
    pub fn new(z: impl IntoIterator<Item = ((usize, i64), i64)>, lam: impl IntoIterator<Item = (i64, Weight)>) -> Self {
        KElement {
            z: z.into_iter().filter(|&(_, v)| v != 0).collect(),
            lam: lam.into_iter().filter(|(_, w)| w.0.iter().any(|&x| x != 0)).collect(),
        }
    }

    pub fn z(&self, i: usize, n: i64) -> i64 {
        self.z.get(&(i, n)).copied().unwrap_or(0)
    }

    pub fn lam(&self, i: usize, n: i64) -> i64 {
        self.lam.get(&n).map_or(0, |w| w.0[i])
    }

    /// Smallest and largest `n` carrying data; `(0, 0)` if there is none.
    fn support(&self) -> (i64, i64) {
        let ns: Vec<i64> = self.z.keys().map(|&(_, n)| n).chain(self.lam.keys().copied()).collect();
        match (ns.iter().min(), ns.iter().max()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => (0, 0),
        }
    }

    /// `prod_{i,n} Y_i(n)^{lambda_i(n)} A_1(n)^{z_1(n)} A_2(n)^{z_2(n)}`.
    pub fn phi_image(&self, cartan: &CartanSpec, c: &CMatrix) -> Monomial {
        let mut m = Monomial::from_terms(
            self.lam
                .iter()
                .flat_map(|(&n, w)| w.0.iter().enumerate().map(move |(i, &e)| ((i, n), e))),
        );
        for (&(i, n), &z) in &self.z {
            m = m.mul(&a_variant(cartan, c, i, n).pow(z));
        }
        m
    }
}

#[derive(Clone, Debug)]
enum KFactor {
    B(ElementaryBi),
    T(TLambda),
}

impl Crystal for KFactor {
    type Elem = i64;

    fn cartan(&self) -> &CartanSpec {
        match self {
            KFactor::B(b) => b.cartan(),
            KFactor::T(t) => t.cartan(),
        }
    }
    fn wt(&self, x: &i64) -> Weight {
        match self {
            KFactor::B(b) => b.wt(x),
            KFactor::T(t) => t.wt(&()),
        }
    }
    fn eps(&self, x: &i64, i: usize) -> ExtInt {
        match self {
            KFactor::B(b) => b.eps(x, i),
            KFactor::T(t) => t.eps(&(), i),
        }
    }
    fn phi(&self, x: &i64, i: usize) -> ExtInt {
        match self {
            KFactor::B(b) => b.phi(x, i),
            KFactor::T(t) => t.phi(&(), i),
        }
    }
    fn e(&self, x: &i64, i: usize) -> Option<i64> {
        match self {
            KFactor::B(b) => b.e(x, i),
            KFactor::T(_) => None,
        }
    }
    fn f(&self, x: &i64, i: usize) -> Option<i64> {
        match self {
            KFactor::B(b) => b.f(x, i),
            KFactor::T(_) => None,
        }
    }
}

/// The crystal `K` for rank-two Cartan data, as the disjoint union over all
/// finitely supported `lambda(n)`.
#[derive(Clone, Debug)]
pub struct KCrystal {
    cartan: CartanSpec,
}

struct Window {
    list: TensorList<KFactor>,
    xs: Vec<i64>,
    hi: i64,
}

impl Window {
    /// `(n, slot)` of a factor position; slot 0/1 are `B_1`/`B_2`, 2 is `T`.
    fn locate(&self, k: usize) -> (i64, usize) {
        (self.hi + 1 - (k / 3) as i64, k % 3)
    }
}

impl KCrystal {
    pub fn new(cartan: CartanSpec) -> Self {
        assert_eq!(cartan.rank(), 2, "K is defined for rank two");
        KCrystal { cartan }
    }

    fn window(&self, b: &KElement) -> Window {
        let (lo, hi) = b.support();
        let mut factors = Vec::new();
        let mut xs = Vec::new();
        for n in (lo - 1..=hi + 1).rev() {
            for i in 0..2 {
                factors.push(KFactor::B(ElementaryBi::new(self.cartan.clone(), i)));
                xs.push(b.z(i, n));
            }
            let lam = b.lam.get(&n).cloned().unwrap_or_else(|| Weight::zero(2));
            factors.push(KFactor::T(TLambda::new(self.cartan.clone(), lam)));
            xs.push(0);
        }
        Window {
            list: TensorList::new(factors).expect("factors share Cartan data"),
            xs,
            hi,
        }
    }

    fn step(&self, b: &KElement, i: usize, dir: Step) -> Option<KElement> {
        let w = self.window(b);
        let (lo, hi) = b.support();
        let k = match dir {
            Step::E => w.list.e_position(&w.xs, i),
            Step::F => w.list.f_position(&w.xs, i),
        };
        let (n, slot) = w.locate(k);
        if slot != i {
            return None;
        }
        match dir {
            Step::E if n == hi + 1 => return None,
            Step::F if n == lo - 1 => return None,
            _ => {}
        }
        let mut out = b.clone();
        let delta = if dir == Step::E { 1 } else { -1 };
        let v = out.z(i, n) + delta;
        if v == 0 {
            out.z.remove(&(i, n));
        } else {
            out.z.insert((i, n), v);
        }
        Some(out)
    }

    /// `eps_i(b)` by the closed formula for the infinite product:
    /// `max_n { -z_i(n) - a z_j(n)[i = 2] - sum_{k > n} (2 z_i(k) + a z_j(k) + lambda_i(k)) }`
    /// with `a = <h_i, alpha_j>`.
    pub fn eps_formula(&self, b: &KElement, i: usize) -> i64 {
        let j = 1 - i;
        let a = self.cartan.a(i, j);
        let (lo, hi) = b.support();
        let tail = |n: i64| -> i64 {
            (n + 1..=hi)
                .map(|k| 2 * b.z(i, k) + a * b.z(j, k) + b.lam(i, k))
                .sum()
        };
        (lo - 1..=hi + 1)
            .map(|n| {
                let own = if i == 0 { -b.z(0, n) } else { -b.z(1, n) - a * b.z(0, n) };
                own - tail(n)
            })
            .max()
            .expect("window is nonempty")
    }

    /// A random element with `z` in `z_range` on `n_range` and dominant
    /// `lambda(n)` with entries up to `lam_max`, nonzero at about a third
    /// of the positions.
    pub fn random_element<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        n_range: std::ops::RangeInclusive<i64>,
        z_range: std::ops::RangeInclusive<i64>,
        lam_max: i64,
    ) -> KElement {
        let mut z = Vec::new();
        let mut lam = Vec::new();
        for n in n_range {
            for i in 0..2 {
                z.push(((i, n), rng.gen_range(z_range.clone())));
            }
            if rng.gen_range(0..3) == 0 {
                lam.push((n, Weight(vec![rng.gen_range(0..=lam_max), rng.gen_range(0..=lam_max)])));
            }
        }
        KElement::new(z, lam)
    }
}

impl Crystal for KCrystal {
    type Elem = KElement;

    fn cartan(&self) -> &CartanSpec {
        &self.cartan
    }
    fn wt(&self, b: &KElement) -> Weight {
        let mut w = Weight::zero(2);
        for (&(i, _), &z) in &b.z {
            w += &self.cartan.simple_root(i).scaled(z);
        }
        for lam in b.lam.values() {
            w += lam;
        }
        w
    }
    fn eps(&self, b: &KElement, i: usize) -> ExtInt {
        let w = self.window(b);
        w.list.eps(&w.xs, i)
    }
    fn phi(&self, b: &KElement, i: usize) -> ExtInt {
        let w = self.window(b);
        w.list.phi(&w.xs, i)
    }
    fn e(&self, b: &KElement, i: usize) -> Option<KElement> {
        self.step(b, i, Step::E)
    }
    fn f(&self, b: &KElement, i: usize) -> Option<KElement> {
        self.step(b, i, Step::F)
    }
    fn render(&self, b: &KElement) -> String {
        let mut out = String::from("K[");
        let mut first = true;
        for (&(i, n), &z) in &b.z {
            if !first {
                out.push_str(", ");
            }
            first = false;
            write!(out, "z_{}({n})={z}", self.cartan.label(i)).unwrap();
        }
        for (n, w) in &b.lam {
            if !first {
                out.push_str(", ");
            }
            first = false;
            write!(out, "lambda({n})={w}").unwrap();
        }
        out.push(']');
        out
    }
}

/// For every sample `b`: `eps_i(b) = eps_i(Phi(b))` (also against the
/// closed formula), `wt` and `phi_i` agree, and `Phi` commutes with `e_i`
/// and `f_i` (0 matching 0).
pub fn phi_rank2_morphism_check(cartan: &CartanSpec, samples: &[KElement]) -> CheckReport {
    let mut r = CheckReport::new("phi_rank2_morphism");
    if cartan.rank() != 2 {
        r.inconclusive("the morphism test needs rank-two Cartan data");
        return r;
    }
    let c = CMatrix::standard(2);
    let k = KCrystal::new(cartan.clone());
    let m = MonomialCrystal::variant(cartan.clone(), c.clone()).expect("rank matches");
    r.note("c_12 = 0, c_21 = 1");
    r.stats.nodes = samples.len();
    for (s, b) in samples.iter().enumerate() {
        let img = b.phi_image(cartan, &c);
        let mut problems = Vec::new();
        if k.wt(b) != m.wt(&img) {
            problems.push(format!("wt {} vs {}", k.wt(b), m.wt(&img)));
        }
        for i in 0..2 {
            let l = cartan.label(i);
            let (ek, em, ef) = (k.eps(b, i), m.eps(&img, i), k.eps_formula(b, i));
            if ek != em || ek != ExtInt::Fin(ef) {
                problems.push(format!("eps_{l}: K {ek}, formula {ef}, monomial {em}"));
            }
            if k.phi(b, i) != m.phi(&img, i) {
                problems.push(format!("phi_{l}: K {}, monomial {}", k.phi(b, i), m.phi(&img, i)));
            }
            for dir in [Step::E, Step::F] {
                let lhs = k.step(b, i, dir).map(|x| x.phi_image(cartan, &c));
                let rhs = m.step(&img, i, dir);
                if lhs != rhs {
                    let show = |x: &Option<Monomial>| x.as_ref().map_or("0".to_string(), |y| y.render(cartan));
                    problems.push(format!("{dir:?}_{l}: Phi(K step) = {}, monomial step = {}", show(&lhs), show(&rhs)));
                }
            }
            r.stats.checked += 1;
        }
        if !problems.is_empty() {
            r.fail(Witness {
                violation: Violation::Other {
                    detail: format!("sample {s}"),
                },
                labels: vec![k.render(b), img.render(cartan)],
                detail: problems.join("; "),
            });
        }
    }
    r
}

/// `count` random samples on `n in [-3, 3]`, `z in [-2, 0]`, `lambda`
/// entries up to 2, drawn from a ChaCha8 stream seeded with `seed`.
pub fn phi_rank2_random(cartan: &CartanSpec, count: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = KCrystal::new(cartan.clone());
    let samples: Vec<KElement> = (0..count).map(|_| k.random_element(&mut rng, -3..=3, -2..=0, 2)).collect();
    let mut r = phi_rank2_morphism_check(cartan, &samples);
    r.seed = Some(seed);
    r
}
