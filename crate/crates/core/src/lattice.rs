//! The lattice crystal `B_l = {v(x) ; x in Q}` for functionals
//! `l_i in Hom(Q, Z)` with `l_i(alpha_i) = -1`, the truncated tensor model
//! of `B(infinity)` and the embedding test `B(infinity) -> B(infinity) (x) B_l`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{CartanSpec, RootVector, Weight};
use crate::crystal::{
    explore, Crystal, Direction, ElementaryBi, ExploreOptions, Exploration, ExtInt, Link, Tensor, TensorList,
};
use crate::verify::{CheckReport, Violation, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("invalid functionals: {0}")]
    Invalid(String),
    #[error(
        "truncation too short, increase N: the leftmost {guard} factors of the length-{len} model were touched at {element}"
    )]
    GuardTripped { len: usize, guard: usize, element: String },
    #[error("the index sequence must contain every index and have length at least {needed} (got {got})")]
    BadSequence { needed: usize, got: usize },
    #[error("node budget exceeded while exploring the model")]
    Budget,
    #[error("this check needs rank-two Cartan data")]
    NotRankTwo,
}

/// `L[i][j] = l_i(alpha_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeFunctionals {
    #[serde(rename = "L")]
    l: Vec<Vec<i64>>,
}

impl LatticeFunctionals {
    pub fn new(l: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let r = l.len();
        if l.iter().any(|row| row.len() != r) {
            return Err(LatticeError::Invalid("L must be square".into()));
        }
        if let Some(i) = (0..r).find(|&i| l[i][i] != -1) {
            return Err(LatticeError::Invalid(format!("l_{i}(alpha_{i}) = {}, must be -1", l[i][i])));
        }
        Ok(LatticeFunctionals { l })
    }

    pub fn from_json(s: &str) -> Result<Self, LatticeError> {
        let raw: LatticeFunctionals = serde_json::from_str(s).map_err(|e| LatticeError::Invalid(e.to_string()))?;
        LatticeFunctionals::new(raw.l)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("functionals serialize")
    }

    pub fn rank(&self) -> usize {
        self.l.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.l
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.l[i][j]
    }

    /// `l_i(x)`.
    pub fn eval(&self, i: usize, x: &RootVector) -> i64 {
        self.l[i].iter().zip(&x.0).map(|(a, b)| a * b).sum()
    }

    /// `l_i(alpha_j) = -delta_{i,j} + delta_{i+1,j}` with indices mod the rank.
    pub fn cyclic(rank: usize) -> Self {
        let l = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| -i64::from(i == j) + i64::from((i + 1) % rank == j))
                    .collect()
            })
            .collect();
        LatticeFunctionals { l }
    }

    /// `-1` on the diagonal and `1` elsewhere.
    pub fn plus_minus_one(rank: usize) -> Self {
        let l = (0..rank)
            .map(|i| (0..rank).map(|j| if i == j { -1 } else { 1 }).collect())
            .collect();
        LatticeFunctionals { l }
    }

    /// `l_i(alpha_j) = -<h_i, alpha_j>` off the diagonal, `-1` on it.
    pub fn negated_gcm(cartan: &CartanSpec) -> Self {
        let r = cartan.rank();
        let l = (0..r)
            .map(|i| (0..r).map(|j| if i == j { -1 } else { -cartan.a(i, j) }).collect())
            .collect();
        LatticeFunctionals { l }
    }

    /// `L = -identity`.
    pub fn minus_identity(rank: usize) -> Self {
        let l = (0..rank)
            .map(|i| (0..rank).map(|j| -i64::from(i == j)).collect())
            .collect();
        LatticeFunctionals { l }
    }
}

/// `B_l` over the root lattice. Operators never vanish.
#[derive(Clone, Debug)]
pub struct LatticeCrystal {
    cartan: CartanSpec,
    l: LatticeFunctionals,
}

impl LatticeCrystal {
    pub fn new(cartan: CartanSpec, l: LatticeFunctionals) -> Result<Self, LatticeError> {
        if l.rank() != cartan.rank() {
            return Err(LatticeError::Invalid(format!(
                "L has rank {} but the Cartan data has rank {}",
                l.rank(),
                cartan.rank()
            )));
        }
        Ok(LatticeCrystal { cartan, l })
    }

    pub fn functionals(&self) -> &LatticeFunctionals {
        &self.l
    }
}

impl Crystal for LatticeCrystal {
    type Elem = RootVector;

    fn cartan(&self) -> &CartanSpec {
        &self.cartan
    }
    fn wt(&self, x: &RootVector) -> Weight {
        self.cartan.root_to_weight(x)
    }
    fn eps(&self, x: &RootVector, i: usize) -> ExtInt {
        ExtInt::Fin(self.l.eval(i, x))
    }
    fn phi(&self, x: &RootVector, i: usize) -> ExtInt {
        ExtInt::Fin(self.l.eval(i, x) + self.cartan.root_pairing(x, i))
    }
    fn e(&self, x: &RootVector, i: usize) -> Option<RootVector> {
        Some(x + &RootVector::simple(self.cartan.rank(), i))
    }
    fn f(&self, x: &RootVector, i: usize) -> Option<RootVector> {
        Some(x - &RootVector::simple(self.cartan.rank(), i))
    }
    fn render(&self, x: &RootVector) -> String {
        format!("v{x}")
    }
}

/// Which alternative of the pair condition holds for `{i, j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EllCase {
    /// `l_i(alpha_j) = -<h_i, alpha_j>` and `l_j(alpha_i) = 0`.
    I,
    /// `l_i(alpha_j) = 0` and `l_j(alpha_i) = -<h_j, alpha_i>`.
    Ii,
    /// Both (only possible when `i` and `j` are not joined).
    Both,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub i: String,
    pub j: String,
    pub case: EllCase,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllReport {
    pub holds: bool,
    pub pairs: Vec<PairReport>,
}

/// Checks, for every pair `i < j`, whether `(i)` or `(ii)` holds.
pub fn check_ell_condition(cartan: &CartanSpec, l: &LatticeFunctionals) -> EllReport {
    let r = cartan.rank();
    let mut pairs = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let c1 = l.get(i, j) == -cartan.a(i, j) && l.get(j, i) == 0;
            let c2 = l.get(i, j) == 0 && l.get(j, i) == -cartan.a(j, i);
            let case = match (c1, c2) {
                (true, true) => EllCase::Both,
                (true, false) => EllCase::I,
                (false, true) => EllCase::Ii,
                (false, false) => EllCase::Neither,
            };
            pairs.push(PairReport {
                i: cartan.label(i).to_string(),
                j: cartan.label(j).to_string(),
                case,
            });
        }
    }
    EllReport {
        holds: pairs.iter().all(|p| p.case != EllCase::Neither),
        pairs,
    }
}

/// The finite model `b_{i_N} (x) ... (x) b_{i_1}` of `B(infinity)`, where
/// `e_i` gives 0 exactly when `eps_i = 0`. Elements list the factors left to
/// right, so position `N - k` holds `b_{i_k}`.
#[derive(Clone, Debug)]
pub struct TruncatedBInfinity {
    inner: TensorList<ElementaryBi>,
    guard: usize,
}

impl TruncatedBInfinity {
    /// `seq = (i_1, ..., i_N)`, rightmost factor first.
    pub fn new(cartan: &CartanSpec, seq: &[usize]) -> Self {
        let factors = seq
            .iter()
            .rev()
            .map(|&i| ElementaryBi::new(cartan.clone(), i))
            .collect();
        TruncatedBInfinity {
            inner: TensorList::new(factors).expect("nonempty sequence"),
            guard: cartan.rank(),
        }
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    /// `u_infinity`, all factors `b(0)`.
    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.len()]
    }

    /// The leftmost full cycle of factors must stay at `b(0)`.
    pub fn guard_ok(&self, xs: &[i64]) -> bool {
        xs[..self.guard.min(xs.len())].iter().all(|&x| x == 0)
    }

    fn check_guard(&self, xs: &[i64]) -> Result<(), LatticeError> {
        if self.guard_ok(xs) {
            Ok(())
        } else {
            Err(LatticeError::GuardTripped {
                len: self.len(),
                guard: self.guard,
                element: self.render(&xs.to_vec()),
            })
        }
    }
}

impl Crystal for TruncatedBInfinity {
    type Elem = Vec<i64>;

    fn cartan(&self) -> &CartanSpec {
        self.inner.cartan()
    }
    fn wt(&self, xs: &Vec<i64>) -> Weight {
        self.inner.wt(xs)
    }
    fn eps(&self, xs: &Vec<i64>, i: usize) -> ExtInt {
        self.inner.eps(xs, i)
    }
    fn phi(&self, xs: &Vec<i64>, i: usize) -> ExtInt {
        self.inner.phi(xs, i)
    }
    fn e(&self, xs: &Vec<i64>, i: usize) -> Option<Vec<i64>> {
        if self.inner.eps(xs, i) == ExtInt::Fin(0) {
            None
        } else {
            self.inner.e(xs, i)
        }
    }
    fn f(&self, xs: &Vec<i64>, i: usize) -> Option<Vec<i64>> {
        self.inner.f(xs, i)
    }
    fn render(&self, xs: &Vec<i64>) -> String {
        let parts: Vec<String> = self
            .inner
            .factors()
            .iter()
            .zip(xs)
            .filter(|(_, &x)| x != 0)
            .map(|(c, x)| c.render(x))
            .collect();
        if parts.is_empty() {
            "u".into()
        } else {
            parts.join(" ⊗ ")
        }
    }
}

/// `i_1, i_2, ...` cycling through the indices in label order, with
/// `(depth + 2) |I|` factors.
pub fn default_sequence(cartan: &CartanSpec, depth: usize) -> Vec<usize> {
    let r = cartan.rank();
    (0..(depth + 2) * r).map(|k| k % r).collect()
}

/// The `f`-closure of `u_infinity` to the given depth in the truncated
/// model, i.e. every element of height at most `depth`.
pub fn binfty_truncated(
    cartan: &CartanSpec,
    seq: Option<&[usize]>,
    depth: usize,
) -> Result<(TruncatedBInfinity, Exploration<Vec<i64>>), LatticeError> {
    let r = cartan.rank();
    let default;
    let seq = match seq {
        Some(s) => s,
        None => {
            default = default_sequence(cartan, depth);
            &default
        }
    };
    let needed = 2 * r;
    if seq.len() < needed || (0..r).any(|i| !seq.contains(&i)) {
        return Err(LatticeError::BadSequence { needed, got: seq.len() });
    }
    let model = TruncatedBInfinity::new(cartan, seq);
    let ex = explore(
        &model,
        &[model.zero()],
        ExploreOptions::default().depth(depth).direction(Direction::Lower),
    )
    .map_err(|_| LatticeError::Budget)?;
    for xs in &ex.elements {
        model.check_guard(xs)?;
    }
    Ok((model, ex))
}

/// Kostant partition function on the negative cone: the number of ways to
/// write `beta` as a nonnegative combination of `roots`.
pub fn kostant_count(roots: &[RootVector], beta: &RootVector) -> u64 {
    fn go(roots: &[RootVector], rest: &mut Vec<i64>) -> u64 {
        if rest.iter().all(|&x| x == 0) {
            return 1;
        }
        let Some((first, tail)) = roots.split_first() else {
            return 0;
        };
        let mut total = go(tail, rest);
        let mut k = 0;
        loop {
            k += 1;
            for (r, c) in rest.iter_mut().zip(&first.0) {
                *r -= c;
            }
            if rest.iter().any(|&x| x < 0) {
                break;
            }
            total += go(tail, rest);
        }
        for (r, c) in rest.iter_mut().zip(&first.0) {
            *r += k * c;
        }
        total
    }
    go(roots, &mut beta.0.clone())
}

/// The embedding test: follow `f`-words from `u (x) v(0)` in
/// `B(infinity) (x) B_l` alongside the same words in `B(infinity)`, and
/// check (a) path independence, (b) injectivity and (c) strictness
/// (`e_i`, `eps_i`, `phi_i`, `wt` preserved, 0 matching 0).
pub fn verify_lattice_embedding(
    cartan: &CartanSpec,
    l: &LatticeFunctionals,
    depth: usize,
) -> Result<CheckReport, LatticeError> {
    let lat = LatticeCrystal::new(cartan.clone(), l.clone())?;
    let (model, src) = binfty_truncated(cartan, None, depth)?;
    let target = Tensor::new(&model, &lat).expect("same Cartan data");
    let g = &src.graph;
    let n = g.len();
    let labels = |id: usize| g.nodes[id].label.clone();

    let mut image: Vec<Option<(Vec<i64>, RootVector)>> = vec![None; n];
    image[0] = Some((model.zero(), RootVector::zero(cartan.rank())));
    let mut path = CheckReport::new("path_independence");
    for a in 0..n {
        let Some(ia) = image[a].clone() else { continue };
        for (p, link) in g.nodes[a].f.iter().enumerate() {
            let Link::To(b) = *link else { continue };
            let i = g.indices[p];
            let Some(fb) = target.f(&ia, i) else {
                path.fail(Witness {
                    violation: Violation::Other {
                        detail: "f_i vanishes on the image".into(),
                    },
                    labels: vec![labels(a), labels(b)],
                    detail: format!("f_{} of the image of {} is 0", cartan.label(i), labels(a)),
                });
                continue;
            };
            model.check_guard(&fb.0)?;
            path.stats.checked += 1;
            match &image[b] {
                None => image[b] = Some(fb),
                Some(prev) if *prev == fb => {}
                Some(prev) => path.fail(Witness {
                    violation: Violation::Other {
                        detail: "two f-words disagree on the image".into(),
                    },
                    labels: vec![labels(b), target.render(prev), target.render(&fb)],
                    detail: format!(
                        "{} is reached with images {} and {}",
                        labels(b),
                        target.render(prev),
                        target.render(&fb)
                    ),
                }),
            }
        }
    }
    path.stats.nodes = n;

    let mut inj = CheckReport::new("injectivity");
    let mut seen: HashMap<&(Vec<i64>, RootVector), usize> = HashMap::new();
    for (a, img) in image.iter().enumerate() {
        let Some(img) = img else { continue };
        inj.stats.checked += 1;
        if let Some(&prev) = seen.get(img) {
            inj.fail(Witness {
                violation: Violation::Other {
                    detail: "two elements share an image".into(),
                },
                labels: vec![labels(prev), labels(a), target.render(img)],
                detail: format!("{} and {} both map to {}", labels(prev), labels(a), target.render(img)),
            });
        } else {
            seen.insert(img, a);
        }
    }
    inj.stats.nodes = n;

    let mut strict = CheckReport::new("strictness");
    for a in 0..n {
        let Some(ia) = &image[a] else { continue };
        let node = &g.nodes[a];
        if target.wt(ia) != node.wt {
            strict.fail(Witness {
                violation: Violation::Other { detail: "weight".into() },
                labels: vec![labels(a)],
                detail: format!("wt of the image of {} is {}, expected {}", labels(a), target.wt(ia), node.wt),
            });
        }
        for (p, &i) in g.indices.iter().enumerate() {
            strict.stats.checked += 1;
            if target.eps(ia, i) != node.eps[p] || target.phi(ia, i) != node.phi[p] {
                strict.fail(Witness {
                    violation: Violation::Other { detail: "eps/phi".into() },
                    labels: vec![labels(a), target.render(ia)],
                    detail: format!(
                        "at {}: (eps_{l}, phi_{l}) = ({}, {}) but the image has ({}, {})",
                        labels(a),
                        node.eps[p],
                        node.phi[p],
                        target.eps(ia, i),
                        target.phi(ia, i),
                        l = cartan.label(i)
                    ),
                });
            }
            let expected = match node.e[p] {
                Link::To(b) => image[b].clone(),
                Link::Absent => None,
                Link::Outside => continue,
            };
            let got = target.e(ia, i);
            if got != expected {
                let show = |x: &Option<(Vec<i64>, RootVector)>| x.as_ref().map_or("0".to_string(), |y| target.render(y));
                strict.fail(Witness {
                    violation: Violation::Other { detail: "e_i".into() },
                    labels: vec![labels(a), target.render(ia)],
                    detail: format!(
                        "e_{} of the image of {} is {}, expected {}",
                        cartan.label(i),
                        labels(a),
                        show(&got),
                        show(&expected)
                    ),
                });
            }
        }
    }
    strict.stats.nodes = n;

    let mut r = CheckReport::new("lattice_embedding");
    r.stats.nodes = n;
    r.stats.depth = Some(depth);
    r.note(format!(
        "B(infinity) modelled by {} factors b_i; every element of height <= {depth} is covered",
        model.len()
    ));
    for c in [path, inj, strict] {
        r.push_child(c);
    }
    Ok(r)
}

/// Outcome of [`bl_factorization_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub holds: bool,
    /// Labels of the factors, left to right, when an isomorphism was found.
    pub order: Option<(String, String)>,
    pub witness: Option<String>,
}

/// Tests whether `v(x) -> b_i(x_i) (x) b_j(x_j)` is an isomorphism onto the
/// tensor product for one of the two orders, on the window `|x_k| <= 5`.
pub fn bl_factorization_check(
    cartan: &CartanSpec,
    l: &LatticeFunctionals,
) -> Result<FactorizationReport, LatticeError> {
    if cartan.rank() != 2 {
        return Err(LatticeError::NotRankTwo);
    }
    let lat = LatticeCrystal::new(cartan.clone(), l.clone())?;
    let mut first_witness = None;
    for (left, right) in [(0usize, 1usize), (1, 0)] {
        let prod = Tensor::new(ElementaryBi::new(cartan.clone(), left), ElementaryBi::new(cartan.clone(), right))
            .expect("same Cartan data");
        let map = |x: &RootVector| (x.0[left], x.0[right]);
        match intertwines(&lat, &prod, map) {
            None => {
                return Ok(FactorizationReport {
                    holds: true,
                    order: Some((cartan.label(left).into(), cartan.label(right).into())),
                    witness: None,
                })
            }
            Some(w) => {
                first_witness.get_or_insert(format!(
                    "B_{} (x) B_{}: {w}",
                    cartan.label(left),
                    cartan.label(right)
                ));
            }
        }
    }
    Ok(FactorizationReport {
        holds: false,
        order: None,
        witness: first_witness,
    })
}

fn intertwines<P: Crystal<Elem = (i64, i64)>>(
    lat: &LatticeCrystal,
    prod: &P,
    map: impl Fn(&RootVector) -> (i64, i64),
) -> Option<String> {
    for x0 in -5..=5 {
        for x1 in -5..=5 {
            let x = RootVector(vec![x0, x1]);
            let y = map(&x);
            if lat.wt(&x) != prod.wt(&y) {
                return Some(format!("wt differs at v{x}"));
            }
            for i in 0..2 {
                if lat.eps(&x, i) != prod.eps(&y, i) || lat.phi(&x, i) != prod.phi(&y, i) {
                    return Some(format!(
                        "at v{x}: eps_{i} {} vs {}, phi_{i} {} vs {}",
                        lat.eps(&x, i),
                        prod.eps(&y, i),
                        lat.phi(&x, i),
                        prod.phi(&y, i),
                        i = lat.cartan().label(i)
                    ));
                }
                if lat.e(&x, i).map(|v| map(&v)) != prod.e(&y, i) || lat.f(&x, i).map(|v| map(&v)) != prod.f(&y, i) {
                    return Some(format!("operators differ at v{x} for index {}", lat.cartan().label(i)));
                }
            }
        }
    }
    None
}

/// Counts of nodes per weight, as `(root coordinates, count)`.
pub fn weight_counts(cartan: &CartanSpec, ex: &Exploration<Vec<i64>>, model: &TruncatedBInfinity) -> BTreeMap<Vec<i64>, u64> {
    let rank = cartan.rank();
    let mut out = BTreeMap::new();
    for xs in &ex.elements {
        let mut beta = vec![0i64; rank];
        for (c, x) in model.inner.factors().iter().zip(xs) {
            beta[c.index()] -= x;
        }
        *out.entry(beta).or_insert(0) += 1;
    }
    out
}
