//! Cartan data: generalized Cartan matrices, weights in pairing coordinates,
//! root-lattice vectors, and the finite-type root system utilities used by the
//! dimension and multiplicity oracles.
//!
//! Weights are stored only through their pairings `(<h_i, lambda>)_i`. For
//! affine types this forgets the null root `delta` (every `<h_i, delta>` is 0),
//! so two distinct weights of the full weight lattice may compare equal here.
//! Every crystal statistic (`wt`, `eps`, `phi`, the tensor rule, monomial
//! weights) only ever reads those pairings, so crystal computations are
//! unaffected.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("malformed Cartan type string `{0}`")]
    Malformed(String),
    #[error("invalid generalized Cartan matrix: {0}")]
    InvalidGcm(String),
    #[error("generalized Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("unknown index `{0}`")]
    UnknownIndex(String),
    #[error("operation requires a finite-type Cartan matrix, got {0}")]
    NotFinite(CartanKind),
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("expected a vector of length {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },
}

/// Classification tag of a generalized Cartan matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CartanKind {
    Finite,
    Affine,
    Other,
}

impl fmt::Display for CartanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CartanKind::Finite => "finite",
            CartanKind::Affine => "affine",
            CartanKind::Other => "other",
        })
    }
}

/// An element of the weight lattice, recorded as `(<h_i, lambda>)_{i in I}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `Lambda_i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `<h_i, self>`.
    pub fn pairing(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|x| x * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

macro_rules! componentwise {
    ($ty:ident) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(mut self, rhs: $ty) -> $ty {
                self += &rhs;
                self
            }
        }
        impl<'a> Add<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                self.clone() + rhs.clone()
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(mut self, rhs: $ty) -> $ty {
                self -= &rhs;
                self
            }
        }
        impl<'a> Sub<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                self.clone() - rhs.clone()
            }
        }
        impl AddAssign<&$ty> for $ty {
            fn add_assign(&mut self, rhs: &$ty) {
                assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
                for (a, b) in self.0.iter_mut().zip(&rhs.0) {
                    *a += b;
                }
            }
        }
        impl SubAssign<&$ty> for $ty {
            fn sub_assign(&mut self, rhs: &$ty) {
                assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
                for (a, b) in self.0.iter_mut().zip(&rhs.0) {
                    *a -= b;
                }
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty(self.0.into_iter().map(|x| -x).collect())
            }
        }
    };
}

componentwise!(Weight);
componentwise!(RootVector);

/// An element `sum_i coeffs[i] * alpha_i` of the root lattice `Q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVector(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Weight(self.0.clone()).fmt(f)
    }
}

/// Index set plus generalized Cartan matrix `A[i][j] = <h_i, alpha_j>`.
///
/// Immutable after construction; the classification tag and the symmetrizer
/// are computed once by [`CartanSpec::new`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanSpec {
    labels: Vec<String>,
    gcm: Vec<Vec<i64>>,
    kind: CartanKind,
    symmetrizer: Vec<i64>,
    name: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct CartanJson {
    #[serde(default)]
    labels: Option<Vec<String>>,
    gcm: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl Serialize for CartanSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CartanJson {
            labels: Some(self.labels.clone()),
            gcm: self.gcm.clone(),
            name: self.name.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CartanSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CartanJson::deserialize(d)?;
        let labels = raw
            .labels
            .unwrap_or_else(|| default_labels(raw.gcm.len(), 1));
        let mut spec = CartanSpec::new(labels, raw.gcm).map_err(serde::de::Error::custom)?;
        spec.name = raw.name;
        Ok(spec)
    }
}

fn default_labels(n: usize, start: usize) -> Vec<String> {
    (start..start + n).map(|k| k.to_string()).collect()
}

impl CartanSpec {
    /// Validates the GCM axioms and symmetrizability, then classifies.
    pub fn new(labels: Vec<String>, gcm: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let n = gcm.len();
        if n == 0 {
            return Err(CartanError::InvalidGcm("empty matrix".into()));
        }
        if labels.len() != n {
            return Err(CartanError::InvalidGcm(format!(
                "{} labels for a {n}x{n} matrix",
                labels.len()
            )));
        }
        let distinct: HashSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(CartanError::InvalidGcm("duplicate index labels".into()));
        }
        for (i, row) in gcm.iter().enumerate() {
            if row.len() != n {
                return Err(CartanError::InvalidGcm(format!("row {i} has length {}", row.len())));
            }
            if row[i] != 2 {
                return Err(CartanError::InvalidGcm(format!("diagonal entry A[{i}][{i}] = {}", row[i])));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if row[j] > 0 {
                    return Err(CartanError::InvalidGcm(format!("A[{i}][{j}] = {} > 0", row[j])));
                }
                if (row[j] == 0) != (gcm[j][i] == 0) {
                    return Err(CartanError::InvalidGcm(format!(
                        "A[{i}][{j}] = {} but A[{j}][{i}] = {}",
                        row[j], gcm[j][i]
                    )));
                }
            }
        }
        let symmetrizer = symmetrize(&gcm)?;
        let kind = classify(&gcm, &symmetrizer);
        Ok(CartanSpec {
            labels,
            gcm,
            kind,
            symmetrizer,
            name: None,
        })
    }

    /// Parses `A2`, `G2`, `A1~`, a bare matrix `[[2,-1],[-1,2]]`, or the JSON
    /// object `{"labels": [...], "gcm": [[...]]}`.
    pub fn parse(spec: &str) -> Result<Self, CartanError> {
        let s = spec.trim();
        if s.starts_with('{') {
            return serde_json::from_str::<CartanSpec>(s)
                .map_err(|e| CartanError::Malformed(format!("{s}: {e}")));
        }
        if s.starts_with('[') {
            let gcm: Vec<Vec<i64>> =
                serde_json::from_str(s).map_err(|e| CartanError::Malformed(format!("{s}: {e}")))?;
            return CartanSpec::new(default_labels(gcm.len(), 1), gcm);
        }
        let (body, affine) = match s.strip_suffix('~') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let mut chars = body.chars();
        let letter = chars
            .next()
            .ok_or_else(|| CartanError::Malformed(s.to_string()))?
            .to_ascii_uppercase();
        let digits = chars.as_str().trim_start_matches('_');
        let rank: usize = digits
            .parse()
            .map_err(|_| CartanError::Malformed(s.to_string()))?;
        let finite = finite_gcm(letter, rank).ok_or_else(|| CartanError::Malformed(s.to_string()))?;
        let mut out = if affine {
            let base = CartanSpec::new(default_labels(rank, 1), finite)?;
            base.untwisted_affinization()?
        } else {
            CartanSpec::new(default_labels(rank, 1), finite)?
        };
        out.name = Some(format!("{letter}{rank}{}", if affine { "~" } else { "" }));
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.gcm.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, CartanError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| CartanError::UnknownIndex(label.to_string()))
    }

    pub fn gcm(&self) -> &[Vec<i64>] {
        &self.gcm
    }

    /// `A[i][j] = <h_i, alpha_j>`.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.gcm[i][j]
    }

    pub fn kind(&self) -> CartanKind {
        self.kind
    }

    pub fn is_finite(&self) -> bool {
        self.kind == CartanKind::Finite
    }

    /// The type name this spec was parsed from, if any (e.g. `A2`, `A1~`).
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Least positive integers `d_i` with `d_i A[i][j] = d_j A[j][i]`.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn is_simply_laced(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| i == j || matches!(self.gcm[i][j], 0 | -1)))
    }

    /// The sub-datum on the given indices (in the given order).
    pub fn sub(&self, indices: &[usize]) -> CartanSpec {
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let gcm = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.gcm[i][j]).collect())
            .collect();
        CartanSpec::new(labels, gcm).expect("principal submatrix of a GCM is a GCM")
    }

    /// `alpha_i` in pairing coordinates: the column `(A[j][i])_j`.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.gcm.iter().map(|row| row[i]).collect())
    }

    /// Checked form of [`CartanSpec::simple_root`] addressed by label.
    pub fn simple_root_as_weight(&self, label: &str) -> Result<Weight, CartanError> {
        Ok(self.simple_root(self.index_of(label)?))
    }

    /// `<h_j, x>` for `x` in the root lattice.
    pub fn root_pairing(&self, x: &RootVector, j: usize) -> i64 {
        self.gcm[j].iter().zip(&x.0).map(|(a, c)| a * c).sum()
    }

    pub fn root_to_weight(&self, x: &RootVector) -> Weight {
        Weight((0..self.rank()).map(|j| self.root_pairing(x, j)).collect())
    }

    /// Symmetric invariant form on the root lattice, `(alpha_i, alpha_j) = d_i A[i][j]`.
    pub fn root_form(&self, x: &RootVector, y: &RootVector) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x.0[i] * y.0[j] * self.symmetrizer[i] * self.gcm[i][j];
            }
        }
        s
    }

    /// `(lambda, beta)` for a weight given in pairing coordinates.
    pub fn weight_root_form(&self, lam: &Weight, beta: &RootVector) -> i64 {
        beta.0
            .iter()
            .enumerate()
            .map(|(k, b)| b * self.symmetrizer[k] * lam.0[k])
            .sum()
    }

    pub fn check_weight(&self, lam: &Weight) -> Result<(), CartanError> {
        if lam.rank() != self.rank() {
            return Err(CartanError::RankMismatch {
                expected: self.rank(),
                found: lam.rank(),
            });
        }
        Ok(())
    }

    fn require_finite(&self) -> Result<(), CartanError> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(CartanError::NotFinite(self.kind))
        }
    }

    /// Positive roots as the closure of the simple roots under simple
    /// reflections, keeping nonnegative vectors. Sorted by height, then
    /// lexicographically.
    pub fn positive_roots(&self) -> Result<Vec<RootVector>, CartanError> {
        self.require_finite()?;
        let n = self.rank();
        let mut seen: HashSet<RootVector> = HashSet::new();
        let mut queue: VecDeque<RootVector> = VecDeque::new();
        for i in 0..n {
            let r = RootVector::simple(n, i);
            seen.insert(r.clone());
            queue.push_back(r);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let p = self.root_pairing(&beta, i);
                if p == 0 {
                    continue;
                }
                let mut reflected = beta.clone();
                reflected.0[i] -= p;
                if reflected.is_nonnegative() && reflected.height() > 0 && seen.insert(reflected.clone()) {
                    queue.push_back(reflected);
                }
            }
        }
        let mut roots: Vec<RootVector> = seen.into_iter().collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        Ok(roots)
    }

    /// The unique positive root of maximal height.
    pub fn highest_root(&self) -> Result<RootVector, CartanError> {
        Ok(self
            .positive_roots()?
            .pop()
            .expect("a finite root system has at least one root"))
    }

    /// Untwisted affine extension: a new node labelled `0` is prepended,
    /// with `alpha_0 = delta - theta` for the highest root `theta`.
    pub fn untwisted_affinization(&self) -> Result<CartanSpec, CartanError> {
        let theta = self.highest_root()?;
        let n = self.rank();
        let theta_sq = self.root_form(&theta, &theta);
        let mut gcm = vec![vec![0i64; n + 1]; n + 1];
        gcm[0][0] = 2;
        for j in 0..n {
            let aj = RootVector::simple(n, j);
            gcm[0][j + 1] = -2 * self.root_form(&theta, &aj) / theta_sq;
            gcm[j + 1][0] = -self.root_pairing(&theta, j);
            for k in 0..n {
                gcm[j + 1][k + 1] = self.gcm[j][k];
            }
        }
        CartanSpec::new(default_labels(n + 1, 0), gcm)
    }

    /// Weyl dimension formula, `prod_{beta > 0} (lambda + rho, beta) / (rho, beta)`.
    pub fn weyl_dim(&self, lam: &Weight) -> Result<u64, CartanError> {
        self.require_finite()?;
        self.check_weight(lam)?;
        if !lam.is_dominant() {
            return Err(CartanError::NotDominant(lam.clone()));
        }
        let rho = Weight(vec![1; self.rank()]);
        let shifted = lam + &rho;
        let (mut num, mut den) = (1i128, 1i128);
        for beta in self.positive_roots()? {
            num *= self.weight_root_form(&shifted, &beta) as i128;
            den *= self.weight_root_form(&rho, &beta) as i128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
        debug_assert_eq!(den, 1);
        Ok((num / den) as u64)
    }

    /// Weight multiplicities of the irreducible module of highest weight
    /// `lam`, by Freudenthal's recursion over `lam - Q_+`.
    pub fn freudenthal_multiplicities(&self, lam: &Weight) -> Result<BTreeMap<Weight, u64>, CartanError> {
        self.require_finite()?;
        self.check_weight(lam)?;
        if !lam.is_dominant() {
            return Err(CartanError::NotDominant(lam.clone()));
        }
        let n = self.rank();
        let roots = self.positive_roots()?;
        let lam_beta: Vec<i64> = roots.iter().map(|b| self.weight_root_form(lam, b)).collect();
        let lam_rho = lam + &Weight(vec![1; n]);

        let zero = RootVector::zero(n);
        let mut mult: HashMap<RootVector, i64> = HashMap::new();
        mult.insert(zero.clone(), 1);
        let mut frontier = vec![zero];
        while !frontier.is_empty() {
            let candidates: BTreeSet<RootVector> = frontier
                .iter()
                .flat_map(|g| {
                    (0..n).map(move |i| {
                        let mut h = g.clone();
                        h.0[i] += 1;
                        h
                    })
                })
                .collect();
            let mut next = Vec::new();
            for gamma in candidates {
                let denom = 2 * self.weight_root_form(&lam_rho, &gamma) - self.root_form(&gamma, &gamma);
                if denom <= 0 {
                    // |mu + rho| >= |lam + rho| never happens for a weight mu != lam.
                    continue;
                }
                let mut num = 0i64;
                for (r, beta) in roots.iter().enumerate() {
                    let mut g = &gamma - beta;
                    while g.is_nonnegative() {
                        if let Some(m) = mult.get(&g) {
                            num += m * (lam_beta[r] - self.root_form(&g, beta));
                        }
                        g -= beta;
                    }
                }
                num *= 2;
                debug_assert_eq!(num % denom, 0, "Freudenthal recursion produced a fraction");
                let m = num / denom;
                if m > 0 {
                    mult.insert(gamma.clone(), m);
                    next.push(gamma);
                }
            }
            frontier = next;
        }
        Ok(mult
            .into_iter()
            .map(|(gamma, m)| (lam - &self.root_to_weight(&gamma), m as u64))
            .collect())
    }
}

impl fmt::Display for CartanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => f.write_str(n),
            None => write!(f, "{:?}", self.gcm),
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

/// Least positive integer solution of `d_i A[i][j] = d_j A[j][i]`.
fn symmetrize(gcm: &[Vec<i64>]) -> Result<Vec<i64>, CartanError> {
    let n = gcm.len();
    // Rational d_i = num/den, fixed per connected component by BFS.
    let mut d: Vec<Option<(i128, i128)>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some((1, 1));
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let (pi, qi) = d[i].unwrap();
            for j in 0..n {
                if i == j || gcm[i][j] == 0 {
                    continue;
                }
                // d_j = d_i * A[i][j] / A[j][i]
                let (mut pj, mut qj) = (pi * gcm[i][j] as i128, qi * gcm[j][i] as i128);
                if qj < 0 {
                    pj = -pj;
                    qj = -qj;
                }
                let g = gcd(pj, qj);
                let (pj, qj) = (pj / g, qj / g);
                match d[j] {
                    None => {
                        d[j] = Some((pj, qj));
                        queue.push_back(j);
                    }
                    Some((p, q)) if p * qj == pj * q => {}
                    Some(_) => return Err(CartanError::NotSymmetrizable),
                }
            }
        }
    }
    let d: Vec<(i128, i128)> = d.into_iter().map(Option::unwrap).collect();
    let den = d.iter().fold(1i128, |acc, &(_, q)| lcm(acc, q));
    let ints: Vec<i128> = d.iter().map(|&(p, q)| p * den / q).collect();
    let g = ints.iter().fold(0i128, |acc, &x| gcd(acc, x));
    Ok(ints.into_iter().map(|x| (x / g) as i64).collect())
}

/// Determinant by fraction-free Gaussian elimination.
fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn principal(s: &[Vec<i128>], keep: &[usize]) -> Vec<Vec<i128>> {
    keep.iter()
        .map(|&i| keep.iter().map(|&j| s[i][j]).collect())
        .collect()
}

fn positive_definite(s: &[Vec<i128>]) -> bool {
    (1..=s.len()).all(|k| det(&principal(s, &(0..k).collect::<Vec<_>>())) > 0)
}

fn connected(gcm: &[Vec<i64>]) -> bool {
    let n = gcm.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && gcm[i][j] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

fn classify(gcm: &[Vec<i64>], d: &[i64]) -> CartanKind {
    let n = gcm.len();
    let s: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| (d[i] * gcm[i][j]) as i128).collect())
        .collect();
    if positive_definite(&s) {
        return CartanKind::Finite;
    }
    if connected(gcm) && det(&s) == 0 {
        let proper_finite = (0..n).all(|drop| {
            let keep: Vec<usize> = (0..n).filter(|&k| k != drop).collect();
            positive_definite(&principal(&s, &keep))
        });
        if proper_finite {
            return CartanKind::Affine;
        }
    }
    CartanKind::Other
}

/// Finite-type matrices in the convention `A[i][j] = <h_i, alpha_j>`.
fn finite_gcm(letter: char, n: usize) -> Option<Vec<Vec<i64>>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match letter {
        'A' if n >= 1 => {
            for i in 1..n {
                link(&mut a, i - 1, i);
            }
        }
        'B' if n >= 2 => {
            for i in 1..n {
                link(&mut a, i - 1, i);
            }
            a[n - 1][n - 2] = -2;
        }
        'C' if n >= 2 => {
            for i in 1..n {
                link(&mut a, i - 1, i);
            }
            a[n - 2][n - 1] = -2;
        }
        'D' if n >= 3 => {
            for i in 1..n - 1 {
                link(&mut a, i - 1, i);
            }
            link(&mut a, n - 3, n - 1);
        }
        'E' if (6..=8).contains(&n) => {
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            for i in 3..n {
                link(&mut a, i - 1, i);
            }
        }
        'F' if n == 4 => {
            link(&mut a, 0, 1);
            link(&mut a, 1, 2);
            link(&mut a, 2, 3);
            a[2][1] = -2;
        }
        'G' if n == 2 => {
            a[0][1] = -1;
            a[1][0] = -3;
        }
        _ => return None,
    }
    Some(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn parses_standard_types() {
        assert_eq!(CartanSpec::parse("A2").unwrap().gcm(), &[vec![2, -1], vec![-1, 2]]);
        let a1t = CartanSpec::parse("A1~").unwrap();
        assert_eq!(a1t.gcm(), &[vec![2, -2], vec![-2, 2]]);
        assert_eq!(a1t.kind(), CartanKind::Affine);
        assert_eq!(a1t.labels(), &["0".to_string(), "1".to_string()]);
        let g2 = CartanSpec::parse("[[2,-1],[-3,2]]").unwrap();
        assert_eq!(g2.kind(), CartanKind::Finite);
        assert_eq!(g2, CartanSpec::parse("G2").unwrap().clone_without_name());
    }

    impl CartanSpec {
        fn clone_without_name(&self) -> CartanSpec {
            CartanSpec { name: None, ..self.clone() }
        }
    }

    #[test]
    fn affine_cycle_matches_hand_matrix() {
        let a2t = CartanSpec::parse("A2~").unwrap();
        assert_eq!(a2t.gcm(), &[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        for t in ["B3~", "C2~", "G2~", "D4~", "F4~", "E6~"] {
            assert_eq!(CartanSpec::parse(t).unwrap().kind(), CartanKind::Affine, "{t}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(CartanSpec::parse("Q3"), Err(CartanError::Malformed(_))));
        assert!(matches!(CartanSpec::parse("A"), Err(CartanError::Malformed(_))));
        assert!(matches!(
            CartanSpec::parse("[[2,1],[1,2]]"),
            Err(CartanError::InvalidGcm(_))
        ));
        assert!(matches!(
            CartanSpec::parse("[[2,-1],[0,2]]"),
            Err(CartanError::InvalidGcm(_))
        ));
        assert!(matches!(
            CartanSpec::parse("[[3,-1],[-1,2]]"),
            Err(CartanError::InvalidGcm(_))
        ));
        // a 3-cycle with inconsistent ratios
        assert_eq!(
            CartanSpec::parse("[[2,-1,-1],[-2,2,-1],[-1,-1,2]]"),
            Err(CartanError::NotSymmetrizable)
        );
    }

    #[test]
    fn hyperbolic_is_other() {
        let h = CartanSpec::parse("[[2,-3],[-3,2]]").unwrap();
        assert_eq!(h.kind(), CartanKind::Other);
        assert!(matches!(h.positive_roots(), Err(CartanError::NotFinite(_))));
    }

    #[test]
    fn simple_roots_are_columns() {
        let a2 = CartanSpec::parse("A2").unwrap();
        assert_eq!(a2.simple_root_as_weight("1").unwrap(), w(&[2, -1]));
        let a1t = CartanSpec::parse("A1~").unwrap();
        assert_eq!(a1t.simple_root_as_weight("0").unwrap(), w(&[2, -2]));
        let g2 = CartanSpec::parse("[[2,-1],[-3,2]]").unwrap();
        assert_eq!(g2.simple_root_as_weight("2").unwrap(), w(&[-1, 2]));
        assert!(a2.simple_root_as_weight("3").is_err());
        for t in ["A3", "B2", "G2", "A2~"] {
            let c = CartanSpec::parse(t).unwrap();
            for i in 0..c.rank() {
                assert_eq!(c.simple_root(i).pairing(i), 2);
            }
        }
    }

    #[test]
    fn root_counts() {
        for (t, k) in [("A1", 1), ("A2", 3), ("A3", 6), ("B2", 4), ("C3", 9), ("G2", 6), ("D4", 12), ("F4", 24), ("E6", 36)] {
            assert_eq!(CartanSpec::parse(t).unwrap().positive_roots().unwrap().len(), k, "{t}");
        }
        let a2 = CartanSpec::parse("A2").unwrap();
        assert_eq!(
            a2.positive_roots().unwrap(),
            vec![RootVector(vec![0, 1]), RootVector(vec![1, 0]), RootVector(vec![1, 1])]
        );
    }

    #[test]
    fn non_simple_roots_decompose() {
        for t in ["A3", "B3", "G2", "F4"] {
            let c = CartanSpec::parse(t).unwrap();
            let roots = c.positive_roots().unwrap();
            let set: HashSet<_> = roots.iter().cloned().collect();
            for r in roots.iter().filter(|r| r.height() > 1) {
                let ok = (0..c.rank()).any(|i| {
                    let mut s = r.clone();
                    s.0[i] -= 1;
                    set.contains(&s)
                });
                assert!(ok, "{t}: {r}");
            }
        }
    }

    #[test]
    fn weyl_dimensions() {
        let a2 = CartanSpec::parse("A2").unwrap();
        assert_eq!(a2.weyl_dim(&w(&[1, 0])).unwrap(), 3);
        assert_eq!(a2.weyl_dim(&w(&[1, 1])).unwrap(), 8);
        let b2 = CartanSpec::parse("B2").unwrap();
        assert_eq!(b2.weyl_dim(&w(&[0, 1])).unwrap(), 4);
        assert_eq!(b2.weyl_dim(&w(&[1, 0])).unwrap(), 5);
        let g2 = CartanSpec::parse("G2").unwrap();
        let mut dims: Vec<u64> = [[1, 0], [0, 1]].iter().map(|l| g2.weyl_dim(&w(l)).unwrap()).collect();
        dims.sort();
        assert_eq!(dims, vec![7, 14]);
        assert!(matches!(a2.weyl_dim(&w(&[-1, 0])), Err(CartanError::NotDominant(_))));
        let a1t = CartanSpec::parse("A1~").unwrap();
        assert!(matches!(a1t.weyl_dim(&w(&[1, 0])), Err(CartanError::NotFinite(_))));
    }

    #[test]
    fn freudenthal_small_tables() {
        let a2 = CartanSpec::parse("A2").unwrap();
        let m = a2.freudenthal_multiplicities(&w(&[1, 0])).unwrap();
        let expected: BTreeMap<Weight, u64> =
            [(w(&[1, 0]), 1), (w(&[-1, 1]), 1), (w(&[0, -1]), 1)].into_iter().collect();
        assert_eq!(m, expected);

        let a1 = CartanSpec::parse("A1").unwrap();
        let m = a1.freudenthal_multiplicities(&w(&[2])).unwrap();
        assert_eq!(m.values().copied().collect::<Vec<_>>(), vec![1, 1, 1]);
        assert!(m.contains_key(&w(&[0])) && m.contains_key(&w(&[-2])));

        let adj = a2.freudenthal_multiplicities(&w(&[1, 1])).unwrap();
        assert_eq!(adj[&w(&[0, 0])], 2);
        assert_eq!(adj.values().sum::<u64>(), 8);
    }

    #[test]
    fn freudenthal_total_matches_weyl() {
        for t in ["A1", "A2", "A3", "B2", "C3", "B3", "G2"] {
            let c = CartanSpec::parse(t).unwrap();
            let n = c.rank();
            let mut lam = vec![0i64; n];
            loop {
                let l = Weight(lam.clone());
                let total: u64 = c.freudenthal_multiplicities(&l).unwrap().values().sum();
                assert_eq!(total, c.weyl_dim(&l).unwrap(), "{t} {l}");
                let mut k = 0;
                while k < n && lam[k] == 3 {
                    lam[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
                lam[k] += 1;
            }
        }
    }

    #[test]
    fn symmetrizers() {
        assert_eq!(CartanSpec::parse("B2").unwrap().symmetrizer(), &[2, 1]);
        assert_eq!(CartanSpec::parse("C2").unwrap().symmetrizer(), &[1, 2]);
        assert_eq!(CartanSpec::parse("G2").unwrap().symmetrizer(), &[3, 1]);
        assert_eq!(CartanSpec::parse("A3~").unwrap().symmetrizer(), &[1, 1, 1, 1]);
    }
}
