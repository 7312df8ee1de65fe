//! Monomial crystals: Laurent monomials in the variables `Y_i(n)` with the
//! original rule and the `c`-dependent variant rule.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{CartanSpec, Weight};
use crate::crystal::{Crystal, ExtInt};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonomialError {
    #[error("cannot parse monomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("unknown index label `{0}`")]
    UnknownLabel(String),
    #[error("invalid c matrix: {0}")]
    InvalidC(String),
}

/// A Laurent monomial `prod Y_i(n)^{y_i(n)}`, keyed by `(index position, n)`.
/// Zero exponents are never stored, so equal monomials compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<(usize, i64), i64>);

impl Monomial {
    /// The monomial `1`.
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn y(i: usize, n: i64) -> Self {
        Monomial::from_terms([((i, n), 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, i64), i64)>) -> Self {
        let mut m = Monomial::one();
        for (k, e) in terms {
            m.bump(k, e);
        }
        m
    }

    /// `prod_i Y_i(0)^{lambda_i}`.
    pub fn highest(lam: &Weight) -> Self {
        Monomial::from_terms(lam.0.iter().enumerate().map(|(i, &e)| ((i, 0), e)))
    }

    fn bump(&mut self, key: (usize, i64), e: i64) {
        if e == 0 {
            return;
        }
        let v = self.0.entry(key).or_insert(0);
        *v += e;
        if *v == 0 {
            self.0.remove(&key);
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, i: usize, n: i64) -> i64 {
        self.0.get(&(i, n)).copied().unwrap_or(0)
    }

    /// All `((i, n), y_i(n))` with nonzero exponent, sorted by `(i, n)`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, i64), i64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    /// The nonzero `(n, y_i(n))` for one index, sorted by `n`.
    pub fn row(&self, i: usize) -> Vec<(i64, i64)> {
        self.0.range((i, i64::MIN)..=(i, i64::MAX)).map(|(&(_, n), &y)| (n, y)).collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (k, e) in other.terms() {
            out.bump(k, e);
        }
        out
    }

    pub fn pow(&self, k: i64) -> Monomial {
        Monomial::from_terms(self.terms().map(|(key, e)| (key, e * k)))
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// True if every exponent is positive.
    pub fn is_positive(&self) -> bool {
        self.0.values().all(|&e| e > 0)
    }

    /// `sum_i (sum_n y_i(n)) Lambda_i` in pairing coordinates.
    pub fn weight(&self, rank: usize) -> Weight {
        let mut w = vec![0; rank];
        for ((i, _), e) in self.terms() {
            w[i] += e;
        }
        Weight(w)
    }

    /// `(phi_i, eps_i)`: the largest prefix sum of `y_i` (empty prefix
    /// included) and `phi_i - <h_i, wt>`.
    pub fn phi_eps(&self, i: usize) -> (i64, i64) {
        let (mut sum, mut best) = (0i64, 0i64);
        for (_, y) in self.row(i) {
            sum += y;
            best = best.max(sum);
        }
        (best, best - sum)
    }

    /// `Y_i(n) -> Y_i(-n)^{-1}`.
    pub fn psi(&self) -> Monomial {
        Monomial::from_terms(self.terms().map(|((i, n), e)| ((i, -n), -e)))
    }

    /// `Y_i(n) -> Y_i(n + m_i)`.
    pub fn shift(&self, m: &[i64]) -> Monomial {
        Monomial::from_terms(self.terms().map(|((i, n), e)| ((i, n + m[i]), e)))
    }

    /// Renders as `Y_1(2)^-1 Y_2(1)`; the empty monomial is `1`.
    pub fn render(&self, cartan: &CartanSpec) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut out = String::new();
        for ((i, n), e) in self.terms() {
            if !out.is_empty() {
                out.push(' ');
            }
            write!(out, "Y_{}({n})", cartan.label(i)).unwrap();
            if e != 1 {
                write!(out, "^{e}").unwrap();
            }
        }
        out
    }

    /// Parses products of `Y<label>(<n>)[^<exp>]` factors such as
    /// `Y1(0)^2 Y2(3)^-1`. An underscore after `Y` and `*` between factors
    /// are accepted; `1` is the empty monomial.
    pub fn parse(input: &str, cartan: &CartanSpec) -> Result<Monomial, MonomialError> {
        let err = |reason: &str| MonomialError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s = input.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        if s.is_empty() {
            return Err(err("empty input"));
        }
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut out = Monomial::one();
        let int_at = |pos: &mut usize| -> Option<i64> {
            let start = *pos;
            if *pos < chars.len() && (chars[*pos] == '-' || chars[*pos] == '+') {
                *pos += 1;
            }
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            chars[start..*pos].iter().collect::<String>().parse().ok()
        };
        while pos < chars.len() {
            if chars[pos].is_whitespace() || chars[pos] == '*' {
                pos += 1;
                continue;
            }
            if chars[pos] != 'Y' {
                return Err(err(&format!("expected `Y` at position {pos}")));
            }
            pos += 1;
            if pos < chars.len() && chars[pos] == '_' {
                pos += 1;
            }
            let start = pos;
            while pos < chars.len() && chars[pos] != '(' {
                pos += 1;
            }
            let label: String = chars[start..pos].iter().collect();
            if pos == chars.len() || label.is_empty() {
                return Err(err("expected `Y<label>(<n>)`"));
            }
            let i = cartan
                .index_of(label.trim())
                .map_err(|_| MonomialError::UnknownLabel(label.clone()))?;
            pos += 1;
            let n = int_at(&mut pos).ok_or_else(|| err("expected an integer inside parentheses"))?;
            if pos == chars.len() || chars[pos] != ')' {
                return Err(err("missing `)`"));
            }
            pos += 1;
            let mut e = 1;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let had_brace = pos < chars.len() && chars[pos] == '{';
                if had_brace {
                    pos += 1;
                }
                e = int_at(&mut pos).ok_or_else(|| err("expected an exponent after `^`"))?;
                if had_brace {
                    if pos == chars.len() || chars[pos] != '}' {
                        return Err(err("missing `}`"));
                    }
                    pos += 1;
                }
            }
            out.bump((i, n), e);
        }
        Ok(out)
    }

    /// A random monomial with up to `max_terms` factors, `n` in `n_range`
    /// and exponents in `-max_exp..=max_exp`.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        rank: usize,
        n_range: std::ops::RangeInclusive<i64>,
        max_exp: i64,
        max_terms: usize,
    ) -> Monomial {
        let terms = rng.gen_range(0..=max_terms);
        Monomial::from_terms((0..terms).map(|_| {
            let i = rng.gen_range(0..rank);
            let n = rng.gen_range(n_range.clone());
            let e = rng.gen_range(-max_exp..=max_exp);
            ((i, n), e)
        }))
    }
}

/// The integers `c_ij` (`i != j`) of the variant rule. In standard mode
/// `c_ij + c_ji = 1`; relaxed mode only asks for `>= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CMatrix {
    entries: Vec<Vec<i64>>,
    relaxed: bool,
}

#[derive(Serialize, Deserialize)]
struct CMatrixJson {
    c: BTreeMap<String, i64>,
    #[serde(default)]
    relaxed: bool,
}

impl CMatrix {
    /// Validates a full matrix (diagonal ignored).
    #[allow(clippy::needless_range_loop)]
    pub fn new(entries: Vec<Vec<i64>>, relaxed: bool) -> Result<CMatrix, MonomialError> {
        let r = entries.len();
        if entries.iter().any(|row| row.len() != r) {
            return Err(MonomialError::InvalidC("matrix must be square".into()));
        }
        let mut entries = entries;
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 0;
        }
        for i in 0..r {
            for j in i + 1..r {
                let s = entries[i][j] + entries[j][i];
                let ok = if relaxed { s >= 1 } else { s == 1 };
                if !ok {
                    let need = if relaxed { ">= 1" } else { "= 1" };
                    return Err(MonomialError::InvalidC(format!(
                        "c[{i}][{j}] + c[{j}][{i}] = {s}, expected {need}"
                    )));
                }
            }
        }
        Ok(CMatrix { entries, relaxed })
    }

    /// `c_ij = 0` for `i < j` and `1` for `i > j`.
    pub fn standard(rank: usize) -> CMatrix {
        let entries = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i > j)).collect())
            .collect();
        CMatrix { entries, relaxed: false }
    }

    /// Every standard-mode matrix with entries in `{0, 1}`, in lexicographic
    /// order of `(c_01, c_02, ..., c_12, ...)`.
    pub fn all_binary(rank: usize) -> Vec<CMatrix> {
        let pairs: Vec<(usize, usize)> = (0..rank).flat_map(|i| (i + 1..rank).map(move |j| (i, j))).collect();
        (0..1u64 << pairs.len())
            .map(|mask| {
                let mut entries = vec![vec![0; rank]; rank];
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    let bit = ((mask >> (pairs.len() - 1 - k)) & 1) as i64;
                    entries[i][j] = bit;
                    entries[j][i] = 1 - bit;
                }
                CMatrix { entries, relaxed: false }
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `c'_ij = c_ji`, the target of `psi`.
    pub fn transposed(&self) -> CMatrix {
        let r = self.rank();
        CMatrix {
            entries: (0..r).map(|i| (0..r).map(|j| self.entries[j][i]).collect()).collect(),
            relaxed: self.relaxed,
        }
    }

    /// `c'_ij = c_ij + m_i - m_j`, the target of the shift by `m`.
    pub fn shifted(&self, m: &[i64]) -> CMatrix {
        let r = self.rank();
        CMatrix {
            entries: (0..r)
                .map(|i| (0..r).map(|j| if i == j { 0 } else { self.entries[i][j] + m[i] - m[j] }).collect())
                .collect(),
            relaxed: self.relaxed,
        }
    }

    /// Builds a matrix from `(i, j, c_ij)` triples. A pair given in one
    /// direction only gets its partner from `c_ij + c_ji = 1`; pairs not
    /// mentioned take the [`CMatrix::standard`] values.
    #[allow(clippy::needless_range_loop)]
    pub fn from_triples(rank: usize, triples: &[(usize, usize, i64)], relaxed: bool) -> Result<CMatrix, MonomialError> {
        let mut given: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &(i, j, v) in triples {
            if i == j || i >= rank || j >= rank {
                return Err(MonomialError::InvalidC(format!("bad index pair ({i}, {j})")));
            }
            if given.insert((i, j), v).is_some() {
                return Err(MonomialError::InvalidC(format!("pair ({i}, {j}) given twice")));
            }
        }
        let mut entries = CMatrix::standard(rank).entries;
        for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    continue;
                }
                match (given.get(&(i, j)), given.get(&(j, i))) {
                    (Some(&v), _) => entries[i][j] = v,
                    (None, Some(&w)) => entries[i][j] = 1 - w,
                    (None, None) => {}
                }
            }
        }
        CMatrix::new(entries, relaxed)
    }

    /// Parses `"1,2:0;2,1:1"` (labels, not positions).
    pub fn parse_cli(s: &str, cartan: &CartanSpec, relaxed: bool) -> Result<CMatrix, MonomialError> {
        let bad = |m: String| MonomialError::InvalidC(m);
        let mut triples = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (pair, value) = part
                .split_once(':')
                .ok_or_else(|| bad(format!("expected `i,j:value`, got `{part}`")))?;
            let (a, b) = pair
                .split_once(',')
                .ok_or_else(|| bad(format!("expected `i,j`, got `{pair}`")))?;
            let i = cartan.index_of(a.trim()).map_err(|_| MonomialError::UnknownLabel(a.trim().into()))?;
            let j = cartan.index_of(b.trim()).map_err(|_| MonomialError::UnknownLabel(b.trim().into()))?;
            let v = value
                .trim()
                .parse()
                .map_err(|_| bad(format!("`{}` is not an integer", value.trim())))?;
            triples.push((i, j, v));
        }
        CMatrix::from_triples(cartan.rank(), &triples, relaxed)
    }

    /// Parses `{"c": {"1,2": 0, "2,1": 1}, "relaxed": false}`.
    pub fn from_json(s: &str, cartan: &CartanSpec) -> Result<CMatrix, MonomialError> {
        let raw: CMatrixJson = serde_json::from_str(s).map_err(|e| MonomialError::InvalidC(e.to_string()))?;
        let text: Vec<String> = raw.c.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        CMatrix::parse_cli(&text.join(";"), cartan, raw.relaxed)
    }

    pub fn to_json(&self, cartan: &CartanSpec) -> String {
        let raw = CMatrixJson {
            c: self.labelled(cartan),
            relaxed: self.relaxed,
        };
        serde_json::to_string(&raw).expect("c matrix serializes")
    }

    fn labelled(&self, cartan: &CartanSpec) -> BTreeMap<String, i64> {
        let r = self.rank();
        (0..r)
            .flat_map(|i| (0..r).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| (format!("{},{}", cartan.label(i), cartan.label(j)), self.entries[i][j]))
            .collect()
    }

    /// Compact form `1,2:0;2,1:1` in index order.
    pub fn render(&self, cartan: &CartanSpec) -> String {
        let r = self.rank();
        let mut parts = Vec::new();
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    parts.push(format!("{},{}:{}", cartan.label(i), cartan.label(j), self.entries[i][j]));
                }
            }
        }
        parts.join(";")
    }
}

/// Which `A_i(n)` and which offsets `e_i`, `f_i` use.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialRule {
    Original,
    Variant(CMatrix),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    E,
    F,
}

/// `A_i(n) = Y_i(n-1) Y_i(n+1) prod_{k != i} Y_k(n)^{<h_k, alpha_i>}`.
pub fn a_original(cartan: &CartanSpec, i: usize, n: i64) -> Monomial {
    Monomial::from_terms(
        [((i, n - 1), 1), ((i, n + 1), 1)]
            .into_iter()
            .chain((0..cartan.rank()).filter(|&k| k != i).map(|k| ((k, n), cartan.a(k, i)))),
    )
}

/// `A_i(n) = Y_i(n) Y_i(n+1) prod_{j != i} Y_j(n + c_ji)^{<h_j, alpha_i>}`.
pub fn a_variant(cartan: &CartanSpec, c: &CMatrix, i: usize, n: i64) -> Monomial {
    Monomial::from_terms(
        [((i, n), 1), ((i, n + 1), 1)]
            .into_iter()
            .chain((0..cartan.rank()).filter(|&j| j != i).map(|j| ((j, n + c.get(j, i)), cartan.a(j, i)))),
    )
}

/// Positions where `e_i`/`f_i` act, shared by both rules.
struct Offsets {
    /// Smallest `n` with `sum_{k <= n} y_i(k) = phi_i`.
    n_f: Option<i64>,
    /// Largest `n` with `sum_{k <= n} y_i(k) = phi_i`.
    n_e: Option<i64>,
}

fn offsets(m: &Monomial, i: usize) -> Offsets {
    let row = m.row(i);
    let (phi, eps) = m.phi_eps(i);
    let mut sums = Vec::with_capacity(row.len());
    let mut s = 0;
    for &(_, y) in &row {
        s += y;
        sums.push(s);
    }
    let n_f = (phi > 0).then(|| row[sums.iter().position(|&s| s == phi).unwrap()].0);
    let n_e = (eps > 0).then(|| {
        let next = match sums.iter().rposition(|&s| s == phi) {
            Some(k) => k + 1,
            None => 0,
        };
        row[next].0 - 1
    });
    Offsets { n_f, n_e }
}

/// `f_i = A_i(n_f + 1)^{-1} M` and `e_i = A_i(n_e - 1) M` where
/// `n_e = max{n ; phi_i = sum_{k < n} y_i(k)}`.
pub fn step_original(cartan: &CartanSpec, m: &Monomial, i: usize, dir: Step) -> Option<Monomial> {
    let off = offsets(m, i);
    match dir {
        Step::F => {
            let n_f = off.n_f?;
            debug_assert!(m.exponent(i, n_f) > 0 && m.exponent(i, n_f + 1) <= 0);
            Some(m.mul(&a_original(cartan, i, n_f + 1).inv()))
        }
        Step::E => {
            let n_e = off.n_e? + 1;
            debug_assert!(m.exponent(i, n_e) < 0 && m.exponent(i, n_e - 1) >= 0);
            Some(m.mul(&a_original(cartan, i, n_e - 1)))
        }
    }
}

/// `f_i = A_i(n_f)^{-1} M` and `e_i = A_i(n_e) M`.
pub fn step_variant(cartan: &CartanSpec, c: &CMatrix, m: &Monomial, i: usize, dir: Step) -> Option<Monomial> {
    let off = offsets(m, i);
    match dir {
        Step::F => {
            let n_f = off.n_f?;
            debug_assert!(m.exponent(i, n_f) > 0 && m.exponent(i, n_f + 1) <= 0);
            Some(m.mul(&a_variant(cartan, c, i, n_f).inv()))
        }
        Step::E => {
            let n_e = off.n_e?;
            debug_assert!(m.exponent(i, n_e + 1) < 0 && m.exponent(i, n_e) >= 0);
            Some(m.mul(&a_variant(cartan, c, i, n_e)))
        }
    }
}

/// The monomial crystal for one rule. The original rule is flagged as
/// violating the crystal axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCrystal {
    cartan: CartanSpec,
    rule: MonomialRule,
}

impl MonomialCrystal {
    pub fn new(cartan: CartanSpec, rule: MonomialRule) -> Result<Self, MonomialError> {
        if let MonomialRule::Variant(c) = &rule {
            if c.rank() != cartan.rank() {
                return Err(MonomialError::InvalidC(format!(
                    "c has rank {} but the Cartan data has rank {}",
                    c.rank(),
                    cartan.rank()
                )));
            }
        }
        Ok(MonomialCrystal { cartan, rule })
    }

    pub fn original(cartan: CartanSpec) -> Self {
        MonomialCrystal {
            cartan,
            rule: MonomialRule::Original,
        }
    }

    pub fn variant(cartan: CartanSpec, c: CMatrix) -> Result<Self, MonomialError> {
        MonomialCrystal::new(cartan, MonomialRule::Variant(c))
    }

    pub fn rule(&self) -> &MonomialRule {
        &self.rule
    }

    pub fn step(&self, m: &Monomial, i: usize, dir: Step) -> Option<Monomial> {
        match &self.rule {
            MonomialRule::Original => step_original(&self.cartan, m, i, dir),
            MonomialRule::Variant(c) => step_variant(&self.cartan, c, m, i, dir),
        }
    }

    pub fn parse(&self, s: &str) -> Result<Monomial, MonomialError> {
        Monomial::parse(s, &self.cartan)
    }
}

impl Crystal for MonomialCrystal {
    type Elem = Monomial;

    fn cartan(&self) -> &CartanSpec {
        &self.cartan
    }
    fn wt(&self, m: &Monomial) -> Weight {
        m.weight(self.cartan.rank())
    }
    fn eps(&self, m: &Monomial, i: usize) -> ExtInt {
        ExtInt::Fin(m.phi_eps(i).1)
    }
    fn phi(&self, m: &Monomial, i: usize) -> ExtInt {
        ExtInt::Fin(m.phi_eps(i).0)
    }
    fn e(&self, m: &Monomial, i: usize) -> Option<Monomial> {
        self.step(m, i, Step::E)
    }
    fn f(&self, m: &Monomial, i: usize) -> Option<Monomial> {
        self.step(m, i, Step::F)
    }
    fn render(&self, m: &Monomial) -> String {
        m.render(&self.cartan)
    }
    fn axiom_unsafe(&self) -> bool {
        self.rule == MonomialRule::Original
    }
}

/// A place where `y_i(n) > 0` and `y_i(n+1) < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodViolation {
    /// Position in the scanned list.
    pub node: usize,
    pub i: usize,
    pub n: i64,
}

/// First monomial (in list order) that is not good, with the smallest
/// offending `(i, n)`.
pub fn good_monomial_violation(monomials: &[Monomial]) -> Option<GoodViolation> {
    monomials.iter().enumerate().find_map(|(node, m)| {
        m.terms()
            .find(|&((i, n), y)| y > 0 && m.exponent(i, n + 1) < 0)
            .map(|((i, n), _)| GoodViolation { node, i, n })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{explore, ExploreOptions};

    fn a1() -> CartanSpec {
        CartanSpec::parse("A1").unwrap()
    }
    fn a2() -> CartanSpec {
        CartanSpec::parse("A2").unwrap()
    }

    #[test]
    fn parse_and_render() {
        let c = a2();
        let m = Monomial::parse("Y1(0)^2 Y2(3)^-1", &c).unwrap();
        assert_eq!(m.exponent(0, 0), 2);
        assert_eq!(m.exponent(1, 3), -1);
        assert_eq!(m.render(&c), "Y_1(0)^2 Y_2(3)^-1");
        assert_eq!(Monomial::parse(&m.render(&c), &c).unwrap(), m);
        assert_eq!(Monomial::parse("1", &c).unwrap(), Monomial::one());
        assert_eq!(Monomial::one().render(&c), "1");
        assert_eq!(Monomial::parse("Y_1(1)^{-1}*Y_1(1)", &c).unwrap(), Monomial::one());
        assert!(Monomial::parse("Y3(0)", &c).is_err());
        assert!(Monomial::parse("Y1(0", &c).is_err());
        assert!(Monomial::parse("X1(0)", &c).is_err());
        assert!(Monomial::parse("", &c).is_err());
    }

    #[test]
    fn weights() {
        let c = a2();
        assert_eq!(Monomial::one().weight(2), Weight(vec![0, 0]));
        assert_eq!(Monomial::parse("Y1(0)", &c).unwrap().weight(2), Weight(vec![1, 0]));
        assert_eq!(Monomial::parse("Y1(2)^-1 Y2(1)", &c).unwrap().weight(2), Weight(vec![-1, 1]));
    }

    #[test]
    fn phi_eps_values() {
        let m = Monomial::parse("Y1(1) Y1(2)^-1", &a1()).unwrap();
        assert_eq!(m.phi_eps(0), (1, 1));
        assert_eq!(Monomial::one().phi_eps(0), (0, 0));
        let m = Monomial::parse("Y2(3)^-1", &a2()).unwrap();
        assert_eq!(m.phi_eps(1), (0, 1));
    }

    #[test]
    fn original_rule_steps() {
        let c2 = a2();
        let y10 = Monomial::parse("Y1(0)", &c2).unwrap();
        let f = step_original(&c2, &y10, 0, Step::F).unwrap();
        assert_eq!(f.render(&c2), "Y_1(2)^-1 Y_2(1)");

        let c1 = a1();
        let p = |s: &str| Monomial::parse(s, &c1).unwrap();
        assert_eq!(step_original(&c1, &p("Y1(1) Y1(2)^-1"), 0, Step::F), Some(p("Y1(2)^-1 Y1(3)^-1")));
        assert_eq!(step_original(&c1, &p("Y1(2)^-1 Y1(3)^-1"), 0, Step::E), Some(p("Y1(0) Y1(3)^-1")));
        assert_eq!(step_original(&c1, &p("Y1(0) Y1(1)"), 0, Step::F), Some(p("Y1(0) Y1(3)^-1")));
        assert_eq!(step_original(&c1, &p("Y1(0) Y1(3)^-1"), 0, Step::F), Some(p("Y1(2)^-1 Y1(3)^-1")));
        assert_eq!(step_original(&c1, &p("Y1(3)^-1"), 0, Step::F), None);
        assert_eq!(step_original(&c1, &p("Y1(3)"), 0, Step::E), None);
    }

    #[test]
    fn variant_rule_steps() {
        let c2 = a2();
        let c = CMatrix::parse_cli("1,2:0;2,1:1", &c2, false).unwrap();
        let p = |s: &str| Monomial::parse(s, &c2).unwrap();
        assert_eq!(a_variant(&c2, &c, 0, 0), p("Y1(0) Y1(1) Y2(1)^-1"));
        assert_eq!(a_variant(&c2, &c, 1, 1), p("Y2(1) Y2(2) Y1(1)^-1"));
        let f1 = step_variant(&c2, &c, &p("Y1(0)"), 0, Step::F).unwrap();
        assert_eq!(f1, p("Y1(1)^-1 Y2(1)"));
        assert_eq!(step_variant(&c2, &c, &f1, 1, Step::F), Some(p("Y2(2)^-1")));

        let c1 = a1();
        let triv = CMatrix::standard(1);
        let y0 = Monomial::parse("Y1(0)", &c1).unwrap();
        let down = step_variant(&c1, &triv, &y0, 0, Step::F).unwrap();
        assert_eq!(down, Monomial::parse("Y1(1)^-1", &c1).unwrap());
        assert_eq!(step_variant(&c1, &triv, &down, 0, Step::E), Some(y0));
    }

    #[test]
    fn c_matrix_forms() {
        let c2 = a2();
        let c = CMatrix::parse_cli("1,2:0;2,1:1", &c2, false).unwrap();
        assert_eq!(c, CMatrix::standard(2));
        assert_eq!(CMatrix::parse_cli("1,2:0", &c2, false).unwrap(), c);
        assert_eq!(CMatrix::from_json(r#"{"c": {"1,2": 0, "2,1": 1}}"#, &c2).unwrap(), c);
        assert_eq!(CMatrix::from_json(&c.to_json(&c2), &c2).unwrap(), c);
        assert!(CMatrix::parse_cli("1,2:1;2,1:1", &c2, false).is_err());
        assert!(CMatrix::parse_cli("1,2:1;2,1:1", &c2, true).unwrap().is_relaxed());
        assert!(CMatrix::parse_cli("1,2:0;2,1:0", &c2, true).is_err());
        assert_eq!(CMatrix::all_binary(3).len(), 8);
        assert_eq!(c.transposed().get(0, 1), 1);
        assert_eq!(c.shifted(&[1, 0]).get(0, 1), 1);
        assert_eq!(c.render(&c2), "1,2:0;2,1:1");
    }

    #[test]
    fn psi_and_shift() {
        let c2 = a2();
        let p = |s: &str| Monomial::parse(s, &c2).unwrap();
        assert_eq!(Monomial::one().psi(), Monomial::one());
        assert_eq!(p("Y1(0)").psi(), p("Y1(0)^-1"));
        assert_eq!(p("Y1(1)^-1 Y2(1)").psi(), p("Y1(-1) Y2(-1)^-1"));
        assert_eq!(p("Y1(0)").shift(&[2, 0]), p("Y1(2)"));
        assert_eq!(p("Y1(3) Y2(-1)").shift(&[0, 0]), p("Y1(3) Y2(-1)"));
    }

    #[test]
    fn good_monomials() {
        let c1 = a1();
        let p = |s: &str| Monomial::parse(s, &c1).unwrap();
        let v = good_monomial_violation(&[p("Y1(0) Y1(1)"), p("Y1(1) Y1(2)^-1")]).unwrap();
        assert_eq!(v, GoodViolation { node: 1, i: 0, n: 1 });

        let m = MonomialCrystal::original(a2());
        let g = explore(&m, &[m.parse("Y1(0)").unwrap()], ExploreOptions::default()).unwrap();
        assert_eq!(good_monomial_violation(&g.elements), None);

        let m = MonomialCrystal::original(c1.clone());
        let g = explore(&m, &[p("Y1(0) Y1(1)")], ExploreOptions::default()).unwrap();
        assert_eq!(g.graph.len(), 3);
        assert_eq!(good_monomial_violation(&g.elements), None);
    }

    #[test]
    fn highest_weight_string_in_a1() {
        let m = MonomialCrystal::variant(a1(), CMatrix::standard(1)).unwrap();
        let seed = Monomial::highest(&Weight(vec![2]));
        let g = explore(&m, &[seed], ExploreOptions::default()).unwrap().graph;
        assert_eq!(g.len(), 3);
        assert!(g.is_semi_normal().holds());
    }
}
