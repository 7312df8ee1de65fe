//! Sweeps over Cartan types, dominant weights and rules, plus the seeded
//! randomized runs for the variant rule.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cartan::{CartanSpec, Weight};
use crate::crystal::{explore, Crystal, CrystalError, CrystalGraph, Direction, ExploreOptions, DEFAULT_BUDGET};
use crate::monomial::{good_monomial_violation, CMatrix, Monomial, MonomialCrystal, MonomialError, MonomialRule};
use crate::verify::{check_component_is_blam, CheckReport, Verdict, Violation, Witness};

/// Which `c` matrices a variant sweep runs over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CChoice {
    /// Entries in `{0, 1}` with `c_ij + c_ji = 1`.
    AllBinary,
    /// Every `c` with entries in `lo..=hi` and `c_ij + c_ji = 1`
    /// (`>= 1` when relaxed).
    Range { lo: i64, hi: i64, relaxed: bool },
    /// One fixed matrix, given as `(i, j, c_ij)` triples over labels.
    Fixed { spec: String, relaxed: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleChoice {
    Original,
    Variant(CChoice),
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub types: Vec<CartanSpec>,
    pub rule: RuleChoice,
    /// Largest `<h_i, lambda>` in the sweep.
    pub max_pairing: i64,
    /// Depth bound for non-finite types.
    pub depth: usize,
    pub budget: usize,
    /// Skip `lambda = 0`.
    pub skip_zero: bool,
}

impl ScanConfig {
    pub fn new(types: Vec<CartanSpec>, rule: RuleChoice) -> Self {
        ScanConfig {
            types,
            rule,
            max_pairing: 2,
            depth: 5,
            budget: DEFAULT_BUDGET,
            skip_zero: false,
        }
    }
}

/// One row of the scan table. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    #[serde(rename = "type")]
    pub cartan: String,
    pub rule: String,
    pub c: String,
    pub lambda: String,
    pub size: usize,
    pub oracle_size: String,
    pub verdict: Verdict,
    /// Merged verdict of the axiom and semi-normality checks.
    pub structural: Verdict,
    pub good_violation: String,
    pub cert_sha256: String,
    #[serde(skip)]
    pub report: Option<CheckReport>,
    #[serde(skip)]
    pub graph: Option<CrystalGraph>,
}

impl ScanRow {
    pub fn has_good_violation(&self) -> bool {
        self.good_violation != "NONE"
    }
}

/// Every weight with `0 <= <h_i, lambda> <= max`, in lexicographic order.
pub fn dominant_weights(rank: usize, max: i64) -> Vec<Weight> {
    let mut out = vec![Weight(Vec::new())];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..=max).map(move |a| {
                    let mut v = w.0.clone();
                    v.push(a);
                    Weight(v)
                })
            })
            .collect();
    }
    out
}

/// All `c` with entries in `lo..=hi` over every pair `i < j`, in
/// lexicographic order of `(c_01, c_10, c_02, c_20, ...)`.
pub fn c_matrices_in_range(rank: usize, lo: i64, hi: i64, relaxed: bool) -> Vec<CMatrix> {
    let pairs: Vec<(usize, usize)> = (0..rank).flat_map(|i| (i + 1..rank).map(move |j| (i, j))).collect();
    let options: Vec<(i64, i64)> = (lo..=hi)
        .flat_map(|a| (lo..=hi).map(move |b| (a, b)))
        .filter(|&(a, b)| if relaxed { a + b >= 1 } else { a + b == 1 })
        .collect();
    let mut out: Vec<Vec<Vec<i64>>> = vec![vec![vec![0; rank]; rank]];
    for &(i, j) in &pairs {
        out = out
            .into_iter()
            .flat_map(|m| {
                options.iter().map(move |&(a, b)| {
                    let mut m = m.clone();
                    m[i][j] = a;
                    m[j][i] = b;
                    m
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|e| CMatrix::new(e, relaxed).expect("entries satisfy the pair condition"))
        .collect()
}

/// SHA-256 of the canonical form rooted at `root`, as lowercase hex.
pub fn certificate_sha256(g: &CrystalGraph, root: usize) -> Result<String, CrystalError> {
    Ok(hex::encode(Sha256::digest(g.canonical_form(root)?.as_bytes())))
}

fn rules_for(cartan: &CartanSpec, choice: &RuleChoice) -> Result<Vec<MonomialRule>, MonomialError> {
    Ok(match choice {
        RuleChoice::Original => vec![MonomialRule::Original],
        RuleChoice::Variant(CChoice::AllBinary) => {
            CMatrix::all_binary(cartan.rank()).into_iter().map(MonomialRule::Variant).collect()
        }
        RuleChoice::Variant(CChoice::Range { lo, hi, relaxed }) => c_matrices_in_range(cartan.rank(), *lo, *hi, *relaxed)
            .into_iter()
            .map(MonomialRule::Variant)
            .collect(),
        RuleChoice::Variant(CChoice::Fixed { spec, relaxed }) => {
            vec![MonomialRule::Variant(CMatrix::parse_cli(spec, cartan, *relaxed)?)]
        }
    })
}

/// Explores the component of `prod_i Y_i(0)^{lambda_i}` and compares it with
/// `B(lambda)`. Non-finite types are explored to `depth` only.
pub fn scan_instance(cartan: &CartanSpec, rule: MonomialRule, lam: &Weight, depth: usize, budget: usize) -> ScanRow {
    let (rule_name, c) = match &rule {
        MonomialRule::Original => ("original", "-".to_string()),
        MonomialRule::Variant(c) => ("variant", c.render(cartan)),
    };
    let crystal = MonomialCrystal::new(cartan.clone(), rule).expect("c has the right rank");
    let mut opts = ExploreOptions::default().direction(Direction::Both).budget(budget);
    if !cartan.is_finite() {
        opts = opts.depth(depth);
    }
    let seed = Monomial::highest(lam);
    let oracle_size = if cartan.is_finite() {
        cartan.weyl_dim(lam).map(|d| d.to_string()).unwrap_or_else(|e| e.to_string())
    } else {
        "-".into()
    };
    let ex = match explore(&crystal, &[seed], opts) {
        Ok(ex) => ex,
        Err(over) => {
            let mut report = CheckReport::new("component_is_B(lambda)");
            report.inconclusive(format!("node budget of {} exceeded", over.budget));
            return ScanRow {
                cartan: cartan.to_string(),
                rule: rule_name.into(),
                c,
                lambda: lam.to_string(),
                size: over.partial.graph.len(),
                oracle_size,
                verdict: Verdict::Inconclusive,
                structural: Verdict::Inconclusive,
                good_violation: "-".into(),
                cert_sha256: "-".into(),
                report: Some(report),
                graph: None,
            };
        }
    };
    let g = ex.graph;
    let report = check_component_is_blam(&g, lam);
    let structural = ["crystal_axioms", "semi_normal"]
        .iter()
        .filter_map(|name| report.child(name).map(|c| c.verdict))
        .chain(report.child("normal").and_then(|n| n.child("semi_normal")).map(|c| c.verdict))
        .fold(Verdict::Pass, Verdict::merge);
    let good_violation = match good_monomial_violation(&ex.elements) {
        None => "NONE".to_string(),
        Some(v) => format!("{} at ({}, {})", g.nodes[v.node].label, cartan.label(v.i), v.n),
    };
    let cert = certificate_sha256(&g, 0).unwrap_or_else(|_| "-".into());
    ScanRow {
        cartan: cartan.to_string(),
        rule: rule_name.into(),
        c,
        lambda: lam.to_string(),
        size: g.len(),
        oracle_size,
        verdict: report.verdict,
        structural,
        good_violation,
        cert_sha256: cert,
        graph: (report.verdict == Verdict::Fail).then(|| g.clone()),
        report: Some(report),
    }
}

/// Runs the sweep in parallel. Rows come back in enumeration order
/// (type, rule, weight).
pub fn run_scan(cfg: &ScanConfig) -> Result<Vec<ScanRow>, MonomialError> {
    let mut jobs = Vec::new();
    for cartan in &cfg.types {
        for rule in rules_for(cartan, &cfg.rule)? {
            for lam in dominant_weights(cartan.rank(), cfg.max_pairing) {
                if cfg.skip_zero && lam.0.iter().all(|&x| x == 0) {
                    continue;
                }
                jobs.push((cartan, rule.clone(), lam));
            }
        }
    }
    Ok(jobs
        .into_par_iter()
        .map(|(cartan, rule, lam)| scan_instance(cartan, rule, &lam, cfg.depth, cfg.budget))
        .collect())
}

/// Row counts per verdict, in verdict order.
pub fn verdict_counts(rows: &[ScanRow]) -> Vec<(Verdict, usize)> {
    [Verdict::Pass, Verdict::ExpectedFail, Verdict::Inconclusive, Verdict::Fail]
        .into_iter()
        .map(|v| (v, rows.iter().filter(|r| r.verdict == v).count()))
        .collect()
}

/// Merged verdict of a scan. Non-finite rows count through their structural
/// verdict, since `INCONCLUSIVE` on the isomorphism is expected there.
pub fn scan_verdict(rows: &[ScanRow]) -> Verdict {
    rows.iter().fold(Verdict::Pass, |acc, r| {
        let own = if r.oracle_size == "-" && r.verdict == Verdict::Inconclusive {
            r.structural
        } else {
            r.verdict
        };
        acc.merge(own)
    })
}

fn other(detail: String) -> Witness {
    Witness {
        violation: Violation::Other { detail: detail.clone() },
        labels: Vec::new(),
        detail,
    }
}

/// Random monomials for the property runs: up to 5 factors, `n` in
/// `-4..=4`, exponents in `-2..=2`.
pub fn random_monomials(rank: usize, count: usize, rng: &mut impl Rng) -> Vec<Monomial> {
    (0..count).map(|_| Monomial::random(rng, rank, -4..=4, 2, 5)).collect()
}

/// For each random monomial and index: `e_i` can be applied exactly
/// `eps_i` times and `f_i` exactly `phi_i` times (checked up to `window`
/// steps), and `f_i e_i M = M`, `e_i f_i M = M` whenever defined.
pub fn semi_normal_random(cartan: &CartanSpec, c: &CMatrix, count: usize, window: usize, seed: u64) -> CheckReport {
    let crystal = MonomialCrystal::variant(cartan.clone(), c.clone()).expect("c matches the rank");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = CheckReport::new("semi_normal_random");
    r.seed = Some(seed);
    for m in random_monomials(cartan.rank(), count, &mut rng) {
        r.stats.nodes += 1;
        for i in 0..cartan.rank() {
            r.stats.checked += 1;
            for (is_e, stat) in [(true, crystal.eps(&m, i)), (false, crystal.phi(&m, i))] {
                let expected = stat.finite().expect("monomial statistics are finite");
                let mut cur = m.clone();
                let mut steps = 0i64;
                while steps < window as i64 + 1 {
                    let next = if is_e { crystal.e(&cur, i) } else { crystal.f(&cur, i) };
                    let Some(next) = next else { break };
                    let back = if is_e { crystal.f(&next, i) } else { crystal.e(&next, i) };
                    if back.as_ref() != Some(&cur) {
                        r.fail(other(format!(
                            "round trip fails at {} for index {}",
                            crystal.render(&cur),
                            cartan.label(i)
                        )));
                    }
                    cur = next;
                    steps += 1;
                }
                let ok = if expected <= window as i64 { steps == expected } else { steps > window as i64 };
                if !ok {
                    r.fail(other(format!(
                        "{} of {} is {expected} but the {} string has length {steps}",
                        if is_e { "eps" } else { "phi" },
                        crystal.render(&m),
                        cartan.label(i)
                    )));
                }
            }
        }
    }
    r
}

/// `psi` against `M_c` and `M_{c^T}`: `e_i` and `f_i` swap, `eps_i` and
/// `phi_i` swap, `wt` changes sign.
pub fn psi_duality_random(cartan: &CartanSpec, c: &CMatrix, count: usize, seed: u64) -> CheckReport {
    let src = MonomialCrystal::variant(cartan.clone(), c.clone()).expect("c matches the rank");
    let dst = MonomialCrystal::variant(cartan.clone(), c.transposed()).expect("c matches the rank");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = CheckReport::new("psi_duality");
    r.seed = Some(seed);
    for m in random_monomials(cartan.rank(), count, &mut rng) {
        r.stats.nodes += 1;
        let pm = m.psi();
        if dst.wt(&pm) != src.wt(&m).scaled(-1) {
            r.fail(other(format!("wt(psi({})) != -wt", src.render(&m))));
        }
        for i in 0..cartan.rank() {
            r.stats.checked += 1;
            if dst.eps(&pm, i) != src.phi(&m, i) || dst.phi(&pm, i) != src.eps(&m, i) {
                r.fail(other(format!("eps/phi not swapped at {} index {}", src.render(&m), cartan.label(i))));
            }
            if src.e(&m, i).map(|x| x.psi()) != dst.f(&pm, i) || src.f(&m, i).map(|x| x.psi()) != dst.e(&pm, i) {
                r.fail(other(format!("psi does not swap e and f at {} index {}", src.render(&m), cartan.label(i))));
            }
        }
    }
    r
}

/// The shift `Y_i(n) -> Y_i(n + m_i)` from `M_c` to `M_{c'}`,
/// `c'_ij = c_ij + m_i - m_j`, with a random `m` in `-2..=2` per monomial.
pub fn shift_random(cartan: &CartanSpec, c: &CMatrix, count: usize, seed: u64) -> CheckReport {
    let src = MonomialCrystal::variant(cartan.clone(), c.clone()).expect("c matches the rank");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = CheckReport::new("shift_isomorphism");
    r.seed = Some(seed);
    for m in random_monomials(cartan.rank(), count, &mut rng) {
        r.stats.nodes += 1;
        let shift: Vec<i64> = (0..cartan.rank()).map(|_| rng.gen_range(-2..=2)).collect();
        let dst = MonomialCrystal::variant(cartan.clone(), c.shifted(&shift)).expect("shifted c is valid");
        let sm = m.shift(&shift);
        if dst.wt(&sm) != src.wt(&m) {
            r.fail(other(format!("wt changes under the shift {shift:?} at {}", src.render(&m))));
        }
        for i in 0..cartan.rank() {
            r.stats.checked += 1;
            if dst.eps(&sm, i) != src.eps(&m, i) || dst.phi(&sm, i) != src.phi(&m, i) {
                r.fail(other(format!("eps/phi change under {shift:?} at {} index {}", src.render(&m), cartan.label(i))));
            }
            if src.e(&m, i).map(|x| x.shift(&shift)) != dst.e(&sm, i)
                || src.f(&m, i).map(|x| x.shift(&shift)) != dst.f(&sm, i)
            {
                r.fail(other(format!(
                    "shift {shift:?} does not commute with e/f at {} index {}",
                    src.render(&m),
                    cartan.label(i)
                )));
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_enumeration() {
        let ws = dominant_weights(2, 2);
        assert_eq!(ws.len(), 9);
        assert_eq!(ws[1], Weight(vec![0, 1]));
    }

    #[test]
    fn c_range_counts() {
        assert_eq!(c_matrices_in_range(2, 0, 1, false).len(), 2);
        assert_eq!(c_matrices_in_range(3, 0, 1, false).len(), 8);
        assert_eq!(c_matrices_in_range(2, 0, 1, true).len(), 3);
        assert_eq!(c_matrices_in_range(2, -1, 2, false).len(), 4);
    }

    #[test]
    fn small_instances() {
        let a2 = CartanSpec::parse("A2").unwrap();
        let row = scan_instance(&a2, MonomialRule::Original, &Weight(vec![1, 1]), 5, DEFAULT_BUDGET);
        assert_eq!(row.size, 8);
        assert_eq!(row.verdict, Verdict::Pass, "{}", row.report.unwrap().summary());
        assert_eq!(row.good_violation, "NONE");
        let row = scan_instance(&a2, MonomialRule::Variant(CMatrix::standard(2)), &Weight(vec![2, 0]), 5, DEFAULT_BUDGET);
        assert_eq!(row.size, 6);
        assert_eq!(row.verdict, Verdict::Pass);
    }

    #[test]
    fn random_runs_small() {
        let a2 = CartanSpec::parse("A2").unwrap();
        let c = CMatrix::standard(2);
        assert_eq!(semi_normal_random(&a2, &c, 50, 8, 1).verdict, Verdict::Pass);
        assert_eq!(psi_duality_random(&a2, &c, 50, 2).verdict, Verdict::Pass);
        assert_eq!(shift_random(&a2, &c, 50, 3).verdict, Verdict::Pass);
    }
}
