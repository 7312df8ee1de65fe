//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N ...: PASS|FAIL` line. Run with
//! `cargo test -p kmcrystal --test acceptance -- --nocapture`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use kmcrystal::crystal::{explore, Crystal, Direction, ExploreOptions, DEFAULT_BUDGET};
use kmcrystal::lattice::{
    binfty_truncated, bl_factorization_check, check_ell_condition, verify_lattice_embedding, LatticeFunctionals,
};
use kmcrystal::monomial::{CMatrix, Monomial, MonomialCrystal};
use kmcrystal::scan::{
    c_matrices_in_range, certificate_sha256, psi_duality_random, run_scan, semi_normal_random, shift_random,
    CChoice, RuleChoice, ScanConfig,
};
use kmcrystal::verify::{
    check_component_is_blam, check_crystal_axioms, check_normal, check_semi_normal, mutate, phi_rank2_random,
    recheck, stembridge_check, Verdict, Violation, STANDARD_MUTATIONS,
};
use kmcrystal::{CartanSpec, RootVector, Weight};

const SEED: u64 = 20240601;
const LIMIT_1S: Duration = Duration::from_secs(1);
const LIMIT_60S: Duration = Duration::from_secs(60);
const LIMIT_120S: Duration = Duration::from_secs(120);

fn cartan(s: &str) -> CartanSpec {
    CartanSpec::parse(s).unwrap()
}

/// Prints the criterion line and fails the test with the collected reasons.
fn report(n: u32, name: &str, start: Instant, limit: Option<Duration>, mut problems: Vec<String>) {
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed >= limit {
            problems.push(format!("runtime {elapsed:?} exceeds {limit:?}"));
        }
    }
    let status = if problems.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} {name}: {status} ({:.2?})", elapsed);
    for p in &problems {
        println!("    {p}");
    }
    assert!(problems.is_empty(), "criterion {n} failed:\n{}", problems.join("\n"));
}

#[test]
fn criterion_01_a2_example_golden() {
    let start = Instant::now();
    let a2 = cartan("A2");
    let m = MonomialCrystal::original(a2.clone());
    let seed = m.parse("Y1(0)").unwrap();
    let ex = explore(&m, &[seed], ExploreOptions::default().direction(Direction::Both)).unwrap();
    let g = &ex.graph;
    let mut problems = Vec::new();
    let cert = g.canonical_form(0).unwrap();
    if cert != include_str!("golden/a2_original_y1.cert") {
        problems.push(format!("certificate differs:\n{cert}"));
    }
    if g.listing() != include_str!("golden/a2_original_y1.listing") {
        problems.push(format!("listing differs:\n{}", g.listing()));
    }
    if g.len() != 3 || g.edges().count() != 2 {
        problems.push(format!("{} nodes and {} edges", g.len(), g.edges().count()));
    }
    report(1, "A2 original-rule example graph", start, Some(LIMIT_1S), problems);
}

#[test]
fn criterion_02_inverse_axiom_counterexample() {
    let start = Instant::now();
    let a1 = cartan("A1");
    let m = MonomialCrystal::original(a1.clone());
    let p = |s: &str| m.parse(s).unwrap();
    let (b, fb, efb) = (p("Y1(1) Y1(2)^-1"), p("Y1(2)^-1 Y1(3)^-1"), p("Y1(0) Y1(3)^-1"));
    let mut problems = Vec::new();
    if m.f(&b, 0) != Some(fb.clone()) {
        problems.push("f(Y(1)Y(2)^-1) != Y(2)^-1 Y(3)^-1".into());
    }
    if m.e(&fb, 0) != Some(efb.clone()) {
        problems.push("e(Y(2)^-1 Y(3)^-1) != Y(0) Y(3)^-1".into());
    }
    if m.f(&p("Y1(0) Y1(1)"), 0) != Some(efb.clone()) || m.f(&efb, 0) != Some(fb.clone()) {
        problems.push("chain Y(0)Y(1) -> Y(0)Y(3)^-1 -> Y(2)^-1Y(3)^-1 broken".into());
    }
    let ex = explore(&m, std::slice::from_ref(&b), ExploreOptions::default().direction(Direction::Both)).unwrap();
    let r = check_crystal_axioms(&ex.graph);
    if r.verdict != Verdict::ExpectedFail {
        problems.push(format!("verdict {} instead of EXPECTED_FAIL", r.verdict));
    }
    if !r.witnesses.iter().all(|w| w.violation.is_inverse_axiom()) {
        problems.push("a witness outside the inverse axiom".into());
    }
    let expected = vec![m.render(&b), m.render(&fb), m.render(&efb)];
    let hit = r.witnesses.iter().any(|w| {
        matches!(w.violation, Violation::InverseF { .. }) && w.labels == expected
    });
    if !hit {
        problems.push(format!("no InverseF witness with labels {expected:?}"));
    }
    report(2, "inverse-axiom counterexample", start, Some(LIMIT_1S), problems);
}

fn scan_types() -> Vec<CartanSpec> {
    ["A1", "A2", "A3", "B2", "G2"].into_iter().map(cartan).collect()
}

#[test]
fn criterion_03_conjecture_scan() {
    let start = Instant::now();
    let rows = run_scan(&ScanConfig::new(scan_types(), RuleChoice::Original)).unwrap();
    let mut problems = Vec::new();
    // 3 + 9 + 27 + 9 + 9 weights
    if rows.len() != 57 {
        problems.push(format!("{} rows, expected 57", rows.len()));
    }
    for r in &rows {
        if r.verdict != Verdict::Pass || r.size.to_string() != r.oracle_size || r.has_good_violation() {
            problems.push(format!(
                "{} {}: size {} oracle {} verdict {} good {}",
                r.cartan, r.lambda, r.size, r.oracle_size, r.verdict, r.good_violation
            ));
        }
    }
    report(3, "original-rule conjecture scan", start, Some(LIMIT_60S), problems);
}

#[test]
fn criterion_04_variant_theorem_scan() {
    let start = Instant::now();
    let rows = run_scan(&ScanConfig::new(scan_types(), RuleChoice::Variant(CChoice::AllBinary))).unwrap();
    let mut problems = Vec::new();
    // c choices per type: 1, 2, 8, 2, 2
    let expected_rows = 3 + 2 * 9 + 8 * 27 + 2 * 9 + 2 * 9;
    if rows.len() != expected_rows {
        problems.push(format!("{} rows, expected {expected_rows}", rows.len()));
    }
    for r in &rows {
        let rep = r.report.as_ref().unwrap();
        if r.verdict != Verdict::Pass || r.size.to_string() != r.oracle_size {
            problems.push(format!("{} c={} {}: verdict {}", r.cartan, r.c, r.lambda, r.verdict));
        }
        let simply_laced_a = ["A1", "A2", "A3"].contains(&r.cartan.as_str());
        if simply_laced_a && rep.child("stembridge").map(|s| s.verdict) != Some(Verdict::Pass) {
            problems.push(format!("{} c={} {}: local axioms not PASS", r.cartan, r.c, r.lambda));
        }
    }
    report(4, "variant-rule theorem scan", start, Some(LIMIT_120S), problems);
}

#[test]
fn criterion_05_semi_normality_random() {
    let start = Instant::now();
    let mut problems = Vec::new();
    for (k, t) in ["A2", "B2", "A1~"].into_iter().enumerate() {
        let c = cartan(t);
        let r = semi_normal_random(&c, &CMatrix::standard(c.rank()), 1000, 8, SEED + k as u64);
        if r.verdict != Verdict::Pass || r.stats.nodes != 1000 {
            problems.push(format!("{t}: {}", r.summary()));
        }
    }
    report(5, "semi-normality on random monomials", start, None, problems);
}

#[test]
fn criterion_06_psi_shift_and_c_independence() {
    let start = Instant::now();
    let mut problems = Vec::new();
    for (k, t) in ["A2", "B2", "G2", "A1~", "A3"].into_iter().enumerate() {
        let c = cartan(t);
        for (j, cm) in c_matrices_in_range(c.rank(), -1, 2, false).into_iter().take(4).enumerate() {
            let s = SEED + 100 * k as u64 + j as u64;
            for r in [psi_duality_random(&c, &cm, 500, s), shift_random(&c, &cm, 500, s)] {
                if r.verdict != Verdict::Pass || r.stats.nodes != 500 {
                    problems.push(format!("{t} c={}: {}", cm.render(&c), r.summary()));
                }
            }
        }
    }
    let a2 = cartan("A2");
    let lam = Weight::fundamental(2, 0);
    let mut certs = BTreeMap::new();
    for cm in c_matrices_in_range(2, -3, 4, false) {
        let m = MonomialCrystal::variant(a2.clone(), cm.clone()).unwrap();
        let ex = explore(&m, &[Monomial::highest(&lam)], ExploreOptions::default().direction(Direction::Both)).unwrap();
        certs.insert(cm.render(&a2), certificate_sha256(&ex.graph, 0).unwrap());
    }
    let distinct: std::collections::BTreeSet<_> = certs.values().collect();
    if certs.len() != 8 || distinct.len() != 1 {
        problems.push(format!("B(Lambda_1) certificates across c: {certs:?}"));
    }
    // shifting by m = (1, 0) turns c = (c12, c21) = (0, 1) into (1, 0)
    let c01 = CMatrix::new(vec![vec![0, 0], vec![1, 0]], false).unwrap();
    let shifted = c01.shifted(&[1, 0]);
    if shifted != CMatrix::new(vec![vec![0, 1], vec![0, 0]], false).unwrap() {
        problems.push(format!("shifted c is {}", shifted.render(&a2)));
    }
    let src = explore(
        &MonomialCrystal::variant(a2.clone(), c01).unwrap(),
        &[Monomial::y(0, 0)],
        ExploreOptions::default().direction(Direction::Both),
    )
    .unwrap();
    let dst = explore(
        &MonomialCrystal::variant(a2.clone(), shifted).unwrap(),
        &[Monomial::y(0, 1)],
        ExploreOptions::default().direction(Direction::Both),
    )
    .unwrap();
    if src.graph.canonical_form(0).unwrap() != dst.graph.canonical_form(0).unwrap() {
        problems.push("shifted B(Lambda_1) component differs".into());
    }
    report(6, "psi duality, shift isomorphism, c-independence", start, None, problems);
}

#[test]
fn criterion_07_affine_relaxed_c() {
    let start = Instant::now();
    let a1t = cartan("A1~");
    let mut problems = Vec::new();
    for (c01, c10) in [(1, 1), (0, 2), (2, 0)] {
        let c = CMatrix::new(vec![vec![0, c01], vec![c10, 0]], true).unwrap();
        let m = MonomialCrystal::variant(a1t.clone(), c).unwrap();
        let ex = explore(
            &m,
            &[Monomial::y(0, 0)],
            ExploreOptions::default().direction(Direction::Both).depth(6),
        )
        .unwrap();
        let g = &ex.graph;
        let axioms = check_crystal_axioms(g);
        let semi = check_semi_normal(g);
        let blam = check_component_is_blam(g, &Weight::fundamental(2, 0));
        if axioms.verdict != Verdict::Pass {
            problems.push(format!("c=({c01},{c10}) axioms: {}", axioms.summary()));
        }
        if semi.verdict == Verdict::Fail || semi.stats.checked == 0 {
            problems.push(format!("c=({c01},{c10}) semi-normality: {}", semi.summary()));
        }
        if blam.verdict != Verdict::Inconclusive {
            problems.push(format!("c=({c01},{c10}) B(lambda) verdict {}", blam.verdict));
        }
    }
    report(7, "affine A1 with c01 + c10 = 2", start, None, problems);
}

#[test]
fn criterion_08_lattice_realization() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let pm = LatticeFunctionals::new(vec![vec![-1, 1], vec![1, -1]]).unwrap();
    let cases = [
        (cartan("A2~"), LatticeFunctionals::cyclic(3), true),
        (cartan("A3~"), LatticeFunctionals::cyclic(4), true),
        (cartan("A1~"), pm, false),
    ];
    for (c, l, condition) in &cases {
        let ell = check_ell_condition(c, l);
        if ell.holds != *condition {
            problems.push(format!("{c}: condition {} expected {condition}", ell.holds));
        }
        match verify_lattice_embedding(c, l, 3) {
            Err(e) => problems.push(format!("{c}: {e}")),
            Ok(r) => {
                for sub in ["path_independence", "injectivity", "strictness"] {
                    if r.child(sub).map(|s| s.verdict) != Some(Verdict::Pass) {
                        problems.push(format!("{c}: {sub} did not pass\n{}", r.summary()));
                    }
                }
            }
        }
    }
    for t in ["A2", "B2", "C2", "G2", "A1~"] {
        let c = cartan(t);
        let case_i = LatticeFunctionals::new(vec![vec![-1, -c.a(0, 1)], vec![0, -1]]).unwrap();
        let case_ii = LatticeFunctionals::new(vec![vec![-1, 0], vec![-c.a(1, 0), -1]]).unwrap();
        for l in [case_i, case_ii] {
            let holds = check_ell_condition(&c, &l).holds;
            let fac = bl_factorization_check(&c, &l).unwrap();
            if !holds || !fac.holds {
                problems.push(format!("{t} L={:?}: condition {holds}, factorization {fac:?}", l.matrix()));
            }
        }
    }
    report(8, "lattice realization", start, Some(LIMIT_60S), problems);
}

/// Brute-force Kostant partition counts: the number of multisets of
/// positive roots with the given sum, for every sum of height <= `depth`.
fn kostant_table(roots: &[RootVector], depth: i64) -> BTreeMap<Vec<i64>, u64> {
    fn go(roots: &[RootVector], k: usize, acc: Vec<i64>, depth: i64, out: &mut BTreeMap<Vec<i64>, u64>) {
        if k == roots.len() {
            *out.entry(acc).or_insert(0) += 1;
            return;
        }
        let mut cur = acc;
        loop {
            go(roots, k + 1, cur.clone(), depth, out);
            cur = cur.iter().zip(&roots[k].0).map(|(a, b)| a + b).collect();
            if cur.iter().sum::<i64>() > depth {
                break;
            }
        }
    }
    let mut out = BTreeMap::new();
    go(roots, 0, vec![0; roots[0].0.len()], depth, &mut out);
    out
}

#[test]
fn criterion_09_binfty_truncation() {
    let start = Instant::now();
    let mut problems = Vec::new();
    for t in ["A1", "A2"] {
        let c = cartan(t);
        let roots = c.positive_roots().unwrap();
        for d in 0..=4usize {
            let oracle: BTreeMap<Weight, u64> = kostant_table(&roots, d as i64)
                .into_iter()
                .map(|(beta, n)| (c.root_to_weight(&RootVector(beta.iter().map(|x| -x).collect())), n))
                .collect();
            match binfty_truncated(&c, None, d) {
                Err(e) => problems.push(format!("{t} depth {d}: {e}")),
                Ok((_, ex)) => {
                    if ex.graph.weight_multiset() != oracle {
                        problems.push(format!("{t} depth {d}: per-weight counts differ from Kostant"));
                    }
                }
            }
        }
    }
    report(9, "truncated B(infinity) against Kostant counts", start, None, problems);
}

#[test]
fn criterion_10_phi_morphism() {
    let start = Instant::now();
    let mut problems = Vec::new();
    for (k, t) in ["A2", "B2", "C2", "G2", "A1~"].into_iter().enumerate() {
        let r = phi_rank2_random(&cartan(t), 200, SEED + k as u64);
        if r.verdict != Verdict::Pass || r.stats.nodes != 200 {
            problems.push(format!("{t}: {}", r.summary()));
        }
    }
    report(10, "morphism from K into M_c", start, None, problems);
}

#[test]
fn criterion_11_mutation_robustness() {
    let start = Instant::now();
    let a2 = cartan("A2");
    let m = MonomialCrystal::variant(a2.clone(), CMatrix::standard(2)).unwrap();
    let lam = Weight(vec![1, 1]);
    let ex = explore(
        &m,
        &[Monomial::highest(&lam)],
        ExploreOptions::default().direction(Direction::Both).budget(DEFAULT_BUDGET),
    )
    .unwrap();
    let g = &ex.graph;
    let mut problems = Vec::new();
    if check_component_is_blam(g, &lam).verdict != Verdict::Pass {
        problems.push("unmutated adjoint component does not pass".into());
    }
    for mutation in STANDARD_MUTATIONS {
        let Some((bad, what)) = mutate(g, mutation) else {
            problems.push(format!("{mutation:?} not applicable"));
            continue;
        };
        let reports = [
            check_crystal_axioms(&bad),
            check_semi_normal(&bad),
            check_normal(&bad),
            stembridge_check(&bad),
            check_component_is_blam(&bad, &lam),
        ];
        let caught: Vec<&str> = reports.iter().filter(|r| r.verdict == Verdict::Fail).map(|r| r.check.as_str()).collect();
        if caught.is_empty() {
            problems.push(format!("{mutation:?} ({what}) not detected"));
        }
        for r in &reports {
            for w in &r.witnesses {
                if recheck(&bad, &w.violation) == Some(false) {
                    problems.push(format!("{mutation:?}: witness does not re-check: {}", w.detail));
                }
            }
        }
    }
    report(11, "mutation robustness", start, None, problems);
}
