use proptest::prelude::*;

use kmcrystal::crystal::{dual, explore, Crystal, Direction, ElementaryBi, ExploreOptions, TLambda, Tensor};
use kmcrystal::lattice::{verify_lattice_embedding, LatticeCrystal, LatticeFunctionals};
use kmcrystal::monomial::{CMatrix, Monomial, MonomialCrystal};
use kmcrystal::verify::{check_component_is_blam, check_normal, Verdict};
use kmcrystal::{CartanSpec, ExtInt, RootVector, Weight};

const TYPES: [&str; 6] = ["A2", "B2", "C2", "G2", "A1~", "A3"];

fn cartan_strategy() -> impl Strategy<Value = CartanSpec> {
    prop::sample::select(TYPES.to_vec()).prop_map(|t| CartanSpec::parse(t).unwrap())
}

fn monomial_strategy(rank: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(((0..rank, -4i64..=4), -2i64..=2), 0..6).prop_map(Monomial::from_terms)
}

fn c_strategy(rank: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(-2i64..=3, rank * rank).prop_map(move |v| {
        let mut e = vec![vec![0; rank]; rank];
        for i in 0..rank {
            for j in i + 1..rank {
                e[i][j] = v[i * rank + j];
                e[j][i] = 1 - v[i * rank + j];
            }
        }
        CMatrix::new(e, false).unwrap()
    })
}

fn variant_case() -> impl Strategy<Value = (CartanSpec, CMatrix, Monomial)> {
    cartan_strategy().prop_flat_map(|c| {
        let r = c.rank();
        (Just(c), c_strategy(r), monomial_strategy(r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn monomial_statistics((cartan, c, m) in variant_case()) {
        let mc = MonomialCrystal::variant(cartan.clone(), c).unwrap();
        let orig = MonomialCrystal::original(cartan.clone());
        for i in 0..cartan.rank() {
            for x in [&mc as &dyn Crystal<Elem = Monomial>, &orig] {
                let (eps, phi) = (x.eps(&m, i), x.phi(&m, i));
                prop_assert_eq!(phi, eps + m.weight(cartan.rank()).pairing(i));
                prop_assert!(eps >= ExtInt::Fin(0) && phi >= ExtInt::Fin(0));
                prop_assert_eq!(x.e(&m, i).is_none(), eps == ExtInt::Fin(0));
                prop_assert_eq!(x.f(&m, i).is_none(), phi == ExtInt::Fin(0));
                if let Some(fm) = x.f(&m, i) {
                    prop_assert_eq!(x.wt(&fm), &x.wt(&m) - &cartan.simple_root(i));
                    prop_assert_eq!(x.eps(&fm, i), eps + 1);
                }
            }
            if let Some(fm) = mc.f(&m, i) {
                prop_assert_eq!(mc.e(&fm, i), Some(m.clone()));
            }
            if let Some(em) = mc.e(&m, i) {
                prop_assert_eq!(mc.f(&em, i), Some(m.clone()));
            }
        }
    }

    #[test]
    fn psi_and_shift((cartan, c, m) in variant_case(), shift in prop::collection::vec(-3i64..=3, 4)) {
        let r = cartan.rank();
        let shift = &shift[..r];
        prop_assert_eq!(m.psi().psi(), m.clone());
        let back: Vec<i64> = shift.iter().map(|x| -x).collect();
        prop_assert_eq!(m.shift(shift).shift(&back), m.clone());
        let src = MonomialCrystal::variant(cartan.clone(), c.clone()).unwrap();
        let psi = MonomialCrystal::variant(cartan.clone(), c.transposed()).unwrap();
        let sh = MonomialCrystal::variant(cartan.clone(), c.shifted(shift)).unwrap();
        prop_assert_eq!(psi.wt(&m.psi()), -src.wt(&m));
        for i in 0..r {
            prop_assert_eq!(psi.eps(&m.psi(), i), src.phi(&m, i));
            prop_assert_eq!(src.f(&m, i).map(|x| x.psi()), psi.e(&m.psi(), i));
            prop_assert_eq!(src.e(&m, i).map(|x| x.shift(shift)), sh.e(&m.shift(shift), i));
            prop_assert_eq!(src.f(&m, i).map(|x| x.shift(shift)), sh.f(&m.shift(shift), i));
        }
    }

    #[test]
    fn dual_of_dual((cartan, c, m) in variant_case()) {
        let mc = MonomialCrystal::variant(cartan.clone(), c).unwrap();
        let dd = dual(dual(&mc));
        prop_assert_eq!(dd.wt(&m), mc.wt(&m));
        for i in 0..cartan.rank() {
            prop_assert_eq!(dd.eps(&m, i), mc.eps(&m, i));
            prop_assert_eq!(dd.phi(&m, i), mc.phi(&m, i));
            prop_assert_eq!(dd.e(&m, i), mc.e(&m, i));
            prop_assert_eq!(dd.f(&m, i), mc.f(&m, i));
        }
    }

    #[test]
    fn tensor_associativity(
        cartan in cartan_strategy(),
        picks in prop::collection::vec(0usize..4, 3),
        start in prop::collection::vec(-2i64..=2, 3),
    ) {
        let r = cartan.rank();
        let b = |k: usize| ElementaryBi::new(cartan.clone(), picks[k] % r);
        let t = TLambda::new(cartan.clone(), Weight::fundamental(r, picks[2] % r));
        let opts = ExploreOptions::default().direction(Direction::Both).depth(3);

        let left = Tensor::new(Tensor::new(b(0), b(1)).unwrap(), b(2)).unwrap();
        let right = Tensor::new(b(0), Tensor::new(b(1), b(2)).unwrap()).unwrap();
        let gl = explore(&left, &[((start[0], start[1]), start[2])], opts).unwrap().graph;
        let gr = explore(&right, &[(start[0], (start[1], start[2]))], opts).unwrap().graph;
        prop_assert_eq!(gl.canonical_form(0).unwrap(), gr.canonical_form(0).unwrap());

        let left = Tensor::new(Tensor::new(b(0), t.clone()).unwrap(), b(1)).unwrap();
        let right = Tensor::new(b(0), Tensor::new(t, b(1)).unwrap()).unwrap();
        let gl = explore(&left, &[((start[0], ()), start[1])], opts).unwrap().graph;
        let gr = explore(&right, &[(start[0], ((), start[1]))], opts).unwrap().graph;
        prop_assert_eq!(gl.canonical_form(0).unwrap(), gr.canonical_form(0).unwrap());
    }

    #[test]
    fn lattice_crystal_properties(
        cartan in cartan_strategy(),
        raw in prop::collection::vec(-2i64..=2, 16),
        x in prop::collection::vec(-5i64..=5, 4),
        y in prop::collection::vec(-5i64..=5, 4),
    ) {
        let r = cartan.rank();
        let l: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| if i == j { -1 } else { raw[i * 4 + j] }).collect())
            .collect();
        let lat = LatticeCrystal::new(cartan.clone(), LatticeFunctionals::new(l).unwrap()).unwrap();
        let (x, y) = (RootVector(x[..r].to_vec()), RootVector(y[..r].to_vec()));
        let ly = lat.functionals();
        for i in 0..r {
            prop_assert_eq!(lat.phi(&x, i), lat.eps(&x, i) + cartan.root_pairing(&x, i));
            prop_assert_eq!(lat.eps(&(&x + &y), i), lat.eps(&x, i) + ly.eval(i, &y));
            let fx = lat.f(&x, i).unwrap();
            prop_assert_eq!(lat.e(&fx, i), Some(x.clone()));
            prop_assert_eq!(lat.eps(&lat.e(&x, i).unwrap(), i), lat.eps(&x, i) - 1);
        }
    }
}

#[test]
fn lattice_embedding_is_monotone_in_depth() {
    let cases = [
        (CartanSpec::parse("A1~").unwrap(), LatticeFunctionals::new(vec![vec![-1, 1], vec![1, -1]]).unwrap()),
        (CartanSpec::parse("A2").unwrap(), LatticeFunctionals::new(vec![vec![-1, 0], vec![1, -1]]).unwrap()),
        (CartanSpec::parse("A2").unwrap(), LatticeFunctionals::negated_gcm(&CartanSpec::parse("A2").unwrap())),
    ];
    for (c, l) in cases {
        let verdicts: Vec<Verdict> = (0..=4).map(|d| verify_lattice_embedding(&c, &l, d).unwrap().verdict).collect();
        for d in 1..verdicts.len() {
            if verdicts[d] == Verdict::Pass {
                assert_eq!(verdicts[d - 1], Verdict::Pass, "{c} depth {d}");
            }
        }
    }
}

#[test]
fn component_pass_implies_normal_pass() {
    for t in ["A2", "B2", "G2"] {
        let c = CartanSpec::parse(t).unwrap();
        for lam in [Weight(vec![1, 0]), Weight(vec![0, 1]), Weight(vec![1, 1])] {
            let m = MonomialCrystal::variant(c.clone(), CMatrix::standard(2)).unwrap();
            let g = explore(&m, &[Monomial::highest(&lam)], ExploreOptions::default().direction(Direction::Both))
                .unwrap()
                .graph;
            if check_component_is_blam(&g, &lam).verdict == Verdict::Pass {
                assert_eq!(check_normal(&g).verdict, Verdict::Pass, "{t} {lam}");
            }
        }
    }
}
