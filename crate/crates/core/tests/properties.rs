//! Algebraic invariants checked on random inputs.

use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;

use digroup_core::envalg::{build_enveloping_algebra, check_relations, module_to_rep, rep_to_module};
use digroup_core::exactla::subspace;
use digroup_core::ext::{
    self, average_section, average_section_from, block_decompose, change_of_splitting_check, coboundary,
    cocycle_of_extension, cocycle_space, extension_from_cocycle, hom_rho, is_split, same_class, solve_coboundary,
};
use digroup_core::format::{self, LoadOptions};
use digroup_core::generate::{scramble, Generator};
use digroup_core::halo::{verify_adjunction, BandModule};
use digroup_core::reps::Representation;
use digroup_core::{Element, Field, Matrix, Scalar};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(7)), Just(Field::Prime(2))]
}

fn scalar(field: Field) -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..20).prop_map(move |(n, d)| {
        if field.is_unit_integer(d as u64) {
            field.ratio(n, d)
        } else {
            field.from_i64(n)
        }
    })
}

fn matrix(field: Field, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| Matrix::new(field, rows, cols, v.into_iter().map(|x| field.from_i64(x)).collect()).unwrap())
}

fn shape() -> impl Strategy<Value = (usize, usize)> {
    (prop::sample::select(vec![1usize, 2, 3, 4, 6]), 1usize..=3)
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn field_axioms((f, a, b, c) in field_strategy().prop_flat_map(|f| (Just(f), scalar(f), scalar(f), scalar(f)))) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(f.parse(&a.to_canonical_string()).unwrap(), a);
    }

    #[test]
    fn rational_arithmetic_matches_bigrational(n1 in any::<i64>(), d1 in 1i64.., n2 in any::<i64>(), d2 in 1i64..) {
        let q = Field::Rational;
        let (a, b) = (q.ratio(n1, d1), q.ratio(n2, d2));
        let (ba, bb) = (a.as_rational().unwrap(), b.as_rational().unwrap());
        prop_assert_eq!((&a + &b).as_rational().unwrap(), &ba + &bb);
        prop_assert_eq!((&a * &b).as_rational().unwrap(), &ba * &bb);
        prop_assert_eq!((&a - &b).as_rational().unwrap(), &ba - &bb);
        if !b.is_zero() {
            prop_assert_eq!((&a / &b).as_rational().unwrap(), &ba / &bb);
        }
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn rank_nullity_and_kernels(a in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| matrix(Field::Rational, r, c))) {
        let (r, c) = a.shape();
        let kernel = a.kernel_basis();
        prop_assert_eq!(a.rank() + kernel.len(), c);
        for k in &kernel {
            prop_assert!(a.mul_vec(k).unwrap().iter().all(Scalar::is_zero));
        }
        let (rr, _) = a.rref();
        prop_assert_eq!(rr.rref().0, rr);
        if r == c {
            match a.inverse() {
                Some(inv) => prop_assert!((&a * &inv).is_identity()),
                None => prop_assert!(a.rank() < r),
            }
        }
    }

    #[test]
    fn span_bases_are_canonical(seed in any::<u64>()) {
        let mut g = Generator::new(seed, Field::Rational);
        let m = g.matrix(3, 4);
        let vs: Vec<_> = (0..3).map(|i| m.row(i).to_vec()).collect();
        let b1 = subspace::span_basis(Field::Rational, 4, &vs).unwrap();
        let p = g.invertible(3);
        let mixed: Vec<_> = (0..3).map(|i| {
            (0..4).map(|j| (0..3).fold(Field::Rational.zero(), |acc, k| &acc + &(p.get(i, k) * &vs[k][j]))).collect()
        }).collect();
        prop_assert_eq!(subspace::span_basis(Field::Rational, 4, &mixed).unwrap(), b1);
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn generated_digroups_satisfy_axioms(seed in any::<u64>(), (order, halo) in shape()) {
        let mut g = Generator::new(seed, Field::Rational);
        let d = g.digroup(order, halo).unwrap();
        let report = d.check_axioms();
        prop_assert!(report.all_passed(), "{}", report);
        for x in d.elements() {
            let s = d.sharp(x).unwrap();
            prop_assert!(d.is_bar_unit(d.vdash(x, s).unwrap()));
            prop_assert!(d.is_bar_unit(d.vdash(s, x).unwrap()));
            for e in d.halo() {
                let (l, r) = d.inverses_at(x, e).unwrap();
                prop_assert_eq!(d.dashv(l, x).unwrap(), e);
                prop_assert_eq!(d.vdash(x, r).unwrap(), e);
            }
        }
        let a = build_enveloping_algebra(&d, Field::Rational);
        prop_assert_eq!(a.dim(), order * (1 + halo));
        prop_assert!(check_relations(&a, &d).all_passed());
    }

    #[test]
    fn representation_round_trips(seed in any::<u64>(), (order, halo) in shape(), dim in 0usize..=3) {
        let mut g = Generator::new(seed, Field::Rational);
        let d = g.digroup(order, halo).unwrap();
        let r = g.representation(&d, dim).unwrap();
        prop_assert!(r.check_representation().all_passed());

        let sl = r.to_semilinear().unwrap();
        prop_assert!(sl.check().all_passed());
        prop_assert_eq!(&Representation::from_semilinear(&sl).unwrap(), &r);

        let alg = Arc::new(build_enveloping_algebra(&d, Field::Rational));
        let m = rep_to_module(&r, &alg).unwrap();
        prop_assert!(m.check().all_passed());
        prop_assert_eq!(&module_to_rep(&m, d.clone()).unwrap(), &r);

        let rho = r.rho_group_form().unwrap();
        let l = r.lambda_factorization().unwrap();
        for x in d.elements() {
            prop_assert_eq!(r.rho(x), &rho[x.g]);
            prop_assert_eq!(r.lambda(x), &(&l[x.alpha] * &rho[x.g]));
        }

        let text = format::representation_to_json(&r).unwrap();
        prop_assert_eq!(&format::representation_from_json(&text, LoadOptions::default()).unwrap(), &r);
    }

    #[test]
    fn semilinear_round_trip(seed in any::<u64>(), (order, halo) in shape(), dim in 0usize..=3) {
        let mut g = Generator::new(seed, Field::Rational);
        let d = g.digroup(order, halo).unwrap();
        let s = g.semilinear(&d, dim).unwrap();
        let r = Representation::from_semilinear(&s).unwrap();
        prop_assert!(r.is_valid());
        prop_assert_eq!(r.to_semilinear().unwrap(), s);
    }

    #[test]
    fn averaged_sections_are_equivariant(seed in any::<u64>(), (order, halo) in shape()) {
        let mut g = Generator::new(seed, Field::Rational);
        let p = g.pair(order, halo, 3).unwrap();
        let ses = g.extension(&p.quotient, &p.sub).unwrap();
        let s = average_section(&ses).unwrap();
        prop_assert!((ses.pi() * &s).is_identity() || p.quotient.dim() == 0);
        for x in ses.mid().digroup().elements() {
            prop_assert_eq!(&(ses.mid().rho(x) * &s), &(&s * ses.quotient().rho(x)));
        }
        let (_, report) = block_decompose(&ses, &s).unwrap();
        prop_assert!(report.all_passed(), "{}", report);
    }

    #[test]
    fn cocycle_calculus(seed in any::<u64>(), (order, halo) in shape()) {
        let mut g = Generator::new(seed, Field::Rational);
        let p = g.pair(order, halo, 3).unwrap();
        let (q, w) = (&p.quotient, &p.sub);
        let z = cocycle_space(q, w).unwrap();
        for b in &z {
            prop_assert!(b.is_cocycle(q, w).unwrap());
        }

        // Coboundaries of intertwiners are cocycles and are recognised as such.
        let homs = hom_rho(q, w).unwrap();
        let mut t = Matrix::zeros(Field::Rational, w.dim(), q.dim());
        for h in &homs {
            let c = Field::Rational.from_i64(g.rng().random_range(-2..=2));
            t = &t + &h.scale(&c);
        }
        let dt = coboundary(&t, q, w).unwrap();
        prop_assert!(dt.is_cocycle(q, w).unwrap());
        let back = solve_coboundary(&dt, q, w).unwrap().expect("δt is a coboundary");
        prop_assert_eq!(coboundary(&back, q, w).unwrap(), dt);

        // A random cocycle survives extension, change of basis and re-extraction.
        let theta = g.combination(&z, q, w);
        let ses = extension_from_cocycle(&theta, q, w).unwrap();
        let pm = g.invertible(ses.mid().dim());
        let scrambled = scramble(&ses, &pm).unwrap();
        let extracted = cocycle_of_extension(&scrambled).unwrap();
        prop_assert!(same_class(&extracted, &theta, q, w).unwrap());
        prop_assert_eq!(is_split(&scrambled).unwrap().split, solve_coboundary(&theta, q, w).unwrap().is_some());

        // Moving the section by ιt moves the cocycle by δt.
        prop_assert!(change_of_splitting_check(&scrambled, &t).unwrap());

        // Different starting sections give cohomologous cocycles.
        let s0 = ext::linear_section(&scrambled).unwrap();
        let shift = &(scrambled.iota() * &g.matrix(w.dim(), q.dim()));
        let s1 = &s0 + shift;
        let (a, _) = block_decompose(&scrambled, &average_section_from(&scrambled, &s0).unwrap()).unwrap();
        let (b, _) = block_decompose(&scrambled, &average_section_from(&scrambled, &s1).unwrap()).unwrap();
        prop_assert!(same_class(&a, &b, q, w).unwrap());
    }

    #[test]
    fn adjunction(seed in any::<u64>(), (order, halo) in shape(), (md, nd) in (0usize..=2, 0usize..=3)) {
        let mut g = Generator::new(seed, Field::Rational);
        let d = g.digroup(order, halo).unwrap();
        let m = BandModule::underlying(&g.semilinear(&d, md).unwrap());
        let n = g.semilinear(&d, nd).unwrap();
        let report = verify_adjunction(&m, &n).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
    }
}

#[test]
fn sharp_of_worked_example() {
    // C₂ acts trivially and s = s⁻¹.
    let d = digroup_core::example::worked_digroup();
    for x in d.elements() {
        assert_eq!(d.sharp(x).unwrap(), Element::new(x.g, x.alpha));
    }
}
