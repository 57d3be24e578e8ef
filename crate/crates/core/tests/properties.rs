use matcoh::cohomology::{BigradedComplex, CohomologyTable};
use matcoh::exactlin::snf::invariant_factors;
use matcoh::exactlin::{FgaClass, Int, IntMatrix};
use matcoh::verify::{self, Generator};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-6i64..=6, r * c)
            .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| Int::from(v[i * c + j])))
    })
}

fn class() -> impl Strategy<Value = FgaClass> {
    (0usize..3, proptest::collection::vec(0i64..12, 0..4))
        .prop_map(|(f, t)| FgaClass::from_cyclic(f, &t.into_iter().map(Int::from).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn invariant_factors_form_a_chain(a in small_matrix()) {
        let d = invariant_factors(&a);
        for w in d.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        if a.rows() == a.cols() {
            let prod = d.iter().fold(Int::ONE, |acc, x| &acc * x);
            let det = if d.len() < a.rows() { Int::ZERO } else { prod };
            prop_assert_eq!(det, a.determinant().abs());
        }
    }

    #[test]
    fn class_algebra(a in class(), b in class()) {
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
        prop_assert_eq!(a.tensor(&b), b.tensor(&a));
        prop_assert!(a.is_canonical());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<FgaClass>(&json).unwrap(), a);
    }

    #[test]
    fn random_complexes(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        let q = g.quasirep(5);
        let c = BigradedComplex::new_raw(&q, None);
        prop_assert!(c.check().is_ok());
        let t = c.cohomology_table().unwrap();
        let want = q.matroid().char_poly().shift(1);
        prop_assert_eq!(&t.euler, &want);
        prop_assert_eq!(t.euler_from_cells(), want);
        let text = t.to_json();
        prop_assert_eq!(CohomologyTable::from_json(&text).unwrap().to_json(), text);
        // dimensions over Q are the free ranks
        let dq = c.dimension_table(matcoh::exactlin::Field::Rational).unwrap();
        for cell in &t.cells {
            prop_assert_eq!(dq.rank(cell.i, cell.j), cell.free);
        }
    }

    #[test]
    fn labels_do_not_matter(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut g = Generator::new(seed);
        let q = g.quasirep(5);
        let mut perm: Vec<usize> = (0..q.matroid().size()).collect();
        perm.shuffle(g.rng());
        prop_assert!(verify::verify_permutation(&q, &perm).unwrap().pass);
    }

    #[test]
    fn deletion_contraction_sequences(seed in any::<u64>()) {
        let mut g = Generator::new(seed);
        let q = g.quasirep(5);
        for e in 0..q.matroid().size() {
            if q.matroid().is_coloop(e) {
                continue;
            }
            let ses = verify::verify_ses(&q, e).unwrap();
            prop_assert!(ses.pass, "{:?}", ses);
            prop_assert!(verify::verify_les_ranks(&q, e).unwrap().pass);
        }
    }
}
