//! Values stated in the source text, checked one by one.

use matcoh::chromatic::{chromatic_polynomial, ChromaticComplex};
use matcoh::cohomology::{BigradedComplex, CohomologyTable};
use matcoh::exactlin::{exterior_power, FgaClass, Int, IntMatrix, PresentedModule};
use matcoh::graph::Graph;
use matcoh::matroid::{pappus_lines, Matroid};
use matcoh::poly::Poly;
use matcoh::quasirep::QuasiRep;
use matcoh::subset::Subset;
use matcoh::verify;

fn table(q: &QuasiRep) -> CohomologyTable {
    BigradedComplex::new(q, None).unwrap().cohomology_table().unwrap()
}

fn nonzero(t: &CohomologyTable) -> Vec<(usize, usize, String)> {
    t.nonzero().into_iter().map(|(i, j, c)| (i, j, c.to_string())).collect()
}

fn cyc(d: &[i64]) -> FgaClass {
    FgaClass::from_cyclic(0, &d.iter().map(|&x| Int::from(x)).collect::<Vec<_>>())
}

#[test]
fn z_mod_a_plus_z() {
    for a in 2..6 {
        let p = PresentedModule::new(2, IntMatrix::from_i64(&[&[a], &[0]]));
        assert_eq!(p.class(), FgaClass::from_cyclic(1, &[Int::from(a)]));
        assert_eq!(exterior_power(&p, 2).class(), cyc(&[a]));
    }
}

#[test]
fn small_uniform_ranks() {
    let u = Matroid::uniform(1, 2).unwrap();
    assert_eq!((u.rank(Subset(1)), u.rank(Subset(2)), u.rank(Subset(3))), (1, 1, 1));
    let u = Matroid::uniform(2, 3).unwrap();
    for pair in [3, 5, 6] {
        assert_eq!(u.rank(Subset(pair)), 2);
    }
    assert_eq!(u.total_rank(), 2);
}

#[test]
fn pappus() {
    let p = Matroid::pappus();
    assert!(p.validate_axioms().is_ok());
    let mut want: Vec<Subset> = ["123", "148", "159", "247", "269", "357", "368", "456", "789"]
        .iter()
        .map(|s| Subset::from_elements(&s.bytes().map(|b| (b - b'1') as usize).collect::<Vec<_>>()))
        .collect();
    want.sort();
    let mut got = p.circuit_hyperplanes();
    got.sort();
    assert_eq!(got, want);
    assert_eq!(pappus_lines().len(), 9);
    let np = p.relax(Subset::from_elements(&[3, 4, 5])).unwrap();
    assert!(np.validate_axioms().is_ok());
    assert!(np.same_ranks(&Matroid::non_pappus()));
    let q = QuasiRep::free_default(&Matroid::non_pappus());
    assert_eq!(q.ambient().gens, 3);
    assert!(q.validate().is_ok());
}

#[test]
fn characteristic_polynomial_items() {
    assert_eq!(Matroid::uniform(0, 0).unwrap().char_poly(), Poly::constant(1));
    let a = IntMatrix::from_i64(&[&[1, 0, 1], &[0, 0, 1]]);
    assert!(Matroid::from_matrix(&a).unwrap().char_poly().is_zero());
    for n in 1..5 {
        let u = Matroid::uniform(n, n).unwrap();
        assert!((0..n).all(|e| u.is_coloop(e)));
    }
}

#[test]
fn quasirep_constructions() {
    let m = Matroid::uniform(2, 2).unwrap();
    let q = QuasiRep::canonical_from_matrix(&m, &IntMatrix::identity(2)).unwrap();
    assert_eq!(q.rho(Subset(1)), &IntMatrix::from_i64(&[&[1], &[0]]));
    assert_eq!(q.rho(Subset(2)), &IntMatrix::from_i64(&[&[0], &[1]]));
    let q = QuasiRep::diagonal_u22(2, 3).unwrap();
    assert_eq!(q.rho(Subset(1)), &IntMatrix::from_i64(&[&[2], &[0]]));
    assert_eq!(q.rho(Subset(2)), &IntMatrix::from_i64(&[&[0], &[3]]));
    // K3 from incidence differences equals the graphic construction
    let k3 = Graph::complete(3);
    let inc = IntMatrix::from_i64(&[&[1, 1, 0], &[-1, 0, 1], &[0, -1, -1]]);
    let canon = QuasiRep::canonical_from_matrix(&Matroid::from_graph(&k3), &inc).unwrap();
    assert_eq!(table(&canon), {
        let mut t = table(&QuasiRep::graphic(&k3).unwrap());
        t.quasirep = canon.descriptor().to_string();
        t
    });
}

#[test]
fn relaxed_quasirep() {
    let k4 = Matroid::from_graph(&Graph::complete(4));
    let tri = Subset::from_elements(&[0, 1, 3]);
    let q = QuasiRep::free_default(&k4);
    let r = q.relax(tri).unwrap();
    assert_eq!(r.submodule_rank(r.rho(tri)), 3);
    for f in k4.flats() {
        if f != tri && r.matroid().is_flat(f) {
            assert_eq!(r.rho(f), q.rho(f));
        }
    }
}

#[test]
fn chain_groups_of_torsion_example() {
    let c = BigradedComplex::new(&QuasiRep::diagonal_u22(4, 6).unwrap(), None).unwrap();
    assert_eq!(c.chain_class(1, 1), FgaClass::from_cyclic(2, &[Int::from(4), Int::from(6)]));
    let q = QuasiRep::free_default(&Matroid::pappus());
    let c = BigradedComplex::new(&q, None).unwrap();
    for i in 0..=9 {
        assert_eq!(c.chain_class(i, 0), FgaClass::free(matcoh::exactlin::binomial(9, i)));
    }
}

#[test]
fn uniform_tables() {
    for n in 1..=5 {
        assert!(table(&QuasiRep::canonical_uniform(0, n).unwrap()).is_zero());
        assert_eq!(nonzero(&table(&QuasiRep::canonical_uniform(1, n).unwrap())), vec![(0, 1, "Z".into())]);
        assert_eq!(nonzero(&table(&QuasiRep::canonical_uniform(n, n).unwrap())), vec![(0, n, "Z".into())]);
    }
    assert_eq!(nonzero(&table(&QuasiRep::canonical_uniform(0, 0).unwrap())), vec![(0, 0, "Z".into())]);
    assert_eq!(
        nonzero(&table(&QuasiRep::canonical_uniform(2, 3).unwrap())),
        vec![(0, 2, "Z".into()), (1, 1, "Z".into())]
    );
}

#[test]
fn torsion_tables() {
    let t = table(&QuasiRep::diagonal_u22(2, 3).unwrap());
    assert_eq!(nonzero(&t), vec![(0, 2, "Z".into()), (1, 1, "Z/6".into())]);
    for (a, b) in [(4, 6), (5, 5), (6, 10)] {
        let t = table(&QuasiRep::diagonal_u22(a, b).unwrap());
        assert_eq!(t.get(1, 1), cyc(&[a, b]));
        assert_eq!(t.get(0, 2), FgaClass::free(1));
        let g = num_integer::gcd(a, b);
        assert_eq!(t.get(1, 2), cyc(&[g]));
    }
}

#[test]
fn exact_sequences_for_uniform() {
    for n in 1..=4 {
        let q = QuasiRep::canonical_uniform(n, n + 1).unwrap();
        for e in 0..=n {
            assert!(verify::verify_les_ranks(&q, e).unwrap().pass);
            assert!(verify::verify_ses(&q, e).unwrap().pass);
        }
        let u = QuasiRep::canonical_uniform(n, n).unwrap();
        for e in 0..n {
            assert!(verify::verify_coloop(&u, e).unwrap().pass);
        }
    }
}

#[test]
fn loops_kill_cohomology() {
    let a = IntMatrix::from_i64(&[&[1, 0, 2], &[0, 0, 1]]);
    let m = Matroid::from_matrix(&a).unwrap();
    assert!(table(&QuasiRep::canonical_from_matrix(&m, &a).unwrap()).is_zero());
}

#[test]
fn one_edge_chromatic_euler() {
    let p2 = Graph::path(2);
    let want = Poly::new(vec![0, 1, 1]);
    assert_eq!(chromatic_polynomial(&p2).shift(1), want);
    assert_eq!(ChromaticComplex::new(&p2).graded_euler(), want);
}
