mod common;

use qpoisson::algebra::Element;
use qpoisson::calculus::{Calculus, Side};
use qpoisson::duality::eg_bracket;
use qpoisson::koszul::*;
use qpoisson::linalg::{SparseVec, Subspace};
use qpoisson::poisson::*;
use qpoisson::random::{self, rng};
use qpoisson::scalar::q;

fn binom(a: usize, k: usize) -> usize {
    if a < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (a - i) / (i + 1))
}

fn generic_two() -> QuadraticPresentation {
    let names = vec!["a".to_string(), "b".to_string()];
    QuadraticPresentation::new(
        names,
        vec![0, 0],
        vec![vec![(0, 0, q(1)), (0, 1, q(2)), (1, 0, q(3)), (1, 1, q(5))], vec![(0, 0, q(7)), (0, 1, q(-1)), (1, 0, q(4)), (1, 1, q(2))]],
    )
    .unwrap()
}

fn span(p: &QuadraticPresentation) -> Subspace {
    let d = p.dim_v();
    Subspace::from_vectors(p.relations().into_iter().map(|r| r.into_iter().map(|(a, b, c)| (a * d + b, c)).collect::<SparseVec>()))
}

fn xyz() -> QuadraticBivector {
    eg_bracket(&Calculus::get(3, Side::Primal).poly("x1*x2*x3").unwrap()).unwrap()
}

#[test]
fn dual_coalgebra_of_polynomials_is_exterior() {
    for n in 1..=3 {
        let p = QuadraticPresentation::polynomial(n).unwrap();
        let us = dual_coalgebra(&p, 4).unwrap();
        for (m, u) in us.iter().enumerate() {
            assert_eq!(u.dim(), binom(n, m), "n={n} m={m}");
        }
    }
    let p = QuadraticPresentation::polynomial(2).unwrap();
    assert_eq!(dual_coalgebra_component(&p, 0).unwrap().dim(), 1);
    assert_eq!(dual_coalgebra_component(&p, 1).unwrap().dim(), 2);
    assert_eq!(dual_coalgebra_component(&p, 3).unwrap().dim(), 0);
}

#[test]
fn dual_coalgebra_of_exterior_is_symmetric() {
    let p = QuadraticPresentation::exterior(2).unwrap();
    let us = dual_coalgebra(&p, 4).unwrap();
    for (m, u) in us.iter().enumerate() {
        assert_eq!(u.dim(), m + 1);
    }
}

#[test]
fn graded_pieces() {
    let p = QuadraticPresentation::polynomial(3).unwrap();
    let a = AlgebraComponents::new(&p, 5);
    for j in 0..=5 {
        assert_eq!(a.dim(j), binom(j + 2, 2));
    }
    let e = AlgebraComponents::new(&QuadraticPresentation::exterior(3).unwrap(), 5);
    assert_eq!(e.dims(), &[1, 3, 3, 1, 0, 0]);
}

#[test]
fn koszul_dual_presentations() {
    for n in 1..=3 {
        let p = QuadraticPresentation::polynomial(n).unwrap();
        let d = p.koszul_dual();
        assert_eq!(d.dim_r(), n * n - p.dim_r());
        let e = QuadraticPresentation::exterior(n).unwrap();
        let (sd, se) = (span(&d), span(&e));
        assert_eq!(sd.dim(), se.dim());
        assert!(se.basis().all(|(_, v)| sd.contains(v)));
        let dd = d.koszul_dual();
        let (s0, s2) = (span(&p), span(&dd));
        assert_eq!(s0.dim(), s2.dim());
        assert!(s0.basis().all(|(_, v)| s2.contains(v)));
        assert_eq!(d.degrees(), vec![0; n].as_slice());
    }
}

#[test]
fn bad_presentations_are_rejected() {
    assert!(QuadraticPresentation::new(vec!["a".into()], vec![0], vec![vec![(0, 1, q(1))]]).is_err());
    assert!(QuadraticPresentation::new(vec!["a".into()], vec![], vec![]).is_err());
    assert!(QuadraticPresentation::commutative(2, &[vec![(2, 0, q(1))]]).is_err());
}

#[test]
fn polynomial_rings_are_koszul() {
    for (n, w) in [(1, 8), (2, 8), (3, 6)] {
        let p = QuadraticPresentation::polynomial(n).unwrap();
        let r = koszul_acyclicity(&p, w).unwrap();
        assert!(r.is_koszul(), "n={n}: {:?}", r.failing);
        for s in &r.slices {
            assert!(s.squares_to_zero());
            // homology recomputed with dense elimination
            let ranks: Vec<usize> = s.differentials.iter().map(common::dense_rank_of).collect();
            for j in 0..=s.weight {
                let out = if j < s.weight { ranks[j] } else { 0 };
                let inn = if j > 0 { ranks[j - 1] } else { 0 };
                assert_eq!(s.homology[j], s.dims[j] - out - inn);
            }
            // Euler characteristic of an exact slice
            if s.weight > 0 {
                let chi: i64 = s.dims.iter().enumerate().map(|(j, d)| if j % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum();
                assert_eq!(chi, 0);
            }
        }
    }
}

#[test]
fn generic_relations_are_not_koszul() {
    let r = koszul_acyclicity(&generic_two(), 5).unwrap();
    assert!(!r.is_koszul());
    assert_eq!(r.failing.first(), Some(&4));
    assert_eq!(r.slices[4].homology, vec![0, 0, 4, 0, 0]);
}

#[test]
fn dual_bivector_of_the_diagonal_example() {
    let p = Calculus::get(2, Side::Primal);
    let pi = QuadraticBivector::from_element(2, Side::Primal, p.poly("x1*x2*px1*px2").unwrap()).unwrap();
    let k = Calculus::get(2, Side::Koszul);
    assert_eq!(pi.koszul_dual().body(), &k.poly("xi1*xi2*pxi1*pxi2").unwrap());
    assert_eq!(pi.koszul_dual().koszul_dual(), pi);
}

#[test]
fn relabelling_examples() {
    let p = Calculus::get(2, Side::Primal);
    let k = Calculus::get(2, Side::Koszul);
    assert_eq!(phi(&p.form("x1*dx2").unwrap()).unwrap(), k.dual("pxi1*xistar2").unwrap());
    assert_eq!(psi(&p.poly("x2*px1").unwrap()).unwrap(), k.poly("xi1*pxi2").unwrap());
    assert!(phi(&p.poly("x1").unwrap()).is_err());
    assert!(psi(&p.form("x1").unwrap()).is_err());
}

#[test]
fn maps_are_chain_maps_on_random_elements() {
    let mut r = rng(11);
    let mut instances = vec![xyz()];
    for _ in 0..3 {
        instances.push(random::log_canonical(&mut r, 3).unwrap());
    }
    for pi in &instances {
        let pd = pi.koszul_dual();
        let c = pi.calculus();
        for _ in 0..50 {
            let w = common::some_form(&mut r, &c, 0..=3, 0..=3, 3);
            let lhs = phi(&poisson_boundary(pi, &w).unwrap()).unwrap();
            assert_eq!(lhs, poisson_coboundary_dual(&pd, &phi(&w).unwrap()).unwrap());
            assert_eq!(phi_inverse(&phi(&w).unwrap()).unwrap(), w);
            let x = common::some_polyvector(&mut r, &c, 0..=3, -2..=3, 3);
            let lhs = psi(&poisson_coboundary(pi, &x).unwrap()).unwrap();
            assert_eq!(lhs, poisson_coboundary(&pd, &psi(&x).unwrap()).unwrap());
            assert_eq!(psi_inverse(&psi(&x).unwrap()).unwrap(), x);
        }
    }
}

#[test]
fn psi_reverses_the_bracket() {
    let mut r = rng(2);
    let c = Calculus::get(3, Side::Primal);
    let k = Calculus::get(3, Side::Koszul);
    for _ in 0..30 {
        let a = common::some_polyvector(&mut r, &c, 0..=3, -1..=2, 2);
        let b = common::some_polyvector(&mut r, &c, 0..=3, -1..=2, 2);
        let lhs = psi(&c.schouten(&a, &b).unwrap()).unwrap();
        let rhs: Element = k.schouten(&psi(&a).unwrap(), &psi(&b).unwrap()).unwrap();
        assert_eq!(lhs, rhs.neg());
    }
}

#[test]
fn isomorphism_for_xyz_and_log_canonical() {
    let rep = verify_theorem1(&xyz(), 4).unwrap();
    assert!(rep.holds(), "{:?}", rep.map_failure);
    assert!(rep.slices_checked > 0);
    assert_eq!(rep.low.0.get(0, 0), 1);
    let mut r = rng(4);
    let rep = verify_theorem1(&random::log_canonical(&mut r, 3).unwrap(), 3).unwrap();
    assert!(rep.holds());
}

#[test]
fn isomorphism_requires_jacobi() {
    let c = Calculus::get(3, Side::Primal);
    let bad = QuadraticBivector::from_brackets(3, &[(1, 2, c.poly("x1*x3").unwrap()), (2, 3, c.poly("x1*x2").unwrap())]).unwrap();
    assert!(verify_theorem1(&bad, 2).is_err());
}
