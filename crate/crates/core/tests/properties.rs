use std::sync::{Arc, OnceLock};

use asg_core::combinatorics::catalan;
use asg_core::field::GaloisField;
use asg_core::minors::{act, act_in, MinorCombination};
use asg_core::poly::{Monomial, Polynomial};
use asg_core::symmetric::{doset_pairs, enumerate_symmetric, Matrix, SymMatrix, DEFAULT_BUDGET};
use asg_core::{LinearCode, Variant};
use proptest::prelude::*;

const Q_SMALL: [u64; 3] = [2, 3, 4];

fn code(ell: usize, q: u64) -> &'static LinearCode {
    static CODES: OnceLock<Vec<((usize, u64), LinearCode)>> = OnceLock::new();
    let codes = CODES.get_or_init(|| {
        let mut v = Vec::new();
        for ell in [1usize, 2] {
            for q in [2u64, 3, 4, 5] {
                let f = Arc::new(GaloisField::from_order(q).unwrap());
                v.push(((ell, q), LinearCode::build(ell, f, Variant::Symplectic, DEFAULT_BUDGET).unwrap()));
            }
        }
        v
    });
    &codes.iter().find(|(k, _)| *k == (ell, q)).expect("code prebuilt").1
}

fn combination(code: &LinearCode, coeffs: &[u32]) -> MinorCombination {
    let q = code.field().order();
    let terms = doset_pairs(code.ell()).into_iter().zip(coeffs.iter().map(|c| c % q));
    MinorCombination::from_terms(code.field().clone(), code.ell(), terms).unwrap()
}

fn matrix(ell: usize, q: u32, entries: &[u32]) -> Matrix {
    let rows: Vec<Vec<u32>> = (0..ell).map(|i| (0..ell).map(|j| entries[i * ell + j] % q).collect()).collect();
    Matrix::from_rows(&rows).unwrap()
}

fn sym(ell: usize, q: u32, entries: &[u32]) -> SymMatrix {
    let len = ell * (ell + 1) / 2;
    SymMatrix::from_upper(ell, entries[..len].iter().map(|x| x % q).collect()).unwrap()
}

fn invertible(ell: usize, f: &GaloisField, entries: &[u32]) -> Option<Matrix> {
    let m = matrix(ell, f.order(), entries);
    (m.det(f) != 0).then_some(m)
}

fn values(f: &GaloisField, ell: usize, p: &Polynomial) -> Vec<u32> {
    enumerate_symmetric(ell, f, DEFAULT_BUDGET).unwrap().map(|m| p.evaluate(&m, f)).collect()
}

fn arb_poly(ell: usize) -> impl Strategy<Value = Vec<(Vec<u32>, u32)>> {
    prop::collection::vec((prop::collection::vec(0u32..6, ell * ell), 0u32..64), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_idempotent_and_value_preserving(
        ell in 1usize..=2,
        qi in 0usize..3,
        terms in arb_poly(2),
    ) {
        let f = GaloisField::from_order(Q_SMALL[qi]).unwrap();
        let mut p = Polynomial::zero(ell);
        for (exps, c) in terms {
            let m = Monomial::from_exponents(ell, exps[..ell * ell].to_vec()).unwrap();
            p.add_term(m, c % f.order(), &f);
        }
        let nf = p.normal_form(&f);
        prop_assert_eq!(nf.normal_form(&f), nf.clone());
        prop_assert_eq!(values(&f, ell, &nf), values(&f, ell, &p));
    }

    #[test]
    fn action_composes(
        qi in 0usize..4,
        coeffs in prop::collection::vec(any::<u32>(), 5),
        a1 in prop::collection::vec(any::<u32>(), 4),
        a2 in prop::collection::vec(any::<u32>(), 4),
        s1 in prop::collection::vec(any::<u32>(), 3),
        s2 in prop::collection::vec(any::<u32>(), 3),
    ) {
        let q = [2u64, 3, 4, 5][qi];
        let c = code(2, q);
        let f = &**c.field();
        let (Some(a1), Some(a2)) = (invertible(2, f, &a1), invertible(2, f, &a2)) else {
            return Err(TestCaseError::reject("singular"));
        };
        let (s1, s2) = (sym(2, f.order(), &s1), sym(2, f.order(), &s2));
        let g = combination(c, &coeffs);
        let step = act_in(c, &act_in(c, &g, &a1, &s1).unwrap(), &a2, &s2).unwrap();
        let a = a2.mul(&a1, f).unwrap();
        let s = s2.congruence(&a1, &s1, f).unwrap();
        let direct = act_in(c, &g, &a, &s).unwrap();
        prop_assert_eq!(step, direct);
    }

    #[test]
    fn action_preserves_weight_and_grade(
        qi in 0usize..4,
        coeffs in prop::collection::vec(any::<u32>(), 5),
        a in prop::collection::vec(any::<u32>(), 4),
        s in prop::collection::vec(any::<u32>(), 3),
        t in 0usize..=2,
    ) {
        let q = [2u64, 3, 4, 5][qi];
        let c = code(2, q);
        let f = &**c.field();
        let Some(a) = invertible(2, f, &a) else {
            return Err(TestCaseError::reject("singular"));
        };
        let s = sym(2, f.order(), &s);
        let g = combination(c, &coeffs);
        let moved = act_in(c, &g, &a, &s).unwrap();
        prop_assert_eq!(moved.weight(DEFAULT_BUDGET).unwrap(), g.weight(DEFAULT_BUDGET).unwrap());

        let homogeneous = g.graded_part(t);
        let moved = act_in(c, &homogeneous, &a, &SymMatrix::zero(2)).unwrap();
        prop_assert_eq!(moved.graded_part(t), moved.clone());
        prop_assert_eq!(moved.is_zero(), homogeneous.is_zero());
    }

    #[test]
    fn random_affine_maps_are_automorphisms(
        qi in 0usize..4,
        a in prop::collection::vec(any::<u32>(), 4),
        s in prop::collection::vec(any::<u32>(), 3),
    ) {
        let q = [2u64, 3, 4, 5][qi];
        let c = code(2, q);
        let f = &**c.field();
        let Some(a) = invertible(2, f, &a) else {
            return Err(TestCaseError::reject("singular"));
        };
        prop_assert!(c.automorphism_check(&a, &sym(2, f.order(), &s)).unwrap());
    }
}

#[test]
fn act_builds_its_own_code() {
    let f = Arc::new(GaloisField::from_order(3).unwrap());
    let g = MinorCombination::minor(f.clone(), 2, &[1, 2], &[1, 2], 1).unwrap();
    let a = Matrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
    let via_code = act_in(code(2, 3), &g, &a, &SymMatrix::identity(2)).unwrap();
    assert_eq!(act(&g, &a, &SymMatrix::identity(2), DEFAULT_BUDGET).unwrap(), via_code);
}

#[test]
fn dimension_is_catalan() {
    let cases: &[(usize, &[u64])] = &[(1, &[2, 3, 4, 5]), (2, &[2, 3, 4, 5]), (3, &[2, 3, 4, 5]), (4, &[2, 3])];
    for &(ell, qs) in cases {
        for &q in qs {
            let f = Arc::new(GaloisField::from_order(q).unwrap());
            let c = LinearCode::build(ell, f, Variant::Symplectic, DEFAULT_BUDGET).unwrap();
            let expected = catalan(ell as u64 + 1) as usize;
            assert_eq!(c.rows(), expected, "ell={ell} q={q}");
            assert_eq!(c.dimension(), expected, "ell={ell} q={q}");
        }
    }
}

#[test]
fn evaluation_is_injective() {
    for ell in 1..=3usize {
        for q in [2u64, 3, 4, 5] {
            let f = Arc::new(GaloisField::from_order(q).unwrap());
            let c = LinearCode::build(ell, f, Variant::Symplectic, DEFAULT_BUDGET).unwrap();
            assert_eq!(c.dimension(), c.rows(), "ell={ell} q={q}");
        }
    }
}

#[test]
fn encode_decode_roundtrip() {
    let c = code(2, 5);
    let g = MinorCombination::parse("-|-|3\n1|2|4\n1,2|1,2|1", c.field().clone(), 2).unwrap();
    assert_eq!(c.decode(&c.encode(&g).unwrap()).unwrap(), g);
}
