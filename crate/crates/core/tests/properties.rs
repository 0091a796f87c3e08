mod common;

use cdga::linalg::{self, rref};
use cdga::{
    minimal_model, Dga, Element, GeneratorTable, MinimalModel, Monomial, QElement, QMatrix, QuotientAlgebra, Rational,
    Scalar, Subspace,
};
use num_traits::Zero;
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn mixed_table() -> GeneratorTable {
    GeneratorTable::new([("a", 1), ("b", 1), ("c", 2), ("d", 3), ("e", 1), ("f", 2)]).unwrap()
}

/// A homogeneous element of degree `k` from a seed list of (index, coefficient).
fn element_from(table: &GeneratorTable, k: u32, picks: &[(usize, i64)]) -> QElement {
    let monos = table.homogeneous_monomials(k);
    let mut x = Element::zero();
    if monos.is_empty() {
        return x;
    }
    for &(i, c) in picks {
        x.add_term(monos[i % monos.len()].clone(), q(c));
    }
    x
}

fn picks() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..1000, -4i64..=4), 1..5)
}

fn matrix_strategy() -> impl Strategy<Value = QMatrix> {
    (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
            .prop_map(move |rows| QMatrix::from_rows(c, rows.into_iter().map(|row| row.into_iter().map(q).collect()).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn koszul_sign_law(i in 0u32..5, j in 0u32..5, pa in picks(), pb in picks()) {
        let t = mixed_table();
        let a = element_from(&t, i, &pa);
        let b = element_from(&t, j, &pb);
        if !a.is_zero() && !b.is_zero() {
            prop_assert!(t.graded_commutator_check(&a, &b).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn products_are_associative(i in 0u32..3, j in 0u32..3, k in 0u32..3, pa in picks(), pb in picks(), pc in picks()) {
        let t = mixed_table();
        let (a, b, c) = (element_from(&t, i, &pa), element_from(&t, j, &pb), element_from(&t, k, &pc));
        let left = t.multiply(&t.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = t.multiply(&a, &t.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn ideal_membership(
        rels in prop::collection::vec((2u32..4, picks()), 1..3),
        k in 0u32..3,
        px in picks(),
    ) {
        let t = mixed_table();
        let rels: Vec<QElement> = rels.iter().map(|(d, p)| element_from(&t, *d, p)).filter(|r| !r.is_zero()).collect();
        prop_assume!(!rels.is_empty());
        let quotient = QuotientAlgebra::new(t.clone(), &rels, 6).unwrap();
        let x = element_from(&t, k, &px);
        for r in &rels {
            prop_assert!(quotient.normal_form(r).unwrap().is_zero());
            let xr = t.multiply(&x, r).unwrap();
            let rx = t.multiply(r, &x).unwrap();
            if xr.leading_term().is_none_or(|(m, _)| m.degree() <= 6) {
                prop_assert!(quotient.normal_form(&xr).unwrap().is_zero());
                prop_assert!(quotient.normal_form(&rx).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn normal_form_is_linear_and_idempotent(
        rels in prop::collection::vec((2u32..4, picks()), 1..3),
        k in 1u32..5,
        px in picks(),
        py in picks(),
        c in -3i64..=3,
    ) {
        let t = mixed_table();
        let rels: Vec<QElement> = rels.iter().map(|(d, p)| element_from(&t, *d, p)).filter(|r| !r.is_zero()).collect();
        prop_assume!(!rels.is_empty());
        let quotient = QuotientAlgebra::new(t.clone(), &rels, 5).unwrap();
        let (x, y) = (element_from(&t, k, &px), element_from(&t, k, &py));
        let nx = quotient.normal_form(&x).unwrap();
        prop_assert_eq!(quotient.normal_form(&nx).unwrap(), nx.clone());
        let mut combo = x.clone();
        combo.add_scaled(&y, &q(c));
        let mut expected = nx;
        expected.add_scaled(&quotient.normal_form(&y).unwrap(), &q(c));
        prop_assert_eq!(quotient.normal_form(&combo).unwrap(), expected);
    }

    #[test]
    fn quotient_dimensions_match_macaulay_oracle(
        rels in prop::collection::vec((1u32..4, picks()), 1..4),
    ) {
        let t = mixed_table();
        let rels: Vec<QElement> = rels.iter().map(|(d, p)| element_from(&t, *d, p)).filter(|r| !r.is_zero()).collect();
        prop_assume!(!rels.is_empty());
        let bound = 5;
        let quotient = QuotientAlgebra::new(t.clone(), &rels, bound).unwrap();
        for k in 0..=bound {
            prop_assert_eq!(quotient.dim(k).unwrap(), macaulay_dim(&t, &rels, k), "degree {}", k);
        }
    }

    #[test]
    fn rref_is_idempotent(m in matrix_strategy()) {
        let (r, p) = rref(&m);
        let (r2, p2) = rref(&r);
        prop_assert_eq!(r, r2);
        prop_assert_eq!(p, p2);
    }

    #[test]
    fn rank_nullity(m in matrix_strategy()) {
        prop_assert_eq!(linalg::kernel(&m).dim() + m.rank(), m.cols());
        let k = linalg::kernel(&m);
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_is_exact(m in matrix_strategy(), seed in prop::collection::vec(-3i64..=3, 6)) {
        let x: Vec<Rational> = seed.iter().take(m.cols()).map(|&v| q(v)).collect();
        let b = m.mul_vec(&x).unwrap();
        let sol = linalg::solve(&m, &b).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
    }

    #[test]
    fn quotient_basis_completes(m in matrix_strategy(), n in matrix_strategy()) {
        let big = linalg::image(&m);
        let small_vectors: Vec<Vec<Rational>> = n
            .row_vectors()
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![q(0); big.ambient_dim()];
                for (c, row) in coeffs.iter().zip(big.basis_vectors()) {
                    for (vi, ri) in v.iter_mut().zip(row) {
                        *vi = vi.clone() + c.clone() * ri;
                    }
                }
                v
            })
            .collect();
        let small = Subspace::span(big.ambient_dim(), small_vectors);
        let extra = linalg::quotient_basis(&big, &small).unwrap();
        prop_assert_eq!(extra.len(), big.dim() - small.dim());
        let mut all = small.basis_vectors();
        all.extend(extra);
        prop_assert_eq!(Subspace::span(big.ambient_dim(), all), big);
    }
}

/// dim A_k = dim of free degree-k part minus the rank of all monomial multiples of relations.
fn macaulay_dim(t: &GeneratorTable, rels: &[QElement], k: u32) -> usize {
    let monos = t.homogeneous_monomials(k);
    let index: std::collections::HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for r in rels {
        let d = r.homogeneous_degree().unwrap();
        if d > k {
            continue;
        }
        for m in t.homogeneous_monomials(k - d) {
            let p = t.multiply(&Element::from_monomial(m), r).unwrap();
            rows.push(p.to_vector(&index, monos.len()).unwrap());
        }
    }
    monos.len() - QMatrix::from_rows(monos.len(), rows).rank()
}

/// A random free DGA: each new generator's differential is a random cocycle of
/// the algebra built so far, so d² = 0 holds by construction.
fn random_dga(degrees: &[u32], seeds: &[Vec<(usize, i64)>], bound: u32) -> Dga<Rational> {
    let mut names: Vec<(String, u32)> = Vec::new();
    let mut diffs: Vec<QElement> = Vec::new();
    for (i, (&deg, seed)) in degrees.iter().zip(seeds).enumerate() {
        let table = GeneratorTable::new(names.clone()).unwrap();
        let current = Dga::free(table.clone(), diffs.clone(), bound).unwrap();
        let mut d = Element::zero();
        if deg < bound && !seed.is_empty() && seed[0].1 != 0 {
            let cocycles = current.cocycles(deg + 1).unwrap().basis_vectors();
            if !cocycles.is_empty() {
                for &(j, c) in seed {
                    let v = &cocycles[j % cocycles.len()];
                    d.add_scaled(&current.algebra().from_coordinates(deg + 1, v), &q(c));
                }
            }
        }
        names.push((format!("g{i}"), deg));
        let n = names.len();
        diffs = diffs.into_iter().map(|x| x.resized(n).unwrap()).collect();
        diffs.push(d.resized(n).unwrap());
    }
    Dga::free(GeneratorTable::new(names).unwrap(), diffs, bound).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn differential_squares_to_zero(
        degrees in prop::collection::vec(1u32..4, 2..6),
        seeds in prop::collection::vec(prop::collection::vec((0usize..100, -2i64..=2), 0..3), 6),
    ) {
        let bound = 6;
        let a = random_dga(&degrees, &seeds, bound);
        prop_assert!(a.validate().is_valid());
        for k in 0..bound - 1 {
            let prod = a.differential_matrix(k + 1).unwrap().mul(a.differential_matrix(k).unwrap()).unwrap();
            prop_assert!(prod.is_zero(), "degree {}", k);
        }
    }
}

#[test]
fn differential_squares_to_zero_on_examples() {
    for a in [common::worked_example(7), common::wedge_of_spheres(7), common::g514(7), common::g535(7)] {
        for k in 0..6 {
            let prod = a.differential_matrix(k + 1).unwrap().mul(a.differential_matrix(k).unwrap()).unwrap();
            assert!(prod.is_zero());
            let hk = a.betti(k + 1).unwrap();
            let ker = a.cocycles(k + 1).unwrap().dim();
            assert_eq!(hk, ker - a.differential_matrix(k).unwrap().rank());
        }
    }
}

#[test]
fn coboundary_preimages_invert_the_differential() {
    let a = common::g535(6);
    for k in 1..5 {
        for m in a.algebra().degree_basis(k).unwrap() {
            let c = a.extend_differential(&Element::from_monomial(m.clone())).unwrap();
            let b = a.coboundary_preimage(&c).unwrap();
            assert_eq!(a.extend_differential(&b).unwrap(), c);
        }
    }
}

/// Adding a generator of degree k - 1 leaves H^m unchanged for m < k.
#[test]
fn y_generators_preserve_lower_cohomology() {
    for (a, i) in [(common::worked_example(6), 4), (common::wedge_of_spheres(8), 6), (common::g514(5), 3)] {
        let m = minimal_model(&a, i, 3).unwrap();
        let gens = m.generators();
        for p in 0..gens.len() {
            if gens[p].kind != cdga::GeneratorKind::Y {
                continue;
            }
            let prefix = |n: usize| {
                let g: Vec<_> = gens[..n]
                    .iter()
                    .map(|g| cdga::ModelGenerator { differential: g.differential.resized(n).unwrap(), ..g.clone() })
                    .collect();
                MinimalModel::from_generators(i, a.table().clone(), g).unwrap()
            };
            let (before, after) = (prefix(p), prefix(p + 1));
            let k = gens[p].degree + 1;
            for deg in 1..k {
                assert_eq!(before.model().betti(deg).unwrap(), after.model().betti(deg).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn models_of_random_dgas_verify(
        degrees in prop::collection::vec(1u32..4, 2..6),
        seeds in prop::collection::vec(prop::collection::vec((0usize..100, -2i64..=2), 0..3), 6),
    ) {
        let a = random_dga(&degrees, &seeds, 5);
        let m = match minimal_model(&a, 3, 3) {
            Ok(m) => m,
            Err(cdga::ModelError::IterationLimitExceeded { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        prop_assert!(cdga::verify_quasi_isomorphism(&m, &a).unwrap().failures.is_empty());
        prop_assert!(cdga::verify_minimality(&m).unwrap().failures.is_empty());
        prop_assert_eq!(&cdga::intrinsic_invariants(&m, 3).unwrap(), m.invariants());
    }
}
