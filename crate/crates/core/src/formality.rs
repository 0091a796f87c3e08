//! Cohomology algebras and the formality test.
//!
//! `A` is compared with its cohomology `H = H*(A)` (zero differential) by
//! building minimal models of both. Different numerical invariants prove that
//! `A` is not formal. Equal invariants together with the condition that every
//! `y` differential dies when `y`s are sent to zero and `x`s to their classes
//! prove that it is. Anything else is reported as inconclusive.

use std::fmt;

use crate::dga::Dga;
use crate::gca::{AlgebraError, Element, GeneratorTable};
use crate::groebner::QuotientAlgebra;
use crate::linalg::{self, Matrix, Subspace};
use crate::model::{apply_phi, minimal_model, GeneratorKind, InvariantTable, MinimalModel, ModelError};
use crate::scalar::Scalar;

/// Generators and relations for `H*(A)` up to some degree, with cocycles
/// representing each generator.
#[derive(Debug, Clone)]
pub struct CohomologyPresentation<F> {
    table: GeneratorTable,
    relations: Vec<Element<F>>,
    witnesses: Vec<Element<F>>,
    degree: u32,
}

impl<F: Scalar> CohomologyPresentation<F> {
    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    /// Relations in the order found, degree by degree.
    pub fn relations(&self) -> &[Element<F>] {
        &self.relations
    }

    /// The cocycle of the source algebra chosen for each generator.
    pub fn witnesses(&self) -> &[Element<F>] {
        &self.witnesses
    }

    /// Degree up to which the presentation agrees with the cohomology.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn render_relations(&self) -> Vec<String> {
        self.relations.iter().map(|r| self.table.render(r)).collect()
    }

    /// The presented algebra with zero differential.
    pub fn to_dga(&self, degree_bound: u32) -> Result<Dga<F>, AlgebraError> {
        Dga::new(
            self.table.clone(),
            self.relations.clone(),
            vec![Element::zero(); self.table.len()],
            degree_bound,
        )
    }
}

/// A presentation of `H*(a)` valid up to degree `n`. New generators in degree
/// `k` span a complement of the products of earlier ones; relations span the
/// kernel of the map from the current algebra to `H^k(a)`.
pub fn cohomology_algebra<F: Scalar>(a: &Dga<F>, n: u32) -> Result<CohomologyPresentation<F>, AlgebraError> {
    let mut table = GeneratorTable::default();
    let mut relations: Vec<Element<F>> = Vec::new();
    let mut witnesses: Vec<Element<F>> = Vec::new();
    for k in 1..=n {
        let len = table.len();
        let current: Vec<Element<F>> = relations.iter().map(|r| r.resized(len).expect("grows only")).collect();
        let q = QuotientAlgebra::new(table.clone(), &current, k)?;
        let basis = q.degree_basis(k)?.to_vec();
        let ha = a.cohomology(k)?;
        let columns = basis
            .iter()
            .map(|mono| {
                let w = apply_phi(a, &witnesses, &Element::from_monomial(mono.clone()))?;
                a.class_coordinates(&w, &ha)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let map = Matrix::from_columns(ha.dim(), &columns);
        for v in linalg::kernel(&map).basis_vectors() {
            relations.push(Element::from_vector(&basis, &v));
        }
        let complement = linalg::quotient_basis(&Subspace::full(ha.dim()), &linalg::image(&map))
            .expect("image lies in the full space");
        for u in complement {
            table.push(format!("x{}", table.len()), k).expect("fresh name");
            witnesses.push(ha.combine(&u));
        }
    }
    let len = table.len();
    Ok(CohomologyPresentation {
        relations: relations.iter().map(|r| r.resized(len).expect("grows only")).collect(),
        table,
        witnesses,
        degree: n,
    })
}

/// `ψ(x)` as a class vector in `H^k(M)`: `y` generators go to zero and `x`
/// generators to their own classes.
pub fn psi<F: Scalar>(m: &MinimalModel<F>, x: &Element<F>, k: u32) -> Result<Vec<F>, AlgebraError> {
    let dga = m.model();
    let is_y: Vec<bool> = m.generators().iter().map(|g| g.kind == GeneratorKind::Y).collect();
    let mut kept = Element::zero();
    for (mono, c) in x.terms() {
        let has_y = mono.exponents().iter().zip(&is_y).any(|(&e, &y)| e > 0 && y);
        if !has_y {
            kept.add_term(mono.clone(), c.clone());
        }
    }
    let h = dga.cohomology(k)?;
    dga.class_coordinates(&kept, &h)
}

/// Evaluates `ψ` on the differential of every `y` generator of degree `≤ i`.
/// Returns the names of the generators where it does not vanish.
pub fn psi_condition<F: Scalar>(m: &MinimalModel<F>, i: u32) -> Result<Vec<String>, AlgebraError> {
    let mut failures = Vec::new();
    for (p, g) in m.generators().iter().enumerate() {
        if g.kind != GeneratorKind::Y || g.degree + 1 > i + 1 {
            continue;
        }
        let z = m.model().generator_differential(p);
        if psi(m, z, g.degree + 1)?.iter().any(|c| !c.is_zero()) {
            failures.push(g.name.clone());
        }
    }
    Ok(failures)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Formal,
    NotFormal,
    /// Invariants agree but the sufficient condition fails.
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Formal => write!(f, "True"),
            Outcome::NotFormal => write!(f, "False"),
            Outcome::Inconclusive => write!(f, "inconclusive (criteria disagree)"),
        }
    }
}

/// First `(i, j)` where the invariant tables differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    pub degree: u32,
    pub stage: u32,
    pub model: usize,
    /// `None` when the cohomology model gave up at this stage, so the value is
    /// only known to be positive.
    pub cohomology: Option<usize>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = match self.cohomology {
            Some(v) => v.to_string(),
            None => ">0 (iteration limit)".to_string(),
        };
        write!(f, "v^{}_{}: {} for the algebra, {} for its cohomology", self.degree, self.stage, self.model, h)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalityVerdict {
    pub outcome: Outcome,
    pub model_invariants: InvariantTable,
    pub cohomology_invariants: InvariantTable,
    /// `false` if the model of the cohomology hit the iteration limit.
    pub cohomology_model_complete: bool,
    pub mismatch: Option<Mismatch>,
    pub psi_failures: Vec<String>,
}

fn first_mismatch(a: &InvariantTable, h: &InvariantTable, limit: Option<(u32, u32)>) -> Option<Mismatch> {
    let mut keys: Vec<(u32, u32)> = a.entries().chain(h.entries()).map(|(k, _)| k).collect();
    keys.sort_unstable();
    keys.dedup();
    for (i, j) in keys {
        if limit.is_some_and(|l| (i, j) > l) {
            break;
        }
        if a.get(i, j) != h.get(i, j) {
            return Some(Mismatch {
                degree: i,
                stage: j,
                model: a.get(i, j),
                cohomology: Some(h.get(i, j)),
            });
        }
    }
    let (i, j) = limit?;
    Some(Mismatch {
        degree: i,
        stage: j + 1,
        model: a.get(i, j + 1),
        cohomology: None,
    })
}

/// Decides `i`-formality of `a` as far as the invariants and the sufficient
/// condition allow. `a` must be known up to degree `i + 2`.
pub fn is_formal<F: Scalar>(a: &Dga<F>, i: u32, max_iterations: u32) -> Result<FormalityVerdict, ModelError<F>> {
    let ma = minimal_model(a, i, max_iterations)?;
    let h = cohomology_algebra(ma.model(), i + 1)?.to_dga(i + 2)?;
    let (mh, stopped) = match minimal_model(&h, i, max_iterations) {
        Ok(m) => (m, None),
        Err(ModelError::IterationLimitExceeded {
            target_degree,
            max_iterations,
            partial,
        }) => (*partial, Some((target_degree - 1, max_iterations))),
        Err(e) => return Err(e),
    };
    let model_invariants = ma.invariants().truncated(i);
    let cohomology_invariants = mh.invariants().truncated(i);
    let mismatch = first_mismatch(&model_invariants, &cohomology_invariants, stopped);
    let (outcome, psi_failures) = if mismatch.is_some() {
        (Outcome::NotFormal, Vec::new())
    } else {
        let failures = psi_condition(&ma, i)?;
        let outcome = if failures.is_empty() {
            Outcome::Formal
        } else {
            Outcome::Inconclusive
        };
        (outcome, failures)
    };
    Ok(FormalityVerdict {
        outcome,
        model_invariants,
        cohomology_invariants,
        cohomology_model_complete: stopped.is_none(),
        mismatch,
        psi_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;
    use crate::model::DEFAULT_MAX_ITERATIONS;
    use crate::Rational;
    use num_traits::Zero;

    fn example(bound: u32) -> Dga<Rational> {
        let t = GeneratorTable::new([
            ("e1", 1),
            ("e2", 1),
            ("e3", 1),
            ("e4", 1),
            ("e5", 1),
            ("e6", 1),
            ("e7", 2),
        ])
        .unwrap();
        let d = ["-e1*e6", "-e2*e6", "-e3*e6", "-e5*e6", "0", "0", "0"]
            .iter()
            .map(|s| parse_element(&t, s).unwrap())
            .collect();
        Dga::free(t, d, bound).unwrap()
    }

    #[test]
    fn presentation_of_worked_example() {
        let a = example(4);
        let p = cohomology_algebra(&a, 2).unwrap();
        assert_eq!(p.table().degrees(), &[1, 1, 2, 2, 2]);
        assert_eq!(p.render_relations(), ["x0*x1"]);
        let h = p.to_dga(3).unwrap();
        for k in 1..=2 {
            assert_eq!(h.algebra().dim(k).unwrap(), a.betti(k).unwrap());
        }
    }

    #[test]
    fn psi_on_worked_example() {
        let a = example(5);
        let m = minimal_model(&a, 3, DEFAULT_MAX_ITERATIONS).unwrap();
        let t = m.table().clone();
        let zero = |v: Vec<Rational>| v.iter().all(|c| c.is_zero());
        assert!(zero(psi(&m, &parse_element(&t, "x1_0*x1_1").unwrap(), 2).unwrap()));
        assert!(zero(psi(&m, &parse_element(&t, "y1_0").unwrap(), 1).unwrap()));
        assert!(!zero(psi(&m, &parse_element(&t, "x2_0").unwrap(), 2).unwrap()));
        assert!(psi_condition(&m, 3).unwrap().is_empty());
    }

    #[test]
    fn zero_differential_is_formal() {
        let t = GeneratorTable::new([("a", 2), ("b", 3)]).unwrap();
        let rels = vec![parse_element(&t, "a^2").unwrap()];
        let a: Dga<Rational> = Dga::new(t, rels, vec![Element::zero(); 2], 6).unwrap();
        for i in 1..=4 {
            let v = is_formal(&a, i, DEFAULT_MAX_ITERATIONS).unwrap();
            assert_eq!(v.outcome, Outcome::Formal, "degree {i}");
            assert!(v.mismatch.is_none());
            assert_eq!(v.model_invariants, v.cohomology_invariants);
        }
    }

    #[test]
    fn mismatch_search() {
        let mut a = InvariantTable::new();
        a.add(1, 0, 2);
        a.add(1, 1, 1);
        let mut h = a.clone();
        assert_eq!(first_mismatch(&a, &h, None), None);
        h.add(2, 0, 1);
        let m = first_mismatch(&a, &h, None).unwrap();
        assert_eq!((m.degree, m.stage, m.model, m.cohomology), (2, 0, 0, Some(1)));
        let m = first_mismatch(&a, &a, Some((1, 3))).unwrap();
        assert_eq!((m.degree, m.stage, m.cohomology), (1, 4, None));
    }
}
