//! Numerical invariants computed from the model alone.
//!
//! For each degree `i` two chains of subspaces of `M_i` are built:
//!
//! ```text
//! V^i_0 = Ker d_i              W^i_0 = Ker d_i ∩ N^{i-1}_∞
//! V^i_{j+1} = d_i^{-1}(N^i_j)   W^i_{j+1} = V^i_{j+1} ∩ N^i_j
//! ```
//!
//! where `N^i_j` is the subalgebra generated by `V^l_∞` for `l < i` and by
//! `V^i_j`. Then `v^i_j = dim V^i_j − dim W^i_j`. These do not depend on how the
//! model was built, so they check the counts recorded during construction.

use crate::dga::Dga;
use crate::gca::{AlgebraError, Element};
use crate::linalg::{self, Subspace};
use crate::model::{InvariantTable, MinimalModel};
use crate::scalar::Scalar;

/// Degree-`t` component, for `t ≤ top`, of the subalgebra generated by the
/// given homogeneous elements (grouped by degree, index = degree).
fn subalgebra_components<F: Scalar>(
    dga: &Dga<F>,
    generators: &[Vec<Element<F>>],
    top: u32,
) -> Result<Vec<Subspace<F>>, AlgebraError> {
    let alg = dga.algebra();
    let mut parts: Vec<Subspace<F>> = vec![Subspace::full(alg.dim(0)?)];
    for t in 1..=top {
        let mut vectors = Vec::new();
        for l in 1..=t {
            let Some(gens) = generators.get(l as usize) else {
                continue;
            };
            let rest = &parts[(t - l) as usize];
            for g in gens {
                for s in rest.basis_vectors() {
                    let s = alg.from_coordinates(t - l, &s);
                    let p = alg.multiply(g, &s)?;
                    vectors.push(alg.coordinates(&p, t)?);
                }
            }
        }
        parts.push(Subspace::span(alg.dim(t)?, vectors));
    }
    Ok(parts)
}

fn elements<F: Scalar>(dga: &Dga<F>, degree: u32, space: &Subspace<F>) -> Vec<Element<F>> {
    space
        .basis_vectors()
        .iter()
        .map(|v| dga.algebra().from_coordinates(degree, v))
        .collect()
}

/// `v^i_j` for all `i ≤ up_to_degree`, from the subspace chains of the model.
pub fn intrinsic_invariants<F: Scalar>(
    m: &MinimalModel<F>,
    up_to_degree: u32,
) -> Result<InvariantTable, AlgebraError> {
    let dga = m.model();
    let mut table = InvariantTable::new();
    // finals[l] spans V^l_∞.
    let mut finals: Vec<Vec<Element<F>>> = vec![Vec::new()];
    for i in 1..=up_to_degree {
        let d = dga.differential_matrix(i)?;
        let mut v = linalg::kernel(d);
        let below = subalgebra_components(dga, &finals, i)?;
        let w = v.intersection(&below[i as usize]);
        table.add(i, 0, v.dim() - w.dim());
        let mut j = 0;
        loop {
            let mut gens = finals.clone();
            gens.push(elements(dga, i, &v));
            let n = subalgebra_components(dga, &gens, i + 1)?;
            let next = linalg::preimage_subspace(d, &n[i as usize + 1]).expect("dimensions agree");
            if next == v {
                break;
            }
            j += 1;
            let w = next.intersection(&n[i as usize]);
            table.add(i, j, next.dim() - w.dim());
            v = next;
        }
        finals.push(elements(dga, i, &v));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{minimal_model, DEFAULT_MAX_ITERATIONS};
    use crate::expr::parse_element;
    use crate::gca::GeneratorTable;
    use crate::Rational;

    #[test]
    fn worked_example_by_hand() {
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
        let a: Dga<Rational> = Dga::free(t, d, 5).unwrap();
        let m = minimal_model(&a, 3, DEFAULT_MAX_ITERATIONS).unwrap();
        let v = intrinsic_invariants(&m, 3).unwrap();
        assert_eq!(v.to_string(), "v^1_0=2, v^1_1=1, v^2_0=1");
        assert_eq!(&v, m.invariants());
    }

    #[test]
    fn closed_generators_only() {
        let t = GeneratorTable::new([("a", 1), ("b", 3)]).unwrap();
        let a: Dga<Rational> = Dga::free(t, vec![Element::zero(), Element::zero()], 5).unwrap();
        let m = minimal_model(&a, 3, 3).unwrap();
        let v = intrinsic_invariants(&m, 3).unwrap();
        assert!(v.entries().all(|((_, j), _)| j == 0));
        assert_eq!(&v, m.invariants());
    }
}
