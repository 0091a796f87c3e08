//! Degree-truncated Gröbner bases for homogeneous ideals of a free
//! graded-commutative algebra, and the quotient algebras they present.
//!
//! The algebra is supercommutative, so left, right and two-sided ideals agree.
//! Besides the usual S-pairs, an element whose leading monomial contains an odd
//! generator `x` also produces the pair `x·g`: its leading term vanishes, and
//! what is left must still reduce to zero.

use std::collections::{BTreeMap, HashMap};

use crate::gca::{AlgebraError, Element, GeneratorTable, Monomial};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis<F> {
    elements: Vec<Element<F>>,
    degree_bound: u32,
}

impl<F: Scalar> GroebnerBasis<F> {
    /// Elements sorted by leading monomial, each with leading coefficient one.
    pub fn elements(&self) -> &[Element<F>] {
        &self.elements
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().map(|g| g.leading_term().expect("nonzero").0)
    }
}

/// Fully reduces `f` modulo `basis` (every term, not only the leading one).
fn reduce<F: Scalar>(table: &GeneratorTable, f: &Element<F>, basis: &[Element<F>]) -> Element<F> {
    let mut rest = f.clone();
    let mut out = Element::zero();
    while let Some((m, c)) = rest.leading_term() {
        let (m, c) = (m.clone(), c.clone());
        let divisor = basis.iter().find(|g| g.leading_term().expect("nonzero").0.divides(&m));
        match divisor {
            Some(g) => {
                let lm = g.leading_term().expect("nonzero").0;
                let t = Element::from_monomial(lm.cofactor_in(&m));
                let tg = table.mul_unchecked(&t, g);
                let lc = tg.coefficient(&m);
                rest.add_scaled(&tg, &-(c / lc));
            }
            None => {
                rest.add_term(m.clone(), -c.clone());
                out.add_term(m, c);
            }
        }
    }
    out
}

fn monic<F: Scalar>(f: &Element<F>) -> Element<F> {
    let lc = f.leading_term().expect("nonzero").1.inv();
    f.scale(&lc)
}

/// Buchberger's algorithm, processing candidates in order of degree and
/// discarding everything above `degree_bound`.
pub fn groebner<F: Scalar>(
    table: &GeneratorTable,
    relations: &[Element<F>],
    degree_bound: u32,
) -> Result<GroebnerBasis<F>, AlgebraError> {
    // Pending candidates, bucketed by degree; within a degree, insertion order.
    let mut pending: BTreeMap<u32, Vec<Element<F>>> = BTreeMap::new();
    for r in relations {
        if r.is_zero() {
            return Err(AlgebraError::ZeroRelation);
        }
        let d = r
            .homogeneous_degree()
            .ok_or_else(|| AlgebraError::NonHomogeneous(table.render(r)))?;
        if r.terms().next().map(|(m, _)| m.exponents().len()) != Some(table.len()) {
            return Err(AlgebraError::TableMismatch {
                expected: table.len(),
                found: r.terms().next().map_or(0, |(m, _)| m.exponents().len()),
            });
        }
        if d <= degree_bound {
            pending.entry(d).or_default().push(r.clone());
        }
    }

    let mut basis: Vec<Element<F>> = Vec::new();
    while let Some((&d, _)) = pending.iter().next() {
        let candidates = pending.remove(&d).expect("present");
        for f in candidates {
            let h = reduce(table, &f, &basis);
            if h.is_zero() {
                continue;
            }
            let h = monic(&h);
            let lm_h = h.leading_term().expect("nonzero").0.clone();
            for g in &basis {
                let lm_g = g.leading_term().expect("nonzero").0;
                let lcm = lm_h.lcm(lm_g, table);
                if lcm.degree() > degree_bound {
                    continue;
                }
                let th = table.mul_unchecked(&Element::from_monomial(lm_h.cofactor_in(&lcm)), &h);
                let tg = table.mul_unchecked(&Element::from_monomial(lm_g.cofactor_in(&lcm)), g);
                let (ch, cg) = (th.coefficient(&lcm), tg.coefficient(&lcm));
                if ch.is_zero() || cg.is_zero() {
                    continue;
                }
                let mut s = th.scale(&cg);
                s.add_scaled(&tg, &-ch);
                if !s.is_zero() {
                    pending.entry(lcm.degree()).or_default().push(s);
                }
            }
            for x in 0..table.len() {
                if table.is_odd(x) && lm_h.exponents()[x] == 1 {
                    let deg = lm_h.degree() + table.degree(x);
                    if deg <= degree_bound {
                        let xh = table.mul_unchecked(&table.generator(x), &h);
                        if !xh.is_zero() {
                            pending.entry(deg).or_default().push(xh);
                        }
                    }
                }
            }
            basis.push(h);
        }
    }

    Ok(GroebnerBasis {
        elements: interreduce(table, basis),
        degree_bound,
    })
}

fn interreduce<F: Scalar>(table: &GeneratorTable, mut basis: Vec<Element<F>>) -> Vec<Element<F>> {
    basis.sort_by(|a, b| a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0));
    // Drop elements whose leading monomial is a multiple of an earlier one.
    let mut kept: Vec<Element<F>> = Vec::new();
    for g in basis {
        let lm = g.leading_term().unwrap().0;
        if !kept.iter().any(|k| k.leading_term().unwrap().0.divides(lm)) {
            kept.push(g);
        }
    }
    let mut out = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<Element<F>> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let lead = kept[i].leading_term().unwrap();
        let mut tail = kept[i].clone();
        tail.add_term(lead.0.clone(), -lead.1.clone());
        let mut g = reduce(table, &tail, &others);
        g.add_term(lead.0.clone(), lead.1.clone());
        out.push(monic(&g));
    }
    out
}

/// A free graded-commutative algebra modulo a homogeneous ideal, with the
/// normal monomials of every degree up to `degree_bound`.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra<F> {
    table: GeneratorTable,
    gb: GroebnerBasis<F>,
    bases: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl<F: Scalar> QuotientAlgebra<F> {
    pub fn new(
        table: GeneratorTable,
        relations: &[Element<F>],
        degree_bound: u32,
    ) -> Result<Self, AlgebraError> {
        let gb = groebner(&table, relations, degree_bound)?;
        let lms: Vec<Monomial> = gb.leading_monomials().cloned().collect();
        let mut bases = Vec::new();
        let mut index = Vec::new();
        for k in 0..=degree_bound {
            let basis: Vec<Monomial> = table
                .homogeneous_monomials(k)
                .into_iter()
                .filter(|m| !lms.iter().any(|l| l.divides(m)))
                .collect();
            index.push(basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect());
            bases.push(basis);
        }
        Ok(QuotientAlgebra {
            table,
            gb,
            bases,
            index,
        })
    }

    /// The free algebra truncated at `degree_bound`.
    pub fn free(table: GeneratorTable, degree_bound: u32) -> Self {
        Self::new(table, &[], degree_bound).expect("no relations")
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn degree_bound(&self) -> u32 {
        self.gb.degree_bound
    }

    fn check_degree(&self, degree: u32) -> Result<(), AlgebraError> {
        if degree > self.degree_bound() {
            Err(AlgebraError::DegreeOutOfBound {
                degree,
                bound: self.degree_bound(),
            })
        } else {
            Ok(())
        }
    }

    /// Normal monomials of degree `k`, largest first.
    pub fn degree_basis(&self, k: u32) -> Result<&[Monomial], AlgebraError> {
        self.check_degree(k)?;
        Ok(&self.bases[k as usize])
    }

    pub fn dim(&self, k: u32) -> Result<usize, AlgebraError> {
        Ok(self.degree_basis(k)?.len())
    }

    pub fn normal_form(&self, x: &Element<F>) -> Result<Element<F>, AlgebraError> {
        if let Some((m, _)) = x.leading_term() {
            if m.exponents().len() != self.table.len() {
                return Err(AlgebraError::TableMismatch {
                    expected: self.table.len(),
                    found: m.exponents().len(),
                });
            }
            self.check_degree(m.degree())?;
        }
        Ok(reduce(&self.table, x, &self.gb.elements))
    }

    pub fn multiply(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>, AlgebraError> {
        self.normal_form(&self.table.multiply(a, b)?)
    }

    /// Coefficients of the normal form of a degree-`k` element against
    /// [`degree_basis`](Self::degree_basis).
    pub fn coordinates(&self, x: &Element<F>, k: u32) -> Result<Vec<F>, AlgebraError> {
        self.check_degree(k)?;
        if let Some(d) = x.homogeneous_degree() {
            if d != k {
                return Err(AlgebraError::WrongDegree {
                    expected: k,
                    found: d,
                    element: self.table.render(x),
                });
            }
        } else if !x.is_zero() {
            return Err(AlgebraError::NonHomogeneous(self.table.render(x)));
        }
        let nf = self.normal_form(x)?;
        Ok(nf
            .to_vector(&self.index[k as usize], self.bases[k as usize].len())
            .expect("normal forms use normal monomials"))
    }

    pub fn from_coordinates(&self, k: u32, v: &[F]) -> Element<F> {
        Element::from_vector(&self.bases[k as usize], v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;
    use crate::Rational;

    fn parse(t: &GeneratorTable, s: &str) -> Element<Rational> {
        parse_element(t, s).unwrap()
    }

    fn wedge() -> (GeneratorTable, QuotientAlgebra<Rational>) {
        let t = GeneratorTable::new([("e2", 2), ("e3", 3)]).unwrap();
        let rels = [parse(&t, "e2^2"), parse(&t, "e2*e3")];
        let q = QuotientAlgebra::new(t.clone(), &rels, 8).unwrap();
        (t, q)
    }

    #[test]
    fn empty_relations_give_empty_basis() {
        let t = GeneratorTable::new([("a", 1)]).unwrap();
        assert!(groebner::<Rational>(&t, &[], 5).unwrap().is_empty());
    }

    #[test]
    fn wedge_of_spheres() {
        let (t, q) = wedge();
        let gb: Vec<String> = q.groebner_basis().elements().iter().map(|g| t.render(g)).collect();
        assert_eq!(gb, ["e2^2", "e2*e3"]);
        let names = |k| -> Vec<String> {
            q.degree_basis(k).unwrap().iter().map(|m| t.render_monomial(m)).collect()
        };
        assert_eq!(names(2), ["e2"]);
        assert_eq!(names(3), ["e3"]);
        assert!(names(4).is_empty());
        assert!(names(5).is_empty());
        assert!(q.normal_form(&parse(&t, "e2^2*e3")).unwrap().is_zero());
        assert_eq!(q.normal_form(&parse(&t, "e3")).unwrap(), parse(&t, "e3"));
        assert_eq!(q.normal_form(&parse(&t, "5*e2*e3 + e3")).unwrap(), parse(&t, "e3"));
        assert_eq!(q.coordinates(&parse(&t, "e2"), 2).unwrap(), vec![Rational::from_integer(1.into())]);
        assert!(q.coordinates(&parse(&t, "e2^2"), 4).unwrap().is_empty());
        assert!(q.coordinates(&Element::zero(), 3).unwrap().iter().all(|c| c == &Rational::from_integer(0.into())));
        assert!(matches!(q.degree_basis(9), Err(AlgebraError::DegreeOutOfBound { .. })));
    }

    #[test]
    fn difference_of_squares_completes() {
        let t = GeneratorTable::new([("a", 2), ("b", 2)]).unwrap();
        let r = parse(&t, "a^2 - b^2");
        let q = QuotientAlgebra::new(t.clone(), std::slice::from_ref(&r), 8).unwrap();
        assert!(q.normal_form(&r).unwrap().is_zero());
        // In degree 2k the quotient has dimension 2 for k >= 1.
        for k in 1..=4 {
            assert_eq!(q.dim(2 * k).unwrap(), 2, "degree {}", 2 * k);
        }
    }

    #[test]
    fn odd_kill_pairs_are_needed() {
        // x*y - z*w with odd generators: x*(x*y - z*w) = -x*z*w must lie in the ideal.
        let t = GeneratorTable::new([("x", 1), ("y", 1), ("z", 1), ("w", 1)]).unwrap();
        let q = QuotientAlgebra::new(t.clone(), &[parse(&t, "x*y - z*w")], 4).unwrap();
        assert!(q.normal_form(&parse(&t, "x*z*w")).unwrap().is_zero());
        assert!(q.normal_form(&parse(&t, "y*z*w")).unwrap().is_zero());
        assert_eq!(q.dim(2).unwrap(), 5);
        assert_eq!(q.dim(3).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_relations() {
        let t = GeneratorTable::new([("a", 1), ("b", 2)]).unwrap();
        assert!(matches!(
            groebner(&t, &[parse(&t, "a + b")], 4),
            Err(AlgebraError::NonHomogeneous(_))
        ));
        assert!(matches!(
            groebner::<Rational>(&t, &[Element::zero()], 4),
            Err(AlgebraError::ZeroRelation)
        ));
    }
}
