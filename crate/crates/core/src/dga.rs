//! Differentials on presented algebras and their cohomology.

use std::fmt;
use std::sync::OnceLock;

use crate::gca::{AlgebraError, Element, GeneratorTable};
use crate::groebner::QuotientAlgebra;
use crate::linalg::{self, Matrix, Subspace};
use crate::scalar::Scalar;

/// A single failed check from [`Dga::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `d(g)` is not homogeneous of degree `|g| + 1`.
    DifferentialDegree { generator: String, differential: String },
    /// `d(d(g))` does not vanish.
    SquareNonZero { generator: String, value: String },
    /// The differential does not preserve the ideal: `d(r)` reduces to `value`.
    IdealNotPreserved { relation: String, value: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DifferentialDegree {
                generator,
                differential,
            } => write!(f, "d({generator}) = {differential} has the wrong degree"),
            Violation::SquareNonZero { generator, value } => {
                write!(f, "d(d({generator})) = {value}, expected 0")
            }
            Violation::IdealNotPreserved { relation, value } => {
                write!(f, "d({relation}) reduces to {value}, expected 0")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A quotient algebra with a differential given on generators.
#[derive(Clone)]
pub struct Dga<F> {
    algebra: QuotientAlgebra<F>,
    relations: Vec<Element<F>>,
    diff: Vec<Element<F>>,
    matrices: Vec<OnceLock<Matrix<F>>>,
}

impl<F: Scalar> fmt::Debug for Dga<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let table = self.table();
        let mut s = f.debug_struct("Dga");
        s.field("generators", &table.names().iter().zip(table.degrees()).collect::<Vec<_>>());
        s.field("relations", &self.relations.iter().map(|r| table.render(r)).collect::<Vec<_>>());
        s.field("differential", &self.diff.iter().map(|d| table.render(d)).collect::<Vec<_>>());
        s.field("degree_bound", &self.degree_bound());
        s.finish()
    }
}

impl<F: Scalar> Dga<F> {
    /// Builds the quotient by `relations` and attaches `differentials`, one per
    /// generator in table order. Nothing is validated beyond shapes; see
    /// [`validate`](Self::validate).
    pub fn new(
        table: GeneratorTable,
        relations: Vec<Element<F>>,
        differentials: Vec<Element<F>>,
        degree_bound: u32,
    ) -> Result<Self, AlgebraError> {
        if differentials.len() != table.len() {
            return Err(AlgebraError::TableMismatch {
                expected: table.len(),
                found: differentials.len(),
            });
        }
        let algebra = QuotientAlgebra::new(table, &relations, degree_bound)?;
        let diff = differentials
            .into_iter()
            .map(|d| match d.leading_term() {
                Some((m, _)) if m.degree() <= degree_bound => algebra.normal_form(&d),
                _ => Ok(d),
            })
            .collect::<Result<_, _>>()?;
        Ok(Dga {
            algebra,
            relations,
            diff,
            matrices: (0..degree_bound).map(|_| OnceLock::new()).collect(),
        })
    }

    /// A free algebra with the given differential.
    pub fn free(
        table: GeneratorTable,
        differentials: Vec<Element<F>>,
        degree_bound: u32,
    ) -> Result<Self, AlgebraError> {
        Self::new(table, Vec::new(), differentials, degree_bound)
    }

    pub fn algebra(&self) -> &QuotientAlgebra<F> {
        &self.algebra
    }

    pub fn table(&self) -> &GeneratorTable {
        self.algebra.table()
    }

    pub fn relations(&self) -> &[Element<F>] {
        &self.relations
    }

    pub fn degree_bound(&self) -> u32 {
        self.algebra.degree_bound()
    }

    pub fn generator_differential(&self, g: usize) -> &Element<F> {
        &self.diff[g]
    }

    pub fn render(&self, x: &Element<F>) -> String {
        self.table().render(x)
    }

    /// Checks degrees, `d² = 0` on generators and `d(I) ⊆ I` up to the bound.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let table = self.table();
        let bound = self.degree_bound();
        for g in 0..table.len() {
            let deg = table.degree(g);
            let dg = &self.diff[g];
            let name = table.name(g).to_string();
            let degree_ok = dg.is_zero() || dg.homogeneous_degree() == Some(deg + 1);
            if !degree_ok {
                report.violations.push(Violation::DifferentialDegree {
                    generator: name,
                    differential: table.render(dg),
                });
                continue;
            }
            if deg + 2 <= bound {
                let ddg = self.extend_differential(dg).expect("within bound");
                if !ddg.is_zero() {
                    report.violations.push(Violation::SquareNonZero {
                        generator: name,
                        value: table.render(&ddg),
                    });
                }
            }
        }
        if !report.is_valid() {
            return report;
        }
        for r in &self.relations {
            match r.homogeneous_degree() {
                Some(d) if d < bound => {
                    let dr = self.extend_unreduced(r);
                    let nf = self.algebra.normal_form(&dr).expect("within bound");
                    if !nf.is_zero() {
                        report.violations.push(Violation::IdealNotPreserved {
                            relation: table.render(r),
                            value: table.render(&nf),
                        });
                    }
                }
                _ => {}
            }
        }
        report
    }

    /// Leibniz extension of the generator differentials, without reduction.
    fn extend_unreduced(&self, x: &Element<F>) -> Element<F> {
        let table = self.table();
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            let exps = m.exponents();
            let mut odd_before = false;
            for g in 0..table.len() {
                let e = exps[g];
                if e == 0 {
                    continue;
                }
                if !self.diff[g].is_zero() {
                    let mut left = exps.to_vec();
                    left[g + 1..].iter_mut().for_each(|v| *v = 0);
                    left[g] = e - 1;
                    let mut right = exps.to_vec();
                    right[..=g].iter_mut().for_each(|v| *v = 0);
                    let left = table.monomial(left).unwrap().expect("submonomial");
                    let right = table.monomial(right).unwrap().expect("submonomial");
                    // d(g^e) = e·g^(e-1)·dg for even g; e = 1 for odd g.
                    let sign_factor = if odd_before { -F::one() } else { F::one() };
                    let coeff = c.clone() * F::from_i64(i64::from(e)) * sign_factor;
                    let l = Element::from_monomial(left);
                    let r = Element::from_monomial(right);
                    let term = table.mul_unchecked(&table.mul_unchecked(&l, &self.diff[g]), &r);
                    out.add_scaled(&term, &coeff);
                }
                if table.is_odd(g) && e % 2 == 1 {
                    odd_before = !odd_before;
                }
            }
        }
        out
    }

    /// `d(x)`, reduced to normal form. Requires `deg(x) + 1 ≤ bound`.
    pub fn extend_differential(&self, x: &Element<F>) -> Result<Element<F>, AlgebraError> {
        for (m, _) in x.terms() {
            if m.degree() + 1 > self.degree_bound() {
                return Err(AlgebraError::DegreeOutOfBound {
                    degree: m.degree() + 1,
                    bound: self.degree_bound(),
                });
            }
        }
        self.algebra.normal_form(&self.extend_unreduced(x))
    }

    /// The matrix of `d_k : A_k → A_{k+1}` on the normal monomial bases.
    pub fn differential_matrix(&self, k: u32) -> Result<&Matrix<F>, AlgebraError> {
        let cell = self.matrices.get(k as usize).ok_or(AlgebraError::DegreeOutOfBound {
            degree: k + 1,
            bound: self.degree_bound(),
        })?;
        Ok(cell.get_or_init(|| {
            let source = self.algebra.degree_basis(k).expect("within bound");
            let rows = self.algebra.dim(k + 1).expect("within bound");
            let columns: Vec<Vec<F>> = source
                .iter()
                .map(|m| {
                    let dm = self.extend_differential(&Element::from_monomial(m.clone())).expect("within bound");
                    self.algebra.coordinates(&dm, k + 1).expect("homogeneous")
                })
                .collect();
            Matrix::from_columns(rows, &columns)
        }))
    }

    pub fn cocycles(&self, k: u32) -> Result<Subspace<F>, AlgebraError> {
        Ok(linalg::kernel(self.differential_matrix(k)?))
    }

    pub fn coboundaries(&self, k: u32) -> Result<Subspace<F>, AlgebraError> {
        if k == 0 {
            return Ok(Subspace::zero(self.algebra.dim(0)?));
        }
        Ok(linalg::image(self.differential_matrix(k - 1)?))
    }

    /// A basis of `H^k` with canonical representatives. Requires `k + 1 ≤ bound`.
    pub fn cohomology(&self, k: u32) -> Result<CohomologyBasis<F>, AlgebraError> {
        let cocycles = self.cocycles(k)?;
        let coboundaries = self.coboundaries(k)?;
        let vectors = linalg::quotient_basis(&cocycles, &coboundaries)
            .expect("coboundaries are cocycles since d² = 0");
        let representatives = vectors
            .iter()
            .map(|v| self.algebra.from_coordinates(k, v))
            .collect();
        let mut columns = vectors.clone();
        columns.extend(coboundaries.basis_vectors());
        let solver = Matrix::from_columns(cocycles.ambient_dim(), &columns);
        Ok(CohomologyBasis {
            degree: k,
            representatives,
            vectors,
            cocycles,
            solver,
        })
    }

    pub fn betti(&self, k: u32) -> Result<usize, AlgebraError> {
        Ok(self.cohomology(k)?.dim())
    }

    /// Coordinates of the class of the cocycle `x` in `basis`.
    pub fn class_coordinates(
        &self,
        x: &Element<F>,
        basis: &CohomologyBasis<F>,
    ) -> Result<Vec<F>, AlgebraError> {
        let v = self.algebra.coordinates(x, basis.degree)?;
        basis.coordinates_of_vector(&v).ok_or_else(|| AlgebraError::NotACocycle(self.render(x)))
    }

    /// Some `b` with `d(b) = c`, choosing free variables as zero.
    pub fn coboundary_preimage(&self, c: &Element<F>) -> Result<Element<F>, AlgebraError> {
        let k = match c.homogeneous_degree() {
            None if c.is_zero() => return Ok(Element::zero()),
            None => return Err(AlgebraError::NonHomogeneous(self.render(c))),
            Some(0) => return Err(AlgebraError::NotACoboundary(self.render(c))),
            Some(k) => k,
        };
        let v = self.algebra.coordinates(c, k)?;
        let m = self.differential_matrix(k - 1)?;
        match linalg::solve(m, &v).expect("dimensions agree") {
            Some(b) => Ok(self.algebra.from_coordinates(k - 1, &b)),
            None => Err(AlgebraError::NotACoboundary(self.render(c))),
        }
    }
}

/// Representatives of a basis of `H^k` together with what is needed to
/// express the class of any cocycle in that basis.
#[derive(Clone)]
pub struct CohomologyBasis<F> {
    degree: u32,
    representatives: Vec<Element<F>>,
    vectors: Vec<Vec<F>>,
    cocycles: Subspace<F>,
    solver: Matrix<F>,
}

impl<F: Scalar> fmt::Debug for CohomologyBasis<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CohomologyBasis")
            .field("degree", &self.degree)
            .field("representatives", &self.representatives)
            .finish()
    }
}

impl<F: Scalar> CohomologyBasis<F> {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_zero(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[Element<F>] {
        &self.representatives
    }

    /// Representatives as coordinate vectors in the degree-`k` monomial basis.
    pub fn vectors(&self) -> &[Vec<F>] {
        &self.vectors
    }

    /// Class coordinates of a cocycle given in monomial coordinates, or `None`
    /// if the vector is not a cocycle.
    pub fn coordinates_of_vector(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.cocycles.contains(v) {
            return None;
        }
        let x = linalg::solve(&self.solver, v)
            .expect("dimensions agree")
            .expect("cocycles are spanned by representatives and coboundaries");
        Some(x[..self.dim()].to_vec())
    }

    /// The cocycle `Σ c_i · rep_i`.
    pub fn combine(&self, coeffs: &[F]) -> Element<F> {
        let mut out = Element::zero();
        for (r, c) in self.representatives.iter().zip(coeffs) {
            out.add_scaled(r, c);
        }
        out
    }
}
