//! Minimal Sullivan models up to a given degree.
//!
//! The model is built degree by degree. At degree `k`, generators `y` of degree
//! `k - 1` are added until `φ*_k : H^k(M) → H^k(A)` is injective, and then
//! closed generators `x` of degree `k` fill the cokernel. A final round of `y`
//! generators makes `φ*_{i+1}` injective.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::dga::{CohomologyBasis, Dga, ValidationReport};
use crate::gca::{AlgebraError, Element, GeneratorTable};
use crate::linalg::{self, Matrix, Subspace};
use crate::scalar::Scalar;

pub const DEFAULT_MAX_ITERATIONS: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    /// Closed, `d = 0`.
    X,
    /// Added to kill a class; `d ≠ 0`.
    Y,
}

impl GeneratorKind {
    pub fn prefix(self) -> char {
        match self {
            GeneratorKind::X => 'x',
            GeneratorKind::Y => 'y',
        }
    }
}

/// Where in the construction a generator was added.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    /// The first closed generators, at the lowest degree with cohomology.
    FirstStep,
    /// Closed generators filling `H^k`.
    XStep(u32),
    /// Round `round` of killing the kernel of `φ*_target`.
    YIteration { target: u32, round: u32 },
    /// The last `y` rounds, making `φ*_{i+1}` injective.
    FinalPass { round: u32 },
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::FirstStep => write!(f, "first-step"),
            Stage::XStep(k) => write!(f, "x-step {k}"),
            Stage::YIteration { target, round } => write!(f, "y-iteration ({target}, {round})"),
            Stage::FinalPass { round } => write!(f, "final-pass {round}"),
        }
    }
}

impl Stage {
    /// The stage index `j` of the numerical invariant `v^i_j` it contributes to.
    pub fn invariant_index(&self) -> u32 {
        match self {
            Stage::FirstStep | Stage::XStep(_) => 0,
            Stage::YIteration { round, .. } | Stage::FinalPass { round } => *round,
        }
    }
}

/// One generator of the model: its differential lives in the model, its image
/// under `φ` in the target algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelGenerator<F> {
    pub name: String,
    pub kind: GeneratorKind,
    pub degree: u32,
    pub index: u32,
    pub differential: Element<F>,
    pub phi_image: Element<F>,
    pub stage: Stage,
}

/// The numbers `v^i_j`; absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InvariantTable {
    entries: BTreeMap<(u32, u32), usize>,
}

impl InvariantTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, i: u32, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, i: u32, j: u32, count: usize) {
        if count > 0 {
            *self.entries.entry((i, j)).or_insert(0) += count;
        }
    }

    /// Nonzero entries sorted by `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), usize)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    /// The entries with `i ≤ degree`.
    pub fn truncated(&self, degree: u32) -> InvariantTable {
        InvariantTable {
            entries: self
                .entries
                .iter()
                .filter(|((i, _), _)| *i <= degree)
                .map(|(k, v)| (*k, *v))
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for InvariantTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().map(|((i, j), v)| format!("v^{i}_{j}={v}")).collect();
        if parts.is_empty() {
            write!(f, "(none)")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

#[derive(Debug, Error)]
pub enum ModelError<F: Scalar> {
    #[error("could not cover all relations in max iterations in degree {target_degree}")]
    IterationLimitExceeded {
        target_degree: u32,
        max_iterations: u32,
        /// The model as far as it got, including the generators of every round.
        partial: Box<MinimalModel<F>>,
    },
    #[error("target algebra is not a valid DGA:\n{0}")]
    InvalidTarget(ValidationReport),
    #[error("target algebra is known up to degree {bound}, but degree {required} is needed")]
    InsufficientBound { bound: u32, required: u32 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `φ*_k` as a matrix, with the bases of `H^k(M)` and `H^k(A)` it is written in.
pub type InducedMap<F> = (Matrix<F>, CohomologyBasis<F>, CohomologyBasis<F>);

/// A free algebra `M` with a morphism `φ : M → A` that is an isomorphism on
/// cohomology up to `degree` and injective one degree higher.
#[derive(Clone)]
pub struct MinimalModel<F> {
    degree: u32,
    generators: Vec<ModelGenerator<F>>,
    model: Dga<F>,
    target_table: GeneratorTable,
    invariants: InvariantTable,
}

impl<F: Scalar> fmt::Debug for MinimalModel<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MinimalModel")
            .field("degree", &self.degree)
            .field("diagram", &self.render_diagram())
            .field("invariants", &self.invariants.to_string())
            .finish()
    }
}

impl<F: Scalar> MinimalModel<F> {
    /// Assembles a model from generator records, in order. Differentials are
    /// expressed over the full list of generators. Invariants are counted from
    /// the stage labels.
    pub fn from_generators(
        degree: u32,
        target_table: GeneratorTable,
        generators: Vec<ModelGenerator<F>>,
    ) -> Result<Self, AlgebraError> {
        let table = GeneratorTable::new(generators.iter().map(|g| (g.name.clone(), g.degree)))?;
        let diffs = generators
            .iter()
            .map(|g| g.differential.resized(table.len()).unwrap_or_else(|| g.differential.clone()))
            .collect();
        let model = Dga::free(table, diffs, degree + 2)?;
        let mut invariants = InvariantTable::new();
        for g in &generators {
            invariants.add(g.degree, g.stage.invariant_index(), 1);
        }
        Ok(MinimalModel {
            degree,
            generators,
            model,
            target_table,
            invariants,
        })
    }

    /// The `i` of an `i`-minimal model.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn generators(&self) -> &[ModelGenerator<F>] {
        &self.generators
    }

    /// The model as a free DGA, known up to degree `degree + 2`.
    pub fn model(&self) -> &Dga<F> {
        &self.model
    }

    pub fn table(&self) -> &GeneratorTable {
        self.model.table()
    }

    pub fn target_table(&self) -> &GeneratorTable {
        &self.target_table
    }

    pub fn invariants(&self) -> &InvariantTable {
        &self.invariants
    }

    /// Renders an element of the model.
    pub fn render(&self, x: &Element<F>) -> String {
        self.table().render(x)
    }

    pub fn render_phi(&self, g: &ModelGenerator<F>) -> String {
        self.target_table.render(&g.phi_image)
    }

    /// One line per generator: `φ-image <- generator -> differential`.
    pub fn render_diagram(&self) -> String {
        let rows: Vec<(String, String, String)> = self
            .generators
            .iter()
            .map(|g| {
                (
                    self.render_phi(g),
                    g.name.clone(),
                    self.render(self.model.generator_differential(self.index_of(g))),
                )
            })
            .collect();
        let w0 = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
        let w1 = rows.iter().map(|r| r.1.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (phi, name, d) in rows {
            out.push_str(&format!("{phi:>w0$} <- {name:<w1$} -> {d}\n"));
        }
        out
    }

    fn index_of(&self, g: &ModelGenerator<F>) -> usize {
        self.table().index_of(&g.name).expect("generator of this model")
    }

    /// `φ(x)` for an element of the model, reduced in the target.
    pub fn phi(&self, a: &Dga<F>, x: &Element<F>) -> Result<Element<F>, AlgebraError> {
        let images: Vec<Element<F>> = self.generators.iter().map(|g| g.phi_image.clone()).collect();
        apply_phi(a, &images, x)
    }

    /// The matrix of `φ*_k` (rows: `H^k(A)`, columns: `H^k(M)`) with both bases.
    pub fn induced_map_on_hk(
        &self,
        a: &Dga<F>,
        k: u32,
    ) -> Result<InducedMap<F>, AlgebraError> {
        let images: Vec<Element<F>> = self.generators.iter().map(|g| g.phi_image.clone()).collect();
        induced_map(&self.model, a, &images, k)
    }
}

pub(crate) fn apply_phi<F: Scalar>(a: &Dga<F>, images: &[Element<F>], x: &Element<F>) -> Result<Element<F>, AlgebraError> {
    let algebra = a.algebra();
    let mut out = Element::zero();
    for (m, c) in x.terms() {
        let mut acc = a.table().one();
        for (g, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                acc = algebra.multiply(&acc, &images[g])?;
            }
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

fn induced_map<F: Scalar>(
    model: &Dga<F>,
    a: &Dga<F>,
    images: &[Element<F>],
    k: u32,
) -> Result<InducedMap<F>, AlgebraError> {
    let hm = model.cohomology(k)?;
    let ha = a.cohomology(k)?;
    let columns = hm
        .representatives()
        .iter()
        .map(|r| {
            let image = apply_phi(a, images, r)?;
            a.class_coordinates(&image, &ha)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((Matrix::from_columns(ha.dim(), &columns), hm, ha))
}

struct Builder<'a, F> {
    a: &'a Dga<F>,
    degree: u32,
    table: GeneratorTable,
    generators: Vec<ModelGenerator<F>>,
    model: Dga<F>,
    invariants: InvariantTable,
}

impl<'a, F: Scalar> Builder<'a, F> {
    fn new(a: &'a Dga<F>, degree: u32) -> Result<Self, AlgebraError> {
        let table = GeneratorTable::default();
        let model = Dga::free(table.clone(), Vec::new(), degree + 2)?;
        Ok(Builder {
            a,
            degree,
            table,
            generators: Vec::new(),
            model,
            invariants: InvariantTable::new(),
        })
    }

    fn images(&self) -> Vec<Element<F>> {
        self.generators.iter().map(|g| g.phi_image.clone()).collect()
    }

    fn add(&mut self, kind: GeneratorKind, degree: u32, differential: Element<F>, phi_image: Element<F>, stage: Stage) {
        let index = self
            .generators
            .iter()
            .filter(|g| g.kind == kind && g.degree == degree)
            .count() as u32;
        let name = format!("{}{}_{}", kind.prefix(), degree, index);
        self.table.push(name.clone(), degree).expect("fresh name, positive degree");
        self.invariants.add(degree, stage.invariant_index(), 1);
        self.generators.push(ModelGenerator {
            name,
            kind,
            degree,
            index,
            differential,
            phi_image,
            stage,
        });
    }

    /// Rebuilds the model DGA after a batch of additions.
    fn rebuild(&mut self) -> Result<(), AlgebraError> {
        let n = self.table.len();
        let diffs = self
            .generators
            .iter()
            .map(|g| g.differential.resized(n).expect("grows only"))
            .collect();
        self.model = Dga::free(self.table.clone(), diffs, self.degree + 2)?;
        Ok(())
    }

    fn induced(&self, k: u32) -> Result<InducedMap<F>, AlgebraError> {
        induced_map(&self.model, self.a, &self.images(), k)
    }

    /// Adds `y` generators of degree `k - 1` until `φ*_k` is injective.
    fn y_iteration(&mut self, k: u32, max_iterations: u32, final_pass: bool) -> Result<(), ModelError<F>> {
        if k < 2 {
            return Ok(());
        }
        for round in 1..=max_iterations {
            let (map, hm, _) = self.induced(k)?;
            let kernel = linalg::kernel(&map);
            if kernel.is_zero() {
                return Ok(());
            }
            let stage = if final_pass {
                Stage::FinalPass { round }
            } else {
                Stage::YIteration { target: k, round }
            };
            let images = self.images();
            for w in kernel.basis_vectors() {
                let z = hm.combine(&w);
                let c = apply_phi(self.a, &images, &z)?;
                let b = self.a.coboundary_preimage(&c)?;
                self.add(GeneratorKind::Y, k - 1, z, b, stage);
            }
            self.rebuild()?;
        }
        let (map, _, _) = self.induced(k)?;
        if linalg::kernel(&map).is_zero() {
            Ok(())
        } else {
            Err(ModelError::IterationLimitExceeded {
                target_degree: k,
                max_iterations,
                partial: Box::new(self.finish()),
            })
        }
    }

    /// Adds closed generators of degree `k` completing the image of `φ*_k`.
    fn x_step(&mut self, k: u32) -> Result<(), AlgebraError> {
        let (map, _, ha) = self.induced(k)?;
        let image = linalg::image(&map);
        let complement = linalg::quotient_basis(&Subspace::full(ha.dim()), &image).expect("image lies in the full space");
        if complement.is_empty() {
            return Ok(());
        }
        let stage = if self.generators.is_empty() {
            Stage::FirstStep
        } else {
            Stage::XStep(k)
        };
        for u in complement {
            self.add(GeneratorKind::X, k, Element::zero(), ha.combine(&u), stage);
        }
        self.rebuild()
    }

    fn finish(&self) -> MinimalModel<F> {
        let n = self.table.len();
        let generators = self
            .generators
            .iter()
            .map(|g| ModelGenerator {
                differential: g.differential.resized(n).expect("grows only"),
                ..g.clone()
            })
            .collect();
        MinimalModel {
            degree: self.degree,
            generators,
            model: self.model.clone(),
            target_table: self.a.table().clone(),
            invariants: self.invariants.clone(),
        }
    }
}

/// The `i`-minimal model of `a`. The target must be valid and known up to
/// degree `i + 2`.
pub fn minimal_model<F: Scalar>(a: &Dga<F>, i: u32, max_iterations: u32) -> Result<MinimalModel<F>, ModelError<F>> {
    if a.degree_bound() < i + 2 {
        return Err(ModelError::InsufficientBound {
            bound: a.degree_bound(),
            required: i + 2,
        });
    }
    let report = a.validate();
    if !report.is_valid() {
        return Err(ModelError::InvalidTarget(report));
    }
    let mut b = Builder::new(a, i)?;
    for k in 1..=i {
        b.y_iteration(k, max_iterations, false)?;
        b.x_step(k)?;
    }
    b.y_iteration(i + 1, max_iterations, true)?;
    Ok(b.finish())
}

/// Outcome of checking `φ*_k` for every `k ≤ i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuasiIsomorphismReport {
    /// `(k, problem)` for each failing degree.
    pub failures: Vec<(u32, String)>,
}

impl QuasiIsomorphismReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `φ*_k` is bijective for `k ≤ i` and injective for `k = i + 1`.
pub fn verify_quasi_isomorphism<F: Scalar>(
    m: &MinimalModel<F>,
    a: &Dga<F>,
) -> Result<QuasiIsomorphismReport, AlgebraError> {
    let mut report = QuasiIsomorphismReport::default();
    for k in 1..=m.degree + 1 {
        let (map, hm, ha) = m.induced_map_on_hk(a, k)?;
        let rank = map.rank();
        if rank < hm.dim() {
            report
                .failures
                .push((k, format!("not injective: rank {rank}, dim H^{k}(M) = {}", hm.dim())));
        }
        if k <= m.degree && rank < ha.dim() {
            report
                .failures
                .push((k, format!("not surjective: rank {rank}, dim H^{k}(A) = {}", ha.dim())));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MinimalityReport {
    pub failures: Vec<String>,
}

impl MinimalityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Structural checks on a model: freeness, degrees, ordering of differentials,
/// kinds, and a replay showing that no `y` differential was already exact when
/// its generator was added.
pub fn verify_minimality<F: Scalar>(m: &MinimalModel<F>) -> Result<MinimalityReport, AlgebraError> {
    let mut report = MinimalityReport::default();
    let dga = m.model();
    let table = dga.table();
    if !dga.relations().is_empty() {
        report.failures.push("model has relations".into());
    }
    for (p, g) in m.generators.iter().enumerate() {
        let d = dga.generator_differential(p);
        if g.degree == 0 || g.degree > m.degree {
            report.failures.push(format!("{} has degree {} outside 1..={}", g.name, g.degree, m.degree));
        }
        if let Some(&late) = d.support().iter().find(|&&q| q >= p) {
            report
                .failures
                .push(format!("d({}) uses {}, which is not an earlier generator", g.name, table.name(late)));
            continue;
        }
        if d.terms().any(|(mono, _)| mono.exponents().iter().sum::<u32>() == 1) {
            report.failures.push(format!("d({}) has a linear part", g.name));
        }
        match g.kind {
            GeneratorKind::X if !d.is_zero() => {
                report.failures.push(format!("{} is of kind x but d({}) = {}", g.name, g.name, table.render(d)));
            }
            GeneratorKind::Y if d.is_zero() => {
                report.failures.push(format!("{} is of kind y but closed", g.name));
            }
            GeneratorKind::Y => {
                let prefix = GeneratorTable::new(m.generators[..p].iter().map(|h| (h.name.clone(), h.degree)))?;
                // Earlier ordering failures are already reported; skip the replay.
                let Some(diffs) = (0..p)
                    .map(|q| dga.generator_differential(q).resized(p))
                    .collect::<Option<Vec<_>>>()
                else {
                    continue;
                };
                let sub = Dga::free(prefix, diffs, m.degree + 2)?;
                let z = d.resized(p).expect("checked ordering");
                let dz = sub.extend_differential(&z)?;
                if !dz.is_zero() {
                    report.failures.push(format!("d({}) is not a cocycle of the earlier generators", g.name));
                } else if sub.coboundary_preimage(&z).is_ok() {
                    report
                        .failures
                        .push(format!("d({}) = {} is already exact when {} is added", g.name, table.render(d), g.name));
                }
            }
            GeneratorKind::X => {}
        }
    }
    Ok(report)
}
