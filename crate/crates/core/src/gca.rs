//! Free graded-commutative algebras over an exact field.
//!
//! A monomial is an exponent vector over a fixed [`GeneratorTable`]. Products
//! are normal-ordered in table order, picking up a sign for every
//! transposition of two odd-degree factors; odd generators square to zero.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generator `{0}` has degree 0; only connected algebras are supported")]
    DegreeZeroGenerator(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("exponent vector of length {found} used with a table of {expected} generators")]
    TableMismatch { expected: usize, found: usize },
    #[error("element is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("degree {degree} exceeds the computed bound {bound}")]
    DegreeOutOfBound { degree: u32, bound: u32 },
    #[error("expected an element of degree {expected}, found degree {found}: {element}")]
    WrongDegree {
        expected: u32,
        found: u32,
        element: String,
    },
    #[error("zero relation")]
    ZeroRelation,
    #[error("{0} is not a cocycle")]
    NotACocycle(String),
    #[error("{0} is not a coboundary")]
    NotACoboundary(String),
}

/// Names and degrees of the generators, in their fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GeneratorTable {
    names: Vec<String>,
    degrees: Vec<u32>,
}

impl GeneratorTable {
    pub fn new<S: Into<String>>(
        gens: impl IntoIterator<Item = (S, u32)>,
    ) -> Result<Self, AlgebraError> {
        let mut table = GeneratorTable::default();
        for (name, degree) in gens {
            table.push(name.into(), degree)?;
        }
        Ok(table)
    }

    /// Appends a generator after all existing ones.
    pub fn push(&mut self, name: String, degree: u32) -> Result<usize, AlgebraError> {
        if degree == 0 {
            return Err(AlgebraError::DegreeZeroGenerator(name));
        }
        if self.names.contains(&name) {
            return Err(AlgebraError::DuplicateGenerator(name));
        }
        self.names.push(name);
        self.degrees.push(degree);
        Ok(self.names.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.degrees[i] % 2 == 1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn unit(&self) -> Monomial {
        Monomial {
            degree: 0,
            exps: vec![0; self.len()],
        }
    }

    pub fn generator_monomial(&self, i: usize) -> Monomial {
        let mut exps = vec![0; self.len()];
        exps[i] = 1;
        Monomial {
            degree: self.degrees[i],
            exps,
        }
    }

    /// Builds a monomial from an exponent vector. Odd generators with exponent
    /// above one yield `None`.
    pub fn monomial(&self, exps: Vec<u32>) -> Result<Option<Monomial>, AlgebraError> {
        self.check_len(exps.len())?;
        if (0..self.len()).any(|i| self.is_odd(i) && exps[i] > 1) {
            return Ok(None);
        }
        let degree = exps.iter().zip(&self.degrees).map(|(e, d)| e * d).sum();
        Ok(Some(Monomial { degree, exps }))
    }

    fn check_len(&self, found: usize) -> Result<(), AlgebraError> {
        if found == self.len() {
            Ok(())
        } else {
            Err(AlgebraError::TableMismatch {
                expected: self.len(),
                found,
            })
        }
    }

    /// Product of two monomials with its Koszul sign, or `None` if an odd
    /// generator would appear twice.
    pub fn monomial_product(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let mut odd_in_a_after = 0usize;
        // Walk b's odd generators from the left; each must pass every odd factor
        // of a sitting at a larger index.
        let mut a_odd_suffix = vec![0usize; self.len() + 1];
        for i in (0..self.len()).rev() {
            let odd_here = self.is_odd(i) && a.exps[i] == 1;
            a_odd_suffix[i] = a_odd_suffix[i + 1] + usize::from(odd_here);
        }
        for i in 0..self.len() {
            if self.is_odd(i) && b.exps[i] == 1 {
                if a.exps[i] == 1 {
                    return None;
                }
                odd_in_a_after += a_odd_suffix[i + 1];
            }
        }
        let negative = odd_in_a_after % 2 == 1;
        let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
        Some((
            negative,
            Monomial {
                degree: a.degree + b.degree,
                exps,
            },
        ))
    }

    /// Sorts a word of generator powers into table order.
    pub fn normal_order(&self, word: &[(usize, u32)]) -> Result<Option<(bool, Monomial)>, AlgebraError> {
        let mut acc = (false, self.unit());
        for &(g, power) in word {
            if g >= self.len() {
                return Err(AlgebraError::UnknownGenerator(format!("#{g}")));
            }
            for _ in 0..power {
                match self.monomial_product(&acc.1, &self.generator_monomial(g)) {
                    Some((neg, m)) => acc = (acc.0 ^ neg, m),
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(acc))
    }

    pub fn multiply<F: Scalar>(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>, AlgebraError> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked<F: Scalar>(&self, a: &Element<F>, b: &Element<F>) -> Element<F> {
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((neg, m)) = self.monomial_product(ma, mb) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    fn check_element<F>(&self, x: &Element<F>) -> Result<(), AlgebraError> {
        match x.terms.keys().next() {
            Some(m) => self.check_len(m.exps.len()),
            None => Ok(()),
        }
    }

    pub fn generator<F: Scalar>(&self, i: usize) -> Element<F> {
        Element::from_monomial(self.generator_monomial(i))
    }

    pub fn one<F: Scalar>(&self) -> Element<F> {
        Element::from_monomial(self.unit())
    }

    /// `g^power` for a generator.
    pub fn power<F: Scalar>(&self, g: usize, power: u32) -> Element<F> {
        let mut exps = vec![0; self.len()];
        exps[g] = power;
        match self.monomial(exps).expect("table length") {
            Some(m) => Element::from_monomial(m),
            None => Element::zero(),
        }
    }

    /// `true` iff `a·b = (-1)^{|a||b|} b·a`.
    pub fn graded_commutator_check<F: Scalar>(
        &self,
        a: &Element<F>,
        b: &Element<F>,
    ) -> Result<bool, AlgebraError> {
        let da = homogeneous_degree(self, a)?;
        let db = homogeneous_degree(self, b)?;
        let ab = self.multiply(a, b)?;
        let ba = self.multiply(b, a)?;
        let expected = if da * db % 2 == 1 { -ba } else { ba };
        Ok(ab == expected)
    }

    /// All monomials of degree `k`, largest first.
    pub fn homogeneous_monomials(&self, k: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.len()];
        self.enumerate(0, k, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    fn enumerate(&self, i: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == self.len() {
            if remaining == 0 {
                out.push(Monomial {
                    degree: exps.iter().zip(&self.degrees).map(|(e, d)| e * d).sum(),
                    exps: exps.clone(),
                });
            }
            return;
        }
        let d = self.degrees[i];
        let max = if self.is_odd(i) { 1 } else { remaining / d };
        for e in 0..=max.min(remaining / d) {
            exps[i] = e;
            self.enumerate(i + 1, remaining - e * d, exps, out);
        }
        exps[i] = 0;
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Text form of an element: terms from smallest to largest monomial, `-`
    /// absorbed into the sign, the unit monomial rendered as a bare coefficient.
    pub fn render<F: Scalar>(&self, x: &Element<F>) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in x.terms().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.degree == 0 {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&self.render_monomial(m));
            } else {
                out.push_str(&format!("{}*{}", abs, self.render_monomial(m)));
            }
        }
        out
    }
}

fn homogeneous_degree<F: Scalar>(table: &GeneratorTable, x: &Element<F>) -> Result<u32, AlgebraError> {
    x.degree()
        .ok_or_else(|| AlgebraError::NonHomogeneous(table.render(x)))
}

/// A normal-ordered monomial: an exponent vector together with its total degree.
///
/// Ordered by total degree, then lexicographically with later generators more
/// significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_unit(&self) -> bool {
        self.degree == 0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn cofactor_in(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: other.degree - self.degree,
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        }
    }

    /// The same monomial over a table with `len` generators sharing a prefix
    /// with the current one. `None` if a dropped generator occurs.
    pub fn resized(&self, len: usize) -> Option<Monomial> {
        if self.exps.iter().skip(len).any(|&e| e > 0) {
            return None;
        }
        let mut exps = self.exps.clone();
        exps.resize(len, 0);
        Some(Monomial {
            degree: self.degree,
            exps,
        })
    }

    pub fn lcm(&self, other: &Monomial, table: &GeneratorTable) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        table.monomial(exps).expect("table length").expect("lcm of valid monomials")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            self.exps.len().cmp(&other.exps.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of monomials with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> Element<F> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::term(m, F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn constant(table: &GeneratorTable, c: F) -> Self {
        Self::term(table.unit(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the smallest monomial to the largest.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    /// The common degree of all terms; `Some(0)` for zero, `None` when mixed.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Some(0),
            Some(d) => degrees.all(|e| e == d).then_some(d),
        }
    }

    /// Degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            self.degree()
        }
    }

    /// Splits into homogeneous components, keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Element<F>> {
        let mut parts: BTreeMap<u32, Element<F>> = BTreeMap::new();
        for (m, c) in self.terms() {
            parts.entry(m.degree()).or_insert_with(Element::zero).add_term(m.clone(), c.clone());
        }
        parts
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Element<F>, c: &F) {
        if c.is_zero() {
            return;
        }
        for (m, x) in other.terms() {
            self.add_term(m.clone(), x.clone() * c.clone());
        }
    }

    /// Moves the element to a table with `len` generators sharing a prefix with
    /// the current one; `None` if a dropped generator occurs.
    pub fn resized(&self, len: usize) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in self.terms() {
            terms.insert(m.resized(len)?, c.clone());
        }
        Some(Element { terms })
    }

    /// Indices of generators occurring in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for m in self.terms.keys() {
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 && !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&F) -> F) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Coordinates against an indexed monomial basis. Monomials outside the
    /// basis are reported as `Err(monomial)`.
    pub fn to_vector(&self, index: &HashMap<Monomial, usize>, len: usize) -> Result<Vec<F>, Monomial> {
        let mut v = vec![F::zero(); len];
        for (m, c) in self.terms() {
            match index.get(m) {
                Some(&i) => v[i] = c.clone(),
                None => return Err(m.clone()),
            }
        }
        Ok(v)
    }

    pub fn from_vector(basis: &[Monomial], v: &[F]) -> Self {
        let mut out = Self::zero();
        for (m, c) in basis.iter().zip(v) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<F: Scalar> std::ops::Add for &Element<F> {
    type Output = Element<F>;
    fn add(self, rhs: &Element<F>) -> Element<F> {
        let mut out = self.clone();
        out.add_scaled(rhs, &F::one());
        out
    }
}

impl<F: Scalar> std::ops::Sub for &Element<F> {
    type Output = Element<F>;
    fn sub(self, rhs: &Element<F>) -> Element<F> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-F::one());
        out
    }
}

impl<F: Scalar> std::ops::Neg for Element<F> {
    type Output = Element<F>;
    fn neg(self) -> Element<F> {
        Element {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<F: fmt::Debug> fmt::Debug for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c:?})*{:?}", m.exps))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
