#![allow(dead_code)]

use cdga::expr::parse_element;
use cdga::{Dga, GeneratorTable, QElement};

pub fn build(gens: &[(&str, u32)], diffs: &[(&str, &str)], rels: &[&str], bound: u32) -> Dga<cdga::Rational> {
    let table = GeneratorTable::new(gens.iter().map(|(n, d)| (n.to_string(), *d))).unwrap();
    let parse = |s: &str| -> QElement { parse_element(&table, s).unwrap() };
    let mut d: Vec<QElement> = vec![QElement::zero(); table.len()];
    for (name, expr) in diffs {
        d[table.index_of(name).unwrap()] = parse(expr);
    }
    let relations = rels.iter().map(|r| parse(r)).collect();
    Dga::new(table.clone(), relations, d, bound).unwrap()
}

/// Six closed-or-not degree-1 generators and one degree-2 generator.
pub fn worked_example(bound: u32) -> Dga<cdga::Rational> {
    build(
        &[("e1", 1), ("e2", 1), ("e3", 1), ("e4", 1), ("e5", 1), ("e6", 1), ("e7", 2)],
        &[("e1", "-e1*e6"), ("e2", "-e2*e6"), ("e3", "-e3*e6"), ("e4", "-e5*e6")],
        &[],
        bound,
    )
}

pub fn wedge_of_spheres(bound: u32) -> Dga<cdga::Rational> {
    build(&[("e2", 2), ("e3", 3)], &[], &["e2^2", "e2*e3"], bound)
}

const FIVE: [(&str, u32); 5] = [("x1", 1), ("x2", 1), ("x3", 1), ("x4", 1), ("x5", 1)];

/// Nilpotent Lie algebra with structure equations from Bock's list (5.14).
pub fn g514(bound: u32) -> Dga<cdga::Rational> {
    build(&FIVE, &[("x1", "-x2*x5"), ("x4", "x3*x5"), ("x3", "-x4*x5")], &[], bound)
}

/// Solvable Lie algebra from Bock's list (5.35).
pub fn g535(bound: u32) -> Dga<cdga::Rational> {
    build(
        &FIVE,
        &[("x1", "2*x1*x4"), ("x2", "-x2*x4 - x3*x5"), ("x3", "-x3*x4 + x2*x5")],
        &[],
        bound,
    )
}
