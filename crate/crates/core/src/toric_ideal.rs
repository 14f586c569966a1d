//! Binomial relations among the monomials `x_σ = Π_{v∈σ} t_v` of the
//! simplices of size at least two.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{integer_kernel, IntegerMatrix, Sublattice};
use crate::simplicial::{coordinate_simplices, exponent_map, LabeledComplex, MultisetSimplex};

/// Largest number of monomials [`enumerate_binomials`] will generate.
pub const MONOMIAL_CAP: usize = 2_000_000;

/// `x^plus − x^minus`, exponents indexed by the coordinate simplices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinomialRelation {
    pub plus: Vec<u32>,
    pub minus: Vec<u32>,
    /// Degree of either side in the `t` variables.
    pub degree: u32,
}

impl BinomialRelation {
    /// Build from two exponent vectors, cancelling common factors. The side
    /// free of the earliest coordinate present comes first (the
    /// lexicographically smaller exponent vector).
    pub fn new(c: &LabeledComplex, plus: Vec<u32>, minus: Vec<u32>) -> Self {
        let (mut p, mut m) = (plus, minus);
        for (a, b) in p.iter_mut().zip(m.iter_mut()) {
            let common = (*a).min(*b);
            *a -= common;
            *b -= common;
        }
        if p > m {
            std::mem::swap(&mut p, &mut m);
        }
        let cols = coordinate_simplices(c);
        let degree = p.iter().zip(&cols).map(|(&e, s)| e * s.len() as u32).sum();
        BinomialRelation { plus: p, minus: m, degree }
    }

    /// Degree of the larger side in the `x` variables.
    pub fn x_degree(&self) -> u32 {
        self.plus.iter().sum::<u32>().max(self.minus.iter().sum())
    }

    /// `plus − minus` as an integer vector.
    pub fn difference(&self) -> Vec<i64> {
        self.plus.iter().zip(&self.minus).map(|(&a, &b)| a as i64 - b as i64).collect()
    }

    /// Render as e.g. `x_{234}^2 - x_{23}x_{24}x_{34}`.
    pub fn format(&self, c: &LabeledComplex) -> String {
        let cols = coordinate_simplices(c);
        format!("{} - {}", format_monomial(c, &cols, &self.plus), format_monomial(c, &cols, &self.minus))
    }

    /// Parse `lhs - rhs`, accepting `x_{234}^2`, `x_{234}^{2}` and `x^{2}_{234}`.
    pub fn parse(c: &LabeledComplex, text: &str) -> Result<Self> {
        let cols = coordinate_simplices(c);
        let (lhs, rhs) = text
            .split_once('-')
            .ok_or_else(|| Error::Format(format!("expected 'lhs - rhs' in '{text}'")))?;
        let plus = parse_monomial(c, &cols, lhs)?;
        let minus = parse_monomial(c, &cols, rhs)?;
        let degree_of = |e: &[u32]| e.iter().zip(&cols).map(|(&x, s)| x * s.len() as u32).sum::<u32>();
        let degree = degree_of(&plus).max(degree_of(&minus));
        Ok(BinomialRelation { plus, minus, degree })
    }
}

fn format_monomial(c: &LabeledComplex, cols: &[MultisetSimplex], e: &[u32]) -> String {
    let mut out = String::new();
    for (s, &k) in cols.iter().zip(e) {
        match k {
            0 => {}
            1 => out.push_str(&c.coordinate_name(s)),
            _ => {
                let _ = write!(out, "{}^{k}", c.coordinate_name(s));
            }
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

fn parse_monomial(c: &LabeledComplex, cols: &[MultisetSimplex], text: &str) -> Result<Vec<u32>> {
    let mut e = vec![0u32; cols.len()];
    let s: String = text.chars().filter(|ch| !ch.is_whitespace() && *ch != '*').collect();
    if s == "1" {
        return Ok(e);
    }
    let bad = |why: &str| Error::Format(format!("{why} in monomial '{}'", text.trim()));
    let mut rest = s.as_str();
    // Braced group or a single digit.
    fn group(rest: &str) -> Option<(&str, &str)> {
        if let Some(body) = rest.strip_prefix('{') {
            let end = body.find('}')?;
            Some((&body[..end], &body[end + 1..]))
        } else {
            let ch = rest.chars().next()?;
            Some((&rest[..ch.len_utf8()], &rest[ch.len_utf8()..]))
        }
    }
    while !rest.is_empty() {
        rest = rest.strip_prefix('x').ok_or_else(|| bad("expected 'x'"))?;
        let mut power = 1u32;
        let mut name = None;
        while let Some(ch) = rest.chars().next() {
            match ch {
                '_' if name.is_none() => {
                    let (g, r) = group(&rest[1..]).ok_or_else(|| bad("unterminated subscript"))?;
                    name = Some(g.to_string());
                    rest = r;
                }
                '^' => {
                    let (g, r) = group(&rest[1..]).ok_or_else(|| bad("unterminated exponent"))?;
                    power = g.parse().map_err(|_| bad("bad exponent"))?;
                    rest = r;
                }
                _ => break,
            }
        }
        let name = name.ok_or_else(|| bad("missing subscript"))?;
        let simplex = c.parse_coordinate(&name)?;
        let idx = cols
            .iter()
            .position(|s| *s == simplex)
            .ok_or_else(|| Error::Format(format!("x_{{{name}}} is not a coordinate of the complex")))?;
        e[idx] += power;
    }
    Ok(e)
}

/// Kernel of the exponent map restricted to simplices of size at least two.
pub fn relation_lattice(c: &LabeledComplex) -> Sublattice<BigInt> {
    let m: IntegerMatrix<BigInt> = exponent_map(c, true).cast().expect("small entries");
    integer_kernel(&m)
}

/// `t`-exponent vector of a monomial in the coordinates.
fn t_exponent(m: &IntegerMatrix<i64>, e: &[u32]) -> Vec<i64> {
    (0..m.rows()).map(|r| m.row(r).iter().zip(e).map(|(&a, &k)| a * k as i64).sum()).collect()
}

/// Whether both sides map to the same monomial in `t`.
pub fn verify_relation(c: &LabeledComplex, r: &BinomialRelation) -> Result<bool> {
    let m = exponent_map(c, true);
    for side in [&r.plus, &r.minus] {
        if side.len() != m.cols() {
            return Err(Error::DimensionMismatch { expected: m.cols(), found: side.len() });
        }
    }
    Ok(t_exponent(&m, &r.plus) == t_exponent(&m, &r.minus))
}

/// Every binomial `x^u − x^v` with `u ≠ v` of disjoint supports, equal image
/// in `t`, and both sides of `x`-degree at most `max_degree`; sorted by
/// `t`-degree, then `x`-degree, then lexicographically.
pub fn enumerate_binomials(c: &LabeledComplex, max_degree: u32) -> Result<Vec<BinomialRelation>> {
    let m = exponent_map(c, true);
    let n = m.cols();
    let mut fibers: BTreeMap<Vec<i64>, Vec<Vec<u32>>> = BTreeMap::new();
    let mut count = 0usize;
    let mut e = vec![0u32; n];
    fn rec(
        m: &IntegerMatrix<i64>,
        pos: usize,
        left: u32,
        e: &mut Vec<u32>,
        fibers: &mut BTreeMap<Vec<i64>, Vec<Vec<u32>>>,
        count: &mut usize,
    ) -> Result<()> {
        if pos == e.len() {
            *count += 1;
            if *count > MONOMIAL_CAP {
                return Err(Error::InvalidParams(format!("more than {MONOMIAL_CAP} monomials; lower the degree")));
            }
            fibers.entry(t_exponent(m, e)).or_default().push(e.clone());
            return Ok(());
        }
        for k in 0..=left {
            e[pos] = k;
            rec(m, pos + 1, left - k, e, fibers, count)?;
        }
        e[pos] = 0;
        Ok(())
    }
    rec(&m, 0, max_degree, &mut e, &mut fibers, &mut count)?;
    let mut out = Vec::new();
    for monomials in fibers.values() {
        for (i, u) in monomials.iter().enumerate() {
            for v in &monomials[i + 1..] {
                if u.iter().zip(v).all(|(&a, &b)| a == 0 || b == 0) {
                    out.push(BinomialRelation::new(c, u.clone(), v.clone()));
                }
            }
        }
    }
    out.sort_by(|a, b| {
        a.degree.cmp(&b.degree).then_with(|| a.x_degree().cmp(&b.x_degree())).then_with(|| a.plus.cmp(&b.plus)).then_with(|| a.minus.cmp(&b.minus))
    });
    out.dedup();
    Ok(out)
}
