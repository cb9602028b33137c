//! Sparse multivariate Laurent polynomials over arbitrary-precision
//! integers.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, ordered
//! lexicographically with the first variable most significant. The map
//! never stores a zero coefficient, so structural equality is canonical
//! equality of rational expressions. Exact division is multivariate long
//! division by the lexicographic leading term after clearing minimal
//! exponents; a non-divisible input fails with the remainder as witness.
//!
//! The canonical text format prints terms in descending lexicographic
//! order, e.g. `x1*x3 + x2 + 1`, and is the interchange format of the CLI
//! and the golden-file reports.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::seqprops::CoefficientArray;

/// Dense coefficient boxes larger than this many cells are refused.
pub const MAX_BOX_CELLS: u128 = 100_000_000;

/// Errors from Laurent-polynomial arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LaurentError {
    RankMismatch { left: usize, right: usize },
    /// Exact division failed; carries the remainder at the failing step, so
    /// that `dividend = quotient_so_far * divisor + remainder`.
    NotDivisible { remainder: Box<LaurentPolynomial> },
    DivisionByZero,
    ZeroPolynomial,
    /// Evaluation point has a zero entry at this variable index.
    ZeroEvaluationPoint { index: usize },
    /// A coefficient box exceeded [`MAX_BOX_CELLS`].
    BoxTooLarge { cells: u128 },
    /// Negative coefficient where a nonnegative array was requested.
    NegativeCoefficient,
}

impl fmt::Display for LaurentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentError::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
            LaurentError::NotDivisible { remainder } => {
                write!(f, "not divisible, remainder {remainder}")
            }
            LaurentError::DivisionByZero => write!(f, "division by the zero polynomial"),
            LaurentError::ZeroPolynomial => write!(f, "operation undefined for the zero polynomial"),
            LaurentError::ZeroEvaluationPoint { index } => {
                write!(f, "evaluation point has zero entry for x{}", index + 1)
            }
            LaurentError::BoxTooLarge { cells } => {
                write!(f, "coefficient box of {cells} cells exceeds the {MAX_BOX_CELLS}-cell guard")
            }
            LaurentError::NegativeCoefficient => {
                write!(f, "negative coefficient in a nonnegative coefficient array")
            }
        }
    }
}

impl std::error::Error for LaurentError {}

/// Exponent vector of fixed length equal to the ambient rank.
///
/// The derived ordering is lexicographic with the first entry most
/// significant; all vectors in one polynomial share the same length, so the
/// ordering is total.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<i32>);

impl ExponentVector {
    pub fn new(entries: Vec<i32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(rank: usize) -> Self {
        ExponentVector(vec![0; rank])
    }

    /// The exponent vector of the single variable `x_{var+1}`.
    pub fn unit(rank: usize, var: usize) -> Self {
        let mut entries = vec![0; rank];
        entries[var] = 1;
        ExponentVector(entries)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference, `None` when any entry would go negative
    /// (used by the long-division divisibility test).
    fn sub_nonneg(&self, other: &ExponentVector) -> Option<ExponentVector> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            let d = a - b;
            if d < 0 {
                return None;
            }
            out.push(d);
        }
        Some(ExponentVector(out))
    }

    fn shifted(&self, delta: &[i32]) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .zip(delta)
                .map(|(a, d)| a + d)
                .collect(),
        )
    }
}

/// Sparse Laurent polynomial in `rank` variables over `BigInt`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPolynomial {
    rank: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

/// Numerator/denominator-exponent normal form of a nonzero Laurent
/// polynomial: `poly = numerator / prod_j x_j^(dvector[j])` where the
/// numerator is a true polynomial not divisible by any variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub numerator: LaurentPolynomial,
    pub dvector: Vec<i32>,
}

impl LaurentPolynomial {
    pub fn zero(rank: usize) -> Self {
        LaurentPolynomial {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigInt::one())
    }

    pub fn constant(rank: usize, value: BigInt) -> Self {
        let mut p = Self::zero(rank);
        if !value.is_zero() {
            p.terms.insert(ExponentVector::zero(rank), value);
        }
        p
    }

    /// The variable `x_{var+1}`.
    pub fn variable(rank: usize, var: usize) -> Self {
        assert!(var < rank, "variable index {var} out of rank {rank}");
        let mut p = Self::zero(rank);
        p.terms.insert(ExponentVector::unit(rank, var), BigInt::one());
        p
    }

    pub fn monomial(rank: usize, exponents: Vec<i32>, coefficient: BigInt) -> Self {
        assert_eq!(exponents.len(), rank);
        let mut p = Self::zero(rank);
        if !coefficient.is_zero() {
            p.terms.insert(ExponentVector::new(exponents), coefficient);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (Vec<i32>, BigInt)>,
    {
        let mut p = Self::zero(rank);
        for (exps, coeff) in terms {
            if exps.len() != rank {
                return Err(LaurentError::RankMismatch {
                    left: rank,
                    right: exps.len(),
                });
            }
            p.insert_term(ExponentVector::new(exps), coeff);
        }
        Ok(p)
    }

    fn insert_term(&mut self, exp: ExponentVector, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&ExponentVector::zero(self.rank))
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[i32]) -> BigInt {
        self.terms
            .get(&ExponentVector::new(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Leading term under the lexicographic order.
    fn leading_term(&self) -> Option<(&ExponentVector, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn check_rank(&self, other: &Self) -> Result<(), LaurentError> {
        if self.rank != other.rank {
            return Err(LaurentError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    fn mul_term(&self, exp: &ExponentVector, coeff: &BigInt) -> Self {
        LaurentPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(exp), c * coeff))
                .collect(),
        }
    }

    /// Square-and-multiply power; `pow(p, 0)` is the constant 1.
    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = Self::one(self.rank);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("equal ranks");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("equal ranks");
            }
        }
        result
    }

    /// Per-variable minimum exponent over the support; `None` for zero.
    pub fn min_exponents(&self) -> Option<Vec<i32>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut mins = first.entries().to_vec();
        for e in it {
            for (m, &v) in mins.iter_mut().zip(e.entries()) {
                if v < *m {
                    *m = v;
                }
            }
        }
        Some(mins)
    }

    fn max_exponents(&self) -> Option<Vec<i32>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut maxs = first.entries().to_vec();
        for e in it {
            for (m, &v) in maxs.iter_mut().zip(e.entries()) {
                if v > *m {
                    *m = v;
                }
            }
        }
        Some(maxs)
    }

    /// Multiplies by the monomial `prod_j x_j^(delta[j])`.
    fn shifted(&self, delta: &[i32]) -> Self {
        LaurentPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.shifted(delta), c.clone()))
                .collect(),
        }
    }

    /// Exact division: returns `r` with `r * divisor = self`, or a
    /// [`LaurentError::NotDivisible`] carrying the remainder. When fed from
    /// a mutation chain the division is guaranteed by the Laurent
    /// phenomenon, so the error firing there indicates a bug.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, LaurentError> {
        self.check_rank(divisor)?;
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.rank));
        }
        // clear minimal exponents so both operands are true polynomials
        let a_min = self.min_exponents().expect("nonzero");
        let b_min = divisor.min_exponents().expect("nonzero");
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let p = self.shifted(&neg(&a_min));
        let q = divisor.shifted(&neg(&b_min));
        let (q_lead_exp, q_lead_coeff) = q.leading_term().expect("nonzero divisor");
        let q_lead_exp = q_lead_exp.clone();
        let q_lead_coeff = q_lead_coeff.clone();

        let mut remainder = p;
        let mut quotient = Self::zero(self.rank);
        while let Some((r_exp, r_coeff)) = remainder.leading_term() {
            let not_divisible = || LaurentError::NotDivisible {
                remainder: Box::new(remainder.shifted(&a_min)),
            };
            let Some(exp) = r_exp.sub_nonneg(&q_lead_exp) else {
                return Err(not_divisible());
            };
            let (coeff, rem) = r_coeff.div_rem(&q_lead_coeff);
            if !rem.is_zero() {
                return Err(not_divisible());
            }
            remainder = remainder.sub(&q.mul_term(&exp, &coeff))?;
            quotient.insert_term(exp, coeff);
        }
        // undo the exponent clearing: self/divisor = (p/q) * x^(a_min - b_min)
        let delta: Vec<i32> = a_min.iter().zip(&b_min).map(|(a, b)| a - b).collect();
        Ok(quotient.shifted(&delta))
    }

    /// Numerator and d-vector of equation-style normal form:
    /// `dvector[j]` is the negated minimum exponent of `x_j`, and the
    /// numerator attains exponent 0 in every variable.
    pub fn normalize(&self) -> Result<NormalForm, LaurentError> {
        let mins = self.min_exponents().ok_or(LaurentError::ZeroPolynomial)?;
        let dvector: Vec<i32> = mins.iter().map(|m| -m).collect();
        Ok(NormalForm {
            numerator: self.shifted(&dvector),
            dvector,
        })
    }

    /// Exact substitution at a point of nonzero rationals.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, LaurentError> {
        if point.len() != self.rank {
            return Err(LaurentError::RankMismatch {
                left: self.rank,
                right: point.len(),
            });
        }
        if let Some(index) = point.iter().position(|v| v.is_zero()) {
            return Err(LaurentError::ZeroEvaluationPoint { index });
        }
        let mut total = BigRational::zero();
        for (exp, coeff) in &self.terms {
            let mut term = BigRational::from_integer(coeff.clone());
            for (&e, v) in exp.entries().iter().zip(point) {
                term *= rational_pow(v, e);
            }
            total += term;
        }
        Ok(total)
    }

    /// Dense coefficient array over the tight bounding box of the support,
    /// with per-axis offsets recorded. Requires a nonzero polynomial with
    /// nonnegative coefficients and a box within [`MAX_BOX_CELLS`].
    pub fn coefficient_array(&self) -> Result<CoefficientArray, LaurentError> {
        let mins = self.min_exponents().ok_or(LaurentError::ZeroPolynomial)?;
        let maxs = self.max_exponents().expect("nonzero");
        let lens: Vec<usize> = mins
            .iter()
            .zip(&maxs)
            .map(|(lo, hi)| (hi - lo) as usize + 1)
            .collect();
        let cells = lens.iter().map(|&l| l as u128).product::<u128>();
        if cells > MAX_BOX_CELLS {
            return Err(LaurentError::BoxTooLarge { cells });
        }
        let mut data = vec![BigInt::zero(); cells as usize];
        for (exp, coeff) in &self.terms {
            if coeff.is_negative() {
                return Err(LaurentError::NegativeCoefficient);
            }
            let mut flat = 0usize;
            for ((&e, &lo), &len) in exp.entries().iter().zip(&mins).zip(&lens) {
                flat = flat * len + (e - lo) as usize;
            }
            data[flat] = coeff.clone();
        }
        Ok(CoefficientArray::from_dense(mins, lens, data).expect("shape consistent"))
    }

    /// Table-style fraction rendering `(numerator)/(monomial)`, with the
    /// default `x1..xn` variable names.
    pub fn fraction_string(&self) -> String {
        let names: Vec<String> = (1..=self.rank).map(|i| format!("x{i}")).collect();
        self.fraction_string_with(&names)
    }

    /// Fraction rendering with caller-supplied variable names.
    pub fn fraction_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let nf = self.normalize().expect("nonzero");
        let mut numer = nf.numerator;
        // variables with negative d-vector entries stay in the numerator
        let lift: Vec<i32> = nf.dvector.iter().map(|&d| if d < 0 { -d } else { 0 }).collect();
        if lift.iter().any(|&d| d != 0) {
            numer = numer.shifted(&lift);
        }
        let numer_str = numer.display_with(names);
        let denom_factors: Vec<String> = nf
            .dvector
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(j, &d)| {
                if d == 1 {
                    names[j].clone()
                } else {
                    format!("{}^{}", names[j], d)
                }
            })
            .collect();
        if denom_factors.is_empty() {
            return numer_str;
        }
        let numer_part = if numer.num_terms() > 1 {
            format!("({numer_str})")
        } else {
            numer_str
        };
        let denom_part = if denom_factors.len() > 1 {
            format!("({})", denom_factors.join("*"))
        } else {
            denom_factors.join("*")
        };
        format!("{numer_part}/{denom_part}")
    }

    fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (exp, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let abs = coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            for (j, &e) in exp.entries().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    factors.push(names[j].clone());
                } else {
                    factors.push(format!("{}^{}", names[j], e));
                }
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl NormalForm {
    /// Reconstructs the original Laurent polynomial,
    /// `numerator / prod_j x_j^(dvector[j])`.
    pub fn reconstruct(&self) -> LaurentPolynomial {
        let neg: Vec<i32> = self.dvector.iter().map(|d| -d).collect();
        self.numerator.shifted(&neg)
    }
}

fn rational_pow(base: &BigRational, exponent: i32) -> BigRational {
    if exponent >= 0 {
        num::pow::pow(base.clone(), exponent as usize)
    } else {
        num::pow::pow(base.recip(), (-exponent) as usize)
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Canonical text format: terms in descending lexicographic order,
    /// decimal coefficients, `x1^e1*x2^e2*...` with zero exponents and unit
    /// coefficients omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.rank).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}
