//! Exact univariate-polynomial analysis: Pochhammer symbols, terminating
//! Gauss hypergeometric sums, Jacobi polynomials, Pfaff-transformation
//! checks, Sturm-chain real-root counting, Newton's inequality, and the
//! S/T/theta binomial coefficient sequences.
//!
//! Everything runs over exact rationals; no floating point touches any
//! verdict path. Root counting uses the Sturm chain of the squarefree part,
//! so it counts distinct real roots; real-rootedness with multiplicity is
//! certified by peeling `gcd(p, p')` factors.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::fmt;

use crate::seqprops::{self, CheckReport, CoefficientArray, Witness};

pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalyticError {
    ZeroPolynomial,
    /// Neither upper parameter of the hypergeometric series is a
    /// nonpositive integer.
    NonTerminatingParameters,
    /// The denominator Pochhammer `(c)_n` vanishes before the series
    /// terminates.
    ZeroPochhammerDenominator { index: u32 },
    ParameterOutOfRange(&'static str),
    InvalidInterval,
    /// A stated precondition failed; distinct from a main-check failure.
    Precondition {
        check: &'static str,
        report: CheckReport,
    },
}

impl fmt::Display for AnalyticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticError::ZeroPolynomial => write!(f, "zero polynomial"),
            AnalyticError::NonTerminatingParameters => {
                write!(f, "hypergeometric series does not terminate")
            }
            AnalyticError::ZeroPochhammerDenominator { index } => {
                write!(f, "denominator Pochhammer vanishes at index {index}")
            }
            AnalyticError::ParameterOutOfRange(what) => write!(f, "parameter out of range: {what}"),
            AnalyticError::InvalidInterval => write!(f, "interval bounds are not ordered"),
            AnalyticError::Precondition { check, report } => {
                write!(f, "precondition `{check}` violated: {report}")
            }
        }
    }
}

impl std::error::Error for AnalyticError {}

/// Dense exact-rational univariate polynomial, constant term first. The
/// zero polynomial is the empty coefficient list; the leading coefficient
/// is otherwise nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Rat>,
}

impl UnivariatePolynomial {
    pub fn zero() -> Self {
        UnivariatePolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(value: Rat) -> Self {
        Self::from_coeffs(vec![value])
    }

    /// Trims trailing zeros into canonical form.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        UnivariatePolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..exponent {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dlen = divisor.coeffs.len();
        let dlead = divisor.leading_coefficient().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < dlen {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let lead = rem[i + dlen - 1].clone();
            if lead.is_zero() {
                continue;
            }
            let q = lead / &dlead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let delta = &q * d;
                rem[i + j] -= delta;
            }
            quot[i] = q;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.leading_coefficient() {
            let inv = lead.recip();
            return a.scale(&inv);
        }
        a
    }

    /// `self / gcd(self, self')`: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        let (q, r) = self.divmod(&g);
        debug_assert!(r.is_zero());
        q
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let abs = c.abs();
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Interval endpoint for root counting; infinities are resolved through
/// leading-coefficient sign analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Bound {
    fn less_than(&self, other: &Bound) -> bool {
        match (self, other) {
            (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, Bound::PosInf) => false,
            (Bound::NegInf, _) | (_, Bound::PosInf) => true,
            (Bound::PosInf, _) | (_, Bound::NegInf) => false,
            (Bound::Finite(a), Bound::Finite(b)) => a < b,
        }
    }
}

/// Sturm chain: `p`, `p'`, then negated Euclidean remainders, ending just
/// before the zero polynomial (the last entry is a gcd of `p` and `p'`, a
/// nonzero constant when `p` is squarefree). Entries are scaled by positive
/// constants, which leaves every sign evaluation unchanged.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<UnivariatePolynomial>,
}

impl SturmChain {
    pub fn new(p: &UnivariatePolynomial) -> Result<SturmChain, AnalyticError> {
        if p.is_zero() {
            return Err(AnalyticError::ZeroPolynomial);
        }
        let normalize = |q: UnivariatePolynomial| {
            match q.leading_coefficient() {
                Some(lead) => {
                    let inv = lead.abs().recip();
                    q.scale(&inv)
                }
                None => q,
            }
        };
        let mut chain = vec![normalize(p.clone())];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(normalize(d));
            loop {
                let (_, r) = chain[chain.len() - 2].divmod(&chain[chain.len() - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(normalize(r.neg()));
            }
        }
        Ok(SturmChain { chain })
    }

    pub fn chain(&self) -> &[UnivariatePolynomial] {
        &self.chain
    }

    fn sign_at(p: &UnivariatePolynomial, at: &Bound) -> i8 {
        let Some(deg) = p.degree() else { return 0 };
        let lead = p.leading_coefficient().unwrap();
        let lead_sign = if lead.is_positive() { 1 } else { -1 };
        match at {
            Bound::PosInf => lead_sign,
            Bound::NegInf => {
                if deg % 2 == 0 {
                    lead_sign
                } else {
                    -lead_sign
                }
            }
            Bound::Finite(x) => {
                let v = p.eval(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Number of sign changes in the chain evaluated at `at`, zeros skipped.
    pub fn variations_at(&self, at: &Bound) -> usize {
        let mut count = 0;
        let mut prev: Option<i8> = None;
        for p in &self.chain {
            let s = Self::sign_at(p, at);
            if s == 0 {
                continue;
            }
            if let Some(q) = prev {
                if q != s {
                    count += 1;
                }
            }
            prev = Some(s);
        }
        count
    }
}

/// Number of distinct real roots of `p` in the half-open interval
/// `(lo, hi]`, by the sign-variation difference of the Sturm chain of the
/// squarefree part.
pub fn sturm_real_root_count(
    p: &UnivariatePolynomial,
    lo: &Bound,
    hi: &Bound,
) -> Result<usize, AnalyticError> {
    if p.is_zero() {
        return Err(AnalyticError::ZeroPolynomial);
    }
    if !lo.less_than(hi) {
        return Err(AnalyticError::InvalidInterval);
    }
    if p.degree() == Some(0) {
        return Ok(0);
    }
    let chain = SturmChain::new(&p.squarefree_part())?;
    let vl = chain.variations_at(lo);
    let vh = chain.variations_at(hi);
    Ok(vl.saturating_sub(vh))
}

/// Certifies that every complex root of `p` is real, counting multiplicity:
/// each squarefree cofactor obtained by peeling `gcd(p, p')` must have as
/// many distinct real roots as its degree. A failing report carries
/// `(real roots found, degree)` of the offending cofactor and the peeling
/// stage as its index.
pub fn is_real_rooted(p: &UnivariatePolynomial) -> Result<CheckReport, AnalyticError> {
    if p.is_zero() {
        return Err(AnalyticError::ZeroPolynomial);
    }
    let mut q = p.clone();
    let mut stage = 0i32;
    let mut examined = 0u64;
    while q.degree().is_some_and(|d| d > 0) {
        let g = q.gcd(&q.derivative());
        let squarefree = if g.degree() == Some(0) {
            std::mem::replace(&mut q, UnivariatePolynomial::one())
        } else {
            let (s, r) = q.divmod(&g);
            debug_assert!(r.is_zero());
            q = g;
            s
        };
        let deg = squarefree.degree().expect("nonzero");
        let count = sturm_real_root_count(&squarefree, &Bound::NegInf, &Bound::PosInf)?;
        examined += 1;
        if count != deg {
            return Ok(CheckReport::fail(
                Witness {
                    axis: 0,
                    index: vec![stage],
                    values: vec![BigInt::from(count), BigInt::from(deg)],
                },
                examined,
            ));
        }
        stage += 1;
    }
    Ok(CheckReport::pass(examined))
}

/// Rising factorial `q (q+1) ... (q+n-1)`, with the empty product 1.
pub fn pochhammer(q: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..n {
        acc *= q + Rat::from_integer(BigInt::from(i));
    }
    acc
}

fn as_nonpositive_integer(r: &Rat) -> Option<u32> {
    if !r.is_integer() || r.is_positive() {
        return None;
    }
    (-r.to_integer()).try_into().ok()
}

/// Terminating Gauss hypergeometric sum; `a` or `b` must be a nonpositive
/// integer, and `(c)_n` must stay nonzero until the series terminates.
pub fn gauss_2f1_terminating(a: &Rat, b: &Rat, c: &Rat, z: &Rat) -> Result<Rat, AnalyticError> {
    let n_max = match (as_nonpositive_integer(a), as_nonpositive_integer(b)) {
        (Some(m), Some(n)) => m.min(n),
        (Some(m), None) => m,
        (None, Some(n)) => n,
        (None, None) => return Err(AnalyticError::NonTerminatingParameters),
    };
    let mut sum = Rat::one();
    let mut term = Rat::one();
    for n in 0..n_max {
        let nr = Rat::from_integer(BigInt::from(n));
        let numerator = (a + &nr) * (b + &nr) * z;
        if numerator.is_zero() {
            break;
        }
        let c_factor = c + &nr;
        if c_factor.is_zero() {
            return Err(AnalyticError::ZeroPochhammerDenominator { index: n + 1 });
        }
        term *= numerator / (c_factor * Rat::from_integer(BigInt::from(n + 1)));
        sum += &term;
    }
    Ok(sum)
}

/// `C(n, k)` with `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num::integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// The polynomial `Q(t) = sum_j C(a, N-j) C(b, j) t^j`.
pub fn q_poly(a: u32, b: u32, n_fixed: u32) -> UnivariatePolynomial {
    let coeffs: Vec<Rat> = (0..=n_fixed)
        .map(|j| {
            let c = binomial(a as u64, (n_fixed - j) as u64) * binomial(b as u64, j as u64);
            Rat::from_integer(c)
        })
        .collect();
    UnivariatePolynomial::from_coeffs(coeffs)
}

/// Jacobi polynomial `P_n^(alpha,beta)` as a polynomial in `x`, built by
/// expanding the terminating hypergeometric series in `(1-x)/2` and scaled
/// by `(alpha+1)_n / n!`. Requires `alpha, beta > -1`.
pub fn jacobi_poly(n: u32, alpha: &Rat, beta: &Rat) -> Result<UnivariatePolynomial, AnalyticError> {
    let minus_one = -Rat::one();
    if *alpha <= minus_one || *beta <= minus_one {
        return Err(AnalyticError::ParameterOutOfRange("jacobi needs alpha, beta > -1"));
    }
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    // (1 - x) / 2
    let arg = UnivariatePolynomial::from_coeffs(vec![half.clone(), -half]);
    let mut series = UnivariatePolynomial::zero();
    let mut coeff = Rat::one();
    let mut arg_power = UnivariatePolynomial::one();
    for j in 0..=n {
        if j > 0 {
            let jr = Rat::from_integer(BigInt::from(j - 1));
            let num = (-Rat::from_integer(BigInt::from(n)) + &jr)
                * (Rat::one() + alpha + beta + Rat::from_integer(BigInt::from(n)) + &jr);
            let den = (alpha + Rat::one() + &jr) * Rat::from_integer(BigInt::from(j));
            coeff *= num / den;
            arg_power = arg_power.mul(&arg);
        }
        series = series.add(&arg_power.scale(&coeff));
    }
    let n_fact = (1..=n).fold(Rat::one(), |acc, i| acc * Rat::from_integer(BigInt::from(i)));
    let scale = pochhammer(&(alpha + Rat::one()), n) / n_fact;
    Ok(series.scale(&scale))
}

/// Verifies the Pfaff transformations in the terminating regime:
/// form (1) `F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1))` when `a` is a
/// nonpositive integer, and symmetrically form (2) for `b`. `z` must not
/// be 1. A mismatch reports the two sides as numerator/denominator pairs.
pub fn pfaff_check(a: &Rat, b: &Rat, c: &Rat, z: &Rat) -> Result<CheckReport, AnalyticError> {
    if (z - Rat::one()).is_zero() {
        return Err(AnalyticError::ParameterOutOfRange("pfaff needs z != 1"));
    }
    let transformed = z / (z - Rat::one());
    let one_minus_z = Rat::one() - z;
    let mut forms = 0u64;
    let mut check_form = |m: u32,
                          lhs: Rat,
                          rhs_inner: Rat|
     -> Option<Witness> {
        forms += 1;
        let prefactor = num::pow::pow(one_minus_z.clone(), m as usize);
        let rhs = prefactor * rhs_inner;
        if lhs == rhs {
            None
        } else {
            Some(Witness {
                axis: forms as usize - 1,
                index: vec![],
                values: vec![
                    lhs.numer().clone(),
                    lhs.denom().clone(),
                    rhs.numer().clone(),
                    rhs.denom().clone(),
                ],
            })
        }
    };
    let mut witness = None;
    if let Some(m) = as_nonpositive_integer(a) {
        let lhs = gauss_2f1_terminating(a, b, c, z)?;
        let rhs_inner = gauss_2f1_terminating(a, &(c - b), c, &transformed)?;
        witness = witness.or(check_form(m, lhs, rhs_inner));
    }
    if let Some(m) = as_nonpositive_integer(b) {
        let lhs = gauss_2f1_terminating(a, b, c, z)?;
        let rhs_inner = gauss_2f1_terminating(&(c - a), b, c, &transformed)?;
        witness = witness.or(check_form(m, lhs, rhs_inner));
    }
    if forms == 0 {
        return Err(AnalyticError::NonTerminatingParameters);
    }
    Ok(match witness {
        Some(w) => CheckReport::fail(w, forms),
        None => CheckReport::pass(forms),
    })
}

/// Newton's inequality check: a nonzero polynomial with nonnegative
/// coefficients and only real roots must have a log-concave coefficient
/// row. Precondition violations (negative coefficient, not real-rooted)
/// are errors distinct from a failure of the log-concavity check itself.
pub fn newton_implies_logconcave_check(
    p: &UnivariatePolynomial,
) -> Result<CheckReport, AnalyticError> {
    if p.is_zero() {
        return Err(AnalyticError::ZeroPolynomial);
    }
    if let Some(idx) = p.coeffs().iter().position(|c| c.is_negative()) {
        return Err(AnalyticError::Precondition {
            check: "nonnegative-coefficients",
            report: CheckReport::fail(
                Witness {
                    axis: 0,
                    index: vec![idx as i32],
                    values: vec![p.coeffs()[idx].numer().clone()],
                },
                idx as u64 + 1,
            ),
        });
    }
    let realness = is_real_rooted(p)?;
    if !realness.is_pass() {
        return Err(AnalyticError::Precondition {
            check: "real-rooted",
            report: realness,
        });
    }
    // clear denominators; uniform positive scaling preserves log-concavity
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let row: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let arr = CoefficientArray::from_sequence(row).expect("nonnegative integers");
    Ok(seqprops::is_log_concave(&arr))
}

fn trim_zeros(mut seq: Vec<BigInt>) -> Vec<BigInt> {
    while seq.last().is_some_and(|v| v.is_zero()) {
        seq.pop();
    }
    seq
}

/// `S_k = sum_{i+j=N} C(a,i) C(b,j) C(N+j+c, k)`, reported up to the last
/// nonzero entry.
pub fn s_sequence(a: u32, b: u32, c: u32, n_fixed: u32) -> Vec<BigInt> {
    let k_max = (n_fixed + b + c) as u64;
    let seq = (0..=k_max)
        .map(|k| {
            let mut total = BigInt::zero();
            for j in 0..=n_fixed.min(b) {
                let i = n_fixed - j;
                if i > a {
                    continue;
                }
                total += binomial(a as u64, i as u64)
                    * binomial(b as u64, j as u64)
                    * binomial((n_fixed + j + c) as u64, k);
            }
            total
        })
        .collect();
    trim_zeros(seq)
}

/// `T_k = sum_{i+j=N} C(b,i) C(c,j) C(a+b+c-i, k)`, reported up to the last
/// nonzero entry.
pub fn t_sequence(a: u32, b: u32, c: u32, n_fixed: u32) -> Vec<BigInt> {
    let k_max = (a + b + c) as u64;
    let seq = (0..=k_max)
        .map(|k| {
            let mut total = BigInt::zero();
            for i in 0..=n_fixed.min(b) {
                let j = n_fixed - i;
                if j > c {
                    continue;
                }
                total += binomial(b as u64, i as u64)
                    * binomial(c as u64, j as u64)
                    * binomial((a + b + c - i) as u64, k);
            }
            total
        })
        .collect();
    trim_zeros(seq)
}

/// `theta_h = sum_l C(a, h-l) C(a+b+c-h+l, k) C(c, l)` for `h = 0..=a+c`,
/// trailing zeros trimmed. Coincides with the convolution of
/// `u_r = C(a,r) C(a+b+c-r, k)` and `v_r = C(c,r)`.
pub fn theta_sequence(a: u32, b: u32, c: u32, k: u32) -> Vec<BigInt> {
    let seq = (0..=(a + c))
        .map(|h| {
            let mut total = BigInt::zero();
            for l in 0..=h.min(c) {
                if h - l > a {
                    continue;
                }
                total += binomial(a as u64, (h - l) as u64)
                    * binomial((a + b + c - h + l) as u64, k as u64)
                    * binomial(c as u64, l as u64);
            }
            total
        })
        .collect();
    trim_zeros(seq)
}
