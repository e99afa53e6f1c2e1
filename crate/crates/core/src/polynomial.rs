//! Integer polynomials in one and two variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial with integer coefficients, stored low degree first with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coefficients: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Polynomial { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(1, BigInt::one())
    }

    pub fn monomial(power: usize, c: BigInt) -> Self {
        let mut coefficients = vec![BigInt::zero(); power + 1];
        coefficients[power] = c;
        Self::new(coefficients)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn coefficient(&self, power: usize) -> BigInt {
        self.coefficients.get(power).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coefficients.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coefficients.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^t`.
    pub fn shift(&self, t: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coefficients = vec![BigInt::zero(); t];
        coefficients.extend(self.coefficients.iter().cloned());
        Polynomial { coefficients }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(x))`, by Horner's rule.
    pub fn compose(&self, inner: &Polynomial) -> Self {
        self.coefficients
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    fn content(&self) -> BigInt {
        self.coefficients.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn primitive_part(&self) -> Self {
        let content = self.content();
        if content.is_zero() {
            return Self::zero();
        }
        let sign = if self.leading().is_some_and(Signed::is_negative) { -BigInt::one() } else { BigInt::one() };
        Self::new(self.coefficients.iter().map(|c| c / &content * &sign).collect())
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_remainder(&self, divisor: &Polynomial) -> Self {
        let d = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading().expect("nonzero divisor").clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree().filter(|&dr| dr >= d) {
            let factor = r.leading().expect("nonzero remainder").clone();
            r = &r.scale(&lead) - &divisor.scale(&factor).shift(dr - d);
        }
        r
    }

    /// Greatest common divisor over the rationals, as a primitive integer
    /// polynomial with positive leading coefficient.
    pub fn gcd_over_rationals(&self, other: &Polynomial) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_remainder(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        Polynomial::new((0..n).map(|k| self.coefficient(k) + rhs.coefficient(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        Polynomial::new((0..n).map(|k| self.coefficient(k) - rhs.coefficient(k)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coefficients.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (monomial, c) in terms {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        match (first, c.is_negative()) {
            (true, true) => write!(f, "-")?,
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
            (true, false) => {}
        }
        if monomial.is_empty() {
            write!(f, "{magnitude}")?;
        } else if magnitude.is_one() {
            write!(f, "{monomial}")?;
        } else {
            write!(f, "{magnitude}{monomial}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn power_label(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

impl fmt::Display for Polynomial {
    /// Highest degree first, in the variable `x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coefficients.iter().enumerate().rev().map(|(k, c)| (power_label("x", k), c)),
        )
    }
}

/// Polynomial in `t` and `q` with integer coefficients, keyed by `(t, q)` exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwoVarPolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl TwoVarPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, t: u32, q: u32, c: BigInt) {
        let entry = self.terms.entry((t, q)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(t, q));
        }
    }

    pub fn coefficient(&self, t: u32, q: u32) -> BigInt {
        self.terms.get(&(t, q)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitute `t = -1`, leaving a polynomial in `q`.
    pub fn at_t_minus_one(&self) -> Polynomial {
        let width = self.terms.keys().map(|&(_, q)| q as usize + 1).max().unwrap_or(0);
        let mut coefficients = vec![BigInt::zero(); width];
        for (&(t, q), c) in &self.terms {
            if t % 2 == 0 {
                coefficients[q as usize] += c;
            } else {
                coefficients[q as usize] -= c;
            }
        }
        Polynomial::new(coefficients)
    }
}

impl fmt::Display for TwoVarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().map(|(&(t, q), c)| {
                let parts: Vec<String> = [power_label("t", t as usize), power_label("q", q as usize)]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect();
                (parts.join(" "), c)
            }),
        )
    }
}
