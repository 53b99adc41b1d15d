//! Exact Laurent polynomials with arbitrary-precision integer coefficients.
//!
//! Exponents are stored in quarter-units of `t`, which is the same thing as
//! integer powers of `A` under `A = t^{1/4}`. A polynomial in `A` and a Jones
//! polynomial with half-integer powers of `t` therefore share one integer
//! representation; only the [`Variable`] tag tells them apart.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Which formal variable the stored exponents refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    A,
    T,
}

impl Variable {
    pub fn symbol(self) -> &'static str {
        match self {
            Variable::A => "A",
            Variable::T => "t",
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Change of variables between `A` and `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// `A -> t^{1/4}`; used when the diagram is the mirror of the target link.
    AToTQuarter,
    /// `A -> t^{-1/4}`; the usual bracket-to-Jones substitution.
    AToTNegQuarter,
    /// `t -> A^4`.
    TToA4,
}

impl Substitution {
    fn source(self) -> Variable {
        match self {
            Substitution::AToTQuarter | Substitution::AToTNegQuarter => Variable::A,
            Substitution::TToA4 => Variable::T,
        }
    }

    fn target(self) -> Variable {
        match self {
            Substitution::AToTQuarter | Substitution::AToTNegQuarter => Variable::T,
            Substitution::TToA4 => Variable::A,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("variable mismatch: {left} vs {right}")]
    VariableMismatch { left: Variable, right: Variable },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact, remainder {remainder}")]
    NonzeroRemainder { remainder: LaurentPoly },
    #[error("malformed polynomial: {0}")]
    Malformed(String),
}

/// Laurent polynomial `sum c_e x^e` with no zero coefficient stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Variable,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero(var: Variable) -> Self {
        LaurentPoly {
            var,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(var: Variable) -> Self {
        Self::monomial(var, 1, 0)
    }

    /// `coeff * x^exponent`; the zero polynomial when `coeff` is zero.
    pub fn monomial(var: Variable, coeff: impl Into<BigInt>, exponent: i64) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        LaurentPoly { var, terms }
    }

    /// `(-A)^exponent`.
    pub fn neg_a_pow(exponent: i64) -> Self {
        let sign = if exponent.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(Variable::A, sign, exponent)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(var: Variable, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exponent: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn var(&self) -> Variable {
        self.var
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the constant polynomial 1 (in either variable).
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn check_var(&self, other: &Self) -> Result<(), LaurentError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(LaurentError::VariableMismatch {
                left: self.var,
                right: other.var,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_var(other)?;
        let mut out = Self::zero(self.var);
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiplies by `coeff * x^shift` without a general convolution.
    pub fn mul_monomial(&self, coeff: impl Into<BigInt>, shift: i64) -> Self {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Self::zero(self.var);
        }
        LaurentPoly {
            var: self.var,
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + shift, c * &coeff))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `num / den`, by long division from the lowest exponent.
    ///
    /// Fails with [`LaurentError::NonzeroRemainder`] unless `den` divides `num`
    /// in the ring of integer Laurent polynomials.
    pub fn exact_div(&self, den: &Self) -> Result<Self, LaurentError> {
        self.check_var(den)?;
        let (den_lo, den_hi) = match (den.min_exponent(), den.max_exponent()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(LaurentError::DivisionByZero),
        };
        let lead = &den.terms[&den_lo];
        let mut rem = self.clone();
        let mut quot = Self::zero(self.var);
        let Some(num_hi) = self.max_exponent() else {
            return Ok(quot);
        };
        // An exact quotient has no exponent above this.
        let quot_hi = num_hi - den_hi;
        while let Some(lo) = rem.min_exponent() {
            let shift = lo - den_lo;
            let (factor, r) = rem.terms[&lo].div_rem(lead);
            if shift > quot_hi || !r.is_zero() {
                return Err(LaurentError::NonzeroRemainder { remainder: rem });
            }
            for (&e, c) in &den.terms {
                rem.add_term(e + shift, -(c * &factor));
            }
            quot.add_term(shift, factor);
        }
        Ok(quot)
    }

    /// Negates every exponent: the polynomial of the mirror image.
    pub fn mirror(&self) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn substitute(&self, rule: Substitution) -> Result<Self, LaurentError> {
        if self.var != rule.source() {
            return Err(LaurentError::VariableMismatch {
                left: self.var,
                right: rule.source(),
            });
        }
        let negate = rule == Substitution::AToTNegQuarter;
        Ok(LaurentPoly {
            var: rule.target(),
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (if negate { -e } else { e }, c.clone()))
                .collect(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, LaurentError> {
        serde_json::from_str(s).map_err(|e| LaurentError::Malformed(e.to_string()))
    }

    /// LaTeX rendering; `t`-exponents appear as reduced fractions.
    pub fn to_latex(&self) -> String {
        self.render(|e| match self.exponent_parts(e) {
            (n, 1) => format!("{{{n}}}"),
            (n, d) if n < 0 => format!("{{-\\frac{{{}}}{{{d}}}}}", -n),
            (n, d) => format!("{{\\frac{{{n}}}{{{d}}}}}"),
        })
    }

    /// Plain-text rendering, e.g. `t^2 + t^4 - t^5`.
    pub fn to_text(&self) -> String {
        self.render(|e| match self.exponent_parts(e) {
            (n, 1) => n.to_string(),
            (n, d) => format!("({n}/{d})"),
        })
    }

    /// Exponent as a reduced fraction in units of the tagged variable.
    fn exponent_parts(&self, e: i64) -> (i64, i64) {
        match self.var {
            Variable::A => (e, 1),
            Variable::T => {
                let g = e.gcd(&4);
                (e / g, 4 / g)
            }
        }
    }

    fn render(&self, exponent: impl Fn(i64) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let x = self.var.symbol();
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let mag = c.abs();
            if e == 0 {
                out.push_str(&mag.to_string());
                continue;
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(x);
            if self.exponent_parts(e) != (1, 1) {
                out.push('^');
                out.push_str(&exponent(e));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            var: &'a str,
            terms: Vec<(i64, serde_json::Number)>,
        }
        let terms = self
            .terms
            .iter()
            .map(|(&e, c)| {
                let n = serde_json::Number::from_str(&c.to_string())
                    .map_err(serde::ser::Error::custom)?;
                Ok((e, n))
            })
            .collect::<Result<Vec<_>, S::Error>>()?;
        Wire {
            var: self.var.symbol(),
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            var: String,
            terms: Vec<(i64, serde_json::Number)>,
        }
        let wire = Wire::deserialize(deserializer)?;
        let var = match wire.var.as_str() {
            "A" => Variable::A,
            "t" => Variable::T,
            other => return Err(D::Error::custom(format!("unknown variable {other:?}"))),
        };
        let mut terms = BTreeMap::new();
        let mut prev: Option<i64> = None;
        for (e, n) in wire.terms {
            if prev.is_some_and(|p| p >= e) {
                return Err(D::Error::custom("exponents must be strictly ascending"));
            }
            prev = Some(e);
            let c = BigInt::from_str(&n.to_string())
                .map_err(|_| D::Error::custom(format!("coefficient {n} is not an integer")))?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient"));
            }
            terms.insert(e, c);
        }
        Ok(LaurentPoly { var, terms })
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            /// Panics if the operands carry different variables.
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.mul_monomial(-1, 0)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
