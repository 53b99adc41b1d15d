//! Closed forms for the bracket, auxiliary and Jones polynomials of twisted
//! torus links.
//!
//! Everything here is stated for the mirrored diagram
//! `(sigma_1^-1 ... sigma_{p-1}^-1)^q sigma_1^{-s}`; the Jones polynomial of
//! the unmirrored link follows by `A -> t^{1/4}`.

mod kl;

pub use kl::{compute_kl, mod_inverse, KlData};

use num_integer::Integer;
use thiserror::Error;

use crate::braid::{ParamError, TwistedTorusParams};
use crate::laurent::{LaurentError, LaurentPoly, Substitution, Variable};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("torus link T({m},{n}) is outside the closed form (need m >= 1, n >= 0, coprime)")]
    InvalidTorus { m: i64, n: i64 },
    #[error("s = {0} is odd: the closure has two components")]
    OddS(i64),
    #[error("Jones assembly paths disagree: {via_aux} vs {via_direct}")]
    AssemblyMismatch {
        via_aux: LaurentPoly,
        via_direct: LaurentPoly,
    },
    #[error("half-integer exponent {numerator}/2 where an integer is required")]
    NonIntegralExponent { numerator: i64 },
    #[error("{0}: the shifted torus factor is not 1 - A^8")]
    SmallCancellationInapplicable(TwistedTorusParams),
    #[error("{0} requires even negative s")]
    NeedsEvenNegativeS(TwistedTorusParams),
}

fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn a_poly<const N: usize>(terms: [(i64, i64); N]) -> LaurentPoly {
    LaurentPoly::from_terms(Variable::A, terms)
}

fn one_minus_a8() -> LaurentPoly {
    a_poly([(0, 1), (8, -1)])
}

/// `1 - A^{4p+4} - A^{4q+4} + A^{4p+4q}`.
pub fn x_prime(p: i64, q: i64) -> LaurentPoly {
    a_poly([(0, 1), (4 * p + 4, -1), (4 * q + 4, -1), (4 * p + 4 * q, 1)])
}

/// `X'` of the torus link `(p - 2k, q - 2 ell)`, with the exponents written
/// out in terms of `p, q, k, ell`.
pub fn x_prime_shifted(p: i64, q: i64, kl: &KlData) -> LaurentPoly {
    let (k, ell) = (kl.k, kl.ell);
    a_poly([
        (0, 1),
        (4 * p + 4 - 8 * k, -1),
        (4 * q + 4 - 8 * ell, -1),
        (4 * p + 4 * q - 8 * k - 8 * ell, 1),
    ])
}

fn check_torus(m: i64, n: i64) -> Result<(), FormulaError> {
    if m < 1 || n < 0 || m.gcd(&n) != 1 {
        return Err(FormulaError::InvalidTorus { m, n });
    }
    Ok(())
}

/// Auxiliary polynomial of the mirror torus knot `T*(m, n)`:
/// `A^{2(m-1)(n-1)} X'_{m,n} / (1 - A^8)`.
///
/// `n = 0` is accepted (only `T*(1, 0)`, the unknot, is coprime).
pub fn torus_aux_mirror(m: i64, n: i64) -> Result<LaurentPoly, FormulaError> {
    check_torus(m, n)?;
    let numerator = x_prime(m, n).mul_monomial(1, 2 * (m - 1) * (n - 1));
    Ok(numerator.exact_div(&one_minus_a8())?)
}

/// Bracket of the diagram `(sigma_1^-1 ... sigma_{m-1}^-1)^n`, writhe `-(m-1)n`.
pub fn torus_bracket_mirror(m: i64, n: i64) -> Result<LaurentPoly, FormulaError> {
    let aux = torus_aux_mirror(m, n)?;
    Ok(LaurentPoly::neg_a_pow(-3 * (m - 1) * n) * aux)
}

/// Pieces shared by the bracket closed form and the recursion.
struct BracketParts {
    abs_s: i64,
    negative: bool,
    /// `<T*(p, q)>`
    torus: LaurentPoly,
    /// `A^{6 ell} <T*(p - 2k, q - 2 ell)>`
    shifted: LaurentPoly,
}

fn bracket_parts(
    params: &TwistedTorusParams,
    nugatory_weight: i64,
) -> Result<BracketParts, FormulaError> {
    let (p, q) = (params.p(), params.q());
    let kl = compute_kl(p, q)?;
    let torus = torus_bracket_mirror(p, q)?;
    let shifted = torus_bracket_mirror(p - 2 * kl.k, q - 2 * kl.ell)?
        .mul_monomial(1, nugatory_weight * kl.ell);
    Ok(BracketParts {
        abs_s: params.s().abs(),
        negative: params.s() < 0,
        torus,
        shifted,
    })
}

/// Removing a pair of nugatory crossings costs `A^6`.
pub(crate) const NUGATORY_PAIR_WEIGHT: i64 = 6;

pub(crate) fn bracket_closed_with_weight(
    params: &TwistedTorusParams,
    nugatory_weight: i64,
) -> Result<LaurentPoly, FormulaError> {
    let BracketParts {
        abs_s,
        negative,
        torus,
        shifted,
    } = bracket_parts(params, nugatory_weight)?;
    let mut total = torus.mul_monomial(1, if negative { abs_s } else { -abs_s });
    for i in 0..abs_s {
        let (sign, exponent) = if negative {
            (sign_pow(1 + i - abs_s), 2 - 3 * abs_s + 4 * i)
        } else {
            (sign_pow(abs_s - 1 - i), 3 * abs_s - 2 - 4 * i)
        };
        total = total + shifted.mul_monomial(sign, exponent);
    }
    Ok(total)
}

/// `<T*((p,q),(2,s))>` as a torus bracket plus a geometric sum of shifted
/// torus brackets.
pub fn ttl_bracket_closed(params: &TwistedTorusParams) -> Result<LaurentPoly, FormulaError> {
    bracket_closed_with_weight(params, NUGATORY_PAIR_WEIGHT)
}

/// The same bracket, unwinding one twist crossing at a time down to the
/// torus bracket at `s = 0`.
pub fn ttl_bracket_recursive(params: &TwistedTorusParams) -> Result<LaurentPoly, FormulaError> {
    let BracketParts {
        abs_s,
        negative,
        torus,
        shifted,
    } = bracket_parts(params, NUGATORY_PAIR_WEIGHT)?;
    let mut bracket = torus;
    for j in 1..=abs_s {
        bracket = if negative {
            bracket.mul_monomial(1, 1) + shifted.mul_monomial(sign_pow(1 - j), 2 - 3 * j)
        } else {
            bracket.mul_monomial(1, -1) + shifted.mul_monomial(sign_pow(1 - j), 3 * j - 2)
        };
    }
    Ok(bracket)
}

/// `2 - 4|s| + 4(k + ell - k ell) + 2(kq + ell p)`, the lowest shift in the
/// negative-s sum.
fn sigma_exponent(params: &TwistedTorusParams, kl: &KlData) -> i64 {
    let (p, q, abs_s) = (params.p(), params.q(), params.s().abs());
    let (k, ell) = (kl.k, kl.ell);
    2 - 4 * abs_s + 4 * (k + ell - k * ell) + 2 * (k * q + ell * p)
}

/// Auxiliary polynomial `X(T*((p,q),(2,s)))` in closed form.
pub fn ttl_aux_closed(params: &TwistedTorusParams) -> Result<LaurentPoly, FormulaError> {
    let (p, q, s) = (params.p(), params.q(), params.s());
    let abs_s = s.abs();
    let kl = compute_kl(p, q)?;
    let (k, ell) = (kl.k, kl.ell);
    let common = 4 * (k + ell - k * ell) + 2 * (k * q + ell * p);

    let mut twist_sum = LaurentPoly::zero(Variable::A);
    for i in 0..abs_s {
        let exponent = if s < 0 {
            4 * i + 2 - 4 * abs_s + common
        } else {
            -4 * i + 4 * abs_s - 2 + common
        };
        twist_sum = twist_sum + LaurentPoly::monomial(Variable::A, sign_pow(i), exponent);
    }
    let bracketed =
        x_prime(p, q) - (twist_sum * x_prime_shifted(p, q, &kl)).mul_monomial(sign_pow(abs_s), 0);
    let prefactor = 2 * (p - 1) * (q - 1) + if s < 0 { -2 * abs_s } else { 2 * abs_s };
    Ok(bracketed
        .exact_div(&one_minus_a8())?
        .mul_monomial(sign_pow(abs_s), prefactor))
}

/// The negative-s auxiliary polynomial after the telescoping that applies
/// when the shifted factor is `1 - A^8`.
pub fn ttl_aux_small_cancellation(
    params: &TwistedTorusParams,
) -> Result<LaurentPoly, FormulaError> {
    let (p, q, s) = (params.p(), params.q(), params.s());
    if s > 0 || s % 2 != 0 {
        return Err(FormulaError::NeedsEvenNegativeS(*params));
    }
    let kl = compute_kl(p, q)?;
    if x_prime_shifted(p, q, &kl) != one_minus_a8() {
        return Err(FormulaError::SmallCancellationInapplicable(*params));
    }
    let abs_s = s.abs();
    let sigma = sigma_exponent(params, &kl);
    let bracketed = LaurentPoly::from_terms(
        Variable::A,
        [
            (0, 1),
            (4 * p + 4, -1),
            (4 * q + 4, -1),
            (4 * p + 4 * q, 1),
            (sigma, -1),
            (sigma + 4, 1),
            (sigma + 4 * abs_s, 1),
            (sigma + 4 * abs_s + 4, -1),
        ],
    );
    Ok(bracketed
        .exact_div(&one_minus_a8())?
        .mul_monomial(1, 2 * (p - 1) * (q - 1) - 2 * abs_s))
}

fn half(numerator: i64) -> Result<i64, FormulaError> {
    if numerator % 2 != 0 {
        return Err(FormulaError::NonIntegralExponent { numerator });
    }
    Ok(numerator / 2)
}

/// `t^e` in quarter units.
fn t_mono(coeff: i64, t_exponent: i64) -> LaurentPoly {
    LaurentPoly::monomial(Variable::T, coeff, 4 * t_exponent)
}

/// `1 - t^{a+1} - t^{b+1} + t^{a+b}`.
fn j_prime(a: i64, b: i64) -> LaurentPoly {
    LaurentPoly::from_terms(
        Variable::T,
        [
            (0, 1),
            (4 * (a + 1), -1),
            (4 * (b + 1), -1),
            (4 * (a + b), 1),
        ],
    )
}

/// Jones polynomial of `T(p,q,2,s/2)` assembled directly in `t`, with
/// integer `t`-exponents throughout. Even `s` only.
pub fn ttl_jones_direct(params: &TwistedTorusParams) -> Result<LaurentPoly, FormulaError> {
    let (p, q, s) = (params.p(), params.q(), params.s());
    if s % 2 != 0 {
        return Err(FormulaError::OddS(s));
    }
    let abs_s = s.abs();
    let kl = compute_kl(p, q)?;
    let (k, ell) = (kl.k, kl.ell);
    let quadratic = k + ell - k * ell;
    let (prefactor, tail) = if s < 0 {
        (half((p - 1) * (q - 1) - abs_s)?, half(k * q + ell * p + 1)?)
    } else {
        (half((p - 1) * (q - 1) + abs_s)?, half(k * q + ell * p - 1)?)
    };
    let mut twist_sum = LaurentPoly::zero(Variable::T);
    for i in 0..abs_s {
        let exponent = if s < 0 {
            i - abs_s + quadratic + tail
        } else {
            -i + abs_s + quadratic + tail
        };
        twist_sum = twist_sum + t_mono(sign_pow(i), exponent);
    }
    let bracketed = j_prime(p, q) - twist_sum * j_prime(p - 2 * k, q - 2 * ell);
    let one_minus_t2 = LaurentPoly::from_terms(Variable::T, [(0, 1), (8, -1)]);
    Ok(bracketed
        .exact_div(&one_minus_t2)?
        .mul_monomial(1, 4 * prefactor))
}

/// Jones polynomial of the unmirrored `T((p,q),(2,s))`.
///
/// For even `s` the substitution `A -> t^{1/4}` into [`ttl_aux_closed`] is
/// compared term by term with [`ttl_jones_direct`]. Odd `s` (a
/// two-component link) is refused unless `allow_odd_s`, and then only the
/// substitution path is available.
pub fn ttl_jones(
    params: &TwistedTorusParams,
    allow_odd_s: bool,
) -> Result<LaurentPoly, FormulaError> {
    let s = params.s();
    if s % 2 != 0 && !allow_odd_s {
        return Err(FormulaError::OddS(s));
    }
    let via_aux = ttl_aux_closed(params)?.substitute(Substitution::AToTQuarter)?;
    if s % 2 == 0 {
        let via_direct = ttl_jones_direct(params)?;
        if via_direct != via_aux {
            return Err(FormulaError::AssemblyMismatch {
                via_aux,
                via_direct,
            });
        }
    }
    Ok(via_aux)
}
