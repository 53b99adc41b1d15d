//! Which twisted torus knots are unknotted, and which have trivial Jones
//! polynomial.
//!
//! Triviality is always decided by evaluating the closed-form auxiliary
//! polynomial. The table of known unknots is only the cross-check.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::braid::TwistedTorusParams;
use crate::closed_form::{ttl_aux_closed, FormulaError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("{0}: the unknot table covers only even negative s")]
    NotEvenNegative(TwistedTorusParams),
    #[error("{0}: odd s gives a two-component link")]
    OddS(TwistedTorusParams),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `(3, 2, -2)`
    UnknotCase1,
    /// `(2m + sign, 2, -2m)` with `m >= 2`
    UnknotCase2 {
        m: i64,
        sign: i64,
    },
    /// `(n, 1, -2)` with `n >= 3`
    UnknotCase3 {
        n: i64,
    },
    NontrivialJones,
}

impl Verdict {
    pub fn is_unknot(&self) -> bool {
        !matches!(self, Verdict::NontrivialJones)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::UnknotCase1 => f.write_str("UnknotCase1"),
            Verdict::UnknotCase2 { m, sign } => {
                write!(
                    f,
                    "UnknotCase2(m={m},{})",
                    if *sign > 0 { '+' } else { '-' }
                )
            }
            Verdict::UnknotCase3 { n } => write!(f, "UnknotCase3(n={n})"),
            Verdict::NontrivialJones => f.write_str("NontrivialJones"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub p: i64,
    pub q: i64,
    pub s: i64,
    pub verdict: Verdict,
    #[serde(rename = "trivial")]
    pub jones_is_trivial: bool,
    pub consistent: bool,
}

impl ClassificationResult {
    pub fn is_unknot(&self) -> bool {
        self.verdict.is_unknot()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("classification serializes")
    }
}

/// Looks `(p, q, s)` up in the list of unknotted twisted torus knots.
pub fn lee_lookup(params: &TwistedTorusParams) -> Result<Verdict, ClassifyError> {
    let (p, q, s) = (params.p(), params.q(), params.s());
    if s >= 0 || s % 2 != 0 {
        return Err(ClassifyError::NotEvenNegative(*params));
    }
    if (p, q, s) == (3, 2, -2) {
        return Ok(Verdict::UnknotCase1);
    }
    if q == 2 {
        let m = -s / 2;
        if m >= 2 {
            for sign in [1, -1] {
                if p == 2 * m + sign {
                    return Ok(Verdict::UnknotCase2 { m, sign });
                }
            }
        }
    }
    if q == 1 && s == -2 {
        return Ok(Verdict::UnknotCase3 { n: p });
    }
    Ok(Verdict::NontrivialJones)
}

/// True iff the Jones polynomial is 1, decided by `X = 1` exactly.
pub fn is_jones_trivial(params: &TwistedTorusParams) -> Result<bool, ClassifyError> {
    if !params.s_is_even() {
        return Err(ClassifyError::OddS(*params));
    }
    Ok(ttl_aux_closed(params)?.is_one())
}

/// Evaluates triviality and compares it with the expected verdict: the
/// unknot table for `s < 0`, never trivial for `s > 0`.
pub fn classify(params: &TwistedTorusParams) -> Result<ClassificationResult, ClassifyError> {
    let trivial = is_jones_trivial(params)?;
    let verdict = if params.s() < 0 {
        lee_lookup(params)?
    } else {
        Verdict::NontrivialJones
    };
    Ok(ClassificationResult {
        p: params.p(),
        q: params.q(),
        s: params.s(),
        verdict,
        jones_is_trivial: trivial,
        consistent: verdict.is_unknot() == trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: i64, q: i64, s: i64) -> TwistedTorusParams {
        TwistedTorusParams::new(p, q, s).unwrap()
    }

    #[test]
    fn lookup_cases() {
        assert_eq!(lee_lookup(&params(3, 2, -2)).unwrap(), Verdict::UnknotCase1);
        assert_eq!(
            lee_lookup(&params(5, 2, -4)).unwrap(),
            Verdict::UnknotCase2 { m: 2, sign: 1 }
        );
        assert_eq!(
            lee_lookup(&params(3, 2, -4)).unwrap(),
            Verdict::UnknotCase2 { m: 2, sign: -1 }
        );
        assert_eq!(
            lee_lookup(&params(7, 1, -2)).unwrap(),
            Verdict::UnknotCase3 { n: 7 }
        );
        assert_eq!(
            lee_lookup(&params(7, 1, -4)).unwrap(),
            Verdict::NontrivialJones
        );
        assert_eq!(
            lee_lookup(&params(4, 3, -2)).unwrap(),
            Verdict::NontrivialJones
        );
    }

    #[test]
    fn lookup_preconditions() {
        assert_eq!(
            lee_lookup(&params(3, 2, 2)),
            Err(ClassifyError::NotEvenNegative(params(3, 2, 2)))
        );
        assert!(lee_lookup(&params(3, 2, -3)).is_err());
        assert_eq!(
            is_jones_trivial(&params(3, 2, -1)),
            Err(ClassifyError::OddS(params(3, 2, -1)))
        );
    }

    #[test]
    fn triviality() {
        assert!(is_jones_trivial(&params(3, 2, -2)).unwrap());
        assert!(!is_jones_trivial(&params(4, 3, -2)).unwrap());
        assert!(!is_jones_trivial(&params(5, 2, 4)).unwrap());
    }

    #[test]
    fn classify_examples() {
        let r = classify(&params(3, 2, -2)).unwrap();
        assert_eq!(
            (r.verdict, r.jones_is_trivial, r.consistent),
            (Verdict::UnknotCase1, true, true)
        );

        let r = classify(&params(9, 2, -8)).unwrap();
        assert_eq!(r.verdict, Verdict::UnknotCase2 { m: 4, sign: 1 });
        assert!(r.jones_is_trivial && r.consistent);

        let r = classify(&params(5, 3, -2)).unwrap();
        assert_eq!(r.verdict, Verdict::NontrivialJones);
        assert!(!r.jones_is_trivial && r.consistent);

        let r = classify(&params(5, 2, 4)).unwrap();
        assert_eq!(r.verdict, Verdict::NontrivialJones);
        assert!(!r.is_unknot() && r.consistent);
    }

    #[test]
    fn json_shape() {
        let r = classify(&params(5, 2, -4)).unwrap();
        assert_eq!(
            r.to_json(),
            r#"{"p":5,"q":2,"s":-4,"verdict":"UnknotCase2(m=2,+)","trivial":true,"consistent":true}"#
        );
    }
}
