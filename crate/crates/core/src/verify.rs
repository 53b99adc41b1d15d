//! Grid sweeps comparing the closed forms, the recursion and the oracle.

use rayon::prelude::*;
use thiserror::Error;

use crate::braid::{ttl_braid, TwistedTorusParams};
use crate::closed_form::{
    bracket_closed_with_weight, ttl_aux_closed, ttl_bracket_recursive, FormulaError,
    NUGATORY_PAIR_WEIGHT,
};
use crate::laurent::LaurentPoly;
use crate::oracle::{kauffman_bracket_with_limit, OracleError};

pub const DEFAULT_VERIFY_CROSSING_LIMIT: usize = 24;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub crossing_limit: usize,
    /// Negative control: perturbs the nugatory-crossing weight in the
    /// closed-form bracket so that the sweep must fail.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            crossing_limit: DEFAULT_VERIFY_CROSSING_LIMIT,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TupleCheck {
    pub params: TwistedTorusParams,
    pub crossings: usize,
    pub bracket_closed: LaurentPoly,
    pub bracket_recursive: LaurentPoly,
    pub bracket_oracle: LaurentPoly,
    pub aux_closed: LaurentPoly,
    pub aux_oracle: LaurentPoly,
}

impl TupleCheck {
    pub fn passed(&self) -> bool {
        self.mismatches().is_empty()
    }

    /// Human-readable description of every disagreement.
    pub fn mismatches(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.bracket_closed != self.bracket_oracle {
            out.push(format!(
                "bracket closed form {} != oracle {}",
                self.bracket_closed, self.bracket_oracle
            ));
        }
        if self.bracket_recursive != self.bracket_closed {
            out.push(format!(
                "bracket recursion {} != closed form {}",
                self.bracket_recursive, self.bracket_closed
            ));
        }
        if self.aux_closed != self.aux_oracle {
            out.push(format!(
                "aux closed form {} != oracle {}",
                self.aux_closed, self.aux_oracle
            ));
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<TupleCheck>,
    /// Tuples above the crossing limit.
    pub skipped: Vec<TwistedTorusParams>,
}

impl VerifyReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed()).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &TupleCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// All valid tuples with `3 <= p <= pmax`, `1 <= q <= qmax` and `s` drawn
/// from `s_values`, ordered by `p`, then `q`, then `s`.
pub fn parameter_grid(
    pmax: i64,
    qmax: i64,
    s_values: impl IntoIterator<Item = i64>,
) -> Vec<TwistedTorusParams> {
    let mut s_values: Vec<i64> = s_values.into_iter().collect();
    s_values.sort_unstable();
    s_values.dedup();
    let mut out = Vec::new();
    for p in 3..=pmax {
        for q in 1..=qmax {
            for &s in &s_values {
                if let Ok(params) = TwistedTorusParams::new(p, q, s) {
                    out.push(params);
                }
            }
        }
    }
    out
}

pub fn check_tuple(
    params: &TwistedTorusParams,
    opts: &VerifyOptions,
) -> Result<TupleCheck, VerifyError> {
    let weight = if opts.inject_fault {
        NUGATORY_PAIR_WEIGHT - 1
    } else {
        NUGATORY_PAIR_WEIGHT
    };
    let word = ttl_braid(params, true);
    let bracket_oracle = kauffman_bracket_with_limit(&word.closure_diagram(), opts.crossing_limit)?;
    let aux_oracle = LaurentPoly::neg_a_pow(-3 * word.writhe()) * &bracket_oracle;
    Ok(TupleCheck {
        params: *params,
        crossings: word.len(),
        bracket_closed: bracket_closed_with_weight(params, weight)?,
        bracket_recursive: ttl_bracket_recursive(params)?,
        bracket_oracle,
        aux_closed: ttl_aux_closed(params)?,
        aux_oracle,
    })
}

/// Checks every tuple of `grid` within the crossing limit.
pub fn verify_tuples(
    grid: &[TwistedTorusParams],
    opts: &VerifyOptions,
) -> Result<VerifyReport, VerifyError> {
    let (inside, skipped): (Vec<_>, Vec<_>) = grid
        .iter()
        .partition(|p| p.crossing_count() <= opts.crossing_limit);
    let checks = inside
        .par_iter()
        .map(|p| check_tuple(p, opts))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VerifyReport { checks, skipped })
}

/// `s` ranges over `-smax..=smax` without 0, both parities.
pub fn verify_grid(
    pmax: i64,
    qmax: i64,
    smax: i64,
    opts: &VerifyOptions,
) -> Result<VerifyReport, VerifyError> {
    let grid = parameter_grid(pmax, qmax, (-smax..=smax).filter(|&s| s != 0));
    verify_tuples(&grid, opts)
}
