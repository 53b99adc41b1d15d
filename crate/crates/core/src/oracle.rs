//! Brute-force Kauffman bracket by enumerating every smoothing state.
//!
//! This is the ground truth the closed forms are checked against, so it
//! shares nothing with them beyond the polynomial type. Bit `j` of a state
//! mask set means crossing `j` takes its A-smoothing. For a positive crossing
//! the A-smoothing is the vertical one (SW-NW, SE-NE); for a negative crossing
//! it is the horizontal one (SW-SE, NW-NE). With this convention the closure
//! of `sigma_1` has bracket `-A^3`.
//!
//! States are split into fixed-size blocks and evaluated on the rayon pool;
//! `RAYON_NUM_THREADS` bounds the worker count.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::braid::{BraidWord, Corner, Diagram, Sign};
use crate::dsu::UnionFind;
use crate::laurent::{LaurentPoly, Substitution, Variable};

pub const DEFAULT_CROSSING_LIMIT: usize = 26;

const BLOCK_BITS: u32 = 12;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{crossings} crossings exceeds the enumeration limit of {limit}")]
    CrossingLimitExceeded { crossings: usize, limit: usize },
}

/// How many states have a given number of A-smoothings and loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCensus {
    crossings: usize,
    /// `(a_smoothings, loops) -> number of states`
    counts: BTreeMap<(usize, usize), u64>,
}

impl StateCensus {
    pub fn crossings(&self) -> usize {
        self.crossings
    }

    pub fn counts(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.counts
    }

    pub fn total_states(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `sum A^{a-b} delta^{L-1}` with `b = c - a`, `delta = -A^2 - A^-2`.
    pub fn bracket(&self) -> LaurentPoly {
        let delta = LaurentPoly::from_terms(Variable::A, [(2, -1), (-2, -1)]);
        let max_loops = self.counts.keys().map(|&(_, l)| l).max().unwrap_or(1);
        let mut delta_pows = vec![LaurentPoly::one(Variable::A)];
        for i in 1..max_loops {
            let next = &delta_pows[i - 1] * &delta;
            delta_pows.push(next);
        }
        let c = self.crossings as i64;
        let mut total = LaurentPoly::zero(Variable::A);
        for (&(a, loops), &count) in &self.counts {
            let shift = 2 * a as i64 - c;
            total = total + delta_pows[loops - 1].mul_monomial(count, shift);
        }
        total
    }
}

/// Arc-level wiring of a diagram, precomputed once for the state loop.
struct Wiring {
    /// Arc index of each crossing's SW, SE, NW, NE endpoint.
    corners: Vec<([u32; 4], Sign)>,
    arc_count: usize,
    free_loops: usize,
}

impl Wiring {
    fn new(d: &Diagram) -> Self {
        let mut arc_of = vec![u32::MAX; 4 * d.crossing_count()];
        for (i, (a, b)) in d.arcs().iter().enumerate() {
            arc_of[a.index()] = i as u32;
            arc_of[b.index()] = i as u32;
        }
        let corners = d
            .crossings()
            .iter()
            .map(|c| {
                let ids = Corner::ALL.map(|corner| arc_of[c.endpoint(corner).index()]);
                (ids, c.sign)
            })
            .collect();
        Wiring {
            corners,
            arc_count: d.arcs().len(),
            free_loops: d.free_loops(),
        }
    }

    fn loops(&self, mask: u64, uf: &mut UnionFind) -> usize {
        uf.reset();
        let mut merges = 0;
        for (j, &([sw, se, nw, ne], sign)) in self.corners.iter().enumerate() {
            let a_smoothing = (mask >> j) & 1 == 1;
            let vertical = a_smoothing == (sign == Sign::Positive);
            let (x, y) = if vertical {
                (uf.union(sw, nw), uf.union(se, ne))
            } else {
                (uf.union(sw, se), uf.union(nw, ne))
            };
            merges += x as usize + y as usize;
        }
        self.arc_count - merges + self.free_loops
    }
}

/// Enumerates all `2^c` states of `d`.
pub fn state_census(d: &Diagram, limit: usize) -> Result<StateCensus, OracleError> {
    let c = d.crossing_count();
    if c > limit || c >= 64 {
        return Err(OracleError::CrossingLimitExceeded {
            crossings: c,
            limit,
        });
    }
    let wiring = Wiring::new(d);
    let max_loops = wiring.arc_count + wiring.free_loops;
    let width = max_loops + 1;
    let states: u64 = 1 << c;
    let block = 1u64 << BLOCK_BITS.min(c as u32);
    let blocks = states / block;

    let histogram = (0..blocks)
        .into_par_iter()
        .fold(
            || {
                (
                    vec![0u64; (c + 1) * width],
                    UnionFind::new(wiring.arc_count),
                )
            },
            |(mut hist, mut uf), b| {
                for mask in b * block..(b + 1) * block {
                    let loops = wiring.loops(mask, &mut uf);
                    let a = mask.count_ones() as usize;
                    hist[a * width + loops] += 1;
                }
                (hist, uf)
            },
        )
        .map(|(hist, _)| hist)
        .reduce(
            || vec![0u64; (c + 1) * width],
            |mut x, y| {
                for (u, v) in x.iter_mut().zip(y) {
                    *u += v;
                }
                x
            },
        );

    let counts = histogram
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(i, &n)| ((i / width, i % width), n))
        .collect();
    Ok(StateCensus {
        crossings: c,
        counts,
    })
}

pub fn kauffman_bracket_with_limit(d: &Diagram, limit: usize) -> Result<LaurentPoly, OracleError> {
    Ok(state_census(d, limit)?.bracket())
}

pub fn kauffman_bracket(d: &Diagram) -> Result<LaurentPoly, OracleError> {
    kauffman_bracket_with_limit(d, DEFAULT_CROSSING_LIMIT)
}

/// `(-A)^{-3 w} <closure(w)>`.
pub fn aux_via_oracle_with_limit(w: &BraidWord, limit: usize) -> Result<LaurentPoly, OracleError> {
    let bracket = kauffman_bracket_with_limit(&w.closure_diagram(), limit)?;
    Ok(LaurentPoly::neg_a_pow(-3 * w.writhe()) * bracket)
}

pub fn aux_via_oracle(w: &BraidWord) -> Result<LaurentPoly, OracleError> {
    aux_via_oracle_with_limit(w, DEFAULT_CROSSING_LIMIT)
}

/// Jones polynomial in `t`. Pass `mirrored_input` when `w` is a diagram of
/// the mirror of the link whose Jones polynomial is wanted.
pub fn jones_via_oracle_with_limit(
    w: &BraidWord,
    mirrored_input: bool,
    limit: usize,
) -> Result<LaurentPoly, OracleError> {
    let rule = if mirrored_input {
        Substitution::AToTQuarter
    } else {
        Substitution::AToTNegQuarter
    };
    let aux = aux_via_oracle_with_limit(w, limit)?;
    Ok(aux.substitute(rule).expect("auxiliary polynomial is in A"))
}

pub fn jones_via_oracle(w: &BraidWord, mirrored_input: bool) -> Result<LaurentPoly, OracleError> {
    jones_via_oracle_with_limit(w, mirrored_input, DEFAULT_CROSSING_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{closure_diagram, torus_braid, ttl_braid, Letter, TwistedTorusParams};
    use proptest::prelude::*;

    fn a(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(Variable::A, terms.iter().copied())
    }

    fn word(strands: usize, gens: &[i64]) -> BraidWord {
        let letters = gens
            .iter()
            .map(|&g| {
                if g > 0 {
                    Letter::positive(g as usize)
                } else {
                    Letter::negative((-g) as usize)
                }
            })
            .collect();
        BraidWord::new(strands, letters).unwrap()
    }

    #[test]
    fn unknot_diagrams() {
        let empty = word(1, &[]);
        assert!(kauffman_bracket(&empty.closure_diagram()).unwrap().is_one());
        assert!(aux_via_oracle(&empty).unwrap().is_one());

        let kink = word(2, &[1]);
        assert_eq!(
            kauffman_bracket(&kink.closure_diagram()).unwrap(),
            a(&[(3, -1)])
        );
        assert!(aux_via_oracle(&kink).unwrap().is_one());
        assert_eq!(
            kauffman_bracket(&word(2, &[-1]).closure_diagram()).unwrap(),
            a(&[(-3, -1)])
        );
    }

    #[test]
    fn trefoil_anchor() {
        // right-handed trefoil: t + t^3 - t^4
        let expected = LaurentPoly::from_terms(Variable::T, [(4, 1), (12, 1), (16, -1)]);
        let w = torus_braid(2, 3, false);
        assert_eq!(jones_via_oracle(&w, false).unwrap(), expected);
        assert_eq!(jones_via_oracle(&w.mirror(), true).unwrap(), expected);
        assert_eq!(
            aux_via_oracle(&w.mirror()).unwrap(),
            a(&[(4, 1), (12, 1), (16, -1)])
        );
    }

    #[test]
    fn lee_unknots_by_enumeration() {
        for (p, q, s) in [(3, 2, -2), (5, 2, -4), (3, 1, -2), (7, 2, -6), (3, 2, -4)] {
            let params = TwistedTorusParams::new(p, q, s).unwrap();
            let w = ttl_braid(&params, true);
            assert!(aux_via_oracle(&w).unwrap().is_one(), "({p},{q},{s})");
            assert!(jones_via_oracle(&w, true).unwrap().is_one());
        }
    }

    #[test]
    fn crossing_guard() {
        let w = torus_braid(2, 5, false);
        assert_eq!(
            kauffman_bracket_with_limit(&w.closure_diagram(), 4),
            Err(OracleError::CrossingLimitExceeded {
                crossings: 5,
                limit: 4
            })
        );
        assert!(aux_via_oracle_with_limit(&w, 5).is_ok());
    }

    #[test]
    fn census_covers_every_state() {
        let d = ttl_braid(&TwistedTorusParams::new(4, 3, -2).unwrap(), true).closure_diagram();
        let census = state_census(&d, 26).unwrap();
        assert_eq!(census.total_states(), 1 << d.crossing_count());
        assert!(census
            .counts()
            .keys()
            .all(|&(a, _)| a <= d.crossing_count()));
    }

    #[test]
    fn split_union_multiplies_by_delta() {
        let delta = a(&[(2, -1), (-2, -1)]);
        let d = closure_diagram(&torus_braid(3, 2, true));
        let plain = kauffman_bracket(&d).unwrap();
        assert_eq!(
            kauffman_bracket(&d.with_free_loop()).unwrap(),
            &plain * &delta
        );
    }

    #[test]
    fn hopf_link() {
        // <closure(sigma_1^2)> = -A^4 - A^-4
        let b = kauffman_bracket(&word(2, &[1, 1]).closure_diagram()).unwrap();
        assert_eq!(b, a(&[(4, -1), (-4, -1)]));
    }

    fn arb_word() -> impl Strategy<Value = BraidWord> {
        (2usize..5).prop_flat_map(|n| {
            prop::collection::vec((1..n, prop::bool::ANY), 0..9).prop_map(move |ls| {
                let letters = ls
                    .into_iter()
                    .map(|(g, pos)| {
                        if pos {
                            Letter::positive(g)
                        } else {
                            Letter::negative(g)
                        }
                    })
                    .collect();
                BraidWord::new(n, letters).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn conjugation_preserves_aux(w in arb_word(), g in 1usize..4, pos in prop::bool::ANY) {
            let g = 1 + (g - 1) % (w.strands() - 1);
            let (l, inv) = if pos {
                (Letter::positive(g), Letter::negative(g))
            } else {
                (Letter::negative(g), Letter::positive(g))
            };
            let conj = BraidWord::new(w.strands(), vec![l]).unwrap()
                .concat(&w)
                .concat(&BraidWord::new(w.strands(), vec![inv]).unwrap());
            prop_assert_eq!(aux_via_oracle(&conj).unwrap(), aux_via_oracle(&w).unwrap());
        }

        #[test]
        fn cyclic_rotation_preserves_bracket(w in arb_word(), k in 0usize..8) {
            if !w.is_empty() {
                let k = k % w.len();
                let mut letters = w.letters().to_vec();
                letters.rotate_left(k);
                let rotated = BraidWord::new(w.strands(), letters).unwrap();
                prop_assert_eq!(
                    kauffman_bracket(&rotated.closure_diagram()).unwrap(),
                    kauffman_bracket(&w.closure_diagram()).unwrap()
                );
            }
        }

        #[test]
        fn stabilization_is_reidemeister_one(w in arb_word(), pos in prop::bool::ANY) {
            // A new strand carrying one sigma_n^{+-1} is a kink on the closure.
            let n = w.strands();
            let mut letters = w.letters().to_vec();
            letters.push(if pos { Letter::positive(n) } else { Letter::negative(n) });
            let stabilized = BraidWord::new(n + 1, letters).unwrap();
            let base = kauffman_bracket(&w.closure_diagram()).unwrap();
            let kinked = kauffman_bracket(&stabilized.closure_diagram()).unwrap();
            let factor = LaurentPoly::neg_a_pow(if pos { 3 } else { -3 });
            prop_assert_eq!(kinked, &base * &factor);
            prop_assert_eq!(aux_via_oracle(&stabilized).unwrap(), aux_via_oracle(&w).unwrap());
        }
    }
}
