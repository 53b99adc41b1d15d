//! Braid words for (mirrored) twisted torus links and their closure diagrams.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::dsu::UnionFind;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("p must be at least 3, got {0}")]
    PTooSmall(i64),
    #[error("q must be at least 1, got {0}")]
    QTooSmall(i64),
    #[error("s must be nonzero")]
    ZeroTwist,
    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },
}

/// Validated parameters of the twisted torus link `T((p,q),(2,s))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedTorusParams {
    p: i64,
    q: i64,
    s: i64,
}

impl TwistedTorusParams {
    pub fn new(p: i64, q: i64, s: i64) -> Result<Self, ParamError> {
        if p < 3 {
            return Err(ParamError::PTooSmall(p));
        }
        if q < 1 {
            return Err(ParamError::QTooSmall(q));
        }
        if s == 0 {
            return Err(ParamError::ZeroTwist);
        }
        if p.gcd(&q) != 1 {
            return Err(ParamError::NotCoprime { p, q });
        }
        Ok(TwistedTorusParams { p, q, s })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    /// True when the closure is a knot rather than a two-component link.
    pub fn s_is_even(&self) -> bool {
        self.s % 2 == 0
    }

    /// Crossings in the standard braid diagram, `(p-1)q + |s|`.
    pub fn crossing_count(&self) -> usize {
        ((self.p - 1) * self.q + self.s.abs()) as usize
    }
}

impl fmt::Display for TwistedTorusParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// `sigma_generator^{sign}`, generators numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn positive(generator: usize) -> Self {
        Letter {
            generator,
            sign: Sign::Positive,
        }
    }

    pub fn negative(generator: usize) -> Self {
        Letter {
            generator,
            sign: Sign::Negative,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("generator {generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: usize, strands: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        if let Some(l) = letters
            .iter()
            .find(|l| l.generator == 0 || l.generator >= strands)
        {
            return Err(BraidError::GeneratorOutOfRange {
                generator: l.generator,
                strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Exponent sum, which is the writhe of the closure diagram.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.value()).sum()
    }

    /// The mirror braid: every crossing reversed.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .map(|l| Letter {
                    generator: l.generator,
                    sign: l.sign.flipped(),
                })
                .collect(),
        }
    }

    /// `self` followed by `other` on the same number of strands.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Underlying permutation: `perm[j]` is the top position of the strand
    /// that starts at bottom position `j`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            at.swap(l.generator - 1, l.generator);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    /// Number of components of the closure (cycles of the permutation).
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
        cycles
    }

    pub fn closure_diagram(&self) -> Diagram {
        closure_diagram(self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strands {}", self.strands)?;
        let body: Vec<String> = self
            .letters
            .iter()
            .map(|l| (l.generator as i64 * l.sign.value()).to_string())
            .collect();
        if !body.is_empty() {
            writeln!(f, "{}", body.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    /// Parses `strands n` followed by whitespace-separated signed generators.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace();
        match tokens.next() {
            Some("strands") => {}
            _ => return Err(BraidError::Parse("expected header `strands n`".into())),
        }
        let strands: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| BraidError::Parse("missing strand count".into()))?;
        let letters = tokens
            .map(|t| {
                let g: i64 = t
                    .parse()
                    .map_err(|_| BraidError::Parse(format!("bad generator {t:?}")))?;
                match g {
                    0 => Err(BraidError::Parse("generator 0 is not allowed".into())),
                    g if g > 0 => Ok(Letter::positive(g as usize)),
                    g => Ok(Letter::negative(g.unsigned_abs() as usize)),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(strands, letters)
    }
}

/// `(sigma_1 ... sigma_{p-1})^q`, with every sign reversed when `mirrored`.
pub fn torus_braid(p: usize, q: usize, mirrored: bool) -> BraidWord {
    assert!(p >= 1, "a torus braid needs at least one strand");
    let sign = if mirrored {
        Sign::Negative
    } else {
        Sign::Positive
    };
    let letters = (0..q)
        .flat_map(|_| (1..p).map(move |generator| Letter { generator, sign }))
        .collect();
    BraidWord {
        strands: p,
        letters,
    }
}

/// Braid of `T((p,q),(2,s))`: the torus block followed by `sigma_1^s`.
///
/// The mirrored word is `(sigma_1^-1 ... sigma_{p-1}^-1)^q sigma_1^{-s}`, the
/// diagram on which the closed forms are stated.
pub fn ttl_braid(params: &TwistedTorusParams, mirrored: bool) -> BraidWord {
    let unmirrored_twist = if params.s() > 0 {
        Sign::Positive
    } else {
        Sign::Negative
    };
    let twist = if mirrored {
        unmirrored_twist.flipped()
    } else {
        unmirrored_twist
    };
    let mut word = torus_braid(params.p() as usize, params.q() as usize, mirrored);
    word.letters
        .extend((0..params.s().unsigned_abs()).map(|_| Letter {
            generator: 1,
            sign: twist,
        }));
    word
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    SW,
    SE,
    NW,
    NE,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::SW, Corner::SE, Corner::NW, Corner::NE];

    fn index(self) -> usize {
        self as usize
    }
}

/// A crossing endpoint, identified by crossing row (0 at the bottom) and
/// planar corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub row: usize,
    pub corner: Corner,
}

impl Endpoint {
    /// Dense index `4 * row + corner`.
    pub fn index(&self) -> usize {
        4 * self.row + self.corner.index()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub sign: Sign,
    /// Left strand position of the crossing, counted from 0.
    pub position: usize,
    pub row: usize,
}

impl Crossing {
    pub fn endpoint(&self, corner: Corner) -> Endpoint {
        Endpoint {
            row: self.row,
            corner,
        }
    }
}

/// Closed 4-valent planar diagram: crossings wired together by arcs, plus
/// crossing-free circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    arcs: Vec<(Endpoint, Endpoint)>,
    free_loops: usize,
}

impl Diagram {
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn arcs(&self) -> &[(Endpoint, Endpoint)] {
        &self.arcs
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Distant union with a crossing-free circle.
    pub fn with_free_loop(&self) -> Diagram {
        let mut d = self.clone();
        d.free_loops += 1;
        d
    }

    /// Checks that every crossing endpoint lies on exactly one arc.
    pub fn is_well_formed(&self) -> bool {
        let mut uses = vec![0u8; 4 * self.crossings.len()];
        for (a, b) in &self.arcs {
            for e in [a, b] {
                match uses.get_mut(e.index()) {
                    Some(u) => *u += 1,
                    None => return false,
                }
            }
        }
        uses.iter().all(|&u| u == 1)
    }

    /// Number of link components, following strands through each crossing.
    pub fn components(&self) -> usize {
        let n = 4 * self.crossings.len();
        let mut uf = UnionFind::new(n);
        for (a, b) in &self.arcs {
            uf.union(a.index() as u32, b.index() as u32);
        }
        for c in &self.crossings {
            let idx = |corner| c.endpoint(corner).index() as u32;
            uf.union(idx(Corner::SW), idx(Corner::NE));
            uf.union(idx(Corner::SE), idx(Corner::NW));
        }
        let roots = (0..n as u32).filter(|&x| uf.find(x) == x).count();
        roots + self.free_loops
    }
}

/// Standard closure: top position `j` is joined to bottom position `j`.
pub fn closure_diagram(word: &BraidWord) -> Diagram {
    let n = word.strands;
    // Last upward-facing endpoint seen at each position, and the first
    // downward-facing one (which the closure arc reaches from below).
    let mut current: Vec<Option<Endpoint>> = vec![None; n];
    let mut first: Vec<Option<Endpoint>> = vec![None; n];
    let mut crossings = Vec::with_capacity(word.len());
    let mut arcs = Vec::with_capacity(2 * word.len());

    for (row, letter) in word.letters.iter().enumerate() {
        let crossing = Crossing {
            sign: letter.sign,
            position: letter.generator - 1,
            row,
        };
        let left = crossing.position;
        for (pos, corner) in [(left, Corner::SW), (left + 1, Corner::SE)] {
            let bottom = crossing.endpoint(corner);
            match current[pos] {
                Some(top) => arcs.push((top, bottom)),
                None => first[pos] = Some(bottom),
            }
        }
        current[left] = Some(crossing.endpoint(Corner::NW));
        current[left + 1] = Some(crossing.endpoint(Corner::NE));
        crossings.push(crossing);
    }

    let mut free_loops = 0;
    for (top, bottom) in current.into_iter().zip(first) {
        match (top, bottom) {
            (Some(top), Some(bottom)) => arcs.push((top, bottom)),
            (None, None) => free_loops += 1,
            _ => unreachable!("a strand position is touched on one side only"),
        }
    }

    Diagram {
        crossings,
        arcs,
        free_loops,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(p: i64, q: i64, s: i64) -> TwistedTorusParams {
        TwistedTorusParams::new(p, q, s).unwrap()
    }

    #[test]
    fn param_validation() {
        assert_eq!(
            TwistedTorusParams::new(2, 3, 2),
            Err(ParamError::PTooSmall(2))
        );
        assert_eq!(
            TwistedTorusParams::new(3, 0, 2),
            Err(ParamError::QTooSmall(0))
        );
        assert_eq!(TwistedTorusParams::new(3, 2, 0), Err(ParamError::ZeroTwist));
        assert_eq!(
            TwistedTorusParams::new(4, 2, -2),
            Err(ParamError::NotCoprime { p: 4, q: 2 })
        );
        assert!(TwistedTorusParams::new(3, 1, -1).is_ok());
    }

    #[test]
    fn ttl_braid_6_5() {
        let w = ttl_braid(&params(6, 5, -3), true);
        assert_eq!(w.strands(), 6);
        assert_eq!(w.len(), 25 + 3);
        assert!(w.letters()[..25].iter().all(|l| l.sign == Sign::Negative));
        assert!(w.letters()[25..].iter().all(|l| *l == Letter::positive(1)));
    }

    #[test]
    fn ttl_braid_3_1_minus_2() {
        let w = ttl_braid(&params(3, 1, -2), true);
        assert_eq!(
            w.letters(),
            &[
                Letter::negative(1),
                Letter::negative(2),
                Letter::positive(1),
                Letter::positive(1)
            ]
        );
        assert_eq!(w.strands(), 3);
        assert_eq!(w.writhe(), 0);
    }

    #[test]
    fn mirrored_and_unmirrored_writhes() {
        let p = params(5, 3, 4);
        let m = ttl_braid(&p, true);
        let u = ttl_braid(&p, false);
        assert_eq!(m.writhe(), -u.writhe());
        assert_eq!(u, m.mirror());
        assert_eq!(m.writhe(), -(5 - 1) * 3 - 4);
        assert_eq!(ttl_braid(&params(3, 2, -2), true).writhe(), -2);
    }

    #[test]
    fn torus_braids() {
        let w = torus_braid(2, 3, false);
        assert_eq!(w.letters(), &[Letter::positive(1); 3]);
        let unknot = torus_braid(1, 7, false);
        assert!(unknot.is_empty());
        assert_eq!(unknot.closure_components(), 1);
        let w = torus_braid(5, 2, true);
        assert_eq!(w.len(), 8);
        assert_eq!(w.writhe(), -8);
        assert_eq!(BraidWord::new(1, vec![]).unwrap().writhe(), 0);
    }

    #[test]
    fn closure_examples() {
        let d = closure_diagram(&BraidWord::new(1, vec![]).unwrap());
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.components(), 1);

        let d = closure_diagram(&BraidWord::new(2, vec![Letter::positive(1)]).unwrap());
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.components(), 1);
        assert!(d.is_well_formed());

        for s in [-4, -3, -2, -1, 1, 2, 3, 4] {
            let d = closure_diagram(&ttl_braid(&params(5, 3, s), true));
            let expected = if s % 2 == 0 { 1 } else { 2 };
            assert_eq!(d.components(), expected, "s = {s}");
            assert!(d.is_well_formed());
        }
    }

    #[test]
    fn unused_strands_are_free_loops() {
        let w = BraidWord::new(4, vec![Letter::positive(2)]).unwrap();
        let d = w.closure_diagram();
        assert_eq!(d.free_loops(), 2);
        assert_eq!(d.components(), 3);
        assert_eq!(d.with_free_loop().components(), 4);
    }

    #[test]
    fn text_format() {
        let w: BraidWord = "strands 3\n-1 -2 1 1\n".parse().unwrap();
        assert_eq!(w, ttl_braid(&params(3, 1, -2), true));
        assert_eq!(w.to_string(), "strands 3\n-1 -2 1 1\n");
        assert_eq!(w.to_string().parse::<BraidWord>().unwrap(), w);
        let empty: BraidWord = "strands 1".parse().unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.to_string(), "strands 1\n");
    }

    #[test]
    fn text_format_errors() {
        assert!(matches!(
            "3\n1".parse::<BraidWord>(),
            Err(BraidError::Parse(_))
        ));
        assert!(matches!(
            "strands x".parse::<BraidWord>(),
            Err(BraidError::Parse(_))
        ));
        assert!(matches!(
            "strands 2\n1 0".parse::<BraidWord>(),
            Err(BraidError::Parse(_))
        ));
        assert_eq!(
            "strands 2\n1 2".parse::<BraidWord>(),
            Err(BraidError::GeneratorOutOfRange {
                generator: 2,
                strands: 2
            })
        );
        assert_eq!("strands 0".parse::<BraidWord>(), Err(BraidError::NoStrands));
    }

    fn coprime_params() -> impl Strategy<Value = TwistedTorusParams> {
        (3i64..12, 1i64..10, -9i64..=9).prop_filter_map("valid params", |(p, q, s)| {
            TwistedTorusParams::new(p, q, s).ok()
        })
    }

    proptest! {
        #[test]
        fn letter_count_and_writhe(params in coprime_params()) {
            let w = ttl_braid(&params, true);
            prop_assert_eq!(w.len(), params.crossing_count());
            prop_assert_eq!(w.strands() as i64, params.p());
            prop_assert_eq!(w.mirror().writhe(), -w.writhe());
            prop_assert_eq!(closure_diagram(&w).writhe(), w.writhe());
        }

        #[test]
        fn torus_permutation_is_cycle_power(p in 1usize..10, q in 0usize..10) {
            let w = torus_braid(p, q, false);
            let perm = w.permutation();
            for (j, &image) in perm.iter().enumerate() {
                prop_assert_eq!(image, (j + p - (q % p)) % p);
            }
            let g = p.gcd(&q);
            prop_assert_eq!(w.closure_components(), g);
            prop_assert_eq!(closure_diagram(&w).components(), g);
        }
    }
}
