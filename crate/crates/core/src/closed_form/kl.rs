//! The modular data `(q_hat, m, i, k, ell)` of a coprime pair `(p, q)`.

use num_integer::Integer;

use crate::braid::ParamError;

/// Derived from `(p, q)` alone; independent of the twist `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KlData {
    /// `q mod p`, in `1..p`.
    pub q_hat: i64,
    /// `q = p * m + q_hat`.
    pub m: i64,
    /// Residue of `1 + q_hat * k` mod `p`; the residue `p` is stored as 0.
    pub i: i64,
    pub k: i64,
    pub ell: i64,
}

/// Inverse of `a` modulo `m` in `0..m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m <= 0 {
        return None;
    }
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// `gcd` on absolute values, with `gcd(x, 0) = x`.
fn abs_gcd(a: i64, b: i64) -> i64 {
    a.abs().gcd(&b.abs())
}

/// Scans `k = 1, 2, ...` for the first `1 + q_hat k` congruent to 0, 1 or 2
/// mod `p`, then solves `p ell + i - 1 = q k` for `ell`.
pub fn compute_kl(p: i64, q: i64) -> Result<KlData, ParamError> {
    if p < 3 {
        return Err(ParamError::PTooSmall(p));
    }
    if q < 1 {
        return Err(ParamError::QTooSmall(q));
    }
    if p.gcd(&q) != 1 {
        return Err(ParamError::NotCoprime { p, q });
    }
    let (m, q_hat) = q.div_rem(&p);
    let (k, i) = (1..=p)
        .map(|k| (k, (1 + q_hat * k).rem_euclid(p)))
        .find(|&(_, r)| r <= 2)
        .expect("q_hat is invertible mod p, so k = q_hat^-1 always qualifies");
    let numerator = q * k + 1 - i;
    debug_assert_eq!(numerator % p, 0);
    let kl = KlData {
        q_hat,
        m,
        i,
        k,
        ell: numerator / p,
    };
    debug_assert!(kl.violations(p, q).is_empty(), "{:?}", kl.violations(p, q));
    Ok(kl)
}

impl KlData {
    /// Every identity the data must satisfy; empty when all hold.
    pub fn violations(&self, p: i64, q: i64) -> Vec<String> {
        let KlData {
            q_hat,
            m,
            i,
            k,
            ell,
        } = *self;
        let mut out = Vec::new();
        let mut check = |ok: bool, what: &str| {
            if !ok {
                out.push(format!(
                    "({p},{q}): {what} [q_hat={q_hat} i={i} k={k} ell={ell}]"
                ));
            }
        };
        check(
            q == p * m + q_hat && (1..p).contains(&q_hat),
            "q = p m + q_hat",
        );
        check(
            (1 + q_hat * k - i).rem_euclid(p) == 0,
            "1 + q_hat k = i mod p",
        );
        check(
            (1..k).all(|j| (1 + q_hat * j).rem_euclid(p) > 2),
            "k is the first admissible value",
        );
        check(p * ell + i - 1 == q * k, "p ell + i - 1 = q k");
        check(2 * k < p, "2k < p");
        check(ell >= 0 && 2 * ell <= q, "0 <= 2 ell <= q");
        check(
            abs_gcd(p - 2 * k, q - 2 * ell) == 1,
            "p - 2k, q - 2ell coprime",
        );
        check((k * q + ell * p) % 2 != 0, "kq + ell p odd");
        check(i == 0 || i == 2, "i in {0, 2}");
        match mod_inverse(q_hat, p) {
            Some(inv) => check(k == inv.min(p - inv), "k = min(q_hat^-1, p - q_hat^-1)"),
            None => check(false, "q_hat invertible mod p"),
        }
        if q >= 2 {
            match mod_inverse(p.rem_euclid(q), q) {
                Some(inv) => check(
                    ell == inv || ell == q - inv,
                    "ell = p_hat^-1 or q - p_hat^-1",
                ),
                None => check(false, "p_hat invertible mod q"),
            }
        }
        out
    }
}
