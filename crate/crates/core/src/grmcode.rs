//! Parameters of the generalized Reed-Muller code `RM_q(d, n)` — length,
//! dimension, minimum distance — the second weight in every covered
//! regime, and construction of a minimum-weight codeword.
//!
//! Throughout, `a` and `b` are the quotient and remainder of `d` divided
//! by `q - 1`. The code requires `1 <= d < n(q-1)`; the minimum distance
//! is `W1 = (q-b) q^(n-a-1)`.

use std::fmt;

use crate::ffield::{make_field, FieldSpec};
use crate::grid;
use crate::mpoly::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrmError {
    UnsupportedCardinality(u32),
    /// `d` outside `1 <= d < n(q-1)`.
    DegreeOutOfRange {
        q: u32,
        n: u32,
        d: u32,
    },
    /// Valid code parameters whose second weight has no covered formula.
    RegimeNotCovered {
        q: u32,
        n: u32,
        d: u32,
        reason: String,
    },
    /// `q^n` does not fit exact 64-bit arithmetic.
    ParameterTooLarge {
        q: u32,
        n: u32,
    },
}

impl fmt::Display for GrmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrmError::UnsupportedCardinality(q) => write!(f, "unsupported field cardinality {q}"),
            GrmError::DegreeOutOfRange { q, n, d } => {
                write!(
                    f,
                    "degree d={d} out of range 1 <= d < n(q-1) for q={q}, n={n}"
                )
            }
            GrmError::RegimeNotCovered { q, n, d, reason } => {
                write!(
                    f,
                    "second weight not covered for q={q}, n={n}, d={d}: {reason}"
                )
            }
            GrmError::ParameterTooLarge { q, n } => {
                write!(f, "{q}^{n} exceeds exact 64-bit arithmetic")
            }
        }
    }
}

impl std::error::Error for GrmError {}

/// Code parameters of `RM_q(d, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrmParams {
    pub q: u32,
    pub n: u32,
    pub d: u32,
    /// Quotient of d by q-1.
    pub a: u32,
    /// Remainder of d by q-1.
    pub b: u32,
    /// Length `q^n`.
    pub m: u64,
    /// Dimension: the number of reduced monomials of total degree <= d.
    pub k: u64,
    /// Minimum distance `(q-b) q^(n-a-1)`.
    pub w1: u64,
}

/// Second-weight value: a single exact integer, or an interval when only
/// bounds are known (the `b = 1` case).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum W2 {
    Exact(u64),
    Interval { lo: u64, hi: u64 },
}

impl W2 {
    /// The exact value or the interval's lower endpoint.
    pub fn lower(&self) -> u64 {
        match self {
            W2::Exact(v) => *v,
            W2::Interval { lo, .. } => *lo,
        }
    }
}

/// Which formula regime produced a second weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// d = 1: the only weights are 0, W1 and q^n.
    DegreeOne,
    /// q = 2, 2 <= d <= n-2.
    Binary,
    /// q >= 3, 2 <= d < q, n >= 2.
    DegreeBelowQ,
    /// q >= 3, n >= 3, q <= d <= (n-1)(q-1), b = 0.
    BZero,
    /// Same range with b = 1: only an interval is known.
    BOneInterval,
    /// Same range with 2 <= b < q-1.
    BMid,
}

impl Regime {
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::DegreeOne => "d=1",
            Regime::Binary => "q=2",
            Regime::DegreeBelowQ => "d<q",
            Regime::BZero => "b=0",
            Regime::BOneInterval => "b=1-interval",
            Regime::BMid => "2<=b<q-1",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SecondWeightResult {
    pub regime: Regime,
    pub value: W2,
}

fn validate(q: u32, n: u32, d: u32) -> Result<(u32, u32), GrmError> {
    if !crate::ffield::SUPPORTED_CARDINALITIES.contains(&q) {
        return Err(GrmError::UnsupportedCardinality(q));
    }
    if n == 0 || d == 0 || d as u64 >= n as u64 * (q as u64 - 1) {
        return Err(GrmError::DegreeOutOfRange { q, n, d });
    }
    if grid::size(q, n as usize) > u64::MAX as u128 {
        return Err(GrmError::ParameterTooLarge { q, n });
    }
    Ok((d / (q - 1), d % (q - 1)))
}

fn powq(q: u32, e: u32) -> u64 {
    (q as u64)
        .checked_pow(e)
        .expect("q^e fits u64 for supported parameters")
}

/// Binomial coefficient with the convention that any out-of-range
/// argument gives 0: `C(x, y) = 0` when `x < 0`, `y < 0` or `y > x`.
fn binom(x: i64, y: i64) -> i128 {
    if x < 0 || y < 0 || y > x {
        return 0;
    }
    let y = y.min(x - y);
    let mut acc: i128 = 1;
    for i in 0..y {
        acc = acc * (x - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// Full parameter set of `RM_q(d, n)`.
///
/// The dimension is the alternating sum
/// `k = sum_t sum_j (-1)^j C(n, j) C(t - jq + n - 1, t - jq)` over
/// `0 <= t <= d`, `0 <= j <= n`, with out-of-range binomials zero. The
/// independent count is [`dimension_oracle`].
pub fn grm_params(q: u32, n: u32, d: u32) -> Result<GrmParams, GrmError> {
    let (a, b) = validate(q, n, d)?;
    let mut k: i128 = 0;
    for t in 0..=d as i64 {
        for j in 0..=n as i64 {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            k += sign
                * binom(n as i64, j)
                * binom(t - j * q as i64 + n as i64 - 1, t - j * q as i64);
        }
    }
    debug_assert!(k >= 0 && k <= grid::size(q, n as usize) as i128);
    Ok(GrmParams {
        q,
        n,
        d,
        a,
        b,
        m: powq(q, n),
        k: k as u64,
        w1: (q - b) as u64 * powq(q, n - a - 1),
    })
}

/// Independent dimension count: the number of exponent vectors in
/// `[0, q-1]^n` of total sum at most `d`, by direct enumeration.
pub fn dimension_oracle(q: u32, n: u32, d: u32) -> u64 {
    let mut count = 0u64;
    grid::scan(q, n as usize, |e| {
        if e.iter().map(|&x| x as u64).sum::<u64>() <= d as u64 {
            count += 1;
        }
    });
    count
}

/// The second weight of `RM_q(d, n)` in every covered regime.
///
/// Exact values: `d = 1` gives `q^n`; `q = 2, d <= n-2` gives
/// `3 * 2^(n-d-1)`; `2 <= d < q` gives `q^n - d q^(n-1) + (d-1) q^(n-2)`;
/// for `q <= d <= (n-1)(q-1)` with `n >= 3`, `b = 0` gives
/// `2 q^(n-a-1) (q-1)` and `2 <= b < q-1` gives
/// `q^(n-a-2) (q-1) (q-b+1)`. For `b = 1` only an interval is known:
/// `[q^(n-a) - q^(n-a-1) + q^(n-a-2) - q^(n-a-3), q^(n-a)]` when
/// `a < n-2`, and `[q^2 - 2, q^2]` when `a = n-2`.
pub fn second_weight(q: u32, n: u32, d: u32) -> Result<SecondWeightResult, GrmError> {
    let (a, b) = validate(q, n, d)?;
    let not_covered = |reason: &str| GrmError::RegimeNotCovered {
        q,
        n,
        d,
        reason: reason.to_string(),
    };

    if d == 1 {
        return Ok(SecondWeightResult {
            regime: Regime::DegreeOne,
            value: W2::Exact(powq(q, n)),
        });
    }
    if q == 2 {
        // covered only below the top degree
        if d + 2 <= n {
            return Ok(SecondWeightResult {
                regime: Regime::Binary,
                value: W2::Exact(3 * powq(2, n - d - 1)),
            });
        }
        return Err(not_covered("q=2 formula requires d <= n-2"));
    }
    if d < q {
        if n >= 2 {
            return Ok(SecondWeightResult {
                regime: Regime::DegreeBelowQ,
                value: W2::Exact(
                    powq(q, n) - d as u64 * powq(q, n - 1) + (d - 1) as u64 * powq(q, n - 2),
                ),
            });
        }
        return Err(not_covered("d >= 2 with a single variable"));
    }
    // d >= q from here on
    if n < 3 {
        return Err(not_covered("n=2 with d >= q"));
    }
    if d as u64 > (n as u64 - 1) * (q as u64 - 1) {
        return Err(not_covered("d > (n-1)(q-1) first-weights regime"));
    }
    let result = match b {
        0 => SecondWeightResult {
            regime: Regime::BZero,
            value: W2::Exact(2 * powq(q, n - a - 1) * (q - 1) as u64),
        },
        1 => {
            let hi = powq(q, n - a);
            let lo = if a + 2 < n {
                powq(q, n - a) - powq(q, n - a - 1) + powq(q, n - a - 2) - powq(q, n - a - 3)
            } else {
                // a = n-2
                q as u64 * q as u64 - 2
            };
            SecondWeightResult {
                regime: Regime::BOneInterval,
                value: W2::Interval { lo, hi },
            }
        }
        _ => SecondWeightResult {
            regime: Regime::BMid,
            value: W2::Exact(powq(q, n - a - 2) * (q - 1) as u64 * (q - b + 1) as u64),
        },
    };
    Ok(result)
}

/// A minimum-weight codeword polynomial: the product of `a` complete
/// blocks of `q-1` hyperplanes `X_i = c` plus, when `b > 0`, `b` parallel
/// hyperplanes in the next direction. Constants are the first field
/// elements in index order, so the output is deterministic.
pub fn maximal_config_poly(q: u32, n: u32, d: u32) -> Result<MultiPoly, GrmError> {
    let (a, b) = validate(q, n, d)?;
    let field = make_field(q).map_err(|_| GrmError::UnsupportedCardinality(q))?;
    Ok(maximal_config_poly_in(&field, n, a, b))
}

fn maximal_config_poly_in(field: &FieldSpec, n: u32, a: u32, b: u32) -> MultiPoly {
    let q = field.q();
    let nv = n as usize;
    let mut acc = MultiPoly::constant(field, nv, field.one());
    for axis in 0..a as usize {
        for j in 0..(q - 1) {
            let c = field.element(j).expect("j < q");
            let factor = MultiPoly::var(field, nv, axis).sub(&MultiPoly::constant(field, nv, c));
            acc = acc.mul(&factor);
        }
    }
    for j in 0..b {
        let c = field.element(j).expect("j < q");
        let factor = MultiPoly::var(field, nv, a as usize).sub(&MultiPoly::constant(field, nv, c));
        acc = acc.mul(&factor);
    }
    acc
}
