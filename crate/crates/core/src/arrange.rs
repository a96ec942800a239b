//! Arrangements of hyperplane blocks in linearly independent directions:
//! the point-count formula, the four exchanges of a maximal configuration,
//! closed forms for the best non-maximal point count, and the exhaustive
//! search those closed forms are checked against.
//!
//! The point count of such an arrangement depends only on its type (the
//! multiset of block sizes), and an affine change of variables turns any
//! set of independent directions into coordinate axes. Concrete
//! realizations therefore use axis directions `X1, X2, ...` with the
//! first elements of the field as constants.

use std::fmt;

use crate::ffield::{FieldElement, FieldSpec};
use crate::grid;
use crate::mpoly::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrangeError {
    /// Block sizes violate `1 <= d_i <= q-1` or `1 <= k <= n`, or a
    /// formula input does not fit the machine word.
    InvalidType { message: String },
    /// The grid `GF(q)^n` is larger than the enumeration budget.
    BudgetExceeded { required: u128, budget: u64 },
    /// The exchange is undefined for these parameters.
    ExchangeNotApplicable {
        kind: ExchangeKind,
        a: u32,
        b: u32,
        q: u32,
        n: u32,
    },
    /// `d` outside the covered range.
    DegreeOutOfRange { q: u32, n: u32, d: u32 },
}

impl fmt::Display for ArrangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrangeError::InvalidType { message } => {
                write!(f, "invalid arrangement type: {message}")
            }
            ArrangeError::BudgetExceeded { required, budget } => {
                write!(
                    f,
                    "grid of {required} points exceeds the enumeration budget of {budget}"
                )
            }
            ArrangeError::ExchangeNotApplicable { kind, a, b, q, n } => {
                write!(
                    f,
                    "{kind} exchange not applicable for q={q}, n={n} (a={a}, b={b})"
                )
            }
            ArrangeError::DegreeOutOfRange { q, n, d } => {
                write!(f, "degree d={d} out of range for q={q}, n={n}")
            }
        }
    }
}

impl std::error::Error for ArrangeError {}

/// The type of an arrangement: the multiset of block sizes, stored sorted
/// non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArrangementType {
    q: u32,
    n: u32,
    block_sizes: Vec<u32>,
}

impl ArrangementType {
    pub fn new(q: u32, n: u32, mut block_sizes: Vec<u32>) -> Result<Self, ArrangeError> {
        if q < 2 {
            return Err(ArrangeError::InvalidType {
                message: format!("field cardinality {q} too small"),
            });
        }
        if block_sizes.is_empty() || block_sizes.len() as u32 > n {
            return Err(ArrangeError::InvalidType {
                message: format!("block count {} out of 1..={n}", block_sizes.len()),
            });
        }
        if let Some(&bad) = block_sizes.iter().find(|&&s| s == 0 || s > q - 1) {
            return Err(ArrangeError::InvalidType {
                message: format!("block size {bad} out of 1..={}", q - 1),
            });
        }
        block_sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ArrangementType { q, n, block_sizes })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn block_sizes(&self) -> &[u32] {
        &self.block_sizes
    }

    pub fn block_count(&self) -> usize {
        self.block_sizes.len()
    }

    /// Total number of hyperplanes.
    pub fn degree_sum(&self) -> u32 {
        self.block_sizes.iter().sum()
    }
}

impl fmt::Display for ArrangementType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.block_sizes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// `q^e`, refusing to overflow silently.
fn powq(q: u32, e: u32) -> Result<u64, ArrangeError> {
    (q as u64)
        .checked_pow(e)
        .ok_or_else(|| ArrangeError::InvalidType {
            message: format!("{q}^{e} overflows"),
        })
}

/// Number of points of the union, from the type alone:
/// `q^n - q^(n-k) * prod(q - d_i)`.
pub fn n_points_type(t: &ArrangementType) -> Result<u64, ArrangeError> {
    let k = t.block_count() as u32;
    let total = powq(t.q, t.n)?;
    let mut outside = powq(t.q, t.n - k)?;
    for &d in &t.block_sizes {
        outside =
            outside
                .checked_mul((t.q - d) as u64)
                .ok_or_else(|| ArrangeError::InvalidType {
                    message: "point count overflows".to_string(),
                })?;
    }
    Ok(total - outside)
}

/// One block: `d` distinct parallel hyperplanes `X_{axis+1} = c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub axis: usize,
    pub constants: Vec<FieldElement>,
}

/// A concrete axis-aligned arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    q: u32,
    n: u32,
    blocks: Vec<Block>,
}

impl Arrangement {
    pub fn new(q: u32, n: u32, blocks: Vec<Block>) -> Result<Self, ArrangeError> {
        if blocks.len() as u32 > n {
            return Err(ArrangeError::InvalidType {
                message: format!("{} blocks in {n} variables", blocks.len()),
            });
        }
        let mut seen_axes = std::collections::HashSet::new();
        for b in &blocks {
            if b.axis >= n as usize {
                return Err(ArrangeError::InvalidType {
                    message: format!("axis {} out of range", b.axis),
                });
            }
            if !seen_axes.insert(b.axis) {
                return Err(ArrangeError::InvalidType {
                    message: format!("axis {} used twice", b.axis),
                });
            }
            let mut consts = std::collections::HashSet::new();
            for &c in &b.constants {
                if c.index() as u32 >= q || !consts.insert(c) {
                    return Err(ArrangeError::InvalidType {
                        message: "block constants must be distinct field elements".to_string(),
                    });
                }
            }
            if b.constants.is_empty() || b.constants.len() as u32 > q - 1 {
                return Err(ArrangeError::InvalidType {
                    message: format!("block size {} out of 1..={}", b.constants.len(), q - 1),
                });
            }
        }
        Ok(Arrangement { q, n, blocks })
    }

    /// The empty arrangement (no hyperplanes).
    pub fn empty(q: u32, n: u32) -> Self {
        Arrangement {
            q,
            n,
            blocks: Vec::new(),
        }
    }

    /// Canonical realization of a type: block i along axis i, constants
    /// the first `d_i` field elements in index order.
    pub fn of_type(t: &ArrangementType, field: &FieldSpec) -> Self {
        assert_eq!(field.q(), t.q);
        let blocks = t
            .block_sizes
            .iter()
            .enumerate()
            .map(|(axis, &d)| Block {
                axis,
                constants: (0..d).map(|j| field.element(j).expect("j < q")).collect(),
            })
            .collect();
        Arrangement {
            q: t.q,
            n: t.n,
            blocks,
        }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn arrangement_type(&self) -> Result<ArrangementType, ArrangeError> {
        ArrangementType::new(
            self.q,
            self.n,
            self.blocks
                .iter()
                .map(|b| b.constants.len() as u32)
                .collect(),
        )
    }

    /// Exact number of points of the union, by scanning the grid.
    pub fn n_points_grid(&self, budget: u64) -> Result<u64, ArrangeError> {
        let size = grid::size(self.q, self.n as usize);
        if size > budget as u128 {
            return Err(ArrangeError::BudgetExceeded {
                required: size,
                budget,
            });
        }
        let mut count = 0u64;
        grid::scan(self.q, self.n as usize, |point| {
            let hit = self.blocks.iter().any(|b| {
                b.constants
                    .iter()
                    .any(|c| c.index() as u32 == point[b.axis])
            });
            if hit {
                count += 1;
            }
        });
        Ok(count)
    }

    /// The product polynomial whose zero set is the union:
    /// `prod over blocks, prod over constants (X_axis - c)`.
    pub fn to_poly(&self, field: &FieldSpec) -> MultiPoly {
        assert_eq!(field.q(), self.q);
        let n = self.n as usize;
        let mut acc = MultiPoly::constant(field, n, field.one());
        for b in &self.blocks {
            for &c in &b.constants {
                let factor =
                    MultiPoly::var(field, n, b.axis).sub(&MultiPoly::constant(field, n, c));
                acc = acc.mul(&factor);
            }
        }
        acc
    }
}

/// The four exchanges applied to a maximal configuration of degree d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExchangeKind {
    /// Move one hyperplane from a complete block to the last block.
    T1,
    /// Move one hyperplane from a complete block to a new direction.
    T2,
    /// Move one hyperplane from the last block to a new direction.
    T3,
    /// Drop the single hyperplane of the last block (b = 1 only).
    T4,
}

impl ExchangeKind {
    pub const ALL: [ExchangeKind; 4] = [
        ExchangeKind::T1,
        ExchangeKind::T2,
        ExchangeKind::T3,
        ExchangeKind::T4,
    ];
}

impl fmt::Display for ExchangeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExchangeKind::T1 => write!(f, "T1"),
            ExchangeKind::T2 => write!(f, "T2"),
            ExchangeKind::T3 => write!(f, "T3"),
            ExchangeKind::T4 => write!(f, "T4"),
        }
    }
}

/// Result of applying an exchange: the new type, its point count, and how
/// far it fell from the maximal count `N1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exchange {
    pub kind: ExchangeKind,
    pub ty: ArrangementType,
    pub n_points: u64,
    pub gap_from_n1: u64,
}

fn split_degree(q: u32, n: u32, d: u32) -> Result<(u32, u32), ArrangeError> {
    if q < 2 || n == 0 || d == 0 || d as u64 >= n as u64 * (q as u64 - 1) {
        return Err(ArrangeError::DegreeOutOfRange { q, n, d });
    }
    Ok((d / (q - 1), d % (q - 1)))
}

fn exchange_applicable(kind: ExchangeKind, q: u32, n: u32, a: u32, b: u32) -> bool {
    match kind {
        // b < q-2 needs q >= 3; for b = q-2 the exchange lands back on a
        // maximal arrangement.
        ExchangeKind::T1 => a >= 1 && a < n && q >= 2 && b + 2 < q,
        ExchangeKind::T2 => a >= 1 && a + 1 < n && b >= 1 && b < q - 1,
        ExchangeKind::T3 => a >= 1 && a + 1 < n && b >= 2 && b < q - 1,
        ExchangeKind::T4 => a >= 1 && a + 1 < n && b == 1,
    }
}

/// The exchanged type and its point count, computed through
/// [`n_points_type`]. The closed forms live in
/// [`exchange_points_formula`] and [`exchange_gap_formula`] so the two
/// routes can be compared.
pub fn apply_exchange(
    q: u32,
    n: u32,
    d: u32,
    kind: ExchangeKind,
) -> Result<Exchange, ArrangeError> {
    let (a, b) = split_degree(q, n, d)?;
    if !exchange_applicable(kind, q, n, a, b) {
        return Err(ArrangeError::ExchangeNotApplicable { kind, a, b, q, n });
    }
    let mut sizes: Vec<u32> = Vec::new();
    match kind {
        ExchangeKind::T1 => {
            sizes.extend(std::iter::repeat_n(q - 1, a as usize - 1));
            sizes.push(q - 2);
            sizes.push(b + 1);
        }
        ExchangeKind::T2 => {
            sizes.extend(std::iter::repeat_n(q - 1, a as usize - 1));
            sizes.push(q - 2);
            sizes.push(b);
            sizes.push(1);
        }
        ExchangeKind::T3 => {
            sizes.extend(std::iter::repeat_n(q - 1, a as usize));
            sizes.push(b - 1);
            sizes.push(1);
        }
        ExchangeKind::T4 => {
            sizes.extend(std::iter::repeat_n(q - 1, a as usize));
        }
    }
    let ty = ArrangementType::new(q, n, sizes)?;
    let n_points = n_points_type(&ty)?;
    let n1 = powq(q, n)? - (q - b) as u64 * powq(q, n - a - 1)?;
    Ok(Exchange {
        kind,
        ty,
        n_points,
        gap_from_n1: n1 - n_points,
    })
}

/// Closed form for the exchanged point count:
/// T1: `q^n - 2 q^(n-a-1) (q-b-1)`; T2: `q^n - 2 q^(n-a-2) (q-1) (q-b)`;
/// T3: `q^n - q^(n-a-2) (q-1) (q-b+1)`; T4: `q^n - q^(n-a)`.
pub fn exchange_points_formula(
    kind: ExchangeKind,
    q: u32,
    n: u32,
    d: u32,
) -> Result<u64, ArrangeError> {
    let (a, b) = split_degree(q, n, d)?;
    if !exchange_applicable(kind, q, n, a, b) {
        return Err(ArrangeError::ExchangeNotApplicable { kind, a, b, q, n });
    }
    let total = powq(q, n)?;
    Ok(match kind {
        ExchangeKind::T1 => total - 2 * powq(q, n - a - 1)? * (q - b - 1) as u64,
        ExchangeKind::T2 => total - 2 * powq(q, n - a - 2)? * (q - 1) as u64 * (q - b) as u64,
        ExchangeKind::T3 => total - powq(q, n - a - 2)? * (q - 1) as u64 * (q - b + 1) as u64,
        ExchangeKind::T4 => total - powq(q, n - a)?,
    })
}

/// Closed form for the gap `N1 - N(T_i)`:
/// T1: `q^(n-a-1) (q-b-2)`; T2: `q^(n-a-2) (q-b) (q-2)`;
/// T3: `q^(n-a-2) (b-1)`; T4: `q^(n-a-1)`.
pub fn exchange_gap_formula(
    kind: ExchangeKind,
    q: u32,
    n: u32,
    d: u32,
) -> Result<u64, ArrangeError> {
    let (a, b) = split_degree(q, n, d)?;
    if !exchange_applicable(kind, q, n, a, b) {
        return Err(ArrangeError::ExchangeNotApplicable { kind, a, b, q, n });
    }
    Ok(match kind {
        ExchangeKind::T1 => powq(q, n - a - 1)? * (q - b - 2) as u64,
        ExchangeKind::T2 => powq(q, n - a - 2)? * (q - b) as u64 * (q - 2) as u64,
        ExchangeKind::T3 => powq(q, n - a - 2)? * (b - 1) as u64,
        ExchangeKind::T4 => powq(q, n - a - 1)?,
    })
}

/// True iff the type is the maximal configuration for degree d:
/// `a` blocks of size `q-1` plus, when `b > 0`, one block of size `b`.
pub fn is_maximal_type(t: &ArrangementType, d: u32) -> bool {
    let q = t.q;
    if q < 2 || d == 0 || d as u64 >= t.n as u64 * (q as u64 - 1) {
        return false;
    }
    let (a, b) = (d / (q - 1), d % (q - 1));
    let mut expected: Vec<u32> = std::iter::repeat_n(q - 1, a as usize).collect();
    if b > 0 {
        expected.push(b);
    }
    expected.sort_unstable_by(|x, y| y.cmp(x));
    t.block_sizes == expected
}

/// All arrangement types with degree sum at most `max_degree`, in a
/// deterministic order (non-increasing part lists, lexicographically).
pub fn enumerate_types(q: u32, n: u32, max_degree: u32) -> Vec<ArrangementType> {
    let mut out = Vec::new();
    let mut parts: Vec<u32> = Vec::new();
    fn rec(
        q: u32,
        n: u32,
        remaining: u32,
        max_part: u32,
        parts: &mut Vec<u32>,
        out: &mut Vec<ArrangementType>,
    ) {
        if !parts.is_empty() {
            out.push(ArrangementType {
                q,
                n,
                block_sizes: parts.clone(),
            });
        }
        if parts.len() as u32 == n {
            return;
        }
        let cap = max_part.min(remaining);
        for next in (1..=cap).rev() {
            parts.push(next);
            rec(q, n, remaining - next, next, parts, out);
            parts.pop();
        }
    }
    rec(
        q,
        n,
        max_degree.min(n * (q - 1)),
        q - 1,
        &mut parts,
        &mut out,
    );
    out
}

/// Exhaustive best non-maximal type: enumerates every type with degree
/// sum at most `d`, excludes the maximal configuration of degree `d`, and
/// returns a maximizer of the point count (ties resolved toward the
/// lexicographically smallest block-size list).
pub fn best_nonmaximal_type(
    q: u32,
    n: u32,
    d: u32,
) -> Result<(ArrangementType, u64), ArrangeError> {
    if q < 3 || n < 3 || d < q || d as u64 > (n as u64 - 1) * (q as u64 - 1) {
        return Err(ArrangeError::DegreeOutOfRange { q, n, d });
    }
    let mut best: Option<(ArrangementType, u64)> = None;
    for t in enumerate_types(q, n, d) {
        if is_maximal_type(&t, d) {
            continue;
        }
        let pts = n_points_type(&t)?;
        let better = match &best {
            None => true,
            Some((bt, bp)) => pts > *bp || (pts == *bp && t.block_sizes < bt.block_sizes),
        };
        if better {
            best = Some((t, pts));
        }
    }
    best.ok_or(ArrangeError::DegreeOutOfRange { q, n, d })
}

/// The closed-form best non-maximal point count `N'2`:
/// for q >= 4 the winner is T3 when `2 <= b < q-1`, T4 when `b = 1`, T1
/// when `b = 0`; for q = 3 it is T1 when `b = 0` and T2 when `b = 1`.
pub fn best_nonmaximal_closed_form(q: u32, n: u32, d: u32) -> Result<u64, ArrangeError> {
    if q < 3 || n < 3 || d < q || d as u64 > (n as u64 - 1) * (q as u64 - 1) {
        return Err(ArrangeError::DegreeOutOfRange { q, n, d });
    }
    let b = d % (q - 1);
    let kind = if q >= 4 {
        match b {
            0 => ExchangeKind::T1,
            1 => ExchangeKind::T4,
            _ => ExchangeKind::T3,
        }
    } else {
        match b {
            0 => ExchangeKind::T1,
            _ => ExchangeKind::T2,
        }
    };
    exchange_points_formula(kind, q, n, d)
}
