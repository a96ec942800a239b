//! Graded-lex Groebner machinery: multivariate division, S-polynomials,
//! the Buchberger criterion and completion loop, footprint counting,
//! rational-point counting, and the footprint-based weight lower bound.
//!
//! The completion loop is the plain pair-queue algorithm with only the
//! coprime-leading-monomial skip; inputs here are tiny. Output bases are
//! inter-reduced, monic and sorted ascending by leading monomial, so runs
//! are reproducible byte for byte.

use std::fmt;

use crate::ffield::{FieldElement, FieldSpec};
use crate::grid;
use crate::mpoly::{Monomial, MultiPoly};

/// Default cap on the number of S-polynomial reductions one completion
/// run may perform.
pub const DEFAULT_ITERATION_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    /// Monomials live in different ambient spaces.
    LengthMismatch { left: usize, right: usize },
    /// An operation received the zero polynomial where a nonzero one is
    /// required.
    ZeroPolynomial,
    /// A basis must contain at least one polynomial.
    EmptyBasis,
    /// Basis members live over different fields or variable counts.
    MixedAmbient,
    /// The completion loop exceeded its reduction cap.
    IterationCapExceeded { cap: usize },
    /// The box `[0, q-1]^n` is larger than the enumeration budget.
    BudgetExceeded { required: u128, budget: u64 },
    /// An exponent outside `0..q`.
    InvalidExponent { index: usize, value: u32, q: u32 },
    /// The extra monomial violates the structural constraints of the
    /// weight bound.
    ConstraintViolated { message: String },
}

impl fmt::Display for GroebnerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroebnerError::LengthMismatch { left, right } => {
                write!(f, "monomial arity mismatch: {left} vs {right}")
            }
            GroebnerError::ZeroPolynomial => write!(f, "zero polynomial not allowed here"),
            GroebnerError::EmptyBasis => write!(f, "basis must be nonempty"),
            GroebnerError::MixedAmbient => {
                write!(f, "basis members must share one field and variable count")
            }
            GroebnerError::IterationCapExceeded { cap } => {
                write!(
                    f,
                    "Buchberger completion exceeded the cap of {cap} reductions"
                )
            }
            GroebnerError::BudgetExceeded { required, budget } => {
                write!(
                    f,
                    "box of {required} points exceeds the enumeration budget of {budget}"
                )
            }
            GroebnerError::InvalidExponent { index, value, q } => {
                write!(
                    f,
                    "exponent {value} at position {index} out of range for GF({q})"
                )
            }
            GroebnerError::ConstraintViolated { message } => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for GroebnerError {}

/// An ordered list of nonzero polynomials over one ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyBasis {
    polys: Vec<MultiPoly>,
}

impl PolyBasis {
    pub fn new(polys: Vec<MultiPoly>) -> Result<Self, GroebnerError> {
        let first = polys.first().ok_or(GroebnerError::EmptyBasis)?;
        let (field, n) = (first.field().clone(), first.num_vars());
        for p in &polys {
            if p.is_zero() {
                return Err(GroebnerError::ZeroPolynomial);
            }
            if *p.field() != field || p.num_vars() != n {
                return Err(GroebnerError::MixedAmbient);
            }
        }
        Ok(PolyBasis { polys })
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn field(&self) -> &FieldSpec {
        self.polys[0].field()
    }

    pub fn num_vars(&self) -> usize {
        self.polys[0].num_vars()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| {
                p.leading_term()
                    .expect("basis members are nonzero")
                    .monomial
                    .clone()
            })
            .collect()
    }
}

/// Footprint of a leading-monomial ideal over the box `[0, q-1]^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FootprintReport {
    pub generators_lm: Vec<Monomial>,
    pub delta_size: u64,
    pub box_bound: u32,
}

/// Strict graded-lex order: smaller total degree first, ties broken by the
/// first differing exponent (larger exponent on the earlier variable wins).
pub fn grlex_less(m1: &Monomial, m2: &Monomial) -> Result<bool, GroebnerError> {
    if m1.num_vars() != m2.num_vars() {
        return Err(GroebnerError::LengthMismatch {
            left: m1.num_vars(),
            right: m2.num_vars(),
        });
    }
    Ok(m1.cmp_grlex(m2) == std::cmp::Ordering::Less)
}

/// The field equations `X1^q - X1, ..., Xn^q - Xn`.
pub fn field_equations(field: &FieldSpec, n: usize) -> Vec<MultiPoly> {
    let q = field.q();
    (0..n)
        .map(|axis| {
            let mut exps = vec![0u32; n];
            exps[axis] = q;
            MultiPoly::from_terms(
                field,
                n,
                [
                    (field.one(), Monomial::new(exps)),
                    (field.neg(field.one()), Monomial::var(axis, n)),
                ],
            )
        })
        .collect()
}

/// Division of `f` by an ordered list of divisors.
///
/// Returns `(quotients, remainder)` with `f = sum(q_i * f_i) + r`, no
/// monomial of `r` divisible by any divisor's leading monomial, and every
/// nonzero `q_i * f_i` of multidegree at most that of `f`. When several
/// divisors' leading terms divide the current monomial the lowest index
/// wins.
pub fn divide(f: &MultiPoly, divisors: &PolyBasis) -> (Vec<MultiPoly>, MultiPoly) {
    divide_by(f, &divisors.polys)
}

pub(crate) fn divide_by(f: &MultiPoly, divisors: &[MultiPoly]) -> (Vec<MultiPoly>, MultiPoly) {
    let field = f.field().clone();
    let n = f.num_vars();
    let mut quotients = vec![MultiPoly::zero(&field, n); divisors.len()];
    let mut remainder = MultiPoly::zero(&field, n);
    let mut p = f.clone();

    while let Some(lt) = p.leading_term().cloned() {
        let hit = divisors.iter().position(|g| {
            g.leading_term()
                .map(|glt| glt.monomial.divides(&lt.monomial))
                .unwrap_or(false)
        });
        match hit {
            Some(i) => {
                let g = &divisors[i];
                let glt = g.leading_term().expect("divisors are nonzero");
                let m = lt
                    .monomial
                    .checked_div(&glt.monomial)
                    .expect("divisibility just checked");
                let c = field.mul(
                    lt.coeff,
                    field.inv(glt.coeff).expect("nonzero leading coeff"),
                );
                quotients[i] =
                    quotients[i].add(&MultiPoly::from_terms(&field, n, [(c, m.clone())]));
                p = p.sub(&g.mul_term(c, &m));
            }
            None => {
                let single = MultiPoly::from_terms(&field, n, [(lt.coeff, lt.monomial.clone())]);
                remainder = remainder.add(&single);
                p = p.sub(&single);
            }
        }
    }
    (quotients, remainder)
}

/// The S-polynomial `lcm/lt(f) * f - lcm/lt(g) * g` where `lcm` is the
/// least common multiple of the two leading monomials.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly, GroebnerError> {
    let flt = f.leading_term().ok_or(GroebnerError::ZeroPolynomial)?;
    let glt = g.leading_term().ok_or(GroebnerError::ZeroPolynomial)?;
    let field = f.field().clone();
    let lcm = flt.monomial.lcm(&glt.monomial);
    let fm = lcm.checked_div(&flt.monomial).expect("lcm is divisible");
    let gm = lcm.checked_div(&glt.monomial).expect("lcm is divisible");
    let fc = field.inv(flt.coeff).expect("nonzero leading coeff");
    let gc = field.inv(glt.coeff).expect("nonzero leading coeff");
    Ok(f.mul_term(fc, &fm).sub(&g.mul_term(gc, &gm)))
}

/// Buchberger criterion: every pairwise S-polynomial reduces to zero on
/// division by the basis in list order. Pairs with coprime leading
/// monomials are skipped; their S-polynomials always reduce to zero.
pub fn is_groebner(basis: &PolyBasis) -> bool {
    let polys = &basis.polys;
    for i in 0..polys.len() {
        for j in (i + 1)..polys.len() {
            let mi = &polys[i].leading_term().expect("nonzero").monomial;
            let mj = &polys[j].leading_term().expect("nonzero").monomial;
            if mi.is_coprime(mj) {
                continue;
            }
            let s = s_polynomial(&polys[i], &polys[j]).expect("members are nonzero");
            let (_, r) = divide_by(&s, polys);
            if !r.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Buchberger completion with a FIFO pair queue and the coprime skip.
///
/// The returned basis generates the same ideal, satisfies [`is_groebner`],
/// and is inter-reduced: monic members sorted ascending by leading
/// monomial, no leading monomial dividing another, every tail reduced.
pub fn buchberger(basis: &PolyBasis, cap: usize) -> Result<PolyBasis, GroebnerError> {
    let mut polys = basis.polys.clone();
    let mut queue: std::collections::VecDeque<(usize, usize)> = (0..polys.len())
        .flat_map(|i| ((i + 1)..polys.len()).map(move |j| (i, j)))
        .collect();
    let mut reductions = 0usize;

    while let Some((i, j)) = queue.pop_front() {
        let mi = &polys[i].leading_term().expect("nonzero").monomial;
        let mj = &polys[j].leading_term().expect("nonzero").monomial;
        if mi.is_coprime(mj) {
            continue;
        }
        if reductions >= cap {
            return Err(GroebnerError::IterationCapExceeded { cap });
        }
        reductions += 1;
        let s = s_polynomial(&polys[i], &polys[j]).expect("members are nonzero");
        let (_, r) = divide_by(&s, &polys);
        if !r.is_zero() {
            let k = polys.len();
            polys.push(r.monic());
            for i in 0..k {
                queue.push_back((i, k));
            }
        }
    }

    Ok(PolyBasis {
        polys: inter_reduce(polys),
    })
}

/// Minimalizes (drops members whose leading monomial is divisible by
/// another's), tail-reduces each survivor against the rest, normalizes
/// monic, sorts ascending by leading monomial.
fn inter_reduce(mut polys: Vec<MultiPoly>) -> Vec<MultiPoly> {
    polys.sort_by(|a, b| {
        a.leading_term()
            .expect("nonzero")
            .monomial
            .cmp_grlex(&b.leading_term().expect("nonzero").monomial)
    });
    let mut kept: Vec<MultiPoly> = Vec::new();
    for p in polys {
        let lm = &p.leading_term().expect("nonzero").monomial;
        let redundant = kept
            .iter()
            .any(|k| k.leading_term().expect("nonzero").monomial.divides(lm));
        if !redundant {
            kept.push(p.monic());
        }
    }
    let reduced: Vec<MultiPoly> = (0..kept.len())
        .map(|i| {
            let others: Vec<MultiPoly> = kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            if others.is_empty() {
                kept[i].clone()
            } else {
                divide_by(&kept[i], &others).1.monic()
            }
        })
        .collect();
    reduced
}

/// Size of the footprint within the box `[0, q-1]^n`: exponent vectors
/// divisible by no generator leading monomial. The underlying ideal is
/// assumed to contain `Xi^q` for every i (append them to `lms` when they
/// are not already implied).
pub fn footprint_size(
    lms: &[Monomial],
    q: u32,
    n: usize,
    budget: u64,
) -> Result<FootprintReport, GroebnerError> {
    for m in lms {
        if m.num_vars() != n {
            return Err(GroebnerError::LengthMismatch {
                left: m.num_vars(),
                right: n,
            });
        }
    }
    let size = grid::size(q, n);
    if size > budget as u128 {
        return Err(GroebnerError::BudgetExceeded {
            required: size,
            budget,
        });
    }
    // Monomials with an exponent >= q can never divide a box point; drop
    // them up front.
    let active: Vec<&Monomial> = lms
        .iter()
        .filter(|m| m.exponents().iter().all(|&e| e < q))
        .collect();
    let mut delta = 0u64;
    grid::scan(q, n, |beta| {
        let divisible = active
            .iter()
            .any(|m| m.exponents().iter().zip(beta).all(|(&e, &b)| e <= b));
        if !divisible {
            delta += 1;
        }
    });
    Ok(FootprintReport {
        generators_lm: lms.to_vec(),
        delta_size: delta,
        box_bound: q,
    })
}

/// Number of common zeros of the basis over the full grid `GF(q)^n`.
pub fn rational_points(basis: &PolyBasis, budget: u64) -> Result<u64, GroebnerError> {
    let field = basis.field().clone();
    let n = basis.num_vars();
    let q = field.q();
    let size = grid::size(q, n);
    if size > budget as u128 {
        return Err(GroebnerError::BudgetExceeded {
            required: size,
            budget,
        });
    }
    let mut count = 0u64;
    let mut point: Vec<FieldElement> = vec![field.zero(); n];
    grid::scan(q, n, |tuple| {
        for (slot, &v) in point.iter_mut().zip(tuple) {
            *slot = field.element(v).expect("tuple entries are < q");
        }
        if basis.polys.iter().all(|p| p.evaluate(&point).is_zero()) {
            count += 1;
        }
    });
    Ok(count)
}

/// Footprint-based lower bound on the weight of a reduced degree-d
/// polynomial whose leading exponents are `u` (sorted non-increasing
/// internally; the bound is symmetric in them).
///
/// Without `extra` the bound is the box complement `prod(q - u_i)`. With
/// an extra monomial `M = X^alpha` (a nonzero remainder's leading
/// monomial, positioned against the maximal head for the given `d`), the
/// bound sharpens to
/// `(q-b) q^(n-a-1) + prod(q - alpha_i) - (q-gamma) prod_{i>a+1}(q - alpha_i)`
/// with `a, b` the quotient and remainder of `d` by `q-1` and
/// `gamma = max(b, alpha_{a+1})`.
pub fn weight_lower_bound(
    u: &[u32],
    q: u32,
    n: usize,
    d: u32,
    extra: Option<&Monomial>,
) -> Result<u64, GroebnerError> {
    if u.len() != n {
        return Err(GroebnerError::LengthMismatch {
            left: u.len(),
            right: n,
        });
    }
    for (index, &value) in u.iter().enumerate() {
        if value >= q {
            return Err(GroebnerError::InvalidExponent { index, value, q });
        }
    }
    let mut u_sorted = u.to_vec();
    u_sorted.sort_unstable_by(|a, b| b.cmp(a));

    let base: u64 = u_sorted.iter().map(|&ui| (q - ui) as u64).product();
    let Some(m) = extra else {
        return Ok(base);
    };

    assert!(
        d >= 1 && (d as u64) < (n as u64) * (q as u64 - 1),
        "d out of range"
    );
    let a = (d / (q - 1)) as usize;
    let b = d % (q - 1);
    let alpha = m.exponents();
    if alpha.len() != n {
        return Err(GroebnerError::LengthMismatch {
            left: alpha.len(),
            right: n,
        });
    }
    for (index, &value) in alpha.iter().enumerate() {
        if value >= q {
            return Err(GroebnerError::InvalidExponent { index, value, q });
        }
    }
    // M may not be divisible by the maximal head X1^(q-1)..Xa^(q-1)Xa+1^b,
    // and its degree is capped by the budget K of the associated
    // minimization.
    if alpha[..a].iter().all(|&e| e == q - 1) && alpha[a] >= b {
        return Err(GroebnerError::ConstraintViolated {
            message: "extra monomial is divisible by the maximal head".to_string(),
        });
    }
    let k_budget = if b == 0 { d + 1 } else { d + q - b };
    let total: u64 = alpha.iter().map(|&e| e as u64).sum();
    if total > k_budget as u64 {
        return Err(GroebnerError::ConstraintViolated {
            message: format!("extra monomial degree {total} exceeds the bound budget {k_budget}"),
        });
    }

    let w1 = (q - b) as u64 * (q as u64).pow((n - a - 1) as u32);
    let a2: u64 = alpha.iter().map(|&e| (q - e) as u64).product();
    let gamma = b.max(alpha[a]);
    let overlap: u64 = (q - gamma) as u64
        * alpha[a + 1..]
            .iter()
            .map(|&e| (q - e) as u64)
            .product::<u64>();
    Ok(w1 + a2 - overlap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;
    use crate::mpoly::parse_poly;

    fn gf(q: u32) -> FieldSpec {
        make_field(q).unwrap()
    }

    fn p(text: &str, n: usize, field: &FieldSpec) -> MultiPoly {
        parse_poly(text, n, field).unwrap()
    }

    fn basis(polys: Vec<MultiPoly>) -> PolyBasis {
        PolyBasis::new(polys).unwrap()
    }

    #[test]
    fn grlex_less_examples() {
        let m = |e: Vec<u32>| Monomial::new(e);
        assert!(grlex_less(&m(vec![1, 1]), &m(vec![3, 0])).unwrap());
        assert!(grlex_less(&m(vec![1, 2]), &m(vec![2, 1])).unwrap());
        assert!(!grlex_less(&m(vec![2, 1]), &m(vec![2, 1])).unwrap());
        assert!(matches!(
            grlex_less(&m(vec![1]), &m(vec![1, 0])),
            Err(GroebnerError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn divide_by_self() {
        let f = gf(3);
        let poly = p("X1^2*X2 + 2*X1 + 1", 2, &f);
        let (qs, r) = divide(&poly, &basis(vec![poly.clone()]));
        assert!(r.is_zero());
        assert_eq!(qs[0], p("1", 2, &f));
    }

    #[test]
    fn divide_single_step() {
        let f = gf(3);
        let (qs, r) = divide(&p("X1^2*X2 + 1", 2, &f), &basis(vec![p("X1^2", 2, &f)]));
        assert_eq!(qs[0], p("X2", 2, &f));
        assert_eq!(r, p("1", 2, &f));
    }

    #[test]
    fn divide_with_remainder() {
        let f = gf(3);
        let (qs, r) = divide(&p("X1^2 + X1", 1, &f), &basis(vec![p("X1^2 - X1", 1, &f)]));
        assert_eq!(qs[0], p("1", 1, &f));
        assert_eq!(r, p("2*X1", 1, &f));
    }

    /// Reconstruction and remainder contracts of the division algorithm.
    #[test]
    fn divide_contract() {
        let f = gf(5);
        let dividend = p("X1^3*X2 + 2*X1*X2^2 + 3*X2 + 4", 2, &f);
        let divisors = basis(vec![p("X1^2 + X2", 2, &f), p("X2^2 + 3", 2, &f)]);
        let (qs, r) = divide(&dividend, &divisors);
        let mut rebuilt = r.clone();
        for (quot, g) in qs.iter().zip(divisors.polys()) {
            rebuilt = rebuilt.add(&quot.mul(g));
        }
        assert_eq!(rebuilt, dividend);
        for t in r.terms() {
            for g in divisors.polys() {
                assert!(!g.leading_term().unwrap().monomial.divides(&t.monomial));
            }
        }
        // no product exceeds the dividend's multidegree
        let flm = &dividend.leading_term().unwrap().monomial;
        for (quot, g) in qs.iter().zip(divisors.polys()) {
            if let Some(lt) = quot.mul(g).leading_term() {
                assert_ne!(lt.monomial.cmp_grlex(flm), std::cmp::Ordering::Greater);
            }
        }
    }

    #[test]
    fn s_polynomial_self_is_zero() {
        let f = gf(3);
        let poly = p("X1^2 + X2", 2, &f);
        assert!(s_polynomial(&poly, &poly).unwrap().is_zero());
    }

    #[test]
    fn s_polynomial_example() {
        let f = gf(3);
        let s = s_polynomial(&p("X1^2 + X2", 2, &f), &p("X1*X2 + 1", 2, &f)).unwrap();
        assert_eq!(s, p("X2^2 + 2*X1", 2, &f));
    }

    #[test]
    fn s_polynomial_coprime_heads_cancel() {
        let f = gf(3);
        let s = s_polynomial(&p("X1^2", 2, &f), &p("X2^2", 2, &f)).unwrap();
        assert!(s.is_zero());
    }

    /// Against a field equation `Xi^q - Xi`, the S-polynomial collapses
    /// to `Xi^(q-ui) G + (lm(F)/Xi^(ui-1))` where G is the tail of F:
    /// the head cancels and only the degree-lowered head monomial and the
    /// shifted tail remain.
    #[test]
    fn s_polynomial_against_field_equation() {
        let f = gf(3);
        for text in ["X1^2*X2 + 2*X2 + 1", "X1^2*X2^2 + X1*X3", "X1*X2*X3 + 2"] {
            let poly = p(text, 3, &f);
            let lt = poly.leading_term().unwrap().clone();
            let tail = poly.sub(&p(&lt.monomial.to_string(), 3, &f));
            for (axis, eq) in field_equations(&f, 3).iter().enumerate() {
                let ui = lt.monomial.exponents()[axis];
                if ui == 0 {
                    continue;
                }
                let s = s_polynomial(&poly, eq).unwrap();
                let mut shift = vec![0u32; 3];
                shift[axis] = 3 - ui;
                let shifted_tail = tail.mul_term(f.one(), &Monomial::new(shift));
                let mut lowered = lt.monomial.exponents().to_vec();
                lowered[axis] = 1;
                let head = MultiPoly::from_terms(&f, 3, [(f.one(), Monomial::new(lowered))]);
                assert_eq!(s, shifted_tail.add(&head), "axis {axis} of {text}");
            }
        }
    }

    #[test]
    fn s_polynomial_zero_input() {
        let f = gf(3);
        let z = MultiPoly::zero(&f, 2);
        assert_eq!(
            s_polynomial(&z, &p("X1", 2, &f)),
            Err(GroebnerError::ZeroPolynomial)
        );
    }

    #[test]
    fn is_groebner_examples() {
        let f = gf(3);
        assert!(is_groebner(&basis(vec![
            p("X1 - 1", 2, &f),
            p("X2 - 1", 2, &f)
        ])));
        assert!(!is_groebner(&basis(vec![
            p("X1^2", 2, &f),
            p("X2^2", 2, &f),
            p("X1^3 - X1", 2, &f),
            p("X2^3 - X2", 2, &f),
        ])));
        assert!(is_groebner(&basis(vec![p("X1^2*X2 + X1", 2, &f)])));
    }

    #[test]
    fn buchberger_fixpoint() {
        let f = gf(3);
        let b = basis(vec![p("X1 - 1", 2, &f), p("X2 - 2", 2, &f)]);
        let gb = buchberger(&b, DEFAULT_ITERATION_CAP).unwrap();
        assert!(is_groebner(&gb));
        assert_eq!(gb.polys().len(), 2);
    }

    #[test]
    fn buchberger_completes_to_variables() {
        let f = gf(3);
        let b = basis(vec![
            p("X1^2", 2, &f),
            p("X2^2", 2, &f),
            p("X1^3 - X1", 2, &f),
            p("X2^3 - X2", 2, &f),
        ]);
        let gb = buchberger(&b, DEFAULT_ITERATION_CAP).unwrap();
        assert!(is_groebner(&gb));
        let lms: Vec<Monomial> = gb.leading_monomials();
        assert_eq!(
            lms,
            vec![Monomial::new(vec![0, 1]), Monomial::new(vec![1, 0])]
        );
        // footprint 1 = single common zero (the origin)
        let fp = footprint_size(&lms, 3, 2, 1 << 20).unwrap();
        assert_eq!(fp.delta_size, 1);
        assert_eq!(rational_points(&b, 1 << 20).unwrap(), 1);
    }

    #[test]
    fn buchberger_iteration_cap() {
        let f = gf(3);
        let b = basis(vec![
            p("X1^2", 2, &f),
            p("X2^2", 2, &f),
            p("X1^3 - X1", 2, &f),
        ]);
        assert_eq!(
            buchberger(&b, 1),
            Err(GroebnerError::IterationCapExceeded { cap: 1 })
        );
    }

    #[test]
    fn footprint_closed_form_example() {
        // lm X1^2*X2 over GF(3)^2 plus field powers: 9 - (3-2)(3-1) = 7.
        let lms = vec![
            Monomial::new(vec![2, 1]),
            Monomial::new(vec![3, 0]),
            Monomial::new(vec![0, 3]),
        ];
        let fp = footprint_size(&lms, 3, 2, 1 << 20).unwrap();
        assert_eq!(fp.delta_size, 7);
        assert_eq!(fp.box_bound, 3);
    }

    #[test]
    fn footprint_single_variable() {
        let lms = vec![Monomial::new(vec![1, 0, 0])];
        assert_eq!(footprint_size(&lms, 3, 3, 1 << 20).unwrap().delta_size, 9);
    }

    /// For a single monomial generator X^u (plus the Xi^q powers) the box
    /// count must equal q^n - prod(q - u_i), exhaustively over all u.
    #[test]
    fn footprint_single_generator_closed_form() {
        for q in [3u32, 4] {
            for n in [2usize, 3] {
                crate::grid::scan(q, n, |u| {
                    let mut lms = vec![Monomial::new(u.to_vec())];
                    for axis in 0..n {
                        let mut e = vec![0u32; n];
                        e[axis] = q;
                        lms.push(Monomial::new(e));
                    }
                    let complement: u64 = u.iter().map(|&ui| (q - ui) as u64).product();
                    let expected = (q as u64).pow(n as u32) - complement;
                    let fp = footprint_size(&lms, q, n, 1 << 20).unwrap();
                    assert_eq!(fp.delta_size, expected, "q={q}, n={n}, u={u:?}");
                });
            }
        }
    }

    /// Footprint of a two-generator leading ideal, frozen from the direct
    /// box count and cross-checked by inclusion-exclusion.
    #[test]
    fn footprint_two_generators() {
        let q = 3u32;
        let n = 3usize;
        let ie = |head: &[u32], m: &[u32]| -> u64 {
            // inclusion-exclusion: box - #A1 - #A2 + #(A1 and A2)
            let card = |gen: &[u32]| -> u64 { gen.iter().map(|&e| (q - e) as u64).product() };
            let both: Vec<u32> = head.iter().zip(m).map(|(&a, &b)| a.max(b)).collect();
            27 - card(head) - card(m) + card(&both)
        };
        // head X1^2*X2 (a=1, b=1), M = X2^2*X3
        let head = [2u32, 1, 0];
        let m = [0u32, 2, 1];
        let fp = footprint_size(
            &[Monomial::new(head.to_vec()), Monomial::new(m.to_vec())],
            q,
            n,
            1 << 20,
        )
        .unwrap();
        assert_eq!(fp.delta_size, 17);
        assert_eq!(fp.delta_size, ie(&head, &m));

        // head X1^2*X2^2 (a=2, b=0), same M: the box count is 20
        let head = [2u32, 2, 0];
        let fp = footprint_size(
            &[Monomial::new(head.to_vec()), Monomial::new(m.to_vec())],
            q,
            n,
            1 << 20,
        )
        .unwrap();
        assert_eq!(fp.delta_size, 20);
        assert_eq!(fp.delta_size, ie(&head, &m));
    }

    #[test]
    fn footprint_budget() {
        let lms = vec![Monomial::new(vec![1, 0, 0, 0])];
        assert!(matches!(
            footprint_size(&lms, 3, 4, 80),
            Err(GroebnerError::BudgetExceeded {
                required: 81,
                budget: 80
            })
        ));
    }

    #[test]
    fn rational_points_examples() {
        let f3 = gf(3);
        assert_eq!(
            rational_points(&basis(vec![p("X1", 2, &f3), p("X2", 2, &f3)]), 1 << 20).unwrap(),
            1
        );
        assert_eq!(
            rational_points(&basis(vec![p("X1^2", 2, &f3), p("X2^2", 2, &f3)]), 1 << 20).unwrap(),
            1
        );
        let f5 = gf(5);
        assert_eq!(
            rational_points(&basis(vec![p("X1*X2 - 1", 2, &f5)]), 1 << 20).unwrap(),
            4
        );
    }

    #[test]
    fn weight_lower_bound_maximal_head() {
        // u = (q-1, ..., q-1, b, 0, ...) gives prod(q - u_i) = (q-b) q^(n-a-1).
        assert_eq!(weight_lower_bound(&[2, 2, 0], 3, 3, 4, None).unwrap(), 3);
        assert_eq!(weight_lower_bound(&[0, 0, 0], 3, 3, 4, None).unwrap(), 27);
    }

    #[test]
    fn weight_lower_bound_with_extra() {
        // q=3, n=3, d=4 (a=2, b=0), M = X1^2*X2*X3^2: 3 + 2 - 1 = 4.
        let m = Monomial::new(vec![2, 1, 2]);
        assert_eq!(
            weight_lower_bound(&[2, 2, 0], 3, 3, 4, Some(&m)).unwrap(),
            4
        );
    }

    #[test]
    fn weight_lower_bound_invalid() {
        assert!(matches!(
            weight_lower_bound(&[3, 0, 0], 3, 3, 4, None),
            Err(GroebnerError::InvalidExponent {
                index: 0,
                value: 3,
                q: 3
            })
        ));
        // maximal head itself is rejected as the extra monomial
        let m = Monomial::new(vec![2, 2, 0]);
        assert!(matches!(
            weight_lower_bound(&[2, 2, 0], 3, 3, 4, Some(&m)),
            Err(GroebnerError::ConstraintViolated { .. })
        ));
    }

    #[test]
    fn poly_basis_validation() {
        let f = gf(3);
        assert_eq!(PolyBasis::new(vec![]), Err(GroebnerError::EmptyBasis));
        assert_eq!(
            PolyBasis::new(vec![MultiPoly::zero(&f, 2)]),
            Err(GroebnerError::ZeroPolynomial)
        );
        let g = gf(5);
        assert_eq!(
            PolyBasis::new(vec![p("X1", 2, &f), p("X1", 2, &g)]),
            Err(GroebnerError::MixedAmbient)
        );
    }

    /// The unshortcut criterion: every pair divided in full, coprime or not.
    fn is_groebner_full(basis: &PolyBasis) -> bool {
        let polys = basis.polys();
        for i in 0..polys.len() {
            for j in (i + 1)..polys.len() {
                let s = s_polynomial(&polys[i], &polys[j]).unwrap();
                if !divide_by(&s, polys).1.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Coprime shortcut soundness: the shortcut criterion agrees with the
    /// unshortcut one, and on a completed basis the skipped pairs really
    /// do have remainder zero.
    #[test]
    fn coprime_shortcut_sound() {
        let f = gf(3);
        let inputs = vec![
            vec![
                p("X1^2 + X2 + 1", 3, &f),
                p("X2^2 + 2*X3", 3, &f),
                p("X3 + 2", 3, &f),
            ],
            vec![
                p("X1^2 + X2 + 1", 3, &f),
                p("X2^2 + 2*X3", 3, &f),
                p("X1*X3^2 + X3", 3, &f),
            ],
            vec![p("X1*X2 + 1", 3, &f), p("X2*X3 + 2", 3, &f)],
            vec![p("X1 - 1", 3, &f), p("X2 - 1", 3, &f)],
        ];
        for gens in inputs {
            let b = basis(gens);
            assert_eq!(is_groebner(&b), is_groebner_full(&b));
            let gb = buchberger(&b, DEFAULT_ITERATION_CAP).unwrap();
            assert!(is_groebner_full(&gb));
            let polys = gb.polys();
            for i in 0..polys.len() {
                for j in (i + 1)..polys.len() {
                    let mi = &polys[i].leading_term().unwrap().monomial;
                    let mj = &polys[j].leading_term().unwrap().monomial;
                    if mi.is_coprime(mj) {
                        let s = s_polynomial(&polys[i], &polys[j]).unwrap();
                        assert!(divide(&s, &gb).1.is_zero());
                    }
                }
            }
        }
    }

    /// Golden output: the reduced basis of this system is the pair of
    /// affine lines through its single common zero (1, 2). Pins the
    /// deterministic inter-reduced form.
    #[test]
    fn buchberger_golden_output() {
        let f = gf(3);
        let mut gens = vec![p("X1^2 + X2", 2, &f), p("X1*X2 + 1", 2, &f)];
        gens.extend(field_equations(&f, 2));
        let gb = buchberger(&PolyBasis::new(gens).unwrap(), DEFAULT_ITERATION_CAP).unwrap();
        let rendered: Vec<String> = gb.polys().iter().map(|g| g.to_string()).collect();
        assert_eq!(rendered, vec!["X2 + 1".to_string(), "X1 + 2".to_string()]);
    }

    /// The footprint bound really bounds weights: for random reduced
    /// nonzero F, the weight is at least the box complement of its
    /// leading exponents.
    #[test]
    fn weight_lower_bound_holds_for_random_polys() {
        use crate::sample::{random_nonzero_reduced_poly, SplitMix64};
        let field = gf(3);
        let mut rng = SplitMix64::new(0xB0);
        for n in [2usize, 3] {
            for _ in 0..50 {
                let f = random_nonzero_reduced_poly(&field, n, 4, &mut rng);
                let u = f.leading_term().unwrap().monomial.exponents().to_vec();
                let bound = weight_lower_bound(&u, 3, n, 1, None).unwrap();
                let weight = f.count_points(1 << 20).unwrap().weight;
                assert!(
                    weight >= bound,
                    "weight {weight} below bound {bound} for {f}"
                );
            }
        }
    }

    /// Completion on systems with several generators: the footprint of
    /// the completed basis counts exactly the common zeros.
    #[test]
    fn footprint_counts_zeros_for_pairs() {
        use crate::sample::{random_nonzero_reduced_poly, SplitMix64};
        let field = gf(3);
        let mut rng = SplitMix64::new(0xBA5E);
        for n in [2usize, 3] {
            for _ in 0..20 {
                let f1 = random_nonzero_reduced_poly(&field, n, 4, &mut rng);
                let f2 = random_nonzero_reduced_poly(&field, n, 3, &mut rng);
                let mut gens = vec![f1.clone(), f2.clone()];
                gens.extend(field_equations(&field, n));
                let gb = buchberger(&PolyBasis::new(gens).unwrap(), DEFAULT_ITERATION_CAP).unwrap();
                assert!(is_groebner(&gb));
                let delta = footprint_size(&gb.leading_monomials(), 3, n, 1 << 20)
                    .unwrap()
                    .delta_size;
                let pts = rational_points(&PolyBasis::new(vec![f1, f2]).unwrap(), 1 << 20).unwrap();
                assert_eq!(delta, pts);
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(q: u32, n: usize, max_deg: u32) -> impl Strategy<Value = Vec<(u32, Vec<u32>)>> {
            prop::collection::vec((1..q, prop::collection::vec(0..=max_deg, n)), 1..6)
        }

        fn build(f: &FieldSpec, n: usize, raw: &[(u32, Vec<u32>)]) -> MultiPoly {
            MultiPoly::from_terms(
                f,
                n,
                raw.iter()
                    .map(|(c, e)| (f.element(*c).unwrap(), Monomial::new(e.clone()))),
            )
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            /// f = sum(q_i f_i) + r and no remainder monomial is divisible.
            #[test]
            fn division_reconstructs(fr in arb_poly(3, 2, 4),
                                     g1 in arb_poly(3, 2, 3),
                                     g2 in arb_poly(3, 2, 2)) {
                let f = make_field(3).unwrap();
                let dividend = build(&f, 2, &fr);
                let d1 = build(&f, 2, &g1);
                let d2 = build(&f, 2, &g2);
                prop_assume!(!d1.is_zero() && !d2.is_zero());
                let divisors = PolyBasis::new(vec![d1, d2]).unwrap();
                let (qs, r) = divide(&dividend, &divisors);
                let mut rebuilt = r.clone();
                for (quot, g) in qs.iter().zip(divisors.polys()) {
                    rebuilt = rebuilt.add(&quot.mul(g));
                }
                prop_assert_eq!(rebuilt, dividend);
                for t in r.terms() {
                    for g in divisors.polys() {
                        prop_assert!(!g.leading_term().unwrap().monomial.divides(&t.monomial));
                    }
                }
            }

            /// Completion always lands on a Groebner basis.
            #[test]
            fn buchberger_output_is_groebner(raw in arb_poly(3, 2, 3)) {
                let f = make_field(3).unwrap();
                let poly = build(&f, 2, &raw);
                prop_assume!(!poly.is_zero());
                let mut gens = vec![poly];
                gens.extend(field_equations(&f, 2));
                let b = PolyBasis::new(gens).unwrap();
                let gb = buchberger(&b, DEFAULT_ITERATION_CAP).unwrap();
                prop_assert!(is_groebner(&gb));
            }
        }
    }
}
