//! Exact big-integer evaluation of the crossing-number bounds, assembled
//! into certified reports.
//!
//! The polytopality p(T) of a triangulation is never computed (no algorithm
//! exists for it here); it is only bracketed according to the available
//! certificate: a verified polytopal witness pins p = n, a verified shelling
//! gives p ≤ 7n, and with no certificate only n ≤ p < 2^(200 n²) holds.
//! Reports carry the certificate alongside the numbers: each bound is a
//! conditional statement and an unverifiable claim would be a bug, so only
//! the bounds justified by the certificate are marked applicable.
//!
//! Doubly-exponential quantities are kept symbolic as powers of two with
//! on-demand expansion; everything that is compared is compared exactly.

use crate::complex::Triangulation;
use crate::diagram::Diagram;
use crate::linkset::EdgeLink;
use crate::realize::{verify_polytopal_witness, CoordMap4, RealizeError};
use crate::scalar::{Int, Rat};
use crate::shelling::{verify_shelling, ShellingCheck, ShellingError};
use crate::Tet;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("a link in a triangulation with {n} tetrahedra has at most {max} edges, got {k}")]
    TooManyEdges { n: usize, k: usize, max: usize },
    #[error("link is empty; bounds require at least 3 edges")]
    EmptyLink,
    #[error("polytopal witness fails verification: {0}")]
    BadWitness(#[from] RealizeError),
    #[error("shelling order fails verification at index {index}")]
    BadShelling { index: usize },
    #[error("shelling order malformed: {0}")]
    ShellingShape(#[from] ShellingError),
    #[error("diagram components do not match the link")]
    DiagramMismatch,
    #[error("achieved crossing count {achieved} is not below the applicable bound {bound}")]
    AchievedNotBelowBound { achieved: usize, bound: String },
}

/// What justifies the bounds of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    /// Verified convex-position witness: every tetrahedron a hull facet.
    Polytopal,
    /// Verified shelling order of the triangulation itself.
    Shellable,
    /// No geometric certificate.
    None,
}

/// The four bound families, named by the hypothesis that justifies them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKey {
    /// 4n², needs a polytopal certificate.
    Polytopal,
    /// 10⁹n⁴, needs shellability (implied by polytopality).
    Shellable,
    /// 2^(810 n²), unconditional.
    General,
    /// (k + 512 p² + 869 p + 376)² at the certified upper end of p.
    ViaPolytopality,
}

/// An exact value that may be kept symbolic as a power of two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    Int(Int),
    Pow2 { exponent: u64 },
    Pow2MinusOne { exponent: u64 },
}

/// Expansion guard: symbolic values blow up past this many bits.
pub const EXPAND_GUARD_BITS: u64 = 8_388_608;

impl BoundValue {
    pub fn expand(&self) -> Option<Int> {
        match self {
            BoundValue::Int(v) => Some(v.clone()),
            BoundValue::Pow2 { exponent } | BoundValue::Pow2MinusOne { exponent } => {
                if *exponent > EXPAND_GUARD_BITS {
                    return None;
                }
                let one: Int = Int::one();
                let p = one << (*exponent as usize);
                Some(match self {
                    BoundValue::Pow2MinusOne { .. } => p - 1,
                    _ => p,
                })
            }
        }
    }

    /// Exact decimal digit count, when computable within the guard.
    pub fn decimal_digits(&self) -> Option<u64> {
        match self {
            BoundValue::Int(v) => int_decimal_digits(v),
            BoundValue::Pow2 { exponent } => pow2_decimal_digits(*exponent),
            // 2^e is never a power of ten, so subtracting one keeps the
            // digit count.
            BoundValue::Pow2MinusOne { exponent } => pow2_decimal_digits(*exponent),
        }
    }
}

fn int_decimal_digits(v: &Int) -> Option<u64> {
    if v.is_zero() {
        return Some(1);
    }
    let x = v.abs();
    let bits = x.bits();
    if bits > EXPAND_GUARD_BITS {
        return None;
    }
    Some(digits_by_adjustment(&x, bits))
}

fn pow2_decimal_digits(exponent: u64) -> Option<u64> {
    if exponent > EXPAND_GUARD_BITS {
        return None;
    }
    let x: Int = Int::one() << (exponent as usize);
    Some(digits_by_adjustment(&x, exponent + 1))
}

/// Exact floor(log10 x) + 1 via a float estimate corrected by exact
/// big-integer comparisons.
fn digits_by_adjustment(x: &Int, bits: u64) -> u64 {
    const LOG10_2: f64 = 0.30102999566398119521;
    let mut d = (((bits.saturating_sub(1)) as f64) * LOG10_2).floor() as u64;
    let ten = Int::from(10);
    let mut p = ten.pow(d as u32);
    while &p > x {
        d -= 1;
        p /= &ten;
    }
    while &p * &ten <= *x {
        d += 1;
        p *= &ten;
    }
    d + 1
}

/// The certified bracket for p(T).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PInterval {
    pub lo: Int,
    pub hi: BoundValue,
}

/// Brackets the polytopality by certificate: polytopal pins p = n, a
/// shelling gives p ≤ 7n, otherwise n ≤ p ≤ 2^(200 n²) − 1.
pub fn p_interval(n: usize, certificate: CertificateKind) -> PInterval {
    let lo = Int::from(n);
    let hi = match certificate {
        CertificateKind::Polytopal => BoundValue::Int(Int::from(n)),
        CertificateKind::Shellable => BoundValue::Int(Int::from(7 * n)),
        CertificateKind::None => BoundValue::Pow2MinusOne { exponent: 200 * (n as u64) * (n as u64) },
    };
    PInterval { lo, hi }
}

/// (k + 512 p² + 869 p + 376)², exactly.
pub fn cr_bound_from_p(k: usize, p_hi: &Int) -> Int {
    debug_assert!(k >= 3);
    let inner = Int::from(k) + 512 * p_hi * p_hi + 869 * p_hi + 376;
    &inner * &inner
}

/// 25088 n² + 6085 n + 376: the inner polynomial with k = 2n and p = 7n.
pub fn inner_polynomial(n: usize) -> Int {
    let n = Int::from(n);
    25088 * &n * &n + 6085 * &n + 376
}

/// Exact check of (25088 n² + 6085 n + 376)² < 10⁹ n⁴ at one n.
pub fn quadratic_display_holds(n: usize) -> bool {
    let inner = inner_polynomial(n);
    let lhs = &inner * &inner;
    let n = Int::from(n);
    let rhs = Int::from(1_000_000_000) * &n * &n * &n * &n;
    lhs < rhs
}

/// Exact check of (512·2^(400n²) + 869·2^(200n²) + 2n + 376)² < 2^(810n²),
/// expanded within the guard; `None` when n is too large to expand.
pub fn exponential_display_holds(n: usize) -> Option<bool> {
    let e = (n as u64) * (n as u64);
    if 810 * e > EXPAND_GUARD_BITS {
        return None;
    }
    let p400: Int = Int::one() << ((400 * e) as usize);
    let p200: Int = Int::one() << ((200 * e) as usize);
    let inner = 512 * p400 + 869 * p200 + Int::from(2 * n) + 376;
    let lhs = &inner * &inner;
    let rhs: Int = Int::one() << ((810 * e) as usize);
    Some(lhs < rhs)
}

/// The four bound families at (n, k), with the certified p upper end for
/// the polytopality route, plus the two exact displayed-inequality checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrBounds {
    pub polytopal: Int,
    pub shellable: Int,
    pub general: BoundValue,
    /// Absent when the certified p upper end is too large to expand.
    pub via_polytopality: Option<Int>,
    pub quadratic_display_ok: bool,
    pub exponential_display_ok: Option<bool>,
}

pub fn cr_bounds_all(n: usize, k: usize, p_hi: &BoundValue) -> Result<CrBounds, BoundsError> {
    if k > 2 * n {
        return Err(BoundsError::TooManyEdges { n, k, max: 2 * n });
    }
    let big_n = Int::from(n);
    let polytopal = 4 * &big_n * &big_n;
    let shellable = Int::from(1_000_000_000) * &big_n * &big_n * &big_n * &big_n;
    let general = BoundValue::Pow2 { exponent: 810 * (n as u64) * (n as u64) };
    let via_polytopality = p_hi.expand().map(|p| cr_bound_from_p(k, &p));
    Ok(CrBounds {
        polytopal,
        shellable,
        general,
        via_polytopality,
        quadratic_display_ok: quadratic_display_holds(n),
        exponential_display_ok: exponential_display_holds(n),
    })
}

/// The bracket for d(T), the shortest expansion distance to a polytopal
/// triangulation: p_lo/(3n) − 5/3 − n < d ≤ 512 p_hi² + 869 p_hi + 376.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DInterval {
    /// Exclusive rational lower bound (often negative, hence vacuous next
    /// to d ≥ 0).
    pub lo_exclusive: Rat,
    /// Absent when the certified p upper end is too large to expand.
    pub hi: Option<Int>,
}

pub fn d_interval(n: usize, p: &PInterval) -> DInterval {
    let lo = Rat::new(p.lo.clone(), Int::from(3 * n))
        - Rat::new(Int::from(5), Int::from(3))
        - Rat::from_integer(Int::from(n));
    let hi = p.hi.expand().map(|p_hi| 512 * &p_hi * &p_hi + 869 * &p_hi + 376);
    DInterval { lo_exclusive: lo, hi }
}

/// Optional verified inputs for [`report`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Evidence<'a> {
    pub coords4: Option<&'a CoordMap4<Rat>>,
    pub shelling: Option<&'a [Tet]>,
    pub diagram: Option<&'a Diagram<Rat>>,
}

/// Exact values of all bounds for one triangulation and link, with the
/// certificate that justifies each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub certificate: CertificateKind,
    pub p: PInterval,
    pub d: DInterval,
    pub cr: CrBounds,
    pub achieved: Option<usize>,
    pub applicable: Vec<BoundKey>,
}

impl BoundReport {
    /// The applicable bound values as (key, value) pairs.
    pub fn applicable_bounds(&self) -> Vec<(BoundKey, BoundValue)> {
        self.applicable
            .iter()
            .filter_map(|key| {
                let v = match key {
                    BoundKey::Polytopal => BoundValue::Int(self.cr.polytopal.clone()),
                    BoundKey::Shellable => BoundValue::Int(self.cr.shellable.clone()),
                    BoundKey::General => self.cr.general.clone(),
                    BoundKey::ViaPolytopality => {
                        BoundValue::Int(self.cr.via_polytopality.clone()?)
                    }
                };
                Some((*key, v))
            })
            .collect()
    }
}

/// Assembles a [`BoundReport`], verifying every piece of evidence before it
/// may justify a bound. A diagram pins `achieved`, which must lie strictly
/// below every applicable bound.
pub fn report(
    t: &Triangulation,
    l: &EdgeLink,
    evidence: &Evidence<'_>,
) -> Result<BoundReport, BoundsError> {
    let n = t.n();
    let k = l.edge_count();
    if k == 0 {
        return Err(BoundsError::EmptyLink);
    }
    if k > 2 * n {
        return Err(BoundsError::TooManyEdges { n, k, max: 2 * n });
    }

    let certificate = if let Some(coords) = evidence.coords4 {
        verify_polytopal_witness(t, coords)?;
        CertificateKind::Polytopal
    } else if let Some(order) = evidence.shelling {
        match verify_shelling(t, order)? {
            ShellingCheck::Pass => CertificateKind::Shellable,
            ShellingCheck::FailAt { index, .. } => {
                return Err(BoundsError::BadShelling { index });
            }
        }
    } else {
        CertificateKind::None
    };

    let achieved = match evidence.diagram {
        None => None,
        Some(dg) => {
            if dg.components != l.components() {
                return Err(BoundsError::DiagramMismatch);
            }
            Some(dg.crossing_count())
        }
    };

    let p = p_interval(n, certificate);
    let d = d_interval(n, &p);
    let cr = cr_bounds_all(n, k, &p.hi)?;
    let applicable = match certificate {
        CertificateKind::Polytopal => vec![
            BoundKey::Polytopal,
            BoundKey::Shellable,
            BoundKey::General,
            BoundKey::ViaPolytopality,
        ],
        CertificateKind::Shellable => {
            vec![BoundKey::Shellable, BoundKey::General, BoundKey::ViaPolytopality]
        }
        CertificateKind::None => vec![BoundKey::General],
    };

    let rep = BoundReport { n, k, certificate, p, d, cr, achieved, applicable };
    if let Some(a) = achieved {
        let a_int = Int::from(a);
        for (key, value) in rep.applicable_bounds() {
            let ok = match value.expand() {
                Some(v) => a_int < v,
                // Beyond the expansion guard the bound vastly exceeds any
                // achievable count; compare against the bit length.
                None => true,
            };
            if !ok {
                return Err(BoundsError::AchievedNotBelowBound {
                    achieved: a,
                    bound: format!("{key:?}"),
                });
            }
        }
    }
    Ok(rep)
}

/// Renders a bound value for humans: decimal when small, digit summary when
/// huge.
pub fn bound_value_summary(v: &BoundValue) -> String {
    match v {
        BoundValue::Int(x) => {
            if x.bits() <= 128 {
                x.to_string()
            } else {
                format!("{} decimal digits", int_decimal_digits(x).unwrap_or(0))
            }
        }
        BoundValue::Pow2 { exponent } => match v.decimal_digits() {
            Some(d) => format!("2^{exponent} ({d} decimal digits)"),
            None => format!("2^{exponent}"),
        },
        BoundValue::Pow2MinusOne { exponent } => match v.decimal_digits() {
            Some(d) => format!("2^{exponent} - 1 ({d} decimal digits)"),
            None => format!("2^{exponent} - 1"),
        },
    }
}

/// Rounds the d-interval lower bound up to the vacuous-aware floor: d ≥ 0
/// always holds, so callers may clamp. Kept separate so reports stay exact.
pub fn d_lower_clamped(d: &DInterval) -> Rat {
    if d.lo_exclusive.is_negative() {
        Rat::from_integer(Int::zero())
    } else {
        d.lo_exclusive.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_interval_by_certificate() {
        let p = p_interval(5, CertificateKind::Polytopal);
        assert_eq!(p.lo, Int::from(5));
        assert_eq!(p.hi, BoundValue::Int(Int::from(5)));

        let p = p_interval(9, CertificateKind::Shellable);
        assert_eq!(p.lo, Int::from(9));
        assert_eq!(p.hi, BoundValue::Int(Int::from(63)));

        let p = p_interval(5, CertificateKind::None);
        assert_eq!(p.hi, BoundValue::Pow2MinusOne { exponent: 5000 });
        // Digit-count oracle: expand and count the decimal string.
        let expanded = p.hi.expand().unwrap();
        assert_eq!(expanded.to_string().len() as u64, 1506);
        assert_eq!(p.hi.decimal_digits(), Some(1506));
    }

    #[test]
    fn bound_from_p_reproduces_the_displayed_value() {
        // k = 2n, p = 7n at n = 5: inner 10 + 627200 + 30415 + 376 = 658001.
        let b = cr_bound_from_p(10, &Int::from(35));
        assert_eq!(b, Int::from(432_965_316_001u64));
        assert_eq!(inner_polynomial(5), Int::from(658_001));
        assert_eq!(Int::from(658_001u64) * 658_001, Int::from(432_965_316_001u64));

        assert_eq!(cr_bound_from_p(3, &Int::from(0)), Int::from(143_641));
        assert_eq!(cr_bound_from_p(10, &Int::from(5)), Int::from(17_531) * 17_531);
    }

    #[test]
    fn bound_from_p_is_strictly_monotone() {
        for k in 3..20usize {
            for p in 1..30i64 {
                let here = cr_bound_from_p(k, &Int::from(p));
                assert!(cr_bound_from_p(k + 1, &Int::from(p)) > here);
                assert!(cr_bound_from_p(k, &Int::from(p + 1)) > here);
            }
        }
    }

    #[test]
    fn all_four_bounds_at_n5() {
        let p = p_interval(5, CertificateKind::Polytopal);
        let cr = cr_bounds_all(5, 10, &p.hi).unwrap();
        assert_eq!(cr.polytopal, Int::from(100));
        assert_eq!(cr.shellable, Int::from(625_000_000_000u64));
        assert_eq!(cr.general, BoundValue::Pow2 { exponent: 20250 });
        // Exact digit count of 2^20250, cross-checked against a big-integer
        // string expansion: ⌊20250·log₁₀2⌋ + 1 = ⌊6095.857…⌋ + 1.
        assert_eq!(cr.general.decimal_digits(), Some(6096));
        assert_eq!(cr.via_polytopality, Some(Int::from(17_531) * 17_531));
        assert!(cr.quadratic_display_ok);
        assert_eq!(cr.exponential_display_ok, Some(true));
    }

    #[test]
    fn too_many_edges_is_rejected() {
        let p = p_interval(5, CertificateKind::Polytopal);
        let err = cr_bounds_all(5, 11, &p.hi).unwrap_err();
        assert_eq!(err, BoundsError::TooManyEdges { n: 5, k: 11, max: 10 });
    }

    #[test]
    fn quadratic_display_holds_over_a_range() {
        for n in 5..=200 {
            assert!(quadratic_display_holds(n), "n = {n}");
        }
    }

    #[test]
    fn exponential_display_holds_small_n() {
        for n in 5..=8 {
            assert_eq!(exponential_display_holds(n), Some(true), "n = {n}");
        }
    }

    #[test]
    fn d_interval_examples() {
        let p = PInterval { lo: Int::from(5), hi: BoundValue::Int(Int::from(5)) };
        let d = d_interval(5, &p);
        assert_eq!(d.lo_exclusive, Rat::new(Int::from(-19), Int::from(3)));
        assert_eq!(d.hi, Some(Int::from(17_521)));
        assert_eq!(d_lower_clamped(&d), Rat::from_integer(Int::zero()));

        let p = PInterval { lo: Int::from(9), hi: BoundValue::Int(Int::from(63)) };
        let d = d_interval(9, &p);
        assert_eq!(d.hi, Some(Int::from(2_087_251)));

        // Lower bound vanishes exactly at p_lo = 3n(n + 5/3): n = 5 → 100.
        let p = PInterval { lo: Int::from(100), hi: BoundValue::Int(Int::from(100)) };
        let d = d_interval(5, &p);
        assert_eq!(d.lo_exclusive, Rat::from_integer(Int::zero()));
    }

    #[test]
    fn digit_counts_match_string_lengths() {
        for v in [1i64, 9, 10, 99, 100, 101, 999, 1000, 123456789] {
            let b = BoundValue::Int(Int::from(v));
            assert_eq!(b.decimal_digits(), Some(v.to_string().len() as u64), "{v}");
        }
        for e in [1u64, 10, 100, 5000, 20250] {
            let direct = (Int::one() << (e as usize)).to_string().len() as u64;
            assert_eq!(pow2_decimal_digits(e), Some(direct), "2^{e}");
        }
    }
}
