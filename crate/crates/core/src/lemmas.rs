//! Exhaustive counting facts behind the weight bounds.

use std::sync::Arc;

use crate::code::{weight, LinearCode};
use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::minors::MinorCombination;
use crate::symmetric::MinorPair;

/// `#{(T₁, T₂) : (T₁ + a)(T₂ + b) = λ}`.
pub fn hyperbolic_count(f: &GaloisField, a: u32, b: u32, lambda: u32) -> u64 {
    let mut count = 0;
    for t1 in f.elements() {
        for t2 in f.elements() {
            if f.mul(f.add(t1, a), f.add(t2, b)) == lambda {
                count += 1;
            }
        }
    }
    count
}

/// Range of hyperbolic counts over all `(a, b)`, split by `λ = 0` and `λ ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HyperbolicTally {
    pub zero: (u64, u64),
    pub nonzero: (u64, u64),
}

pub fn hyperbolic_tally(f: &GaloisField) -> HyperbolicTally {
    let mut zero = (u64::MAX, 0);
    let mut nonzero = (u64::MAX, 0);
    for a in f.elements() {
        for b in f.elements() {
            for lambda in f.elements() {
                let c = hyperbolic_count(f, a, b, lambda);
                let slot = if lambda == 0 { &mut zero } else { &mut nonzero };
                slot.0 = slot.0.min(c);
                slot.1 = slot.1.max(c);
            }
        }
    }
    HyperbolicTally { zero, nonzero }
}

/// Largest solution count of `T_i² = a_i, T_iT_j = b_{i,j}` over all right-hand sides.
///
/// Every instance is a fiber of `T ↦ (T_i², T_iT_j)`, so this is the maximum fiber size.
pub fn quadratic_system_max_solutions(f: &GaloisField, nvars: usize, budget: u128) -> Result<u64> {
    let q = f.order() as u128;
    let total = q.checked_pow(nvars as u32).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded { required: total, budget });
    }
    let mut fibers: std::collections::HashMap<Vec<u32>, u64> = std::collections::HashMap::new();
    let mut t = vec![0u32; nvars];
    for idx in 0..total {
        let mut x = idx;
        for v in t.iter_mut() {
            *v = (x % q) as u32;
            x /= q;
        }
        let mut image = Vec::with_capacity(nvars * (nvars + 1) / 2);
        for i in 0..nvars {
            for j in i..nvars {
                image.push(f.mul(t[i], t[j]));
            }
        }
        *fibers.entry(image).or_insert(0) += 1;
    }
    Ok(fibers.values().copied().max().unwrap_or(0))
}

/// Whether `x² = c` has exactly one root for every `c`.
pub fn squares_unique(f: &GaloisField) -> bool {
    f.elements().all(|c| f.solve_quadratic(0, c).len() == 1)
}

/// Weight of the codeword for a message over the code's rows.
pub fn message_weight(code: &LinearCode, msg: &[u32]) -> u64 {
    weight(&code.encode_message(msg)) as u64
}

/// Outcome of the ℓ = 2 branch classifier over every `f` with `f_{12,12} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifierReport {
    pub q: u32,
    pub functions: u64,
    /// Functions whose weight is below the bound of their branch.
    pub violations: u64,
    /// Smallest weight seen in the branch with the larger bound.
    pub min_weight_high: Option<u64>,
    /// Smallest weight seen in the other branch.
    pub min_weight_low: Option<u64>,
    pub bound_high: u64,
    pub bound_low: u64,
}

fn l2_code_check(code: &LinearCode) -> Result<()> {
    if code.ell() != 2 || code.basis().map(|b| b.len()) != Some(5) {
        return Err(Error::LabelMismatch);
    }
    Ok(())
}

/// Splits monic-determinant functions by the discriminant (odd q) or by
/// `f_{1,2} = 0` (even q) and checks the two weight bounds.
pub fn classify_l2(code: &LinearCode) -> Result<ClassifierReport> {
    l2_code_check(code)?;
    let f = &**code.field();
    let q = f.order() as u64;
    let (bound_high, bound_low) = (q * q * q - q * q, q * q * q - q * q - q);
    let half = if f.characteristic() == 2 { 0 } else { f.inv(2)? };
    // Row order: ∅, (1,1), (1,2), (2,2), (12,12).
    let mut report = ClassifierReport {
        q: f.order(),
        functions: 0,
        violations: 0,
        min_weight_high: None,
        min_weight_low: None,
        bound_high,
        bound_low,
    };
    for c0 in f.elements() {
        for c11 in f.elements() {
            for c12 in f.elements() {
                for c22 in f.elements() {
                    let w = message_weight(code, &[c0, c11, c12, c22, 1]);
                    let high = if f.characteristic() == 2 {
                        c12 == 0
                    } else {
                        let h = f.mul(c12, half);
                        f.add(f.sub(f.mul(h, h), f.mul(c11, c22)), c0) == 0
                    };
                    let (slot, bound) = if high {
                        (&mut report.min_weight_high, bound_high)
                    } else {
                        (&mut report.min_weight_low, bound_low)
                    };
                    *slot = Some(slot.map_or(w, |m| m.min(w)));
                    report.functions += 1;
                    if w < bound {
                        report.violations += 1;
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `(number of functions, minimum weight)` over nonzero `f` with `f_{12,12} = 0`.
pub fn linear_case_l2(code: &LinearCode) -> Result<(u64, u64)> {
    l2_code_check(code)?;
    let f = &**code.field();
    let q = f.order() as u64;
    let mut min = u64::MAX;
    let mut count = 0;
    for idx in 1..q.pow(4) {
        let msg: Vec<u32> = (0..4).map(|i| ((idx / q.pow(i)) % q) as u32).chain([0]).collect();
        min = min.min(message_weight(code, &msg));
        count += 1;
    }
    Ok((count, min))
}

/// `q⁶ − q⁵ − q³ + q²` and `q⁶ − q⁵ + q²`.
pub fn det3_expected(q: u64) -> (u64, u64) {
    (q.pow(6) - q.pow(5) - q.pow(3) + q.pow(2), q.pow(6) - q.pow(5) + q.pow(2))
}

/// `(wt(det₃), [wt(det₃ + c) for c ≠ 0])` on 3×3 symmetric matrices.
pub fn det3_weights(field: Arc<GaloisField>, budget: u128) -> Result<(u64, Vec<u64>)> {
    let det = MinorCombination::minor(field.clone(), 3, &[1, 2, 3], &[1, 2, 3], 1)?;
    let base = det.weight(budget)?;
    let shifted = (1..field.order())
        .map(|c| det.add(&MinorCombination::constant(field.clone(), 3, c)?)?.weight(budget))
        .collect::<Result<Vec<u64>>>()?;
    Ok((base, shifted))
}

/// `q⁶ − q⁵ − q⁴ + q³`.
pub fn full_determinant_bound(q: u64) -> u64 {
    q.pow(6) - q.pow(5) - q.pow(4) + q.pow(3)
}

/// `q^{(ℓ²+ℓ−k²−k)/2} · w` for a weight `w` attained at size `k`.
pub fn spread_bound(ell: u64, k: u64, w: u64, q: u64) -> u64 {
    q.pow(((ell * ell + ell - k * k - k) / 2) as u32) * w
}

/// `q^δ − q^{δ−1} − q^{δ−2}` with `δ = ℓ(ℓ+1)/2`; for ℓ = 1 the distance `q − 1`.
pub fn theorem_distance(ell: u64, q: u64) -> u128 {
    let q = q as u128;
    let delta = (ell * (ell + 1) / 2) as u32;
    if delta < 2 {
        return q - 1;
    }
    q.pow(delta) - q.pow(delta - 1) - q.pow(delta - 2)
}

/// `det_{12,12} + det_{1,2}`, whose weight meets the distance formula.
pub fn distance_witness(field: Arc<GaloisField>, ell: usize) -> Result<MinorCombination> {
    if ell < 2 {
        return Err(Error::ShapeMismatch("the witness needs ell >= 2".into()));
    }
    MinorCombination::from_terms(
        field,
        ell,
        [(MinorPair::one_based(&[1, 2], &[1, 2])?, 1), (MinorPair::one_based(&[1], &[2])?, 1)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Variant;
    use crate::symmetric::DEFAULT_BUDGET;

    fn gf(q: u64) -> GaloisField {
        GaloisField::from_order(q).unwrap()
    }

    #[test]
    fn hyperbolic_counts() {
        for q in [2u64, 3, 4, 5, 7] {
            let t = hyperbolic_tally(&gf(q));
            assert_eq!(t.zero, (2 * q - 1, 2 * q - 1));
            assert_eq!(t.nonzero, (q - 1, q - 1));
        }
        assert_eq!(hyperbolic_count(&gf(3), 0, 0, 0), 5);
        assert_eq!(hyperbolic_count(&gf(3), 1, 2, 1), 2);
    }

    #[test]
    fn quadratic_system() {
        for q in [3u64, 5] {
            for n in 1..=3 {
                assert_eq!(quadratic_system_max_solutions(&gf(q), n, DEFAULT_BUDGET).unwrap(), 2);
            }
        }
    }

    #[test]
    fn unique_square_roots_in_even_characteristic() {
        for q in [2u64, 4, 8, 16] {
            assert!(squares_unique(&gf(q)));
        }
        assert!(!squares_unique(&gf(3)));
    }

    #[test]
    fn theorem_values() {
        let ds: Vec<u128> = [2, 3, 4, 5, 7, 8, 9].iter().map(|&q| theorem_distance(2, q)).collect();
        assert_eq!(ds, [2, 15, 44, 95, 287, 440, 639]);
        let ds: Vec<u128> = [2, 3, 4, 5, 7, 8, 9].iter().map(|&q| theorem_distance(3, q)).collect();
        assert_eq!(ds, [16, 405, 2816, 11875, 98441, 225280, 465831]);
        assert_eq!(det3_expected(2), (28, 36));
    }

    #[test]
    fn det3_exact_weights() {
        for q in [2u64, 3] {
            let (d, shifted) = det3_weights(Arc::new(gf(q)), DEFAULT_BUDGET).unwrap();
            let (ed, es) = det3_expected(q);
            assert_eq!(d, ed);
            assert!(shifted.iter().all(|&w| w == es));
        }
    }

    #[test]
    fn classifiers() {
        for q in [2u64, 3, 4, 5] {
            let c = LinearCode::build(2, Arc::new(gf(q)), Variant::Symplectic, DEFAULT_BUDGET).unwrap();
            let r = classify_l2(&c).unwrap();
            assert_eq!(r.functions, q.pow(4));
            assert_eq!(r.violations, 0, "q={q}: {r:?}");
            let (count, min) = linear_case_l2(&c).unwrap();
            assert_eq!(count, q.pow(4) - 1);
            assert!(min >= q * q * q - q * q);
        }
    }

    #[test]
    fn full_determinant_bound_counterexamples() {
        let f2 = Arc::new(gf(2));
        let g2 = MinorCombination::parse("1,2,3|1,2,3|1\n1,2|1,3|1", f2, 3).unwrap();
        assert_eq!(g2.weight(DEFAULT_BUDGET).unwrap(), 20);
        assert!(20 < full_determinant_bound(2));
        let f3 = Arc::new(gf(3));
        let g3 = MinorCombination::parse("1,2,3|1,2,3|1\n1|1|1", f3, 3).unwrap();
        assert_eq!(g3.weight(DEFAULT_BUDGET).unwrap(), 414);
        assert!(414 < full_determinant_bound(3));
        // Both still exceed the minimum distance.
        assert!(20 > theorem_distance(3, 2) as u64 && 414 > theorem_distance(3, 3) as u64);
    }
}
