//! Tent functions `φⁿ_x(y) = max(1 − d(x, y)/n, 0)` and the exhaustive check
//! of their three defining properties:
//!
//! 1. `‖φⁿ_x‖_∞ = 1`,
//! 2. `supp φⁿ_x ⊂ B_n(x)`,
//! 3. `‖φⁿ_x − φⁿ_y‖_∞ <= d(x, y)/n`.

use rayon::prelude::*;
use serde::Serialize;

use crate::metric::FiniteMetricSpace;
use crate::sparse::{merge, sup_distance, SparseFunction};

/// Slack allowed on the float form of property 3.
pub const LIPSCHITZ_TOLERANCE: f64 = 1e-12;

/// `φⁿ_x`: support `{y : d(x, y) < n}`, value `1 − d(x, y)/n`.
pub fn tent(space: &FiniteMetricSpace, x: usize, n: usize) -> SparseFunction {
    assert!(n >= 1, "tent radius must be positive");
    let n = n as f64;
    let entries = space
        .row(x)
        .iter()
        .enumerate()
        .filter(|(_, &d)| d < n)
        .map(|(y, &d)| (y, 1.0 - d / n))
        .collect();
    SparseFunction::from_sorted_unchecked(entries)
}

/// Integer numerators `n − d(x, y)` of `φⁿ_x` over the common denominator `n`.
/// Only meaningful on integral spaces.
pub fn tent_numerators(space: &FiniteMetricSpace, x: usize, n: usize) -> Vec<(usize, i64)> {
    debug_assert!(space.is_integral());
    let n = n as i64;
    space
        .row(x)
        .iter()
        .enumerate()
        .map(|(y, &d)| (y, n - d as i64))
        .filter(|&(_, v)| v > 0)
        .collect()
}

/// Outcome of checking properties 1-3 over all points, pairs and `n <= n_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionCheck {
    pub n_max: usize,
    pub pairs_checked: u64,
    pub sup_norm_ok: bool,
    pub support_ok: bool,
    pub lipschitz_ok: bool,
    /// `max (‖φⁿ_x − φⁿ_y‖_∞ − d(x,y)/n)` over all checked pairs; `<= 0` is a pass.
    pub max_excess: f64,
    /// Integer re-check of property 3; `None` on non-integral spaces.
    pub exact_lipschitz_ok: Option<bool>,
    /// Witness-point counts for the four support cases (neither, both,
    /// x only, y only), summed over pairs and `n`.
    pub case_counts: [u64; 4],
}

impl PartitionCheck {
    pub fn passed(&self) -> bool {
        self.sup_norm_ok
            && self.support_ok
            && self.lipschitz_ok
            && self.exact_lipschitz_ok.unwrap_or(true)
    }
}

pub fn verify_partition(space: &FiniteMetricSpace, n_max: usize) -> PartitionCheck {
    let v = space.len();
    let integral = space.is_integral();

    let per_n: Vec<PartitionCheck> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let tents: Vec<SparseFunction> = (0..v).map(|x| tent(space, x, n)).collect();
            let nums: Vec<Vec<(usize, i64)>> = if integral {
                (0..v).map(|x| tent_numerators(space, x, n)).collect()
            } else {
                Vec::new()
            };
            let mut check = PartitionCheck {
                n_max: n,
                pairs_checked: 0,
                sup_norm_ok: true,
                support_ok: true,
                lipschitz_ok: true,
                max_excess: f64::NEG_INFINITY,
                exact_lipschitz_ok: integral.then_some(true),
                case_counts: [0; 4],
            };
            for x in 0..v {
                let t = &tents[x];
                check.sup_norm_ok &= t.sup_norm() == 1.0 && t.get(&x) == 1.0;
                check.support_ok &= t.support().all(|&y| space.distance(x, y) <= n as f64);
                for y in x..v {
                    let d = space.distance(x, y);
                    let excess = sup_distance(t, &tents[y]) - d / n as f64;
                    check.max_excess = check.max_excess.max(excess);
                    check.lipschitz_ok &= excess <= LIPSCHITZ_TOLERANCE;
                    if integral {
                        let ok = exact_sup_difference(&nums[x], &nums[y]) <= d as i64;
                        check.exact_lipschitz_ok = Some(check.exact_lipschitz_ok == Some(true) && ok);
                    }
                    let (mut both, mut only_x, mut only_y) = (0u64, 0u64, 0u64);
                    merge(t.entries(), tents[y].entries(), |_, a, b| match (a != 0.0, b != 0.0) {
                        (true, true) => both += 1,
                        (true, false) => only_x += 1,
                        _ => only_y += 1,
                    });
                    let neither = v as u64 - both - only_x - only_y;
                    for (slot, c) in check.case_counts.iter_mut().zip([neither, both, only_x, only_y]) {
                        *slot += c;
                    }
                    check.pairs_checked += 1;
                }
            }
            check
        })
        .collect();

    per_n.into_iter().fold(
        PartitionCheck {
            n_max,
            pairs_checked: 0,
            sup_norm_ok: true,
            support_ok: true,
            lipschitz_ok: true,
            max_excess: f64::NEG_INFINITY,
            exact_lipschitz_ok: integral.then_some(true),
            case_counts: [0; 4],
        },
        |mut acc, c| {
            acc.pairs_checked += c.pairs_checked;
            acc.sup_norm_ok &= c.sup_norm_ok;
            acc.support_ok &= c.support_ok;
            acc.lipschitz_ok &= c.lipschitz_ok;
            acc.max_excess = acc.max_excess.max(c.max_excess);
            acc.exact_lipschitz_ok = match (acc.exact_lipschitz_ok, c.exact_lipschitz_ok) {
                (Some(a), Some(b)) => Some(a && b),
                _ => None,
            };
            for (a, b) in acc.case_counts.iter_mut().zip(c.case_counts) {
                *a += b;
            }
            acc
        },
    )
}

fn exact_sup_difference(a: &[(usize, i64)], b: &[(usize, i64)]) -> i64 {
    let (mut i, mut j, mut m) = (0, 0, 0i64);
    while i < a.len() || j < b.len() {
        let (va, vb) = match (a.get(i), b.get(j)) {
            (Some(&(ka, va)), Some(&(kb, vb))) if ka == kb => {
                i += 1;
                j += 1;
                (va, vb)
            }
            (Some(&(ka, va)), Some(&(kb, _))) if ka < kb => {
                i += 1;
                (va, 0)
            }
            (Some(_), Some(&(_, vb))) | (None, Some(&(_, vb))) => {
                j += 1;
                (0, vb)
            }
            (Some(&(_, va)), None) => {
                i += 1;
                (va, 0)
            }
            (None, None) => unreachable!(),
        };
        m = m.max((va - vb).abs());
    }
    m
}
