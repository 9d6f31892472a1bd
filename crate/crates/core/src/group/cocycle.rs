//! The group-side construction.
//!
//! `f_n(t) = max(1 − |t|/m_n, 0)` with `m_n = n²` by default. Subadditivity of
//! word length gives `‖s·f_n − f_n‖_∞ <= |s|/m_n`, so `Σ_n ‖s·f_n − f_n‖²`
//! converges for every `s`, and `Φ(s) = ⊕_n (s·f_n − f_n)` is a cocycle for
//! the left regular representation `λ`. The affine action is
//! `α_s(v) = λ_s(v) + Φ(s)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{word_ball, CayleyBall, FreeGroup, GroupModel};
use crate::error::{Error, Result};
use crate::exponent::{ExponentSchedule, Provenance};
use crate::mixed_norm::{block_norm, MixedNormVector};
use crate::sparse::{sup_distance, SparseFunction};

/// Cocycle identities are exact over the rationals; this is the float slack.
pub const COCYCLE_TOLERANCE: f64 = 1e-9;

/// `m_n = n²` for `n = 1..=depth`.
pub fn default_scales(depth: usize) -> Vec<u32> {
    (1..=depth as u32).map(|n| n * n).collect()
}

/// The tent family `f_n`, its schedule, and the Cayley ball they live on.
#[derive(Debug, Clone)]
pub struct Cocycle<'g, G: GroupModel> {
    group: &'g G,
    schedule: Arc<ExponentSchedule>,
    scales: Vec<u32>,
    tents: Vec<SparseFunction<G::Element>>,
    numerators: Vec<Vec<(G::Element, i64)>>,
    ball: CayleyBall<G::Element>,
}

impl<'g, G: GroupModel> Cocycle<'g, G> {
    /// Default scales `m_n = n²` and the factor-2 schedule from [`group_schedule`].
    pub fn new(group: &'g G, depth: usize, cap: usize) -> Result<Self> {
        let scales = default_scales(depth);
        let ball = word_ball(group, scales.last().copied().unwrap_or(0), cap)?;
        let schedule = Arc::new(schedule_from_ball(&ball, &scales));
        Ok(Self::assemble(group, schedule, scales, ball))
    }

    /// Explicit scales (non-decreasing) and schedule.
    pub fn with_schedule(
        group: &'g G,
        schedule: Arc<ExponentSchedule>,
        scales: Vec<u32>,
        cap: usize,
    ) -> Result<Self> {
        assert!(scales.windows(2).all(|w| w[0] <= w[1]), "scales must be non-decreasing");
        assert!(scales.iter().all(|&m| m >= 1), "scales must be positive");
        if schedule.len() < scales.len() {
            return Err(Error::ScheduleTooShort {
                available: schedule.len(),
                requested: scales.len(),
            });
        }
        let ball = word_ball(group, scales.last().copied().unwrap_or(0), cap)?;
        Ok(Self::assemble(group, schedule, scales, ball))
    }

    fn assemble(
        group: &'g G,
        schedule: Arc<ExponentSchedule>,
        scales: Vec<u32>,
        ball: CayleyBall<G::Element>,
    ) -> Self {
        let mut tents = Vec::with_capacity(scales.len());
        let mut numerators = Vec::with_capacity(scales.len());
        for &m in &scales {
            let mut nums: Vec<(G::Element, i64)> = ball
                .elements()
                .iter()
                .filter(|(_, l)| *l < m)
                .map(|(t, l)| (t.clone(), i64::from(m) - i64::from(*l)))
                .collect();
            nums.sort_by(|a, b| a.0.cmp(&b.0));
            let m = f64::from(m);
            tents.push(SparseFunction::from_sorted_unchecked(
                nums.iter().map(|(t, v)| (t.clone(), *v as f64 / m)).collect(),
            ));
            numerators.push(nums);
        }
        Self {
            group,
            schedule,
            scales,
            tents,
            numerators,
            ball,
        }
    }

    pub fn group(&self) -> &G {
        self.group
    }

    pub fn depth(&self) -> usize {
        self.scales.len()
    }

    pub fn scales(&self) -> &[u32] {
        &self.scales
    }

    pub fn schedule(&self) -> &Arc<ExponentSchedule> {
        &self.schedule
    }

    /// Ball of radius `m_depth` used to build the tents.
    pub fn ball(&self) -> &CayleyBall<G::Element> {
        &self.ball
    }

    /// `f_n` (1-based).
    pub fn tent(&self, n: usize) -> &SparseFunction<G::Element> {
        &self.tents[n - 1]
    }

    /// Left translation `(s·f)(u) = f(s⁻¹u)`: the support moves by `t ↦ s t`.
    pub fn translate(&self, s: &G::Element, f: &SparseFunction<G::Element>) -> SparseFunction<G::Element> {
        f.map_keys(|t| self.group.multiply(s, t))
    }

    /// `s·f_n − f_n`.
    pub fn tent_block(&self, n: usize, s: &G::Element) -> SparseFunction<G::Element> {
        let f = self.tent(n);
        self.translate(s, f).sub(f)
    }

    /// `Φ(s) = ⊕_n (s·f_n − f_n)`.
    pub fn phi(&self, s: &G::Element) -> MixedNormVector<G::Element> {
        let blocks = (1..=self.depth()).map(|n| self.tent_block(n, s)).collect();
        MixedNormVector::new(blocks, Arc::clone(&self.schedule))
    }

    /// `λ_s(v)`: left translation of every block.
    pub fn lambda(&self, s: &G::Element, v: &MixedNormVector<G::Element>) -> MixedNormVector<G::Element> {
        v.map_keys(|t| self.group.multiply(s, t))
    }

    /// `α_s(v) = λ_s(v) + Φ(s)`.
    pub fn affine_action(
        &self,
        s: &G::Element,
        v: &MixedNormVector<G::Element>,
    ) -> Result<MixedNormVector<G::Element>> {
        self.lambda(s, v).add(&self.phi(s))
    }

    /// `‖Φ(st) − λ_s(Φ(t)) − Φ(s)‖`.
    pub fn cocycle_residual(&self, s: &G::Element, t: &G::Element) -> f64 {
        let st = self.group.multiply(s, t);
        self.phi(&st)
            .subtract(&self.lambda(s, &self.phi(t)))
            .and_then(|r| r.subtract(&self.phi(s)))
            .expect("all vectors share this cocycle's schedule")
            .norm()
    }

    /// Integer-numerator check that `Φ(st) = λ_s(Φ(t)) + Φ(s)` exactly.
    pub fn cocycle_exact(&self, s: &G::Element, t: &G::Element) -> bool {
        let st = self.group.multiply(s, t);
        self.numerators.iter().all(|f| {
            let mut acc: BTreeMap<G::Element, i64> = BTreeMap::new();
            let mut add = |shift: &G::Element, outer: Option<&G::Element>, sign: i64| {
                // sign * (outer · (shift·F − F))
                for (u, v) in f {
                    let moved = self.group.multiply(shift, u);
                    let (a, b) = match outer {
                        Some(o) => (self.group.multiply(o, &moved), self.group.multiply(o, u)),
                        None => (moved, u.clone()),
                    };
                    *acc.entry(a).or_default() += sign * v;
                    *acc.entry(b).or_default() -= sign * v;
                }
            };
            add(&st, None, 1);
            add(t, Some(s), -1);
            add(s, None, -1);
            acc.values().all(|&v| v == 0)
        })
    }

    /// Per-block check of `‖s·f_n − f_n‖_{p_n} <= 2|s|/m_n` and of the partial
    /// sums against `4|s|² Σ_n 1/n⁴` (exact for the default scales).
    pub fn summability(&self, s: &G::Element, length: u32) -> SummabilityCheck {
        let len = f64::from(length);
        let mut partial = 0.0;
        let mut partial_sums = Vec::with_capacity(self.depth());
        let mut blocks_ok = true;
        for n in 1..=self.depth() {
            let b = block_norm(&self.tent_block(n, s), self.schedule.p(n));
            blocks_ok &= b <= 2.0 * len / f64::from(self.scales[n - 1]) + COCYCLE_TOLERANCE;
            partial += b * b;
            partial_sums.push(partial);
        }
        let limit = 4.0 * len * len * (1..=self.depth()).map(|n| 1.0 / f64::from(self.scales[n - 1]).powi(2)).sum::<f64>();
        SummabilityCheck {
            length,
            blocks_ok,
            bounded: partial <= limit + COCYCLE_TOLERANCE,
            limit,
            partial_sums,
        }
    }

    /// Exact minimum of `‖Φ(s)‖` over each sphere `|s| = L`, `1 <= L <= l_max`,
    /// plus the certified steps: for each `m <= depth`, every `|s| > 2 m_m`
    /// has `‖Φ(s)‖ >= √m`.
    pub fn properness(&self, l_max: u32, cap: usize) -> Result<Properness> {
        let ball = if l_max <= self.ball.radius() {
            None
        } else {
            Some(word_ball(self.group, l_max, cap)?)
        };
        let ball = ball.as_ref().unwrap_or(&self.ball);
        let curve: Vec<SphereMin> = (1..=l_max)
            .filter_map(|l| {
                let sphere = ball.sphere(l);
                (!sphere.is_empty()).then(|| SphereMin {
                    length: l,
                    min_norm: sphere
                        .iter()
                        .map(|(s, _)| self.phi(s).norm())
                        .fold(f64::INFINITY, f64::min),
                    count: sphere.len(),
                })
            })
            .collect();
        let certificates = (1..=self.depth())
            .map(|m| {
                let threshold = 2.0 * f64::from(self.scales[m - 1]);
                let bound = (m as f64).sqrt();
                let ok = curve
                    .iter()
                    .filter(|c| f64::from(c.length) > threshold)
                    .all(|c| c.min_norm >= bound);
                ProperStep {
                    m,
                    bound,
                    threshold,
                    ok,
                }
            })
            .collect();
        Ok(Properness {
            curve,
            certificates,
        })
    }
}

/// Schedule with `α = 1`, `β_n = 2|B_{m_n}(e)|`, `ε = 1` (so `β_n^{1/p_n} <= 2`).
fn schedule_from_ball<E: Clone + std::hash::Hash + Eq>(ball: &CayleyBall<E>, scales: &[u32]) -> ExponentSchedule {
    ExponentSchedule::from_provenance(
        scales
            .iter()
            .map(|&m| Provenance {
                alpha: 1.0,
                beta: 2.0 * ball.count_within(m) as f64,
                eps: 1.0,
            })
            .collect(),
    )
}

/// The group-side exponent schedule for `m_n = n²`.
pub fn group_schedule<G: GroupModel>(group: &G, depth: usize, cap: usize) -> Result<ExponentSchedule> {
    let scales = default_scales(depth);
    let ball = word_ball(group, scales.last().copied().unwrap_or(0), cap)?;
    Ok(schedule_from_ball(&ball, &scales))
}

/// `s·f_n − f_n` for the default scale `m_n = n²`.
pub fn tent_block<G: GroupModel>(group: &G, n: usize, s: &G::Element, cap: usize) -> Result<SparseFunction<G::Element>> {
    let m = (n * n) as u32;
    let ball = word_ball(group, m.saturating_sub(1), cap)?;
    let f = SparseFunction::from_entries(
        ball.elements()
            .iter()
            .filter(|(_, l)| *l < m)
            .map(|(t, l)| (t.clone(), 1.0 - f64::from(*l) / f64::from(m))),
    );
    Ok(f.map_keys(|t| group.multiply(s, t)).sub(&f))
}

/// `Φ(s)` over `schedule`, with the default scales.
pub fn phi<G: GroupModel>(
    group: &G,
    schedule: &Arc<ExponentSchedule>,
    depth: usize,
    s: &G::Element,
    cap: usize,
) -> Result<MixedNormVector<G::Element>> {
    Ok(Cocycle::with_schedule(group, Arc::clone(schedule), default_scales(depth), cap)?.phi(s))
}

/// `α_s(v) = λ_s(v) + Φ(s)`.
pub fn affine_action<G: GroupModel>(
    group: &G,
    schedule: &Arc<ExponentSchedule>,
    depth: usize,
    s: &G::Element,
    v: &MixedNormVector<G::Element>,
    cap: usize,
) -> Result<MixedNormVector<G::Element>> {
    Cocycle::with_schedule(group, Arc::clone(schedule), default_scales(depth), cap)?.affine_action(s, v)
}

/// `‖Φ(st) − λ_s(Φ(t)) − Φ(s)‖`.
pub fn verify_cocycle<G: GroupModel>(
    group: &G,
    schedule: &Arc<ExponentSchedule>,
    depth: usize,
    s: &G::Element,
    t: &G::Element,
    cap: usize,
) -> Result<f64> {
    Ok(Cocycle::with_schedule(group, Arc::clone(schedule), default_scales(depth), cap)?.cocycle_residual(s, t))
}

pub fn properness_curve<G: GroupModel>(
    group: &G,
    schedule: &Arc<ExponentSchedule>,
    depth: usize,
    l_max: u32,
    cap: usize,
) -> Result<Properness> {
    Cocycle::with_schedule(group, Arc::clone(schedule), default_scales(depth), cap)?.properness(l_max, cap)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummabilityCheck {
    pub length: u32,
    pub blocks_ok: bool,
    pub bounded: bool,
    pub limit: f64,
    pub partial_sums: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphereMin {
    #[serde(rename = "L")]
    pub length: u32,
    pub min_norm: f64,
    #[serde(skip)]
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProperStep {
    pub m: usize,
    pub bound: f64,
    pub threshold: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Properness {
    pub curve: Vec<SphereMin>,
    pub certificates: Vec<ProperStep>,
}

impl Properness {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.ok)
    }

    /// Largest certified bound `√m` with `2 m_m < L`, as a step function of `L`.
    pub fn certified_floor(&self, length: u32) -> f64 {
        self.certificates
            .iter()
            .filter(|c| f64::from(length) > c.threshold)
            .map(|c| c.bound)
            .fold(0.0, f64::max)
    }
}

/// Direct check that each `f_n` (scale `n²`) has `‖f_n‖_∞ = f_n(e) = 1`,
/// finite support and `‖s·f_n − f_n‖_∞ <= 1/n` for every `|s| <= n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TranslateCheck {
    pub n: usize,
    pub support_size: u64,
    pub translates_checked: u64,
    pub sup_ok: bool,
    /// Float evaluation, with slack [`COCYCLE_TOLERANCE`].
    pub float_ok: bool,
    /// Integer-numerator evaluation.
    pub exact_ok: bool,
    /// `max_{|s|<=n} ‖s·f_n − f_n‖_∞`.
    pub max_sup_difference: f64,
}

impl TranslateCheck {
    pub fn passed(&self) -> bool {
        self.sup_ok && self.float_ok && self.exact_ok
    }

    /// Stores the ball of radius `n² − 1` and compares every translate.
    pub fn by_enumeration<G: GroupModel>(group: &G, n: usize, cap: usize) -> Result<Self> {
        let m = (n * n) as u32;
        let ball = word_ball(group, m.saturating_sub(1).max(n as u32), cap)?;
        let entries: Vec<(G::Element, i64)> = ball
            .elements()
            .iter()
            .filter(|(_, l)| *l < m)
            .map(|(t, l)| (t.clone(), i64::from(m - l)))
            .collect();
        let numer = SparseFunction::from_entries(entries.iter().map(|(t, v)| (t.clone(), *v as f64)));
        let f = SparseFunction::from_entries(entries.iter().map(|(t, v)| (t.clone(), *v as f64 / f64::from(m))));
        let e = group.identity();
        let sup_ok = f.sup_norm() == 1.0 && f.get(&e) == 1.0;
        let mut check = TranslateCheck {
            n,
            support_size: f.len() as u64,
            translates_checked: 0,
            sup_ok,
            float_ok: true,
            exact_ok: true,
            max_sup_difference: 0.0,
        };
        for (s, _) in ball.elements().iter().filter(|(_, l)| *l as usize <= n) {
            let moved = f.map_keys(|t| group.multiply(s, t));
            let d = sup_distance(&moved, &f);
            check.max_sup_difference = check.max_sup_difference.max(d);
            check.float_ok &= d <= 1.0 / n as f64 + COCYCLE_TOLERANCE;
            // numerators are integers below 2^53, so the f64 difference is exact
            let dn = sup_distance(&numer.map_keys(|t| group.multiply(s, t)), &numer) as i64;
            check.exact_ok &= dn * n as i64 <= i64::from(m);
            check.translates_checked += 1;
        }
        Ok(check)
    }

    /// Free groups only: walks every reduced word of length `< n²` depth-first
    /// without storing the ball. `|s⁻¹u| = |s| + |u| − 2k` where `k` is the
    /// cancellation between `s⁻¹` and `u`, which depends only on the first
    /// `n` letters of `u`; results are cached per (prefix, length).
    pub fn free_group_streaming(group: &FreeGroup, n: usize) -> Self {
        let m = (n * n) as i64;
        let small = word_ball(group, n as u32, usize::MAX).expect("uncapped");
        let inverses: Vec<Vec<i32>> = small
            .elements()
            .iter()
            .map(|(s, _)| group.inverse(s).0)
            .collect();
        let numer = |l: i64| (m - l).max(0);

        struct Walk<'a> {
            n: usize,
            m: i64,
            inverses: &'a [Vec<i32>],
            letters: Vec<i32>,
            word: Vec<i32>,
            max_diff: i64,
            visited: u64,
            cancel: Vec<usize>,
            memo_depth: Vec<bool>,
        }

        impl Walk<'_> {
            fn visit(&mut self, numer: &dyn Fn(i64) -> i64) {
                self.visited += 1;
                let len = self.word.len();
                if len <= self.n {
                    // prefix still decides the cancellation; recompute
                    for (i, inv) in self.inverses.iter().enumerate() {
                        let mut k = 0;
                        while k < inv.len() && k < len && inv[inv.len() - 1 - k] == -self.word[k] {
                            k += 1;
                        }
                        self.cancel[i] = k;
                    }
                }
                if len <= self.n || !self.memo_depth[len] {
                    for (i, inv) in self.inverses.iter().enumerate() {
                        let moved = (inv.len() + len - 2 * self.cancel[i]) as i64;
                        let d = (numer(moved) - numer(len as i64)).abs();
                        self.max_diff = self.max_diff.max(d);
                    }
                    if len > self.n {
                        self.memo_depth[len] = true;
                    }
                }
                if (len as i64) + 1 < self.m {
                    for li in 0..self.letters.len() {
                        let x = self.letters[li];
                        if self.word.last() == Some(&-x) {
                            continue;
                        }
                        self.word.push(x);
                        if self.word.len() == self.n + 1 {
                            // new depth-n ancestor: cached rows are stale
                            self.memo_depth.iter_mut().for_each(|b| *b = false);
                        }
                        self.visit(numer);
                        self.word.pop();
                    }
                }
            }
        }

        let letters: Vec<i32> = group.generators().into_iter().map(|g| g.0[0]).collect();
        let mut walk = Walk {
            n,
            m,
            inverses: &inverses,
            letters,
            word: Vec::with_capacity(m as usize),
            max_diff: 0,
            visited: 0,
            cancel: vec![0; inverses.len()],
            memo_depth: vec![false; m as usize + 1],
        };
        walk.visit(&numer);
        let max_sup_difference = walk.max_diff as f64 / m as f64;
        TranslateCheck {
            n,
            support_size: walk.visited,
            translates_checked: inverses.len() as u64,
            sup_ok: numer(0) == m,
            float_ok: max_sup_difference <= 1.0 / n as f64 + COCYCLE_TOLERANCE,
            exact_ok: walk.max_diff * n as i64 <= m,
            max_sup_difference,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Exponent;
    use crate::group::{BuiltinGroup, GroupElement, IntegerLattice, Symmetric, DEFAULT_BALL_CAP};

    fn z1() -> IntegerLattice {
        IntegerLattice::new(1)
    }

    fn el(v: &[i32]) -> GroupElement {
        GroupElement(v.to_vec())
    }

    #[test]
    fn identity_gives_zero_blocks() {
        let z = z1();
        let c = Cocycle::new(&z, 3, DEFAULT_BALL_CAP).unwrap();
        assert!(c.tent_block(2, &el(&[0])).is_empty());
        assert_eq!(c.phi(&el(&[0])).norm(), 0.0);
    }

    #[test]
    fn integer_tent_blocks() {
        let z = z1();
        let b1 = tent_block(&z, 1, &el(&[1]), DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b1.entries(), &[(el(&[0]), -1.0), (el(&[1]), 1.0)]);
        let b2 = tent_block(&z, 2, &el(&[1]), DEFAULT_BALL_CAP).unwrap();
        assert_eq!(b2.sup_norm(), 0.25);
        assert!(b2.values().all(|v| v.abs() == 0.25));
    }

    #[test]
    fn schedules() {
        let z = z1();
        let s = group_schedule(&z, 1, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(s.exponents(), &[Exponent::Finite(3.0)]);
        assert_eq!(s.provenance()[0].beta, 6.0);
        let f2: BuiltinGroup = "free:2".parse().unwrap();
        let s = group_schedule(&f2, 1, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(s.exponents(), &[Exponent::Finite(4.0)]);
        let s3: BuiltinGroup = "sym:3".parse().unwrap();
        let s = group_schedule(&s3, 4, DEFAULT_BALL_CAP).unwrap();
        assert!(s.provenance()[1..].iter().all(|p| p.beta == 12.0));
    }

    #[test]
    fn phi_two_point_norm() {
        let z = z1();
        let c = Cocycle::new(&z, 1, DEFAULT_BALL_CAP).unwrap();
        assert!((c.phi(&el(&[1])).norm() - 2f64.powf(1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn action_basics() {
        let z = z1();
        let c = Cocycle::new(&z, 3, DEFAULT_BALL_CAP).unwrap();
        let v = c.phi(&el(&[5]));
        assert_eq!(c.affine_action(&el(&[0]), &v).unwrap().blocks(), v.blocks());
        let zero = MixedNormVector::zero(3, Arc::clone(c.schedule()));
        assert_eq!(c.affine_action(&el(&[2]), &zero).unwrap().blocks(), c.phi(&el(&[2])).blocks());
    }

    #[test]
    fn cocycle_identity_on_integers() {
        let z = z1();
        let c = Cocycle::new(&z, 4, DEFAULT_BALL_CAP).unwrap();
        assert!(c.cocycle_residual(&el(&[2]), &el(&[3])) < 1e-12);
        assert_eq!(c.cocycle_residual(&el(&[2]), &el(&[0])), 0.0);
        assert!(c.cocycle_residual(&el(&[-3]), &el(&[3])) < 1e-12);
        assert!(c.cocycle_exact(&el(&[2]), &el(&[3])));
    }

    #[test]
    fn integer_properness() {
        let z = z1();
        let c = Cocycle::new(&z, 4, DEFAULT_BALL_CAP).unwrap();
        let p = c.properness(40, DEFAULT_BALL_CAP).unwrap();
        assert!(p.passed(), "{p:?}");
        for s in p.curve.iter().filter(|s| s.length > 32) {
            assert!(s.min_norm >= 2.0);
        }
        for s in &p.curve {
            assert!(s.min_norm >= p.certified_floor(s.length));
        }
        let c1 = Cocycle::new(&z, 1, DEFAULT_BALL_CAP).unwrap();
        let p1 = c1.properness(10, DEFAULT_BALL_CAP).unwrap();
        assert!(p1.curve.iter().filter(|s| s.length > 2).all(|s| s.min_norm >= 1.0));
    }

    #[test]
    fn translate_check_small() {
        let z = z1();
        for n in 1..=4 {
            assert!(TranslateCheck::by_enumeration(&z, n, DEFAULT_BALL_CAP).unwrap().passed());
        }
        let s4 = Symmetric::new(4);
        assert!(TranslateCheck::by_enumeration(&s4, 3, DEFAULT_BALL_CAP).unwrap().passed());
    }

    #[test]
    fn streaming_matches_enumeration() {
        let f2 = FreeGroup::new(2);
        for n in 1..=3 {
            let a = TranslateCheck::by_enumeration(&f2, n, DEFAULT_BALL_CAP).unwrap();
            let b = TranslateCheck::free_group_streaming(&f2, n);
            assert_eq!(a.support_size, b.support_size, "n = {n}");
            assert_eq!(a.translates_checked, b.translates_checked);
            assert!((a.max_sup_difference - b.max_sup_difference).abs() < 1e-15);
            assert!(b.passed());
        }
    }

    #[test]
    fn summability_bound() {
        let f2: BuiltinGroup = "free:2".parse().unwrap();
        let c = Cocycle::new(&f2, 2, DEFAULT_BALL_CAP).unwrap();
        let s = el(&[1, 2, -1]);
        let check = c.summability(&s, 3);
        assert!(check.blocks_ok && check.bounded, "{check:?}");
        assert!(check.partial_sums.windows(2).all(|w| w[0] <= w[1]));
    }
}
