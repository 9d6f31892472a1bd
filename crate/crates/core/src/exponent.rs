//! Exponent selection: how large `p` must be before `‖f‖_p` is within a
//! given slack of `‖f‖_∞` for every `f` with `‖f‖_∞ <= α` and support size
//! at most `β`.
//!
//! The bound used throughout is `‖f‖_∞ <= ‖f‖_p <= ‖f‖_∞ · β^{1/p}`, so
//! `α(β^{1/p} − 1) <= ε` is sufficient for `‖f‖_p <= ‖f‖_∞ + ε`.

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::metric::FiniteMetricSpace;

/// A block exponent: a real `p >= 1` or the sup norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    /// `None` unless `p >= 1` (an infinite `p` maps to [`Exponent::Infinity`]).
    pub fn new(p: f64) -> Option<Self> {
        if p == f64::INFINITY {
            Some(Exponent::Infinity)
        } else if p >= 1.0 && p.is_finite() {
            Some(Exponent::Finite(p))
        } else {
            None
        }
    }

    pub fn integer(p: u32) -> Self {
        assert!(p >= 1, "exponents start at 1");
        Exponent::Finite(f64::from(p))
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.value().partial_cmp(&other.value())
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Exponent::Infinity => s.serialize_str("infinity"),
            Exponent::Finite(p) if p.fract() == 0.0 && p < 9.0e15 => s.serialize_u64(p as u64),
            Exponent::Finite(p) => s.serialize_f64(p),
        }
    }
}

/// `α · β^{1/p}`: the largest `‖f‖_p` over `‖f‖_∞ <= α`, `#supp f <= β`.
pub fn lemma1_bound(alpha: f64, beta: f64, p: f64) -> f64 {
    if alpha == 0.0 {
        return 0.0;
    }
    alpha * beta.powf(1.0 / p)
}

fn feasible(alpha: f64, beta: f64, eps: f64, p: u64) -> bool {
    alpha * (beta.powf(1.0 / p as f64) - 1.0) <= eps
}

/// Smallest integer `p >= 1` with `α(β^{1/p} − 1) <= ε`.
///
/// Starts from the closed form `⌈ln β / ln(1 + ε/α)⌉` and then walks to the
/// exact feasibility boundary as evaluated in binary64.
pub fn select_exponent(alpha: f64, beta: f64, eps: f64) -> u64 {
    assert!(alpha >= 0.0 && beta >= 1.0 && eps > 0.0, "invalid (α, β, ε)");
    if alpha == 0.0 || beta <= 1.0 || feasible(alpha, beta, eps, 1) {
        return 1;
    }
    let estimate = (beta.ln() / (eps / alpha).ln_1p()).ceil();
    let mut p = if estimate.is_finite() && estimate >= 1.0 {
        estimate.min(u64::MAX as f64 / 2.0) as u64
    } else {
        1
    };
    while !feasible(alpha, beta, eps, p) {
        p += 1;
    }
    while p > 1 && feasible(alpha, beta, eps, p - 1) {
        p -= 1;
    }
    p
}

/// The `(α, β, ε)` triple that determined one exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Provenance {
    pub alpha: f64,
    pub beta: f64,
    pub eps: f64,
}

/// Non-decreasing exponents `p_1 <= p_2 <= ...` with the parameters behind each.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentSchedule {
    exponents: Vec<Exponent>,
    provenance: Vec<Provenance>,
}

impl ExponentSchedule {
    /// Selects `p_n` for each triple, then takes the running maximum.
    pub fn from_provenance(provenance: Vec<Provenance>) -> Self {
        let mut running = 1;
        let exponents = provenance
            .iter()
            .map(|pr| {
                running = running.max(select_exponent(pr.alpha, pr.beta, pr.eps));
                Exponent::Finite(running as f64)
            })
            .collect();
        Self {
            exponents,
            provenance,
        }
    }

    /// A schedule with explicit exponents and no provenance, e.g. constant
    /// `p` for comparison experiments.
    pub fn fixed(exponents: Vec<Exponent>) -> Self {
        Self {
            exponents,
            provenance: Vec::new(),
        }
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exponents
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Exponent of block `n` (1-based).
    pub fn p(&self, n: usize) -> Exponent {
        self.exponents[n - 1]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("schedule serialises")
    }
}

impl Serialize for ExponentSchedule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExponentSchedule", 2)?;
        st.serialize_field("exponents", &self.exponents)?;
        st.serialize_field("provenance", &self.provenance)?;
        st.end()
    }
}

/// The schedule used by the metric-space embedding.
///
/// Block `n` uses `α_n = 1` (tent differences take values in `[-1, 1]`),
/// `β_n = 2·C(n)` (two tent supports, each inside an `n`-ball) and `ε_n = 1/n`.
/// A one-point space has only zero differences, so `α_n = 0` there.
pub fn schedule_for_space(space: &FiniteMetricSpace, depth: usize) -> ExponentSchedule {
    assert!(depth >= 1, "depth must be positive");
    let growth = space.growth_profile(depth);
    let alpha = if space.len() >= 2 { 1.0 } else { 0.0 };
    let provenance = (1..=depth)
        .map(|n| Provenance {
            alpha,
            beta: 2.0 * growth.get(n).unwrap_or(1) as f64,
            eps: 1.0 / n as f64,
        })
        .collect();
    ExponentSchedule::from_provenance(provenance)
}
