//! The target space: an ℓ²-sum of sparse blocks, block `n` measured in ℓ^{p_n}.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, ExponentSchedule};
use crate::sparse::SparseFunction;

/// `ℓ^p` norm under counting measure, evaluated as `M · (Σ (|f_i|/M)^p)^{1/p}`
/// with `M = ‖f‖_∞`, so large `p` neither underflows nor overflows.
pub fn block_norm<K>(f: &SparseFunction<K>, p: Exponent) -> f64
where
    K: Ord + Clone,
{
    let m = f.sup_norm();
    if m == 0.0 {
        return 0.0;
    }
    match p {
        Exponent::Infinity => m,
        Exponent::Finite(p) => {
            let int_p = (p.fract() == 0.0 && p <= i32::MAX as f64).then_some(p as i32);
            let sum: f64 = f
                .values()
                .map(|v| {
                    let r = v.abs() / m;
                    match int_p {
                        Some(k) => r.powi(k),
                        None => r.powf(p),
                    }
                })
                .sum();
            if p == 1.0 {
                m * sum
            } else {
                m * sum.powf(1.0 / p)
            }
        }
    }
}

/// Finitely many blocks sharing one exponent schedule.
#[derive(Debug, Clone)]
pub struct MixedNormVector<K = usize> {
    blocks: Vec<SparseFunction<K>>,
    schedule: Arc<ExponentSchedule>,
}

impl<K: Ord + Clone> MixedNormVector<K> {
    /// Panics if there are more blocks than exponents.
    pub fn new(blocks: Vec<SparseFunction<K>>, schedule: Arc<ExponentSchedule>) -> Self {
        assert!(
            blocks.len() <= schedule.len(),
            "{} blocks but only {} exponents",
            blocks.len(),
            schedule.len()
        );
        Self { blocks, schedule }
    }

    pub fn zero(depth: usize, schedule: Arc<ExponentSchedule>) -> Self {
        Self::new(vec![SparseFunction::zero(); depth], schedule)
    }

    pub fn blocks(&self) -> &[SparseFunction<K>] {
        &self.blocks
    }

    pub fn depth(&self) -> usize {
        self.blocks.len()
    }

    pub fn schedule(&self) -> &Arc<ExponentSchedule> {
        &self.schedule
    }

    /// `‖block_n‖_{p_n}` for each block.
    pub fn block_norms(&self) -> Vec<f64> {
        self.blocks
            .iter()
            .zip(self.schedule.exponents())
            .map(|(b, &p)| block_norm(b, p))
            .collect()
    }

    /// `(Σ_n ‖block_n‖²_{p_n})^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.block_norms().iter().map(|b| b * b).sum::<f64>().sqrt()
    }

    /// The first `depth` blocks.
    pub fn truncated(&self, depth: usize) -> Self {
        Self {
            blocks: self.blocks[..depth.min(self.blocks.len())].to_vec(),
            schedule: Arc::clone(&self.schedule),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        let same = Arc::ptr_eq(&self.schedule, &other.schedule)
            || self.schedule.exponents() == other.schedule.exponents();
        if same && self.blocks.len() == other.blocks.len() {
            Ok(())
        } else {
            Err(Error::ScheduleMismatch)
        }
    }

    fn zip_with(&self, other: &Self, scale: f64) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.axpy(scale, b))
                .collect(),
            schedule: Arc::clone(&self.schedule),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, 1.0)
    }

    pub fn subtract(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, -1.0)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
            schedule: Arc::clone(&self.schedule),
        }
    }

    /// Applies the same injective relabelling to every block's support.
    pub fn map_keys<F: FnMut(&K) -> K>(&self, mut f: F) -> Self {
        Self {
            blocks: self.blocks.iter().map(|b| b.map_keys(&mut f)).collect(),
            schedule: Arc::clone(&self.schedule),
        }
    }
}
