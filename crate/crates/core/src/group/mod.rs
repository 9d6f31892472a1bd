//! Finitely generated groups with word length, Cayley balls, and the
//! cocycle `Φ(s) = ⊕_n (s·f_n − f_n)` giving a proper affine isometric action.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

mod cocycle;
mod models;

pub use cocycle::{
    affine_action, default_scales, group_schedule, phi, properness_curve, tent_block,
    verify_cocycle, Cocycle, TranslateCheck, COCYCLE_TOLERANCE, Properness, ProperStep, SphereMin, SummabilityCheck,
};
pub use models::{BuiltinGroup, Dihedral, FreeGroup, GroupElement, IntegerLattice, Symmetric};

/// Default cap on enumerated ball size.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// A group presented by a finite symmetric generating set.
///
/// Implementations must be pure: the same inputs always give the same element.
pub trait GroupModel: Sync {
    type Element: Clone + Ord + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inverse(&self, a: &Self::Element) -> Self::Element;
    /// Symmetric generating set (closed under inverse), identity excluded.
    fn generators(&self) -> Vec<Self::Element>;
    fn name(&self) -> String;
}

/// Elements of word length `<= radius`, in breadth-first order from the identity.
#[derive(Debug, Clone)]
pub struct CayleyBall<E> {
    radius: u32,
    elements: Vec<(E, u32)>,
    index: HashMap<E, usize>,
    /// First index of each sphere; `sphere_starts[L]..sphere_starts[L+1]` has length `L`.
    sphere_starts: Vec<usize>,
}

impl<E: Clone + Hash + Eq> CayleyBall<E> {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `(element, |element|)` in breadth-first order.
    pub fn elements(&self) -> &[(E, u32)] {
        &self.elements
    }

    /// Word length, if the element lies in the ball.
    pub fn length(&self, e: &E) -> Option<u32> {
        self.index.get(e).map(|&i| self.elements[i].1)
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }

    /// Elements with `|s| = l`; empty beyond the radius or the group's diameter.
    pub fn sphere(&self, l: u32) -> &[(E, u32)] {
        let l = l as usize;
        if l + 1 >= self.sphere_starts.len() {
            return &[];
        }
        &self.elements[self.sphere_starts[l]..self.sphere_starts[l + 1]]
    }

    /// Number of elements with `|s| <= r`.
    pub fn count_within(&self, r: u32) -> usize {
        let r = (r as usize + 1).min(self.sphere_starts.len() - 1);
        self.sphere_starts[r]
    }
}

/// Breadth-first closure of the identity under the generators, up to
/// `radius`, failing once more than `cap` elements are found.
pub fn word_ball<G: GroupModel>(group: &G, radius: u32, cap: usize) -> Result<CayleyBall<G::Element>> {
    let gens = group.generators();
    let e = group.identity();
    let mut elements = vec![(e.clone(), 0)];
    let mut index = HashMap::from([(e, 0usize)]);
    let mut sphere_starts = vec![0, 1];
    let mut frontier = 0..1;
    for l in 1..=radius {
        let start = elements.len();
        for i in frontier.clone() {
            let s = elements[i].0.clone();
            for g in &gens {
                let next = group.multiply(&s, g);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::BallTooLarge { cap });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push((next, l));
                }
            }
        }
        if elements.len() == start {
            break;
        }
        sphere_starts.push(elements.len());
        frontier = start..elements.len();
    }
    Ok(CayleyBall {
        radius,
        elements,
        index,
        sphere_starts,
    })
}
