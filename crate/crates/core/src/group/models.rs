use std::fmt;
use std::str::FromStr;

use super::GroupModel;

/// Canonical element encoding shared by the built-in groups.
///
/// * `ℤ^d`: coordinates.
/// * `F_k`: freely reduced word, letters `±1..=±k` (`-i` is the inverse of `i`).
/// * `D_k`: `[a, b]` for `ρ^a σ^b`, `0 <= a < k`, `b ∈ {0, 1}`.
/// * `S_k`: the permutation as its image list `[π(0), .., π(k-1)]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(pub Vec<i32>);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// `ℤ^d` with the standard generators `±e_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegerLattice {
    dim: usize,
}

impl IntegerLattice {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

impl GroupModel for IntegerLattice {
    type Element = GroupElement;

    fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.dim])
    }

    fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().map(|x| -x).collect())
    }

    fn generators(&self) -> Vec<GroupElement> {
        let mut gens = Vec::with_capacity(2 * self.dim);
        for i in 0..self.dim {
            for sign in [1, -1] {
                let mut v = vec![0; self.dim];
                v[i] = sign;
                gens.push(GroupElement(v));
            }
        }
        gens
    }

    fn name(&self) -> String {
        format!("z:{}", self.dim)
    }
}

/// Free group on `rank` letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Self {
        Self { rank }
    }

    /// Freely reduces an arbitrary word.
    pub fn reduce(word: &[i32]) -> GroupElement {
        let mut out: Vec<i32> = Vec::with_capacity(word.len());
        for &x in word {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        GroupElement(out)
    }
}

impl GroupModel for FreeGroup {
    type Element = GroupElement;

    fn identity(&self) -> GroupElement {
        GroupElement(Vec::new())
    }

    fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut out = a.0.clone();
        for &x in &b.0 {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        GroupElement(out)
    }

    fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().rev().map(|x| -x).collect())
    }

    fn generators(&self) -> Vec<GroupElement> {
        (1..=self.rank as i32)
            .flat_map(|i| [GroupElement(vec![i]), GroupElement(vec![-i])])
            .collect()
    }

    fn name(&self) -> String {
        format!("free:{}", self.rank)
    }
}

/// Dihedral group of order `2k`, generated by a rotation `ρ`, its inverse,
/// and a reflection `σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dihedral {
    k: i32,
}

impl Dihedral {
    pub fn new(k: usize) -> Self {
        assert!(k >= 1, "dihedral group needs k >= 1");
        Self { k: k as i32 }
    }
}

impl GroupModel for Dihedral {
    type Element = GroupElement;

    fn identity(&self) -> GroupElement {
        GroupElement(vec![0, 0])
    }

    // ρ^a σ^b · ρ^c σ^d = ρ^{a + (-1)^b c} σ^{b + d}
    fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let (a, b, c, d) = (x.0[0], x.0[1], y.0[0], y.0[1]);
        let c = if b == 1 { -c } else { c };
        GroupElement(vec![(a + c).rem_euclid(self.k), (b + d) % 2])
    }

    fn inverse(&self, x: &GroupElement) -> GroupElement {
        if x.0[1] == 1 {
            x.clone()
        } else {
            GroupElement(vec![(-x.0[0]).rem_euclid(self.k), 0])
        }
    }

    fn generators(&self) -> Vec<GroupElement> {
        let mut gens = vec![
            GroupElement(vec![1 % self.k, 0]),
            GroupElement(vec![(self.k - 1) % self.k, 0]),
            GroupElement(vec![0, 1]),
        ];
        let e = self.identity();
        gens.retain(|g| *g != e);
        gens.dedup();
        gens
    }

    fn name(&self) -> String {
        format!("dihedral:{}", self.k)
    }
}

/// Symmetric group on `k` points, generated by adjacent transpositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Symmetric {
    k: usize,
}

impl Symmetric {
    pub fn new(k: usize) -> Self {
        Self { k }
    }

    /// Inversion count: the word length with respect to adjacent transpositions.
    pub fn inversions(p: &GroupElement) -> u32 {
        let mut count = 0;
        for i in 0..p.0.len() {
            for j in i + 1..p.0.len() {
                if p.0[i] > p.0[j] {
                    count += 1;
                }
            }
        }
        count
    }
}

impl GroupModel for Symmetric {
    type Element = GroupElement;

    fn identity(&self) -> GroupElement {
        GroupElement((0..self.k as i32).collect())
    }

    // (a · b)(i) = a(b(i))
    fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(b.0.iter().map(|&i| a.0[i as usize]).collect())
    }

    fn inverse(&self, a: &GroupElement) -> GroupElement {
        let mut inv = vec![0; self.k];
        for (i, &x) in a.0.iter().enumerate() {
            inv[x as usize] = i as i32;
        }
        GroupElement(inv)
    }

    fn generators(&self) -> Vec<GroupElement> {
        (0..self.k.saturating_sub(1))
            .map(|i| {
                let mut p = self.identity();
                p.0.swap(i, i + 1);
                p
            })
            .collect()
    }

    fn name(&self) -> String {
        format!("sym:{}", self.k)
    }
}

/// One of the built-in groups, selected by a `kind:param` string
/// (`z:d`, `free:k`, `sym:k`, `dihedral:k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinGroup {
    Lattice(IntegerLattice),
    Free(FreeGroup),
    Dihedral(Dihedral),
    Symmetric(Symmetric),
}

impl FromStr for BuiltinGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, param) = s
            .split_once(':')
            .ok_or_else(|| format!("expected kind:param, got `{s}`"))?;
        let k: usize = param
            .parse()
            .map_err(|e| format!("bad parameter `{param}`: {e}"))?;
        match kind {
            "z" if k >= 1 => Ok(BuiltinGroup::Lattice(IntegerLattice::new(k))),
            "free" if k >= 1 => Ok(BuiltinGroup::Free(FreeGroup::new(k))),
            "sym" if k >= 1 => Ok(BuiltinGroup::Symmetric(Symmetric::new(k))),
            "dihedral" if k >= 1 => Ok(BuiltinGroup::Dihedral(Dihedral::new(k))),
            "z" | "free" | "sym" | "dihedral" => Err(format!("parameter must be >= 1 in `{s}`")),
            _ => Err(format!("unknown group kind `{kind}`")),
        }
    }
}

impl GroupModel for BuiltinGroup {
    type Element = GroupElement;

    fn identity(&self) -> GroupElement {
        match self {
            BuiltinGroup::Lattice(g) => g.identity(),
            BuiltinGroup::Free(g) => g.identity(),
            BuiltinGroup::Dihedral(g) => g.identity(),
            BuiltinGroup::Symmetric(g) => g.identity(),
        }
    }

    fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match self {
            BuiltinGroup::Lattice(g) => g.multiply(a, b),
            BuiltinGroup::Free(g) => g.multiply(a, b),
            BuiltinGroup::Dihedral(g) => g.multiply(a, b),
            BuiltinGroup::Symmetric(g) => g.multiply(a, b),
        }
    }

    fn inverse(&self, a: &GroupElement) -> GroupElement {
        match self {
            BuiltinGroup::Lattice(g) => g.inverse(a),
            BuiltinGroup::Free(g) => g.inverse(a),
            BuiltinGroup::Dihedral(g) => g.inverse(a),
            BuiltinGroup::Symmetric(g) => g.inverse(a),
        }
    }

    fn generators(&self) -> Vec<GroupElement> {
        match self {
            BuiltinGroup::Lattice(g) => g.generators(),
            BuiltinGroup::Free(g) => g.generators(),
            BuiltinGroup::Dihedral(g) => g.generators(),
            BuiltinGroup::Symmetric(g) => g.generators(),
        }
    }

    fn name(&self) -> String {
        match self {
            BuiltinGroup::Lattice(g) => g.name(),
            BuiltinGroup::Free(g) => g.name(),
            BuiltinGroup::Dihedral(g) => g.name(),
            BuiltinGroup::Symmetric(g) => g.name(),
        }
    }
}
