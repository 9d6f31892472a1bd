use std::cmp::Ordering;

/// A finitely supported real function, stored as entries sorted by key.
///
/// Zero values are never stored, so `len()` is the size of the support.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseFunction<K = usize> {
    entries: Vec<(K, f64)>,
}

impl<K> Default for SparseFunction<K> {
    fn default() -> Self {
        Self {
            entries: Vec::new(),
        }
    }
}

impl<K: Ord + Clone> SparseFunction<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds from arbitrary `(key, value)` pairs; repeated keys are summed
    /// and zeros dropped.
    pub fn from_entries<I: IntoIterator<Item = (K, f64)>>(entries: I) -> Self {
        let mut entries: Vec<(K, f64)> = entries.into_iter().collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(K, f64)> = Vec::with_capacity(entries.len());
        for (k, v) in entries {
            match merged.last_mut() {
                Some((last, acc)) if *last == k => *acc += v,
                _ => merged.push((k, v)),
            }
        }
        merged.retain(|(_, v)| *v != 0.0);
        Self { entries: merged }
    }

    /// Wraps entries already sorted by strictly increasing key with no zeros.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(K, f64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| *v != 0.0));
        Self { entries }
    }

    pub fn entries(&self) -> &[(K, f64)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(K, f64)> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> f64 {
        self.entries
            .binary_search_by(|(k, _)| k.cmp(key))
            .map(|i| self.entries[i].1)
            .unwrap_or(0.0)
    }

    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.entries.iter().map(|(k, _)| k)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|(_, v)| *v)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `self + scale * other`, merging supports.
    pub fn axpy(&self, scale: f64, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.len() + other.len());
        merge(&self.entries, &other.entries, |k, a, b| {
            let v = a + scale * b;
            if v != 0.0 {
                out.push((k.clone(), v));
            }
        });
        Self { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(-1.0, other)
    }

    pub fn scale(&self, c: f64) -> Self {
        if c == 0.0 {
            return Self::zero();
        }
        Self {
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.clone(), c * v))
                .filter(|(_, v)| *v != 0.0)
                .collect(),
        }
    }

    /// Relabels the support through an injective key map (e.g. left
    /// translation `t -> s * t` in a group).
    pub fn map_keys<J: Ord + Clone, F: FnMut(&K) -> J>(&self, mut f: F) -> SparseFunction<J> {
        let mut entries: Vec<(J, f64)> = self.entries.iter().map(|(k, v)| (f(k), *v)).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        debug_assert!(
            entries.windows(2).all(|w| w[0].0 != w[1].0),
            "key map must be injective"
        );
        SparseFunction { entries }
    }
}

/// `‖f − g‖_∞` over the union of the supports.
pub fn sup_distance<K: Ord>(f: &SparseFunction<K>, g: &SparseFunction<K>) -> f64 {
    let mut m: f64 = 0.0;
    merge(&f.entries, &g.entries, |_, a, b| m = m.max((a - b).abs()));
    m
}

/// Walks the union of two sorted supports, calling `visit(key, f(key), g(key))`.
pub(crate) fn merge<K: Ord, F: FnMut(&K, f64, f64)>(a: &[(K, f64)], b: &[(K, f64)], mut visit: F) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                visit(&a[i].0, a[i].1, 0.0);
                i += 1;
            }
            Ordering::Greater => {
                visit(&b[j].0, 0.0, b[j].1);
                j += 1;
            }
            Ordering::Equal => {
                visit(&a[i].0, a[i].1, b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    for (k, v) in &a[i..] {
        visit(k, *v, 0.0);
    }
    for (k, v) in &b[j..] {
        visit(k, 0.0, *v);
    }
}
