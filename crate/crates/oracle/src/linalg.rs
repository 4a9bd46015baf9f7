//! Sparse vectors over exact rationals and an incremental echelon form.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
pub type SparseVec<K> = BTreeMap<K, Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn add_scaled<K: Ord + Clone>(acc: &mut SparseVec<K>, v: &SparseVec<K>, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        match acc.get_mut(k) {
            Some(e) => {
                *e += x * c;
                if e.is_zero() {
                    acc.remove(k);
                }
            }
            None => {
                acc.insert(k.clone(), x * c);
            }
        }
    }
}

pub fn scale<K: Ord + Clone>(v: &SparseVec<K>, c: &Q) -> SparseVec<K> {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (k.clone(), x * c)).collect()
}

struct Row<K> {
    pivot: K,
    vec: SparseVec<K>,
    comb: SparseVec<usize>,
}

/// Semi-echelon rows with pivots chosen as the smallest surviving key. Each row remembers
/// which combination of inserted vectors produced it.
pub struct Span<K> {
    rows: Vec<Row<K>>,
    inserted: usize,
}

pub enum Insert {
    Independent(usize),
    /// A relation `Σ c_id · v_id = 0` that involves the new vector with coefficient one.
    Dependent(SparseVec<usize>),
}

impl<K: Ord + Clone> Default for Span<K> {
    fn default() -> Self {
        Span { rows: Vec::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone> Span<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Returns the residual and the coefficients with `v = residual + Σ c_id · v_id`.
    pub fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut r = v.clone();
        let mut coeffs = SparseVec::new();
        for row in &self.rows {
            if let Some(c) = r.get(&row.pivot).cloned() {
                add_scaled(&mut r, &row.vec, &-c.clone());
                add_scaled(&mut coeffs, &row.comb, &c);
            }
        }
        (r, coeffs)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).0.is_empty()
    }

    pub fn insert(&mut self, v: &SparseVec<K>) -> Insert {
        let id = self.inserted;
        self.inserted += 1;
        let (r, coeffs) = self.reduce(v);
        match r.keys().next().cloned() {
            None => {
                let mut rel = scale(&coeffs, &-Q::one());
                rel.insert(id, Q::one());
                Insert::Dependent(rel)
            }
            Some(pivot) => {
                let inv = Q::one() / &r[&pivot];
                let mut comb = scale(&coeffs, &-Q::one());
                comb.insert(id, Q::one());
                self.rows.push(Row { pivot, vec: scale(&r, &inv), comb: scale(&comb, &inv) });
                Insert::Independent(id)
            }
        }
    }
}

/// Keeps the inputs that enlarge the span.
pub fn independent_subset<K: Ord + Clone>(vs: impl IntoIterator<Item = SparseVec<K>>) -> Vec<SparseVec<K>> {
    let mut span = Span::new();
    vs.into_iter()
        .filter(|v| !v.is_empty() && matches!(span.insert(v), Insert::Independent(_)))
        .collect()
}

/// Basis of the kernel of the linear map sending the `i`-th source vector to `images[i]`,
/// as coefficient vectors over the sources.
pub fn kernel<K: Ord + Clone>(images: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let mut span = Span::new();
    images
        .iter()
        .filter_map(|im| match span.insert(im) {
            Insert::Dependent(rel) => Some(rel),
            Insert::Independent(_) => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, x)| (k, q(x))).filter(|(_, x)| !x.is_zero()).collect()
    }

    #[test]
    fn solve_recovers_combination() {
        let mut s = Span::new();
        let a = v(&[(0, 1), (1, 2)]);
        let b = v(&[(1, 1), (2, 3)]);
        assert!(matches!(s.insert(&a), Insert::Independent(0)));
        assert!(matches!(s.insert(&b), Insert::Independent(1)));
        let mut t = scale(&a, &q(3));
        add_scaled(&mut t, &b, &q(-2));
        let (r, c) = s.reduce(&t);
        assert!(r.is_empty());
        assert_eq!(c.get(&0), Some(&q(3)));
        assert_eq!(c.get(&1), Some(&q(-2)));
    }

    #[test]
    fn kernel_of_dependent_images() {
        let imgs = vec![v(&[(0, 1)]), v(&[(0, 2)]), v(&[(1, 1)]), v(&[(0, 1), (1, 1)])];
        let ker = kernel(&imgs);
        assert_eq!(ker.len(), 2);
        for rel in ker {
            let mut total = SparseVec::new();
            for (&i, c) in &rel {
                add_scaled(&mut total, &imgs[i], c);
            }
            assert!(total.is_empty());
        }
    }

    #[test]
    fn independent_subset_drops_repeats() {
        let got = independent_subset(vec![v(&[(0, 1)]), v(&[(0, 5)]), v(&[]), v(&[(3, 1)])]);
        assert_eq!(got.len(), 2);
    }
}
