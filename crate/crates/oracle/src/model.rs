//! Explicit gl(n)-modules over exact rationals.
//!
//! `L(λ)` lives inside `⊗_c Λ^{ℓ_c} V`, one wedge factor per column of the (shifted) Young
//! diagram, as the submodule generated by the product of the top wedges. A tensor factor `F`
//! (`S^d V` or `Λ^d V`) is carried in the same key. Keys pack one byte mask per column in the low
//! 96 bits and the F-part in the high 32 bits.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::finite::{dominance_leq, f_support, FKind};
use crate::linalg::{add_scaled, independent_subset, kernel, q, Insert, Span, SparseVec, Q};
use crate::OracleError;

pub type Key = u128;
pub type Vector = SparseVec<Key>;

pub const COMPILED_MAX_RANK: usize = 8;
pub const COMPILED_MAX_COLUMNS: usize = 12;
pub const COMPILED_MAX_BOXES: u64 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBounds {
    pub max_rank: usize,
    pub max_boxes: u64,
}

impl Default for SizeBounds {
    fn default() -> Self {
        SizeBounds { max_rank: 5, max_boxes: 12 }
    }
}

/// How the F-part of a key is encoded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FEnc {
    Trivial,
    Sym,
    Ext,
}

impl From<FKind> for FEnc {
    fn from(k: FKind) -> Self {
        match k {
            FKind::Sym => FEnc::Sym,
            FKind::Ext => FEnc::Ext,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Ambient {
    pub n: usize,
    pub cols: Vec<u8>,
    pub f: FEnc,
    /// `λ − shift·(1,…,1)` is the partition realised by the columns.
    pub shift: i64,
}

fn wedge_act(mask: u32, a: usize, b: usize) -> Option<(u32, i64)> {
    if a == b {
        return (mask >> a & 1 == 1).then_some((mask, 1));
    }
    if mask >> b & 1 == 0 || mask >> a & 1 == 1 {
        return None;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let between = (mask >> (lo + 1)) & ((1u32 << (hi - lo - 1)) - 1);
    let sign = if between.count_ones() % 2 == 0 { 1 } else { -1 };
    Some((mask ^ (1 << a) ^ (1 << b), sign))
}

impl Ambient {
    pub fn for_weight(lambda: &[i64], f: FEnc, bounds: SizeBounds) -> Result<Ambient, OracleError> {
        let n = lambda.len();
        if n == 0 || n > bounds.max_rank.min(COMPILED_MAX_RANK) {
            return Err(OracleError::SizeBound(format!("rank {n} exceeds {}", bounds.max_rank)));
        }
        if !crate::finite::is_dominant(lambda) {
            return Err(OracleError::NotDominant(lambda.to_vec()));
        }
        let shift = lambda[n - 1];
        let raw: Vec<i64> = lambda.iter().map(|x| x - shift).collect();
        let boxes: i64 = raw.iter().sum();
        if boxes as u64 > bounds.max_boxes || raw[0] as usize > COMPILED_MAX_COLUMNS {
            return Err(OracleError::SizeBound(format!("{boxes} boxes exceed {}", bounds.max_boxes)));
        }
        let cols = (0..raw[0]).map(|c| raw.iter().filter(|&&x| x > c).count() as u8).collect();
        Ok(Ambient { n, cols, f, shift })
    }

    pub fn raw_lambda(&self) -> Vec<i64> {
        (0..self.n)
            .map(|i| self.cols.iter().filter(|&&l| (l as usize) > i).count() as i64)
            .collect()
    }

    pub fn hw_l_key(&self) -> Key {
        self.cols
            .iter()
            .enumerate()
            .fold(0, |k, (c, &len)| k | (((1u128 << len) - 1) << (8 * c)))
    }

    pub fn f_key(&self, eta: &[i64]) -> u32 {
        match self.f {
            FEnc::Trivial => 0,
            FEnc::Sym => eta.iter().enumerate().fold(0, |k, (i, &c)| k | ((c as u32) << (4 * i))),
            FEnc::Ext => eta.iter().enumerate().fold(0, |k, (i, &c)| k | ((c as u32) << i)),
        }
    }

    pub fn join(l: Key, f: u32) -> Key {
        l | ((f as u128) << 96)
    }

    pub fn f_part(key: Key) -> u32 {
        (key >> 96) as u32
    }

    pub fn l_part(key: Key) -> Key {
        key & ((1u128 << 96) - 1)
    }

    /// Raw weight of a key; add `shift` to every coordinate of the L-part for the true weight.
    pub fn weight(&self, key: Key) -> Vec<i64> {
        let mut w = vec![0i64; self.n];
        for c in 0..self.cols.len() {
            let m = (key >> (8 * c)) as u8;
            for (i, x) in w.iter_mut().enumerate() {
                *x += (m >> i & 1) as i64;
            }
        }
        let f = Self::f_part(key);
        for (i, x) in w.iter_mut().enumerate() {
            *x += match self.f {
                FEnc::Trivial => 0,
                FEnc::Sym => (f >> (4 * i) & 0xf) as i64,
                FEnc::Ext => (f >> i & 1) as i64,
            };
        }
        w
    }

    /// `E_{a,b}` on a basis key: Leibniz rule over the column factors and the F-part.
    pub fn act_key(&self, a: usize, b: usize, key: Key) -> Vec<(Key, i64)> {
        let mut out = Vec::new();
        for c in 0..self.cols.len() {
            let m = (key >> (8 * c)) as u8 as u32;
            if let Some((m2, s)) = wedge_act(m, a, b) {
                let k2 = (key & !(0xffu128 << (8 * c))) | ((m2 as u128) << (8 * c));
                out.push((k2, s));
            }
        }
        let f = Self::f_part(key);
        let l = Self::l_part(key);
        match self.f {
            FEnc::Trivial => {}
            FEnc::Sym => {
                let cb = (f >> (4 * b) & 0xf) as i64;
                if cb > 0 {
                    let f2 = if a == b { f } else { f - (1 << (4 * b)) + (1 << (4 * a)) };
                    out.push((Self::join(l, f2), cb));
                }
            }
            FEnc::Ext => {
                if let Some((f2, s)) = wedge_act(f, a, b) {
                    out.push((Self::join(l, f2), s));
                }
            }
        }
        out
    }

    pub fn act(&self, a: usize, b: usize, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&k, c) in v {
            for (k2, s) in self.act_key(a, b, k) {
                add_scaled(&mut out, &Vector::from([(k2, q(s))]), c);
            }
        }
        out
    }

    /// F basis on the indices `idx` as `(f key, weight)` pairs.
    pub fn f_basis(&self, kind: FKind, d: u32, idx: &[usize]) -> Vec<(u32, Vec<i64>)> {
        if self.f == FEnc::Trivial {
            return vec![(0, vec![0; self.n])];
        }
        f_support(kind, idx.len(), d)
            .into_iter()
            .map(|local| {
                let mut eta = vec![0i64; self.n];
                for (&i, &c) in idx.iter().zip(&local) {
                    eta[i] = c;
                }
                (self.f_key(&eta), eta)
            })
            .collect()
    }
}

/// Weight spaces of the `gl(order)`-submodule generated by a weight vector, built by applying
/// simple lowering operators one step at a time.
pub struct Generator {
    seed: Vector,
    seed_wt: Vec<i64>,
    order: Vec<usize>,
    memo: HashMap<Vec<i64>, Vec<Vector>>,
}

impl Generator {
    pub fn new(seed: Vector, seed_wt: Vec<i64>, order: Vec<usize>) -> Self {
        Generator { seed, seed_wt, order, memo: HashMap::new() }
    }

    pub fn below(&self, wt: &[i64]) -> bool {
        let inside = |i: usize| self.order.contains(&i);
        if (0..wt.len()).any(|i| !inside(i) && wt[i] != self.seed_wt[i]) {
            return false;
        }
        let a: Vec<i64> = self.order.iter().map(|&i| wt[i]).collect();
        let b: Vec<i64> = self.order.iter().map(|&i| self.seed_wt[i]).collect();
        dominance_leq(&a, &b)
    }

    pub fn space(&mut self, amb: &Ambient, wt: &[i64]) -> Vec<Vector> {
        if let Some(b) = self.memo.get(wt) {
            return b.clone();
        }
        let basis = if wt == self.seed_wt.as_slice() {
            vec![self.seed.clone()]
        } else if !self.below(wt) {
            Vec::new()
        } else {
            let mut images = Vec::new();
            for k in 0..self.order.len().saturating_sub(1) {
                let (hi, lo) = (self.order[k], self.order[k + 1]);
                let mut pre = wt.to_vec();
                pre[hi] += 1;
                pre[lo] -= 1;
                if !self.below(&pre) {
                    continue;
                }
                for v in self.space(amb, &pre) {
                    images.push(amb.act(lo, hi, &v));
                }
            }
            independent_subset(images)
        };
        self.memo.insert(wt.to_vec(), basis.clone());
        basis
    }
}

/// Basis of `(L ⊗ F)_wt` where `L` is generated by `lgen` and `F` is spanned by `fbasis`.
pub fn tensor_space(amb: &Ambient, lgen: &mut Generator, fbasis: &[(u32, Vec<i64>)], wt: &[i64]) -> Vec<Vector> {
    let mut out = Vec::new();
    for (f, eta) in fbasis {
        let lw: Vec<i64> = wt.iter().zip(eta).map(|(x, e)| x - e).collect();
        for v in lgen.space(amb, &lw) {
            out.push(v.into_iter().map(|(k, c)| (Ambient::join(k, *f), c)).collect());
        }
    }
    out
}

/// The unique vector of weight `wt` killed by the simple raising operators of `gl(order)`,
/// scaled so that its coefficient on `normalize` is one.
pub fn hw_vector(
    amb: &Ambient,
    lgen: &mut Generator,
    fbasis: &[(u32, Vec<i64>)],
    order: &[usize],
    wt: &[i64],
    normalize: Key,
) -> Result<Vector, OracleError> {
    let basis = tensor_space(amb, lgen, fbasis, wt);
    let images: Vec<SparseVec<(usize, Key)>> = basis
        .iter()
        .map(|b| {
            let mut img = SparseVec::new();
            for k in 0..order.len().saturating_sub(1) {
                for (key, c) in amb.act(order[k], order[k + 1], b) {
                    img.insert((k, key), c);
                }
            }
            img
        })
        .collect();
    let ker = kernel(&images);
    if ker.len() != 1 {
        return Err(OracleError::MultiplicityNotOne(ker.len()));
    }
    let mut v = Vector::new();
    for (&i, c) in &ker[0] {
        add_scaled(&mut v, &basis[i], c);
    }
    let c = v.get(&normalize).cloned().ok_or(OracleError::MultiplicityNotOne(0))?;
    let inv = q(1) / c;
    Ok(crate::linalg::scale(&v, &inv))
}

/// An explicit `L(λ)` with a weight-indexed basis.
pub struct FiniteModel {
    pub lambda: Vec<i64>,
    pub ambient: Ambient,
    pub basis: Vec<Vector>,
    /// True weights, `shift` included.
    pub weights: Vec<Vec<i64>>,
    pub by_weight: BTreeMap<Vec<i64>, Vec<usize>>,
}

pub fn build_simple_model(lambda: &[i64], bounds: SizeBounds) -> Result<FiniteModel, OracleError> {
    let amb = Ambient::for_weight(lambda, FEnc::Trivial, bounds)?;
    let raw = amb.raw_lambda();
    let order: Vec<usize> = (0..amb.n).collect();
    let hw = Vector::from([(amb.hw_l_key(), q(1))]);
    let mut gen = Generator::new(hw, raw.clone(), order);
    let total: i64 = raw.iter().sum();
    let mut basis = Vec::new();
    let mut weights = Vec::new();
    let mut by_weight = BTreeMap::new();
    for mu in f_support(FKind::Sym, amb.n, total as u32) {
        if mu.iter().any(|&x| x > raw[0]) {
            continue;
        }
        let space = gen.space(&amb, &mu);
        if space.is_empty() {
            continue;
        }
        let true_wt: Vec<i64> = mu.iter().map(|x| x + amb.shift).collect();
        let ids: Vec<usize> = (basis.len()..basis.len() + space.len()).collect();
        for v in space {
            basis.push(v);
            weights.push(true_wt.clone());
        }
        by_weight.insert(true_wt, ids);
    }
    Ok(FiniteModel { lambda: lambda.to_vec(), ambient: amb, basis, weights, by_weight })
}

impl FiniteModel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn act(&self, a: usize, b: usize, v: &Vector) -> Vector {
        self.ambient.act(a, b, v)
    }

    /// Matrix of `E_{a,b}` in the model basis, one sparse column per basis vector.
    pub fn action_table(&self, a: usize, b: usize) -> Vec<SparseVec<usize>> {
        let mut cache: BTreeMap<Vec<i64>, (Span<Key>, Vec<usize>)> = BTreeMap::new();
        self.basis
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let img = self.act(a, b, v);
                if img.is_empty() {
                    return SparseVec::new();
                }
                let mut wt = self.weights[i].clone();
                wt[a] += 1;
                wt[b] -= 1;
                let (span, ids) = cache.entry(wt.clone()).or_insert_with(|| {
                    let ids = self.by_weight.get(&wt).cloned().unwrap_or_default();
                    let mut span = Span::new();
                    for &j in &ids {
                        let _ = span.insert(&self.basis[j]);
                    }
                    (span, ids)
                });
                let (r, c) = span.reduce(&img);
                debug_assert!(r.is_empty());
                c.into_iter().map(|(local, x)| (ids[local], x)).collect()
            })
            .collect()
    }
}

/// `[E_{ab}, E_{cd}] v = δ_{bc} E_{ad} v − δ_{da} E_{cb} v`.
pub fn commutator_holds(amb: &Ambient, (a, b, c, d): (usize, usize, usize, usize), v: &Vector) -> bool {
    let mut lhs = amb.act(a, b, &amb.act(c, d, v));
    add_scaled(&mut lhs, &amb.act(c, d, &amb.act(a, b, v)), &q(-1));
    let mut rhs = Vector::new();
    if b == c {
        add_scaled(&mut rhs, &amb.act(a, d, v), &q(1));
    }
    if d == a {
        add_scaled(&mut rhs, &amb.act(c, b, v), &q(-1));
    }
    lhs == rhs
}

pub fn is_independent(vs: &[Vector]) -> bool {
    let mut span = Span::new();
    vs.iter().all(|v| matches!(span.insert(v), Insert::Independent(_)))
}

pub fn coefficient(v: &Vector, key: Key) -> Q {
    v.get(&key).cloned().unwrap_or_else(|| q(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{dominant_weights, kostka, weyl_dim};
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};

    fn model(l: &[i64]) -> FiniteModel {
        build_simple_model(l, SizeBounds::default()).unwrap()
    }

    #[test]
    fn model_examples() {
        assert_eq!(model(&[1, 0]).dim(), 2);
        assert_eq!(model(&[2, 1, 0]).dim(), 8);
        assert_eq!(model(&[2, 2, 2]).dim(), 1);
        assert_eq!(model(&[-1, -2, -2]).dim(), 3);
    }

    #[test]
    fn size_bound_rejects_large() {
        let b = SizeBounds { max_rank: 5, max_boxes: 8 };
        assert!(matches!(build_simple_model(&[5, 4, 0], b), Err(OracleError::SizeBound(_))));
        assert!(matches!(build_simple_model(&[0; 6], b), Err(OracleError::SizeBound(_))));
    }

    #[test]
    fn dimensions_and_multiplicities() {
        for n in 1..=3 {
            for l in dominant_weights(n, 0, 3) {
                let m = model(&l);
                assert_eq!(BigUint::from(m.dim()), weyl_dim(&l), "{l:?}");
                for (wt, ids) in &m.by_weight {
                    assert_eq!(ids.len() as u64, kostka(&l, wt), "{l:?} {wt:?}");
                }
            }
        }
    }

    #[test]
    fn commutators_on_random_vectors() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for l in [[2, 1, 0], [3, 1, 1], [2, 2, 0]] {
            let m = model(&l);
            for _ in 0..100 {
                let v = &m.basis[rng.gen_range(0..m.dim())];
                let idx: Vec<usize> = (0..4).map(|_| rng.gen_range(0..3)).collect();
                assert!(commutator_holds(&m.ambient, (idx[0], idx[1], idx[2], idx[3]), v));
            }
        }
    }

    #[test]
    fn diagonal_acts_by_weight() {
        let m = model(&[2, 1, 0]);
        for (v, wt) in m.basis.iter().zip(&m.weights) {
            for i in 0..3 {
                let mut expect = v.clone();
                for c in expect.values_mut() {
                    *c *= q(wt[i]);
                }
                expect.retain(|_, c| *c != q(0));
                let mut got = m.act(i, i, v);
                add_scaled(&mut got, v, &q(m.ambient.shift));
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn action_table_reproduces_action() {
        let m = model(&[2, 1, 0]);
        let t = m.action_table(2, 0);
        for (i, col) in t.iter().enumerate() {
            let mut rebuilt = Vector::new();
            for (&j, c) in col {
                add_scaled(&mut rebuilt, &m.basis[j], c);
            }
            assert_eq!(rebuilt, m.act(2, 0, &m.basis[i]));
        }
    }
}
