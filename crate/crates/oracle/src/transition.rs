//! Transition maps `φ(X,Y) = ι ⊗ τ : L_X(λ_X) ⊗ F_X → L_Y(λ) ⊗ F_Y` for `Y = X⁻ ⊔ Z ⊔ X⁺`.
//!
//! Indices of `Y` are `0..n` in order and `Z` is a contiguous interval. `L_X(λ_X)` is realised
//! as the `gl(X)`-submodule of `L_Y(λ)` generated by the highest weight vector, so `ι` is the
//! identity on vectors.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::finite::{dominance_leq, f_support, is_dominant, pieri_finite, FKind};
use crate::linalg::{q, scale, Insert, Span, Q};
use crate::model::{hw_vector, tensor_space, Ambient, Generator, Key, SizeBounds, Vector};
use crate::{OracleError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FPair {
    /// `S^d V_X → S^d V_Y`, induced by `V_X ⊂ V_Y`.
    Sym(u32),
    /// `Λ^d V_X → Λ^d V_Y`, induced by `V_X ⊂ V_Y`.
    Ext(u32),
    /// `Λ^d V_X → Λ^{d+#Z} V_Y`, `e ↦ e ∧ e_Z`.
    ExtWedge(u32),
}

impl FPair {
    pub fn kind(self) -> FKind {
        match self {
            FPair::Sym(_) => FKind::Sym,
            _ => FKind::Ext,
        }
    }

    pub fn d(self) -> u32 {
        match self {
            FPair::Sym(d) | FPair::Ext(d) | FPair::ExtWedge(d) => d,
        }
    }

    pub fn is_wedge(self) -> bool {
        matches!(self, FPair::ExtWedge(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransitionConfig {
    pub lambda: Vec<i64>,
    pub z_start: usize,
    pub z_len: usize,
    pub pair: FPair,
}

impl TransitionConfig {
    pub fn new(lambda: Vec<i64>, z_start: usize, z_len: usize, pair: FPair) -> Result<Self> {
        let n = lambda.len();
        if !is_dominant(&lambda) {
            return Err(OracleError::NotDominant(lambda));
        }
        if z_len == 0 || z_start + z_len > n || z_len == n {
            return Err(OracleError::PreconditionFailed(format!(
                "Z = [{z_start}, {}) must be a nonempty proper interval of 0..{n}",
                z_start + z_len
            )));
        }
        if pair.d() == 0 {
            return Err(OracleError::PreconditionFailed("degree must be positive".into()));
        }
        if pair.is_wedge() && pair.d() as usize > n - z_len {
            return Err(OracleError::PreconditionFailed("wedge pair needs d ≤ #X".into()));
        }
        Ok(TransitionConfig { lambda, z_start, z_len, pair })
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn z(&self) -> Vec<usize> {
        (self.z_start..self.z_start + self.z_len).collect()
    }

    pub fn x(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| !self.in_z(i)).collect()
    }

    pub fn x_minus(&self) -> Vec<usize> {
        (0..self.z_start).collect()
    }

    pub fn x_plus(&self) -> Vec<usize> {
        (self.z_start + self.z_len..self.n()).collect()
    }

    pub fn in_z(&self, i: usize) -> bool {
        (self.z_start..self.z_start + self.z_len).contains(&i)
    }

    pub fn d_y(&self) -> u32 {
        match self.pair {
            FPair::ExtWedge(d) => d + self.z_len as u32,
            p => p.d(),
        }
    }

    /// `P_{λ_X}(F_X)`, extended by zero on `Z`.
    pub fn gammas(&self) -> Vec<Vec<i64>> {
        let x = self.x();
        let lx: Vec<i64> = x.iter().map(|&i| self.lambda[i]).collect();
        pieri_finite(&lx, self.pair.kind(), self.pair.d())
            .into_iter()
            .map(|g| {
                let mut out = vec![0; self.n()];
                for (&i, c) in x.iter().zip(g) {
                    out[i] = c;
                }
                out
            })
            .collect()
    }

    /// `P_λ(F_Y)`.
    pub fn nus(&self) -> Vec<Vec<i64>> {
        pieri_finite(&self.lambda, self.pair.kind(), self.d_y())
    }

    /// `ν − γ`, or `ν − γ − ε_Z` for the wedge pair.
    pub fn diff(&self, gamma: &[i64], nu: &[i64]) -> Vec<i64> {
        (0..self.n())
            .map(|i| nu[i] - gamma[i] - (self.pair.is_wedge() && self.in_z(i)) as i64)
            .collect()
    }

    fn constant_on_z(&self) -> Option<i64> {
        let a = self.lambda[self.z_start];
        self.z().iter().all(|&i| self.lambda[i] == a).then_some(a)
    }
}

/// `I ⊂ s_i` and `J ⊂ s_j` where `diff = ε_I − ε_J`.
fn splits(diff: &[i64], s_i: impl Fn(usize) -> bool, s_j: impl Fn(usize) -> bool) -> bool {
    diff.iter()
        .enumerate()
        .all(|(k, &c)| (c <= 0 || s_i(k)) && (c >= 0 || s_j(k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// `X⁺ = ∅`.
    I,
    /// `X⁻ = ∅`.
    II,
    /// Both sides nonempty, `λ(Z) = {a}`, `a > λ_{min X⁺}`, `#Z ≥ d`.
    III,
    /// Hypotheses of case III without the size condition.
    Gg,
    /// Wedge pair, `X⁻ = ∅`.
    DualI,
    /// Wedge pair, `X⁺ = ∅`.
    DualII,
    /// Wedge pair, both sides nonempty, `λ(Z) = {a}`, `a < λ_{max X⁻}`, `#Z ≥ #X − d`.
    DualIII,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    Nonzero,
    Zero,
    Undetermined,
}

impl From<bool> for Prediction {
    fn from(b: bool) -> Self {
        if b {
            Prediction::Nonzero
        } else {
            Prediction::Zero
        }
    }
}

/// Cases whose hypotheses hold, or the reason none does.
pub fn applicable_cases(cfg: &TransitionConfig) -> std::result::Result<Vec<Case>, String> {
    let (xm, xp) = (cfg.x_minus(), cfg.x_plus());
    let mut out = Vec::new();
    if !cfg.pair.is_wedge() {
        if xp.is_empty() {
            out.push(Case::I);
        }
        if xm.is_empty() {
            out.push(Case::II);
        }
        if !out.is_empty() {
            return Ok(out);
        }
        let a = cfg.constant_on_z().ok_or("λ is not constant on Z")?;
        if a <= cfg.lambda[xp[0]] {
            return Err(format!("λ(Z) = {a} is not above λ at min X⁺ = {}", cfg.lambda[xp[0]]));
        }
        if cfg.z_len >= cfg.pair.d() as usize {
            out.push(Case::III);
        }
        out.push(Case::Gg);
        Ok(out)
    } else {
        if xm.is_empty() {
            out.push(Case::DualI);
        }
        if xp.is_empty() {
            out.push(Case::DualII);
        }
        if !out.is_empty() {
            return Ok(out);
        }
        let a = cfg.constant_on_z().ok_or("λ is not constant on Z")?;
        let last = cfg.lambda[*xm.last().expect("X⁻ nonempty")];
        if a >= last {
            return Err(format!("λ(Z) = {a} is not below λ at max X⁻ = {last}"));
        }
        let dp = cfg.x().len() - cfg.pair.d() as usize;
        if cfg.z_len < dp {
            return Err(format!("#Z = {} is smaller than #X − d = {dp}", cfg.z_len));
        }
        out.push(Case::DualIII);
        Ok(out)
    }
}

pub fn predict_case(cfg: &TransitionConfig, case: Case, gamma: &[i64], nu: &[i64]) -> Prediction {
    let diff = cfg.diff(gamma, nu);
    let xm = |i: usize| i < cfg.z_start;
    let z = |i: usize| cfg.in_z(i);
    let xp = |i: usize| i >= cfg.z_start + cfg.z_len;
    match case {
        Case::I | Case::DualI => diff.iter().all(|&c| c == 0).into(),
        Case::II => splits(&diff, z, xp).into(),
        Case::III => splits(&diff, |i| xm(i) || z(i), xp).into(),
        Case::Gg => {
            if !splits(&diff, |i| xm(i) || z(i), xp) {
                Prediction::Zero
            } else if diff.iter().filter(|&&c| c > 0).sum::<i64>() <= cfg.z_len as i64 {
                Prediction::Nonzero
            } else {
                Prediction::Undetermined
            }
        }
        Case::DualII => splits(&diff, xm, z).into(),
        Case::DualIII => splits(&diff, xm, |i| z(i) || xp(i)).into(),
    }
}

/// The criterion of the first applicable exact case.
pub fn transition_nonzero_predicted(cfg: &TransitionConfig, gamma: &[i64], nu: &[i64]) -> Result<bool> {
    let cases = applicable_cases(cfg).map_err(OracleError::HypothesesNotMet)?;
    let case = cases
        .into_iter()
        .find(|&c| c != Case::Gg)
        .ok_or_else(|| OracleError::HypothesesNotMet(format!("#Z = {} is smaller than d", cfg.z_len)))?;
    Ok(predict_case(cfg, case, gamma, nu) == Prediction::Nonzero)
}

/// `I ⊂ X⁻ ⊔ Z` and `J ⊂ X⁺`, which every nonzero component satisfies for inclusion pairs.
pub fn necessary_condition(cfg: &TransitionConfig, gamma: &[i64], nu: &[i64]) -> Result<bool> {
    if cfg.pair.is_wedge() {
        return Err(OracleError::PreconditionFailed("stated for inclusion pairs only".into()));
    }
    let diff = cfg.diff(gamma, nu);
    Ok(splits(&diff, |i| i < cfg.z_start + cfg.z_len, |i| i >= cfg.z_start + cfg.z_len))
}

/// Exact computation of the components of one configuration.
pub struct TransitionOracle {
    pub cfg: TransitionConfig,
    amb: Ambient,
    raw: Vec<i64>,
    hw_l: Key,
    order_x: Vec<usize>,
    order_y: Vec<usize>,
    lgen_x: Generator,
    lgen_y: Generator,
    fbasis_x: Vec<(u32, Vec<i64>)>,
    fbasis_y: Vec<(u32, Vec<i64>)>,
    pub gammas: Vec<Vec<i64>>,
    pub nus: Vec<Vec<i64>>,
    nu_gens: BTreeMap<usize, Generator>,
}

impl TransitionOracle {
    pub fn new(cfg: &TransitionConfig, bounds: SizeBounds) -> Result<Self> {
        if cfg.pair.kind() == FKind::Sym && cfg.d_y() > 15 {
            return Err(OracleError::SizeBound(format!("degree {} exceeds 15", cfg.d_y())));
        }
        let amb = Ambient::for_weight(&cfg.lambda, cfg.pair.kind().into(), bounds)?;
        let raw = amb.raw_lambda();
        let hw_l = amb.hw_l_key();
        let seed = Vector::from([(hw_l, q(1))]);
        let order_x = cfg.x();
        let order_y: Vec<usize> = (0..cfg.n()).collect();
        let fbasis_x = amb.f_basis(cfg.pair.kind(), cfg.pair.d(), &order_x);
        let fbasis_y = amb.f_basis(cfg.pair.kind(), cfg.d_y(), &order_y);
        Ok(TransitionOracle {
            cfg: cfg.clone(),
            lgen_x: Generator::new(seed.clone(), raw.clone(), order_x.clone()),
            lgen_y: Generator::new(seed, raw.clone(), order_y.clone()),
            amb,
            raw,
            hw_l,
            order_x,
            order_y,
            fbasis_x,
            fbasis_y,
            gammas: cfg.gammas(),
            nus: cfg.nus(),
            nu_gens: BTreeMap::new(),
        })
    }

    fn shifted(&self, eta: &[i64]) -> Vec<i64> {
        self.raw.iter().zip(eta).map(|(a, b)| a + b).collect()
    }

    /// Highest weight vector of `L_X(λ_X + γ) ⊂ L_X(λ_X) ⊗ F_X`.
    pub fn source_hw(&mut self, gamma: &[i64]) -> Result<Vector> {
        let wt = self.shifted(gamma);
        let norm = Ambient::join(self.hw_l, self.amb.f_key(gamma));
        hw_vector(&self.amb, &mut self.lgen_x, &self.fbasis_x, &self.order_x, &wt, norm)
    }

    /// `φ(X,Y)(v_{λ+γ})` and its raw weight.
    pub fn image(&mut self, gamma: &[i64]) -> Result<(Vector, Vec<i64>)> {
        let v = self.source_hw(gamma)?;
        let mut wt = self.shifted(gamma);
        if !self.cfg.pair.is_wedge() {
            return Ok((v, wt));
        }
        let z = self.cfg.z();
        let zmask: u32 = z.iter().fold(0, |m, &i| m | 1 << i);
        for &i in &z {
            wt[i] += 1;
        }
        let mut out = Vector::new();
        for (k, c) in v {
            let f = Ambient::f_part(k);
            if f & zmask != 0 {
                return Err(OracleError::Internal("source vector meets Z".into()));
            }
            let crossings: u32 = z.iter().map(|&zi| (f >> (zi + 1)).count_ones()).sum();
            let c = if crossings % 2 == 0 { c } else { -c };
            out.insert(Ambient::join(Ambient::l_part(k), f | zmask), c);
        }
        Ok((out, wt))
    }

    fn nu_generator(&mut self, idx: usize) -> Result<&mut Generator> {
        if !self.nu_gens.contains_key(&idx) {
            let nu = self.nus[idx].clone();
            let wt = self.shifted(&nu);
            let norm = Ambient::join(self.hw_l, self.amb.f_key(&nu));
            let hw = hw_vector(&self.amb, &mut self.lgen_y, &self.fbasis_y, &self.order_y, &wt, norm)?;
            self.nu_gens.insert(idx, Generator::new(hw, wt, self.order_y.clone()));
        }
        Ok(self.nu_gens.get_mut(&idx).expect("inserted"))
    }

    /// Coefficient vectors of `w` in each summand `L_Y(λ + ν)` meeting its weight.
    fn decompose(&mut self, w: &Vector, wt: &[i64]) -> Result<BTreeMap<usize, Vector>> {
        let mut span = Span::new();
        let mut owners = Vec::new();
        let mut parts: Vec<Vector> = Vec::new();
        for idx in 0..self.nus.len() {
            if !dominance_leq(wt, &self.shifted(&self.nus[idx])) {
                continue;
            }
            let amb = self.amb.clone();
            for v in self.nu_generator(idx)?.space(&amb, wt) {
                if let Insert::Dependent(_) = span.insert(&v) {
                    return Err(OracleError::Internal("summands are not independent".into()));
                }
                owners.push(idx);
                parts.push(v);
            }
        }
        let total = tensor_space(&self.amb, &mut self.lgen_y, &self.fbasis_y, wt).len();
        if span.rank() != total {
            return Err(OracleError::Internal(format!("summands span {} of {total} dimensions", span.rank())));
        }
        let (residual, coeffs) = span.reduce(w);
        if !residual.is_empty() {
            return Err(OracleError::Internal("image outside the tensor product".into()));
        }
        let mut out: BTreeMap<usize, Vector> = BTreeMap::new();
        for (id, c) in coeffs {
            let e = out.entry(owners[id]).or_default();
            crate::linalg::add_scaled(e, &parts[id], &c);
        }
        out.retain(|_, v| !v.is_empty());
        Ok(out)
    }

    /// Summands meeting the weight of `φ(v_{λ+γ})`, grouped by Casimir eigenvalue, each group
    /// flagged by whether the image has a nonzero projection onto it.
    pub fn casimir_groups(&mut self, gamma: &[i64]) -> Result<Vec<(Vec<usize>, bool)>> {
        let (w, wt) = self.image(gamma)?;
        let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for i in 0..self.nus.len() {
            let hw = self.shifted(&self.nus[i]);
            if dominance_leq(&wt, &hw) {
                groups.entry(casimir_value(&hw)).or_default().push(i);
            }
        }
        let mut out = Vec::new();
        for (&c, members) in &groups {
            let mut v = w.clone();
            for &other in groups.keys().filter(|&&o| o != c) {
                let mut next = casimir(&self.amb, &v);
                crate::linalg::add_scaled(&mut next, &v, &q(-other));
                v = next;
            }
            out.push((members.clone(), !v.is_empty()));
        }
        Ok(out)
    }

    /// Indices into `nus` of the nonzero components of `φ(X,Y,γ,·)`.
    pub fn components(&mut self, gamma: &[i64]) -> Result<BTreeSet<usize>> {
        let (w, wt) = self.image(gamma)?;
        Ok(self.decompose(&w, &wt)?.into_keys().collect())
    }
}

/// Eigenvalue of `Σ E_ab E_ba` on `L(μ)`.
pub fn casimir_value(mu: &[i64]) -> i64 {
    let n = mu.len() as i64;
    mu.iter().enumerate().map(|(i, &m)| m * (m + n - 1 - 2 * i as i64)).sum()
}

fn casimir(amb: &Ambient, v: &Vector) -> Vector {
    let mut out = Vector::new();
    for a in 0..amb.n {
        for b in 0..amb.n {
            let u = amb.act(a, b, &amb.act(b, a, v));
            crate::linalg::add_scaled(&mut out, &u, &q(1));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionEntry {
    pub gamma: Vec<i64>,
    pub nu: Vec<i64>,
    pub exact: bool,
}

pub fn transition_table(cfg: &TransitionConfig, bounds: SizeBounds) -> Result<Vec<TransitionEntry>> {
    let mut oracle = TransitionOracle::new(cfg, bounds)?;
    let mut out = Vec::new();
    for gamma in oracle.gammas.clone() {
        let comps = oracle.components(&gamma)?;
        for (idx, nu) in oracle.nus.iter().enumerate() {
            out.push(TransitionEntry { gamma: gamma.clone(), nu: nu.clone(), exact: comps.contains(&idx) });
        }
    }
    Ok(out)
}

pub fn transition_nonzero_exact(
    cfg: &TransitionConfig,
    bounds: SizeBounds,
    gamma: &[i64],
    nu: &[i64],
) -> Result<bool> {
    let mut oracle = TransitionOracle::new(cfg, bounds)?;
    if !oracle.gammas.iter().any(|g| g == gamma) {
        return Err(OracleError::PreconditionFailed(format!("{gamma:?} is not a Pieri element for X")));
    }
    let idx = oracle
        .nus
        .iter()
        .position(|n| n == nu)
        .ok_or_else(|| OracleError::PreconditionFailed(format!("{nu:?} is not a Pieri element for Y")))?;
    Ok(oracle.components(gamma)?.contains(&idx))
}

/// Coefficients `w_{λ+γ−η}` of `v_{λ+γ} = Σ_η w_{λ+γ−η} ⊗ e_η` for `L(λ) ⊗ F` over `gl(n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HwSupport {
    pub lambda: Vec<i64>,
    pub kind: FKind,
    pub d: u32,
    pub gamma: Vec<i64>,
    /// `(η, w ≠ 0, γ ⪯ η)` for every `η ∈ supp F`.
    pub rows: Vec<(Vec<i64>, bool, bool)>,
}

impl HwSupport {
    /// Nonzero exactly on the interval between `γ` and the top weight of `F`.
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|(_, nonzero, above)| nonzero == above)
    }
}

fn full_setup(lambda: &[i64], kind: FKind, d: u32, bounds: SizeBounds) -> Result<(Ambient, Generator, Vec<(u32, Vec<i64>)>)> {
    let amb = Ambient::for_weight(lambda, kind.into(), bounds)?;
    let order: Vec<usize> = (0..amb.n).collect();
    let gen = Generator::new(Vector::from([(amb.hw_l_key(), q(1))]), amb.raw_lambda(), order.clone());
    let fb = amb.f_basis(kind, d, &order);
    Ok((amb, gen, fb))
}

fn split_by_f(v: &Vector) -> BTreeMap<u32, Vector> {
    let mut out: BTreeMap<u32, Vector> = BTreeMap::new();
    for (&k, c) in v {
        out.entry(Ambient::f_part(k)).or_default().insert(Ambient::l_part(k), c.clone());
    }
    out
}

pub fn hw_support(lambda: &[i64], kind: FKind, d: u32, gamma: &[i64], bounds: SizeBounds) -> Result<HwSupport> {
    if !pieri_finite(lambda, kind, d).iter().any(|g| g == gamma) {
        return Err(OracleError::PreconditionFailed(format!("{gamma:?} is not a Pieri element")));
    }
    let (amb, mut gen, fb) = full_setup(lambda, kind, d, bounds)?;
    let order: Vec<usize> = (0..amb.n).collect();
    let wt: Vec<i64> = amb.raw_lambda().iter().zip(gamma).map(|(a, b)| a + b).collect();
    let v = hw_vector(&amb, &mut gen, &fb, &order, &wt, Ambient::join(amb.hw_l_key(), amb.f_key(gamma)))?;
    let parts = split_by_f(&v);
    let rows = f_support(kind, amb.n, d)
        .into_iter()
        .map(|eta| {
            let nonzero = parts.get(&amb.f_key(&eta)).is_some_and(|w| !w.is_empty());
            let above = dominance_leq(gamma, &eta);
            (eta, nonzero, above)
        })
        .collect();
    Ok(HwSupport { lambda: lambda.to_vec(), kind, d, gamma: gamma.to_vec(), rows })
}

/// For `gl(2)`, `F = V` and `γ = ε₂`: the scalar `a₁` with `v_{λ+γ} = v_λ ⊗ e₂ + a₁ E₂₁v_λ ⊗ e₁`.
pub fn gl2_first_coefficient(l1: i64, l2: i64, bounds: SizeBounds) -> Result<Q> {
    if l1 <= l2 {
        return Err(OracleError::PreconditionFailed("needs λ₁ > λ₂".into()));
    }
    let (amb, mut gen, fb) = full_setup(&[l1, l2], FKind::Sym, 1, bounds)?;
    let gamma = [0, 1];
    let raw = amb.raw_lambda();
    let wt = [raw[0], raw[1] + 1];
    let hw = amb.hw_l_key();
    let v = hw_vector(&amb, &mut gen, &fb, &[0, 1], &wt, Ambient::join(hw, amb.f_key(&gamma)))?;
    let parts = split_by_f(&v);
    let w1 = parts.get(&amb.f_key(&[1, 0])).cloned().unwrap_or_default();
    let lowered = amb.act(1, 0, &Vector::from([(hw, q(1))]));
    let (&k, u) = lowered.iter().next().ok_or(OracleError::Internal("E₂₁ v_λ vanishes".into()))?;
    let a1 = w1.get(&k).cloned().unwrap_or_else(|| q(0)) / u;
    if scale(&lowered, &a1) != w1 {
        return Err(OracleError::Internal("e₁-component is not a multiple of E₂₁ v_λ".into()));
    }
    Ok(a1)
}
