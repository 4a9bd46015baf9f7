//! Exhaustions of the index set by finite blocks, the predicted transition maps of each step
//! and reachability along composed steps.

use std::collections::{BTreeMap, BTreeSet};

use glinf_core::{h, h_inf, ClassKey, DeltaVector, Extent, Kind, Part, PieriElement, Position, Profile, Setup};
use serde::{Deserialize, Serialize};

use crate::{OracleError, Result};

/// A finite block, stored as the number of A- and B-elements taken from each class. Plain
/// classes only use the B count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block(pub BTreeMap<ClassKey, (u64, u64)>);

impl Block {
    pub fn classes(&self) -> Vec<ClassKey> {
        self.0.keys().copied().collect()
    }

    pub fn get(&self, j: ClassKey) -> (u64, u64) {
        self.0.get(&j).copied().unwrap_or((0, 0))
    }

    pub fn len(&self) -> u64 {
        self.0.values().map(|(a, b)| a + b).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn a_count(&self) -> u64 {
        self.0.values().map(|p| p.0).sum()
    }

    pub fn b_count(&self) -> u64 {
        self.0.values().map(|p| p.1).sum()
    }

    /// The elements of `X ∩ j` in increasing order.
    pub fn class_positions(&self, j: ClassKey) -> Vec<Position> {
        let (ka, kb) = self.get(j);
        let a = (1..=ka).rev().map(|o| Position::new(j, Part::A, o));
        a.chain((1..=kb).map(|o| Position::new(j, Part::B, o))).collect()
    }

    pub fn positions(&self) -> Vec<Position> {
        self.0.keys().flat_map(|&j| self.class_positions(j)).collect()
    }

    /// Inverse of `positions`; fails unless every part is an initial run of offsets.
    pub fn from_positions(ps: &[Position]) -> Result<Block> {
        let mut seen: BTreeMap<(ClassKey, Part), BTreeSet<u64>> = BTreeMap::new();
        for p in ps {
            if !seen.entry((p.class, p.part)).or_default().insert(p.offset) {
                return Err(OracleError::NotAStep(format!("{p} repeated")));
            }
        }
        let mut out = BTreeMap::new();
        for ((j, part), offs) in seen {
            let k = offs.len() as u64;
            if offs.iter().next_back() != Some(&k) {
                return Err(OracleError::NotAStep(format!("{j} {part:?}-part is not a segment")));
            }
            let e: &mut (u64, u64) = out.entry(j).or_default();
            match part {
                Part::A => e.0 = k,
                Part::B => e.1 = k,
            }
        }
        Ok(Block(out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteWeight {
    pub index: Vec<Position>,
    pub coords: Vec<i64>,
}

impl FiniteWeight {
    pub fn zero(index: Vec<Position>) -> Self {
        let coords = vec![0; index.len()];
        FiniteWeight { index, coords }
    }

    pub fn from_sparse(index: Vec<Position>, sparse: &BTreeMap<Position, i64>) -> Self {
        let coords = index.iter().map(|p| sparse.get(p).copied().unwrap_or(0)).collect();
        FiniteWeight { index, coords }
    }

    pub fn sparse(&self) -> BTreeMap<Position, i64> {
        self.index.iter().copied().zip(self.coords.iter().copied()).filter(|(_, c)| *c != 0).collect()
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    DStep,
    AStep,
    BStep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustionStep {
    pub kind: StepKind,
    pub class: ClassKey,
    pub x: Vec<Position>,
    pub y: Vec<Position>,
    pub z: Vec<Position>,
    pub x_minus: Vec<Position>,
    pub x_plus: Vec<Position>,
    pub x_block: Block,
    pub y_block: Block,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side3 {
    Minus,
    Z,
    Plus,
}

impl ExhaustionStep {
    fn z_part(&self) -> Part {
        if self.kind == StepKind::AStep {
            Part::A
        } else {
            Part::B
        }
    }

    pub fn side(&self, p: &Position) -> Side3 {
        let (ka, kb) = self.x_block.get(p.class);
        let known = match p.part {
            Part::A => p.offset <= ka,
            Part::B => p.offset <= kb,
        };
        if p.class == self.class && p.part == self.z_part() && !known {
            return Side3::Z;
        }
        let minus = match self.kind {
            StepKind::AStep => p.class < self.class,
            _ => p.class <= self.class,
        };
        if minus {
            Side3::Minus
        } else {
            Side3::Plus
        }
    }

    /// `ν̄ − γ̄` on positions of `Y`.
    pub fn diff(&self, gamma: &BTreeMap<Position, i64>, nu: &BTreeMap<Position, i64>) -> BTreeMap<Position, i64> {
        let mut out = nu.clone();
        for (p, c) in gamma {
            *out.entry(*p).or_insert(0) -= c;
        }
        if self.kind == StepKind::AStep {
            for p in &self.z {
                *out.entry(*p).or_insert(0) -= 1;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

fn class_delta(diff: &BTreeMap<Position, i64>) -> DeltaVector {
    let mut v = DeltaVector::new();
    for (p, c) in diff {
        v.add_at(p.class, *c);
    }
    v
}

/// `I ⊂ s_i` and `J ⊂ s_j`.
fn splits(step: &ExhaustionStep, diff: &BTreeMap<Position, i64>, s_i: &[Side3], s_j: &[Side3]) -> bool {
    diff.iter().all(|(p, &c)| {
        let s = step.side(p);
        (c <= 0 || s_i.contains(&s)) && (c >= 0 || s_j.contains(&s))
    })
}

fn predicted_sparse(step: &ExhaustionStep, gamma: &BTreeMap<Position, i64>, nu: &BTreeMap<Position, i64>) -> bool {
    use Side3::*;
    let diff = step.diff(gamma, nu);
    match step.kind {
        StepKind::DStep | StepKind::BStep => {
            if step.x_plus.is_empty() {
                diff.is_empty()
            } else if step.x_minus.is_empty() {
                splits(step, &diff, &[Z], &[Plus])
            } else {
                splits(step, &diff, &[Minus], &[Plus])
            }
        }
        StepKind::AStep => {
            if step.x_minus.is_empty() {
                diff.is_empty()
            } else if step.x_plus.is_empty() {
                splits(step, &diff, &[Minus], &[Z])
            } else {
                splits(step, &diff, &[Minus], &[Z, Plus])
            }
        }
    }
}

pub fn step_nonzero_predicted(step: &ExhaustionStep, gamma: &FiniteWeight, nu: &FiniteWeight) -> bool {
    predicted_sparse(step, &gamma.sparse(), &nu.sparse())
}

/// `(h(ν̄,γ̄), h∞(ν̄,γ̄))` for one step.
pub fn step_h_pair(profile: &Profile, step: &ExhaustionStep, gamma: &FiniteWeight, nu: &FiniteWeight) -> Result<(i64, i64)> {
    let delta = class_delta(&step.diff(&gamma.sparse(), &nu.sparse()));
    Ok((h(profile, &delta)?, h_inf(profile, &delta)?))
}

fn part_size(profile: &Profile, j: ClassKey, part: Part) -> Result<Extent> {
    let s = profile.shape(j)?;
    Ok(match part {
        Part::A => s.a_size(),
        Part::B => s.b_size(),
    })
}

/// Block predicate. For Fock modules a finite class may be taken one part at a time.
pub fn is_block(profile: &Profile, kind: Kind, b: &Block) -> Result<bool> {
    if b.is_empty() {
        return Ok(false);
    }
    let units: Vec<(ClassKey, Part)> = b
        .0
        .iter()
        .flat_map(|(&j, &(ka, kb))| {
            let mut u = Vec::new();
            if ka > 0 {
                u.push((j, Part::A));
            }
            if kb > 0 {
                u.push((j, Part::B));
            }
            u
        })
        .collect();
    for &(j, part) in &units {
        let size = part_size(profile, j, part)?;
        let k = if part == Part::A { b.get(j).0 } else { b.get(j).1 };
        if !size.contains(k) {
            return Ok(false);
        }
        match kind {
            Kind::Sym(d) | Kind::Ext(d) => {
                if part == Part::A {
                    return Ok(false);
                }
                if size.is_finite() && size.finite() != Some(k) || !size.is_finite() && k < d as u64 {
                    return Ok(false);
                }
            }
            Kind::Fock => {
                if size.is_finite() && size.finite() != Some(k) {
                    return Ok(false);
                }
            }
        }
    }
    // the touched units must be an interval of the unit order
    let (first, last) = (units[0], *units.last().expect("nonempty"));
    let mut u = first;
    while u != last {
        u = match next_unit(profile, kind, u)? {
            Some(n) => n,
            None => return Ok(false),
        };
        if !units.contains(&u) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn unit_nonempty(profile: &Profile, j: ClassKey, part: Part) -> Result<bool> {
    Ok(!part_size(profile, j, part)?.is_zero())
}

/// Units are classes (part B) for Sym/Ext and nonempty class parts, A before B, for Fock.
fn next_unit(profile: &Profile, kind: Kind, (j, part): (ClassKey, Part)) -> Result<Option<(ClassKey, Part)>> {
    if kind == Kind::Fock && part == Part::A && unit_nonempty(profile, j, Part::B)? {
        return Ok(Some((j, Part::B)));
    }
    let Some(n) = profile.succ(j) else { return Ok(None) };
    if kind == Kind::Fock && unit_nonempty(profile, n, Part::A)? {
        Ok(Some((n, Part::A)))
    } else {
        Ok(Some((n, Part::B)))
    }
}

fn prev_unit(profile: &Profile, kind: Kind, (j, part): (ClassKey, Part)) -> Result<Option<(ClassKey, Part)>> {
    if kind == Kind::Fock && part == Part::B && unit_nonempty(profile, j, Part::A)? {
        return Ok(Some((j, Part::A)));
    }
    let Some(p) = profile.pred(j) else { return Ok(None) };
    if kind != Kind::Fock || unit_nonempty(profile, p, Part::B)? {
        Ok(Some((p, Part::B)))
    } else {
        Ok(Some((p, Part::A)))
    }
}

fn start_unit(profile: &Profile, kind: Kind) -> Result<(ClassKey, Part)> {
    let j = profile
        .first_class()
        .or_else(|| profile.key_at(0))
        .or_else(|| profile.key_at(-1))
        .ok_or(OracleError::Core(glinf_core::Error::EmptyProfile))?;
    if kind == Kind::Fock && unit_nonempty(profile, j, Part::A)? {
        Ok((j, Part::A))
    } else {
        Ok((j, Part::B))
    }
}

/// Adds the next chunk of a unit. Returns false when nothing changes.
fn grow(profile: &Profile, kind: Kind, x: &mut Block, (j, part): (ClassKey, Part)) -> Result<bool> {
    let size = part_size(profile, j, part)?;
    let (ka, kb) = x.get(j);
    let have = if part == Part::A { ka } else { kb };
    let target = match size {
        Extent::Fin(k) => k,
        Extent::Omega => {
            have + match kind {
                Kind::Sym(d) | Kind::Ext(d) => d as u64,
                Kind::Fock if part == Part::A => x.b_count().max(1),
                Kind::Fock => x.a_count().max(1),
            }
        }
    };
    if target == have {
        return Ok(false);
    }
    let e = x.0.entry(j).or_default();
    if part == Part::A {
        e.0 = target;
    } else {
        e.1 = target;
    }
    Ok(true)
}

/// The fair schedule: a start unit, then rounds that add one new unit on the right, one on the
/// left, and revisit every unit present before the round from left to right.
fn schedule(profile: &Profile, kind: Kind, levels: usize) -> Result<Vec<Block>> {
    let start = start_unit(profile, kind)?;
    let mut x = Block::default();
    grow(profile, kind, &mut x, start)?;
    let mut out = vec![x.clone()];
    let (mut lo, mut hi) = (start, start);
    while out.len() < levels {
        let mut present = vec![lo];
        while *present.last().expect("nonempty") != hi {
            let u = next_unit(profile, kind, *present.last().expect("nonempty"))?.expect("interval");
            present.push(u);
        }
        let mut order = Vec::new();
        if let Some(r) = next_unit(profile, kind, hi)? {
            hi = r;
            order.push(r);
        }
        if let Some(l) = prev_unit(profile, kind, lo)? {
            lo = l;
            order.push(l);
        }
        let mut changed = false;
        for u in order.into_iter().chain(present) {
            if out.len() >= levels {
                break;
            }
            if grow(profile, kind, &mut x, u)? {
                out.push(x.clone());
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(out)
}

pub fn step_classify(x: &[Position], y: &[Position], profile: &Profile, kind: Kind) -> Result<ExhaustionStep> {
    let xb = Block::from_positions(x)?;
    let yb = Block::from_positions(y)?;
    for (name, b) in [("X", &xb), ("Y", &yb)] {
        if !is_block(profile, kind, b)? {
            return Err(OracleError::NotAStep(format!("{name} is not a block")));
        }
    }
    let xs: BTreeSet<Position> = x.iter().copied().collect();
    if !xs.iter().all(|p| y.contains(p)) {
        return Err(OracleError::NotAStep("X is not contained in Y".into()));
    }
    let mut z: Vec<Position> = y.iter().filter(|p| !xs.contains(p)).copied().collect();
    z.sort();
    let Some(first) = z.first().copied() else {
        return Err(OracleError::NotAStep("Y equals X".into()));
    };
    if z.iter().any(|p| p.class != first.class) {
        return Err(OracleError::NotAStep("Y ∖ X meets two classes".into()));
    }
    let j = first.class;
    let infinite = |part| part_size(profile, j, part).map(|s| !s.is_finite());
    let step_kind = match kind {
        Kind::Sym(d) | Kind::Ext(d) => {
            if profile.shape(j)?.is_infinite() && (z.len() as u64) < d as u64 {
                return Err(OracleError::NotAStep(format!("#Z = {} is smaller than d = {d}", z.len())));
            }
            StepKind::DStep
        }
        Kind::Fock => {
            let part = first.part;
            if z.iter().any(|p| p.part != part) {
                return Err(OracleError::NotAStep("Y ∖ X meets both parts of a class".into()));
            }
            let need = if part == Part::A { xb.b_count() } else { xb.a_count() };
            if infinite(part)? && (z.len() as u64) < need {
                return Err(OracleError::NotAStep(format!("#Z = {} is smaller than {need}", z.len())));
            }
            if part == Part::A {
                StepKind::AStep
            } else {
                StepKind::BStep
            }
        }
    };
    let mut step = ExhaustionStep {
        kind: step_kind,
        class: j,
        x: xb.positions(),
        y: yb.positions(),
        z,
        x_minus: Vec::new(),
        x_plus: Vec::new(),
        x_block: xb,
        y_block: yb,
    };
    let (minus, plus): (Vec<Position>, Vec<Position>) =
        step.x.iter().partition(|p| step.side(p) == Side3::Minus);
    step.x_minus = minus;
    step.x_plus = plus;
    Ok(step)
}

fn steps_of(profile: &Profile, kind: Kind, levels: &[Block]) -> Result<Vec<ExhaustionStep>> {
    levels
        .windows(2)
        .map(|w| step_classify(&w[0].positions(), &w[1].positions(), profile, kind))
        .collect()
}

pub fn build_d_exhaustion(profile: &Profile, d: u32, steps: usize) -> Result<Vec<ExhaustionStep>> {
    if !profile.all_classes_plain() {
        return Err(OracleError::PreconditionFailed("d-exhaustions need plain classes".into()));
    }
    steps_of(profile, Kind::Sym(d), &schedule(profile, Kind::Sym(d), steps + 1)?)
}

pub fn build_ab_exhaustion(profile: &Profile, steps: usize) -> Result<Vec<ExhaustionStep>> {
    if !profile.all_classes_split() {
        return Err(OracleError::PreconditionFailed("(A,B)-exhaustions need split classes".into()));
    }
    steps_of(profile, Kind::Fock, &schedule(profile, Kind::Fock, steps + 1)?)
}

/// Per-class box counts on a block; for Fock the count is `#(supp γ ∩ j)` with `γ ∈ supp Λ^{#(X∩A)} V_X`.
pub type Counts = BTreeMap<ClassKey, u64>;

/// An exhaustion together with the module, giving Pieri sets at every level.
pub struct Exhaustion {
    pub setup: Setup,
    pub levels: Vec<Block>,
    pub steps: Vec<ExhaustionStep>,
}

impl Exhaustion {
    /// `levels` finite blocks `X_1 ⊂ … ⊂ X_levels` (fewer if the index set is finite).
    pub fn new(setup: &Setup, levels: usize) -> Result<Exhaustion> {
        setup.require_supported()?;
        let kind = setup.kind;
        let blocks = schedule(&setup.profile, kind, levels.max(1))?;
        let steps = steps_of(&setup.profile, kind, &blocks)?;
        Ok(Exhaustion { setup: setup.clone(), levels: blocks, steps })
    }

    /// Block `X_n`, one-based; levels past the end repeat the last block.
    pub fn level(&self, n: usize) -> &Block {
        &self.levels[(n.max(1) - 1).min(self.levels.len() - 1)]
    }

    fn degree(&self, b: &Block) -> u64 {
        match self.setup.kind {
            Kind::Sym(d) | Kind::Ext(d) => d as u64,
            Kind::Fock => b.a_count(),
        }
    }

    /// Finite Pieri set of `X_n` as class counts.
    pub fn pieri(&self, n: usize) -> Result<Vec<Counts>> {
        let b = self.level(n);
        let classes = b.classes();
        let mut caps = Vec::new();
        for (k, &j) in classes.iter().enumerate() {
            let (ka, kb) = b.get(j);
            caps.push(match self.setup.kind {
                Kind::Sym(d) if k == 0 => d as u64,
                Kind::Sym(_) => {
                    let gap = self.setup.profile.value(classes[k - 1])? - self.setup.profile.value(j)?;
                    gap as u64
                }
                _ => ka + kb,
            });
        }
        let mut out = Vec::new();
        let mut cur = vec![0u64; classes.len()];
        compositions(&caps, self.degree(b), 0, &mut cur, &mut |c| {
            out.push(classes.iter().copied().zip(c.iter().copied()).filter(|x| x.1 > 0).collect())
        });
        Ok(out)
    }

    /// Position-level weight of class counts on `X_n`.
    pub fn weight(&self, n: usize, counts: &Counts) -> BTreeMap<Position, i64> {
        let b = self.level(n);
        let mut out = BTreeMap::new();
        for (&j, &c) in counts {
            let ps = b.class_positions(j);
            match self.setup.kind {
                Kind::Sym(_) => {
                    if c > 0 {
                        out.insert(ps[0], c as i64);
                    }
                }
                _ => {
                    for p in ps.into_iter().take(c as usize) {
                        out.insert(p, 1);
                    }
                }
            }
        }
        out
    }

    pub fn finite_weight(&self, n: usize, counts: &Counts) -> FiniteWeight {
        FiniteWeight::from_sparse(self.level(n).positions(), &self.weight(n, counts))
    }

    /// The restriction of a Pieri element to `X_n`, if its support lies in `X_n`.
    pub fn restrict(&self, n: usize, e: &PieriElement) -> Option<Counts> {
        let b = self.level(n);
        let mut out = Counts::new();
        match e {
            PieriElement::Counts(m) => {
                for (&j, &c) in m {
                    let (ka, kb) = b.get(j);
                    let fits = match self.setup.kind {
                        Kind::Sym(_) => ka + kb > 0,
                        _ => c <= ka + kb,
                    };
                    if !fits {
                        return None;
                    }
                    out.insert(j, c);
                }
            }
            PieriElement::Swaps(m) => {
                for (&j, &(r, s)) in m {
                    let (ka, kb) = b.get(j);
                    if r > ka || s > kb {
                        return None;
                    }
                }
                for (&j, &(ka, _)) in &b.0 {
                    let (r, s) = m.get(&j).copied().unwrap_or((0, 0));
                    out.insert(j, ka - r + s);
                }
                out.retain(|_, c| *c > 0);
            }
        }
        Some(out)
    }

    /// The element of the infinite Pieri set obtained by extending class counts on `X_n`.
    pub fn lift(&self, n: usize, counts: &Counts) -> PieriElement {
        let b = self.level(n);
        match self.setup.kind {
            Kind::Fock => PieriElement::swaps(b.0.iter().map(|(&j, &(ka, _))| {
                let c = counts.get(&j).copied().unwrap_or(0);
                (j, (ka.saturating_sub(c), c.saturating_sub(ka)))
            })),
            _ => PieriElement::counts(counts.iter().map(|(&j, &c)| (j, c))),
        }
    }

    /// `step_predicted` on weights already computed with `weight`.
    pub fn step_predicted_weights(&self, t: usize, gamma: &BTreeMap<Position, i64>, nu: &BTreeMap<Position, i64>) -> bool {
        predicted_sparse(&self.steps[t - 1], gamma, nu)
    }

    pub fn step_predicted(&self, t: usize, gamma: &Counts, nu: &Counts) -> bool {
        predicted_sparse(&self.steps[t - 1], &self.weight(t, gamma), &self.weight(t + 1, nu))
    }

    /// Class-level `ν̄ − γ̄` across step `t` (from `X_t` to `X_{t+1}`).
    pub fn step_delta(&self, t: usize, gamma: &Counts, nu: &Counts) -> DeltaVector {
        class_delta(&self.steps[t - 1].diff(&self.weight(t, gamma), &self.weight(t + 1, nu)))
    }

    /// Elements of `P(X_m)` reachable from `γ ∈ P(X_n)` along predicted-nonzero steps.
    pub fn reachable(&self, n: usize, m: usize, gamma: &Counts) -> Result<BTreeSet<Counts>> {
        let mut cur = BTreeSet::from([gamma.clone()]);
        for t in n..m {
            if t > self.steps.len() {
                break;
            }
            let targets = self.pieri(t + 1)?;
            cur = targets
                .into_iter()
                .filter(|nu| cur.iter().any(|g| self.step_predicted(t, g, nu)))
                .collect();
        }
        Ok(cur)
    }

    pub fn path_nonzero(&self, n: usize, m: usize, gamma: &Counts, nu: &Counts) -> Result<bool> {
        if n > m {
            return Err(OracleError::PreconditionFailed(format!("n = {n} exceeds m = {m}")));
        }
        Ok(self.reachable(n, m, gamma)?.contains(nu))
    }
}

fn compositions(caps: &[u64], left: u64, k: usize, cur: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if k == caps.len() {
        if left == 0 {
            f(cur);
        }
        return;
    }
    let room: u64 = caps[k + 1..].iter().sum();
    let lo = left.saturating_sub(room);
    for c in lo..=caps[k].min(left) {
        cur[k] = c;
        compositions(caps, left - c, k + 1, cur, f);
    }
    cur[k] = 0;
}

/// Prefix sums along `order` are all non-negative and the total vanishes.
pub fn positions_dominance_geq0(order: &[Position], v: &BTreeMap<Position, i64>) -> bool {
    let mut s = 0;
    for p in order {
        s += v.get(p).copied().unwrap_or(0);
        if s < 0 {
            return false;
        }
    }
    s == 0
}

/// A `τ` for the approximation property: `φ(σ,τ) ≠ 0` predicted, `ν − τ ⪯ γ − σ`,
/// `I′ ⊂ X⁻`, `J′ ⊂ Z ⊔ X⁺`. Searches all of `P(X_{t+1})`.
pub fn approximation_witness(ex: &Exhaustion, t: usize, gamma: &Counts, sigma: &Counts, nu: &Counts) -> Result<Option<Counts>> {
    let step = &ex.steps[t - 1];
    let (g, s, n) = (ex.weight(t, gamma), ex.weight(t, sigma), ex.weight(t + 1, nu));
    let mut gs = g.clone();
    for (p, c) in &s {
        *gs.entry(*p).or_insert(0) -= c;
    }
    gs.retain(|_, c| *c != 0);
    if !positions_dominance_geq0(&step.x, &gs) {
        return Err(OracleError::PreconditionFailed("γ − σ is not ⪰ 0".into()));
    }
    if !predicted_sparse(step, &g, &n) {
        return Err(OracleError::PreconditionFailed("φ(γ,ν) is predicted zero".into()));
    }
    for tau in ex.pieri(t + 1)? {
        let tw = ex.weight(t + 1, &tau);
        if !predicted_sparse(step, &s, &tw) {
            continue;
        }
        let mut nt = n.clone();
        for (p, c) in &tw {
            *nt.entry(*p).or_insert(0) -= c;
        }
        nt.retain(|_, c| *c != 0);
        let sides_ok = nt.iter().all(|(p, &c)| {
            let side = step.side(p);
            (c <= 0 || side == Side3::Minus) && (c >= 0 || side != Side3::Minus)
        });
        let mut slack = gs.clone();
        for (p, c) in &nt {
            *slack.entry(*p).or_insert(0) -= c;
        }
        if sides_ok && positions_dominance_geq0(&step.y, &slack) {
            return Ok(Some(tau));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use glinf_core::profile::fixtures::{p_ft, p_stair, p_tm};
    use glinf_core::{FModuleSpec, Window};

    fn pos(j: ClassKey, o: u64) -> Position {
        Position::new(j, Part::B, o)
    }

    #[test]
    fn stair_transcript() {
        let steps = build_d_exhaustion(&p_stair(), 1, 3).unwrap();
        let r = ClassKey::Right;
        assert_eq!(steps[0].x, vec![pos(r(1), 1)]);
        assert_eq!(steps[0].y, vec![pos(r(1), 1), pos(r(2), 1)]);
        assert_eq!(steps[1].y, vec![pos(r(1), 1), pos(r(1), 2), pos(r(2), 1)]);
        assert_eq!(steps[1].z, vec![pos(r(1), 2)]);
        for s in &steps {
            let again = step_classify(&s.x, &s.y, &p_stair(), Kind::Sym(1)).unwrap();
            assert_eq!(again.kind, StepKind::DStep);
        }
    }

    #[test]
    fn classify_rejects_two_classes() {
        let b = ClassKey::Body;
        let x = vec![pos(b(0), 1), pos(b(1), 1)];
        let y = vec![pos(b(0), 1), pos(b(1), 1), pos(b(1), 2), pos(b(2), 1)];
        assert!(matches!(step_classify(&x, &y, &p_tm(), Kind::Sym(1)), Err(OracleError::NotAStep(_))));
    }

    #[test]
    fn fock_steps_alternate_sides() {
        let steps = build_ab_exhaustion(&p_ft(), 4).unwrap();
        let mid: Vec<StepKind> = steps.iter().filter(|s| s.class == ClassKey::Body(1)).map(|s| s.kind).collect();
        assert!(mid.contains(&StepKind::AStep) && mid.contains(&StepKind::BStep));
        let b_step = steps.iter().find(|s| s.kind == StepKind::BStep).unwrap();
        let again = step_classify(&b_step.x, &b_step.y, &p_ft(), Kind::Fock).unwrap();
        assert_eq!(again.kind, StepKind::BStep);
    }

    #[test]
    fn tm_paths_follow_linkage() {
        let setup = Setup::new(p_tm(), FModuleSpec::Sym(1)).unwrap();
        let ex = Exhaustion::new(&setup, 12).unwrap();
        let b = ClassKey::Body;
        let at = |j| Counts::from([(j, 1)]);
        assert!(ex.path_nonzero(3, 12, &at(b(2)), &at(b(0))).unwrap());
        assert!(ex.path_nonzero(3, 12, &at(b(2)), &at(b(2))).unwrap());
        assert!(!ex.path_nonzero(3, 12, &at(b(0)), &at(b(2))).unwrap());
        assert!(!ex.path_nonzero(3, 12, &at(b(1)), &at(b(0))).unwrap());
    }

    #[test]
    fn restrict_and_lift_round_trip() {
        let setup = Setup::new(p_ft(), FModuleSpec::Fock).unwrap();
        let ex = Exhaustion::new(&setup, 6).unwrap();
        let n = ex.levels.len();
        for e in glinf_core::pieri_enumerate(&setup, &Window::new(2)) {
            if let Some(c) = ex.restrict(n, &e) {
                assert_eq!(ex.lift(n, &c), e);
                assert!(ex.pieri(n).unwrap().contains(&c));
            }
        }
    }

    #[test]
    fn stationary_witness() {
        let setup = Setup::new(p_tm(), FModuleSpec::Sym(1)).unwrap();
        let ex = Exhaustion::new(&setup, 6).unwrap();
        let b = ClassKey::Body;
        let t = ex.steps.iter().position(|s| !s.x_minus.is_empty() && !s.x_plus.is_empty()).unwrap() + 1;
        let g = Counts::from([(b(2), 1)]);
        let nu = Counts::from([(b(0), 1)]);
        assert!(ex.step_predicted(t, &g, &nu));
        assert_eq!(approximation_witness(&ex, t, &g, &g, &nu).unwrap(), Some(nu.clone()));
        let sigma = Counts::from([(b(2), 1)]);
        let hi = Counts::from([(b(1), 1)]);
        if ex.step_predicted(t, &hi, &nu) {
            let w = approximation_witness(&ex, t, &hi, &sigma, &nu).unwrap();
            assert!(w.is_some());
        }
    }
}
