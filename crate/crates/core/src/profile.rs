//! Finite presentations of an ordered index set carrying a dominant weight.
//!
//! A profile lists the classes of equal weight value from left to right: an
//! optional left tail (generated outward), a finite body and an optional right
//! tail. The within-class order is fixed by the class shape, so the profile is
//! already a compatible order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extent {
    Fin(u64),
    Omega,
}

impl Extent {
    pub fn is_finite(self) -> bool {
        matches!(self, Extent::Fin(_))
    }

    pub fn is_zero(self) -> bool {
        self == Extent::Fin(0)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Extent::Fin(k) => Some(k),
            Extent::Omega => None,
        }
    }

    /// `min(self, k)` as a plain integer.
    pub fn cap(self, k: u64) -> u64 {
        match self {
            Extent::Fin(n) => n.min(k),
            Extent::Omega => k,
        }
    }

    pub fn contains(self, k: u64) -> bool {
        match self {
            Extent::Fin(n) => k <= n,
            Extent::Omega => true,
        }
    }
}

impl std::ops::Add for Extent {
    type Output = Extent;
    fn add(self, rhs: Extent) -> Extent {
        match (self, rhs) {
            (Extent::Fin(a), Extent::Fin(b)) => Extent::Fin(a + b),
            _ => Extent::Omega,
        }
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Fin(k) => write!(f, "{k}"),
            Extent::Omega => f.write_str("omega"),
        }
    }
}

impl Serialize for Extent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extent::Fin(k) => s.serialize_u64(*k),
            Extent::Omega => s.serialize_str("omega"),
        }
    }
}

impl<'de> Deserialize<'de> for Extent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(u64),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Count(k) => Ok(Extent::Fin(k)),
            Raw::Word(w) if w == "omega" => Ok(Extent::Omega),
            Raw::Word(w) => Err(serde::de::Error::custom(format!(
                "expected a count or \"omega\", got {w:?}"
            ))),
        }
    }
}

/// Plain classes order like a subset of Z>0 and count as pure B-parts.
/// Split classes put an A-part ordered like Z<0 before a B-part ordered like Z>0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassShape {
    Plain(Extent),
    Split(Extent, Extent),
}

impl ClassShape {
    pub fn a_size(self) -> Extent {
        match self {
            ClassShape::Plain(_) => Extent::Fin(0),
            ClassShape::Split(a, _) => a,
        }
    }

    pub fn b_size(self) -> Extent {
        match self {
            ClassShape::Plain(s) => s,
            ClassShape::Split(_, b) => b,
        }
    }

    pub fn size(self) -> Extent {
        self.a_size() + self.b_size()
    }

    pub fn is_split(self) -> bool {
        matches!(self, ClassShape::Split(..))
    }

    pub fn is_empty(self) -> bool {
        self.size().is_zero()
    }

    pub fn is_infinite(self) -> bool {
        !self.size().is_finite()
    }

    pub fn terminal_finite(self) -> bool {
        self.b_size().is_finite()
    }

    pub fn initial_finite(self) -> bool {
        self.a_size().is_finite()
    }
}

/// Adjacent classes `left`, `right` share a run iff the stretch between them is finite.
pub fn merges(left: ClassShape, right: ClassShape) -> bool {
    left.terminal_finite() && right.initial_finite()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassSpec {
    pub value: i64,
    pub shape: ClassShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TailSpec {
    pub start: i64,
    pub step: i64,
    pub shapes: Vec<ClassShape>,
}

impl TailSpec {
    /// Class at outward ordinal `n >= 1`.
    pub fn class(&self, n: u64) -> ClassSpec {
        let idx = ((n - 1) % self.shapes.len() as u64) as usize;
        ClassSpec {
            value: self.start + (n as i64 - 1) * self.step,
            shape: self.shapes[idx],
        }
    }

    pub fn period(&self) -> u64 {
        self.shapes.len() as u64
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightProfile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_tail: Option<TailSpec>,
    #[serde(default)]
    pub body: Vec<ClassSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_tail: Option<TailSpec>,
}

impl WeightProfile {
    pub fn from_body(body: Vec<(i64, ClassShape)>) -> Self {
        WeightProfile {
            left_tail: None,
            body: body
                .into_iter()
                .map(|(value, shape)| ClassSpec { value, shape })
                .collect(),
            right_tail: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKey {
    Left(u64),
    Body(usize),
    Right(u64),
}

impl ClassKey {
    fn order_key(self) -> (u8, i64) {
        match self {
            ClassKey::Left(n) => (0, -(n as i64)),
            ClassKey::Body(i) => (1, i as i64),
            ClassKey::Right(n) => (2, n as i64),
        }
    }
}

impl Ord for ClassKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for ClassKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKey::Left(n) => write!(f, "L{n}"),
            ClassKey::Body(i) => write!(f, "B{i}"),
            ClassKey::Right(n) => write!(f, "R{n}"),
        }
    }
}

impl FromStr for ClassKey {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("bad class key {s:?} (expected L<n>, B<i> or R<n>)");
        let (tag, num) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let n: u64 = num.parse().map_err(|_| bad())?;
        match tag {
            "L" if n >= 1 => Ok(ClassKey::Left(n)),
            "B" => Ok(ClassKey::Body(n as usize)),
            "R" if n >= 1 => Ok(ClassKey::Right(n)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for ClassKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClassKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Part {
    A,
    B,
}

/// A single index. A-offset 1 is the largest element of the A-part,
/// B-offset 1 the smallest element of the B-part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Position {
    pub class: ClassKey,
    pub part: Part,
    pub offset: u64,
}

impl Position {
    pub fn new(class: ClassKey, part: Part, offset: u64) -> Self {
        Position { class, part, offset }
    }

    fn order_key(&self) -> (ClassKey, Part, i64) {
        let o = self.offset as i64;
        (self.class, self.part, if self.part == Part::A { -o } else { o })
    }
}

impl Ord for Position {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Position {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = if self.part == Part::A { 'a' } else { 'b' };
        write!(f, "{}.{}{}", self.class, p, self.offset)
    }
}

/// Finitely supported integer vector on classes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DeltaVector(pub BTreeMap<ClassKey, i64>);

impl DeltaVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(key: ClassKey) -> Self {
        let mut v = Self::new();
        v.add_at(key, 1);
        v
    }

    /// `δ_j − δ_j'`
    pub fn root(j: ClassKey, jp: ClassKey) -> Self {
        let mut v = Self::unit(j);
        v.add_at(jp, -1);
        v
    }

    pub fn add_at(&mut self, key: ClassKey, by: i64) {
        let e = self.0.entry(key).or_insert(0);
        *e += by;
        if *e == 0 {
            self.0.remove(&key);
        }
    }

    pub fn sum(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, key: ClassKey) -> i64 {
        self.0.get(&key).copied().unwrap_or(0)
    }

    pub fn plus(&self, other: &DeltaVector) -> DeltaVector {
        let mut v = self.clone();
        for (&k, &x) in &other.0 {
            v.add_at(k, x);
        }
        v
    }

    pub fn minus(&self, other: &DeltaVector) -> DeltaVector {
        let mut v = self.clone();
        for (&k, &x) in &other.0 {
            v.add_at(k, -x);
        }
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = (ClassKey, i64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Run {
    pub position: i64,
    pub classes: Vec<ClassKey>,
    /// The run continues past the listed window on that side.
    pub open_left: bool,
    pub open_right: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunTable {
    pub runs: Vec<Run>,
    /// There are infinitely many runs on that side.
    pub unbounded_left: bool,
    pub unbounded_right: bool,
}

/// A validated weight profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Profile {
    raw: WeightProfile,
}

impl<'de> Deserialize<'de> for Profile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = WeightProfile::deserialize(d)?;
        validate_profile(raw).map_err(serde::de::Error::custom)
    }
}

pub fn validate_profile(raw: WeightProfile) -> Result<Profile> {
    if raw.body.is_empty() && raw.left_tail.is_none() && raw.right_tail.is_none() {
        return Err(Error::EmptyProfile);
    }
    for (side, tail) in [(Side::Left, &raw.left_tail), (Side::Right, &raw.right_tail)] {
        let Some(t) = tail else { continue };
        if t.shapes.is_empty() {
            return Err(Error::EmptyTail(side));
        }
        let ok = match side {
            Side::Left => t.step >= 1,
            Side::Right => t.step <= -1,
        };
        if !ok {
            return Err(Error::BadTailStep(side, t.step));
        }
        for (k, s) in t.shapes.iter().enumerate() {
            if s.is_empty() {
                let key = match side {
                    Side::Left => ClassKey::Left(k as u64 + 1),
                    Side::Right => ClassKey::Right(k as u64 + 1),
                };
                return Err(Error::EmptyClass(format!("{key} (tail pattern entry {k})")));
            }
        }
    }
    for (i, c) in raw.body.iter().enumerate() {
        if c.shape.is_empty() {
            return Err(Error::EmptyClass(ClassKey::Body(i).to_string()));
        }
        if i > 0 && raw.body[i - 1].value <= c.value {
            return Err(Error::NonDecreasingValues(ClassKey::Body(i).to_string()));
        }
    }
    // junctions: left tail start > first body value > ... > right tail start
    let mut seam: Vec<(ClassKey, i64)> = Vec::new();
    if let Some(t) = &raw.left_tail {
        seam.push((ClassKey::Left(1), t.start));
    }
    if let (Some(f), Some(l)) = (raw.body.first(), raw.body.last()) {
        seam.push((ClassKey::Body(0), f.value));
        seam.push((ClassKey::Body(raw.body.len() - 1), l.value));
    }
    if let Some(t) = &raw.right_tail {
        seam.push((ClassKey::Right(1), t.start));
    }
    for w in seam.windows(2) {
        if w[0].0 != w[1].0 && w[0].1 <= w[1].1 {
            return Err(Error::NonDecreasingValues(w[1].0.to_string()));
        }
    }
    Ok(Profile { raw })
}

impl Profile {
    pub fn raw(&self) -> &WeightProfile {
        &self.raw
    }

    pub fn into_raw(self) -> WeightProfile {
        self.raw
    }

    pub fn body_len(&self) -> usize {
        self.raw.body.len()
    }

    pub fn tail(&self, side: Side) -> Option<&TailSpec> {
        match side {
            Side::Left => self.raw.left_tail.as_ref(),
            Side::Right => self.raw.right_tail.as_ref(),
        }
    }

    pub fn has_tails(&self) -> bool {
        self.raw.left_tail.is_some() || self.raw.right_tail.is_some()
    }

    pub fn class(&self, key: ClassKey) -> Result<ClassSpec> {
        let found = match key {
            ClassKey::Left(n) if n >= 1 => self.raw.left_tail.as_ref().map(|t| t.class(n)),
            ClassKey::Body(i) => self.raw.body.get(i).copied(),
            ClassKey::Right(n) if n >= 1 => self.raw.right_tail.as_ref().map(|t| t.class(n)),
            _ => None,
        };
        found.ok_or(Error::NoSuchClass(key))
    }

    pub fn contains(&self, key: ClassKey) -> bool {
        self.class(key).is_ok()
    }

    pub fn value(&self, key: ClassKey) -> Result<i64> {
        Ok(self.class(key)?.value)
    }

    pub fn shape(&self, key: ClassKey) -> Result<ClassShape> {
        Ok(self.class(key)?.shape)
    }

    pub fn class_position(&self, key: ClassKey) -> Result<i64> {
        self.class(key)?;
        Ok(match key {
            ClassKey::Left(n) => -(n as i64),
            ClassKey::Body(i) => i as i64,
            ClassKey::Right(n) => self.body_len() as i64 - 1 + n as i64,
        })
    }

    pub fn key_at(&self, pos: i64) -> Option<ClassKey> {
        let key = if pos < 0 {
            ClassKey::Left((-pos) as u64)
        } else if (pos as usize) < self.body_len() {
            ClassKey::Body(pos as usize)
        } else {
            ClassKey::Right((pos - self.body_len() as i64 + 1) as u64)
        };
        self.contains(key).then_some(key)
    }

    pub fn succ(&self, key: ClassKey) -> Option<ClassKey> {
        self.class_position(key).ok().and_then(|p| self.key_at(p + 1))
    }

    pub fn pred(&self, key: ClassKey) -> Option<ClassKey> {
        self.class_position(key).ok().and_then(|p| self.key_at(p - 1))
    }

    /// Minimum of J, if any.
    pub fn first_class(&self) -> Option<ClassKey> {
        if self.raw.left_tail.is_some() {
            return None;
        }
        self.key_at(0)
    }

    /// Maximum of J, if any.
    pub fn last_class(&self) -> Option<ClassKey> {
        if self.raw.right_tail.is_some() {
            return None;
        }
        self.key_at(self.body_len() as i64 - 1)
            .or_else(|| self.raw.left_tail.as_ref().map(|_| ClassKey::Left(1)))
    }

    /// Classes of the body plus `depth` classes of each tail, left to right.
    pub fn window_keys(&self, depth: u64) -> Vec<ClassKey> {
        let mut keys = Vec::new();
        if self.raw.left_tail.is_some() {
            keys.extend((1..=depth).rev().map(ClassKey::Left));
        }
        keys.extend((0..self.body_len()).map(ClassKey::Body));
        if self.raw.right_tail.is_some() {
            keys.extend((1..=depth).map(ClassKey::Right));
        }
        keys
    }

    pub fn all_classes_split(&self) -> bool {
        self.shapes_pattern().all(|s| s.is_split())
    }

    pub fn all_classes_plain(&self) -> bool {
        self.shapes_pattern().all(|s| !s.is_split())
    }

    /// Every distinct shape that occurs (body and tail patterns).
    pub fn shapes_pattern(&self) -> impl Iterator<Item = ClassShape> + '_ {
        let l = self.raw.left_tail.iter().flat_map(|t| t.shapes.iter().copied());
        let r = self.raw.right_tail.iter().flat_map(|t| t.shapes.iter().copied());
        self.raw.body.iter().map(|c| c.shape).chain(l).chain(r)
    }

    /// Depth that exposes every periodic phenomenon of the tails at least twice.
    pub fn symbolic_depth(&self) -> u64 {
        let p = [Side::Left, Side::Right]
            .iter()
            .filter_map(|&s| self.tail(s).map(TailSpec::period))
            .max()
            .unwrap_or(1);
        3 * p + 2
    }

    /// Whether `key` and its successor lie in one J∞-run.
    pub fn merges_with_next(&self, key: ClassKey) -> bool {
        match (self.shape(key), self.succ(key)) {
            (Ok(s), Some(n)) => merges(s, self.shape(n).expect("successor exists")),
            _ => false,
        }
    }

    /// Every adjacent pair inside the tail merges, so the tail ends in a single run.
    pub fn tail_collapses(&self, side: Side) -> bool {
        let Some(t) = self.tail(side) else { return false };
        let p = t.shapes.len();
        (0..p).all(|k| {
            let (inner, outer) = (t.shapes[k], t.shapes[(k + 1) % p]);
            match side {
                Side::Right => merges(inner, outer),
                Side::Left => merges(outer, inner),
            }
        })
    }

    /// The tail contributes infinitely many runs.
    pub fn tail_unbounded(&self, side: Side) -> bool {
        self.tail(side).is_some() && !self.tail_collapses(side)
    }

    fn boundary_after(&self, pos: i64) -> bool {
        match self.key_at(pos) {
            Some(k) => self.key_at(pos + 1).is_some() && !self.merges_with_next(k),
            None => false,
        }
    }

    pub fn jinf_position(&self, key: ClassKey) -> Result<i64> {
        let p = self.class_position(key)?;
        Ok(if p >= 0 {
            (0..p).filter(|&q| self.boundary_after(q)).count() as i64
        } else {
            -((p..0).filter(|&q| self.boundary_after(q)).count() as i64)
        })
    }

    /// Runs meeting the window of the given tail depth.
    pub fn jinf_runs(&self, depth: u64) -> RunTable {
        let keys = self.window_keys(depth);
        let mut runs: Vec<Run> = Vec::new();
        for (idx, &k) in keys.iter().enumerate() {
            let joins = idx > 0 && self.merges_with_next(keys[idx - 1]);
            if joins {
                runs.last_mut().expect("previous run").classes.push(k);
            } else {
                runs.push(Run {
                    position: self.jinf_position(k).expect("window key"),
                    classes: vec![k],
                    open_left: false,
                    open_right: false,
                });
            }
        }
        if let Some(first) = runs.first_mut() {
            let k = first.classes[0];
            first.open_left = self.pred(k).is_some_and(|p| self.merges_with_next(p));
        }
        if let Some(last) = runs.last_mut() {
            let k = *last.classes.last().expect("nonempty run");
            last.open_right = self.merges_with_next(k);
        }
        RunTable {
            runs,
            unbounded_left: self.tail_unbounded(Side::Left),
            unbounded_right: self.tail_unbounded(Side::Right),
        }
    }

    /// J∞ has a first run.
    pub fn runs_bounded_below(&self) -> bool {
        !self.tail_unbounded(Side::Left)
    }

    /// J∞ has a last run.
    pub fn runs_bounded_above(&self) -> bool {
        !self.tail_unbounded(Side::Right)
    }

    /// A is J∞-initial: no run has a B-element before an A-element of a later class.
    pub fn is_jinf_initial(&self) -> Result<bool> {
        if !self.all_classes_split() {
            return Err(Error::NotFockProfile);
        }
        let table = self.jinf_runs(self.symbolic_depth());
        for run in &table.runs {
            let mut seen_b = false;
            for &k in &run.classes {
                let s = self.shape(k)?;
                if seen_b && !s.a_size().is_zero() {
                    return Ok(false);
                }
                seen_b |= !s.b_size().is_zero();
            }
        }
        Ok(true)
    }
}

fn check_zero_sum(f: &DeltaVector) -> Result<()> {
    match f.sum() {
        0 => Ok(()),
        s => Err(Error::NonZeroSum(s)),
    }
}

/// `h(f) = −Σ f(j)·pos(j)`, so `h(δ_j − δ_j') = #⟦j,j'⟧ − 1` for `j ⪯ j'`.
pub fn h(profile: &Profile, f: &DeltaVector) -> Result<i64> {
    check_zero_sum(f)?;
    f.iter()
        .map(|(k, v)| Ok(-v * profile.class_position(k)?))
        .sum()
}

/// The same functional on the run quotient.
pub fn h_inf(profile: &Profile, f: &DeltaVector) -> Result<i64> {
    check_zero_sum(f)?;
    f.iter()
        .map(|(k, v)| Ok(-v * profile.jinf_position(k)?))
        .sum()
}

/// Named profiles used by tests, the acceptance suite and the CLI examples.
pub mod fixtures {
    use super::*;

    pub const OMEGA: Extent = Extent::Omega;

    pub fn plain(k: u64) -> ClassShape {
        ClassShape::Plain(Extent::Fin(k))
    }

    pub fn plain_w() -> ClassShape {
        ClassShape::Plain(OMEGA)
    }

    pub fn split(a: Extent, b: Extent) -> ClassShape {
        ClassShape::Split(a, b)
    }

    pub fn fin(k: u64) -> Extent {
        Extent::Fin(k)
    }

    pub fn p_tm() -> Profile {
        validate_profile(WeightProfile::from_body(vec![(1, plain(1)), (0, plain_w()), (-1, plain(1))]))
            .unwrap()
    }

    pub fn p_pos() -> Profile {
        validate_profile(WeightProfile::from_body(vec![(3, plain(1)), (1, plain(1)), (0, plain_w())]))
            .unwrap()
    }

    pub fn p_stair() -> Profile {
        validate_profile(WeightProfile {
            right_tail: Some(TailSpec { start: -1, step: -1, shapes: vec![plain_w()] }),
            ..Default::default()
        })
        .unwrap()
    }

    pub fn p_dstair() -> Profile {
        validate_profile(WeightProfile {
            left_tail: Some(TailSpec { start: 1, step: 1, shapes: vec![plain_w()] }),
            right_tail: Some(TailSpec { start: 0, step: -1, shapes: vec![plain_w()] }),
            ..Default::default()
        })
        .unwrap()
    }

    pub fn p_ft() -> Profile {
        validate_profile(WeightProfile::from_body(vec![
            (1, split(fin(1), fin(0))),
            (0, split(OMEGA, OMEGA)),
            (-1, split(fin(0), fin(1))),
        ]))
        .unwrap()
    }

    pub fn p_nonex() -> Profile {
        validate_profile(WeightProfile {
            right_tail: Some(TailSpec {
                start: -1,
                step: -1,
                shapes: vec![split(fin(0), fin(1)), split(fin(1), fin(0))],
            }),
            ..Default::default()
        })
        .unwrap()
    }

    pub fn p_fock1() -> Profile {
        validate_profile(WeightProfile::from_body(vec![
            (0, split(OMEGA, OMEGA)),
            (-1, split(OMEGA, OMEGA)),
        ]))
        .unwrap()
    }
}
