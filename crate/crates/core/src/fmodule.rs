//! The multiplicity-free module F and its relation to the profile's order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pieri::PieriElement;
use crate::profile::{
    validate_profile, ClassKey, ClassShape, Extent, Profile, Side, TailSpec, WeightProfile,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawModule", into = "RawModule")]
pub enum FModuleSpec {
    Sym(u32),
    Ext(u32),
    Fock,
    SymDual(u32),
    ExtDual(u32),
}

#[derive(Serialize, Deserialize)]
struct RawModule {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<u32>,
}

impl TryFrom<RawModule> for FModuleSpec {
    type Error = String;
    fn try_from(raw: RawModule) -> std::result::Result<Self, String> {
        let need_d = || match raw.d {
            Some(d) if d >= 1 => Ok(d),
            Some(_) => Err(format!("module {} needs d >= 1", raw.kind)),
            None => Err(format!("module {} needs a degree d", raw.kind)),
        };
        match raw.kind.as_str() {
            "sym" => Ok(FModuleSpec::Sym(need_d()?)),
            "ext" => Ok(FModuleSpec::Ext(need_d()?)),
            "sym_dual" => Ok(FModuleSpec::SymDual(need_d()?)),
            "ext_dual" => Ok(FModuleSpec::ExtDual(need_d()?)),
            "fock" if raw.d.is_none() => Ok(FModuleSpec::Fock),
            "fock" => Err("the fock module takes no degree".into()),
            other => Err(format!("unknown module kind {other:?}")),
        }
    }
}

impl From<FModuleSpec> for RawModule {
    fn from(m: FModuleSpec) -> RawModule {
        let (kind, d) = match m {
            FModuleSpec::Sym(d) => ("sym", Some(d)),
            FModuleSpec::Ext(d) => ("ext", Some(d)),
            FModuleSpec::Fock => ("fock", None),
            FModuleSpec::SymDual(d) => ("sym_dual", Some(d)),
            FModuleSpec::ExtDual(d) => ("ext_dual", Some(d)),
        };
        RawModule { kind: kind.into(), d }
    }
}

impl fmt::Display for FModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FModuleSpec::Sym(d) => write!(f, "S^{d}V"),
            FModuleSpec::Ext(d) => write!(f, "Λ^{d}V"),
            FModuleSpec::Fock => f.write_str("Λ^A V"),
            FModuleSpec::SymDual(d) => write!(f, "S^{d}V*"),
            FModuleSpec::ExtDual(d) => write!(f, "Λ^{d}V*"),
        }
    }
}

impl FModuleSpec {
    pub fn is_dual(self) -> bool {
        matches!(self, FModuleSpec::SymDual(_) | FModuleSpec::ExtDual(_))
    }

    pub fn degree(self) -> Option<u32> {
        match self {
            FModuleSpec::Sym(d)
            | FModuleSpec::Ext(d)
            | FModuleSpec::SymDual(d)
            | FModuleSpec::ExtDual(d) => Some(d),
            FModuleSpec::Fock => None,
        }
    }
}

/// Module kinds that analyses run on directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Sym(u32),
    Ext(u32),
    Fock,
}

fn total_size(profile: &Profile) -> Extent {
    if profile.has_tails() {
        return Extent::Omega;
    }
    profile
        .raw()
        .body
        .iter()
        .fold(Extent::Fin(0), |acc, c| acc + c.shape.size())
}

fn part_infinite(profile: &Profile, part: fn(ClassShape) -> Extent) -> bool {
    let body = profile.raw().body.iter().any(|c| part(c.shape) == Extent::Omega);
    let tails = [Side::Left, Side::Right].iter().any(|&s| {
        profile
            .tail(s)
            .is_some_and(|t| t.shapes.iter().any(|&sh| !part(sh).is_zero()))
    });
    body || tails
}

pub fn validate_module(profile: &Profile, spec: FModuleSpec) -> Result<()> {
    match spec {
        FModuleSpec::Fock => {
            if !profile.all_classes_split() {
                return Err(Error::ShapeMismatch("the fock module needs split classes".into()));
            }
            if !part_infinite(profile, ClassShape::a_size) {
                return Err(Error::ANotInfinite);
            }
            if !part_infinite(profile, ClassShape::b_size) {
                return Err(Error::BNotInfinite);
            }
            Ok(())
        }
        _ => {
            let d = spec.degree().expect("graded module");
            if !profile.all_classes_plain() {
                return Err(Error::ShapeMismatch(format!("{spec} needs plain classes")));
            }
            match total_size(profile) {
                Extent::Fin(n) if n < d as u64 => Err(Error::TooSmallForD { d, size: n }),
                _ if d == 0 => Err(Error::TooSmallForD { d, size: 0 }),
                _ => Ok(()),
            }
        }
    }
}

/// A validated (profile, F) pair with F one of the primal kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Setup {
    pub profile: Profile,
    pub kind: Kind,
}

impl Setup {
    pub fn new(profile: Profile, spec: FModuleSpec) -> Result<Setup> {
        validate_module(&profile, spec)?;
        let kind = match spec {
            FModuleSpec::Sym(d) => Kind::Sym(d),
            FModuleSpec::Ext(d) => Kind::Ext(d),
            FModuleSpec::Fock => Kind::Fock,
            _ => return Err(Error::DualNeedsReduction),
        };
        Ok(Setup { profile, kind })
    }

    pub fn spec(&self) -> FModuleSpec {
        match self.kind {
            Kind::Sym(d) => FModuleSpec::Sym(d),
            Kind::Ext(d) => FModuleSpec::Ext(d),
            Kind::Fock => FModuleSpec::Fock,
        }
    }

    pub fn degree(&self) -> u64 {
        match self.kind {
            Kind::Sym(d) | Kind::Ext(d) => d as u64,
            Kind::Fock => 0,
        }
    }

    /// Fock modules need J∞-initial A for every structural statement.
    pub fn require_supported(&self) -> Result<()> {
        if self.kind == Kind::Fock && !self.profile.is_jinf_initial()? {
            return Err(Error::UnsupportedHypothesis(
                "the A-set is not J∞-initial: constituents and linkage are not determined".into(),
            ));
        }
        Ok(())
    }
}

/// Last class carrying A-elements. Only meaningful when the right tail has none.
fn last_a_class(profile: &Profile) -> Option<ClassKey> {
    let body = (0..profile.body_len())
        .rev()
        .map(ClassKey::Body)
        .find(|&k| !profile.shape(k).expect("body key").a_size().is_zero());
    body.or_else(|| {
        let t = profile.tail(Side::Left)?;
        (1..=t.period())
            .map(ClassKey::Left)
            .find(|&k| !profile.shape(k).expect("tail key").a_size().is_zero())
    })
}

/// Number of B-elements strictly before the last A-element, when finite.
fn b_before_last_a(profile: &Profile) -> Option<(ClassKey, u64)> {
    let tail_has = |side, part: fn(ClassShape) -> Extent| {
        profile
            .tail(side)
            .is_some_and(|t: &TailSpec| t.shapes.iter().any(|&s| !part(s).is_zero()))
    };
    if tail_has(Side::Right, ClassShape::a_size) || tail_has(Side::Left, ClassShape::b_size) {
        return None;
    }
    let last = last_a_class(profile)?;
    let mut total = 0u64;
    let mut k = profile.pred(last);
    while let Some(key) = k {
        // left tail classes beyond this point carry no B
        if matches!(key, ClassKey::Left(_)) {
            break;
        }
        total += profile.shape(key).ok()?.b_size().finite()?;
        k = profile.pred(key);
    }
    Some((last, total))
}

pub fn is_b_highest_weight(setup: &Setup) -> bool {
    match setup.kind {
        Kind::Sym(_) | Kind::Ext(_) => setup.profile.tail(Side::Left).is_none(),
        Kind::Fock => b_before_last_a(&setup.profile).is_some(),
    }
}

pub fn highest_weight_element(setup: &Setup) -> Result<PieriElement> {
    if !is_b_highest_weight(setup) {
        return Err(Error::NotHighestWeight);
    }
    let p = &setup.profile;
    match setup.kind {
        Kind::Sym(d) => {
            let first = p.first_class().expect("no left tail");
            Ok(PieriElement::counts([(first, d as u64)]))
        }
        Kind::Ext(d) => {
            let mut left = d as u64;
            let mut counts = Vec::new();
            let mut k = p.first_class();
            while let (Some(key), true) = (k, left > 0) {
                let take = p.shape(key)?.size().cap(left);
                counts.push((key, take));
                left -= take;
                k = p.succ(key);
            }
            Ok(PieriElement::counts(counts))
        }
        Kind::Fock => {
            let (last, n_b) = b_before_last_a(p).expect("checked above");
            let mut swaps: BTreeMap<ClassKey, (u64, u64)> = BTreeMap::new();
            // every B-element before the last A-element enters the initial configuration
            let mut k = p.pred(last);
            while let Some(key) = k {
                if matches!(key, ClassKey::Left(_)) {
                    break;
                }
                let b = p.shape(key)?.b_size().finite().expect("finite");
                if b > 0 {
                    swaps.insert(key, (0, b));
                }
                k = p.pred(key);
            }
            // walk left from the end of the last A-part, passing n_b elements
            let mut pass = n_b;
            let mut key = last;
            let mut in_a = true;
            while pass > 0 {
                let shape = p.shape(key)?;
                if in_a {
                    let r = shape.a_size().cap(pass);
                    if r > 0 {
                        swaps.entry(key).or_insert((0, 0)).0 += r;
                    }
                    pass -= r;
                    if pass == 0 {
                        break;
                    }
                    key = p.pred(key).ok_or(Error::NotHighestWeight)?;
                    in_a = false;
                } else {
                    let b = shape.b_size().finite().expect("finite");
                    let passed = b.min(pass);
                    if let Some(e) = swaps.get_mut(&key) {
                        e.1 -= passed;
                    }
                    pass -= passed;
                    in_a = true;
                }
            }
            Ok(PieriElement::swaps(swaps))
        }
    }
}

fn negate(raw: &WeightProfile) -> WeightProfile {
    let neg_tail = |t: &TailSpec| TailSpec { start: -t.start, step: -t.step, shapes: t.shapes.clone() };
    WeightProfile {
        left_tail: raw.left_tail.as_ref().map(neg_tail),
        body: raw
            .body
            .iter()
            .map(|c| crate::profile::ClassSpec { value: -c.value, shape: c.shape })
            .collect(),
        right_tail: raw.right_tail.as_ref().map(neg_tail),
    }
}

/// Replaces a dual module on an increasing profile by the primal module on the negated profile.
pub fn dual_reduction(raw: &WeightProfile, spec: FModuleSpec) -> Result<(Profile, FModuleSpec)> {
    let primal = match spec {
        FModuleSpec::SymDual(d) => FModuleSpec::Sym(d),
        FModuleSpec::ExtDual(d) => FModuleSpec::Ext(d),
        other => return Err(Error::NotDualizable(format!("{other} is not a dual module"))),
    };
    let negated = validate_profile(negate(raw)).map_err(|e| match e {
        Error::NonDecreasingValues(at) => Error::NotDualizable(format!("values do not increase at {at}")),
        Error::BadTailStep(side, step) => {
            Error::NotDualizable(format!("{side} tail step {step} has the wrong sign"))
        }
        other => other,
    })?;
    validate_module(&negated, primal)?;
    Ok((negated, primal))
}

/// Inverse of [`dual_reduction`].
pub fn dual_lift(profile: &Profile, spec: FModuleSpec) -> Result<(WeightProfile, FModuleSpec)> {
    let dual = match spec {
        FModuleSpec::Sym(d) => FModuleSpec::SymDual(d),
        FModuleSpec::Ext(d) => FModuleSpec::ExtDual(d),
        other => return Err(Error::NotDualizable(format!("{other} has no dual here"))),
    };
    Ok((negate(profile.raw()), dual))
}
