//! Structural conclusions for `L(λ) ⊗ F`: constituents, linkage, layers, length and Loewy data.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fmodule::{dual_reduction, is_b_highest_weight, FModuleSpec, Kind, Setup};
use crate::pieri::{
    dominance_leq, ggcurly, linf_extrema, linf_rank, pieri_enumerate, reference_element, PieriElement,
    Window,
};
use crate::profile::{Extent, WeightProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decomposability {
    Semisimple,
    Indecomposable,
    UniformNoSocle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoewyLength {
    Fin(u64),
    Infinite,
    UndefinedNoSocle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationLayer {
    pub rank: i64,
    pub members: Vec<PieriElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StructureReport {
    pub module: FModuleSpec,
    pub window: Window,
    pub reference: PieriElement,
    pub constituents_window: Vec<PieriElement>,
    pub length_class: Extent,
    pub decomposability: Decomposability,
    pub has_socle: bool,
    pub linf_has_min: bool,
    pub radical_separated: bool,
    pub loewy_length: LoewyLength,
    /// `None` when rigidity is not determined.
    pub rigid: Option<bool>,
    pub linf_cardinality: Extent,
    /// `-1` when labels belong to the negated profile of a dual module.
    pub weight_sign: i8,
    pub notes: Vec<String>,
}

pub fn constituents(setup: &Setup, window: &Window) -> Result<Vec<PieriElement>> {
    setup.require_supported()?;
    Ok(pieri_enumerate(setup, window))
}

pub fn linked(setup: &Setup, nu: &PieriElement, gamma: &PieriElement) -> Result<bool> {
    setup.require_supported()?;
    Ok(ggcurly(setup, nu, gamma))
}

pub fn module_length(setup: &Setup) -> Result<Extent> {
    setup.require_supported()?;
    let p = &setup.profile;
    if p.has_tails() {
        return Ok(Extent::Omega);
    }
    if setup.kind == Kind::Fock {
        let body = &p.raw().body;
        let two_infinite = body.iter().enumerate().any(|(i, c)| {
            c.shape.a_size() == Extent::Omega
                && body.iter().enumerate().any(|(j, o)| j != i && o.shape.b_size() == Extent::Omega)
        });
        if two_infinite {
            return Ok(Extent::Omega);
        }
    }
    let w = Window { depth: 0, max_swaps: 0 };
    Ok(Extent::Fin(pieri_enumerate(setup, &w).len() as u64))
}

pub fn decomposability(setup: &Setup) -> Result<Decomposability> {
    let ext = linf_extrema(setup)?;
    Ok(if !is_b_highest_weight(setup) {
        Decomposability::UniformNoSocle
    } else if ext.cardinality == Extent::Fin(1) {
        Decomposability::Semisimple
    } else {
        Decomposability::Indecomposable
    })
}

pub fn filtration_layers(setup: &Setup, window: &Window) -> Result<Vec<FiltrationLayer>> {
    let elems = constituents(setup, window)?;
    let reference = reference_element(setup)?;
    let mut layers: BTreeMap<i64, Vec<PieriElement>> = BTreeMap::new();
    for e in elems {
        layers.entry(linf_rank(setup, &reference, &e)).or_default().push(e);
    }
    Ok(layers
        .into_iter()
        .map(|(rank, members)| FiltrationLayer { rank, members })
        .collect())
}

pub fn structure_report(setup: &Setup) -> Result<StructureReport> {
    structure_report_in(setup, &Window::default_for(setup))
}

pub fn structure_report_in(setup: &Setup, window: &Window) -> Result<StructureReport> {
    setup.require_supported()?;
    let ext = linf_extrema(setup)?;
    let has_socle = is_b_highest_weight(setup);
    let mut notes = Vec::new();
    let loewy_length = match (has_socle, ext.cardinality) {
        (_, Extent::Omega) => LoewyLength::Infinite,
        (true, Extent::Fin(k)) => LoewyLength::Fin(k - 1),
        (false, Extent::Fin(_)) => {
            notes.push("no socle: Loewy length left undefined although L∞ is finite".into());
            LoewyLength::UndefinedNoSocle
        }
    };
    if !has_socle {
        notes.push("ranks are relative to the first element of the default window".into());
    }
    if has_socle != ext.has_min {
        notes.push(format!(
            "socle exists: {has_socle}; L∞ has a minimum: {} (reported independently)",
            ext.has_min
        ));
    }
    Ok(StructureReport {
        module: setup.spec(),
        window: *window,
        reference: reference_element(setup)?,
        constituents_window: pieri_enumerate(setup, window),
        length_class: module_length(setup)?,
        decomposability: decomposability(setup)?,
        has_socle,
        linf_has_min: ext.has_min,
        radical_separated: ext.has_max,
        loewy_length,
        rigid: matches!(loewy_length, LoewyLength::Fin(_)).then_some(true),
        linf_cardinality: ext.cardinality,
        weight_sign: 1,
        notes,
    })
}

/// Report for a dual module: computed on the negated profile, labels carry sign −1.
pub fn analyze_dual(raw: &WeightProfile, spec: FModuleSpec) -> Result<StructureReport> {
    let (profile, primal) = dual_reduction(raw, spec)?;
    let setup = Setup::new(profile, primal)?;
    let mut report = structure_report(&setup)?;
    report.module = spec;
    report.weight_sign = -1;
    report.notes.push(format!("computed for {primal} on the negated profile"));
    Ok(report)
}

/// Hasse diagram of `(window, ⪯)` with nodes coloured by L∞ rank.
pub fn hasse_dot(setup: &Setup, window: &Window) -> Result<String> {
    let elems = constituents(setup, window)?;
    let reference = reference_element(setup)?;
    let n = elems.len();
    let below: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && dominance_leq(setup, &elems[j], &elems[i])).collect())
        .collect();
    const PALETTE: [&str; 6] = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462"];
    let mut out = String::from("digraph pieri {\n  rankdir=TB;\n  node [style=filled, shape=box];\n");
    for (i, e) in elems.iter().enumerate() {
        let rank = linf_rank(setup, &reference, e);
        let colour = PALETTE[rank.rem_euclid(PALETTE.len() as i64) as usize];
        let _ = writeln!(out, "  n{i} [label=\"{e}\\nrank {rank}\", fillcolor=\"{colour}\"];");
    }
    for i in 0..n {
        for j in 0..n {
            // cover relation: j ⋖ i
            if below[i][j] && !(0..n).any(|k| below[i][k] && below[k][j]) {
                let _ = writeln!(out, "  n{i} -> n{j};");
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::profile::fixtures::*;
    use crate::profile::{validate_profile, ClassKey, Profile};
    use ClassKey::{Body, Right};

    fn setup(p: Profile, m: FModuleSpec) -> Setup {
        Setup::new(p, m).unwrap()
    }

    #[test]
    fn constituents_examples() {
        let w = Window::new(3);
        assert_eq!(constituents(&setup(p_tm(), FModuleSpec::Sym(1)), &w).unwrap().len(), 3);
        assert!(matches!(
            constituents(&setup(p_nonex(), FModuleSpec::Fock), &w),
            Err(Error::UnsupportedHypothesis(_))
        ));
        let f = constituents(&setup(p_fock1(), FModuleSpec::Fock), &w).unwrap();
        assert_eq!(f.len(), 7);
    }

    #[test]
    fn linked_examples() {
        let s = setup(p_tm(), FModuleSpec::Sym(1));
        let b = |k| PieriElement::counts([(k, 1)]);
        assert_eq!(linked(&s, &b(Body(0)), &b(Body(2))), Ok(true));
        assert_eq!(linked(&s, &b(Body(2)), &b(Body(0))), Ok(false));
        assert_eq!(linked(&s, &b(Body(1)), &b(Body(1))), Ok(true));
    }

    #[test]
    fn length_examples() {
        assert_eq!(module_length(&setup(p_tm(), FModuleSpec::Sym(1))), Ok(Extent::Fin(3)));
        assert_eq!(module_length(&setup(p_stair(), FModuleSpec::Sym(2))), Ok(Extent::Omega));
        assert_eq!(module_length(&setup(p_ft(), FModuleSpec::Fock)), Ok(Extent::Fin(4)));
        assert_eq!(module_length(&setup(p_fock1(), FModuleSpec::Fock)), Ok(Extent::Omega));
    }

    #[test]
    fn decomposability_examples() {
        assert_eq!(decomposability(&setup(p_pos(), FModuleSpec::Sym(2))), Ok(Decomposability::Semisimple));
        assert_eq!(decomposability(&setup(p_tm(), FModuleSpec::Sym(1))), Ok(Decomposability::Indecomposable));
        assert_eq!(
            decomposability(&setup(p_dstair(), FModuleSpec::Ext(2))),
            Ok(Decomposability::UniformNoSocle)
        );
    }

    #[test]
    fn layer_examples() {
        let s = setup(p_stair(), FModuleSpec::Sym(2));
        let layers = filtration_layers(&s, &Window::new(3)).unwrap();
        assert_eq!(layers[0].rank, 0);
        assert_eq!(layers[0].members, vec![PieriElement::counts([(Right(1), 2)])]);
        let s = setup(p_fock1(), FModuleSpec::Fock);
        let layers = filtration_layers(&s, &Window::new(3)).unwrap();
        assert!(layers.iter().all(|l| l.members.len() == 1));
        assert!(layers.windows(2).all(|w| w[1].rank == w[0].rank + 1));
        // layers keep growing with the window
        let s = setup(p_dstair(), FModuleSpec::Sym(2));
        let probe = PieriElement::counts([(ClassKey::Left(1), 1), (Right(1), 1)]);
        let sizes: Vec<usize> = [3, 5]
            .iter()
            .map(|&d| {
                let layers = filtration_layers(&s, &Window::new(d)).unwrap();
                layers.iter().find(|l| l.members.contains(&probe)).unwrap().members.len()
            })
            .collect();
        assert!(sizes[0] > 1 && sizes[1] > sizes[0], "{sizes:?}");
    }

    #[test]
    fn report_examples() {
        let r = structure_report(&setup(p_tm(), FModuleSpec::Sym(1))).unwrap();
        assert_eq!(r.loewy_length, LoewyLength::Fin(1));
        assert_eq!(r.rigid, Some(true));
        let r = structure_report(&setup(p_ft(), FModuleSpec::Fock)).unwrap();
        assert_eq!(r.linf_cardinality, Extent::Fin(3));
        assert!(r.has_socle && r.radical_separated);
        let r = structure_report(&setup(p_stair(), FModuleSpec::Sym(2))).unwrap();
        assert!(r.has_socle && !r.radical_separated);
        assert_eq!(r.loewy_length, LoewyLength::Infinite);
        assert_eq!(r.rigid, None);
        assert!(structure_report(&setup(p_nonex(), FModuleSpec::Fock)).is_err());
    }

    #[test]
    fn dual_reports() {
        let mirror = WeightProfile::from_body(vec![(-1, plain(1)), (0, plain_w()), (1, plain(1))]);
        let r = analyze_dual(&mirror, FModuleSpec::SymDual(1)).unwrap();
        let direct = structure_report(&setup(p_tm(), FModuleSpec::Sym(1))).unwrap();
        assert_eq!(r.weight_sign, -1);
        assert_eq!(r.constituents_window, direct.constituents_window);
        assert_eq!(r.loewy_length, direct.loewy_length);
        let zero = WeightProfile::from_body(vec![(0, plain_w())]);
        let r = analyze_dual(&zero, FModuleSpec::ExtDual(1)).unwrap();
        assert_eq!(r.decomposability, Decomposability::Semisimple);
        assert!(matches!(
            analyze_dual(p_tm().raw(), FModuleSpec::SymDual(1)),
            Err(Error::NotDualizable(_))
        ));
    }

    #[test]
    fn report_invariants() {
        let profiles = [
            (p_tm(), FModuleSpec::Sym(2)),
            (p_tm(), FModuleSpec::Ext(2)),
            (p_pos(), FModuleSpec::Sym(2)),
            (p_stair(), FModuleSpec::Sym(1)),
            (p_dstair(), FModuleSpec::Ext(1)),
            (p_ft(), FModuleSpec::Fock),
            (p_fock1(), FModuleSpec::Fock),
        ];
        for (p, m) in profiles {
            let s = setup(p, m);
            let r = structure_report(&s).unwrap();
            assert_eq!(
                r.decomposability == Decomposability::Semisimple,
                r.has_socle && r.linf_cardinality == Extent::Fin(1)
            );
            assert_eq!(r.decomposability == Decomposability::UniformNoSocle, !r.has_socle);
            let layers = filtration_layers(&s, &Window::new(3)).unwrap();
            let layer_of = |e: &PieriElement| layers.iter().find(|l| l.members.contains(e)).unwrap().rank;
            let elems: Vec<_> = layers.iter().flat_map(|l| l.members.clone()).collect();
            for n in &elems {
                for g in &elems {
                    if ggcurly(&s, n, g) {
                        assert!(layer_of(n) <= layer_of(g));
                    }
                    if r.decomposability == Decomposability::Semisimple && n != g {
                        assert!(!ggcurly(&s, n, g));
                    }
                }
            }
            if let Extent::Fin(k) = r.length_class {
                let a = pieri_enumerate(&s, &Window::new(4)).len() as u64;
                let b = pieri_enumerate(&s, &Window::new(5)).len() as u64;
                assert_eq!((a, b), (k, k));
            }
        }
    }

    #[test]
    fn dot_for_tm() {
        let s = setup(p_tm(), FModuleSpec::Sym(1));
        let dot = hasse_dot(&s, &Window::new(0)).unwrap();
        assert_eq!(dot.matches("[label=").count(), 3);
        assert_eq!(dot.matches("->").count(), 2);
        let single = validate_profile(WeightProfile::from_body(vec![(0, plain_w())])).unwrap();
        let dot = hasse_dot(&setup(single, FModuleSpec::Sym(1)), &Window::new(0)).unwrap();
        assert_eq!(dot.matches("->").count(), 0);
    }
}
