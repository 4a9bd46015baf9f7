use glinf_core::profile::fixtures::*;
use glinf_core::*;

fn report(p: Profile, m: FModuleSpec) -> StructureReport {
    structure_report(&Setup::new(p, m).unwrap()).unwrap()
}

#[test]
fn golden_reports() {
    let tm = report(p_tm(), FModuleSpec::Sym(1));
    assert_eq!(tm.loewy_length, LoewyLength::Fin(1));
    assert_eq!(tm.decomposability, Decomposability::Indecomposable);
    assert_eq!(tm.linf_cardinality, Extent::Fin(2));
    assert_eq!(tm.rigid, Some(true));

    for d in 1..=3 {
        let pos = report(p_pos(), FModuleSpec::Sym(d));
        assert_eq!(pos.decomposability, Decomposability::Semisimple);
        let stair = report(p_stair(), FModuleSpec::Ext(d));
        assert_eq!(stair.loewy_length, LoewyLength::Infinite);
        assert!(stair.has_socle);
    }

    let ds = report(p_dstair(), FModuleSpec::Sym(1));
    assert_eq!(ds.decomposability, Decomposability::UniformNoSocle);
    assert!(!ds.has_socle && !ds.radical_separated);

    let ft = report(p_ft(), FModuleSpec::Fock);
    assert_eq!(ft.linf_cardinality, Extent::Fin(3));
    assert!(ft.has_socle && ft.radical_separated);

    assert!(matches!(
        structure_report(&Setup::new(p_nonex(), FModuleSpec::Fock).unwrap()),
        Err(Error::UnsupportedHypothesis(_))
    ));
}

#[test]
fn reports_round_trip_through_json() {
    for (p, m) in [
        (p_tm(), FModuleSpec::Ext(1)),
        (p_stair(), FModuleSpec::Sym(2)),
        (p_fock1(), FModuleSpec::Fock),
        (p_ft(), FModuleSpec::Fock),
    ] {
        let r = report(p, m);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"loewyLength\"") && s.contains("\"constituentsWindow\""));
        assert_eq!(serde_json::from_str::<StructureReport>(&s).unwrap(), r);
    }
}

#[test]
fn profiles_round_trip_and_revalidate() {
    for p in [p_tm(), p_pos(), p_stair(), p_dstair(), p_ft(), p_nonex(), p_fock1()] {
        let s = serde_json::to_string(p.raw()).unwrap();
        let raw: WeightProfile = serde_json::from_str(&s).unwrap();
        assert_eq!(&raw, p.raw());
        let back: Profile = serde_json::from_str(&s).unwrap();
        assert_eq!(back.raw(), p.raw());
    }
}

#[test]
fn malformed_profiles_are_rejected() {
    let bad = [
        r#"{"body":[{"value":0,"shape":{"plain":1}},{"value":0,"shape":{"plain":1}}]}"#,
        r#"{"body":[{"value":0,"shape":{"plain":0}}]}"#,
        r#"{"body":[]}"#,
    ];
    for s in bad {
        assert!(serde_json::from_str::<Profile>(s).is_err(), "{s}");
    }
    assert!(serde_json::from_str::<FModuleSpec>(r#"{"kind":"sym","d":0}"#).is_err());
    assert!(serde_json::from_str::<FModuleSpec>(r#"{"kind":"fock","d":1}"#).is_err());
}

#[test]
fn dual_analysis_matches_primal() {
    for d in 1..=2 {
        let primal = report(p_tm(), FModuleSpec::Sym(d));
        let (raw, spec) = dual_lift(&p_tm(), FModuleSpec::Sym(d)).unwrap();
        let dual = analyze_dual(&raw, spec).unwrap();
        assert_eq!(dual.weight_sign, -1);
        assert_eq!(dual.loewy_length, primal.loewy_length);
        assert_eq!(dual.constituents_window, primal.constituents_window);
    }
}

#[test]
fn layers_partition_the_window() {
    let setup = Setup::new(p_stair(), FModuleSpec::Sym(2)).unwrap();
    let w = Window::new(4);
    let layers = filtration_layers(&setup, &w).unwrap();
    let total: usize = layers.iter().map(|l| l.members.len()).sum();
    assert_eq!(total, constituents(&setup, &w).unwrap().len());
    assert!(layers.windows(2).all(|p| p[0].rank < p[1].rank));
}
