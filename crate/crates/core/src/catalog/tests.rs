use std::sync::Arc;

use super::*;
use crate::rep::fixtures::*;
use crate::rep::{direct_sum, Arrow};

fn a2_catalog() -> Catalog {
    Catalog::from_builtin(&Builtin::A2, 2).unwrap()
}

fn sorted(labels: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn labels(cat: &Catalog, terms: &[ModuleId]) -> Vec<String> {
    let mut v: Vec<String> = terms.iter().map(|t| cat.id_label(t)).collect();
    v.sort();
    v
}

#[test]
fn a2_tables() {
    let cat = a2_catalog();
    assert_eq!(cat.names(), ["A", "B", "C"]);
    assert_eq!(cat.hom_dims(), [vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
    assert_eq!(cat.simples(), [0, 2]);
    assert_eq!(labels(&cat, cat.ext_middle_terms(0, 2)), sorted(&["A+C", "B"]));
    assert_eq!(labels(&cat, cat.ext_middle_terms(2, 0)), sorted(&["A+C"]));
    assert_eq!(labels(&cat, cat.ext_middle_terms(0, 0)), sorted(&["A^2"]));
    assert_eq!(labels(&cat, cat.ext_middle_terms(1, 2)), sorted(&["B+C"]));
    assert_eq!(cat.subquotient_support(1), 0b111);
    assert_eq!(cat.subquotient_support(0), 0b001);
}

#[test]
fn identify_sums() {
    let cat = a2_catalog();
    let (a, b, c) = (cat.indec(0).clone(), cat.indec(1).clone(), cat.indec(2).clone());
    let alg = cat.algebra().clone();
    let m = sum_of(&alg, &[&b, &a, &b, &c, &c, &c]);
    assert_eq!(cat.identify(&m).unwrap().counts(), [1, 2, 3]);
    // B ⊕ B written in a non-diagonal basis
    let twisted = rep(&alg, &[2, 2], &[vec![vec![1, 1], vec![0, 1]]]);
    assert_eq!(cat.identify(&twisted).unwrap().counts(), [0, 2, 0]);
    let rank_one = rep(&alg, &[2, 2], &[vec![vec![1, 1], vec![1, 1]]]);
    assert_eq!(cat.identify(&rank_one).unwrap().counts(), [1, 1, 1]);
    assert!(cat.identify(&Representation::zero(alg)).unwrap().is_zero());
}

fn sum_of(alg: &Arc<Algebra>, parts: &[&Representation]) -> Representation {
    crate::rep::sum_of(alg, parts).unwrap()
}

#[test]
fn identify_uniserial() {
    let cat = Catalog::from_builtin(&Builtin::Uniserial { n: 4 }, 3).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(cat.hom_dims()[i][j], (i + 1).min(j + 1));
        }
    }
    assert_eq!(cat.simples(), [0]);
    let alg = cat.algebra().clone();
    let m = sum_of(&alg, &[cat.indec(2), cat.indec(0), cat.indec(2)]);
    assert_eq!(cat.identify(&m).unwrap().counts(), [1, 0, 2, 0]);
    assert_eq!(cat.realize(&ModuleId::from_counts(vec![1, 0, 2, 0])).dims(), [7]);
    assert_eq!(cat.composition_factors(&m).unwrap().counts(), [7, 0, 0, 0]);
}

#[test]
fn incomplete_catalog_is_detected() {
    let (a, _, c) = a2_modules();
    let alg = a.algebra().clone();
    let err = Catalog::new(alg, vec!["A".into(), "C".into()], vec![a, c], Limits::default()).unwrap_err();
    assert!(matches!(err, Error::UnknownModule { .. }), "{err}");
}

#[test]
fn invalid_members_are_rejected() {
    let (a, b, c) = a2_modules();
    let alg = a.algebra().clone();
    let ac = direct_sum(&alg, &[&a, &c]).unwrap().sum;
    let err = Catalog::new(alg.clone(), vec!["AC".into()], vec![ac], Limits::default()).unwrap_err();
    assert!(matches!(err, Error::Decomposable(_)), "{err}");
    let bb = direct_sum(&alg, &[&b, &b]).unwrap().sum;
    let err = Catalog::new(alg.clone(), vec!["BB".into()], vec![bb], Limits::default()).unwrap_err();
    assert!(matches!(err, Error::Decomposable(_)), "{err}");
    let err = Catalog::new(alg.clone(), vec!["B".into(), "B2".into()], vec![b.clone(), b.clone()], Limits::default())
        .unwrap_err();
    assert!(matches!(err, Error::DuplicateIso(..)), "{err}");
    let err = Catalog::new(alg.clone(), vec![], vec![], Limits::default()).unwrap_err();
    assert!(matches!(err, Error::EmptyCatalog));
    let zero = Representation::zero(alg);
    let err = Catalog::new(zero.algebra().clone(), vec!["0".into()], vec![zero], Limits::default()).unwrap_err();
    assert!(matches!(err, Error::Decomposable(_)), "{err}");
}

#[test]
fn nonsplit_endomorphisms_are_rejected() {
    // two loops; x acts by the companion matrix of x^2 + x + 1, so End = F_4
    let alg = Arc::new(
        Algebra::new(
            2,
            vec!["0".into()],
            vec![
                Arrow {
                    name: "x".into(),
                    source: 0,
                    target: 0,
                },
                Arrow {
                    name: "y".into(),
                    source: 0,
                    target: 0,
                },
            ],
            vec![],
        )
        .unwrap(),
    );
    let m = rep(&alg, &[2], &[vec![vec![0, 1], vec![1, 1]], vec![vec![0, 0], vec![0, 0]]]);
    let err = Catalog::new(alg, vec!["F4".into()], vec![m], Limits::default()).unwrap_err();
    assert!(matches!(err, Error::NonSplitEndomorphisms(_)), "{err}");
}

#[test]
fn cohomologous_cocycles_give_isomorphic_middle_terms() {
    let cat = Catalog::from_builtin(&Builtin::Uniserial { n: 3 }, 2).unwrap();
    let (l, n) = (cat.indec(1), cat.indec(1));
    let space = ExtensionSpace::new(l, n).unwrap();
    assert_eq!(space.dim(), 1);
    let p = 2;
    let shapes: Vec<(usize, usize)> = vec![(2, 2)];
    for z in space.cocycles().vectors() {
        let base = cat.identify(&space.middle_term(&z).unwrap()).unwrap();
        for s in all_vectors(p, 4) {
            let s = vec![Matrix::from_fn(p, shapes[0].0, shapes[0].1, |r, c| s[r * 2 + c] as i64)];
            let d = space.coboundary(&s);
            assert!(space.is_cocycle(&d));
            let shifted: Vec<u8> = z.iter().zip(&d).map(|(a, b)| (a + b) % p).collect();
            assert_eq!(cat.identify(&space.middle_term(&shifted).unwrap()).unwrap(), base);
        }
    }
    let terms = labels(&cat, cat.ext_middle_terms(1, 1));
    assert_eq!(terms, sorted(&["U1+U3", "U2^2"]));
}

#[test]
fn extensions_of_decomposable_modules() {
    let cat = a2_catalog();
    let alg = cat.algebra().clone();
    let aa = sum_of(&alg, &[cat.indec(0), cat.indec(0)]);
    let terms = cat.extension_middle_terms(&aa, cat.indec(2)).unwrap();
    assert_eq!(labels(&cat, &terms), sorted(&["A+B", "A^2+C"]));
}

#[test]
fn ext_cap_is_enforced() {
    let limits = Limits {
        ext_dim: 0,
        ..Limits::default()
    };
    let cat = Builtin::Uniserial { n: 3 }.build(2, limits);
    assert!(matches!(cat, Err(Error::CapExceeded { .. })));
}

#[test]
fn opposite_transposes_hom() {
    let cat = a2_catalog();
    let op = cat.opposite().unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(op.hom_dims()[i][j], cat.hom_dims()[j][i]);
        }
    }
    assert_eq!(op.simples(), [0, 2]);
}

#[test]
fn composition_factors_from_dimension_vectors() {
    let cat = a2_catalog();
    assert_eq!(cat.composition_factors(cat.indec(1)).unwrap().counts(), [1, 0, 1]);
}

#[test]
fn builtin_descriptors() {
    assert_eq!("a2".parse::<Builtin>().unwrap(), Builtin::A2);
    assert_eq!(
        "a3".parse::<Builtin>().unwrap(),
        Builtin::An {
            n: 3,
            orientation: "rr".into()
        }
    );
    assert_eq!("an:4:rlr".parse::<Builtin>().unwrap().to_string(), "an:4:rlr");
    assert_eq!("uniserial:3".parse::<Builtin>().unwrap(), Builtin::Uniserial { n: 3 });
    for bad in ["b2", "an:3:rx", "an:3:r", "uniserial:0", "a0", "a11", "an:x:r"] {
        assert!(bad.parse::<Builtin>().is_err(), "{bad}");
    }
}

#[test]
fn type_a_catalogs() {
    for word in ["rr", "rl", "lr", "ll"] {
        let cat = Catalog::from_builtin(&format!("an:3:{word}").parse().unwrap(), 2).unwrap();
        assert_eq!(cat.len(), 6);
        assert_eq!(cat.simples(), [0, 1, 2]);
    }
    let cat = Catalog::from_builtin(&"a3".parse().unwrap(), 3).unwrap();
    assert_eq!(cat.names(), ["I11", "I22", "I33", "I12", "I23", "I13"]);
}

#[test]
fn labels_and_masks() {
    let cat = a2_catalog();
    assert_eq!(cat.mask_label(0b101, ", "), "{A, C}");
    assert_eq!(cat.mask_from_names(&["C", "B"]).unwrap(), 0b110);
    assert!(matches!(cat.mask_from_names(&["D"]), Err(Error::UnknownName(_))));
    assert_eq!(cat.id_label(&ModuleId::zero(3)), "0");
}

#[test]
fn module_json_round_trip() {
    let cat = a2_catalog();
    for m in cat.indecs() {
        let text = serde_json::to_string(&io::module_to_file(m)).unwrap();
        assert_eq!(&io::parse_module(&text, "m.json", cat.algebra()).unwrap(), m);
    }
    let text = serde_json::to_string(&io::algebra_to_file(cat.algebra())).unwrap();
    assert_eq!(&io::parse_algebra(&text, "alg.json").unwrap(), &**cat.algebra());
}

#[test]
fn module_json_errors() {
    let cat = Catalog::from_builtin(&Builtin::Uniserial { n: 2 }, 2).unwrap();
    let alg = cat.algebra();
    let err = io::parse_module("{\n  \"dims\": {\"0\": 1},\n  oops\n}", "bad.json", alg).unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    let err = io::parse_module(r#"{"dims": {"0": 2}, "matrices": {"x": [[1, 0], [0, 1]]}}"#, "rel.json", alg).unwrap_err();
    match err {
        Error::InFile { file, source } => {
            assert_eq!(file, "rel.json");
            assert!(matches!(*source, Error::RelationViolated { index: 0, .. }));
        }
        e => panic!("{e}"),
    }
    let err = io::parse_module(r#"{"dims": {"0": 2}, "matrices": {"x": [[1, 0]]}}"#, "shape.json", alg).unwrap_err();
    assert!(err.to_string().contains("2x2"), "{err}");
}

#[test]
fn export_lists_everything() {
    let cat = a2_catalog();
    let v = serde_json::to_value(cat.export()).unwrap();
    assert_eq!(v["indecomposables"].as_array().unwrap().len(), 3);
    assert_eq!(v["ext_table"].as_array().unwrap().len(), 9);
    assert_eq!(v["simples"], serde_json::json!(["A", "C"]));
    assert_eq!(v["hom_dims"][1], serde_json::json!([0, 1, 1]));
}
