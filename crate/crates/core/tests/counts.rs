use std::collections::HashMap;

use subcat::catalog::{Builtin, Catalog, Limits, ModuleId};
use subcat::closures::SubcatBits;
use subcat::lattices::{enumerate, is_closed, CheckConfig, ClassKind};

fn catalog(spec: &str, p: u32) -> Catalog {
    spec.parse::<Builtin>().unwrap().build(p, Limits::default()).unwrap()
}

fn words(len: usize) -> Vec<String> {
    (0..1u32 << len)
        .map(|m| (0..len).map(|i| if m >> i & 1 == 1 { 'l' } else { 'r' }).collect())
        .collect()
}

fn count(cat: &Catalog, kind: ClassKind) -> usize {
    enumerate(cat, kind, CheckConfig::default()).unwrap().count()
}

#[test]
fn catalan_counts_for_every_orientation() {
    for (n, catalan) in [(2, 5), (3, 14), (4, 42)] {
        for w in words(n - 1) {
            let cat = catalog(&format!("an:{n}:{w}"), 2);
            assert_eq!(cat.len(), n * (n + 1) / 2);
            for kind in [ClassKind::Tors, ClassKind::Torf, ClassKind::Wide] {
                assert_eq!(count(&cat, kind), catalan, "{kind} on an:{n}:{w}");
            }
            assert_eq!(count(&cat, ClassKind::Serre), 1 << n, "serre on an:{n}:{w}");
        }
    }
}

#[test]
fn serre_counts_are_powers_of_two() {
    for (spec, p) in [("a2", 3), ("a3", 5), ("uniserial:3", 2), ("uniserial:5", 3)] {
        let cat = catalog(spec, p);
        assert_eq!(count(&cat, ClassKind::Serre), 1 << cat.simples().len(), "{spec}");
    }
}

#[test]
fn local_algebra_collapses_every_lattice() {
    let cat = catalog("uniserial:5", 2);
    for kind in ClassKind::ALL {
        assert_eq!(count(&cat, kind), 2, "{kind}");
    }
}

/// Every multiset of at most `k` indecomposables.
fn small_sums(n: usize, k: usize) -> Vec<ModuleId> {
    let mut out = vec![ModuleId::zero(n)];
    let mut frontier = out.clone();
    for _ in 0..k {
        let mut next = Vec::new();
        for id in &frontier {
            let last = id.entries().last().map_or(0, |(i, _)| i);
            for i in last..n {
                next.push(id.add(&ModuleId::single(n, i)));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Extension closure is decided on indecomposable pairs; compare with all pairs of
/// sums of up to two indecomposables.
#[test]
fn extension_closure_matches_decomposable_pairs() {
    for spec in ["a3", "an:3:rl"] {
        let cat = catalog(spec, 2);
        let n = cat.len();
        let sums: Vec<ModuleId> = small_sums(n, 2).into_iter().filter(|s| !s.is_zero()).collect();
        let mut middle: HashMap<(usize, usize), u64> = HashMap::new();
        for (a, x) in sums.iter().enumerate() {
            for (b, y) in sums.iter().enumerate() {
                let terms = cat.extension_middle_terms(&cat.realize(x), &cat.realize(y)).unwrap();
                let support = terms.iter().fold(0, |acc, t| acc | t.support());
                middle.insert((a, b), support);
            }
        }
        for bits in 0..1u64 << n {
            let s = SubcatBits(bits);
            let by_indecs = (0..n).filter(|&i| s.contains(i)).all(|i| {
                (0..n)
                    .filter(|&j| s.contains(j))
                    .all(|j| cat.ext_middle_terms(i, j).iter().all(|t| t.support() & !bits == 0))
            });
            let by_sums = middle
                .iter()
                .filter(|((a, b), _)| sums[*a].support() & !bits == 0 && sums[*b].support() & !bits == 0)
                .all(|(_, &support)| support & !bits == 0);
            assert_eq!(by_indecs, by_sums, "{spec}: {}", s.label(&cat));
        }
    }
}

#[test]
fn ice_and_ike_are_extension_closed_by_check() {
    let cat = catalog("a3", 2);
    let cfg = CheckConfig::default();
    for kind in [ClassKind::Ice, ClassKind::Ike, ClassKind::Ie] {
        for s in enumerate(&cat, kind, cfg).unwrap().members {
            for i in s.iter() {
                for j in s.iter() {
                    for t in cat.ext_middle_terms(i, j) {
                        assert_eq!(t.support() & !s.bits(), 0, "{kind} {}", s.label(&cat));
                    }
                }
            }
        }
    }
}

#[test]
fn wide_is_ice_and_ike() {
    let cat = catalog("an:4:lrl", 2);
    let cfg = CheckConfig::default();
    let wide = enumerate(&cat, ClassKind::Wide, cfg).unwrap();
    let ice = enumerate(&cat, ClassKind::Ice, cfg).unwrap();
    let ike = enumerate(&cat, ClassKind::Ike, cfg).unwrap();
    let both: Vec<SubcatBits> = ice.members.iter().copied().filter(|&s| ike.contains(s)).collect();
    assert_eq!(wide.members, both);
    for s in &wide.members {
        assert!(is_closed(&cat, ClassKind::Wide, *s, cfg).unwrap().closed);
    }
}
