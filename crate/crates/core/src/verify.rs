//! The verification battery behind `subcat verify`.

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::Catalog;
use crate::closures::{
    fac_contains, filt_contains, serre_closure, sub_contains, torf_closure, torf_closure_certified, tors_closure,
    tors_closure_certified, torsion_pair_complete, SubcatBits,
};
use crate::error::Result;
use crate::lattices::{
    enumerate_family, enumerate_ie_by_intersection, hasse, ie_via_closures, is_closed, relations_report, CheckConfig,
    ClassKind, Family, Strategy, BRUTE_FORCE_LIMIT,
};

/// The A2 lattices, as name lists in family order.
pub const A2_TABLE: [(ClassKind, &[&[&str]]); 7] = [
    (ClassKind::Serre, &[&[], &["A"], &["C"], &["A", "B", "C"]]),
    (ClassKind::Tors, &[&[], &["A"], &["C"], &["B", "C"], &["A", "B", "C"]]),
    (ClassKind::Torf, &[&[], &["A"], &["C"], &["A", "B"], &["A", "B", "C"]]),
    (ClassKind::Wide, &[&[], &["A"], &["B"], &["C"], &["A", "B", "C"]]),
    (ClassKind::Ice, &[&[], &["A"], &["B"], &["C"], &["B", "C"], &["A", "B", "C"]]),
    (ClassKind::Ike, &[&[], &["A"], &["B"], &["C"], &["A", "B"], &["A", "B", "C"]]),
    (ClassKind::Ie, &[&[], &["A"], &["B"], &["C"], &["A", "B"], &["B", "C"], &["A", "B", "C"]]),
];

/// Cover edges of the A2 IE lattice, upper to lower.
pub const A2_IE_HASSE: [(&[&str], &[&str]); 9] = [
    (&["A", "B", "C"], &["A", "B"]),
    (&["A", "B", "C"], &["B", "C"]),
    (&["A", "B"], &["A"]),
    (&["A", "B"], &["B"]),
    (&["B", "C"], &["B"]),
    (&["B", "C"], &["C"]),
    (&["A"], &[]),
    (&["B"], &[]),
    (&["C"], &[]),
];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status}  {}", c.name));
            if !c.detail.is_empty() {
                out.push_str(&format!("  ({})", c.detail));
            }
            out.push('\n');
        }
        out
    }
}

/// Subsets to sweep: all of them for small catalogs, otherwise a fixed spread of 64.
pub fn sample_subsets(cat: &Catalog) -> Vec<SubcatBits> {
    let n = cat.len();
    if n <= 8 {
        (0..1u64 << n).map(SubcatBits).collect()
    } else {
        let full = cat.full_mask();
        let mut v: Vec<SubcatBits> = (0..64u64)
            .map(|k| SubcatBits(k.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17) & full))
            .chain([SubcatBits(0), SubcatBits(full)])
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// `{ X : X ∈ Filt(Fac C) }` by literal filtration search.
pub fn tors_by_filtration(cat: &Catalog, c: SubcatBits) -> Result<SubcatBits> {
    let d = |x: &crate::rep::Representation| fac_contains(cat, c, x);
    let mut bits = SubcatBits::EMPTY;
    for i in 0..cat.len() {
        if filt_contains(cat, &d, cat.indec(i))? {
            bits = bits.with(i);
        }
    }
    Ok(bits)
}

/// `{ X : X ∈ Filt(Sub C) }` by literal filtration search.
pub fn torf_by_filtration(cat: &Catalog, c: SubcatBits) -> Result<SubcatBits> {
    let d = |x: &crate::rep::Representation| sub_contains(cat, c, x);
    let mut bits = SubcatBits::EMPTY;
    for i in 0..cat.len() {
        if filt_contains(cat, &d, cat.indec(i))? {
            bits = bits.with(i);
        }
    }
    Ok(bits)
}

/// Extensive, monotone and idempotent on the given subsets.
pub fn closure_laws(cat: &Catalog, subsets: &[SubcatBits]) -> Result<Option<String>> {
    type Cl = fn(&Catalog, SubcatBits) -> Result<SubcatBits>;
    let serre: Cl = |cat, c| Ok(serre_closure(cat, c));
    let ops: [(&str, Cl); 3] = [("serre", serre), ("tors", tors_closure), ("torf", torf_closure)];
    for (name, cl) in ops {
        for &s in subsets {
            let c = cl(cat, s)?;
            if !s.is_subset(c) {
                return Ok(Some(format!("{name} closure of {} is not extensive", s.label(cat))));
            }
            if cl(cat, c)? != c {
                return Ok(Some(format!("{name} closure of {} is not idempotent", s.label(cat))));
            }
            for i in 0..cat.len() {
                if !c.is_subset(cl(cat, s.with(i))?) {
                    return Ok(Some(format!("{name} closure is not monotone at {}", s.label(cat))));
                }
            }
        }
    }
    Ok(None)
}

/// The opposite catalog keeps the index order, so families compare directly.
fn same_members(a: &Family, b: &Family) -> bool {
    a.members == b.members
}

pub fn run(cat: &Catalog, cfg: CheckConfig, a2_golden: bool) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let subsets = sample_subsets(cat);
    let n = cat.len();

    let laws = closure_laws(cat, &subsets)?;
    report.push(
        "closure operators are extensive, monotone and idempotent",
        laws.is_none(),
        laws.unwrap_or_else(|| format!("{} subsets", subsets.len())),
    );

    let mismatches: Vec<String> = subsets
        .par_iter()
        .map(|&c| -> Result<Option<String>> {
            if tors_closure(cat, c)? != tors_by_filtration(cat, c)? {
                return Ok(Some(format!("tors closure of {}", c.label(cat))));
            }
            if torf_closure(cat, c)? != torf_by_filtration(cat, c)? {
                return Ok(Some(format!("torf closure of {}", c.label(cat))));
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    report.push(
        "tors/torf closures equal Filt(Fac C) / Filt(Sub C)",
        mismatches.is_empty(),
        mismatches.first().cloned().unwrap_or_else(|| format!("{} subsets", subsets.len())),
    );

    let mut certs_ok = true;
    for &c in &subsets {
        for certified in [tors_closure_certified, torf_closure_certified] {
            certs_ok &= certified(cat, c)?.1.iter().all(|x| x.strictly_decreasing());
        }
    }
    report.push("chain certificates strictly decrease", certs_ok, "");

    if n <= BRUTE_FORCE_LIMIT.min(16) {
        let mut agree = true;
        for kind in [ClassKind::Serre, ClassKind::Tors, ClassKind::Torf] {
            let a = enumerate_family(cat, kind, Strategy::NextClosure, cfg)?;
            let b = enumerate_family(cat, kind, Strategy::BruteForce, cfg)?;
            agree &= a == b;
        }
        report.push("NextClosure agrees with brute force", agree, "");
    }

    let rel = relations_report(cat, cfg)?;
    let failed: Vec<String> = rel
        .inclusions
        .iter()
        .filter(|c| !c.holds)
        .map(|c| format!("{} ⊄ {}", c.sub, c.sup))
        .collect();
    report.push("nine class inclusions hold", failed.is_empty(), failed.join(", "));

    let counts: Vec<String> = rel.families.iter().map(|f| format!("{}={}", f.kind, f.count())).collect();
    report.push("families enumerated", true, counts.join(" "));

    let ie = rel.family(ClassKind::Ie);
    let mut forward = true;
    for &s in &ie.members {
        forward &= ie_via_closures(cat, s)?;
    }
    report.push("every IE-closed S equals T(S) ∩ F(S)", forward, "");

    let tors = rel.family(ClassKind::Tors);
    let torf = rel.family(ClassKind::Torf);
    let backward = tors
        .members
        .par_iter()
        .map(|&t| {
            torf.members
                .iter()
                .map(|&f| is_closed(cat, ClassKind::Ie, t.intersection(f), cfg).map(|v| v.closed))
                .collect::<Result<Vec<bool>>>()
                .map(|v| v.into_iter().all(|x| x))
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|x| x);
    report.push("every T ∩ F is IE-closed", backward, "");

    let by_intersection = enumerate_ie_by_intersection(cat)?;
    report.push(
        "IE family equals {T ∩ F}",
        same_members(&by_intersection, ie),
        format!("{} members", by_intersection.count()),
    );

    let mut tp_ok = true;
    let mut tp_detail = String::new();
    for &f in &torf.members {
        let tp = torsion_pair_complete(cat, f)?;
        if !tp.verified {
            tp_ok = false;
            tp_detail = tp.witnesses.join("; ");
            break;
        }
    }
    report.push("every torsion-free class completes to a torsion pair", tp_ok, tp_detail);

    let op = cat.opposite()?;
    let op_tors = enumerate_family(&op, ClassKind::Tors, Strategy::NextClosure, cfg)?;
    let op_torf = enumerate_family(&op, ClassKind::Torf, Strategy::NextClosure, cfg)?;
    report.push(
        "torf and tors are exchanged by the opposite algebra",
        same_members(torf, &op_tors) && same_members(tors, &op_torf),
        "",
    );

    let serre = rel.family(ClassKind::Serre);
    report.push(
        "|serre| = 2^(number of simples)",
        serre.count() == 1usize << cat.simples().len(),
        format!("{} simples", cat.simples().len()),
    );

    let local = cat.algebra().is_product_of_local();
    let all_same = rel.coincidences.first().is_some_and(|g| g.len() == ClassKind::ALL.len());
    let serre_ie = serre.members == ie.members;
    let serre_torf = serre.members == torf.members;
    report.push(
        "product of local rings <=> serre = ie <=> serre = torf <=> all seven equal",
        local == serre_ie && serre_ie == serre_torf && serre_torf == all_same,
        format!("product of local: {local}"),
    );

    if let Some(ok) = rel.commutative_ok {
        report.push("commutative: serre = tors = wide = ice and torf = ike = ie", ok, "");
    }

    let doubled = crate::lattices::enumerate_all(cat, cfg.doubled())?;
    let stable = doubled.iter().zip(&rel.families).all(|(a, b)| a.members == b.members);
    report.push("families unchanged when caps are doubled", stable, "");

    if a2_golden {
        let mut table_ok = true;
        for (kind, rows) in A2_TABLE {
            let expected: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
            let got: Vec<Vec<String>> = rel.family(kind).members.iter().map(|s| s.names(cat)).collect();
            table_ok &= expected == got;
        }
        report.push("A2 lattices match the reference table", table_ok, "");
        report.push("A2: no two classes coincide", rel.all_distinct(), "");
        report.push("A2: IE Hasse diagram matches", a2_hasse_matches(cat, ie)?, "");
    }
    Ok(report)
}

pub fn a2_hasse_matches(cat: &Catalog, ie: &Family) -> Result<bool> {
    let h = hasse(ie);
    let mut got: Vec<(Vec<String>, Vec<String>)> = h
        .edges
        .iter()
        .map(|&(lo, hi)| (h.nodes[hi].names(cat), h.nodes[lo].names(cat)))
        .collect();
    let mut want: Vec<(Vec<String>, Vec<String>)> = A2_IE_HASSE
        .iter()
        .map(|(hi, lo)| {
            (
                hi.iter().map(|s| s.to_string()).collect(),
                lo.iter().map(|s| s.to_string()).collect(),
            )
        })
        .collect();
    got.sort();
    want.sort();
    Ok(h.nodes.len() == 7 && got == want)
}
