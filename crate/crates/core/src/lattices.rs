//! Checkers and lattice enumeration for the seven subcategory kinds.
//!
//! Serre, torsion and torsion-free classes are decided through their closure
//! operators. The other kinds are checked constructively:
//!
//! * images: `add S` is closed under images iff every indecomposable in
//!   `Fac S ∩ Sub S` already lies in `S` (exact);
//! * extensions: middle terms over pairs of indecomposables from the catalog table;
//! * kernels: iterating `ker(X -> Y1 ⊕ Y2) = ker(ker(X -> Y1) -> Y2)` reduces to
//!   indecomposable targets `Y`, and column operations reduce a source
//!   `⊕ X_i^{r_i}` to one whose components form a basis of a subspace
//!   `V_i ⊆ Hom(X_i, Y)`. The search over subspaces is bounded by [`CheckConfig`];
//! * cokernels: the dual reduction to indecomposable sources.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::Catalog;
use crate::closures::{fac_contains, serre_closure, sub_contains, tors_closure, torf_closure, SubcatBits};
use crate::error::{Error, Result};
use crate::linalg::{all_subspaces, Matrix};
use crate::rep::{all_submodules, hom_basis, Morphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Serre,
    Tors,
    Torf,
    Wide,
    Ice,
    Ike,
    Ie,
}

impl ClassKind {
    pub const ALL: [ClassKind; 7] = [
        ClassKind::Serre,
        ClassKind::Tors,
        ClassKind::Torf,
        ClassKind::Wide,
        ClassKind::Ice,
        ClassKind::Ike,
        ClassKind::Ie,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassKind::Serre => "serre",
            ClassKind::Tors => "tors",
            ClassKind::Torf => "torf",
            ClassKind::Wide => "wide",
            ClassKind::Ice => "ice",
            ClassKind::Ike => "ike",
            ClassKind::Ie => "ie",
        }
    }

    /// Kinds decided by a closure operator, hence enumerable with NextClosure.
    pub fn has_closure_operator(self) -> bool {
        matches!(self, ClassKind::Serre | ClassKind::Tors | ClassKind::Torf)
    }

    /// Kinds whose checker searches morphisms within [`CheckConfig`] caps.
    pub fn is_bounded(self) -> bool {
        matches!(self, ClassKind::Wide | ClassKind::Ice | ClassKind::Ike)
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown kind {s:?}; expected one of serre, tors, torf, wide, ice, ike, ie")))
    }
}

/// Bounds for the kernel and cokernel searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CheckConfig {
    /// Largest multiplicity of one indecomposable in a source or target sum.
    pub mult_cap: usize,
    /// Largest total dimension of an assembled sum.
    pub dim_cap: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { mult_cap: 2, dim_cap: 16 }
    }
}

impl CheckConfig {
    pub fn new(mult_cap: usize, dim_cap: usize) -> Result<Self> {
        if mult_cap == 0 || dim_cap == 0 {
            return Err(Error::InvalidConfig("caps must be at least 1".into()));
        }
        Ok(CheckConfig { mult_cap, dim_cap })
    }

    pub fn doubled(self) -> Self {
        CheckConfig {
            mult_cap: self.mult_cap * 2,
            dim_cap: self.dim_cap * 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub closed: bool,
    /// The violating construction when not closed.
    pub witness: Option<String>,
    /// Some morphism sums were skipped because of the caps.
    pub truncated: bool,
}

impl Verdict {
    fn closed(truncated: bool) -> Self {
        Verdict {
            closed: true,
            witness: None,
            truncated,
        }
    }

    fn violated(witness: String) -> Self {
        Verdict {
            closed: false,
            witness: Some(witness),
            truncated: false,
        }
    }
}

pub fn is_closed(cat: &Catalog, kind: ClassKind, s: SubcatBits, cfg: CheckConfig) -> Result<Verdict> {
    let full = SubcatBits::full(cat);
    if !s.is_subset(full) {
        return Err(Error::InvalidConfig(format!("subset {:#b} exceeds the catalog", s.0)));
    }
    match kind {
        ClassKind::Serre => closure_verdict(cat, s, serre_closure(cat, s), kind),
        ClassKind::Tors => closure_verdict(cat, s, tors_closure(cat, s)?, kind),
        ClassKind::Torf => closure_verdict(cat, s, torf_closure(cat, s)?, kind),
        _ if s == full || s.is_empty() => Ok(Verdict::closed(false)),
        _ => {
            if let Some(w) = image_witness(cat, s)? {
                return Ok(Verdict::violated(w));
            }
            if let Some(w) = extension_witness(cat, s) {
                return Ok(Verdict::violated(w));
            }
            let mut truncated = false;
            if matches!(kind, ClassKind::Wide | ClassKind::Ike) {
                let (w, t) = kernel_witness(cat, s, cfg)?;
                if let Some(w) = w {
                    return Ok(Verdict::violated(w));
                }
                truncated |= t;
            }
            if matches!(kind, ClassKind::Wide | ClassKind::Ice) {
                let (w, t) = cokernel_witness(cat, s, cfg)?;
                if let Some(w) = w {
                    return Ok(Verdict::violated(w));
                }
                truncated |= t;
            }
            Ok(Verdict::closed(truncated))
        }
    }
}

/// `S = tors_closure(S) ∩ torf_closure(S)`.
pub fn ie_via_closures(cat: &Catalog, s: SubcatBits) -> Result<bool> {
    Ok(tors_closure(cat, s)?.intersection(torf_closure(cat, s)?) == s)
}

fn closure_verdict(cat: &Catalog, s: SubcatBits, closure: SubcatBits, kind: ClassKind) -> Result<Verdict> {
    if closure == s {
        return Ok(Verdict::closed(false));
    }
    let outside = |id: &crate::catalog::ModuleId| id.support() & !s.0 != 0;
    let (subs, quots) = match kind {
        ClassKind::Serre => (true, true),
        ClassKind::Tors => (false, true),
        _ => (true, false),
    };
    for x in s.iter() {
        let Ok(submodules) = all_submodules(cat.indec(x), cat.limits().submodule_dim) else {
            continue;
        };
        for u in &submodules {
            if subs {
                let id = cat.identify(&u.sub_to_rep().0)?;
                if outside(&id) {
                    return Ok(Verdict::violated(format!("submodule {} of {}", cat.id_label(&id), cat.name(x))));
                }
            }
            if quots {
                let id = cat.identify(&u.quotient().0)?;
                if outside(&id) {
                    return Ok(Verdict::violated(format!("quotient {} of {}", cat.id_label(&id), cat.name(x))));
                }
            }
        }
    }
    if let Some(w) = extension_witness(cat, s) {
        return Ok(Verdict::violated(w));
    }
    let missing = SubcatBits(closure.0 & !s.0);
    Ok(Verdict::violated(format!("{} closure adds {}", kind, missing.label(cat))))
}

fn image_witness(cat: &Catalog, s: SubcatBits) -> Result<Option<String>> {
    for z in 0..cat.len() {
        if s.contains(z) {
            continue;
        }
        let m = cat.indec(z);
        if fac_contains(cat, s, m)? && sub_contains(cat, s, m)? {
            return Ok(Some(format!(
                "image {}: a quotient and a submodule of objects in the subcategory",
                cat.name(z)
            )));
        }
    }
    Ok(None)
}

fn extension_witness(cat: &Catalog, s: SubcatBits) -> Option<String> {
    for i in s.iter() {
        for j in s.iter() {
            for id in cat.ext_middle_terms(i, j) {
                if id.support() & !s.0 != 0 {
                    return Some(format!(
                        "extension 0 -> {} -> {} -> {} -> 0",
                        cat.name(i),
                        cat.id_label(id),
                        cat.name(j)
                    ));
                }
            }
        }
    }
    None
}

/// For each member, the bases of all subspaces of `F_p^h` of dimension at most the cap.
fn subspace_choices(p: u8, h: usize, cap: usize) -> (Vec<Vec<Vec<u8>>>, bool) {
    let choices = all_subspaces(p, h, h.min(cap)).into_iter().map(|v| v.vectors()).collect();
    (choices, h > cap)
}

/// Depth-first search over one subspace choice per member, pruned by total dimension.
/// `visit` receives `(member index, basis)` pairs and may stop the search with a witness.
fn search_choices(
    members: &[usize],
    choices: &[Vec<Vec<Vec<u8>>>],
    weight: &[usize],
    dim_cap: usize,
    visit: &mut dyn FnMut(&[(usize, &Vec<Vec<u8>>)]) -> Result<Option<String>>,
) -> Result<(Option<String>, bool)> {
    fn rec<'a>(
        k: usize,
        used: usize,
        members: &[usize],
        choices: &'a [Vec<Vec<Vec<u8>>>],
        weight: &[usize],
        dim_cap: usize,
        picked: &mut Vec<(usize, &'a Vec<Vec<u8>>)>,
        truncated: &mut bool,
        visit: &mut dyn FnMut(&[(usize, &Vec<Vec<u8>>)]) -> Result<Option<String>>,
    ) -> Result<Option<String>> {
        if k == members.len() {
            if picked.iter().all(|(_, b)| b.is_empty()) {
                return Ok(None);
            }
            return visit(picked);
        }
        for basis in &choices[k] {
            let cost = used + basis.len() * weight[k];
            if cost > dim_cap {
                *truncated = true;
                continue;
            }
            picked.push((members[k], basis));
            let found = rec(k + 1, cost, members, choices, weight, dim_cap, picked, truncated, visit)?;
            picked.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
    let mut truncated = false;
    let mut picked = Vec::new();
    let w = rec(0, 0, members, choices, weight, dim_cap, &mut picked, &mut truncated, visit)?;
    Ok((w, truncated))
}

fn kernel_witness(cat: &Catalog, s: SubcatBits, cfg: CheckConfig) -> Result<(Option<String>, bool)> {
    let p = cat.algebra().p();
    let members: Vec<usize> = s.iter().collect();
    let mut truncated = false;
    for &y in &members {
        let target = cat.indec(y);
        let homs: Vec<Vec<Morphism>> = members.iter().map(|&i| hom_basis(cat.indec(i), target)).collect::<Result<_>>()?;
        let mut choices = Vec::with_capacity(members.len());
        for h in &homs {
            let (c, t) = subspace_choices(p, h.len(), cfg.mult_cap);
            truncated |= t;
            choices.push(c);
        }
        let weight: Vec<usize> = members.iter().map(|&i| cat.indec(i).total_dim()).collect();
        let mut visit = |picked: &[(usize, &Vec<Vec<u8>>)]| -> Result<Option<String>> {
            let mut parts = Vec::new();
            let mut maps = Vec::new();
            for (k, (i, basis)) in picked.iter().enumerate() {
                for b in basis.iter() {
                    parts.push(cat.indec(*i));
                    maps.push(Morphism::combination(&homs[k], b, cat.indec(*i), target));
                }
            }
            let source = crate::rep::sum_of(cat.algebra(), &parts)?;
            let comps = (0..target.dims().len())
                .map(|v| {
                    let blocks: Vec<&Matrix> = maps.iter().map(|f| f.comp(v)).collect();
                    Matrix::hstack(p, target.dim(v), &blocks)
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let f = Morphism::from_parts(source.clone(), target.clone(), comps);
            let id = cat.identify(&f.kernel().sub_to_rep().0)?;
            if id.support() & !s.0 != 0 {
                let src = cat.identify(&source)?;
                return Ok(Some(format!(
                    "kernel {} of a morphism {} -> {}",
                    cat.id_label(&id),
                    cat.id_label(&src),
                    cat.name(y)
                )));
            }
            Ok(None)
        };
        let (w, t) = search_choices(&members, &choices, &weight, cfg.dim_cap, &mut visit)?;
        truncated |= t;
        if w.is_some() {
            return Ok((w, false));
        }
    }
    Ok((None, truncated))
}

fn cokernel_witness(cat: &Catalog, s: SubcatBits, cfg: CheckConfig) -> Result<(Option<String>, bool)> {
    let p = cat.algebra().p();
    let members: Vec<usize> = s.iter().collect();
    let mut truncated = false;
    for &x in &members {
        let source = cat.indec(x);
        let homs: Vec<Vec<Morphism>> = members.iter().map(|&j| hom_basis(source, cat.indec(j))).collect::<Result<_>>()?;
        let mut choices = Vec::with_capacity(members.len());
        for h in &homs {
            let (c, t) = subspace_choices(p, h.len(), cfg.mult_cap);
            truncated |= t;
            choices.push(c);
        }
        let weight: Vec<usize> = members.iter().map(|&j| cat.indec(j).total_dim()).collect();
        let mut visit = |picked: &[(usize, &Vec<Vec<u8>>)]| -> Result<Option<String>> {
            let mut parts = Vec::new();
            let mut maps = Vec::new();
            for (k, (j, basis)) in picked.iter().enumerate() {
                for b in basis.iter() {
                    parts.push(cat.indec(*j));
                    maps.push(Morphism::combination(&homs[k], b, source, cat.indec(*j)));
                }
            }
            let target = crate::rep::sum_of(cat.algebra(), &parts)?;
            let comps = (0..source.dims().len())
                .map(|v| {
                    let blocks: Vec<&Matrix> = maps.iter().map(|g| g.comp(v)).collect();
                    Matrix::vstack(p, source.dim(v), &blocks)
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let g = Morphism::from_parts(source.clone(), target.clone(), comps);
            let id = cat.identify(&g.cokernel().0)?;
            if id.support() & !s.0 != 0 {
                let tgt = cat.identify(&target)?;
                return Ok(Some(format!(
                    "cokernel {} of a morphism {} -> {}",
                    cat.id_label(&id),
                    cat.name(x),
                    cat.id_label(&tgt)
                )));
            }
            Ok(None)
        };
        let (w, t) = search_choices(&members, &choices, &weight, cfg.dim_cap, &mut visit)?;
        truncated |= t;
        if w.is_some() {
            return Ok((w, false));
        }
    }
    Ok((None, truncated))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    NextClosure,
    BruteForce,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::NextClosure => "nextclosure",
            Strategy::BruteForce => "bruteforce",
        }
    }

    /// NextClosure where a closure operator exists, brute force otherwise.
    pub fn default_for(kind: ClassKind) -> Self {
        if kind.has_closure_operator() {
            Strategy::NextClosure
        } else {
            Strategy::BruteForce
        }
    }
}

/// Largest catalog for which all `2^n` subsets are filtered.
pub const BRUTE_FORCE_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub kind: ClassKind,
    /// Sorted by size, then bit pattern.
    pub members: Vec<SubcatBits>,
    /// Some member was accepted by a search that hit the caps.
    pub truncated: bool,
}

impl Family {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, s: SubcatBits) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.members.iter().all(|&s| other.contains(s))
    }

    pub fn report(&self, cat: &Catalog, cfg: CheckConfig) -> FamilyReport {
        FamilyReport {
            kind: self.kind,
            count: self.count(),
            members: self.members.iter().map(|s| s.names(cat)).collect(),
            checker_config: CheckerReport {
                mult_cap: cfg.mult_cap,
                dim_cap: cfg.dim_cap,
                bounded: self.kind.is_bounded(),
                truncated: self.truncated,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub kind: ClassKind,
    pub count: usize,
    pub members: Vec<Vec<String>>,
    pub checker_config: CheckerReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckerReport {
    pub mult_cap: usize,
    pub dim_cap: usize,
    pub bounded: bool,
    pub truncated: bool,
}

/// All sets closed under `closure`, in lectic order (Ganter's NextClosure).
pub fn next_closure(n: usize, closure: impl Fn(u64) -> Result<u64>) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    let mut a = closure(0)?;
    out.push(a);
    'outer: loop {
        for i in (0..n).rev() {
            if a & (1 << i) != 0 {
                continue;
            }
            let low = (1u64 << i) - 1;
            let b = closure((a & low) | (1 << i))?;
            if b & low == a & low {
                a = b;
                out.push(a);
                continue 'outer;
            }
        }
        return Ok(out);
    }
}

pub fn enumerate_family(cat: &Catalog, kind: ClassKind, strategy: Strategy, cfg: CheckConfig) -> Result<Family> {
    let n = cat.len();
    let mut family = match strategy {
        Strategy::NextClosure => {
            let sets = match kind {
                ClassKind::Serre => next_closure(n, |b| Ok(serre_closure(cat, SubcatBits(b)).0))?,
                ClassKind::Tors => next_closure(n, |b| tors_closure(cat, SubcatBits(b)).map(|s| s.0))?,
                ClassKind::Torf => next_closure(n, |b| torf_closure(cat, SubcatBits(b)).map(|s| s.0))?,
                _ => {
                    return Err(Error::StrategyMismatch {
                        strategy: strategy.as_str(),
                        kind: kind.as_str(),
                    })
                }
            };
            Family {
                kind,
                members: sets.into_iter().map(SubcatBits).collect(),
                truncated: false,
            }
        }
        Strategy::BruteForce => {
            if n > BRUTE_FORCE_LIMIT {
                return Err(Error::CapExceeded {
                    what: "catalog size for brute-force enumeration",
                    value: n,
                    cap: BRUTE_FORCE_LIMIT,
                });
            }
            let verdicts: Vec<(u64, Verdict)> = (0..1u64 << n)
                .into_par_iter()
                .map(|b| is_closed(cat, kind, SubcatBits(b), cfg).map(|v| (b, v)))
                .collect::<Result<_>>()?;
            let closed: Vec<&(u64, Verdict)> = verdicts.iter().filter(|(_, v)| v.closed).collect();
            Family {
                kind,
                members: closed.iter().map(|(b, _)| SubcatBits(*b)).collect(),
                truncated: closed.iter().any(|(_, v)| v.truncated),
            }
        }
    };
    family.members.sort();
    Ok(family)
}

/// Enumerates with [`Strategy::default_for`].
pub fn enumerate(cat: &Catalog, kind: ClassKind, cfg: CheckConfig) -> Result<Family> {
    enumerate_family(cat, kind, Strategy::default_for(kind), cfg)
}

/// `{ T ∩ F : T torsion class, F torsion-free class }`.
pub fn enumerate_ie_by_intersection(cat: &Catalog) -> Result<Family> {
    let cfg = CheckConfig::default();
    let tors = enumerate_family(cat, ClassKind::Tors, Strategy::NextClosure, cfg)?;
    let torf = enumerate_family(cat, ClassKind::Torf, Strategy::NextClosure, cfg)?;
    let set: BTreeSet<SubcatBits> = tors
        .members
        .par_iter()
        .flat_map_iter(|&t| torf.members.iter().map(move |&f| t.intersection(f)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(Family {
        kind: ClassKind::Ie,
        members: set.into_iter().collect(),
        truncated: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    pub kind: ClassKind,
    pub nodes: Vec<SubcatBits>,
    /// Cover pairs `(lower, upper)` as node indices, sorted.
    pub edges: Vec<(usize, usize)>,
}

pub fn hasse(f: &Family) -> HasseDiagram {
    let nodes = f.members.clone();
    let strictly_below = |a: SubcatBits, b: SubcatBits| a != b && a.is_subset(b);
    let mut edges = Vec::new();
    for (i, &a) in nodes.iter().enumerate() {
        for (j, &b) in nodes.iter().enumerate() {
            if strictly_below(a, b) && !nodes.iter().any(|&c| strictly_below(a, c) && strictly_below(c, b)) {
                edges.push((i, j));
            }
        }
    }
    edges.sort_by_key(|&(lo, hi)| (std::cmp::Reverse(hi), lo));
    HasseDiagram {
        kind: f.kind,
        nodes,
        edges,
    }
}

impl HasseDiagram {
    /// Graphviz source; edges drawn from the larger subcategory to the smaller.
    pub fn to_dot(&self, cat: &Catalog) -> String {
        let mut out = format!("digraph {} {{\n  node [shape=plaintext];\n", self.kind);
        for (i, s) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{{{}}}\"];\n", s.names(cat).join(",")));
        }
        for &(lo, hi) in &self.edges {
            out.push_str(&format!("  n{hi} -> n{lo};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Inclusions `sub ⊆ sup` that hold for every abelian length category.
pub const INCLUSIONS: [(ClassKind, ClassKind); 9] = [
    (ClassKind::Serre, ClassKind::Tors),
    (ClassKind::Serre, ClassKind::Torf),
    (ClassKind::Serre, ClassKind::Wide),
    (ClassKind::Torf, ClassKind::Ike),
    (ClassKind::Tors, ClassKind::Ice),
    (ClassKind::Wide, ClassKind::Ike),
    (ClassKind::Wide, ClassKind::Ice),
    (ClassKind::Ice, ClassKind::Ie),
    (ClassKind::Ike, ClassKind::Ie),
];

#[derive(Clone, Debug, Serialize)]
pub struct InclusionCheck {
    pub sub: ClassKind,
    pub sup: ClassKind,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct RelationsReport {
    /// In [`ClassKind::ALL`] order.
    pub families: Vec<Family>,
    pub inclusions: Vec<InclusionCheck>,
    /// Groups of kinds with identical families, each of size at least 2.
    pub coincidences: Vec<Vec<ClassKind>>,
    pub commutative: bool,
    /// For commutative algebras: serre = tors = wide = ice and torf = ike = ie.
    pub commutative_ok: Option<bool>,
}

impl RelationsReport {
    pub fn family(&self, kind: ClassKind) -> &Family {
        &self.families[ClassKind::ALL.iter().position(|&k| k == kind).unwrap()]
    }

    pub fn inclusions_hold(&self) -> bool {
        self.inclusions.iter().all(|c| c.holds)
    }

    pub fn all_distinct(&self) -> bool {
        self.coincidences.is_empty()
    }
}

pub fn enumerate_all(cat: &Catalog, cfg: CheckConfig) -> Result<Vec<Family>> {
    ClassKind::ALL.iter().map(|&k| enumerate(cat, k, cfg)).collect()
}

pub fn relations_report(cat: &Catalog, cfg: CheckConfig) -> Result<RelationsReport> {
    let families = enumerate_all(cat, cfg)?;
    let get = |k: ClassKind| &families[ClassKind::ALL.iter().position(|&x| x == k).unwrap()];
    let inclusions = INCLUSIONS
        .iter()
        .map(|&(sub, sup)| InclusionCheck {
            sub,
            sup,
            holds: get(sub).is_subfamily_of(get(sup)),
        })
        .collect();
    let mut coincidences: Vec<Vec<ClassKind>> = Vec::new();
    for f in &families {
        match coincidences.iter_mut().find(|g| get(g[0]).members == f.members) {
            Some(g) => g.push(f.kind),
            None => coincidences.push(vec![f.kind]),
        }
    }
    coincidences.retain(|g| g.len() > 1);
    let commutative = cat.algebra().is_evidently_commutative();
    let same = |ks: &[ClassKind]| ks.windows(2).all(|w| get(w[0]).members == get(w[1]).members);
    let commutative_ok = commutative.then(|| {
        same(&[ClassKind::Serre, ClassKind::Tors, ClassKind::Wide, ClassKind::Ice])
            && same(&[ClassKind::Torf, ClassKind::Ike, ClassKind::Ie])
    });
    Ok(RelationsReport {
        families,
        inclusions,
        coincidences,
        commutative,
        commutative_ok,
    })
}

/// Text table: kind, member list, count.
pub fn render_table(cat: &Catalog, families: &[Family]) -> String {
    let rows: Vec<(String, String, String)> = families
        .iter()
        .map(|f| {
            let list = f.members.iter().map(|s| s.label(cat)).collect::<Vec<_>>().join(", ");
            (f.kind.to_string(), list, f.count().to_string())
        })
        .collect();
    let header = ("Classes".to_string(), "Lists of subcategories".to_string(), "Numbers".to_string());
    let w0 = rows.iter().map(|r| r.0.len()).chain([header.0.len()]).max().unwrap();
    let w1 = rows.iter().map(|r| r.1.chars().count()).chain([header.1.len()]).max().unwrap();
    let line = |(a, b, c): &(String, String, String)| format!("{a:<w0$} | {b:<w1$} | {c}\n");
    let mut out = line(&header);
    out.push_str(&format!("{}-+-{}-+-{}\n", "-".repeat(w0), "-".repeat(w1), "-".repeat(header.2.len())));
    for r in &rows {
        out.push_str(&line(r));
    }
    out
}
