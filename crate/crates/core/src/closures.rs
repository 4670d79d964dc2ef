//! Fac/Sub membership, torsion and torsion-free closures, and Filt search.
//!
//! Torsion closure iterates trace quotients: `X_{k+1} = X_k / trace(C, X_k)`.
//! Each layer `trace(C, X_k)` lies in `Fac C`, so reaching 0 gives a
//! `Filt(Fac C)` filtration; conversely if `X` lies in the torsion class
//! `Filt(Fac C)` and `X ≠ 0`, its first filtration layer sits inside the trace,
//! so the chain strictly descends. `filt_contains` is the literal search and is
//! kept as an independent oracle.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::rep::{all_submodules, hom_basis, Representation, SubRep};

/// A subcategory `add{indec_i : i ∈ bits}`; the zero module is always a member.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubcatBits(pub u64);

impl SubcatBits {
    pub const EMPTY: SubcatBits = SubcatBits(0);

    pub fn full(cat: &Catalog) -> Self {
        SubcatBits(cat.full_mask())
    }

    pub fn single(i: usize) -> Self {
        SubcatBits(1 << i)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        SubcatBits(self.0 | (1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: SubcatBits) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SubcatBits) -> Self {
        SubcatBits(self.0 | other.0)
    }

    pub fn intersection(self, other: SubcatBits) -> Self {
        SubcatBits(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn names(self, cat: &Catalog) -> Vec<String> {
        self.iter().map(|i| cat.name(i).to_string()).collect()
    }

    /// `{A, B}`-style label.
    pub fn label(self, cat: &Catalog) -> String {
        format!("{{{}}}", self.names(cat).join(", "))
    }

    pub fn from_names<S: AsRef<str>>(cat: &Catalog, names: &[S]) -> Result<Self> {
        cat.mask_from_names(names).map(SubcatBits)
    }
}

/// Families are listed by size, then by bit pattern.
impl Ord for SubcatBits {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl PartialOrd for SubcatBits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubcatBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubcatBits({:#b})", self.0)
    }
}

/// One module in an iterated trace-quotient (or reject) chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub module: String,
    pub length: usize,
    /// Dimension of the trace (or of the quotient by the reject) removed at this step.
    pub layer_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCertificate {
    pub start: String,
    pub steps: Vec<ChainStep>,
    pub reaches_zero: bool,
}

impl ChainCertificate {
    pub fn strictly_decreasing(&self) -> bool {
        self.steps.windows(2).all(|w| w[1].length < w[0].length)
    }
}

fn check(cat: &Catalog, m: &Representation) -> Result<()> {
    if crate::rep::same_algebra(m.algebra(), cat.algebra()) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// Largest submodule of `M` that is a quotient of an object of `add C`.
pub fn trace(cat: &Catalog, c: SubcatBits, m: &Representation) -> Result<SubRep> {
    check(cat, m)?;
    let mut acc = SubRep::zero(m);
    for i in c.iter() {
        for f in hom_basis(cat.indec(i), m)? {
            acc = acc.sum(&f.image());
            if acc.is_whole() {
                return Ok(acc);
            }
        }
    }
    Ok(acc)
}

/// Smallest submodule `U` of `M` such that `M/U` embeds into an object of `add C`.
pub fn reject(cat: &Catalog, c: SubcatBits, m: &Representation) -> Result<SubRep> {
    check(cat, m)?;
    let mut acc = SubRep::whole(m);
    for i in c.iter() {
        for g in hom_basis(m, cat.indec(i))? {
            acc = acc.intersection(&g.kernel());
            if acc.is_zero() {
                return Ok(acc);
            }
        }
    }
    Ok(acc)
}

pub fn fac_contains(cat: &Catalog, c: SubcatBits, x: &Representation) -> Result<bool> {
    Ok(trace(cat, c, x)?.is_whole())
}

pub fn sub_contains(cat: &Catalog, c: SubcatBits, x: &Representation) -> Result<bool> {
    Ok(reject(cat, c, x)?.is_zero())
}

#[derive(Clone, Copy)]
enum Side {
    Torsion,
    TorsionFree,
}

fn chain(cat: &Catalog, c: SubcatBits, start: usize, side: Side) -> Result<ChainCertificate> {
    let mut x = cat.indec(start).clone();
    let mut steps = Vec::new();
    loop {
        if x.is_zero() {
            return Ok(ChainCertificate {
                start: cat.name(start).to_string(),
                steps,
                reaches_zero: true,
            });
        }
        let (next, layer_dim) = match side {
            Side::Torsion => {
                let t = trace(cat, c, &x)?;
                (t.quotient().0, t.total_dim())
            }
            Side::TorsionFree => {
                let r = reject(cat, c, &x)?;
                let removed = x.total_dim() - r.total_dim();
                (r.sub_to_rep().0, removed)
            }
        };
        steps.push(ChainStep {
            module: cat.id_label(&cat.identify(&x)?),
            length: x.total_dim(),
            layer_dim,
        });
        if layer_dim == 0 {
            return Ok(ChainCertificate {
                start: cat.name(start).to_string(),
                steps,
                reaches_zero: false,
            });
        }
        x = next;
    }
}

fn closure_with(cat: &Catalog, c: SubcatBits, side: Side) -> Result<(SubcatBits, Vec<ChainCertificate>)> {
    let mut bits = SubcatBits::EMPTY;
    let mut certs = Vec::with_capacity(cat.len());
    for i in 0..cat.len() {
        let cert = chain(cat, c, i, side)?;
        if cert.reaches_zero {
            bits = bits.with(i);
        }
        certs.push(cert);
    }
    Ok((bits, certs))
}

fn closure_fast(cat: &Catalog, c: SubcatBits, side: Side) -> Result<SubcatBits> {
    let mut bits = c;
    for i in 0..cat.len() {
        if c.contains(i) {
            continue;
        }
        let mut x = cat.indec(i).clone();
        while !x.is_zero() {
            let next = match side {
                Side::Torsion => {
                    let t = trace(cat, c, &x)?;
                    if t.is_zero() {
                        break;
                    }
                    t.quotient().0
                }
                Side::TorsionFree => {
                    let r = reject(cat, c, &x)?;
                    if r.is_whole() {
                        break;
                    }
                    r.sub_to_rep().0
                }
            };
            x = next;
        }
        if x.is_zero() {
            bits = bits.with(i);
        }
    }
    Ok(bits)
}

/// Smallest torsion class containing `C`.
pub fn tors_closure(cat: &Catalog, c: SubcatBits) -> Result<SubcatBits> {
    closure_fast(cat, c, Side::Torsion)
}

/// Smallest torsion-free class containing `C`.
pub fn torf_closure(cat: &Catalog, c: SubcatBits) -> Result<SubcatBits> {
    closure_fast(cat, c, Side::TorsionFree)
}

/// `tors_closure` with one chain certificate per catalog member.
pub fn tors_closure_certified(cat: &Catalog, c: SubcatBits) -> Result<(SubcatBits, Vec<ChainCertificate>)> {
    closure_with(cat, c, Side::Torsion)
}

/// `torf_closure` with one chain certificate per catalog member.
pub fn torf_closure_certified(cat: &Catalog, c: SubcatBits) -> Result<(SubcatBits, Vec<ChainCertificate>)> {
    closure_with(cat, c, Side::TorsionFree)
}

/// Whether `X` has a finite filtration with all factors satisfying `d`.
/// Exhaustive over submodules, memoized on (dimension vector, Hom profile).
pub fn filt_contains<D>(cat: &Catalog, d: &D, x: &Representation) -> Result<bool>
where
    D: Fn(&Representation) -> Result<bool>,
{
    let mut memo = HashMap::new();
    filt_rec(cat, d, x, &mut memo)
}

fn filt_rec<D>(cat: &Catalog, d: &D, x: &Representation, memo: &mut HashMap<(Vec<usize>, Vec<usize>), bool>) -> Result<bool>
where
    D: Fn(&Representation) -> Result<bool>,
{
    if x.is_zero() {
        return Ok(true);
    }
    let key = (x.dims().to_vec(), cat.profile(x)?);
    if let Some(&v) = memo.get(&key) {
        return Ok(v);
    }
    let mut found = d(x)?;
    if !found {
        for y in all_submodules(x, cat.limits().submodule_dim)? {
            if y.is_zero() || y.is_whole() {
                continue;
            }
            if d(&y.sub_to_rep().0)? && filt_rec(cat, d, &y.quotient().0, memo)? {
                found = true;
                break;
            }
        }
    }
    memo.insert(key, found);
    Ok(found)
}

/// Smallest Serre subcategory containing `C`: close under indecomposable summands
/// of subobjects and quotients of members, and under extension middle terms.
pub fn serre_closure(cat: &Catalog, c: SubcatBits) -> SubcatBits {
    let mut bits = c;
    loop {
        let mut next = bits;
        for i in bits.iter() {
            next.0 |= cat.subquotient_support(i);
            for j in bits.iter() {
                for id in cat.ext_middle_terms(i, j) {
                    next.0 |= id.support();
                }
            }
        }
        if next == bits {
            return bits;
        }
        bits = next;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionPair {
    pub torsion: Vec<String>,
    pub torsion_free: Vec<String>,
    #[serde(skip)]
    pub torsion_bits: SubcatBits,
    pub verified: bool,
    /// Failed checks; empty when verified.
    pub witnesses: Vec<String>,
}

/// For a torsion-free class `F`, the torsion class `T = ⊥F` together with a check of
/// `Hom(T, F) = 0` and the canonical sequence `0 -> tX -> X -> X/tX -> 0` for every
/// catalog member.
pub fn torsion_pair_complete(cat: &Catalog, f: SubcatBits) -> Result<TorsionPair> {
    if torf_closure(cat, f)? != f {
        return Err(Error::NotTorsionFree);
    }
    let n = cat.len();
    let mut t = SubcatBits::EMPTY;
    for x in 0..n {
        if f.iter().all(|j| cat.hom_dims()[x][j] == 0) {
            t = t.with(x);
        }
    }
    let mut witnesses = Vec::new();
    for x in t.iter() {
        for j in f.iter() {
            if !hom_basis(cat.indec(x), cat.indec(j))?.is_empty() {
                witnesses.push(format!("Hom({}, {}) != 0", cat.name(x), cat.name(j)));
            }
        }
    }
    for x in 0..n {
        let m = cat.indec(x);
        let tx = trace(cat, t, m)?;
        let sub = cat.identify(&tx.sub_to_rep().0)?;
        let quot = cat.identify(&tx.quotient().0)?;
        if sub.support() & !t.0 != 0 {
            witnesses.push(format!("trace of T in {} is {}, not in T", cat.name(x), cat.id_label(&sub)));
        }
        if quot.support() & !f.0 != 0 {
            witnesses.push(format!("{} / tX is {}, not in F", cat.name(x), cat.id_label(&quot)));
        }
    }
    Ok(TorsionPair {
        torsion: t.names(cat),
        torsion_free: f.names(cat),
        torsion_bits: t,
        verified: witnesses.is_empty(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Builtin;

    fn a2() -> Catalog {
        Catalog::from_builtin(&Builtin::A2, 2).unwrap()
    }

    fn bits(cat: &Catalog, names: &[&str]) -> SubcatBits {
        SubcatBits::from_names(cat, names).unwrap()
    }

    #[test]
    fn trace_and_reject_examples() {
        let cat = a2();
        let (a, b, c) = (cat.indec(0), cat.indec(1), cat.indec(2));
        assert!(trace(&cat, bits(&cat, &["C"]), b).unwrap().is_zero());
        assert!(trace(&cat, bits(&cat, &["B"]), c).unwrap().is_whole());
        assert!(trace(&cat, SubcatBits::full(&cat), b).unwrap().is_whole());
        assert!(reject(&cat, bits(&cat, &["A"]), b).unwrap().is_whole());
        assert_eq!(reject(&cat, bits(&cat, &["C"]), b).unwrap().dims(), [0, 1]);
        assert!(reject(&cat, SubcatBits::full(&cat), a).unwrap().is_zero());
    }

    #[test]
    fn fac_and_sub_examples() {
        let cat = a2();
        let zero = Representation::zero(cat.algebra().clone());
        assert!(fac_contains(&cat, SubcatBits::EMPTY, &zero).unwrap());
        assert!(fac_contains(&cat, bits(&cat, &["B"]), cat.indec(2)).unwrap());
        assert!(!fac_contains(&cat, bits(&cat, &["C"]), cat.indec(1)).unwrap());
        assert!(sub_contains(&cat, bits(&cat, &["B"]), cat.indec(0)).unwrap());
        assert!(!sub_contains(&cat, bits(&cat, &["B"]), cat.indec(2)).unwrap());
    }

    #[test]
    fn closure_examples() {
        let cat = a2();
        let full = SubcatBits::full(&cat);
        assert_eq!(tors_closure(&cat, SubcatBits::EMPTY).unwrap(), SubcatBits::EMPTY);
        assert_eq!(tors_closure(&cat, full).unwrap(), full);
        assert_eq!(tors_closure(&cat, bits(&cat, &["B"])).unwrap(), bits(&cat, &["B", "C"]));
        assert_eq!(torf_closure(&cat, bits(&cat, &["B"])).unwrap(), bits(&cat, &["A", "B"]));
        assert_eq!(tors_closure(&cat, bits(&cat, &["A", "C"])).unwrap(), full);
        assert_eq!(serre_closure(&cat, SubcatBits::EMPTY), SubcatBits::EMPTY);
        assert_eq!(serre_closure(&cat, bits(&cat, &["B"])), full);
        assert_eq!(serre_closure(&cat, bits(&cat, &["A", "C"])), full);
        assert_eq!(serre_closure(&cat, bits(&cat, &["C"])), bits(&cat, &["C"]));
    }

    #[test]
    fn certificates_descend() {
        let cat = Catalog::from_builtin(&"a3".parse().unwrap(), 2).unwrap();
        for c in 0..64u64 {
            for certified in [tors_closure_certified, torf_closure_certified] {
                let (b, certs) = certified(&cat, SubcatBits(c)).unwrap();
                for (i, cert) in certs.iter().enumerate() {
                    assert_eq!(cert.reaches_zero, b.contains(i));
                    assert!(cert.strictly_decreasing());
                }
            }
            assert_eq!(tors_closure_certified(&cat, SubcatBits(c)).unwrap().0, tors_closure(&cat, SubcatBits(c)).unwrap());
            assert_eq!(torf_closure_certified(&cat, SubcatBits(c)).unwrap().0, torf_closure(&cat, SubcatBits(c)).unwrap());
        }
    }

    #[test]
    fn filt_examples() {
        let cat = a2();
        let zero = Representation::zero(cat.algebra().clone());
        let never = |_: &Representation| Ok(false);
        assert!(filt_contains(&cat, &never, &zero).unwrap());
        assert!(!filt_contains(&cat, &never, cat.indec(1)).unwrap());
        let fac_b = |x: &Representation| fac_contains(&cat, bits(&cat, &["B"]), x);
        assert!(filt_contains(&cat, &fac_b, cat.indec(2)).unwrap());
        assert!(!filt_contains(&cat, &fac_b, cat.indec(0)).unwrap());

        let uni = Catalog::from_builtin(&Builtin::Uniserial { n: 4 }, 2).unwrap();
        let simple = |x: &Representation| Ok(x.total_dim() == 1);
        let m = crate::rep::sum_of(uni.algebra(), &[uni.indec(3), uni.indec(1)]).unwrap();
        assert!(filt_contains(&uni, &simple, &m).unwrap());
    }

    #[test]
    fn torsion_pair_examples() {
        let cat = a2();
        let full = SubcatBits::full(&cat);
        let tp = torsion_pair_complete(&cat, full).unwrap();
        assert!(tp.verified && tp.torsion_bits.is_empty());
        let tp = torsion_pair_complete(&cat, bits(&cat, &["A"])).unwrap();
        assert!(tp.verified);
        assert_eq!(tp.torsion_bits, bits(&cat, &["B", "C"]));
        let tp = torsion_pair_complete(&cat, SubcatBits::EMPTY).unwrap();
        assert!(tp.verified);
        assert_eq!(tp.torsion_bits, full);
        assert!(matches!(torsion_pair_complete(&cat, bits(&cat, &["B", "C"])), Err(Error::NotTorsionFree)));
    }

    #[test]
    fn ordering_is_by_size_then_bits() {
        let mut v = vec![SubcatBits(0b110), SubcatBits(0b111), SubcatBits(0b100), SubcatBits(0), SubcatBits(0b011)];
        v.sort();
        assert_eq!(v, [SubcatBits(0), SubcatBits(0b100), SubcatBits(0b011), SubcatBits(0b110), SubcatBits(0b111)]);
    }
}
