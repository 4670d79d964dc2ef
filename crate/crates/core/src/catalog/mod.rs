//! The ambient category: a finite list of indecomposables with derived tables.
//!
//! Identification of an arbitrary module works by Krull–Schmidt multiplicities:
//! for an indecomposable `X` whose endomorphism ring is local with residue field
//! `F_p`, the multiplicity of `X` in `M` is the rank of the pairing
//! `Hom(X, M) x Hom(M, X) -> End(X) -> F_p`, `(f, g) |-> residue(g ∘ f)`.
//! Every catalog member is checked for such an endomorphism ring at build time.

mod builtin;
mod ext;
pub mod io;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

pub use builtin::Builtin;
pub use ext::ExtensionSpace;

use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Matrix, Subspace};
use crate::rep::{all_submodules, hom_basis, hom_dim, is_isomorphic, Algebra, Morphism, Representation};

/// Size limits for the exhaustive searches the catalog performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest total dimension handed to submodule enumeration.
    pub submodule_dim: usize,
    /// Largest `dim Hom` searched exhaustively for isomorphisms and idempotents.
    pub iso_hom_dim: usize,
    /// Largest dimension of the space of extension classes that is enumerated.
    pub ext_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            submodule_dim: 12,
            iso_hom_dim: 20,
            ext_dim: 16,
        }
    }
}

/// Multiplicities over catalog indices: `M ≅ ⊕ indec_k^{counts[k]}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleId(Vec<usize>);

impl ModuleId {
    pub fn zero(n: usize) -> Self {
        ModuleId(vec![0; n])
    }

    pub fn single(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ModuleId(v)
    }

    pub fn from_counts(counts: Vec<usize>) -> Self {
        ModuleId(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `(index, multiplicity)` pairs with positive multiplicity.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().filter(|(_, &m)| m > 0).map(|(i, &m)| (i, m))
    }

    /// Indices occurring in the decomposition, as a bitmask.
    pub fn support(&self) -> u64 {
        self.entries().fold(0, |acc, (i, _)| acc | (1u64 << i))
    }

    pub fn add(&self, other: &ModuleId) -> ModuleId {
        ModuleId(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for ModuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleId{:?}", self.0)
    }
}

/// A finite, Krull–Schmidt complete list of indecomposables over one algebra.
pub struct Catalog {
    algebra: Arc<Algebra>,
    names: Vec<String>,
    indecs: Vec<Representation>,
    hom_dims: Vec<Vec<usize>>,
    ext_table: Vec<Vec<Vec<ModuleId>>>,
    simples: Vec<usize>,
    vertex_simple: Vec<Option<usize>>,
    /// Vertex with nonzero dimension where each member's residue map is read.
    residue_vertex: Vec<usize>,
    subquotient_support: Vec<u64>,
    limits: Limits,
    memo: RwLock<HashMap<(Vec<usize>, Vec<usize>), ModuleId>>,
}

impl fmt::Debug for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Catalog")
            .field("names", &self.names)
            .field("hom_dims", &self.hom_dims)
            .finish()
    }
}

impl Catalog {
    /// Verifies the members (indecomposable, pairwise non-isomorphic, split local
    /// endomorphism rings, distinct Hom profiles) and computes all derived tables.
    pub fn new(algebra: Arc<Algebra>, names: Vec<String>, indecs: Vec<Representation>, limits: Limits) -> Result<Self> {
        if indecs.is_empty() {
            return Err(Error::EmptyCatalog);
        }
        if indecs.len() > 64 {
            return Err(Error::CatalogTooLarge(indecs.len()));
        }
        assert_eq!(names.len(), indecs.len(), "one name per indecomposable");
        if let Some(dup) = duplicate(&names) {
            return Err(Error::InvalidAlgebra(format!("duplicate catalog name {dup:?}")));
        }
        let indecs: Vec<Representation> = indecs
            .into_iter()
            .map(|m| {
                if crate::rep::same_algebra(m.algebra(), &algebra) {
                    Ok(m.with_algebra(&algebra))
                } else {
                    Err(Error::AlgebraMismatch)
                }
            })
            .collect::<Result<_>>()?;
        for m in &indecs {
            m.validate()?;
        }

        let mut residue_vertex = Vec::with_capacity(indecs.len());
        for (m, name) in indecs.iter().zip(&names) {
            residue_vertex.push(check_split_local(m, name, limits.iso_hom_dim)?);
        }
        for i in 0..indecs.len() {
            for j in i + 1..indecs.len() {
                if is_isomorphic(&indecs[i], &indecs[j], limits.iso_hom_dim)? {
                    return Err(Error::DuplicateIso(names[i].clone(), names[j].clone()));
                }
            }
        }

        let n = indecs.len();
        let mut hom_dims = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                hom_dims[i][j] = hom_dim(&indecs[i], &indecs[j])?;
            }
        }
        let profiles: Vec<Vec<usize>> = (0..n).map(|j| (0..n).map(|k| hom_dims[k][j]).collect()).collect();
        for i in 0..n {
            for j in i + 1..n {
                if profiles[i] == profiles[j] && indecs[i].dims() == indecs[j].dims() {
                    return Err(Error::ProfileCollision(names[i].clone(), names[j].clone()));
                }
            }
        }

        let mut cat = Catalog {
            algebra,
            names,
            indecs,
            hom_dims,
            ext_table: Vec::new(),
            simples: Vec::new(),
            vertex_simple: Vec::new(),
            residue_vertex,
            subquotient_support: Vec::new(),
            limits,
            memo: RwLock::new(HashMap::new()),
        };

        let mut simples = Vec::new();
        let mut vertex_simple = vec![None; cat.algebra.num_vertices()];
        let mut subquotient_support = Vec::with_capacity(n);
        for (i, m) in cat.indecs.iter().enumerate() {
            let subs = all_submodules(m, limits.submodule_dim)?;
            if subs.len() == 2 {
                simples.push(i);
                if m.total_dim() == 1 {
                    let v = m.dims().iter().position(|&d| d == 1).unwrap();
                    vertex_simple[v] = Some(i);
                }
            }
            let mut mask = 0u64;
            for s in &subs {
                mask |= cat.identify(&s.sub_to_rep().0)?.support();
                mask |= cat.identify(&s.quotient().0)?.support();
            }
            subquotient_support.push(mask);
        }
        cat.simples = simples;
        cat.vertex_simple = vertex_simple;
        cat.subquotient_support = subquotient_support;

        let mut ext_table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                ext_table[i][j] = cat.extension_middle_terms(&cat.indecs[i], &cat.indecs[j])?;
            }
        }
        cat.ext_table = ext_table;
        Ok(cat)
    }

    pub fn from_builtin(spec: &Builtin, field_char: u32) -> Result<Self> {
        spec.build(field_char, Limits::default())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.indecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indecs.is_empty()
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn indec(&self, i: usize) -> &Representation {
        &self.indecs[i]
    }

    pub fn indecs(&self) -> &[Representation] {
        &self.indecs
    }

    pub fn hom_dims(&self) -> &[Vec<usize>] {
        &self.hom_dims
    }

    /// Middle terms of all extensions `0 -> indec_i -> M -> indec_j -> 0`.
    pub fn ext_middle_terms(&self, i: usize, j: usize) -> &[ModuleId] {
        &self.ext_table[i][j]
    }

    pub fn simples(&self) -> &[usize] {
        &self.simples
    }

    /// Bitmask of all catalog indices.
    pub fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// Indecomposables occurring in some submodule or quotient of `indec_i`.
    pub fn subquotient_support(&self, i: usize) -> u64 {
        self.subquotient_support[i]
    }

    /// `(dim Hom(indec_k, M))_k`.
    pub fn profile(&self, m: &Representation) -> Result<Vec<usize>> {
        self.indecs.iter().map(|x| hom_dim(x, m)).collect()
    }

    fn check_algebra(&self, m: &Representation) -> Result<()> {
        if crate::rep::same_algebra(m.algebra(), &self.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Decomposes `M` into catalog indecomposables.
    pub fn identify(&self, m: &Representation) -> Result<ModuleId> {
        self.check_algebra(m)?;
        let n = self.len();
        if m.is_zero() {
            return Ok(ModuleId::zero(n));
        }
        let profile = self.profile(m)?;
        let key = (m.dims().to_vec(), profile);
        if let Some(id) = self.memo.read().unwrap().get(&key) {
            return Ok(id.clone());
        }
        let profile = &key.1;
        let mut counts = vec![0usize; n];
        for k in 0..n {
            if profile[k] == 0 {
                continue;
            }
            counts[k] = self.multiplicity(k, m)?;
        }
        let unknown = || Error::UnknownModule { dims: m.dims().to_vec() };
        for v in 0..m.dims().len() {
            let d: usize = (0..n).map(|k| counts[k] * self.indecs[k].dim(v)).sum();
            if d != m.dim(v) {
                return Err(unknown());
            }
        }
        for k in 0..n {
            let predicted: usize = (0..n).map(|j| counts[j] * self.hom_dims[k][j]).sum();
            if predicted != profile[k] {
                return Err(unknown());
            }
        }
        let id = ModuleId(counts);
        self.memo.write().unwrap().insert(key, id.clone());
        Ok(id)
    }

    /// Rank of the residue pairing `Hom(X, M) x Hom(M, X) -> F_p` for `X = indec_k`.
    fn multiplicity(&self, k: usize, m: &Representation) -> Result<usize> {
        let x = &self.indecs[k];
        let into = hom_basis(x, m)?;
        let back = hom_basis(m, x)?;
        if into.is_empty() || back.is_empty() {
            return Ok(0);
        }
        let v = self.residue_vertex[k];
        let mut pairing = Matrix::zeros(self.algebra.p(), into.len(), back.len());
        for (a, f) in into.iter().enumerate() {
            for (b, g) in back.iter().enumerate() {
                let phi = g.comp(v).mul(f.comp(v))?;
                pairing.set(a, b, residue(&phi).expect("catalog endomorphism rings are split local"));
            }
        }
        Ok(pairing.rank())
    }

    /// The representation `⊕ indec_k^{counts[k]}`.
    pub fn realize(&self, id: &ModuleId) -> Representation {
        let parts: Vec<&Representation> = id
            .entries()
            .flat_map(|(i, m)| std::iter::repeat_n(&self.indecs[i], m))
            .collect();
        crate::rep::sum_of(&self.algebra, &parts).expect("same algebra")
    }

    /// Multiplicities of simples in a composition series, read off the dimension vector.
    pub fn composition_factors(&self, m: &Representation) -> Result<ModuleId> {
        self.check_algebra(m)?;
        let mut counts = vec![0; self.len()];
        for (v, &d) in m.dims().iter().enumerate() {
            if d == 0 {
                continue;
            }
            match self.vertex_simple[v] {
                Some(s) => counts[s] += d,
                None => return Err(Error::UnknownModule { dims: m.dims().to_vec() }),
            }
        }
        Ok(ModuleId(counts))
    }

    /// The catalog over the opposite algebra: arrows reversed, matrices transposed,
    /// same index order and names.
    pub fn opposite(&self) -> Result<Catalog> {
        let op = Arc::new(self.algebra.opposite());
        let indecs = self.indecs.iter().map(|m| m.dual(&op)).collect();
        Catalog::new(op, self.names.clone(), indecs, self.limits)
    }

    /// `{A, B}`-style label for a bitmask.
    pub fn mask_label(&self, mask: u64, sep: &str) -> String {
        let names: Vec<&str> = (0..self.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| self.names[i].as_str())
            .collect();
        format!("{{{}}}", names.join(sep))
    }

    /// `A+B^2`-style label; `0` for the zero module.
    pub fn id_label(&self, id: &ModuleId) -> String {
        if id.is_zero() {
            return "0".into();
        }
        id.entries()
            .map(|(i, m)| {
                if m == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], m)
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn mask_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<u64> {
        names
            .iter()
            .map(|n| self.index_of(n.as_ref()))
            .try_fold(0u64, |acc, i| i.map(|i| acc | (1u64 << i)))
    }
}

fn duplicate(names: &[String]) -> Option<&String> {
    let mut seen = BTreeSet::new();
    names.iter().find(|n| !seen.insert(n.as_str()))
}

/// The unique `c` with `phi - c·I` singular; exists for elements of a split local ring.
fn residue(phi: &Matrix) -> Option<u8> {
    let p = phi.p();
    let n = phi.rows();
    (0..p).find(|&c| {
        let shifted = phi.sub(&Matrix::identity(p, n).scale(c)).expect("square");
        shifted.rank() < n
    })
}

fn flatten(f: &Morphism) -> Vec<u8> {
    f.comps().iter().flat_map(|m| m.to_rows().into_iter().flatten()).collect()
}

fn unflatten(template: &Morphism, x: &[u8]) -> Vec<Matrix> {
    let mut off = 0;
    template
        .comps()
        .iter()
        .map(|m| {
            let (r, c) = m.shape();
            let out = Matrix::from_fn(m.p(), r, c, |i, j| x[off + i * c + j] as i64);
            off += r * c;
            out
        })
        .collect()
}

fn is_nilpotent(comps: &[Matrix]) -> bool {
    comps.iter().all(|m| {
        let mut acc = m.clone();
        for _ in 1..m.rows().max(1) {
            acc = acc.mul(m).expect("square");
        }
        acc.is_zero()
    })
}

/// Checks that `End(M)` is local with residue field `F_p` and returns a vertex
/// where the residue map can be read. Decomposable modules are rejected exactly
/// when a non-local witness exists, otherwise through an idempotent search.
fn check_split_local(m: &Representation, name: &str, cap: usize) -> Result<usize> {
    let p = m.p();
    let Some(vertex) = m.dims().iter().position(|&d| d > 0) else {
        return Err(Error::Decomposable(name.to_string()));
    };
    let basis = hom_basis(m, m)?;
    let id = Morphism::identity(m);
    let mut radical = Vec::with_capacity(basis.len());
    let mut inconclusive = false;
    for f in &basis {
        let shifted = (0..p).map(|c| {
            f.comps()
                .iter()
                .zip(id.comps())
                .map(|(a, i)| a.sub(&i.scale(c)).expect("square"))
                .collect::<Vec<_>>()
        });
        match shifted.into_iter().find(|comps| is_nilpotent(comps)) {
            Some(comps) => radical.push(comps),
            None => {
                inconclusive = true;
                break;
            }
        }
    }
    if !inconclusive {
        // span of the shifted basis must be a nilpotent ideal: iterate powers to zero
        let to_vec = |comps: &[Matrix]| -> Vec<u8> { comps.iter().flat_map(|m| m.to_rows().into_iter().flatten()).collect() };
        let width = flatten(&id).len();
        let rad_vecs: Vec<Vec<u8>> = radical.iter().map(|c| to_vec(c)).collect();
        let mut power = Subspace::from_vectors(p, width, &rad_vecs);
        for _ in 0..=m.total_dim() {
            if power.is_zero() {
                return Ok(vertex);
            }
            let mut products = Vec::new();
            for a in power.vectors() {
                let a = unflatten(&id, &a);
                for b in &radical {
                    let prod: Vec<Matrix> = a.iter().zip(b).map(|(x, y)| x.mul(y).expect("square")).collect();
                    products.push(to_vec(&prod));
                }
            }
            let next = Subspace::from_vectors(p, width, &products);
            if next == power {
                break;
            }
            power = next;
        }
        return Err(Error::Decomposable(name.to_string()));
    }
    // Some basis element has no eigenvalue in F_p: look for a nontrivial idempotent.
    if basis.len() > cap {
        return Err(Error::CapExceeded {
            what: "dim End for idempotent search",
            value: basis.len(),
            cap,
        });
    }
    for coeffs in all_vectors(p, basis.len()) {
        let e = Morphism::combination(&basis, &coeffs, m, m);
        if e.is_zero() || e == id {
            continue;
        }
        if e.then(&e)? == e {
            return Err(Error::Decomposable(name.to_string()));
        }
    }
    Err(Error::NonSplitEndomorphisms(name.to_string()))
}

#[cfg(test)]
mod tests;
