//! Extensions `0 -> L -> M -> N -> 0` as block-triangular representations.
//!
//! `M_a = [[L_a, θ_a], [0, N_a]]`; `θ` must make every relation vanish (a
//! cocycle), and `θ` and `θ + δs` with `δs_a = s_w N_a - L_a s_v` give isomorphic
//! middle terms. Classes are enumerated as `θ` ranging over a complement of the
//! coboundaries inside the cocycles.

use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Matrix, Subspace};
use crate::rep::{same_algebra, Representation};

use super::{Catalog, ModuleId};

pub struct ExtensionSpace {
    l: Representation,
    n: Representation,
    offsets: Vec<usize>,
    len: usize,
    cocycles: Subspace,
    coboundaries: Subspace,
    representatives: Vec<Vec<u8>>,
}

impl ExtensionSpace {
    pub fn new(l: &Representation, n: &Representation) -> Result<Self> {
        if !same_algebra(l.algebra(), n.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let alg = l.algebra();
        let p = l.p();
        let mut offsets = Vec::with_capacity(alg.arrows().len());
        let mut len = 0;
        for a in alg.arrows() {
            offsets.push(len);
            len += l.dim(a.target) * n.dim(a.source);
        }
        let mut this = ExtensionSpace {
            l: l.clone(),
            n: n.with_algebra(l.algebra()),
            offsets,
            len,
            cocycles: Subspace::zero(p, len),
            coboundaries: Subspace::zero(p, len),
            representatives: Vec::new(),
        };

        // cocycle condition: the top-right block of every relation vanishes
        let mut columns = Vec::with_capacity(len);
        for u in 0..len {
            let mut theta = vec![0u8; len];
            theta[u] = 1;
            let m = this.block_rep(&theta);
            let mut col = Vec::new();
            for (i, rel) in alg.relations().iter().enumerate() {
                let s = alg.arrows()[rel[0].path[0]].source;
                let t = alg.arrows()[*rel[0].path.last().unwrap()].target;
                let block = m.relation_matrix(i).submatrix(0, l.dim(s), l.dim(t), n.dim(s));
                col.extend(block.to_rows().into_iter().flatten());
            }
            columns.push(col);
        }
        let constraint_rows = columns.first().map_or(0, Vec::len);
        let constraints = Matrix::from_fn(p, constraint_rows, len, |r, c| columns[c][r] as i64);
        this.cocycles = if constraint_rows == 0 {
            Subspace::whole(p, len)
        } else {
            Subspace::from_vectors(p, len, &constraints.nullspace())
        };

        let mut boundaries = Vec::new();
        for v in 0..alg.num_vertices() {
            for r in 0..l.dim(v) {
                for c in 0..n.dim(v) {
                    let mut s: Vec<Matrix> = (0..alg.num_vertices())
                        .map(|w| Matrix::zeros(p, l.dim(w), n.dim(w)))
                        .collect();
                    s[v].set(r, c, 1);
                    boundaries.push(this.coboundary(&s));
                }
            }
        }
        this.coboundaries = Subspace::from_vectors(p, len, &boundaries);

        let mut span = this.coboundaries.clone();
        for z in this.cocycles.vectors() {
            if !span.contains_vector(&z) {
                span = span.sum(&Subspace::from_vectors(p, len, std::slice::from_ref(&z)))?;
                this.representatives.push(z);
            }
        }
        Ok(this)
    }

    /// `dim Ext^1(N, L)`.
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Number of coordinates of a `θ` vector.
    pub fn theta_len(&self) -> usize {
        self.len
    }

    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Subspace {
        &self.coboundaries
    }

    pub fn is_cocycle(&self, theta: &[u8]) -> bool {
        self.cocycles.contains_vector(theta)
    }

    /// `δs` for `s = (s_v: N_v -> L_v)`.
    pub fn coboundary(&self, s: &[Matrix]) -> Vec<u8> {
        let alg = self.l.algebra();
        let mut out = Vec::with_capacity(self.len);
        for (i, a) in alg.arrows().iter().enumerate() {
            let left = s[a.target].mul(self.n.mat(i)).expect("shapes");
            let right = self.l.mat(i).mul(&s[a.source]).expect("shapes");
            out.extend(left.sub(&right).expect("shapes").to_rows().into_iter().flatten());
        }
        out
    }

    fn block_rep(&self, theta: &[u8]) -> Representation {
        let alg = self.l.algebra();
        let p = self.l.p();
        let dims: Vec<usize> = self.l.dims().iter().zip(self.n.dims()).map(|(a, b)| a + b).collect();
        let mats = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let (lv, lw) = (self.l.dim(a.source), self.l.dim(a.target));
                let nv = self.n.dim(a.source);
                let mut m = Matrix::zeros(p, dims[a.target], dims[a.source]);
                m.paste(self.l.mat(i), 0, 0);
                m.paste(self.n.mat(i), lw, lv);
                let off = self.offsets[i];
                for r in 0..lw {
                    for c in 0..nv {
                        m.set(r, lv + c, theta[off + r * nv + c]);
                    }
                }
                m
            })
            .collect();
        Representation::from_parts(alg.clone(), dims, mats).expect("block shapes")
    }

    /// Middle term for a cocycle `θ`.
    pub fn middle_term(&self, theta: &[u8]) -> Result<Representation> {
        if theta.len() != self.len {
            return Err(Error::Shape(format!("cocycle has {} coordinates, expected {}", theta.len(), self.len)));
        }
        let m = self.block_rep(theta);
        m.validate()?;
        Ok(m)
    }

    /// One middle term per element of the class space (including the split one).
    pub fn middle_terms(&self, cap: usize) -> Result<Vec<Representation>> {
        if self.dim() > cap {
            return Err(Error::CapExceeded {
                what: "dim Ext^1",
                value: self.dim(),
                cap,
            });
        }
        let p = self.l.p();
        all_vectors(p, self.dim())
            .map(|coeffs| {
                let mut theta = vec![0u8; self.len];
                for (z, &c) in self.representatives.iter().zip(&coeffs) {
                    for (t, &x) in theta.iter_mut().zip(z) {
                        *t = ((*t as u32 + c as u32 * x as u32) % p as u32) as u8;
                    }
                }
                self.middle_term(&theta)
            })
            .collect()
    }
}

impl Catalog {
    /// Isoclasses of middle terms `M` in `0 -> L -> M -> N -> 0`, sorted.
    pub fn extension_middle_terms(&self, l: &Representation, n: &Representation) -> Result<Vec<ModuleId>> {
        self.check_algebra(l)?;
        self.check_algebra(n)?;
        let space = ExtensionSpace::new(l, n)?;
        let mut ids = space
            .middle_terms(self.limits.ext_dim)?
            .iter()
            .map(|m| self.identify(m))
            .collect::<Result<Vec<_>>>()?;
        ids.sort();
        ids.dedup();
        Ok(ids)
    }
}
