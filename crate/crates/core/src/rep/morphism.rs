use std::fmt;

use super::{same_algebra, Representation, SubRep};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// A module homomorphism: one matrix per vertex with commuting squares.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    comps: Vec<Matrix>,
}

impl Morphism {
    pub fn new(source: Representation, target: Representation, comps: Vec<Matrix>) -> Result<Self> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let n = source.algebra().num_vertices();
        if comps.len() != n {
            return Err(Error::Shape(format!("expected {n} components, got {}", comps.len())));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.shape() != (target.dim(v), source.dim(v)) {
                return Err(Error::Shape(format!(
                    "component at vertex {v} is {}x{}, expected {}x{}",
                    c.rows(),
                    c.cols(),
                    target.dim(v),
                    source.dim(v)
                )));
            }
        }
        let f = Morphism { source, target, comps };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn from_parts(source: Representation, target: Representation, comps: Vec<Matrix>) -> Self {
        let f = Morphism { source, target, comps };
        debug_assert!(f.validate().is_ok());
        f
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let p = source.p();
        let comps = (0..source.dims().len())
            .map(|v| Matrix::zeros(p, target.dim(v), source.dim(v)))
            .collect();
        Morphism::from_parts(source.clone(), target.clone(), comps)
    }

    pub fn identity(m: &Representation) -> Self {
        let comps = m.dims().iter().map(|&d| Matrix::identity(m.p(), d)).collect();
        Morphism::from_parts(m.clone(), m.clone(), comps)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn comp(&self, vertex: usize) -> &Matrix {
        &self.comps[vertex]
    }

    /// Checks the square `f_w * M_a = N_a * f_v` for every arrow `a: v -> w`.
    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.source.algebra().arrows().iter().enumerate() {
            let lhs = self.comps[a.target].mul(self.source.mat(i))?;
            let rhs = self.target.mat(i).mul(&self.comps[a.source])?;
            if lhs != rhs {
                return Err(Error::NotAMorphism(a.name.clone()));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    /// Vertexwise invertible.
    pub fn is_iso(&self) -> bool {
        self.source.dims() == self.target.dims() && self.comps.iter().all(Matrix::is_invertible)
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &Morphism) -> Result<Morphism> {
        if self.target.dims() != after.source.dims() {
            return Err(Error::Shape("composing morphisms with mismatched middle object".into()));
        }
        let comps = after
            .comps
            .iter()
            .zip(&self.comps)
            .map(|(g, f)| g.mul(f))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Morphism::from_parts(self.source.clone(), after.target.clone(), comps))
    }

    /// `sum_i coeffs[i] * basis[i]`; all terms must share source and target.
    pub fn combination(basis: &[Morphism], coeffs: &[u8], source: &Representation, target: &Representation) -> Morphism {
        let mut out = Morphism::zero(source, target);
        for (f, &c) in basis.iter().zip(coeffs) {
            if c != 0 {
                for (acc, m) in out.comps.iter_mut().zip(&f.comps) {
                    *acc = acc.add(&m.scale(c)).expect("same shape");
                }
            }
        }
        out
    }

    pub fn kernel(&self) -> SubRep {
        let spaces = self.comps.iter().map(Subspace::kernel_of).collect();
        SubRep::from_parts(self.source.clone(), spaces)
    }

    pub fn image(&self) -> SubRep {
        let spaces = self.comps.iter().map(Subspace::column_space).collect();
        SubRep::from_parts(self.target.clone(), spaces)
    }

    /// The cokernel with its projection from the target.
    pub fn cokernel(&self) -> (Representation, Morphism) {
        self.image().quotient()
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Morphism").field("comps", &self.comps).finish()
    }
}

/// Variable layout for the commuting-square system of `Hom(M, N)`.
struct HomSystem {
    offsets: Vec<usize>,
    nvars: usize,
    constraints: Matrix,
}

fn hom_system(m: &Representation, n: &Representation) -> Result<HomSystem> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = m.algebra();
    let p = alg.p();
    let mut offsets = Vec::with_capacity(alg.num_vertices());
    let mut nvars = 0;
    for v in 0..alg.num_vertices() {
        offsets.push(nvars);
        nvars += n.dim(v) * m.dim(v);
    }
    // F_v is dim_N(v) x dim_M(v); entry (r, c) lives at offsets[v] + r * dim_M(v) + c.
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dim(v) + c;
    let nrows: usize = alg.arrows().iter().map(|a| n.dim(a.target) * m.dim(a.source)).sum();
    let mut constraints = Matrix::zeros(p, nrows, nvars);
    let mut row = 0;
    for (i, a) in alg.arrows().iter().enumerate() {
        let (v, w) = (a.source, a.target);
        let ma = m.mat(i);
        let na = n.mat(i);
        for r in 0..n.dim(w) {
            for c in 0..m.dim(v) {
                // (F_w M_a)[r][c] - (N_a F_v)[r][c] = 0
                for k in 0..m.dim(w) {
                    let coef = ma.get(k, c);
                    if coef != 0 {
                        let x = var(w, r, k);
                        let cur = constraints.get(row, x);
                        constraints.set(row, x, ((cur as u16 + coef as u16) % p as u16) as u8);
                    }
                }
                for k in 0..n.dim(v) {
                    let coef = na.get(r, k);
                    if coef != 0 {
                        let x = var(v, k, c);
                        let cur = constraints.get(row, x);
                        constraints.set(row, x, ((cur as u16 + (p - coef) as u16) % p as u16) as u8);
                    }
                }
                row += 1;
            }
        }
    }
    Ok(HomSystem {
        offsets,
        nvars,
        constraints,
    })
}

/// An `F_p`-basis of `Hom(M, N)`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>> {
    let sys = hom_system(m, n)?;
    let p = m.p();
    let basis = sys.constraints.nullspace();
    Ok(basis
        .into_iter()
        .map(|x| {
            let comps = (0..m.dims().len())
                .map(|v| {
                    let (rows, cols) = (n.dim(v), m.dim(v));
                    Matrix::from_fn(p, rows, cols, |r, c| x[sys.offsets[v] + r * cols + c] as i64)
                })
                .collect();
            Morphism::from_parts(m.clone(), n.clone(), comps)
        })
        .collect())
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    let sys = hom_system(m, n)?;
    Ok(sys.nvars - sys.constraints.rank())
}

/// Decides `M ≅ N` by searching `Hom(M, N)` for a vertexwise invertible map.
///
/// The search visits coefficient vectors in a scrambled order (an affine
/// bijection of `[0, p^h)`) so that dense combinations, which are the likely
/// isomorphisms, come up early. Errors when `h = dim Hom(M, N)` exceeds `cap`.
pub fn is_isomorphic(m: &Representation, n: &Representation, cap: usize) -> Result<bool> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let basis = hom_basis(m, n)?;
    let h = basis.len();
    if h == 0 || hom_dim(n, m)? != h || hom_dim(m, m)? != h || hom_dim(n, n)? != h {
        return Ok(false);
    }
    if h > cap {
        return Err(Error::CapExceeded {
            what: "dim Hom for isomorphism search",
            value: h,
            cap,
        });
    }
    let p = m.p() as u64;
    let total = p.pow(h as u32);
    // total is a positive power of p, so stride + 1 stays in range and is a unit.
    let mut stride = 0x9E37_79B9_7F4A_7C15u64 % total;
    if stride.is_multiple_of(p) {
        stride += 1;
    }
    let nv = m.dims().len();
    for i in 0..total {
        let mut idx = ((i as u128 * stride as u128 + 1) % total as u128) as u64;
        let mut coeffs = vec![0u8; h];
        for c in coeffs.iter_mut() {
            *c = (idx % p) as u8;
            idx /= p;
        }
        let invertible = (0..nv).all(|v| {
            let mut acc = Matrix::zeros(m.p(), n.dim(v), m.dim(v));
            for (f, &c) in basis.iter().zip(&coeffs) {
                if c != 0 {
                    acc = acc.add(&f.comp(v).scale(c)).expect("same shape");
                }
            }
            acc.is_invertible()
        });
        if invertible {
            return Ok(true);
        }
    }
    Ok(false)
}
