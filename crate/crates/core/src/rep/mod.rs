//! Finite-dimensional representations of a quiver with relations.
//!
//! Representations are left modules over the path algebra: each arrow `a: v -> w`
//! carries a `dim(w) x dim(v)` matrix acting on column vectors, and a path
//! `[a, b]` means "apply `a`, then `b`", so it evaluates to `M_b * M_a`.

mod morphism;
mod submodule;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

pub use morphism::{hom_basis, hom_dim, is_isomorphic, Morphism};
pub use submodule::{all_submodules, generated_submodule, SubRep};

use crate::error::{Error, Result};
use crate::linalg::{check_prime, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// One summand `coeff * path` of a relation; `path` holds arrow indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathTerm {
    pub coeff: u8,
    pub path: Vec<usize>,
}

pub type Relation = Vec<PathTerm>;

/// A quiver with linear relations over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    p: u8,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
}

impl Algebra {
    pub fn new(field_char: u32, vertices: Vec<String>, arrows: Vec<Arrow>, relations: Vec<Relation>) -> Result<Self> {
        let p = check_prime(field_char)?;
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidAlgebra(format!("duplicate vertex {v:?}")));
            }
        }
        let mut seen = HashSet::new();
        for a in &arrows {
            if !seen.insert(a.name.as_str()) {
                return Err(Error::InvalidAlgebra(format!("duplicate arrow {:?}", a.name)));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidAlgebra(format!("arrow {:?} has an undeclared endpoint", a.name)));
            }
        }
        let mut relations = relations;
        for (i, rel) in relations.iter_mut().enumerate() {
            let mut ends = None;
            for term in rel.iter_mut() {
                term.coeff %= p;
                let (Some(&first), Some(&last)) = (term.path.first(), term.path.last()) else {
                    return Err(Error::InvalidAlgebra(format!("relation {i} contains an empty path")));
                };
                if let Some(&bad) = term.path.iter().find(|&&a| a >= arrows.len()) {
                    return Err(Error::InvalidAlgebra(format!("relation {i} uses unknown arrow index {bad}")));
                }
                if term.path.windows(2).any(|w| arrows[w[0]].target != arrows[w[1]].source) {
                    return Err(Error::InvalidAlgebra(format!("relation {i} contains a non-composable path")));
                }
                let these = (arrows[first].source, arrows[last].target);
                match ends {
                    None => ends = Some(these),
                    Some(e) if e != these => {
                        return Err(Error::InvalidAlgebra(format!(
                            "relation {i} mixes paths with different endpoints"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(Algebra {
            p,
            vertices,
            arrows,
            relations,
        })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Arrows reversed, paths read backwards.
    pub fn opposite(&self) -> Algebra {
        Algebra {
            p: self.p,
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|rel| {
                    rel.iter()
                        .map(|t| PathTerm {
                            coeff: t.coeff,
                            path: t.path.iter().rev().copied().collect(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// One vertex and at most one loop: a truncated polynomial ring, hence commutative.
    pub fn is_evidently_commutative(&self) -> bool {
        self.vertices.len() == 1 && self.arrows.len() <= 1
    }

    /// No arrows between distinct vertices: the algebra is a product of local algebras.
    pub fn is_product_of_local(&self) -> bool {
        self.arrows.iter().all(|a| a.source == a.target)
    }

    pub fn describe_relation(&self, index: usize) -> String {
        self.relations[index]
            .iter()
            .map(|t| {
                let path = t.path.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(".");
                if t.coeff == 1 {
                    path
                } else {
                    format!("{}*{}", t.coeff, path)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A representation: one vector space per vertex and one matrix per arrow.
#[derive(Clone)]
pub struct Representation {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl Representation {
    /// Checks shapes and relations.
    pub fn new(algebra: Arc<Algebra>, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        let rep = Self::from_parts(algebra, dims, mats)?;
        rep.validate()?;
        Ok(rep)
    }

    /// Checks shapes only.
    pub fn from_parts(algebra: Arc<Algebra>, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        if dims.len() != algebra.num_vertices() || mats.len() != algebra.arrows().len() {
            return Err(Error::Shape(format!(
                "expected {} dimensions and {} matrices, got {} and {}",
                algebra.num_vertices(),
                algebra.arrows().len(),
                dims.len(),
                mats.len()
            )));
        }
        for (a, m) in algebra.arrows().iter().zip(&mats) {
            if m.p() != algebra.p() {
                return Err(Error::Shape(format!("matrix for arrow {:?} is over the wrong field", a.name)));
            }
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::Shape(format!(
                    "matrix for arrow {:?} is {}x{}, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        Ok(Representation { algebra, dims, mats })
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let p = algebra.p();
        let dims = vec![0; algebra.num_vertices()];
        let mats = algebra.arrows().iter().map(|_| Matrix::zeros(p, 0, 0)).collect();
        Representation { algebra, dims, mats }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn p(&self) -> u8 {
        self.algebra.p()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, vertex: usize) -> usize {
        self.dims[vertex]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn mat(&self, arrow: usize) -> &Matrix {
        &self.mats[arrow]
    }

    /// Matrix of a composable arrow sequence, first arrow applied first.
    pub fn path_matrix(&self, path: &[usize]) -> Matrix {
        let first = self.algebra.arrows()[path[0]].source;
        let mut acc = Matrix::identity(self.p(), self.dims[first]);
        for &a in path {
            acc = self.mats[a].mul(&acc).expect("composable path");
        }
        acc
    }

    pub(crate) fn relation_matrix(&self, index: usize) -> Matrix {
        let rel = &self.algebra.relations()[index];
        let arrows = self.algebra.arrows();
        let (s, t) = (arrows[rel[0].path[0]].source, arrows[*rel[0].path.last().unwrap()].target);
        let mut acc = Matrix::zeros(self.p(), self.dims[t], self.dims[s]);
        for term in rel {
            acc = acc.add(&self.path_matrix(&term.path).scale(term.coeff)).expect("same shape");
        }
        acc
    }

    /// Ok iff every relation evaluates to zero; otherwise names the first violated one.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.algebra.relations().len() {
            if !self.relation_matrix(i).is_zero() {
                return Err(Error::RelationViolated {
                    index: i,
                    relation: self.algebra.describe_relation(i),
                });
            }
        }
        Ok(())
    }

    /// The dual representation over the opposite algebra (transposed matrices).
    pub fn dual(&self, opposite: &Arc<Algebra>) -> Representation {
        Representation {
            algebra: opposite.clone(),
            dims: self.dims.clone(),
            mats: self.mats.iter().map(Matrix::transpose).collect(),
        }
    }

    pub(crate) fn with_algebra(&self, algebra: &Arc<Algebra>) -> Representation {
        Representation {
            algebra: algebra.clone(),
            dims: self.dims.clone(),
            mats: self.mats.clone(),
        }
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.dims == other.dims && self.mats == other.mats
    }
}

impl Eq for Representation {}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("dims", &self.dims)
            .field("mats", &self.mats)
            .finish()
    }
}

/// A direct sum with its structure maps.
pub struct DirectSum {
    pub sum: Representation,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

/// Block-diagonal direct sum; the empty sum is the zero representation.
pub fn direct_sum(algebra: &Arc<Algebra>, parts: &[&Representation]) -> Result<DirectSum> {
    let sum = sum_of(algebra, parts)?;
    let p = algebra.p();
    let n = algebra.num_vertices();
    let mut offsets = vec![0usize; n];
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for part in parts {
        let mut inj = Vec::with_capacity(n);
        let mut proj = Vec::with_capacity(n);
        for v in 0..n {
            let mut i = Matrix::zeros(p, sum.dims[v], part.dims[v]);
            i.paste(&Matrix::identity(p, part.dims[v]), offsets[v], 0);
            proj.push(i.transpose());
            inj.push(i);
            offsets[v] += part.dims[v];
        }
        injections.push(Morphism::from_parts((*part).clone(), sum.clone(), inj));
        projections.push(Morphism::from_parts(sum.clone(), (*part).clone(), proj));
    }
    Ok(DirectSum {
        sum,
        injections,
        projections,
    })
}

/// The direct sum object alone.
pub fn sum_of(algebra: &Arc<Algebra>, parts: &[&Representation]) -> Result<Representation> {
    if parts.iter().any(|r| !same_algebra(&r.algebra, algebra)) {
        return Err(Error::AlgebraMismatch);
    }
    let n = algebra.num_vertices();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|r| r.dims[v]).sum()).collect();
    let mats = (0..algebra.arrows().len())
        .map(|a| {
            let blocks: Vec<&Matrix> = parts.iter().map(|r| &r.mats[a]).collect();
            Matrix::block_diag(algebra.p(), &blocks)
        })
        .collect();
    Ok(Representation {
        algebra: algebra.clone(),
        dims,
        mats,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// 1 -> 2 with arrow `a`.
    pub fn a2() -> Arc<Algebra> {
        Arc::new(
            Algebra::new(
                2,
                vec!["1".into(), "2".into()],
                vec![Arrow {
                    name: "a".into(),
                    source: 0,
                    target: 1,
                }],
                vec![],
            )
            .unwrap(),
        )
    }

    /// F_p[x]/(x^n).
    pub fn uniserial(p: u32, n: usize) -> Arc<Algebra> {
        Arc::new(
            Algebra::new(
                p,
                vec!["0".into()],
                vec![Arrow {
                    name: "x".into(),
                    source: 0,
                    target: 0,
                }],
                vec![vec![PathTerm {
                    coeff: 1,
                    path: vec![0; n],
                }]],
            )
            .unwrap(),
        )
    }

    pub fn rep(alg: &Arc<Algebra>, dims: &[usize], mats: &[Vec<Vec<i64>>]) -> Representation {
        let p = alg.p();
        let mats = alg
            .arrows()
            .iter()
            .zip(mats)
            .map(|(a, rows)| {
                Matrix::from_fn(p, dims[a.target], dims[a.source], |r, c| rows[r][c])
            })
            .collect();
        Representation::new(alg.clone(), dims.to_vec(), mats).unwrap()
    }

    pub fn a2_modules() -> (Representation, Representation, Representation) {
        let alg = a2();
        let a = rep(&alg, &[0, 1], &[vec![vec![]]]);
        let b = rep(&alg, &[1, 1], &[vec![vec![1]]]);
        let c = rep(&alg, &[1, 0], &[vec![]]);
        (a, b, c)
    }

    /// F_p[x]/(x^k) as a module over F_p[x]/(x^n): a nilpotent Jordan block.
    pub fn truncation(alg: &Arc<Algebra>, k: usize) -> Representation {
        let m = Matrix::from_fn(alg.p(), k, k, |r, c| (r == c + 1) as i64);
        Representation::new(alg.clone(), vec![k], vec![m]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn validate_examples() {
        let (_, b, _) = a2_modules();
        assert!(b.validate().is_ok());
        assert!(Representation::zero(a2()).validate().is_ok());

        let alg = uniserial(2, 2);
        let bad = Representation::new(alg.clone(), vec![1], vec![Matrix::identity(2, 1)]);
        match bad {
            Err(Error::RelationViolated { index, relation }) => {
                assert_eq!(index, 0);
                assert_eq!(relation, "x.x");
            }
            other => panic!("expected relation violation, got {other:?}"),
        }
    }

    #[test]
    fn shapes_are_checked() {
        let alg = a2();
        let r = Representation::new(alg, vec![1, 1], vec![Matrix::zeros(2, 2, 1)]);
        assert!(matches!(r, Err(Error::Shape(_))));
    }

    #[test]
    fn algebra_validation() {
        let bad = Algebra::new(
            2,
            vec!["1".into()],
            vec![Arrow {
                name: "a".into(),
                source: 0,
                target: 3,
            }],
            vec![],
        );
        assert!(matches!(bad, Err(Error::InvalidAlgebra(_))));
        assert!(Algebra::new(4, vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn path_order_is_first_arrow_first() {
        // 1 -a-> 2 -b-> 3: path [a, b] is M_b * M_a, a 1x1 matrix here.
        let alg = Arc::new(
            Algebra::new(
                3,
                vec!["1".into(), "2".into(), "3".into()],
                vec![
                    Arrow { name: "a".into(), source: 0, target: 1 },
                    Arrow { name: "b".into(), source: 1, target: 2 },
                ],
                vec![],
            )
            .unwrap(),
        );
        let r = rep(&alg, &[1, 2, 1], &[vec![vec![1], vec![2]], vec![vec![1, 1]]]);
        assert_eq!(r.path_matrix(&[0, 1]).to_rows(), vec![vec![0]]);
        assert_eq!(r.path_matrix(&[0]).shape(), (2, 1));
    }

    #[test]
    fn direct_sum_examples() {
        let alg = a2();
        let (a, b, c) = a2_modules();
        let z = direct_sum(&alg, &[]).unwrap();
        assert!(z.sum.is_zero());

        let ac = direct_sum(&alg, &[&a, &c]).unwrap();
        assert_eq!(ac.sum.dims(), &[1, 1]);
        assert_eq!(ac.sum.mat(0).to_rows(), vec![vec![0]]);
        assert_ne!(hom_dim(&ac.sum, &ac.sum).unwrap(), hom_dim(&b, &b).unwrap());

        let single = direct_sum(&alg, &[&b]).unwrap();
        assert_eq!(single.sum, b);
        for (i, p) in ac.injections.iter().zip(&ac.projections) {
            assert!(i.validate().is_ok() && p.validate().is_ok());
        }
    }

    #[test]
    fn opposite_reverses_paths() {
        let alg = uniserial(2, 3);
        let op = alg.opposite();
        assert_eq!(op, *alg);
        let (_, b, _) = a2_modules();
        let op = Arc::new(b.algebra().opposite());
        let d = b.dual(&op);
        assert_eq!(op.arrows()[0].source, 1);
        assert!(d.validate().is_ok());
    }
}
