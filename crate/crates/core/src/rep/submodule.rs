use std::collections::{HashSet, VecDeque};

use super::{Morphism, Representation};
use crate::error::{Error, Result};
use crate::linalg::{all_vectors, Matrix, Subspace};

/// An arrow-stable tuple of subspaces of a representation.
#[derive(Clone, PartialEq, Eq)]
pub struct SubRep {
    ambient: Representation,
    spaces: Vec<Subspace>,
}

impl std::fmt::Debug for SubRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("SubRep").field(&self.spaces).finish()
    }
}

impl SubRep {
    pub fn new(ambient: Representation, spaces: Vec<Subspace>) -> Result<Self> {
        if spaces.len() != ambient.dims().len() {
            return Err(Error::Shape(format!(
                "expected {} subspaces, got {}",
                ambient.dims().len(),
                spaces.len()
            )));
        }
        for (v, s) in spaces.iter().enumerate() {
            if s.ambient_dim() != ambient.dim(v) || s.p() != ambient.p() {
                return Err(Error::Shape(format!("subspace at vertex {v} has the wrong ambient space")));
            }
        }
        for (i, a) in ambient.algebra().arrows().iter().enumerate() {
            let m = ambient.mat(i);
            let stable = spaces[a.source]
                .vectors()
                .iter()
                .all(|b| spaces[a.target].contains_vector(&m.mul_vec(b)));
            if !stable {
                return Err(Error::NotArrowStable(a.name.clone()));
            }
        }
        Ok(SubRep { ambient, spaces })
    }

    pub(crate) fn from_parts(ambient: Representation, spaces: Vec<Subspace>) -> Self {
        SubRep { ambient, spaces }
    }

    pub fn zero(ambient: &Representation) -> Self {
        let spaces = ambient.dims().iter().map(|&d| Subspace::zero(ambient.p(), d)).collect();
        SubRep::from_parts(ambient.clone(), spaces)
    }

    pub fn whole(ambient: &Representation) -> Self {
        let spaces = ambient.dims().iter().map(|&d| Subspace::whole(ambient.p(), d)).collect();
        SubRep::from_parts(ambient.clone(), spaces)
    }

    pub fn ambient(&self) -> &Representation {
        &self.ambient
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }

    pub fn is_whole(&self) -> bool {
        self.spaces.iter().all(Subspace::is_whole)
    }

    pub fn sum(&self, other: &SubRep) -> SubRep {
        let spaces = self
            .spaces
            .iter()
            .zip(&other.spaces)
            .map(|(a, b)| a.sum(b).expect("same ambient"))
            .collect();
        SubRep::from_parts(self.ambient.clone(), spaces)
    }

    pub fn intersection(&self, other: &SubRep) -> SubRep {
        let spaces = self
            .spaces
            .iter()
            .zip(&other.spaces)
            .map(|(a, b)| a.intersection(b).expect("same ambient"))
            .collect();
        SubRep::from_parts(self.ambient.clone(), spaces)
    }

    /// True iff `other ⊆ self`.
    pub fn contains(&self, other: &SubRep) -> bool {
        self.spaces
            .iter()
            .zip(&other.spaces)
            .all(|(a, b)| a.contains(b).expect("same ambient"))
    }

    /// The submodule as a representation in RREF-basis coordinates, with its inclusion.
    pub fn sub_to_rep(&self) -> (Representation, Morphism) {
        let amb = &self.ambient;
        let p = amb.p();
        let dims = self.dims();
        let mats = amb
            .algebra()
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let src = &self.spaces[a.source];
                let tgt = &self.spaces[a.target];
                let mut m = Matrix::zeros(p, tgt.dim(), src.dim());
                for (col, b) in src.vectors().iter().enumerate() {
                    let y = amb.mat(i).mul_vec(b);
                    let coords = tgt.coordinates(&y).expect("arrow-stable");
                    for (row, &x) in coords.iter().enumerate() {
                        m.set(row, col, x);
                    }
                }
                m
            })
            .collect();
        let sub = Representation::from_parts(amb.algebra().clone(), dims, mats).expect("consistent shapes");
        let inc = self.spaces.iter().map(|s| s.basis().transpose()).collect();
        let inc = Morphism::from_parts(sub.clone(), amb.clone(), inc);
        (sub, inc)
    }

    /// The quotient `ambient / self` in non-pivot coordinates, with its projection.
    pub fn quotient(&self) -> (Representation, Morphism) {
        let amb = &self.ambient;
        let p = amb.p();
        let comps: Vec<Vec<usize>> = self.spaces.iter().map(Subspace::complement_positions).collect();
        let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
        let project = |v: usize, x: &[u8]| -> Vec<u8> {
            let r = self.spaces[v].reduce(x);
            comps[v].iter().map(|&j| r[j]).collect()
        };
        let mats = amb
            .algebra()
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let m = amb.mat(i);
                let mut q = Matrix::zeros(p, dims[a.target], dims[a.source]);
                for (col, &j) in comps[a.source].iter().enumerate() {
                    let y = project(a.target, &m.column(j));
                    for (row, &x) in y.iter().enumerate() {
                        q.set(row, col, x);
                    }
                }
                q
            })
            .collect();
        let quot = Representation::from_parts(amb.algebra().clone(), dims.clone(), mats).expect("consistent shapes");
        let proj = (0..amb.dims().len())
            .map(|v| {
                let n = amb.dim(v);
                let mut pm = Matrix::zeros(p, dims[v], n);
                for k in 0..n {
                    let mut e = vec![0u8; n];
                    e[k] = 1;
                    for (row, &x) in project(v, &e).iter().enumerate() {
                        pm.set(row, k, x);
                    }
                }
                pm
            })
            .collect();
        let proj = Morphism::from_parts(amb.clone(), quot.clone(), proj);
        (quot, proj)
    }
}

/// Smallest arrow-stable subspace tuple containing the given `(vertex, vector)` generators.
pub fn generated_submodule(m: &Representation, gens: &[(usize, Vec<u8>)]) -> Result<SubRep> {
    let p = m.p();
    let mut bases: Vec<Vec<Vec<u8>>> = vec![Vec::new(); m.dims().len()];
    let mut spaces: Vec<Subspace> = m.dims().iter().map(|&d| Subspace::zero(p, d)).collect();
    let mut queue: VecDeque<(usize, Vec<u8>)> = VecDeque::new();
    for (v, x) in gens {
        if *v >= m.dims().len() || x.len() != m.dim(*v) {
            return Err(Error::Shape(format!("generator at vertex {v} has the wrong length")));
        }
        queue.push_back((*v, x.iter().map(|&e| e % p).collect()));
    }
    let out_arrows: Vec<Vec<usize>> = (0..m.dims().len())
        .map(|v| {
            m.algebra()
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.source == v)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    while let Some((v, x)) = queue.pop_front() {
        if spaces[v].contains_vector(&x) {
            continue;
        }
        for &i in &out_arrows[v] {
            queue.push_back((m.algebra().arrows()[i].target, m.mat(i).mul_vec(&x)));
        }
        bases[v].push(x);
        spaces[v] = Subspace::from_vectors(p, m.dim(v), &bases[v]);
    }
    Ok(SubRep::from_parts(m.clone(), spaces))
}

/// Every submodule of `m`, sorted by (dimension vector, RREF key).
///
/// Built as the closure of the cyclic submodules under sums: every submodule is
/// generated by homogeneous vectors, hence is a sum of cyclic ones.
pub fn all_submodules(m: &Representation, cap: usize) -> Result<Vec<SubRep>> {
    let total = m.total_dim();
    if total > cap {
        return Err(Error::CapExceeded {
            what: "total dimension for submodule enumeration",
            value: total,
            cap,
        });
    }
    let p = m.p();
    let mut seen: HashSet<Vec<Subspace>> = HashSet::new();
    let mut cyclic: Vec<SubRep> = Vec::new();
    for v in 0..m.dims().len() {
        for x in all_vectors(p, m.dim(v)) {
            // one generator per line: leading nonzero entry equal to 1
            if x.iter().find(|&&e| e != 0) != Some(&1) {
                continue;
            }
            let s = generated_submodule(m, &[(v, x)])?;
            if seen.insert(s.spaces.clone()) {
                cyclic.push(s);
            }
        }
    }
    let zero = SubRep::zero(m);
    seen.insert(zero.spaces.clone());
    let mut all = vec![zero];
    all.extend(cyclic.iter().cloned());
    let mut queue: VecDeque<usize> = (1..all.len()).collect();
    while let Some(i) = queue.pop_front() {
        for c in &cyclic {
            if all[i].contains(c) {
                continue;
            }
            let s = all[i].sum(c);
            if seen.insert(s.spaces.clone()) {
                all.push(s);
                queue.push_back(all.len() - 1);
            }
        }
    }
    all.sort_by(|a, b| (a.dims(), &a.spaces).cmp(&(b.dims(), &b.spaces)));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{direct_sum, is_isomorphic, Algebra, Arrow};
    use super::*;
    use crate::linalg::all_subspaces;
    use std::sync::Arc;

    /// Filters every subspace tuple for arrow-stability.
    fn brute_force_submodules(m: &Representation) -> Vec<SubRep> {
        let p = m.p();
        let per_vertex: Vec<Vec<Subspace>> = m.dims().iter().map(|&d| all_subspaces(p, d, d)).collect();
        let mut tuples: Vec<Vec<Subspace>> = vec![Vec::new()];
        for options in &per_vertex {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    options.iter().map(move |s| {
                        let mut t = t.clone();
                        t.push(s.clone());
                        t
                    })
                })
                .collect();
        }
        let mut out: Vec<SubRep> = tuples
            .into_iter()
            .filter_map(|t| SubRep::new(m.clone(), t).ok())
            .collect();
        out.sort_by(|a, b| (a.dims(), &a.spaces).cmp(&(b.dims(), &b.spaces)));
        out
    }

    #[test]
    fn submodule_counts() {
        let (a, b, _) = a2_modules();
        assert_eq!(all_submodules(&a, 12).unwrap().len(), 2);
        let subs = all_submodules(&b, 12).unwrap();
        assert_eq!(subs.len(), 3);
        assert_eq!(subs[1].dims(), vec![0, 1]);

        let u = uniserial(2, 3);
        let subs = all_submodules(&truncation(&u, 3), 12).unwrap();
        assert_eq!(subs.len(), 4);
        for w in subs.windows(2) {
            assert!(w[1].contains(&w[0]));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let u = uniserial(2, 4);
        let m = truncation(&u, 4);
        let big = direct_sum(&u, &[&m, &m, &m, &m]).unwrap().sum;
        assert!(matches!(all_submodules(&big, 12), Err(Error::CapExceeded { value: 16, .. })));
    }

    #[test]
    fn generated_submodule_examples() {
        let (_, b, _) = a2_modules();
        assert!(generated_submodule(&b, &[]).unwrap().is_zero());
        assert!(generated_submodule(&b, &[(0, vec![1])]).unwrap().is_whole());
        assert_eq!(generated_submodule(&b, &[(1, vec![1])]).unwrap().dims(), vec![0, 1]);
        assert!(generated_submodule(&b, &[(1, vec![1, 0])]).is_err());
    }

    #[test]
    fn sub_and_quotient_examples() {
        let (a, b, c) = a2_modules();
        let zero = SubRep::zero(&b);
        assert!(zero.sub_to_rep().0.is_zero());
        assert_eq!(zero.quotient().0, b);
        let whole = SubRep::whole(&b);
        assert!(is_isomorphic(&whole.sub_to_rep().0, &b, 16).unwrap());
        assert!(whole.quotient().0.is_zero());

        let line = generated_submodule(&b, &[(1, vec![1])]).unwrap();
        let (s, inc) = line.sub_to_rep();
        let (q, proj) = line.quotient();
        assert!(is_isomorphic(&s, &a, 16).unwrap());
        assert!(is_isomorphic(&q, &c, 16).unwrap());
        assert!(inc.then(&proj).unwrap().is_zero());
        assert_eq!(proj.kernel().spaces(), line.spaces());
    }

    #[test]
    fn non_stable_tuples_are_rejected() {
        let (_, b, _) = a2_modules();
        let spaces = vec![Subspace::whole(2, 1), Subspace::zero(2, 1)];
        assert!(matches!(SubRep::new(b, spaces), Err(Error::NotArrowStable(_))));
    }

    #[test]
    fn cyclic_closure_matches_brute_force() {
        let (a, b, c) = a2_modules();
        let alg = b.algebra().clone();
        let mut samples = vec![
            b.clone(),
            direct_sum(&alg, &[&a, &c]).unwrap().sum,
            direct_sum(&alg, &[&b, &b]).unwrap().sum,
            direct_sum(&alg, &[&b, &a, &c]).unwrap().sum,
        ];
        let u = uniserial(2, 4);
        samples.push(truncation(&u, 4));
        samples.push(direct_sum(&u, &[&truncation(&u, 2), &truncation(&u, 2)]).unwrap().sum);
        samples.push(direct_sum(&u, &[&truncation(&u, 1), &truncation(&u, 3)]).unwrap().sum);
        let a3 = Arc::new(
            Algebra::new(
                2,
                vec!["1".into(), "2".into(), "3".into()],
                vec![
                    Arrow { name: "a".into(), source: 0, target: 1 },
                    Arrow { name: "b".into(), source: 1, target: 2 },
                ],
                vec![],
            )
            .unwrap(),
        );
        samples.push(rep(&a3, &[1, 2, 1], &[vec![vec![1], vec![0]], vec![vec![1, 1]]]));
        samples.push(rep(&a3, &[1, 1, 1], &[vec![vec![1]], vec![vec![1]]]));
        for m in samples {
            assert!(m.total_dim() <= 4);
            assert_eq!(all_submodules(&m, 12).unwrap(), brute_force_submodules(&m), "{m:?}");
        }
    }

    #[test]
    fn odd_characteristic_submodules() {
        let u = uniserial(3, 2);
        let m = direct_sum(&u, &[&truncation(&u, 1), &truncation(&u, 1)]).unwrap().sum;
        // 0, four lines, whole space in F_3^2
        assert_eq!(all_submodules(&m, 12).unwrap().len(), 6);
        assert_eq!(all_submodules(&m, 12).unwrap(), brute_force_submodules(&m));
    }
}
