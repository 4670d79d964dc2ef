use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{Algebra, Arrow, PathTerm, Representation};

use super::{Catalog, Limits};

/// Built-in representation-finite algebras with complete catalogs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `1 -> 2` with modules named `A = S2`, `B = P1`, `C = S1`.
    A2,
    /// Type `A_n` with one orientation letter per arrow: `r` for `i -> i+1`,
    /// `l` for `i+1 -> i`. Indecomposables are the interval modules `I<a><b>`.
    An { n: usize, orientation: String },
    /// One vertex, one loop `x`, relation `x^n`; modules `U1..Un`.
    Uniserial { n: usize },
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidBuiltin(s.to_string(), why.to_string());
        let parse_n = |t: &str| t.parse::<usize>().map_err(|_| bad("expected a positive integer"));
        if s == "a2" {
            return Ok(Builtin::A2);
        }
        if let Some(rest) = s.strip_prefix("uniserial:") {
            let n = parse_n(rest)?;
            if n == 0 || n > 64 {
                return Err(bad("length must be between 1 and 64"));
            }
            return Ok(Builtin::Uniserial { n });
        }
        let (n, orientation) = if let Some(rest) = s.strip_prefix("an:") {
            let mut parts = rest.splitn(2, ':');
            let n = parse_n(parts.next().unwrap_or(""))?;
            (n, parts.next().unwrap_or("").to_string())
        } else if let Some(rest) = s.strip_prefix('a') {
            let n = parse_n(rest)?;
            (n, "r".repeat(n.saturating_sub(1)))
        } else {
            return Err(bad("expected a2, a<n>, an:<n>:<word> or uniserial:<n>"));
        };
        if n == 0 {
            return Err(bad("n must be positive"));
        }
        if n * (n + 1) / 2 > 64 {
            return Err(bad("catalog would exceed 64 indecomposables"));
        }
        if orientation.len() != n - 1 || !orientation.chars().all(|c| c == 'r' || c == 'l') {
            return Err(bad("orientation must have n-1 letters from {r, l}"));
        }
        Ok(Builtin::An { n, orientation })
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::A2 => write!(f, "a2"),
            Builtin::An { n, orientation } => write!(f, "an:{n}:{orientation}"),
            Builtin::Uniserial { n } => write!(f, "uniserial:{n}"),
        }
    }
}

impl Builtin {
    pub fn build(&self, field_char: u32, limits: Limits) -> Result<Catalog> {
        match self {
            Builtin::A2 => {
                let alg = type_a(field_char, 2, "r", |_| "a".to_string())?;
                let names = ["A", "B", "C"].map(String::from).to_vec();
                let indecs = [(2, 2), (1, 2), (1, 1)].iter().map(|&(a, b)| interval(&alg, a, b)).collect();
                Catalog::new(alg, names, indecs, limits)
            }
            Builtin::An { n, orientation } => {
                let alg = type_a(field_char, *n, orientation, |i| format!("a{}", i + 1))?;
                let mut intervals: Vec<(usize, usize)> = (1..=*n).flat_map(|a| (a..=*n).map(move |b| (a, b))).collect();
                intervals.sort_by_key(|&(a, b)| (b - a, a));
                let names = intervals
                    .iter()
                    .map(|&(a, b)| if *n <= 9 { format!("I{a}{b}") } else { format!("I{a}_{b}") })
                    .collect();
                let indecs = intervals.iter().map(|&(a, b)| interval(&alg, a, b)).collect();
                Catalog::new(alg, names, indecs, limits)
            }
            Builtin::Uniserial { n } => {
                let alg = Arc::new(Algebra::new(
                    field_char,
                    vec!["0".into()],
                    vec![Arrow {
                        name: "x".into(),
                        source: 0,
                        target: 0,
                    }],
                    vec![vec![PathTerm {
                        coeff: 1,
                        path: vec![0; *n],
                    }]],
                )?);
                let names = (1..=*n).map(|k| format!("U{k}")).collect();
                let indecs = (1..=*n).map(|k| jordan_block(&alg, k)).collect();
                Catalog::new(alg, names, indecs, limits)
            }
        }
    }
}

fn type_a(field_char: u32, n: usize, orientation: &str, arrow_name: impl Fn(usize) -> String) -> Result<Arc<Algebra>> {
    let vertices = (1..=n).map(|i| i.to_string()).collect();
    let arrows = orientation
        .chars()
        .enumerate()
        .map(|(i, c)| {
            let (source, target) = if c == 'r' { (i, i + 1) } else { (i + 1, i) };
            Arrow {
                name: arrow_name(i),
                source,
                target,
            }
        })
        .collect();
    Ok(Arc::new(Algebra::new(field_char, vertices, arrows, Vec::new())?))
}

/// Interval module supported on vertices `a..=b` (1-based), identity maps inside.
fn interval(alg: &Arc<Algebra>, a: usize, b: usize) -> Representation {
    let p = alg.p();
    let inside = |v: usize| (a - 1..b).contains(&v);
    let dims: Vec<usize> = (0..alg.num_vertices()).map(|v| inside(v) as usize).collect();
    let mats = alg
        .arrows()
        .iter()
        .map(|ar| {
            let m = Matrix::zeros(p, dims[ar.target], dims[ar.source]);
            if inside(ar.source) && inside(ar.target) {
                Matrix::identity(p, 1)
            } else {
                m
            }
        })
        .collect();
    Representation::new(alg.clone(), dims, mats).expect("interval modules satisfy no relations")
}

/// `k[x]/x^k` with basis `e_1..e_k` and `x e_i = e_{i+1}`.
fn jordan_block(alg: &Arc<Algebra>, k: usize) -> Representation {
    let x = Matrix::from_fn(alg.p(), k, k, |r, c| (r == c + 1) as i64);
    Representation::new(alg.clone(), vec![k], vec![x]).expect("nilpotent of order k")
}
