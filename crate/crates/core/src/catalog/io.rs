//! JSON formats for algebras, modules and catalog exports.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{Algebra, Arrow, PathTerm, Representation};

use super::{Catalog, Limits};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field_char: u32,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowFile>,
    #[serde(default)]
    pub relations: Vec<Vec<TermFile>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowFile {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogExport {
    pub algebra: AlgebraFile,
    pub indecomposables: Vec<NamedModule>,
    pub hom_dims: Vec<Vec<usize>>,
    pub ext_table: Vec<ExtEntry>,
    pub simples: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedModule {
    pub name: String,
    #[serde(flatten)]
    pub module: ModuleFile,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtEntry {
    pub sub: String,
    pub quotient: String,
    pub middle_terms: Vec<BTreeMap<String, usize>>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, file: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        file: file.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn in_file(file: &str) -> impl FnOnce(Error) -> Error + '_ {
    move |e| match e {
        e @ Error::Parse { .. } => e,
        e => Error::InFile {
            file: file.to_string(),
            source: Box::new(e),
        },
    }
}

pub fn parse_algebra(text: &str, file: &str) -> Result<Algebra> {
    let f: AlgebraFile = parse_json(text, file)?;
    algebra_from_file(&f).map_err(in_file(file))
}

pub fn algebra_from_file(f: &AlgebraFile) -> Result<Algebra> {
    let vertex = |name: &str| {
        f.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::InvalidAlgebra(format!("unknown vertex {name:?}")))
    };
    let arrows = f
        .arrows
        .iter()
        .map(|a| {
            Ok(Arrow {
                name: a.name.clone(),
                source: vertex(&a.from)?,
                target: vertex(&a.to)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let p = crate::linalg::check_prime(f.field_char)? as i64;
    let relations = f
        .relations
        .iter()
        .map(|rel| {
            rel.iter()
                .map(|t| {
                    let path = t
                        .path
                        .iter()
                        .map(|a| {
                            arrows
                                .iter()
                                .position(|x| &x.name == a)
                                .ok_or_else(|| Error::InvalidAlgebra(format!("unknown arrow {a:?} in relation")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(PathTerm {
                        coeff: t.coeff.rem_euclid(p) as u8,
                        path,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Algebra::new(f.field_char, f.vertices.clone(), arrows, relations)
}

pub fn algebra_to_file(alg: &Algebra) -> AlgebraFile {
    AlgebraFile {
        field_char: alg.p() as u32,
        vertices: alg.vertices().to_vec(),
        arrows: alg
            .arrows()
            .iter()
            .map(|a| ArrowFile {
                name: a.name.clone(),
                from: alg.vertices()[a.source].clone(),
                to: alg.vertices()[a.target].clone(),
            })
            .collect(),
        relations: alg
            .relations()
            .iter()
            .map(|rel| {
                rel.iter()
                    .map(|t| TermFile {
                        coeff: t.coeff as i64,
                        path: t.path.iter().map(|&a| alg.arrows()[a].name.clone()).collect(),
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn parse_module(text: &str, file: &str, alg: &Arc<Algebra>) -> Result<Representation> {
    let f: ModuleFile = parse_json(text, file)?;
    module_from_file(&f, alg).map_err(in_file(file))
}

/// Missing vertices have dimension 0; a missing matrix is allowed only when it is empty.
pub fn module_from_file(f: &ModuleFile, alg: &Arc<Algebra>) -> Result<Representation> {
    for v in f.dims.keys() {
        if alg.vertex_index(v).is_none() {
            return Err(Error::Shape(format!("unknown vertex {v:?}")));
        }
    }
    for a in f.matrices.keys() {
        if alg.arrow_index(a).is_none() {
            return Err(Error::Shape(format!("unknown arrow {a:?}")));
        }
    }
    let dims: Vec<usize> = alg.vertices().iter().map(|v| f.dims.get(v).copied().unwrap_or(0)).collect();
    let p = alg.p();
    let mats = alg
        .arrows()
        .iter()
        .map(|a| {
            let (rows, cols) = (dims[a.target], dims[a.source]);
            match f.matrices.get(&a.name) {
                None if rows * cols == 0 => Ok(Matrix::zeros(p, rows, cols)),
                None => Err(Error::Shape(format!("missing matrix for arrow {:?}", a.name))),
                Some(m) if m.is_empty() && rows * cols == 0 => Ok(Matrix::zeros(p, rows, cols)),
                Some(m) => {
                    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                        return Err(Error::Shape(format!(
                            "matrix for arrow {:?} must be {rows}x{cols}",
                            a.name
                        )));
                    }
                    Ok(Matrix::from_rows(p, cols, m)?)
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(alg.clone(), dims, mats)
}

pub fn module_to_file(m: &Representation) -> ModuleFile {
    let alg = m.algebra();
    ModuleFile {
        dims: alg.vertices().iter().cloned().zip(m.dims().iter().copied()).collect(),
        matrices: alg
            .arrows()
            .iter()
            .zip(m.mats())
            .map(|(a, x)| {
                let rows = x.to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect();
                (a.name.clone(), rows)
            })
            .collect(),
    }
}

/// Loads an algebra file and one module per `*.json` file in `dir`, named by file stem,
/// in lexicographic file order.
pub fn load_catalog(algebra_path: &Path, dir: &Path, limits: Limits) -> Result<Catalog> {
    let label = algebra_path.display().to_string();
    let alg = Arc::new(parse_algebra(&read(algebra_path)?, &label)?);
    let entries = std::fs::read_dir(dir).map_err(|source| Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut names = Vec::with_capacity(files.len());
    let mut indecs = Vec::with_capacity(files.len());
    for f in &files {
        let label = f.display().to_string();
        indecs.push(parse_module(&read(f)?, &label, &alg)?);
        names.push(f.file_stem().unwrap().to_string_lossy().into_owned());
    }
    Catalog::new(alg, names, indecs, limits)
}

impl Catalog {
    pub fn export(&self) -> CatalogExport {
        let n = self.len();
        let mut ext_table = Vec::new();
        for i in 0..n {
            for j in 0..n {
                ext_table.push(ExtEntry {
                    sub: self.names[i].clone(),
                    quotient: self.names[j].clone(),
                    middle_terms: self.ext_table[i][j]
                        .iter()
                        .map(|id| id.entries().map(|(k, m)| (self.names[k].clone(), m)).collect())
                        .collect(),
                });
            }
        }
        CatalogExport {
            algebra: algebra_to_file(&self.algebra),
            indecomposables: self
                .names
                .iter()
                .zip(&self.indecs)
                .map(|(name, m)| NamedModule {
                    name: name.clone(),
                    module: module_to_file(m),
                })
                .collect(),
            hom_dims: self.hom_dims.clone(),
            ext_table,
            simples: self.simples.iter().map(|&i| self.names[i].clone()).collect(),
        }
    }
}
