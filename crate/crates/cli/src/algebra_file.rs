//! JSON algebra definitions and the built-in algebras.

use std::collections::BTreeMap;
use std::path::Path;

use lieinv::exactmath::ExactField;
use lieinv::liealg::{build_sl, sl2_in_sl3, SlTriple};
use lieinv::{LieAlgebra, Poly, RatMatrix, Rational, SubgroupEmbedding};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Names accepted in place of a file path.
pub const BUILTINS: &[&str] = &["sl2", "sl3"];

/// A rational written either as a JSON integer or as a string `"p/q"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatEntry {
    Int(i64),
    Text(String),
}

impl RatEntry {
    fn from_rational(r: &Rational) -> Self {
        match (r.is_integer(), num_traits::ToPrimitive::to_i64(r.numer())) {
            (true, Some(n)) => RatEntry::Int(n),
            _ => RatEntry::Text(r.to_string()),
        }
    }

    fn to_rational(&self, field: &str) -> Result<Rational, CliError> {
        match self {
            RatEntry::Int(n) => Ok(Rational::from_i64(*n)),
            RatEntry::Text(s) => s
                .trim()
                .parse::<Rational>()
                .map_err(|_| CliError::Input(format!("{field}: `{s}` is not a rational number"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingFile {
    pub name: String,
    /// Subgroup generators, as indices into the new basis.
    pub generator_indices: Vec<usize>,
    /// Row `a` = parent coordinates of new basis element `a`.
    pub basis_change: Vec<Vec<RatEntry>>,
    pub sub_cartan: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    /// Sparse `[i, j, k, num, den]`: `c_ij^k = num/den`. Missing entries are zero.
    pub structure: Vec<[i64; 5]>,
    pub cartan: Vec<usize>,
    /// `[x, y, h]` index triples.
    #[serde(default)]
    pub triples: Vec<[usize; 3]>,
    #[serde(default)]
    pub embeddings: Vec<EmbeddingFile>,
    /// Known invariants per scope (`"full"` or an embedding name), as
    /// polynomial strings over that scope's labels. Compared by span.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub references: BTreeMap<String, BTreeMap<String, String>>,
}

/// A validated algebra with its embeddings and reference invariants.
#[derive(Clone, Debug)]
pub struct LoadedAlgebra {
    pub algebra: LieAlgebra,
    pub embeddings: Vec<SubgroupEmbedding>,
    pub references: BTreeMap<String, BTreeMap<String, String>>,
}

impl LoadedAlgebra {
    pub fn embedding(&self, name: &str) -> Result<&SubgroupEmbedding, CliError> {
        self.embeddings
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| CliError::Input(format!("algebra {} has no embedding `{name}`", self.algebra.name())))
    }
}

fn index(field: &str, i: i64, dim: usize) -> Result<usize, CliError> {
    usize::try_from(i)
        .ok()
        .filter(|&u| u < dim)
        .ok_or_else(|| CliError::Input(format!("{field}: index {i} out of range for dimension {dim}")))
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if path == "." {
                CliError::Input(format!("malformed algebra file: {inner}"))
            } else {
                CliError::Input(format!("malformed algebra file: field `{path}`: {inner}"))
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra files serialize")
    }

    /// Builds and validates the algebra and its embeddings.
    pub fn build(&self) -> Result<LoadedAlgebra, CliError> {
        if self.labels.len() != self.dim {
            return Err(CliError::Input(format!("labels: expected {} entries, found {}", self.dim, self.labels.len())));
        }
        let n = self.dim;
        let mut consts = Vec::with_capacity(self.structure.len());
        for (pos, &[i, j, k, num, den]) in self.structure.iter().enumerate() {
            let field = format!("structure[{pos}]");
            if den == 0 {
                return Err(CliError::Input(format!("{field}: zero denominator")));
            }
            consts.push((
                index(&field, i, n)?,
                index(&field, j, n)?,
                index(&field, k, n)?,
                Rational::from_ints(num, den),
            ));
        }
        let triples = self.triples.iter().map(|&[x, y, h]| SlTriple { x, y, h }).collect();
        let algebra = LieAlgebra::new(self.name.clone(), self.labels.clone(), consts, self.cartan.clone(), triples)
            .map_err(CliError::Validation)?;
        let mut embeddings = Vec::new();
        for e in &self.embeddings {
            let field = format!("embeddings.{}.basis_change", e.name);
            if e.basis_change.len() != n || e.basis_change.iter().any(|r| r.len() != n) {
                return Err(CliError::Input(format!("{field}: expected a {n}x{n} matrix")));
            }
            let rows = e
                .basis_change
                .iter()
                .map(|r| r.iter().map(|x| x.to_rational(&field)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            embeddings.push(SubgroupEmbedding {
                name: e.name.clone(),
                generator_indices: e.generator_indices.clone(),
                basis_change: RatMatrix::from_rows(rows).map_err(|err| CliError::Input(format!("{field}: {err}")))?,
                sub_cartan: e.sub_cartan.clone(),
                labels: e.labels.clone(),
            });
        }
        let loaded = LoadedAlgebra { algebra, embeddings, references: self.references.clone() };
        for e in &loaded.embeddings {
            lieinv::liealg::embed_subalgebra(&loaded.algebra, e).map_err(CliError::Validation)?;
        }
        Ok(loaded)
    }

    pub fn from_algebra(g: &LieAlgebra, embeddings: &[SubgroupEmbedding]) -> Self {
        let structure = g
            .nonzero_constants()
            .into_iter()
            .map(|(i, j, k, c)| {
                let num = num_traits::ToPrimitive::to_i64(c.numer()).expect("small structure constants");
                let den = num_traits::ToPrimitive::to_i64(c.denom()).expect("small structure constants");
                [i as i64, j as i64, k as i64, num, den]
            })
            .collect();
        AlgebraFile {
            name: g.name().to_string(),
            dim: g.dim(),
            labels: g.labels().to_vec(),
            structure,
            cartan: g.cartan().to_vec(),
            triples: g.triples().iter().map(|t| [t.x, t.y, t.h]).collect(),
            embeddings: embeddings
                .iter()
                .map(|e| EmbeddingFile {
                    name: e.name.clone(),
                    generator_indices: e.generator_indices.clone(),
                    basis_change: (0..e.basis_change.rows())
                        .map(|r| e.basis_change.row(r).iter().map(RatEntry::from_rational).collect())
                        .collect(),
                    sub_cartan: e.sub_cartan.clone(),
                    labels: e.labels.clone(),
                })
                .collect(),
            references: BTreeMap::new(),
        }
    }
}

fn refs(entries: &[(&str, &str)]) -> BTreeMap<String, String> {
    entries.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

/// The generated definition of a built-in algebra.
pub fn builtin(name: &str) -> Option<AlgebraFile> {
    match name {
        "sl2" => Some(AlgebraFile::from_algebra(&build_sl::<Rational>(2), &[])),
        "sl3" => {
            let mut f = AlgebraFile::from_algebra(&build_sl::<Rational>(3), &[sl2_in_sl3()]);
            f.references.insert(
                "full".into(),
                refs(&[
                    ("C2", "3*(x1*y1 + x2*y2 + x3*y3) + h1^2 + h1*h2 + h2^2"),
                    ("C3", "27*(x1*x2*y3 + x3*y1*y2) + 2*h1^3 + 3*h1^2*h2 - 3*h1*h2^2 - 2*h2^3 + 9*(x1*y1*(h1 + 2*h2) - x2*y2*(2*h1 + h2) + x3*y3*(h1 - h2))"),
                ]),
            );
            f.references.insert(
                "sl2".into(),
                refs(&[
                    ("I1", "h0"),
                    ("I2", "h1^2 + 4*x1*y1"),
                    ("I3", "x2*y2 + x3*y3"),
                    ("I4", "h1*y2*y3 + y1*y2^2 - x1*y3^2"),
                    ("I5", "h1*x2*x3 + x1*x2^2 - x3^2*y1"),
                    ("I6", "h1*(x2*y2 - x3*y3) - 2*(y1*y2*x3 + x1*x2*y3)"),
                ]),
            );
            Some(f)
        }
        _ => None,
    }
}

/// Loads a built-in by name or a JSON file by path. Built-ins are
/// serialized and re-read so both go through the same parser.
pub fn resolve(source: &str) -> Result<LoadedAlgebra, CliError> {
    let file = match builtin(source) {
        Some(f) => AlgebraFile::from_json(&f.to_json())?,
        None => AlgebraFile::load(Path::new(source))?,
    };
    file.build()
}

/// Parses the reference invariants of a scope over the given algebra's labels.
pub fn parse_references(
    loaded: &LoadedAlgebra,
    scope: &str,
    target: &LieAlgebra,
) -> Result<Vec<(String, Poly)>, CliError> {
    let Some(map) = loaded.references.get(scope) else {
        return Ok(Vec::new());
    };
    map.iter()
        .map(|(name, text)| {
            Poly::parse(text, target.variables())
                .map(|p| (name.clone(), p))
                .map_err(|e| CliError::Input(format!("references.{scope}.{name}: {e}")))
        })
        .collect()
}
