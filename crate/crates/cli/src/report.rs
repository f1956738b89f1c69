//! The serializable result of a pipeline run, and its JSON, LaTeX and text
//! renderings.

use std::fmt::Write as _;

use lieinv::exactmath::latex_name;
use lieinv::weyl::BlockSource;
use lieinv::{Poly, Variables};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::pipeline::Run;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantReport {
    pub schema_version: u32,
    pub algebra: String,
    pub scope: String,
    pub labels: Vec<String>,
    pub generators: Vec<String>,
    pub settings: Settings,
    pub weights: Vec<WeightEntry>,
    pub hilbert_basis: HilbertReport,
    pub weyl: WeylReport,
    pub blocks: Vec<BlockReport>,
    pub degrees: Vec<DegreeReport>,
    pub invariants: Vec<InvariantEntry>,
    pub syzygies: Vec<SyzygyEntry>,
    pub references: Vec<ReferenceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub max_degree: u32,
    pub degree_cap: u32,
    pub closure_reynolds: bool,
    pub syzygy_cap: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightEntry {
    pub label: String,
    pub weight: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertReport {
    pub monomials: Vec<String>,
    pub degree_cap: u32,
    /// Some generator may exceed the cap.
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylReport {
    pub operators: Vec<OperatorEntry>,
    pub closure_order: usize,
    pub reynolds_size: usize,
    pub cartan_consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorEntry {
    pub name: String,
    /// Generator indices, 1-based, in multiplication order.
    pub word: Vec<usize>,
    /// `[label, image]` of every basis element that moves.
    pub images: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockReport {
    pub name: String,
    pub degree: u32,
    pub source: Vec<String>,
    pub initial: bool,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeReport {
    pub degree: u32,
    pub blocks: Vec<String>,
    pub equations: usize,
    pub kernel_dim: usize,
    pub decomposable_dim: usize,
    pub new: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantEntry {
    pub name: String,
    pub degree: u32,
    /// Coordinates over the blocks of this degree.
    pub kernel_vector: Vec<i64>,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyzygyEntry {
    pub degree: u32,
    pub relation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceEntry {
    pub name: String,
    pub degree: u32,
    pub in_span: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesReport {
    pub weights: Vec<i64>,
    pub molien: Vec<i64>,
    pub kernel_dims: Vec<usize>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub total_ms: f64,
}

fn small<T: ToPrimitive + std::fmt::Display>(x: &T, what: &str) -> Result<i64, CliError> {
    x.to_i64().ok_or_else(|| CliError::Overflow(format!("{what} entry {x} does not fit in 64 bits")))
}

fn monomial_string(vars: &Variables, m: &lieinv::Monomial) -> String {
    m.display(vars).to_string()
}

impl InvariantReport {
    pub fn from_run(run: &Run, timing: Option<Timing>) -> Result<Self, CliError> {
        let vars = run.algebra.variables();
        let labels = run.algebra.labels().to_vec();
        let operators = run
            .operators
            .ops
            .iter()
            .map(|op| OperatorEntry {
                name: op.name.clone(),
                word: op.word.clone(),
                images: op
                    .images(vars)
                    .iter()
                    .enumerate()
                    .filter(|(j, p)| **p != Poly::var(vars.clone(), *j))
                    .map(|(j, p)| [labels[j].clone(), p.to_string()])
                    .collect(),
            })
            .collect();
        let blocks = run
            .blocks
            .iter()
            .map(|b| BlockReport {
                name: b.name(),
                degree: b.degree,
                source: b.source.factors().iter().map(|m| monomial_string(vars, m)).collect(),
                initial: matches!(b.source, BlockSource::Initial(_)),
                poly: b.poly.to_string(),
            })
            .collect();
        let degrees = run
            .degrees
            .iter()
            .map(|d| DegreeReport {
                degree: d.system.degree,
                blocks: d.system.blocks.iter().map(|b| b.name()).collect(),
                equations: d.system.rows.len(),
                kernel_dim: d.kernel.len(),
                decomposable_dim: d.decomposable_dim,
                new: d.new.iter().map(|i| i.name.clone()).collect(),
            })
            .collect();
        let invariants = run
            .invariants()
            .map(|i| {
                Ok(InvariantEntry {
                    name: i.name.clone(),
                    degree: i.degree,
                    kernel_vector: i
                        .kernel_vector
                        .iter()
                        .map(|x| small(x, "kernel vector"))
                        .collect::<Result<_, _>>()?,
                    poly: i.poly.to_string(),
                })
            })
            .collect::<Result<_, CliError>>()?;
        let series = match &run.series {
            Some(s) => Some(SeriesReport {
                weights: s.weights.clone(),
                molien: s.molien.iter().map(|x| small(x, "Molien")).collect::<Result<_, _>>()?,
                kernel_dims: s.kernel_dims.clone(),
                agrees: s.agrees(),
            }),
            None => None,
        };
        Ok(InvariantReport {
            schema_version: SCHEMA_VERSION,
            algebra: run.algebra_name.clone(),
            scope: run.scope.clone(),
            generators: run.generators.iter().map(|&g| labels[g].clone()).collect(),
            settings: Settings {
                max_degree: run.max_degree,
                degree_cap: run.options.degree_cap,
                closure_reynolds: run.options.closure_reynolds,
                syzygy_cap: run.syzygy_cap,
            },
            weights: labels
                .iter()
                .enumerate()
                .map(|(j, l)| WeightEntry { label: l.clone(), weight: run.torus.weight(j).to_vec() })
                .collect(),
            hilbert_basis: HilbertReport {
                monomials: run.hilbert.monomials.iter().map(|m| monomial_string(vars, m)).collect(),
                degree_cap: run.hilbert.degree_cap,
                truncated: run.hilbert.truncated,
            },
            weyl: WeylReport {
                operators,
                closure_order: run.closure_order,
                reynolds_size: run.reynolds_set.len(),
                cartan_consistent: run.consistency.ok(),
            },
            blocks,
            degrees,
            invariants,
            syzygies: run
                .syzygies
                .iter()
                .map(|s| SyzygyEntry { degree: s.degree, relation: s.relation.to_string() })
                .collect(),
            references: run
                .references
                .iter()
                .map(|r| ReferenceEntry {
                    name: r.name.clone(),
                    degree: r.degree,
                    in_span: r.in_span,
                    expression: r.expression.as_ref().map(|e| e.to_string()),
                })
                .collect(),
            series,
            timing,
            labels,
        })
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed report: {e}")))
    }

    fn parse(&self, text: &str, vars: &Variables) -> Result<Poly, CliError> {
        Poly::parse(text, vars).map_err(|e| CliError::Input(format!("report polynomial `{text}`: {e}")))
    }

    /// An `align*` environment: blocks, then invariants, syzygies and
    /// reference expressions. One equation per line.
    pub fn to_latex(&self) -> Result<String, CliError> {
        let vars = Variables::new(self.labels.clone());
        let inv_vars = Variables::new(self.invariants.iter().map(|i| i.name.clone()));
        let mut s = String::new();
        let _ = writeln!(s, "% {} ({})", self.algebra, self.scope);
        s.push_str("\\begin{align*}\n");
        for b in &self.blocks {
            let _ = writeln!(s, "{} &= {} \\\\", latex_label(&b.name), self.parse(&b.poly, &vars)?.to_latex());
        }
        for i in &self.invariants {
            let _ = writeln!(s, "{} &= {} \\\\", latex_label(&i.name), self.parse(&i.poly, &vars)?.to_latex());
        }
        for z in &self.syzygies {
            let _ = writeln!(s, "0 &= {} \\\\", self.parse(&z.relation, &inv_vars)?.to_latex());
        }
        for r in &self.references {
            if let Some(e) = &r.expression {
                let _ = writeln!(
                    s,
                    "{}^{{\\mathrm{{ref}}}} &= {} \\\\",
                    latex_label(&r.name),
                    self.parse(e, &inv_vars)?.to_latex()
                );
            }
        }
        s.push_str("\\end{align*}\n");
        Ok(s)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra {} scope {}", self.algebra, self.scope);
        let _ = writeln!(
            s,
            "hilbert basis (cap {}): {}",
            self.hilbert_basis.degree_cap,
            self.hilbert_basis.monomials.join(", ")
        );
        let _ = writeln!(
            s,
            "weyl operators: {} (closure order {}, Rey over {})",
            self.weyl.operators.len(),
            self.weyl.closure_order,
            self.weyl.reynolds_size
        );
        for b in &self.blocks {
            let _ = writeln!(s, "  {} = {}", b.name, b.poly);
        }
        for d in &self.degrees {
            let _ = writeln!(
                s,
                "degree {}: {} blocks, {} equations, kernel {}, decomposable {}, new [{}]",
                d.degree,
                d.blocks.len(),
                d.equations,
                d.kernel_dim,
                d.decomposable_dim,
                d.new.join(", ")
            );
        }
        for i in &self.invariants {
            let v: Vec<String> = i.kernel_vector.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{} = {}  [kernel ({})]", i.name, i.poly, v.join(","));
        }
        for z in &self.syzygies {
            let _ = writeln!(s, "syzygy (degree {}): {} = 0", z.degree, z.relation);
        }
        for r in &self.references {
            match &r.expression {
                Some(e) => {
                    let _ = writeln!(s, "reference {} = {} (in computed invariants)", r.name, e);
                }
                None => {
                    let _ = writeln!(s, "reference {}: in span {}", r.name, r.in_span);
                }
            }
        }
        if let Some(series) = &self.series {
            let m: Vec<String> = series.molien.iter().map(|x| x.to_string()).collect();
            let k: Vec<String> = series.kernel_dims.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "molien: {}", m.join(","));
            let _ = writeln!(s, "kernel dims: {} (agree: {})", k.join(","), series.agrees);
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(s, "time: {:.1} ms", t.total_ms);
        }
        s
    }
}

/// `C2` → `C_{2}`, `C3_1` → `C_{3,1}`, `w2_1` → `w_{2,1}`.
pub fn latex_label(name: &str) -> String {
    match name.split_once('_') {
        Some((head, tail)) => {
            let split = head.trim_end_matches(|c: char| c.is_ascii_digit()).len();
            let (base, idx) = head.split_at(split);
            format!("{base}_{{{idx},{tail}}}")
        }
        None => latex_name(name),
    }
}
