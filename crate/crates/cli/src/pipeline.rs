//! Runs the invariant construction for one scope of a loaded algebra.

use lieinv::exactmath::RowSpace;
use lieinv::liealg::{adjoint_data, embed_subalgebra};
use lieinv::series::molien_coefficients_su2;
use lieinv::solver::{decompose, find_syzygies, invariants_by_degree, named, DegreeSolution, Naming};
use lieinv::torus::{hilbert_basis, weights_from_cartan, HilbertBasis, TorusAction};
use lieinv::weyl::{
    build_weyl_operators, cartan_consistency_check, closure_set, group_closure_order, ConsistencyReport, CLOSURE_BOUND,
};
use lieinv::{AdjointData, Error, Integer, Invariant, LieAlgebra, Poly, Rational, Syzygy, WeylBlock, WeylOperatorSet};

use crate::algebra_file::{parse_references, LoadedAlgebra};
use crate::CliError;

/// Scope name of the full group.
pub const FULL: &str = "full";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Highest block degree; defaults to the largest Hilbert-basis degree.
    pub max_degree: Option<u32>,
    pub degree_cap: u32,
    /// Average over the whole closure group instead of the word set.
    pub closure_reynolds: bool,
    /// Weighted-degree bound for syzygies; defaults to twice the maximum degree.
    pub syzygy_cap: Option<u32>,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_degree: None, degree_cap: 3, closure_reynolds: false, syzygy_cap: None }
    }
}

/// How a reference invariant relates to the computed ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceCheck {
    pub name: String,
    pub degree: u32,
    /// In the span of the kernel of its degree.
    pub in_span: bool,
    /// As a polynomial in the computed new invariants, when one exists.
    pub expression: Option<Poly>,
}

/// Molien coefficients of a rank-one scope next to the kernel dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCheck {
    pub weights: Vec<i64>,
    pub molien: Vec<Integer>,
    /// Kernel dimension per degree, starting at degree 0.
    pub kernel_dims: Vec<usize>,
}

impl SeriesCheck {
    pub fn agrees(&self) -> bool {
        self.kernel_dims.iter().zip(&self.molien).all(|(&k, m)| Integer::from(k) == *m)
    }
}

#[derive(Clone, Debug)]
pub struct Run {
    pub algebra_name: String,
    pub scope: String,
    pub algebra: LieAlgebra,
    pub ad: AdjointData,
    pub generators: Vec<usize>,
    pub options: Options,
    pub max_degree: u32,
    pub syzygy_cap: u32,
    pub torus: TorusAction,
    pub hilbert: HilbertBasis,
    pub operators: WeylOperatorSet,
    /// The operator set Rey sums over.
    pub reynolds_set: WeylOperatorSet,
    pub closure_order: usize,
    pub consistency: ConsistencyReport,
    pub blocks: Vec<WeylBlock>,
    pub degrees: Vec<DegreeSolution<Rational>>,
    pub syzygies: Vec<Syzygy>,
    pub references: Vec<ReferenceCheck>,
    pub series: Option<SeriesCheck>,
}

impl Run {
    /// The new invariants of every degree, in order.
    pub fn invariants(&self) -> impl Iterator<Item = &Invariant> + '_ {
        self.degrees.iter().flat_map(|d| &d.new)
    }

    pub fn invariant(&self, name: &str) -> Option<&Invariant> {
        self.invariants().find(|i| i.name == name)
    }
}

/// The algebra a scope acts on, with its generator indices.
pub fn scope_algebra(loaded: &LoadedAlgebra, embedding: Option<&str>) -> Result<(LieAlgebra, Vec<usize>), CliError> {
    match embedding {
        None => Ok((loaded.algebra.clone(), (0..loaded.algebra.dim()).collect())),
        Some(name) => {
            let emb = loaded.embedding(name)?;
            let g = embed_subalgebra(&loaded.algebra, emb).map_err(CliError::Validation)?;
            Ok((g, emb.generator_indices.clone()))
        }
    }
}

fn pipeline_err(e: impl Into<Error>) -> CliError {
    CliError::Pipeline(e.into())
}

pub fn run(loaded: &LoadedAlgebra, embedding: Option<&str>, options: &Options) -> Result<Run, CliError> {
    let (algebra, generators) = scope_algebra(loaded, embedding)?;
    let scope = embedding.unwrap_or(FULL).to_string();
    let ad = adjoint_data(&algebra).map_err(pipeline_err)?;
    let torus = weights_from_cartan(&algebra).map_err(pipeline_err)?;
    let hilbert = hilbert_basis(&torus, options.degree_cap);
    let max_degree = options.max_degree.unwrap_or_else(|| hilbert.max_degree());
    let operators = build_weyl_operators(&algebra, &ad).map_err(pipeline_err)?;
    let closure_order = group_closure_order(&operators, CLOSURE_BOUND).map_err(pipeline_err)?;
    let reynolds_set = if options.closure_reynolds {
        closure_set(&operators, CLOSURE_BOUND).map_err(pipeline_err)?
    } else {
        operators.clone()
    };
    let consistency = cartan_consistency_check(&operators, &algebra);
    let blocks = lieinv::weyl::generate_weyl_blocks(&reynolds_set, &hilbert, max_degree);
    let naming = if embedding.is_none() { Naming::Casimir } else { Naming::Sequential };
    let degrees = invariants_by_degree(&ad, &generators, &blocks, max_degree, naming).map_err(pipeline_err)?;

    let new: Vec<Invariant> = degrees.iter().flat_map(|d| d.new.iter().cloned()).collect();
    let syzygy_cap = options.syzygy_cap.unwrap_or(2 * max_degree);
    let syzygies = if new.len() < 2 { Vec::new() } else { find_syzygies(&new, syzygy_cap).map_err(pipeline_err)? };

    let mut references = Vec::new();
    for (name, poly) in parse_references(loaded, &scope, &algebra)? {
        references.push(check_reference(&name, poly, &degrees, &new)?);
    }

    let series = if torus.rank() == 1 && algebra.triples().len() == 1 {
        let weights: Vec<i64> = torus.weights().iter().map(|w| w[0]).collect();
        let molien = molien_coefficients_su2::<Integer>(&weights, max_degree as usize);
        let kernel_dims = std::iter::once(1).chain(degrees.iter().map(|d| d.kernel.len())).collect();
        Some(SeriesCheck { weights, molien, kernel_dims })
    } else {
        None
    };

    Ok(Run {
        algebra_name: loaded.algebra.name().to_string(),
        scope,
        algebra,
        ad,
        generators,
        options: options.clone(),
        max_degree,
        syzygy_cap,
        torus,
        hilbert,
        operators,
        reynolds_set,
        closure_order,
        consistency,
        blocks,
        degrees,
        syzygies,
        references,
        series,
    })
}

fn check_reference(
    name: &str,
    poly: Poly,
    degrees: &[DegreeSolution<Rational>],
    new: &[Invariant],
) -> Result<ReferenceCheck, CliError> {
    let degree =
        poly.homogeneous_degree().ok_or_else(|| CliError::Input(format!("reference {name} is not homogeneous")))?;
    let in_span = match degrees.iter().find(|d| d.system.degree == degree) {
        Some(d) if !d.kernel.is_empty() => {
            let basis = lieinv::exactmath::monomials_of_degree(poly.vars().len(), degree);
            let mut space = RowSpace::new(basis.len());
            for k in &d.kernel {
                space.insert(&k.poly.coefficients_on(&basis));
            }
            space.contains(&poly.coefficients_on(&basis))
        }
        _ => false,
    };
    let target = named(name, poly);
    let expression = if in_span { decompose(&target, new, &[]).ok().map(|d| d.expression) } else { None };
    Ok(ReferenceCheck { name: name.to_string(), degree, in_span, expression })
}
