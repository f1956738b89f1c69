//! Weyl reflections lifted to algebra automorphisms, the Reynolds operator
//! and Weyl blocks.

use std::collections::{HashSet, VecDeque};

use crate::exactmath::{monomials_of_degree, ExactField, Matrix, Monomial, Polynomial, RowSpace, Variables};
use crate::liealg::{check_automorphism, nilpotent_exp, AdjointData, LieAlgebra, LieError};
use crate::torus::HilbertBasis;

/// Default bound on the size of a group closure.
pub const CLOSURE_BOUND: usize = 1000;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("algebra has no sl(2)-triples to build reflections from")]
    NoTriples,
    #[error("operator {0} is not an automorphism")]
    NotAutomorphism(String),
    #[error("closure bound exceeded ({0} elements)")]
    ClosureBound(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// One lifted Weyl element. `word` lists generator numbers (1-based), so
/// `[1, 2]` is the matrix product `S1·S2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOperator<F> {
    pub name: String,
    pub matrix: Matrix<F>,
    pub word: Vec<usize>,
}

impl<F: ExactField> WeylOperator<F> {
    pub fn is_generator(&self) -> bool {
        self.word.len() == 1
    }

    /// Images `e_j ↦ Σ_k S_kj e_k` as linear forms over `vars`.
    pub fn images(&self, vars: &Variables) -> Vec<Polynomial<F>> {
        let n = self.matrix.rows();
        (0..n)
            .map(|j| {
                Polynomial::from_terms(vars.clone(), (0..n).map(|k| (Monomial::var(n, k), self.matrix[(k, j)].clone())))
            })
            .collect()
    }

    /// The substitution action on polynomials.
    pub fn apply(&self, p: &Polynomial<F>) -> Polynomial<F> {
        p.substitute_linear(&self.images(p.vars())).expect("operator size matches the variables")
    }
}

/// Lifted Weyl elements, identity first, then the generators, then longer
/// words in breadth-first order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOperatorSet<F> {
    pub ops: Vec<WeylOperator<F>>,
}

impl<F: ExactField> WeylOperatorSet<F> {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn generators(&self) -> impl Iterator<Item = &WeylOperator<F>> + '_ {
        self.ops.iter().filter(|o| o.is_generator())
    }

    pub fn get(&self, name: &str) -> Option<&WeylOperator<F>> {
        self.ops.iter().find(|o| o.name == name)
    }
}

/// `exp(Ã_x)·exp(−Ã_y)·exp(Ã_x)` for a triple `(x, y, h)`.
pub fn reflection_operator<F: ExactField>(
    g: &LieAlgebra<F>,
    ad: &AdjointData<F>,
    triple: usize,
) -> Result<Matrix<F>, WeylError> {
    let t = g.triples()[triple];
    let ex = nilpotent_exp(&ad.a_tilde[t.x], g.label(t.x))?;
    let ey = nilpotent_exp(&ad.a_tilde[t.y].neg(), g.label(t.y))?;
    Ok(ex.checked_mul(&ey).and_then(|m| m.checked_mul(&ex)).map_err(LieError::from)?)
}

fn cartan_block<F: ExactField>(g: &LieAlgebra<F>, m: &Matrix<F>) -> Vec<F> {
    let c = g.cartan();
    c.iter().flat_map(|&r| c.iter().map(move |&s| m[(r, s)].clone())).collect()
}

/// One generator per sl(2)-triple, closed under products up to distinct
/// actions on the Cartan subalgebra (one lift per Weyl group element).
pub fn build_weyl_operators<F: ExactField>(
    g: &LieAlgebra<F>,
    ad: &AdjointData<F>,
) -> Result<WeylOperatorSet<F>, WeylError> {
    if g.triples().is_empty() {
        return Err(WeylError::NoTriples);
    }
    let gens = (0..g.triples().len()).map(|t| reflection_operator(g, ad, t)).collect::<Result<Vec<_>, _>>()?;
    let n = g.dim();
    let identity = WeylOperator { name: "S0".into(), matrix: Matrix::identity(n), word: vec![] };
    let mut seen: HashSet<Vec<F>> = HashSet::from([cartan_block(g, &identity.matrix)]);
    let mut ops = vec![identity];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for (k, s) in gens.iter().enumerate() {
            let m = ops[i].matrix.checked_mul(s).map_err(LieError::from)?;
            if seen.insert(cartan_block(g, &m)) {
                if ops.len() >= CLOSURE_BOUND {
                    return Err(WeylError::ClosureBound(CLOSURE_BOUND));
                }
                let mut word = ops[i].word.clone();
                word.push(k + 1);
                queue.push_back(ops.len());
                ops.push(WeylOperator { name: format!("S{}", ops.len()), matrix: m, word });
            }
        }
    }
    for o in &ops {
        if !check_automorphism(g, &o.matrix) {
            return Err(WeylError::NotAutomorphism(o.name.clone()));
        }
    }
    Ok(WeylOperatorSet { ops })
}

/// Order of the matrix group generated by the generators of `ops`.
pub fn group_closure_order<F: ExactField>(ops: &WeylOperatorSet<F>, bound: usize) -> Result<usize, WeylError> {
    Ok(group_closure(ops, bound)?.len())
}

/// Every element of the matrix group generated by the generators of `ops`,
/// as an operator set (identity first, breadth-first words).
pub fn closure_set<F: ExactField>(ops: &WeylOperatorSet<F>, bound: usize) -> Result<WeylOperatorSet<F>, WeylError> {
    Ok(WeylOperatorSet { ops: group_closure(ops, bound)? })
}

fn group_closure<F: ExactField>(ops: &WeylOperatorSet<F>, bound: usize) -> Result<Vec<WeylOperator<F>>, WeylError> {
    let Some(first) = ops.ops.first() else {
        return Ok(Vec::new());
    };
    let n = first.matrix.rows();
    let gens: Vec<&WeylOperator<F>> = ops.generators().collect();
    let mut out = vec![WeylOperator { name: "G0".into(), matrix: Matrix::identity(n), word: vec![] }];
    let mut seen: HashSet<Matrix<F>> = HashSet::from([Matrix::identity(n)]);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let m = out[i].matrix.checked_mul(&g.matrix).map_err(LieError::from)?;
            if seen.insert(m.clone()) {
                if out.len() >= bound {
                    return Err(WeylError::ClosureBound(bound));
                }
                let mut word = out[i].word.clone();
                word.extend(&g.word);
                queue.push_back(out.len());
                out.push(WeylOperator { name: format!("G{}", out.len()), matrix: m, word });
            }
        }
    }
    Ok(out)
}

/// Outcome of comparing one operator with the Weyl group action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorCheck {
    pub operator: String,
    /// `(h, image)` for each Cartan element, as polynomial strings.
    pub cartan_images: Vec<(String, String)>,
    /// `(source, target)` labels of root vectors.
    pub root_lines: Vec<(String, String)>,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checks: Vec<OperatorCheck>,
}

impl ConsistencyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.mismatches.is_empty())
    }
}

/// Compares each operator with the composite reflection of its word.
///
/// The reflection of triple `k` acts on the Cartan subalgebra by
/// `h ↦ h − α_k(h)·h_k`, where `α_k` is the root of `x_k`. The operator must
/// agree with it on the Cartan span and must send each root line `L_α` onto
/// `L_σ(α)`.
pub fn cartan_consistency_check<F: ExactField>(ops: &WeylOperatorSet<F>, g: &LieAlgebra<F>) -> ConsistencyReport {
    let n = g.dim();
    let cartan = g.cartan();
    let d = cartan.len();
    let vars = g.variables();
    let weight = |i: usize| -> Vec<F> { cartan.iter().map(|&h| g.c(h, i, i).clone()).collect() };
    // reflection matrices on Cartan coordinates, column j = image of h_j
    let reflections: Vec<Option<Matrix<F>>> = g
        .triples()
        .iter()
        .map(|t| {
            let pos = cartan.iter().position(|&c| c == t.h)?;
            let alpha = weight(t.x);
            Some(Matrix::from_fn(d, d, |r, c| {
                let delta = if r == c { F::one() } else { F::zero() };
                if r == pos {
                    delta - alpha[c].clone()
                } else {
                    delta
                }
            }))
        })
        .collect();

    let mut checks = Vec::new();
    for op in &ops.ops {
        let s = &op.matrix;
        let mut mismatches = Vec::new();
        let mut expected = Matrix::identity(d);
        for &k in &op.word {
            match reflections.get(k - 1).cloned().flatten() {
                Some(r) => expected = expected.checked_mul(&r).expect("square"),
                None => mismatches.push(format!("generator {k} has no Cartan element in the Cartan list")),
            }
        }
        let image_of =
            |j: usize| Polynomial::from_terms(vars.clone(), (0..n).map(|k| (Monomial::var(n, k), s[(k, j)].clone())));
        let cartan_images = cartan.iter().map(|&h| (g.label(h).to_string(), image_of(h).to_string())).collect();
        for (cj, &h) in cartan.iter().enumerate() {
            for k in 0..n {
                let want = match cartan.iter().position(|&c| c == k) {
                    Some(ck) => expected[(ck, cj)].clone(),
                    None => F::zero(),
                };
                if s[(k, h)] != want {
                    mismatches.push(format!("{}: image of {} disagrees with the reflection", op.name, g.label(h)));
                    break;
                }
            }
        }
        // weight of S e_i must be ω_i ∘ M⁻¹
        let mut root_lines = Vec::new();
        if let Ok(minv) = expected.inverse() {
            for i in (0..n).filter(|i| !cartan.contains(i)) {
                let col = s.column(i);
                let nz: Vec<usize> = (0..n).filter(|&k| !col[k].is_zero()).collect();
                let wi = weight(i);
                let target: Vec<F> = (0..d)
                    .map(|c| (0..d).fold(F::zero(), |acc, r| acc + wi[r].clone() * minv[(r, c)].clone()))
                    .collect();
                if nz.len() != 1 || cartan.contains(&nz[0]) {
                    mismatches.push(format!("{}: root vector {} is not sent to a root line", op.name, g.label(i)));
                } else if weight(nz[0]) != target {
                    mismatches.push(format!(
                        "{}: root of {} goes to the root of {}, not to its reflection",
                        op.name,
                        g.label(i),
                        g.label(nz[0])
                    ));
                } else {
                    root_lines.push((g.label(i).to_string(), g.label(nz[0]).to_string()));
                }
            }
        }
        checks.push(OperatorCheck { operator: op.name.clone(), cartan_images, root_lines, mismatches });
    }
    ConsistencyReport { checks }
}

/// `Σ_S S(p)` over the listed operators, not divided by their number.
pub fn reynolds<F: ExactField>(ops: &WeylOperatorSet<F>, p: &Polynomial<F>) -> Polynomial<F> {
    let mut out = Polynomial::zero(p.vars().clone());
    for op in &ops.ops {
        out = &out + &op.apply(p);
    }
    out
}

/// How a block was produced: Rey of one Hilbert-basis monomial, or of a
/// product of several.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockSource {
    Initial(Monomial),
    Product(Vec<Monomial>),
}

impl BlockSource {
    pub fn is_initial(&self) -> bool {
        matches!(self, BlockSource::Initial(_))
    }

    pub fn factors(&self) -> &[Monomial] {
        match self {
            BlockSource::Initial(m) => std::slice::from_ref(m),
            BlockSource::Product(ms) => ms,
        }
    }
}

/// `w_{degree,index}`; `index` starts at 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylBlock<F> {
    pub degree: u32,
    pub index: usize,
    pub poly: Polynomial<F>,
    pub source: BlockSource,
}

impl<F: ExactField> WeylBlock<F> {
    pub fn name(&self) -> String {
        format!("w{}_{}", self.degree, self.index)
    }
}

/// Applies Rey to each Hilbert-basis monomial and to each product of them
/// with total degree at most `max_degree`.
///
/// Within a degree, initial blocks come first, then products in
/// lexicographic order of their factor lists. Each image is made primitive
/// with a positive leading coefficient and kept only if it is linearly
/// independent of the blocks already kept.
pub fn generate_weyl_blocks<F: ExactField>(
    ops: &WeylOperatorSet<F>,
    hb: &HilbertBasis,
    max_degree: u32,
) -> Vec<WeylBlock<F>> {
    let n = hb.vars.len();
    let gens = &hb.monomials;
    let mut blocks = Vec::new();
    for degree in 1..=max_degree {
        let basis = monomials_of_degree(n, degree);
        let mut space = RowSpace::new(basis.len());
        let mut sources: Vec<BlockSource> =
            gens.iter().filter(|m| m.degree() == degree).cloned().map(BlockSource::Initial).collect();
        let mut products = Vec::new();
        multisets(gens, degree, 0, &mut Vec::new(), &mut products);
        sources.extend(products.into_iter().filter(|p| p.len() > 1).map(BlockSource::Product));
        for source in sources {
            let m = source.factors().iter().fold(Monomial::one(n), |acc, f| acc.mul(f));
            let p = reynolds(ops, &Polynomial::monomial(hb.vars.clone(), m, F::one())).primitive();
            if p.is_zero() {
                continue;
            }
            if space.insert(&p.coefficients_on(&basis)) {
                let index = blocks.iter().filter(|b: &&WeylBlock<F>| b.degree == degree).count() + 1;
                blocks.push(WeylBlock { degree, index, poly: p, source });
            }
        }
    }
    blocks
}

// factor lists with non-decreasing generator index and total degree `left`
fn multisets(gens: &[Monomial], left: u32, start: usize, cur: &mut Vec<Monomial>, out: &mut Vec<Vec<Monomial>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for (i, g) in gens.iter().enumerate().skip(start) {
        if g.degree() <= left && g.degree() > 0 {
            cur.push(g.clone());
            multisets(gens, left - g.degree(), i, cur, out);
            cur.pop();
        }
    }
}

/// Sets the non-Cartan variables to zero and renames the Cartan variables
/// `alpha1, alpha2, …` in Cartan order.
pub fn restrict_to_cartan<F: ExactField>(p: &Polynomial<F>, g: &LieAlgebra<F>) -> Polynomial<F> {
    let target = Variables::new((1..=g.cartan().len()).map(|i| format!("alpha{i}")));
    let mapping: Vec<Option<usize>> = (0..g.dim()).map(|i| g.cartan().iter().position(|&c| c == i)).collect();
    p.remap(target, &mapping)
}
