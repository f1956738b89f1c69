//! The invariance linear system, invariants by degree, syzygies and
//! Hironaka-style decompositions.

use std::collections::BTreeMap;

use crate::exactmath::{
    kernel_basis, to_integers, ExactField, MathError, Matrix, Monomial, Polynomial, RowSpace, Variables,
};
use crate::liealg::{derivation, AdjointData};
use crate::weyl::WeylBlock;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("blocks of mixed degree: expected {expected}, found {found}")]
    MixedDegree { expected: u32, found: u32 },
    #[error("internal consistency: {0} is not annihilated by generator {1}")]
    Verification(String, String),
    #[error("{0} is not in the module span")]
    NotInSpan(String),
    #[error("invariant {0} has degree zero")]
    DegreeZero(String),
    #[error(transparent)]
    Math(#[from] MathError),
}

/// `d/dt` at `t = 0` of the one-parameter subgroup of generator `k` acting on `w`.
pub fn delta<F: ExactField>(ad: &AdjointData<F>, k: usize, w: &Polynomial<F>) -> Polynomial<F> {
    derivation(ad, k, w)
}

/// One degree of the invariance problem: a column per block, a row per
/// `(generator, monomial)` with entry the coefficient of that monomial in
/// Δ of the block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSystem<F> {
    pub degree: u32,
    pub blocks: Vec<WeylBlock<F>>,
    pub generators: Vec<usize>,
    pub rows: Vec<(usize, Monomial)>,
    pub matrix: Matrix<F>,
    ad: AdjointData<F>,
}

pub fn build_system<F: ExactField>(
    ad: &AdjointData<F>,
    generators: &[usize],
    blocks: &[WeylBlock<F>],
) -> Result<InvariantSystem<F>, SolverError> {
    let degree = blocks.first().map_or(0, |b| b.degree);
    if let Some(b) = blocks.iter().find(|b| b.degree != degree) {
        return Err(SolverError::MixedDegree { expected: degree, found: b.degree });
    }
    let mut entries: BTreeMap<(usize, Monomial), Vec<F>> = BTreeMap::new();
    for &k in generators {
        for (col, b) in blocks.iter().enumerate() {
            for (m, c) in delta(ad, k, &b.poly).terms() {
                entries.entry((k, m.clone())).or_insert_with(|| vec![F::zero(); blocks.len()])[col] = c.clone();
            }
        }
    }
    let rows: Vec<(usize, Monomial)> = entries.keys().cloned().collect();
    let data: Vec<Vec<F>> = entries.into_values().collect();
    let matrix = if data.is_empty() { Matrix::zeros(0, blocks.len()) } else { Matrix::from_rows(data)? };
    Ok(InvariantSystem {
        degree,
        blocks: blocks.to_vec(),
        generators: generators.to_vec(),
        rows,
        matrix,
        ad: ad.clone(),
    })
}

/// A polynomial killed by every generator in scope, with its coordinates
/// over the block basis of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariant<F: ExactField> {
    pub name: String,
    pub poly: Polynomial<F>,
    pub kernel_vector: Vec<F::Int>,
    pub degree: u32,
}

/// Kernel of the system, one invariant per primitive kernel vector, named
/// `k<degree>_<j>`. Each is checked against every generator.
pub fn solve_invariants<F: ExactField>(sys: &InvariantSystem<F>) -> Result<Vec<Invariant<F>>, SolverError> {
    if sys.blocks.is_empty() {
        return Ok(Vec::new());
    }
    let vars = sys.blocks[0].poly.vars().clone();
    let mut out = Vec::new();
    for (j, v) in kernel_basis(&sys.matrix).into_iter().enumerate() {
        let mut poly = Polynomial::zero(vars.clone());
        for (c, b) in v.iter().zip(&sys.blocks) {
            if !c.is_zero() {
                poly = &poly + &b.poly.scale(c);
            }
        }
        let name = format!("k{}_{}", sys.degree, j + 1);
        for &k in &sys.generators {
            if !delta(&sys.ad, k, &poly).is_zero() {
                return Err(SolverError::Verification(name, vars.name(k).to_string()));
            }
        }
        let kernel_vector = to_integers(&v).expect("kernel vectors are primitive integer vectors");
        out.push(Invariant { name, poly, kernel_vector, degree: sys.degree });
    }
    Ok(out)
}

/// How to name invariants that are new at their degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Naming {
    /// `C<degree>` (with `_<j>` when a degree has several), for the full group.
    Casimir,
    /// `I1, I2, …` in discovery order, for subgroups.
    Sequential,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSolution<F: ExactField> {
    pub system: InvariantSystem<F>,
    /// Every kernel invariant of this degree.
    pub kernel: Vec<Invariant<F>>,
    /// Kernel invariants not spanned by products of lower-degree new ones.
    pub new: Vec<Invariant<F>>,
    /// Dimension of the span of those products inside the kernel.
    pub decomposable_dim: usize,
}

/// Solves degree by degree. Products of earlier new invariants are spanned
/// out before picking the new invariants of a degree.
pub fn invariants_by_degree<F: ExactField>(
    ad: &AdjointData<F>,
    generators: &[usize],
    blocks: &[WeylBlock<F>],
    max_degree: u32,
    naming: Naming,
) -> Result<Vec<DegreeSolution<F>>, SolverError> {
    let mut out: Vec<DegreeSolution<F>> = Vec::new();
    let mut generators_found: Vec<Invariant<F>> = Vec::new();
    for degree in 1..=max_degree {
        let here: Vec<WeylBlock<F>> = blocks.iter().filter(|b| b.degree == degree).cloned().collect();
        let mut system = build_system(ad, generators, &here)?;
        system.degree = degree;
        let kernel = solve_invariants(&system)?;
        let mut new = Vec::new();
        let mut decomposable_dim = 0;
        if !kernel.is_empty() {
            let basis = crate::exactmath::monomials_of_degree(kernel[0].poly.vars().len(), degree);
            let mut space = RowSpace::new(basis.len());
            for p in products_of_degree(&generators_found, degree) {
                if space.insert(&p.coefficients_on(&basis)) {
                    decomposable_dim += 1;
                }
            }
            for inv in &kernel {
                if space.insert(&inv.poly.coefficients_on(&basis)) {
                    new.push(inv.clone());
                }
            }
        }
        let count = new.len();
        for (j, inv) in new.iter_mut().enumerate() {
            inv.name = match naming {
                Naming::Casimir if count == 1 => format!("C{degree}"),
                Naming::Casimir => format!("C{degree}_{}", j + 1),
                Naming::Sequential => format!("I{}", generators_found.len() + j + 1),
            };
        }
        generators_found.extend(new.iter().cloned());
        out.push(DegreeSolution { system, kernel, new, decomposable_dim });
    }
    Ok(out)
}

// products of two or more of `invs` with total degree `degree`
fn products_of_degree<F: ExactField>(invs: &[Invariant<F>], degree: u32) -> Vec<Polynomial<F>> {
    fn rec<F: ExactField>(
        invs: &[Invariant<F>],
        left: u32,
        start: usize,
        factors: usize,
        acc: Option<Polynomial<F>>,
        out: &mut Vec<Polynomial<F>>,
    ) {
        if left == 0 {
            if factors > 1 {
                out.extend(acc);
            }
            return;
        }
        for (i, inv) in invs.iter().enumerate().skip(start) {
            if inv.degree > 0 && inv.degree <= left {
                let next = match &acc {
                    Some(a) => a * &inv.poly,
                    None => inv.poly.clone(),
                };
                rec(invs, left - inv.degree, i, factors + 1, Some(next), out);
            }
        }
    }
    let mut out = Vec::new();
    rec(invs, degree, 0, 0, None, &mut out);
    out
}

/// Exponent vectors over `degrees.len()` variables with `Σ e_i·degrees[i] = target`.
pub fn weighted_monomials(degrees: &[u32], target: u32) -> Vec<Monomial> {
    fn rec(degrees: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == degrees.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur.clone()));
            }
            return;
        }
        let mut e = 0;
        while e * degrees[i] <= left {
            cur[i] = e;
            rec(degrees, i + 1, left - e * degrees[i], cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(degrees, 0, target, &mut vec![0; degrees.len()], &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// A polynomial relation among named invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syzygy<F> {
    /// Over the invariant names; weighted-homogeneous of `degree`.
    pub relation: Polynomial<F>,
    pub degree: u32,
}

fn names_of<F: ExactField>(invs: &[Invariant<F>]) -> Variables {
    Variables::new(invs.iter().map(|i| i.name.clone()))
}

/// Expands a polynomial in the invariant names into the base variables.
pub fn expand_in_invariants<F: ExactField>(
    relation: &Polynomial<F>,
    invs: &[Invariant<F>],
) -> Result<Polynomial<F>, SolverError> {
    let images: Vec<Polynomial<F>> = invs.iter().map(|i| i.poly.clone()).collect();
    Ok(relation.substitute(&images)?)
}

/// Relations among `invs` up to weighted degree `cap`, found by a linear
/// ansatz over the weighted monomials of each degree. Relations that are
/// multiples of lower-degree ones are left out.
pub fn find_syzygies<F: ExactField>(invs: &[Invariant<F>], cap: u32) -> Result<Vec<Syzygy<F>>, SolverError> {
    if let Some(z) = invs.iter().find(|i| i.degree == 0) {
        return Err(SolverError::DegreeZero(z.name.clone()));
    }
    if invs.is_empty() {
        return Ok(Vec::new());
    }
    let names = names_of(invs);
    let degrees: Vec<u32> = invs.iter().map(|i| i.degree).collect();
    let mut found: Vec<Syzygy<F>> = Vec::new();
    for w in 1..=cap {
        let ansatz = weighted_monomials(&degrees, w);
        if ansatz.is_empty() {
            continue;
        }
        let mut entries: BTreeMap<Monomial, Vec<F>> = BTreeMap::new();
        for (col, m) in ansatz.iter().enumerate() {
            let expanded = expand_in_invariants(&Polynomial::monomial(names.clone(), m.clone(), F::one()), invs)?;
            for (bm, c) in expanded.terms() {
                entries.entry(bm.clone()).or_insert_with(|| vec![F::zero(); ansatz.len()])[col] = c.clone();
            }
        }
        let data: Vec<Vec<F>> = entries.into_values().collect();
        let matrix = if data.is_empty() { Matrix::zeros(0, ansatz.len()) } else { Matrix::from_rows(data)? };
        let kernel = kernel_basis(&matrix);
        if kernel.is_empty() {
            continue;
        }
        let mut space = RowSpace::new(ansatz.len());
        for s in &found {
            for m in weighted_monomials(&degrees, w - s.degree) {
                let multiple = &s.relation * &Polynomial::monomial(names.clone(), m, F::one());
                space.insert(&multiple.coefficients_on(&ansatz));
            }
        }
        for v in kernel {
            if space.insert(&v) {
                let relation = Polynomial::from_terms(names.clone(), ansatz.iter().cloned().zip(v)).primitive();
                found.push(Syzygy { relation, degree: w });
            }
        }
    }
    Ok(found)
}

/// `target = p(primaries) + Σ_j s_j·q_j(primaries)`, as a polynomial over
/// the primary names followed by the secondary names (linear in the latter).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<F> {
    pub expression: Polynomial<F>,
}

/// Finds the decomposition of `target` by a linear ansatz in its degree.
pub fn decompose<F: ExactField>(
    target: &Invariant<F>,
    primaries: &[Invariant<F>],
    secondaries: &[Invariant<F>],
) -> Result<Decomposition<F>, SolverError> {
    let all: Vec<Invariant<F>> = primaries.iter().chain(secondaries).cloned().collect();
    if let Some(z) = all.iter().find(|i| i.degree == 0) {
        return Err(SolverError::DegreeZero(z.name.clone()));
    }
    let names = names_of(&all);
    let np = primaries.len();
    let pdeg: Vec<u32> = primaries.iter().map(|i| i.degree).collect();
    let mut ansatz: Vec<Monomial> = weighted_monomials(&pdeg, target.degree)
        .into_iter()
        .map(|m| {
            let mut e = m.exponents().to_vec();
            e.resize(all.len(), 0);
            Monomial::from_exponents(e)
        })
        .collect();
    for (j, s) in secondaries.iter().enumerate() {
        if s.degree <= target.degree {
            for m in weighted_monomials(&pdeg, target.degree - s.degree) {
                let mut e = m.exponents().to_vec();
                e.resize(all.len(), 0);
                e[np + j] = 1;
                ansatz.push(Monomial::from_exponents(e));
            }
        }
    }
    let expansions = ansatz
        .iter()
        .map(|m| expand_in_invariants(&Polynomial::monomial(names.clone(), m.clone(), F::one()), &all))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in expansions.iter().chain(std::iter::once(&target.poly)) {
        for m in p.monomials() {
            let next = rows.len();
            rows.entry(m.clone()).or_insert(next);
        }
    }
    let mut a = Matrix::zeros(rows.len(), ansatz.len());
    for (col, p) in expansions.iter().enumerate() {
        for (m, c) in p.terms() {
            a[(rows[m], col)] = c.clone();
        }
    }
    let mut b = vec![F::zero(); rows.len()];
    for (m, c) in target.poly.terms() {
        b[rows[m]] = c.clone();
    }
    let x = a.solve(&b)?.ok_or_else(|| SolverError::NotInSpan(target.name.clone()))?;
    let expression = Polynomial::from_terms(names, ansatz.into_iter().zip(x));
    debug_assert_eq!(expand_in_invariants(&expression, &all).ok().as_ref(), Some(&target.poly));
    Ok(Decomposition { expression })
}

/// Wraps a polynomial as an invariant with the given name.
pub fn named<F: ExactField>(name: &str, poly: Polynomial<F>) -> Invariant<F> {
    let degree = poly.degree().unwrap_or(0);
    Invariant { name: name.to_string(), poly, kernel_vector: Vec::new(), degree }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{adjoint_data, build_sl, embed_subalgebra, sl2_in_sl3};
    use crate::torus::{hilbert_basis, weights_from_cartan};
    use crate::weyl::{build_weyl_operators, generate_weyl_blocks};
    use crate::{Integer, Poly, Rational};

    struct Setup {
        vars: Variables,
        ad: crate::AdjointData,
        blocks: Vec<crate::WeylBlock>,
    }

    fn sl3() -> Setup {
        let g = build_sl::<Rational>(3);
        let ad = adjoint_data(&g).unwrap();
        let ops = build_weyl_operators(&g, &ad).unwrap();
        let hb = hilbert_basis(&weights_from_cartan(&g).unwrap(), 3);
        let blocks = generate_weyl_blocks(&ops, &hb, 3);
        Setup { vars: g.variables().clone(), ad, blocks }
    }

    fn sl2_scope() -> Setup {
        let g = embed_subalgebra(&build_sl::<Rational>(3), &sl2_in_sl3()).unwrap();
        let ad = adjoint_data(&g).unwrap();
        let ops = build_weyl_operators(&g, &ad).unwrap();
        let hb = hilbert_basis(&weights_from_cartan(&g).unwrap(), 3);
        let blocks = generate_weyl_blocks(&ops, &hb, 3);
        Setup { vars: g.variables().clone(), ad, blocks }
    }

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn delta_examples() {
        let s = sl3();
        let p = |t: &str| Poly::parse(t, &s.vars).unwrap();
        assert!(delta(&s.ad, 6, &p("x1*y1 + x2*y2 + x3*y3")).is_zero());
        assert!(!delta(&s.ad, 1, &p("h1^2 + h1*h2 + h2^2")).is_zero());
        assert!(delta(&s.ad, 1, &p("3*x1*y1 + 3*x2*y2 + 3*x3*y3 + h1^2 + h1*h2 + h2^2")).is_zero());
    }

    #[test]
    fn sl3_systems_and_casimirs() {
        let s = sl3();
        let all: Vec<usize> = (0..8).collect();
        let d2: Vec<_> = s.blocks.iter().filter(|b| b.degree == 2).cloned().collect();
        let sys = build_system(&s.ad, &all, &d2).unwrap();
        let (r, _) = sys.matrix.rref();
        assert_eq!(sys.matrix.rank(), 1);
        assert_eq!(r.row(0), [Rational::from_i64(1), Rational::from_i64(-3)]);
        let inv = solve_invariants(&sys).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].kernel_vector, ints(&[3, 1]));

        let d3: Vec<_> = s.blocks.iter().filter(|b| b.degree == 3).cloned().collect();
        let sys = build_system(&s.ad, &all, &d3).unwrap();
        assert_eq!(sys.matrix.rank(), 2);
        let inv = solve_invariants(&sys).unwrap();
        assert_eq!(inv[0].kernel_vector, ints(&[27, 1, 9]));

        let sols = invariants_by_degree(&s.ad, &all, &s.blocks, 3, Naming::Casimir).unwrap();
        let names: Vec<&str> = sols.iter().flat_map(|d| d.new.iter().map(|i| i.name.as_str())).collect();
        assert_eq!(names, ["C2", "C3"]);
        assert!(sols[0].kernel.is_empty());
    }

    #[test]
    fn mixed_and_trivial_systems() {
        let s = sl3();
        let err = build_system(&s.ad, &[0], &s.blocks);
        assert!(matches!(err, Err(SolverError::MixedDegree { .. })));
        let c2 = named("C2", Poly::parse("3*x1*y1 + 3*x2*y2 + 3*x3*y3 + h1^2 + h1*h2 + h2^2", &s.vars).unwrap());
        let block =
            crate::WeylBlock { degree: 2, index: 1, poly: c2.poly, source: crate::weyl::BlockSource::Product(vec![]) };
        let sys = build_system(&s.ad, &[0, 1, 6], &[block]).unwrap();
        assert!(sys.matrix.is_zero());
        assert!(solve_invariants(&build_system(&s.ad, &[0], &[]).unwrap()).unwrap().is_empty());
    }

    /// The six reference invariants, over `y1 x1 h1 y2 y3 x2 x3 h0`.
    fn reference_invariants(vars: &Variables) -> Vec<Invariant<Rational>> {
        [
            ("I1", "h0"),
            ("I2", "h1^2 + 4*x1*y1"),
            ("I3", "x2*y2 + x3*y3"),
            ("I4", "h1*y2*y3 + y1*y2^2 - x1*y3^2"),
            ("I5", "h1*x2*x3 + x1*x2^2 - x3^2*y1"),
            ("I6", "h1*(x2*y2 - x3*y3) - 2*(y1*y2*x3 + x1*x2*y3)"),
        ]
        .iter()
        .map(|(n, p)| named(n, Poly::parse(p, vars).unwrap()))
        .collect()
    }

    #[test]
    fn sl2_scope_dimensions_and_membership() {
        let s = sl2_scope();
        let sols = invariants_by_degree(&s.ad, &[0, 1, 2], &s.blocks, 3, Naming::Sequential).unwrap();
        let new: Vec<usize> = sols.iter().map(|d| d.new.len()).collect();
        let full: Vec<usize> = sols.iter().map(|d| d.kernel.len()).collect();
        assert_eq!(new, [1, 2, 3]);
        assert_eq!(full, [1, 3, 6]);
        for inv in reference_invariants(&s.vars) {
            let d = &sols[inv.degree as usize - 1];
            let basis = crate::exactmath::monomials_of_degree(8, inv.degree);
            let mut space = RowSpace::new(basis.len());
            for k in &d.kernel {
                space.insert(&k.poly.coefficients_on(&basis));
            }
            assert!(space.contains(&inv.poly.coefficients_on(&basis)), "{}", inv.name);
            for k in 0..3 {
                assert!(delta(&s.ad, k, &inv.poly).is_zero());
            }
        }
    }

    #[test]
    fn toy_syzygy() {
        let v = Variables::new(["x"]);
        let invs = vec![named("N1", Poly::parse("x", &v).unwrap()), named("N2", Poly::parse("x^2", &v).unwrap())];
        let syz = find_syzygies(&invs, 4).unwrap();
        assert_eq!(syz.len(), 1);
        assert_eq!(syz[0].degree, 2);
        let names = Variables::new(["N1", "N2"]);
        assert_eq!(syz[0].relation, Poly::parse("N1^2 - N2", &names).unwrap());
    }

    #[test]
    fn reference_syzygy_and_independence() {
        let s = sl2_scope();
        let invs = reference_invariants(&s.vars);
        let syz = find_syzygies(&invs, 6).unwrap();
        assert_eq!(syz.len(), 1);
        let names = Variables::new(["I1", "I2", "I3", "I4", "I5", "I6"]);
        assert_eq!(syz[0].relation, Poly::parse("I2*I3^2 - 4*I4*I5 - I6^2", &names).unwrap());
        assert!(expand_in_invariants(&syz[0].relation, &invs).unwrap().is_zero());
        assert!(find_syzygies(&invs[..5], 6).unwrap().is_empty());
    }

    #[test]
    fn syzygy_consequences_are_quotiented() {
        let v = Variables::new(["x"]);
        let invs = vec![named("N1", Poly::parse("x", &v).unwrap()), named("N2", Poly::parse("x^2", &v).unwrap())];
        // degree 3 and 4 only hold multiples of N1^2 - N2
        assert_eq!(find_syzygies(&invs, 6).unwrap().len(), 1);
    }

    #[test]
    fn casimir_decompositions() {
        let s = sl2_scope();
        let invs = reference_invariants(&s.vars);
        let g = build_sl::<Rational>(3);
        let emb = sl2_in_sl3::<Rational>();
        let e = embed_subalgebra(&g, &emb).unwrap();
        let old = g.variables();
        let c2 = Poly::parse("3*x1*y1 + 3*x2*y2 + 3*x3*y3 + h1^2 + h1*h2 + h2^2", old).unwrap();
        let c2 = named("C2", emb.transport(&g, &e, &c2).unwrap());
        let d = decompose(&c2, &invs[..5], &invs[5..]).unwrap();
        let names = Variables::new(["I1", "I2", "I3", "I4", "I5", "I6"]);
        assert_eq!(d.expression, Poly::parse("I1^2 + 3/4*I2 + 3*I3", &names).unwrap());
        let i1 = decompose(&invs[0], &invs[..5], &invs[5..]).unwrap();
        assert_eq!(i1.expression, Poly::parse("I1", &names).unwrap());
        let stray = named("x1", Poly::parse("x1", &s.vars).unwrap());
        assert!(matches!(decompose(&stray, &invs[..5], &invs[5..]), Err(SolverError::NotInSpan(_))));
    }

    #[test]
    fn weighted_monomial_counts() {
        // degrees 1,2,2,3,3,3 up to 3: {1}, {I1}, {I1^2, I2, I3}, six at degree 3
        let d = [1, 2, 2, 3, 3, 3];
        let counts: Vec<usize> = (0..4).map(|w| weighted_monomials(&d, w).len()).collect();
        assert_eq!(counts, [1, 1, 3, 6]);
    }
}
