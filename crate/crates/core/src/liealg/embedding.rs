use crate::exactmath::{ExactField, Matrix, Polynomial};

use super::{LieAlgebra, LieError, SlTriple};

/// A subgroup acting on the parent algebra, described in a changed basis.
///
/// Row `a` of `basis_change` gives the parent coordinates of the new basis
/// element `f_a`. `generator_indices` and `sub_cartan` refer to the new
/// basis. For sl(2) ⊂ sl(3) the new basis is `y1 x1 h1 y2 y3 x2 x3 h0` with
/// `h0 = ½h1 + h2`, generators `{y1, x1, h1}` and Cartan `{h1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupEmbedding<F> {
    pub name: String,
    pub generator_indices: Vec<usize>,
    pub basis_change: Matrix<F>,
    pub sub_cartan: Vec<usize>,
    /// Labels of the new basis; derived from the parent when absent.
    pub labels: Option<Vec<String>>,
}

impl<F: ExactField> SubgroupEmbedding<F> {
    /// Labels for the new basis: explicit ones, else the parent label for
    /// rows that are unit vectors and `f<a>` otherwise.
    pub fn resolved_labels(&self, parent: &LieAlgebra<F>) -> Vec<String> {
        if let Some(l) = &self.labels {
            return l.clone();
        }
        (0..self.basis_change.rows())
            .map(|a| {
                let row = self.basis_change.row(a);
                let nz: Vec<usize> = (0..row.len()).filter(|&i| !row[i].is_zero()).collect();
                if nz.len() == 1 && row[nz[0]].is_one() {
                    parent.label(nz[0]).to_string()
                } else {
                    format!("f{a}")
                }
            })
            .collect()
    }

    /// Rewrites a polynomial in the parent variables into the new basis
    /// (`e_i = Σ_a (P⁻¹)_{ia} f_a`).
    pub fn transport(
        &self,
        parent: &LieAlgebra<F>,
        target: &LieAlgebra<F>,
        p: &Polynomial<F>,
    ) -> Result<Polynomial<F>, LieError> {
        let q = self.basis_change.inverse().map_err(|_| LieError::SingularBasisChange)?;
        let vars = target.variables().clone();
        let images: Vec<Polynomial<F>> = (0..parent.dim())
            .map(|i| {
                let mut im = Polynomial::zero(vars.clone());
                for a in 0..q.cols() {
                    if !q[(i, a)].is_zero() {
                        im = &im + &Polynomial::var(vars.clone(), a).scale(&q[(i, a)]);
                    }
                }
                im
            })
            .collect();
        Ok(p.substitute(&images)?)
    }
}

/// Re-expresses `g` in the embedding's basis. The result has the sub-Cartan
/// as its Cartan and the sl(2)-triples found among the subgroup generators.
pub fn embed_subalgebra<F: ExactField>(
    g: &LieAlgebra<F>,
    emb: &SubgroupEmbedding<F>,
) -> Result<LieAlgebra<F>, LieError> {
    let n = g.dim();
    let p = &emb.basis_change;
    if p.rows() != n || p.cols() != n {
        return Err(LieError::SingularBasisChange);
    }
    let q = p.inverse().map_err(|_| LieError::SingularBasisChange)?;
    for &i in emb.generator_indices.iter().chain(&emb.sub_cartan) {
        if i >= n {
            return Err(LieError::IndexOutOfRange { index: i, dim: n });
        }
    }
    let mut dense = vec![F::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            // [f_a, f_b] in parent coordinates, then mapped into the new basis
            let old = g.bracket_vec(p.row(a), p.row(b));
            for c in 0..n {
                let mut s = F::zero();
                for (k, ok) in old.iter().enumerate() {
                    if !ok.is_zero() && !q[(k, c)].is_zero() {
                        s = s + ok.clone() * q[(k, c)].clone();
                    }
                }
                dense[(a * n + b) * n + c] = s;
            }
        }
    }
    let labels = emb.resolved_labels(g);
    if labels.len() != n {
        return Err(LieError::LabelCount { expected: n, got: labels.len() });
    }
    let name = format!("{}/{}", g.name(), emb.name);
    // validate structure first, then look for triples in the validated algebra
    let bare = LieAlgebra::from_dense(name.clone(), labels.clone(), dense.clone(), emb.sub_cartan.clone(), vec![])?;
    let triples = find_triples(&bare, &emb.generator_indices, &emb.sub_cartan);
    LieAlgebra::from_dense(name, labels, dense, emb.sub_cartan.clone(), triples)
}

/// The principal-block sl(2) inside sl(3) (as built by `build_sl(3)`).
///
/// The new basis is `y1 x1 h1 y2 y3 x2 x3 h0` with `h0 = ½h1 + h2`, which
/// commutes with the subgroup; it groups the algebra into sl(2)-modules.
pub fn sl2_in_sl3<F: ExactField>() -> SubgroupEmbedding<F> {
    // parent order: y1 x1 y2 x2 y3 x3 h1 h2
    let order = [0usize, 1, 6, 2, 4, 3, 5];
    let mut rows: Vec<Vec<F>> =
        order.iter().map(|&i| (0..8).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect();
    let mut h0 = vec![F::zero(); 8];
    h0[6] = F::from_ints(1, 2);
    h0[7] = F::one();
    rows.push(h0);
    SubgroupEmbedding {
        name: "sl2".into(),
        generator_indices: vec![0, 1, 2],
        basis_change: Matrix::from_rows(rows).expect("rectangular"),
        sub_cartan: vec![2],
        labels: Some(["y1", "x1", "h1", "y2", "y3", "x2", "x3", "h0"].map(String::from).to_vec()),
    }
}

fn find_triples<F: ExactField>(g: &LieAlgebra<F>, generators: &[usize], cartan: &[usize]) -> Vec<SlTriple> {
    let n = g.dim();
    let unit = |k: usize, c: F| {
        let mut v = vec![F::zero(); n];
        v[k] = c;
        v
    };
    let two = F::from_i64(2);
    let mut out = Vec::new();
    for &h in cartan {
        'search: for &x in generators {
            for &y in generators {
                if g.bracket(x, y) == unit(h, F::one())
                    && g.bracket(h, x) == unit(x, two.clone())
                    && g.bracket(h, y) == unit(y, -two.clone())
                {
                    out.push(SlTriple { x, y, h });
                    break 'search;
                }
            }
        }
    }
    out
}
