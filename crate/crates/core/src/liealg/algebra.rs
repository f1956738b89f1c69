use crate::exactmath::{ExactField, Matrix, Variables};

use super::LieError;

/// Indices of an sl(2)-triple: `[x, y] = h`, `[h, x] = 2x`, `[h, y] = -2y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlTriple {
    pub x: usize,
    pub y: usize,
    pub h: usize,
}

/// A finite-dimensional Lie algebra given by structure constants in a fixed
/// basis, `[e_i, e_j] = Σ_k c_ij^k e_k`.
///
/// Construction validates antisymmetry, the Jacobi identity, commutativity
/// of the designated Cartan elements and the triple relations, so a value of
/// this type is always a Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra<F> {
    name: String,
    vars: Variables,
    structure: Vec<F>,
    cartan: Vec<usize>,
    triples: Vec<SlTriple>,
}

impl<F: ExactField> LieAlgebra<F> {
    /// `structure` lists nonzero constants as `(i, j, k, c_ij^k)`; omitted
    /// entries are zero. Both orders `(i, j)` and `(j, i)` must be present.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        structure: impl IntoIterator<Item = (usize, usize, usize, F)>,
        cartan: Vec<usize>,
        triples: Vec<SlTriple>,
    ) -> Result<Self, LieError> {
        let dim = labels.len();
        for (a, l) in labels.iter().enumerate() {
            if labels[..a].contains(l) {
                return Err(LieError::DuplicateLabel(l.clone()));
            }
        }
        let mut dense = vec![F::zero(); dim * dim * dim];
        for (i, j, k, c) in structure {
            if i >= dim || j >= dim || k >= dim {
                return Err(LieError::IndexOutOfRange { index: i.max(j).max(k), dim });
            }
            dense[(i * dim + j) * dim + k] = c;
        }
        Self::from_dense(name, labels, dense, cartan, triples)
    }

    pub(crate) fn from_dense(
        name: impl Into<String>,
        labels: Vec<String>,
        structure: Vec<F>,
        cartan: Vec<usize>,
        triples: Vec<SlTriple>,
    ) -> Result<Self, LieError> {
        let dim = labels.len();
        assert_eq!(structure.len(), dim * dim * dim);
        for &c in &cartan {
            if c >= dim {
                return Err(LieError::IndexOutOfRange { index: c, dim });
            }
        }
        for t in &triples {
            for idx in [t.x, t.y, t.h] {
                if idx >= dim {
                    return Err(LieError::IndexOutOfRange { index: idx, dim });
                }
            }
        }
        let g = LieAlgebra { name: name.into(), vars: Variables::new(labels), structure, cartan, triples };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if *self.c(i, j, k) != -self.c(j, i, k).clone() {
                        return Err(LieError::Antisymmetry { i, j, k });
                    }
                }
            }
        }
        if let Some((i, j, l)) = self.jacobi_violation() {
            return Err(LieError::Jacobi { i, j, k: l });
        }
        for (a, &i) in self.cartan.iter().enumerate() {
            for &j in &self.cartan[a + 1..] {
                if self.bracket(i, j).iter().any(|x| !x.is_zero()) {
                    return Err(LieError::CartanNotAbelian { i, j });
                }
            }
        }
        for t in &self.triples {
            let two = F::from_i64(2);
            let check = |lhs: Vec<F>, target: usize, scale: F, what: &str| {
                let mut want = vec![F::zero(); n];
                want[target] = scale;
                if lhs == want {
                    Ok(())
                } else {
                    Err(LieError::BadTriple { triple: *t, relation: what.to_string() })
                }
            };
            check(self.bracket(t.x, t.y), t.h, F::one(), "[x,y]=h")?;
            check(self.bracket(t.h, t.x), t.x, two.clone(), "[h,x]=2x")?;
            check(self.bracket(t.h, t.y), t.y, -two, "[h,y]=-2y")?;
        }
        Ok(())
    }

    /// First basis triple `(i, j, l)` where the Jacobi identity fails.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    if self.jacobi_residual(i, j, l).iter().any(|x| !x.is_zero()) {
                        return Some((i, j, l));
                    }
                }
            }
        }
        None
    }

    /// Coordinates of `[[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]`.
    pub fn jacobi_residual(&self, i: usize, j: usize, l: usize) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
            for k in 0..n {
                let ab = self.c(a, b, k);
                if ab.is_zero() {
                    continue;
                }
                for (m, o) in out.iter_mut().enumerate() {
                    let kc = self.c(k, c, m);
                    if !kc.is_zero() {
                        *o = o.clone() + ab.clone() * kc.clone();
                    }
                }
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn labels(&self) -> &[String] {
        self.vars.names()
    }

    pub fn label(&self, i: usize) -> &str {
        self.vars.name(i)
    }

    /// The basis, read as polynomial variables.
    pub fn variables(&self) -> &Variables {
        &self.vars
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    pub fn triples(&self) -> &[SlTriple] {
        &self.triples
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.vars.index_of(label)
    }

    /// Structure constant `c_ij^k`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &F {
        let n = self.dim();
        &self.structure[(i * n + j) * n + k]
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<F> {
        (0..self.dim()).map(|k| self.c(i, j, k).clone()).collect()
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket_vec(&self, u: &[F], v: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let s = ui.clone() * vj.clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o = o.clone() + s.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    /// `ad(e_i)` acting on column coordinate vectors: entry `(k, j)` is `c_ij^k`.
    pub fn ad_matrix(&self, i: usize) -> Matrix<F> {
        Matrix::from_fn(self.dim(), self.dim(), |k, j| self.c(i, j, k).clone())
    }

    /// Nonzero structure constants `(i, j, k, c)` in index order.
    pub fn nonzero_constants(&self) -> Vec<(usize, usize, usize, F)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// The special linear algebra sl(n) in a Cartan–Weyl basis.
///
/// Root vectors come in pairs `y_r, x_r` (`x_r = E_ij`, `y_r = E_ji`, `i < j`)
/// ordered by height and then by row, followed by `h_1 … h_{n-1}` with
/// `h_k = E_kk − E_{k+1,k+1}`. For n = 3 this gives
/// `y1 x1 y2 x2 y3 x3 h1 h2` with `x3 = [x1, x2]` and `y3 = [y2, y1]`.
pub fn build_sl<F: ExactField>(n: usize) -> LieAlgebra<F> {
    assert!(n >= 2, "sl(n) needs n >= 2");
    // (row, col) of each positive root vector
    let mut roots: Vec<(usize, usize)> = Vec::new();
    for height in 1..n {
        for i in 0..n - height {
            roots.push((i, i + height));
        }
    }
    let nroots = roots.len();
    let dim = 2 * nroots + n - 1;
    let mut labels = Vec::with_capacity(dim);
    let mut mats: Vec<Vec<i64>> = Vec::with_capacity(dim);
    let unit = |i: usize, j: usize| {
        let mut m = vec![0i64; n * n];
        m[i * n + j] = 1;
        m
    };
    for (r, &(i, j)) in roots.iter().enumerate() {
        labels.push(format!("y{}", r + 1));
        mats.push(unit(j, i));
        labels.push(format!("x{}", r + 1));
        mats.push(unit(i, j));
    }
    for k in 0..n - 1 {
        labels.push(format!("h{}", k + 1));
        let mut m = vec![0i64; n * n];
        m[k * n + k] = 1;
        m[(k + 1) * n + k + 1] = -1;
        mats.push(m);
    }

    let coords = |m: &[i64]| -> Vec<i64> {
        let mut v = vec![0i64; dim];
        for (r, &(i, j)) in roots.iter().enumerate() {
            v[2 * r] = m[j * n + i];
            v[2 * r + 1] = m[i * n + j];
        }
        // traceless diagonal d = Σ c_k h_k  ⇒  c_k = d_1 + … + d_k
        let mut acc = 0;
        for k in 0..n - 1 {
            acc += m[k * n + k];
            v[2 * nroots + k] = acc;
        }
        v
    };
    let matmul = |a: &[i64], b: &[i64]| -> Vec<i64> {
        let mut c = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                if a[i * n + k] != 0 {
                    for j in 0..n {
                        c[i * n + j] += a[i * n + k] * b[k * n + j];
                    }
                }
            }
        }
        c
    };

    let mut structure = vec![F::zero(); dim * dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            let ab = matmul(&mats[a], &mats[b]);
            let ba = matmul(&mats[b], &mats[a]);
            let comm: Vec<i64> = ab.iter().zip(&ba).map(|(x, y)| x - y).collect();
            for (k, c) in coords(&comm).into_iter().enumerate() {
                if c != 0 {
                    structure[(a * dim + b) * dim + k] = F::from_i64(c);
                }
            }
        }
    }
    let cartan: Vec<usize> = (2 * nroots..dim).collect();
    let triples = (0..n - 1).map(|k| SlTriple { x: 2 * k + 1, y: 2 * k, h: 2 * nroots + k }).collect();
    LieAlgebra::from_dense(format!("sl{n}"), labels, structure, cartan, triples)
        .expect("sl(n) construction is a valid Lie algebra")
}
