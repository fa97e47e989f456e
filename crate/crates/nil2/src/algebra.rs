//! Class-2 nilpotent algebra presentations.
//!
//! An algebra here is `V (+) W` with `dim V = n`, `dim W = m`, and the whole
//! bracket structure carried by `m` skew-symmetric `n x n` matrices: the
//! bracket of two `V`-vectors lands in `W` with coordinates given by the
//! bilinear forms, and `W` is central. Two presentations are never
//! canonicalized; equality is entrywise, and isomorphism is always witnessed
//! explicitly by a [`HomPair`].

use crate::mat::{MatError, RatMatrix};
use crate::rat::Rat;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("presentation shape: expected {expected} forms of size {n}x{n}, {found}")]
    Shape {
        n: usize,
        expected: usize,
        found: String,
    },
    #[error("element has wrong shape: v-part {v_len} (want {n}), w-part {w_len} (want {m})")]
    ElementShape {
        n: usize,
        m: usize,
        v_len: usize,
        w_len: usize,
    },
    #[error("hom pair has wrong shape for the bound presentations")]
    HomShape,
    #[error("subspace vector {index} has length {found}, want {want}")]
    SubspaceShape {
        index: usize,
        found: usize,
        want: usize,
    },
    #[error("not an ideal: bracket of ideal vector {v_index} with basis vector {col} leaves the designated center part")]
    NotAnIdeal { v_index: usize, col: usize },
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// Skew-symmetry violation found by [`AlgebraPresentation::validate`].
/// Indices are zero-based: `form`, then the matrix position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("form {form} is not skew-symmetric at ({row}, {col})")]
pub struct Violation {
    pub form: usize,
    pub row: usize,
    pub col: usize,
}

/// A class-2 algebra given by `m` skew-symmetric `n x n` bracket forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    n: usize,
    m: usize,
    forms: Vec<RatMatrix>,
    pub label: Option<String>,
}

/// An element split into its `V`-part and `W`-part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub v: Vec<Rat>,
    pub w: Vec<Rat>,
}

/// A graded linear map `(F, Psi)`: `F` sends source `V` to target `V`
/// (shape `n_target x n_source`), `Psi` sends source `W` to target `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPair {
    pub f: RatMatrix,
    pub psi: RatMatrix,
}

/// Outcome of [`verify_hom`]: either the bracket-compatibility identity holds
/// for every target form, or the first failing entry is reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomVerdict {
    Verified,
    Mismatch { form: usize, row: usize, col: usize },
}

impl HomVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, HomVerdict::Verified)
    }
}

impl Element {
    pub fn new(v: Vec<Rat>, w: Vec<Rat>) -> Self {
        Self { v, w }
    }

    pub fn zero(n: usize, m: usize) -> Self {
        Self {
            v: vec![Rat::zero(); n],
            w: vec![Rat::zero(); m],
        }
    }

    /// The i-th `V` basis vector of a presentation with the given shape.
    pub fn v_basis(i: usize, n: usize, m: usize) -> Self {
        let mut e = Self::zero(n, m);
        e.v[i] = num_traits::One::one();
        e
    }

    /// The k-th `W` basis vector.
    pub fn w_basis(k: usize, n: usize, m: usize) -> Self {
        let mut e = Self::zero(n, m);
        e.w[k] = num_traits::One::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(Rat::is_zero) && self.w.iter().all(Rat::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            v: self.v.iter().zip(&rhs.v).map(|(a, b)| a + b).collect(),
            w: self.w.iter().zip(&rhs.w).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            v: self.v.iter().map(|a| -a).collect(),
            w: self.w.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self {
            v: self.v.iter().map(|a| a * k).collect(),
            w: self.w.iter().map(|a| a * k).collect(),
        }
    }
}

impl AlgebraPresentation {
    /// Shape-checks only; skew-symmetry is the job of [`Self::validate`], so
    /// that a violating presentation can be constructed and reported on.
    pub fn new(n: usize, m: usize, forms: Vec<RatMatrix>) -> Result<Self, AlgError> {
        if forms.len() != m {
            return Err(AlgError::Shape {
                n,
                expected: m,
                found: format!("got {} forms", forms.len()),
            });
        }
        for (k, f) in forms.iter().enumerate() {
            if f.rows() != n || f.cols() != n {
                return Err(AlgError::Shape {
                    n,
                    expected: m,
                    found: format!("form {k} is {}x{}", f.rows(), f.cols()),
                });
            }
        }
        Ok(Self {
            n,
            m,
            forms,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// The Heisenberg presentation: n=2, m=1, one symplectic form.
    pub fn heisenberg() -> Self {
        Self::new(2, 1, vec![RatMatrix::from_int_rows(&[&[0, 1], &[-1, 0]])])
            .expect("fixed shape")
            .with_label("heisenberg")
    }

    /// The zero algebra (n = m = 0).
    pub fn trivial() -> Self {
        Self::new(0, 0, Vec::new()).expect("fixed shape")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn forms(&self) -> &[RatMatrix] {
        &self.forms
    }

    pub fn form(&self, k: usize) -> &RatMatrix {
        &self.forms[k]
    }

    /// Entrywise equality of shapes and forms, ignoring labels.
    pub fn same_presentation(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && self.forms == other.forms
    }

    /// Checks skew-symmetry of every form; reports the first violation as
    /// zero-based `(form, row, col)`.
    pub fn validate(&self) -> Result<(), Violation> {
        for (k, f) in self.forms.iter().enumerate() {
            if let Some((row, col)) = f.skew_violation() {
                return Err(Violation { form: k, row, col });
            }
        }
        Ok(())
    }

    pub(crate) fn conform(&self, x: &Element) -> Result<(), AlgError> {
        if x.v.len() != self.n || x.w.len() != self.m {
            return Err(AlgError::ElementShape {
                n: self.n,
                m: self.m,
                v_len: x.v.len(),
                w_len: x.w.len(),
            });
        }
        Ok(())
    }

    /// The Lie bracket. The result lives in the center: its `V`-part is zero
    /// and its k-th `W`-coordinate is `x_v^T A^(k) y_v`. The `W`-parts of the
    /// inputs are central and are deliberately ignored.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element, AlgError> {
        self.conform(x)?;
        self.conform(y)?;
        let mut w = Vec::with_capacity(self.m);
        for f in &self.forms {
            let fy = f.mul_vec(&y.v)?;
            let mut acc = Rat::zero();
            for (a, b) in x.v.iter().zip(&fy) {
                acc += a * b;
            }
            w.push(acc);
        }
        Ok(Element {
            v: vec![Rat::zero(); self.n],
            w,
        })
    }

    /// All forms stacked vertically into an `(m n) x n` matrix, whose kernel
    /// is the radical of the bracket form.
    fn stacked_forms(&self) -> RatMatrix {
        RatMatrix::from_fn(self.m * self.n, self.n, |i, j| {
            self.forms[i / self.n].at(i % self.n, j).clone()
        })
    }

    /// Basis of `{x in V : [x, V] = 0}`.
    pub fn ker_omega(&self) -> Vec<Vec<Rat>> {
        self.stacked_forms().kernel_basis()
    }

    /// The bracket form has trivial radical.
    pub fn is_nonsingular(&self) -> bool {
        self.ker_omega().is_empty()
    }

    /// Rows are the value coordinates `(a_ij^(1), .., a_ij^(m))` over the
    /// strictly upper positions `i < j`; its rank is the dimension of the
    /// bracket's value span inside `W`.
    pub fn value_span_matrix(&self) -> RatMatrix {
        let pairs: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .collect();
        RatMatrix::from_fn(pairs.len(), self.m, |r, k| {
            let (i, j) = pairs[r];
            self.forms[k].at(i, j).clone()
        })
    }

    /// Bracket values span all of `W`.
    pub fn is_surjective(&self) -> bool {
        self.value_span_matrix().rank() == self.m
    }

    /// Commutator subalgebra equals the center: for nonsingular bracket forms
    /// this is exactly surjectivity, so the combined flag is reported.
    pub fn commutator_equals_center(&self) -> bool {
        self.is_nonsingular() && self.is_surjective()
    }

    /// Basis of the center: all of `W` plus the bracket radical inside `V`.
    pub fn center(&self) -> Vec<Element> {
        let mut basis: Vec<Element> = (0..self.m)
            .map(|k| Element::w_basis(k, self.n, self.m))
            .collect();
        for v in self.ker_omega() {
            basis.push(Element::new(v, vec![Rat::zero(); self.m]));
        }
        basis
    }

    /// Block-diagonal sum: forms of `self` sit in the top-left `V`-block and
    /// feed the first `m` center coordinates, forms of `other` in the
    /// bottom-right block feeding the rest.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut forms = Vec::with_capacity(self.m + other.m);
        for f in &self.forms {
            forms.push(RatMatrix::from_fn(n, n, |i, j| {
                if i < self.n && j < self.n {
                    f.at(i, j).clone()
                } else {
                    Rat::zero()
                }
            }));
        }
        for g in &other.forms {
            forms.push(RatMatrix::from_fn(n, n, |i, j| {
                if i >= self.n && j >= self.n {
                    g.at(i - self.n, j - self.n).clone()
                } else {
                    Rat::zero()
                }
            }));
        }
        Self::new(n, self.m + other.m, forms).expect("shape is consistent by construction")
    }

    /// Transports the presentation along invertible coordinate changes so
    /// that `(f, psi)` becomes an isomorphism onto the result.
    pub fn pushforward(&self, f: &RatMatrix, psi: &RatMatrix) -> Result<Self, AlgError> {
        if f.rows() != self.n || f.cols() != self.n || psi.rows() != self.m || psi.cols() != self.m
        {
            return Err(AlgError::HomShape);
        }
        let f_inv = f.inverse()?;
        let f_inv_t = f_inv.transpose();
        let mut forms = Vec::with_capacity(self.m);
        for k in 0..self.m {
            let mut combo = RatMatrix::zeros(self.n, self.n);
            for l in 0..self.m {
                combo = combo.add(&self.forms[l].scale(psi.at(k, l)))?;
            }
            forms.push(f_inv_t.matmul(&combo)?.matmul(&f_inv)?);
        }
        Self::new(self.n, self.m, forms)
    }
}

/// Checks the bracket-compatibility identity `F^T B^(k) F = sum_l Psi[k,l]
/// A^(l)` for every target form, reporting the first failing entry.
pub fn verify_hom(
    source: &AlgebraPresentation,
    target: &AlgebraPresentation,
    h: &HomPair,
) -> Result<HomVerdict, AlgError> {
    if h.f.rows() != target.n
        || h.f.cols() != source.n
        || h.psi.rows() != target.m
        || h.psi.cols() != source.m
    {
        return Err(AlgError::HomShape);
    }
    let ft = h.f.transpose();
    for k in 0..target.m {
        let lhs = ft.matmul(&target.forms[k])?.matmul(&h.f)?;
        let mut rhs = RatMatrix::zeros(source.n, source.n);
        for l in 0..source.m {
            rhs = rhs.add(&source.forms[l].scale(h.psi.at(k, l)))?;
        }
        for i in 0..source.n {
            for j in 0..source.n {
                if lhs.at(i, j) != rhs.at(i, j) {
                    return Ok(HomVerdict::Mismatch {
                        form: k,
                        row: i,
                        col: j,
                    });
                }
            }
        }
    }
    Ok(HomVerdict::Verified)
}

/// A hom pair is an isomorphism when shapes agree, both maps are invertible
/// and the bracket identity verifies. Shape mismatches yield `false` rather
/// than an error.
pub fn is_isomorphism(
    source: &AlgebraPresentation,
    target: &AlgebraPresentation,
    h: &HomPair,
) -> bool {
    source.n == target.n
        && source.m == target.m
        && h.f.is_invertible()
        && h.psi.is_invertible()
        && matches!(verify_hom(source, target, h), Ok(HomVerdict::Verified))
}

/// Applies `(F, Psi)` to an element coordinatewise.
pub fn apply_hom(h: &HomPair, x: &Element) -> Result<Element, AlgError> {
    Ok(Element {
        v: h.f.mul_vec(&x.v)?,
        w: h.psi.mul_vec(&x.w)?,
    })
}

/// Composition `second . first` of hom pairs.
pub fn compose_homs(second: &HomPair, first: &HomPair) -> Result<HomPair, AlgError> {
    Ok(HomPair {
        f: second.f.matmul(&first.f)?,
        psi: second.psi.matmul(&first.psi)?,
    })
}

/// Row-reduces a spanning set to an independent basis (as vectors), dropping
/// zero rows. Deterministic, so quotient constructions are reproducible.
fn canonical_basis(vectors: &[Vec<Rat>], dim: usize) -> Result<Vec<Vec<Rat>>, AlgError> {
    for (index, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(AlgError::SubspaceShape {
                index,
                found: v.len(),
                want: dim,
            });
        }
    }
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let m = RatMatrix::from_rows(vectors.to_vec());
    let r = m.rref();
    Ok((0..r.pivots.len())
        .map(|i| r.matrix.row(i).to_vec())
        .collect())
}

/// Extends independent columns to a full basis by greedily appending standard
/// basis vectors, in index order. Returns the square change-of-basis matrix
/// whose first columns are the given vectors.
fn complete_basis(cols: &[Vec<Rat>], dim: usize) -> RatMatrix {
    let mut chosen: Vec<Vec<Rat>> = cols.to_vec();
    let mut e = 0;
    while chosen.len() < dim {
        let mut unit = vec![Rat::zero(); dim];
        unit[e] = num_traits::One::one();
        let mut candidate = chosen.clone();
        candidate.push(unit);
        let rank = RatMatrix::from_rows(candidate.clone()).rank();
        if rank == candidate.len() {
            chosen = candidate;
        }
        e += 1;
    }
    // Columns of the result are the chosen vectors.
    RatMatrix::from_fn(dim, dim, |i, j| chosen[j][i].clone())
}

/// Is `target` in the span of `basis` (vectors of equal length)?
fn in_span(basis: &[Vec<Rat>], target: &[Rat]) -> bool {
    if target.iter().all(Rat::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let dim = target.len();
    // Solve basis^T x = target: consistent iff no pivot lands in the
    // augmented column.
    let aug = RatMatrix::from_fn(dim, basis.len() + 1, |i, j| {
        if j < basis.len() {
            basis[j][i].clone()
        } else {
            target[i].clone()
        }
    });
    !aug.rref().pivots.contains(&basis.len())
}

impl AlgebraPresentation {
    /// Quotient by a graded ideal spanned by the given `V`- and `W`-vectors.
    ///
    /// The span must be an ideal, i.e. brackets of ideal `V`-vectors with
    /// anything land inside the designated `W`-span; otherwise the offending
    /// pair is reported. The quotient is computed by completing both bases,
    /// rewriting the forms in the completed coordinates and deleting the
    /// ideal's rows, columns and forms. Quotienting by zero subspaces returns
    /// the presentation unchanged, entrywise.
    pub fn quotient_by_graded_ideal(
        &self,
        v_subspace: &[Vec<Rat>],
        w_subspace: &[Vec<Rat>],
    ) -> Result<Self, AlgError> {
        let v_basis = canonical_basis(v_subspace, self.n)?;
        let w_basis = canonical_basis(w_subspace, self.m)?;

        // Ideal check: bracket values of ideal vectors stay in the W-span.
        for (v_index, x) in v_basis.iter().enumerate() {
            for col in 0..self.n {
                let value: Vec<Rat> = (0..self.m)
                    .map(|k| {
                        let fe = self.forms[k].col(col);
                        let mut acc = Rat::zero();
                        for (a, b) in x.iter().zip(&fe) {
                            acc += a * b;
                        }
                        acc
                    })
                    .collect();
                if !in_span(&w_basis, &value) {
                    return Err(AlgError::NotAnIdeal { v_index, col });
                }
            }
        }

        let dv = v_basis.len();
        let dw = w_basis.len();
        let pv = complete_basis(&v_basis, self.n);
        let pw = complete_basis(&w_basis, self.m);
        let pw_inv = pw.inverse().expect("completed basis is invertible");

        // Forms in the new V coordinates.
        let pvt = pv.transpose();
        let rewritten: Vec<RatMatrix> = self
            .forms
            .iter()
            .map(|f| pvt.matmul(f).unwrap().matmul(&pv).unwrap())
            .collect();

        // New W coordinates: row r of pw_inv picks the r-th coordinate.
        let nq = self.n - dv;
        let mq = self.m - dw;
        let mut forms = Vec::with_capacity(mq);
        for r in dw..self.m {
            let mut combo = RatMatrix::zeros(self.n, self.n);
            for k in 0..self.m {
                combo = combo.add(&rewritten[k].scale(pw_inv.at(r, k)))?;
            }
            forms.push(RatMatrix::from_fn(nq, nq, |i, j| {
                combo.at(dv + i, dv + j).clone()
            }));
        }
        Self::new(nq, mq, forms)
    }
}
