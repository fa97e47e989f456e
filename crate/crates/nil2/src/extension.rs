//! The central double extension.
//!
//! `extend` doubles the `V`-space of a presentation with a dual block `U`,
//! adds one new central generator `t`, and pairs `u_i` with `v_j` through the
//! identity: the new first form is `[[0, I], [-I, 0]]` and every old form is
//! pushed into the bottom-right `V`-block. The construction is formal and
//! total; no structural flags of the base are required.
//!
//! The block layout is fixed as (u-block, v-block) on the new `V` and
//! (t, w-block) on the new center. Consumers address blocks through
//! [`ExtensionLayout`] instead of hard-coded indices, so the convention
//! lives in one place.

use crate::algebra::{is_isomorphism, AlgebraPresentation, HomPair};
use crate::decomp;
use crate::mat::{block_compose, RatMatrix};
use crate::rat::Rat;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("hom pair is not an isomorphism of the given presentations")]
    NotAnIsomorphism,
    #[error("layout does not match the presentation: {0}")]
    LayoutMismatch(String),
    #[error(transparent)]
    Alg(#[from] crate::algebra::AlgError),
    #[error(transparent)]
    Mat(#[from] crate::mat::MatError),
}

/// Index bookkeeping for an extended presentation: where the `U`, `V`, `t`
/// and `W` blocks live inside the doubled coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionLayout {
    pub base: AlgebraPresentation,
    pub u_indices: Vec<usize>,
    pub v_indices: Vec<usize>,
    pub t_index: usize,
    pub w_indices: Vec<usize>,
}

impl ExtensionLayout {
    fn for_base(base: AlgebraPresentation) -> Self {
        let n = base.n();
        let m = base.m();
        Self {
            base,
            u_indices: (0..n).collect(),
            v_indices: (n..2 * n).collect(),
            t_index: 0,
            w_indices: (1..m + 1).collect(),
        }
    }

    /// The layout's index sets must partition the extended coordinates.
    pub fn conforms(&self, extended: &AlgebraPresentation) -> Result<(), ExtError> {
        let n = self.base.n();
        let m = self.base.m();
        if extended.n() != 2 * n || extended.m() != m + 1 {
            return Err(ExtError::LayoutMismatch(format!(
                "extended shape is ({}, {}), layout expects ({}, {})",
                extended.n(),
                extended.m(),
                2 * n,
                m + 1
            )));
        }
        let mut v_seen = vec![false; 2 * n];
        for &i in self.u_indices.iter().chain(&self.v_indices) {
            if i >= 2 * n || v_seen[i] {
                return Err(ExtError::LayoutMismatch(format!(
                    "V-index {i} repeated or out of range"
                )));
            }
            v_seen[i] = true;
        }
        if v_seen.iter().any(|s| !s) {
            return Err(ExtError::LayoutMismatch(
                "U and V indices do not cover the doubled space".into(),
            ));
        }
        let mut w_seen = vec![false; m + 1];
        for &i in std::iter::once(&self.t_index).chain(&self.w_indices) {
            if i > m || w_seen[i] {
                return Err(ExtError::LayoutMismatch(format!(
                    "center index {i} repeated or out of range"
                )));
            }
            w_seen[i] = true;
        }
        if w_seen.iter().any(|s| !s) {
            return Err(ExtError::LayoutMismatch(
                "t and W indices do not cover the extended center".into(),
            ));
        }
        Ok(())
    }
}

/// Builds the extended presentation and its layout.
pub fn extend(p: &AlgebraPresentation) -> (AlgebraPresentation, ExtensionLayout) {
    let n = p.n();
    let zero_n = RatMatrix::zeros(n, n);
    let pairing = block_compose(&[
        vec![zero_n.clone(), RatMatrix::identity(n)],
        vec![RatMatrix::identity(n).neg(), zero_n.clone()],
    ])
    .expect("square blocks");
    let mut forms = Vec::with_capacity(p.m() + 1);
    forms.push(pairing);
    for f in p.forms() {
        forms.push(
            block_compose(&[
                vec![zero_n.clone(), zero_n.clone()],
                vec![zero_n.clone(), f.clone()],
            ])
            .expect("square blocks"),
        );
    }
    let mut ext = AlgebraPresentation::new(2 * n, p.m() + 1, forms).expect("shape is consistent");
    if let Some(label) = &p.label {
        ext = ext.with_label(format!("ext({label})"));
    }
    (ext, ExtensionLayout::for_base(p.clone()))
}

/// Lifts an isomorphism of base presentations to their extensions: the
/// `U`-block is carried by `(F^{-1})^T`, the `V`-block by `F`, the new
/// central generator maps to its counterpart and the old center by `Psi`.
pub fn lift_isomorphism(
    source: &AlgebraPresentation,
    target: &AlgebraPresentation,
    h: &HomPair,
) -> Result<HomPair, ExtError> {
    if !is_isomorphism(source, target, h) {
        return Err(ExtError::NotAnIsomorphism);
    }
    let n = source.n();
    let m = source.m();
    let g = h.f.inverse()?.transpose();
    let zero_n = RatMatrix::zeros(n, n);
    let v_map = block_compose(&[vec![g, zero_n.clone()], vec![zero_n, h.f.clone()]])?;
    let w_map = block_compose(&[
        vec![RatMatrix::identity(1), RatMatrix::zeros(1, m)],
        vec![RatMatrix::zeros(m, 1), h.psi.clone()],
    ])?;
    Ok(HomPair {
        f: v_map,
        psi: w_map,
    })
}

/// Per-sample verdict of the indecomposability certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleVerdict {
    /// dim ker of the composed bilinear map `psi . omega`.
    pub kernel_dim: usize,
    /// Whether the sample moves the distinguished central generator.
    pub psi_t_nonzero: bool,
    /// `ker != 0` implies `psi(t) = 0`; vacuously true when `psi(t) = 0`.
    pub holds: bool,
}

/// Report of [`certify_indecomposable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndecompReport {
    /// The block structure that drives the coordinate argument: the pairing
    /// form has exact `+-I` blocks between `U` and `V` and zero `U x U`
    /// block, and every other form vanishes on `U` rows.
    pub structure_ok: bool,
    pub samples: Vec<SampleVerdict>,
    pub all_hold: bool,
}

/// Certificate checker for indecomposability of an extended presentation.
///
/// The universal statement - every center endomorphism with singular
/// composed form kills the distinguished generator - is checked two ways:
/// structurally, by verifying the exact block identities that force the
/// coordinate argument for *every* endomorphism moving `t`; and empirically
/// on the supplied samples. This is a checker, not a proof engine.
pub fn certify_indecomposable(
    extended: &AlgebraPresentation,
    layout: &ExtensionLayout,
    psi_samples: &[RatMatrix],
) -> Result<IndecompReport, ExtError> {
    layout.conforms(extended)?;
    let n = layout.base.n();
    let m_ext = extended.m();

    let pairing = extended.form(layout.t_index);
    let mut structure_ok = true;
    for (a, &ui) in layout.u_indices.iter().enumerate() {
        for (b, &vj) in layout.v_indices.iter().enumerate() {
            let want = if a == b { Rat::one() } else { Rat::zero() };
            if pairing.at(ui, vj) != &want || pairing.at(vj, ui) != &-want.clone() {
                structure_ok = false;
            }
        }
        for &uj in &layout.u_indices {
            if !pairing.at(ui, uj).is_zero() {
                structure_ok = false;
            }
        }
    }
    for &k in &layout.w_indices {
        let f = extended.form(k);
        for &ui in &layout.u_indices {
            for j in 0..2 * n {
                if !f.at(ui, j).is_zero() {
                    structure_ok = false;
                }
            }
        }
    }

    let mut samples = Vec::with_capacity(psi_samples.len());
    let mut all_hold = true;
    for psi in psi_samples {
        if psi.rows() != m_ext || psi.cols() != m_ext {
            return Err(ExtError::LayoutMismatch(format!(
                "sample endomorphism is {}x{}, want {m_ext}x{m_ext}",
                psi.rows(),
                psi.cols()
            )));
        }
        let composed = decomp::psi_omega(extended, psi)?;
        let kernel_dim = composed.ker_omega().len();
        let psi_t_nonzero = (0..m_ext).any(|i| !psi.at(i, layout.t_index).is_zero());
        let holds = !psi_t_nonzero || kernel_dim == 0;
        all_hold &= holds;
        samples.push(SampleVerdict {
            kernel_dim,
            psi_t_nonzero,
            holds,
        });
    }
    Ok(IndecompReport {
        structure_ok,
        samples,
        all_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::verify_hom;
    use crate::rat::{rat, rat_int};
    use crate::sample::{self, Rng64, TColumn};

    fn heis() -> AlgebraPresentation {
        AlgebraPresentation::heisenberg()
    }

    #[test]
    fn extend_heisenberg_blocks() {
        let (ext, layout) = extend(&heis());
        assert_eq!(ext.n(), 4);
        assert_eq!(ext.m(), 2);
        assert!(ext.validate().is_ok());
        assert!(layout.conforms(&ext).is_ok());

        let pairing = RatMatrix::from_int_rows(&[
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[-1, 0, 0, 0],
            &[0, -1, 0, 0],
        ]);
        assert_eq!(ext.form(0), &pairing);

        let pushed = RatMatrix::from_int_rows(&[
            &[0, 0, 0, 0],
            &[0, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, -1, 0],
        ]);
        assert_eq!(ext.form(1), &pushed);
    }

    #[test]
    fn extend_trivial_base() {
        let (ext, layout) = extend(&AlgebraPresentation::trivial());
        assert_eq!(ext.n(), 0);
        assert_eq!(ext.m(), 1);
        assert_eq!(ext.form(0).rows(), 0);
        assert!(layout.conforms(&ext).is_ok());
    }

    #[test]
    fn center_grows_by_exactly_one() {
        let mut rng = Rng64::new(71);
        for _ in 0..10 {
            let p = sample::commutator_center_presentation(&mut rng, 4, 3, 3);
            let (ext, _) = extend(&p);
            assert_eq!(ext.center().len(), p.center().len() + 1);
            assert!(ext.commutator_equals_center());
        }
    }

    #[test]
    fn extensions_are_nonsingular_whatever_the_base() {
        // The pairing block alone forces a trivial radical, singular base
        // forms included.
        let mut rng = Rng64::new(72);
        for _ in 0..10 {
            let n = rng.below(4) as usize;
            let m = rng.below(3) as usize;
            let p = sample::presentation(&mut rng, n, m, 4);
            let (ext, _) = extend(&p);
            assert!(ext.validate().is_ok());
            assert!(ext.is_nonsingular());
        }
    }

    #[test]
    fn quotient_by_u_and_t_returns_base() {
        let mut rng = Rng64::new(73);
        for _ in 0..10 {
            let n = 1 + rng.below(4) as usize;
            let m = 1 + rng.below(3) as usize;
            let p = sample::presentation(&mut rng, n, m, 4);
            let (ext, layout) = extend(&p);
            let u_basis: Vec<Vec<Rat>> = layout
                .u_indices
                .iter()
                .map(|&i| {
                    let mut v = vec![Rat::zero(); ext.n()];
                    v[i] = Rat::one();
                    v
                })
                .collect();
            let mut t = vec![Rat::zero(); ext.m()];
            t[layout.t_index] = Rat::one();
            let q = ext.quotient_by_graded_ideal(&u_basis, &[t]).unwrap();
            assert!(q.same_presentation(&p));
        }
    }

    #[test]
    fn lift_identity_is_identity() {
        let p = heis();
        let id = HomPair {
            f: RatMatrix::identity(2),
            psi: RatMatrix::identity(1),
        };
        let lifted = lift_isomorphism(&p, &p, &id).unwrap();
        assert_eq!(lifted.f, RatMatrix::identity(4));
        assert_eq!(lifted.psi, RatMatrix::identity(2));
    }

    #[test]
    fn lift_scaling_isomorphism() {
        let p = heis();
        let h = HomPair {
            f: RatMatrix::identity(2).scale(&rat_int(2)),
            psi: RatMatrix::from_int_rows(&[&[4]]),
        };
        let lifted = lift_isomorphism(&p, &p, &h).unwrap();
        let expected_v = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat_int(0), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat(1, 2), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(2), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(0), rat_int(2)],
        ]);
        assert_eq!(lifted.f, expected_v);
        let expected_w = RatMatrix::from_int_rows(&[&[1, 0], &[0, 4]]);
        assert_eq!(lifted.psi, expected_w);

        let (e1, _) = extend(&p);
        assert!(verify_hom(&e1, &e1, &lifted).unwrap().is_verified());
        assert!(is_isomorphism(&e1, &e1, &lifted));
    }

    #[test]
    fn lift_rejects_non_isomorphisms() {
        let p = heis();
        let bad = HomPair {
            f: RatMatrix::from_int_rows(&[&[1, 0], &[0, 0]]),
            psi: RatMatrix::identity(1),
        };
        assert_eq!(
            lift_isomorphism(&p, &p, &bad),
            Err(ExtError::NotAnIsomorphism)
        );
    }

    #[test]
    fn lift_is_functorial() {
        let mut rng = Rng64::new(79);
        for _ in 0..10 {
            let p1 = sample::presentation(&mut rng, 3, 2, 3);
            let f1 = sample::invertible_matrix(&mut rng, 3, 3);
            let s1 = sample::invertible_matrix(&mut rng, 2, 3);
            let p2 = p1.pushforward(&f1, &s1).unwrap();
            let f2 = sample::invertible_matrix(&mut rng, 3, 3);
            let s2 = sample::invertible_matrix(&mut rng, 2, 3);
            let p3 = p2.pushforward(&f2, &s2).unwrap();

            let h1 = HomPair { f: f1, psi: s1 };
            let h2 = HomPair { f: f2, psi: s2 };
            let h = crate::algebra::compose_homs(&h2, &h1).unwrap();

            let l1 = lift_isomorphism(&p1, &p2, &h1).unwrap();
            let l2 = lift_isomorphism(&p2, &p3, &h2).unwrap();
            let l = lift_isomorphism(&p1, &p3, &h).unwrap();
            assert_eq!(crate::algebra::compose_homs(&l2, &l1).unwrap(), l);
        }
    }

    #[test]
    fn certificate_on_extended_heisenberg() {
        let (ext, layout) = extend(&heis());

        let id = RatMatrix::identity(2);
        let report = certify_indecomposable(&ext, &layout, &[id]).unwrap();
        assert!(report.structure_ok);
        assert_eq!(report.samples[0].kernel_dim, 0);
        assert!(report.samples[0].psi_t_nonzero);
        assert!(report.all_hold);

        // Killing t leaves the vacuous branch: a nontrivial kernel is fine.
        let kill_t = RatMatrix::from_int_rows(&[&[0, 0], &[0, 1]]);
        let report = certify_indecomposable(&ext, &layout, &[kill_t]).unwrap();
        assert!(!report.samples[0].psi_t_nonzero);
        assert!(report.samples[0].holds);
        assert!(report.all_hold);
    }

    #[test]
    fn random_t_moving_endos_have_trivial_kernel() {
        let (ext, layout) = extend(&heis());
        let mut rng = Rng64::new(83);
        let samples: Vec<RatMatrix> = (0..100)
            .map(|_| sample::extended_w_endo(&mut rng, 2, 5, TColumn::NonZero))
            .collect();
        let report = certify_indecomposable(&ext, &layout, &samples).unwrap();
        assert!(report.all_hold);
        assert!(report
            .samples
            .iter()
            .all(|s| s.kernel_dim == 0 && s.psi_t_nonzero));
    }
}
