//! Decomposability certificates.
//!
//! A family of center endomorphisms `psi_i` with every composed form
//! `psi_i . omega` singular and jointly trivial kernel is a *necessary*
//! condition for an algebra to be geometrically equivalent to a product of
//! proper subalgebras. This module composes pencils, verifies supplied
//! families, and searches for rank-one families where that search is
//! decidable. A valid certificate never claims decomposability - reports say
//! the necessary condition holds - and `NotFound` from the sampling mode is
//! explicitly inconclusive.

use crate::algebra::{AlgError, AlgebraPresentation};
use crate::mat::RatMatrix;
use crate::rat::{height, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A list of center endomorphisms, each `m x m` for the bound presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularFamily {
    pub members: Vec<RatMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// Member whose composed form has trivial kernel.
    MemberNonsingular {
        index: usize,
    },
    /// The members' joint kernel is nontrivial (its dimension is reported).
    JointKernelNontrivial {
        dim: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub family: SingularFamily,
    pub per_member_kernel_dims: Vec<usize>,
    pub joint_kernel_dim: usize,
    pub verdict: Verdict,
}

impl CertificateReport {
    pub fn is_valid(&self) -> bool {
        matches!(self.verdict, Verdict::Valid)
    }
}

/// Result of [`search_rank_one_family`]. Absence of a rank-one certificate
/// proves nothing in the sampled regime, so the completeness of the search
/// mode travels with the outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(CertificateReport),
    NotFound { complete_for_rank_one: bool },
}

/// Composes the bracket forms with a center endomorphism: the k-th new form
/// is `sum_l psi[k,l] A^(l)`. Skew-symmetry is preserved.
pub fn psi_omega(
    p: &AlgebraPresentation,
    psi: &RatMatrix,
) -> Result<AlgebraPresentation, AlgError> {
    if psi.rows() != p.m() || psi.cols() != p.m() {
        return Err(AlgError::HomShape);
    }
    let mut forms = Vec::with_capacity(p.m());
    for k in 0..p.m() {
        let mut combo = RatMatrix::zeros(p.n(), p.n());
        for l in 0..p.m() {
            combo = combo.add(&p.form(l).scale(psi.at(k, l)))?;
        }
        forms.push(combo);
    }
    AlgebraPresentation::new(p.n(), p.m(), forms)
}

/// Checks a supplied family: every composed form must be singular and the
/// members' kernels must intersect trivially.
pub fn verify_certificate(
    p: &AlgebraPresentation,
    family: &SingularFamily,
) -> Result<CertificateReport, AlgError> {
    let m = p.m();
    let mut per_member = Vec::with_capacity(family.members.len());
    for psi in &family.members {
        per_member.push(psi_omega(p, psi)?.ker_omega().len());
    }
    // Joint kernel of the stacked endomorphisms.
    let stacked = RatMatrix::from_fn(family.members.len() * m, m, |i, j| {
        family.members[i / m].at(i % m, j).clone()
    });
    let joint = stacked.kernel_basis().len();

    let verdict = if let Some(index) = per_member.iter().position(|&d| d == 0) {
        Verdict::MemberNonsingular { index }
    } else if joint != 0 {
        Verdict::JointKernelNontrivial { dim: joint }
    } else {
        Verdict::Valid
    };
    Ok(CertificateReport {
        family: family.clone(),
        per_member_kernel_dims: per_member,
        joint_kernel_dim: joint,
        verdict,
    })
}

/// The pencil member selected by a functional: `sum_l c[l] A^(l)`.
fn pencil_member(p: &AlgebraPresentation, c: &[Rat]) -> RatMatrix {
    let mut combo = RatMatrix::zeros(p.n(), p.n());
    for (l, coeff) in c.iter().enumerate() {
        combo = combo.add(&p.form(l).scale(coeff)).expect("square forms");
    }
    combo
}

/// Rank-one member `w c^T` built from the i-th basis vector and a functional.
fn rank_one_member(m: usize, w_index: usize, c: &[Rat]) -> RatMatrix {
    RatMatrix::from_fn(m, m, |i, j| {
        if i == w_index {
            c[j].clone()
        } else {
            Rat::zero()
        }
    })
}

fn family_from_functionals(
    p: &AlgebraPresentation,
    functionals: &[Vec<Rat>],
) -> Result<SearchOutcome, AlgError> {
    let members = functionals
        .iter()
        .enumerate()
        .map(|(i, c)| rank_one_member(p.m(), i, c))
        .collect();
    let report = verify_certificate(p, &SingularFamily { members })?;
    debug_assert!(report.is_valid());
    Ok(SearchOutcome::Found(report))
}

/// Exact coefficients of `g(t) = Pf(t A + B)` (degree at most n/2), by
/// evaluation at `0..=n/2` and solving the Vandermonde system.
fn pfaffian_pencil_poly(a: &RatMatrix, b: &RatMatrix) -> Vec<Rat> {
    let d = a.rows() / 2;
    let points: Vec<Rat> = (0..=d as i64).map(crate::rat::rat_int).collect();
    let values: Vec<Rat> = points
        .iter()
        .map(|t| {
            a.scale(t)
                .add(b)
                .expect("equal shapes")
                .pfaffian()
                .expect("skew pencil member")
        })
        .collect();
    let vandermonde = RatMatrix::from_fn(d + 1, d + 1, |i, j| {
        let mut pow = Rat::one();
        for _ in 0..j {
            pow *= &points[i];
        }
        pow
    });
    let inv = vandermonde.inverse().expect("distinct nodes");
    inv.mul_vec(&values).expect("square system")
}

/// Divisors of |x| by trial division. Exact; intended for the modest
/// coefficient sizes the pencil polynomials produce here.
fn divisors(x: &BigInt) -> Vec<BigInt> {
    let x = x.abs();
    assert!(!x.is_zero());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= x {
        if x.is_multiple_of(&d) {
            small.push(d.clone());
            large.push(&x / &d);
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small.dedup();
    small
}

/// All rational roots of a polynomial with rational coefficients
/// (ascending-degree order), via the rational-root theorem after clearing
/// denominators. Returns roots sorted ascending.
fn rational_roots(coeffs: &[Rat]) -> Vec<Rat> {
    // Clear denominators.
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let Some(low) = ints.iter().position(|c| !c.is_zero()) else {
        return Vec::new(); // zero polynomial: handled by the caller
    };
    let high = ints.iter().rposition(|c| !c.is_zero()).expect("nonzero");
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rat::zero());
    }
    if high > low {
        let eval = |r: &Rat| -> Rat {
            let mut acc = Rat::zero();
            let mut pow = Rat::one();
            for c in coeffs {
                acc += c * &pow;
                pow *= r;
            }
            acc
        };
        for q in divisors(&ints[high]) {
            for p in divisors(&ints[low]) {
                for candidate in [
                    Rat::new(p.clone(), q.clone()),
                    Rat::new(-p.clone(), q.clone()),
                ] {
                    if eval(&candidate).is_zero() && !roots.contains(&candidate) {
                        roots.push(candidate);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

/// All reduced rationals with max(|numerator|, denominator) <= h, ascending.
fn values_of_height_at_most(h: i64) -> Vec<Rat> {
    let mut out = vec![Rat::zero()];
    for q in 1..=h {
        for p in 1..=h {
            if BigInt::from(p).gcd(&BigInt::from(q)).is_one() {
                out.push(crate::rat::rat(p, q));
                out.push(crate::rat::rat(-p, q));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Searches for a certificate among rank-one endomorphisms `w c^T`, for
/// which singularity of the composed form reduces to singularity of the
/// single pencil member picked by `c`.
///
/// Odd `n`: every functional works (odd skew matrices are singular), so the
/// coordinate functionals always give a valid family. Even `n` with one or
/// two forms: the Pfaffian of the pencil is a polynomial whose rational
/// roots are found exactly, so `NotFound` is conclusive for rank-one
/// families. Three or more forms: functionals are sampled by increasing
/// height up to `denominator_bound`, ties broken lexicographically, and
/// `NotFound` is inconclusive.
///
/// A family never needs more than `m` members: only the joint kernel of the
/// functionals matters, so candidates are kept only while they grow the
/// span.
pub fn search_rank_one_family(
    p: &AlgebraPresentation,
    denominator_bound: u64,
) -> Result<SearchOutcome, AlgError> {
    assert!(denominator_bound >= 1);
    let n = p.n();
    let m = p.m();

    if m == 0 {
        // No center to decompose over; the empty family is vacuously valid.
        return Ok(SearchOutcome::Found(verify_certificate(
            p,
            &SingularFamily {
                members: Vec::new(),
            },
        )?));
    }

    if n % 2 == 1 {
        let functionals: Vec<Vec<Rat>> = (0..m)
            .map(|i| {
                let mut c = vec![Rat::zero(); m];
                c[i] = Rat::one();
                c
            })
            .collect();
        return family_from_functionals(p, &functionals);
    }

    match m {
        1 => {
            if p.form(0).pfaffian().expect("validated skew form").is_zero() {
                family_from_functionals(p, &[vec![Rat::one()]])
            } else {
                // Only c = 0 makes the pencil singular, and the zero
                // endomorphism alone can never have trivial joint kernel.
                Ok(SearchOutcome::NotFound {
                    complete_for_rank_one: true,
                })
            }
        }
        2 => {
            let coeffs = pfaffian_pencil_poly(p.form(0), p.form(1));
            if coeffs.iter().all(Rat::is_zero) {
                // Identically singular pencil: coordinate functionals work.
                let functionals =
                    vec![vec![Rat::one(), Rat::zero()], vec![Rat::zero(), Rat::one()]];
                return family_from_functionals(p, &functionals);
            }
            let mut functionals: Vec<Vec<Rat>> = Vec::new();
            if coeffs.last().expect("degree n/2 polynomial").is_zero() {
                // Root at infinity: the first form itself is singular.
                functionals.push(vec![Rat::one(), Rat::zero()]);
            }
            for root in rational_roots(&coeffs) {
                functionals.push(vec![root, Rat::one()]);
            }
            if functionals.len() >= 2 {
                family_from_functionals(p, &functionals[..2])
            } else {
                Ok(SearchOutcome::NotFound {
                    complete_for_rank_one: true,
                })
            }
        }
        _ => {
            let mut collected: Vec<Vec<Rat>> = Vec::new();
            for h in 1..=denominator_bound as i64 {
                let values = values_of_height_at_most(h);
                let mut odometer = vec![0usize; m];
                loop {
                    let c: Vec<Rat> = odometer.iter().map(|&i| values[i].clone()).collect();
                    let max_height = c.iter().map(height).max().expect("m >= 1");
                    let is_new_height = max_height == BigInt::from(h);
                    if is_new_height && !c.iter().all(Rat::is_zero) {
                        let singular = pencil_member(p, &c).pfaffian().expect("skew").is_zero();
                        if singular {
                            let mut candidate = collected.clone();
                            candidate.push(c.clone());
                            if RatMatrix::from_rows(candidate.clone()).rank() > collected.len() {
                                collected = candidate;
                                if collected.len() == m {
                                    return family_from_functionals(p, &collected);
                                }
                            }
                        }
                    }
                    // Advance lexicographically, last coordinate fastest.
                    let mut pos = m;
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        odometer[pos] += 1;
                        if odometer[pos] < values.len() {
                            break;
                        }
                        odometer[pos] = 0;
                    }
                    if odometer.iter().all(|&i| i == 0) {
                        break;
                    }
                }
            }
            Ok(SearchOutcome::NotFound {
                complete_for_rank_one: false,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::HomPair;
    use crate::extension::extend;
    use crate::rat::{rat, rat_int};
    use crate::sample::{self, Rng64, TColumn};

    fn heis() -> AlgebraPresentation {
        AlgebraPresentation::heisenberg()
    }

    #[test]
    fn psi_omega_examples() {
        let p = heis();
        let same = psi_omega(&p, &RatMatrix::identity(1)).unwrap();
        assert!(same.same_presentation(&p));

        let zero = psi_omega(&p, &RatMatrix::zeros(1, 1)).unwrap();
        assert!(zero.form(0).is_zero());
        assert_eq!(zero.ker_omega().len(), 2);

        // Two-form presentation, row functional stacked with a zero row.
        let a = RatMatrix::from_int_rows(&[&[0, 1], &[-1, 0]]);
        let b = RatMatrix::from_int_rows(&[&[0, 3], &[-3, 0]]);
        let p2 = AlgebraPresentation::new(2, 2, vec![a.clone(), b]).unwrap();
        let psi = RatMatrix::from_int_rows(&[&[1, 0], &[0, 0]]);
        let q = psi_omega(&p2, &psi).unwrap();
        assert_eq!(q.form(0), &a);
        assert!(q.form(1).is_zero());
    }

    #[test]
    fn psi_omega_composes_like_matrix_product() {
        let mut rng = Rng64::new(101);
        for _ in 0..10 {
            let p = sample::presentation(&mut rng, 4, 3, 4);
            let s1 = sample::rat_matrix(&mut rng, 3, 3, 4);
            let s2 = sample::rat_matrix(&mut rng, 3, 3, 4);
            let once = psi_omega(&p, &s2.matmul(&s1).unwrap()).unwrap();
            let twice = psi_omega(&psi_omega(&p, &s1).unwrap(), &s2).unwrap();
            assert!(once.same_presentation(&twice));
        }
    }

    #[test]
    fn kernel_grows_under_composition() {
        let mut rng = Rng64::new(103);
        for _ in 0..10 {
            let p = sample::presentation(&mut rng, 4, 2, 4);
            let psi = sample::rat_matrix(&mut rng, 2, 2, 4);
            let base_ker = p.ker_omega();
            let composed = psi_omega(&p, &psi).unwrap();
            for v in &base_ker {
                let stacked = composed.ker_omega();
                // Membership: v must lie in the span of the composed kernel.
                let mut rows = stacked.clone();
                rows.push(v.clone());
                assert_eq!(
                    RatMatrix::from_rows(rows).rank(),
                    RatMatrix::from_rows(stacked).rank()
                );
            }
        }
    }

    #[test]
    fn hom_kernel_lands_in_composed_kernel() {
        // A verified non-injective endomorphism: project the double
        // Heisenberg onto its first block.
        let p = heis().direct_sum(&heis());
        let f =
            RatMatrix::from_int_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        let psi = RatMatrix::from_int_rows(&[&[1, 0], &[0, 0]]);
        let h = HomPair {
            f: f.clone(),
            psi: psi.clone(),
        };
        assert!(crate::algebra::verify_hom(&p, &p, &h)
            .unwrap()
            .is_verified());
        let composed = psi_omega(&p, &psi).unwrap();
        for v in f.kernel_basis() {
            let image: Vec<Rat> = composed
                .forms()
                .iter()
                .flat_map(|form| form.mul_vec(&v).unwrap())
                .collect();
            assert!(image.iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn verify_rejects_empty_family() {
        let p = heis();
        let report = verify_certificate(
            &p,
            &SingularFamily {
                members: Vec::new(),
            },
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::JointKernelNontrivial { dim: 1 });
    }

    #[test]
    fn extended_presentations_refute_t_moving_families() {
        let (ext, _) = extend(&heis());
        let mut rng = Rng64::new(107);
        let member = sample::extended_w_endo(&mut rng, 2, 4, TColumn::NonZero);
        let report = verify_certificate(
            &ext,
            &SingularFamily {
                members: vec![member],
            },
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::MemberNonsingular { index: 0 });
    }

    #[test]
    fn projection_family_certifies_the_double() {
        let p = heis().direct_sum(&heis());
        let proj1 = RatMatrix::from_int_rows(&[&[1, 0], &[0, 0]]);
        let proj2 = RatMatrix::from_int_rows(&[&[0, 0], &[0, 1]]);
        let report = verify_certificate(
            &p,
            &SingularFamily {
                members: vec![proj1, proj2],
            },
        )
        .unwrap();
        assert!(report.is_valid());
        assert_eq!(report.per_member_kernel_dims, vec![2, 2]);
        assert_eq!(report.joint_kernel_dim, 0);
    }

    #[test]
    fn block_projections_certify_random_sums() {
        let mut rng = Rng64::new(229);
        let mut checked = 0;
        while checked < 10 {
            let na = 2 + rng.below(3) as usize;
            let nb = 2 + rng.below(3) as usize;
            let a = sample::presentation(&mut rng, na, 1, 4);
            let b = sample::presentation(&mut rng, nb, 1, 4);
            if a.form(0).is_zero() || b.form(0).is_zero() {
                continue;
            }
            let sum = a.direct_sum(&b);
            let members = vec![
                RatMatrix::from_int_rows(&[&[1, 0], &[0, 0]]),
                RatMatrix::from_int_rows(&[&[0, 0], &[0, 1]]),
            ];
            let report = verify_certificate(&sum, &SingularFamily { members }).unwrap();
            assert!(report.is_valid());
            checked += 1;
        }
    }

    #[test]
    fn search_on_odd_dimension_always_succeeds() {
        let mut rng = Rng64::new(109);
        for _ in 0..10 {
            let m = 1 + rng.below(3) as usize;
            let p = sample::presentation(&mut rng, 3, m, 4);
            match search_rank_one_family(&p, 3).unwrap() {
                SearchOutcome::Found(report) => {
                    assert!(report.is_valid());
                    assert_eq!(report.family.members.len(), m);
                }
                SearchOutcome::NotFound { .. } => panic!("odd dimension must certify"),
            }
        }
    }

    #[test]
    fn search_on_heisenberg_is_conclusively_not_found() {
        match search_rank_one_family(&heis(), 5).unwrap() {
            SearchOutcome::NotFound {
                complete_for_rank_one,
            } => assert!(complete_for_rank_one),
            SearchOutcome::Found(_) => panic!("Heisenberg has no rank-one certificate"),
        }
    }

    #[test]
    fn search_finds_projections_for_the_double() {
        let p = heis().direct_sum(&heis());
        match search_rank_one_family(&p, 5).unwrap() {
            SearchOutcome::Found(report) => {
                assert!(report.is_valid());
                let proj1 = RatMatrix::from_int_rows(&[&[1, 0], &[0, 0]]);
                let proj2 = RatMatrix::from_int_rows(&[&[0, 0], &[0, 1]]);
                assert_eq!(report.family.members, vec![proj1, proj2]);
            }
            SearchOutcome::NotFound { .. } => panic!("block sum certifies"),
        }
    }

    #[test]
    fn search_finds_fractional_pencil_roots() {
        // A = diag(J, J), B = diag(-2J, J/2) gives Pf(tA + B) = (t-2)(t+1/2),
        // so the singular functionals are (-1/2, 1) and (2, 1), in root order.
        let j = RatMatrix::from_int_rows(&[&[0, 1], &[-1, 0]]);
        let block = |top: Rat, bottom: Rat| {
            RatMatrix::from_fn(4, 4, |r, c| {
                if r < 2 && c < 2 {
                    j.at(r, c) * &top
                } else if r >= 2 && c >= 2 {
                    j.at(r - 2, c - 2) * &bottom
                } else {
                    Rat::zero()
                }
            })
        };
        let a = block(rat_int(1), rat_int(1));
        let b = block(rat_int(-2), rat(1, 2));
        let p = AlgebraPresentation::new(4, 2, vec![a, b]).unwrap();
        match search_rank_one_family(&p, 5).unwrap() {
            SearchOutcome::Found(report) => {
                assert!(report.is_valid());
                let first = rank_one_member(2, 0, &[rat(-1, 2), rat_int(1)]);
                let second = rank_one_member(2, 1, &[rat_int(2), rat_int(1)]);
                assert_eq!(report.family.members, vec![first, second]);
                assert_eq!(report.per_member_kernel_dims, vec![2, 2]);
            }
            SearchOutcome::NotFound { .. } => panic!("both pencil roots are rational"),
        }
    }

    #[test]
    fn search_handles_singular_single_form() {
        // Even n with a singular form: the scalar identity certifies.
        let f = RatMatrix::from_int_rows(&[
            &[0, 1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 0],
            &[0, 0, 0, 0],
        ]);
        let p = AlgebraPresentation::new(4, 1, vec![f]).unwrap();
        match search_rank_one_family(&p, 3).unwrap() {
            SearchOutcome::Found(report) => {
                assert!(report.is_valid());
                assert_eq!(report.family.members, vec![RatMatrix::identity(1)]);
            }
            SearchOutcome::NotFound { .. } => panic!("singular form certifies"),
        }
    }

    #[test]
    fn sampled_search_spans_block_triples() {
        // Three Heisenberg blocks: coordinate functionals are all singular
        // pencil members, found by the height-1 sweep.
        let p = heis().direct_sum(&heis()).direct_sum(&heis());
        match search_rank_one_family(&p, 2).unwrap() {
            SearchOutcome::Found(report) => {
                assert!(report.is_valid());
                assert_eq!(report.family.members.len(), 3);
            }
            SearchOutcome::NotFound { .. } => panic!("triple block sum certifies"),
        }
    }

    #[test]
    fn rational_root_extraction() {
        // (t - 2)(2t + 1) = 2t^2 - 3t - 2
        let coeffs = vec![rat_int(-2), rat_int(-3), rat_int(2)];
        assert_eq!(rational_roots(&coeffs), vec![rat(-1, 2), rat_int(2)]);

        // t^2 (t - 1/3)
        let coeffs = vec![rat_int(0), rat_int(0), rat(-1, 3), rat_int(1)];
        assert_eq!(rational_roots(&coeffs), vec![rat_int(0), rat(1, 3)]);

        // t^2 + 1: no rational roots.
        let coeffs = vec![rat_int(1), rat_int(0), rat_int(1)];
        assert!(rational_roots(&coeffs).is_empty());
    }

    #[test]
    fn odd_pencil_members_are_singular() {
        let mut rng = Rng64::new(113);
        for _ in 0..20 {
            let p = sample::presentation(&mut rng, 5, 3, 4);
            let c: Vec<Rat> = (0..3).map(|_| rng.rat(5, 3)).collect();
            if c.iter().all(Rat::is_zero) {
                continue;
            }
            let member = pencil_member(&p, &c);
            assert!(member.rank() < 5);
        }
    }
}
