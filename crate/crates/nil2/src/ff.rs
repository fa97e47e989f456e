//! Finite-field brute-force oracle.
//!
//! Reduces presentations mod an odd prime and decides isomorphism,
//! homomorphism-family existence and extension compatibility exhaustively at
//! tiny scale. The oracle is evidence for the implementation, not proof of
//! anything: reports claim "no counterexample within budget", and the mod-p
//! model stands on its own (reduction can merge rational presentations that
//! are not isomorphic over the rationals).
//!
//! Enumeration of matrices is by base-p digits, row-major, first entry most
//! significant, ascending - fully deterministic and resumable from a start
//! index. Budgets are hard operation-count caps; there are no time-based
//! cutoffs.

use crate::algebra::AlgebraPresentation;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfError {
    #[error("bad prime {p}: {why}")]
    BadPrime { p: u64, why: String },
    #[error("presentation shapes or moduli do not match")]
    Shape,
    #[error("form {form} is not skew-symmetric mod p at ({row}, {col})")]
    NotSkew { form: usize, row: usize, col: usize },
    #[error("budget exceeded with {untested} candidates untested")]
    BudgetExceeded { untested: u128 },
    #[error("search space too large to enumerate")]
    SearchSpaceTooLarge,
}

/// Dense matrix over the prime field, entries in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    pub p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl FpMat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Self {
            p,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = v % self.p;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        assert_eq!(self.p, rhs.p);
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc = (acc + self.at(i, k) * rhs.at(k, j)) % p;
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn scale_add(&self, c: u64, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let p = self.p;
        let mut out = self.clone();
        for e in 0..out.entries.len() {
            out.entries[e] = (out.entries[e] + c % p * rhs.entries[e]) % p;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn echelon(&self) -> (Vec<Vec<u64>>, Vec<usize>) {
        self.echelon_limited(self.cols)
    }

    /// Row reduction that only pivots inside the first `pivot_cols` columns;
    /// trailing columns ride along as augmented data.
    fn echelon_limited(&self, pivot_cols: usize) -> (Vec<Vec<u64>>, Vec<usize>) {
        let p = self.p;
        let mut rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == rows.len() {
                break;
            }
            let Some(src) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, src);
            let inv = inv_mod(rows[r][c], p);
            for x in rows[r][c..].iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in c..self.cols {
                        let sub = f * rows[r][j] % p;
                        rows[i][j] = (rows[i][j] + p - sub) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let (rows, pivots) = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = (p - rows[r][free]) % p;
            }
            basis.push(v);
        }
        basis
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let p = self.p;
        let mut aug = Self::zeros(p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (rows, pivots) = aug.echelon();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = Self::zeros(p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, rows[i][n + j]);
            }
        }
        Some(out)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = (acc + self.at(i, j) * v[j]) % self.p;
                }
                acc
            })
            .collect()
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<(), FfError> {
    if p < 3 {
        return Err(FfError::BadPrime {
            p,
            why: "modulus must be an odd prime (characteristic 2 breaks skew conventions)".into(),
        });
    }
    if !is_prime(p) {
        return Err(FfError::BadPrime {
            p,
            why: "modulus is composite".into(),
        });
    }
    Ok(())
}

/// A presentation with entries reduced mod an odd prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPresentation {
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub forms: Vec<FpMat>,
}

impl FpPresentation {
    pub fn new(p: u64, n: usize, m: usize, forms: Vec<FpMat>) -> Result<Self, FfError> {
        check_prime(p)?;
        if forms.len() != m
            || forms
                .iter()
                .any(|f| f.rows() != n || f.cols() != n || f.p != p)
        {
            return Err(FfError::Shape);
        }
        for (k, f) in forms.iter().enumerate() {
            for i in 0..n {
                if f.at(i, i) != 0 {
                    return Err(FfError::NotSkew {
                        form: k,
                        row: i,
                        col: i,
                    });
                }
                for j in i + 1..n {
                    if (f.at(i, j) + f.at(j, i)) % p != 0 {
                        return Err(FfError::NotSkew {
                            form: k,
                            row: i,
                            col: j,
                        });
                    }
                }
            }
        }
        Ok(Self { p, n, m, forms })
    }

    /// Radical dimension of the stacked forms.
    pub fn ker_dim(&self) -> usize {
        let mut stacked = FpMat::zeros(self.p, self.m * self.n, self.n);
        for (k, f) in self.forms.iter().enumerate() {
            for i in 0..self.n {
                for j in 0..self.n {
                    stacked.set(k * self.n + i, j, f.at(i, j));
                }
            }
        }
        stacked.kernel_basis().len()
    }
}

/// A mod-p hom pair: `f` maps source V to target V, `psi` the centers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpHomPair {
    pub f: FpMat,
    pub psi: FpMat,
}

/// Entrywise image of a rational presentation under reduction mod p.
pub fn reduce_mod_p(p: &AlgebraPresentation, prime: u64) -> Result<FpPresentation, FfError> {
    check_prime(prime)?;
    let big_p = num_bigint::BigInt::from(prime);
    let mut forms = Vec::with_capacity(p.m());
    for f in p.forms() {
        let mut out = FpMat::zeros(prime, p.n(), p.n());
        for i in 0..p.n() {
            for j in 0..p.n() {
                let e = f.at(i, j);
                let den = e.denom().mod_floor(&big_p);
                if den.is_zero() {
                    return Err(FfError::BadPrime {
                        p: prime,
                        why: format!("denominator of entry ({i}, {j}) vanishes mod {prime}"),
                    });
                }
                let num = e.numer().mod_floor(&big_p).to_u64().expect("reduced");
                let den = den.to_u64().expect("reduced");
                out.set(i, j, num * inv_mod(den, prime) % prime);
            }
        }
        forms.push(out);
    }
    FpPresentation::new(prime, p.n(), p.m(), forms)
}

/// The bracket-compatibility identity mod p, for arbitrary (not necessarily
/// invertible, not necessarily square) hom pairs.
pub fn is_hom(source: &FpPresentation, target: &FpPresentation, h: &FpHomPair) -> bool {
    if source.p != target.p
        || h.f.rows() != target.n
        || h.f.cols() != source.n
        || h.psi.rows() != target.m
        || h.psi.cols() != source.m
    {
        return false;
    }
    let ft = h.f.transpose();
    for k in 0..target.m {
        let lhs = ft.mul(&target.forms[k]).mul(&h.f);
        let mut rhs = FpMat::zeros(source.p, source.n, source.n);
        for l in 0..source.m {
            rhs = rhs.scale_add(h.psi.at(k, l), &source.forms[l]);
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// An isomorphism witness: both maps invertible and the identity holds.
pub fn is_witness(source: &FpPresentation, target: &FpPresentation, h: &FpHomPair) -> bool {
    h.f.is_invertible() && h.psi.is_invertible() && is_hom(source, target, h)
}

fn checked_power(p: u64, digits: usize) -> Result<u128, FfError> {
    let mut acc: u128 = 1;
    for _ in 0..digits {
        acc = acc
            .checked_mul(p as u128)
            .ok_or(FfError::SearchSpaceTooLarge)?;
    }
    Ok(acc)
}

/// Matrix from its enumeration index: base-p digits, row-major, first entry
/// most significant.
pub fn mat_from_index(p: u64, rows: usize, cols: usize, index: u128) -> FpMat {
    let mut m = FpMat::zeros(p, rows, cols);
    let mut rest = index;
    for e in (0..rows * cols).rev() {
        m.entries[e] = (rest % p as u128) as u64;
        rest /= p as u128;
    }
    m
}

/// Enumeration window for the plain searches: a start pair index (for
/// resumption) and a hard cap on the number of operations.
#[derive(Debug, Clone, Copy)]
pub struct EnumWindow {
    pub start: u128,
    pub budget: u64,
}

impl Default for EnumWindow {
    fn default() -> Self {
        Self {
            start: 0,
            budget: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    Witness(FpHomPair),
    NoneExists,
}

/// Plain exhaustive isomorphism search: enumerates all pairs `(F, Psi)` in
/// ascending index order (F-major) and returns the first witness, or
/// `NoneExists` after full enumeration. One operation is charged per F
/// inspected and per `(F, Psi)` congruence check; a singular F resolves its
/// whole Psi block at once.
pub fn ff_iso_search(
    q1: &FpPresentation,
    q2: &FpPresentation,
    window: EnumWindow,
) -> Result<IsoOutcome, FfError> {
    if q1.p != q2.p || q1.n != q2.n || q1.m != q2.m {
        return Err(FfError::Shape);
    }
    let p = q1.p;
    let f_count = checked_power(p, q1.n * q1.n)?;
    let psi_count = checked_power(p, q1.m * q1.m)?;
    let total = f_count
        .checked_mul(psi_count)
        .ok_or(FfError::SearchSpaceTooLarge)?;
    let mut ops: u64 = 0;
    let spend = |ops: &mut u64, cost: u64, done: u128| -> Result<(), FfError> {
        *ops += cost;
        if *ops > window.budget {
            Err(FfError::BudgetExceeded {
                untested: total - done,
            })
        } else {
            Ok(())
        }
    };

    let mut f_idx = window.start / psi_count;
    let mut psi_start = window.start % psi_count;
    while f_idx < f_count {
        let f = mat_from_index(p, q1.n, q1.n, f_idx);
        spend(&mut ops, 1, f_idx * psi_count)?;
        if f.is_invertible() {
            for psi_idx in psi_start..psi_count {
                let done = f_idx * psi_count + psi_idx;
                spend(&mut ops, 1, done)?;
                let psi = mat_from_index(p, q1.m, q1.m, psi_idx);
                if psi.is_invertible() {
                    let h = FpHomPair { f: f.clone(), psi };
                    if is_hom(q1, q2, &h) {
                        return Ok(IsoOutcome::Witness(h));
                    }
                }
            }
        }
        psi_start = 0;
        f_idx += 1;
    }
    Ok(IsoOutcome::NoneExists)
}

/// Multiset of ranks of all pencil members `sum_l c[l] A^(l)` over c in
/// F_p^m, as counts indexed by rank. Equal profiles are necessary for
/// isomorphism, so a mismatch refutes soundly without search.
fn rank_profile(q: &FpPresentation) -> Option<Vec<usize>> {
    let combos = checked_power(q.p, q.m).ok()?;
    if combos > 100_000 {
        return None;
    }
    let mut counts = vec![0usize; q.n + 1];
    for idx in 0..combos {
        let mut c = vec![0u64; q.m];
        let mut rest = idx;
        for e in (0..q.m).rev() {
            c[e] = (rest % q.p as u128) as u64;
            rest /= q.p as u128;
        }
        let mut member = FpMat::zeros(q.p, q.n, q.n);
        for (l, &cl) in c.iter().enumerate() {
            member = member.scale_add(cl, &q.forms[l]);
        }
        counts[member.rank()] += 1;
    }
    Some(counts)
}

/// The strictly-upper value matrix of the forms: rows indexed by pairs
/// `i < j`, columns by the form index.
fn pair_matrix(q: &FpPresentation) -> FpMat {
    let pairs: Vec<(usize, usize)> = (0..q.n)
        .flat_map(|i| (i + 1..q.n).map(move |j| (i, j)))
        .collect();
    let mut s = FpMat::zeros(q.p, pairs.len(), q.m);
    for (r, &(i, j)) in pairs.iter().enumerate() {
        for l in 0..q.m {
            s.set(r, l, q.forms[l].at(i, j));
        }
    }
    s
}

/// Complete isomorphism decision by backtracking over the columns of F with
/// sound pruning: partial columns must stay linearly independent and the
/// linear system for Psi must stay consistent. Finds a witness if and only
/// if one exists; the one returned is the column-lexicographically smallest
/// F that admits an invertible Psi, with the first such Psi in coset order.
pub fn iso_exists(
    q1: &FpPresentation,
    q2: &FpPresentation,
    node_budget: u64,
) -> Result<Option<FpHomPair>, FfError> {
    if q1.p != q2.p || q1.n != q2.n || q1.m != q2.m {
        return Err(FfError::Shape);
    }
    if q1.ker_dim() != q2.ker_dim() {
        return Ok(None);
    }
    if pair_matrix(q1).rank() != pair_matrix(q2).rank() {
        return Ok(None);
    }
    if let (Some(a), Some(b)) = (rank_profile(q1), rank_profile(q2)) {
        if a != b {
            return Ok(None);
        }
    }

    let mut search = IsoSearch {
        q1,
        q2,
        p: q1.p,
        n: q1.n,
        m: q1.m,
        cols: Vec::new(),
        nodes: 0,
        budget: node_budget,
    };
    search.descend()
}

struct IsoSearch<'a> {
    q1: &'a FpPresentation,
    q2: &'a FpPresentation,
    p: u64,
    n: usize,
    m: usize,
    cols: Vec<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

impl IsoSearch<'_> {
    fn charge(&mut self) -> Result<(), FfError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(FfError::BudgetExceeded { untested: 0 })
        } else {
            Ok(())
        }
    }

    /// The Psi feasibility system for the currently placed columns:
    /// `[S | T^(0) | .. | T^(m-1)]` where S rows are source form entries at
    /// placed pairs and T^(k) the matching target pairings.
    fn psi_system(&self) -> FpMat {
        let placed = self.cols.len();
        let pairs: Vec<(usize, usize)> = (0..placed)
            .flat_map(|i| (i + 1..placed).map(move |j| (i, j)))
            .collect();
        let mut sys = FpMat::zeros(self.p, pairs.len(), self.m + self.m);
        for (r, &(i, j)) in pairs.iter().enumerate() {
            for l in 0..self.m {
                sys.set(r, l, self.q1.forms[l].at(i, j));
            }
            for k in 0..self.m {
                let bfj = self.q2.forms[k].mul_vec(&self.cols[j]);
                let mut acc = 0u64;
                for (a, b) in self.cols[i].iter().zip(&bfj) {
                    acc = (acc + a * b) % self.p;
                }
                sys.set(r, self.m + k, acc);
            }
        }
        sys
    }

    /// Rows of the reduced system whose S-part vanished must have vanished
    /// T-parts too, otherwise some Psi row has no solution.
    fn psi_feasible(&self) -> bool {
        let sys = self.psi_system();
        let (rows, _) = sys.echelon_limited(self.m);
        for row in &rows {
            if row[..self.m].iter().all(|&x| x == 0) && row[self.m..].iter().any(|&x| x != 0) {
                return false;
            }
        }
        true
    }

    fn independent_with_placed(&self, candidate: &[u64]) -> bool {
        let mut m = FpMat::zeros(self.p, self.cols.len() + 1, self.n);
        for (i, c) in self.cols.iter().enumerate() {
            for (j, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        for (j, &x) in candidate.iter().enumerate() {
            m.set(self.cols.len(), j, x);
        }
        m.rank() == self.cols.len() + 1
    }

    fn descend(&mut self) -> Result<Option<FpHomPair>, FfError> {
        if self.cols.len() == self.n {
            return self.solve_psi();
        }
        let count = checked_power(self.p, self.n)?;
        for idx in 0..count {
            self.charge()?;
            let cand: Vec<u64> = {
                let mut v = vec![0u64; self.n];
                let mut rest = idx;
                for e in (0..self.n).rev() {
                    v[e] = (rest % self.p as u128) as u64;
                    rest /= self.p as u128;
                }
                v
            };
            if !self.independent_with_placed(&cand) {
                continue;
            }
            self.cols.push(cand);
            if self.psi_feasible() {
                if let Some(hit) = self.descend()? {
                    return Ok(Some(hit));
                }
            }
            self.cols.pop();
        }
        Ok(None)
    }

    /// All columns placed: solve for each Psi row, then walk the solution
    /// cosets in ascending order looking for an invertible Psi.
    fn solve_psi(&mut self) -> Result<Option<FpHomPair>, FfError> {
        let p = self.p;
        let sys = self.psi_system();
        let mut s_entries = Vec::with_capacity(sys.rows * self.m);
        for r in 0..sys.rows {
            for c in 0..self.m {
                s_entries.push(sys.at(r, c));
            }
        }
        let s_part = FpMat {
            p,
            rows: sys.rows,
            cols: self.m,
            entries: s_entries,
        };
        let kernel = s_part.kernel_basis();
        let (rows, pivots) = sys.echelon_limited(self.m);
        // Particular solution per Psi row; infeasible rows were pruned but
        // the leaf re-checks to stay safe.
        let mut particular = vec![vec![0u64; self.m]; self.m];
        for (r, row) in rows.iter().enumerate() {
            if row[..self.m].iter().all(|&x| x == 0) {
                if row[self.m..].iter().any(|&x| x != 0) {
                    return Ok(None);
                }
                continue;
            }
            let c = pivots[r];
            for k in 0..self.m {
                particular[k][c] = row[self.m + k];
            }
        }
        let coset = checked_power(p, kernel.len())?;
        let combos = checked_power(p, kernel.len() * self.m)?;
        let mut f = FpMat::zeros(p, self.n, self.n);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                f.set(i, j, x);
            }
        }
        for combo in 0..combos {
            self.charge()?;
            let mut psi = FpMat::zeros(p, self.m, self.m);
            let mut rest = combo;
            for k in (0..self.m).rev() {
                let pick = rest % coset;
                rest /= coset;
                let mut row = particular[k].clone();
                let mut sel = pick;
                for basis_vec in kernel.iter().rev() {
                    let c = (sel % p as u128) as u64;
                    sel /= p as u128;
                    for (x, &b) in row.iter_mut().zip(basis_vec) {
                        *x = (*x + c * b) % p;
                    }
                }
                for (c, &x) in row.iter().enumerate() {
                    psi.set(k, c, x);
                }
            }
            if psi.is_invertible() {
                let h = FpHomPair { f: f.clone(), psi };
                debug_assert!(is_witness(self.q1, self.q2, &h));
                return Ok(Some(h));
            }
        }
        Ok(None)
    }
}

/// Extension of a mod-p presentation with the same block recipe as the
/// rational construction.
pub fn ff_extend(q: &FpPresentation) -> FpPresentation {
    let p = q.p;
    let n = q.n;
    let mut pairing = FpMat::zeros(p, 2 * n, 2 * n);
    for i in 0..n {
        pairing.set(i, n + i, 1);
        pairing.set(n + i, i, p - 1);
    }
    let mut forms = vec![pairing];
    for f in &q.forms {
        let mut g = FpMat::zeros(p, 2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                g.set(n + i, n + j, f.at(i, j));
            }
        }
        forms.push(g);
    }
    FpPresentation::new(p, 2 * n, q.m + 1, forms).expect("blocks stay skew")
}

/// Lifts a base witness to the extensions: U-block `(F^{-1})^T`, V-block
/// `F`, the new central generator fixed, old center by `Psi`.
pub fn lift_witness(h: &FpHomPair) -> Option<FpHomPair> {
    let p = h.f.p;
    let n = h.f.rows();
    let m = h.psi.rows();
    let g = h.f.inverse()?.transpose();
    let mut v_map = FpMat::zeros(p, 2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            v_map.set(i, j, g.at(i, j));
            v_map.set(n + i, n + j, h.f.at(i, j));
        }
    }
    let mut w_map = FpMat::zeros(p, m + 1, m + 1);
    w_map.set(0, 0, 1);
    for i in 0..m {
        for j in 0..m {
            w_map.set(1 + i, 1 + j, h.psi.at(i, j));
        }
    }
    Some(FpHomPair {
        f: v_map,
        psi: w_map,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbedOutcome {
    Family(Vec<FpHomPair>),
    NoneExists,
}

/// Searches for at most `max_family` homomorphisms source -> target whose
/// kernels intersect trivially.
///
/// Enumerates every F in index order, solves the linear system for Psi, and
/// keeps a hom whenever it strictly shrinks the running joint kernel. One
/// pass decides existence exactly: a hom skipped while the joint kernel was
/// K has kernel containing K, so it can never shrink any later, smaller
/// joint kernel either. Redundant members are pruned afterwards, so a single
/// injective hom comes back as a one-member family.
pub fn ff_embedding_family(
    q1: &FpPresentation,
    q2: &FpPresentation,
    max_family: usize,
    budget: u64,
) -> Result<EmbedOutcome, FfError> {
    if q1.p != q2.p {
        return Err(FfError::Shape);
    }
    let p = q1.p;
    let f_count = checked_power(p, q1.n * q2.n)?;
    let mut ops: u64 = 0;

    // Joint kernel trackers: bases of the V- and W-side intersections.
    let mut kv: Vec<Vec<u64>> = (0..q1.n)
        .map(|i| {
            let mut e = vec![0u64; q1.n];
            e[i] = 1;
            e
        })
        .collect();
    let mut kw: Vec<Vec<u64>> = (0..q1.m)
        .map(|i| {
            let mut e = vec![0u64; q1.m];
            e[i] = 1;
            e
        })
        .collect();
    let mut family: Vec<FpHomPair> = Vec::new();

    let source_pairs = pair_matrix(q1);
    let pair_list: Vec<(usize, usize)> = (0..q1.n)
        .flat_map(|i| (i + 1..q1.n).map(move |j| (i, j)))
        .collect();

    let mut f_idx: u128 = 0;
    'outer: while f_idx < f_count {
        ops += 1;
        if ops > budget {
            return Err(FfError::BudgetExceeded {
                untested: f_count - f_idx,
            });
        }
        let f = mat_from_index(p, q2.n, q1.n, f_idx);
        f_idx += 1;

        // Solve sum_l Psi[k,l] A^(l)_{ij} = (F^T B^(k) F)_{ij} per Psi row.
        let ft = f.transpose();
        let mut sys = FpMat::zeros(p, pair_list.len(), q1.m + q2.m);
        for (r, &(i, j)) in pair_list.iter().enumerate() {
            for l in 0..q1.m {
                sys.set(r, l, source_pairs.at(r, l));
            }
            for k in 0..q2.m {
                let v = ft.mul(&q2.forms[k]).mul(&f);
                sys.set(r, q1.m + k, v.at(i, j));
            }
        }
        let (rows, pivots) = sys.echelon_limited(q1.m);
        let mut particular = vec![vec![0u64; q1.m]; q2.m];
        for (r, row) in rows.iter().enumerate() {
            if row[..q1.m].iter().all(|&x| x == 0) {
                if row[q1.m..].iter().any(|&x| x != 0) {
                    continue 'outer; // no Psi completes this F
                }
                continue;
            }
            let c = pivots[r];
            for k in 0..q2.m {
                particular[k][c] = row[q1.m + k];
            }
        }
        let mut s_entries = Vec::with_capacity(sys.rows * q1.m);
        for r in 0..sys.rows {
            for c in 0..q1.m {
                s_entries.push(sys.at(r, c));
            }
        }
        let s_part = FpMat {
            p,
            rows: sys.rows,
            cols: q1.m,
            entries: s_entries,
        };
        let kernel = s_part.kernel_basis();
        let coset = checked_power(p, kernel.len())?;
        let combos = checked_power(p, kernel.len() * q2.m)?;
        for combo in 0..combos {
            ops += 1;
            if ops > budget {
                return Err(FfError::BudgetExceeded {
                    untested: f_count - f_idx,
                });
            }
            let mut psi = FpMat::zeros(p, q2.m, q1.m);
            let mut rest = combo;
            for k in (0..q2.m).rev() {
                let pick = rest % coset;
                rest /= coset;
                let mut row = particular[k].clone();
                let mut sel = pick;
                for basis_vec in kernel.iter().rev() {
                    let c = (sel % p as u128) as u64;
                    sel /= p as u128;
                    for (x, &b) in row.iter_mut().zip(basis_vec) {
                        *x = (*x + c * b) % p;
                    }
                }
                for (c, &x) in row.iter().enumerate() {
                    psi.set(k, c, x);
                }
            }
            let h = FpHomPair { f: f.clone(), psi };
            debug_assert!(is_hom(q1, q2, &h));
            let kv_new = shrink_kernel(&h.f, &kv);
            let kw_new = shrink_kernel(&h.psi, &kw);
            if kv_new.len() + kw_new.len() < kv.len() + kw.len() {
                kv = kv_new;
                kw = kw_new;
                family.push(h);
                if kv.is_empty() && kw.is_empty() {
                    let family = prune_family(q1, family);
                    if family.len() <= max_family {
                        return Ok(EmbedOutcome::Family(family));
                    }
                    return Ok(EmbedOutcome::NoneExists);
                }
            }
        }
    }
    Ok(EmbedOutcome::NoneExists)
}

/// Drops members whose removal keeps the joint kernel trivial, in collection
/// order, so greedy scaffolding homs do not pad the family.
fn prune_family(q1: &FpPresentation, mut family: Vec<FpHomPair>) -> Vec<FpHomPair> {
    let full = |members: &[FpHomPair]| -> bool {
        let mut kv: Vec<Vec<u64>> = (0..q1.n)
            .map(|i| {
                let mut e = vec![0u64; q1.n];
                e[i] = 1;
                e
            })
            .collect();
        let mut kw: Vec<Vec<u64>> = (0..q1.m)
            .map(|i| {
                let mut e = vec![0u64; q1.m];
                e[i] = 1;
                e
            })
            .collect();
        for h in members {
            kv = shrink_kernel(&h.f, &kv);
            kw = shrink_kernel(&h.psi, &kw);
        }
        kv.is_empty() && kw.is_empty()
    };
    let mut i = 0;
    while i < family.len() {
        let mut trimmed = family.clone();
        trimmed.remove(i);
        if full(&trimmed) {
            family = trimmed;
        } else {
            i += 1;
        }
    }
    family
}

/// Intersects the span of `basis` with the kernel of `map`.
fn shrink_kernel(map: &FpMat, basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let p = map.p;
    // Columns are the images of the basis vectors.
    let mut images = FpMat::zeros(p, map.rows(), basis.len());
    for (c, v) in basis.iter().enumerate() {
        let img = map.mul_vec(v);
        for (r, &x) in img.iter().enumerate() {
            images.set(r, c, x);
        }
    }
    images
        .kernel_basis()
        .iter()
        .map(|alpha| {
            let mut v = vec![0u64; basis[0].len()];
            for (c, &a) in alpha.iter().enumerate() {
                for (x, &b) in v.iter_mut().zip(&basis[c]) {
                    *x = (*x + a * b) % p;
                }
            }
            v
        })
        .collect()
}

/// Enumerates all skew presentations of shape `(n, m)` mod p: the strictly
/// upper entries of each form are the base-p digits, forms ordered first.
pub fn presentations_of_shape(p: u64, n: usize, m: usize) -> Result<Vec<FpPresentation>, FfError> {
    check_prime(p)?;
    let free = m * n * n.saturating_sub(1) / 2;
    let count = checked_power(p, free)?;
    if count > 100_000 {
        return Err(FfError::SearchSpaceTooLarge);
    }
    let mut out = Vec::with_capacity(count as usize);
    for idx in 0..count {
        let mut digits = vec![0u64; free];
        let mut rest = idx;
        for e in (0..free).rev() {
            digits[e] = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        let mut pos = 0;
        let mut forms = Vec::with_capacity(m);
        for _ in 0..m {
            let mut f = FpMat::zeros(p, n, n);
            for i in 0..n {
                for j in i + 1..n {
                    f.set(i, j, digits[pos]);
                    f.set(j, i, (p - digits[pos]) % p);
                    pos += 1;
                }
            }
            forms.push(f);
        }
        out.push(FpPresentation::new(p, n, m, forms)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepViolation {
    /// Base verdict and extension verdict disagree.
    BiconditionalMismatch,
    /// A base witness lifted to the extensions failed the witness check.
    LiftFailed,
}

#[derive(Debug, Clone)]
pub struct PairRecord {
    pub index: usize,
    pub left_presentation: usize,
    pub right_presentation: usize,
    pub base_witness: Option<FpHomPair>,
    pub ext_witness: Option<FpHomPair>,
    /// The extension witness was produced by lifting the base witness.
    pub lifted: bool,
    pub violation: Option<SweepViolation>,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub p: u64,
    pub n: usize,
    pub m: usize,
    pub presentation_count: usize,
    pub pairs: Vec<PairRecord>,
    /// Indices of violating pairs; empty means the biconditional held
    /// everywhere within budget.
    pub violations: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub n: usize,
    pub m: usize,
    pub p: u64,
    pub budget: u64,
    pub workers: usize,
}

/// Checks, over every unordered pair of skew presentations of the given
/// shape mod p, that the base presentations are isomorphic exactly when
/// their extensions are. The forward direction is established
/// constructively (the base witness is lifted and re-verified); the reverse
/// direction by complete search on the extensions.
///
/// Work is split across `workers` threads by contiguous pair ranges with a
/// fixed per-pair budget, so the report does not depend on the worker count.
pub fn extension_sweep(cfg: SweepConfig) -> Result<SweepReport, FfError> {
    let presentations = presentations_of_shape(cfg.p, cfg.n, cfg.m)?;
    let extended: Vec<FpPresentation> = presentations.iter().map(ff_extend).collect();
    let pair_list: Vec<(usize, usize)> = (0..presentations.len())
        .flat_map(|a| (a..presentations.len()).map(move |b| (a, b)))
        .collect();
    let per_pair_budget = (cfg.budget / pair_list.len().max(1) as u64).max(1);

    let run_pair = |index: usize| -> Result<PairRecord, FfError> {
        let (a, b) = pair_list[index];
        let base = iso_exists(&presentations[a], &presentations[b], per_pair_budget)?;
        let mut lifted = false;
        let mut violation = None;
        let ext = match &base {
            Some(w) => {
                let lift = lift_witness(w).expect("witness is invertible");
                if is_witness(&extended[a], &extended[b], &lift) {
                    lifted = true;
                    Some(lift)
                } else {
                    violation = Some(SweepViolation::LiftFailed);
                    iso_exists(&extended[a], &extended[b], per_pair_budget)?
                }
            }
            None => iso_exists(&extended[a], &extended[b], per_pair_budget)?,
        };
        if violation.is_none() && base.is_some() != ext.is_some() {
            violation = Some(SweepViolation::BiconditionalMismatch);
        }
        Ok(PairRecord {
            index,
            left_presentation: a,
            right_presentation: b,
            base_witness: base,
            ext_witness: ext,
            lifted,
            violation,
        })
    };

    let workers = cfg.workers.max(1).min(pair_list.len().max(1));
    let mut records: Vec<Result<PairRecord, FfError>> = Vec::with_capacity(pair_list.len());
    if workers <= 1 {
        for i in 0..pair_list.len() {
            records.push(run_pair(i));
        }
    } else {
        let chunk = pair_list.len().div_ceil(workers);
        let mut partials: Vec<Vec<Result<PairRecord, FfError>>> = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let run_pair = &run_pair;
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(pair_list.len());
                    scope.spawn(move || (lo..hi).map(run_pair).collect::<Vec<_>>())
                })
                .collect();
            for h in handles {
                partials.push(h.join().expect("worker panicked"));
            }
        });
        // Chunks are contiguous and in worker order, so concatenation is
        // already sorted by pair index.
        records = partials.into_iter().flatten().collect();
    }

    let mut pairs = Vec::with_capacity(records.len());
    for r in records {
        pairs.push(r?);
    }
    let violations = pairs
        .iter()
        .filter(|r| r.violation.is_some())
        .map(|r| r.index)
        .collect();
    Ok(SweepReport {
        p: cfg.p,
        n: cfg.n,
        m: cfg.m,
        presentation_count: presentations.len(),
        pairs,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::RatMatrix;
    use crate::rat::rat;
    use crate::sample::Rng64;

    fn heis_mod(p: u64) -> FpPresentation {
        reduce_mod_p(&AlgebraPresentation::heisenberg(), p).unwrap()
    }

    fn zero_form(p: u64, n: usize, m: usize) -> FpPresentation {
        let forms = (0..m).map(|_| FpMat::zeros(p, n, n)).collect();
        FpPresentation::new(p, n, m, forms).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let q = heis_mod(5);
        assert_eq!(q.forms[0].at(0, 1), 1);
        assert_eq!(q.forms[0].at(1, 0), 4);

        let mut half = RatMatrix::zeros(2, 2);
        half.set(0, 1, rat(1, 2));
        half.set(1, 0, rat(-1, 2));
        let p = AlgebraPresentation::new(2, 1, vec![half]).unwrap();
        let q = reduce_mod_p(&p, 5).unwrap();
        assert_eq!(q.forms[0].at(0, 1), 3); // 2 * 3 = 1 mod 5

        assert!(matches!(reduce_mod_p(&p, 2), Err(FfError::BadPrime { .. })));
        let mut fifth = RatMatrix::zeros(2, 2);
        fifth.set(0, 1, rat(1, 5));
        fifth.set(1, 0, rat(-1, 5));
        let p = AlgebraPresentation::new(2, 1, vec![fifth]).unwrap();
        assert!(matches!(reduce_mod_p(&p, 5), Err(FfError::BadPrime { .. })));
    }

    #[test]
    fn fp_linear_algebra_basics() {
        let m = FpMat::identity(5, 3);
        assert!(m.is_invertible());
        assert_eq!(m.inverse().unwrap(), m);

        let mut a = FpMat::zeros(7, 2, 2);
        a.set(0, 0, 2);
        a.set(0, 1, 3);
        a.set(1, 0, 1);
        a.set(1, 1, 4); // det = 5, a unit mod 7
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), FpMat::identity(7, 2));

        let mut s = FpMat::zeros(5, 2, 2);
        s.set(0, 0, 1);
        s.set(0, 1, 2);
        s.set(1, 0, 3);
        s.set(1, 1, 1); // det = 1 - 6 = -5 = 0 mod 5
        assert!(!s.is_invertible());
        assert_eq!(s.rank() + s.kernel_basis().len(), 2);
    }

    #[test]
    fn plain_search_finds_self_witness() {
        let q = heis_mod(3);
        match ff_iso_search(&q, &q, EnumWindow::default()).unwrap() {
            IsoOutcome::Witness(w) => {
                assert!(is_witness(&q, &q, &w));
                // The identity is a witness too, whatever the search returned first.
                let id = FpHomPair {
                    f: FpMat::identity(3, 2),
                    psi: FpMat::identity(3, 1),
                };
                assert!(is_witness(&q, &q, &id));
            }
            IsoOutcome::NoneExists => panic!("self-isomorphism must exist"),
        }
    }

    #[test]
    fn nonzero_two_dim_forms_are_equivalent_mod_3() {
        // All nonzero skew 2x2 forms differ by a unit, absorbed by Psi.
        let all = presentations_of_shape(3, 2, 1).unwrap();
        let nonzero: Vec<_> = all.iter().filter(|q| !q.forms[0].is_zero()).collect();
        assert_eq!(nonzero.len(), 2);
        match ff_iso_search(nonzero[0], nonzero[1], EnumWindow::default()).unwrap() {
            IsoOutcome::Witness(w) => assert!(is_witness(nonzero[0], nonzero[1], &w)),
            IsoOutcome::NoneExists => panic!("scaled forms are equivalent"),
        }
    }

    #[test]
    fn heisenberg_is_not_the_zero_algebra_mod_3() {
        let q = heis_mod(3);
        let z = zero_form(3, 2, 1);
        assert_eq!(
            ff_iso_search(&q, &z, EnumWindow::default()).unwrap(),
            IsoOutcome::NoneExists
        );
        assert_eq!(iso_exists(&q, &z, 1 << 20).unwrap(), None);
    }

    #[test]
    fn budget_is_a_hard_cap() {
        let q = heis_mod(3);
        let z = zero_form(3, 2, 1);
        let out = ff_iso_search(
            &q,
            &z,
            EnumWindow {
                start: 0,
                budget: 10,
            },
        );
        assert!(matches!(out, Err(FfError::BudgetExceeded { .. })));
    }

    #[test]
    fn search_is_resumable() {
        let q = heis_mod(3);
        // Find the first witness, then resume just past it and find another.
        let IsoOutcome::Witness(first) = ff_iso_search(&q, &q, EnumWindow::default()).unwrap()
        else {
            panic!("witness exists");
        };
        let psi_count = 3u128;
        let mut f_idx = 0u128;
        for e in 0..4 {
            f_idx = f_idx * 3 + first.f.at(e / 2, e % 2) as u128;
        }
        let mut psi_idx = 0u128;
        psi_idx += first.psi.at(0, 0) as u128;
        let resume = f_idx * psi_count + psi_idx + 1;
        match ff_iso_search(
            &q,
            &q,
            EnumWindow {
                start: resume,
                budget: 10_000_000,
            },
        )
        .unwrap()
        {
            IsoOutcome::Witness(second) => {
                assert!(is_witness(&q, &q, &second));
                assert_ne!(first, second);
            }
            IsoOutcome::NoneExists => panic!("more witnesses exist"),
        }
    }

    #[test]
    fn pruned_search_agrees_with_plain_enumeration() {
        // Full cross-validation at (2,1): every ordered pair, both searches.
        let small = presentations_of_shape(3, 2, 1).unwrap();
        for a in &small {
            for b in &small {
                let plain = ff_iso_search(
                    a,
                    b,
                    EnumWindow {
                        start: 0,
                        budget: u64::MAX,
                    },
                )
                .unwrap();
                let pruned = iso_exists(a, b, 1 << 30).unwrap();
                assert_eq!(
                    matches!(plain, IsoOutcome::Witness(_)),
                    pruned.is_some(),
                    "divergence between searches"
                );
                if let Some(w) = &pruned {
                    assert!(is_witness(a, b, w));
                }
            }
        }

        // Spot checks at (3,1), where the plain space is 3^10 per pair.
        let bigger = presentations_of_shape(3, 3, 1).unwrap();
        assert_eq!(bigger.len(), 27);
        let picks = [0usize, 1, 5, 9, 13, 26];
        for &i in &picks {
            for &j in &picks {
                let (a, b) = (&bigger[i], &bigger[j]);
                let plain = ff_iso_search(
                    a,
                    b,
                    EnumWindow {
                        start: 0,
                        budget: u64::MAX,
                    },
                )
                .unwrap();
                let pruned = iso_exists(a, b, 1 << 30).unwrap();
                assert_eq!(
                    matches!(plain, IsoOutcome::Witness(_)),
                    pruned.is_some(),
                    "divergence on pair ({i}, {j})"
                );
            }
        }
    }

    #[test]
    fn witnesses_invert() {
        let all = presentations_of_shape(3, 2, 1).unwrap();
        for a in &all {
            for b in &all {
                let fwd = iso_exists(a, b, 1 << 20).unwrap();
                let bwd = iso_exists(b, a, 1 << 20).unwrap();
                assert_eq!(fwd.is_some(), bwd.is_some());
                if let Some(w) = fwd {
                    let inv = FpHomPair {
                        f: w.f.inverse().unwrap(),
                        psi: w.psi.inverse().unwrap(),
                    };
                    assert!(is_witness(b, a, &inv));
                }
            }
        }
    }

    #[test]
    fn rational_isomorphisms_transport_mod_p() {
        // Integer inputs keep the denominators of the pushforward confined
        // to det(F), so small primes usually survive the reduction.
        let mut rng = Rng64::new(211);
        let mut transported = 0;
        for _ in 0..8 {
            let int_mat = |rng: &mut Rng64, n: usize| {
                RatMatrix::from_fn(n, n, |_, _| crate::rat::rat_int(rng.int_in(-3, 3)))
            };
            let mut form = RatMatrix::zeros(3, 3);
            for i in 0..3 {
                for j in i + 1..3 {
                    let v = crate::rat::rat_int(rng.int_in(-3, 3));
                    form.set(i, j, v.clone());
                    form.set(j, i, -v);
                }
            }
            let p = AlgebraPresentation::new(3, 1, vec![form]).unwrap();
            let f = loop {
                let c = int_mat(&mut rng, 3);
                if c.is_invertible() {
                    break c;
                }
            };
            let psi = loop {
                let c = int_mat(&mut rng, 1);
                if c.is_invertible() {
                    break c;
                }
            };
            let q = p.pushforward(&f, &psi).unwrap();
            for prime in [3u64, 5, 7, 11, 13] {
                let (Ok(qa), Ok(qb)) = (reduce_mod_p(&p, prime), reduce_mod_p(&q, prime)) else {
                    continue;
                };
                let (Ok(fa), Ok(pa)) = (reduce_matrix(&f, prime), reduce_matrix(&psi, prime))
                else {
                    continue;
                };
                let hw = FpHomPair { f: fa, psi: pa };
                if !hw.f.is_invertible() || !hw.psi.is_invertible() {
                    continue;
                }
                assert!(is_witness(&qa, &qb, &hw));
                assert!(iso_exists(&qa, &qb, 1 << 24).unwrap().is_some());
                transported += 1;
                break;
            }
        }
        assert!(
            transported >= 4,
            "transport exercised on {transported} cases"
        );
    }

    fn reduce_matrix(m: &RatMatrix, prime: u64) -> Result<FpMat, FfError> {
        let big = num_bigint::BigInt::from(prime);
        let mut out = FpMat::zeros(prime, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let e = m.at(i, j);
                let den = e.denom().mod_floor(&big);
                if den.is_zero() {
                    return Err(FfError::BadPrime {
                        p: prime,
                        why: "denominator".into(),
                    });
                }
                let num = e.numer().mod_floor(&big).to_u64().unwrap();
                out.set(i, j, num * inv_mod(den.to_u64().unwrap(), prime) % prime);
            }
        }
        Ok(out)
    }

    #[test]
    fn lifted_witnesses_stay_witnesses() {
        let all = presentations_of_shape(3, 2, 1).unwrap();
        for a in &all {
            for b in &all {
                if let Some(w) = iso_exists(a, b, 1 << 20).unwrap() {
                    let lift = lift_witness(&w).unwrap();
                    assert!(is_witness(&ff_extend(a), &ff_extend(b), &lift));
                }
            }
        }
    }

    #[test]
    fn embedding_family_examples() {
        let q = heis_mod(3);
        match ff_embedding_family(&q, &q, 4, 1 << 24).unwrap() {
            EmbedOutcome::Family(fam) => {
                assert_eq!(fam.len(), 1);
                assert!(is_hom(&q, &q, &fam[0]));
            }
            EmbedOutcome::NoneExists => panic!("identity embeds"),
        }

        let h = AlgebraPresentation::heisenberg();
        let hh = reduce_mod_p(&h.direct_sum(&h), 3).unwrap();
        match ff_embedding_family(&q, &hh, 4, 1 << 26).unwrap() {
            EmbedOutcome::Family(fam) => {
                assert!(fam.iter().all(|hm| is_hom(&q, &hh, hm)));
            }
            EmbedOutcome::NoneExists => panic!("block embedding exists"),
        }

        let z = zero_form(3, 2, 1);
        assert_eq!(
            ff_embedding_family(&q, &z, 4, 1 << 24).unwrap(),
            EmbedOutcome::NoneExists
        );
    }

    #[test]
    fn sweep_mod_3_has_no_violations() {
        let report = extension_sweep(SweepConfig {
            n: 2,
            m: 1,
            p: 3,
            budget: 1 << 26,
            workers: 1,
        })
        .unwrap();
        assert_eq!(report.presentation_count, 3);
        assert_eq!(report.pairs.len(), 6);
        assert!(report.violations.is_empty());
        // Reflexive pairs are isomorphic on both sides.
        for r in &report.pairs {
            if r.left_presentation == r.right_presentation {
                assert!(r.base_witness.is_some());
                assert!(r.ext_witness.is_some());
            }
        }
    }

    #[test]
    fn sweep_is_worker_count_independent() {
        let one = extension_sweep(SweepConfig {
            n: 2,
            m: 1,
            p: 3,
            budget: 1 << 26,
            workers: 1,
        })
        .unwrap();
        let four = extension_sweep(SweepConfig {
            n: 2,
            m: 1,
            p: 3,
            budget: 1 << 26,
            workers: 4,
        })
        .unwrap();
        assert_eq!(one.pairs.len(), four.pairs.len());
        for (a, b) in one.pairs.iter().zip(&four.pairs) {
            assert_eq!(a.index, b.index);
            assert_eq!(a.base_witness, b.base_witness);
            assert_eq!(a.ext_witness, b.ext_witness);
            assert_eq!(a.violation, b.violation);
        }
    }

    #[test]
    fn degenerate_shapes_enumerate() {
        // n < 2 leaves no free entries: a single presentation per shape.
        assert_eq!(presentations_of_shape(3, 0, 2).unwrap().len(), 1);
        assert_eq!(presentations_of_shape(3, 1, 1).unwrap().len(), 1);
        let report = extension_sweep(SweepConfig {
            n: 1,
            m: 1,
            p: 3,
            budget: 1 << 20,
            workers: 1,
        })
        .unwrap();
        assert_eq!(report.pairs.len(), 1);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn prime_validation() {
        assert!(matches!(
            FpPresentation::new(2, 1, 0, vec![]),
            Err(FfError::BadPrime { .. })
        ));
        assert!(matches!(
            FpPresentation::new(9, 1, 0, vec![]),
            Err(FfError::BadPrime { .. })
        ));
        assert!(FpPresentation::new(3, 1, 0, vec![]).is_ok());
    }
}
