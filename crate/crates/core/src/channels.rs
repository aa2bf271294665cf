//! Kraus channels, POVMs and projective measurements.

use alloc::format;
use alloc::vec::Vec;

use crate::classical::ProbabilityVector;
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, tensor, ComplexMatrix, C64};
use crate::quantum::{DensityOperator, Tolerances, SNAP_TOL};

pub const COMPLETENESS_TOL: f64 = 1e-9;
pub const EFFECT_POSITIVITY_TOL: f64 = 1e-10;
pub const RANK_ONE_TOL: f64 = 1e-8;
pub const ISOMETRY_TOL: f64 = 1e-10;
/// Outcomes at or below this probability are not conditioned on.
pub const ZERO_OUTCOME_TOL: f64 = 1e-12;

fn sum_matrices(n: usize, terms: impl Iterator<Item = ComplexMatrix>) -> ComplexMatrix {
    terms.fold(ComplexMatrix::zeros(n, n), |acc, t| &acc + &t)
}

/// `Tr(AB)` without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// A trace-preserving map `ρ ↦ Σ A_k ρ A_k†` with `A_k: N → N′`.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    operators: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let first = operators.first().ok_or_else(|| {
            Error::DimensionMismatch("channel needs at least one Kraus operator".into())
        })?;
        let (out, inp) = (first.rows(), first.cols());
        if operators.iter().any(|a| a.rows() != out || a.cols() != inp) {
            return Err(Error::DimensionMismatch(
                "Kraus operators differ in shape".into(),
            ));
        }
        let sum = sum_matrices(inp, operators.iter().map(|a| &a.adjoint() * a));
        let residual = sum.max_abs_diff(&ComplexMatrix::identity(inp));
        if !(residual <= COMPLETENESS_TOL) {
            return Err(Error::CompletenessViolation { residual });
        }
        Ok(KrausChannel { operators })
    }

    pub fn identity(n: usize) -> Self {
        KrausChannel {
            operators: alloc::vec![ComplexMatrix::identity(n)],
        }
    }

    /// `ρ ↦ UρU†`.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        let residual = u.isometry_residual().max(u.coisometry_residual());
        if !u.is_square() || !(residual <= ISOMETRY_TOL) {
            return Err(Error::NotUnitary { residual });
        }
        Self::new(alloc::vec![u])
    }

    /// Kills off-diagonal elements in the computational basis.
    pub fn dephasing(n: usize) -> Self {
        let ops = (0..n)
            .map(|k| {
                let mut d = alloc::vec![0.0; n];
                d[k] = 1.0;
                ComplexMatrix::from_real_diagonal(&d)
            })
            .collect();
        KrausChannel { operators: ops }
    }

    /// Qubit reset `{|0⟩⟨0|, |0⟩⟨1|}`.
    pub fn amplitude_reset() -> Self {
        let a1 = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).expect("2x2");
        let a2 = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).expect("2x2");
        KrausChannel {
            operators: alloc::vec![a1, a2],
        }
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn input_dim(&self) -> usize {
        self.operators[0].cols()
    }

    pub fn output_dim(&self) -> usize {
        self.operators[0].rows()
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        apply_kraus(self, rho)
    }
}

pub fn apply_kraus(ch: &KrausChannel, rho: &DensityOperator) -> Result<DensityOperator> {
    if rho.dim() != ch.input_dim() {
        return Err(Error::DimensionMismatch(format!(
            "channel input dimension {} but state dimension {}",
            ch.input_dim(),
            rho.dim()
        )));
    }
    let out = sum_matrices(
        ch.output_dim(),
        ch.operators.iter().map(|a| a.conjugate(rho.matrix())),
    );
    DensityOperator::with_tolerances(
        out,
        Tolerances {
            trace: COMPLETENESS_TOL,
            ..Tolerances::default()
        },
    )
}

/// Whether `Σ A_k A_k† = I` within `tol` (square channels only).
pub fn is_bistochastic(ch: &KrausChannel, tol: f64) -> bool {
    let n = ch.input_dim();
    if ch.output_dim() != n {
        return false;
    }
    let sum = sum_matrices(n, ch.operators.iter().map(|a| a * &a.adjoint()));
    sum.max_abs_diff(&ComplexMatrix::identity(n)) <= tol
}

/// A positive operator-valued measure.
#[derive(Clone, Debug)]
pub struct Povm {
    effects: Vec<ComplexMatrix>,
    rank_one: bool,
}

impl Povm {
    pub fn new(effects: Vec<ComplexMatrix>) -> Result<Self> {
        let n = effects
            .first()
            .ok_or_else(|| Error::DimensionMismatch("POVM needs at least one effect".into()))?
            .rows();
        let mut rank_one = true;
        for (index, e) in effects.iter().enumerate() {
            if e.rows() != n || e.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "effect {index} has the wrong shape"
                )));
            }
            let eig = eig_hermitian(e, crate::linalg::HERMITIAN_TOL)?;
            let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
            if min < -EFFECT_POSITIVITY_TOL {
                return Err(Error::NotPositiveEffect {
                    index,
                    min_eigenvalue: min,
                });
            }
            rank_one &= eig
                .eigenvalues
                .iter()
                .filter(|&&l| l > RANK_ONE_TOL)
                .count()
                == 1;
        }
        let residual =
            sum_matrices(n, effects.iter().cloned()).max_abs_diff(&ComplexMatrix::identity(n));
        if !(residual <= COMPLETENESS_TOL) {
            return Err(Error::CompletenessViolation { residual });
        }
        Ok(Povm { effects, rank_one })
    }

    /// Like [`Povm::new`] but requires every effect to have rank one.
    pub fn new_rank_one(effects: Vec<ComplexMatrix>) -> Result<Self> {
        let povm = Self::new(effects)?;
        if !povm.rank_one {
            let index = povm
                .effects
                .iter()
                .position(|e| {
                    let eig = eig_hermitian(e, crate::linalg::HERMITIAN_TOL).expect("validated");
                    eig.eigenvalues
                        .iter()
                        .filter(|&&l| l > RANK_ONE_TOL)
                        .count()
                        != 1
                })
                .unwrap_or(0);
            return Err(Error::NotRankOne { index });
        }
        Ok(povm)
    }

    /// Two outcomes: projector onto the first `⌈n/2⌉` basis vectors and its complement.
    pub fn half_split(n: usize) -> Result<Self> {
        let h = n.div_ceil(2);
        let first: Vec<f64> = (0..n).map(|k| if k < h { 1.0 } else { 0.0 }).collect();
        let second: Vec<f64> = first.iter().map(|x| 1.0 - x).collect();
        Self::new(alloc::vec![
            ComplexMatrix::from_real_diagonal(&first),
            ComplexMatrix::from_real_diagonal(&second),
        ])
    }

    pub fn effects(&self) -> &[ComplexMatrix] {
        &self.effects
    }

    pub fn is_rank_one(&self) -> bool {
        self.rank_one
    }

    pub fn dim(&self) -> usize {
        self.effects[0].rows()
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }
}

/// `p_k = Tr(E_k ρ)`.
pub fn measure_povm(povm: &Povm, rho: &DensityOperator) -> Result<ProbabilityVector> {
    if povm.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "POVM dimension {} but state dimension {}",
            povm.dim(),
            rho.dim()
        )));
    }
    let p: Vec<f64> = povm
        .effects
        .iter()
        .map(|e| trace_product(e, rho.matrix()).re)
        .map(|q| if q <= SNAP_TOL { 0.0 } else { q })
        .collect();
    ProbabilityVector::from_weights(&p)
}

/// `E_k = w_k† w_k` for the rows `w_k` of an isometry `W` (`W†W = I`).
pub fn rank_one_povm_from_isometry(w: &ComplexMatrix) -> Result<Povm> {
    let residual = w.isometry_residual();
    if !(residual <= ISOMETRY_TOL) {
        return Err(Error::NotIsometry { residual });
    }
    let effects: Vec<ComplexMatrix> = (0..w.rows())
        .map(|k| {
            let r = w.row(k);
            let conj: Vec<C64> = r.iter().map(|z| z.conj()).collect();
            ComplexMatrix::outer(&conj, &conj)
        })
        .collect();
    let rank_one = effects.iter().all(|e| e.trace().re > RANK_ONE_TOL);
    let povm = Povm::new(effects)?;
    Ok(Povm {
        rank_one: rank_one && povm.rank_one,
        ..povm
    })
}

/// Orthogonal projectors summing to the identity.
#[derive(Clone, Debug)]
pub struct ProjectiveMeasurement {
    projectors: Vec<ComplexMatrix>,
}

impl ProjectiveMeasurement {
    pub fn new(projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let n = projectors
            .first()
            .ok_or_else(|| {
                Error::DimensionMismatch("measurement needs at least one projector".into())
            })?
            .rows();
        if projectors.iter().any(|p| p.rows() != n || p.cols() != n) {
            return Err(Error::DimensionMismatch(
                "projectors differ in shape".into(),
            ));
        }
        let zero = ComplexMatrix::zeros(n, n);
        let mut residual: f64 = 0.0;
        for (j, pj) in projectors.iter().enumerate() {
            for (k, pk) in projectors.iter().enumerate() {
                let prod = pj * pk;
                let target = if j == k { pj } else { &zero };
                residual = residual.max(prod.max_abs_diff(target));
            }
            residual = residual.max(pj.hermitian_asymmetry());
        }
        if !(residual <= COMPLETENESS_TOL) {
            return Err(Error::NotProjective { residual });
        }
        let residual =
            sum_matrices(n, projectors.iter().cloned()).max_abs_diff(&ComplexMatrix::identity(n));
        if !(residual <= COMPLETENESS_TOL) {
            return Err(Error::CompletenessViolation { residual });
        }
        Ok(ProjectiveMeasurement { projectors })
    }

    /// Rank-one projectors onto the columns of a unitary.
    pub fn from_basis(u: &ComplexMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::NotSquare {
                rows: u.rows(),
                cols: u.cols(),
            });
        }
        let residual = u.isometry_residual();
        if !(residual <= ISOMETRY_TOL) {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self::from_basis_unchecked(u))
    }

    pub(crate) fn from_basis_unchecked(u: &ComplexMatrix) -> Self {
        let projectors = (0..u.cols())
            .map(|k| {
                let v = u.col(k);
                ComplexMatrix::outer(&v, &v)
            })
            .collect();
        ProjectiveMeasurement { projectors }
    }

    pub fn computational(n: usize) -> Self {
        Self::from_basis_unchecked(&ComplexMatrix::identity(n))
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].rows()
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn to_povm(&self) -> Povm {
        Povm::new(self.projectors.clone()).expect("projective measurements are POVMs")
    }
}

/// Outcome probability and normalized post-measurement state for `I ⊗ Π_j`
/// acting on the second factor of `dims`.
pub fn post_measurement(
    pi: &ProjectiveMeasurement,
    j: usize,
    rho_ab: &DensityOperator,
    dims: (usize, usize),
) -> Result<(f64, DensityOperator)> {
    let (na, nb) = dims;
    if na * nb != rho_ab.dim() || pi.dim() != nb {
        return Err(Error::DimensionMismatch(format!(
            "dims ({na}, {nb}) with state dimension {} and measurement dimension {}",
            rho_ab.dim(),
            pi.dim()
        )));
    }
    let proj = pi
        .projectors
        .get(j)
        .ok_or_else(|| Error::DimensionMismatch(format!("outcome {j} out of range")))?;
    let lifted = tensor(&ComplexMatrix::identity(na), proj);
    let unnormalized = lifted.conjugate(rho_ab.matrix());
    let p = unnormalized.trace().re;
    if !(p > ZERO_OUTCOME_TOL) {
        return Err(Error::ZeroProbabilityOutcome {
            index: j,
            probability: p,
        });
    }
    Ok((p, DensityOperator::new(unnormalized.scale(1.0 / p))?))
}
