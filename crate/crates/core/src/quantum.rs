//! Density operators and quantum `(h, φ)`-entropies.

use alloc::format;
use alloc::vec::Vec;

use crate::classical::{classical_entropy, EntropyBounds, ProbabilityVector, BOUND_TOL};
use crate::error::{Error, Result};
use crate::functionals::EntropicPair;
use crate::linalg::{eig_hermitian, partial_trace, tensor, ComplexMatrix, C64};
use crate::math::sqrt;

/// Eigenvalues with magnitude at or below this are treated as exact zeros.
pub const SNAP_TOL: f64 = 1e-13;
/// Support-size threshold.
pub const RANK_TOL: f64 = 1e-10;

/// Validation thresholds for [`DensityOperator`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub trace: f64,
    pub positivity: f64,
    /// Largest spectrum-sum drift repaired by renormalization.
    pub renormalize: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hermitian: 1e-10,
            trace: 1e-10,
            positivity: 1e-10,
            renormalize: 1e-9,
        }
    }
}

/// A validated density operator with cached spectral decomposition.
#[derive(Clone, Debug)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    spectrum: ProbabilityVector,
    eigenvectors: ComplexMatrix,
    rank: usize,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, Tolerances::default())
    }

    pub fn with_tolerances(matrix: ComplexMatrix, tol: Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if matrix
            .data()
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::TraceNotOne { trace: tr.re });
        }
        let eig = eig_hermitian(&matrix, tol.hermitian)?;
        let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -tol.positivity {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        let mut spectrum: Vec<f64> = eig
            .eigenvalues
            .iter()
            .map(|&l| if l <= SNAP_TOL { 0.0 } else { l })
            .collect();
        let s: f64 = spectrum.iter().sum();
        if (s - 1.0).abs() > tol.renormalize {
            return Err(Error::TraceNotOne { trace: s });
        }
        spectrum.iter_mut().for_each(|l| *l /= s);
        let rank = spectrum.iter().filter(|&&l| l > RANK_TOL).count();
        Ok(DensityOperator {
            matrix: matrix.hermitian_part().scale(1.0 / tr.re),
            spectrum: ProbabilityVector::new(spectrum)?,
            eigenvectors: eig.eigenvectors,
            rank,
        })
    }

    pub fn maximally_mixed(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch(
                "dimension must be positive".into(),
            ));
        }
        Self::new(ComplexMatrix::identity(n).scale(1.0 / n as f64))
    }

    /// `diag(p)` in the computational basis.
    pub fn diagonal(p: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(p))
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self::new(psi.projector()).expect("projector onto a unit vector is a density operator")
    }

    /// `Σ_i w_i ρ_i`.
    pub fn mixture(weights: &[f64], states: &[DensityOperator]) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} states",
                weights.len(),
                states.len()
            )));
        }
        let n = states[0].dim();
        let mut acc = ComplexMatrix::zeros(n, n);
        for (w, s) in weights.iter().zip(states) {
            if s.dim() != n {
                return Err(Error::DimensionMismatch(
                    "mixture of states of different dimension".into(),
                ));
            }
            acc = &acc + &s.matrix.scale(*w);
        }
        Self::new(acc)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Decreasing eigenvalues.
    pub fn spectrum(&self) -> &ProbabilityVector {
        &self.spectrum
    }

    /// Columns are eigenvectors, ordered as the spectrum.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_pure(&self) -> bool {
        self.rank == 1
    }

    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        Self::new(partial_trace(&self.matrix, dims, keep)?)
    }

    pub fn tensor(&self, other: &DensityOperator) -> Self {
        Self::new(tensor(&self.matrix, &other.matrix)).expect("product of density operators")
    }

    /// `ωρ + (1 − ω)σ`.
    pub fn mix(&self, omega: f64, other: &DensityOperator) -> Result<Self> {
        Self::mixture(&[omega, 1.0 - omega], &[self.clone(), other.clone()])
    }

    /// `⟨e_k|ρ|e_k⟩` for the columns of `basis`, snapped to zero below [`SNAP_TOL`].
    pub fn diagonal_in(&self, basis: &ComplexMatrix) -> Vec<f64> {
        (0..basis.cols())
            .map(|k| self.matrix.expectation(&basis.col(k)).re)
            .map(|d| if d <= SNAP_TOL { 0.0 } else { d })
            .collect()
    }
}

/// A normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    pub const NORM_TOL: f64 = 1e-12;

    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let norm = vec_norm(&amplitudes);
        if amplitudes.is_empty() || !norm.is_finite() || (norm - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(PureState { amplitudes })
    }

    /// Normalizes a nonzero vector.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let norm = vec_norm(&amplitudes);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(PureState {
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// `|k⟩` in dimension `n`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut amplitudes = alloc::vec![C64::new(0.0, 0.0); n];
        amplitudes[k] = C64::new(1.0, 0.0);
        PureState { amplitudes }
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }
}

fn vec_norm(v: &[C64]) -> f64 {
    sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// `h(Σ φ(λ_i))` on the cached spectrum.
pub fn quantum_entropy(pair: &EntropicPair, rho: &DensityOperator) -> f64 {
    classical_entropy(pair, rho.spectrum())
}

/// `h(Tr φ(ρ))` through the functional calculus on a fresh decomposition.
pub fn quantum_entropy_trace_form(pair: &EntropicPair, rho: &DensityOperator) -> Result<f64> {
    let eig = eig_hermitian(rho.matrix(), Tolerances::default().hermitian)?;
    let phi_rho = eig.reconstruct_with(|l| {
        if l <= SNAP_TOL {
            0.0
        } else {
            pair.phi(l.min(1.0))
        }
    });
    Ok(pair.h(phi_rho.trace().re))
}

/// `(0, h(rank φ(1/rank)), h(N φ(1/N)))`, checked against `H(ρ)`.
pub fn entropy_bounds_q(pair: &EntropicPair, rho: &DensityOperator) -> Result<EntropyBounds> {
    let bounds = EntropyBounds::for_sizes(pair, rho.rank(), rho.dim());
    bounds.check(quantum_entropy(pair, rho), BOUND_TOL)?;
    Ok(bounds)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JensenDivergence {
    pub value: f64,
    /// Whether `h` passed the sampled concavity check. Nonnegativity is only
    /// guaranteed when it did.
    pub concave_h: bool,
}

/// `H((ρ + σ)/2) − [H(ρ) + H(σ)]/2`.
pub fn jensen_divergence(
    pair: &EntropicPair,
    rho: &DensityOperator,
    sigma: &DensityOperator,
) -> Result<JensenDivergence> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "states of dimension {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let mid = rho.mix(0.5, sigma)?;
    let value = quantum_entropy(pair, &mid)
        - 0.5 * (quantum_entropy(pair, rho) + quantum_entropy(pair, sigma));
    Ok(JensenDivergence {
        value,
        concave_h: pair.h_is_concave(rho.dim()),
    })
}

/// Binary entropy of `[(1 + |⟨ψ|ψ′⟩|)/2, (1 − |⟨ψ|ψ′⟩|)/2]`.
pub fn pure_divergence_closed_form(
    pair: &EntropicPair,
    psi: &PureState,
    phi: &PureState,
) -> Result<f64> {
    if psi.dim() != phi.dim() {
        return Err(Error::DimensionMismatch(
            "pure states of different dimension".into(),
        ));
    }
    let o = psi.inner(phi).norm().min(1.0);
    Ok(pair.entropy(&[(1.0 + o) / 2.0, (1.0 - o) / 2.0]))
}

/// Entropy of `ρ = Σ p_i |ψ_i⟩⟨ψ_i|` and of the weights; errors if `H_ρ > H_p`.
pub fn mixture_entropy_gap(
    pair: &EntropicPair,
    weights: &ProbabilityVector,
    states: &[PureState],
) -> Result<(f64, f64)> {
    let projectors: Vec<DensityOperator> = states.iter().map(DensityOperator::from_pure).collect();
    if projectors.iter().any(|s| s.dim() != projectors[0].dim()) {
        return Err(Error::DimensionMismatch(
            "pure states of different dimension".into(),
        ));
    }
    let rho = DensityOperator::mixture(weights.components(), &projectors)?;
    let (h_rho, h_p) = (
        quantum_entropy(pair, &rho),
        classical_entropy(pair, weights),
    );
    if h_rho > h_p + BOUND_TOL {
        return Err(Error::InequalityViolated {
            what: "entropy of mixture <= entropy of weights",
            lhs: h_rho,
            rhs: h_p,
        });
    }
    Ok((h_rho, h_p))
}

pub const UNITARY_TOL: f64 = 1e-10;

fn check_unitary(u: &ComplexMatrix, n: usize) -> Result<()> {
    if u.rows() != n || u.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "basis is {}x{}, state has dimension {n}",
            u.rows(),
            u.cols()
        )));
    }
    let residual = u.isometry_residual().max(u.coisometry_residual());
    if !(residual <= UNITARY_TOL) {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}

/// Entropy of `ρ` and of its diagonal in the basis given by the columns of
/// `basis`; errors if the diagonal has lower entropy.
pub fn diagonal_entropy(
    pair: &EntropicPair,
    rho: &DensityOperator,
    basis: &ComplexMatrix,
) -> Result<(f64, f64)> {
    check_unitary(basis, rho.dim())?;
    let diag = ProbabilityVector::new(rho.diagonal_in(basis))?;
    let (h_rho, h_diag) = (quantum_entropy(pair, rho), classical_entropy(pair, &diag));
    if h_rho > h_diag + BOUND_TOL {
        return Err(Error::InequalityViolated {
            what: "entropy <= diagonal entropy",
            lhs: h_rho,
            rhs: h_diag,
        });
    }
    Ok((h_rho, h_diag))
}

/// `U ρ U†` for an isometry `U` (`U†U = I`).
pub fn isometry_conjugate(rho: &DensityOperator, u: &ComplexMatrix) -> Result<DensityOperator> {
    if u.cols() != rho.dim() || u.rows() < u.cols() {
        return Err(Error::DimensionMismatch(format!(
            "isometry is {}x{}, state has dimension {}",
            u.rows(),
            u.cols(),
            rho.dim()
        )));
    }
    let residual = u.isometry_residual();
    if !(residual <= UNITARY_TOL) {
        return Err(Error::NotIsometry { residual });
    }
    DensityOperator::new(u.conjugate(rho.matrix()))
}

/// `(H(ρ), H(UρU†))`.
pub fn isometry_conjugate_entropy(
    pair: &EntropicPair,
    rho: &DensityOperator,
    u: &ComplexMatrix,
) -> Result<(f64, f64)> {
    let out = isometry_conjugate(rho, u)?;
    Ok((quantum_entropy(pair, rho), quantum_entropy(pair, &out)))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::functionals::named_family_grid;
    use alloc::vec;
    use proptest::prelude::*;

    pub(crate) fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    pub(crate) fn plus() -> PureState {
        PureState::from_real(&[1.0, 1.0]).unwrap()
    }

    #[allow(clippy::excessive_precision)]
    const H_OVERLAP: f64 = 0.41649553069968745;

    #[test]
    fn construction_and_validation() {
        let rho = DensityOperator::diagonal(&[0.25, 0.75]).unwrap();
        assert_eq!(rho.spectrum().components(), &[0.75, 0.25]);
        assert_eq!(rho.rank(), 2);
        assert!(matches!(
            DensityOperator::diagonal(&[0.5, 0.6]),
            Err(Error::TraceNotOne { .. })
        ));
        assert!(matches!(
            DensityOperator::diagonal(&[1.5, -0.5]),
            Err(Error::NotPositive { .. })
        ));
        let m = ComplexMatrix::from_rows(vec![
            vec![c(0.5, 0.0), c(0.0, 0.1)],
            vec![c(0.0, 0.1), c(0.5, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            DensityOperator::new(m),
            Err(Error::NotHermitian { .. })
        ));
        // Tiny negative eigenvalue is clipped.
        let rho = DensityOperator::diagonal(&[1.0 + 5e-11, -5e-11]).unwrap();
        assert_eq!(rho.spectrum().components()[1], 0.0);
        assert!(rho.is_pure());
        let strict = Tolerances {
            positivity: 1e-12,
            ..Tolerances::default()
        };
        assert!(DensityOperator::with_tolerances(
            ComplexMatrix::from_real_diagonal(&[1.0 + 5e-11, -5e-11]),
            strict
        )
        .is_err());
        assert!(PureState::new(vec![c(1.0, 0.0), c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn entropy_examples() {
        let sh = EntropicPair::shannon();
        for pair in named_family_grid() {
            let rho = DensityOperator::from_pure(&plus());
            assert!(quantum_entropy(&pair, &rho).abs() < 1e-12);
        }
        let mixed = DensityOperator::maximally_mixed(2).unwrap();
        assert!((quantum_entropy(&sh, &mixed) - 2f64.ln()).abs() < 1e-15);
        let t2 = EntropicPair::tsallis(2.0).unwrap();
        let rho = DensityOperator::diagonal(&[0.75, 0.25]).unwrap();
        assert!((quantum_entropy(&t2, &rho) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn bounds_examples() {
        let sh = EntropicPair::shannon();
        let rho = DensityOperator::diagonal(&[0.6, 0.4, 0.0]).unwrap();
        let b = entropy_bounds_q(&sh, &rho).unwrap();
        assert!((b.tight_upper - 2f64.ln()).abs() < 1e-15);
        assert!((b.dim_upper - 3f64.ln()).abs() < 1e-15);
        for pair in named_family_grid() {
            let mm = DensityOperator::maximally_mixed(5).unwrap();
            let b = entropy_bounds_q(&pair, &mm).unwrap();
            let h = quantum_entropy(&pair, &mm);
            assert!((h - b.tight_upper).abs() < 1e-10 && (h - b.dim_upper).abs() < 1e-10);
            let pure = DensityOperator::from_pure(&PureState::basis(3, 1));
            assert_eq!(entropy_bounds_q(&pair, &pure).unwrap().tight_upper, 0.0);
        }
    }

    #[test]
    fn jensen_examples() {
        let sh = EntropicPair::shannon();
        let rho = DensityOperator::diagonal(&[0.7, 0.3]).unwrap();
        assert!(jensen_divergence(&sh, &rho, &rho).unwrap().value.abs() < 1e-12);
        let (z, o) = (PureState::basis(2, 0), PureState::basis(2, 1));
        let (rz, ro) = (
            DensityOperator::from_pure(&z),
            DensityOperator::from_pure(&o),
        );
        assert!((jensen_divergence(&sh, &rz, &ro).unwrap().value - 2f64.ln()).abs() < 1e-12);
        let rp = DensityOperator::from_pure(&plus());
        let d = jensen_divergence(&sh, &rz, &rp).unwrap();
        assert!(d.concave_h);
        assert!((d.value - H_OVERLAP).abs() < 1e-12);
        assert!((d.value - 0.416503).abs() < 1e-5);
        let r3 = EntropicPair::renyi(3.0).unwrap();
        assert!(!jensen_divergence(&r3, &rz, &rp).unwrap().concave_h);
        assert!(
            jensen_divergence(&sh, &rz, &DensityOperator::maximally_mixed(3).unwrap()).is_err()
        );
    }

    #[test]
    fn closed_form_examples() {
        let sh = EntropicPair::shannon();
        let z = PureState::basis(2, 0);
        assert!(pure_divergence_closed_form(&sh, &z, &z).unwrap().abs() < 1e-15);
        let o = PureState::basis(2, 1);
        assert!((pure_divergence_closed_form(&sh, &z, &o).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((pure_divergence_closed_form(&sh, &z, &plus()).unwrap() - H_OVERLAP).abs() < 1e-12);
    }

    #[test]
    fn mixture_examples() {
        let sh = EntropicPair::shannon();
        let half = ProbabilityVector::uniform(2).unwrap();
        let (a, b) = mixture_entropy_gap(
            &sh,
            &half,
            &[PureState::basis(2, 0), PureState::basis(2, 1)],
        )
        .unwrap();
        assert!((a - b).abs() < 1e-12);
        let (a, b) = mixture_entropy_gap(&sh, &half, &[PureState::basis(2, 0), plus()]).unwrap();
        assert!((a - H_OVERLAP).abs() < 1e-12 && (b - 2f64.ln()).abs() < 1e-15);
        let one = ProbabilityVector::new(vec![1.0]).unwrap();
        let (a, b) = mixture_entropy_gap(&sh, &one, &[plus()]).unwrap();
        assert!(a.abs() < 1e-12 && b == 0.0);
    }

    #[test]
    fn diagonal_examples() {
        let sh = EntropicPair::shannon();
        let rho = DensityOperator::diagonal(&[0.2, 0.5, 0.3]).unwrap();
        let (a, b) = diagonal_entropy(&sh, &rho, rho.eigenvectors()).unwrap();
        assert!((a - b).abs() < 1e-12);
        let rp = DensityOperator::from_pure(&plus());
        let (a, b) = diagonal_entropy(&sh, &rp, &ComplexMatrix::identity(2)).unwrap();
        assert!(a.abs() < 1e-12 && (b - 2f64.ln()).abs() < 1e-12);
        let s = 0.5f64.sqrt();
        let hadamard = ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]).unwrap();
        let mm = DensityOperator::maximally_mixed(2).unwrap();
        let (a, b) = diagonal_entropy(&sh, &mm, &hadamard).unwrap();
        assert!((a - b).abs() < 1e-12);
        let bad = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(
            diagonal_entropy(&sh, &mm, &bad),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn isometry_examples() {
        let sh = EntropicPair::shannon();
        let rho = DensityOperator::diagonal(&[0.7, 0.3]).unwrap();
        let (a, b) = isometry_conjugate_entropy(&sh, &rho, &ComplexMatrix::identity(2)).unwrap();
        assert!((a - b).abs() < 1e-12);
        let embed =
            ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        for pair in named_family_grid() {
            let (a, b) = isometry_conjugate_entropy(&pair, &rho, &embed).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
        let bad = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.5], &[0.0, 0.0]]).unwrap();
        assert!(matches!(
            isometry_conjugate_entropy(&sh, &rho, &bad),
            Err(Error::NotIsometry { .. })
        ));
    }

    /// `GG†/Tr` from a proptest-generated Ginibre-like matrix.
    pub(crate) fn density_strategy(n: usize) -> impl Strategy<Value = DensityOperator> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_filter_map(
            "degenerate",
            move |v| {
                let g =
                    ComplexMatrix::from_vec(n, n, v.into_iter().map(|(a, b)| c(a, b)).collect())
                        .ok()?;
                let m = &g * &g.adjoint();
                let tr = m.trace().re;
                if tr < 1e-6 {
                    return None;
                }
                DensityOperator::new(m.scale(1.0 / tr)).ok()
            },
        )
    }

    fn concave_pairs() -> Vec<EntropicPair> {
        vec![
            EntropicPair::shannon(),
            EntropicPair::tsallis(0.5).unwrap(),
            EntropicPair::tsallis(2.0).unwrap(),
            EntropicPair::tsallis(3.0).unwrap(),
            EntropicPair::renyi(0.3).unwrap(),
            EntropicPair::renyi(0.7).unwrap(),
            EntropicPair::unified(0.5, 0.5).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn trace_form_agrees(rho in (1usize..=5).prop_flat_map(density_strategy)) {
            for pair in named_family_grid() {
                let a = quantum_entropy(&pair, &rho);
                let b = quantum_entropy_trace_form(&pair, &rho).unwrap();
                prop_assert!((a - b).abs() <= 1e-9, "{} {} {}", pair, a, b);
            }
        }

        #[test]
        fn concavity((w, r, s) in (0.0f64..=1.0, 2usize..=4).prop_flat_map(|(w, n)| (Just(w), density_strategy(n), density_strategy(n)))) {
            let mix = r.mix(w, &s).unwrap();
            for pair in concave_pairs() {
                prop_assert!(pair.h_is_concave(r.dim()));
                let lhs = quantum_entropy(&pair, &mix);
                let rhs = w * quantum_entropy(&pair, &r) + (1.0 - w) * quantum_entropy(&pair, &s);
                prop_assert!(lhs >= rhs - 1e-10);
            }
        }

        #[test]
        fn jensen_nonnegative_symmetric((r, s) in (1usize..=6).prop_flat_map(|n| (density_strategy(n), density_strategy(n)))) {
            for pair in concave_pairs() {
                let d = jensen_divergence(&pair, &r, &s).unwrap();
                prop_assert!(d.value >= -1e-10);
                let e = jensen_divergence(&pair, &s, &r).unwrap();
                prop_assert!((d.value - e.value).abs() <= 1e-12);
            }
        }

        #[test]
        fn bounds_and_diagonal(rho in (1usize..=5).prop_flat_map(density_strategy)) {
            for pair in named_family_grid() {
                prop_assert!(entropy_bounds_q(&pair, &rho).is_ok());
                prop_assert!(diagonal_entropy(&pair, &rho, &ComplexMatrix::identity(rho.dim())).is_ok());
            }
        }
    }
}
