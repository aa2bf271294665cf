//! Seeded generators for random states, unitaries and channels.
//!
//! The stream is ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded from a 64-bit
//! integer; Gaussian entries come from `rand_distr::StandardNormal`.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::channels::{rank_one_povm_from_isometry, KrausChannel, Povm};
use crate::classical::{JointProbability, ProbabilityVector};
use crate::linalg::{ComplexMatrix, C64};
use crate::math::{ln, sqrt};
use crate::quantum::{DensityOperator, PureState};

pub const ALGORITHM: &str = "ChaCha20";

#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha20Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource {
            seed,
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn algorithm(&self) -> &'static str {
        ALGORITHM
    }

    /// Independent source derived from this one's stream.
    pub fn fork(&mut self) -> Self {
        Self::new(self.rng.random())
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random()
    }

    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn integer(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    pub fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Standard complex Gaussian, `E|z|² = 1`.
    pub fn complex_gaussian(&mut self) -> C64 {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        C64::new(self.gaussian() * s, self.gaussian() * s)
    }

    pub fn ginibre(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        let data = (0..rows * cols).map(|_| self.complex_gaussian()).collect();
        ComplexMatrix::from_vec(rows, cols, data).expect("finite Gaussian entries")
    }

    pub fn hermitian(&mut self, n: usize) -> ComplexMatrix {
        self.ginibre(n, n).hermitian_part()
    }

    pub fn haar_unitary(&mut self, n: usize) -> ComplexMatrix {
        haar_unitary(n, self)
    }

    /// First `n` columns of a `k × k` Haar unitary.
    pub fn isometry(&mut self, k: usize, n: usize) -> ComplexMatrix {
        let u = self.haar_unitary(k);
        let cols: Vec<Vec<C64>> = (0..n).map(|j| u.col(j)).collect();
        from_columns(k, &cols)
    }

    pub fn pure_state(&mut self, n: usize) -> PureState {
        loop {
            let v: Vec<C64> = (0..n).map(|_| self.complex_gaussian()).collect();
            if let Ok(psi) = PureState::normalized(v) {
                return psi;
            }
        }
    }

    pub fn density(&mut self, n: usize, rank: usize) -> DensityOperator {
        random_density(n, rank, self)
    }

    /// Flat Dirichlet sample.
    pub fn probability_vector(&mut self, n: usize) -> ProbabilityVector {
        loop {
            let w: Vec<f64> = (0..n).map(|_| -ln(1.0 - self.uniform())).collect();
            if let Ok(p) = ProbabilityVector::from_weights(&w) {
                return p;
            }
        }
    }

    /// Unistochastic matrix `|U_ij|²` as rows.
    pub fn bistochastic_matrix(&mut self, n: usize) -> Vec<Vec<f64>> {
        let u = self.haar_unitary(n);
        (0..n)
            .map(|i| (0..n).map(|j| u[(i, j)].norm_sqr()).collect())
            .collect()
    }

    pub fn joint(&mut self, rows: usize, cols: usize) -> JointProbability {
        let p = self.probability_vector(rows * cols);
        let table: Vec<Vec<f64>> = p.components().chunks(cols).map(<[f64]>::to_vec).collect();
        JointProbability::from_rows(&table).expect("Dirichlet sample is a distribution")
    }

    /// Rank-one POVM with `K ∈ {n, …, 2n}` outcomes from a truncated Haar isometry.
    pub fn rank_one_povm(&mut self, n: usize) -> Povm {
        let k = self.integer(n, 2 * n);
        let w = self.isometry(k, n);
        rank_one_povm_from_isometry(&w).expect("Haar isometry")
    }

    pub fn bistochastic_channel(&mut self, n: usize, k: usize) -> KrausChannel {
        random_bistochastic_channel(n, k, self)
    }

    pub fn separable(&mut self, dims: &[usize], terms: usize) -> DensityOperator {
        random_separable(dims, terms, self)
    }
}

fn from_columns(rows: usize, cols: &[Vec<C64>]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, z) in c.iter().enumerate() {
            m[(i, j)] = *z;
        }
    }
    m
}

/// Haar-distributed unitary: Gram-Schmidt (two passes) on a Ginibre matrix.
/// The triangular factor has a positive diagonal, which is the phase fix that
/// makes the distribution invariant.
pub fn haar_unitary(n: usize, src: &mut RandomSource) -> ComplexMatrix {
    loop {
        let g = src.ginibre(n, n);
        let mut q: Vec<Vec<C64>> = Vec::with_capacity(n);
        let mut ok = true;
        for j in 0..n {
            let mut v = g.col(j);
            for _ in 0..2 {
                for qk in &q {
                    let r: C64 = qk.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    v.iter_mut().zip(qk).for_each(|(x, y)| *x -= r * y);
                }
            }
            let norm = sqrt(v.iter().map(|z| z.norm_sqr()).sum());
            if !(norm > 1e-8) {
                ok = false;
                break;
            }
            v.iter_mut().for_each(|x| *x /= norm);
            q.push(v);
        }
        if ok {
            return from_columns(n, &q);
        }
    }
}

/// `GG†/Tr(GG†)` with `G` an `n × rank` Ginibre matrix.
pub fn random_density(n: usize, rank: usize, src: &mut RandomSource) -> DensityOperator {
    let rank = rank.clamp(1, n);
    loop {
        let g = src.ginibre(n, rank);
        let m = &g * &g.adjoint();
        let tr = m.trace().re;
        if let Ok(rho) = DensityOperator::new(m.scale(1.0 / tr)) {
            if rho.rank() == rank {
                return rho;
            }
        }
    }
}

/// `Σ_m w_m ⊗_l |ψ_m^l⟩⟨ψ_m^l|` with Dirichlet weights and random pure factors.
pub fn random_separable(dims: &[usize], terms: usize, src: &mut RandomSource) -> DensityOperator {
    let terms = terms.max(1);
    let weights = src.probability_vector(terms);
    let per_party: Vec<Vec<PureState>> = dims
        .iter()
        .map(|&d| (0..terms).map(|_| src.pure_state(d)).collect())
        .collect();
    crate::composite::separable_mixture(&weights, &per_party).expect("consistent construction")
}

/// `{√w_i U_i}` for `k` Haar unitaries and Dirichlet weights.
pub fn random_bistochastic_channel(n: usize, k: usize, src: &mut RandomSource) -> KrausChannel {
    let k = k.max(1);
    let w = src.probability_vector(k);
    let ops = w
        .components()
        .iter()
        .map(|&wi| src.haar_unitary(n).scale(sqrt(wi)))
        .collect();
    KrausChannel::new(ops).expect("mixture of unitaries is trace preserving")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::is_bistochastic;
    use crate::classical::{majorizes, MajorizationVerdict};
    use crate::composite::{entropic_separability_test, SeparabilityVerdict};
    use crate::functionals::{named_family_grid, EntropicPair};
    use crate::quantum::quantum_entropy;

    #[test]
    fn haar_unitarity() {
        let mut src = RandomSource::new(1);
        let u = src.haar_unitary(1);
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-15);
        for n in 1..=9 {
            let u = src.haar_unitary(n);
            assert!(u.isometry_residual() <= 1e-12);
            assert!(u.coisometry_residual() <= 1e-12);
        }
    }

    #[test]
    fn determinism_pin() {
        let a = RandomSource::new(42).haar_unitary(2);
        let b = RandomSource::new(42).haar_unitary(2);
        assert_eq!(a, b);
        assert_ne!(a, RandomSource::new(43).haar_unitary(2));
        let pinned = [a[(0, 0)].re, a[(0, 0)].im, a[(1, 0)].re, a[(1, 1)].im];
        let expect = PIN_SEED_42;
        for (x, y) in pinned.iter().zip(expect) {
            assert!((x - y).abs() < 1e-14, "{pinned:?}");
        }
    }

    const PIN_SEED_42: [f64; 4] = [
        0.033682769484612574,
        -0.1851903028094841,
        -0.9376487434255845,
        -0.053308321366004,
    ];

    #[test]
    fn density_ranks() {
        let mut src = RandomSource::new(5);
        let pure = src.density(4, 1);
        assert_eq!(pure.rank(), 1);
        assert!(quantum_entropy(&EntropicPair::shannon(), &pure).abs() < 1e-12);
        let n = 3;
        let mean: f64 = (0..1000)
            .map(|_| quantum_entropy(&EntropicPair::shannon(), &src.density(n, n)))
            .sum::<f64>()
            / 1000.0;
        assert!(mean > 0.0 && mean < (n as f64).ln());
    }

    #[test]
    fn marginal_of_pure_matches_full_rank_purity() {
        let mut src = RandomSource::new(11);
        let n = 3;
        let trials = 2000;
        let purity = |rho: &DensityOperator| {
            rho.spectrum()
                .components()
                .iter()
                .map(|l| l * l)
                .sum::<f64>()
        };
        let mut a = 0.0;
        let mut b = 0.0;
        for _ in 0..trials {
            a += purity(&src.density(n, n));
            let psi = src.pure_state(n * n);
            let marg = DensityOperator::from_pure(&psi)
                .partial_trace(&[n, n], &[0])
                .unwrap();
            b += purity(&marg);
        }
        let (a, b) = (a / trials as f64, b / trials as f64);
        assert!((a - b).abs() / a < 0.05, "{a} {b}");
    }

    #[test]
    fn separable_generators() {
        let mut src = RandomSource::new(3);
        let single = src.separable(&[2, 3], 1);
        assert!(single.is_pure());
        let fams = named_family_grid();
        for dims in [&[2usize, 2][..], &[2, 2, 2]] {
            let rho = src.separable(dims, 8);
            let w = entropic_separability_test(&fams, &rho, dims).unwrap();
            assert_eq!(w.verdict, SeparabilityVerdict::Inconclusive);
            let a = rho.partial_trace(dims, &[0]).unwrap();
            assert!(matches!(
                majorizes(rho.spectrum(), a.spectrum()).verdict,
                MajorizationVerdict::FirstMajorized | MajorizationVerdict::Equal
            ));
        }
    }

    #[test]
    fn bistochastic_channels() {
        let mut src = RandomSource::new(9);
        for k in 1..=4 {
            let ch = src.bistochastic_channel(3, k);
            assert!(is_bistochastic(&ch, 1e-10));
            let mm = DensityOperator::maximally_mixed(3).unwrap();
            assert!(ch.apply(&mm).unwrap().matrix().max_abs_diff(mm.matrix()) <= 1e-10);
        }
        let sh = EntropicPair::shannon();
        let ch = src.bistochastic_channel(2, 3);
        let rho = src.density(2, 2);
        assert!(
            quantum_entropy(&sh, &ch.apply(&rho).unwrap()) >= quantum_entropy(&sh, &rho) - 1e-10
        );
        let u = src.bistochastic_channel(3, 1);
        let rho = src.density(3, 3);
        assert!(
            (quantum_entropy(&sh, &u.apply(&rho).unwrap()) - quantum_entropy(&sh, &rho)).abs()
                < 1e-10
        );
    }

    #[test]
    fn povm_sampler() {
        let mut src = RandomSource::new(2);
        for n in 1..=4 {
            let povm = src.rank_one_povm(n);
            assert!(povm.is_rank_one());
            assert!(povm.len() >= n && povm.len() <= 2 * n);
        }
    }

    #[test]
    fn probability_samplers() {
        let mut src = RandomSource::new(4);
        let p = src.probability_vector(5);
        assert_eq!(p.len(), 5);
        let b = src.bistochastic_matrix(4);
        for (i, row) in b.iter().enumerate() {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!((b.iter().map(|r| r[i]).sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert_eq!(src.joint(2, 3).dims(), (2, 3));
    }
}
