//! Bipartite and multipartite structure: Schmidt decomposition, separable
//! mixtures, entropic separability tests, Werner states, additivity fixtures
//! and quantum conditional entropies.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::channels::{post_measurement, ProjectiveMeasurement, ZERO_OUTCOME_TOL};
use crate::classical::{majorizes, MajorizationVerdict, ProbabilityVector};
use crate::error::{Error, Result};
use crate::functionals::{EntropicPair, FAlphaFamily, OuterFunction};
use crate::linalg::{eig_hermitian, tensor_all, ComplexMatrix, C64};
use crate::math::{cos, ln, pow_pos, powf, sin, sqrt, xlnx_neg};
use crate::quantum::{quantum_entropy, DensityOperator, PureState};
use crate::random::RandomSource;

/// Entanglement is declared when a marginal exceeds the global entropy by more than this.
pub const SEPARABILITY_TOL: f64 = 1e-10;
/// Absolute tolerance of the Werner-boundary bisection.
pub const BISECTION_TOL: f64 = 1e-13;
/// Sign-bracketing scan points for the Werner boundary.
pub const BOUNDARY_SCAN: usize = 1024;

fn check_dims(total: usize, dims: &[usize]) -> Result<()> {
    let prod: usize = dims.iter().product();
    if dims.is_empty() || prod != total {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dimensions {dims:?} do not factor dimension {total}"
        )));
    }
    Ok(())
}

/// `ψ = Σ_i √λ_i |e_i^A⟩ ⊗ |e_i^B⟩`.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    /// Squared Schmidt coefficients, decreasing.
    pub coefficients: ProbabilityVector,
    pub basis_a: Vec<Vec<C64>>,
    pub basis_b: Vec<Vec<C64>>,
}

impl SchmidtDecomposition {
    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn reconstruct(&self) -> Vec<C64> {
        let na = self.basis_a.first().map_or(0, Vec::len);
        let nb = self.basis_b.first().map_or(0, Vec::len);
        let mut out = vec![C64::new(0.0, 0.0); na * nb];
        for ((l, a), b) in self
            .coefficients
            .components()
            .iter()
            .zip(&self.basis_a)
            .zip(&self.basis_b)
        {
            let s = sqrt(*l);
            for i in 0..na {
                for j in 0..nb {
                    out[i * nb + j] += a[i] * b[j] * s;
                }
            }
        }
        out
    }
}

pub fn schmidt(psi: &PureState, dims: (usize, usize)) -> Result<SchmidtDecomposition> {
    let (na, nb) = dims;
    check_dims(psi.dim(), &[na, nb])?;
    let m = ComplexMatrix::from_vec(na, nb, psi.amplitudes().to_vec())?;
    let rho_a = &m * &m.adjoint();
    let eig = eig_hermitian(&rho_a, 1e-10)?;
    let mut lambdas = Vec::new();
    let mut basis_a = Vec::new();
    let mut basis_b = Vec::new();
    for k in 0..na {
        let e = eig.eigenvectors.col(k);
        let f: Vec<C64> = (0..nb)
            .map(|j| (0..na).map(|i| e[i].conj() * m[(i, j)]).sum())
            .collect();
        let l: f64 = f.iter().map(|z| z.norm_sqr()).sum();
        if l <= 1e-20 {
            continue;
        }
        let s = sqrt(l);
        lambdas.push(l);
        basis_a.push(e);
        basis_b.push(f.into_iter().map(|z| z / s).collect());
    }
    Ok(SchmidtDecomposition {
        coefficients: ProbabilityVector::from_weights(&lambdas)?,
        basis_a,
        basis_b,
    })
}

/// `(H(ρ_A), H(ρ_B))` for a pure bipartite state.
pub fn marginal_entropy_equality(
    pair: &EntropicPair,
    psi: &PureState,
    dims: (usize, usize),
) -> Result<(f64, f64)> {
    check_dims(psi.dim(), &[dims.0, dims.1])?;
    let rho = DensityOperator::from_pure(psi);
    let d = [dims.0, dims.1];
    let a = rho.partial_trace(&d, &[0])?;
    let b = rho.partial_trace(&d, &[1])?;
    Ok((quantum_entropy(pair, &a), quantum_entropy(pair, &b)))
}

/// `Σ_m w_m ⊗_l |ψ_m^l⟩⟨ψ_m^l|`; `states[l][m]` is party `l`'s factor in term `m`.
pub fn separable_mixture(
    weights: &ProbabilityVector,
    states: &[Vec<PureState>],
) -> Result<DensityOperator> {
    let terms = weights.len();
    if states.is_empty() || states.iter().any(|s| s.len() != terms) {
        return Err(Error::DimensionMismatch(format!(
            "every party needs {terms} states, one per weight"
        )));
    }
    for party in states {
        if party.iter().any(|s| s.dim() != party[0].dim()) {
            return Err(Error::DimensionMismatch(
                "a party's states differ in dimension".into(),
            ));
        }
    }
    let n: usize = states.iter().map(|s| s[0].dim()).product();
    let mut acc = ComplexMatrix::zeros(n, n);
    for (m, &w) in weights.components().iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let factors: Vec<ComplexMatrix> = states.iter().map(|party| party[m].projector()).collect();
        acc = &acc + &tensor_all(&factors).scale(w);
    }
    DensityOperator::new(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparabilityVerdict {
    Entangled,
    /// No violation found; this is not a separability certificate.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeparabilityWitness {
    pub verdict: SeparabilityVerdict,
    /// The pair with the largest margin, when that margin exceeds the tolerance.
    pub violated_pair: Option<String>,
    /// `max over pairs and parties of H(ρ_l) − H(ρ)`.
    pub margin: f64,
    /// Relation of the global spectrum to each marginal spectrum.
    pub majorization_verdicts: Vec<MajorizationVerdict>,
}

/// Checks `H(ρ) ≥ H(ρ_l)` for every pair and party, and that the global
/// spectrum is majorized by each marginal spectrum.
pub fn entropic_separability_test(
    pairs: &[EntropicPair],
    rho: &DensityOperator,
    dims: &[usize],
) -> Result<SeparabilityWitness> {
    check_dims(rho.dim(), dims)?;
    let marginals: Vec<DensityOperator> = (0..dims.len())
        .map(|l| rho.partial_trace(dims, &[l]))
        .collect::<Result<_>>()?;
    let majorization_verdicts: Vec<MajorizationVerdict> = marginals
        .iter()
        .map(|m| majorizes(rho.spectrum(), m.spectrum()).verdict)
        .collect();
    let mut margin = f64::NEG_INFINITY;
    let mut best_pair = None;
    for pair in pairs {
        let h = quantum_entropy(pair, rho);
        for m in &marginals {
            let d = quantum_entropy(pair, m) - h;
            if d > margin {
                margin = d;
                best_pair = Some(pair.to_string());
            }
        }
    }
    if pairs.is_empty() {
        margin = 0.0;
    }
    let majorization_fails = majorization_verdicts.iter().any(|v| {
        !matches!(
            v,
            MajorizationVerdict::FirstMajorized | MajorizationVerdict::Equal
        )
    });
    let entropic = margin > SEPARABILITY_TOL;
    Ok(SeparabilityWitness {
        verdict: if entropic || majorization_fails {
            SeparabilityVerdict::Entangled
        } else {
            SeparabilityVerdict::Inconclusive
        },
        violated_pair: if entropic { best_pair } else { None },
        margin,
        majorization_verdicts,
    })
}

fn check_omega(omega: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&omega) {
        return Err(Error::ParamDomain {
            name: "omega",
            value: omega,
            range: "0 <= omega <= 1",
        });
    }
    Ok(())
}

/// `ω|Ψ⁻⟩⟨Ψ⁻| + (1 − ω) I/4` with `|Ψ⁻⟩ = (|00⟩ − |11⟩)/√2`.
pub fn werner_state(omega: f64) -> Result<DensityOperator> {
    check_omega(omega)?;
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let psi = PureState::from_real(&[s, 0.0, 0.0, -s])?;
    let m = &psi.projector().scale(omega) + &ComplexMatrix::identity(4).scale((1.0 - omega) / 4.0);
    DensityOperator::new(m)
}

/// Entanglement indicator of the Werner family for an `(f, α)` entropy;
/// positive values certify entanglement. `α = 1` uses the Shannon branch.
pub fn werner_z(fam: &FAlphaFamily, omega: f64) -> Result<f64> {
    check_omega(omega)?;
    let a = fam.alpha();
    if fam.is_shannon_limit() {
        let t = -xlnx_neg(1.0 - omega) * 3.0 - xlnx_neg(1.0 + 3.0 * omega);
        return Ok(t / 4.0 - ln(2.0));
    }
    let trace = 3.0 * pow_pos((1.0 - omega) / 4.0, a) + pow_pos((1.0 + 3.0 * omega) / 4.0, a);
    let f = fam.outer();
    Ok((f.eval(trace) - f.eval(powf(2.0, 1.0 - a))) / (a - 1.0))
}

/// Root of `ω ↦ Z(ω)` on `[0, 1]`: first sign change on a 1024-point scan,
/// then bisection to [`BISECTION_TOL`]. `None` when no sign change is found.
pub fn werner_boundary(fam: &FAlphaFamily) -> Option<f64> {
    let z = |w: f64| werner_z(fam, w).unwrap_or(f64::NAN);
    let n = BOUNDARY_SCAN;
    let mut lo = 0.0;
    let mut zlo = z(lo);
    let mut bracket = None;
    for k in 1..n {
        let w = k as f64 / (n - 1) as f64;
        let zw = z(w);
        if zw == 0.0 {
            return Some(w);
        }
        if zlo.signum() != zw.signum() && zlo.is_finite() && zw.is_finite() {
            bracket = Some((lo, w));
            break;
        }
        lo = w;
        zlo = zw;
    }
    let (mut a, mut b) = bracket?;
    let sa = z(a).signum();
    while b - a > BISECTION_TOL {
        let m = 0.5 * (a + b);
        let zm = z(m);
        if zm == 0.0 {
            return Some(m);
        }
        if zm.signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// `Z` on an `α × ω` grid plus the boundary for each `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct WernerScan {
    pub alphas: Vec<f64>,
    pub omegas: Vec<f64>,
    /// `z[i][j] = Z(alphas[i], omegas[j])`.
    pub z: Vec<Vec<f64>>,
    pub boundary: Vec<Option<f64>>,
}

/// `ω_j = j/(steps − 1)`.
pub fn werner_scan(f: &OuterFunction, alphas: &[f64], omega_steps: usize) -> Result<WernerScan> {
    let steps = omega_steps.max(2);
    let omegas: Vec<f64> = (0..steps).map(|j| j as f64 / (steps - 1) as f64).collect();
    let mut z = Vec::with_capacity(alphas.len());
    let mut boundary = Vec::with_capacity(alphas.len());
    for &a in alphas {
        let fam = FAlphaFamily::new(f.clone(), a)?;
        z.push(
            omegas
                .iter()
                .map(|&w| werner_z(&fam, w))
                .collect::<Result<Vec<_>>>()?,
        );
        boundary.push(werner_boundary(&fam));
    }
    Ok(WernerScan {
        alphas: alphas.to_vec(),
        omegas,
        z,
        boundary,
    })
}

/// Lower and upper ends of the admissible `c` interval for given `(a, α, b, β)`.
pub fn qutrit_c_interval(a: f64, alpha: f64, b: f64, beta: f64) -> (f64, f64) {
    let xs = [a * b, alpha * beta, 1.0 - a * beta, 1.0 - alpha * b];
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = xs.iter().copied().fold(f64::INFINITY, f64::min);
    (max - 1.0, min)
}

/// `ρ_AB = ρ_A ⊗ ρ_B − c(P₀₀ + P₁₁ − P₁₀ − P₀₁)` with
/// `ρ_A = diag(a, α, 1 − a − α)`, `ρ_B = diag(b, β, 1 − b − β)`.
pub fn qutrit_counterexample(
    a: f64,
    alpha: f64,
    b: f64,
    beta: f64,
    c: f64,
) -> Result<(DensityOperator, DensityOperator, DensityOperator)> {
    let dom = |name, v: f64, ok: bool, range| {
        if ok && v.is_finite() {
            Ok(())
        } else {
            Err(Error::ParamDomain {
                name,
                value: v,
                range,
            })
        }
    };
    dom("a", a, a > 0.0 && a < 1.0, "0 < a < 1")?;
    dom("b", b, b > 0.0 && b < 1.0, "0 < b < 1")?;
    dom(
        "alpha",
        alpha,
        alpha > 0.0 && alpha <= 1.0 - a,
        "0 < alpha <= 1 - a",
    )?;
    dom(
        "beta",
        beta,
        beta > 0.0 && beta <= 1.0 - b,
        "0 < beta <= 1 - b",
    )?;
    let (lo, hi) = qutrit_c_interval(a, alpha, b, beta);
    dom("c", c, c >= lo && c <= hi, "c in the positivity interval")?;
    let pa = [a, alpha, 1.0 - a - alpha];
    let pb = [b, beta, 1.0 - b - beta];
    let mut diag = vec![0.0; 9];
    for i in 0..3 {
        for j in 0..3 {
            diag[3 * i + j] = pa[i] * pb[j];
        }
    }
    diag[0] -= c;
    diag[4] -= c;
    diag[3] += c;
    diag[1] += c;
    Ok((
        DensityOperator::diagonal(&diag)?,
        DensityOperator::diagonal(&pa)?,
        DensityOperator::diagonal(&pb)?,
    ))
}

/// `½(|00⟩⟨00| + |11⟩⟨11|)` and its two marginals `I/2`.
pub fn nonsuperadditivity_fixture() -> (DensityOperator, DensityOperator, DensityOperator) {
    let ab = DensityOperator::diagonal(&[0.5, 0.0, 0.0, 0.5]).expect("diagonal state");
    let a = DensityOperator::maximally_mixed(2).expect("dimension 2");
    (ab, a.clone(), a)
}

/// `H(ρ_A ⊗ ρ_B) − H(ρ_A) − H(ρ_B)`.
pub fn additivity_check(
    pair: &EntropicPair,
    rho_a: &DensityOperator,
    rho_b: &DensityOperator,
) -> f64 {
    quantum_entropy(pair, &rho_a.tensor(rho_b))
        - quantum_entropy(pair, rho_a)
        - quantum_entropy(pair, rho_b)
}

/// Result of a measured conditional entropy.
#[derive(Clone, Debug)]
pub struct ConditionalJ {
    pub value: f64,
    pub measurement: ProjectiveMeasurement,
    /// True when a measurement was supplied, or when at least three
    /// independent starts of the search agreed on the best value.
    pub minimized: bool,
}

/// `Σ_j p_j H(ρ_A^{|j})` for a given measurement on `B`.
pub fn measured_conditional_entropy(
    pair: &EntropicPair,
    rho_ab: &DensityOperator,
    dims: (usize, usize),
    pi: &ProjectiveMeasurement,
) -> Result<f64> {
    let mut total = 0.0;
    for j in 0..pi.len() {
        match post_measurement(pi, j, rho_ab, dims) {
            Ok((p, post)) => {
                let a = post.partial_trace(&[dims.0, dims.1], &[0])?;
                total += p * quantum_entropy(pair, &a);
            }
            Err(Error::ZeroProbabilityOutcome { probability, .. })
                if probability <= ZERO_OUTCOME_TOL => {}
            Err(e) => return Err(e),
        }
    }
    Ok(total)
}

const AGREEMENT_TOL: f64 = 1e-8;
const MIN_AGREEING_STARTS: usize = 3;

/// `U G` where `G` rotates columns `p`, `q` by angle `t` with phase `phase`.
fn givens(u: &ComplexMatrix, p: usize, q: usize, t: f64, phase: C64) -> ComplexMatrix {
    let mut out = u.clone();
    let (c, s) = (cos(t), sin(t));
    for i in 0..u.rows() {
        let (up, uq) = (u[(i, p)], u[(i, q)]);
        out[(i, p)] = up * c + uq * phase.conj() * s;
        out[(i, q)] = uq * c - up * phase * s;
    }
    out
}

fn descend(
    cost: &dyn Fn(&ComplexMatrix) -> Result<f64>,
    start: ComplexMatrix,
) -> Result<(f64, ComplexMatrix)> {
    let n = start.rows();
    let mut u = start;
    let mut best = cost(&u)?;
    let phases = [C64::new(1.0, 0.0), C64::new(0.0, 1.0)];
    let mut step = 0.5;
    let mut evaluations = 0usize;
    while step > 1e-9 && evaluations < 20_000 {
        let mut improved = false;
        for p in 0..n {
            for q in p + 1..n {
                for phase in phases {
                    for t in [step, -step] {
                        let cand = givens(&u, p, q, t, phase);
                        let v = cost(&cand)?;
                        evaluations += 1;
                        if v < best - 1e-15 {
                            best = v;
                            u = cand;
                            improved = true;
                        }
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok((best, u))
}

/// Measured conditional entropy, either for the supplied measurement on `B`
/// or minimized over rank-one projective measurements by random restarts
/// (computational basis plus `restarts` Haar bases) with Givens descent.
/// The searched value is an upper bound on the true minimum.
pub fn quantum_conditional_j(
    pair: &EntropicPair,
    rho_ab: &DensityOperator,
    dims: (usize, usize),
    pi: Option<&ProjectiveMeasurement>,
    restarts: usize,
    seed: u64,
) -> Result<ConditionalJ> {
    check_dims(rho_ab.dim(), &[dims.0, dims.1])?;
    if let Some(pi) = pi {
        return Ok(ConditionalJ {
            value: measured_conditional_entropy(pair, rho_ab, dims, pi)?,
            measurement: pi.clone(),
            minimized: true,
        });
    }
    let nb = dims.1;
    let cost = |u: &ComplexMatrix| {
        measured_conditional_entropy(
            pair,
            rho_ab,
            dims,
            &ProjectiveMeasurement::from_basis_unchecked(u),
        )
    };
    let mut src = RandomSource::new(seed);
    let mut finals = Vec::with_capacity(restarts + 1);
    let mut best: Option<(f64, ComplexMatrix)> = None;
    for k in 0..=restarts {
        let start = if k == 0 {
            ComplexMatrix::identity(nb)
        } else {
            src.haar_unitary(nb)
        };
        let (v, u) = descend(&cost, start)?;
        finals.push(v);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, u));
        }
    }
    let (value, u) = best.expect("at least one start");
    let agreeing = finals
        .iter()
        .filter(|&&v| v - value <= AGREEMENT_TOL)
        .count();
    Ok(ConditionalJ {
        value,
        measurement: ProjectiveMeasurement::from_basis_unchecked(&u),
        minimized: agreeing >= MIN_AGREEING_STARTS,
    })
}

fn marginals(
    rho_ab: &DensityOperator,
    dims: (usize, usize),
) -> Result<(DensityOperator, DensityOperator)> {
    check_dims(rho_ab.dim(), &[dims.0, dims.1])?;
    let d = [dims.0, dims.1];
    Ok((
        rho_ab.partial_trace(&d, &[0])?,
        rho_ab.partial_trace(&d, &[1])?,
    ))
}

/// `H(ρ_AB) − H(ρ_B)`.
pub fn quantum_conditional_i(
    pair: &EntropicPair,
    rho_ab: &DensityOperator,
    dims: (usize, usize),
) -> Result<f64> {
    let (_, b) = marginals(rho_ab, dims)?;
    Ok(quantum_entropy(pair, rho_ab) - quantum_entropy(pair, &b))
}

/// `H(ρ_A) + H(ρ_B) − H(ρ_AB)`.
pub fn quantum_mutual_i(
    pair: &EntropicPair,
    rho_ab: &DensityOperator,
    dims: (usize, usize),
) -> Result<f64> {
    let (a, b) = marginals(rho_ab, dims)?;
    Ok(quantum_entropy(pair, &a) + quantum_entropy(pair, &b) - quantum_entropy(pair, rho_ab))
}

/// `H(ρ_A) − H^J(A|B)`, using the supplied measurement or the minimizing search.
pub fn quantum_mutual_j(
    pair: &EntropicPair,
    rho_ab: &DensityOperator,
    dims: (usize, usize),
    pi: Option<&ProjectiveMeasurement>,
    restarts: usize,
    seed: u64,
) -> Result<(f64, ConditionalJ)> {
    let (a, _) = marginals(rho_ab, dims)?;
    let cond = quantum_conditional_j(pair, rho_ab, dims, pi, restarts, seed)?;
    Ok((quantum_entropy(pair, &a) - cond.value, cond))
}
