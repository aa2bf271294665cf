//! Randomized property suites `prop1` … `prop15`.
//!
//! Each suite draws its inputs from a [`RandomSource`] seeded from the
//! configured seed and the suite name, so suites are reproducible in
//! isolation and in `all`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::channels::{measure_povm, rank_one_povm_from_isometry};
use crate::classical::{classical_entropy, majorizes, MajorizationVerdict};
use crate::composite::{
    additivity_check, entropic_separability_test, marginal_entropy_equality,
    nonsuperadditivity_fixture, quantum_conditional_i, qutrit_c_interval, qutrit_counterexample,
    SeparabilityVerdict,
};
use crate::error::{Error, Result};
use crate::functionals::{
    check_additivity_conditions, check_f_multiplicativity, make_family, named_family_grid,
    AdditivityForm, EntropicPair, FAlphaFamily, Family, OuterFunction, DEFAULT_GRID,
};
use crate::linalg::ComplexMatrix;
use crate::quantum::{
    diagonal_entropy, entropy_bounds_q, isometry_conjugate_entropy, mixture_entropy_gap,
    quantum_entropy, DensityOperator,
};
use crate::random::RandomSource;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    /// Slack allowed in inequalities and equalities unless a check pins its own.
    pub tol: f64,
    /// Largest local dimension drawn.
    pub max_dim: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            trials: 200,
            seed: 7,
            tol: 1e-9,
            max_dim: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub trials: usize,
    /// Smallest observed slack; negative beyond the tolerance means failure.
    pub worst: f64,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub description: &'static str,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteInfo {
    pub name: &'static str,
    pub description: &'static str,
}

pub const SUITES: &[SuiteInfo] = &[
    SuiteInfo { name: "prop1", description: "Schur-concavity: entropies do not decrease under bistochastic mixing of probability vectors and spectra" },
    SuiteInfo { name: "prop2", description: "lower/support/dimension bounds; zero exactly on pure states, maximal on I/N" },
    SuiteInfo { name: "prop3", description: "concavity in the state for pairs with concave h" },
    SuiteInfo { name: "prop4", description: "entropy of a mixture of pure states is at most the entropy of the weights" },
    SuiteInfo { name: "prop5", description: "entropy is at most the entropy of the diagonal in any orthonormal basis" },
    SuiteInfo { name: "prop6", description: "invariance under isometric embeddings and unitary conjugation" },
    SuiteInfo { name: "prop7", description: "bistochastic channels never decrease entropy; unitary channels preserve it" },
    SuiteInfo { name: "prop8", description: "rank-one POVM statistics have entropy at least H(rho); the eigenbasis attains it" },
    SuiteInfo { name: "prop9", description: "additivity on product states for von Neumann and Renyi; Tsallis residual on I/2 x I/2" },
    SuiteInfo { name: "prop10", description: "(f, alpha)-additivity follows the multiplicativity of f" },
    SuiteInfo { name: "prop11", description: "two-qutrit family violating Tsallis-2 subadditivity while von Neumann satisfies it" },
    SuiteInfo { name: "prop12", description: "classically correlated two-qubit state is nonsuperadditive for every pair" },
    SuiteInfo { name: "prop13", description: "both marginals of a pure bipartite state have equal entropy" },
    SuiteInfo { name: "prop14", description: "no false entanglement verdicts on bipartite separable mixtures" },
    SuiteInfo { name: "prop15", description: "no false entanglement verdicts on fully separable mixtures of up to four parties" },
];

pub fn suite_info(name: &str) -> Option<&'static SuiteInfo> {
    SUITES.iter().find(|s| s.name == name)
}

struct Check {
    name: String,
    trials: usize,
    worst: f64,
    tol: f64,
    counterexample: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, tol: f64) -> Self {
        Check {
            name: name.into(),
            trials: 0,
            worst: f64::INFINITY,
            tol,
            counterexample: None,
        }
    }

    /// Records `slack` (must be `≥ −tol`); `ctx` is rendered on the first failure.
    fn record(&mut self, slack: f64, ctx: impl FnOnce() -> String) {
        self.trials += 1;
        let bad = !(slack >= -self.tol);
        if bad && self.counterexample.is_none() {
            self.counterexample = Some(ctx());
        }
        if slack < self.worst || slack.is_nan() {
            self.worst = slack;
        }
    }

    /// Records `|lhs − rhs| ≤ tol` as slack `tol − |lhs − rhs|` shifted to the `≥ −tol` convention.
    fn record_eq(&mut self, lhs: f64, rhs: f64, ctx: impl FnOnce() -> String) {
        self.record(-(lhs - rhs).abs(), ctx);
    }

    fn record_bool(&mut self, ok: bool, ctx: impl FnOnce() -> String) {
        self.record(if ok { 0.0 } else { f64::NEG_INFINITY }, ctx);
    }

    fn record_result<T>(&mut self, r: Result<T>, ctx: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(f64::NEG_INFINITY, || format!("{}: {e}", ctx()));
                None
            }
        }
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            passed: self.counterexample.is_none(),
            name: self.name,
            trials: self.trials,
            worst: if self.trials == 0 { 0.0 } else { self.worst },
            counterexample: self.counterexample,
        }
    }
}

fn fmt_state(rho: &DensityOperator) -> String {
    format!("spectrum {:?}", rho.spectrum().components())
}

fn suite_seed(seed: u64, name: &str) -> u64 {
    // FNV-1a over the suite name, mixed with the user seed.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

/// Pairs whose `h` is concave on the whole trace range.
pub fn concave_family_grid() -> Vec<EntropicPair> {
    [
        Family::Shannon,
        Family::Tsallis { alpha: 0.5 },
        Family::Tsallis { alpha: 2.0 },
        Family::Tsallis { alpha: 3.0 },
        Family::Renyi { alpha: 0.3 },
        Family::Renyi { alpha: 0.7 },
        Family::Unified { r: 0.5, s: 0.5 },
        Family::Unified { r: 2.0, s: 3.0 },
        Family::Kaniadakis { kappa: 0.5 },
    ]
    .into_iter()
    .map(|f| make_family(f).expect("admissible"))
    .collect()
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let info = suite_info(name).ok_or_else(|| Error::UnknownSuite(name.into()))?;
    let mut src = RandomSource::new(suite_seed(cfg.seed, name));
    let checks = match name {
        "prop1" => prop1(cfg, &mut src),
        "prop2" => prop2(cfg, &mut src),
        "prop3" => prop3(cfg, &mut src),
        "prop4" => prop4(cfg, &mut src),
        "prop5" => prop5(cfg, &mut src),
        "prop6" => prop6(cfg, &mut src),
        "prop7" => prop7(cfg, &mut src),
        "prop8" => prop8(cfg, &mut src),
        "prop9" => prop9(cfg, &mut src),
        "prop10" => prop10(cfg, &mut src),
        "prop11" => prop11(cfg, &mut src),
        "prop12" => prop12(cfg),
        "prop13" => prop13(cfg, &mut src),
        "prop14" => prop14(cfg, &mut src),
        "prop15" => prop15(cfg, &mut src),
        _ => unreachable!("listed suite"),
    };
    Ok(SuiteReport {
        suite: info.name,
        description: info.description,
        checks: checks.into_iter().map(Check::finish).collect(),
    })
}

/// Runs `name`, or every suite when `name` is `all`.
pub fn run_suites(name: &str, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        SUITES.iter().map(|s| run_suite(s.name, cfg)).collect()
    } else {
        Ok(vec![run_suite(name, cfg)?])
    }
}

/// Density operator of uniformly drawn rank.
fn any_rank(src: &mut RandomSource, n: usize) -> DensityOperator {
    let r = src.integer(1, n);
    src.density(n, r)
}

fn dim(cfg: &SuiteConfig, src: &mut RandomSource, lo: usize) -> usize {
    src.integer(lo, cfg.max_dim.max(lo))
}

fn prop1(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let fams = named_family_grid();
    let mut classical = Check::new("classical: H(Bp) >= H(p)", cfg.tol);
    let mut quantum = Check::new(
        "quantum: H(E(rho)) >= H(rho) with spectrum(E(rho)) majorized",
        cfg.tol,
    );
    for _ in 0..cfg.trials {
        let n = dim(cfg, src, 2);
        let p = src.probability_vector(n);
        let b = src.bistochastic_matrix(n);
        let Some(bp) = classical.record_result(p.apply_stochastic(&b), || {
            format!("p = {:?}", p.components())
        }) else {
            continue;
        };
        for pair in &fams {
            classical.record(
                classical_entropy(pair, &bp) - classical_entropy(pair, &p),
                || {
                    format!(
                        "{pair}: p = {:?}, Bp = {:?}",
                        p.components(),
                        bp.components()
                    )
                },
            );
        }
        let rho = any_rank(src, n);
        let k = src.integer(2, 6);
        let ch = src.bistochastic_channel(n, k);
        let Some(out) = quantum.record_result(ch.apply(&rho), || fmt_state(&rho)) else {
            continue;
        };
        let rel = majorizes(out.spectrum(), rho.spectrum()).verdict;
        quantum.record_bool(
            matches!(
                rel,
                MajorizationVerdict::FirstMajorized | MajorizationVerdict::Equal
            ),
            || format!("majorization verdict {rel:?} for {}", fmt_state(&rho)),
        );
        for pair in &fams {
            quantum.record(
                quantum_entropy(pair, &out) - quantum_entropy(pair, &rho),
                || {
                    format!(
                        "{pair}: input {}, output {}",
                        fmt_state(&rho),
                        fmt_state(&out)
                    )
                },
            );
        }
    }
    vec![classical, quantum]
}

fn prop2(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let fams = named_family_grid();
    let mut bounds = Check::new("0 <= H <= h(rank phi(1/rank)) <= h(N phi(1/N))", cfg.tol);
    let mut pure = Check::new("pure states have zero entropy", cfg.tol);
    let mut uniform = Check::new("I/N attains both upper bounds", cfg.tol);
    let mut support = Check::new("uniform on the support attains the support bound", cfg.tol);
    for _ in 0..cfg.trials {
        let n = dim(cfg, src, 1);
        let r = src.integer(1, n);
        let rho = src.density(n, r);
        let psi = DensityOperator::from_pure(&src.pure_state(n));
        let mm = DensityOperator::maximally_mixed(n).expect("n >= 1");
        // Uniform weight on r orthonormal vectors of a Haar basis.
        let u = src.haar_unitary(n);
        let diag: Vec<f64> = (0..n)
            .map(|k| if k < r { 1.0 / r as f64 } else { 0.0 })
            .collect();
        let flat = DensityOperator::new(u.conjugate(&ComplexMatrix::from_real_diagonal(&diag)));
        for pair in &fams {
            let h = quantum_entropy(pair, &rho);
            match entropy_bounds_q(pair, &rho) {
                Ok(b) => bounds.record(
                    0.0f64
                        .min(h - b.lower)
                        .min(b.tight_upper - h)
                        .min(b.dim_upper - b.tight_upper),
                    || format!("{pair}: {}", fmt_state(&rho)),
                ),
                Err(e) => bounds.record(f64::NEG_INFINITY, || {
                    format!("{pair}: {e} for {}", fmt_state(&rho))
                }),
            }
            pure.record_eq(quantum_entropy(pair, &psi), 0.0, || {
                format!("{pair}: {}", fmt_state(&psi))
            });
            let b = entropy_bounds_q(pair, &mm).expect("bounds hold on I/N");
            let hm = quantum_entropy(pair, &mm);
            uniform.record(
                -(hm - b.dim_upper).abs().max((hm - b.tight_upper).abs()),
                || format!("{pair}: N = {n}"),
            );
            if let Some(flat) =
                support.record_result(flat.clone(), || format!("rank {r} in dimension {n}"))
            {
                let b = entropy_bounds_q(pair, &flat).expect("bounds");
                support.record_eq(quantum_entropy(pair, &flat), b.tight_upper, || {
                    format!("{pair}: rank {r}, N = {n}")
                });
            }
        }
    }
    vec![bounds, pure, uniform, support]
}

fn prop3(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let fams = concave_family_grid();
    let mut concavity = Check::new(
        "H(w rho + (1-w) sigma) >= w H(rho) + (1-w) H(sigma)",
        cfg.tol,
    );
    let mut flagged = Check::new("sampled concavity of h holds for the tested pairs", 0.0);
    for pair in &fams {
        flagged.record_bool(pair.h_is_concave(cfg.max_dim.max(2)), || format!("{pair}"));
    }
    for _ in 0..cfg.trials {
        let n = dim(cfg, src, 2);
        let w = src.uniform();
        let rho = any_rank(src, n);
        let sigma = any_rank(src, n);
        let Some(mix) = concavity.record_result(rho.mix(w, &sigma), || format!("w = {w}")) else {
            continue;
        };
        for pair in &fams {
            let lhs = quantum_entropy(pair, &mix);
            let rhs = w * quantum_entropy(pair, &rho) + (1.0 - w) * quantum_entropy(pair, &sigma);
            concavity.record(lhs - rhs, || {
                format!(
                    "{pair}: w = {w}, rho {}, sigma {}",
                    fmt_state(&rho),
                    fmt_state(&sigma)
                )
            });
        }
    }
    vec![concavity, flagged]
}

fn prop4(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let fams = named_family_grid();
    let mut check = Check::new("H(sum p_i |psi_i><psi_i|) <= H(p)", cfg.tol);
    for _ in 0..cfg.trials {
        let n = dim(cfg, src, 1);
        let k = src.integer(1, 2 * n);
        let p = src.probability_vector(k);
        let states: Vec<_> = (0..k).map(|_| src.pure_state(n)).collect();
        for pair in &fams {
            match mixture_entropy_gap(pair, &p, &states) {
                Ok((hr, hp)) => {
                    check.record(hp - hr, || format!("{pair}: weights {:?}", p.components()))
                }
                Err(e) => check.record(f64::NEG_INFINITY, || {
                    format!("{pair}: {e}; weights {:?}", p.components())
                }),
            }
        }
    }
    vec![check]
}

fn prop5(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let fams = named_family_grid();
    let mut check = Check::new("H(rho) <= H(diag_E(rho)) for Haar bases E", cfg.tol);
    let mut eig = Check::new("equality in the eigenbasis", cfg.tol);
    for _ in 0..cfg.trials {
        let n = dim(cfg, src, 1);
        let rho = any_rank(src, n);
        let u = src.haar_unitary(n);
        for pair in &fams {
            match diagonal_entropy(pair, &rho, &u) {
                Ok((hr, hd)) => check.record(hd - hr, || format!("{pair}: {}", fmt_state(&rho))),
                Err(e) => check.record(f64::NEG_INFINITY, || {
                    format!("{pair}: {e}; {}", fmt_state(&rho))
                }),
            }
            if let Some((hr, hd)) = eig
                .record_result(diagonal_entropy(pair, &rho, rho.eigenvectors()), || {
                    fmt_state(&rho)
                })
            {
                eig.record_eq(hr, hd, || format!("{pair}: {}", fmt_state(&rho)));
            }
        }
    }
    vec![check, eig]
}

fn prop6(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let fams = named_family_grid();
    let mut check = Check::new("H(U rho U^dagger) = H(rho) for isometries U", 1e-10);
    for _ in 0..cfg.trials {
        let n = dim(cfg, src, 1);
        let k = src.integer(n, n + 2);
        let rho = any_rank(src, n);
        let w = src.isometry(k, n);
        for pair in &fams {
            match isometry_conjugate_entropy(pair, &rho, &w) {
                Ok((a, b)) => {
                    check.record_eq(a, b, || format!("{pair}: {n} -> {k}, {}", fmt_state(&rho)))
                }
                Err(e) => check.record(f64::NEG_INFINITY, || format!("{pair}: {e}")),
            }
        }
    }
    vec![check]
}

fn prop7(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let fams = named_family_grid();
    let mut mono = Check::new(
        "H(E(rho)) >= H(rho) for mixtures of 2-6 Haar unitaries",
        cfg.tol,
    );
    let mut unitary = Check::new("H(U rho U^dagger) = H(rho)", 1e-10);
    let mut reset = Check::new("non-unital reset channel maps to zero entropy", cfg.tol);
    for _ in 0..cfg.trials {
        let n = dim(cfg, src, 1);
        let rho = any_rank(src, n);
        let k = src.integer(2, 6);
        let ch = src.bistochastic_channel(n, k);
        let u = src.bistochastic_channel(n, 1);
        let out = mono.record_result(ch.apply(&rho), || fmt_state(&rho));
        let out_u = unitary.record_result(u.apply(&rho), || fmt_state(&rho));
        for pair in &fams {
            let h = quantum_entropy(pair, &rho);
            if let Some(out) = &out {
                mono.record(quantum_entropy(pair, out) - h, || {
                    format!("{pair}: {}", fmt_state(&rho))
                });
            }
            if let Some(out) = &out_u {
                unitary.record_eq(quantum_entropy(pair, out), h, || {
                    format!("{pair}: {}", fmt_state(&rho))
                });
            }
        }
        let q = src.density(2, 2);
        if let Some(out) = reset.record_result(
            crate::channels::KrausChannel::amplitude_reset().apply(&q),
            || fmt_state(&q),
        ) {
            for pair in &fams {
                reset.record_eq(quantum_entropy(pair, &out), 0.0, || {
                    format!("{pair}: {}", fmt_state(&q))
                });
            }
        }
    }
    vec![mono, unitary, reset]
}

const POVMS_PER_STATE: usize = 5;

fn prop8(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let fams = named_family_grid();
    let mut lower = Check::new("H(p^E(rho)) >= H(rho) for random rank-one POVMs", cfg.tol);
    let mut attained = Check::new("eigenbasis POVM attains H(rho)", 1e-10);
    let mut coarse = Check::new("two-outcome coarse POVM on I_4/4 lowers the entropy", 0.0);
    for _ in 0..cfg.trials {
        let n = dim(cfg, src, 1);
        let rho = any_rank(src, n);
        let eig = rank_one_povm_from_isometry(&rho.eigenvectors().adjoint());
        if let Some(eig) = attained.record_result(eig, || fmt_state(&rho)) {
            if let Some(p) = attained.record_result(measure_povm(&eig, &rho), || fmt_state(&rho)) {
                for pair in &fams {
                    attained.record_eq(
                        classical_entropy(pair, &p),
                        quantum_entropy(pair, &rho),
                        || format!("{pair}: {}", fmt_state(&rho)),
                    );
                }
            }
        }
        for _ in 0..POVMS_PER_STATE {
            let povm = src.rank_one_povm(n);
            if let Some(p) = lower.record_result(measure_povm(&povm, &rho), || fmt_state(&rho)) {
                for pair in &fams {
                    lower.record(
                        classical_entropy(pair, &p) - quantum_entropy(pair, &rho),
                        || format!("{pair}: {} outcomes {:?}", fmt_state(&rho), p.components()),
                    );
                }
            }
        }
    }
    let mm = DensityOperator::maximally_mixed(4).expect("dimension 4");
    let p =
        measure_povm(&crate::channels::Povm::half_split(4).expect("valid"), &mm).expect("valid");
    for pair in &fams {
        let gap = quantum_entropy(pair, &mm) - classical_entropy(pair, &p);
        coarse.record(
            if gap > 0.0 {
                0.0
            } else {
                gap.min(-f64::MIN_POSITIVE)
            },
            || format!("{pair}: gap {gap}"),
        );
    }
    vec![lower, attained, coarse]
}

fn additive_pairs() -> Vec<EntropicPair> {
    [
        Family::Shannon,
        Family::Renyi { alpha: 0.5 },
        Family::Renyi { alpha: 2.0 },
        Family::Renyi { alpha: 3.0 },
    ]
    .into_iter()
    .map(|f| make_family(f).expect("admissible"))
    .collect()
}

fn prop9(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let mut add = Check::new(
        "|H(rho x sigma) - H(rho) - H(sigma)| for von Neumann and Renyi",
        cfg.tol,
    );
    let mut forms = Check::new(
        "Cauchy forms: shannon form I, renyi form II, tsallis neither",
        0.0,
    );
    let mut tsallis = Check::new("tsallis-2 residual on I/2 x I/2 is -1/4", 1e-12);
    for _ in 0..cfg.trials {
        let (na, nb) = (dim(cfg, src, 1), dim(cfg, src, 1));
        let a = any_rank(src, na);
        let b = any_rank(src, nb);
        for pair in additive_pairs() {
            add.record_eq(additivity_check(&pair, &a, &b), 0.0, || {
                format!("{pair}: {} and {}", fmt_state(&a), fmt_state(&b))
            });
        }
    }
    for pair in additive_pairs() {
        let form = check_additivity_conditions(&pair, (2, 3), DEFAULT_GRID);
        let want = if pair.name() == "shannon" {
            AdditivityForm::FormI
        } else {
            AdditivityForm::FormII
        };
        forms.record_bool(form == want, || format!("{pair}: {form:?}"));
    }
    let t2 = EntropicPair::tsallis(2.0).expect("admissible");
    let form = check_additivity_conditions(&t2, (2, 2), DEFAULT_GRID);
    forms.record_bool(form == AdditivityForm::Neither, || {
        format!("{t2}: {form:?}")
    });
    let mm = DensityOperator::maximally_mixed(2).expect("dimension 2");
    tsallis.record_eq(additivity_check(&t2, &mm, &mm), -0.25, || {
        "I/2 x I/2".into()
    });
    vec![add, forms, tsallis]
}

fn prop10(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let mut agree = Check::new(
        "(f, alpha)-additivity agrees with multiplicativity of f",
        0.0,
    );
    let alphas = [0.5, 2.0, 3.0];
    for &alpha in &alphas {
        for f in [OuterFunction::Log, OuterFunction::Linear] {
            let fam = FAlphaFamily::new(f.clone(), alpha).expect("admissible");
            let pair = make_family(Family::FAlpha(fam.clone())).expect("admissible");
            let mut worst: f64 = 0.0;
            for _ in 0..cfg.trials.max(1) {
                let (na, nb) = (dim(cfg, src, 2), dim(cfg, src, 2));
                let a = src.density(na, na);
                let b = src.density(nb, nb);
                worst = worst.max(additivity_check(&pair, &a, &b).abs());
            }
            let mult = check_f_multiplicativity(&fam, (cfg.max_dim, cfg.max_dim), DEFAULT_GRID);
            let additive = worst <= cfg.tol;
            agree.record_bool(mult == additive, || {
                format!("{pair}: multiplicative {mult}, worst residual {worst:e}")
            });
        }
    }
    vec![agree]
}

fn prop11(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let t2 = EntropicPair::tsallis(2.0).expect("admissible");
    let sh = EntropicPair::shannon();
    let mut fixed = Check::new(
        "tsallis-2 gap at (0.5, 0.1, 0.5, 0.1, 0.01) is 0.0028",
        1e-10,
    );
    let mut sweep = Check::new("tsallis-2 gap > 0 for c in (0, 0.01]", 0.0);
    let mut vn = Check::new(
        "von Neumann H(rho_AB) <= H(rho_A x rho_B) on sampled family members",
        cfg.tol,
    );
    let gap = |pair: &EntropicPair, x: (DensityOperator, DensityOperator, DensityOperator)| {
        quantum_entropy(pair, &x.0) - quantum_entropy(pair, &x.1.tensor(&x.2))
    };
    if let Some(x) = fixed.record_result(qutrit_counterexample(0.5, 0.1, 0.5, 0.1, 0.01), || {
        "fixed point".into()
    }) {
        fixed.record_eq(gap(&t2, x), 0.0028, || "fixed point".into());
    }
    for k in 1..=cfg.trials.max(1) {
        let c = 0.01 * k as f64 / cfg.trials.max(1) as f64;
        if let Some(x) = sweep.record_result(qutrit_counterexample(0.5, 0.1, 0.5, 0.1, c), || {
            format!("c = {c}")
        }) {
            let g = gap(&t2, x);
            sweep.record(
                if g > 0.0 {
                    0.0
                } else {
                    g.min(-f64::MIN_POSITIVE)
                },
                || format!("c = {c}: gap {g}"),
            );
        }
    }
    for _ in 0..cfg.trials.max(1) {
        let a = src.uniform_range(0.01, 0.99);
        let b = src.uniform_range(0.01, 0.99);
        let alpha = src.uniform_range(0.0, 1.0 - a).max(1e-6);
        let beta = src.uniform_range(0.0, 1.0 - b).max(1e-6);
        let (lo, hi) = qutrit_c_interval(a, alpha, b, beta);
        let c = src.uniform_range(lo, hi);
        if let Some(x) = vn.record_result(qutrit_counterexample(a, alpha, b, beta, c), || {
            format!("({a}, {alpha}, {b}, {beta}, {c})")
        }) {
            vn.record(-gap(&sh, x), || format!("({a}, {alpha}, {b}, {beta}, {c})"));
        }
    }
    vec![fixed, sweep, vn]
}

fn prop12(cfg: &SuiteConfig) -> Vec<Check> {
    let (ab, a, b) = nonsuperadditivity_fixture();
    let mut strict = Check::new(
        "H(rho_AB) < H(rho_A) + H(rho_B) and < H(rho_A x rho_B)",
        0.0,
    );
    let mut values = Check::new("von Neumann values are (ln 2, ln 2, ln 2)", 1e-12);
    let prod = a.tensor(&b);
    for pair in named_family_grid() {
        let h = quantum_entropy(&pair, &ab);
        let m = (quantum_entropy(&pair, &a) + quantum_entropy(&pair, &b) - h)
            .min(quantum_entropy(&pair, &prod) - h);
        strict.record(if m > cfg.tol { 0.0 } else { -1.0 }, || {
            format!("{pair}: margin {m}")
        });
    }
    let sh = EntropicPair::shannon();
    let ln2 = core::f64::consts::LN_2;
    for rho in [&ab, &a, &b] {
        values.record_eq(quantum_entropy(&sh, rho), ln2, || fmt_state(rho));
    }
    vec![strict, values]
}

fn prop13(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let fams = named_family_grid();
    let mut check = Check::new("H(rho_A) = H(rho_B) for pure bipartite states", 1e-10);
    for _ in 0..cfg.trials {
        let dims = (dim(cfg, src, 1), dim(cfg, src, 1));
        let psi = src.pure_state(dims.0 * dims.1);
        for pair in &fams {
            match marginal_entropy_equality(pair, &psi, dims) {
                Ok((a, b)) => check.record_eq(a, b, || format!("{pair}: dims {dims:?}")),
                Err(e) => check.record(f64::NEG_INFINITY, || format!("{pair}: {e}")),
            }
        }
    }
    vec![check]
}

fn separability_checks(
    cfg: &SuiteConfig,
    src: &mut RandomSource,
    label: &str,
    draw_dims: impl Fn(&mut RandomSource) -> Vec<usize>,
) -> Vec<Check> {
    let fams = named_family_grid();
    let mut verdict = Check::new(format!("{label}: no entangled verdicts"), 0.0);
    let mut cond = Check::new(format!("{label}: H(rho_AB) - H(rho_B) >= 0"), cfg.tol);
    for _ in 0..cfg.trials {
        let dims = draw_dims(src);
        let terms = src.integer(1, 8);
        let rho = src.separable(&dims, terms);
        match entropic_separability_test(&fams, &rho, &dims) {
            Ok(w) => verdict.record_bool(w.verdict == SeparabilityVerdict::Inconclusive, || {
                format!(
                    "dims {dims:?}, {terms} terms: margin {:e}, majorization {:?}",
                    w.margin, w.majorization_verdicts
                )
            }),
            Err(e) => verdict.record(f64::NEG_INFINITY, || format!("dims {dims:?}: {e}")),
        }
        if dims.len() == 2 {
            for pair in &fams {
                if let Some(v) = cond.record_result(
                    quantum_conditional_i(pair, &rho, (dims[0], dims[1])),
                    || format!("dims {dims:?}"),
                ) {
                    cond.record(v, || format!("{pair}: dims {dims:?}, {}", fmt_state(&rho)));
                }
            }
        }
    }
    if cond.trials == 0 {
        vec![verdict]
    } else {
        vec![verdict, cond]
    }
}

fn prop14(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let max = cfg.max_dim.max(2);
    separability_checks(cfg, src, "bipartite", |s| {
        vec![s.integer(2, max), s.integer(2, max)]
    })
}

/// At most four parties, local dimensions at most three.
fn prop15(cfg: &SuiteConfig, src: &mut RandomSource) -> Vec<Check> {
    let local = cfg.max_dim.clamp(2, 3);
    separability_checks(cfg, src, "multipartite", |s| {
        let parties = s.integer(2, 4);
        (0..parties).map(|_| s.integer(2, local)).collect()
    })
}
