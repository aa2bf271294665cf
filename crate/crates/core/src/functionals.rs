//! Entropic functional pairs `(h, φ)`.
//!
//! An entropy built from a pair is `h(Σ φ(p_i))`. Valid pairs have either an
//! increasing `h` with strictly concave `φ`, or a decreasing `h` with strictly
//! convex `φ`, together with `φ(0) = 0` and `h(φ(1)) = 0`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::math::{ln, pow_pos, powf, xlnx_neg};

/// Grid size used by the sampled functional-equation checks.
pub const DEFAULT_GRID: usize = 64;

const CAUCHY_TOL: f64 = 1e-9;
const ANCHOR_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curvature {
    Concave,
    Convex,
}

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// The outer function `f` of an `(f, α)`-entropy `f(Σ p_i^α) / (1 − α)`.
#[derive(Clone)]
pub enum OuterFunction {
    /// `f(x) = ln x` (Rényi).
    Log,
    /// `f(x) = x − 1` (Tsallis).
    Linear,
    Custom {
        label: String,
        f: ScalarFn,
    },
}

impl OuterFunction {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            OuterFunction::Log => ln(x),
            OuterFunction::Linear => x - 1.0,
            OuterFunction::Custom { f, .. } => f(x),
        }
    }

    pub fn label(&self) -> &str {
        match self {
            OuterFunction::Log => "ln",
            OuterFunction::Linear => "linear",
            OuterFunction::Custom { label, .. } => label,
        }
    }
}

impl fmt::Debug for OuterFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// An `(f, α)` family. `α = 1` is accepted here as the marker of the
/// Shannon/von Neumann limit (used by the Werner criterion), but such a
/// family cannot be turned into an [`EntropicPair`].
#[derive(Clone, Debug)]
pub struct FAlphaFamily {
    f: OuterFunction,
    alpha: f64,
}

impl FAlphaFamily {
    pub fn new(f: OuterFunction, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::ParamDomain {
                name: "alpha",
                value: alpha,
                range: "alpha > 0",
            });
        }
        if (f.eval(1.0)).abs() > 1e-12 {
            return Err(Error::ParamDomain {
                name: "f(1)",
                value: f.eval(1.0),
                range: "f(1) = 0",
            });
        }
        // Sampled monotonicity of f on (0, 4].
        let grid: Vec<f64> = (1..=64).map(|k| k as f64 / 16.0).collect();
        if grid.windows(2).any(|w| !(f.eval(w[1]) > f.eval(w[0]))) {
            return Err(Error::ParamDomain {
                name: "f",
                value: f64::NAN,
                range: "f strictly increasing",
            });
        }
        Ok(FAlphaFamily { f, alpha })
    }

    pub fn log(alpha: f64) -> Result<Self> {
        Self::new(OuterFunction::Log, alpha)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn outer(&self) -> &OuterFunction {
        &self.f
    }

    pub fn is_shannon_limit(&self) -> bool {
        self.alpha == 1.0
    }
}

/// Constructor input for [`make_family`].
#[derive(Clone, Debug)]
pub enum Family {
    Shannon,
    Renyi { alpha: f64 },
    Tsallis { alpha: f64 },
    Unified { r: f64, s: f64 },
    Kaniadakis { kappa: f64 },
    FAlpha(FAlphaFamily),
    Custom(CustomPair),
}

/// A user-supplied pair with declared monotonicity/curvature.
#[derive(Clone)]
pub struct CustomPair {
    pub name: String,
    pub h: ScalarFn,
    pub phi: ScalarFn,
    pub h_direction: Monotonicity,
    pub phi_shape: Curvature,
}

impl fmt::Debug for CustomPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomPair")
            .field("name", &self.name)
            .field("h_direction", &self.h_direction)
            .field("phi_shape", &self.phi_shape)
            .finish()
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Shannon,
    Renyi(f64),
    Tsallis(f64),
    Unified(f64, f64),
    Kaniadakis(f64),
    FAlpha(FAlphaFamily),
    Custom(CustomPair),
}

/// A validated entropic functional pair.
#[derive(Clone, Debug)]
pub struct EntropicPair {
    kind: Kind,
    h_direction: Monotonicity,
    phi_shape: Curvature,
}

fn param(name: &'static str, value: f64, ok: bool, range: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::ParamDomain { name, value, range })
    }
}

fn shape_for_exponent(a: f64) -> (Monotonicity, Curvature) {
    if a < 1.0 {
        (Monotonicity::Increasing, Curvature::Concave)
    } else {
        (Monotonicity::Decreasing, Curvature::Convex)
    }
}

/// Builds a named entropic pair, checking parameter domains.
pub fn make_family(family: Family) -> Result<EntropicPair> {
    let (kind, (h_direction, phi_shape)) = match family {
        Family::Shannon => (
            Kind::Shannon,
            (Monotonicity::Increasing, Curvature::Concave),
        ),
        Family::Renyi { alpha } => {
            param(
                "alpha",
                alpha,
                alpha > 0.0 && alpha != 1.0,
                "alpha > 0, alpha != 1",
            )?;
            (Kind::Renyi(alpha), shape_for_exponent(alpha))
        }
        Family::Tsallis { alpha } => {
            param(
                "alpha",
                alpha,
                alpha > 0.0 && alpha != 1.0,
                "alpha > 0, alpha != 1",
            )?;
            (Kind::Tsallis(alpha), shape_for_exponent(alpha))
        }
        Family::Unified { r, s } => {
            param("r", r, r > 0.0 && r != 1.0, "r > 0, r != 1")?;
            param("s", s, s != 0.0, "s != 0")?;
            (Kind::Unified(r, s), shape_for_exponent(r))
        }
        Family::Kaniadakis { kappa } => {
            param("kappa", kappa, kappa > 0.0 && kappa < 1.0, "0 < kappa < 1")?;
            (
                Kind::Kaniadakis(kappa),
                (Monotonicity::Increasing, Curvature::Concave),
            )
        }
        Family::FAlpha(fam) => {
            param(
                "alpha",
                fam.alpha,
                fam.alpha > 0.0 && fam.alpha != 1.0,
                "alpha > 0, alpha != 1",
            )?;
            let shape = shape_for_exponent(fam.alpha);
            (Kind::FAlpha(fam), shape)
        }
        Family::Custom(c) => {
            let shape = (c.h_direction, c.phi_shape);
            (Kind::Custom(c), shape)
        }
    };
    Ok(EntropicPair {
        kind,
        h_direction,
        phi_shape,
    })
}

impl EntropicPair {
    pub fn shannon() -> Self {
        make_family(Family::Shannon).expect("shannon pair")
    }

    pub fn renyi(alpha: f64) -> Result<Self> {
        make_family(Family::Renyi { alpha })
    }

    pub fn tsallis(alpha: f64) -> Result<Self> {
        make_family(Family::Tsallis { alpha })
    }

    pub fn unified(r: f64, s: f64) -> Result<Self> {
        make_family(Family::Unified { r, s })
    }

    pub fn kaniadakis(kappa: f64) -> Result<Self> {
        make_family(Family::Kaniadakis { kappa })
    }

    /// The outer functional `h`.
    pub fn h(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Shannon | Kind::Kaniadakis(_) => x,
            Kind::Renyi(a) => ln(x) / (1.0 - a),
            Kind::Tsallis(a) => (x - 1.0) / (1.0 - a),
            Kind::Unified(r, s) => (powf(x, *s) - 1.0) / ((1.0 - r) * s),
            Kind::FAlpha(fam) => fam.f.eval(x) / (1.0 - fam.alpha),
            Kind::Custom(c) => (c.h)(x),
        }
    }

    /// The inner functional `φ` on `[0, 1]`, with `φ(0) = 0`.
    pub fn phi(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Shannon => xlnx_neg(x),
            Kind::Renyi(a) | Kind::Tsallis(a) | Kind::Unified(a, _) => pow_pos(x, *a),
            Kind::FAlpha(fam) => pow_pos(x, fam.alpha),
            Kind::Kaniadakis(k) => (pow_pos(x, 1.0 - k) - pow_pos(x, 1.0 + k)) / (2.0 * k),
            Kind::Custom(c) => (c.phi)(x),
        }
    }

    /// `h(Σ φ(p_i))`.
    pub fn entropy(&self, p: &[f64]) -> f64 {
        self.h(p.iter().map(|&x| self.phi(x)).sum())
    }

    /// `h(n φ(1/n))`, the value on the uniform vector of length `n`.
    pub fn uniform_value(&self, n: usize) -> f64 {
        if n == 0 {
            return 0.0;
        }
        let n = n as f64;
        self.h(n * self.phi(1.0 / n))
    }

    pub fn h_direction(&self) -> Monotonicity {
        self.h_direction
    }

    pub fn phi_shape(&self) -> Curvature {
        self.phi_shape
    }

    pub fn name(&self) -> &str {
        match &self.kind {
            Kind::Shannon => "shannon",
            Kind::Renyi(_) => "renyi",
            Kind::Tsallis(_) => "tsallis",
            Kind::Unified(..) => "unified",
            Kind::Kaniadakis(_) => "kaniadakis",
            Kind::FAlpha(_) => "f_alpha",
            Kind::Custom(c) => &c.name,
        }
    }

    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match &self.kind {
            Kind::Shannon | Kind::Custom(_) => vec![],
            Kind::Renyi(a) | Kind::Tsallis(a) => vec![("alpha", *a)],
            Kind::Unified(r, s) => vec![("r", *r), ("s", *s)],
            Kind::Kaniadakis(k) => vec![("kappa", *k)],
            Kind::FAlpha(fam) => vec![("alpha", fam.alpha)],
        }
    }

    /// `[min(φ(1), nφ(1/n)), max(φ(1), nφ(1/n))]`: the range of `Tr φ(ρ)` in dimension `n`.
    pub fn trace_range(&self, n: usize) -> (f64, f64) {
        let a = self.phi(1.0);
        let nf = n.max(1) as f64;
        let b = nf * self.phi(1.0 / nf);
        (a.min(b), a.max(b))
    }

    /// Sampled concavity of `h` over the trace range of dimension `n`
    /// (non-positive second differences on a uniform grid).
    pub fn h_is_concave(&self, n: usize) -> bool {
        let (lo, hi) = self.trace_range(n.max(2));
        if hi <= lo {
            return true;
        }
        let g = DEFAULT_GRID;
        let step = (hi - lo) / g as f64;
        (1..g).all(|k| {
            let x = lo + step * k as f64;
            let d2 = self.h(x + step) - 2.0 * self.h(x) + self.h(x - step);
            d2 <= 1e-12 * (1.0 + self.h(x).abs())
        })
    }
}

impl fmt::Display for EntropicPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        let params = self.params();
        if let Kind::FAlpha(fam) = &self.kind {
            write!(f, "(f={}", fam.f.label())?;
            for (k, v) in &params {
                write!(f, ",{k}={v}")?;
            }
            return f.write_str(")");
        }
        if !params.is_empty() {
            f.write_str("(")?;
            for (i, (k, v)) in params.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{k}={v}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Outcome of one named check in a [`ValidationReport`].
#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    /// Grid points where the check failed.
    pub witnesses: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub points: usize,
    pub phi_domain: (f64, f64),
    pub h_domain: (f64, f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
    pub grid: GridSpec,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, witnesses: Vec<f64>) -> CheckResult {
    CheckResult {
        name,
        pass: witnesses.is_empty(),
        witnesses,
    }
}

/// Samples the defining conditions of a pair on uniform grids.
///
/// `h` is sampled on the trace range for dimension `grid_size`; `φ`'s
/// curvature is read off second differences on `(0, 1)`.
pub fn validate_pair(pair: &EntropicPair, grid_size: usize) -> ValidationReport {
    let g = grid_size.max(8);
    let step = 1.0 / g as f64;
    let (lo, hi) = pair.trace_range(g);

    let mut phi_zero = vec![];
    if !(pair.phi(0.0).abs() <= ANCHOR_TOL) {
        phi_zero.push(0.0);
    }
    let mut h_anchor = vec![];
    if !(pair.h(pair.phi(1.0)).abs() <= ANCHOR_TOL) {
        h_anchor.push(1.0);
    }

    // Sampled direction of h.
    let h_grid: Vec<f64> = (0..=g)
        .map(|k| lo + (hi - lo) * k as f64 / g as f64)
        .collect();
    let h_vals: Vec<f64> = h_grid.iter().map(|&x| pair.h(x)).collect();
    let sampled_increasing = h_vals.last() > h_vals.first();
    let mut h_monotone = vec![];
    if hi > lo {
        for (k, w) in h_vals.windows(2).enumerate() {
            let ok = match pair.h_direction {
                Monotonicity::Increasing => w[1] > w[0],
                Monotonicity::Decreasing => w[1] < w[0],
            };
            if !ok {
                h_monotone.push(h_grid[k + 1]);
            }
        }
    }

    // Second differences of φ on the interior grid.
    let mut phi_curv = vec![];
    let mut concave_votes = 0usize;
    let mut convex_votes = 0usize;
    let d2: Vec<(f64, f64)> = (1..g)
        .map(|k| {
            let x = k as f64 * step;
            (
                x,
                pair.phi(x + step) - 2.0 * pair.phi(x) + pair.phi(x - step),
            )
        })
        .collect();
    for &(x, d) in &d2 {
        if d < 0.0 {
            concave_votes += 1;
        } else if d > 0.0 {
            convex_votes += 1;
        }
        let ok = match pair.phi_shape {
            Curvature::Concave => d < 0.0,
            Curvature::Convex => d > 0.0,
        };
        if !ok {
            phi_curv.push(x);
        }
    }

    // Pairing: sampled direction of h must match sampled curvature of φ.
    let sampled_concave = concave_votes >= convex_votes;
    let mut pairing = vec![];
    if sampled_increasing != sampled_concave {
        let wrong = |d: f64| {
            if sampled_increasing {
                d >= 0.0
            } else {
                d <= 0.0
            }
        };
        pairing.extend(d2.iter().filter(|(_, d)| wrong(*d)).map(|(x, _)| *x));
        if pairing.is_empty() {
            pairing.push(0.5);
        }
    }
    let declared_ok = matches!(
        (pair.h_direction, pair.phi_shape),
        (Monotonicity::Increasing, Curvature::Concave)
            | (Monotonicity::Decreasing, Curvature::Convex)
    );
    if !declared_ok && pairing.is_empty() {
        pairing.push(0.5);
    }

    ValidationReport {
        checks: vec![
            check("phi_zero", phi_zero),
            check("h_phi_one", h_anchor),
            check("h_monotone", h_monotone),
            check("phi_curvature", phi_curv),
            check("direction_pairing", pairing),
        ],
        grid: GridSpec {
            points: g,
            phi_domain: (0.0, 1.0),
            h_domain: (lo, hi),
        },
    }
}

/// Which pair of Cauchy functional equations a pair satisfies on a grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdditivityForm {
    /// `φ(ab) = φ(a)b + aφ(b)` and `h(x + y) = h(x) + h(y)`.
    FormI,
    /// `φ(ab) = φ(a)φ(b)` and `h(xy) = h(x) + h(y)`.
    FormII,
    Neither,
}

fn interval_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 || hi <= lo {
        return vec![lo];
    }
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

/// Samples the two Cauchy-equation forms that make a pair additive on
/// product states of dimensions `dims`.
pub fn check_additivity_conditions(
    pair: &EntropicPair,
    dims: (usize, usize),
    grid_size: usize,
) -> AdditivityForm {
    let g = grid_size.max(2);
    let unit: Vec<f64> = (1..=g).map(|k| k as f64 / g as f64).collect();
    let (al, ah) = pair.trace_range(dims.0);
    let (bl, bh) = pair.trace_range(dims.1);
    let xs = interval_grid(al, ah, g);
    let ys = interval_grid(bl, bh, g);

    let all_pairs = |f: &dyn Fn(f64, f64) -> f64, a: &[f64], b: &[f64]| {
        a.iter()
            .all(|&x| b.iter().all(|&y| f(x, y).abs() <= CAUCHY_TOL))
    };

    let phi_i = |a: f64, b: f64| pair.phi(a * b) - pair.phi(a) * b - a * pair.phi(b);
    let h_i = |x: f64, y: f64| pair.h(x + y) - pair.h(x) - pair.h(y);
    if all_pairs(&phi_i, &unit, &unit) && all_pairs(&h_i, &xs, &ys) {
        return AdditivityForm::FormI;
    }
    let phi_ii = |a: f64, b: f64| pair.phi(a * b) - pair.phi(a) * pair.phi(b);
    let h_ii = |x: f64, y: f64| pair.h(x * y) - pair.h(x) - pair.h(y);
    if all_pairs(&phi_ii, &unit, &unit) && all_pairs(&h_ii, &xs, &ys) {
        return AdditivityForm::FormII;
    }
    AdditivityForm::Neither
}

/// Samples `f(xy) = f(x) + f(y)` on
/// `[min{1, N_A^{1−α}}, max{1, N_A^{1−α}}] × [min{1, N_B^{1−α}}, max{1, N_B^{1−α}}]`.
pub fn check_f_multiplicativity(
    fam: &FAlphaFamily,
    dims: (usize, usize),
    grid_size: usize,
) -> bool {
    let g = grid_size.max(2);
    let end = |n: usize| powf(n as f64, 1.0 - fam.alpha);
    let (ea, eb) = (end(dims.0), end(dims.1));
    let xs = interval_grid(ea.min(1.0), ea.max(1.0), g);
    let ys = interval_grid(eb.min(1.0), eb.max(1.0), g);
    xs.iter().all(|&x| {
        ys.iter()
            .all(|&y| (fam.f.eval(x * y) - fam.f.eval(x) - fam.f.eval(y)).abs() <= CAUCHY_TOL)
    })
}

/// Parsed form of the family grammar
/// `[family=]<name>[,alpha=<v>][,kappa=<v>][,r=<v>,s=<v>][,f=ln|linear]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub name: String,
    pub alpha: Option<f64>,
    pub kappa: Option<f64>,
    pub r: Option<f64>,
    pub s: Option<f64>,
    pub f: Option<String>,
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidFamilySpec(msg);
        let mut spec = FamilySpec {
            name: String::new(),
            alpha: None,
            kappa: None,
            r: None,
            s: None,
            f: None,
        };
        for (i, token) in s.split(',').map(str::trim).enumerate() {
            if token.is_empty() {
                return Err(bad(format!("empty field in `{s}`")));
            }
            let (key, value) = match token.split_once('=') {
                Some((k, v)) => (k.trim(), v.trim()),
                None if i == 0 => ("family", token),
                None => return Err(bad(format!("expected key=value, got `{token}`"))),
            };
            let num = |v: &str| {
                v.parse::<f64>()
                    .map_err(|_| bad(format!("`{key}` expects a number, got `{v}`")))
            };
            match key {
                "family" if i == 0 => spec.name = value.to_string(),
                "alpha" => spec.alpha = Some(num(value)?),
                "kappa" => spec.kappa = Some(num(value)?),
                "r" => spec.r = Some(num(value)?),
                "s" => spec.s = Some(num(value)?),
                "f" => spec.f = Some(value.to_string()),
                _ => return Err(bad(format!("unknown field `{key}`"))),
            }
        }
        if spec.name.is_empty() {
            return Err(bad(format!("missing family name in `{s}`")));
        }
        Ok(spec)
    }
}

impl FamilySpec {
    fn require(v: Option<f64>, name: &str, family: &str) -> Result<f64> {
        v.ok_or_else(|| Error::InvalidFamilySpec(format!("family `{family}` requires `{name}`")))
    }

    /// The outer function named by `f=`, defaulting to `ln`.
    pub fn outer(&self) -> Result<OuterFunction> {
        match self.f.as_deref() {
            None | Some("ln") | Some("log") => Ok(OuterFunction::Log),
            Some("linear") | Some("x-1") => Ok(OuterFunction::Linear),
            Some(other) => Err(Error::InvalidFamilySpec(format!("unknown f `{other}`"))),
        }
    }

    /// The `(f, α)` family named by this spec; `alpha = 1` is allowed.
    pub fn f_alpha_family(&self) -> Result<FAlphaFamily> {
        FAlphaFamily::new(
            self.outer()?,
            Self::require(self.alpha, "alpha", &self.name)?,
        )
    }

    pub fn to_family(&self) -> Result<Family> {
        let n = self.name.as_str();
        Ok(match n {
            "shannon" | "von_neumann" | "vonneumann" => Family::Shannon,
            "renyi" => Family::Renyi {
                alpha: Self::require(self.alpha, "alpha", n)?,
            },
            "tsallis" => Family::Tsallis {
                alpha: Self::require(self.alpha, "alpha", n)?,
            },
            "unified" => Family::Unified {
                r: Self::require(self.r, "r", n)?,
                s: Self::require(self.s, "s", n)?,
            },
            "kaniadakis" => Family::Kaniadakis {
                kappa: Self::require(self.kappa, "kappa", n)?,
            },
            "f_alpha" => Family::FAlpha(self.f_alpha_family()?),
            "custom" => {
                return Err(Error::InvalidFamilySpec(
                    "custom pairs cannot be built from a specification string".into(),
                ))
            }
            other => {
                return Err(Error::InvalidFamilySpec(format!(
                    "unknown family `{other}`"
                )))
            }
        })
    }

    pub fn to_pair(&self) -> Result<EntropicPair> {
        make_family(self.to_family()?)
    }
}

/// The named families used by the property suites.
pub fn named_family_grid() -> Vec<EntropicPair> {
    let specs = [
        Family::Shannon,
        Family::Renyi { alpha: 0.5 },
        Family::Renyi { alpha: 2.0 },
        Family::Renyi { alpha: 3.0 },
        Family::Renyi { alpha: 10.0 },
        Family::Tsallis { alpha: 0.5 },
        Family::Tsallis { alpha: 2.0 },
        Family::Unified { r: 0.5, s: 0.5 },
        Family::Unified { r: 2.0, s: 3.0 },
        Family::Unified { r: 0.7, s: 2.0 },
        Family::Kaniadakis { kappa: 0.5 },
    ];
    specs
        .into_iter()
        .map(|f| make_family(f).expect("grid families are admissible"))
        .collect()
}
