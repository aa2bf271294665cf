//! Classical entropies on probability vectors, majorization and the J/I
//! conditional quantities.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::functionals::EntropicPair;

/// Components in `[-CLIP_TOL, 0)` are set to zero.
pub const CLIP_TOL: f64 = 1e-12;
/// Sum drift tolerated (and renormalized away).
pub const SUM_TOL: f64 = 1e-10;
/// Partial-sum comparison tolerance for majorization.
pub const MAJORIZATION_TOL: f64 = 1e-12;
/// Slack in asserted inequalities.
pub const BOUND_TOL: f64 = 1e-10;

fn sanitize(values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::InvalidProbability("empty vector".into()));
    }
    let mut out = Vec::with_capacity(values.len());
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        if v < -CLIP_TOL {
            return Err(Error::InvalidProbability(format!(
                "component {i} is negative ({v:e})"
            )));
        }
        out.push(v.max(0.0));
    }
    let s: f64 = out.iter().sum();
    if (s - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidProbability(format!("components sum to {s}")));
    }
    if s != 1.0 {
        out.iter_mut().for_each(|v| *v /= s);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityVector {
    components: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        Ok(ProbabilityVector {
            components: sanitize(&components)?,
        })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidProbability("empty vector".into()));
        }
        Ok(ProbabilityVector {
            components: vec![1.0 / n as f64; n],
        })
    }

    /// Normalizes nonnegative weights.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::NonFinite);
        }
        if weights.iter().any(|&w| w < 0.0) {
            return Err(Error::InvalidProbability("negative weight".into()));
        }
        let s: f64 = weights.iter().sum();
        if !(s > 0.0) {
            return Err(Error::InvalidProbability("weights sum to zero".into()));
        }
        Self::new(weights.iter().map(|w| w / s).collect())
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Decreasing-sorted copy.
    pub fn canonical(&self) -> Vec<f64> {
        let mut v = self.components.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    /// Number of nonzero components.
    pub fn support_size(&self) -> usize {
        self.components.iter().filter(|&&p| p > 0.0).count()
    }

    /// Appends `extra` zero components.
    pub fn expanded(&self, extra: usize) -> Self {
        let mut components = self.components.clone();
        components.extend(core::iter::repeat_n(0.0, extra));
        ProbabilityVector { components }
    }

    /// Merges components `i` and `j` into position `min(i, j)`.
    pub fn merged(&self, i: usize, j: usize) -> Result<Self> {
        let n = self.len();
        if i >= n || j >= n || i == j {
            return Err(Error::DimensionMismatch(format!(
                "cannot merge components {i} and {j} of a length-{n} vector"
            )));
        }
        let (a, b) = (i.min(j), i.max(j));
        let mut components = self.components.clone();
        components[a] += components[b];
        components.remove(b);
        Ok(ProbabilityVector { components })
    }

    /// `B p` for a (column-)stochastic matrix given by rows.
    pub fn apply_stochastic(&self, b: &[Vec<f64>]) -> Result<Self> {
        if b.iter().any(|row| row.len() != self.len()) {
            return Err(Error::DimensionMismatch("stochastic matrix width".into()));
        }
        let out: Vec<f64> = b
            .iter()
            .map(|row| row.iter().zip(&self.components).map(|(x, p)| x * p).sum())
            .collect();
        Self::new(out)
    }
}

/// Joint distribution `p[a][b]`; rows index `A`, columns index `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointProbability {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl JointProbability {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(
                "joint distribution must be a nonempty rectangle".into(),
            ));
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        Ok(JointProbability {
            rows: r,
            cols: c,
            data: sanitize(&flat)?,
        })
    }

    /// `p^A ⊗ p^B`.
    pub fn product(pa: &ProbabilityVector, pb: &ProbabilityVector) -> Self {
        let data = pa
            .components()
            .iter()
            .flat_map(|a| pb.components().iter().map(move |b| a * b))
            .collect();
        JointProbability {
            rows: pa.len(),
            cols: pb.len(),
            data,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.data[a * self.cols + b]
    }

    pub fn flat(&self) -> &[f64] {
        &self.data
    }

    pub fn as_vector(&self) -> ProbabilityVector {
        ProbabilityVector {
            components: self.data.clone(),
        }
    }

    pub fn marginal_a(&self) -> ProbabilityVector {
        let components = (0..self.rows)
            .map(|a| (0..self.cols).map(|b| self.get(a, b)).sum())
            .collect();
        ProbabilityVector { components }
    }

    pub fn marginal_b(&self) -> ProbabilityVector {
        let components = (0..self.cols)
            .map(|b| (0..self.rows).map(|a| self.get(a, b)).sum())
            .collect();
        ProbabilityVector { components }
    }

    /// Swaps the roles of `A` and `B`.
    pub fn transposed(&self) -> Self {
        let mut data = vec![0.0; self.data.len()];
        for a in 0..self.rows {
            for b in 0..self.cols {
                data[b * self.rows + a] = self.get(a, b);
            }
        }
        JointProbability {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `p^{A|b}`, or `None` when `p^B_b = 0`.
    pub fn conditional_on_b(&self, b: usize) -> Option<ProbabilityVector> {
        let col: Vec<f64> = (0..self.rows).map(|a| self.get(a, b)).collect();
        let s: f64 = col.iter().sum();
        if s <= 0.0 {
            return None;
        }
        Some(ProbabilityVector {
            components: col.into_iter().map(|x| x / s).collect(),
        })
    }
}

pub fn classical_entropy(pair: &EntropicPair, p: &ProbabilityVector) -> f64 {
    pair.entropy(p.components())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MajorizationVerdict {
    /// `p ≺ q`.
    FirstMajorized,
    /// `q ≺ p`.
    SecondMajorized,
    Equal,
    Incomparable,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MajorizationRelation {
    pub verdict: MajorizationVerdict,
    pub partial_sums: (Vec<f64>, Vec<f64>),
}

fn cumulative(v: &[f64]) -> Vec<f64> {
    v.iter()
        .scan(0.0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Compares `p` and `q` in the majorization order, padding the shorter
/// vector with zeros.
pub fn majorizes(p: &ProbabilityVector, q: &ProbabilityVector) -> MajorizationRelation {
    let n = p.len().max(q.len());
    let mut a = p.canonical();
    let mut b = q.canonical();
    a.resize(n, 0.0);
    b.resize(n, 0.0);
    let (sa, sb) = (cumulative(&a), cumulative(&b));
    let p_below = sa.iter().zip(&sb).all(|(x, y)| *x <= y + MAJORIZATION_TOL);
    let q_below = sa.iter().zip(&sb).all(|(x, y)| *y <= x + MAJORIZATION_TOL);
    let verdict = match (p_below, q_below) {
        (true, true) => MajorizationVerdict::Equal,
        (true, false) => MajorizationVerdict::FirstMajorized,
        (false, true) => MajorizationVerdict::SecondMajorized,
        (false, false) => MajorizationVerdict::Incomparable,
    };
    MajorizationRelation {
        verdict,
        partial_sums: (sa, sb),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyBounds {
    pub lower: f64,
    pub tight_upper: f64,
    pub dim_upper: f64,
}

impl EntropyBounds {
    pub(crate) fn for_sizes(pair: &EntropicPair, support: usize, dim: usize) -> Self {
        EntropyBounds {
            lower: 0.0,
            tight_upper: pair.uniform_value(support),
            dim_upper: pair.uniform_value(dim),
        }
    }

    /// Checks `lower ≤ value ≤ tight_upper ≤ dim_upper` with slack `tol`.
    pub fn check(&self, value: f64, tol: f64) -> Result<()> {
        let chain = [
            ("lower bound <= entropy", self.lower, value),
            ("entropy <= support bound", value, self.tight_upper),
            (
                "support bound <= dimension bound",
                self.tight_upper,
                self.dim_upper,
            ),
        ];
        for (what, lhs, rhs) in chain {
            if lhs > rhs + tol {
                return Err(Error::InequalityViolated { what, lhs, rhs });
            }
        }
        Ok(())
    }
}

/// `(0, h(‖p‖₀ φ(1/‖p‖₀)), h(N φ(1/N)))`, checked against `H(p)`.
pub fn entropy_bounds(pair: &EntropicPair, p: &ProbabilityVector) -> Result<EntropyBounds> {
    let bounds = EntropyBounds::for_sizes(pair, p.support_size(), p.len());
    bounds.check(classical_entropy(pair, p), BOUND_TOL)?;
    Ok(bounds)
}

/// `Σ_b p^B_b H(p^{A|b})`; empty columns contribute zero.
pub fn conditional_j(pair: &EntropicPair, pab: &JointProbability) -> f64 {
    let pb = pab.marginal_b();
    (0..pab.cols)
        .filter_map(|b| {
            pab.conditional_on_b(b)
                .map(|cond| pb.components[b] * classical_entropy(pair, &cond))
        })
        .sum()
}

/// `H(A,B) − H(B)`.
pub fn conditional_i(pair: &EntropicPair, pab: &JointProbability) -> f64 {
    classical_entropy(pair, &pab.as_vector()) - classical_entropy(pair, &pab.marginal_b())
}

/// `H(A) − H_J(A|B)`.
pub fn mutual_j(pair: &EntropicPair, pab: &JointProbability) -> f64 {
    classical_entropy(pair, &pab.marginal_a()) - conditional_j(pair, pab)
}

/// `H(A) + H(B) − H(A,B)`.
pub fn mutual_i(pair: &EntropicPair, pab: &JointProbability) -> f64 {
    classical_entropy(pair, &pab.marginal_a()) + classical_entropy(pair, &pab.marginal_b())
        - classical_entropy(pair, &pab.as_vector())
}

/// For incomparable `p`, `q`, finds two pairs in `families` ranking them
/// oppositely (by more than `tol`). Returns their indices.
pub fn opposite_ranking(
    families: &[EntropicPair],
    p: &ProbabilityVector,
    q: &ProbabilityVector,
    tol: f64,
) -> Option<(usize, usize)> {
    let diffs: Vec<f64> = families
        .iter()
        .map(|f| classical_entropy(f, p) - classical_entropy(f, q))
        .collect();
    let up = diffs.iter().position(|&d| d > tol)?;
    let down = diffs.iter().position(|&d| d < -tol)?;
    Some((up, down))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pv(v: &[f64]) -> ProbabilityVector {
        ProbabilityVector::new(v.to_vec()).unwrap()
    }

    fn joint(rows: &[&[f64]]) -> JointProbability {
        JointProbability::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn shannon_oracle(p: &[f64]) -> f64 {
        p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum()
    }

    #[test]
    fn probability_validation() {
        let p = ProbabilityVector::new(vec![0.5, 0.5 + 5e-11, -5e-13]).unwrap();
        assert_eq!(p.components()[2], 0.0);
        assert!((p.components().iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(ProbabilityVector::new(vec![1.1, -0.1]).is_err());
        assert!(ProbabilityVector::new(vec![0.5, 0.4]).is_err());
        assert!(ProbabilityVector::new(vec![]).is_err());
        assert!(matches!(
            ProbabilityVector::new(vec![f64::NAN, 1.0]),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn entropy_examples() {
        let sh = EntropicPair::shannon();
        assert_eq!(classical_entropy(&sh, &pv(&[1.0, 0.0])), 0.0);
        for n in 1..=8 {
            let h = classical_entropy(&sh, &ProbabilityVector::uniform(n).unwrap());
            assert!((h - (n as f64).ln()).abs() < 1e-14);
        }
        let r2 = EntropicPair::renyi(2.0).unwrap();
        assert!((classical_entropy(&r2, &pv(&[0.5, 0.25, 0.25])) - 0.980829).abs() < 1e-6);
    }

    #[test]
    fn majorization_examples() {
        use MajorizationVerdict::*;
        assert_eq!(
            majorizes(&pv(&[0.5, 0.5]), &pv(&[1.0, 0.0])).verdict,
            FirstMajorized
        );
        assert_eq!(
            majorizes(&pv(&[0.5, 0.3, 0.2]), &pv(&[0.6, 0.2, 0.2])).verdict,
            FirstMajorized
        );
        assert_eq!(
            majorizes(&pv(&[0.6, 0.2, 0.2]), &pv(&[0.5, 0.5, 0.0])).verdict,
            Incomparable
        );
        assert_eq!(
            majorizes(&pv(&[0.2, 0.8]), &pv(&[0.8, 0.2, 0.0])).verdict,
            Equal
        );
        assert_eq!(
            majorizes(&pv(&[1.0]), &pv(&[0.5, 0.5])).verdict,
            SecondMajorized
        );
        let rel = majorizes(&pv(&[0.5, 0.3, 0.2]), &pv(&[0.6, 0.2, 0.2]));
        assert_eq!(rel.partial_sums.0.len(), 3);
        assert!((rel.partial_sums.1[1] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn bounds_examples() {
        let sh = EntropicPair::shannon();
        let b = entropy_bounds(&sh, &pv(&[0.5, 0.5, 0.0])).unwrap();
        assert_eq!(b.lower, 0.0);
        assert!((b.tight_upper - 2f64.ln()).abs() < 1e-15);
        assert!((b.dim_upper - 3f64.ln()).abs() < 1e-15);
        let b = entropy_bounds(&sh, &pv(&[1.0, 0.0, 0.0])).unwrap();
        assert_eq!(b.tight_upper, 0.0);
        let t2 = EntropicPair::tsallis(2.0).unwrap();
        let b = entropy_bounds(&t2, &ProbabilityVector::uniform(4).unwrap()).unwrap();
        assert!((b.tight_upper - 0.75).abs() < 1e-15);
        assert!((b.dim_upper - 0.75).abs() < 1e-15);
        let bad = EntropyBounds {
            lower: 0.0,
            tight_upper: 0.1,
            dim_upper: 1.0,
        };
        assert!(matches!(
            bad.check(0.5, 1e-10),
            Err(Error::InequalityViolated { .. })
        ));
    }

    #[test]
    fn conditional_examples() {
        let sh = EntropicPair::shannon();
        let t2 = EntropicPair::tsallis(2.0).unwrap();
        let ln2 = 2f64.ln();
        let indep = joint(&[&[0.25, 0.25], &[0.25, 0.25]]);
        let corr = joint(&[&[0.5, 0.0], &[0.0, 0.5]]);
        let noisy = joint(&[&[0.4, 0.1], &[0.1, 0.4]]);
        assert!((conditional_j(&sh, &indep) - ln2).abs() < 1e-12);
        assert!(conditional_j(&sh, &corr).abs() < 1e-12);
        let h82 = shannon_oracle(&[0.8, 0.2]);
        assert!((h82 - 0.500402).abs() < 1e-6);
        assert!((conditional_j(&sh, &noisy) - h82).abs() < 1e-12);
        assert!((conditional_i(&sh, &indep) - ln2).abs() < 1e-12);
        assert!(conditional_i(&sh, &corr).abs() < 1e-12);
        assert!((conditional_i(&t2, &noisy) - 0.16).abs() < 1e-12);
        assert!(mutual_i(&sh, &indep).abs() < 1e-12);
        assert!((mutual_i(&sh, &corr) - ln2).abs() < 1e-12);
        assert!((mutual_j(&sh, &corr) - ln2).abs() < 1e-12);
        assert!((mutual_j(&sh, &noisy) - 0.192745).abs() < 1e-6);
        assert!((mutual_i(&sh, &noisy) - 0.192745).abs() < 1e-6);
    }

    #[test]
    fn zero_column_skipped() {
        let sh = EntropicPair::shannon();
        let j = joint(&[&[0.5, 0.0], &[0.5, 0.0]]);
        assert!(j.conditional_on_b(1).is_none());
        assert!((conditional_j(&sh, &j) - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn renyi_three_mutual_j_can_be_negative() {
        // Found by random search over rounded 3x2 joints.
        let r3 = EntropicPair::renyi(3.0).unwrap();
        let j = joint(&[&[0.1, 0.0], &[0.1, 0.0], &[0.2, 0.6]]);
        assert!((mutual_j(&r3, &j) + 0.0384935913096).abs() < 1e-12);
        assert!(mutual_j(&EntropicPair::shannon(), &j) >= 0.0);
    }

    #[test]
    fn karamata_witness() {
        let fams = crate::functionals::named_family_grid();
        let (p, q) = (pv(&[0.6, 0.2, 0.2]), pv(&[0.5, 0.5, 0.0]));
        assert!(opposite_ranking(&fams, &p, &q, 1e-9).is_some());
    }

    fn prob_vec(max: usize) -> impl Strategy<Value = ProbabilityVector> {
        proptest::collection::vec(0.0f64..1.0, 1..=max)
            .prop_filter_map("zero", |v| ProbabilityVector::from_weights(&v).ok())
    }

    fn joint_strategy() -> impl Strategy<Value = JointProbability> {
        (1usize..=4, 1usize..=4)
            .prop_flat_map(|(r, c)| {
                proptest::collection::vec(0.0f64..1.0, r * c).prop_map(move |v| (r, c, v))
            })
            .prop_filter_map("zero", |(r, c, v)| {
                let s: f64 = v.iter().sum();
                if s <= 0.0 {
                    return None;
                }
                let rows: Vec<Vec<f64>> = v
                    .chunks(c)
                    .map(|ch| ch.iter().map(|x| x / s).collect())
                    .collect();
                debug_assert_eq!(rows.len(), r);
                JointProbability::from_rows(&rows).ok()
            })
    }

    /// Convex combination of permutation matrices.
    fn bistochastic(n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
        (
            proptest::collection::vec(Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), 1..=4),
            proptest::collection::vec(0.01f64..1.0, 4),
        )
            .prop_map(move |(perms, w)| {
                let s: f64 = w[..perms.len()].iter().sum();
                let mut b = vec![vec![0.0; n]; n];
                for (perm, wk) in perms.iter().zip(&w) {
                    for (i, &j) in perm.iter().enumerate() {
                        b[i][j] += wk / s;
                    }
                }
                b
            })
    }

    proptest! {
        #[test]
        fn shannon_matches_oracle(p in prob_vec(10)) {
            let h = classical_entropy(&EntropicPair::shannon(), &p);
            prop_assert!((h - shannon_oracle(p.components())).abs() < 1e-12);
        }

        #[test]
        fn expansible_and_permutation_invariant(p in prob_vec(8), extra in 0usize..4, seed in any::<u64>()) {
            for pair in crate::functionals::named_family_grid() {
                let h = classical_entropy(&pair, &p);
                prop_assert!((classical_entropy(&pair, &p.expanded(extra)) - h).abs() <= 1e-12);
                let mut v = p.components().to_vec();
                let n = v.len();
                v.rotate_left((seed as usize) % n);
                v.reverse();
                prop_assert!((classical_entropy(&pair, &pv(&v)) - h).abs() <= 1e-12);
            }
        }

        #[test]
        fn schur_concave((p, b) in (2usize..=6).prop_flat_map(|n| (
            proptest::collection::vec(0.0f64..1.0, n)
                .prop_filter_map("zero", |v| ProbabilityVector::from_weights(&v).ok()),
            bistochastic(n),
        ))) {
            let bp = p.apply_stochastic(&b).unwrap();
            prop_assert!(matches!(
                majorizes(&bp, &p).verdict,
                MajorizationVerdict::FirstMajorized | MajorizationVerdict::Equal
            ));
            for pair in crate::functionals::named_family_grid() {
                prop_assert!(classical_entropy(&pair, &bp) >= classical_entropy(&pair, &p) - 1e-10);
            }
        }

        #[test]
        fn merging_decreases(p in prob_vec(8)) {
            prop_assume!(p.len() >= 2);
            let merged = p.merged(0, 1).unwrap();
            for pair in crate::functionals::named_family_grid() {
                prop_assert!(classical_entropy(&pair, &p) >= classical_entropy(&pair, &merged) - 1e-10);
            }
        }

        #[test]
        fn bounds_hold(p in prob_vec(8)) {
            for pair in crate::functionals::named_family_grid() {
                prop_assert!(entropy_bounds(&pair, &p).is_ok());
            }
        }

        #[test]
        fn conditional_i_nonnegative(j in joint_strategy()) {
            for pair in crate::functionals::named_family_grid() {
                prop_assert!(conditional_i(&pair, &j) >= -1e-10);
            }
        }

        #[test]
        fn mutual_symmetry_and_shannon_agreement(j in joint_strategy()) {
            let sh = EntropicPair::shannon();
            for pair in crate::functionals::named_family_grid() {
                prop_assert!((mutual_i(&pair, &j) - mutual_i(&pair, &j.transposed())).abs() <= 1e-12);
            }
            prop_assert!((mutual_i(&sh, &j) - mutual_j(&sh, &j)).abs() <= 1e-10);
        }

        #[test]
        fn product_conditional_is_marginal(pa in prob_vec(4), pb in prob_vec(4)) {
            let j = JointProbability::product(&pa, &pb);
            for pair in crate::functionals::named_family_grid() {
                prop_assert!((conditional_j(&pair, &j) - classical_entropy(&pair, &pa)).abs() <= 1e-10);
            }
        }
    }
}
