//! Moments of the record distribution, computed two independent ways.
//!
//! The operator path works on the normalized enumerator: center the
//! exponents on the mean vector, iterate Euler operators, evaluate at
//! the all-ones point. The direct path sums centered powers straight
//! over the records and never touches a polynomial. Both produce exact
//! rationals, so they must agree exactly; `verify_moments` checks that
//! they do.
//!
//! These are population moments (divisor N) and raw, non-excess
//! kurtosis throughout.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Pow;
use num::{One, Zero};
use thiserror::Error;

use crate::corpus::Corpus;
use crate::numeric::{format_decimal, sqrt_rational};
use crate::poly::{build_enumerator, PolyError, Polynomial, Var, VarMap};

/// Operator powers (r, s, t) on the a, p, c axes: the index of the
/// moment M_{r,s,t}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    pub r: u32,
    pub s: u32,
    pub t: u32,
}

impl MultiIndex {
    pub fn new(r: u32, s: u32, t: u32) -> Self {
        MultiIndex { r, s, t }
    }

    /// Index with power `k` on one axis and zero on the others.
    pub fn pure(v: Var, k: u32) -> Self {
        let mut idx = MultiIndex::new(0, 0, 0);
        *idx.power_mut(v) = k;
        idx
    }

    /// Index with power 1 on each of two distinct axes.
    pub fn pair(u: Var, v: Var) -> Self {
        assert_ne!(u, v, "pair index needs two distinct axes");
        let mut idx = MultiIndex::new(0, 0, 0);
        *idx.power_mut(u) = 1;
        *idx.power_mut(v) = 1;
        idx
    }

    pub fn order(&self) -> u32 {
        self.r + self.s + self.t
    }

    pub fn power(&self, v: Var) -> u32 {
        match v {
            Var::A => self.r,
            Var::P => self.s,
            Var::C => self.t,
        }
    }

    fn power_mut(&mut self, v: Var) -> &mut u32 {
        match v {
            Var::A => &mut self.r,
            Var::P => &mut self.s,
            Var::C => &mut self.t,
        }
    }

    /// Every index with total order at most `max_order`, in
    /// lexicographic (r, s, t) order. For `max_order` 4 this is the 35
    /// indices the default verification sweeps.
    pub fn up_to_order(max_order: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for r in 0..=max_order {
            for s in 0..=(max_order - r) {
                for t in 0..=(max_order - r - s) {
                    out.push(MultiIndex::new(r, s, t));
                }
            }
        }
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.s, self.t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("empty corpus: no distribution to summarize")]
    EmptyCorpus,
    #[error("unnormalized enumerator: value at the all-ones point is {got}, expected 1")]
    Unnormalized { got: String },
    #[error("degenerate distribution: zero variance on axis {axis}")]
    DegenerateVariance { axis: Var },
    #[error("precision {got} too low: need at least {min} significant digits")]
    PrecisionTooLow { got: u32, min: u32 },
    #[error("moment order {got} too low: verification needs at least 2")]
    MaxOrderTooLow { got: u32 },
    #[error("index {index} exceeds the table's maximum order {max_order}")]
    IndexBeyondTable { index: MultiIndex, max_order: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Minimum accepted significant digits for approximate results.
pub const MIN_PRECISION: u32 = 10;

/// Default significant digits carried by square roots and quotients.
pub const DEFAULT_PRECISION: u32 = 50;

/// Default maximum total order for moment tables and verification.
pub const DEFAULT_MAX_ORDER: u32 = 4;

/// The enumerator scaled to a probability generating function, so its
/// all-ones value is 1.
pub fn normalized_enumerator(corpus: &Corpus) -> Result<Polynomial, StatsError> {
    if corpus.is_empty() {
        return Err(StatsError::EmptyCorpus);
    }
    let n = BigRational::from_integer(BigInt::from(corpus.len()));
    Ok(build_enumerator(corpus).scale(&n.recip()))
}

fn require_normalized(f: &Polynomial) -> Result<(), StatsError> {
    let at_ones = f.coefficient_sum();
    if at_ones.is_one() {
        Ok(())
    } else {
        Err(StatsError::Unnormalized {
            got: at_ones.to_string(),
        })
    }
}

/// Raw moment E[age^r pub^s cit^t]: iterate θ_a, θ_p, θ_c on the
/// normalized enumerator and evaluate at all-ones.
pub fn raw_moment(f: &Polynomial, idx: MultiIndex) -> Result<BigRational, StatsError> {
    require_normalized(f)?;
    let mut current = f.clone();
    for v in Var::ALL {
        for _ in 0..idx.power(v) {
            current = current.euler_derivative(v);
        }
    }
    Ok(current.evaluate(&VarMap::ones())?)
}

/// The three first raw moments: the mean vector (μ_age, μ_pub, μ_cit).
pub fn mean_vector(f: &Polynomial) -> Result<VarMap, StatsError> {
    require_normalized(f)?;
    let mut means = Vec::with_capacity(3);
    for v in Var::ALL {
        means.push(raw_moment(f, MultiIndex::pure(v, 1))?);
    }
    let mut it = means.into_iter();
    Ok(VarMap::new(
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    ))
}

/// Central moment M_{r,s,t} by the operator path: divide the normalized
/// enumerator by the mean-vector monomial, then proceed as for raw
/// moments on the centered result.
pub fn central_moment_operator(f: &Polynomial, idx: MultiIndex) -> Result<BigRational, StatsError> {
    let means = mean_vector(f)?;
    let centered = f.center_exponents(&means);
    let mut current = centered;
    for v in Var::ALL {
        for _ in 0..idx.power(v) {
            current = current.euler_derivative(v);
        }
    }
    Ok(current.evaluate(&VarMap::ones())?)
}

fn direct_means(corpus: &Corpus) -> Result<VarMap, StatsError> {
    if corpus.is_empty() {
        return Err(StatsError::EmptyCorpus);
    }
    let n = BigRational::from_integer(BigInt::from(corpus.len()));
    let mut sums = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for record in &corpus.records {
        sums[0] += BigInt::from(record.age);
        sums[1] += BigInt::from(record.publications);
        sums[2] += BigInt::from(record.citations);
    }
    let [a, p, c] = sums;
    Ok(VarMap::new(
        BigRational::from_integer(a) / &n,
        BigRational::from_integer(p) / &n,
        BigRational::from_integer(c) / &n,
    ))
}

/// Central moment M_{r,s,t} by definition: the average over records of
/// the centered power products. Deliberately independent of the
/// polynomial machinery; this is the oracle the operator path is
/// verified against.
pub fn central_moment_direct(corpus: &Corpus, idx: MultiIndex) -> Result<BigRational, StatsError> {
    let means = direct_means(corpus)?;
    let n = BigRational::from_integer(BigInt::from(corpus.len()));
    let mut total = BigRational::zero();
    for record in &corpus.records {
        let devs = [
            BigRational::from_integer(BigInt::from(record.age)) - &means[Var::A],
            BigRational::from_integer(BigInt::from(record.publications)) - &means[Var::P],
            BigRational::from_integer(BigInt::from(record.citations)) - &means[Var::C],
        ];
        let mut product = BigRational::one();
        for (v, dev) in Var::ALL.into_iter().zip(devs) {
            let power = idx.power(v);
            if power > 0 {
                product *= dev.pow(power);
            }
        }
        total += product;
    }
    Ok(total / n)
}

/// Exact mean vector and central moments up to a maximum total order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentTable {
    pub means: VarMap,
    pub central: BTreeMap<MultiIndex, BigRational>,
    pub population_size: u64,
    pub max_order: u32,
}

impl MomentTable {
    /// Build via the generating-function route: one centering, then a
    /// chain of Euler operators reused across indices.
    pub fn operator_path(corpus: &Corpus, max_order: u32) -> Result<MomentTable, StatsError> {
        let f = normalized_enumerator(corpus)?;
        let means = mean_vector(&f)?;
        let centered = f.center_exponents(&means);

        let mut central = BTreeMap::new();
        let mut theta_c = centered;
        for t in 0..=max_order {
            if t > 0 {
                theta_c = theta_c.euler_derivative(Var::C);
            }
            let mut theta_p = theta_c.clone();
            for s in 0..=(max_order - t) {
                if s > 0 {
                    theta_p = theta_p.euler_derivative(Var::P);
                }
                let mut theta_a = theta_p.clone();
                for r in 0..=(max_order - t - s) {
                    if r > 0 {
                        theta_a = theta_a.euler_derivative(Var::A);
                    }
                    central.insert(MultiIndex::new(r, s, t), theta_a.evaluate(&VarMap::ones())?);
                }
            }
        }

        Ok(MomentTable {
            means,
            central,
            population_size: corpus.len() as u64,
            max_order,
        })
    }

    /// Build by brute force straight over the records.
    pub fn direct_path(corpus: &Corpus, max_order: u32) -> Result<MomentTable, StatsError> {
        let means = direct_means(corpus)?;
        let n = BigRational::from_integer(BigInt::from(corpus.len()));

        // per record, per axis: deviation powers 0..=max_order
        let mut powers: Vec<[Vec<BigRational>; 3]> = Vec::with_capacity(corpus.len());
        for record in &corpus.records {
            let devs = [
                BigRational::from_integer(BigInt::from(record.age)) - &means[Var::A],
                BigRational::from_integer(BigInt::from(record.publications)) - &means[Var::P],
                BigRational::from_integer(BigInt::from(record.citations)) - &means[Var::C],
            ];
            powers.push(devs.map(|dev| {
                let mut axis_powers = vec![BigRational::one()];
                for k in 1..=max_order {
                    axis_powers.push(&axis_powers[(k - 1) as usize] * &dev);
                }
                axis_powers
            }));
        }

        let mut central = BTreeMap::new();
        for idx in MultiIndex::up_to_order(max_order) {
            let mut total = BigRational::zero();
            for record_powers in &powers {
                total += &record_powers[0][idx.r as usize]
                    * &record_powers[1][idx.s as usize]
                    * &record_powers[2][idx.t as usize];
            }
            central.insert(idx, total / &n);
        }

        Ok(MomentTable {
            means,
            central,
            population_size: corpus.len() as u64,
            max_order,
        })
    }

    pub fn mean(&self, v: Var) -> &BigRational {
        &self.means[v]
    }

    pub fn central(&self, idx: MultiIndex) -> Result<&BigRational, StatsError> {
        self.central.get(&idx).ok_or(StatsError::IndexBeyondTable {
            index: idx,
            max_order: self.max_order,
        })
    }

    /// The pure second moment M_2 on one axis.
    pub fn variance(&self, v: Var) -> Result<&BigRational, StatsError> {
        self.central(MultiIndex::pure(v, 2))
    }
}

/// Scaled moment α_{r,s,t} = M_{r,s,t} / (M₂ₐ^{r/2} M₂ₚ^{s/2} M₂c^{t/2}).
/// Exact when every index component is even; otherwise the half-integer
/// powers go through a square root carried to `precision` significant
/// digits.
pub fn scaled_moment(
    table: &MomentTable,
    idx: MultiIndex,
    precision: u32,
) -> Result<BigRational, StatsError> {
    if precision < MIN_PRECISION {
        return Err(StatsError::PrecisionTooLow {
            got: precision,
            min: MIN_PRECISION,
        });
    }
    let moment = table.central(idx)?.clone();
    let mut denominator = BigRational::one();
    for v in Var::ALL {
        let power = idx.power(v);
        if power == 0 {
            continue;
        }
        let variance = table.variance(v)?;
        if variance.is_zero() {
            return Err(StatsError::DegenerateVariance { axis: v });
        }
        denominator *= variance.pow((power / 2) as i32);
        if power % 2 == 1 {
            let root = sqrt_rational(variance, precision).expect("variance is nonnegative");
            denominator *= root;
        }
    }
    Ok(moment / denominator)
}

/// Per-axis slice of the summary. The mean is exact; kurtosis is an
/// exact ratio of even moments; standard deviation and skewness are
/// square-root approximations at the summary's precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisSummary {
    pub mean: BigRational,
    pub std_dev: BigRational,
    pub skewness: BigRational,
    pub kurtosis: BigRational,
}

/// The twelve per-axis statistics and three correlations, plus the
/// exact moment table they came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsSummary {
    axes: [AxisSummary; 3],
    /// Correlations in the order (age & pub, age & cit, pub & cit).
    pub correlations: [BigRational; 3],
    pub moments: MomentTable,
    pub population: u64,
    pub precision: u32,
}

/// The three correlated axis pairs in summary order.
pub const CORRELATION_PAIRS: [(Var, Var); 3] = [
    (Var::A, Var::P),
    (Var::A, Var::C),
    (Var::P, Var::C),
];

impl StatsSummary {
    pub fn axis(&self, v: Var) -> &AxisSummary {
        &self.axes[v.index()]
    }

    pub fn correlation(&self, u: Var, v: Var) -> Option<&BigRational> {
        CORRELATION_PAIRS
            .iter()
            .position(|&pair| pair == (u, v) || pair == (v, u))
            .map(|i| &self.correlations[i])
    }
}

/// Compute the full summary from the operator-path moment table.
pub fn stats_summary(corpus: &Corpus, precision: u32) -> Result<StatsSummary, StatsError> {
    if precision < MIN_PRECISION {
        return Err(StatsError::PrecisionTooLow {
            got: precision,
            min: MIN_PRECISION,
        });
    }
    let table = MomentTable::operator_path(corpus, DEFAULT_MAX_ORDER)?;
    for v in Var::ALL {
        if table.variance(v)?.is_zero() {
            return Err(StatsError::DegenerateVariance { axis: v });
        }
    }

    let axis = |v: Var| -> Result<AxisSummary, StatsError> {
        let variance = table.variance(v)?;
        Ok(AxisSummary {
            mean: table.mean(v).clone(),
            std_dev: sqrt_rational(variance, precision).expect("variance is nonnegative"),
            skewness: scaled_moment(&table, MultiIndex::pure(v, 3), precision)?,
            kurtosis: scaled_moment(&table, MultiIndex::pure(v, 4), precision)?,
        })
    };
    let axes = [axis(Var::A)?, axis(Var::P)?, axis(Var::C)?];

    let mut correlations = Vec::with_capacity(3);
    for (u, v) in CORRELATION_PAIRS {
        correlations.push(scaled_moment(&table, MultiIndex::pair(u, v), precision)?);
    }

    Ok(StatsSummary {
        axes,
        correlations: correlations.try_into().expect("three correlation pairs"),
        population: table.population_size,
        precision,
        moments: table,
    })
}

/// Decimal places used when rendering a summary, per axis and
/// statistic. The default mirrors the reference report layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplayProfile {
    pub mean_places: [usize; 3],
    pub std_dev_places: [usize; 3],
    pub skewness_places: [usize; 3],
    pub kurtosis_places: [usize; 3],
    /// Places for (age & pub, age & cit, pub & cit).
    pub correlation_places: [usize; 3],
}

impl Default for DisplayProfile {
    fn default() -> Self {
        DisplayProfile {
            mean_places: [4, 3, 3],
            std_dev_places: [3, 3, 3],
            skewness_places: [3, 3, 2],
            kurtosis_places: [4, 4, 3],
            correlation_places: [3, 3, 5],
        }
    }
}

impl DisplayProfile {
    /// Uniform places everywhere; handy for machine consumption.
    pub fn uniform(places: usize) -> Self {
        DisplayProfile {
            mean_places: [places; 3],
            std_dev_places: [places; 3],
            skewness_places: [places; 3],
            kurtosis_places: [places; 3],
            correlation_places: [places; 3],
        }
    }
}

/// JSON form of the summary. Statistics are decimal strings rendered
/// through the profile, never binary floats.
pub fn summary_to_json(summary: &StatsSummary, profile: &DisplayProfile) -> serde_json::Value {
    let axis_json = |v: Var| {
        let i = v.index();
        let axis = summary.axis(v);
        serde_json::json!({
            "mean": format_decimal(&axis.mean, profile.mean_places[i]),
            "std_dev": format_decimal(&axis.std_dev, profile.std_dev_places[i]),
            "skewness": format_decimal(&axis.skewness, profile.skewness_places[i]),
            "kurtosis": format_decimal(&axis.kurtosis, profile.kurtosis_places[i]),
        })
    };
    serde_json::json!({
        "age": axis_json(Var::A),
        "publications": axis_json(Var::P),
        "citations": axis_json(Var::C),
        "correlations": {
            "age_pub": format_decimal(&summary.correlations[0], profile.correlation_places[0]),
            "age_cit": format_decimal(&summary.correlations[1], profile.correlation_places[1]),
            "pub_cit": format_decimal(&summary.correlations[2], profile.correlation_places[2]),
        },
        "population": summary.population,
        "precision": summary.precision,
    })
}

/// One compared moment index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentCheck {
    pub index: MultiIndex,
    pub operator: BigRational,
    pub direct: BigRational,
}

impl MomentCheck {
    pub fn matches(&self) -> bool {
        self.operator == self.direct
    }
}

/// Outcome of comparing the two computation paths index by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub max_order: u32,
    pub means_match: bool,
    pub checks: Vec<MomentCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.matches()).count()
    }

    pub fn total(&self) -> usize {
        self.checks.len()
    }

    pub fn all_match(&self) -> bool {
        self.means_match && self.passed() == self.total()
    }
}

/// Compare two moment tables entry by entry.
pub fn verify_tables(operator: &MomentTable, direct: &MomentTable, max_order: u32) -> VerificationReport {
    let zero = BigRational::zero();
    let checks = MultiIndex::up_to_order(max_order)
        .into_iter()
        .map(|idx| MomentCheck {
            index: idx,
            operator: operator.central.get(&idx).unwrap_or(&zero).clone(),
            direct: direct.central.get(&idx).unwrap_or(&zero).clone(),
        })
        .collect();
    VerificationReport {
        max_order,
        means_match: operator.means == direct.means,
        checks,
    }
}

/// Run both paths over the corpus and compare every index with total
/// order at most `max_order` (35 indices at the default order 4).
pub fn verify_moments(corpus: &Corpus, max_order: u32) -> Result<VerificationReport, StatsError> {
    if max_order < 2 {
        return Err(StatsError::MaxOrderTooLow { got: max_order });
    }
    let operator = MomentTable::operator_path(corpus, max_order)?;
    let direct = MomentTable::direct_path(corpus, max_order)?;
    Ok(verify_tables(&operator, &direct, max_order))
}
