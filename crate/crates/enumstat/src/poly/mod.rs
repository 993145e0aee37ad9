//! Sparse trivariate polynomial engine over exact rationals.
//!
//! Both coefficients and exponents are arbitrary-precision rationals.
//! Integer exponents cover ordinary weight enumerators; rational
//! exponents appear once an enumerator is centered on its mean vector.

mod text;

pub use text::{parse_polynomial, print_canonical, print_grouped, ParseError};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Index;

use num::rational::BigRational;
use num::{One, Zero};
use thiserror::Error;

use crate::corpus::{Corpus, FellowRecord};
use crate::numeric::pow_rational;

/// The three fixed variables: `a` (age), `p` (publications), `c` (citations).
/// The ordering A < P < C is part of the canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A,
    P,
    C,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::A, Var::P, Var::C];

    /// Factor order inside a printed term, matching the source listing
    /// style `c^173*p^24*a^48`.
    pub const PRINT_ORDER: [Var; 3] = [Var::C, Var::P, Var::A];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            Var::A => 'a',
            Var::P => 'p',
            Var::C => 'c',
        }
    }

    pub fn from_symbol(ch: char) -> Option<Var> {
        match ch {
            'a' => Some(Var::A),
            'p' => Some(Var::P),
            'c' => Some(Var::C),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// One exact rational per variable; used for evaluation points and
/// exponent shifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap([BigRational; 3]);

impl VarMap {
    pub fn new(a: BigRational, p: BigRational, c: BigRational) -> Self {
        VarMap([a, p, c])
    }

    pub fn from_fn(mut f: impl FnMut(Var) -> BigRational) -> Self {
        VarMap([f(Var::A), f(Var::P), f(Var::C)])
    }

    pub fn ones() -> Self {
        Self::from_fn(|_| BigRational::one())
    }

    pub fn zeros() -> Self {
        Self::from_fn(|_| BigRational::zero())
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|x| x.is_one())
    }
}

impl Index<Var> for VarMap {
    type Output = BigRational;

    fn index(&self, v: Var) -> &BigRational {
        &self.0[v.index()]
    }
}

/// Exponent vector of a single term. A zero exponent means the variable
/// is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    exponents: [BigRational; 3],
}

impl Monomial {
    /// The empty product, exponent zero everywhere.
    pub fn one() -> Self {
        Monomial {
            exponents: [BigRational::zero(), BigRational::zero(), BigRational::zero()],
        }
    }

    pub fn from_exponents(a: BigRational, p: BigRational, c: BigRational) -> Self {
        Monomial { exponents: [a, p, c] }
    }

    pub fn from_integer_exponents(a: i64, p: i64, c: i64) -> Self {
        Self::from_exponents(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(p.into()),
            BigRational::from_integer(c.into()),
        )
    }

    pub fn exponent(&self, v: Var) -> &BigRational {
        &self.exponents[v.index()]
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(|e| e.is_zero())
    }

    pub fn all_integer_exponents(&self) -> bool {
        self.exponents.iter().all(|e| e.is_integer())
    }

    fn shifted(&self, shifts: &VarMap) -> Monomial {
        Monomial {
            exponents: [
                &self.exponents[0] - &shifts[Var::A],
                &self.exponents[1] - &shifts[Var::P],
                &self.exponents[2] - &shifts[Var::C],
            ],
        }
    }
}

/// Canonical term order: ascending in the `a` exponent, within a group
/// descending in `c`, remaining ties descending in `p`. `BTreeMap`
/// iteration then yields terms already in print order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exponent(Var::A)
            .cmp(other.exponent(Var::A))
            .then_with(|| other.exponent(Var::C).cmp(self.exponent(Var::C)))
            .then_with(|| other.exponent(Var::P).cmp(self.exponent(Var::P)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("irrational power: exponent {exponent} of {var} at a point other than 1")]
    IrrationalPower { var: Var, exponent: String },
    #[error("zero raised to negative exponent {exponent}")]
    ZeroToNegativePower { exponent: String },
    #[error("exponent {exponent} out of evaluation range")]
    ExponentOutOfRange { exponent: String },
}

/// Sparse polynomial: exponent vector to nonzero coefficient. Equality
/// is term-set equality, independent of how the terms were inserted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(value: BigRational) -> Self {
        let mut poly = Polynomial::zero();
        poly.add_term(value, Monomial::one());
        poly
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> BigRational {
        self.terms.get(monomial).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Merge one term in, dropping the slot if the coefficient cancels.
    pub fn add_term(&mut self, coeff: BigRational, monomial: Monomial) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&monomial) {
            Some(existing) => {
                *existing += coeff;
                if existing.is_zero() {
                    self.terms.remove(&monomial);
                }
            }
            None => {
                self.terms.insert(monomial, coeff);
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, k) in other.terms() {
            out.add_term(k.clone(), m.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, k: &BigRational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Sum of coefficients, which is also the value at the all-ones point.
    pub fn coefficient_sum(&self) -> BigRational {
        self.terms.values().sum()
    }

    pub fn all_integer_exponents(&self) -> bool {
        self.terms.keys().all(|m| m.all_integer_exponents())
    }

    /// Evaluate at a point. Rational exponents are only meaningful at
    /// the all-ones point; anywhere else every exponent must be an
    /// integer.
    pub fn evaluate(&self, point: &VarMap) -> Result<BigRational, PolyError> {
        if point.is_all_ones() {
            return Ok(self.coefficient_sum());
        }
        let mut total = BigRational::zero();
        for (monomial, coeff) in &self.terms {
            let mut value = coeff.clone();
            for v in Var::ALL {
                let exponent = monomial.exponent(v);
                if exponent.is_zero() {
                    continue;
                }
                let base = &point[v];
                if base.is_one() {
                    continue;
                }
                if !exponent.is_integer() {
                    return Err(PolyError::IrrationalPower {
                        var: v,
                        exponent: exponent.to_string(),
                    });
                }
                let e: i32 = exponent
                    .to_integer()
                    .try_into()
                    .map_err(|_| PolyError::ExponentOutOfRange {
                        exponent: exponent.to_string(),
                    })?;
                let powered = pow_rational(base, e).ok_or_else(|| PolyError::ZeroToNegativePower {
                    exponent: exponent.to_string(),
                })?;
                value *= powered;
            }
            total += value;
        }
        Ok(total)
    }

    /// The Euler operator θ_v = v·∂/∂v: multiply each coefficient by the
    /// term's v-exponent. Exponents are untouched; terms with a zero
    /// v-exponent vanish.
    pub fn euler_derivative(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (monomial, coeff) in &self.terms {
            out.add_term(coeff * monomial.exponent(v), monomial.clone());
        }
        out
    }

    /// Divide by `a^shifts[A] * p^shifts[P] * c^shifts[C]`, i.e. lower
    /// every exponent vector by `shifts`.
    pub fn center_exponents(&self, shifts: &VarMap) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.shifted(shifts), c.clone()))
                .collect(),
        }
    }

    /// Largest exponent of `v` across terms; `None` for the zero
    /// polynomial.
    pub fn degree(&self, v: Var) -> Option<BigRational> {
        self.terms.keys().map(|m| m.exponent(v)).max().cloned()
    }

    /// Smallest exponent of `v` across terms; `None` for the zero
    /// polynomial.
    pub fn min_exponent(&self, v: Var) -> Option<BigRational> {
        self.terms.keys().map(|m| m.exponent(v)).min().cloned()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_canonical(self))
    }
}

/// The record's weight `a^age * p^pubs * c^cites` as a one-term
/// polynomial with coefficient 1.
pub fn monomial_from_record(record: &FellowRecord) -> Polynomial {
    let monomial = Monomial::from_exponents(
        BigRational::from_integer(record.age.into()),
        BigRational::from_integer(record.publications.into()),
        BigRational::from_integer(record.citations.into()),
    );
    let mut poly = Polynomial::zero();
    poly.add_term(BigRational::one(), monomial);
    poly
}

/// The corpus weight enumerator: the sum of every record's weight.
/// Records sharing a triple merge into one term with a counting
/// coefficient, so the all-ones value is always the corpus size.
pub fn build_enumerator(corpus: &Corpus) -> Polynomial {
    let mut poly = Polynomial::zero();
    for record in &corpus.records {
        let monomial = Monomial::from_exponents(
            BigRational::from_integer(record.age.into()),
            BigRational::from_integer(record.publications.into()),
            BigRational::from_integer(record.citations.into()),
        );
        poly.add_term(BigRational::one(), monomial);
    }
    poly
}

#[cfg(test)]
pub(crate) fn big_rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::traits::Pow;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn record(age: i32, pubs: u64, cites: u64) -> FellowRecord {
        FellowRecord::new("T", 1900, 1900 + age, pubs, cites).unwrap()
    }

    fn term(coeff: i64, a: i64, p: i64, c: i64) -> Polynomial {
        let mut poly = Polynomial::zero();
        poly.add_term(int(coeff), Monomial::from_integer_exponents(a, p, c));
        poly
    }

    #[test]
    fn record_monomial_matches_triple() {
        let nevins = record(48, 24, 173);
        let poly = monomial_from_record(&nevins);
        assert_eq!(poly.num_terms(), 1);
        assert_eq!(poly.coefficient(&Monomial::from_integer_exponents(48, 24, 173)), int(1));
    }

    #[test]
    fn zero_triple_gives_constant_one() {
        let degenerate = FellowRecord {
            name: "Z".into(),
            birth_year: 1900,
            death_year: 1900,
            age: 0,
            publications: 0,
            citations: 0,
        };
        assert_eq!(monomial_from_record(&degenerate), Polynomial::constant(int(1)));
    }

    #[test]
    fn enumerator_merges_identical_triples() {
        let corpus = Corpus::new(vec![record(80, 10, 100), record(80, 10, 100)], "t");
        let f = build_enumerator(&corpus);
        assert_eq!(f.num_terms(), 1);
        assert_eq!(f.coefficient(&Monomial::from_integer_exponents(80, 10, 100)), int(2));
        assert_eq!(f.evaluate(&VarMap::ones()).unwrap(), int(2));
    }

    #[test]
    fn empty_corpus_gives_zero_polynomial() {
        assert!(build_enumerator(&Corpus::new(vec![], "t")).is_zero());
    }

    #[test]
    fn addition_cancels_to_zero() {
        let x = term(1, 0, 0, 2);
        let y = term(-1, 0, 0, 2);
        assert!(x.add(&y).is_zero());
    }

    #[test]
    fn normalized_enumerator_sums_to_one() {
        let corpus = Corpus::new(
            vec![record(80, 10, 100), record(90, 20, 200), record(70, 5, 50)],
            "t",
        );
        let f = build_enumerator(&corpus).scale(&big_rational(1, 3));
        assert_eq!(f.evaluate(&VarMap::ones()).unwrap(), int(1));
    }

    #[test]
    fn evaluates_products_and_powers() {
        let cpa = term(1, 1, 1, 1);
        let value = cpa.evaluate(&VarMap::new(int(5), int(3), int(2))).unwrap();
        assert_eq!(value, int(30));

        let sq = term(3, 2, 0, 0).add(&term(1, 0, 0, 0));
        assert_eq!(sq.evaluate(&VarMap::new(int(4), int(1), int(1))).unwrap(), int(49));

        let inv = term(1, -2, 0, 0);
        assert_eq!(
            inv.evaluate(&VarMap::new(big_rational(1, 2), int(1), int(1))).unwrap(),
            int(4)
        );
    }

    #[test]
    fn rational_exponent_rejected_off_the_unit_point() {
        let mut centered = Polynomial::zero();
        centered.add_term(int(1), Monomial::from_exponents(big_rational(3, 2), int(0), int(0)));
        assert_eq!(centered.evaluate(&VarMap::ones()).unwrap(), int(1));
        let err = centered
            .evaluate(&VarMap::new(int(2), int(1), int(1)))
            .unwrap_err();
        assert!(matches!(err, PolyError::IrrationalPower { var: Var::A, .. }));
    }

    #[test]
    fn zero_base_negative_exponent_rejected() {
        let inv = term(1, -1, 0, 0);
        let err = inv.evaluate(&VarMap::new(int(0), int(1), int(1))).unwrap_err();
        assert!(matches!(err, PolyError::ZeroToNegativePower { .. }));
    }

    #[test]
    fn euler_operator_scales_by_exponent() {
        let a2 = term(1, 2, 0, 0);
        assert_eq!(a2.euler_derivative(Var::A), term(2, 2, 0, 0));
        assert!(Polynomial::zero().euler_derivative(Var::P).is_zero());
        // constant terms vanish
        assert!(Polynomial::constant(int(5)).euler_derivative(Var::C).is_zero());
    }

    #[test]
    fn euler_operators_commute() {
        let poly = term(3, 2, 5, 1).add(&term(-7, 0, 1, 4)).add(&term(2, 1, 0, 0));
        for u in Var::ALL {
            for v in Var::ALL {
                assert_eq!(
                    poly.euler_derivative(u).euler_derivative(v),
                    poly.euler_derivative(v).euler_derivative(u)
                );
            }
        }
    }

    #[test]
    fn iterated_euler_extracts_power_sums() {
        let poly = term(2, 3, 0, 0).add(&term(5, 7, 0, 0));
        let mut theta3 = poly.clone();
        for _ in 0..3 {
            theta3 = theta3.euler_derivative(Var::A);
        }
        let expected = int(2) * int(3).pow(3u32) + int(5) * int(7).pow(3u32);
        assert_eq!(theta3.evaluate(&VarMap::ones()).unwrap(), expected);
    }

    #[test]
    fn centering_shifts_exponents() {
        let a3 = term(1, 3, 0, 0);
        let shifted = a3.center_exponents(&VarMap::new(big_rational(3, 2), int(0), int(0)));
        let mut expected = Polynomial::zero();
        expected.add_term(int(1), Monomial::from_exponents(big_rational(3, 2), int(0), int(0)));
        assert_eq!(shifted, expected);

        assert_eq!(a3.center_exponents(&VarMap::zeros()), a3);
    }

    #[test]
    fn first_central_moment_vanishes_after_centering() {
        let corpus = Corpus::new(vec![record(70, 1, 1), record(90, 1, 1)], "t");
        let n = int(corpus.len() as i64);
        let f = build_enumerator(&corpus).scale(&(int(1) / &n));
        let mean_a = f.euler_derivative(Var::A).evaluate(&VarMap::ones()).unwrap();
        let centered = f.center_exponents(&VarMap::new(mean_a, int(1), int(1)));
        let first = centered.euler_derivative(Var::A).evaluate(&VarMap::ones()).unwrap();
        assert!(first.is_zero());
    }

    #[test]
    fn degree_and_min_exponent_track_columns() {
        let corpus = Corpus::new(
            vec![record(48, 24, 173), record(100, 93, 401), record(94, 5, 2)],
            "t",
        );
        let f = build_enumerator(&corpus);
        assert_eq!(f.degree(Var::A), Some(int(100)));
        assert_eq!(f.degree(Var::P), Some(int(93)));
        assert_eq!(f.degree(Var::C), Some(int(401)));
        assert_eq!(f.min_exponent(Var::A), Some(int(48)));
        assert_eq!(f.min_exponent(Var::P), Some(int(5)));
        assert_eq!(f.min_exponent(Var::C), Some(int(2)));
        assert_eq!(Polynomial::zero().degree(Var::A), None);
    }

    #[test]
    fn terms_iterate_in_canonical_order() {
        let poly = term(1, 59, 57, 1265)
            .add(&term(1, 59, 48, 2116))
            .add(&term(1, 48, 24, 173))
            .add(&term(1, 59, 48, 1265));
        let order: Vec<(i64, i64, i64)> = poly
            .terms()
            .map(|(m, _)| {
                let e = |v: Var| i64::try_from(m.exponent(v).to_integer()).unwrap();
                (e(Var::A), e(Var::P), e(Var::C))
            })
            .collect();
        // ascending a; within a-group descending c; ties descending p
        assert_eq!(
            order,
            vec![(48, 24, 173), (59, 48, 2116), (59, 57, 1265), (59, 48, 1265)]
        );
    }

    #[test]
    fn equality_ignores_insertion_order() {
        let mut x = Polynomial::zero();
        x.add_term(int(2), Monomial::from_integer_exponents(1, 0, 0));
        x.add_term(int(3), Monomial::from_integer_exponents(0, 1, 0));
        let mut y = Polynomial::zero();
        y.add_term(int(3), Monomial::from_integer_exponents(0, 1, 0));
        y.add_term(int(1), Monomial::from_integer_exponents(1, 0, 0));
        y.add_term(int(1), Monomial::from_integer_exponents(1, 0, 0));
        assert_eq!(x, y);
    }
}
