//! Acceptance gate: one test per criterion. Each test prints a single
//! `PASS criterion NN` line once its assertions hold, so running this
//! target with `--nocapture` yields one pass/fail line per criterion.

mod common;

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use enumstat::numeric::{decimal_places, parse_decimal};
use enumstat::poly::{print_canonical, print_grouped, Monomial, Polynomial, VarMap};
use enumstat::report::{grouped_age_listing, rank_records, RankKey};
use enumstat::stats::{scaled_moment, MomentTable, StatsSummary, DEFAULT_PRECISION};
use enumstat::{
    build_enumerator, parse_polynomial, stats_summary, verify_moments, Corpus, FellowRecord,
    MultiIndex, Var,
};

/// Ascending (age, member count) pairs for every age represented in the
/// corpus. The counts sum to 145 across 37 groups.
const AGE_GROUPS: [(u64, usize); 37] = [
    (48, 1),
    (58, 2),
    (59, 2),
    (60, 1),
    (63, 1),
    (65, 2),
    (66, 3),
    (68, 1),
    (70, 1),
    (72, 1),
    (73, 2),
    (74, 4),
    (75, 3),
    (76, 4),
    (77, 2),
    (78, 4),
    (79, 5),
    (80, 5),
    (81, 5),
    (82, 7),
    (83, 6),
    (84, 9),
    (85, 5),
    (86, 6),
    (87, 6),
    (88, 9),
    (89, 13),
    (90, 4),
    (91, 6),
    (92, 3),
    (93, 8),
    (94, 4),
    (95, 3),
    (96, 3),
    (97, 2),
    (99, 1),
    (100, 1),
];

fn shipped_summary() -> StatsSummary {
    stats_summary(&common::shipped_corpus(), DEFAULT_PRECISION).expect("summary computes")
}

/// True when `value` sits within `units` of the last printed digit of
/// the published figure.
fn within_published(value: &BigRational, published: &str, units: i64) -> bool {
    let expected = parse_decimal(published).expect("published value parses");
    let scale = 10i64.pow(decimal_places(published) as u32);
    (value - expected).abs() <= BigRational::new(units.into(), scale.into())
}

fn assert_axis(
    summary: &StatsSummary,
    v: Var,
    published: [&str; 4],
    mean_tolerance: BigRational,
) {
    let axis = summary.axis(v);
    let mean_expected = parse_decimal(published[0]).expect("published mean parses");
    assert!(
        (&axis.mean - mean_expected).abs() <= mean_tolerance,
        "{v} mean {} is outside tolerance of {}",
        axis.mean,
        published[0]
    );
    for (value, target) in [
        (&axis.std_dev, published[1]),
        (&axis.skewness, published[2]),
        (&axis.kurtosis, published[3]),
    ] {
        assert!(
            within_published(value, target, 2),
            "{v} statistic {value} is outside tolerance of {target}"
        );
    }
}

fn random_corpus(rng: &mut ChaCha8Rng, tag: usize) -> Corpus {
    let population = rng.gen_range(1..=20);
    let records = (0..population)
        .map(|i| {
            let birth = rng.gen_range(1850..=1950);
            let age = rng.gen_range(1..=100);
            FellowRecord::new(
                format!("Synthetic {tag}-{i}"),
                birth,
                birth + age,
                rng.gen_range(0..=100),
                rng.gen_range(0..=100),
            )
            .expect("synthetic record is valid")
        })
        .collect();
    Corpus::new(records, "synthetic")
}

fn random_exponent(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        rng.gen_range(-50i64..=50).into(),
        rng.gen_range(1i64..=12).into(),
    )
}

fn random_polynomial(rng: &mut ChaCha8Rng) -> Polynomial {
    let terms = rng.gen_range(0..=12);
    let mut poly = Polynomial::zero();
    for _ in 0..terms {
        let coeff = BigRational::new(
            rng.gen_range(-999i64..=999).into(),
            rng.gen_range(1i64..=99).into(),
        );
        let monomial = Monomial::from_exponents(
            random_exponent(rng),
            random_exponent(rng),
            random_exponent(rng),
        );
        poly.add_term(coeff, monomial);
    }
    poly
}

#[test]
fn criterion_01_corpus_fidelity() {
    let corpus = common::shipped_corpus();
    assert_eq!(corpus.len(), 145);

    let listing = grouped_age_listing(&corpus);
    assert_eq!(listing.groups.len(), AGE_GROUPS.len());
    for (&(age, count), group) in AGE_GROUPS.iter().zip(listing.groups.iter().rev()) {
        assert_eq!(group.value, age);
        assert_eq!(group.records.len(), count, "age {age} group size");
    }

    let group = |age: u64| listing.groups.iter().find(|g| g.value == age).unwrap();
    assert_eq!(group(100).records[0].name, "Maurice H. Heins");
    assert_eq!(group(48).records[0].name, "Thomas Nevins");
    assert_eq!(group(89).records.len(), 13);

    println!("PASS criterion 01: corpus fidelity (145 records across 37 age groups)");
}

#[test]
fn criterion_02_enumerator_reproduction() {
    let corpus = common::shipped_corpus();
    let enumerator = build_enumerator(&corpus);
    assert_eq!(enumerator, common::golden_polynomial());
    assert_eq!(
        enumerator.evaluate(&VarMap::ones()).expect("all-ones evaluation"),
        BigRational::from_integer(145.into())
    );

    let int = |n: i64| Some(BigRational::from_integer(n.into()));
    assert_eq!(enumerator.degree(Var::A), int(100));
    assert_eq!(enumerator.degree(Var::P), int(453));
    assert_eq!(enumerator.degree(Var::C), int(27492));
    assert_eq!(enumerator.min_exponent(Var::A), int(48));
    assert_eq!(enumerator.min_exponent(Var::P), int(5));
    assert_eq!(enumerator.min_exponent(Var::C), int(2));

    println!("PASS criterion 02: weight enumerator matches the golden polynomial");
}

#[test]
fn criterion_03_age_statistics() {
    let summary = shipped_summary();
    // the published age mean is certified to five hundred-thousandths
    let mean_tolerance = BigRational::new(5.into(), 100_000.into());
    assert_axis(
        &summary,
        Var::A,
        ["83.3655", "9.343", "-1.079", "4.3277"],
        mean_tolerance,
    );
    println!("PASS criterion 03: age statistics match the published values");
}

#[test]
fn criterion_04_publication_statistics() {
    let summary = shipped_summary();
    let mean_tolerance = BigRational::new(2.into(), 1000.into());
    assert_axis(
        &summary,
        Var::P,
        ["98.531", "73.942", "1.757", "7.1779"],
        mean_tolerance,
    );
    println!("PASS criterion 04: publication statistics match the published values");
}

#[test]
fn criterion_05_citation_statistics() {
    let summary = shipped_summary();
    let mean_tolerance = BigRational::new(2.into(), 1000.into());
    assert_axis(
        &summary,
        Var::C,
        ["2473.234", "3455.194", "3.97", "23.993"],
        mean_tolerance,
    );
    println!("PASS criterion 05: citation statistics match the published values");
}

#[test]
fn criterion_06_correlations() {
    let summary = shipped_summary();
    let published = [
        (Var::A, Var::P, "0.003"),
        (Var::A, Var::C, "0.011"),
        (Var::P, Var::C, "0.57973"),
    ];
    for (u, v, target) in published {
        let value = summary.correlation(u, v).expect("correlation present");
        assert!(
            within_published(value, target, 2),
            "correlation {u}{v} = {value} is outside tolerance of {target}"
        );

        // Cauchy-Schwarz holds exactly on the rational moment table
        let covariance = summary
            .moments
            .central(MultiIndex::pair(u, v))
            .expect("covariance tabulated");
        let bound = summary.moments.variance(u).expect("variance tabulated")
            * summary.moments.variance(v).expect("variance tabulated");
        assert!(covariance * covariance <= bound, "|corr {u}{v}| exceeds 1");
    }
    println!("PASS criterion 06: correlations match and respect the Cauchy-Schwarz bound");
}

#[test]
fn criterion_07_oracle_equivalence() {
    let report = verify_moments(&common::shipped_corpus(), 4).expect("oracles run");
    assert!(report.means_match);
    assert!(report.all_match());
    assert_eq!(report.total(), 35);

    let mut rng = ChaCha8Rng::seed_from_u64(0x0f1e_2d3c);
    for case in 0..100 {
        let corpus = random_corpus(&mut rng, case);
        let report = verify_moments(&corpus, 4).expect("oracles run");
        assert!(
            report.means_match && report.all_match(),
            "oracles disagree on random corpus {case}"
        );
    }
    println!("PASS criterion 07: operator and direct oracles agree (shipped + 100 random corpora)");
}

#[test]
fn criterion_08_parser_printer_round_trip() {
    let enumerator = build_enumerator(&common::shipped_corpus());
    assert_eq!(
        parse_polynomial(&print_canonical(&enumerator)).expect("canonical listing parses"),
        enumerator
    );
    assert_eq!(
        parse_polynomial(&print_grouped(&enumerator)).expect("grouped listing parses"),
        enumerator
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0x4b5a_6978);
    for case in 0..1000 {
        let poly = random_polynomial(&mut rng);
        let canonical = print_canonical(&poly);
        assert_eq!(
            parse_polynomial(&canonical).expect("canonical form parses"),
            poly,
            "canonical round trip failed on case {case}: {canonical}"
        );
        let grouped = print_grouped(&poly);
        assert_eq!(
            parse_polynomial(&grouped).expect("grouped form parses"),
            poly,
            "grouped round trip failed on case {case}"
        );
    }
    println!("PASS criterion 08: printed polynomials parse back unchanged (enumerator + 1000 random)");
}

#[test]
fn criterion_09_ranking_fidelity() {
    let corpus = common::shipped_corpus();

    let pubs = rank_records(&corpus, RankKey::Publications);
    assert_eq!(pubs.entries.len(), 145);
    let top = &pubs.entries[0];
    assert_eq!(top.rank, 1);
    assert_eq!(top.record.name, "Jonathan Michael Borwein");
    assert_eq!((top.record.publications, top.record.citations), (453, 9810));
    let last = pubs.entries.last().expect("entries nonempty");
    assert_eq!(last.rank, 145);
    assert_eq!((last.record.publications, last.record.citations), (5, 2));
    for pair in pubs.entries.windows(2) {
        let (x, y) = (&pair[0].record, &pair[1].record);
        assert!(x.publications >= y.publications, "publication keys increase");
        if x.publications == y.publications {
            assert!(x.citations <= y.citations, "publication tie order");
        }
    }
    let pub_tie = |value: u64| -> Vec<(&str, u64)> {
        pubs.groups
            .iter()
            .find(|g| g.value == value)
            .expect("tie group present")
            .records
            .iter()
            .map(|r| (r.name.as_str(), r.citations))
            .collect()
    };
    assert_eq!(pub_tie(118), [("Harvey Cohn", 664), ("Paul Fife", 3509)]);
    assert_eq!(
        pub_tie(111),
        [("Wilhelmus Luxemburg", 1107), ("Nikolai Chernov", 1859)]
    );

    let cites = rank_records(&corpus, RankKey::Citations);
    let top = &cites.entries[0];
    assert_eq!(top.record.name, "Elias M. Stein");
    assert_eq!((top.record.publications, top.record.citations), (237, 27492));
    let second = &cites.entries[1];
    assert_eq!(second.record.name, "Louis Nirenberg");
    assert_eq!((second.record.publications, second.record.citations), (175, 17621));
    for pair in cites.entries.windows(2) {
        let (x, y) = (&pair[0].record, &pair[1].record);
        assert!(x.citations >= y.citations, "citation keys increase");
        if x.citations == y.citations {
            assert!(x.publications <= y.publications, "citation tie order");
        }
    }
    let cite_tie = |value: u64| -> BTreeSet<(&str, u64)> {
        cites
            .groups
            .iter()
            .find(|g| g.value == value)
            .expect("tie group present")
            .records
            .iter()
            .map(|r| (r.name.as_str(), r.publications))
            .collect()
    };
    assert_eq!(
        cite_tie(2116),
        BTreeSet::from([("John Roe", 48), ("Andras Hajnal", 164)])
    );
    assert_eq!(
        cite_tie(145),
        BTreeSet::from([("Samuel M. Rankin, III", 25), ("Steve Armentrout", 37)])
    );

    println!("PASS criterion 09: rankings reproduce the published appendix orderings");
}

fn translated(corpus: &Corpus, da: i32, dp: u64, dc: u64) -> Corpus {
    let records = corpus
        .records
        .iter()
        .map(|r| {
            FellowRecord::new(
                r.name.clone(),
                r.birth_year - da,
                r.death_year,
                r.publications + dp,
                r.citations + dc,
            )
            .expect("translated record is valid")
        })
        .collect();
    Corpus::new(records, "translated")
}

fn scaled(corpus: &Corpus, ka: i32, kp: u64, kc: u64) -> Corpus {
    let records = corpus
        .records
        .iter()
        .map(|r| {
            FellowRecord::new(
                r.name.clone(),
                r.death_year - r.age * ka,
                r.death_year,
                r.publications * kp,
                r.citations * kc,
            )
            .expect("scaled record is valid")
        })
        .collect();
    Corpus::new(records, "scaled")
}

#[test]
fn criterion_10_moment_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8697_a5b4);
    let mut corpora = vec![common::shipped_corpus()];
    corpora.extend((0..10).map(|i| random_corpus(&mut rng, 1000 + i)));

    let indices = MultiIndex::up_to_order(4);
    let odd_indices = [
        MultiIndex::new(3, 0, 0),
        MultiIndex::new(0, 3, 0),
        MultiIndex::new(0, 0, 3),
        MultiIndex::new(4, 0, 0),
        MultiIndex::new(0, 4, 0),
        MultiIndex::new(0, 0, 4),
        MultiIndex::new(1, 1, 0),
        MultiIndex::new(1, 0, 1),
        MultiIndex::new(0, 1, 1),
    ];
    let invariance_tolerance =
        BigRational::new(BigInt::one(), BigInt::from(10).pow(30));

    for (which, corpus) in corpora.iter().enumerate() {
        let base = MomentTable::operator_path(corpus, 4).expect("base table");

        // first central moments vanish identically
        for v in Var::ALL {
            assert!(
                base.central(MultiIndex::pure(v, 1)).expect("tabulated").is_zero(),
                "corpus {which}: first central moment of {v} is nonzero"
            );
        }

        // translating every column leaves all central moments unchanged
        let shifted = MomentTable::operator_path(&translated(corpus, 7, 11, 5), 4)
            .expect("shifted table");
        assert_eq!(
            shifted.mean(Var::A),
            &(base.mean(Var::A) + BigRational::from_integer(7.into()))
        );
        assert_eq!(
            shifted.mean(Var::P),
            &(base.mean(Var::P) + BigRational::from_integer(11.into()))
        );
        assert_eq!(
            shifted.mean(Var::C),
            &(base.mean(Var::C) + BigRational::from_integer(5.into()))
        );
        for &idx in &indices {
            assert_eq!(
                shifted.central(idx).expect("tabulated"),
                base.central(idx).expect("tabulated"),
                "corpus {which}: M{idx} changed under translation"
            );
        }

        // scaling the columns by (2, 3, 2) scales M(r,s,t) by 2^r 3^s 2^t
        let rescaled = MomentTable::operator_path(&scaled(corpus, 2, 3, 2), 4)
            .expect("scaled table");
        for &idx in &indices {
            let factor = BigRational::from_integer(
                BigInt::from(2).pow(idx.r) * BigInt::from(3).pow(idx.s) * BigInt::from(2).pow(idx.t),
            );
            assert_eq!(
                rescaled.central(idx).expect("tabulated"),
                &(base.central(idx).expect("tabulated") * factor),
                "corpus {which}: M{idx} violates scale equivariance"
            );
        }

        // the dimensionless checks need every variance to be positive
        let nondegenerate = Var::ALL
            .iter()
            .all(|&v| !base.variance(v).expect("tabulated").is_zero());
        if !nondegenerate {
            continue;
        }

        // pure second scaled moments are exactly one
        for v in Var::ALL {
            let alpha = scaled_moment(&base, MultiIndex::pure(v, 2), 40).expect("computed");
            assert!(alpha.is_one(), "corpus {which}: alpha_2({v}) != 1");
        }

        // scaled moments ignore positive column scaling to 30+ digits
        for &idx in &odd_indices {
            let before = scaled_moment(&base, idx, 40).expect("computed");
            let after = scaled_moment(&rescaled, idx, 40).expect("computed");
            assert!(
                (before - after).abs() < invariance_tolerance,
                "corpus {which}: alpha{idx} moved under scaling"
            );
        }

        // raw kurtosis dominates skewness^2 + 1, checked in cleared form
        for v in Var::ALL {
            let m2 = base.central(MultiIndex::pure(v, 2)).expect("tabulated");
            let m3 = base.central(MultiIndex::pure(v, 3)).expect("tabulated");
            let m4 = base.central(MultiIndex::pure(v, 4)).expect("tabulated");
            assert!(
                m4 * m2 >= (m3 * m3) + (m2 * m2) * m2,
                "corpus {which}: kurtosis bound fails on {v}"
            );
        }
    }
    println!("PASS criterion 10: moment properties hold (shipped + 10 random corpora)");
}
