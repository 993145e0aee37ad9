//! Helpers shared by the integration test targets: locating the shipped
//! data files and loading them once per test.

#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use enumstat::corpus::SourceFormat;
use enumstat::{load_corpus, parse_polynomial, Corpus, Polynomial};

/// Path of a file in the workspace-level `data/` directory.
pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("..")
        .join("..")
        .join("data")
        .join(name)
}

pub fn records_path() -> PathBuf {
    data_path("ams_fellows_2022.records")
}

pub fn golden_path() -> PathBuf {
    data_path("lemma_enumerator.poly")
}

pub fn shipped_corpus() -> Corpus {
    let path = records_path();
    let file = fs::File::open(&path).expect("shipped record file opens");
    load_corpus(file, SourceFormat::RecordLines, path.display().to_string())
        .expect("shipped record file parses")
}

pub fn golden_text() -> String {
    fs::read_to_string(golden_path()).expect("golden polynomial file reads")
}

pub fn golden_polynomial() -> Polynomial {
    parse_polynomial(&golden_text()).expect("golden polynomial parses")
}
