#![allow(dead_code)]

use std::path::PathBuf;

use sinc_bound::{CaseTag, FunctionClass};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn rows(name: &str) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(data_path(name)).expect("oracle table");
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

/// Distance in units in the last place between two finite doubles of the same sign.
pub fn ulps(a: f64, b: f64) -> u64 {
    let (x, y) = (a.to_bits() as i64, b.to_bits() as i64);
    (x - y).unsigned_abs()
}

pub struct ParamCase {
    pub kind: String,
    pub alpha: f64,
    pub beta: f64,
    pub d: f64,
    pub n: usize,
    pub h: f64,
    pub m: usize,
    pub n_upper: usize,
}

impl ParamCase {
    pub fn class(&self) -> FunctionClass<f64> {
        let case = match self.kind.as_str() {
            "se" => CaseTag::SeCase2,
            "de" => CaseTag::DeCase2,
            "de3" => CaseTag::DeCase3,
            other => panic!("unknown kind {other}"),
        };
        FunctionClass::new(case, 1.0, self.alpha, self.beta, self.d).expect("corpus class")
    }
}

pub fn param_corpus() -> Vec<ParamCase> {
    rows("params_corpus.csv")
        .into_iter()
        .map(|r| ParamCase {
            kind: r[0].clone(),
            alpha: r[1].parse().unwrap(),
            beta: r[2].parse().unwrap(),
            d: r[3].parse().unwrap(),
            n: r[4].parse().unwrap(),
            h: r[5].parse().unwrap(),
            m: r[7].parse().unwrap(),
            n_upper: r[8].parse().unwrap(),
        })
        .collect()
}

pub struct ConstantCase {
    pub source: String,
    pub case: CaseTag,
    pub k: f64,
    pub alpha: f64,
    pub beta: f64,
    pub d: f64,
    pub c: f64,
}

pub fn constant_table() -> Vec<ConstantCase> {
    rows("constants.csv")
        .into_iter()
        .map(|r| ConstantCase {
            source: r[0].clone(),
            case: match r[1].as_str() {
                "se1" => CaseTag::SeCase1,
                "se2" => CaseTag::SeCase2,
                "se3" => CaseTag::SeCase3,
                "de1" => CaseTag::DeCase1,
                "de2" => CaseTag::DeCase2,
                "de3" => CaseTag::DeCase3,
                other => panic!("unknown case {other}"),
            },
            k: r[2].parse().unwrap(),
            alpha: r[3].parse().unwrap(),
            beta: r[4].parse().unwrap(),
            d: r[5].parse().unwrap(),
            c: r[6].parse().unwrap(),
        })
        .collect()
}
