#![allow(dead_code)]

use std::path::PathBuf;

use unexp_core::config::{LineChart, PointConfig};

pub fn fixture(name: &str) -> PointConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
    PointConfig::parse(&text).unwrap()
}

pub fn crystallographic() -> PointConfig {
    fixture("p4_crystallographic.pts")
}

pub fn fermat() -> PointConfig {
    fixture("p3_fermat.pts")
}

pub fn chart(z: &PointConfig, seed: u64) -> LineChart {
    LineChart::sample(z, seed, 101).unwrap()
}
