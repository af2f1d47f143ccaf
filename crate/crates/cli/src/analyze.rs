//! The full analysis pipeline behind `unexp analyze`.

use sha2::{Digest, Sha256};

use unexp_core::config::{ConfigError, LineChart, PointConfig};
use unexp_core::construct::{self, ConstructError, Construction};
use unexp_core::derivmod::{self, DerivError};
use unexp_core::unexpect::{self, UnexpectError};
use unexp_core::Error;

use crate::report::{
    ConstructionSection, CorrectionEntry, ErrorReport, FieldEcho, InputEcho, LineEcho, LineVerification, PointEntry, Report,
    RowEntry, SplittingSection,
};

/// Exit codes shared by every subcommand.
pub mod exit {
    pub const OK: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const GENERICITY: i32 = 4;
    pub const FORMULA: i32 = 5;
    pub const ANALYSIS: i32 = 6;
    pub const IO: i32 = 7;
}

#[derive(Debug, Clone)]
pub struct AppError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl AppError {
    pub fn new(code: i32, kind: &'static str, message: impl Into<String>) -> Self {
        AppError { code, kind, message: message.into() }
    }

    pub fn report(&self) -> ErrorReport {
        ErrorReport { code: self.code, kind: self.kind.to_string(), message: self.message.clone() }
    }
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Config(ConfigError::RetryBudget { .. } | ConfigError::NotGeneric(_)) => AppError::new(exit::GENERICITY, "genericity", msg),
            Error::Config(_) => AppError::new(exit::PARSE, "parse", msg),
            Error::Unexpect(UnexpectError::FormulaMismatch { .. }) => AppError::new(exit::FORMULA, "formula-mismatch", msg),
            _ => AppError::new(exit::ANALYSIS, "analysis", msg),
        }
    }
}

macro_rules! from_core {
    ($($t:ty),*) => {$(
        impl From<$t> for AppError {
            fn from(e: $t) -> Self {
                Error::from(e).into()
            }
        }
    )*};
}
from_core!(ConfigError, DerivError, UnexpectError, ConstructError);

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub k: u32,
    pub seed: u64,
    pub coeff_bound: u32,
    pub degree_cap: Option<usize>,
    pub construct: bool,
    pub syzygy_degree: Option<usize>,
    pub verify_line: bool,
    /// 1-based point number whose multiplicity the construction maximizes.
    pub fat_point: Option<usize>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            k: 1,
            seed: 1,
            coeff_bound: unexp_core::config::DEFAULT_COEFF_BOUND,
            degree_cap: None,
            construct: false,
            syzygy_degree: None,
            verify_line: false,
            fat_point: None,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{:02x}", b)).collect()
}

pub fn analyze_text(text: &str, opts: &AnalyzeOptions) -> Result<Report, AppError> {
    let z = PointConfig::parse(text)?;
    analyze(&z, &sha256_hex(text.as_bytes()), opts)
}

pub fn analyze(z: &PointConfig, sha256: &str, opts: &AnalyzeOptions) -> Result<Report, AppError> {
    if opts.k == 0 {
        return Err(AppError::new(exit::USAGE, "usage", "--k must be at least 1"));
    }
    if z.n < 2 {
        return Err(AppError::new(exit::ANALYSIS, "analysis", "analysis needs ambient dimension n >= 2"));
    }
    if let Some(p) = opts.fat_point {
        if p == 0 || p > z.r() {
            return Err(AppError::new(exit::USAGE, "usage", format!("--fat-point must be between 1 and {}", z.r())));
        }
    }
    let chart = LineChart::sample(z, opts.seed, opts.coeff_bound)?;
    let split = derivmod::splitting_type(z, &chart, opts.k, opts.degree_cap)?;
    let st = &split.splitting;
    let dec = st.decomposition();

    let line_check = if opts.verify_line {
        let other = LineChart::sample(z, opts.seed.wrapping_add(1), opts.coeff_bound)?;
        let second = derivmod::splitting_type(z, &other, opts.k, opts.degree_cap)?;
        Some(LineVerification {
            seed: other.seed,
            exponents: second.splitting.exponents().to_vec(),
            agrees: second.splitting == *st,
        })
    } else {
        None
    };

    let construction = if opts.construct {
        let d = match opts.syzygy_degree {
            Some(d) => d,
            None => (0..dec.eps.len())
                .filter_map(|j| unexpect::criterion(st, opts.k, j).ok())
                .find(|r| r.unexpected)
                .map(|r| r.d as usize)
                .unwrap_or((dec.a.max(0)) as usize),
        };
        Some(build_construction(z, &chart, opts, d)?)
    } else {
        None
    };

    let mut rows = Vec::new();
    for j in 0..dec.eps.len() {
        let row = unexpect::criterion(st, opts.k, j)?;
        let fat: Vec<(usize, u32)> = match &construction {
            Some((c, _)) if c.d == row.d as usize => c.point_multiplicities.iter().copied().enumerate().filter(|(_, m)| *m >= 2).collect(),
            _ => Vec::new(),
        };
        let rep = unexpect::dimension_report(z, &chart, st, opts.k, j, &fat)?;
        rows.push(RowEntry {
            j,
            degree: rep.criterion.degree,
            d: rep.criterion.d,
            criterion_value: rep.criterion.value,
            unexpected: rep.criterion.unexpected,
            vdim: rep.vdim,
            vdim_fat_corrected: rep.vdim_fat,
            vdim_deficiency_corrected: rep.vdim_deficiency_corrected,
            adim: rep.adim,
            z_deficiency: rep.z_deficiency,
            corrections: rep
                .fat_points
                .iter()
                .map(|f| CorrectionEntry { point: f.index + 1, coords: PointConfig::render_point(&z.points[f.index]), multiplicity: f.multiplicity, conditions: f.conditions })
                .collect(),
        });
    }

    Ok(Report {
        input: InputEcho {
            sha256: sha256.to_string(),
            n: z.n,
            r: z.r(),
            field: FieldEcho { conductor: z.field.conductor(), name: field_name(z) },
        },
        line: LineEcho {
            seed: chart.seed,
            coeff_bound: chart.coeff_bound,
            a: chart.a.iter().map(|c| c.to_string()).collect(),
            b: chart.b.iter().map(|c| c.to_string()).collect(),
        },
        k: opts.k,
        splitting: SplittingSection {
            exponents: st.exponents().to_vec(),
            powers: st.render_powers(),
            a: dec.a,
            eps: dec.eps.clone(),
            t: dec.t.clone(),
            rank: st.rank(),
            h0: split.h0(),
            dk_dims: split.dims.iter().map(|d| d.0).collect(),
            euler_dims: split.dims.iter().map(|d| d.1).collect(),
        },
        rows,
        construction: construction.map(|(_, s)| s),
        line_verification: line_check,
    })
}

fn field_name(z: &PointConfig) -> String {
    if z.field.is_rational() {
        "rational".to_string()
    } else {
        format!("cyclotomic {}", z.field.conductor())
    }
}

fn build_construction(z: &PointConfig, chart: &LineChart, opts: &AnalyzeOptions, d: usize) -> Result<(Construction, ConstructionSection), AppError> {
    let family = construct::hypersurface_family(z, chart, opts.k, d)?;
    let polys: Vec<_> = family.iter().map(|(_, f)| f.clone()).collect();
    let (con, target) = match opts.fat_point {
        Some(p) => {
            let (_, con) = construct::construct_fat(z, chart, opts.k, d, p - 1)?;
            (con, Some(p))
        }
        None => (construct::construct(z, chart, opts.k, d)?, None),
    };
    let attainable: Vec<u32> = z.points.iter().map(|p| construct::fat_point_scan(&polys, p).map(|(m, _)| m).unwrap_or(0)).collect();
    let points = z
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| PointEntry {
            point: i + 1,
            coords: PointConfig::render_point(p),
            multiplicity: con.point_multiplicities[i],
            attainable: attainable[i],
        })
        .collect();
    let section = ConstructionSection {
        syzygy_degree: d,
        family_dimension: family.len(),
        fat_point_target: target,
        equation: con.hypersurface.render("X"),
        degree: con.degree,
        expected_degree: d as u32 + opts.k,
        multiplicity_along_subspace: con.multiplicity_along,
        vanishes_on_z: con.vanishes_on_z,
        points,
    };
    Ok((con, section))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_known_vector() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn rejects_planar_input_below_two() {
        let err = analyze_text("dim 1\npoint 1 0\npoint 0 1\n", &AnalyzeOptions::default()).unwrap_err();
        assert_ne!(err.code, exit::OK);
    }

    #[test]
    fn parse_errors_map_to_parse_code() {
        let err = analyze_text("dim 2\npoint 1 0\n", &AnalyzeOptions::default()).unwrap_err();
        assert_eq!(err.code, exit::PARSE);
    }
}
