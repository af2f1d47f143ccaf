//! Report data model with deterministic text and JSON renderings.

use std::fmt::Write;

use serde::Serialize;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub input: InputEcho,
    pub line: LineEcho,
    pub k: u32,
    pub splitting: SplittingSection,
    pub rows: Vec<RowEntry>,
    pub construction: Option<ConstructionSection>,
    pub line_verification: Option<LineVerification>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct InputEcho {
    pub sha256: String,
    pub n: usize,
    pub r: usize,
    pub field: FieldEcho,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct FieldEcho {
    pub conductor: u32,
    pub name: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct LineEcho {
    pub seed: u64,
    pub coeff_bound: u32,
    pub a: Vec<String>,
    pub b: Vec<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SplittingSection {
    pub exponents: Vec<i64>,
    pub powers: String,
    pub a: i64,
    pub eps: Vec<i64>,
    pub t: Vec<usize>,
    pub rank: usize,
    pub h0: Vec<i64>,
    pub dk_dims: Vec<usize>,
    pub euler_dims: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RowEntry {
    pub j: usize,
    pub degree: u32,
    pub d: u32,
    pub criterion_value: i64,
    pub unexpected: bool,
    pub vdim: i64,
    pub vdim_fat_corrected: i64,
    pub vdim_deficiency_corrected: i64,
    pub adim: usize,
    pub z_deficiency: usize,
    pub corrections: Vec<CorrectionEntry>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CorrectionEntry {
    pub point: usize,
    pub coords: String,
    pub multiplicity: u32,
    pub conditions: i64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ConstructionSection {
    pub syzygy_degree: usize,
    pub family_dimension: usize,
    pub fat_point_target: Option<usize>,
    pub equation: String,
    pub degree: u32,
    pub expected_degree: u32,
    pub multiplicity_along_subspace: u32,
    pub vanishes_on_z: bool,
    pub points: Vec<PointEntry>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PointEntry {
    pub point: usize,
    pub coords: String,
    pub multiplicity: u32,
    /// Highest multiplicity at this point reached inside the family.
    pub attainable: u32,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct LineVerification {
    pub seed: u64,
    pub exponents: Vec<i64>,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ErrorReport {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn error_json(err: &ErrorReport) -> String {
    let mut s = serde_json::to_string_pretty(&serde_json::json!({ "error": err })).expect("error serializes");
    s.push('\n');
    s
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn to_text(r: &Report) -> String {
    let mut o = String::new();
    let _ = writeln!(o, "input     sha256 {}", r.input.sha256);
    let _ = writeln!(o, "          n = {}, r = {}, field {}", r.input.n, r.input.r, r.input.field.name);
    let _ = writeln!(o, "line      seed {}, coefficient bound {}", r.line.seed, r.line.coeff_bound);
    let _ = writeln!(o, "          A = ({})", r.line.a.join(":"));
    let _ = writeln!(o, "          B = ({})", r.line.b.join(":"));
    let _ = writeln!(o, "order     k = {}", r.k);
    let s = &r.splitting;
    let _ = writeln!(o);
    let _ = writeln!(o, "splitting type ({})  rank {}  [{}]", join(&s.exponents), s.rank, s.powers);
    let _ = writeln!(o, "  a = {}, eps = ({}), t = ({})", s.a, join(&s.eps), join(&s.t));
    let _ = writeln!(o, "  {:>3} {:>8} {:>8} {:>8}", "d", "dk", "euler", "h0");
    for (d, h) in s.h0.iter().enumerate() {
        let _ = writeln!(o, "  {:>3} {:>8} {:>8} {:>8}", d, s.dk_dims[d], s.euler_dims[d], h);
    }
    if let Some(v) = &r.line_verification {
        let _ = writeln!(o, "  second line (seed {}): ({}) {}", v.seed, join(&v.exponents), if v.agrees { "agrees" } else { "DISAGREES" });
    }
    let _ = writeln!(o);
    let _ = writeln!(o, "criterion");
    let _ = writeln!(
        o,
        "  {:>2} {:>8} {:>6} {:>10} {:>6} {:>9} {:>9} {:>6} {:>6}",
        "j", "(D,d)", "value", "unexpected", "vdim", "vdim_fat", "vdim_corr", "adim", "z_def"
    );
    for row in &r.rows {
        let _ = writeln!(
            o,
            "  {:>2} {:>8} {:>6} {:>10} {:>6} {:>9} {:>9} {:>6} {:>6}",
            row.j,
            format!("({},{})", row.degree, row.d),
            row.criterion_value,
            yes(row.unexpected),
            row.vdim,
            row.vdim_fat_corrected,
            row.vdim_deficiency_corrected,
            row.adim,
            row.z_deficiency
        );
        for c in &row.corrections {
            let _ = writeln!(o, "       fat point {} {} multiplicity {} ({} conditions)", c.point, c.coords, c.multiplicity, c.conditions);
        }
    }
    if let Some(c) = &r.construction {
        let _ = writeln!(o);
        let _ = writeln!(o, "construction from degree-{} syzygies (family dimension {})", c.syzygy_degree, c.family_dimension);
        if let Some(p) = c.fat_point_target {
            let _ = writeln!(o, "  member maximizing the multiplicity at point {}", p);
        }
        let _ = writeln!(o, "  S = {}", c.equation);
        let _ = writeln!(o, "  degree {} (at most {}), multiplicity along H {}, vanishes on Z: {}", c.degree, c.expected_degree, c.multiplicity_along_subspace, yes(c.vanishes_on_z));
        let _ = writeln!(o, "  {:>5} {:>24} {:>5} {:>10}", "point", "coordinates", "mult", "attainable");
        for p in &c.points {
            let _ = writeln!(o, "  {:>5} {:>24} {:>5} {:>10}", p.point, p.coords, p.multiplicity, p.attainable);
        }
    }
    o
}
