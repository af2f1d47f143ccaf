//! Fixture acceptance checks. Each check returns an [`Outcome`]; the
//! `verify-fixtures` subcommand and the acceptance test target both run them.

use std::path::Path;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unexp_core::config::{LineChart, PointConfig};
use unexp_core::construct;
use unexp_core::derivmod::{self, SplittingAnalysis, SplittingType};
use unexp_core::scalars::{FieldSpec, Scalar};
use unexp_core::unexpect;

use crate::analyze::{analyze, sha256_hex, AnalyzeOptions};
use crate::report::{to_json, to_text};

pub const CRYSTALLOGRAPHIC: &str = include_str!("../../../fixtures/p4_crystallographic.pts");
pub const FERMAT: &str = include_str!("../../../fixtures/p3_fermat.pts");

pub const CRYSTALLOGRAPHIC_EXPONENTS: [i64; 4] = [4, 5, 7, 8];
/// `0^9 1^3 2^4 3^2 4^1`.
pub const FERMAT_EXPONENTS: [i64; 19] = [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 2, 2, 2, 2, 3, 3, 4];
/// `(D, d, vdim, adim)`.
pub const CRYSTALLOGRAPHIC_TABLE: [(u32, u32, i64, usize); 3] = [(5, 4, -4, 1), (6, 5, 0, 3), (8, 7, 9, 9)];
pub const CRYSTALLOGRAPHIC_CRITERION: [(i64, bool); 3] = [(5, true), (3, true), (0, false)];
pub const CRYSTALLOGRAPHIC_BUDGET: Duration = Duration::from_secs(60);
pub const FERMAT_BUDGET: Duration = Duration::from_secs(15 * 60);
/// The point `(0:1:0:0)`, 0-based.
pub const FERMAT_TRIPLE_POINT: usize = 1;
pub const SEEDS: [u64; 2] = [1, 2];

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!("{} criterion {:>2}: {} -- {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.title, self.detail)
    }
}

struct Cached {
    config: PointConfig,
    k: u32,
    chart: LineChart,
    split: OnceLock<Result<(SplittingAnalysis, Duration), String>>,
}

impl Cached {
    fn new(config: PointConfig, k: u32) -> Self {
        let chart = LineChart::sample(&config, SEEDS[0], unexp_core::config::DEFAULT_COEFF_BOUND).expect("fixture admits a generic line");
        Cached { config, k, chart, split: OnceLock::new() }
    }

    fn split(&self) -> Result<&(SplittingAnalysis, Duration), String> {
        self.split
            .get_or_init(|| {
                let t = Instant::now();
                derivmod::splitting_type(&self.config, &self.chart, self.k, None).map(|s| (s, t.elapsed())).map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// The two fixture configurations with lazily cached splitting data.
pub struct Fixtures {
    crystal: Cached,
    fermat: Cached,
    crystal_text: String,
    fermat_text: String,
}

impl Fixtures {
    pub fn embedded() -> Self {
        Self::from_texts(CRYSTALLOGRAPHIC.to_string(), FERMAT.to_string()).expect("embedded fixtures parse")
    }

    pub fn from_dir(dir: &Path) -> Result<Self, String> {
        let read = |name: &str| std::fs::read_to_string(dir.join(name)).map_err(|e| format!("{}: {}", dir.join(name).display(), e));
        Self::from_texts(read("p4_crystallographic.pts")?, read("p3_fermat.pts")?)
    }

    pub fn from_texts(crystal_text: String, fermat_text: String) -> Result<Self, String> {
        let c = PointConfig::parse(&crystal_text).map_err(|e| format!("crystallographic fixture: {}", e))?;
        let f = PointConfig::parse(&fermat_text).map_err(|e| format!("Fermat fixture: {}", e))?;
        Ok(Fixtures { crystal: Cached::new(c, 1), fermat: Cached::new(f, 3), crystal_text, fermat_text })
    }
}

fn outcome(id: u32, title: &'static str, result: Result<(bool, String), String>) -> Outcome {
    match result {
        Ok((pass, detail)) => Outcome { id, title, pass, detail },
        Err(e) => Outcome { id, title, pass: false, detail: format!("error: {}", e) },
    }
}

fn fmt_exps(e: &[i64]) -> String {
    SplittingType::new(e.to_vec()).render_powers()
}

pub fn criterion_1(fx: &Fixtures) -> Outcome {
    outcome(1, "crystallographic splitting type", (|| {
        let (s, t) = fx.crystal.split()?;
        let ok = s.splitting.exponents() == CRYSTALLOGRAPHIC_EXPONENTS && *t < CRYSTALLOGRAPHIC_BUDGET;
        Ok((ok, format!("got {} expected (4,5,7,8) in {:.2}s (budget {}s)", s.splitting, t.as_secs_f64(), CRYSTALLOGRAPHIC_BUDGET.as_secs())))
    })())
}

pub fn criterion_2(fx: &Fixtures) -> Outcome {
    outcome(2, "crystallographic dimension table", (|| {
        let c = &fx.crystal;
        let mut ok = true;
        let mut parts = Vec::new();
        for (degree, d, want_v, want_a) in CRYSTALLOGRAPHIC_TABLE {
            let v = unexpect::vdim(c.config.n, c.k, d, c.config.r(), &[]).map_err(|e| e.to_string())?;
            let a = unexpect::adim(&c.config, &c.chart, d, degree).map_err(|e| e.to_string())?;
            let good = v == want_v && a == want_a;
            ok &= good;
            parts.push(format!("({},{}) vdim {} adim {} [want {} {}]{}", degree, d, v, a, want_v, want_a, if good { "" } else { " MISMATCH" }));
        }
        Ok((ok, parts.join("; ")))
    })())
}

pub fn criterion_3(fx: &Fixtures) -> Outcome {
    outcome(3, "crystallographic criterion values", (|| {
        let (s, _) = fx.crystal.split()?;
        let mut got = Vec::new();
        for j in 0..3 {
            let r = unexpect::criterion(&s.splitting, 1, j).map_err(|e| e.to_string())?;
            got.push((r.value, r.unexpected));
        }
        Ok((got == CRYSTALLOGRAPHIC_CRITERION, format!("got {:?} expected {:?}", got, CRYSTALLOGRAPHIC_CRITERION)))
    })())
}

pub fn criterion_4(fx: &Fixtures) -> Outcome {
    outcome(4, "Fermat splitting type", (|| {
        let (s, t) = fx.fermat.split()?;
        let ok = s.splitting.exponents() == FERMAT_EXPONENTS && *t < FERMAT_BUDGET;
        Ok((ok, format!("got {} expected {} in {:.2}s (budget {}s)", s.splitting.render_powers(), fmt_exps(&FERMAT_EXPONENTS), t.as_secs_f64(), FERMAT_BUDGET.as_secs())))
    })())
}

pub fn criterion_5(fx: &Fixtures) -> Outcome {
    outcome(5, "Fermat dimension counts", (|| {
        let f = &fx.fermat;
        let zd = unexpect::z_deficiency(&f.config, 4);
        let a = unexpect::adim(&f.config, &f.chart, 1, 4).map_err(|e| e.to_string())?;
        let (m, _) = construct::construct_fat(&f.config, &f.chart, 3, 1, FERMAT_TRIPLE_POINT).map_err(|e| e.to_string())?;
        let v = unexpect::vdim(3, 3, 1, f.config.r() - 1, &[m]).map_err(|e| e.to_string())?;
        let corrected = v + zd as i64;
        let ok = zd == 4 && a == 3 && m == 3 && v == -10 && corrected == -6;
        Ok((ok, format!("z_deficiency {} adim {} triple-point vdim {} corrected {} [want 4 3 -10 -6]", zd, a, v, corrected)))
    })())
}

pub fn criterion_6(fx: &Fixtures) -> Outcome {
    outcome(6, "constructed hypersurfaces", (|| {
        let f = &fx.fermat;
        let (_, fat) = construct::construct_fat(&f.config, &f.chart, 3, 1, FERMAT_TRIPLE_POINT).map_err(|e| e.to_string())?;
        let fermat_ok = fat.vanishes_on_z && fat.multiplicity_along >= 1 && fat.point_multiplicities[FERMAT_TRIPLE_POINT] == 3 && fat.degree == 4;
        let c = &fx.crystal;
        let con = construct::construct(&c.config, &c.chart, 1, 4).map_err(|e| e.to_string())?;
        let crystal_ok = con.point_multiplicities.iter().all(|&m| m == 1) && con.multiplicity_along >= 4;
        Ok((
            fermat_ok && crystal_ok,
            format!(
                "Fermat quartic: vanishes {} along-H {} mult at (0:1:0:0) {}; crystallographic quintic: point multiplicities {:?}",
                fat.vanishes_on_z, fat.multiplicity_along, fat.point_multiplicities[FERMAT_TRIPLE_POINT], {
                    let mut m = con.point_multiplicities.clone();
                    m.dedup();
                    m
                }
            ),
        ))
    })())
}

pub fn criterion_7() -> Outcome {
    outcome(7, "condition-count closed form", (|| {
        let mut cases = 0;
        for n in 2..=5 {
            for d in 1..=8 {
                for k in 1..=6 {
                    unexpect::codim2_conditions(n, d, k).map_err(|e| e.to_string())?;
                    cases += 1;
                }
            }
        }
        Ok((true, format!("{} cases (n 2..5, d 1..8, k 1..6) agree exactly", cases)))
    })())
}

fn isomorphism(c: &Cached) -> Result<(bool, String), String> {
    let (s, _) = c.split()?;
    let mut bad = Vec::new();
    let h = s.h0();
    for (d, &v) in h.iter().enumerate() {
        let a = unexpect::adim(&c.config, &c.chart, d as u32, d as u32 + c.k).map_err(|e| e.to_string())? as i64;
        let sum = s.splitting.sections(d as i64);
        if a != v || sum != v {
            bad.push(format!("d={} h0 {} adim {} sum {}", d, v, a, sum));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("d 0..{} agree", h.len() - 1) } else { bad.join("; ") }))
}

pub fn criterion_8(fx: &Fixtures) -> Outcome {
    outcome(8, "h0 = adim = splitting sections", (|| {
        let (a, da) = isomorphism(&fx.crystal)?;
        let (b, db) = isomorphism(&fx.fermat)?;
        Ok((a && b, format!("crystallographic: {}; Fermat: {}", da, db)))
    })())
}

/// A random rational configuration: `n` in {2,3}, `n+2 ≤ r ≤ 12`, small coordinates.
pub fn random_config(rng: &mut ChaCha8Rng) -> (PointConfig, u32) {
    let field = FieldSpec::rational();
    let n = rng.gen_range(2..=3usize);
    let r = rng.gen_range(n + 2..=12usize);
    let k = rng.gen_range(1..=2u32);
    let mut points: Vec<Vec<Scalar>> = Vec::new();
    while points.len() < r {
        let p: Vec<Scalar> = (0..=n).map(|_| Scalar::from_int(&field, rng.gen_range(-4..=4))).collect();
        let mut trial = points.clone();
        trial.push(p);
        if PointConfig::new(&field, n, trial.clone()).is_ok() {
            points = trial;
        }
    }
    (PointConfig::new(&field, n, points).expect("validated"), k)
}

/// Checks the four hypersurface properties on one configuration; returns a
/// summary or the first violation.
pub fn theorem_properties(z: &PointConfig, k: u32, rng: &mut ChaCha8Rng) -> Result<String, String> {
    let chart = LineChart::sample(z, 1, unexp_core::config::DEFAULT_COEFF_BOUND).map_err(|e| e.to_string())?;
    let split = derivmod::splitting_type(z, &chart, k, None).map_err(|e| e.to_string())?;
    let d = split.h0().iter().position(|&h| h > 0).ok_or("no positive h0")?;
    let family = construct::hypersurface_family(z, &chart, k, d).map_err(|e| e.to_string())?;
    if family.is_empty() {
        return Err(format!("empty family in degree {}", d));
    }
    for (g, f) in &family {
        let mut sampled = 0;
        while sampled < 20 {
            let s0 = Scalar::from_int(&z.field, rng.gen_range(-1000..=1000));
            let t0 = Scalar::from_int(&z.field, rng.gen_range(1..=1000));
            if chart.params.iter().any(|(s, t)| (&(&s0 * t) - &(s * &t0)).is_zero()) {
                continue;
            }
            if construct::is_underdetermined(g, &chart, &s0, &t0) {
                return Err(format!("underdetermined at ({}:{})", s0, t0));
            }
            sampled += 1;
        }
        let deg = f.degree().unwrap_or(0);
        if deg > d as u32 + k {
            return Err(format!("degree {} exceeds {}", deg, d as u32 + k));
        }
        if z.points.iter().any(|p| !f.evaluate(p).expect("length").is_zero()) {
            return Err("does not vanish on Z".into());
        }
        let along = construct::multiplicity_along_subspace(f, &chart);
        if along < d as u32 {
            return Err(format!("multiplicity {} along H below {}", along, d));
        }
    }
    Ok(format!("n={} r={} k={} d={} family {} [{}]", z.n, z.r(), k, d, family.len(), split.splitting))
}

pub fn criterion_9() -> Outcome {
    outcome(9, "hypersurface properties on random configurations", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut parts = Vec::new();
        let mut ok = true;
        for _ in 0..5 {
            let (z, k) = random_config(&mut rng);
            match theorem_properties(&z, k, &mut rng) {
                Ok(s) => parts.push(s),
                Err(e) => {
                    ok = false;
                    parts.push(format!("VIOLATION {}", e));
                }
            }
        }
        Ok((ok, parts.join("; ")))
    })())
}

fn stability(c: &Cached) -> Result<(bool, String), String> {
    let (first, _) = c.split()?;
    let other = LineChart::sample(&c.config, SEEDS[1], unexp_core::config::DEFAULT_COEFF_BOUND).map_err(|e| e.to_string())?;
    let second = derivmod::splitting_type(&c.config, &other, c.k, None).map_err(|e| e.to_string())?;
    let mut same_adim = true;
    for d in 0..first.h0().len() as u32 {
        let a = unexpect::adim(&c.config, &c.chart, d, d + c.k).map_err(|e| e.to_string())?;
        let b = unexpect::adim(&c.config, &other, d, d + c.k).map_err(|e| e.to_string())?;
        same_adim &= a == b;
    }
    let same = first.splitting == second.splitting;
    Ok((same && same_adim, format!("seeds {:?}: {} vs {}, adim {}", SEEDS, first.splitting, second.splitting, if same_adim { "equal" } else { "differ" })))
}

fn reproducible(text: &str, k: u32) -> Result<bool, String> {
    let z = PointConfig::parse(text).map_err(|e| e.to_string())?;
    let opts = AnalyzeOptions { k, construct: true, ..AnalyzeOptions::default() };
    let hash = sha256_hex(text.as_bytes());
    let a = analyze(&z, &hash, &opts).map_err(|e| e.to_string())?;
    let b = analyze(&z, &hash, &opts).map_err(|e| e.to_string())?;
    Ok(to_text(&a) == to_text(&b) && to_json(&a) == to_json(&b))
}

pub fn criterion_10(fx: &Fixtures) -> Outcome {
    outcome(10, "seed stability and byte-identical reports", (|| {
        let (a, da) = stability(&fx.crystal)?;
        let (b, db) = stability(&fx.fermat)?;
        let ra = reproducible(&fx.crystal_text, 1)?;
        let rb = reproducible(&fx.fermat_text, 3)?;
        Ok((a && b && ra && rb, format!("crystallographic {}; Fermat {}; reports identical: {} {}", da, db, ra, rb)))
    })())
}

pub fn run_all(fx: &Fixtures) -> Vec<Outcome> {
    vec![
        criterion_1(fx),
        criterion_2(fx),
        criterion_3(fx),
        criterion_4(fx),
        criterion_5(fx),
        criterion_6(fx),
        criterion_7(),
        criterion_8(fx),
        criterion_9(),
        criterion_10(fx),
    ]
}
