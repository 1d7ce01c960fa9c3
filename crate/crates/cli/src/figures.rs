//! CSV data behind the figures: Poncelet level curves on the angle simplex
//! and sampled atlases of the sphere and torus models.
//!
//! Output depends only on the options, so repeated runs are byte-identical.

use std::f64::consts::PI;

use clap::{Args, ValueEnum};
use dyck_core::angles::DEFAULT_TOL;
use dyck_core::projections::{classify_sphere_locus, to_sphere, to_torus, SphereLocus};
use dyck_core::sample::{self, SampleRng};
use dyck_core::shape::class_of;
use dyck_core::triangle::TriangleVariable;
use dyck_core::verify::CriterionReport;

use crate::{fmt_f64, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    PonceletLevels,
    SphereAtlas,
    TorusAtlas,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub name: FigureName,
    /// Level values r/R in (0, 1/2], for poncelet-levels.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.3,0.5")]
    pub levels: Vec<f64>,
    /// Grid points along the angle α, for poncelet-levels.
    #[arg(long, default_value_t = 60)]
    pub grid: usize,
    /// Sampled classes, for the atlases.
    #[arg(long, default_value_t = 240)]
    pub samples: usize,
    #[arg(long, default_value_t = 0xd7c6)]
    pub seed: u64,
}

/// A validated figure request.
#[derive(Clone, Debug, PartialEq)]
pub enum Figure {
    PonceletLevels { levels: Vec<f64>, grid: usize },
    SphereAtlas { samples: usize, seed: u64 },
    TorusAtlas { samples: usize, seed: u64 },
}

impl Figure {
    pub fn from_args(a: &FigureArgs) -> Result<Figure, CliError> {
        Ok(match a.name {
            FigureName::PonceletLevels => {
                if let Some(l) = a.levels.iter().find(|l| !(**l > 0.0 && **l <= 0.5)) {
                    return Err(CliError::Usage(format!("level {l} outside (0, 1/2]")));
                }
                if a.grid < 2 {
                    return Err(CliError::Usage("--grid must be at least 2".into()));
                }
                Figure::PonceletLevels { levels: a.levels.clone(), grid: a.grid }
            }
            FigureName::SphereAtlas => Figure::SphereAtlas { samples: a.samples, seed: a.seed },
            FigureName::TorusAtlas => Figure::TorusAtlas { samples: a.samples, seed: a.seed },
        })
    }

    pub fn render(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match self {
            Figure::PonceletLevels { levels, grid } => {
                w.write_record(["level", "alpha", "beta", "gamma"])?;
                for &level in levels {
                    for (a, b) in level_curve(level, *grid) {
                        w.write_record([level, a, b, PI - a - b].map(fmt_f64))?;
                    }
                }
            }
            Figure::SphereAtlas { samples, seed } => {
                let mut header = vec!["index", "kind", "orientation", "x", "y", "z", "hemisphere"];
                header.extend(LOCUS_COLUMNS);
                w.write_record(&header)?;
                let mut rng = sample::rng(*seed);
                for i in 0..*samples {
                    let (kind, t) = atlas_triangle(&mut rng, i);
                    let s = to_sphere(&class_of(&t)?);
                    let loci = classify_sphere_locus(&s, DEFAULT_TOL);
                    let mut row = vec![
                        i.to_string(),
                        kind.to_string(),
                        t.orientation(DEFAULT_TOL).to_string(),
                        fmt_f64(s.x),
                        fmt_f64(s.y),
                        fmt_f64(s.z),
                        hemisphere(s.y).to_string(),
                    ];
                    row.extend(SphereLocus::ALL.iter().map(|l| u8::from(loci.contains(l)).to_string()));
                    w.write_record(&row)?;
                }
            }
            Figure::TorusAtlas { samples, seed } => {
                w.write_record(["index", "kind", "orientation", "p", "q", "r", "lifted_sum", "sheet"])?;
                let mut rng = sample::rng(*seed);
                for i in 0..*samples {
                    let (kind, t) = atlas_triangle(&mut rng, i);
                    let p = to_torus(&class_of(&t)?);
                    w.write_record([
                        i.to_string(),
                        kind.to_string(),
                        t.orientation(DEFAULT_TOL).to_string(),
                        fmt_f64(p.p.value()),
                        fmt_f64(p.q.value()),
                        fmt_f64(p.r.value()),
                        fmt_f64(p.lifted_sum()),
                        format!("{:?}", p.sheet()),
                    ])?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv of ASCII fields"))
    }
}

/// Snake-case headers for the locus flags, in `SphereLocus::ALL` order.
const LOCUS_COLUMNS: [&str; 12] = [
    "degenerate_circle",
    "isosceles_a",
    "isosceles_b",
    "isosceles_c",
    "right_a",
    "right_b",
    "right_c",
    "equilateral_plus",
    "equilateral_minus",
    "double_a",
    "double_b",
    "double_c",
];

fn hemisphere(y: f64) -> i8 {
    if y.abs() <= DEFAULT_TOL {
        0
    } else if y < 0.0 {
        -1
    } else {
        1
    }
}

const KINDS: [&str; 6] = ["generic", "isosceles", "right", "obtuse", "simple", "double"];

/// Cycles through the sampler kinds so every locus is represented.
fn atlas_triangle(rng: &mut SampleRng, i: usize) -> (&'static str, TriangleVariable) {
    let kind = KINDS[i % KINDS.len()];
    let t = match kind {
        "generic" => sample::triangle(rng),
        "isosceles" => sample::isosceles(rng).0,
        "right" => sample::right(rng).0,
        "obtuse" => sample::obtuse(rng).0,
        "simple" => sample::simple_point(rng),
        _ => sample::double_point(rng).0,
    };
    (kind, t)
}

/// `4 sin(α/2) sin(β/2) sin(γ/2)` with `γ = π − α − β`.
fn level(alpha: f64, beta: f64) -> f64 {
    4.0 * (alpha / 2.0).sin() * (beta / 2.0).sin() * ((PI - alpha - beta) / 2.0).sin()
}

/// Bisection for `level(α, ·) = target` on a bracket where it is monotone.
fn bisect(alpha: f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    let rising = level(alpha, hi) > level(alpha, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (level(alpha, mid) < target) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Points `(α, β)` of the level set over `grid − 1` interior values of α.
/// For fixed α the level peaks at `β = (π − α)/2`, giving up to two roots.
fn level_curve(target: f64, grid: usize) -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    for i in 1..grid {
        let alpha = PI * i as f64 / grid as f64;
        let top = (PI - alpha) / 2.0;
        let peak = level(alpha, top);
        if peak < target - 1e-12 {
            continue;
        }
        if (peak - target).abs() <= 1e-12 {
            pts.push((alpha, top));
            continue;
        }
        pts.push((alpha, bisect(alpha, target, 0.0, top)));
        pts.push((alpha, bisect(alpha, target, top, PI - alpha)));
    }
    pts
}

/// Renders each figure twice with default options and compares the bytes.
pub fn determinism_report() -> CriterionReport {
    let figures = [
        Figure::PonceletLevels { levels: vec![0.1, 0.3, 0.5], grid: 60 },
        Figure::SphereAtlas { samples: 240, seed: 0xd7c6 },
        Figure::TorusAtlas { samples: 240, seed: 0xd7c6 },
    ];
    let mut mismatched = Vec::new();
    let mut bytes = 0;
    for f in &figures {
        match (f.render(), f.render()) {
            (Ok(a), Ok(b)) if a == b => bytes += a.len(),
            _ => mismatched.push(format!("{f:?}")),
        }
    }
    CriterionReport {
        id: 11,
        name: "cli-determinism",
        passed: mismatched.is_empty(),
        detail: if mismatched.is_empty() {
            format!("3 figures rendered twice, byte-identical ({bytes} bytes)")
        } else {
            format!("differing or failing: {}", mismatched.join(", "))
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_curve_points_lie_on_their_level() {
        for target in [0.1, 0.3, 0.45] {
            let pts = level_curve(target, 50);
            assert!(!pts.is_empty());
            for (a, b) in pts {
                assert!((level(a, b) - target).abs() < 1e-12, "{target}: ({a}, {b})");
                assert!(a > 0.0 && b > 0.0 && PI - a - b > 0.0);
            }
        }
        // the top level is the equilateral point alone
        let top = level_curve(0.5, 3);
        assert_eq!(top.len(), 1);
        assert!((top[0].0 - PI / 3.0).abs() < 1e-12 && (top[0].1 - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn atlas_hemisphere_matches_orientation() {
        let csv = Figure::SphereAtlas { samples: 120, seed: 3 }.render().unwrap();
        let mut rdr = csv::Reader::from_reader(csv.as_bytes());
        for rec in rdr.records() {
            let rec = rec.unwrap();
            let expected = match &rec[2] {
                "Positive" => "-1",
                "Negative" => "1",
                _ => "0",
            };
            assert_eq!(&rec[6], expected, "{rec:?}");
        }
    }

    #[test]
    fn torus_sheets_follow_orientation() {
        let csv = Figure::TorusAtlas { samples: 120, seed: 4 }.render().unwrap();
        let mut rdr = csv::Reader::from_reader(csv.as_bytes());
        for rec in rdr.records() {
            let rec = rec.unwrap();
            let sheet = match &rec[2] {
                "Positive" => "Pi",
                "Negative" => "TwoPi",
                _ => continue,
            };
            assert_eq!(&rec[7], sheet, "{rec:?}");
        }
    }

    #[test]
    fn renders_are_deterministic() {
        assert!(determinism_report().passed);
    }
}
