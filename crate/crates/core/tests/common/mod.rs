//! Independent oracles and random fixtures shared by the integration tests.
//!
//! Nothing here calls into the distance code paths it is used to check.
#![allow(dead_code)]

use std::f64::consts::PI;

use mixmetric::schema_io::{AttributeSpec, Dataset, Kind, Mode, Schema, Value};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// adaptive Gauss–Kronrod (7/15) quadrature

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for k in 0..7 {
        let dx = h * XGK[k];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[k] * pair;
        if k % 2 == 1 {
            gauss += WG[k / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// `∫_a^b f` to absolute tolerance `tol` by recursive bisection.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn go<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (v, err) = gk15(f, a, b);
        if err <= tol || depth == 0 || (b - a).abs() < 1e-300 {
            return v;
        }
        let m = 0.5 * (a + b);
        go(f, a, m, 0.5 * tol, depth - 1) + go(f, m, b, 0.5 * tol, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    go(f, a, b, tol, 50)
}

pub fn std_normal_density(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// Mass of N(μ, σ²) between `x1` and `x2`, by quadrature in z-units.
pub fn normal_mass_quadrature(mu: f64, sigma: f64, x1: f64, x2: f64) -> f64 {
    let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
    let z_lo = ((lo - mu) / sigma).clamp(-40.0, 40.0);
    let z_hi = ((hi - mu) / sigma).clamp(-40.0, 40.0);
    // split at unit steps so no panel straddles more than a slice of the bell
    let mut total = 0.0;
    let mut a = z_lo;
    while a < z_hi {
        let b = (a.floor() + 1.0).min(z_hi);
        total += integrate(&std_normal_density, a, b, 1e-15);
        a = b;
    }
    total
}

/// `Φ(z)` as `1/2 ± ∫_0^|z| φ`.
pub fn normal_cdf_quadrature(z: f64) -> f64 {
    let half = normal_mass_quadrature(0.0, 1.0, 0.0, z.abs());
    if z >= 0.0 {
        0.5 + half
    } else {
        0.5 - half
    }
}

/// `erf(x) = 2/√π ∫_0^x e^{−t²} dt`.
pub fn erf_quadrature(x: f64) -> f64 {
    let f = |t: f64| (-t * t).exp();
    let mut total = 0.0;
    let mut a = 0.0;
    let end = x.abs();
    while a < end {
        let b = (a + 0.5).min(end);
        total += integrate(&f, a, b, 1e-17);
        a = b;
    }
    x.signum() * total * 2.0 / PI.sqrt()
}

// ---------------------------------------------------------------------------
// counting oracles

/// Fraction of `samples` in `(min(a,b), max(a,b)]`, by linear scan.
pub fn counted_fraction(samples: &[f64], a: f64, b: f64) -> f64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let inside = samples.iter().filter(|&&s| lo < s && s <= hi).count();
    inside as f64 / samples.len() as f64
}

/// Classical Gower similarity: range-normalized agreement for numeric
/// columns, equality for categorical, weighted mean over comparable columns.
/// `ranges[i]` is `None` for categorical columns.
pub fn gower_similarity(
    r1: &[Value],
    r2: &[Value],
    ranges: &[Option<(f64, f64)>],
    weights: &[f64],
) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..r1.len() {
        let s = match (&r1[i], &r2[i], ranges[i]) {
            (Value::Number(a), Value::Number(b), Some((lo, hi))) => {
                if hi == lo {
                    if a == b {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    1.0 - ((a - b).abs() / (hi - lo)).min(1.0)
                }
            }
            (Value::Category(a), Value::Category(b), None) => {
                if a == b {
                    1.0
                } else {
                    0.0
                }
            }
            _ => continue,
        };
        num += weights[i] * s;
        den += weights[i];
    }
    num / den
}

// ---------------------------------------------------------------------------
// random fixtures

pub const MODES: [Mode; 5] = [
    Mode::Gower,
    Mode::ProbGaussian,
    Mode::ProbEmpirical,
    Mode::ProbOrdinal,
    Mode::ExactMatch,
];

fn kind_for(mode: Mode, rng: &mut TestRng) -> Kind {
    match mode {
        Mode::Gower | Mode::ProbGaussian | Mode::ProbEmpirical => Kind::Numeric,
        Mode::ProbOrdinal => Kind::Ordinal,
        Mode::ExactMatch => {
            if rng.gen_bool(0.5) {
                Kind::Categorical
            } else {
                Kind::Ordinal
            }
        }
    }
}

pub fn random_spec(name: &str, mode: Mode, rng: &mut TestRng) -> AttributeSpec {
    let kind = kind_for(mode, rng);
    let mut spec = AttributeSpec::new(name, kind, mode)
        .with_weight(rng.gen_range(0.1..3.0))
        .with_exponent(*[0.5, 1.0, 1.0, 2.0, 1.7].choose(rng).unwrap());
    if kind == Kind::Ordinal {
        let n = rng.gen_range(2..6);
        spec = spec.with_levels((0..n).map(|i| format!("L{i}")));
    }
    spec
}

pub fn random_value(spec: &AttributeSpec, rng: &mut TestRng, missing_rate: f64) -> Value {
    if rng.gen_bool(missing_rate) {
        return Value::Missing;
    }
    match spec.kind {
        Kind::Numeric => {
            // a coarse grid makes exact ties common
            if rng.gen_bool(0.3) {
                Value::Number(f64::from(rng.gen_range(-5..5)))
            } else {
                Value::Number(rng.gen_range(-50.0..50.0))
            }
        }
        Kind::Categorical => {
            Value::category(*["red", "green", "blue", "teal"].choose(rng).unwrap())
        }
        Kind::Ordinal => Value::Category(spec.levels.choose(rng).unwrap().clone()),
    }
}

/// Random mixed schema: `n_attr` features of random modes plus an optional target.
pub fn random_schema(rng: &mut TestRng, n_attr: usize, with_target: bool) -> Schema {
    let mut attrs: Vec<AttributeSpec> = (0..n_attr)
        .map(|i| {
            let mode = *MODES.choose(rng).unwrap();
            random_spec(&format!("a{i}"), mode, rng)
        })
        .collect();
    let target = with_target.then(|| {
        attrs.push(AttributeSpec::new(
            "label",
            Kind::Categorical,
            Mode::ExactMatch,
        ));
        "label".to_string()
    });
    Schema::new(attrs, target).unwrap()
}

/// Random rows with at least one present value per feature column.
pub fn random_dataset(rng: &mut TestRng, schema: &Schema, n: usize, missing_rate: f64) -> Dataset {
    let classes = ["a", "b", "c"];
    let target = schema.target_index();
    let mut rows: Vec<Vec<Value>> = (0..n)
        .map(|_| {
            schema
                .attributes()
                .iter()
                .enumerate()
                .map(|(i, spec)| {
                    if Some(i) == target {
                        Value::category(*classes.choose(rng).unwrap())
                    } else {
                        random_value(spec, rng, missing_rate)
                    }
                })
                .collect()
        })
        .collect();
    for (i, spec) in schema.attributes().iter().enumerate() {
        if rows[0][i].is_missing() {
            rows[0][i] = random_value(spec, rng, 0.0);
        }
    }
    Dataset::from_rows(schema.clone(), rows).unwrap()
}

/// Two classes drawn from N(0,1) and N(10,1) on every numeric column.
pub fn separated_gaussians(n: usize, seed: u64) -> Dataset {
    use rand_distr::{Distribution, Normal};
    let mut rng = rng(seed);
    let schema = Schema::new(
        vec![
            AttributeSpec::new("x1", Kind::Numeric, Mode::ProbGaussian),
            AttributeSpec::new("x2", Kind::Numeric, Mode::ProbGaussian),
            AttributeSpec::new("label", Kind::Categorical, Mode::ExactMatch),
        ],
        Some("label".into()),
    )
    .unwrap();
    let rows = (0..n)
        .map(|i| {
            let (mean, label) = if i % 2 == 0 {
                (0.0, "near")
            } else {
                (10.0, "far")
            };
            let dist = Normal::new(mean, 1.0).unwrap();
            vec![
                Value::Number(dist.sample(&mut rng)),
                Value::Number(dist.sample(&mut rng)),
                Value::category(label),
            ]
        })
        .collect();
    Dataset::from_rows(schema, rows).unwrap()
}

/// Per-attribute `(min, max)` for numeric columns, `None` for categorical ones.
pub type Ranges = Vec<Option<(f64, f64)>>;

/// All-gower mixed dataset (`n_num` numeric + `n_cat` categorical, no missing)
/// and the per-column ranges and weights the Gower oracle needs.
///
/// With `dyadic` set, numbers are integers in `0..=8` with both ends present,
/// weights are 1 and the column count is a power of two, so every step of both
/// formulas is exact in binary floating point.
pub fn gower_dataset(
    rng: &mut TestRng,
    n: usize,
    n_num: usize,
    n_cat: usize,
    dyadic: bool,
) -> (Dataset, Ranges, Vec<f64>) {
    let mut attrs = Vec::new();
    for i in 0..n_num {
        let w = if dyadic { 1.0 } else { rng.gen_range(0.1..4.0) };
        attrs.push(AttributeSpec::new(format!("n{i}"), Kind::Numeric, Mode::Gower).with_weight(w));
    }
    for i in 0..n_cat {
        let w = if dyadic { 1.0 } else { rng.gen_range(0.1..4.0) };
        attrs.push(
            AttributeSpec::new(format!("c{i}"), Kind::Categorical, Mode::ExactMatch).with_weight(w),
        );
    }
    let weights: Vec<f64> = attrs.iter().map(|a| a.weight).collect();
    let schema = Schema::new(attrs, None).unwrap();
    let mut columns: Vec<Vec<Value>> = Vec::new();
    for _ in 0..n_num {
        let mut col: Vec<f64> = (0..n)
            .map(|_| {
                if dyadic {
                    f64::from(rng.gen_range(0..=8))
                } else {
                    rng.gen_range(-1e3..1e3)
                }
            })
            .collect();
        if dyadic {
            col[0] = 0.0;
            col[1] = 8.0;
        }
        columns.push(col.into_iter().map(Value::Number).collect());
    }
    for _ in 0..n_cat {
        columns.push(
            (0..n)
                .map(|_| Value::category(*["x", "y", "z"].choose(rng).unwrap()))
                .collect(),
        );
    }
    let ranges = columns
        .iter()
        .map(|col| {
            let nums: Vec<f64> = col.iter().filter_map(Value::as_number).collect();
            (!nums.is_empty()).then(|| {
                let lo = nums.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = nums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                (lo, hi)
            })
        })
        .collect();
    (Dataset::new(schema, columns).unwrap(), ranges, weights)
}
