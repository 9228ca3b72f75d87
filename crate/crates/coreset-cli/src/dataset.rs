//! Seeded synthetic datasets and input resolution.
//!
//! `--input` accepts either a path to a CSV file (the format written by the
//! rest of the workspace: one `x0..x{d-1},w` row per point) or a compact
//! generator spec `family:n`, e.g. `uniform:100000`. The 1-d families are
//! the experiment corpus — `uniform`, `gaussian`, `exponential`, `bimodal`,
//! and `clustered` — and `ball:n:d` draws n points uniformly from the
//! d-dimensional unit ball for the mixed construction. Generation is
//! deterministic given the spec and the seed.
//!
//! A spec whose head is a known family always wins over a file of the same
//! name; pointing at such a file requires a path with a separator, e.g.
//! `./uniform:100`.

use std::fs;
use std::path::Path;

use coreset_core::{from_csv, WeightedPointSet};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Normal, StandardNormal};
use serde_json::{json, Value};

use crate::CliError;

/// Number of cluster sites the `clustered` family scatters points around.
const CLUSTER_SITES: usize = 10;

/// Spread of each cluster around its site.
const CLUSTER_SIGMA: f64 = 0.02;

/// A synthetic dataset family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Uniform on [0, 1).
    Uniform,
    /// Normal with mean 0.5 and deviation 0.15.
    Gaussian,
    /// Exponential with rate 1.
    Exponential,
    /// Even mixture of normals at 0.25 and 0.75, deviation 0.05.
    Bimodal,
    /// Ten uniform sites on [0, 1), points scattered with deviation 0.02.
    Clustered,
    /// Uniform on the d-dimensional unit ball.
    Ball,
}

impl Family {
    /// Stable tag used in specs and reports.
    pub fn tag(self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Gaussian => "gaussian",
            Family::Exponential => "exponential",
            Family::Bimodal => "bimodal",
            Family::Clustered => "clustered",
            Family::Ball => "ball",
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "uniform" => Some(Family::Uniform),
            "gaussian" => Some(Family::Gaussian),
            "exponential" => Some(Family::Exponential),
            "bimodal" => Some(Family::Bimodal),
            "clustered" => Some(Family::Clustered),
            "ball" => Some(Family::Ball),
            _ => None,
        }
    }
}

/// Draws `n` unit-weight points of the family, seeded. `dim` is the ambient
/// dimension of the `ball` family and must be 1 for the others.
pub fn generate(family: Family, n: usize, dim: usize, seed: u64) -> Result<WeightedPointSet, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = match family {
        Family::Uniform => (0..n).map(|_| rng.gen::<f64>()).collect(),
        Family::Gaussian => {
            let normal = Normal::new(0.5, 0.15).expect("finite parameters");
            (0..n).map(|_| normal.sample(&mut rng)).collect()
        }
        Family::Exponential => {
            let exp = Exp::new(1.0).expect("positive rate");
            (0..n).map(|_| exp.sample(&mut rng)).collect()
        }
        Family::Bimodal => {
            let lo = Normal::new(0.25, 0.05).expect("finite parameters");
            let hi = Normal::new(0.75, 0.05).expect("finite parameters");
            (0..n)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        lo.sample(&mut rng)
                    } else {
                        hi.sample(&mut rng)
                    }
                })
                .collect()
        }
        Family::Clustered => {
            let sites: Vec<f64> = (0..CLUSTER_SITES).map(|_| rng.gen::<f64>()).collect();
            let noise = Normal::new(0.0, CLUSTER_SIGMA).expect("finite parameters");
            (0..n)
                .map(|_| sites[rng.gen_range(0..sites.len())] + noise.sample(&mut rng))
                .collect()
        }
        Family::Ball => {
            let mut coords = Vec::with_capacity(n * dim);
            for _ in 0..n {
                coords.extend(ball_point(dim, &mut rng));
            }
            coords
        }
    };
    let dim = if family == Family::Ball { dim } else { 1 };
    Ok(WeightedPointSet::unit_weights(dim, coords)?)
}

/// One uniform draw from the unit ball: a Gaussian direction scaled to a
/// radius with the d-th-root law.
fn ball_point<R: Rng>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let dir: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= 1e-12 {
            continue;
        }
        let r = rng.gen::<f64>().powf(1.0 / dim as f64);
        return dir.into_iter().map(|x| x / norm * r).collect();
    }
}

/// An input argument resolved to points, with a JSON description of where
/// they came from for embedding in reports.
#[derive(Debug, Clone)]
pub struct ResolvedInput {
    pub points: WeightedPointSet,
    pub source: Value,
}

/// Parses `family:n` / `ball:n:d`. Returns `None` when the head is not a
/// known family (the argument is then treated as a path), and an error when
/// the head is known but the rest of the spec is malformed.
fn parse_spec(input: &str) -> Result<Option<(Family, usize, usize)>, CliError> {
    let mut parts = input.split(':');
    let head = parts.next().unwrap_or_default();
    let Some(family) = Family::from_tag(head) else {
        return Ok(None);
    };
    let bad = |reason| CliError::BadGeneratorSpec {
        spec: input.to_string(),
        reason,
    };
    let n: usize = parts
        .next()
        .ok_or_else(|| bad("missing point count"))?
        .parse()
        .map_err(|_| bad("point count is not a number"))?;
    let dim = match (family, parts.next()) {
        (Family::Ball, Some(d)) => d.parse().map_err(|_| bad("dimension is not a number"))?,
        (Family::Ball, None) => return Err(bad("ball needs a dimension, e.g. ball:4096:4")),
        (_, Some(_)) => return Err(bad("only ball takes a dimension")),
        (_, None) => 1,
    };
    if parts.next().is_some() {
        return Err(bad("too many fields"));
    }
    if dim == 0 {
        return Err(bad("dimension must be positive"));
    }
    Ok(Some((family, n, dim)))
}

/// Resolves `--input`: a generator spec is drawn with the seed, anything
/// else must be a readable CSV file.
pub fn resolve_input(input: &str, seed: u64) -> Result<ResolvedInput, CliError> {
    if let Some((family, n, dim)) = parse_spec(input)? {
        let points = generate(family, n, dim, seed)?;
        return Ok(ResolvedInput {
            points,
            source: json!({
                "kind": "generator",
                "family": family.tag(),
                "n": n,
                "dim": dim,
                "seed": seed,
            }),
        });
    }
    let path = Path::new(input);
    if !path.is_file() {
        return Err(CliError::UnknownInput {
            input: input.to_string(),
        });
    }
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let points = from_csv(&text)?;
    Ok(ResolvedInput {
        points,
        source: json!({ "kind": "file", "path": input }),
    })
}
