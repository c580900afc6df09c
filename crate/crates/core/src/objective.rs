//! The 26-function benchmark suite (F1..F26) with canonical bounds and
//! known optima, plus three constrained engineering designs handled by a
//! strict death penalty.
//!
//! F1..F16 are scalable (any d >= 2); F17..F26 have fixed dimensions. The
//! quartic function F7 classically adds uniform random noise, which would
//! break the run-twice-get-identical-bytes contract; it uses a counter-based
//! hash of the input instead (deterministic, uniform on [0, 1)), and is
//! documented as a deviation from the classical form. The identities of
//! F14..F16 are the standard candidates matching the reported behavior
//! (Michalewicz and two needle-in-haystack exponential forms) and are
//! marked provisional in the table below.

use std::f64::consts::{E, PI};
use std::sync::Arc;

use crate::mix::noise_u01;
use crate::{Error, Result};

pub type ObjectiveFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A black-box minimization problem: objective, box bounds, optional
/// inequality constraints (feasible iff all <= 0) and, when known, the
/// optimum for gap reporting.
#[derive(Clone)]
pub struct Problem {
    pub id: String,
    pub dimension: usize,
    pub bounds: Vec<(f64, f64)>,
    pub known_optimum: Option<f64>,
    pub optimum_location: Option<Vec<f64>>,
    /// Per-variable bit widths that make discrete variables exact, when the
    /// problem has any (pressure vessel thicknesses).
    pub recommended_bits: Option<Vec<u32>>,
    objective: ObjectiveFn,
    constraints: Vec<ObjectiveFn>,
}

impl std::fmt::Debug for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Problem")
            .field("id", &self.id)
            .field("dimension", &self.dimension)
            .field("constraints", &self.constraints.len())
            .field("known_optimum", &self.known_optimum)
            .finish()
    }
}

impl Problem {
    /// A custom unconstrained problem from inline bounds and a closure;
    /// used for run configs that carry their own objective.
    pub fn custom(
        id: impl Into<String>,
        bounds: Vec<(f64, f64)>,
        objective: ObjectiveFn,
    ) -> Result<Self> {
        if bounds.is_empty() || bounds.iter().any(|(lo, hi)| !(lo < hi)) {
            return Err(Error::InvalidInput(
                "custom problem needs non-empty ordered bounds".into(),
            ));
        }
        Ok(Problem {
            id: id.into(),
            dimension: bounds.len(),
            bounds,
            known_optimum: None,
            optimum_location: None,
            recommended_bits: None,
            objective,
            constraints: Vec::new(),
        })
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dimension);
        (self.objective)(x)
    }

    pub fn constraint_values(&self, x: &[f64]) -> Vec<f64> {
        self.constraints.iter().map(|g| g(x)).collect()
    }

    pub fn has_constraints(&self) -> bool {
        !self.constraints.is_empty()
    }

    /// Feasible iff every constraint value is <= 0. Non-finite constraint
    /// values count as violations.
    pub fn is_feasible(&self, x: &[f64]) -> bool {
        self.constraints.iter().all(|g| {
            let v = g(x);
            v.is_finite() && v <= 0.0
        })
    }
}

/// Wraps a constrained problem into an unconstrained one: infeasible points
/// evaluate to the +inf sentinel, which never wins a minimization
/// comparison.
pub fn death_penalty(problem: &Problem) -> Problem {
    let objective = problem.objective.clone();
    let constraints = problem.constraints.clone();
    Problem {
        id: problem.id.clone(),
        dimension: problem.dimension,
        bounds: problem.bounds.clone(),
        known_optimum: problem.known_optimum,
        optimum_location: problem.optimum_location.clone(),
        recommended_bits: problem.recommended_bits.clone(),
        objective: Arc::new(move |x: &[f64]| {
            if constraints.iter().all(|g| {
                let v = g(x);
                v.is_finite() && v <= 0.0
            }) {
                objective(x)
            } else {
                f64::INFINITY
            }
        }),
        constraints: Vec::new(),
    }
}

/// Ids of the benchmark functions in suite order.
pub const BENCHMARK_IDS: [&str; 26] = [
    "F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "F9", "F10", "F11", "F12", "F13", "F14",
    "F15", "F16", "F17", "F18", "F19", "F20", "F21", "F22", "F23", "F24", "F25", "F26",
];

/// Ids of the constrained engineering designs.
pub const ENGINEERING_IDS: [&str; 3] = ["spring", "welded_beam", "pressure_vessel"];

/// Fixed dimension for F17..F26, `None` for scalable functions.
pub fn fixed_dimension(id: &str) -> Option<usize> {
    match id {
        "F17" | "F19" | "F20" | "F21" => Some(2),
        "F22" => Some(3),
        "F18" | "F24" | "F25" | "F26" => Some(4),
        "F23" => Some(6),
        _ => None,
    }
}

// Per-coordinate optimum of F8 and its location, to full f64 precision.
const SCHWEFEL_ARGMIN: f64 = 420.968_746_359_982_03;
const SCHWEFEL_MIN_PER_DIM: f64 = -418.982_887_272_433_8;

fn penalty_u(x: f64, a: f64, k: f64, m: i32) -> f64 {
    if x > a {
        k * (x - a).powi(m)
    } else if x < -a {
        k * (-x - a).powi(m)
    } else {
        0.0
    }
}

fn sum_sq(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn uniform_bounds(d: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    vec![(lo, hi); d]
}

fn scalable(
    id: &str,
    d: usize,
    bounds: Vec<(f64, f64)>,
    known: Option<f64>,
    location: Option<Vec<f64>>,
    objective: ObjectiveFn,
) -> Problem {
    Problem {
        id: id.to_string(),
        dimension: d,
        bounds,
        known_optimum: known,
        optimum_location: location,
        recommended_bits: None,
        objective,
        constraints: Vec::new(),
    }
}

/// Canonical benchmark definition by id. Scalable functions accept any
/// `d >= 2`; fixed-dimension functions reject every other dimension.
pub fn get_benchmark(id: &str, d: usize) -> Result<Problem> {
    let canonical = id.to_ascii_uppercase();
    let id = canonical.as_str();
    if !BENCHMARK_IDS.contains(&id) {
        return Err(Error::UnknownProblem(canonical));
    }
    if let Some(expected) = fixed_dimension(id) {
        if d != expected {
            return Err(Error::DimensionMismatch {
                id: canonical,
                expected,
                got: d,
            });
        }
    } else if d < 2 {
        return Err(Error::InvalidInput(format!(
            "{id} is scalable and needs dimension >= 2, got {d}"
        )));
    }

    let problem = match id {
        "F1" => scalable(
            id,
            d,
            uniform_bounds(d, -100.0, 100.0),
            Some(0.0),
            Some(vec![0.0; d]),
            Arc::new(sum_sq),
        ),
        "F2" => scalable(
            id,
            d,
            uniform_bounds(d, -10.0, 10.0),
            Some(0.0),
            Some(vec![0.0; d]),
            Arc::new(|x: &[f64]| {
                let s: f64 = x.iter().map(|v| v.abs()).sum();
                let p: f64 = x.iter().map(|v| v.abs()).product();
                s + p
            }),
        ),
        "F3" => scalable(
            id,
            d,
            uniform_bounds(d, -100.0, 100.0),
            Some(0.0),
            Some(vec![0.0; d]),
            Arc::new(|x: &[f64]| {
                let mut total = 0.0;
                let mut prefix = 0.0;
                for v in x {
                    prefix += v;
                    total += prefix * prefix;
                }
                total
            }),
        ),
        "F4" => scalable(
            id,
            d,
            uniform_bounds(d, -100.0, 100.0),
            Some(0.0),
            Some(vec![0.0; d]),
            Arc::new(|x: &[f64]| x.iter().fold(0.0f64, |m, v| m.max(v.abs()))),
        ),
        "F5" => scalable(
            id,
            d,
            uniform_bounds(d, -30.0, 30.0),
            Some(0.0),
            Some(vec![1.0; d]),
            Arc::new(|x: &[f64]| {
                x.windows(2)
                    .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
                    .sum()
            }),
        ),
        "F6" => scalable(
            id,
            d,
            uniform_bounds(d, -100.0, 100.0),
            Some(0.0),
            Some(vec![0.0; d]),
            Arc::new(|x: &[f64]| x.iter().map(|v| (v + 0.5).floor().powi(2)).sum()),
        ),
        "F7" => scalable(
            id,
            d,
            uniform_bounds(d, -1.28, 1.28),
            Some(0.0),
            None, // the additive noise floor keeps any single point above 0
            Arc::new(|x: &[f64]| {
                let quartic: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (i + 1) as f64 * v.powi(4))
                    .sum();
                quartic + noise_u01(x)
            }),
        ),
        "F8" => scalable(
            id,
            d,
            uniform_bounds(d, -500.0, 500.0),
            Some(SCHWEFEL_MIN_PER_DIM * d as f64),
            Some(vec![SCHWEFEL_ARGMIN; d]),
            Arc::new(|x: &[f64]| x.iter().map(|v| -v * v.abs().sqrt().sin()).sum()),
        ),
        "F9" => scalable(
            id,
            d,
            uniform_bounds(d, -5.12, 5.12),
            Some(0.0),
            Some(vec![0.0; d]),
            Arc::new(|x: &[f64]| {
                x.iter()
                    .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
                    .sum()
            }),
        ),
        "F10" => scalable(
            id,
            d,
            uniform_bounds(d, -32.0, 32.0),
            Some(0.0),
            Some(vec![0.0; d]),
            Arc::new(|x: &[f64]| {
                let n = x.len() as f64;
                let rms = (sum_sq(x) / n).sqrt();
                let mean_cos = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
                -20.0 * (-0.2 * rms).exp() - mean_cos.exp() + 20.0 + E
            }),
        ),
        "F11" => scalable(
            id,
            d,
            uniform_bounds(d, -600.0, 600.0),
            Some(0.0),
            Some(vec![0.0; d]),
            Arc::new(|x: &[f64]| {
                let prod: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                    .product();
                sum_sq(x) / 4000.0 - prod + 1.0
            }),
        ),
        "F12" => scalable(
            id,
            d,
            uniform_bounds(d, -50.0, 50.0),
            Some(0.0),
            Some(vec![-1.0; d]),
            Arc::new(|x: &[f64]| {
                let y: Vec<f64> = x.iter().map(|v| 1.0 + (v + 1.0) / 4.0).collect();
                let n = x.len();
                let mut s = 10.0 * (PI * y[0]).sin().powi(2);
                for i in 0..n - 1 {
                    s += (y[i] - 1.0).powi(2) * (1.0 + 10.0 * (PI * y[i + 1]).sin().powi(2));
                }
                s += (y[n - 1] - 1.0).powi(2);
                PI / n as f64 * s
                    + x.iter().map(|&v| penalty_u(v, 10.0, 100.0, 4)).sum::<f64>()
            }),
        ),
        "F13" => scalable(
            id,
            d,
            uniform_bounds(d, -50.0, 50.0),
            Some(0.0),
            Some(vec![1.0; d]),
            Arc::new(|x: &[f64]| {
                let n = x.len();
                let mut s = (3.0 * PI * x[0]).sin().powi(2);
                for i in 0..n - 1 {
                    s += (x[i] - 1.0).powi(2) * (1.0 + (3.0 * PI * x[i + 1]).sin().powi(2));
                }
                s += (x[n - 1] - 1.0).powi(2) * (1.0 + (2.0 * PI * x[n - 1]).sin().powi(2));
                0.1 * s + x.iter().map(|&v| penalty_u(v, 5.0, 100.0, 4)).sum::<f64>()
            }),
        ),
        // Provisional identity: Michalewicz with steepness m = 10.
        "F14" => {
            let (known, location) = if d == 2 {
                (
                    Some(MICHALEWICZ2_MIN),
                    Some(MICHALEWICZ2_ARGMIN.to_vec()),
                )
            } else {
                (None, None)
            };
            scalable(
                id,
                d,
                uniform_bounds(d, 0.0, PI),
                known,
                location,
                Arc::new(|x: &[f64]| {
                    -x.iter()
                        .enumerate()
                        .map(|(i, v)| {
                            v.sin() * ((i + 1) as f64 * v * v / PI).sin().powi(20)
                        })
                        .sum::<f64>()
                }),
            )
        }
        // Provisional identity: product-exponential needle with minimum -1
        // at the origin; elsewhere the value collapses toward 0+.
        "F15" => scalable(
            id,
            d,
            uniform_bounds(d, -10.0, 10.0),
            Some(-1.0),
            Some(vec![0.0; d]),
            Arc::new(|x: &[f64]| {
                let s_sin: f64 = x.iter().map(|v| v.sin().powi(2)).sum();
                let damp: f64 = x.iter().map(|v| v.abs().sqrt().sin().powi(2)).sum();
                (s_sin - (-sum_sq(x)).exp()) * (-damp).exp()
            }),
        ),
        // Provisional identity: exponential well centered at the pi-vector.
        "F16" => {
            let location = vec![PI; d];
            let known = yang3(&location);
            scalable(
                id,
                d,
                uniform_bounds(d, -20.0, 20.0),
                Some(known),
                Some(location),
                Arc::new(yang3),
            )
        }
        "F17" => scalable(
            id,
            d,
            uniform_bounds(d, -65.536, 65.536),
            Some(FOXHOLES_MIN),
            Some(FOXHOLES_ARGMIN.to_vec()),
            Arc::new(|x: &[f64]| {
                let mut inv_sum = 0.002;
                for j in 0..25 {
                    let a1 = [-32.0, -16.0, 0.0, 16.0, 32.0][j % 5];
                    let a2 = [-32.0, -16.0, 0.0, 16.0, 32.0][j / 5];
                    inv_sum += 1.0
                        / ((j + 1) as f64 + (x[0] - a1).powi(6) + (x[1] - a2).powi(6));
                }
                1.0 / inv_sum
            }),
        ),
        "F18" => scalable(
            id,
            d,
            uniform_bounds(d, -5.0, 5.0),
            Some(KOWALIK_MIN),
            Some(KOWALIK_ARGMIN.to_vec()),
            Arc::new(|x: &[f64]| {
                const A: [f64; 11] = [
                    0.1957, 0.1947, 0.1735, 0.16, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323,
                    0.0235, 0.0246,
                ];
                const INV_B: [f64; 11] =
                    [0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0];
                A.iter()
                    .zip(INV_B.iter())
                    .map(|(&a, &ib)| {
                        let b = 1.0 / ib;
                        let model = x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]);
                        (a - model).powi(2)
                    })
                    .sum()
            }),
        ),
        "F19" => scalable(
            id,
            d,
            uniform_bounds(d, -5.0, 5.0),
            Some(CAMEL6_MIN),
            Some(CAMEL6_ARGMIN.to_vec()),
            Arc::new(|x: &[f64]| {
                let (a, b) = (x[0], x[1]);
                4.0 * a * a - 2.1 * a.powi(4) + a.powi(6) / 3.0 + a * b - 4.0 * b * b
                    + 4.0 * b.powi(4)
            }),
        ),
        "F20" => scalable(
            id,
            d,
            vec![(-5.0, 10.0), (0.0, 15.0)],
            Some(1.25 / PI),
            Some(vec![PI, 2.275]),
            Arc::new(|x: &[f64]| {
                let (a, b) = (x[0], x[1]);
                (b - 5.1 / (4.0 * PI * PI) * a * a + 5.0 / PI * a - 6.0).powi(2)
                    + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * a.cos()
                    + 10.0
            }),
        ),
        "F21" => scalable(
            id,
            d,
            uniform_bounds(d, -2.0, 2.0),
            Some(3.0),
            Some(vec![0.0, -1.0]),
            Arc::new(|x: &[f64]| {
                let (a, b) = (x[0], x[1]);
                let t1 = 1.0
                    + (a + b + 1.0).powi(2)
                        * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b
                            + 3.0 * b * b);
                let t2 = 30.0
                    + (2.0 * a - 3.0 * b).powi(2)
                        * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b
                            + 27.0 * b * b);
                t1 * t2
            }),
        ),
        "F22" => scalable(
            id,
            d,
            uniform_bounds(d, 0.0, 1.0),
            Some(HARTMAN3_MIN),
            Some(HARTMAN3_ARGMIN.to_vec()),
            Arc::new(|x: &[f64]| {
                const A: [[f64; 3]; 4] = [
                    [3.0, 10.0, 30.0],
                    [0.1, 10.0, 35.0],
                    [3.0, 10.0, 30.0],
                    [0.1, 10.0, 35.0],
                ];
                const C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];
                const P: [[f64; 3]; 4] = [
                    [0.3689, 0.117, 0.2673],
                    [0.4699, 0.4387, 0.747],
                    [0.1091, 0.8732, 0.5547],
                    [0.03815, 0.5743, 0.8828],
                ];
                -(0..4)
                    .map(|i| {
                        let e: f64 = (0..3)
                            .map(|j| A[i][j] * (x[j] - P[i][j]).powi(2))
                            .sum();
                        C[i] * (-e).exp()
                    })
                    .sum::<f64>()
            }),
        ),
        "F23" => scalable(
            id,
            d,
            uniform_bounds(d, 0.0, 1.0),
            Some(HARTMAN6_MIN),
            Some(HARTMAN6_ARGMIN.to_vec()),
            Arc::new(|x: &[f64]| {
                const A: [[f64; 6]; 4] = [
                    [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
                    [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
                    [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
                    [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
                ];
                const C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];
                const P: [[f64; 6]; 4] = [
                    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
                    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
                    [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.665],
                    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
                ];
                -(0..4)
                    .map(|i| {
                        let e: f64 = (0..6)
                            .map(|j| A[i][j] * (x[j] - P[i][j]).powi(2))
                            .sum();
                        C[i] * (-e).exp()
                    })
                    .sum::<f64>()
            }),
        ),
        "F24" => shekel(id, 5, SHEKEL5_MIN, &SHEKEL5_ARGMIN),
        "F25" => shekel(id, 7, SHEKEL7_MIN, &SHEKEL7_ARGMIN),
        "F26" => shekel(id, 10, SHEKEL10_MIN, &SHEKEL10_ARGMIN),
        _ => unreachable!("id validated above"),
    };
    Ok(problem)
}

fn yang3(x: &[f64]) -> f64 {
    let s10: f64 = x.iter().map(|v| (v / 15.0).powi(10)).sum();
    let gauss: f64 = x.iter().map(|v| (v - PI).powi(2)).sum();
    let prod_cos: f64 = x.iter().map(|v| v.cos().powi(2)).product();
    (-s10).exp() - 2.0 * (-gauss).exp() * prod_cos
}

fn shekel(id: &str, m: usize, known: f64, location: &[f64; 4]) -> Problem {
    const A: [[f64; 4]; 10] = [
        [4.0, 4.0, 4.0, 4.0],
        [1.0, 1.0, 1.0, 1.0],
        [8.0, 8.0, 8.0, 8.0],
        [6.0, 6.0, 6.0, 6.0],
        [3.0, 7.0, 3.0, 7.0],
        [2.0, 9.0, 2.0, 9.0],
        [5.0, 5.0, 3.0, 3.0],
        [8.0, 1.0, 8.0, 1.0],
        [6.0, 2.0, 6.0, 2.0],
        [7.0, 3.6, 7.0, 3.6],
    ];
    const C: [f64; 10] = [0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5];
    scalable(
        id,
        4,
        uniform_bounds(4, 0.0, 10.0),
        Some(known),
        Some(location.to_vec()),
        Arc::new(move |x: &[f64]| {
            -(0..m)
                .map(|i| {
                    let dist: f64 = (0..4).map(|j| (x[j] - A[i][j]).powi(2)).sum();
                    1.0 / (dist + C[i])
                })
                .sum::<f64>()
        }),
    )
}

// Best-known optima, frozen as the exact f64 evaluation of the objective at
// the recorded location (locations refined beyond literature precision so
// the values agree with the published ones to their printed digits).
const MICHALEWICZ2_ARGMIN: [f64; 2] = [2.20290552346086521, 1.57079632424926752];
const MICHALEWICZ2_MIN: f64 = -1.80130341009855366;
const FOXHOLES_ARGMIN: [f64; 2] = [-31.9783324414062520, -31.9783348828125007];
const FOXHOLES_MIN: f64 = 0.998003837794449788;
const KOWALIK_ARGMIN: [f64; 4] = [
    0.192833444055185682,
    0.190836324845350264,
    0.123117256896601079,
    0.135766036358833247,
];
const KOWALIK_MIN: f64 = 3.07485987805650130e-4;
const CAMEL6_ARGMIN: [f64; 2] = [8.98420136830133109e-2, -0.712656400886227726];
const CAMEL6_MIN: f64 = -1.03162845348987742;
const HARTMAN3_ARGMIN: [f64; 3] = [
    0.114614343360006823,
    0.555648847412109292,
    0.852546952316284301,
];
const HARTMAN3_MIN: f64 = -3.86278214782075535;
const HARTMAN6_ARGMIN: [f64; 6] = [
    0.201689508857727046,
    0.150010694824218749,
    0.476873971389770557,
    0.275332429153442415,
    0.311651618530273455,
    0.657300534057617236,
];
const HARTMAN6_MIN: f64 = -3.32236801141551474;
const SHEKEL5_ARGMIN: [f64; 4] = [
    4.00003715514671043,
    4.00013327598571777,
    4.00003715515136715,
    4.00013327598571777,
];
const SHEKEL5_MIN: f64 = -10.1531996790582291;
const SHEKEL7_ARGMIN: [f64; 4] = [
    4.00057291984558017,
    4.00068936586380008,
    3.99948970794670444,
    3.99960616111755440,
];
const SHEKEL7_MIN: f64 = -10.4029405668186623;
const SHEKEL10_ARGMIN: [f64; 4] = [
    4.00074653148651116,
    4.00059293508529645,
    3.99966340065002468,
    3.99950980186458738,
];
const SHEKEL10_MIN: f64 = -10.5364098166920463;

/// The constrained engineering designs. All use minimize-cost objectives
/// with inequality constraints `g(x) <= 0`.
pub fn constrained_problem(id: &str) ->
Result<Problem> {
    match id {
        "spring" => Ok(Problem {
            id: "spring".into(),
            dimension: 3,
            bounds: vec![(0.05, 2.0), (0.25, 1.3), (2.0, 15.0)],
            known_optimum: None,
            optimum_location: None,
            recommended_bits: None,
            objective: Arc::new(|x: &[f64]| (x[2] + 2.0) * x[1] * x[0] * x[0]),
            constraints: vec![
                Arc::new(|x: &[f64]| 1.0 - x[1].powi(3) * x[2] / (71785.0 * x[0].powi(4))),
                Arc::new(|x: &[f64]| {
                    (4.0 * x[1] * x[1] - x[0] * x[1])
                        / (12566.0 * (x[1] * x[0].powi(3) - x[0].powi(4)))
                        + 1.0 / (5108.0 * x[0] * x[0])
                        - 1.0
                }),
                Arc::new(|x: &[f64]| 1.0 - 140.45 * x[0] / (x[1] * x[1] * x[2])),
                Arc::new(|x: &[f64]| (x[0] + x[1]) / 1.5 - 1.0),
            ],
        }),
        "welded_beam" => Ok(Problem {
            id: "welded_beam".into(),
            dimension: 4,
            bounds: vec![(0.1, 2.0), (0.1, 10.0), (0.1, 10.0), (0.1, 2.0)],
            known_optimum: None,
            optimum_location: None,
            recommended_bits: None,
            objective: Arc::new(|x: &[f64]| {
                1.10471 * x[0] * x[0] * x[1] + 0.04811 * x[2] * x[3] * (14.0 + x[1])
            }),
            constraints: welded_beam_constraints(),
        }),
        "pressure_vessel" => Ok(Problem {
            id: "pressure_vessel".into(),
            dimension: 4,
            // thickness variables are exact multiples of 0.0625: with 7 bits
            // on [0.0625, 8.0] the grid spacing is exactly 0.0625
            bounds: vec![(0.0625, 8.0), (0.0625, 8.0), (10.0, 200.0), (10.0, 200.0)],
            known_optimum: None,
            optimum_location: None,
            recommended_bits: Some(vec![7, 7, 20, 21]),
            objective: Arc::new(|x: &[f64]| {
                0.6224 * x[0] * x[2] * x[3]
                    + 1.7781 * x[1] * x[2] * x[2]
                    + 3.1661 * x[0] * x[0] * x[3]
                    + 19.84 * x[0] * x[0] * x[2]
            }),
            constraints: vec![
                Arc::new(|x: &[f64]| -x[0] + 0.0193 * x[2]),
                Arc::new(|x: &[f64]| -x[1] + 0.00954 * x[2]),
                Arc::new(|x: &[f64]| {
                    -PI * x[2] * x[2] * x[3] - 4.0 / 3.0 * PI * x[2].powi(3) + 1_296_000.0
                }),
                Arc::new(|x: &[f64]| x[3] - 240.0),
            ],
        }),
        other => Err(Error::UnknownProblem(other.to_string())),
    }
}

fn welded_beam_constraints() -> Vec<ObjectiveFn> {
    const P: f64 = 6000.0;
    const L: f64 = 14.0;
    const EMOD: f64 = 30e6;
    const GMOD: f64 = 12e6;
    const TAU_MAX: f64 = 13600.0;
    const SIGMA_MAX: f64 = 30000.0;
    const DELTA_MAX: f64 = 0.25;

    fn tau(x: &[f64]) -> f64 {
        let tau_p = P / (std::f64::consts::SQRT_2 * x[0] * x[1]);
        let m = P * (L + x[1] / 2.0);
        let r = (x[1] * x[1] / 4.0 + ((x[0] + x[2]) / 2.0).powi(2)).sqrt();
        let j = 2.0
            * (std::f64::consts::SQRT_2
                * x[0]
                * x[1]
                * (x[1] * x[1] / 12.0 + ((x[0] + x[2]) / 2.0).powi(2)));
        let tau_pp = m * r / j;
        (tau_p * tau_p + 2.0 * tau_p * tau_pp * x[1] / (2.0 * r) + tau_pp * tau_pp).sqrt()
    }

    fn sigma(x: &[f64]) -> f64 {
        6.0 * P * L / (x[3] * x[2] * x[2])
    }

    fn deflection(x: &[f64]) -> f64 {
        4.0 * P * L.powi(3) / (EMOD * x[2].powi(3) * x[3])
    }

    fn buckling_load(x: &[f64]) -> f64 {
        4.013 * EMOD * (x[2] * x[2] * x[3].powi(6) / 36.0).sqrt() / (L * L)
            * (1.0 - x[2] / (2.0 * L) * (EMOD / (4.0 * GMOD)).sqrt())
    }

    vec![
        Arc::new(|x: &[f64]| tau(x) - TAU_MAX),
        Arc::new(|x: &[f64]| sigma(x) - SIGMA_MAX),
        Arc::new(|x: &[f64]| x[0] - x[3]),
        Arc::new(|x: &[f64]| {
            0.10471 * x[0] * x[0] + 0.04811 * x[2] * x[3] * (14.0 + x[1]) - 5.0
        }),
        Arc::new(|x: &[f64]| 0.125 - x[0]),
        Arc::new(|x: &[f64]| deflection(x) - DELTA_MAX),
        Arc::new(|x: &[f64]| P - buckling_load(x)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_optima_are_consistent_with_objectives() {
        let mut checked = 0;
        for id in BENCHMARK_IDS {
            let d = fixed_dimension(id).unwrap_or(2);
            let p = get_benchmark(id, d).unwrap();
            if let (Some(known), Some(loc)) = (p.known_optimum, p.optimum_location.clone()) {
                let value = p.evaluate(&loc);
                let tol = 1e-9 * known.abs().max(1.0);
                assert!(
                    (value - known).abs() <= tol,
                    "{id}: f(location) = {value:.16e}, recorded {known:.16e}"
                );
                checked += 1;
            }
        }
        assert!(checked >= 20);
    }

    #[test]
    fn scalable_optima_hold_at_d30() {
        for id in ["F1", "F5", "F8", "F9", "F10", "F12", "F13", "F15"] {
            let p = get_benchmark(id, 30).unwrap();
            let loc = p.optimum_location.clone().unwrap();
            let known = p.known_optimum.unwrap();
            assert!(
                (p.evaluate(&loc) - known).abs() <= 1e-9 * known.abs().max(1.0),
                "{id} at d=30"
            );
        }
        // recorded suite-level value: F8 optimum at d=30 is about -12569.487
        let f8 = get_benchmark("F8", 30).unwrap();
        assert!((f8.known_optimum.unwrap() - (-12569.4866)).abs() < 1e-3);
    }

    #[test]
    fn dimension_rules() {
        assert!(get_benchmark("F1", 8).is_ok());
        assert!(get_benchmark("F1", 1).is_err());
        assert!(matches!(
            get_benchmark("F20", 3),
            Err(Error::DimensionMismatch { expected: 2, got: 3, .. })
        ));
        assert!(matches!(
            get_benchmark("F99", 2),
            Err(Error::UnknownProblem(_))
        ));
    }

    #[test]
    fn separable_functions_match_per_coordinate_oracle() {
        let points = [
            vec![3.25, -17.5, 88.0, -0.125],
            vec![-5.0, 5.0, 0.5, 99.9],
        ];
        let f1 = get_benchmark("F1", 4).unwrap();
        let f9_bounded = get_benchmark("F9", 4).unwrap();
        for x in &points {
            let sphere_oracle: f64 = x.iter().map(|v| v * v).sum();
            assert_eq!(f1.evaluate(x), sphere_oracle);
        }
        let x = [1.5, -2.25, 0.0, 3.125];
        let rastrigin_oracle: f64 = x
            .iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
            .sum();
        assert!((f9_bounded.evaluate(&x) - rastrigin_oracle).abs() < 1e-12);
    }

    #[test]
    fn quartic_noise_is_deterministic_and_bounded() {
        let p = get_benchmark("F7", 5).unwrap();
        let x = [0.3, -0.7, 0.01, 1.1, -1.2];
        let a = p.evaluate(&x);
        let b = p.evaluate(&x);
        assert_eq!(a.to_bits(), b.to_bits());
        let quartic: f64 = x
            .iter()
            .enumerate()
            .map(|(i, v)| (i + 1) as f64 * v.powi(4))
            .sum();
        assert!(a >= quartic && a < quartic + 1.0);
    }

    #[test]
    fn death_penalty_behaviour() {
        let spring = constrained_problem("spring").unwrap();
        let wrapped = death_penalty(&spring);
        // recorded solution is feasible: raw objective comes through
        let good = [0.05435, 0.42127, 8.47099];
        assert!(spring.is_feasible(&good));
        assert_eq!(wrapped.evaluate(&good), spring.evaluate(&good));
        assert!((wrapped.evaluate(&good) - 1.303e-2).abs() < 5e-5);
        // violating any constraint yields the sentinel
        let bad = [2.0, 0.25, 2.0];
        assert!(!spring.is_feasible(&bad));
        assert_eq!(wrapped.evaluate(&bad), f64::INFINITY);
    }

    #[test]
    fn reported_solutions_are_feasible_with_reported_costs() {
        // (problem, solution, reported cost, relative tolerance)
        let cases: [(&str, &[f64], f64, f64); 4] = [
            ("spring", &[0.05435, 0.42127, 8.47099], 1.303e-2, 5e-4),
            ("spring", &[0.05856, 0.54531, 5.250001], 1.356e-2, 5e-4),
            (
                "welded_beam",
                &[0.20568, 3.47837, 9.03680, 0.20763],
                1.74036,
                5e-5,
            ),
            (
                "pressure_vessel",
                &[0.8125, 0.4375, 41.45648, 185.00077],
                6145.06920,
                5e-6,
            ),
        ];
        for (id, x, cost, tol) in cases {
            let p = constrained_problem(id).unwrap();
            let values = p.constraint_values(x);
            assert!(
                p.is_feasible(x),
                "{id} reported point infeasible: {values:?}"
            );
            let f = p.evaluate(x);
            assert!(
                ((f - cost) / cost).abs() < tol,
                "{id}: cost {f} vs reported {cost}"
            );
        }
    }

    #[test]
    fn vessel_thickness_grid_is_exact() {
        let p = constrained_problem("pressure_vessel").unwrap();
        let bits = p.recommended_bits.clone().unwrap();
        assert_eq!(bits, vec![7, 7, 20, 21]);
        // 7 bits over [0.0625, 8.0]: spacing (8 - 0.0625)/127 == 0.0625 exactly
        let spacing = (8.0 - 0.0625) / 127.0;
        assert_eq!(spacing, 0.0625);
    }
}
