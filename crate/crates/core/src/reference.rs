//! Recorded reference values consumed by the bundled reproduction checks
//! (`reproduce` subcommand and the acceptance suite): the full n = 7 cycle
//! table, the verified last-generator bounds, the two F8 sweep baselines,
//! the uniformity bands, the engineering design baselines, and the
//! all-dimensions mean ranks for the post-hoc comparison.

/// All ten cycles for n = 7, one row per generator, states in visit order.
pub const N7_CYCLES: [&[u64]; 10] = [
    &[0, 1, 3, 7, 15, 31, 63, 127, 126, 124, 120, 112, 96, 64],
    &[2, 5, 11, 23, 47, 95, 62, 125, 122, 116, 104, 80, 32, 65],
    &[4, 9, 19, 39, 79, 30, 61, 123, 118, 108, 88, 48, 97, 66],
    &[6, 13, 27, 55, 111, 94, 60, 121, 114, 100, 72, 16, 33, 67],
    &[8, 17, 35, 71, 14, 29, 59, 119, 110, 92, 56, 113, 98, 68],
    &[10, 21, 43, 87, 46, 93, 58, 117, 106, 84, 40, 81, 34, 69],
    &[12, 25, 51, 103, 78, 28, 57, 115, 102, 76, 24, 49, 99, 70],
    &[18, 37, 75, 22, 45, 91, 54, 109, 90, 52, 105, 82, 36, 73],
    &[20, 41, 83, 38, 77, 26, 53, 107, 86, 44, 89, 50, 101, 74],
    &[42, 85],
];

/// The n = 7 generator set in increasing order.
pub const N7_GENERATORS: [u64; 10] = [0, 2, 4, 6, 8, 10, 12, 18, 20, 42];

/// Verified last-generator bounds for odd widths 3..=53.
pub const ALPHA_MAX_TABLE: [(u32, u64); 26] = [
    (3, 0),
    (5, 4),
    (7, 20),
    (9, 84),
    (11, 340),
    (13, 1364),
    (15, 5460),
    (17, 21844),
    (19, 87380),
    (21, 349524),
    (23, 1398100),
    (25, 5592404),
    (27, 22369620),
    (29, 89478484),
    (31, 357913940),
    (33, 1431655764),
    (35, 5726623060),
    (37, 22906492244),
    (39, 91625968980),
    (41, 366503875924),
    (43, 1466015503700),
    (45, 5864062014804),
    (47, 23456248059220),
    (49, 93824992236884),
    (51, 375299968947540),
    (53, 1501199875790164),
];

/// F8 (Schwefel) at d = 2 over the (10, 11)-bit split on [-500, 500]^2.
pub mod f8_d2 {
    /// True continuous optimum, -418.9829 per coordinate.
    pub const OPTIMUM: f64 = -837.9658;
    /// Exhaustive sweep baseline: generators tested and best surrogate.
    pub const EXHAUSTIVE_GENERATORS: u64 = 49_929;
    pub const EXHAUSTIVE_BEST: f64 = -837.9615;
    /// Adaptive baseline with delta = 2, Delta = 1004.
    pub const ADAPTIVE_DELTA: u64 = 1004;
    pub const ADAPTIVE_GENERATORS: u64 = 185;
    pub const ADAPTIVE_BEST: f64 = -837.8338;
    /// Landscape smoothness: lag-1 and lag-20 autocorrelation baselines.
    pub const LAG1_RHO: f64 = 0.6494;
    pub const LAG20_RHO: f64 = 0.0452;
}

/// Uniformity-study baselines at 6200 points in three dimensions.
pub mod uniformity {
    pub const COUNT: usize = 6200;
    pub const DIMENSION: usize = 3;
    pub const BINS_PER_AXIS: usize = 5;
    /// Nearest-neighbor ratio baselines per source.
    pub const SLCG_NN_RATIO: f64 = 0.984;
    pub const RANDU_NN_RATIO: f64 = 0.706;
    pub const UNIFORM_NN_RATIO: f64 = 1.018;
    pub const SLCG_MAX_CORR: f64 = 0.029;
}

/// Constrained engineering design baselines: the reported deterministic
/// solutions with their costs, plus the soft cost targets a fresh run
/// should reach. Costs depend on the encoding, so each baseline records
/// the exploration step of its reproduction run (`None` = scheme default;
/// the pressure vessel uses a 4x finer sweep over its mixed discrete and
/// continuous layout).
pub mod engineering {
    pub struct Baseline {
        pub id: &'static str,
        pub solution: &'static [f64],
        pub cost: f64,
        /// A fresh run at the recorded configuration must reach this cost.
        pub target: f64,
        /// Right-shift applied to the default exploration step for the
        /// recorded run.
        pub delta_shift: u32,
    }

    pub const BASELINES: [Baseline; 3] = [
        Baseline {
            id: "spring",
            solution: &[0.05435, 0.42127, 8.47099],
            cost: 1.303e-2,
            target: 1.35e-2,
            delta_shift: 0,
        },
        Baseline {
            id: "welded_beam",
            solution: &[0.20568, 3.47837, 9.03680, 0.20763],
            cost: 1.74036,
            target: 1.80,
            delta_shift: 0,
        },
        Baseline {
            id: "pressure_vessel",
            solution: &[0.8125, 0.4375, 41.45648, 185.00077],
            cost: 6145.06920,
            target: 6300.0,
            delta_shift: 2,
        },
    ];
}

/// All-dimensions Friedman mean ranks over the 138 benchmark instances
/// (16 scalable functions x 8 dimensions + 10 fixed), k = 9 algorithms.
pub mod friedman_all_d {
    pub const N_ROWS: usize = 138;
    pub const CONTROL: &str = "S-LCG";
    pub const MEAN_RANKS: [(&str, f64); 9] = [
        ("S-LCG", 1.99),
        ("GA", 2.54),
        ("BACO", 3.77),
        ("BSA", 4.80),
        ("BPSO", 5.22),
        ("T-BPSO", 6.20),
        ("BTS", 6.24),
        ("BDE", 6.31),
        ("BGWO", 7.93),
    ];
    /// Every competitor is declared significant at 0.05 except this one.
    pub const NOT_SIGNIFICANT: &str = "GA";
}
