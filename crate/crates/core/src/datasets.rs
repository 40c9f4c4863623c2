//! Reference datasets bundled with the crate.

/// Failure times (thousands of miles) of 37 locomotive controls.
pub const LOCOMOTIVE: &[f64] = &[
    22.5, 37.5, 46.0, 48.5, 51.5, 53.0, 54.5, 57.5, 66.5, 68.0, 69.5, 76.5, 77.0, 78.5, 80.0, 81.5, 82.0, 83.0, 84.0,
    91.5, 93.5, 102.5, 107.0, 108.5, 112.5, 113.5, 116.0, 117.0, 118.5, 119.0, 120.0, 122.5, 123.0, 127.5, 131.0,
    132.5, 134.0,
];

/// Endurance (millions of revolutions) of 23 deep-groove ball bearings.
pub const BEARINGS: &[f64] = &[
    17.88, 28.92, 33.00, 41.52, 42.12, 45.60, 48.40, 51.84, 51.96, 54.12, 55.56, 67.80, 68.64, 68.64, 68.88, 84.12,
    93.12, 98.64, 105.12, 105.84, 127.92, 128.04, 173.40,
];

/// Posterior-mean lognormal parameters reported for the locomotive data by a
/// Bayesian fit; used as the second candidate in the locomotive comparison.
pub const LOCOMOTIVE_BAYES_LOGNORMAL: (f64, f64) = (4.427955, 0.4516975);

/// Look up a bundled dataset by name.
pub fn by_name(name: &str) -> Option<&'static [f64]> {
    match name.to_ascii_lowercase().as_str() {
        "locomotive" => Some(LOCOMOTIVE),
        "bearings" => Some(BEARINGS),
        _ => None,
    }
}

pub const NAMES: [&str; 2] = ["locomotive", "bearings"];
