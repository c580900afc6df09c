//! Counter-based deterministic mixing used for the reproducible noise
//! substitute and the ideal-uniform reference stream.

/// splitmix64 finalizer: one 64-bit mix step.
#[inline]
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform [0, 1) from the top 53 bits of a mixed word.
#[inline]
pub(crate) fn to_unit(word: u64) -> f64 {
    (word >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Deterministic uniform [0, 1) noise as a pure function of the input
/// vector: the coordinates' bit patterns are folded through the mixer.
pub(crate) fn noise_u01(x: &[f64]) -> f64 {
    let mut h = 0x5EED_1234_ABCD_9876u64;
    for &xi in x {
        h = mix64(h ^ xi.to_bits());
    }
    to_unit(mix64(h))
}
