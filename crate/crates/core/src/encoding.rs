//! Bit-splitting between n-bit states and d-dimensional rectangular grids,
//! plus construction of the exploration step by per-variable bit
//! concatenation.
//!
//! Variable 1 occupies the least significant bits. A segment value `S_j` of
//! `b_j` bits maps affinely onto `[L_j, U_j]` with divisor `2^b_j - 1`, so
//! both interval endpoints are exactly reachable. All coordinates of a point
//! come from a single state; no point is ever formed from consecutive
//! states, which is what sidesteps the classic hyperplane lattice defect.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::generator::{BitWidth, GeneratorState, StateWord};
use crate::{Error, Result};

/// Per-variable bounds and bit width. Widths above 64 bits are rejected:
/// segment values are handled as machine words before the float mapping,
/// and 64 bits already exceeds f64 resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariableSpec {
    pub lower: f64,
    pub upper: f64,
    pub bits: u32,
}

impl VariableSpec {
    pub fn new(lower: f64, upper: f64, bits: u32) -> Result<Self> {
        if !(lower < upper) || !lower.is_finite() || !upper.is_finite() {
            return Err(Error::InvalidInput(format!(
                "variable bounds [{lower}, {upper}] are not a finite ordered interval"
            )));
        }
        if bits == 0 || bits > 64 {
            return Err(Error::InvalidInput(format!(
                "variable width must be in 1..=64 bits, got {bits}"
            )));
        }
        Ok(VariableSpec { lower, upper, bits })
    }

    fn max_segment(&self) -> u64 {
        if self.bits >= 64 {
            u64::MAX
        } else {
            (1u64 << self.bits) - 1
        }
    }

    /// Affine map of a segment value into `[lower, upper]`; the endpoints
    /// are returned exactly.
    fn to_coordinate(&self, segment: u64) -> f64 {
        let max = self.max_segment();
        if segment == 0 {
            self.lower
        } else if segment == max {
            self.upper
        } else {
            let fraction = segment as f64 / max as f64;
            (self.lower + fraction * (self.upper - self.lower)).clamp(self.lower, self.upper)
        }
    }

    /// Nearest grid segment for a coordinate (the inverse quantizer).
    fn to_segment(&self, coordinate: f64) -> u64 {
        let max = self.max_segment();
        let fraction = (coordinate - self.lower) / (self.upper - self.lower);
        let scaled = fraction * max as f64;
        if scaled <= 0.0 {
            0
        } else if scaled >= max as f64 {
            max
        } else {
            scaled.round() as u64
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SchemeRepr {
    variables: Vec<VariableSpec>,
}

/// Ordered variable layout over one n-bit state. Serialized as
/// `{"variables":[{"lower":..,"upper":..,"bits":..},..]}` inside run configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SchemeRepr", into = "SchemeRepr")]
pub struct EncodingScheme {
    variables: Vec<VariableSpec>,
    offsets: Vec<u32>,
    total_bits: u32,
}

impl TryFrom<SchemeRepr> for EncodingScheme {
    type Error = Error;

    fn try_from(repr: SchemeRepr) -> Result<Self> {
        EncodingScheme::new(repr.variables)
    }
}

impl From<EncodingScheme> for SchemeRepr {
    fn from(scheme: EncodingScheme) -> Self {
        SchemeRepr {
            variables: scheme.variables,
        }
    }
}

impl EncodingScheme {
    pub fn new(variables: Vec<VariableSpec>) -> Result<Self> {
        if variables.is_empty() {
            return Err(Error::InvalidInput("scheme needs at least one variable".into()));
        }
        for v in &variables {
            VariableSpec::new(v.lower, v.upper, v.bits)?;
        }
        let mut offsets = Vec::with_capacity(variables.len());
        let mut total = 0u32;
        for v in &variables {
            offsets.push(total);
            total += v.bits;
        }
        if total < 3 {
            return Err(Error::BitWidthTooSmall(total));
        }
        Ok(EncodingScheme {
            variables,
            offsets,
            total_bits: total,
        })
    }

    pub fn variables(&self) -> &[VariableSpec] {
        &self.variables
    }

    pub fn dimension(&self) -> usize {
        self.variables.len()
    }

    pub fn total_bits(&self) -> u32 {
        self.total_bits
    }

    pub fn width(&self) -> BitWidth {
        BitWidth::new(self.total_bits).expect("total checked at construction")
    }

    pub fn bounds(&self) -> Vec<(f64, f64)> {
        self.variables.iter().map(|v| (v.lower, v.upper)).collect()
    }

    /// Decode a state into its grid point. Variable 1 is read from the
    /// least significant bits upward.
    pub fn decode(&self, state: &GeneratorState) -> Result<Vec<f64>> {
        if state.width().get() != self.total_bits {
            return Err(Error::WidthMismatch {
                state_bits: state.width().get(),
                scheme_bits: self.total_bits,
            });
        }
        Ok(self.decode_word(state.value()))
    }

    /// Word-level decode shared by the fixed-width and big-number paths.
    pub(crate) fn decode_word<W: StateWord>(&self, state: &W) -> Vec<f64> {
        self.variables
            .iter()
            .zip(&self.offsets)
            .map(|(v, &off)| v.to_coordinate(state.segment(off, v.bits)))
            .collect()
    }

    /// Inverse quantizer: nearest grid state for a point. Composing with
    /// [`EncodingScheme::decode`] is the identity on grid points.
    pub fn encode(&self, point: &[f64]) -> Result<BigUint> {
        if point.len() != self.variables.len() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, scheme has {} variables",
                point.len(),
                self.variables.len()
            )));
        }
        let mut state = BigUint::zero();
        for ((v, &off), &x) in self.variables.iter().zip(&self.offsets).rev().zip(point.iter().rev())
        {
            state = (state << v.bits) | BigUint::from(v.to_segment(x));
            let _ = off;
        }
        Ok(state)
    }

    /// Default exploration step for this scheme: `2^(n - b_d) - offset`,
    /// the last variable's segment size lowered by a small dense-bit
    /// offset.
    ///
    /// The magnitude makes each leap advance the last variable by one grid
    /// step (minus a sliver), so the candidate walk scans the grid smoothly
    /// and the surrogate stays exploitably correlated, and it bounds the
    /// walk at about `2^b_d` leaps whatever the dimension. The offset's
    /// size and bits both matter: the membership walk rejects candidates
    /// whose binary expansion carries a run of ones or zeros reaching from
    /// the top bit to the modulus width, so the borrow run `2^mag - offset`
    /// must stay shorter than `b_d` (offset above `2^(mag - b_d)`), and the
    /// offset's own bits follow the golden ratio so no run or carry
    /// resonance appears at any scale. For the (10, 11) layout this gives
    /// 1004; two-variable layouts generally get `2^b_1 - 20`.
    pub fn default_delta(&self) -> BigUint {
        let d = self.variables.len();
        if d == 1 {
            return BigUint::from(2u32);
        }
        let last_bits = self.variables.last().expect("non-empty").bits;
        // on machine-word widths, shrink the leap one power of two per
        // dimension above two (capped at 16x): the measure of any target
        // basin decays with dimension, so the walk gets denser to match;
        // arbitrary-precision widths keep the base magnitude so the
        // membership cost of a default run stays bounded
        let shrink = if self.total_bits <= 127 {
            (d as u32 - 2).min(4)
        } else {
            0
        };
        let magnitude = (self.total_bits - last_bits).saturating_sub(shrink);
        if magnitude < 6 {
            // tiny layouts: segment value 1 in every variable above the first
            let mut delta = BigUint::zero();
            for &off in self.offsets.iter().skip(1) {
                delta |= BigUint::one() << off;
            }
            if delta.bit(0) {
                delta += BigUint::one();
            }
            return delta.max(BigUint::from(2u32));
        }
        let offset_bits = (magnitude + 2).saturating_sub(last_bits).max(5);
        // even floor of 2^offset_bits / phi: golden bits at every scale
        let scaled =
            (BigUint::from(5u32) << (2 * offset_bits)).sqrt() - (BigUint::one() << offset_bits);
        let offset = ((scaled >> 2u32) << 1u32).max(BigUint::from(20u32));
        (BigUint::one() << magnitude) - offset
    }
}

/// Integer value of the concatenation `bin(x_d, b_d) || .. || bin(x_1, b_1)`
/// with variable 1 at the least significant end. `patterns[j]` and
/// `widths[j]` describe variable `j + 1`.
///
/// The result must be even (pattern 1's lowest bit 0) so that stepping from
/// an even start visits only even candidates; `allow_odd` overrides.
pub fn build_delta(patterns: &[&str], widths: &[u32], allow_odd: bool) -> Result<BigUint> {
    if patterns.len() != widths.len() {
        return Err(Error::InvalidInput(format!(
            "{} patterns for {} widths",
            patterns.len(),
            widths.len()
        )));
    }
    let mut delta = BigUint::zero();
    for (pattern, &width) in patterns.iter().zip(widths).rev() {
        if pattern.len() != width as usize || !pattern.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::PatternWidthMismatch {
                pattern: (*pattern).to_string(),
                width,
            });
        }
        let value = BigUint::parse_bytes(pattern.as_bytes(), 2)
            .expect("validated binary pattern");
        delta = (delta << width) | value;
    }
    if delta.bit(0) && !allow_odd {
        return Err(Error::OddDelta(delta.to_string()));
    }
    Ok(delta)
}

/// Uniform allocation of `bits_per_variable` to every variable, then one
/// extra bit on the last variable whenever the total would be even, so the
/// closed-form last-generator bound applies. `allow_even` skips the padding.
pub fn default_scheme(
    bounds: &[(f64, f64)],
    bits_per_variable: u32,
    allow_even: bool,
) -> Result<EncodingScheme> {
    if bounds.is_empty() {
        return Err(Error::InvalidInput("at least one variable required".into()));
    }
    let total = bits_per_variable as usize * bounds.len();
    let pad_last = !allow_even && total % 2 == 0;
    let variables = bounds
        .iter()
        .enumerate()
        .map(|(j, &(lower, upper))| {
            let bits = if pad_last && j == bounds.len() - 1 {
                bits_per_variable + 1
            } else {
                bits_per_variable
            };
            VariableSpec::new(lower, upper, bits)
        })
        .collect::<Result<Vec<_>>>()?;
    EncodingScheme::new(variables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn unit_scheme(bits: &[u32], lower: f64, upper: f64) -> EncodingScheme {
        EncodingScheme::new(
            bits.iter()
                .map(|&b| VariableSpec::new(lower, upper, b).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn decode_matches_worked_example() {
        // state bits 001|101|101 (MSB to LSB), three 3-bit variables on [-1, 1]
        let scheme = unit_scheme(&[3, 3, 3], -1.0, 1.0);
        let state = GeneratorState::from_u64(0b001_101_101, scheme.width()).unwrap();
        let point = scheme.decode(&state).unwrap();
        assert!((point[0] - (-1.0 + 5.0 / 7.0 * 2.0)).abs() < 1e-12);
        assert!((point[1] - (-1.0 + 5.0 / 7.0 * 2.0)).abs() < 1e-12);
        assert!((point[2] - (-1.0 + 1.0 / 7.0 * 2.0)).abs() < 1e-12);
        assert!((point[0] - 0.42857).abs() < 1e-4);
        assert!((point[2] - (-0.71429)).abs() < 1e-4);
    }

    #[test]
    fn decode_hits_endpoints_exactly() {
        let scheme = EncodingScheme::new(vec![
            VariableSpec::new(0.05, 2.0, 7).unwrap(),
            VariableSpec::new(-500.0, 500.0, 6).unwrap(),
        ])
        .unwrap();
        let zero = GeneratorState::from_u64(0, scheme.width()).unwrap();
        assert_eq!(scheme.decode(&zero).unwrap(), vec![0.05, -500.0]);
        let full = GeneratorState::from_u64((1 << 13) - 1, scheme.width()).unwrap();
        assert_eq!(scheme.decode(&full).unwrap(), vec![2.0, 500.0]);
    }

    #[test]
    fn decode_rejects_width_mismatch() {
        let scheme = unit_scheme(&[3, 3, 3], -1.0, 1.0);
        let state = GeneratorState::from_u64(1, BitWidth::new(7).unwrap()).unwrap();
        assert!(matches!(
            scheme.decode(&state),
            Err(Error::WidthMismatch { state_bits: 7, scheme_bits: 9 })
        ));
    }

    #[test]
    fn decode_is_injective_and_in_range_exhaustively() {
        let scheme = EncodingScheme::new(vec![
            VariableSpec::new(-2.5, 1.5, 5).unwrap(),
            VariableSpec::new(0.0, 1.0, 4).unwrap(),
            VariableSpec::new(-1.0, 1.0, 4).unwrap(),
        ])
        .unwrap();
        let mut seen = std::collections::HashSet::new();
        for s in 0..(1u64 << 13) {
            let state = GeneratorState::from_u64(s, scheme.width()).unwrap();
            let point = scheme.decode(&state).unwrap();
            for (x, v) in point.iter().zip(scheme.variables()) {
                assert!(*x >= v.lower && *x <= v.upper);
            }
            assert!(
                seen.insert(point.iter().map(|x| x.to_bits()).collect::<Vec<_>>()),
                "duplicate point for state {s}"
            );
        }
        assert_eq!(seen.len(), 1 << 13);
    }

    #[test]
    fn encode_round_trips_grid_points() {
        let scheme = EncodingScheme::new(vec![
            VariableSpec::new(-500.0, 500.0, 10).unwrap(),
            VariableSpec::new(-1.0, 3.0, 5).unwrap(),
        ])
        .unwrap();
        for s in (0..(1u64 << 15)).step_by(97) {
            let state = GeneratorState::from_u64(s, scheme.width()).unwrap();
            let point = scheme.decode(&state).unwrap();
            assert_eq!(scheme.encode(&point).unwrap().to_u64().unwrap(), s);
        }
    }

    #[test]
    fn delta_matches_worked_example() {
        // widths (b1, b2, b3) = (3, 4, 4): concatenation 0001 || 0001 || 000
        let delta = build_delta(&["000", "0001", "0001"], &[3, 4, 4], false).unwrap();
        assert_eq!(delta, BigUint::from(136u32));
    }

    #[test]
    fn delta_zero_and_single_variable() {
        assert_eq!(
            build_delta(&["000", "0000", "0000"], &[3, 4, 4], false).unwrap(),
            BigUint::zero()
        );
        assert_eq!(
            build_delta(&["010"], &[3], false).unwrap(),
            BigUint::from(2u32)
        );
    }

    #[test]
    fn delta_rejects_odd_and_bad_widths() {
        assert!(matches!(
            build_delta(&["001"], &[3], false),
            Err(Error::OddDelta(_))
        ));
        assert_eq!(
            build_delta(&["001"], &[3], true).unwrap(),
            BigUint::from(1u32)
        );
        assert!(matches!(
            build_delta(&["01"], &[3], false),
            Err(Error::PatternWidthMismatch { .. })
        ));
    }

    #[test]
    fn default_scheme_pads_to_odd_total() {
        let s = default_scheme(&[(-500.0, 500.0); 2], 10, false).unwrap();
        assert_eq!(
            s.variables().iter().map(|v| v.bits).collect::<Vec<_>>(),
            vec![10, 11]
        );
        assert_eq!(s.total_bits(), 21);

        let s = default_scheme(&[(-1.0, 1.0); 3], 3, false).unwrap();
        assert_eq!(
            s.variables().iter().map(|v| v.bits).collect::<Vec<_>>(),
            vec![3, 3, 3]
        );

        let s = default_scheme(&[(0.0, 1.0); 30], 20, false).unwrap();
        let widths: Vec<u32> = s.variables().iter().map(|v| v.bits).collect();
        assert_eq!(widths[..29], [20; 29]);
        assert_eq!(widths[29], 21);
        assert_eq!(s.total_bits(), 601);

        let s = default_scheme(&[(0.0, 1.0); 2], 10, true).unwrap();
        assert_eq!(s.total_bits(), 20);
    }

    #[test]
    fn default_delta_is_segment_aligned_with_dense_offset() {
        // (10, 11) split: 2^10 - 20 = 1004
        let scheme = unit_scheme(&[10, 11], -500.0, 500.0);
        assert_eq!(scheme.default_delta(), BigUint::from(1004u32));

        // (20, 21) split: 2^20 - 20
        let scheme = unit_scheme(&[20, 21], 0.0, 1.0);
        assert_eq!(scheme.default_delta(), BigUint::from((1u64 << 20) - 20));

        // (20, 20, 21): magnitude 40 less the one-step dimensional shrink,
        // golden offset keeps the borrow run under the last segment width
        let scheme = unit_scheme(&[20, 20, 21], 0.0, 1.0);
        let delta = scheme.default_delta();
        assert_eq!(delta.bits(), 39);
        assert!(!delta.bit(0));
        let offset = (BigUint::one() << 39u32) - &delta;
        assert!(offset.bits() == 20);

        // 30 variables (601 bits): arbitrary-precision widths keep the
        // base magnitude, no dimensional shrink
        let widths: Vec<u32> = [20; 29].iter().copied().chain([21]).collect();
        let scheme = unit_scheme(&widths, 0.0, 1.0);
        let delta = scheme.default_delta();
        assert_eq!(delta.bits(), 580);
        assert!(!delta.bit(0));

        // small layouts fall back to the unit pattern once the shrink
        // empties the magnitude
        let scheme = unit_scheme(&[3, 3, 3], 0.0, 1.0);
        assert_eq!(scheme.default_delta(), BigUint::from(72u32));
        let single = unit_scheme(&[7], 0.0, 1.0);
        assert_eq!(single.default_delta(), BigUint::from(2u32));
    }

    #[test]
    fn scheme_serializes_to_declared_shape() {
        let scheme = unit_scheme(&[3, 3, 3], -1.0, 1.0);
        let json = serde_json::to_string(&scheme).unwrap();
        assert_eq!(
            json,
            r#"{"variables":[{"lower":-1.0,"upper":1.0,"bits":3},{"lower":-1.0,"upper":1.0,"bits":3},{"lower":-1.0,"upper":1.0,"bits":3}]}"#
        );
        let back: EncodingScheme = serde_json::from_str(&json).unwrap();
        assert_eq!(back, scheme);
    }
}
