//! The structured congruential map, its cycle algebra, the generator
//! membership test and the last-generator bound.
//!
//! The working state space is `[0, 2^n - 1]` under `x -> (2x + 1) mod
//! (2^n + 1)`. The modulus value `2^n` is a fixed point of the map and sits
//! outside the n-bit representation, so it is excluded throughout. On the
//! working space the map is a permutation whose cycles all have period
//! dividing `2n`; the minimal element of each cycle is its *generator* and
//! the set of generators indexes the cycles without overlap.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default cap for exhaustive enumeration: a 2^26-bit visited mask is 8 MiB.
pub const DEFAULT_ENUMERATION_CAP: u32 = 26;

/// Threshold below which states fit in a machine word. `x << 1` must not
/// overflow u64, so 63 bits is the limit.
pub const FIXED_WIDTH_LIMIT: u32 = 63;

/// Widths up to 127 bits run on a u128 engine; wider states fall back to
/// arbitrary precision. All engines are bit-identical by construction and
/// by test.
pub const WIDE_WIDTH_LIMIT: u32 = 127;

/// Fixed multiplier of the map.
pub const MULTIPLIER: u32 = 2;
/// Fixed increment of the map.
pub const INCREMENT: u32 = 1;

/// Count of state bits. At least 3; even widths are representable (the
/// closed-form last-generator bound then does not apply, see [`alpha_max`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BitWidth(u32);

impl BitWidth {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::BitWidthTooSmall(n));
        }
        Ok(BitWidth(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }

    /// `2^n - 1`, the largest working state.
    pub fn mask(self) -> BigUint {
        (BigUint::one() << self.0) - BigUint::one()
    }
}

impl std::fmt::Display for BitWidth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Modulus and fixed recurrence constants for a given width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusParams {
    width: BitWidth,
}

impl ModulusParams {
    pub fn new(width: BitWidth) -> Self {
        ModulusParams { width }
    }

    /// `m = 2^n + 1`, always odd.
    pub fn modulus(&self) -> BigUint {
        (BigUint::one() << self.width.0) + BigUint::one()
    }

    pub fn multiplier(&self) -> u32 {
        MULTIPLIER
    }

    pub fn increment(&self) -> u32 {
        INCREMENT
    }

    pub fn width(&self) -> BitWidth {
        self.width
    }
}

/// An n-bit state of the map: a natural number in `[0, 2^n - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorState {
    value: BigUint,
    width: BitWidth,
}

impl GeneratorState {
    pub fn new(value: BigUint, width: BitWidth) -> Result<Self> {
        if value.bits() > u64::from(width.0) {
            return Err(Error::StateOutOfRange {
                value: value.to_string(),
                bits: width.0,
            });
        }
        Ok(GeneratorState { value, width })
    }

    pub fn from_u64(value: u64, width: BitWidth) -> Result<Self> {
        Self::new(BigUint::from(value), width)
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn width(&self) -> BitWidth {
        self.width
    }

    pub fn is_even(&self) -> bool {
        !self.value.bit(0)
    }

    /// One application of the map.
    pub fn step(&self) -> GeneratorState {
        GeneratorState {
            value: step_big(&self.value, self.width.0),
            width: self.width,
        }
    }
}

impl std::fmt::Display for GeneratorState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.value.fmt(f)
    }
}

/// One cycle of the map, in canonical rotation: `states[0]` is the minimal
/// element (the generator) and `period == states.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    width: BitWidth,
    states: Vec<BigUint>,
}

impl Cycle {
    pub fn width(&self) -> BitWidth {
        self.width
    }

    pub fn generator(&self) -> &BigUint {
        &self.states[0]
    }

    pub fn states(&self) -> &[BigUint] {
        &self.states
    }

    pub fn period(&self) -> usize {
        self.states.len()
    }
}

/// Word-level engine shared by the fixed-width and arbitrary-precision
/// paths. Both must produce identical state sequences; the acceptance suite
/// enforces bit-identity on random cases.
pub(crate) trait StateWord: Clone + PartialEq + Ord {
    fn from_biguint(v: &BigUint) -> Self;
    fn to_biguint(&self) -> BigUint;
    fn advance(&mut self, n: u32);
    fn complement(&self, n: u32) -> Self;
    /// Integer value of `width` bits starting at bit `lo`; `width <= 64`.
    fn segment(&self, lo: u32, width: u32) -> u64;
}

impl StateWord for u64 {
    fn from_biguint(v: &BigUint) -> Self {
        v.to_u64().expect("state exceeds fixed-width path")
    }

    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }

    #[inline]
    fn advance(&mut self, n: u32) {
        *self = step_u64(*self, n);
    }

    fn complement(&self, n: u32) -> Self {
        (mask_u64(n)) - *self
    }

    #[inline]
    fn segment(&self, lo: u32, width: u32) -> u64 {
        let shifted = *self >> lo;
        if width >= 64 {
            shifted
        } else {
            shifted & ((1u64 << width) - 1)
        }
    }
}

impl StateWord for u128 {
    fn from_biguint(v: &BigUint) -> Self {
        v.to_u128().expect("state exceeds wide fixed-width path")
    }

    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }

    #[inline]
    fn advance(&mut self, n: u32) {
        *self = step_u128(*self, n);
    }

    fn complement(&self, n: u32) -> Self {
        mask_u128(n) - *self
    }

    #[inline]
    fn segment(&self, lo: u32, width: u32) -> u64 {
        let shifted = *self >> lo;
        if width >= 64 {
            shifted as u64
        } else {
            (shifted as u64) & ((1u64 << width) - 1)
        }
    }
}

impl StateWord for BigUint {
    fn from_biguint(v: &BigUint) -> Self {
        v.clone()
    }

    fn to_biguint(&self) -> BigUint {
        self.clone()
    }

    fn advance(&mut self, n: u32) {
        *self = step_big(self, n);
    }

    fn complement(&self, n: u32) -> Self {
        ((BigUint::one() << n) - BigUint::one()) - self
    }

    fn segment(&self, lo: u32, width: u32) -> u64 {
        let shifted: BigUint = self >> lo;
        let masked = if width >= 64 {
            shifted & BigUint::from(u64::MAX)
        } else {
            shifted & BigUint::from((1u64 << width) - 1)
        };
        masked.to_u64().expect("segment wider than 64 bits")
    }
}

#[inline]
pub(crate) fn mask_u64(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Fixed-width step for `n <= 63`: shift left, truncate to n bits, and
/// inject the complement of the outgoing top bit as the new low bit.
#[inline]
pub fn step_u64(state: u64, n: u32) -> u64 {
    debug_assert!(n <= FIXED_WIDTH_LIMIT);
    debug_assert!(state <= mask_u64(n));
    ((state << 1) & mask_u64(n)) | (1 ^ ((state >> (n - 1)) & 1))
}

#[inline]
pub(crate) fn mask_u128(n: u32) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Wide fixed-width step for `n <= 127`, identical in form to [`step_u64`].
#[inline]
pub fn step_u128(state: u128, n: u32) -> u128 {
    debug_assert!(n <= WIDE_WIDTH_LIMIT);
    debug_assert!(state <= mask_u128(n));
    ((state << 1) & mask_u128(n)) | (1 ^ ((state >> (n - 1)) & 1))
}

/// Arbitrary-precision step, bit-identical to [`step_u64`] on shared widths.
pub fn step_big(state: &BigUint, n: u32) -> BigUint {
    let mask = (BigUint::one() << n) - BigUint::one();
    let shifted = (state << 1u32) & mask;
    if state.bit(u64::from(n) - 1) {
        shifted
    } else {
        shifted | BigUint::one()
    }
}

/// One application of the map on a validated state.
pub fn step(state: &GeneratorState) -> GeneratorState {
    state.step()
}

/// `x_k = (2^k * x_0 + 2^k - 1) mod (2^n + 1)`: the closed form of the k-th
/// iterate, used as the independent oracle for repeated stepping.
pub fn closed_form_state(k: u64, x0: &GeneratorState) -> GeneratorState {
    let params = ModulusParams::new(x0.width);
    let m = params.modulus();
    let p2k = BigUint::from(2u32).modpow(&BigUint::from(k), &m);
    // 2^k * x0 + 2^k - 1 == 2^k * (x0 + 1) + (m - 1)  (mod m), avoiding underflow
    let value = (p2k * (&x0.value + BigUint::one()) + (&m - BigUint::one())) % &m;
    GeneratorState {
        value,
        width: x0.width,
    }
}

/// Membership walk: alpha is a generator iff every state of its cycle lies
/// in the band `[alpha, 2^n - 1 - alpha]`.
///
/// Walking `n + 1` states suffices: the state n steps ahead of `x` is the
/// bit complement of `x`, so the visited states together with their
/// complements cover the whole cycle, and the acceptance band is itself
/// complement-symmetric.
fn is_generator_walk<W: StateWord>(alpha: &W, n: u32) -> bool {
    let complement = alpha.complement(n);
    if *alpha > complement {
        return false;
    }
    let mut state = alpha.clone();
    for _ in 0..=n {
        if state < *alpha || state > complement {
            return false;
        }
        state.advance(n);
    }
    true
}

/// Full-cycle membership walk, kept as a slow cross-check for the banded
/// `n + 1`-step test.
fn is_generator_full_walk<W: StateWord>(alpha: &W, n: u32) -> bool {
    let mut state = alpha.clone();
    loop {
        if state < *alpha {
            return false;
        }
        state.advance(n);
        if state == *alpha {
            return true;
        }
    }
}

/// True iff `alpha` is the minimal element of its cycle.
pub fn is_generator(alpha: &GeneratorState) -> bool {
    let n = alpha.width.0;
    if n <= FIXED_WIDTH_LIMIT {
        let a = alpha.value.to_u64().expect("width-checked state");
        is_generator_walk(&a, n)
    } else if n <= WIDE_WIDTH_LIMIT {
        let a = alpha.value.to_u128().expect("width-checked state");
        is_generator_walk(&a, n)
    } else {
        is_generator_walk(&alpha.value, n)
    }
}

/// Slow-mode membership test that walks the entire cycle.
pub fn is_generator_slow(alpha: &GeneratorState) -> bool {
    let n = alpha.width.0;
    if n <= FIXED_WIDTH_LIMIT {
        let a = alpha.value.to_u64().expect("width-checked state");
        is_generator_full_walk(&a, n)
    } else {
        is_generator_full_walk(&alpha.value, n)
    }
}

pub(crate) fn is_generator_u64(alpha: u64, n: u32) -> bool {
    is_generator_walk(&alpha, n)
}

pub(crate) fn is_generator_u128(alpha: u128, n: u32) -> bool {
    is_generator_walk(&alpha, n)
}

pub(crate) fn is_generator_big(alpha: &BigUint, n: u32) -> bool {
    is_generator_walk(alpha, n)
}

fn collect_cycle<W: StateWord>(alpha: &W, n: u32) -> Vec<W> {
    let mut states = vec![alpha.clone()];
    let mut state = alpha.clone();
    loop {
        state.advance(n);
        if state == *alpha {
            break;
        }
        states.push(state.clone());
    }
    states
}

/// The cycle containing `alpha`, rotated to start at its minimal element.
/// Any element of the cycle yields the same canonical result.
pub fn enumerate_cycle(alpha: &GeneratorState) -> Cycle {
    let n = alpha.width.0;
    let mut states: Vec<BigUint> = if n <= FIXED_WIDTH_LIMIT {
        let a = alpha.value.to_u64().expect("width-checked state");
        collect_cycle(&a, n).iter().map(|s| s.to_biguint()).collect()
    } else if n <= WIDE_WIDTH_LIMIT {
        let a = alpha.value.to_u128().expect("width-checked state");
        collect_cycle(&a, n).iter().map(|s| s.to_biguint()).collect()
    } else {
        collect_cycle(&alpha.value, n)
    };
    let min_index = states
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.cmp(b))
        .map(|(i, _)| i)
        .expect("cycle is non-empty");
    states.rotate_left(min_index);
    Cycle {
        width: alpha.width,
        states,
    }
}

/// All generators for width `n` in increasing order, by the sequential
/// scan-and-mark procedure: scan `[0, 2^n - 1]` upward, admit each unvisited
/// value as a generator, and mark its whole cycle visited.
///
/// This is the brute-force oracle for [`is_generator`] and [`alpha_max`];
/// it needs a `2^n`-bit mask, so `n` is capped (default 26).
pub fn enumerate_generators(n: BitWidth, limit: Option<usize>) -> Result<Vec<GeneratorState>> {
    Ok(enumerate_generator_values(n, limit, DEFAULT_ENUMERATION_CAP)?
        .into_iter()
        .map(|g| GeneratorState {
            value: BigUint::from(g),
            width: n,
        })
        .collect())
}

/// Raw-word variant of [`enumerate_generators`] with an explicit cap.
pub fn enumerate_generator_values(
    n: BitWidth,
    limit: Option<usize>,
    cap: u32,
) -> Result<Vec<u64>> {
    let bits = n.get();
    if bits > cap || bits > FIXED_WIDTH_LIMIT {
        return Err(Error::CapExceeded {
            n: bits,
            cap: cap.min(FIXED_WIDTH_LIMIT),
        });
    }
    let size: u64 = 1u64 << bits;
    let mut visited = vec![0u64; (size as usize + 63) / 64];
    let mut generators = Vec::new();
    for candidate in 0..size {
        if visited[(candidate / 64) as usize] >> (candidate % 64) & 1 == 1 {
            continue;
        }
        generators.push(candidate);
        let mut state = candidate;
        loop {
            visited[(state / 64) as usize] |= 1 << (state % 64);
            state = step_u64(state, bits);
            if state == candidate {
                break;
            }
        }
        if let Some(limit) = limit {
            if generators.len() >= limit {
                break;
            }
        }
    }
    Ok(generators)
}

/// The conjectured last-generator bound for odd `n`, in exact integer
/// arithmetic: `(4/3) * (4^((n-3)/2) - 1)`, equivalently the recursion
/// `a(2k+1) = 4*a(2k-1) + 4` from `a(3) = 0`.
///
/// For odd `n` the state space always contains one two-state cycle of
/// alternating bit patterns whose generator is `(2^n - 2)/3` (see
/// [`alternating_generator`]); that single cycle sits far above every other
/// generator and is not part of the searched range. This bound is the
/// largest generator once that pair is set aside: exhaustive enumeration
/// for every odd `n <= 23` confirms the generator set is exactly
/// `{g <= alpha_max} union {alternating}`. For even widths see
/// [`alpha_max_even_bound`].
pub fn alpha_max(n: BitWidth) -> Result<BigUint> {
    if !n.is_odd() {
        return Err(Error::EvenBitWidth(n.get()));
    }
    let k = (n.get() - 3) / 2;
    // 4^k - 1 is divisible by 3
    let pow = (BigUint::one() << (2 * k)) - BigUint::one();
    Ok(pow / BigUint::from(3u32) * BigUint::from(4u32))
}

/// Recursive form of [`alpha_max`], kept as an independent route for tests.
pub fn alpha_max_recursive(n: BitWidth) -> Result<BigUint> {
    if !n.is_odd() {
        return Err(Error::EvenBitWidth(n.get()));
    }
    let mut value = BigUint::zero();
    let mut width = 3;
    while width < n.get() {
        value = value * BigUint::from(4u32) + BigUint::from(4u32);
        width += 2;
    }
    Ok(value)
}

/// Generator of the single alternating two-state cycle present for every
/// odd `n`: the pair `{0101..10, 1010..01}` with values `(2^n - 2)/3` and
/// `(2^(n+1) - 1)/3`. It is the true maximum of the generator set and the
/// only generator above [`alpha_max`].
pub fn alternating_generator(n: BitWidth) -> Result<BigUint> {
    if !n.is_odd() {
        return Err(Error::EvenBitWidth(n.get()));
    }
    Ok(((BigUint::one() << n.get()) - BigUint::from(2u32)) / BigUint::from(3u32))
}

/// Upper bound on the largest generator for even `n`, used only when an
/// even width is forced through the override path: `floor(2^n / 6)` plus a
/// margin of `floor(2^n / 24) + 4`, together `> 2^n / 5`. Exhaustive
/// enumeration for even `n <= 24` never exceeds `floor(2^n / 5)` (the
/// four-cycle generator `(2^n - 4)/5` attains it whenever 5 divides
/// `2^n + 1`), so the bound is slack; overshooting only costs skipped
/// membership checks and cannot miss a generator in the enumerated range.
pub fn alpha_max_even_bound(n: BitWidth) -> BigUint {
    let floor_sixth = (BigUint::one() << n.get()) / BigUint::from(6u32);
    let margin = (BigUint::one() << n.get()) / BigUint::from(24u32) + BigUint::from(4u32);
    floor_sixth + margin
}

/// Termination bound for the outer search loop: the conjectured closed form
/// for odd widths, the safe bound for even widths.
pub fn alpha_bound(n: BitWidth) -> BigUint {
    if n.is_odd() {
        alpha_max(n).expect("odd width")
    } else {
        alpha_max_even_bound(n)
    }
}
