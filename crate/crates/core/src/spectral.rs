//! Walsh spectra and nonlinearity.
//!
//! `W_f(w) = sum_x (-1)^(f(x) + w.x)`, computed exactly in integers by the
//! in-place butterfly. The nonlinearity follows from the spectrum as
//! `2^(n-1) - max|W_f| / 2`; [`brute_force_nonlinearity`] is the independent
//! route that scans all affine functions directly.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::{tail_mask, TruthTable};

/// Butterfly passes up to this size run inside one block while it is hot in
/// cache; the remaining passes sweep the whole buffer.
const BLOCK_LOG: u32 = 12;
/// Below this size threading costs more than it saves.
const PAR_MIN_VARS: u32 = 14;

/// Largest variable count accepted by [`brute_force_nonlinearity`].
pub const BRUTE_FORCE_MAX_VARS: u32 = 16;

/// Walsh spectrum, indexed by `w` in the same lexicographic order as table
/// positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: u32,
    values: Vec<i32>,
}

impl WalshSpectrum {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<i32> {
        self.values
    }

    /// Largest `|W_f(w)|` and the smallest `w` attaining it.
    pub fn max_abs(&self) -> (u32, u64) {
        let mut best = (0u32, 0u64);
        for (w, v) in self.values.iter().enumerate() {
            let a = v.unsigned_abs();
            if a > best.0 {
                best = (a, w as u64);
            }
        }
        best
    }

    /// `sum_w W_f(w)^2`; equals `2^(2n)` for every Boolean function.
    pub fn parseval_sum(&self) -> u64 {
        self.values
            .iter()
            .map(|&v| (v as i64 * v as i64) as u64)
            .sum()
    }

    /// `2^(n-1) - max|W| / 2`.
    pub fn nonlinearity(&self) -> Result<u64> {
        if self.n == 0 {
            return Err(Error::ZeroVars);
        }
        let (max, _) = self.max_abs();
        Ok((1u64 << (self.n - 1)) - (max as u64) / 2)
    }
}

#[inline]
fn butterfly(lo: &mut [i32], hi: &mut [i32]) {
    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
        let (x, y) = (*a, *b);
        *a = x + y;
        *b = x - y;
    }
}

/// Expands positions `base..base + out.len()` of `t` to `+1`/`-1` and runs
/// every butterfly pass that stays inside `out`.
fn expand_block(words: &[u64], base: usize, out: &mut [i32]) {
    for (j, slot) in out.iter_mut().enumerate() {
        let i = base + j;
        let bit = (words[i >> 6] >> (i & 63)) & 1;
        *slot = 1 - 2 * bit as i32;
    }
    let mut h = 1;
    while h < out.len() {
        for pair in out.chunks_exact_mut(2 * h) {
            let (lo, hi) = pair.split_at_mut(h);
            butterfly(lo, hi);
        }
        h *= 2;
    }
}

/// Walsh spectrum of `t`.
pub fn walsh_transform(t: &TruthTable) -> WalshSpectrum {
    let n = t.n();
    let len = 1usize << n;
    let block = 1usize << n.min(BLOCK_LOG);
    let words = t.words();
    let mut values = vec![0i32; len];
    let parallel = n >= PAR_MIN_VARS;

    if parallel {
        values
            .par_chunks_mut(block)
            .enumerate()
            .for_each(|(bi, chunk)| expand_block(words, bi * block, chunk));
    } else {
        for (bi, chunk) in values.chunks_mut(block).enumerate() {
            expand_block(words, bi * block, chunk);
        }
    }

    let mut h = block;
    while h < len {
        if parallel {
            values.par_chunks_mut(2 * h).for_each(|pair| {
                let (lo, hi) = pair.split_at_mut(h);
                lo.par_chunks_mut(block)
                    .zip(hi.par_chunks_mut(block))
                    .for_each(|(a, b)| butterfly(a, b));
            });
        } else {
            for pair in values.chunks_exact_mut(2 * h) {
                let (lo, hi) = pair.split_at_mut(h);
                butterfly(lo, hi);
            }
        }
        h *= 2;
    }

    WalshSpectrum { n, values }
}

/// Nonlinearity from the Walsh spectrum. Undefined for `n = 0`.
pub fn nonlinearity(t: &TruthTable) -> Result<u64> {
    if t.n() == 0 {
        return Err(Error::ZeroVars);
    }
    walsh_transform(t).nonlinearity()
}

/// The affine function `c + w.x`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct AffineSpec {
    /// Linear part `w`, indexed like a table position.
    pub mask: u64,
    pub constant: bool,
}

impl AffineSpec {
    pub fn new(mask: u64, constant: bool) -> Self {
        Self { mask, constant }
    }

    pub fn is_linear(&self) -> bool {
        !self.constant
    }
}

/// Truth table of an affine function: position `i` holds
/// `constant + parity(mask & i)`.
pub fn affine_table(spec: AffineSpec, n: u32) -> Result<TruthTable> {
    if n < 64 && spec.mask >> n != 0 {
        return Err(Error::MaskOutOfRange { mask: spec.mask, n });
    }
    TruthTable::from_fn(n, |i| {
        ((spec.mask & i).count_ones() & 1 == 1) ^ spec.constant
    })
}

/// Table of the linear function selecting index bit `p`.
fn index_bit_words(n: u32, p: u32) -> Vec<u64> {
    const PATTERNS: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    let count = crate::table::word_count(n);
    if p < 6 {
        vec![PATTERNS[p as usize] & tail_mask(n); count]
    } else {
        (0..count)
            .map(|wi| {
                if (wi >> (p - 6)) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                }
            })
            .collect()
    }
}

/// Closest affine function to `t` by exhaustive search, with its distance.
/// Ties go to the smallest mask, then to constant 0.
pub fn nearest_affine(t: &TruthTable) -> Result<(AffineSpec, u64)> {
    let n = t.n();
    if n == 0 || n > BRUTE_FORCE_MAX_VARS {
        return Err(Error::BruteForceRange {
            n,
            max: BRUTE_FORCE_MAX_VARS,
        });
    }
    let len = t.len();
    let bit_tables: Vec<Vec<u64>> = (0..n).map(|p| index_bit_words(n, p)).collect();
    let low = n.min(10);
    let chunks = 1u64 << (n - low);

    // Walks the masks of one chunk in Gray-code order, so each step flips a
    // single index-bit table into the running difference `f + a`.
    let scan_chunk = |c: u64| -> (u64, u64, bool) {
        let start = c << low;
        let mut diff = t.words().to_vec();
        for (p, table) in bit_tables.iter().enumerate() {
            if (start >> p) & 1 == 1 {
                diff.iter_mut().zip(table).for_each(|(d, b)| *d ^= b);
            }
        }
        let mut best = (u64::MAX, u64::MAX, false);
        let mut mask = start;
        for s in 0..(1u64 << low) {
            if s > 0 {
                let p = s.trailing_zeros();
                mask ^= 1 << p;
                diff.iter_mut()
                    .zip(&bit_tables[p as usize])
                    .for_each(|(d, b)| *d ^= b);
            }
            let d: u64 = diff.iter().map(|w| w.count_ones() as u64).sum();
            let cand = if len - d < d {
                (len - d, mask, true)
            } else {
                (d, mask, false)
            };
            if cand < best {
                best = cand;
            }
        }
        best
    };

    let best = if n >= PAR_MIN_VARS - 2 {
        (0..chunks).into_par_iter().map(scan_chunk).min().unwrap()
    } else {
        (0..chunks).map(scan_chunk).min().unwrap()
    };
    Ok((AffineSpec::new(best.1, best.2), best.0))
}

/// Nonlinearity as the minimum distance to any affine function, found by
/// scanning all `2^(n+1)` of them. Supports `1 <= n <= 16`.
pub fn brute_force_nonlinearity(t: &TruthTable) -> Result<u64> {
    nearest_affine(t).map(|(_, d)| d)
}

/// Outcome of checking that a low-weight function has nonlinearity equal to
/// its weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowWeightVerdict {
    Pass,
    Fail,
    /// Weight above `2^(n-2)`, or fewer than two variables.
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LowWeightCheck {
    pub weight: u64,
    pub nonlinearity: Option<u64>,
    pub verdict: LowWeightVerdict,
}

/// For `n >= 2` and `wt(t) <= 2^(n-2)`, checks `N(t) = wt(t)`.
pub fn check_weight_equals_nonlinearity(t: &TruthTable) -> LowWeightCheck {
    let weight = t.weight();
    let nonlinearity = nonlinearity(t).ok();
    let verdict = if t.n() < 2 || weight > 1u64 << (t.n() - 2) {
        LowWeightVerdict::NotApplicable
    } else if nonlinearity == Some(weight) {
        LowWeightVerdict::Pass
    } else {
        LowWeightVerdict::Fail
    };
    LowWeightCheck {
        weight,
        nonlinearity,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Direct evaluation of the defining sum.
    fn naive_walsh(t: &TruthTable) -> Vec<i64> {
        (0..t.len())
            .map(|w| {
                (0..t.len())
                    .map(|x| {
                        let e = t.bit(x) as u32 + (w & x).count_ones();
                        if e % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .sum()
            })
            .collect()
    }

    fn random_table(rng: &mut ChaCha8Rng, n: u32) -> TruthTable {
        let words = (0..crate::table::word_count(n))
            .map(|_| rng.gen())
            .collect();
        TruthTable::from_words(n, words).unwrap()
    }

    fn tt(s: &str) -> TruthTable {
        TruthTable::from_bitstring(s).unwrap()
    }

    #[test]
    fn constant_spectrum() {
        let z = TruthTable::zeros(3).unwrap();
        assert_eq!(walsh_transform(&z).values(), &[8, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn sharpness_example() {
        let t = tt("00010011");
        let w = walsh_transform(&t);
        assert_eq!(w.values()[0], 2);
        assert_eq!(nonlinearity(&t).unwrap(), 1);
        assert_eq!(brute_force_nonlinearity(&t).unwrap(), 1);
        assert_eq!(brute_force_nonlinearity(&t.complement()).unwrap(), 1);
        let check = check_weight_equals_nonlinearity(&t);
        assert_eq!(check.verdict, LowWeightVerdict::NotApplicable);
        assert_ne!(check.weight, check.nonlinearity.unwrap());
    }

    #[test]
    fn matches_naive_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..=8 {
            for _ in 0..10 {
                let t = random_table(&mut rng, n);
                let fast: Vec<i64> = walsh_transform(&t)
                    .values()
                    .iter()
                    .map(|&v| v as i64)
                    .collect();
                assert_eq!(fast, naive_walsh(&t), "n = {n}");
            }
        }
    }

    #[test]
    fn parallel_path_agrees_with_naive_on_sampled_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = random_table(&mut rng, 15);
        let w = walsh_transform(&t);
        for _ in 0..20 {
            let u = rng.gen_range(0..t.len());
            let direct: i64 = (0..t.len())
                .map(|x| {
                    if (t.bit(x) as u32 + (u & x).count_ones()) % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .sum();
            assert_eq!(w.values()[u as usize] as i64, direct);
        }
        assert_eq!(w.parseval_sum(), 1u64 << 30);
    }

    #[test]
    fn nonlinearity_undefined_without_variables() {
        assert_eq!(nonlinearity(&tt("1")), Err(Error::ZeroVars));
        assert!(matches!(
            brute_force_nonlinearity(&tt("1")),
            Err(Error::BruteForceRange { n: 0, .. })
        ));
        assert!(matches!(
            brute_force_nonlinearity(&TruthTable::zeros(17).unwrap()),
            Err(Error::BruteForceRange { n: 17, .. })
        ));
    }

    #[test]
    fn affine_tables() {
        assert_eq!(
            affine_table(AffineSpec::new(0, false), 3).unwrap(),
            TruthTable::zeros(3).unwrap()
        );
        assert_eq!(
            affine_table(AffineSpec::new(1, false), 3)
                .unwrap()
                .to_bitstring(),
            "01010101"
        );
        assert_eq!(
            affine_table(AffineSpec::new(8, false), 3),
            Err(Error::MaskOutOfRange { mask: 8, n: 3 })
        );
        for n in 1..=6 {
            for mask in 0..1u64 << n {
                for c in [false, true] {
                    let a = affine_table(AffineSpec::new(mask, c), n).unwrap();
                    assert_eq!(nonlinearity(&a).unwrap(), 0);
                    if mask != 0 {
                        assert_eq!(a.weight(), 1 << (n - 1));
                    }
                }
            }
        }
    }

    #[test]
    fn index_bit_tables_match_definition() {
        for n in 0..=8 {
            for p in 0..n {
                let t = TruthTable::from_words(n, index_bit_words(n, p)).unwrap();
                assert_eq!(t, TruthTable::from_fn(n, |i| (i >> p) & 1 == 1).unwrap());
            }
        }
    }

    #[test]
    fn nearest_affine_reports_a_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=13 {
            let t = random_table(&mut rng, n);
            let (spec, d) = nearest_affine(&t).unwrap();
            assert_eq!(t.distance(&affine_table(spec, n).unwrap()).unwrap(), d);
            assert_eq!(d, nonlinearity(&t).unwrap());
        }
        // x_3 itself: distance 0 at mask 1.
        let (spec, d) = nearest_affine(&tt("01010101")).unwrap();
        assert_eq!((spec, d), (AffineSpec::new(1, false), 0));
    }

    #[test]
    fn max_abs_prefers_smallest_index() {
        // Spectra: 0001 -> (2, 2, 2, -2), 0110 -> (0, 0, 0, 4).
        let (m, w) = walsh_transform(&tt("0001")).max_abs();
        assert_eq!((m, w), (2, 0));
        let (m, w) = walsh_transform(&tt("0110")).max_abs();
        assert_eq!((m, w), (4, 3));
    }

    #[test]
    fn low_weight_check_on_zero_function() {
        let c = check_weight_equals_nonlinearity(&TruthTable::zeros(4).unwrap());
        assert_eq!(c.verdict, LowWeightVerdict::Pass);
        assert_eq!(
            check_weight_equals_nonlinearity(&tt("01")).verdict,
            LowWeightVerdict::NotApplicable
        );
    }
}
