//! Algebraic normal form via the binary Moebius transform.
//!
//! Coefficient `m` belongs to the monomial that multiplies the variables
//! whose index bits are set in `m`, using the same bit-to-variable mapping as
//! table positions: index bit `p` is `x_{n-p}`.

use std::fmt;

use crate::table::TruthTable;

const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// In-place Moebius butterfly over packed bits. Self-inverse.
fn moebius_in_place(n: u32, words: &mut [u64]) {
    for p in 0..n.min(6) {
        let shift = 1u32 << p;
        for w in words.iter_mut() {
            *w ^= (*w & LOW_MASKS[p as usize]) << shift;
        }
    }
    let mut h = 1usize;
    while h < words.len() {
        for pair in words.chunks_exact_mut(2 * h) {
            let (lo, hi) = pair.split_at_mut(h);
            hi.iter_mut().zip(lo.iter()).for_each(|(b, a)| *b ^= a);
        }
        h *= 2;
    }
}

/// ANF coefficients of a Boolean function, one bit per monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnfTable {
    coeffs: TruthTable,
}

impl AnfTable {
    pub fn n(&self) -> u32 {
        self.coeffs.n()
    }

    /// Coefficients viewed as a bit table.
    pub fn coeffs(&self) -> &TruthTable {
        &self.coeffs
    }

    pub fn coeff(&self, monomial: u64) -> bool {
        self.coeffs.bit(monomial)
    }

    /// Indices of the monomials with coefficient 1, ascending.
    pub fn monomials(&self) -> Vec<u64> {
        (0..self.coeffs.len())
            .filter(|&m| self.coeffs.bit(m))
            .collect()
    }

    /// Largest monomial degree present; 0 for both constant polynomials.
    pub fn degree(&self) -> u32 {
        let mut best = 0;
        for (wi, &w) in self.coeffs.words().iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                let b = rest.trailing_zeros() as u64;
                best = best.max(((wi as u64) << 6 | b).count_ones());
                rest &= rest - 1;
            }
        }
        best
    }

    /// True when no monomial of positive degree is present.
    pub fn is_constant(&self) -> bool {
        let mut words = self.coeffs.words().to_vec();
        words[0] &= !1;
        words.iter().all(|&w| w == 0)
    }

    /// Evaluates the polynomial back into a truth table.
    pub fn to_table(&self) -> TruthTable {
        let mut words = self.coeffs.words().to_vec();
        moebius_in_place(self.n(), &mut words);
        TruthTable::from_words(self.n(), words).expect("same shape as coefficients")
    }

    /// Variables of monomial `m` as 1-based indices, ascending.
    pub fn monomial_vars(&self, m: u64) -> Vec<u32> {
        let n = self.n();
        (1..=n).filter(|&j| (m >> (n - j)) & 1 == 1).collect()
    }
}

/// Renders as `x1x2x3 + x1x2 + x2x3`: higher degree first, then by variable
/// list, constant term last. The zero polynomial prints as `0`.
impl fmt::Display for AnfTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<Vec<u32>> = self
            .monomials()
            .into_iter()
            .map(|m| self.monomial_vars(m))
            .collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        terms.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let rendered: Vec<String> = terms
            .iter()
            .map(|vars| {
                if vars.is_empty() {
                    "1".to_string()
                } else {
                    vars.iter().map(|j| format!("x{j}")).collect()
                }
            })
            .collect();
        f.write_str(&rendered.join(" + "))
    }
}

/// ANF of `t`.
pub fn to_anf(t: &TruthTable) -> AnfTable {
    let mut words = t.words().to_vec();
    moebius_in_place(t.n(), &mut words);
    AnfTable {
        coeffs: TruthTable::from_words(t.n(), words).expect("same shape as input"),
    }
}

/// Algebraic degree; constants report 0.
pub fn degree(t: &TruthTable) -> u32 {
    to_anf(t).degree()
}

/// True iff `t` has degree at most 1.
pub fn is_affine(t: &TruthTable) -> bool {
    degree(t) <= 1
}
