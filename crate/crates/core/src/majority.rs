//! The majority family `M(k)`: construction, halves and quarters, closed-form
//! weights and nonlinearities, and a construct-and-compare verification of
//! every identity relating them.
//!
//! `M(k)` is 1 exactly on inputs of weight at least `k/2`. `A(k)` and `B(k)`
//! are its left and right halves; `Q1(k)` is its first quarter. `C(S)` is the
//! complement and `S*` the reversal of a table.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::{brute_force_nonlinearity, walsh_transform, BRUTE_FORCE_MAX_VARS};
use crate::table::{TruthTable, MAX_VARS};

/// Largest argument accepted by [`binomial`].
pub const BINOMIAL_MAX: u32 = 64;
/// Largest `k` whose closed forms fit in 64 bits.
pub const FORMULA_MAX_K: u32 = 64;
/// Range of `k` accepted by [`verify_majority`].
pub const VERIFY_MIN_K: u32 = 4;
pub const VERIFY_MAX_K: u32 = 24;
/// Measured nonlinearities are cross-checked by brute force up to this `k`.
pub const BRUTE_FORCE_MAX_K: u32 = 15;

fn range_err(what: &'static str, value: u32, min: u32, max: u32) -> Error {
    Error::OutOfRange {
        what,
        value: value as u64,
        min: min as u64,
        max: max as u64,
    }
}

/// Exact binomial coefficient by Pascal's rule, `0 <= b <= a <= 64`.
pub fn binomial(a: u32, b: u32) -> Result<u64> {
    if a > BINOMIAL_MAX {
        return Err(range_err("binomial upper argument", a, 0, BINOMIAL_MAX));
    }
    if b > a {
        return Err(range_err("binomial lower argument", b, 0, a));
    }
    let mut row = vec![0u64; (a + 1) as usize];
    row[0] = 1;
    for i in 1..=a as usize {
        for j in (1..=i).rev() {
            row[j] += row[j - 1];
        }
    }
    Ok(row[b as usize])
}

fn binomial_sum(a: u32, lo: u32, hi: u32) -> Result<u64> {
    (lo..=hi).try_fold(0u64, |acc, j| {
        acc.checked_add(binomial(a, j)?).ok_or(Error::Overflow {
            what: "binomial sum",
        })
    })
}

/// `M(k)`: position `i` is 1 iff `popcount(i) >= ceil(k/2)`.
pub fn majority(k: u32) -> Result<TruthTable> {
    if k == 0 || k > MAX_VARS {
        return Err(range_err("majority variable count", k, 1, MAX_VARS));
    }
    let threshold = k.div_ceil(2);
    TruthTable::from_fn(k, |i| i.count_ones() >= threshold)
}

/// Left half of `M(k)`.
pub fn half_a(k: u32) -> Result<TruthTable> {
    Ok(majority(k)?.halves()?.0)
}

/// Right half of `M(k)`.
pub fn half_b(k: u32) -> Result<TruthTable> {
    Ok(majority(k)?.halves()?.1)
}

fn require_odd(what: &'static str, k: u32, min: u32) -> Result<()> {
    if k % 2 == 0 {
        return Err(Error::EvenCount { what, k });
    }
    if k < min || k > MAX_VARS {
        return Err(range_err(what, k, min, MAX_VARS));
    }
    Ok(())
}

/// First quarter `Q1(k)` of `M(k)` for odd `k >= 5`.
pub fn quarter_q1(k: u32) -> Result<TruthTable> {
    require_odd("first quarter", k, 5)?;
    Ok(half_a(k)?.halves()?.0)
}

/// Closed-form nonlinearity of `M(k)` for `4 <= k <= 64`:
/// `2^(2n) - C(2n, n)` for `k = 2n + 1` and half of that for `k = 2n`.
pub fn predicted_nonlinearity(k: u32) -> Result<u64> {
    if !(4..=FORMULA_MAX_K).contains(&k) {
        return Err(range_err("closed-form nonlinearity", k, 4, FORMULA_MAX_K));
    }
    let n = k / 2;
    let central = binomial(2 * n, n)?;
    if k % 2 == 1 {
        // k <= 63 here, so 2n <= 62.
        Ok((1u64 << (2 * n)) - central)
    } else {
        Ok((1u64 << (2 * n - 1)) - central / 2)
    }
}

/// Closed-form weight of `A(2n + 1)`: `2^(2n-1) - C(2n, n) / 2`, `n >= 2`.
pub fn predicted_weight_a_odd(n: u32) -> Result<u64> {
    if !(2..=FORMULA_MAX_K / 2).contains(&n) {
        return Err(range_err(
            "left-half weight parameter",
            n,
            2,
            FORMULA_MAX_K / 2,
        ));
    }
    Ok((1u64 << (2 * n - 1)) - binomial(2 * n, n)? / 2)
}

fn check_b_even_param(n: u32) -> Result<()> {
    if !(3..=FORMULA_MAX_K / 2).contains(&n) {
        return Err(range_err("right-half parameter", n, 3, FORMULA_MAX_K / 2));
    }
    Ok(())
}

/// Weight of the left half of `Q1(2n + 1)`: `sum_{j=n+1}^{2n-2} C(2n-2, j)`.
pub fn predicted_weight_q1a(n: u32) -> Result<u64> {
    check_b_even_param(n)?;
    binomial_sum(2 * n - 2, n + 1, 2 * n - 2)
}

/// Weight of the right half of `Q1(2n + 1)`: `sum_{j=n}^{2n-2} C(2n-2, j)`.
pub fn predicted_weight_q1b(n: u32) -> Result<u64> {
    check_b_even_param(n)?;
    binomial_sum(2 * n - 2, n, 2 * n - 2)
}

/// `2 sum_{j=n+1}^{2n-2} C(2n-2, j) + C(2n-2, n)`.
pub fn b_even_sum_form(n: u32) -> Result<u64> {
    check_b_even_param(n)?;
    Ok(2 * binomial_sum(2 * n - 2, n + 1, 2 * n - 2)? + binomial(2 * n - 2, n)?)
}

/// `sum_{j=n+1}^{2n-2} C(2n-2, j) + 2^(2n-3) - C(2n-2, n-1) / 2`.
pub fn b_even_power_form(n: u32) -> Result<u64> {
    check_b_even_param(n)?;
    Ok(
        binomial_sum(2 * n - 2, n + 1, 2 * n - 2)? + (1u64 << (2 * n - 3))
            - binomial(2 * n - 2, n - 1)? / 2,
    )
}

/// Closed-form nonlinearity of `B(2n)` for `n >= 3`. Both displayed forms
/// are evaluated and must agree.
pub fn predicted_nonlinearity_b_even(n: u32) -> Result<u64> {
    let sum_form = b_even_sum_form(n)?;
    let power_form = b_even_power_form(n)?;
    if sum_form != power_form {
        return Err(Error::FormulaMismatch {
            what: "right-half nonlinearity",
            left: sum_form,
            right: power_form,
        });
    }
    Ok(sum_form)
}

/// Which nonlinearity route produced a measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oracle {
    Spectrum,
    BruteForce,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub pass: bool,
}

/// A fact recorded for diagnosis but not asserted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

/// Per-`k` verification record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MajorityReport {
    pub k: u32,
    /// Measured `wt(M(k))`.
    pub weight: u64,
    /// Measured `N(M(k))`.
    pub nonlinearity: u64,
    /// Closed-form `N(M(k))`.
    pub predicted: u64,
    pub identities: Vec<IdentityResult>,
    pub oracle: Oracle,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub observations: Vec<Observation>,
}

impl MajorityReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityResult> {
        self.identities.iter().filter(|i| !i.pass)
    }
}

/// Spectrum nonlinearity, plus brute force when `use_brute` and the table is
/// small enough. The flag reports whether the two routes agreed.
fn measure(t: &TruthTable, use_brute: bool) -> Result<(u64, Oracle, bool)> {
    let spectral = walsh_transform(t).nonlinearity()?;
    if use_brute && t.n() <= BRUTE_FORCE_MAX_VARS {
        let brute = brute_force_nonlinearity(t)?;
        Ok((spectral, Oracle::Both, spectral == brute))
    } else {
        Ok((spectral, Oracle::Spectrum, true))
    }
}

struct Checks(Vec<IdentityResult>);

impl Checks {
    fn push(&mut self, name: &str, pass: bool) {
        self.0.push(IdentityResult {
            name: name.to_string(),
            pass,
        });
    }
}

/// Builds the report for a single `k` in `4..=24`.
pub fn verify_k(k: u32) -> Result<MajorityReport> {
    if !(VERIFY_MIN_K..=VERIFY_MAX_K).contains(&k) {
        return Err(range_err("verification k", k, VERIFY_MIN_K, VERIFY_MAX_K));
    }
    let n = k / 2;
    let use_brute = k <= BRUTE_FORCE_MAX_K;
    let m = majority(k)?;
    let (a, b) = m.halves()?;
    let weight = m.weight();
    let predicted = predicted_nonlinearity(k)?;
    let (nonlinearity, oracle, routes_agree) = measure(&m, use_brute)?;

    let mut checks = Checks(Vec::new());
    let mut observations = Vec::new();
    checks.push("threshold-definitions-agree", {
        // >= k/2 read literally, against the odd/even case split.
        let literal = TruthTable::from_fn(k, |i| 2 * i.count_ones() >= k)?;
        let split = if k % 2 == 1 { n + 1 } else { n };
        literal == m && TruthTable::from_fn(k, |i| i.count_ones() >= split)? == m
    });
    if oracle == Oracle::Both {
        checks.push("nonlinearity-oracles-agree", routes_agree);
    }

    if k % 2 == 1 {
        let m_prev = majority(k - 1)?;
        checks.push(
            "odd-from-even-decomposition",
            m == m_prev.complement().reverse().concat(&m_prev)?,
        );
        checks.push("right-half-reflects-left", b == a.complement().reverse());
        checks.push("right-half-is-previous-majority", b == m_prev);
        checks.push("left-half-weight", a.weight() == predicted_weight_a_odd(n)?);
        checks.push("odd-balanced", weight == 1u64 << (2 * n));
        checks.push("nonlinearity-closed-form-odd", nonlinearity == predicted);

        let (n_a, _, a_agree) = measure(&a, use_brute)?;
        checks.push(
            "reflected-extension-doubles",
            nonlinearity == 2 * n_a && a_agree,
        );
        let (n_prev, _, prev_agree) = measure(&m_prev, use_brute)?;
        checks.push("odd-doubles-even", nonlinearity == 2 * n_prev && prev_agree);
        checks.push(
            "left-half-weight-equals-nonlinearity",
            n_a == n_prev && n_prev == a.weight(),
        );

        if n >= 3 {
            let q1 = a.halves()?.0;
            let b_prev = m_prev.halves()?.1;
            checks.push(
                "first-quarter-reflects-right-half",
                q1 == b_prev.complement().reverse(),
            );
            let (q1a, q1b) = q1.halves()?;
            checks.push(
                "first-quarter-half-weights",
                q1a.weight() == predicted_weight_q1a(n)?
                    && q1b.weight() == predicted_weight_q1b(n)?,
            );
        }
    } else {
        checks.push("nonlinearity-closed-form-even", nonlinearity == predicted);
        if n >= 3 {
            let reflected = b.complement().reverse();
            let closed = predicted_nonlinearity_b_even(n)?;
            checks.push(
                "right-half-closed-forms-agree",
                b_even_sum_form(n)? == b_even_power_form(n)?,
            );
            checks.push("right-half-reflection-weight", reflected.weight() == closed);
            checks.push(
                "right-half-reflection-below-quarter",
                reflected.weight() < 1u64 << (2 * n - 2),
            );
            let (n_b, _, b_agree) = measure(&b, b.n() <= BRUTE_FORCE_MAX_K)?;
            checks.push("right-half-nonlinearity", n_b == closed && b_agree);

            let bound = 1u64 << (2 * n - 3);
            observations.push(Observation {
                name: "right-half-reflection-low-weight".to_string(),
                holds: reflected.weight() <= bound,
                detail: format!(
                    "wt(C(B({k}))*) = {} against 2^{} = {bound}",
                    reflected.weight(),
                    2 * n - 3
                ),
            });
        }
    }

    Ok(MajorityReport {
        k,
        weight,
        nonlinearity,
        predicted,
        identities: checks.0,
        oracle,
        observations,
    })
}

/// One report per `k` in `4..=k_max`, in increasing `k`.
pub fn verify_majority(k_max: u32) -> Result<Vec<MajorityReport>> {
    if !(VERIFY_MIN_K..=VERIFY_MAX_K).contains(&k_max) {
        return Err(range_err(
            "verification k_max",
            k_max,
            VERIFY_MIN_K,
            VERIFY_MAX_K,
        ));
    }
    // Largest tables first so the long jobs start early.
    let ks: Vec<u32> = (VERIFY_MIN_K..=k_max).rev().collect();
    let mut reports: Vec<MajorityReport> =
        ks.into_par_iter().map(verify_k).collect::<Result<_>>()?;
    reports.sort_by_key(|r| r.k);
    Ok(reports)
}
