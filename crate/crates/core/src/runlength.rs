//! Run-length notation for bitstrings: `a_i` stands for `i` copies of the
//! symbol `a`, and a bare symbol is a run of one. `0_7 1 0_3` is
//! `00000001000`. Braced counts (`0_{15}`) are accepted on input.

use crate::error::{Error, Result};
use crate::table::TruthTable;

/// Renders `t` as space-separated runs.
pub fn encode(t: &TruthTable) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < t.len() {
        let sym = t.bit(i);
        let start = i;
        while i < t.len() && t.bit(i) == sym {
            i += 1;
        }
        let ch = if sym { '1' } else { '0' };
        match i - start {
            1 => out.push(ch.to_string()),
            run => out.push(format!("{ch}_{run}")),
        }
    }
    out.join(" ")
}

/// Expands whitespace-separated runs into a `'0'`/`'1'` string.
pub fn decode(text: &str) -> Result<String> {
    let mut bits = String::new();
    for token in text.split_whitespace() {
        let bad = || Error::RunLength {
            token: token.to_string(),
        };
        let (sym, count) = match token.split_once('_') {
            None => (token, 1usize),
            Some((sym, count)) => {
                let count = count
                    .strip_prefix('{')
                    .and_then(|c| c.strip_suffix('}'))
                    .unwrap_or(count);
                (sym, count.parse().map_err(|_| bad())?)
            }
        };
        if sym != "0" && sym != "1" || count == 0 {
            return Err(bad());
        }
        bits.extend(std::iter::repeat(sym).take(count));
    }
    Ok(bits)
}

/// Parses run-length text straight into a table.
pub fn parse_table(text: &str) -> Result<TruthTable> {
    TruthTable::from_bitstring(&decode(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encodes_runs() {
        let t = TruthTable::from_bitstring("00000001000101110001011101111111").unwrap();
        assert_eq!(encode(&t), "0_7 1 0_3 1 0 1_3 0_3 1 0 1_3 0 1_7");
        assert_eq!(encode(&TruthTable::zeros(0).unwrap()), "0");
    }

    #[test]
    fn decodes_braced_counts() {
        assert_eq!(decode("0_{3} 1 1_2").unwrap(), "000111");
        assert!(decode("2_3").is_err());
        assert!(decode("0_x").is_err());
        assert!(decode("1_0").is_err());
    }
}
