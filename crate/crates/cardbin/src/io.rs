//! Line-oriented text formats for instances and packings.
//!
//! Instance files:
//! ```text
//! BPCC v1
//! k 5
//! # a comment
//! item 1/2 x3
//! item 1/7
//! ```
//! `item p/q xN` expands to N consecutive copies. Packing files:
//! ```text
//! PACKING v1
//! bins 2
//! bin 0: 0 1 4
//! bin 1: 2 3
//! ```
//! Fractions are always written in lowest terms as `num/den`.

use crate::error::{Error, Result};
use crate::instance::{Instance, Packing};
use crate::rational::Rational;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a `BPCC v1` instance file.
pub fn read_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);

    let (ln, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty instance file"))?;
    if header != "BPCC v1" {
        return Err(parse_err(ln, format!("expected `BPCC v1`, got `{header}`")));
    }

    let (ln, k_line) = lines
        .next()
        .ok_or_else(|| parse_err(ln, "missing `k <integer>` line"))?;
    let k = k_line
        .strip_prefix("k ")
        .and_then(|v| v.trim().parse::<u32>().ok())
        .ok_or_else(|| parse_err(ln, format!("expected `k <integer>`, got `{k_line}`")))?;

    let mut sizes = Vec::new();
    for (ln, line) in lines {
        let rest = line
            .strip_prefix("item ")
            .ok_or_else(|| parse_err(ln, format!("expected `item <fraction>`, got `{line}`")))?
            .trim();
        let (frac_str, count) = match rest.split_once(char::is_whitespace) {
            Some((frac, tail)) => {
                let tail = tail.trim();
                let count = tail
                    .strip_prefix('x')
                    .and_then(|c| c.parse::<usize>().ok())
                    .filter(|&c| c > 0)
                    .ok_or_else(|| parse_err(ln, format!("expected `x<count>`, got `{tail}`")))?;
                (frac, count)
            }
            None => (rest, 1),
        };
        let size: Rational = frac_str
            .parse()
            .map_err(|e| parse_err(ln, format!("bad fraction `{frac_str}`: {e}")))?;
        for _ in 0..count {
            sizes.push(size.clone());
        }
    }

    Instance::new(k, sizes)
}

/// Renders an instance, compressing runs of equal consecutive sizes with `xN`.
pub fn write_instance(instance: &Instance) -> String {
    let mut out = format!("BPCC v1\nk {}\n", instance.k);
    let mut i = 0;
    while i < instance.sizes.len() {
        let size = &instance.sizes[i];
        let mut run = 1;
        while i + run < instance.sizes.len() && &instance.sizes[i + run] == size {
            run += 1;
        }
        if run == 1 {
            out.push_str(&format!("item {}\n", size.as_fraction()));
        } else {
            out.push_str(&format!("item {} x{}\n", size.as_fraction(), run));
        }
        i += run;
    }
    out
}

/// Parses a `PACKING v1` file against `instance` (levels are recomputed,
/// item indices range-checked).
pub fn read_packing(text: &str, instance: &Instance) -> Result<Packing> {
    let mut lines = content_lines(text);

    let (ln, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty packing file"))?;
    if header != "PACKING v1" {
        return Err(parse_err(ln, format!("expected `PACKING v1`, got `{header}`")));
    }

    let (ln, bins_line) = lines
        .next()
        .ok_or_else(|| parse_err(ln, "missing `bins <m>` line"))?;
    let m = bins_line
        .strip_prefix("bins ")
        .and_then(|v| v.trim().parse::<usize>().ok())
        .ok_or_else(|| parse_err(ln, format!("expected `bins <m>`, got `{bins_line}`")))?;

    let mut groups: Vec<Vec<usize>> = Vec::with_capacity(m);
    for (ln, line) in lines {
        let rest = line
            .strip_prefix("bin ")
            .ok_or_else(|| parse_err(ln, format!("expected `bin <j>: ...`, got `{line}`")))?;
        let (idx_str, items_str) = rest
            .split_once(':')
            .ok_or_else(|| parse_err(ln, "missing `:` in bin line"))?;
        let idx: usize = idx_str
            .trim()
            .parse()
            .map_err(|_| parse_err(ln, format!("bad bin index `{}`", idx_str.trim())))?;
        if idx != groups.len() {
            return Err(parse_err(
                ln,
                format!("bin index {idx} out of order (expected {})", groups.len()),
            ));
        }
        let mut items = Vec::new();
        for tok in items_str.split_whitespace() {
            let item: usize = tok
                .parse()
                .map_err(|_| parse_err(ln, format!("bad item index `{tok}`")))?;
            items.push(item);
        }
        groups.push(items);
    }

    if groups.len() != m {
        return Err(Error::InconsistentInput(format!(
            "header declares {m} bins but {} bin lines follow",
            groups.len()
        )));
    }
    Packing::from_groups(instance, groups)
}

pub fn write_packing(packing: &Packing) -> String {
    let mut out = format!("PACKING v1\nbins {}\n", packing.num_bins());
    for (j, bin) in packing.bins.iter().enumerate() {
        out.push_str(&format!("bin {j}:"));
        for &item in &bin.items {
            out.push_str(&format!(" {item}"));
        }
        out.push('\n');
    }
    out
}
