use std::collections::BTreeSet;

use super::{Color, FinStruct, OrderError, Shape};

/// Default cap on the number of structures a single enumeration may return.
pub const DEFAULT_ENUMERATION_CAP: usize = 20_000;

fn class_count(n: usize) -> u128 {
    // sum over k reds of C(n, k) * 2^(k (n - k))
    let mut binom: u128 = 1;
    let mut total: u128 = 0;
    for k in 0..=n as u128 {
        let n = n as u128;
        total = total.saturating_add(binom.saturating_mul(1u128 << (k * (n - k)).min(100)));
        binom = binom * (n - k) / (k + 1);
    }
    total
}

/// One representative per isomorphism class of structures with exactly `n`
/// points, on positions `1/1 .. n/1` with ids `1 .. n`.
///
/// Labeled enumeration (every colouring, every subset of red/blue pairs) is
/// deduplicated by [`Shape`].
pub fn enumerate_structures(n: usize, cap: usize) -> Result<Vec<FinStruct>, OrderError> {
    if n >= 32 || class_count(n) > cap as u128 {
        return Err(OrderError::BudgetExceeded(format!("enumerating size {n} exceeds cap {cap}")));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..(1u32 << n) {
        let colors: Vec<Color> = (0..n).map(|i| if mask >> i & 1 == 1 { Color::Blue } else { Color::Red }).collect();
        let cross: Vec<(usize, usize)> =
            (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).filter(|&(i, j)| colors[i] != colors[j]).collect();
        for sub in 0..(1u64 << cross.len()) {
            let edges = cross.iter().enumerate().filter(|(k, _)| sub >> k & 1 == 1).map(|(_, &e)| e).collect();
            let shape = Shape { colors: colors.clone(), edges };
            if seen.insert(shape.clone()) {
                out.push(shape.to_struct());
            }
        }
    }
    Ok(out)
}

/// All classes of sizes `1 ..= n`, smallest first.
pub fn enumerate_up_to(n: usize, cap: usize) -> Result<Vec<FinStruct>, OrderError> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_structures(k, cap.saturating_sub(out.len()))?);
    }
    Ok(out)
}
