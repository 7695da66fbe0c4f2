use std::collections::BTreeSet;

use super::Partition;
use crate::error::{Error, Result};

/// Irreducible symmetric-group character `chi_lambda` evaluated on cycle type `mu`,
/// by the Murnaghan-Nakayama rule on beta-sets.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.size(), mu.size()));
    }
    let len = lambda.len();
    let beta: BTreeSet<usize> = lambda.parts().iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    Ok(mn(&beta, mu.parts()))
}

fn mn(beta: &BTreeSet<usize>, cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return 1;
    };
    let mut total = 0;
    for &b in beta {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        // beads strictly between b - r and b give the leg length of the rim hook
        let leg = beta.range(b - r + 1..b).count();
        let mut next = beta.clone();
        next.remove(&b);
        next.insert(b - r);
        let sign = if leg.is_multiple_of(2) { 1 } else { -1 };
        total += sign * mn(&next, rest);
    }
    total
}
