//! Subset-sum transforms over truth tables.

use crate::boolfn::{Band, TruthTable};

/// `U[z]` = union of the 1-inputs `y ≤ z` (restricted to weights in `band`
/// when given), for every `z`.
pub(crate) fn downset_unions(f: &TruthTable, band: Option<Band>) -> Vec<u32> {
    let n = f.arity();
    let mut u: Vec<u32> = (0..f.len())
        .map(|z| {
            let keep = f.get(z) && band.is_none_or(|b| b.contains(z.count_ones() as usize));
            if keep {
                z as u32
            } else {
                0
            }
        })
        .collect();
    for i in 0..n {
        let bit = 1usize << i;
        for z in 0..u.len() {
            if z & bit != 0 {
                u[z] |= u[z ^ bit];
            }
        }
    }
    u
}

/// Nonzero 0-inputs that are unions of 1-inputs below them.
pub(crate) fn violation_ends(f: &TruthTable, band: Option<Band>) -> Vec<u64> {
    let u = downset_unions(f, band);
    (1..f.len()).filter(|&z| !f.get(z) && u[z as usize] as u64 == z).collect()
}

/// Bitset of `D[z]` = some 1-input lies below `z`.
pub(crate) fn has_one_below(f: &TruthTable) -> TruthTable {
    const LOW: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0F0F_0F0F_0F0F_0F0F,
        0x00FF_00FF_00FF_00FF,
        0x0000_FFFF_0000_FFFF,
        0x0000_0000_FFFF_FFFF,
    ];
    let n = f.arity();
    let mut d = f.clone();
    let words = d.words_mut();
    for i in 0..n.min(6) {
        for w in words.iter_mut() {
            *w |= (*w & LOW[i]) << (1 << i);
        }
    }
    for i in 6..n {
        let stride = 1usize << (i - 6);
        for k in 0..words.len() {
            if k & stride != 0 {
                words[k] |= words[k ^ stride];
            }
        }
    }
    if n < 6 {
        words[0] &= (1u64 << (1u32 << n)) - 1;
    }
    d
}
