//! Basis monomials of the exterior algebra as bitmasks over the covector generators.

pub type Mask = u64;

/// Number of generators below bit `g` that are set in `mask`.
#[inline]
fn below(mask: Mask, g: usize) -> u32 {
    (mask & ((1u64 << g) - 1)).count_ones()
}

/// `e_a ∧ e_b = sign · e_{a|b}`; `None` when the masks overlap.
#[inline]
pub fn wedge_sign(a: Mask, b: Mask) -> Option<i8> {
    if a & b != 0 {
        return None;
    }
    // count inversions: pairs (i in a, j in b) with i > j
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros() as usize;
        bb &= bb - 1;
        inv += (a >> (j + 1)).count_ones();
    }
    Some(if inv.is_multiple_of(2) { 1 } else { -1 })
}

/// Generators of a mask in increasing order.
pub fn generators(mask: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

pub fn mask_of(gens: &[usize]) -> Mask {
    gens.iter().fold(0, |m, &g| m | (1u64 << g))
}

/// Sign of the permutation sorting `gens` (all distinct), or `None` on repeats.
pub fn sort_sign(gens: &[usize]) -> Option<(Mask, i8)> {
    let mut mask = 0u64;
    let mut sign = 1i8;
    for &g in gens {
        if mask & (1 << g) != 0 {
            return None;
        }
        // moving g past the already-placed generators above it
        let above = (mask >> (g + 1)).count_ones();
        if above % 2 == 1 {
            sign = -sign;
        }
        mask |= 1 << g;
    }
    Some((mask, sign))
}

/// Removing generator `g` from the front: `e_mask = sign · e_g ∧ e_{mask \ g}`.
#[inline]
pub fn extract_sign(mask: Mask, g: usize) -> i8 {
    if below(mask, g).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All masks with exactly `k` bits among the first `ngen` generators, ascending.
pub fn masks_of_degree(ngen: usize, k: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    if k > ngen {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    // Gosper's hack
    let mut m: Mask = (1u64 << k) - 1;
    let limit: Mask = 1u64 << ngen;
    while m < limit {
        out.push(m);
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::binomial;

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b11, 0b10), None);
        // e0e2 ∧ e1 = -e0e1e2
        assert_eq!(wedge_sign(0b101, 0b010), Some(-1));
    }

    #[test]
    fn sorting_signs() {
        assert_eq!(sort_sign(&[2, 0, 1]), Some((0b111, 1)));
        assert_eq!(sort_sign(&[1, 0]), Some((0b11, -1)));
        assert_eq!(sort_sign(&[1, 1]), None);
    }

    #[test]
    fn extraction_sign_matches_wedge() {
        for mask in 0u64..64 {
            for g in generators(mask) {
                let rest = mask & !(1 << g);
                assert_eq!(wedge_sign(1 << g, rest), Some(extract_sign(mask, g)));
            }
        }
    }

    #[test]
    fn degree_enumeration_counts() {
        for n in 1..=3 {
            let ngen = 4 * n;
            let mut total = 0;
            for k in 0..=ngen {
                let ms = masks_of_degree(ngen, k);
                assert_eq!(ms.len(), binomial(ngen, k));
                assert!(ms.iter().all(|m| m.count_ones() as usize == k));
                total += ms.len();
            }
            assert_eq!(total, 1 << ngen);
        }
    }
}
