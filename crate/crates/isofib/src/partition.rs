//! Integer partitions with bounded parts or parts from a fixed set.
//!
//! Enumeration is depth-first over canonical decreasing-part sequences;
//! counting goes through an independent dynamic-programming table so the
//! two routes can be checked against each other.

/// All partitions of `n` into parts in `1..=max_part`, each written in
/// decreasing order, listed in lexicographically increasing order.
pub fn bounded_partitions(n: u32, max_part: u32) -> Vec<Vec<u32>> {
    let parts: Vec<u32> = (1..=max_part).collect();
    partitions_with_parts(n, &parts)
}

/// All partitions of `n` into parts drawn from `parts` (repetition
/// allowed), decreasing within each partition, lexicographic order.
pub fn partitions_with_parts(n: u32, parts: &[u32]) -> Vec<Vec<u32>> {
    let mut allowed: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
    allowed.sort_unstable();
    allowed.dedup();
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, u32::MAX, &allowed, &mut current, &mut out);
    out
}

fn descend(
    remaining: u32,
    cap: u32,
    allowed: &[u32],
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for &p in allowed.iter().filter(|&&p| p <= cap && p <= remaining) {
        current.push(p);
        descend(remaining - p, p, allowed, current, out);
        current.pop();
    }
}

/// Number of partitions of `n` with parts in `1..=max_part`, by the
/// standard DP on (n, largest part). Independent of the enumeration above.
pub fn count_bounded_partitions(n: u32, max_part: u32) -> u64 {
    let n = n as usize;
    let k = max_part as usize;
    // table[m] = number of partitions of m with parts <= current bound
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for part in 1..=k {
        for m in part..=n {
            table[m] += table[m - part];
        }
    }
    table[n]
}

/// Same DP for parts restricted to a set.
pub fn count_partitions_with_parts(n: u32, parts: &[u32]) -> u64 {
    let n = n as usize;
    let mut allowed: Vec<usize> = parts.iter().map(|&p| p as usize).filter(|&p| p > 0).collect();
    allowed.sort_unstable();
    allowed.dedup();
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for part in allowed {
        for m in part..=n {
            table[m] += table[m - part];
        }
    }
    table[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_matches_dp_counts() {
        for n in 0..=14 {
            for k in 1..=6 {
                assert_eq!(
                    bounded_partitions(n, k).len() as u64,
                    count_bounded_partitions(n, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn partitions_are_canonical_and_ordered() {
        let ps = bounded_partitions(6, 3);
        for p in &ps {
            assert!(p.windows(2).all(|w| w[0] >= w[1]), "not decreasing: {p:?}");
            assert_eq!(p.iter().sum::<u32>(), 6);
        }
        let mut sorted = ps.clone();
        sorted.sort();
        assert_eq!(ps, sorted);
        assert_eq!(ps.len(), 7);
    }

    #[test]
    fn parts_from_set() {
        let ps = partitions_with_parts(24, &[6, 8, 9, 10]);
        assert_eq!(
            ps,
            vec![
                vec![6, 6, 6, 6],
                vec![8, 8, 8],
                vec![9, 9, 6],
                vec![10, 8, 6],
            ]
        );
        assert_eq!(count_partitions_with_parts(24, &[6, 8, 9, 10]), 4);
    }

    #[test]
    fn empty_partition_of_zero() {
        assert_eq!(bounded_partitions(0, 5), vec![Vec::<u32>::new()]);
        assert_eq!(count_bounded_partitions(0, 5), 1);
    }
}
