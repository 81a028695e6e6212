//! Candidate generation and the two candidate prunes.

use std::collections::HashSet;

use crate::txdb::{ItemId, Itemset};

/// `C_k` as the (k−2)-way self-join of `L_{k−1}`: every pair of itemsets that
/// agree on all but their last item contributes their union. Output is in
/// lexicographic order.
pub fn join_candidates(prev: &[Itemset]) -> Vec<Itemset> {
    let mut sorted_storage;
    let prev = if prev.windows(2).all(|w| w[0] < w[1]) {
        prev
    } else {
        sorted_storage = prev.to_vec();
        sorted_storage.sort();
        sorted_storage.dedup();
        &sorted_storage[..]
    };
    let mut out = Vec::new();
    for (i, a) in prev.iter().enumerate() {
        let a = a.items();
        let prefix = &a[..a.len() - 1];
        for b in &prev[i + 1..] {
            let b = b.items();
            if b.len() != a.len() || &b[..b.len() - 1] != prefix {
                break;
            }
            let mut joined = Vec::with_capacity(a.len() + 1);
            joined.extend_from_slice(a);
            joined.push(b[b.len() - 1]);
            out.push(Itemset::from_sorted(joined));
        }
    }
    out
}

/// Keeps a size-k candidate only if each of its items occurs in at least
/// k−1 members of `prev`. Each item of a frequent k-itemset lies in k−1 of
/// its frequent (k−1)-subsets, so no frequent candidate is lost.
pub fn prune_item_occurrence(candidates: Vec<Itemset>, prev: &[Itemset]) -> Vec<Itemset> {
    let Some(width) = candidates.first().map(Itemset::len) else {
        return candidates;
    };
    let threshold = width - 1;
    let max_item = prev.iter().flat_map(|s| s.items().iter().copied()).max().unwrap_or(0) as usize;
    let mut occurrences = vec![0usize; max_item + 1];
    for s in prev {
        for &i in s.items() {
            occurrences[i as usize] += 1;
        }
    }
    candidates
        .into_iter()
        .filter(|c| c.items().iter().all(|&i| occurrences.get(i as usize).is_some_and(|&n| n >= threshold)))
        .collect()
}

/// Standard Apriori prune: drop any candidate with a (k−1)-subset missing
/// from `prev`.
pub fn prune_subsets(candidates: Vec<Itemset>, prev: &[Itemset]) -> Vec<Itemset> {
    if candidates.first().is_none_or(|c| c.len() <= 2) {
        // Joins of frequent singletons have only frequent 1-subsets.
        return candidates;
    }
    let known: HashSet<&[ItemId]> = prev.iter().map(Itemset::items).collect();
    let mut buf = Vec::new();
    candidates
        .into_iter()
        .filter(|c| {
            let items = c.items();
            // Dropping either of the last two items gives a join parent.
            (0..items.len() - 2).all(|skip| {
                buf.clear();
                buf.extend(items.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x));
                known.contains(buf.as_slice())
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(spec: &str) -> Vec<Itemset> {
        spec.split_whitespace().map(|s| Itemset::new(s.bytes().map(|b| (b - b'A') as ItemId)).unwrap()).collect()
    }

    /// All unions of two prev members that have size k and whose every
    /// (k−1)-subset is in prev; the reference for join + subset prune.
    fn all_subsets_oracle(prev: &[Itemset]) -> Vec<Itemset> {
        let k = prev[0].len() + 1;
        let mut out: Vec<Itemset> = Vec::new();
        for a in prev {
            for b in prev {
                let u = Itemset::new(a.items().iter().chain(b.items()).copied()).unwrap();
                if u.len() == k && (0..k).all(|p| prev.contains(&u.without(p).unwrap())) {
                    out.push(u);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn join_examples() {
        let l2 = sets("AB AC BC");
        assert_eq!(join_candidates(&l2), sets("ABC"));
        assert_eq!(prune_subsets(join_candidates(&l2), &l2), all_subsets_oracle(&l2));
        assert_eq!(join_candidates(&sets("A B C")), sets("AB AC BC"));
        assert!(join_candidates(&sets("AB CD")).is_empty());
        assert!(join_candidates(&[]).is_empty());
    }

    #[test]
    fn join_sorts_unsorted_input() {
        assert_eq!(join_candidates(&sets("BC AC AB")), sets("ABC"));
    }

    #[test]
    fn item_occurrence_prune_example() {
        let l2 = sets("AB AC BC BD");
        assert_eq!(prune_item_occurrence(sets("ABC BCD"), &l2), sets("ABC"));
        // k = 2: threshold 1 keeps every join of frequent items.
        let l1 = sets("A B C");
        assert_eq!(prune_item_occurrence(join_candidates(&l1), &l1), sets("AB AC BC"));
    }

    #[test]
    fn subset_prune_matches_oracle() {
        let l2 = sets("AB AC AD BC BD CE DE");
        let c3 = prune_subsets(join_candidates(&l2), &l2);
        assert_eq!(c3, all_subsets_oracle(&l2));
        assert_eq!(c3, sets("ABC ABD"));
    }
}
