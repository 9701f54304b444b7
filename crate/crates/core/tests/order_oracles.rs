//! The order, the cut bijection and code enumeration against brute force.

use std::collections::BTreeSet;

use chamberscope::{dominates, enumerate_codes, reconstruct_s, ns_counts, Subset};

fn elements(mask: u32) -> Vec<u32> {
    (1..=32).filter(|i| mask >> (i - 1) & 1 == 1).collect()
}

/// Some injective `φ: a → b` with `φ(x) ≥ x`.
fn injects(a: &[u32], b: &[u32], used: &mut [bool]) -> bool {
    let Some((&x, rest)) = a.split_first() else {
        return true;
    };
    (0..b.len()).any(|j| {
        if used[j] || b[j] < x {
            return false;
        }
        used[j] = true;
        let ok = injects(rest, b, used);
        used[j] = false;
        ok
    })
}

fn embeds(a: u32, b: u32) -> bool {
    let bs = elements(b);
    injects(&elements(a), &bs, &mut vec![false; bs.len()])
}

#[test]
fn dominates_matches_injection_search() {
    for m in 3..=7u8 {
        for a in 0..1u32 << m {
            for b in 0..1u32 << m {
                let fast = dominates(&Subset::new(m, a).unwrap(), &Subset::new(m, b).unwrap()).unwrap();
                assert_eq!(fast, embeds(a, b), "m={m} {a:b} vs {b:b}");
            }
        }
    }
}

/// Every family with exactly one of each complementary pair and closed
/// downward under `↪`.
fn brute_force_cuts(m: u8) -> BTreeSet<Vec<u32>> {
    let full = (1u32 << m) - 1;
    let n = 1usize << m;
    let below: Vec<Vec<u32>> = (0..n as u32)
        .map(|i| (0..n as u32).filter(|&j| j != i && embeds(j, i)).collect())
        .collect();
    // the pair representatives are the masks without the top bit
    let reps: Vec<u32> = (0..n as u32).filter(|&i| i >> (m - 1) & 1 == 0).collect();
    let mut cuts = BTreeSet::new();
    for choice in 0..1u64 << reps.len() {
        let mut member = vec![false; n];
        for (k, &r) in reps.iter().enumerate() {
            let pick = if choice >> k & 1 == 1 { r } else { full ^ r };
            member[pick as usize] = true;
        }
        let closed = (0..n).filter(|&i| member[i]).all(|i| below[i].iter().all(|&j| member[j as usize]));
        if closed {
            cuts.insert((0..n as u32).filter(|&i| member[i as usize]).collect());
        }
    }
    cuts
}

#[test]
fn codes_are_in_bijection_with_cuts() {
    for m in 3..=5u8 {
        let cuts = brute_force_cuts(m);
        let codes = enumerate_codes(m).unwrap();
        let mut from_codes = BTreeSet::new();
        for c in codes.iter() {
            let s = reconstruct_s(c).unwrap();
            assert!(s.is_cut(), "{c}");
            let mut masks: Vec<u32> = s.masks().collect();
            masks.sort_unstable();
            from_codes.insert(masks);
        }
        assert_eq!(from_codes.len(), codes.len(), "m={m}: two codes give the same cut");
        assert_eq!(from_codes, cuts, "m={m}");
    }
}

#[test]
fn every_code_reconstructs_a_cut_up_to_m8() {
    for m in 3..=8u8 {
        for c in enumerate_codes(m).unwrap().iter() {
            let s = reconstruct_s(c).unwrap();
            assert!(s.is_cut() && s.len() == 1 << (m - 1), "{c}");
            // the genes are exactly the ↪-maximal members containing m
            let top = 1u32 << (m - 1);
            let mut maximal: Vec<u32> = s
                .masks()
                .filter(|&a| a & top != 0)
                .filter(|&a| !s.masks().any(|b| b != a && b & top != 0 && embeds(a, b)))
                .collect();
            maximal.sort_unstable();
            let mut genes = c.gene_masks();
            genes.sort_unstable();
            assert_eq!(genes, maximal, "{c}");
        }
    }
}

#[test]
fn ns_counts_by_cardinality() {
    let fam: Vec<Subset> = ["6", "61", "62", "621", "63", "631"]
        .iter()
        .map(|t| Subset::parse(t, 6).unwrap())
        .collect();
    let ns = ns_counts(6, fam.iter().copied());
    let direct: Vec<i64> = (1..=6).map(|k| fam.iter().filter(|s| s.len() == k).count() as i64).collect();
    for (i, &d) in direct.iter().enumerate() {
        assert_eq!(ns.get(i as i64), d);
    }
    assert_eq!(ns.total(), 6);
}
