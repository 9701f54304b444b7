//! Subsets of the ground set `{1..m}`, the domination order `↪`, and
//! families of subsets indexed by bit mask.
//!
//! A subset is a bit mask where bit `i - 1` stands for element `i`.
//! `A ↪ B` holds when there is an injective non-decreasing map `φ: A → B`
//! with `φ(x) ≥ x`; equivalently, after sorting both sets in decreasing
//! order, `A` is no longer than `B` and its k-th element never exceeds the
//! k-th element of `B`. The second form is what every routine here uses.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_M: u8 = 3;
pub const MAX_M: u8 = 16;

pub(crate) fn check_m(m: u32) -> Result<u8> {
    if (MIN_M as u32..=MAX_M as u32).contains(&m) {
        Ok(m as u8)
    } else {
        Err(Error::AmbientOutOfRange(m))
    }
}

#[inline]
pub(crate) fn full_mask(m: u8) -> u32 {
    (1u32 << m) - 1
}

/// `a ↪ b` on raw masks: for every threshold `t`, `b` has at least as many
/// elements `≥ t` as `a` does.
#[inline]
pub(crate) fn embeds_mask(a: u32, b: u32) -> bool {
    let top = 32 - (a | b).leading_zeros();
    let mut ca = 0u32;
    let mut cb = 0u32;
    for t in (0..top).rev() {
        ca += (a >> t) & 1;
        cb += (b >> t) & 1;
        if ca > cb {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subset {
    m: u8,
    mask: u16,
}

impl Subset {
    pub fn new(m: u8, mask: u32) -> Result<Self> {
        let m = check_m(m as u32)?;
        if mask & !full_mask(m) != 0 {
            let element = 32 - mask.leading_zeros();
            return Err(Error::ElementOutOfRange { element, m });
        }
        Ok(Subset {
            m,
            mask: mask as u16,
        })
    }

    pub(crate) fn from_mask_unchecked(m: u8, mask: u32) -> Self {
        debug_assert!(mask & !full_mask(m) == 0);
        Subset {
            m,
            mask: mask as u16,
        }
    }

    pub fn from_elements(m: u8, elements: &[u32]) -> Result<Self> {
        let m = check_m(m as u32)?;
        let mut mask = 0u32;
        for &e in elements {
            if e == 0 || e > m as u32 {
                return Err(Error::ElementOutOfRange { element: e, m });
            }
            mask |= 1 << (e - 1);
        }
        Ok(Subset {
            m,
            mask: mask as u16,
        })
    }

    pub fn empty(m: u8) -> Result<Self> {
        Subset::new(m, 0)
    }

    pub fn full(m: u8) -> Result<Self> {
        let m = check_m(m as u32)?;
        Ok(Subset {
            m,
            mask: full_mask(m) as u16,
        })
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn mask(&self) -> u32 {
        self.mask as u32
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, element: u32) -> bool {
        element >= 1 && element <= self.m as u32 && self.mask & (1 << (element - 1)) != 0
    }

    /// Elements in decreasing order.
    pub fn elements_desc(&self) -> impl Iterator<Item = u32> + '_ {
        let mask = self.mask as u32;
        (1..=self.m as u32).rev().filter(move |e| mask & (1 << (e - 1)) != 0)
    }

    pub fn elements(&self) -> Vec<u32> {
        self.elements_desc().collect()
    }

    pub fn complement(&self) -> Subset {
        Subset {
            m: self.m,
            mask: (!self.mask as u32 & full_mask(self.m)) as u16,
        }
    }

    pub fn with(&self, element: u32) -> Result<Subset> {
        if element == 0 || element > self.m as u32 {
            return Err(Error::ElementOutOfRange {
                element,
                m: self.m,
            });
        }
        Ok(Subset {
            m: self.m,
            mask: self.mask | (1 << (element - 1)),
        })
    }

    /// `self ↪ other`.
    pub fn embeds_into(&self, other: &Subset) -> Result<bool> {
        if self.m != other.m {
            return Err(Error::AmbientMismatch {
                left: self.m,
                right: other.m,
            });
        }
        Ok(embeds_mask(self.mask as u32, other.mask as u32))
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.m == other.m && self.mask & !other.mask == 0
    }

    /// Gene order: larger sets first, then the smaller decreasing sequence.
    /// For `m ≤ 9` the tie-break is the numeric order of the digit strings.
    pub fn canonical_cmp(&self, other: &Subset) -> Ordering {
        other
            .len()
            .cmp(&self.len())
            .then_with(|| self.elements_desc().cmp(other.elements_desc()))
    }

    /// Parse `"9642"` (decreasing digits, `m ≤ 9`), `"{9,6,4,2}"`, `"{}"` or `"∅"`.
    pub fn parse(text: &str, m: u8) -> Result<Subset> {
        let m = check_m(m as u32)?;
        let t = text.trim();
        if t == "∅" || t == "{}" {
            return Ok(Subset { m, mask: 0 });
        }
        let elements: Vec<u32> = if let Some(inner) = t.strip_prefix('{') {
            let inner = inner
                .strip_suffix('}')
                .ok_or_else(|| Error::parse("subset", text, "unterminated brace"))?;
            inner
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::parse("subset", text, e.to_string()))
                })
                .collect::<Result<_>>()?
        } else {
            if t.is_empty() {
                return Err(Error::parse("subset", text, "empty text"));
            }
            if m > 9 {
                return Err(Error::parse(
                    "subset",
                    text,
                    "digit form is ambiguous for m > 9, use braces",
                ));
            }
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::parse("subset", text, format!("unexpected {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        let mut mask = 0u32;
        for &e in &elements {
            if e == 0 || e > m as u32 {
                return Err(Error::ElementOutOfRange { element: e, m });
            }
            if mask & (1 << (e - 1)) != 0 {
                return Err(Error::parse("subset", text, format!("repeated element {e}")));
            }
            mask |= 1 << (e - 1);
        }
        Ok(Subset {
            m,
            mask: mask as u16,
        })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m.cmp(&other.m).then_with(|| self.canonical_cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mask == 0 {
            return f.write_str("{}");
        }
        if self.m <= 9 {
            for e in self.elements_desc() {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            f.write_str("{")?;
            for (k, e) in self.elements_desc().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("}")
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({self}; m={})", self.m)
    }
}

/// `A ↪ B`.
pub fn dominates(a: &Subset, b: &Subset) -> Result<bool> {
    a.embeds_into(b)
}

pub fn complement(a: &Subset) -> Subset {
    a.complement()
}

/// A family of subsets of `{1..m}` stored as a `2^m`-bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ShortFamily {
    m: u8,
    words: Vec<u64>,
}

impl ShortFamily {
    pub fn new(m: u8) -> Result<Self> {
        let m = check_m(m as u32)?;
        Ok(Self::empty_unchecked(m))
    }

    pub(crate) fn empty_unchecked(m: u8) -> Self {
        let words = (1usize << m).div_ceil(64);
        ShortFamily {
            m,
            words: vec![0; words],
        }
    }

    pub fn from_subsets<'a>(m: u8, subsets: impl IntoIterator<Item = &'a Subset>) -> Result<Self> {
        let mut f = ShortFamily::new(m)?;
        for s in subsets {
            f.insert(s)?;
        }
        Ok(f)
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn insert(&mut self, s: &Subset) -> Result<()> {
        if s.m != self.m {
            return Err(Error::AmbientMismatch {
                left: self.m,
                right: s.m,
            });
        }
        self.insert_mask(s.mask as u32);
        Ok(())
    }

    #[inline]
    pub(crate) fn insert_mask(&mut self, mask: u32) {
        self.words[(mask >> 6) as usize] |= 1 << (mask & 63);
    }

    #[inline]
    pub fn contains_mask(&self, mask: u32) -> bool {
        self.words[(mask >> 6) as usize] >> (mask & 63) & 1 == 1
    }

    pub fn contains(&self, s: &Subset) -> bool {
        s.m == self.m && self.contains_mask(s.mask as u32)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn masks(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some((k as u32) * 64 + b)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        let m = self.m;
        self.masks().map(move |mask| Subset::from_mask_unchecked(m, mask))
    }

    /// `S_m`: the members that contain the top element `m`.
    pub fn top_members(&self) -> impl Iterator<Item = Subset> + '_ {
        let top = 1u32 << (self.m - 1);
        self.iter().filter(move |s| s.mask() & top != 0)
    }

    /// Cut axioms: (A) exactly one of `I`, `Ī` is a member; (B) members are
    /// closed downward under `↪`.
    pub fn is_cut(&self) -> bool {
        let full = full_mask(self.m);
        for mask in 0..=full {
            if self.contains_mask(mask) == self.contains_mask(full ^ mask) {
                return false;
            }
        }
        self.masks()
            .all(|mask| lower_covers(mask, self.m).all(|c| self.contains_mask(c)))
    }

    /// Members that are maximal for `↪`. Assumes the family is closed
    /// downward, so only immediate successors need checking.
    pub fn maximal_members(&self) -> Vec<Subset> {
        let m = self.m;
        self.masks()
            .filter(|&mask| upper_covers(mask, m).all(|c| !self.contains_mask(c)))
            .map(|mask| Subset::from_mask_unchecked(m, mask))
            .collect()
    }

    pub fn ns_counts(&self) -> NsVector {
        ns_counts(self.m, self.iter())
    }
}

impl fmt::Debug for ShortFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut members: Vec<Subset> = self.iter().collect();
        members.sort();
        f.debug_set().entries(members.iter().map(|s| s.to_string())).finish()
    }
}

/// Immediate successors of `mask` in `↪`: shift one element up by one, or add 1.
pub(crate) fn upper_covers(mask: u32, m: u8) -> impl Iterator<Item = u32> {
    let add_one = (mask & 1 == 0).then_some(mask | 1);
    (0..m as u32 - 1)
        .filter(move |&b| mask >> b & 1 == 1 && mask >> (b + 1) & 1 == 0)
        .map(move |b| mask & !(1 << b) | 1 << (b + 1))
        .chain(add_one)
}

/// Immediate predecessors of `mask` in `↪`: shift one element down by one, or drop 1.
pub(crate) fn lower_covers(mask: u32, m: u8) -> impl Iterator<Item = u32> {
    let drop_one = (mask & 1 == 1).then_some(mask & !1);
    (1..m as u32)
        .filter(move |&b| mask >> b & 1 == 1 && mask >> (b - 1) & 1 == 0)
        .map(move |b| mask & !(1 << b) | 1 << (b - 1))
        .chain(drop_one)
}

/// Counts by cardinality; entry `i` counts members of size `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsVector {
    pub counts: Vec<u64>,
}

impl NsVector {
    /// `NS_i`, zero outside the stored range.
    pub fn get(&self, i: i64) -> i64 {
        if i < 0 {
            return 0;
        }
        self.counts.get(i as usize).copied().unwrap_or(0) as i64
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn ns_counts(m: u8, family: impl IntoIterator<Item = Subset>) -> NsVector {
    let mut counts = vec![0u64; m as usize];
    for s in family {
        let n = s.len();
        if n >= 1 {
            counts[n - 1] += 1;
        }
    }
    NsVector { counts }
}

/// Down-sets `{I : I ↪ G}` for every `G` containing `m`, cached per `m`.
pub(crate) struct DownTable {
    m: u8,
    words_per_set: usize,
    data: Vec<u64>,
}

const CACHED_M: usize = 10;
static DOWN_TABLES: [OnceLock<DownTable>; CACHED_M + 1] = [const { OnceLock::new() }; CACHED_M + 1];

impl DownTable {
    fn build(m: u8) -> DownTable {
        let n = 1usize << m;
        let words_per_set = n.div_ceil(64);
        let top = 1u32 << (m - 1);
        let mut data = vec![0u64; words_per_set * (n / 2)];
        for g in 0..(n as u32 / 2) {
            let gene = g | top;
            let row = &mut data[g as usize * words_per_set..(g as usize + 1) * words_per_set];
            for i in 0..n as u32 {
                if embeds_mask(i, gene) {
                    row[(i >> 6) as usize] |= 1 << (i & 63);
                }
            }
        }
        DownTable {
            m,
            words_per_set,
            data,
        }
    }

    pub(crate) fn get(m: u8) -> Option<&'static DownTable> {
        if (m as usize) > CACHED_M {
            return None;
        }
        Some(DOWN_TABLES[m as usize].get_or_init(|| DownTable::build(m)))
    }

    fn row(&self, gene: u32) -> &[u64] {
        let g = (gene & !(1 << (self.m - 1))) as usize;
        &self.data[g * self.words_per_set..(g + 1) * self.words_per_set]
    }
}

/// `S` from gene masks: `I ∋ m` is a member iff `I ↪ A_j` for some gene;
/// `I ∌ m` is a member iff `Ī ↪ A_j` for no gene.
pub(crate) fn reconstruct_from_masks(m: u8, genes: &[u32]) -> ShortFamily {
    let mut family = ShortFamily::empty_unchecked(m);
    let n = 1u32 << m;
    let full = n - 1;
    let top = 1u32 << (m - 1);
    if let Some(table) = DownTable::get(m) {
        let mut union = vec![0u64; table.words_per_set];
        for &g in genes {
            for (u, w) in union.iter_mut().zip(table.row(g)) {
                *u |= w;
            }
        }
        if m >= 7 {
            let words = union.len();
            let half = words / 2;
            for k in 0..half {
                family.words[half + k] = union[half + k];
                family.words[k] = (!union[words - 1 - k]).reverse_bits();
            }
        } else {
            let bit = |mask: u32| union[(mask >> 6) as usize] >> (mask & 63) & 1 == 1;
            for i in 0..n {
                let member = if i & top != 0 { bit(i) } else { !bit(full ^ i) };
                if member {
                    family.insert_mask(i);
                }
            }
        }
    } else {
        for i in 0..n {
            let member = if i & top != 0 {
                genes.iter().any(|&g| embeds_mask(i, g))
            } else {
                !genes.iter().any(|&g| embeds_mask(full ^ i, g))
            };
            if member {
                family.insert_mask(i);
            }
        }
    }
    family
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str, m: u8) -> Subset {
        Subset::parse(text, m).unwrap()
    }

    #[test]
    fn domination_examples() {
        let e = Subset::empty(9).unwrap();
        assert!(dominates(&e, &s("9642", 9)).unwrap());
        assert!(dominates(&s("9531", 9), &s("9642", 9)).unwrap());
        assert!(!dominates(&s("94321", 9), &s("9642", 9)).unwrap());
        assert!(dominates(&s("62", 9), &s("9642", 9)).unwrap());
        assert!(!dominates(&s("63", 6), &s("621", 6)).unwrap());
        assert!(dominates(&s("621", 6), &s("632", 6)).unwrap());
    }

    #[test]
    fn mismatched_ground_sets_are_rejected() {
        assert!(matches!(
            dominates(&s("3", 3), &s("3", 4)),
            Err(Error::AmbientMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&Subset::empty(5).unwrap()), Subset::full(5).unwrap());
        assert_eq!(complement(&s("9642", 9)), s("87531", 9));
        let a = s("741", 8);
        assert_eq!(a.complement().complement(), a);
    }

    #[test]
    fn text_forms() {
        assert_eq!(s("{9,6,4,2}", 9), s("9642", 9));
        assert_eq!(s("{2, 9,4,6}", 9).to_string(), "9642");
        assert_eq!(s("{}", 4).to_string(), "{}");
        assert_eq!(s("∅", 4), Subset::empty(4).unwrap());
        assert_eq!(s("{12,3}", 12).to_string(), "{12,3}");
        assert!(Subset::parse("55", 5).is_err());
        assert!(Subset::parse("7", 5).is_err());
        assert!(Subset::parse("0", 5).is_err());
        assert!(Subset::parse("12", 12).is_err());
        assert!(Subset::parse("{1,2", 5).is_err());
        assert!(Subset::parse("", 5).is_err());
        assert!(Subset::new(2, 0).is_err());
        assert!(Subset::new(17, 0).is_err());
    }

    #[test]
    fn canonical_order_matches_printed_names() {
        let mut genes = vec![s("63", 6), s("621", 6)];
        genes.sort();
        assert_eq!(genes, vec![s("621", 6), s("63", 6)]);
        let mut genes = vec![s("762", 7), s("754", 7)];
        genes.sort();
        assert_eq!(genes, vec![s("754", 7), s("762", 7)]);
    }

    #[test]
    fn covers_are_the_single_steps() {
        for m in 3..=7u8 {
            let full = full_mask(m);
            for a in 0..=full {
                for b in upper_covers(a, m) {
                    assert!(embeds_mask(a, b) && a != b);
                    assert!(lower_covers(b, m).any(|c| c == a));
                }
            }
        }
    }

    #[test]
    fn is_cut_examples() {
        let mut fam = ShortFamily::new(3).unwrap();
        for t in ["{}", "1", "2", "3"] {
            fam.insert(&s(t, 3)).unwrap();
        }
        assert!(fam.is_cut());
        fam.insert(&s("21", 3)).unwrap();
        assert!(!fam.is_cut());

        let mut lonely = ShortFamily::new(4).unwrap();
        lonely.insert(&Subset::empty(4).unwrap()).unwrap();
        assert!(!lonely.is_cut());
    }

    #[test]
    fn ns_count_examples() {
        let fam: Vec<Subset> = ["5", "51", "52", "53", "54"].iter().map(|t| s(t, 5)).collect();
        assert_eq!(ns_counts(5, fam).counts, vec![1, 4, 0, 0, 0]);
        assert_eq!(ns_counts(5, Vec::new()).counts, vec![0; 5]);
    }

    #[test]
    fn table_and_direct_reconstruction_agree() {
        for m in [5u8, 7, 8] {
            let top = 1u32 << (m - 1);
            let genes = [top | 0b11, top | 0b100];
            let fast = reconstruct_from_masks(m, &genes);
            let full = full_mask(m);
            for i in 0..=full {
                let direct = if i & top != 0 {
                    genes.iter().any(|&g| embeds_mask(i, g))
                } else {
                    !genes.iter().any(|&g| embeds_mask(full ^ i, g))
                };
                assert_eq!(fast.contains_mask(i), direct, "m={m} mask={i:b}");
            }
        }
    }
}
