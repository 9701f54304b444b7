//! Genetic codes: antichains of genes (subsets containing `m`) and their
//! text form `<621,63>`, with `=` marking almost-short genes (`<41=>`).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subset::{check_m, embeds_mask, full_mask, reconstruct_from_masks, ShortFamily, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mark {
    Short,
    AlmostShort,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gene {
    pub set: Subset,
    pub mark: Mark,
}

impl Gene {
    pub fn short(set: Subset) -> Gene {
        Gene {
            set,
            mark: Mark::Short,
        }
    }

    pub fn almost_short(set: Subset) -> Gene {
        Gene {
            set,
            mark: Mark::AlmostShort,
        }
    }

    pub fn is_almost_short(&self) -> bool {
        self.mark == Mark::AlmostShort
    }

    fn cmp_canonical(&self, other: &Gene) -> Ordering {
        self.set
            .canonical_cmp(&other.set)
            .then(self.mark.cmp(&other.mark))
    }
}

impl fmt::Display for Gene {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.set)?;
        if self.is_almost_short() {
            f.write_str("=")?;
        }
        Ok(())
    }
}

/// Pairwise validity of two distinct short genes: neither embeds into the
/// other, and neither complement embeds into the other gene.
pub(crate) fn compatible(a: u32, b: u32, m: u8) -> bool {
    let full = full_mask(m);
    a != b
        && !embeds_mask(a, b)
        && !embeds_mask(b, a)
        && !embeds_mask(full ^ a, b)
        && !embeds_mask(full ^ b, a)
}

/// The same test for genes that may be almost short. A short gene may sit
/// below an almost-short one (`<51,53=>`), an almost-short gene never sits
/// below a short one, and the complement test is waived when both genes are
/// almost short since their complements are then almost short too.
fn compatible_marked(a: &Gene, b: &Gene, m: u8) -> bool {
    let (x, y) = (a.set.mask(), b.set.mask());
    let full = full_mask(m);
    if x == y {
        return false;
    }
    let below = |p: &Gene, q: &Gene| {
        embeds_mask(p.set.mask(), q.set.mask()) && !(p.mark == Mark::Short && q.is_almost_short())
    };
    if below(a, b) || below(b, a) {
        return false;
    }
    (a.is_almost_short() && b.is_almost_short())
        || !(embeds_mask(full ^ x, y) || embeds_mask(full ^ y, x))
}

/// `Ā ↪̸ A`, the condition for `<A>` alone to be a virtual code.
pub(crate) fn self_compatible(a: u32, m: u8) -> bool {
    !embeds_mask(full_mask(m) ^ a, a)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneticCode {
    m: u8,
    genes: Vec<Gene>,
}

impl GeneticCode {
    pub fn empty(m: u8) -> Result<Self> {
        let m = check_m(m as u32)?;
        Ok(GeneticCode { m, genes: Vec::new() })
    }

    /// Validates conditions (a) and (b) and sorts the genes canonically.
    pub fn new(m: u8, mut genes: Vec<Gene>) -> Result<Self> {
        let m = check_m(m as u32)?;
        let top = 1u32 << (m - 1);
        for g in &genes {
            if g.set.m() != m {
                return Err(Error::AmbientMismatch {
                    left: m,
                    right: g.set.m(),
                });
            }
            if g.set.mask() & top == 0 {
                return Err(Error::GeneMissingTop {
                    gene: g.set.to_string(),
                    m,
                });
            }
        }
        genes.sort_by(Gene::cmp_canonical);
        let code = GeneticCode { m, genes };
        code.validate()?;
        Ok(code)
    }

    pub fn chamber(m: u8, sets: impl IntoIterator<Item = Subset>) -> Result<Self> {
        GeneticCode::new(m, sets.into_iter().map(Gene::short).collect())
    }

    pub(crate) fn from_sorted_masks_unchecked(m: u8, masks: impl IntoIterator<Item = u32>) -> Self {
        GeneticCode {
            m,
            genes: masks
                .into_iter()
                .map(|mask| Gene::short(Subset::from_mask_unchecked(m, mask)))
                .collect(),
        }
    }

    fn invalid(&self, reason: String) -> Error {
        Error::InvalidCode {
            code: self.to_string(),
            reason,
        }
    }

    fn validate(&self) -> Result<()> {
        let m = self.m;
        for (i, a) in self.genes.iter().enumerate() {
            if !a.is_almost_short() && !self_compatible(a.set.mask(), m) {
                return Err(self.invalid(format!(
                    "complement of {} embeds into {}",
                    a.set, a.set
                )));
            }
            for b in &self.genes[i + 1..] {
                if a.set == b.set {
                    return Err(self.invalid(format!("gene {} repeated", a.set)));
                }
                if !compatible_marked(a, b, m) {
                    return Err(self.invalid(format!(
                        "genes {} and {} violate the antichain or complement condition",
                        a.set, b.set
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn genes(&self) -> &[Gene] {
        &self.genes
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    /// True when no gene is marked almost short.
    pub fn is_chamber(&self) -> bool {
        self.genes.iter().all(|g| !g.is_almost_short())
    }

    pub fn gene_masks(&self) -> Vec<u32> {
        self.genes.iter().map(|g| g.set.mask()).collect()
    }

    pub fn gene_elements(&self) -> Vec<Vec<u32>> {
        self.genes.iter().map(|g| g.set.elements()).collect()
    }

    pub(crate) fn require_chamber(&self) -> Result<()> {
        if self.is_chamber() {
            Ok(())
        } else {
            Err(Error::NotChamberCode(self.to_string()))
        }
    }

    /// The family `S` of short subsets determined by this code.
    pub fn short_family(&self) -> Result<ShortFamily> {
        self.require_chamber()?;
        Ok(reconstruct_from_masks(self.m, &self.gene_masks()))
    }

    /// Accepts `<>`, `<53>`, `<621,63>`, `<41=>`, and brace genes `<{10,3}>`.
    pub fn parse(text: &str, m: u8) -> Result<Self> {
        let m = check_m(m as u32)?;
        let t = text.trim();
        let inner = t
            .strip_prefix('<')
            .or_else(|| t.strip_prefix('⟨'))
            .and_then(|r| r.strip_suffix('>').or_else(|| r.strip_suffix('⟩')))
            .ok_or_else(|| Error::parse("genetic code", text, "expected <...>"))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(GeneticCode { m, genes: Vec::new() });
        }
        let mut genes = Vec::new();
        for piece in split_genes(inner).map_err(|r| Error::parse("genetic code", text, r))? {
            let piece = piece.trim();
            let (body, mark) = match piece
                .strip_suffix('=')
                .or_else(|| piece.strip_suffix("^="))
            {
                Some(b) => (b.strip_suffix('^').unwrap_or(b), Mark::AlmostShort),
                None => (piece, Mark::Short),
            };
            if body.is_empty() {
                return Err(Error::parse("genetic code", text, "empty gene"));
            }
            let set = Subset::parse(body, m)?;
            genes.push(Gene { set, mark });
        }
        GeneticCode::new(m, genes)
    }

    fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.m
            .cmp(&other.m)
            .then(self.genes.len().cmp(&other.genes.len()))
            .then_with(|| {
                for (a, b) in self.genes.iter().zip(&other.genes) {
                    let o = a.cmp_canonical(b);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }
}

fn split_genes(inner: &str) -> std::result::Result<Vec<&str>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => {
                depth -= 1;
                if depth < 0 {
                    return Err("unbalanced braces".into());
                }
            }
            ',' if depth == 0 => {
                out.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced braces".into());
    }
    out.push(&inner[start..]);
    Ok(out)
}

impl PartialOrd for GeneticCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GeneticCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_canonical(other)
    }
}

impl fmt::Display for GeneticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (k, g) in self.genes.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

impl fmt::Debug for GeneticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (m={})", self.m)
    }
}

pub fn parse_code(text: &str, m: u8) -> Result<GeneticCode> {
    GeneticCode::parse(text, m)
}

pub fn format_code(code: &GeneticCode) -> String {
    code.to_string()
}

/// The cut `S(α)` reconstructed from a chamber code.
pub fn reconstruct_s(code: &GeneticCode) -> Result<ShortFamily> {
    code.short_family()
}

/// A code written as `(m, text)`; used where a code crosses a file boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeText {
    pub m: u8,
    pub text: String,
}

impl FromStr for CodeText {
    type Err = Error;

    /// `"6:<621,63>"`.
    fn from_str(s: &str) -> Result<Self> {
        let (m, text) = s
            .split_once(':')
            .ok_or_else(|| Error::parse("code reference", s, "expected m:<...>"))?;
        let m: u32 = m
            .trim()
            .parse()
            .map_err(|e: std::num::ParseIntError| Error::parse("code reference", s, e.to_string()))?;
        let m = check_m(m)?;
        let code = GeneticCode::parse(text, m)?;
        Ok(CodeText {
            m,
            text: code.to_string(),
        })
    }
}

/// Serialized as its canonical string; the ambient size travels separately.
impl Serialize for GeneticCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Deserializing needs `m`; only the `m:<...>` form is accepted standalone.
impl<'de> Deserialize<'de> for GeneticCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let r: CodeText = s.parse().map_err(serde::de::Error::custom)?;
        GeneticCode::parse(&r.text, r.m).map_err(serde::de::Error::custom)
    }
}
