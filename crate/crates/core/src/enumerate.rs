//! Enumeration of all virtual genetic codes of type `m`.
//!
//! Level `k + 1` is built from level `k` by appending one more single-gene
//! code. A code is only extended by genes that come after its last gene in
//! canonical order, so each code is produced exactly once and the levels
//! come out already sorted.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{compatible, self_compatible, GeneticCode};
use crate::error::Result;
use crate::subset::{check_m, Subset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSet {
    pub m: u8,
    pub codes: Vec<GeneticCode>,
}

impl CodeSet {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GeneticCode> {
        self.codes.iter()
    }
}

impl IntoIterator for CodeSet {
    type Item = GeneticCode;
    type IntoIter = std::vec::IntoIter<GeneticCode>;

    fn into_iter(self) -> Self::IntoIter {
        self.codes.into_iter()
    }
}

/// One line of the `enumerate` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeLine {
    pub m: u8,
    pub code: String,
    pub genes: Vec<Vec<u32>>,
}

impl CodeLine {
    pub fn from_code(code: &GeneticCode) -> CodeLine {
        CodeLine {
            m: code.m(),
            code: code.to_string(),
            genes: code.gene_elements(),
        }
    }

    /// Re-parses the code text and checks it agrees with the gene list.
    pub fn to_code(&self) -> Result<GeneticCode> {
        let code = GeneticCode::parse(&self.code, self.m)?;
        let listed = GeneticCode::chamber(
            self.m,
            self.genes
                .iter()
                .map(|g| Subset::from_elements(self.m, g))
                .collect::<Result<Vec<_>>>()?,
        )?;
        if listed != code {
            return Err(crate::Error::parse(
                "code line",
                &self.code,
                format!("gene list {:?} disagrees with the code text", self.genes),
            ));
        }
        Ok(code)
    }
}

/// Single-gene candidates in canonical order, with a pairwise
/// compatibility bit matrix.
struct Candidates {
    m: u8,
    masks: Vec<u32>,
    words: usize,
    compat: Vec<u64>,
}

impl Candidates {
    fn new(m: u8) -> Candidates {
        let top = 1u32 << (m - 1);
        let mut sets: Vec<Subset> = (0..top)
            .map(|low| low | top)
            .filter(|&g| self_compatible(g, m))
            .map(|g| Subset::new(m, g).expect("mask within range"))
            .collect();
        sets.sort();
        let masks: Vec<u32> = sets.iter().map(|s| s.mask()).collect();
        let n = masks.len();
        let words = n.div_ceil(64).max(1);
        let mut compat = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if compatible(masks[i], masks[j], m) {
                    compat[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        Candidates {
            m,
            masks,
            words,
            compat,
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.compat[i * self.words..(i + 1) * self.words]
    }

    /// Children of a code given as increasing candidate indices.
    fn extend(&self, code: &[u16]) -> Vec<Vec<u16>> {
        let start = code.last().map_or(0, |&l| l as usize + 1);
        let mut allowed = vec![!0u64; self.words];
        for &g in code {
            for (a, r) in allowed.iter_mut().zip(self.row(g as usize)) {
                *a &= r;
            }
        }
        let mut out = Vec::new();
        for j in start..self.masks.len() {
            if allowed[j / 64] >> (j % 64) & 1 == 1 {
                let mut child = code.to_vec();
                child.push(j as u16);
                out.push(child);
            }
        }
        out
    }

    fn to_code(&self, idx: &[u16]) -> GeneticCode {
        GeneticCode::from_sorted_masks_unchecked(self.m, idx.iter().map(|&i| self.masks[i as usize]))
    }
}

/// `G_m^{(1)}`: every `<A>` with `A ∋ m` and `Ā ↪̸ A`.
pub fn singleton_codes(m: u8) -> Result<CodeSet> {
    let m = check_m(m as u32)?;
    let cand = Candidates::new(m);
    let codes = (0..cand.masks.len() as u16).map(|i| cand.to_code(&[i])).collect();
    Ok(CodeSet { m, codes })
}

/// All of `G_m` including `<>`, ordered by gene count and then
/// lexicographically on the canonically ordered gene lists.
pub fn enumerate_codes(m: u8) -> Result<CodeSet> {
    let mut codes = Vec::new();
    enumerate_codes_with(m, |level| codes.extend(level))?;
    Ok(CodeSet { m, codes })
}

/// Streams `G_m` one level (fixed gene count) at a time, in output order.
pub fn enumerate_codes_with(m: u8, mut sink: impl FnMut(Vec<GeneticCode>)) -> Result<()> {
    let m = check_m(m as u32)?;
    let cand = Candidates::new(m);
    let mut level: Vec<Vec<u16>> = vec![Vec::new()];
    while !level.is_empty() {
        sink(level.par_iter().map(|idx| cand.to_code(idx)).collect());
        level = level
            .par_iter()
            .flat_map_iter(|idx| cand.extend(idx))
            .collect();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(set: &CodeSet) -> Vec<String> {
        set.iter().map(|c| c.to_string()).collect()
    }

    #[test]
    fn singletons() {
        assert_eq!(names(&singleton_codes(3).unwrap()), ["<3>"]);
        let mut five = names(&singleton_codes(5).unwrap());
        five.sort();
        assert_eq!(five, ["<51>", "<521>", "<52>", "<53>", "<54>", "<5>"]);
        for m in 3..=8 {
            for c in singleton_codes(m).unwrap().iter() {
                let a = c.genes()[0].set;
                assert!(!a.complement().embeds_into(&a).unwrap());
            }
        }
    }

    #[test]
    fn small_code_sets() {
        assert_eq!(names(&enumerate_codes(3).unwrap()), ["<>", "<3>"]);
        assert_eq!(names(&enumerate_codes(4).unwrap()), ["<>", "<41>", "<4>"]);
        assert_eq!(
            names(&enumerate_codes(5).unwrap()),
            ["<>", "<521>", "<51>", "<52>", "<53>", "<54>", "<5>"]
        );
    }

    #[test]
    fn output_is_sorted_and_unique() {
        let set = enumerate_codes(7).unwrap();
        assert!(set.codes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn code_line_round_trip() {
        let code = GeneticCode::parse("<621,63>", 6).unwrap();
        let line = CodeLine::from_code(&code);
        assert_eq!(
            serde_json::to_string(&line).unwrap(),
            r#"{"m":6,"code":"<621,63>","genes":[[6,2,1],[6,3]]}"#
        );
        assert_eq!(line.to_code().unwrap(), code);
        let bad = CodeLine {
            genes: vec![vec![6, 3]],
            ..line
        };
        assert!(bad.to_code().is_err());
    }
}
