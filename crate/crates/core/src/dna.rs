//! DNA strands as GF(4) vectors.
//!
//! The map is A→0, T→1, C→α, G→α², under which Watson-Crick
//! complementation (A↔T, C↔G) is addition of the all-ones vector.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf4::Gf4;
use crate::reverse::is_invariant;
use crate::subspace::Subspace;
use crate::vector::GfVector;

/// Largest code swept pairwise by default.
pub const DEFAULT_PAIR_CEILING: u64 = 1 << 12;
/// Largest code exported by default.
pub const DEFAULT_EXPORT_CEILING: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nucleotide {
    A,
    C,
    G,
    T,
}

impl Nucleotide {
    pub fn to_gf4(self) -> Gf4 {
        match self {
            Nucleotide::A => Gf4::ZERO,
            Nucleotide::T => Gf4::ONE,
            Nucleotide::C => Gf4::ALPHA,
            Nucleotide::G => Gf4::ALPHA_SQ,
        }
    }

    pub fn from_gf4(x: Gf4) -> Nucleotide {
        match x.bits() {
            0 => Nucleotide::A,
            1 => Nucleotide::T,
            2 => Nucleotide::C,
            _ => Nucleotide::G,
        }
    }

    pub fn from_char(c: char) -> Result<Nucleotide> {
        match c {
            'A' => Ok(Nucleotide::A),
            'C' => Ok(Nucleotide::C),
            'G' => Ok(Nucleotide::G),
            'T' => Ok(Nucleotide::T),
            other => Err(Error::BadSymbol(other)),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Nucleotide::A => 'A',
            Nucleotide::C => 'C',
            Nucleotide::G => 'G',
            Nucleotide::T => 'T',
        }
    }

    pub fn complement(self) -> Nucleotide {
        match self {
            Nucleotide::A => Nucleotide::T,
            Nucleotide::T => Nucleotide::A,
            Nucleotide::C => Nucleotide::G,
            Nucleotide::G => Nucleotide::C,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DnaStrand(Vec<Nucleotide>);

impl DnaStrand {
    pub fn new(bases: Vec<Nucleotide>) -> DnaStrand {
        DnaStrand(bases)
    }

    pub fn bases(&self) -> &[Nucleotide] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> DnaStrand {
        DnaStrand(self.0.iter().rev().copied().collect())
    }
}

impl FromStr for DnaStrand {
    type Err = Error;
    fn from_str(s: &str) -> Result<DnaStrand> {
        s.chars().map(Nucleotide::from_char).collect::<Result<_>>().map(DnaStrand)
    }
}

impl fmt::Display for DnaStrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{}", b.to_char())?;
        }
        Ok(())
    }
}

pub fn encode(strand: &DnaStrand) -> GfVector {
    let entries: Vec<Gf4> = strand.0.iter().map(|b| b.to_gf4()).collect();
    GfVector::from_entries(&entries)
}

pub fn decode(v: &GfVector) -> DnaStrand {
    DnaStrand(v.entries().map(Nucleotide::from_gf4).collect())
}

pub fn wc_complement(strand: &DnaStrand) -> DnaStrand {
    DnaStrand(strand.0.iter().map(|b| b.complement()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintReport {
    /// `min d(r(x), y)` over codewords `x ≠ y`.
    pub reverse_margin: usize,
    /// `min d(r(x), c(y))` over codewords `x ≠ y`.
    pub reverse_complement_margin: usize,
    pub is_reversible: bool,
    pub is_reversible_complementary: bool,
    /// `min d(r(x), x)` over nonzero `x`; not part of either margin.
    pub self_reverse_distance: usize,
}

impl ConstraintReport {
    pub fn render(&self) -> String {
        format!(
            "reverse_margin={}\nreverse_complement_margin={}\nis_reversible={}\n\
             is_reversible_complementary={}\nself_reverse_distance={}\n",
            self.reverse_margin,
            self.reverse_complement_margin,
            self.is_reversible,
            self.is_reversible_complementary,
            self.self_reverse_distance
        )
    }
}

fn check_size(what: &str, dim: usize, ceiling: u64) -> Result<()> {
    if 2 * dim >= 64 || (1u64 << (2 * dim)) > ceiling {
        return Err(Error::TooLarge {
            what: what.to_string(),
            size: format!("4^{dim}"),
            ceiling,
        });
    }
    Ok(())
}

pub fn constraint_report(c: &Subspace) -> Result<ConstraintReport> {
    constraint_report_with_ceiling(c, DEFAULT_PAIR_CEILING)
}

/// Margins by exhaustive sweep over ordered pairs of distinct codewords.
pub fn constraint_report_with_ceiling(c: &Subspace, ceiling: u64) -> Result<ConstraintReport> {
    if c.is_zero() {
        return Err(Error::ZeroCode);
    }
    check_size("pairwise codeword sweep", c.dim(), ceiling)?;
    let n = c.n();
    let one = GfVector::ones(n);
    let words: Vec<GfVector> = c.codewords().collect();
    let complements: Vec<GfVector> = words.iter().map(|y| y + &one).collect();
    let (rev, rc) = (0..words.len())
        .into_par_iter()
        .map(|i| {
            let xr = words[i].reversed();
            let mut best = (usize::MAX, usize::MAX);
            for j in 0..words.len() {
                if i != j {
                    best.0 = best.0.min((&xr + &words[j]).weight());
                    best.1 = best.1.min((&xr + &complements[j]).weight());
                }
            }
            best
        })
        .reduce(|| (usize::MAX, usize::MAX), |a, b| (a.0.min(b.0), a.1.min(b.1)));
    let self_reverse_distance = words[1..]
        .iter()
        .map(|x| (&x.reversed() + x).weight())
        .min()
        .expect("nonzero code");
    let is_reversible = is_invariant(c);
    Ok(ConstraintReport {
        reverse_margin: rev,
        reverse_complement_margin: rc,
        is_reversible,
        is_reversible_complementary: is_reversible && c.contains(&one),
        self_reverse_distance,
    })
}

pub fn export_dna(c: &Subspace) -> Result<Vec<DnaStrand>> {
    export_dna_with_ceiling(c, DEFAULT_EXPORT_CEILING)
}

/// Every codeword as a strand, in coefficient-lexicographic order.
pub fn export_dna_with_ceiling(c: &Subspace, ceiling: u64) -> Result<Vec<DnaStrand>> {
    check_size("DNA export", c.dim(), ceiling)?;
    Ok(c.codewords().map(|w| decode(&w)).collect())
}

/// One strand per line.
pub fn render_strands(strands: &[DnaStrand]) -> String {
    let mut out = String::with_capacity(strands.len() * (strands.first().map_or(0, |s| s.len()) + 1));
    for s in strands {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}
