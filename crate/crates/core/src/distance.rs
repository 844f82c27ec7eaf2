//! Hamming distance, exhaustive minimum distance and the socle bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::reverse::{hat, IsoType, ReverseSpace, ReversibleCode};
use crate::subspace::Subspace;
use crate::vector::GfVector;

/// Largest number of codewords swept by default (`4^12`).
pub const DEFAULT_SWEEP_CEILING: u64 = 1 << 24;

pub fn hamming(u: &GfVector, v: &GfVector) -> Result<usize> {
    Ok(u.checked_add(v)?.weight())
}

fn check_size(what: &str, dim: usize, ceiling: u64) -> Result<()> {
    let too_big = 2 * dim >= 64 || (1u64 << (2 * dim)) > ceiling;
    if too_big {
        return Err(Error::TooLarge {
            what: what.to_string(),
            size: format!("4^{dim}"),
            ceiling,
        });
    }
    Ok(())
}

/// Minimum weight over the nonzero codewords, with the default ceiling.
pub fn min_distance(c: &Subspace) -> Result<usize> {
    min_distance_with_ceiling(c, DEFAULT_SWEEP_CEILING)
}

pub fn min_distance_with_ceiling(c: &Subspace, ceiling: u64) -> Result<usize> {
    if c.is_zero() {
        return Err(Error::ZeroCode);
    }
    check_size("codeword sweep", c.dim(), ceiling)?;
    let mut best = usize::MAX;
    for w in c.codewords().skip(1) {
        best = best.min(w.weight());
        if best == 1 {
            break;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundCase {
    #[serde(rename = "SOC_IN_I")]
    SocInI,
    #[serde(rename = "SOC_NOT_IN_I")]
    SocNotInI,
}

impl BoundCase {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundCase::SocInI => "SOC_IN_I",
            BoundCase::SocNotInI => "SOC_NOT_IN_I",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub n: usize,
    pub k: usize,
    pub iso_type: IsoType,
    pub d_min: Option<usize>,
    /// Minimum distance of the hat image of the socle.
    pub hat_socle_distance: Option<usize>,
    pub bound_socle: Option<usize>,
    pub bound_singleton: usize,
    pub bound_case: BoundCase,
    pub tighter_than_singleton: Option<bool>,
    /// The hat image of the socle is zero, so no socle bound exists.
    pub hat_degenerate: bool,
    /// For codes inside `I`: whether `d(C) = 2 d(Ĉ)` held.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hat_identity: Option<bool>,
}

impl DistanceReport {
    pub fn render(&self) -> String {
        let opt = |x: Option<usize>| x.map_or("none".to_string(), |v| v.to_string());
        let mut out = format!(
            "n={}\nk={}\ntype={}\nd_min={}\nhat_socle_distance={}\nbound_socle={}\nbound_singleton={}\n\
             bound_case={}\ntighter_than_singleton={}\nhat_degenerate={}\n",
            self.n,
            self.k,
            self.iso_type,
            opt(self.d_min),
            opt(self.hat_socle_distance),
            opt(self.bound_socle),
            self.bound_singleton,
            self.bound_case.as_str(),
            self.tighter_than_singleton
                .map_or("none".to_string(), |b| b.to_string()),
            self.hat_degenerate,
        );
        if let Some(h) = self.hat_identity {
            out.push_str(&format!("hat_identity={h}\n"));
        }
        out
    }
}

/// True iff `bound_socle < n − k + 1`.
pub fn singleton_flag(n: usize, k: usize, bound_socle: usize) -> bool {
    bound_socle + k < n + 1
}

fn hat_space(m: &Subspace) -> Subspace {
    Subspace::from_rows(m.n(), m.basis().iter().map(hat).collect()).expect("same length")
}

/// Full report for a nonzero code. When the hat image of the socle is zero
/// the report carries `hat_degenerate = true` and no socle bound.
pub fn distance_report(code: &ReversibleCode, rs: &ReverseSpace, ceiling: u64) -> Result<DistanceReport> {
    if code.dim() == 0 {
        return Err(Error::ZeroCode);
    }
    let (n, k) = (code.n(), code.dim());
    let d_min = min_distance_with_ceiling(code.space(), ceiling)?;
    let socle = code.socle();
    let bound_case = if socle.is_subspace_of(rs.i()) {
        BoundCase::SocInI
    } else {
        BoundCase::SocNotInI
    };
    let hat_soc = hat_space(socle);
    let hat_socle_distance = if hat_soc.is_zero() {
        None
    } else {
        Some(min_distance_with_ceiling(&hat_soc, ceiling)?)
    };
    let bound_socle = hat_socle_distance.map(|d| match bound_case {
        BoundCase::SocInI => 2 * d,
        BoundCase::SocNotInI => 2 * d + 1,
    });
    let hat_identity = if code.space().is_subspace_of(rs.i()) {
        let hat_c = min_distance_with_ceiling(&hat_space(code.space()), ceiling)?;
        Some(d_min == 2 * hat_c)
    } else {
        None
    };
    Ok(DistanceReport {
        n,
        k,
        iso_type: code.iso_type(),
        d_min: Some(d_min),
        hat_socle_distance,
        bound_socle,
        bound_singleton: n - k + 1,
        bound_case,
        tighter_than_singleton: bound_socle.map(|b| singleton_flag(n, k, b)),
        hat_degenerate: hat_socle_distance.is_none(),
        hat_identity,
    })
}

/// Socle bound report; `HatDegenerate` when the bound is undefined.
pub fn socle_upper_bound(code: &ReversibleCode, rs: &ReverseSpace) -> Result<DistanceReport> {
    let report = distance_report(code, rs, DEFAULT_SWEEP_CEILING)?;
    if report.hat_degenerate {
        return Err(Error::HatDegenerate);
    }
    Ok(report)
}
