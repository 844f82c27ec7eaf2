//! Exact counts of reversible codes by isomorphism type.
//!
//! Two evaluation modes are kept side by side:
//!
//! * [`Mode::Paper`] evaluates the closed counting formulas term by term,
//!   with `U_k` computed by the closed product of [`count_u_paper`].
//! * [`Mode::Verified`] counts the same families by direct definition:
//!   `U_k` is the number of complements ([`count_u_direct`]) and every
//!   pair count `(N, L)` is divided by its full multiplicity, i.e. both the
//!   complements per pair and the `4^{ts}` submodules `N ≅ tR` inside a
//!   module of type `(t, s)`. These values are checked against the
//!   brute-force oracle for every length up to 5.
//!
//! Notation: for length `n`, `f = ⌊n/2⌋ = dim I` and `h = ⌈n/2⌉ = dim K`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qbinom::{big_pow, qbinom4, BigCount};
use crate::reverse::IsoType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Paper,
    Verified,
    Both,
    Oracle,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Paper => "paper",
            Mode::Verified => "verified",
            Mode::Both => "both",
            Mode::Oracle => "oracle",
        }
    }
}

fn halves(n: usize) -> (u32, u32) {
    ((n / 2) as u32, n.div_ceil(2) as u32)
}

fn pow4(e: u32) -> BigUint {
    big_pow(4, e)
}

fn exact_div(num: BigUint, den: BigUint, what: &str) -> Result<BigUint> {
    if den.is_zero() {
        return Err(Error::InexactDivision(format!("{what}: division by zero")));
    }
    if !(&num % &den).is_zero() {
        return Err(Error::InexactDivision(format!("{what}: {num} / {den}")));
    }
    Ok(num / den)
}

fn check_type(n: usize, t: usize, s: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::out_of_range(format!("length must be at least 2, got {n}")));
    }
    if !IsoType::new(t, s).is_valid_for(n) {
        return Err(Error::out_of_range(format!(
            "type ({t},{s}) needs t <= {} and t + s <= {}",
            n / 2,
            n.div_ceil(2)
        )));
    }
    Ok(())
}

/// `|L_{0,s}(V)| = [h choose s]_4`: the `s`-dimensional subspaces of `K`.
pub fn count_semisimple(n: usize, s: usize) -> Result<BigCount> {
    check_type(n, 0, s)?;
    let (_, h) = halves(n);
    Ok(qbinom4(h as i64, s as i64).into())
}

/// The closed product `∏_{i<k} (4^m − 4^{d+i}) / (4^{d+k} − 4^{d+i})` with
/// `m = dim soc(M)` and `d = dim soc(N)`. This equals `[m−d choose k]_4`,
/// the number of distinct sums `N ⊕ L`, not the number of complements `L`.
pub fn count_u_paper(dim_soc_m: usize, dim_soc_n: usize, k: usize) -> Result<BigCount> {
    if dim_soc_n + k > dim_soc_m {
        return Err(Error::out_of_range(format!(
            "U_{k} needs dim soc(N) + k <= dim soc(M), got {dim_soc_n} + {k} > {dim_soc_m}"
        )));
    }
    let (m, d, k) = (dim_soc_m as u32, dim_soc_n as u32, k as u32);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= pow4(m) - pow4(d + i);
        den *= pow4(d + k) - pow4(d + i);
    }
    exact_div(num, den, "U_k product").map(Into::into)
}

/// Number of `k`-dimensional subspaces of an `m`-dimensional space meeting a
/// fixed `d`-dimensional subspace trivially: `4^{kd} [m−d choose k]_4`.
pub fn count_u_direct(dim_soc_m: usize, dim_soc_n: usize, k: usize) -> Result<BigCount> {
    if dim_soc_n + k > dim_soc_m {
        return Err(Error::out_of_range(format!(
            "U_{k} needs dim soc(N) + k <= dim soc(M), got {dim_soc_n} + {k} > {dim_soc_m}"
        )));
    }
    let (m, d, k) = (dim_soc_m as i64, dim_soc_n as i64, k as i64);
    Ok((pow4((k * d) as u32) * qbinom4(m - d, k)).into())
}

/// Number of submodules `N ≅ R` of a module `M`:
/// `(4^{dim M} − 4^{dim soc M}) / 12`.
pub fn count_r_submodules(dim_m: usize, dim_soc_m: usize) -> Result<BigCount> {
    if dim_m <= dim_soc_m {
        return Err(Error::out_of_range(format!(
            "module has no R summand: dim {dim_m} <= socle dim {dim_soc_m}"
        )));
    }
    let num = pow4(dim_m as u32) - pow4(dim_soc_m as u32);
    exact_div(num, BigUint::from(12u32), "R-submodule count").map(Into::into)
}

/// Number of submodules `N ≅ R` of `M` with a prescribed simple socle
/// `⟨T(v)⟩`, `v ∈ M`: `4^{dim soc M − 1}`.
pub fn count_r_extensions_of_simple(dim_soc_m: usize) -> Result<BigCount> {
    if dim_soc_m == 0 {
        return Err(Error::out_of_range("socle dimension must be positive"));
    }
    Ok(pow4(dim_soc_m as u32 - 1).into())
}

/// `|L_{t,0}(V)| = [f choose t]_4 · 4^{t·h − t²}`.
pub fn count_lt0(n: usize, t: usize) -> Result<BigCount> {
    check_type(n, t, 0)?;
    if t == 0 {
        return Err(Error::out_of_range("t must be at least 1"));
    }
    Ok(lt0(n, t).into())
}

fn lt0(n: usize, t: usize) -> BigUint {
    let (f, h) = halves(n);
    let t = t as u32;
    qbinom4(f as i64, t as i64) * pow4(t * h - t * t)
}

/// Number of submodules `N ≅ tR` inside a module of type `(t, s)`; all of
/// them share the socle `T(M)`.
fn tr_submodules_per_module(t: usize, s: usize) -> BigUint {
    pow4((t * s) as u32)
}

fn u_paper(m: usize, d: usize, k: usize) -> Result<BigUint> {
    count_u_paper(m, d, k).map(BigCount::into_inner)
}

fn u_direct(m: usize, d: usize, k: usize) -> Result<BigUint> {
    count_u_direct(m, d, k).map(BigCount::into_inner)
}

/// Counts evaluated in one or both modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeCounts {
    pub paper: Option<BigCount>,
    pub verified: Option<BigCount>,
}

impl ModeCounts {
    /// `Some(true)` when both modes were evaluated and agree.
    pub fn agree(&self) -> Option<bool> {
        match (&self.paper, &self.verified) {
            (Some(p), Some(v)) => Some(p == v),
            _ => None,
        }
    }
}

fn both_modes(
    mode: Mode,
    paper: impl FnOnce() -> Result<BigCount>,
    verified: impl FnOnce() -> Result<BigCount>,
) -> Result<ModeCounts> {
    let (p, v) = match mode {
        Mode::Paper => (Some(paper()?), None),
        Mode::Verified | Mode::Oracle => (None, Some(verified()?)),
        Mode::Both => (Some(paper()?), Some(verified()?)),
    };
    Ok(ModeCounts { paper: p, verified: v })
}

fn check_mixed(n: usize, t: usize, s: usize) -> Result<()> {
    check_type(n, t, s)?;
    if t == 0 || s == 0 {
        return Err(Error::out_of_range("mixed types need t >= 1 and s >= 1"));
    }
    Ok(())
}

/// `|L_{t,s}(V)| = |L_{t,0}(V)| · |U_s(N, V)| / |U_s(N, N ⊕ L)|`, literally.
pub fn count_lts_paper(n: usize, t: usize, s: usize) -> Result<BigCount> {
    check_mixed(n, t, s)?;
    let (_, h) = halves(n);
    let h = h as usize;
    let num = lt0(n, t) * u_paper(h, t, s)?;
    exact_div(num, u_paper(t + s, t, s)?, "L_{t,s} ratio").map(Into::into)
}

/// `|L_{t,s}(V)|` by direct count:
/// `[f choose t]_4 · [h−t choose s]_4 · 4^{t(h−t−s)}`.
pub fn count_lts_verified(n: usize, t: usize, s: usize) -> Result<BigCount> {
    check_mixed(n, t, s)?;
    let (_, h) = halves(n);
    let h = h as usize;
    let pairs = lt0(n, t) * u_direct(h, t, s)?;
    let multiplicity = u_direct(t + s, t, s)? * tr_submodules_per_module(t, s);
    exact_div(pairs, multiplicity, "L_{t,s} pairs").map(Into::into)
}

pub fn count_lts(n: usize, t: usize, s: usize, mode: Mode) -> Result<ModeCounts> {
    both_modes(mode, || count_lts_paper(n, t, s), || count_lts_verified(n, t, s))
}

fn lprime_semisimple(n: usize, s: usize, u: fn(usize, usize, usize) -> Result<BigUint>) -> Result<BigUint> {
    // L'_{0,s}: M = 1 ⊕ W with W ∈ U_{s-1}(1, V); U_0 counts as 1.
    let (_, h) = halves(n);
    exact_div(u(h as usize, 1, s - 1)?, u(s, 1, s - 1)?, "L'_{0,s} ratio")
}

fn lprime_tr(n: usize, t: usize, u: fn(usize, usize, usize) -> Result<BigUint>) -> Result<BigUint> {
    // L'_{t,0}: 1 must lie in soc(M) ⊆ I, possible only for even n.
    if n % 2 == 1 {
        return Ok(BigUint::zero());
    }
    let (f, h) = halves(n);
    let socles = exact_div(u(f as usize, 1, t - 1)?, u(t, 1, t - 1)?, "L'_{t,0} ratio")?;
    let t32 = t as u32;
    Ok(socles * pow4(t32 * h - t32 * t32))
}

fn lprime_mixed(n: usize, t: usize, s: usize, verified: bool) -> Result<BigUint> {
    let u: fn(usize, usize, usize) -> Result<BigUint> = if verified { u_direct } else { u_paper };
    let h = halves(n).1 as usize;
    let multiplicity = |base: BigUint| {
        if verified {
            base * tr_submodules_per_module(t, s)
        } else {
            base
        }
    };
    // Modules whose tR part avoids 1: L = 1 ⊕ J with J ∈ U_{s-1}(N ⊕ 1, V).
    let avoid = |n_count: BigUint| -> Result<BigUint> {
        let pairs = n_count * u(h, t + 1, s - 1)?;
        exact_div(pairs, multiplicity(u(t + s, t + 1, s - 1)?), "L'_{t,s} ratio (1 outside soc N)")
    };
    if n.is_multiple_of(2) {
        let with_one = lprime_tr(n, t, u)?;
        let without_one = lt0(n, t) - &with_one;
        let first = exact_div(
            with_one * u(h, t, s)?,
            multiplicity(u(t + s, t, s)?),
            "L'_{t,s} ratio (1 inside soc N)",
        )?;
        Ok(first + avoid(without_one)?)
    } else {
        avoid(lt0(n, t))
    }
}

/// `|L'_{t,s}(V)|`, the codes of type `(t, s)` containing the all-ones
/// vector, evaluated literally from the closed forms.
pub fn count_lprime_paper(n: usize, t: usize, s: usize) -> Result<BigCount> {
    check_type(n, t, s)?;
    lprime(n, t, s, false).map(Into::into)
}

/// `|L'_{t,s}(V)|` by direct count.
pub fn count_lprime_verified(n: usize, t: usize, s: usize) -> Result<BigCount> {
    check_type(n, t, s)?;
    lprime(n, t, s, true).map(Into::into)
}

fn lprime(n: usize, t: usize, s: usize, verified: bool) -> Result<BigUint> {
    let u: fn(usize, usize, usize) -> Result<BigUint> = if verified { u_direct } else { u_paper };
    match (t, s) {
        (0, 0) => Err(Error::out_of_range("the zero code has no type")),
        (0, s) => lprime_semisimple(n, s, u),
        (t, 0) => lprime_tr(n, t, u),
        (t, s) => lprime_mixed(n, t, s, verified),
    }
}

pub fn count_lprime(n: usize, t: usize, s: usize, mode: Mode) -> Result<ModeCounts> {
    both_modes(mode, || count_lprime_paper(n, t, s), || count_lprime_verified(n, t, s))
}

/// Count of codes of one type in one mode (`Paper` or `Verified`),
/// dispatching to the semisimple, pure-`tR` or mixed formula.
pub fn count_type(n: usize, ty: IsoType, contains_one: bool, mode: Mode) -> Result<BigCount> {
    let verified = match mode {
        Mode::Paper => false,
        Mode::Verified => true,
        other => {
            return Err(Error::out_of_range(format!(
                "count_type evaluates a single mode, got {}",
                other.as_str()
            )))
        }
    };
    check_type(n, ty.t, ty.s)?;
    if contains_one {
        return lprime(n, ty.t, ty.s, verified).map(Into::into);
    }
    match (ty.t, ty.s) {
        (0, 0) => Err(Error::out_of_range("the zero code has no type")),
        (0, s) => count_semisimple(n, s),
        (t, 0) => count_lt0(n, t),
        (t, s) if verified => count_lts_verified(n, t, s),
        (t, s) => count_lts_paper(n, t, s),
    }
}

/// One cell of a count report: a count, or the error its formula raised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Count(BigCount),
    Error(String),
}

impl Cell {
    pub fn count(&self) -> Option<&BigCount> {
        match self {
            Cell::Count(c) => Some(c),
            Cell::Error(_) => None,
        }
    }
}

impl From<Result<BigCount>> for Cell {
    fn from(r: Result<BigCount>) -> Self {
        match r {
            Ok(c) => Cell::Count(c),
            Err(e) => Cell::Error(e.to_string()),
        }
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Count(c) => write!(f, "{c}"),
            Cell::Error(_) => write!(f, "error"),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Count(c) => c.serialize(serializer),
            Cell::Error(msg) => {
                use serde::ser::SerializeMap;
                let mut m = serializer.serialize_map(Some(1))?;
                m.serialize_entry("error", msg)?;
                m.end()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountEntry {
    pub t: usize,
    pub s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper: Option<Cell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<Cell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Cell>,
}

impl CountEntry {
    pub fn iso_type(&self) -> IsoType {
        IsoType::new(self.t, self.s)
    }

    fn cells(&self) -> [(&'static str, &Option<Cell>); 3] {
        [("paper", &self.paper), ("verified", &self.verified), ("oracle", &self.oracle)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Totals {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper: Option<Cell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<Cell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Cell>,
}

/// Per-type counts for one length. The zero code is never an entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub n: usize,
    pub contains_one: bool,
    pub mode: Mode,
    pub entries: Vec<CountEntry>,
    pub total: Totals,
    pub discrepancies: Vec<IsoType>,
    pub zero_code_excluded: bool,
}

fn sum_cells<'a>(cells: impl Iterator<Item = &'a Option<Cell>>) -> Option<Cell> {
    let mut acc = BigCount::zero();
    let mut any = false;
    for c in cells {
        match c {
            None => return None,
            Some(Cell::Error(_)) => return Some(Cell::Error("a summand failed".into())),
            Some(Cell::Count(x)) => {
                acc = acc + x.clone();
                any = true;
            }
        }
    }
    any.then_some(Cell::Count(acc))
}

impl CountTable {
    /// Assembles a table from entries, filling totals and discrepancies.
    pub fn from_entries(n: usize, contains_one: bool, mode: Mode, entries: Vec<CountEntry>) -> CountTable {
        let total = Totals {
            paper: sum_cells(entries.iter().map(|e| &e.paper)),
            verified: sum_cells(entries.iter().map(|e| &e.verified)),
            oracle: sum_cells(entries.iter().map(|e| &e.oracle)),
        };
        let discrepancies = entries
            .iter()
            .filter(|e| {
                let present: Vec<&Cell> = e.cells().iter().filter_map(|(_, c)| c.as_ref()).collect();
                present.windows(2).any(|w| w[0] != w[1])
            })
            .map(CountEntry::iso_type)
            .collect();
        CountTable {
            n,
            contains_one,
            mode,
            entries,
            total,
            discrepancies,
            zero_code_excluded: true,
        }
    }

    pub fn entry(&self, ty: IsoType) -> Option<&CountEntry> {
        self.entries.iter().find(|e| e.iso_type() == ty)
    }

    /// Line-oriented report with a fixed key order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n={}", self.n);
        let _ = writeln!(out, "contains_one={}", self.contains_one);
        let _ = writeln!(out, "mode={}", self.mode.as_str());
        for e in &self.entries {
            let _ = write!(out, "entry t={} s={}", e.t, e.s);
            for (name, cell) in e.cells() {
                if let Some(c) = cell {
                    let _ = write!(out, " {name}={c}");
                }
            }
            out.push('\n');
            for (name, cell) in e.cells() {
                if let Some(Cell::Error(msg)) = cell {
                    let _ = writeln!(out, "error t={} s={} {name}: {msg}", e.t, e.s);
                }
            }
        }
        out.push_str("total");
        for (name, cell) in [
            ("paper", &self.total.paper),
            ("verified", &self.total.verified),
            ("oracle", &self.total.oracle),
        ] {
            if let Some(c) = cell {
                let _ = write!(out, " {name}={c}");
            }
        }
        out.push('\n');
        if self.discrepancies.is_empty() {
            out.push_str("discrepancies=none\n");
        } else {
            let list: Vec<String> = self.discrepancies.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(out, "discrepancies={}", list.join(","));
        }
        let _ = writeln!(out, "zero_code_excluded={}", self.zero_code_excluded);
        out
    }
}

/// Table restricted to the given types.
pub fn count_table_for(n: usize, contains_one: bool, mode: Mode, types: &[IsoType]) -> Result<CountTable> {
    if n < 2 {
        return Err(Error::out_of_range(format!("length must be at least 2, got {n}")));
    }
    let mut entries = Vec::with_capacity(types.len());
    for &ty in types {
        check_type(n, ty.t, ty.s)?;
        let eval = |m| -> Option<Cell> { Some(count_type(n, ty, contains_one, m).into()) };
        let (paper, verified) = match mode {
            Mode::Paper => (eval(Mode::Paper), None),
            Mode::Verified => (None, eval(Mode::Verified)),
            Mode::Both => (eval(Mode::Paper), eval(Mode::Verified)),
            Mode::Oracle => return Err(Error::out_of_range("oracle tables come from the oracle module")),
        };
        entries.push(CountEntry {
            t: ty.t,
            s: ty.s,
            paper,
            verified,
            oracle: None,
        });
    }
    Ok(CountTable::from_entries(n, contains_one, mode, entries))
}

/// One entry per valid type `(t, s)` with `t + s ≥ 1`.
pub fn count_table(n: usize, contains_one: bool, mode: Mode) -> Result<CountTable> {
    count_table_for(n, contains_one, mode, &IsoType::all_for(n))
}

/// Number of isomorphism types realized by at least one code (VERIFIED).
pub fn count_iso_types(n: usize, contains_one: bool) -> Result<usize> {
    let mut k = 0;
    for ty in IsoType::all_for(n) {
        if !count_type(n, ty, contains_one, Mode::Verified)?.is_zero() {
            k += 1;
        }
    }
    Ok(k)
}
