//! Brute-force ground truth: every reversible code of small length, found by
//! testing each subspace of F4^n for invariance.
//!
//! Only the subspace lattice and the reverse-structure predicates are used
//! here, never the enumerator or the counting formulas.

use std::collections::BTreeMap;

use crate::counter::{Cell, CountEntry, CountTable, Mode};
use crate::error::{Error, Result};
use crate::qbinom::BigCount;
use crate::reverse::{is_invariant, IsoType, ReverseSpace, ReversibleCode};
use crate::subspace::{enumerate_subspaces, Subspace};

pub const ORACLE_MAX_N: usize = 5;

/// Every nonzero reversible code of length `n`, ordered by dimension and
/// then by canonical form. Lengths above [`ORACLE_MAX_N`] need `allow_large`.
pub fn brute_force_reversible(n: usize, allow_large: bool) -> Result<Vec<ReversibleCode>> {
    let rs = ReverseSpace::new(n)?;
    if n > ORACLE_MAX_N && !allow_large {
        return Err(Error::TooLarge {
            what: format!("subspace lattice of F4^{n}"),
            size: format!("n={n}"),
            ceiling: ORACLE_MAX_N as u64,
        });
    }
    let full = Subspace::full(n);
    let mut out = Vec::new();
    for k in 1..=n {
        for m in enumerate_subspaces(&full, k)? {
            if is_invariant(&m) {
                out.push(ReversibleCode::new(m, &rs)?);
            }
        }
    }
    Ok(out)
}

/// Per-type counts from [`brute_force_reversible`], optionally restricted to
/// codes containing the all-ones vector. Every valid type gets an entry.
pub fn oracle_count_table(n: usize, contains_one: bool, allow_large: bool) -> Result<CountTable> {
    let codes = brute_force_reversible(n, allow_large)?;
    Ok(table_from_codes(n, contains_one, &codes))
}

/// Builds the oracle table from an already computed code list.
pub fn table_from_codes(n: usize, contains_one: bool, codes: &[ReversibleCode]) -> CountTable {
    let mut tally: BTreeMap<IsoType, u64> = IsoType::all_for(n).into_iter().map(|t| (t, 0)).collect();
    for c in codes.iter().filter(|c| !contains_one || c.contains_one()) {
        *tally.entry(c.iso_type()).or_default() += 1;
    }
    let entries = tally
        .into_iter()
        .map(|(ty, k)| CountEntry {
            t: ty.t,
            s: ty.s,
            paper: None,
            verified: None,
            oracle: Some(Cell::Count(BigCount::from(k))),
        })
        .collect();
    CountTable::from_entries(n, contains_one, Mode::Oracle, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reverse::dual_code;
    use crate::vector::GfVector;

    fn counts(t: &CountTable) -> Vec<(usize, usize, u64)> {
        t.entries
            .iter()
            .map(|e| (e.t, e.s, e.oracle.as_ref().unwrap().count().unwrap().to_u64().unwrap()))
            .collect()
    }

    #[test]
    fn length_two() {
        let codes = brute_force_reversible(2, false).unwrap();
        assert_eq!(codes.len(), 2);
        assert_eq!(codes[0].space(), &Subspace::span_of(&GfVector::ones(2)));
        assert_eq!(codes[0].iso_type(), IsoType::new(0, 1));
        assert_eq!(codes[1].space(), &Subspace::full(2));
        assert_eq!(codes[1].iso_type(), IsoType::new(1, 0));
        let t = oracle_count_table(2, false, false).unwrap();
        assert_eq!(counts(&t), vec![(0, 1, 1), (1, 0, 1)]);
    }

    #[test]
    fn length_three() {
        let t = oracle_count_table(3, false, false).unwrap();
        assert_eq!(counts(&t), vec![(0, 1, 5), (0, 2, 1), (1, 0, 4), (1, 1, 1)]);
        assert_eq!(t.total.oracle, Some(Cell::Count(BigCount::from(11))));
        let t = oracle_count_table(3, true, false).unwrap();
        assert_eq!(t.total.oracle, Some(Cell::Count(BigCount::from(3))));
        let codes: Vec<_> = brute_force_reversible(3, false)
            .unwrap()
            .into_iter()
            .filter(|c| c.contains_one())
            .map(|c| c.into_space())
            .collect();
        let rs = ReverseSpace::new(3).unwrap();
        assert_eq!(codes, vec![Subspace::span_of(&GfVector::ones(3)), rs.k().clone(), Subspace::full(3)]);
    }

    #[test]
    fn length_four_has_expected_cells() {
        let t = oracle_count_table(4, false, false).unwrap();
        let c = counts(&t);
        assert!(c.contains(&(1, 1, 5)));
        assert!(c.contains(&(2, 0, 1)));
    }

    #[test]
    fn closed_under_duals_and_dimension_one_lies_in_k() {
        for n in 2..=ORACLE_MAX_N {
            let rs = ReverseSpace::new(n).unwrap();
            let codes = brute_force_reversible(n, false).unwrap();
            let mut by_dim = vec![0usize; n + 1];
            for c in &codes {
                by_dim[c.dim()] += 1;
                assert_eq!(c.socle(), &crate::subspace::subspace_intersect(c.space(), rs.k()).unwrap());
                let d = dual_code(c.space());
                assert!(is_invariant(&d));
            }
            // the zero code and the full space pair up outside the list
            for k in 1..n {
                assert_eq!(by_dim[k], by_dim[n - k], "n={n} k={k}");
            }
            let h = n.div_ceil(2) as u32;
            assert_eq!(crate::qbinom::gaussian_binomial(h, 1, 4), by_dim[1] as u64);
            for c in codes.iter().filter(|c| c.dim() == 1) {
                assert!(c.space().is_subspace_of(rs.k()));
            }
        }
    }

    #[test]
    fn guard() {
        assert!(matches!(brute_force_reversible(6, false), Err(Error::TooLarge { .. })));
        assert!(brute_force_reversible(1, false).is_err());
    }
}
