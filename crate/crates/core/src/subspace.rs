//! Linear codes in canonical form and lattice operations on them.
//!
//! A [`Subspace`] always holds its basis in strict reduced row echelon form
//! (pivots equal to 1, strictly increasing, zero elsewhere in their column),
//! so two subspaces are equal exactly when their bases are equal.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf4::Gf4;
use crate::vector::GfVector;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    rows: Vec<GfVector>,
}

/// Result of [`subspace_sum`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumResult {
    pub space: Subspace,
    pub is_direct: bool,
}

fn rref_in_place(rows: &mut Vec<GfVector>, n: usize) {
    let mut rank = 0;
    for col in 0..n {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&i| !rows[i].get(col).is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = rows[rank].get(col).inv().expect("pivot is nonzero");
        rows[rank].scale_in_place(inv);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank {
                let c = row.get(col);
                if !c.is_zero() {
                    row.add_scaled(&pivot, c);
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
}

/// Canonical basis of the span of `rows`, all of which must have length `n`.
pub fn rref(n: usize, rows: &[GfVector]) -> Result<Subspace> {
    Subspace::from_rows(n, rows.to_vec())
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace { n, rows: Vec::new() }
    }

    /// The whole ambient space F4^n.
    pub fn full(n: usize) -> Subspace {
        Subspace {
            n,
            rows: (0..n).map(|i| GfVector::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(n: usize, mut rows: Vec<GfVector>) -> Result<Subspace> {
        for r in &rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
        }
        rref_in_place(&mut rows, n);
        Ok(Subspace { n, rows })
    }

    /// Span of a single vector.
    pub fn span_of(v: &GfVector) -> Subspace {
        Subspace::from_rows(v.len(), vec![v.clone()]).expect("single row has consistent length")
    }

    /// Wraps rows already known to be in strict RREF.
    pub(crate) fn from_rref_unchecked(n: usize, rows: Vec<GfVector>) -> Subspace {
        debug_assert!({
            let mut check = rows.clone();
            rref_in_place(&mut check, n);
            check == rows
        });
        Subspace { n, rows }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[GfVector] {
        &self.rows
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.leading_index().expect("basis rows are nonzero"))
            .collect()
    }

    /// Reduces `v` modulo this subspace: the result is zero in every pivot
    /// column and is the canonical representative of the coset `v + self`.
    pub fn reduce(&self, v: &GfVector) -> GfVector {
        let mut out = v.clone();
        for row in &self.rows {
            let p = row.leading_index().expect("basis rows are nonzero");
            let c = out.get(p);
            if !c.is_zero() {
                out.add_scaled(row, c);
            }
        }
        out
    }

    pub fn contains(&self, v: &GfVector) -> bool {
        v.len() == self.n && self.reduce(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.n == other.n && self.rows.iter().all(|r| other.contains(r))
    }

    fn check_n(&self, other: &Subspace) -> Result<()> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Linear combination `Σ coeffs[i] · basis[i]`.
    pub fn combine(&self, coeffs: &[Gf4]) -> GfVector {
        debug_assert_eq!(coeffs.len(), self.dim());
        let mut out = GfVector::zeros(self.n);
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if !c.is_zero() {
                out.add_scaled(row, c);
            }
        }
        out
    }

    /// Every codeword, in coefficient-lexicographic order (first basis row
    /// most significant). Yields `4^dim` vectors.
    pub fn codewords(&self) -> Codewords<'_> {
        Codewords {
            space: self,
            coeffs: vec![Gf4::ZERO; self.dim()],
            current: GfVector::zeros(self.n),
            done: false,
        }
    }

    /// Vectors extending a basis of `self` to a basis of `ambient`, taken
    /// greedily from `preferred` first and then from `ambient`'s own basis.
    /// `self` must be contained in `ambient`.
    pub fn complement_in(&self, ambient: &Subspace, preferred: &[GfVector]) -> Vec<GfVector> {
        let mut acc = self.clone();
        let mut out = Vec::new();
        for v in preferred.iter().chain(ambient.basis()) {
            if acc.dim() == ambient.dim() {
                break;
            }
            if ambient.contains(v) && !acc.contains(v) {
                let mut rows = acc.rows.clone();
                rows.push(v.clone());
                acc = Subspace::from_rows(self.n, rows).expect("same length");
                out.push(v.clone());
            }
        }
        out
    }
}

/// Iterator over all codewords of a subspace; see [`Subspace::codewords`].
pub struct Codewords<'a> {
    space: &'a Subspace,
    coeffs: Vec<Gf4>,
    current: GfVector,
    done: bool,
}

impl Iterator for Codewords<'_> {
    type Item = GfVector;

    fn next(&mut self) -> Option<GfVector> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // Odometer step; changing coefficient c -> c' adds (c + c')·row.
        let mut j = self.coeffs.len();
        loop {
            if j == 0 {
                self.done = true;
                break;
            }
            j -= 1;
            let old = self.coeffs[j];
            let new = Gf4::from_bits((old.bits() + 1) & 3);
            self.coeffs[j] = new;
            self.current.add_scaled(&self.space.rows[j], old + new);
            if !new.is_zero() {
                break;
            }
        }
        Some(out)
    }
}

/// Canonical basis of `a ∩ b`, computed as `(a⊥ + b⊥)⊥`.
pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.check_n(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Subspace::zero(a.n));
    }
    let (da, db) = (dual(a), dual(b));
    let mut rows = da.rows;
    rows.extend(db.rows);
    let joined = Subspace::from_rows(a.n, rows)?;
    Ok(dual(&joined))
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<SumResult> {
    a.check_n(b)?;
    let mut rows = a.rows.clone();
    rows.extend(b.rows.iter().cloned());
    let space = Subspace::from_rows(a.n, rows)?;
    let is_direct = space.dim() == a.dim() + b.dim();
    Ok(SumResult { space, is_direct })
}

/// Dual code under the standard dot product.
pub fn dual(m: &Subspace) -> Subspace {
    let n = m.n;
    let pivots = m.pivots();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    // For each free column f: e_f + Σ_i row_i[f] · e_{pivot_i}
    // (minus signs vanish in characteristic 2).
    let rows = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = GfVector::unit(n, f);
            for (row, &p) in m.rows.iter().zip(&pivots) {
                v.set(p, row.get(f));
            }
            v
        })
        .collect();
    Subspace::from_rows(n, rows).expect("rows have length n")
}

/// Every `k`-dimensional subspace of `ambient`, each exactly once, in
/// increasing lexicographic order of canonical bases.
///
/// Subspaces are generated as RREF coefficient matrices over the basis of
/// `ambient`. Since that basis is itself in RREF, mapping a coefficient RREF
/// through it yields an RREF whose lexicographic order matches that of the
/// coefficient matrix, so a k-way merge of per-pivot-set odometers streams
/// the output in sorted order.
pub fn enumerate_subspaces(ambient: &Subspace, k: usize) -> Result<SubspaceStream> {
    let m = ambient.dim();
    if k > m {
        return Err(Error::out_of_range(format!(
            "cannot take {k}-dimensional subspaces of a {m}-dimensional space"
        )));
    }
    let mut stream = SubspaceStream {
        ambient: ambient.clone(),
        k,
        heap: BinaryHeap::new(),
        generators: Vec::new(),
    };
    for pivots in combinations(m, k) {
        let gen = PivotOdometer::new(m, pivots);
        let idx = stream.generators.len();
        let first = stream.materialize(&gen);
        stream.generators.push(gen);
        stream.heap.push(Reverse((first, idx)));
    }
    Ok(stream)
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Odometer over the free entries of RREF matrices with a fixed pivot set.
struct PivotOdometer {
    m: usize,
    pivots: Vec<usize>,
    // (row, column) of each free entry, in row-major order.
    free: Vec<(usize, usize)>,
    values: Vec<u8>,
}

impl PivotOdometer {
    fn new(m: usize, pivots: Vec<usize>) -> Self {
        let mut free = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            for col in p + 1..m {
                if !pivots.contains(&col) {
                    free.push((row, col));
                }
            }
        }
        let values = vec![0; free.len()];
        PivotOdometer { m, pivots, free, values }
    }

    /// Advances to the next assignment; false once exhausted.
    fn advance(&mut self) -> bool {
        for v in self.values.iter_mut().rev() {
            if *v < 3 {
                *v += 1;
                return true;
            }
            *v = 0;
        }
        false
    }

    fn coefficients(&self) -> Vec<Vec<Gf4>> {
        let mut mat = vec![vec![Gf4::ZERO; self.m]; self.pivots.len()];
        for (row, &p) in self.pivots.iter().enumerate() {
            mat[row][p] = Gf4::ONE;
        }
        for (&(row, col), &v) in self.free.iter().zip(&self.values) {
            mat[row][col] = Gf4::from_bits(v);
        }
        mat
    }
}

pub struct SubspaceStream {
    ambient: Subspace,
    k: usize,
    heap: BinaryHeap<Reverse<(Subspace, usize)>>,
    generators: Vec<PivotOdometer>,
}

impl SubspaceStream {
    fn materialize(&self, gen: &PivotOdometer) -> Subspace {
        let n = self.ambient.n();
        let rows = gen
            .coefficients()
            .into_iter()
            .map(|coeffs| {
                let mut v = GfVector::zeros(n);
                for (row, c) in self.ambient.basis().iter().zip(coeffs) {
                    if !c.is_zero() {
                        v.add_scaled(row, c);
                    }
                }
                v
            })
            .collect();
        Subspace::from_rref_unchecked(n, rows)
    }

    pub fn dimension(&self) -> usize {
        self.k
    }
}

impl Iterator for SubspaceStream {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let Reverse((out, idx)) = self.heap.pop()?;
        if self.generators[idx].advance() {
            let next = self.materialize(&self.generators[idx]);
            self.heap.push(Reverse((next, idx)));
        }
        Some(out)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbinom::gaussian_binomial;
    use num_bigint::BigUint;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn v(s: &str) -> GfVector {
        s.parse().unwrap()
    }

    fn sp(n: usize, rows: &[&str]) -> Subspace {
        Subspace::from_rows(n, rows.iter().map(|r| v(r)).collect()).unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = Subspace::full(3);
        assert_eq!(rref(3, id.basis()).unwrap(), id);
        assert_eq!(sp(2, &["aa"]).basis(), &[v("11")]);
        assert_eq!(sp(3, &["101", "111"]).basis(), &[v("101"), v("010")]);
        assert!(matches!(
            rref(3, &[v("101"), v("11")]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn intersect_and_sum_examples() {
        let k = sp(3, &["101", "010"]);
        let i = sp(3, &["101"]);
        let zero = Subspace::zero(3);
        assert_eq!(subspace_intersect(&k, &k).unwrap(), k);
        assert_eq!(subspace_intersect(&k, &zero).unwrap(), zero);
        assert_eq!(subspace_intersect(&k, &i).unwrap(), i);

        let s = subspace_sum(&k, &zero).unwrap();
        assert_eq!(s.space, k);
        assert!(s.is_direct);
        let s = subspace_sum(&k, &k).unwrap();
        assert_eq!(s.space, k);
        assert!(!s.is_direct);
        let s = subspace_sum(&sp(3, &["101"]), &sp(3, &["010"])).unwrap();
        assert_eq!(s.space, k);
        assert!(s.is_direct);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual(&Subspace::full(4)), Subspace::zero(4));
        assert_eq!(dual(&Subspace::zero(4)), Subspace::full(4));
        // (1,1) is self-dual in characteristic 2.
        assert_eq!(dual(&sp(2, &["11"])), sp(2, &["11"]));
    }

    #[test]
    fn codewords_cover_space() {
        let s = sp(4, &["1a00", "001b"]);
        let words: BTreeSet<GfVector> = s.codewords().collect();
        assert_eq!(words.len(), 16);
        assert!(words.iter().all(|w| s.contains(w)));
        assert_eq!(s.codewords().next(), Some(GfVector::zeros(4)));
    }

    #[test]
    fn enumerate_examples() {
        let a = sp(4, &["1100", "0011"]);
        let zeros: Vec<_> = enumerate_subspaces(&a, 0).unwrap().collect();
        assert_eq!(zeros, vec![Subspace::zero(4)]);
        assert_eq!(enumerate_subspaces(&a, 1).unwrap().count(), 5);
        let tops: Vec<_> = enumerate_subspaces(&a, 2).unwrap().collect();
        assert_eq!(tops, vec![a.clone()]);
        assert!(enumerate_subspaces(&a, 3).is_err());
    }

    #[test]
    fn enumeration_counts_match_gaussian_binomial() {
        // Ambient spaces of dimension up to 5 embedded in a longer space.
        for m in 0..=5usize {
            let rows: Vec<GfVector> = (0..m)
                .map(|i| {
                    let mut r = GfVector::unit(7, i);
                    r.set(6, Gf4::ALPHA);
                    r
                })
                .collect();
            let ambient = Subspace::from_rows(7, rows).unwrap();
            for k in 0..=m {
                let all: Vec<_> = enumerate_subspaces(&ambient, k).unwrap().collect();
                let distinct: BTreeSet<_> = all.iter().cloned().collect();
                assert_eq!(distinct.len(), all.len());
                assert_eq!(BigUint::from(all.len()), gaussian_binomial(m as u32, k as u32, 4).value().clone());
                assert!(all.windows(2).all(|w| w[0] < w[1]), "not sorted at m={m} k={k}");
                assert!(all.iter().all(|s| s.dim() == k && s.is_subspace_of(&ambient)));
            }
        }
    }

    fn arb_subspace(n: usize) -> impl Strategy<Value = Subspace> {
        proptest::collection::vec(proptest::collection::vec(0u8..4, n), 0..=n).prop_map(move |rows| {
            let rows = rows
                .into_iter()
                .map(|r| GfVector::from_entries(&r.into_iter().map(Gf4::from_bits).collect::<Vec<_>>()))
                .collect();
            Subspace::from_rows(n, rows).unwrap()
        })
    }

    proptest! {
        #[test]
        fn rref_invariant_under_row_operations(
            rows in proptest::collection::vec(proptest::collection::vec(0u8..4, 6), 1..6),
            scale in 1u8..4,
            i in 0usize..6,
            j in 0usize..6,
        ) {
            let rows: Vec<GfVector> = rows
                .into_iter()
                .map(|r| GfVector::from_entries(&r.into_iter().map(Gf4::from_bits).collect::<Vec<_>>()))
                .collect();
            let base = rref(6, &rows).unwrap();
            prop_assert_eq!(&rref(6, base.basis()).unwrap(), &base);

            let (i, j) = (i % rows.len(), j % rows.len());
            let mut scaled = rows.clone();
            scaled[i].scale_in_place(Gf4::from_bits(scale));
            prop_assert_eq!(&rref(6, &scaled).unwrap(), &base);

            let mut permuted = rows.clone();
            permuted.swap(i, j);
            prop_assert_eq!(&rref(6, &permuted).unwrap(), &base);

            if i != j {
                let mut added = rows.clone();
                let src = added[j].clone();
                added[i] += &src;
                prop_assert_eq!(&rref(6, &added).unwrap(), &base);
            }

            // Strict RREF shape.
            let piv = base.pivots();
            prop_assert!(piv.windows(2).all(|w| w[0] < w[1]));
            for (r, &p) in base.basis().iter().zip(&piv) {
                prop_assert_eq!(r.get(p), Gf4::ONE);
                for other in base.basis() {
                    if other != r {
                        prop_assert!(other.get(p).is_zero());
                    }
                }
            }
        }

        #[test]
        fn modular_dimension_law(a in arb_subspace(8), b in arb_subspace(8)) {
            let sum = subspace_sum(&a, &b).unwrap().space;
            let meet = subspace_intersect(&a, &b).unwrap();
            prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
            prop_assert!(meet.is_subspace_of(&a) && meet.is_subspace_of(&b));
            prop_assert!(a.is_subspace_of(&sum) && b.is_subspace_of(&sum));
        }

        #[test]
        fn dual_is_involution(a in arb_subspace(7)) {
            let d = dual(&a);
            prop_assert_eq!(d.dim(), 7 - a.dim());
            prop_assert_eq!(&dual(&d), &a);
            for x in a.basis() {
                for y in d.basis() {
                    prop_assert!(x.dot(y).is_zero());
                }
            }
        }
    }
}
