//! Exhaustive construction of reversible codes by socle extension.
//!
//! Fix `W ⊆ I` of dimension `t` with basis `s_1..s_t`, and a socle
//! `Y = W ⊕ L ⊆ K` of dimension `t + s`. A module `M ≅ tR ⊕ sF` with
//! `T(M) = W` and `soc(M) = Y` has the form `Y + span{u_i}` with
//! `T(u_i) = s_i`, so `u_i ∈ ŝ_i + K`. The coset `u_i + Y` meets
//! `ŝ_i + D` in exactly one point for any complement `D` of `Y` in `K`,
//! hence taking `u_i = ŝ_i + k_i` with `k_i ∈ D` produces every such module
//! exactly once. Likewise `L` ranges over the `s`-dimensional subspaces of
//! a fixed complement of `W` in `K`, which are in bijection with the
//! `(t+s)`-dimensional `Y ⊇ W`.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;

use crate::counter::{count_type, Mode};
use crate::error::{Error, Result};
use crate::gf4::Gf4;
use crate::reverse::{hat, t_image, t_map, IsoType, ReverseSpace, ReversibleCode};
use crate::subspace::{enumerate_subspaces, Subspace, SubspaceStream};
use crate::vector::GfVector;

pub const DEFAULT_CEILING: u64 = 1_000_000;

/// Input of [`socle_extensions`]: a socle `W = span(w_basis) ⊆ I`.
#[derive(Debug, Clone)]
pub struct SocleExtensionTask {
    pub rs: ReverseSpace,
    pub w_basis: Vec<GfVector>,
    pub contains_one: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    /// Largest number of codes enumerated without `force`.
    pub ceiling: u64,
    pub force: bool,
    /// Worker threads; socle classes are processed in parallel batches.
    pub jobs: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            ceiling: DEFAULT_CEILING,
            force: false,
            jobs: 1,
        }
    }
}

/// Every code with socle `Y` whose `tR` part has socle `W`, sorted.
/// `w_basis` spans `W`; `y` contains `W`.
fn extend_socle(rs: &ReverseSpace, w_basis: &[GfVector], y: &Subspace) -> Vec<ReversibleCode> {
    let n = rs.n();
    let has_one = y.contains(rs.repetition());
    if w_basis.is_empty() {
        return vec![ReversibleCode::from_parts(y.clone(), y.clone(), has_one)];
    }
    let d_space = Subspace::from_rows(n, y.complement_in(rs.k(), &[])).expect("same length");
    let offsets: Vec<GfVector> = d_space.codewords().collect();
    let lifts: Vec<GfVector> = w_basis.iter().map(hat).collect();
    let t = lifts.len();
    let mut idx = vec![0usize; t];
    let mut out = BTreeSet::new();
    loop {
        let mut rows: Vec<GfVector> = y.basis().to_vec();
        for (lift, &j) in lifts.iter().zip(&idx) {
            rows.push(lift + &offsets[j]);
        }
        let space = Subspace::from_rows(n, rows).expect("same length");
        debug_assert_eq!(space.dim(), 2 * t + y.dim() - t);
        let fresh = out.insert(space);
        debug_assert!(fresh, "socle extension produced a duplicate");
        // odometer over the offset tuple
        let mut pos = t;
        loop {
            if pos == 0 {
                return out
                    .into_iter()
                    .map(|m| ReversibleCode::from_parts(m, y.clone(), has_one))
                    .collect();
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < offsets.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn check_w_basis(rs: &ReverseSpace, w_basis: &[GfVector]) -> Result<Subspace> {
    for v in w_basis {
        if v.len() != rs.n() {
            return Err(Error::LengthMismatch {
                expected: rs.n(),
                found: v.len(),
            });
        }
        if !rs.i().contains(v) {
            return Err(Error::BadSocle(format!("{v} is not in I")));
        }
    }
    let w = Subspace::from_rows(rs.n(), w_basis.to_vec())?;
    if w.dim() != w_basis.len() {
        return Err(Error::BadSocle("socle basis is linearly dependent".into()));
    }
    Ok(w)
}

/// Every submodule `N ≅ tR` with socle exactly `W`, sorted; with
/// `contains_one`, only those containing the all-ones vector (which requires
/// it to lie in `W`).
pub fn socle_extensions(task: &SocleExtensionTask) -> Result<Vec<ReversibleCode>> {
    if task.w_basis.is_empty() {
        return Err(Error::BadSocle("socle basis is empty".into()));
    }
    let w = check_w_basis(&task.rs, &task.w_basis)?;
    if task.contains_one && !w.contains(task.rs.repetition()) {
        return Ok(Vec::new());
    }
    Ok(extend_socle(&task.rs, &task.w_basis, &w))
}

/// All codes whose `tR` part has socle `W` and whose type is `(dim W, s)`,
/// sorted.
fn codes_for_socle(rs: &ReverseSpace, w: &Subspace, s: usize, contains_one: bool) -> Vec<ReversibleCode> {
    let n = rs.n();
    let one = rs.repetition();
    let one_in_w = w.contains(one);
    let preferred = if contains_one { vec![one.clone()] } else { Vec::new() };
    let complement = w.complement_in(rs.k(), &preferred);
    // With 1 ∉ W the complement starts with 1, and L = <1> ⊕ L'.
    let (forced, free_part, free_dim) = if contains_one && !one_in_w {
        if s == 0 {
            return Vec::new();
        }
        debug_assert_eq!(&complement[0], one);
        (vec![one.clone()], complement[1..].to_vec(), s - 1)
    } else {
        (Vec::new(), complement, s)
    };
    let free_space = Subspace::from_rows(n, free_part).expect("same length");
    let mut out = Vec::new();
    let stream = enumerate_subspaces(&free_space, free_dim).expect("dimension checked by caller");
    for l in stream {
        let mut rows = w.basis().to_vec();
        rows.extend(forced.iter().cloned());
        rows.extend(l.basis().iter().cloned());
        let y = Subspace::from_rows(n, rows).expect("same length");
        debug_assert_eq!(y.dim(), w.dim() + s);
        out.extend(extend_socle(rs, w.basis(), &y));
    }
    out.sort();
    out
}

fn check_type(rs: &ReverseSpace, t: usize, s: usize) -> Result<()> {
    if t + s == 0 {
        return Err(Error::out_of_range("the zero code is not enumerated"));
    }
    if !IsoType::new(t, s).is_valid_for(rs.n()) {
        return Err(Error::out_of_range(format!(
            "type ({t},{s}) needs t <= {} and t + s <= {}",
            rs.floor_half(),
            rs.ceil_half()
        )));
    }
    Ok(())
}

/// Stream of every reversible code of one type. Codes are grouped by
/// `T(M)` in increasing order of `T(M)` and sorted within each group.
pub struct TypeStream {
    rs: ReverseSpace,
    s: usize,
    contains_one: bool,
    socles: SubspaceStream,
    buffer: VecDeque<ReversibleCode>,
    batch: usize,
    pool: Option<rayon::ThreadPool>,
}

impl TypeStream {
    fn refill(&mut self) -> bool {
        let ws: Vec<Subspace> = self.socles.by_ref().take(self.batch).collect();
        if ws.is_empty() {
            return false;
        }
        let (rs, s, c1) = (&self.rs, self.s, self.contains_one);
        let blocks: Vec<Vec<ReversibleCode>> = match &self.pool {
            Some(pool) => pool.install(|| ws.par_iter().map(|w| codes_for_socle(rs, w, s, c1)).collect()),
            None => ws.iter().map(|w| codes_for_socle(rs, w, s, c1)).collect(),
        };
        self.buffer.extend(blocks.into_iter().flatten());
        true
    }
}

impl Iterator for TypeStream {
    type Item = ReversibleCode;

    fn next(&mut self) -> Option<ReversibleCode> {
        loop {
            if let Some(c) = self.buffer.pop_front() {
                return Some(c);
            }
            if !self.refill() {
                return None;
            }
        }
    }
}

/// Every reversible code of type `(t, s)`, each exactly once; with
/// `contains_one`, only codes containing the all-ones vector. Refuses with
/// `TooLarge` when the exact count exceeds `opts.ceiling` unless forced.
pub fn enumerate_type(
    rs: &ReverseSpace,
    t: usize,
    s: usize,
    contains_one: bool,
    opts: &EnumerateOptions,
) -> Result<TypeStream> {
    check_type(rs, t, s)?;
    if !opts.force {
        let expected = count_type(rs.n(), IsoType::new(t, s), contains_one, Mode::Verified)?;
        if expected.to_u64().is_none_or(|c| c > opts.ceiling) {
            return Err(Error::TooLarge {
                what: format!("enumeration of type ({t},{s}) at n={}", rs.n()),
                size: expected.to_string(),
                ceiling: opts.ceiling,
            });
        }
    }
    let jobs = opts.jobs.max(1);
    let pool = if jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::out_of_range(format!("cannot start {jobs} workers: {e}")))?,
        )
    } else {
        None
    };
    Ok(TypeStream {
        rs: rs.clone(),
        s,
        contains_one,
        socles: enumerate_subspaces(rs.i(), t)?,
        buffer: VecDeque::new(),
        batch: 4 * jobs,
        pool,
    })
}

/// Every `s`-dimensional subspace of `K` (each of type `(0, s)`); with
/// `contains_one`, those containing the all-ones vector.
pub fn enumerate_semisimple(rs: &ReverseSpace, s: usize, contains_one: bool) -> Result<TypeStream> {
    let opts = EnumerateOptions {
        force: true,
        ..EnumerateOptions::default()
    };
    enumerate_type(rs, 0, s, contains_one, &opts)
}

/// Generator matrix in socle-extension layout: for each `i` the pair
/// `ŝ_i + k_i`, `r(ŝ_i) + k_i`, then the rows `l_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub n: usize,
    /// `s_i`, a basis of `T(M) ⊆ I`.
    pub socle_basis: Vec<GfVector>,
    /// `k_i ∈ K`.
    pub offsets: Vec<GfVector>,
    /// `l_j ∈ K`, completing `s_i` to a basis of the socle.
    pub semisimple: Vec<GfVector>,
}

impl GeneratorMatrix {
    pub fn rows(&self) -> Vec<GfVector> {
        let mut out = Vec::with_capacity(2 * self.socle_basis.len() + self.semisimple.len());
        for (s, k) in self.socle_basis.iter().zip(&self.offsets) {
            let lift = hat(s);
            out.push(&lift + k);
            out.push(&lift.reversed() + k);
        }
        out.extend(self.semisimple.iter().cloned());
        out
    }

    pub fn span(&self) -> Subspace {
        Subspace::from_rows(self.n, self.rows()).expect("same length")
    }
}

/// Coefficients `c` with `Σ c_j vectors[j] = target`, if any.
fn solve_combination(n: usize, vectors: &[GfVector], target: &GfVector) -> Option<Vec<Gf4>> {
    let m = vectors.len();
    let rows: Vec<GfVector> = vectors
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let mut row = GfVector::zeros(n + m);
            for (i, x) in v.entries().enumerate() {
                row.set(i, x);
            }
            row.set(n + j, Gf4::ONE);
            row
        })
        .collect();
    let ech = Subspace::from_rows(n + m, rows).expect("same length");
    let mut acc = GfVector::zeros(n + m);
    for (i, x) in target.entries().enumerate() {
        acc.set(i, x);
    }
    for row in ech.basis() {
        let p = row.leading_index().expect("nonzero row");
        if p >= n {
            break;
        }
        let c = acc.get(p);
        if !c.is_zero() {
            acc.add_scaled(row, c);
        }
    }
    if (0..n).any(|i| !acc.get(i).is_zero()) {
        return None;
    }
    Some((0..m).map(|j| acc.get(n + j)).collect())
}

/// Generator matrix of a nonzero reversible code. The all-ones vector is
/// placed first among the `s_i` when it lies in `T(M)`, and otherwise first
/// among the `l_j` when the code contains it.
pub fn generator_matrix(code: &ReversibleCode) -> Result<GeneratorMatrix> {
    if code.dim() == 0 {
        return Err(Error::ZeroCode);
    }
    let n = code.n();
    let m = code.space();
    let one = GfVector::ones(n);
    let w = t_image(m);
    let socle_basis: Vec<GfVector> = if w.contains(&one) {
        let mut b = vec![one.clone()];
        b.extend(Subspace::span_of(&one).complement_in(&w, &[]));
        b
    } else {
        w.basis().to_vec()
    };
    let images: Vec<GfVector> = m.basis().iter().map(t_map).collect();
    let y = code.socle();
    let mut offsets = Vec::with_capacity(socle_basis.len());
    for s in &socle_basis {
        let coeffs = solve_combination(n, &images, s).expect("s lies in T(M)");
        let u = m.combine(&coeffs);
        offsets.push(y.reduce(&(&u + &hat(s))));
    }
    let preferred = if code.contains_one() { vec![one] } else { Vec::new() };
    let semisimple = w.complement_in(y, &preferred);
    Ok(GeneratorMatrix {
        n,
        socle_basis,
        offsets,
        semisimple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reverse::is_invariant;

    fn v(s: &str) -> GfVector {
        s.parse().unwrap()
    }

    fn rs(n: usize) -> ReverseSpace {
        ReverseSpace::new(n).unwrap()
    }

    fn all(n: usize, t: usize, s: usize, c1: bool) -> Vec<ReversibleCode> {
        enumerate_type(&rs(n), t, s, c1, &EnumerateOptions::default()).unwrap().collect()
    }

    #[test]
    fn semisimple_examples() {
        let r = rs(3);
        assert_eq!(enumerate_semisimple(&r, 1, false).unwrap().count(), 5);
        let ones: Vec<_> = enumerate_semisimple(&r, 1, true).unwrap().collect();
        assert_eq!(ones.len(), 1);
        assert_eq!(ones[0].space(), &Subspace::span_of(&v("111")));
        let k: Vec<_> = enumerate_semisimple(&r, 2, true).unwrap().collect();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].space(), r.k());
        assert!(enumerate_semisimple(&r, 0, false).is_err());
        assert!(enumerate_semisimple(&r, 3, false).is_err());
    }

    #[test]
    fn socle_extension_examples() {
        let task = |n: usize, w: &str| SocleExtensionTask {
            rs: rs(n),
            w_basis: vec![v(w)],
            contains_one: false,
        };
        let ext = socle_extensions(&task(2, "11")).unwrap();
        assert_eq!(ext.len(), 1);
        assert_eq!(ext[0].space(), &Subspace::full(2));
        assert_eq!(socle_extensions(&task(3, "101")).unwrap().len(), 4);
        let ext = socle_extensions(&task(4, "1001")).unwrap();
        assert_eq!(ext.len(), 4);
        for c in &ext {
            assert_eq!(c.socle(), &Subspace::span_of(&v("1001")));
            assert_eq!(c.iso_type(), IsoType::new(1, 0));
        }
    }

    #[test]
    fn socle_extension_errors() {
        let bad = |w: Vec<GfVector>| {
            socle_extensions(&SocleExtensionTask {
                rs: rs(4),
                w_basis: w,
                contains_one: false,
            })
        };
        assert!(matches!(bad(vec![v("0110"), v("0aa0")]), Err(Error::BadSocle(_))));
        assert!(matches!(bad(vec![v("0100")]), Err(Error::BadSocle(_))));
        assert!(matches!(bad(vec![]), Err(Error::BadSocle(_))));
    }

    #[test]
    fn socle_extension_contains_one_needs_one_in_socle() {
        let run = |w: &str| {
            socle_extensions(&SocleExtensionTask {
                rs: rs(4),
                w_basis: vec![v(w)],
                contains_one: true,
            })
            .unwrap()
            .len()
        };
        assert_eq!(run("1001"), 0);
        assert_eq!(run("1111"), 4);
    }

    #[test]
    fn type_examples() {
        let v3 = all(3, 1, 1, false);
        assert_eq!(v3.len(), 1);
        assert_eq!(v3[0].space(), &Subspace::full(3));
        let v4 = all(4, 2, 0, false);
        assert_eq!(v4.len(), 1);
        assert_eq!(v4[0].space(), &Subspace::full(4));
        assert_eq!(all(4, 1, 1, false).len(), 5);
        assert_eq!(all(3, 1, 0, false).len(), 4);
    }

    #[test]
    fn emitted_codes_are_well_formed_and_distinct() {
        for n in 2..=6 {
            for ty in IsoType::all_for(n) {
                for c1 in [false, true] {
                    let codes = all(n, ty.t, ty.s, c1);
                    let set: BTreeSet<_> = codes.iter().map(|c| c.space().clone()).collect();
                    assert_eq!(set.len(), codes.len());
                    let expected = count_type(n, ty, c1, Mode::Verified).unwrap();
                    assert_eq!(expected, codes.len() as u64, "n={n} {ty} c1={c1}");
                    for c in &codes {
                        assert!(is_invariant(c.space()));
                        let fresh = ReversibleCode::new(c.space().clone(), &rs(n)).unwrap();
                        assert_eq!(&fresh, c);
                        assert_eq!(c.iso_type(), ty);
                        if c1 {
                            assert!(c.contains_one());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parallel_output_matches_sequential() {
        let r = rs(6);
        let seq: Vec<_> = enumerate_type(&r, 1, 1, false, &EnumerateOptions::default()).unwrap().collect();
        let opts = EnumerateOptions {
            jobs: 4,
            ..EnumerateOptions::default()
        };
        let par: Vec<_> = enumerate_type(&r, 1, 1, false, &opts).unwrap().collect();
        assert_eq!(seq, par);
    }

    #[test]
    fn ceiling_guard() {
        let opts = EnumerateOptions {
            ceiling: 3,
            ..EnumerateOptions::default()
        };
        assert!(matches!(
            enumerate_type(&rs(3), 1, 0, false, &opts),
            Err(Error::TooLarge { .. })
        ));
        let forced = EnumerateOptions { force: true, ..opts };
        assert_eq!(enumerate_type(&rs(3), 1, 0, false, &forced).unwrap().count(), 4);
        assert!(enumerate_type(&rs(3), 2, 0, false, &opts).is_err());
        assert!(enumerate_type(&rs(3), 0, 0, false, &opts).is_err());
    }

    #[test]
    fn generator_matrix_examples() {
        let r3 = rs(3);
        let rep = ReversibleCode::new(Subspace::span_of(&v("111")), &r3).unwrap();
        let g = generator_matrix(&rep).unwrap();
        assert!(g.socle_basis.is_empty());
        assert_eq!(g.semisimple, vec![v("111")]);

        let full2 = ReversibleCode::new(Subspace::full(2), &rs(2)).unwrap();
        let g = generator_matrix(&full2).unwrap();
        assert_eq!(g.socle_basis, vec![v("11")]);
        assert_eq!(g.rows(), vec![v("10"), v("01")]);

        let m = Subspace::from_rows(3, vec![v("100"), v("001")]).unwrap();
        let g = generator_matrix(&ReversibleCode::new(m, &r3).unwrap()).unwrap();
        assert_eq!(g.socle_basis, vec![v("101")]);
        assert_eq!(g.offsets, vec![v("000")]);
        assert_eq!(g.rows(), vec![v("100"), v("001")]);

        let zero = ReversibleCode::new(Subspace::zero(3), &r3).unwrap();
        assert_eq!(generator_matrix(&zero), Err(Error::ZeroCode));
    }

    #[test]
    fn generator_matrix_respans_and_has_layout() {
        for n in 2..=6 {
            let r = rs(n);
            for ty in IsoType::all_for(n) {
                for code in all(n, ty.t, ty.s, false) {
                    let g = generator_matrix(&code).unwrap();
                    assert_eq!(g.rows().len(), code.dim());
                    assert_eq!(&g.span(), code.space());
                    assert_eq!(g.socle_basis.len(), ty.t);
                    assert_eq!(g.semisimple.len(), ty.s);
                    let w = Subspace::from_rows(n, g.socle_basis.clone()).unwrap();
                    for s in &g.socle_basis {
                        assert!(r.i().contains(s));
                    }
                    for k in g.offsets.iter().chain(&g.semisimple) {
                        assert!(r.k().contains(k));
                    }
                    for l in &g.semisimple {
                        assert!(!w.contains(l));
                    }
                    if code.contains_one() {
                        let one = GfVector::ones(n);
                        let first = g.socle_basis.first().filter(|s| **s == one);
                        assert!(first.is_some() || g.semisimple.first() == Some(&one));
                        if n % 2 == 1 {
                            assert_eq!(g.semisimple.first(), Some(&one));
                        }
                    }
                }
            }
        }
    }
}
