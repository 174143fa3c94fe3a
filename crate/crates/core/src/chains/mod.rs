//! Bounded chain complexes of free abelian groups.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abgroup::{invariant_factors, rank, smith_with_inverses, GroupInvariants, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("degree range [{lo}, {hi}] needs {} ranks, found {found}", hi - lo + 1)]
    RankCount { lo: i64, hi: i64, found: usize },
    #[error("expected {expected} boundary matrices, found {found}")]
    BoundaryCount { expected: usize, found: usize },
    #[error("boundary in degree {degree} has shape {found:?}, expected {expected:?}")]
    BoundaryShape { degree: i64, expected: (usize, usize), found: (usize, usize) },
    #[error("∂∘∂ ≠ 0: boundary squares to a nonzero map in degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("complexes live on different degree ranges")]
    RangeMismatch,
    #[error("map in degree {degree} has shape {found:?}, expected {expected:?}")]
    MapShape { degree: i64, expected: (usize, usize), found: (usize, usize) },
    #[error("map does not commute with the boundary in degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("map is not injective in degree {degree}")]
    NotInjective { degree: i64 },
    #[error("maps have different sources")]
    DifferentSources,
}

#[derive(Serialize, Deserialize)]
struct RawComplex {
    lo: i64,
    hi: i64,
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

/// `C_lo ← … ← C_hi` with `C_n = Z^ranks[n-lo]`. `boundaries[i]` is
/// `∂_{lo+i+1}`, a `ranks[i] × ranks[i+1]` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    lo: i64,
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl Serialize for ChainComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawComplex { lo: self.lo, hi: self.hi(), ranks: self.ranks.clone(), boundaries: self.boundaries.clone() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChainComplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawComplex::deserialize(deserializer)?;
        if raw.hi < raw.lo || raw.ranks.len() as i64 != raw.hi - raw.lo + 1 {
            return Err(serde::de::Error::custom(ChainError::RankCount {
                lo: raw.lo,
                hi: raw.hi,
                found: raw.ranks.len(),
            }));
        }
        ChainComplex::new(raw.lo, raw.ranks, raw.boundaries).map_err(serde::de::Error::custom)
    }
}

impl ChainComplex {
    /// Checks shapes and `∂∂ = 0`.
    pub fn new(lo: i64, ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, ChainError> {
        if ranks.is_empty() {
            return Err(ChainError::RankCount { lo, hi: lo, found: 0 });
        }
        if boundaries.len() != ranks.len() - 1 {
            return Err(ChainError::BoundaryCount { expected: ranks.len() - 1, found: boundaries.len() });
        }
        for (i, b) in boundaries.iter().enumerate() {
            let expected = (ranks[i], ranks[i + 1]);
            if (b.rows(), b.cols()) != expected {
                return Err(ChainError::BoundaryShape {
                    degree: lo + i as i64 + 1,
                    expected,
                    found: (b.rows(), b.cols()),
                });
            }
        }
        for i in 1..boundaries.len() {
            if !boundaries[i - 1].mul(&boundaries[i]).expect("shapes checked").is_zero() {
                return Err(ChainError::NotAComplex { degree: lo + i as i64 + 1 });
            }
        }
        Ok(ChainComplex { lo, ranks, boundaries })
    }

    pub fn zero() -> Self {
        ChainComplex { lo: 0, ranks: vec![0], boundaries: Vec::new() }
    }

    /// `Z` in degree `n`.
    pub fn point(n: i64) -> Self {
        ChainComplex { lo: n, ranks: vec![1], boundaries: Vec::new() }
    }

    /// `Z --1--> Z` in degrees `n`, `n-1`.
    pub fn acyclic(n: i64) -> Self {
        ChainComplex { lo: n - 1, ranks: vec![1, 1], boundaries: vec![IntMatrix::from_rows(&[[1]])] }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank_at(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    /// `∂_n : C_n → C_{n-1}`; a zero matrix outside the stored range.
    pub fn boundary(&self, n: i64) -> IntMatrix {
        if n > self.lo && n <= self.hi() {
            self.boundaries[(n - self.lo - 1) as usize].clone()
        } else {
            IntMatrix::zeros(self.rank_at(n - 1), self.rank_at(n))
        }
    }

    fn boundary_ref(&self, n: i64) -> Option<&IntMatrix> {
        (n > self.lo && n <= self.hi()).then(|| &self.boundaries[(n - self.lo - 1) as usize])
    }

    /// Same complex on a wider range, padded with zero groups.
    pub fn extended(&self, lo: i64, hi: i64) -> ChainComplex {
        let (lo, hi) = (lo.min(self.lo), hi.max(self.hi()));
        let ranks = (lo..=hi).map(|n| self.rank_at(n)).collect();
        let boundaries = (lo + 1..=hi).map(|n| self.boundary(n)).collect();
        ChainComplex { lo, ranks, boundaries }
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let (lo, hi) = (self.lo.min(other.lo), self.hi().max(other.hi()));
        let ranks = (lo..=hi).map(|n| self.rank_at(n) + other.rank_at(n)).collect();
        let boundaries = (lo + 1..=hi).map(|n| self.boundary(n).direct_sum(&other.boundary(n))).collect();
        ChainComplex { lo, ranks, boundaries }
    }

    /// Replaces every `∂_n` by `P_{n-1}⁻¹ ∂_n P_n` for unimodular `P`; `bases`
    /// holds `(P_n, P_n⁻¹)` per degree.
    pub fn change_basis(&self, bases: &[(IntMatrix, IntMatrix)]) -> Result<ChainComplex, ChainError> {
        let boundaries = (self.lo + 1..=self.hi())
            .map(|n| {
                let i = (n - self.lo) as usize;
                bases[i - 1].1.mul(&self.boundary(n)).and_then(|m| m.mul(&bases[i].0)).expect("basis shapes")
            })
            .collect();
        ChainComplex::new(self.lo, self.ranks.clone(), boundaries)
    }
}

/// Homology groups by degree; degrees with trivial homology are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologyType {
    pub groups: BTreeMap<i64, GroupInvariants>,
}

impl HomologyType {
    pub fn at(&self, n: i64) -> GroupInvariants {
        self.groups.get(&n).cloned().unwrap_or(GroupInvariants { free_rank: 0, torsion: Vec::new() })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups.iter().map(|(&n, g)| sign(n) * g.free_rank as i64).sum()
    }
}

impl fmt::Display for HomologyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.groups.iter().map(|(n, g)| format!("H{n}={g}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `H_n = ker ∂_n / im ∂_{n+1}`: free rank `c_n − rk ∂_n − rk ∂_{n+1}`,
/// torsion the nonunit invariant factors of `∂_{n+1}`.
pub fn homology(c: &ChainComplex) -> HomologyType {
    let factors: Vec<Vec<BigInt>> =
        (c.lo..=c.hi() + 1).map(|n| c.boundary_ref(n).map(invariant_factors).unwrap_or_default()).collect();
    let rk = |n: i64| -> usize {
        let i = n - c.lo;
        if i < 0 || i as usize >= factors.len() {
            0
        } else {
            factors[i as usize].iter().filter(|x| !x.is_zero()).count()
        }
    };
    let mut groups = BTreeMap::new();
    for n in c.lo..=c.hi() {
        let free_rank = c.rank_at(n) - rk(n) - rk(n + 1);
        let torsion: Vec<BigInt> = factors
            .get((n + 1 - c.lo) as usize)
            .map(|d| d.iter().filter(|x| !x.is_zero() && !x.is_one()).cloned().collect())
            .unwrap_or_default();
        let g = GroupInvariants { free_rank, torsion };
        if !g.is_trivial() {
            groups.insert(n, g);
        }
    }
    HomologyType { groups }
}

/// Alternating sum of ranks; equals the alternating sum of Betti numbers.
pub fn euler_char(c: &ChainComplex) -> i64 {
    let by_ranks: i64 = (c.lo..=c.hi()).map(|n| sign(n) * c.rank_at(n) as i64).sum();
    debug_assert_eq!(by_ranks, homology(c).euler_characteristic());
    by_ranks
}

/// Class in `K₀(Ch) ≅ Z`, read off the homology.
pub fn k0_class(c: &ChainComplex) -> i64 {
    homology(c).euler_characteristic()
}

pub fn quasi_iso_type_equal(c: &ChainComplex, d: &ChainComplex) -> bool {
    homology(c) == homology(d)
}

/// Degreewise matrices `f_n : C_n → D_n` over a common degree range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: Vec<IntMatrix>,
}

impl ChainMap {
    /// Checks shapes and `∂ f = f ∂`. Source and target are padded to a
    /// common range first; `maps` covers that range.
    pub fn new(source: ChainComplex, target: ChainComplex, maps: Vec<IntMatrix>) -> Result<Self, ChainError> {
        let (lo, hi) = (source.lo.min(target.lo), source.hi().max(target.hi()));
        let source = source.extended(lo, hi);
        let target = target.extended(lo, hi);
        if maps.len() != source.ranks.len() {
            return Err(ChainError::RangeMismatch);
        }
        for (i, m) in maps.iter().enumerate() {
            let expected = (target.ranks[i], source.ranks[i]);
            if (m.rows(), m.cols()) != expected {
                return Err(ChainError::MapShape { degree: lo + i as i64, expected, found: (m.rows(), m.cols()) });
            }
        }
        for n in lo + 1..=hi {
            let i = (n - lo) as usize;
            let left = target.boundary(n).mul(&maps[i]).expect("shapes");
            let right = maps[i - 1].mul(&source.boundary(n)).expect("shapes");
            if left != right {
                return Err(ChainError::NotAChainMap { degree: n });
            }
        }
        Ok(ChainMap { source, target, maps })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let maps = c.ranks.iter().map(|&r| IntMatrix::identity(r)).collect();
        ChainMap { source: c.clone(), target: c.clone(), maps }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn at(&self, n: i64) -> &IntMatrix {
        &self.maps[(n - self.source.lo) as usize]
    }

    pub fn maps(&self) -> &[IntMatrix] {
        &self.maps
    }

    /// Full column rank in every degree.
    pub fn is_levelwise_injective(&self) -> bool {
        self.maps.iter().all(|m| rank(m) == m.cols())
    }

    /// Nonunit invariant factors of each degree's matrix: the torsion of the
    /// levelwise cokernel.
    pub fn cokernel_torsion(&self) -> Vec<Vec<BigInt>> {
        self.maps
            .iter()
            .map(|m| invariant_factors(m).into_iter().filter(|x| !x.is_zero() && !x.is_one()).collect())
            .collect()
    }
}

/// Pushout `B ∪_A C` with its two structure maps.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub complex: ChainComplex,
    pub from_b: ChainMap,
    pub from_c: ChainMap,
    /// Whether `complex` is the strict quotient `(B ⊕ C)/A` or, when that
    /// quotient has torsion, the mapping cone of `A → B ⊕ C`.
    pub strict: bool,
}

/// Columns are signed standard basis vectors hitting distinct rows.
fn coordinate_inclusion(m: &IntMatrix) -> Option<Vec<(usize, BigInt)>> {
    let mut hit = vec![false; m.rows()];
    let mut out = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let col = m.column(j);
        let nz: Vec<usize> = (0..col.len()).filter(|&i| !col[i].is_zero()).collect();
        if nz.len() != 1 || !col[nz[0]].abs().is_one() || std::mem::replace(&mut hit[nz[0]], true) {
            return None;
        }
        out.push((nz[0], col[nz[0]].clone()));
    }
    Some(out)
}

/// Quotient `Z^(b+c) / im [f; -g]` in one degree, as a projection `q` onto a
/// free module and a section `s` with `q s = 1`. `None` when the quotient
/// has torsion.
fn degree_quotient(f: &IntMatrix, g: &IntMatrix) -> Option<(IntMatrix, IntMatrix)> {
    let (b, c, a) = (f.rows(), g.rows(), f.cols());
    if let Some(inc) = coordinate_inclusion(f) {
        // B's coordinates hit by f are traded for g's images in C
        let mut replaced: Vec<Option<usize>> = vec![None; b];
        for (j, (row, _)) in inc.iter().enumerate() {
            replaced[*row] = Some(j);
        }
        let kept: Vec<usize> = (0..b).filter(|&i| replaced[i].is_none()).collect();
        let p = kept.len() + c;
        let mut q = IntMatrix::zeros(p, b + c);
        let mut s = IntMatrix::zeros(b + c, p);
        for (k, &i) in kept.iter().enumerate() {
            q.set(k, i, BigInt::one());
            s.set(i, k, BigInt::one());
        }
        for i in 0..c {
            q.set(kept.len() + i, b + i, BigInt::one());
            s.set(b + i, kept.len() + i, BigInt::one());
        }
        for (j, (row, sign)) in inc.iter().enumerate() {
            // e_row ≡ sign · g(e_j)
            for i in 0..c {
                let x = g.get(i, j);
                if !x.is_zero() {
                    q.set(kept.len() + i, *row, sign * x);
                }
            }
        }
        return Some((q, s));
    }
    let h = f.vstack(&g.negated()).expect("same column count");
    let snf = smith_with_inverses(&h.transpose());
    if snf.d.iter().take(a).any(|x| !x.is_one()) {
        return None;
    }
    // h = V⁻ᵀ Dᵀ Uᵀ⁻¹ with Dᵀ = [I; 0]; project with the last rows of Vᵀ.
    let vt = snf.v.transpose();
    let vinv_t = snf.v_inv.transpose();
    let m = b + c;
    let q = IntMatrix::from_big_rows(m, &(a..m).map(|r| vt.row(r).to_vec()).collect::<Vec<_>>()).expect("rows");
    let s_rows: Vec<Vec<BigInt>> = (0..m).map(|r| vinv_t.row(r)[a..].to_vec()).collect();
    let s = IntMatrix::from_big_rows(m - a, &s_rows).expect("rows");
    Some((q, s))
}

fn hstack(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.transpose().vstack(&b.transpose()).expect("same row count").transpose()
}

pub fn pushout(f: &ChainMap, g: &ChainMap) -> Result<Pushout, ChainError> {
    if f.source() != g.source() {
        return Err(ChainError::DifferentSources);
    }
    if let Some(i) = f.maps.iter().position(|m| rank(m) != m.cols()) {
        return Err(ChainError::NotInjective { degree: f.source.lo + i as i64 });
    }
    let (lo, hi) = (f.target.lo.min(g.target.lo), f.target.hi().max(g.target.hi()));
    let a = f.source.extended(lo, hi);
    let b = f.target.extended(lo, hi);
    let c = g.target.extended(lo, hi);
    let pad = |m: &ChainMap, src: &ChainComplex, tgt: &ChainComplex| -> Vec<IntMatrix> {
        (lo..=hi)
            .map(|n| {
                if n >= m.source.lo && n <= m.source.hi() {
                    m.at(n).clone()
                } else {
                    IntMatrix::zeros(tgt.rank_at(n), src.rank_at(n))
                }
            })
            .collect()
    };
    let fm = pad(f, &a, &b);
    let gm = pad(g, &a, &c);
    let bc = b.direct_sum(&c);
    let quotients: Option<Vec<_>> = (0..fm.len()).map(|i| degree_quotient(&fm[i], &gm[i])).collect();
    match quotients {
        Some(qs) => {
            let ranks: Vec<usize> = qs.iter().map(|(q, _)| q.rows()).collect();
            let boundaries: Vec<IntMatrix> = (lo + 1..=hi)
                .map(|n| {
                    let i = (n - lo) as usize;
                    qs[i - 1].0.mul(&bc.boundary(n)).and_then(|m| m.mul(&qs[i].1)).expect("shapes")
                })
                .collect();
            let p = ChainComplex::new(lo, ranks, boundaries)?;
            let inc_b: Vec<IntMatrix> = (lo..=hi)
                .map(|n| {
                    let i = (n - lo) as usize;
                    let (q, _) = &qs[i];
                    let cols: Vec<usize> = (0..b.rank_at(n)).collect();
                    select_columns(q, &cols)
                })
                .collect();
            let inc_c: Vec<IntMatrix> = (lo..=hi)
                .map(|n| {
                    let i = (n - lo) as usize;
                    let (q, _) = &qs[i];
                    let cols: Vec<usize> = (b.rank_at(n)..b.rank_at(n) + c.rank_at(n)).collect();
                    select_columns(q, &cols)
                })
                .collect();
            Ok(Pushout {
                from_b: ChainMap::new(b, p.clone(), inc_b)?,
                from_c: ChainMap::new(c, p.clone(), inc_c)?,
                complex: p,
                strict: true,
            })
        }
        None => {
            // cone: P_n = B_n ⊕ C_n ⊕ A_{n-1}, ∂(x, y, a) = (∂x + f a, ∂y − g a, −∂a)
            let (plo, phi) = (lo, hi + 1);
            let ranks: Vec<usize> = (plo..=phi).map(|n| bc.rank_at(n) + a.rank_at(n - 1)).collect();
            let h_at = |n: i64| -> IntMatrix {
                if n < lo || n > hi {
                    IntMatrix::zeros(bc.rank_at(n), a.rank_at(n))
                } else {
                    let i = (n - lo) as usize;
                    fm[i].vstack(&gm[i].negated()).expect("columns")
                }
            };
            let boundaries: Vec<IntMatrix> = (plo + 1..=phi)
                .map(|n| {
                    let top = hstack(&bc.boundary(n), &h_at(n - 1));
                    let bottom =
                        hstack(&IntMatrix::zeros(a.rank_at(n - 2), bc.rank_at(n)), &a.boundary(n - 1).negated());
                    top.vstack(&bottom).expect("columns")
                })
                .collect();
            let p = ChainComplex::new(plo, ranks, boundaries)?;
            let embed = |src: &ChainComplex, offset: &dyn Fn(i64) -> usize| -> Vec<IntMatrix> {
                (plo..=phi)
                    .map(|n| {
                        let mut m = IntMatrix::zeros(p.rank_at(n), src.rank_at(n));
                        for j in 0..src.rank_at(n) {
                            m.set(offset(n) + j, j, BigInt::one());
                        }
                        m
                    })
                    .collect()
            };
            let from_b = ChainMap::new(b.clone(), p.clone(), embed(&b, &|_| 0))?;
            let from_c = ChainMap::new(c.clone(), p.clone(), embed(&c, &|n| b.rank_at(n)))?;
            Ok(Pushout { complex: p, from_b, from_c, strict: false })
        }
    }
}

fn select_columns(m: &IntMatrix, cols: &[usize]) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|r| cols.iter().map(|&c| m.get(r, c).clone()).collect()).collect();
    IntMatrix::from_big_rows(cols.len(), &rows).expect("rows")
}
