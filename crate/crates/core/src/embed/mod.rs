//! Infinite kites mapped into truncated products of finite kites.
//!
//! Each of the three infinite single-orbit frames has a family of finite
//! factor frames indexed by `k`. An element of the infinite kite goes to the
//! family of its restrictions; the products here keep the factors `k <= K`.

mod approx;
mod check;

pub use approx::{approx, check_congruence, search_witness, ApproxVerdict, ApproxWitness, CongruenceReport, LawTally};
pub use check::{calibrate_phi2, check_embedding, EmbedConfig, EmbeddingReport, FactorDiff, OpCheck};

use serde::Serialize;

use crate::error::EmbedError;
use crate::frame::{FiniteFrame, SymbolicKind};
use crate::kite::symbolic::{SparseElement, SymbolicKite};
use crate::kite::{Kite, KiteElement};
use crate::reslat::FiniteResLat;

/// The finite factor frames of a truncated product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FactorFamily {
    /// `path(k)` for `k >= 1`: `I^k_m = {0..k-m}`.
    ForwardPath,
    /// `cycle(2k+1)` for `k >= 0`, residues labeled `-k..=k`.
    Cycle,
    /// `backward_path(k)` for `k >= 1`: `I^k_m = {m..k}`.
    BackwardPath,
}

impl FactorFamily {
    pub fn first_factor(self) -> usize {
        match self {
            Self::Cycle => 0,
            _ => 1,
        }
    }

    pub fn frame(self, k: usize) -> FiniteFrame {
        match self {
            Self::ForwardPath => FiniteFrame::path(k),
            Self::Cycle => FiniteFrame::cycle(2 * k + 1),
            Self::BackwardPath => FiniteFrame::backward_path(k),
        }
    }

    /// The infinite frame this family approximates.
    pub fn source(self) -> SymbolicKind {
        match self {
            Self::ForwardPath => SymbolicKind::NForward,
            Self::Cycle => SymbolicKind::ZShift,
            Self::BackwardPath => SymbolicKind::NBackward,
        }
    }
}

/// Label of residue `r in -k..=k` in `cycle(2k+1)`.
pub fn residue_label(r: i64, k: usize) -> usize {
    r.rem_euclid(2 * k as i64 + 1) as usize
}

/// Representative in `-k..=k` of the residue labeled `label`.
pub fn residue_rep(label: usize, k: usize) -> i64 {
    let l = label as i64;
    if l > k as i64 {
        l - (2 * k as i64 + 1)
    } else {
        l
    }
}

/// Factors `first..=K` of one family over a fixed lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedProduct {
    family: FactorFamily,
    k_max: usize,
    factors: Vec<Kite>,
}

/// An element of a truncated product: one factor element per `k`, all at
/// the same level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedElement {
    level: usize,
    first: usize,
    factors: Vec<KiteElement>,
}

impl TruncatedElement {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn k_max(&self) -> usize {
        self.first + self.factors.len() - 1
    }

    pub fn factor(&self, k: usize) -> &KiteElement {
        &self.factors[k - self.first]
    }

    pub fn factors(&self) -> impl Iterator<Item = (usize, &KiteElement)> {
        self.factors.iter().enumerate().map(move |(p, f)| (p + self.first, f))
    }
}

impl std::fmt::Display for TruncatedElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.factors().map(|(k, x)| format!("{k}:{x}")).collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

impl TruncatedProduct {
    pub fn new(family: FactorFamily, lattice: FiniteResLat, k_max: usize) -> Self {
        let factors = (family.first_factor()..=k_max.max(family.first_factor()))
            .map(|k| Kite::new(lattice.clone(), family.frame(k)))
            .collect();
        Self { family, k_max, factors }
    }

    pub fn family(&self) -> FactorFamily {
        self.family
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn lattice(&self) -> &FiniteResLat {
        self.factors[0].lattice()
    }

    pub fn factor_kite(&self, k: usize) -> &Kite {
        &self.factors[k - self.family.first_factor()]
    }

    pub fn k_range(&self) -> std::ops::RangeInclusive<usize> {
        self.family.first_factor()..=self.k_max
    }

    /// Builds an element from per-factor values.
    pub fn element(&self, level: usize, values: Vec<Vec<usize>>) -> Result<TruncatedElement, EmbedError> {
        if values.len() != self.factors.len() {
            return Err(EmbedError::Mismatch);
        }
        let factors = self
            .factors
            .iter()
            .zip(values)
            .map(|(kite, v)| kite.element(level, v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedElement {
            level,
            first: self.family.first_factor(),
            factors,
        })
    }

    pub fn top(&self) -> TruncatedElement {
        TruncatedElement {
            level: 0,
            first: self.family.first_factor(),
            factors: self.factors.iter().map(Kite::top).collect(),
        }
    }

    fn check(&self, a: &TruncatedElement) -> Result<(), EmbedError> {
        if a.first != self.family.first_factor() || a.factors.len() != self.factors.len() {
            return Err(EmbedError::Mismatch);
        }
        Ok(())
    }

    fn lift(
        &self,
        a: &TruncatedElement,
        b: &TruncatedElement,
        op: impl Fn(&Kite, &KiteElement, &KiteElement) -> Result<KiteElement, EmbedError>,
    ) -> Result<TruncatedElement, EmbedError> {
        self.check(a)?;
        self.check(b)?;
        let factors = self
            .factors
            .iter()
            .zip(a.factors.iter().zip(&b.factors))
            .map(|(kite, (x, y))| op(kite, x, y))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedElement {
            level: factors[0].level(),
            first: a.first,
            factors,
        })
    }

    pub fn mul(&self, a: &TruncatedElement, b: &TruncatedElement) -> Result<TruncatedElement, EmbedError> {
        self.lift(a, b, |k, x, y| Ok(k.mul(x, y)?))
    }

    /// `b ⑊ a` with `b` the divisor, factorwise.
    pub fn ldiv(&self, b: &TruncatedElement, a: &TruncatedElement) -> Result<TruncatedElement, EmbedError> {
        self.lift(b, a, |k, y, x| Ok(k.ldiv(y, x)))
    }

    /// `b ⫽ a` with `a` the divisor, factorwise.
    pub fn rdiv(&self, b: &TruncatedElement, a: &TruncatedElement) -> Result<TruncatedElement, EmbedError> {
        self.lift(b, a, |k, y, x| Ok(k.rdiv(y, x)))
    }

    pub fn meet(&self, a: &TruncatedElement, b: &TruncatedElement) -> Result<TruncatedElement, EmbedError> {
        self.lift(a, b, |k, x, y| Ok(k.meet(x, y)))
    }

    pub fn join(&self, a: &TruncatedElement, b: &TruncatedElement) -> Result<TruncatedElement, EmbedError> {
        self.lift(a, b, |k, x, y| Ok(k.join(x, y)))
    }
}

/// Which of the three maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EmbeddingKind {
    Phi1,
    Phi2,
    Phi3,
}

impl EmbeddingKind {
    pub const ALL: [EmbeddingKind; 3] = [Self::Phi1, Self::Phi2, Self::Phi3];

    pub fn family(self) -> FactorFamily {
        match self {
            Self::Phi1 => FactorFamily::ForwardPath,
            Self::Phi2 => FactorFamily::Cycle,
            Self::Phi3 => FactorFamily::BackwardPath,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Phi1 => "phi1",
            Self::Phi2 => "phi2",
            Self::Phi3 => "phi3",
        }
    }
}

/// Default residue offset for the cyclic factors: the entry at residue `i`
/// is `x` at the representative of `i + offset`. All offsets tie under
/// [`calibrate_phi2`], since they differ by a rotation of each cycle.
pub const PHI2_OFFSET: i64 = 0;

/// A source kite together with the truncated product it maps into.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    kind: EmbeddingKind,
    source: SymbolicKite,
    target: TruncatedProduct,
    offset: i64,
}

impl Embedding {
    pub fn new(kind: EmbeddingKind, lattice: FiniteResLat, k_max: usize) -> Self {
        Self::with_offset(kind, lattice, k_max, PHI2_OFFSET)
    }

    pub fn with_offset(kind: EmbeddingKind, lattice: FiniteResLat, k_max: usize, offset: i64) -> Self {
        let family = kind.family();
        Self {
            kind,
            source: SymbolicKite::new(lattice.clone(), family.source()),
            target: TruncatedProduct::new(family, lattice, k_max),
            offset,
        }
    }

    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    pub fn source(&self) -> &SymbolicKite {
        &self.source
    }

    pub fn target(&self) -> &TruncatedProduct {
        &self.target
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// The family of restrictions of `x`.
    pub fn image(&self, x: &SparseElement) -> Result<TruncatedElement, EmbedError> {
        let k_max = self.target.k_max();
        let m = x.level();
        match self.kind {
            EmbeddingKind::Phi1 | EmbeddingKind::Phi3 if k_max < m => {
                return Err(EmbedError::TruncationTooSmall { k: k_max, level: m });
            }
            EmbeddingKind::Phi2 => {
                if let Some(i) = x.support().find(|i| i.unsigned_abs() as usize > k_max) {
                    return Err(EmbedError::SupportOutsideWindow {
                        index: i,
                        radius: k_max,
                    });
                }
            }
            _ => {}
        }
        let values = self
            .target
            .k_range()
            .map(|k| {
                let kite = self.target.factor_kite(k);
                kite.frame()
                    .level(m)
                    .iter()
                    .map(|&i| match self.kind {
                        EmbeddingKind::Phi2 => {
                            let r = residue_rep(residue_label(residue_rep(i, k) + self.offset, k), k);
                            self.source.entry(x, r)
                        }
                        _ => self.source.entry(x, i as i64),
                    })
                    .collect()
            })
            .collect();
        self.target.element(m, values)
    }
}

pub fn phi1(lattice: &FiniteResLat, x: &SparseElement, k_max: usize) -> Result<TruncatedElement, EmbedError> {
    Embedding::new(EmbeddingKind::Phi1, lattice.clone(), k_max).image(x)
}

pub fn phi2(lattice: &FiniteResLat, x: &SparseElement, k_max: usize) -> Result<TruncatedElement, EmbedError> {
    Embedding::new(EmbeddingKind::Phi2, lattice.clone(), k_max).image(x)
}

pub fn phi3(lattice: &FiniteResLat, x: &SparseElement, k_max: usize) -> Result<TruncatedElement, EmbedError> {
    Embedding::new(EmbeddingKind::Phi3, lattice.clone(), k_max).image(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reslat::{lukasiewicz_chain, two_chain};

    fn prefix_oracle(x: &[(i64, usize)], e: usize, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi)
            .map(|i| x.iter().find(|p| p.0 == i).map_or(e, |p| p.1))
            .collect()
    }

    #[test]
    fn phi1_is_prefix_slicing() {
        let g = two_chain();
        let sk = SymbolicKite::new(g.clone(), SymbolicKind::NForward);
        let x = sk.element(1, [(0, 0)]).unwrap();
        let img = phi1(&g, &x, 3).unwrap();
        let got: Vec<&[usize]> = img.factors().map(|(_, f)| f.values()).collect();
        assert_eq!(got, vec![&[0][..], &[0, 1], &[0, 1, 1]]);
        for (k, f) in img.factors() {
            assert_eq!(f.values(), prefix_oracle(&[(0, 0)], 1, 0, k as i64 - 1));
        }
    }

    #[test]
    fn tops_and_empty_levels() {
        let g = lukasiewicz_chain(3);
        for kind in EmbeddingKind::ALL {
            let emb = Embedding::new(kind, g.clone(), 5);
            assert_eq!(emb.image(&emb.source().top()).unwrap(), emb.target().top());
        }
        let x = SymbolicKite::new(g.clone(), SymbolicKind::NForward).unit_at(4);
        let img = phi1(&g, &x, 5).unwrap();
        for k in 1..4 {
            assert!(img.factor(k).values().is_empty());
        }
        assert_eq!(img.factor(5).values().len(), 2);
        assert_eq!(phi3(&g, &x, 3), Err(EmbedError::TruncationTooSmall { k: 3, level: 4 }));
    }

    #[test]
    fn phi2_window() {
        let g = two_chain();
        let sk = SymbolicKite::new(g.clone(), SymbolicKind::ZShift);
        let x = sk.element(0, [(-1, 0), (1, 0)]).unwrap();
        let img = phi2(&g, &x, 2).unwrap();
        // factor 0 is the single residue 0; factor 1 holds residues -1, 0, 1
        assert_eq!(img.factor(0).values(), &[1]);
        assert_eq!(img.factor(1).values(), &[1, 0, 0]);
        assert_eq!(img.factor(2).values(), &[1, 0, 1, 1, 0]);
        let far = sk.element(0, [(3, 0)]).unwrap();
        assert_eq!(
            phi2(&g, &far, 2),
            Err(EmbedError::SupportOutsideWindow { index: 3, radius: 2 })
        );
    }

    #[test]
    fn residues_round_trip() {
        for k in 0..5 {
            for r in -(k as i64)..=k as i64 {
                assert_eq!(residue_rep(residue_label(r, k), k), r);
            }
        }
    }
}
