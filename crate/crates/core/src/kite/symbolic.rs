//! Kites over the three infinite frames, with finitely supported elements.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;

use crate::error::KiteError;
use crate::frame::SymbolicKind;
use crate::reslat::FiniteResLat;

/// An element of a symbolic kite: a level and the entries differing from `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseElement {
    level: usize,
    entries: BTreeMap<i64, usize>,
}

impl SparseElement {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn entries(&self) -> &BTreeMap<i64, usize> {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.keys().copied()
    }
}

impl fmt::Display for SparseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{}{{", self.level)?;
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}:{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicKite {
    lattice: FiniteResLat,
    kind: SymbolicKind,
}

impl SymbolicKite {
    pub fn new(lattice: FiniteResLat, kind: SymbolicKind) -> Self {
        Self { lattice, kind }
    }

    pub fn lattice(&self) -> &FiniteResLat {
        &self.lattice
    }

    pub fn kind(&self) -> SymbolicKind {
        self.kind
    }

    /// Builds an element, dropping entries equal to `e`.
    pub fn element(
        &self,
        level: usize,
        entries: impl IntoIterator<Item = (i64, usize)>,
    ) -> Result<SparseElement, KiteError> {
        let e = self.lattice.unit();
        let mut map = BTreeMap::new();
        for (i, v) in entries {
            if v >= self.lattice.size() {
                return Err(KiteError::ValueOutOfRange {
                    value: v,
                    size: self.lattice.size(),
                });
            }
            if !self.kind.contains(level, i) {
                return Err(KiteError::IndexNotInLevel { index: i, level });
            }
            if v != e {
                map.insert(i, v);
            }
        }
        Ok(SparseElement { level, entries: map })
    }

    pub fn unit_at(&self, level: usize) -> SparseElement {
        SparseElement {
            level,
            entries: BTreeMap::new(),
        }
    }

    pub fn top(&self) -> SparseElement {
        self.unit_at(0)
    }

    /// Entry at `i`; `e` off the support.
    pub fn entry(&self, x: &SparseElement, i: i64) -> usize {
        x.entries.get(&i).copied().unwrap_or(self.lattice.unit())
    }

    fn build(&self, level: usize, entries: impl Iterator<Item = (i64, usize)>) -> SparseElement {
        let e = self.lattice.unit();
        SparseElement {
            level,
            entries: entries.filter(|&(_, v)| v != e).collect(),
        }
    }

    pub fn leq(&self, x: &SparseElement, y: &SparseElement) -> bool {
        if x.level != y.level {
            return x.level > y.level;
        }
        let idx: BTreeSet<i64> = x.support().chain(y.support()).collect();
        idx.into_iter()
            .all(|i| self.lattice.leq(self.entry(x, i), self.entry(y, i)))
    }

    fn pointwise(&self, x: &SparseElement, y: &SparseElement, op: impl Fn(usize, usize) -> usize) -> SparseElement {
        let idx: BTreeSet<i64> = x.support().chain(y.support()).collect();
        self.build(
            x.level,
            idx.into_iter().map(|i| (i, op(self.entry(x, i), self.entry(y, i)))),
        )
    }

    pub fn meet(&self, x: &SparseElement, y: &SparseElement) -> SparseElement {
        match x.level.cmp(&y.level) {
            std::cmp::Ordering::Greater => x.clone(),
            std::cmp::Ordering::Less => y.clone(),
            std::cmp::Ordering::Equal => self.pointwise(x, y, |a, b| self.lattice.meet(a, b)),
        }
    }

    pub fn join(&self, x: &SparseElement, y: &SparseElement) -> SparseElement {
        match x.level.cmp(&y.level) {
            std::cmp::Ordering::Less => x.clone(),
            std::cmp::Ordering::Greater => y.clone(),
            std::cmp::Ordering::Equal => self.pointwise(x, y, |a, b| self.lattice.join(a, b)),
        }
    }

    /// Entry `x_{lambda^n(i)} * y_i` on `I_{m+n}`; only indices pulled back
    /// from the supports can differ from `e`.
    pub fn mul(&self, x: &SparseElement, y: &SparseElement) -> SparseElement {
        let (m, n) = (x.level, y.level);
        let level = m + n;
        let mut idx: BTreeSet<i64> = y.support().collect();
        for j in x.support() {
            if let Some(i) = self.pull_back(j, n) {
                idx.insert(i);
            }
        }
        let entries = idx.into_iter().filter(|&i| self.kind.contains(level, i)).map(|i| {
            let j = self.kind.lambda_iter(i, n).expect("I_{m+n} maps into I_m");
            (i, self.lattice.mul(self.entry(x, j), self.entry(y, i)))
        });
        self.build(level, entries)
    }

    /// `y ⑊ x` with `y` the divisor. Entries vanish off `supp(x)`.
    pub fn ldiv(&self, y: &SparseElement, x: &SparseElement) -> SparseElement {
        let (n, m) = (y.level, x.level);
        if n > m {
            return self.top();
        }
        let entries = x.entries.iter().map(|(&i, &v)| {
            let j = self.kind.lambda_iter(i, m - n).expect("I_m maps into I_n");
            (i, self.lattice.ldiv(self.entry(y, j), v))
        });
        self.build(m - n, entries)
    }

    /// `y ⫽ x` with `x` the divisor. Entries vanish off `lambda^m(supp(y))`.
    pub fn rdiv(&self, y: &SparseElement, x: &SparseElement) -> SparseElement {
        let (n, m) = (y.level, x.level);
        if m > n {
            return self.top();
        }
        let entries = y.entries.iter().map(|(&j, &v)| {
            let i = self.kind.lambda_iter(j, m).expect("I_n lies in the domain of lambda^m");
            (i, self.lattice.rdiv(v, self.entry(x, j)))
        });
        self.build(n - m, entries)
    }

    pub fn left_conjugate(&self, y: &SparseElement, x: &SparseElement) -> SparseElement {
        self.ldiv(y, &self.mul(x, y))
    }

    pub fn right_conjugate(&self, y: &SparseElement, x: &SparseElement) -> SparseElement {
        self.rdiv(&self.mul(y, x), y)
    }

    /// The unique `i` with `lambda^n(i) = j`, if any.
    fn pull_back(&self, j: i64, n: usize) -> Option<i64> {
        let mut i = j;
        for _ in 0..n {
            i = self.kind.lambda_inv(i)?;
        }
        Some(i)
    }

    /// Indices of `I_level` usable for sampled supports: `radius` indices
    /// from the start of the level set, or `-radius..=radius` on the integers.
    pub fn window(&self, level: usize, radius: usize) -> Vec<i64> {
        let r = radius as i64;
        match self.kind {
            SymbolicKind::ZShift => (-r..=r).collect(),
            SymbolicKind::NForward => (0..=r).collect(),
            SymbolicKind::NBackward => (level as i64..=level as i64 + r).collect(),
        }
    }

    /// Uniform level in `0..=depth`, then [`random_at`](Self::random_at).
    pub fn random<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        depth: usize,
        max_support: usize,
        radius: usize,
    ) -> SparseElement {
        let level = rng.gen_range(0..=depth);
        self.random_at(rng, level, max_support, radius)
    }

    /// Up to `max_support` window indices with uniformly drawn values.
    pub fn random_at<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        level: usize,
        max_support: usize,
        radius: usize,
    ) -> SparseElement {
        let window = self.window(level, radius);
        let k = rng.gen_range(0..=max_support.min(window.len()));
        let picks = rand::seq::index::sample(rng, window.len(), k);
        let entries: Vec<(i64, usize)> = picks
            .into_iter()
            .map(|p| (window[p], rng.gen_range(0..self.lattice.size())))
            .collect();
        self.build(level, entries.into_iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::FiniteFrame;
    use crate::kite::Kite;
    use crate::reslat::lukasiewicz_chain;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // NForward restricted to 0..k agrees with path(k) away from the cut-off
    // end, so sparse results must match dense ones on indices well below k.
    #[test]
    fn agrees_with_long_path() {
        let g = lukasiewicz_chain(3);
        let k = 24;
        let sk = SymbolicKite::new(g.clone(), SymbolicKind::NForward);
        let dk = Kite::new(g.clone(), FiniteFrame::path(k));
        let dense = |x: &SparseElement| {
            let vals = dk
                .frame()
                .level(x.level())
                .iter()
                .map(|&i| sk.entry(x, i as i64))
                .collect();
            dk.element(x.level(), vals).unwrap()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let x = sk.random(&mut rng, 3, 3, 5);
            let y = sk.random(&mut rng, 3, 3, 5);
            let cmp = |s: &SparseElement, d: &crate::kite::KiteElement| {
                s.level() == d.level()
                    && (0..12)
                        .all(|i| !dk.frame().in_level(d.level(), i) || sk.entry(s, i as i64) == dk.entry(d, i).unwrap())
            };
            let (dx, dy) = (dense(&x), dense(&y));
            assert!(cmp(&sk.mul(&x, &y), &dk.mul(&dx, &dy).unwrap()));
            assert!(cmp(&sk.ldiv(&x, &y), &dk.ldiv(&dx, &dy)));
            assert!(cmp(&sk.rdiv(&x, &y), &dk.rdiv(&dx, &dy)));
            assert!(cmp(&sk.meet(&x, &y), &dk.meet(&dx, &dy)));
            assert_eq!(sk.leq(&x, &y), dk.leq(&dx, &dy));
        }
    }

    #[test]
    fn adjointness_on_all_kinds() {
        let g = lukasiewicz_chain(3);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for kind in SymbolicKind::ALL {
            let sk = SymbolicKite::new(g.clone(), kind);
            for _ in 0..2000 {
                let x = sk.random(&mut rng, 2, 3, 3);
                let y = sk.random(&mut rng, 2, 3, 3);
                let z = sk.random(&mut rng, 3, 3, 3);
                let a = sk.leq(&sk.mul(&x, &y), &z);
                assert_eq!(a, sk.leq(&y, &sk.ldiv(&x, &z)), "{kind:?} {x} {y} {z}");
                assert_eq!(a, sk.leq(&x, &sk.rdiv(&z, &y)), "{kind:?} {x} {y} {z}");
            }
        }
    }

    #[test]
    fn construction() {
        let sk = SymbolicKite::new(lukasiewicz_chain(3), SymbolicKind::NBackward);
        assert!(sk.element(2, [(1, 0)]).is_err());
        let x = sk.element(2, [(2, 0), (3, 2)]).unwrap();
        assert_eq!(x.entries().len(), 1);
        assert_eq!(x.to_string(), "@2{2:0}");
        assert!(sk.element(0, [(0, 7)]).is_err());
        // lambda moves index 1 down to 0, so x's entry at 0 reappears at 1
        let x = sk.element(0, [(0, 1)]).unwrap();
        let y = sk.unit_at(1);
        assert_eq!(sk.mul(&x, &y), sk.element(1, [(1, 1)]).unwrap());
        // index 0 leaves the level set
        assert_eq!(sk.mul(&y, &x), sk.unit_at(1));
    }
}
