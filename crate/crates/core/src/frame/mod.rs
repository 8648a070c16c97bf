//! Frames `(I0, I1, lambda)` with `lambda : I1 -> I0` injective.
//!
//! Finite frames carry explicit tables over `0..m`; the three infinite
//! frames that occur for subdirectly irreducible kites are closed-form
//! [`SymbolicKind`]s.

mod builtin;
mod canon;
mod classify;
mod enumerate;
pub mod io;

pub use builtin::{builtin_frame, BUILTIN_FRAME_NAMES};
pub use canon::frame_isomorphic;
pub use classify::{
    classify, classify_finite, infinite_case, level_cover_holds, set_differences, FrameClassification, FrameTag,
    FrameWitness, InfiniteCase, NotSiReason,
};
pub use enumerate::{enumerate_frames, enumerate_labeled_frames};

use serde::Serialize;

use crate::error::FrameError;

/// The infinite frames, all with a single lambda-orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SymbolicKind {
    /// `I0 = I1 = Z`, `lambda(i) = i + 1`
    ZShift,
    /// `I0 = I1 = N`, `lambda(i) = i + 1`
    NForward,
    /// `I0 = N`, `I1 = N \ {0}`, `lambda(i) = i - 1`
    NBackward,
}

impl SymbolicKind {
    pub const ALL: [SymbolicKind; 3] = [Self::ZShift, Self::NForward, Self::NBackward];

    pub fn name(self) -> &'static str {
        match self {
            Self::ZShift => "z-shift",
            Self::NForward => "n-forward",
            Self::NBackward => "n-backward",
        }
    }

    /// `i in I_n`
    pub fn contains(self, n: usize, i: i64) -> bool {
        match self {
            Self::ZShift => true,
            Self::NForward => i >= 0,
            Self::NBackward => i >= n as i64,
        }
    }

    pub fn lambda(self, i: i64) -> Option<i64> {
        match self {
            Self::ZShift => Some(i + 1),
            Self::NForward => (i >= 0).then_some(i + 1),
            Self::NBackward => (i >= 1).then_some(i - 1),
        }
    }

    pub fn lambda_inv(self, j: i64) -> Option<i64> {
        match self {
            Self::ZShift => Some(j - 1),
            Self::NForward => (j >= 1).then_some(j - 1),
            Self::NBackward => (j >= 0).then_some(j + 1),
        }
    }

    pub fn level_set(self, n: usize) -> LevelSet {
        match self {
            Self::ZShift => LevelSet::Integers,
            Self::NForward => LevelSet::From(0),
            Self::NBackward => LevelSet::From(n as i64),
        }
    }

    /// `lambda^k(i)`, or `None` when some step is undefined.
    pub fn lambda_iter(self, i: i64, k: usize) -> Option<i64> {
        match self {
            Self::ZShift => Some(i + k as i64),
            Self::NForward => (i >= 0).then_some(i + k as i64),
            Self::NBackward => (i >= k as i64).then_some(i - k as i64),
        }
    }
}

/// A level set `I_n`, explicit for finite frames and closed-form otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LevelSet {
    Finite(Vec<usize>),
    Integers,
    /// `{k, k+1, ...}`
    From(i64),
}

impl LevelSet {
    pub fn contains(&self, i: i64) -> bool {
        match self {
            Self::Finite(v) => i >= 0 && v.binary_search(&(i as usize)).is_ok(),
            Self::Integers => true,
            Self::From(k) => i >= *k,
        }
    }
}

/// A finite frame on `I0 = 0..m`.
///
/// Level sets are computed eagerly on construction; they are nested and
/// stabilize after at most `m + 1` steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteFrame {
    lambda: Vec<Option<usize>>,
    preimage: Vec<Option<usize>>,
    /// `levels[n]` for `n < levels.len()`; the last entry repeats forever.
    levels: Vec<Vec<usize>>,
    /// Largest `n` with `i in I_n`, `None` when unbounded.
    height: Vec<Option<usize>>,
}

impl FiniteFrame {
    /// Builds a frame on `0..m` from the graph of `lambda`; `I1` is its domain.
    pub fn new(m: usize, pairs: &[(usize, usize)]) -> Result<Self, FrameError> {
        let mut lambda = vec![None; m];
        let mut preimage: Vec<Option<usize>> = vec![None; m];
        for &(i, j) in pairs {
            for idx in [i, j] {
                if idx >= m {
                    return Err(FrameError::IndexOutOfRange { index: idx, size: m });
                }
            }
            if lambda[i].is_some() {
                return Err(FrameError::DuplicateDomain(i));
            }
            if let Some(first) = preimage[j] {
                return Err(FrameError::NotInjective {
                    first: first.min(i),
                    second: first.max(i),
                    target: j,
                });
            }
            lambda[i] = Some(j);
            preimage[j] = Some(i);
        }
        Ok(Self::from_tables(lambda, preimage))
    }

    /// Like [`new`](Self::new) but also checks that the domain is exactly `i1`.
    pub fn with_domain(m: usize, i1: &[usize], pairs: &[(usize, usize)]) -> Result<Self, FrameError> {
        let f = Self::new(m, pairs)?;
        let mut seen = vec![false; m];
        for &i in i1 {
            if i >= m {
                return Err(FrameError::IndexOutOfRange { index: i, size: m });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(FrameError::DuplicateDomain(i));
            }
        }
        if let Some(i) = (0..m).find(|&i| seen[i] != f.lambda[i].is_some()) {
            return Err(FrameError::DomainMismatch(i));
        }
        Ok(f)
    }

    fn from_tables(lambda: Vec<Option<usize>>, preimage: Vec<Option<usize>>) -> Self {
        let m = lambda.len();
        let mut levels = vec![(0..m).collect::<Vec<usize>>()];
        loop {
            let last = levels.last().unwrap();
            let mut member = vec![false; m];
            for &i in last {
                member[i] = true;
            }
            let next: Vec<usize> = last
                .iter()
                .copied()
                .filter(|&i| lambda[i].is_some_and(|j| member[j]))
                .collect();
            if next.len() == last.len() {
                break;
            }
            levels.push(next);
        }
        let stable = levels.last().unwrap();
        let height = (0..m)
            .map(|i| {
                if stable.binary_search(&i).is_ok() {
                    None
                } else {
                    Some(levels.iter().rposition(|l| l.binary_search(&i).is_ok()).unwrap())
                }
            })
            .collect();
        Self {
            lambda,
            preimage,
            levels,
            height,
        }
    }

    pub fn empty() -> Self {
        Self::new(0, &[]).unwrap()
    }

    /// `({0}, {0}, id)`
    pub fn singleton_loop() -> Self {
        Self::new(1, &[(0, 0)]).unwrap()
    }

    /// `({0}, {}, {})`
    pub fn singleton_tail() -> Self {
        Self::new(1, &[]).unwrap()
    }

    /// `I0 = I1 = 0..n`, `lambda(i) = i + 1 mod n`.
    pub fn cycle(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &pairs).unwrap()
    }

    /// `I0 = 0..=n`, `I1 = 0..n`, `lambda(i) = i + 1`.
    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
        Self::new(n + 1, &pairs).unwrap()
    }

    /// `I0 = 0..=n`, `I1 = 1..=n`, `lambda(i) = i - 1`; isomorphic to [`path`](Self::path).
    pub fn backward_path(n: usize) -> Self {
        let pairs: Vec<_> = (1..=n).map(|i| (i, i - 1)).collect();
        Self::new(n + 1, &pairs).unwrap()
    }

    /// `I0 = I1 = 0..m` with `lambda = id`.
    pub fn identity(m: usize) -> Self {
        let pairs: Vec<_> = (0..m).map(|i| (i, i)).collect();
        Self::new(m, &pairs).unwrap()
    }

    /// Disjoint union; the labels of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let off = self.size();
        let pairs: Vec<_> = self
            .pairs()
            .into_iter()
            .chain(other.pairs().into_iter().map(|(i, j)| (i + off, j + off)))
            .collect();
        Self::new(off + other.size(), &pairs).unwrap()
    }

    /// `|I0|`
    pub fn size(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self, i: usize) -> Option<usize> {
        self.lambda.get(i).copied().flatten()
    }

    pub fn lambda_inv(&self, j: usize) -> Option<usize> {
        self.preimage.get(j).copied().flatten()
    }

    pub fn lambda_table(&self) -> &[Option<usize>] {
        &self.lambda
    }

    /// The graph of `lambda`, sorted by argument.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.lambda
            .iter()
            .enumerate()
            .filter_map(|(i, l)| l.map(|j| (i, j)))
            .collect()
    }

    /// `I1`, sorted.
    pub fn i1(&self) -> Vec<usize> {
        self.level(1).to_vec()
    }

    /// `lambda(I1)`, sorted.
    pub fn image(&self) -> Vec<usize> {
        (0..self.size()).filter(|&j| self.preimage[j].is_some()).collect()
    }

    /// `I_n` in ascending order.
    pub fn level(&self, n: usize) -> &[usize] {
        &self.levels[n.min(self.levels.len() - 1)]
    }

    pub fn level_set(&self, n: usize) -> LevelSet {
        LevelSet::Finite(self.level(n).to_vec())
    }

    /// First `n` from which `I_n` no longer changes.
    pub fn stable_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn in_level(&self, n: usize, i: usize) -> bool {
        i < self.size() && self.height[i].is_none_or(|h| n <= h)
    }

    /// Largest `n` with `i in I_n`, `None` if `i` lies in every level set.
    pub fn height(&self, i: usize) -> Option<usize> {
        self.height[i]
    }

    /// Position of `i` within the ascending listing of `I_n`.
    pub fn position(&self, n: usize, i: usize) -> Option<usize> {
        self.level(n).binary_search(&i).ok()
    }

    /// `lambda^k(i)` when every step is defined.
    pub fn lambda_iter(&self, mut i: usize, k: usize) -> Option<usize> {
        for _ in 0..k {
            i = self.lambda(i)?;
        }
        Some(i)
    }

    /// `lambda^(m-n)(i)` for `i in I_m`, `n <= m`; lands in `I_n`.
    pub fn lambda_power(&self, m: usize, n: usize, i: usize) -> Result<usize, FrameError> {
        if n > m {
            return Err(FrameError::LevelOrder { m, n });
        }
        if !self.in_level(m, i) {
            return Err(FrameError::NotInLevel {
                index: i as i64,
                level: m,
            });
        }
        Ok(self.lambda_iter(i, m - n).expect("I_m is closed under m applications"))
    }

    /// `lambda^m(i) = j` or `lambda^m(j) = i` for some `m >= 0`.
    pub fn connected(&self, i: usize, j: usize) -> bool {
        self.reaches(i, j) || self.reaches(j, i)
    }

    fn reaches(&self, from: usize, to: usize) -> bool {
        let mut cur = from;
        for _ in 0..=self.size() {
            if cur == to {
                return true;
            }
            match self.lambda(cur) {
                Some(next) => cur = next,
                None => return false,
            }
        }
        false
    }

    /// All defined forward and backward iterates of `i`, sorted.
    pub fn orbit(&self, i: usize) -> Vec<usize> {
        let mut out = vec![i];
        let mut cur = i;
        while let Some(next) = self.lambda(cur) {
            if next == i {
                break;
            }
            out.push(next);
            cur = next;
        }
        cur = i;
        while let Some(prev) = self.lambda_inv(cur) {
            if out.contains(&prev) {
                break;
            }
            out.push(prev);
            cur = prev;
        }
        out.sort_unstable();
        out
    }

    /// Weakly connected components of the graph of `lambda`, each sorted,
    /// listed by least element.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for i in 0..self.size() {
            if !seen[i] {
                let orbit = self.orbit(i);
                for &j in &orbit {
                    seen[j] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    /// True when `c0` is closed under `lambda` and its inverse, i.e. a union
    /// of components.
    pub fn is_component_union(&self, c0: &[usize]) -> bool {
        let mut member = vec![false; self.size()];
        for &i in c0 {
            match member.get_mut(i) {
                Some(m) => *m = true,
                None => return false,
            }
        }
        (0..self.size()).all(|i| {
            !member[i] || (self.lambda(i).is_none_or(|j| member[j]) && self.lambda_inv(i).is_none_or(|j| member[j]))
        })
    }

    /// Restriction to a component (or union of components), relabeled in
    /// ascending order. Returns the frame and the original labels.
    pub fn restrict_to_component(&self, c0: &[usize]) -> Result<(FiniteFrame, Vec<usize>), FrameError> {
        let mut labels = c0.to_vec();
        labels.sort_unstable();
        labels.dedup();
        if labels.is_empty() || !self.is_component_union(&labels) {
            return Err(FrameError::NotAComponent(c0.to_vec()));
        }
        let new_of = |i: usize| labels.binary_search(&i).unwrap();
        let pairs: Vec<_> = labels
            .iter()
            .filter_map(|&i| self.lambda(i).map(|j| (new_of(i), new_of(j))))
            .collect();
        Ok((FiniteFrame::new(labels.len(), &pairs)?, labels))
    }

    /// The frame obtained by renaming `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let pairs: Vec<_> = self.pairs().into_iter().map(|(i, j)| (perm[i], perm[j])).collect();
        Self::new(self.size(), &pairs).expect("relabeling by a permutation")
    }
}

/// Either a finite frame or one of the symbolic infinite frames.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Frame {
    Finite(FiniteFrame),
    Symbolic(SymbolicKind),
}

impl Frame {
    pub fn as_finite(&self) -> Result<&FiniteFrame, FrameError> {
        match self {
            Self::Finite(f) => Ok(f),
            Self::Symbolic(_) => Err(FrameError::NotFinite),
        }
    }

    pub fn level_set(&self, n: usize) -> LevelSet {
        match self {
            Self::Finite(f) => f.level_set(n),
            Self::Symbolic(k) => k.level_set(n),
        }
    }

    pub fn contains(&self, n: usize, i: i64) -> bool {
        match self {
            Self::Finite(f) => i >= 0 && f.in_level(n, i as usize),
            Self::Symbolic(k) => k.contains(n, i),
        }
    }

    pub fn lambda(&self, i: i64) -> Option<i64> {
        match self {
            Self::Finite(f) => usize::try_from(i).ok().and_then(|i| f.lambda(i)).map(|j| j as i64),
            Self::Symbolic(k) => k.lambda(i),
        }
    }

    pub fn lambda_inv(&self, j: i64) -> Option<i64> {
        match self {
            Self::Finite(f) => usize::try_from(j).ok().and_then(|j| f.lambda_inv(j)).map(|i| i as i64),
            Self::Symbolic(k) => k.lambda_inv(j),
        }
    }

    /// `i in lambda^m(I_n)`
    pub fn in_image_power(&self, m: usize, n: usize, i: i64) -> bool {
        let mut j = i;
        for _ in 0..m {
            match self.lambda_inv(j) {
                Some(p) => j = p,
                None => return false,
            }
        }
        self.contains(n, j)
    }

    pub fn lambda_power(&self, m: usize, n: usize, i: i64) -> Result<i64, FrameError> {
        if n > m {
            return Err(FrameError::LevelOrder { m, n });
        }
        if !self.contains(m, i) {
            return Err(FrameError::NotInLevel { index: i, level: m });
        }
        match self {
            Self::Finite(f) => f.lambda_power(m, n, i as usize).map(|j| j as i64),
            Self::Symbolic(k) => Ok(k.lambda_iter(i, m - n).expect("closed-form level sets")),
        }
    }

    pub fn connected(&self, i: i64, j: i64) -> bool {
        match self {
            Self::Finite(f) => {
                let (Ok(i), Ok(j)) = (usize::try_from(i), usize::try_from(j)) else {
                    return false;
                };
                i < f.size() && j < f.size() && f.connected(i, j)
            }
            // every index of a symbolic frame lies on the single lambda-chain
            Self::Symbolic(k) => k.contains(0, i) && k.contains(0, j),
        }
    }

    /// The orbit of `i`; for symbolic frames this is all of `I0`.
    pub fn orbit(&self, i: i64) -> LevelSet {
        match self {
            Self::Finite(f) => LevelSet::Finite(f.orbit(i as usize)),
            Self::Symbolic(k) => k.level_set(0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_one() -> FiniteFrame {
        FiniteFrame::path(3)
    }

    #[test]
    fn level_sets_of_path_example() {
        let f = example_one();
        assert_eq!(f.level(0), &[0, 1, 2, 3]);
        assert_eq!(f.level(1), &[0, 1, 2]);
        assert_eq!(f.level(2), &[0, 1]);
        assert_eq!(f.level(3), &[0]);
        assert!(f.level(4).is_empty());
        assert!(f.level(40).is_empty());
    }

    #[test]
    fn level_sets_identity_and_empty() {
        let f = FiniteFrame::identity(4);
        for n in 0..6 {
            assert_eq!(f.level(n), &[0, 1, 2, 3]);
        }
        let e = FiniteFrame::empty();
        assert!(e.level(0).is_empty() && e.level(3).is_empty());
    }

    #[test]
    fn level_sets_nested_and_lambda_descends() {
        let frames = [
            example_one(),
            FiniteFrame::cycle(4),
            FiniteFrame::identity(3),
            FiniteFrame::singleton_tail(),
            FiniteFrame::cycle(2).disjoint_union(&FiniteFrame::path(2)),
        ];
        for f in frames {
            for n in 0..12 {
                let next = f.level(n + 1);
                assert!(next.iter().all(|i| f.level(n).contains(i)));
                if n >= 1 {
                    assert!(f.level(n).iter().all(|&i| f.in_level(n - 1, f.lambda(i).unwrap())));
                }
            }
        }
    }

    #[test]
    fn lambda_powers() {
        let f = example_one();
        assert_eq!(f.lambda_power(2, 0, 0), Ok(2));
        assert_eq!(f.lambda_power(2, 2, 1), Ok(1));
        assert!(matches!(f.lambda_power(2, 0, 2), Err(FrameError::NotInLevel { .. })));
        assert!(matches!(f.lambda_power(1, 2, 0), Err(FrameError::LevelOrder { .. })));
        let z = Frame::Symbolic(SymbolicKind::ZShift);
        assert_eq!(z.lambda_power(3, 0, -1), Ok(2));
        let b = Frame::Symbolic(SymbolicKind::NBackward);
        assert_eq!(b.lambda_power(3, 1, 5), Ok(3));
        assert!(b.lambda_power(3, 0, 2).is_err());
    }

    #[test]
    fn connectedness_and_orbits() {
        let id = FiniteFrame::identity(4);
        assert!(id.connected(2, 2));
        assert!(!id.connected(0, 1));
        assert_eq!(id.orbit(2), vec![2]);
        let c4 = FiniteFrame::cycle(4);
        assert!(c4.connected(0, 3));
        assert_eq!(c4.lambda_iter(0, 3), Some(3));
        assert_eq!(c4.orbit(1), vec![0, 1, 2, 3]);
        let p = FiniteFrame::path(1);
        assert_eq!(p.orbit(0), vec![0, 1]);
        assert_eq!(p.orbit(1), vec![0, 1]);
    }

    #[test]
    fn components() {
        assert_eq!(FiniteFrame::identity(4).connected_components().len(), 4);
        assert_eq!(example_one().connected_components(), vec![vec![0, 1, 2, 3]]);
        let u = FiniteFrame::cycle(2).disjoint_union(&FiniteFrame::cycle(3));
        assert_eq!(u.connected_components(), vec![vec![0, 1], vec![2, 3, 4]]);
    }

    #[test]
    fn restriction() {
        let id = FiniteFrame::identity(4);
        let (r, labels) = id.restrict_to_component(&[0]).unwrap();
        assert_eq!(r, FiniteFrame::singleton_loop());
        assert_eq!(labels, vec![0]);
        let u = FiniteFrame::cycle(2).disjoint_union(&FiniteFrame::cycle(3));
        assert_eq!(u.restrict_to_component(&[2, 3, 4]).unwrap().0, FiniteFrame::cycle(3));
        assert!(matches!(
            u.restrict_to_component(&[2, 3]),
            Err(FrameError::NotAComponent(_))
        ));
        let p = example_one();
        assert_eq!(p.restrict_to_component(&[0, 1, 2, 3]).unwrap().0, p);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            FiniteFrame::new(3, &[(0, 2), (1, 2)]),
            Err(FrameError::NotInjective {
                first: 0,
                second: 1,
                target: 2
            })
        ));
        assert!(matches!(
            FiniteFrame::new(2, &[(0, 5)]),
            Err(FrameError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            FiniteFrame::new(2, &[(0, 1), (0, 0)]),
            Err(FrameError::DuplicateDomain(0))
        ));
        assert!(matches!(
            FiniteFrame::with_domain(3, &[0, 1], &[(0, 1)]),
            Err(FrameError::DomainMismatch(1))
        ));
    }

    #[test]
    fn symbolic_level_sets() {
        assert_eq!(SymbolicKind::NBackward.level_set(3), LevelSet::From(3));
        assert!(SymbolicKind::ZShift.contains(7, -100));
        assert!(!SymbolicKind::NForward.contains(0, -1));
        for k in SymbolicKind::ALL {
            for i in -5..5 {
                if let Some(j) = k.lambda(i) {
                    assert_eq!(k.lambda_inv(j), Some(i));
                }
            }
        }
    }

    #[test]
    fn heights() {
        let f = example_one();
        assert_eq!(f.height(0), Some(3));
        assert_eq!(f.height(3), Some(0));
        assert_eq!(FiniteFrame::cycle(3).height(1), None);
    }
}
