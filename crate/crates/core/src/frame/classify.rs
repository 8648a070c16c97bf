use serde::Serialize;

use super::{FiniteFrame, Frame, SymbolicKind};

/// Why a frame cannot carry a subdirectly irreducible kite over a
/// non-trivial lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NotSiReason {
    /// `index` lies outside `I1 u lambda(I1)`.
    Uncovered { index: usize },
    /// The least pair of indices that are not connected.
    Disconnected { first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FrameTag {
    /// The lattice is trivial: every kite is the negative cone of the integers.
    TrivialG,
    Empty,
    SingletonLoop,
    SingletonTail,
    /// `lambda(i) = i + 1 mod n`, `n >= 2`
    Cycle(usize),
    /// `I0 = 0..=n`, `I1 = 0..n`, `lambda(i) = i + 1`, `n >= 1`
    Path(usize),
    ZShift,
    NForward,
    NBackward,
    NotSi(NotSiReason),
}

impl FrameTag {
    /// True for the shapes that carry a subdirectly irreducible kite.
    pub fn is_si_family(&self) -> bool {
        !matches!(self, Self::NotSi(_) | Self::TrivialG)
    }

    /// The canonical frame of the family.
    pub fn representative(&self) -> Option<Frame> {
        Some(match *self {
            Self::Empty => Frame::Finite(FiniteFrame::empty()),
            Self::SingletonLoop => Frame::Finite(FiniteFrame::singleton_loop()),
            Self::SingletonTail => Frame::Finite(FiniteFrame::singleton_tail()),
            Self::Cycle(n) => Frame::Finite(FiniteFrame::cycle(n)),
            Self::Path(n) => Frame::Finite(FiniteFrame::path(n)),
            Self::ZShift => Frame::Symbolic(SymbolicKind::ZShift),
            Self::NForward => Frame::Symbolic(SymbolicKind::NForward),
            Self::NBackward => Frame::Symbolic(SymbolicKind::NBackward),
            Self::TrivialG | Self::NotSi(_) => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FrameWitness {
    /// Relabeling (old to new) onto [`FrameTag::representative`].
    Relabeling(Vec<usize>),
    /// Symbolic frames are their own representatives.
    Identity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrameClassification {
    pub tag: FrameTag,
    /// Present exactly when the tag is an SI family.
    pub witness: Option<FrameWitness>,
}

pub fn classify(frame: &Frame, g_trivial: bool) -> FrameClassification {
    match frame {
        Frame::Finite(f) => classify_finite(f, g_trivial),
        Frame::Symbolic(_) if g_trivial => FrameClassification {
            tag: FrameTag::TrivialG,
            witness: None,
        },
        Frame::Symbolic(k) => FrameClassification {
            tag: match k {
                SymbolicKind::ZShift => FrameTag::ZShift,
                SymbolicKind::NForward => FrameTag::NForward,
                SymbolicKind::NBackward => FrameTag::NBackward,
            },
            witness: Some(FrameWitness::Identity),
        },
    }
}

/// Classifies a finite frame for a kite over a lattice that is trivial or not.
///
/// Order of checks: trivial lattice, empty frame, coverage
/// `I0 = I1 u lambda(I1)` (skipped when `I1` is empty, where the singleton
/// tail is still admissible), pairwise connectedness, then shape.
pub fn classify_finite(f: &FiniteFrame, g_trivial: bool) -> FrameClassification {
    let not_si = |reason| FrameClassification {
        tag: FrameTag::NotSi(reason),
        witness: None,
    };
    if g_trivial {
        return FrameClassification {
            tag: FrameTag::TrivialG,
            witness: None,
        };
    }
    let m = f.size();
    if m > 0 && !f.i1().is_empty() {
        if let Some(index) = (0..m).find(|&i| f.lambda(i).is_none() && f.lambda_inv(i).is_none()) {
            return not_si(NotSiReason::Uncovered { index });
        }
    }
    for i in 0..m {
        if let Some(j) = (i + 1..m).find(|&j| !f.connected(i, j)) {
            return not_si(NotSiReason::Disconnected { first: i, second: j });
        }
    }
    let tag = match m {
        0 => FrameTag::Empty,
        1 if f.lambda(0).is_some() => FrameTag::SingletonLoop,
        1 => FrameTag::SingletonTail,
        _ if f.i1().len() == m => FrameTag::Cycle(m),
        _ => FrameTag::Path(m - 1),
    };
    let (canon, perm) = f.canonical();
    debug_assert_eq!(Some(Frame::Finite(canon)), tag.representative());
    FrameClassification {
        tag,
        witness: Some(FrameWitness::Relabeling(perm)),
    }
}

/// How `I_n` relates to `lambda(I_n)` inside `I_{n-1}` on an infinite frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InfiniteCase {
    /// `I_n = I_{n-1}` and `lambda` is a bijection of it.
    Bijective,
    /// `lambda` is bijective onto `I_{n-1}` and `lambda(I_n) \ I_n` is a single point.
    ExtraImage,
    /// `I_n = I_{n-1}` and `I_n \ lambda(I_n)` is a single point.
    ExtraDomain,
    /// Both differences are single points; excluded for SI kites.
    BothDefects,
    Other,
}

/// `(I_n \ lambda(I_n), lambda(I_n) \ I_n)` for a symbolic frame. The sets
/// are exact: the closed forms differ only near `0` and `n`, and the scan
/// covers `[-(n + 16), n + 16]`.
pub fn set_differences(kind: SymbolicKind, n: usize) -> (Vec<i64>, Vec<i64>) {
    let w = n as i64 + 16;
    let in_image = |i: i64| kind.lambda_inv(i).is_some_and(|p| kind.contains(n, p));
    let dom: Vec<i64> = (-w..=w).filter(|&i| kind.contains(n, i) && !in_image(i)).collect();
    let img: Vec<i64> = (-w..=w).filter(|&i| in_image(i) && !kind.contains(n, i)).collect();
    (dom, img)
}

/// Case analysis at level `n >= 1` (replacing `I1` by `I_n` and `I0` by `I_{n-1}`).
pub fn infinite_case(kind: SymbolicKind, n: usize) -> InfiniteCase {
    assert!(n >= 1);
    let (dom, img) = set_differences(kind, n);
    let w = n as i64 + 16;
    let same_as_prev = (-w..=w).all(|i| kind.contains(n, i) == kind.contains(n - 1, i));
    let onto_prev =
        (-w..=w).all(|i| kind.contains(n - 1, i) == kind.lambda_inv(i).is_some_and(|p| kind.contains(n, p)));
    match (dom.len(), img.len()) {
        (1, 1) => InfiniteCase::BothDefects,
        (0, 0) if same_as_prev => InfiniteCase::Bijective,
        (0, 1) if onto_prev => InfiniteCase::ExtraImage,
        (1, 0) if same_as_prev => InfiniteCase::ExtraDomain,
        _ => InfiniteCase::Other,
    }
}

/// `I_n = I_{n+1} u lambda(I_{n+1})`, exactly for finite frames and on the
/// window `[-window, window]` for symbolic ones.
pub fn level_cover_holds(frame: &Frame, n: usize, window: i64) -> bool {
    let check = |i: i64| {
        let covered = frame.contains(n + 1, i)
            || match frame {
                Frame::Finite(f) => usize::try_from(i)
                    .ok()
                    .and_then(|i| f.lambda_inv(i))
                    .is_some_and(|p| f.in_level(n + 1, p)),
                Frame::Symbolic(k) => k.lambda_inv(i).is_some_and(|p| k.contains(n + 1, p)),
            };
        frame.contains(n, i) == covered
    };
    match frame {
        Frame::Finite(f) => (0..f.size() as i64).all(check),
        Frame::Symbolic(_) => (-window..=window).all(check),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_shapes() {
        let tag = |f: &FiniteFrame| classify_finite(f, false).tag;
        assert_eq!(tag(&FiniteFrame::singleton_loop()), FrameTag::SingletonLoop);
        assert_eq!(tag(&FiniteFrame::singleton_tail()), FrameTag::SingletonTail);
        assert_eq!(tag(&FiniteFrame::empty()), FrameTag::Empty);
        assert_eq!(tag(&FiniteFrame::cycle(4)), FrameTag::Cycle(4));
        assert_eq!(tag(&FiniteFrame::path(3)), FrameTag::Path(3));
        assert_eq!(tag(&FiniteFrame::backward_path(2)), FrameTag::Path(2));
        assert_eq!(
            tag(&FiniteFrame::identity(4)),
            FrameTag::NotSi(NotSiReason::Disconnected { first: 0, second: 1 })
        );
        let with_isolated = FiniteFrame::new(3, &[(0, 1)]).unwrap();
        assert_eq!(
            tag(&with_isolated),
            FrameTag::NotSi(NotSiReason::Uncovered { index: 2 })
        );
        assert_eq!(
            tag(&FiniteFrame::new(2, &[]).unwrap()),
            FrameTag::NotSi(NotSiReason::Disconnected { first: 0, second: 1 })
        );
        assert_eq!(classify_finite(&FiniteFrame::identity(4), true).tag, FrameTag::TrivialG);
    }

    #[test]
    fn witnesses_validate() {
        let f = FiniteFrame::new(4, &[(3, 1), (1, 0), (0, 2), (2, 3)]).unwrap();
        let c = classify_finite(&f, false);
        assert_eq!(c.tag, FrameTag::Cycle(4));
        let Some(FrameWitness::Relabeling(perm)) = c.witness else {
            panic!()
        };
        let Some(Frame::Finite(rep)) = c.tag.representative() else {
            panic!()
        };
        assert!(f.is_isomorphism(&rep, &perm));
    }

    #[test]
    fn symbolic_tags() {
        assert_eq!(
            classify(&Frame::Symbolic(SymbolicKind::ZShift), false).tag,
            FrameTag::ZShift
        );
        assert_eq!(
            classify(&Frame::Symbolic(SymbolicKind::NBackward), false).witness,
            Some(FrameWitness::Identity)
        );
    }

    #[test]
    fn infinite_cases() {
        for n in 1..=10 {
            assert_eq!(infinite_case(SymbolicKind::ZShift, n), InfiniteCase::Bijective);
            assert_eq!(infinite_case(SymbolicKind::NBackward, n), InfiniteCase::ExtraImage);
            assert_eq!(infinite_case(SymbolicKind::NForward, n), InfiniteCase::ExtraDomain);
        }
        assert_eq!(set_differences(SymbolicKind::NBackward, 1), (vec![], vec![0]));
        assert_eq!(set_differences(SymbolicKind::NForward, 1), (vec![0], vec![]));
    }

    #[test]
    fn level_cover_on_symbolic_frames() {
        for k in SymbolicKind::ALL {
            for n in 0..=10 {
                assert!(level_cover_holds(&Frame::Symbolic(k), n, 40));
            }
        }
        // holds at level 0 for cycles and paths, and fails where a path runs out
        assert!(level_cover_holds(&Frame::Finite(FiniteFrame::path(3)), 0, 0));
        assert!(!level_cover_holds(&Frame::Finite(FiniteFrame::path(3)), 3, 0));
        assert!(level_cover_holds(&Frame::Finite(FiniteFrame::cycle(3)), 5, 0));
    }
}
