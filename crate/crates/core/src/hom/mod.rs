//! Frame transformations and the kite homomorphisms they induce.
//!
//! A map `t: I0 -> J0` is a transformation when `t^-1(J1) = I1`,
//! `t^-1(kappa(J1)) = lambda(I1)` and `t(lambda(i)) = kappa(t(i))` on `I1`.
//! It induces `x |-> (x_{t(i)})_{i in I_n}` from the kite over the target
//! frame to the kite over the source frame.

mod check;
pub mod io;

pub use check::{check_hom, composition_check, CompositionReport, HomOpTally, HomReport};

use std::fmt;

use serde::Serialize;

use crate::error::HomError;
use crate::frame::{Frame, SymbolicKind};
use crate::kite::symbolic::{SparseElement, SymbolicKite};
use crate::kite::{Kite, KiteElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum TransformationMap {
    /// `t(i) = table[i]` on a finite `I0`.
    Finite(Vec<usize>),
    /// `t(i) = i + c` between infinite frames.
    Shift(i64),
    /// `t(i) = i mod n` onto a finite target.
    ModCollapse(usize),
}

impl fmt::Display for TransformationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(t) => {
                let parts: Vec<String> = t.iter().enumerate().map(|(i, j)| format!("{i}->{j}")).collect();
                write!(f, "{}", parts.join(", "))
            }
            Self::Shift(c) => write!(f, "shift {c}"),
            Self::ModCollapse(n) => write!(f, "mod {n}"),
        }
    }
}

/// The three defining conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Condition {
    /// `t^-1(J1) = I1`
    DomainPreimage,
    /// `t^-1(kappa(J1)) = lambda(I1)`
    ImagePreimage,
    /// `t(lambda(i)) = kappa(t(i))` for `i in I1`
    Commutes,
}

impl Condition {
    pub const ALL: [Condition; 3] = [Self::DomainPreimage, Self::ImagePreimage, Self::Commutes];

    pub fn name(self) -> &'static str {
        match self {
            Self::DomainPreimage => "t^-1(J1) = I1",
            Self::ImagePreimage => "t^-1(kappa(J1)) = lambda(I1)",
            Self::Commutes => "t lambda = kappa t on I1",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    /// Smallest offending index (by absolute value, then sign).
    pub index: i64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrameTransformation {
    source: Frame,
    target: Frame,
    map: TransformationMap,
}

/// Extra indices examined on each side of the affine thresholds. Membership
/// in level sets and their lambda-images is a threshold condition on the
/// infinite frames, and the maps are shifts or residues, so every condition
/// is periodic past `|c| + n + depth` and a window of that size decides it.
const WINDOW_SLACK: usize = 4;

impl FrameTransformation {
    /// Validates that `map` is total on `I0` with values in `J0`.
    pub fn new(source: Frame, target: Frame, map: TransformationMap) -> Result<Self, HomError> {
        match (&source, &target, &map) {
            (Frame::Finite(s), Frame::Finite(tg), TransformationMap::Finite(table)) => {
                if table.len() != s.size() {
                    return Err(HomError::NotTotal {
                        len: table.len(),
                        expected: s.size(),
                    });
                }
                if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= tg.size()) {
                    return Err(HomError::OutOfRange {
                        index,
                        value,
                        size: tg.size(),
                    });
                }
            }
            (_, Frame::Finite(tg), TransformationMap::ModCollapse(n)) => {
                if *n == 0 || *n > tg.size() {
                    return Err(HomError::Unsupported(format!(
                        "mod {n} needs a target with at least {n} indices, target has {}",
                        tg.size()
                    )));
                }
                if let Frame::Finite(s) = &source {
                    // materialize, so finite sources always carry a table
                    let table = (0..s.size()).map(|i| i % n).collect();
                    return Ok(Self {
                        source,
                        target,
                        map: TransformationMap::Finite(table),
                    });
                }
            }
            (Frame::Symbolic(sk), Frame::Symbolic(tk), TransformationMap::Shift(c)) => {
                let lowest = match sk {
                    SymbolicKind::ZShift => None,
                    _ => Some(*c),
                };
                let fits = match tk {
                    SymbolicKind::ZShift => true,
                    _ => lowest.is_some_and(|l| l >= 0),
                };
                if !fits {
                    return Err(HomError::Unsupported(format!(
                        "shift {c} leaves the index set of {}",
                        tk.name()
                    )));
                }
            }
            _ => {
                return Err(HomError::Unsupported(format!(
                    "{map} between {} and {}",
                    frame_name(&source),
                    frame_name(&target)
                )))
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn source(&self) -> &Frame {
        &self.source
    }

    pub fn target(&self) -> &Frame {
        &self.target
    }

    pub fn map(&self) -> &TransformationMap {
        &self.map
    }

    pub fn apply(&self, i: i64) -> i64 {
        match &self.map {
            TransformationMap::Finite(t) => t[i as usize] as i64,
            TransformationMap::Shift(c) => i + c,
            TransformationMap::ModCollapse(n) => i.rem_euclid(*n as i64),
        }
    }

    /// Indices of `I0` examined by the checks: all of a finite `I0`, a
    /// window around the thresholds of an infinite one.
    pub fn indices(&self, depth: usize) -> Vec<i64> {
        let w = (match &self.map {
            TransformationMap::Shift(c) => c.unsigned_abs() as usize,
            TransformationMap::ModCollapse(n) => 2 * n,
            TransformationMap::Finite(_) => 0,
        } + depth
            + WINDOW_SLACK) as i64;
        match &self.source {
            Frame::Finite(f) => (0..f.size() as i64).collect(),
            Frame::Symbolic(SymbolicKind::ZShift) => (-w..=w).collect(),
            Frame::Symbolic(_) => (0..=w).collect(),
        }
    }

    /// All violations of each condition, smallest index first.
    pub fn violations(&self) -> Vec<Violation> {
        let (s, t) = (&self.source, &self.target);
        let mut out = Vec::new();
        let mut idx = self.indices(0);
        idx.sort_by_key(|&i| (i.unsigned_abs(), i < 0));
        for &i in &idx {
            let ti = self.apply(i);
            let (in_j1, in_i1) = (t.contains(1, ti), s.contains(1, i));
            if in_j1 != in_i1 {
                out.push(Violation {
                    condition: Condition::DomainPreimage,
                    index: i,
                    detail: format!("t({i}) = {ti} {} J1 but {i} {} I1", is(in_j1), is(in_i1)),
                });
            }
            let (in_kj, in_li) = (t.in_image_power(1, 1, ti), s.in_image_power(1, 1, i));
            if in_kj != in_li {
                out.push(Violation {
                    condition: Condition::ImagePreimage,
                    index: i,
                    detail: format!("t({i}) = {ti} {} kappa(J1) but {i} {} lambda(I1)", is(in_kj), is(in_li)),
                });
            }
            if let Some(li) = s.lambda(i) {
                let lhs = self.apply(li);
                let rhs = t.lambda(ti);
                if rhs != Some(lhs) {
                    out.push(Violation {
                        condition: Condition::Commutes,
                        index: i,
                        detail: match rhs {
                            Some(r) => format!("t(lambda({i})) = {lhs} but kappa(t({i})) = {r}"),
                            None => format!("t(lambda({i})) = {lhs} but kappa is undefined at {ti}"),
                        },
                    });
                }
            }
        }
        out.sort_by_key(|v| v.condition);
        out
    }

    pub fn is_transformation(&self) -> bool {
        self.violations().is_empty()
    }

    /// The first violation of each violated condition.
    pub fn violated_conditions(&self) -> Vec<Condition> {
        let mut c: Vec<Condition> = self.violations().iter().map(|v| v.condition).collect();
        c.dedup();
        c
    }

    /// Entry-substitution image of `x`, an element over the target frame,
    /// in the kite `source` over the source frame.
    pub fn induced_hom(&self, source: &Kite, x: &KiteElement) -> Result<KiteElement, HomError> {
        let tf = self.target.as_finite()?;
        if self.source.as_finite()? != source.frame() {
            return Err(HomError::Unsupported("kite is not over the source frame".into()));
        }
        let n = x.level();
        let values = source
            .frame()
            .level(n)
            .iter()
            .map(|&i| {
                let j = self.apply(i as i64) as usize;
                tf.position(n, j).map(|p| x.values()[p]).ok_or_else(|| {
                    HomError::Invalid(format!("t({i}) = {j} is not in J_{n}, so the induced map is undefined"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(source.element(n, values)?)
    }

    /// Sparse counterpart for shifts between infinite frames.
    pub fn induced_hom_sparse(&self, source: &SymbolicKite, x: &SparseElement) -> Result<SparseElement, HomError> {
        let TransformationMap::Shift(c) = self.map else {
            return Err(HomError::Unsupported(format!(
                "{} has no finitely supported images",
                self.map
            )));
        };
        let n = x.level();
        let entries: Vec<(i64, usize)> = x
            .entries()
            .iter()
            .map(|(&j, &v)| (j - c, v))
            .filter(|&(i, _)| source.kind().contains(n, i))
            .collect();
        Ok(source.element(n, entries)?)
    }

    /// `s ∘ self`, when `self.target` is `s.source`.
    pub fn then(&self, s: &FrameTransformation) -> Result<FrameTransformation, HomError> {
        if self.target != s.source {
            return Err(HomError::Unsupported("frames do not compose".into()));
        }
        let map = match (&self.map, &s.map) {
            (TransformationMap::Shift(a), TransformationMap::Shift(b)) => TransformationMap::Shift(a + b),
            (TransformationMap::Shift(a), TransformationMap::ModCollapse(n)) if a.rem_euclid(*n as i64) == 0 => {
                TransformationMap::ModCollapse(*n)
            }
            _ => match &self.source {
                Frame::Finite(f) => {
                    TransformationMap::Finite((0..f.size() as i64).map(|i| s.apply(self.apply(i)) as usize).collect())
                }
                Frame::Symbolic(_) => {
                    return Err(HomError::Unsupported(format!(
                        "composite of {} and {}",
                        self.map, s.map
                    )))
                }
            },
        };
        FrameTransformation::new(self.source.clone(), s.target.clone(), map)
    }
}

fn is(b: bool) -> &'static str {
    if b {
        "in"
    } else {
        "not in"
    }
}

fn frame_name(f: &Frame) -> String {
    match f {
        Frame::Finite(f) => format!("a finite frame on {} indices", f.size()),
        Frame::Symbolic(k) => k.name().to_string(),
    }
}

/// Outcome of one lemma over all examined indices and levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaTally {
    pub lemma: String,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl LemmaTally {
    fn new(name: &str) -> Self {
        Self {
            lemma: name.to_string(),
            checked: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub depth: usize,
    pub lemmas: Vec<LemmaTally>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.lemmas.iter().all(|l| l.failures == 0)
    }
}

/// The four consequences of the transformation conditions, for all
/// `m <= n <= depth`:
/// level preimages `t^-1(J_n) = I_n`; inverse transport
/// (`lambda^-1(i)` exists iff `kappa^-1(t(i))` does, and then they
/// correspond); the recursion for `lambda^{m+1}(I_{n+1})` on both frames;
/// and image preimages `t^-1(kappa^m(J_n)) = lambda^m(I_n)`.
pub fn lemma_checks(t: &FrameTransformation, depth: usize) -> LemmaReport {
    let (s, g) = (t.source(), t.target());
    let idx = t.indices(depth);
    let mut levels = LemmaTally::new("level preimages");
    let mut inverse = LemmaTally::new("inverse transport");
    let mut recursion = LemmaTally::new("image recursion");
    let mut images = LemmaTally::new("image preimages");
    for &i in &idx {
        let ti = t.apply(i);
        for n in 0..=depth {
            levels.check(g.contains(n, ti) == s.contains(n, i), || format!("n = {n}, i = {i}"));
        }
        let (li, kt) = (s.lambda_inv(i), g.lambda_inv(ti));
        inverse.check(li.is_some() == kt.is_some() && li.map(|l| t.apply(l)) == kt, || {
            format!("i = {i}: lambda^-1 = {li:?}, kappa^-1(t(i)) = {kt:?}")
        });
        for n in 0..=depth {
            for m in 0..=n {
                for (name, f, j) in [("source", s, i), ("target", g, ti)] {
                    let lhs = f.in_image_power(m + 1, n + 1, j);
                    let rhs = f.contains(n - m, j) && f.lambda_inv(j).is_some_and(|p| f.in_image_power(m, n, p));
                    recursion.check(lhs == rhs, || format!("{name} frame, m = {m}, n = {n}, index {j}"));
                }
                images.check(g.in_image_power(m, n, ti) == s.in_image_power(m, n, i), || {
                    format!("m = {m}, n = {n}, i = {i}")
                });
            }
        }
    }
    LemmaReport {
        depth,
        lemmas: vec![levels, inverse, recursion, images],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::FiniteFrame;
    use crate::reslat::two_chain;

    fn fin(f: FiniteFrame) -> Frame {
        Frame::Finite(f)
    }

    pub(crate) fn mod2() -> FrameTransformation {
        FrameTransformation::new(
            fin(FiniteFrame::cycle(4)),
            fin(FiniteFrame::cycle(2)),
            TransformationMap::Finite(vec![0, 1, 0, 1]),
        )
        .unwrap()
    }

    #[test]
    fn mod_two_collapse_is_valid() {
        assert!(mod2().is_transformation());
        let via_mod = FrameTransformation::new(
            fin(FiniteFrame::cycle(4)),
            fin(FiniteFrame::cycle(2)),
            TransformationMap::ModCollapse(2),
        )
        .unwrap();
        assert_eq!(via_mod, mod2());
        assert!(lemma_checks(&mod2(), 6).passed());
    }

    #[test]
    fn inclusion_of_a_path_fails_domain_condition() {
        let t = FrameTransformation::new(
            fin(FiniteFrame::path(1)),
            fin(FiniteFrame::cycle(2)),
            TransformationMap::Finite(vec![0, 1]),
        )
        .unwrap();
        let v = t.violations();
        assert_eq!(v[0].condition, Condition::DomainPreimage);
        assert_eq!(v[0].index, 1);
    }

    #[test]
    fn single_condition_failures() {
        let t = FrameTransformation::new(
            fin(FiniteFrame::path(1)),
            fin(FiniteFrame::path(2)),
            TransformationMap::Finite(vec![1, 2]),
        )
        .unwrap();
        assert_eq!(t.violated_conditions(), vec![Condition::ImagePreimage]);
        let t = FrameTransformation::new(
            fin(FiniteFrame::cycle(4)),
            fin(FiniteFrame::cycle(2)),
            TransformationMap::Finite(vec![0, 0, 1, 1]),
        )
        .unwrap();
        assert_eq!(t.violated_conditions(), vec![Condition::Commutes]);
    }

    #[test]
    fn structural_errors() {
        let c4 = fin(FiniteFrame::cycle(4));
        let c2 = fin(FiniteFrame::cycle(2));
        assert!(matches!(
            FrameTransformation::new(c4.clone(), c2.clone(), TransformationMap::Finite(vec![0, 1])),
            Err(HomError::NotTotal { len: 2, expected: 4 })
        ));
        assert!(matches!(
            FrameTransformation::new(c4.clone(), c2.clone(), TransformationMap::Finite(vec![0, 1, 2, 0])),
            Err(HomError::OutOfRange { index: 2, .. })
        ));
        assert!(FrameTransformation::new(c4, c2, TransformationMap::Shift(1)).is_err());
        let z = Frame::Symbolic(SymbolicKind::ZShift);
        let n = Frame::Symbolic(SymbolicKind::NForward);
        assert!(FrameTransformation::new(z, n.clone(), TransformationMap::Shift(0)).is_err());
        assert!(FrameTransformation::new(n.clone(), n, TransformationMap::Shift(-1)).is_err());
    }

    #[test]
    fn symbolic_maps() {
        let z = Frame::Symbolic(SymbolicKind::ZShift);
        let nf = Frame::Symbolic(SymbolicKind::NForward);
        let nb = Frame::Symbolic(SymbolicKind::NBackward);
        let shift = |s: &Frame, t: &Frame, c| {
            FrameTransformation::new(s.clone(), t.clone(), TransformationMap::Shift(c)).unwrap()
        };
        assert!(shift(&z, &z, 5).is_transformation());
        assert!(shift(&nf, &nf, 0).is_transformation());
        assert_eq!(shift(&nf, &nf, 2).violated_conditions(), vec![Condition::ImagePreimage]);
        assert_eq!(shift(&nf, &z, 0).violated_conditions(), vec![Condition::ImagePreimage]);
        assert!(shift(&nb, &nb, 0).is_transformation());
        assert_eq!(
            shift(&nb, &nb, 1).violated_conditions(),
            vec![Condition::DomainPreimage]
        );
        let collapse =
            FrameTransformation::new(z.clone(), fin(FiniteFrame::cycle(3)), TransformationMap::ModCollapse(3)).unwrap();
        assert!(collapse.is_transformation());
        assert!(lemma_checks(&collapse, 8).passed());
        let bad = FrameTransformation::new(nf, fin(FiniteFrame::cycle(3)), TransformationMap::ModCollapse(3)).unwrap();
        assert_eq!(bad.violations()[0].index, 0);
        assert!(lemma_checks(&shift(&z, &z, -3), 8).passed());
    }

    #[test]
    fn induced_substitution() {
        let t = mod2();
        let source = Kite::new(two_chain(), FiniteFrame::cycle(4));
        let x = Kite::new(two_chain(), FiniteFrame::cycle(2))
            .element(0, vec![0, 1])
            .unwrap();
        assert_eq!(t.induced_hom(&source, &x).unwrap().values(), &[0, 1, 0, 1]);
        let top = Kite::new(two_chain(), FiniteFrame::cycle(2)).top();
        assert_eq!(t.induced_hom(&source, &top).unwrap(), source.top());
    }

    #[test]
    fn sparse_shift() {
        let z = Frame::Symbolic(SymbolicKind::ZShift);
        let t = FrameTransformation::new(z.clone(), z, TransformationMap::Shift(2)).unwrap();
        let sk = SymbolicKite::new(two_chain(), SymbolicKind::ZShift);
        let x = sk.element(1, [(5, 0)]).unwrap();
        assert_eq!(t.induced_hom_sparse(&sk, &x).unwrap(), sk.element(1, [(3, 0)]).unwrap());
    }
}
