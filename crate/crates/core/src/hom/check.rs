use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::FrameTransformation;
use crate::error::HomError;
use crate::frame::Frame;
use crate::kite::symbolic::{SparseElement, SymbolicKite};
use crate::kite::{ElementSpace, Kite, KiteElement, RunBudget};
use crate::reslat::FiniteResLat;

const OPS: [&str; 6] = ["meet", "join", "product", "left division", "right division", "unit"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomOpTally {
    pub op: String,
    pub checked: u64,
    pub failures: u64,
    /// `x, y` and the two sides, as element literals.
    pub first_failure: Option<String>,
}

impl HomOpTally {
    fn new(op: &str) -> Self {
        Self {
            op: op.to_string(),
            checked: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
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
pub struct HomReport {
    pub transformation: bool,
    pub exhaustive: bool,
    pub planned: u64,
    pub checked: u64,
    /// Elements whose image is undefined because some `t(i)` leaves `J_n`.
    pub undefined: u64,
    pub ops: Vec<HomOpTally>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.undefined == 0 && self.ops.iter().all(|o| o.failures == 0)
    }

    pub fn truncated(&self) -> bool {
        self.checked < self.planned
    }

    pub fn op(&self, name: &str) -> Option<&HomOpTally> {
        self.ops.iter().find(|o| o.op == name)
    }
}

/// Compares `h(x op y)` with `h(x) op h(y)` for the five binary operations
/// and checks `h(e) = e`, on all pairs at levels `0..=depth` of the kite
/// over the target frame when `count^2` fits the budget, else on samples.
///
/// Finite frames use dense kites; shifts between infinite frames use sparse
/// elements sampled on a window of radius `depth + 4`.
pub fn check_hom(t: &FrameTransformation, lattice: &FiniteResLat, cfg: &RunBudget) -> Result<HomReport, HomError> {
    match (t.source(), t.target()) {
        (Frame::Finite(s), Frame::Finite(g)) => {
            let dom = Kite::new(lattice.clone(), g.clone());
            let cod = Kite::new(lattice.clone(), s.clone());
            let h = |x: &KiteElement| t.induced_hom(&cod, x).ok();
            let ops = |k: &Kite, x: &KiteElement, y: &KiteElement| -> [Option<KiteElement>; 5] {
                [
                    Some(k.meet(x, y)),
                    Some(k.join(x, y)),
                    k.mul(x, y).ok(),
                    Some(k.ldiv(x, y)),
                    Some(k.rdiv(x, y)),
                ]
            };
            let space = ElementSpace::new(&dom, cfg.depth);
            let total = space.count().checked_pow(2).unwrap_or(u128::MAX);
            let exhaustive = total <= cfg.budget as u128;
            let pairs: Box<dyn Iterator<Item = (KiteElement, KiteElement)>> = if exhaustive {
                let all = space.all();
                let all2 = all.clone();
                Box::new(
                    all.into_iter()
                        .flat_map(move |x| all2.clone().into_iter().map(move |y| (x.clone(), y))),
                )
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(30);
                let n = cfg.samples.min(cfg.budget);
                let owned: Vec<_> = (0..n)
                    .map(|_| (space.random(&mut rng), space.random(&mut rng)))
                    .collect();
                Box::new(owned.into_iter())
            };
            let mut report = new_report(t, exhaustive, if exhaustive { total as u64 } else { cfg.samples });
            let unit = dom.unit_at(0)?;
            report.ops[5].record(h(&unit) == Some(cod.unit_at(0)?), || format!("h({unit})"));
            for (x, y) in pairs {
                report.checked += 1;
                let (Some(hx), Some(hy)) = (h(&x), h(&y)) else {
                    report.undefined += 1;
                    continue;
                };
                let lhs = ops(&dom, &x, &y);
                let rhs = ops(&cod, &hx, &hy);
                for (k, (l, r)) in lhs.into_iter().zip(rhs).enumerate() {
                    // levels past the kite bound are skipped on both sides
                    let (Some(l), Some(r)) = (l, r) else { continue };
                    let hl = h(&l);
                    report.ops[k].record(hl.as_ref() == Some(&r), || {
                        format!(
                            "x = {x}, y = {y}: h(x op y) = {}, h(x) op h(y) = {r}",
                            show(hl.as_ref())
                        )
                    });
                }
            }
            Ok(report)
        }
        (Frame::Symbolic(sk), Frame::Symbolic(tk)) => {
            let dom = SymbolicKite::new(lattice.clone(), *tk);
            let cod = SymbolicKite::new(lattice.clone(), *sk);
            let h = |x: &SparseElement| t.induced_hom_sparse(&cod, x);
            let radius = cfg.depth + 4;
            let n = cfg.samples.min(cfg.budget);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(31);
            let mut report = new_report(t, false, cfg.samples);
            let unit = dom.unit_at(0);
            report.ops[5].record(h(&unit)? == cod.unit_at(0), || format!("h({unit})"));
            for _ in 0..n {
                let x = dom.random(&mut rng, cfg.depth, 4, radius);
                let y = dom.random(&mut rng, cfg.depth, 4, radius);
                report.checked += 1;
                let (hx, hy) = (h(&x)?, h(&y)?);
                let lhs = [
                    dom.meet(&x, &y),
                    dom.join(&x, &y),
                    dom.mul(&x, &y),
                    dom.ldiv(&x, &y),
                    dom.rdiv(&x, &y),
                ];
                let rhs = [
                    cod.meet(&hx, &hy),
                    cod.join(&hx, &hy),
                    cod.mul(&hx, &hy),
                    cod.ldiv(&hx, &hy),
                    cod.rdiv(&hx, &hy),
                ];
                for (k, (l, r)) in lhs.iter().zip(rhs).enumerate() {
                    let hl = h(l)?;
                    report.ops[k].record(hl == r, || {
                        format!("x = {x}, y = {y}: h(x op y) = {hl}, h(x) op h(y) = {r}")
                    });
                }
            }
            Ok(report)
        }
        _ => Err(HomError::Unsupported(format!(
            "{} has images that are neither finite nor finitely supported",
            t.map()
        ))),
    }
}

fn new_report(t: &FrameTransformation, exhaustive: bool, planned: u64) -> HomReport {
    HomReport {
        transformation: t.is_transformation(),
        exhaustive,
        planned,
        checked: 0,
        undefined: 0,
        ops: OPS.iter().map(|o| HomOpTally::new(o)).collect(),
    }
}

fn show(x: Option<&KiteElement>) -> String {
    x.map_or_else(|| "undefined".to_string(), |x| x.to_string())
}

/// Whether `s ∘ t` is again a transformation, and whether the induced maps
/// compose contravariantly on the sampled elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionReport {
    pub composite_is_transformation: bool,
    pub checked: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<String>,
}

impl CompositionReport {
    pub fn contravariant(&self) -> bool {
        self.checked > 0 && self.mismatches == 0
    }
}

/// For `t: F -> F'` and `s: F' -> F''` over finite frames, compares
/// `K(s t)(x)` with `K(t)(K(s)(x))` on elements of the kite over `F''`.
pub fn composition_check(
    t: &FrameTransformation,
    s: &FrameTransformation,
    lattice: &FiniteResLat,
    cfg: &RunBudget,
) -> Result<CompositionReport, HomError> {
    let st = t.then(s)?;
    let k0 = Kite::new(lattice.clone(), t.source().as_finite()?.clone());
    let k1 = Kite::new(lattice.clone(), s.source().as_finite()?.clone());
    let k2 = Kite::new(lattice.clone(), s.target().as_finite()?.clone());
    let space = ElementSpace::new(&k2, cfg.depth);
    let xs = if space.count() <= cfg.budget as u128 {
        space.all()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(32);
        (0..cfg.samples.min(cfg.budget))
            .map(|_| space.random(&mut rng))
            .collect()
    };
    let mut report = CompositionReport {
        composite_is_transformation: st.is_transformation(),
        checked: 0,
        mismatches: 0,
        first_mismatch: None,
    };
    for x in xs {
        let direct = st.induced_hom(&k0, &x).ok();
        let staged = s.induced_hom(&k1, &x).ok().and_then(|y| t.induced_hom(&k0, &y).ok());
        // only where both sides are defined
        let (Some(d), Some(g)) = (direct, staged) else { continue };
        report.checked += 1;
        if d != g {
            report.mismatches += 1;
            if report.first_mismatch.is_none() {
                report.first_mismatch = Some(format!("x = {x}: {d} vs {g}"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::{tests::mod2, TransformationMap};
    use super::*;
    use crate::frame::{FiniteFrame, SymbolicKind};
    use crate::reslat::{lukasiewicz_chain, two_chain};

    fn ft(s: FiniteFrame, t: FiniteFrame, map: TransformationMap) -> FrameTransformation {
        FrameTransformation::new(Frame::Finite(s), Frame::Finite(t), map).unwrap()
    }

    fn exhaustive() -> RunBudget {
        RunBudget {
            depth: 2,
            ..RunBudget::default()
        }
    }

    #[test]
    fn valid_maps_preserve_everything() {
        let cases = [
            mod2(),
            ft(
                FiniteFrame::cycle(6),
                FiniteFrame::cycle(3),
                TransformationMap::ModCollapse(3),
            ),
            ft(
                FiniteFrame::cycle(2).disjoint_union(&FiniteFrame::cycle(2)),
                FiniteFrame::cycle(2),
                TransformationMap::Finite(vec![0, 1, 0, 1]),
            ),
            ft(
                FiniteFrame::cycle(3),
                FiniteFrame::singleton_loop(),
                TransformationMap::Finite(vec![0; 3]),
            ),
            ft(
                FiniteFrame::path(3),
                FiniteFrame::path(3),
                TransformationMap::Finite(vec![0, 1, 2, 3]),
            ),
        ];
        for t in cases {
            assert!(t.is_transformation());
            let r = check_hom(&t, &two_chain(), &exhaustive()).unwrap();
            assert!(r.exhaustive);
            assert!(r.passed(), "{:?}", r);
        }
    }

    #[test]
    fn broken_image_condition_breaks_right_division() {
        let t = ft(
            FiniteFrame::path(1),
            FiniteFrame::path(2),
            TransformationMap::Finite(vec![1, 2]),
        );
        let r = check_hom(&t, &two_chain(), &exhaustive()).unwrap();
        assert!(!r.transformation);
        assert!(r.op("right division").unwrap().failures > 0);
    }

    #[test]
    fn broken_commutation_is_detected() {
        let t = ft(
            FiniteFrame::cycle(4),
            FiniteFrame::cycle(2),
            TransformationMap::Finite(vec![0, 0, 1, 1]),
        );
        assert!(!check_hom(&t, &two_chain(), &exhaustive()).unwrap().passed());
    }

    #[test]
    fn shifts_on_integers() {
        let z = Frame::Symbolic(SymbolicKind::ZShift);
        let t = FrameTransformation::new(z.clone(), z, TransformationMap::Shift(3)).unwrap();
        let r = check_hom(
            &t,
            &lukasiewicz_chain(3),
            &RunBudget {
                samples: 300,
                ..RunBudget::default()
            },
        )
        .unwrap();
        assert!(r.passed(), "{:?}", r);
        assert_eq!(r.checked, 300);
    }

    #[test]
    fn composition_on_cycles() {
        let t = ft(
            FiniteFrame::cycle(4),
            FiniteFrame::cycle(2),
            TransformationMap::ModCollapse(2),
        );
        let s = ft(
            FiniteFrame::cycle(2),
            FiniteFrame::singleton_loop(),
            TransformationMap::Finite(vec![0, 0]),
        );
        let r = composition_check(&t, &s, &two_chain(), &exhaustive()).unwrap();
        assert!(r.composite_is_transformation);
        assert!(r.contravariant());
    }
}
