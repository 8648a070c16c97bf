use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{axiom_suite, ElementSpace, Kite, KiteElement, LawReport, RunBudget};
use crate::error::KiteError;
use crate::frame::{FiniteFrame, Frame};
use crate::reslat::FiniteResLat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SiKiteReason {
    /// The one-element lattice: the kite is the negative cone of the integers.
    TrivialLattice,
    EmptyFrame,
    LatticeNotSi,
    Disconnected {
        first: i64,
        second: i64,
    },
    /// Lattice is SI and all index pairs are connected.
    Connected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiKiteVerdict {
    pub si: bool,
    pub reason: SiKiteReason,
}

/// Subdirect irreducibility of the kite over `frame`.
///
/// A non-trivial lattice gives an SI kite iff the lattice is SI and every
/// pair of indices is connected; with `I1` empty this reduces to `|I0| <= 1`.
pub fn is_si_kite(lattice: &FiniteResLat, frame: &Frame) -> SiKiteVerdict {
    let verdict = |si, reason| SiKiteVerdict { si, reason };
    if lattice.is_trivial() {
        return verdict(true, SiKiteReason::TrivialLattice);
    }
    if let Frame::Finite(f) = frame {
        if f.size() == 0 {
            return verdict(true, SiKiteReason::EmptyFrame);
        }
    }
    if !lattice.is_subdirectly_irreducible().irreducible {
        return verdict(false, SiKiteReason::LatticeNotSi);
    }
    if let Frame::Finite(f) = frame {
        for i in 0..f.size() {
            if let Some(j) = (i + 1..f.size()).find(|&j| !f.connected(i, j)) {
                return verdict(
                    false,
                    SiKiteReason::Disconnected {
                        first: i as i64,
                        second: j as i64,
                    },
                );
            }
        }
    }
    verdict(true, SiKiteReason::Connected)
}

/// The image of `x` in the kite over the restriction to `c0`: same level,
/// entries on `I_n ∩ C0`, relabeled in ascending order.
pub fn component_quotient(kite: &Kite, c0: &[usize], x: &KiteElement) -> Result<(Kite, KiteElement), KiteError> {
    let (frame, labels) = kite.frame().restrict_to_component(c0)?;
    let sub = Kite::with_max_level(kite.lattice().clone(), frame, kite.max_level());
    let values = labels
        .iter()
        .filter(|&&i| kite.frame().in_level(x.level(), i))
        .map(|&i| kite.entry(x, i))
        .collect::<Result<Vec<_>, _>>()?;
    let y = sub.element(x.level(), values)?;
    Ok((sub, y))
}

/// True when some component quotient tells `x` and `y` apart.
pub fn separates(kite: &Kite, x: &KiteElement, y: &KiteElement) -> Result<bool, KiteError> {
    for comp in kite.frame().connected_components() {
        if component_quotient(kite, &comp, x)?.1 != component_quotient(kite, &comp, y)?.1 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub indices: Vec<usize>,
    pub axioms: Vec<LawReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub components: Vec<ComponentReport>,
    /// Distinct equal-level pairs examined.
    pub pairs: u64,
    pub separated: u64,
    pub first_unseparated: Option<(String, String)>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.pairs > 0
            && self.separated == self.pairs
            && self.components.iter().all(|c| c.axioms.iter().all(LawReport::passed))
    }

    pub fn truncated(&self) -> bool {
        self.components
            .iter()
            .any(|c| c.axioms.iter().any(LawReport::truncated))
    }
}

/// Runs the axiom suite on each component kite and checks that the
/// component quotients jointly separate `cfg.samples` seeded pairs of
/// distinct elements at a common level `<= cfg.depth`.
pub fn decomposition_check(kite: &Kite, cfg: &RunBudget) -> Result<DecompositionReport, KiteError> {
    let mut components = Vec::new();
    for comp in kite.frame().connected_components() {
        let (frame, _) = kite.frame().restrict_to_component(&comp)?;
        let sub = Kite::new(kite.lattice().clone(), frame);
        components.push(ComponentReport {
            axioms: axiom_suite(&sub, cfg)?,
            indices: comp,
        });
    }
    let space = ElementSpace::new(kite, cfg.depth);
    let levels: Vec<usize> = (0..=cfg.depth).filter(|&n| space.count_at(n) >= 2).collect();
    let mut report = DecompositionReport {
        components,
        pairs: 0,
        separated: 0,
        first_unseparated: None,
    };
    if levels.is_empty() {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(40);
    while report.pairs < cfg.samples.min(cfg.budget) {
        let n = levels[rng.gen_range(0..levels.len())];
        let (x, y) = (space.random_at(&mut rng, n), space.random_at(&mut rng, n));
        if x == y {
            continue;
        }
        report.pairs += 1;
        if separates(kite, &x, &y)? {
            report.separated += 1;
        } else if report.first_unseparated.is_none() {
            report.first_unseparated = Some((x.to_string(), y.to_string()));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StructuralExample {
    /// Empty frame: the negative cone of the integers.
    ZMinus,
    /// Singleton loop: antilexicographic product of the lattice with the negative cone.
    Antilex,
    /// Singleton tail: the lattice on top of a chain of two-element levels.
    OrdinalSum,
}

impl StructuralExample {
    pub fn frame(self) -> FiniteFrame {
        match self {
            Self::ZMinus => FiniteFrame::empty(),
            Self::Antilex => FiniteFrame::singleton_loop(),
            Self::OrdinalSum => FiniteFrame::singleton_tail(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralCheck {
    pub name: String,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub example: StructuralExample,
    pub depth: usize,
    pub checks: Vec<StructuralCheck>,
}

impl StructuralReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }
}

struct Tally(StructuralCheck);

impl Tally {
    fn new(name: &str) -> Self {
        Self(StructuralCheck {
            name: name.to_string(),
            checked: 0,
            failures: 0,
            first_failure: None,
        })
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.0.checked += 1;
        if !ok {
            self.0.failures += 1;
            if self.0.first_failure.is_none() {
                self.0.first_failure = Some(what());
            }
        }
    }
}

/// Compares the kite over the example's frame with the closed-form model at
/// levels `<= depth`. `frame` must be isomorphic to the example's frame.
pub fn structural_example_check(
    which: StructuralExample,
    lattice: &FiniteResLat,
    frame: &FiniteFrame,
    depth: usize,
) -> Result<StructuralReport, KiteError> {
    if frame.isomorphism_to(&which.frame()).is_none() {
        return Err(KiteError::FrameMismatch(format!(
            "{which:?} needs a frame isomorphic to {:?}",
            which.frame().pairs()
        )));
    }
    let k = Kite::new(lattice.clone(), which.frame());
    let g = lattice;
    let mut checks = Vec::new();
    match which {
        StructuralExample::ZMinus => {
            // element at level n is -n; product adds, divisions subtract truncated at 0
            let mut mul = Tally::new("product is addition");
            let mut ldiv = Tally::new("ldiv is truncated subtraction");
            let mut rdiv = Tally::new("rdiv is truncated subtraction");
            let mut order = Tally::new("order is reversed level order");
            let mut single = Tally::new("each level is a singleton");
            for m in 0..=depth {
                single.check(ElementSpace::new(&k, depth).count_at(m) == 1, || format!("level {m}"));
                for n in 0..=depth {
                    let (a, b) = (k.unit_at(m)?, k.unit_at(n)?);
                    mul.check(k.mul(&a, &b)?.level() == m + n, || format!("{m} + {n}"));
                    ldiv.check(k.ldiv(&a, &b).level() == n.saturating_sub(m), || format!("-{m} ⑊ -{n}"));
                    rdiv.check(k.rdiv(&a, &b).level() == m.saturating_sub(n), || format!("-{m} ⫽ -{n}"));
                    order.check(k.leq(&a, &b) == (m >= n), || format!("-{m} <= -{n}"));
                }
            }
            checks.extend([mul, ldiv, rdiv, order, single]);
        }
        StructuralExample::Antilex => {
            // (x, -m) with the level as second coordinate
            let mut mul = Tally::new("(x,-m)(y,-n) = (xy,-(m+n))");
            let mut ldiv = Tally::new("(x,-m)⑊(y,-n) = (x\\y,-(n-m)) for m <= n, else top");
            let mut rdiv = Tally::new("(y,-n)⫽(x,-m) = (y/x,-(n-m)) for m <= n, else top");
            let mut order = Tally::new("antilexicographic order");
            for m in 0..=depth {
                for n in 0..=depth {
                    for x in 0..g.size() {
                        for y in 0..g.size() {
                            let (a, b) = (k.element(m, vec![x])?, k.element(n, vec![y])?);
                            let p = k.mul(&a, &b)?;
                            mul.check(p == k.element(m + n, vec![g.mul(x, y)])?, || {
                                format!("({x},-{m})({y},-{n}) = {p}")
                            });
                            let l = k.ldiv(&a, &b);
                            let want = if m <= n {
                                k.element(n - m, vec![g.ldiv(x, y)])?
                            } else {
                                k.top()
                            };
                            ldiv.check(l == want, || format!("({x},-{m})⑊({y},-{n}) = {l}"));
                            let r = k.rdiv(&b, &a);
                            let want = if m <= n {
                                k.element(n - m, vec![g.rdiv(y, x)])?
                            } else {
                                k.top()
                            };
                            rdiv.check(r == want, || format!("({y},-{n})⫽({x},-{m}) = {r}"));
                            let want = m > n || (m == n && g.leq(x, y));
                            order.check(k.leq(&a, &b) == want, || format!("({x},-{m}) <= ({y},-{n})"));
                        }
                    }
                }
            }
            checks.extend([mul, ldiv, rdiv, order]);
        }
        StructuralExample::OrdinalSum => {
            let mut head = Tally::new("level 0 is a copy of the lattice");
            let mut tail = Tally::new("levels >= 1 are singletons");
            let mut absorb = Tally::new("products reaching level >= 1 land on the singleton");
            for x in 0..g.size() {
                for y in 0..g.size() {
                    let (a, b) = (k.element(0, vec![x])?, k.element(0, vec![y])?);
                    let ok = k.mul(&a, &b)?.values() == [g.mul(x, y)]
                        && k.ldiv(&a, &b).values() == [g.ldiv(x, y)]
                        && k.rdiv(&a, &b).values() == [g.rdiv(x, y)]
                        && k.meet(&a, &b).values() == [g.meet(x, y)]
                        && k.join(&a, &b).values() == [g.join(x, y)];
                    head.check(ok, || format!("x = {x}, y = {y}"));
                }
            }
            for n in 1..=depth {
                tail.check(ElementSpace::new(&k, depth).count_at(n) == 1, || format!("level {n}"));
                let s = k.unit_at(n)?;
                for x in 0..g.size() {
                    let a = k.element(0, vec![x])?;
                    let ok = k.mul(&a, &s)? == s && k.mul(&s, &a)? == s && k.ldiv(&a, &s) == s && k.rdiv(&s, &a) == s;
                    absorb.check(ok, || format!("x = {x}, level {n}"));
                }
            }
            checks.extend([head, tail, absorb]);
        }
    }
    Ok(StructuralReport {
        example: which,
        depth,
        checks: checks.into_iter().map(|t| t.0).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{FiniteFrame, SymbolicKind};
    use crate::reslat::{boolean_square, lukasiewicz_chain, trivial, two_chain};

    #[test]
    fn split_frame_separates() {
        let k = Kite::new(lukasiewicz_chain(3), FiniteFrame::identity(4));
        let r = decomposition_check(
            &k,
            &RunBudget {
                samples: 200,
                ..RunBudget::default()
            },
        )
        .unwrap();
        assert_eq!(r.components.len(), 4);
        assert_eq!(r.pairs, 200);
        assert!(r.passed());
    }

    #[test]
    fn si_verdicts() {
        let l3 = lukasiewicz_chain(3);
        assert!(is_si_kite(&trivial(), &Frame::Finite(FiniteFrame::identity(4))).si);
        assert!(is_si_kite(&l3, &Frame::Finite(FiniteFrame::path(3))).si);
        let v = is_si_kite(&l3, &Frame::Finite(FiniteFrame::identity(4)));
        assert_eq!(v.reason, SiKiteReason::Disconnected { first: 0, second: 1 });
        assert!(!is_si_kite(&boolean_square(), &Frame::Finite(FiniteFrame::cycle(3))).si);
        assert!(is_si_kite(&boolean_square(), &Frame::Finite(FiniteFrame::empty())).si);
        assert!(is_si_kite(&l3, &Frame::Finite(FiniteFrame::singleton_tail())).si);
        assert!(!is_si_kite(&l3, &Frame::Finite(FiniteFrame::new(2, &[]).unwrap())).si);
        assert!(is_si_kite(&l3, &Frame::Symbolic(SymbolicKind::NBackward)).si);
    }

    #[test]
    fn component_quotients() {
        let k = Kite::new(lukasiewicz_chain(3), FiniteFrame::identity(4));
        let x = k.element(0, vec![1, 2, 0, 2]).unwrap();
        let (sub, q) = component_quotient(&k, &[0], &x).unwrap();
        assert_eq!(sub.frame(), &FiniteFrame::singleton_loop());
        assert_eq!(q.values(), &[1]);
        let y = k.element(0, vec![1, 2, 1, 2]).unwrap();
        assert!(separates(&k, &x, &y).unwrap());
        assert_eq!(component_quotient(&k, &[2], &y).unwrap().1.values(), &[1]);
        assert!(component_quotient(&k, &[0, 9], &x).is_err());
        let single = Kite::new(two_chain(), FiniteFrame::path(2));
        let z = single.element(1, vec![0, 1]).unwrap();
        assert_eq!(component_quotient(&single, &[0, 1, 2], &z).unwrap().1, z);
    }

    #[test]
    fn structural_examples() {
        for g in [two_chain(), lukasiewicz_chain(3)] {
            for w in [
                StructuralExample::ZMinus,
                StructuralExample::Antilex,
                StructuralExample::OrdinalSum,
            ] {
                let r = structural_example_check(w, &g, &w.frame(), 4).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
        assert!(matches!(
            structural_example_check(StructuralExample::Antilex, &two_chain(), &FiniteFrame::cycle(2), 2),
            Err(KiteError::FrameMismatch(_))
        ));
    }
}
