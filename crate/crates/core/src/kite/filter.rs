use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ElementSpace, Kite, KiteElement};
use crate::error::KiteError;
use crate::reslat::LatticeFilter;

/// Membership test of a [`KiteFilterKind::Custom`] filter.
pub type Membership = Arc<dyn Fn(&Kite, &KiteElement) -> bool + Send + Sync>;

/// The kinds of kite filters, with their parameters.
#[derive(Clone)]
pub enum KiteFilterKind {
    /// All elements at level 0.
    MaximalLevelZero,
    /// Level 0 with every entry in the normal filter `N` of the lattice.
    Lifted(LatticeFilter),
    /// Level 0 with entry `e` at every index of `C0` (a union of components).
    Component(Vec<usize>),
    Custom {
        name: String,
        member: Membership,
    },
}

impl fmt::Debug for KiteFilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MaximalLevelZero => write!(f, "MaximalLevelZero"),
            Self::Lifted(n) => write!(f, "Lifted({:?})", n.members()),
            Self::Component(c) => write!(f, "Component({c:?})"),
            Self::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

/// A membership test for a normal filter of a kite.
#[derive(Debug, Clone)]
pub struct KiteFilterPredicate {
    kind: KiteFilterKind,
}

impl KiteFilterPredicate {
    /// Validates the parameters against `kite`.
    pub fn new(kite: &Kite, kind: KiteFilterKind) -> Result<Self, KiteError> {
        match &kind {
            KiteFilterKind::Lifted(n) if !(n.is_normal() && kite.lattice().is_normal_filter(n.members())) => {
                return Err(KiteError::InvalidFilter(format!(
                    "{:?} is not a normal filter",
                    n.members()
                )));
            }
            KiteFilterKind::Component(c) if !kite.frame().is_component_union(c) => {
                return Err(KiteError::InvalidFilter(format!("{c:?} is not a union of components")));
            }
            _ => {}
        }
        Ok(Self { kind })
    }

    pub fn kind(&self) -> &KiteFilterKind {
        &self.kind
    }

    pub fn contains(&self, kite: &Kite, x: &KiteElement) -> bool {
        match &self.kind {
            KiteFilterKind::MaximalLevelZero => x.level() == 0,
            KiteFilterKind::Lifted(n) => x.level() == 0 && x.values().iter().all(|&v| n.contains(v)),
            KiteFilterKind::Component(c) => {
                x.level() == 0
                    && c.iter()
                        .all(|&i| kite.entry(x, i).is_ok_and(|v| v == kite.lattice().unit()))
            }
            KiteFilterKind::Custom { member, .. } => member(kite, x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterLawReport {
    pub samples: u64,
    pub contains_top: bool,
    /// Member pairs tried for product closure.
    pub product_checks: u64,
    pub violations: Vec<String>,
}

impl FilterLawReport {
    pub fn passed(&self) -> bool {
        self.contains_top && self.violations.is_empty()
    }
}

/// Sampled filter laws: top, product closure, upward closure (`x v y`) and
/// closure under both conjugations. Members are drawn as `x`, the other
/// element from the whole space at levels `<= depth`.
pub fn check_filter_laws(
    kite: &Kite,
    pred: &KiteFilterPredicate,
    depth: usize,
    samples: u64,
    seed: u64,
) -> Result<FilterLawReport, KiteError> {
    let space = ElementSpace::new(kite, depth);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = FilterLawReport {
        samples,
        contains_top: pred.contains(kite, &kite.top()),
        product_checks: 0,
        violations: Vec::new(),
    };
    let fail = |what: &str, x: &KiteElement, y: &KiteElement, report: &mut FilterLawReport| {
        if report.violations.len() < 8 {
            report.violations.push(format!("{what}: x = {x}, y = {y}"));
        }
    };
    // bias towards members: sample level 0 half the time
    let draw_member = |rng: &mut ChaCha8Rng| -> Option<KiteElement> {
        for _ in 0..64 {
            let x = if rand::Rng::gen_bool(rng, 0.5) {
                space.random_at(rng, 0)
            } else {
                space.random(rng)
            };
            if pred.contains(kite, &x) {
                return Some(x);
            }
        }
        None
    };
    for _ in 0..samples {
        let Some(x) = draw_member(&mut rng) else { continue };
        let y = space.random(&mut rng);
        if !pred.contains(kite, &kite.join(&x, &y)) {
            fail("upward", &x, &y, &mut report);
        }
        if !pred.contains(kite, &kite.left_conjugate(&y, &x)?) {
            fail("left-conjugate", &x, &y, &mut report);
        }
        if !pred.contains(kite, &kite.right_conjugate(&y, &x)?) {
            fail("right-conjugate", &x, &y, &mut report);
        }
        if let Some(z) = draw_member(&mut rng) {
            report.product_checks += 1;
            if !pred.contains(kite, &kite.mul(&x, &z)?) {
                fail("product", &x, &z, &mut report);
            }
        }
    }
    Ok(report)
}
