use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{ElementSpace, Kite, KiteElement};
use crate::error::KiteError;
use crate::reslat::Identity;

/// Sampling parameters shared by the kite checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RunBudget {
    pub depth: usize,
    pub samples: u64,
    pub seed: u64,
    /// Largest tuple space enumerated exhaustively, and the cap on
    /// evaluations per law.
    pub budget: u64,
}

impl Default for RunBudget {
    fn default() -> Self {
        Self {
            depth: 2,
            samples: 1000,
            seed: 0,
            budget: 1_000_000,
        }
    }
}

/// Outcome of one law over a tuple space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub exhaustive: bool,
    pub planned: u64,
    pub checked: u64,
    pub violations: u64,
    /// First violating tuple, as element literals.
    pub witness: Option<Vec<String>>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    /// Sampling was cut short by the evaluation budget.
    pub fn truncated(&self) -> bool {
        self.checked < self.planned
    }

    pub fn coverage(&self) -> f64 {
        if self.planned == 0 {
            1.0
        } else {
            self.checked as f64 / self.planned as f64
        }
    }
}

/// Runs `law` on every `arity`-tuple when the space fits in the budget,
/// otherwise on seeded samples.
fn run_law(
    kite: &Kite,
    cfg: &RunBudget,
    name: &str,
    stream: u64,
    arity: u32,
    law: &dyn Fn(&[&KiteElement]) -> Result<bool, KiteError>,
) -> Result<LawReport, KiteError> {
    let space = ElementSpace::new(kite, cfg.depth);
    let total = space.count().checked_pow(arity).unwrap_or(u128::MAX);
    let mut report = LawReport {
        law: name.to_string(),
        exhaustive: total <= cfg.budget as u128,
        planned: 0,
        checked: 0,
        violations: 0,
        witness: None,
    };
    let record = |tuple: &[&KiteElement], ok: bool, report: &mut LawReport| {
        report.checked += 1;
        if !ok {
            report.violations += 1;
            if report.witness.is_none() {
                report.witness = Some(tuple.iter().map(|x| x.to_string()).collect());
            }
        }
    };
    if report.exhaustive {
        report.planned = total as u64;
        let all = space.all();
        let len = all.len();
        let mut idx = vec![0usize; arity as usize];
        if len > 0 {
            loop {
                let tuple: Vec<&KiteElement> = idx.iter().map(|&i| &all[i]).collect();
                let ok = law(&tuple)?;
                record(&tuple, ok, &mut report);
                let Some(p) = (0..idx.len()).rev().find(|&p| idx[p] + 1 < len) else {
                    break;
                };
                idx[p] += 1;
                for v in &mut idx[p + 1..] {
                    *v = 0;
                }
            }
        }
    } else {
        report.planned = cfg.samples;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        for _ in 0..cfg.samples.min(cfg.budget) {
            let owned: Vec<KiteElement> = (0..arity).map(|_| space.random(&mut rng)).collect();
            let tuple: Vec<&KiteElement> = owned.iter().collect();
            let ok = law(&tuple)?;
            record(&tuple, ok, &mut report);
        }
    }
    Ok(report)
}

/// Adjointness, associativity of the product, unit laws and integrality.
pub fn axiom_suite(kite: &Kite, cfg: &RunBudget) -> Result<Vec<LawReport>, KiteError> {
    let top = kite.top();
    Ok(vec![
        run_law(kite, cfg, "adjointness", 1, 3, &|t| {
            kite.adjointness_holds(t[0], t[1], t[2])
        })?,
        run_law(kite, cfg, "mul-associativity", 2, 3, &|t| {
            Ok(kite.mul(t[0], &kite.mul(t[1], t[2])?)? == kite.mul(&kite.mul(t[0], t[1])?, t[2])?)
        })?,
        run_law(kite, cfg, "unit", 3, 1, &|t| {
            Ok(kite.mul(&top, t[0])? == *t[0] && kite.mul(t[0], &top)? == *t[0])
        })?,
        run_law(kite, cfg, "integrality", 4, 1, &|t| Ok(kite.leq(t[0], &top)))?,
    ])
}

/// `(x ⑊ y) v (y ⑊ x) = 1` and `(x ⫽ y) v (y ⫽ x) = 1`.
fn prelinear_pair(kite: &Kite, x: &KiteElement, y: &KiteElement) -> bool {
    let top = kite.top();
    kite.join(&kite.ldiv(x, y), &kite.ldiv(y, x)) == top && kite.join(&kite.rdiv(x, y), &kite.rdiv(y, x)) == top
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrelinearityReport {
    pub lattice_prelinear: bool,
    pub pairs: LawReport,
    /// Level-0 constant elements built from the lattice's own violating pair.
    pub constant_probe: Option<(String, String)>,
    pub constant_probe_fails: bool,
    /// The kite verdict equals the lattice verdict.
    pub agrees: bool,
}

pub fn prelinearity_transfer_check(kite: &Kite, cfg: &RunBudget) -> Result<PrelinearityReport, KiteError> {
    let g = kite.lattice();
    let witness = g.identity_witness(Identity::Prelinearity);
    let mut probe = None;
    let mut probe_fails = false;
    if let Some((a, b)) = witness {
        if kite.frame().size() > 0 {
            let x = kite.constant(0, a)?;
            let y = kite.constant(0, b)?;
            probe_fails = !prelinear_pair(kite, &x, &y);
            probe = Some((x.to_string(), y.to_string()));
        }
    }
    let pairs = run_law(kite, cfg, "kite-prelinearity", 5, 2, &|t| {
        Ok(prelinear_pair(kite, t[0], t[1]))
    })?;
    let kite_prelinear = pairs.passed() && !probe_fails;
    Ok(PrelinearityReport {
        lattice_prelinear: witness.is_none(),
        agrees: kite_prelinear == witness.is_none(),
        pairs,
        constant_probe: probe,
        constant_probe_fails: probe_fails,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisibilityWitness {
    pub x: String,
    pub y: String,
    /// `"x(x⑊y)"` or `"(y⫽x)x"`.
    pub side: &'static str,
    pub product: String,
    pub meet: String,
}

/// First pair `(x, y)` at levels `<= depth` with `x(x⑊y) != x ∧ y` or
/// `(y⫽x)x != x ∧ y`, in enumeration order.
pub fn divisibility_search(kite: &Kite, depth: usize) -> Result<Option<DivisibilityWitness>, KiteError> {
    let all = ElementSpace::new(kite, depth).all();
    for x in &all {
        for y in &all {
            let m = kite.meet(x, y);
            let left = kite.mul(x, &kite.ldiv(x, y))?;
            let right = kite.mul(&kite.rdiv(y, x), x)?;
            for (side, p) in [("x(x⑊y)", left), ("(y⫽x)x", right)] {
                if p != m {
                    return Ok(Some(DivisibilityWitness {
                        x: x.to_string(),
                        y: y.to_string(),
                        side,
                        product: p.to_string(),
                        meet: m.to_string(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::FiniteFrame;
    use crate::reslat::{lukasiewicz_chain, smallest_non_prelinear, two_chain};

    #[test]
    fn axioms_hold_on_small_kites() {
        let cfg = RunBudget::default();
        for frame in [
            FiniteFrame::cycle(2),
            FiniteFrame::path(2),
            FiniteFrame::identity(2),
            FiniteFrame::empty(),
        ] {
            let k = Kite::new(two_chain(), frame);
            for r in axiom_suite(&k, &cfg).unwrap() {
                assert!(r.passed(), "{r:?}");
                assert!(r.exhaustive);
                assert_eq!(r.checked, r.planned);
            }
        }
    }

    #[test]
    fn sampling_and_truncation() {
        let k = Kite::new(lukasiewicz_chain(4), FiniteFrame::cycle(4));
        let cfg = RunBudget {
            samples: 300,
            budget: 200,
            ..RunBudget::default()
        };
        let r = &axiom_suite(&k, &cfg).unwrap()[0];
        assert!(!r.exhaustive && r.truncated());
        assert_eq!((r.checked, r.planned), (200, 300));
        assert!(r.passed());
    }

    #[test]
    fn prelinearity_both_directions() {
        let cfg = RunBudget::default();
        let k = Kite::new(lukasiewicz_chain(3), FiniteFrame::path(2));
        let r = prelinearity_transfer_check(&k, &cfg).unwrap();
        assert!(r.lattice_prelinear && r.pairs.passed() && r.agrees);
        let k = Kite::new(smallest_non_prelinear(), FiniteFrame::cycle(2));
        let r = prelinearity_transfer_check(&k, &cfg).unwrap();
        assert!(!r.lattice_prelinear && r.constant_probe_fails && r.agrees);
        let k = Kite::new(two_chain(), FiniteFrame::empty());
        assert!(prelinearity_transfer_check(&k, &cfg).unwrap().pairs.passed());
    }

    #[test]
    fn divisibility_fails_on_short_path() {
        let k = Kite::new(two_chain(), FiniteFrame::path(1));
        let w = divisibility_search(&k, 1).unwrap().unwrap();
        assert_eq!((w.x.as_str(), w.y.as_str()), ("@0[0,0]", "@1[1]"));
        // entries below the divisor's level get cut down to x_{lambda(i)} meet y_i
        let k = Kite::new(two_chain(), FiniteFrame::cycle(2));
        assert!(divisibility_search(&k, 2).unwrap().is_some());
        let k = Kite::new(two_chain(), FiniteFrame::empty());
        assert!(divisibility_search(&k, 3).unwrap().is_none());
        let k = Kite::new(two_chain(), FiniteFrame::singleton_tail());
        assert!(divisibility_search(&k, 3).unwrap().is_none());
    }
}
