use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{EmbedConfig, FactorFamily, TruncatedElement, TruncatedProduct};
use crate::error::EmbedError;

/// `(k0, d)`: from factor `k0` on, the two elements agree on `I^k_m`
/// except possibly its last `d` indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ApproxWitness {
    pub k0: usize,
    pub d: usize,
}

impl ApproxWitness {
    /// `k0 >= level` and `d <= k0 - level`.
    pub fn new(k0: usize, d: usize, level: usize) -> Option<Self> {
        let w = Self { k0, d };
        w.admissible(level).then_some(w)
    }

    pub fn admissible(&self, level: usize) -> bool {
        self.k0 >= level && self.d <= self.k0 - level
    }

    /// Raises `k0` until the witness is admissible at `level`.
    pub fn clamped(self, level: usize) -> Self {
        Self {
            k0: self.k0.max(level + self.d),
            d: self.d,
        }
    }
}

/// The relation can only be refuted or supported on a finite window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ApproxVerdict {
    LevelMismatch {
        left: usize,
        right: usize,
    },
    InadmissibleWitness(ApproxWitness),
    /// Factors `k` differ at a position inside the compared prefix.
    Refuted {
        k: usize,
        position: usize,
    },
    /// No admissible witness with lag up to the bound survives the window.
    NoWitness {
        max_lag: usize,
    },
    /// The witness survives factors `k0..=K`; `checked` of them exist.
    HoldsUpToK {
        witness: ApproxWitness,
        checked: usize,
    },
}

impl ApproxVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, Self::HoldsUpToK { .. })
    }

    /// Holds on at least one factor.
    pub fn holds_non_vacuously(&self) -> bool {
        matches!(self, Self::HoldsUpToK { checked, .. } if *checked > 0)
    }
}

/// Checks `a ≈ b` with the given witness on the factors `k0..=K`.
///
/// The same test covers both path families: the compared prefix is `I^k_m`
/// minus its `d` largest indices, which is `0..=k-m-d` for forward paths
/// and `m..=k-d` for backward paths.
pub fn approx(a: &TruncatedElement, b: &TruncatedElement, w: ApproxWitness) -> ApproxVerdict {
    if a.level() != b.level() {
        return ApproxVerdict::LevelMismatch {
            left: a.level(),
            right: b.level(),
        };
    }
    if !w.admissible(a.level()) {
        return ApproxVerdict::InadmissibleWitness(w);
    }
    let mut checked = 0;
    for ((k, x), (_, y)) in a.factors().zip(b.factors()) {
        if k < w.k0 {
            continue;
        }
        checked += 1;
        let keep = x.values().len().saturating_sub(w.d);
        if let Some(p) = (0..keep).find(|&p| x.values()[p] != y.values()[p]) {
            return ApproxVerdict::Refuted { k, position: p };
        }
    }
    ApproxVerdict::HoldsUpToK { witness: w, checked }
}

/// Least witness with `d <= max_lag` and `k0 <= K`, ordered by `d` and then
/// `k0`.
pub fn search_witness(a: &TruncatedElement, b: &TruncatedElement, max_lag: usize) -> ApproxVerdict {
    if a.level() != b.level() {
        return ApproxVerdict::LevelMismatch {
            left: a.level(),
            right: b.level(),
        };
    }
    let m = a.level();
    let k_max = a.k_max();
    for d in 0..=max_lag {
        for k0 in m + d..=k_max {
            let v = approx(a, b, ApproxWitness { k0, d });
            if v.holds() {
                return v;
            }
        }
    }
    ApproxVerdict::NoWitness { max_lag }
}

/// Outcome of one congruence law over sampled witness tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawTally {
    pub law: String,
    pub checked: u64,
    /// The composed witness starts beyond `K`, so nothing was compared.
    pub vacuous: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl LawTally {
    fn new(law: &str) -> Self {
        Self {
            law: law.to_string(),
            checked: 0,
            vacuous: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, v: &ApproxVerdict, what: impl FnOnce() -> String) {
        match v {
            ApproxVerdict::HoldsUpToK { checked: 0, .. } => self.vacuous += 1,
            v if v.holds() => self.checked += 1,
            v => {
                self.checked += 1;
                self.failures += 1;
                if self.first_failure.is_none() {
                    self.first_failure = Some(format!("{}: {v:?}", what()));
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub family: FactorFamily,
    pub k_max: usize,
    pub laws: Vec<LawTally>,
}

impl CongruenceReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.failures == 0 && l.checked > 0)
    }
}

/// Witness for `x·u ≈ y·v` from `x ≈ y` (level `m`) and `u ≈ v` (level `n`).
pub fn mul_witness(w1: ApproxWitness, w2: ApproxWitness, m: usize, n: usize) -> ApproxWitness {
    let d = w1.d.max(w2.d);
    ApproxWitness {
        k0: w1.k0.max(w2.k0) + m + n + d,
        d,
    }
    .clamped(m + n)
}

/// Witness for `u ⑊ x ≈ v ⑊ y` with `u, v` at level `n <= m`.
pub fn ldiv_witness(family: FactorFamily, w1: ApproxWitness, w2: ApproxWitness, m: usize, n: usize) -> ApproxWitness {
    let base = w1.k0.max(w2.k0);
    let w = match family {
        // the factor quotient ends in n copies of e
        FactorFamily::ForwardPath => {
            let d = w1.d.max(w2.d).max(n);
            ApproxWitness {
                k0: base.max(2 * (m - n) + d),
                d: d + n,
            }
        }
        _ => {
            let d = w1.d.max(w2.d);
            ApproxWitness {
                k0: base + m + n + d,
                d,
            }
        }
    };
    w.clamped(m - n)
}

/// Witness for `u ⫽ x ≈ v ⫽ y` with `u, v` at level `n >= m`.
pub fn rdiv_witness(family: FactorFamily, w1: ApproxWitness, w2: ApproxWitness, m: usize, n: usize) -> ApproxWitness {
    let base = w1.k0.max(w2.k0);
    let d = w1.d.max(w2.d);
    let w = match family {
        FactorFamily::ForwardPath => ApproxWitness {
            k0: (base + m + n).saturating_sub(d).max(base),
            d,
        },
        // the factor quotient ends in m copies of e
        _ => ApproxWitness {
            k0: base + m + n + d,
            d: d + m,
        },
    };
    w.clamped(n - m)
}

fn random_element(p: &TruncatedProduct, rng: &mut ChaCha8Rng, level: usize) -> TruncatedElement {
    let size = p.lattice().size();
    let values = p
        .k_range()
        .map(|k| {
            let len = p.factor_kite(k).frame().level(level).len();
            (0..len).map(|_| rng.gen_range(0..size)).collect()
        })
        .collect();
    p.element(level, values).expect("values fit their factors")
}

/// A copy of `a` that is arbitrary below `k0` and differs at most in the
/// last `d` positions from `k0` on.
fn perturb(p: &TruncatedProduct, rng: &mut ChaCha8Rng, a: &TruncatedElement, w: ApproxWitness) -> TruncatedElement {
    let size = p.lattice().size();
    let values = a
        .factors()
        .map(|(k, x)| {
            let len = x.values().len();
            (0..len)
                .map(|pos| {
                    if k >= w.k0 && pos + w.d < len {
                        x.values()[pos]
                    } else {
                        rng.gen_range(0..size)
                    }
                })
                .collect()
        })
        .collect();
    p.element(a.level(), values).expect("values fit their factors")
}

fn random_witness(rng: &mut ChaCha8Rng, level: usize, k_max: usize) -> ApproxWitness {
    let k0 = rng.gen_range(level..=(level + 3).min(k_max.max(level)));
    let d = rng.gen_range(0..=(k0 - level).min(2));
    ApproxWitness { k0, d }
}

/// Samples `x ≈ y` and `u ≈ v` with explicit witnesses and checks that the
/// relation is an equivalence compatible with the operations, using the
/// composed witnesses.
pub fn check_congruence(product: &TruncatedProduct, cfg: &EmbedConfig) -> Result<CongruenceReport, EmbedError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(match product.family() {
        FactorFamily::ForwardPath => 11,
        FactorFamily::Cycle => 12,
        FactorFamily::BackwardPath => 13,
    });
    let k_max = product.k_max();
    let mut refl = LawTally::new("reflexive");
    let mut sym = LawTally::new("symmetric");
    let mut trans = LawTally::new("transitive");
    let mut mul = LawTally::new("compatible with product");
    let mut ldiv = LawTally::new("compatible with left division");
    let mut rdiv = LawTally::new("compatible with right division");
    for _ in 0..cfg.samples {
        let m = rng.gen_range(0..=cfg.depth.min(k_max));
        let n = rng.gen_range(0..=cfg.depth.min(k_max));
        let x = random_element(product, &mut rng, m);
        let w1 = random_witness(&mut rng, m, k_max);
        let y = perturb(product, &mut rng, &x, w1);
        let w3 = random_witness(&mut rng, m, k_max);
        let z = perturb(product, &mut rng, &y, w3);
        let u = random_element(product, &mut rng, n);
        let w2 = random_witness(&mut rng, n, k_max);
        let v = perturb(product, &mut rng, &u, w2);
        let show = |parts: &[&TruncatedElement]| parts.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ; ");

        refl.record(&approx(&x, &x, ApproxWitness { k0: m, d: 0 }), || show(&[&x]));
        sym.record(&approx(&y, &x, w1), || show(&[&x, &y]));
        let wt = ApproxWitness {
            k0: w1.k0.max(w3.k0),
            d: w1.d.max(w3.d),
        };
        trans.record(&approx(&x, &z, wt), || show(&[&x, &y, &z]));

        let wm = mul_witness(w1, w2, m, n);
        mul.record(&approx(&product.mul(&x, &u)?, &product.mul(&y, &v)?, wm), || {
            show(&[&x, &y, &u, &v])
        });
        if n <= m {
            let w = ldiv_witness(product.family(), w1, w2, m, n);
            ldiv.record(&approx(&product.ldiv(&u, &x)?, &product.ldiv(&v, &y)?, w), || {
                show(&[&x, &y, &u, &v])
            });
        }
        if m <= n {
            let w = rdiv_witness(product.family(), w1, w2, m, n);
            rdiv.record(&approx(&product.rdiv(&u, &x)?, &product.rdiv(&v, &y)?, w), || {
                show(&[&x, &y, &u, &v])
            });
        }
    }
    Ok(CongruenceReport {
        family: product.family(),
        k_max,
        laws: vec![refl, sym, trans, mul, ldiv, rdiv],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reslat::{lukasiewicz_chain, two_chain};

    fn product(family: FactorFamily, k: usize) -> TruncatedProduct {
        TruncatedProduct::new(family, two_chain(), k)
    }

    #[test]
    fn reflexive_and_index_zero() {
        let p = product(FactorFamily::ForwardPath, 6);
        let top = p.top();
        assert!(approx(&top, &top, ApproxWitness { k0: 0, d: 0 }).holds());
        // b differs from a at index 0 of every factor
        let a = p.element(1, (1..=6).map(|k| vec![1; k]).collect()).unwrap();
        let b = p
            .element(
                1,
                (1..=6).map(|k| (0..k).map(|i| usize::from(i != 0)).collect()).collect(),
            )
            .unwrap();
        assert_eq!(search_witness(&a, &b, 5), ApproxVerdict::NoWitness { max_lag: 5 });
        assert_eq!(
            approx(&a, &b, ApproxWitness { k0: 1, d: 0 }),
            ApproxVerdict::Refuted { k: 1, position: 0 }
        );
    }

    #[test]
    fn tail_differences_are_absorbed() {
        let p = product(FactorFamily::ForwardPath, 6);
        // differ only at the last index of each factor
        let a = p.element(0, (1..=6).map(|k| vec![1; k + 1]).collect()).unwrap();
        let b = p
            .element(
                0,
                (1..=6)
                    .map(|k| (0..=k).map(|i| usize::from(i != k)).collect())
                    .collect(),
            )
            .unwrap();
        assert!(!approx(&a, &b, ApproxWitness { k0: 1, d: 0 }).holds());
        let found = search_witness(&a, &b, 3);
        assert_eq!(
            found,
            ApproxVerdict::HoldsUpToK {
                witness: ApproxWitness { k0: 1, d: 1 },
                checked: 6
            }
        );
        assert!(matches!(
            approx(&a, &b, ApproxWitness { k0: 0, d: 1 }),
            ApproxVerdict::InadmissibleWitness(_)
        ));
        let c = p.element(1, (1..=6).map(|k| vec![1; k]).collect()).unwrap();
        assert!(matches!(search_witness(&a, &c, 2), ApproxVerdict::LevelMismatch { .. }));
    }

    #[test]
    fn witness_bounds() {
        assert!(ApproxWitness::new(3, 2, 1).is_some());
        assert!(ApproxWitness::new(3, 3, 1).is_none());
        assert_eq!(ApproxWitness { k0: 2, d: 3 }.clamped(1), ApproxWitness { k0: 4, d: 3 });
    }

    #[test]
    fn congruence_laws_hold_on_both_path_families() {
        let cfg = EmbedConfig {
            samples: 300,
            ..EmbedConfig::default()
        };
        for family in [FactorFamily::ForwardPath, FactorFamily::BackwardPath] {
            for g in [two_chain(), lukasiewicz_chain(3)] {
                let r = check_congruence(&TruncatedProduct::new(family, g, cfg.k_max), &cfg).unwrap();
                assert!(r.passed(), "{r:#?}");
            }
        }
    }
}
