use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{approx, search_witness, ApproxWitness, Embedding, EmbeddingKind, TruncatedElement};
use crate::error::EmbedError;
use crate::kite::symbolic::SparseElement;
use crate::reslat::FiniteResLat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EmbedConfig {
    /// Largest sampled level.
    pub depth: usize,
    pub samples: u64,
    pub seed: u64,
    /// Truncation bound `K`.
    pub k_max: usize,
    pub max_support: usize,
    /// Sampled supports lie in a window of this radius.
    pub radius: usize,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        Self {
            depth: 3,
            samples: 1000,
            seed: 0,
            k_max: 12,
            max_support: 4,
            radius: 4,
        }
    }
}

/// First disagreement between the image of a result and the result computed
/// in the product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorDiff {
    pub inputs: Vec<String>,
    pub k: usize,
    /// Source index, or `None` when the levels differ.
    pub index: Option<i64>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpCheck {
    pub name: String,
    /// `None` for exact comparison.
    pub modulo: Option<String>,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<FactorDiff>,
    /// Largest least witness seen, for checks modulo the congruence.
    pub largest_witness: Option<ApproxWitness>,
}

impl OpCheck {
    fn new(name: &str, modulo: Option<&str>) -> Self {
        Self {
            name: name.to_string(),
            modulo: modulo.map(str::to_string),
            checked: 0,
            failures: 0,
            first_failure: None,
            largest_witness: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn fail(&mut self, diff: FactorDiff) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(diff);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub kind: EmbeddingKind,
    pub lattice_size: usize,
    pub config: EmbedConfig,
    /// Residue offset of the cyclic factors; zero for the path families.
    pub offset: i64,
    pub ops: Vec<OpCheck>,
    pub injectivity: OpCheck,
    /// Cyclic factors only: the same comparisons restricted to factors with
    /// `k >= radius + m + n`, where no index wraps around.
    pub wrap_free: Vec<OpCheck>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.ops.iter().all(OpCheck::passed) && self.injectivity.passed()
    }

    pub fn wrap_free_passed(&self) -> bool {
        self.wrap_free.iter().all(OpCheck::passed) && self.injectivity.passed()
    }
}

impl Embedding {
    fn source_index(&self, k: usize, label: usize) -> i64 {
        match self.kind {
            EmbeddingKind::Phi2 => super::residue_rep(label, k),
            _ => label as i64,
        }
    }

    /// First factor `k >= from` where `a` and `b` differ.
    fn first_diff(
        &self,
        a: &TruncatedElement,
        b: &TruncatedElement,
        from: usize,
    ) -> Option<(usize, Option<i64>, String, String)> {
        for ((k, x), (_, y)) in a.factors().zip(b.factors()) {
            if k < from {
                continue;
            }
            if x.level() != y.level() {
                return Some((k, None, x.level().to_string(), y.level().to_string()));
            }
            let labels = self.target.factor_kite(k).frame().level(x.level());
            if let Some(p) = (0..labels.len()).find(|&p| x.values()[p] != y.values()[p]) {
                return Some((
                    k,
                    Some(self.source_index(k, labels[p])),
                    x.values()[p].to_string(),
                    y.values()[p].to_string(),
                ));
            }
        }
        None
    }
}

fn exact(
    emb: &Embedding,
    check: &mut OpCheck,
    inputs: &[&SparseElement],
    expected: &TruncatedElement,
    actual: &TruncatedElement,
    from: usize,
) {
    check.checked += 1;
    if let Some((k, index, e, a)) = emb.first_diff(expected, actual, from) {
        check.fail(FactorDiff {
            inputs: inputs.iter().map(|x| x.to_string()).collect(),
            k,
            index,
            expected: e,
            actual: a,
        });
    }
}

fn modulo(
    emb: &Embedding,
    check: &mut OpCheck,
    inputs: &[&SparseElement],
    expected: &TruncatedElement,
    actual: &TruncatedElement,
    w: ApproxWitness,
) {
    check.checked += 1;
    let v = approx(expected, actual, w);
    if v.holds() {
        if let super::ApproxVerdict::HoldsUpToK { witness, .. } = search_witness(expected, actual, w.d) {
            check.largest_witness = check.largest_witness.max(Some(witness));
        }
    } else {
        let (k, index, e, a) =
            emb.first_diff(expected, actual, w.k0)
                .unwrap_or((w.k0, None, String::new(), String::new()));
        check.fail(FactorDiff {
            inputs: inputs.iter().map(|x| x.to_string()).collect(),
            k,
            index,
            expected: e,
            actual: a,
        });
    }
}

/// Samples pairs from the infinite kite and compares the image of each
/// operation with the operation on the images.
///
/// Products, meets and joins are compared exactly everywhere. Left division
/// through the forward paths and right division through the backward paths
/// are compared modulo the congruence, with witness `(m + 1, n)` and
/// `(n, m)` respectively (`m`, `n` the levels of dividend and divisor);
/// every other quotient is compared exactly. Distinct equal-level inputs
/// must have inequivalent images.
pub fn check_embedding(emb: &Embedding, cfg: &EmbedConfig) -> Result<EmbeddingReport, EmbedError> {
    let sk = emb.source();
    let prod = emb.target();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(20 + emb.kind() as u64);
    let cyclic = emb.kind() == EmbeddingKind::Phi2;
    let ldiv_mod = (emb.kind() == EmbeddingKind::Phi1).then_some("approx");
    let rdiv_mod = (emb.kind() == EmbeddingKind::Phi3).then_some("approx");
    let names = ["product", "meet", "join", "left division", "right division"];
    let mut ops: Vec<OpCheck> = names
        .iter()
        .enumerate()
        .map(|(i, n)| {
            OpCheck::new(
                n,
                if i == 3 {
                    ldiv_mod
                } else if i == 4 {
                    rdiv_mod
                } else {
                    None
                },
            )
        })
        .collect();
    let mut wrap_free: Vec<OpCheck> = if cyclic {
        names.iter().map(|n| OpCheck::new(n, None)).collect()
    } else {
        Vec::new()
    };
    for _ in 0..cfg.samples {
        let x = sk.random(&mut rng, cfg.depth, cfg.max_support, cfg.radius);
        let y = sk.random(&mut rng, cfg.depth, cfg.max_support, cfg.radius);
        let (ix, iy) = (emb.image(&x)?, emb.image(&y)?);
        let (m, n) = (x.level(), y.level());
        let pairs = [
            (emb.image(&sk.mul(&x, &y))?, prod.mul(&ix, &iy)?),
            (emb.image(&sk.meet(&x, &y))?, prod.meet(&ix, &iy)?),
            (emb.image(&sk.join(&x, &y))?, prod.join(&ix, &iy)?),
            // y ⑊ x: y divides, x is the dividend
            (emb.image(&sk.ldiv(&y, &x))?, prod.ldiv(&iy, &ix)?),
            // x ⫽ y: x is the dividend, y divides
            (emb.image(&sk.rdiv(&x, &y))?, prod.rdiv(&ix, &iy)?),
        ];
        for (op, (want, got)) in pairs.iter().enumerate() {
            let inputs = [&x, &y];
            match op {
                3 if ldiv_mod.is_some() && n <= m => {
                    modulo(emb, &mut ops[op], &inputs, want, got, ApproxWitness { k0: m + 1, d: n });
                }
                4 if rdiv_mod.is_some() && n <= m => {
                    modulo(emb, &mut ops[op], &inputs, want, got, ApproxWitness { k0: m, d: n });
                }
                _ => exact(emb, &mut ops[op], &inputs, want, got, 0),
            }
            if cyclic {
                exact(emb, &mut wrap_free[op], &inputs, want, got, cfg.radius + m + n);
            }
        }
    }

    let mut injectivity = OpCheck::new("injectivity", (!cyclic).then_some("approx"));
    let mut done = 0;
    while done < cfg.samples {
        let x = sk.random(&mut rng, cfg.depth, cfg.max_support, cfg.radius);
        let y = sk.random_at(&mut rng, x.level(), cfg.max_support, cfg.radius);
        if x == y {
            continue;
        }
        done += 1;
        let (ix, iy) = (emb.image(&x)?, emb.image(&y)?);
        injectivity.checked += 1;
        let m = x.level();
        let separated = if cyclic {
            ix != iy
        } else {
            // the witness from the injectivity argument, then every lag the
            // last factor can still see past the sampled window
            let lag = cfg.k_max.saturating_sub(m + cfg.radius);
            !approx(&ix, &iy, ApproxWitness { k0: m, d: 0 }).holds() && !search_witness(&ix, &iy, lag).holds()
        };
        if !separated {
            injectivity.fail(FactorDiff {
                inputs: vec![x.to_string(), y.to_string()],
                k: cfg.k_max,
                index: None,
                expected: "distinct".into(),
                actual: "equivalent".into(),
            });
        }
    }

    Ok(EmbeddingReport {
        kind: emb.kind(),
        lattice_size: sk.lattice().size(),
        config: *cfg,
        offset: if cyclic { emb.offset() } else { 0 },
        ops,
        injectivity,
        wrap_free,
    })
}

/// Exact-preservation failures of the cyclic map for each residue offset,
/// over all factors.
pub fn calibrate_phi2(
    lattice: &FiniteResLat,
    cfg: &EmbedConfig,
    offsets: &[i64],
) -> Result<Vec<(i64, u64)>, EmbedError> {
    offsets
        .iter()
        .map(|&off| {
            let emb = Embedding::with_offset(EmbeddingKind::Phi2, lattice.clone(), cfg.k_max, off);
            let r = check_embedding(&emb, cfg)?;
            Ok((off, r.ops.iter().map(|o| o.failures).sum()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reslat::{lukasiewicz_chain, two_chain};

    fn small() -> EmbedConfig {
        EmbedConfig {
            samples: 200,
            ..EmbedConfig::default()
        }
    }

    #[test]
    fn path_embeddings() {
        for g in [two_chain(), lukasiewicz_chain(3)] {
            for kind in [EmbeddingKind::Phi1, EmbeddingKind::Phi3] {
                let r = check_embedding(&Embedding::new(kind, g.clone(), 12), &small()).unwrap();
                assert!(r.passed(), "{r:#?}");
            }
        }
    }

    #[test]
    fn cyclic_embedding_is_exact_away_from_the_seam() {
        let r = check_embedding(&Embedding::new(EmbeddingKind::Phi2, two_chain(), 12), &small()).unwrap();
        assert!(r.wrap_free_passed(), "{r:#?}");
        // small cycles fold the support onto itself
        assert!(!r.ops[0].passed());
        let d = r.ops[0].first_failure.as_ref().unwrap();
        assert!(d.k < small().radius + 2 * small().depth);
    }

    #[test]
    fn division_witness_is_needed() {
        // without the congruence the forward paths lose left division
        let g = two_chain();
        let emb = Embedding::new(EmbeddingKind::Phi1, g.clone(), 6);
        // the factor quotient ends in e where the source still has 0
        let x = emb.source().element(1, (0..4).map(|i| (i, 0))).unwrap();
        let y = emb.source().unit_at(1);
        let want = emb.image(&emb.source().ldiv(&y, &x)).unwrap();
        let got = emb
            .target()
            .ldiv(&emb.image(&y).unwrap(), &emb.image(&x).unwrap())
            .unwrap();
        assert_ne!(want, got);
        assert!(approx(&want, &got, ApproxWitness { k0: 2, d: 1 }).holds());
    }

    #[test]
    fn calibration_ties_across_offsets() {
        // shifting the offset rotates every cyclic factor, an automorphism,
        // so no offset does better than another
        let cal = calibrate_phi2(&two_chain(), &small(), &[-1, 0, 1, 2]).unwrap();
        assert!(cal.iter().all(|c| c.1 == cal[0].1), "{cal:?}");
        assert!(cal.iter().any(|c| c.0 == super::super::PHI2_OFFSET));
    }
}
