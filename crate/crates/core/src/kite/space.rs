use rand::Rng;

use super::{Kite, KiteElement};

/// The elements of a kite at levels `0..=depth`.
#[derive(Debug, Clone, Copy)]
pub struct ElementSpace<'a> {
    kite: &'a Kite,
    depth: usize,
}

impl<'a> ElementSpace<'a> {
    pub fn new(kite: &'a Kite, depth: usize) -> Self {
        Self { kite, depth }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `|G|^|I_n|`, saturating.
    pub fn count_at(&self, level: usize) -> u128 {
        let g = self.kite.lattice().size() as u128;
        let d = self.kite.frame().level(level).len() as u32;
        g.checked_pow(d).unwrap_or(u128::MAX)
    }

    /// Number of elements at levels `0..=depth`, saturating.
    pub fn count(&self) -> u128 {
        (0..=self.depth).fold(0u128, |acc, n| acc.saturating_add(self.count_at(n)))
    }

    /// Every element at `level`, values in lexicographic order.
    pub fn all_at(&self, level: usize) -> Vec<KiteElement> {
        let g = self.kite.lattice().size();
        let d = self.kite.frame().level(level).len();
        let mut out = Vec::new();
        let mut values = vec![0; d];
        loop {
            out.push(KiteElement {
                level,
                values: values.clone(),
            });
            let Some(pos) = (0..d).rev().find(|&p| values[p] + 1 < g) else {
                break;
            };
            values[pos] += 1;
            for v in &mut values[pos + 1..] {
                *v = 0;
            }
        }
        out
    }

    /// Every element, by level then values.
    pub fn all(&self) -> Vec<KiteElement> {
        (0..=self.depth).flat_map(|n| self.all_at(n)).collect()
    }

    pub fn random_at<R: Rng + ?Sized>(&self, rng: &mut R, level: usize) -> KiteElement {
        let g = self.kite.lattice().size();
        let d = self.kite.frame().level(level).len();
        KiteElement {
            level,
            values: (0..d).map(|_| rng.gen_range(0..g)).collect(),
        }
    }

    /// Uniform level in `0..=depth`, then uniform values.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> KiteElement {
        let level = rng.gen_range(0..=self.depth);
        self.random_at(rng, level)
    }
}
