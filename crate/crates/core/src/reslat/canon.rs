use super::{FiniteResLat, Op};

/// Isomorphism-invariant key of a finite residuated lattice.
///
/// Computed as the lexicographically least concatenation of the unit and the
/// five tables over all order-preserving relabelings (labelings along a linear
/// extension of the order). Cost grows with the number of linear extensions,
/// so this is meant for small carriers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub Vec<usize>);

impl FiniteResLat {
    /// Returns the canonical form together with the relabeling (old to new)
    /// that produces it.
    pub fn canonical_labeling(&self) -> (CanonicalForm, Vec<usize>) {
        let n = self.size();
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        let mut perm = vec![usize::MAX; n];
        let mut placed = vec![false; n];
        linear_extensions(self, 0, &mut perm, &mut placed, &mut |perm| {
            let key = self.key_under(perm);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, perm.to_vec()));
            }
        });
        let (key, perm) = best.expect("every finite poset has a linear extension");
        (CanonicalForm(key), perm)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        self.canonical_labeling().0
    }

    /// The relabeled copy realising the canonical form.
    pub fn canonicalize(&self) -> Self {
        let (_, perm) = self.canonical_labeling();
        self.relabel(&perm)
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.size() == other.size() && self.canonical_form() == other.canonical_form()
    }

    fn key_under(&self, perm: &[usize]) -> Vec<usize> {
        let n = self.size();
        let mut key = Vec::with_capacity(1 + 5 * n * n);
        key.push(perm[self.unit()]);
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        for op in Op::ALL {
            for a in 0..n {
                for b in 0..n {
                    key.push(perm[self.apply(op, inv[a], inv[b])]);
                }
            }
        }
        key
    }
}

/// Enumerates labelings where every element gets a larger label than all
/// elements strictly below it.
fn linear_extensions(
    l: &FiniteResLat,
    next: usize,
    perm: &mut Vec<usize>,
    placed: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]),
) {
    let n = l.size();
    if next == n {
        visit(perm);
        return;
    }
    for x in 0..n {
        if placed[x] {
            continue;
        }
        let ready = (0..n).all(|y| y == x || !l.leq(y, x) || placed[y]);
        if ready {
            placed[x] = true;
            perm[x] = next;
            linear_extensions(l, next + 1, perm, placed, visit);
            placed[x] = false;
            perm[x] = usize::MAX;
        }
    }
}
