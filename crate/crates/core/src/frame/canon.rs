use super::FiniteFrame;

/// Shape of a component: a `lambda`-cycle or a maximal `lambda`-path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Shape {
    Cycle(usize),
    Path(usize),
}

impl FiniteFrame {
    /// Components with their shape and their elements in `lambda` order
    /// (a cycle starts at its least label, a path at its source).
    pub(crate) fn shaped_components(&self) -> Vec<(Shape, Vec<usize>)> {
        self.connected_components()
            .into_iter()
            .map(|comp| {
                let start = comp
                    .iter()
                    .copied()
                    .find(|&i| self.lambda_inv(i).is_none())
                    .unwrap_or(comp[0]);
                let mut order = vec![start];
                let mut cur = start;
                while let Some(next) = self.lambda(cur) {
                    if next == start {
                        break;
                    }
                    order.push(next);
                    cur = next;
                }
                let shape = if self.lambda(cur) == Some(start) {
                    Shape::Cycle(order.len())
                } else {
                    Shape::Path(order.len())
                };
                (shape, order)
            })
            .collect()
    }

    /// The canonical representative and the relabeling (old to new) onto it.
    ///
    /// Components are laid out in consecutive blocks ordered by shape
    /// (cycles before paths, shorter first, ties by least original label);
    /// inside a block `lambda(j) = j + 1`, wrapping for cycles.
    pub fn canonical(&self) -> (FiniteFrame, Vec<usize>) {
        let mut comps = self.shaped_components();
        comps.sort_by_key(|(shape, order)| (*shape, *order.iter().min().unwrap()));
        let mut perm = vec![0; self.size()];
        let mut next = 0;
        for (_, order) in &comps {
            for &i in order {
                perm[i] = next;
                next += 1;
            }
        }
        (self.relabel(&perm), perm)
    }

    /// A bijection `b` with `b(I1) = J1` and `b . lambda = kappa . b`, if any.
    pub fn isomorphism_to(&self, other: &FiniteFrame) -> Option<Vec<usize>> {
        if self.size() != other.size() {
            return None;
        }
        let (c1, p1) = self.canonical();
        let (c2, p2) = other.canonical();
        if c1 != c2 {
            return None;
        }
        let mut inv2 = vec![0; p2.len()];
        for (old, &new) in p2.iter().enumerate() {
            inv2[new] = old;
        }
        Some(p1.iter().map(|&c| inv2[c]).collect())
    }

    /// Checks that `b` is a frame isomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &FiniteFrame, b: &[usize]) -> bool {
        let n = self.size();
        if other.size() != n || b.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &x in b {
            if x >= n || std::mem::replace(&mut hit[x], true) {
                return false;
            }
        }
        (0..n).all(|i| self.lambda(i).map(|j| b[j]) == other.lambda(b[i]))
    }
}

/// Frame isomorphism by canonical forms.
pub fn frame_isomorphic(a: &FiniteFrame, b: &FiniteFrame) -> Option<Vec<usize>> {
    a.isomorphism_to(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_isomorphism_is_identity_on_canonical_frames() {
        for f in [FiniteFrame::cycle(4), FiniteFrame::path(3), FiniteFrame::identity(3)] {
            assert_eq!(f.isomorphism_to(&f), Some((0..f.size()).collect()));
        }
    }

    #[test]
    fn relabeled_cycles_match() {
        let a = FiniteFrame::cycle(3);
        let b = FiniteFrame::new(3, &[(0, 2), (2, 1), (1, 0)]).unwrap();
        let iso = a.isomorphism_to(&b).unwrap();
        assert!(a.is_isomorphism(&b, &iso));
        assert_eq!(b.canonical().0, a);
    }

    #[test]
    fn cycle_and_path_differ() {
        assert!(FiniteFrame::cycle(3).isomorphism_to(&FiniteFrame::path(2)).is_none());
        assert!(FiniteFrame::cycle(3).isomorphism_to(&FiniteFrame::cycle(4)).is_none());
    }

    #[test]
    fn canonical_layout() {
        let f = FiniteFrame::path(2).disjoint_union(&FiniteFrame::cycle(2));
        let (c, perm) = f.canonical();
        assert_eq!(c, FiniteFrame::cycle(2).disjoint_union(&FiniteFrame::path(2)));
        assert!(f.is_isomorphism(&c, &perm));
        assert_eq!(FiniteFrame::backward_path(3).canonical().0, FiniteFrame::path(3));
    }
}
