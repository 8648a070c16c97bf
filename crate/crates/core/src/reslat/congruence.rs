use super::{FiniteResLat, Op};

/// An equivalence relation on the carrier, stored as class indices.
/// Classes are numbered by their least member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Congruence {
    pub(crate) fn from_classes(class_of: Vec<usize>, classes: Vec<Vec<usize>>) -> Self {
        Self { class_of, classes }
    }

    fn from_roots(roots: &[usize]) -> Self {
        let n = roots.len();
        let mut id_of_root = vec![usize::MAX; n];
        let mut class_of = vec![0; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = roots[x];
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = classes.len();
                classes.push(Vec::new());
            }
            class_of[x] = id_of_root[r];
            classes[id_of_root[r]].push(x);
        }
        Self { class_of, classes }
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// The identity relation.
    pub fn is_trivial(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }

    /// Pairwise intersection.
    pub fn intersect(&self, other: &Self) -> Self {
        let n = self.class_of.len();
        let roots: Vec<usize> = (0..n)
            .map(|x| {
                (0..=x)
                    .find(|&y| self.related(x, y) && other.related(x, y))
                    .unwrap_or(x)
            })
            .collect();
        Self::from_roots(&roots)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra == rb {
        return false;
    }
    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
    parent[hi] = lo;
    true
}

impl FiniteResLat {
    /// Least congruence identifying `a` and `b`: union-find closed under
    /// translations by every operation in either argument.
    pub fn principal_congruence(&self, a: usize, b: usize) -> Congruence {
        let n = self.size();
        let mut parent: Vec<usize> = (0..n).collect();
        union(&mut parent, a, b);
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in x + 1..n {
                    if find(&mut parent, x) != find(&mut parent, y) {
                        continue;
                    }
                    for op in Op::ALL {
                        for z in 0..n {
                            changed |= union(&mut parent, self.apply(op, x, z), self.apply(op, y, z));
                            changed |= union(&mut parent, self.apply(op, z, x), self.apply(op, z, y));
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
        Congruence::from_roots(&roots)
    }

    /// Subdirect irreducibility computed from congruences alone: the
    /// intersection of all non-trivial principal congruences is non-trivial.
    /// The one-element algebra counts as irreducible.
    pub fn si_by_congruences(&self) -> bool {
        let n = self.size();
        let mut meet: Option<Congruence> = None;
        for a in 0..n {
            for b in a + 1..n {
                let c = self.principal_congruence(a, b);
                meet = Some(match meet {
                    None => c,
                    Some(m) => m.intersect(&c),
                });
            }
        }
        meet.is_none_or(|m| !m.is_trivial())
    }

    /// The `e`-class of a congruence, which is a normal filter.
    pub fn kernel_filter(&self, c: &Congruence) -> Vec<usize> {
        c.classes()[c.class_of(self.unit())].clone()
    }
}
