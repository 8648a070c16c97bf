use serde::Serialize;

use super::{Congruence, FiniteResLat, Op};
use crate::error::LatticeError;

/// A filter of a finite residuated lattice. `normal` is computed, never
/// taken on trust.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticeFilter {
    members: Vec<usize>,
    normal: bool,
}

impl LatticeFilter {
    /// Validates `members` as a filter of `l` and records whether it is normal.
    pub fn new(l: &FiniteResLat, members: &[usize]) -> Option<Self> {
        let mask = to_mask(l, members)?;
        if !is_filter(l, &mask) {
            return None;
        }
        Some(Self {
            normal: is_normal(l, &mask),
            members: from_mask(&mask),
        })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `{e}`
    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

/// Outcome of the subdirect irreducibility test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiVerdict {
    /// The one-element algebra; reported as irreducible by convention.
    pub trivial: bool,
    pub irreducible: bool,
    /// Least non-trivial normal filter, when irreducible and non-trivial.
    pub monolith: Option<LatticeFilter>,
}

fn to_mask(l: &FiniteResLat, members: &[usize]) -> Option<Vec<bool>> {
    let mut mask = vec![false; l.size()];
    for &m in members {
        *mask.get_mut(m)? = true;
    }
    Some(mask)
}

fn from_mask(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter_map(|(i, &b)| b.then_some(i)).collect()
}

fn is_filter(l: &FiniteResLat, mask: &[bool]) -> bool {
    let n = l.size();
    mask[l.unit()]
        && (0..n).all(|x| !mask[x] || (0..n).all(|y| (!mask[y] || mask[l.mul(x, y)]) && (!l.leq(x, y) || mask[y])))
}

fn is_normal(l: &FiniteResLat, mask: &[bool]) -> bool {
    let n = l.size();
    (0..n).all(|x| !mask[x] || (0..n).all(|y| mask[l.left_conjugate(y, x)] && mask[l.right_conjugate(y, x)]))
}

impl FiniteResLat {
    /// The least filter (normal filter when `normal`) containing `generators`,
    /// computed as a fixpoint of conjugation, products and upward closure.
    ///
    /// Out-of-range generators are ignored.
    pub fn filter_generated(&self, generators: &[usize], normal: bool) -> LatticeFilter {
        let n = self.size();
        let mut mask = vec![false; n];
        mask[self.unit()] = true;
        for &g in generators {
            if g < n {
                mask[g] = true;
            }
        }
        loop {
            let mut next = mask.clone();
            for x in (0..n).filter(|&x| mask[x]) {
                for y in 0..n {
                    if normal {
                        next[self.left_conjugate(y, x)] = true;
                        next[self.right_conjugate(y, x)] = true;
                    }
                    if mask[y] {
                        next[self.mul(x, y)] = true;
                    }
                    if self.leq(x, y) {
                        next[y] = true;
                    }
                }
            }
            if next == mask {
                break;
            }
            mask = next;
        }
        LatticeFilter {
            normal: normal || is_normal(self, &mask),
            members: from_mask(&mask),
        }
    }

    pub fn is_normal_filter(&self, members: &[usize]) -> bool {
        to_mask(self, members).is_some_and(|m| is_filter(self, &m) && is_normal(self, &m))
    }

    /// Every normal filter exactly once, ordered by size then members.
    ///
    /// In a finite integral residuated lattice every filter is principal
    /// (it contains the product, hence the meet, of its members), so the
    /// normal filters are exactly those generated by single elements.
    pub fn all_normal_filters(&self) -> Vec<LatticeFilter> {
        let mut out: Vec<LatticeFilter> = (0..self.size()).map(|x| self.filter_generated(&[x], true)).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
        out.dedup();
        out
    }

    /// The congruence `x ~ y iff x/y, y/x in F` of a normal filter.
    pub fn congruence_of(&self, filter: &LatticeFilter) -> Result<Congruence, LatticeError> {
        if !self.is_normal_filter(filter.members()) {
            return Err(LatticeError::NotNormalFilter(filter.members().to_vec()));
        }
        let n = self.size();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let class: Vec<usize> = (x..n)
                .filter(|&y| filter.contains(self.rdiv(x, y)) && filter.contains(self.rdiv(y, x)))
                .collect();
            for &y in &class {
                class_of[y] = id;
            }
            classes.push(class);
        }
        Ok(Congruence::from_classes(class_of, classes))
    }

    /// Quotient by a normal filter, with the canonical projection
    /// (element to class index).
    pub fn quotient_with_projection(&self, filter: &LatticeFilter) -> Result<(FiniteResLat, Vec<usize>), LatticeError> {
        let cong = self.congruence_of(filter)?;
        let k = cong.num_classes();
        let reps: Vec<usize> = cong.classes().iter().map(|c| c[0]).collect();
        let mut tables: [Vec<usize>; 5] = Default::default();
        for (t, op) in tables.iter_mut().zip(Op::ALL) {
            *t = (0..k * k)
                .map(|ij| cong.class_of(self.apply(op, reps[ij / k], reps[ij % k])))
                .collect();
        }
        let [meet, join, mul, ldiv, rdiv] = tables;
        let q = FiniteResLat::from_tables(k, cong.class_of(self.unit()), meet, join, mul, ldiv, rdiv)?;
        let projection = (0..self.size()).map(|x| cong.class_of(x)).collect();
        Ok((q, projection))
    }

    pub fn quotient(&self, filter: &LatticeFilter) -> Result<FiniteResLat, LatticeError> {
        self.quotient_with_projection(filter).map(|(q, _)| q)
    }

    /// Subdirect irreducibility via normal filters: irreducible iff the
    /// non-trivial normal filters have a least element.
    pub fn is_subdirectly_irreducible(&self) -> SiVerdict {
        if self.is_trivial() {
            return SiVerdict {
                trivial: true,
                irreducible: true,
                monolith: None,
            };
        }
        let nontrivial: Vec<LatticeFilter> = self
            .all_normal_filters()
            .into_iter()
            .filter(|f| !f.is_trivial())
            .collect();
        let monolith = nontrivial
            .iter()
            .find(|f| nontrivial.iter().all(|g| f.members().iter().all(|&x| g.contains(x))))
            .cloned();
        SiVerdict {
            trivial: false,
            irreducible: monolith.is_some(),
            monolith,
        }
    }
}
