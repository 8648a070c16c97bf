//! The kite over a finite frame: elements `<x_i : i in I_n>` at a level
//! `n`, ordered lexicographically (deeper levels below), with the product
//! and both divisions evaluated level-locally. The algebra is infinite, so
//! elements are built on demand; nothing is materialized.
//!
//! Division arguments follow adjointness:
//! `x * y <= z  <=>  y <= ldiv(x, z)  <=>  x <= rdiv(z, y)`.

mod check;
mod filter;
mod si;
mod space;
pub mod symbolic;

pub use check::{
    axiom_suite, divisibility_search, prelinearity_transfer_check, DivisibilityWitness, LawReport, PrelinearityReport,
    RunBudget,
};
pub use filter::{check_filter_laws, FilterLawReport, KiteFilterKind, KiteFilterPredicate};
pub use si::{
    component_quotient, decomposition_check, is_si_kite, separates, structural_example_check, ComponentReport,
    DecompositionReport, SiKiteReason, SiKiteVerdict, StructuralCheck, StructuralExample, StructuralReport,
};
pub use space::ElementSpace;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::KiteError;
use crate::frame::FiniteFrame;
use crate::reslat::FiniteResLat;

/// Default bound on element levels.
pub const DEFAULT_MAX_LEVEL: usize = 256;

/// An element `<x_i : i in I_n>`; `values` follows the ascending order of `I_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KiteElement {
    level: usize,
    values: Vec<usize>,
}

impl KiteElement {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// `@n[v0,v1,...]`
impl fmt::Display for KiteElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(usize::to_string).collect();
        write!(f, "@{}[{}]", self.level, vals.join(","))
    }
}

/// A parsed but unvalidated element literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementLiteral {
    pub level: usize,
    pub values: Vec<usize>,
}

impl FromStr for ElementLiteral {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let body = s
            .strip_prefix('@')
            .ok_or_else(|| format!("element literal `{s}` must start with `@`"))?;
        let (level, rest) = body
            .split_once('[')
            .ok_or_else(|| format!("element literal `{s}` is missing `[`"))?;
        let inner = rest
            .strip_suffix(']')
            .ok_or_else(|| format!("element literal `{s}` is missing `]`"))?;
        let level = level
            .trim()
            .parse()
            .map_err(|_| format!("bad level `{level}` in `{s}`"))?;
        let values = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse()
                        .map_err(|_| format!("bad value `{}` in `{s}`", v.trim()))
                })
                .collect::<Result<_, _>>()?
        };
        Ok(Self { level, values })
    }
}

/// The kite of a finite integral residuated lattice over a finite frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kite {
    lattice: FiniteResLat,
    frame: FiniteFrame,
    max_level: usize,
}

impl Kite {
    pub fn new(lattice: FiniteResLat, frame: FiniteFrame) -> Self {
        Self::with_max_level(lattice, frame, DEFAULT_MAX_LEVEL)
    }

    pub fn with_max_level(lattice: FiniteResLat, frame: FiniteFrame, max_level: usize) -> Self {
        Self {
            lattice,
            frame,
            max_level,
        }
    }

    pub fn lattice(&self) -> &FiniteResLat {
        &self.lattice
    }

    pub fn frame(&self) -> &FiniteFrame {
        &self.frame
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    fn check_level(&self, level: usize) -> Result<(), KiteError> {
        if level > self.max_level {
            Err(KiteError::DepthExceeded {
                level,
                max: self.max_level,
            })
        } else {
            Ok(())
        }
    }

    /// Validated element at `level` with `values` in ascending `I_level` order.
    pub fn element(&self, level: usize, values: Vec<usize>) -> Result<KiteElement, KiteError> {
        self.check_level(level)?;
        let expected = self.frame.level(level).len();
        if values.len() != expected {
            return Err(KiteError::WrongArity {
                level,
                len: values.len(),
                expected,
            });
        }
        if let Some(&value) = values.iter().find(|&&v| v >= self.lattice.size()) {
            return Err(KiteError::ValueOutOfRange {
                value,
                size: self.lattice.size(),
            });
        }
        Ok(KiteElement { level, values })
    }

    pub fn parse_element(&self, literal: &str) -> Result<KiteElement, String> {
        let lit: ElementLiteral = literal.parse()?;
        self.element(lit.level, lit.values).map_err(|e| e.to_string())
    }

    /// The element at `level` with every entry `value`.
    pub fn constant(&self, level: usize, value: usize) -> Result<KiteElement, KiteError> {
        self.element(level, vec![value; self.frame.level(level).len()])
    }

    /// The all-`e` element at `level`.
    pub fn unit_at(&self, level: usize) -> Result<KiteElement, KiteError> {
        self.constant(level, self.lattice.unit())
    }

    /// Level 0, every entry `e`.
    pub fn top(&self) -> KiteElement {
        KiteElement {
            level: 0,
            values: vec![self.lattice.unit(); self.frame.size()],
        }
    }

    /// Entry at index `i in I_n`.
    pub fn entry(&self, x: &KiteElement, i: usize) -> Result<usize, KiteError> {
        self.frame
            .position(x.level, i)
            .map(|p| x.values[p])
            .ok_or(KiteError::IndexNotInLevel {
                index: i as i64,
                level: x.level,
            })
    }

    fn at(&self, x: &KiteElement, i: usize) -> usize {
        x.values[self.frame.position(x.level, i).expect("index lies in the level set")]
    }

    pub fn leq(&self, x: &KiteElement, y: &KiteElement) -> bool {
        x.level > y.level
            || (x.level == y.level && x.values.iter().zip(&y.values).all(|(&a, &b)| self.lattice.leq(a, b)))
    }

    pub fn meet(&self, x: &KiteElement, y: &KiteElement) -> KiteElement {
        match x.level.cmp(&y.level) {
            std::cmp::Ordering::Greater => x.clone(),
            std::cmp::Ordering::Less => y.clone(),
            std::cmp::Ordering::Equal => KiteElement {
                level: x.level,
                values: x
                    .values
                    .iter()
                    .zip(&y.values)
                    .map(|(&a, &b)| self.lattice.meet(a, b))
                    .collect(),
            },
        }
    }

    pub fn join(&self, x: &KiteElement, y: &KiteElement) -> KiteElement {
        match x.level.cmp(&y.level) {
            std::cmp::Ordering::Less => x.clone(),
            std::cmp::Ordering::Greater => y.clone(),
            std::cmp::Ordering::Equal => KiteElement {
                level: x.level,
                values: x
                    .values
                    .iter()
                    .zip(&y.values)
                    .map(|(&a, &b)| self.lattice.join(a, b))
                    .collect(),
            },
        }
    }

    /// `x` at level `m`, `y` at level `n`: level `m + n`, entry
    /// `x_{lambda^n(i)} * y_i` at `i in I_{m+n}`.
    pub fn mul(&self, x: &KiteElement, y: &KiteElement) -> Result<KiteElement, KiteError> {
        let (m, n) = (x.level, y.level);
        let level = m + n;
        self.check_level(level)?;
        let values = self
            .frame
            .level(level)
            .iter()
            .map(|&i| {
                let j = self.frame.lambda_iter(i, n).expect("I_{m+n} maps into I_m");
                self.lattice.mul(self.at(x, j), self.at(y, i))
            })
            .collect();
        Ok(KiteElement { level, values })
    }

    /// `y ⑊ x` with `y` the divisor: top if `level(y) > level(x)`, else
    /// level `m - n` with entry `y_{lambda^{m-n}(i)} \ x_i` on `I_m` and `e`
    /// on `I_{m-n} \ I_m`.
    pub fn ldiv(&self, y: &KiteElement, x: &KiteElement) -> KiteElement {
        let (n, m) = (y.level, x.level);
        if n > m {
            return self.top();
        }
        let level = m - n;
        let values = self
            .frame
            .level(level)
            .iter()
            .map(|&i| {
                if self.frame.in_level(m, i) {
                    let j = self.frame.lambda_iter(i, m - n).expect("I_m maps into I_n");
                    self.lattice.ldiv(self.at(y, j), self.at(x, i))
                } else {
                    self.lattice.unit()
                }
            })
            .collect();
        KiteElement { level, values }
    }

    /// `y ⫽ x` with `x` the divisor: top if `level(x) > level(y)`, else level
    /// `n - m` with entry `y_j / x_j` at `i = lambda^m(j)` for `j in I_n`, and
    /// `e` off `lambda^m(I_n)`.
    pub fn rdiv(&self, y: &KiteElement, x: &KiteElement) -> KiteElement {
        let (n, m) = (y.level, x.level);
        if m > n {
            return self.top();
        }
        let level = n - m;
        let mut values = vec![self.lattice.unit(); self.frame.level(level).len()];
        for (pos, &j) in self.frame.level(n).iter().enumerate() {
            let i = self.frame.lambda_iter(j, m).expect("I_n maps into I_{n-m}");
            let slot = self.frame.position(level, i).expect("lambda^m(I_n) lies in I_{n-m}");
            values[slot] = self.lattice.rdiv(y.values[pos], self.at(x, j));
        }
        KiteElement { level, values }
    }

    /// The three adjointness statements for `(x, y, z)` agree.
    pub fn adjointness_holds(&self, x: &KiteElement, y: &KiteElement, z: &KiteElement) -> Result<bool, KiteError> {
        let a = self.leq(&self.mul(x, y)?, z);
        let b = self.leq(y, &self.ldiv(x, z));
        let c = self.leq(x, &self.rdiv(z, y));
        Ok(a == b && b == c)
    }

    /// Left conjugate `y ⑊ (x y)`.
    pub fn left_conjugate(&self, y: &KiteElement, x: &KiteElement) -> Result<KiteElement, KiteError> {
        Ok(self.ldiv(y, &self.mul(x, y)?))
    }

    /// Right conjugate `(y x) ⫽ y`.
    pub fn right_conjugate(&self, y: &KiteElement, x: &KiteElement) -> Result<KiteElement, KiteError> {
        Ok(self.rdiv(&self.mul(y, x)?, y))
    }

    /// Number of entries different from `e`.
    pub fn dimension(&self, x: &KiteElement) -> usize {
        x.values.iter().filter(|&&v| v != self.lattice.unit()).count()
    }

    /// The image `-level` in the negative cone of the integers.
    pub fn z_quotient(&self, x: &KiteElement) -> i64 {
        -(x.level as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reslat::{lukasiewicz_chain, two_chain};

    fn path_kite() -> Kite {
        Kite::new(two_chain(), FiniteFrame::path(3))
    }

    /// Straight-line evaluation of the three formulas over explicit index
    /// maps, independent of the dense-position bookkeeping in `Kite`.
    mod oracle {
        use super::*;
        use std::collections::BTreeMap;

        pub fn as_map(k: &Kite, x: &KiteElement) -> BTreeMap<usize, usize> {
            k.frame()
                .level(x.level())
                .iter()
                .copied()
                .zip(x.values().iter().copied())
                .collect()
        }

        fn lam(k: &Kite, i: usize, p: usize) -> Option<usize> {
            let mut cur = i;
            for _ in 0..p {
                cur = k.frame().lambda_table()[cur]?;
            }
            Some(cur)
        }

        pub fn mul(k: &Kite, x: &KiteElement, y: &KiteElement) -> BTreeMap<usize, usize> {
            let (xm, ym) = (as_map(k, x), as_map(k, y));
            let g = k.lattice();
            k.frame()
                .level(x.level() + y.level())
                .iter()
                .map(|&i| (i, g.mul(xm[&lam(k, i, y.level()).unwrap()], ym[&i])))
                .collect()
        }

        pub fn rdiv(k: &Kite, y: &KiteElement, x: &KiteElement) -> BTreeMap<usize, usize> {
            let (n, m) = (y.level(), x.level());
            let (xm, ym) = (as_map(k, x), as_map(k, y));
            let g = k.lattice();
            let mut out: BTreeMap<usize, usize> = k.frame().level(n - m).iter().map(|&i| (i, g.unit())).collect();
            for (&j, &yj) in &ym {
                out.insert(lam(k, j, m).unwrap(), g.rdiv(yj, xm[&j]));
            }
            out
        }

        pub fn ldiv(k: &Kite, y: &KiteElement, x: &KiteElement) -> BTreeMap<usize, usize> {
            let (n, m) = (y.level(), x.level());
            let (xm, ym) = (as_map(k, x), as_map(k, y));
            let g = k.lattice();
            k.frame()
                .level(m - n)
                .iter()
                .map(|&i| match xm.get(&i) {
                    Some(&xi) => (i, g.ldiv(ym[&lam(k, i, m - n).unwrap()], xi)),
                    None => (i, g.unit()),
                })
                .collect()
        }
    }

    #[test]
    fn worked_product() {
        let k = path_kite();
        let x = k.element(0, vec![0, 1, 1, 1]).unwrap();
        let y = k.element(1, vec![1, 0, 1]).unwrap();
        let p = k.mul(&x, &y).unwrap();
        assert_eq!(p, k.element(1, vec![1, 0, 1]).unwrap());
        assert_eq!(oracle::as_map(&k, &p), oracle::mul(&k, &x, &y));
    }

    #[test]
    fn worked_rdiv() {
        let k = path_kite();
        let y = k.element(1, vec![1, 0, 1]).unwrap();
        let x = k.element(1, vec![1, 1, 0]).unwrap();
        let r = k.rdiv(&y, &x);
        assert_eq!(r, k.element(0, vec![1, 1, 0, 1]).unwrap());
        assert_eq!(oracle::as_map(&k, &r), oracle::rdiv(&k, &y, &x));
    }

    #[test]
    fn worked_ldiv() {
        let k = path_kite();
        let x = k.element(0, vec![0, 1, 1, 1]).unwrap();
        let y = k.element(1, vec![1, 0, 1]).unwrap();
        assert_eq!(k.ldiv(&y, &x), k.top());
        let r = k.ldiv(&x, &y);
        assert_eq!(r, k.element(1, vec![1, 0, 1]).unwrap());
        assert_eq!(oracle::as_map(&k, &r), oracle::ldiv(&k, &x, &y));
    }

    #[test]
    fn operations_match_oracle_exhaustively() {
        for frame in [
            FiniteFrame::path(3),
            FiniteFrame::cycle(3),
            FiniteFrame::new(4, &[(0, 1), (2, 2)]).unwrap(),
        ] {
            let k = Kite::new(two_chain(), frame);
            let elems = ElementSpace::new(&k, 2).all();
            for x in &elems {
                for y in &elems {
                    assert_eq!(oracle::as_map(&k, &k.mul(x, y).unwrap()), oracle::mul(&k, x, y));
                    if x.level() <= y.level() {
                        assert_eq!(oracle::as_map(&k, &k.ldiv(x, y)), oracle::ldiv(&k, x, y));
                    }
                    if y.level() <= x.level() {
                        assert_eq!(oracle::as_map(&k, &k.rdiv(x, y)), oracle::rdiv(&k, x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn top_and_order() {
        let k = Kite::new(two_chain(), FiniteFrame::cycle(4));
        assert_eq!(k.top().values(), &[1, 1, 1, 1]);
        let y = k.element(1, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(k.mul(&k.top(), &y).unwrap(), y);
        assert_eq!(k.mul(&y, &k.top()).unwrap(), y);
        assert_eq!(k.rdiv(&y, &k.top()), y);
        assert_eq!(k.ldiv(&k.top(), &y), y);
        assert_eq!(k.join(&y, &k.top()), k.top());
        let deep = k.constant(2, 1).unwrap();
        assert!(k.leq(&deep, &y));
        assert!(!k.leq(&y, &deep));
        assert_eq!(k.meet(&deep, &y), deep);
        let z = k.element(1, vec![1, 1, 0, 0]).unwrap();
        assert_eq!(k.meet(&y, &z), k.element(1, vec![0, 1, 0, 0]).unwrap());
        let e = Kite::new(two_chain(), FiniteFrame::empty());
        assert!(e.top().values().is_empty());
    }

    #[test]
    fn empty_frame_levels_add() {
        let k = Kite::new(lukasiewicz_chain(3), FiniteFrame::empty());
        let a = k.unit_at(2).unwrap();
        let b = k.unit_at(3).unwrap();
        assert_eq!(k.mul(&a, &b).unwrap().level(), 5);
        assert_eq!(k.z_quotient(&k.mul(&a, &b).unwrap()), -5);
    }

    #[test]
    fn dimension_counts() {
        let k = Kite::new(two_chain(), FiniteFrame::cycle(4));
        assert_eq!(k.dimension(&k.top()), 0);
        assert_eq!(k.dimension(&k.element(0, vec![1, 0, 1, 1]).unwrap()), 1);
        assert_eq!(k.dimension(&k.constant(0, 0).unwrap()), 4);
    }

    #[test]
    fn validation_and_depth() {
        let k = Kite::with_max_level(two_chain(), FiniteFrame::cycle(2), 3);
        assert!(matches!(k.element(0, vec![1]), Err(KiteError::WrongArity { .. })));
        assert!(matches!(
            k.element(0, vec![1, 5]),
            Err(KiteError::ValueOutOfRange { .. })
        ));
        let a = k.unit_at(2).unwrap();
        assert!(matches!(
            k.mul(&a, &a),
            Err(KiteError::DepthExceeded { level: 4, max: 3 })
        ));
    }

    #[test]
    fn literals() {
        let k = path_kite();
        let x = k.parse_element("@1[1, 0, 1]").unwrap();
        assert_eq!(x.to_string(), "@1[1,0,1]");
        assert_eq!(k.parse_element("@4[]").unwrap().level(), 4);
        assert!(k.parse_element("1[1]").is_err());
        assert!(k.parse_element("@1[1,0]").is_err());
        assert!(k.parse_element("@x[]").is_err());
    }
}
