//! Finite integral residuated lattices given by Cayley tables.
//!
//! The carrier of a lattice of size `n` is always `0..n`. All five binary
//! operations are stored as dense row-major tables, so evaluation is a
//! single index lookup. Residual tables are stored rather than recomputed;
//! [`FiniteResLat::verify_axioms`] cross-checks them against the
//! max-characterization `x\z = max{y : xy <= z}`.

mod builtin;
mod canon;
mod congruence;
mod enumerate;
mod filter;
pub mod io;
mod product;

pub use builtin::{
    boolean_square, first_non_commutative, first_non_divisible, godel_chain, lukasiewicz_chain, smallest_non_prelinear,
    trivial, two_chain, BuiltinLattice,
};
pub use canon::CanonicalForm;
pub use congruence::Congruence;
pub use enumerate::{enumerate_residuated_lattices, ENUMERATION_CAP};
pub use filter::{LatticeFilter, SiVerdict};
pub use product::{direct_product, direct_product_default, DEFAULT_PRODUCT_CAP};

use serde::Serialize;

use crate::error::LatticeError;

/// One of the five binary operations of a residuated lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Op {
    Meet,
    Join,
    Mul,
    Ldiv,
    Rdiv,
}

impl Op {
    pub const ALL: [Op; 5] = [Op::Meet, Op::Join, Op::Mul, Op::Ldiv, Op::Rdiv];

    pub fn name(self) -> &'static str {
        match self {
            Op::Meet => "meet",
            Op::Join => "join",
            Op::Mul => "mul",
            Op::Ldiv => "ldiv",
            Op::Rdiv => "rdiv",
        }
    }
}

/// A finite integral residuated lattice `(G; meet, join, mul, \, /, e)`.
///
/// `ldiv(x, z)` is `x\z` and `rdiv(z, y)` is `z/y`, so adjointness reads
/// `mul(x, y) <= z  <=>  y <= ldiv(x, z)  <=>  x <= rdiv(z, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteResLat {
    size: usize,
    unit: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
    mul: Vec<usize>,
    ldiv: Vec<usize>,
    rdiv: Vec<usize>,
}

/// The laws checked by [`FiniteResLat::verify_axioms`], in checking order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Law {
    MeetIdempotent,
    MeetCommutative,
    MeetAssociative,
    JoinIdempotent,
    JoinCommutative,
    JoinAssociative,
    Absorption,
    MulAssociative,
    UnitLeft,
    UnitRight,
    Integrality,
    Adjointness,
    LeftResidualIsMax,
    RightResidualIsMax,
}

impl Law {
    pub const ALL: [Law; 14] = [
        Law::MeetIdempotent,
        Law::MeetCommutative,
        Law::MeetAssociative,
        Law::JoinIdempotent,
        Law::JoinCommutative,
        Law::JoinAssociative,
        Law::Absorption,
        Law::MulAssociative,
        Law::UnitLeft,
        Law::UnitRight,
        Law::Integrality,
        Law::Adjointness,
        Law::LeftResidualIsMax,
        Law::RightResidualIsMax,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawOutcome {
    pub law: Law,
    /// First violating tuple in lexicographic loop order, if any.
    pub witness: Option<Vec<usize>>,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub outcomes: Vec<LawOutcome>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(LawOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<&LawOutcome> {
        self.outcomes.iter().find(|o| !o.passed())
    }
}

/// The identities (i)-(iv) used to classify residuated lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Identity {
    /// `x(x\y) = x meet y = (y/x)x`
    Divisibility,
    /// `x\y join y\x = e = y/x join x/y`
    Prelinearity,
    /// `xy = yx`
    Commutativity,
    /// `x/(y\x) = x join y = (x/y)\x`
    PseudoMv,
}

/// Flags derived from identity checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct AlgebraClass {
    pub integral_rl: bool,
    pub gbl: bool,
    pub basic_pseudo_hoop: bool,
    pub pseudo_bl: bool,
    pub bl: bool,
    pub pseudo_mv: bool,
    pub mv: bool,
    pub commutative: bool,
}

impl FiniteResLat {
    /// Builds a lattice from flattened row-major tables, checking only shape
    /// and index ranges. Use [`verify_axioms`](Self::verify_axioms) for the laws.
    pub fn from_tables(
        size: usize,
        unit: usize,
        meet: Vec<usize>,
        join: Vec<usize>,
        mul: Vec<usize>,
        ldiv: Vec<usize>,
        rdiv: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        if size == 0 {
            return Err(LatticeError::EmptyCarrier);
        }
        if unit >= size {
            return Err(LatticeError::UnitOutOfRange { unit, size });
        }
        let expected = size * size;
        for (op, table) in Op::ALL.iter().zip([&meet, &join, &mul, &ldiv, &rdiv]) {
            if table.len() != expected {
                return Err(LatticeError::WrongShape {
                    table: op.name(),
                    len: table.len(),
                    expected,
                });
            }
            if let Some(pos) = table.iter().position(|&v| v >= size) {
                return Err(LatticeError::EntryOutOfRange {
                    table: op.name(),
                    row: pos / size,
                    col: pos % size,
                    value: table[pos],
                    size,
                });
            }
        }
        Ok(Self {
            size,
            unit,
            meet,
            join,
            mul,
            ldiv,
            rdiv,
        })
    }

    /// Builds a lattice from a partial order (`leq[x * n + y]` means `x <= y`)
    /// and a multiplication table. Meets, joins and both residuals are derived;
    /// fails if the order is not a lattice or a residual maximum is missing.
    pub fn from_order_and_mul(size: usize, unit: usize, leq: &[bool], mul: Vec<usize>) -> Result<Self, LatticeError> {
        if size == 0 {
            return Err(LatticeError::EmptyCarrier);
        }
        let n = size;
        let le = |x: usize, y: usize| leq[x * n + y];
        let greatest =
            |cands: &[usize]| -> Option<usize> { cands.iter().copied().find(|&c| cands.iter().all(|&d| le(d, c))) };
        let least =
            |cands: &[usize]| -> Option<usize> { cands.iter().copied().find(|&c| cands.iter().all(|&d| le(c, d))) };
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&z| le(z, x) && le(z, y)).collect();
                let upper: Vec<usize> = (0..n).filter(|&z| le(x, z) && le(y, z)).collect();
                meet[x * n + y] =
                    greatest(&lower).ok_or_else(|| LatticeError::NotALattice(format!("no meet of {x} and {y}")))?;
                join[x * n + y] =
                    least(&upper).ok_or_else(|| LatticeError::NotALattice(format!("no join of {x} and {y}")))?;
            }
        }
        if mul.len() != n * n {
            return Err(LatticeError::WrongShape {
                table: "mul",
                len: mul.len(),
                expected: n * n,
            });
        }
        let mut ldiv = vec![0; n * n];
        let mut rdiv = vec![0; n * n];
        for x in 0..n {
            for z in 0..n {
                let left: Vec<usize> = (0..n).filter(|&y| le(mul[x * n + y], z)).collect();
                ldiv[x * n + z] = greatest(&left).ok_or_else(|| LatticeError::NotResiduated(format!("{x}\\{z}")))?;
                let right: Vec<usize> = (0..n).filter(|&y| le(mul[y * n + x], z)).collect();
                rdiv[z * n + x] = greatest(&right).ok_or_else(|| LatticeError::NotResiduated(format!("{z}/{x}")))?;
            }
        }
        Self::from_tables(size, unit, meet, join, mul, ldiv, rdiv)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// True for the one-element algebra.
    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn table(&self, op: Op) -> &[usize] {
        match op {
            Op::Meet => &self.meet,
            Op::Join => &self.join,
            Op::Mul => &self.mul,
            Op::Ldiv => &self.ldiv,
            Op::Rdiv => &self.rdiv,
        }
    }

    #[inline]
    pub fn apply(&self, op: Op, x: usize, y: usize) -> usize {
        self.table(op)[x * self.size + y]
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y]
    }

    /// `x\z`
    #[inline]
    pub fn ldiv(&self, x: usize, z: usize) -> usize {
        self.ldiv[x * self.size + z]
    }

    /// `z/y`
    #[inline]
    pub fn rdiv(&self, z: usize, y: usize) -> usize {
        self.rdiv[z * self.size + y]
    }

    /// `x <= y`, read off the meet table.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.meet(x, y) == x
    }

    /// Range-checked variant of [`leq`](Self::leq).
    pub fn try_leq(&self, x: usize, y: usize) -> Result<bool, LatticeError> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.leq(x, y))
    }

    pub fn check_index(&self, index: usize) -> Result<(), LatticeError> {
        if index < self.size {
            Ok(())
        } else {
            Err(LatticeError::IndexOutOfRange { index, size: self.size })
        }
    }

    /// The least element (meet of the whole carrier).
    pub fn bottom(&self) -> usize {
        (0..self.size).fold(self.unit, |acc, x| self.meet(acc, x))
    }

    /// Left conjugate `y\(xy)`.
    pub fn left_conjugate(&self, y: usize, x: usize) -> usize {
        self.ldiv(y, self.mul(x, y))
    }

    /// Right conjugate `(yx)/y`.
    pub fn right_conjugate(&self, y: usize, x: usize) -> usize {
        self.rdiv(self.mul(y, x), y)
    }

    /// Largest `y` with `mul(x, y) <= z`, computed from the order and `mul` only.
    pub fn left_residual_max(&self, x: usize, z: usize) -> Option<usize> {
        let cands: Vec<usize> = (0..self.size).filter(|&y| self.leq(self.mul(x, y), z)).collect();
        cands.iter().copied().find(|&c| cands.iter().all(|&d| self.leq(d, c)))
    }

    /// Largest `x` with `mul(x, y) <= z`, computed from the order and `mul` only.
    pub fn right_residual_max(&self, z: usize, y: usize) -> Option<usize> {
        let cands: Vec<usize> = (0..self.size).filter(|&x| self.leq(self.mul(x, y), z)).collect();
        cands.iter().copied().find(|&c| cands.iter().all(|&d| self.leq(d, c)))
    }

    /// Checks every law of an integral residuated lattice, reporting the first
    /// violating tuple for each law.
    pub fn verify_axioms(&self) -> AxiomReport {
        let n = self.size;
        let e = self.unit;
        let singles = || (0..n).map(|x| vec![x]);
        let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| vec![x, y]));
        let triples = || (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| vec![x, y, z])));
        let first =
            |mut it: Box<dyn Iterator<Item = Vec<usize>> + '_>, bad: &dyn Fn(&[usize]) -> bool| it.find(|t| bad(t));

        let mut outcomes = Vec::with_capacity(Law::ALL.len());
        for law in Law::ALL {
            let witness = match law {
                Law::MeetIdempotent => first(Box::new(singles()), &|t| self.meet(t[0], t[0]) != t[0]),
                Law::MeetCommutative => first(Box::new(pairs()), &|t| self.meet(t[0], t[1]) != self.meet(t[1], t[0])),
                Law::MeetAssociative => first(Box::new(triples()), &|t| {
                    self.meet(t[0], self.meet(t[1], t[2])) != self.meet(self.meet(t[0], t[1]), t[2])
                }),
                Law::JoinIdempotent => first(Box::new(singles()), &|t| self.join(t[0], t[0]) != t[0]),
                Law::JoinCommutative => first(Box::new(pairs()), &|t| self.join(t[0], t[1]) != self.join(t[1], t[0])),
                Law::JoinAssociative => first(Box::new(triples()), &|t| {
                    self.join(t[0], self.join(t[1], t[2])) != self.join(self.join(t[0], t[1]), t[2])
                }),
                Law::Absorption => first(Box::new(pairs()), &|t| {
                    self.meet(t[0], self.join(t[0], t[1])) != t[0] || self.join(t[0], self.meet(t[0], t[1])) != t[0]
                }),
                Law::MulAssociative => first(Box::new(triples()), &|t| {
                    self.mul(t[0], self.mul(t[1], t[2])) != self.mul(self.mul(t[0], t[1]), t[2])
                }),
                Law::UnitLeft => first(Box::new(singles()), &|t| self.mul(e, t[0]) != t[0]),
                Law::UnitRight => first(Box::new(singles()), &|t| self.mul(t[0], e) != t[0]),
                Law::Integrality => first(Box::new(singles()), &|t| !self.leq(t[0], e)),
                Law::Adjointness => first(Box::new(triples()), &|t| {
                    let (x, y, z) = (t[0], t[1], t[2]);
                    let a = self.leq(self.mul(x, y), z);
                    let b = self.leq(y, self.ldiv(x, z));
                    let c = self.leq(x, self.rdiv(z, y));
                    a != b || a != c
                }),
                Law::LeftResidualIsMax => first(Box::new(pairs()), &|t| {
                    self.left_residual_max(t[0], t[1]) != Some(self.ldiv(t[0], t[1]))
                }),
                Law::RightResidualIsMax => first(Box::new(pairs()), &|t| {
                    self.right_residual_max(t[0], t[1]) != Some(self.rdiv(t[0], t[1]))
                }),
            };
            outcomes.push(LawOutcome { law, witness });
        }
        AxiomReport { outcomes }
    }

    /// First pair violating `id`, or `None` when the identity holds.
    pub fn identity_witness(&self, id: Identity) -> Option<(usize, usize)> {
        let n = self.size;
        let e = self.unit;
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| match id {
                Identity::Divisibility => {
                    let m = self.meet(x, y);
                    self.mul(x, self.ldiv(x, y)) != m || self.mul(self.rdiv(y, x), x) != m
                }
                Identity::Prelinearity => {
                    self.join(self.ldiv(x, y), self.ldiv(y, x)) != e || self.join(self.rdiv(y, x), self.rdiv(x, y)) != e
                }
                Identity::Commutativity => self.mul(x, y) != self.mul(y, x),
                Identity::PseudoMv => {
                    let j = self.join(x, y);
                    self.rdiv(x, self.ldiv(y, x)) != j || self.ldiv(self.rdiv(x, y), x) != j
                }
            })
    }

    pub fn satisfies(&self, id: Identity) -> bool {
        self.identity_witness(id).is_none()
    }

    /// Derives the class flags. Every flag is false when the axioms fail.
    pub fn classify_algebra(&self) -> AlgebraClass {
        if !self.verify_axioms().passed() {
            return AlgebraClass::default();
        }
        let divisible = self.satisfies(Identity::Divisibility);
        let prelinear = self.satisfies(Identity::Prelinearity);
        let commutative = self.satisfies(Identity::Commutativity);
        let iv = self.satisfies(Identity::PseudoMv);
        // a finite lattice always has a least element, which plays the role of 0
        let bounded = (0..self.size).all(|x| self.leq(self.bottom(), x));
        let pseudo_bl = bounded && divisible && prelinear;
        let pseudo_mv = bounded && iv;
        AlgebraClass {
            integral_rl: true,
            gbl: divisible,
            basic_pseudo_hoop: divisible && prelinear,
            pseudo_bl,
            bl: pseudo_bl && commutative,
            pseudo_mv,
            mv: pseudo_mv && commutative,
            commutative,
        }
    }

    /// Relabels the carrier by `perm` (old index to new index).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.size;
        let mut tables: [Vec<usize>; 5] = Default::default();
        for (t, op) in tables.iter_mut().zip(Op::ALL) {
            let src = self.table(op);
            let mut out = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    out[perm[x] * n + perm[y]] = perm[src[x * n + y]];
                }
            }
            *t = out;
        }
        let [meet, join, mul, ldiv, rdiv] = tables;
        Self {
            size: n,
            unit: perm[self.unit],
            meet,
            join,
            mul,
            ldiv,
            rdiv,
        }
    }

    /// The order relation as a dense boolean matrix.
    pub fn order_matrix(&self) -> Vec<bool> {
        let n = self.size;
        (0..n * n).map(|k| self.leq(k / n, k % n)).collect()
    }
}
