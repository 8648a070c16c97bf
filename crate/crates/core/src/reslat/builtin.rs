use std::fmt;
use std::str::FromStr;

use super::FiniteResLat;

fn chain_order(n: usize) -> Vec<bool> {
    (0..n * n).map(|k| k / n <= k % n).collect()
}

fn from_order(n: usize, leq: &[bool], mul: Vec<usize>) -> FiniteResLat {
    FiniteResLat::from_order_and_mul(n, n - 1, leq, mul).expect("builtin tables are residuated")
}

/// The one-element algebra.
pub fn trivial() -> FiniteResLat {
    FiniteResLat::from_tables(1, 0, vec![0], vec![0], vec![0], vec![0], vec![0]).unwrap()
}

/// `{0 < e}`
pub fn two_chain() -> FiniteResLat {
    lukasiewicz_chain(2)
}

/// Łukasiewicz chain `0 < 1 < ... < n-1 = e` with `xy = max(0, x + y - (n-1))`.
pub fn lukasiewicz_chain(n: usize) -> FiniteResLat {
    assert!(n >= 1);
    let top = n - 1;
    let mul = (0..n * n).map(|k| (k / n + k % n).saturating_sub(top)).collect();
    from_order(n, &chain_order(n), mul)
}

/// Gödel chain of size `n`: `xy = min(x, y)`.
pub fn godel_chain(n: usize) -> FiniteResLat {
    assert!(n >= 1);
    let mul = (0..n * n).map(|k| (k / n).min(k % n)).collect();
    from_order(n, &chain_order(n), mul)
}

/// The Boolean algebra with four elements `0 < a, b < e`, labeled `0, a = 1, b = 2, e = 3`.
pub fn boolean_square() -> FiniteResLat {
    let n = 4;
    let mut leq = vec![false; n * n];
    for (x, y) in [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 3), (2, 2), (2, 3), (3, 3)] {
        leq[x * n + y] = true;
    }
    let mul = (0..n * n).map(|k| (k / n) & (k % n)).collect();
    from_order(n, &leq, mul)
}

/// First non-commutative algebra in the size-4 enumeration: the chain
/// `0 < a < b < e` with `ab = 0`, `ba = a`.
pub fn first_non_commutative() -> FiniteResLat {
    chain_with_inner(4, &[(1, 1, 0), (1, 2, 0), (2, 1, 1), (2, 2, 2)])
}

/// First non-divisible algebra in the size-4 enumeration: the chain
/// `0 < a < b < e` with `bb = 0`.
pub fn first_non_divisible() -> FiniteResLat {
    chain_with_inner(4, &[(1, 1, 0), (1, 2, 0), (2, 1, 0), (2, 2, 0)])
}

/// The five-element Heyting algebra `0 < a, b < c < e` (`xy = x meet y`),
/// labeled `0, a = 1, b = 2, c = 3, e = 4`. It is not prelinear:
/// `a\b join b\a = b join a = c`.
pub fn smallest_non_prelinear() -> FiniteResLat {
    let n = 5;
    let mut leq = vec![false; n * n];
    for x in 0..n {
        leq[x] = true;
        leq[x * n + x] = true;
        leq[x * n + 4] = true;
    }
    for x in [1, 2] {
        leq[x * n + 3] = true;
    }
    let meet = |x: usize, y: usize| -> usize {
        (0..n)
            .filter(|&z| leq[z * n + x] && leq[z * n + y])
            .max_by_key(|&z| (0..n).filter(|&w| leq[w * n + z]).count())
            .unwrap()
    };
    let mul = (0..n * n).map(|k| meet(k / n, k % n)).collect();
    from_order(n, &leq, mul)
}

/// Chain of size `n` with the inner products `(x, y, xy)` given explicitly;
/// products involving `0` or `e` are forced.
fn chain_with_inner(n: usize, inner: &[(usize, usize, usize)]) -> FiniteResLat {
    let top = n - 1;
    let mut mul = vec![0; n * n];
    for x in 0..n {
        mul[top * n + x] = x;
        mul[x * n + top] = x;
    }
    for &(x, y, z) in inner {
        mul[x * n + y] = z;
    }
    from_order(n, &chain_order(n), mul)
}

/// Named lattices accepted wherever a lattice reference is expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinLattice {
    Trivial,
    TwoChain,
    Lukasiewicz(usize),
    Godel(usize),
    BooleanSquare,
    NonCommutative,
    NonDivisible,
    NonPrelinear,
}

impl BuiltinLattice {
    pub fn build(self) -> FiniteResLat {
        match self {
            Self::Trivial => trivial(),
            Self::TwoChain => two_chain(),
            Self::Lukasiewicz(n) => lukasiewicz_chain(n),
            Self::Godel(n) => godel_chain(n),
            Self::BooleanSquare => boolean_square(),
            Self::NonCommutative => first_non_commutative(),
            Self::NonDivisible => first_non_divisible(),
            Self::NonPrelinear => smallest_non_prelinear(),
        }
    }

    pub const NAMES: &'static str = "trivial, c2, l<n>, g<n>, b2, noncomm, nondiv, nonprelin";
}

impl fmt::Display for BuiltinLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Trivial => write!(f, "trivial"),
            Self::TwoChain => write!(f, "c2"),
            Self::Lukasiewicz(n) => write!(f, "l{n}"),
            Self::Godel(n) => write!(f, "g{n}"),
            Self::BooleanSquare => write!(f, "b2"),
            Self::NonCommutative => write!(f, "noncomm"),
            Self::NonDivisible => write!(f, "nondiv"),
            Self::NonPrelinear => write!(f, "nonprelin"),
        }
    }
}

impl FromStr for BuiltinLattice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let sized = |rest: &str| -> Result<usize, String> {
            match rest.parse::<usize>() {
                Ok(n) if (1..=64).contains(&n) => Ok(n),
                _ => Err(format!("bad chain size in `{s}` (expected 1..=64)")),
            }
        };
        Ok(match s {
            "trivial" => Self::Trivial,
            "c2" | "2" => Self::TwoChain,
            "b2" | "bool2" => Self::BooleanSquare,
            "noncomm" => Self::NonCommutative,
            "nondiv" => Self::NonDivisible,
            "nonprelin" => Self::NonPrelinear,
            _ if s.starts_with('l') => Self::Lukasiewicz(sized(&s[1..])?),
            _ if s.starts_with('g') => Self::Godel(sized(&s[1..])?),
            _ => return Err(format!("unknown builtin `{s}`; known: {}", Self::NAMES)),
        })
    }
}
