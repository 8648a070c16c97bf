use super::{FiniteResLat, Op};
use crate::error::LatticeError;

/// Default bound on the size of a direct product.
pub const DEFAULT_PRODUCT_CAP: usize = 4096;

/// Direct product of `factors`, encoded in mixed radix with the first factor
/// most significant: `(a_0, ..., a_{k-1})` gets index
/// `((a_0 * n_1 + a_1) * n_2 + ...)`.
pub fn direct_product(factors: &[FiniteResLat], cap: usize) -> Result<FiniteResLat, LatticeError> {
    if factors.is_empty() {
        return Err(LatticeError::EmptyProduct);
    }
    let mut size: usize = 1;
    for f in factors {
        size = size
            .checked_mul(f.size())
            .filter(|&s| s <= cap)
            .ok_or(LatticeError::ProductTooLarge {
                size: size.saturating_mul(f.size()),
                cap,
            })?;
    }
    let decode = |mut x: usize| -> Vec<usize> {
        let mut out = vec![0; factors.len()];
        for (slot, f) in out.iter_mut().zip(factors).rev() {
            *slot = x % f.size();
            x /= f.size();
        }
        out
    };
    let encode = |coords: &[usize]| -> usize { coords.iter().zip(factors).fold(0, |acc, (&c, f)| acc * f.size() + c) };
    let coords: Vec<Vec<usize>> = (0..size).map(decode).collect();
    let mut tables: [Vec<usize>; 5] = Default::default();
    for (t, op) in tables.iter_mut().zip(Op::ALL) {
        *t = (0..size * size)
            .map(|k| {
                let (a, b) = (&coords[k / size], &coords[k % size]);
                let c: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.apply(op, a[i], b[i]))
                    .collect();
                encode(&c)
            })
            .collect();
    }
    let unit = encode(&factors.iter().map(|f| f.unit()).collect::<Vec<_>>());
    let [meet, join, mul, ldiv, rdiv] = tables;
    FiniteResLat::from_tables(size, unit, meet, join, mul, ldiv, rdiv)
}

pub fn direct_product_default(factors: &[FiniteResLat]) -> Result<FiniteResLat, LatticeError> {
    direct_product(factors, DEFAULT_PRODUCT_CAP)
}
