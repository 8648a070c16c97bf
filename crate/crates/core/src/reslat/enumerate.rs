use std::collections::BTreeMap;

use super::{CanonicalForm, FiniteResLat};
use crate::error::LatticeError;

/// Largest carrier size accepted by [`enumerate_residuated_lattices`].
pub const ENUMERATION_CAP: usize = 5;

/// Every integral residuated lattice of size `n`, exactly once per
/// isomorphism class, in canonical form and sorted by canonical form.
///
/// Lattice orders are generated with natural labelings (bottom `0`, top and
/// unit `n - 1`); multiplication tables are searched by backtracking under
/// `xy <= x meet y` and monotonicity, and residuals are forced as maxima.
pub fn enumerate_residuated_lattices(n: usize) -> Result<Vec<FiniteResLat>, LatticeError> {
    if n == 0 || n > ENUMERATION_CAP {
        return Err(LatticeError::EnumerationOutOfRange(n));
    }
    let mut found: BTreeMap<CanonicalForm, FiniteResLat> = BTreeMap::new();
    for leq in lattice_orders(n) {
        let meet = meet_table(n, &leq);
        let mut mul = vec![usize::MAX; n * n];
        let top = n - 1;
        for x in 0..n {
            mul[x * n] = 0;
            mul[x] = 0;
        }
        for x in 0..n {
            mul[top * n + x] = x;
            mul[x * n + top] = x;
        }
        let cells: Vec<(usize, usize)> = (1..top).flat_map(|x| (1..top).map(move |y| (x, y))).collect();
        search_mul(n, &leq, &meet, &cells, 0, &mut mul, &mut |mul| {
            if !associative(n, mul) {
                return;
            }
            if let Ok(l) = FiniteResLat::from_order_and_mul(n, top, &leq, mul.to_vec()) {
                debug_assert!(l.verify_axioms().passed());
                let (form, perm) = l.canonical_labeling();
                found.entry(form).or_insert_with(|| l.relabel(&perm));
            }
        });
    }
    Ok(found.into_values().collect())
}

/// All lattice orders on `0..n` whose labeling is a linear extension, with
/// `0` the bottom and `n - 1` the top.
fn lattice_orders(n: usize) -> Vec<Vec<bool>> {
    if n == 1 {
        return vec![vec![true]];
    }
    let inner: Vec<(usize, usize)> = (1..n - 1).flat_map(|i| (i + 1..n - 1).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << inner.len()) {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
            leq[x] = true;
            leq[x * n + n - 1] = true;
        }
        for (bit, &(i, j)) in inner.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let transitive =
            (0..n).all(|a| (0..n).all(|b| !leq[a * n + b] || (0..n).all(|c| !leq[b * n + c] || leq[a * n + c])));
        if transitive && is_lattice(n, &leq) {
            out.push(leq);
        }
    }
    out
}

fn is_lattice(n: usize, leq: &[bool]) -> bool {
    (0..n).all(|x| {
        (0..n).all(|y| {
            let lower: Vec<usize> = (0..n).filter(|&z| leq[z * n + x] && leq[z * n + y]).collect();
            let upper: Vec<usize> = (0..n).filter(|&z| leq[x * n + z] && leq[y * n + z]).collect();
            lower.iter().any(|&c| lower.iter().all(|&d| leq[d * n + c]))
                && upper.iter().any(|&c| upper.iter().all(|&d| leq[c * n + d]))
        })
    })
}

fn meet_table(n: usize, leq: &[bool]) -> Vec<usize> {
    let mut meet = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&z| leq[z * n + x] && leq[z * n + y]).collect();
            meet[x * n + y] = *lower
                .iter()
                .find(|&&c| lower.iter().all(|&d| leq[d * n + c]))
                .expect("order is a lattice");
        }
    }
    meet
}

fn search_mul(
    n: usize,
    leq: &[bool],
    meet: &[usize],
    cells: &[(usize, usize)],
    depth: usize,
    mul: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if depth == cells.len() {
        emit(mul);
        return;
    }
    let (x, y) = cells[depth];
    let cap = meet[x * n + y];
    for z in (0..n).filter(|&z| leq[z * n + cap]) {
        let monotone = cells[..depth].iter().all(|&(a, b)| {
            let v = mul[a * n + b];
            (!(leq[a * n + x] && leq[b * n + y]) || leq[v * n + z])
                && (!(leq[x * n + a] && leq[y * n + b]) || leq[z * n + v])
        });
        if monotone {
            mul[x * n + y] = z;
            search_mul(n, leq, meet, cells, depth + 1, mul, emit);
        }
    }
    mul[x * n + y] = usize::MAX;
}

fn associative(n: usize, mul: &[usize]) -> bool {
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| mul[x * n + mul[y * n + z]] == mul[mul[x * n + y] * n + z])))
}
