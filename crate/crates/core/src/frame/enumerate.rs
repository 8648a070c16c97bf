use std::collections::BTreeMap;

use super::FiniteFrame;

/// Every frame on `0..m`: each partial injective map, labeled.
pub fn enumerate_labeled_frames(m: usize) -> Vec<FiniteFrame> {
    fn go(i: usize, m: usize, used: &mut Vec<bool>, pairs: &mut Vec<(usize, usize)>, out: &mut Vec<FiniteFrame>) {
        if i == m {
            out.push(FiniteFrame::new(m, pairs).expect("injective by construction"));
            return;
        }
        go(i + 1, m, used, pairs, out);
        for j in 0..m {
            if !used[j] {
                used[j] = true;
                pairs.push((i, j));
                go(i + 1, m, used, pairs, out);
                pairs.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, m, &mut vec![false; m], &mut Vec::new(), &mut out);
    out
}

/// One canonical frame per isomorphism class on `m` points, ordered by the
/// graph of `lambda`.
pub fn enumerate_frames(m: usize) -> Vec<FiniteFrame> {
    let mut seen: BTreeMap<Vec<(usize, usize)>, FiniteFrame> = BTreeMap::new();
    for f in enumerate_labeled_frames(m) {
        let (c, _) = f.canonical();
        seen.entry(c.pairs()).or_insert(c);
    }
    seen.into_values().collect()
}
