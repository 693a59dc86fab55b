use std::collections::{HashMap, VecDeque};

use super::poset::Poset;

/// Default backtracking budget for [`find_isomorphism`].
pub const DEFAULT_ISO_BUDGET: u64 = 5_000_000;

/// Colour refinement on the cover graph. Both posets share one signature
/// dictionary so equal colours mean equal refined signatures.
fn refine(a: &Poset, b: &Poset) -> (Vec<u32>, Vec<u32>) {
    let init = |p: &Poset| -> Vec<(usize, usize, usize, usize)> {
        (0..p.len())
            .map(|x| {
                (
                    p.down_set(x).count_ones(..),
                    p.up_set(x).count_ones(..),
                    p.lower_covers(x).len(),
                    p.upper_covers(x).len(),
                )
            })
            .collect()
    };
    let mut dict: HashMap<Vec<u64>, u32> = HashMap::new();
    let mut intern = |sig: Vec<u64>| -> u32 {
        let next = dict.len() as u32;
        *dict.entry(sig).or_insert(next)
    };
    let mut ca: Vec<u32> = init(a)
        .into_iter()
        .map(|t| intern(vec![t.0 as u64, t.1 as u64, t.2 as u64, t.3 as u64]))
        .collect();
    let mut cb: Vec<u32> = init(b)
        .into_iter()
        .map(|t| intern(vec![t.0 as u64, t.1 as u64, t.2 as u64, t.3 as u64]))
        .collect();
    let lower_a: Vec<Vec<usize>> = (0..a.len()).map(|x| a.lower_covers(x)).collect();
    let upper_a: Vec<Vec<usize>> = (0..a.len()).map(|x| a.upper_covers(x)).collect();
    let lower_b: Vec<Vec<usize>> = (0..b.len()).map(|x| b.lower_covers(x)).collect();
    let upper_b: Vec<Vec<usize>> = (0..b.len()).map(|x| b.upper_covers(x)).collect();
    loop {
        let classes_before = distinct(&ca, &cb);
        let step = |c: &[u32], lo: &[Vec<usize>], up: &[Vec<usize>], x: usize| -> Vec<u64> {
            let mut l: Vec<u32> = lo[x].iter().map(|&y| c[y]).collect();
            let mut u: Vec<u32> = up[x].iter().map(|&y| c[y]).collect();
            l.sort_unstable();
            u.sort_unstable();
            let mut sig = vec![c[x] as u64, u64::MAX];
            sig.extend(l.into_iter().map(u64::from));
            sig.push(u64::MAX);
            sig.extend(u.into_iter().map(u64::from));
            sig
        };
        let sa: Vec<Vec<u64>> = (0..a.len())
            .map(|x| step(&ca, &lower_a, &upper_a, x))
            .collect();
        let sb: Vec<Vec<u64>> = (0..b.len())
            .map(|x| step(&cb, &lower_b, &upper_b, x))
            .collect();
        let mut fresh: HashMap<Vec<u64>, u32> = HashMap::new();
        let mut id = |s: Vec<u64>| -> u32 {
            let next = fresh.len() as u32;
            *fresh.entry(s).or_insert(next)
        };
        ca = sa.into_iter().map(&mut id).collect();
        cb = sb.into_iter().map(&mut id).collect();
        if distinct(&ca, &cb) == classes_before {
            return (ca, cb);
        }
    }
}

fn distinct(a: &[u32], b: &[u32]) -> usize {
    let mut all: Vec<u32> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// An order isomorphism `a -> b` if one exists within the search budget.
///
/// Elements of `a` are assigned in breadth-first order over the cover graph
/// from its minimal elements; a candidate must share the refined colour and
/// agree on comparability with every element already placed.
pub fn find_isomorphism(a: &Poset, b: &Poset, budget: u64) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let (ca, cb) = refine(a, b);
    let mut hist_a = ca.clone();
    let mut hist_b = cb.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return None;
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = a.minimal_elements().into();
    for &x in &queue {
        seen[x] = true;
    }
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for y in a.upper_covers(x).into_iter().chain(a.lower_covers(x)) {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut budget = budget;
    if place(a, b, &ca, &cb, &order, 0, &mut map, &mut used, &mut budget) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn place(
    a: &Poset,
    b: &Poset,
    ca: &[u32],
    cb: &[u32],
    order: &[usize],
    k: usize,
    map: &mut [usize],
    used: &mut [bool],
    budget: &mut u64,
) -> bool {
    if k == order.len() {
        return true;
    }
    let x = order[k];
    for y in 0..b.len() {
        if used[y] || cb[y] != ca[x] {
            continue;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let consistent = order[..k].iter().all(|&z| {
            let w = map[z];
            a.leq(z, x) == b.leq(w, y) && a.leq(x, z) == b.leq(y, w)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if place(a, b, ca, cb, order, k + 1, map, used, budget) {
            return true;
        }
        map[x] = usize::MAX;
        used[y] = false;
    }
    false
}

/// Checks that `map` is a bijection preserving and reflecting the order.
pub fn is_order_isomorphism(a: &Poset, b: &Poset, map: &[usize]) -> bool {
    let n = a.len();
    if b.len() != n || map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    (0..n).all(|x| (0..n).all(|z| a.leq(x, z) == b.leq(map[x], map[z])))
}

/// Convenience wrapper: isomorphic within the default budget, with the map verified.
pub fn isomorphic(a: &Poset, b: &Poset) -> bool {
    find_isomorphism(a, b, DEFAULT_ISO_BUDGET).is_some_and(|m| is_order_isomorphism(a, b, &m))
}
