use serde::{Deserialize, Serialize};

use super::poset::Poset;

/// A chain partition together with an antichain of the same size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainCover {
    pub chains: Vec<Vec<usize>>,
    pub witness_antichain: Vec<usize>,
}

impl ChainCover {
    /// Checks that the chains partition the carrier, each is a chain, and the
    /// antichain has as many elements as there are chains.
    pub fn verify(&self, p: &Poset) -> bool {
        let mut seen = vec![false; p.len()];
        for chain in &self.chains {
            if !p.is_chain(chain) {
                return false;
            }
            for &x in chain {
                if x >= p.len() || std::mem::replace(&mut seen[x], true) {
                    return false;
                }
            }
        }
        seen.iter().all(|&s| s)
            && p.is_antichain(&self.witness_antichain)
            && self.witness_antichain.len() == self.chains.len()
    }
}

/// Width of `p` with a Dilworth certificate.
///
/// Maximum matching on the strict order split into a left and a right copy;
/// matched edges `x -> y` link consecutive chain elements. The antichain is
/// read off the König cover: `x` with left copy reachable and right copy not.
pub fn width(p: &Poset) -> (usize, ChainCover) {
    let n = p.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|x| p.up_set(x).ones().filter(|&y| y != x).collect())
        .collect();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut match_left: Vec<Option<usize>> = vec![None; n];
    for x in 0..n {
        let mut visited = vec![false; n];
        augment(x, &adj, &mut visited, &mut match_left, &mut match_right);
    }

    let mut chains = Vec::new();
    for start in 0..n {
        if match_right[start].is_some() {
            continue;
        }
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(next) = match_left[cur] {
            chain.push(next);
            cur = next;
        }
        chains.push(chain);
    }

    // Alternating reachability from unmatched left vertices.
    let mut left_reached = vec![false; n];
    let mut right_reached = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&x| match_left[x].is_none()).collect();
    for &x in &stack {
        left_reached[x] = true;
    }
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if match_left[x] == Some(y) || right_reached[y] {
                continue;
            }
            right_reached[y] = true;
            if let Some(z) = match_right[y] {
                if !left_reached[z] {
                    left_reached[z] = true;
                    stack.push(z);
                }
            }
        }
    }
    let antichain: Vec<usize> = (0..n)
        .filter(|&x| left_reached[x] && !right_reached[x])
        .collect();
    debug_assert_eq!(antichain.len(), chains.len());
    (
        chains.len(),
        ChainCover {
            chains,
            witness_antichain: antichain,
        },
    )
}

fn augment(
    x: usize,
    adj: &[Vec<usize>],
    visited: &mut [bool],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &y in &adj[x] {
        if visited[y] {
            continue;
        }
        visited[y] = true;
        let free = match match_right[y] {
            None => true,
            Some(z) => augment(z, adj, visited, match_left, match_right),
        };
        if free {
            match_left[x] = Some(y);
            match_right[y] = Some(x);
            return true;
        }
    }
    false
}

/// Cardinality of a longest chain.
pub fn height(p: &Poset) -> usize {
    let order = p.linear_extension();
    let mut longest = vec![0usize; p.len()];
    let mut best = 0;
    for &x in &order {
        let below = p
            .down_set(x)
            .ones()
            .filter(|&y| y != x)
            .map(|y| longest[y])
            .max()
            .unwrap_or(0);
        longest[x] = below + 1;
        best = best.max(longest[x]);
    }
    best
}

/// Largest antichain by exhaustive search; test oracle for small posets.
pub fn max_antichain_brute(p: &Poset) -> usize {
    fn go(p: &Poset, from: usize, chosen: &mut Vec<usize>, best: &mut usize) {
        *best = (*best).max(chosen.len());
        for x in from..p.len() {
            if chosen.iter().all(|&c| !p.comparable(c, x)) {
                chosen.push(x);
                go(p, x + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    go(p, 0, &mut Vec::new(), &mut best);
    best
}
