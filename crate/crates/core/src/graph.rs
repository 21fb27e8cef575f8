//! Support-digraph utilities: strong components, periods, reachability.

/// Adjacency given as per-vertex successor lists.
pub(crate) trait Digraph {
    fn order(&self) -> usize;
    fn successors(&self, v: usize) -> &[u32];
}

pub(crate) struct Lists<'a>(pub &'a [Vec<u32>]);

impl Digraph for Lists<'_> {
    fn order(&self) -> usize {
        self.0.len()
    }
    fn successors(&self, v: usize) -> &[u32] {
        &self.0[v]
    }
}

/// Strongly connected components (iterative Tarjan). Returns the component id
/// of every vertex and the number of components.
pub(crate) fn strong_components<G: Digraph>(g: &G) -> (Vec<u32>, usize) {
    const UNSEEN: u32 = u32::MAX;
    let n = g.order();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut comp = vec![UNSEEN; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut call: Vec<(u32, usize)> = Vec::new();
    let mut next_index = 0u32;
    let mut ncomp = 0usize;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root as u32, 0));
        while let Some(&(v, pos)) = call.last() {
            let vu = v as usize;
            if pos == 0 && index[vu] == UNSEEN {
                index[vu] = next_index;
                low[vu] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[vu] = true;
            }
            let succ = g.successors(vu);
            if pos < succ.len() {
                if let Some(top) = call.last_mut() {
                    top.1 = pos + 1;
                }
                let w = succ[pos] as usize;
                if index[w] == UNSEEN {
                    call.push((w as u32, 0));
                } else if on_stack[w] {
                    low[vu] = low[vu].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                let pu = parent as usize;
                low[pu] = low[pu].min(low[vu]);
            }
            if low[vu] == index[vu] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow") as usize;
                    on_stack[w] = false;
                    comp[w] = ncomp as u32;
                    if w == vu {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    (comp, ncomp)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Period of the subgraph induced by `members` (assumed strongly connected):
/// gcd of `level(u) + 1 - level(v)` over its internal edges.
pub(crate) fn period<G: Digraph>(g: &G, members: &[bool]) -> u64 {
    let n = g.order();
    let Some(start) = (0..n).find(|&v| members[v]) else {
        return 0;
    };
    let mut level = vec![u64::MAX; n];
    level[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    let mut p = 0u64;
    while let Some(u) = queue.pop_front() {
        for &w in g.successors(u) {
            let w = w as usize;
            if !members[w] {
                continue;
            }
            if level[w] == u64::MAX {
                level[w] = level[u] + 1;
                queue.push_back(w);
            } else {
                let d = (level[u] + 1).abs_diff(level[w]);
                p = gcd(p, d);
            }
        }
    }
    p
}

/// Vertices reachable from any vertex flagged in `from`.
pub(crate) fn forward_reach<G: Digraph>(g: &G, from: &[bool]) -> Vec<bool> {
    let n = g.order();
    let mut seen = from.to_vec();
    let mut stack: Vec<usize> = (0..n).filter(|&v| from[v]).collect();
    while let Some(u) = stack.pop() {
        for &w in g.successors(u) {
            let w = w as usize;
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Reverses a list-based digraph.
pub(crate) fn reversed<G: Digraph>(g: &G) -> Vec<Vec<u32>> {
    let mut rev = vec![Vec::new(); g.order()];
    for u in 0..g.order() {
        for &w in g.successors(u) {
            rev[w as usize].push(u as u32);
        }
    }
    rev
}

/// Strongly connected with period one.
pub(crate) fn is_irreducible_aperiodic<G: Digraph>(g: &G) -> bool {
    let n = g.order();
    if n == 0 {
        return false;
    }
    let (_, ncomp) = strong_components(g);
    ncomp == 1 && period(g, &vec![true; n]) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_has_its_length_as_period() {
        let adj = vec![vec![1], vec![2], vec![0]];
        let g = Lists(&adj);
        assert_eq!(strong_components(&g).1, 1);
        assert_eq!(period(&g, &[true; 3]), 3);
        assert!(!is_irreducible_aperiodic(&g));
    }

    #[test]
    fn chord_breaks_periodicity() {
        let adj = vec![vec![1], vec![2, 0], vec![0]];
        assert!(is_irreducible_aperiodic(&Lists(&adj)));
    }

    #[test]
    fn dag_splits_into_singletons() {
        let adj = vec![vec![1], vec![2], vec![]];
        let g = Lists(&adj);
        assert_eq!(strong_components(&g).1, 3);
        let r = forward_reach(&g, &[false, true, false]);
        assert_eq!(r, vec![false, true, true]);
        assert_eq!(reversed(&g)[2], vec![1]);
    }
}
