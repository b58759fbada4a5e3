//! Strongly connected components.

use alloc::vec;
use alloc::vec::Vec;

use crate::game::{Vertex, VisibilityGraph};

/// Strongly connected components in topological order: for every arc
/// `u -> v` between different components, `u`'s component comes first.
/// Vertices inside a component are ascending.
pub fn condensation(graph: &VisibilityGraph) -> Vec<Vec<Vertex>> {
    let adj = graph.adjacency();
    let n = adj.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps: Vec<Vec<Vertex>> = Vec::new();
    let mut next = 0usize;
    // (vertex, position in its adjacency list)
    let mut work: Vec<(Vertex, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        work.push((root, 0));
        while let Some(&(v, pos)) = work.last() {
            if pos == 0 && index[v] == UNSEEN {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(pos) {
                if let Some(top) = work.last_mut() {
                    top.1 += 1;
                }
                if w >= n {
                    continue;
                }
                if index[w] == UNSEEN {
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    // Tarjan emits sinks first.
    comps.reverse();
    comps
}

/// True when the parts of `partition` can be ordered so that no arc goes
/// from a later part to an earlier one.
pub fn quotient_is_acyclic(graph: &VisibilityGraph, part_of: &[usize], parts: usize) -> bool {
    let mut q = VisibilityGraph::new(parts);
    for (u, v) in graph.arcs() {
        let (a, b) = (part_of[u], part_of[v]);
        if a != b {
            q.add_arc(a, b);
        }
    }
    condensation(&q).len() == parts
}
