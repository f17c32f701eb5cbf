/// Strongly connected components (iterative Tarjan). Each component is
/// sorted; components come in reverse topological order.
pub fn strongly_connected(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = succ.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (u, ref mut i)) = call.last_mut() {
            if *i < succ[u].len() {
                let w = succ[u][*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[u] = low[u].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[u]);
                }
                if low[u] == index[u] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == u {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// Whether the subgraph induced by `nodes` is strongly connected and has an edge.
pub fn induces_cycle(succ: &[Vec<usize>], nodes: &[usize]) -> bool {
    if nodes.is_empty() {
        return false;
    }
    let inside = |v: usize| nodes.binary_search(&v).is_ok();
    if nodes.len() == 1 {
        return succ[nodes[0]].contains(&nodes[0]);
    }
    let reach = |fwd: bool| {
        let mut seen = vec![nodes[0]];
        let mut stack = vec![nodes[0]];
        while let Some(u) = stack.pop() {
            let targets: Vec<usize> = if fwd {
                succ[u].iter().copied().filter(|&w| inside(w)).collect()
            } else {
                nodes
                    .iter()
                    .copied()
                    .filter(|&w| succ[w].contains(&u))
                    .collect()
            };
            for w in targets {
                if !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == nodes.len()
    };
    reach(true) && reach(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components() {
        // 0 <-> 1 -> 2, 2 self-loop, 3 alone
        let succ = vec![vec![1], vec![0, 2], vec![2], vec![]];
        let mut c = strongly_connected(&succ);
        c.sort();
        assert_eq!(c, vec![vec![0, 1], vec![2], vec![3]]);
        assert!(induces_cycle(&succ, &[0, 1]));
        assert!(induces_cycle(&succ, &[2]));
        assert!(!induces_cycle(&succ, &[3]));
        assert!(!induces_cycle(&succ, &[1, 2]));
    }
}
