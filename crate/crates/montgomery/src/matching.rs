//! Hopcroft–Karp on a bipartite graph given as left adjacency lists.

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Maximum matching. `adj[l]` lists right vertices in `0..n_right`;
/// `right_ok[r]` masks out unusable right vertices. Returns the partner of
/// each left vertex.
pub(crate) fn max_matching(adj: &[Vec<usize>], n_right: usize, right_ok: &[bool]) -> Vec<Option<usize>> {
    let n_left = adj.len();
    let mut mate_l = vec![FREE; n_left];
    let mut mate_r = vec![FREE; n_right];
    let mut dist = vec![0usize; n_left];
    loop {
        // BFS layering from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..n_left {
            if mate_l[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                if !right_ok[r] {
                    continue;
                }
                match mate_r[r] {
                    FREE => found = true,
                    l2 if dist[l2] == usize::MAX => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut progressed = false;
        for l in 0..n_left {
            if mate_l[l] == FREE && augment(l, adj, right_ok, &mut mate_l, &mut mate_r, &mut dist) {
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    mate_l.into_iter().map(|r| (r != FREE).then_some(r)).collect()
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    right_ok: &[bool],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &r in &adj[l] {
        if !right_ok[r] {
            continue;
        }
        let next = mate_r[r];
        let ok = next == FREE
            || (dist[next] == dist[l].wrapping_add(1)
                && augment(next, adj, right_ok, mate_l, mate_r, dist));
        if ok {
            mate_l[l] = r;
            mate_r[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}
