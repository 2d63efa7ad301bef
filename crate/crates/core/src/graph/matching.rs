use std::collections::VecDeque;

use super::TreeGraph;

/// Maximum matching size by leaf stripping: repeatedly match a leaf with its
/// support vertex and delete both. Optimal on trees (some maximum matching
/// always uses a given leaf edge), linear time.
pub fn matching_number(tree: &TreeGraph) -> usize {
    let n = tree.order();
    let mut removed = vec![false; n];
    let mut degree: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut matched = 0;

    let mut remove = |v: usize, removed: &mut Vec<bool>, queue: &mut VecDeque<usize>| {
        removed[v] = true;
        for &w in tree.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    queue.push_back(w);
                }
            }
        }
    };

    while let Some(leaf) = queue.pop_front() {
        if removed[leaf] {
            continue;
        }
        match tree.neighbors(leaf).iter().copied().find(|&w| !removed[w]) {
            Some(support) => {
                matched += 1;
                remove(leaf, &mut removed, &mut queue);
                remove(support, &mut removed, &mut queue);
            }
            None => removed[leaf] = true,
        }
    }
    matched
}
