use std::collections::VecDeque;

use super::Graph;

/// Connected-component membership. Component ids are assigned in order of
/// each component's smallest node id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub membership: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn size_of(&self, node: usize) -> usize {
        self.sizes[self.membership[node]]
    }

    pub fn giant_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }
}

pub fn connected_components(g: &Graph) -> Components {
    let n = g.node_count();
    let mut membership = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if membership[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        membership[start] = id;
        queue.push_back(start);
        let mut size = 0;
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &v in g.neighbors(u) {
                let v = v as usize;
                if membership[v] == usize::MAX {
                    membership[v] = id;
                    queue.push_back(v);
                }
            }
        }
        sizes.push(size);
    }
    Components { membership, sizes }
}
