use serde::Serialize;

use crate::C64;

#[derive(Clone, Debug, Serialize)]
pub struct Cluster {
    pub center: C64,
    pub members: Vec<usize>,
}

impl Cluster {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }
}

/// Single-linkage clustering: points within `radius` of each other (directly
/// or through a chain) share a cluster. Clusters come out ordered by first
/// member index.
pub fn cluster_points(points: &[C64], radius: f64) -> Vec<Cluster> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= radius {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut out: Vec<Cluster> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Cluster {
                center: C64::new(0.0, 0.0),
                members: Vec::new(),
            });
        }
        out[slot[r]].members.push(i);
    }
    for c in &mut out {
        let sum: C64 = c.members.iter().map(|&i| points[i]).sum();
        c.center = sum / c.members.len() as f64;
    }
    out
}
