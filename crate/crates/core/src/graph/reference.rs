use crate::graph::{vertex_bits, Graph, Triangle, Vertex};

/// Some triangle with `v1 ∈ v1_set` and `v2, v3 ∈ v2_set`, if one exists.
///
/// Uncharged reference search; scans `v1` in the given order and returns the
/// lexicographically first completion for it.
pub fn brute_force_triangle(g: &Graph, v1_set: &[Vertex], v2_set: &[Vertex]) -> Option<Triangle> {
    let side = vertex_bits(g.n(), v2_set);
    let mut common = side.clone();
    for &v1 in v1_set {
        common.clone_from(&side);
        common.intersect_with(g.adjacency(v1));
        for v2 in common.ones() {
            if let Some(v3) = g.adjacency(v2).intersection(&common).next() {
                return Some(Triangle::new(v1, v2, v3));
            }
        }
    }
    None
}

pub fn has_triangle(g: &Graph) -> bool {
    let all: Vec<Vertex> = (0..g.n()).collect();
    brute_force_triangle(g, &all, &all).is_some()
}
