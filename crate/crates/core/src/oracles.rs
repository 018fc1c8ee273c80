//! Slow, independent reference computations used by tests.
//!
//! Compiled for unit tests and behind the `oracles` feature.

use crate::ribbon::{ComponentReport, RibbonGraph, SurfaceReport};

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Surface type of the thickened graph, read off an explicit cell complex.
///
/// Each vertex of degree d is a 2d-gon with corners c(h,0), c(h,1) per
/// half-edge, taken counterclockwise; an isolated vertex is a monogon. Each
/// edge {h, h'} is a square band glued along the sides c(h,0)c(h,1) and
/// c(h',0)c(h',1), with free sides c(h,0)c(h',1) and c(h,1)c(h',0).
/// Cells are counted directly; boundary circles are the cycles formed by
/// the disc sides between consecutive half-edges and the band free sides.
pub fn cell_complex_report(g: &RibbonGraph) -> SurfaceReport {
    let nh = g.half_edge_count();
    let isolated: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.vertices()[v].is_empty()).collect();
    // corners: 2h + side for half-edges, then one per isolated vertex
    let corner = |h: usize, s: usize| 2 * h + s;
    let n0 = 2 * nh + isolated.len();
    let mut boundary = UnionFind::new(n0);
    let mut whole = UnionFind::new(n0);
    let mut one_cells: Vec<(usize, usize, bool)> = Vec::new();
    for cyc in g.vertices() {
        let d = cyc.len();
        for i in 0..d {
            let h = cyc[i];
            let next = cyc[(i + 1) % d];
            one_cells.push((corner(h, 0), corner(h, 1), false));
            one_cells.push((corner(h, 1), corner(next, 0), true));
        }
    }
    for h in 0..nh {
        let p = g.pairing(h);
        if h < p {
            one_cells.push((corner(h, 0), corner(p, 1), true));
            one_cells.push((corner(h, 1), corner(p, 0), true));
        }
    }
    for (k, _) in isolated.iter().enumerate() {
        let c = 2 * nh + k;
        one_cells.push((c, c, true));
    }
    for &(a, b, on_boundary) in &one_cells {
        whole.union(a, b);
        if on_boundary {
            boundary.union(a, b);
        }
    }
    // per-component tallies, keyed by the component root
    let mut euler = vec![0i64; n0];
    let mut bcount = vec![0usize; n0];
    let mut verts = vec![0usize; n0];
    let mut edges = vec![0usize; n0];
    for c in 0..n0 {
        euler[whole.find(c)] += 1;
    }
    for &(a, _, _) in &one_cells {
        euler[whole.find(a)] -= 1;
    }
    let mut first_vertex = vec![usize::MAX; n0];
    let mut iso = isolated.iter().enumerate();
    for (v, cyc) in g.vertices().iter().enumerate() {
        let c = match cyc.first() {
            Some(&h) => corner(h, 0),
            None => 2 * nh + iso.next().expect("isolated vertex").0,
        };
        let r = whole.find(c);
        euler[r] += 1;
        verts[r] += 1;
        first_vertex[r] = first_vertex[r].min(v);
    }
    for h in 0..nh {
        if h < g.pairing(h) {
            let r = whole.find(corner(h, 0));
            euler[r] += 1;
            edges[r] += 1;
        }
    }
    for c in 0..n0 {
        if boundary.find(c) == c {
            bcount[whole.find(c)] += 1;
        }
    }
    let mut roots: Vec<usize> = (0..n0).filter(|&c| whole.find(c) == c).collect();
    roots.sort_by_key(|&r| first_vertex[r]);
    let per_component: Vec<ComponentReport> = roots
        .iter()
        .map(|&r| {
            let num = 2 - euler[r] - bcount[r] as i64;
            assert!(num >= 0 && num % 2 == 0, "non-orientable or inconsistent complex");
            ComponentReport { vertices: verts[r], edges: edges[r], euler_characteristic: euler[r], boundary_count: bcount[r], genus: (num / 2) as u64 }
        })
        .collect();
    SurfaceReport {
        components: per_component.len(),
        euler_characteristic: per_component.iter().map(|c| c.euler_characteristic).sum(),
        boundary_count: per_component.iter().map(|c| c.boundary_count).sum(),
        genus: per_component.iter().map(|c| c.genus).sum(),
        per_component,
    }
}
