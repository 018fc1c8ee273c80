//! Finite balls in the Cayley graph of G(λ′) and empirical end counts.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::resonance::{GroupElementCoord, QuotientGroup};

/// Generators of a finitely generated abelian group ℤ^rank × Π ℤ/dᵢ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub rank: usize,
    pub moduli: Vec<i64>,
    pub images: Vec<GroupElementCoord>,
}

impl GeneratorSet {
    pub fn new(rank: usize, moduli: Vec<i64>, images: Vec<GroupElementCoord>) -> Self {
        for g in &images {
            assert_eq!(g.free.len(), rank);
            assert_eq!(g.torsion.len(), moduli.len());
        }
        Self { rank, moduli, images }
    }

    pub fn from_quotient(q: &QuotientGroup, images: Vec<GroupElementCoord>) -> Self {
        Self::new(q.rank, q.torsion_i64().expect("torsion fits in i64"), images)
    }

    pub fn identity(&self) -> GroupElementCoord {
        GroupElementCoord { free: vec![0; self.rank], torsion: vec![0; self.moduli.len()] }
    }

    /// Largest absolute free coordinate among the generators.
    pub fn max_coordinate(&self) -> i64 {
        self.images.iter().map(GroupElementCoord::max_free).max().unwrap_or(0)
    }

    /// Generators followed by their inverses, each tagged (generator index, sign).
    fn steps(&self) -> Vec<(usize, i8, GroupElementCoord)> {
        let mut out = Vec::with_capacity(2 * self.images.len());
        for (i, g) in self.images.iter().enumerate() {
            out.push((i, 1, g.clone()));
            out.push((i, -1, g.neg(&self.moduli)));
        }
        out
    }
}

/// A labelled edge `from → from + generator`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BallEdge {
    pub from: usize,
    pub to: usize,
    pub generator: usize,
}

/// All elements of word length ≤ radius, sorted, with their word lengths.
#[derive(Clone, Debug)]
pub struct CayleyBall {
    pub radius: usize,
    pub elements: Vec<GroupElementCoord>,
    pub word_length: Vec<usize>,
    pub edges: Vec<BallEdge>,
}

impl CayleyBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: &GroupElementCoord) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    /// Neighbour count of element `i` inside the ball (with multiplicity of generators).
    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.from == i || e.to == i).count()
    }

    /// Graphviz rendering; intended for small radii.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph cayley {\n  node [shape=point];\n");
        for (i, g) in self.elements.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{:?}|{:?}\", xlabel=\"{}\"];", g.free, g.torsion, self.word_length[i]);
        }
        for e in &self.edges {
            let _ = writeln!(s, "  n{} -- n{} [label=\"B{}\"];", e.from, e.to, e.generator + 1);
        }
        s.push_str("}\n");
        s
    }
}

fn bfs_lengths(gens: &GeneratorSet, radius: usize) -> HashMap<GroupElementCoord, usize> {
    let steps = gens.steps();
    let mut dist = HashMap::new();
    let start = gens.identity();
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    while let Some(g) = queue.pop_front() {
        let d = dist[&g];
        if d == radius {
            continue;
        }
        for (_, _, s) in &steps {
            let h = g.add(s, &gens.moduli);
            if !dist.contains_key(&h) {
                dist.insert(h.clone(), d + 1);
                queue.push_back(h);
            }
        }
    }
    dist
}

pub fn ball(gens: &GeneratorSet, radius: usize) -> CayleyBall {
    let dist = bfs_lengths(gens, radius);
    let elements: Vec<GroupElementCoord> = dist.keys().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let word_length = elements.iter().map(|g| dist[g]).collect();
    let mut edges = Vec::new();
    for (i, g) in elements.iter().enumerate() {
        for (k, img) in gens.images.iter().enumerate() {
            if let Ok(j) = elements.binary_search(&g.add(img, &gens.moduli)) {
                edges.push(BallEdge { from: i, to: j, generator: k });
            }
        }
    }
    CayleyBall { radius, elements, word_length, edges }
}

/// Components of ball(outer) ∖ ball(inner) that reach word length exactly `outer`.
pub fn complement_components(gens: &GeneratorSet, inner: usize, outer: usize) -> usize {
    assert!(inner < outer, "inner radius must be smaller than outer radius");
    let dist = bfs_lengths(gens, outer);
    let steps = gens.steps();
    let mut seen: HashMap<&GroupElementCoord, ()> = HashMap::new();
    let mut count = 0;
    for (g, &d) in &dist {
        if d != outer || seen.contains_key(g) {
            continue;
        }
        count += 1;
        let mut stack = vec![g];
        seen.insert(g, ());
        while let Some(x) = stack.pop() {
            for (_, _, s) in &steps {
                let y = x.add(s, &gens.moduli);
                if let Some((key, &dy)) = dist.get_key_value(&y) {
                    if dy > inner && !seen.contains_key(key) {
                        seen.insert(key, ());
                        stack.push(key);
                    }
                }
            }
        }
    }
    count
}

/// Exact end count of the Cayley graph of ℤ^rank × finite: 0, 2 or 1.
pub fn end_count_from_rank(q: &QuotientGroup) -> usize {
    end_count_for_rank(q.rank)
}

pub fn end_count_for_rank(rank: usize) -> usize {
    match rank {
        0 => 0,
        1 => 2,
        _ => 1,
    }
}
