//! Ribbon (fat) graphs with rotation-class voltages.
//!
//! A ribbon graph is a set of half-edges with a fixed-point-free pairing and a
//! cyclic order of half-edges at each vertex. Thickening it gives a compact
//! oriented surface with boundary; its boundary circles are the cycles of
//! `h ↦ rotation⁻¹(pairing(h))`. Covers are built as derived graphs over
//! finite quotients of the deck group, or as induced subgraphs of the infinite
//! derived graph on a finite set of deck elements.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::angles::{lcm_denominators, AngleError, AngleValue, AngleVector, IrrationalBasis, Rational, RotationClass};
use crate::resonance::{AngleChoice, DeckGroup, ResonanceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RibbonError {
    #[error("pairing has {pairing} entries but the vertices list {listed} half-edges")]
    SizeMismatch { pairing: usize, listed: usize },
    #[error("half-edge {0} is paired with itself")]
    FixedPoint(usize),
    #[error("pairing is not an involution at half-edge {0}")]
    NotInvolution(usize),
    #[error("half-edge {0} appears in more than one rotation slot")]
    DuplicateHalfEdge(usize),
    #[error("half-edge {0} appears in no rotation cycle")]
    MissingHalfEdge(usize),
    #[error("voltage list has {got} entries for {expected} half-edges")]
    VoltageCount { expected: usize, got: usize },
    #[error("voltage at half-edge {0} is not the negative of its partner's")]
    VoltageNotAntisymmetric(usize),
    #[error("component {component} has χ = {euler}, b = {boundaries}: genus would be {numerator}/2")]
    NonIntegerGenus { component: usize, euler: i64, boundaries: usize, numerator: i64 },
    #[error("deck group quotient is infinite (rank {rank}) and free-part modulus is {modulus}")]
    InfiniteQuotient { rank: usize, modulus: i64 },
    #[error("voltage {0} is not in the subgroup generated by the chosen angles")]
    VoltageOutsideGroup(String),
    #[error("boundary lifting law failed above base cycle {cycle}: {detail}")]
    LiftingLaw { cycle: usize, detail: String },
    #[error("irrational angle at vertex {0}; genus is only defined for rational polygons")]
    IrrationalAngle(usize),
    #[error("genus formula gives {0}, not a nonnegative integer")]
    FormulaNotInteger(String),
    #[error("boundary index {0} is out of range")]
    BoundaryOutOfRange(usize),
    #[error("text format, line {line}: {reason}")]
    Text { line: usize, reason: String },
    #[error(transparent)]
    Angle(#[from] AngleError),
    #[error(transparent)]
    Resonance(#[from] ResonanceError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    vertices: Vec<Vec<usize>>,
    pairing: Vec<usize>,
    vertex_of: Vec<usize>,
    slot: Vec<usize>,
}

impl RibbonGraph {
    /// `vertices[v]` is the counterclockwise cycle of half-edges at v (may be empty).
    pub fn new(vertices: Vec<Vec<usize>>, pairing: Vec<usize>) -> Result<Self, RibbonError> {
        let n = pairing.len();
        let listed: usize = vertices.iter().map(Vec::len).sum();
        if listed != n {
            return Err(RibbonError::SizeMismatch { pairing: n, listed });
        }
        for (h, &p) in pairing.iter().enumerate() {
            if p >= n || pairing[p] != h {
                return Err(RibbonError::NotInvolution(h));
            }
            if p == h {
                return Err(RibbonError::FixedPoint(h));
            }
        }
        let mut vertex_of = vec![usize::MAX; n];
        let mut slot = vec![usize::MAX; n];
        for (v, cycle) in vertices.iter().enumerate() {
            for (i, &h) in cycle.iter().enumerate() {
                if h >= n {
                    return Err(RibbonError::SizeMismatch { pairing: n, listed: h + 1 });
                }
                if vertex_of[h] != usize::MAX {
                    return Err(RibbonError::DuplicateHalfEdge(h));
                }
                vertex_of[h] = v;
                slot[h] = i;
            }
        }
        if let Some(h) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(RibbonError::MissingHalfEdge(h));
        }
        Ok(Self { vertices, pairing, vertex_of, slot })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn half_edge_count(&self) -> usize {
        self.pairing.len()
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn pairing(&self, h: usize) -> usize {
        self.pairing[h]
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    pub fn rotation(&self, h: usize) -> usize {
        let cyc = &self.vertices[self.vertex_of[h]];
        cyc[(self.slot[h] + 1) % cyc.len()]
    }

    pub fn rotation_inv(&self, h: usize) -> usize {
        let cyc = &self.vertices[self.vertex_of[h]];
        cyc[(self.slot[h] + cyc.len() - 1) % cyc.len()]
    }

    /// Successor along a boundary circle.
    pub fn boundary_next(&self, h: usize) -> usize {
        self.rotation_inv(self.pairing[h])
    }

    /// Connected component label of each vertex (labels in order of first appearance).
    pub fn component_labels(&self) -> Vec<usize> {
        let nv = self.vertices.len();
        let mut label = vec![usize::MAX; nv];
        let mut next = 0;
        for start in 0..nv {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &h in &self.vertices[v] {
                    let w = self.vertex_of[self.pairing[h]];
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |m| m + 1)
    }
}

/// One boundary circle of the thickened surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCycle {
    pub half_edges: Vec<usize>,
    /// Set for the boundary of an isolated vertex (a disc), which has no half-edges.
    pub isolated_vertex: Option<usize>,
}

impl BoundaryCycle {
    pub fn len(&self) -> usize {
        self.half_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.half_edges.is_empty()
    }

    fn vertex(&self, g: &RibbonGraph) -> usize {
        self.isolated_vertex.unwrap_or_else(|| g.vertex_of(self.half_edges[0]))
    }
}

/// Boundary cycles, ordered by smallest starting half-edge, then isolated vertices.
pub fn trace_boundaries(rg: &RibbonGraph) -> Vec<BoundaryCycle> {
    let n = rg.half_edge_count();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            cyc.push(h);
            h = rg.boundary_next(h);
        }
        debug_assert_eq!(h, start);
        cycles.push(BoundaryCycle { half_edges: cyc, isolated_vertex: None });
    }
    for (v, cyc) in rg.vertices.iter().enumerate() {
        if cyc.is_empty() {
            cycles.push(BoundaryCycle { half_edges: Vec::new(), isolated_vertex: Some(v) });
        }
    }
    cycles
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub vertices: usize,
    pub edges: usize,
    pub euler_characteristic: i64,
    pub boundary_count: usize,
    pub genus: u64,
}

/// Topological type of a (possibly disconnected) compact oriented surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceReport {
    pub components: usize,
    pub euler_characteristic: i64,
    pub boundary_count: usize,
    pub genus: u64,
    pub per_component: Vec<ComponentReport>,
}

impl SurfaceReport {
    fn from_components(per_component: Vec<ComponentReport>) -> Self {
        Self {
            components: per_component.len(),
            euler_characteristic: per_component.iter().map(|c| c.euler_characteristic).sum(),
            boundary_count: per_component.iter().map(|c| c.boundary_count).sum(),
            genus: per_component.iter().map(|c| c.genus).sum(),
            per_component,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components == 1
    }
}

fn genus_of(component: usize, euler: i64, boundaries: usize) -> Result<u64, RibbonError> {
    let numerator = 2 - euler - boundaries as i64;
    if numerator < 0 || numerator % 2 != 0 {
        return Err(RibbonError::NonIntegerGenus { component, euler, boundaries, numerator });
    }
    Ok((numerator / 2) as u64)
}

/// χ = V − E per component, b from boundary tracing, g = (2 − χ − b)/2.
pub fn surface_report(rg: &RibbonGraph) -> Result<SurfaceReport, RibbonError> {
    let cycles = trace_boundaries(rg);
    surface_report_with(rg, &cycles, &vec![false; cycles.len()])
}

fn surface_report_with(rg: &RibbonGraph, cycles: &[BoundaryCycle], capped: &[bool]) -> Result<SurfaceReport, RibbonError> {
    let labels = rg.component_labels();
    let nc = labels.iter().max().map_or(0, |m| m + 1);
    let mut parts = vec![(0usize, 0usize, 0usize, 0usize); nc];
    for (v, &c) in labels.iter().enumerate() {
        parts[c].0 += 1;
        parts[c].1 += rg.vertices[v].len();
    }
    for (cyc, &cap) in cycles.iter().zip(capped) {
        let c = labels[cyc.vertex(rg)];
        if cap {
            parts[c].3 += 1;
        } else {
            parts[c].2 += 1;
        }
    }
    let per_component = parts
        .into_iter()
        .enumerate()
        .map(|(c, (v, half, b, caps))| {
            let euler = v as i64 - (half / 2) as i64 + caps as i64;
            Ok(ComponentReport { vertices: v, edges: half / 2, euler_characteristic: euler, boundary_count: b, genus: genus_of(c, euler, b)? })
        })
        .collect::<Result<Vec<_>, RibbonError>>()?;
    Ok(SurfaceReport::from_components(per_component))
}

/// Which traced boundary cycles receive a disc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundarySelector {
    All,
    Only(Vec<usize>),
}

/// Report for the surface with a disc glued along each selected boundary cycle.
pub fn cap_boundaries(rg: &RibbonGraph, selector: &BoundarySelector) -> Result<SurfaceReport, RibbonError> {
    let cycles = trace_boundaries(rg);
    let mut capped = vec![false; cycles.len()];
    match selector {
        BoundarySelector::All => capped.iter_mut().for_each(|c| *c = true),
        BoundarySelector::Only(idx) => {
            for &i in idx {
                *capped.get_mut(i).ok_or(RibbonError::BoundaryOutOfRange(i))? = true;
            }
        }
    }
    surface_report_with(rg, &cycles, &capped)
}

/// A ribbon graph whose half-edges carry deck-group voltages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageRibbonGraph {
    graph: RibbonGraph,
    voltages: Vec<RotationClass>,
    basis: Arc<IrrationalBasis>,
}

impl VoltageRibbonGraph {
    pub fn new(graph: RibbonGraph, voltages: Vec<RotationClass>, basis: &Arc<IrrationalBasis>) -> Result<Self, RibbonError> {
        if voltages.len() != graph.half_edge_count() {
            return Err(RibbonError::VoltageCount { expected: graph.half_edge_count(), got: voltages.len() });
        }
        for h in 0..voltages.len() {
            if voltages[graph.pairing(h)] != voltages[h].neg() {
                return Err(RibbonError::VoltageNotAntisymmetric(h));
            }
        }
        Ok(Self { graph, voltages, basis: basis.clone() })
    }

    pub fn graph(&self) -> &RibbonGraph {
        &self.graph
    }

    pub fn voltage(&self, h: usize) -> &RotationClass {
        &self.voltages[h]
    }

    pub fn voltages(&self) -> &[RotationClass] {
        &self.voltages
    }

    pub fn basis(&self) -> &Arc<IrrationalBasis> {
        &self.basis
    }

    /// Net voltage around a boundary cycle.
    pub fn cycle_voltage(&self, cycle: &BoundaryCycle) -> RotationClass {
        cycle.half_edges.iter().fold(RotationClass::zero(&self.basis), |acc, &h| acc.add(&self.voltages[h]))
    }
}

/// One-vertex planar rose: petal j has half-edges 2j (outgoing, voltage +cⱼ)
/// and 2j+1 (returning, voltage −cⱼ); rotation order (B₁⁺, B₁⁻, B₂⁺, B₂⁻, …).
pub fn planar_rose(basis: &Arc<IrrationalBasis>, petal_voltages: &[RotationClass]) -> VoltageRibbonGraph {
    let k = petal_voltages.len();
    let rotation: Vec<usize> = (0..2 * k).collect();
    let pairing: Vec<usize> = (0..2 * k).map(|h| h ^ 1).collect();
    let voltages = (0..2 * k).map(|h| if h % 2 == 0 { petal_voltages[h / 2].clone() } else { petal_voltages[h / 2].neg() }).collect();
    let graph = RibbonGraph::new(vec![rotation], pairing).expect("rose is well formed");
    VoltageRibbonGraph::new(graph, voltages, basis).expect("rose voltages are antisymmetric")
}

/// The rose for S²(P) with its boundary circles matched to polygon vertices.
#[derive(Clone, Debug)]
pub struct PolygonRose {
    pub rose: VoltageRibbonGraph,
    pub choice: AngleChoice,
    /// `(boundary cycle, polygon vertex)` for every traced boundary.
    pub boundary_vertices: Vec<(BoundaryCycle, usize)>,
}

pub fn rose_for_polygon(angles: &AngleVector, choice: &AngleChoice) -> Result<PolygonRose, RibbonError> {
    let rose = planar_rose(angles.basis(), &choice.classes());
    let omitted = (0..angles.len()).find(|i| !choice.indices().contains(i)).expect("choice omits one angle");
    let mut boundary_vertices = Vec::new();
    for cycle in trace_boundaries(rose.graph()) {
        let vertex = if cycle.len() == 1 { choice.indices()[cycle.half_edges[0] / 2] } else { omitted };
        let expected = angles.angles()[vertex].rotation_class();
        let got = rose.cycle_voltage(&cycle);
        if got != expected {
            return Err(RibbonError::LiftingLaw {
                cycle: boundary_vertices.len(),
                detail: format!("boundary voltage {got} does not match angle class {expected} at vertex {vertex}"),
            });
        }
        boundary_vertices.push((cycle, vertex));
    }
    debug_assert_eq!(boundary_vertices.len(), angles.len());
    Ok(PolygonRose { rose, choice: choice.clone(), boundary_vertices })
}

/// ℤ/m₁ × … × ℤ/m_r receiving the deck group: free coordinates reduced mod a
/// modulus, torsion kept.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    deck: DeckGroup,
    free_modulus: i64,
    moduli: Vec<i64>,
}

impl FiniteQuotient {
    pub fn new(deck: DeckGroup, free_modulus: i64) -> Result<Self, RibbonError> {
        let rank = deck.quotient.rank;
        if rank > 0 && free_modulus < 1 {
            return Err(RibbonError::InfiniteQuotient { rank, modulus: free_modulus });
        }
        let mut moduli = vec![free_modulus; rank];
        moduli.extend(deck.quotient.torsion_i64()?);
        Ok(Self { deck, free_modulus, moduli })
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn free_modulus(&self) -> i64 {
        self.free_modulus
    }

    pub fn deck(&self) -> &DeckGroup {
        &self.deck
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize).product()
    }

    pub fn image(&self, c: &RotationClass) -> Option<Vec<i64>> {
        let g = self.deck.coordinates_of_class(c)?;
        Some(g.free.iter().chain(&g.torsion).zip(&self.moduli).map(|(x, m)| x.rem_euclid(*m)).collect())
    }

    fn index(&self, g: &[i64]) -> usize {
        g.iter().zip(&self.moduli).fold(0, |acc, (x, m)| acc * (*m as usize) + *x as usize)
    }

    fn element(&self, mut idx: usize) -> Vec<i64> {
        let mut g = vec![0; self.moduli.len()];
        for (x, m) in g.iter_mut().zip(&self.moduli).rev() {
            *x = (idx % *m as usize) as i64;
            idx /= *m as usize;
        }
        g
    }

    fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).zip(&self.moduli).map(|((x, y), m)| (x + y).rem_euclid(*m)).collect()
    }

    pub fn element_order(&self, g: &[i64]) -> usize {
        g.iter().zip(&self.moduli).fold(1usize, |acc, (&x, &m)| {
            let m = m as usize;
            acc.lcm(&(m / (x as usize).gcd(&m)))
        })
    }
}

/// Lifts of one base boundary cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryLift {
    pub base_cycle: usize,
    pub base_length: usize,
    pub voltage_order: usize,
    pub lifted_cycles: usize,
    pub lifted_length: usize,
}

#[derive(Clone, Debug)]
pub struct DerivedGraph {
    pub graph: RibbonGraph,
    pub group_order: usize,
    pub boundary_lifts: Vec<BoundaryLift>,
}

/// Derived graph over a finite quotient; half-edge (h, g) has index h·|A| + idx(g).
///
/// Checks the boundary lifting law on every base cycle before returning.
pub fn finite_quotient_lift(vrg: &VoltageRibbonGraph, quotient: &FiniteQuotient) -> Result<DerivedGraph, RibbonError> {
    let base = vrg.graph();
    let order = quotient.order();
    let images: Vec<Vec<i64>> = vrg
        .voltages()
        .iter()
        .map(|c| quotient.image(c).ok_or_else(|| RibbonError::VoltageOutsideGroup(c.to_string())))
        .collect::<Result<_, _>>()?;
    let nh = base.half_edge_count();
    let mut pairing = vec![0; nh * order];
    for h in 0..nh {
        let p = base.pairing(h);
        for gi in 0..order {
            let g = quotient.element(gi);
            let target = quotient.index(&quotient.add(&g, &images[h]));
            pairing[h * order + gi] = p * order + target;
        }
    }
    let mut vertices = Vec::with_capacity(base.vertex_count() * order);
    for cyc in base.vertices() {
        for gi in 0..order {
            vertices.push(cyc.iter().map(|&h| h * order + gi).collect());
        }
    }
    let graph = RibbonGraph::new(vertices, pairing)?;
    let boundary_lifts = check_boundary_lifting(vrg, quotient, &images, &graph, order)?;
    Ok(DerivedGraph { graph, group_order: order, boundary_lifts })
}

fn check_boundary_lifting(
    vrg: &VoltageRibbonGraph,
    quotient: &FiniteQuotient,
    images: &[Vec<i64>],
    lifted: &RibbonGraph,
    order: usize,
) -> Result<Vec<BoundaryLift>, RibbonError> {
    let base_cycles = trace_boundaries(vrg.graph());
    let mut cycle_of = vec![usize::MAX; vrg.graph().half_edge_count()];
    for (i, c) in base_cycles.iter().enumerate() {
        for &h in &c.half_edges {
            cycle_of[h] = i;
        }
    }
    let mut counts = vec![0usize; base_cycles.len()];
    let mut lengths: Vec<Option<usize>> = vec![None; base_cycles.len()];
    for lc in trace_boundaries(lifted) {
        let Some(&first) = lc.half_edges.first() else {
            // isolated vertices lift to isolated vertices
            continue;
        };
        let bc = cycle_of[first / order];
        if lc.half_edges.iter().any(|&h| cycle_of[h / order] != bc) {
            return Err(RibbonError::LiftingLaw { cycle: bc, detail: "lifted cycle leaves its base cycle".into() });
        }
        counts[bc] += 1;
        match lengths[bc] {
            None => lengths[bc] = Some(lc.len()),
            Some(l) if l != lc.len() => {
                return Err(RibbonError::LiftingLaw { cycle: bc, detail: format!("lifted lengths {l} and {}", lc.len()) })
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    for (i, c) in base_cycles.iter().enumerate() {
        if c.isolated_vertex.is_some() {
            continue;
        }
        let net = c.half_edges.iter().fold(vec![0; quotient.moduli().len()], |acc, &h| quotient.add(&acc, &images[h]));
        let ord = quotient.element_order(&net);
        let lift = BoundaryLift {
            base_cycle: i,
            base_length: c.len(),
            voltage_order: ord,
            lifted_cycles: counts[i],
            lifted_length: lengths[i].unwrap_or(0),
        };
        if lift.lifted_cycles != order / ord || lift.lifted_length != ord * c.len() {
            return Err(RibbonError::LiftingLaw {
                cycle: i,
                detail: format!(
                    "voltage order {ord}: expected {} cycles of length {}, found {} of length {}",
                    order / ord,
                    ord * c.len(),
                    lift.lifted_cycles,
                    lift.lifted_length
                ),
            });
        }
        out.push(lift);
    }
    Ok(out)
}

/// Subgraph of the (possibly infinite) derived graph induced on the copies in
/// `elements`: every incidence between two listed copies is kept.
///
/// Vertex `v·|S| + i` is the copy of base vertex v over `elements[i]`.
pub fn induced_lift(vrg: &VoltageRibbonGraph, elements: &[RotationClass]) -> RibbonGraph {
    let base = vrg.graph();
    let index: HashMap<&RotationClass, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let ns = elements.len();
    // target copy of (h, g), if present
    let target = |h: usize, i: usize| index.get(&elements[i].add(vrg.voltage(h))).copied();
    let mut id: HashMap<(usize, usize), usize> = HashMap::new();
    let mut vertices = Vec::with_capacity(base.vertex_count() * ns);
    for cyc in base.vertices() {
        for i in 0..ns {
            let mut rot = Vec::new();
            for &h in cyc {
                if target(h, i).is_some() {
                    let next = id.len();
                    id.insert((h, i), next);
                    rot.push(next);
                }
            }
            vertices.push(rot);
        }
    }
    let mut pairing = vec![0; id.len()];
    for (&(h, i), &k) in &id {
        let j = target(h, i).expect("present half-edges have targets");
        pairing[k] = id[&(base.pairing(h), j)];
    }
    RibbonGraph::new(vertices, pairing).expect("induced lift is well formed")
}

/// Cone point data above one polygon vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePoint {
    pub vertex: usize,
    /// nᵢ: denominator of λᵢ; the cone angle is 2π·mᵢ.
    pub order: u64,
    /// Number of points above the vertex, deck order / nᵢ.
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGenus {
    pub genus: u64,
    pub deck_order: u64,
    pub cone_points: Vec<ConePoint>,
    /// Report of the closed surface after capping every boundary lift.
    pub surface: SurfaceReport,
    /// Report of the bordered cover before capping.
    pub bordered: SurfaceReport,
}

/// Genus of the closed surface for a rational polygon, built as a cyclic cover
/// of the N-punctured sphere and compactified over every vertex.
pub fn genus_rational_polygon(angles: &AngleVector) -> Result<RationalGenus, RibbonError> {
    let (_, rg) = rational_cover(angles)?;
    Ok(rg)
}

/// Same as [`genus_rational_polygon`] but also returns the derived graph.
pub fn rational_cover(angles: &AngleVector) -> Result<(DerivedGraph, RationalGenus), RibbonError> {
    if let Some(i) = angles.irrational_indices().first() {
        return Err(RibbonError::IrrationalAngle(*i));
    }
    let n = angles.len();
    let choice = AngleChoice::omitting(angles, n - 1)?;
    let rose = rose_for_polygon(angles, &choice)?;
    let quotient = FiniteQuotient::new(DeckGroup::new(choice)?, 1)?;
    let lift = finite_quotient_lift(&rose.rose, &quotient)?;
    let order = lift.group_order as u64;
    let mut cone_points = Vec::with_capacity(n);
    for (cycle_idx, (_, vertex)) in rose.boundary_vertices.iter().enumerate() {
        let denom = angles.angles()[*vertex].rational_part().denom().to_u64().expect("small denominator");
        let bl = lift.boundary_lifts.iter().find(|b| b.base_cycle == cycle_idx).expect("every base cycle lifts");
        let base_len = bl.base_length;
        if bl.voltage_order as u64 != denom || bl.lifted_cycles as u64 != order / denom || bl.lifted_length != denom as usize * base_len {
            return Err(RibbonError::LiftingLaw {
                cycle: cycle_idx,
                detail: format!(
                    "vertex {vertex}: expected {} lifts of length {}, found {} of length {}",
                    order / denom,
                    denom as usize * base_len,
                    bl.lifted_cycles,
                    bl.lifted_length
                ),
            });
        }
        cone_points.push(ConePoint { vertex: *vertex, order: denom, multiplicity: order / denom });
    }
    cone_points.sort_by_key(|c| c.vertex);
    let bordered = surface_report(&lift.graph)?;
    let surface = cap_boundaries(&lift.graph, &BoundarySelector::All)?;
    debug_assert_eq!(surface.genus, bordered.genus);
    let genus = surface.genus;
    Ok((lift, RationalGenus { genus, deck_order: order, cone_points, surface, bordered }))
}

/// 1 + (L/2)·(k − 2 − Σ 1/nᵢ), with L the lcm of the reduced denominators nᵢ.
pub fn genus_formula(angles: &AngleVector) -> Result<u64, RibbonError> {
    if let Some(i) = angles.irrational_indices().first() {
        return Err(RibbonError::IrrationalAngle(*i));
    }
    let parts: Vec<&Rational> = angles.angles().iter().map(AngleValue::rational_part).collect();
    let l = lcm_denominators(parts.iter().copied());
    let k = Rational::from_integer(BigInt::from(angles.len()));
    let inv_sum = parts.iter().fold(Rational::zero(), |acc, q| acc + Rational::new(BigInt::one(), q.denom().clone()));
    let two = Rational::from_integer(2.into());
    let g = Rational::one() + Rational::from_integer(l) / &two * (k - &two - inv_sum);
    if !g.is_integer() || g.is_negative() {
        return Err(RibbonError::FormulaNotInteger(crate::angles::fmt_rational(&g)));
    }
    g.to_integer().to_u64().ok_or_else(|| RibbonError::FormulaNotInteger(g.to_string()))
}

// Text format:
//
//   ribbon-graph
//   symbols: a b
//   vertex 0: 0 1 2 3
//   edge 0 1: a
//   edge 2 3: b
//
// `symbols:` and the `: voltage` suffix are present only for voltage graphs;
// the voltage is the one carried by the first half-edge of the pair.

pub fn write_text(graph: &RibbonGraph, voltages: Option<&VoltageRibbonGraph>) -> String {
    let mut s = String::from("ribbon-graph\n");
    if let Some(v) = voltages {
        let _ = writeln!(s, "symbols:{}", v.basis().symbols().iter().map(|x| format!(" {x}")).collect::<String>());
    }
    for (i, cyc) in graph.vertices().iter().enumerate() {
        let _ = writeln!(s, "vertex {i}:{}", cyc.iter().map(|h| format!(" {h}")).collect::<String>());
    }
    for h in 0..graph.half_edge_count() {
        let p = graph.pairing(h);
        if h < p {
            match voltages {
                Some(v) => {
                    let _ = writeln!(s, "edge {h} {p}: {}", v.voltage(h));
                }
                None => {
                    let _ = writeln!(s, "edge {h} {p}");
                }
            }
        }
    }
    s
}

impl VoltageRibbonGraph {
    pub fn to_text(&self) -> String {
        write_text(&self.graph, Some(self))
    }
}

impl RibbonGraph {
    pub fn to_text(&self) -> String {
        write_text(self, None)
    }
}

/// Parsed text: the graph and, when every edge carries one, its voltages.
pub fn parse_text(text: &str) -> Result<(RibbonGraph, Option<VoltageRibbonGraph>), RibbonError> {
    let err = |line: usize, reason: &str| RibbonError::Text { line, reason: reason.to_string() };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, "ribbon-graph")) => {}
        Some((n, _)) => return Err(err(n, "expected header `ribbon-graph`")),
        None => return Err(err(0, "empty input")),
    }
    let mut basis = Arc::new(IrrationalBasis::empty());
    let mut vertices: Vec<Vec<usize>> = Vec::new();
    let mut edges: Vec<(usize, usize, Option<(usize, String)>)> = Vec::new();
    let parse_ids = |line: usize, s: &str| -> Result<Vec<usize>, RibbonError> {
        s.split_whitespace().map(|t| t.parse().map_err(|_| err(line, &format!("bad index `{t}`")))).collect()
    };
    for (n, l) in lines {
        if let Some(rest) = l.strip_prefix("symbols:") {
            basis = Arc::new(IrrationalBasis::new(rest.split_whitespace())?);
        } else if let Some(rest) = l.strip_prefix("vertex ") {
            let (idx, cyc) = rest.split_once(':').ok_or_else(|| err(n, "expected `vertex i: …`"))?;
            let idx: usize = idx.trim().parse().map_err(|_| err(n, "bad vertex index"))?;
            if idx != vertices.len() {
                return Err(err(n, "vertices must be listed in order"));
            }
            vertices.push(parse_ids(n, cyc)?);
        } else if let Some(rest) = l.strip_prefix("edge ") {
            let (ids, volt) = match rest.split_once(':') {
                Some((a, b)) => (a, Some((n, b.trim().to_string()))),
                None => (rest, None),
            };
            let ids = parse_ids(n, ids)?;
            if ids.len() != 2 {
                return Err(err(n, "an edge pairs exactly two half-edges"));
            }
            edges.push((ids[0], ids[1], volt));
        } else {
            return Err(err(n, "unrecognized line"));
        }
    }
    let nh = 2 * edges.len();
    let mut pairing = vec![usize::MAX; nh];
    for &(a, b, _) in &edges {
        if a >= nh || b >= nh || pairing[a] != usize::MAX || pairing[b] != usize::MAX || a == b {
            return Err(RibbonError::Text { line: 0, reason: format!("invalid pairing {a} {b}") });
        }
        pairing[a] = b;
        pairing[b] = a;
    }
    let graph = RibbonGraph::new(vertices, pairing)?;
    let with_voltage = edges.iter().filter(|e| e.2.is_some()).count();
    if with_voltage == 0 {
        return Ok((graph, None));
    }
    if with_voltage != edges.len() {
        return Err(err(0, "either every edge or no edge carries a voltage"));
    }
    let mut voltages = vec![RotationClass::zero(&basis); nh];
    for (a, b, v) in &edges {
        let (line, lit) = v.as_ref().expect("checked above");
        let c = AngleValue::parse(&basis, lit).map_err(|e| err(*line, &e.to_string()))?.rotation_class();
        voltages[*b] = c.neg();
        voltages[*a] = c;
    }
    let vrg = VoltageRibbonGraph::new(graph.clone(), voltages, &basis)?;
    Ok((graph, Some(vrg)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::cell_complex_report;
    use proptest::prelude::*;

    fn rose(k: usize, interleaved: bool) -> RibbonGraph {
        let (rot, pairing) = if interleaved {
            // (a, b, ā, b̄) pattern for k = 2
            assert_eq!(k, 2);
            (vec![0, 1, 2, 3], vec![2, 3, 0, 1])
        } else {
            ((0..2 * k).collect(), (0..2 * k).map(|h| h ^ 1).collect())
        };
        RibbonGraph::new(vec![rot], pairing).unwrap()
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(trace_boundaries(&rose(1, false)).len(), 2);
        assert_eq!(trace_boundaries(&rose(2, false)).len(), 3);
        for k in 1..=8 {
            let cycles = trace_boundaries(&rose(k, false));
            assert_eq!(cycles.len(), k + 1);
            assert_eq!(cycles.iter().map(BoundaryCycle::len).sum::<usize>(), 2 * k);
        }
    }

    #[test]
    fn report_examples() {
        let r = surface_report(&rose(2, false)).unwrap();
        assert_eq!((r.euler_characteristic, r.boundary_count, r.genus), (-1, 3, 0));
        let r = surface_report(&rose(2, true)).unwrap();
        assert_eq!((r.boundary_count, r.genus), (1, 1));
        let discs = RibbonGraph::new(vec![vec![], vec![]], vec![]).unwrap();
        let r = surface_report(&discs).unwrap();
        assert_eq!((r.components, r.euler_characteristic, r.boundary_count, r.genus), (2, 2, 2, 0));
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(RibbonGraph::new(vec![vec![0, 1]], vec![0, 1]), Err(RibbonError::FixedPoint(0) | RibbonError::NotInvolution(_))));
        assert!(matches!(RibbonGraph::new(vec![vec![0, 1, 2]], vec![1, 2, 0]), Err(RibbonError::NotInvolution(_))));
        assert!(matches!(RibbonGraph::new(vec![vec![0, 0]], vec![1, 0]), Err(RibbonError::DuplicateHalfEdge(0))));
        assert!(matches!(RibbonGraph::new(vec![vec![0]], vec![1, 0]), Err(RibbonError::SizeMismatch { .. })));
    }

    #[test]
    fn capping_examples() {
        let annulus = rose(1, false);
        let r = cap_boundaries(&annulus, &BoundarySelector::All).unwrap();
        assert_eq!((r.euler_characteristic, r.boundary_count, r.genus), (2, 0, 0));
        let torus = rose(2, true);
        let r = cap_boundaries(&torus, &BoundarySelector::Only(vec![0])).unwrap();
        assert_eq!((r.euler_characteristic, r.boundary_count, r.genus), (0, 0, 1));
        let pants = rose(2, false);
        let r = cap_boundaries(&pants, &BoundarySelector::All).unwrap();
        assert_eq!((r.euler_characteristic, r.boundary_count, r.genus), (2, 0, 0));
        assert!(matches!(cap_boundaries(&pants, &BoundarySelector::Only(vec![7])), Err(RibbonError::BoundaryOutOfRange(7))));
    }

    fn basis(names: &[&str]) -> Arc<IrrationalBasis> {
        Arc::new(IrrationalBasis::new(names.iter().copied()).unwrap())
    }

    #[test]
    fn polygon_roses() {
        let square = AngleVector::rational(&[(1, 2), (1, 2), (1, 2), (1, 2)]).unwrap();
        let pr = rose_for_polygon(&square, &AngleChoice::omitting(&square, 3).unwrap()).unwrap();
        assert_eq!(pr.rose.graph().edge_count(), 3);
        assert_eq!(pr.boundary_vertices.len(), 4);
        let half = AngleValue::from_ratio(square.basis(), 1, 2).rotation_class();
        for (c, _) in &pr.boundary_vertices {
            assert_eq!(pr.rose.cycle_voltage(c), half);
        }
        let outer: Vec<_> = pr.boundary_vertices.iter().filter(|(_, v)| *v == 3).collect();
        assert_eq!(outer.len(), 1);
        assert_eq!(outer[0].0.len(), 3);

        let b = basis(&["a"]);
        let tri = AngleVector::parse(&b, &["a", "a", "1 - 2*a"]).unwrap();
        let pr = rose_for_polygon(&tri, &AngleChoice::omitting(&tri, 2).unwrap()).unwrap();
        assert_eq!(pr.rose.graph().edge_count(), 2);
        let mut classes: Vec<String> = pr.boundary_vertices.iter().map(|(c, _)| pr.rose.cycle_voltage(c).to_string()).collect();
        classes.sort();
        assert_eq!(classes, vec!["-2*a".to_string(), "a".into(), "a".into()]);

        for n in 3..=7 {
            let angles: Vec<(i64, i64)> = (0..n).map(|_| (n as i64 - 2, n as i64)).collect();
            let v = AngleVector::rational(&angles).unwrap();
            let pr = rose_for_polygon(&v, &AngleChoice::omitting(&v, 0).unwrap()).unwrap();
            assert_eq!(pr.boundary_vertices.len(), n);
        }
    }

    fn deck_for(b: &Arc<IrrationalBasis>, lits: &[&str]) -> DeckGroup {
        let vals = lits.iter().map(|l| AngleValue::parse(b, l).unwrap()).collect();
        DeckGroup::new(AngleChoice::from_values(b, vals)).unwrap()
    }

    #[test]
    fn finite_lift_examples() {
        let b = basis(&[]);
        let third = AngleValue::from_ratio(&b, 1, 3).rotation_class();
        let r1 = planar_rose(&b, &[third]);
        let q = FiniteQuotient::new(deck_for(&b, &["1/3"]), 1).unwrap();
        let lift = finite_quotient_lift(&r1, &q).unwrap();
        let rep = surface_report(&lift.graph).unwrap();
        assert_eq!((rep.euler_characteristic, rep.boundary_count, rep.genus), (0, 2, 0));

        // identity quotient leaves the graph unchanged
        let ba = basis(&["a"]);
        let alpha = AngleValue::symbol(&ba, 0).rotation_class();
        let r = planar_rose(&ba, &[alpha.clone(), alpha.clone()]);
        let trivial = FiniteQuotient::new(deck_for(&ba, &["a"]), 1).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(finite_quotient_lift(&r, &trivial).unwrap().graph, *r.graph());

        let half = AngleValue::from_ratio(&b, 1, 2).rotation_class();
        let sq = planar_rose(&b, &[half.clone(), half.clone(), half]);
        let q = FiniteQuotient::new(deck_for(&b, &["1/2", "1/2", "1/2"]), 1).unwrap();
        let lift = finite_quotient_lift(&sq, &q).unwrap();
        assert_eq!(surface_report(&lift.graph).unwrap().euler_characteristic, -4);

        assert!(matches!(FiniteQuotient::new(deck_for(&ba, &["a"]), 0), Err(RibbonError::InfiniteQuotient { .. })));
    }

    #[test]
    fn rational_genus_examples() {
        for (angles, g) in [
            (vec![(1, 2), (1, 2), (1, 2), (1, 2)], 1),
            (vec![(1, 5), (1, 5), (3, 5)], 2),
            (vec![(1, 2), (1, 3), (1, 6)], 1),
            (vec![(2, 3); 6], 4),
        ] {
            let v = AngleVector::rational(&angles).unwrap();
            assert_eq!(genus_formula(&v).unwrap(), g, "{angles:?}");
            let rg = genus_rational_polygon(&v).unwrap();
            assert_eq!(rg.genus, g, "{angles:?}");
            assert_eq!(rg.surface.boundary_count, 0);
            assert!(rg.surface.is_connected());
        }
        let hex = genus_rational_polygon(&AngleVector::rational(&[(2, 3); 6]).unwrap()).unwrap();
        assert_eq!(hex.deck_order, 3);
        assert!(hex.cone_points.iter().all(|c| c.order == 3 && c.multiplicity == 1));
        let b = basis(&["a"]);
        let irr = AngleVector::parse(&b, &["a", "a", "1 - 2*a"]).unwrap();
        assert!(matches!(genus_rational_polygon(&irr), Err(RibbonError::IrrationalAngle(0))));
        assert!(matches!(genus_formula(&irr), Err(RibbonError::IrrationalAngle(0))));
    }

    #[test]
    fn induced_lift_of_full_orbit_matches_finite_lift() {
        let b = basis(&[]);
        let c = AngleValue::from_ratio(&b, 1, 4).rotation_class();
        let r = planar_rose(&b, &[c.clone(), c.clone()]);
        let elems: Vec<RotationClass> = (0..4).map(|k| c.times(k)).collect();
        let induced = induced_lift(&r, &elems);
        let q = FiniteQuotient::new(deck_for(&b, &["1/4", "1/4"]), 1).unwrap();
        let fin = finite_quotient_lift(&r, &q).unwrap();
        assert_eq!(surface_report(&induced).unwrap(), surface_report(&fin.graph).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let b = basis(&["a", "b"]);
        let r = planar_rose(&b, &[AngleValue::symbol(&b, 0).rotation_class(), AngleValue::parse(&b, "1/3 + b").unwrap().rotation_class()]);
        let text = r.to_text();
        assert_eq!(text, "ribbon-graph\nsymbols: a b\nvertex 0: 0 1 2 3\nedge 0 1: a\nedge 2 3: 1/3 + b\n");
        let (g, v) = parse_text(&text).unwrap();
        assert_eq!(&g, r.graph());
        assert_eq!(v.unwrap(), r);
        let plain = rose(2, true).to_text();
        let (g, v) = parse_text(&plain).unwrap();
        assert_eq!(g, rose(2, true));
        assert!(v.is_none());
        assert!(parse_text("nonsense").is_err());
        assert!(parse_text("ribbon-graph\nvertex 0: 0 1\nedge 0 0\n").is_err());
    }

    /// Random ribbon graph: `v` vertices, `e` edges, shuffled rotations.
    pub(crate) fn random_graph(v: usize, e: usize, seed: &[usize]) -> RibbonGraph {
        let nh = 2 * e;
        let mut vertices = vec![Vec::new(); v.max(1)];
        for h in 0..nh {
            let vv = seed[h % seed.len()].wrapping_mul(h + 7) % vertices.len();
            let cyc: &mut Vec<usize> = &mut vertices[vv];
            let pos = seed[(h * 3) % seed.len()] % (cyc.len() + 1);
            cyc.insert(pos, h);
        }
        let pairing = (0..nh).map(|h| h ^ 1).collect();
        RibbonGraph::new(vertices, pairing).unwrap()
    }

    proptest! {
        #[test]
        fn face_tracing_matches_cell_complex(v in 1usize..6, e in 0usize..=12, seed in proptest::collection::vec(0usize..1000, 1..20)) {
            let g = random_graph(v, e, &seed);
            let cycles = trace_boundaries(&g);
            let total: usize = cycles.iter().map(BoundaryCycle::len).sum();
            prop_assert_eq!(total, g.half_edge_count());
            let rep = surface_report(&g).unwrap();
            prop_assert_eq!(rep, cell_complex_report(&g));
        }

        #[test]
        fn lift_multiplies_euler_characteristic(d1 in 1i64..7, d2 in 1i64..7, n1 in 0i64..7, n2 in 0i64..7) {
            let b = Arc::new(IrrationalBasis::empty());
            let c1 = AngleValue::from_ratio(&b, n1, d1).rotation_class();
            let c2 = AngleValue::from_ratio(&b, n2, d2).rotation_class();
            let r = planar_rose(&b, &[c1.clone(), c2.clone()]);
            let deck = DeckGroup::new(AngleChoice::from_values(&b, vec![c1.value().clone(), c2.value().clone()])).unwrap();
            let q = FiniteQuotient::new(deck, 1).unwrap();
            let lift = finite_quotient_lift(&r, &q).unwrap();
            let base = surface_report(r.graph()).unwrap();
            let up = surface_report(&lift.graph).unwrap();
            prop_assert_eq!(up.euler_characteristic, q.order() as i64 * base.euler_characteristic);
            prop_assert_eq!(up, cell_complex_report(&lift.graph));
        }
    }
}
