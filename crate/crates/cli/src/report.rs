//! Report assembly: every module's output for one polygon, plus the verdict.

use std::fmt::Write as _;

use lochness_core::deckgraph::{self, GeneratorSet};
use lochness_core::resonance::{self, AngleChoice, DeckGroup};
use lochness_core::ribbon::{self, FiniteQuotient, SurfaceReport};
use lochness_core::surgery::{self, GenusCertificate, ToriFamily, Word};
use lochness_core::unfold::{self, GeometricPolygon, MeasuredAngles, Point};
use lochness_core::{AngleVector, Order};
use serde::Serialize;

use crate::error::CliError;
use crate::spec::{PolygonBody, PolygonSpec};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_RADII: [(usize, usize); 3] = [(3, 8), (4, 10), (5, 12)];
const SMALL_RADII: [(usize, usize); 2] = [(2, 5), (3, 6)];
/// Skip finite lifts with more sheets than this.
const MAX_SHEETS: usize = 100_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ReportOptions {
    /// (inner, outer) radius pairs for the end diagnostics; None picks by rank.
    pub radii: Option<Vec<(usize, usize)>>,
    /// Free-part moduli for finite lifts of irrational polygons.
    pub moduli: Vec<i64>,
    pub tori: usize,
    /// Angle indices used as generators; defaults to omitting the last angle.
    pub choice: Option<Vec<usize>>,
    pub q_max: i64,
    pub tol: f64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self { radii: None, moduli: vec![2, 4], tori: 5, choice: None, q_max: 12, tol: 1e-9 }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AngleEntry {
    pub vertex: usize,
    pub literal: String,
    pub rational: bool,
    /// Rotation order of the angle class, or "infinite".
    pub order: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MeasurementEntry {
    pub q_max: i64,
    pub tol: String,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ChoiceEntry {
    pub indices: Vec<usize>,
    pub resonance_basis: Vec<Vec<String>>,
    pub rank: usize,
    pub torsion: Vec<String>,
    /// |G(λ′)|, or "infinite".
    pub order: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct WitnessEntry {
    pub indices: Vec<usize>,
    pub resonance: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BallEntry {
    pub radius: usize,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ComplementEntry {
    pub inner: usize,
    pub outer: usize,
    pub components: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct EndsEntry {
    pub indices: Vec<usize>,
    pub rank: usize,
    pub torsion: Vec<String>,
    pub end_count_from_rank: usize,
    pub balls: Vec<BallEntry>,
    pub complements: Vec<ComplementEntry>,
    /// Every measured complement count equals the rank prediction.
    pub agrees_with_rank: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SurfaceEntry {
    pub components: usize,
    pub euler_characteristic: String,
    pub boundary_count: usize,
    pub genus: String,
}

impl From<&SurfaceReport> for SurfaceEntry {
    fn from(r: &SurfaceReport) -> Self {
        Self {
            components: r.components,
            euler_characteristic: r.euler_characteristic.to_string(),
            boundary_count: r.boundary_count,
            genus: r.genus.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FiniteLiftEntry {
    pub modulus: i64,
    pub sheets: usize,
    pub surface: Option<SurfaceEntry>,
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ConeEntry {
    pub vertex: usize,
    pub order: String,
    pub multiplicity: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GenusEntry {
    pub genus: String,
    pub formula: String,
    pub deck_order: String,
    pub cone_points: Vec<ConeEntry>,
    pub bordered: SurfaceEntry,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MemberEntry {
    pub shift: String,
    pub elements: Vec<String>,
    pub surface: SurfaceEntry,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CertificateEntry {
    pub pair: [usize; 2],
    pub subcase: String,
    pub integral_element: Option<String>,
    pub word: String,
    pub prefix_set: Vec<String>,
    pub endpoint: String,
    pub modulus: String,
    pub members: Vec<MemberEntry>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MonsterReport {
    pub schema: u32,
    pub name: Option<String>,
    pub symbols: Vec<String>,
    pub angles: Vec<AngleEntry>,
    pub measurement: Option<MeasurementEntry>,
    pub totally_irrational: bool,
    pub resonance_witness: Option<WitnessEntry>,
    pub choices: Vec<ChoiceEntry>,
    pub ends: EndsEntry,
    pub finite_lifts: Vec<FiniteLiftEntry>,
    pub genus: Option<GenusEntry>,
    pub certificate: Option<CertificateEntry>,
    pub verdict: String,
    pub assumptions: Vec<String>,
}

impl MonsterReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn is_monster(&self) -> bool {
        self.verdict == LOCH_NESS
    }
}

pub const LOCH_NESS: &str = "Loch Ness monster";

pub fn compact_verdict(genus: u64) -> String {
    format!("compact surface of genus {genus}")
}

/// Angles of the spec, measuring vertex input first.
pub fn resolve_angles(spec: &PolygonSpec, q_max: i64, tol: f64) -> Result<(AngleVector, Option<MeasuredAngles>), CliError> {
    match &spec.body {
        PolygonBody::Angles(a) => Ok((a.clone(), None)),
        PolygonBody::Vertices(p) => {
            let m = unfold::angles_from_vertices(p, q_max, tol)?;
            Ok((m.angles.clone(), Some(m)))
        }
    }
}

fn order_string(o: Order) -> String {
    match o {
        Order::Finite(n) => n.to_string(),
        Order::Infinite => "infinite".into(),
    }
}

pub fn choice_for(angles: &AngleVector, indices: Option<&[usize]>) -> Result<AngleChoice, CliError> {
    match indices {
        Some(ix) => Ok(AngleChoice::new(angles, ix.to_vec())?),
        None => Ok(AngleChoice::omitting(angles, angles.len() - 1)?),
    }
}

pub fn choice_entry(choice: &AngleChoice) -> Result<ChoiceEntry, CliError> {
    let deck = DeckGroup::new(choice.clone())?;
    let q = &deck.quotient;
    Ok(ChoiceEntry {
        indices: choice.indices().to_vec(),
        resonance_basis: deck.lattice.basis.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        rank: q.rank,
        torsion: q.torsion.iter().map(|t| t.to_string()).collect(),
        order: q.order().map_or_else(|| "infinite".to_string(), |n| n.to_string()),
    })
}

/// Resonance data for every choice omitting one angle, plus the total-irrationality scan.
pub fn resonances(angles: &AngleVector) -> Result<(Vec<ChoiceEntry>, bool, Option<WitnessEntry>), CliError> {
    let choices = AngleChoice::all(angles).iter().map(choice_entry).collect::<Result<Vec<_>, _>>()?;
    let ti = resonance::is_totally_irrational(angles);
    let witness = ti.witness.map(|(indices, n)| WitnessEntry { indices, resonance: n.iter().map(|x| x.to_string()).collect() });
    Ok((choices, ti.totally_irrational, witness))
}

fn radii_for(rank: usize, requested: Option<&[(usize, usize)]>) -> Vec<(usize, usize)> {
    match requested {
        Some(r) => r.to_vec(),
        None if rank >= 4 => SMALL_RADII.to_vec(),
        None => DEFAULT_RADII.to_vec(),
    }
}

pub fn ends(choice: &AngleChoice, radii: Option<&[(usize, usize)]>) -> Result<EndsEntry, CliError> {
    let deck = DeckGroup::new(choice.clone())?;
    let q = &deck.quotient;
    let gens = GeneratorSet::from_quotient(q, deck.generator_images()?);
    let predicted = deckgraph::end_count_from_rank(q);
    let mut balls = Vec::new();
    let mut complements = Vec::new();
    for (inner, outer) in radii_for(q.rank, radii) {
        if inner >= outer {
            return Err(CliError::Validation(format!("radius pair ({inner}, {outer}) needs inner < outer")));
        }
        balls.push(BallEntry { radius: outer, size: deckgraph::ball(&gens, outer).len() });
        complements.push(ComplementEntry { inner, outer, components: deckgraph::complement_components(&gens, inner, outer) });
    }
    let agrees = complements.iter().all(|c| c.components == predicted);
    Ok(EndsEntry {
        indices: choice.indices().to_vec(),
        rank: q.rank,
        torsion: q.torsion.iter().map(|t| t.to_string()).collect(),
        end_count_from_rank: predicted,
        balls,
        complements,
        agrees_with_rank: agrees,
    })
}

/// Ball of radius ≤ 4 in Graphviz form.
pub fn ends_dot(choice: &AngleChoice, radius: usize) -> Result<String, CliError> {
    if radius > 4 {
        return Err(CliError::Validation("DOT output is limited to radius ≤ 4".into()));
    }
    let deck = DeckGroup::new(choice.clone())?;
    let gens = GeneratorSet::from_quotient(&deck.quotient, deck.generator_images()?);
    Ok(deckgraph::ball(&gens, radius).to_dot())
}

pub fn genus(angles: &AngleVector) -> Result<GenusEntry, CliError> {
    let g = ribbon::genus_rational_polygon(angles)?;
    let formula = ribbon::genus_formula(angles)?;
    if formula != g.genus {
        return Err(CliError::Internal(format!("cover genus {} differs from the closed formula {formula}", g.genus)));
    }
    Ok(GenusEntry {
        genus: g.genus.to_string(),
        formula: formula.to_string(),
        deck_order: g.deck_order.to_string(),
        cone_points: g
            .cone_points
            .iter()
            .map(|c| ConeEntry { vertex: c.vertex, order: c.order.to_string(), multiplicity: c.multiplicity.to_string() })
            .collect(),
        bordered: (&g.bordered).into(),
    })
}

/// Genus of the finite cover of the rose with free coordinates reduced mod `modulus`.
pub fn finite_lift(angles: &AngleVector, choice: &AngleChoice, modulus: i64) -> Result<FiniteLiftEntry, CliError> {
    let deck = DeckGroup::new(choice.clone())?;
    let q = FiniteQuotient::new(deck, modulus)?;
    let sheets = q.order();
    if sheets.saturating_mul(choice.len()) > MAX_SHEETS {
        return Ok(FiniteLiftEntry { modulus, sheets, surface: None, skipped: Some(format!("more than {MAX_SHEETS} half-edge sheets")) });
    }
    let rose = ribbon::rose_for_polygon(angles, choice)?;
    let lift = ribbon::finite_quotient_lift(&rose.rose, &q)?;
    let report = ribbon::surface_report(&lift.graph)?;
    Ok(FiniteLiftEntry { modulus, sheets, surface: Some((&report).into()), skipped: None })
}

fn family_entry(pair: [usize; 2], family: &ToriFamily, note: &str) -> CertificateEntry {
    CertificateEntry {
        pair,
        subcase: family.verdict.tag.to_string(),
        integral_element: family.verdict.integral_element.map(|m| m.label().to_string()),
        word: family.word.to_string(),
        prefix_set: family.prefix.visited.iter().map(|g| g.to_string()).collect(),
        endpoint: family.prefix.endpoint.to_string(),
        modulus: family.modulus.to_string(),
        members: family
            .members
            .iter()
            .map(|m| MemberEntry { shift: m.shift.to_string(), elements: m.elements.iter().map(|g| g.to_string()).collect(), surface: (&m.report).into() })
            .collect(),
        note: note.to_string(),
    }
}

pub fn certificate_entry(cert: &GenusCertificate) -> CertificateEntry {
    family_entry([cert.pair.0, cert.pair.1], &cert.family, cert.note)
}

/// Disjoint handles, for a given ordered pair or the automatic choice.
pub fn tori(angles: &AngleVector, count: usize, pair: Option<(usize, usize)>) -> Result<CertificateEntry, CliError> {
    match pair {
        None => Ok(certificate_entry(&surgery::infinite_genus_certificate(angles, count)?)),
        Some((i, j)) => {
            let v = angles.angles();
            if i >= v.len() || j >= v.len() {
                return Err(CliError::Validation(format!("pair ({i}, {j}) is out of range")));
            }
            let family = surgery::disjoint_tori_family(&v[i], &v[j], count)?;
            Ok(family_entry([i, j], &family, surgery::MODEL_NOTE))
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct LiftEntry {
    pub pair: [usize; 2],
    pub word: String,
    pub prefix_set: Vec<String>,
    pub endpoint: String,
    pub closed: bool,
    pub vertices: usize,
    pub edges: usize,
    pub surface: SurfaceEntry,
}

/// U(w) over the two-petal rose on angles `pair`.
pub fn lift(angles: &AngleVector, word: &str, pair: Option<(usize, usize)>) -> Result<LiftEntry, CliError> {
    let w = Word::parse(word)?;
    let (i, j) = match pair {
        Some(p) => p,
        None => {
            let irr = angles.irrational_indices();
            if irr.len() >= 2 { (irr[0], irr[1]) } else { (0, 1) }
        }
    };
    let v = angles.angles();
    if i >= v.len() || j >= v.len() || i == j {
        return Err(CliError::Validation(format!("pair ({i}, {j}) must name two distinct vertices")));
    }
    let rose = ribbon::planar_rose(angles.basis(), &[v[i].rotation_class(), v[j].rotation_class()]);
    let l = surgery::lift_along_word(&rose, &w)?;
    Ok(LiftEntry {
        pair: [i, j],
        word: l.word.to_string(),
        prefix_set: l.prefix.visited.iter().map(|g| g.to_string()).collect(),
        endpoint: l.prefix.endpoint.to_string(),
        closed: l.prefix.is_closed(),
        vertices: l.graph.vertex_count(),
        edges: l.graph.edge_count(),
        surface: (&l.report).into(),
    })
}

fn assumptions(angles: &AngleVector, measured: Option<&MeasuredAngles>) -> Vec<String> {
    let mut out = Vec::new();
    let symbols = angles.basis().symbols();
    if !symbols.is_empty() {
        out.push(format!("1, {} are linearly independent over the rationals", symbols.join(", ")));
    }
    if let Some(m) = measured {
        out.push(format!(
            "angles measured from vertex coordinates; an angle counts as rational when within {:e} of p/q with q ≤ {}",
            m.tol, m.q_max
        ));
        if let Some((v, _, _)) = m.adjustment {
            out.push(format!("the angle at vertex {v} is taken exactly as N − 2 minus the other angles"));
        }
    }
    out
}

pub fn run_report(spec: &PolygonSpec, opts: &ReportOptions) -> Result<MonsterReport, CliError> {
    let (angles, measured) = resolve_angles(spec, opts.q_max, opts.tol)?;
    let choice = choice_for(&angles, opts.choice.as_deref())?;
    let (choices, totally_irrational, witness) = resonances(&angles)?;
    let ends = ends(&choice, opts.radii.as_deref())?;
    let rational = angles.is_rational();
    let (genus_entry, certificate, finite_lifts, verdict) = if rational {
        let g = genus(&angles)?;
        let verdict = compact_verdict(g.genus.parse().expect("decimal genus"));
        (Some(g), None, Vec::new(), verdict)
    } else {
        let cert = surgery::infinite_genus_certificate(&angles, opts.tori)?;
        let lifts = opts.moduli.iter().map(|&m| finite_lift(&angles, &choice, m)).collect::<Result<Vec<_>, _>>()?;
        (None, Some(certificate_entry(&cert)), lifts, LOCH_NESS.to_string())
    };
    Ok(MonsterReport {
        schema: SCHEMA,
        name: spec.name.clone(),
        symbols: angles.basis().symbols().to_vec(),
        angles: angles
            .angles()
            .iter()
            .enumerate()
            .map(|(i, a)| AngleEntry { vertex: i, literal: a.to_string(), rational: a.is_rational(), order: order_string(a.rotation_class().order()) })
            .collect(),
        measurement: measured.as_ref().map(|m| MeasurementEntry { q_max: m.q_max, tol: format!("{:e}", m.tol), lines: m.disclosure() }),
        totally_irrational,
        resonance_witness: witness,
        choices,
        ends,
        finite_lifts,
        genus: genus_entry,
        certificate,
        verdict,
        assumptions: assumptions(&angles, measured.as_ref()),
    })
}

/// Plain-text rendering of a report.
pub fn render_text(r: &MonsterReport) -> String {
    let mut s = String::new();
    if let Some(n) = &r.name {
        let _ = writeln!(s, "polygon: {n}");
    }
    let lits: Vec<&str> = r.angles.iter().map(|a| a.literal.as_str()).collect();
    let _ = writeln!(s, "angles (units of π): {}", lits.join(", "));
    if let Some(m) = &r.measurement {
        for l in &m.lines {
            let _ = writeln!(s, "  {l}");
        }
    }
    let _ = writeln!(s, "totally irrational: {}", if r.totally_irrational { "yes" } else { "no" });
    for c in &r.choices {
        let basis: Vec<String> = c.resonance_basis.iter().map(|row| format!("({})", row.join(","))).collect();
        let _ = writeln!(
            s,
            "choice {:?}: Res basis [{}], rank {}, torsion [{}], order {}",
            c.indices,
            basis.join(" "),
            c.rank,
            c.torsion.join(","),
            c.order
        );
    }
    let e = &r.ends;
    let _ = writeln!(s, "ends of the deck graph for choice {:?}: rank {} predicts {}", e.indices, e.rank, e.end_count_from_rank);
    for c in &e.complements {
        let _ = writeln!(s, "  ball({}) minus ball({}): {} unbounded pieces", c.outer, c.inner, c.components);
    }
    for l in &r.finite_lifts {
        match (&l.surface, &l.skipped) {
            (Some(sf), _) => {
                let _ = writeln!(s, "finite lift mod {} ({} sheets): genus {}, {} boundary circles", l.modulus, l.sheets, sf.genus, sf.boundary_count);
            }
            (None, Some(why)) => {
                let _ = writeln!(s, "finite lift mod {}: skipped ({why})", l.modulus);
            }
            _ => {}
        }
    }
    if let Some(g) = &r.genus {
        let _ = writeln!(s, "genus {} (closed formula {}), deck group order {}", g.genus, g.formula, g.deck_order);
    }
    if let Some(c) = &r.certificate {
        let _ = writeln!(
            s,
            "handles: subcase {} on vertices {:?}, word {}, spacing M = {}, {} disjoint subsurfaces of genus ≥ 1",
            c.subcase,
            c.pair,
            c.word,
            c.modulus,
            c.members.len()
        );
    }
    for a in &r.assumptions {
        let _ = writeln!(s, "assumption: {a}");
    }
    let _ = writeln!(s, "verdict: {}", r.verdict);
    s
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct OrbitEntry {
    pub depth: usize,
    pub size: usize,
    pub generation_sizes: Vec<usize>,
    pub verdict: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct UnfoldEntry {
    pub crossings: usize,
    pub halt: String,
    pub period: Option<usize>,
    pub collinearity_defect: String,
    pub fold_back: String,
    pub sides: Vec<usize>,
    pub orbit: OrbitEntry,
}

pub struct UnfoldRun {
    pub entry: UnfoldEntry,
    pub record: unfold::UnfoldingRecord,
    pub orbit: unfold::DirectionOrbit,
}

pub fn unfold_polygon(p: &GeometricPolygon, start: Point, dir: Point, steps: usize, orbit_depth: usize) -> Result<UnfoldRun, CliError> {
    let record = unfold::unfold_trajectory(p, start, dir, steps)?;
    let fold = unfold::check_fold_back(p, &record);
    if let Err(e) = &fold {
        return Err(CliError::Internal(format!("unfolding does not fold back: {e}")));
    }
    let orbit = unfold::direction_orbit(p, orbit_depth);
    let entry = UnfoldEntry {
        crossings: record.crossings(),
        halt: record.halt.name().to_string(),
        period: record.period,
        collinearity_defect: format!("{:e}", record.collinearity_defect()),
        fold_back: "ok".into(),
        sides: record.copies.iter().filter_map(|c| c.entered_through).collect(),
        orbit: OrbitEntry { depth: orbit_depth, size: orbit.elements.len(), generation_sizes: orbit.generation_sizes.clone(), verdict: orbit.verdict() },
    };
    Ok(UnfoldRun { entry, record, orbit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_polygon_spec;

    fn report(text: &str) -> MonsterReport {
        run_report(&parse_polygon_spec(text).unwrap(), &ReportOptions::default()).unwrap()
    }

    #[test]
    fn square_is_a_torus() {
        let r = report(r#"{"angles": ["1/2","1/2","1/2","1/2"]}"#);
        assert_eq!(r.verdict, "compact surface of genus 1");
        assert!(r.certificate.is_none());
        assert_eq!(r.ends.rank, 0);
        assert_eq!(r.genus.as_ref().unwrap().deck_order, "2");
    }

    #[test]
    fn isosceles_irrational_triangle() {
        let r = report(r#"{"symbols":["a"], "angles":["a","a","1 - 2*a"]}"#);
        assert_eq!(r.verdict, LOCH_NESS);
        let c = r.certificate.as_ref().unwrap();
        assert_eq!(c.subcase, "S23");
        assert_eq!(c.members.len(), 5);
        assert!(!r.totally_irrational);
        assert_eq!(r.finite_lifts.iter().map(|l| l.surface.as_ref().unwrap().genus.as_str()).collect::<Vec<_>>(), ["0", "1"]);
    }

    #[test]
    fn generic_triangle_has_one_end() {
        let r = report(r#"{"symbols":["a","b"], "angles":["a","b","1 - a - b"]}"#);
        assert_eq!(r.verdict, LOCH_NESS);
        assert_eq!(r.certificate.as_ref().unwrap().subcase, "Case1");
        assert_eq!(r.ends.rank, 2);
        assert_eq!(r.ends.end_count_from_rank, 1);
        assert!(r.ends.agrees_with_rank);
        assert!(r.totally_irrational);
        assert!(r.assumptions[0].contains("a, b"));
    }

    #[test]
    fn vertex_input_is_measured() {
        let r = report(r#"{"vertices": [[0,0],[1,0],[0.3,0.9]]}"#);
        assert_eq!(r.verdict, LOCH_NESS);
        assert!(r.measurement.is_some());
        assert!(r.assumptions.iter().any(|a| a.contains("measured")));
        let r = report(r#"{"vertices": [[0,0],[2,0],[2,1],[0,1]]}"#);
        assert_eq!(r.verdict, "compact surface of genus 1");
    }

    #[test]
    fn json_is_stable() {
        let text = r#"{"symbols":["a"], "angles":["a","a","1 - 2*a"]}"#;
        assert_eq!(report(text).to_json(), report(text).to_json());
        assert!(report(text).to_json().starts_with("{\n  \"schema\": 1,"));
    }

    #[test]
    fn lift_and_tori_commands() {
        let spec = parse_polygon_spec(r#"{"symbols":["a","b"], "angles":["a","b","1 - a - b"]}"#).unwrap();
        let (angles, _) = resolve_angles(&spec, 12, 1e-9).unwrap();
        let l = lift(&angles, "[B1^-1,B2][B1,B2]", None).unwrap();
        assert_eq!(l.surface.genus, "1");
        assert!(l.closed);
        let t = tori(&angles, 3, Some((0, 1))).unwrap();
        assert_eq!(t.members.len(), 3);
        assert!(matches!(lift(&angles, "B1", Some((0, 0))), Err(CliError::Validation(_))));
    }
}
