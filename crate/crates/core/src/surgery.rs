//! Handles in the irrational cover: word lifts of the two-petal rose, the
//! resonance subcase table, and families of pairwise disjoint tori.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::angles::{AngleValue, AngleVector, IrrationalBasis, Rational, RotationClass};
use crate::ribbon::{self, RibbonError, RibbonGraph, SurfaceReport, VoltageRibbonGraph};

/// Note attached to every certificate about the model of U.
pub const MODEL_NOTE: &str =
    "U is modelled as the thickened two-petal rose (a pair of pants); extra holes of the polygon-specific domain change boundary counts but not genus";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("word syntax at byte {pos}: {reason}")]
    Parse { pos: usize, reason: String },
    #[error("letter B{index} has no generator image ({available} available)")]
    GeneratorOutOfRange { index: usize, available: usize },
    #[error("angle {0} is rational; surgery needs irrational angles")]
    RationalAngle(String),
    #[error("more than one of a+b, a−b, 2a+b, 2a−b is an integer for a = {a}, b = {b}")]
    SeveralIntegral { a: String, b: String },
    #[error("expected a one-vertex rose with {0} petals")]
    NotRose(usize),
    #[error("lift of {word} is disconnected ({components} components)")]
    Disconnected { word: String, components: usize },
    #[error("lift of the {tag} word {word} has genus 0 (χ = {euler}, b = {boundaries}, V = {vertices}, E = {edges})")]
    GenusZero { tag: SubcaseTag, word: String, euler: i64, boundaries: usize, vertices: usize, edges: usize },
    #[error("translates {0} and {1} of the prefix set intersect")]
    OverlappingTranslates(usize, usize),
    #[error("no irrational angle; the surface is compact")]
    NoIrrationalAngle,
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub sign: i8,
}

impl Letter {
    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, sign: -self.sign }
    }
}

/// A word in the generators B₁, B₂, …; read left to right as a path.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// B_{generator+1}^power.
    pub fn power(generator: usize, power: i64) -> Self {
        let sign = if power < 0 { -1 } else { 1 };
        Self { letters: vec![Letter { generator, sign }; power.unsigned_abs() as usize] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn then(&self, other: &Word) -> Self {
        Self { letters: self.letters.iter().chain(&other.letters).copied().collect() }
    }

    /// [m₁, m₂] = m₂⁻¹ m₁⁻¹ m₂ m₁.
    pub fn commutator(m1: &Word, m2: &Word) -> Self {
        m2.inverse().then(&m1.inverse()).then(m2).then(m1)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Parses `B1 B2^-1 [B1,B2] B1^2`; `1` or the empty string is the empty word.
    pub fn parse(s: &str) -> Result<Self, SurgeryError> {
        let mut p = WordParser { src: s.as_bytes(), pos: 0 };
        let w = p.sequence()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "B{}", l.generator + 1)?;
            let exp = run as i64 * l.sign as i64;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn error(&self, reason: &str) -> SurgeryError {
        SurgeryError::Parse { pos: self.pos, reason: reason.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sequence(&mut self) -> Result<Word, SurgeryError> {
        let mut w = Word::empty();
        loop {
            match self.peek() {
                Some(b'B') | Some(b'b') | Some(b'[') => w = w.then(&self.factor()?),
                Some(b'1') if w.is_empty() => {
                    self.pos += 1;
                }
                _ => return Ok(w),
            }
        }
    }

    fn factor(&mut self) -> Result<Word, SurgeryError> {
        let base = if self.peek() == Some(b'[') {
            self.pos += 1;
            let m1 = self.sequence()?;
            if self.peek() != Some(b',') {
                return Err(self.error("expected `,` in commutator"));
            }
            self.pos += 1;
            let m2 = self.sequence()?;
            if self.peek() != Some(b']') {
                return Err(self.error("expected `]`"));
            }
            self.pos += 1;
            Word::commutator(&m1, &m2)
        } else {
            self.pos += 1;
            let n = self.integer(false)?;
            if n < 1 {
                return Err(self.error("generators are numbered from 1"));
            }
            Word::power((n - 1) as usize, 1)
        };
        if self.src.get(self.pos) == Some(&b'^') {
            self.pos += 1;
            let e = self.integer(true)?;
            let mut out = Word::empty();
            let piece = if e < 0 { base.inverse() } else { base };
            for _ in 0..e.unsigned_abs() {
                out = out.then(&piece);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn integer(&mut self, signed: bool) -> Result<i64, SurgeryError> {
        let start = self.pos;
        if signed && matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| SurgeryError::Parse { pos: start, reason: "expected an integer".into() })
    }
}

/// Deck elements visited by a word path starting at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixSet {
    /// Distinct prefixes in order of first visit; `visited[0]` is 0.
    pub visited: Vec<RotationClass>,
    pub path_length: usize,
    pub endpoint: RotationClass,
}

impl PrefixSet {
    pub fn contains(&self, g: &RotationClass) -> bool {
        self.visited.contains(g)
    }

    pub fn is_closed(&self) -> bool {
        self.endpoint.is_zero()
    }

    pub fn translate(&self, by: &RotationClass) -> Vec<RotationClass> {
        self.visited.iter().map(|g| g.add(by)).collect()
    }
}

pub fn prefix_set(w: &Word, images: &[RotationClass], basis: &Arc<IrrationalBasis>) -> Result<PrefixSet, SurgeryError> {
    let mut cur = RotationClass::zero(basis);
    let mut visited = vec![cur.clone()];
    let mut seen: HashSet<RotationClass> = HashSet::from([cur.clone()]);
    for l in w.letters() {
        let img = images.get(l.generator).ok_or(SurgeryError::GeneratorOutOfRange { index: l.generator + 1, available: images.len() })?;
        cur = if l.sign > 0 { cur.add(img) } else { cur.sub(img) };
        if seen.insert(cur.clone()) {
            visited.push(cur.clone());
        }
    }
    Ok(PrefixSet { visited, path_length: w.len(), endpoint: cur })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubcaseTag {
    Case1,
    S21,
    S22,
    S23,
    S24,
}

impl SubcaseTag {
    pub const ALL: [SubcaseTag; 5] = [SubcaseTag::Case1, SubcaseTag::S21, SubcaseTag::S22, SubcaseTag::S23, SubcaseTag::S24];

    pub fn name(self) -> &'static str {
        match self {
            SubcaseTag::Case1 => "Case1",
            SubcaseTag::S21 => "S21",
            SubcaseTag::S22 => "S22",
            SubcaseTag::S23 => "S23",
            SubcaseTag::S24 => "S24",
        }
    }
}

impl fmt::Display for SubcaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Members of R = {a+b, a−b, 2a+b, 2a−b}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResonanceMember {
    APlusB,
    AMinusB,
    TwoAPlusB,
    TwoAMinusB,
}

impl ResonanceMember {
    pub const ALL: [ResonanceMember; 4] = [ResonanceMember::APlusB, ResonanceMember::AMinusB, ResonanceMember::TwoAPlusB, ResonanceMember::TwoAMinusB];

    /// (coefficient of a, coefficient of b)
    pub fn coefficients(self) -> (i64, i64) {
        match self {
            ResonanceMember::APlusB => (1, 1),
            ResonanceMember::AMinusB => (1, -1),
            ResonanceMember::TwoAPlusB => (2, 1),
            ResonanceMember::TwoAMinusB => (2, -1),
        }
    }

    pub fn tag(self) -> SubcaseTag {
        match self {
            ResonanceMember::TwoAPlusB => SubcaseTag::S21,
            ResonanceMember::TwoAMinusB => SubcaseTag::S22,
            ResonanceMember::AMinusB => SubcaseTag::S23,
            ResonanceMember::APlusB => SubcaseTag::S24,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ResonanceMember::APlusB => "a+b",
            ResonanceMember::AMinusB => "a-b",
            ResonanceMember::TwoAPlusB => "2a+b",
            ResonanceMember::TwoAMinusB => "2a-b",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubcaseVerdict {
    pub tag: SubcaseTag,
    pub integral_element: Option<ResonanceMember>,
}

pub fn subcase_classify(a: &AngleValue, b: &AngleValue) -> Result<SubcaseVerdict, SurgeryError> {
    for x in [a, b] {
        if x.is_rational() {
            return Err(SurgeryError::RationalAngle(x.to_string()));
        }
    }
    let integral: Vec<ResonanceMember> = ResonanceMember::ALL
        .into_iter()
        .filter(|m| {
            let (p, q) = m.coefficients();
            (&a.scale_int(p) + &b.scale_int(q)).is_integer()
        })
        .collect();
    match integral.as_slice() {
        [] => Ok(SubcaseVerdict { tag: SubcaseTag::Case1, integral_element: None }),
        [m] => Ok(SubcaseVerdict { tag: m.tag(), integral_element: Some(*m) }),
        _ => Err(SurgeryError::SeveralIntegral { a: a.to_string(), b: b.to_string() }),
    }
}

fn b1() -> Word {
    Word::power(0, 1)
}

fn b2() -> Word {
    Word::power(1, 1)
}

/// The torus-producing word for each subcase.
pub fn handle_word(tag: SubcaseTag) -> Word {
    let (b1, b2) = (b1(), b2());
    match tag {
        SubcaseTag::Case1 => Word::commutator(&b1.inverse(), &b2).then(&Word::commutator(&b1, &b2)),
        SubcaseTag::S21 => b2.then(&Word::power(0, 2)).then(&Word::commutator(&b1, &b2)),
        SubcaseTag::S22 => Word::power(0, 2).then(&b2.inverse()).then(&Word::commutator(&b1, &b2.inverse())),
        SubcaseTag::S23 => b1.inverse().then(&b2).then(&b1).then(&b2.inverse()).then(&b1),
        SubcaseTag::S24 => b1.then(&Word::power(1, 2)).then(&b1),
    }
}

/// The shorter word whose lift is planar, for the subcases that have one.
pub fn preliminary_word(tag: SubcaseTag) -> Option<Word> {
    match tag {
        SubcaseTag::S23 => Some(b2().inverse().then(&b1())),
        SubcaseTag::S24 => Some(b2().then(&b1())),
        _ => None,
    }
}

/// The lifted subsurface U(w).
#[derive(Clone, Debug)]
pub struct WordLift {
    pub word: Word,
    pub prefix: PrefixSet,
    pub graph: RibbonGraph,
    pub report: SurfaceReport,
}

fn petal_images(u: &VoltageRibbonGraph) -> Result<Vec<RotationClass>, SurgeryError> {
    let g = u.graph();
    let k = g.edge_count();
    let is_rose = g.vertex_count() == 1 && (0..2 * k).all(|h| g.pairing(h) == h ^ 1 && g.vertices()[0][h] == h);
    if !is_rose {
        return Err(SurgeryError::NotRose(k));
    }
    Ok((0..k).map(|j| u.voltage(2 * j).clone()).collect())
}

/// Induced subgraph of the derived graph of `u` on the prefix set of `w`.
pub fn lift_along_word(u: &VoltageRibbonGraph, w: &Word) -> Result<WordLift, SurgeryError> {
    let images = petal_images(u)?;
    let prefix = prefix_set(w, &images, u.basis())?;
    let graph = ribbon::induced_lift(u, &prefix.visited);
    let report = ribbon::surface_report(&graph)?;
    if report.components != 1 {
        return Err(SurgeryError::Disconnected { word: w.to_string(), components: report.components });
    }
    Ok(WordLift { word: w.clone(), prefix, graph, report })
}

/// Lift on an arbitrary finite set of deck elements (used for translates).
pub fn lift_on_elements(u: &VoltageRibbonGraph, elements: &[RotationClass]) -> Result<SurfaceReport, SurgeryError> {
    Ok(ribbon::surface_report(&ribbon::induced_lift(u, elements))?)
}

fn pair_rose(a: &AngleValue, b: &AngleValue) -> VoltageRibbonGraph {
    ribbon::planar_rose(a.basis(), &[a.rotation_class(), b.rotation_class()])
}

#[derive(Clone, Debug)]
pub struct TorusLift {
    pub verdict: SubcaseVerdict,
    pub lift: WordLift,
}

pub fn verify_torus_lift(a: &AngleValue, b: &AngleValue) -> Result<TorusLift, SurgeryError> {
    let verdict = subcase_classify(a, b)?;
    let word = handle_word(verdict.tag);
    let lift = lift_along_word(&pair_rose(a, b), &word)?;
    check_handle(verdict.tag, &word, &lift.report)?;
    Ok(TorusLift { verdict, lift })
}

fn check_handle(tag: SubcaseTag, word: &Word, r: &SurfaceReport) -> Result<(), SurgeryError> {
    if r.genus == 0 {
        let c = &r.per_component[0];
        return Err(SurgeryError::GenusZero {
            tag,
            word: word.to_string(),
            euler: r.euler_characteristic,
            boundaries: r.boundary_count,
            vertices: c.vertices,
            edges: c.edges,
        });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct TorusMember {
    pub shift: i64,
    pub elements: Vec<RotationClass>,
    pub report: SurfaceReport,
}

#[derive(Clone, Debug)]
pub struct ToriFamily {
    pub verdict: SubcaseVerdict,
    pub word: Word,
    pub prefix: PrefixSet,
    /// Least M with k·a ∉ S − S for all |k| ≥ M.
    pub modulus: i64,
    pub members: Vec<TorusMember>,
}

/// The integer k with k·[a] = d, if any (a has infinite order).
fn multiple_of(a: &RotationClass, d: &RotationClass) -> Option<i64> {
    let ac = a.value().irrational_coeffs();
    let pivot = ac.iter().position(|c| !c.is_zero())?;
    let k: Rational = &d.value().irrational_coeffs()[pivot] / &ac[pivot];
    if !k.is_integer() {
        return None;
    }
    let k = k.to_integer().to_i64()?;
    (a.times(k) == *d).then_some(k)
}

/// Least M such that S + jM·a are pairwise disjoint for distinct j.
pub fn difference_set_modulus(prefix: &PrefixSet, a: &RotationClass) -> i64 {
    let mut max_k = 0i64;
    for s in &prefix.visited {
        for t in &prefix.visited {
            if let Some(k) = multiple_of(a, &s.sub(t)) {
                max_k = max_k.max(k.abs());
            }
        }
    }
    max_k + 1
}

pub fn disjoint_tori_family(a: &AngleValue, b: &AngleValue, count: usize) -> Result<ToriFamily, SurgeryError> {
    let verdict = subcase_classify(a, b)?;
    let word = handle_word(verdict.tag);
    let u = pair_rose(a, b);
    let base = lift_along_word(&u, &word)?;
    let ca = a.rotation_class();
    let modulus = difference_set_modulus(&base.prefix, &ca);
    let mut members: Vec<TorusMember> = Vec::with_capacity(count);
    let mut owner: std::collections::HashMap<RotationClass, usize> = std::collections::HashMap::new();
    for j in 1..=count {
        let shift = j as i64 * modulus;
        let elements = base.prefix.translate(&ca.times(shift));
        for g in &elements {
            if let Some(&i) = owner.get(g) {
                return Err(SurgeryError::OverlappingTranslates(i, j));
            }
        }
        owner.extend(elements.iter().map(|g| (g.clone(), j)));
        let report = lift_on_elements(&u, &elements)?;
        check_handle(verdict.tag, &word, &report)?;
        members.push(TorusMember { shift, elements, report });
    }
    Ok(ToriFamily { verdict, word, prefix: base.prefix, modulus, members })
}

#[derive(Clone, Debug)]
pub struct GenusCertificate {
    /// Polygon vertices whose angles play the roles of a and b.
    pub pair: (usize, usize),
    pub family: ToriFamily,
    pub note: &'static str,
}

/// Picks two irrational angles, preferring an ordered pair whose subcase is
/// not S24, and builds `count` disjoint handles.
pub fn infinite_genus_certificate(angles: &AngleVector, count: usize) -> Result<GenusCertificate, SurgeryError> {
    let irr = angles.irrational_indices();
    if irr.is_empty() {
        return Err(SurgeryError::NoIrrationalAngle);
    }
    let pairs: Vec<(usize, usize)> = irr.iter().flat_map(|&i| irr.iter().filter(move |&&j| j != i).map(move |&j| (i, j))).collect();
    let v = angles.angles();
    let mut chosen = pairs[0];
    for &(i, j) in &pairs {
        if subcase_classify(&v[i], &v[j])?.tag != SubcaseTag::S24 {
            chosen = (i, j);
            break;
        }
    }
    let family = disjoint_tori_family(&v[chosen.0], &v[chosen.1], count)?;
    Ok(GenusCertificate { pair: chosen, family, note: MODEL_NOTE })
}

/// Representative angle pair (a, b) satisfying each subcase hypothesis, in the
/// symbols `a` and (Case1 only) `b`.
pub fn sample_pair(tag: SubcaseTag) -> (AngleValue, AngleValue) {
    let basis = Arc::new(IrrationalBasis::new(["a", "b"]).expect("valid symbols"));
    let a = AngleValue::symbol(&basis, 0);
    let b = match tag {
        SubcaseTag::Case1 => Ok(AngleValue::symbol(&basis, 1)),
        SubcaseTag::S21 => AngleValue::parse(&basis, "1 - 2*a"),
        SubcaseTag::S22 => AngleValue::parse(&basis, "2*a - 1"),
        SubcaseTag::S23 => Ok(a.clone()),
        SubcaseTag::S24 => AngleValue::parse(&basis, "1 - a"),
    }
    .expect("valid literal");
    (a, b)
}
