//! Resonances of a choice of N−1 angle parameters and the quotient group
//! G(λ′) = ℤ^{N−1} / Res(λ′).

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::angles::{lcm_denominators, AngleValue, AngleVector, IrrationalBasis, Rational, RotationClass};
use crate::lattice::{self, IntMatrix, IntVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResonanceError {
    #[error("choice needs {expected} indices, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("index {0} is out of range")]
    OutOfRange(usize),
    #[error("index {0} is repeated; choices use distinct angles")]
    Repeated(usize),
    #[error("word has length {got}, expected {expected}")]
    WordLength { expected: usize, got: usize },
    #[error("group coordinate does not fit in 64 bits")]
    Overflow,
    #[error("Smith transform failed its unimodularity check")]
    NotUnimodular,
}

/// N−1 distinct angle indices and the corresponding values λ′.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleChoice {
    indices: Vec<usize>,
    values: Vec<AngleValue>,
    basis: Arc<IrrationalBasis>,
}

impl AngleChoice {
    pub fn new(angles: &AngleVector, indices: Vec<usize>) -> Result<Self, ResonanceError> {
        let n = angles.len();
        if indices.len() != n - 1 {
            return Err(ResonanceError::WrongLength { expected: n - 1, got: indices.len() });
        }
        for (k, &i) in indices.iter().enumerate() {
            if i >= n {
                return Err(ResonanceError::OutOfRange(i));
            }
            if indices[..k].contains(&i) {
                return Err(ResonanceError::Repeated(i));
            }
        }
        let values = indices.iter().map(|&i| angles.angles()[i].clone()).collect();
        Ok(Self { indices, values, basis: angles.basis().clone() })
    }

    /// The choice that keeps every angle except `omit`, in increasing index order.
    pub fn omitting(angles: &AngleVector, omit: usize) -> Result<Self, ResonanceError> {
        if omit >= angles.len() {
            return Err(ResonanceError::OutOfRange(omit));
        }
        Self::new(angles, (0..angles.len()).filter(|&i| i != omit).collect())
    }

    /// A choice made of bare values, for callers that have no full polygon
    /// (e.g. a pair of angles). Indices are 0..len.
    pub fn from_values(basis: &Arc<IrrationalBasis>, values: Vec<AngleValue>) -> Self {
        Self { indices: (0..values.len()).collect(), values, basis: basis.clone() }
    }

    /// Every choice of N−1 distinct indices, up to reordering.
    pub fn all(angles: &AngleVector) -> Vec<Self> {
        (0..angles.len()).rev().map(|omit| Self::omitting(angles, omit).expect("omit in range")).collect()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[AngleValue] {
        &self.values
    }

    pub fn basis(&self) -> &Arc<IrrationalBasis> {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn classes(&self) -> Vec<RotationClass> {
        self.values.iter().map(AngleValue::rotation_class).collect()
    }

    /// Σ nⱼ·λ_{iⱼ} as an exact angle value.
    pub fn combination(&self, n: &[BigInt]) -> AngleValue {
        let mut acc = AngleValue::zero(&self.basis);
        for (v, k) in self.values.iter().zip(n) {
            acc = &acc + &v.scale(&Rational::from_integer(k.clone()));
        }
        acc
    }

    pub fn is_resonance(&self, n: &[BigInt]) -> bool {
        self.combination(n).is_integer()
    }
}

/// Res(λ′) in canonical row-HNF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceLattice {
    pub ambient_rank: usize,
    pub basis: IntMatrix,
}

impl ResonanceLattice {
    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        lattice::hnf_contains(&self.basis, v)
    }
}

/// Integerize each row of a rational matrix by its own common denominator.
fn clear_row_denominators(rows: &[Vec<Rational>]) -> IntMatrix {
    rows.iter()
        .map(|row| {
            let d = lcm_denominators(row);
            row.iter().map(|q| (q * Rational::from_integer(d.clone())).to_integer()).collect()
        })
        .collect()
}

/// Irrational-coefficient matrix: row k holds the coefficient of αₖ in each chosen angle.
fn symbol_matrix(choice: &AngleChoice) -> Vec<Vec<Rational>> {
    (0..choice.basis.len())
        .map(|k| choice.values.iter().map(|v| v.irrational_coeffs()[k].clone()).collect())
        .collect()
}

fn rational_parts(choice: &AngleChoice) -> Vec<Rational> {
    choice.values.iter().map(|v| v.rational_part().clone()).collect()
}

fn dot_rational(n: &[BigInt], q: &[Rational]) -> Rational {
    n.iter().zip(q).fold(Rational::zero(), |acc, (a, b)| acc + Rational::from_integer(a.clone()) * b)
}

/// Lattice of all n with Σ nⱼλ_{iⱼ} ∈ ℤ.
///
/// Two exact steps: the saturated integer kernel L₀ of the symbol-coefficient
/// matrix, then the preimage of ℤ under the rational-part functional on L₀.
pub fn resonance_lattice(choice: &AngleChoice) -> ResonanceLattice {
    let k = choice.len();
    let sym = clear_row_denominators(&symbol_matrix(choice));
    let sym: IntMatrix = sym.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let l0 = lattice::integer_kernel(&sym, k);
    let basis = restrict_to_integral(&l0, &rational_parts(choice));
    ResonanceLattice { ambient_rank: k, basis }
}

/// Sublattice of span(l0) where the rational functional `q` takes integer values.
fn restrict_to_integral(l0: &IntMatrix, q: &[Rational]) -> IntMatrix {
    if l0.is_empty() {
        return IntMatrix::new();
    }
    let values: Vec<Rational> = l0.iter().map(|v| dot_rational(v, q)).collect();
    let den = lcm_denominators(&values);
    // t ↦ Σ tᵢ cᵢ mod den; kernel of the row [c₁ … c_s, den] projected to t
    let mut row: IntVec = values.iter().map(|v| (v * Rational::from_integer(den.clone())).to_integer()).collect();
    row.push(den);
    let s = l0.len();
    let ker = lattice::integer_kernel(&[row], s + 1);
    let t_basis: IntMatrix = lattice::hnf(&ker.iter().map(|v| v[..s].to_vec()).collect::<Vec<_>>());
    let res: IntMatrix = t_basis.iter().map(|t| lattice::vec_mul(t, l0)).collect();
    lattice::hnf(&res)
}

/// Invariants of G(λ′) = ℤ^{N−1}/Res(λ′).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGroup {
    pub ambient_rank: usize,
    pub rank: usize,
    /// Invariant factors ≥ 2, each dividing the next.
    pub torsion: Vec<BigInt>,
    /// Unimodular V: the coordinates of x ∈ ℤ^{N−1} are x·V.
    pub coordinate_map: IntMatrix,
    pub coordinate_map_inverse: IntMatrix,
    /// Full Smith diagonal (length = number of lattice relations).
    diagonal: Vec<BigInt>,
}

impl QuotientGroup {
    pub fn relations(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Coordinates of x ∈ ℤ^{N−1}: free part then torsion residues.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<GroupElementCoord, ResonanceError> {
        let y = lattice::vec_mul(x, &self.coordinate_map);
        let r = self.diagonal.len();
        let mut torsion = Vec::new();
        for (i, d) in self.diagonal.iter().enumerate() {
            if *d > BigInt::one() {
                torsion.push(y[i].mod_floor(d).to_i64().ok_or(ResonanceError::Overflow)?);
            }
        }
        let free = y[r..].iter().map(|v| v.to_i64().ok_or(ResonanceError::Overflow)).collect::<Result<_, _>>()?;
        Ok(GroupElementCoord { free, torsion })
    }

    pub fn torsion_i64(&self) -> Result<Vec<i64>, ResonanceError> {
        self.torsion.iter().map(|d| d.to_i64().ok_or(ResonanceError::Overflow)).collect()
    }

    /// The identity element.
    pub fn identity(&self) -> GroupElementCoord {
        GroupElementCoord { free: vec![0; self.rank], torsion: vec![0; self.torsion.len()] }
    }
}

/// An element of ℤ^rank × Π ℤ/dᵢ in explicit coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElementCoord {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl GroupElementCoord {
    pub fn add(&self, other: &Self, moduli: &[i64]) -> Self {
        Self {
            free: self.free.iter().zip(&other.free).map(|(a, b)| a + b).collect(),
            torsion: self.torsion.iter().zip(&other.torsion).zip(moduli).map(|((a, b), m)| (a + b).rem_euclid(*m)).collect(),
        }
    }

    pub fn neg(&self, moduli: &[i64]) -> Self {
        Self {
            free: self.free.iter().map(|a| -a).collect(),
            torsion: self.torsion.iter().zip(moduli).map(|(a, m)| (-a).rem_euclid(*m)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|x| *x == 0)
    }

    /// Largest absolute free coordinate.
    pub fn max_free(&self) -> i64 {
        self.free.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

pub fn quotient_group(lat: &ResonanceLattice) -> Result<QuotientGroup, ResonanceError> {
    let k = lat.ambient_rank;
    let mut s = lattice::smith(&lat.basis, k);
    if !lattice::is_identity(&lattice::mat_mul(&s.right, &s.right_inverse)) {
        return Err(ResonanceError::NotUnimodular);
    }
    let r = s.diagonal.len();
    // Canonical sign for free coordinates: first nonzero image among e₁, e₂, … is positive.
    for col in r..k {
        let first = (0..k).map(|j| &s.right[j][col]).find(|x| !x.is_zero()).cloned();
        if first.is_some_and(|x| x.is_negative()) {
            for row in s.right.iter_mut() {
                row[col] = -row[col].clone();
            }
            for x in s.right_inverse[col].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let torsion = s.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect();
    Ok(QuotientGroup {
        ambient_rank: k,
        rank: k - r,
        torsion,
        coordinate_map: s.right,
        coordinate_map_inverse: s.right_inverse,
        diagonal: s.diagonal,
    })
}

/// Outcome of the totally-irrational test; a witness is given when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalIrrationality {
    pub totally_irrational: bool,
    pub witness: Option<(Vec<usize>, IntVec)>,
}

pub fn is_totally_irrational(angles: &AngleVector) -> TotalIrrationality {
    for choice in AngleChoice::all(angles) {
        let lat = resonance_lattice(&choice);
        if let Some(v) = lat.basis.first() {
            return TotalIrrationality { totally_irrational: false, witness: Some((choice.indices.clone(), v.clone())) };
        }
    }
    TotalIrrationality { totally_irrational: true, witness: None }
}

/// Σ nⱼ · [λ_{iⱼ}] in the rotation-class group.
pub fn deck_group_element(word: &[BigInt], choice: &AngleChoice) -> Result<RotationClass, ResonanceError> {
    if word.len() != choice.len() {
        return Err(ResonanceError::WordLength { expected: choice.len(), got: word.len() });
    }
    Ok(choice.combination(word).rotation_class())
}

/// A choice together with its resonance lattice and quotient group; maps
/// rotation classes in the generated subgroup to explicit coordinates.
#[derive(Clone, Debug)]
pub struct DeckGroup {
    pub choice: AngleChoice,
    pub lattice: ResonanceLattice,
    pub quotient: QuotientGroup,
    symbol_rows: IntMatrix,
    symbol_scale: Vec<BigInt>,
    kernel: IntMatrix,
}

impl DeckGroup {
    pub fn new(choice: AngleChoice) -> Result<Self, ResonanceError> {
        let lattice = resonance_lattice(&choice);
        let quotient = quotient_group(&lattice)?;
        let sym = symbol_matrix(&choice);
        let symbol_scale: Vec<BigInt> = sym.iter().map(|row| lcm_denominators(row)).collect();
        let symbol_rows = clear_row_denominators(&sym);
        let kernel = lattice::integer_kernel(&symbol_rows, choice.len());
        Ok(Self { choice, lattice, quotient, symbol_rows, symbol_scale, kernel })
    }

    /// Images of the standard generators e₁,…,e_{N−1}.
    pub fn generator_images(&self) -> Result<Vec<GroupElementCoord>, ResonanceError> {
        generator_images(&self.quotient)
    }

    /// Some n ∈ ℤ^{N−1} with Σ nⱼ[λ_{iⱼ}] = c, or `None` if c is outside the generated subgroup.
    pub fn word_for_class(&self, c: &RotationClass) -> Option<IntVec> {
        let k = self.choice.len();
        let v = c.value();
        // symbol part: A·n = w, with the same row scaling as A
        let w: IntVec = (0..self.symbol_rows.len())
            .map(|row| {
                let x = &v.irrational_coeffs()[row] * Rational::from_integer(self.symbol_scale[row].clone());
                if x.is_integer() { Some(x.to_integer()) } else { None }
            })
            .collect::<Option<_>>()?;
        let n0 = solve_integer_system(&self.symbol_rows, &w, k)?;
        // rational part: adjust within the kernel so the rational parts agree mod 1
        let q = rational_parts(&self.choice);
        let delta = v.rational_part() - dot_rational(&n0, &q);
        let values: Vec<Rational> = self.kernel.iter().map(|kv| dot_rational(kv, &q)).collect();
        let den = lcm_denominators(values.iter().chain(std::iter::once(&delta)));
        let scale = Rational::from_integer(den.clone());
        let coeffs: IntVec = values.iter().map(|x| (x * &scale).to_integer()).collect();
        let target = (&delta * &scale).to_integer();
        let t = solve_congruence(&coeffs, &target, &den)?;
        let mut n = n0;
        for (ti, kv) in t.iter().zip(&self.kernel) {
            for (x, y) in n.iter_mut().zip(kv) {
                *x += ti * y;
            }
        }
        debug_assert_eq!(&self.choice.combination(&n).rotation_class(), c);
        Some(n)
    }

    pub fn coordinates_of_class(&self, c: &RotationClass) -> Option<GroupElementCoord> {
        let n = self.word_for_class(c)?;
        self.quotient.coordinates(&n).ok()
    }
}

pub fn generator_images(q: &QuotientGroup) -> Result<Vec<GroupElementCoord>, ResonanceError> {
    lattice::identity(q.ambient_rank).iter().map(|e| q.coordinates(e)).collect()
}

/// Integer solution of A·n = w (A is m×k), if one exists.
fn solve_integer_system(a: &IntMatrix, w: &[BigInt], k: usize) -> Option<IntVec> {
    if a.is_empty() {
        return Some(vec![BigInt::zero(); k]);
    }
    let at: IntMatrix = (0..k).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect();
    // U·Aᵀ = H  ⇒  A·Uᵀ = Hᵀ; solve Hᵀ·y = w by forward substitution on pivots
    let (h, u) = lattice::hnf_with_transform(&at);
    let mut y: IntVec = vec![BigInt::zero(); k];
    for (i, row) in h.iter().enumerate() {
        let Some(piv) = row.iter().position(|x| !x.is_zero()) else { break };
        let partial: BigInt = (0..i).map(|l| &h[l][piv] * &y[l]).sum();
        let (quot, rem) = (&w[piv] - partial).div_rem(&row[piv]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = quot;
    }
    // check every equation, not only the pivot rows
    for (r, wr) in w.iter().enumerate() {
        let lhs: BigInt = (0..k).map(|i| &h[i][r] * &y[i]).sum();
        if &lhs != wr {
            return None;
        }
    }
    Some((0..k).map(|j| (0..k).map(|i| &u[i][j] * &y[i]).sum()).collect())
}

/// Some t with Σ tᵢcᵢ ≡ target (mod m).
fn solve_congruence(c: &[BigInt], target: &BigInt, m: &BigInt) -> Option<IntVec> {
    // iterated extended gcd over (c₁, …, c_s, m)
    let mut g = m.clone();
    let mut coef_m = BigInt::one();
    let mut t: IntVec = vec![BigInt::zero(); c.len()];
    for (i, ci) in c.iter().enumerate() {
        let e = g.extended_gcd(ci);
        for tj in t.iter_mut().take(i) {
            *tj *= &e.x;
        }
        coef_m *= &e.x;
        t[i] = e.y;
        g = e.gcd;
    }
    if g.is_zero() {
        return target.is_zero().then_some(t);
    }
    let (mult, rem) = target.div_rem(&g);
    if !rem.is_zero() {
        return None;
    }
    Some(t.into_iter().map(|x| x * &mult).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;

    fn basis(names: &[&str]) -> Arc<IrrationalBasis> {
        Arc::new(IrrationalBasis::new(names.iter().copied()).unwrap())
    }

    fn choice(b: &Arc<IrrationalBasis>, lits: &[&str]) -> AngleChoice {
        AngleChoice::from_values(b, lits.iter().map(|l| AngleValue::parse(b, l).unwrap()).collect())
    }

    #[test]
    fn lattice_examples() {
        let b = basis(&["a", "b"]);
        assert_eq!(resonance_lattice(&choice(&b, &["a", "a"])).basis, vec![int_vec(&[1, -1])]);
        assert!(resonance_lattice(&choice(&b, &["a", "b"])).is_trivial());
        assert_eq!(
            resonance_lattice(&choice(&b, &["1/2", "1/3"])).basis,
            vec![int_vec(&[2, 0]), int_vec(&[0, 3])]
        );
        // a symbolic relation with a rational offset: a + 1/2 and a
        assert_eq!(resonance_lattice(&choice(&b, &["a + 1/2", "a"])).basis, vec![int_vec(&[2, -2])]);
    }

    #[test]
    fn quotient_examples() {
        let b = basis(&["a", "b"]);
        let q = quotient_group(&resonance_lattice(&choice(&b, &["a", "a"]))).unwrap();
        assert_eq!((q.rank, q.torsion.len()), (1, 0));
        let q = quotient_group(&resonance_lattice(&choice(&b, &["1/2", "1/3"]))).unwrap();
        assert_eq!((q.rank, q.torsion.clone()), (0, vec![BigInt::from(6)]));
        let q = quotient_group(&resonance_lattice(&choice(&b, &["a", "b"]))).unwrap();
        assert_eq!((q.rank, q.torsion.len()), (2, 0));
    }

    #[test]
    fn generator_image_examples() {
        let b = basis(&["a", "b"]);
        let q = quotient_group(&resonance_lattice(&choice(&b, &["a", "b"]))).unwrap();
        let imgs = generator_images(&q).unwrap();
        let mut frees: Vec<Vec<i64>> = imgs.iter().map(|g| g.free.clone()).collect();
        frees.sort();
        assert_eq!(frees, vec![vec![0, 1], vec![1, 0]]);

        let q = quotient_group(&resonance_lattice(&choice(&b, &["a", "a"]))).unwrap();
        let imgs = generator_images(&q).unwrap();
        assert_eq!(imgs[0].free, vec![1]);
        assert_eq!(imgs[1].free, vec![1]);

        let q = quotient_group(&resonance_lattice(&choice(&b, &["1/2", "1/3"]))).unwrap();
        let imgs = generator_images(&q).unwrap();
        for (g, ord) in imgs.iter().zip([2, 3]) {
            assert!(g.free.is_empty());
            assert_eq!((g.torsion[0] * ord) % 6, 0);
            assert_ne!(g.torsion[0], 0);
        }
    }

    #[test]
    fn totally_irrational_examples() {
        let b = basis(&["a", "b"]);
        let generic = AngleVector::parse(&b, &["a", "b", "1 - a - b"]).unwrap();
        assert!(is_totally_irrational(&generic).totally_irrational);

        let iso = AngleVector::parse(&b, &["a", "a", "1 - 2*a"]).unwrap();
        let t = is_totally_irrational(&iso);
        assert!(!t.totally_irrational);
        let (idx, v) = t.witness.unwrap();
        assert_eq!(idx, vec![0, 1]);
        assert_eq!(v, int_vec(&[1, -1]));

        let square = AngleVector::rational(&[(1, 2), (1, 2), (1, 2), (1, 2)]).unwrap();
        assert!(!is_totally_irrational(&square).totally_irrational);
    }

    #[test]
    fn deck_elements() {
        let b = basis(&["a"]);
        let c = choice(&b, &["a", "a"]);
        assert!(deck_group_element(&int_vec(&[0, 0]), &c).unwrap().is_zero());
        assert!(deck_group_element(&int_vec(&[1, -1]), &c).unwrap().is_zero());
        let c = choice(&b, &["1/2", "1/3"]);
        let e = deck_group_element(&int_vec(&[1, 1]), &c).unwrap();
        assert_eq!(e.value().rational_part(), &Rational::new(5.into(), 6.into()));
        assert!(deck_group_element(&int_vec(&[1]), &c).is_err());
    }

    #[test]
    fn choice_validation() {
        let b = basis(&["a"]);
        let v = AngleVector::parse(&b, &["a", "a", "1 - 2*a"]).unwrap();
        assert!(matches!(AngleChoice::new(&v, vec![0, 0]), Err(ResonanceError::Repeated(0))));
        assert!(matches!(AngleChoice::new(&v, vec![0, 3]), Err(ResonanceError::OutOfRange(3))));
        assert!(matches!(AngleChoice::new(&v, vec![0]), Err(ResonanceError::WrongLength { .. })));
    }

    #[test]
    fn class_coordinates_round_trip() {
        let b = basis(&["a", "b"]);
        for lits in [&["a", "b"][..], &["a", "a"], &["1/2", "1/3"], &["a + 1/2", "a", "b + 1/3"], &["2*a", "3*a"]] {
            let dg = DeckGroup::new(choice(&b, lits)).unwrap();
            let gens = dg.choice.classes();
            let imgs = dg.generator_images().unwrap();
            let moduli = dg.quotient.torsion_i64().unwrap();
            for (g, img) in gens.iter().zip(&imgs) {
                assert_eq!(&dg.coordinates_of_class(g).unwrap(), img);
            }
            // sums of generators map to sums of images
            let sum = gens.iter().fold(RotationClass::zero(&b), |acc, g| acc.add(g));
            let img_sum = imgs.iter().fold(dg.quotient.identity(), |acc, g| acc.add(g, &moduli));
            assert_eq!(dg.coordinates_of_class(&sum).unwrap(), img_sum);
        }
        // classes outside the generated subgroup have no coordinates
        let dg = DeckGroup::new(choice(&b, &["2*a"])).unwrap();
        assert!(dg.coordinates_of_class(&AngleValue::symbol(&b, 0).rotation_class()).is_none());
        let dg = DeckGroup::new(choice(&b, &["1/2"])).unwrap();
        assert!(dg.coordinates_of_class(&AngleValue::from_ratio(&b, 1, 3).rotation_class()).is_none());
    }
}
