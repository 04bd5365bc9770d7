//! Polarized hyperplane arrangements.
//!
//! A polarized arrangement is a triple `(normals, constants, objective)`:
//! `n` affine hyperplanes `⟨a_i, x⟩ + r_i = 0` in ℚ^d together with a generic
//! linear objective `ξ`.  Chambers are indexed by sign vectors; the feasible
//! and bounded ones are the "fixed points".  Everything downstream (closure
//! order, leaf flats, Gale duality, the shuffling/twisting hyperplanes) is
//! computed from this data by exact linear programming over the rationals:
//! LP solving is exhaustive basis enumeration, never simplex, so results are
//! deterministic and tolerance-free.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactlin::{ExactLinError, RatMatrix, Subsets};
use crate::poly::BivarPoly;
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrangementError {
    Shape(String),
    ZeroNormal(usize),
    NotFullRank,
    NotUnimodular,
    /// Some dependent set of hyperplanes has a common point.
    NonSimple(Vec<usize>),
    /// The objective vanishes on an edge direction.
    DegenerateObjective(Vec<usize>),
    NotAFlat(Vec<usize>),
    /// The recession-cone flat of a fixed point is not a coloop-free flat.
    LeafAssignmentFailure(String),
    /// No sign-word bijection (plain or globally negated) onto the dual
    /// fixed points exists.
    DualBijection(String),
    Lin(ExactLinError),
}

impl From<ExactLinError> for ArrangementError {
    fn from(e: ExactLinError) -> Self {
        ArrangementError::Lin(e)
    }
}

impl fmt::Display for ArrangementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrangementError::Shape(s) => write!(f, "shape mismatch: {s}"),
            ArrangementError::ZeroNormal(i) => write!(f, "normal {} is zero", i + 1),
            ArrangementError::NotFullRank => write!(f, "normals do not have full row rank"),
            ArrangementError::NotUnimodular => write!(f, "normal matrix is not unimodular"),
            ArrangementError::NonSimple(s) => {
                write!(f, "constants are not simple: hyperplanes {s:?} are dependent with a common point")
            }
            ArrangementError::DegenerateObjective(s) => {
                write!(f, "objective vanishes on the edge direction of subset {s:?}")
            }
            ArrangementError::NotAFlat(s) => write!(f, "{s:?} is not closed under matroid closure"),
            ArrangementError::LeafAssignmentFailure(s) => write!(f, "leaf assignment failed: {s}"),
            ArrangementError::DualBijection(s) => write!(f, "fixed-point bijection failed: {s}"),
            ArrangementError::Lin(e) => write!(f, "{e}"),
        }
    }
}

/// One sign per hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn of(r: &Rat) -> Option<Sign> {
        if r.is_zero() {
            None
        } else if r.is_positive() {
            Some(Sign::Plus)
        } else {
            Some(Sign::Minus)
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn unit(self) -> Rat {
        match self {
            Sign::Plus => crate::rat_int(1),
            Sign::Minus => crate::rat_int(-1),
        }
    }
}

/// A full assignment of signs to the hyperplanes of one arrangement.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.flip()).collect())
    }

    /// Parse from a word like `"+-+"`.
    pub fn parse(word: &str) -> Option<SignVector> {
        let mut signs = Vec::new();
        for ch in word.chars() {
            match ch {
                '+' => signs.push(Sign::Plus),
                '-' => signs.push(Sign::Minus),
                _ => return None,
            }
        }
        Some(SignVector(signs))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", if *s == Sign::Plus { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// A matroid flat, as a set of hyperplane indices (0-based).
pub type Flat = BTreeSet<usize>;

pub fn flat_label(f: &Flat) -> String {
    let inner: Vec<String> = f.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// A feasible, bounded sign vector together with its optimal vertex and the
/// basis of hyperplanes tight there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub sign: SignVector,
    pub vertex: Vec<Rat>,
    pub basis: Vec<usize>,
}

/// Reflexive-transitive closure order on fixed points, `leq[i][j]` meaning
/// `α_i ⇀ α_j` (the vertex of `α_i` lies in the chamber of `α_j`, closed up
/// transitively).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureOrder {
    pub leq: Vec<Vec<bool>>,
}

impl ClosureOrder {
    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedArrangement {
    d: usize,
    n: usize,
    normals: RatMatrix,
    constants: Vec<Rat>,
    objective: Vec<Rat>,
}

impl PolarizedArrangement {
    /// Validate and build.  Genericity (simple constants, generic objective)
    /// is checked eagerly here; degenerate inputs are rejected, never
    /// perturbed.
    pub fn new(
        normals: RatMatrix,
        constants: Vec<Rat>,
        objective: Vec<Rat>,
    ) -> Result<Self, ArrangementError> {
        let d = normals.rows();
        let n = normals.cols();
        if constants.len() != n {
            return Err(ArrangementError::Shape(format!(
                "{} constants for {} hyperplanes",
                constants.len(),
                n
            )));
        }
        if objective.len() != d {
            return Err(ArrangementError::Shape(format!(
                "objective has length {}, ambient rank is {}",
                objective.len(),
                d
            )));
        }
        for i in 0..n {
            if (0..d).all(|r| normals.at(r, i).is_zero()) {
                return Err(ArrangementError::ZeroNormal(i));
            }
        }
        if normals.rank() != d {
            return Err(ArrangementError::NotFullRank);
        }
        if d > 0 {
            match normals.is_unimodular() {
                Ok(true) => {}
                Ok(false) => return Err(ArrangementError::NotUnimodular),
                Err(ExactLinError::NonInteger) => return Err(ArrangementError::Lin(ExactLinError::NonInteger)),
                Err(e) => return Err(ArrangementError::Lin(e)),
            }
        }
        let arr = PolarizedArrangement { d, n, normals, constants, objective };
        arr.check_simple()?;
        arr.check_objective()?;
        Ok(arr)
    }

    fn check_simple(&self) -> Result<(), ArrangementError> {
        // Simpleness: every set of hyperplanes with a common point is
        // independent.  It is enough to check subsets of size ≤ d+1, since
        // every dependent set contains a circuit of that size.
        for k in 2..=self.d + 1 {
            if k > self.n {
                break;
            }
            for subset in Subsets::new(self.n, k) {
                if self.normal_rank(&subset) == k {
                    continue;
                }
                let mat = self.normals.select_columns(&subset).transpose();
                let rhs: Vec<Rat> = subset.iter().map(|&i| -self.constants[i].clone()).collect();
                if mat.solve(&rhs).is_some() {
                    return Err(ArrangementError::NonSimple(subset));
                }
            }
        }
        Ok(())
    }

    fn check_objective(&self) -> Result<(), ArrangementError> {
        if self.d == 0 {
            return Ok(());
        }
        for subset in Subsets::new(self.n, self.d - 1) {
            if self.normal_rank(&subset) != self.d - 1 {
                continue;
            }
            let dir = self.edge_direction(&subset);
            if pairing(&self.objective, &dir).is_zero() {
                return Err(ArrangementError::DegenerateObjective(subset));
            }
        }
        Ok(())
    }

    /// The kernel direction of a rank d-1 subset of normals.
    fn edge_direction(&self, subset: &[usize]) -> Vec<Rat> {
        let mat = self.normals.select_columns(subset).transpose();
        let k = mat.kernel_basis();
        debug_assert_eq!(k.rows(), 1);
        k.row(0).to_vec()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn normals(&self) -> &RatMatrix {
        &self.normals
    }

    pub fn constants(&self) -> &[Rat] {
        &self.constants
    }

    pub fn objective(&self) -> &[Rat] {
        &self.objective
    }

    pub fn normal(&self, i: usize) -> Vec<Rat> {
        self.normals.column(i)
    }

    /// ⟨a_i, x⟩ + r_i.
    pub fn value(&self, i: usize, x: &[Rat]) -> Rat {
        pairing(&self.normal(i), x) + &self.constants[i]
    }

    /// Rank of a set of normals.
    pub fn normal_rank(&self, subset: &[usize]) -> usize {
        self.normals.select_columns(subset).rank()
    }

    /// Matroid closure of a subset.
    pub fn closure(&self, subset: &Flat) -> Flat {
        let cols: Vec<usize> = subset.iter().copied().collect();
        let r = self.normal_rank(&cols);
        (0..self.n)
            .filter(|&i| {
                let mut with = cols.clone();
                with.push(i);
                self.normals.select_columns(&with).rank() == r
            })
            .collect()
    }

    pub fn is_flat(&self, subset: &Flat) -> bool {
        self.closure(subset) == *subset
    }

    /// Is `x` in the closed chamber of `alpha`?
    pub fn in_chamber(&self, alpha: &SignVector, x: &[Rat]) -> bool {
        assert_eq!(alpha.len(), self.n);
        (0..self.n).all(|i| !(alpha.0[i].unit() * self.value(i, x)).is_negative())
    }

    /// Exact LP feasibility of the chamber Δ_α.
    pub fn feasible(&self, alpha: &SignVector) -> bool {
        assert_eq!(alpha.len(), self.n);
        if self.d == 0 {
            return true;
        }
        // A nonempty chamber is pointed (the normals span), so it contains a
        // basic point: enumerate all d-subsets.
        for basis in Subsets::new(self.n, self.d) {
            let mat = self.normals.select_columns(&basis).transpose();
            let rhs: Vec<Rat> = basis.iter().map(|&i| -self.constants[i].clone()).collect();
            let Some(x) = mat.solve(&rhs) else { continue };
            if mat.rank() < self.d {
                continue;
            }
            if self.in_chamber(alpha, &x) {
                return true;
            }
        }
        false
    }

    /// Generators of the recession cone of Δ_α (some may be non-extreme;
    /// together they generate).  Directions are deduplicated and primitive.
    fn recession_rays(&self, alpha: &SignVector) -> Vec<Vec<Rat>> {
        let mut rays: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        if self.d == 0 {
            return Vec::new();
        }
        for subset in Subsets::new(self.n, self.d - 1) {
            if self.normal_rank(&subset) != self.d - 1 {
                continue;
            }
            let dir = self.edge_direction(&subset);
            for cand in [primitive_oriented(&dir), primitive_oriented(&negate(&dir))] {
                let as_rat: Vec<Rat> = cand.iter().cloned().map(Rat::from_integer).collect();
                let inside = (0..self.n).all(|i| {
                    !(alpha.0[i].unit() * pairing(&self.normal(i), &as_rat)).is_negative()
                });
                if inside {
                    rays.insert(cand);
                }
            }
        }
        rays.into_iter()
            .map(|v| v.into_iter().map(Rat::from_integer).collect())
            .collect()
    }

    /// Is the objective bounded above on Δ_α?  (Tested on the recession
    /// cone, so this is meaningful for infeasible sign vectors too.)
    pub fn bounded(&self, alpha: &SignVector) -> bool {
        self.recession_rays(alpha)
            .iter()
            .all(|c| !pairing(&self.objective, c).is_positive())
    }

    /// All feasible bounded sign vectors with their optimal vertices and
    /// bases, in lexicographic basis order.
    pub fn fixed_points(&self) -> Result<Vec<FixedPoint>, ArrangementError> {
        let mut out = Vec::new();
        for basis in Subsets::new(self.n, self.d) {
            let mat = self.normals.select_columns(&basis).transpose();
            if mat.rank() < self.d {
                continue;
            }
            let rhs: Vec<Rat> = basis.iter().map(|&i| -self.constants[i].clone()).collect();
            let vertex = mat.solve(&rhs).expect("invertible basis system");
            let dual = self.edge_dual_basis(&basis);
            let mut signs = vec![Sign::Plus; self.n];
            for (k, &i) in basis.iter().enumerate() {
                let slope = pairing(&self.objective, &dual.column(k));
                match Sign::of(&slope) {
                    Some(s) => signs[i] = s.flip(),
                    None => return Err(ArrangementError::DegenerateObjective(vec![i])),
                }
            }
            for j in 0..self.n {
                if basis.contains(&j) {
                    continue;
                }
                match Sign::of(&self.value(j, &vertex)) {
                    Some(s) => signs[j] = s,
                    None => {
                        let mut tight = basis.clone();
                        tight.push(j);
                        return Err(ArrangementError::NonSimple(tight));
                    }
                }
            }
            out.push(FixedPoint { sign: SignVector(signs), vertex, basis });
        }
        // α ↦ basis is a bijection onto the matroid bases, so the sign
        // words must all be distinct.
        let words: BTreeSet<&SignVector> = out.iter().map(|p| &p.sign).collect();
        assert_eq!(words.len(), out.len(), "optimal sign vectors collide");
        Ok(out)
    }

    /// Columns `u_i` (i running over `basis`) with `⟨a_j, u_i⟩ = δ_{ji}` for
    /// `j` in `basis`: the edge directions dual to the tight normals.
    pub fn edge_dual_basis(&self, basis: &[usize]) -> RatMatrix {
        let mat = self.normals.select_columns(basis).transpose();
        let mut inv = RatMatrix::zero(self.d, self.d);
        for k in 0..self.d {
            let mut e = vec![Rat::zero(); self.d];
            e[k] = Rat::one();
            let col = mat.solve(&e).expect("basis matrix invertible");
            for r in 0..self.d {
                *inv.at_mut(r, k) = col[r].clone();
            }
        }
        inv
    }

    /// The partial order ⇀: transitive closure of "vertex(α) lies in Δ_β".
    pub fn closure_order(&self, points: &[FixedPoint]) -> ClosureOrder {
        let m = points.len();
        let mut leq = vec![vec![false; m]; m];
        for i in 0..m {
            for (j, q) in points.iter().enumerate() {
                if i == j || self.in_chamber(&q.sign, &points[i].vertex) {
                    leq[i][j] = true;
                }
            }
        }
        // Warshall closure.
        for k in 0..m {
            for i in 0..m {
                if leq[i][k] {
                    for j in 0..m {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    assert!(
                        !(leq[i][j] && leq[j][i]),
                        "closure relation is not antisymmetric between {} and {}",
                        points[i].sign,
                        points[j].sign
                    );
                }
            }
        }
        ClosureOrder { leq }
    }

    /// The flat of hyperplanes whose normal vanishes on the whole recession
    /// cone of Δ_α; checked to be a coloop-free flat.
    pub fn leaf_flat(&self, alpha: &SignVector) -> Result<Flat, ArrangementError> {
        let rays = self.recession_rays(alpha);
        let flat: Flat = (0..self.n)
            .filter(|&i| rays.iter().all(|c| pairing(&self.normal(i), c).is_zero()))
            .collect();
        if !self.is_flat(&flat) {
            return Err(ArrangementError::LeafAssignmentFailure(format!(
                "recession set {:?} of {} is not a flat",
                flat, alpha
            )));
        }
        if !self.coloops_in(&flat).is_empty() {
            return Err(ArrangementError::LeafAssignmentFailure(format!(
                "recession flat {:?} of {} has a coloop",
                flat, alpha
            )));
        }
        Ok(flat)
    }

    /// Coloops of the restricted matroid on `subset`.
    fn coloops_in(&self, subset: &Flat) -> Vec<usize> {
        let cols: Vec<usize> = subset.iter().copied().collect();
        let full = self.normal_rank(&cols);
        cols.iter()
            .copied()
            .filter(|&i| {
                let without: Vec<usize> = cols.iter().copied().filter(|&j| j != i).collect();
                self.normals.select_columns(&without).rank() < full
            })
            .collect()
    }

    /// All coloop-free flats, ordered by (size, elements).  Always contains ∅.
    pub fn coloop_free_flats(&self) -> Vec<Flat> {
        let mut flats: BTreeSet<Flat> = BTreeSet::new();
        for k in 0..=self.d.min(self.n) {
            for subset in Subsets::new(self.n, k) {
                if self.normal_rank(&subset) != k {
                    continue;
                }
                flats.insert(self.closure(&subset.iter().copied().collect()));
            }
        }
        let mut out: Vec<Flat> = flats
            .into_iter()
            .filter(|f| self.coloops_in(f).is_empty())
            .collect();
        out.sort_by_key(|f| (f.len(), f.iter().copied().collect::<Vec<_>>()));
        out
    }

    /// Normal matrix of the localization 𝒜_F: the normals of `flat`,
    /// rewritten in a saturated lattice basis of their span.
    pub fn localization_normals(&self, flat: &Flat) -> Result<RatMatrix, ArrangementError> {
        self.require_flat(flat)?;
        let cols: Vec<usize> = flat.iter().copied().collect();
        let span_basis = saturated_row_basis(&self.normals.select_columns(&cols).transpose())?;
        let lift = span_basis.transpose(); // d × k
        let mut out = RatMatrix::zero(span_basis.rows(), cols.len());
        for (j, &i) in cols.iter().enumerate() {
            let coords = lift.solve(&self.normal(i)).expect("normal lies in its own span");
            for r in 0..span_basis.rows() {
                *out.at_mut(r, j) = coords[r].clone();
            }
        }
        Ok(out)
    }

    /// Normal matrix of the restriction 𝒜^F: normals of the hyperplanes not
    /// in `flat`, projected to the quotient by the span of the flat's
    /// normals; parallel copies are retained.
    pub fn restriction_normals(&self, flat: &Flat) -> Result<RatMatrix, ArrangementError> {
        self.require_flat(flat)?;
        let proj = self.quotient_projection(flat)?;
        let rest: Vec<usize> = (0..self.n).filter(|i| !flat.contains(i)).collect();
        let mut out = RatMatrix::zero(proj.rows(), rest.len());
        for (j, &i) in rest.iter().enumerate() {
            let img = proj.mul_vec(&self.normal(i));
            for r in 0..proj.rows() {
                *out.at_mut(r, j) = img[r].clone();
            }
        }
        Ok(out)
    }

    fn require_flat(&self, flat: &Flat) -> Result<(), ArrangementError> {
        if !self.is_flat(flat) {
            return Err(ArrangementError::NotAFlat(flat.iter().copied().collect()));
        }
        Ok(())
    }

    /// Integer matrix `P` with saturated row lattice spanning the
    /// perpendicular of the flat's normal span; `x ↦ Px` is the quotient map
    /// by that span and simultaneously a coordinate chart on the subspace
    /// cut out by the flat.
    fn quotient_projection(&self, flat: &Flat) -> Result<RatMatrix, ArrangementError> {
        let cols: Vec<usize> = flat.iter().copied().collect();
        let rows = saturated_row_basis(&self.normals.select_columns(&cols).transpose())?;
        Ok(rows.gale_complement()?)
    }

    /// The localization 𝒜_F as a polarized arrangement: hyperplanes of the
    /// flat in the span of their normals, constants kept, objective
    /// orthogonally projected.
    pub fn localization(&self, flat: &Flat) -> Result<PolarizedArrangement, ArrangementError> {
        let normals = self.localization_normals(flat)?;
        let cols: Vec<usize> = flat.iter().copied().collect();
        let constants: Vec<Rat> = cols.iter().map(|&i| self.constants[i].clone()).collect();
        let span_basis = saturated_row_basis(&self.normals.select_columns(&cols).transpose())?;
        let objective = span_basis
            .mul(&span_basis.transpose())
            .solve(&span_basis.mul_vec(&self.objective))
            .expect("gram matrix of a basis is invertible");
        PolarizedArrangement::new(normals, constants, objective)
    }

    /// The restriction 𝒜^F as a polarized arrangement (a multiarrangement in
    /// general): hyperplanes off the flat, transported to the quotient.
    pub fn restriction(&self, flat: &Flat) -> Result<PolarizedArrangement, ArrangementError> {
        let normals = self.restriction_normals(flat)?;
        let proj = self.quotient_projection(flat)?;
        let base = self.flat_base_point(flat);
        let rest: Vec<usize> = (0..self.n).filter(|i| !flat.contains(i)).collect();
        let constants: Vec<Rat> = rest.iter().map(|&i| self.value(i, &base)).collect();
        let objective = proj.mul_vec(&self.objective);
        PolarizedArrangement::new(normals, constants, objective)
    }

    /// A deterministic point on the intersection of the flat's hyperplanes.
    /// When parallel copies inside the flat make that intersection empty,
    /// the system is solved on the lexicographically first maximal
    /// independent subset instead.
    fn flat_base_point(&self, flat: &Flat) -> Vec<Rat> {
        let mut chosen: Vec<usize> = Vec::new();
        for &i in flat.iter() {
            let mut cand = chosen.clone();
            cand.push(i);
            if self.normal_rank(&cand) == cand.len() {
                chosen = cand;
            }
        }
        if chosen.is_empty() {
            return vec![Rat::zero(); self.d];
        }
        let mat = self.normals.select_columns(&chosen).transpose();
        let rhs: Vec<Rat> = chosen.iter().map(|&i| -self.constants[i].clone()).collect();
        mat.least_norm_solve(&rhs).expect("independent subset")
    }

    /// Tutte polynomial of the matroid of the normal vectors.
    pub fn tutte(&self) -> BivarPoly {
        tutte_from_normals(&self.normals)
    }

    /// The Gale dual arrangement together with the fixed-point bijection.
    /// Dual data follow the `(V^⊥, −ξ, −η)` transport: dual normals span the
    /// saturated integer kernel, dual constants are the minimum-norm lift of
    /// −ξ, the dual objective is the image of −r under the dual normals.
    pub fn gale_dual(&self) -> Result<GaleDuality, ArrangementError> {
        let dual_normals = self.normals.gale_complement()?;
        let neg_obj: Vec<Rat> = self.objective.iter().map(|v| -v.clone()).collect();
        let dual_constants = self.normals.least_norm_solve(&neg_obj)?;
        let neg_r: Vec<Rat> = self.constants.iter().map(|v| -v.clone()).collect();
        let dual_objective = dual_normals.mul_vec(&neg_r);
        let dual = PolarizedArrangement::new(dual_normals, dual_constants, dual_objective)?;

        let points = self.fixed_points()?;
        let dual_points = dual.fixed_points()?;
        let (map, negated) = match_sign_words(&points, &dual_points)?;
        Ok(GaleDuality { dual, forward: map, negated })
    }

    /// The shuffling hyperplanes H_sh in objective space: the spans of the
    /// independent (d−1)-subsets of normals, i.e. the degenerate loci of ξ.
    /// Each hyperplane is recorded by its primitive defining covector.
    pub fn shuffling_arrangement(&self) -> BTreeSet<Vec<BigInt>> {
        let mut out = BTreeSet::new();
        if self.d == 0 {
            return out;
        }
        for subset in Subsets::new(self.n, self.d - 1) {
            if self.normal_rank(&subset) != self.d - 1 {
                continue;
            }
            out.insert(primitive_covector(&self.edge_direction(&subset)));
        }
        out
    }

    /// H_tw, realized as the shuffling arrangement of the Gale dual in the
    /// dual coordinates (which are this arrangement's constants-space).
    pub fn twisting_arrangement(&self) -> Result<BTreeSet<Vec<BigInt>>, ArrangementError> {
        Ok(self.gale_dual()?.dual.shuffling_arrangement())
    }
}

/// Result of `gale_dual`: the dual arrangement, the index map from primal
/// fixed points to dual fixed points (both in their own `fixed_points`
/// order), and whether the sign-word identification needed a global flip.
#[derive(Clone, Debug)]
pub struct GaleDuality {
    pub dual: PolarizedArrangement,
    pub forward: Vec<usize>,
    pub negated: bool,
}

fn match_sign_words(
    points: &[FixedPoint],
    dual_points: &[FixedPoint],
) -> Result<(Vec<usize>, bool), ArrangementError> {
    if points.len() != dual_points.len() {
        return Err(ArrangementError::DualBijection(format!(
            "{} primal fixed points vs {} dual",
            points.len(),
            dual_points.len()
        )));
    }
    let index: BTreeMap<&SignVector, usize> =
        dual_points.iter().enumerate().map(|(i, p)| (&p.sign, i)).collect();
    for negated in [false, true] {
        let mut map = Vec::with_capacity(points.len());
        let mut ok = true;
        for p in points {
            let key = if negated { p.sign.negated() } else { p.sign.clone() };
            match index.get(&key) {
                Some(&i) => map.push(i),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok((map, negated));
        }
    }
    Err(ArrangementError::DualBijection(
        "sign words do not match under identity or global negation".into(),
    ))
}

/// Tutte polynomial of the column matroid of `m`, by deletion–contraction
/// with loop/coloop base cases.
pub fn tutte_from_normals(m: &RatMatrix) -> BivarPoly {
    let cols: Vec<Vec<Rat>> = (0..m.cols()).map(|c| m.column(c)).collect();
    tutte_rec(&cols)
}

fn tutte_rec(cols: &[Vec<Rat>]) -> BivarPoly {
    let Some(first) = cols.first() else {
        return BivarPoly::one();
    };
    let rest = &cols[1..];
    if first.iter().all(|x| x.is_zero()) {
        return &BivarPoly::y() * &tutte_rec(rest);
    }
    if rank_of(rest) < rank_of(cols) {
        // Coloop: deletion and contraction agree.
        return &BivarPoly::x() * &tutte_rec(rest);
    }
    let contracted = contract(first, rest);
    tutte_rec(rest) + tutte_rec(&contracted)
}

fn rank_of(cols: &[Vec<Rat>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let d = cols[0].len();
    let mut m = RatMatrix::zero(d, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for r in 0..d {
            *m.at_mut(r, j) = c[r].clone();
        }
    }
    m.rank()
}

/// Project the other columns along `e` and drop the pivot coordinate.
fn contract(e: &[Rat], others: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let pivot = e.iter().position(|x| !x.is_zero()).expect("non-loop");
    let inv = e[pivot].recip();
    others
        .iter()
        .map(|c| {
            let f = &c[pivot] * &inv;
            (0..e.len())
                .filter(|&r| r != pivot)
                .map(|r| &c[r] - &f * &e[r])
                .collect()
        })
        .collect()
}

/// Saturated integer basis of the row space of a rational matrix: rows span
/// `rowspace(m) ∩ ℤ^d` and the result is HNF-canonical.
pub fn saturated_row_basis(m: &RatMatrix) -> Result<RatMatrix, ArrangementError> {
    let (_, pivots) = m.transpose().rref();
    let rows: Vec<usize> = pivots; // independent rows of m
    let mut basis = RatMatrix::zero(rows.len(), m.cols());
    for (k, &r) in rows.iter().enumerate() {
        for c in 0..m.cols() {
            *basis.at_mut(k, c) = m.at(r, c).clone();
        }
    }
    let scaled = clear_denominators(&basis);
    let perp = scaled.gale_complement()?;
    Ok(perp.gale_complement()?)
}

fn clear_denominators(m: &RatMatrix) -> RatMatrix {
    let mut out = m.clone();
    for r in 0..m.rows() {
        let mut lcm = BigInt::one();
        for c in 0..m.cols() {
            lcm = lcm.lcm(m.at(r, c).denom());
        }
        let f = Rat::from_integer(lcm);
        for c in 0..m.cols() {
            *out.at_mut(r, c) = m.at(r, c) * &f;
        }
    }
    out
}

pub(crate) fn pairing(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn negate(v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| -x.clone()).collect()
}

/// Primitive integer vector on the same oriented ray (scale cleared, sign
/// kept).
fn primitive_oriented(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Primitive integer vector spanning the same line, first nonzero entry
/// positive.
pub fn primitive_covector(v: &[Rat]) -> Vec<BigInt> {
    let ints = primitive_oriented(v);
    match ints.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => ints.into_iter().map(|x| -x).collect(),
        _ => ints,
    }
}


#[cfg(test)]
mod tests {
    use alloc::vec;
    use super::fixtures::{rp, single, u23};
    use super::*;
    use crate::rat_int;

    fn sv(word: &str) -> SignVector {
        SignVector::parse(word).unwrap()
    }

    #[test]
    fn tutte_examples() {
        assert_eq!(format!("{}", rp().tutte()), "x + y");
        assert_eq!(format!("{}", single().tutte()), "x");
        assert_eq!(format!("{}", u23().tutte()), "x^2 + x + y");
    }

    #[test]
    fn degenerate_inputs_rejected() {
        // Coincident hyperplanes: dependent pair with a common point.
        let bad = PolarizedArrangement::new(
            RatMatrix::from_i64(&[&[1, -1]]),
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(1)],
        );
        assert!(matches!(bad, Err(ArrangementError::NonSimple(_))));
        // Degenerate objective.
        let bad = PolarizedArrangement::new(
            RatMatrix::from_i64(&[&[1, -1]]),
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(0)],
        );
        assert!(matches!(bad, Err(ArrangementError::DegenerateObjective(_))));
        // Non-unimodular normals.
        let bad = PolarizedArrangement::new(
            RatMatrix::from_i64(&[&[2, 1]]),
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(1)],
        );
        assert!(matches!(bad, Err(ArrangementError::NotUnimodular)));
    }

    #[test]
    fn feasibility_and_boundedness_on_rp() {
        let a = rp();
        assert!(a.feasible(&sv("++")) && a.bounded(&sv("++")));
        assert!(a.feasible(&sv("+-")) && !a.bounded(&sv("+-")));
        assert!(!a.feasible(&sv("--")));
    }

    #[test]
    fn fixed_points_on_examples() {
        let pts = rp().fixed_points().unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].sign, sv("-+"));
        assert_eq!(pts[0].vertex, vec![rat_int(0)]);
        assert_eq!(pts[0].basis, vec![0]);
        assert_eq!(pts[1].sign, sv("++"));
        assert_eq!(pts[1].vertex, vec![rat_int(1)]);
        assert_eq!(pts[1].basis, vec![1]);

        let pts = single().fixed_points().unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].sign, sv("-"));
        assert_eq!(pts[0].vertex, vec![rat_int(0)]);

        let pts = u23().fixed_points().unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(pts.len() as i64, 3);
        // Count equals T(1,1) by brute force over all 8 sign vectors.
        let mut brute = 0;
        for bits in 0..8u8 {
            let word: Vec<Sign> = (0..3)
                .map(|i| if bits >> i & 1 == 1 { Sign::Plus } else { Sign::Minus })
                .collect();
            let alpha = SignVector(word);
            if u23().feasible(&alpha) && u23().bounded(&alpha) {
                brute += 1;
            }
        }
        assert_eq!(brute, 3);
    }

    #[test]
    fn closure_order_on_rp() {
        let a = rp();
        let pts = a.fixed_points().unwrap();
        let ord = a.closure_order(&pts);
        // (-,+) ⇀ (+,+) but not conversely.
        assert!(ord.leq(0, 1));
        assert!(!ord.leq(1, 0));
    }

    #[test]
    fn closure_order_on_u23_is_a_chain() {
        let a = u23();
        let pts = a.fixed_points().unwrap();
        let ord = a.closure_order(&pts);
        let mut relations = 0;
        for i in 0..3 {
            for j in 0..3 {
                if i != j && ord.leq(i, j) {
                    relations += 1;
                }
            }
        }
        assert_eq!(relations, 3); // a 3-chain
    }

    #[test]
    fn leaf_flats_on_examples() {
        let a = rp();
        assert_eq!(a.leaf_flat(&sv("++")).unwrap(), Flat::from([0, 1]));
        assert_eq!(a.leaf_flat(&sv("-+")).unwrap(), Flat::new());
        assert_eq!(single().leaf_flat(&sv("-")).unwrap(), Flat::new());
    }

    #[test]
    fn coloop_free_flats_examples() {
        assert_eq!(rp().coloop_free_flats(), vec![Flat::new(), Flat::from([0, 1])]);
        assert_eq!(single().coloop_free_flats(), vec![Flat::new()]);
        assert_eq!(u23().coloop_free_flats(), vec![Flat::new(), Flat::from([0, 1, 2])]);
    }

    #[test]
    fn restriction_and_localization_extremes() {
        let a = rp();
        let full = Flat::from([0, 1]);
        let loc = a.localization(&full).unwrap();
        assert_eq!(loc, a);
        let res = a.restriction(&full).unwrap();
        assert_eq!(res.d(), 0);
        assert_eq!(res.n(), 0);

        let loc = a.localization(&Flat::new()).unwrap();
        assert_eq!(loc.d(), 0);
        let res = a.restriction(&Flat::new()).unwrap();
        assert_eq!(res, a);

        let u = u23();
        let full = Flat::from([0, 1, 2]);
        assert_eq!(u.localization(&full).unwrap(), u);
        assert_eq!(u.restriction(&full).unwrap().n(), 0);

        assert!(matches!(
            a.restriction(&Flat::from([0])),
            Err(ArrangementError::NotAFlat(_))
        ));
    }

    #[test]
    fn gale_dual_of_rp() {
        let a = rp();
        let gd = a.gale_dual().unwrap();
        assert_eq!(gd.dual.normals(), &RatMatrix::from_i64(&[&[1, 1]]));
        assert!(!gd.negated);
        let pts = a.fixed_points().unwrap();
        let dpts = gd.dual.fixed_points().unwrap();
        assert_eq!(dpts.len(), 2);
        // Basis complementarity.
        for (i, p) in pts.iter().enumerate() {
            let q = &dpts[gd.forward[i]];
            let mut union: Vec<usize> = p.basis.iter().chain(q.basis.iter()).copied().collect();
            union.sort_unstable();
            assert_eq!(union, vec![0, 1]);
        }
        // Order reversal.
        let ord = a.closure_order(&pts);
        let dord = gd.dual.closure_order(&dpts);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(ord.leq(i, j), dord.leq(gd.forward[j], gd.forward[i]));
            }
        }
    }

    #[test]
    fn gale_dual_of_u23_is_a_line_arrangement() {
        let gd = u23().gale_dual().unwrap();
        assert_eq!(gd.dual.normals(), &RatMatrix::from_i64(&[&[1, 1, 1]]));
        assert_eq!(gd.dual.fixed_points().unwrap().len(), 3);
    }

    #[test]
    fn shuffling_arrangement_examples() {
        let h = rp().shuffling_arrangement();
        assert_eq!(h.len(), 1);
        assert!(h.contains(&vec![BigInt::from(1)]));
        let h = u23().shuffling_arrangement();
        assert_eq!(h.len(), 3);
    }

    #[test]
    fn twisting_is_dual_shuffling() {
        let a = u23();
        let tw = a.twisting_arrangement().unwrap();
        let sh_dual = a.gale_dual().unwrap().dual.shuffling_arrangement();
        assert_eq!(tw, sh_dual);
    }
}
