//! Fixed-point localization packages.
//!
//! A package records, for each fixed point, the rank-1 collapsed tangent
//! weights, the closure order, and a leaf label.  Localization data (a value
//! per fixed point) model classes in middle-degree cohomology supported on
//! the relative core; the equivariant intersection form
//! `⟨β,γ⟩ = (−1)^d Σ_α β|_α γ|_α / e(α)` makes the point classes `v_α`
//! orthonormal, and the chamber classes `[X_α]` are unitriangular against
//! them with respect to the closure order.  Packages built from a polarized
//! arrangement carry the chamber data needed for `[X_α]`; hand-entered
//! packages support only the weight-level operations.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arrangement::{flat_label, ArrangementError, PolarizedArrangement, Sign, SignVector};
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KGroupError {
    UnknownPoint(String),
    /// The package was not built from an arrangement, so chamber classes
    /// are unavailable.
    NoChamberData,
    BadWeights(String),
    BadOrder(String),
    Shape(String),
    Arrangement(ArrangementError),
}

impl From<ArrangementError> for KGroupError {
    fn from(e: ArrangementError) -> Self {
        KGroupError::Arrangement(e)
    }
}

impl fmt::Display for KGroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KGroupError::UnknownPoint(p) => write!(f, "unknown fixed point {p:?}"),
            KGroupError::NoChamberData => {
                write!(f, "package lacks arrangement provenance; chamber classes unavailable")
            }
            KGroupError::BadWeights(s) => write!(f, "bad weight data: {s}"),
            KGroupError::BadOrder(s) => write!(f, "bad order data: {s}"),
            KGroupError::Shape(s) => write!(f, "shape mismatch: {s}"),
            KGroupError::Arrangement(e) => write!(f, "{e}"),
        }
    }
}

/// Pass/fail record for one named check, with a machine-readable witness on
/// failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub label: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn pass(label: &str) -> Self {
        CheckOutcome { label: label.into(), pass: true, witness: None }
    }

    pub fn fail(label: &str, witness: String) -> Self {
        CheckOutcome { label: label.into(), pass: false, witness: Some(witness) }
    }

    pub fn of(label: &str, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            CheckOutcome::pass(label)
        } else {
            CheckOutcome::fail(label, witness())
        }
    }
}

/// Order on leaf labels (smaller = deeper stratum).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafPoset {
    pub labels: Vec<String>,
    /// `leq[i][j]`: label i ≤ label j.
    pub leq: Vec<Vec<bool>>,
}

impl LeafPoset {
    fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq_labels(&self, a: &str, b: &str) -> Option<bool> {
        Some(self.leq[self.index(a)?][self.index(b)?])
    }
}

/// Chamber-level data only an arrangement can supply.
#[derive(Clone, Debug)]
struct ChamberData {
    /// `membership[a][b]`: the optimal vertex of point `b` lies in the
    /// closed chamber of point `a`.
    membership: Vec<Vec<bool>>,
    signs: Vec<SignVector>,
    /// Per point `b`: the tight hyperplanes at its vertex with the objective
    /// slope of the dual edge direction.
    basis_slopes: Vec<Vec<(usize, i64)>>,
}

#[derive(Clone, Debug)]
pub struct FixedPointPackage {
    d: usize,
    names: Vec<String>,
    weights: Vec<Vec<i64>>,
    /// Reflexive-transitive `leq[i][j]` for the closure order ⇀.
    order: Vec<Vec<bool>>,
    leaf: Vec<String>,
    leaf_order: Option<LeafPoset>,
    point_stratum: Option<String>,
    dense_stratum: Option<String>,
    chamber: Option<ChamberData>,
}

/// A class given by its restrictions to the fixed points, as multiples of
/// the degree-d monomial in the rank-1 equivariant parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedClass {
    pub values: Vec<Rat>,
}

impl FixedPointPackage {
    /// Build a hand-specified package: names with weight multisets, the ⇀
    /// relation as pairs (closed up transitively here), and leaf labels.
    pub fn new(
        d: usize,
        names: Vec<String>,
        weights: Vec<Vec<i64>>,
        order_pairs: &[(String, String)],
        leaf: Vec<String>,
    ) -> Result<Self, KGroupError> {
        let m = names.len();
        if weights.len() != m || leaf.len() != m {
            return Err(KGroupError::Shape(format!(
                "{} points, {} weight lists, {} leaf labels",
                m,
                weights.len(),
                leaf.len()
            )));
        }
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != m {
            return Err(KGroupError::Shape("duplicate point names".into()));
        }
        for (name, w) in names.iter().zip(&weights) {
            validate_weights(d, name, w)?;
        }
        let index: BTreeMap<&String, usize> = names.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let mut order = vec![vec![false; m]; m];
        for i in 0..m {
            order[i][i] = true;
        }
        for (a, b) in order_pairs {
            let &ia = index.get(a).ok_or_else(|| KGroupError::UnknownPoint(a.clone()))?;
            let &ib = index.get(b).ok_or_else(|| KGroupError::UnknownPoint(b.clone()))?;
            order[ia][ib] = true;
        }
        for k in 0..m {
            for i in 0..m {
                if order[i][k] {
                    for j in 0..m {
                        if order[k][j] {
                            order[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                if i != j && order[i][j] && order[j][i] {
                    return Err(KGroupError::BadOrder(format!(
                        "{} and {} are comparable both ways",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(FixedPointPackage {
            d,
            names,
            weights,
            order,
            leaf,
            leaf_order: None,
            point_stratum: None,
            dense_stratum: None,
            chamber: None,
        })
    }

    pub fn with_leaf_order(mut self, poset: LeafPoset) -> Self {
        self.leaf_order = Some(poset);
        self
    }

    /// Derive a package from a polarized arrangement: weights are the
    /// objective slopes of the edge directions at each optimal vertex (the
    /// objective is scaled integral first; a global scale does not change
    /// any identity tested here), order is the closure order, leaves are
    /// recession flats, and chamber data is retained for `[X]`-classes.
    pub fn from_arrangement(arr: &PolarizedArrangement) -> Result<Self, KGroupError> {
        let points = arr.fixed_points()?;
        let ord = arr.closure_order(&points);
        let xi = integralized_objective(arr);
        let mut names = Vec::new();
        let mut weights = Vec::new();
        let mut basis_slopes = Vec::new();
        let mut leaf = Vec::new();
        for p in &points {
            names.push(p.sign.to_string());
            let dual = arr.edge_dual_basis(&p.basis);
            let mut slopes = Vec::new();
            for (k, &i) in p.basis.iter().enumerate() {
                let col = dual.column(k);
                let slope = crate::arrangement::pairing(&xi, &col);
                debug_assert!(slope.is_integer());
                let val = big_to_i64(&slope.to_integer(), "objective slope")?;
                if val == 0 {
                    return Err(KGroupError::BadWeights(format!(
                        "zero slope at point {} hyperplane {}",
                        p.sign,
                        i + 1
                    )));
                }
                slopes.push((i, val));
            }
            let mut w: Vec<i64> = slopes.iter().map(|&(_, s)| s).collect();
            w.extend(slopes.iter().map(|&(_, s)| -s));
            w.sort_unstable();
            weights.push(w);
            basis_slopes.push(slopes);
            leaf.push(flat_label(&arr.leaf_flat(&p.sign)?));
        }
        let membership = (0..points.len())
            .map(|a| {
                (0..points.len())
                    .map(|b| arr.in_chamber(&points[a].sign, &points[b].vertex))
                    .collect()
            })
            .collect();
        let signs = points.iter().map(|p| p.sign.clone()).collect();

        let flats = arr.coloop_free_flats();
        let labels: Vec<String> = flats.iter().map(flat_label).collect();
        // Leaf order: smaller leaf ⟺ larger flat.
        let leq = flats
            .iter()
            .map(|f| flats.iter().map(|g| g.is_subset(f)).collect())
            .collect();
        let full: BTreeSet<usize> = (0..arr.n()).collect();
        let point_stratum = flats.iter().find(|f| **f == full).map(flat_label);
        let dense_stratum = Some(flat_label(&BTreeSet::new()));

        for (name, w) in names.iter().zip(&weights) {
            validate_weights(arr.d(), name, w)?;
        }
        Ok(FixedPointPackage {
            d: arr.d(),
            names,
            weights,
            order: ord.leq,
            leaf,
            leaf_order: Some(LeafPoset { labels, leq }),
            point_stratum,
            dense_stratum,
            chamber: Some(ChamberData { membership, signs, basis_slopes }),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self, idx: usize) -> &[i64] {
        &self.weights[idx]
    }

    pub fn leaf_label(&self, idx: usize) -> &str {
        &self.leaf[idx]
    }

    pub fn leaf_order(&self) -> Option<&LeafPoset> {
        self.leaf_order.as_ref()
    }

    pub fn point_stratum(&self) -> Option<&str> {
        self.point_stratum.as_deref()
    }

    pub fn dense_stratum(&self) -> Option<&str> {
        self.dense_stratum.as_deref()
    }

    pub fn order_leq(&self, i: usize, j: usize) -> bool {
        self.order[i][j]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, KGroupError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| KGroupError::UnknownPoint(name.into()))
    }

    /// e(α): the product of all 2d weights.
    pub fn euler_e(&self, idx: usize) -> Rat {
        let mut acc = BigInt::one();
        for &w in &self.weights[idx] {
            acc *= BigInt::from(w);
        }
        Rat::from_integer(acc)
    }

    /// v_α: the product of the negative weights at α, zero elsewhere.
    pub fn v_class(&self, idx: usize) -> LocalizedClass {
        let mut values = vec![Rat::zero(); self.len()];
        let mut acc = BigInt::one();
        for &w in self.weights[idx].iter().filter(|&&w| w < 0) {
            acc *= BigInt::from(w);
        }
        values[idx] = Rat::from_integer(acc);
        LocalizedClass { values }
    }

    /// The equivariant intersection form
    /// `⟨β, γ⟩ = (−1)^d Σ_α β|_α γ|_α / e(α)`.
    pub fn pairing(&self, beta: &LocalizedClass, gamma: &LocalizedClass) -> Result<Rat, KGroupError> {
        if beta.values.len() != self.len() || gamma.values.len() != self.len() {
            return Err(KGroupError::Shape("class length differs from point count".into()));
        }
        let mut acc = Rat::zero();
        for idx in 0..self.len() {
            acc += &beta.values[idx] * &gamma.values[idx] / self.euler_e(idx);
        }
        if self.d % 2 == 1 {
            acc = -acc;
        }
        Ok(acc)
    }

    /// The chamber class [X_α]: zero off the chamber, the local-cone product
    /// `∏ −α_i·⟨ξ,u_i⟩` at other vertices in the chamber, and `v_α|_α` on
    /// the diagonal.
    pub fn x_class(&self, idx: usize) -> Result<LocalizedClass, KGroupError> {
        let chamber = self.chamber.as_ref().ok_or(KGroupError::NoChamberData)?;
        let mut values = vec![Rat::zero(); self.len()];
        let alpha = &chamber.signs[idx];
        for b in 0..self.len() {
            if !chamber.membership[idx][b] {
                continue;
            }
            if b == idx {
                values[b] = self.v_class(idx).values[idx].clone();
                continue;
            }
            let mut acc = BigInt::one();
            for &(i, slope) in &chamber.basis_slopes[b] {
                let signed = match alpha.0[i] {
                    Sign::Plus => -slope,
                    Sign::Minus => slope,
                };
                acc *= BigInt::from(signed);
            }
            values[b] = Rat::from_integer(acc);
        }
        Ok(LocalizedClass { values })
    }

    /// Expand every [X_α] in the v-basis and check unitriangularity against
    /// ⇀ together with integrality of the coefficients.
    pub fn transition_unitriangular(&self) -> Result<TransitionReport, KGroupError> {
        let m = self.len();
        let mut matrix = vec![vec![Rat::zero(); m]; m];
        let mut unitriangular = true;
        let mut integral = true;
        let mut witness = None;
        for a in 0..m {
            let x = self.x_class(a)?;
            for b in 0..m {
                let vb = self.v_class(b).values[b].clone();
                let c = &x.values[b] / vb;
                if !c.is_integer() {
                    integral = false;
                    witness.get_or_insert(format!(
                        "non-integer coefficient {} of v_{} in [X_{}]",
                        c, self.names[b], self.names[a]
                    ));
                }
                if b == a && c != Rat::one() {
                    unitriangular = false;
                    witness.get_or_insert(format!(
                        "diagonal coefficient {} at {}",
                        c, self.names[a]
                    ));
                }
                if !c.is_zero() && !self.order[b][a] {
                    unitriangular = false;
                    witness.get_or_insert(format!(
                        "[X_{}] has a component at {} which does not precede it",
                        self.names[a], self.names[b]
                    ));
                }
                matrix[a][b] = c;
            }
        }
        Ok(TransitionReport { matrix, unitriangular, integral, witness })
    }

    /// Per-leaf graded dimensions, cumulative dimensions when a leaf order
    /// is available, and the two extreme pieces.
    pub fn leaf_filtration_dims(&self) -> LeafDims {
        let mut graded: BTreeMap<String, usize> = BTreeMap::new();
        for l in &self.leaf {
            *graded.entry(l.clone()).or_insert(0) += 1;
        }
        let cumulative = self.leaf_order.as_ref().map(|poset| {
            poset
                .labels
                .iter()
                .map(|s| {
                    let dim = self
                        .leaf
                        .iter()
                        .filter(|l| poset.leq_labels(l, s).unwrap_or(false))
                        .count();
                    (s.clone(), dim)
                })
                .collect::<BTreeMap<String, usize>>()
        });
        let point_stratum_dim = self
            .point_stratum
            .as_ref()
            .map(|s| graded.get(s).copied().unwrap_or(0));
        let dense_stratum_dim = self
            .dense_stratum
            .as_ref()
            .map(|s| graded.get(s).copied().unwrap_or(0));
        LeafDims { graded, cumulative, point_stratum_dim, dense_stratum_dim }
    }

    /// Truncated character of the standard module attached to α: the
    /// coefficients of `q^{w_α - k}`, `k = 0..=max_degree`, of
    /// `∏_{χ>0} (1 − q^{−χ})^{−1}` (the weight `w_α` is normalized to 0).
    pub fn standard_character(&self, idx: usize, max_degree: usize) -> Vec<BigInt> {
        let mut coeffs = vec![BigInt::zero(); max_degree + 1];
        coeffs[0] = BigInt::one();
        for &w in self.weights[idx].iter().filter(|&&w| w > 0) {
            let chi = w as usize;
            for k in chi..=max_degree {
                let add = coeffs[k - chi].clone();
                coeffs[k] += add;
            }
        }
        coeffs
    }

    /// Verify the axioms of a duality pairing between two packages along the
    /// supplied point and leaf bijections.
    pub fn duality_pairing_check(
        &self,
        dual: &FixedPointPackage,
        point_bijection: &BTreeMap<String, String>,
        leaf_bijection: &BTreeMap<String, String>,
    ) -> Vec<CheckOutcome> {
        let mut checks = Vec::new();

        // Point bijection well-formedness.
        let mut fwd: Vec<Option<usize>> = vec![None; self.len()];
        let mut hit = vec![false; dual.len()];
        let mut bij_witness = None;
        if self.len() != dual.len() {
            bij_witness = Some(format!("{} points vs {}", self.len(), dual.len()));
        } else {
            for (i, name) in self.names.iter().enumerate() {
                match point_bijection.get(name).map(|t| dual.index_of(t)) {
                    Some(Ok(j)) if !hit[j] => {
                        hit[j] = true;
                        fwd[i] = Some(j);
                    }
                    Some(Ok(j)) => {
                        bij_witness =
                            Some(format!("{} hit twice", dual.names[j]));
                        break;
                    }
                    _ => {
                        bij_witness = Some(format!("no image for {name}"));
                        break;
                    }
                }
            }
        }
        checks.push(CheckOutcome::of("point-bijection", bij_witness.is_none(), || {
            bij_witness.clone().unwrap()
        }));
        if checks.last().map(|c| !c.pass).unwrap_or(false) {
            return checks;
        }
        let fwd: Vec<usize> = fwd.into_iter().map(|o| o.unwrap()).collect();

        // Order reversal: α ⇀ β iff β! ⇀ α!.
        let mut rev_witness = None;
        'rev: for i in 0..self.len() {
            for j in 0..self.len() {
                if self.order[i][j] != dual.order[fwd[j]][fwd[i]] {
                    rev_witness = Some(format!(
                        "{} ⇀ {} is {} but {} ⇀ {} is {}",
                        self.names[i],
                        self.names[j],
                        self.order[i][j],
                        dual.names[fwd[j]],
                        dual.names[fwd[i]],
                        dual.order[fwd[j]][fwd[i]],
                    ));
                    break 'rev;
                }
            }
        }
        checks.push(CheckOutcome::of("order-reversal", rev_witness.is_none(), || {
            rev_witness.clone().unwrap()
        }));

        // Leaf compatibility: leaf(α)! = leaf!(α!).
        let mut leaf_witness = None;
        for i in 0..self.len() {
            let expect = leaf_bijection.get(&self.leaf[i]);
            let actual = &dual.leaf[fwd[i]];
            if expect != Some(actual) {
                leaf_witness = Some(format!(
                    "leaf({}) = {} maps to {:?}, dual leaf is {}",
                    self.names[i], self.leaf[i], expect, actual
                ));
                break;
            }
        }
        checks.push(CheckOutcome::of("leaf-compatibility", leaf_witness.is_none(), || {
            leaf_witness.clone().unwrap()
        }));

        // Per-leaf graded dimensions match across the bijection.
        let dims = self.leaf_filtration_dims();
        let dual_dims = dual.leaf_filtration_dims();
        let mut dim_witness = None;
        for (label, &count) in &dims.graded {
            let image = leaf_bijection.get(label);
            let dual_count = image.and_then(|l| dual_dims.graded.get(l)).copied();
            if dual_count != Some(count) {
                dim_witness = Some(format!(
                    "leaf {label} has dimension {count}, dual leaf {image:?} has {dual_count:?}"
                ));
                break;
            }
        }
        checks.push(CheckOutcome::of("leaf-dimension-pairing", dim_witness.is_none(), || {
            dim_witness.clone().unwrap()
        }));

        // Point stratum of one side pairs with the dense stratum of the
        // other.
        let mut swap_witness = None;
        let pairs = [
            (dims.point_stratum_dim, dual_dims.dense_stratum_dim, "point vs dual dense"),
            (dims.dense_stratum_dim, dual_dims.point_stratum_dim, "dense vs dual point"),
        ];
        for (a, b, what) in pairs {
            if let (Some(x), Some(y)) = (a, b) {
                if x != y {
                    swap_witness = Some(format!("{what}: {x} vs {y}"));
                    break;
                }
            }
        }
        checks.push(CheckOutcome::of("stratum-swap", swap_witness.is_none(), || {
            swap_witness.clone().unwrap()
        }));

        checks
    }
}

#[derive(Clone, Debug)]
pub struct TransitionReport {
    /// `matrix[a][b]`: coefficient of `v_b` in `[X_a]`.
    pub matrix: Vec<Vec<Rat>>,
    pub unitriangular: bool,
    pub integral: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct LeafDims {
    pub graded: BTreeMap<String, usize>,
    pub cumulative: Option<BTreeMap<String, usize>>,
    pub point_stratum_dim: Option<usize>,
    pub dense_stratum_dim: Option<usize>,
}

fn validate_weights(d: usize, name: &str, w: &[i64]) -> Result<(), KGroupError> {
    if w.len() != 2 * d {
        return Err(KGroupError::BadWeights(format!(
            "point {name} has {} weights, expected {}",
            w.len(),
            2 * d
        )));
    }
    let mut pos: Vec<i64> = w.iter().copied().filter(|&x| x > 0).collect();
    let mut neg: Vec<i64> = w.iter().copied().filter(|&x| x < 0).map(|x| -x).collect();
    if w.contains(&0) {
        return Err(KGroupError::BadWeights(format!("point {name} has a zero weight")));
    }
    pos.sort_unstable();
    neg.sort_unstable();
    if pos.len() != d || pos != neg {
        return Err(KGroupError::BadWeights(format!(
            "point {name} weights are not negation-symmetric with {d} positive entries"
        )));
    }
    Ok(())
}

fn integralized_objective(arr: &PolarizedArrangement) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for v in arr.objective() {
        lcm = lcm.lcm(v.denom());
    }
    let f = Rat::from_integer(lcm);
    arr.objective().iter().map(|v| v * &f).collect()
}

fn big_to_i64(x: &BigInt, what: &str) -> Result<i64, KGroupError> {
    i64::try_from(x.clone()).map_err(|_| KGroupError::BadWeights(format!("{what} overflows i64")))
}

/// The Goresky–MacPherson perp checks for a polarized arrangement: the
/// kernel of ℚⁿ → 𝔱 is perpendicular to the dual side's kernel, and the
/// tight bases of dual fixed points are complementary coordinate subspaces.
pub fn gm_perp_check(arr: &PolarizedArrangement) -> Result<Vec<CheckOutcome>, KGroupError> {
    let mut checks = Vec::new();
    let complement = arr.normals().gale_complement().map_err(ArrangementError::from)?;

    // (a) Exact orthogonality and rank complementarity.
    let product = complement.mul(&arr.normals().transpose());
    let orthogonal = (0..product.rows())
        .all(|r| product.row(r).iter().all(|x| x.is_zero()));
    let ranks = arr.normals().rank() + complement.rank() == arr.n();
    let double = complement.gale_complement().map_err(ArrangementError::from)?;
    let same_space = double.same_row_space(arr.normals());
    checks.push(CheckOutcome::of(
        "gm-kernel-perp",
        orthogonal && ranks && same_space,
        || {
            format!(
                "orthogonal={orthogonal} rank-complement={ranks} double-complement-matches={same_space}"
            )
        },
    ));

    // (b) Basis complementarity across the fixed-point bijection.
    let duality = arr.gale_dual()?;
    let points = arr.fixed_points()?;
    let dual_points = duality.dual.fixed_points()?;
    let mut witness = None;
    for (i, p) in points.iter().enumerate() {
        let q = &dual_points[duality.forward[i]];
        let mut union: Vec<usize> = p.basis.iter().chain(q.basis.iter()).copied().collect();
        union.sort_unstable();
        union.dedup();
        if union.len() != arr.n() || p.basis.iter().any(|i| q.basis.contains(i)) {
            witness = Some(format!(
                "basis {:?} of {} and dual basis {:?} of {} are not complementary",
                p.basis, p.sign, q.basis, q.sign
            ));
            break;
        }
    }
    checks.push(CheckOutcome::of("gm-basis-complementarity", witness.is_none(), || {
        witness.clone().unwrap()
    }));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use alloc::vec;
    use super::*;
    use crate::arrangement::fixtures::{rp, single, u23};
    use crate::rat_int;

    fn rp_package() -> FixedPointPackage {
        FixedPointPackage::from_arrangement(&rp()).unwrap()
    }

    #[test]
    fn weights_of_examples() {
        let pkg = rp_package();
        assert_eq!(pkg.len(), 2);
        assert_eq!(pkg.weights(0), &[-1, 1]);
        assert_eq!(pkg.weights(1), &[-1, 1]);

        let pkg = FixedPointPackage::from_arrangement(&single()).unwrap();
        assert_eq!(pkg.len(), 1);
        assert_eq!(pkg.weights(0), &[-1, 1]);

        let pkg = FixedPointPackage::from_arrangement(&u23()).unwrap();
        assert_eq!(pkg.len(), 3);
        for idx in 0..3 {
            let w = pkg.weights(idx);
            assert_eq!(w.len(), 4);
            assert!(w.iter().filter(|&&x| x > 0).count() == 2);
        }
    }

    #[test]
    fn euler_and_v_classes() {
        let pkg = rp_package();
        for idx in 0..2 {
            assert_eq!(pkg.euler_e(idx), rat_int(-1));
            assert_eq!(pkg.v_class(idx).values[idx], rat_int(-1));
        }
        // Product of {2,-2,3,-3} is 36.
        let pkg = FixedPointPackage::new(
            2,
            vec!["pt".into()],
            vec![vec![2, -2, 3, -3]],
            &[],
            vec!["leaf".into()],
        )
        .unwrap();
        assert_eq!(pkg.euler_e(0), rat_int(36));
        assert_eq!(pkg.v_class(0).values[0], rat_int(6));
        // d = 0: empty products.
        let pkg =
            FixedPointPackage::new(0, vec!["o".into()], vec![vec![]], &[], vec!["l".into()])
                .unwrap();
        assert_eq!(pkg.euler_e(0), rat_int(1));
        assert_eq!(pkg.v_class(0).values[0], rat_int(1));
        assert_eq!(pkg.pairing(&pkg.v_class(0), &pkg.v_class(0)).unwrap(), rat_int(1));
    }

    #[test]
    fn orthonormality() {
        for arr in [rp(), single(), u23()] {
            let pkg = FixedPointPackage::from_arrangement(&arr).unwrap();
            for a in 0..pkg.len() {
                for b in 0..pkg.len() {
                    let expected = if a == b { rat_int(1) } else { rat_int(0) };
                    let p = pkg.pairing(&pkg.v_class(a), &pkg.v_class(b)).unwrap();
                    assert_eq!(p, expected, "⟨v_{a}, v_{b}⟩");
                }
            }
        }
    }

    #[test]
    fn x_classes_on_rp() {
        let pkg = rp_package();
        let minus_plus = pkg.index_of("-+").unwrap();
        let plus_plus = pkg.index_of("++").unwrap();
        let x_top = pkg.x_class(plus_plus).unwrap();
        assert_eq!(x_top.values[plus_plus], rat_int(-1));
        assert_eq!(x_top.values[minus_plus], rat_int(-1));
        let x_bot = pkg.x_class(minus_plus).unwrap();
        assert_eq!(x_bot.values[minus_plus], rat_int(-1));
        assert_eq!(x_bot.values[plus_plus], rat_int(0));
        // Minimal point: [X] = v.
        assert_eq!(x_bot, pkg.v_class(minus_plus));
        // Cross-check one pairing against the transition matrix.
        let p = pkg.pairing(&x_bot, &pkg.v_class(plus_plus)).unwrap();
        assert_eq!(p, rat_int(0));
    }

    #[test]
    fn transition_matrices() {
        let pkg = rp_package();
        let rep = pkg.transition_unitriangular().unwrap();
        assert!(rep.unitriangular && rep.integral, "{:?}", rep.witness);
        let as_ints: Vec<Vec<i64>> = rep
            .matrix
            .iter()
            .map(|row| row.iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect())
            .collect();
        assert_eq!(as_ints, vec![vec![1, 0], vec![1, 1]]);

        let pkg = FixedPointPackage::from_arrangement(&single()).unwrap();
        let rep = pkg.transition_unitriangular().unwrap();
        assert_eq!(rep.matrix.len(), 1);
        assert_eq!(rep.matrix[0][0], rat_int(1));

        let pkg = FixedPointPackage::from_arrangement(&u23()).unwrap();
        let rep = pkg.transition_unitriangular().unwrap();
        assert!(rep.unitriangular && rep.integral, "{:?}", rep.witness);
    }

    #[test]
    fn hand_package_has_no_chamber_data() {
        let pkg = FixedPointPackage::new(
            1,
            vec!["a".into(), "b".into()],
            vec![vec![2, -2], vec![2, -2]],
            &[("a".into(), "b".into())],
            vec!["open".into(), "closed".into()],
        )
        .unwrap();
        assert!(matches!(pkg.x_class(0), Err(KGroupError::NoChamberData)));
        assert_eq!(pkg.pairing(&pkg.v_class(0), &pkg.v_class(0)).unwrap(), rat_int(1));
    }

    #[test]
    fn leaf_dims_on_examples() {
        let dims = rp_package().leaf_filtration_dims();
        assert_eq!(dims.graded.get("{}"), Some(&1));
        assert_eq!(dims.graded.get("{1,2}"), Some(&1));
        assert_eq!(dims.point_stratum_dim, Some(1));
        assert_eq!(dims.dense_stratum_dim, Some(1));
        // Cumulative: the dense leaf {} dominates everything.
        let cum = dims.cumulative.unwrap();
        assert_eq!(cum.get("{}"), Some(&2));
        assert_eq!(cum.get("{1,2}"), Some(&1));

        let dims = FixedPointPackage::from_arrangement(&u23()).unwrap().leaf_filtration_dims();
        assert_eq!(dims.graded.get("{}"), Some(&2));
        assert_eq!(dims.graded.get("{1,2,3}"), Some(&1));
        assert_eq!(dims.point_stratum_dim, Some(1));

        let dims = FixedPointPackage::from_arrangement(&single()).unwrap().leaf_filtration_dims();
        assert_eq!(dims.graded.get("{}"), Some(&1));
        assert_eq!(dims.point_stratum_dim, None); // a coloop: no point stratum
        assert_eq!(dims.dense_stratum_dim, Some(1));
    }

    #[test]
    fn duality_check_u23_swaps_strata() {
        let arr = u23();
        let duality = arr.gale_dual().unwrap();
        let pkg = FixedPointPackage::from_arrangement(&arr).unwrap();
        let dual_pkg = FixedPointPackage::from_arrangement(&duality.dual).unwrap();
        let dims = pkg.leaf_filtration_dims();
        let dual_dims = dual_pkg.leaf_filtration_dims();
        assert_eq!(dims.point_stratum_dim, Some(1));
        assert_eq!(dual_dims.dense_stratum_dim, Some(1));
        assert_eq!(dims.dense_stratum_dim, dual_dims.point_stratum_dim);

        let points = arr.fixed_points().unwrap();
        let dual_points = duality.dual.fixed_points().unwrap();
        let point_bij: BTreeMap<String, String> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.sign.to_string(), dual_points[duality.forward[i]].sign.to_string()))
            .collect();
        let leaf_bij: BTreeMap<String, String> = arr
            .coloop_free_flats()
            .iter()
            .map(|f| {
                let complement: BTreeSet<usize> = (0..arr.n()).filter(|i| !f.contains(i)).collect();
                (flat_label(f), flat_label(&complement))
            })
            .collect();
        for c in pkg.duality_pairing_check(&dual_pkg, &point_bij, &leaf_bij) {
            assert!(c.pass, "{}: {:?}", c.label, c.witness);
        }
    }

    #[test]
    fn duality_check_rp_against_its_dual() {
        let arr = rp();
        let duality = arr.gale_dual().unwrap();
        let pkg = FixedPointPackage::from_arrangement(&arr).unwrap();
        let dual_pkg = FixedPointPackage::from_arrangement(&duality.dual).unwrap();
        let points = arr.fixed_points().unwrap();
        let dual_points = duality.dual.fixed_points().unwrap();
        let point_bij: BTreeMap<String, String> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.sign.to_string(), dual_points[duality.forward[i]].sign.to_string()))
            .collect();
        let n = arr.n();
        let leaf_bij: BTreeMap<String, String> = arr
            .coloop_free_flats()
            .iter()
            .map(|f| {
                let complement: BTreeSet<usize> = (0..n).filter(|i| !f.contains(i)).collect();
                (flat_label(f), flat_label(&complement))
            })
            .collect();
        let checks = pkg.duality_pairing_check(&dual_pkg, &point_bij, &leaf_bij);
        for c in &checks {
            assert!(c.pass, "{}: {:?}", c.label, c.witness);
        }

        // Negative control: the identity self-"duality" must fail
        // order-reversal.
        let ident: BTreeMap<String, String> = points
            .iter()
            .map(|p| (p.sign.to_string(), p.sign.to_string()))
            .collect();
        let ident_leaf: BTreeMap<String, String> = arr
            .coloop_free_flats()
            .iter()
            .map(|f| (flat_label(f), flat_label(f)))
            .collect();
        let checks = pkg.duality_pairing_check(&pkg, &ident, &ident_leaf);
        let rev = checks.iter().find(|c| c.label == "order-reversal").unwrap();
        assert!(!rev.pass);
        assert!(rev.witness.is_some());
    }

    #[test]
    fn gm_checks_pass_on_examples() {
        for arr in [rp(), u23()] {
            for c in gm_perp_check(&arr).unwrap() {
                assert!(c.pass, "{}: {:?}", c.label, c.witness);
            }
        }
    }

    #[test]
    fn characters_match_enumeration() {
        // weights {1,-1}: geometric series.
        let pkg = rp_package();
        let coeffs = pkg.standard_character(0, 6);
        assert!(coeffs.iter().all(|c| *c == BigInt::one()));

        // weights {1,-1,2,-2}: partitions of k into parts 1 and 2.
        let pkg = FixedPointPackage::new(
            2,
            vec!["pt".into()],
            vec![vec![1, -1, 2, -2]],
            &[],
            vec!["leaf".into()],
        )
        .unwrap();
        let coeffs = pkg.standard_character(0, 10);
        for (k, c) in coeffs.iter().enumerate() {
            assert_eq!(*c, BigInt::from(k / 2 + 1), "degree {k}");
        }

        // d = 0: the constant character.
        let pkg = FixedPointPackage::new(0, vec!["o".into()], vec![vec![]], &[], vec!["l".into()])
            .unwrap();
        let coeffs = pkg.standard_character(0, 3);
        assert_eq!(coeffs[0], BigInt::one());
        assert!(coeffs[1..].iter().all(|c| c.is_zero()));
    }
}
