//! Charged multipartition abaci and the e×ℓ rectangle flip.
//!
//! An ℓ-runner abacus holds one bead set per runner; runner `k` of the
//! abacus of a charged multipartition `(ξ, s)` has beads at
//! `ξ^(k)_j + s_k − j + 1` for `j ≥ 1`, so every runner is full far to the
//! left and empty far to the right.  The flip cuts all runners into aligned
//! rectangles of `e` consecutive positions and transposes each rectangle,
//! producing an `e`-runner abacus with modulus ℓ: the bead at
//! `(runner k, position m·e + c)` with `c ∈ {1, …, e}` moves to
//! `(runner c, position m·ℓ + k)`.  Applying
//! the flip twice (with the moduli swapped) is the identity.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::typea::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbacusError {
    LengthMismatch { components: usize, charges: usize },
    BadModulus(i64),
    EmptyLevel,
    /// A hand-built runner is not cofinite below / finite above.
    MalformedAbacus(String),
}

impl fmt::Display for AbacusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbacusError::LengthMismatch { components, charges } => write!(
                f,
                "multipartition has {components} components but {charges} charges"
            ),
            AbacusError::BadModulus(e) => write!(f, "modulus must be positive, got {e}"),
            AbacusError::EmptyLevel => write!(f, "an abacus needs at least one runner"),
            AbacusError::MalformedAbacus(s) => write!(f, "malformed abacus: {s}"),
        }
    }
}

/// An ℓ-tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multipartition {
    pub components: Vec<Partition>,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Self {
        Multipartition { components }
    }

    pub fn levels(&self) -> usize {
        self.components.len()
    }

    /// Total number of boxes.
    pub fn size(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", inner.join(";"))
    }
}

/// Integer charges `s = (s_1, …, s_ℓ)` together with the quiver modulus `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeVector {
    pub charges: Vec<i64>,
    pub modulus: i64,
}

impl ChargeVector {
    pub fn new(charges: Vec<i64>, modulus: i64) -> Result<Self, AbacusError> {
        if modulus < 1 {
            return Err(AbacusError::BadModulus(modulus));
        }
        if charges.is_empty() {
            return Err(AbacusError::EmptyLevel);
        }
        Ok(ChargeVector { charges, modulus })
    }

    pub fn levels(&self) -> usize {
        self.charges.len()
    }
}

/// One runner: every position `< floor` holds a bead, plus the finitely many
/// explicit beads at positions `≥ floor`.  Canonical form has `floor` equal
/// to the smallest empty slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Runner {
    floor: i64,
    beads: BTreeSet<i64>,
}

impl Runner {
    /// Build from a window description; rejects explicit beads below the
    /// floor.
    pub fn from_parts(floor: i64, beads: BTreeSet<i64>) -> Result<Self, AbacusError> {
        if let Some(&min) = beads.iter().next() {
            if min < floor {
                return Err(AbacusError::MalformedAbacus(format!(
                    "explicit bead {min} below floor {floor}"
                )));
            }
        }
        Ok(Runner { floor, beads }.canonicalized())
    }

    pub fn vacuum(charge: i64) -> Self {
        Runner { floor: charge + 1, beads: BTreeSet::new() }
    }

    fn canonicalized(mut self) -> Self {
        while self.beads.remove(&self.floor) {
            self.floor += 1;
        }
        self
    }

    pub fn has_bead(&self, pos: i64) -> bool {
        pos < self.floor || self.beads.contains(&pos)
    }

    /// The charge: position count deviation from the empty-at-zero vacuum.
    pub fn charge(&self) -> i64 {
        self.floor - 1 + self.beads.len() as i64
    }

    /// Decode into (partition, charge) via `pos_j = ξ_j + t − j + 1`.  In
    /// canonical form every bead below the floor contributes a zero part, so
    /// only the explicit beads are read.
    pub fn decode(&self) -> (Partition, i64) {
        let t = self.charge();
        let parts: Vec<usize> = self
            .beads
            .iter()
            .rev()
            .enumerate()
            .map(|(j, &pos)| {
                let part = pos - t + j as i64;
                debug_assert!(part > 0, "canonical explicit beads have positive parts");
                part as usize
            })
            .collect();
        (Partition::new(parts).expect("beads are strictly decreasing"), t)
    }
}

/// A charged abacus: one runner per level, plus the modulus used to cut
/// rectangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbacusState {
    pub runners: Vec<Runner>,
    pub modulus: i64,
}

impl AbacusState {
    pub fn levels(&self) -> usize {
        self.runners.len()
    }
}

/// Fill runner `k` with beads at `ξ^(k)_j + s_k − j + 1`.
pub fn to_abacus(xi: &Multipartition, charges: &ChargeVector) -> Result<AbacusState, AbacusError> {
    if xi.levels() != charges.levels() {
        return Err(AbacusError::LengthMismatch {
            components: xi.levels(),
            charges: charges.levels(),
        });
    }
    let runners = xi
        .components
        .iter()
        .zip(&charges.charges)
        .map(|(part, &s)| {
            let mut runner = Runner::vacuum(s - part.len() as i64);
            for (j, &p) in part.parts().iter().enumerate() {
                let pos = p as i64 + s - j as i64;
                runner.beads.insert(pos);
            }
            runner.canonicalized()
        })
        .collect();
    Ok(AbacusState { runners, modulus: charges.modulus })
}

/// Left inverse of `to_abacus`.
pub fn from_abacus(state: &AbacusState) -> (Multipartition, ChargeVector) {
    let mut components = Vec::with_capacity(state.levels());
    let mut charges = Vec::with_capacity(state.levels());
    for runner in &state.runners {
        let (part, t) = runner.decode();
        components.push(part);
        charges.push(t);
    }
    (
        Multipartition::new(components),
        ChargeVector { charges, modulus: state.modulus },
    )
}

/// Transpose every e×ℓ rectangle of the abacus: bead `(k, m·e + c)` with
/// `c ∈ {1, …, e}` goes to `(c, m·ℓ + k)` on the dual abacus, whose modulus
/// is ℓ.
pub fn flip_abacus(state: &AbacusState) -> AbacusState {
    let ell = state.levels() as i64;
    let e = state.modulus;
    assert!(ell >= 1 && e >= 1);

    // Window of whole rectangles covering every deviation from vacuum on
    // either side of the flip.
    let mut lo_pos = i64::MAX;
    let mut hi_pos = i64::MIN;
    for r in &state.runners {
        lo_pos = lo_pos.min(r.floor - 1);
        hi_pos = hi_pos.max(r.beads.iter().next_back().copied().unwrap_or(r.floor - 1));
    }
    let m_lo = (lo_pos - e).div_euclid(e) - 1;
    let m_hi = (hi_pos + e).div_euclid(e) + 1;

    // Below the window every rectangle is full and flips to a full
    // rectangle: the dual runners are full below m_lo·ℓ + 1.
    let dual_floor = m_lo * ell + 1;
    let mut duals: Vec<Runner> = (1..=e)
        .map(|_| Runner { floor: dual_floor, beads: BTreeSet::new() })
        .collect();
    for m in m_lo..=m_hi {
        for (k0, runner) in state.runners.iter().enumerate() {
            let k = k0 as i64 + 1;
            for c in 1..=e {
                if runner.has_bead(m * e + c) {
                    let dual_pos = m * ell + k;
                    debug_assert!(dual_pos >= dual_floor);
                    duals[(c - 1) as usize].beads.insert(dual_pos);
                }
            }
        }
    }
    let runners = duals.into_iter().map(Runner::canonicalized).collect();
    AbacusState { runners, modulus: ell }
}

/// The rank-level flip on charged multipartitions: encode on e-rectangles,
/// transpose, decode.  Returns the dual multipartition (on `e` runners) and
/// dual charges with modulus ℓ.
pub fn uglov_flip(
    xi: &Multipartition,
    charges: &ChargeVector,
) -> Result<(Multipartition, ChargeVector), AbacusError> {
    let state = to_abacus(xi, charges)?;
    let flipped = flip_abacus(&state);
    Ok(from_abacus(&flipped))
}

/// Window statistics that the rectangle transpose must preserve: the bead
/// count and the multiset of rectangle indices, over any window of whole
/// rectangles containing all deviations of both abaci.
pub fn window_statistics(state: &AbacusState, m_lo: i64, m_hi: i64) -> (u64, i64) {
    let e = state.modulus;
    let mut count = 0u64;
    let mut rect_sum = 0i64;
    for m in m_lo..=m_hi {
        for runner in &state.runners {
            for c in 1..=e {
                if runner.has_bead(m * e + c) {
                    count += 1;
                    rect_sum += m;
                }
            }
        }
    }
    (count, rect_sum)
}

#[cfg(test)]
mod tests {
    use alloc::vec;
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn reference_input() -> (Multipartition, ChargeVector) {
        (
            Multipartition::new(vec![p(&[2, 1]), p(&[2, 1, 1, 1])]),
            ChargeVector::new(vec![0, 1], 3).unwrap(),
        )
    }

    #[test]
    fn bead_positions_of_reference_example() {
        let (xi, s) = reference_input();
        let state = to_abacus(&xi, &s).unwrap();
        // Runner 1: beads 2, 0, −2, −3, …; runner 2: beads 3, 1, 0, −1, −3, ….
        let r1 = &state.runners[0];
        for pos in [2, 0, -2, -3, -4] {
            assert!(r1.has_bead(pos), "runner 1 missing bead {pos}");
        }
        for pos in [3, 1, -1] {
            assert!(!r1.has_bead(pos), "runner 1 has spurious bead {pos}");
        }
        let r2 = &state.runners[1];
        for pos in [3, 1, 0, -1, -3, -4] {
            assert!(r2.has_bead(pos), "runner 2 missing bead {pos}");
        }
        for pos in [4, 2, -2] {
            assert!(!r2.has_bead(pos), "runner 2 has spurious bead {pos}");
        }
    }

    #[test]
    fn vacuum_and_single_box() {
        let vac = Multipartition::new(vec![Partition::empty()]);
        let s = ChargeVector::new(vec![0], 2).unwrap();
        let state = to_abacus(&vac, &s).unwrap();
        assert!(state.runners[0].has_bead(0));
        assert!(!state.runners[0].has_bead(1));
        assert_eq!(from_abacus(&state), (vac, s));

        let one = Multipartition::new(vec![p(&[1])]);
        let s = ChargeVector::new(vec![0], 2).unwrap();
        let state = to_abacus(&one, &s).unwrap();
        assert!(state.runners[0].has_bead(1));
        assert!(!state.runners[0].has_bead(0));
        assert!(state.runners[0].has_bead(-1));
        assert_eq!(from_abacus(&state).0, one);
    }

    #[test]
    fn round_trip_is_identity() {
        let xi = Multipartition::new(vec![p(&[3, 1, 1]), Partition::empty(), p(&[2])]);
        let s = ChargeVector::new(vec![-2, 0, 5], 4).unwrap();
        let state = to_abacus(&xi, &s).unwrap();
        assert_eq!(from_abacus(&state), (xi, s));
    }

    #[test]
    fn reference_flip_regression() {
        let (xi, s) = reference_input();
        let (dual_xi, dual_s) = uglov_flip(&xi, &s).unwrap();
        assert_eq!(dual_s.charges, vec![0, 0, 1]);
        assert_eq!(dual_s.modulus, 2);
        assert_eq!(
            dual_xi,
            Multipartition::new(vec![p(&[2]), p(&[1, 1]), p(&[1])])
        );
    }

    #[test]
    fn vacuum_flips_to_vacuum() {
        for (e, ell) in [(2, 3), (3, 1), (1, 4), (5, 5)] {
            let xi = Multipartition::new(vec![Partition::empty(); ell]);
            let s = ChargeVector::new(vec![0; ell], e as i64).unwrap();
            let (dual_xi, dual_s) = uglov_flip(&xi, &s).unwrap();
            assert_eq!(dual_xi.size(), 0);
            assert_eq!(dual_s.charges, vec![0; e]);
            assert_eq!(dual_s.modulus, ell as i64);
        }
    }

    #[test]
    fn flip_is_an_involution_on_samples() {
        let samples = [
            (vec![p(&[2, 1]), p(&[2, 1, 1, 1])], vec![0, 1], 3),
            (vec![p(&[5]), p(&[1])], vec![2, -3], 2),
            (vec![p(&[3, 3, 2])], vec![0], 4),
            (vec![p(&[1]), p(&[1]), p(&[1])], vec![1, 0, -1], 1),
        ];
        for (comps, charges, e) in samples {
            let xi = Multipartition::new(comps);
            let s = ChargeVector::new(charges, e).unwrap();
            let (dual_xi, dual_s) = uglov_flip(&xi, &s).unwrap();
            let (back_xi, back_s) = uglov_flip(&dual_xi, &dual_s).unwrap();
            assert_eq!(back_xi, xi);
            assert_eq!(back_s, s);
        }
    }

    #[test]
    fn window_statistics_preserved() {
        let (xi, s) = reference_input();
        let state = to_abacus(&xi, &s).unwrap();
        let flipped = flip_abacus(&state);
        let (count, rect) = window_statistics(&state, -10, 10);
        let (dcount, drect) = window_statistics(&flipped, -10, 10);
        assert_eq!(count, dcount);
        assert_eq!(rect, drect);
    }

    #[test]
    fn malformed_runner_rejected() {
        let mut beads = BTreeSet::new();
        beads.insert(-5i64);
        assert!(matches!(
            Runner::from_parts(0, beads),
            Err(AbacusError::MalformedAbacus(_))
        ));
    }
}
