//! Property tests: each routes an implementation against an independent
//! computation (corank–nullity Tutte evaluation, brute-force partitions,
//! round trips).

use duality_core::abacus::{to_abacus, uglov_flip, ChargeVector, Multipartition};
use duality_core::arrangement::tutte_from_normals;
use duality_core::exactlin::{RatMatrix, Subsets};
use duality_core::poly::BivarPoly;
use duality_core::typea::{dominance_leq, kostka, pieri_multiplicity, Partition};
use duality_core::Rat;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |entries| {
        RatMatrix::new(
            rows,
            cols,
            entries.into_iter().map(|x| Rat::from_integer(BigInt::from(x))).collect(),
        )
    })
}

/// Corank–nullity evaluation of the Tutte polynomial:
/// T(x,y) = Σ_{S ⊆ E} (x−1)^{r(E)−r(S)} (y−1)^{|S|−r(S)}.
/// Independent of the deletion–contraction recursion it checks.
fn tutte_by_corank_nullity(m: &RatMatrix) -> BivarPoly {
    let n = m.cols();
    let full_rank = m.rank();
    let xm1 = BivarPoly::x() + BivarPoly::constant(-1);
    let ym1 = BivarPoly::y() + BivarPoly::constant(-1);
    let mut acc = BivarPoly::zero();
    for k in 0..=n {
        for subset in Subsets::new(n, k) {
            let r = m.select_columns(&subset).rank();
            let term = &xm1.pow((full_rank - r) as u32) * &ym1.pow((k - r) as u32);
            acc = acc + term;
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gale_complement_is_orthogonal_and_involutive(m in small_matrix(2, 5)) {
        prop_assume!(m.rank() == 2);
        let g = m.gale_complement().unwrap();
        // Orthogonality: m · gᵀ = 0 exactly.
        let prod = m.mul(&g.transpose());
        for r in 0..prod.rows() {
            for c in 0..prod.cols() {
                prop_assert!(prod.at(r, c).is_zero());
            }
        }
        // Double complement recovers the row space.
        let gg = g.gale_complement().unwrap();
        prop_assert!(gg.same_row_space(&m));
    }

    #[test]
    fn rank_nullity(m in small_matrix(3, 4)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.rows(), m.cols());
        // Every kernel row is annihilated.
        for r in 0..k.rows() {
            let image = m.mul_vec(k.row(r));
            prop_assert!(image.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn tutte_agrees_with_corank_nullity(m in small_matrix(2, 5)) {
        prop_assert_eq!(tutte_from_normals(&m), tutte_by_corank_nullity(&m));
    }

    #[test]
    fn tutte_agrees_with_corank_nullity_rank3(m in small_matrix(3, 5)) {
        prop_assert_eq!(tutte_from_normals(&m), tutte_by_corank_nullity(&m));
    }

    #[test]
    fn transpose_is_a_dominance_antiautomorphism(
        a in proptest::collection::vec(1usize..5, 1..5),
        b in proptest::collection::vec(1usize..5, 1..5),
    ) {
        let mut a = a;
        let mut b = b;
        a.sort_unstable_by(|x, y| y.cmp(x));
        b.sort_unstable_by(|x, y| y.cmp(x));
        let lam = Partition::new(a).unwrap();
        let mu = Partition::new(b).unwrap();
        prop_assert_eq!(lam.transpose().transpose(), lam.clone());
        if lam.size() == mu.size() {
            prop_assert_eq!(
                dominance_leq(&lam, &mu).unwrap(),
                dominance_leq(&mu.transpose(), &lam.transpose()).unwrap()
            );
        }
    }

    #[test]
    fn skew_howe_random(n in 1usize..7, seed in 0u64..1000) {
        let lams = Partition::all_of(n);
        let lam = &lams[(seed as usize) % lams.len()];
        let mu = &lams[(seed as usize / 7) % lams.len()];
        let k = kostka(&lam.transpose(), mu.parts()).unwrap();
        let p = pieri_multiplicity(lam, mu.parts()).unwrap();
        prop_assert_eq!(k, p);
    }

    #[test]
    fn abacus_round_trip_and_involution(
        raw in proptest::collection::vec(
            (proptest::collection::vec(1usize..5, 0..4), -4i64..=4),
            1..4,
        ),
        e in 1i64..=5,
    ) {
        let mut components = Vec::new();
        let mut charges = Vec::new();
        for (parts, s) in raw {
            let mut parts = parts;
            parts.sort_unstable_by(|x, y| y.cmp(x));
            components.push(Partition::new(parts).unwrap());
            charges.push(s);
        }
        let xi = Multipartition::new(components);
        let s = ChargeVector::new(charges, e).unwrap();

        let state = to_abacus(&xi, &s).unwrap();
        let (back_xi, back_s) = duality_core::abacus::from_abacus(&state);
        prop_assert_eq!(&back_xi, &xi);
        prop_assert_eq!(&back_s, &s);

        let (dual_xi, dual_s) = uglov_flip(&xi, &s).unwrap();
        let (round_xi, round_s) = uglov_flip(&dual_xi, &dual_s).unwrap();
        prop_assert_eq!(round_xi, xi);
        prop_assert_eq!(round_s, s);
    }
}
