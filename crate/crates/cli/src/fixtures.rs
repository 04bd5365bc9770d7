//! Seeded random fixtures: unimodular polarized arrangements from random
//! bridgeless multigraphs, plus charged multipartitions for the abacus.
//! Everything is ChaCha-seeded so fixture sets are reproducible byte for
//! byte across runs and platforms.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use duality_core::abacus::{ChargeVector, Multipartition};
use duality_core::arrangement::{ArrangementError, PolarizedArrangement};
use duality_core::exactlin::RatMatrix;
use duality_core::typea::Partition;
use duality_core::Rat;
use num_bigint::BigInt;

fn rat(x: i64) -> Rat {
    Rat::from_integer(BigInt::from(x))
}

/// Edges of a random connected bridgeless multigraph on `vertices` nodes
/// with `edges` edges (no self-loops).
fn random_graph(rng: &mut ChaCha8Rng, vertices: usize, edges: usize) -> Option<Vec<(usize, usize)>> {
    assert!(vertices >= 2 && edges >= vertices);
    let mut list = Vec::with_capacity(edges);
    // Random spanning tree first, then extra edges.
    for v in 1..vertices {
        let u = rng.gen_range(0..v);
        list.push((u, v));
    }
    while list.len() < edges {
        let u = rng.gen_range(0..vertices);
        let v = rng.gen_range(0..vertices);
        if u != v {
            list.push((u.min(v), u.max(v)));
        }
    }
    if has_bridge(vertices, &list) {
        None
    } else {
        Some(list)
    }
}

fn has_bridge(vertices: usize, edges: &[(usize, usize)]) -> bool {
    (0..edges.len()).any(|skip| {
        let mut seen = vec![false; vertices];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (k, &(a, b)) in edges.iter().enumerate() {
                if k == skip {
                    continue;
                }
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        !seen.iter().all(|&s| s)
    })
}

/// Signed incidence normals of a graph on d+1 vertices, last vertex rooted
/// out: totally unimodular, full rank d for connected graphs, coloop-free
/// for bridgeless ones.
fn graphic_normals(d: usize, edges: &[(usize, usize)]) -> RatMatrix {
    let mut m = RatMatrix::zero(d, edges.len());
    for (j, &(u, v)) in edges.iter().enumerate() {
        if u < d {
            *m.at_mut(u, j) = rat(1);
        }
        if v < d {
            *m.at_mut(v, j) = rat(-1);
        }
    }
    m
}

/// One random polarized arrangement of rank `d` with `n` hyperplanes.
/// Retries until the random constants and objective pass the genericity
/// validation on both sides of the Gale duality.
pub fn random_arrangement(rng: &mut ChaCha8Rng, d: usize, n: usize) -> PolarizedArrangement {
    loop {
        let Some(edges) = random_graph(rng, d + 1, n) else { continue };
        let normals = graphic_normals(d, &edges);
        'data: for _ in 0..40 {
            let constants: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-9..=9))).collect();
            let objective: Vec<Rat> = (0..d).map(|_| rat(rng.gen_range(-9..=9))).collect();
            let arr = match PolarizedArrangement::new(normals.clone(), constants, objective) {
                Ok(a) => a,
                Err(
                    ArrangementError::NonSimple(_)
                    | ArrangementError::DegenerateObjective(_)
                    | ArrangementError::ZeroNormal(_)
                    | ArrangementError::NotFullRank,
                ) => continue 'data,
                Err(e) => panic!("graphic normals should be unimodular: {e}"),
            };
            // The dual terrain must be generic too.  Resample only on
            // genericity failures; anything else would mask a real defect.
            match arr.gale_dual() {
                Ok(_) => return arr,
                Err(
                    ArrangementError::NonSimple(_)
                    | ArrangementError::DegenerateObjective(_),
                ) => continue 'data,
                Err(e) => panic!("dual of a bridgeless graphic arrangement must validate: {e}"),
            }
        }
    }
}

/// The standing fixture set: a few named small arrangements plus seeded
/// random ones covering every rank/size combination with d ≤ max_d and
/// n ≤ max_n.
pub fn fixture_set(seed: u64, random_count: usize, max_d: usize, max_n: usize) -> Vec<PolarizedArrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![rp_arrangement(), t_p2_arrangement(), t_p2_dual_like()];
    let mut shapes = Vec::new();
    for d in 1..=max_d {
        for n in (d + 1)..=max_n {
            shapes.push((d, n));
        }
    }
    for k in 0..random_count.saturating_sub(out.len()) {
        let (d, n) = shapes[k % shapes.len()];
        out.push(random_arrangement(&mut rng, d, n));
    }
    out
}

/// T*ℙ¹: two points on a line.
pub fn rp_arrangement() -> PolarizedArrangement {
    PolarizedArrangement::new(
        RatMatrix::from_i64(&[&[1, -1]]),
        vec![rat(0), rat(1)],
        vec![rat(1)],
    )
    .expect("valid")
}

/// T*ℙ²: the U_{2,3} arrangement with generic constants.
pub fn t_p2_arrangement() -> PolarizedArrangement {
    PolarizedArrangement::new(
        RatMatrix::from_i64(&[&[1, 0, -1], &[0, 1, -1]]),
        vec![rat(0), rat(0), rat(1)],
        vec![rat(1), rat(2)],
    )
    .expect("valid")
}

/// Three parallel hyperplanes on a line (the Ã₂-style dual side).
pub fn t_p2_dual_like() -> PolarizedArrangement {
    PolarizedArrangement::new(
        RatMatrix::from_i64(&[&[1, 1, 1]]),
        vec![rat(0), rat(-1), rat(1)],
        vec![rat(1)],
    )
    .expect("valid")
}

/// A seeded random charged multipartition with e, ℓ ≤ `max_mod` and at most
/// `max_boxes` boxes.
pub fn random_charged_multipartition(
    rng: &mut ChaCha8Rng,
    max_mod: i64,
    max_boxes: usize,
) -> (Multipartition, ChargeVector) {
    let e = rng.gen_range(1..=max_mod);
    let ell = rng.gen_range(1..=max_mod) as usize;
    let mut components = Vec::with_capacity(ell);
    let mut budget = rng.gen_range(0..=max_boxes);
    for _ in 0..ell {
        let mut parts = Vec::new();
        let mut max_part = 5usize.min(budget);
        while max_part > 0 && budget > 0 && rng.gen_bool(0.7) {
            let p = rng.gen_range(1..=max_part);
            parts.push(p);
            budget -= p;
            max_part = p.min(budget);
        }
        components.push(Partition::new(parts).expect("descending by construction"));
    }
    let charges: Vec<i64> = (0..ell).map(|_| rng.gen_range(-4..=4)).collect();
    (
        Multipartition::new(components),
        ChargeVector::new(charges, e).expect("valid modulus"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_set_is_deterministic() {
        let a = fixture_set(7, 10, 3, 6);
        let b = fixture_set(7, 10, 3, 6);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn fixtures_validate_and_dualize() {
        for arr in fixture_set(11, 8, 3, 6) {
            assert!(arr.gale_dual().is_ok());
        }
    }

    #[test]
    fn fixed_points_match_brute_force_sign_enumeration() {
        use duality_core::arrangement::{Sign, SignVector};
        use std::collections::BTreeSet;
        for arr in fixture_set(31, 6, 3, 6) {
            let from_bases: BTreeSet<String> = arr
                .fixed_points()
                .unwrap()
                .iter()
                .map(|p| p.sign.to_string())
                .collect();
            let mut brute = BTreeSet::new();
            for bits in 0..(1u32 << arr.n()) {
                let word: Vec<Sign> = (0..arr.n())
                    .map(|i| if bits >> i & 1 == 1 { Sign::Plus } else { Sign::Minus })
                    .collect();
                let alpha = SignVector(word);
                if arr.feasible(&alpha) && arr.bounded(&alpha) {
                    brute.insert(alpha.to_string());
                }
            }
            assert_eq!(from_bases, brute, "d={} n={}", arr.d(), arr.n());
        }
    }

    #[test]
    fn double_dual_has_the_same_fixed_point_poset() {
        for arr in fixture_set(23, 8, 3, 6) {
            let first = arr.gale_dual().unwrap();
            let second = first.dual.gale_dual().unwrap();
            let points = arr.fixed_points().unwrap();
            let dd_points = second.dual.fixed_points().unwrap();
            assert_eq!(points.len(), dd_points.len());
            let ord = arr.closure_order(&points);
            let dd_ord = second.dual.closure_order(&dd_points);
            let map = |i: usize| second.forward[first.forward[i]];
            for i in 0..points.len() {
                for j in 0..points.len() {
                    assert_eq!(
                        ord.leq(i, j),
                        dd_ord.leq(map(i), map(j)),
                        "double dual changes the closure order"
                    );
                }
            }
        }
    }
}
