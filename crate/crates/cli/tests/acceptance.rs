//! Acceptance suite: one test per criterion, each printing a pass line.
//! Everything is exact; there are no tolerances anywhere.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::Command;
use std::sync::OnceLock;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use duality_cli::audit::leaf_tutte_product;
use duality_cli::fixtures::{fixture_set, random_charged_multipartition};
use duality_cli::schema::ArrangementFile;
use duality_core::abacus::{uglov_flip, ChargeVector, Multipartition};
use duality_core::arrangement::PolarizedArrangement;
use duality_core::kgroup::FixedPointPackage;
use duality_core::typea::{
    dominance_leq, ham_weyl, kostka, leaf_interval, namikawa_weyl, pieri_multiplicity,
    Composition, Partition, WeylGroupShape,
};
use duality_core::Rat;

const FIXTURE_SEED: u64 = 20240917;
const FIXTURE_COUNT: usize = 56;

fn fixtures() -> &'static Vec<PolarizedArrangement> {
    static SET: OnceLock<Vec<PolarizedArrangement>> = OnceLock::new();
    SET.get_or_init(|| fixture_set(FIXTURE_SEED, FIXTURE_COUNT, 4, 8))
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn rat(x: i64) -> Rat {
    Rat::from_integer(BigInt::from(x))
}

#[test]
fn criterion_01_abacus_regression() {
    let xi = Multipartition::new(vec![p(&[2, 1]), p(&[2, 1, 1, 1])]);
    let s = ChargeVector::new(vec![0, 1], 3).unwrap();
    let (dual_xi, dual_s) = uglov_flip(&xi, &s).unwrap();
    assert_eq!(dual_s.modulus, 2);
    assert_eq!(dual_s.charges, vec![0, 0, 1]);
    assert_eq!(
        dual_xi,
        Multipartition::new(vec![p(&[2]), p(&[1, 1]), p(&[1])])
    );
    println!("acceptance criterion 1 (abacus rectangle-flip regression): pass");
}

#[test]
fn criterion_02_abacus_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(FIXTURE_SEED ^ 0xAB);
    let mut failures = 0;
    for _ in 0..200 {
        let (xi, s) = random_charged_multipartition(&mut rng, 5, 12);
        let (dual_xi, dual_s) = uglov_flip(&xi, &s).unwrap();
        let (back_xi, back_s) = uglov_flip(&dual_xi, &dual_s).unwrap();
        if back_xi != xi || back_s != s {
            failures += 1;
            eprintln!("involution failed on {xi} {:?}", s);
        }
    }
    assert_eq!(failures, 0);
    println!("acceptance criterion 2 (abacus involution, 200 seeded inputs): pass");
}

#[test]
fn criterion_03_tutte_gale_duality() {
    let set = fixtures();
    assert!(set.len() >= 50);
    for arr in set {
        assert!(arr.d() <= 4 && arr.n() <= 8);
        let duality = arr.gale_dual().unwrap();
        let t = arr.tutte();
        let t_dual = duality.dual.tutte();
        assert_eq!(t.swap_vars(), t_dual, "Tutte duality fails for d={} n={}", arr.d(), arr.n());
        let points = arr.fixed_points().unwrap();
        assert_eq!(
            BigInt::from(points.len()),
            t.eval_i64(1, 1),
            "fixed point count vs T(1,1) for d={} n={}",
            arr.d(),
            arr.n()
        );
        let dual_points = duality.dual.fixed_points().unwrap();
        assert_eq!(BigInt::from(dual_points.len()), t_dual.eval_i64(1, 1));
    }
    println!(
        "acceptance criterion 3 (Tutte/Gale duality on {} fixtures): pass",
        set.len()
    );
}

#[test]
fn criterion_04_leaf_dimension_identity() {
    for arr in fixtures() {
        let points = arr.fixed_points().unwrap();
        let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for pt in &points {
            let flat = arr.leaf_flat(&pt.sign).unwrap();
            *counts.entry(flat.iter().copied().collect()).or_insert(0) += 1;
        }
        let mut total = 0usize;
        for flat in arr.coloop_free_flats() {
            let key: Vec<usize> = flat.iter().copied().collect();
            let count = counts.get(&key).copied().unwrap_or(0);
            total += count;
            let product = leaf_tutte_product(arr, &flat).unwrap();
            assert_eq!(
                BigInt::from(count),
                product,
                "flat {key:?} of d={} n={}",
                arr.d(),
                arr.n()
            );
        }
        assert_eq!(total, points.len(), "leaf counts exhaust the fixed points");
        assert_eq!(BigInt::from(total), arr.tutte().eval_i64(1, 1));
    }
    println!("acceptance criterion 4 (leaf dimension identity, per-flat Tutte products): pass");
}

#[test]
fn criterion_05_orthonormality_and_unitriangularity() {
    for arr in fixtures() {
        let pkg = FixedPointPackage::from_arrangement(arr).unwrap();
        for a in 0..pkg.len() {
            for b in 0..pkg.len() {
                let pairing = pkg.pairing(&pkg.v_class(a), &pkg.v_class(b)).unwrap();
                let expected = if a == b { rat(1) } else { rat(0) };
                assert_eq!(pairing, expected, "⟨v_{a}, v_{b}⟩ on d={} n={}", arr.d(), arr.n());
            }
        }
        let rep = pkg.transition_unitriangular().unwrap();
        assert!(
            rep.unitriangular && rep.integral,
            "transition on d={} n={}: {:?}",
            arr.d(),
            arr.n(),
            rep.witness
        );
    }
    println!("acceptance criterion 5 (orthonormality and unitriangular transitions): pass");
}

#[test]
fn criterion_06_duality_audit_exits_zero() {
    let exe = env!("CARGO_BIN_EXE_duality");
    let dir = tempfile::tempdir().unwrap();
    for (k, arr) in fixtures().iter().enumerate() {
        let file = ArrangementFile::from_arrangement(arr);
        let path = dir.path().join(format!("fixture_{k}.json"));
        let mut f = std::fs::File::create(&path).unwrap();
        write!(f, "{}", serde_json::to_string(&file).unwrap()).unwrap();
        drop(f);
        let output = Command::new(exe)
            .arg("audit-hypertoric")
            .arg(&path)
            .output()
            .expect("binary runs");
        assert!(
            output.status.success(),
            "audit-hypertoric exited {:?} on fixture {k} (d={} n={}):\n{}",
            output.status.code(),
            arr.d(),
            arr.n(),
            String::from_utf8_lossy(&output.stdout)
        );
    }
    println!(
        "acceptance criterion 6 (cmd audit-hypertoric exit 0 on {} fixtures): pass",
        fixtures().len()
    );
}

#[test]
fn criterion_07_skew_howe_dimensions() {
    for n in 0..=8usize {
        for lam in Partition::all_of(n) {
            for mu in Partition::all_of(n) {
                let k = kostka(&lam.transpose(), mu.parts()).unwrap();
                let q = pieri_multiplicity(&lam, mu.parts()).unwrap();
                assert_eq!(k, q, "skew-Howe fails at λ={lam} μ={mu}");
            }
        }
    }
    println!("acceptance criterion 7 (skew-Howe dimensions, exhaustive through size 8): pass");
}

#[test]
fn criterion_08_s3_weyl_shapes() {
    let nu = p(&[4, 4, 2, 2]);
    let s2s2 = WeylGroupShape::from_factors(vec![2, 2]);
    let s2 = WeylGroupShape::from_factors(vec![2]);
    let (w, _) = ham_weyl(&p(&[5, 4, 3]), &nu).unwrap();
    assert_eq!(w, s2s2);
    let (w, _) = ham_weyl(&p(&[5, 3, 3, 1]), &nu).unwrap();
    assert_eq!(w, s2s2);
    let (w, _) = ham_weyl(&p(&[5, 3, 2, 2]), &nu).unwrap();
    assert_eq!(w, s2);

    for r in 1..=8usize {
        // μ̄ᵗ = (r): the Borel case, W = S_r.
        let borel = Composition::new(0, vec![1; r]);
        assert_eq!(namikawa_weyl(&borel), WeylGroupShape::from_factors(vec![r]));
        // μ̄ᵗ = (1,…,1): P = G, W trivial.
        let full = Composition::new(0, vec![r]);
        assert!(namikawa_weyl(&full).is_trivial());
    }
    println!("acceptance criterion 8 (S3 Weyl shapes, worked examples): pass");
}

#[test]
fn criterion_09_s3_leaf_anti_isomorphism() {
    let mut pairs = 0usize;
    for r in 1..=8usize {
        let all = Partition::all_of(r);
        for nu in &all {
            for mu_t in &all {
                if !dominance_leq(nu, mu_t).unwrap() {
                    continue;
                }
                pairs += 1;
                let (interval, rel) = leaf_interval(nu, mu_t).unwrap();
                let (dual_interval, _) =
                    leaf_interval(&mu_t.transpose(), &nu.transpose()).unwrap();
                let mut transposed: Vec<Partition> =
                    interval.iter().map(Partition::transpose).collect();
                let images = transposed.clone();
                transposed.sort();
                assert_eq!(transposed, dual_interval, "ν={nu} μ̄ᵗ={mu_t}");
                for i in 0..interval.len() {
                    for j in 0..interval.len() {
                        assert_eq!(
                            rel[i][j],
                            dominance_leq(&images[j], &images[i]).unwrap(),
                            "order reversal at ν={nu} μ̄ᵗ={mu_t}"
                        );
                    }
                }
            }
        }
    }
    println!(
        "acceptance criterion 9 (S3 leaf anti-isomorphism on {pairs} dominated pairs, r ≤ 8): pass"
    );
}

#[test]
fn criterion_10_character_consistency() {
    // Independent oracle: count lattice points of the attracting cone, i.e.
    // representations of k as ℕ-combinations of the positive weights.
    fn count_representations(weights: &[i64], k: usize) -> BigInt {
        fn rec(weights: &[i64], k: i64) -> BigInt {
            match weights.split_first() {
                None => {
                    if k == 0 {
                        BigInt::from(1)
                    } else {
                        BigInt::from(0)
                    }
                }
                Some((&w, rest)) => {
                    let mut acc = BigInt::from(0);
                    let mut used = 0i64;
                    while used <= k {
                        acc += rec(rest, k - used);
                        used += w;
                    }
                    acc
                }
            }
        }
        rec(weights, k as i64)
    }

    for arr in fixtures() {
        let pkg = FixedPointPackage::from_arrangement(arr).unwrap();
        for idx in 0..pkg.len() {
            let positive: Vec<i64> =
                pkg.weights(idx).iter().copied().filter(|&w| w > 0).collect();
            let coeffs = pkg.standard_character(idx, 20);
            for (k, coeff) in coeffs.iter().enumerate() {
                assert_eq!(
                    *coeff,
                    count_representations(&positive, k),
                    "character coefficient {k} at point {} of d={} n={}",
                    pkg.names()[idx],
                    arr.d(),
                    arr.n()
                );
            }
        }
    }
    println!("acceptance criterion 10 (character coefficients vs lattice enumeration): pass");
}
