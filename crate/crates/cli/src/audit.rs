//! The duality audits: every combinatorial axiom of a dual pair, checked on
//! concrete data and reported row by row.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use duality_core::arrangement::{
    flat_label, ArrangementError, Flat, GaleDuality, PolarizedArrangement,
};
use duality_core::exactlin::RatMatrix;
use duality_core::kgroup::{gm_perp_check, CheckOutcome};
use duality_core::typea::s3_dual_check;
use duality_core::typea::Composition;
use duality_core::Rat;

use crate::report::AuditReport;
use crate::CliError;

/// Run the full hypertoric duality audit against the Gale dual.
pub fn audit_hypertoric(
    arr: &PolarizedArrangement,
    seed: Option<u64>,
) -> Result<AuditReport, CliError> {
    let mut checks: Vec<CheckOutcome> = Vec::new();

    let duality = match arr.gale_dual() {
        Ok(d) => d,
        Err(ArrangementError::DualBijection(msg)) => {
            // The dual exists but the fixed points refuse to match; report
            // it as a failed check rather than a precondition.
            checks.push(CheckOutcome::fail("fixed-point-bijection", msg));
            return Ok(AuditReport::new(subject_line(arr, None), seed, checks));
        }
        Err(e) => return Err(CliError::Precondition(e.to_string())),
    };
    let dual = &duality.dual;
    checks.push(CheckOutcome::of(
        "fixed-point-bijection",
        true,
        String::new,
    ));

    // Tutte identities: matroid duality plus the basis counts.
    let t = arr.tutte();
    let t_dual = dual.tutte();
    checks.push(CheckOutcome::of(
        "tutte-duality",
        t.swap_vars() == t_dual,
        || format!("T(x,y) = {t} but dual T = {t_dual}"),
    ));
    let points = arr.fixed_points().map_err(|e| CliError::Precondition(e.to_string()))?;
    let dual_points = dual.fixed_points().map_err(|e| CliError::Precondition(e.to_string()))?;
    let bases = t.eval_i64(1, 1);
    let dual_bases = t_dual.eval_i64(1, 1);
    checks.push(CheckOutcome::of(
        "fixed-point-count",
        BigInt::from(points.len()) == bases && BigInt::from(dual_points.len()) == dual_bases,
        || {
            format!(
                "{} fixed points vs T(1,1) = {}; dual {} vs {}",
                points.len(),
                bases,
                dual_points.len(),
                dual_bases
            )
        },
    ));

    // Order reversal of the sign-word bijection.
    let ord = arr.closure_order(&points);
    let dord = dual.closure_order(&dual_points);
    let mut rev_witness = None;
    'rev: for i in 0..points.len() {
        for j in 0..points.len() {
            if ord.leq(i, j) != dord.leq(duality.forward[j], duality.forward[i]) {
                rev_witness = Some(format!(
                    "{} ⇀ {} disagrees with the dual order",
                    points[i].sign, points[j].sign
                ));
                break 'rev;
            }
        }
    }
    checks.push(CheckOutcome::of("order-reversal", rev_witness.is_none(), || {
        rev_witness.clone().unwrap()
    }));

    // Coloop-free flats complement each other, order-reversingly.
    let n = arr.n();
    let flats = arr.coloop_free_flats();
    let dual_flats: BTreeSet<Flat> = dual.coloop_free_flats().into_iter().collect();
    let complements: BTreeSet<Flat> = flats.iter().map(|f| complement_flat(f, n)).collect();
    checks.push(CheckOutcome::of(
        "flat-complement-bijection",
        complements == dual_flats,
        || {
            format!(
                "complements of {} coloop-free flats do not match the dual's {}",
                flats.len(),
                dual_flats.len()
            )
        },
    ));

    // Leaf compatibility: leaf(α!) = complement of leaf(α).
    let mut leaf_witness = None;
    let mut leaf_of: BTreeMap<usize, Flat> = BTreeMap::new();
    let mut dual_leaf_of: BTreeMap<usize, Flat> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        let f = arr.leaf_flat(&p.sign).map_err(|e| CliError::Precondition(e.to_string()))?;
        leaf_of.insert(i, f);
    }
    for (j, q) in dual_points.iter().enumerate() {
        let f = dual.leaf_flat(&q.sign).map_err(|e| CliError::Precondition(e.to_string()))?;
        dual_leaf_of.insert(j, f);
    }
    for (i, p) in points.iter().enumerate() {
        let expected = complement_flat(&leaf_of[&i], n);
        let actual = &dual_leaf_of[&duality.forward[i]];
        if *actual != expected {
            leaf_witness = Some(format!(
                "leaf of {} is {}, dual point has {}",
                p.sign,
                flat_label(&leaf_of[&i]),
                flat_label(actual)
            ));
            break;
        }
    }
    checks.push(CheckOutcome::of("leaf-compatibility", leaf_witness.is_none(), || {
        leaf_witness.clone().unwrap()
    }));

    // Per-leaf dimensions pair up across the complement bijection, and each
    // one equals the Tutte product T_{A^F}(1,0)·T_{A_F}(0,1).
    let mut dim_witness = None;
    let mut product_witness = None;
    let mut total = 0usize;
    for f in &flats {
        let count = leaf_of.values().filter(|g| *g == f).count();
        total += count;
        let comp = complement_flat(f, n);
        let dual_count = dual_leaf_of.values().filter(|g| **g == comp).count();
        if count != dual_count && dim_witness.is_none() {
            dim_witness = Some(format!(
                "flat {} carries {} points, dual flat {} carries {}",
                flat_label(f),
                count,
                flat_label(&comp),
                dual_count
            ));
        }
        let product = leaf_tutte_product(arr, f).map_err(|e| CliError::Precondition(e.to_string()))?;
        if BigInt::from(count) != product && product_witness.is_none() {
            product_witness = Some(format!(
                "flat {} carries {} points but T-product is {}",
                flat_label(f),
                count,
                product
            ));
        }
    }
    if total != points.len() && product_witness.is_none() {
        product_witness = Some(format!(
            "leaf dimensions sum to {total}, fixed-point count is {}",
            points.len()
        ));
    }
    checks.push(CheckOutcome::of("leaf-dimension-pairing", dim_witness.is_none(), || {
        dim_witness.clone().unwrap()
    }));
    checks.push(CheckOutcome::of(
        "leaf-dimension-products",
        product_witness.is_none(),
        || product_witness.clone().unwrap(),
    ));

    // Point stratum of one side vs dense stratum of the other.
    let full: Flat = (0..n).collect();
    let dual_full: Flat = (0..dual.n()).collect();
    let point_dim = leaf_of.values().filter(|g| **g == full).count();
    let dense_dim = leaf_of.values().filter(|g| g.is_empty()).count();
    let dual_point_dim = dual_leaf_of.values().filter(|g| **g == dual_full).count();
    let dual_dense_dim = dual_leaf_of.values().filter(|g| g.is_empty()).count();
    checks.push(CheckOutcome::of(
        "stratum-swap",
        point_dim == dual_dense_dim && dense_dim == dual_point_dim,
        || {
            format!(
                "point/dense dims ({point_dim},{dense_dim}) vs dual ({dual_point_dim},{dual_dense_dim})"
            )
        },
    ));

    // H_sh of the primal equals H_tw of the dual, pulled back along the
    // canonical identification of the double dual's objective space.
    let hsh = arr.shuffling_arrangement();
    let htw_dual = pull_back_dual_twisting(arr, &duality)
        .map_err(|e| CliError::Precondition(e.to_string()))?;
    checks.push(CheckOutcome::of("hsh-htw-exchange", hsh == htw_dual, || {
        format!("H_sh has {} hyperplanes, pulled-back H_tw! has {}", hsh.len(), htw_dual.len())
    }));

    // Goresky–MacPherson perp checks.
    checks.extend(gm_perp_check(arr).map_err(|e| CliError::Precondition(e.to_string()))?);

    // Leaf closures and slices trade places under duality: Tutte data of
    // the restriction matches the dual localization at the complement.
    let mut slice_witness = None;
    for f in &flats {
        let comp = complement_flat(f, n);
        let restr = arr
            .restriction_normals(f)
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        let dual_loc = dual
            .localization_normals(&comp)
            .map_err(|e| CliError::Precondition(e.to_string()))?;
        let lhs = duality_core::arrangement::tutte_from_normals(&restr);
        let rhs = duality_core::arrangement::tutte_from_normals(&dual_loc);
        if lhs.swap_vars() != rhs {
            slice_witness = Some(format!(
                "flat {}: restriction Tutte {} vs dual localization Tutte {}",
                flat_label(f),
                lhs,
                rhs
            ));
            break;
        }
    }
    checks.push(CheckOutcome::of("leaf-slice-tutte", slice_witness.is_none(), || {
        slice_witness.clone().unwrap()
    }));

    Ok(AuditReport::new(subject_line(arr, Some(dual)), seed, checks))
}

fn subject_line(arr: &PolarizedArrangement, dual: Option<&PolarizedArrangement>) -> String {
    match dual {
        Some(d) => format!(
            "hypertoric pair: primal d={} n={}, Gale dual d={} n={}",
            arr.d(),
            arr.n(),
            d.d(),
            d.n()
        ),
        None => format!("hypertoric arrangement d={} n={}", arr.d(), arr.n()),
    }
}

fn complement_flat(f: &Flat, n: usize) -> Flat {
    (0..n).filter(|i| !f.contains(i)).collect()
}

/// T_{A^F}(1,0) · T_{A_F}(0,1): the predicted number of fixed points on the
/// leaf of the flat `f`.
pub fn leaf_tutte_product(
    arr: &PolarizedArrangement,
    f: &Flat,
) -> Result<BigInt, ArrangementError> {
    let restriction = arr.restriction_normals(f)?;
    let localization = arr.localization_normals(f)?;
    let t_restriction = duality_core::arrangement::tutte_from_normals(&restriction);
    let t_localization = duality_core::arrangement::tutte_from_normals(&localization);
    Ok(t_restriction.eval_i64(1, 0) * t_localization.eval_i64(0, 1))
}

/// H_tw of the dual is H_sh of the double dual; identify the double dual's
/// objective space with the primal's by solving for the change of row basis
/// and pulling the covectors back.
fn pull_back_dual_twisting(
    arr: &PolarizedArrangement,
    duality: &GaleDuality,
) -> Result<BTreeSet<Vec<BigInt>>, ArrangementError> {
    let double = duality.dual.gale_dual()?;
    let dd_normals = double.dual.normals();
    // Solve M · A = DD row-space-exactly: Aᵀ X = DDᵀ column by column,
    // X = Mᵀ.
    let a_t = arr.normals().transpose();
    let d = arr.d();
    let mut m_t = RatMatrix::zero(d, d);
    for col in 0..d {
        let rhs: Vec<Rat> = (0..arr.n()).map(|r| dd_normals.at(col, r).clone()).collect();
        let x = a_t.solve(&rhs).ok_or(ArrangementError::NotFullRank)?;
        for r in 0..d {
            *m_t.at_mut(r, col) = x[r].clone();
        }
    }
    // Pull back: covector c on the double dual's space becomes Mᵀ c.
    let mut out = BTreeSet::new();
    for c in double.dual.shuffling_arrangement() {
        let as_rat: Vec<Rat> = c.iter().cloned().map(Rat::from_integer).collect();
        let pulled = m_t.mul_vec(&as_rat);
        out.insert(duality_core::arrangement::primitive_covector(&pulled));
    }
    Ok(out)
}

/// Combinatorial audit of the S3 pair (X^μ_ν, X^ν_μ).
pub fn audit_s3(mu: &Composition, nu: &Composition, seed: Option<u64>) -> Result<AuditReport, CliError> {
    let rep = s3_dual_check(mu, nu).map_err(|e| CliError::Precondition(e.to_string()))?;
    let subject = format!(
        "S3 pair: mu-bar^t={} nu-bar={}; W(mu)={} W(nu)={} Ham(primal)={} Ham(dual)={}",
        mu.bar().transpose(),
        nu.bar(),
        rep.namikawa_mu,
        rep.namikawa_nu,
        rep.ham_of_primal,
        rep.ham_of_dual,
    );
    let witness = |w: &Option<String>| w.clone().unwrap_or_else(|| "(no witness)".into());
    let checks = vec![
        CheckOutcome::of("interval-cardinality", rep.interval.len() == rep.dual_interval.len(), || {
            format!("{} vs {}", rep.interval.len(), rep.dual_interval.len())
        }),
        CheckOutcome::of("interval-anti-isomorphism", rep.transpose_bijection_ok, || {
            witness(&rep.witness)
        }),
        CheckOutcome::of("interval-order-reversal", rep.order_reversal_ok, || {
            witness(&rep.witness)
        }),
        CheckOutcome::of("weyl-exchange-mu", rep.weyl_exchange_mu_ok, || {
            format!("W(mu)={} vs Ham(dual)={}", rep.namikawa_mu, rep.ham_of_dual)
        }),
        CheckOutcome::of("weyl-exchange-nu", rep.weyl_exchange_nu_ok, || {
            format!("W(nu)={} vs Ham(primal)={}", rep.namikawa_nu, rep.ham_of_primal)
        }),
    ];
    Ok(AuditReport::new(subject, seed, checks))
}
