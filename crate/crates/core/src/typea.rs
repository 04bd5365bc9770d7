//! Partition and composition combinatorics for type-A dualities.
//!
//! Dominance order, conjugation, the Namikawa and Hamiltonian Weyl-group
//! shapes (products of symmetric groups, compared as factor multisets), leaf
//! intervals in the dominance order, and two independent tableau counts
//! (Kostka numbers and dual-Pieri chain counts) whose agreement is the
//! skew-Howe dimension identity.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Hard cap for the exhaustive tableau enumerations.
pub const ENUMERATION_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeAError {
    SizeMismatch { left: usize, right: usize },
    NotDominated,
    NotAPartition(Vec<i64>),
    TooLarge(usize),
}

impl fmt::Display for TypeAError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeAError::SizeMismatch { left, right } => {
                write!(f, "size mismatch: |left| = {left}, |right| = {right}")
            }
            TypeAError::NotDominated => write!(f, "dominance precondition fails"),
            TypeAError::NotAPartition(v) => write!(f, "{v:?} is not a partition"),
            TypeAError::TooLarge(n) => {
                write!(f, "size {n} exceeds the enumeration cap {ENUMERATION_CAP}")
            }
        }
    }
}

/// Weakly decreasing positive parts; the empty partition is allowed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, TypeAError> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(TypeAError::NotAPartition(
                parts.iter().map(|&p| p as i64).collect(),
            ));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part at `idx`, zero-padded.
    pub fn part(&self, idx: usize) -> usize {
        self.parts.get(idx).copied().unwrap_or(0)
    }

    /// The conjugate partition: column counts of the Young diagram.
    pub fn transpose(&self) -> Partition {
        let cols = self.part(0);
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// All partitions of `n`, in descending lex order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn helper(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            for p in (1..=max.min(n)).rev() {
                prefix.push(p);
                helper(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        helper(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", inner.join(","))
    }
}

/// `λ ⊴ μ`: every partial sum of `λ` is at most the corresponding partial
/// sum of `μ` (zero-padded).  Requires equal sizes.
pub fn dominance_leq(lambda: &Partition, mu: &Partition) -> Result<bool, TypeAError> {
    if lambda.size() != mu.size() {
        return Err(TypeAError::SizeMismatch { left: lambda.size(), right: mu.size() });
    }
    let len = lambda.len().max(mu.len());
    let mut sl = 0usize;
    let mut sm = 0usize;
    for i in 0..len {
        sl += lambda.part(i);
        sm += mu.part(i);
        if sl > sm {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A finitely supported function ℤ → ℕ with positive total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    /// Index of `parts[0]` in ℤ.
    pub offset: i64,
    pub parts: Vec<usize>,
}

impl Composition {
    pub fn new(offset: i64, parts: Vec<usize>) -> Self {
        Composition { offset, parts }
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// μ° with μ°_i = μ_{−i}.
    pub fn reversed(&self) -> Composition {
        let last = self.offset + self.parts.len() as i64 - 1;
        Composition { offset: -last, parts: self.parts.iter().rev().copied().collect() }
    }

    /// μ̄: the positive parts sorted into nonincreasing order.
    pub fn bar(&self) -> Partition {
        let mut parts: Vec<usize> = self.parts.iter().copied().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}@{}]", inner.join(","), self.offset)
    }
}

/// A product of symmetric groups, recorded by the multiset of factor sizes.
/// Trivial factors (S_0, S_1) are dropped, so equality of shapes is equality
/// of groups up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeylGroupShape {
    factors: Vec<usize>,
}

impl WeylGroupShape {
    pub fn from_factors(mut factors: Vec<usize>) -> Self {
        factors.retain(|&k| k >= 2);
        factors.sort_unstable();
        WeylGroupShape { factors }
    }

    pub fn trivial() -> Self {
        WeylGroupShape::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }
}

impl fmt::Display for WeylGroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let inner: Vec<String> = self.factors.iter().rev().map(|k| format!("S{k}")).collect();
        write!(f, "{}", inner.join("x"))
    }
}

/// Namikawa Weyl group of T*(SL_r / P_μ):
/// S_{μ̄ᵗ₁−μ̄ᵗ₂} × ⋯ × S_{μ̄ᵗ_{r−1}−μ̄ᵗ_r} × S_{μ̄ᵗ_r}, zero/one factors
/// dropped.
pub fn namikawa_weyl(mu: &Composition) -> WeylGroupShape {
    let r = mu.total();
    assert!(r >= 1, "composition must have positive total");
    let mu_t = mu.bar().transpose();
    let mut factors = Vec::new();
    for j in 0..r - 1 {
        factors.push(mu_t.part(j) - mu_t.part(j + 1));
    }
    factors.push(mu_t.part(r - 1));
    WeylGroupShape::from_factors(factors)
}

/// J-block classification of a maximal equal-part block of ν against the
/// partial-sum agreements with μ̄ᵗ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockType {
    /// J misses the block entirely.
    One,
    /// J meets the block in its last index only.
    Two,
    /// J contains the whole block.
    Three,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JBlock {
    /// 1-based index range `[start, end]` in the padded ν.
    pub start: usize,
    pub end: usize,
    /// The common part value (0 for the zero tail).
    pub value: usize,
    pub kind: BlockType,
}

/// Hamiltonian Weyl-group shape of the S3-variety with parabolic datum
/// `mu_t = μ̄ᵗ` and nilpotent of Jordan type `nu`: the product of S_{γ_k}
/// over the equal-part blocks of ν that are not of type (3).
pub fn ham_weyl(mu_t: &Partition, nu: &Partition) -> Result<(WeylGroupShape, Vec<JBlock>), TypeAError> {
    if !dominance_leq(nu, mu_t)? {
        return Err(TypeAError::NotDominated);
    }
    let len = nu.len().max(mu_t.len());
    // J = indices where the partial sums agree (1-based); always contains len.
    let mut j_set = vec![false; len + 1];
    let mut sn = 0usize;
    let mut sm = 0usize;
    for i in 1..=len {
        sn += nu.part(i - 1);
        sm += mu_t.part(i - 1);
        if sn == sm {
            j_set[i] = true;
        }
    }
    debug_assert!(j_set[len]);
    let mut blocks = Vec::new();
    let mut factors = Vec::new();
    let mut start = 1usize;
    while start <= len {
        let value = nu.part(start - 1);
        let mut end = start;
        while end < len && nu.part(end) == value {
            end += 1;
        }
        let hits: Vec<usize> = (start..=end).filter(|&i| j_set[i]).collect();
        let kind = if hits.is_empty() {
            BlockType::One
        } else if hits == vec![end] {
            BlockType::Two
        } else if hits.len() == end - start + 1 {
            BlockType::Three
        } else {
            unreachable!("J meets a block in a proper suffix of length >= 2; dominance violated")
        };
        if kind != BlockType::Three {
            factors.push(end - start + 1);
        }
        blocks.push(JBlock { start, end, value, kind });
        start = end + 1;
    }
    Ok((WeylGroupShape::from_factors(factors), blocks))
}

/// All partitions ρ with ν ⊴ ρ ⊴ μ̄ᵗ, ascending in lex order (a linear
/// extension of dominance), together with the dominance relation matrix.
pub fn leaf_interval(
    nu: &Partition,
    mu_t: &Partition,
) -> Result<(Vec<Partition>, Vec<Vec<bool>>), TypeAError> {
    if !dominance_leq(nu, mu_t)? {
        return Err(TypeAError::NotDominated);
    }
    let mut members: Vec<Partition> = Partition::all_of(nu.size())
        .into_iter()
        .filter(|rho| {
            dominance_leq(nu, rho).unwrap_or(false) && dominance_leq(rho, mu_t).unwrap_or(false)
        })
        .collect();
    members.sort(); // lex ascending refines dominance
    let rel = (0..members.len())
        .map(|i| {
            (0..members.len())
                .map(|j| dominance_leq(&members[i], &members[j]).unwrap_or(false))
                .collect()
        })
        .collect();
    Ok((members, rel))
}

/// Number of semistandard Young tableaux of shape `lambda` and content
/// `content` (entries `1..=content.len()`, value `v` used `content[v-1]`
/// times), by exhaustive row-by-row enumeration.
pub fn kostka(lambda: &Partition, content: &[usize]) -> Result<u64, TypeAError> {
    let total: usize = content.iter().sum();
    if lambda.size() != total {
        return Err(TypeAError::SizeMismatch { left: lambda.size(), right: total });
    }
    if total > ENUMERATION_CAP {
        return Err(TypeAError::TooLarge(total));
    }
    if total == 0 {
        return Ok(1);
    }
    let shape: Vec<usize> = lambda.parts().to_vec();
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&w| vec![0; w]).collect();
    let mut remaining: Vec<usize> = content.to_vec();
    fn fill(
        rows: &mut Vec<Vec<usize>>,
        remaining: &mut Vec<usize>,
        r: usize,
        c: usize,
        count: &mut u64,
    ) {
        if r == rows.len() {
            *count += 1;
            return;
        }
        let (nr, nc) = if c + 1 < rows[r].len() { (r, c + 1) } else { (r + 1, 0) };
        let min_v = {
            let left = if c > 0 { rows[r][c - 1] } else { 1 };
            let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
            left.max(above)
        };
        for v in min_v..=remaining.len() {
            if remaining[v - 1] == 0 {
                continue;
            }
            rows[r][c] = v;
            remaining[v - 1] -= 1;
            fill(rows, remaining, nr, nc, count);
            remaining[v - 1] += 1;
        }
        rows[r][c] = 0;
    }
    let mut count = 0;
    fill(&mut rows, &mut remaining, 0, 0, &mut count);
    Ok(count)
}

/// Number of chains ∅ = λ⁰ ⊂ λ¹ ⊂ ⋯ ⊂ λᵐ = λ in which each successive skew
/// shape λᵏ/λᵏ⁻¹ is a vertical strip of size `strips[k-1]` (at most one box
/// per row): the dual Pieri multiplicity.
pub fn pieri_multiplicity(lambda: &Partition, strips: &[usize]) -> Result<u64, TypeAError> {
    let total: usize = strips.iter().sum();
    if lambda.size() != total {
        return Err(TypeAError::SizeMismatch { left: lambda.size(), right: total });
    }
    if total > ENUMERATION_CAP {
        return Err(TypeAError::TooLarge(total));
    }
    // Memoized count of chains from `shape` back down to ∅ through the
    // reversed strip list.
    fn strip_predecessors(shape: &[usize], size: usize) -> Vec<Vec<usize>> {
        // All sub-partitions obtained by removing a vertical strip of the
        // given size: at most one box per row, result still a partition.
        fn rec(
            shape: &[usize],
            marks: &mut Vec<usize>,
            row: usize,
            left: usize,
            out: &mut Vec<Vec<usize>>,
        ) {
            if left == 0 {
                let mut cand: Vec<usize> =
                    shape.iter().enumerate().map(|(i, &p)| p - marks[i]).collect();
                if cand.windows(2).all(|w| w[0] >= w[1]) {
                    while cand.last() == Some(&0) {
                        cand.pop();
                    }
                    out.push(cand);
                }
                return;
            }
            if row == shape.len() {
                return;
            }
            rec(shape, marks, row + 1, left, out);
            if shape[row] > 0 {
                marks[row] = 1;
                rec(shape, marks, row + 1, left - 1, out);
                marks[row] = 0;
            }
        }
        let mut out = Vec::new();
        let mut marks = vec![0usize; shape.len()];
        rec(shape, &mut marks, 0, size, &mut out);
        out
    }
    fn count(
        shape: Vec<usize>,
        step: usize,
        strips: &[usize],
        memo: &mut BTreeMap<(Vec<usize>, usize), u64>,
    ) -> u64 {
        if step == strips.len() {
            return if shape.is_empty() { 1 } else { 0 };
        }
        if let Some(&v) = memo.get(&(shape.clone(), step)) {
            return v;
        }
        let next = strips[strips.len() - 1 - step];
        let mut acc = 0;
        for pred in strip_predecessors(&shape, next) {
            acc += count(pred, step + 1, strips, memo);
        }
        memo.insert((shape, step), acc);
        acc
    }
    let mut memo = BTreeMap::new();
    Ok(count(lambda.parts().to_vec(), 0, strips, &mut memo))
}

/// Structured result of the combinatorial S3-duality checks for the pair
/// (X^μ_ν, X^ν_μ).
#[derive(Clone, Debug)]
pub struct S3DualReport {
    pub interval: Vec<Partition>,
    pub dual_interval: Vec<Partition>,
    pub transpose_bijection_ok: bool,
    pub order_reversal_ok: bool,
    pub namikawa_mu: WeylGroupShape,
    pub namikawa_nu: WeylGroupShape,
    pub ham_of_primal: WeylGroupShape,
    pub ham_of_dual: WeylGroupShape,
    pub weyl_exchange_mu_ok: bool,
    pub weyl_exchange_nu_ok: bool,
    pub witness: Option<String>,
}

impl S3DualReport {
    pub fn all_ok(&self) -> bool {
        self.transpose_bijection_ok
            && self.order_reversal_ok
            && self.weyl_exchange_mu_ok
            && self.weyl_exchange_nu_ok
    }
}

/// Check the combinatorial shadow of the S3 duality X^μ_ν ↔ X^ν_μ:
/// transposition as an order-reversing bijection of leaf intervals, and the
/// exchange of Namikawa and Hamiltonian Weyl-group shapes.
pub fn s3_dual_check(mu: &Composition, nu: &Composition) -> Result<S3DualReport, TypeAError> {
    let nu_bar = nu.bar();
    let mu_bar = mu.bar();
    let mu_t = mu_bar.transpose();
    let nu_t = nu_bar.transpose();
    if !dominance_leq(&nu_bar, &mu_t)? {
        return Err(TypeAError::NotDominated);
    }
    let (interval, rel) = leaf_interval(&nu_bar, &mu_t)?;
    let (dual_interval, _) = leaf_interval(&mu_bar, &nu_t)?;

    let mut witness = None;
    let transposed: Vec<Partition> = interval.iter().map(Partition::transpose).collect();
    let mut sorted = transposed.clone();
    sorted.sort();
    let transpose_bijection_ok = sorted == dual_interval;
    if !transpose_bijection_ok {
        witness = Some(format!(
            "transpose image of the leaf interval has {} members, dual interval has {}",
            sorted.len(),
            dual_interval.len()
        ));
    }

    let mut order_reversal_ok = true;
    'outer: for i in 0..interval.len() {
        for j in 0..interval.len() {
            let fwd = rel[i][j];
            let back = dominance_leq(&transposed[j], &transposed[i]).unwrap_or(false);
            if fwd != back {
                order_reversal_ok = false;
                if witness.is_none() {
                    witness = Some(format!(
                        "transpose fails to reverse {} vs {}",
                        interval[i], interval[j]
                    ));
                }
                break 'outer;
            }
        }
    }

    let namikawa_mu = namikawa_weyl(mu);
    let namikawa_nu = namikawa_weyl(nu);
    let (ham_of_primal, _) = ham_weyl(&mu_t, &nu_bar)?;
    let (ham_of_dual, _) = ham_weyl(&nu_t, &mu_bar)?;
    let weyl_exchange_mu_ok = namikawa_mu == ham_of_dual;
    let weyl_exchange_nu_ok = namikawa_nu == ham_of_primal;
    if witness.is_none() && !(weyl_exchange_mu_ok && weyl_exchange_nu_ok) {
        witness = Some(format!(
            "W(μ)={namikawa_mu} vs 𝕎(dual)={ham_of_dual}; W(ν)={namikawa_nu} vs 𝕎(primal)={ham_of_primal}"
        ));
    }

    Ok(S3DualReport {
        interval,
        dual_interval,
        transpose_bijection_ok,
        order_reversal_ok,
        namikawa_mu,
        namikawa_nu,
        ham_of_primal,
        ham_of_dual,
        weyl_exchange_mu_ok,
        weyl_exchange_nu_ok,
        witness,
    })
}
