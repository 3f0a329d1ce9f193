//! The stratification of V^n induced by the diagonal action.
//!
//! Every tuple lies in exactly one stratum w(X_I), where I = (I_0, …, I_n)
//! is a weakly decreasing sequence of generator subsets with I_0 = S,
//! X_I = C_{I_0,I_1} × … × C_{I_{n-1},I_n}, and w runs over the minimal
//! coset representatives W^{I_n}.  This module enumerates the labels,
//! locates the stratum of a point, decides closure containment two
//! independent ways, builds the face poset with its dimension function,
//! and verifies the induced-character identities that the cell
//! decomposition of the unit sphere categorifies.

use std::collections::HashMap;

use serde_json::json;

use crate::chamber::{self, FacetLabel};
use crate::diagfund::{self, TupleV};
use crate::error::{Error, Result};
use crate::exact::{MatRat, VecPi};
use crate::rootsys::{GroupElement, Parabolic, RootSystem};

/// Weakly decreasing sequence I_0 ⊇ I_1 ⊇ … ⊇ I_n of generator subsets,
/// with I_0 the full index set of the ambient system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSeq(pub Vec<Parabolic>);

impl IndexSeq {
    /// Number of tuple places (the sequence has n + 1 terms).
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn terminal(&self) -> Parabolic {
        *self.0.last().expect("index sequences are nonempty")
    }

    /// |I_1| + … + |I_n|, the codimension of the stratum cone in V^n.
    pub fn size_sum(&self) -> usize {
        self.0[1..].iter().map(|p| p.len()).sum()
    }

    pub fn is_valid(&self, rank: usize) -> bool {
        !self.0.is_empty()
            && self.0[0] == Parabolic::full(rank)
            && self.0.windows(2).all(|w| w[1].is_subset_of(w[0]))
    }
}

impl std::fmt::Display for IndexSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Label (w, I) of the stratum w(X_I).  The labelling is a bijection once
/// w is required to be the minimal representative of its coset w·W_{I_n}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StratumLabel {
    pub w: GroupElement,
    pub seq: IndexSeq,
}

impl StratumLabel {
    pub fn n(&self) -> usize {
        self.seq.n()
    }

    /// Dimension of the stratum as a cone in V^n: nd − Σ_{i≥1}|I_i|.
    pub fn cone_dim(&self, rs: &RootSystem) -> usize {
        self.n() * rs.rank - self.seq.size_sum()
    }
}

/// All weakly decreasing sequences of n+1 subsets of {0,…,rank−1} starting
/// at the full set.  There are (n+1)^rank of them: each generator picks the
/// step at which it drops out (or stays to the end).
pub fn enumerate_index_seqs(rank: usize, n: usize) -> Vec<IndexSeq> {
    assert!(n >= 1, "need at least one tuple place");
    let mut seqs = vec![vec![Parabolic::full(rank)]];
    for _ in 0..n {
        let mut next = Vec::new();
        for seq in &seqs {
            let last = *seq.last().unwrap();
            for sub in last.subsets() {
                let mut s = seq.clone();
                s.push(sub);
                next.push(s);
            }
        }
        seqs = next;
    }
    seqs.into_iter().map(IndexSeq).collect()
}

/// The minimum stratum X_{(S,…,S)} = the fixed locus of W, as a label.
pub fn minimum_label(rs: &RootSystem, n: usize) -> StratumLabel {
    StratumLabel {
        w: rs.identity(),
        seq: IndexSeq(vec![Parabolic::full(rs.rank); n + 1]),
    }
}

/// All stratum labels of V^n: every index sequence paired with every
/// minimal coset representative of its terminal parabolic.
pub fn enumerate_strata(rs: &RootSystem, n: usize, limit: u128) -> Result<Vec<StratumLabel>> {
    let elements = rs.enumerate_group(limit)?;
    let mut out = Vec::new();
    for seq in enumerate_index_seqs(rs.rank, n) {
        let term = seq.terminal();
        for w in &elements {
            let is_rep = term
                .iter()
                .all(|j| rs.is_positive(w.root_image(rs.simple_loc[j])));
            if is_rep {
                out.push(StratumLabel { w: w.clone(), seq: seq.clone() });
            }
        }
    }
    Ok(out)
}

/// Minimal-length representative of the coset w·W_J, obtained by right
/// multiplication with simple reflections from J while any w(α_j) < 0.
pub fn coset_min_rep(rs: &RootSystem, w: &GroupElement, j_set: Parabolic) -> GroupElement {
    let mut x = w.clone();
    loop {
        let bad = j_set
            .iter()
            .find(|&j| !rs.is_positive(x.root_image(rs.simple_loc[j])));
        match bad {
            Some(j) => x = rs.compose(&x, &rs.simple_reflection(j)),
            None => return x,
        }
    }
}

/// The unique stratum containing t.  Canonicalization yields the chain I
/// and an element carrying t to the fundamental domain; the label's group
/// part is the minimal coset representative of its inverse modulo W_{I_n}.
pub fn stratum_of(rs: &RootSystem, t: &[VecPi]) -> StratumLabel {
    let can = diagfund::canonicalize(rs, t);
    let term = *can.chain.last().expect("chain has n+1 ≥ 1 terms");
    let w = coset_min_rep(rs, &rs.invert(&can.w), term);
    StratumLabel { w, seq: IndexSeq(can.chain) }
}

/// A point in the (relative interior of the) stratum: per place the
/// canonical facet point of C_{I_{k-1},I_k}, translated by w.
pub fn witness_tuple(rs: &RootSystem, label: &StratumLabel) -> Result<TupleV> {
    let seq = &label.seq.0;
    let mut out = Vec::with_capacity(seq.len() - 1);
    for k in 1..seq.len() {
        let p = chamber::facet_point(rs, FacetLabel { i_set: seq[k - 1], j_set: seq[k] })?;
        out.push(label.w.apply(rs, &p));
    }
    Ok(out)
}

/// Sign conditions for t ∈ closure(w(X_I)): coordinate by coordinate,
/// ⟨α_j, w⁻¹ t_k⟩ = 0 for j ∈ I_k and ≥ 0 for j ∈ I_{k-1} ∖ I_k.
fn closure_signs_hold(rs: &RootSystem, winv_matrix: &MatRat, seq: &IndexSeq, t: &[VecPi]) -> bool {
    for (k, v) in t.iter().enumerate() {
        let q = winv_matrix.mul_vec(v);
        let pair = rs.simple_pairings(&q);
        let (i_prev, i_cur) = (seq.0[k], seq.0[k + 1]);
        for j in i_prev.iter() {
            if i_cur.contains(j) {
                if !pair[j].is_zero() {
                    return false;
                }
            } else if pair[j].is_negative() {
                return false;
            }
        }
    }
    true
}

/// Membership of t in the open stratum w(X_I): like the closure conditions
/// but with strict positivity on I_{k-1} ∖ I_k.
pub fn stratum_contains(rs: &RootSystem, label: &StratumLabel, t: &[VecPi]) -> bool {
    if t.len() != label.n() {
        return false;
    }
    let m = rs.invert(&label.w).matrix(rs);
    for (k, v) in t.iter().enumerate() {
        let q = m.mul_vec(v);
        let pair = rs.simple_pairings(&q);
        let (i_prev, i_cur) = (label.seq.0[k], label.seq.0[k + 1]);
        for j in i_prev.iter() {
            let ok = if i_cur.contains(j) {
                pair[j].is_zero()
            } else {
                pair[j].is_positive()
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Whether G ⊆ closure(F), decided exactly: a witness point of G must
/// satisfy every defining sign condition of closure(F).
pub fn closure_contains(rs: &RootSystem, f: &StratumLabel, g: &StratumLabel) -> Result<bool> {
    if f.n() != g.n() {
        return Err(Error::Invalid(format!(
            "strata live in different powers of V: n = {} vs {}",
            f.n(),
            g.n()
        )));
    }
    let wit = witness_tuple(rs, g)?;
    let m = rs.invert(&f.w).matrix(rs);
    Ok(closure_signs_hold(rs, &m, &f.seq, &wit))
}

/// The closure recursion.  For a decreasing sequence Γ_0 ⊇ … ⊇ Γ_n of
/// simple subsystems and an ambient simple subsystem Λ with W_{Γ_0} ⊆ W_Λ,
/// the closure of X_Γ is the union of the strata w_n⋯w_1(X_Λ') over all
/// terms produced here: at step i the factor w_i runs over the minimal
/// representatives ^{Γ_{i-1}}W_{w_{i-1}⋯w_1(Λ_{i-1})} and Λ_i over the
/// subsets of Λ_{i-1} whose image subsystem under w_i⋯w_1 contains Γ_i.
/// Each term is (w_n⋯w_1, (Λ_0, …, Λ_n)) with Λ_i recorded as a subset of
/// positions in `lambda`.
pub fn closure_decomposition(
    rs: &RootSystem,
    gamma_seq: &[Vec<usize>],
    lambda: &[usize],
    limit: u128,
) -> Result<Vec<(GroupElement, IndexSeq)>> {
    if gamma_seq.is_empty() {
        return Err(Error::Invalid("the Γ-sequence must start at Γ_0".into()));
    }
    if !gamma_seq[0].is_empty() {
        rs.check_simple_system(&gamma_seq[0])?;
    }
    rs.check_simple_system(lambda)?;
    for wnd in gamma_seq.windows(2) {
        if !wnd[1].iter().all(|r| wnd[0].contains(r)) {
            return Err(Error::Invalid("the Γ-sequence must be weakly decreasing".into()));
        }
    }
    let lam_roots = rs.subsystem_roots(lambda);
    for &g in &gamma_seq[0] {
        if !lam_roots.contains(&g) {
            return Err(Error::Invalid(
                "Γ_0 must generate a reflection subgroup of W_Λ".into(),
            ));
        }
    }

    let n = gamma_seq.len() - 1;
    let mut terms: Vec<(GroupElement, Vec<Parabolic>)> =
        vec![(rs.identity(), vec![Parabolic::full(lambda.len())])];
    for i in 1..=n {
        let mut next = Vec::new();
        for (w_acc, lseq) in &terms {
            // image roots of Λ_{i-1} under w_{i-1}⋯w_1
            let img_prev: Vec<usize> = lseq[i - 1]
                .iter()
                .map(|p| w_acc.root_image(lambda[p]))
                .collect();
            let reps = rs.min_coset_reps_subgroup(&img_prev, &gamma_seq[i - 1], limit)?;
            for wi in reps {
                let w_new = rs.compose(&wi, w_acc);
                for sub in lseq[i - 1].subsets() {
                    let img: Vec<usize> =
                        sub.iter().map(|p| w_new.root_image(lambda[p])).collect();
                    let sys = rs.subsystem_roots(&img);
                    if gamma_seq[i].iter().all(|r| sys.contains(r)) {
                        let mut ls = lseq.clone();
                        ls.push(sub);
                        next.push((w_new.clone(), ls));
                    }
                }
            }
        }
        terms = next;
    }

    let mut out: Vec<(GroupElement, IndexSeq)> =
        terms.into_iter().map(|(w, ls)| (w, IndexSeq(ls))).collect();
    out.sort_by(|a, b| {
        (a.0.length, &a.0.perm, &a.1).cmp(&(b.0.length, &b.0.perm, &b.1))
    });
    out.dedup();
    Ok(out)
}

/// Closure of the stratum labelled `f`, computed via the recursion over
/// Γ_i = Π_{I_i} and Λ = Π, normalized to stratum labels.
pub fn closure_labels_by_recursion(
    rs: &RootSystem,
    f: &StratumLabel,
    limit: u128,
) -> Result<Vec<StratumLabel>> {
    let gamma_seq: Vec<Vec<usize>> = f
        .seq
        .0
        .iter()
        .map(|p| p.iter().map(|j| rs.simple_loc[j]).collect())
        .collect();
    let lambda: Vec<usize> = (0..rs.rank).map(|j| rs.simple_loc[j]).collect();
    let mut labels: Vec<StratumLabel> = Vec::new();
    for (w, lseq) in closure_decomposition(rs, &gamma_seq, &lambda, limit)? {
        // positions in Λ = Π are simple indices, so lseq is already an
        // index sequence; translate the whole term back by f.w.
        let prod = rs.compose(&f.w, &w);
        let rep = coset_min_rep(rs, &prod, lseq.terminal());
        let label = StratumLabel { w: rep, seq: lseq };
        if !labels.contains(&label) {
            labels.push(label);
        }
    }
    Ok(labels)
}

/// The face poset of the stratification: all labels, the closure order,
/// the covering relation, and the cone dimension of each stratum.
#[derive(Debug, Clone)]
pub struct FacePoset {
    pub labels: Vec<StratumLabel>,
    /// Cone dimensions: dims[i] = n·rank − Σ_{k≥1}|I_k| for labels[i].
    pub dims: Vec<usize>,
    /// Covering pairs (lower, upper) of the closure order.
    pub covers: Vec<(usize, usize)>,
    /// Index of the minimum stratum (the fixed locus of W).
    pub minimum: usize,
    n: usize,
    leq: Vec<Vec<bool>>,
}

impl FacePoset {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// labels[a] ≤ labels[b] in the closure order.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn index_of(&self, label: &StratumLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| (0..self.len()).all(|b| b == a || !self.leq[a][b]))
            .collect()
    }
}

/// Build the face poset of the stratification of V^n.  The order is
/// decided by the exact sign-condition oracle on witness points.
pub fn face_poset(rs: &RootSystem, n: usize, limit: u128) -> Result<FacePoset> {
    let labels = enumerate_strata(rs, n, limit)?;
    let m = labels.len();
    let witnesses: Vec<TupleV> = labels
        .iter()
        .map(|l| witness_tuple(rs, l))
        .collect::<Result<_>>()?;
    let inv_matrices: Vec<MatRat> = labels
        .iter()
        .map(|l| rs.invert(&l.w).matrix(rs))
        .collect();

    let mut leq = vec![vec![false; m]; m];
    for b in 0..m {
        for a in 0..m {
            leq[a][b] = closure_signs_hold(rs, &inv_matrices[b], &labels[b].seq, &witnesses[a]);
        }
    }

    let mut covers = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if a == b || !leq[a][b] {
                continue;
            }
            let skipped = (0..m)
                .any(|c| c != a && c != b && leq[a][c] && leq[c][b]);
            if !skipped {
                covers.push((a, b));
            }
        }
    }

    let dims: Vec<usize> = labels.iter().map(|l| l.cone_dim(rs)).collect();
    let minimum = labels
        .iter()
        .position(|l| l.seq.terminal() == Parabolic::full(rs.rank))
        .expect("the all-S sequence always labels a stratum");
    Ok(FacePoset { labels, dims, covers, minimum, n, leq })
}

/// Render a group element as a word in the simple reflections, 1-based:
/// "e" for the identity, otherwise indices joined by dots ("2.1").
pub fn word_string(rs: &RootSystem, w: &GroupElement) -> String {
    let word = rs.reduced_word(w);
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// DOT rendering of the Hasse diagram: one node per label, one edge per
/// covering pair, minimum at the bottom.
pub fn to_dot(rs: &RootSystem, poset: &FacePoset) -> String {
    let mut s = String::from("graph strata {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, label) in poset.labels.iter().enumerate() {
        let masks: Vec<String> = label.seq.0.iter().map(|p| p.0.to_string()).collect();
        s.push_str(&format!(
            "  n{i} [label=\"w={};I=[{}]\"];\n",
            word_string(rs, &label.w),
            masks.join(",")
        ));
    }
    for &(a, b) in &poset.covers {
        s.push_str(&format!("  n{a} -- n{b};\n"));
    }
    s.push_str("}\n");
    s
}

/// JSON rendering of the poset as adjacency lists.
pub fn poset_to_json(rs: &RootSystem, poset: &FacePoset) -> serde_json::Value {
    let nodes: Vec<serde_json::Value> = poset
        .labels
        .iter()
        .enumerate()
        .map(|(i, label)| {
            let seq: Vec<Vec<usize>> = label
                .seq
                .0
                .iter()
                .map(|p| p.iter().map(|j| j + 1).collect())
                .collect();
            json!({
                "id": i,
                "w": word_string(rs, &label.w),
                "seq": seq,
                "dim": poset.dims[i],
            })
        })
        .collect();
    let mut upper: Vec<Vec<usize>> = vec![Vec::new(); poset.len()];
    for &(a, b) in &poset.covers {
        upper[a].push(b);
    }
    json!({
        "type": rs.cartan_type.to_string(),
        "n": poset.n,
        "nodes": nodes,
        "covers": upper,
        "minimum": poset.minimum,
    })
}

/// Euler characteristic of the induced cell decomposition of the unit
/// sphere in V^n: Σ over strata F ≠ 0̂ of (−1)^{N(F)} with cell dimension
/// N(F) = n·d − 1 − Σ_{i≥1}|I_i|.
pub fn euler_characteristic(rs: &RootSystem, n: usize, limit: u128) -> Result<i64> {
    let full = Parabolic::full(rs.rank);
    let nd = n * rs.rank;
    let mut chi = 0i64;
    for label in enumerate_strata(rs, n, limit)? {
        if label.seq.terminal() == full {
            continue; // the minimum stratum {0} contributes no cell
        }
        let ncell = nd - 1 - label.seq.size_sum();
        chi += if ncell % 2 == 0 { 1 } else { -1 };
    }
    Ok(chi)
}

/// χ(S^{nd−1}) = 1 + (−1)^{nd−1}, what `euler_characteristic` must equal.
pub fn sphere_euler(rs: &RootSystem, n: usize) -> i64 {
    if (n * rs.rank) % 2 == 0 {
        0
    } else {
        2
    }
}

/// Value at w of the character of W induced from the trivial character of
/// W_J: the number of cosets xW_J with x⁻¹wx ∈ W_J, x ∈ W^J.
pub fn induced_trivial_character(
    rs: &RootSystem,
    j_set: Parabolic,
    w: &GroupElement,
    limit: u128,
) -> Result<u64> {
    let reps = rs.min_coset_reps(j_set, limit)?;
    let mut count = 0;
    for x in &reps {
        let conj = rs.compose(&rs.compose(&rs.invert(x), w), x);
        if rs.in_standard_parabolic(&conj, j_set) {
            count += 1;
        }
    }
    Ok(count)
}

/// Values of Ind_{W_J}^W(1) at every element of `elements` at once, by
/// summing the conjugated parabolic over the coset representatives.
fn induced_counts(
    rs: &RootSystem,
    elements: &[GroupElement],
    index: &HashMap<&[u32], usize>,
    j_set: Parabolic,
) -> Vec<u64> {
    let mut counts = vec![0u64; elements.len()];
    let members: Vec<&GroupElement> = elements
        .iter()
        .filter(|w| rs.in_standard_parabolic(w, j_set))
        .collect();
    let reps: Vec<&GroupElement> = elements
        .iter()
        .filter(|w| {
            j_set
                .iter()
                .all(|j| rs.is_positive(w.root_image(rs.simple_loc[j])))
        })
        .collect();
    for x in reps {
        let xinv = rs.invert(x);
        for u in &members {
            let w = rs.compose(&rs.compose(x, u), &xinv);
            counts[index[w.perm.as_slice()]] += 1;
        }
    }
    counts
}

/// Outcome of a character-identity verification over all of W.
#[derive(Debug, Clone)]
pub struct CharReport {
    pub group_order: usize,
    pub checked: usize,
    pub pass: bool,
    pub first_failure: Option<String>,
    /// For the power identity: whether the coefficient-collapse check
    /// passed for every terminal subset (None for the plain identity).
    pub collapse_pass: Option<bool>,
}

/// Check det_V(w) = Σ_{J⊆S} (−1)^{|J|} Ind_{W_J}^W(1)(w) for every w ∈ W.
pub fn verify_solomon(rs: &RootSystem, limit: u128) -> Result<CharReport> {
    let elements = rs.enumerate_group(limit)?;
    let index: HashMap<&[u32], usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.perm.as_slice(), i))
        .collect();
    let mut total = vec![0i64; elements.len()];
    for j_set in Parabolic::full(rs.rank).subsets() {
        let sign = if j_set.len() % 2 == 0 { 1i64 } else { -1 };
        for (i, c) in induced_counts(rs, &elements, &index, j_set).iter().enumerate() {
            total[i] += sign * (*c as i64);
        }
    }
    let mut report = CharReport {
        group_order: elements.len(),
        checked: 0,
        pass: true,
        first_failure: None,
        collapse_pass: None,
    };
    for (i, w) in elements.iter().enumerate() {
        report.checked += 1;
        if total[i] != w.det() as i64 {
            report.pass = false;
            report.first_failure = Some(format!(
                "w = {}: det = {} but the alternating sum is {}",
                word_string(rs, w),
                w.det(),
                total[i]
            ));
            break;
        }
    }
    Ok(report)
}

/// Check the n-fold identity det_V(w)^n = Σ_{I ∈ I^(n)}
/// (−1)^{|I_1|+…+|I_n|} Ind_{W_{I_n}}^W(1)(w) for every w, plus the
/// coefficient-collapse identity for each fixed terminal subset.
pub fn verify_solomon_power(rs: &RootSystem, n: usize, limit: u128) -> Result<CharReport> {
    let elements = rs.enumerate_group(limit)?;
    let index: HashMap<&[u32], usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.perm.as_slice(), i))
        .collect();

    // Coefficient of Ind_{W_K} after grouping the sum by terminal subset.
    let mut coeff: HashMap<Parabolic, i64> = HashMap::new();
    for seq in enumerate_index_seqs(rs.rank, n) {
        let sign = if seq.size_sum() % 2 == 0 { 1i64 } else { -1 };
        *coeff.entry(seq.terminal()).or_insert(0) += sign;
    }

    let full = Parabolic::full(rs.rank);
    let mut collapse_pass = true;
    let mut first_failure = None;
    for k_set in full.subsets() {
        let got = coeff.get(&k_set).copied().unwrap_or(0);
        let expected = if k_set == full {
            if (n * rs.rank) % 2 == 0 {
                1
            } else {
                -1
            }
        } else if n % 2 == 0 {
            0
        } else if k_set.len() % 2 == 0 {
            1
        } else {
            -1
        };
        if got != expected {
            collapse_pass = false;
            first_failure = Some(format!(
                "terminal set {k_set}: coefficient {got}, collapse identity expects {expected}"
            ));
            break;
        }
    }

    let mut total = vec![0i64; elements.len()];
    if collapse_pass {
        for k_set in full.subsets() {
            let c = coeff.get(&k_set).copied().unwrap_or(0);
            if c == 0 {
                continue;
            }
            for (i, cnt) in induced_counts(rs, &elements, &index, k_set).iter().enumerate() {
                total[i] += c * (*cnt as i64);
            }
        }
    }

    let mut report = CharReport {
        group_order: elements.len(),
        checked: 0,
        pass: collapse_pass,
        first_failure,
        collapse_pass: Some(collapse_pass),
    };
    if !collapse_pass {
        return Ok(report);
    }
    for (i, w) in elements.iter().enumerate() {
        report.checked += 1;
        let det_n = if n % 2 == 0 { 1 } else { w.det() as i64 };
        if total[i] != det_n {
            report.pass = false;
            report.first_failure = Some(format!(
                "w = {}: det^{} = {} but the signed sum is {}",
                word_string(rs, w),
                n,
                det_n,
                total[i]
            ));
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rat;
    use crate::rootsys::{build, CartanType, DEFAULT_GROUP_LIMIT};

    fn rs_of(name: &str) -> RootSystem {
        build(&CartanType::parse(name).unwrap()).unwrap()
    }

    fn lim() -> u128 {
        DEFAULT_GROUP_LIMIT
    }

    fn v1(x: i64) -> VecPi {
        VecPi(vec![Rat::int(x)])
    }

    #[test]
    fn index_seq_counts_match_drop_position_formula() {
        assert_eq!(enumerate_index_seqs(1, 1).len(), 2);
        assert_eq!(enumerate_index_seqs(1, 2).len(), 3);
        assert_eq!(enumerate_index_seqs(2, 2).len(), 9);
        assert_eq!(enumerate_index_seqs(3, 2).len(), 27);
        for seq in enumerate_index_seqs(3, 2) {
            assert!(seq.is_valid(3));
        }
    }

    #[test]
    fn strata_counts_small_types() {
        let a1 = rs_of("A1");
        for n in 1..=4 {
            assert_eq!(enumerate_strata(&a1, n, lim()).unwrap().len(), 2 * n + 1);
        }
        let a2 = rs_of("A2");
        // Σ_J [W : W_J] = 1 + 3 + 3 + 6
        assert_eq!(enumerate_strata(&a2, 1, lim()).unwrap().len(), 13);
    }

    #[test]
    fn stratum_of_zero_tuple_is_the_minimum() {
        for name in ["A1", "A2", "B2"] {
            let rs = rs_of(name);
            let zero = vec![VecPi::zero(rs.rank); 3];
            assert_eq!(stratum_of(&rs, &zero), minimum_label(&rs, 3));
        }
    }

    #[test]
    fn stratum_of_locates_half_lines_in_rank_one() {
        let rs = rs_of("A1");
        let s_mask = Parabolic::full(1);
        let e = Parabolic::empty();

        let plus = stratum_of(&rs, &[v1(0), v1(1)]);
        assert!(plus.w.is_identity());
        assert_eq!(plus.seq, IndexSeq(vec![s_mask, s_mask, e]));

        let minus = stratum_of(&rs, &[v1(0), v1(-1)]);
        assert_eq!(minus.w, rs.simple_reflection(0));
        assert_eq!(minus.seq, IndexSeq(vec![s_mask, s_mask, e]));
    }

    #[test]
    fn witness_tuple_lands_in_its_own_stratum() {
        let rs = rs_of("B2");
        for label in enumerate_strata(&rs, 2, lim()).unwrap() {
            let wit = witness_tuple(&rs, &label).unwrap();
            assert!(stratum_contains(&rs, &label, &wit));
            assert_eq!(stratum_of(&rs, &wit), label);
        }
    }

    #[test]
    fn closure_is_reflexive_and_contains_the_minimum() {
        let rs = rs_of("A2");
        let labels = enumerate_strata(&rs, 2, lim()).unwrap();
        let min = minimum_label(&rs, 2);
        for f in &labels {
            assert!(closure_contains(&rs, f, f).unwrap());
            assert!(closure_contains(&rs, f, &min).unwrap());
        }
    }

    #[test]
    fn rank_one_hasse_diagram_has_the_published_shape() {
        // V^2 for the rank-one system: five strata, six covering pairs,
        // and the closure of each open half-plane stratum contains both
        // half-line strata.
        let rs = rs_of("A1");
        let poset = face_poset(&rs, 2, lim()).unwrap();
        assert_eq!(poset.len(), 5);

        let s_mask = Parabolic::full(1);
        let e = Parabolic::empty();
        let label = |w: &GroupElement, seq: &[Parabolic]| StratumLabel {
            w: w.clone(),
            seq: IndexSeq(seq.to_vec()),
        };
        let id = rs.identity();
        let s = rs.simple_reflection(0);
        let x0 = poset.index_of(&label(&id, &[s_mask, s_mask, s_mask])).unwrap();
        let x1 = poset.index_of(&label(&id, &[s_mask, s_mask, e])).unwrap();
        let sx1 = poset.index_of(&label(&s, &[s_mask, s_mask, e])).unwrap();
        let x2 = poset.index_of(&label(&id, &[s_mask, e, e])).unwrap();
        let sx2 = poset.index_of(&label(&s, &[s_mask, e, e])).unwrap();

        assert_eq!(poset.minimum, x0);
        assert_eq!(poset.dims, {
            let mut d = vec![0; 5];
            d[x0] = 0;
            d[x1] = 1;
            d[sx1] = 1;
            d[x2] = 2;
            d[sx2] = 2;
            d
        });

        let mut covers = poset.covers.clone();
        covers.sort_unstable();
        let mut expected = vec![
            (x0, x1),
            (x0, sx1),
            (x1, x2),
            (x1, sx2),
            (sx1, x2),
            (sx1, sx2),
        ];
        expected.sort_unstable();
        assert_eq!(covers, expected);

        // both half-lines lie in the closure of each open stratum
        assert!(poset.leq(sx1, x2));
        assert!(poset.leq(x1, sx2));
        assert_eq!(poset.maximal_elements(), {
            let mut m = vec![x2, sx2];
            m.sort_unstable();
            m
        });
    }

    #[test]
    fn closure_of_half_line_adds_only_the_origin() {
        // n = 1, Γ = (Π, ∅) in the rank-one system: the closure of the
        // open half-line is itself plus the origin.
        let rs = rs_of("A1");
        let a0 = rs.simple_loc[0];
        let terms =
            closure_decomposition(&rs, &[vec![a0], vec![]], &[a0], lim()).unwrap();
        let mut labels: Vec<StratumLabel> = Vec::new();
        for (w, seq) in terms {
            let rep = coset_min_rep(&rs, &w, seq.terminal());
            let l = StratumLabel { w: rep, seq };
            if !labels.contains(&l) {
                labels.push(l);
            }
        }
        let s_mask = Parabolic::full(1);
        let e = Parabolic::empty();
        assert_eq!(labels.len(), 2);
        assert!(labels.iter().all(|l| l.w.is_identity()));
        assert!(labels.iter().any(|l| l.seq == IndexSeq(vec![s_mask, e])));
        assert!(labels.iter().any(|l| l.seq == IndexSeq(vec![s_mask, s_mask])));
    }

    #[test]
    fn recursion_recovers_the_four_strata_below_the_open_quadrant() {
        // n = 2, F = the stratum ℝ_{>0} × ℝ of the rank-one system: its
        // closure consists of itself, both half-lines, and the origin.
        let rs = rs_of("A1");
        let s_mask = Parabolic::full(1);
        let e = Parabolic::empty();
        let f = StratumLabel {
            w: rs.identity(),
            seq: IndexSeq(vec![s_mask, e, e]),
        };
        let got = closure_labels_by_recursion(&rs, &f, lim()).unwrap();
        assert_eq!(got.len(), 4);
        let seqs: Vec<&IndexSeq> = got.iter().map(|l| &l.seq).collect();
        assert!(seqs.contains(&&IndexSeq(vec![s_mask, e, e])));
        assert!(seqs.contains(&&IndexSeq(vec![s_mask, s_mask, s_mask])));
        let half_lines: Vec<&StratumLabel> = got
            .iter()
            .filter(|l| l.seq == IndexSeq(vec![s_mask, s_mask, e]))
            .collect();
        assert_eq!(half_lines.len(), 2);
    }

    #[test]
    fn recursion_and_sign_oracle_agree_in_rank_two() {
        let rs = rs_of("A2");
        let poset = face_poset(&rs, 1, lim()).unwrap();
        for (fi, f) in poset.labels.iter().enumerate() {
            let rec = closure_labels_by_recursion(&rs, f, lim()).unwrap();
            for (gi, g) in poset.labels.iter().enumerate() {
                assert_eq!(
                    poset.leq(gi, fi),
                    rec.contains(g),
                    "mismatch for F = ({}, {}), G = ({}, {})",
                    word_string(&rs, &f.w),
                    f.seq,
                    word_string(&rs, &g.w),
                    g.seq
                );
            }
        }
    }

    #[test]
    fn euler_characteristic_matches_the_sphere() {
        for (name, n) in [("A1", 1), ("A1", 2), ("A2", 1), ("A2", 2), ("B2", 1)] {
            let rs = rs_of(name);
            assert_eq!(
                euler_characteristic(&rs, n, lim()).unwrap(),
                sphere_euler(&rs, n),
                "χ mismatch for {name}, n = {n}"
            );
        }
        assert_eq!(sphere_euler(&rs_of("A1"), 1), 2); // two points on S^0
        assert_eq!(sphere_euler(&rs_of("A1"), 2), 0); // the circle
    }

    #[test]
    fn induced_character_values_at_the_extremes() {
        let rs = rs_of("A2");
        let full = Parabolic::full(2);
        for w in rs.enumerate_group(lim()).unwrap() {
            assert_eq!(induced_trivial_character(&rs, full, &w, lim()).unwrap(), 1);
        }
        let id = rs.identity();
        assert_eq!(
            induced_trivial_character(&rs, Parabolic::empty(), &id, lim()).unwrap(),
            6
        );

        let a1 = rs_of("A1");
        let s = a1.simple_reflection(0);
        assert_eq!(
            induced_trivial_character(&a1, Parabolic::empty(), &s, lim()).unwrap(),
            0
        );
    }

    #[test]
    fn batch_induced_counts_agree_with_single_evaluation() {
        let rs = rs_of("B2");
        let elements = rs.enumerate_group(lim()).unwrap();
        let index: HashMap<&[u32], usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.perm.as_slice(), i))
            .collect();
        for j_set in Parabolic::full(2).subsets() {
            let batch = induced_counts(&rs, &elements, &index, j_set);
            for (i, w) in elements.iter().enumerate() {
                assert_eq!(
                    batch[i],
                    induced_trivial_character(&rs, j_set, w, lim()).unwrap()
                );
            }
        }
    }

    #[test]
    fn alternating_character_sum_verified_on_small_groups() {
        for name in ["A1", "A2", "B2", "G2"] {
            let rs = rs_of(name);
            let report = verify_solomon(&rs, lim()).unwrap();
            assert!(report.pass, "{name}: {:?}", report.first_failure);
            assert_eq!(report.checked, report.group_order);
        }
    }

    #[test]
    fn power_identity_and_coefficient_collapse_hold() {
        let a1 = rs_of("A1");
        let r = verify_solomon_power(&a1, 1, lim()).unwrap();
        assert!(r.pass && r.collapse_pass == Some(true));

        let a2 = rs_of("A2");
        for n in [2, 3] {
            let r = verify_solomon_power(&a2, n, lim()).unwrap();
            assert!(r.pass, "A2 n = {n}: {:?}", r.first_failure);
            assert_eq!(r.checked, 6);
        }
    }

    #[test]
    fn dot_output_lists_every_label_and_cover() {
        let rs = rs_of("A1");
        let poset = face_poset(&rs, 2, lim()).unwrap();
        let dot = to_dot(&rs, &poset);
        assert_eq!(dot.matches(" -- ").count(), poset.covers.len());
        assert!(dot.contains("w=e;I=[1,1,1]"));
        assert!(dot.contains("w=1;I=[1,0,0]"));
        let js = poset_to_json(&rs, &poset);
        assert_eq!(js["nodes"].as_array().unwrap().len(), 5);
        assert_eq!(js["minimum"], serde_json::json!(poset.minimum));
    }
}
