//! Genera: the pairing matrices attached to an ordered tuple of vectors,
//! considered together with the simultaneous row/column permutation action
//! of the symmetric group.
//!
//! For a tuple b = (β_1, …, β_n) two matrices are of interest: the *Gram
//! genus* (⟨β_i, β_j⟩) and, when every β_i is a root, the *Cartan genus*
//! (⟨β_i∨, β_j⟩).  Both are constant on orbits of the diagonal Weyl group
//! action, so they are invariants of the canonical form of a tuple.  The
//! Cartan genus recognizes structure: b is an ordered simple system iff its
//! Cartan genus is a Cartan matrix of finite type, and b has all pairwise
//! pairings ≤ 0 (an "np subset") iff the Cartan genus is a generalized
//! Cartan matrix, whose Dynkin diagram then has only finite and affine
//! components.
//!
//! The symmetric group acts by (ρσ)_{ij} = σ_{ρ⁻¹(i), ρ⁻¹(j)}; an orbit is
//! called a *type* of genera.  [`genus_type`] picks the lexicographically
//! minimal (row-major) orbit member as a canonical representative, and
//! [`automorphism_group`] computes the stabilizer.  Each Cartan type X has a
//! distinguished ordering of its Cartan matrix, the *standard genus* σ_X
//! ([`standard_genus`]): the unique ordering whose leading block is the
//! tridiagonal A_l matrix for the largest type-A standard parabolic, with
//! attachment points chosen lexicographically greatest (ties broken toward
//! a longer root at position l).  For the simply-laced chain σ_n = σ_{A_n}
//! this is the usual tridiagonal matrix with −1 off the diagonal.
//!
//! Finally, [`enumerate_fiber`] lists every ordered root tuple inside the
//! fundamental domain C^(n) whose genus is a prescribed matrix σ.  These
//! fibers, together with the dot action of the stabilizer of σ on them,
//! control the classification of simple subsystems up to conjugacy.

use crate::chamber;
use crate::diagfund::{self, TupleV};
use crate::error::{Error, Result};
use crate::exact::{symmetric_inertia, MatRat, Rat, VecPi};
use crate::rootsys::{build, CartanType, Family, Parabolic, RootSystem};

/// Ceiling on the rank of a genus in permutation searches (canonical forms,
/// automorphism groups).  10! ≈ 3.6·10⁶ permutations is the largest search
/// that stays comfortably interactive with exact arithmetic.
pub const GENUS_PERM_BOUND: usize = 10;

/// Ceiling on the rank of a genus in fiber enumeration.
pub const FIBER_RANK_BOUND: usize = 12;

/// A square rational matrix regarded as the invariant of an n-tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Genus {
    pub n: usize,
    pub entries: MatRat,
}

impl Genus {
    pub fn new(entries: MatRat) -> Genus {
        assert!(entries.is_square(), "a genus is a square matrix");
        Genus { n: entries.rows, entries }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Genus {
        Genus::new(MatRat::from_i64(rows))
    }

    pub fn is_integral(&self) -> bool {
        self.entries.row_major().iter().all(Rat::is_integer)
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries == self.entries.transpose()
    }

    /// The place-permutation action: entry (i, j) of ρ·σ is σ_{ρ⁻¹(i), ρ⁻¹(j)}.
    /// Compatible with [`diagfund::permute_places`]: the genus of σ·t is
    /// σ·(genus of t).
    pub fn permuted(&self, rho: &[usize]) -> Genus {
        Genus::new(self.entries.permuted_symmetric(&invert_perm(rho)))
    }

    /// Matrix of decimal/fraction strings, the JSON wire format for genera.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entries.at(i, j).to_string()).collect())
            .collect();
        serde_json::json!(rows)
    }
}

impl std::fmt::Display for Genus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entries.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}

fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Visit all permutations of 0..n in lexicographic order.
fn for_each_permutation(n: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], f: &mut impl FnMut(&[usize])) {
        if cur.len() == n {
            f(cur);
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, f);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    rec(n, &mut cur, &mut used, f);
}

/// Gram genus of a tuple: the matrix of pairings ⟨t_i, t_j⟩.  Symmetric and
/// positive semidefinite; positive definite exactly when the entries are
/// linearly independent.
pub fn gram_genus(rs: &RootSystem, t: &[VecPi]) -> Genus {
    let n = t.len();
    let mut m = MatRat::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let p = rs.pairing(&t[i], &t[j]);
            *m.at_mut(i, j) = p.clone();
            *m.at_mut(j, i) = p;
        }
    }
    Genus::new(m)
}

/// Cartan genus of a tuple of roots: the integer matrix ⟨t_i∨, t_j⟩.
/// Errors if some entry is not a root.
pub fn cartan_genus(rs: &RootSystem, t: &[VecPi]) -> Result<Genus> {
    let n = t.len();
    let mut idx = Vec::with_capacity(n);
    for v in t {
        idx.push(rs.root_index(v).ok_or_else(|| Error::NotARoot(format!("{v}")))?);
    }
    let mut m = MatRat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            *m.at_mut(i, j) = rs.coroot_pairing(idx[i], &t[j]);
        }
    }
    Ok(Genus::new(m))
}

/// Whether g satisfies the generalized Cartan matrix axioms: integer
/// entries, diagonal 2, off-diagonal ≤ 0, and a_{ij} = 0 ⇔ a_{ji} = 0.
pub fn is_gcm(g: &Genus) -> bool {
    let two = Rat::int(2);
    for i in 0..g.n {
        for j in 0..g.n {
            let a = g.entries.at(i, j);
            if !a.is_integer() {
                return false;
            }
            if i == j {
                if *a != two {
                    return false;
                }
            } else if a.is_positive() || (a.is_zero() != g.entries.at(j, i).is_zero()) {
                return false;
            }
        }
    }
    true
}

/// Which dominant root extends a diagram to an affine one: the highest long
/// or the highest short root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtendBy {
    Long,
    Short,
}

/// Label of a connected diagram component.  `Indefinite` cannot arise from
/// tuples of roots in a finite system; it covers hand-made generalized
/// Cartan matrices that are neither positive definite nor affine (as well as
/// components too large for the rank-32 reference tables).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramLabel {
    Finite(Family, usize),
    /// The diagram of Π ∪ {−θ} for the given finite type, θ its highest
    /// long or short root.  `Long` gives the untwisted affine diagram.
    Affine(Family, usize, ExtendBy),
    Indefinite,
}

impl DiagramLabel {
    pub fn is_finite(&self) -> bool {
        matches!(self, DiagramLabel::Finite(..))
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            DiagramLabel::Finite(f, r) => serde_json::json!({
                "kind": "finite",
                "type": format!("{}{}", family_letter(*f), r),
            }),
            DiagramLabel::Affine(f, r, by) => serde_json::json!({
                "kind": "affine",
                "base": format!("{}{}", family_letter(*f), r),
                "extended_by": match by { ExtendBy::Long => "long", ExtendBy::Short => "short" },
            }),
            DiagramLabel::Indefinite => serde_json::json!({ "kind": "indefinite" }),
        }
    }
}

fn family_letter(f: Family) -> char {
    match f {
        Family::A => 'A',
        Family::B => 'B',
        Family::C => 'C',
        Family::D => 'D',
        Family::E => 'E',
        Family::F => 'F',
        Family::G => 'G',
    }
}

impl std::fmt::Display for DiagramLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiagramLabel::Finite(fam, r) => write!(f, "{}{}", family_letter(*fam), r),
            DiagramLabel::Affine(fam, r, ExtendBy::Long) => {
                write!(f, "{}{}~", family_letter(*fam), r)
            }
            DiagramLabel::Affine(fam, r, ExtendBy::Short) => {
                write!(f, "{}{}~s", family_letter(*fam), r)
            }
            DiagramLabel::Indefinite => write!(f, "indefinite"),
        }
    }
}

/// Connected components of the Dynkin diagram of a generalized Cartan
/// matrix, each labeled and listed with its (sorted) vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramClassification {
    pub components: Vec<(DiagramLabel, Vec<usize>)>,
}

impl DiagramClassification {
    pub fn all_finite(&self) -> bool {
        self.components.iter().all(|(l, _)| l.is_finite())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let comps: Vec<serde_json::Value> = self
            .components
            .iter()
            .map(|(l, vs)| {
                serde_json::json!({
                    "label": l.to_json(),
                    "vertices": vs.iter().map(|v| v + 1).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!(comps)
    }
}

impl std::fmt::Display for DiagramClassification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, (l, _)) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The dominant root of a given length class inside the standard parabolic
/// subsystem Φ_I: the unique root of extremal squared length whose pairing
/// with every α_j (j ∈ I) is ≥ 0.  Errors when I is empty or the dominant
/// root of that class is not unique (I spans several components containing
/// the class).
pub fn parabolic_dominant_root(rs: &RootSystem, i_set: Parabolic, by: ExtendBy) -> Result<VecPi> {
    let in_par: Vec<usize> =
        (0..rs.num_roots()).filter(|&k| rs.root_in_parabolic(k, i_set)).collect();
    if in_par.is_empty() {
        return Err(Error::Invalid("parabolic subsystem has no roots".into()));
    }
    let target = match by {
        ExtendBy::Long => in_par.iter().map(|&k| rs.norms[k].clone()).max().unwrap(),
        ExtendBy::Short => in_par.iter().map(|&k| rs.norms[k].clone()).min().unwrap(),
    };
    let mut found = Vec::new();
    for &k in &in_par {
        if rs.norms[k] != target {
            continue;
        }
        let sp = rs.simple_pairings(&rs.roots[k]);
        if i_set.iter().all(|j| !sp[j].is_negative()) {
            found.push(rs.roots[k].clone());
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => Err(Error::Invalid("no dominant root in the parabolic".into())),
        _ => Err(Error::Invalid(
            "dominant root of the requested length class is not unique".into(),
        )),
    }
}

/// A permutation π with a[i][j] = b[π(i)][π(j)] for all i, j, if one exists.
/// Backtracking over vertices with row-signature pruning; diagrams are
/// (nearly) trees, so the search is effectively linear.
fn permutation_equivalent(a: &MatRat, b: &MatRat) -> Option<Vec<usize>> {
    if a.rows != b.rows {
        return None;
    }
    let n = a.rows;
    let sig = |m: &MatRat, i: usize| {
        let mut off: Vec<(Rat, Rat)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| (m.at(i, j).clone(), m.at(j, i).clone()))
            .collect();
        off.sort();
        (m.at(i, i).clone(), off)
    };
    let sig_a: Vec<_> = (0..n).map(|i| sig(a, i)).collect();
    let sig_b: Vec<_> = (0..n).map(|i| sig(b, i)).collect();
    fn rec(
        a: &MatRat,
        b: &MatRat,
        cand: &Vec<Vec<usize>>,
        img: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = img.len();
        if i == a.rows {
            return true;
        }
        for &c in &cand[i] {
            if used[c] {
                continue;
            }
            let ok = (0..i)
                .all(|k| a.at(k, i) == b.at(img[k], c) && a.at(i, k) == b.at(c, img[k]));
            if ok {
                used[c] = true;
                img.push(c);
                if rec(a, b, cand, img, used) {
                    return true;
                }
                img.pop();
                used[c] = false;
            }
        }
        false
    }
    let cand: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| sig_a[i] == sig_b[j]).collect())
        .collect();
    if cand.iter().any(|c| c.is_empty()) {
        return None;
    }
    let mut img = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if rec(a, b, &cand, &mut img, &mut used) {
        Some(img)
    } else {
        None
    }
}

pub(crate) fn submatrix(m: &MatRat, idx: &[usize]) -> MatRat {
    let k = idx.len();
    let mut out = MatRat::zero(k, k);
    for (i, &a) in idx.iter().enumerate() {
        for (j, &b) in idx.iter().enumerate() {
            *out.at_mut(i, j) = m.at(a, b).clone();
        }
    }
    out
}

/// Finite reference Cartan matrices of the given rank, in family order.
/// C is skipped at rank 2 (same type as B_2) so labels are deterministic.
fn finite_candidates(rank: usize) -> Vec<(Family, MatRat)> {
    let mut out = Vec::new();
    for fam in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
        if fam == Family::C && rank == 2 {
            continue;
        }
        let ct = CartanType { components: vec![(fam, rank)] };
        if CartanType::parse(&ct.to_string()).is_err() {
            continue;
        }
        if let Ok(rs) = build(&ct) {
            out.push((fam, rs.cartan.clone()));
        }
    }
    out
}

/// Affine reference matrices with `size` vertices: the Cartan genus of
/// (α_1, …, α_m, −θ) for each finite type of rank m = size − 1, where θ is
/// the highest long root (untwisted affine diagram) or, in types with two
/// root lengths, the highest short root.
fn affine_candidates(size: usize) -> Vec<(Family, usize, ExtendBy, MatRat)> {
    let mut out = Vec::new();
    if size < 2 {
        return out;
    }
    let rank = size - 1;
    for fam in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
        if fam == Family::C && rank == 2 {
            continue;
        }
        let ct = CartanType { components: vec![(fam, rank)] };
        if CartanType::parse(&ct.to_string()).is_err() {
            continue;
        }
        let rs = match build(&ct) {
            Ok(rs) => rs,
            Err(_) => continue,
        };
        let two_lengths = rs.norms.iter().any(|m| *m != rs.norms[0]);
        let classes: &[ExtendBy] =
            if two_lengths { &[ExtendBy::Long, ExtendBy::Short] } else { &[ExtendBy::Long] };
        for &by in classes {
            let theta = parabolic_dominant_root(&rs, Parabolic::full(rank), by)
                .expect("irreducible system has a unique dominant root per class");
            let mut tuple: TupleV = (0..rank).map(|i| VecPi::basis(rank, i)).collect();
            tuple.push(theta.neg());
            let g = cartan_genus(&rs, &tuple).expect("simple roots and −θ are roots");
            out.push((fam, rank, by, g.entries));
        }
    }
    out
}

/// Split the vertex set of a genus into connected components of its diagram
/// (edges wherever an off-diagonal entry is nonzero).
pub(crate) fn diagram_components(g: &Genus) -> Vec<Vec<usize>> {
    let n = g.n;
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut queue = vec![s];
        while let Some(i) = queue.pop() {
            for j in 0..n {
                if !seen[j] && !g.entries.at(i, j).is_zero() {
                    seen[j] = true;
                    comp.push(j);
                    queue.push(j);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Symmetrize a connected generalized Cartan matrix: positive rationals d
/// with d_i·a_{ij} = d_j·a_{ji}, if they exist.  Finite and affine matrices
/// are always symmetrizable, so failure means the component is indefinite.
pub(crate) fn symmetrizer(a: &MatRat) -> Option<Vec<Rat>> {
    let n = a.rows;
    let mut d: Vec<Option<Rat>> = vec![None; n];
    d[0] = Some(Rat::one());
    let mut queue = vec![0usize];
    while let Some(i) = queue.pop() {
        let di = d[i].clone().unwrap();
        for j in 0..n {
            if i == j || a.at(i, j).is_zero() {
                continue;
            }
            let dj = &(&di * a.at(i, j)) / a.at(j, i);
            match &d[j] {
                None => {
                    d[j] = Some(dj);
                    queue.push(j);
                }
                Some(known) => {
                    if *known != dj {
                        return None;
                    }
                }
            }
        }
    }
    d.into_iter().collect::<Option<Vec<_>>>()
}

fn classify_component(sub: &MatRat) -> DiagramLabel {
    let n = sub.rows;
    let Some(d) = symmetrizer(sub) else {
        return DiagramLabel::Indefinite;
    };
    let mut sym = sub.clone();
    for i in 0..n {
        for j in 0..n {
            let v = &d[i] * sub.at(i, j);
            *sym.at_mut(i, j) = v;
        }
    }
    let (_, neg, zero) = symmetric_inertia(&sym);
    if neg > 0 || zero > 1 {
        return DiagramLabel::Indefinite;
    }
    if zero == 0 {
        for (fam, cand) in finite_candidates(n) {
            if permutation_equivalent(sub, &cand).is_some() {
                return DiagramLabel::Finite(fam, n);
            }
        }
    } else {
        for (fam, rank, by, cand) in affine_candidates(n) {
            if permutation_equivalent(sub, &cand).is_some() {
                return DiagramLabel::Affine(fam, rank, by);
            }
        }
    }
    // Positive (semi)definite but outside the reference tables: either a
    // twisted affine diagram that no root tuple realizes, or rank > 32.
    DiagramLabel::Indefinite
}

/// Classify the Dynkin diagram of a generalized Cartan matrix.  `None` when
/// g fails the GCM axioms; otherwise each connected component is labeled by
/// matching against the finite Cartan matrices and the affine extensions.
pub fn classify_gcm(g: &Genus) -> Option<DiagramClassification> {
    if !is_gcm(g) {
        return None;
    }
    let mut components = Vec::new();
    for comp in diagram_components(g) {
        let sub = submatrix(&g.entries, &comp);
        components.push((classify_component(&sub), comp));
    }
    Some(DiagramClassification { components })
}

/// Whether the given (distinct) roots form a simple system of a subsystem:
/// pairwise coroot pairings ≤ 0 and every diagram component of finite type.
pub fn is_simple_subsystem(rs: &RootSystem, roots: &[usize]) -> bool {
    let tuple: TupleV = roots.iter().map(|&k| rs.roots[k].clone()).collect();
    let g = match cartan_genus(rs, &tuple) {
        Ok(g) => g,
        Err(_) => return false,
    };
    match classify_gcm(&g) {
        Some(c) => c.all_finite(),
        None => false,
    }
}

/// A type of genera: the canonical orbit representative of the simultaneous
/// permutation action, the orbit size, and one permutation reaching the
/// canonical form from the input (canonical = g.permuted(perm)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusType {
    pub canonical: Genus,
    pub orbit_size: usize,
    pub perm: Vec<usize>,
}

impl GenusType {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "canonical": self.canonical.to_json(),
            "orbit_size": self.orbit_size,
            "perm": self.perm.iter().map(|p| p + 1).collect::<Vec<_>>(),
        })
    }
}

fn check_perm_bound(n: usize) -> Result<()> {
    if n > GENUS_PERM_BOUND {
        return Err(Error::Invalid(format!(
            "genus rank {n} exceeds the permutation search bound {GENUS_PERM_BOUND}"
        )));
    }
    Ok(())
}

/// Canonical representative of the Sym_n-orbit of g: the lexicographically
/// minimal matrix in row-major order among all simultaneous permutations.
/// Two genera have equal canonical forms exactly when they have the same
/// type.
pub fn genus_type(g: &Genus) -> Result<GenusType> {
    check_perm_bound(g.n)?;
    let n = g.n;
    let mut best: Option<Vec<usize>> = None;
    let mut total = 0usize;
    let mut auts = 0usize;
    for_each_permutation(n, &mut |pi| {
        total += 1;
        // pi selects: candidate(i, j) = g[pi(i)][pi(j)].
        let mut is_aut = true;
        for idx in 0..n * n {
            let (i, j) = (idx / n, idx % n);
            if g.entries.at(pi[i], pi[j]) != g.entries.at(i, j) {
                is_aut = false;
                break;
            }
        }
        if is_aut {
            auts += 1;
        }
        let better = match &best {
            None => true,
            Some(b) => {
                let mut verdict = false;
                for idx in 0..n * n {
                    let (i, j) = (idx / n, idx % n);
                    match g.entries.at(pi[i], pi[j]).cmp(g.entries.at(b[i], b[j])) {
                        std::cmp::Ordering::Less => {
                            verdict = true;
                            break;
                        }
                        std::cmp::Ordering::Greater => break,
                        std::cmp::Ordering::Equal => {}
                    }
                }
                verdict
            }
        };
        if better {
            best = Some(pi.to_vec());
        }
    });
    let pi = best.expect("n ≥ 0 always yields at least the identity");
    let perm = invert_perm(&pi);
    let canonical = g.permuted(&perm);
    Ok(GenusType { canonical, orbit_size: total / auts, perm })
}

/// All permutations ρ with ρ·g = g, as image lists, in lexicographic order.
/// Always a subgroup of Sym_n.
pub fn automorphism_group(g: &Genus) -> Result<Vec<Vec<usize>>> {
    check_perm_bound(g.n)?;
    let n = g.n;
    let mut out = Vec::new();
    for_each_permutation(n, &mut |rho| {
        let fixes = (0..n * n).all(|idx| {
            let (i, j) = (idx / n, idx % n);
            g.entries.at(rho[i], rho[j]) == g.entries.at(i, j)
        });
        if fixes {
            out.push(rho.to_vec());
        }
    });
    Ok(out)
}

/// The tridiagonal type-A chain matrix σ_l (2 on the diagonal, −1 on the
/// first off-diagonals).
pub fn a_chain_matrix(l: usize) -> MatRat {
    let mut m = MatRat::zero(l, l);
    for i in 0..l {
        *m.at_mut(i, i) = Rat::int(2);
        if i + 1 < l {
            *m.at_mut(i, i + 1) = Rat::int(-1);
            *m.at_mut(i + 1, i) = Rat::int(-1);
        }
    }
    m
}

/// Largest k such that some k-element subset of the simple roots spans a
/// type A_k subsystem (induced diagram a simply-laced path).
fn max_a_parabolic_rank(rs: &RootSystem) -> usize {
    let n = rs.rank;
    let mut best = 0usize;
    for mask in 1u64..(1u64 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if idx.len() <= best {
            continue;
        }
        let mut edges = 0usize;
        let mut degrees = vec![0usize; idx.len()];
        let mut simply_laced = true;
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                let prod = rs.cartan.at(idx[a], idx[b]) * rs.cartan.at(idx[b], idx[a]);
                if prod.is_zero() {
                    continue;
                }
                if prod != Rat::one() {
                    simply_laced = false;
                }
                edges += 1;
                degrees[a] += 1;
                degrees[b] += 1;
            }
        }
        // A path: connected tree (|E| = |V|−1 suffices once degrees ≤ 2
        // rule out cycles-plus-isolated-vertex splits of that edge count).
        let path = simply_laced
            && edges + 1 == idx.len()
            && degrees.iter().all(|&d| d <= 2)
            && is_connected(&idx, &rs.cartan);
        if path {
            best = idx.len();
        }
    }
    best
}

fn is_connected(idx: &[usize], cartan: &MatRat) -> bool {
    let k = idx.len();
    let mut seen = vec![false; k];
    let mut queue = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(a) = queue.pop() {
        for b in 0..k {
            if !seen[b] && !cartan.at(idx[a], idx[b]).is_zero() {
                seen[b] = true;
                count += 1;
                queue.push(b);
            }
        }
    }
    count == k
}

/// Executable form of the ordering rules behind [`standard_genus`], by
/// exhaustive search over all orderings of the Cartan matrix: the leading
/// l×l block must be the chain σ_l (l the largest type-A parabolic rank),
/// every later vertex must attach to exactly one earlier vertex, the
/// attachment points (p_{l+1}, …, p_n) must be lexicographically greatest,
/// and a remaining tie is broken by requiring the root at position l to be
/// the longer one (entry (l, l+1) equal to −1).  Feasible for rank ≤ 8;
/// used to validate the tables served by `standard_genus`.
pub fn standard_genus_rule_search(fam: Family, rank: usize) -> Result<Genus> {
    let rs = build(&CartanType { components: vec![(fam, rank)] })?;
    let l = max_a_parabolic_rank(&rs);
    let chain = a_chain_matrix(l);
    let mut best_p: Option<Vec<usize>> = None;
    let mut mats: Vec<MatRat> = Vec::new();
    for_each_permutation(rank, &mut |pi| {
        for i in 0..l {
            for j in 0..l {
                if rs.cartan.at(pi[i], pi[j]) != chain.at(i, j) {
                    return;
                }
            }
        }
        let mut pvec = Vec::with_capacity(rank - l);
        for i in l..rank {
            let attach: Vec<usize> =
                (0..i).filter(|&j| !rs.cartan.at(pi[j], pi[i]).is_zero()).collect();
            match attach[..] {
                [only] => pvec.push(only + 1),
                _ => return,
            }
        }
        let keep = match &best_p {
            None => true,
            Some(b) if pvec > *b => true,
            Some(b) if pvec == *b => {
                mats.push(rs.cartan.permuted_symmetric(pi));
                return;
            }
            _ => return,
        };
        if keep {
            best_p = Some(pvec);
            mats = vec![rs.cartan.permuted_symmetric(pi)];
        }
    });
    if best_p.is_none() {
        return Err(Error::Invalid(format!(
            "no ordering of {fam:?}{rank} satisfies the chain rules"
        )));
    }
    mats.sort_by(|a, b| a.row_major().cmp(b.row_major()));
    mats.dedup();
    if mats.len() > 1 {
        mats.retain(|m| *m.at(l - 1, l) == Rat::int(-1));
    }
    assert_eq!(mats.len(), 1, "the ordering rules determine a unique matrix");
    Ok(Genus::new(mats.pop().unwrap()))
}

/// Standard genus of an irreducible type: the distinguished ordering of its
/// Cartan matrix described at [`standard_genus_rule_search`].  For the
/// families A–D and F the result is the Cartan matrix in its usual indexing
/// (also for this crate's G2, which puts the long root first); for E6–E8
/// the chain rule forces a reindexing, recorded here as fixed tables.
pub fn standard_irreducible_genus(fam: Family, rank: usize) -> Result<Genus> {
    let e_table = |rank: usize, attach: usize| {
        let mut m = a_chain_matrix(rank);
        let last = rank - 1;
        *m.at_mut(last, last - 1) = Rat::zero();
        *m.at_mut(last - 1, last) = Rat::zero();
        *m.at_mut(attach - 1, last) = Rat::int(-1);
        *m.at_mut(last, attach - 1) = Rat::int(-1);
        Genus::new(m)
    };
    match (fam, rank) {
        (Family::B | Family::C, 2) => Ok(Genus::from_i64(&[&[2, -1], &[-2, 2]])),
        (Family::G, 2) => Ok(Genus::from_i64(&[&[2, -1], &[-3, 2]])),
        (Family::E, 6) => Ok(e_table(6, 3)),
        (Family::E, 7) => Ok(e_table(7, 4)),
        (Family::E, 8) => Ok(e_table(8, 5)),
        _ => {
            let rs = build(&CartanType { components: vec![(fam, rank)] })?;
            Ok(Genus::new(rs.cartan.clone()))
        }
    }
}

/// Standard genus of a Cartan type: for irreducible types the distinguished
/// Cartan-matrix ordering, for reducible types the block-diagonal join of
/// the components' standard genera, listed by decreasing rank with equal
/// ranks in family order A < B < C < D < E < F < G.
pub fn standard_genus(x: &CartanType) -> Result<Genus> {
    let mut comps = x.components.clone();
    comps.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let blocks: Vec<Genus> = comps
        .iter()
        .map(|&(f, r)| standard_irreducible_genus(f, r))
        .collect::<Result<_>>()?;
    let n: usize = blocks.iter().map(|g| g.n).sum();
    let mut m = MatRat::zero(n, n);
    let mut off = 0usize;
    for g in &blocks {
        for i in 0..g.n {
            for j in 0..g.n {
                *m.at_mut(off + i, off + j) = g.entries.at(i, j).clone();
            }
        }
        off += g.n;
    }
    Ok(Genus::new(m))
}

/// Which pairing matrix a fiber enumeration should match.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenusKind {
    Gram,
    Cartan,
}

/// All ordered root tuples b in the fundamental domain C^(n) whose genus of
/// the chosen kind equals σ, sorted by the tuple order.  Depth-first
/// search: the k-th entry ranges over roots lying in the chamber of the
/// stabilizer parabolic of the first k−1 entries and realizing the
/// prescribed pairings — membership in C^(n) is exactly this chain
/// condition, so no filtering happens afterwards.
pub fn enumerate_fiber(rs: &RootSystem, sigma: &Genus, kind: GenusKind) -> Result<Vec<TupleV>> {
    let n = sigma.n;
    if n == 0 || n > FIBER_RANK_BOUND {
        return Err(Error::Invalid(format!(
            "fiber enumeration needs a genus rank in 1..={FIBER_RANK_BOUND}, got {n}"
        )));
    }
    // Quick impossibility checks: a Gram genus is symmetric, a Cartan genus
    // has diagonal 2.  (Failing them means an empty fiber, not an error.)
    match kind {
        GenusKind::Gram if !sigma.is_symmetric() => return Ok(Vec::new()),
        GenusKind::Cartan
            if (0..n).any(|i| *sigma.entries.at(i, i) != Rat::int(2)) =>
        {
            return Ok(Vec::new())
        }
        _ => {}
    }
    let simple_pair: Vec<Vec<Rat>> =
        rs.roots.iter().map(|v| rs.simple_pairings(v)).collect();
    let pair_ok = |i_idx: usize, j_idx: usize, want: &Rat| -> bool {
        match kind {
            GenusKind::Gram => rs.pairing(&rs.roots[i_idx], &rs.roots[j_idx]) == *want,
            GenusKind::Cartan => rs.coroot_pairing(i_idx, &rs.roots[j_idx]) == *want,
        }
    };
    let mut out: Vec<TupleV> = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    fn dfs(
        rs: &RootSystem,
        sigma: &Genus,
        kind: GenusKind,
        simple_pair: &[Vec<Rat>],
        pair_ok: &dyn Fn(usize, usize, &Rat) -> bool,
        chosen: &mut Vec<usize>,
        mask: Parabolic,
        out: &mut Vec<TupleV>,
    ) {
        let k = chosen.len();
        if k == sigma.n {
            out.push(chosen.iter().map(|&i| rs.roots[i].clone()).collect());
            return;
        }
        'cand: for b in 0..rs.num_roots() {
            match kind {
                GenusKind::Gram => {
                    if rs.norms[b] != *sigma.entries.at(k, k) {
                        continue;
                    }
                }
                GenusKind::Cartan => {}
            }
            for j in mask.iter() {
                if simple_pair[b][j].is_negative() {
                    continue 'cand;
                }
            }
            for (i, &prev) in chosen.iter().enumerate() {
                if !pair_ok(prev, b, sigma.entries.at(i, k))
                    || !pair_ok(b, prev, sigma.entries.at(k, i))
                {
                    continue 'cand;
                }
            }
            let mut next_mask = Parabolic::empty();
            for j in mask.iter() {
                if simple_pair[b][j].is_zero() {
                    next_mask.insert(j);
                }
            }
            chosen.push(b);
            dfs(rs, sigma, kind, simple_pair, pair_ok, chosen, next_mask, out);
            chosen.pop();
        }
    }
    dfs(
        rs,
        sigma,
        kind,
        &simple_pair,
        &pair_ok,
        &mut chosen,
        Parabolic::full(rs.rank),
        &mut out,
    );
    out.sort_by(|a, b| diagfund::tuple_cmp(a, b));
    Ok(out)
}

/// All tuples (β_1, …, β_n) with β_1 a dominant root, β_2, …, β_n pairwise
/// distinct negated simple roots, and every later entry non-orthogonal to
/// some earlier one.  Each such tuple is an ordered np subset lying in the
/// fundamental domain, which makes these cheap seeds for subsystem
/// constructions.  Sorted by the tuple order.
pub fn np_graphical_tuples(rs: &RootSystem, n: usize) -> Vec<TupleV> {
    assert!(n >= 1, "tuples have at least one place");
    let mut out: Vec<TupleV> = Vec::new();
    for d in chamber::dominant_roots(rs) {
        let first = rs.roots[d].clone();
        let mut picked: Vec<usize> = Vec::new();
        fn dfs(
            rs: &RootSystem,
            first: &VecPi,
            picked: &mut Vec<usize>,
            n: usize,
            out: &mut Vec<TupleV>,
        ) {
            if picked.len() + 1 == n {
                let mut t = vec![first.clone()];
                t.extend(picked.iter().map(|&s| VecPi::basis(rs.rank, s).neg()));
                out.push(t);
                return;
            }
            for s in 0..rs.rank {
                if picked.contains(&s) {
                    continue;
                }
                let alpha = VecPi::basis(rs.rank, s);
                let linked = !rs.pairing(&alpha, first).is_zero()
                    || picked.iter().any(|&p| {
                        !rs.pairing(&alpha, &VecPi::basis(rs.rank, p)).is_zero()
                    });
                if linked {
                    picked.push(s);
                    dfs(rs, first, picked, n, out);
                    picked.pop();
                }
            }
        }
        dfs(rs, &first, &mut picked, n, &mut out);
    }
    out.sort_by(|a, b| diagfund::tuple_cmp(a, b));
    out
}
