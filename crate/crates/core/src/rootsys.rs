//! Finite crystallographic root systems and their Weyl groups.
//!
//! A root system is built from a Cartan type string like `"B3"` or
//! `"A1xG2"`.  Everything is stored in Π-coordinates (the basis of simple
//! roots), with the inner product given by the Gram matrix.  Per irreducible
//! component the form is normalized so long roots have squared length 2;
//! this pins Gram matrices of subsystems uniquely.
//!
//! Group elements are permutations of the (finite, ordered) root list,
//! together with their matrix on V.   The root list is deterministic:
//! positive roots sorted by height then lexicographic coordinates, followed
//! by their negatives in the same order, so indices — and hence every
//! enumeration order downstream — are reproducible across runs.

use crate::error::{Error, Result};
use crate::exact::{solve_linear, MatRat, Rat, VecPi};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

/// Default ceiling on explicit Weyl group enumeration.  Orders are always
/// known in advance from the type, so the guard fires before any work.
pub const DEFAULT_GROUP_LIMIT: u128 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// Cartan type: an ordered list of irreducible components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub components: Vec<(Family, usize)>,
}

impl CartanType {
    pub fn parse(s: &str) -> Result<CartanType> {
        let mut components = Vec::new();
        for tok in s.split(['x', 'X']) {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err(Error::InvalidType(format!("empty component in {s:?}")));
            }
            let fam = match tok.chars().next().unwrap().to_ascii_uppercase() {
                'A' => Family::A,
                'B' => Family::B,
                'C' => Family::C,
                'D' => Family::D,
                'E' => Family::E,
                'F' => Family::F,
                'G' => Family::G,
                c => return Err(Error::InvalidType(format!("unknown family {c:?} in {s:?}"))),
            };
            let rank: usize = tok[1..]
                .parse()
                .map_err(|_| Error::InvalidType(format!("bad rank in component {tok:?}")))?;
            let ok = match fam {
                Family::A => rank >= 1,
                Family::B | Family::C => rank >= 2,
                Family::D => rank >= 4,
                Family::E => (6..=8).contains(&rank),
                Family::F => rank == 4,
                Family::G => rank == 2,
            };
            if !ok {
                return Err(Error::InvalidType(format!(
                    "rank {rank} is not valid for family {}",
                    fam.letter()
                )));
            }
            components.push((fam, rank));
        }
        let t = CartanType { components };
        if t.rank() > 32 {
            return Err(Error::InvalidType(format!("total rank {} exceeds 32", t.rank())));
        }
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|&(_, n)| n).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    /// Number of roots, from the classification.
    pub fn num_roots(&self) -> usize {
        self.components
            .iter()
            .map(|&(f, n)| match f {
                Family::A => n * (n + 1),
                Family::B | Family::C => 2 * n * n,
                Family::D => 2 * n * (n - 1),
                Family::E => [72, 126, 240][n - 6],
                Family::F => 48,
                Family::G => 12,
            })
            .sum()
    }

    /// |W|, from the classification — no enumeration involved.
    pub fn group_order(&self) -> u128 {
        fn fact(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        self.components
            .iter()
            .map(|&(f, n)| match f {
                Family::A => fact(n + 1),
                Family::B | Family::C => (1u128 << n) * fact(n),
                Family::D => (1u128 << (n - 1)) * fact(n),
                Family::E => [51_840u128, 2_903_040, 696_729_600][n - 6],
                Family::F => 1152,
                Family::G => 12,
            })
            .product()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(fam, n)) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, "x")?;
            }
            write!(f, "{}{}", fam.letter(), n)?;
        }
        Ok(())
    }
}

/// Subset of simple-root indices {0, …, rank-1}, i.e. the index set of a
/// standard parabolic subgroup.  Stored as a bitmask; rank is capped at 32.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parabolic(pub u32);

impl Parabolic {
    pub fn empty() -> Parabolic {
        Parabolic(0)
    }

    pub fn full(rank: usize) -> Parabolic {
        debug_assert!(rank <= 32);
        if rank == 32 {
            Parabolic(u32::MAX)
        } else {
            Parabolic((1u32 << rank) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Parabolic {
        let mut m = 0u32;
        for i in it {
            debug_assert!(i < 32);
            m |= 1 << i;
        }
        Parabolic(m)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn is_subset_of(self, other: Parabolic) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn inter(self, other: Parabolic) -> Parabolic {
        Parabolic(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// All subsets of self, in increasing bitmask order (deterministic).
    pub fn subsets(self) -> Vec<Parabolic> {
        let mut out = Vec::new();
        let mut sub = 0u32;
        loop {
            out.push(Parabolic(sub));
            if sub == self.0 {
                break;
            }
            sub = (sub.wrapping_sub(self.0)) & self.0;
        }
        out.sort_by_key(|p| p.0);
        out
    }
}

impl fmt::Display for Parabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Parabolic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let idx: Vec<usize> = self.iter().collect();
        let mut seq = s.serialize_seq(Some(idx.len()))?;
        for i in idx {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Parabolic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Parabolic, D::Error> {
        let idx = Vec::<usize>::deserialize(d)?;
        Ok(Parabolic::from_indices(idx))
    }
}

/// Weyl group element: a permutation of the root list plus its length.
/// The matrix on V is recovered on demand from the images of the simple
/// roots; it always has integer entries in Π-coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub perm: Vec<u32>,
    pub length: u32,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn root_image(&self, k: usize) -> usize {
        self.perm[k] as usize
    }

    /// det on V, which is (-1)^length.
    pub fn det(&self) -> i32 {
        if self.length % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Matrix of the element on V in Π-coordinates (columns are the images
    /// of the simple roots).
    pub fn matrix(&self, rs: &RootSystem) -> MatRat {
        let n = rs.rank;
        let mut m = MatRat::zero(n, n);
        for j in 0..n {
            let img = &rs.roots[self.perm[rs.simple_loc[j]] as usize];
            for i in 0..n {
                *m.at_mut(i, j) = img.0[i].clone();
            }
        }
        m
    }

    pub fn apply(&self, rs: &RootSystem, v: &VecPi) -> VecPi {
        self.matrix(rs).mul_vec(v)
    }
}

pub struct RootSystem {
    pub cartan_type: CartanType,
    pub rank: usize,
    /// Gram matrix of the simple roots (symmetric, positive definite).
    pub gram: MatRat,
    /// Cartan matrix: entry (i, j) is ⟨α_i∨, α_j⟩ = 2⟨α_i,α_j⟩/⟨α_i,α_i⟩.
    pub cartan: MatRat,
    /// All roots; positives first (sorted by height, then lexicographic
    /// coordinates), then the negatives in matching order.
    pub roots: Vec<VecPi>,
    pub positive_count: usize,
    /// roots[simple_loc[i]] == α_i.
    pub simple_loc: Vec<usize>,
    /// Component index of each simple root.
    pub component_of_simple: Vec<usize>,
    /// Component index of each root.
    pub component_of_root: Vec<usize>,
    /// Squared length of each root.
    pub norms: Vec<Rat>,
    /// Bitmask of simple indices appearing with nonzero coefficient.
    pub support: Vec<u32>,
    index: HashMap<VecPi, usize>,
    simple_refl: Vec<Vec<u32>>,
}

fn gram_block(fam: Family, n: usize) -> Vec<Vec<Rat>> {
    let r = |p: i64, q: i64| Rat::new(p, q).unwrap();
    let mut g = vec![vec![Rat::zero(); n]; n];
    let set = |g: &mut Vec<Vec<Rat>>, i: usize, j: usize, v: Rat| {
        g[i][j] = v.clone();
        g[j][i] = v;
    };
    match fam {
        Family::A => {
            for i in 0..n {
                g[i][i] = r(2, 1);
            }
            for i in 0..n - 1 {
                set(&mut g, i, i + 1, r(-1, 1));
            }
        }
        Family::B => {
            // α_n short: squared lengths (2, …, 2, 1).
            for i in 0..n {
                g[i][i] = if i + 1 == n { r(1, 1) } else { r(2, 1) };
            }
            for i in 0..n - 1 {
                set(&mut g, i, i + 1, r(-1, 1));
            }
        }
        Family::C => {
            // α_n long: squared lengths (1, …, 1, 2).
            for i in 0..n {
                g[i][i] = if i + 1 == n { r(2, 1) } else { r(1, 1) };
            }
            for i in 0..n - 1 {
                // short-short bonds pair to -1/2, the final short-long to -1
                let v = if i == n - 2 { r(-1, 1) } else { r(-1, 2) };
                set(&mut g, i, i + 1, v);
            }
        }
        Family::D => {
            for i in 0..n {
                g[i][i] = r(2, 1);
            }
            for i in 0..n - 2 {
                set(&mut g, i, i + 1, r(-1, 1));
            }
            set(&mut g, n - 3, n - 1, r(-1, 1));
        }
        Family::E => {
            for i in 0..n {
                g[i][i] = r(2, 1);
            }
            // Bourbaki: chain 1-3-4-5-6(-7-8) with 2 attached to 4.
            let chain: &[(usize, usize)] = &[(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
            for &(i, j) in chain.iter().take(n - 2) {
                set(&mut g, i, j, r(-1, 1));
            }
            set(&mut g, 1, 3, r(-1, 1));
        }
        Family::F => {
            // α1, α2 long; α3, α4 short.
            g[0][0] = r(2, 1);
            g[1][1] = r(2, 1);
            g[2][2] = r(1, 1);
            g[3][3] = r(1, 1);
            set(&mut g, 0, 1, r(-1, 1));
            set(&mut g, 1, 2, r(-1, 1));
            set(&mut g, 2, 3, r(-1, 2));
        }
        Family::G => {
            // This crate orders G2 with α1 long, α2 short.
            g[0][0] = r(2, 1);
            g[1][1] = r(2, 3);
            set(&mut g, 0, 1, r(-1, 1));
        }
    }
    g
}

pub fn build(ct: &CartanType) -> Result<RootSystem> {
    let rank = ct.rank();
    if rank == 0 || rank > 32 {
        return Err(Error::InvalidType(format!("unsupported rank {rank}")));
    }
    let mut gram = MatRat::zero(rank, rank);
    let mut component_of_simple = vec![0usize; rank];
    let mut off = 0;
    for (ci, &(fam, n)) in ct.components.iter().enumerate() {
        let block = gram_block(fam, n);
        for i in 0..n {
            component_of_simple[off + i] = ci;
            for j in 0..n {
                *gram.at_mut(off + i, off + j) = block[i][j].clone();
            }
        }
        off += n;
    }
    let mut cartan = MatRat::zero(rank, rank);
    for i in 0..rank {
        let two_over = Rat::int(2).checked_div(gram.at(i, i))?;
        for j in 0..rank {
            *cartan.at_mut(i, j) = &two_over * gram.at(i, j);
        }
    }

    // Generate all roots by closing the simple roots under simple
    // reflections: s_i(v) = v - ⟨v, α_i∨⟩ α_i.
    let mut seen: HashSet<VecPi> = HashSet::new();
    let mut queue: VecDeque<VecPi> = VecDeque::new();
    for i in 0..rank {
        let e = VecPi::basis(rank, i);
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..rank {
            let mut c = Rat::zero();
            for j in 0..rank {
                if !v.0[j].is_zero() {
                    c += &(cartan.at(i, j) * &v.0[j]);
                }
            }
            if c.is_zero() {
                continue;
            }
            let mut w = v.clone();
            w.0[i] -= &c;
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut positives: Vec<VecPi> = seen.iter().filter(|v| v.leading_sign() > 0).cloned().collect();
    positives.sort_by(|a, b| {
        let ha: Rat = a.0.iter().fold(Rat::zero(), |acc, x| &acc + x);
        let hb: Rat = b.0.iter().fold(Rat::zero(), |acc, x| &acc + x);
        ha.cmp(&hb).then_with(|| a.0.cmp(&b.0))
    });
    let positive_count = positives.len();
    let mut roots = positives;
    for k in 0..positive_count {
        let neg = roots[k].neg();
        roots.push(neg);
    }
    if roots.len() != ct.num_roots() {
        return Err(Error::Invalid(format!(
            "generated {} roots for {ct} but the classification says {}",
            roots.len(),
            ct.num_roots()
        )));
    }

    let index: HashMap<VecPi, usize> =
        roots.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
    let simple_loc: Vec<usize> =
        (0..rank).map(|i| index[&VecPi::basis(rank, i)]).collect();
    let mut norms = Vec::with_capacity(roots.len());
    let mut support = Vec::with_capacity(roots.len());
    let mut component_of_root = Vec::with_capacity(roots.len());
    for v in &roots {
        let gv = gram.mul_vec(v);
        let mut norm = Rat::zero();
        for j in 0..rank {
            if !v.0[j].is_zero() {
                norm += &(&v.0[j] * &gv.0[j]);
            }
        }
        norms.push(norm);
        let mut mask = 0u32;
        let mut comp = 0usize;
        for j in 0..rank {
            if !v.0[j].is_zero() {
                mask |= 1 << j;
                comp = component_of_simple[j];
            }
        }
        support.push(mask);
        component_of_root.push(comp);
    }

    let mut rs = RootSystem {
        cartan_type: ct.clone(),
        rank,
        gram,
        cartan,
        roots,
        positive_count,
        simple_loc,
        component_of_simple,
        component_of_root,
        norms,
        support,
        index,
        simple_refl: Vec::new(),
    };
    rs.simple_refl = (0..rank)
        .map(|i| {
            let alpha = VecPi::basis(rank, i);
            rs.reflection_perm(&alpha)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rs)
}

impl RootSystem {
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_index(&self, v: &VecPi) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k < self.positive_count
    }

    /// Index of -roots[k].
    pub fn negate_root(&self, k: usize) -> usize {
        if k < self.positive_count {
            k + self.positive_count
        } else {
            k - self.positive_count
        }
    }

    /// ⟨u, v⟩ via the Gram matrix.
    pub fn pairing(&self, u: &VecPi, v: &VecPi) -> Rat {
        let gv = self.gram.mul_vec(v);
        let mut acc = Rat::zero();
        for j in 0..self.rank {
            if !u.0[j].is_zero() {
                acc += &(&u.0[j] * &gv.0[j]);
            }
        }
        acc
    }

    /// All ⟨α_i, v⟩ at once (row i of Gram applied to v).
    pub fn simple_pairings(&self, v: &VecPi) -> Vec<Rat> {
        self.gram.mul_vec(v).0
    }

    /// ⟨β∨, v⟩ = 2⟨β, v⟩ / ⟨β, β⟩ for the root with index `k`.
    pub fn coroot_pairing(&self, k: usize, v: &VecPi) -> Rat {
        let two = Rat::int(2);
        let p = self.pairing(&self.roots[k], v);
        &(&two * &p) / &self.norms[k]
    }

    /// Whether root k lies in the standard parabolic subsystem Φ_I.
    pub fn root_in_parabolic(&self, k: usize, i_set: Parabolic) -> bool {
        self.support[k] & !i_set.0 == 0
    }

    /// Reflection in the hyperplane of an arbitrary root (given by its
    /// coordinate vector), as a root permutation.
    fn reflection_perm(&self, alpha: &VecPi) -> Result<Vec<u32>> {
        let k = self
            .root_index(alpha)
            .ok_or_else(|| Error::NotARoot(format!("{alpha}")))?;
        let norm = &self.norms[k];
        let two = Rat::int(2);
        let mut perm = Vec::with_capacity(self.roots.len());
        for v in &self.roots {
            let c = &(&two * &self.pairing(alpha, v)) / norm;
            let img = v.sub(&alpha.scale(&c));
            let idx = self
                .root_index(&img)
                .expect("reflection of a root must be a root");
            perm.push(idx as u32);
        }
        Ok(perm)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { perm: (0..self.roots.len() as u32).collect(), length: 0 }
    }

    fn length_of_perm(&self, perm: &[u32]) -> u32 {
        (0..self.positive_count)
            .filter(|&k| perm[k] as usize >= self.positive_count)
            .count() as u32
    }

    pub fn element_from_perm(&self, perm: Vec<u32>) -> GroupElement {
        let length = self.length_of_perm(&perm);
        GroupElement { perm, length }
    }

    pub fn simple_reflection(&self, i: usize) -> GroupElement {
        self.element_from_perm(self.simple_refl[i].clone())
    }

    /// Reflection s_β for the root with index `k`.
    pub fn reflection(&self, k: usize) -> GroupElement {
        let perm = self
            .reflection_perm(&self.roots[k].clone())
            .expect("index k is a root");
        self.element_from_perm(perm)
    }

    /// a ∘ b (apply b first).
    pub fn compose(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let perm: Vec<u32> = b.perm.iter().map(|&k| a.perm[k as usize]).collect();
        self.element_from_perm(perm)
    }

    pub fn invert(&self, a: &GroupElement) -> GroupElement {
        let mut perm = vec![0u32; a.perm.len()];
        for (k, &img) in a.perm.iter().enumerate() {
            perm[img as usize] = k as u32;
        }
        GroupElement { perm, length: a.length }
    }

    /// Left-multiplies by the simple reflection: s_i ∘ a.
    pub fn left_mul_simple(&self, i: usize, a: &GroupElement) -> GroupElement {
        let sr = &self.simple_refl[i];
        let perm: Vec<u32> = a.perm.iter().map(|&k| sr[k as usize]).collect();
        self.element_from_perm(perm)
    }

    /// A reduced word for w: indices i_1, …, i_k with w = s_{i_1} ⋯ s_{i_k}.
    pub fn reduced_word(&self, w: &GroupElement) -> Vec<usize> {
        let mut cur = w.clone();
        let mut rev = Vec::new();
        while cur.length > 0 {
            // l(w s_i) < l(w) iff w(α_i) < 0; peel letters off the right.
            let i = (0..self.rank)
                .find(|&i| !self.is_positive(cur.root_image(self.simple_loc[i])))
                .expect("non-identity element must invert some simple root");
            cur = self.compose(&cur, &self.simple_reflection(i));
            rev.push(i);
        }
        rev.reverse();
        rev
    }

    /// Full W, ordered by (length, permutation) — deterministic.  Errors if
    /// |W| (known from the type) exceeds `limit`.
    pub fn enumerate_group(&self, limit: u128) -> Result<Vec<GroupElement>> {
        let order = self.cartan_type.group_order();
        if order > limit {
            return Err(Error::GroupTooLarge { order, limit });
        }
        let id: Vec<u32> = (0..self.roots.len() as u32).collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(id.clone());
        let mut level = vec![id];
        let mut out: Vec<GroupElement> = Vec::with_capacity(order as usize);
        let mut len = 0u32;
        while !level.is_empty() {
            level.sort();
            for perm in &level {
                out.push(GroupElement { perm: perm.clone(), length: len });
            }
            let mut next = Vec::new();
            for perm in &level {
                for i in 0..self.rank {
                    // w · s_i : apply s_i first.
                    let prod: Vec<u32> =
                        self.simple_refl[i].iter().map(|&k| perm[k as usize]).collect();
                    if self.length_of_perm(&prod) > len && seen.insert(prod.clone()) {
                        next.push(prod);
                    }
                }
            }
            level = next;
            len += 1;
        }
        debug_assert_eq!(out.len() as u128, order);
        Ok(out)
    }

    /// Minimal-length representatives of W/W_J: {w ∈ W : w(Π_J) ⊆ Φ⁺},
    /// ordered by (length, permutation).
    pub fn min_coset_reps(&self, j_set: Parabolic, limit: u128) -> Result<Vec<GroupElement>> {
        let all = self.enumerate_group(limit)?;
        Ok(all
            .into_iter()
            .filter(|w| {
                j_set
                    .iter()
                    .all(|j| self.is_positive(w.root_image(self.simple_loc[j])))
            })
            .collect())
    }

    /// Membership test for a standard parabolic: w ∈ W_J iff every positive
    /// root sent negative lies in Φ_J.
    pub fn in_standard_parabolic(&self, w: &GroupElement, j_set: Parabolic) -> bool {
        (0..self.positive_count).all(|k| {
            self.is_positive(w.root_image(k)) || self.root_in_parabolic(k, j_set)
        })
    }

    /// Closure of a set of roots under its own reflections: the root
    /// subsystem Φ_Γ = W_Γ · Γ, returned as sorted root indices.
    pub fn subsystem_roots(&self, gamma: &[usize]) -> Vec<usize> {
        let refls: Vec<GroupElement> = gamma.iter().map(|&g| self.reflection(g)).collect();
        let mut seen: HashSet<usize> = gamma.iter().copied().collect();
        let mut queue: VecDeque<usize> = gamma.iter().copied().collect();
        while let Some(k) = queue.pop_front() {
            for r in &refls {
                let img = r.root_image(k);
                if seen.insert(img) {
                    queue.push_back(img);
                }
            }
        }
        let mut out: Vec<usize> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Coordinates of root k in the basis Γ (a linearly independent set of
    /// roots), or None if k is not in the span.
    pub fn coords_in(&self, gamma: &[usize], k: usize) -> Option<Vec<Rat>> {
        let m = gamma.len();
        let mut g = MatRat::zero(m, m);
        for a in 0..m {
            for b in 0..m {
                *g.at_mut(a, b) = self.pairing(&self.roots[gamma[a]], &self.roots[gamma[b]]);
            }
        }
        let rhs: Vec<Rat> = (0..m)
            .map(|a| self.pairing(&self.roots[gamma[a]], &self.roots[k]))
            .collect();
        let c = solve_linear(&g, &rhs).ok()??;
        // Confirm k really lies in the span of Γ.
        let mut recon = VecPi::zero(self.rank);
        for (a, cf) in c.iter().enumerate() {
            recon = recon.add(&self.roots[gamma[a]].scale(cf));
        }
        if recon == self.roots[k] {
            Some(c)
        } else {
            None
        }
    }

    /// Validates that Γ is a simple system for the subsystem it generates:
    /// pairwise non-positive pairings and positive definite Gram matrix.
    pub fn check_simple_system(&self, gamma: &[usize]) -> Result<()> {
        let m = gamma.len();
        let mut seen = HashSet::new();
        for &g in gamma {
            if g >= self.roots.len() {
                return Err(Error::NotARoot(format!("index {g}")));
            }
            if !seen.insert(g) {
                return Err(Error::NotSimpleSystem("repeated root".into()));
            }
        }
        let mut gmat = MatRat::zero(m, m);
        for a in 0..m {
            for b in 0..m {
                let p = self.pairing(&self.roots[gamma[a]], &self.roots[gamma[b]]);
                if a != b && p.is_positive() {
                    return Err(Error::NotSimpleSystem(format!(
                        "roots {} and {} have positive pairing",
                        gamma[a], gamma[b]
                    )));
                }
                *gmat.at_mut(a, b) = p;
            }
        }
        let (pos, _, _) = crate::exact::symmetric_inertia(&gmat);
        if pos != m {
            return Err(Error::NotSimpleSystem("Gram matrix not positive definite".into()));
        }
        Ok(())
    }

    /// Enumerates the reflection subgroup W_Γ for a simple subsystem Γ, as
    /// group elements of W ordered by (word length over S_Γ, permutation).
    pub fn enumerate_subgroup(&self, gamma: &[usize], limit: u128) -> Result<Vec<GroupElement>> {
        self.check_simple_system(gamma)?;
        let gens: Vec<GroupElement> = gamma.iter().map(|&g| self.reflection(g)).collect();
        let id: Vec<u32> = (0..self.roots.len() as u32).collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(id.clone());
        let mut level = vec![id];
        let mut out = Vec::new();
        while !level.is_empty() {
            level.sort();
            for perm in &level {
                out.push(self.element_from_perm(perm.clone()));
                if out.len() as u128 > limit {
                    return Err(Error::GroupTooLarge { order: 0, limit });
                }
            }
            let mut next = Vec::new();
            for perm in &level {
                for g in &gens {
                    let prod: Vec<u32> = g.perm.iter().map(|&k| perm[k as usize]).collect();
                    if seen.insert(prod.clone()) {
                        next.push(prod);
                    }
                }
            }
            level = next;
        }
        Ok(out)
    }

    /// Positivity of a root with respect to the simple system Γ: true iff
    /// its Γ-coordinates are all ≥ 0.  Only meaningful for roots of Φ_Γ.
    pub fn gamma_positive(&self, gamma: &[usize], k: usize) -> bool {
        match self.coords_in(gamma, k) {
            Some(c) => c.iter().all(|x| !x.is_negative()),
            None => false,
        }
    }

    /// Minimal coset representatives inside a reflection subgroup:
    /// {w ∈ W_Γ : w⁻¹(Γ') ⊆ Φ_{Γ,+}}, for W_{Γ'} ⊆ W_Γ.  These represent
    /// the cosets w·W_{Γ'} of minimal length in W_Γ.
    pub fn min_coset_reps_subgroup(
        &self,
        gamma: &[usize],
        gamma_prime: &[usize],
        limit: u128,
    ) -> Result<Vec<GroupElement>> {
        let sub_roots = self.subsystem_roots(gamma);
        for &g in gamma_prime {
            if !sub_roots.contains(&g) {
                return Err(Error::Invalid(format!(
                    "root {g} generates a reflection outside W_Γ"
                )));
            }
        }
        let elements = self.enumerate_subgroup(gamma, limit)?;
        // Γ-positivity per root of Φ_Γ, computed once.
        let pos: HashMap<usize, bool> = sub_roots
            .iter()
            .map(|&k| (k, self.gamma_positive(gamma, k)))
            .collect();
        Ok(elements
            .into_iter()
            .filter(|w| {
                let winv = self.invert(w);
                gamma_prime.iter().all(|&g| pos[&winv.root_image(g)])
            })
            .collect())
    }

    /// Longest element of the standard parabolic W_I, together with the
    /// induced diagram permutation ρ of I:  ω_I(α_i) = -α_{ρ(i)}.
    /// Returned as (ω_I, list of (i, ρ(i)) pairs).
    pub fn longest_element(&self, i_set: Parabolic) -> (GroupElement, Vec<(usize, usize)>) {
        // Reduce -v for a strictly W_I-dominant v: the reducing element is
        // forced to be ω_I because the stabilizer of v in W_I is trivial.
        let chi: Vec<Rat> = (0..self.rank)
            .map(|i| if i_set.contains(i) { Rat::one() } else { Rat::zero() })
            .collect();
        let v = VecPi(
            solve_linear(&self.gram, &chi)
                .expect("gram is square")
                .expect("gram is invertible"),
        );
        let mut cur = v.neg();
        let mut w = self.identity();
        loop {
            let pair = self.simple_pairings(&cur);
            let Some(i) = i_set.iter().find(|&i| pair[i].is_negative()) else {
                break;
            };
            // cur ← s_i(cur)
            let c = {
                let mut acc = Rat::zero();
                for j in 0..self.rank {
                    if !cur.0[j].is_zero() {
                        acc += &(self.cartan.at(i, j) * &cur.0[j]);
                    }
                }
                acc
            };
            let mut nv = cur.clone();
            nv.0[i] -= &c;
            cur = nv;
            w = self.left_mul_simple(i, &w);
        }
        let rho: Vec<(usize, usize)> = i_set
            .iter()
            .map(|i| {
                let img = w.root_image(self.simple_loc[i]);
                let neg = self.negate_root(img);
                let j = (0..self.rank)
                    .find(|&j| self.simple_loc[j] == neg)
                    .expect("longest element maps Π_I onto -Π_I");
                (i, j)
            })
            .collect();
        (w, rho)
    }

    /// Longest element of the reflection subgroup W_Γ for an arbitrary
    /// simple subsystem Γ, with the diagram permutation it induces:
    /// ω_Γ(γ_a) = -γ_{rho[a]} (rho indexes positions in `gamma`).
    pub fn longest_element_subsystem(
        &self,
        gamma: &[usize],
    ) -> Result<(GroupElement, Vec<usize>)> {
        self.check_simple_system(gamma)?;
        let m = gamma.len();
        // v with ⟨γ_a, v⟩ = 1 for all a: strictly dominant for Γ, so its
        // W_Γ-stabilizer is trivial and the element reducing -v into the
        // Γ-chamber is forced to be ω_Γ.
        let mut gmat = MatRat::zero(m, m);
        for a in 0..m {
            for b in 0..m {
                *gmat.at_mut(a, b) = self.pairing(&self.roots[gamma[a]], &self.roots[gamma[b]]);
            }
        }
        let c = solve_linear(&gmat, &vec![Rat::one(); m])?
            .expect("Gram matrix of a simple system is invertible");
        let mut v = VecPi::zero(self.rank);
        for (a, cf) in c.iter().enumerate() {
            v = v.add(&self.roots[gamma[a]].scale(cf));
        }
        let refls: Vec<GroupElement> = gamma.iter().map(|&g| self.reflection(g)).collect();
        let mut cur = v.neg();
        let mut w = self.identity();
        loop {
            let Some(a) = (0..m)
                .find(|&a| self.pairing(&self.roots[gamma[a]], &cur).is_negative())
            else {
                break;
            };
            let coef = self.coroot_pairing(gamma[a], &cur);
            cur = cur.sub(&self.roots[gamma[a]].scale(&coef));
            w = self.compose(&refls[a], &w);
        }
        let rho: Vec<usize> = (0..m)
            .map(|a| {
                let img = self.negate_root(w.root_image(gamma[a]));
                gamma
                    .iter()
                    .position(|&g| g == img)
                    .expect("ω_Γ maps Γ onto -Γ")
            })
            .collect();
        Ok((w, rho))
    }

    /// -ω₀ on V: the diagram automorphism as a linear map.  Fixes dominant
    /// vectors and permutes the simple roots.
    pub fn rho_matrix(&self) -> MatRat {
        let (w0, _) = self.longest_element(Parabolic::full(self.rank));
        let m = w0.matrix(self);
        let mut out = MatRat::zero(self.rank, self.rank);
        for i in 0..self.rank {
            for j in 0..self.rank {
                *out.at_mut(i, j) = -m.at(i, j);
            }
        }
        out
    }
}
