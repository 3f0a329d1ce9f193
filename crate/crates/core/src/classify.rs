//! Conjugacy classification of simple subsystems.
//!
//! A *simple subsystem* of Φ is a subset Γ ⊆ Φ that is a simple system for
//! the root subsystem it generates.  Ordered simple systems of a fixed
//! isomorphism type X living inside the fundamental domain form the fiber
//! of the standard genus σ_X, and the W-conjugacy classes of unordered
//! simple subsystems of type X correspond exactly to the orbits of the
//! dot action of the genus automorphism group G_σ on that fiber.  This
//! module computes those orbits together with conjugation certificates,
//! specializes the machinery to type A (where a purely diagram-theoretic
//! model replaces the fiber search), builds maximal towers of mutually
//! orthogonal roots of a fixed length, checks the orbit-pinning property
//! behind the canonicalization algorithm, and certifies everything against
//! brute-force Weyl group enumeration on small systems.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::chamber;
use crate::diagfund::{self, tuple_cmp, TupleV};
use crate::error::{Error, Result};
use crate::exact::{MatRat, Rat, VecPi};
use crate::genus::{self, DiagramLabel, Genus, GenusKind};
use crate::rootsys::{CartanType, Family, Parabolic, RootSystem};

/// One successful application of a genus automorphism during orbit
/// closure: the dot action of `place_perm` carries fiber member `from` to
/// fiber member `to`.  `word` (simple reflection indices) spells the group
/// element that moves the place-permuted tuple back into the fundamental
/// domain; it therefore conjugates the underlying root set of `from` onto
/// that of `to` and serves as an auditable certificate of the merge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitEdge {
    pub from: usize,
    pub to: usize,
    pub place_perm: Vec<usize>,
    pub word: Vec<usize>,
}

/// An orbit of the dot action of G_σ on the fiber R_C(σ).  `members` are
/// indices into the fiber, `representative` is the smallest member, and
/// `edges` form a spanning tree of discovery certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotOrbit {
    pub representative: usize,
    pub members: Vec<usize>,
    pub edges: Vec<OrbitEdge>,
}

/// The outcome of classifying simple subsystems of one isomorphism type:
/// the fiber of the chosen genus inside the fundamental domain, the orbits
/// of the genus automorphism group acting on it by the dot action, and one
/// representative ordered tuple (with its underlying root-index set) per
/// conjugacy class.
#[derive(Debug, Clone)]
pub struct ConjugacyClassReport {
    pub ambient: CartanType,
    pub subsystem_type: CartanType,
    pub kind: GenusKind,
    pub sigma: Genus,
    pub fiber: Vec<TupleV>,
    pub orbits: Vec<DotOrbit>,
    pub class_count: usize,
    /// For each class: the sorted root indices of the representative's
    /// underlying set, and the representative tuple itself.
    pub representatives: Vec<(Vec<usize>, TupleV)>,
    /// Number of distinct underlying sets among all fiber members.  The
    /// class count never exceeds it: members with equal underlying sets
    /// differ by a place permutation fixing the genus, hence share an
    /// orbit.
    pub distinct_sets: usize,
}

fn tuple_json(t: &TupleV) -> serde_json::Value {
    let rows: Vec<Vec<String>> = t
        .iter()
        .map(|v| v.0.iter().map(|c| c.to_string()).collect())
        .collect();
    json!(rows)
}

impl ConjugacyClassReport {
    pub fn to_json(&self) -> serde_json::Value {
        let reps: Vec<serde_json::Value> = self
            .representatives
            .iter()
            .map(|(set, tuple)| json!({ "roots": set, "tuple": tuple_json(tuple) }))
            .collect();
        let orbits: Vec<serde_json::Value> = self
            .orbits
            .iter()
            .map(|o| {
                let edges: Vec<serde_json::Value> = o
                    .edges
                    .iter()
                    .map(|e| {
                        json!({
                            "from": e.from,
                            "to": e.to,
                            "place_perm": e.place_perm.iter().map(|i| i + 1).collect::<Vec<_>>(),
                            "word": e.word.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                json!({ "representative": o.representative, "members": o.members, "edges": edges })
            })
            .collect();
        json!({
            "ambient": self.ambient.to_string(),
            "subsystem_type": self.subsystem_type.to_string(),
            "kind": match self.kind { GenusKind::Gram => "gram", GenusKind::Cartan => "cartan" },
            "sigma": self.sigma.to_json(),
            "fiber": self.fiber.iter().map(tuple_json).collect::<Vec<_>>(),
            "class_count": self.class_count,
            "distinct_sets": self.distinct_sets,
            "representatives": reps,
            "orbits": orbits,
        })
    }
}

impl fmt::Display for ConjugacyClassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "type {} in {} ({} genus): {} class(es), fiber size {}, {} underlying set(s)",
            self.subsystem_type,
            self.ambient,
            match self.kind {
                GenusKind::Gram => "Gram",
                GenusKind::Cartan => "Cartan",
            },
            self.class_count,
            self.fiber.len(),
            self.distinct_sets
        )?;
        for (c, (set, tuple)) in self.representatives.iter().enumerate() {
            write!(f, "  class {}: roots {:?}, tuple (", c + 1, set)?;
            for (k, v) in tuple.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            writeln!(f, ")")?;
        }
        Ok(())
    }
}

/// Sorted root indices of the entries of a tuple.
fn underlying_set(rs: &RootSystem, b: &[VecPi]) -> Result<Vec<usize>> {
    let mut set = diagfund::root_indices(rs, b)?;
    set.sort_unstable();
    Ok(set)
}

/// Orbits of the dot action of the given place permutations on a fiber
/// (sorted by the tuple order).  Breadth-first closure; each permutation is
/// applied to each member exactly once, and every newly reached member is
/// recorded with the witnessing permutation and reduction word.
fn dot_orbits(rs: &RootSystem, fiber: &[TupleV], auts: &[Vec<usize>]) -> Result<Vec<DotOrbit>> {
    let locate = |t: &TupleV| -> Result<usize> {
        fiber
            .binary_search_by(|u| tuple_cmp(u, t))
            .map_err(|_| Error::Invalid("dot action left the fiber; the genus is not preserved".into()))
    };
    let mut visited = vec![false; fiber.len()];
    let mut orbits = Vec::new();
    for start in 0..fiber.len() {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut members = vec![start];
        let mut edges = Vec::new();
        let mut queue = vec![start];
        while let Some(cur) = queue.pop() {
            for rho in auts {
                if rho.iter().enumerate().all(|(i, &x)| x == i) {
                    continue;
                }
                let res = diagfund::dot_action(rs, rho, &fiber[cur])?;
                let to = locate(&res.tuple)?;
                if !visited[to] {
                    visited[to] = true;
                    members.push(to);
                    edges.push(OrbitEdge {
                        from: cur,
                        to,
                        place_perm: rho.clone(),
                        word: res.word,
                    });
                    queue.push(to);
                }
            }
        }
        members.sort_unstable();
        orbits.push(DotOrbit { representative: start, members, edges });
    }
    Ok(orbits)
}

fn classify_with_sigma(
    rs: &RootSystem,
    subsystem_type: CartanType,
    sigma: Genus,
    kind: GenusKind,
) -> Result<ConjugacyClassReport> {
    let fiber = genus::enumerate_fiber(rs, &sigma, kind)?;
    let auts = genus::automorphism_group(&sigma)?;
    let orbits = dot_orbits(rs, &fiber, &auts)?;
    let mut representatives = Vec::new();
    for orbit in &orbits {
        let b = &fiber[orbit.representative];
        representatives.push((underlying_set(rs, b)?, b.clone()));
    }
    let mut sets = BTreeSet::new();
    for b in &fiber {
        sets.insert(underlying_set(rs, b)?);
    }
    let distinct_sets = sets.len();
    let class_count = orbits.len();
    debug_assert!(class_count <= distinct_sets || fiber.is_empty());
    Ok(ConjugacyClassReport {
        ambient: rs.cartan_type.clone(),
        subsystem_type,
        kind,
        sigma,
        fiber,
        orbits,
        class_count,
        representatives,
        distinct_sets,
    })
}

/// Conjugacy classes of simple subsystems of type X, computed as orbits of
/// the dot action on the fiber of the standard genus of X.  With the
/// Cartan kind this classifies by isomorphism type alone; with the Gram
/// kind it additionally fixes the root lengths — the standard Gram genus
/// normalizes every irreducible component so its long roots have squared
/// length 2, so the Gram fiber picks out the embeddings built from the
/// longest roots of each ambient component.  An empty fiber yields a
/// report with zero classes: type X does not embed.
pub fn classify_subsystems(
    rs: &RootSystem,
    x: &CartanType,
    kind: GenusKind,
) -> Result<ConjugacyClassReport> {
    let sigma = match kind {
        GenusKind::Cartan => genus::standard_genus(x)?,
        GenusKind::Gram => standard_gram_genus(x)?,
    };
    classify_with_sigma(rs, x.clone(), sigma, kind)
}

/// Classifies the fiber of an arbitrary genus σ.  The subsystem type is
/// read off from σ itself (converting a Gram matrix to its Cartan matrix
/// first), so σ must classify as a finite type.
pub fn classify_fiber_orbits(
    rs: &RootSystem,
    sigma: &Genus,
    kind: GenusKind,
) -> Result<ConjugacyClassReport> {
    let cartan = match kind {
        GenusKind::Cartan => sigma.clone(),
        GenusKind::Gram => {
            let mut m = MatRat::zero(sigma.n, sigma.n);
            for i in 0..sigma.n {
                let diag = sigma.entries.at(i, i);
                if !diag.is_positive() {
                    return Err(Error::NotAGcm("Gram genus needs positive diagonal".into()));
                }
                for j in 0..sigma.n {
                    *m.at_mut(i, j) = &(&Rat::int(2) * sigma.entries.at(i, j)) / diag;
                }
            }
            Genus::new(m)
        }
    };
    let cls = genus::classify_gcm(&cartan)
        .filter(|c| c.all_finite())
        .ok_or_else(|| Error::NotAGcm("the genus is not of finite type".into()))?;
    let mut components = Vec::new();
    for (label, _) in &cls.components {
        match label {
            DiagramLabel::Finite(f, r) => components.push((*f, *r)),
            _ => unreachable!("all_finite filtered"),
        }
    }
    classify_with_sigma(rs, CartanType { components }, sigma.clone(), kind)
}

/// Gram matrix of the standard ordered simple system of type X, normalized
/// so that within each irreducible component the long roots have squared
/// length 2 (the same convention the root system constructor uses).
pub fn standard_gram_genus(x: &CartanType) -> Result<Genus> {
    let c = genus::standard_genus(x)?;
    let mut norms = vec![Rat::zero(); c.n];
    for comp in genus::diagram_components(&c) {
        let sub = genus::submatrix(&c.entries, &comp);
        let d = genus::symmetrizer(&sub)
            .ok_or_else(|| Error::NotAGcm("standard genera are symmetrizable".into()))?;
        let dmax = d.iter().max().expect("components are nonempty").clone();
        for (pos, &i) in comp.iter().enumerate() {
            norms[i] = &(&Rat::int(2) * &d[pos]) / &dmax;
        }
    }
    let mut m = MatRat::zero(c.n, c.n);
    for i in 0..c.n {
        for j in 0..c.n {
            // ⟨β_i, β_j⟩ recovered from ⟨β_i∨, β_j⟩ by scaling with |β_i|²/2.
            *m.at_mut(i, j) = &(c.entries.at(i, j) * &norms[i]) / &Rat::int(2);
        }
    }
    let g = Genus::new(m);
    debug_assert!(g.is_symmetric());
    Ok(g)
}

/// A point of the combinatorial model for ordered type-A simple systems in
/// the fundamental domain: a dominant root β together with the ordered
/// vertex list of a path in the diagram on {β} ∪ -Π that starts at β,
/// uses only single bonds, and is induced (no chords).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PnElement {
    /// Root index of the dominant root; always equals `gamma[0]`.
    pub beta: usize,
    /// Root indices along the path, starting with β.
    pub gamma: Vec<usize>,
}

/// Enumerates the type-A model by inspecting, for each dominant root β,
/// the diagram on the vertex set {β} ∪ -Π: every induced single-bond path
/// of n vertices starting at β contributes one element.  The result is
/// cross-checked to be in bijection with the fiber of the type-A chain
/// genus under b ↦ (first entry, entry list) whenever that fiber is within
/// the search bound.
pub fn type_a_pn(rs: &RootSystem, n: usize) -> Result<Vec<PnElement>> {
    if n == 0 {
        return Err(Error::Invalid("the type-A model needs n ≥ 1".into()));
    }
    let neg_simple: Vec<usize> =
        (0..rs.rank).map(|i| rs.negate_root(rs.simple_loc[i])).collect();
    let single_bond = |u: usize, v: usize| {
        rs.coroot_pairing(u, &rs.roots[v]) == Rat::int(-1)
            && rs.coroot_pairing(v, &rs.roots[u]) == Rat::int(-1)
    };
    let orthogonal = |u: usize, v: usize| rs.pairing(&rs.roots[u], &rs.roots[v]).is_zero();

    fn extend(
        rs: &RootSystem,
        neg_simple: &[usize],
        single_bond: &dyn Fn(usize, usize) -> bool,
        orthogonal: &dyn Fn(usize, usize) -> bool,
        path: &mut Vec<usize>,
        used: &mut [bool],
        n: usize,
        out: &mut Vec<PnElement>,
    ) {
        if path.len() == n {
            out.push(PnElement { beta: path[0], gamma: path.clone() });
            return;
        }
        let last = *path.last().expect("path starts nonempty");
        for i in 0..rs.rank {
            if used[i] || !single_bond(last, neg_simple[i]) {
                continue;
            }
            if path[..path.len() - 1].iter().any(|&u| !orthogonal(u, neg_simple[i])) {
                continue;
            }
            used[i] = true;
            path.push(neg_simple[i]);
            extend(rs, neg_simple, single_bond, orthogonal, path, used, n, out);
            path.pop();
            used[i] = false;
        }
    }

    let mut out = Vec::new();
    for beta in chamber::dominant_roots(rs) {
        let mut path = vec![beta];
        let mut used = vec![false; rs.rank];
        extend(rs, &neg_simple, &single_bond, &orthogonal, &mut path, &mut used, n, &mut out);
    }
    out.sort();

    if n <= genus::FIBER_RANK_BOUND {
        let sigma = Genus::new(genus::a_chain_matrix(n));
        let fiber = genus::enumerate_fiber(rs, &sigma, GenusKind::Cartan)?;
        let mut from_fiber = Vec::with_capacity(fiber.len());
        for b in &fiber {
            let gamma = diagfund::root_indices(rs, b)?;
            from_fiber.push(PnElement { beta: gamma[0], gamma });
        }
        from_fiber.sort();
        if from_fiber != out {
            return Err(Error::Invalid(
                "type-A model disagrees with the chain-genus fiber".into(),
            ));
        }
    }
    Ok(out)
}

/// Conjugacy classes of type-A_n simple subsystems, computed from the
/// combinatorial model: the two-element group generated by the ambient
/// diagram automorphism ρ = -ω₀ acts entrywise on the model (fixing every
/// dominant root), and classes correspond to its orbits.  Each nontrivial
/// orbit is certified by a dot action of the order-reversing place
/// permutation, whose canonical representative must coincide with the
/// entrywise ρ-image.
pub fn type_a_classes(rs: &RootSystem, n: usize) -> Result<ConjugacyClassReport> {
    let pn = type_a_pn(rs, n)?;
    let (w0, _) = rs.longest_element(Parabolic::full(rs.rank));
    let rho_idx: Vec<usize> =
        (0..rs.num_roots()).map(|k| rs.negate_root(w0.root_image(k))).collect();

    let mut items: Vec<(TupleV, PnElement)> = pn
        .iter()
        .map(|p| {
            let tuple: TupleV = p.gamma.iter().map(|&k| rs.roots[k].clone()).collect();
            (tuple, p.clone())
        })
        .collect();
    items.sort_by(|a, b| tuple_cmp(&a.0, &b.0));
    let fiber: Vec<TupleV> = items.iter().map(|x| x.0.clone()).collect();

    let theta: Vec<usize> = (0..n).rev().collect();
    let mut visited = vec![false; items.len()];
    let mut orbits = Vec::new();
    for i in 0..items.len() {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let p = &items[i].1;
        if rho_idx[p.beta] != p.beta {
            return Err(Error::Invalid(
                "the ambient diagram automorphism moved a dominant root".into(),
            ));
        }
        let image = PnElement {
            beta: rho_idx[p.beta],
            gamma: p.gamma.iter().map(|&k| rho_idx[k]).collect(),
        };
        let j = items
            .iter()
            .position(|x| x.1 == image)
            .ok_or_else(|| Error::Invalid("entrywise ρ left the type-A model".into()))?;
        let res = diagfund::dot_action(rs, &theta, &fiber[i])?;
        if tuple_cmp(&res.tuple, &fiber[j]) != Ordering::Equal {
            return Err(Error::Invalid(
                "reversal dot action disagrees with the entrywise diagram automorphism".into(),
            ));
        }
        let mut members = vec![i];
        let mut edges = Vec::new();
        if j != i {
            visited[j] = true;
            members.push(j);
            edges.push(OrbitEdge { from: i, to: j, place_perm: theta.clone(), word: res.word });
        }
        members.sort_unstable();
        orbits.push(DotOrbit { representative: i, members, edges });
    }

    let mut representatives = Vec::new();
    for orbit in &orbits {
        let b = &fiber[orbit.representative];
        representatives.push((underlying_set(rs, b)?, b.clone()));
    }
    let mut sets = BTreeSet::new();
    for b in &fiber {
        sets.insert(underlying_set(rs, b)?);
    }
    let class_count = orbits.len();
    Ok(ConjugacyClassReport {
        ambient: rs.cartan_type.clone(),
        subsystem_type: CartanType { components: vec![(Family::A, n)] },
        kind: GenusKind::Cartan,
        sigma: Genus::new(genus::a_chain_matrix(n)),
        fiber,
        orbits,
        class_count,
        representatives,
        distinct_sets: sets.len(),
    })
}

/// Connected components of the pairing diagram on a set of roots, ordered
/// by first occurrence; members keep their input order.
fn components_of_roots(rs: &RootSystem, gamma: &[usize]) -> Vec<Vec<usize>> {
    let m = gamma.len();
    let mut seen = vec![false; m];
    let mut comps = Vec::new();
    for s in 0..m {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = vec![s];
        while let Some(i) = queue.pop() {
            for j in 0..m {
                if !seen[j]
                    && !rs.pairing(&rs.roots[gamma[i]], &rs.roots[gamma[j]]).is_zero()
                {
                    seen[j] = true;
                    comp.push(j);
                    queue.push(j);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp.into_iter().map(|i| gamma[i]).collect());
    }
    comps
}

/// A maximal set of mutually orthogonal roots of one squared length,
/// produced by the greedy tower construction.
#[derive(Debug, Clone)]
pub struct OrthogonalA1Report {
    pub l2: Rat,
    pub n_max: usize,
    /// Root indices of the tower, in the order they were chosen.
    pub tower: Vec<usize>,
}

/// Builds a maximal orthogonal system of roots of squared length `l2` by
/// the greedy tower: repeatedly take the dominant root of that length in
/// the first component of the current simple system that still contains
/// one, then restrict the simple system to the members orthogonal to it.
/// The resulting set is verified to be orthogonal and inclusion-maximal;
/// all such maximal sets are conjugate, so `n_max` is an invariant of
/// (Φ, l2).
pub fn maximal_orthogonal_a1(
    rs: &RootSystem,
    l2: &Rat,
) -> Result<(usize, OrthogonalA1Report)> {
    if !rs.norms.iter().any(|n| n == l2) {
        return Err(Error::Invalid(format!("no roots of squared length {l2}")));
    }
    let mut gamma: Vec<usize> = (0..rs.rank).map(|i| rs.simple_loc[i]).collect();
    let mut tower: Vec<usize> = Vec::new();
    loop {
        let mut next = None;
        for comp in components_of_roots(rs, &gamma) {
            let sub = rs.subsystem_roots(&comp);
            let doms: Vec<usize> = sub
                .into_iter()
                .filter(|&k| {
                    &rs.norms[k] == l2
                        && comp
                            .iter()
                            .all(|&g| !rs.pairing(&rs.roots[g], &rs.roots[k]).is_negative())
                })
                .collect();
            if !doms.is_empty() {
                if doms.len() != 1 {
                    return Err(Error::Invalid(
                        "an irreducible subsystem has one dominant root per length".into(),
                    ));
                }
                next = Some(doms[0]);
                break;
            }
        }
        let Some(beta) = next else { break };
        // Affine-diagram deletion: the simple roots attached to β go away,
        // the orthogonal ones carry on as the next simple system.
        gamma.retain(|&g| rs.pairing(&rs.roots[g], &rs.roots[beta]).is_zero());
        tower.push(beta);
    }
    for (i, &a) in tower.iter().enumerate() {
        for &b in &tower[..i] {
            assert!(
                rs.pairing(&rs.roots[a], &rs.roots[b]).is_zero(),
                "tower members must be orthogonal"
            );
        }
    }
    let maximal = (0..rs.num_roots()).all(|k| {
        &rs.norms[k] != l2
            || tower
                .iter()
                .any(|&t| !rs.pairing(&rs.roots[t], &rs.roots[k]).is_zero())
    });
    assert!(maximal, "the tower must not extend by another orthogonal root");
    let n_max = tower.len();
    Ok((n_max, OrthogonalA1Report { l2: l2.clone(), n_max, tower }))
}

/// Partitions unordered root-index sets into orbits of the diagonal Weyl
/// group action, by full group enumeration.  Returns the partition as
/// lists of input positions, ordered by first occurrence.  Ground truth
/// for the classification: two sets land in one part iff they are
/// W-conjugate.
pub fn oracle_orbits_of_sets(
    rs: &RootSystem,
    sets: &[Vec<usize>],
    limit: u128,
) -> Result<Vec<Vec<usize>>> {
    if sets.is_empty() {
        return Ok(Vec::new());
    }
    for s in sets {
        for &k in s {
            if k >= rs.num_roots() {
                return Err(Error::NotARoot(format!("index {k}")));
            }
        }
    }
    let group = rs.enumerate_group(limit)?;
    let mut parts: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        let mut sorted = s.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let mut best: Option<Vec<usize>> = None;
        for w in &group {
            let mut img: Vec<usize> = sorted.iter().map(|&k| w.root_image(k)).collect();
            img.sort_unstable();
            if best.as_ref().map_or(true, |b| img < *b) {
                best = Some(img);
            }
        }
        let canon = best.expect("the group contains the identity");
        match parts.iter_mut().find(|(key, _)| *key == canon) {
            Some((_, members)) => members.push(i),
            None => parts.push((canon, vec![i])),
        }
    }
    Ok(parts.into_iter().map(|(_, members)| members).collect())
}

fn normalized_components(x: &CartanType) -> Vec<(Family, usize)> {
    let mut v: Vec<(Family, usize)> = x
        .components
        .iter()
        .map(|&(f, r)| if f == Family::C && r == 2 { (Family::B, 2) } else { (f, r) })
        .collect();
    v.sort();
    v
}

/// Every simple subsystem of Φ of isomorphism type X, enumerated by
/// backtracking over pairwise non-positive root sets (a simple system is
/// exactly such a set whose Cartan matrix classifies as a finite type, so
/// the non-positivity prune loses nothing).  Returned as sorted root-index
/// sets in lexicographic order.
pub fn oracle_simple_subsystems_of_type(rs: &RootSystem, x: &CartanType) -> Vec<Vec<usize>> {
    let m = x.rank();
    let target = normalized_components(x);

    fn extend(
        rs: &RootSystem,
        from: usize,
        m: usize,
        target: &[(Family, usize)],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == m {
            let tuple: TupleV = cur.iter().map(|&k| rs.roots[k].clone()).collect();
            let Ok(cartan) = genus::cartan_genus(rs, &tuple) else { return };
            let Some(cls) = genus::classify_gcm(&cartan) else { return };
            if !cls.all_finite() {
                return;
            }
            let mut labels: Vec<(Family, usize)> = Vec::new();
            for (label, _) in &cls.components {
                match label {
                    DiagramLabel::Finite(f, r) => labels.push((*f, *r)),
                    _ => return,
                }
            }
            labels.sort();
            if labels == target {
                out.push(cur.clone());
            }
            return;
        }
        for k in from..rs.num_roots() {
            if cur
                .iter()
                .all(|&c| !rs.pairing(&rs.roots[c], &rs.roots[k]).is_positive())
            {
                cur.push(k);
                extend(rs, k + 1, m, target, cur, out);
                cur.pop();
            }
        }
    }

    let mut out = Vec::new();
    let mut cur = Vec::new();
    extend(rs, 0, m, &target, &mut cur, &mut out);
    out
}

/// One pattern group whose chamber intersection came out larger than one:
/// the witness that the orbit-pinning property would fail if the scan did
/// not require some coefficient to be nonzero.
#[derive(Debug, Clone)]
pub struct OshimaViolation {
    /// Simple-root indices of Δ.
    pub delta: Vec<usize>,
    pub norm: Rat,
    /// Coefficients on the Δ-positions shared by the whole group.
    pub coeffs: Vec<Rat>,
    /// Roots of the group lying in the chamber of W_{Π∖Δ}.
    pub chamber_members: Vec<usize>,
}

/// Outcome of the orbit-pinning scan.
#[derive(Debug, Clone)]
pub struct OshimaReport {
    pub patterns_checked: usize,
    pub skipped_all_zero: usize,
    pub violations: Vec<OshimaViolation>,
}

impl OshimaReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "patterns_checked": self.patterns_checked,
            "skipped_all_zero": self.skipped_all_zero,
            "pass": self.pass(),
            "violations": self.violations.iter().map(|v| json!({
                "delta": v.delta.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "norm": v.norm.to_string(),
                "coeffs": v.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "chamber_members": v.chamber_members,
            })).collect::<Vec<_>>(),
        })
    }
}

/// The orbit-pinning property behind canonicalization: fix Δ ⊆ Π, a root
/// length, and the coefficients over Δ (not all zero when Δ ≠ ∅).  The
/// roots matching all three form a single W_{Π∖Δ}-orbit if nonempty —
/// equivalently, at most one of them lies in the chamber of W_{Π∖Δ}.
/// This scans every Δ and every realized pattern of an irreducible
/// system and reports any group meeting the chamber more than once.
/// All-zero patterns are excluded because they genuinely fail: roots
/// supported away from Δ come in several W_{Π∖Δ}-orbits.
pub fn check_oshima(rs: &RootSystem) -> Result<OshimaReport> {
    oshima_scan(rs, true)
}

fn oshima_scan(rs: &RootSystem, skip_all_zero: bool) -> Result<OshimaReport> {
    if !rs.cartan_type.is_irreducible() {
        return Err(Error::Invalid(
            "the orbit-pinning scan is stated for irreducible systems".into(),
        ));
    }
    let full = Parabolic::full(rs.rank);
    let mut patterns_checked = 0;
    let mut skipped_all_zero = 0;
    let mut violations = Vec::new();
    for delta in full.subsets() {
        let delta_idx: Vec<usize> = delta.iter().collect();
        let mut groups: BTreeMap<(Rat, Vec<Rat>), Vec<usize>> = BTreeMap::new();
        for k in 0..rs.num_roots() {
            let coeffs: Vec<Rat> =
                delta_idx.iter().map(|&i| rs.roots[k].0[i].clone()).collect();
            groups
                .entry((rs.norms[k].clone(), coeffs))
                .or_default()
                .push(k);
        }
        for ((norm, coeffs), members) in groups {
            if skip_all_zero && !delta_idx.is_empty() && coeffs.iter().all(|c| c.is_zero()) {
                skipped_all_zero += 1;
                continue;
            }
            patterns_checked += 1;
            let chamber_members: Vec<usize> = members
                .into_iter()
                .filter(|&k| {
                    let pair = rs.simple_pairings(&rs.roots[k]);
                    (0..rs.rank).all(|j| delta.contains(j) || !pair[j].is_negative())
                })
                .collect();
            if chamber_members.len() > 1 {
                violations.push(OshimaViolation {
                    delta: delta_idx.clone(),
                    norm,
                    coeffs,
                    chamber_members,
                });
            }
        }
    }
    Ok(OshimaReport { patterns_checked, skipped_all_zero, violations })
}

/// Outcome of the component-splitting consistency check.
#[derive(Debug, Clone)]
pub struct SimpconReport {
    /// Tuples supported on a union of components, double-checked against
    /// the fundamental domain of that union's parabolic.
    pub component_samples: usize,
    /// Orthogonally split tuples checked against the two-factor criterion.
    pub split_samples: usize,
    pub pass: bool,
    pub disagreement: Option<String>,
}

impl SimpconReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "component_samples": self.component_samples,
            "split_samples": self.split_samples,
            "pass": self.pass,
            "disagreement": self.disagreement,
        })
    }
}

/// Checks, on seeded random samples in a reducible system, that membership
/// in the fundamental domain interacts with the component structure as it
/// must: (a) for a tuple supported on a union Ψ of components, membership
/// for W and for W_Ψ coincide; (b) for a tuple split as a ⌢ a′′ with the
/// head a′ connected in sequence inside one component Ψ and the tail
/// orthogonal to the head, membership is equivalent to the head lying in
/// the W_Ψ-domain and the tail in the domain of the head's stabilizer;
/// (c) in the split case, the underlying set is a simple subsystem iff
/// both pieces are.
pub fn verify_simpcon(rs: &RootSystem, samples: usize, seed: u64) -> Result<SimpconReport> {
    if rs.cartan_type.is_irreducible() {
        return Err(Error::Invalid(
            "the component-splitting check needs a reducible ambient system".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ncomp = rs.cartan_type.components.len();
    let full = Parabolic::full(rs.rank);
    let mut comp_roots: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for k in 0..rs.num_roots() {
        comp_roots[rs.component_of_root[k]].push(k);
    }
    let comp_mask = |c: usize| {
        Parabolic::from_indices((0..rs.rank).filter(|&i| rs.component_of_simple[i] == c))
    };

    let mut component_samples = 0;
    let mut split_samples = 0;
    let mut disagreement: Option<String> = None;

    for _ in 0..samples {
        let pick: u32 = rng.gen_range(1..(1u32 << ncomp));
        let comps: Vec<usize> = (0..ncomp).filter(|&c| pick >> c & 1 == 1).collect();
        let psi = comps
            .iter()
            .fold(Parabolic::empty(), |acc, &c| Parabolic(acc.0 | comp_mask(c).0));
        let n = rng.gen_range(1..=3);
        let t: TupleV = (0..n)
            .map(|_| {
                let c = comps[rng.gen_range(0..comps.len())];
                let roots = &comp_roots[c];
                rs.roots[roots[rng.gen_range(0..roots.len())]].clone()
            })
            .collect();
        component_samples += 1;
        let lhs = diagfund::is_in_fund(rs, &t);
        let rhs = diagfund::is_in_fund_from(rs, psi, &t);
        if lhs != rhs {
            disagreement = Some(format!(
                "component-supported tuple: full domain {lhs}, parabolic domain {rhs}"
            ));
            break;
        }
    }

    if disagreement.is_none() {
        for _ in 0..samples {
            let c = rng.gen_range(0..ncomp);
            let roots = &comp_roots[c];
            let m = rng.gen_range(1..=2);
            let mut head: Vec<usize> = vec![roots[rng.gen_range(0..roots.len())]];
            if m == 2 {
                let cands: Vec<usize> = roots
                    .iter()
                    .copied()
                    .filter(|&k| !rs.pairing(&rs.roots[k], &rs.roots[head[0]]).is_zero())
                    .collect();
                head.push(cands[rng.gen_range(0..cands.len())]);
            }
            let orth: Vec<usize> = (0..rs.num_roots())
                .filter(|&k| {
                    head.iter()
                        .all(|&a| rs.pairing(&rs.roots[k], &rs.roots[a]).is_zero())
                })
                .collect();
            if orth.is_empty() {
                continue;
            }
            let q = rng.gen_range(1..=2);
            let tail: Vec<usize> = (0..q).map(|_| orth[rng.gen_range(0..orth.len())]).collect();

            let head_t: TupleV = head.iter().map(|&k| rs.roots[k].clone()).collect();
            let tail_t: TupleV = tail.iter().map(|&k| rs.roots[k].clone()).collect();
            let whole_t: TupleV = head_t.iter().chain(tail_t.iter()).cloned().collect();
            let psi = comp_mask(c);

            split_samples += 1;
            let lhs = diagfund::is_in_fund(rs, &whole_t);
            let rhs = match diagfund::fund_chain_from(rs, psi, &head_t) {
                None => false,
                Some(chain) => {
                    let stab = *chain.last().expect("chains start at the base parabolic");
                    let mask = Parabolic(stab.0 | (full.0 & !psi.0));
                    diagfund::is_in_fund_from(rs, mask, &tail_t)
                }
            };
            if lhs != rhs {
                disagreement = Some(format!(
                    "split tuple: full domain {lhs}, factored criterion {rhs}"
                ));
                break;
            }

            let mut whole_idx = head.clone();
            whole_idx.extend(&tail);
            let sub_whole = genus::is_simple_subsystem(rs, &whole_idx);
            let sub_parts = genus::is_simple_subsystem(rs, &head)
                && genus::is_simple_subsystem(rs, &tail);
            if sub_whole != sub_parts {
                disagreement = Some(format!(
                    "split simplicity: whole {sub_whole}, factors {sub_parts}"
                ));
                break;
            }
        }
    }

    Ok(SimpconReport {
        component_samples,
        split_samples,
        pass: disagreement.is_none(),
        disagreement,
    })
}
