//! Acceptance suite: thirteen end-to-end criteria, each printed as a single
//! pass/fail line (run with `--nocapture` to see them).  Every criterion
//! checks library output against an independent computation — a full orbit
//! scan, a brute-force enumeration, or a hand-constructed expected value.

use std::collections::BTreeSet;

use once_cell::sync::Lazy;
use rand::prelude::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rootfund::chamber::dominant_roots;
use rootfund::classify::{
    check_oshima, classify_subsystems, maximal_orthogonal_a1, oracle_orbits_of_sets,
    oracle_simple_subsystems_of_type, type_a_classes,
};
use rootfund::diagfund::{
    canonicalize, diagram_rho_image, dot_action, is_in_fund, lex_max_oracle, permute_places,
    subsystem_rho_image, tuple_cmp, TupleV,
};
use rootfund::exact::{MatRat, Rat, VecPi};
use rootfund::genus::{
    enumerate_fiber, gram_genus, parabolic_dominant_root, standard_genus, ExtendBy, GenusKind,
};
use rootfund::rootsys::{build, CartanType, Parabolic, RootSystem, DEFAULT_GROUP_LIMIT};
use rootfund::strata::{
    closure_contains, closure_labels_by_recursion, enumerate_strata, euler_characteristic,
    face_poset, sphere_euler, verify_solomon, verify_solomon_power, word_string,
};

const LIMIT: u128 = DEFAULT_GROUP_LIMIT;

fn rs(name: &str) -> RootSystem {
    build(&CartanType::parse(name).unwrap()).unwrap()
}

fn report(number: u32, name: &str, outcome: Result<(), String>) {
    match outcome {
        Ok(()) => println!("criterion {number:02} ({name}): pass"),
        Err(detail) => {
            println!("criterion {number:02} ({name}): FAIL");
            panic!("criterion {number:02} ({name}): {detail}");
        }
    }
}

/// Shared random-tuple corpus for the first three criteria: per ambient,
/// 200 tuples with n cycling through 1..3 and entries in [-4, 4] with
/// denominators up to 3, plus the enumerated group and its matrices.
struct Corpus {
    rs: RootSystem,
    mats: Vec<MatRat>,
    tuples: Vec<TupleV>,
}

static CORPUS: Lazy<Vec<Corpus>> = Lazy::new(|| {
    let mut rng = ChaCha8Rng::seed_from_u64(0xac5e);
    ["A1", "A2", "A3", "B2", "B3", "G2", "D4"]
        .iter()
        .map(|name| {
            let r = rs(name);
            let group = r.enumerate_group(LIMIT).unwrap();
            let mats: Vec<MatRat> = group.iter().map(|w| w.matrix(&r)).collect();
            let tuples: Vec<TupleV> = (0..200)
                .map(|i| {
                    let n = i % 3 + 1;
                    (0..n)
                        .map(|_| {
                            VecPi(
                                (0..r.rank)
                                    .map(|_| {
                                        Rat::new(rng.gen_range(-4..=4), rng.gen_range(1..=3))
                                            .unwrap()
                                    })
                                    .collect(),
                            )
                        })
                        .collect()
                })
                .collect();
            Corpus { rs: r, mats, tuples }
        })
        .collect()
});

fn apply_tuple(m: &MatRat, t: &[VecPi]) -> TupleV {
    t.iter().map(|v| m.mul_vec(v)).collect()
}

#[test]
fn criterion_01_every_orbit_meets_the_fundamental_domain_once() {
    let outcome = (|| {
        for c in CORPUS.iter() {
            for t in &c.tuples {
                let canonical = canonicalize(&c.rs, t).canonical;
                let mut found: Vec<TupleV> = Vec::new();
                for m in &c.mats {
                    let img = apply_tuple(m, t);
                    if is_in_fund(&c.rs, &img) && !found.contains(&img) {
                        found.push(img);
                    }
                }
                if found.len() != 1 {
                    return Err(format!(
                        "{}: orbit of a random tuple meets the domain {} times",
                        c.rs.cartan_type,
                        found.len()
                    ));
                }
                if found[0] != canonical {
                    return Err(format!(
                        "{}: canonicalize output differs from the orbit scan",
                        c.rs.cartan_type
                    ));
                }
            }
        }
        Ok(())
    })();
    report(1, "fundamental-domain uniqueness", outcome);
}

#[test]
fn criterion_02_canonicalization_is_the_lex_max_orbit_point() {
    let outcome = (|| {
        for c in CORPUS.iter() {
            for t in &c.tuples {
                let fast = canonicalize(&c.rs, t).canonical;
                let slow = lex_max_oracle(&c.rs, t, LIMIT).map_err(|e| e.to_string())?;
                if tuple_cmp(&fast, &slow) != std::cmp::Ordering::Equal {
                    return Err(format!(
                        "{}: canonicalize disagrees with the lex-max oracle",
                        c.rs.cartan_type
                    ));
                }
            }
        }
        Ok(())
    })();
    report(2, "lex-max characterization", outcome);
}

#[test]
fn criterion_03_stabilizers_are_the_terminal_parabolics() {
    let outcome = (|| {
        for c in CORPUS.iter() {
            let group = c.rs.enumerate_group(LIMIT).map_err(|e| e.to_string())?;
            for t in &c.tuples {
                let res = canonicalize(&c.rs, t);
                let i_n = *res.chain.last().expect("chain has n + 1 terms");
                let mut stab_t = 0usize;
                let mut stab_b = 0usize;
                for (w, m) in group.iter().zip(&c.mats) {
                    if apply_tuple(m, t) == *t {
                        stab_t += 1;
                    }
                    let fixes = apply_tuple(m, &res.canonical) == res.canonical;
                    if fixes {
                        stab_b += 1;
                    }
                    if fixes != c.rs.in_standard_parabolic(w, i_n) {
                        return Err(format!(
                            "{}: the stabilizer of a canonical tuple is not W_In",
                            c.rs.cartan_type
                        ));
                    }
                }
                if stab_t != stab_b {
                    return Err(format!(
                        "{}: stabilizer orders differ along the orbit",
                        c.rs.cartan_type
                    ));
                }
            }
        }
        Ok(())
    })();
    report(3, "stabilizer identification", outcome);
}

#[test]
fn criterion_04_rank_one_strata_count_and_hasse_diagram() {
    let outcome = (|| {
        let a1 = rs("A1");
        for n in 1..=6 {
            let labels = enumerate_strata(&a1, n, LIMIT).map_err(|e| e.to_string())?;
            if labels.len() != 2 * n + 1 {
                return Err(format!("A1 n = {n}: {} strata, expected {}", labels.len(), 2 * n + 1));
            }
        }
        let poset = face_poset(&a1, 2, LIMIT).map_err(|e| e.to_string())?;
        if poset.len() != 5 {
            return Err(format!("A1 n = 2 poset has {} nodes", poset.len()));
        }
        let find = |word: &str, masks: &[u32]| -> Result<usize, String> {
            poset
                .labels
                .iter()
                .position(|l| {
                    word_string(&a1, &l.w) == word
                        && l.seq.0.iter().map(|p| p.0).collect::<Vec<u32>>() == masks
                })
                .ok_or_else(|| format!("missing stratum w = {word}, I = {masks:?}"))
        };
        let half_pos = find("e", &[1, 0, 0])?;
        let half_neg = find("1", &[1, 0, 0])?;
        let ray_pos = find("e", &[1, 1, 0])?;
        let ray_neg = find("1", &[1, 1, 0])?;
        let origin = find("e", &[1, 1, 1])?;
        for (node, dim) in [(half_pos, 2), (half_neg, 2), (ray_pos, 1), (ray_neg, 1), (origin, 0)]
        {
            if poset.dims[node] != dim {
                return Err(format!("node {node} has dimension {}", poset.dims[node]));
            }
        }
        let got: BTreeSet<(usize, usize)> = poset.covers.iter().copied().collect();
        let expected: BTreeSet<(usize, usize)> = [
            (origin, ray_pos),
            (origin, ray_neg),
            (ray_pos, half_pos),
            (ray_pos, half_neg),
            (ray_neg, half_pos),
            (ray_neg, half_neg),
        ]
        .into_iter()
        .collect();
        if got != expected {
            return Err(format!("cover relation differs: {got:?} vs {expected:?}"));
        }
        if poset.minimum != origin {
            return Err("the minimum stratum is not the origin".into());
        }
        Ok(())
    })();
    report(4, "rank-one strata catalog", outcome);
}

#[test]
fn criterion_05_sign_closure_agrees_with_the_recursion() {
    let outcome = (|| {
        for (name, n_max) in [("A1", 3), ("A2", 2), ("B2", 2)] {
            let r = rs(name);
            for n in 1..=n_max {
                let labels = enumerate_strata(&r, n, LIMIT).map_err(|e| e.to_string())?;
                for f in &labels {
                    let closure =
                        closure_labels_by_recursion(&r, f, LIMIT).map_err(|e| e.to_string())?;
                    for g in &labels {
                        let by_signs = closure_contains(&r, f, g).map_err(|e| e.to_string())?;
                        if by_signs != closure.contains(g) {
                            return Err(format!(
                                "{name} n = {n}: the closure criteria disagree on a pair"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    })();
    report(5, "closure consistency", outcome);
}

#[test]
fn criterion_06_alternating_sum_is_the_sphere_euler_characteristic() {
    let outcome = (|| {
        for (name, n_max) in [("A1", 4), ("A2", 2), ("B2", 2), ("A3", 1)] {
            let r = rs(name);
            for n in 1..=n_max {
                let chi = euler_characteristic(&r, n, LIMIT).map_err(|e| e.to_string())?;
                let expected = if (n * r.rank - 1) % 2 == 0 { 2 } else { 0 };
                if chi != expected || chi != sphere_euler(&r, n) {
                    return Err(format!("{name} n = {n}: χ = {chi}, expected {expected}"));
                }
            }
        }
        Ok(())
    })();
    report(6, "sphere Euler characteristic", outcome);
}

#[test]
fn criterion_07_character_identities_over_the_full_group() {
    let outcome = (|| {
        let all = [
            "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4", "A1xA1",
            "A2xA1",
        ];
        for name in all {
            let r = rs(name);
            let rep = verify_solomon(&r, LIMIT).map_err(|e| e.to_string())?;
            if !rep.pass {
                return Err(format!(
                    "{name}: determinant identity fails: {:?}",
                    rep.first_failure
                ));
            }
        }
        for name in ["A1", "A2", "B2", "A3"] {
            let r = rs(name);
            for n in 1..=3 {
                let rep = verify_solomon_power(&r, n, LIMIT).map_err(|e| e.to_string())?;
                if !rep.pass || rep.collapse_pass != Some(true) {
                    return Err(format!("{name} n = {n}: power identity fails"));
                }
            }
        }
        Ok(())
    })();
    report(7, "character identities", outcome);
}

#[test]
fn criterion_08_type_a_fibers_are_dominant_plus_negative_simples() {
    let outcome = (|| {
        let ambients = [
            "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B5", "C3", "C4", "C5", "D4", "D5",
            "G2", "F4",
        ];
        for name in ambients {
            let r = rs(name);
            let dominant: BTreeSet<usize> = dominant_roots(&r).into_iter().collect();
            let neg_simple: BTreeSet<usize> =
                r.simple_loc.iter().map(|&k| r.negate_root(k)).collect();
            for n in 1..=4usize {
                let sigma =
                    standard_genus(&CartanType::parse(&format!("A{n}")).unwrap()).unwrap();
                let fiber =
                    enumerate_fiber(&r, &sigma, GenusKind::Cartan).map_err(|e| e.to_string())?;
                for b in &fiber {
                    let idx: Vec<usize> = b
                        .iter()
                        .map(|v| r.root_index(v).ok_or_else(|| "fiber entry is not a root"))
                        .collect::<Result<_, _>>()?;
                    if !dominant.contains(&idx[0]) {
                        return Err(format!("{name} n = {n}: first entry is not dominant"));
                    }
                    if idx[1..].iter().any(|k| !neg_simple.contains(k)) {
                        return Err(format!(
                            "{name} n = {n}: a tail entry is not a negative simple root"
                        ));
                    }
                }
            }
        }
        Ok(())
    })();
    report(8, "type-A fiber shape", outcome);
}

#[test]
fn criterion_09_path_model_counts_match_the_conjugacy_oracle() {
    let outcome = (|| {
        for name in ["A4", "B3", "B4", "D4", "F4"] {
            let r = rs(name);
            for n in 1..=4usize {
                let classes =
                    type_a_classes(&r, n).map_err(|e| e.to_string())?.class_count;
                let x = CartanType::parse(&format!("A{n}")).unwrap();
                let sets = oracle_simple_subsystems_of_type(&r, &x);
                let orbits = oracle_orbits_of_sets(&r, &sets, LIMIT)
                    .map_err(|e| e.to_string())?
                    .len();
                if classes != orbits {
                    return Err(format!(
                        "{name} n = {n}: |P_n/H| = {classes} but the oracle finds {orbits}"
                    ));
                }
            }
        }
        Ok(())
    })();
    report(9, "type-A classes vs oracle", outcome);
}

#[test]
fn criterion_10_worked_type_b_classification_examples() {
    let outcome = (|| {
        // Singleton fibers for B_m inside B_n: (highest long root, -a_2, ...,
        // -a_{m-1}, -(highest short root of the parabolic on a_m..a_n)).
        for n in 3..=5usize {
            let r = rs(&format!("B{n}"));
            let theta =
                parabolic_dominant_root(&r, Parabolic::full(r.rank), ExtendBy::Long).unwrap();
            for m in 3..=n {
                let sigma = standard_genus(&CartanType::parse(&format!("B{m}")).unwrap()).unwrap();
                let fiber =
                    enumerate_fiber(&r, &sigma, GenusKind::Cartan).map_err(|e| e.to_string())?;
                let mut expected = vec![theta.clone()];
                for i in 1..m - 1 {
                    expected.push(r.roots[r.simple_loc[i]].neg());
                }
                let tail = parabolic_dominant_root(
                    &r,
                    Parabolic::from_indices(m - 1..n),
                    ExtendBy::Short,
                )
                .unwrap();
                expected.push(tail.neg());
                if fiber != vec![expected] {
                    return Err(format!("B{m} fiber in B{n} is not the stated singleton"));
                }
            }
        }

        // The three-element D4 fiber in B5 and its dot-action table.
        let b5 = rs("B5");
        let theta =
            parabolic_dominant_root(&b5, Parabolic::full(5), ExtendBy::Long).unwrap();
        let neg = |i: usize| b5.roots[b5.simple_loc[i]].neg();
        let long_tail =
            parabolic_dominant_root(&b5, Parabolic::from_indices(2..5), ExtendBy::Long)
                .unwrap()
                .neg();
        let b4 = vec![theta.clone(), neg(1), neg(2), long_tail];
        let d1 = vec![theta.clone(), neg(1), neg(0), neg(2)];
        let d3 = vec![theta.clone(), neg(1), neg(2), neg(0)];
        let sigma_d4 = standard_genus(&CartanType::parse("D4").unwrap()).unwrap();
        let fiber =
            enumerate_fiber(&b5, &sigma_d4, GenusKind::Cartan).map_err(|e| e.to_string())?;
        let mut want = vec![b4.clone(), d1.clone(), d3.clone()];
        want.sort_by(|a, b| tuple_cmp(a, b));
        if fiber != want {
            return Err("the D4 fiber in B5 is not {b4, d1, d3}".into());
        }
        let swap34 = [0usize, 1, 3, 2];
        let swap13 = [2usize, 1, 0, 3];
        let dot = |p: &[usize], t: &TupleV| dot_action(&b5, p, t).unwrap().tuple;
        if dot(&swap34, &d1) != d3
            || dot(&swap34, &b4) != b4
            || dot(&swap13, &d3) != b4
            || dot(&swap13, &d1) != d1
        {
            return Err("a dot relation on the D4 fiber differs from the worked table".into());
        }

        // Unique D_m classes for 4 <= m <= 5 in B5.
        for m in 4..=5 {
            let x = CartanType::parse(&format!("D{m}")).unwrap();
            let rep =
                classify_subsystems(&b5, &x, GenusKind::Cartan).map_err(|e| e.to_string())?;
            if rep.class_count != 1 {
                return Err(format!("D{m} in B5: {} classes, expected 1", rep.class_count));
            }
        }
        Ok(())
    })();
    report(10, "worked classification examples", outcome);
}

#[test]
fn criterion_11_maximal_orthogonal_sets_form_one_class_per_length() {
    let outcome = (|| {
        for name in ["B3", "C3", "D4", "F4"] {
            let r = rs(name);
            let lengths: BTreeSet<Rat> = r.norms.iter().cloned().collect();
            for l2 in lengths {
                let candidates: Vec<usize> = (0..r.num_roots())
                    .filter(|&k| r.is_positive(k) && r.norms[k] == l2)
                    .collect();
                let orthogonal = |a: usize, b: usize| r.pairing(&r.roots[a], &r.roots[b]).is_zero();
                let mut maximal: Vec<Vec<usize>> = Vec::new();
                let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
                while let Some((set, from)) = stack.pop() {
                    let mut extended = false;
                    for (pos, &k) in candidates.iter().enumerate().skip(from) {
                        if set.iter().all(|&s| orthogonal(s, k)) {
                            let mut bigger = set.clone();
                            bigger.push(k);
                            stack.push((bigger, pos + 1));
                            extended = true;
                        }
                    }
                    let is_maximal = candidates
                        .iter()
                        .all(|&k| set.contains(&k) || set.iter().any(|&s| !orthogonal(s, k)));
                    if !set.is_empty() && is_maximal && !extended {
                        maximal.push(set);
                    }
                }
                let (n_max, _) = maximal_orthogonal_a1(&r, &l2).map_err(|e| e.to_string())?;
                if maximal.iter().any(|s| s.len() != n_max) {
                    return Err(format!(
                        "{name}, length {l2}: a maximal set differs in size from the tower"
                    ));
                }
                let orbits =
                    oracle_orbits_of_sets(&r, &maximal, LIMIT).map_err(|e| e.to_string())?;
                if orbits.len() != 1 {
                    return Err(format!(
                        "{name}, length {l2}: {} orbits of maximal orthogonal sets",
                        orbits.len()
                    ));
                }
            }
        }
        Ok(())
    })();
    report(11, "maximal orthogonal towers", outcome);
}

#[test]
fn criterion_12_orbit_pinning_on_small_irreducible_systems() {
    let outcome = (|| {
        for name in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"] {
            let rep = check_oshima(&rs(name)).map_err(|e| e.to_string())?;
            if !rep.pass() {
                return Err(format!("{name}: {} violations", rep.violations.len()));
            }
        }
        Ok(())
    })();
    report(12, "orbit pinning", outcome);
}

#[test]
fn criterion_13_dot_action_laws_and_diagram_automorphisms() {
    let outcome = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xd07);
        for name in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"] {
            let r = rs(name);

            // Pool the fiber members of every standard irreducible genus
            // that fits inside the ambient rank.
            let mut pool: Vec<TupleV> = Vec::new();
            for m in 1..=r.rank {
                for fam in ["A", "B", "C", "D", "E", "F", "G"] {
                    let Ok(x) = CartanType::parse(&format!("{fam}{m}")) else { continue };
                    if !x.is_irreducible() {
                        continue;
                    }
                    let Ok(sigma) = standard_genus(&x) else { continue };
                    pool.extend(enumerate_fiber(&r, &sigma, GenusKind::Cartan).unwrap());
                }
            }

            for sample in 0..100 {
                // Alternate between fiber members and canonicalized random
                // rational tuples; the action laws must hold for both.
                let b: TupleV = if sample % 2 == 0 && !pool.is_empty() {
                    pool.choose(&mut rng).unwrap().clone()
                } else {
                    let n = rng.gen_range(1..=3);
                    let t: TupleV = (0..n)
                        .map(|_| {
                            VecPi(
                                (0..r.rank)
                                    .map(|_| {
                                        Rat::new(rng.gen_range(-3..=3), rng.gen_range(1..=2))
                                            .unwrap()
                                    })
                                    .collect(),
                            )
                        })
                        .collect();
                    canonicalize(&r, &t).canonical
                };
                let n = b.len();
                let mut sigma: Vec<usize> = (0..n).collect();
                let mut tau: Vec<usize> = (0..n).collect();
                sigma.shuffle(&mut rng);
                tau.shuffle(&mut rng);
                let identity: Vec<usize> = (0..n).collect();

                if dot_action(&r, &identity, &b).unwrap().tuple != b {
                    return Err(format!("{name}: the identity place permutation moves a tuple"));
                }
                let composed: Vec<usize> = (0..n).map(|j| sigma[tau[j]]).collect();
                let two_step =
                    dot_action(&r, &sigma, &dot_action(&r, &tau, &b).unwrap().tuple)
                        .unwrap()
                        .tuple;
                if two_step != dot_action(&r, &composed, &b).unwrap().tuple {
                    return Err(format!("{name}: the dot action is not associative"));
                }

                // Genus equivariance: canonicalization inside the dot action
                // must not change pairings.
                let permuted = permute_places(&sigma, &b).unwrap();
                let dotted = dot_action(&r, &sigma, &b).unwrap().tuple;
                if gram_genus(&r, &dotted).entries.row_major()
                    != gram_genus(&r, &permuted).entries.row_major()
                {
                    return Err(format!("{name}: the dot action changed the Gram genus"));
                }
            }

            // The subsystem diagram automorphism acts as a dot action on
            // every pooled fiber member.
            for b in &pool {
                let img = subsystem_rho_image(&r, b).unwrap();
                let m: Vec<usize> =
                    img.iter().map(|v| b.iter().position(|u| u == v).unwrap()).collect();
                let mut place = vec![0usize; m.len()];
                for (i, &mi) in m.iter().enumerate() {
                    place[mi] = i;
                }
                let res = dot_action(&r, &place, b).unwrap().tuple;
                if res != diagram_rho_image(&r, b).unwrap() {
                    return Err(format!(
                        "{name}: the realized diagram automorphism differs from entrywise rho"
                    ));
                }
            }
        }
        Ok(())
    })();
    report(13, "dot-action and automorphism laws", outcome);
}
