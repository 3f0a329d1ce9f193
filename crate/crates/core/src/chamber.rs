//! Reduction into the closed fundamental chamber.
//!
//! For a standard parabolic W_I the chamber is
//! C_{W_I} = {v : ⟨α_i, v⟩ ≥ 0 for all i ∈ I}.  The reduction loop reflects
//! by any violated simple root until none is left; the number of steps is
//! forced (it equals the number of W_I-positive roots with negative pairing
//! against v), but the word itself depends on the choice of violated root,
//! which we pin to the smallest index for reproducibility.

use crate::error::{Error, Result};
use crate::exact::{solve_linear, Rat, VecPi};
use crate::rootsys::{GroupElement, Parabolic, RootSystem};

/// Facet of the chamber C_{W_I}: the points with ⟨α, v⟩ = 0 exactly on Π_J
/// (and > 0 on Π_{I∖J}), for J ⊆ I.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FacetLabel {
    pub i_set: Parabolic,
    pub j_set: Parabolic,
}

#[derive(Debug, Clone)]
pub struct ReductionResult {
    /// Element with w(v) = image; the product of the reflection word.
    pub w: GroupElement,
    /// Simple indices in application order: w = s_{word[k-1]} ⋯ s_{word[0]}.
    pub word: Vec<usize>,
    pub image: VecPi,
    /// {i ∈ I : ⟨α_i, image⟩ = 0} — indexes the stabilizer of the image,
    /// which is the standard parabolic W_J.
    pub stabilizer: Parabolic,
}

pub fn is_in_chamber(rs: &RootSystem, i_set: Parabolic, v: &VecPi) -> bool {
    let pair = rs.simple_pairings(v);
    i_set.iter().all(|i| !pair[i].is_negative())
}

/// Reflects v into C_{W_I} by simple reflections from Π_I.
pub fn reduce_to_chamber(rs: &RootSystem, i_set: Parabolic, v: &VecPi) -> ReductionResult {
    assert_eq!(v.dim(), rs.rank, "vector has wrong dimension");
    let mut cur = v.clone();
    let mut w = rs.identity();
    let mut word = Vec::new();
    loop {
        let pair = rs.simple_pairings(&cur);
        let Some(i) = i_set.iter().find(|&i| pair[i].is_negative()) else {
            let stabilizer =
                Parabolic::from_indices(i_set.iter().filter(|&i| pair[i].is_zero()));
            return ReductionResult { w, word, image: cur, stabilizer };
        };
        // s_i(cur) = cur - ⟨cur, α_i∨⟩ α_i, and ⟨cur, α_i∨⟩ = 2⟨α_i,cur⟩/⟨α_i,α_i⟩.
        let c = &(&Rat::int(2) * &pair[i]) / rs.gram.at(i, i);
        cur.0[i] -= &c;
        w = rs.left_mul_simple(i, &w);
        word.push(i);
    }
}

/// Which facet of C_{W_I} contains v.  Errors if v is outside the chamber.
pub fn facet_of(rs: &RootSystem, i_set: Parabolic, v: &VecPi) -> Result<FacetLabel> {
    let pair = rs.simple_pairings(v);
    if let Some(i) = i_set.iter().find(|&i| pair[i].is_negative()) {
        return Err(Error::NotInChamber(format!("⟨α_{i}, v⟩ = {} < 0", pair[i])));
    }
    let j_set = Parabolic::from_indices(i_set.iter().filter(|&i| pair[i].is_zero()));
    Ok(FacetLabel { i_set, j_set })
}

/// A point in the relative interior of the facet C_{I,J}: pairs to 1 with
/// α_i for i ∈ I∖J and to 0 with every other simple root.
pub fn facet_point(rs: &RootSystem, label: FacetLabel) -> Result<VecPi> {
    if !label.j_set.is_subset_of(label.i_set) {
        return Err(Error::Invalid(format!(
            "facet label needs J ⊆ I, got I={}, J={}",
            label.i_set, label.j_set
        )));
    }
    let chi: Vec<Rat> = (0..rs.rank)
        .map(|i| {
            if label.i_set.contains(i) && !label.j_set.contains(i) {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
        .collect();
    let x = solve_linear(&rs.gram, &chi)?.expect("gram matrices are invertible");
    Ok(VecPi(x))
}

/// Indices of the dominant roots: roots lying in the full chamber C_W.
/// There is exactly one per component and root length.
pub fn dominant_roots(rs: &RootSystem) -> Vec<usize> {
    let full = Parabolic::full(rs.rank);
    (0..rs.num_roots())
        .filter(|&k| is_in_chamber(rs, full, &rs.roots[k]))
        .collect()
}
