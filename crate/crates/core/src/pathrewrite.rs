//! Bruhat-graph paths of factorizations and their rewriting into a
//! strictly increasing core followed by adjacent equal pairs.
//!
//! A factorization `(t_1, …, t_m)` traces the path `e, t_1, t_1 t_2, …` and
//! each edge goes up or down in `ℓ_S`. A peak (up then down) between two
//! distinct reflections is flattened by a power of a single Hurwitz
//! generator: the orbit of `(t_i, t_{i+1})` under `σ_i` runs through every
//! reflection of the dihedral subgroup they generate, and one of those
//! choices always removes the peak while lowering the middle vertex.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hurwitz::{apply_move, replay, BraidWord, Factorization};
use crate::rootspace::{CoxeterSystem, GroupElement, Reflection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Up,
    Down,
}

/// Lengths of the prefix products and the direction of each edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathProfile {
    pub vertex_lengths: Vec<usize>,
    pub directions: Vec<Direction>,
}

impl PathProfile {
    pub fn vertex_length_sum(&self) -> usize {
        self.vertex_lengths.iter().sum()
    }

    pub fn is_increasing(&self) -> bool {
        self.directions.iter().all(|&d| d == Direction::Up)
    }
}

fn prefix_products(sys: &CoxeterSystem, factors: &[Reflection]) -> Vec<GroupElement> {
    let mut out = Vec::with_capacity(factors.len() + 1);
    let mut acc = sys.identity();
    out.push(acc.clone());
    for t in factors {
        acc = acc.mul(&sys.reflection_matrix(t));
        out.push(acc.clone());
    }
    out
}

pub fn profile(sys: &CoxeterSystem, factors: &[Reflection]) -> Result<PathProfile> {
    let vertex_lengths = prefix_products(sys, factors)
        .iter()
        .map(|g| sys.length(g))
        .collect::<Result<Vec<_>>>()?;
    let directions = vertex_lengths
        .windows(2)
        .map(|w| {
            debug_assert_ne!(w[0], w[1], "adjacent Bruhat vertices have different parity");
            if w[1] > w[0] {
                Direction::Up
            } else {
                Direction::Down
            }
        })
        .collect();
    Ok(PathProfile {
        vertex_lengths,
        directions,
    })
}

/// Smallest 0-based edge index `i` with edge `i` up and edge `i + 1` down.
pub fn find_peak(p: &PathProfile) -> Option<usize> {
    p.directions
        .windows(2)
        .position(|w| w == [Direction::Up, Direction::Down])
}

/// Flattens the peak formed by factors `i` and `i + 1` (0-based) with a power
/// of the generator `σ_{i+1}`, trying exponents `1, -1, 2, -2, …`.
pub fn resolve_peak(
    sys: &CoxeterSystem,
    f: &Factorization,
    i: usize,
) -> Result<(Factorization, BraidWord)> {
    resolve_peak_bounded(sys, f, i, None)
}

/// As [`resolve_peak`], with an explicit bound on `|k|`. The default bound is
/// `10 · (len(f) + ℓ_S(peak vertex))`.
pub fn resolve_peak_bounded(
    sys: &CoxeterSystem,
    f: &Factorization,
    i: usize,
    bound: Option<usize>,
) -> Result<(Factorization, BraidWord)> {
    let factors = f.factors();
    if i + 1 >= factors.len() {
        return Err(Error::Precondition(format!(
            "edge {i} has no successor in a path of length {}",
            factors.len()
        )));
    }
    let (a, b) = (&factors[i], &factors[i + 1]);
    if a == b {
        return Err(Error::Precondition(format!(
            "peak at {i} has equal factors; extract the pair instead"
        )));
    }
    let start = sys.product(&factors[..i]);
    let start_len = sys.length(&start)?;
    let end_len = sys.length(
        &start
            .mul(&sys.reflection_matrix(a))
            .mul(&sys.reflection_matrix(b)),
    )?;
    let peak_len = sys.length(&start.mul(&sys.reflection_matrix(a)))?;
    if !(start_len < peak_len && peak_len > end_len) {
        return Err(Error::Precondition(format!(
            "edges {i}, {} do not form a peak",
            i + 1
        )));
    }
    let bound = bound.unwrap_or(10 * (factors.len() + peak_len));
    let generator = i as i32 + 1;
    let mut forward = [a.clone(), b.clone()];
    let mut backward = [a.clone(), b.clone()];
    for k in 1..=bound {
        for (pair, sign) in [(&mut forward, 1), (&mut backward, -1)] {
            apply_move(sys, pair, sign)?;
            let middle = sys.length(&start.mul(&sys.reflection_matrix(&pair[0])))?;
            if middle > start_len && middle > end_len {
                continue;
            }
            debug_assert!(middle < peak_len);
            let mut out = factors.to_vec();
            out[i] = pair[0].clone();
            out[i + 1] = pair[1].clone();
            let braid = BraidWord(vec![sign * generator; k]);
            return Ok((f.with_factors(out), braid));
        }
    }
    Err(Error::Internal(format!(
        "peak at {i} not resolved within |k| <= {bound}"
    )))
}

/// Core, trailing pairs and the braid word that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    /// Strictly increasing path.
    pub core: Factorization,
    /// Pair reflections in positional order: the flat tuple is
    /// `core ⧺ (p_1, p_1, …, p_k, p_k)`.
    pub pairs: Vec<Reflection>,
    pub braid: BraidWord,
}

impl NormalForm {
    pub fn flat(&self) -> Vec<Reflection> {
        let mut out = self.core.factors().to_vec();
        for p in &self.pairs {
            out.push(p.clone());
            out.push(p.clone());
        }
        out
    }
}

/// Vertex-length sums of the active path around each peak resolution.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalizeTrace {
    /// `(before, after)` per resolved peak.
    pub peak_sums: Vec<(usize, usize)>,
    pub pair_extractions: usize,
}

pub fn normalize(sys: &CoxeterSystem, f: &Factorization) -> Result<NormalForm> {
    normalize_traced(sys, f).map(|(nf, _)| nf)
}

/// Normalization loop on the active prefix:
/// 1. move the rightmost adjacent equal pair to the end of the active region and shrink it;
/// 2. otherwise stop if the active path has no peak;
/// 3. otherwise resolve the leftmost peak.
pub fn normalize_traced(
    sys: &CoxeterSystem,
    f: &Factorization,
) -> Result<(NormalForm, NormalizeTrace)> {
    let mut cur = f.factors().to_vec();
    let mut active = cur.len();
    let mut braid = BraidWord::default();
    let mut trace = NormalizeTrace::default();
    loop {
        if let Some(p) = (0..active.saturating_sub(1))
            .rev()
            .find(|&p| cur[p] == cur[p + 1])
        {
            for q in p..active - 2 {
                for mv in [q as i32 + 2, q as i32 + 1] {
                    apply_move(sys, &mut cur, mv)?;
                    braid.push(mv);
                }
            }
            active -= 2;
            trace.pair_extractions += 1;
            continue;
        }
        let prof = profile(sys, &cur[..active])?;
        let Some(i) = find_peak(&prof) else {
            break;
        };
        let region = Factorization::from_factors(sys, cur[..active].to_vec());
        let (resolved, moves) = resolve_peak(sys, &region, i)?;
        let after = profile(sys, resolved.factors())?.vertex_length_sum();
        let before = prof.vertex_length_sum();
        if after >= before {
            return Err(Error::Internal(format!(
                "peak resolution did not lower the vertex-length sum ({before} -> {after})"
            )));
        }
        trace.peak_sums.push((before, after));
        cur[..active].clone_from_slice(resolved.factors());
        braid.extend(&moves);
    }

    let replayed = replay(sys, f, &braid)?;
    if replayed.factors() != cur.as_slice() {
        return Err(Error::Internal(
            "normal form does not match its braid replay".into(),
        ));
    }
    let pairs: Vec<Reflection> = cur[active..].chunks(2).map(|c| c[0].clone()).collect();
    if cur[active..].chunks(2).any(|c| c[0] != c[1]) {
        return Err(Error::Internal(
            "extracted region is not made of equal pairs".into(),
        ));
    }
    let core = Factorization::new(sys, f.target().clone(), cur[..active].to_vec())?;
    let target_len = sys.length(f.target())?;
    if core.len() > target_len {
        return Err(Error::Internal(format!(
            "increasing core of length {} exceeds the target length {target_len}",
            core.len()
        )));
    }
    Ok((NormalForm { core, pairs, braid }, trace))
}
