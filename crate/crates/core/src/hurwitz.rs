//! Reflection factorizations and the Hurwitz action of the braid group.
//!
//! `σ_i` replaces `(…, a, b, …)` at positions `i, i+1` by `(…, aba, a, …)`,
//! and `σ_i⁻¹` replaces it by `(…, b, bab, …)`. Generators are 1-based; a
//! [`BraidWord`] is a list of signed generator indices applied left to right.
//! Positions inside a factorization are 0-based.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootspace::{CoxeterSystem, GroupElement, Reflection, Word};

/// A tuple of reflections together with its product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    target: GroupElement,
    factors: Vec<Reflection>,
}

impl Factorization {
    /// Checks that the factors multiply to `target`.
    pub fn new(
        sys: &CoxeterSystem,
        target: GroupElement,
        factors: Vec<Reflection>,
    ) -> Result<Self> {
        if sys.product(&factors) != target {
            return Err(Error::ProductMismatch);
        }
        Ok(Self { target, factors })
    }

    /// Factorization of its own product.
    pub fn from_factors(sys: &CoxeterSystem, factors: Vec<Reflection>) -> Self {
        Self {
            target: sys.product(&factors),
            factors,
        }
    }

    pub fn from_words(sys: &CoxeterSystem, words: &[Word]) -> Result<Self> {
        let factors = words
            .iter()
            .map(|w| sys.reflection_of_word(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_factors(sys, factors))
    }

    pub fn target(&self) -> &GroupElement {
        &self.target
    }

    pub fn factors(&self) -> &[Reflection] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Palindromic words for each factor.
    pub fn to_words(&self, sys: &CoxeterSystem) -> Result<Vec<Word>> {
        self.factors
            .iter()
            .map(|t| sys.word_of_reflection(t))
            .collect()
    }

    /// Same target, new factors. Callers guarantee the product is unchanged.
    pub(crate) fn with_factors(&self, factors: Vec<Reflection>) -> Self {
        Self {
            target: self.target.clone(),
            factors,
        }
    }
}

/// Signed generator sequence; `+i` is `σ_i`, `-i` is `σ_i⁻¹`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BraidWord(pub Vec<i32>);

impl BraidWord {
    pub fn new(moves: Vec<i32>) -> Self {
        Self(moves)
    }

    pub fn moves(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reverse the sequence and negate every move.
    pub fn inverse(&self) -> BraidWord {
        BraidWord(self.0.iter().rev().map(|m| -m).collect())
    }

    pub fn extend(&mut self, other: &BraidWord) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn push(&mut self, mv: i32) {
        self.0.push(mv);
    }

    /// Shifts every generator index by `offset` positions.
    pub fn shifted(&self, offset: usize) -> BraidWord {
        let off = offset as i32;
        BraidWord(
            self.0
                .iter()
                .map(|&m| if m > 0 { m + off } else { m - off })
                .collect(),
        )
    }
}

/// Applies one signed move in place.
pub fn apply_move(sys: &CoxeterSystem, factors: &mut [Reflection], mv: i32) -> Result<()> {
    let len = factors.len();
    let i = mv.unsigned_abs() as usize;
    if mv == 0 || i >= len {
        return Err(Error::MoveOutOfRange {
            position: 0,
            value: mv,
            length: len,
        });
    }
    let (a, b) = (i - 1, i);
    if mv > 0 {
        let moved = sys.conjugate_by_reflection(&factors[b], &factors[a])?;
        factors[b] = std::mem::replace(&mut factors[a], moved);
    } else {
        let moved = sys.conjugate_by_reflection(&factors[a], &factors[b])?;
        factors[a] = std::mem::replace(&mut factors[b], moved);
    }
    Ok(())
}

/// `σ_i^{sign}` applied to `f`.
pub fn apply_generator(
    sys: &CoxeterSystem,
    f: &Factorization,
    i: usize,
    sign: i8,
) -> Result<Factorization> {
    let mv = if sign >= 0 { i as i32 } else { -(i as i32) };
    let mut factors = f.factors.clone();
    apply_move(sys, &mut factors, mv)?;
    Ok(f.with_factors(factors))
}

fn replay_factors(
    sys: &CoxeterSystem,
    factors: &mut [Reflection],
    braid: &BraidWord,
) -> Result<()> {
    for (position, &mv) in braid.0.iter().enumerate() {
        apply_move(sys, factors, mv).map_err(|e| match e {
            Error::MoveOutOfRange { value, length, .. } => Error::MoveOutOfRange {
                position,
                value,
                length,
            },
            other => other,
        })?;
    }
    Ok(())
}

/// Folds the braid word over `f` and re-checks the product.
pub fn replay(sys: &CoxeterSystem, f: &Factorization, braid: &BraidWord) -> Result<Factorization> {
    let mut factors = f.factors.clone();
    replay_factors(sys, &mut factors, braid)?;
    if !braid.is_empty() && sys.product(&factors) != f.target {
        return Err(Error::Internal("Hurwitz replay changed the product".into()));
    }
    Ok(f.with_factors(factors))
}

/// Multiset of reflection conjugacy classes, keyed by class id.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassMultiset(pub BTreeMap<usize, usize>);

impl ClassMultiset {
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn count(&self, class: usize) -> usize {
        self.0.get(&class).copied().unwrap_or(0)
    }
}

pub fn class_multiset(sys: &CoxeterSystem, factors: &[Reflection]) -> Result<ClassMultiset> {
    let mut counts = BTreeMap::new();
    for t in factors {
        *counts.entry(sys.class_of(t)?).or_insert(0) += 1;
    }
    Ok(ClassMultiset(counts))
}

/// Moves the equal pair at positions `i, i+1` one slot to the right via
/// `σ_{i+2} σ_{i+1}` (1-based); the displaced factor lands at `i` unchanged.
pub fn shift_pair_right(
    sys: &CoxeterSystem,
    f: &Factorization,
    i: usize,
) -> Result<(Factorization, BraidWord)> {
    if i + 2 >= f.len() {
        return Err(Error::Precondition(format!(
            "no factor to the right of the pair at {i} (length {})",
            f.len()
        )));
    }
    if f.factors[i] != f.factors[i + 1] {
        return Err(Error::Precondition(format!(
            "factors {i} and {} are not equal",
            i + 1
        )));
    }
    let braid = BraidWord(vec![i as i32 + 2, i as i32 + 1]);
    let out = replay(sys, f, &braid)?;
    debug_assert_eq!(out.factors[i], f.factors[i + 2]);
    Ok((out, braid))
}

/// Result of a breadth-first orbit exploration.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub states: Vec<Vec<Reflection>>,
    /// Set when the cap stopped the search before closure.
    pub truncated: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

fn all_moves(len: usize) -> impl Iterator<Item = i32> {
    (1..len as i32).flat_map(|i| [i, -i])
}

/// A move and the state it produces.
type Neighbor = (i32, Vec<Reflection>);

fn neighbors(sys: &CoxeterSystem, state: &[Reflection]) -> Result<Vec<Neighbor>> {
    all_moves(state.len())
        .map(|mv| {
            let mut next = state.to_vec();
            apply_move(sys, &mut next, mv)?;
            Ok((mv, next))
        })
        .collect()
}

/// Breadth-first closure of `f` under all Hurwitz moves. At most `cap`
/// states are kept; `truncated` reports whether unvisited states remained.
pub fn orbit_bfs(sys: &CoxeterSystem, f: &Factorization, cap: usize) -> Result<Orbit> {
    let mut seen: HashSet<Vec<Reflection>> = HashSet::new();
    let mut states = vec![f.factors.clone()];
    seen.insert(f.factors.clone());
    let mut head = 0;
    while head < states.len() {
        let current = states[head].clone();
        head += 1;
        for (_, next) in neighbors(sys, &current)? {
            if seen.contains(&next) {
                continue;
            }
            if states.len() >= cap {
                return Ok(Orbit {
                    states,
                    truncated: true,
                });
            }
            seen.insert(next.clone());
            states.push(next);
        }
    }
    Ok(Orbit {
        states,
        truncated: false,
    })
}

/// Level-synchronous orbit search whose frontier expansion runs on `threads`
/// worker threads. States are merged in frontier order, so the result equals
/// [`orbit_bfs`] for the same cap.
#[cfg(feature = "parallel")]
pub fn orbit_bfs_parallel(
    sys: &CoxeterSystem,
    f: &Factorization,
    cap: usize,
    threads: usize,
) -> Result<Orbit> {
    use rayon::prelude::*;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let mut seen: HashSet<Vec<Reflection>> = HashSet::new();
    let mut states = vec![f.factors.clone()];
    seen.insert(f.factors.clone());
    let mut level_start = 0;
    while level_start < states.len() {
        let level_end = states.len();
        let expanded: Vec<Result<Vec<Neighbor>>> = pool.install(|| {
            states[level_start..level_end]
                .par_iter()
                .map(|s| neighbors(sys, s))
                .collect()
        });
        for nbrs in expanded {
            for (_, next) in nbrs? {
                if seen.contains(&next) {
                    continue;
                }
                if states.len() >= cap {
                    return Ok(Orbit {
                        states,
                        truncated: true,
                    });
                }
                seen.insert(next.clone());
                states.push(next);
            }
        }
        level_start = level_end;
    }
    Ok(Orbit {
        states,
        truncated: false,
    })
}

struct SearchTree {
    states: Vec<Vec<Reflection>>,
    parent: Vec<(usize, i32)>,
    index: HashMap<Vec<Reflection>, usize>,
    frontier: Vec<usize>,
}

impl SearchTree {
    fn new(root: Vec<Reflection>) -> Self {
        let mut index = HashMap::new();
        index.insert(root.clone(), 0);
        Self {
            states: vec![root],
            parent: vec![(usize::MAX, 0)],
            index,
            frontier: vec![0],
        }
    }

    /// Moves leading from the root to node `idx`.
    fn path_from_root(&self, mut idx: usize) -> Vec<i32> {
        let mut moves = Vec::new();
        while idx != 0 {
            let (p, mv) = self.parent[idx];
            moves.push(mv);
            idx = p;
        }
        moves.reverse();
        moves
    }
}

/// Bidirectional breadth-first search for a braid word carrying `f` to `g`.
///
/// Always terminates when `f` and `g` lie in one orbit. Without a cap the
/// search runs until the orbit is exhausted, which for infinite orbits means
/// forever if they do not.
pub fn connect_bfs(
    sys: &CoxeterSystem,
    f: &Factorization,
    g: &Factorization,
    cap: Option<usize>,
) -> Result<BraidWord> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch(f.len(), g.len()));
    }
    if f.factors == g.factors {
        return Ok(BraidWord::default());
    }
    let mut fwd = SearchTree::new(f.factors.clone());
    let mut bwd = SearchTree::new(g.factors.clone());
    let len = f.len();
    loop {
        let visited = fwd.states.len() + bwd.states.len();
        if fwd.frontier.is_empty() || bwd.frontier.is_empty() || cap.is_some_and(|c| visited > c) {
            return Err(Error::NotConnected(visited));
        }
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (this, other) = if forward {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        let frontier = std::mem::take(&mut this.frontier);
        for idx in frontier {
            for mv in all_moves(len) {
                let mut next = this.states[idx].clone();
                apply_move(sys, &mut next, mv)?;
                if let Some(&hit) = other.index.get(&next) {
                    // f-side path to the meeting state, then back along the g side
                    let (f_idx, f_tail, g_idx, g_head) = if forward {
                        (idx, Some(mv), hit, None)
                    } else {
                        (hit, None, idx, Some(-mv))
                    };
                    let mut moves = fwd.path_from_root(f_idx);
                    moves.extend(f_tail);
                    moves.extend(g_head);
                    moves.extend(bwd.path_from_root(g_idx).iter().rev().map(|m| -m));
                    let braid = BraidWord(moves);
                    debug_assert_eq!(replay(sys, f, &braid)?.factors, g.factors);
                    return Ok(braid);
                }
                if this.index.contains_key(&next) {
                    continue;
                }
                let new_idx = this.states.len();
                this.index.insert(next.clone(), new_idx);
                this.states.push(next);
                this.parent.push((idx, mv));
                this.frontier.push(new_idx);
            }
        }
    }
}
