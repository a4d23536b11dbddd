//! Deciding Hurwitz equivalence of reflection factorizations of a Coxeter
//! element, with an explicit braid witness.
//!
//! Two factorizations of a Coxeter element `c` of equal length are in one
//! Hurwitz orbit exactly when their multisets of reflection classes agree.
//! The witness is built by bringing both sides to a canonical tuple:
//! the letters of `c` followed by pairs `(s_q, s_q)` of class representatives
//! sorted by class id.

use serde::Serialize;

use crate::diagram::{CoxeterWord, Label};
use crate::error::{Error, Result};
use crate::hurwitz::{
    class_multiset, connect_bfs, replay, shift_pair_right, BraidWord, ClassMultiset, Factorization,
};
use crate::pathrewrite::normalize;
use crate::rootspace::{CoxeterSystem, Reflection, Word};

/// Class multisets of both inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub f: ClassMultiset,
    pub g: ClassMultiset,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub equivalent: bool,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BraidWord>,
}

/// Checks that `f` multiplies to the Coxeter element and has admissible length.
pub fn validate_coxeter_target(
    sys: &CoxeterSystem,
    cw: &CoxeterWord,
    f: &Factorization,
) -> Result<()> {
    let c = sys.element_of_word(&Word(cw.letters().to_vec()))?;
    if *f.target() != c || sys.product(f.factors()) != c {
        return Err(Error::ProductMismatch);
    }
    let n = sys.rank();
    if f.len() < n || !(f.len() - n).is_multiple_of(2) {
        return Err(Error::ParityError {
            length: f.len(),
            rank: n,
        });
    }
    Ok(())
}

/// Equivalence by comparison of class multisets.
pub fn decide(sys: &CoxeterSystem, f: &Factorization, g: &Factorization) -> Result<Decision> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch(f.len(), g.len()));
    }
    let certificate = Certificate {
        f: class_multiset(sys, f.factors())?,
        g: class_multiset(sys, g.factors())?,
    };
    Ok(Decision {
        equivalent: certificate.f == certificate.g,
        certificate,
        witness: None,
    })
}

/// Replaces the pair `(t, t)` at `pair_pos` by `(t^{t_i}, t^{t_i})` where `t_i`
/// is the factor at `i < pair_pos`. The factor `t_i` is carried to the right
/// across the pair, back across it, and home again; every other factor
/// returns to its original value.
pub fn conjugate_pair_by_prefix_entry(
    sys: &CoxeterSystem,
    f: &Factorization,
    pair_pos: usize,
    i: usize,
) -> Result<(Factorization, BraidWord)> {
    let factors = f.factors();
    if pair_pos + 1 >= factors.len() || factors[pair_pos] != factors[pair_pos + 1] {
        return Err(Error::Precondition(format!(
            "no equal pair at position {pair_pos}"
        )));
    }
    if i >= pair_pos {
        return Err(Error::Precondition(format!(
            "prefix entry {i} is not left of the pair at {pair_pos}"
        )));
    }
    let (i, p) = (i as i32, pair_pos as i32);
    let mut moves: Vec<i32> = (i + 1..=p + 1).collect();
    moves.extend([p + 1, p]);
    moves.extend((i + 1..p).rev().map(|m| -m));
    let braid = BraidWord(moves);
    let out = replay(sys, f, &braid)?;
    debug_assert_eq!(
        out.factors()[pair_pos],
        sys.conjugate_by_reflection(&factors[pair_pos], &factors[i as usize])?
    );
    Ok((out, braid))
}

/// Conjugates the pair at `pair_pos` by `element_of_word(u)`, letter by
/// letter from the right, using the simple reflections found left of the pair.
pub fn conjugate_pair_by_word(
    sys: &CoxeterSystem,
    f: &Factorization,
    pair_pos: usize,
    u: &Word,
) -> Result<(Factorization, BraidWord)> {
    sys.check_word(u)?;
    let mut cur = f.clone();
    let mut braid = BraidWord::default();
    for &letter in u.letters().iter().rev() {
        let s = sys.simple(letter)?;
        let pos = cur.factors()[..pair_pos.min(cur.len())]
            .iter()
            .position(|t| *t == s)
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "prefix does not contain the simple reflection s_{letter}"
                ))
            })?;
        let (next, moves) = conjugate_pair_by_prefix_entry(sys, &cur, pair_pos, pos)?;
        cur = next;
        braid.extend(&moves);
    }
    Ok((cur, braid))
}

/// A word `u` with `u s_q u⁻¹ = t`, where `s_q` is the smallest simple
/// reflection in the class of `t`.
pub fn class_representative_conjugator(sys: &CoxeterSystem, t: &Reflection) -> Result<Word> {
    let (p, witness) = sys.class_witness(t)?;
    let labeling = sys.labeling();
    let q = labeling
        .representative(labeling.class_of_simple(p))
        .expect("every class has a member");
    let path = sys
        .diagram()
        .odd_path(q - 1, p - 1)
        .ok_or_else(|| Error::Internal(format!("no odd path between s_{q} and s_{p}")))?;
    // v s_a v⁻¹ = s_b for v = (s_a s_b)^k across an edge labelled 2k + 1
    let mut bridge: Vec<usize> = Vec::new();
    for edge in path.windows(2) {
        let (a, b) = (edge[0], edge[1]);
        let Label::Finite(m) = sys.diagram().label(a, b) else {
            return Err(Error::Internal("odd path crosses an infinite edge".into()));
        };
        let v: Vec<usize> = (0..(m as usize - 1))
            .map(|j| if j % 2 == 0 { a + 1 } else { b + 1 })
            .collect();
        bridge.splice(0..0, v);
    }
    let u = witness.concat(&Word(bridge));
    let rebuilt = sys.conjugate(&sys.simple(q)?, &sys.element_of_word(&u)?)?;
    if rebuilt != *t {
        return Err(Error::Internal(format!(
            "conjugator {u:?} does not carry s_{q} to {t:?}"
        )));
    }
    Ok(u)
}

/// The canonical tuple for a Coxeter word and pair classes:
/// `(s_{π(1)}, …, s_{π(n)}, s_{q_1}, s_{q_1}, …)` with `q_j` ascending by class.
pub fn canonical_tuple(
    sys: &CoxeterSystem,
    cw: &CoxeterWord,
    pair_classes: &[usize],
) -> Result<Vec<Reflection>> {
    let mut out = cw
        .letters()
        .iter()
        .map(|&i| sys.simple(i))
        .collect::<Result<Vec<_>>>()?;
    let mut classes = pair_classes.to_vec();
    classes.sort_unstable();
    for c in classes {
        let q = sys
            .labeling()
            .representative(c)
            .ok_or_else(|| Error::InvalidInput(format!("unknown class id {c}")))?;
        let s = sys.simple(q)?;
        out.push(s.clone());
        out.push(s);
    }
    Ok(out)
}

/// Brings `f` to its canonical tuple; returns the tuple and the braid word
/// that produces it.
pub fn canonicalize(
    sys: &CoxeterSystem,
    f: &Factorization,
    cw: &CoxeterWord,
) -> Result<(Factorization, BraidWord)> {
    validate_coxeter_target(sys, cw, f)?;
    let n = sys.rank();
    let nf = normalize(sys, f)?;
    if nf.core.len() != n {
        return Err(Error::Internal(format!(
            "core of a Coxeter element factorization has length {} instead of {n}",
            nf.core.len()
        )));
    }
    let mut braid = nf.braid.clone();

    // reduced cores of c form one orbit; connect ours to the defining word
    let canon_core = Factorization::from_factors(sys, canonical_tuple(sys, cw, &[])?);
    let core_moves = connect_bfs(sys, &nf.core, &canon_core, None)?;
    let mut cur = replay(sys, f, &nf.braid)?;
    cur = replay(sys, &cur, &core_moves)?;
    braid.extend(&core_moves);

    let k = nf.pairs.len();
    for j in 0..k {
        let pos = n + 2 * j;
        let t = cur.factors()[pos].clone();
        let u = class_representative_conjugator(sys, &t)?;
        let (next, moves) = conjugate_pair_by_word(sys, &cur, pos, &u.reversed())?;
        cur = next;
        braid.extend(&moves);
    }

    // stable bubble sort of pair blocks by class id
    let class_at = |cur: &Factorization, j: usize| sys.class_of(&cur.factors()[n + 2 * j]);
    for pass in 0..k {
        for j in 0..k.saturating_sub(1 + pass) {
            if class_at(&cur, j)? > class_at(&cur, j + 1)? {
                let pos = n + 2 * j;
                let (a, m1) = shift_pair_right(sys, &cur, pos)?;
                let (b, m2) = shift_pair_right(sys, &a, pos + 1)?;
                cur = b;
                braid.extend(&m1);
                braid.extend(&m2);
            }
        }
    }

    let classes: Vec<usize> = (0..k).map(|j| class_at(&cur, j)).collect::<Result<_>>()?;
    let expected = canonical_tuple(sys, cw, &classes)?;
    if cur.factors() != expected.as_slice() {
        return Err(Error::Internal(
            "canonicalization did not reach the canonical tuple".into(),
        ));
    }
    Ok((cur, braid))
}

/// Decision with a verified witness braid when the inputs are equivalent.
pub fn connect(
    sys: &CoxeterSystem,
    f: &Factorization,
    g: &Factorization,
    cw: &CoxeterWord,
) -> Result<Decision> {
    validate_coxeter_target(sys, cw, f)?;
    validate_coxeter_target(sys, cw, g)?;
    let mut decision = decide(sys, f, g)?;
    if !decision.equivalent {
        return Ok(decision);
    }
    let (cf, bf) = canonicalize(sys, f, cw)?;
    let (cg, bg) = canonicalize(sys, g, cw)?;
    if cf != cg {
        return Err(Error::Internal(
            "equal class multisets gave different canonical tuples".into(),
        ));
    }
    let mut witness = bf;
    witness.extend(&bg.inverse());
    if replay(sys, f, &witness)?.factors() != g.factors() {
        return Err(Error::Internal(
            "witness braid does not replay to the second factorization".into(),
        ));
    }
    decision.witness = Some(witness);
    Ok(decision)
}
