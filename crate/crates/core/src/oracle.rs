//! Brute-force ground truth for small finite Coxeter groups.
//!
//! Only the matrix layer is shared with the main code path. Elements are
//! found by word BFS, reflections as conjugates of simple reflections,
//! factorizations by exhaustive search and orbits by union-find over single
//! Hurwitz moves.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::hurwitz::Factorization;
use crate::rootspace::{CoxeterSystem, GroupElement, Reflection, Word};

/// Elements of a finite Coxeter group with the right action of the generators.
pub struct FiniteGroupTable {
    elements: Vec<GroupElement>,
    words: Vec<Word>,
    index: HashMap<GroupElement, usize>,
    right: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    reflections: Vec<usize>,
    is_reflection: Vec<bool>,
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self) -> usize {
        self.right.first().map_or(0, Vec::len)
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, g: usize) -> &GroupElement {
        &self.elements[g]
    }

    /// A shortest word for `g`.
    pub fn word(&self, g: usize) -> &Word {
        &self.words[g]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// `g · s_i` (1-based `i`).
    pub fn mul_simple(&self, g: usize, i: usize) -> usize {
        self.right[g][i - 1]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.words[b]
            .letters()
            .iter()
            .fold(a, |g, &i| self.mul_simple(g, i))
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn of_word(&self, w: &Word) -> usize {
        w.letters().iter().fold(0, |g, &i| self.mul_simple(g, i))
    }

    /// Element indices of all reflections, ascending.
    pub fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    pub fn is_reflection(&self, g: usize) -> bool {
        self.is_reflection[g]
    }

    /// The main-path reflection for a table reflection.
    pub fn reflection(&self, sys: &CoxeterSystem, g: usize) -> Result<Reflection> {
        sys.reflection_of_word(&self.words[g])
    }

    pub fn factorization(&self, sys: &CoxeterSystem, tuple: &[usize]) -> Result<Factorization> {
        let factors = tuple
            .iter()
            .map(|&g| self.reflection(sys, g))
            .collect::<Result<Vec<_>>>()?;
        let target = tuple.iter().fold(0, |acc, &g| self.mul(acc, g));
        Factorization::new(sys, self.elements[target].clone(), factors)
    }
}

/// Closes the generators under right multiplication; fails past `cap` elements.
pub fn enumerate_group(sys: &CoxeterSystem, cap: usize) -> Result<FiniteGroupTable> {
    let n = sys.rank();
    let gens = (1..=n)
        .map(|i| sys.simple_reflection(i))
        .collect::<Result<Vec<_>>>()?;
    let mut elements = vec![sys.identity()];
    let mut words = vec![Word::default()];
    let mut index = HashMap::from([(sys.identity(), 0)]);
    let mut right: Vec<Vec<usize>> = vec![vec![usize::MAX; n]];
    let mut queue = VecDeque::from([0usize]);
    while let Some(g) = queue.pop_front() {
        for (k, s) in gens.iter().enumerate() {
            let h = elements[g].mul(s);
            let id = match index.get(&h) {
                Some(&id) => id,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    let id = elements.len();
                    let mut w = words[g].0.clone();
                    w.push(k + 1);
                    index.insert(h.clone(), id);
                    elements.push(h);
                    words.push(Word(w));
                    right.push(vec![usize::MAX; n]);
                    queue.push_back(id);
                    id
                }
            };
            right[g][k] = id;
        }
    }

    let mut table = FiniteGroupTable {
        elements,
        words,
        index,
        right,
        inverse: Vec::new(),
        reflections: Vec::new(),
        is_reflection: Vec::new(),
    };
    table.inverse = (0..table.order())
        .map(|g| table.of_word(&table.words[g].reversed()))
        .collect();
    let mut is_reflection = vec![false; table.order()];
    for g in 0..table.order() {
        for i in 1..=n {
            let t = table.mul(table.mul_simple(g, i), table.inverse[g]);
            is_reflection[t] = true;
        }
    }
    table.reflections = (0..table.order()).filter(|&g| is_reflection[g]).collect();
    table.is_reflection = is_reflection;
    Ok(table)
}

/// All reflection tuples of the given length multiplying to `target`.
pub fn all_factorizations(
    table: &FiniteGroupTable,
    target: usize,
    length: usize,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if length == 0 {
        if target == table.identity() {
            out.push(Vec::new());
        }
        return out;
    }
    let mut prefix = Vec::with_capacity(length);
    extend_factorizations(
        table,
        target,
        length,
        table.identity(),
        &mut prefix,
        &mut out,
    );
    out
}

fn extend_factorizations(
    table: &FiniteGroupTable,
    target: usize,
    length: usize,
    product: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if prefix.len() + 1 == length {
        let last = table.mul(table.inverse(product), target);
        if table.is_reflection(last) {
            let mut f = prefix.clone();
            f.push(last);
            out.push(f);
        }
        return;
    }
    for &t in table.reflections() {
        prefix.push(t);
        extend_factorizations(table, target, length, table.mul(product, t), prefix, out);
        prefix.pop();
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

fn groups(parent: &mut [usize]) -> Vec<Vec<usize>> {
    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for x in 0..parent.len() {
        let r = find(parent, x);
        by_root.entry(r).or_default().push(x);
    }
    let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
    out.sort_by_key(|g| g[0]);
    out
}

/// Partition of `facts` (indices) under single Hurwitz moves.
/// The input must be closed under moves, as `all_factorizations` output is.
pub fn orbit_partition(table: &FiniteGroupTable, facts: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let lookup: HashMap<&[usize], usize> = facts
        .iter()
        .enumerate()
        .map(|(k, f)| (f.as_slice(), k))
        .collect();
    let mut parent: Vec<usize> = (0..facts.len()).collect();
    let mut moved = Vec::new();
    for (k, f) in facts.iter().enumerate() {
        for i in 0..f.len().saturating_sub(1) {
            moved.clear();
            moved.extend_from_slice(f);
            let (a, b) = (f[i], f[i + 1]);
            moved[i] = table.mul(table.mul(a, b), a);
            moved[i + 1] = a;
            let &j = lookup.get(moved.as_slice()).ok_or_else(|| {
                Error::Internal("factorization set is not closed under moves".into())
            })?;
            union(&mut parent, k, j);
        }
    }
    Ok(groups(&mut parent))
}

/// Conjugacy classes of reflections by exhaustive conjugation; each class is
/// a list of element indices, classes ordered by smallest member.
pub fn brute_conjugacy(table: &FiniteGroupTable) -> Vec<Vec<usize>> {
    let refl = table.reflections();
    let pos: HashMap<usize, usize> = refl.iter().enumerate().map(|(k, &g)| (g, k)).collect();
    let mut parent: Vec<usize> = (0..refl.len()).collect();
    for (k, &t) in refl.iter().enumerate() {
        for g in 0..table.order() {
            let c = table.mul(table.mul(g, t), table.inverse(g));
            union(&mut parent, k, pos[&c]);
        }
    }
    groups(&mut parent)
        .into_iter()
        .map(|class| class.into_iter().map(|k| refl[k]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{CoxeterDiagram, Label};

    fn sys(m: Label) -> CoxeterSystem {
        CoxeterSystem::new(CoxeterDiagram::dihedral(m))
    }

    #[test]
    fn group_orders() {
        for (m, order) in [(2, 4), (3, 6), (4, 8), (5, 10), (6, 12)] {
            let t = enumerate_group(&sys(Label::Finite(m)), 1000).unwrap();
            assert_eq!(t.order(), order);
            assert_eq!(t.reflections().len(), m as usize);
        }
        let a3 = CoxeterSystem::new(CoxeterDiagram::type_a(3).unwrap());
        let t = enumerate_group(&a3, 1000).unwrap();
        assert_eq!((t.order(), t.reflections().len()), (24, 6));
        assert_eq!(
            enumerate_group(&sys(Label::Infinite), 100).err(),
            Some(Error::CapExceeded(100))
        );
    }

    #[test]
    fn table_consistency() {
        let b2 = sys(Label::Finite(4));
        let t = enumerate_group(&b2, 100).unwrap();
        for a in 0..t.order() {
            assert_eq!(t.mul(a, t.inverse(a)), t.identity());
            assert_eq!(t.index_of(t.element(a)), Some(a));
            for b in 0..t.order() {
                assert_eq!(t.element(t.mul(a, b)), &t.element(a).mul(t.element(b)));
            }
        }
    }

    #[test]
    fn factorization_counts() {
        let a2 = sys(Label::Finite(3));
        let t = enumerate_group(&a2, 100).unwrap();
        let c = t.of_word(&Word(vec![1, 2]));
        assert_eq!(all_factorizations(&t, c, 2).len(), 3);
        assert_eq!(all_factorizations(&t, c, 3).len(), 0);
        assert_eq!(all_factorizations(&t, t.identity(), 0).len(), 1);

        let b2 = sys(Label::Finite(4));
        let t = enumerate_group(&b2, 100).unwrap();
        let c = t.of_word(&Word(vec![1, 2]));
        let two = all_factorizations(&t, c, 2);
        assert_eq!(two.len(), 4);
        let orbits = orbit_partition(&t, &two).unwrap();
        assert_eq!(orbits.len(), 1);
        let four = all_factorizations(&t, c, 4);
        let orbits = orbit_partition(&t, &four).unwrap();
        assert_eq!(orbits.len(), 2);
        for orbit in &orbits {
            let mut ms: Vec<_> = orbit
                .iter()
                .map(|&k| {
                    let f = t.factorization(&b2, &four[k]).unwrap();
                    crate::hurwitz::class_multiset(&b2, f.factors()).unwrap()
                })
                .collect();
            ms.dedup();
            assert_eq!(ms.len(), 1);
            let (a, b) = (ms[0].count(1), ms[0].count(2));
            assert!((a, b) == (1, 3) || (a, b) == (3, 1));
        }
    }

    #[test]
    fn conjugacy_classes() {
        let a2 = sys(Label::Finite(3));
        let t = enumerate_group(&a2, 100).unwrap();
        assert_eq!(
            brute_conjugacy(&t).iter().map(Vec::len).collect::<Vec<_>>(),
            vec![3]
        );
        let b2 = sys(Label::Finite(4));
        let t = enumerate_group(&b2, 100).unwrap();
        let classes = brute_conjugacy(&t);
        assert_eq!(classes.len(), 2);
        for class in classes {
            let ids: Vec<usize> = class
                .iter()
                .map(|&g| b2.class_of(&t.reflection(&b2, g).unwrap()).unwrap())
                .collect();
            assert!(ids.windows(2).all(|w| w[0] == w[1]));
        }
    }
}
