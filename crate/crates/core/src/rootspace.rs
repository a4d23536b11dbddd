//! Geometric representation of a Coxeter system over its exact field.
//!
//! Group elements are matrices acting on the span of the simple roots
//! `α_1, …, α_n` (column vectors in the simple-root basis). A reflection is
//! stored as its canonical positive root: the unique positive multiple whose
//! first nonzero coordinate is 1.
//!
//! Simple indices in [`Word`]s and in the public API are 1-based.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclofield::{FieldContext, FieldElement};
use crate::diagram::{ClassLabeling, CoxeterDiagram};
use crate::error::{Error, Result};

/// Iteration cap for descent loops; exceeding it signals an arithmetic bug.
const DESCENT_CAP: usize = 1 << 20;

/// A word in the simple generators, 1-based letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

/// A vector in the simple-root basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Root {
    coords: Vec<FieldElement>,
}

impl Root {
    pub fn new(coords: Vec<FieldElement>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FieldElement::is_zero)
    }

    /// Sign of the first nonzero coordinate; for genuine roots this is the
    /// sign of every nonzero coordinate.
    pub fn leading_sign(&self) -> i8 {
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .map_or(0, FieldElement::sign)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(FieldElement::to_f64).collect()
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coords).finish()
    }
}

/// A reflection, identified by its canonical positive root.
#[derive(Clone)]
pub struct Reflection {
    root: Root,
    /// `2 B(β, ·) / B(β, β)` as a row vector, so that `t(v) = v - (normal · v) β`.
    normal: Vec<FieldElement>,
}

impl Reflection {
    pub fn root(&self) -> &Root {
        &self.root
    }

    fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let coef = dot(&self.normal, v);
        if coef.is_zero() {
            return v.to_vec();
        }
        v.iter()
            .zip(&self.root.coords)
            .map(|(x, b)| x - &(&coef * b))
            .collect()
    }
}

impl PartialEq for Reflection {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root
    }
}

impl Eq for Reflection {}

impl Hash for Reflection {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.root.hash(state);
    }
}

impl fmt::Debug for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Reflection{:?}", self.root)
    }
}

/// An element of `W`, as its matrix on the root space (row-major).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    n: usize,
    entries: Vec<FieldElement>,
}

impl GroupElement {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.entry(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Image of `α_j` (0-based column).
    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.n).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.entries[0].context().zero();
                for k in 0..n {
                    let a = self.entry(i, k);
                    let b = other.entry(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        GroupElement { n, entries }
    }

    pub fn apply_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        (0..self.n)
            .map(|i| {
                let mut acc = v[0].context().zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.entry(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Floating copy of the matrix, row-major.
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(FieldElement::to_f64).collect()
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[FieldElement]> = self.entries.chunks(self.n).collect();
        f.debug_list().entries(rows).finish()
    }
}

fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut acc = a[0].context().zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// A Coxeter system realized over `Q(2cos(π/L))`.
pub struct CoxeterSystem {
    diagram: CoxeterDiagram,
    field: Arc<FieldContext>,
    form: Vec<Vec<FieldElement>>,
    labeling: ClassLabeling,
    simple_matrices: Vec<GroupElement>,
    simple_reflections: Vec<Reflection>,
    class_cache: Mutex<HashMap<Root, usize>>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("diagram", &self.diagram)
            .field("field", &self.field)
            .finish()
    }
}

impl CoxeterSystem {
    pub fn new(diagram: CoxeterDiagram) -> Self {
        let n = diagram.rank();
        let field = FieldContext::for_labels(diagram.finite_labels());
        let form: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            field.one()
                        } else {
                            field
                                .bond_value(diagram.label(i, j).finite())
                                .expect("labels divide L by construction")
                        }
                    })
                    .collect()
            })
            .collect();
        let labeling = diagram.odd_components();
        let two = field.from_int(2);
        let simple_matrices = (0..n)
            .map(|i| {
                // s_i(v) = v - 2 B(α_i, v) α_i: identity except row i
                let mut entries = Vec::with_capacity(n * n);
                for r in 0..n {
                    for c in 0..n {
                        let id = if r == c { field.one() } else { field.zero() };
                        entries.push(if r == i {
                            &id - &(&two * &form[i][c])
                        } else {
                            id
                        });
                    }
                }
                GroupElement { n, entries }
            })
            .collect();
        let simple_reflections = (0..n)
            .map(|i| {
                let coords = (0..n)
                    .map(|k| if k == i { field.one() } else { field.zero() })
                    .collect();
                Reflection {
                    root: Root { coords },
                    normal: form[i].iter().map(|b| b * &two).collect(),
                }
            })
            .collect();
        Self {
            diagram,
            field,
            form,
            labeling,
            simple_matrices,
            simple_reflections,
            class_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.diagram.rank()
    }

    pub fn diagram(&self) -> &CoxeterDiagram {
        &self.diagram
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn labeling(&self) -> &ClassLabeling {
        &self.labeling
    }

    /// The Gram matrix `B(α_i, α_j)`.
    pub fn form_matrix(&self) -> &[Vec<FieldElement>] {
        &self.form
    }

    /// `B(u, v)`.
    pub fn form(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        let bv: Vec<FieldElement> = self.form.iter().map(|row| dot(row, v)).collect();
        dot(u, &bv)
    }

    pub fn identity(&self) -> GroupElement {
        let n = self.rank();
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    self.field.one()
                } else {
                    self.field.zero()
                }
            })
            .collect();
        GroupElement { n, entries }
    }

    fn check_letter(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            Err(Error::InvalidInput(format!(
                "simple index {i} is not in 1..={}",
                self.rank()
            )))
        } else {
            Ok(())
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.0.iter().try_for_each(|&i| self.check_letter(i))
    }

    pub fn simple_root(&self, i: usize) -> Result<Root> {
        self.check_letter(i)?;
        Ok(self.simple_reflections[i - 1].root.clone())
    }

    pub fn simple_reflection(&self, i: usize) -> Result<GroupElement> {
        self.check_letter(i)?;
        Ok(self.simple_matrices[i - 1].clone())
    }

    /// The reflection `s_i` as a [`Reflection`].
    pub fn simple(&self, i: usize) -> Result<Reflection> {
        self.check_letter(i)?;
        Ok(self.simple_reflections[i - 1].clone())
    }

    /// Product of the letters, left to right.
    pub fn element_of_word(&self, w: &Word) -> Result<GroupElement> {
        self.check_word(w)?;
        let mut g = self.identity();
        for &i in &w.0 {
            self.right_mul_simple(&mut g, i - 1);
        }
        Ok(g)
    }

    /// `g ← g · s_i` for 0-based `i`: column `j` becomes `col_j - 2 B_ij col_i`.
    fn right_mul_simple(&self, g: &mut GroupElement, i: usize) {
        let n = self.rank();
        let col_i = g.column(i);
        for j in 0..n {
            let b = &self.form[i][j];
            if b.is_zero() && j != i {
                continue;
            }
            let factor = if j == i {
                self.field.from_int(2)
            } else {
                b * &self.field.from_int(2)
            };
            for r in 0..n {
                let e = &g.entries[r * n + j] - &(&factor * &col_i[r]);
                g.entries[r * n + j] = e;
            }
        }
    }

    pub fn apply(&self, g: &GroupElement, r: &Root) -> Root {
        Root {
            coords: g.apply_vec(&r.coords),
        }
    }

    /// Letters recorded by greedy right descent, smallest index first.
    fn descent(&self, g: &GroupElement) -> Result<Vec<usize>> {
        let mut g = g.clone();
        let mut letters = Vec::new();
        while !g.is_identity() {
            if letters.len() > DESCENT_CAP {
                return Err(Error::Internal("descent did not terminate".into()));
            }
            let i = (0..self.rank())
                .find(|&i| {
                    Root {
                        coords: g.column(i),
                    }
                    .leading_sign()
                        < 0
                })
                .ok_or_else(|| {
                    Error::Internal("non-identity element without a right descent".into())
                })?;
            self.right_mul_simple(&mut g, i);
            letters.push(i + 1);
        }
        Ok(letters)
    }

    /// `ℓ_S(g)`.
    pub fn length(&self, g: &GroupElement) -> Result<usize> {
        self.descent(g).map(|l| l.len())
    }

    /// A reduced word for `g`.
    pub fn word_of(&self, g: &GroupElement) -> Result<Word> {
        let mut letters = self.descent(g)?;
        letters.reverse();
        Ok(Word(letters))
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.element_of_word(&self.word_of(g)?.reversed())
    }

    /// Canonical reflection for a nonzero multiple of a root.
    pub fn reflection_from_vector(&self, v: Vec<FieldElement>) -> Result<Reflection> {
        let lead = v
            .iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::Internal("zero vector is not a root".into()))?
            .inv()?;
        let coords: Vec<FieldElement> = v.iter().map(|c| c * &lead).collect();
        if coords.iter().any(|c| c.sign() < 0) {
            return Err(Error::Internal(format!(
                "root {coords:?} has mixed coordinate signs"
            )));
        }
        let root = Root { coords };
        let bb = self.form(&root.coords, &root.coords);
        let scale = &self.field.from_int(2) * &bb.inv()?;
        let normal = self
            .form
            .iter()
            .map(|row| &dot(row, &root.coords) * &scale)
            .collect();
        Ok(Reflection { root, normal })
    }

    pub fn reflection_from_root(&self, r: &Root) -> Result<Reflection> {
        self.reflection_from_vector(r.coords.clone())
    }

    /// Matrix of `x ↦ x - (2B(β,x)/B(β,β)) β`.
    pub fn reflection_matrix(&self, t: &Reflection) -> GroupElement {
        let n = self.rank();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let id = if i == j {
                    self.field.one()
                } else {
                    self.field.zero()
                };
                entries.push(&id - &(&t.root.coords[i] * &t.normal[j]));
            }
        }
        GroupElement { n, entries }
    }

    /// If `m` is a reflection, its canonical root.
    pub fn reflection_from_matrix(&self, m: &GroupElement) -> Result<Option<Reflection>> {
        let n = self.rank();
        let id = self.identity();
        let Some(col) = (0..n).find_map(|j| {
            let v: Vec<FieldElement> = (0..n).map(|i| id.entry(i, j) - m.entry(i, j)).collect();
            v.iter().any(|c| !c.is_zero()).then_some(v)
        }) else {
            return Ok(None);
        };
        let bb = self.form(&col, &col);
        if bb.sign() <= 0 {
            return Ok(None);
        }
        let t = match self.reflection_from_vector(col) {
            Ok(t) => t,
            Err(Error::Internal(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok((self.reflection_matrix(&t) == *m).then_some(t))
    }

    pub fn reflection_of_word(&self, w: &Word) -> Result<Reflection> {
        if w.is_empty() {
            return Err(Error::NotAReflection(Vec::new()));
        }
        let m = self.element_of_word(w)?;
        self.reflection_from_matrix(&m)?
            .ok_or_else(|| Error::NotAReflection(w.0.clone()))
    }

    /// `g t g⁻¹`.
    pub fn conjugate(&self, t: &Reflection, g: &GroupElement) -> Result<Reflection> {
        self.reflection_from_vector(g.apply_vec(&t.root.coords))
    }

    /// `u^t = t u t`.
    pub fn conjugate_by_reflection(&self, u: &Reflection, t: &Reflection) -> Result<Reflection> {
        if u == t {
            return Ok(u.clone());
        }
        self.reflection_from_vector(t.apply(&u.root.coords))
    }

    /// Depth reduction of `t`'s root to a simple root `α_p`. Returns `p` and
    /// the applied letters `u`, so that `u s_p u⁻¹ = t`.
    pub fn class_witness(&self, t: &Reflection) -> Result<(usize, Word)> {
        let two = self.field.from_int(2);
        let mut beta = t.root.coords.clone();
        let mut letters = Vec::new();
        loop {
            let mut nonzero = beta.iter().enumerate().filter(|(_, c)| !c.is_zero());
            let (first, _) = nonzero
                .next()
                .ok_or_else(|| Error::Internal("zero root".into()))?;
            if nonzero.next().is_none() {
                let p = first + 1;
                let word = Word(letters);
                let check = self.conjugate(
                    &self.simple_reflections[first],
                    &self.element_of_word(&word)?,
                )?;
                if check != *t {
                    return Err(Error::Internal(format!(
                        "class witness for {t:?} failed reconstruction"
                    )));
                }
                return Ok((p, word));
            }
            if letters.len() > DESCENT_CAP {
                return Err(Error::Internal("depth reduction did not terminate".into()));
            }
            let (i, b) = (0..self.rank())
                .map(|i| (i, dot(&self.form[i], &beta)))
                .find(|(_, b)| b.sign() > 0)
                .ok_or_else(|| {
                    Error::Internal(
                        "positive root without a depth-reducing simple reflection".into(),
                    )
                })?;
            beta[i] = &beta[i] - &(&two * &b);
            letters.push(i + 1);
        }
    }

    /// Class id of `t` under the odd-edge labeling.
    pub fn class_of(&self, t: &Reflection) -> Result<usize> {
        if let Some(&c) = self.class_cache.lock().expect("class cache").get(&t.root) {
            return Ok(c);
        }
        let (p, _) = self.class_witness(t)?;
        let c = self.labeling.class_of_simple(p);
        self.class_cache
            .lock()
            .expect("class cache")
            .insert(t.root.clone(), c);
        Ok(c)
    }

    /// A palindromic word `u · p · u⁻¹` representing `t`.
    pub fn word_of_reflection(&self, t: &Reflection) -> Result<Word> {
        let (p, u) = self.class_witness(t)?;
        let mut letters = u.0.clone();
        letters.push(p);
        letters.extend(u.0.iter().rev());
        Ok(Word(letters))
    }

    /// Product `t_1 ⋯ t_m` of reflections.
    pub fn product(&self, factors: &[Reflection]) -> GroupElement {
        factors.iter().fold(self.identity(), |acc, t| {
            acc.mul(&self.reflection_matrix(t))
        })
    }

    pub fn rational(&self, v: BigRational) -> FieldElement {
        self.field.rational(v)
    }
}
