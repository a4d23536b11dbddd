//! Oracle agreement on built-in finite systems.

use std::collections::BTreeMap;

use hurwitz_core::hurwitz::class_multiset;
use hurwitz_core::oracle::{all_factorizations, brute_conjugacy, enumerate_group, orbit_partition};
use hurwitz_core::{ClassMultiset, CoxeterDiagram, CoxeterSystem, Label, Result, Word};
use serde::Serialize;

#[derive(Serialize)]
pub struct SystemReport {
    pub name: &'static str,
    pub order: usize,
    pub reflections: usize,
    pub classes_agree: bool,
    pub lengths_agree: bool,
    /// Orbit counts by factorization length; each must match the class-multiset partition.
    pub orbits: BTreeMap<usize, usize>,
    pub orbits_agree: bool,
}

impl SystemReport {
    pub fn passed(&self) -> bool {
        self.classes_agree && self.lengths_agree && self.orbits_agree
    }
}

pub fn systems() -> Vec<(&'static str, CoxeterDiagram)> {
    vec![
        ("A2", CoxeterDiagram::dihedral(Label::Finite(3))),
        ("B2", CoxeterDiagram::dihedral(Label::Finite(4))),
        ("A1xA1", CoxeterDiagram::dihedral(Label::Finite(2))),
        ("I2(5)", CoxeterDiagram::dihedral(Label::Finite(5))),
        ("I2(6)", CoxeterDiagram::dihedral(Label::Finite(6))),
        ("A3", CoxeterDiagram::type_a(3).expect("rank 3")),
    ]
}

pub fn check(name: &'static str, diagram: CoxeterDiagram) -> Result<SystemReport> {
    let sys = CoxeterSystem::new(diagram);
    let table = enumerate_group(&sys, 10_000)?;

    let mut classes_agree = true;
    let brute = brute_conjugacy(&table);
    for class in &brute {
        let ids = class
            .iter()
            .map(|&g| sys.class_of(&table.reflection(&sys, g)?))
            .collect::<Result<Vec<_>>>()?;
        classes_agree &= ids.windows(2).all(|w| w[0] == w[1]);
    }
    classes_agree &= brute.len() == sys.labeling().class_count();

    let mut lengths_agree = true;
    for g in 0..table.order() {
        lengths_agree &= sys.length(table.element(g))? == table.word(g).len();
    }

    let n = sys.rank();
    let c = table.of_word(&Word((1..=n).collect()));
    let mut orbits = BTreeMap::new();
    let mut orbits_agree = true;
    for len in [n, n + 2] {
        let tuples = all_factorizations(&table, c, len);
        let partition = orbit_partition(&table, &tuples)?;
        let mut by_multiset: BTreeMap<ClassMultiset, Vec<usize>> = BTreeMap::new();
        for (k, t) in tuples.iter().enumerate() {
            let factors = t
                .iter()
                .map(|&g| table.reflection(&sys, g))
                .collect::<Result<Vec<_>>>()?;
            by_multiset
                .entry(class_multiset(&sys, &factors)?)
                .or_default()
                .push(k);
        }
        let mut expected: Vec<Vec<usize>> = by_multiset.into_values().collect();
        expected.sort_by_key(|g| g[0]);
        orbits_agree &= expected == partition;
        orbits.insert(len, partition.len());
    }

    Ok(SystemReport {
        name,
        order: table.order(),
        reflections: table.reflections().len(),
        classes_agree,
        lengths_agree,
        orbits,
        orbits_agree,
    })
}
