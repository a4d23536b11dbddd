use std::sync::OnceLock;

use hurwitz_core::hurwitz::{apply_generator, class_multiset, replay};
use hurwitz_core::pathrewrite::{normalize, profile};
use hurwitz_core::{
    connect, BraidWord, CoxeterDiagram, CoxeterSystem, Factorization, FieldContext, FieldElement,
    Label, Reflection, Word,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn systems() -> &'static [CoxeterSystem] {
    static SYSTEMS: OnceLock<Vec<CoxeterSystem>> = OnceLock::new();
    SYSTEMS.get_or_init(|| {
        let mut out: Vec<CoxeterSystem> = [
            Label::Finite(3),
            Label::Finite(4),
            Label::Finite(2),
            Label::Finite(5),
        ]
        .into_iter()
        .chain([Label::Finite(6), Label::Infinite])
        .map(|m| CoxeterSystem::new(CoxeterDiagram::dihedral(m)))
        .collect();
        out.push(CoxeterSystem::new(CoxeterDiagram::type_a(3).unwrap()));
        for text in [
            "rank 3; m 1 2 5; m 2 3 3",
            "rank 3; m 1 2 3; m 2 3 3; m 1 3 3",
            "rank 3; m 1 2 inf; m 2 3 3; m 1 3 4",
        ] {
            out.push(CoxeterSystem::new(CoxeterDiagram::parse(text).unwrap()));
        }
        out
    })
}

fn system_strategy() -> impl Strategy<Value = usize> {
    0..systems().len()
}

fn fold_letters(sys: &CoxeterSystem, raw: &[usize]) -> Word {
    Word(raw.iter().map(|x| x % sys.rank() + 1).collect())
}

/// `u s_q u⁻¹` from raw indices.
fn reflection(sys: &CoxeterSystem, q: usize, u: &[usize]) -> Reflection {
    let u = fold_letters(sys, u);
    let mut word = u.0.clone();
    word.push(q % sys.rank() + 1);
    word.extend(u.0.iter().rev());
    sys.reflection_of_word(&Word(word)).unwrap()
}

type RawReflection = (usize, Vec<usize>);

fn raw_reflection() -> impl Strategy<Value = RawReflection> {
    (0usize..8, prop::collection::vec(0usize..8, 0..=3))
}

fn raw_factors(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<RawReflection>> {
    prop::collection::vec(raw_reflection(), len)
}

fn factorization(sys: &CoxeterSystem, raw: &[RawReflection]) -> Factorization {
    Factorization::from_factors(
        sys,
        raw.iter().map(|(q, u)| reflection(sys, *q, u)).collect(),
    )
}

fn raw_braid(max: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..8, any::<bool>()), 0..=max)
}

fn braid(len: usize, raw: &[(usize, bool)]) -> BraidWord {
    BraidWord(
        raw.iter()
            .map(|&(i, inv)| {
                let i = (i % (len - 1) + 1) as i32;
                if inv {
                    -i
                } else {
                    i
                }
            })
            .collect(),
    )
}

/// A factorization of `s_1 ⋯ s_n` with pairs inserted and scrambled.
fn coxeter_factorization(
    sys: &CoxeterSystem,
    pairs: &[(RawReflection, usize)],
    scramble: &[(usize, bool)],
) -> Factorization {
    let mut factors: Vec<Reflection> = (1..=sys.rank()).map(|i| sys.simple(i).unwrap()).collect();
    for ((q, u), at) in pairs {
        let t = reflection(sys, *q, u);
        let at = at % (factors.len() + 1);
        factors.insert(at, t.clone());
        factors.insert(at, t);
    }
    let f = Factorization::from_factors(sys, factors);
    let b = braid(f.len(), scramble);
    replay(sys, &f, &b).unwrap()
}

fn element(ctx: &std::sync::Arc<FieldContext>, raw: &[(i64, i64)]) -> FieldElement {
    ctx.from_poly(
        raw.iter()
            .map(|&(n, d)| BigRational::new(n.into(), d.into()))
            .collect(),
    )
}

fn raw_element() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-50i64..=50, 1i64..=12), 1..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(l in 1u64..=12, a in raw_element(), b in raw_element(), c in raw_element()) {
        let ctx = FieldContext::with_l(l);
        let (a, b, c) = (element(&ctx, &a), element(&ctx, &b), element(&ctx, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!((&a * &a).sign(), 1);
        }
    }

    #[test]
    fn sign_matches_float_value(l in 2u64..=12, a in raw_element()) {
        let ctx = FieldContext::with_l(l);
        let a = element(&ctx, &a);
        let v = a.to_f64();
        if v.abs() > 1e-9 {
            prop_assert_eq!(a.sign(), if v > 0.0 { 1 } else { -1 });
        }
        prop_assert_eq!((-&a).sign(), -a.sign());
    }

    #[test]
    fn chebyshev_values(l in 2u64..=12, k in 0u64..60) {
        let ctx = FieldContext::with_l(l);
        let expected = 2.0 * (k as f64 * std::f64::consts::PI / l as f64).cos();
        prop_assert!((ctx.chebyshev_value(k).to_f64() - expected).abs() < 1e-9);
    }

    #[test]
    fn word_round_trip(s in system_strategy(), raw in prop::collection::vec(0usize..8, 0..=8)) {
        let sys = &systems()[s];
        let w = fold_letters(sys, &raw);
        let g = sys.element_of_word(&w).unwrap();
        let reduced = sys.word_of(&g).unwrap();
        prop_assert_eq!(sys.element_of_word(&reduced).unwrap(), g.clone());
        prop_assert_eq!(reduced.len(), sys.length(&g).unwrap());
        prop_assert!(reduced.len() <= w.len());
        prop_assert_eq!(reduced.len() % 2, w.len() % 2);
        prop_assert_eq!(sys.inverse(&g).unwrap().mul(&g), sys.identity());
    }

    #[test]
    fn length_parity_step(s in system_strategy(), raw in prop::collection::vec(0usize..8, 0..=8), i in 0usize..8) {
        let sys = &systems()[s];
        let g = sys.element_of_word(&fold_letters(sys, &raw)).unwrap();
        let i = i % sys.rank() + 1;
        let gs = g.mul(&sys.simple_reflection(i).unwrap());
        let (a, b) = (sys.length(&g).unwrap(), sys.length(&gs).unwrap());
        prop_assert!(a + 1 == b || b + 1 == a);
    }

    #[test]
    fn reflections_and_conjugation(
        s in system_strategy(),
        t in raw_reflection(),
        raw in prop::collection::vec(0usize..8, 0..=6),
    ) {
        let sys = &systems()[s];
        let t = reflection(sys, t.0, &t.1);
        prop_assert!(t.root().coords().iter().all(|c| c.sign() >= 0));
        let g = sys.element_of_word(&fold_letters(sys, &raw)).unwrap();
        let conj = sys.conjugate(&t, &g).unwrap();
        prop_assert!(conj.root().coords().iter().all(|c| c.sign() >= 0));
        prop_assert_eq!(sys.conjugate(&conj, &sys.inverse(&g).unwrap()).unwrap(), t.clone());
        prop_assert_eq!(sys.class_of(&conj).unwrap(), sys.class_of(&t).unwrap());
        let w = sys.word_of_reflection(&t).unwrap();
        prop_assert_eq!(w.reversed(), w.clone());
        prop_assert_eq!(sys.reflection_of_word(&w).unwrap(), t);
    }

    #[test]
    fn move_invariants(s in system_strategy(), raw in raw_factors(4..=6), i in 0usize..8, j in 0usize..8) {
        let sys = &systems()[s];
        let f = factorization(sys, &raw);
        let n = f.len();
        let ms = class_multiset(sys, f.factors()).unwrap();
        let i = i % (n - 1) + 1;
        for sign in [1i8, -1] {
            let g = apply_generator(sys, &f, i, sign).unwrap();
            prop_assert_eq!(sys.product(g.factors()), f.target().clone());
            prop_assert_eq!(class_multiset(sys, g.factors()).unwrap(), ms.clone());
            prop_assert_eq!(apply_generator(sys, &g, i, -sign).unwrap(), f.clone());
        }
        let run = |m: &[i32]| replay(sys, &f, &BraidWord(m.to_vec())).unwrap();
        let b = (j % (n - 2) + 1) as i32;
        prop_assert_eq!(run(&[b, b + 1, b]), run(&[b + 1, b, b + 1]));
        let far = (i as i32 + 2 + (j % 2) as i32).min(n as i32 - 1);
        if far >= i as i32 + 2 {
            prop_assert_eq!(run(&[i as i32, far]), run(&[far, i as i32]));
        }
    }

    #[test]
    fn braid_replay_inverts(s in system_strategy(), raw in raw_factors(2..=6), moves in raw_braid(12)) {
        let sys = &systems()[s];
        let f = factorization(sys, &raw);
        let b = braid(f.len(), &moves);
        let g = replay(sys, &f, &b).unwrap();
        prop_assert_eq!(class_multiset(sys, g.factors()).unwrap(), class_multiset(sys, f.factors()).unwrap());
        prop_assert_eq!(replay(sys, &g, &b.inverse()).unwrap(), f);
    }

    #[test]
    fn normalize_postconditions(
        s in system_strategy(),
        pairs in prop::collection::vec((raw_reflection(), 0usize..8), 0..=2),
        scramble in raw_braid(6),
    ) {
        let sys = &systems()[s];
        let f = coxeter_factorization(sys, &pairs, &scramble);
        let nf = normalize(sys, &f).unwrap();
        let replayed = replay(sys, &f, &nf.braid).unwrap();
        let flat = nf.flat();
        prop_assert_eq!(replayed.factors(), flat.as_slice());
        prop_assert_eq!(nf.core.len(), sys.rank());
        prop_assert_eq!(nf.pairs.len(), pairs.len());
        prop_assert!(profile(sys, nf.core.factors()).unwrap().is_increasing());
        prop_assert_eq!(class_multiset(sys, &nf.flat()).unwrap(), class_multiset(sys, f.factors()).unwrap());
        prop_assert_eq!(sys.product(&nf.flat()), f.target().clone());
        let again = normalize(sys, &Factorization::from_factors(sys, nf.flat())).unwrap();
        prop_assert!(again.braid.is_empty());
        prop_assert_eq!(again.core, nf.core);
        prop_assert_eq!(again.pairs, nf.pairs);
    }

    #[test]
    fn diagram_round_trips(rank in 1usize..=5, raw in prop::collection::vec(0u32..8, 10)) {
        let mut text = format!("rank {rank}\n");
        let mut k = 0;
        for i in 1..=rank {
            for j in i + 1..=rank {
                let label = match raw[k] {
                    0 => "inf".to_string(),
                    v => (v + 1).to_string(),
                };
                text.push_str(&format!("m {i} {j} {label}\n"));
                k += 1;
            }
        }
        let d = CoxeterDiagram::parse(&text).unwrap();
        prop_assert_eq!(CoxeterDiagram::from_json(&d.to_json()).unwrap(), d.clone());
        prop_assert_eq!(d.odd_components(), d.odd_components());
        let labeling = d.odd_components();
        let reps: Vec<usize> = (1..=labeling.class_count()).map(|c| labeling.representative(c).unwrap()).collect();
        prop_assert!(reps.windows(2).all(|w| w[0] < w[1]));
        for i in 1..=rank {
            prop_assert!(reps[labeling.class_of_simple(i) - 1] <= i);
        }
    }

    #[test]
    fn all_odd_diagrams_have_one_class_per_component(rank in 1usize..=6, raw in prop::collection::vec(0u32..4, 15)) {
        let mut d = CoxeterDiagram::new(rank).unwrap();
        let mut parent: Vec<usize> = (0..rank).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                x = p[x];
            }
            x
        }
        let mut k = 0;
        for i in 0..rank {
            for j in i + 1..rank {
                if raw[k] > 0 {
                    d.set(i + 1, j + 1, Label::Finite(2 * raw[k] + 1)).unwrap();
                    let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                    parent[a] = b;
                }
                k += 1;
            }
        }
        let components = (0..rank).filter(|&x| root(&mut parent, x) == x).count();
        prop_assert_eq!(d.odd_components().class_count(), components);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn witnesses_replay(
        s in system_strategy(),
        pairs in prop::collection::vec((raw_reflection(), 0usize..8), 0..=1),
        scramble in raw_braid(6),
        moves in raw_braid(10),
    ) {
        let sys = &systems()[s];
        let f = coxeter_factorization(sys, &pairs, &scramble);
        let g = replay(sys, &f, &braid(f.len(), &moves)).unwrap();
        let cw = sys.diagram().coxeter_word(&(1..=sys.rank()).collect::<Vec<_>>()).unwrap();
        let d = connect(sys, &f, &g, &cw).unwrap();
        prop_assert!(d.equivalent);
        prop_assert_eq!(replay(sys, &f, d.witness.as_ref().unwrap()).unwrap(), g);
    }
}
