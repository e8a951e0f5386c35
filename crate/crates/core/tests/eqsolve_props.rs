mod common;

use common::{
    bisim, distinct_elements, random_closed_system, random_element, random_map, random_system, rng,
};
use indexmap::IndexMap;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use varcoalg::coalg::{CanonicalElement, IndexSet, RegularElement};
use varcoalg::eqsolve::{
    case_map, inl, inl_map, inr, inr_map, sigma_embed, solve, subst, sum_map, EquationSystem, FiniteMap,
    Leaf, TermX,
};

fn two() -> IndexSet {
    IndexSet::new(2)
}

fn assert_same_map(a: &FiniteMap, b: &FiniteMap) {
    assert_eq!(a.domain(), b.domain());
    for (k, v) in a.iter() {
        assert!(bisim(v.element(), b.get_canonical(k).unwrap().element()));
    }
}

/// Direct construction of `ĥ(t)` through tuple building.
fn by_tuples(f: &IndexMap<String, RegularElement>, index: IndexSet, t: &TermX) -> RegularElement {
    match t {
        TermX::Atom => RegularElement::atom(index),
        TermX::Tuple(leaves) => {
            let kids: Vec<RegularElement> = leaves
                .iter()
                .map(|l| match l {
                    Leaf::Var(v) => f[v].clone(),
                    Leaf::Sub(s) => by_tuples(f, index, s),
                    Leaf::Const(c) => c.clone(),
                })
                .collect();
            RegularElement::tuple(index, &kids).unwrap()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn solution_satisfies_its_equations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let index = IndexSet::new(2 + (seed % 2) as usize);
        let sys = random_system(&mut r, index, 5, 3);
        let f = solve(&sys).unwrap();
        for (x, nu) in sys.equations() {
            prop_assert!(bisim(&f[x], &subst(index, &f, nu).unwrap()));
        }
    }

    #[test]
    fn solution_is_unique_under_renaming(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sys = random_system(&mut r, two(), 5, 3);
        let names: Vec<String> = sys.variables().cloned().collect();
        let mut renamed: Vec<String> = (0..names.len()).map(|i| format!("v{i}")).collect();
        renamed.shuffle(&mut r);
        let rename = |v: &String| renamed[names.iter().position(|n| n == v).unwrap()].clone();
        let mut eqs: Vec<(String, TermX)> = sys
            .equations()
            .iter()
            .map(|(x, t)| (rename(x), t.map_vars(&mut |v| rename(v))))
            .collect();
        eqs.shuffle(&mut r);
        let f = solve(&sys).unwrap();
        let g = solve(&EquationSystem::new(two(), eqs).unwrap()).unwrap();
        for x in &names {
            prop_assert!(bisim(&f[x], &g[&rename(x)]));
        }
    }

    #[test]
    fn substitution_is_a_tuple_homomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sys = random_system(&mut r, two(), 4, 3);
        let f: IndexMap<String, RegularElement> = sys
            .variables()
            .map(|v| (v.clone(), random_element(&mut r, two(), 4)))
            .collect();
        for t in sys.equations().values() {
            prop_assert!(bisim(&subst(two(), &f, t).unwrap(), &by_tuples(&f, two(), t)));
        }
    }

    #[test]
    fn closed_systems_need_no_solving(seed in any::<u64>()) {
        let sys = random_closed_system(&mut rng(seed), two(), 3);
        let f = solve(&sys).unwrap();
        let empty = IndexMap::new();
        for (x, t) in sys.equations() {
            prop_assert!(bisim(&f[x], &by_tuples(&empty, two(), t)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn embedding_is_undone_by_substitution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = random_element(&mut r, two(), 6);
        let f: IndexMap<String, RegularElement> =
            [("x".to_string(), random_element(&mut r, two(), 3))].into_iter().collect();
        prop_assert!(bisim(&subst(two(), &f, &sigma_embed::<String>(&u)).unwrap(), &u));
    }

    #[test]
    fn coproduct_identities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let pool = distinct_elements(&mut r, two(), 8, 3);
        let (a, rest) = pool.split_at(2);
        let (b, rest) = rest.split_at(2);
        let (c, d) = rest.split_at(2);
        let f = random_map(&mut r, two(), a, c);
        let g = random_map(&mut r, two(), b, c);
        let h = random_map(&mut r, two(), c, d);
        let j = random_map(&mut r, two(), a, &pool);
        let k = random_map(&mut r, two(), b, &pool);
        let dom = |m: &FiniteMap| m.domain();
        let l = inl_map(two(), &dom(&f)).unwrap();
        let rr = inr_map(two(), &dom(&g)).unwrap();
        let fg = case_map(&f, &g).unwrap();

        assert_same_map(&fg.compose(&l).unwrap(), &f);
        assert_same_map(&fg.compose(&rr).unwrap(), &g);
        assert_same_map(
            &h.compose(&fg).unwrap(),
            &case_map(&h.compose(&f).unwrap(), &h.compose(&g).unwrap()).unwrap(),
        );
        let id = FiniteMap::identity(two(), fg.domain().iter().map(CanonicalElement::element)).unwrap();
        assert_same_map(&case_map(&l, &rr).unwrap(), &id);

        let jk = sum_map(&j, &k).unwrap();
        let fg_on_images = case_map(
            &random_map(&mut r, two(), &elements(&j.image()), d),
            &random_map(&mut r, two(), &elements(&k.image()), d),
        )
        .unwrap();
        let (f2, g2) = split_case(&fg_on_images);
        assert_same_map(
            &fg_on_images.compose(&jk).unwrap(),
            &case_map(&f2.compose(&j).unwrap(), &g2.compose(&k).unwrap()).unwrap(),
        );
        let la = inl_map(two(), &dom(&j)).unwrap();
        let lb = inr_map(two(), &dom(&k)).unwrap();
        assert_same_map(&jk.compose(&la).unwrap(), &inl_map(two(), &j.image()).unwrap().compose(&j).unwrap());
        assert_same_map(&jk.compose(&lb).unwrap(), &inr_map(two(), &k.image()).unwrap().compose(&k).unwrap());

        // The sum map sends each tagged point to the tagged image, built directly.
        for (x, y) in j.iter() {
            let tagged = inl(x.element()).unwrap();
            prop_assert!(bisim(jk.get(&tagged).unwrap(), &inl(y.element()).unwrap()));
        }
        for (x, y) in k.iter() {
            let tagged = inr(x.element()).unwrap();
            prop_assert!(bisim(jk.get(&tagged).unwrap(), &inr(y.element()).unwrap()));
        }
    }
}

fn elements(s: &std::collections::BTreeSet<CanonicalElement>) -> Vec<RegularElement> {
    s.iter().map(|c| c.element().clone()).collect()
}

/// Recovers `f` and `g` from `[f, g]` by reading off the tagged keys.
fn split_case(fg: &FiniteMap) -> (FiniteMap, FiniteMap) {
    let mut f = FiniteMap::new(fg.index());
    let mut g = FiniteMap::new(fg.index());
    for (k, v) in fg.iter() {
        let kids = k.element().children().unwrap();
        if kids[0].is_atom() {
            g.insert(&kids[1], v.element()).unwrap();
        } else {
            f.insert(&kids[1], v.element()).unwrap();
        }
    }
    (f, g)
}

#[test]
fn case_map_needs_pairs() {
    let one = IndexSet::new(1);
    let f = FiniteMap::new(one);
    assert!(case_map(&f, &f).is_err());
}
