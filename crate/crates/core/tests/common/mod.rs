#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{RngExt, SeedableRng};
use varcoalg::coalg::{CanonicalElement, IndexSet, NodeShape, RegularElement};
use varcoalg::eqsolve::{EquationSystem, FiniteMap, Leaf, TermX};
use varcoalg::functors::{FCoalgebra, FValue, Functor, FunctorExpr};
use varcoalg::hfs::HfSet;
use varcoalg::variant::Family;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn bisim(a: &RegularElement, b: &RegularElement) -> bool {
    a.bisim(b).unwrap().is_bisimilar()
}

/// Membership in `V_n` by rank, independent of stage enumeration.
pub fn in_stage(x: &HfSet, n: usize) -> bool {
    x.rank() < n
}

/// A random member of `V_n` (so of rank below `n`), `n ≥ 1`.
pub fn random_stage_member(rng: &mut StdRng, n: usize) -> HfSet {
    if n <= 1 {
        return HfSet::empty();
    }
    let k = rng.random_range(0..=4);
    HfSet::from_members((0..k).map(|_| random_stage_member(rng, n - 1)))
}

/// A random subset of `V_n`.
pub fn random_stage_subset(rng: &mut StdRng, n: usize) -> HfSet {
    random_stage_member(rng, n + 1)
}

/// A family whose keys are members of `V_n` and whose values are subsets of `V_n`.
pub fn random_family(rng: &mut StdRng, n: usize) -> Family {
    let k = rng.random_range(0..=4);
    (0..k)
        .map(|_| (random_stage_member(rng, n), random_stage_subset(rng, n)))
        .collect()
}

/// A random pointed coalgebra with between 1 and `max_states` states.
pub fn random_element(rng: &mut StdRng, index: IndexSet, max_states: usize) -> RegularElement {
    let n = rng.random_range(1..=max_states);
    let trans: Vec<(usize, NodeShape)> = (0..n)
        .map(|s| {
            let shape = if rng.random_bool(0.3) {
                NodeShape::Atom
            } else {
                NodeShape::Tuple((0..index.size()).map(|_| rng.random_range(0..n)).collect())
            };
            (s, shape)
        })
        .collect();
    let root = rng.random_range(0..n);
    RegularElement::build(index, trans, &root).unwrap()
}

/// A random element whose coalgebra has no cycles, so it denotes a finite set.
pub fn random_well_founded(rng: &mut StdRng, index: IndexSet, max_states: usize) -> RegularElement {
    let n = rng.random_range(1..=max_states);
    let trans: Vec<(usize, NodeShape)> = (0..n)
        .map(|s| {
            let shape = if s == n - 1 || rng.random_bool(0.3) {
                NodeShape::Atom
            } else {
                NodeShape::Tuple((0..index.size()).map(|_| rng.random_range(s + 1..n)).collect())
            };
            (s, shape)
        })
        .collect();
    RegularElement::build(index, trans, &0).unwrap()
}

/// A bisimilar copy with every state duplicated and edges sent to a random copy.
pub fn unfolded(rng: &mut StdRng, e: &RegularElement) -> RegularElement {
    let shapes = e.coalgebra().shapes();
    let mut trans = Vec::new();
    for copy in 0..2u8 {
        for (s, shape) in shapes.iter().enumerate() {
            let shape = match shape {
                NodeShape::Atom => NodeShape::Atom,
                NodeShape::Tuple(cs) => {
                    NodeShape::Tuple(cs.iter().map(|&c| (c, rng.random_range(0..2u8))).collect())
                }
            };
            trans.push(((s, copy), shape));
        }
    }
    let root = (e.root(), rng.random_range(0..2u8));
    RegularElement::build(e.index(), trans, &root).unwrap()
}

/// Redirects one random edge or flips one random node kind.
pub fn mutated(rng: &mut StdRng, e: &RegularElement) -> RegularElement {
    let mut shapes: Vec<NodeShape> = e.coalgebra().shapes().to_vec();
    let n = shapes.len();
    let s = rng.random_range(0..n);
    shapes[s] = match &shapes[s] {
        NodeShape::Atom => NodeShape::Tuple((0..e.index().size()).map(|_| rng.random_range(0..n)).collect()),
        NodeShape::Tuple(_) if rng.random_bool(0.3) => NodeShape::Atom,
        NodeShape::Tuple(cs) => {
            let mut cs = cs.clone();
            let i = rng.random_range(0..cs.len());
            cs[i] = rng.random_range(0..n);
            NodeShape::Tuple(cs)
        }
    };
    RegularElement::build(e.index(), shapes.into_iter().enumerate(), &e.root()).unwrap()
}

/// Pairs for comparing bisimulation against expansion: a mix of unrelated
/// elements, bisimilar unfoldings, and near misses. Sizes keep the expansion
/// depth bound `|S1|·|S2| + 2` affordable.
pub fn random_comparison_pair(rng: &mut StdRng) -> (RegularElement, RegularElement) {
    let (index, max_states) = match rng.random_range(0..10) {
        0 => (IndexSet::new(1), 4),
        1 => (IndexSet::new(3), 2),
        _ => (IndexSet::new(2), 3),
    };
    let a = random_element(rng, index, max_states);
    match rng.random_range(0..3) {
        0 => (a, random_element(rng, index, max_states)),
        1 => {
            let b = unfolded(rng, &a);
            (a, b)
        }
        _ => {
            let b = mutated(rng, &a);
            (a, b)
        }
    }
}

/// Small constants used as leaves and functor constants.
pub fn constant_pool(index: IndexSet) -> Vec<RegularElement> {
    let atom = RegularElement::atom(index);
    let zero = RegularElement::zero(index);
    let mut pool = vec![atom.clone(), zero.clone()];
    if index.size() >= 2 {
        let mut children = vec![zero.clone(); index.size()];
        children[0] = atom.clone();
        children[1] = atom.clone();
        pool.push(RegularElement::tuple(index, &children).unwrap());
        let stream = RegularElement::build(
            index,
            [
                (0usize, NodeShape::Tuple((0..index.size()).map(|i| if i == 1 { 0 } else { 1 }).collect())),
                (1, NodeShape::Atom),
            ],
            &0,
        )
        .unwrap();
        pool.push(stream);
    }
    pool
}

pub fn random_term(
    rng: &mut StdRng,
    index: IndexSet,
    vars: &[String],
    depth: usize,
    consts: &[RegularElement],
) -> TermX {
    if depth == 0 || rng.random_bool(0.2) {
        return TermX::Atom;
    }
    TermX::Tuple(
        (0..index.size())
            .map(|_| match rng.random_range(0..10) {
                0..=4 if !vars.is_empty() => Leaf::Var(vars.choose(rng).unwrap().clone()),
                5 | 6 => Leaf::Const(consts.choose(rng).unwrap().clone()),
                _ => Leaf::Sub(random_term(rng, index, vars, depth - 1, consts)),
            })
            .collect(),
    )
}

pub fn random_system(rng: &mut StdRng, index: IndexSet, max_vars: usize, depth: usize) -> EquationSystem {
    let n = rng.random_range(1..=max_vars);
    let vars: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let consts = constant_pool(index);
    let eqs: Vec<(String, TermX)> = vars
        .iter()
        .map(|v| (v.clone(), random_term(rng, index, &vars, depth, &consts)))
        .collect();
    EquationSystem::new(index, eqs).unwrap()
}

/// A variable-free system: only constants and nested tuples.
pub fn random_closed_system(rng: &mut StdRng, index: IndexSet, depth: usize) -> EquationSystem {
    let consts = constant_pool(index);
    let n = rng.random_range(1..=3);
    let eqs: Vec<(String, TermX)> = (0..n)
        .map(|i| (format!("c{i}"), random_term(rng, index, &[], depth, &consts)))
        .collect();
    EquationSystem::new(index, eqs).unwrap()
}

/// A map sending each member of `domain` to a random member of `codomain`.
pub fn random_map(
    rng: &mut StdRng,
    index: IndexSet,
    domain: &[RegularElement],
    codomain: &[RegularElement],
) -> FiniteMap {
    let mut m = FiniteMap::new(index);
    for x in domain {
        let y = codomain.choose(rng).unwrap();
        m.insert(x, y).unwrap();
    }
    m
}

/// A pool of pairwise non-bisimilar elements drawn from random coalgebras.
pub fn distinct_elements(rng: &mut StdRng, index: IndexSet, count: usize, max_states: usize) -> Vec<RegularElement> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut pool = constant_pool(index);
    pool.reverse();
    while out.len() < count {
        let e = pool
            .pop()
            .unwrap_or_else(|| random_element(rng, index, max_states));
        if seen.insert(e.canonical()) {
            out.push(e);
        }
    }
    out
}

pub fn canonical_set(elems: &[RegularElement]) -> std::collections::BTreeSet<CanonicalElement> {
    elems.iter().map(RegularElement::canonical).collect()
}

/// A random guarded functor expression of the given depth whose value count
/// over `points` stays at most `max_values`.
pub fn random_functor(rng: &mut StdRng, index: IndexSet, depth: usize, points: usize, max_values: usize) -> Functor {
    loop {
        let expr = random_guarded(rng, index, depth);
        let f = Functor::new(index, expr).unwrap();
        let fake: Vec<usize> = (0..points).collect();
        if let Ok(values) = f.enumerate(&fake) {
            if !values.is_empty() && values.len() <= max_values {
                return f;
            }
        }
    }
}

fn random_guarded(rng: &mut StdRng, index: IndexSet, depth: usize) -> FunctorExpr {
    let consts = constant_pool(index);
    let depth = depth.max(1);
    match rng.random_range(0..9) {
        0 => random_const(rng, &consts),
        1 | 2 => FunctorExpr::prod(random_sub(rng, index, depth - 1), random_sub(rng, index, depth - 1)),
        3 | 4 => FunctorExpr::sum(random_sub(rng, index, depth - 1), random_sub(rng, index, depth - 1)),
        5 | 6 => {
            let k = rng.random_range(1..=2);
            let keys: Vec<&RegularElement> = consts.sample(rng, k).collect();
            FunctorExpr::FamSum(
                keys.into_iter()
                    .map(|c| (c.canonical(), random_sub(rng, index, depth - 1)))
                    .collect(),
            )
        }
        _ => {
            let mut positions: Vec<usize> = (0..index.size()).collect();
            positions.shuffle(rng);
            let k = rng.random_range(0..=index.size().min(2));
            FunctorExpr::FamProd(
                positions[..k]
                    .iter()
                    .map(|&i| (i, random_sub(rng, index, depth - 1)))
                    .collect::<BTreeMap<_, _>>(),
            )
        }
    }
}

fn random_const(rng: &mut StdRng, consts: &[RegularElement]) -> FunctorExpr {
    let k = rng.random_range(1..=2);
    FunctorExpr::constant(consts.sample(rng, k))
}

fn random_sub(rng: &mut StdRng, index: IndexSet, depth: usize) -> FunctorExpr {
    if depth == 0 || rng.random_bool(0.4) {
        if rng.random_bool(0.7) {
            FunctorExpr::Slot
        } else {
            random_const(rng, &constant_pool(index))
        }
    } else {
        random_guarded(rng, index, depth)
    }
}

/// A random coalgebra for `f` on points `0..n`.
pub fn random_fcoalgebra(rng: &mut StdRng, f: &Functor, n: usize) -> FCoalgebra<usize> {
    let points: Vec<usize> = (0..n).collect();
    let values = f.enumerate(&points).unwrap();
    FCoalgebra::new(points.iter().map(|&p| (p, values.choose(rng).unwrap().clone()))).unwrap()
}

/// The same coalgebra with points renamed by `perm` and listed in a shuffled order.
pub fn permuted(rng: &mut StdRng, c: &FCoalgebra<usize>, perm: &[usize]) -> FCoalgebra<usize> {
    let mut entries: Vec<(usize, FValue<usize>)> = c
        .iter()
        .map(|(&p, v)| (perm[p], v.map_points(&mut |q| perm[*q])))
        .collect();
    entries.shuffle(rng);
    FCoalgebra::new(entries).unwrap()
}
