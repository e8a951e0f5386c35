//! Set equations over `U`.
//!
//! [`TermX`] is the syntax of `U_X = Q(X +̃ U_X)`: a right-hand side is the atom or
//! an `I`-tuple whose components are either a variable (the left summand) or a
//! nested term or constant (the right summand). [`solve`] flattens a system into
//! one shared coalgebra whose states are the variables and the tuple nodes; the
//! solution of `x` is that coalgebra pointed at `x`. [`subst`] grafts an
//! assignment into a term the same way.
//!
//! The second half is the coproduct algebra on finite maps between subsets of
//! `U`: injections, case analysis `[f, g]` and the sum `j +̃ k`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use indexmap::IndexMap;

use crate::coalg::{CanonicalElement, Grafter, IndexSet, NodeShape, RegularElement};
use crate::error::{Error, Result};

/// Anything usable as an equation variable.
pub trait Variable: Clone + Eq + Hash + Ord + fmt::Debug + fmt::Display {}

impl<T: Clone + Eq + Hash + Ord + fmt::Debug + fmt::Display> Variable for T {}

/// One component of a tuple term.
#[derive(Debug, Clone)]
pub enum Leaf<V = String> {
    /// `Inl(x)`: a variable.
    Var(V),
    /// `Inr(t)`: a nested term.
    Sub(TermX<V>),
    /// `Inr(σ(c))`: an embedded constant. Needed for cyclic constants such as 0,
    /// which have no finite variable-free term.
    Const(RegularElement),
}

/// A right-hand side: a member of `U_X` with finitely many nodes.
#[derive(Debug, Clone)]
pub enum TermX<V = String> {
    Atom,
    Tuple(Vec<Leaf<V>>),
}

impl<V: Variable> TermX<V> {
    pub fn variables(&self) -> BTreeSet<V> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<V>) {
        if let TermX::Tuple(leaves) = self {
            for leaf in leaves {
                match leaf {
                    Leaf::Var(v) => {
                        out.insert(v.clone());
                    }
                    Leaf::Sub(t) => t.collect_variables(out),
                    Leaf::Const(_) => {}
                }
            }
        }
    }

    /// Checks tuple arities and the index set of every constant.
    pub fn check(&self, index: IndexSet) -> Result<()> {
        if let TermX::Tuple(leaves) = self {
            if leaves.len() != index.size() {
                return Err(Error::ArityMismatch {
                    expected: index.size(),
                    found: leaves.len(),
                });
            }
            for leaf in leaves {
                match leaf {
                    Leaf::Var(_) => {}
                    Leaf::Sub(t) => t.check(index)?,
                    Leaf::Const(c) => index.check_same(c.index())?,
                }
            }
        }
        Ok(())
    }

    /// Renames every variable.
    pub fn map_vars<W>(&self, f: &mut impl FnMut(&V) -> W) -> TermX<W> {
        match self {
            TermX::Atom => TermX::Atom,
            TermX::Tuple(leaves) => TermX::Tuple(
                leaves
                    .iter()
                    .map(|leaf| match leaf {
                        Leaf::Var(v) => Leaf::Var(f(v)),
                        Leaf::Sub(t) => Leaf::Sub(t.map_vars(f)),
                        Leaf::Const(c) => Leaf::Const(c.clone()),
                    })
                    .collect(),
            ),
        }
    }
}

/// A system `x = ν_x` for every `x ∈ X`.
#[derive(Debug, Clone)]
pub struct EquationSystem<V = String> {
    index: IndexSet,
    equations: IndexMap<V, TermX<V>>,
}

impl<V: Variable> EquationSystem<V> {
    pub fn new<I>(index: IndexSet, equations: I) -> Result<EquationSystem<V>>
    where
        I: IntoIterator<Item = (V, TermX<V>)>,
    {
        let mut map = IndexMap::new();
        for (var, term) in equations {
            term.check(index)?;
            if map.contains_key(&var) {
                return Err(Error::DuplicateVariable(var.to_string()));
            }
            map.insert(var, term);
        }
        for term in map.values() {
            if let Some(unbound) = term.variables().into_iter().find(|v| !map.contains_key(v)) {
                return Err(Error::UnboundVariable(unbound.to_string()));
            }
        }
        Ok(EquationSystem {
            index,
            equations: map,
        })
    }

    pub fn index(&self) -> IndexSet {
        self.index
    }

    pub fn equations(&self) -> &IndexMap<V, TermX<V>> {
        &self.equations
    }

    pub fn get(&self, var: &V) -> Option<&TermX<V>> {
        self.equations.get(var)
    }

    pub fn variables(&self) -> impl Iterator<Item = &V> {
        self.equations.keys()
    }
}

/// Values for variables.
pub trait Assignment<V> {
    fn lookup(&self, var: &V) -> Option<RegularElement>;
}

impl<V: Hash + Eq> Assignment<V> for IndexMap<V, RegularElement> {
    fn lookup(&self, var: &V) -> Option<RegularElement> {
        self.get(var).cloned()
    }
}

impl<V: Hash + Eq> Assignment<V> for HashMap<V, RegularElement> {
    fn lookup(&self, var: &V) -> Option<RegularElement> {
        self.get(var).cloned()
    }
}

impl<V: Ord> Assignment<V> for BTreeMap<V, RegularElement> {
    fn lookup(&self, var: &V) -> Option<RegularElement> {
        self.get(var).cloned()
    }
}

impl Assignment<CanonicalElement> for FiniteMap {
    fn lookup(&self, var: &CanonicalElement) -> Option<RegularElement> {
        self.graph.get(var).map(|v| v.element().clone())
    }
}

/// Lays term nodes out as coalgebra states. Variables resolve through `resolve`.
struct Flattener<R> {
    grafter: Grafter,
    resolve: R,
}

impl<R> Flattener<R> {
    fn node<V>(&mut self, term: &TermX<V>, state: usize) -> Result<()>
    where
        R: FnMut(&mut Grafter, &V) -> Result<usize>,
    {
        let shape = match term {
            TermX::Atom => NodeShape::Atom,
            TermX::Tuple(leaves) => {
                let mut children = Vec::with_capacity(leaves.len());
                for leaf in leaves {
                    children.push(match leaf {
                        Leaf::Var(v) => (self.resolve)(&mut self.grafter, v)?,
                        Leaf::Sub(t) => {
                            let s = self.grafter.fresh();
                            self.node(t, s)?;
                            s
                        }
                        Leaf::Const(c) => self.grafter.graft(c)?,
                    });
                }
                NodeShape::Tuple(children)
            }
        };
        self.grafter.set(state, shape);
        Ok(())
    }
}

/// The solution `f` with `f = f̂ ∘ ν`, one element per variable, all sharing one
/// coalgebra. State numbering follows equation order, then term order.
pub fn solve<V: Variable>(sys: &EquationSystem<V>) -> Result<IndexMap<V, RegularElement>> {
    let mut grafter = Grafter::new(sys.index);
    let states: HashMap<V, usize> = sys
        .equations
        .keys()
        .map(|v| (v.clone(), grafter.fresh()))
        .collect();
    let mut flat = Flattener {
        grafter,
        resolve: |_: &mut Grafter, v: &V| {
            states
                .get(v)
                .copied()
                .ok_or_else(|| Error::UnboundVariable(v.to_string()))
        },
    };
    for (var, term) in &sys.equations {
        let state = states[var];
        flat.node(term, state)?;
    }
    let coalg = flat.grafter.into_coalgebra()?;
    sys.equations
        .keys()
        .map(|v| Ok((v.clone(), RegularElement::new(coalg.clone(), states[v])?)))
        .collect()
}

/// `f̂(t)`: copies `t`, grafting `f(x)` at every variable.
pub fn subst<V: Variable>(
    index: IndexSet,
    f: &impl Assignment<V>,
    term: &TermX<V>,
) -> Result<RegularElement> {
    term.check(index)?;
    let mut flat = Flattener {
        grafter: Grafter::new(index),
        resolve: |g: &mut Grafter, v: &V| {
            let value = f
                .lookup(v)
                .ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
            g.graft(&value)
        },
    };
    let root = flat.grafter.fresh();
    flat.node(term, root)?;
    flat.grafter.finish(root)
}

/// `σ_X(u)`: the atom stays the atom; a tuple becomes a tuple of embedded
/// constants, one level deep. Never introduces a variable.
pub fn sigma_embed<V>(u: &RegularElement) -> TermX<V> {
    match u.children() {
        None => TermX::Atom,
        Some(children) => TermX::Tuple(children.into_iter().map(Leaf::Const).collect()),
    }
}

/// A map between finite subsets of `U`. Keys and values are canonical, so
/// lookup respects set equality and map equality is extensional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMap {
    index: IndexSet,
    graph: BTreeMap<CanonicalElement, CanonicalElement>,
}

impl FiniteMap {
    pub fn new(index: IndexSet) -> FiniteMap {
        FiniteMap {
            index,
            graph: BTreeMap::new(),
        }
    }

    pub fn from_pairs<'a, I>(index: IndexSet, pairs: I) -> Result<FiniteMap>
    where
        I: IntoIterator<Item = (&'a RegularElement, &'a RegularElement)>,
    {
        let mut map = FiniteMap::new(index);
        for (k, v) in pairs {
            map.insert(k, v)?;
        }
        Ok(map)
    }

    pub fn identity<'a, I>(index: IndexSet, domain: I) -> Result<FiniteMap>
    where
        I: IntoIterator<Item = &'a RegularElement>,
    {
        FiniteMap::from_pairs(index, domain.into_iter().map(|x| (x, x)))
    }

    /// Adds `key ↦ value`. Re-adding a key is fine only with the same value.
    pub fn insert(&mut self, key: &RegularElement, value: &RegularElement) -> Result<()> {
        self.index.check_same(key.index())?;
        self.index.check_same(value.index())?;
        let (key, value) = (key.canonical(), value.canonical());
        match self.graph.get(&key) {
            Some(existing) if *existing != value => Err(Error::DomainMismatch(format!(
                "{key} is mapped to both {existing} and {value}"
            ))),
            _ => {
                self.graph.insert(key, value);
                Ok(())
            }
        }
    }

    pub fn index(&self) -> IndexSet {
        self.index
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn get(&self, x: &RegularElement) -> Option<&RegularElement> {
        self.graph.get(&x.canonical()).map(CanonicalElement::element)
    }

    pub fn get_canonical(&self, x: &CanonicalElement) -> Option<&CanonicalElement> {
        self.graph.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalElement, &CanonicalElement)> {
        self.graph.iter()
    }

    pub fn domain(&self) -> BTreeSet<CanonicalElement> {
        self.graph.keys().cloned().collect()
    }

    pub fn image(&self) -> BTreeSet<CanonicalElement> {
        self.graph.values().cloned().collect()
    }

    /// `self ∘ inner`. Every value of `inner` must lie in the domain of `self`.
    pub fn compose(&self, inner: &FiniteMap) -> Result<FiniteMap> {
        self.index.check_same(inner.index)?;
        let mut graph = BTreeMap::new();
        for (k, mid) in &inner.graph {
            let v = self.graph.get(mid).ok_or_else(|| {
                Error::DomainMismatch(format!("{mid} is not in the domain of the outer map"))
            })?;
            graph.insert(k.clone(), v.clone());
        }
        Ok(FiniteMap {
            index: self.index,
            graph,
        })
    }

    fn map_keys_and_values(
        &self,
        key: impl Fn(&RegularElement) -> Result<RegularElement>,
    ) -> Result<Vec<(RegularElement, RegularElement)>> {
        self.graph
            .iter()
            .map(|(k, v)| Ok((key(k.element())?, v.element().clone())))
            .collect()
    }
}

/// `Ĩnl(a) = ⟨0; a⟩`.
pub fn inl(a: &RegularElement) -> Result<RegularElement> {
    RegularElement::pair(&RegularElement::zero(a.index()), a)
}

/// `Ĩnr(b) = ⟨1; b⟩`.
pub fn inr(b: &RegularElement) -> Result<RegularElement> {
    RegularElement::pair(&RegularElement::atom(b.index()), b)
}

fn injection_map<'a, I>(
    index: IndexSet,
    domain: I,
    inject: fn(&RegularElement) -> Result<RegularElement>,
) -> Result<FiniteMap>
where
    I: IntoIterator<Item = &'a CanonicalElement>,
{
    let mut map = FiniteMap::new(index);
    for x in domain {
        map.insert(x.element(), &inject(x.element())?)?;
    }
    Ok(map)
}

/// `Ĩnl : A → A +̃ B` as a finite map on `A`.
pub fn inl_map<'a, I>(index: IndexSet, domain: I) -> Result<FiniteMap>
where
    I: IntoIterator<Item = &'a CanonicalElement>,
{
    injection_map(index, domain, inl)
}

/// `Ĩnr : B → A +̃ B` as a finite map on `B`.
pub fn inr_map<'a, I>(index: IndexSet, domain: I) -> Result<FiniteMap>
where
    I: IntoIterator<Item = &'a CanonicalElement>,
{
    injection_map(index, domain, inr)
}

/// `[f, g] : A +̃ B → C`, taking `Ĩnl(a)` to `f(a)` and `Ĩnr(b)` to `g(b)`.
pub fn case_map(f: &FiniteMap, g: &FiniteMap) -> Result<FiniteMap> {
    f.index.check_same(g.index)?;
    f.index.require_pairs()?;
    let mut map = FiniteMap::new(f.index);
    for (k, v) in f.map_keys_and_values(inl)? {
        map.insert(&k, &v)?;
    }
    for (k, v) in g.map_keys_and_values(inr)? {
        map.insert(&k, &v)?;
    }
    Ok(map)
}

/// `j +̃ k = [Ĩnl ∘ j, Ĩnr ∘ k]`.
pub fn sum_map(j: &FiniteMap, k: &FiniteMap) -> Result<FiniteMap> {
    let left = inl_map(j.index, &j.image())?.compose(j)?;
    let right = inr_map(k.index, &k.image())?.compose(k)?;
    case_map(&left, &right)
}
