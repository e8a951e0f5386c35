//! Regular elements of the final Q-coalgebra `U`.
//!
//! `Q(A) = {1} ∪ (I →̃ A)`. An element of `U` is represented by a finite pointed
//! Q-coalgebra: every state is either the atom `1` or an `I`-tuple of states.
//! Any such coalgebra is a post-fixedpoint of `Q` once its transition map is
//! total, so every state denotes a member of `U`; [`RegularElement::expand`]
//! computes the finite approximations `π_n` of that denotation as literal sets,
//! and [`RegularElement::bisim`] decides equality of denotations.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hfs::{kpair_split, HfSet};
use crate::variant::vfunspace;

/// Deepest expansion [`RegularElement::expand`] will attempt.
pub const MAX_EXPAND_DEPTH: usize = 64;
/// Total number of tuple members an expansion may create across all levels.
pub const MAX_EXPAND_MEMBERS: usize = 1 << 18;

/// The index set `I = {0, ..., k-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet {
    size: usize,
}

impl IndexSet {
    pub fn new(size: usize) -> IndexSet {
        IndexSet { size }
    }

    pub fn size(self) -> usize {
        self.size
    }

    /// The indices as von Neumann ordinals.
    pub fn members(self) -> Vec<HfSet> {
        HfSet::ordinal(self.size).members().to_vec()
    }

    pub fn as_hf(self) -> HfSet {
        HfSet::ordinal(self.size)
    }

    /// Variant pairs live at indices 0 and 1.
    pub fn require_pairs(self) -> Result<()> {
        if self.size < 2 {
            return Err(Error::IndexTooSmall(self.size));
        }
        Ok(())
    }

    pub(crate) fn check_same(self, other: IndexSet) -> Result<()> {
        if self != other {
            return Err(Error::IndexMismatch {
                left: self.size,
                right: other.size,
            });
        }
        Ok(())
    }
}

/// One step of the structure map: the atom, or an `I`-tuple of successor states.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeShape<S = usize> {
    Atom,
    Tuple(Vec<S>),
}

impl<S> NodeShape<S> {
    pub fn children(&self) -> &[S] {
        match self {
            NodeShape::Atom => &[],
            NodeShape::Tuple(children) => children,
        }
    }
}

/// A finite Q-coalgebra on the states `0..len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QCoalgebra {
    index: IndexSet,
    trans: Vec<NodeShape>,
}

impl QCoalgebra {
    pub fn new(index: IndexSet, trans: Vec<NodeShape>) -> Result<QCoalgebra> {
        for shape in &trans {
            if let NodeShape::Tuple(children) = shape {
                if children.len() != index.size() {
                    return Err(Error::ArityMismatch {
                        expected: index.size(),
                        found: children.len(),
                    });
                }
                if let Some(bad) = children.iter().find(|&&c| c >= trans.len()) {
                    return Err(Error::DanglingState(bad.to_string()));
                }
            }
        }
        Ok(QCoalgebra { index, trans })
    }

    pub fn index(&self) -> IndexSet {
        self.index
    }

    pub fn len(&self) -> usize {
        self.trans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trans.is_empty()
    }

    pub fn shape(&self, state: usize) -> &NodeShape {
        &self.trans[state]
    }

    pub fn shapes(&self) -> &[NodeShape] {
        &self.trans
    }
}

/// Outcome of [`RegularElement::bisim`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Bisimilar,
    /// The expansions first differ at this depth.
    Distinct { depth: usize },
}

impl Verdict {
    pub fn is_bisimilar(self) -> bool {
        self == Verdict::Bisimilar
    }
}

/// A pointed finite Q-coalgebra, denoting a (possibly non-well-founded) member of `U`.
#[derive(Clone)]
pub struct RegularElement {
    coalg: Arc<QCoalgebra>,
    root: usize,
}

impl RegularElement {
    pub fn new(coalg: Arc<QCoalgebra>, root: usize) -> Result<RegularElement> {
        if root >= coalg.len() {
            return Err(Error::DanglingState(root.to_string()));
        }
        Ok(RegularElement { coalg, root })
    }

    /// Validates a transition mapping over arbitrary state labels.
    pub fn build<S, T>(index: IndexSet, trans: T, root: &S) -> Result<RegularElement>
    where
        S: Eq + Hash + Clone + fmt::Debug,
        T: IntoIterator<Item = (S, NodeShape<S>)>,
    {
        let entries: Vec<(S, NodeShape<S>)> = trans.into_iter().collect();
        let mut ids = HashMap::with_capacity(entries.len());
        for (i, (label, _)) in entries.iter().enumerate() {
            if ids.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateState(format!("{label:?}")));
            }
        }
        let lookup = |s: &S| {
            ids.get(s)
                .copied()
                .ok_or_else(|| Error::DanglingState(format!("{s:?}")))
        };
        let mut shapes = Vec::with_capacity(entries.len());
        for (_, shape) in &entries {
            shapes.push(match shape {
                NodeShape::Atom => NodeShape::Atom,
                NodeShape::Tuple(children) => {
                    if children.len() != index.size() {
                        return Err(Error::ArityMismatch {
                            expected: index.size(),
                            found: children.len(),
                        });
                    }
                    NodeShape::Tuple(children.iter().map(lookup).collect::<Result<_>>()?)
                }
            });
        }
        let root = lookup(root)?;
        RegularElement::new(Arc::new(QCoalgebra::new(index, shapes)?), root)
    }

    /// The atom `1`.
    pub fn atom(index: IndexSet) -> RegularElement {
        RegularElement {
            coalg: Arc::new(QCoalgebra {
                index,
                trans: vec![NodeShape::Atom],
            }),
            root: 0,
        }
    }

    /// The empty set `0 = λ̃_{i∈I} 0`, a self-referential tuple.
    pub fn zero(index: IndexSet) -> RegularElement {
        RegularElement {
            coalg: Arc::new(QCoalgebra {
                index,
                trans: vec![NodeShape::Tuple(vec![0; index.size()])],
            }),
            root: 0,
        }
    }

    /// `λ̃_{i∈I} children[i]`.
    pub fn tuple(index: IndexSet, children: &[RegularElement]) -> Result<RegularElement> {
        if children.len() != index.size() {
            return Err(Error::ArityMismatch {
                expected: index.size(),
                found: children.len(),
            });
        }
        let mut grafter = Grafter::new(index);
        let root = grafter.fresh();
        let states = children
            .iter()
            .map(|c| grafter.graft(c))
            .collect::<Result<Vec<_>>>()?;
        grafter.set(root, NodeShape::Tuple(states));
        grafter.finish(root)
    }

    /// The variant pair `⟨a;b⟩`, padded with `0` at indices beyond 1.
    pub fn pair(a: &RegularElement, b: &RegularElement) -> Result<RegularElement> {
        let index = a.index();
        index.check_same(b.index())?;
        index.require_pairs()?;
        let zero = RegularElement::zero(index);
        let mut children = vec![a.clone(), b.clone()];
        children.resize(index.size(), zero);
        RegularElement::tuple(index, &children)
    }

    pub fn index(&self) -> IndexSet {
        self.coalg.index
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn coalgebra(&self) -> &Arc<QCoalgebra> {
        &self.coalg
    }

    pub fn shape(&self) -> &NodeShape {
        &self.coalg.trans[self.root]
    }

    pub fn is_atom(&self) -> bool {
        matches!(self.shape(), NodeShape::Atom)
    }

    /// The same coalgebra pointed at another state.
    pub fn at(&self, state: usize) -> RegularElement {
        assert!(state < self.coalg.len(), "state {state} out of range");
        RegularElement {
            coalg: Arc::clone(&self.coalg),
            root: state,
        }
    }

    /// The `i`-th component if this element is a tuple.
    pub fn child(&self, i: usize) -> Option<RegularElement> {
        match self.shape() {
            NodeShape::Atom => None,
            NodeShape::Tuple(children) => children.get(i).map(|&c| self.at(c)),
        }
    }

    pub fn children(&self) -> Option<Vec<RegularElement>> {
        match self.shape() {
            NodeShape::Atom => None,
            NodeShape::Tuple(children) => Some(children.iter().map(|&c| self.at(c)).collect()),
        }
    }

    /// States reachable from the root, in breadth-first order with children
    /// visited by index.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.coalg.len()];
        let mut order = vec![self.root];
        seen[self.root] = true;
        let mut next = 0;
        while next < order.len() {
            let s = order[next];
            next += 1;
            for &c in self.coalg.trans[s].children() {
                if !seen[c] {
                    seen[c] = true;
                    order.push(c);
                }
            }
        }
        order
    }

    /// `π_n(root)`.
    pub fn expand(&self, depth: usize) -> Result<HfSet> {
        Ok(self
            .expansions(depth)?
            .pop()
            .expect("expansions returns depth + 1 levels"))
    }

    /// `[π_0(root), π_1(root), ..., π_depth(root)]`.
    pub fn expansions(&self, depth: usize) -> Result<Vec<HfSet>> {
        if depth > MAX_EXPAND_DEPTH {
            return Err(Error::DepthLimit {
                depth,
                limit: MAX_EXPAND_DEPTH,
            });
        }
        let states = self.reachable();
        let local: HashMap<usize, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let shapes: Vec<NodeShape> = states
            .iter()
            .map(|&s| match &self.coalg.trans[s] {
                NodeShape::Atom => NodeShape::Atom,
                NodeShape::Tuple(children) => {
                    NodeShape::Tuple(children.iter().map(|c| local[c]).collect())
                }
            })
            .collect();
        let indices = self.index().members();
        let singletons: Vec<HfSet> = indices.iter().cloned().map(HfSet::singleton).collect();
        let one = HfSet::one();

        let mut level = vec![HfSet::empty(); states.len()];
        let mut out = Vec::with_capacity(depth + 1);
        out.push(level[0].clone());
        let mut created = 0usize;
        let mut stable = false;
        for _ in 0..depth {
            if !stable {
                // Members of λ̃ are pairwise distinct, so sizes are known up front.
                created += shapes
                    .iter()
                    .map(|shape| match shape {
                        NodeShape::Atom => 1,
                        NodeShape::Tuple(children) => children.iter().map(|&c| level[c].len()).sum(),
                    })
                    .sum::<usize>();
                if created > MAX_EXPAND_MEMBERS {
                    return Err(Error::SizeLimit {
                        what: "expansion",
                        size: created,
                        limit: MAX_EXPAND_MEMBERS,
                    });
                }
                let next: Vec<HfSet> = shapes
                    .iter()
                    .map(|shape| match shape {
                        NodeShape::Atom => one.clone(),
                        NodeShape::Tuple(children) => {
                            tuple_step(children, &level, &indices, &singletons)
                        }
                    })
                    .collect();
                // Once every state repeats, all later levels repeat too.
                stable = next == level;
                level = next;
            }
            out.push(level[0].clone());
        }
        Ok(out)
    }

    /// Decides equality of denotations. When the elements differ, reports the
    /// least depth at which their expansions differ.
    pub fn bisim(&self, other: &RegularElement) -> Result<Verdict> {
        self.index().check_same(other.index())?;
        let offset = self.coalg.len();
        let mut uf = UnionFind::new(offset + other.coalg.len());
        let mut pending = vec![(self.root, other.root)];
        uf.union(self.root, offset + other.root);
        while let Some((p, q)) = pending.pop() {
            match (&self.coalg.trans[p], &other.coalg.trans[q]) {
                (NodeShape::Atom, NodeShape::Atom) => {}
                (NodeShape::Tuple(xs), NodeShape::Tuple(ys)) => {
                    for (&x, &y) in xs.iter().zip(ys) {
                        if uf.union(x, offset + y) {
                            pending.push((x, y));
                        }
                    }
                }
                _ => {
                    return Ok(Verdict::Distinct {
                        depth: self.distinguishing_depth(other),
                    })
                }
            }
        }
        Ok(Verdict::Bisimilar)
    }

    /// Shortest path in the product graph to a pair of states of different kinds.
    /// `π_n` of two tuples agree iff all components agree at `n - 1`, and the atom
    /// differs from every tuple from depth 1 on, so the path length plus one is
    /// the first depth where the expansions differ.
    fn distinguishing_depth(&self, other: &RegularElement) -> usize {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert((self.root, other.root));
        queue.push_back((self.root, other.root, 1usize));
        while let Some((p, q, depth)) = queue.pop_front() {
            match (&self.coalg.trans[p], &other.coalg.trans[q]) {
                (NodeShape::Atom, NodeShape::Atom) => {}
                (NodeShape::Tuple(xs), NodeShape::Tuple(ys)) => {
                    for (&x, &y) in xs.iter().zip(ys) {
                        if seen.insert((x, y)) {
                            queue.push_back((x, y, depth + 1));
                        }
                    }
                }
                _ => return depth,
            }
        }
        unreachable!("distinguishing_depth called on bisimilar elements")
    }

    /// The quotient of the reachable part by bisimilarity, with states numbered
    /// breadth-first from the root. Bisimilar inputs give identical outputs.
    pub fn minimize(&self) -> RegularElement {
        let states = self.reachable();
        let local: HashMap<usize, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let succ: Vec<Option<Vec<usize>>> = states
            .iter()
            .map(|&s| match &self.coalg.trans[s] {
                NodeShape::Atom => None,
                NodeShape::Tuple(children) => Some(children.iter().map(|c| local[c]).collect()),
            })
            .collect();

        let mut block: Vec<usize> = succ.iter().map(|s| usize::from(s.is_some())).collect();
        let mut count = renumber(&mut block);
        loop {
            let signatures: Vec<(usize, Vec<usize>)> = succ
                .iter()
                .enumerate()
                .map(|(s, children)| {
                    let kids = children
                        .as_ref()
                        .map(|cs| cs.iter().map(|&c| block[c]).collect())
                        .unwrap_or_default();
                    (block[s], kids)
                })
                .collect();
            let mut ids = HashMap::new();
            let mut refined: Vec<usize> = signatures
                .into_iter()
                .map(|sig| {
                    let next = ids.len();
                    *ids.entry(sig).or_insert(next)
                })
                .collect();
            let refined_count = renumber(&mut refined);
            block = refined;
            if refined_count == count {
                break;
            }
            count = refined_count;
        }

        // Number the blocks breadth-first from the root's block.
        let representative: Vec<usize> = {
            let mut rep = vec![usize::MAX; count];
            for (s, &b) in block.iter().enumerate() {
                if rep[b] == usize::MAX {
                    rep[b] = s;
                }
            }
            rep
        };
        let mut number = vec![usize::MAX; count];
        let mut order = vec![block[0]];
        number[block[0]] = 0;
        let mut next = 0;
        while next < order.len() {
            let b = order[next];
            next += 1;
            if let Some(children) = &succ[representative[b]] {
                for &c in children {
                    let cb = block[c];
                    if number[cb] == usize::MAX {
                        number[cb] = order.len();
                        order.push(cb);
                    }
                }
            }
        }
        let trans = order
            .iter()
            .map(|&b| match &succ[representative[b]] {
                None => NodeShape::Atom,
                Some(children) => NodeShape::Tuple(children.iter().map(|&c| number[block[c]]).collect()),
            })
            .collect();
        RegularElement {
            coalg: Arc::new(QCoalgebra {
                index: self.index(),
                trans,
            }),
            root: 0,
        }
    }

    pub fn canonical(&self) -> CanonicalElement {
        CanonicalElement(self.minimize())
    }

    /// Reads a well-founded member of `U` back into symbolic form: `h` is `1`, or
    /// every member of `h` is a standard pair `⟨i,y⟩` with `i ∈ I` and each
    /// component `h ‘ {i}` decomposes in turn. Returns `None` when `h ∉ U`.
    pub fn from_hf(h: &HfSet, index: IndexSet) -> Option<RegularElement> {
        struct Reader {
            index_of: HashMap<HfSet, usize>,
            size: usize,
            one: HfSet,
            memo: HashMap<HfSet, usize>,
            trans: Vec<NodeShape>,
        }
        impl Reader {
            fn visit(&mut self, h: &HfSet) -> Option<usize> {
                if let Some(&s) = self.memo.get(h) {
                    return Some(s);
                }
                let id = self.trans.len();
                self.trans.push(NodeShape::Atom);
                self.memo.insert(h.clone(), id);
                if *h == self.one {
                    return Some(id);
                }
                let mut components = vec![Vec::new(); self.size];
                for m in h.members() {
                    let (i, y) = kpair_split(m)?;
                    components[*self.index_of.get(&i)?].push(y);
                }
                let children = components
                    .into_iter()
                    .map(|c| self.visit(&HfSet::from_members(c)))
                    .collect::<Option<Vec<_>>>()?;
                self.trans[id] = NodeShape::Tuple(children);
                Some(id)
            }
        }
        let mut reader = Reader {
            index_of: index.members().into_iter().enumerate().map(|(i, x)| (x, i)).collect(),
            size: index.size(),
            one: HfSet::one(),
            memo: HashMap::new(),
            trans: Vec::new(),
        };
        let root = reader.visit(h)?;
        Some(RegularElement {
            coalg: Arc::new(QCoalgebra {
                index,
                trans: reader.trans,
            }),
            root,
        })
    }
}

/// `λ̃_{i∈I} level[children[i]]`, with `{i}` precomputed per index.
fn tuple_step(children: &[usize], level: &[HfSet], indices: &[HfSet], singletons: &[HfSet]) -> HfSet {
    let mut members = Vec::new();
    for (i, &c) in children.iter().enumerate() {
        for y in level[c].members() {
            members.push(HfSet::doubleton(
                singletons[i].clone(),
                HfSet::doubleton(indices[i].clone(), y.clone()),
            ));
        }
    }
    HfSet::from_members(members)
}

fn renumber(block: &mut [usize]) -> usize {
    let mut ids = HashMap::new();
    for b in block.iter_mut() {
        let next = ids.len();
        *b = *ids.entry(*b).or_insert(next);
    }
    ids.len()
}

impl fmt::Debug for RegularElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RegularElement({})", self.canonical())
    }
}

impl fmt::Display for RegularElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.canonical(), f)
    }
}

/// A minimized element with breadth-first state numbering. Equality, hashing
/// and ordering are structural, which for canonical forms is bisimilarity.
#[derive(Clone)]
pub struct CanonicalElement(RegularElement);

impl CanonicalElement {
    pub fn element(&self) -> &RegularElement {
        &self.0
    }

    pub fn into_element(self) -> RegularElement {
        self.0
    }

    pub fn index(&self) -> IndexSet {
        self.0.index()
    }

    fn key(&self) -> (IndexSet, &[NodeShape]) {
        (self.0.coalg.index, &self.0.coalg.trans)
    }
}

impl PartialEq for CanonicalElement {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for CanonicalElement {}

impl Hash for CanonicalElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl Ord for CanonicalElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for CanonicalElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl From<&RegularElement> for CanonicalElement {
    fn from(e: &RegularElement) -> Self {
        e.canonical()
    }
}

impl fmt::Debug for CanonicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `1` and `0` print as themselves; anything else as its state listing, root first.
impl fmt::Display for CanonicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let trans = &self.0.coalg.trans;
        match trans.as_slice() {
            [NodeShape::Atom] => return f.write_str("1"),
            [NodeShape::Tuple(cs)] if cs.iter().all(|&c| c == 0) => return f.write_str("0"),
            _ => {}
        }
        for (s, shape) in trans.iter().enumerate() {
            if s > 0 {
                f.write_str("; ")?;
            }
            match shape {
                NodeShape::Atom => write!(f, "s{s} = 1")?,
                NodeShape::Tuple(children) => {
                    write!(f, "s{s} = [")?;
                    for (i, c) in children.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "s{c}")?;
                    }
                    f.write_str("]")?;
                }
            }
        }
        Ok(())
    }
}

/// Copies coalgebras into one shared state space, each source coalgebra once.
pub(crate) struct Grafter {
    index: IndexSet,
    trans: Vec<Option<NodeShape>>,
    placed: HashMap<*const QCoalgebra, usize>,
    // Keeps grafted coalgebras alive so their addresses stay unique keys.
    sources: Vec<Arc<QCoalgebra>>,
}

impl Grafter {
    pub(crate) fn new(index: IndexSet) -> Grafter {
        Grafter {
            index,
            trans: Vec::new(),
            placed: HashMap::new(),
            sources: Vec::new(),
        }
    }

    pub(crate) fn fresh(&mut self) -> usize {
        self.trans.push(None);
        self.trans.len() - 1
    }

    pub(crate) fn set(&mut self, state: usize, shape: NodeShape) {
        self.trans[state] = Some(shape);
    }

    /// The state at which `e` lives in the shared space.
    pub(crate) fn graft(&mut self, e: &RegularElement) -> Result<usize> {
        self.index.check_same(e.index())?;
        let key = Arc::as_ptr(&e.coalg);
        let offset = match self.placed.get(&key) {
            Some(&offset) => offset,
            None => {
                let offset = self.trans.len();
                self.trans.extend(e.coalg.trans.iter().map(|shape| {
                    Some(match shape {
                        NodeShape::Atom => NodeShape::Atom,
                        NodeShape::Tuple(cs) => NodeShape::Tuple(cs.iter().map(|c| c + offset).collect()),
                    })
                }));
                self.placed.insert(key, offset);
                self.sources.push(Arc::clone(&e.coalg));
                offset
            }
        };
        Ok(offset + e.root)
    }

    pub(crate) fn into_coalgebra(self) -> Result<Arc<QCoalgebra>> {
        let trans = self
            .trans
            .into_iter()
            .enumerate()
            .map(|(s, shape)| shape.ok_or_else(|| Error::DanglingState(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(QCoalgebra::new(self.index, trans)?))
    }

    pub(crate) fn finish(self, root: usize) -> Result<RegularElement> {
        RegularElement::new(self.into_coalgebra()?, root)
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// `Q(A) = {1} ∪ (I →̃ A)` on a concrete set.
pub fn q_object(index: IndexSet, a: &HfSet) -> Result<HfSet> {
    Ok(vfunspace(&index.as_hf(), a)?.union(&HfSet::singleton(HfSet::one())))
}

/// `Z ⊆ Q(Z)` on regular elements: each member is the atom or a tuple whose
/// components are all (bisimilar to) members of `Z`.
pub fn q_post_fixpoint(z: &[RegularElement]) -> bool {
    let members: HashSet<CanonicalElement> = z.iter().map(RegularElement::canonical).collect();
    z.iter().all(|e| match e.children() {
        None => true,
        Some(children) => children.iter().all(|c| members.contains(&c.canonical())),
    })
}
