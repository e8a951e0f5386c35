//! Functors on subsets of `U` built from constants, variant products, variant
//! sums and indexed sums and products.
//!
//! Every expression other than the bare identity is uniform on maps: a value
//! `b ∈ F(A)` translates to a term `φ_A(b)` over the variables `A` such that
//! `F(h)(b) = ĥ(φ_A(b))` for every `h`. [`Functor::finalize`] uses that
//! translation to turn an `F`-coalgebra into a system of equations whose
//! solution is the unique map into the final coalgebra.
//!
//! Values of `F(A)` are handled structurally as [`FValue`] and only turned
//! into elements of `U` by [`FValue::denote`].

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use indexmap::IndexMap;

use crate::coalg::{CanonicalElement, IndexSet, RegularElement};
use crate::eqsolve::{inl, inr, sigma_embed, solve, subst, EquationSystem, FiniteMap, Leaf, TermX, Variable};
use crate::error::{Error, Result};

/// Largest number of values [`Functor::enumerate`] will build.
pub const MAX_FUNCTOR_VALUES: usize = 1 << 14;

/// Depth bound for the translation search used on the identity functor.
const MAX_WITNESS_DEPTH: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctorExpr {
    /// `K_C`.
    Const(BTreeSet<CanonicalElement>),
    /// The identity functor.
    Slot,
    /// `F ×̃ G`.
    Prod(Box<FunctorExpr>, Box<FunctorExpr>),
    /// `F +̃ G`.
    Sum(Box<FunctorExpr>, Box<FunctorExpr>),
    /// `Σ̃_{x∈C} F_x` for a finite `C ⊆ U`.
    FamSum(BTreeMap<CanonicalElement, FunctorExpr>),
    /// `Π̃_{x∈C} F_x` for `C ⊆ I`.
    FamProd(BTreeMap<usize, FunctorExpr>),
}

impl FunctorExpr {
    pub fn constant<'a>(elems: impl IntoIterator<Item = &'a RegularElement>) -> FunctorExpr {
        FunctorExpr::Const(elems.into_iter().map(RegularElement::canonical).collect())
    }

    pub fn prod(f: FunctorExpr, g: FunctorExpr) -> FunctorExpr {
        FunctorExpr::Prod(Box::new(f), Box::new(g))
    }

    pub fn sum(f: FunctorExpr, g: FunctorExpr) -> FunctorExpr {
        FunctorExpr::Sum(Box::new(f), Box::new(g))
    }

    /// True unless the expression is the bare identity. Every slot below a
    /// constructor translates to a variable leaf.
    pub fn is_guarded(&self) -> bool {
        !matches!(self, FunctorExpr::Slot)
    }

    pub fn depth(&self) -> usize {
        match self {
            FunctorExpr::Const(_) | FunctorExpr::Slot => 0,
            FunctorExpr::Prod(f, g) | FunctorExpr::Sum(f, g) => 1 + f.depth().max(g.depth()),
            FunctorExpr::FamSum(fs) => 1 + fs.values().map(FunctorExpr::depth).max().unwrap_or(0),
            FunctorExpr::FamProd(fs) => 1 + fs.values().map(FunctorExpr::depth).max().unwrap_or(0),
        }
    }

    fn validate(&self, index: IndexSet) -> Result<()> {
        match self {
            FunctorExpr::Const(c) => c.iter().try_for_each(|e| index.check_same(e.index())),
            FunctorExpr::Slot => Ok(()),
            FunctorExpr::Prod(f, g) | FunctorExpr::Sum(f, g) => {
                index.require_pairs()?;
                f.validate(index)?;
                g.validate(index)
            }
            FunctorExpr::FamSum(fs) => {
                index.require_pairs()?;
                for (c, f) in fs {
                    index.check_same(c.index())?;
                    f.validate(index)?;
                }
                Ok(())
            }
            FunctorExpr::FamProd(fs) => {
                for (&i, f) in fs {
                    if i >= index.size() {
                        return Err(Error::DomainMismatch(format!(
                            "product index {i} is outside I = {}",
                            index.size()
                        )));
                    }
                    f.validate(index)?;
                }
                Ok(())
            }
        }
    }

    /// `|F(A)|` for `|A| = points`, saturating.
    fn count(&self, points: usize) -> usize {
        match self {
            FunctorExpr::Const(c) => c.len(),
            FunctorExpr::Slot => points,
            FunctorExpr::Prod(f, g) => f.count(points).saturating_mul(g.count(points)),
            FunctorExpr::Sum(f, g) => f.count(points).saturating_add(g.count(points)),
            FunctorExpr::FamSum(fs) => fs
                .values()
                .fold(0usize, |acc, f| acc.saturating_add(f.count(points))),
            FunctorExpr::FamProd(fs) => fs
                .values()
                .fold(1usize, |acc, f| acc.saturating_mul(f.count(points))),
        }
    }

    fn values<P: Clone>(&self, points: &[P]) -> Vec<FValue<P>> {
        match self {
            FunctorExpr::Const(c) => c.iter().cloned().map(FValue::Const).collect(),
            FunctorExpr::Slot => points.iter().cloned().map(FValue::Point).collect(),
            FunctorExpr::Prod(f, g) => {
                let right = g.values(points);
                let mut out = Vec::new();
                for x in f.values(points) {
                    for y in &right {
                        out.push(FValue::Pair(Box::new(x.clone()), Box::new(y.clone())));
                    }
                }
                out
            }
            FunctorExpr::Sum(f, g) => f
                .values(points)
                .into_iter()
                .map(|x| FValue::Inl(Box::new(x)))
                .chain(g.values(points).into_iter().map(|y| FValue::Inr(Box::new(y))))
                .collect(),
            FunctorExpr::FamSum(fs) => fs
                .iter()
                .flat_map(|(c, f)| {
                    f.values(points)
                        .into_iter()
                        .map(move |y| FValue::Tagged(c.clone(), Box::new(y)))
                })
                .collect(),
            FunctorExpr::FamProd(fs) => {
                let mut out = vec![BTreeMap::new()];
                for (&i, f) in fs {
                    let choices = f.values(points);
                    let mut next = Vec::with_capacity(out.len() * choices.len());
                    for partial in &out {
                        for v in &choices {
                            let mut m = partial.clone();
                            m.insert(i, v.clone());
                            next.push(m);
                        }
                    }
                    out = next;
                }
                out.into_iter().map(FValue::Family).collect()
            }
        }
    }

    /// Checks that `v` has this expression's shape, with points drawn from `carrier`.
    fn check_value<P>(&self, v: &FValue<P>, carrier: &impl Fn(&P) -> bool) -> Result<()> {
        let mismatch = |what: &str| Err(Error::ShapeMismatch(format!("{what} under {self}")));
        match (self, v) {
            (FunctorExpr::Const(c), FValue::Const(x)) => {
                if c.contains(x) {
                    Ok(())
                } else {
                    mismatch(&format!("constant {x} not in C"))
                }
            }
            (FunctorExpr::Slot, FValue::Point(p)) => {
                if carrier(p) {
                    Ok(())
                } else {
                    mismatch("point outside the carrier")
                }
            }
            (FunctorExpr::Prod(f, g), FValue::Pair(x, y)) => {
                f.check_value(x, carrier)?;
                g.check_value(y, carrier)
            }
            (FunctorExpr::Sum(f, _), FValue::Inl(x)) => f.check_value(x, carrier),
            (FunctorExpr::Sum(_, g), FValue::Inr(y)) => g.check_value(y, carrier),
            (FunctorExpr::FamSum(fs), FValue::Tagged(c, y)) => match fs.get(c) {
                Some(f) => f.check_value(y, carrier),
                None => mismatch(&format!("tag {c} not in C")),
            },
            (FunctorExpr::FamProd(fs), FValue::Family(m)) => {
                if !fs.keys().eq(m.keys()) {
                    return mismatch("family keys differ from C");
                }
                fs.values()
                    .zip(m.values())
                    .try_for_each(|(f, x)| f.check_value(x, carrier))
            }
            _ => mismatch("value"),
        }
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorExpr::Const(c) => {
                f.write_str("K{")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
            FunctorExpr::Slot => f.write_str("Id"),
            FunctorExpr::Prod(a, b) => write!(f, "({a} × {b})"),
            FunctorExpr::Sum(a, b) => write!(f, "({a} + {b})"),
            FunctorExpr::FamSum(fs) => {
                f.write_str("Σ{")?;
                for (i, (c, g)) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}: {g}")?;
                }
                f.write_str("}")
            }
            FunctorExpr::FamProd(fs) => {
                f.write_str("Π{")?;
                for (n, (i, g)) in fs.iter().enumerate() {
                    if n > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{i}: {g}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// A structured value of `F(A)` with points of type `P` in slot positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FValue<P> {
    Const(CanonicalElement),
    Point(P),
    Pair(Box<FValue<P>>, Box<FValue<P>>),
    Inl(Box<FValue<P>>),
    Inr(Box<FValue<P>>),
    Tagged(CanonicalElement, Box<FValue<P>>),
    Family(BTreeMap<usize, FValue<P>>),
}

impl<P> FValue<P> {
    /// The element of `U` this value denotes once each point is sent through `point`.
    pub fn denote(
        &self,
        index: IndexSet,
        point: &mut impl FnMut(&P) -> Result<RegularElement>,
    ) -> Result<RegularElement> {
        match self {
            FValue::Const(c) => Ok(c.element().clone()),
            FValue::Point(p) => point(p),
            FValue::Pair(x, y) => {
                RegularElement::pair(&x.denote(index, point)?, &y.denote(index, point)?)
            }
            FValue::Inl(x) => inl(&x.denote(index, point)?),
            FValue::Inr(y) => inr(&y.denote(index, point)?),
            FValue::Tagged(c, y) => RegularElement::pair(c.element(), &y.denote(index, point)?),
            FValue::Family(m) => {
                let zero = RegularElement::zero(index);
                let mut children = vec![zero; index.size()];
                for (&i, v) in m {
                    children[i] = v.denote(index, point)?;
                }
                RegularElement::tuple(index, &children)
            }
        }
    }

    /// Points occurring in slot positions, left to right.
    pub fn points(&self) -> Vec<&P> {
        let mut out = Vec::new();
        self.collect_points(&mut out);
        out
    }

    fn collect_points<'a>(&'a self, out: &mut Vec<&'a P>) {
        match self {
            FValue::Const(_) => {}
            FValue::Point(p) => out.push(p),
            FValue::Pair(x, y) => {
                x.collect_points(out);
                y.collect_points(out);
            }
            FValue::Inl(x) | FValue::Inr(x) | FValue::Tagged(_, x) => x.collect_points(out),
            FValue::Family(m) => m.values().for_each(|v| v.collect_points(out)),
        }
    }

    pub fn map_points<Q>(&self, f: &mut impl FnMut(&P) -> Q) -> FValue<Q> {
        match self {
            FValue::Const(c) => FValue::Const(c.clone()),
            FValue::Point(p) => FValue::Point(f(p)),
            FValue::Pair(x, y) => FValue::Pair(Box::new(x.map_points(f)), Box::new(y.map_points(f))),
            FValue::Inl(x) => FValue::Inl(Box::new(x.map_points(f))),
            FValue::Inr(y) => FValue::Inr(Box::new(y.map_points(f))),
            FValue::Tagged(c, y) => FValue::Tagged(c.clone(), Box::new(y.map_points(f))),
            FValue::Family(m) => FValue::Family(m.iter().map(|(&i, v)| (i, v.map_points(f))).collect()),
        }
    }
}

/// Outcome of checking `F(h) = ĥ ∘ φ_A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Uniformity {
    Holds,
    /// No translation of `point` works for every supplied map.
    Refuted { point: CanonicalElement },
}

impl Uniformity {
    pub fn holds(&self) -> bool {
        matches!(self, Uniformity::Holds)
    }
}

/// An `F`-coalgebra on a finite carrier of abstract points.
#[derive(Debug, Clone)]
pub struct FCoalgebra<P> {
    step: IndexMap<P, FValue<P>>,
}

impl<P: Variable> FCoalgebra<P> {
    pub fn new(step: impl IntoIterator<Item = (P, FValue<P>)>) -> Result<FCoalgebra<P>> {
        let mut map = IndexMap::new();
        for (p, v) in step {
            if map.contains_key(&p) {
                return Err(Error::DuplicateState(p.to_string()));
            }
            map.insert(p, v);
        }
        Ok(FCoalgebra { step: map })
    }

    pub fn carrier(&self) -> impl Iterator<Item = &P> {
        self.step.keys()
    }

    pub fn len(&self) -> usize {
        self.step.len()
    }

    pub fn is_empty(&self) -> bool {
        self.step.is_empty()
    }

    pub fn step(&self, p: &P) -> Option<&FValue<P>> {
        self.step.get(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&P, &FValue<P>)> {
        self.step.iter()
    }
}

/// A validated functor expression over a fixed index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functor {
    index: IndexSet,
    expr: FunctorExpr,
}

impl Functor {
    pub fn new(index: IndexSet, expr: FunctorExpr) -> Result<Functor> {
        expr.validate(index)?;
        Ok(Functor { index, expr })
    }

    pub fn index(&self) -> IndexSet {
        self.index
    }

    pub fn expr(&self) -> &FunctorExpr {
        &self.expr
    }

    /// All structured values of `F(points)`, size-guarded.
    pub fn enumerate<P: Clone>(&self, points: &[P]) -> Result<Vec<FValue<P>>> {
        let size = self.expr.count(points.len());
        if size > MAX_FUNCTOR_VALUES {
            return Err(Error::SizeLimit {
                what: "functor value enumeration",
                size,
                limit: MAX_FUNCTOR_VALUES,
            });
        }
        Ok(self.expr.values(points))
    }

    fn elements(&self, a: &BTreeSet<CanonicalElement>) -> Result<Vec<(FValue<CanonicalElement>, RegularElement)>> {
        for x in a {
            self.index.check_same(x.index())?;
        }
        let points: Vec<CanonicalElement> = a.iter().cloned().collect();
        self.enumerate(&points)?
            .into_iter()
            .map(|v| {
                let e = v.denote(self.index, &mut |p| Ok(p.element().clone()))?;
                Ok((v, e))
            })
            .collect()
    }

    /// The object part `F(A)`.
    pub fn apply_obj(&self, a: &BTreeSet<CanonicalElement>) -> Result<BTreeSet<CanonicalElement>> {
        Ok(self
            .elements(a)?
            .into_iter()
            .map(|(_, e)| e.canonical())
            .collect())
    }

    /// The map part `F(h) : F(A) → F(B)` where `A` is the domain of `h`.
    pub fn apply_map(&self, h: &FiniteMap) -> Result<FiniteMap> {
        self.index.check_same(h.index())?;
        let mut out = FiniteMap::new(self.index);
        for (v, e) in self.elements(&h.domain())? {
            let image = v.denote(self.index, &mut |p| {
                h.get_canonical(p)
                    .map(|y| y.element().clone())
                    .ok_or_else(|| Error::DomainMismatch(format!("{p} is not in the domain of h")))
            })?;
            out.insert(&e, &image)?;
        }
        Ok(out)
    }

    /// `φ` on one structured value; slots become variables.
    pub fn phi<P: Variable>(&self, v: &FValue<P>) -> Result<TermX<P>> {
        phi_term(&self.expr, v, self.index)
    }

    /// The translation `φ_A : F(A) → U_A`, keyed by the element each value denotes.
    pub fn translate(
        &self,
        a: &BTreeSet<CanonicalElement>,
    ) -> Result<BTreeMap<CanonicalElement, TermX<CanonicalElement>>> {
        if !self.expr.is_guarded() {
            return Err(Error::NotUniform);
        }
        let mut out = BTreeMap::new();
        for (v, e) in self.elements(a)? {
            out.entry(e.canonical()).or_insert(self.phi(&v)?);
        }
        Ok(out)
    }

    /// Checks `F(h)(b) = ĥ(φ_A(b))` for every `b ∈ F(A)` and every supplied `h`.
    ///
    /// For the bare identity no fixed translation exists, so this searches for a
    /// term `t` with `ĥ(t) = h(b)` for all the given maps at once.
    pub fn uniform_check(&self, a: &BTreeSet<CanonicalElement>, hs: &[FiniteMap]) -> Result<Uniformity> {
        let hs = hs
            .iter()
            .map(|h| restrict(h, a))
            .collect::<Result<Vec<_>>>()?;
        let images = hs
            .iter()
            .map(|h| self.apply_map(h))
            .collect::<Result<Vec<_>>>()?;
        if !self.expr.is_guarded() {
            for b in a {
                let targets: Vec<RegularElement> = images
                    .iter()
                    .map(|img| img.get_canonical(b).expect("b is in the domain").element().clone())
                    .collect();
                if !node_witness(&hs, &targets, &mut HashSet::new(), 0) {
                    return Ok(Uniformity::Refuted { point: b.clone() });
                }
            }
            return Ok(Uniformity::Holds);
        }
        let phi = self.translate(a)?;
        for (b, term) in &phi {
            for (h, img) in hs.iter().zip(&images) {
                let lhs = img.get_canonical(b).expect("b is in F(A)");
                let rhs = subst(self.index, h, term)?;
                if !lhs.element().bisim(&rhs)?.is_bisimilar() {
                    return Ok(Uniformity::Refuted { point: b.clone() });
                }
            }
        }
        Ok(Uniformity::Holds)
    }

    /// The unique map `h` into the final coalgebra, obtained by solving `p = φ(f(p))`.
    pub fn finalize<P: Variable>(&self, c: &FCoalgebra<P>) -> Result<IndexMap<P, RegularElement>> {
        if !self.expr.is_guarded() {
            return Err(Error::NotUniform);
        }
        let carrier: HashSet<&P> = c.step.keys().collect();
        let mut equations = Vec::with_capacity(c.len());
        for (p, v) in &c.step {
            self.expr.check_value(v, &|q| carrier.contains(q))?;
            equations.push((p.clone(), self.phi(v)?));
        }
        let sys = EquationSystem::new(self.index, equations)?;
        solve(&sys)
    }

    /// Whether `h = F(h) ∘ f` holds pointwise up to bisimilarity.
    pub fn is_coalgebra_map<P: Variable>(
        &self,
        c: &FCoalgebra<P>,
        h: &IndexMap<P, RegularElement>,
    ) -> Result<bool> {
        for (p, v) in &c.step {
            let lhs = h
                .get(p)
                .ok_or_else(|| Error::UnboundVariable(p.to_string()))?;
            let rhs = v.denote(self.index, &mut |q| {
                h.get(q)
                    .cloned()
                    .ok_or_else(|| Error::UnboundVariable(q.to_string()))
            })?;
            if !lhs.bisim(&rhs)?.is_bisimilar() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Z ⊆ F(Z)` up to bisimilarity.
    pub fn post_fixpoint_check(&self, z: &BTreeSet<CanonicalElement>) -> Result<bool> {
        let fz = self.apply_obj(z)?;
        Ok(z.iter().all(|x| fz.contains(x)))
    }
}

fn phi_term<P: Variable>(expr: &FunctorExpr, v: &FValue<P>, index: IndexSet) -> Result<TermX<P>> {
    let zero = || Leaf::Const(RegularElement::zero(index));
    let padded = |first: Leaf<P>, second: Leaf<P>| {
        let mut leaves = vec![first, second];
        leaves.resize_with(index.size(), zero);
        TermX::Tuple(leaves)
    };
    let shape = || Error::ShapeMismatch(format!("value does not fit {expr}"));
    Ok(match (expr, v) {
        (FunctorExpr::Const(_), FValue::Const(c)) => sigma_embed(c.element()),
        (FunctorExpr::Slot, _) => return Err(Error::NotUniform),
        (FunctorExpr::Prod(f, g), FValue::Pair(x, y)) => {
            padded(phi_leaf(f, x, index)?, phi_leaf(g, y, index)?)
        }
        (FunctorExpr::Sum(f, _), FValue::Inl(x)) => padded(zero(), phi_leaf(f, x, index)?),
        (FunctorExpr::Sum(_, g), FValue::Inr(y)) => {
            padded(Leaf::Sub(TermX::Atom), phi_leaf(g, y, index)?)
        }
        (FunctorExpr::FamSum(fs), FValue::Tagged(c, y)) => {
            let f = fs.get(c).ok_or_else(shape)?;
            padded(Leaf::Const(c.element().clone()), phi_leaf(f, y, index)?)
        }
        (FunctorExpr::FamProd(fs), FValue::Family(m)) => {
            let mut leaves: Vec<Leaf<P>> = (0..index.size()).map(|_| zero()).collect();
            for (i, f) in fs {
                let x = m.get(i).ok_or_else(shape)?;
                leaves[*i] = phi_leaf(f, x, index)?;
            }
            TermX::Tuple(leaves)
        }
        _ => return Err(shape()),
    })
}

fn phi_leaf<P: Variable>(expr: &FunctorExpr, v: &FValue<P>, index: IndexSet) -> Result<Leaf<P>> {
    Ok(match (expr, v) {
        (FunctorExpr::Slot, FValue::Point(p)) => Leaf::Var(p.clone()),
        (FunctorExpr::Slot, _) => {
            return Err(Error::ShapeMismatch("slot holds a non-point value".into()))
        }
        (FunctorExpr::Const(_), FValue::Const(c)) => Leaf::Const(c.element().clone()),
        _ => Leaf::Sub(phi_term(expr, v, index)?),
    })
}

fn restrict(h: &FiniteMap, a: &BTreeSet<CanonicalElement>) -> Result<FiniteMap> {
    let mut out = FiniteMap::new(h.index());
    for x in a {
        let y = h
            .get_canonical(x)
            .ok_or_else(|| Error::DomainMismatch(format!("{x} is not in the domain of h")))?;
        out.insert(x.element(), y.element())?;
    }
    Ok(out)
}

/// Is there a term `t ∈ U_A` with `ĥ_j(t) = targets[j]` for every `j`? The top
/// of `t` must be the atom or a tuple; below that a leaf may be a variable, a
/// constant, or another tuple.
fn node_witness(
    hs: &[FiniteMap],
    targets: &[RegularElement],
    visiting: &mut HashSet<Vec<CanonicalElement>>,
    depth: usize,
) -> bool {
    if targets.iter().all(RegularElement::is_atom) {
        return true;
    }
    if targets.iter().any(RegularElement::is_atom) || depth > MAX_WITNESS_DEPTH {
        return false;
    }
    // A shortest witness never revisits the same vector of targets.
    let key: Vec<CanonicalElement> = targets.iter().map(RegularElement::canonical).collect();
    if !visiting.insert(key.clone()) {
        return false;
    }
    let children: Vec<Vec<RegularElement>> = targets
        .iter()
        .map(|t| t.children().expect("checked above"))
        .collect();
    let arity = children[0].len();
    let ok = (0..arity).all(|i| {
        let column: Vec<RegularElement> = children.iter().map(|c| c[i].clone()).collect();
        leaf_witness(hs, &column, visiting, depth + 1)
    });
    visiting.remove(&key);
    ok
}

fn leaf_witness(
    hs: &[FiniteMap],
    targets: &[RegularElement],
    visiting: &mut HashSet<Vec<CanonicalElement>>,
    depth: usize,
) -> bool {
    let canon: Vec<CanonicalElement> = targets.iter().map(RegularElement::canonical).collect();
    if canon.windows(2).all(|w| w[0] == w[1]) {
        return true;
    }
    let domain = hs.first().map(FiniteMap::domain).unwrap_or_default();
    let variable_fits = domain.iter().any(|a| {
        hs.iter()
            .zip(&canon)
            .all(|(h, t)| h.get_canonical(a) == Some(t))
    });
    variable_fits || node_witness(hs, targets, visiting, depth)
}
