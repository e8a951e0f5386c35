//! The operations behind the `varcoalg` binary. Each returns its output text
//! so the binary only maps results to exit codes.

use crate::coalg::{q_object, q_post_fixpoint, IndexSet, NodeShape, RegularElement, Verdict};
use crate::dsl::parse_system;
use crate::eqsolve::solve;
use crate::error::{Error, Result};
use crate::hfs::{kpair, kpair_split, stage_members, HfSet, StageIndex};
use crate::variant::vfunspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Set,
    Json,
}

/// A report plus whether the property it describes held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub passed: bool,
}

fn solved(src: &str, var: &str) -> Result<RegularElement> {
    let sys = parse_system(src)?;
    let mut sol = solve(&sys)?;
    sol.swap_remove(var)
        .ok_or_else(|| Error::UnboundVariable(var.to_string()))
}

/// `π_depth` of the solution for `var`, rendered in the chosen format.
pub fn cmd_solve(src: &str, var: &str, depth: usize, format: Format) -> Result<String> {
    let set = solved(src, var)?.expand(depth)?;
    Ok(match format {
        Format::Set => set.to_string(),
        Format::Json => set.to_json(),
    })
}

pub fn cmd_eq(src: &str, v1: &str, v2: &str) -> Result<Verdict> {
    let sys = parse_system(src)?;
    let sol = solve(&sys)?;
    let get = |v: &str| {
        sol.get(v)
            .ok_or_else(|| Error::UnboundVariable(v.to_string()))
    };
    get(v1)?.bisim(get(v2)?)
}

pub fn render_verdict(v: Verdict) -> String {
    match v {
        Verdict::Bisimilar => "bisimilar".into(),
        Verdict::Distinct { depth } => format!("distinct at depth {depth}"),
    }
}

pub fn cmd_check(name: &str) -> Result<Report> {
    match name {
        "prop3" => check_fixpoints_of_unary_space(),
        "lemma31" => check_zero_one_closure(),
        other => Err(Error::UnknownCheck(other.to_string())),
    }
}

/// Every `U ⊆ V_4` with `U = 1 →̃ U`.
pub fn unary_space_fixpoints() -> Result<Vec<HfSet>> {
    let pool = HfSet::from_members(stage_members(StageIndex::new(4)?)?);
    let one = HfSet::one();
    let mut found = Vec::new();
    for u in pool.subsets(pool.len())? {
        if vfunspace(&one, &u)? == u {
            found.push(u);
        }
    }
    Ok(found)
}

fn check_fixpoints_of_unary_space() -> Result<Report> {
    let found = unary_space_fixpoints()?;
    let listed: Vec<String> = found.iter().map(HfSet::to_string).collect();
    let expected = [HfSet::empty(), HfSet::one()];
    Ok(Report {
        text: format!("{} solutions: {}", found.len(), listed.join(", ")),
        passed: found == expected,
    })
}

fn check_zero_one_closure() -> Result<Report> {
    let mut lines = Vec::new();
    let mut passed = true;
    let zero_one = HfSet::ordinal(2);
    for size in 1..=3 {
        let index = IndexSet::new(size);
        let q = q_object(index, &zero_one)?;
        let concrete = zero_one.is_subset(&q);
        let zero = RegularElement::zero(index);
        let atom = RegularElement::atom(index);
        let decoded = match (
            RegularElement::from_hf(&HfSet::empty(), index),
            RegularElement::from_hf(&HfSet::one(), index),
        ) {
            (Some(z), Some(o)) => z.bisim(&zero)?.is_bisimilar() && o.bisim(&atom)?.is_bisimilar(),
            _ => false,
        };
        let coalgebraic = q_post_fixpoint(&[zero, atom]);
        let ok = concrete && decoded && coalgebraic;
        passed &= ok;
        lines.push(format!(
            "I = {size}: {{0,1}} ⊆ Q({{0,1}}) {}; 0, 1 regular {}; post-fixpoint {}",
            mark(concrete),
            mark(decoded),
            mark(coalgebraic)
        ));
    }
    lines.push(if passed { "pass" } else { "fail" }.to_string());
    Ok(Report {
        text: lines.join("\n"),
        passed,
    })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

/// The stream `x = ⟨1; x⟩` over `I = 2`.
pub fn stream() -> RegularElement {
    let index = IndexSet::new(2);
    RegularElement::build(
        index,
        [("x", NodeShape::Tuple(vec!["a", "x"])), ("a", NodeShape::Atom)],
        &"x",
    )
    .expect("the stream coalgebra is well formed")
}

/// The standard tuples `⟨1, …, 1, 0, x⟩` with `j ≤ n − 2` ones and `x ∈ 1`.
pub fn stream_tuples(n: usize) -> HfSet {
    let base = kpair(&HfSet::empty(), &HfSet::empty());
    let mut members = Vec::new();
    let mut t = base;
    for _ in 0..n.saturating_sub(1) {
        members.push(t.clone());
        t = kpair(&HfSet::one(), &t);
    }
    HfSet::from_members(members)
}

/// Renders Kuratowski pairs as `⟨a,b⟩` and `{0}` as `1`; everything else as a set.
pub fn pretty(h: &HfSet) -> String {
    if h.is_empty() {
        return "0".into();
    }
    if *h == HfSet::one() {
        return "1".into();
    }
    if let Some((a, b)) = kpair_split(h) {
        return format!("⟨{},{}⟩", pretty(&a), pretty(&b));
    }
    let parts: Vec<String> = h.members().iter().map(pretty).collect();
    format!("{{{}}}", parts.join(", "))
}

/// A set of tuples: members rendered with [`pretty`], so `{⟨0,0⟩}` is not read as a pair.
pub fn pretty_set(h: &HfSet) -> String {
    if h.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = h.members().iter().map(pretty).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Expansions of the stream at depths `0..=depth` beside the tuple characterization.
pub fn cmd_demo_stream(depth: usize) -> Result<Report> {
    let levels = stream().expansions(depth)?;
    let mut lines = Vec::new();
    let mut passed = true;
    for (n, level) in levels.iter().enumerate() {
        let tuples = stream_tuples(n);
        let same = *level == tuples;
        passed &= same;
        lines.push(format!(
            "{n}: {}  |  {}  {}",
            pretty_set(level),
            pretty_set(&tuples),
            if same { "=" } else { "≠" }
        ));
    }
    Ok(Report {
        text: lines.join("\n"),
        passed,
    })
}
