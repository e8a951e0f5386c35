//! Hereditarily finite sets in canonical form.
//!
//! An [`HfSet`] is an immutable, reference-counted node whose members are kept
//! sorted in the canonical order and free of duplicates, so structural equality
//! is extensional equality. The canonical order is length-lexicographic on the
//! canonical text rendering (`0` for the empty set, `{a,b,...}` otherwise); it is
//! decided from cached per-node data without rendering any text.
//!
//! Besides the kernel this module houses the standard (Kuratowski) pair, the
//! image operator, standard products and the finite stages of the cumulative
//! hierarchy.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest stage of the cumulative hierarchy that [`stage_members`] enumerates.
pub const MAX_STAGE: usize = 5;

#[derive(Clone)]
pub struct HfSet(Arc<Node>);

struct Node {
    members: Box<[HfSet]>,
    hash: u64,
    rank: usize,
    text_len: u64,
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl HfSet {
    /// Builds a set from members that are already sorted and distinct.
    fn from_sorted(members: Vec<HfSet>) -> HfSet {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        let mut hash = 0x51_7cc1_b727_220a;
        let mut rank = 0;
        let mut text_len = if members.is_empty() { 1 } else { 1 + members.len() as u64 };
        for m in &members {
            hash = mix(hash ^ m.0.hash);
            rank = rank.max(m.0.rank + 1);
            text_len += m.0.text_len;
        }
        hash = mix(hash ^ members.len() as u64);
        HfSet(Arc::new(Node {
            members: members.into_boxed_slice(),
            hash,
            rank,
            text_len,
        }))
    }

    /// The canonical set whose members are exactly the distinct inputs.
    pub fn from_members<I: IntoIterator<Item = HfSet>>(members: I) -> HfSet {
        let mut members: Vec<HfSet> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        HfSet::from_sorted(members)
    }

    pub fn empty() -> HfSet {
        HfSet::from_sorted(Vec::new())
    }

    pub fn singleton(a: HfSet) -> HfSet {
        HfSet::from_sorted(vec![a])
    }

    pub fn doubleton(a: HfSet, b: HfSet) -> HfSet {
        HfSet::from_members([a, b])
    }

    /// The von Neumann ordinal `n = {0, ..., n-1}`.
    pub fn ordinal(n: usize) -> HfSet {
        let mut members = Vec::with_capacity(n);
        for _ in 0..n {
            let next = HfSet::from_sorted(members.clone());
            members.push(next);
        }
        HfSet::from_sorted(members)
    }

    /// `1 = {0}`, the atom of the final coalgebra.
    pub fn one() -> HfSet {
        HfSet::singleton(HfSet::empty())
    }

    pub fn members(&self) -> &[HfSet] {
        &self.0.members
    }

    pub fn len(&self) -> usize {
        self.0.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.members.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    /// Length in bytes of the canonical text rendering.
    pub fn text_len(&self) -> u64 {
        self.0.text_len
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.0.members.binary_search(x).is_ok()
    }

    pub fn is_subset(&self, other: &HfSet) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut theirs = other.members().iter();
        'outer: for m in self.members() {
            for t in theirs.by_ref() {
                match m.cmp(t) {
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => continue,
                    Ordering::Less => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn union(&self, other: &HfSet) -> HfSet {
        let (a, b) = (self.members(), other.members());
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        HfSet::from_sorted(out)
    }

    pub fn intersection(&self, other: &HfSet) -> HfSet {
        HfSet::from_sorted(
            self.members()
                .iter()
                .filter(|m| other.contains(m))
                .cloned()
                .collect(),
        )
    }

    /// `⋃ self`.
    pub fn big_union(&self) -> HfSet {
        HfSet::from_members(self.members().iter().flat_map(|m| m.members().iter().cloned()))
    }

    /// All subsets of `self`, refusing sets with more than `max_members` members.
    pub fn subsets(&self, max_members: usize) -> Result<Vec<HfSet>> {
        if self.len() > max_members {
            return Err(Error::SizeLimit {
                what: "powerset",
                size: self.len(),
                limit: max_members,
            });
        }
        let members = self.members();
        let mut out = Vec::with_capacity(1 << members.len());
        for mask in 0u64..(1u64 << members.len()) {
            let picked = members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, m)| m.clone())
                .collect();
            out.push(HfSet::from_sorted(picked));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("nested arrays always serialize")
    }

    fn write_text(&self, out: &mut impl fmt::Write) -> fmt::Result {
        if self.is_empty() {
            return out.write_char('0');
        }
        out.write_char('{')?;
        for (i, m) in self.members().iter().enumerate() {
            if i > 0 {
                out.write_char(',')?;
            }
            m.write_text(out)?;
        }
        out.write_char('}')
    }
}

/// Plain lexicographic comparison of canonical text renderings.
///
/// Renderings are brace-balanced, so neither of two distinct renderings is a
/// prefix of the other and the comparison can proceed member by member.
fn text_cmp(a: &HfSet, b: &HfSet) -> Ordering {
    if Arc::ptr_eq(&a.0, &b.0) {
        return Ordering::Equal;
    }
    match (a.is_empty(), b.is_empty()) {
        (true, true) => Ordering::Equal,
        // '0' < '{'
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => {
            for (x, y) in a.members().iter().zip(b.members()) {
                match text_cmp(x, y) {
                    Ordering::Equal => {}
                    other => return other,
                }
            }
            // The shorter list continues with '}', the longer with ',' < '}'.
            b.len().cmp(&a.len())
        }
    }
}

impl Ord for HfSet {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0
            .text_len
            .cmp(&other.0.text_len)
            .then_with(|| text_cmp(self, other))
    }
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for HfSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash
                && self.0.text_len == other.0.text_len
                && self.0.members == other.0.members)
    }
}

impl Eq for HfSet {}

impl Hash for HfSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_text(f)
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_text(f)
    }
}

impl Serialize for HfSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members())
    }
}

impl<'de> Deserialize<'de> for HfSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Vec::<HfSet>::deserialize(deserializer).map(HfSet::from_members)
    }
}

/// Parses the canonical text form. Members may appear in any order and may
/// repeat; natural-number literals stand for von Neumann ordinals.
impl FromStr for HfSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<HfSet> {
        let mut parser = TextParser { src: s.as_bytes(), pos: 0 };
        let set = parser.set()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(set)
    }
}

struct TextParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TextParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn set(&mut self) -> Result<HfSet> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'{') => {
                self.pos += 1;
                let mut members = Vec::new();
                self.skip_ws();
                if self.src.get(self.pos) == Some(&b'}') {
                    self.pos += 1;
                    return Ok(HfSet::empty());
                }
                loop {
                    members.push(self.set()?);
                    self.skip_ws();
                    match self.src.get(self.pos) {
                        Some(b',') => self.pos += 1,
                        Some(b'}') => {
                            self.pos += 1;
                            return Ok(HfSet::from_members(members));
                        }
                        _ => return Err(self.error("expected `,` or `}`")),
                    }
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                let n: usize = text.parse().map_err(|_| self.error("ordinal literal too large"))?;
                if n > 64 {
                    return Err(self.error("ordinal literal too large"));
                }
                Ok(HfSet::ordinal(n))
            }
            _ => Err(self.error("expected a set")),
        }
    }
}

/// The standard (Kuratowski) pair `⟨a,b⟩ = {{a},{a,b}}`.
pub fn kpair(a: &HfSet, b: &HfSet) -> HfSet {
    HfSet::doubleton(
        HfSet::singleton(a.clone()),
        HfSet::doubleton(a.clone(), b.clone()),
    )
}

/// Inverse of [`kpair`]: `Some((a, b))` iff `h = ⟨a,b⟩`.
pub fn kpair_split(h: &HfSet) -> Option<(HfSet, HfSet)> {
    match h.members() {
        [only] => match only.members() {
            [a] => Some((a.clone(), a.clone())),
            _ => None,
        },
        [x, y] => {
            let (single, double) = if x.len() == 1 { (x, y) } else { (y, x) };
            let [a] = single.members() else { return None };
            let [p, q] = double.members() else { return None };
            if p == a {
                Some((a.clone(), q.clone()))
            } else if q == a {
                Some((a.clone(), p.clone()))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// The image operator: `{ y | ∃x∈s. ⟨x,y⟩ ∈ r }`. Non-pair members of `r` are ignored.
pub fn image(r: &HfSet, s: &HfSet) -> HfSet {
    HfSet::from_members(r.members().iter().filter_map(|m| {
        let (x, y) = kpair_split(m)?;
        s.contains(&x).then_some(y)
    }))
}

/// The standard Cartesian product `{⟨a,b⟩ | a ∈ A ∧ b ∈ B}`.
pub fn std_product(a: &HfSet, b: &HfSet) -> HfSet {
    HfSet::from_members(
        a.members()
            .iter()
            .flat_map(|x| b.members().iter().map(move |y| kpair(x, y))),
    )
}

/// A finite stage index `n` of the cumulative hierarchy, `n ≤ 6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StageIndex(usize);

impl StageIndex {
    pub const MAX: usize = 6;

    pub fn new(n: usize) -> Result<StageIndex> {
        if n > StageIndex::MAX {
            return Err(Error::StageTooLarge {
                requested: n,
                max: StageIndex::MAX,
            });
        }
        Ok(StageIndex(n))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// `V_n = ⋃_{m<n} P(V_m)`, enumerated for `n ≤ 5`.
pub fn stage_members(n: StageIndex) -> Result<BTreeSet<HfSet>> {
    if n.0 > MAX_STAGE {
        return Err(Error::StageTooLarge {
            requested: n.0,
            max: MAX_STAGE,
        });
    }
    let mut stage = HfSet::empty();
    for _ in 0..n.0 {
        // V_{m+1} = P(V_m); V_4 has 16 members, so the mask fits.
        stage = HfSet::from_members(stage.subsets(16)?);
    }
    Ok(stage.members().iter().cloned().collect())
}
