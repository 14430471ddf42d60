//! Finite groups as multiplication tables.
//!
//! Elements are indices `0..order` and index 0 is always the identity. The
//! group operation is written additively in reports (`a + b`, `-a`) without
//! assuming commutativity; the table itself is abstract.
//!
//! Homomorphisms, actions and G-groups are index arrays over these tables.
//! Every constructor verifies the relevant axioms exhaustively, which is cheap
//! at the orders this crate targets (at most a few dozen elements).

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::verdict::Verdict;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed group file: {0}")]
    Syntax(String),
    #[error("group has no elements")]
    Empty,
    #[error("table has {rows} rows, expected {order}")]
    RowCount { rows: usize, order: usize },
    #[error("table row {row} has {len} entries, expected {order}")]
    RowLength {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("table entry [{row}][{col}] = {value} is out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("identity axiom fails: element 0 does not fix element {0}")]
    Identity(usize),
    #[error("inverse axiom fails: element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unknown standard group {0:?}")]
    UnknownGroup(String),
    #[error("map has {found} entries, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("map entry {index} = {value} is out of range for a group of order {order}")]
    ImageOutOfRange {
        index: usize,
        value: usize,
        order: usize,
    },
    #[error("not a homomorphism: f({0} + {1}) != f({0}) + f({1})")]
    NotHomomorphism(usize, usize),
    #[error("actions have different actor groups")]
    ActorMismatch,
    #[error("invalid group action: {0}")]
    InvalidAction(String),
}

/// Serialized form of a group: `{ "name", "elements", "table" }`.
///
/// `table[i][j]` is the index of `elements[i] + elements[j]`; row index is the
/// left operand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

/// A group reference inside another file: either a standard name or an
/// inline group object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSource {
    Name(String),
    Inline(GroupFile),
}

impl GroupSource {
    /// Resolves standard names and inline tables. Names that are not standard
    /// groups are reported as unknown; callers that accept file paths handle
    /// those before calling this.
    pub fn resolve(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSource::Name(name) => make_standard(name),
            GroupSource::Inline(file) => FiniteGroup::from_file(file.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub const IDENTITY: usize = 0;

    /// Builds a group from a multiplication table, verifying closure, the
    /// identity at index 0, two-sided inverses and associativity.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let order = labels.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(GroupError::DuplicateLabel(label.clone()));
            }
        }
        if table.len() != order {
            return Err(GroupError::RowCount {
                rows: table.len(),
                order,
            });
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::RowLength {
                    row,
                    len: entries.len(),
                    order,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::EntryOutOfRange { row, col, value });
                }
                flat.push(value);
            }
        }
        let at = |a: usize, b: usize| flat[a * order + b];

        if let Some(x) = (0..order).find(|&x| at(0, x) != x || at(x, 0) != x) {
            return Err(GroupError::Identity(x));
        }
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == 0 && at(b, a) == 0) {
                Some(b) => inverses.push(b),
                None => return Err(GroupError::NoInverse(a)),
            }
        }
        let violation = (0..order).into_par_iter().find_map_first(|a| {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
            None
        });
        if let Some((a, b, c)) = violation {
            return Err(GroupError::NotAssociative(a, b, c));
        }
        Ok(FiniteGroup {
            name: name.into(),
            labels,
            table: flat,
            inverses,
        })
    }

    pub fn from_file(file: GroupFile) -> Result<Self, GroupError> {
        Self::from_table(file.name, file.elements, file.table)
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            name: self.name.clone(),
            elements: self.labels.clone(),
            table: (0..self.order()).map(|a| self.row(a).to_vec()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn row(&self, a: usize) -> &[usize] {
        let n = self.order();
        &self.table[a * n..(a + 1) * n]
    }

    /// `a + b`.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    /// `-a`.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `a - b`, that is `a + (-b)`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.op(a, self.inv(b))
    }

    /// `a + b - a`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.op(self.op(a, b), self.inv(a))
    }

    /// Left-to-right sum of a sequence of elements.
    pub fn sum(&self, terms: impl IntoIterator<Item = usize>) -> usize {
        terms
            .into_iter()
            .fold(Self::IDENTITY, |acc, t| self.op(acc, t))
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.order();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.op(a, b) != self.op(b, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != Self::IDENTITY {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn is_central(&self, a: usize) -> bool {
        self.elements().all(|b| self.op(a, b) == self.op(b, a))
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn span(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order()];
        inside[Self::IDENTITY] = true;
        let mut queue = VecDeque::from([Self::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.op(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        inside
    }

    /// Greedy generating set: scans elements in index order and keeps each one
    /// not already generated by the previous picks.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = self.span(&gens);
        for a in self.elements() {
            if !inside[a] {
                gens.push(a);
                inside = self.span(&gens);
            }
        }
        gens
    }

    pub fn trivial() -> Self {
        cyclic(1)
    }

    /// Direct product `A x B`; element `(a, b)` has index `a + |A| * b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let mut labels = Vec::with_capacity(na * nb);
        for j in 0..nb {
            for i in 0..na {
                labels.push(format!("({},{})", a.label(i), b.label(j)));
            }
        }
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.op(x % na, y % na) + na * b.op(x / na, y / na))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(format!("{}x{}", a.name(), b.name()), labels, table)
            .expect("direct product of groups is a group")
    }
}

/// Cyclic group of order `n` in power order: `1, t, t2, ...`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs a positive order");
    let labels = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "t".to_string(),
            k => format!("t{k}"),
        })
        .collect();
    let table = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    FiniteGroup::from_table(format!("c{n}"), labels, table).expect("cyclic table is a group")
}

/// Dihedral group of order `2n`; `r^i s^a` has index `i + n*a`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 2, "dihedral group needs n >= 2");
    let mut labels = Vec::with_capacity(2 * n);
    for a in 0..2 {
        for i in 0..n {
            let rot = match i {
                0 => String::new(),
                1 => "r".to_string(),
                i => format!("r{i}"),
            };
            let label = match (a, rot.is_empty()) {
                (0, true) => "1".to_string(),
                (0, false) => rot,
                (_, _) => format!("{rot}s"),
            };
            labels.push(label);
        }
    }
    // (r^i s^a)(r^j s^b) = r^(i + (-1)^a j) s^(a+b)
    let table = (0..2 * n)
        .map(|x| {
            let (i, a) = (x % n, x / n);
            (0..2 * n)
                .map(|y| {
                    let (j, b) = (y % n, y / n);
                    let rot = if a == 0 { (i + j) % n } else { (i + n - j) % n };
                    rot + n * ((a + b) % 2)
                })
                .collect()
        })
        .collect();
    let name = if n == 3 {
        "s3".to_string()
    } else {
        format!("d{n}")
    };
    FiniteGroup::from_table(name, labels, table).expect("dihedral table is a group")
}

/// Klein four-group `1, a, b, ab`.
pub fn klein_four() -> FiniteGroup {
    let labels = ["1", "a", "b", "ab"].map(String::from).to_vec();
    let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    FiniteGroup::from_table("v4", labels, table).expect("klein table is a group")
}

/// Quaternion group `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion() -> FiniteGroup {
    // unit (axis, negative) has index 2*axis + negative; axes 1, i, j, k
    fn unit_product(p: usize, q: usize) -> (usize, bool) {
        match (p, q) {
            (0, q) => (q, false),
            (p, 0) => (p, false),
            (p, q) if p == q => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .map(String::from)
        .to_vec();
    let table = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (axis, neg) = unit_product(x / 2, y / 2);
                    let negative = neg ^ (x % 2 == 1) ^ (y % 2 == 1);
                    2 * axis + usize::from(negative)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table("q8", labels, table).expect("quaternion table is a group")
}

/// Named standard groups with a fixed element ordering.
///
/// Recognized names: `c<n>` (cyclic, `1 <= n <= 64`), `trivial`, `v4`, `s3`,
/// `d<n>` (dihedral of order `2n`, `2 <= n <= 32`) and `q8`.
pub fn make_standard(name: &str) -> Result<FiniteGroup, GroupError> {
    let unknown = || GroupError::UnknownGroup(name.to_string());
    let key = name.trim().to_ascii_lowercase();
    match key.as_str() {
        "trivial" => return Ok(FiniteGroup::trivial()),
        "v4" => return Ok(klein_four()),
        "s3" => return Ok(dihedral(3)),
        "q8" => return Ok(quaternion()),
        _ => {}
    }
    let (kind, digits) = key.split_at(1.min(key.len()));
    let n: usize = digits.parse().map_err(|_| unknown())?;
    match kind {
        "c" if (1..=64).contains(&n) => Ok(cyclic(n)),
        "d" if (2..=32).contains(&n) => Ok(dihedral(n)),
        _ => Err(unknown()),
    }
}

/// Parses a group file and verifies all group axioms.
pub fn parse_group(text: &str) -> Result<FiniteGroup, GroupError> {
    let file: GroupFile =
        serde_json::from_str(text).map_err(|e| GroupError::Syntax(e.to_string()))?;
    FiniteGroup::from_file(file)
}

fn check_images(
    images: &[usize],
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
) -> Result<(), GroupError> {
    if images.len() != domain.order() {
        return Err(GroupError::LengthMismatch {
            expected: domain.order(),
            found: images.len(),
        });
    }
    if let Some((index, &value)) = images
        .iter()
        .enumerate()
        .find(|(_, &v)| v >= codomain.order())
    {
        return Err(GroupError::ImageOutOfRange {
            index,
            value,
            order: codomain.order(),
        });
    }
    Ok(())
}

/// Checks `f(i + j) = f(i) + f(j)` for all pairs; the witness is the first
/// failing pair in index order.
pub fn is_homomorphism(
    images: &[usize],
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
) -> Result<Verdict<(usize, usize)>, GroupError> {
    check_images(images, domain, codomain)?;
    let witness = domain.elements().find_map(|i| {
        domain
            .elements()
            .find(|&j| images[domain.op(i, j)] != codomain.op(images[i], images[j]))
            .map(|j| (i, j))
    });
    Ok(witness.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    domain: Arc<FiniteGroup>,
    codomain: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        domain: Arc<FiniteGroup>,
        codomain: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if let Verdict::Fail((a, b)) = is_homomorphism(&images, &domain, &codomain)? {
            return Err(GroupError::NotHomomorphism(a, b));
        }
        Ok(GroupHom {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let images = group.elements().collect();
        GroupHom {
            domain: group.clone(),
            codomain: group,
            images,
        }
    }

    pub fn zero(domain: Arc<FiniteGroup>, codomain: Arc<FiniteGroup>) -> Self {
        let images = vec![FiniteGroup::IDENTITY; domain.order()];
        GroupHom {
            domain,
            codomain,
            images,
        }
    }

    pub fn domain(&self) -> &Arc<FiniteGroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteGroup> {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> GroupHom {
        let images = inner.images.iter().map(|&x| self.images[x]).collect();
        GroupHom {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            images,
        }
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.domain
            .elements()
            .filter(|&a| self.images[a] == FiniteGroup::IDENTITY)
            .collect()
    }

    pub fn image_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.codomain.order()];
        for &b in &self.images {
            mask[b] = true;
        }
        mask
    }
}

/// Extends generator images to a homomorphism `A -> B` by closing over right
/// multiplication by generators. Returns `None` when the assignment is not
/// consistent with the relations of `A`.
pub fn extend_from_generators(
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; domain.order()];
    map[FiniteGroup::IDENTITY] = FiniteGroup::IDENTITY;
    let mut queue = VecDeque::from([FiniteGroup::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = domain.op(x, g);
            let value = codomain.op(map[x], img);
            if map[y] == usize::MAX {
                map[y] = value;
                queue.push_back(y);
            } else if map[y] != value {
                return None;
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    Some(map)
}

/// All homomorphisms `A -> B`, in lexicographic order of generator images.
pub fn all_homomorphisms(domain: &FiniteGroup, codomain: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = domain.generating_set();
    let mut out = Vec::new();
    let mut images = vec![0; gens.len()];
    loop {
        if let Some(map) = extend_from_generators(domain, codomain, &gens, &images) {
            out.push(map);
        }
        // odometer over generator images
        let mut k = 0;
        loop {
            if k == images.len() {
                return out;
            }
            images[k] += 1;
            if images[k] < codomain.order() {
                break;
            }
            images[k] = 0;
            k += 1;
        }
    }
}

pub fn all_automorphisms(group: &FiniteGroup) -> Vec<Vec<usize>> {
    all_homomorphisms(group, group)
        .into_iter()
        .filter(|m| m.iter().collect::<HashSet<_>>().len() == group.order())
        .collect()
}

/// Brute-force isomorphism search; returns the images of an isomorphism
/// `A -> B` if one exists.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let gens = a.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            b.elements()
                .filter(|&y| b.element_order(y) == a.element_order(g))
                .collect()
        })
        .collect();
    let mut choice = vec![0; gens.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend_from_generators(a, b, &gens, &images) {
            if map.iter().collect::<HashSet<_>>().len() == b.order() {
                return Some(map);
            }
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// A genuine action of `actor` on `target` by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    actor: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    maps: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(
        actor: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        if maps.len() != actor.order() {
            return Err(GroupError::LengthMismatch {
                expected: actor.order(),
                found: maps.len(),
            });
        }
        for (x, map) in maps.iter().enumerate() {
            if let Verdict::Fail((a, b)) = is_homomorphism(map, &target, &target)? {
                return Err(GroupError::InvalidAction(format!(
                    "map for {} is not a homomorphism at ({a}, {b})",
                    actor.label(x)
                )));
            }
            if map.iter().collect::<HashSet<_>>().len() != target.order() {
                return Err(GroupError::InvalidAction(format!(
                    "map for {} is not bijective",
                    actor.label(x)
                )));
            }
        }
        if maps[FiniteGroup::IDENTITY]
            .iter()
            .enumerate()
            .any(|(a, &b)| a != b)
        {
            return Err(GroupError::InvalidAction(
                "identity does not act trivially".into(),
            ));
        }
        for x in actor.elements() {
            for y in actor.elements() {
                let xy = actor.op(x, y);
                if let Some(a) = target
                    .elements()
                    .find(|&a| maps[x][maps[y][a]] != maps[xy][a])
                {
                    return Err(GroupError::InvalidAction(format!(
                        "L_{} L_{} != L_{} at {}",
                        actor.label(x),
                        actor.label(y),
                        actor.label(xy),
                        target.label(a)
                    )));
                }
            }
        }
        Ok(GroupAction {
            actor,
            target,
            maps,
        })
    }

    pub fn trivial(actor: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let maps = vec![target.elements().collect(); actor.order()];
        GroupAction {
            actor,
            target,
            maps,
        }
    }

    pub fn actor(&self) -> &Arc<FiniteGroup> {
        &self.actor
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    /// `x · a`.
    pub fn act(&self, x: usize, a: usize) -> usize {
        self.maps[x][a]
    }
}

/// Checks `f(x·a) = x·f(a)` for every actor element `x` and every `a`;
/// the witness is `(x, a)`.
pub fn is_equivariant(
    f: &GroupHom,
    act_domain: &GroupAction,
    act_codomain: &GroupAction,
) -> Result<Verdict<(usize, usize)>, GroupError> {
    if act_domain.actor() != act_codomain.actor() {
        return Err(GroupError::ActorMismatch);
    }
    if act_domain.target() != f.domain() || act_codomain.target() != f.codomain() {
        return Err(GroupError::InvalidAction(
            "action targets do not match the map".into(),
        ));
    }
    let actor = act_domain.actor();
    let witness = actor.elements().find_map(|x| {
        f.domain()
            .elements()
            .find(|&a| f.apply(act_domain.act(x, a)) != act_codomain.act(x, f.apply(a)))
            .map(|a| (x, a))
    });
    Ok(witness.into())
}

/// A group together with an action of `G` on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GGroup {
    carrier: Arc<FiniteGroup>,
    action: GroupAction,
}

impl GGroup {
    pub fn new(carrier: Arc<FiniteGroup>, action: GroupAction) -> Result<Self, GroupError> {
        if action.target() != &carrier {
            return Err(GroupError::InvalidAction(
                "action target is not the carrier".into(),
            ));
        }
        Ok(GGroup { carrier, action })
    }

    pub fn with_trivial_action(actor: Arc<FiniteGroup>, carrier: Arc<FiniteGroup>) -> Self {
        let action = GroupAction::trivial(actor, carrier.clone());
        GGroup { carrier, action }
    }

    pub fn carrier(&self) -> &Arc<FiniteGroup> {
        &self.carrier
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }
}

/// Label lookup that reports unknown labels by name.
pub fn lookup_labels(group: &FiniteGroup) -> HashMap<&str, usize> {
    group
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect()
}
