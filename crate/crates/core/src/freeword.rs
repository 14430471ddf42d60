//! Free groups as reduced words over an arbitrary generator alphabet.
//!
//! A [`Word`] is always stored in free-group normal form: no letter is
//! adjacent to its own inverse. Equality of group elements is therefore
//! literal equality of letter sequences.
//!
//! Homomorphisms out of a free group are given by "free addition": the unique
//! extension of an assignment on generators ([`extend_hom`]), or its
//! G-equivariant variant for free G-groups ([`extend_equivariant_hom`]).

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::fingroup::FiniteGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("generator {0} has no assigned image")]
    Unassigned(String),
}

/// One occurrence of a generator, positive (`+g`) or inverted (`-g`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter<G> {
    pub generator: G,
    pub inverse: bool,
}

impl<G> Letter<G> {
    pub fn positive(generator: G) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn negative(generator: G) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl<G: Clone> Letter<G> {
    pub fn flipped(&self) -> Self {
        Letter {
            generator: self.generator.clone(),
            inverse: !self.inverse,
        }
    }
}

/// A reduced word in the free group on `G`; the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word<G> {
    letters: Vec<Letter<G>>,
}

impl<G> Default for Word<G> {
    fn default() -> Self {
        Word {
            letters: Vec::new(),
        }
    }
}

impl<G: Clone + Eq> Word<G> {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(g: G) -> Self {
        Word {
            letters: vec![Letter::positive(g)],
        }
    }

    pub fn inverse_generator(g: G) -> Self {
        Word {
            letters: vec![Letter::negative(g)],
        }
    }

    /// Freely reduces an arbitrary letter sequence with one stack pass.
    pub fn reduce(letters: impl IntoIterator<Item = Letter<G>>) -> Self {
        let mut stack: Vec<Letter<G>> = Vec::new();
        for letter in letters {
            match stack.last() {
                Some(top) if top.generator == letter.generator && top.inverse != letter.inverse => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word { letters: stack }
    }

    pub fn letters(&self) -> &[Letter<G>] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// `-(a + b) = -b - a`: reverse the letters and flip every sign.
    pub fn negate(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(Letter::flipped).collect(),
        }
    }

    /// Reduced concatenation `self + other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        let mut rest = other.letters.iter().peekable();
        // only the seam can cancel since both inputs are reduced
        while let (Some(last), Some(next)) = (letters.last(), rest.peek()) {
            if last.generator == next.generator && last.inverse != next.inverse {
                letters.pop();
                rest.next();
            } else {
                break;
            }
        }
        letters.extend(rest.cloned());
        Word { letters }
    }

    /// `k·self` for an integer `k` (repeated sum, negated for `k < 0`).
    pub fn times(&self, k: i64) -> Self {
        let base = if k < 0 { self.negate() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::empty(), |acc, _| acc.concat(&base))
    }

    /// Renames every generator; the result is re-reduced because the renaming
    /// may identify generators.
    pub fn map_generators<H: Clone + Eq>(&self, mut f: impl FnMut(&G) -> H) -> Word<H> {
        Word::reduce(self.letters.iter().map(|l| Letter {
            generator: f(&l.generator),
            inverse: l.inverse,
        }))
    }

    /// Sum of letter signs: the image under the homomorphism sending every
    /// generator to 1 in the integers.
    pub fn signed_length(&self) -> i64 {
        self.letters.iter().map(Letter::sign).sum()
    }

    /// Renders in additive notation, e.g. `x[y] + [x] - [xy]`; the empty word
    /// renders as `0`.
    pub fn render_with(&self, mut show: impl FnMut(&G) -> String) -> String {
        if self.letters.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, letter) in self.letters.iter().enumerate() {
            let term = show(&letter.generator);
            match (i, letter.inverse) {
                (0, false) => out.push_str(&term),
                (0, true) => {
                    out.push('-');
                    out.push_str(&term);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&term);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&term);
                }
            }
        }
        out
    }
}

impl<G: Clone + Eq + fmt::Display> fmt::Display for Word<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|g| g.to_string()))
    }
}

impl<G: Clone + Eq> Add for Word<G> {
    type Output = Word<G>;
    fn add(self, rhs: Self) -> Self {
        self.concat(&rhs)
    }
}

impl<G: Clone + Eq> Add<&Word<G>> for &Word<G> {
    type Output = Word<G>;
    fn add(self, rhs: &Word<G>) -> Word<G> {
        self.concat(rhs)
    }
}

impl<G: Clone + Eq> Sub for Word<G> {
    type Output = Word<G>;
    fn sub(self, rhs: Self) -> Self {
        self.concat(&rhs.negate())
    }
}

impl<G: Clone + Eq> Sub<&Word<G>> for &Word<G> {
    type Output = Word<G>;
    fn sub(self, rhs: &Word<G>) -> Word<G> {
        self.concat(&rhs.negate())
    }
}

impl<G: Clone + Eq> Neg for Word<G> {
    type Output = Word<G>;
    fn neg(self) -> Self {
        self.negate()
    }
}

impl<G: Clone + Eq> Neg for &Word<G> {
    type Output = Word<G>;
    fn neg(self) -> Word<G> {
        self.negate()
    }
}

impl<G: Clone + Eq> std::iter::Sum for Word<G> {
    fn sum<I: Iterator<Item = Word<G>>>(iter: I) -> Self {
        iter.fold(Word::empty(), |acc, w| acc.concat(&w))
    }
}

/// The group structure of a homomorphism target.
pub trait GroupOps {
    type Elem: Clone + PartialEq;
    fn identity(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;
}

impl GroupOps for FiniteGroup {
    type Elem = usize;
    fn identity(&self) -> usize {
        FiniteGroup::IDENTITY
    }
    fn op(&self, a: &usize, b: &usize) -> usize {
        FiniteGroup::op(self, *a, *b)
    }
    fn inverse(&self, a: &usize) -> usize {
        self.inv(*a)
    }
}

/// The free group on `G` viewed as a homomorphism target.
pub struct FreeGroup<G>(PhantomData<G>);

impl<G> FreeGroup<G> {
    pub fn new() -> Self {
        FreeGroup(PhantomData)
    }
}

impl<G> Default for FreeGroup<G> {
    fn default() -> Self {
        Self::new()
    }
}

impl<G: Clone + Eq> GroupOps for FreeGroup<G> {
    type Elem = Word<G>;
    fn identity(&self) -> Word<G> {
        Word::empty()
    }
    fn op(&self, a: &Word<G>, b: &Word<G>) -> Word<G> {
        a.concat(b)
    }
    fn inverse(&self, a: &Word<G>) -> Word<G> {
        a.negate()
    }
}

/// The additive integers.
pub struct Integers;

impl GroupOps for Integers {
    type Elem = i64;
    fn identity(&self) -> i64 {
        0
    }
    fn op(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }
    fn inverse(&self, a: &i64) -> i64 {
        -a
    }
}

/// Images of generators; anything that can look up a generator's image.
pub trait Assignment<G, E> {
    fn image(&self, g: &G) -> Option<E>;
}

impl<G, E, F> Assignment<G, E> for F
where
    F: Fn(&G) -> Option<E>,
{
    fn image(&self, g: &G) -> Option<E> {
        self(g)
    }
}

/// A finite table of generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorAssignment<G: Ord, E> {
    images: BTreeMap<G, E>,
}

impl<G: Ord, E> Default for GeneratorAssignment<G, E> {
    fn default() -> Self {
        GeneratorAssignment {
            images: BTreeMap::new(),
        }
    }
}

impl<G: Ord, E: Clone> GeneratorAssignment<G, E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, g: G, image: E) -> &mut Self {
        self.images.insert(g, image);
        self
    }

    pub fn get(&self, g: &G) -> Option<&E> {
        self.images.get(g)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&G, &E)> {
        self.images.iter()
    }
}

impl<G: Ord, E> FromIterator<(G, E)> for GeneratorAssignment<G, E> {
    fn from_iter<I: IntoIterator<Item = (G, E)>>(iter: I) -> Self {
        GeneratorAssignment {
            images: iter.into_iter().collect(),
        }
    }
}

impl<G: Ord, E: Clone> Assignment<G, E> for GeneratorAssignment<G, E> {
    fn image(&self, g: &G) -> Option<E> {
        self.images.get(g).cloned()
    }
}

/// Image of `w` under the unique homomorphism extending `assign`.
pub fn extend_hom<G, T, A>(target: &T, assign: &A, w: &Word<G>) -> Result<T::Elem, WordError>
where
    G: Clone + Eq + fmt::Debug,
    T: GroupOps,
    A: Assignment<G, T::Elem> + ?Sized,
{
    let mut acc = target.identity();
    for letter in w.letters() {
        let image = assign
            .image(&letter.generator)
            .ok_or_else(|| WordError::Unassigned(format!("{:?}", letter.generator)))?;
        let term = if letter.inverse {
            target.inverse(&image)
        } else {
            image
        };
        acc = target.op(&acc, &term);
    }
    Ok(acc)
}

/// A generator of a free G-group: a group element acting on a base generator.
pub trait Prefixed {
    type Base;
    fn prefix(&self) -> usize;
    fn base(&self) -> Self::Base;
}

/// Image of `w` under the G-equivariant homomorphism determined by images of
/// base generators: `x·b ↦ x · assign(b)`, with `act(x, e)` the action of `G`
/// on the target.
pub fn extend_equivariant_hom<G, T, A, F>(
    target: &T,
    base_assign: &A,
    act: F,
    w: &Word<G>,
) -> Result<T::Elem, WordError>
where
    G: Prefixed + Clone + Eq + fmt::Debug,
    T: GroupOps,
    A: Assignment<G::Base, T::Elem> + ?Sized,
    F: Fn(usize, &T::Elem) -> T::Elem,
{
    let induced = |g: &G| {
        base_assign
            .image(&g.base())
            .map(|img| act(g.prefix(), &img))
    };
    extend_hom(target, &induced, w)
}
