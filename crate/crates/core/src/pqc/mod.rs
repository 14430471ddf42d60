//! Parity quasicomplexes (PQCs).
//!
//! A PQC is a graded family of groups `X_n` with two structure maps
//! `∂⁺_n, ∂⁻_n : X_n → X_{n-1}` per degree and no `∂∂ = 0` requirement.
//! Degrees outside `[lo, hi]` carry the trivial group.
//!
//! The [`Pqc`] trait abstracts over carrier kinds: Cayley-table groups
//! ([`FinitePqc`]), `(ℤ/k)^r` vector groups ([`LinearPqc`]), free groups on
//! named generators ([`FreePqc`]) and the bar resolution in
//! [`crate::bar`]. Maps between PQCs are degree-indexed closures
//! ([`GradedMap`]); the homotopy calculus and homology work against the trait.

mod finite;
mod free;
mod homology;
mod homotopy;
mod linear;
pub mod sampling;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::fingroup::GroupError;

pub use finite::{FiniteLevel, FinitePqc, LevelFile, MapTable, PqcFile};
pub use free::FreePqc;
pub use homology::{
    cycle_decomposition, cycles, homology, induced_map, induced_map_on, Decomposition, InducedMap,
    PointedPartition,
};
pub use homotopy::{
    check_homotopy_at, horizontal_compose, is_parity_homotopy, is_pch, is_pqc_morphism, maps_agree,
    vertical_compose, whisker_left, whisker_right, HomotopyMode, HomotopyWitness, MorphismWitness,
    ParityHomotopy, Relation, Side,
};
pub use linear::{LinearPqc, SparseColumn};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PqcError {
    #[error("degree ranges differ: source [{0}, {1}], target [{2}, {3}]")]
    DegreeMismatch(i32, i32, i32, i32),
    #[error("carrier at degree {0} is infinite")]
    InfiniteCarrier(i32),
    #[error("degree {0} is outside the complex")]
    DegreeOutOfRange(i32),
    #[error("homotopies do not share the middle morphism (degree {degree}, element {element})")]
    MiddleMismatch { degree: i32, element: String },
    #[error("homotopies use different modes")]
    ModeMismatch,
    #[error("{element} at degree {degree} is not a cycle")]
    NotACycle { degree: i32, element: String },
    #[error("induced map not well defined at degree {degree}: {first} and {second} are homologous but their images are not")]
    NotWellDefined {
        degree: i32,
        first: String,
        second: String,
    },
    #[error("carrier at degree {degree} has {size} elements, above the bound {bound}")]
    CarrierTooLarge {
        degree: i32,
        size: u128,
        bound: usize,
    },
    #[error("invalid complex: {0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A parity quasicomplex with carriers in degrees `lo..=hi`.
///
/// Implementations treat every degree outside that range as the trivial
/// group: `zero` is its only element and the structure maps out of or into it
/// are trivial.
pub trait Pqc: Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn lo(&self) -> i32;
    fn hi(&self) -> i32;

    fn contains(&self, n: i32) -> bool {
        self.lo() <= n && n <= self.hi()
    }

    fn zero(&self, n: i32) -> Self::Elem;
    fn add(&self, n: i32, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, n: i32, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, n: i32, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(n, a, &self.neg(n, b))
    }

    /// `∂⁺_n : X_n → X_{n-1}`.
    fn dplus(&self, n: i32, x: &Self::Elem) -> Self::Elem;
    /// `∂⁻_n : X_n → X_{n-1}`.
    fn dminus(&self, n: i32, x: &Self::Elem) -> Self::Elem;

    /// Designated generators of `X_n`.
    fn generators(&self, n: i32) -> Vec<Self::Elem>;

    /// Number of elements of `X_n`, or `None` when infinite.
    fn size(&self, n: i32) -> Option<usize>;
    /// The element with the given enumeration index (finite carriers only).
    fn element(&self, n: i32, index: usize) -> Self::Elem;
    /// Inverse of [`Pqc::element`] (finite carriers only).
    fn index_of(&self, n: i32, x: &Self::Elem) -> usize;

    fn render(&self, n: i32, x: &Self::Elem) -> String;

    fn elements(&self, n: i32) -> Option<Vec<Self::Elem>> {
        self.size(n)
            .map(|size| (0..size).map(|i| self.element(n, i)).collect())
    }

    /// Degrees strictly inside the range, where truncation does not interfere.
    fn interior(&self) -> std::ops::RangeInclusive<i32> {
        self.lo() + 1..=self.hi() - 1
    }
}

type GradedFn<S, T> = dyn Fn(i32, &S) -> T + Send + Sync;

/// A degree-indexed family of maps. Morphisms use it degree-preserving
/// (`X_n → Y_n`); homotopies use it degree-raising (`X_n → Y_{n+1}`).
pub struct GradedMap<S, T> {
    f: Arc<GradedFn<S, T>>,
}

impl<S, T> Clone for GradedMap<S, T> {
    fn clone(&self) -> Self {
        GradedMap { f: self.f.clone() }
    }
}

impl<S, T> fmt::Debug for GradedMap<S, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("GradedMap")
    }
}

/// A degree-preserving map; [`is_pqc_morphism`] decides whether it commutes
/// with both structure maps.
pub type PqcMorphism<S, T> = GradedMap<S, T>;

impl<S, T> GradedMap<S, T> {
    pub fn apply(&self, n: i32, x: &S) -> T {
        (self.f)(n, x)
    }
}

impl<S: 'static, T: 'static> GradedMap<S, T> {
    pub fn new(f: impl Fn(i32, &S) -> T + Send + Sync + 'static) -> Self {
        GradedMap { f: Arc::new(f) }
    }

    /// `outer ∘ self`, with `outer` applied at degree `n + shift`.
    pub fn then<U: 'static>(&self, shift: i32, outer: &GradedMap<T, U>) -> GradedMap<S, U> {
        let (inner, outer) = (self.clone(), outer.clone());
        GradedMap::new(move |n, x| outer.apply(n + shift, &inner.apply(n, x)))
    }

    /// The map sending everything to the identity element of `target`.
    pub fn zero<Y>(target: Arc<Y>, shift: i32) -> Self
    where
        Y: Pqc<Elem = T> + 'static,
    {
        GradedMap::new(move |n, _| target.zero(n + shift))
    }
}

impl<S: Clone + 'static> GradedMap<S, S> {
    pub fn identity() -> Self {
        GradedMap::new(|_, x: &S| x.clone())
    }
}
