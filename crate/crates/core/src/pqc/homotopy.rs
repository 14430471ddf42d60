use std::ops::RangeInclusive;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{GradedMap, Pqc, PqcError};
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum HomotopyMode {
    /// Relations checked on the designated generators only.
    OnGenerators,
    /// Relations checked on every element (finite carriers).
    Global,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismWitness {
    pub degree: i32,
    pub generator: String,
    pub side: Side,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Relation {
    /// `f + s∂⁻ = ∂⁺s + g`
    Sum,
    /// `s∂⁺ = ∂⁻s`
    Commute,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyWitness {
    pub degree: i32,
    pub element: String,
    pub relation: Relation,
    pub lhs: String,
    pub rhs: String,
}

/// A degree-raising `s : X_n → Y_{n+1}` claimed to be a parity homotopy
/// `from → to`.
pub struct ParityHomotopy<S, T> {
    pub from: GradedMap<S, T>,
    pub to: GradedMap<S, T>,
    pub s: GradedMap<S, T>,
    pub mode: HomotopyMode,
}

impl<S, T> Clone for ParityHomotopy<S, T> {
    fn clone(&self) -> Self {
        ParityHomotopy {
            from: self.from.clone(),
            to: self.to.clone(),
            s: self.s.clone(),
            mode: self.mode,
        }
    }
}

fn morphism_at<X: Pqc, Y: Pqc>(
    x: &X,
    y: &Y,
    f: &GradedMap<X::Elem, Y::Elem>,
    n: i32,
    e: &X::Elem,
) -> Y::Elem {
    if x.contains(n) && y.contains(n) {
        f.apply(n, e)
    } else {
        y.zero(n)
    }
}

fn raise_at<X: Pqc, Y: Pqc>(
    x: &X,
    y: &Y,
    s: &GradedMap<X::Elem, Y::Elem>,
    n: i32,
    e: &X::Elem,
) -> Y::Elem {
    if x.contains(n) && y.contains(n + 1) {
        s.apply(n, e)
    } else {
        y.zero(n + 1)
    }
}

/// Checks that `f` commutes with `∂⁺` and `∂⁻` on every generator.
pub fn is_pqc_morphism<X: Pqc, Y: Pqc>(
    x: &X,
    y: &Y,
    f: &GradedMap<X::Elem, Y::Elem>,
) -> Result<Verdict<MorphismWitness>, PqcError> {
    if (x.lo(), x.hi()) != (y.lo(), y.hi()) {
        return Err(PqcError::DegreeMismatch(x.lo(), x.hi(), y.lo(), y.hi()));
    }
    for n in x.lo()..=x.hi() {
        let found = x.generators(n).par_iter().find_map_first(|g| {
            let image = morphism_at(x, y, f, n, g);
            let plus = morphism_at(x, y, f, n - 1, &x.dplus(n, g)) == y.dplus(n, &image);
            let minus = morphism_at(x, y, f, n - 1, &x.dminus(n, g)) == y.dminus(n, &image);
            let side = if !plus {
                Side::Plus
            } else if !minus {
                Side::Minus
            } else {
                return None;
            };
            Some(MorphismWitness {
                degree: n,
                generator: x.render(n, g),
                side,
            })
        });
        if let Some(w) = found {
            return Ok(Verdict::Fail(w));
        }
    }
    Ok(Verdict::Pass)
}

/// Evaluates both homotopy relations at a single element `w ∈ X_n`.
pub fn check_homotopy_at<X: Pqc, Y: Pqc>(
    x: &X,
    y: &Y,
    h: &ParityHomotopy<X::Elem, Y::Elem>,
    n: i32,
    w: &X::Elem,
) -> Verdict<HomotopyWitness> {
    let sw = raise_at(x, y, &h.s, n, w);
    let lhs = y.add(
        n,
        &morphism_at(x, y, &h.from, n, w),
        &raise_at(x, y, &h.s, n - 1, &x.dminus(n, w)),
    );
    let rhs = y.add(n, &y.dplus(n + 1, &sw), &morphism_at(x, y, &h.to, n, w));
    if lhs != rhs {
        return Verdict::Fail(HomotopyWitness {
            degree: n,
            element: x.render(n, w),
            relation: Relation::Sum,
            lhs: y.render(n, &lhs),
            rhs: y.render(n, &rhs),
        });
    }
    let lhs = raise_at(x, y, &h.s, n - 1, &x.dplus(n, w));
    let rhs = y.dminus(n + 1, &sw);
    if lhs != rhs {
        return Verdict::Fail(HomotopyWitness {
            degree: n,
            element: x.render(n, w),
            relation: Relation::Commute,
            lhs: y.render(n, &lhs),
            rhs: y.render(n, &rhs),
        });
    }
    Verdict::Pass
}

/// Checks both homotopy relations at every degree in `degrees`, on the
/// generators or on all elements depending on the mode.
pub fn is_parity_homotopy<X: Pqc, Y: Pqc>(
    x: &X,
    y: &Y,
    h: &ParityHomotopy<X::Elem, Y::Elem>,
    degrees: RangeInclusive<i32>,
) -> Result<Verdict<HomotopyWitness>, PqcError> {
    let mut work = Vec::new();
    for n in degrees {
        let elems = match h.mode {
            HomotopyMode::OnGenerators => x.generators(n),
            HomotopyMode::Global => x.elements(n).ok_or(PqcError::InfiniteCarrier(n))?,
        };
        work.push((n, elems));
    }
    for (n, elems) in work {
        let found = elems
            .par_iter()
            .find_map_first(|w| check_homotopy_at(x, y, h, n, w).into_witness());
        if let Some(w) = found {
            return Ok(Verdict::Fail(w));
        }
    }
    Ok(Verdict::Pass)
}

/// Checks that `s` is a parity contracting homotopy, i.e. a parity homotopy
/// from the zero morphism to the identity.
pub fn is_pch<X>(
    x: &Arc<X>,
    s: &GradedMap<X::Elem, X::Elem>,
    mode: HomotopyMode,
    degrees: RangeInclusive<i32>,
) -> Result<Verdict<HomotopyWitness>, PqcError>
where
    X: Pqc + 'static,
{
    let h = ParityHomotopy {
        from: GradedMap::zero(x.clone(), 0),
        to: GradedMap::identity(),
        s: s.clone(),
        mode,
    };
    is_parity_homotopy(x.as_ref(), x.as_ref(), &h, degrees)
}

/// First `(degree, element)` where `f` and `g` differ: on all elements of
/// finite carriers, on generators otherwise.
pub fn maps_agree<X: Pqc, Y: Pqc>(
    x: &X,
    y: &Y,
    f: &GradedMap<X::Elem, Y::Elem>,
    g: &GradedMap<X::Elem, Y::Elem>,
) -> Option<(i32, String)> {
    (x.lo()..=x.hi()).find_map(|n| {
        let elems = x.elements(n).unwrap_or_else(|| x.generators(n));
        elems
            .par_iter()
            .find_map_first(|e| {
                (morphism_at(x, y, f, n, e) != morphism_at(x, y, g, n, e)).then(|| x.render(n, e))
            })
            .map(|e| (n, e))
    })
}

/// Composes `s : f → g` and `t : g → h` into `s + t : f → h`.
pub fn vertical_compose<X, Y>(
    x: &X,
    y: &Arc<Y>,
    s: &ParityHomotopy<X::Elem, Y::Elem>,
    t: &ParityHomotopy<X::Elem, Y::Elem>,
) -> Result<ParityHomotopy<X::Elem, Y::Elem>, PqcError>
where
    X: Pqc,
    Y: Pqc + 'static,
{
    if s.mode != t.mode {
        return Err(PqcError::ModeMismatch);
    }
    if let Some((degree, element)) = maps_agree(x, y.as_ref(), &s.to, &t.from) {
        return Err(PqcError::MiddleMismatch { degree, element });
    }
    let (first, second, target) = (s.s.clone(), t.s.clone(), y.clone());
    Ok(ParityHomotopy {
        from: s.from.clone(),
        to: t.to.clone(),
        s: GradedMap::new(move |n, e| target.add(n + 1, &first.apply(n, e), &second.apply(n, e))),
        mode: s.mode,
    })
}

/// `h s : h f → h g`.
pub fn whisker_left<S: 'static, T: 'static, U: 'static>(
    h: &GradedMap<T, U>,
    s: &ParityHomotopy<S, T>,
) -> ParityHomotopy<S, U> {
    ParityHomotopy {
        from: s.from.then(0, h),
        to: s.to.then(0, h),
        s: s.s.then(1, h),
        mode: s.mode,
    }
}

/// `s h : f h → g h`.
pub fn whisker_right<R: 'static, S: 'static, T: 'static>(
    s: &ParityHomotopy<S, T>,
    h: &GradedMap<R, S>,
) -> ParityHomotopy<R, T> {
    ParityHomotopy {
        from: h.then(0, &s.from),
        to: h.then(0, &s.to),
        s: h.then(0, &s.s),
        mode: s.mode,
    }
}

/// For `s : f → g` on `X → Y` and `s′ : f′ → g′` on `Y → Z`, the homotopy
/// `f′f → g′g` obtained as `(s′f) + (g′s)`.
pub fn horizontal_compose<X, Z, B>(
    x: &X,
    z: &Arc<Z>,
    s: &ParityHomotopy<X::Elem, B>,
    s2: &ParityHomotopy<B, Z::Elem>,
) -> Result<ParityHomotopy<X::Elem, Z::Elem>, PqcError>
where
    X: Pqc,
    Z: Pqc + 'static,
    B: 'static,
{
    vertical_compose(x, z, &whisker_right(s2, &s.from), &whisker_left(&s2.to, s))
}
