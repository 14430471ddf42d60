use std::collections::{BTreeMap, HashSet};

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use super::{GradedMap, Pqc, PqcError};

/// The cycles at one degree split into homology classes. The class of the
/// identity comes first; the rest are ordered by their least element index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointedPartition {
    pub degree: i32,
    /// Element indices of the cycles, ascending.
    pub universe: Vec<usize>,
    pub labels: Vec<String>,
    /// Each class lists element indices, ascending.
    pub classes: Vec<Vec<usize>>,
    pub base: usize,
}

impl PointedPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, element: usize) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.binary_search(&element).is_ok())
    }

    pub fn label(&self, element: usize) -> &str {
        let pos = self
            .universe
            .binary_search(&element)
            .expect("element is not a cycle");
        &self.labels[pos]
    }

    pub fn class_labels(&self) -> Vec<Vec<String>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|&e| self.label(e).to_string()).collect())
            .collect()
    }
}

fn finite_size<X: Pqc>(x: &X, n: i32) -> Result<usize, PqcError> {
    x.size(n).ok_or(PqcError::InfiniteCarrier(n))
}

/// Element indices of all `x ∈ X_n` with `∂⁺x = ∂⁻x`.
pub fn cycles<X: Pqc>(x: &X, n: i32) -> Result<Vec<usize>, PqcError> {
    let size = finite_size(x, n)?;
    Ok((0..size)
        .into_par_iter()
        .filter(|&i| {
            let e = x.element(n, i);
            x.dplus(n, &e) == x.dminus(n, &e)
        })
        .collect())
}

/// Nonabelian homology at degree `n`: cycles modulo the equivalence generated
/// by the moves `x ↦ ∂⁺c + x − ∂⁻c`, `c ∈ X_{n+1}`.
pub fn homology<X: Pqc>(x: &X, n: i32) -> Result<PointedPartition, PqcError> {
    if !x.contains(n) {
        return Err(PqcError::DegreeOutOfRange(n));
    }
    let above = finite_size(x, n + 1)?;
    let universe = cycles(x, n)?;
    let mut position = vec![usize::MAX; finite_size(x, n)?];
    for (p, &e) in universe.iter().enumerate() {
        position[e] = p;
    }

    let moves: HashSet<(usize, usize)> = (0..above)
        .into_par_iter()
        .map(|i| {
            let c = x.element(n + 1, i);
            (
                x.index_of(n, &x.dplus(n + 1, &c)),
                x.index_of(n, &x.dminus(n + 1, &c)),
            )
        })
        .collect();
    let mut moves: Vec<_> = moves.into_iter().collect();
    moves.sort_unstable();

    let cycle_elems: Vec<X::Elem> = universe.iter().map(|&i| x.element(n, i)).collect();
    let edges: Vec<(usize, usize)> = moves
        .par_iter()
        .flat_map_iter(|&(p, m)| {
            let (plus, minus) = (x.element(n, p), x.element(n, m));
            let position = &position;
            cycle_elems.iter().enumerate().filter_map(move |(a, e)| {
                let moved = x.sub(n, &x.add(n, &plus, e), &minus);
                let b = position[x.index_of(n, &moved)];
                (b != usize::MAX && b != a).then_some((a, b))
            })
        })
        .collect();

    let mut uf = UnionFind::<usize>::new(universe.len());
    for (a, b) in edges {
        uf.union(a, b);
    }
    let mut grouped: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (p, &e) in universe.iter().enumerate() {
        grouped.entry(uf.find_mut(p)).or_default().push(e);
    }
    let mut classes: Vec<Vec<usize>> = grouped.into_values().collect();
    let identity = x.index_of(n, &x.zero(n));
    classes.sort_by_key(|c| (!c.contains(&identity), c[0]));

    let labels = universe
        .iter()
        .map(|&i| x.render(n, &x.element(n, i)))
        .collect();
    Ok(PointedPartition {
        degree: n,
        universe,
        labels,
        classes,
        base: 0,
    })
}

/// A map of homology classes: `class_map[i]` is the target class of source
/// class `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedMap {
    pub degree: i32,
    pub class_map: Vec<usize>,
}

impl InducedMap {
    pub fn is_identity(&self) -> bool {
        self.class_map.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// The map on homology classes induced by `f` at degree `n`, given both
/// partitions. Errors when a cycle maps to a non-cycle or a class splits.
pub fn induced_map_on<X: Pqc, Y: Pqc>(
    x: &X,
    y: &Y,
    hx: &PointedPartition,
    hy: &PointedPartition,
    f: &GradedMap<X::Elem, Y::Elem>,
) -> Result<InducedMap, PqcError> {
    let n = hx.degree;
    let class_map = hx
        .classes
        .iter()
        .map(|class| {
            let mut target: Option<(usize, usize)> = None;
            for &e in class {
                let image = f.apply(n, &x.element(n, e));
                let idx = y.index_of(n, &image);
                let Some(c) = hy.class_of(idx) else {
                    return Err(PqcError::NotACycle {
                        degree: n,
                        element: y.render(n, &image),
                    });
                };
                match target {
                    None => target = Some((e, c)),
                    Some((first, tc)) if tc != c => {
                        return Err(PqcError::NotWellDefined {
                            degree: n,
                            first: hx.label(first).to_string(),
                            second: hx.label(e).to_string(),
                        })
                    }
                    Some(_) => {}
                }
            }
            Ok(target.expect("classes are nonempty").1)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(InducedMap {
        degree: n,
        class_map,
    })
}

pub fn induced_map<X: Pqc, Y: Pqc>(
    x: &X,
    y: &Y,
    f: &GradedMap<X::Elem, Y::Elem>,
    n: i32,
) -> Result<InducedMap, PqcError> {
    induced_map_on(x, y, &homology(x, n)?, &homology(y, n)?, f)
}

/// Splitting of a cycle into a positive and a negative boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<E> {
    pub chain: E,
    pub positive: E,
    pub negative: E,
    pub valid: bool,
}

/// For a cycle `w` at degree `n`: `c = −s(w)`, positive `∂⁺c`, negative
/// `∂⁻c`, and whether `w = ∂⁺c − ∂⁻c`.
pub fn cycle_decomposition<X: Pqc>(
    x: &X,
    s: &GradedMap<X::Elem, X::Elem>,
    n: i32,
    w: &X::Elem,
) -> Result<Decomposition<X::Elem>, PqcError> {
    if x.dplus(n, w) != x.dminus(n, w) {
        return Err(PqcError::NotACycle {
            degree: n,
            element: x.render(n, w),
        });
    }
    let chain = x.neg(n + 1, &s.apply(n, w));
    let positive = x.dplus(n + 1, &chain);
    let negative = x.dminus(n + 1, &chain);
    let valid = *w == x.sub(n, &positive, &negative);
    Ok(Decomposition {
        chain,
        positive,
        negative,
        valid,
    })
}
