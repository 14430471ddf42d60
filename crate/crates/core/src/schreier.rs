//! Group extensions `0 → N → E → G → 1` with pointed sections.
//!
//! A section `u` and the retraction `v` (defined by `b = χ(v(b)) + u(σ(b))`)
//! give the factor set `f(x,y) = v(u(x) + u(y) − u(xy))` and the pseudoaction
//! `L_x(n) = v(u(x) + χ(n) − u(x))`. Conversely any pair `(L, f)` defines the
//! pair law `(a,x) + (b,y) = (a + L_x(b) + f(x,y), xy)` on `N × G`, which is a
//! group exactly when the cocycle and compatibility identities hold.
//!
//! Comparison maps into the bar resolution: `g₁(x[y]) = u(x) + u(y) − u(x)`
//! into `E` and `g₂(a[x|y]) = L_a(f(x,y))` into `N`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bar::{BarComplex, BarGenerator, BarWord};
use crate::fingroup::{
    all_automorphisms, cyclic, dihedral, extend_from_generators, klein_four, quaternion,
    FiniteGroup, GroupAction, GroupError, GroupHom, GroupSource,
};
use crate::freeword::{extend_hom, GeneratorAssignment, GroupOps, Word};
use crate::verdict::Verdict;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchreierError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("factor set is not normalized at ({0}, {1})")]
    NotNormalized(String, String),
    #[error("pseudoaction is invalid: {0}")]
    InvalidPseudoAction(String),
    #[error("{0} has no decomposition chi(a) + u(sigma(b))")]
    Decomposition(String),
    #[error("conjugating chi({element}) by u({actor}) leaves the image of chi")]
    LeavesImage { actor: String, element: String },
    #[error("sigma misses {0}")]
    NotSurjective(String),
    #[error("pair law is not a group: {0}")]
    NotAGroup(GroupError),
    #[error("search space of {size} exceeds the bound {bound}")]
    TooLarge { size: u128, bound: u128 },
    #[error("extensions have different N or G")]
    Incomparable,
    #[error("{0} is not abelian")]
    NotAbelian(String),
    #[error("malformed input: {0}")]
    Syntax(String),
}

/// `0 → N →χ E →σ G → 1`, optionally with a pointed section `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub n: Arc<FiniteGroup>,
    pub e: Arc<FiniteGroup>,
    pub g: Arc<FiniteGroup>,
    pub chi: GroupHom,
    pub sigma: GroupHom,
    pub u: Option<Vec<usize>>,
}

/// `{ "N", "E", "G", "chi", "sigma", "u"? }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionFile {
    #[serde(rename = "N")]
    pub n: GroupSource,
    #[serde(rename = "E")]
    pub e: GroupSource,
    #[serde(rename = "G")]
    pub g: GroupSource,
    pub chi: Vec<usize>,
    pub sigma: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<usize>>,
}

impl Extension {
    /// Builds the data, checking that `chi` and `sigma` are homomorphisms and
    /// that `u` has the right shape. Exactness is checked separately by
    /// [`validate_extension`].
    pub fn new(
        n: Arc<FiniteGroup>,
        e: Arc<FiniteGroup>,
        g: Arc<FiniteGroup>,
        chi: Vec<usize>,
        sigma: Vec<usize>,
        u: Option<Vec<usize>>,
    ) -> Result<Self, SchreierError> {
        let chi = GroupHom::new(n.clone(), e.clone(), chi)?;
        let sigma = GroupHom::new(e.clone(), g.clone(), sigma)?;
        if let Some(u) = &u {
            if u.len() != g.order() || u.iter().any(|&b| b >= e.order()) {
                return Err(SchreierError::Shape(format!(
                    "section must map {} elements into E",
                    g.order()
                )));
            }
        }
        Ok(Extension {
            n,
            e,
            g,
            chi,
            sigma,
            u,
        })
    }

    pub fn from_file_with(
        file: ExtensionFile,
        mut resolve: impl FnMut(&GroupSource) -> Result<FiniteGroup, GroupError>,
    ) -> Result<Self, SchreierError> {
        let n = Arc::new(resolve(&file.n)?);
        let e = Arc::new(resolve(&file.e)?);
        let g = Arc::new(resolve(&file.g)?);
        Self::new(n, e, g, file.chi, file.sigma, file.u)
    }

    pub fn parse(text: &str) -> Result<Self, SchreierError> {
        let file: ExtensionFile =
            serde_json::from_str(text).map_err(|e| SchreierError::Syntax(e.to_string()))?;
        Self::from_file_with(file, GroupSource::resolve)
    }

    pub fn to_file(&self) -> ExtensionFile {
        ExtensionFile {
            n: GroupSource::Inline(self.n.to_file()),
            e: GroupSource::Inline(self.e.to_file()),
            g: GroupSource::Inline(self.g.to_file()),
            chi: self.chi.images().to_vec(),
            sigma: self.sigma.images().to_vec(),
            u: self.u.clone(),
        }
    }

    /// The stored section, or the canonical one.
    pub fn section(&self) -> Result<Vec<usize>, SchreierError> {
        match &self.u {
            Some(u) => Ok(u.clone()),
            None => pointed_section(self),
        }
    }
}

/// Checks injectivity of `chi`, surjectivity of `sigma`, `image = kernel`,
/// and the section law when a section is present.
pub fn validate_extension(ext: &Extension) -> Verdict<String> {
    let (n, e, g) = (&ext.n, &ext.e, &ext.g);
    if let Some(a) = n
        .elements()
        .skip(1)
        .find(|&a| ext.chi.apply(a) == FiniteGroup::IDENTITY)
    {
        return Verdict::Fail(format!("chi is not injective: chi({}) = 0", n.label(a)));
    }
    let hit = ext.sigma.image_mask();
    if let Some(x) = g.elements().find(|&x| !hit[x]) {
        return Verdict::Fail(format!("sigma misses {}", g.label(x)));
    }
    if let Some(a) = n
        .elements()
        .find(|&a| ext.sigma.apply(ext.chi.apply(a)) != FiniteGroup::IDENTITY)
    {
        return Verdict::Fail(format!("sigma(chi({})) is not 0", n.label(a)));
    }
    let image = ext.chi.image_mask();
    if let Some(b) = e
        .elements()
        .find(|&b| ext.sigma.apply(b) == FiniteGroup::IDENTITY && !image[b])
    {
        return Verdict::Fail(format!(
            "{} is in the kernel of sigma but not in the image of chi",
            e.label(b)
        ));
    }
    if let Some(u) = &ext.u {
        if u[FiniteGroup::IDENTITY] != FiniteGroup::IDENTITY {
            return Verdict::Fail("u is not pointed".into());
        }
        if let Some(x) = g.elements().find(|&x| ext.sigma.apply(u[x]) != x) {
            return Verdict::Fail(format!("sigma(u({})) != {}", g.label(x), g.label(x)));
        }
    }
    Verdict::Pass
}

/// `u(1) = 0` and `u(x)` the least-index preimage of `x` under `sigma`.
pub fn pointed_section(ext: &Extension) -> Result<Vec<usize>, SchreierError> {
    let mut u = vec![usize::MAX; ext.g.order()];
    for b in ext.e.elements() {
        let x = ext.sigma.apply(b);
        if u[x] == usize::MAX {
            u[x] = b;
        }
    }
    u[FiniteGroup::IDENTITY] = FiniteGroup::IDENTITY;
    match u.iter().position(|&b| b == usize::MAX) {
        Some(x) => Err(SchreierError::NotSurjective(ext.g.label(x).to_string())),
        None => Ok(u),
    }
}

/// `v(b)`: the unique `a` with `b = chi(a) + u(sigma(b))`.
pub fn retraction_v(ext: &Extension, u: &[usize]) -> Result<Vec<usize>, SchreierError> {
    let mut preimage = vec![usize::MAX; ext.e.order()];
    for a in ext.n.elements() {
        preimage[ext.chi.apply(a)] = a;
    }
    ext.e
        .elements()
        .map(|b| {
            let rest = ext.e.sub(b, u[ext.sigma.apply(b)]);
            match preimage[rest] {
                usize::MAX => Err(SchreierError::Decomposition(ext.e.label(b).to_string())),
                a => Ok(a),
            }
        })
        .collect()
}

fn section_law(ext: &Extension, u: &[usize]) -> Option<String> {
    ext.g
        .elements()
        .find(|&x| ext.sigma.apply(u[x]) != x)
        .map(|x| format!("sigma(u({})) != {}", ext.g.label(x), ext.g.label(x)))
}

fn decomposition_law(ext: &Extension, u: &[usize], v: &[usize]) -> Option<String> {
    ext.e
        .elements()
        .find(|&b| ext.e.op(ext.chi.apply(v[b]), u[ext.sigma.apply(b)]) != b)
        .map(|b| format!("chi(v({0})) + u(sigma({0})) != {0}", ext.e.label(b)))
}

fn retraction_law(ext: &Extension, v: &[usize]) -> Option<String> {
    ext.n
        .elements()
        .find(|&a| v[ext.chi.apply(a)] != a)
        .map(|a| format!("v(chi({0})) != {0}", ext.n.label(a)))
}

/// The contraction identities `σu = id`, `χv + uσ = id`, `vχ = id`.
pub fn check_contraction(ext: &Extension, u: &[usize], v: &[usize]) -> Verdict<String> {
    section_law(ext, u)
        .or_else(|| decomposition_law(ext, u, v))
        .or_else(|| retraction_law(ext, v))
        .into()
}

/// The adjoint sequence `G →u E →v N` in pointed sets: `vu = 0`, `vχ = id`,
/// `σu = id` and `χv + uσ = id`.
pub fn adjoint_check(ext: &Extension, u: &[usize], v: &[usize]) -> Verdict<String> {
    ext.g
        .elements()
        .find(|&x| v[u[x]] != FiniteGroup::IDENTITY)
        .map(|x| format!("v(u({})) != 0", ext.g.label(x)))
        .or_else(|| retraction_law(ext, v))
        .or_else(|| section_law(ext, u))
        .or_else(|| decomposition_law(ext, u, v))
        .into()
}

/// `f(x,y)` for all `x, y ∈ G`, valued in `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorSet {
    #[serde(rename = "f")]
    pub values: Vec<Vec<usize>>,
}

impl FactorSet {
    pub fn zero(g: usize) -> Self {
        FactorSet {
            values: vec![vec![FiniteGroup::IDENTITY; g]; g],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.values[x][y]
    }

    pub fn check_shape(&self, n: &FiniteGroup, g: &FiniteGroup) -> Result<(), SchreierError> {
        if self.values.len() != g.order()
            || self
                .values
                .iter()
                .any(|row| row.len() != g.order() || row.iter().any(|&a| a >= n.order()))
        {
            return Err(SchreierError::Shape(format!(
                "f must be {0}x{0} with entries below {1}",
                g.order(),
                n.order()
            )));
        }
        Ok(())
    }

    pub fn normalization_failure(&self, g: &FiniteGroup) -> Option<(usize, usize)> {
        g.elements().find_map(|x| {
            if self.get(FiniteGroup::IDENTITY, x) != FiniteGroup::IDENTITY {
                Some((FiniteGroup::IDENTITY, x))
            } else if self.get(x, FiniteGroup::IDENTITY) != FiniteGroup::IDENTITY {
                Some((x, FiniteGroup::IDENTITY))
            } else {
                None
            }
        })
    }

    /// Inline form `"x,y=a; x',y'=a'"`: `x, y` are labels in `G`, `a` is an
    /// index into `N` (or, failing that, a label). Unlisted pairs are 0.
    pub fn parse_inline(
        text: &str,
        n: &FiniteGroup,
        g: &FiniteGroup,
    ) -> Result<Self, SchreierError> {
        let mut f = FactorSet::zero(g.order());
        let label = |group: &FiniteGroup, s: &str| {
            group
                .index_of(s.trim())
                .ok_or_else(|| SchreierError::Syntax(format!("unknown element {s:?}")))
        };
        for entry in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (pair, value) = entry
                .split_once('=')
                .ok_or_else(|| SchreierError::Syntax(entry.to_string()))?;
            let (x, y) = pair
                .split_once(',')
                .ok_or_else(|| SchreierError::Syntax(entry.to_string()))?;
            let value = match value.trim().parse::<usize>() {
                Ok(a) if a < n.order() => a,
                Ok(a) => return Err(SchreierError::Syntax(format!("index {a} is outside N"))),
                Err(_) => label(n, value)?,
            };
            f.values[label(g, x)?][label(g, y)?] = value;
        }
        Ok(f)
    }
}

/// `L_x` for every `x ∈ G`: automorphisms of `N` with `L_1 = id`, not
/// necessarily composing to an action.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PseudoAction {
    #[serde(rename = "L")]
    pub maps: Vec<Vec<usize>>,
}

impl PseudoAction {
    pub fn trivial(n: &FiniteGroup, g: &FiniteGroup) -> Self {
        PseudoAction {
            maps: vec![n.elements().collect(); g.order()],
        }
    }

    pub fn from_action(action: &GroupAction) -> Self {
        PseudoAction {
            maps: action.maps().to_vec(),
        }
    }

    pub fn act(&self, x: usize, a: usize) -> usize {
        self.maps[x][a]
    }

    /// Checks shape, `L_1 = id` and that every `L_x` is an automorphism.
    pub fn validate(&self, n: &FiniteGroup, g: &FiniteGroup) -> Result<(), SchreierError> {
        if self.maps.len() != g.order()
            || self
                .maps
                .iter()
                .any(|m| m.len() != n.order() || m.iter().any(|&a| a >= n.order()))
        {
            return Err(SchreierError::Shape(format!(
                "L must have {} maps on {} elements",
                g.order(),
                n.order()
            )));
        }
        if let Some(a) = n
            .elements()
            .find(|&a| self.maps[FiniteGroup::IDENTITY][a] != a)
        {
            return Err(SchreierError::InvalidPseudoAction(format!(
                "L_1 moves {}",
                n.label(a)
            )));
        }
        for (x, m) in self.maps.iter().enumerate() {
            if m.iter().collect::<HashSet<_>>().len() != n.order() {
                return Err(SchreierError::InvalidPseudoAction(format!(
                    "L_{} is not bijective",
                    g.label(x)
                )));
            }
            let broken = n
                .elements()
                .any(|a| n.elements().any(|b| m[n.op(a, b)] != n.op(m[a], m[b])));
            if broken {
                return Err(SchreierError::InvalidPseudoAction(format!(
                    "L_{} is not a homomorphism",
                    g.label(x)
                )));
            }
        }
        Ok(())
    }

    fn inverse_maps(&self) -> Vec<Vec<usize>> {
        self.maps
            .iter()
            .map(|m| {
                let mut inv = vec![0; m.len()];
                for (a, &b) in m.iter().enumerate() {
                    inv[b] = a;
                }
                inv
            })
            .collect()
    }
}

/// `f(x,y) = v(u(x) + u(y) − u(xy))`.
pub fn factor_set(ext: &Extension, u: &[usize], v: &[usize]) -> FactorSet {
    let (e, g) = (&ext.e, &ext.g);
    let values = g
        .elements()
        .map(|x| {
            g.elements()
                .map(|y| v[e.sub(e.op(u[x], u[y]), u[g.op(x, y)])])
                .collect()
        })
        .collect();
    FactorSet { values }
}

/// `L_x(a) = v(u(x) + chi(a) − u(x))`.
pub fn pseudoaction_of(
    ext: &Extension,
    u: &[usize],
    v: &[usize],
) -> Result<PseudoAction, SchreierError> {
    let (n, e, g) = (&ext.n, &ext.e, &ext.g);
    let maps = g
        .elements()
        .map(|x| {
            n.elements()
                .map(|a| {
                    let conj = e.conjugate(u[x], ext.chi.apply(a));
                    if ext.sigma.apply(conj) != FiniteGroup::IDENTITY {
                        return Err(SchreierError::LeavesImage {
                            actor: g.label(x).to_string(),
                            element: n.label(a).to_string(),
                        });
                    }
                    Ok(v[conj])
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<usize>>, _>>()?;
    Ok(PseudoAction { maps })
}

/// `L_x(f(y,z)) + f(x,yz) = f(x,y) + f(xy,z)` for all triples; the witness
/// is the first failing `(x, y, z)`.
pub fn check_cocycle(
    n: &FiniteGroup,
    g: &FiniteGroup,
    l: &PseudoAction,
    f: &FactorSet,
) -> Verdict<(usize, usize, usize)> {
    let elems: Vec<usize> = g.elements().collect();
    elems
        .par_iter()
        .find_map_first(|&x| {
            g.elements().find_map(|y| {
                g.elements().find_map(|z| {
                    let lhs = n.op(l.act(x, f.get(y, z)), f.get(x, g.op(y, z)));
                    let rhs = n.op(f.get(x, y), f.get(g.op(x, y), z));
                    (lhs != rhs).then_some((x, y, z))
                })
            })
        })
        .into()
}

/// `L_x L_y(a) + f(x,y) = f(x,y) + L_{xy}(a)` for all `x, y, a`.
pub fn check_mc(
    n: &FiniteGroup,
    g: &FiniteGroup,
    l: &PseudoAction,
    f: &FactorSet,
) -> Verdict<(usize, usize, usize)> {
    let elems: Vec<usize> = g.elements().collect();
    elems
        .par_iter()
        .find_map_first(|&x| {
            g.elements().find_map(|y| {
                n.elements().find_map(|a| {
                    let lhs = n.op(l.act(x, l.act(y, a)), f.get(x, y));
                    let rhs = n.op(f.get(x, y), l.act(g.op(x, y), a));
                    (lhs != rhs).then_some((x, y, a))
                })
            })
        })
        .into()
}

fn pair_table(
    n: &FiniteGroup,
    g: &FiniteGroup,
    l: &PseudoAction,
    f: &FactorSet,
) -> (Vec<String>, Vec<Vec<usize>>) {
    let k = n.order();
    let size = k * g.order();
    let labels = (0..size)
        .map(|i| format!("({},{})", n.label(i % k), g.label(i / k)))
        .collect();
    let table = (0..size)
        .map(|p| {
            let (a, x) = (p % k, p / k);
            (0..size)
                .map(|q| {
                    let (b, y) = (q % k, q / k);
                    n.sum([a, l.act(x, b), f.get(x, y)]) + k * g.op(x, y)
                })
                .collect()
        })
        .collect();
    (labels, table)
}

/// The pair law on `N × G` (element `(a, x)` has index `a + |N|·x`). When it
/// is a group, returns the extension with `chi(a) = (a, 1)`,
/// `sigma(a, x) = x` and section `u(x) = (0, x)`.
pub fn schreier_build(
    n: &Arc<FiniteGroup>,
    g: &Arc<FiniteGroup>,
    l: &PseudoAction,
    f: &FactorSet,
) -> Result<Extension, SchreierError> {
    f.check_shape(n, g)?;
    l.validate(n, g)?;
    if let Some((x, y)) = f.normalization_failure(g) {
        return Err(SchreierError::NotNormalized(
            g.label(x).to_string(),
            g.label(y).to_string(),
        ));
    }
    let (labels, table) = pair_table(n, g, l, f);
    let name = format!("{}x{}", n.name(), g.name());
    let e =
        Arc::new(FiniteGroup::from_table(name, labels, table).map_err(SchreierError::NotAGroup)?);
    let k = n.order();
    let chi = n.elements().collect();
    let sigma = e.elements().map(|p| p / k).collect();
    let u = g.elements().map(|x| k * x).collect();
    Extension::new(n.clone(), e, g.clone(), chi, sigma, Some(u))
}

/// Whether some isomorphism `φ : E₁ → E₂` satisfies `φχ₁ = χ₂` and
/// `σ₂φ = σ₁`. Requires identical `N` and `G` tables.
pub fn are_equivalent(
    a: &Extension,
    b: &Extension,
    max_order: usize,
) -> Result<bool, SchreierError> {
    let same = |x: &FiniteGroup, y: &FiniteGroup| {
        x.order() == y.order() && x.elements().all(|i| x.row(i) == y.row(i))
    };
    if !same(&a.n, &b.n) || !same(&a.g, &b.g) {
        return Err(SchreierError::Incomparable);
    }
    if a.e.order() != b.e.order() {
        return Ok(false);
    }
    if a.e.order() > max_order {
        return Err(SchreierError::TooLarge {
            size: a.e.order() as u128,
            bound: max_order as u128,
        });
    }
    let gens = a.e.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            b.e.elements()
                .filter(|&y| {
                    b.sigma.apply(y) == a.sigma.apply(x)
                        && b.e.element_order(y) == a.e.element_order(x)
                })
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(false);
    }
    let mut choice = vec![0; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend_from_generators(&a.e, &b.e, &gens, &images) {
            let bijective = map.iter().collect::<HashSet<_>>().len() == b.e.order();
            let chi_ok =
                a.n.elements()
                    .all(|x| map[a.chi.apply(x)] == b.chi.apply(x));
            let sigma_ok =
                a.e.elements()
                    .all(|x| b.sigma.apply(map[x]) == a.sigma.apply(x));
            if bijective && chi_ok && sigma_ok {
                return Ok(true);
            }
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(false);
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

/// Number of equivalence classes among `exts` under [`are_equivalent`].
pub fn count_equivalence_classes(
    exts: &[Extension],
    max_order: usize,
) -> Result<usize, SchreierError> {
    let mut reps: Vec<&Extension> = Vec::new();
    for ext in exts {
        let mut known = false;
        for rep in &reps {
            if are_equivalent(rep, ext, max_order)? {
                known = true;
                break;
            }
        }
        if !known {
            reps.push(ext);
        }
    }
    Ok(reps.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct H2Result {
    pub class_count: usize,
    pub cocycle_count: usize,
    pub coboundary_count: usize,
    /// One factor set per class: the least member of the class.
    pub representatives: Vec<FactorSet>,
    /// Every normalized cocycle, in enumeration order.
    #[serde(skip)]
    pub cocycles: Vec<FactorSet>,
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// `H²(G, A)` for an abelian `A` with a genuine action, by enumerating all
/// normalized cocycles and quotienting by coboundaries
/// `δh(x,y) = L_x(h(y)) − h(xy) + h(x)`.
pub fn h2_oracle(
    g: &FiniteGroup,
    a: &FiniteGroup,
    action: &GroupAction,
    bound: u128,
) -> Result<H2Result, SchreierError> {
    if !a.is_abelian() {
        return Err(SchreierError::NotAbelian(a.name().to_string()));
    }
    let l = PseudoAction::from_action(action);
    let free = (g.order() - 1) * (g.order() - 1);
    let size = (0..free).fold(1u128, |acc, _| acc.saturating_mul(a.order() as u128));
    if size > bound {
        return Err(SchreierError::TooLarge { size, bound });
    }
    let pairs: Vec<(usize, usize)> = (1..g.order())
        .flat_map(|x| (1..g.order()).map(move |y| (x, y)))
        .collect();

    let mut cocycles = Vec::new();
    let mut digits = vec![0; free];
    loop {
        let mut f = FactorSet::zero(g.order());
        for (&(x, y), &d) in pairs.iter().zip(&digits) {
            f.values[x][y] = d;
        }
        if check_cocycle(a, g, &l, &f).is_pass() {
            cocycles.push(f);
        }
        if !odometer(&mut digits, a.order()) {
            break;
        }
    }

    let mut coboundaries: HashSet<FactorSet> = HashSet::new();
    let mut h = vec![0; g.order() - 1];
    loop {
        let hv = |x: usize| if x == 0 { 0 } else { h[x - 1] };
        let values = g
            .elements()
            .map(|x| {
                g.elements()
                    .map(|y| a.sum([l.act(x, hv(y)), a.inv(hv(g.op(x, y))), hv(x)]))
                    .collect()
            })
            .collect();
        coboundaries.insert(FactorSet { values });
        if !odometer(&mut h, a.order()) {
            break;
        }
    }
    let coboundaries: Vec<FactorSet> = coboundaries.into_iter().collect();

    let mut classes: BTreeMap<FactorSet, ()> = BTreeMap::new();
    for f in &cocycles {
        let canonical = coboundaries
            .iter()
            .map(|b| FactorSet {
                values: f
                    .values
                    .iter()
                    .zip(&b.values)
                    .map(|(r, s)| r.iter().zip(s).map(|(&p, &q)| a.op(p, q)).collect())
                    .collect(),
            })
            .min()
            .expect("the zero coboundary is always present");
        classes.insert(canonical, ());
    }
    Ok(H2Result {
        class_count: classes.len(),
        cocycle_count: cocycles.len(),
        coboundary_count: coboundaries.len(),
        representatives: classes.into_keys().collect(),
        cocycles,
    })
}

/// `g₁` on `B₁` generators and `g₂` on `B₂` generators.
#[derive(Clone, Debug)]
pub struct ComparisonMaps {
    pub g1: GeneratorAssignment<BarGenerator, usize>,
    pub g2: GeneratorAssignment<BarGenerator, usize>,
}

/// `g₁(x[y]) = u(x) + u(y) − u(x)` in `E`; `g₂(a[x|y]) = L_a(f(x,y))` in `N`.
pub fn comparison_maps(
    ext: &Extension,
    u: &[usize],
    l: &PseudoAction,
    f: &FactorSet,
    bar: &BarComplex,
) -> ComparisonMaps {
    let e = &ext.e;
    let g1 = bar
        .generators_at(1)
        .into_iter()
        .map(|b| {
            let value = e.conjugate(u[b.prefix], u[b.tuple[0]]);
            (b, value)
        })
        .collect();
    let g2 = bar
        .generators_at(2)
        .into_iter()
        .map(|b| {
            let value = l.act(b.prefix, f.get(b.tuple[0], b.tuple[1]));
            (b, value)
        })
        .collect();
    ComparisonMaps { g1, g2 }
}

/// `g₂ ∂⁺₃ = g₂ ∂⁻₃` on every generator of `B₃`.
pub fn check_bar_cocycle(
    ext: &Extension,
    maps: &ComparisonMaps,
    bar: &BarComplex,
) -> Verdict<String> {
    let gens = bar.generators_at(3);
    gens.par_iter()
        .find_map_first(|b| {
            let plus = extend_hom(ext.n.as_ref(), &maps.g2, &bar.d_plus_generator(b)).ok()?;
            let minus = extend_hom(ext.n.as_ref(), &maps.g2, &bar.d_minus_generator(b)).ok()?;
            (plus != minus).then(|| {
                format!(
                    "{}: g2(d+) = {} but g2(d-) = {}",
                    bar.render_generator(b),
                    ext.n.label(plus),
                    ext.n.label(minus)
                )
            })
        })
        .into()
}

/// `χ g₂ = g₁ ∂₂` on every generator `a[x|y]` of `B₂`.
pub fn check_chain_square(
    ext: &Extension,
    maps: &ComparisonMaps,
    bar: &BarComplex,
) -> Verdict<String> {
    let gens = bar.generators_at(2);
    gens.par_iter()
        .find_map_first(|b| {
            let w = Word::generator(b.clone());
            let boundary = bar.quasi_differential(2, &w).ok()?;
            let lhs = ext.chi.apply(*maps.g2.get(b)?);
            let rhs = extend_hom(ext.e.as_ref(), &maps.g1, &boundary).ok()?;
            (lhs != rhs).then(|| {
                format!(
                    "{}: chi(g2) = {} but g1(d) = {}",
                    bar.render_generator(b),
                    ext.e.label(lhs),
                    ext.e.label(rhs)
                )
            })
        })
        .into()
}

/// `N × G` with the pair law, as a homomorphism target. The inverse is the
/// right inverse `p + p' = 0`, which is the inverse whenever the law is a
/// group.
struct PairCarrier<'a> {
    n: &'a FiniteGroup,
    g: &'a FiniteGroup,
    l: &'a PseudoAction,
    l_inv: Vec<Vec<usize>>,
    f: &'a FactorSet,
}

impl GroupOps for PairCarrier<'_> {
    type Elem = (usize, usize);

    fn identity(&self) -> (usize, usize) {
        (0, 0)
    }

    fn op(&self, &(a, x): &(usize, usize), &(b, y): &(usize, usize)) -> (usize, usize) {
        (
            self.n.sum([a, self.l.act(x, b), self.f.get(x, y)]),
            self.g.op(x, y),
        )
    }

    fn inverse(&self, &(a, x): &(usize, usize)) -> (usize, usize) {
        let y = self.g.inv(x);
        let target = self.n.op(self.n.inv(a), self.n.inv(self.f.get(x, y)));
        (self.l_inv[x][target], y)
    }
}

/// The three conditions that are claimed equivalent for `(L, f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TmcReport {
    pub mc: Verdict<(usize, usize, usize)>,
    pub equivariant: Verdict<String>,
    pub composite_zero: Verdict<String>,
}

impl TmcReport {
    pub fn flags(&self) -> (bool, bool, bool) {
        (
            self.mc.is_pass(),
            self.equivariant.is_pass(),
            self.composite_zero.is_pass(),
        )
    }

    pub fn agree(&self) -> bool {
        let (a, b, c) = self.flags();
        a == b && b == c
    }
}

/// Evaluates the mc compatibility condition, equivariance of `g₁` (`g₁(a·w) =
/// u(a) + g₁(w) − u(a)` on `B₁` generators) and `g₁ ∂₂ ∂₃ = 0` on `B₃`
/// generators, with `g₁` valued in the pair carrier and `u(x) = (0, x)`.
/// Sums are evaluated left to right.
pub fn tmc_check(
    n: &FiniteGroup,
    g: &Arc<FiniteGroup>,
    l: &PseudoAction,
    f: &FactorSet,
) -> TmcReport {
    let carrier = PairCarrier {
        n,
        g,
        l,
        l_inv: l.inverse_maps(),
        f,
    };
    let bar = BarComplex::new(g.clone(), 3);
    let u = |x: usize| (FiniteGroup::IDENTITY, x);
    let conj =
        |a: usize, p: &(usize, usize)| carrier.op(&carrier.op(&u(a), p), &carrier.inverse(&u(a)));
    let g1_gen = |b: &BarGenerator| Some(conj(b.prefix, &u(b.tuple[0])));
    let g1 = |w: &BarWord| extend_hom(&carrier, &g1_gen, w).expect("total on B1");
    let show = |(a, x): (usize, usize)| format!("({},{})", n.label(a), g.label(x));

    let equivariant = bar
        .generators_at(1)
        .iter()
        .find_map(|b| {
            let w = Word::generator(b.clone());
            let image = g1(&w);
            g.elements().find_map(|a| {
                let lhs = g1(&bar.act(a, &w));
                let rhs = conj(a, &image);
                (lhs != rhs).then(|| {
                    format!(
                        "g1({}·{}) = {} but L_{}(g1) = {}",
                        g.label(a),
                        bar.render_generator(b),
                        show(lhs),
                        g.label(a),
                        show(rhs)
                    )
                })
            })
        })
        .into();

    let composite_zero = bar
        .generators_at(3)
        .iter()
        .find_map(|b| {
            let w = Word::generator(b.clone());
            let d3 = bar.quasi_differential(3, &w).expect("degree 3");
            let d2 = bar.quasi_differential(2, &d3).expect("degree 2");
            let value = g1(&d2);
            (value != carrier.identity())
                .then(|| format!("g1(d2(d3({}))) = {}", bar.render_generator(b), show(value)))
        })
        .into();

    TmcReport {
        mc: check_mc(n, g, l, f),
        equivariant,
        composite_zero,
    }
}

/// Random `(L, f)`: each `L_x` (`x ≠ 1`) a uniformly chosen automorphism of
/// `N`, and `f` a uniformly chosen normalized map.
pub fn random_schreier_data<R: Rng>(
    rng: &mut R,
    n: &FiniteGroup,
    g: &FiniteGroup,
) -> (PseudoAction, FactorSet) {
    let autos = all_automorphisms(n);
    let identity: Vec<usize> = n.elements().collect();
    let maps = g
        .elements()
        .map(|x| {
            if x == FiniteGroup::IDENTITY {
                identity.clone()
            } else {
                autos.choose(rng).unwrap().clone()
            }
        })
        .collect();
    let mut f = FactorSet::zero(g.order());
    for x in 1..g.order() {
        for y in 1..g.order() {
            f.values[x][y] = rng.random_range(0..n.order());
        }
    }
    (PseudoAction { maps }, f)
}

/// Interior exactness of `A₀ →d₀ A₁ →d₁ ... → A_k` and, when exact, a pointed
/// contraction `s_i : A_i → A_{i−1}` with `d(s(b)) + s(d(b)) = b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSequenceResult {
    pub exact: bool,
    pub witness: Option<String>,
    /// `contraction[i]` maps `A_{i+1}` to `A_i`.
    pub contraction: Option<Vec<Vec<usize>>>,
}

/// `maps[i] : A_i → A_{i+1}`. Exactness is checked at `A_1 .. A_{k−1}`; the
/// contraction is built right to left from least-index preimages.
pub fn check_exact_sequence(maps: &[GroupHom]) -> Result<ExactSequenceResult, SchreierError> {
    if let Some(i) = (1..maps.len()).find(|&i| maps[i - 1].codomain() != maps[i].domain()) {
        return Err(SchreierError::Shape(format!(
            "maps {} and {} do not compose",
            i - 1,
            i
        )));
    }
    for i in 1..maps.len() {
        let (into, out) = (&maps[i - 1], &maps[i]);
        let spot = out.domain();
        let image = into.image_mask();
        if let Some(b) = spot
            .elements()
            .find(|&b| (out.apply(b) == FiniteGroup::IDENTITY) != image[b])
        {
            return Ok(ExactSequenceResult {
                exact: false,
                witness: Some(format!(
                    "spot {i} ({}): element {}",
                    spot.name(),
                    spot.label(b)
                )),
                contraction: None,
            });
        }
    }
    let mut contraction: Vec<Vec<usize>> = vec![Vec::new(); maps.len()];
    for i in (0..maps.len()).rev() {
        let d = &maps[i];
        let (source, spot) = (d.domain(), d.codomain());
        let mut preimage = vec![usize::MAX; spot.order()];
        for a in source.elements().rev() {
            preimage[d.apply(a)] = a;
        }
        let s: Vec<usize> = spot
            .elements()
            .map(|b| {
                let back = match maps.get(i + 1) {
                    Some(next) => contraction[i + 1][next.apply(b)],
                    None => FiniteGroup::IDENTITY,
                };
                preimage[spot.sub(b, back)]
            })
            .collect();
        if let Some(b) = s.iter().position(|&a| a == usize::MAX) {
            return Ok(ExactSequenceResult {
                exact: false,
                witness: Some(format!(
                    "spot {} ({}): {} has no preimage",
                    i + 1,
                    spot.name(),
                    spot.label(b)
                )),
                contraction: None,
            });
        }
        contraction[i] = s;
    }
    Ok(ExactSequenceResult {
        exact: true,
        witness: None,
        contraction: Some(contraction),
    })
}

/// `1 → N → E → G → 1` as a list of maps with trivial ends.
pub fn extension_sequence(ext: &Extension) -> Vec<GroupHom> {
    let trivial = Arc::new(FiniteGroup::trivial());
    vec![
        GroupHom::zero(trivial.clone(), ext.n.clone()),
        ext.chi.clone(),
        ext.sigma.clone(),
        GroupHom::zero(ext.g.clone(), trivial),
    ]
}

fn curated(
    name: &str,
    n: FiniteGroup,
    e: FiniteGroup,
    g: FiniteGroup,
    chi: Vec<usize>,
    sigma: Vec<usize>,
) -> (String, Extension) {
    let ext = Extension::new(Arc::new(n), Arc::new(e), Arc::new(g), chi, sigma, None)
        .expect("curated data is valid");
    (name.to_string(), ext)
}

/// A fixed list of valid extensions with `|E| ≤ 16`.
pub fn curated_extensions() -> Vec<(String, Extension)> {
    let s3_times_c2 = FiniteGroup::direct_product(&dihedral(3), &cyclic(2));
    vec![
        curated(
            "c4/c2",
            cyclic(2),
            cyclic(4),
            cyclic(2),
            vec![0, 2],
            vec![0, 1, 0, 1],
        ),
        curated(
            "v4/c2",
            cyclic(2),
            klein_four(),
            cyclic(2),
            vec![0, 1],
            vec![0, 0, 1, 1],
        ),
        curated(
            "s3/c2",
            cyclic(3),
            dihedral(3),
            cyclic(2),
            vec![0, 1, 2],
            (0..6).map(|i| i / 3).collect(),
        ),
        curated(
            "c6/c2",
            cyclic(3),
            cyclic(6),
            cyclic(2),
            vec![0, 2, 4],
            (0..6).map(|i| i % 2).collect(),
        ),
        curated(
            "c6/c3",
            cyclic(2),
            cyclic(6),
            cyclic(3),
            vec![0, 3],
            (0..6).map(|i| i % 3).collect(),
        ),
        curated(
            "c8/c4",
            cyclic(2),
            cyclic(8),
            cyclic(4),
            vec![0, 4],
            (0..8).map(|i| i % 4).collect(),
        ),
        curated(
            "c8/c2",
            cyclic(4),
            cyclic(8),
            cyclic(2),
            vec![0, 2, 4, 6],
            (0..8).map(|i| i % 2).collect(),
        ),
        curated(
            "d4/c2",
            cyclic(4),
            dihedral(4),
            cyclic(2),
            vec![0, 1, 2, 3],
            (0..8).map(|i| i / 4).collect(),
        ),
        curated(
            "d4/v4",
            cyclic(2),
            dihedral(4),
            klein_four(),
            vec![0, 2],
            (0..8).map(|i| (i % 4) % 2 + 2 * (i / 4)).collect(),
        ),
        curated(
            "q8/c2",
            cyclic(4),
            quaternion(),
            cyclic(2),
            vec![0, 2, 1, 3],
            (0..8).map(|i| usize::from(i >= 4)).collect(),
        ),
        curated(
            "q8/v4",
            cyclic(2),
            quaternion(),
            klein_four(),
            vec![0, 1],
            (0..8).map(|i| i / 2).collect(),
        ),
        curated(
            "s3xc2/c2",
            dihedral(3),
            s3_times_c2,
            cyclic(2),
            (0..6).collect(),
            (0..12).map(|i| i / 6).collect(),
        ),
    ]
}
