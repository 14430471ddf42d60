//! The nonabelian bar resolution `B•(G)` of a finite group.
//!
//! `B_n` is the free group on the generators `x[x₁|...|x_n]`, with `G`
//! acting by left multiplication of the prefix `x`; `B_{-1} = ℤ`. The parity
//! differentials are ordered sums of face maps (even faces ascending for
//! `∂⁺`, odd faces descending for `∂⁻`) and `e` is the contracting homotopy
//! `e_n(x[x₁|...|x_n]) = −[x|x₁|...|x_n]`, `e_{-1}(k) = k·(−[ ])`.
//!
//! [`abelianized_bar`] reduces the resolution mod `k` into a finite
//! [`LinearPqc`] so that global statements can be checked exhaustively.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::fingroup::FiniteGroup;
use crate::freeword::{extend_equivariant_hom, extend_hom, FreeGroup, Prefixed, Word};
use crate::pqc::{
    check_homotopy_at, GradedMap, HomotopyMode, LinearPqc, ParityHomotopy, Pqc, PqcError,
    SparseColumn,
};
use crate::verdict::Verdict;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BarError {
    #[error("degree {0} is outside the resolution")]
    DegreeOutOfRange(i32),
    #[error("face index {index} out of range at degree {degree}")]
    FaceIndex { index: usize, degree: usize },
    #[error("element kind does not match degree {0}")]
    WrongKind(i32),
    #[error("generator {generator} has degree {actual}, expected {expected}")]
    WrongDegree {
        generator: String,
        actual: usize,
        expected: usize,
    },
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error(transparent)]
    Pqc(#[from] PqcError),
}

/// `prefix[tuple₁|...|tuple_n]`, element indices into `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarGenerator {
    pub prefix: usize,
    pub tuple: Vec<usize>,
}

impl BarGenerator {
    pub fn new(prefix: usize, tuple: Vec<usize>) -> Self {
        BarGenerator { prefix, tuple }
    }

    /// `[tuple]` with the identity prefix.
    pub fn base_of(tuple: Vec<usize>) -> Self {
        BarGenerator {
            prefix: FiniteGroup::IDENTITY,
            tuple,
        }
    }

    pub fn degree(&self) -> usize {
        self.tuple.len()
    }
}

impl Prefixed for BarGenerator {
    type Base = BarGenerator;

    fn prefix(&self) -> usize {
        self.prefix
    }

    fn base(&self) -> BarGenerator {
        BarGenerator::base_of(self.tuple.clone())
    }
}

pub type BarWord = Word<BarGenerator>;

/// An element of `B_n`: an integer at degree −1, a reduced word otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BarElement {
    Int(i64),
    Word(BarWord),
}

impl BarElement {
    pub fn word(&self) -> Option<&BarWord> {
        match self {
            BarElement::Word(w) => Some(w),
            BarElement::Int(_) => None,
        }
    }
}

/// The bar resolution of `group`, truncated at `max_degree`.
#[derive(Clone, Debug)]
pub struct BarComplex {
    group: Arc<FiniteGroup>,
    max_degree: usize,
    flipped: bool,
}

impl BarComplex {
    pub fn new(group: Arc<FiniteGroup>, max_degree: usize) -> Self {
        BarComplex {
            group,
            max_degree,
            flipped: false,
        }
    }

    /// The same complex with `e_n` (n ≥ 0) taken without its minus sign.
    /// Only useful to confirm that the checks detect a wrong contraction.
    pub fn with_flipped_homotopy(mut self) -> Self {
        self.flipped = true;
        self
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn check_degree(&self, n: i32, lo: i32) -> Result<usize, BarError> {
        if n < lo || n > self.max_degree as i32 {
            Err(BarError::DegreeOutOfRange(n))
        } else {
            Ok(n.max(0) as usize)
        }
    }

    fn check_word(&self, n: usize, w: &BarWord) -> Result<(), BarError> {
        match w.letters().iter().find(|l| l.generator.degree() != n) {
            Some(l) => Err(BarError::WrongDegree {
                generator: self.render_generator(&l.generator),
                actual: l.generator.degree(),
                expected: n,
            }),
            None => Ok(()),
        }
    }

    /// All `|G|^{n+1}` generators of `B_n` in lexicographic index order.
    pub fn generators_at(&self, n: usize) -> Vec<BarGenerator> {
        let order = self.group.order();
        let count = order.pow(n as u32 + 1);
        (0..count)
            .map(|mut i| {
                let mut digits = vec![0; n + 1];
                for d in digits.iter_mut().rev() {
                    *d = i % order;
                    i /= order;
                }
                BarGenerator {
                    prefix: digits[0],
                    tuple: digits[1..].to_vec(),
                }
            })
            .collect()
    }

    /// Position of `g` in [`BarComplex::generators_at`].
    pub fn generator_index(&self, g: &BarGenerator) -> usize {
        let order = self.group.order();
        std::iter::once(&g.prefix)
            .chain(&g.tuple)
            .fold(0, |acc, &d| acc * order + d)
    }

    /// `a · w`: left multiplication of every prefix.
    pub fn act(&self, a: usize, w: &BarWord) -> BarWord {
        w.map_generators(|g| BarGenerator {
            prefix: self.group.op(a, g.prefix),
            tuple: g.tuple.clone(),
        })
    }

    fn extend(&self, w: &BarWord, base: impl Fn(&BarGenerator) -> BarWord) -> BarWord {
        extend_equivariant_hom(
            &FreeGroup::new(),
            &|b: &BarGenerator| Some(base(b)),
            |a, v| self.act(a, v),
            w,
        )
        .expect("every generator has an image")
    }

    /// The `i`-th face of a generator of degree `n ≥ 1`.
    pub fn face_generator(&self, i: usize, g: &BarGenerator) -> BarGenerator {
        let n = g.degree();
        let t = &g.tuple;
        if i == 0 {
            BarGenerator {
                prefix: self.group.op(g.prefix, t[0]),
                tuple: t[1..].to_vec(),
            }
        } else if i < n {
            let mut tuple = t[..i - 1].to_vec();
            tuple.push(self.group.op(t[i - 1], t[i]));
            tuple.extend_from_slice(&t[i + 1..]);
            BarGenerator {
                prefix: g.prefix,
                tuple,
            }
        } else {
            BarGenerator {
                prefix: g.prefix,
                tuple: t[..n - 1].to_vec(),
            }
        }
    }

    /// `∂ⁱ_n`, extended G-equivariantly and additively.
    pub fn face(&self, i: usize, n: usize, w: &BarWord) -> Result<BarWord, BarError> {
        if n == 0 || i > n {
            return Err(BarError::FaceIndex {
                index: i,
                degree: n,
            });
        }
        self.check_degree(n as i32, 1)?;
        self.check_word(n, w)?;
        Ok(self.extend(w, |b| Word::generator(self.face_generator(i, b))))
    }

    /// Closed formula on a generator of degree `n ≥ 1`: even faces ascending.
    pub fn d_plus_generator(&self, g: &BarGenerator) -> BarWord {
        (0..=g.degree())
            .step_by(2)
            .map(|i| Word::generator(self.face_generator(i, g)))
            .sum()
    }

    /// Closed formula on a generator of degree `n ≥ 1`: odd faces descending.
    pub fn d_minus_generator(&self, g: &BarGenerator) -> BarWord {
        (1..=g.degree())
            .rev()
            .filter(|i| i % 2 == 1)
            .map(|i| Word::generator(self.face_generator(i, g)))
            .sum()
    }

    /// `∂⁺_n`; at degree 0 this is the augmentation into `ℤ`.
    pub fn d_plus(&self, n: usize, w: &BarWord) -> Result<BarElement, BarError> {
        self.check_degree(n as i32, 0)?;
        self.check_word(n, w)?;
        Ok(if n == 0 {
            BarElement::Int(augmentation(w))
        } else {
            BarElement::Word(self.extend(w, |b| self.d_plus_generator(b)))
        })
    }

    /// `∂⁻_n`; zero at degree 0.
    pub fn d_minus(&self, n: usize, w: &BarWord) -> Result<BarElement, BarError> {
        self.check_degree(n as i32, 0)?;
        self.check_word(n, w)?;
        Ok(if n == 0 {
            BarElement::Int(0)
        } else {
            BarElement::Word(self.extend(w, |b| self.d_minus_generator(b)))
        })
    }

    /// `∂±` on a base generator `[x|y…]` of degree `m ≥ 1`, from the
    /// recursion `∂⁺[x|y…] = x[y…] − e(∂⁻(x[y…]))`, `∂⁻[x|y…] = −e(∂⁺(x[y…]))`.
    fn inductive_base(&self, plus: bool, b: &BarGenerator) -> BarWord {
        let m = b.degree();
        let shifted = BarGenerator {
            prefix: b.tuple[0],
            tuple: b.tuple[1..].to_vec(),
        };
        let shifted_word = Word::generator(shifted.clone());
        if m == 1 {
            // ∂⁻₀ = 0 and ∂⁺₀ = ε, so e₋₁ sees 0 and 1 respectively.
            return if plus {
                shifted_word - self.e_int(0)
            } else {
                -self.e_int(1)
            };
        }
        let below = self.inductive(!plus, &shifted_word);
        if plus {
            shifted_word - self.e_word(&below)
        } else {
            -self.e_word(&below)
        }
    }

    fn inductive(&self, plus: bool, w: &BarWord) -> BarWord {
        self.extend(w, |b| self.inductive_base(plus, b))
    }

    /// `∂⁺_n` built by the inductive construction instead of face maps.
    pub fn d_plus_inductive(&self, n: usize, w: &BarWord) -> Result<BarElement, BarError> {
        self.check_degree(n as i32, 0)?;
        self.check_word(n, w)?;
        Ok(if n == 0 {
            BarElement::Int(augmentation(w))
        } else {
            BarElement::Word(self.inductive(true, w))
        })
    }

    /// `∂⁻_n` built by the inductive construction instead of face maps.
    pub fn d_minus_inductive(&self, n: usize, w: &BarWord) -> Result<BarElement, BarError> {
        self.check_degree(n as i32, 0)?;
        self.check_word(n, w)?;
        Ok(if n == 0 {
            BarElement::Int(0)
        } else {
            BarElement::Word(self.inductive(false, w))
        })
    }

    fn e_int(&self, k: i64) -> BarWord {
        Word::inverse_generator(BarGenerator::base_of(vec![])).times(k)
    }

    fn e_word(&self, w: &BarWord) -> BarWord {
        let flipped = self.flipped;
        extend_hom(
            &FreeGroup::new(),
            &|g: &BarGenerator| {
                let mut tuple = Vec::with_capacity(g.degree() + 1);
                tuple.push(g.prefix);
                tuple.extend_from_slice(&g.tuple);
                let lifted = Word::generator(BarGenerator::base_of(tuple));
                Some(if flipped { lifted } else { -lifted })
            },
            w,
        )
        .expect("every generator has an image")
    }

    /// `e_n : B_n → B_{n+1}`, extended additively (not equivariantly).
    pub fn homotopy_e(&self, n: i32, x: &BarElement) -> Result<BarWord, BarError> {
        if n < -1 || n >= self.max_degree as i32 {
            return Err(BarError::DegreeOutOfRange(n));
        }
        match (n, x) {
            (-1, BarElement::Int(k)) => Ok(self.e_int(*k)),
            (n, BarElement::Word(w)) if n >= 0 => {
                self.check_word(n as usize, w)?;
                Ok(self.e_word(w))
            }
            _ => Err(BarError::WrongKind(n)),
        }
    }

    /// `ev : B₁ → G`, `x[y] ↦ xy`.
    pub fn ev_map(&self, w: &BarWord) -> Result<usize, BarError> {
        self.check_word(1, w)?;
        Ok(extend_hom(
            self.group.as_ref(),
            &|g: &BarGenerator| Some(self.group.op(g.prefix, g.tuple[0])),
            w,
        )
        .expect("every generator has an image"))
    }

    /// The quasi-differential: the G-equivariant extension of
    /// `∂⁺ − ∂⁻` evaluated on generators.
    pub fn quasi_differential(&self, n: usize, w: &BarWord) -> Result<BarWord, BarError> {
        if n == 0 {
            return Err(BarError::DegreeOutOfRange(0));
        }
        self.check_degree(n as i32, 1)?;
        self.check_word(n, w)?;
        Ok(self.extend(w, |b| self.d_plus_generator(b) - self.d_minus_generator(b)))
    }

    pub fn render_generator(&self, g: &BarGenerator) -> String {
        let prefix = if g.prefix == FiniteGroup::IDENTITY {
            ""
        } else {
            self.group.label(g.prefix)
        };
        if g.tuple.is_empty() {
            format!("{prefix}[ ]")
        } else {
            let inner: Vec<&str> = g.tuple.iter().map(|&t| self.group.label(t)).collect();
            format!("{prefix}[{}]", inner.join("|"))
        }
    }

    pub fn render_word(&self, w: &BarWord) -> String {
        w.render_with(|g| self.render_generator(g))
    }

    /// Parses the rendered form, e.g. `"[1] - t[1]"` or `"x[y] + [x]"`.
    pub fn parse_word(&self, text: &str) -> Result<BarWord, BarError> {
        let bad = || BarError::Pqc(PqcError::Invalid(format!("cannot parse bar word {text:?}")));
        let text = text.trim();
        if text == "0" || text.is_empty() {
            return Ok(Word::empty());
        }
        let mut word = Word::empty();
        let mut rest = text;
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r.trim_start();
        }
        loop {
            let open = rest.find('[').ok_or_else(bad)?;
            let close = rest.find(']').ok_or_else(bad)?;
            let prefix = rest[..open].trim();
            let prefix = if prefix.is_empty() {
                0
            } else {
                self.group.index_of(prefix).ok_or_else(bad)?
            };
            let inner = rest[open + 1..close].trim();
            let tuple = if inner.is_empty() {
                vec![]
            } else {
                inner
                    .split('|')
                    .map(|s| self.group.index_of(s.trim()).ok_or_else(bad))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let g = Word::generator(BarGenerator { prefix, tuple });
            word = word + if negative { -g } else { g };
            rest = rest[close + 1..].trim_start();
            if rest.is_empty() {
                return Ok(word);
            }
            negative = match rest.as_bytes()[0] {
                b'+' => false,
                b'-' => true,
                _ => return Err(bad()),
            };
            rest = rest[1..].trim_start();
        }
    }

    /// `e` as a degree-raising map on the complex.
    pub fn contraction(self: &Arc<Self>) -> GradedMap<BarElement, BarElement> {
        let bar = self.clone();
        GradedMap::new(move |n, x| {
            BarElement::Word(bar.homotopy_e(n, x).expect("degree within the resolution"))
        })
    }

    /// The claim that `e` is a parity homotopy from `0` to the identity.
    pub fn contraction_homotopy(
        self: &Arc<Self>,
        mode: HomotopyMode,
    ) -> ParityHomotopy<BarElement, BarElement> {
        ParityHomotopy {
            from: GradedMap::zero(self.clone(), 0),
            to: GradedMap::identity(),
            s: self.contraction(),
            mode,
        }
    }
}

/// `ε : B₀ → ℤ`, every `x[ ]` to 1.
pub fn augmentation(w: &BarWord) -> i64 {
    w.signed_length()
}

impl Pqc for BarComplex {
    type Elem = BarElement;

    fn lo(&self) -> i32 {
        -1
    }

    fn hi(&self) -> i32 {
        self.max_degree as i32
    }

    fn zero(&self, n: i32) -> BarElement {
        if n == -1 {
            BarElement::Int(0)
        } else {
            BarElement::Word(Word::empty())
        }
    }

    fn add(&self, n: i32, a: &BarElement, b: &BarElement) -> BarElement {
        match (a, b) {
            (BarElement::Int(a), BarElement::Int(b)) => BarElement::Int(a + b),
            (BarElement::Word(a), BarElement::Word(b)) => BarElement::Word(a + b),
            _ => panic!("mixed element kinds at degree {n}"),
        }
    }

    fn neg(&self, _n: i32, a: &BarElement) -> BarElement {
        match a {
            BarElement::Int(a) => BarElement::Int(-a),
            BarElement::Word(a) => BarElement::Word(a.negate()),
        }
    }

    fn dplus(&self, n: i32, x: &BarElement) -> BarElement {
        match x {
            BarElement::Word(w) if self.contains(n) && n >= 0 => {
                self.d_plus(n as usize, w).expect("word of degree n")
            }
            _ => self.zero(n - 1),
        }
    }

    fn dminus(&self, n: i32, x: &BarElement) -> BarElement {
        match x {
            BarElement::Word(w) if self.contains(n) && n >= 0 => {
                self.d_minus(n as usize, w).expect("word of degree n")
            }
            _ => self.zero(n - 1),
        }
    }

    fn generators(&self, n: i32) -> Vec<BarElement> {
        match n {
            -1 => vec![BarElement::Int(1)],
            n if self.contains(n) => self
                .generators_at(n as usize)
                .into_iter()
                .map(|g| BarElement::Word(Word::generator(g)))
                .collect(),
            _ => vec![],
        }
    }

    fn size(&self, n: i32) -> Option<usize> {
        if self.contains(n) {
            None
        } else {
            Some(1)
        }
    }

    fn element(&self, n: i32, _index: usize) -> BarElement {
        self.zero(n)
    }

    fn index_of(&self, _n: i32, _x: &BarElement) -> usize {
        0
    }

    fn render(&self, _n: i32, x: &BarElement) -> String {
        match x {
            BarElement::Int(k) => k.to_string(),
            BarElement::Word(w) => self.render_word(w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum BarCheck {
    Pch,
    Faces,
    Structural,
    LowDegreeFormulas,
}

impl BarCheck {
    pub const ALL: [BarCheck; 4] = [
        BarCheck::Pch,
        BarCheck::Faces,
        BarCheck::Structural,
        BarCheck::LowDegreeFormulas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BarCheck::Pch => "pch",
            BarCheck::Faces => "faces",
            BarCheck::Structural => "structural",
            BarCheck::LowDegreeFormulas => "lowDegreeFormulas",
        }
    }
}

impl fmt::Display for BarCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BarCheck {
    type Err = BarError;

    fn from_str(s: &str) -> Result<Self, BarError> {
        BarCheck::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| BarError::UnknownCheck(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub check: BarCheck,
    pub degree: i32,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl CheckEntry {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BarReport {
    pub group: String,
    pub max_degree: usize,
    pub entries: Vec<CheckEntry>,
}

impl BarReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(CheckEntry::passed)
    }

    pub fn check_passed(&self, check: BarCheck) -> bool {
        self.entries
            .iter()
            .filter(|e| e.check == check)
            .all(CheckEntry::passed)
    }

    pub fn first_failure(&self, check: BarCheck) -> Option<&CheckEntry> {
        self.entries
            .iter()
            .find(|e| e.check == check && !e.passed())
    }
}

fn sweep<T: Sync>(items: &[T], check: impl Fn(&T) -> Option<String> + Sync + Send) -> Vec<String> {
    items.par_iter().filter_map(check).collect()
}

/// Runs the requested identity checks over every generator of `bar`.
pub fn verify_bar(bar: &Arc<BarComplex>, checks: &[BarCheck]) -> BarReport {
    let mut entries = Vec::new();
    let max = bar.max_degree();
    for &check in BarCheck::ALL.iter().filter(|c| checks.contains(c)) {
        match check {
            BarCheck::Pch => {
                let h = bar.contraction_homotopy(HomotopyMode::OnGenerators);
                for n in -1..max as i32 {
                    let gens = bar.generators(n);
                    let failures = sweep(&gens, |g| {
                        match check_homotopy_at(bar.as_ref(), bar.as_ref(), &h, n, g) {
                            Verdict::Pass => None,
                            Verdict::Fail(w) => Some(format!(
                                "{}: {} != {} ({:?} relation)",
                                w.element, w.lhs, w.rhs, w.relation
                            )),
                        }
                    });
                    entries.push(CheckEntry {
                        check,
                        degree: n,
                        instances: gens.len(),
                        failures,
                    });
                }
            }
            BarCheck::Faces => {
                for n in 0..max {
                    let gens = bar.generators_at(n);
                    let failures = sweep(&gens, |g| face_ladder_failure(bar, n, g));
                    entries.push(CheckEntry {
                        check,
                        degree: n as i32,
                        instances: gens.len() * (n + 1),
                        failures,
                    });
                }
            }
            BarCheck::Structural => {
                for n in 0..=max {
                    let gens = bar.generators_at(n);
                    let failures = sweep(&gens, |g| {
                        let w = Word::generator(g.clone());
                        let plus = (bar.d_plus(n, &w).ok(), bar.d_plus_inductive(n, &w).ok());
                        let minus = (bar.d_minus(n, &w).ok(), bar.d_minus_inductive(n, &w).ok());
                        let show = |e: &Option<BarElement>| {
                            e.as_ref()
                                .map_or("?".to_string(), |e| bar.render(n as i32 - 1, e))
                        };
                        if plus.0 != plus.1 {
                            Some(format!(
                                "d+ {}: {} != {}",
                                bar.render_generator(g),
                                show(&plus.0),
                                show(&plus.1)
                            ))
                        } else if minus.0 != minus.1 {
                            Some(format!(
                                "d- {}: {} != {}",
                                bar.render_generator(g),
                                show(&minus.0),
                                show(&minus.1)
                            ))
                        } else {
                            None
                        }
                    });
                    entries.push(CheckEntry {
                        check,
                        degree: n as i32,
                        instances: 2 * gens.len(),
                        failures,
                    });
                }
            }
            BarCheck::LowDegreeFormulas => {
                for n in 1..=max.min(2) {
                    let gens: Vec<BarGenerator> = bar
                        .generators_at(n)
                        .into_iter()
                        .filter(|g| g.prefix == FiniteGroup::IDENTITY)
                        .collect();
                    let failures = sweep(&gens, |g| low_degree_formula_failure(bar, g));
                    entries.push(CheckEntry {
                        check,
                        degree: n as i32,
                        instances: 2 * gens.len(),
                        failures,
                    });
                }
            }
        }
    }
    BarReport {
        group: bar.group().name().to_string(),
        max_degree: max,
        entries,
    }
}

/// `∂⁰_{n+1} e_n(g) = −g`, and `∂^{k+1}_{n+1} e_n(g) = e_{n-1} ∂^k_n(g)` for
/// `0 ≤ k ≤ n` when `n ≥ 1`.
fn face_ladder_failure(bar: &BarComplex, n: usize, g: &BarGenerator) -> Option<String> {
    let w = Word::generator(g.clone());
    let eg = bar
        .homotopy_e(n as i32, &BarElement::Word(w.clone()))
        .ok()?;
    let zeroth = bar.face(0, n + 1, &eg).ok()?;
    if zeroth != -w.clone() {
        return Some(format!(
            "d0 e {} = {}",
            bar.render_generator(g),
            bar.render_word(&zeroth)
        ));
    }
    if n == 0 {
        return None;
    }
    (0..=n).find_map(|k| {
        let lhs = bar.face(k + 1, n + 1, &eg).ok()?;
        let inner = bar.face(k, n, &w).ok()?;
        let rhs = bar
            .homotopy_e(n as i32 - 1, &BarElement::Word(inner))
            .ok()?;
        (lhs != rhs).then(|| {
            format!(
                "d{} e {} = {} but e d{} = {}",
                k + 1,
                bar.render_generator(g),
                bar.render_word(&lhs),
                k,
                bar.render_word(&rhs)
            )
        })
    })
}

/// The four closed formulas in degrees 1 and 2, built by hand.
fn low_degree_formula_failure(bar: &BarComplex, g: &BarGenerator) -> Option<String> {
    let group = bar.group();
    let w = Word::generator(g.clone());
    let gen = |prefix: usize, tuple: Vec<usize>| Word::generator(BarGenerator { prefix, tuple });
    let (plus, minus) = match g.tuple[..] {
        [x] => (gen(x, vec![]), gen(0, vec![])),
        [x, y] => (
            gen(x, vec![y]) + gen(0, vec![x]),
            gen(0, vec![group.op(x, y)]),
        ),
        _ => return None,
    };
    let n = g.degree();
    if bar.d_plus(n, &w).ok()? != BarElement::Word(plus.clone()) {
        return Some(format!(
            "d+ {} should be {}",
            bar.render_generator(g),
            bar.render_word(&plus)
        ));
    }
    if bar.d_minus(n, &w).ok()? != BarElement::Word(minus.clone()) {
        return Some(format!(
            "d- {} should be {}",
            bar.render_generator(g),
            bar.render_word(&minus)
        ));
    }
    None
}

/// The bar resolution reduced mod `k`, with the linearized contraction.
#[derive(Clone, Debug)]
pub struct AbelianizedBar {
    pub complex: Arc<LinearPqc>,
    pub contraction: GradedMap<Vec<u32>, Vec<u32>>,
}

/// Builds `B•(G) ⊗ ℤ/k` on degrees `−1..=max_degree`. Errors when a carrier
/// would have more than `max_elements` elements.
pub fn abelianized_bar(
    group: Arc<FiniteGroup>,
    modulus: u32,
    max_degree: usize,
    max_elements: usize,
) -> Result<AbelianizedBar, BarError> {
    if modulus < 2 {
        return Err(PqcError::Invalid(format!("modulus {modulus} is below 2")).into());
    }
    let bar = BarComplex::new(group.clone(), max_degree);
    for n in 0..=max_degree {
        let rank = group.order().pow(n as u32 + 1);
        let size = (0..rank).fold(1u128, |acc, _| acc.saturating_mul(modulus as u128));
        if size > max_elements as u128 {
            return Err(PqcError::CarrierTooLarge {
                degree: n as i32,
                size,
                bound: max_elements,
            }
            .into());
        }
    }

    let linearize = |w: &BarWord| -> SparseColumn {
        let mut column: Vec<(usize, i64)> = Vec::new();
        for l in w.letters() {
            let row = bar.generator_index(&l.generator);
            match column.iter_mut().find(|(r, _)| *r == row) {
                Some(entry) => entry.1 += l.sign(),
                None => column.push((row, l.sign())),
            }
        }
        column.retain(|&(_, c)| c != 0);
        column.sort_unstable();
        column
    };

    let mut basis = vec![vec!["1".to_string()]];
    let mut dplus: Vec<Vec<SparseColumn>> = vec![vec![]];
    let mut dminus: Vec<Vec<SparseColumn>> = vec![vec![]];
    let mut e: Vec<Vec<SparseColumn>> = vec![vec![vec![(0, -1)]]];
    for n in 0..=max_degree {
        let gens = bar.generators_at(n);
        basis.push(gens.iter().map(|g| bar.render_generator(g)).collect());
        if n == 0 {
            dplus.push(gens.iter().map(|_| vec![(0, 1)]).collect());
            dminus.push(gens.iter().map(|_| vec![]).collect());
        } else {
            dplus.push(
                gens.iter()
                    .map(|g| linearize(&bar.d_plus_generator(g)))
                    .collect(),
            );
            dminus.push(
                gens.iter()
                    .map(|g| linearize(&bar.d_minus_generator(g)))
                    .collect(),
            );
        }
        if n < max_degree {
            e.push(
                gens.iter()
                    .map(|g| linearize(&bar.e_word(&Word::generator(g.clone()))))
                    .collect(),
            );
        }
    }
    let complex = Arc::new(LinearPqc::new(modulus, -1, basis, dplus, dminus)?);
    let target = complex.clone();
    let contraction = GradedMap::new(move |n: i32, x: &Vec<u32>| {
        let slot = (n + 1) as usize;
        match e.get(slot) {
            Some(columns) if target.contains(n) => {
                target.apply_matrix(columns, target.rank(n + 1), x)
            }
            _ => target.zero(n + 1),
        }
    });
    Ok(AbelianizedBar {
        complex,
        contraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{cyclic, dihedral, make_standard};

    fn bar(name: &str, max: usize) -> Arc<BarComplex> {
        Arc::new(BarComplex::new(Arc::new(make_standard(name).unwrap()), max))
    }

    #[test]
    fn generator_enumeration_counts_and_order() {
        let b = bar("c2", 3);
        let names: Vec<String> = b
            .generators_at(1)
            .iter()
            .map(|g| b.render_generator(g))
            .collect();
        assert_eq!(names, ["[1]", "[t]", "t[1]", "t[t]"]);
        let zero: Vec<String> = b
            .generators_at(0)
            .iter()
            .map(|g| b.render_generator(g))
            .collect();
        assert_eq!(zero, ["[ ]", "t[ ]"]);
        assert_eq!(bar("c3", 2).generators_at(2).len(), 27);
        for (i, g) in b.generators_at(2).iter().enumerate() {
            assert_eq!(b.generator_index(g), i);
        }
    }

    #[test]
    fn faces_of_degree_two() {
        let b = bar("c2", 3);
        let tt = b.parse_word("[t|t]").unwrap();
        assert_eq!(b.render_word(&b.face(1, 2, &tt).unwrap()), "[1]");
        assert_eq!(b.render_word(&b.face(0, 2, &tt).unwrap()), "t[t]");
        assert_eq!(b.render_word(&b.face(2, 2, &tt).unwrap()), "[t]");
        assert!(matches!(b.face(3, 2, &tt), Err(BarError::FaceIndex { .. })));
    }

    #[test]
    fn degree_three_closed_formulas() {
        let g = Arc::new(cyclic(4));
        let b = BarComplex::new(g, 3);
        let w = b.parse_word("[t|t2|t3]").unwrap();
        let plus = b.d_plus(3, &w).unwrap();
        let minus = b.d_minus(3, &w).unwrap();
        assert_eq!(b.render(2, &plus), "t[t2|t3] + [t|t]");
        assert_eq!(b.render(2, &minus), "[t|t2] + [t3|t3]");
        assert_eq!(
            b.render_word(&b.quasi_differential(3, &w).unwrap()),
            "t[t2|t3] + [t|t] - [t3|t3] - [t|t2]"
        );
    }

    #[test]
    fn quasi_differential_is_not_pointwise_difference() {
        let b = bar("c2", 3);
        let w = b.parse_word("[1|t] + [t|t]").unwrap();
        let qd = b.quasi_differential(2, &w).unwrap();
        let (BarElement::Word(p), BarElement::Word(m)) =
            (b.d_plus(2, &w).unwrap(), b.d_minus(2, &w).unwrap())
        else {
            unreachable!()
        };
        assert_ne!(qd, p - m);
    }

    #[test]
    fn homotopy_values() {
        let b = bar("c2", 3);
        assert_eq!(
            b.render_word(&b.homotopy_e(-1, &BarElement::Int(1)).unwrap()),
            "-[ ]"
        );
        let w = b.parse_word("t[ ] - [ ]").unwrap();
        assert_eq!(
            b.render_word(&b.homotopy_e(0, &BarElement::Word(w)).unwrap()),
            "-[t] + [1]"
        );
        let w = b.parse_word("t[1] - [1]").unwrap();
        assert_eq!(
            b.render_word(&b.homotopy_e(1, &BarElement::Word(w)).unwrap()),
            "-[t|1] + [1|1]"
        );
        assert!(b.homotopy_e(3, &BarElement::Word(Word::empty())).is_err());
        assert!(matches!(
            b.homotopy_e(0, &BarElement::Int(1)),
            Err(BarError::WrongKind(0))
        ));
    }

    #[test]
    fn augmentation_and_evaluation() {
        let b = BarComplex::new(Arc::new(cyclic(4)), 2);
        assert_eq!(augmentation(&b.parse_word("t[ ] + t2[ ]").unwrap()), 2);
        assert_eq!(augmentation(&Word::empty()), 0);
        assert_eq!(b.ev_map(&b.parse_word("t[t3]").unwrap()).unwrap(), 0);
        let diff = b.ev_map(&b.parse_word("[t] - [t3]").unwrap()).unwrap();
        assert_eq!(b.group().label(diff), "t2");
    }

    #[test]
    fn verify_bar_on_s3_passes() {
        let b = Arc::new(BarComplex::new(Arc::new(dihedral(3)), 3));
        let report = verify_bar(&b, &BarCheck::ALL);
        assert!(
            report.all_pass(),
            "{:?}",
            report.entries.iter().find(|e| !e.passed())
        );
    }

    #[test]
    fn flipped_contraction_fails_first_at_degree_zero() {
        let b = Arc::new(BarComplex::new(Arc::new(cyclic(2)), 3).with_flipped_homotopy());
        let report = verify_bar(&b, &[BarCheck::Pch]);
        assert_eq!(
            report.first_failure(BarCheck::Pch).map(|e| e.degree),
            Some(0)
        );
    }

    #[test]
    fn abelianized_sizes() {
        let ab = abelianized_bar(Arc::new(cyclic(2)), 2, 3, 1 << 20).unwrap();
        let sizes: Vec<_> = (-1..=3).map(|n| ab.complex.size(n).unwrap()).collect();
        assert_eq!(sizes, [2, 4, 16, 256, 65536]);
        assert!(matches!(
            abelianized_bar(Arc::new(cyclic(3)), 3, 2, 1 << 20),
            Err(BarError::Pqc(PqcError::CarrierTooLarge { degree: 2, .. }))
        ));
    }

    #[test]
    fn parse_round_trip() {
        let b = bar("s3", 2);
        for text in ["[r|s] - rs[r2] + [ ]", "-[r|r]", "0"] {
            assert_eq!(b.render_word(&b.parse_word(text).unwrap()), text);
        }
    }
}
