use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GradedMap, Pqc, PqcError};
use crate::fingroup::{is_homomorphism, FiniteGroup, GroupError, GroupSource};
use crate::verdict::Verdict;

/// One degree of a [`FinitePqc`]: the carrier and the structure maps into the
/// degree below, as image-index arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLevel {
    pub group: Arc<FiniteGroup>,
    pub dplus: Vec<usize>,
    pub dminus: Vec<usize>,
}

/// A PQC whose carriers are Cayley-table groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePqc {
    lo: i32,
    levels: Vec<FiniteLevel>,
}

/// `{ "degrees": [lo, hi], "levels": [{ "group", "dplus", "dminus" }...] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PqcFile {
    pub degrees: [i32; 2],
    pub levels: Vec<LevelFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelFile {
    pub group: GroupSource,
    #[serde(default)]
    pub dplus: Vec<usize>,
    #[serde(default)]
    pub dminus: Vec<usize>,
}

impl FinitePqc {
    /// Validates that every structure map is a homomorphism into the level
    /// below. Maps of the lowest level go to the trivial group and may be
    /// given as empty arrays.
    pub fn new(lo: i32, mut levels: Vec<FiniteLevel>) -> Result<Self, PqcError> {
        if levels.is_empty() {
            return Err(PqcError::Invalid("no levels".into()));
        }
        for i in 0..levels.len() {
            let order = levels[i].group.order();
            if i == 0 {
                let first = &mut levels[0];
                for map in [&mut first.dplus, &mut first.dminus] {
                    if map.is_empty() {
                        *map = vec![0; order];
                    } else if map.len() != order || map.iter().any(|&v| v != 0) {
                        return Err(PqcError::Invalid(
                            "lowest level maps must go to the trivial group".into(),
                        ));
                    }
                }
                continue;
            }
            let below = levels[i - 1].group.clone();
            for (name, map) in [("dplus", &levels[i].dplus), ("dminus", &levels[i].dminus)] {
                if let Verdict::Fail((a, b)) = is_homomorphism(map, &levels[i].group, &below)? {
                    return Err(PqcError::Invalid(format!(
                        "{name} at degree {} is not a homomorphism at ({a}, {b})",
                        lo + i as i32
                    )));
                }
            }
        }
        Ok(FinitePqc { lo, levels })
    }

    pub fn from_file_with(
        file: PqcFile,
        mut resolve: impl FnMut(&GroupSource) -> Result<FiniteGroup, GroupError>,
    ) -> Result<Self, PqcError> {
        let [lo, hi] = file.degrees;
        if hi < lo || (hi - lo + 1) as usize != file.levels.len() {
            return Err(PqcError::Invalid(format!(
                "degrees [{lo}, {hi}] do not match {} levels",
                file.levels.len()
            )));
        }
        let levels = file
            .levels
            .into_iter()
            .map(|l| {
                Ok(FiniteLevel {
                    group: Arc::new(resolve(&l.group)?),
                    dplus: l.dplus,
                    dminus: l.dminus,
                })
            })
            .collect::<Result<Vec<_>, GroupError>>()?;
        Self::new(lo, levels)
    }

    /// Parses a PQC file whose groups are standard names or inline tables.
    pub fn parse(text: &str) -> Result<Self, PqcError> {
        let file: PqcFile =
            serde_json::from_str(text).map_err(|e| PqcError::Invalid(e.to_string()))?;
        Self::from_file_with(file, GroupSource::resolve)
    }

    pub fn to_file(&self) -> PqcFile {
        PqcFile {
            degrees: [self.lo(), self.hi()],
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(i, l)| LevelFile {
                    group: GroupSource::Inline(l.group.to_file()),
                    dplus: if i == 0 { vec![] } else { l.dplus.clone() },
                    dminus: if i == 0 { vec![] } else { l.dminus.clone() },
                })
                .collect(),
        }
    }

    pub fn level(&self, n: i32) -> Option<&FiniteLevel> {
        if self.contains(n) {
            self.levels.get((n - self.lo) as usize)
        } else {
            None
        }
    }

    pub fn group(&self, n: i32) -> Option<&Arc<FiniteGroup>> {
        self.level(n).map(|l| &l.group)
    }

    pub fn levels(&self) -> &[FiniteLevel] {
        &self.levels
    }
}

impl Pqc for FinitePqc {
    type Elem = usize;

    fn lo(&self) -> i32 {
        self.lo
    }

    fn hi(&self) -> i32 {
        self.lo + self.levels.len() as i32 - 1
    }

    fn zero(&self, _n: i32) -> usize {
        FiniteGroup::IDENTITY
    }

    fn add(&self, n: i32, a: &usize, b: &usize) -> usize {
        self.group(n).map_or(0, |g| g.op(*a, *b))
    }

    fn neg(&self, n: i32, a: &usize) -> usize {
        self.group(n).map_or(0, |g| g.inv(*a))
    }

    fn dplus(&self, n: i32, x: &usize) -> usize {
        match self.level(n) {
            Some(l) if n > self.lo => l.dplus[*x],
            _ => 0,
        }
    }

    fn dminus(&self, n: i32, x: &usize) -> usize {
        match self.level(n) {
            Some(l) if n > self.lo => l.dminus[*x],
            _ => 0,
        }
    }

    /// All non-identity elements.
    fn generators(&self, n: i32) -> Vec<usize> {
        self.group(n)
            .map_or_else(Vec::new, |g| (1..g.order()).collect())
    }

    fn size(&self, n: i32) -> Option<usize> {
        Some(self.group(n).map_or(1, |g| g.order()))
    }

    fn element(&self, _n: i32, index: usize) -> usize {
        index
    }

    fn index_of(&self, _n: i32, x: &usize) -> usize {
        *x
    }

    fn render(&self, n: i32, x: &usize) -> String {
        self.group(n)
            .map_or_else(|| "0".to_string(), |g| g.label(*x).to_string())
    }
}

/// Per-degree index tables for a map between finite PQCs, starting at degree
/// `lo`. Degrees outside the table map to the identity element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapTable {
    pub lo: i32,
    pub maps: Vec<Vec<usize>>,
}

impl MapTable {
    pub fn get(&self, n: i32, x: usize) -> usize {
        if n < self.lo {
            return 0;
        }
        self.maps
            .get((n - self.lo) as usize)
            .and_then(|m| m.get(x))
            .copied()
            .unwrap_or(0)
    }

    pub fn to_graded(&self) -> GradedMap<usize, usize> {
        let table = self.clone();
        GradedMap::new(move |n, x| table.get(n, *x))
    }

    /// Tabulates `f` over every element of `source` in every degree.
    pub fn tabulate<X: Pqc>(source: &X, f: &GradedMap<X::Elem, usize>) -> MapTable {
        let maps = (source.lo()..=source.hi())
            .map(|n| {
                source
                    .elements(n)
                    .expect("tabulate needs finite carriers")
                    .iter()
                    .map(|x| f.apply(n, x))
                    .collect()
            })
            .collect();
        MapTable {
            lo: source.lo(),
            maps,
        }
    }

    pub fn identity(x: &FinitePqc) -> MapTable {
        MapTable {
            lo: x.lo(),
            maps: x
                .levels()
                .iter()
                .map(|l| l.group.elements().collect())
                .collect(),
        }
    }

    pub fn zero(x: &FinitePqc) -> MapTable {
        MapTable {
            lo: x.lo(),
            maps: x
                .levels()
                .iter()
                .map(|l| vec![0; l.group.order()])
                .collect(),
        }
    }
}
