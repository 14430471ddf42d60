use super::{Pqc, PqcError};
use crate::freeword::{extend_hom, FreeGroup, GeneratorAssignment, Word};

/// A PQC of free groups on named generators, with structure maps given by
/// generator images (free addition).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePqc {
    lo: i32,
    generators: Vec<Vec<String>>,
    dplus: Vec<GeneratorAssignment<String, Word<String>>>,
    dminus: Vec<GeneratorAssignment<String, Word<String>>>,
}

impl FreePqc {
    /// `generators[i]` names the free generators in degree `lo + i`;
    /// `dplus[i]`, `dminus[i]` assign their images in degree `lo + i - 1`
    /// (ignored for `i = 0`).
    pub fn new(
        lo: i32,
        generators: Vec<Vec<String>>,
        dplus: Vec<GeneratorAssignment<String, Word<String>>>,
        dminus: Vec<GeneratorAssignment<String, Word<String>>>,
    ) -> Result<Self, PqcError> {
        if generators.is_empty()
            || dplus.len() != generators.len()
            || dminus.len() != generators.len()
        {
            return Err(PqcError::Invalid(
                "one generator list and two assignments per degree".into(),
            ));
        }
        for i in 1..generators.len() {
            for g in &generators[i] {
                for map in [&dplus[i], &dminus[i]] {
                    let image = map
                        .get(g)
                        .ok_or_else(|| PqcError::Invalid(format!("{g} has no image")))?;
                    if let Some(l) = image
                        .letters()
                        .iter()
                        .find(|l| !generators[i - 1].contains(&l.generator))
                    {
                        return Err(PqcError::Invalid(format!(
                            "image of {g} uses {} outside degree {}",
                            l.generator,
                            lo + i as i32 - 1
                        )));
                    }
                }
            }
        }
        Ok(FreePqc {
            lo,
            generators,
            dplus,
            dminus,
        })
    }

    fn index(&self, n: i32) -> Option<usize> {
        self.contains(n).then(|| (n - self.lo) as usize)
    }

    fn apply(
        &self,
        maps: &[GeneratorAssignment<String, Word<String>>],
        n: i32,
        x: &Word<String>,
    ) -> Word<String> {
        match self.index(n) {
            Some(i) if i > 0 => {
                extend_hom(&FreeGroup::new(), &maps[i], x).expect("generator outside the complex")
            }
            _ => Word::empty(),
        }
    }
}

impl Pqc for FreePqc {
    type Elem = Word<String>;

    fn lo(&self) -> i32 {
        self.lo
    }

    fn hi(&self) -> i32 {
        self.lo + self.generators.len() as i32 - 1
    }

    fn zero(&self, _n: i32) -> Word<String> {
        Word::empty()
    }

    fn add(&self, _n: i32, a: &Word<String>, b: &Word<String>) -> Word<String> {
        a + b
    }

    fn neg(&self, _n: i32, a: &Word<String>) -> Word<String> {
        a.negate()
    }

    fn dplus(&self, n: i32, x: &Word<String>) -> Word<String> {
        self.apply(&self.dplus, n, x)
    }

    fn dminus(&self, n: i32, x: &Word<String>) -> Word<String> {
        self.apply(&self.dminus, n, x)
    }

    fn generators(&self, n: i32) -> Vec<Word<String>> {
        self.index(n)
            .map(|i| {
                self.generators[i]
                    .iter()
                    .cloned()
                    .map(Word::generator)
                    .collect()
            })
            .unwrap_or_default()
    }

    fn size(&self, n: i32) -> Option<usize> {
        match self.index(n) {
            Some(i) if !self.generators[i].is_empty() => None,
            _ => Some(1),
        }
    }

    fn element(&self, _n: i32, _index: usize) -> Word<String> {
        Word::empty()
    }

    fn index_of(&self, _n: i32, _x: &Word<String>) -> usize {
        0
    }

    fn render(&self, _n: i32, x: &Word<String>) -> String {
        x.to_string()
    }
}
