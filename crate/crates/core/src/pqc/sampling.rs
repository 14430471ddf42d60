//! Random finite PQCs together with morphisms and global parity homotopies
//! between them, found by exhaustive search over homomorphism tables.

use std::sync::Arc;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use super::{FiniteLevel, FinitePqc, HomotopyMode, MapTable, ParityHomotopy, Pqc};
use crate::fingroup::{
    all_homomorphisms, cyclic, dihedral, is_homomorphism, klein_four, quaternion, FiniteGroup,
};

/// Groups of order at most 8.
pub fn small_groups() -> Vec<Arc<FiniteGroup>> {
    [
        cyclic(2),
        cyclic(3),
        cyclic(4),
        klein_four(),
        dihedral(3),
        cyclic(6),
        dihedral(4),
        quaternion(),
    ]
    .into_iter()
    .map(Arc::new)
    .collect()
}

/// A PQC on degrees `lo..=hi` with carriers drawn from `pool` and structure
/// maps drawn uniformly from all homomorphisms.
pub fn random_pqc<R: Rng>(rng: &mut R, pool: &[Arc<FiniteGroup>], lo: i32, hi: i32) -> FinitePqc {
    let mut levels: Vec<FiniteLevel> = Vec::new();
    for i in 0..=(hi - lo) as usize {
        let group = pool.choose(rng).expect("empty pool").clone();
        let (dplus, dminus) = if i == 0 {
            (vec![], vec![])
        } else {
            let homs = all_homomorphisms(&group, &levels[i - 1].group);
            (
                homs.choose(rng).unwrap().clone(),
                homs.choose(rng).unwrap().clone(),
            )
        };
        levels.push(FiniteLevel {
            group,
            dplus,
            dminus,
        });
    }
    FinitePqc::new(lo, levels).expect("sampled maps are homomorphisms")
}

fn commutes(x: &FinitePqc, y: &FinitePqc, n: i32, below: &[usize], here: &[usize]) -> bool {
    (0..here.len()).all(|e| {
        below[x.dplus(n, &e)] == y.dplus(n, &here[e])
            && below[x.dminus(n, &e)] == y.dminus(n, &here[e])
    })
}

/// Up to `limit` PQC morphisms `x → y` made of degreewise homomorphisms,
/// in an order shuffled by `rng`. The zero morphism is always among them
/// when `limit > 0`.
pub fn morphisms<R: Rng>(rng: &mut R, x: &FinitePqc, y: &FinitePqc, limit: usize) -> Vec<MapTable> {
    let degrees: Vec<i32> = (x.lo()..=x.hi()).collect();
    let candidates: Vec<Vec<Vec<usize>>> = degrees
        .iter()
        .map(|&n| {
            let mut homs = all_homomorphisms(x.group(n).unwrap(), y.group(n).unwrap());
            homs.shuffle(rng);
            homs
        })
        .collect();

    fn go(
        x: &FinitePqc,
        y: &FinitePqc,
        degrees: &[i32],
        candidates: &[Vec<Vec<usize>>],
        chosen: &mut Vec<Vec<usize>>,
        out: &mut Vec<MapTable>,
        limit: usize,
    ) {
        let i = chosen.len();
        if i == degrees.len() {
            out.push(MapTable {
                lo: degrees[0],
                maps: chosen.clone(),
            });
            return;
        }
        for h in &candidates[i] {
            if out.len() >= limit {
                return;
            }
            if i > 0 && !commutes(x, y, degrees[i], &chosen[i - 1], h) {
                continue;
            }
            chosen.push(h.clone());
            go(x, y, degrees, candidates, chosen, out, limit);
            chosen.pop();
        }
    }

    let mut out = Vec::new();
    go(
        x,
        y,
        &degrees,
        &candidates,
        &mut Vec::new(),
        &mut out,
        limit,
    );
    let zero = MapTable::zero(x);
    if limit > 0 && !out.contains(&zero) {
        out.pop();
        out.push(zero);
    }
    out
}

/// Up to `limit` global parity homotopies out of `f`: pairs `(s, g)` where
/// each `s_n` is a homomorphism `X_n → Y_{n+1}` satisfying `s∂⁺ = ∂⁻s`, and
/// `g = −∂⁺s + f + s∂⁻` is a PQC morphism.
pub fn homotopies_from<R: Rng>(
    rng: &mut R,
    x: &FinitePqc,
    y: &FinitePqc,
    f: &MapTable,
    limit: usize,
) -> Vec<(MapTable, MapTable)> {
    let degrees: Vec<i32> = (x.lo()..=x.hi()).collect();
    let trivial = FiniteGroup::trivial();
    let candidates: Vec<Vec<Vec<usize>>> = degrees
        .iter()
        .map(|&n| {
            let above = y.group(n + 1).map_or(&trivial, |g| g.as_ref());
            let mut homs = all_homomorphisms(x.group(n).unwrap(), above);
            homs.shuffle(rng);
            homs
        })
        .collect();

    struct Search<'a> {
        x: &'a FinitePqc,
        y: &'a FinitePqc,
        f: &'a MapTable,
        degrees: Vec<i32>,
        candidates: Vec<Vec<Vec<usize>>>,
        s: Vec<Vec<usize>>,
        g: Vec<Vec<usize>>,
        out: Vec<(MapTable, MapTable)>,
        limit: usize,
    }

    impl Search<'_> {
        fn prev_s(&self, i: usize, e: usize) -> usize {
            if i == 0 {
                0
            } else {
                self.s[i - 1][e]
            }
        }

        fn go(&mut self) {
            let i = self.s.len();
            if i == self.degrees.len() {
                let lo = self.degrees[0];
                self.out.push((
                    MapTable {
                        lo,
                        maps: self.s.clone(),
                    },
                    MapTable {
                        lo,
                        maps: self.g.clone(),
                    },
                ));
                return;
            }
            let (x, y, n) = (self.x, self.y, self.degrees[i]);
            let yn = y.group(n).unwrap().clone();
            for c in 0..self.candidates[i].len() {
                if self.out.len() >= self.limit {
                    return;
                }
                let s_here = &self.candidates[i][c];
                let order = s_here.len();
                let relation = (0..order)
                    .all(|w| self.prev_s(i, x.dplus(n, &w)) == y.dminus(n + 1, &s_here[w]));
                if !relation {
                    continue;
                }
                let g_here: Vec<usize> = (0..order)
                    .map(|w| {
                        let boundary = yn.inv(y.dplus(n + 1, &s_here[w]));
                        yn.sum([boundary, self.f.get(n, w), self.prev_s(i, x.dminus(n, &w))])
                    })
                    .collect();
                if !matches!(is_homomorphism(&g_here, x.group(n).unwrap(), &yn), Ok(v) if v.is_pass())
                {
                    continue;
                }
                if i > 0 && !commutes(x, y, n, &self.g[i - 1], &g_here) {
                    continue;
                }
                self.s.push(s_here.clone());
                self.g.push(g_here);
                self.go();
                self.s.pop();
                self.g.pop();
            }
        }
    }

    let mut search = Search {
        x,
        y,
        f,
        degrees,
        candidates,
        s: Vec::new(),
        g: Vec::new(),
        out: Vec::new(),
        limit,
    };
    search.go();
    search.out
}

/// A global parity homotopy between finite PQCs, stored as tables.
#[derive(Clone, Debug)]
pub struct HomotopyInstance {
    pub source: Arc<FinitePqc>,
    pub target: Arc<FinitePqc>,
    pub from: MapTable,
    pub to: MapTable,
    pub s: MapTable,
}

impl HomotopyInstance {
    pub fn homotopy(&self) -> ParityHomotopy<usize, usize> {
        ParityHomotopy {
            from: self.from.to_graded(),
            to: self.to.to_graded(),
            s: self.s.to_graded(),
            mode: HomotopyMode::Global,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.from == self.to
    }
}

/// Samples a PQC pair on degrees `0..=hi` (`hi` in 1..=2), a morphism `f`
/// and a global homotopy out of it, preferring ones with `g ≠ f`.
pub fn random_homotopy_instance<R: Rng>(
    rng: &mut R,
    pool: &[Arc<FiniteGroup>],
) -> HomotopyInstance {
    let hi = rng.random_range(1..=2);
    let source = random_pqc(rng, pool, 0, hi);
    let target = if rng.random_bool(0.5) {
        source.clone()
    } else {
        random_pqc(rng, pool, 0, hi)
    };
    let fs = morphisms(rng, &source, &target, 16);
    let from = fs.choose(rng).expect("zero morphism always exists").clone();
    let found = homotopies_from(rng, &source, &target, &from, 32);
    let nontrivial: Vec<_> = found.iter().filter(|(_, g)| *g != from).collect();
    let (s, to) = if !nontrivial.is_empty() && rng.random_bool(0.8) {
        (*nontrivial.choose(rng).unwrap()).clone()
    } else {
        found
            .choose(rng)
            .expect("zero homotopy always exists")
            .clone()
    };
    HomotopyInstance {
        source: Arc::new(source),
        target: Arc::new(target),
        from,
        to,
        s,
    }
}
