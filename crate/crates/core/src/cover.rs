//! Exact minimum set cover for small instances.

use std::collections::HashSet;

/// Outcome of [`min_cover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverOutcome {
    /// Indices into the caller's set list, ascending.
    Cover(Vec<usize>),
    /// The union of all sets misses some element.
    Uncoverable,
    /// More than `cap` sets remain after dominance reduction.
    TooLarge { reduced: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
}

/// Smallest family of `sets` (each a list of elements of `0..universe`)
/// whose union is the whole universe. Sets contained in another set are
/// discarded first; if more than `cap` remain the search is not attempted.
pub fn min_cover(universe: usize, sets: &[Vec<usize>], cap: usize) -> CoverOutcome {
    let bits: Vec<Bits> = sets
        .iter()
        .map(|s| {
            let mut b = Bits::new(universe);
            for &e in s {
                b.set(e);
            }
            b
        })
        .collect();

    // first occurrence of each distinct nonempty set
    let mut distinct: Vec<usize> = Vec::new();
    let mut firsts: HashSet<&Bits> = HashSet::new();
    for (i, b) in bits.iter().enumerate() {
        if b.count() > 0 && firsts.insert(b) {
            distinct.push(i);
        }
    }
    // larger sets first, so only already-kept maximal sets can dominate
    distinct.sort_by_key(|&i| std::cmp::Reverse(bits[i].count()));
    let mut kept: Vec<usize> = Vec::new();
    for &i in &distinct {
        if !kept.iter().any(|&j| bits[i].subset_of(&bits[j])) {
            kept.push(i);
        }
    }
    kept.sort_unstable();

    let mut all = Bits::new(universe);
    for &i in &kept {
        all.or_assign(&bits[i]);
    }
    if (all.count() as usize) < universe {
        return CoverOutcome::Uncoverable;
    }
    if universe == 0 {
        return CoverOutcome::Cover(Vec::new());
    }
    if kept.len() > cap {
        return CoverOutcome::TooLarge { reduced: kept.len() };
    }

    let mut search = Search { universe, bits: &bits, kept: &kept, best: None };
    search.run(&mut Vec::new(), &Bits::new(universe));
    let mut best = search.best.expect("a cover exists");
    best.sort_unstable();
    CoverOutcome::Cover(best)
}

struct Search<'a> {
    universe: usize,
    bits: &'a [Bits],
    kept: &'a [usize],
    best: Option<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, chosen: &mut Vec<usize>, covered: &Bits) {
        if let Some(best) = &self.best {
            if chosen.len() + 1 >= best.len() {
                return;
            }
        }
        // branch on the uncovered element with the fewest candidate sets
        let mut pick: Option<(usize, Vec<usize>)> = None;
        for e in 0..self.universe {
            if covered.get(e) {
                continue;
            }
            let options: Vec<usize> = self.kept.iter().copied().filter(|&s| self.bits[s].get(e)).collect();
            if pick.as_ref().is_none_or(|(_, o)| options.len() < o.len()) {
                pick = Some((e, options));
            }
        }
        let Some((_, options)) = pick else {
            self.best = Some(chosen.clone());
            return;
        };
        for s in options {
            let mut next = covered.clone();
            next.or_assign(&self.bits[s]);
            chosen.push(s);
            if next.count() as usize == self.universe {
                if self.best.as_ref().is_none_or(|b| chosen.len() < b.len()) {
                    self.best = Some(chosen.clone());
                }
            } else {
                self.run(chosen, &next);
            }
            chosen.pop();
        }
    }
}
