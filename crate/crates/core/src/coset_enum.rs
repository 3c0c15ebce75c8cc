//! Todd–Coxeter coset enumeration and coset tables.
//!
//! Columns are indexed by signed letters: generator `g` (1-based) occupies column
//! `2(g-1)` and its inverse column `2(g-1)+1`, so the inverse of column `c` is `c ^ 1`.
//!
//! The enumerator defines cosets at the first undefined entry in row-major order and
//! closes every definition with relator scans driven by a FIFO deduction queue.
//! Coincidences are merged through a union-find forest; rows are only compacted once
//! the table is complete, at which point cosets are renumbered in first-seen order.

use std::collections::VecDeque;

use thiserror::Error;

use crate::presentation::{Presentation, Word};

const UNDEF: usize = usize::MAX;

/// Column of a signed letter.
#[inline]
pub fn column(letter: i32) -> usize {
    debug_assert!(letter != 0);
    let g = letter.unsigned_abs() as usize - 1;
    2 * g + usize::from(letter < 0)
}

/// Signed letter of a column.
#[inline]
pub fn letter_of_column(col: usize) -> i32 {
    let g = (col / 2 + 1) as i32;
    if col.is_multiple_of(2) {
        g
    } else {
        -g
    }
}

/// The action of the generators on the cosets of a subgroup.
///
/// Coset 0 is the subgroup itself. Entries are `None` only in partial tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetTable {
    generator_count: usize,
    rows: Vec<Vec<Option<usize>>>,
}

impl CosetTable {
    /// Builds a table from raw rows (one entry per column), without validation.
    pub fn from_rows(generator_count: usize, rows: Vec<Vec<Option<usize>>>) -> Self {
        CosetTable {
            generator_count,
            rows,
        }
    }

    /// Builds a complete table from the permutation each generator induces on cosets.
    ///
    /// # Panics
    ///
    /// If some image list is not a permutation of `0..n` for a common `n`.
    pub fn from_generator_images(images: &[Vec<usize>]) -> Self {
        let n = images.first().map_or(1, Vec::len);
        let mut rows = vec![vec![None; 2 * images.len()]; n];
        for (g, perm) in images.iter().enumerate() {
            assert_eq!(perm.len(), n, "image lists must have equal length");
            for (c, &d) in perm.iter().enumerate() {
                assert!(d < n && rows[d][2 * g + 1].is_none(), "not a permutation");
                rows[c][2 * g] = Some(d);
                rows[d][2 * g + 1] = Some(c);
            }
        }
        CosetTable {
            generator_count: images.len(),
            rows,
        }
    }

    /// The one-coset table (subgroup = whole group).
    pub fn trivial(generator_count: usize) -> Self {
        CosetTable {
            generator_count,
            rows: vec![vec![Some(0); 2 * generator_count]],
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    /// Number of cosets.
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Option::is_some))
    }

    pub fn rows(&self) -> &[Vec<Option<usize>>] {
        &self.rows
    }

    pub fn entry(&self, coset: usize, letter: i32) -> Option<usize> {
        self.rows[coset][column(letter)]
    }

    /// Image of `coset` under `letter` in a complete table.
    #[inline]
    pub fn image(&self, coset: usize, letter: i32) -> usize {
        self.rows[coset][column(letter)].expect("coset table entry undefined")
    }

    /// Permutation of the cosets induced by generator `g` (1-based).
    pub fn generator_permutation(&self, g: usize) -> Vec<usize> {
        (0..self.index()).map(|c| self.image(c, g as i32)).collect()
    }

    /// Renumbers cosets in the order they are first seen when reading the table
    /// row by row from coset 0. Cosets unreachable from 0 are dropped.
    pub fn standardized(&self) -> CosetTable {
        let n = self.index();
        let mut label = vec![UNDEF; n];
        let mut order = Vec::with_capacity(n);
        label[0] = 0;
        order.push(0);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for d in self.rows[c].iter().flatten() {
                if label[*d] == UNDEF {
                    label[*d] = order.len();
                    order.push(*d);
                }
            }
            i += 1;
        }
        let rows = order
            .iter()
            .map(|&c| {
                self.rows[c]
                    .iter()
                    .map(|e| e.map(|d| label[d]))
                    .collect::<Vec<_>>()
            })
            .collect();
        CosetTable {
            generator_count: self.generator_count,
            rows,
        }
    }
}

/// Image of coset `c` under `w`, applying letters left to right.
pub fn coset_action(t: &CosetTable, w: &Word, c: usize) -> usize {
    w.letters().iter().fold(c, |d, &x| t.image(d, x))
}

/// True iff every subgroup generator fixes every coset.
///
/// For a complete table this is equivalent to the subgroup being normal: the
/// stabiliser of coset `Hg` is `g^-1 H g`, so `H` fixes every coset exactly when
/// it lies in all of its conjugates.
pub fn is_normal(t: &CosetTable, subgroup_gens: &[Word]) -> bool {
    subgroup_gens
        .iter()
        .all(|w| (0..t.index()).all(|c| coset_action(t, w, c) == c))
}

/// Independent consistency check of a complete coset table.
///
/// Verifies dimensions and range, that each generator column and its inverse
/// column are mutually inverse permutations, that every relator closes at every
/// coset, that every subgroup generator closes at coset 0, and transitivity.
pub fn verify_table(p: &Presentation, subgroup_gens: &[Word], t: &CosetTable) -> bool {
    let n = t.rows.len();
    let width = 2 * p.generator_count();
    if n == 0 || t.generator_count != p.generator_count() {
        return false;
    }
    let mut dense = Vec::with_capacity(n * width);
    for row in &t.rows {
        if row.len() != width {
            return false;
        }
        for e in row {
            match e {
                Some(d) if *d < n => dense.push(*d),
                _ => return false,
            }
        }
    }
    let at = |c: usize, x: i32| -> usize {
        let g = x.unsigned_abs() as usize - 1;
        dense[c * width + 2 * g + usize::from(x < 0)]
    };
    for g in 1..=p.generator_count() as i32 {
        for c in 0..n {
            if at(at(c, g), -g) != c || at(at(c, -g), g) != c {
                return false;
            }
        }
    }
    let trace = |start: usize, w: &Word| w.letters().iter().fold(start, |c, &x| at(c, x));
    for r in p.relators() {
        if (0..n).any(|c| trace(c, r) != c) {
            return false;
        }
    }
    if subgroup_gens
        .iter()
        .any(|w| w.max_generator() > p.generator_count() || trace(0, w) != 0)
    {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(c) = stack.pop() {
        for &d in &dense[c * width..(c + 1) * width] {
            if !seen[d] {
                seen[d] = true;
                stack.push(d);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    /// Not a proof of infinite index: the budget may simply be too small.
    #[error("coset enumeration exceeded {max_cosets} cosets (peak {high_water} live)")]
    BudgetExhausted {
        max_cosets: usize,
        high_water: usize,
    },
    #[error("subgroup generator refers to an undeclared generator")]
    GeneratorOutOfRange,
}

/// Enumerates the cosets of the subgroup generated by `subgroup_gens`.
///
/// On success the table is complete, standardized, and its index is `[G : H]`.
pub fn enumerate_cosets(
    p: &Presentation,
    subgroup_gens: &[Word],
    max_cosets: usize,
) -> Result<CosetTable, EnumerationError> {
    assert!(max_cosets >= 1, "max_cosets must be positive");
    if subgroup_gens
        .iter()
        .any(|w| w.max_generator() > p.generator_count())
    {
        return Err(EnumerationError::GeneratorOutOfRange);
    }
    let mut e = Enumerator::new(p, max_cosets);
    for w in subgroup_gens {
        let cols: Vec<usize> = w.letters().iter().map(|&x| column(x)).collect();
        if !cols.is_empty() {
            e.scan_and_fill(0, &cols)?;
            e.process_deductions();
        }
    }
    let mut cursor = 0;
    loop {
        while cursor < e.parent.len() {
            if e.parent[cursor] == cursor
                && (0..e.width).any(|x| e.table[cursor * e.width + x] == UNDEF)
            {
                break;
            }
            cursor += 1;
        }
        if cursor == e.parent.len() {
            break;
        }
        let x = (0..e.width)
            .find(|&x| e.table[cursor * e.width + x] == UNDEF)
            .unwrap();
        e.define(cursor, x)?;
        e.process_deductions();
    }
    Ok(e.finish(p.generator_count()))
}

struct Enumerator {
    width: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    live: usize,
    high_water: usize,
    max_cosets: usize,
    deductions: VecDeque<(usize, usize)>,
    /// For each column, the cyclic conjugates of relators and their inverses that
    /// begin with that column's letter.
    conjugates: Vec<Vec<Vec<usize>>>,
}

impl Enumerator {
    fn new(p: &Presentation, max_cosets: usize) -> Self {
        let width = 2 * p.generator_count();
        let mut conjugates = vec![Vec::<Vec<usize>>::new(); width];
        for r in p.relators() {
            for word in [r.clone(), r.inverse()] {
                let cols: Vec<usize> = word.letters().iter().map(|&x| column(x)).collect();
                for k in 0..cols.len() {
                    let rot: Vec<usize> = cols[k..].iter().chain(&cols[..k]).copied().collect();
                    let bucket = &mut conjugates[rot[0]];
                    if !bucket.contains(&rot) {
                        bucket.push(rot);
                    }
                }
            }
        }
        Enumerator {
            width,
            table: vec![UNDEF; width],
            parent: vec![0],
            live: 1,
            high_water: 1,
            max_cosets,
            deductions: VecDeque::new(),
            conjugates,
        }
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> usize {
        self.table[c * self.width + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c * self.width + x] = d;
    }

    fn define(&mut self, c: usize, x: usize) -> Result<usize, EnumerationError> {
        if self.parent.len() >= self.max_cosets {
            return Err(EnumerationError::BudgetExhausted {
                max_cosets: self.max_cosets,
                high_water: self.high_water,
            });
        }
        let d = self.parent.len();
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.width));
        self.live += 1;
        self.high_water = self.high_water.max(self.live);
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.deductions.push_back((c, x));
        Ok(d)
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut k = c;
        while self.parent[k] != r {
            let next = self.parent[k];
            self.parent[k] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (keep, kill) = (a.min(b), a.max(b));
            self.parent[kill] = keep;
            self.live -= 1;
            queue.push_back(kill);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(e) = queue.pop_front() {
            for x in 0..self.width {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                self.set(f, x ^ 1, UNDEF);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, x);
                let fx = self.get(f1, x ^ 1);
                if ex != UNDEF {
                    self.merge(f1, ex, &mut queue);
                } else if fx != UNDEF {
                    self.merge(e1, fx, &mut queue);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, x ^ 1, e1);
                    self.deductions.push_back((e1, x));
                }
            }
        }
    }

    /// Scans `word` at `c`, filling a single gap as a deduction and reporting
    /// mismatches as coincidences. Does not define new cosets.
    fn scan(&mut self, c: usize, word: &[usize]) {
        let n = word.len();
        let (mut f, mut i) = (c, 0);
        while i < n {
            let next = self.get(f, word[i]);
            if next == UNDEF {
                break;
            }
            f = next;
            i += 1;
        }
        if i == n {
            if f != c {
                self.coincidence(f, c);
            }
            return;
        }
        let (mut b, mut j) = (c, n);
        while j > i {
            let prev = self.get(b, word[j - 1] ^ 1);
            if prev == UNDEF {
                break;
            }
            b = prev;
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            let x = word[i];
            self.set(f, x, b);
            self.set(b, x ^ 1, f);
            self.deductions.push_back((f, x));
        }
    }

    /// Scans `word` at `c`, defining new cosets until it closes.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<(), EnumerationError> {
        let n = word.len();
        let (mut f, mut i) = (c, 0);
        let (mut b, mut j) = (c, n);
        loop {
            while i < j && self.get(f, word[i]) != UNDEF {
                f = self.get(f, word[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.get(b, word[j - 1] ^ 1) != UNDEF {
                b = self.get(b, word[j - 1] ^ 1);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                let x = word[i];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                self.deductions.push_back((f, x));
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop_front() {
            if self.parent[c] != c {
                continue;
            }
            for k in 0..self.conjugates[x].len() {
                if self.parent[c] != c {
                    break;
                }
                let word = std::mem::take(&mut self.conjugates[x][k]);
                self.scan(c, &word);
                self.conjugates[x][k] = word;
            }
        }
    }

    fn finish(self, generator_count: usize) -> CosetTable {
        let live: Vec<usize> = (0..self.parent.len())
            .filter(|&c| self.parent[c] == c)
            .collect();
        let mut label = vec![UNDEF; self.parent.len()];
        for (i, &c) in live.iter().enumerate() {
            label[c] = i;
        }
        let rows = live
            .iter()
            .map(|&c| {
                (0..self.width)
                    .map(|x| Some(label[self.get(c, x)]))
                    .collect()
            })
            .collect();
        CosetTable::from_rows(generator_count, rows).standardized()
    }
}
