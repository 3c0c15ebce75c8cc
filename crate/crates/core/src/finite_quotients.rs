//! Finite quotients of presented groups: permutation images of coset actions,
//! perfectness, low-index subgroup search, normal cores (Galois closures), and the
//! homology-sphere obstruction check on finite Galois covers.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::abelianization::{abelian_invariants, AbelianInvariants};
use crate::coset_enum::{column, is_normal, CosetTable};
use crate::presentation::{Presentation, DEFAULT_LETTER_BUDGET};
use crate::subgroup_rewriting::{
    rewrite_with, schreier_transversal, simplify_presentation, RewriteError,
    DEFAULT_SIMPLIFY_BUDGET,
};

/// Largest group order closed explicitly.
pub const DEFAULT_EXPLICIT_CAP: usize = 1_000_000;

/// Order of the binary icosahedral group.
pub const BINARY_ICOSAHEDRAL_ORDER: usize = 120;

/// A permutation of `0..n`; `p[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    /// # Panics
    ///
    /// If `images` is not a bijection of `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            assert!(i < n && !seen[i], "not a permutation");
            seen[i] = true;
        }
        Permutation(images.into_iter().map(|i| i as u32).collect())
    }

    /// Builds a permutation of `0..n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &i) in cycle.iter().enumerate() {
                images[i] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiniteGroupError {
    #[error("group order exceeds the explicit cap of {cap}")]
    OrderTooLarge { cap: usize },
}

/// A finite permutation group given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupRep {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub order: BigInt,
    /// All elements in breadth-first order from the identity, when closed explicitly.
    pub elements: Option<Vec<Permutation>>,
}

impl FiniteGroupRep {
    /// Closes `generators` explicitly.
    pub fn generated_by(
        degree: usize,
        generators: Vec<Permutation>,
        explicit_cap: usize,
    ) -> Result<Self, FiniteGroupError> {
        assert!(generators.iter().all(|g| g.degree() == degree));
        let elements = closure(degree, &generators, explicit_cap)?;
        Ok(FiniteGroupRep {
            degree,
            generators,
            order: BigInt::from(elements.len()),
            elements: Some(elements),
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.order == BigInt::from(1)
    }
}

/// Breadth-first closure of the generators under right multiplication.
fn closure(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, FiniteGroupError> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut elements = vec![id];
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let next = elements[i].then(g);
            if !seen.contains(&next) {
                if elements.len() >= cap {
                    return Err(FiniteGroupError::OrderTooLarge { cap });
                }
                seen.insert(next.clone());
                elements.push(next);
            }
        }
        i += 1;
    }
    Ok(elements)
}

/// The permutation group induced by the generators on the cosets of `t`.
pub fn permutation_image(
    t: &CosetTable,
    explicit_cap: usize,
) -> Result<FiniteGroupRep, FiniteGroupError> {
    let generators = (1..=t.generator_count())
        .map(|g| Permutation::new(t.generator_permutation(g)))
        .collect();
    FiniteGroupRep::generated_by(t.index(), generators, explicit_cap)
}

fn group_commutator(x: &Permutation, y: &Permutation) -> Permutation {
    x.inverse().then(&y.inverse()).then(x).then(y)
}

/// The derived subgroup as the normal closure of the commutators of generators.
fn derived_subgroup_order(g: &FiniteGroupRep, cap: usize) -> Result<usize, FiniteGroupError> {
    let gens = &g.generators;
    let mut seeds: Vec<Permutation> = Vec::new();
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            let c = group_commutator(x, y);
            if !c.is_identity() && !seeds.contains(&c) {
                seeds.push(c);
            }
        }
    }
    let mut members: HashSet<Permutation> = closure(g.degree, &seeds, cap)?.into_iter().collect();
    'grow: loop {
        for k in 0..seeds.len() {
            for x in gens {
                let conj = x.inverse().then(&seeds[k]).then(x);
                if !members.contains(&conj) {
                    seeds.push(conj);
                    members = closure(g.degree, &seeds, cap)?.into_iter().collect();
                    continue 'grow;
                }
            }
        }
        return Ok(members.len());
    }
}

fn explicit_order(g: &FiniteGroupRep, cap: usize) -> Result<usize, FiniteGroupError> {
    if g.order > BigInt::from(cap) {
        return Err(FiniteGroupError::OrderTooLarge { cap });
    }
    Ok(match &g.elements {
        Some(e) => e.len(),
        None => closure(g.degree, &g.generators, cap)?.len(),
    })
}

/// True iff the group equals its commutator subgroup.
pub fn is_perfect_finite(
    g: &FiniteGroupRep,
    explicit_cap: usize,
) -> Result<bool, FiniteGroupError> {
    let order = explicit_order(g, explicit_cap)?;
    Ok(derived_subgroup_order(g, explicit_cap)? == order)
}

/// Order 120 and perfect; the binary icosahedral group is the only such group.
pub fn is_binary_icosahedral(
    g: &FiniteGroupRep,
    explicit_cap: usize,
) -> Result<bool, FiniteGroupError> {
    let order = explicit_order(g, explicit_cap)?;
    Ok(order == BINARY_ICOSAHEDRAL_ORDER && is_perfect_finite(g, explicit_cap)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowIndexOptions {
    pub max_index: usize,
    /// Maximum number of search nodes visited.
    pub node_budget: usize,
    /// One table per conjugacy class when true, one per subgroup otherwise.
    pub conjugacy_classes: bool,
}

impl LowIndexOptions {
    pub fn new(max_index: usize) -> Self {
        LowIndexOptions {
            max_index,
            node_budget: 1_000_000,
            conjugacy_classes: true,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LowIndexError {
    #[error("low-index search exceeded {node_budget} nodes ({} subgroups found so far)", found.len())]
    BudgetExhausted {
        node_budget: usize,
        found: Vec<CosetTable>,
    },
}

/// Subgroups of index at most `max_index`, one coset table per conjugacy class.
pub fn low_index_subgroups(
    p: &Presentation,
    max_index: usize,
) -> Result<Vec<CosetTable>, LowIndexError> {
    low_index_search(p, &LowIndexOptions::new(max_index))
}

/// Backtracking over partial standard coset tables.
///
/// The first undefined entry in row-major order is set to each existing coset whose
/// inverse entry is free, then to a fresh coset; relator scans propagate forced
/// entries and reject contradictions. In class mode a partial table is discarded as
/// soon as renumbering it from some other coset provably gives a smaller table.
pub fn low_index_search(
    p: &Presentation,
    options: &LowIndexOptions,
) -> Result<Vec<CosetTable>, LowIndexError> {
    assert!(options.max_index >= 1, "max_index must be positive");
    let width = 2 * p.generator_count();
    let mut conjugates = vec![Vec::<Vec<usize>>::new(); width];
    for r in p.relators() {
        for word in [r.clone(), r.inverse()] {
            let cols: Vec<usize> = word.letters().iter().map(|&x| column(x)).collect();
            for k in 0..cols.len() {
                let rot: Vec<usize> = cols[k..].iter().chain(&cols[..k]).copied().collect();
                if !conjugates[rot[0]].contains(&rot) {
                    conjugates[rot[0]].push(rot);
                }
            }
        }
    }
    let mut search = LowIndex {
        width,
        generator_count: p.generator_count(),
        conjugates,
        options: *options,
        nodes: 0,
        found: Vec::new(),
    };
    let root = Partial {
        table: vec![UNDEF; width * options.max_index],
        cosets: 1,
    };
    if search.descend(root).is_err() {
        return Err(LowIndexError::BudgetExhausted {
            node_budget: options.node_budget,
            found: search.found,
        });
    }
    Ok(search.found)
}

const UNDEF: usize = usize::MAX;

#[derive(Clone)]
struct Partial {
    table: Vec<usize>,
    cosets: usize,
}

struct LowIndex {
    width: usize,
    generator_count: usize,
    conjugates: Vec<Vec<Vec<usize>>>,
    options: LowIndexOptions,
    nodes: usize,
    found: Vec<CosetTable>,
}

struct OutOfBudget;

impl LowIndex {
    fn descend(&mut self, state: Partial) -> Result<(), OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.options.node_budget {
            return Err(OutOfBudget);
        }
        let w = self.width;
        let Some(pos) = state.table[..state.cosets * w]
            .iter()
            .position(|&e| e == UNDEF)
        else {
            self.emit(&state);
            return Ok(());
        };
        let (c, x) = (pos / w, pos % w);
        let fresh = (state.cosets < self.options.max_index).then_some(state.cosets);
        for d in (0..state.cosets).chain(fresh) {
            if d < state.cosets && state.table[d * w + (x ^ 1)] != UNDEF {
                continue;
            }
            let mut child = state.clone();
            if d == state.cosets {
                child.cosets += 1;
            }
            if self.assign(&mut child, c, x, d)
                && (!self.options.conjugacy_classes || self.is_canonical(&child))
            {
                self.descend(child)?;
            }
        }
        Ok(())
    }

    fn emit(&mut self, state: &Partial) {
        let w = self.width;
        let rows = (0..state.cosets)
            .map(|c| {
                state.table[c * w..(c + 1) * w]
                    .iter()
                    .map(|&d| Some(d))
                    .collect()
            })
            .collect();
        self.found
            .push(CosetTable::from_rows(self.generator_count, rows));
    }

    /// Sets `(c, x) = d` and closes under relator scans; false on contradiction.
    fn assign(&self, s: &mut Partial, c: usize, x: usize, d: usize) -> bool {
        let w = self.width;
        s.table[c * w + x] = d;
        s.table[d * w + (x ^ 1)] = c;
        let mut queue = vec![(c, x)];
        while let Some((c, x)) = queue.pop() {
            for word in &self.conjugates[x] {
                if !scan(s, w, c, word, &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    /// False when renumbering from some coset gives a provably smaller table.
    fn is_canonical(&self, s: &Partial) -> bool {
        let w = self.width;
        let n = s.cosets;
        let mut label = vec![UNDEF; n];
        let mut order = Vec::with_capacity(n);
        'start: for start in 1..n {
            label.iter_mut().for_each(|l| *l = UNDEF);
            order.clear();
            label[start] = 0;
            order.push(start);
            for r in 0..n {
                if r >= order.len() {
                    continue 'start;
                }
                let old = order[r];
                for x in 0..w {
                    let e = s.table[r * w + x];
                    let f_old = s.table[old * w + x];
                    if e == UNDEF || f_old == UNDEF {
                        continue 'start;
                    }
                    if label[f_old] == UNDEF {
                        label[f_old] = order.len();
                        order.push(f_old);
                    }
                    let f = label[f_old];
                    if f < e {
                        return false;
                    }
                    if f > e {
                        continue 'start;
                    }
                }
            }
        }
        true
    }
}

fn scan(
    s: &mut Partial,
    w: usize,
    c: usize,
    word: &[usize],
    queue: &mut Vec<(usize, usize)>,
) -> bool {
    let n = word.len();
    let (mut f, mut i) = (c, 0);
    while i < n {
        let next = s.table[f * w + word[i]];
        if next == UNDEF {
            break;
        }
        f = next;
        i += 1;
    }
    if i == n {
        return f == c;
    }
    let (mut b, mut j) = (c, n);
    while j > i {
        let prev = s.table[b * w + (word[j - 1] ^ 1)];
        if prev == UNDEF {
            break;
        }
        b = prev;
        j -= 1;
    }
    if j == i {
        return f == b;
    }
    if j == i + 1 {
        let x = word[i];
        s.table[f * w + x] = b;
        s.table[b * w + (x ^ 1)] = f;
        queue.push((f, x));
    }
    true
}

/// Renumbers a complete table in first-seen order starting from coset `start`.
pub fn standardized_from(t: &CosetTable, start: usize) -> CosetTable {
    let n = t.index();
    let mut label = vec![UNDEF; n];
    let mut order = vec![start];
    label[start] = 0;
    let mut i = 0;
    while i < order.len() {
        for d in t.rows()[order[i]].iter().flatten() {
            if label[*d] == UNDEF {
                label[*d] = order.len();
                order.push(*d);
            }
        }
        i += 1;
    }
    let rows = order
        .iter()
        .map(|&c| t.rows()[c].iter().map(|e| e.map(|d| label[d])).collect())
        .collect();
    CosetTable::from_rows(t.generator_count(), rows)
}

/// Number of conjugates of the subgroup described by a standard table: the index
/// divided by the number of cosets whose stabiliser is the same subgroup.
pub fn conjugacy_class_size(t: &CosetTable) -> usize {
    let standard = t.standardized();
    let self_normalizing = (0..t.index())
        .filter(|&s| standardized_from(t, s) == standard)
        .count();
    t.index() / self_normalizing
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error(transparent)]
    Finite(#[from] FiniteGroupError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaloisOptions {
    pub explicit_cap: usize,
    pub letter_budget: usize,
    pub simplify_budget: usize,
}

impl Default for GaloisOptions {
    fn default() -> Self {
        GaloisOptions {
            explicit_cap: DEFAULT_EXPLICIT_CAP,
            letter_budget: DEFAULT_LETTER_BUDGET,
            simplify_budget: DEFAULT_SIMPLIFY_BUDGET,
        }
    }
}

/// A normal finite-index subgroup together with its deck group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisCoverDatum {
    pub base: Presentation,
    /// Index of the subgroup whose core this is.
    pub subgroup_index: usize,
    pub core_table: CosetTable,
    pub deck: FiniteGroupRep,
    /// Simplified presentation of the core.
    pub cover_presentation: Presentation,
    pub cover_invariants: AbelianInvariants,
}

/// Coset table of the kernel of `G -> deck`, with cosets the deck group elements.
pub fn regular_table(deck: &FiniteGroupRep) -> CosetTable {
    let elements = deck.elements.as_ref().expect("explicit elements");
    let ids: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let inverses: Vec<Permutation> = deck.generators.iter().map(Permutation::inverse).collect();
    let rows = elements
        .iter()
        .map(|e| {
            deck.generators
                .iter()
                .zip(&inverses)
                .flat_map(|(g, h)| [Some(ids[&e.then(g)]), Some(ids[&e.then(h)])])
                .collect()
        })
        .collect();
    CosetTable::from_rows(deck.generators.len(), rows).standardized()
}

/// The normal core of the subgroup described by `t`, presented as a Galois cover.
pub fn galois_closure(
    p: &Presentation,
    t: &CosetTable,
    options: &GaloisOptions,
) -> Result<GaloisCoverDatum, GaloisError> {
    let deck = permutation_image(t, options.explicit_cap)?;
    let core_table = regular_table(&deck);
    let data = schreier_transversal(&core_table);
    debug_assert!(is_normal(
        &core_table,
        &data.subgroup_generators(&core_table)
    ));
    let rewritten = rewrite_with(p, &core_table, &data, options.letter_budget)?;
    let cover_presentation =
        simplify_presentation(&rewritten, options.simplify_budget).presentation;
    let cover_invariants = abelian_invariants(&cover_presentation);
    Ok(GaloisCoverDatum {
        base: p.clone(),
        subgroup_index: t.index(),
        core_table,
        deck,
        cover_presentation,
        cover_invariants,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CorollaryVerdict {
    /// Deck group larger than 120 over a cover with trivial first homology.
    CorollaryViolation,
    /// Trivial cover homology with a trivial or binary icosahedral deck group.
    LemmaWindow,
    /// Trivial base and cover homology, but a deck group other than those allowed.
    LemmaAnomaly,
    NoClaim,
}

impl CorollaryVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            CorollaryVerdict::CorollaryViolation => "corollary-violation",
            CorollaryVerdict::LemmaWindow => "lemma-window",
            CorollaryVerdict::LemmaAnomaly => "lemma-anomaly",
            CorollaryVerdict::NoClaim => "no-claim",
        }
    }
}

impl fmt::Display for CorollaryVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Checks a Galois cover against the order-120 homology-sphere obstruction.
pub fn corollary_check(d: &GaloisCoverDatum) -> Result<CorollaryVerdict, FiniteGroupError> {
    if !d.cover_invariants.is_trivial() {
        return Ok(CorollaryVerdict::NoClaim);
    }
    if d.deck.order > BigInt::from(BINARY_ICOSAHEDRAL_ORDER) {
        return Ok(CorollaryVerdict::CorollaryViolation);
    }
    let cap = BINARY_ICOSAHEDRAL_ORDER;
    if d.deck.is_trivial() || is_binary_icosahedral(&d.deck, cap)? {
        return Ok(CorollaryVerdict::LemmaWindow);
    }
    if abelian_invariants(&d.base).is_trivial() {
        return Ok(CorollaryVerdict::LemmaAnomaly);
    }
    Ok(CorollaryVerdict::NoClaim)
}
