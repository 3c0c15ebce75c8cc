//! Walks the derived series `G = G^0 >= G^1 >= ...` of a presented group.
//!
//! Each quotient `G^i / G^{i+1}` is the abelianization of `G^i`. When it is finite and
//! nontrivial, `G^{i+1}` is presented by building the coset table of the kernel of
//! the abelianization map directly (cosets are the elements of the finite abelian
//! quotient), rewriting, and simplifying. The walk ends at the first level with
//! infinite abelianization, at the first perfect level, or when a budget trips.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::abelianization::{abelian_invariants, abelian_quotient_map, AbelianInvariants};
use crate::coset_enum::CosetTable;
use crate::presentation::{Presentation, DEFAULT_LETTER_BUDGET};
use crate::subgroup_rewriting::{
    rewrite_subgroup_presentation, simplify_presentation, RewriteError, DEFAULT_SIMPLIFY_BUDGET,
};

/// Resource limits for one exploration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of descents below the input group.
    pub max_depth: usize,
    /// Largest coset table built for a derived subgroup.
    pub max_cosets: usize,
    /// Total letters allowed in one rewritten presentation.
    pub letter_budget: usize,
    /// Largest abelian quotient order the walk will descend through.
    pub torsion_cap: usize,
    pub simplify_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_depth: 8,
            max_cosets: 100_000,
            letter_budget: DEFAULT_LETTER_BUDGET,
            torsion_cap: 10_000,
            simplify_budget: DEFAULT_SIMPLIFY_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedStep {
    pub level: usize,
    /// Presentation of `G^level`.
    pub presentation: Presentation,
    /// Invariants of `G^level / G^{level+1}`.
    pub invariants: AbelianInvariants,
    /// `[G : G^level]`.
    pub index_in_root: BigInt,
}

/// The resource that stopped a walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Resource {
    MaxDepth,
    TorsionCap,
    MaxCosets,
    LetterBudget,
}

impl Resource {
    pub fn as_str(self) -> &'static str {
        match self {
            Resource::MaxDepth => "max_depth",
            Resource::TorsionCap => "torsion_cap",
            Resource::MaxCosets => "max_cosets",
            Resource::LetterBudget => "letter_budget",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Resource::MaxDepth,
            Resource::TorsionCap,
            Resource::MaxCosets,
            Resource::LetterBudget,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// `G^level` has infinite abelianization; `level` is the smallest such.
    PositiveBetti { level: usize },
    /// `G^level` is perfect, so the series is constant from here on.
    Stabilized { level: usize },
    /// Every recorded quotient was finite and nontrivial; the walk was cut off.
    BudgetExhausted { level: usize, resource: Resource },
}

impl Outcome {
    pub fn kind(&self) -> &'static str {
        match self {
            Outcome::PositiveBetti { .. } => "PositiveBetti",
            Outcome::Stabilized { .. } => "Stabilized",
            Outcome::BudgetExhausted { .. } => "BudgetExhausted",
        }
    }

    pub fn level(&self) -> usize {
        match *self {
            Outcome::PositiveBetti { level }
            | Outcome::Stabilized { level }
            | Outcome::BudgetExhausted { level, .. } => level,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSeriesReport {
    pub steps: Vec<DerivedStep>,
    pub outcome: Outcome,
}

/// Stability verdict for a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityVerdict {
    VirtualBettiWitness,
    Stabilized,
    Undetermined,
}

impl StabilityVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            StabilityVerdict::VirtualBettiWitness => "virtual-betti-witness",
            StabilityVerdict::Stabilized => "stabilized",
            StabilityVerdict::Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite computation can never certify finite quotients without stabilization,
/// so a cut-off walk is always undetermined.
pub fn classify_outcome(report: &DerivedSeriesReport) -> StabilityVerdict {
    match report.outcome {
        Outcome::PositiveBetti { .. } => StabilityVerdict::VirtualBettiWitness,
        Outcome::Stabilized { .. } => StabilityVerdict::Stabilized,
        Outcome::BudgetExhausted { .. } => StabilityVerdict::Undetermined,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivedError {
    #[error("abelianization must be finite and nontrivial (found {0})")]
    PreconditionViolated(AbelianInvariants),
    #[error("abelianization of order {order} exceeds the cap of {cap}")]
    QuotientTooLarge { order: BigInt, cap: usize },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// Coset table of the kernel of the abelianization map, assuming the abelianization
/// is finite. Cosets are the elements of the quotient, numbered in first-seen order.
pub fn abelianization_kernel_table(
    p: &Presentation,
    max_cosets: usize,
) -> Result<CosetTable, DerivedError> {
    let q = abelian_quotient_map(p);
    let inv = &q.invariants;
    let order = match inv.order() {
        Some(order) if !inv.is_trivial() => order,
        _ => return Err(DerivedError::PreconditionViolated(inv.clone())),
    };
    if order > BigInt::from(max_cosets) {
        return Err(DerivedError::QuotientTooLarge {
            order,
            cap: max_cosets,
        });
    }
    let moduli: Vec<u64> = q.torsion_moduli().map(|d| d.to_u64().unwrap()).collect();
    let gens = p.generator_count();
    let images: Vec<Vec<u64>> = (1..=gens)
        .map(|g| {
            q.generator_image(g)
                .iter()
                .map(|x| x.to_u64().unwrap())
                .collect()
        })
        .collect();
    let shift = |e: &[u64], g: usize, sign: bool| -> Vec<u64> {
        e.iter()
            .zip(&images[g])
            .zip(&moduli)
            .map(|((a, b), d)| if sign { (a + b) % d } else { (a + d - b) % d })
            .collect()
    };

    let mut ids: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut elements = vec![vec![0u64; moduli.len()]];
    ids.insert(elements[0].clone(), 0);
    let mut rows: Vec<Vec<Option<usize>>> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        let mut row = Vec::with_capacity(2 * gens);
        for g in 0..gens {
            for sign in [true, false] {
                let next = shift(&elements[i], g, sign);
                let id = *ids.entry(next.clone()).or_insert_with(|| {
                    elements.push(next);
                    elements.len() - 1
                });
                row.push(Some(id));
            }
        }
        rows.push(row);
        i += 1;
    }
    debug_assert_eq!(BigInt::from(elements.len()), order);
    Ok(CosetTable::from_rows(gens, rows))
}

/// A presentation of `[G, G]`, simplified.
pub fn derived_subgroup_presentation(
    p: &Presentation,
    limits: &Limits,
) -> Result<Presentation, DerivedError> {
    let cap = limits.max_cosets.min(limits.torsion_cap);
    let t = abelianization_kernel_table(p, cap)?;
    let rewritten = rewrite_subgroup_presentation(p, &t, limits.letter_budget)?;
    Ok(simplify_presentation(&rewritten, limits.simplify_budget).presentation)
}

pub fn explore_derived_series(p: &Presentation, limits: &Limits) -> DerivedSeriesReport {
    let mut steps = Vec::new();
    let mut current = p.clone();
    let mut index = BigInt::one();
    let mut level = 0;
    let outcome = loop {
        let invariants = abelian_invariants(&current);
        steps.push(DerivedStep {
            level,
            presentation: current.clone(),
            invariants: invariants.clone(),
            index_in_root: index.clone(),
        });
        if invariants.betti > 0 {
            break Outcome::PositiveBetti { level };
        }
        if invariants.is_trivial() {
            break Outcome::Stabilized { level };
        }
        let exhausted = |resource| Outcome::BudgetExhausted { level, resource };
        if level >= limits.max_depth {
            break exhausted(Resource::MaxDepth);
        }
        let order = invariants.order().expect("finite quotient");
        if order > BigInt::from(limits.torsion_cap) {
            break exhausted(Resource::TorsionCap);
        }
        if order > BigInt::from(limits.max_cosets) {
            break exhausted(Resource::MaxCosets);
        }
        match derived_subgroup_presentation(&current, limits) {
            Ok(next) => {
                current = next;
                index *= order;
                level += 1;
            }
            Err(DerivedError::Rewrite(RewriteError::LetterBudgetExceeded { .. })) => {
                break exhausted(Resource::LetterBudget);
            }
            Err(e) => unreachable!("preconditions checked above: {e}"),
        }
    };
    DerivedSeriesReport { steps, outcome }
}
