//! Reidemeister–Schreier presentations of finite-index subgroups, and a small,
//! terminating set of Tietze moves to keep them tractable.

use thiserror::Error;

use crate::coset_enum::{column, letter_of_column, CosetTable};
use crate::presentation::{cyclically_reduce, Presentation, Word};

/// Default move budget for [`simplify_presentation`].
pub const DEFAULT_SIMPLIFY_BUDGET: usize = 100_000;

/// A Schreier transversal plus the numbering of nontrivial Schreier generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierData {
    /// Coset representatives indexed by coset id; prefix-closed, `transversal[0]` empty.
    pub transversal: Vec<Word>,
    /// `generator_map[c][g-1]` is the Schreier generator for coset `c` and positive
    /// generator `g`, or `None` when `t_c g t_{cg}^-1` is freely trivial (a tree edge).
    pub generator_map: Vec<Vec<Option<usize>>>,
    /// Number of nontrivial Schreier generators.
    pub generator_count: usize,
}

impl SchreierData {
    /// The Schreier generator for `(coset, g)` as a word in the parent group.
    pub fn schreier_word(&self, t: &CosetTable, coset: usize, g: usize) -> Word {
        let target = t.image(coset, g as i32);
        let letters = self.transversal[coset]
            .letters()
            .iter()
            .copied()
            .chain(std::iter::once(g as i32))
            .chain(self.transversal[target].inverse().into_letters());
        Word::reduced(letters)
    }

    /// Nontrivial Schreier generators, in numbering order, as words in the parent group.
    pub fn subgroup_generators(&self, t: &CosetTable) -> Vec<Word> {
        let mut out = vec![Word::identity(); self.generator_count];
        for (c, row) in self.generator_map.iter().enumerate() {
            for (g, s) in row.iter().enumerate() {
                if let Some(s) = s {
                    out[*s] = self.schreier_word(t, c, g + 1);
                }
            }
        }
        out
    }
}

/// Breadth-first Schreier transversal from coset 0, visiting columns in order
/// (`x1, x1^-1, x2, x2^-1, ...`).
pub fn schreier_transversal(t: &CosetTable) -> SchreierData {
    let n = t.index();
    let gens = t.generator_count();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut transversal = vec![Word::identity(); n];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(c) = queue.pop_front() {
        for col in 0..2 * gens {
            let d = t.rows()[c][col].expect("complete table");
            if !seen[d] {
                seen[d] = true;
                parent[d] = Some((c, col));
                let mut rep = transversal[c].clone().into_letters();
                rep.push(letter_of_column(col));
                transversal[d] = Word::reduced(rep);
                queue.push_back(d);
            }
        }
    }
    let mut generator_map = vec![vec![None; gens]; n];
    let mut count = 0;
    for (c, row) in generator_map.iter_mut().enumerate() {
        for (g, slot) in row.iter_mut().enumerate() {
            let col = column(g as i32 + 1);
            let d = t.rows()[c][col].expect("complete table");
            let tree = parent[d] == Some((c, col)) || parent[c] == Some((d, col ^ 1));
            if !tree {
                *slot = Some(count);
                count += 1;
            }
        }
    }
    SchreierData {
        transversal,
        generator_map,
        generator_count: count,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rewritten relators exceed the letter budget of {budget}")]
    LetterBudgetExceeded { budget: usize },
}

/// Rewrites `w`, read from coset `c`, as a word in the Schreier generators.
pub fn rewrite_word(t: &CosetTable, data: &SchreierData, w: &Word, start: usize) -> Word {
    let mut out = Vec::with_capacity(w.len());
    let mut c = start;
    for &x in w.letters() {
        let g = x.unsigned_abs() as usize;
        if x > 0 {
            if let Some(s) = data.generator_map[c][g - 1] {
                out.push(s as i32 + 1);
            }
            c = t.image(c, x);
        } else {
            let d = t.image(c, x);
            if let Some(s) = data.generator_map[d][g - 1] {
                out.push(-(s as i32 + 1));
            }
            c = d;
        }
    }
    Word::reduced(out)
}

/// Reidemeister–Schreier presentation of the subgroup described by `t`.
///
/// Generators are the nontrivial Schreier generators `x1, x2, ...`; relators are
/// the rewrites of every relator of `p` read from every coset, in coset order then
/// relator order.
pub fn rewrite_subgroup_presentation(
    p: &Presentation,
    t: &CosetTable,
    letter_budget: usize,
) -> Result<Presentation, RewriteError> {
    let data = schreier_transversal(t);
    rewrite_with(p, t, &data, letter_budget)
}

pub(crate) fn rewrite_with(
    p: &Presentation,
    t: &CosetTable,
    data: &SchreierData,
    letter_budget: usize,
) -> Result<Presentation, RewriteError> {
    let mut relators = Vec::with_capacity(t.index() * p.relators().len());
    let mut total = 0usize;
    for c in 0..t.index() {
        for r in p.relators() {
            let w = cyclically_reduce(&rewrite_word(t, data, r, c));
            total += w.len();
            if total > letter_budget {
                return Err(RewriteError::LetterBudgetExceeded {
                    budget: letter_budget,
                });
            }
            relators.push(w);
        }
    }
    Ok(Presentation::with_numbered_generators(
        data.generator_count,
        relators,
    ))
}

/// Result of [`simplify_presentation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    pub presentation: Presentation,
    pub moves: usize,
    pub budget_exhausted: bool,
}

/// `r` with every `g^±1` replaced by `image^±1`, cyclically reduced.
fn substituted(r: &[i32], g: i32, image: &[i32]) -> Vec<i32> {
    let expanded = r.iter().flat_map(|&x| match x {
        x if x == g => image.to_vec(),
        x if x == -g => image.iter().rev().map(|y| -y).collect(),
        x => vec![x],
    });
    cyclically_reduce(&Word::reduced(expanded)).into_letters()
}

/// Applies a restricted set of Tietze moves until none applies or `budget` moves
/// have been made:
///
/// * drop relators that reduce to the identity;
/// * a relator `x^±1` kills `x`;
/// * a relator `x^a y^b` with `x != y` eliminates the later of the two generators;
/// * a generator occurring exactly once in some relator is solved for and substituted
///   into the others, provided the total relator length does not grow.
///
/// Eliminations run in passes over the relators, taking the cheapest candidate in
/// each relator. No move increases total length.
pub fn simplify_presentation(p: &Presentation, budget: usize) -> Simplified {
    let mut gens: Vec<Option<String>> = p.generator_names().iter().cloned().map(Some).collect();
    let mut rels: Vec<Vec<i32>> = p.relators().iter().map(|r| r.letters().to_vec()).collect();
    let mut moves = 0;
    let mut scratch = vec![0usize; gens.len()];
    let substitute = |rels: &mut Vec<Vec<i32>>, g: i32, image: &[i32]| {
        for r in rels.iter_mut() {
            if r.iter().any(|x| x.abs() == g) {
                *r = substituted(r, g, image);
            }
        }
    };

    let budget_exhausted = loop {
        if moves >= budget {
            break true;
        }
        if let Some(i) = rels.iter().position(Vec::is_empty) {
            rels.remove(i);
            moves += 1;
            continue;
        }
        if let Some(i) = rels.iter().position(|r| r.len() == 1) {
            let g = rels.remove(i)[0].abs();
            substitute(&mut rels, g, &[]);
            gens[g as usize - 1] = None;
            moves += 1;
            continue;
        }
        if let Some(i) = rels
            .iter()
            .position(|r| r.len() == 2 && r[0].abs() != r[1].abs())
        {
            let r = rels.remove(i);
            // eliminate the later generator: keep^a · drop^b = 1, or the reverse
            let (keep, drop) = if r[0].abs() < r[1].abs() {
                (r[0], r[1])
            } else {
                (r[1], r[0])
            };
            // drop = keep^-1 up to orientation
            let g = drop.abs();
            let image = if drop > 0 { vec![-keep] } else { vec![keep] };
            substitute(&mut rels, g, &image);
            gens[g as usize - 1] = None;
            moves += 1;
            continue;
        }
        // One pass of eliminations. A generator occurring once in a relator is solved
        // for when that does not grow the total length; relators and generators touched
        // by a move sit out the rest of the pass.
        let mut total = vec![0usize; gens.len()];
        let mut containing: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
        for (i, r) in rels.iter().enumerate() {
            for x in r {
                let g = x.unsigned_abs() as usize - 1;
                total[g] += 1;
                if containing[g].last() != Some(&i) {
                    containing[g].push(i);
                }
            }
        }
        let mut frozen_rel = vec![false; rels.len()];
        let mut frozen_gen = vec![false; gens.len()];
        let mut dead = vec![false; rels.len()];
        let mut progressed = false;
        for i in 0..rels.len() {
            if moves >= budget {
                break;
            }
            if frozen_rel[i] {
                continue;
            }
            let r = &rels[i];
            for x in r {
                scratch[x.unsigned_abs() as usize - 1] += 1;
            }
            let len = r.len() as i64;
            let mut best: Option<(i64, usize)> = None;
            for x in r {
                let g = x.unsigned_abs() as usize - 1;
                if scratch[g] != 1
                    || frozen_gen[g]
                    || containing[g].iter().any(|&j| j != i && frozen_rel[j])
                {
                    continue;
                }
                let growth = (total[g] as i64 - 1) * (len - 2) - len;
                if growth <= 0 && best.is_none_or(|b| (growth, g) < b) {
                    best = Some((growth, g));
                }
            }
            for x in r {
                scratch[x.unsigned_abs() as usize - 1] = 0;
            }
            let Some((_, g)) = best else { continue };
            let r = std::mem::take(&mut rels[i]);
            dead[i] = true;
            frozen_rel[i] = true;
            for x in &r {
                frozen_gen[x.unsigned_abs() as usize - 1] = true;
            }
            let k = r
                .iter()
                .position(|x| x.unsigned_abs() as usize == g + 1)
                .unwrap();
            // r rotated to x·w = 1 gives x = w^-1
            let w: Vec<i32> = r[k + 1..].iter().chain(&r[..k]).copied().collect();
            let image: Vec<i32> = if r[k] > 0 {
                w.iter().rev().map(|y| -y).collect()
            } else {
                w
            };
            for &j in containing[g].iter().filter(|&&j| j != i) {
                rels[j] = substituted(&rels[j], g as i32 + 1, &image);
                frozen_rel[j] = true;
            }
            gens[g] = None;
            moves += 1;
            progressed = true;
        }
        if progressed {
            rels = rels
                .into_iter()
                .zip(dead)
                .filter_map(|(r, d)| (!d).then_some(r))
                .collect();
            continue;
        }
        break false;
    };

    let mut renumber = vec![0i32; gens.len()];
    let mut names = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if let Some(name) = g {
            names.push(name.clone());
            renumber[i] = names.len() as i32;
        }
    }
    let relators = rels.into_iter().map(|r| {
        Word::reduced(
            r.into_iter()
                .map(|x| renumber[x.unsigned_abs() as usize - 1] * x.signum()),
        )
    });
    let presentation =
        Presentation::new(names, relators).expect("names inherited from a valid presentation");
    Simplified {
        presentation,
        moves,
        budget_exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset_enum::enumerate_cosets;
    use crate::presentation::{free_reduce, parse_presentation};

    fn parse(text: &str) -> Presentation {
        parse_presentation(text).unwrap().presentation
    }

    #[test]
    fn index_one_transversal() {
        let data = schreier_transversal(&CosetTable::trivial(2));
        assert_eq!(data.transversal, vec![Word::identity()]);
        assert_eq!(data.generator_count, 2);
    }

    #[test]
    fn order_two_transversal() {
        let t = CosetTable::from_generator_images(&[vec![1, 0]]);
        let data = schreier_transversal(&t);
        assert_eq!(data.transversal, vec![Word::identity(), Word::letter(1)]);
    }

    #[test]
    fn symmetric_group_transversal() {
        let p = parse("gens: a b\nrel: a^2\nrel: b^3\nrel: a b a b");
        let t = enumerate_cosets(&p, &[Word::letter(1)], 100).unwrap();
        let data = schreier_transversal(&t);
        // cosets are H, Hb, Hb^-1 = Hb^2
        assert_eq!(
            data.transversal,
            vec![Word::identity(), Word::letter(2), Word::letter(-2)]
        );
        let b2 = free_reduce(&[2, 2]);
        assert_eq!(crate::coset_enum::coset_action(&t, &b2, 0), 2);
    }

    #[test]
    fn transversal_is_prefix_closed() {
        let p = parse("gens: a b\nrel: a^2\nrel: b^3\nrel: a b a b");
        let t = enumerate_cosets(&p, &[], 100).unwrap();
        let data = schreier_transversal(&t);
        for rep in &data.transversal {
            for k in 0..rep.len() {
                let prefix = Word::reduced(rep.letters()[..k].iter().copied());
                assert!(data.transversal.contains(&prefix));
            }
        }
    }

    #[test]
    fn index_one_rewrite_matches_input() {
        let p = parse("gens: a b\nrel: a^2 b^-3\nrel: a b a^-1 b^-1");
        let q = rewrite_subgroup_presentation(&p, &CosetTable::trivial(2), 1000).unwrap();
        assert_eq!(q.relators(), p.relators());
        assert_eq!(q.generator_count(), 2);
    }

    #[test]
    fn cyclic_four_index_two() {
        let p = parse("gens: a\nrel: a^4");
        let t = CosetTable::from_generator_images(&[vec![1, 0]]);
        let q = rewrite_subgroup_presentation(&p, &t, 1000).unwrap();
        assert_eq!(q.generator_count(), 1);
        assert_eq!(q.relators(), [free_reduce(&[1, 1]), free_reduce(&[1, 1])]);
    }

    #[test]
    fn rewrite_budget() {
        let p = parse("gens: a\nrel: a^4");
        let t = CosetTable::from_generator_images(&[vec![1, 0]]);
        assert_eq!(
            rewrite_subgroup_presentation(&p, &t, 3),
            Err(RewriteError::LetterBudgetExceeded { budget: 3 })
        );
    }

    #[test]
    fn schreier_words_lie_in_subgroup() {
        let p = parse("gens: a b\nrel: a^2\nrel: b^3\nrel: a b a b");
        let t = enumerate_cosets(&p, &[Word::letter(1)], 100).unwrap();
        let data = schreier_transversal(&t);
        for w in data.subgroup_generators(&t) {
            assert!(!w.is_empty());
            assert_eq!(crate::coset_enum::coset_action(&t, &w, 0), 0);
        }
    }

    #[test]
    fn simplify_dead_generator() {
        let s = simplify_presentation(&parse("gens: a b\nrel: b"), 100);
        assert_eq!(s.presentation, parse("gens: a"));
        assert!(!s.budget_exhausted);
    }

    #[test]
    fn simplify_substitution() {
        let s = simplify_presentation(&parse("gens: a b\nrel: a b^-1"), 100);
        assert_eq!(s.presentation, parse("gens: a"));
        let s = simplify_presentation(&parse("gens: a b c\nrel: b c\nrel: c^3 a"), 100);
        // c = b^-1, then b^-3 a kills a (single occurrence)
        assert_eq!(s.presentation, parse("gens: b"));
    }

    #[test]
    fn simplify_keeps_torsion() {
        let s = simplify_presentation(&parse("gens: a b\nrel: a^2\nrel: a b^-1"), 100);
        assert_eq!(s.presentation, parse("gens: a\nrel: a^2"));
    }

    #[test]
    fn simplify_budget_flag() {
        let s = simplify_presentation(&parse("gens: a b c\nrel: a\nrel: b\nrel: c"), 2);
        assert!(s.budget_exhausted);
        assert_eq!(s.moves, 2);
        assert_eq!(s.presentation.generator_count(), 1);
    }
}
