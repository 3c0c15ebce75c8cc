#![allow(dead_code)]

use std::path::PathBuf;

use dsp_core::{parse_presentation, Presentation};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "grp"))
        .collect();
    files.sort();
    files
}

pub fn corpus(name: &str) -> Presentation {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.grp"))).unwrap();
    parse_presentation(&text).unwrap().presentation
}

/// Permutations as image vectors, composed left to right.
pub type Perm = Vec<usize>;

pub fn compose(p: &Perm, q: &Perm) -> Perm {
    p.iter().map(|&i| q[i]).collect()
}

pub fn invert(p: &Perm) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// All products of the generators, by naive fixpoint iteration.
pub fn brute_closure(gens: &[Perm], degree: usize) -> Vec<Perm> {
    let mut elems: Vec<Perm> = vec![(0..degree).collect()];
    loop {
        let mut grew = false;
        for i in 0..elems.len() {
            for g in gens {
                let x = compose(&elems[i], g);
                if !elems.contains(&x) {
                    elems.push(x);
                    grew = true;
                }
            }
        }
        if !grew {
            return elems;
        }
    }
}

/// Subgroup generated by every commutator of every pair of elements.
pub fn brute_derived(elems: &[Perm], degree: usize) -> Vec<Perm> {
    let mut comms: Vec<Perm> = Vec::new();
    for x in elems {
        for y in elems {
            let c = compose(&compose(&invert(x), &invert(y)), &compose(x, y));
            if !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    brute_closure(&comms, degree)
}

/// Evaluates a word on permutation images of the generators.
pub fn eval_word(word: &[i32], gens: &[Perm], degree: usize) -> Perm {
    let mut acc: Perm = (0..degree).collect();
    for &x in word {
        let g = &gens[x.unsigned_abs() as usize - 1];
        acc = if x > 0 {
            compose(&acc, g)
        } else {
            compose(&acc, &invert(g))
        };
    }
    acc
}

pub fn cycles(n: usize, cs: &[&[usize]]) -> Perm {
    let mut p: Perm = (0..n).collect();
    for c in cs {
        for (k, &i) in c.iter().enumerate() {
            p[i] = c[(k + 1) % c.len()];
        }
    }
    p
}

/// Quaternion group: i and j acting on the 8 units by right multiplication.
/// Units are indexed 0..8 as 1, i, j, k, -1, -i, -j, -k.
pub fn quaternion_generators() -> (Perm, Perm) {
    // unit multiplication table: (a, b) -> a*b using sign/basis encoding
    fn mul(a: usize, b: usize) -> usize {
        let (sa, ba) = (a / 4, a % 4);
        let (sb, bb) = (b / 4, b % 4);
        // basis products: table[ba][bb] = (sign, basis)
        let table = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let (s, basis) = table[ba][bb];
        ((sa + sb + s) % 2) * 4 + basis
    }
    let i: Perm = (0..8).map(|x| mul(x, 1)).collect();
    let j: Perm = (0..8).map(|x| mul(x, 2)).collect();
    (i, j)
}
