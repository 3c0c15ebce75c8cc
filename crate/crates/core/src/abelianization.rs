//! Abelianization of presented groups via the integer Smith normal form of the
//! relator exponent-sum matrix.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::presentation::{Presentation, Word};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// # Panics
    ///
    /// If the rows have different lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            entries.extend(r.iter().cloned().map(Into::into));
        }
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] -= q * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j];
            if !s.is_zero() {
                let delta = s * q;
                self.entries[target * self.cols + j] -= delta;
            }
        }
    }

    /// col[target] -= q * col[source]
    fn sub_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + source];
            if !s.is_zero() {
                let delta = s * q;
                self.entries[i * self.cols + target] -= delta;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[i * self.cols + j];
            *e = -std::mem::take(e);
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rows are relators, columns generators; entry `(i, j)` is the exponent sum of
/// generator `j` in relator `i`.
pub fn abelianized_relation_matrix(p: &Presentation) -> IntegerMatrix {
    let cols = p.generator_count();
    let mut m = IntegerMatrix::zeros(p.relators().len(), cols);
    for (i, r) in p.relators().iter().enumerate() {
        let mut sums = vec![0i64; cols];
        for &x in r.letters() {
            sums[x.unsigned_abs() as usize - 1] += x.signum() as i64;
        }
        for (j, s) in sums.into_iter().enumerate() {
            if s != 0 {
                m.set(i, j, BigInt::from(s));
            }
        }
    }
    m
}

/// Invariant factors `d_1 | d_2 | ... | d_rank` of an integer matrix, and optionally
/// unimodular `U`, `V` with `U * M * V` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    pub left_transform: Option<IntegerMatrix>,
    pub right_transform: Option<IntegerMatrix>,
}

impl SmithForm {
    /// The `rows x cols` diagonal matrix with the invariant factors on the diagonal.
    pub fn diagonal(&self, rows: usize, cols: usize) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(rows, cols);
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }
}

/// Smith normal form by repeated elimination around a pivot of least absolute value
/// (ties broken by lowest row, then lowest column).
pub fn smith_normal_form(m: &IntegerMatrix, want_transforms: bool) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = want_transforms.then(|| IntegerMatrix::identity(rows));
    let mut v = want_transforms.then(|| IntegerMatrix::identity(cols));
    let mut factors = Vec::new();

    for k in 0..rows.min(cols) {
        let Some((pi, pj)) = least_pivot(&a, k) else {
            break;
        };
        a.swap_rows(k, pi);
        a.swap_cols(k, pj);
        if let Some(u) = u.as_mut() {
            u.swap_rows(k, pi);
        }
        if let Some(v) = v.as_mut() {
            v.swap_cols(k, pj);
        }
        loop {
            let pivot = a.get(k, k).clone();
            let mut dirty = false;
            for i in k + 1..rows {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let q = a.get(i, k).div_floor(&pivot);
                if !q.is_zero() {
                    a.sub_row_multiple(i, k, &q);
                    if let Some(u) = u.as_mut() {
                        u.sub_row_multiple(i, k, &q);
                    }
                }
                dirty |= !a.get(i, k).is_zero();
            }
            for j in k + 1..cols {
                if a.get(k, j).is_zero() {
                    continue;
                }
                let q = a.get(k, j).div_floor(&pivot);
                if !q.is_zero() {
                    a.sub_col_multiple(j, k, &q);
                    if let Some(v) = v.as_mut() {
                        v.sub_col_multiple(j, k, &q);
                    }
                }
                dirty |= !a.get(k, j).is_zero();
            }
            if !dirty {
                // the pivot must divide the rest of the submatrix
                let unit = pivot.magnitude().is_one();
                let offender = (!unit)
                    .then(|| {
                        (k + 1..rows)
                            .find(|&i| (k + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)))
                    })
                    .flatten();
                match offender {
                    None => break,
                    Some(i) => {
                        let one = BigInt::from(-1);
                        a.sub_row_multiple(k, i, &one);
                        if let Some(u) = u.as_mut() {
                            u.sub_row_multiple(k, i, &one);
                        }
                    }
                }
            }
            // a smaller remainder now sits in row or column k
            let (pi, pj) = least_pivot_in_cross(&a, k);
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            if let Some(u) = u.as_mut() {
                u.swap_rows(k, pi);
            }
            if let Some(v) = v.as_mut() {
                v.swap_cols(k, pj);
            }
        }
        if a.get(k, k).is_negative() {
            a.negate_row(k);
            if let Some(u) = u.as_mut() {
                u.negate_row(k);
            }
        }
        factors.push(a.get(k, k).clone());
    }

    SmithForm {
        rank: factors.len(),
        invariant_factors: factors,
        left_transform: u,
        right_transform: v,
    }
}

fn least_pivot(a: &IntegerMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..a.rows {
        for j in k..a.cols {
            let e = a.get(i, j).magnitude();
            if e.is_zero() {
                continue;
            }
            if e.is_one() {
                return Some((i, j));
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).magnitude() <= e => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Least nonzero entry in row `k` or column `k` from position `k` on, which always
/// includes `(k, k)`.
fn least_pivot_in_cross(a: &IntegerMatrix, k: usize) -> (usize, usize) {
    let mut best = (k, k);
    let candidates = (k + 1..a.rows)
        .map(|i| (i, k))
        .chain((k + 1..a.cols).map(|j| (k, j)));
    for (i, j) in candidates {
        let e = a.get(i, j).magnitude();
        let b = a.get(best.0, best.1).magnitude();
        if !e.is_zero() && (b.is_zero() || e < b) {
            best = (i, j);
        }
    }
    best
}

/// Invariant factors computed in machine integers, or `None` if an entry or an
/// intermediate value leaves the `i64` range.
fn small_invariant_factors(m: &IntegerMatrix) -> Option<Vec<i64>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<i64> = m
        .entries
        .iter()
        .map(|e| e.to_i64())
        .collect::<Option<_>>()?;
    let at = |i: usize, j: usize| i * cols + j;
    let mut factors = Vec::new();
    for k in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        'scan: for i in k..rows {
            for j in k..cols {
                let e = a[at(i, j)].unsigned_abs();
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    best = Some((i, j));
                    break 'scan;
                }
                match best {
                    Some((bi, bj)) if a[at(bi, bj)].unsigned_abs() <= e => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_small(&mut a, rows, cols, k, pi, pj);
        loop {
            let pivot = a[at(k, k)];
            let mut dirty = false;
            for i in k + 1..rows {
                let e = a[at(i, k)];
                if e == 0 {
                    continue;
                }
                let q = e.checked_div_euclid(pivot)?;
                if q != 0 {
                    for j in k..cols {
                        let s = a[at(k, j)];
                        if s != 0 {
                            a[at(i, j)] = a[at(i, j)].checked_sub(s.checked_mul(q)?)?;
                        }
                    }
                }
                dirty |= a[at(i, k)] != 0;
            }
            for j in k + 1..cols {
                let e = a[at(k, j)];
                if e == 0 {
                    continue;
                }
                let q = e.checked_div_euclid(pivot)?;
                if q != 0 {
                    for i in k..rows {
                        let s = a[at(i, k)];
                        if s != 0 {
                            a[at(i, j)] = a[at(i, j)].checked_sub(s.checked_mul(q)?)?;
                        }
                    }
                }
                dirty |= a[at(k, j)] != 0;
            }
            if !dirty {
                let offender = (pivot.unsigned_abs() != 1)
                    .then(|| {
                        (k + 1..rows).find(|&i| (k + 1..cols).any(|j| a[at(i, j)] % pivot != 0))
                    })
                    .flatten();
                match offender {
                    None => break,
                    Some(i) => {
                        for j in k..cols {
                            a[at(k, j)] = a[at(k, j)].checked_add(a[at(i, j)])?;
                        }
                    }
                }
            }
            let mut best = (k, k);
            let candidates = (k + 1..rows)
                .map(|i| (i, k))
                .chain((k + 1..cols).map(|j| (k, j)));
            for (i, j) in candidates {
                let e = a[at(i, j)].unsigned_abs();
                let b = a[at(best.0, best.1)].unsigned_abs();
                if e != 0 && (b == 0 || e < b) {
                    best = (i, j);
                }
            }
            swap_small(&mut a, rows, cols, k, best.0, best.1);
        }
        factors.push(a[at(k, k)].checked_abs()?);
    }
    Some(factors)
}

fn swap_small(a: &mut [i64], rows: usize, cols: usize, k: usize, pi: usize, pj: usize) {
    if pi != k {
        for j in 0..cols {
            a.swap(k * cols + j, pi * cols + j);
        }
    }
    if pj != k {
        for i in 0..rows {
            a.swap(i * cols + k, i * cols + pj);
        }
    }
}

/// Free rank and torsion coefficients of an abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    /// First Betti number.
    pub betti: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants {
            betti: 0,
            torsion: Vec::new(),
        }
    }

    /// True iff the group is trivial, i.e. the presented group is perfect.
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.betti == 0
    }

    /// Order of the group, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().product::<BigInt>())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.betti > 0 {
            parts.push(if self.betti == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.betti)
            });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn invariants_from(generators: usize, snf: &SmithForm) -> AbelianInvariants {
    AbelianInvariants {
        betti: generators - snf.rank,
        torsion: snf
            .invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect(),
    }
}

pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let m = abelianized_relation_matrix(p);
    let snf = match small_invariant_factors(&m) {
        Some(f) => SmithForm {
            rank: f.len(),
            invariant_factors: f.into_iter().map(BigInt::from).collect(),
            left_transform: None,
            right_transform: None,
        },
        None => smith_normal_form(&m, false),
    };
    invariants_from(p.generator_count(), &snf)
}

/// The abelianization map `G -> Z^betti + Z/d_1 + ... + Z/d_k`.
///
/// Coordinates are listed free part first, then torsion part with each coordinate
/// reduced into `0..d_i`.
#[derive(Clone, Debug)]
pub struct AbelianQuotient {
    pub invariants: AbelianInvariants,
    /// Columns of the right transform that survive in the quotient, in output order.
    coordinates: Vec<Coordinate>,
}

#[derive(Clone, Debug)]
struct Coordinate {
    /// Row `g` gives the coefficient of generator `g + 1`.
    weights: Vec<BigInt>,
    modulus: Option<BigInt>,
}

impl AbelianQuotient {
    /// Image of a word in the quotient.
    pub fn evaluate(&self, w: &Word) -> Vec<BigInt> {
        let n = self.coordinates.first().map_or(0, |c| c.weights.len());
        let mut sums = vec![0i64; n];
        for &x in w.letters() {
            sums[x.unsigned_abs() as usize - 1] += x.signum() as i64;
        }
        self.evaluate_exponents(&sums)
    }

    /// Image of the element with the given generator exponent sums.
    pub fn evaluate_exponents(&self, exponents: &[i64]) -> Vec<BigInt> {
        self.coordinates
            .iter()
            .map(|c| {
                let value: BigInt = c
                    .weights
                    .iter()
                    .zip(exponents)
                    .filter(|(_, &e)| e != 0)
                    .map(|(wt, &e)| wt * e)
                    .sum();
                match &c.modulus {
                    Some(d) => value.mod_floor(d),
                    None => value,
                }
            })
            .collect()
    }

    /// Image of generator `g` (1-based).
    pub fn generator_image(&self, g: usize) -> Vec<BigInt> {
        let mut e = vec![0i64; self.generator_count()];
        e[g - 1] = 1;
        self.evaluate_exponents(&e)
    }

    pub fn generator_count(&self) -> usize {
        self.coordinates.first().map_or(0, |c| c.weights.len())
    }

    /// Componentwise sum, reduced modulo the torsion coefficients.
    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.coordinates
            .iter()
            .zip(x.iter().zip(y))
            .map(|(c, (a, b))| match &c.modulus {
                Some(d) => (a + b).mod_floor(d),
                None => a + b,
            })
            .collect()
    }

    /// Moduli of the torsion coordinates (the free coordinates come first).
    pub fn torsion_moduli(&self) -> impl Iterator<Item = &BigInt> {
        self.coordinates.iter().filter_map(|c| c.modulus.as_ref())
    }
}

/// Abelian invariants together with an explicit quotient map built from the right
/// transform `V` of the Smith form: an exponent vector `x` maps to `x V`.
pub fn abelian_quotient_map(p: &Presentation) -> AbelianQuotient {
    let n = p.generator_count();
    let snf = smith_normal_form(&abelianized_relation_matrix(p), true);
    let v = snf.right_transform.as_ref().expect("transforms requested");
    let column = |j: usize| (0..n).map(|g| v.get(g, j).clone()).collect::<Vec<_>>();
    let mut coordinates: Vec<Coordinate> = (snf.rank..n)
        .map(|j| Coordinate {
            weights: column(j),
            modulus: None,
        })
        .collect();
    for (j, d) in snf.invariant_factors.iter().enumerate() {
        if !d.is_one() {
            coordinates.push(Coordinate {
                weights: column(j),
                modulus: Some(d.clone()),
            });
        }
    }
    AbelianQuotient {
        invariants: invariants_from(n, &snf),
        coordinates,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{commutator, free_reduce, parse_presentation};

    fn parse(text: &str) -> Presentation {
        parse_presentation(text).unwrap().presentation
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    const Q8: &str = "gens: a b\nrel: a^4\nrel: a^2 b^-2\nrel: b^-1 a b a";

    #[test]
    fn relation_matrices() {
        assert_eq!(
            abelianized_relation_matrix(&parse("gens: x y\nrel: x^2 y^-3")),
            IntegerMatrix::from_rows(&[vec![2, -3]])
        );
        assert_eq!(
            abelianized_relation_matrix(&parse("gens: a b\nrel: a b a^-1 b^-1")),
            IntegerMatrix::from_rows(&[vec![0, 0]])
        );
        assert_eq!(
            abelianized_relation_matrix(&parse(Q8)),
            IntegerMatrix::from_rows(&[vec![4, 0], vec![2, -2], vec![2, 0]])
        );
    }

    #[test]
    fn diag_two_three() {
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]), false);
        assert_eq!(snf.invariant_factors, ints(&[1, 6]));
    }

    #[test]
    fn zero_and_empty_matrices() {
        for (r, c) in [(0, 0), (0, 3), (3, 0), (2, 4)] {
            let snf = smith_normal_form(&IntegerMatrix::zeros(r, c), true);
            assert!(snf.invariant_factors.is_empty());
            assert_eq!(snf.rank, 0);
            assert_eq!(snf.left_transform.unwrap(), IntegerMatrix::identity(r));
            assert_eq!(snf.right_transform.unwrap(), IntegerMatrix::identity(c));
        }
    }

    #[test]
    fn transforms_diagonalize() {
        let m = IntegerMatrix::from_rows(&[vec![4, 0], vec![2, -2], vec![2, 0]]);
        let snf = smith_normal_form(&m, true);
        let u = snf.left_transform.as_ref().unwrap();
        let v = snf.right_transform.as_ref().unwrap();
        assert_eq!(u.mul(&m).mul(v), snf.diagonal(3, 2));
        // minors: gcd of entries 2, gcd of 2x2 minors {-8, 0, 4} is 4
        assert_eq!(snf.invariant_factors, ints(&[2, 2]));
    }

    #[test]
    fn invariants_of_named_groups() {
        let z2 = parse("gens: a b\nrel: a b a^-1 b^-1");
        assert_eq!(
            abelian_invariants(&z2),
            AbelianInvariants {
                betti: 2,
                torsion: vec![]
            }
        );
        let trefoil = parse("gens: x y\nrel: x^2 y^-3");
        assert_eq!(
            abelian_invariants(&trefoil),
            AbelianInvariants {
                betti: 1,
                torsion: vec![]
            }
        );
        assert_eq!(
            abelian_invariants(&parse(Q8)),
            AbelianInvariants {
                betti: 0,
                torsion: ints(&[2, 2])
            }
        );
        let bi = parse("gens: s t\nrel: s^3 t^-1 s^-1 t^-1 s^-1\nrel: t^5 t^-1 s^-1 t^-1 s^-1");
        assert!(abelian_invariants(&bi).is_trivial());
        assert_eq!(
            abelian_invariants(&Presentation::free(3)),
            AbelianInvariants {
                betti: 3,
                torsion: vec![]
            }
        );
    }

    #[test]
    fn quotient_map_cyclic() {
        let q = abelian_quotient_map(&parse("gens: a\nrel: a^4"));
        assert_eq!(q.evaluate(&Word::letter(1)), ints(&[1]));
        assert_eq!(q.evaluate(&free_reduce(&[1, 1])), ints(&[2]));
        assert_eq!(q.evaluate(&free_reduce(&[1, 1, 1, 1])), ints(&[0]));
    }

    #[test]
    fn quotient_map_kills_relators_and_commutators() {
        let p = parse(Q8);
        let q = abelian_quotient_map(&p);
        for r in p.relators() {
            assert!(q.evaluate(r).iter().all(Zero::is_zero));
        }
        let a = q.evaluate(&Word::letter(1));
        let b = q.evaluate(&Word::letter(2));
        let mut seen = std::collections::HashSet::new();
        for i in 0..2 {
            for j in 0..2 {
                let mut x = vec![BigInt::zero(); 2];
                for _ in 0..i {
                    x = q.add(&x, &a);
                }
                for _ in 0..j {
                    x = q.add(&x, &b);
                }
                seen.insert(x);
            }
        }
        assert_eq!(seen.len(), 4);
        let c = commutator(&Word::letter(1), &Word::letter(2));
        assert!(q.evaluate(&c).iter().all(Zero::is_zero));
    }

    #[test]
    fn machine_integer_path_matches_bigint() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(11);
        let mut fallbacks = 0;
        for trial in 0..400 {
            let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let bound: i64 = if trial % 2 == 0 { 9 } else { 1 << 61 };
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
                .collect();
            let m = IntegerMatrix::from_rows(&m);
            let exact = smith_normal_form(&m, false).invariant_factors;
            match small_invariant_factors(&m) {
                Some(f) => assert_eq!(ints(&f), exact, "trial {trial}"),
                None => fallbacks += 1,
            }
        }
        // large entries must exercise the overflow fallback
        assert!(fallbacks > 0);
        let p = parse("gens: a b\nrel: a^2 b^4\nrel: a^6 b^8");
        // entry gcd 2, determinant -8
        assert_eq!(abelian_invariants(&p).torsion, ints(&[2, 4]));
    }

    #[test]
    fn display_invariants() {
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
        let inv = AbelianInvariants {
            betti: 2,
            torsion: ints(&[2, 6]),
        };
        assert_eq!(inv.to_string(), "Z^2 + Z/2 + Z/6");
    }
}
