//! Finite Weyl groups: root data, enumeration, lengths, reduced words,
//! reflections, Bruhat order and parabolic quotients.
//!
//! Everything is expressed in simple-root coordinates, so `t*` has dimension
//! equal to the rank and every group element is an integer matrix. Elements
//! are identified by matrix equality.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::exactalg::{Echelon, Rational, SparseVec};
use crate::{Error, Result};

/// Default cap on `|W|`, overridable with `MOMENTSHEAF_CAP`.
pub const DEFAULT_CAP: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// Root datum of a finite crystallographic type.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    pub family: Family,
    pub rank: usize,
    /// Symmetric form on simple roots, scaled to integers.
    pub gram: Vec<Vec<i64>>,
    /// `cartan[i][j] = 2 (a_i, a_j) / (a_j, a_j)`.
    pub cartan: Vec<Vec<i64>>,
    /// Simple roots in `t*` (the coordinate vectors).
    pub simple_roots: Vec<Vec<Rational>>,
    pub fundamental_weights: Vec<Vec<Rational>>,
}

impl CartanDatum {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let gram = gram_matrix(family, rank)?;
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                let num = 2 * gram[i][j];
                if num % gram[j][j] != 0 {
                    return Err(Error::Validation(format!("non-integral Cartan entry for {family}{rank}")));
                }
                cartan[i][j] = num / gram[j][j];
            }
        }
        let simple_roots = (0..rank)
            .map(|i| (0..rank).map(|j| Rational::from_integer(i64::from(i == j))).collect())
            .collect();
        let fundamental_weights = invert(&cartan)
            .ok_or_else(|| Error::Validation(format!("singular Cartan matrix for {family}{rank}")))?;
        Ok(CartanDatum { family, rank, gram, cartan, simple_roots, fundamental_weights })
    }

    /// Parses names like `A3`, `b2`, `G2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::Validation(format!("unknown type {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Validation(format!("type {s:?} needs a rank, e.g. A3")))?;
        CartanDatum::new(family, rank)
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    /// `|W|` from the classification, without enumerating.
    pub fn group_order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        let n = self.rank;
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Matrix of the simple reflection `s_j` on simple-root coordinates.
    fn simple_reflection(&self, j: usize) -> Vec<i64> {
        let n = self.rank;
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
            // s_j(a_i) = a_i - cartan[i][j] a_j
            m[j * n + i] -= self.cartan[i][j];
        }
        m
    }

    /// `(u, v)` for vectors in simple-root coordinates.
    pub fn pairing(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += u[i] * self.gram[i][j] * v[j];
            }
        }
        acc
    }
}

fn gram_matrix(family: Family, n: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Err(Error::Validation(format!("unsupported type {family}{n}")));
    let ok = match family {
        Family::A => n >= 1,
        Family::B | Family::C => n >= 2,
        Family::D => n >= 4,
        Family::E => (6..=8).contains(&n),
        Family::F => n == 4,
        Family::G => n == 2,
    };
    if !ok {
        return bad();
    }
    let mut g = vec![vec![0i64; n]; n];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    match family {
        Family::A => (0..n - 1).for_each(|i| link(&mut g, i, i + 1, -1)),
        Family::B => {
            (0..n - 1).for_each(|i| link(&mut g, i, i + 1, -1));
            g[n - 1][n - 1] = 1;
        }
        Family::C => {
            (0..n - 2).for_each(|i| link(&mut g, i, i + 1, -1));
            link(&mut g, n - 2, n - 1, -2);
            g[n - 1][n - 1] = 4;
        }
        Family::D => {
            (0..n - 2).for_each(|i| link(&mut g, i, i + 1, -1));
            link(&mut g, n - 3, n - 1, -1);
        }
        Family::E => {
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            (2..n - 1).for_each(|i| link(&mut g, i, i + 1, -1));
        }
        Family::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        Family::G => {
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    Ok(g)
}

fn invert(m: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut e = Echelon::new(2 * n);
    for (i, row) in m.iter().enumerate() {
        let pairs = row
            .iter()
            .enumerate()
            .map(|(j, &v)| (j, Rational::from_integer(v)))
            .chain(std::iter::once((n + i, Rational::ONE)));
        e.insert(SparseVec::from_pairs(pairs));
    }
    if e.pivots() != (0..n).collect::<Vec<_>>() {
        return None;
    }
    Some(e.basis().iter().map(|r| r.slice(n, n).to_dense(n)).collect())
}

/// Element of `W`: its matrix on `t*`, length, and ShortLex-minimal reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: Vec<i64>,
    pub length: usize,
    /// 0-based simple reflection indices.
    pub canonical_word: Vec<usize>,
}

/// A reflection of `W` and its positive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub element: usize,
    pub positive_root: Vec<i64>,
}

/// All elements of a finite Weyl group, indexed by `(length, canonical word)`.
#[derive(Debug)]
pub struct WeylGroup {
    cartan: CartanDatum,
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    positive_roots: Vec<Vec<i64>>,
    reflections: Vec<Reflection>,
    bruhat_rows: Vec<OnceLock<FixedBitSet>>,
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

fn mat_vec(n: usize, a: &[i64], v: &[i64]) -> Vec<i64> {
    (0..n).map(|i| (0..n).map(|k| a[i * n + k] * v[k]).sum()).collect()
}

/// Group-size cap from `MOMENTSHEAF_CAP`, falling back to [`DEFAULT_CAP`].
pub fn configured_cap() -> usize {
    std::env::var("MOMENTSHEAF_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_CAP)
}

impl WeylGroup {
    /// Enumerates `W` with the cap from the environment.
    pub fn build(cartan: CartanDatum) -> Result<Self> {
        Self::build_with_cap(cartan, configured_cap())
    }

    pub fn build_with_cap(cartan: CartanDatum, cap: usize) -> Result<Self> {
        let order = cartan.group_order();
        if order > cap as u128 {
            return Err(Error::Size { what: format!("Weyl group {}", cartan.name()), size: order, cap: cap as u128 });
        }
        let n = cartan.rank;
        let gens: Vec<Vec<i64>> = (0..n).map(|j| cartan.simple_reflection(j)).collect();
        let mut ident = vec![0i64; n * n];
        for i in 0..n {
            ident[i * n + i] = 1;
        }

        // Breadth-first search by right multiplication: BFS depth is length.
        let mut mats: Vec<Vec<i64>> = vec![ident.clone()];
        let mut lengths = vec![0usize];
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::from([(ident, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let m = mat_mul(n, &mats[w], g);
                if !seen.contains_key(&m) {
                    seen.insert(m.clone(), mats.len());
                    lengths.push(lengths[w] + 1);
                    queue.push_back(mats.len());
                    mats.push(m);
                }
            }
        }
        debug_assert_eq!(mats.len() as u128, order);
        let count = mats.len();
        let left_raw: Vec<Vec<usize>> =
            (0..count).map(|w| gens.iter().map(|g| seen[&mat_mul(n, g, &mats[w])]).collect()).collect();

        // ShortLex words: first letter is the smallest left descent.
        let mut by_len: Vec<usize> = (0..count).collect();
        by_len.sort_by_key(|&w| lengths[w]);
        let mut words: Vec<Vec<usize>> = vec![Vec::new(); count];
        for &w in &by_len {
            if lengths[w] == 0 {
                continue;
            }
            let s = (0..n).find(|&s| lengths[left_raw[w][s]] < lengths[w]).expect("nonidentity has a descent");
            let mut word = vec![s];
            word.extend_from_slice(&words[left_raw[w][s]]);
            words[w] = word;
        }

        let mut order_idx: Vec<usize> = (0..count).collect();
        order_idx.sort_by(|&a, &b| (lengths[a], &words[a]).cmp(&(lengths[b], &words[b])));
        let mut new_of = vec![0usize; count];
        for (new, &old) in order_idx.iter().enumerate() {
            new_of[old] = new;
        }
        let elements: Vec<WeylElement> = order_idx
            .iter()
            .map(|&old| WeylElement {
                matrix: mats[old].clone(),
                length: lengths[old],
                canonical_word: words[old].clone(),
            })
            .collect();
        let index: HashMap<Vec<i64>, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.matrix.clone(), i)).collect();
        let right: Vec<Vec<usize>> =
            elements.iter().map(|e| gens.iter().map(|g| index[&mat_mul(n, &e.matrix, g)]).collect()).collect();
        let left: Vec<Vec<usize>> =
            order_idx.iter().map(|&old| left_raw[old].iter().map(|&o| new_of[o]).collect()).collect();
        let inverse: Vec<usize> = elements
            .iter()
            .map(|e| e.canonical_word.iter().rev().fold(0usize, |acc, &s| right[acc][s]))
            .collect();

        let mut positive_roots: Vec<Vec<i64>> = Vec::new();
        let mut reflections: Vec<Reflection> = Vec::new();
        for (w, e) in elements.iter().enumerate() {
            for (i, g) in gens.iter().enumerate() {
                let root: Vec<i64> = (0..n).map(|k| e.matrix[k * n + i]).collect();
                let pos: Vec<i64> =
                    if root.iter().all(|&x| x >= 0) { root } else { root.iter().map(|x| -x).collect() };
                if positive_roots.contains(&pos) {
                    continue;
                }
                let t = mat_mul(n, &mat_mul(n, &e.matrix, g), &elements[inverse[w]].matrix);
                reflections.push(Reflection { element: index[&t], positive_root: pos.clone() });
                positive_roots.push(pos);
            }
        }
        reflections.sort_by_key(|r| r.element);
        positive_roots = reflections.iter().map(|r| r.positive_root.clone()).collect();

        let bruhat_rows = (0..count).map(|_| OnceLock::new()).collect();
        Ok(WeylGroup { cartan, elements, index, right, left, inverse, positive_roots, reflections, bruhat_rows })
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, w: usize) -> &WeylElement {
        &self.elements[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].length
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// `w s`
    pub fn mul_simple_right(&self, w: usize, s: usize) -> usize {
        self.right[w][s]
    }

    /// `s w`
    pub fn mul_simple_left(&self, s: usize, w: usize) -> usize {
        self.left[w][s]
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w]
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.elements[b].canonical_word.iter().fold(a, |acc, &s| self.right[acc][s])
    }

    pub fn lookup(&self, matrix: &[i64]) -> Option<usize> {
        self.index.get(matrix).copied()
    }

    /// Action of `w` on a vector of `t*` in simple-root coordinates.
    pub fn act(&self, w: usize, v: &[i64]) -> Vec<i64> {
        mat_vec(self.rank(), &self.elements[w].matrix, v)
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, w: usize) -> usize {
        self.positive_roots.iter().filter(|r| self.act(w, r).iter().any(|&x| x < 0)).count()
    }

    pub fn is_right_descent(&self, w: usize, s: usize) -> bool {
        self.length(self.right[w][s]) < self.length(w)
    }

    pub fn is_left_descent(&self, s: usize, w: usize) -> bool {
        self.length(self.left[w][s]) < self.length(w)
    }

    /// Element of the product of simple reflections `word` (0-based).
    pub fn from_word(&self, word: &[usize]) -> Result<usize> {
        word.iter().try_fold(0usize, |acc, &s| {
            if s >= self.rank() {
                Err(Error::Validation(format!("simple reflection index {} out of range", s + 1)))
            } else {
                Ok(self.right[acc][s])
            }
        })
    }

    /// Parses `"2132"` (1-based digits), comma-separated indices for large
    /// ranks, `"e"` for the identity, or `"longest"`. Words must be reduced.
    pub fn parse_word(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("longest") {
            return Ok(self.longest());
        }
        if s.is_empty() || s == "e" {
            return Ok(0);
        }
        let idx: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        let idx = idx.ok_or_else(|| Error::Validation(format!("malformed word {s:?}")))?;
        if idx.contains(&0) {
            return Err(Error::Validation(format!("word {s:?}: indices are 1-based")));
        }
        let word: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        let w = self.from_word(&word)?;
        if self.length(w) != word.len() {
            return Err(Error::Validation(format!("word {s:?} is not reduced")));
        }
        Ok(w)
    }

    /// Display label: 1-based canonical word, or `e`.
    pub fn label(&self, w: usize) -> String {
        let word = &self.elements[w].canonical_word;
        if word.is_empty() {
            return "e".to_string();
        }
        if self.rank() < 10 {
            word.iter().map(|s| char::from_digit((s + 1) as u32, 10).unwrap()).collect()
        } else {
            word.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join(",")
        }
    }

    fn bruhat_row(&self, y: usize) -> &FixedBitSet {
        self.bruhat_rows[y].get_or_init(|| {
            let mut row = FixedBitSet::with_capacity(self.len());
            if y == 0 {
                row.insert(0);
                return row;
            }
            // x <= y  iff  x <= ys or xs <= ys, for a right descent s of y.
            let s = (0..self.rank()).find(|&s| self.is_right_descent(y, s)).unwrap();
            let lower = self.bruhat_row(self.right[y][s]);
            for z in lower.ones() {
                row.insert(z);
                row.insert(self.right[z][s]);
            }
            row
        })
    }

    /// Bruhat order `x <= y`.
    pub fn bruhat_leq(&self, x: usize, y: usize) -> bool {
        self.length(x) <= self.length(y) && self.bruhat_row(y).contains(x)
    }

    /// Elements below `y` in Bruhat order, ascending by index.
    pub fn bruhat_interval_below(&self, y: usize) -> Vec<usize> {
        self.bruhat_row(y).ones().collect()
    }

    /// Minimal-length representatives of the cosets `w W_J`.
    pub fn minimal_coset_reps(&self, j: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&w| self.is_minimal_in_coset(w, j)).collect()
    }

    pub fn is_minimal_in_coset(&self, w: usize, j: &[usize]) -> bool {
        j.iter().all(|&s| !self.is_right_descent(w, s))
    }

    /// Minimal representative of the coset `w W_J`.
    pub fn minimal_rep(&self, mut w: usize, j: &[usize]) -> usize {
        while let Some(&s) = j.iter().find(|&&s| self.is_right_descent(w, s)) {
            w = self.right[w][s];
        }
        w
    }

    /// Longest element of the parabolic subgroup `W_J`.
    pub fn parabolic_longest(&self, j: &[usize]) -> usize {
        let mut w = 0;
        while let Some(&s) = j.iter().find(|&&s| !self.is_right_descent(w, s)) {
            w = self.right[w][s];
        }
        w
    }

    /// Maximal representative of the coset `w W_J`.
    pub fn maximal_rep(&self, w: usize, j: &[usize]) -> usize {
        self.multiply(self.minimal_rep(w, j), self.parabolic_longest(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::build(CartanDatum::parse(name).unwrap()).unwrap()
    }

    /// Independent check: x <= y iff some reduced word of y contains a
    /// subword multiplying to x. Enumerates subwords of the canonical word.
    fn subword_leq(w: &WeylGroup, x: usize, y: usize) -> bool {
        let word = &w.element(y).canonical_word;
        (0u32..(1 << word.len())).any(|mask| {
            let sub: Vec<usize> =
                word.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &s)| s).collect();
            w.from_word(&sub).unwrap() == x
        })
    }

    #[test]
    fn group_sizes_and_reflections() {
        for (name, size, refl, maxlen) in
            [("A1", 2, 1, 1), ("A2", 6, 3, 3), ("A3", 24, 6, 6), ("B2", 8, 4, 4), ("G2", 12, 6, 6), ("B3", 48, 9, 9)]
        {
            let w = group(name);
            assert_eq!(w.len(), size, "{name}");
            assert_eq!(w.reflections().len(), refl, "{name}");
            assert_eq!(w.length(w.longest()), maxlen, "{name}");
        }
    }

    #[test]
    fn a3_size_by_word_enumeration() {
        // Brute force: all words of length <= 6, deduplicated by matrix.
        let w = group("A3");
        let mut seen = std::collections::HashSet::new();
        let mut frontier = vec![Vec::<usize>::new()];
        for _ in 0..=6 {
            let mut next = Vec::new();
            for word in &frontier {
                seen.insert(w.element(w.from_word(word).unwrap()).matrix.clone());
                for s in 0..3 {
                    let mut v = word.clone();
                    v.push(s);
                    next.push(v);
                }
            }
            frontier = next;
        }
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn cartan_matrices() {
        assert_eq!(CartanDatum::parse("G2").unwrap().cartan, vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(CartanDatum::parse("B2").unwrap().cartan, vec![vec![2, -2], vec![-1, 2]]);
        let f4 = CartanDatum::parse("F4").unwrap();
        assert_eq!(f4.cartan[1][2], -2);
        assert_eq!(f4.cartan[2][1], -1);
    }

    #[test]
    fn fundamental_weights_are_dual() {
        for name in ["A3", "B3", "G2", "D4"] {
            let c = CartanDatum::parse(name).unwrap();
            for i in 0..c.rank {
                for j in 0..c.rank {
                    let mut acc = Rational::ZERO;
                    for k in 0..c.rank {
                        acc += &(&c.fundamental_weights[i][k] * &Rational::from_integer(c.cartan[k][j]));
                    }
                    assert_eq!(acc, Rational::from_integer(i64::from(i == j)));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_types_and_caps() {
        assert!(matches!(CartanDatum::parse("E5"), Err(Error::Validation(_))));
        assert!(matches!(CartanDatum::parse("Q2"), Err(Error::Validation(_))));
        let e7 = CartanDatum::parse("E7").unwrap();
        match WeylGroup::build_with_cap(e7, 50_000) {
            Err(Error::Size { size, .. }) => assert_eq!(size, 2_903_040),
            other => panic!("expected size error, got {other:?}"),
        }
    }

    #[test]
    fn lengths_are_inversion_counts_and_words_are_shortlex() {
        for name in ["A3", "B2", "G2", "C3"] {
            let w = group(name);
            for x in 0..w.len() {
                assert_eq!(w.length(x), w.inversion_count(x));
                let word = &w.element(x).canonical_word;
                assert_eq!(word.len(), w.length(x));
                assert_eq!(w.from_word(word).unwrap(), x);
                for s in 0..w.rank() {
                    let ws = w.mul_simple_right(x, s);
                    assert_eq!(w.length(ws).abs_diff(w.length(x)), 1);
                }
            }
        }
        let a2 = group("A2");
        let labels: Vec<String> = (0..6).map(|x| a2.label(x)).collect();
        assert_eq!(labels, ["e", "1", "2", "12", "21", "121"]);
    }

    #[test]
    fn bruhat_examples() {
        let w = group("A2");
        for y in 0..w.len() {
            assert!(w.bruhat_leq(0, y));
        }
        let sts = w.parse_word("121").unwrap();
        let st = w.parse_word("12").unwrap();
        assert!(!w.bruhat_leq(sts, st));
        assert!(w.bruhat_leq(st, sts));
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        for name in ["A2", "B2", "A3", "G2"] {
            let w = group(name);
            for x in 0..w.len() {
                for y in 0..w.len() {
                    assert_eq!(w.bruhat_leq(x, y), subword_leq(&w, x, y), "{name} {x} {y}");
                }
            }
        }
    }

    #[test]
    fn bruhat_is_partial_order() {
        for name in ["A2", "B2", "A3"] {
            let w = group(name);
            let n = w.len();
            for x in 0..n {
                assert!(w.bruhat_leq(x, x));
                for y in 0..n {
                    if x != y && w.bruhat_leq(x, y) {
                        assert!(!w.bruhat_leq(y, x));
                    }
                    for z in 0..n {
                        if w.bruhat_leq(x, y) && w.bruhat_leq(y, z) {
                            assert!(w.bruhat_leq(x, z));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reflections_compare_with_odd_length_gap() {
        for name in ["A2", "B2", "A3"] {
            let w = group(name);
            for r in w.reflections() {
                let t = r.element;
                assert_eq!(w.multiply(t, t), 0);
                // t fixes the hyperplane orthogonal to its root.
                for v in 0..w.rank() {
                    let mut e = vec![0i64; w.rank()];
                    e[v] = 1;
                    let te = w.act(t, &e);
                    let diff: Vec<i64> = te.iter().zip(&e).map(|(a, b)| a - b).collect();
                    assert!(diff.iter().all(|&d| d == 0) || {
                        let g = diff.iter().zip(&r.positive_root).find(|(_, &b)| b != 0).unwrap();
                        diff.iter().zip(&r.positive_root).all(|(a, b)| a * g.1 == b * g.0)
                    });
                }
                for x in 0..w.len() {
                    let tx = w.multiply(t, x);
                    assert!(w.bruhat_leq(x, tx) ^ w.bruhat_leq(tx, x));
                    assert_eq!(w.length(x).abs_diff(w.length(tx)) % 2, 1);
                }
            }
        }
    }

    #[test]
    fn parabolic_quotients() {
        let a2 = group("A2");
        assert_eq!(a2.minimal_coset_reps(&[]).len(), 6);
        let reps = a2.minimal_coset_reps(&[0]);
        let mut lens: Vec<usize> = reps.iter().map(|&r| a2.length(r)).collect();
        lens.sort();
        assert_eq!(lens, vec![0, 1, 2]);
        // Brute force: w has no right descent in J.
        let brute: Vec<usize> = (0..6).filter(|&w| a2.length(a2.mul_simple_right(w, 0)) > a2.length(w)).collect();
        assert_eq!(reps, brute);

        let a3 = group("A3");
        assert_eq!(a3.minimal_coset_reps(&[0, 2]).len(), 6);
        let w0j = a3.parabolic_longest(&[0, 2]);
        assert_eq!(a3.length(w0j), 2);
        for r in a3.minimal_coset_reps(&[0, 2]) {
            assert_eq!(a3.length(a3.maximal_rep(r, &[0, 2])), a3.length(r) + 2);
        }
    }

    #[test]
    fn word_parsing() {
        let a3 = group("A3");
        let w = a3.parse_word("2132").unwrap();
        assert_eq!(a3.length(w), 4);
        assert!(matches!(a3.parse_word("11"), Err(Error::Validation(_))));
        assert!(matches!(a3.parse_word("14"), Err(Error::Validation(_))));
        assert_eq!(a3.parse_word("longest").unwrap(), a3.longest());
        assert_eq!(a3.parse_word("e").unwrap(), 0);
    }
}
