//! Kazhdan-Lusztig polynomials from the Hecke algebra.
//!
//! This is an independent check on the sheaf engine: it only uses the group
//! combinatorics in [`crate::coxeter`] and the classical recursions for `R`
//! and `P` polynomials.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::coxeter::WeylGroup;
use crate::{Error, Result};

/// Integer polynomial in `q`, lowest degree first, no trailing zeros.
pub type QPoly = Vec<i64>;

fn trim(mut p: QPoly) -> QPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add_shifted(acc: &mut QPoly, p: &[i64], shift: usize, scale: i64) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, &c) in p.iter().enumerate() {
        acc[i + shift] += scale * c;
    }
}

fn mul(a: &[i64], b: &[i64]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Renders `1+q+2q^2`; the zero polynomial is `0`.
pub fn format_qpoly(p: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in p.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !s.is_empty() || c < 0 {
            s.push(if c < 0 { '-' } else { '+' });
        }
        let a = c.abs();
        match i {
            0 => write!(s, "{a}").unwrap(),
            _ => {
                if a != 1 {
                    write!(s, "{a}").unwrap();
                }
                s.push('q');
                if i > 1 {
                    write!(s, "^{i}").unwrap();
                }
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Memoized `P_{x,w}` and `R_{x,w}` over a finite Weyl group.
pub struct KlTable<'a> {
    group: &'a WeylGroup,
    p: HashMap<usize, Vec<QPoly>>,
    r: HashMap<(usize, usize), QPoly>,
}

impl<'a> KlTable<'a> {
    pub fn new(group: &'a WeylGroup) -> Self {
        KlTable { group, p: HashMap::new(), r: HashMap::new() }
    }

    pub fn group(&self) -> &WeylGroup {
        self.group
    }

    fn left_descent(&self, w: usize) -> Option<usize> {
        (0..self.group.rank()).find(|&s| self.group.is_left_descent(s, w))
    }

    /// All `P_{x,w}` for fixed `w`, indexed by `x` (zero when `x` is not below `w`).
    fn column(&mut self, w: usize) -> &Vec<QPoly> {
        if !self.p.contains_key(&w) {
            let col = self.compute_column(w);
            self.p.insert(w, col);
        }
        &self.p[&w]
    }

    fn compute_column(&mut self, w: usize) -> Vec<QPoly> {
        let g = self.group;
        let n = g.len();
        let mut col = vec![Vec::new(); n];
        let Some(s) = self.left_descent(w) else {
            col[w] = vec![1];
            return col;
        };
        let v = g.mul_simple_left(s, w);
        let pv = self.column(v).clone();
        // z < v with sz < z and nonzero mu(z, v)
        let mut mus = Vec::new();
        for z in 0..n {
            if z == v || pv[z].is_empty() || !g.is_left_descent(s, z) {
                continue;
            }
            let gap = g.length(v) - g.length(z);
            if gap % 2 == 1 {
                let mu = pv[z].get((gap - 1) / 2).copied().unwrap_or(0);
                if mu != 0 {
                    mus.push((z, mu));
                }
            }
        }
        let pz: Vec<(usize, i64, Vec<QPoly>)> =
            mus.into_iter().map(|(z, mu)| (z, mu, self.column(z).clone())).collect();
        for x in 0..n {
            if !g.bruhat_leq(x, w) {
                continue;
            }
            let sx = g.mul_simple_left(s, x);
            let c = usize::from(g.is_left_descent(s, x));
            let mut acc = Vec::new();
            add_shifted(&mut acc, &pv[sx], 1 - c, 1);
            add_shifted(&mut acc, &pv[x], c, 1);
            for (z, mu, col_z) in &pz {
                let shift = (g.length(w) - g.length(*z)) / 2;
                add_shifted(&mut acc, &col_z[x], shift, -mu);
            }
            col[x] = trim(acc);
        }
        col
    }

    /// `P_{x,w}`; a domain error unless `x <= w`.
    pub fn kl_polynomial(&mut self, x: usize, w: usize) -> Result<QPoly> {
        if !self.group.bruhat_leq(x, w) {
            return Err(Error::Domain(format!(
                "{} is not below {} in the Bruhat order",
                self.group.label(x),
                self.group.label(w)
            )));
        }
        Ok(self.column(w)[x].clone())
    }

    /// Parabolic version for minimal coset representatives: `P` of the
    /// maximal representatives of the two cosets.
    pub fn parabolic_kl(&mut self, j: &[usize], x: usize, w: usize) -> Result<QPoly> {
        let g = self.group;
        if !g.is_minimal_in_coset(x, j) || !g.is_minimal_in_coset(w, j) {
            return Err(Error::Domain("parabolic KL needs minimal coset representatives".into()));
        }
        self.kl_polynomial(g.maximal_rep(x, j), g.maximal_rep(w, j))
    }

    /// `R_{x,w}`, zero unless `x <= w`.
    pub fn r_polynomial(&mut self, x: usize, w: usize) -> QPoly {
        if x == w {
            return vec![1];
        }
        if !self.group.bruhat_leq(x, w) {
            return Vec::new();
        }
        if let Some(r) = self.r.get(&(x, w)) {
            return r.clone();
        }
        let g = self.group;
        let s = self.left_descent(w).expect("w > x has a descent");
        let sw = g.mul_simple_left(s, w);
        let sx = g.mul_simple_left(s, x);
        let r = if g.is_left_descent(s, x) {
            self.r_polynomial(sx, sw)
        } else {
            let mut acc = Vec::new();
            let a = self.r_polynomial(x, sw);
            add_shifted(&mut acc, &a, 1, 1);
            add_shifted(&mut acc, &a, 0, -1);
            add_shifted(&mut acc, &self.r_polynomial(sx, sw), 1, 1);
            trim(acc)
        };
        self.r.insert((x, w), r.clone());
        r
    }

    /// Checks `sum_{x<=y<=w} (-1)^{l(x)+l(y)} R_{x,y} R_{y,w} = delta_{x,w}`
    /// for every pair of the group.
    pub fn check_r_inversion(&mut self) -> Result<()> {
        let g = self.group;
        for w in 0..g.len() {
            for x in g.bruhat_interval_below(w) {
                let mut acc = Vec::new();
                for y in g.bruhat_interval_below(w) {
                    if !g.bruhat_leq(x, y) {
                        continue;
                    }
                    let sign = if (g.length(x) + g.length(y)).is_multiple_of(2) { 1 } else { -1 };
                    add_shifted(&mut acc, &mul(&self.r_polynomial(x, y), &self.r_polynomial(y, w)), 0, sign);
                }
                let expected: QPoly = if x == w { vec![1] } else { Vec::new() };
                if trim(acc) != expected {
                    return Err(Error::Inconsistent(format!(
                        "R inversion fails at ({}, {})",
                        g.label(x),
                        g.label(w)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks `q^{l(w)-l(x)} P_{x,w}(1/q) - P_{x,w}(q) = sum_{x<y<=w} R_{x,y} P_{y,w}`
    /// and the degree bound for every pair below `top`.
    pub fn check_p_r_compatibility(&mut self, top: usize) -> Result<()> {
        let g = self.group;
        let below = g.bruhat_interval_below(top);
        for &w in &below {
            for x in g.bruhat_interval_below(w) {
                let p = self.kl_polynomial(x, w)?;
                let gap = g.length(w) - g.length(x);
                if x != w && 2 * p.len() > gap + 1 {
                    return Err(Error::Inconsistent(format!(
                        "P_({},{}) = {} violates the degree bound",
                        g.label(x),
                        g.label(w),
                        format_qpoly(&p)
                    )));
                }
                let mut lhs = vec![0; gap + 1];
                for (i, &c) in p.iter().enumerate() {
                    lhs[gap - i] += c;
                    lhs[i] -= c;
                }
                let mut rhs = Vec::new();
                for y in g.bruhat_interval_below(w) {
                    if y != x && g.bruhat_leq(x, y) {
                        let pyw = self.kl_polynomial(y, w)?;
                        add_shifted(&mut rhs, &mul(&self.r_polynomial(x, y), &pyw), 0, 1);
                    }
                }
                if trim(lhs) != trim(rhs) {
                    return Err(Error::Inconsistent(format!(
                        "P/R compatibility fails at ({}, {})",
                        g.label(x),
                        g.label(w)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// CSV of `P_{y,w}` for every `y <= w` among the minimal representatives
/// for `j`, in the group's element order. Columns: `x,y,poly` with `y` the top.
pub fn kl_csv(table: &mut KlTable, j: &[usize], w: usize) -> Result<String> {
    let g = table.group;
    let mut s = String::from("x,y,poly\n");
    for x in g.bruhat_interval_below(w) {
        if !g.is_minimal_in_coset(x, j) {
            continue;
        }
        let p = table.parabolic_kl(j, x, w)?;
        writeln!(s, "{},{},{}", g.label(x), g.label(w), format_qpoly(&p)).unwrap();
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanDatum;

    fn group(name: &str) -> WeylGroup {
        WeylGroup::build(CartanDatum::parse(name).unwrap()).unwrap()
    }

    #[test]
    fn formatting() {
        assert_eq!(format_qpoly(&[1]), "1");
        assert_eq!(format_qpoly(&[1, 1]), "1+q");
        assert_eq!(format_qpoly(&[1, 0, 2]), "1+2q^2");
        assert_eq!(format_qpoly(&[-1, 1]), "-1+q");
        assert_eq!(format_qpoly(&[]), "0");
    }

    #[test]
    fn a2_all_trivial() {
        let w = group("A2");
        let mut t = KlTable::new(&w);
        for y in 0..w.len() {
            for x in w.bruhat_interval_below(y) {
                assert_eq!(t.kl_polynomial(x, y).unwrap(), vec![1]);
            }
        }
        assert!(matches!(t.kl_polynomial(w.longest(), w.identity()), Err(Error::Domain(_))));
    }

    #[test]
    fn a3_singular_examples() {
        let w = group("A3");
        let mut t = KlTable::new(&w);
        let top = w.parse_word("2132").unwrap();
        assert_eq!(t.kl_polynomial(w.identity(), top).unwrap(), vec![1, 1]);
        assert_eq!(t.kl_polynomial(w.parse_word("2").unwrap(), top).unwrap(), vec![1, 1]);
        let top = w.parse_word("12321").unwrap();
        assert_eq!(t.kl_polynomial(w.identity(), top).unwrap(), vec![1, 1]);
        assert_eq!(t.kl_polynomial(w.parse_word("13").unwrap(), top).unwrap(), vec![1, 1]);
        assert_eq!(t.kl_polynomial(w.parse_word("123").unwrap(), top).unwrap(), vec![1]);
        assert_eq!(t.kl_polynomial(w.identity(), w.parse_word("1321").unwrap()).unwrap(), vec![1]);
        // w0 is smooth.
        for x in 0..w.len() {
            assert_eq!(t.kl_polynomial(x, w.longest()).unwrap(), vec![1]);
        }
    }

    #[test]
    fn r_polynomials_small() {
        let w = group("A1");
        let mut t = KlTable::new(&w);
        assert_eq!(t.r_polynomial(0, 1), vec![-1, 1]);
        let w = group("A2");
        let mut t = KlTable::new(&w);
        let r = t.r_polynomial(w.identity(), w.longest());
        // (q-1)^3 + q(q-1)
        assert_eq!(r, vec![-1, 2, -2, 1]);
    }

    #[test]
    fn self_consistency() {
        for name in ["A2", "B2", "G2", "A3"] {
            let w = group(name);
            let mut t = KlTable::new(&w);
            t.check_r_inversion().unwrap();
            t.check_p_r_compatibility(w.longest()).unwrap();
        }
    }

    #[test]
    fn nonnegative_and_constant_one() {
        for name in ["B3", "A3"] {
            let w = group(name);
            let mut t = KlTable::new(&w);
            for y in 0..w.len() {
                for x in w.bruhat_interval_below(y) {
                    let p = t.kl_polynomial(x, y).unwrap();
                    assert_eq!(p[0], 1);
                    assert!(p.iter().all(|&c| c >= 0));
                }
            }
        }
    }

    #[test]
    fn parabolic_reduces_to_ordinary() {
        let w = group("A3");
        let mut t = KlTable::new(&w);
        let top = w.parse_word("2132").unwrap();
        for x in w.bruhat_interval_below(top) {
            assert_eq!(t.parabolic_kl(&[], x, top).unwrap(), t.kl_polynomial(x, top).unwrap());
        }
        let j = [0, 2];
        let reps = w.minimal_coset_reps(&j);
        assert_eq!(reps.len(), 6);
        for &r in &reps {
            assert_eq!(t.parabolic_kl(&j, r, r).unwrap(), vec![1]);
        }
    }

    #[test]
    fn csv_shape() {
        let w = group("A2");
        let mut t = KlTable::new(&w);
        let csv = kl_csv(&mut t, &[], w.longest()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[1], "e,121,1");
    }
}
