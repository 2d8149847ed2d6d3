//! Degreewise model of the polynomial ring `A = Sym(t*)` and of its
//! quotients `A / V A` by subspaces `V` of linear forms.
//!
//! Elements of `t*` have degree 1. A homogeneous polynomial of degree `d` is
//! a coefficient vector over the monomial basis of `A_d`, which lists
//! exponent vectors in graded-lex order (`x1^d` first).

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use super::linalg::{Echelon, QMatrix, SparseVec};
use super::rational::Rational;

/// Monomials of degree `d` in `n` variables.
#[derive(Debug)]
pub struct MonomialBasis {
    n: usize,
    d: usize,
    monos: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// `dim A_d = C(d + n - 1, n - 1)`.
pub fn graded_dim(n: usize, d: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial(d + n - 1, n - 1)
}

impl MonomialBasis {
    fn build(n: usize, d: usize) -> Self {
        let mut monos = Vec::with_capacity(graded_dim(n, d));
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                monos.push(Vec::new());
            }
        } else {
            rec(0, d as u32, &mut cur, &mut monos);
        }
        assert_eq!(monos.len(), graded_dim(n, d), "monomial count mismatch");
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis { n, d, monos, index }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomial(&self, i: usize) -> &[u32] {
        &self.monos[i]
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monos
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }
}

type BasisCache = Mutex<HashMap<(usize, usize), Arc<MonomialBasis>>>;

/// Shared, cached monomial basis of `A_d` in `n` variables.
pub fn monomials(n: usize, d: usize) -> Arc<MonomialBasis> {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&(n, d)) {
        return b.clone();
    }
    let b = Arc::new(MonomialBasis::build(n, d));
    cache.lock().unwrap().entry((n, d)).or_insert(b).clone()
}

/// An element of `t* = A_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm(pub Vec<Rational>);

impl LinearForm {
    pub fn from_integers(c: &[i64]) -> Self {
        LinearForm(c.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    /// The coordinate function `x_i` in `n` variables.
    pub fn variable(n: usize, i: usize) -> Self {
        let mut c = vec![Rational::ZERO; n];
        c[i] = Rational::ONE;
        LinearForm(c)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn as_sparse(&self) -> SparseVec {
        SparseVec::from_dense(&self.0)
    }
}

/// Product of two homogeneous polynomials in `n` variables.
pub fn poly_mul(n: usize, da: usize, a: &SparseVec, db: usize, b: &SparseVec) -> SparseVec {
    let (ba, bb, bc) = (monomials(n, da), monomials(n, db), monomials(n, da + db));
    let mut out = Vec::with_capacity(a.nnz() * b.nnz());
    let mut exps = vec![0u32; n];
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            for (k, e) in exps.iter_mut().enumerate() {
                *e = ba.monomial(*i)[k] + bb.monomial(*j)[k];
            }
            out.push((bc.index_of(&exps).expect("product monomial"), x * y));
        }
    }
    SparseVec::from_pairs(out)
}

/// Matrix of multiplication by `f` from `A_d` to `A_{d+1}` in `n` variables.
pub fn multiply_map(f: &LinearForm, n: usize, d: usize) -> QMatrix {
    assert_eq!(f.nvars(), n);
    let src = monomials(n, d);
    let fv = f.as_sparse();
    let cols: Vec<SparseVec> =
        (0..src.len()).map(|j| poly_mul(n, d, &SparseVec::unit(j), 1, &fv)).collect();
    QMatrix::from_columns(graded_dim(n, d + 1), &cols)
}

/// Renders a polynomial over the given monomial basis with variables named
/// `x{k}` after `names[k]`.
pub fn format_poly(basis: &MonomialBasis, coeffs: &SparseVec, names: &[usize]) -> String {
    if coeffs.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (idx, (i, c)) in coeffs.iter().enumerate() {
        let mono: Vec<String> = basis
            .monomial(*i)
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(k, e)| {
                if *e == 1 {
                    format!("x{}", names[k] + 1)
                } else {
                    format!("x{}^{}", names[k] + 1, e)
                }
            })
            .collect();
        if idx > 0 {
            s.push_str(" + ");
        }
        if mono.is_empty() {
            write!(s, "{c}").unwrap();
        } else if c.is_one() {
            s.push_str(&mono.join("*"));
        } else {
            write!(s, "{c}*{}", mono.join("*")).unwrap();
        }
    }
    s
}

/// `A / V A` for a subspace `V` of linear forms.
///
/// `V` is put in reduced echelon form with pivots at the largest variable
/// indices; each pivot variable is then substituted by a combination of the
/// remaining ("free") variables. The quotient in degree `d` has the monomial
/// basis of degree `d` in the free variables.
#[derive(Debug)]
pub struct QuotientRing {
    n: usize,
    forms: Vec<LinearForm>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    /// For each variable: its image as a linear form in the free variables.
    images: Vec<SparseVec>,
    reduce_cache: Mutex<HashMap<usize, Arc<QMatrix>>>,
}

impl QuotientRing {
    /// Builds the quotient by the span of `forms` (may be dependent or empty).
    pub fn new(n: usize, forms: &[LinearForm]) -> Self {
        // Echelon over reversed columns puts pivots on the largest indices.
        let mut e = Echelon::new(n);
        for f in forms {
            assert_eq!(f.nvars(), n, "linear form has wrong arity");
            let rev = SparseVec::from_pairs(f.0.iter().enumerate().map(|(i, c)| (n - 1 - i, c.clone())));
            e.insert(rev);
        }
        let basis: Vec<LinearForm> = e
            .basis()
            .into_iter()
            .map(|r| {
                let dense = r.to_dense(n);
                LinearForm((0..n).map(|i| dense[n - 1 - i].clone()).collect())
            })
            .collect();
        let pivots: Vec<usize> = {
            let mut p: Vec<usize> = e.pivots().into_iter().map(|c| n - 1 - c).collect();
            p.sort_unstable();
            p
        };
        let free: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let free_pos: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut images = vec![SparseVec::new(); n];
        for (k, &v) in free.iter().enumerate() {
            images[v] = SparseVec::unit(k);
        }
        for f in &basis {
            // Leading variable (largest index) has coefficient 1.
            let p = (0..n).rev().find(|&i| !f.0[i].is_zero()).unwrap();
            debug_assert!(f.0[p].is_one());
            images[p] = SparseVec::from_pairs(
                (0..n)
                    .filter(|&i| i != p && !f.0[i].is_zero())
                    .map(|i| (free_pos[&i], -&f.0[i])),
            );
        }
        QuotientRing { n, forms: basis, pivots, free, images, reduce_cache: Mutex::new(HashMap::new()) }
    }

    pub fn ambient_vars(&self) -> usize {
        self.n
    }

    /// Number of variables of the quotient (free variables).
    pub fn nvars(&self) -> usize {
        self.free.len()
    }

    pub fn free_vars(&self) -> &[usize] {
        &self.free
    }

    pub fn pivot_vars(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduced echelon basis of `V`.
    pub fn relations(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn dim(&self, d: usize) -> usize {
        graded_dim(self.nvars(), d)
    }

    pub fn basis(&self, d: usize) -> Arc<MonomialBasis> {
        monomials(self.nvars(), d)
    }

    /// Image of a linear form (degree 1) in the quotient.
    pub fn reduce_linear(&self, f: &LinearForm) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, c) in f.0.iter().enumerate() {
            acc = acc.axpy(c, &self.images[i]);
        }
        acc
    }

    /// Whether `f` lies in `V`.
    pub fn kills(&self, f: &LinearForm) -> bool {
        self.reduce_linear(f).is_zero()
    }

    /// The reduction map `A_d -> (A/VA)_d` as a matrix.
    pub fn reduce_matrix(&self, d: usize) -> Arc<QMatrix> {
        if let Some(m) = self.reduce_cache.lock().unwrap().get(&d) {
            return m.clone();
        }
        let m = Arc::new(self.build_reduce(d));
        self.reduce_cache.lock().unwrap().entry(d).or_insert(m).clone()
    }

    fn build_reduce(&self, d: usize) -> QMatrix {
        let full = monomials(self.n, d);
        let m = self.nvars();
        // Image of each monomial, computed as image(x_i) * image(rest).
        let lower = if d == 0 { None } else { Some(self.reduce_matrix(d - 1).columns()) };
        let prev = if d == 0 { None } else { Some(monomials(self.n, d - 1)) };
        let cols: Vec<SparseVec> = (0..full.len())
            .map(|j| {
                if d == 0 {
                    return SparseVec::unit(0);
                }
                let mono = full.monomial(j);
                let i = mono.iter().position(|&e| e > 0).unwrap();
                let mut rest = mono.to_vec();
                rest[i] -= 1;
                let rest_idx = prev.as_ref().unwrap().index_of(&rest).unwrap();
                let rest_img = &lower.as_ref().unwrap()[rest_idx];
                poly_mul(m, 1, &self.images[i], d - 1, rest_img)
            })
            .collect();
        QMatrix::from_columns(self.dim(d), &cols)
    }

    /// Inclusion `(A/VA)_d -> A_d` sending a free-variable monomial to itself.
    pub fn lift_matrix(&self, d: usize) -> QMatrix {
        let qb = self.basis(d);
        let full = monomials(self.n, d);
        let cols: Vec<SparseVec> = qb
            .monomials()
            .iter()
            .map(|m| {
                let mut e = vec![0u32; self.n];
                for (k, &v) in self.free.iter().enumerate() {
                    e[v] = m[k];
                }
                SparseVec::unit(full.index_of(&e).unwrap())
            })
            .collect();
        QMatrix::from_columns(full.len(), &cols)
    }

    /// Multiplication by a linear form, `(A/VA)_d -> (A/VA)_{d+1}`.
    pub fn multiply_matrix(&self, f: &LinearForm, d: usize) -> QMatrix {
        let fr = self.reduce_linear(f);
        let m = self.nvars();
        let cols: Vec<SparseVec> = (0..self.dim(d)).map(|j| poly_mul(m, d, &SparseVec::unit(j), 1, &fr)).collect();
        QMatrix::from_columns(self.dim(d + 1), &cols)
    }

    /// Reduces a degree-`d` polynomial of the full ring.
    pub fn reduce(&self, d: usize, poly: &SparseVec) -> SparseVec {
        self.reduce_matrix(d).apply(poly)
    }

    pub fn format(&self, d: usize, poly: &SparseVec) -> String {
        format_poly(&self.basis(d), poly, &self.free)
    }
}

type QuotientCache = Mutex<HashMap<(usize, Vec<LinearForm>), Arc<QuotientRing>>>;

/// Shared quotient ring for the span of `forms`; equal spans share one instance.
pub fn quotient_ring(n: usize, forms: &[LinearForm]) -> Arc<QuotientRing> {
    static CACHE: OnceLock<QuotientCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let q = QuotientRing::new(n, forms);
    let key = (n, q.forms.clone());
    let mut guard = cache.lock().unwrap();
    guard.entry(key).or_insert_with(|| Arc::new(q)).clone()
}

/// The edge ring `A_L = A / alpha A` of a single nonzero form. Its pivot is
/// the largest index with nonzero coefficient.
pub fn edge_ring(alpha: &LinearForm) -> Arc<QuotientRing> {
    assert!(!alpha.is_zero(), "edge direction must be nonzero");
    quotient_ring(alpha.nvars(), std::slice::from_ref(alpha))
}
