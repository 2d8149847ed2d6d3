//! Sparse exact linear algebra: vectors, matrices, and an incremental
//! reduced row echelon form that backs every kernel, image, and membership
//! computation in the crate.

use std::collections::BTreeMap;

use super::rational::Rational;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from unsorted `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, v) in pairs {
            if v.is_zero() {
                continue;
            }
            let slot = map.entry(i).or_insert(Rational::ZERO);
            *slot += &v;
        }
        SparseVec { entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    /// Unit vector `e_i`.
    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Rational::ONE)] }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::ZERO; len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rational)> {
        self.entries.iter()
    }

    pub fn leading(&self) -> Option<&(usize, Rational)> {
        self.entries.first()
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// Returns `self + c * other`.
    pub fn axpy(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let mut acc = Rational::ZERO;
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += &(x * y);
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Shifts every index by `offset` (block embedding).
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect() }
    }

    /// Entries with index in `[start, start + len)`, re-based to zero.
    pub fn slice(&self, start: usize, len: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= start && *i < start + len)
                .map(|(i, v)| (i - start, v.clone()))
                .collect(),
        }
    }

    /// Concatenates blocks laid out consecutively.
    pub fn concat<'a>(blocks: impl IntoIterator<Item = (&'a SparseVec, usize)>) -> SparseVec {
        let mut entries = Vec::new();
        let mut offset = 0;
        for (b, len) in blocks {
            entries.extend(b.entries.iter().map(|(i, v)| (i + offset, v.clone())));
            offset += len;
        }
        SparseVec { entries }
    }
}

/// Sparse rational matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl QMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        QMatrix { nrows, ncols, rows: vec![SparseVec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix { nrows: n, ncols: n, rows: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.iter().all(|(i, _)| *i < ncols)));
        QMatrix { nrows: rows.len(), ncols, rows }
    }

    /// Builds from column vectors.
    pub fn from_columns(nrows: usize, cols: &[SparseVec]) -> Self {
        let mut pairs: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nrows];
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter() {
                pairs[*i].push((j, v.clone()));
            }
        }
        QMatrix {
            nrows,
            ncols: cols.len(),
            rows: pairs.into_iter().map(|p| SparseVec { entries: p }).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        QMatrix::from_rows(ncols, rows.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i].get(j)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(SparseVec::nnz).sum()
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_columns(self.ncols, &self.rows)
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().rows
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(
            self.rows
                .iter()
                .enumerate()
                .map(|(i, r)| (i, r.dot(v)))
                .filter(|(_, x)| !x.is_zero()),
        )
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch in product");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = SparseVec::new();
                for (k, v) in r.iter() {
                    acc = acc.axpy(v, &rhs.rows[*k]);
                }
                acc
            })
            .collect();
        QMatrix { nrows: self.nrows, ncols: rhs.ncols, rows }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        QMatrix { nrows: rows.len(), ncols: self.ncols, rows }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.ncols);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e.rank()
    }
}

/// Incrementally maintained reduced row echelon form.
///
/// Every stored row has a leading 1 in its pivot column and no entries in
/// any other row's pivot column, so the stored basis of a subspace depends
/// only on the subspace and the column order.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn from_vectors(ncols: usize, vs: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new(ncols);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Remainder of `v` after eliminating all pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        // Stored rows carry no foreign pivots, so one pass over the pivot
        // entries of the input is enough.
        for (col, coeff) in v.iter() {
            if let Some(r) = self.pivot_row[*col] {
                out = out.axpy(&(-coeff), &self.rows[r]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns the new pivot column, or `None` if `v`
    /// was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let r = self.reduce(&v);
        let (pivot, lead) = match r.leading() {
            Some((p, c)) => (*p, c.clone()),
            None => return None,
        };
        let r = r.scale(&lead.recip());
        for row in self.rows.iter_mut() {
            let c = row.get(pivot);
            if !c.is_zero() {
                *row = row.axpy(&(-c), &r);
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(r);
        Some(pivot)
    }

    /// Basis rows sorted by pivot column.
    pub fn basis(&self) -> Vec<SparseVec> {
        let mut out: Vec<SparseVec> = Vec::with_capacity(self.rows.len());
        for p in 0..self.ncols {
            if let Some(r) = self.pivot_row[p] {
                out.push(self.rows[r].clone());
            }
        }
        out
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&p| self.pivot_row[p].is_some()).collect()
    }

    /// Basis of `{x : row . x = 0 for every stored row}`.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let mut free_entries: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.ncols];
        for row in &self.rows {
            let p = row.leading().expect("stored rows are nonzero").0;
            for (c, v) in row.iter().skip(1) {
                free_entries[*c].push((p, -v));
            }
        }
        (0..self.ncols)
            .filter(|&c| self.pivot_row[c].is_none())
            .map(|c| {
                let mut e = std::mem::take(&mut free_entries[c]);
                e.push((c, Rational::ONE));
                SparseVec::from_pairs(e)
            })
            .collect()
    }

    /// Solves `sum_k x_k * basis_k = v` against the pivot-sorted basis;
    /// `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        let pivots = self.pivots();
        Some(pivots.iter().map(|p| v.get(*p)).collect())
    }
}

/// Right kernel basis of `m`.
pub fn kernel_basis(m: &QMatrix) -> Vec<SparseVec> {
    Echelon::from_vectors(m.ncols(), m.rows().iter().cloned()).null_space()
}

/// Reduced echelon basis of the column space of `m`.
pub fn image_basis(m: &QMatrix) -> Vec<SparseVec> {
    Echelon::from_vectors(m.nrows(), m.columns()).basis()
}

/// Basis of the intersection of two subspaces of the same ambient space.
pub fn intersect(a: &Echelon, b: &Echelon) -> Echelon {
    assert_eq!(a.ncols(), b.ncols());
    // Vectors in the annihilator of a + annihilator of b cut out a ∩ b.
    let mut constraints = Echelon::new(a.ncols());
    for v in a.null_space().into_iter().chain(b.null_space()) {
        constraints.insert(v);
    }
    Echelon::from_vectors(a.ncols(), constraints.null_space())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(kernel_basis(&QMatrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_difference_row() {
        let m = QMatrix::from_dense(&[vec![q(1), q(-1)]]);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![SparseVec::from_dense(&[q(1), q(1)])]);
    }

    #[test]
    fn image_examples() {
        assert!(image_basis(&QMatrix::zeros(3, 2)).is_empty());
        let m = QMatrix::from_dense(&[vec![q(1)], vec![q(2)]]);
        assert_eq!(image_basis(&m), vec![SparseVec::from_dense(&[q(1), q(2)])]);
    }

    #[test]
    fn echelon_is_canonical() {
        let a = SparseVec::from_dense(&[q(1), q(2), q(3)]);
        let b = SparseVec::from_dense(&[q(0), q(1), q(1)]);
        let e1 = Echelon::from_vectors(3, [a.clone(), b.clone()]);
        let e2 = Echelon::from_vectors(3, [b.axpy(&q(5), &a), a.scale(&q(-2))]);
        assert_eq!(e1.basis(), e2.basis());
    }

    #[test]
    fn intersection_of_planes() {
        let e1 = Echelon::from_vectors(3, [SparseVec::unit(0), SparseVec::unit(1)]);
        let e2 = Echelon::from_vectors(3, [SparseVec::unit(1), SparseVec::unit(2)]);
        assert_eq!(intersect(&e1, &e2).basis(), vec![SparseVec::unit(1)]);
    }

    fn matrix_strategy(r: usize, c: usize) -> impl Strategy<Value = QMatrix> {
        // Mostly zeros, small numerators and denominators.
        proptest::collection::vec(
            proptest::collection::vec(
                prop_oneof![3 => Just((0i64, 1i64)), 2 => (-4i64..5, 1i64..4)],
                c,
            ),
            r,
        )
        .prop_map(|rows| {
            QMatrix::from_dense(
                &rows
                    .into_iter()
                    .map(|row| row.into_iter().map(|(n, d)| Rational::new(n, d)).collect())
                    .collect::<Vec<_>>(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn rank_nullity(m in matrix_strategy(20, 30)) {
            let k = kernel_basis(&m);
            prop_assert_eq!(k.len() + image_basis(&m).len(), 30);
            for v in &k {
                prop_assert!(m.apply(v).is_zero());
            }
        }

        #[test]
        fn image_of_product_lies_in_image(a in matrix_strategy(6, 5), b in matrix_strategy(5, 4)) {
            let ab = a.mul(&b);
            let img_a = Echelon::from_vectors(6, a.columns());
            for v in image_basis(&ab) {
                prop_assert!(img_a.contains(&v));
            }
        }
    }
}
