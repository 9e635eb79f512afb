//! Dense linear algebra over a prime field.

use super::field::PrimeField;

pub(crate) type Row = Vec<u8>;

/// Brings `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Row>, f: PrimeField) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(found) = (top..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(top, found);
        let inv = f.inv(rows[top][col]);
        for x in rows[top].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[top].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != top && row[col] != 0 {
                let c = row[col];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(c, p));
                }
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    pivots
}

pub(crate) fn rank(rows: &[Row], f: PrimeField) -> usize {
    let mut rows = rows.to_vec();
    rref(&mut rows, f).len()
}

/// Basis of `{v : A v = 0}` where `A` has the given rows.
pub(crate) fn kernel(rows: &[Row], ncols: usize, f: PrimeField) -> Vec<Row> {
    let mut a = rows.to_vec();
    let pivots = rref(&mut a, f);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u8; ncols];
        v[free] = 1;
        for (row, &p) in a.iter().zip(&pivots) {
            v[p] = f.neg(row[free]);
        }
        basis.push(v);
    }
    basis
}

/// A subspace of `F_q^ambient`, stored by its unique reduced echelon basis.
/// The derived order compares echelon bases lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Subspace {
    rows: Vec<Row>,
    pivots: Vec<usize>,
    ambient: usize,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            rows: Vec::new(),
            pivots: Vec::new(),
            ambient,
        }
    }

    pub fn span(mut rows: Vec<Row>, ambient: usize, f: PrimeField) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = rref(&mut rows, f);
        Subspace {
            rows,
            pivots,
            ambient,
        }
    }

    /// Trusts that `rows` is already in reduced echelon form.
    pub fn from_echelon(rows: Vec<Row>, pivots: Vec<usize>, ambient: usize) -> Self {
        Subspace {
            rows,
            pivots,
            ambient,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Row> {
        self.rows
    }

    /// `v` modulo the subspace, normalised to vanish on the pivot columns.
    pub fn reduce(&self, v: &[u8], f: PrimeField) -> Row {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u8], f: PrimeField) -> bool {
        self.reduce(v, f).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace, f: PrimeField) -> bool {
        other.dim() <= self.dim() && other.rows.iter().all(|r| self.contains(r, f))
    }

    pub fn with_vector(&self, v: Row, f: PrimeField) -> Self {
        let mut rows = self.rows.clone();
        rows.push(v);
        Subspace::span(rows, self.ambient, f)
    }

    /// Orthogonal complement for the standard pairing.
    pub fn orthogonal(&self, f: PrimeField) -> Self {
        let basis = kernel(&self.rows, self.ambient, f);
        Subspace::span(basis, self.ambient, f)
    }
}

/// Calls `visit` on every `d`-dimensional subspace of `F_q^n`, grouped by
/// pivot pattern in lexicographic order, fill-ins in odometer order.
pub(crate) fn for_each_subspace(
    d: usize,
    n: usize,
    f: PrimeField,
    mut visit: impl FnMut(Subspace),
) {
    if d > n {
        return;
    }
    for pivots in combinations(n, d) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                ((p + 1)..n)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let mut digits = vec![0u8; free.len()];
        loop {
            let mut rows = vec![vec![0u8; n]; d];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            for (&(i, c), &x) in free.iter().zip(&digits) {
                rows[i][c] = x;
            }
            visit(Subspace::from_echelon(rows, pivots.clone(), n));
            // odometer increment
            let mut pos = 0;
            while pos < digits.len() {
                digits[pos] += 1;
                if u32::from(digits[pos]) < f.q() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
    }
}

/// Number of free entries in the reduced echelon pattern with these pivots.
pub(crate) fn free_entries(pivots: &[usize], n: usize) -> usize {
    pivots
        .iter()
        .enumerate()
        .map(|(i, &p)| n - 1 - p - (pivots.len() - 1 - i))
        .sum()
}

/// All `d`-subsets of `0..n`, each sorted, in lexicographic order.
pub(crate) fn combinations(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..=(n - (d - cur.len())) {
            cur.push(i);
            rec(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d <= n {
        rec(0, n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Floating estimate of the number of `d`-subspaces of `F_q^n`, used only
/// for feasibility guards.
pub(crate) fn subspace_count_estimate(d: usize, n: usize, q: u32) -> f64 {
    if d > n {
        return 0.0;
    }
    let q = f64::from(q);
    (0..d)
        .map(|i| (q.powi((n - i) as i32) - 1.0) / (q.powi((d - i) as i32) - 1.0))
        .product()
}
