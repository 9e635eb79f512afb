//! Operator-stable subspaces of an ambient module.
//!
//! A codimension-`d` submodule `K` is recovered from its annihilator
//! `W = K^perp`, a `d`-dimensional subspace of the dual stable under the
//! transposed operators. Every stable `W` of dimension `j + 1` contains a
//! stable `W'` of dimension `j` (for instance any hyperplane containing
//! `m W`), so the stable subspaces are generated level by level from `0`:
//! the one-step extensions of `W` are `W + <v>` for the lines `<v>` of
//! `S(W)/W`, where `S(W) = { v : x_a^T v in W for all a }`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quotmotives::HilbertSamuelFunction;

use super::ambient::FiniteModulePresentation;
use super::linalg::{for_each_subspace, kernel, rank, subspace_count_estimate, Row, Subspace};

/// Cap on the number of stable subspaces held across all levels.
pub const NODE_LIMIT: usize = 2_000_000;
/// Cap on candidate subspaces for the exhaustive filter.
pub const EXHAUSTIVE_LIMIT: f64 = 1e7;

/// A submodule `K` given by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SubmoduleWitness {
    basis: Vec<Row>,
    codim: usize,
}

impl SubmoduleWitness {
    pub(crate) fn from_subspace(k: Subspace) -> Self {
        let codim = k.ambient() - k.dim();
        SubmoduleWitness {
            basis: k.into_rows(),
            codim,
        }
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `x_a K ⊆ K` for every operator.
    pub fn is_stable(&self, m: &FiniteModulePresentation) -> bool {
        let f = m.field();
        let k = Subspace::span(self.basis.clone(), m.dimension(), f);
        self.basis
            .iter()
            .all(|v| (0..m.num_operators()).all(|a| k.contains(&m.apply(a, v), f)))
    }
}

/// `S(W)`: vectors whose images under every transposed operator lie in `W`.
fn extension_space(m: &FiniteModulePresentation, w: &Subspace) -> Subspace {
    let f = m.field();
    let dim = m.dimension();
    // column j of the constraint matrix is (x_a^T e_j mod W)_a
    let mut columns: Vec<Row> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut e = vec![0u8; dim];
        e[j] = 1;
        let mut col = Vec::with_capacity(dim * m.num_operators());
        for a in 0..m.num_operators() {
            col.extend(w.reduce(&m.apply_transpose(a, &e), f));
        }
        columns.push(col);
    }
    let nrows = dim * m.num_operators();
    let rows: Vec<Row> = (0..nrows)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    Subspace::span(kernel(&rows, dim, f), dim, f)
}

/// Vectors of `s` completing a basis of `w` to one of `s`.
fn complement(w: &Subspace, s: &Subspace, m: &FiniteModulePresentation) -> Vec<Row> {
    let f = m.field();
    let mut acc = w.clone();
    let mut out = Vec::new();
    for v in s.rows() {
        if !acc.contains(v, f) {
            acc = acc.with_vector(v.clone(), f);
            out.push(v.clone());
        }
    }
    out
}

/// Stable dual subspaces by dimension: entry `j` holds all stable `W` with
/// `dim W = j`, for `j = 0..=top`, each level sorted.
pub(crate) fn stable_dual_levels(
    m: &FiniteModulePresentation,
    top: usize,
) -> Result<Vec<Vec<Subspace>>> {
    let f = m.field();
    let dim = m.dimension();
    let top = top.min(dim);
    let mut levels: Vec<Vec<Subspace>> = vec![vec![Subspace::zero(dim)]];
    let mut total = 1usize;
    for _ in 0..top {
        let mut next = BTreeSet::new();
        for w in levels.last().expect("nonempty") {
            let s = extension_space(m, w);
            let comp = complement(w, &s, m);
            // lines of S(W)/W: coefficient vectors whose first nonzero entry is 1
            for lead in 0..comp.len() {
                let tail = comp.len() - lead - 1;
                let mut digits = vec![0u8; tail];
                loop {
                    let mut v = comp[lead].clone();
                    for (c, &x) in comp[lead + 1..].iter().zip(&digits) {
                        if x != 0 {
                            for (vi, &ci) in v.iter_mut().zip(c) {
                                *vi = f.add(*vi, f.mul(x, ci));
                            }
                        }
                    }
                    next.insert(w.with_vector(v, f));
                    let mut pos = 0;
                    while pos < tail {
                        digits[pos] += 1;
                        if u32::from(digits[pos]) < f.q() {
                            break;
                        }
                        digits[pos] = 0;
                        pos += 1;
                    }
                    if pos == tail {
                        break;
                    }
                }
            }
            if total + next.len() > NODE_LIMIT {
                return Err(Error::infeasible(
                    "stable subspace enumeration",
                    format!("> {}", total + next.len()),
                    NODE_LIMIT,
                ));
            }
        }
        total += next.len();
        levels.push(next.into_iter().collect());
    }
    Ok(levels)
}

fn sorted_witnesses(
    mut out: Vec<SubmoduleWitness>,
    m: &FiniteModulePresentation,
) -> Result<Vec<SubmoduleWitness>> {
    out.sort();
    if let Some(bad) = out.iter().find(|w| !w.is_stable(m)) {
        return Err(Error::InternalMismatch(format!(
            "enumerated subspace of codimension {} is not stable",
            bad.codim()
        )));
    }
    Ok(out)
}

/// All codimension-`codim` subspaces stable under every operator, in
/// canonical echelon order.
pub fn enumerate_submodules(
    m: &FiniteModulePresentation,
    codim: usize,
) -> Result<Vec<SubmoduleWitness>> {
    if codim > m.dimension() {
        return Ok(Vec::new());
    }
    let f = m.field();
    let levels = stable_dual_levels(m, codim)?;
    let out = levels[codim]
        .iter()
        .map(|w| SubmoduleWitness::from_subspace(w.orthogonal(f)))
        .collect();
    sorted_witnesses(out, m)
}

/// Same result as [`enumerate_submodules`] by filtering every subspace of the
/// right codimension. Only for small ambients; used as a cross-check.
pub fn enumerate_submodules_exhaustive(
    m: &FiniteModulePresentation,
    codim: usize,
) -> Result<Vec<SubmoduleWitness>> {
    let dim = m.dimension();
    if codim > dim {
        return Ok(Vec::new());
    }
    let f = m.field();
    let estimate = subspace_count_estimate(dim - codim, dim, f.q());
    if estimate > EXHAUSTIVE_LIMIT {
        return Err(Error::infeasible(
            "exhaustive subspace filter",
            format!("{estimate:.3e}"),
            EXHAUSTIVE_LIMIT,
        ));
    }
    let mut out = Vec::new();
    for_each_subspace(dim - codim, dim, f, |k| {
        let stable = k
            .rows()
            .iter()
            .all(|v| (0..m.num_operators()).all(|a| k.contains(&m.apply(a, v), f)));
        if stable {
            out.push(SubmoduleWitness::from_subspace(k));
        }
    });
    sorted_witnesses(out, m)
}

/// Hilbert–Samuel function of `T = M/K`: `h(i) = dim m^i T - dim m^{i+1} T`
/// with `dim m^i T = dim(m^i M + K) - dim K`.
pub fn hs_function_of(w: &SubmoduleWitness, m: &FiniteModulePresentation) -> HilbertSamuelFunction {
    let f = m.field();
    let dim = m.dimension();
    let power_dim = |i: usize| {
        let mut rows = w.basis.clone();
        for (j, &deg) in m.degrees().iter().enumerate() {
            if deg >= i {
                let mut e = vec![0u8; dim];
                e[j] = 1;
                rows.push(e);
            }
        }
        rank(&rows, f) - w.dim()
    };
    let dims: Vec<usize> = (0..=m.truncation()).map(power_dim).collect();
    let values = dims.windows(2).map(|p| (p[0] - p[1]) as u32).collect();
    HilbertSamuelFunction::new(values).expect("h(0) > 0 for a nonzero quotient")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fforacle::ambient::build_ambient;
    use crate::fforacle::field::PrimeField;

    fn f(q: u32) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn hs(v: &[u32]) -> HilbertSamuelFunction {
        HilbertSamuelFunction::new(v.to_vec()).unwrap()
    }

    #[test]
    fn colength_two_ideals_in_the_plane() {
        let m = build_ambient(2, 1, 2, f(2)).unwrap();
        let ws = enumerate_submodules(&m, 2).unwrap();
        assert_eq!(ws.len(), 3);
        for w in &ws {
            assert_eq!(w.dim(), 1);
            // each K is a line inside span(x, y)
            assert_eq!(w.basis()[0][0], 0);
            assert_eq!(hs_function_of(w, &m), hs(&[1, 1]));
        }
        let whole = enumerate_submodules(&m, 0).unwrap();
        assert_eq!(whole.len(), 1);
        assert_eq!(whole[0].dim(), 3);
    }

    #[test]
    fn colength_three_ideals_in_the_plane() {
        let m = build_ambient(2, 1, 3, f(2)).unwrap();
        assert_eq!(enumerate_submodules(&m, 3).unwrap().len(), 7);
        let m3 = build_ambient(2, 1, 3, f(3)).unwrap();
        assert_eq!(enumerate_submodules(&m3, 3).unwrap().len(), 13);
    }

    #[test]
    fn square_zero_quotient() {
        // K = m^2 + ... : T with m T = 0 has h = (d)
        let m = build_ambient(2, 1, 3, f(2)).unwrap();
        let ws = enumerate_submodules(&m, 3).unwrap();
        let square_zero: Vec<_> = ws
            .iter()
            .filter(|w| hs_function_of(w, &m) == hs(&[1, 2]))
            .collect();
        assert_eq!(square_zero.len(), 1);
        let m22 = build_ambient(2, 2, 2, f(2)).unwrap();
        let ws = enumerate_submodules(&m22, 2).unwrap();
        assert_eq!(
            ws.iter()
                .filter(|w| hs_function_of(w, &m22) == hs(&[2]))
                .count(),
            1
        );
    }

    #[test]
    fn agrees_with_exhaustive_filter() {
        for q in [2, 3] {
            for (n, r, k) in [(2, 1, 2), (2, 1, 3), (2, 2, 2), (3, 1, 2), (1, 2, 3)] {
                let m = build_ambient(n, r, k, f(q)).unwrap();
                for codim in 0..=m.dimension() {
                    let Ok(slow) = enumerate_submodules_exhaustive(&m, codim) else {
                        continue;
                    };
                    let fast = enumerate_submodules(&m, codim).unwrap();
                    assert_eq!(fast, slow, "n={n} r={r} k={k} q={q} codim={codim}");
                }
            }
        }
    }

    #[test]
    fn output_is_deterministic() {
        let m = build_ambient(2, 2, 2, f(3)).unwrap();
        let a = enumerate_submodules(&m, 3).unwrap();
        let b = enumerate_submodules(&m, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|p| p[0] < p[1]));
    }
}
