use crate::error::{Error, Result};

use super::field::PrimeField;
use super::linalg::{Row, Subspace};

/// Ambient dimensions above this are refused outright.
pub const MAX_AMBIENT_DIMENSION: usize = 64;

/// `(R/m^k)^r` over `F_q`, `R = F_q[x_1..x_n]`, with the multiplication
/// operators `x_1..x_n`.
///
/// Basis: pairs (copy, monomial) ordered by total degree, then copy, then
/// monomial in descending lexicographic order of exponents, so for
/// `n = 2, r = 1, k = 2` the basis is `(1, x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModulePresentation {
    field: PrimeField,
    n: usize,
    r: usize,
    k: usize,
    labels: Vec<(usize, Vec<u32>)>,
    degrees: Vec<usize>,
    // targets[a][j]: index of x_a * e_j, or None when it lands in m^k
    targets: Vec<Vec<Option<usize>>>,
}

fn monomials_of_degree(n: usize, t: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, vars_left: usize, t: u32, out: &mut Vec<Vec<u32>>) {
        if vars_left == 1 {
            prefix.push(t);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=t).rev() {
            prefix.push(e);
            rec(prefix, vars_left - 1, t - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, t, &mut out);
    out
}

/// `r * C(n + k - 1, n)`, saturating.
pub fn ambient_dimension(n: usize, r: usize, k: usize) -> usize {
    let monomials = (1..=n).fold(1u128, |acc, i| {
        acc * (k + n - 1 - (i - 1)) as u128 / i as u128
    });
    let monomials = if k == 0 { 0 } else { monomials };
    usize::try_from(monomials.saturating_mul(r as u128)).unwrap_or(usize::MAX)
}

/// Builds `(R/m^k)^r` with its operators.
pub fn build_ambient(
    n: usize,
    r: usize,
    k: usize,
    field: PrimeField,
) -> Result<FiniteModulePresentation> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one variable".into()));
    }
    let dim = ambient_dimension(n, r, k);
    if dim > MAX_AMBIENT_DIMENSION {
        return Err(Error::infeasible(
            format!("ambient (R/m^{k})^{r} in {n} variables"),
            dim,
            MAX_AMBIENT_DIMENSION,
        ));
    }
    let mut labels = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    for t in 0..k as u32 {
        let monos = monomials_of_degree(n, t);
        for copy in 0..r {
            for m in &monos {
                labels.push((copy, m.clone()));
                degrees.push(t as usize);
            }
        }
    }
    let targets = (0..n)
        .map(|a| {
            labels
                .iter()
                .map(|(copy, m)| {
                    let mut shifted = m.clone();
                    shifted[a] += 1;
                    labels.iter().position(|(c, e)| c == copy && *e == shifted)
                })
                .collect()
        })
        .collect();
    Ok(FiniteModulePresentation {
        field,
        n,
        r,
        k,
        labels,
        degrees,
        targets,
    })
}

impl FiniteModulePresentation {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    pub fn num_operators(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn truncation(&self) -> usize {
        self.k
    }

    /// Total degree of each basis vector.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Human-readable basis labels such as `x*y` or `e2*x^2`.
    pub fn basis_labels(&self) -> Vec<String> {
        const NAMES: [&str; 3] = ["x", "y", "z"];
        self.labels
            .iter()
            .map(|(copy, m)| {
                let mut factors: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let name = NAMES
                            .get(i)
                            .map_or_else(|| format!("x{}", i + 1), |s| s.to_string());
                        if e == 1 {
                            name
                        } else {
                            format!("{name}^{e}")
                        }
                    })
                    .collect();
                if self.r > 1 {
                    factors.insert(0, format!("e{}", copy + 1));
                }
                if factors.is_empty() {
                    "1".into()
                } else {
                    factors.join("*")
                }
            })
            .collect()
    }

    /// `dim m^i M` for `i = 0..=k`: the grading filtration.
    pub fn grading_filtration(&self) -> Vec<usize> {
        (0..=self.k)
            .map(|i| self.degrees.iter().filter(|&&d| d >= i).count())
            .collect()
    }

    /// The matrix of `x_a`, as rows: entry `[i][j]` is the `e_i`-coefficient
    /// of `x_a e_j`.
    pub fn operator(&self, a: usize) -> Vec<Row> {
        let dim = self.dimension();
        let mut m = vec![vec![0u8; dim]; dim];
        for (j, t) in self.targets[a].iter().enumerate() {
            if let Some(i) = t {
                m[*i][j] = 1;
            }
        }
        m
    }

    /// `x_a v`.
    pub fn apply(&self, a: usize, v: &[u8]) -> Row {
        let mut out = vec![0u8; v.len()];
        for (j, t) in self.targets[a].iter().enumerate() {
            if let Some(i) = t {
                out[*i] = self.field.add(out[*i], v[j]);
            }
        }
        out
    }

    /// `x_a^T v`: the dual action.
    pub fn apply_transpose(&self, a: usize, v: &[u8]) -> Row {
        self.targets[a]
            .iter()
            .map(|t| t.map_or(0, |i| v[i]))
            .collect()
    }

    /// Checks that the operators commute and that every product of `k` of
    /// them vanishes, using the matrices rather than the monomial structure.
    /// Also checks the filtration `m^i M` against the degrees.
    pub fn check_invariants(&self) -> Result<()> {
        let f = self.field;
        let dim = self.dimension();
        let mats: Vec<Vec<Row>> = (0..self.n).map(|a| self.operator(a)).collect();
        let mul = |x: &[Row], y: &[Row]| -> Vec<Row> {
            (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| (0..dim).fold(0u8, |acc, l| f.add(acc, f.mul(x[i][l], y[l][j]))))
                        .collect()
                })
                .collect()
        };
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if mul(&mats[a], &mats[b]) != mul(&mats[b], &mats[a]) {
                    return Err(Error::InternalMismatch(format!(
                        "operators x{} and x{} do not commute",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        // m^{i+1} M = sum_a x_a m^i M
        let mut image = Subspace::span(
            (0..dim)
                .map(|j| {
                    let mut e = vec![0u8; dim];
                    e[j] = 1;
                    e
                })
                .collect(),
            dim,
            f,
        );
        let expected = self.grading_filtration();
        for (i, &want) in expected.iter().enumerate() {
            if image.dim() != want {
                return Err(Error::InternalMismatch(format!(
                    "dim m^{i} M is {} but the grading predicts {want}",
                    image.dim()
                )));
            }
            let next: Vec<Row> = image
                .rows()
                .iter()
                .flat_map(|v| (0..self.n).map(move |a| (a, v)))
                .map(|(a, v)| self.apply(a, v))
                .collect();
            image = Subspace::span(next, dim, f);
        }
        if image.dim() != 0 {
            return Err(Error::InternalMismatch(
                "operators are not nilpotent of order k".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fforacle::linalg::rank;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn dimensions() {
        let f = f2();
        assert_eq!(build_ambient(2, 1, 2, f).unwrap().dimension(), 3);
        assert_eq!(build_ambient(2, 1, 3, f).unwrap().dimension(), 6);
        assert_eq!(build_ambient(2, 2, 2, f).unwrap().dimension(), 6);
        assert_eq!(build_ambient(3, 2, 3, f).unwrap().dimension(), 20);
        assert_eq!(ambient_dimension(2, 2, 3), 12);
        assert_eq!(ambient_dimension(4, 1, 0), 0);
        assert!(matches!(
            build_ambient(3, 3, 6, f),
            Err(Error::InfeasibleSize { .. })
        ));
    }

    #[test]
    fn small_ambient_basis_and_operators() {
        let m = build_ambient(2, 1, 2, f2()).unwrap();
        assert_eq!(m.basis_labels(), vec!["1", "x", "y"]);
        assert_eq!(m.grading_filtration(), vec![3, 2, 0]);
        for a in 0..2 {
            assert!(rank(&m.operator(a), m.field()) <= 1);
        }
        assert_eq!(m.apply(0, &[1, 0, 0]), vec![0, 1, 0]);
        assert_eq!(m.apply_transpose(1, &[0, 0, 1]), vec![1, 0, 0]);
        let two = build_ambient(2, 2, 3, f2()).unwrap();
        assert_eq!(
            two.basis_labels(),
            vec![
                "e1", "e2", "e1*x", "e1*y", "e2*x", "e2*y", "e1*x^2", "e1*x*y", "e1*y^2", "e2*x^2",
                "e2*x*y", "e2*y^2"
            ]
        );
    }

    #[test]
    fn invariants_hold() {
        for q in [2, 3, 5] {
            let f = PrimeField::new(q).unwrap();
            for (n, r, k) in [(1, 1, 4), (2, 1, 3), (2, 2, 3), (3, 1, 3), (3, 2, 2)] {
                build_ambient(n, r, k, f)
                    .unwrap()
                    .check_invariants()
                    .unwrap();
            }
        }
    }
}
