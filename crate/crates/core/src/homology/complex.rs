use rayon::prelude::*;
use serde::Serialize;

use crate::check::IdentityCheck;
use crate::error::{check_budget, Result};
use crate::scalar::FieldScalar;

use super::algebra::Algebra;
use super::linalg::{axpy, rank, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    /// Signed cyclic coinvariants with the Hochschild boundary `b`.
    Connes,
    /// Full tensor powers with `b'`, the boundary without the wraparound term.
    Bar,
}

/// Nonnegatively graded complex over a field. Degree `n` has basis
/// `labels[n]` (tensor words), and `boundaries[n][j]` is the image of basis
/// vector `j` of degree `n` in degree `n - 1`.
#[derive(Clone, Debug)]
pub struct ChainComplex<F> {
    pub kind: ComplexKind,
    pub labels: Vec<Vec<Vec<usize>>>,
    pub boundaries: Vec<Vec<SparseVec<F>>>,
}

/// All words of length `len` over `0..d`, lexicographic.
fn words(d: usize, len: usize) -> Vec<Vec<usize>> {
    let total = d.pow(len as u32);
    (0..total)
        .map(|mut x| {
            let mut w = vec![0; len];
            for slot in w.iter_mut().rev() {
                *slot = x % d;
                x /= d;
            }
            w
        })
        .collect()
}

fn word_index(d: usize, w: &[usize]) -> usize {
    w.iter().fold(0, |acc, &x| acc * d + x)
}

/// `sum_{i < n} (-1)^i a_0 ... a_i a_{i+1} ... a_n`, plus `(-1)^n a_n a_0 ... a_{n-1}` when `wrap`.
fn hochschild<F: FieldScalar>(a: &Algebra<F>, w: &[usize], wrap: bool) -> Vec<(Vec<usize>, F)> {
    let n = w.len() - 1;
    let sign = |i: usize| {
        if i.is_multiple_of(2) {
            F::one()
        } else {
            F::zero() - F::one()
        }
    };
    let mut out = Vec::new();
    for i in 0..n {
        for (k, c) in a.basis_product(w[i], w[i + 1]) {
            let mut v = Vec::with_capacity(n);
            v.extend_from_slice(&w[..i]);
            v.push(k);
            v.extend_from_slice(&w[i + 2..]);
            out.push((v, sign(i) * c));
        }
    }
    if wrap && n > 0 {
        for (k, c) in a.basis_product(w[n], w[0]) {
            let mut v = Vec::with_capacity(n);
            v.push(k);
            v.extend_from_slice(&w[1..n]);
            out.push((v, sign(n) * c));
        }
    }
    out
}

/// Coinvariants of `lambda(a_0 ... a_n) = (-1)^n a_n a_0 ... a_{n-1}` on words of length `n + 1`.
struct Coinvariants {
    d: usize,
    reps: Vec<Vec<usize>>,
    /// Word index -> basis index of its orbit and the sign `[w] = s [rep]`; `None` for classes that vanish.
    class: Vec<Option<(usize, bool)>>,
}

impl Coinvariants {
    fn new(d: usize, n: usize) -> Self {
        let all = words(d, n + 1);
        let mut class = vec![None; all.len()];
        let mut reps = Vec::new();
        let mut rep_index = std::collections::HashMap::new();
        for w in &all {
            let (min, negative, vanishes) = Self::orbit(w, n);
            if vanishes {
                continue;
            }
            let next = reps.len();
            let r = *rep_index.entry(min.clone()).or_insert_with(|| {
                reps.push(min.clone());
                next
            });
            class[word_index(d, w)] = Some((r, negative));
        }
        Coinvariants { d, reps, class }
    }

    /// Least rotation `m` with `[w] = ±[m]`, the sign, and whether the class is zero.
    fn orbit(w: &[usize], n: usize) -> (Vec<usize>, bool, bool) {
        let len = n + 1;
        let mut best = w.to_vec();
        let mut best_negative = false;
        let mut vanishes = false;
        for j in 1..len {
            // lambda^j w = (-1)^(n j) rot_j(w), and [w] = [lambda^j w].
            let rotated: Vec<usize> = (0..len).map(|i| w[(i + len - j) % len]).collect();
            let negative = (n * j) % 2 == 1;
            if rotated == w && negative {
                vanishes = true;
            }
            if rotated < best {
                best = rotated;
                best_negative = negative;
            }
        }
        (best, best_negative, vanishes)
    }

    fn project<F: FieldScalar>(&self, terms: Vec<(Vec<usize>, F)>) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (w, c) in terms {
            if let Some((r, negative)) = self.class[word_index(self.d, &w)] {
                let c = if negative { F::zero() - c } else { c };
                axpy(&mut out, &F::one(), &[(r, c)].into());
            }
        }
        out
    }
}

fn collect_terms<F: FieldScalar>(d: usize, terms: Vec<(Vec<usize>, F)>) -> SparseVec<F> {
    let mut out = SparseVec::new();
    for (w, c) in terms {
        axpy(&mut out, &F::one(), &[(word_index(d, &w), c)].into());
    }
    out
}

impl<F: FieldScalar> ChainComplex<F> {
    /// Connes' complex in degrees `0..=n_max`.
    pub fn connes(a: &Algebra<F>, n_max: usize, tensor_budget: usize) -> Result<Self> {
        let d = a.dim();
        check_budget(d, n_max + 1, tensor_budget as u128)?;
        let spaces: Vec<Coinvariants> = (0..=n_max).map(|n| Coinvariants::new(d, n)).collect();
        let boundaries = (0..=n_max)
            .map(|n| {
                spaces[n]
                    .reps
                    .par_iter()
                    .map(|w| {
                        if n == 0 {
                            SparseVec::new()
                        } else {
                            spaces[n - 1].project(hochschild(a, w, true))
                        }
                    })
                    .collect()
            })
            .collect();
        let labels = spaces.into_iter().map(|s| s.reps).collect();
        Ok(ChainComplex {
            kind: ComplexKind::Connes,
            labels,
            boundaries,
        })
    }

    /// Bar complex `A^{⊗ n+1}` with `b'`, degrees `0..=n_max`.
    pub fn bar(a: &Algebra<F>, n_max: usize, tensor_budget: usize) -> Result<Self> {
        let d = a.dim();
        check_budget(d, n_max + 1, tensor_budget as u128)?;
        let labels: Vec<Vec<Vec<usize>>> = (0..=n_max).map(|n| words(d, n + 1)).collect();
        let boundaries = labels
            .iter()
            .enumerate()
            .map(|(n, ws)| {
                ws.par_iter()
                    .map(|w| {
                        if n == 0 {
                            SparseVec::new()
                        } else {
                            collect_terms(d, hochschild(a, w, false))
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(ChainComplex {
            kind: ComplexKind::Bar,
            labels,
            boundaries,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    /// `d_{n-1} d_n = 0` in every degree, exactly.
    pub fn square_zero_check(&self) -> IdentityCheck {
        let name = match self.kind {
            ComplexKind::Connes => "b b = 0",
            ComplexKind::Bar => "b' b' = 0",
        };
        for n in 2..=self.top_degree() {
            for (j, col) in self.boundaries[n].iter().enumerate() {
                let mut acc = SparseVec::new();
                for (&i, c) in col {
                    axpy(&mut acc, c, &self.boundaries[n - 1][i]);
                }
                if !acc.is_empty() {
                    return IdentityCheck::new(
                        name,
                        Some(format!("degree {n}, basis word {:?}", self.labels[n][j])),
                    );
                }
            }
        }
        IdentityCheck::pass(name)
    }

    pub fn boundary_ranks(&self) -> Vec<usize> {
        self.boundaries
            .par_iter()
            .map(|cols| rank(cols.iter().cloned()))
            .collect()
    }

    /// `dim H_n = dim C_n - rank d_n - rank d_{n+1}`; the top degree is the kernel of its boundary.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks = self.boundary_ranks();
        let dims = self.dims();
        (0..dims.len())
            .map(|n| dims[n] - ranks[n] - ranks.get(n + 1).copied().unwrap_or(0))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::RationalAlgebra;

    fn q() -> RationalAlgebra {
        RationalAlgebra::builtin("Q").unwrap()
    }

    #[test]
    fn connes_dims_of_q() {
        let c = ChainComplex::connes(&q(), 4, 2000).unwrap();
        assert_eq!(c.dims(), vec![1, 0, 1, 0, 1]);
        assert!(c.boundaries.iter().flatten().all(|v| v.is_empty()));
    }

    #[test]
    fn bar_of_q_alternates() {
        let c = ChainComplex::bar(&q(), 3, 2000).unwrap();
        let nonzero: Vec<bool> = c.boundaries.iter().map(|b| !b[0].is_empty()).collect();
        assert_eq!(nonzero, vec![false, true, false, true]);
    }

    #[test]
    fn square_zero_has_zero_differentials() {
        let a = RationalAlgebra::builtin("sqzero1").unwrap();
        for c in [
            ChainComplex::connes(&a, 3, 2000).unwrap(),
            ChainComplex::bar(&a, 3, 2000).unwrap(),
        ] {
            assert!(c.boundaries.iter().flatten().all(|v| v.is_empty()));
        }
    }

    #[test]
    fn truncated_homology() {
        let c = ChainComplex::connes(&q(), 2, 2000).unwrap();
        assert_eq!(c.homology_dims(), vec![1, 0, 1]);
    }

    #[test]
    fn budget_enforced() {
        let a = RationalAlgebra::builtin("M2Q").unwrap();
        assert!(ChainComplex::bar(&a, 5, 2000).is_err());
    }

    #[test]
    fn orbit_signs() {
        // n = 1: lambda(a b) = -(b a), so [a a] = 0 and [b a] = -[a b].
        assert_eq!(Coinvariants::orbit(&[0, 0], 1), (vec![0, 0], false, true));
        assert_eq!(Coinvariants::orbit(&[1, 0], 1), (vec![0, 1], true, false));
        // n = 2: rotations carry no sign.
        assert_eq!(
            Coinvariants::orbit(&[2, 0, 1], 2),
            (vec![0, 1, 2], false, false)
        );
    }
}
