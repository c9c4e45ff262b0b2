use super::cone::RatCone;
use super::hnf;
use super::linalg;
use super::vector::RatVec;

/// A linear surjection `Q^source_dim -> Q^target_dim` given by its rows.
///
/// Built by [`quotient_by_span`], the rows are the Hermite normal form of a
/// lattice basis of `span(tau)^perp`, so the map is canonical for `tau` and
/// carries the lattice `N` onto the lattice `N(tau)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuotientMap {
    source_dim: usize,
    matrix: Vec<RatVec>,
}

impl QuotientMap {
    pub fn identity(dim: usize) -> Self {
        QuotientMap {
            source_dim: dim,
            matrix: (0..dim).map(|i| RatVec::unit(dim, i)).collect(),
        }
    }

    /// Rows must have length `source_dim` and be linearly independent.
    pub fn from_rows(source_dim: usize, matrix: Vec<RatVec>) -> Self {
        debug_assert!(matrix.iter().all(|r| r.dim() == source_dim));
        debug_assert_eq!(linalg::rank(&matrix, source_dim), matrix.len());
        QuotientMap { source_dim, matrix }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn rows(&self) -> &[RatVec] {
        &self.matrix
    }

    pub fn apply(&self, v: &RatVec) -> RatVec {
        RatVec::new(self.matrix.iter().map(|row| row.dot(v)).collect())
    }

    /// Basis of the kernel.
    pub fn kernel(&self) -> Vec<RatVec> {
        linalg::nullspace(&self.matrix, self.source_dim)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &QuotientMap) -> QuotientMap {
        assert_eq!(next.source_dim, self.target_dim());
        let rows = next
            .matrix
            .iter()
            .map(|r| {
                (0..r.dim()).fold(RatVec::zeros(self.source_dim), |acc, i| {
                    acc.add_scaled(&r[i], &self.matrix[i])
                })
            })
            .collect();
        QuotientMap {
            source_dim: self.source_dim,
            matrix: rows,
        }
    }
}

/// The projection `N_R -> N_R / span(tau)`.
pub fn quotient_by_span(tau: &RatCone) -> QuotientMap {
    let dim = tau.dim();
    let span: Vec<_> = tau
        .span_basis()
        .iter()
        .map(|v| v.to_integers().expect("canonical basis is integral"))
        .collect();
    let rows = hnf::integer_kernel(&span, dim);
    QuotientMap {
        source_dim: dim,
        matrix: rows.iter().map(|r| RatVec::from_integers(r)).collect(),
    }
}
