#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace focalkit {

/// Point or direction in E^{m+1}.
using VectorN = Eigen::VectorXd;
using MatrixN = Eigen::MatrixXd;

/// Dense symmetric matrix. Construction symmetrizes (A + A^T) / 2 and rejects
/// non-square or non-finite input.
class SymMatrix {
 public:
  explicit SymMatrix(const MatrixN& entries);

  Eigen::Index size() const { return entries_.rows(); }
  const MatrixN& entries() const { return entries_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

 private:
  MatrixN entries_;
};

bool all_finite(const VectorN& v);

struct GramSchmidtResult {
  std::vector<VectorN> orthogonal;  // not normalized
  std::vector<double> norms;
};

/// Modified Gram-Schmidt. Output vector i spans the same flag as inputs 0..i.
/// Throws degenerate_flag (index = 1-based step alpha) when
/// |v_alpha| < rank_tolerance * |v_1|^alpha.
GramSchmidtResult gram_schmidt(std::span<const VectorN> vectors, double rank_tolerance = 1e-8);

/// In-place modified Gram-Schmidt normalization of an (assumed full rank) frame.
void orthonormalize(std::vector<VectorN>& frame);

/// max |<f_i, f_j> - delta_ij|
double orthonormality_error(std::span<const VectorN> frame);

struct SymmetricEigen {
  VectorN values;   // ascending
  MatrixN vectors;  // column i pairs with values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations, at most `max_sweeps` sweeps.
SymmetricEigen jacobi_eigen(const SymMatrix& m, int max_sweeps = 100);

struct Eigenpair {
  double value;
  VectorN vector;
};

Eigenpair smallest_eigenpair(const SymMatrix& m);

/// Gaussian elimination with partial pivoting.
VectorN solve_linear(const MatrixN& a, const VectorN& b);

}  // namespace focalkit
