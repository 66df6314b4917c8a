#include "focalkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "focalkit/errors.hpp"
#include "focalkit/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace focalkit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::degenerate_flag: return "DegenerateFlag";
    case ErrorCode::convergence_failure: return "ConvergenceFailure";
    case ErrorCode::singular_system: return "SingularSystem";
    case ErrorCode::out_of_domain: return "OutOfDomain";
    case ErrorCode::order_unsupported: return "OrderUnsupported";
    case ErrorCode::invalid_profile: return "InvalidProfile";
    case ErrorCode::non_orthonormal_frame: return "NonOrthonormalFrame";
    case ErrorCode::bad_parameters: return "BadParameters";
    case ErrorCode::reduced_order: return "ReducedOrder";
    case ErrorCode::division_guard: return "DivisionGuard";
    case ErrorCode::not_generic: return "NotGeneric";
    case ErrorCode::regularity_failure: return "RegularityFailure";
    case ErrorCode::focal_not_regular: return "FocalNotRegular";
    case ErrorCode::quadrature_failure: return "QuadratureFailure";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

SymMatrix::SymMatrix(const MatrixN& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0)
    throw GeometryError(ErrorCode::bad_parameters, "symmetric matrix must be square and non-empty");
  if (!entries.allFinite())
    throw GeometryError(ErrorCode::bad_parameters, "symmetric matrix has non-finite entries");
  entries_ = 0.5 * (entries + entries.transpose());
}

bool all_finite(const VectorN& v) { return v.allFinite(); }

GramSchmidtResult gram_schmidt(std::span<const VectorN> vectors, double rank_tolerance) {
  GramSchmidtResult out;
  if (vectors.empty()) return out;
  const auto dim = vectors.front().size();
  if (static_cast<Eigen::Index>(vectors.size()) > dim)
    throw GeometryError(ErrorCode::bad_parameters, "more vectors than the ambient dimension");
  out.orthogonal.reserve(vectors.size());
  out.norms.reserve(vectors.size());

  double first_norm = 0.0;
  for (std::size_t a = 0; a < vectors.size(); ++a) {
    if (vectors[a].size() != dim)
      throw GeometryError(ErrorCode::bad_parameters, "vectors of mixed dimension");
    if (!vectors[a].allFinite())
      throw GeometryError(ErrorCode::bad_parameters, "non-finite input vector");
    VectorN w = vectors[a];
    for (std::size_t i = 0; i < a; ++i) {
      const double n2 = out.norms[i] * out.norms[i];
      w -= (w.dot(out.orthogonal[i]) / n2) * out.orthogonal[i];
    }
    const double norm = w.norm();
    const int alpha = static_cast<int>(a) + 1;
    if (a == 0) {
      first_norm = norm;
      if (!(norm > 0.0))
        throw GeometryError(ErrorCode::degenerate_flag, "first vector vanishes", alpha);
    } else if (norm < rank_tolerance * std::pow(first_norm, alpha)) {
      throw GeometryError(ErrorCode::degenerate_flag,
                          "vector " + std::to_string(alpha) + " lies in the span of its predecessors",
                          alpha);
    }
    out.orthogonal.push_back(std::move(w));
    out.norms.push_back(norm);
  }
  return out;
}

void orthonormalize(std::vector<VectorN>& frame) {
  for (std::size_t a = 0; a < frame.size(); ++a) {
    for (std::size_t i = 0; i < a; ++i) frame[a] -= frame[a].dot(frame[i]) * frame[i];
    frame[a].normalize();
  }
}

double orthonormality_error(std::span<const VectorN> frame) {
  double err = 0.0;
  for (std::size_t i = 0; i < frame.size(); ++i)
    for (std::size_t j = i; j < frame.size(); ++j)
      err = std::max(err, std::abs(frame[i].dot(frame[j]) - (i == j ? 1.0 : 0.0)));
  return err;
}

SymmetricEigen jacobi_eigen(const SymMatrix& m, int max_sweeps) {
  const Eigen::Index n = m.size();
  MatrixN a = m.entries();
  MatrixN v = MatrixN::Identity(n, n);
  const double scale = a.norm();

  SymmetricEigen out;
  auto off_diagonal = [&] {
    double s = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) s += a(p, q) * a(p, q);
    return std::sqrt(2.0 * s);
  };

  bool converged = scale == 0.0 || off_diagonal() <= 1e-15 * scale;
  int sweep = 0;
  while (!converged && sweep < max_sweeps) {
    ++sweep;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // A <- J^T A J with J the (p, q) rotation.
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = off_diagonal() <= 1e-15 * scale;
  }
  if (!converged)
    throw GeometryError(ErrorCode::convergence_failure,
                        "Jacobi iteration exceeded " + std::to_string(max_sweeps) + " sweeps");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto src = order[static_cast<std::size_t>(i)];
    out.values[i] = a(src, src);
    out.vectors.col(i) = v.col(src).normalized();
  }
  out.sweeps = sweep;
  return out;
}

Eigenpair smallest_eigenpair(const SymMatrix& m) {
  auto eig = jacobi_eigen(m);
  return {eig.values[0], eig.vectors.col(0)};
}

VectorN solve_linear(const MatrixN& a, const VectorN& b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n || n == 0)
    throw GeometryError(ErrorCode::bad_parameters, "solve_linear needs a square system matching b");
  if (!a.allFinite() || !b.allFinite())
    throw GeometryError(ErrorCode::bad_parameters, "solve_linear input is not finite");

  MatrixN lu = a;
  VectorN x = b;
  const double threshold = 1e-13 * a.cwiseAbs().rowwise().sum().maxCoeff();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    lu.col(col).tail(n - col).cwiseAbs().maxCoeff(&pivot);
    pivot += col;
    if (!(std::abs(lu(pivot, col)) > threshold))
      throw GeometryError(ErrorCode::singular_system, "pivot below 1e-13 * |A|", static_cast<int>(col));
    if (pivot != col) {
      lu.row(pivot).swap(lu.row(col));
      std::swap(x[pivot], x[col]);
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const double f = lu(r, col) / lu(col, col);
      if (f == 0.0) continue;
      lu.row(r).tail(n - col) -= f * lu.row(col).tail(n - col);
      x[r] -= f * x[col];
    }
  }
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    double acc = x[r];
    for (Eigen::Index c = r + 1; c < n; ++c) acc -= lu(r, c) * x[c];
    x[r] = acc / lu(r, r);
  }
  return x;
}

}  // namespace focalkit
