#include "maslovkit/linalg.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "maslovkit/error.hpp"

namespace mk {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::NonUnitaryFrame: return "non-unitary frame";
    case ErrorCode::SamplingTooCoarse: return "sampling too coarse";
    case ErrorCode::OpenLoop: return "loop not closed";
    case ErrorCode::DegenerateCrossing: return "degenerate crossing";
    case ErrorCode::ResampleRequired: return "crossing at endpoint sample";
    case ErrorCode::NonFinite: return "non-finite value";
    case ErrorCode::OffManifold: return "point off constraint manifold";
    case ErrorCode::ConstraintDegeneracy: return "constraint matrix singular";
    case ErrorCode::EnergyDrift: return "energy drift bound exceeded";
    case ErrorCode::ConsistencyFailure: return "internal consistency failure";
    case ErrorCode::SingularParameter: return "singular parameter";
    case ErrorCode::RankDeficient: return "rank deficient";
    case ErrorCode::NoRealSolution: return "no real solution";
    case ErrorCode::SearchExhausted: return "search exhausted";
    case ErrorCode::NotCoprime: return "arguments not coprime";
  }
  return "unknown error";
}

bool Error::is_numerical() const noexcept {
  switch (code_) {
    case ErrorCode::SamplingTooCoarse:
    case ErrorCode::DegenerateCrossing:
    case ErrorCode::ResampleRequired:
    case ErrorCode::NonFinite:
    case ErrorCode::ConstraintDegeneracy:
    case ErrorCode::EnergyDrift:
    case ErrorCode::ConsistencyFailure:
    case ErrorCode::SingularParameter:
    case ErrorCode::RankDeficient:
    case ErrorCode::NoRealSolution:
    case ErrorCode::SearchExhausted:
      return true;
    default:
      return false;
  }
}

int numerical_rank(const RealMatrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(a);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  if (!(smax > 0.0)) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * smax) ++r;
  return r;
}

RealMatrix null_space(const RealMatrix& a, int cols, double rel_tol) {
  if (a.rows() == 0) return RealMatrix::Identity(cols, cols);
  if (a.cols() != cols) throw Error(ErrorCode::DimensionMismatch, "null_space column count");
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  int r = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * smax) ++r;
  return svd.matrixV().rightCols(cols - r);
}

RealMatrix adjugate(const RealMatrix& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw Error(ErrorCode::DimensionMismatch, "adjugate of non-square matrix");
  RealMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1.0;
    return adj;
  }
  RealMatrix minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      // adj(A)_{ji} = cofactor_{ij}
      adj(j, i) = sign * minor.determinant();
    }
  }
  return adj;
}

double wrap_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(angle, two_pi);
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

RealMatrix random_orthogonal(int n, Rng& rng) {
  std::normal_distribution<double> normal;
  RealMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ();
  RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

ComplexMatrix random_unitary(int n, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexMatrix random_special_unitary(int n, Rng& rng) {
  ComplexMatrix u = random_unitary(n, rng);
  const Complex d = u.determinant();
  const Complex root = std::polar(1.0, -std::arg(d) / n);
  return u * root;
}

ComplexMatrix matrix_exp(const ComplexMatrix& a) { return a.exp(); }

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace mk
