#include "maslovkit/projtori.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/Polynomials>

#include "maslovkit/error.hpp"

namespace mk::projtori {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_dim(const ModelMetricPair& m, const RealVector& v, const char* what) {
  if (v.size() != m.n())
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has wrong dimension");
}

// Zeros of a periodic function on [0,1) located by a grid scan and bisection.
template <class F>
std::vector<double> periodic_zeros(const F& f, int grid) {
  std::vector<double> zeros;
  double x0 = 0.0, f0 = f(0.0);
  for (int k = 1; k <= grid; ++k) {
    const double x1 = static_cast<double>(k) / grid;
    const double f1 = f(x1);
    if (f0 == 0.0) {
      zeros.push_back(x0);
    } else if ((f0 < 0) != (f1 < 0) && f1 != 0.0) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 80; ++it) {
        const double c = 0.5 * (a + b);
        const double fc = f(c);
        if ((fc < 0) == (fa < 0)) {
          a = c;
          fa = fc;
        } else {
          b = c;
        }
      }
      zeros.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  return zeros;
}

double sigma_at(const std::vector<double>& roots, double tau) {
  double s = 1.0;
  for (double r : roots) s *= (r - tau);
  return s;
}

RealVector y_from_coefficients(const RealVector& a, const RealVector& pi, double leading) {
  RealVector y(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) y(i) = std::sqrt(leading * std::max(a(i), 0.0) * pi(i));
  return y;
}

RealVector coefficients_at(const ModelMetricPair& m, const FirstIntegralPolynomial& q,
                           const RealVector& x) {
  const RealVector t = m.eig().values(x);
  const auto res = partition_coefficients({t.data(), t.data() + t.size()}, q.roots);
  return Eigen::Map<const RealVector>(res.a.data(), static_cast<Eigen::Index>(res.a.size()));
}

}  // namespace

double TrigPolynomial::operator()(double x) const {
  double v = constant;
  for (std::size_t k = 0; k < cos_coeffs.size(); ++k) v += cos_coeffs[k] * std::cos(kTwoPi * (k + 1) * x);
  for (std::size_t k = 0; k < sin_coeffs.size(); ++k) v += sin_coeffs[k] * std::sin(kTwoPi * (k + 1) * x);
  return v;
}

double TrigPolynomial::derivative(double x) const {
  double v = 0.0;
  for (std::size_t k = 0; k < cos_coeffs.size(); ++k) {
    const double w = kTwoPi * (k + 1);
    v -= w * cos_coeffs[k] * std::sin(w * x);
  }
  for (std::size_t k = 0; k < sin_coeffs.size(); ++k) {
    const double w = kTwoPi * (k + 1);
    v += w * sin_coeffs[k] * std::cos(w * x);
  }
  return v;
}

bool TrigPolynomial::is_constant() const {
  auto zero = [](double c) { return c == 0.0; };
  return std::all_of(cos_coeffs.begin(), cos_coeffs.end(), zero) &&
         std::all_of(sin_coeffs.begin(), sin_coeffs.end(), zero);
}

SeparatedEigenFunctions::SeparatedEigenFunctions(std::vector<TrigPolynomial> lambda, int grid)
    : lambda_(std::move(lambda)) {
  if (lambda_.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one eigenvalue function");
  if (grid < 8) throw Error(ErrorCode::InvalidArgument, "grid too small");
  for (const auto& l : lambda_) {
    double lo = l(0.0), hi = lo;
    for (int k = 1; k < grid; ++k) {
      const double v = l(static_cast<double>(k) / grid);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    std::vector<double> crit;
    if (l.is_constant()) {
      crit.push_back(l.constant);
    } else {
      for (double z : periodic_zeros([&](double x) { return l.derivative(x); }, 4 * grid))
        crit.push_back(l(z));
    }
    for (double c : crit) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw Error(ErrorCode::NonFinite, "eigenvalue function values");
    lo_.push_back(lo);
    hi_.push_back(hi);
    critical_.push_back(std::move(crit));
  }
  if (lo_.front() <= 0.0) throw Error(ErrorCode::InvalidArgument, "lambda_1 must be positive");
  for (std::size_t i = 0; i + 1 < lambda_.size(); ++i)
    if (!(hi_[i] < lo_[i + 1]))
      throw Error(ErrorCode::InvalidArgument,
                  "eigenvalue functions " + std::to_string(i + 1) + " and " + std::to_string(i + 2) +
                      " are not separated");
}

RealVector SeparatedEigenFunctions::values(const RealVector& x) const {
  if (x.size() != n()) throw Error(ErrorCode::DimensionMismatch, "torus point dimension");
  RealVector v(n());
  for (int i = 0; i < n(); ++i) v(i) = lambda_[static_cast<std::size_t>(i)](x(i));
  return v;
}

RealVector SeparatedEigenFunctions::derivatives(const RealVector& x) const {
  if (x.size() != n()) throw Error(ErrorCode::DimensionMismatch, "torus point dimension");
  RealVector v(n());
  for (int i = 0; i < n(); ++i) v(i) = lambda_[static_cast<std::size_t>(i)].derivative(x(i));
  return v;
}

RealVector ModelMetricPair::pi(const RealVector& x) const {
  const RealVector l = eig_.values(x);
  RealVector p = RealVector::Ones(n());
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (j != i) p(i) *= std::abs(l(i) - l(j));
  return p;
}

RealVector ModelMetricPair::rho(const RealVector& x) const {
  const RealVector l = eig_.values(x);
  const double prod = l.prod();
  return (l * prod).cwiseInverse();
}

RealMatrix ModelMetricPair::g(const RealVector& x) const { return pi(x).asDiagonal(); }

RealMatrix ModelMetricPair::gbar(const RealVector& x) const {
  return pi(x).cwiseProduct(rho(x)).asDiagonal();
}

RealMatrix tensor_G(const RealMatrix& g, const RealMatrix& gbar) {
  if (g.rows() != g.cols() || gbar.rows() != g.rows() || gbar.cols() != g.cols())
    throw Error(ErrorCode::DimensionMismatch, "metric matrices must be square and equal size");
  const auto n = static_cast<double>(g.rows());
  const double ratio = gbar.determinant() / g.determinant();
  if (!(ratio > 0.0)) throw Error(ErrorCode::InvalidArgument, "metrics must both be definite");
  return std::pow(ratio, 1.0 / (n + 1.0)) * gbar.partialPivLu().solve(g);
}

RealMatrix tensor_G(const ModelMetricPair& m, const RealVector& x) {
  return tensor_G(m.g(x), m.gbar(x));
}

RealMatrix S_tau(const ModelMetricPair& m, const RealVector& x, double tau) {
  const RealMatrix G = tensor_G(m, x);
  return adjugate(G - tau * RealMatrix::Identity(G.rows(), G.cols()));
}

double I_tau(const ModelMetricPair& m, const RealVector& x, const RealVector& v, double tau) {
  require_dim(m, v, "tangent vector");
  return v.dot(m.g(x) * S_tau(m, x, tau) * v);
}

double J_tau_tensor(const ModelMetricPair& m, const RealVector& x, const RealVector& y, double tau) {
  require_dim(m, y, "covector");
  const RealVector v = m.g(x).partialPivLu().solve(y);
  return I_tau(m, x, v, tau);
}

double mu(const RealVector& t, int i, double tau) {
  double p = 1.0;
  for (Eigen::Index j = 0; j < t.size(); ++j)
    if (j != i) p *= (t(j) - tau);
  return p;
}

double J_tau_coordinate(const ModelMetricPair& m, const RealVector& x, const RealVector& y,
                        double tau) {
  require_dim(m, y, "covector");
  const RealVector t = m.eig().values(x);
  const RealVector p = m.pi(x);
  double j = 0.0;
  for (int i = 0; i < m.n(); ++i) j += mu(t, i, tau) * y(i) * y(i) / p(i);
  return j;
}

double J_tau(const ModelMetricPair& m, const RealVector& x, const RealVector& y, double tau) {
  const double coord = J_tau_coordinate(m, x, y, tau);
  const double tensor = J_tau_tensor(m, x, y, tau);
  const RealVector t = m.eig().values(x);
  const RealVector p = m.pi(x);
  double scale = 1.0;
  for (int i = 0; i < m.n(); ++i) scale += std::abs(mu(t, i, tau)) * y(i) * y(i) / p(i);
  if (std::abs(coord - tensor) > 1e-9 * scale)
    throw Error(ErrorCode::ConsistencyFailure,
                "tensor and coordinate J_tau disagree: " + std::to_string(coord - tensor));
  return coord;
}

RealVector vector_field_XJ(const ModelMetricPair& m, const RealVector& state, double tau) {
  const int n = m.n();
  if (state.size() != 2 * n) throw Error(ErrorCode::DimensionMismatch, "state must be (x, y)");
  const RealVector x = state.head(n);
  const RealVector y = state.tail(n);
  const RealVector l = m.eig().values(x);
  const RealVector dl = m.eig().derivatives(x);
  const RealVector p = m.pi(x);

  RealVector mus(n);
  for (int i = 0; i < n; ++i) mus(i) = mu(l, i, tau);

  RealVector v(2 * n);
  for (int i = 0; i < n; ++i) v(i) = 2.0 * mus(i) * y(i) / p(i);
  for (int i = 0; i < n; ++i) {
    double d = 0.0;
    double inv_sum = 0.0;
    for (int k = 0; k < n; ++k)
      if (k != i) inv_sum += 1.0 / (l(i) - l(k));
    d -= mus(i) * y(i) * y(i) / p(i) * inv_sum;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double dmu = 1.0;  // d mu_j / d lambda_i = prod_{k != i,j} (lambda_k - tau)
      for (int k = 0; k < n; ++k)
        if (k != i && k != j) dmu *= (l(k) - tau);
      d += y(j) * y(j) / p(j) * (dmu - mus(j) / (l(i) - l(j)));
    }
    v(n + i) = -dl(i) * d;
  }
  return v;
}

poisson::ScalarField J_field(const ModelMetricPair& m, double tau, bool analytic) {
  const int n = m.n();
  poisson::ScalarField f;
  f.arity = 2 * n;
  f.label = "J_" + std::to_string(tau);
  f.value = [m, tau, n](const RealVector& s) {
    return J_tau_coordinate(m, s.head(n), s.tail(n), tau);
  };
  if (analytic) {
    f.analytic_gradient = [m, tau, n](const RealVector& s) {
      const RealVector v = vector_field_XJ(m, s, tau);
      RealVector g(2 * n);
      g.head(n) = -v.tail(n);
      g.tail(n) = v.head(n);
      return g;
    };
  }
  return f;
}

poisson::ScalarField geodesic_hamiltonian(const ModelMetricPair& m) {
  const int n = m.n();
  poisson::ScalarField f;
  f.arity = 2 * n;
  f.label = "H_g";
  f.value = [m, n](const RealVector& s) {
    const RealVector p = m.pi(s.head(n));
    return 0.5 * s.tail(n).cwiseAbs2().cwiseQuotient(p).sum();
  };
  f.analytic_gradient = [m, n](const RealVector& s) {
    // H_g is the tau^{n-1} coefficient of J_tau up to the factor (-1)^{n-1} / 2.
    const RealVector x = s.head(n);
    const RealVector y = s.tail(n);
    const RealVector l = m.eig().values(x);
    const RealVector dl = m.eig().derivatives(x);
    const RealVector p = m.pi(x);
    RealVector g(2 * n);
    for (int i = 0; i < n; ++i) {
      double dlogpi_i = 0.0;
      double dh = 0.0;
      for (int k = 0; k < n; ++k)
        if (k != i) dlogpi_i += 1.0 / (l(i) - l(k));
      dh -= 0.5 * y(i) * y(i) / p(i) * dlogpi_i;
      for (int j = 0; j < n; ++j)
        if (j != i) dh -= 0.5 * y(j) * y(j) / p(j) / (l(i) - l(j));
      g(i) = dl(i) * dh;
      g(n + i) = y(i) / p(i);
    }
    return g;
  };
  return f;
}

PartitionCoefficients partition_coefficients(const std::vector<double>& t, const std::vector<double>& roots) {
  const std::size_t n = t.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "need at least one node");
  if (roots.size() + 1 != n) throw Error(ErrorCode::InvalidArgument, "expected n - 1 roots");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (t[i] == t[j]) throw Error(ErrorCode::InvalidArgument, "coincident nodes t_i");
  const RealVector tv = Eigen::Map<const RealVector>(t.data(), static_cast<Eigen::Index>(n));
  PartitionCoefficients res;
  res.a.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    res.a[i] = sigma_at(roots, t[i]) / mu(tv, static_cast<int>(i), t[i]);
  res.interlacing = true;
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (!(t[k] <= roots[k] && roots[k] <= t[k + 1])) res.interlacing = false;
  return res;
}

FirstIntegralPolynomial FirstIntegralPolynomial::from_roots(double leading, std::vector<double> roots) {
  std::sort(roots.begin(), roots.end());
  FirstIntegralPolynomial q;
  q.leading = leading;
  q.roots = std::move(roots);
  return q;
}

FirstIntegralPolynomial FirstIntegralPolynomial::from_coefficients(const std::vector<double>& c) {
  std::vector<double> coeffs = c;
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  FirstIntegralPolynomial q;
  if (coeffs.empty()) return q;  // q == 0
  const int d = static_cast<int>(coeffs.size()) - 1;
  // c_d tau^d = leading * (-1)^d tau^d
  q.leading = coeffs.back() * ((d % 2 == 0) ? 1.0 : -1.0);
  if (d == 0) return q;
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  const RealVector cv = Eigen::Map<const RealVector>(coeffs.data(), d + 1);
  solver.compute(cv);
  for (Eigen::Index k = 0; k < solver.roots().size(); ++k) {
    const auto r = solver.roots()(k);
    if (std::abs(r.imag()) > 1e-9 * std::max(1.0, std::abs(r))) {
      q.real_roots = false;
      q.raw_coefficients = coeffs;
    }
    q.roots.push_back(r.real());
  }
  std::sort(q.roots.begin(), q.roots.end());
  return q;
}

double FirstIntegralPolynomial::operator()(double tau) const {
  if (!real_roots) {
    double v = 0.0;
    for (auto it = raw_coefficients.rbegin(); it != raw_coefficients.rend(); ++it) v = v * tau + *it;
    return v;
  }
  return leading * sigma_at(roots, tau);
}

std::string to_string(ImageClass c) {
  switch (c) {
    case ImageClass::InteriorDiffeo: return "interior-diffeo";
    case ImageClass::Boundary: return "boundary";
    case ImageClass::NontrivialMaslov: return "nontrivial-maslov";
    case ImageClass::Outside: return "outside";
  }
  return "unknown";
}

ImageClass image_membership(const ModelMetricPair& m, const FirstIntegralPolynomial& q) {
  const int n = m.n();
  const auto& e = m.eig();
  if (!q.real_roots || q.leading < 0.0) return ImageClass::Outside;
  if (q.leading == 0.0) return ImageClass::Boundary;  // J = 0 only on the zero section
  if (q.degree() != n - 1)
    throw Error(ErrorCode::InvalidArgument, "polynomial degree must be n - 1");

  for (int k = 0; k + 1 < n; ++k) {
    const double r = q.roots[static_cast<std::size_t>(k)];
    if (r < e.lo(k) || r > e.hi(k + 1)) return ImageClass::Outside;
  }
  bool all_in_gaps = true;
  for (int k = 0; k + 1 < n; ++k) {
    const double r = q.roots[static_cast<std::size_t>(k)];
    if (!(e.hi(k) < r && r < e.lo(k + 1))) all_in_gaps = false;
  }
  if (all_in_gaps) return ImageClass::InteriorDiffeo;

  bool regular = true;
  for (int k = 0; k + 1 < n; ++k) {
    const double r = q.roots[static_cast<std::size_t>(k)];
    const double tol = 1e-9 * std::max(1.0, std::abs(r));
    if (k + 2 < n && std::abs(q.roots[static_cast<std::size_t>(k + 1)] - r) <= tol) regular = false;
    for (int i : {k, k + 1})
      for (double c : e.critical_values(i))
        if (std::abs(c - r) <= tol) regular = false;
  }
  return regular ? ImageClass::NontrivialMaslov : ImageClass::Boundary;
}

std::vector<double> default_probes(const ModelMetricPair& m) {
  const auto& e = m.eig();
  std::vector<double> probes{0.5 * e.lo(0)};
  for (int k = 0; k + 1 < m.n(); ++k) probes.push_back(0.5 * (e.hi(k) + e.lo(k + 1)));
  return probes;
}

RealVector liouville_torus_point(const ModelMetricPair& m, const FirstIntegralPolynomial& q,
                                 const RealVector& x) {
  require_dim(m, x, "base point");
  if (!q.real_roots) throw Error(ErrorCode::NoRealSolution, "polynomial has complex roots");
  if (q.leading < 0.0) throw Error(ErrorCode::NoRealSolution, "negative leading coefficient");
  if (q.degree() != m.n() - 1) throw Error(ErrorCode::InvalidArgument, "polynomial degree must be n - 1");
  const RealVector a = coefficients_at(m, q, x);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) < -1e-12)
      throw Error(ErrorCode::NoRealSolution,
                  "roots are not interlaced with lambda(x); a_" + std::to_string(i + 1) + " < 0");
  const RealVector y = y_from_coefficients(a, m.pi(x), q.leading);

  std::vector<double> probes{0.0};
  for (int k = 0; k + 1 < m.n(); ++k) probes.push_back(0.5 * (m.eig().hi(k) + m.eig().lo(k + 1)));
  for (double tau : probes) {
    const double want = q(tau);
    const double got = J_tau_coordinate(m, x, y, tau);
    if (std::abs(got - want) > 1e-8 * std::max(1.0, std::abs(want)))
      throw Error(ErrorCode::ConsistencyFailure, "J_tau(x, y) differs from q at probe");
  }
  return y;
}

double nondegeneracy_determinant(const ModelMetricPair& m, const RealVector& x,
                                 const std::vector<double>& probes) {
  const int n = m.n();
  if (static_cast<int>(probes.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "need n probe values");
  for (std::size_t i = 0; i < probes.size(); ++i)
    for (std::size_t j = i + 1; j < probes.size(); ++j)
      if (probes[i] == probes[j]) throw Error(ErrorCode::InvalidArgument, "probe values must be distinct");
  const RealVector t = m.eig().values(x);
  RealMatrix mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mat(i, j) = mu(t, j, probes[static_cast<std::size_t>(i)]);
  return mat.determinant();
}

maslov::TangentFrame torus_tangent_frame(const ModelMetricPair& m, const RealVector& state,
                                         const std::vector<double>& probes) {
  const int n = m.n();
  if (static_cast<int>(probes.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "need n probe values");
  RealMatrix vectors(2 * n, n);
  for (int k = 0; k < n; ++k) vectors.col(k) = vector_field_XJ(m, state, probes[static_cast<std::size_t>(k)]);
  // Scale columns to unit length so that the rank decision is not skewed by
  // the sizes of mu at the probes.
  for (int k = 0; k < n; ++k) {
    const double nk = vectors.col(k).norm();
    if (nk > 0.0) vectors.col(k) /= nk;
  }
  auto tf = maslov::frame_from_tangent_vectors(vectors);
  if (tf.symplectic_residual > 1e-8)
    throw Error(ErrorCode::ConsistencyFailure,
                "torus tangent plane is not Lagrangian: " + std::to_string(tf.symplectic_residual));
  return tf;
}

CoordinateLoop coordinate_loop(const ModelMetricPair& m, const FirstIntegralPolynomial& q, int i,
                               int samples, const RealVector& base) {
  const int n = m.n();
  require_dim(m, base, "base point");
  if (i < 0 || i >= n) throw Error(ErrorCode::InvalidArgument, "coordinate index out of range");
  if (samples < 8) throw Error(ErrorCode::InvalidArgument, "too few loop samples");
  if (!q.real_roots || !(q.leading > 0.0))
    throw Error(ErrorCode::NoRealSolution, "level needs a positive leading coefficient");

  auto point = [&](double xi) {
    RealVector x = base;
    x(i) = xi - std::floor(xi);
    return x;
  };
  auto min_coefficient = [&](double xi) { return coefficients_at(m, q, point(xi)).minCoeff(); };
  auto ai = [&](double xi) { return coefficients_at(m, q, point(xi))(i); };

  const double x0 = base(i);
  if (min_coefficient(x0) <= 0.0)
    throw Error(ErrorCode::NoRealSolution, "base point is not in the interior of the level's projection");

  constexpr int kScan = 4096;
  double right = std::numeric_limits<double>::quiet_NaN();
  double left = std::numeric_limits<double>::quiet_NaN();
  for (int k = 1; k <= kScan && std::isnan(right); ++k)
    if (ai(x0 + static_cast<double>(k) / kScan) <= 0.0) right = x0 + static_cast<double>(k) / kScan;
  for (int k = 1; k <= kScan && std::isnan(left); ++k)
    if (ai(x0 - static_cast<double>(k) / kScan) <= 0.0) left = x0 - static_cast<double>(k) / kScan;

  const std::vector<double> probes = default_probes(m);
  CoordinateLoop out;
  std::vector<maslov::LagrangianFrame> frames;
  frames.reserve(static_cast<std::size_t>(samples) + 1);

  if (std::isnan(right)) {
    out.full_circle = true;
    for (int k = 0; k <= samples; ++k) {
      const RealVector x = point(x0 + static_cast<double>(k) / samples);
      RealVector s(2 * n);
      s.head(n) = x;
      s.tail(n) = y_from_coefficients(coefficients_at(m, q, x), m.pi(x), q.leading);
      frames.push_back(torus_tangent_frame(m, s, probes).frame);
      out.states.push_back(std::move(s));
    }
    out.loop.emplace(std::move(frames));
    return out;
  }

  // Bisect the arc ends: ai > 0 on (left, right).
  auto refine = [&](double inside, double outside) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (inside + outside);
      (ai(mid) > 0.0 ? inside : outside) = mid;
    }
    return 0.5 * (inside + outside);
  };
  const double step = 1.0 / kScan;
  right = refine(right - step, right);
  left = refine(left + step, left);
  for (double end : {left, right}) {
    const double slope = m.eig().lambda(i).derivative(end - std::floor(end));
    if (std::abs(slope) < 1e-8)
      throw Error(ErrorCode::DegenerateCrossing, "coefficient has a non-simple zero at an arc end");
  }

  out.full_circle = false;
  const double c = 0.5 * (left + right);
  const double h = 0.5 * (right - left);
  for (int k = 0; k <= samples; ++k) {
    const double theta = 0.5 * std::numbers::pi + kTwoPi * k / samples;
    const RealVector x = point(c - h * std::cos(theta));
    RealVector s(2 * n);
    s.head(n) = x;
    s.tail(n) = y_from_coefficients(coefficients_at(m, q, x), m.pi(x), q.leading);
    if (std::sin(theta) < 0.0) s(n + i) = -s(n + i);
    frames.push_back(torus_tangent_frame(m, s, probes).frame);
    out.states.push_back(std::move(s));
  }
  out.loop.emplace(std::move(frames));
  return out;
}

int coordinate_loop_maslov(const ModelMetricPair& m, const FirstIntegralPolynomial& q, int i,
                           int samples, const RealVector& base) {
  return maslov::maslov_index(*coordinate_loop(m, q, i, samples, base).loop);
}

std::vector<maslov::CrossingEvent> orbit_crossing_events(const ModelMetricPair& m,
                                                         const RealVector& state, double duration,
                                                         int steps) {
  const auto traj = poisson::hamiltonian_flow(geodesic_hamiltonian(m), state, duration, steps);
  const std::vector<double> probes = default_probes(m);
  std::vector<maslov::LagrangianFrame> frames;
  frames.reserve(traj.states.size());
  for (const auto& s : traj.states) frames.push_back(torus_tangent_frame(m, s, probes).frame);
  return maslov::crossing_events(frames, maslov::LagrangianFrame::vertical(m.n()));
}

}  // namespace mk::projtori
