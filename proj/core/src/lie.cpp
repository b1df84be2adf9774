#include "maslovkit/lie.hpp"

#include <cmath>

#include "maslovkit/error.hpp"

namespace mk::lie {
namespace {

const Complex kI(0.0, 1.0);

ComplexMatrix skew_part(const ComplexMatrix& m) { return 0.5 * (m - m.adjoint()); }

ComplexMatrix complex_adjugate(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  ComplexMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1.0;
    return adj;
  }
  ComplexMatrix minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      adj(j, i) = (((i + j) % 2 == 0) ? 1.0 : -1.0) * minor.determinant();
    }
  return adj;
}

void require_same(const LieElement& a, const LieElement& b) {
  if (a.n() != b.n() || a.flavor() != b.flavor())
    throw Error(ErrorCode::DimensionMismatch, "Lie elements of different algebras");
}

}  // namespace

int algebra_dimension(int n, Flavor flavor) { return flavor == Flavor::U ? n * n : n * n - 1; }
int algebra_rank(int n, Flavor flavor) { return flavor == Flavor::U ? n : n - 1; }

LieElement::LieElement(ComplexMatrix entries, Flavor flavor, double tol)
    : entries_(std::move(entries)), flavor_(flavor) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "Lie element must be a non-empty square matrix");
  if (!entries_.allFinite()) throw Error(ErrorCode::NonFinite, "Lie element entries");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  const double skew_defect = (entries_ + entries_.adjoint()).cwiseAbs().maxCoeff();
  if (skew_defect > tol * scale)
    throw Error(ErrorCode::InvalidArgument, "matrix is not skew-Hermitian");
  if (flavor_ == Flavor::SU && std::abs(entries_.trace()) > tol * scale)
    throw Error(ErrorCode::InvalidArgument, "su(n) element with nonzero trace");
}

LieElement LieElement::zero(int n, Flavor flavor) {
  return LieElement(ComplexMatrix::Zero(n, n), flavor, Unchecked{});
}

LieElement LieElement::project(const ComplexMatrix& m, Flavor flavor) {
  ComplexMatrix k = skew_part(m);
  if (flavor == Flavor::SU) {
    const Complex t = k.trace() / static_cast<double>(k.rows());
    k -= t * ComplexMatrix::Identity(k.rows(), k.cols());
  }
  return LieElement(std::move(k), flavor, Unchecked{});
}

LieElement LieElement::operator+(const LieElement& other) const {
  require_same(*this, other);
  return LieElement(entries_ + other.entries_, flavor_, Unchecked{});
}

LieElement LieElement::operator-(const LieElement& other) const {
  require_same(*this, other);
  return LieElement(entries_ - other.entries_, flavor_, Unchecked{});
}

LieElement LieElement::operator*(double s) const {
  return LieElement(entries_ * s, flavor_, Unchecked{});
}

double pairing(const LieElement& a, const LieElement& b) {
  require_same(a, b);
  // -Re tr(AB) without forming the product.
  return -(a.matrix().transpose().cwiseProduct(b.matrix())).sum().real();
}

LieElement commutator(const LieElement& a, const LieElement& b) {
  require_same(a, b);
  const ComplexMatrix c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  return LieElement::project(c, a.flavor());
}

LieElement adjoint_action(const ComplexMatrix& u, const LieElement& x) {
  if (u.rows() != x.n() || u.cols() != x.n())
    throw Error(ErrorCode::DimensionMismatch, "group element and Lie element sizes differ");
  return LieElement::project(u * x.matrix() * u.adjoint(), x.flavor());
}

int stabilizer_dimension(const LieElement& x) {
  const AlgebraBasis basis(x.n(), x.flavor());
  RealMatrix ad(basis.size(), basis.size());
  for (int k = 0; k < basis.size(); ++k) ad.col(k) = basis.coordinates(commutator(x, basis[k]));
  return basis.size() - numerical_rank(ad);
}

AlgebraBasis::AlgebraBasis(int n, Flavor flavor) : n_(n), flavor_(flavor) {
  const double r2 = 1.0 / std::sqrt(2.0);
  auto add = [&](ComplexMatrix m) { elements_.push_back(LieElement::project(m, flavor)); };
  if (flavor == Flavor::U) {
    for (int j = 0; j < n; ++j) {
      ComplexMatrix m = ComplexMatrix::Zero(n, n);
      m(j, j) = kI;
      add(m);
    }
  } else {
    // i * diag(1,...,1,-m,0,...)/sqrt(m(m+1)), m = 1..n-1: orthonormal traceless Cartan part.
    for (int m = 1; m < n; ++m) {
      ComplexMatrix d = ComplexMatrix::Zero(n, n);
      const double c = 1.0 / std::sqrt(static_cast<double>(m) * (m + 1));
      for (int j = 0; j < m; ++j) d(j, j) = kI * c;
      d(m, m) = -kI * c * static_cast<double>(m);
      add(d);
    }
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      ComplexMatrix a = ComplexMatrix::Zero(n, n);
      a(j, k) = r2;
      a(k, j) = -r2;
      add(a);
      ComplexMatrix s = ComplexMatrix::Zero(n, n);
      s(j, k) = kI * r2;
      s(k, j) = kI * r2;
      add(s);
    }
}

RealVector AlgebraBasis::coordinates(const LieElement& x) const {
  if (x.n() != n_ || x.flavor() != flavor_)
    throw Error(ErrorCode::DimensionMismatch, "element does not belong to this basis' algebra");
  RealVector c(size());
  for (int k = 0; k < size(); ++k) c(k) = pairing(elements_[k], x);
  return c;
}

LieElement AlgebraBasis::element(const RealVector& coords) const {
  if (coords.size() != size()) throw Error(ErrorCode::DimensionMismatch, "coordinate vector length");
  LieElement x = LieElement::zero(n_, flavor_);
  for (int k = 0; k < size(); ++k) x = x + elements_[k] * coords(k);
  return x;
}

ProductElement ProductElement::operator+(const ProductElement& other) const {
  if (!same_shape(other)) throw Error(ErrorCode::DimensionMismatch, "product shapes differ");
  std::vector<LieElement> f;
  f.reserve(factors_.size());
  for (std::size_t k = 0; k < factors_.size(); ++k) f.push_back(factors_[k] + other.factors_[k]);
  return ProductElement(std::move(f));
}

ProductElement ProductElement::operator-(const ProductElement& other) const {
  return *this + other * -1.0;
}

ProductElement ProductElement::operator*(double s) const {
  std::vector<LieElement> f;
  f.reserve(factors_.size());
  for (const auto& x : factors_) f.push_back(x * s);
  return ProductElement(std::move(f));
}

bool ProductElement::same_shape(const ProductElement& other) const {
  if (factors_.size() != other.factors_.size()) return false;
  for (std::size_t k = 0; k < factors_.size(); ++k)
    if (factors_[k].n() != other.factors_[k].n() ||
        factors_[k].flavor() != other.factors_[k].flavor())
      return false;
  return true;
}

double pairing(const ProductElement& a, const ProductElement& b) {
  if (!a.same_shape(b)) throw Error(ErrorCode::DimensionMismatch, "product shapes differ");
  double s = 0.0;
  for (int k = 0; k < a.factor_count(); ++k) s += pairing(a.factor(k), b.factor(k));
  return s;
}

ProductElement commutator(const ProductElement& a, const ProductElement& b) {
  if (!a.same_shape(b)) throw Error(ErrorCode::DimensionMismatch, "product shapes differ");
  std::vector<LieElement> f;
  for (int k = 0; k < a.factor_count(); ++k) f.push_back(commutator(a.factor(k), b.factor(k)));
  return ProductElement(std::move(f));
}

ProductElement zero_like(const ProductElement& x) { return x * 0.0; }

ProductBasis::ProductBasis(const ProductElement& shape) {
  for (const auto& f : shape.factors()) {
    bases_.emplace_back(f.n(), f.flavor());
    total_ += bases_.back().size();
  }
}

RealVector ProductBasis::coordinates(const ProductElement& x) const {
  if (x.factor_count() != static_cast<int>(bases_.size()))
    throw Error(ErrorCode::DimensionMismatch, "product factor count");
  RealVector c(total_);
  int off = 0;
  for (std::size_t k = 0; k < bases_.size(); ++k) {
    const RealVector ck = bases_[k].coordinates(x.factor(static_cast<int>(k)));
    c.segment(off, ck.size()) = ck;
    off += static_cast<int>(ck.size());
  }
  return c;
}

ProductElement ProductBasis::element(const RealVector& coords) const {
  if (coords.size() != total_) throw Error(ErrorCode::DimensionMismatch, "coordinate vector length");
  std::vector<LieElement> f;
  int off = 0;
  for (const auto& b : bases_) {
    f.push_back(b.element(coords.segment(off, b.size())));
    off += b.size();
  }
  return ProductElement(std::move(f));
}

ProductElement gradient(const LieFunction& f, const ProductElement& x, double rel_step) {
  if (f.analytic_gradient) return f.analytic_gradient(x);
  const ProductBasis basis(x);
  const RealVector c = basis.coordinates(x);
  RealVector g(c.size());
  RealVector probe = c;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const double h = rel_step * std::max(1.0, std::abs(c(k)));
    probe(k) = c(k) + h;
    const double fp = f.value(basis.element(probe));
    probe(k) = c(k) - h;
    const double fm = f.value(basis.element(probe));
    probe(k) = c(k);
    g(k) = (fp - fm) / (2.0 * h);
  }
  if (!g.allFinite()) throw Error(ErrorCode::NonFinite, "gradient of " + f.label);
  return basis.element(g);
}

double lie_poisson_bracket(const LieFunction& f, const LieFunction& g, const ProductElement& x) {
  return pairing(x, commutator(gradient(f, x), gradient(g, x)));
}

ProductElement lie_poisson_field(const LieFunction& f, const ProductElement& x) {
  return commutator(x, gradient(f, x));
}

LieFunction linear_form(const ProductElement& a) {
  LieFunction f;
  f.value = [a](const ProductElement& x) { return pairing(a, x); };
  f.analytic_gradient = [a](const ProductElement&) { return a; };
  f.label = "linear form";
  return f;
}

double evaluate_casimir(const CasimirSpec& spec, const LieElement& x) {
  const ComplexMatrix m = -kI * x.matrix();
  switch (spec.kind) {
    case CasimirKind::TraceSquare:
      return 0.5 * (x.matrix() * x.matrix()).trace().real();
    case CasimirKind::TraceCube:
      return (m * m * m).trace().real();
    case CasimirKind::TraceK: {
      if (spec.power < 1) throw Error(ErrorCode::InvalidArgument, "TraceK power must be >= 1");
      ComplexMatrix p = m;
      for (int k = 1; k < spec.power; ++k) p = p * m;
      return p.trace().real();
    }
    case CasimirKind::Determinant:
      return m.determinant().real();
    case CasimirKind::LinearTrace:
      return m.trace().real();
  }
  return 0.0;
}

LieElement casimir_gradient(const CasimirSpec& spec, const LieElement& x) {
  const int n = x.n();
  const ComplexMatrix m = -kI * x.matrix();
  auto power_term = [&](int k) {
    // d/dv Re tr(m^k) = Re tr(k m^{k-1} (-i v)) = -Re tr(G v) with G = k i m^{k-1}
    ComplexMatrix p = ComplexMatrix::Identity(n, n);
    for (int j = 1; j < k; ++j) p = p * m;
    return LieElement::project(static_cast<double>(k) * kI * p, x.flavor());
  };
  switch (spec.kind) {
    case CasimirKind::TraceSquare:
      return -x;
    case CasimirKind::TraceCube:
      return power_term(3);
    case CasimirKind::TraceK:
      return power_term(spec.power);
    case CasimirKind::Determinant:
      return LieElement::project(kI * complex_adjugate(m), x.flavor());
    case CasimirKind::LinearTrace:
      return power_term(1);
  }
  return LieElement::zero(n, x.flavor());
}

namespace {
std::string casimir_label(const CasimirSpec& spec) {
  switch (spec.kind) {
    case CasimirKind::TraceSquare: return "tr2";
    case CasimirKind::TraceCube: return "tr3";
    case CasimirKind::TraceK: return "tr" + std::to_string(spec.power);
    case CasimirKind::Determinant: return "det";
    case CasimirKind::LinearTrace: return "tr1";
  }
  return "casimir";
}
}  // namespace

LieFunction casimir_function(const CasimirSpec& spec) {
  LieFunction f;
  f.value = [spec](const ProductElement& x) { return evaluate_casimir(spec, x.factor(spec.factor)); };
  f.analytic_gradient = [spec](const ProductElement& x) {
    ProductElement g = zero_like(x);
    g.factor(spec.factor) = casimir_gradient(spec, x.factor(spec.factor));
    return g;
  };
  f.label = casimir_label(spec) + "[" + std::to_string(spec.factor) + "]";
  return f;
}

double ShiftFamilyMember::operator()(const ProductElement& x) const {
  return evaluate_casimir(casimir, (x + shift * lambda).factor(casimir.factor));
}

LieFunction ShiftFamilyMember::as_function() const {
  const LieFunction base = casimir_function(casimir);
  const ProductElement offset = shift * lambda;
  LieFunction f;
  f.value = [base, offset](const ProductElement& x) { return base.value(x + offset); };
  f.analytic_gradient = [base, offset](const ProductElement& x) {
    return base.analytic_gradient(x + offset);
  };
  f.label = base.label + "(x+" + std::to_string(lambda) + "a)";
  return f;
}

std::vector<LieFunction> ShiftFamily::functions() const {
  std::vector<LieFunction> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.as_function());
  return out;
}

bool is_regular(const ProductElement& a) {
  for (const auto& f : a.factors())
    if (stabilizer_dimension(f) != algebra_rank(f.n(), f.flavor())) return false;
  return true;
}

ShiftFamily mf_shift_family(const std::vector<CasimirSpec>& casimirs, const ProductElement& a,
                            const std::vector<double>& lambdas) {
  ShiftFamily family;
  family.shift_is_regular = is_regular(a);
  for (const auto& c : casimirs) {
    if (c.factor < 0 || c.factor >= a.factor_count())
      throw Error(ErrorCode::DimensionMismatch, "Casimir factor index out of range");
    for (double lambda : lambdas) family.members.push_back(ShiftFamilyMember{c, lambda, a});
  }
  return family;
}

int differential_dimension(const std::vector<LieFunction>& family, const ProductElement& x,
                           double rel_tol) {
  if (family.empty()) return 0;
  const ProductBasis basis(x);
  RealMatrix grads(basis.size(), static_cast<Eigen::Index>(family.size()));
  for (std::size_t k = 0; k < family.size(); ++k)
    grads.col(static_cast<Eigen::Index>(k)) = basis.coordinates(gradient(family[k], x));
  return numerical_rank(grads, rel_tol);
}

int differential_rank(const std::vector<LieFunction>& family, const ProductElement& x,
                      double rel_tol, double centre_tol, int probe_count, std::uint64_t seed) {
  if (family.empty()) return 0;
  Rng rng(seed);
  std::vector<ProductElement> probes{x};
  for (int k = 0; k < probe_count; ++k) probes.push_back(random_like(x, rng));

  std::vector<std::size_t> centre;
  for (std::size_t i = 0; i < family.size(); ++i) {
    bool central = true;
    for (std::size_t j = 0; j < family.size() && central; ++j) {
      if (i == j) continue;
      for (const auto& p : probes)
        if (std::abs(lie_poisson_bracket(family[i], family[j], p)) > centre_tol) {
          central = false;
          break;
        }
    }
    if (central) centre.push_back(i);
  }
  if (centre.empty()) return 0;
  const ProductBasis basis(x);
  RealMatrix fields(basis.size(), static_cast<Eigen::Index>(centre.size()));
  for (std::size_t k = 0; k < centre.size(); ++k)
    fields.col(static_cast<Eigen::Index>(k)) =
        basis.coordinates(lie_poisson_field(family[centre[k]], x));
  return numerical_rank(fields, rel_tol);
}

LieElement random_element(int n, Flavor flavor, Rng& rng) {
  const AlgebraBasis basis(n, flavor);
  std::normal_distribution<double> normal;
  RealVector c(basis.size());
  for (int k = 0; k < basis.size(); ++k) c(k) = normal(rng);
  return basis.element(c);
}

ProductElement random_like(const ProductElement& shape, Rng& rng) {
  std::vector<LieElement> f;
  for (const auto& s : shape.factors()) f.push_back(random_element(s.n(), s.flavor(), rng));
  return ProductElement(std::move(f));
}

ComplexMatrix lower_right_corner(const ComplexMatrix& m, int size) {
  if (size > m.rows()) throw Error(ErrorCode::DimensionMismatch, "corner larger than matrix");
  return m.bottomRightCorner(size, size);
}

}  // namespace mk::lie
