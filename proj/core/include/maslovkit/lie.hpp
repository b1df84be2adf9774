#pragma once

// Matrix Lie algebras u(n), su(n) and finite products of them, with the
// Ad-invariant pairing <A,B> = -Re tr(AB) used to identify g* with g.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maslovkit/linalg.hpp"

namespace mk::lie {

enum class Flavor { U, SU };

int algebra_dimension(int n, Flavor flavor);
int algebra_rank(int n, Flavor flavor);

/// Skew-Hermitian n x n matrix, traceless when the flavor is su(n).
class LieElement {
 public:
  LieElement(ComplexMatrix entries, Flavor flavor, double tol = 1e-8);

  static LieElement zero(int n, Flavor flavor);
  /// Orthogonal (w.r.t. the pairing) projection of an arbitrary matrix onto the algebra.
  static LieElement project(const ComplexMatrix& m, Flavor flavor);

  int n() const { return static_cast<int>(entries_.rows()); }
  Flavor flavor() const { return flavor_; }
  const ComplexMatrix& matrix() const { return entries_; }

  LieElement operator+(const LieElement& other) const;
  LieElement operator-(const LieElement& other) const;
  LieElement operator*(double s) const;
  LieElement operator-() const { return *this * -1.0; }

 private:
  struct Unchecked {};
  LieElement(ComplexMatrix entries, Flavor flavor, Unchecked)
      : entries_(std::move(entries)), flavor_(flavor) {}

  ComplexMatrix entries_;
  Flavor flavor_;
};

inline LieElement operator*(double s, const LieElement& x) { return x * s; }

/// -Re tr(A B). Throws DimensionMismatch on differing shapes or flavors.
double pairing(const LieElement& a, const LieElement& b);
LieElement commutator(const LieElement& a, const LieElement& b);
/// u x u^{-1} for unitary u.
LieElement adjoint_action(const ComplexMatrix& u, const LieElement& x);
/// dim ker(ad_x) computed from the real matrix of ad_x in an orthonormal basis.
int stabilizer_dimension(const LieElement& x);

/// Orthonormal basis of u(n) or su(n) with respect to the pairing.
class AlgebraBasis {
 public:
  AlgebraBasis(int n, Flavor flavor);

  int size() const { return static_cast<int>(elements_.size()); }
  int n() const { return n_; }
  Flavor flavor() const { return flavor_; }
  const LieElement& operator[](int k) const { return elements_[k]; }

  RealVector coordinates(const LieElement& x) const;
  LieElement element(const RealVector& coords) const;

 private:
  int n_;
  Flavor flavor_;
  std::vector<LieElement> elements_;
};

/// Element of a product algebra g_1 x ... x g_m. A single algebra is the m = 1 case;
/// the two-factor case is the (plus, minus) pair.
class ProductElement {
 public:
  ProductElement() = default;
  explicit ProductElement(std::vector<LieElement> factors) : factors_(std::move(factors)) {}
  ProductElement(LieElement single) : factors_{std::move(single)} {}  // NOLINT implicit
  ProductElement(LieElement plus, LieElement minus) : factors_{std::move(plus), std::move(minus)} {}

  int factor_count() const { return static_cast<int>(factors_.size()); }
  const LieElement& factor(int k) const { return factors_.at(k); }
  LieElement& factor(int k) { return factors_.at(k); }
  const LieElement& plus() const { return factor(0); }
  const LieElement& minus() const { return factor(1); }
  const std::vector<LieElement>& factors() const { return factors_; }

  ProductElement operator+(const ProductElement& other) const;
  ProductElement operator-(const ProductElement& other) const;
  ProductElement operator*(double s) const;

  /// Same factor shapes and flavors.
  bool same_shape(const ProductElement& other) const;

 private:
  std::vector<LieElement> factors_;
};

double pairing(const ProductElement& a, const ProductElement& b);
ProductElement commutator(const ProductElement& a, const ProductElement& b);
ProductElement zero_like(const ProductElement& x);

/// Real coordinates of a product element in the concatenated orthonormal bases.
class ProductBasis {
 public:
  explicit ProductBasis(const ProductElement& shape);
  int size() const { return total_; }
  RealVector coordinates(const ProductElement& x) const;
  ProductElement element(const RealVector& coords) const;

 private:
  std::vector<AlgebraBasis> bases_;
  int total_ = 0;
};

/// Scalar function on a (product) Lie coalgebra, with an optional analytic gradient.
struct LieFunction {
  std::function<double(const ProductElement&)> value;
  std::function<ProductElement(const ProductElement&)> analytic_gradient;
  std::string label;

  double operator()(const ProductElement& x) const { return value(x); }
};

/// Gradient with respect to the pairing: df(x)[v] = <grad, v>. Analytic when the
/// function provides one, otherwise central differences with step
/// `rel_step * max(1, |coordinate|)`.
ProductElement gradient(const LieFunction& f, const ProductElement& x, double rel_step = 1e-5);

/// {f,g}(x) = <x, [grad f(x), grad g(x)]>, summed over factors.
double lie_poisson_bracket(const LieFunction& f, const LieFunction& g, const ProductElement& x);

/// Hamiltonian vector field of f on the coalgebra: x' = [x, grad f(x)].
ProductElement lie_poisson_field(const LieFunction& f, const ProductElement& x);

/// Linear form x -> <a, x>.
LieFunction linear_form(const ProductElement& a);

// --- Casimirs and argument shifts -----------------------------------------

enum class CasimirKind { TraceSquare, TraceCube, TraceK, Determinant, LinearTrace };

/// Ad-invariant function on one factor of a product algebra.
///   TraceSquare : 1/2 Re tr(x^2)
///   TraceCube   : Re tr((-i x)^3)
///   TraceK      : Re tr((-i x)^k)
///   Determinant : Re det(-i x)
///   LinearTrace : Re tr(-i x)
/// The -i rescalings make the odd-degree invariants real on skew-Hermitian input.
struct CasimirSpec {
  CasimirKind kind = CasimirKind::TraceSquare;
  int power = 2;   // only read for TraceK
  int factor = 0;  // which factor of the product it acts on
};

double evaluate_casimir(const CasimirSpec& spec, const LieElement& x);
LieElement casimir_gradient(const CasimirSpec& spec, const LieElement& x);
LieFunction casimir_function(const CasimirSpec& spec);

struct ShiftFamilyMember {
  CasimirSpec casimir;
  double lambda = 0.0;
  ProductElement shift;

  double operator()(const ProductElement& x) const;
  LieFunction as_function() const;
};

struct ShiftFamily {
  std::vector<ShiftFamilyMember> members;
  /// False when the shift direction has a stabilizer larger than the rank.
  bool shift_is_regular = true;

  std::vector<LieFunction> functions() const;
};

/// Regular iff every factor's stabilizer dimension equals its rank.
bool is_regular(const ProductElement& a);

/// All members g(x + lambda a) for g in `casimirs`, lambda in `lambdas`.
ShiftFamily mf_shift_family(const std::vector<CasimirSpec>& casimirs, const ProductElement& a,
                            const std::vector<double>& lambdas);

/// Rank of the gradients of `family` at x.
int differential_dimension(const std::vector<LieFunction>& family, const ProductElement& x,
                           double rel_tol = kRankThreshold);

/// Dimension of the span of the Hamiltonian fields of the centre of `family` at x.
/// Centre membership is decided numerically: a member is central when its bracket
/// with every member is below `centre_tol` at x and at `probe_count` seeded random points.
int differential_rank(const std::vector<LieFunction>& family, const ProductElement& x,
                      double rel_tol = kRankThreshold, double centre_tol = 1e-6,
                      int probe_count = 5, std::uint64_t seed = 0);

/// Random element with independent standard-normal coordinates.
LieElement random_element(int n, Flavor flavor, Rng& rng);
ProductElement random_like(const ProductElement& shape, Rng& rng);

/// Block embedding and projection used by the homogeneous-space integrals:
/// lower-right m x m corner of an n x n matrix.
ComplexMatrix lower_right_corner(const ComplexMatrix& m, int size);

}  // namespace mk::lie
