#pragma once

// Lagrangian planes in C^n, the det^2 map and the Maslov index of sampled loops.
//
// A plane is represented by a unitary frame u whose columns span it over R;
// the plane is invariant under u -> u O for real orthogonal O.

#include <span>
#include <vector>

#include "maslovkit/linalg.hpp"

namespace mk::maslov {

class LagrangianFrame {
 public:
  /// Throws NonUnitaryFrame when max|u*u - I| exceeds `tol`.
  explicit LagrangianFrame(ComplexMatrix u, double tol = 1e-8);

  /// R^n (u = I) and iR^n (u = iI).
  static LagrangianFrame horizontal(int n);
  static LagrangianFrame vertical(int n);

  int n() const { return static_cast<int>(u_.rows()); }
  const ComplexMatrix& unitary() const { return u_; }

 private:
  ComplexMatrix u_;
};

/// Symplectic vector space R^{2n} with coordinates (dx, dy) identified with C^n by
/// z = dx - i dy. The vertical subspace dx = 0 maps to iR^n, and under this
/// identification flows of fibrewise-convex Hamiltonians turn Lagrangian planes
/// in the positive direction of the canonical loop.
ComplexVector to_complex(const RealVector& v);

struct TangentFrame {
  LagrangianFrame frame;
  /// max |omega(e_a, e_b)| over the orthonormalized spanning vectors.
  double symplectic_residual = 0.0;
};

/// Orthonormalizes the columns of `vectors` (2n x n, layout (dx; dy)) into a frame.
/// Throws RankDeficient when the columns do not span n dimensions.
TangentFrame frame_from_tangent_vectors(const RealMatrix& vectors, double rel_tol = kRankThreshold);

/// Ordered samples of a closed curve in the Lagrangian Grassmannian.
class LagrangianLoop {
 public:
  /// Throws OpenLoop if the first and last samples are different planes.
  explicit LagrangianLoop(std::vector<LagrangianFrame> samples);

  int n() const { return samples_.front().n(); }
  const std::vector<LagrangianFrame>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

  LagrangianLoop reversed() const;
  /// this followed by `other`; both must start at the same plane.
  LagrangianLoop concatenated(const LagrangianLoop& other) const;

 private:
  std::vector<LagrangianFrame> samples_;
};

/// Frames diag(e^{it}, i, ..., i) for t uniform on [0, pi], `segments` + 1 samples.
LagrangianLoop canonical_loop(int n, int segments = 64);

/// det(u)^2. Gauge invariant.
Complex det_squared(const LagrangianFrame& frame);

/// Guard applied to every per-step phase increment.
inline constexpr double kMaxPhaseStep = 1.5707963267948966;  // pi / 2

/// Winding number of det^2 along the loop. Throws SamplingTooCoarse when any
/// phase increment reaches pi/2.
int maslov_index(const LagrangianLoop& loop);

/// dim_R(plane_p  ∩ plane_q) = n - rank Im(q* p).
int intersection_dimension(const LagrangianFrame& p, const LagrangianFrame& q,
                           double rel_tol = kRankThreshold);

/// Phases in (-pi, pi] of the eigenvalues of W W^T with W = u_ref* u. The plane
/// meets the reference in as many dimensions as there are zero phases.
std::vector<double> relative_eigenphases(const LagrangianFrame& frame,
                                         const LagrangianFrame& reference);

struct CrossingEvent {
  /// Position along the path in units of samples (k.5 for a crossing between
  /// samples k and k+1, k for a crossing exactly at sample k).
  double position = 0.0;
  /// +1 when the crossing eigenvalue moves counter-clockwise through 1.
  int sign = 0;
};

/// Crossings of an open sampled path with the cycle of planes meeting `reference`.
/// Eigenvalues that sit on the cycle across consecutive samples are stationary and
/// contribute nothing. Throws DegenerateCrossing if two moving eigenvalues are on
/// the cycle at the same sample, SamplingTooCoarse on eigenphase jumps >= pi/2.
std::vector<CrossingEvent> crossing_events(std::span<const LagrangianFrame> path,
                                           const LagrangianFrame& reference);

/// Signed count of crossings of a closed loop with the cycle of `reference`.
/// Additionally throws ResampleRequired when a crossing sits on the endpoint sample.
int signed_crossings(const LagrangianLoop& loop, const LagrangianFrame& reference);

}  // namespace mk::maslov
