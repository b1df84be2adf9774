#include "maslovkit/maslov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "maslovkit/error.hpp"

namespace mk::maslov {
namespace {

constexpr double kPhaseSnap = 1e-8;

double snap(double phase) { return std::abs(phase) < kPhaseSnap ? 0.0 : phase; }

int side(double phase) { return phase > 0 ? 1 : (phase < 0 ? -1 : 0); }

void require_same_n(const LagrangianFrame& a, const LagrangianFrame& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "frames of different dimension");
}

// Reorders `next` so that next[j] continues track j, whose next value is predicted to be
// predicted[j]. Eigenvalues keep their cyclic order on the circle between nearby samples,
// so only cyclic shifts of the sorted lists are candidates. Predicting by the last step
// rather than matching against the current values keeps tracks apart when several
// eigenvalues coincide at a sample.
std::vector<double> match_tracks(const std::vector<double>& predicted, std::vector<double> next) {
  const std::size_t n = predicted.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return predicted[a] < predicted[b]; });
  std::sort(next.begin(), next.end());
  std::size_t best_shift = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n; ++s) {
    double cost = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      cost += std::abs(wrap_angle(next[(j + s) % n] - predicted[order[j]]));
    if (cost < best_cost) {
      best_cost = cost;
      best_shift = s;
    }
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[order[j]] = next[(j + best_shift) % n];
  return out;
}

struct TrackAnalysis {
  std::vector<CrossingEvent> events;
  bool endpoint_crossing = false;
};

TrackAnalysis analyze_tracks(const std::vector<std::vector<double>>& tracks) {
  TrackAnalysis out;
  if (tracks.empty()) return out;
  const std::size_t samples = tracks.size();
  const std::size_t n = tracks.front().size();
  std::vector<int> moving_zero_count(samples, 0);

  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> phi(samples);
    for (std::size_t k = 0; k < samples; ++k) phi[k] = tracks[k][j];

    for (std::size_t k = 0; k + 1 < samples; ++k) {
      const double step = wrap_angle(phi[k + 1] - phi[k]);
      if (std::abs(step) >= kMaxPhaseStep)
        throw Error(ErrorCode::SamplingTooCoarse, "eigenphase step exceeds pi/2");
      if (phi[k] != 0.0 && phi[k + 1] != 0.0 && side(phi[k]) != side(phi[k] + step))
        out.events.push_back({static_cast<double>(k) + 0.5, step > 0 ? 1 : -1});
    }

    // Runs of samples sitting exactly on the cycle.
    std::size_t k = 0;
    while (k < samples) {
      if (phi[k] != 0.0) {
        ++k;
        continue;
      }
      const std::size_t a = k;
      while (k < samples && phi[k] == 0.0) ++k;
      const std::size_t b = k - 1;
      if (a == 0 && b == samples - 1) continue;  // stationary on the whole path
      for (std::size_t m = a; m <= b; ++m) ++moving_zero_count[m];
      if (a == 0 || b == samples - 1) {
        out.endpoint_crossing = true;
        continue;
      }
      const double before = phi[a] + wrap_angle(phi[a - 1] - phi[a]);
      const double after = phi[b] + wrap_angle(phi[b + 1] - phi[b]);
      const int s_in = side(before);
      const int s_out = side(after);
      if (s_in != s_out)
        out.events.push_back({0.5 * static_cast<double>(a + b), s_out > s_in ? 1 : -1});
    }
  }
  for (int c : moving_zero_count)
    if (c >= 2) throw Error(ErrorCode::DegenerateCrossing, "two eigenvalues on the cycle at one sample");
  std::sort(out.events.begin(), out.events.end(),
            [](const CrossingEvent& a, const CrossingEvent& b) { return a.position < b.position; });
  return out;
}

TrackAnalysis analyze_path(std::span<const LagrangianFrame> path, const LagrangianFrame& reference) {
  std::vector<std::vector<double>> tracks;
  tracks.reserve(path.size());
  for (const auto& f : path) {
    require_same_n(f, reference);
    std::vector<double> phases = relative_eigenphases(f, reference);
    for (double& p : phases) p = snap(p);
    if (tracks.empty()) {
      tracks.push_back(std::move(phases));
      continue;
    }
    std::vector<double> predicted = tracks.back();
    if (tracks.size() >= 2) {
      const auto& before = tracks[tracks.size() - 2];
      for (std::size_t j = 0; j < predicted.size(); ++j)
        predicted[j] = wrap_angle(predicted[j] + wrap_angle(predicted[j] - before[j]));
    }
    tracks.push_back(match_tracks(predicted, std::move(phases)));
  }
  return analyze_tracks(tracks);
}

}  // namespace

LagrangianFrame::LagrangianFrame(ComplexMatrix u, double tol) : u_(std::move(u)) {
  if (u_.rows() == 0 || u_.rows() != u_.cols())
    throw Error(ErrorCode::DimensionMismatch, "frame must be a non-empty square matrix");
  if (!u_.allFinite()) throw Error(ErrorCode::NonFinite, "frame entries");
  if (unitarity_defect(u_) > tol) throw Error(ErrorCode::NonUnitaryFrame, "u*u deviates from I");
}

LagrangianFrame LagrangianFrame::horizontal(int n) {
  return LagrangianFrame(ComplexMatrix::Identity(n, n));
}

LagrangianFrame LagrangianFrame::vertical(int n) {
  return LagrangianFrame(Complex(0.0, 1.0) * ComplexMatrix::Identity(n, n));
}

ComplexVector to_complex(const RealVector& v) {
  const Eigen::Index n = v.size() / 2;
  ComplexVector z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = Complex(v(i), -v(n + i));
  return z;
}

TangentFrame frame_from_tangent_vectors(const RealMatrix& vectors, double rel_tol) {
  const Eigen::Index two_n = vectors.rows();
  const Eigen::Index n = two_n / 2;
  if (two_n % 2 != 0 || vectors.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "expected 2n x n spanning vectors");
  if (numerical_rank(vectors, rel_tol) < n)
    throw Error(ErrorCode::RankDeficient, "tangent vectors do not span an n-plane");
  Eigen::HouseholderQR<RealMatrix> qr(vectors);
  const RealMatrix q = RealMatrix(qr.householderQ()).leftCols(n);

  double residual = 0.0;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b) {
      // omega = sum dy ^ dx
      const double w = q.col(a).tail(n).dot(q.col(b).head(n)) - q.col(a).head(n).dot(q.col(b).tail(n));
      residual = std::max(residual, std::abs(w));
    }

  ComplexMatrix u(n, n);
  for (Eigen::Index a = 0; a < n; ++a) u.col(a) = to_complex(q.col(a));
  // A real-orthonormal basis of a Lagrangian plane is unitary; re-unitarize to absorb
  // the residual so the frame invariant holds exactly.
  Eigen::JacobiSVD<ComplexMatrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const ComplexMatrix polar = svd.matrixU() * svd.matrixV().adjoint();
  return TangentFrame{LagrangianFrame(polar, 1e-6), residual};
}

LagrangianLoop::LagrangianLoop(std::vector<LagrangianFrame> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw Error(ErrorCode::InvalidArgument, "loop needs at least two samples");
  const int n = samples_.front().n();
  for (const auto& s : samples_)
    if (s.n() != n) throw Error(ErrorCode::DimensionMismatch, "loop samples of mixed dimension");
  if (intersection_dimension(samples_.front(), samples_.back()) != n)
    throw Error(ErrorCode::OpenLoop, "first and last samples span different planes");
}

LagrangianLoop LagrangianLoop::reversed() const {
  std::vector<LagrangianFrame> r(samples_.rbegin(), samples_.rend());
  return LagrangianLoop(std::move(r));
}

LagrangianLoop LagrangianLoop::concatenated(const LagrangianLoop& other) const {
  if (intersection_dimension(samples_.back(), other.samples_.front()) != n())
    throw Error(ErrorCode::OpenLoop, "loops do not share a base plane");
  std::vector<LagrangianFrame> s = samples_;
  s.insert(s.end(), other.samples_.begin() + 1, other.samples_.end());
  return LagrangianLoop(std::move(s));
}

LagrangianLoop canonical_loop(int n, int segments) {
  if (n < 1 || segments < 1) throw Error(ErrorCode::InvalidArgument, "canonical loop size");
  std::vector<LagrangianFrame> samples;
  samples.reserve(segments + 1);
  for (int k = 0; k <= segments; ++k) {
    const double t = std::numbers::pi * k / segments;
    ComplexMatrix u = Complex(0.0, 1.0) * ComplexMatrix::Identity(n, n);
    u(0, 0) = std::polar(1.0, t);
    samples.emplace_back(std::move(u));
  }
  return LagrangianLoop(std::move(samples));
}

Complex det_squared(const LagrangianFrame& frame) {
  const Complex d = frame.unitary().determinant();
  return d * d;
}

int maslov_index(const LagrangianLoop& loop) {
  const auto& s = loop.samples();
  double total = 0.0;
  Complex prev = det_squared(s.front());
  for (std::size_t k = 1; k < s.size(); ++k) {
    const Complex cur = det_squared(s[k]);
    const double step = std::arg(cur / prev);
    if (std::abs(step) >= kMaxPhaseStep)
      throw Error(ErrorCode::SamplingTooCoarse,
                  "det^2 phase step " + std::to_string(step) + " at sample " + std::to_string(k));
    total += step;
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

int intersection_dimension(const LagrangianFrame& p, const LagrangianFrame& q, double rel_tol) {
  require_same_n(p, q);
  const RealMatrix im = (q.unitary().adjoint() * p.unitary()).imag();
  // Singular values of Im(q* p) are |sin| of the principal angles, bounded by 1, so
  // the threshold is taken against 1 rather than the largest singular value.
  Eigen::JacobiSVD<RealMatrix> svd(im);
  int zero = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) <= rel_tol) ++zero;
  return zero;
}

std::vector<double> relative_eigenphases(const LagrangianFrame& frame,
                                         const LagrangianFrame& reference) {
  require_same_n(frame, reference);
  const ComplexMatrix w = reference.unitary().adjoint() * frame.unitary();
  const ComplexMatrix m = w * w.transpose();
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
  std::vector<double> phases(static_cast<std::size_t>(frame.n()));
  for (int i = 0; i < frame.n(); ++i) phases[static_cast<std::size_t>(i)] = std::arg(es.eigenvalues()(i));
  std::sort(phases.begin(), phases.end());
  return phases;
}

std::vector<CrossingEvent> crossing_events(std::span<const LagrangianFrame> path,
                                           const LagrangianFrame& reference) {
  return analyze_path(path, reference).events;
}

int signed_crossings(const LagrangianLoop& loop, const LagrangianFrame& reference) {
  const auto analysis = analyze_path(loop.samples(), reference);
  if (analysis.endpoint_crossing)
    throw Error(ErrorCode::ResampleRequired, "a crossing sits on the loop's base sample");
  int total = 0;
  for (const auto& e : analysis.events) total += e.sign;
  return total;
}

}  // namespace mk::maslov
