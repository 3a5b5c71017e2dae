// Copyright 2026 The gpas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gpas/quadric_solver.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

namespace gpas {

namespace {

using Complex = std::complex<double>;
using Vec4 = Eigen::Vector4d;
using Vec4c = Eigen::Vector4cd;
using Mat4c = Eigen::Matrix4cd;
using CoeffMatrix = Eigen::Matrix<double, 4, kNumMonomials>;
using CoeffMatrixC = Eigen::Matrix<Complex, 4, kNumMonomials>;
using MonomialVecC = Eigen::Matrix<Complex, kNumMonomials, 1>;

// The corrector only has to keep each path inside its root's convergence
// basin; endpoint accuracy comes from the final polish. A loose tolerance
// here lets the step control settle on large steps.
constexpr double kTrackTol = 1e-3;
constexpr double kInitialStep = 0.1;
constexpr double kMaxStepSize = 0.3;
constexpr double kMinStepSize = 1e-13;
constexpr double kDivergenceNorm = 1e7;
constexpr int kMaxCorrectorIters = 3;
constexpr int kMaxTrackSteps = 3000;
constexpr double kStepGrowth = 1.5;
constexpr int kStepGrowthStreak = 3;

// A generic instance of the system family, preprocessed like every runtime
// instance (row-normalized, variable-scaled), together with its 16 simple
// finite roots. Runtime instances are solved by tracking these roots along
// the straight segment between the two coefficient matrices, which is far
// shorter than a path from an artificial start system. The roots were
// computed ahead of time with a tightened tracker and Newton-certified to
// residuals below 1e-11; minimum pairwise root separation is 2.0.
constexpr double kAnchorCoeffs[4][kNumMonomials] = {
    {0.025446448285031079, -0.059725395434341196, 0, 0, 0.023504015139613407,
     -0.035219102375948171, -0.043637651166948323, 0.029860518170017392,
     0.043045958906984795, 0,
     -0.044373792051202565, 0.4187579250282536, -0.046187762230764429,
     -0.10897184858212781, -1},
    {0, 0, -0.24806957388892598, 0.33724098711004252, 0,
     0.17061318077973506, -0.15549943373567049, 0.33951854146784016,
     -0.36002419862937729, -0.083776617594829322,
     0, 0, -0.79642652368057465, 1, 0},
    {0.062690768695552485, 0.062690768695552485, -0.047514811274817825,
     -0.047514811274817825, -0.085970246992485191,
     0, 0, 0, 0, 0.089280410177871986,
     0.066793230505901635, -0.38237899446762313, 0, 0, 1},
    {0.00029349756925007431, 0.071530249796751669, -0.071236752227501587, 0,
     -0.098092165248839444,
     0.139004609165916, 0, 0, 0, 0,
     0.11989191814396544, -0.43629493720405177, -0.066029979645835624, 0, 1}};

constexpr double kAnchorRoots[16][8] = {
    {3.9750712916381161, -2.9878476045452866e-15, 7.2982465748500545,
     -3.9837968060603824e-15, 2.2784938207202936, -2.8218560709594375e-15,
     4.574909282102098, -2.6558645373735883e-15},
    {2.5394974478830963, 2.3915700075989865, 6.0364715443210981,
     2.1246102090276824, 2.3790477806515913, 0.83931479425097355,
     2.5630390850742222, 0.45567234203825718},
    {2.3138381947517419, 1.465992146786264, 4.7913497737494382,
     -0.64467554177098318, 2.3266859879172026, -0.67770206858747284,
     1.7157159879779411, 1.0550880514574676},
    {2.6576330815090534, -3.3744050219561141, 7.1898427054811558,
     -2.8244809289677342, 2.3523699285174215, -2.2026818294058423,
     3.4511277697459, -2.2992334310227589},
    {6.7600346942994713, -1.9478572772975489, 6.7599430785256462,
     -3.6129450414960846, 6.7050242457161922, -3.5157706626813745,
     5.3674791239312309, -3.6731692019943885},
    {2.6576330815090667, 3.3744050219561079, 7.1898427054811584,
     2.8244809289677208, 2.3523699285174295, 2.2026818294058352,
     3.4511277697459124, 2.2992334310227487},
    {2.3138381947517388, -1.4659921467862609, 4.7913497737494346,
     0.6446755417709874, 2.3266859879171977, 0.67770206858747617,
     1.7157159879779387, -1.0550880514574636},
    {6.1983349666491137, -2.503526747377094e-21, 9.2280103251486434,
     -6.8859167079859634e-21, 8.0408907473451663, -5.6245438220250231e-21,
     4.8224844672766514, -4.7028319750936697e-21},
    {4.518485474099915, -1.5575269712683657e-26, 5.1461782554623792,
     -3.0241771662552709e-26, 4.5321271000867664, -3.0342745858420998e-26,
     2.4193214063637258, -1.9058879470139645e-26},
    {7.0444695816225567, 2.2466758580694416e-26, 9.6337217701014577,
     1.7077260876224464e-26, 3.5953096281575729, 9.6367248181798802e-27,
     7.505721827374165, 2.1507503719945666e-26},
    {-2.8671092792041581, 0.26292437320878348, 0.85824317880996415,
     -4.1708446199180402, -3.5412605687579868, -0.35349273689482424,
     -3.5357606515508353, -0.71823318544587655},
    {2.5394974478830918, -2.3915700075989905, 6.0364715443210963,
     -2.1246102090276895, 2.3790477806515877, -0.83931479425097988,
     2.56303908507422, -0.45567234203826379},
    {6.7600346942994562, 1.9478572772975584, 6.7599430785256311,
     3.6129450414960793, 6.7050242457161762, 3.5157706626813776,
     5.3674791239312167, 3.6731692019943867},
    {-2.8671092792041617, -0.26292437320878509, 0.85824317880996082,
     4.170844619918042, -3.5412605687579908, 0.35349273689482474,
     -3.5357606515508397, 0.71823318544587678},
    {4.1260725145945436, 1.0074371969042948, 5.9791874715618052,
     2.1121242867794381, 3.792113888390261, 2.8603239755108678,
     3.210593885101539, 3.397324269460408},
    {4.1260725145945356, -1.0074371969042915, 5.9791874715618007,
     -2.1121242867794345, 3.7921138883902512, -2.8603239755108643,
     3.2105938851015305, -3.3973242694604049}};

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> eval_system(const CoeffMatrix& a,
                                        const Eigen::Matrix<Scalar, 4, 1>& s) {
  const Eigen::Matrix<Scalar, kNumMonomials, 1> m =
      evaluate_monomials<Scalar>(s);
  Eigen::Matrix<Scalar, 4, 1> f;
  for (int k = 0; k < 4; ++k) {
    Scalar acc(0);
    for (int idx = 0; idx < kNumMonomials; ++idx) {
      acc += a(k, idx) * m(idx);
    }
    f(k) = acc;
  }
  return f;
}

template <typename CoeffMat, typename Scalar>
Eigen::Matrix<Scalar, 4, 4> eval_jacobian(
    const CoeffMat& a, const Eigen::Matrix<Scalar, 4, 1>& s) {
  Eigen::Matrix<Scalar, 4, 4> j;
  for (int k = 0; k < 4; ++k) {
    j(k, 0) = 2.0 * a(k, 0) * s(0) + a(k, 4) * s(1) + a(k, 5) * s(2) +
              a(k, 6) * s(3) + a(k, 10);
    j(k, 1) = 2.0 * a(k, 1) * s(1) + a(k, 4) * s(0) + a(k, 7) * s(2) +
              a(k, 8) * s(3) + a(k, 11);
    j(k, 2) = 2.0 * a(k, 2) * s(2) + a(k, 5) * s(0) + a(k, 7) * s(1) +
              a(k, 9) * s(3) + a(k, 12);
    j(k, 3) = 2.0 * a(k, 3) * s(3) + a(k, 6) * s(0) + a(k, 8) * s(1) +
              a(k, 9) * s(2) + a(k, 13);
  }
  return j;
}

template <typename Derived>
double inf_norm(const Eigen::MatrixBase<Derived>& v) {
  return v.derived().cwiseAbs().maxCoeff();
}

// Row-normalizes to unit max-norm. Returns false when a row is all zeros.
bool normalize_rows(CoeffMatrix& a) {
  for (int k = 0; k < 4; ++k) {
    const double scale = a.row(k).cwiseAbs().maxCoeff();
    if (scale <= 0.0) {
      return false;
    }
    a.row(k) /= scale;
  }
  return true;
}

// Damped Newton on the real system. Returns the final residual.
double polish_real(const CoeffMatrix& a, Vec4& s, int max_iters,
                   double target) {
  Vec4 f = eval_system<double>(a, s);
  double res = inf_norm(f);
  for (int it = 0; it < max_iters && res > target; ++it) {
    const Eigen::Matrix4d jac = eval_jacobian(a, s);
    const Vec4 delta = jac.partialPivLu().solve(-f);
    if (!delta.allFinite()) {
      break;
    }
    double lambda = 1.0;
    bool improved = false;
    for (int h = 0; h < 8; ++h) {
      const Vec4 cand = s + lambda * delta;
      const Vec4 cand_f = eval_system<double>(a, cand);
      const double cand_res = inf_norm(cand_f);
      if (cand_res < res) {
        s = cand;
        f = cand_f;
        res = cand_res;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) {
      break;
    }
  }
  return res;
}

// Damped Newton on the complex system. Returns the final residual.
double polish_complex(const CoeffMatrix& a, Vec4c& s, int max_iters,
                      double target) {
  Vec4c f = eval_system<Complex>(a, s);
  double res = inf_norm(f);
  for (int it = 0; it < max_iters && res > target; ++it) {
    const Mat4c jac = eval_jacobian(a, s);
    const Vec4c delta = jac.partialPivLu().solve(-f);
    if (!delta.allFinite()) {
      break;
    }
    double lambda = 1.0;
    bool improved = false;
    for (int h = 0; h < 8; ++h) {
      const Vec4c cand = s + lambda * delta;
      const Vec4c cand_f = eval_system<Complex>(a, cand);
      const double cand_res = inf_norm(cand_f);
      if (cand_res < res) {
        s = cand;
        f = cand_f;
        res = cand_res;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) {
      break;
    }
  }
  return res;
}

template <typename CoeffMat>
Vec4c eval_rows(const CoeffMat& a, const MonomialVecC& m) {
  Vec4c f;
  for (int k = 0; k < 4; ++k) {
    Complex acc(0);
    for (int idx = 0; idx < kNumMonomials; ++idx) {
      acc += a(k, idx) * m(idx);
    }
    f(k) = acc;
  }
  return f;
}

// Value and Jacobian in one pass. Each row is quadratic, so with gradient
// row j and linear coefficients b, j . x = 2 q(x) + b . x for the purely
// quadratic part q, giving p(x) = (j . x + b . x) / 2 + c0.
void eval_value_jacobian(const CoeffMatrixC& c, const Vec4c& x, Mat4c& jac,
                         Vec4c& value) {
  jac = eval_jacobian(c, x);
  for (int k = 0; k < 4; ++k) {
    Complex jx(0);
    Complex bx(0);
    for (int i = 0; i < 4; ++i) {
      jx += jac(k, i) * x(i);
      bx += c(k, 10 + i) * x(i);
    }
    value(k) = 0.5 * (jx + bx) + c(k, 14);
  }
}

// Gaussian elimination with partial pivoting on the 4x4 complex system
// A x = b, specialized for the tracker's inner loop.
bool solve4c(Mat4c a, Vec4c b, Vec4c& x) {
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    double best = std::norm(a(col, col));
    for (int r = col + 1; r < 4; ++r) {
      const double mag = std::norm(a(r, col));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0.0) {
      return false;
    }
    if (pivot != col) {
      a.row(col).swap(a.row(pivot));
      std::swap(b(col), b(pivot));
    }
    const Complex inv = 1.0 / a(col, col);
    for (int r = col + 1; r < 4; ++r) {
      const Complex factor = a(r, col) * inv;
      for (int cc = col + 1; cc < 4; ++cc) {
        a(r, cc) -= factor * a(col, cc);
      }
      b(r) -= factor * b(col);
    }
  }
  for (int r = 3; r >= 0; --r) {
    Complex acc = b(r);
    for (int cc = r + 1; cc < 4; ++cc) {
      acc -= a(r, cc) * x(cc);
    }
    x(r) = acc / a(r, r);
  }
  return true;
}

struct PathOutcome {
  enum class Kind { kFailed, kFinite };

  Kind kind = Kind::kFailed;
  Vec4c endpoint = Vec4c::Zero();
};

// Tracks one anchor root along H(x, s) = C(tau(s)) m(x) with the coefficient
// segment C(tau) = tau * A + (1 - tau) * B, where A is the target matrix and
// B the anchor. Both matrices are real, so the straight segment could cross
// the discriminant where real roots collide; the Moebius arc
// tau(s) = gamma s / (gamma s + 1 - s) with a random non-real unit gamma
// detours around it through complex coefficient space while keeping
// tau(0) = 0 and tau(1) = 1 exact. Both endpoints of the segment are generic
// members of the same family with all roots finite, so tracking runs
// directly in affine coordinates; the divergence cutoff discards the rare
// path whose target root escapes toward infinity.
PathOutcome track_path(const CoeffMatrix& a, const CoeffMatrix& anchor,
                       const Complex& gamma, const Vec4c& start) {
  PathOutcome out;
  Vec4c s = start;
  double t = 0.0;
  double dt = kInitialStep;
  int streak = 0;

  // Previous accepted point and tangent, for the Hermite predictor.
  Vec4c s_prev = Vec4c::Zero();
  Vec4c ds_prev = Vec4c::Zero();
  double h_prev = 0.0;

  const CoeffMatrix direction = a - anchor;

  auto combined = [&](double ss) -> CoeffMatrixC {
    const Complex tau = gamma * ss / (gamma * ss + (1.0 - ss));
    const Complex rem = 1.0 - tau;
    CoeffMatrixC c;
    for (int k = 0; k < 4; ++k) {
      for (int idx = 0; idx < kNumMonomials; ++idx) {
        c(k, idx) = tau * a(k, idx) + rem * anchor(k, idx);
      }
    }
    return c;
  };

  for (int step = 0; step < kMaxTrackSteps && t < 1.0 - 1e-12; ++step) {
    // Predictor tangent: dx/ds = -H_x^{-1} H_s with
    // H_s = tau'(s) (A - B) m(x), where tau'(s) = gamma / (gamma s + 1 - s)^2.
    // Computed once and reused across halved retries.
    const Complex denom = gamma * t + (1.0 - t);
    const Complex dtau = gamma / (denom * denom);
    const Vec4c ht =
        dtau * eval_rows(direction, evaluate_monomials<Complex>(s));
    Vec4c ds;
    if (!solve4c(eval_jacobian(combined(t), s), -ht, ds) || !ds.allFinite()) {
      return out;
    }

    bool accepted = false;
    while (!accepted) {
      const double dt_eff = std::min(dt, 1.0 - t);
      const double t_next = t + dt_eff;
      const CoeffMatrixC c_next = combined(t_next);

      // Cubic Hermite extrapolation through the previous and current
      // accepted points; falls back to Euler on the first step.
      Vec4c sc;
      if (h_prev > 0.0) {
        const double u = 1.0 + dt_eff / h_prev;
        const double u2 = u * u;
        const double u3 = u2 * u;
        sc = (2.0 * u3 - 3.0 * u2 + 1.0) * s_prev +
             ((u3 - 2.0 * u2 + u) * h_prev) * ds_prev +
             (-2.0 * u3 + 3.0 * u2) * s + ((u3 - u2) * h_prev) * ds;
      } else {
        sc = s + dt_eff * ds;
      }

      bool converged = false;
      for (int it = 0; it < kMaxCorrectorIters; ++it) {
        Mat4c jac;
        Vec4c value;
        eval_value_jacobian(c_next, sc, jac, value);
        Vec4c delta;
        if (!solve4c(jac, -value, delta) || !delta.allFinite()) {
          break;
        }
        sc += delta;
        if (inf_norm(delta) <= kTrackTol * (1.0 + inf_norm(sc))) {
          converged = true;
          break;
        }
      }

      if (converged) {
        s_prev = s;
        ds_prev = ds;
        h_prev = dt_eff;
        s = sc;
        t = t_next;
        accepted = true;
        if (++streak >= kStepGrowthStreak) {
          dt = std::min(dt * kStepGrowth, kMaxStepSize);
          streak = 0;
        }
      } else {
        dt *= 0.5;
        streak = 0;
        if (dt < kMinStepSize) {
          // Paths that stall right at the end have in practice already
          // settled on their limit; classify instead of discarding.
          if (t > 0.999) {
            out.kind = PathOutcome::Kind::kFinite;
            out.endpoint = s;
          }
          return out;
        }
      }
    }

    if (inf_norm(s) > kDivergenceNorm) {
      return out;
    }
  }

  if (t < 1.0 - 1e-12) {
    return out;
  }
  out.kind = PathOutcome::Kind::kFinite;
  out.endpoint = s;
  return out;
}

void merge_into(SolutionSet& set, const Solution& candidate,
                double merge_tol) {
  for (Solution& existing : set) {
    const double scale =
        1.0 + std::max(inf_norm(existing.values), inf_norm(candidate.values));
    if (inf_norm(existing.values - candidate.values) <= merge_tol * scale) {
      if (candidate.residual < existing.residual) {
        existing = candidate;
      }
      return;
    }
  }
  set.push_back(candidate);
}

void sort_solutions(SolutionSet& set) {
  std::sort(set.begin(), set.end(), [](const Solution& a, const Solution& b) {
    for (int i = 0; i < 4; ++i) {
      if (a.values(i) != b.values(i)) {
        return a.values(i) < b.values(i);
      }
    }
    return false;
  });
}

}  // namespace

// The tracker's inner loop is sensitive to the absolute code address it
// lands on (2x swings between otherwise identical links). Pinning the
// function to a page boundary makes its speed independent of link order.
#if defined(__GNUC__) || defined(__clang__)
__attribute__((aligned(4096)))
#endif
Result<SolutionSet>
solve(const QuadricSystem& system, const SolveOptions& options) {
  if (!system.coeffs.allFinite()) {
    return Error::kSolverFailure;
  }
  CoeffMatrix canonical = system.coeffs;
  if (!normalize_rows(canonical)) {
    return Error::kSolverFailure;
  }

  // Substituting s = sigma * z keeps the tracked roots near unit magnitude,
  // which the step control and divergence cutoff are tuned for.
  const double max_quad =
      canonical.block<4, 10>(0, 0).cwiseAbs().maxCoeff();
  const double max_lin = canonical.block<4, 4>(0, 10).cwiseAbs().maxCoeff();
  const double max_const = canonical.col(14).cwiseAbs().maxCoeff();
  double sigma = 1.0;
  if (max_quad > 0.0) {
    if (max_const > 0.0) {
      sigma = std::sqrt(max_const / max_quad);
    } else if (max_lin > 0.0) {
      sigma = max_lin / max_quad;
    }
  }
  sigma = std::clamp(sigma, 1e-6, 1e6);

  CoeffMatrix scaled = canonical;
  scaled.block<4, 10>(0, 0) *= sigma * sigma;
  scaled.block<4, 4>(0, 10) *= sigma;
  if (!normalize_rows(scaled)) {
    return Error::kSolverFailure;
  }

  const CoeffMatrix anchor =
      Eigen::Map<const Eigen::Matrix<double, 4, kNumMonomials, Eigen::RowMajor>>(
          &kAnchorCoeffs[0][0]);

  // Tracks the 16 paths along an arc drawn from the seed. A path can stall
  // near a singular point of an unlucky arc, so while fewer than 16 distinct
  // endpoints are certified, the batch is re-tracked along a fresh arc and
  // the certified endpoints are pooled.
  std::uint64_t state = options.seed ^ 0x8000000000000001ULL;
  constexpr int kMaxTrackPasses = 3;
  std::vector<Vec4c> endpoints;
  endpoints.reserve(kMaxSolutions);
  for (int pass = 0; pass < kMaxTrackPasses; ++pass) {
    // The arc parameter `gamma` bends the time reparameterization into the
    // complex plane, with its phase kept at least 45 degrees off the real
    // axis.
    const double gamma_sign =
        splitmix64_next(state) & 1 ? 1.0 : -1.0;
    const double gamma_phase =
        gamma_sign *
        (M_PI / 4.0 + (M_PI / 2.0) * unit_double(splitmix64_next(state)));
    const Complex gamma(std::cos(gamma_phase), std::sin(gamma_phase));

    for (int root = 0; root < kMaxSolutions; ++root) {
      Vec4c start;
      for (int k = 0; k < 4; ++k) {
        start(k) =
            Complex(kAnchorRoots[root][2 * k], kAnchorRoots[root][2 * k + 1]);
      }

      const PathOutcome path = track_path(scaled, anchor, gamma, start);
      if (path.kind == PathOutcome::Kind::kFailed) {
        continue;
      }

      Vec4c endpoint = path.endpoint;
      const double complex_residual =
          polish_complex(scaled, endpoint, 30, 1e-12);
      if (complex_residual > options.residual_tol) {
        continue;
      }

      bool duplicate = false;
      for (const Vec4c& seen : endpoints) {
        const double scale = 1.0 + seen.cwiseAbs().maxCoeff();
        if ((endpoint - seen).cwiseAbs().maxCoeff() <= 1e-9 * scale) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) {
        endpoints.push_back(endpoint);
      }
    }
    if (static_cast<int>(endpoints.size()) >= kMaxSolutions) {
      break;
    }
  }

  if (endpoints.empty()) {
    return Error::kSolverFailure;
  }

  SolutionSet real_roots;
  for (const Vec4c& endpoint : endpoints) {
    const Vec4c unscaled = sigma * endpoint;
    bool is_real = true;
    for (int k = 0; k < 4; ++k) {
      if (std::abs(unscaled(k).imag()) >
          1e-6 * (1.0 + std::abs(unscaled(k).real()))) {
        is_real = false;
        break;
      }
    }
    if (!is_real) {
      continue;
    }

    Solution candidate;
    candidate.values = unscaled.real();
    candidate.residual = polish_real(canonical, candidate.values, 25, 1e-12);
    if (candidate.residual > options.residual_tol) {
      continue;
    }
    merge_into(real_roots, candidate, options.merge_tol);
  }

  sort_solutions(real_roots);
  return real_roots;
}

GridSpec default_grid(double max_pinhole_distance) {
  GridSpec grid;
  const double bound = 10.0 * (max_pinhole_distance + 1.0);
  grid.lo = -bound;
  grid.hi = bound;
  grid.nodes_per_axis = 9;
  return grid;
}

SolutionSet oracle_solve(const QuadricSystem& system, const GridSpec& grid) {
  SolutionSet roots;
  if (!system.coeffs.allFinite()) {
    return roots;
  }
  CoeffMatrix canonical = system.coeffs;
  if (!normalize_rows(canonical)) {
    return roots;
  }

  const int n = std::max(grid.nodes_per_axis, 1);
  auto node = [&](int idx) {
    if (n == 1) {
      return 0.5 * (grid.lo + grid.hi);
    }
    return grid.lo + (grid.hi - grid.lo) * idx / (n - 1);
  };

  constexpr double kOracleResidualTol = 1e-10;
  constexpr double kOracleMergeTol = 1e-7;
  for (int i0 = 0; i0 < n; ++i0) {
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        for (int i3 = 0; i3 < n; ++i3) {
          Vec4 s(node(i0), node(i1), node(i2), node(i3));
          const double residual = polish_real(canonical, s, 60, 1e-12);
          if (residual > kOracleResidualTol || !s.allFinite()) {
            continue;
          }
          merge_into(roots, {s, residual}, kOracleMergeTol);
        }
      }
    }
  }
  sort_solutions(roots);
  return roots;
}

SolutionSet filter_positive(const SolutionSet& solutions, double slack) {
  SolutionSet kept;
  kept.reserve(solutions.size());
  for (const Solution& solution : solutions) {
    if (solution.values.minCoeff() < -slack) {
      continue;
    }
    Solution clamped = solution;
    clamped.values = clamped.values.cwiseMax(0.0);
    kept.push_back(clamped);
  }
  return kept;
}

}  // namespace gpas
