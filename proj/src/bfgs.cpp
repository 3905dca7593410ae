#include "adapt_forge/bfgs.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>

namespace adapt_forge {

namespace {

constexpr double kC1 = 1e-4;
constexpr double kC2 = 0.9;

struct Point {
  Eigen::VectorXd x;
  double f;
  Eigen::VectorXd g;
};

class Evaluator {
 public:
  Evaluator(const ObjectiveFn& fn, int budget) : fn_(fn), budget_(budget) {}

  std::optional<Point> operator()(const Eigen::VectorXd& x) {
    if (count_ >= budget_) return std::nullopt;
    ++count_;
    std::vector<double> xv(x.data(), x.data() + x.size());
    std::vector<double> gv(xv.size(), 0.0);
    const double f = fn_(xv, gv);
    Point p{x, f, Eigen::Map<Eigen::VectorXd>(gv.data(), x.size())};
    if (std::isfinite(f) && (!best_ || f < best_->f)) best_ = p;
    return p;
  }

  int count() const { return count_; }
  const std::optional<Point>& best() const { return best_; }

 private:
  const ObjectiveFn& fn_;
  int budget_;
  int count_ = 0;
  std::optional<Point> best_;
};

// Minimizer of the cubic interpolating (a, fa, da) and (b, fb, db), clamped
// to the interior of [a, b].
double cubic_step(double a, double fa, double da, double b, double fb, double db) {
  const double lo = std::min(a, b), hi = std::max(a, b);
  const double d1 = da + db - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - da * db;
  double t = 0.5 * (a + b);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b - a);
    const double denom = db - da + 2.0 * d2;
    if (denom != 0.0) t = b - (b - a) * (db + d2 - d1) / denom;
  }
  const double margin = 0.1 * (hi - lo);
  if (!std::isfinite(t) || t < lo + margin || t > hi - margin) t = 0.5 * (a + b);
  return t;
}

// Strong-Wolfe line search along d from p (Nocedal & Wright, Alg. 3.5/3.6).
std::optional<Point> line_search(Evaluator& eval, const Point& p,
                                 const Eigen::VectorXd& d, double alpha1) {
  const double phi0 = p.f, dphi0 = p.g.dot(d);
  if (!(dphi0 < 0.0)) return std::nullopt;
  // Objective values closer than this are indistinguishable in double precision.
  const double noise = 1e-14 * std::max(1.0, std::abs(phi0));
  const auto sufficient = [&](double a, double f) {
    return f <= phi0 + kC1 * a * dphi0 + noise;
  };
  const double dmax = d.lpNorm<Eigen::Infinity>();

  const auto at = [&](double a) { return eval(p.x + a * d); };

  auto zoom = [&](double lo, Point plo, double hi, Point phi_) -> std::optional<Point> {
    for (int it = 0; it < 40; ++it) {
      const double a = cubic_step(lo, plo.f, plo.g.dot(d), hi, phi_.f, phi_.g.dot(d));
      auto pa = at(a);
      if (!pa) return std::nullopt;
      if (!sufficient(a, pa->f) || pa->f > plo.f + noise) {
        hi = a;
        phi_ = *pa;
      } else {
        const double da = pa->g.dot(d);
        if (std::abs(da) <= -kC2 * dphi0) return pa;
        if (da * (hi - lo) >= 0.0) {
          hi = lo;
          phi_ = plo;
        }
        lo = a;
        plo = *pa;
      }
      if (std::abs(hi - lo) * dmax < 1e-14) break;
    }
    return lo != 0.0 ? std::optional<Point>(plo) : std::nullopt;
  };

  double prev_a = 0.0;
  Point prev = p;
  double a = alpha1;
  for (int it = 0; it < 30; ++it) {
    auto pa = at(a);
    if (!pa) return std::nullopt;
    if (!std::isfinite(pa->f) || !sufficient(a, pa->f) ||
        (it > 0 && pa->f > prev.f + noise)) {
      if (!std::isfinite(pa->f)) {
        a = 0.5 * (prev_a + a);
        continue;
      }
      return zoom(prev_a, prev, a, *pa);
    }
    const double da = pa->g.dot(d);
    if (std::abs(da) <= -kC2 * dphi0) return pa;
    if (da >= 0.0) return zoom(a, *pa, prev_a, prev);
    prev_a = a;
    prev = *pa;
    a *= 2.0;
  }
  return prev_a != 0.0 ? std::optional<Point>(prev) : std::nullopt;
}

}  // namespace

BfgsResult bfgs_minimize(const ObjectiveFn& fn, std::vector<double> x0,
                         const BfgsOptions& options) {
  const Eigen::Index n = static_cast<Eigen::Index>(x0.size());
  Evaluator eval(fn, options.max_evaluations);
  BfgsResult result;

  const auto finish = [&](bool converged, std::string message) {
    const Point& best = *eval.best();
    result.x.assign(best.x.data(), best.x.data() + n);
    result.f = best.f;
    result.gradient.assign(best.g.data(), best.g.data() + n);
    result.evaluations = eval.count();
    result.converged = converged;
    result.message = std::move(message);
    return result;
  };

  auto start = eval(Eigen::Map<Eigen::VectorXd>(x0.data(), n));
  if (!start || !std::isfinite(start->f)) {
    result.x = x0;
    result.f = start ? start->f : 0.0;
    result.evaluations = eval.count();
    result.message = "objective is not finite at the starting point";
    return result;
  }
  Point p = *start;
  if (n == 0 || p.g.lpNorm<Eigen::Infinity>() <= options.gtol) {
    return finish(true, "gradient below tolerance");
  }

  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool hinv_is_identity = true;
  int stalls = 0;
  for (;;) {
    Eigen::VectorXd d = -hinv * p.g;
    if (d.dot(p.g) >= 0.0) {
      hinv.setIdentity();
      hinv_is_identity = true;
      d = -p.g;
    }
    const double alpha1 =
        hinv_is_identity ? std::min(1.0, 1.0 / std::max(1e-12, p.g.norm())) : 1.0;
    auto next = line_search(eval, p, d, alpha1);
    if (!next) {
      if (eval.count() >= options.max_evaluations) {
        return finish(false, "evaluation budget exhausted");
      }
      if (!hinv_is_identity) {
        hinv.setIdentity();
        hinv_is_identity = true;
        continue;
      }
      if (p.g.lpNorm<Eigen::Infinity>() <= 100.0 * options.gtol) {
        return finish(true, "no further progress at near-zero gradient");
      }
      return finish(false, "line search failed");
    }
    ++result.iterations;
    const Eigen::VectorXd s = next->x - p.x;
    const Eigen::VectorXd y = next->g - p.g;
    const double f_prev = p.f;
    p = *next;
    if (p.g.lpNorm<Eigen::Infinity>() <= options.gtol) {
      return finish(true, "gradient below tolerance");
    }
    if (std::abs(f_prev - p.f) <= 1e-14 * std::max(1.0, std::abs(p.f))) {
      ++stalls;
      const bool small = p.g.lpNorm<Eigen::Infinity>() <= 100.0 * options.gtol;
      if (stalls >= 3 && small) {
        return finish(true, "no further progress at near-zero gradient");
      }
      if (stalls >= 50) return finish(false, "stalled above gradient tolerance");
    } else {
      stalls = 0;
    }
    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      if (hinv_is_identity) {
        hinv *= sy / y.squaredNorm();
        hinv_is_identity = false;
      }
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd v =
          Eigen::MatrixXd::Identity(n, n) - rho * s * y.transpose();
      hinv = v * hinv * v.transpose() + rho * s * s.transpose();
    }
  }
}

}  // namespace adapt_forge
