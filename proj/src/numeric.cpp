#include "mevgame/numeric.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mevgame/errors.hpp"

namespace mevgame {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;
constexpr int kProbePoints = 101;
constexpr int kDensePoints = 10001;

double checked(const std::function<double(double)>& fn, double z) {
  const double v = fn(z);
  if (!std::isfinite(v)) throw NumericError("objective is not finite at " + std::to_string(z));
  return v;
}

// Values rise (weakly) then fall (weakly): at most one sign change from up to down.
bool looks_unimodal(const std::vector<double>& values) {
  bool descending = false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1]) {
      descending = true;
    } else if (values[i] > values[i - 1] && descending) {
      return false;
    }
  }
  return true;
}

ScalarOptimum golden(const std::function<double(double)>& fn, double lo, double hi, double tol) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = checked(fn, c);
  double fd = checked(fn, d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = checked(fn, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = checked(fn, d);
    }
  }
  const double mid = 0.5 * (a + b);
  return {mid, checked(fn, mid), false};
}

ScalarOptimum best_of(const ScalarOptimum& interior, const std::function<double(double)>& fn, double lo,
                      double hi) {
  ScalarOptimum best = interior;
  for (double end : {lo, hi}) {
    const double v = checked(fn, end);
    if (v > best.value) best = {end, v, interior.dense_fallback};
  }
  return best;
}

}  // namespace

ScalarOptimum maximize_scalar(const std::function<double(double)>& fn, double lo, double hi,
                              double rel_tol) {
  if (!(hi > lo)) throw std::domain_error("maximize_scalar: empty bracket");
  const double tol = rel_tol * (hi - lo);

  std::vector<double> probe(kProbePoints);
  for (int i = 0; i < kProbePoints; ++i) {
    probe[i] = checked(fn, lo + (hi - lo) * i / (kProbePoints - 1));
  }
  if (looks_unimodal(probe)) return best_of(golden(fn, lo, hi, tol), fn, lo, hi);

  const double step = (hi - lo) / (kDensePoints - 1);
  int best_i = 0;
  double best_v = checked(fn, lo);
  for (int i = 1; i < kDensePoints; ++i) {
    const double v = checked(fn, lo + step * i);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double a = lo + step * std::max(best_i - 1, 0);
  const double b = lo + step * std::min(best_i + 1, kDensePoints - 1);
  ScalarOptimum refined = golden(fn, a, b, tol);
  refined.dense_fallback = true;
  if (best_v > refined.value) refined = {lo + step * best_i, best_v, true};
  return best_of(refined, fn, lo, hi);
}

}  // namespace mevgame
