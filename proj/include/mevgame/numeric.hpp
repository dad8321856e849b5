#pragma once

#include <functional>

namespace mevgame {

struct ScalarOptimum {
  double argmax = 0.0;
  double value = 0.0;
  bool dense_fallback = false;  // unimodality probe failed, dense scan used
};

/// Maximizes `fn` on [lo, hi] by golden-section search, stopping once the
/// bracket is narrower than `rel_tol * (hi - lo)`. A 101-point probe checks
/// unimodality first; if it fails the maximum is located by a 10,001-point
/// scan and refined by golden section on the neighbouring cells. Endpoints are
/// candidates too, so boundary maxima are returned exactly.
///
/// Throws NumericError if `fn` returns a non-finite value.
ScalarOptimum maximize_scalar(const std::function<double(double)>& fn, double lo, double hi,
                              double rel_tol = 1e-10);

}  // namespace mevgame
