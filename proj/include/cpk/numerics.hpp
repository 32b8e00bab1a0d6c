#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

namespace cpk {

// Numerical rank decision with an explicit spectral-gap requirement.
// A rank is reported only when the singular values above the relative
// threshold are separated from the rest by a ratio of at least gap_req;
// otherwise the result is flagged indeterminate rather than guessed.
struct RankResult {
  int rank = 0;
  bool determinate = false;
  double gap = 0.0;  // ratio at the cut; +inf when the tail is exactly zero
  Eigen::VectorXd spectrum;
};

inline RankResult rank_with_gap(const Eigen::VectorXd& sv_desc,
                                double rel_tol = 1e-7,
                                double gap_req = 1e3) {
  RankResult res;
  res.spectrum = sv_desc;
  const int n = static_cast<int>(sv_desc.size());
  if (n == 0) {
    res.determinate = true;
    res.gap = std::numeric_limits<double>::infinity();
    return res;
  }
  const double smax = sv_desc(0);
  if (smax <= 0.0) {
    res.rank = 0;
    res.determinate = true;
    res.gap = std::numeric_limits<double>::infinity();
    return res;
  }
  const double cut = rel_tol * smax;
  int r = 0;
  while (r < n && sv_desc(r) > cut) ++r;
  res.rank = r;
  if (r == n) {
    res.determinate = true;
    res.gap = std::numeric_limits<double>::infinity();
    return res;
  }
  const double below = sv_desc(r);
  res.gap = (below > 0.0) ? sv_desc(r - 1) / below
                          : std::numeric_limits<double>::infinity();
  res.determinate = (res.gap >= gap_req);
  return res;
}

template <typename Derived>
RankResult rank_with_gap_of(const Eigen::MatrixBase<Derived>& m,
                            double rel_tol = 1e-7, double gap_req = 1e3) {
  Eigen::JacobiSVD<typename Derived::PlainObject> svd(m.derived());
  return rank_with_gap(svd.singularValues(), rel_tol, gap_req);
}

}  // namespace cpk
