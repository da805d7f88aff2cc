#ifndef COFLOWSIM_SCHEDULE_HPP
#define COFLOWSIM_SCHEDULE_HPP

#include <algorithm>
#include <vector>

namespace coflowsim {

/// Output of an admission-control/ordering pass: a priority order over the
/// accepted coflows (highest priority first) plus the rejected ids. Together
/// they partition the input coflow set.
struct Schedule {
  std::vector<int> sigma;
  std::vector<int> rejected;  // kept sorted ascending

  bool accepts(int coflow_id) const {
    return std::find(sigma.begin(), sigma.end(), coflow_id) != sigma.end();
  }
  bool rejects(int coflow_id) const {
    return std::binary_search(rejected.begin(), rejected.end(), coflow_id);
  }
  /// Position in sigma (0 = highest priority), or -1 when rejected.
  int rank_of(int coflow_id) const {
    auto it = std::find(sigma.begin(), sigma.end(), coflow_id);
    return it == sigma.end() ? -1 : static_cast<int>(it - sigma.begin());
  }
};

}  // namespace coflowsim

#endif
