#ifndef COFLOWSIM_DCOFLOW_HPP
#define COFLOWSIM_DCOFLOW_HPP

#include <span>
#include <utility>
#include <vector>

#include "coflowsim/load_matrix.hpp"
#include "coflowsim/schedule.hpp"

namespace coflowsim {

enum class DcoflowVariant { v1, v2 };

struct DcoflowConfig {
  DcoflowVariant variant = DcoflowVariant::v1;
  /// Port-congestion threshold for the v2 rejection rule, in (0, 1].
  double gamma = 0.9;
};

/// Deadline-deficit scores for a working set S: for each port l and coflow k
/// in S, psi(l, k) = p_{l,k} * (T_k - sum_{j in S} p_{l,j}). Zero wherever the
/// coflow does not use the port; negative when the coflow would miss its
/// deadline if scheduled last on that port.
class PsiTable {
 public:
  PsiTable(const LoadMatrix* load, std::vector<int> working_set, std::vector<double> values);

  double psi(int port, int coflow_id) const;
  const std::vector<int>& working_set() const { return set_; }

 private:
  const LoadMatrix* load_;
  std::vector<int> set_;          // coflow ids, ascending
  std::vector<double> values_;    // port-major, num_ports x |set|
};

/// One round of the ordering loop, for execution tracing.
struct DcoflowRound {
  std::vector<int> working_set;  // ids, ascending
  int bottleneck_port = -1;
  bool rejected = false;         // true when the round pre-rejected `selected`
  int selected = -1;
  /// Variant score per coflow using the bottleneck port (id, score),
  /// id-ascending. An empty deficit sum shows up as 0.
  std::vector<std::pair<int, double>> candidate_scores;
};

/// Port with the largest total processing time over the working set; ties go
/// to the lowest port id.
int bottleneck_port(const LoadMatrix& load, std::span<const int> working_set);

/// Coflows using `port` that would still meet their deadline if scheduled
/// last there: { j : sum over the working set's users of `port` <= T_j }.
std::vector<int> deadline_feasible_set(const LoadMatrix& load, std::span<const int> working_set,
                                       int port);

PsiTable psi_table(const LoadMatrix& load, std::span<const int> working_set);

/// v1 rejection rule: among coflows using the bottleneck, pick the one with
/// the most negative sum of its negative psi values across all ports.
int reject_candidate_v1(const LoadMatrix& load, std::span<const int> working_set, int bottleneck);

/// v2 rejection rule: same argmin, but psi is summed only over ports whose
/// total load is at least gamma times the bottleneck's total load.
int reject_candidate_v2(const LoadMatrix& load, std::span<const int> working_set, int bottleneck,
                        double gamma);

/// Port-cumulative completion-time estimate for the last coflow of `prefix`:
/// max over ports of the prefix's total processing time. Equals the isolation
/// CCT when the prefix holds a single coflow.
double eval_cct(const LoadMatrix& load, std::span<const int> prefix);

/// Post-pass over the pre-rejected coflows (sigma_star), in sigma-priority
/// order: each is dropped from sigma iff its estimate against its current
/// predecessors exceeds its deadline. Coflows admitted by the feasible-set
/// branch are never dropped.
Schedule remove_late_coflows(const LoadMatrix& load, std::vector<int> sigma,
                             std::span<const int> sigma_star);

/// The joint admission-control and ordering heuristic. Fills the priority
/// order back to front: each round either commits the feasible coflow with
/// the largest deadline to the current tail, or pre-rejects the variant's
/// candidate; a final pass drops pre-rejected coflows that still cannot make
/// their deadline.
Schedule dcoflow_order(const LoadMatrix& load, const DcoflowConfig& cfg = {},
                       std::vector<DcoflowRound>* trace = nullptr);
Schedule dcoflow_order(const Fabric& fabric, std::span<const Coflow> coflows,
                       const DcoflowConfig& cfg = {}, std::vector<DcoflowRound>* trace = nullptr);

}  // namespace coflowsim

#endif
