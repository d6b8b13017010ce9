#ifndef PSITM_BOUNDS_HPP
#define PSITM_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "psitm/budget.hpp"

namespace psitm {

/// Inputs of the closed-form step lower-bound calculators. `depth` plays the
/// role of d (or k-1 when a caller works at the reduced depth),
/// `log_family_size` is log2 of the distinguishable-set size M, and
/// `error_prob` is only consulted by the Fano form.
struct BoundQuery {
  int coefficient = 1;
  int depth = 1;
  std::uint64_t input_length = 2;
  double log_family_size = 1.0;
  double error_prob = 0.0;
};

/// Instantiated terms of a bound, kept so the certified result can be
/// recomputed: value == (numerator - entropy_term) / denominator.
struct FormulaTrace {
  std::string label;
  double numerator = 0.0;
  double entropy_term = 0.0;
  double denominator = 1.0;
  BudgetConvention convention = BudgetConvention::CeilLog;

  double recompute() const { return (numerator - entropy_term) / denominator; }
};

/// Certified calculator output: the real bound, its ceiling when the source
/// inequality applies one, and the instantiated formula.
struct BoundResult {
  double value = 0.0;
  std::optional<std::int64_t> integer_bound;
  FormulaTrace trace;
};

/// A depth-(k-1) machine trying to stand in for one depth-k call using
/// s = n^beta reduced-depth calls.
struct SimulationAttempt {
  int target_depth = 2;  // k >= 2
  std::uint64_t input_length = 2;
  double beta = 1.0;  // exponent > 0

  double calls() const;  // s = n^beta
};

/// Parameters of the four controlled relaxations.
struct RelaxationParams {
  double entropy_budget = 0.0;     // R1: public-randomness entropy H, bits
  int passes = 1;                  // R2: pass count (>= 1)
  double pass_overhead = 0.0;      // R2: per-pass overhead m
  double conversion_constant = 1;  // R2: c0 from query-to-entropy conversion
  double advice_bits = 0.0;        // R3: |adv|
  double budget_shift = 0.0;       // R4: signed per-step budget shift, bits
};

struct RelaxedBounds {
  BoundResult entropy;    // R1
  BoundResult multipass;  // R2: integer_bound is the minimal pass count
  BoundResult advice;     // R3
  BoundResult bandwidth;  // R4
};

/// Worst-case step bound T >= ceil(logM / B(d,n)).
BoundResult fooling_bound(const BoundQuery& query,
                          BudgetConvention convention = BudgetConvention::CeilLog);

/// Binary entropy h(e) in bits; domain (0,1).
double binary_entropy(double error_prob);

/// Average-case step bound
/// T >= (logM - h(e) - e*log2(M-1)) / B(d,n), for 0 < e < 1 - 1/M.
BoundResult fano_bound(const BoundQuery& query,
                       BudgetConvention convention = BudgetConvention::CeilLog);

/// Exponent threshold log2(k/(k-1)) / log2(n) above which n^beta
/// reduced-depth calls cover one depth-k call's budget. k >= 2, n >= 2.
double antisim_threshold(int target_depth, std::uint64_t input_length);

/// Budget-coverage ratio n^beta * (k-1)/k. Exactly >= 1 iff
/// beta >= antisim_threshold(k, n).
double antisim_ratio(const SimulationAttempt& attempt);

/// Pointer-chase step lower-bound estimate alpha*m / (c*(k-1)*ceil(log2 n)),
/// with the universe size m recovered from the encoded length n by
/// fixed-point iteration of m -> floor(n / (k*ceil(log2 m) + 1)).
struct ChaseLowerBound {
  double value = 0.0;
  std::uint64_t universe = 0;  // resolved m
};
ChaseLowerBound lk_lb_estimate(int layers, std::uint64_t input_length,
                               double alpha, int coefficient);

/// All four relaxation-adjusted bounds for one base query. When
/// `r1_budget_mode` is set, R1 is read as a per-step budget increase
/// (denominator B+H) instead of the default entropy reduction logM-H.
RelaxedBounds relaxed_bounds(const BoundQuery& query,
                             const RelaxationParams& params,
                             BudgetConvention convention = BudgetConvention::CeilLog,
                             bool r1_budget_mode = false);

/// Decision-tree depth bound; same inequality as fooling_bound with a
/// platform-specific certificate label.
BoundResult dt_depth_bound(const BoundQuery& query,
                           BudgetConvention convention = BudgetConvention::CeilLog);

/// Minimal query count Q with Q * B(k-1, n) >= c_lb * n / k. The hidden
/// constant of the transcript bound is caller-supplied.
BoundResult ic_gate_bound(int layers, std::uint64_t input_length,
                          int coefficient, double hidden_constant,
                          BudgetConvention convention = BudgetConvention::CeilLog);

}  // namespace psitm

#endif
