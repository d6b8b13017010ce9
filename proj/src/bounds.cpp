#include "psitm/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace psitm {

namespace {

void validate_query(const BoundQuery& query) {
  validate(IotaSpec{query.coefficient, query.depth});
  if (query.input_length < 2) {
    throw std::invalid_argument("BoundQuery: input length must be >= 2");
  }
  if (query.log_family_size < 1.0) {
    throw std::invalid_argument("BoundQuery: log2 family size must be >= 1");
  }
}

double query_budget(const BoundQuery& query, BudgetConvention convention) {
  return budget_value(IotaSpec{query.coefficient, query.depth},
                      query.input_length, convention);
}

/// log2(M - 1) from logM = log2(M). log2(2^L - 1) = L + log2(1 - 2^-L);
/// the log1p form stays accurate for large L, where the correction is below
/// 2^-L / ln 2.
double log2_family_minus_one(double log_family_size) {
  return log_family_size + std::log1p(-std::exp2(-log_family_size)) / M_LN2;
}

BoundResult ratio_bound(std::string label, double numerator,
                        double entropy_term, double denominator,
                        BudgetConvention convention) {
  BoundResult result;
  result.trace = FormulaTrace{std::move(label), numerator, entropy_term,
                              denominator, convention};
  result.value = result.trace.recompute();
  result.integer_bound = static_cast<std::int64_t>(std::ceil(result.value));
  return result;
}

}  // namespace

double SimulationAttempt::calls() const {
  return std::exp2(beta * std::log2(static_cast<double>(input_length)));
}

BoundResult fooling_bound(const BoundQuery& query,
                          BudgetConvention convention) {
  validate_query(query);
  return ratio_bound("fooling step bound", query.log_family_size, 0.0,
                     query_budget(query, convention), convention);
}

double binary_entropy(double error_prob) {
  if (!(error_prob > 0.0) || !(error_prob < 1.0)) {
    throw std::invalid_argument("binary_entropy: argument outside (0,1)");
  }
  return -error_prob * std::log2(error_prob) -
         (1.0 - error_prob) * std::log2(1.0 - error_prob);
}

BoundResult fano_bound(const BoundQuery& query, BudgetConvention convention) {
  validate_query(query);
  const double eps = query.error_prob;
  // Admissible range 0 < eps < 1 - 1/M, written via logM to avoid forming M.
  const double upper = -std::expm1(-query.log_family_size * M_LN2);
  if (!(eps > 0.0) || !(eps < upper)) {
    throw std::invalid_argument("fano_bound: error probability outside (0, 1 - 1/M)");
  }
  const double entropy_term =
      binary_entropy(eps) + eps * log2_family_minus_one(query.log_family_size);
  return ratio_bound("fano step bound", query.log_family_size, entropy_term,
                     query_budget(query, convention), convention);
}

double antisim_threshold(int target_depth, std::uint64_t input_length) {
  if (target_depth < 2) {
    throw std::invalid_argument("antisim_threshold: depth must be >= 2");
  }
  if (input_length < 2) {
    throw std::invalid_argument("antisim_threshold: input length must be >= 2");
  }
  // log2(k/(k-1)) via log1p keeps precision for large k.
  const double numerator = std::log1p(1.0 / (target_depth - 1)) / M_LN2;
  return numerator / std::log2(static_cast<double>(input_length));
}

double antisim_ratio(const SimulationAttempt& attempt) {
  if (attempt.target_depth < 2) {
    throw std::invalid_argument("antisim_ratio: depth must be >= 2");
  }
  if (attempt.input_length < 2) {
    throw std::invalid_argument("antisim_ratio: input length must be >= 2");
  }
  if (!(attempt.beta > 0.0)) {
    throw std::invalid_argument("antisim_ratio: beta must be > 0");
  }
  return attempt.calls() * (attempt.target_depth - 1) /
         static_cast<double>(attempt.target_depth);
}

ChaseLowerBound lk_lb_estimate(int layers, std::uint64_t input_length,
                               double alpha, int coefficient) {
  if (layers < 2) {
    throw std::invalid_argument("lk_lb_estimate: layers must be >= 2");
  }
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw std::invalid_argument("lk_lb_estimate: alpha must be in (0,1]");
  }
  if (coefficient < 1) {
    throw std::invalid_argument("lk_lb_estimate: coefficient must be >= 1");
  }
  if (input_length < 2) {
    throw std::invalid_argument("lk_lb_estimate: input length must be >= 2");
  }
  // Resolve m from n = k*m*ceil(log2 m) + m by fixed-point iteration.
  std::uint64_t universe = input_length / layers;
  for (int iter = 0; iter < 128; ++iter) {
    if (universe < 2) {
      break;
    }
    const std::uint64_t denom =
        static_cast<std::uint64_t>(layers) * ceil_log2(universe) + 1;
    const std::uint64_t next = input_length / denom;
    if (next == universe) {
      break;
    }
    universe = next;
  }
  if (universe < 2) {
    throw std::invalid_argument("lk_lb_estimate: parameters yield universe < 2");
  }
  const double denominator = static_cast<double>(coefficient) * (layers - 1) *
                             ceil_log2(input_length);
  return ChaseLowerBound{alpha * static_cast<double>(universe) / denominator,
                         universe};
}

RelaxedBounds relaxed_bounds(const BoundQuery& query,
                             const RelaxationParams& params,
                             BudgetConvention convention, bool r1_budget_mode) {
  validate_query(query);
  if (params.entropy_budget < 0.0 || params.pass_overhead < 0.0 ||
      params.conversion_constant < 0.0 || params.advice_bits < 0.0) {
    throw std::invalid_argument("RelaxationParams: counts must be non-negative");
  }
  if (params.passes < 1) {
    throw std::invalid_argument("RelaxationParams: pass count must be >= 1");
  }
  const double budget = query_budget(query, convention);

  RelaxedBounds out;

  // R1: public randomness worth H bits of entropy. Default reading hands the
  // adversary the entropy (logM - H, floored at 0); the flagged alternative
  // credits it to the per-step budget instead.
  if (r1_budget_mode) {
    out.entropy =
        ratio_bound("relaxed bound (entropy budget, budget mode)",
                    query.log_family_size, 0.0,
                    budget + params.entropy_budget, convention);
  } else {
    const double reduced =
        std::max(query.log_family_size - params.entropy_budget, 0.0);
    out.entropy = ratio_bound("relaxed bound (entropy budget)", reduced, 0.0,
                              budget, convention);
  }

  // R2: minimal pass count P with P*(m + B) >= c0*logM.
  out.multipass = ratio_bound(
      "relaxed bound (multi-pass)",
      params.conversion_constant * query.log_family_size, 0.0,
      params.pass_overhead + budget, convention);

  // R3: advice worth |adv| bits, additive inside the budget term.
  const double advised =
      std::max(query.log_family_size - params.advice_bits, 0.0);
  out.advice =
      ratio_bound("relaxed bound (advice)", advised, 0.0, budget, convention);

  // R4: per-step budget shifted by delta; the shifted budget must stay >= 1.
  const double shifted = budget + params.budget_shift;
  if (shifted < 1.0) {
    throw std::invalid_argument(
        "relaxed_bounds: bandwidth shift drives budget below 1 bit");
  }
  out.bandwidth = ratio_bound("relaxed bound (bandwidth shift)",
                              query.log_family_size, 0.0, shifted, convention);
  return out;
}

BoundResult dt_depth_bound(const BoundQuery& query,
                           BudgetConvention convention) {
  BoundResult result = fooling_bound(query, convention);
  result.trace.label = "decision-tree depth";
  return result;
}

BoundResult ic_gate_bound(int layers, std::uint64_t input_length,
                          int coefficient, double hidden_constant,
                          BudgetConvention convention) {
  if (layers < 2) {
    throw std::invalid_argument("ic_gate_bound: layers must be >= 2");
  }
  if (!(hidden_constant > 0.0)) {
    throw std::invalid_argument("ic_gate_bound: hidden constant must be > 0");
  }
  const double budget = budget_value(IotaSpec{coefficient, layers - 1},
                                     input_length, convention);
  const double numerator =
      hidden_constant * static_cast<double>(input_length) / layers;
  return ratio_bound("ic transcript query bound", numerator, 0.0, budget,
                     convention);
}

}  // namespace psitm
