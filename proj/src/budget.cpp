#include "psitm/budget.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace psitm {

void validate(const IotaSpec& spec) {
  if (spec.coefficient < 1) {
    throw std::invalid_argument("IotaSpec: coefficient must be >= 1");
  }
  if (spec.depth < 1) {
    throw std::invalid_argument("IotaSpec: depth must be >= 1");
  }
}

unsigned ceil_log2(std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("ceil_log2: n must be >= 1");
  }
  if (n == 1) {
    return 0;
  }
  return static_cast<unsigned>(std::bit_width(n - 1));
}

std::string to_string(BudgetConvention convention) {
  return convention == BudgetConvention::CeilLog ? "ceil-log" : "exact-real";
}

BudgetConvention budget_convention_from_string(const std::string& name) {
  if (name == "ceil-log") {
    return BudgetConvention::CeilLog;
  }
  if (name == "exact-real") {
    return BudgetConvention::ExactReal;
  }
  throw std::invalid_argument("unknown budget convention: " + name);
}

std::uint64_t budget_bits(const IotaSpec& spec, std::uint64_t input_length) {
  validate(spec);
  if (input_length < 2) {
    throw std::invalid_argument("budget_bits: input length must be >= 2");
  }
  return static_cast<std::uint64_t>(spec.coefficient) *
         static_cast<std::uint64_t>(spec.depth) * ceil_log2(input_length);
}

double budget_real(const IotaSpec& spec, std::uint64_t input_length) {
  validate(spec);
  if (input_length < 2) {
    throw std::invalid_argument("budget_real: input length must be >= 2");
  }
  return static_cast<double>(spec.coefficient) * spec.depth *
         std::log2(static_cast<double>(input_length));
}

double budget_value(const IotaSpec& spec, std::uint64_t input_length,
                    BudgetConvention convention) {
  return convention == BudgetConvention::CeilLog
             ? static_cast<double>(budget_bits(spec, input_length))
             : budget_real(spec, input_length);
}

}  // namespace psitm
