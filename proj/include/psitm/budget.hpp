#ifndef PSITM_BUDGET_HPP
#define PSITM_BUDGET_HPP

#include <cstdint>
#include <string>

namespace psitm {

/// Parameters of the per-step introspection interface: a positive budget
/// coefficient and a positive introspection depth.
struct IotaSpec {
  int coefficient = 1;
  int depth = 1;
};

void validate(const IotaSpec& spec);

/// Smallest t with 2^t >= n. ceil_log2(1) == 0.
unsigned ceil_log2(std::uint64_t n);

/// Which reading of the per-step budget a calculation uses. The metered
/// integer budget coefficient*depth*ceil(log2 n) reproduces every worked
/// number; the exact-real form coefficient*depth*log2(n) is kept for smooth
/// figure data.
enum class BudgetConvention { CeilLog, ExactReal };

std::string to_string(BudgetConvention convention);
BudgetConvention budget_convention_from_string(const std::string& name);

/// Metered per-step budget in whole bits: coefficient * depth * ceil(log2 n).
/// Requires n >= 2.
std::uint64_t budget_bits(const IotaSpec& spec, std::uint64_t input_length);

/// Exact-real budget coefficient * depth * log2(n). Requires n >= 2.
double budget_real(const IotaSpec& spec, std::uint64_t input_length);

/// Budget under the chosen convention, as a real number.
double budget_value(const IotaSpec& spec, std::uint64_t input_length,
                    BudgetConvention convention);

}  // namespace psitm

#endif
