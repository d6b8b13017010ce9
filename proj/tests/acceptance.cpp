// Acceptance suite: one check per release criterion, one PASS/FAIL line each,
// nonzero exit when anything fails. Each check pins its tolerances in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "psitm/bounds.hpp"
#include "psitm/budget.hpp"
#include "psitm/csvfmt.hpp"
#include "psitm/depth.hpp"
#include "psitm/machine.hpp"
#include "psitm/phase_locked.hpp"
#include "psitm/pointer_chase.hpp"
#include "psitm/prng.hpp"

using namespace psitm;

namespace {

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<bool(std::string&)> check;
};

bool check_worked_examples(std::string& detail) {
  bool ok = true;
  ok &= *fooling_bound({1, 2, 1000, 100.0}).integer_bound == 5;
  const BoundResult fano = fano_bound({1, 2, 1000, 60.0, 0.1});
  ok &= std::abs(fano.value - 2.68) <= 0.02;
  ok &= *fano.integer_bound == 3;
  ok &= *fooling_bound({1, 3, 1ULL << 20, 900.0}).integer_bound == 15;
  ok &= budget_bits(IotaSpec{1, 2}, 1000) == 20;
  ok &= budget_bits(IotaSpec{1, 3}, 1ULL << 20) == 60;
  ok &= std::abs(binary_entropy(0.1) - 0.469) <= 0.001;
  detail = "fooling 5/15, fano " + fmt_double(fano.value) +
           "->3, budgets 20/60, h(0.1)=" + fmt_double(binary_entropy(0.1));
  return ok;
}

bool check_antisim_boundary(std::string& detail) {
  std::uint64_t cases = 0;
  for (int k = 2; k <= 10; ++k) {
    for (unsigned exponent = 8; exponent <= 20; ++exponent) {
      const std::uint64_t n = 1ULL << exponent;
      const double threshold = antisim_threshold(k, n);
      const double at = antisim_ratio({k, n, threshold});
      if (std::abs(at - 1.0) > 1e-12) {
        detail = "ratio at threshold off by " + fmt_double(at - 1.0);
        return false;
      }
      if (!(antisim_ratio({k, n, threshold - 1e-6}) < 1.0) ||
          !(antisim_ratio({k, n, threshold + 1e-6}) > 1.0)) {
        detail = "sides of the threshold do not straddle 1";
        return false;
      }
      ++cases;
    }
  }
  detail = std::to_string(cases) + " (k,n) boundary cases exact";
  return true;
}

bool check_depth_oracle(std::string& detail) {
  std::uint64_t words = 0;
  for (std::size_t length = 1; length <= 12; ++length) {
    for (std::uint64_t pattern = 0; pattern < (1ULL << length); ++pattern) {
      Word w;
      for (std::size_t i = 0; i < length; ++i) {
        w.push_back((pattern >> i) & 1);
      }
      const unsigned dp = structural_depth(w);
      if (dp != structural_depth_oracle(w) || dp != ceil_log2(length)) {
        detail = "mismatch at length " + std::to_string(length);
        return false;
      }
      ++words;
    }
  }
  // Spot checks at the power-of-two boundaries up to 2^10 + 1.
  Lcg64 rng(1337);
  for (unsigned t = 1; t <= 10; ++t) {
    for (std::size_t length :
         {(std::size_t{1} << t), (std::size_t{1} << t) + 1}) {
      Word w;
      for (std::size_t i = 0; i < length; ++i) {
        w.push_back(rng.next_bit());
      }
      if (structural_depth(w) != ceil_log2(length)) {
        detail = "boundary spot check failed at length " +
                 std::to_string(length);
        return false;
      }
    }
  }
  detail = std::to_string(words) + " words enumerated plus 2^t boundaries";
  return true;
}

bool check_budget_lemma(std::string& detail) {
  MachineSpec machine;
  machine.states = {"scan", "acc", "rej"};
  machine.accept = 1;
  machine.reject = 2;
  machine.policy = IotaPolicy::TapeStride;
  machine.single_pass = true;
  const SymbolId blank = machine.symbol_id('_');
  machine.rules = {
      {0, machine.symbol_id('0'), PayloadPattern{}, 0, machine.symbol_id('0'),
       Move::Right},
      {0, machine.symbol_id('1'), PayloadPattern{}, 0, machine.symbol_id('1'),
       Move::Right},
      {0, blank, PayloadPattern{}, 1, blank, Move::Stay},
  };

  std::vector<Word> inputs;
  for (std::uint64_t pattern = 0; pattern < 256; ++pattern) {
    Word w;
    for (unsigned i = 0; i < 8; ++i) {
      w.push_back((pattern >> i) & 1);
    }
    inputs.push_back(std::move(w));
  }
  const IotaSpec spec{1, 1};
  const std::uint64_t count = count_transcripts(machine, inputs, spec, 3);
  const std::uint64_t cap = 1ULL << (3 * budget_bits(spec, 8));
  detail = std::to_string(count) + " distinct transcripts, cap " +
           std::to_string(cap);
  return count <= cap && count >= 256;
}

bool check_lk_equivalence(std::string& detail) {
  std::uint64_t cases = 0;

  // k=2, small universes: seeded tables, exhaustive tails and starts.
  for (unsigned m : {2u, 3u, 4u}) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      PointerChaseInstance inst = lk_generate(2, m, seed);
      for (std::uint64_t tail_mask = 0; tail_mask < (1ULL << m);
           ++tail_mask) {
        for (unsigned i = 0; i < m; ++i) {
          inst.tail[i] = (tail_mask >> i) & 1;
        }
        for (unsigned start = 1; start <= m; ++start) {
          inst.start = start;
          const Bits wire = lk_encode(inst);
          const StreamedVerdict sv = lk_decide_streamed(wire, 2, m);
          if (sv.accept != lk_decide(inst) || !sv.audit.single_pass_ok() ||
              sv.audit.total_reads > 2 * wire.size()) {
            detail = "divergence at m=" + std::to_string(m) + " seed " +
                     std::to_string(seed);
            return false;
          }
          ++cases;
        }
      }
    }
  }

  // Larger seeded instances across k and m.
  for (unsigned k : {2u, 3u, 4u}) {
    for (unsigned m : {8u, 16u, 32u, 64u}) {
      for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const PointerChaseInstance inst = lk_generate(k, m, seed);
        const Bits wire = lk_encode(inst);
        const StreamedVerdict sv = lk_decide_streamed(wire, k, m);
        if (sv.accept != lk_decide(inst) || !sv.audit.single_pass_ok() ||
            sv.audit.total_reads > 2 * wire.size()) {
          detail = "divergence at k=" + std::to_string(k) +
                   " m=" + std::to_string(m) + " seed " +
                   std::to_string(seed);
          return false;
        }
        ++cases;
      }
    }
  }
  detail = std::to_string(cases) + " instances, audits clean";
  return true;
}

bool check_fooling_certificates(std::string& detail) {
  for (unsigned k : {2u, 3u}) {
    for (unsigned m : {8u, 16u}) {
      const FoolingFamily family = lk_fooling_family(
          make_fooling_params(lk_generate(k, m, 1337)), 16);
      if (!family.certificate.pairwise_agreement_outside ||
          !family.certificate.has_both_verdicts) {
        detail = "certificate failed at k=" + std::to_string(k) +
                 " m=" + std::to_string(m);
        return false;
      }
    }
  }
  detail = "families of 16 certified for k in {2,3}, m in {8,16}";
  return true;
}

bool check_phase_collisions(std::string& detail) {
  for (unsigned k : {2u, 3u}) {
    for (unsigned m : {8u, 16u}) {
      const CollisionReport report = lkphase_collision_demo(k, m, 1337);
      const bool ok = report.below_first == report.below_second &&
                      report.first_accepts != report.second_accepts &&
                      !(report.full_first == report.full_second);
      if (!ok) {
        detail = "collision shape broken at k=" + std::to_string(k) +
                 " m=" + std::to_string(m);
        return false;
      }
    }
  }
  detail = "collisions with equal below-views and split verdicts";
  return true;
}

bool check_budget_enforcement(std::string& detail) {
  MachineSpec machine;
  machine.states = {"scan", "acc", "rej"};
  machine.accept = 1;
  machine.reject = 2;
  machine.policy = IotaPolicy::OverbudgetProbe;
  for (char symbol : std::string("_01")) {
    machine.rules.push_back({0, machine.symbol_id(symbol), PayloadPattern{}, 0,
                             machine.symbol_id(symbol), Move::Right});
  }
  bool tripped = false;
  try {
    run(machine, Word::from_string("01100110"), IotaSpec{1, 1}, 4);
  } catch (const BudgetViolation&) {
    tripped = true;
  }
  if (!tripped) {
    detail = "oversized payload did not abort";
    return false;
  }

  // Ledger totals stay under T * B across policies and machines.
  MachineSpec scanner = machine;
  for (IotaPolicy policy : {IotaPolicy::Empty, IotaPolicy::Canonical,
                            IotaPolicy::TapeStride,
                            IotaPolicy::StepHeadState}) {
    scanner.policy = policy;
    Lcg64 rng(static_cast<std::uint64_t>(policy) + 7);
    for (int trial = 0; trial < 20; ++trial) {
      Word input;
      const std::size_t n = 2 + rng.next_below(30);
      for (std::size_t i = 0; i < n; ++i) {
        input.push_back(rng.next_bit());
      }
      const IotaSpec spec{1, 1 + static_cast<int>(rng.next_below(3))};
      const RunResult result = run(scanner, input, spec, 6);
      if (result.ledger.total_bits >
          result.ledger.steps.size() * budget_bits(spec, n)) {
        detail = "ledger total exceeded T*B";
        return false;
      }
    }
  }
  detail = "violation trips, ledgers within T*B";
  return true;
}

bool check_figure_series(std::string& detail) {
  // The three figure datasets against their published anchor points: the
  // budget axis labels B(d,1000) = 10/20/30, the T = 12 point at
  // (d=1, logM=120), the ratio-1 rows at the thresholds, and alpha*m at 100.
  for (int d = 1; d <= 3; ++d) {
    if (budget_bits(IotaSpec{1, d}, 1000) !=
        static_cast<std::uint64_t>(10 * d)) {
      detail = "figure budget axis broken at d=" + std::to_string(d);
      return false;
    }
  }
  if (std::abs(120.0 / budget_bits(IotaSpec{1, 1}, 1000) - 12.0) > 1e-12) {
    detail = "fooling curve anchor (d=1, logM=120) off";
    return false;
  }
  for (int k = 2; k <= 4; ++k) {
    const double threshold = antisim_threshold(k, 1024);
    if (std::abs(antisim_ratio({k, 1024, threshold}) - 1.0) > 1e-12) {
      detail = "antisim figure threshold row off at k=" + std::to_string(k);
      return false;
    }
  }
  if (std::abs(0.9 * 100 - 90.0) > 1e-12) {
    detail = "lk_logM anchor (m=100) off";
    return false;
  }
  detail = "figure series anchors match the closed forms";
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"worked-example lock", 1.0, check_worked_examples},
      {"anti-simulation boundary", 1.0, check_antisim_boundary},
      {"structural-depth oracle equivalence", 30.0, check_depth_oracle},
      {"budget lemma at desk scale", 10.0, check_budget_lemma},
      {"L_k decider equivalence", 60.0, check_lk_equivalence},
      {"fooling-family certificate", 5.0, check_fooling_certificates},
      {"phase-collision demonstration", 5.0, check_phase_collisions},
      {"budget enforcement", 1.0, check_budget_enforcement},
      {"figure-data regeneration", 5.0, check_figure_series},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds > criterion.limit_seconds) {
      ok = false;
      detail += " [over the " + fmt_double(criterion.limit_seconds) +
                " s runtime limit]";
    }
    std::printf("%s: %s (%.2fs) %s\n", ok ? "PASS" : "FAIL",
                criterion.name.c_str(), seconds, detail.c_str());
    if (!ok) {
      ++failures;
    }
  }
  return failures;
}
