#ifndef PSITM_MACHINE_HPP
#define PSITM_MACHINE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psitm/bits.hpp"
#include "psitm/budget.hpp"
#include "psitm/depth.hpp"

namespace psitm {

using StateId = std::size_t;
using SymbolId = std::uint8_t;

enum class Move : char { Left = 'L', Right = 'R', Stay = 'S' };

enum class Verdict { Accept, Reject, Timeout };

std::string to_string(Verdict verdict);

/// A step's payload exceeded the metered budget. Always a hard error; the
/// runtime never truncates, because truncation would falsify the transcript
/// accounting.
struct BudgetViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A declared runtime discipline was broken (e.g. a single-pass machine moved
/// its head left).
struct AuditViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Built-in per-step payload policies. Each is a pure function of the
/// current configuration and the input length.
///   empty            - zero-length payload every step
///   canonical        - packed (state, head, windows) record, whole fields
///                      dropped from the tail when the budget is short
///   tape_stride      - at step t, the budget-many tape cells starting at
///                      t*B, one bit per cell; exposes the whole input over
///                      consecutive steps
///   step_head_state  - (step, head, state) packed then padded/truncated to
///                      exactly the budget; the classic budget-saturating
///                      construction
///   overbudget_probe - deliberately emits budget+1 bits; exists so
///                      enforcement paths can be exercised
enum class IotaPolicy {
  Empty,
  Canonical,
  TapeStride,
  StepHeadState,
  OverbudgetProbe,
};

std::string to_string(IotaPolicy policy);
IotaPolicy iota_policy_from_string(const std::string& name);

/// Payload pattern on a transition row: either a wildcard or a prefix over
/// {0,1,?} matched against the payload's leading bits.
struct PayloadPattern {
  bool wildcard = true;
  std::string prefix;

  static PayloadPattern parse(const std::string& text);
  bool matches(const Bits& payload) const;
  std::string to_text() const;
};

struct TransitionRule {
  StateId from = 0;
  SymbolId scan = 0;
  PayloadPattern pattern;
  StateId to = 0;
  SymbolId write = 0;
  Move move = Move::Stay;
};

/// A deterministic one-tape machine under the frozen introspection
/// interface. Transition rows are tried in order; the first row whose
/// (state, symbol, payload pattern) matches fires, which keeps the map a
/// function by construction. Accept/reject states are absorbing: no rule may
/// leave them.
struct MachineSpec {
  std::vector<std::string> states;
  StateId initial = 0;
  StateId accept = 0;
  StateId reject = 0;
  std::string alphabet = "_01";  // alphabet[0] is the blank symbol
  IotaPolicy policy = IotaPolicy::Empty;
  bool single_pass = false;
  std::vector<TransitionRule> rules;

  StateId state_id(const std::string& name) const;
  SymbolId symbol_id(char symbol) const;
  char symbol_char(SymbolId id) const { return alphabet.at(id); }
  SymbolId blank() const { return 0; }
  bool absorbing(StateId state) const {
    return state == accept || state == reject;
  }
  void validate() const;
};

/// Machine configuration. The tape is unbounded in both directions and
/// blank-filled: right_tape[i] is cell i, left_tape[i] is cell -(i+1).
struct Configuration {
  StateId state = 0;
  std::vector<SymbolId> left_tape;
  std::vector<SymbolId> right_tape;
  std::int64_t head = 0;
  std::uint64_t step_index = 0;

  SymbolId read(std::int64_t cell) const;
  void write(std::int64_t cell, SymbolId symbol);
};

Configuration initial_configuration(const MachineSpec& machine,
                                    const Word& input);

struct StepRecord {
  std::uint64_t step_index = 0;
  Bits payload;
  StateId state_before = 0;
  StateId state_after = 0;
  Move head_move = Move::Stay;
};

/// Cumulative introspection accounting for one run: one record per executed
/// step, the ordered payload transcript, and the bit total.
struct BudgetLedger {
  std::uint64_t input_length = 0;
  IotaSpec spec;
  std::vector<StepRecord> steps;
  std::uint64_t total_bits = 0;
  std::vector<Bits> transcript;

  /// CSV export: `step,payload_bits,payload_hex,state_before,state_after,move`.
  std::string to_csv(const MachineSpec& machine) const;
};

struct RunResult {
  Verdict verdict = Verdict::Timeout;
  BudgetLedger ledger;
  Configuration final_configuration;
};

// ---------------------------------------------------------------------------
// Canonical payload layout and selector views.
//
// The canonical record packs, in order: the state id in ceil(log2 |Q|) bits,
// the head field in ceil(log2 n) bits (low bits of the head offset), then one
// 6-bit window per depth 1..d, each holding the 3 symbols at head-1, head,
// head+1 as 2-bit alphabet codes. Whole fields are dropped from the tail when
// the budget cannot hold the full record.
// ---------------------------------------------------------------------------

struct PayloadLayout {
  unsigned state_bits = 0;
  unsigned head_bits = 0;
  unsigned depth = 1;  // spec.depth: windows 1..depth exist in the full record
  std::uint64_t budget = 0;

  static constexpr unsigned kWindowSymbols = 3;
  static constexpr unsigned kBitsPerSymbol = 2;
  static constexpr unsigned kWindowBits = kWindowSymbols * kBitsPerSymbol;

  /// Layout for a machine/run; canonical windows need |alphabet| <= 4.
  static PayloadLayout canonical(const MachineSpec& machine,
                                 const IotaSpec& spec,
                                 std::uint64_t input_length);

  bool state_present() const { return state_bits <= budget; }
  bool head_present() const {
    return state_present() && state_bits + head_bits <= budget;
  }
  /// Number of whole windows that fit after the state and head fields.
  unsigned windows_present() const;
};

/// Decoded selector views over a canonical payload. Requesting a window
/// deeper than the interface depth is unrepresentable and throws; a window
/// that was dropped by the budget is merely absent.
struct SelectorViews {
  std::optional<std::uint32_t> state;
  std::optional<std::uint64_t> head;
  std::vector<std::array<SymbolId, PayloadLayout::kWindowSymbols>> windows;
  unsigned max_depth = 1;

  std::array<SymbolId, PayloadLayout::kWindowSymbols> window(
      unsigned view_depth) const;
  bool window_present(unsigned view_depth) const;
};

SelectorViews decode_payload(const Bits& payload, const PayloadLayout& layout);
Bits encode_views(const SelectorViews& views, const PayloadLayout& layout);

// ---------------------------------------------------------------------------
// Execution.
// ---------------------------------------------------------------------------

/// Metered per-step budget c*d*ceil(log2 n); declared in budget.hpp, restated
/// here because every runtime check goes through it.
using psitm::budget_bits;

/// One machine step: evaluates the iota policy exactly once, meters the
/// payload against the budget (BudgetViolation past it), then applies the
/// first matching transition row. Throws std::logic_error when `cfg` is
/// already absorbing and std::runtime_error when no row matches.
StepRecord step(const MachineSpec& machine, Configuration& cfg,
                const IotaSpec& spec, std::uint64_t input_length);

/// Runs for at most `max_steps` steps from the initial configuration on
/// `input` (length >= 2, so the budget is defined). Enforces the single-pass
/// audit when the machine declares it.
RunResult run(const MachineSpec& machine, const Word& input,
              const IotaSpec& spec, std::uint64_t max_steps);

/// Runs every input for up to `horizon` steps and counts distinct payload
/// transcripts. All inputs must share one length.
std::uint64_t count_transcripts(const MachineSpec& machine,
                                const std::vector<Word>& inputs,
                                const IotaSpec& spec, std::uint64_t horizon);

}  // namespace psitm

#endif
