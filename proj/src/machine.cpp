#include "psitm/machine.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace psitm {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Accept:
      return "accept";
    case Verdict::Reject:
      return "reject";
    case Verdict::Timeout:
      return "timeout";
  }
  return "timeout";
}

std::string to_string(IotaPolicy policy) {
  switch (policy) {
    case IotaPolicy::Empty:
      return "empty";
    case IotaPolicy::Canonical:
      return "canonical";
    case IotaPolicy::TapeStride:
      return "tape_stride";
    case IotaPolicy::StepHeadState:
      return "step_head_state";
    case IotaPolicy::OverbudgetProbe:
      return "overbudget_probe";
  }
  return "empty";
}

IotaPolicy iota_policy_from_string(const std::string& name) {
  if (name == "empty") return IotaPolicy::Empty;
  if (name == "canonical") return IotaPolicy::Canonical;
  if (name == "tape_stride") return IotaPolicy::TapeStride;
  if (name == "step_head_state") return IotaPolicy::StepHeadState;
  if (name == "overbudget_probe") return IotaPolicy::OverbudgetProbe;
  throw std::invalid_argument("unknown iota policy: " + name);
}

PayloadPattern PayloadPattern::parse(const std::string& text) {
  if (text == "*") {
    return PayloadPattern{};
  }
  PayloadPattern pattern;
  pattern.wildcard = false;
  for (char c : text) {
    if (c != '0' && c != '1' && c != '?') {
      throw std::invalid_argument("payload pattern symbol not in {0,1,?}: " +
                                  text);
    }
  }
  pattern.prefix = text;
  return pattern;
}

bool PayloadPattern::matches(const Bits& payload) const {
  if (wildcard) {
    return true;
  }
  if (prefix.size() > payload.size()) {
    return false;
  }
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (prefix[i] == '?') {
      continue;
    }
    if ((prefix[i] == '1') != payload[i]) {
      return false;
    }
  }
  return true;
}

std::string PayloadPattern::to_text() const {
  return wildcard ? "*" : prefix;
}

StateId MachineSpec::state_id(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == name) {
      return i;
    }
  }
  throw std::invalid_argument("unknown state: " + name);
}

SymbolId MachineSpec::symbol_id(char symbol) const {
  const auto pos = alphabet.find(symbol);
  if (pos == std::string::npos) {
    throw std::invalid_argument(std::string("symbol not in tape alphabet: ") +
                                symbol);
  }
  return static_cast<SymbolId>(pos);
}

void MachineSpec::validate() const {
  if (states.empty()) {
    throw std::invalid_argument("MachineSpec: no states");
  }
  if (initial >= states.size() || accept >= states.size() ||
      reject >= states.size()) {
    throw std::invalid_argument("MachineSpec: designated state out of range");
  }
  if (alphabet.empty()) {
    throw std::invalid_argument("MachineSpec: empty tape alphabet");
  }
  std::unordered_set<char> seen(alphabet.begin(), alphabet.end());
  if (seen.size() != alphabet.size()) {
    throw std::invalid_argument("MachineSpec: duplicate alphabet symbol");
  }
  for (const TransitionRule& rule : rules) {
    if (rule.from >= states.size() || rule.to >= states.size()) {
      throw std::invalid_argument("MachineSpec: rule references unknown state");
    }
    if (rule.scan >= alphabet.size() || rule.write >= alphabet.size()) {
      throw std::invalid_argument("MachineSpec: rule references unknown symbol");
    }
    if (absorbing(rule.from)) {
      throw std::invalid_argument(
          "MachineSpec: accept/reject states are absorbing; rule leaves one");
    }
  }
}

SymbolId Configuration::read(std::int64_t cell) const {
  if (cell >= 0) {
    const auto i = static_cast<std::size_t>(cell);
    return i < right_tape.size() ? right_tape[i] : SymbolId{0};
  }
  const auto i = static_cast<std::size_t>(-cell - 1);
  return i < left_tape.size() ? left_tape[i] : SymbolId{0};
}

void Configuration::write(std::int64_t cell, SymbolId symbol) {
  if (cell >= 0) {
    const auto i = static_cast<std::size_t>(cell);
    if (i >= right_tape.size()) {
      right_tape.resize(i + 1, SymbolId{0});
    }
    right_tape[i] = symbol;
  } else {
    const auto i = static_cast<std::size_t>(-cell - 1);
    if (i >= left_tape.size()) {
      left_tape.resize(i + 1, SymbolId{0});
    }
    left_tape[i] = symbol;
  }
}

Configuration initial_configuration(const MachineSpec& machine,
                                    const Word& input) {
  Configuration cfg;
  cfg.state = machine.initial;
  cfg.right_tape.reserve(input.size());
  const SymbolId zero = machine.symbol_id('0');
  const SymbolId one = machine.symbol_id('1');
  for (std::size_t i = 0; i < input.size(); ++i) {
    cfg.right_tape.push_back(input[i] ? one : zero);
  }
  return cfg;
}

std::string BudgetLedger::to_csv(const MachineSpec& machine) const {
  std::ostringstream out;
  out << "step,payload_bits,payload_hex,state_before,state_after,move\n";
  for (const StepRecord& record : steps) {
    out << record.step_index << ',' << record.payload.size() << ','
        << record.payload.to_hex() << ',' << machine.states[record.state_before]
        << ',' << machine.states[record.state_after] << ','
        << static_cast<char>(record.head_move) << '\n';
  }
  return out.str();
}

PayloadLayout PayloadLayout::canonical(const MachineSpec& machine,
                                       const IotaSpec& spec,
                                       std::uint64_t input_length) {
  if (machine.alphabet.size() > (1u << kBitsPerSymbol)) {
    throw std::invalid_argument(
        "canonical payload layout: tape alphabet larger than 4 symbols");
  }
  PayloadLayout layout;
  layout.state_bits = ceil_log2(machine.states.size());
  layout.head_bits = ceil_log2(input_length);
  layout.depth = static_cast<unsigned>(spec.depth);
  layout.budget = budget_bits(spec, input_length);
  return layout;
}

unsigned PayloadLayout::windows_present() const {
  if (!head_present()) {
    return 0;
  }
  const std::uint64_t used = state_bits + head_bits;
  const std::uint64_t room = (budget - used) / kWindowBits;
  return static_cast<unsigned>(std::min<std::uint64_t>(room, depth));
}

std::array<SymbolId, PayloadLayout::kWindowSymbols> SelectorViews::window(
    unsigned view_depth) const {
  if (view_depth < 1 || view_depth > max_depth) {
    throw std::out_of_range(
        "selector view: window depth beyond the interface depth");
  }
  if (view_depth > windows.size()) {
    throw std::out_of_range(
        "selector view: window dropped from payload by the budget");
  }
  return windows[view_depth - 1];
}

bool SelectorViews::window_present(unsigned view_depth) const {
  if (view_depth < 1 || view_depth > max_depth) {
    throw std::out_of_range(
        "selector view: window depth beyond the interface depth");
  }
  return view_depth <= windows.size();
}

SelectorViews decode_payload(const Bits& payload, const PayloadLayout& layout) {
  SelectorViews views;
  views.max_depth = layout.depth;
  std::size_t pos = 0;
  if (layout.state_present()) {
    views.state = static_cast<std::uint32_t>(
        payload.read_uint(pos, layout.state_bits));
    pos += layout.state_bits;
  }
  if (layout.head_present()) {
    views.head = payload.read_uint(pos, layout.head_bits);
    pos += layout.head_bits;
  }
  for (unsigned w = 0; w < layout.windows_present(); ++w) {
    std::array<SymbolId, PayloadLayout::kWindowSymbols> window{};
    for (unsigned s = 0; s < PayloadLayout::kWindowSymbols; ++s) {
      window[s] = static_cast<SymbolId>(
          payload.read_uint(pos, PayloadLayout::kBitsPerSymbol));
      pos += PayloadLayout::kBitsPerSymbol;
    }
    views.windows.push_back(window);
  }
  return views;
}

Bits encode_views(const SelectorViews& views, const PayloadLayout& layout) {
  Bits payload;
  if (layout.state_present()) {
    payload.append_uint(views.state.value(), layout.state_bits);
  }
  if (layout.head_present()) {
    payload.append_uint(views.head.value(), layout.head_bits);
  }
  const unsigned windows = layout.windows_present();
  for (unsigned w = 0; w < windows; ++w) {
    for (unsigned s = 0; s < PayloadLayout::kWindowSymbols; ++s) {
      payload.append_uint(views.windows.at(w)[s],
                          PayloadLayout::kBitsPerSymbol);
    }
  }
  return payload;
}

namespace {

Bits canonical_payload(const MachineSpec& machine, const Configuration& cfg,
                       const IotaSpec& spec, std::uint64_t input_length) {
  const PayloadLayout layout =
      PayloadLayout::canonical(machine, spec, input_length);
  SelectorViews views;
  views.max_depth = layout.depth;
  views.state = static_cast<std::uint32_t>(cfg.state);
  const std::uint64_t head_mask =
      layout.head_bits >= 64 ? ~0ULL : (1ULL << layout.head_bits) - 1;
  views.head = static_cast<std::uint64_t>(cfg.head) & head_mask;
  for (unsigned w = 0; w < layout.windows_present(); ++w) {
    views.windows.push_back({cfg.read(cfg.head - 1), cfg.read(cfg.head),
                             cfg.read(cfg.head + 1)});
  }
  return encode_views(views, layout);
}

Bits tape_stride_payload(const MachineSpec& machine, const Configuration& cfg,
                         std::uint64_t budget) {
  Bits payload;
  const SymbolId one = machine.symbol_id('1');
  const std::int64_t base =
      static_cast<std::int64_t>(cfg.step_index * budget);
  for (std::uint64_t i = 0; i < budget; ++i) {
    payload.push_back(cfg.read(base + static_cast<std::int64_t>(i)) == one);
  }
  return payload;
}

Bits step_head_state_payload(const Configuration& cfg, std::uint64_t budget,
                             unsigned state_bits) {
  // (step, head, state) packed, then padded with zeros or truncated to
  // exactly the budget; saturates the transcript-counting bound.
  Bits record;
  record.append_uint(cfg.step_index, 16);
  record.append_uint(static_cast<std::uint64_t>(cfg.head) & 0xffff, 16);
  if (state_bits > 0) {
    record.append_uint(cfg.state, state_bits);
  }
  Bits payload;
  for (std::uint64_t i = 0; i < budget; ++i) {
    payload.push_back(i < record.size() && record[i]);
  }
  return payload;
}

Bits compute_payload(const MachineSpec& machine, const Configuration& cfg,
                     const IotaSpec& spec, std::uint64_t input_length) {
  const std::uint64_t budget = budget_bits(spec, input_length);
  switch (machine.policy) {
    case IotaPolicy::Empty:
      return Bits{};
    case IotaPolicy::Canonical:
      return canonical_payload(machine, cfg, spec, input_length);
    case IotaPolicy::TapeStride:
      return tape_stride_payload(machine, cfg, budget);
    case IotaPolicy::StepHeadState:
      return step_head_state_payload(cfg, budget,
                                     ceil_log2(machine.states.size()));
    case IotaPolicy::OverbudgetProbe:
      return Bits(budget + 1, false);
  }
  return Bits{};
}

const TransitionRule& find_rule(const MachineSpec& machine,
                                const Configuration& cfg, SymbolId scanned,
                                const Bits& payload) {
  for (const TransitionRule& rule : machine.rules) {
    if (rule.from == cfg.state && rule.scan == scanned &&
        rule.pattern.matches(payload)) {
      return rule;
    }
  }
  throw std::runtime_error("no transition rule for state '" +
                           machine.states[cfg.state] + "' on symbol '" +
                           std::string(1, machine.symbol_char(scanned)) + "'");
}

}  // namespace

StepRecord step(const MachineSpec& machine, Configuration& cfg,
                const IotaSpec& spec, std::uint64_t input_length) {
  if (machine.absorbing(cfg.state)) {
    throw std::logic_error("step: configuration is absorbing");
  }
  const std::uint64_t budget = budget_bits(spec, input_length);

  // Exactly one iota evaluation per step.
  const Bits payload = compute_payload(machine, cfg, spec, input_length);
  if (payload.size() > budget) {
    throw BudgetViolation("payload of " + std::to_string(payload.size()) +
                          " bits exceeds per-step budget of " +
                          std::to_string(budget));
  }

  const SymbolId scanned = cfg.read(cfg.head);
  const TransitionRule& rule = find_rule(machine, cfg, scanned, payload);

  StepRecord record;
  record.step_index = cfg.step_index;
  record.payload = payload;
  record.state_before = cfg.state;
  record.state_after = rule.to;
  record.head_move = rule.move;

  cfg.write(cfg.head, rule.write);
  cfg.state = rule.to;
  switch (rule.move) {
    case Move::Left:
      --cfg.head;
      break;
    case Move::Right:
      ++cfg.head;
      break;
    case Move::Stay:
      break;
  }
  ++cfg.step_index;
  return record;
}

RunResult run(const MachineSpec& machine, const Word& input,
              const IotaSpec& spec, std::uint64_t max_steps) {
  machine.validate();
  validate(spec);
  if (max_steps < 1) {
    throw std::invalid_argument("run: max_steps must be >= 1");
  }
  if (input.size() < 2) {
    throw std::invalid_argument(
        "run: input length must be >= 2 (budget undefined below)");
  }

  RunResult result;
  result.ledger.input_length = input.size();
  result.ledger.spec = spec;

  Configuration cfg = initial_configuration(machine, input);
  for (std::uint64_t t = 0; t < max_steps; ++t) {
    if (machine.absorbing(cfg.state)) {
      break;
    }
    const std::int64_t head_before = cfg.head;
    StepRecord record = step(machine, cfg, spec, input.size());
    if (machine.single_pass && cfg.head < head_before) {
      throw AuditViolation(
          "single-pass audit: head moved left at step " + std::to_string(t));
    }
    result.ledger.total_bits += record.payload.size();
    result.ledger.transcript.push_back(record.payload);
    result.ledger.steps.push_back(std::move(record));
  }

  if (cfg.state == machine.accept) {
    result.verdict = Verdict::Accept;
  } else if (cfg.state == machine.reject) {
    result.verdict = Verdict::Reject;
  } else {
    result.verdict = Verdict::Timeout;
  }
  result.final_configuration = std::move(cfg);
  return result;
}

std::uint64_t count_transcripts(const MachineSpec& machine,
                                const std::vector<Word>& inputs,
                                const IotaSpec& spec, std::uint64_t horizon) {
  if (inputs.empty()) {
    return 0;
  }
  const std::size_t n = inputs.front().size();
  for (const Word& input : inputs) {
    if (input.size() != n) {
      throw std::invalid_argument("count_transcripts: mixed input lengths");
    }
  }
  std::unordered_set<std::string> distinct;
  for (const Word& input : inputs) {
    const RunResult result = run(machine, input, spec, horizon);
    std::string key;
    for (const Bits& payload : result.ledger.transcript) {
      key += payload.to_string();
      key += '|';
    }
    distinct.insert(std::move(key));
  }
  return distinct.size();
}

}  // namespace psitm
