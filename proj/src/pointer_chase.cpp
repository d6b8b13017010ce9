#include "psitm/pointer_chase.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psitm/budget.hpp"
#include "psitm/prng.hpp"

namespace psitm {

unsigned PointerChaseInstance::entry_width() const {
  return ceil_log2(universe);
}

std::uint64_t PointerChaseInstance::encoded_bits() const {
  const std::uint64_t width = entry_width();
  return static_cast<std::uint64_t>(layers) * universe * width + universe +
         width;
}

void PointerChaseInstance::validate() const {
  if (layers < 2) {
    throw std::invalid_argument("PointerChaseInstance: layers must be >= 2");
  }
  if (universe < 2) {
    throw std::invalid_argument("PointerChaseInstance: universe must be >= 2");
  }
  if (tables.size() != layers) {
    throw std::invalid_argument("PointerChaseInstance: wrong table count");
  }
  for (const auto& table : tables) {
    if (table.size() != universe) {
      throw std::invalid_argument("PointerChaseInstance: wrong table size");
    }
    for (unsigned value : table) {
      if (value < 1 || value > universe) {
        throw std::invalid_argument(
            "PointerChaseInstance: table value outside universe");
      }
    }
  }
  if (tail.size() != universe) {
    throw std::invalid_argument("PointerChaseInstance: wrong tail size");
  }
  if (start < 1 || start > universe) {
    throw std::invalid_argument("PointerChaseInstance: start outside universe");
  }
}

Bits lk_encode(const PointerChaseInstance& instance) {
  instance.validate();
  const unsigned width = instance.entry_width();
  Bits out;
  for (const auto& table : instance.tables) {
    for (unsigned value : table) {
      out.append_uint(value - 1, width);
    }
  }
  for (std::uint8_t bit : instance.tail) {
    out.push_back(bit != 0);
  }
  out.append_uint(instance.start - 1, width);
  return out;
}

PointerChaseInstance lk_decode(const Bits& encoding, unsigned layers,
                               unsigned universe) {
  PointerChaseInstance instance;
  instance.layers = layers;
  instance.universe = universe;
  if (layers < 2 || universe < 2) {
    throw std::invalid_argument("lk_decode: layers and universe must be >= 2");
  }
  const unsigned width = instance.entry_width();
  if (encoding.size() != instance.encoded_bits()) {
    throw std::invalid_argument("lk_decode: encoding length mismatch");
  }
  std::size_t pos = 0;
  instance.tables.assign(layers, std::vector<unsigned>(universe, 0));
  for (unsigned j = 0; j < layers; ++j) {
    for (unsigned i = 0; i < universe; ++i) {
      const std::uint64_t value = encoding.read_uint(pos, width);
      pos += width;
      if (value >= universe) {
        throw std::invalid_argument("lk_decode: table entry outside universe");
      }
      instance.tables[j][i] = static_cast<unsigned>(value) + 1;
    }
  }
  instance.tail.resize(universe);
  for (unsigned i = 0; i < universe; ++i) {
    instance.tail[i] = encoding[pos++] ? 1 : 0;
  }
  const std::uint64_t start = encoding.read_uint(pos, width);
  if (start >= universe) {
    throw std::invalid_argument("lk_decode: start outside universe");
  }
  instance.start = static_cast<unsigned>(start) + 1;
  return instance;
}

bool lk_decide(const PointerChaseInstance& instance) {
  instance.validate();
  unsigned index = instance.start;
  for (unsigned j = 0; j < instance.layers; ++j) {
    index = instance.tables[j][index - 1];
  }
  return instance.tail[index - 1] != 0;
}

bool StreamAudit::single_pass_ok() const {
  return std::all_of(phases.begin(), phases.end(),
                     [](const PhaseAudit& p) { return p.strictly_increasing; });
}

namespace {

/// Bit reader that records total reads and per-phase position monotonicity.
class AuditedReader {
 public:
  explicit AuditedReader(const Bits& data) : data_(data) {}

  void begin_phase(std::string name) {
    phases_.push_back(PhaseAudit{std::move(name), 0, true});
    last_pos_ = -1;
  }

  bool read_bit(std::uint64_t pos) {
    PhaseAudit& phase = phases_.back();
    ++phase.reads;
    ++total_reads_;
    if (last_pos_ >= 0 && static_cast<std::int64_t>(pos) <= last_pos_) {
      phase.strictly_increasing = false;
    }
    last_pos_ = static_cast<std::int64_t>(pos);
    return data_[pos];
  }

  std::uint64_t read_field(std::uint64_t pos, unsigned width) {
    std::uint64_t value = 0;
    for (unsigned i = 0; i < width; ++i) {
      value = (value << 1) | (read_bit(pos + i) ? 1 : 0);
    }
    return value;
  }

  StreamAudit finish(std::uint64_t workspace_bits) {
    StreamAudit audit;
    audit.total_reads = total_reads_;
    audit.workspace_bits = workspace_bits;
    audit.phases = std::move(phases_);
    return audit;
  }

 private:
  const Bits& data_;
  std::vector<PhaseAudit> phases_;
  std::int64_t last_pos_ = -1;
  std::uint64_t total_reads_ = 0;
};

}  // namespace

StreamedVerdict lk_decide_streamed(const Bits& encoding, unsigned layers,
                                   unsigned universe) {
  if (layers < 2 || universe < 2) {
    throw std::invalid_argument(
        "lk_decide_streamed: layers and universe must be >= 2");
  }
  const unsigned width = ceil_log2(universe);
  const std::uint64_t table_block =
      static_cast<std::uint64_t>(universe) * width;
  const std::uint64_t expected = layers * table_block + universe + width;
  if (encoding.size() != expected) {
    throw std::invalid_argument("lk_decide_streamed: encoding length mismatch");
  }

  AuditedReader reader(encoding);

  // The start index lives after the tail; peek it before the phase scans.
  reader.begin_phase("start-index");
  std::uint64_t index =
      reader.read_field(layers * table_block + universe, width);
  if (index >= universe) {
    throw std::invalid_argument("lk_decide_streamed: start outside universe");
  }

  // Phase j: scan table block j left-to-right up to the row for the current
  // index; the remainder of the block is skipped, not read.
  for (unsigned j = 0; j < layers; ++j) {
    reader.begin_phase("table-" + std::to_string(j + 1));
    const std::uint64_t block_start = j * table_block;
    std::uint64_t value = 0;
    for (std::uint64_t row = 0; row <= index; ++row) {
      value = reader.read_field(block_start + row * width, width);
    }
    if (value >= universe) {
      throw std::invalid_argument(
          "lk_decide_streamed: table entry outside universe");
    }
    index = value;
  }

  // Tail scan up to the routed position.
  reader.begin_phase("tail");
  const std::uint64_t tail_start = layers * table_block;
  bool accept = false;
  for (std::uint64_t pos = 0; pos <= index; ++pos) {
    accept = reader.read_bit(tail_start + pos);
  }

  // Registers: current index, current entry, phase and row counters.
  const std::uint64_t workspace_bits =
      2ULL * width + ceil_log2(layers + 2) + ceil_log2(universe + 1) + 8;

  StreamedVerdict verdict;
  verdict.accept = accept;
  verdict.audit = reader.finish(workspace_bits);
  return verdict;
}

PointerChaseInstance lk_generate(unsigned layers, unsigned universe,
                                 std::uint64_t seed) {
  if (layers < 2 || universe < 2) {
    throw std::invalid_argument("lk_generate: layers and universe must be >= 2");
  }
  Lcg64 rng(seed);
  PointerChaseInstance instance;
  instance.layers = layers;
  instance.universe = universe;
  instance.tables.assign(layers, std::vector<unsigned>(universe, 0));
  for (unsigned j = 0; j < layers; ++j) {
    for (unsigned i = 0; i < universe; ++i) {
      instance.tables[j][i] = static_cast<unsigned>(rng.next_below(universe)) + 1;
    }
  }
  instance.tail.resize(universe);
  for (unsigned i = 0; i < universe; ++i) {
    instance.tail[i] = rng.next_bit() ? 1 : 0;
  }
  instance.start = static_cast<unsigned>(rng.next_below(universe)) + 1;
  return instance;
}

namespace {

/// Chases the shared prefix of the instance: u_{k-1}, the argument fed to the
/// last table.
unsigned routed_argument(const PointerChaseInstance& instance) {
  unsigned index = instance.start;
  for (unsigned j = 0; j + 1 < instance.layers; ++j) {
    index = instance.tables[j][index - 1];
  }
  return index;
}

bool in_set(const std::vector<unsigned>& set, unsigned value) {
  return std::find(set.begin(), set.end(), value) != set.end();
}

}  // namespace

FoolingFamilyParams make_fooling_params(PointerChaseInstance base,
                                        double alpha) {
  base.validate();
  const unsigned m = base.universe;
  const unsigned drop = m - (m * 9 + 9) / 10;  // m - ceil(0.9 m)
  const unsigned routed = routed_argument(base);

  FoolingFamilyParams params;
  params.alpha = alpha;
  // Drop the largest indices that are not the routed position.
  std::vector<bool> keep(m + 1, true);
  unsigned dropped = 0;
  for (unsigned value = m; value >= 1 && dropped < drop; --value) {
    if (value != routed) {
      keep[value] = false;
      ++dropped;
    }
  }
  for (unsigned value = 1; value <= m; ++value) {
    if (keep[value]) {
      params.varying_set.push_back(value);
    }
  }
  params.base = std::move(base);
  return params;
}

FoolingFamily lk_fooling_family(const FoolingFamilyParams& params,
                                std::size_t count) {
  params.base.validate();
  if (count == 0) {
    throw std::invalid_argument("lk_fooling_family: count must be >= 1");
  }
  const std::vector<unsigned>& varying = params.varying_set;
  if (varying.empty()) {
    throw std::invalid_argument("lk_fooling_family: empty varying set");
  }
  for (unsigned value : varying) {
    if (value < 1 || value > params.base.universe) {
      throw std::invalid_argument(
          "lk_fooling_family: varying set outside universe");
    }
  }
  if (varying.size() < 64 && count > (1ULL << varying.size())) {
    throw std::invalid_argument(
        "lk_fooling_family: count exceeds the 2^|S| variation space");
  }

  const unsigned routed = routed_argument(params.base);
  if (!in_set(varying, routed)) {
    throw std::invalid_argument(
        "lk_fooling_family: varying set must contain the routed position");
  }

  // Tail positions varied by the member counter, the routed target first so
  // the low counter bit flips the verdict.
  std::vector<unsigned> tail_positions;
  tail_positions.push_back(routed);
  for (unsigned value : varying) {
    if (value != routed) {
      tail_positions.push_back(value);
    }
  }

  const unsigned last = params.base.layers - 1;
  FoolingFamily family;
  family.members.reserve(count);
  for (std::size_t member = 0; member < count; ++member) {
    PointerChaseInstance instance = params.base;
    // Route the chase to a fixed varying-set position; the routed argument is
    // itself in the set, so this entry is free to set.
    instance.tables[last][routed - 1] = routed;
    // Exercise last-table variation at another varying-set argument when one
    // exists (never touches the chased entry).
    if (varying.size() >= 2) {
      const unsigned other =
          varying[0] == routed ? varying[1] : varying[0];
      instance.tables[last][other - 1] =
          varying[(member / 2) % varying.size()];
    }
    for (std::size_t bit = 0; bit < tail_positions.size() && bit < 63; ++bit) {
      instance.tail[tail_positions[bit] - 1] = (member >> bit) & 1;
    }
    family.members.push_back(std::move(instance));
  }

  // Certificate: pairwise agreement outside the varying set, plus the two
  // verdicts when the family has at least two members.
  FoolingCertificate& cert = family.certificate;
  cert.varying_set = varying;
  cert.alpha_target = params.alpha;
  cert.achieved_log2_count = std::log2(static_cast<double>(count));
  cert.pairwise_agreement_outside = true;
  for (std::size_t a = 0; a < count && cert.pairwise_agreement_outside; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      const PointerChaseInstance& x = family.members[a];
      const PointerChaseInstance& y = family.members[b];
      bool agree = x.start == y.start;
      for (unsigned j = 0; j + 1 < x.layers && agree; ++j) {
        agree = x.tables[j] == y.tables[j];
      }
      for (unsigned value = 1; value <= x.universe && agree; ++value) {
        if (in_set(varying, value)) {
          continue;
        }
        agree = x.tables[last][value - 1] == y.tables[last][value - 1] &&
                x.tail[value - 1] == y.tail[value - 1];
      }
      if (!agree) {
        cert.pairwise_agreement_outside = false;
        break;
      }
    }
  }
  bool saw_accept = false, saw_reject = false;
  for (std::size_t member = 0; member < count; ++member) {
    if (lk_decide(family.members[member])) {
      if (!saw_accept) {
        cert.accepting_index = member;
      }
      saw_accept = true;
    } else {
      if (!saw_reject) {
        cert.rejecting_index = member;
      }
      saw_reject = true;
    }
  }
  cert.has_both_verdicts = saw_accept && saw_reject;
  return family;
}

}  // namespace psitm
