#include "psitm/phase_locked.hpp"

#include <stdexcept>

#include "psitm/budget.hpp"
#include "psitm/prng.hpp"

namespace psitm {

std::uint64_t PhaseLockedInstance::encoded_bits() const {
  return static_cast<std::uint64_t>(phases) * universe * width;
}

void PhaseLockedInstance::validate() const {
  if (phases < 2) {
    throw std::invalid_argument("PhaseLockedInstance: phases must be >= 2");
  }
  if (universe < 2) {
    throw std::invalid_argument("PhaseLockedInstance: universe must be >= 2");
  }
  if (width != ceil_log2(universe)) {
    throw std::invalid_argument(
        "PhaseLockedInstance: width must equal ceil(log2 universe)");
  }
  if (snapshots.size() != phases) {
    throw std::invalid_argument("PhaseLockedInstance: wrong snapshot count");
  }
  const std::uint64_t limit = width >= 64 ? ~0ULL : (1ULL << width);
  for (const auto& snapshot : snapshots) {
    if (snapshot.size() != universe) {
      throw std::invalid_argument("PhaseLockedInstance: wrong snapshot size");
    }
    for (std::uint64_t value : snapshot) {
      if (value >= limit) {
        throw std::invalid_argument(
            "PhaseLockedInstance: snapshot value wider than width");
      }
    }
  }
  if (query < 1 || query > universe) {
    throw std::invalid_argument("PhaseLockedInstance: query outside universe");
  }
  if (use_table_acceptor) {
    const std::uint64_t key_bits =
        static_cast<std::uint64_t>(phases) * width;
    if (key_bits > 24) {
      throw std::invalid_argument(
          "PhaseLockedInstance: table acceptor limited to 24 key bits");
    }
    if (acceptor_table.size() != (1ULL << key_bits)) {
      throw std::invalid_argument(
          "PhaseLockedInstance: acceptor table size mismatch");
    }
  }
}

Bits lkphase_encode(const PhaseLockedInstance& instance) {
  instance.validate();
  Bits out;
  for (const auto& snapshot : instance.snapshots) {
    for (std::uint64_t value : snapshot) {
      out.append_uint(value, instance.width);
    }
  }
  return out;
}

PhaseLockedInstance lkphase_decode(const Bits& encoding, unsigned phases,
                                   unsigned universe, unsigned query) {
  PhaseLockedInstance instance;
  instance.phases = phases;
  instance.universe = universe;
  if (phases < 2 || universe < 2) {
    throw std::invalid_argument(
        "lkphase_decode: phases and universe must be >= 2");
  }
  instance.width = ceil_log2(universe);
  instance.query = query;
  if (encoding.size() != instance.encoded_bits()) {
    throw std::invalid_argument("lkphase_decode: encoding length mismatch");
  }
  std::size_t pos = 0;
  instance.snapshots.assign(phases, std::vector<std::uint64_t>(universe, 0));
  for (unsigned j = 0; j < phases; ++j) {
    for (unsigned i = 0; i < universe; ++i) {
      instance.snapshots[j][i] = encoding.read_uint(pos, instance.width);
      pos += instance.width;
    }
  }
  instance.validate();
  return instance;
}

namespace {

bool apply_acceptor(const PhaseLockedInstance& instance,
                    const std::vector<std::uint64_t>& values) {
  if (instance.use_table_acceptor) {
    std::uint64_t key = 0;
    for (std::uint64_t value : values) {
      key = (key << instance.width) | value;
    }
    return instance.acceptor_table[key] != 0;
  }
  // Default acceptor: first bit of the phase-1 value XOR last bit of the
  // phase-k value. Balanced, and sensitive to the final phase.
  const bool first_bit =
      ((values.front() >> (instance.width - 1)) & 1) != 0;
  const bool last_bit = (values.back() & 1) != 0;
  return first_bit != last_bit;
}

}  // namespace

bool lkphase_decide(const PhaseLockedInstance& instance) {
  instance.validate();
  // One pass per phase; only the query column is kept.
  std::vector<std::uint64_t> values;
  values.reserve(instance.phases);
  for (unsigned j = 0; j < instance.phases; ++j) {
    values.push_back(instance.snapshots[j][instance.query - 1]);
  }
  return apply_acceptor(instance, values);
}

ViewFingerprint lkphase_projection(const PhaseLockedInstance& instance,
                                   unsigned depth) {
  instance.validate();
  if (depth < 1 || depth > instance.phases) {
    throw std::invalid_argument("lkphase_projection: depth out of range");
  }
  ViewFingerprint fp;
  fp.depth = depth;
  for (unsigned j = 0; j < depth; ++j) {
    for (std::uint64_t value : instance.snapshots[j]) {
      fp.raw.append_uint(value, instance.width);
    }
  }
  // FNV-1a over the view parameters and the packed snapshot bytes.
  std::uint64_t hash = 14695981039346656037ULL;
  auto mix = [&hash](std::uint8_t byte) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  };
  mix(static_cast<std::uint8_t>(instance.phases));
  mix(static_cast<std::uint8_t>(instance.universe));
  mix(static_cast<std::uint8_t>(instance.width));
  mix(static_cast<std::uint8_t>(depth));
  for (std::uint8_t byte : fp.raw.to_bytes()) {
    mix(byte);
  }
  fp.hash = hash;
  return fp;
}

PhaseLockedInstance lkphase_generate(unsigned phases, unsigned universe,
                                     std::uint64_t seed, unsigned query) {
  if (phases < 2 || universe < 2) {
    throw std::invalid_argument(
        "lkphase_generate: phases and universe must be >= 2");
  }
  Lcg64 rng(seed);
  PhaseLockedInstance instance;
  instance.phases = phases;
  instance.universe = universe;
  instance.width = ceil_log2(universe);
  instance.query = query;
  const std::uint64_t limit = 1ULL << instance.width;
  instance.snapshots.assign(phases, std::vector<std::uint64_t>(universe, 0));
  for (unsigned j = 0; j < phases; ++j) {
    for (unsigned i = 0; i < universe; ++i) {
      instance.snapshots[j][i] = rng.next_below(limit);
    }
  }
  instance.validate();
  return instance;
}

CollisionReport lkphase_collision_demo(unsigned phases, unsigned universe,
                                       std::uint64_t seed, unsigned query) {
  CollisionReport report;
  report.first = lkphase_generate(phases, universe, seed, query);
  // Flip the last bit of the final snapshot's query column; the default
  // acceptor flips with it. Normalize so the first member accepts.
  if (!lkphase_decide(report.first)) {
    report.first.snapshots[phases - 1][query - 1] ^= 1;
  }
  report.second = report.first;
  report.second.snapshots[phases - 1][query - 1] ^= 1;

  report.below_first = lkphase_projection(report.first, phases - 1);
  report.below_second = lkphase_projection(report.second, phases - 1);
  report.full_first = lkphase_projection(report.first, phases);
  report.full_second = lkphase_projection(report.second, phases);
  report.first_accepts = lkphase_decide(report.first);
  report.second_accepts = lkphase_decide(report.second);
  return report;
}

}  // namespace psitm
