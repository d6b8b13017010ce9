#ifndef PSITM_PHASE_LOCKED_HPP
#define PSITM_PHASE_LOCKED_HPP

#include <cstdint>
#include <vector>

#include "psitm/bits.hpp"

namespace psitm {

/// Phase-locked instance: one snapshot per phase mapping the universe to
/// width-bit values, a fixed query column (a global constant, not part of
/// the encoding), and an acceptor over the per-phase values at the query.
/// The default acceptor XORs the first bit of the phase-1 value with the
/// last bit of the phase-k value, so it is balanced and depends on the final
/// phase. A full truth-table acceptor can be supplied instead.
struct PhaseLockedInstance {
  unsigned phases = 2;     // k
  unsigned universe = 2;   // m
  unsigned width = 1;      // ceil(log2 m)
  std::vector<std::vector<std::uint64_t>> snapshots;  // phases x universe
  unsigned query = 1;  // in 1..universe

  bool use_table_acceptor = false;
  std::vector<std::uint8_t> acceptor_table;  // 2^(phases*width) bits when used

  std::uint64_t encoded_bits() const;  // phases * universe * width
  void validate() const;

  friend bool operator==(const PhaseLockedInstance&,
                         const PhaseLockedInstance&) = default;
};

/// Snapshot blocks in phase order, each as `universe` big-endian width-bit
/// entries. Query and acceptor are outside the encoding.
Bits lkphase_encode(const PhaseLockedInstance& instance);
PhaseLockedInstance lkphase_decode(const Bits& encoding, unsigned phases,
                                   unsigned universe, unsigned query = 1);

/// Reads v_j = snapshot_j(query) phase by phase and applies the acceptor.
bool lkphase_decide(const PhaseLockedInstance& instance);

/// Everything visible through the interfaces of depth <= `depth`: the raw
/// bits of snapshots 1..depth plus a stable 64-bit hash of them. Two
/// instances agreeing on those snapshots fingerprint identically no matter
/// how later phases differ.
struct ViewFingerprint {
  unsigned depth = 1;
  std::uint64_t hash = 0;
  Bits raw;

  friend bool operator==(const ViewFingerprint&,
                         const ViewFingerprint&) = default;
};

/// Projection to depth `depth`, 1 <= depth <= phases (depth = phases is the
/// full view). Throws std::invalid_argument outside that range.
ViewFingerprint lkphase_projection(const PhaseLockedInstance& instance,
                                   unsigned depth);

/// Deterministic seeded instance with the default acceptor.
PhaseLockedInstance lkphase_generate(unsigned phases, unsigned universe,
                                     std::uint64_t seed, unsigned query = 1);

/// Transcript-collision witness: a pair differing only in the final
/// snapshot's query column, with equal depth-(k-1) fingerprints and
/// different verdicts. The first member always accepts.
struct CollisionReport {
  PhaseLockedInstance first;
  PhaseLockedInstance second;
  ViewFingerprint below_first, below_second;  // depth k-1
  ViewFingerprint full_first, full_second;    // depth k
  bool first_accepts = true;
  bool second_accepts = false;
};

CollisionReport lkphase_collision_demo(unsigned phases, unsigned universe,
                                       std::uint64_t seed, unsigned query = 1);

}  // namespace psitm

#endif
