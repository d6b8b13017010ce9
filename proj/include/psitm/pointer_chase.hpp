#ifndef PSITM_POINTER_CHASE_HPP
#define PSITM_POINTER_CHASE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "psitm/bits.hpp"

namespace psitm {

/// Pointer-chase instance: `layers` function tables over a universe
/// {1..universe}, a 0/1 tail predicate, and a start index. Acceptance is
/// tail(u_k) where u_0 = start and u_j = table_j(u_{j-1}).
struct PointerChaseInstance {
  unsigned layers = 2;    // k >= 2
  unsigned universe = 2;  // m >= 2
  std::vector<std::vector<unsigned>> tables;  // layers x universe, 1-based values
  std::vector<std::uint8_t> tail;             // universe bits
  unsigned start = 1;  // in 1..universe

  unsigned entry_width() const;     // ceil(log2 universe)
  std::uint64_t encoded_bits() const;  // k*m*width + m + width
  void validate() const;

  friend bool operator==(const PointerChaseInstance&,
                         const PointerChaseInstance&) = default;
};

/// Canonical wire layout: tables in order, each as `universe` fixed-width
/// entries of entry_width() bits (values stored zero-based, big-endian within
/// the entry), then the tail bits, then the start index in entry_width() bits.
Bits lk_encode(const PointerChaseInstance& instance);
PointerChaseInstance lk_decode(const Bits& encoding, unsigned layers,
                               unsigned universe);

/// Direct chain evaluation u_0 = start, u_j = table_j(u_{j-1}); accepts iff
/// tail(u_k) = 1.
bool lk_decide(const PointerChaseInstance& instance);

/// Read-access audit of the streamed decider: total bit reads, and per phase
/// whether read positions were strictly increasing.
struct PhaseAudit {
  std::string name;
  std::uint64_t reads = 0;
  bool strictly_increasing = true;
};

struct StreamAudit {
  std::uint64_t total_reads = 0;
  std::uint64_t workspace_bits = 0;
  std::vector<PhaseAudit> phases;

  bool single_pass_ok() const;
};

struct StreamedVerdict {
  bool accept = false;
  StreamAudit audit;
};

/// Streamed decider over the raw encoding: peeks the start index, then one
/// left-to-right scan per table block and a final tail scan. Workspace is a
/// constant number of entry-width registers; total reads never exceed the
/// encoded length. Throws std::invalid_argument on a bad encoding length.
StreamedVerdict lk_decide_streamed(const Bits& encoding, unsigned layers,
                                   unsigned universe);

/// Deterministic seeded instance (fixed 64-bit LCG: tables layer by layer,
/// then tail, then start).
PointerChaseInstance lk_generate(unsigned layers, unsigned universe,
                                 std::uint64_t seed);

/// Fooling-family request: members share everything outside the varying set,
/// which covers at least 90% of the universe and always contains the routed
/// position u_{k-1}, so tail flips provably flip the verdict.
struct FoolingFamilyParams {
  PointerChaseInstance base;
  std::vector<unsigned> varying_set;  // subset of 1..universe
  double alpha = 0.9;                 // target entropy rate, bits per element
};

/// Canonical params for a base instance: the varying set is the universe
/// minus the floor(0.1*m) largest indices other than the routed position.
FoolingFamilyParams make_fooling_params(PointerChaseInstance base,
                                        double alpha = 0.9);

struct FoolingCertificate {
  std::vector<unsigned> varying_set;
  std::size_t accepting_index = 0;  // valid when has_both_verdicts
  std::size_t rejecting_index = 0;
  bool has_both_verdicts = false;
  bool pairwise_agreement_outside = false;
  double alpha_target = 0.9;
  double achieved_log2_count = 0.0;
};

struct FoolingFamily {
  std::vector<PointerChaseInstance> members;
  FoolingCertificate certificate;
};

/// Builds `count` members varying the last table and the tail inside the
/// varying set only, and verifies the certificate (pairwise agreement outside
/// the set; both verdicts present for count >= 2). Throws when `count`
/// exceeds the variation space 2^|S|.
FoolingFamily lk_fooling_family(const FoolingFamilyParams& params,
                                std::size_t count);

}  // namespace psitm

#endif
