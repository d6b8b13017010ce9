#include <catch2/catch_amalgamated.hpp>

#include "psitm/container.hpp"
#include "psitm/phase_locked.hpp"

#include <filesystem>

using namespace psitm;

namespace {

PhaseLockedInstance two_phase_single_bit(std::uint64_t v1, std::uint64_t v2) {
  PhaseLockedInstance inst;
  inst.phases = 2;
  inst.universe = 2;
  inst.width = 1;
  inst.query = 1;
  inst.snapshots = {{v1, 0}, {v2, 0}};
  return inst;
}

}  // namespace

TEST_CASE("default acceptor is XOR at width one") {
  // k=2, m=2, width 1: first bit of v1 XOR last bit of v2.
  REQUIRE(lkphase_decide(two_phase_single_bit(1, 0)));
  REQUIRE(lkphase_decide(two_phase_single_bit(0, 1)));
  REQUIRE_FALSE(lkphase_decide(two_phase_single_bit(0, 0)));
  REQUIRE_FALSE(lkphase_decide(two_phase_single_bit(1, 1)));
}

TEST_CASE("table acceptor: the all-zero function rejects everything") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    PhaseLockedInstance inst = lkphase_generate(2, 4, seed);
    inst.use_table_acceptor = true;
    inst.acceptor_table.assign(
        std::size_t{1} << (inst.phases * inst.width), 0);
    REQUIRE_FALSE(lkphase_decide(inst));
  }
}

TEST_CASE("verdict only reads the query column") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PhaseLockedInstance inst = lkphase_generate(3, 8, seed, 5);
    const bool verdict = lkphase_decide(inst);
    PhaseLockedInstance scrambled = inst;
    for (unsigned j = 0; j < scrambled.phases; ++j) {
      for (unsigned i = 0; i < scrambled.universe; ++i) {
        if (i + 1 != scrambled.query) {
          scrambled.snapshots[j][i] ^= (seed + i + j) & 7;
        }
      }
    }
    REQUIRE(lkphase_decide(scrambled) == verdict);
  }
}

TEST_CASE("projection fingerprints ignore later phases") {
  const PhaseLockedInstance a = lkphase_generate(3, 8, 21);
  PhaseLockedInstance b = a;
  b.snapshots[2][0] ^= 1;  // final phase only

  REQUIRE(lkphase_projection(a, 2) == lkphase_projection(b, 2));
  REQUIRE(lkphase_projection(a, 1) == lkphase_projection(b, 1));
  REQUIRE_FALSE(lkphase_projection(a, 3) == lkphase_projection(b, 3));

  PhaseLockedInstance c = a;
  c.snapshots[0][0] ^= 1;  // first phase
  REQUIRE_FALSE(lkphase_projection(a, 1).raw ==
                lkphase_projection(c, 1).raw);
  REQUIRE(lkphase_projection(a, 1).hash != lkphase_projection(c, 1).hash);
}

TEST_CASE("projection depth range") {
  const PhaseLockedInstance inst = lkphase_generate(3, 8, 5);
  REQUIRE_NOTHROW(lkphase_projection(inst, 3));
  REQUIRE_THROWS_AS(lkphase_projection(inst, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(lkphase_projection(inst, 4), std::invalid_argument);
}

TEST_CASE("fingerprint invariance across all lower depths") {
  for (unsigned k : {3u, 4u}) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const PhaseLockedInstance base = lkphase_generate(k, 8, seed);
      for (unsigned j = 1; j < k; ++j) {
        PhaseLockedInstance tweaked = base;
        for (unsigned later = j; later < k; ++later) {
          for (unsigned i = 0; i < tweaked.universe; ++i) {
            tweaked.snapshots[later][i] ^= 3;
          }
        }
        REQUIRE(lkphase_projection(base, j) == lkphase_projection(tweaked, j));
      }
    }
  }
}

TEST_CASE("collision demo pins the transcript-collision shape") {
  const CollisionReport report = lkphase_collision_demo(2, 8, 1337);
  REQUIRE(report.first_accepts);
  REQUIRE_FALSE(report.second_accepts);
  REQUIRE(report.below_first == report.below_second);
  REQUIRE_FALSE(report.full_first == report.full_second);

  // Every report field recomputes from the instance pair.
  REQUIRE(report.first_accepts == lkphase_decide(report.first));
  REQUIRE(report.second_accepts == lkphase_decide(report.second));
  REQUIRE(report.below_first == lkphase_projection(report.first, 1));
  REQUIRE(report.full_second == lkphase_projection(report.second, 2));

  // The pair differs exactly in the final snapshot's query column.
  PhaseLockedInstance patched = report.second;
  patched.snapshots[1][patched.query - 1] =
      report.first.snapshots[1][report.first.query - 1];
  REQUIRE(patched == report.first);
}

TEST_CASE("collision demo across sizes") {
  for (unsigned k : {2u, 3u}) {
    for (unsigned m : {8u, 16u}) {
      const CollisionReport report = lkphase_collision_demo(k, m, 1337);
      REQUIRE(report.first_accepts != report.second_accepts);
      REQUIRE(report.below_first == report.below_second);
      REQUIRE_FALSE(report.full_first == report.full_second);
    }
  }
}

TEST_CASE("phase encoding round trips and has the stated length") {
  const PhaseLockedInstance inst = lkphase_generate(3, 8, 77, 2);
  const Bits wire = lkphase_encode(inst);
  REQUIRE(wire.size() == 3 * 8 * 3);
  REQUIRE(lkphase_decode(wire, 3, 8, 2) == inst);

  Bits bad = wire;
  bad.push_back(true);
  REQUIRE_THROWS_AS(lkphase_decode(bad, 3, 8, 2), std::invalid_argument);
}

TEST_CASE("container round trip for a phase-locked file") {
  const PhaseLockedInstance inst = lkphase_generate(2, 16, 3);
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "psitm_test_phase.psitm";
  write_container(path, {LanguageTag::PhaseLocked, 2, 16},
                  lkphase_encode(inst));
  const auto [header, payload] = read_container(path);
  REQUIRE(header.tag == LanguageTag::PhaseLocked);
  REQUIRE(lkphase_decode(payload, header.k, header.m) == inst);
  std::filesystem::remove(path);
}
