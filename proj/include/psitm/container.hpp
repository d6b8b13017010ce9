#ifndef PSITM_CONTAINER_HPP
#define PSITM_CONTAINER_HPP

#include <cstdint>
#include <filesystem>
#include <utility>

#include "psitm/bits.hpp"

namespace psitm {

enum class LanguageTag : std::uint8_t {
  PointerChase = 1,
  PhaseLocked = 2,
  TreeEval = 3,
};

/// Instance file header, 16 bytes on the wire: magic "PSITM1", the language
/// tag byte, one reserved zero byte, then k and m as little-endian u32
/// counts. The body is a little-endian u32 payload bit count followed by the
/// MSB-first packed payload bytes (tree payloads are variable length, so the
/// count cannot be derived from the header alone).
struct ContainerHeader {
  LanguageTag tag = LanguageTag::PointerChase;
  std::uint32_t k = 0;
  std::uint32_t m = 0;
};

void write_container(const std::filesystem::path& path,
                     const ContainerHeader& header, const Bits& payload);

std::pair<ContainerHeader, Bits> read_container(
    const std::filesystem::path& path);

}  // namespace psitm

#endif
