#include "psitm/container.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace psitm {

namespace {

constexpr char kMagic[6] = {'P', 'S', 'I', 'T', 'M', '1'};

void put_u32le(std::uint32_t value, std::uint8_t* out) {
  out[0] = static_cast<std::uint8_t>(value);
  out[1] = static_cast<std::uint8_t>(value >> 8);
  out[2] = static_cast<std::uint8_t>(value >> 16);
  out[3] = static_cast<std::uint8_t>(value >> 24);
}

std::uint32_t get_u32le(const std::uint8_t* in) {
  return static_cast<std::uint32_t>(in[0]) |
         static_cast<std::uint32_t>(in[1]) << 8 |
         static_cast<std::uint32_t>(in[2]) << 16 |
         static_cast<std::uint32_t>(in[3]) << 24;
}

}  // namespace

void write_container(const std::filesystem::path& path,
                     const ContainerHeader& header, const Bits& payload) {
  std::array<std::uint8_t, 16> head{};
  std::memcpy(head.data(), kMagic, sizeof(kMagic));
  head[6] = static_cast<std::uint8_t>(header.tag);
  head[7] = 0;  // reserved
  put_u32le(header.k, head.data() + 8);
  put_u32le(header.m, head.data() + 12);

  std::array<std::uint8_t, 4> bit_count{};
  put_u32le(static_cast<std::uint32_t>(payload.size()), bit_count.data());

  const std::filesystem::path temp = path.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("write_container: cannot open " + temp.string());
    }
    out.write(reinterpret_cast<const char*>(head.data()), head.size());
    out.write(reinterpret_cast<const char*>(bit_count.data()),
              bit_count.size());
    const std::vector<std::uint8_t> bytes = payload.to_bytes();
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
      throw std::runtime_error("write_container: write failed: " +
                               temp.string());
    }
  }
  std::filesystem::rename(temp, path);
}

std::pair<ContainerHeader, Bits> read_container(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_container: cannot open " + path.string());
  }
  std::array<std::uint8_t, 16> head{};
  std::array<std::uint8_t, 4> bit_count{};
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  in.read(reinterpret_cast<char*>(bit_count.data()), bit_count.size());
  if (!in) {
    throw std::runtime_error("read_container: truncated header: " +
                             path.string());
  }
  if (std::memcmp(head.data(), kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("read_container: bad magic: " + path.string());
  }
  if (head[6] < 1 || head[6] > 3) {
    throw std::runtime_error("read_container: unknown language tag");
  }
  ContainerHeader header;
  header.tag = static_cast<LanguageTag>(head[6]);
  header.k = get_u32le(head.data() + 8);
  header.m = get_u32le(head.data() + 12);

  const std::uint32_t bits = get_u32le(bit_count.data());
  std::vector<std::uint8_t> bytes((bits + 7) / 8);
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!in) {
    throw std::runtime_error("read_container: truncated payload: " +
                             path.string());
  }
  return {header, Bits::from_bytes(bytes, bits)};
}

}  // namespace psitm
