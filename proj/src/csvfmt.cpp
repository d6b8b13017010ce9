#include "psitm/csvfmt.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace psitm {

std::string fmt_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path temp = path.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("write_file_atomic: cannot open " +
                               temp.string());
    }
    out << content;
    if (!out) {
      throw std::runtime_error("write_file_atomic: write failed: " +
                               temp.string());
    }
  }
  std::filesystem::rename(temp, path);
}

}  // namespace psitm
