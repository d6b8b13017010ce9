#ifndef PSITM_CSVFMT_HPP
#define PSITM_CSVFMT_HPP

#include <filesystem>
#include <string>

namespace psitm {

/// Locale-independent numeric formatting for CSV output: 12 significant
/// digits, '.' decimal separator.
std::string fmt_double(double value);

/// Writes `content` to `path` atomically (temp file in the same directory,
/// then rename), creating parent directories as needed.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace psitm

#endif
