#ifndef PSITM_DEPTH_HPP
#define PSITM_DEPTH_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "psitm/bits.hpp"

namespace psitm {

/// A binary word is just a bit string.
using Word = Bits;

/// Interval memo of structural depths: cell(i, j) is the minimum parsing-tree
/// depth of the substring w[i..j], 1-based inclusive. Stored triangularly
/// (j >= i only).
class DepthTable {
 public:
  explicit DepthTable(std::size_t word_length);

  std::size_t length() const { return length_; }
  unsigned cell(std::size_t i, std::size_t j) const;
  void set_cell(std::size_t i, std::size_t j, unsigned depth);

  /// One CSV row per cell: `i,j,depth`, ordered by increasing i then j.
  std::string to_csv() const;

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t length_;
  std::vector<unsigned> cells_;
};

/// Minimum parsing-tree depth of `word` over all contiguous binary
/// partitions, computed by the interval dynamic program. Empty and
/// single-symbol words have depth 0. O(n^3) time.
unsigned structural_depth(const Word& word);

/// Same value by direct recursion on the partition definition, with no
/// memoization. Verification oracle only: guarded to |word| <= 16 because the
/// recursion is exponential. Throws std::invalid_argument past the guard.
unsigned structural_depth_oracle(const Word& word);

/// Full interval memo for a non-empty word; cell(1, n) equals
/// structural_depth(word). Throws std::invalid_argument on the empty word.
DepthTable depth_table(const Word& word);

}  // namespace psitm

#endif
