#include "psitm/depth.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace psitm {

DepthTable::DepthTable(std::size_t word_length)
    : length_(word_length), cells_(word_length * (word_length + 1) / 2, 0) {
  if (word_length == 0) {
    throw std::invalid_argument("DepthTable: word length must be >= 1");
  }
}

std::size_t DepthTable::index(std::size_t i, std::size_t j) const {
  if (i < 1 || j < i || j > length_) {
    throw std::out_of_range("DepthTable: cell indices out of range");
  }
  // Row-major upper triangle: row i holds length_ - i + 1 cells.
  std::size_t row_start = (i - 1) * length_ - (i - 1) * (i - 2) / 2;
  return row_start + (j - i);
}

unsigned DepthTable::cell(std::size_t i, std::size_t j) const {
  return cells_[index(i, j)];
}

void DepthTable::set_cell(std::size_t i, std::size_t j, unsigned depth) {
  cells_[index(i, j)] = depth;
}

std::string DepthTable::to_csv() const {
  std::ostringstream out;
  out << "i,j,depth\n";
  for (std::size_t i = 1; i <= length_; ++i) {
    for (std::size_t j = i; j <= length_; ++j) {
      out << i << ',' << j << ',' << cell(i, j) << '\n';
    }
  }
  return out.str();
}

DepthTable depth_table(const Word& word) {
  const std::size_t n = word.size();
  if (n == 0) {
    throw std::invalid_argument("depth_table: empty word");
  }
  DepthTable table(n);
  // Base cases cell(i, i) = 0 are the constructor default. Fill by
  // increasing substring length so both split halves are already known.
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 1; i + len - 1 <= n; ++i) {
      const std::size_t j = i + len - 1;
      unsigned best = std::numeric_limits<unsigned>::max();
      for (std::size_t k = i; k < j; ++k) {
        best = std::min(best, 1 + std::max(table.cell(i, k),
                                           table.cell(k + 1, j)));
      }
      table.set_cell(i, j, best);
    }
  }
  return table;
}

unsigned structural_depth(const Word& word) {
  if (word.size() <= 1) {
    return 0;
  }
  return depth_table(word).cell(1, word.size());
}

namespace {

unsigned oracle_recurse(std::size_t lo, std::size_t hi) {
  // [lo, hi) over the word; the partition recurrence never looks at the
  // symbols, so only the interval bounds are needed.
  if (hi - lo <= 1) {
    return 0;
  }
  unsigned best = std::numeric_limits<unsigned>::max();
  for (std::size_t k = lo + 1; k < hi; ++k) {
    best = std::min(best, 1 + std::max(oracle_recurse(lo, k),
                                       oracle_recurse(k, hi)));
  }
  return best;
}

}  // namespace

unsigned structural_depth_oracle(const Word& word) {
  if (word.size() > 16) {
    throw std::invalid_argument(
        "structural_depth_oracle: word longer than 16 symbols");
  }
  return oracle_recurse(0, word.size());
}

}  // namespace psitm
