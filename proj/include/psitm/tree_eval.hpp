#ifndef PSITM_TREE_EVAL_HPP
#define PSITM_TREE_EVAL_HPP

#include <cstdint>
#include <vector>

#include "psitm/bits.hpp"

namespace psitm {

/// AND/OR formula over bit leaves, stored as a node pool with value
/// semantics. Children always precede their parent is NOT assumed; traversal
/// is explicit.
struct BoolTree {
  enum class Gate : std::uint8_t { Leaf, And, Or };

  struct Node {
    Gate gate = Gate::Leaf;
    std::uint8_t value = 0;  // leaf label
    std::int32_t left = -1;
    std::int32_t right = -1;

    friend bool operator==(const Node&, const Node&) = default;
  };

  std::vector<Node> nodes;
  std::int32_t root = -1;

  static BoolTree leaf(bool value);
  static BoolTree combine(Gate gate, BoolTree left, BoolTree right);

  std::size_t node_count() const { return nodes.size(); }
  /// Depth of the tree: a lone leaf has depth 0.
  unsigned depth() const;
  /// Bottom-up AND/OR evaluation of the root (iterative post-order).
  bool evaluate() const;
  void validate() const;

  friend bool operator==(const BoolTree&, const BoolTree&) = default;
};

/// A tree-evaluation language instance: the formula, the depth it claims to
/// have, and the trailing unary padding length.
struct TreeInstance {
  BoolTree tree;
  unsigned declared_depth = 1;  // k + 1
  std::uint64_t padding = 0;

  friend bool operator==(const TreeInstance&, const TreeInstance&) = default;
};

/// Prefix-free wire format. Per node: a 2-bit tag (00 leaf, 01 AND, 10 OR);
/// a leaf tag is followed by its value bit, a gate tag by the left then the
/// right subtree. The padding is appended as that many 1-bits.
Bits tree_encode(const TreeInstance& instance);

/// Inverse of tree_encode given the declared depth from the container
/// header. Throws std::invalid_argument on a malformed prefix stream or when
/// the remainder after the tree is not all ones.
TreeInstance tree_decode(const Bits& encoding, unsigned declared_depth);

/// Membership: the actual depth equals the declared depth AND the root
/// evaluates to 1. A depth mismatch is a rejection, not an error.
bool tree_decide(const TreeInstance& instance);

/// Deterministic seeded instance of exactly the declared depth.
TreeInstance tree_generate(unsigned declared_depth, std::uint64_t padding,
                           std::uint64_t seed);

}  // namespace psitm

#endif
