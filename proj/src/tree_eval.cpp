#include "psitm/tree_eval.hpp"

#include <stdexcept>
#include <utility>

#include "psitm/prng.hpp"

namespace psitm {

BoolTree BoolTree::leaf(bool value) {
  BoolTree tree;
  tree.nodes.push_back(Node{Gate::Leaf, static_cast<std::uint8_t>(value), -1, -1});
  tree.root = 0;
  return tree;
}

BoolTree BoolTree::combine(Gate gate, BoolTree left, BoolTree right) {
  if (gate == Gate::Leaf) {
    throw std::invalid_argument("BoolTree::combine: gate must be And or Or");
  }
  BoolTree tree = std::move(left);
  const std::int32_t offset = static_cast<std::int32_t>(tree.nodes.size());
  for (Node node : right.nodes) {
    if (node.left >= 0) node.left += offset;
    if (node.right >= 0) node.right += offset;
    tree.nodes.push_back(node);
  }
  const std::int32_t left_root = tree.root;
  const std::int32_t right_root = right.root + offset;
  tree.nodes.push_back(Node{gate, 0, left_root, right_root});
  tree.root = static_cast<std::int32_t>(tree.nodes.size()) - 1;
  return tree;
}

void BoolTree::validate() const {
  if (root < 0 || static_cast<std::size_t>(root) >= nodes.size()) {
    throw std::invalid_argument("BoolTree: root out of range");
  }
  for (const Node& node : nodes) {
    const bool is_leaf = node.gate == Gate::Leaf;
    if (is_leaf != (node.left < 0) || is_leaf != (node.right < 0)) {
      throw std::invalid_argument("BoolTree: leaf/child mismatch");
    }
    if (!is_leaf && (static_cast<std::size_t>(node.left) >= nodes.size() ||
                     static_cast<std::size_t>(node.right) >= nodes.size())) {
      throw std::invalid_argument("BoolTree: child index out of range");
    }
  }
}

unsigned BoolTree::depth() const {
  validate();
  unsigned max_depth = 0;
  std::vector<std::pair<std::int32_t, unsigned>> stack{{root, 0}};
  while (!stack.empty()) {
    auto [index, level] = stack.back();
    stack.pop_back();
    max_depth = std::max(max_depth, level);
    const Node& node = nodes[index];
    if (node.gate != Gate::Leaf) {
      stack.push_back({node.left, level + 1});
      stack.push_back({node.right, level + 1});
    }
  }
  return max_depth;
}

bool BoolTree::evaluate() const {
  validate();
  // Iterative post-order: children are resolved before their gate.
  std::vector<std::uint8_t> value(nodes.size(), 0);
  std::vector<std::pair<std::int32_t, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [index, expanded] = stack.back();
    stack.pop_back();
    const Node& node = nodes[index];
    if (node.gate == Gate::Leaf) {
      value[index] = node.value;
      continue;
    }
    if (!expanded) {
      stack.push_back({index, true});
      stack.push_back({node.left, false});
      stack.push_back({node.right, false});
      continue;
    }
    const bool left = value[node.left] != 0;
    const bool right = value[node.right] != 0;
    value[index] = node.gate == Gate::And ? (left && right) : (left || right);
  }
  return value[root] != 0;
}

namespace {

void encode_node(const BoolTree& tree, std::int32_t index, Bits& out) {
  const BoolTree::Node& node = tree.nodes[index];
  switch (node.gate) {
    case BoolTree::Gate::Leaf:
      out.append_uint(0b00, 2);
      out.push_back(node.value != 0);
      return;
    case BoolTree::Gate::And:
      out.append_uint(0b01, 2);
      break;
    case BoolTree::Gate::Or:
      out.append_uint(0b10, 2);
      break;
  }
  encode_node(tree, node.left, out);
  encode_node(tree, node.right, out);
}

std::int32_t decode_node(const Bits& data, std::size_t& pos, BoolTree& tree) {
  if (pos + 2 > data.size()) {
    throw std::invalid_argument("tree_decode: truncated node tag");
  }
  const std::uint64_t tag = data.read_uint(pos, 2);
  pos += 2;
  if (tag == 0b00) {
    if (pos >= data.size()) {
      throw std::invalid_argument("tree_decode: truncated leaf value");
    }
    const bool value = data[pos++];
    tree.nodes.push_back(
        BoolTree::Node{BoolTree::Gate::Leaf,
                       static_cast<std::uint8_t>(value), -1, -1});
    return static_cast<std::int32_t>(tree.nodes.size()) - 1;
  }
  if (tag == 0b11) {
    throw std::invalid_argument("tree_decode: invalid node tag 11");
  }
  const BoolTree::Gate gate =
      tag == 0b01 ? BoolTree::Gate::And : BoolTree::Gate::Or;
  const std::int32_t left = decode_node(data, pos, tree);
  const std::int32_t right = decode_node(data, pos, tree);
  tree.nodes.push_back(BoolTree::Node{gate, 0, left, right});
  return static_cast<std::int32_t>(tree.nodes.size()) - 1;
}

}  // namespace

Bits tree_encode(const TreeInstance& instance) {
  instance.tree.validate();
  Bits out;
  encode_node(instance.tree, instance.tree.root, out);
  for (std::uint64_t i = 0; i < instance.padding; ++i) {
    out.push_back(true);
  }
  return out;
}

TreeInstance tree_decode(const Bits& encoding, unsigned declared_depth) {
  TreeInstance instance;
  instance.declared_depth = declared_depth;
  std::size_t pos = 0;
  instance.tree.root = decode_node(encoding, pos, instance.tree);
  instance.padding = encoding.size() - pos;
  for (; pos < encoding.size(); ++pos) {
    if (!encoding[pos]) {
      throw std::invalid_argument("tree_decode: padding must be all ones");
    }
  }
  instance.tree.validate();
  return instance;
}

bool tree_decide(const TreeInstance& instance) {
  instance.tree.validate();
  return instance.tree.depth() == instance.declared_depth &&
         instance.tree.evaluate();
}

namespace {

/// Subtree of depth <= `budget`, biased toward going deep.
BoolTree random_subtree(Lcg64& rng, unsigned budget) {
  if (budget == 0 || rng.next_below(4) == 0) {
    return BoolTree::leaf(rng.next_bit());
  }
  const BoolTree::Gate gate =
      rng.next_bit() ? BoolTree::Gate::And : BoolTree::Gate::Or;
  return BoolTree::combine(gate, random_subtree(rng, budget - 1),
                           random_subtree(rng, budget - 1));
}

/// Subtree of depth exactly `target`: one forced full-depth spine, free rest.
BoolTree spine_subtree(Lcg64& rng, unsigned target) {
  if (target == 0) {
    return BoolTree::leaf(rng.next_bit());
  }
  const BoolTree::Gate gate =
      rng.next_bit() ? BoolTree::Gate::And : BoolTree::Gate::Or;
  BoolTree deep = spine_subtree(rng, target - 1);
  BoolTree free = random_subtree(rng, target - 1);
  return rng.next_bit() ? BoolTree::combine(gate, std::move(deep), std::move(free))
                        : BoolTree::combine(gate, std::move(free), std::move(deep));
}

}  // namespace

TreeInstance tree_generate(unsigned declared_depth, std::uint64_t padding,
                           std::uint64_t seed) {
  Lcg64 rng(seed);
  TreeInstance instance;
  instance.declared_depth = declared_depth;
  instance.padding = padding;
  instance.tree = spine_subtree(rng, declared_depth);
  return instance;
}

}  // namespace psitm
