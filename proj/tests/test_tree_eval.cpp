#include <catch2/catch_amalgamated.hpp>

#include "psitm/container.hpp"
#include "psitm/prng.hpp"
#include "psitm/tree_eval.hpp"

#include <filesystem>
#include <functional>

using namespace psitm;
using Gate = BoolTree::Gate;

namespace {

// Test-side oracle: plain recursion over the node pool.
bool recursive_eval(const BoolTree& tree, std::int32_t index) {
  const BoolTree::Node& node = tree.nodes[index];
  if (node.gate == Gate::Leaf) {
    return node.value != 0;
  }
  const bool left = recursive_eval(tree, node.left);
  const bool right = recursive_eval(tree, node.right);
  return node.gate == Gate::And ? (left && right) : (left || right);
}

unsigned recursive_depth(const BoolTree& tree, std::int32_t index) {
  const BoolTree::Node& node = tree.nodes[index];
  if (node.gate == Gate::Leaf) {
    return 0;
  }
  return 1 + std::max(recursive_depth(tree, node.left),
                      recursive_depth(tree, node.right));
}

// Preorder shape enumeration: 0 for leaf, 1 for gate.
std::vector<std::vector<int>> shapes_with_leaves(unsigned count) {
  if (count == 1) {
    return {{0}};
  }
  std::vector<std::vector<int>> out;
  for (unsigned left = 1; left < count; ++left) {
    for (const auto& ls : shapes_with_leaves(left)) {
      for (const auto& rs : shapes_with_leaves(count - left)) {
        std::vector<int> shape{1};
        shape.insert(shape.end(), ls.begin(), ls.end());
        shape.insert(shape.end(), rs.begin(), rs.end());
        out.push_back(std::move(shape));
      }
    }
  }
  return out;
}

// Compares the module evaluator against the recursion on every gate/leaf
// labelling of every shape with the given leaf count. The tree is built once
// per shape and relabelled in place.
void check_all_trees_with_leaves(unsigned leaves) {
  for (const std::vector<int>& shape : shapes_with_leaves(leaves)) {
    std::size_t pos = 0;
    std::vector<std::size_t> leaf_nodes, gate_nodes;
    BoolTree tree;
    std::function<std::int32_t()> build = [&]() -> std::int32_t {
      if (shape[pos++] == 0) {
        tree.nodes.push_back({Gate::Leaf, 0, -1, -1});
        leaf_nodes.push_back(tree.nodes.size() - 1);
        return static_cast<std::int32_t>(tree.nodes.size()) - 1;
      }
      const std::size_t gate_slot = gate_nodes.size();
      gate_nodes.push_back(0);  // reserved; filled after children
      const std::int32_t left = build();
      const std::int32_t right = build();
      tree.nodes.push_back({Gate::And, 0, left, right});
      gate_nodes[gate_slot] = tree.nodes.size() - 1;
      return static_cast<std::int32_t>(tree.nodes.size()) - 1;
    };
    tree.root = build();

    // One REQUIRE per shape keeps the assertion count sane at 14M trees.
    const unsigned gates = leaves - 1;
    std::uint64_t mismatches = 0;
    for (std::uint64_t gate_mask = 0; gate_mask < (1ULL << gates);
         ++gate_mask) {
      for (std::size_t g = 0; g < gate_nodes.size(); ++g) {
        tree.nodes[gate_nodes[g]].gate =
            ((gate_mask >> g) & 1) ? Gate::And : Gate::Or;
      }
      for (std::uint64_t leaf_mask = 0; leaf_mask < (1ULL << leaves);
           ++leaf_mask) {
        for (std::size_t l = 0; l < leaf_nodes.size(); ++l) {
          tree.nodes[leaf_nodes[l]].value = (leaf_mask >> l) & 1;
        }
        if (tree.evaluate() != recursive_eval(tree, tree.root)) {
          ++mismatches;
        }
      }
      if (tree.depth() != recursive_depth(tree, tree.root)) {
        ++mismatches;
      }
    }
    REQUIRE(mismatches == 0);
  }
}

}  // namespace

TEST_CASE("pinned membership examples") {
  // AND(1,1) declared at depth 1.
  TreeInstance both_true{
      BoolTree::combine(Gate::And, BoolTree::leaf(true), BoolTree::leaf(true)),
      1, 0};
  REQUIRE(tree_decide(both_true));

  // AND(OR(0,1), AND(1,1)) declared at depth 2.
  TreeInstance nested{
      BoolTree::combine(
          Gate::And,
          BoolTree::combine(Gate::Or, BoolTree::leaf(false),
                            BoolTree::leaf(true)),
          BoolTree::combine(Gate::And, BoolTree::leaf(true),
                            BoolTree::leaf(true))),
      2, 0};
  REQUIRE(tree_decide(nested));

  // The same depth-2 tree declared at depth 3: a rejection, not an error.
  nested.declared_depth = 3;
  REQUIRE_FALSE(tree_decide(nested));

  // AND(1,0) declared at depth 1: depth right, value wrong.
  TreeInstance false_and{
      BoolTree::combine(Gate::And, BoolTree::leaf(true),
                        BoolTree::leaf(false)),
      1, 0};
  REQUIRE_FALSE(tree_decide(false_and));
}

TEST_CASE("evaluation and depth match plain recursion on all small trees") {
  // All full binary trees with up to 15 nodes (8 leaves), every labelling.
  for (unsigned leaves = 1; leaves <= 8; ++leaves) {
    check_all_trees_with_leaves(leaves);
  }
}

TEST_CASE("encode/decode round trip") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    Lcg64 rng(seed);
    const unsigned depth = 1 + static_cast<unsigned>(rng.next_below(5));
    const TreeInstance inst = tree_generate(depth, rng.next_below(40), seed);
    REQUIRE(inst.tree.depth() == depth);
    const Bits wire = tree_encode(inst);
    const TreeInstance back = tree_decode(wire, depth);
    REQUIRE(back == inst);
    REQUIRE(tree_decide(back) == tree_decide(inst));
  }
}

TEST_CASE("padding does not change membership") {
  TreeInstance inst = tree_generate(3, 0, 11);
  const bool verdict = tree_decide(inst);
  inst.padding = 57;
  REQUIRE(tree_decide(inst) == verdict);
  REQUIRE(tree_decode(tree_encode(inst), 3).padding == 57);
}

TEST_CASE("malformed streams are errors") {
  // Truncated inside a gate's right child.
  const TreeInstance inst{
      BoolTree::combine(Gate::And, BoolTree::leaf(true), BoolTree::leaf(true)),
      1, 0};
  Bits wire = tree_encode(inst);
  Bits truncated;
  for (std::size_t i = 0; i + 2 < wire.size(); ++i) {
    truncated.push_back(wire[i]);
  }
  REQUIRE_THROWS_AS(tree_decode(truncated, 1), std::invalid_argument);

  // The reserved tag 11 never decodes.
  REQUIRE_THROWS_AS(tree_decode(Bits::from_string("11"), 1),
                    std::invalid_argument);

  // A zero bit inside the padding is malformed.
  Bits bad_padding = tree_encode(inst);
  bad_padding.push_back(false);
  REQUIRE_THROWS_AS(tree_decode(bad_padding, 1), std::invalid_argument);
}

TEST_CASE("container round trip for a tree file") {
  const TreeInstance inst = tree_generate(3, 12, 5);
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "psitm_test_tree.psitm";
  // Header k is the language index: declared depth minus one.
  write_container(path, {LanguageTag::TreeEval, 2,
                         static_cast<std::uint32_t>(inst.padding)},
                  tree_encode(inst));
  const auto [header, payload] = read_container(path);
  REQUIRE(header.tag == LanguageTag::TreeEval);
  const TreeInstance back = tree_decode(payload, header.k + 1);
  REQUIRE(back.tree == inst.tree);
  REQUIRE(back.padding == inst.padding);
  std::filesystem::remove(path);
}
