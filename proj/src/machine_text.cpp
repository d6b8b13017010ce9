#include "psitm/machine_text.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace psitm {

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  std::string word;
  while (in >> word) {
    words.push_back(word);
  }
  return words;
}

char parse_symbol(const std::string& token) {
  if (token.size() != 1) {
    throw std::invalid_argument("machine text: symbol must be one character: " +
                                token);
  }
  return token[0];
}

Move parse_move(const std::string& token) {
  if (token == "L") return Move::Left;
  if (token == "R") return Move::Right;
  if (token == "S") return Move::Stay;
  throw std::invalid_argument("machine text: move must be L, R or S: " + token);
}

struct PendingRule {
  std::string from, scan, pattern, to, write, move;
};

}  // namespace

MachineSpec machine_from_text(const std::string& text) {
  MachineSpec machine;
  machine.alphabet.clear();
  bool have_states = false, have_initial = false, have_accept = false,
       have_reject = false;
  std::string initial_name, accept_name, reject_name;
  std::vector<PendingRule> pending;

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    const auto colon = line.find(':');
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    if (colon == std::string::npos) {
      throw std::invalid_argument("machine text: malformed line: " + line);
    }
    const std::string key = line.substr(0, colon);
    const std::string rest = line.substr(colon + 1);
    const std::vector<std::string> words = split_words(rest);

    if (key == "states") {
      machine.states = words;
      have_states = true;
    } else if (key == "initial") {
      if (words.size() != 1) {
        throw std::invalid_argument("machine text: initial wants one state");
      }
      initial_name = words[0];
      have_initial = true;
    } else if (key == "accept") {
      if (words.size() != 1) {
        throw std::invalid_argument("machine text: accept wants one state");
      }
      accept_name = words[0];
      have_accept = true;
    } else if (key == "reject") {
      if (words.size() != 1) {
        throw std::invalid_argument("machine text: reject wants one state");
      }
      reject_name = words[0];
      have_reject = true;
    } else if (key == "alphabet") {
      if (words.size() != 1) {
        throw std::invalid_argument(
            "machine text: alphabet wants one token (blank first)");
      }
      machine.alphabet = words[0];
    } else if (key == "policy") {
      if (words.size() != 1) {
        throw std::invalid_argument("machine text: policy wants one name");
      }
      machine.policy = iota_policy_from_string(words[0]);
    } else if (key == "single_pass") {
      if (words.size() != 1 || (words[0] != "true" && words[0] != "false")) {
        throw std::invalid_argument("machine text: single_pass wants true/false");
      }
      machine.single_pass = words[0] == "true";
    } else if (key == "rule") {
      if (words.size() != 7 || words[3] != "->") {
        throw std::invalid_argument(
            "machine text: rule wants 'from scan pattern -> to write move': " +
            line);
      }
      pending.push_back(
          {words[0], words[1], words[2], words[4], words[5], words[6]});
    } else {
      throw std::invalid_argument("machine text: unknown directive: " + key);
    }
  }

  if (!have_states || !have_initial || !have_accept || !have_reject) {
    throw std::invalid_argument(
        "machine text: states/initial/accept/reject are all required");
  }
  if (machine.alphabet.empty()) {
    machine.alphabet = "_01";
  }
  machine.initial = machine.state_id(initial_name);
  machine.accept = machine.state_id(accept_name);
  machine.reject = machine.state_id(reject_name);

  for (const PendingRule& p : pending) {
    TransitionRule rule;
    rule.from = machine.state_id(p.from);
    rule.scan = machine.symbol_id(parse_symbol(p.scan));
    rule.pattern = PayloadPattern::parse(p.pattern);
    rule.to = machine.state_id(p.to);
    rule.write = machine.symbol_id(parse_symbol(p.write));
    rule.move = parse_move(p.move);
    machine.rules.push_back(std::move(rule));
  }

  machine.validate();
  return machine;
}

}  // namespace psitm
