#ifndef PSITM_MACHINE_TEXT_HPP
#define PSITM_MACHINE_TEXT_HPP

#include <string>

#include "psitm/machine.hpp"

namespace psitm {

/// Parses the declarative machine format. Lines, in any order, `#` comments:
///
///   states: q0 q1 acc rej
///   initial: q0
///   accept: acc
///   reject: rej
///   alphabet: _01            (first symbol is the blank)
///   policy: canonical
///   single_pass: true
///   rule: q0 0 * -> q0 0 R
///   rule: q0 1 1?0 -> q1 1 R
///
/// A rule row is `(state, symbol, payload-pattern) -> (state, symbol, move)`
/// with `*` as the wildcard payload pattern and `{0,1,?}` prefixes otherwise.
/// Rows fire first-match, so the transition stays a function. The result is
/// validated (absorbing accept/reject, known states and symbols).
MachineSpec machine_from_text(const std::string& text);

}  // namespace psitm

#endif
