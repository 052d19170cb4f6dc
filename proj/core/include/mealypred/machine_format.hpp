#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "mealypred/machine.hpp"

namespace mealypred {

// Text format, one item per line:
//
//   mealy <k>
//   initial <i>
//   <state> <input-bit> -> <next-state> <output-bit>     (exactly 2k lines)
//
// Lines starting with '#' are comments and blank lines are ignored. Entries
// may come in any order, but each (state, input) pair must appear once.

/// Throws ParseError naming the offending line, or the missing (state, input)
/// pair when the table is incomplete.
MealyMachine parse_machine(std::string_view text);

/// Canonical serialization: header, then entries sorted by (state, input),
/// single spaces, trailing newline. This byte form is the machine identity.
std::string serialize_machine(const MealyMachine& machine);

/// 64-bit FNV-1a of the canonical serialization, as 16 lowercase hex digits.
std::string machine_id(const MealyMachine& machine);

MealyMachine load_machine_file(const std::string& path);

}  // namespace mealypred
