#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mealypred/machine.hpp"

namespace mealypred {

enum class EnumerationMode : std::uint8_t { raw, canonical, strongly_connected };

const char* to_string(EnumerationMode mode) noexcept;
EnumerationMode parse_enumeration_mode(const std::string& text);

struct EnumerationCaps {
  std::size_t raw = 3;
  std::size_t canonical = 4;
};

/// (2k)^{2k}: machines with k states and initial state 0.
std::uint64_t raw_machine_count(std::size_t k);

/// Decodes a raw index in [0, raw_machine_count(k)). Digits are base 2k, most
/// significant first, one per (state, input) entry in table order; digit
/// value is 2 * next + output. Increasing indices therefore follow the
/// lexicographic order of canonical serializations (for k <= 10).
MealyMachine machine_from_index(std::size_t k, std::uint64_t index);
std::uint64_t machine_index(const MealyMachine& machine);

/// perm[old] = new. Requires perm to be a permutation of [0, k).
MealyMachine relabel(const MealyMachine& machine,
                     std::span<const StateId> perm);

/// Least table, entry by entry, over all relabelings that send the initial
/// state to 0.
MealyMachine canonicalize(const MealyMachine& machine);
bool is_canonical(const MealyMachine& machine);

/// Number of distinct machines obtained by relabelings that fix state 0:
/// (k-1)! / |automorphisms|.
std::uint64_t orbit_size(const MealyMachine& machine);

/// Transition digraph (outputs ignored) is strongly connected.
bool is_strongly_connected(const MealyMachine& machine);

/// Streams machines in increasing raw-index order. Throws CapExceededError
/// from the constructor when k is over the cap for the mode.
class MachineEnumerator {
 public:
  MachineEnumerator(std::size_t k, EnumerationMode mode,
                    const EnumerationCaps& caps = {});

  std::optional<MealyMachine> next();

  std::size_t states() const noexcept { return k_; }
  EnumerationMode mode() const noexcept { return mode_; }
  std::uint64_t space_size() const noexcept { return end_; }

  /// Restricts the walk to raw indices [begin, end) so that disjoint ranges
  /// can be consumed by different workers.
  void restrict_to(std::uint64_t begin, std::uint64_t end);

 private:
  std::size_t k_;
  EnumerationMode mode_;
  std::uint64_t cursor_ = 0;
  std::uint64_t end_ = 0;
};

/// Accepts the mode under `caps`; throws CapExceededError otherwise.
void check_enumeration_cap(std::size_t k, EnumerationMode mode,
                           const EnumerationCaps& caps);

std::vector<MealyMachine> enumerate_machines(std::size_t k,
                                             EnumerationMode mode,
                                             const EnumerationCaps& caps = {});

std::uint64_t count_machines(std::size_t k, EnumerationMode mode,
                             const EnumerationCaps& caps = {});

}  // namespace mealypred
