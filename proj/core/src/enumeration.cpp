#include "mealypred/enumeration.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "mealypred/errors.hpp"

namespace mealypred {

const char* to_string(EnumerationMode mode) noexcept {
  switch (mode) {
    case EnumerationMode::raw: return "raw";
    case EnumerationMode::canonical: return "canonical";
    case EnumerationMode::strongly_connected: return "strongly-connected";
  }
  return "?";
}

EnumerationMode parse_enumeration_mode(const std::string& text) {
  if (text == "raw") return EnumerationMode::raw;
  if (text == "canonical") return EnumerationMode::canonical;
  if (text == "strongly-connected" || text == "strongly_connected") {
    return EnumerationMode::strongly_connected;
  }
  throw std::invalid_argument("unknown enumeration mode '" + text + "'");
}

std::uint64_t raw_machine_count(std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  const std::uint64_t base = 2 * k;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < 2 * k; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / base) {
      throw CapExceededError("(2k)^(2k) overflows 64 bits for k = " +
                             std::to_string(k));
    }
    count *= base;
  }
  return count;
}

MealyMachine machine_from_index(std::size_t k, std::uint64_t index) {
  const std::uint64_t base = 2 * k;
  std::vector<Transition> table(2 * k);
  for (std::size_t j = table.size(); j-- > 0;) {
    const auto digit = index % base;
    index /= base;
    table[j] = Transition{static_cast<StateId>(digit / 2),
                          static_cast<Bit>(digit % 2)};
  }
  if (index != 0) throw std::out_of_range("machine index out of range");
  return MealyMachine(k, std::move(table));
}

std::uint64_t machine_index(const MealyMachine& machine) {
  const std::uint64_t base = 2 * machine.num_states();
  std::uint64_t index = 0;
  for (const auto& t : machine.table()) {
    index = index * base + 2 * std::uint64_t{t.next} + t.output;
  }
  return index;
}

namespace {

std::vector<Transition> relabeled_table(const MealyMachine& machine,
                                        std::span<const StateId> perm) {
  std::vector<Transition> table(machine.table().size());
  for (StateId s = 0; s < machine.num_states(); ++s) {
    for (Bit b : {Bit{0}, Bit{1}}) {
      const Transition& t = machine.entry(s, b);
      table[2 * std::size_t{perm[s]} + b] = Transition{perm[t.next], t.output};
    }
  }
  return table;
}

// Calls visit(perm) for every relabeling that sends the initial state to 0.
template <class Visit>
void for_each_rooted_relabeling(const MealyMachine& machine, Visit visit) {
  const std::size_t k = machine.num_states();
  const StateId root = machine.initial_state();
  std::vector<StateId> others;
  for (StateId s = 0; s < k; ++s) {
    if (s != root) others.push_back(s);
  }
  std::vector<StateId> perm(k);
  perm[root] = 0;
  do {
    for (std::size_t i = 0; i < others.size(); ++i) {
      perm[others[i]] = static_cast<StateId>(i + 1);
    }
    visit(std::span<const StateId>(perm));
  } while (std::next_permutation(others.begin(), others.end()));
}

}  // namespace

MealyMachine relabel(const MealyMachine& machine,
                     std::span<const StateId> perm) {
  const std::size_t k = machine.num_states();
  if (perm.size() != k) throw std::invalid_argument("permutation size mismatch");
  std::vector<bool> seen(k, false);
  for (const auto p : perm) {
    if (p >= k || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = true;
  }
  return MealyMachine(k, relabeled_table(machine, perm),
                      perm[machine.initial_state()]);
}

MealyMachine canonicalize(const MealyMachine& machine) {
  std::vector<Transition> best;
  for_each_rooted_relabeling(machine, [&](std::span<const StateId> perm) {
    auto table = relabeled_table(machine, perm);
    if (best.empty() || table < best) best = std::move(table);
  });
  return MealyMachine(machine.num_states(), std::move(best), 0);
}

bool is_canonical(const MealyMachine& machine) {
  if (machine.initial_state() != 0) return false;
  const auto own = machine.table();
  bool minimal = true;
  for_each_rooted_relabeling(machine, [&](std::span<const StateId> perm) {
    if (!minimal) return;
    const auto table = relabeled_table(machine, perm);
    if (std::lexicographical_compare(table.begin(), table.end(), own.begin(),
                                     own.end())) {
      minimal = false;
    }
  });
  return minimal;
}

std::uint64_t orbit_size(const MealyMachine& machine) {
  std::set<std::vector<Transition>> images;
  for_each_rooted_relabeling(machine, [&](std::span<const StateId> perm) {
    images.insert(relabeled_table(machine, perm));
  });
  return images.size();
}

bool is_strongly_connected(const MealyMachine& machine) {
  const std::size_t k = machine.num_states();
  std::vector<std::vector<StateId>> reverse(k);
  for (StateId s = 0; s < k; ++s) {
    for (Bit b : {Bit{0}, Bit{1}}) reverse[machine.entry(s, b).next].push_back(s);
  }
  auto covers_all = [k](auto&& neighbours) {
    std::vector<bool> seen(k, false);
    std::vector<StateId> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const StateId s = stack.back();
      stack.pop_back();
      for (const StateId n : neighbours(s)) {
        if (!seen[n]) {
          seen[n] = true;
          ++count;
          stack.push_back(n);
        }
      }
    }
    return count == k;
  };
  const bool forward = covers_all([&](StateId s) {
    return std::array<StateId, 2>{machine.entry(s, 0).next,
                                  machine.entry(s, 1).next};
  });
  return forward && covers_all([&](StateId s) -> const std::vector<StateId>& {
           return reverse[s];
         });
}

void check_enumeration_cap(std::size_t k, EnumerationMode mode,
                           const EnumerationCaps& caps) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  const std::size_t cap =
      mode == EnumerationMode::raw ? caps.raw : caps.canonical;
  if (k > cap) {
    std::string estimate;
    try {
      estimate = std::to_string(raw_machine_count(k));
    } catch (const CapExceededError&) {
      estimate = "more than 2^64";
    }
    throw CapExceededError("k = " + std::to_string(k) + " exceeds the " +
                           to_string(mode) + " enumeration cap of " +
                           std::to_string(cap) + " (raw space has " +
                           estimate + " machines)");
  }
  raw_machine_count(k);
}

MachineEnumerator::MachineEnumerator(std::size_t k, EnumerationMode mode,
                                     const EnumerationCaps& caps)
    : k_(k), mode_(mode) {
  check_enumeration_cap(k, mode, caps);
  end_ = raw_machine_count(k);
}

void MachineEnumerator::restrict_to(std::uint64_t begin, std::uint64_t end) {
  const std::uint64_t size = raw_machine_count(k_);
  if (begin > end || end > size) throw std::out_of_range("bad enumeration range");
  cursor_ = begin;
  end_ = end;
}

std::optional<MealyMachine> MachineEnumerator::next() {
  while (cursor_ < end_) {
    MealyMachine m = machine_from_index(k_, cursor_++);
    if (mode_ == EnumerationMode::raw) return m;
    if (!is_canonical(m)) continue;
    if (mode_ == EnumerationMode::strongly_connected &&
        !is_strongly_connected(m)) {
      continue;
    }
    return m;
  }
  return std::nullopt;
}

std::vector<MealyMachine> enumerate_machines(std::size_t k,
                                             EnumerationMode mode,
                                             const EnumerationCaps& caps) {
  MachineEnumerator it(k, mode, caps);
  std::vector<MealyMachine> out;
  while (auto m = it.next()) out.push_back(std::move(*m));
  return out;
}

std::uint64_t count_machines(std::size_t k, EnumerationMode mode,
                             const EnumerationCaps& caps) {
  if (mode == EnumerationMode::raw) {
    check_enumeration_cap(k, mode, caps);
    return raw_machine_count(k);
  }
  MachineEnumerator it(k, mode, caps);
  std::uint64_t n = 0;
  while (it.next()) ++n;
  return n;
}

}  // namespace mealypred
