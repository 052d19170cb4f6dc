#include "mealypred/machine_format.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "mealypred/errors.hpp"

namespace mealypred {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::uint64_t parse_number(std::string_view token, std::size_t line,
                           const char* what) {
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, std::string("expected ") + what + ", got '" +
                               std::string(token) + "'");
  }
  return value;
}

Bit parse_bit(std::string_view token, std::size_t line, const char* what) {
  if (token == "0") return 0;
  if (token == "1") return 1;
  throw ParseError(line, std::string(what) + " must be 0 or 1, got '" +
                             std::string(token) + "'");
}

std::string pair_name(std::uint64_t state, unsigned input) {
  return "(state " + std::to_string(state) + ", input " +
         std::to_string(input) + ")";
}

}  // namespace

MealyMachine parse_machine(std::string_view text) {
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> initial;
  std::vector<Transition> table;
  std::vector<std::size_t> defined_on;  // 0 = not yet defined

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    const auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().front() == '#') {
      if (eol == text.size()) break;
      continue;
    }

    if (!k) {
      if (tokens.size() != 2 || tokens[0] != "mealy") {
        throw ParseError(line_no, "expected header 'mealy <k>'");
      }
      k = parse_number(tokens[1], line_no, "state count");
      if (*k == 0) throw ParseError(line_no, "state count must be positive");
      if (*k > std::numeric_limits<StateId>::max() / 2) {
        throw ParseError(line_no, "state count too large");
      }
      table.assign(2 * *k, Transition{0, 0});
      defined_on.assign(2 * *k, 0);
    } else if (!initial) {
      if (tokens.size() != 2 || tokens[0] != "initial") {
        throw ParseError(line_no, "expected 'initial <state>'");
      }
      initial = parse_number(tokens[1], line_no, "initial state");
      if (*initial >= *k) {
        throw ParseError(line_no, "initial state " + std::to_string(*initial) +
                                      " out of range [0, " +
                                      std::to_string(*k) + ")");
      }
    } else {
      if (tokens.size() != 5 || tokens[2] != "->") {
        throw ParseError(line_no,
                         "expected '<state> <input-bit> -> <next-state> "
                         "<output-bit>'");
      }
      const std::uint64_t state = parse_number(tokens[0], line_no, "state");
      const Bit input = parse_bit(tokens[1], line_no, "input bit");
      const std::uint64_t next = parse_number(tokens[3], line_no, "next state");
      const Bit output = parse_bit(tokens[4], line_no, "output bit");
      if (state >= *k) {
        throw ParseError(line_no, "state " + std::to_string(state) +
                                      " out of range [0, " +
                                      std::to_string(*k) + ")");
      }
      if (next >= *k) {
        throw ParseError(line_no, "target state " + std::to_string(next) +
                                      " out of range [0, " +
                                      std::to_string(*k) + ")");
      }
      const std::size_t slot = 2 * state + input;
      if (defined_on[slot] != 0) {
        throw ParseError(line_no, "duplicate entry for " +
                                      pair_name(state, input) +
                                      " (first defined on line " +
                                      std::to_string(defined_on[slot]) + ")");
      }
      defined_on[slot] = line_no;
      table[slot] = Transition{static_cast<StateId>(next), output};
    }
    if (eol == text.size()) break;
  }

  if (!k) throw ParseError(0, "missing header 'mealy <k>'");
  if (!initial) throw ParseError(0, "missing 'initial <state>' line");
  for (std::size_t slot = 0; slot < defined_on.size(); ++slot) {
    if (defined_on[slot] == 0) {
      throw ParseError(0, "missing transition entry for " +
                              pair_name(slot / 2, static_cast<unsigned>(slot % 2)));
    }
  }
  return MealyMachine(*k, std::move(table), static_cast<StateId>(*initial));
}

std::string serialize_machine(const MealyMachine& machine) {
  std::string out;
  out.reserve(32 + 16 * machine.table().size());
  out += "mealy " + std::to_string(machine.num_states()) + "\n";
  out += "initial " + std::to_string(machine.initial_state()) + "\n";
  for (StateId s = 0; s < machine.num_states(); ++s) {
    for (Bit b : {Bit{0}, Bit{1}}) {
      const Transition& t = machine.entry(s, b);
      out += std::to_string(s);
      out += b ? " 1 -> " : " 0 -> ";
      out += std::to_string(t.next);
      out += t.output ? " 1\n" : " 0\n";
    }
  }
  return out;
}

std::string machine_id(const MealyMachine& machine) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const unsigned char c : serialize_machine(machine)) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

MealyMachine load_machine_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open machine file '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return parse_machine(text);
  } catch (const ParseError& e) {
    throw e.with_source(path);
  }
}

}  // namespace mealypred
