// Finite automata over arbitrary (possibly coloured) alphabets, plus the
// Boolean and structural algorithms the deciders are built from.

#ifndef RESYNC_AUTOMATA_HPP
#define RESYNC_AUTOMATA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resync/words.hpp"

namespace resync {

struct NfaTransition {
  int src;
  Word label;  // possibly empty (epsilon) or several letters long
  int dst;

  bool operator==(const NfaTransition&) const = default;
};

struct Nfa {
  Word alphabet;  // sorted letters
  int num_states = 0;
  std::vector<int> initial;
  std::vector<int> finals;
  std::vector<NfaTransition> transitions;

  int add_state() { return num_states++; }
  void add_transition(int src, Word label, int dst) {
    transitions.push_back({src, std::move(label), dst});
  }
  bool is_final(int q) const;
};

// Complete DFA: exactly one successor per (state, letter).
struct Dfa {
  Word alphabet;
  int num_states = 0;
  int initial = 0;
  std::vector<bool> finals;
  std::vector<std::vector<int>> next;  // next[state][letter index]

  std::size_t letter_index(Letter a) const;
  int step(int q, Letter a) const { return next[q][letter_index(a)]; }
  int run(const Word& w) const;
  bool accepts_word(const Word& w) const;
};

// Single-letter labels only, no epsilon transitions; language preserved.
Nfa letterize(const Nfa& a);

// Subset construction on a letterized automaton; the result is complete.
// Throws cap_exceeded past limits.max_states.
Dfa determinize(const Nfa& a, const Limits& limits = {});

Dfa complement(const Dfa& d);
Nfa to_nfa(const Dfa& d);

// Product construction over the shared alphabet.
Nfa intersect(const Nfa& a, const Nfa& b, const Limits& limits = {});
// Disjoint union.
Nfa unite(const Nfa& a, const Nfa& b);

struct InclusionResult {
  bool included = false;
  std::optional<Word> counterexample;  // in L(a) \ L(b) when !included
};

// L(a) <= L(b), via emptiness of a n complement(det(b)).
InclusionResult includes(const Nfa& a, const Nfa& b, const Limits& limits = {});

bool is_empty(const Nfa& a);
// Restriction to accessible and co-accessible states.
Nfa trim(const Nfa& a);
// Minimum-length member, breadth-first, ties broken by letter order.
std::optional<Word> shortest_accepted(const Nfa& a);
bool accepts(const Nfa& a, const Word& w);

// Number of distinct accepting runs on w; requires a letterized automaton.
std::uint64_t count_accepting_runs(const Nfa& a, const Word& w);

// All accepted words of length <= max_len, in length-lexicographic order.
std::vector<Word> enumerate_language(const Nfa& a, std::size_t max_len);

// Singleton-language automaton.
Nfa single_word_nfa(const Word& alphabet, const Word& w);

std::string to_dot(const Nfa& a, const std::string& name = "nfa");

}  // namespace resync

#endif  // RESYNC_AUTOMATA_HPP
