// Nondeterministic finite transducers, their synchronisation languages, and
// bounded-enumeration oracles.

#ifndef RESYNC_TRANSDUCER_HPP
#define RESYNC_TRANSDUCER_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "resync/automata.hpp"
#include "resync/words.hpp"

namespace resync {

struct TransducerTransition {
  int src;
  Word input;   // possibly empty
  Word output;  // possibly empty
  int dst;

  bool operator==(const TransducerTransition&) const = default;
};

struct Transducer {
  Word alphabet;  // sorted letters
  int num_states = 0;
  std::vector<int> initial;
  std::vector<int> finals;
  std::vector<Word> final_output;  // indexed by state; meaningful on finals
  std::vector<TransducerTransition> transitions;

  int add_state() {
    final_output.emplace_back();
    return num_states++;
  }
  void add_transition(int src, Word in, Word out, int dst) {
    transitions.push_back({src, std::move(in), std::move(out), dst});
  }
  bool is_final(int q) const;
  // Largest output length over transitions and final outputs ("m_T").
  std::size_t max_output_len() const;
};

// Synchronisation language of T, as an automaton over the coloured alphabet.
// Adds a fresh sink as unique final state, reached by f(q)-labelled edges.
Nfa underlying_automaton(const Transducer& t);

// Nivat backward: a regular language over the coloured alphabet defines a
// rational transduction; input-coloured letters become (a, eps) transitions,
// output-coloured ones (eps, a).
Transducer from_sync_language(const Nfa& a);

Transducer trim(const Transducer& t);
// Input automaton of trim(t).
Nfa domain_automaton(const Transducer& t);

bool is_real_time(const Transducer& t);
// Deterministic input automaton, at most one initial state, at most one
// transition per (state, input letter), no epsilon-input transitions.
bool is_sequential(const Transducer& t);

// Relation-preserving conversion to single-letter inputs. Throws input_error
// when a productive epsilon-input cycle makes the relation non-real-time.
Transducer to_real_time(const Transducer& t);

// { v : (u,v) in R_T, |v| <= max_out_len }.
std::set<Word> enumerate_outputs(const Transducer& t, const Word& u,
                                 std::size_t max_out_len);

// Membership of (u, v) in R_T, via intersection of the synchronisation
// language with the shuffle automaton of the pair.
bool evaluate_pair(const Transducer& t, const Word& u, const Word& v);

// Disjoint union.
Transducer unite(const Transducer& t1, const Transducer& t2);

// Compares enumerate_outputs over every input of length <= n.  Output lengths
// are capped at n * (m_T + 1) + max final output, which covers every output
// either side can produce on such inputs unless an epsilon-input cycle is
// productive; the oracle is bounded by construction.
bool relation_equal_bounded(const Transducer& t1, const Transducer& t2, std::size_t n);

// The unique output of a sequential transducer on u, if u is in the domain.
std::optional<Word> run_sequential(const Transducer& t, const Word& u);

std::string to_dot(const Transducer& t, const std::string& name = "transducer");

}  // namespace resync

#endif  // RESYNC_TRANSDUCER_HPP
