// Shared builders and random generators for the test suites.

#ifndef RESYNC_TESTS_SUPPORT_HPP
#define RESYNC_TESTS_SUPPORT_HPP

#include <random>
#include <string>

#include "resync/drat.hpp"
#include "resync/textio.hpp"
#include "resync/transducer.hpp"

namespace resync::testing {

inline std::string data_path(const std::string& file) {
  return std::string(RESYNC_DATA_DIR) + "/" + file;
}

inline Transducer fig_t1() { return parse_path(data_path("t1.tr")).transducer(); }
inline Transducer fig_t2() { return parse_path(data_path("t2.tr")).transducer(); }
inline Transducer fig_t() { return parse_path(data_path("t.tr")).transducer(); }
inline Transducer fig_u() { return parse_path(data_path("u.tr")).transducer(); }
inline DetTransducer fig_r1() { return parse_path(data_path("r1.dtr")).drat(); }

using Rng = std::mt19937;

inline Word random_word(Rng& rng, const Word& alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  Word w;
  for (std::size_t i = len(rng); i > 0; --i) w.push_back(alphabet[pick(rng)]);
  return w;
}

inline SyncWord random_sync_word(Rng& rng, const Word& alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  SyncWord w;
  for (std::size_t i = len(rng); i > 0; --i) {
    Letter a = alphabet[pick(rng)];
    w.push_back(coin(rng) ? out_letter(a) : in_letter(a));
  }
  return w;
}

// A sync word ~io-equivalent to w, built by shuffling the two tracks.
inline SyncWord random_equivalent(Rng& rng, const SyncWord& w) {
  Word in = project(w, false);
  Word out = project(w, true);
  SyncWord r;
  std::size_t i = 0, j = 0;
  std::uniform_int_distribution<int> coin(0, 1);
  while (i < in.size() || j < out.size()) {
    bool take_out = j < out.size() && (i == in.size() || coin(rng));
    if (take_out)
      r.push_back(out_letter(out[j++]));
    else
      r.push_back(in_letter(in[i++]));
  }
  return r;
}

inline Nfa random_nfa(Rng& rng, const Word& alphabet, int states, int num_trans) {
  Nfa a;
  a.alphabet = alphabet;
  a.num_states = states;
  std::uniform_int_distribution<int> st(0, states - 1);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  a.initial = {st(rng)};
  a.finals = {st(rng)};
  for (int i = 0; i < num_trans; ++i)
    a.add_transition(st(rng), Word(1, alphabet[pick(rng)]), st(rng));
  return a;
}

inline Transducer random_transducer(Rng& rng, const Word& alphabet, int states,
                                    int num_trans, std::size_t max_out) {
  Transducer t;
  t.alphabet = alphabet;
  for (int i = 0; i < states; ++i) t.add_state();
  std::uniform_int_distribution<int> st(0, states - 1);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  t.initial = {st(rng)};
  t.finals = {st(rng)};
  for (int i = 0; i < num_trans; ++i)
    t.add_transition(st(rng), Word(1, alphabet[pick(rng)]),
                     random_word(rng, alphabet, max_out), st(rng));
  return t;
}

// Disjoint union of sequential pieces: trim union of unambiguous components.
inline Transducer random_union_of_unambiguous(Rng& rng, const Word& alphabet,
                                              int pieces, int states_per_piece,
                                              std::size_t max_out) {
  Transducer u;
  u.alphabet = alphabet;
  for (int p = 0; p < pieces; ++p) {
    Transducer t;
    t.alphabet = alphabet;
    for (int i = 0; i < states_per_piece; ++i) t.add_state();
    std::uniform_int_distribution<int> st(0, states_per_piece - 1);
    t.initial = {0};
    t.finals = {st(rng)};
    // At most one transition per (state, letter) keeps each piece unambiguous.
    std::uniform_int_distribution<int> coin(0, 2);
    for (int q = 0; q < states_per_piece; ++q)
      for (Letter a : alphabet)
        if (coin(rng) != 0)
          t.add_transition(q, Word(1, a), random_word(rng, alphabet, max_out), st(rng));
    u = p == 0 ? t : unite(u, t);
  }
  return trim(u);
}

inline DetTransducer random_det_transducer(Rng& rng, const Word& alphabet, int states) {
  DetTransducer t;
  t.alphabet = alphabet;
  std::sort(t.alphabet.begin(), t.alphabet.end());
  t.num_states = states;
  std::uniform_int_distribution<int> st(0, states - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int q = 0; q < states; ++q) {
    t.input_state.push_back(coin(rng) != 0);
    t.finals.push_back(coin(rng) == 0 && coin(rng) == 0);
    t.next.emplace_back();
    for (std::size_t i = 0; i < t.ext_size(); ++i) t.next.back().push_back(st(rng));
  }
  t.initial = st(rng);
  if (std::none_of(t.input_state.begin(), t.input_state.end(), [](bool b) { return b; }))
    t.input_state[0] = true;
  return t;
}

inline std::vector<Word> words_up_to(const Word& alphabet, std::size_t max_len) {
  std::vector<Word> out{Word()};
  std::size_t layer_start = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t layer_end = out.size();
    for (std::size_t i = layer_start; i < layer_end; ++i)
      for (Letter a : alphabet) out.push_back(out[i] + a);
    layer_start = layer_end;
  }
  return out;
}

}  // namespace resync::testing

#endif  // RESYNC_TESTS_SUPPORT_HPP
