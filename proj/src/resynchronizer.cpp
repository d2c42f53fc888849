#include "resync/resynchronizer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace resync {

Resynchronizer identity_resync(const Word& alphabet) {
  Alphabet sigma(alphabet);
  Transducer t;
  t.alphabet = colored_alphabet(sigma.letters);
  std::sort(t.alphabet.begin(), t.alphabet.end());
  int q = t.add_state();
  t.initial = {q};
  t.finals = {q};
  for (Letter a : sigma.letters) {
    t.add_transition(q, Word(1, in_letter(a)), Word(1, in_letter(a)), q);
    t.add_transition(q, Word(1, out_letter(a)), Word(1, out_letter(a)), q);
  }
  return {false, t};
}

Resynchronizer build_dk(const Word& alphabet, std::size_t k, const Limits& limits) {
  Alphabet sigma(alphabet);

  // States are the delays of absolute value at most k: the plain words track
  // how far ahead the source output is, the inverse words how far ahead the
  // emitted output is.
  std::vector<FreeGroupWord> states;
  states.push_back(FreeGroupWord());
  {
    std::vector<Word> layer{Word()};
    for (std::size_t len = 1; len <= k; ++len) {
      std::vector<Word> next_layer;
      for (const Word& w : layer)
        for (Letter a : sigma.letters) next_layer.push_back(w + a);
      for (const Word& w : next_layer) states.push_back(FreeGroupWord::from_word(w));
      layer = std::move(next_layer);
      if (states.size() > limits.max_states)
        throw cap_exceeded("k-delay resynchronizer exceeds the state cap");
    }
    std::size_t plain_count = states.size();
    for (std::size_t i = 1; i < plain_count; ++i)
      states.push_back(states[i].inverse());
    if (states.size() > limits.max_states)
      throw cap_exceeded("k-delay resynchronizer exceeds the state cap");
  }
  std::map<std::vector<SignedLetter>, int> id;
  for (std::size_t i = 0; i < states.size(); ++i)
    id[states[i].letters()] = static_cast<int>(i);

  Transducer t;
  t.alphabet = colored_alphabet(sigma.letters);
  std::sort(t.alphabet.begin(), t.alphabet.end());
  t.num_states = static_cast<int>(states.size());
  t.final_output.assign(t.num_states, Word());
  t.initial = {0};
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!states[i].is_plain()) continue;
    t.finals.push_back(static_cast<int>(i));
    t.final_output[i] = colored(states[i].letters_word(), true);
  }

  for (std::size_t ui = 0; ui < states.size(); ++ui) {
    const FreeGroupWord& u = states[ui];
    // Copy moves: input letters pass through and leave the delay unchanged.
    for (Letter a : sigma.letters)
      t.add_transition(static_cast<int>(ui), Word(1, in_letter(a)),
                       Word(1, in_letter(a)), static_cast<int>(ui));
    // Output moves: consume a source output letter x, emit a word v, and move
    // the delay to v^-1 u x.  Enumerating the target state makes v unique:
    // v^-1 = target . (u x)^-1 and v has to come out plain.
    for (Letter x : sigma.letters) {
      FreeGroupWord g = u.concat(FreeGroupWord::from_word(Word(1, x)));
      for (std::size_t ti = 0; ti < states.size(); ++ti) {
        FreeGroupWord h = states[ti].concat(g.inverse());
        if (!h.is_inverse()) continue;
        Word v = h.inverse().letters_word();
        t.add_transition(static_cast<int>(ui), Word(1, out_letter(x)),
                         colored(v, true), static_cast<int>(ti));
      }
    }
  }
  // Advance moves: the emitted word runs ahead without consuming anything,
  // moving the delay from u to v^-1 u.  From the initial state this is the
  // up-front advance by at most k letters; mid-word instances are needed as
  // well, e.g. when the emitted side re-orders a block across two input
  // letters while the consumed side is still ahead.
  for (std::size_t ui = 0; ui < states.size(); ++ui) {
    const FreeGroupWord& u = states[ui];
    for (std::size_t ti = 0; ti < states.size(); ++ti) {
      FreeGroupWord h = states[ti].concat(u.inverse());
      if (!h.is_inverse() || h.empty()) continue;
      Word v = h.inverse().letters_word();
      t.add_transition(static_cast<int>(ui), Word(), colored(v, true),
                       static_cast<int>(ti));
    }
  }
  return {false, t};
}

Nfa apply(const Resynchronizer& s, const Nfa& l, const Limits& limits) {
  if (s.universal) throw input_error("universal resynchronizer unsupported");
  const Transducer& c = s.carrier;
  Nfa dom = letterize(l);

  auto step_word = [&](const std::set<int>& from, const Word& w) {
    std::set<int> cur = from;
    for (char x : w) {
      std::set<int> nxt;
      for (const NfaTransition& tr : dom.transitions)
        if (tr.label[0] == x && cur.count(tr.src)) nxt.insert(tr.dst);
      cur = std::move(nxt);
      if (cur.empty()) break;
    }
    return cur;
  };

  Nfa img;
  img.alphabet = c.alphabet;
  for (char x : dom.alphabet)
    if (img.alphabet.find(x) == Word::npos) img.alphabet.push_back(x);
  std::sort(img.alphabet.begin(), img.alphabet.end());

  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> work;
  auto intern = [&](int qc, int ql) {
    auto [it, fresh] = ids.try_emplace({qc, ql}, img.num_states);
    if (fresh) {
      img.add_state();
      if (static_cast<std::size_t>(img.num_states) > limits.max_states)
        throw cap_exceeded("resynchronizer application exceeded the state cap");
      work.push_back({qc, ql});
    }
    return it->second;
  };
  int sink = img.add_state();
  img.finals = {sink};
  for (int qc : c.initial)
    for (int ql : dom.initial) img.initial.push_back(intern(qc, ql));
  while (!work.empty()) {
    auto [qc, ql] = work.front();
    work.pop_front();
    int src = ids[{qc, ql}];
    for (const TransducerTransition& tr : c.transitions) {
      if (tr.src != qc) continue;
      for (int ql2 : step_word({ql}, tr.input))
        img.add_transition(src, tr.output, intern(tr.dst, ql2));
    }
    if (c.is_final(qc) && dom.is_final(ql))
      img.add_transition(src, c.final_output[qc], sink);
  }
  return img;
}

InclusionResult s_included(const Transducer& t1, const Transducer& t2,
                           const Resynchronizer& s, const Limits& limits) {
  if (s.universal) throw input_error("universal resynchronizer unsupported");
  return includes(underlying_automaton(t1), apply(s, underlying_automaton(t2), limits),
                  limits);
}

bool s_equivalent(const Transducer& t1, const Transducer& t2,
                  const Resynchronizer& s, const Limits& limits) {
  return s_included(t1, t2, s, limits).included &&
         s_included(t2, t1, s, limits).included;
}

namespace {

Word joint_alphabet(const Transducer& t1, const Transducer& t2) {
  Word alpha = t1.alphabet;
  for (Letter x : t2.alphabet)
    if (alpha.find(x) == Word::npos) alpha.push_back(x);
  std::sort(alpha.begin(), alpha.end());
  return alpha;
}

}  // namespace

InclusionResult k_included(const Transducer& t1, const Transducer& t2,
                           std::size_t k, const Limits& limits) {
  return s_included(t1, t2, build_dk(joint_alphabet(t1, t2), k, limits), limits);
}

bool k_equivalent(const Transducer& t1, const Transducer& t2, std::size_t k,
                  const Limits& limits) {
  Resynchronizer dk = build_dk(joint_alphabet(t1, t2), k, limits);
  return s_included(t1, t2, dk, limits).included &&
         s_included(t2, t1, dk, limits).included;
}

BigInt inclusion_bound_k(const Transducer& t1, const Transducer& t2, unsigned m) {
  if (!is_real_time(t1) || !is_real_time(t2))
    throw input_error("inclusion_bound_k needs real-time transducers");
  BigInt big_m = static_cast<std::size_t>(
      std::max(t1.max_output_len(), t2.max_output_len()));
  BigInt q1 = t1.num_states;
  BigInt q2 = t2.num_states;
  BigInt d2 = t2.transitions.size();
  BigInt inner = boost::multiprecision::pow(d2 * q2, m);
  BigInt twoexp = boost::multiprecision::pow(BigInt(2),
      static_cast<unsigned>(t2.num_states * t2.transitions.size()));
  return 4 * big_m * q1 * (inner * twoexp + 1);
}

}  // namespace resync
