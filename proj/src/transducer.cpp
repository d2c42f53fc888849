#include "resync/transducer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

namespace resync {

bool Transducer::is_final(int q) const {
  return std::find(finals.begin(), finals.end(), q) != finals.end();
}

std::size_t Transducer::max_output_len() const {
  std::size_t m = 0;
  for (const TransducerTransition& t : transitions) m = std::max(m, t.output.size());
  for (int q : finals) m = std::max(m, final_output[q].size());
  return m;
}

Nfa underlying_automaton(const Transducer& t) {
  Nfa a;
  a.alphabet = colored_alphabet(t.alphabet);
  std::sort(a.alphabet.begin(), a.alphabet.end());
  a.num_states = t.num_states;
  int sink = a.add_state();
  a.initial = t.initial;
  a.finals = {sink};
  for (const TransducerTransition& tr : t.transitions)
    a.add_transition(tr.src, colored(tr.input, false) + colored(tr.output, true), tr.dst);
  for (int q : t.finals) a.add_transition(q, colored(t.final_output[q], true), sink);
  return a;
}

Transducer from_sync_language(const Nfa& a_in) {
  Nfa a = letterize(a_in);
  Transducer t;
  for (char c : a.alphabet) {
    Letter b = base_letter(c);
    if (t.alphabet.find(b) == Word::npos) t.alphabet.push_back(b);
  }
  std::sort(t.alphabet.begin(), t.alphabet.end());
  t.num_states = a.num_states;
  t.final_output.assign(a.num_states, Word());
  t.initial = a.initial;
  t.finals = a.finals;
  for (const NfaTransition& tr : a.transitions) {
    char c = tr.label[0];
    if (is_out(c))
      t.add_transition(tr.src, Word(), Word(1, base_letter(c)), tr.dst);
    else
      t.add_transition(tr.src, Word(1, c), Word(), tr.dst);
  }
  return t;
}

Transducer trim(const Transducer& t) {
  // Reuse the automaton trim on the transition graph.
  std::vector<bool> acc(t.num_states, false), coacc(t.num_states, false);
  std::deque<int> work(t.initial.begin(), t.initial.end());
  for (int q : t.initial) acc[q] = true;
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (const TransducerTransition& tr : t.transitions)
      if (tr.src == q && !acc[tr.dst]) {
        acc[tr.dst] = true;
        work.push_back(tr.dst);
      }
  }
  for (int q : t.finals)
    if (!coacc[q]) {
      coacc[q] = true;
      work.push_back(q);
    }
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (const TransducerTransition& tr : t.transitions)
      if (tr.dst == q && !coacc[tr.src]) {
        coacc[tr.src] = true;
        work.push_back(tr.src);
      }
  }
  Transducer b;
  b.alphabet = t.alphabet;
  std::vector<int> remap(t.num_states, -1);
  for (int q = 0; q < t.num_states; ++q)
    if (acc[q] && coacc[q]) remap[q] = b.add_state();
  for (int q : t.initial)
    if (remap[q] >= 0) b.initial.push_back(remap[q]);
  for (int q : t.finals)
    if (remap[q] >= 0) {
      b.finals.push_back(remap[q]);
      b.final_output[remap[q]] = t.final_output[q];
    }
  for (const TransducerTransition& tr : t.transitions)
    if (remap[tr.src] >= 0 && remap[tr.dst] >= 0)
      b.add_transition(remap[tr.src], tr.input, tr.output, remap[tr.dst]);
  return b;
}

Nfa domain_automaton(const Transducer& t_in) {
  Transducer t = trim(t_in);
  Nfa a;
  a.alphabet = t.alphabet;
  a.num_states = t.num_states;
  a.initial = t.initial;
  a.finals = t.finals;
  for (const TransducerTransition& tr : t.transitions)
    a.add_transition(tr.src, tr.input, tr.dst);
  return a;
}

bool is_real_time(const Transducer& t) {
  return std::all_of(t.transitions.begin(), t.transitions.end(),
                     [](const TransducerTransition& tr) { return tr.input.size() == 1; });
}

bool is_sequential(const Transducer& t) {
  if (t.initial.size() > 1) return false;
  std::set<std::pair<int, Letter>> seen;
  for (const TransducerTransition& tr : t.transitions) {
    if (tr.input.size() != 1) return false;
    if (!seen.insert({tr.src, tr.input[0]}).second) return false;
  }
  return true;
}

namespace {

std::vector<bool> reachable_states(const Transducer& t) {
  std::vector<bool> acc(t.num_states, false);
  std::deque<int> work(t.initial.begin(), t.initial.end());
  for (int q : t.initial) acc[q] = true;
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (const TransducerTransition& tr : t.transitions)
      if (tr.src == q && !acc[tr.dst]) {
        acc[tr.dst] = true;
        work.push_back(tr.dst);
      }
  }
  return acc;
}

// A productive epsilon-input cycle makes R(u) infinite for some u; the
// relation then has no real-time presentation.
void check_no_productive_epsilon_cycle(const Transducer& t) {
  std::vector<bool> acc = reachable_states(t);
  std::vector<std::vector<int>> eps(t.num_states);
  for (const TransducerTransition& tr : t.transitions)
    if (tr.input.empty()) eps[tr.src].push_back(tr.dst);
  auto eps_reaches = [&](int from, int to) {
    std::vector<bool> seen(t.num_states, false);
    std::deque<int> work{from};
    seen[from] = true;
    while (!work.empty()) {
      int q = work.front();
      work.pop_front();
      if (q == to) return true;
      for (int d : eps[q])
        if (!seen[d]) {
          seen[d] = true;
          work.push_back(d);
        }
    }
    return false;
  };
  for (const TransducerTransition& tr : t.transitions)
    if (tr.input.empty() && !tr.output.empty() && acc[tr.src] &&
        eps_reaches(tr.dst, tr.src))
      throw input_error("not real-time convertible: productive epsilon-input cycle");
}

// All (state, accumulated output) pairs reachable from q through
// epsilon-input transitions. Finite once productive cycles are excluded.
std::vector<std::pair<int, Word>> epsilon_output_closure(const Transducer& t, int q) {
  std::vector<std::vector<std::pair<int, Word>>> eps(t.num_states);
  for (const TransducerTransition& tr : t.transitions)
    if (tr.input.empty()) eps[tr.src].push_back({tr.dst, tr.output});
  std::vector<std::pair<int, Word>> out;
  std::set<std::pair<int, Word>> seen;
  std::deque<std::pair<int, Word>> work{{q, Word()}};
  while (!work.empty()) {
    auto [s, w] = work.front();
    work.pop_front();
    if (!seen.insert({s, w}).second) continue;
    out.push_back({s, w});
    for (auto& [d, o] : eps[s]) work.push_back({d, w + o});
  }
  return out;
}

}  // namespace

Transducer to_real_time(const Transducer& t_in) {
  check_no_productive_epsilon_cycle(t_in);
  // Phase 1: split inputs to length <= 1, output carried by the first piece.
  Transducer t;
  t.alphabet = t_in.alphabet;
  t.num_states = t_in.num_states;
  t.final_output = t_in.final_output;
  t.initial = t_in.initial;
  t.finals = t_in.finals;
  for (const TransducerTransition& tr : t_in.transitions) {
    if (tr.input.size() <= 1) {
      t.transitions.push_back(tr);
      continue;
    }
    int prev = tr.src;
    for (std::size_t i = 0; i + 1 < tr.input.size(); ++i) {
      int mid = t.add_state();
      t.add_transition(prev, Word(1, tr.input[i]), i == 0 ? tr.output : Word(), mid);
      prev = mid;
    }
    t.add_transition(prev, Word(1, tr.input.back()), Word(), tr.dst);
  }

  // Phase 2: fold epsilon-input transitions into letter steps.
  Transducer r;
  r.alphabet = t.alphabet;
  r.num_states = t.num_states;
  r.final_output = t.final_output;
  r.finals = t.finals;
  std::vector<std::vector<std::pair<int, Word>>> cls(t.num_states);
  for (int q = 0; q < t.num_states; ++q) cls[q] = epsilon_output_closure(t, q);

  std::set<std::tuple<int, Word, Word, int>> added;
  for (int q = 0; q < t.num_states; ++q) {
    for (auto& [mid, w1] : cls[q]) {
      for (const TransducerTransition& tr : t.transitions) {
        if (tr.src != mid || tr.input.empty()) continue;
        for (auto& [dst, w2] : cls[tr.dst]) {
          Word out = w1 + tr.output + w2;
          if (added.insert({q, tr.input, out, dst}).second)
            r.add_transition(q, tr.input, out, dst);
        }
      }
    }
  }
  // A final state reachable from an initial one without reading input gives an
  // output for the empty word; real-time transducers express those through
  // fresh initial+final states carrying the word as final output.
  std::set<Word> eps_outputs;
  for (int q0 : t.initial) {
    r.initial.push_back(q0);
    for (auto& [qf, w] : cls[q0])
      if (t.is_final(qf)) eps_outputs.insert(w + t.final_output[qf]);
  }
  for (const Word& w : eps_outputs) {
    int fresh = r.add_state();
    r.initial.push_back(fresh);
    r.finals.push_back(fresh);
    r.final_output[fresh] = w;
  }
  return r;
}

std::set<Word> enumerate_outputs(const Transducer& t, const Word& u,
                                 std::size_t max_out_len) {
  std::set<Word> result;
  std::set<std::tuple<int, std::size_t, Word>> seen;
  std::deque<std::tuple<int, std::size_t, Word>> work;
  for (int q : t.initial) work.push_back({q, 0, Word()});
  while (!work.empty()) {
    auto [q, pos, out] = work.front();
    work.pop_front();
    if (out.size() > max_out_len) continue;
    if (!seen.insert({q, pos, out}).second) continue;
    if (pos == u.size() && t.is_final(q)) {
      Word v = out + t.final_output[q];
      if (v.size() <= max_out_len) result.insert(v);
    }
    for (const TransducerTransition& tr : t.transitions) {
      if (tr.src != q) continue;
      if (u.compare(pos, tr.input.size(), tr.input) != 0) continue;
      if (pos + tr.input.size() > u.size()) continue;
      work.push_back({tr.dst, pos + tr.input.size(), out + tr.output});
    }
  }
  return result;
}

bool evaluate_pair(const Transducer& t, const Word& u, const Word& v) {
  // Shuffle automaton of (u, v) over the coloured alphabet.
  Nfa sh;
  sh.alphabet = colored_alphabet(t.alphabet);
  std::sort(sh.alphabet.begin(), sh.alphabet.end());
  auto id = [&](std::size_t i, std::size_t j) {
    return static_cast<int>(i * (v.size() + 1) + j);
  };
  sh.num_states = static_cast<int>((u.size() + 1) * (v.size() + 1));
  sh.initial = {id(0, 0)};
  sh.finals = {id(u.size(), v.size())};
  for (std::size_t i = 0; i <= u.size(); ++i)
    for (std::size_t j = 0; j <= v.size(); ++j) {
      if (i < u.size()) sh.add_transition(id(i, j), Word(1, in_letter(u[i])), id(i + 1, j));
      if (j < v.size()) sh.add_transition(id(i, j), Word(1, out_letter(v[j])), id(i, j + 1));
    }
  return !is_empty(intersect(underlying_automaton(t), sh));
}

Transducer unite(const Transducer& t1, const Transducer& t2) {
  Transducer u;
  u.alphabet = t1.alphabet;
  for (Letter x : t2.alphabet)
    if (u.alphabet.find(x) == Word::npos) u.alphabet.push_back(x);
  std::sort(u.alphabet.begin(), u.alphabet.end());
  u.num_states = t1.num_states + t2.num_states;
  u.initial = t1.initial;
  u.finals = t1.finals;
  u.final_output = t1.final_output;
  u.final_output.resize(u.num_states);
  u.transitions = t1.transitions;
  int off = t1.num_states;
  for (int q : t2.initial) u.initial.push_back(q + off);
  for (int q : t2.finals) {
    u.finals.push_back(q + off);
    u.final_output[q + off] = t2.final_output[q];
  }
  for (const TransducerTransition& tr : t2.transitions)
    u.add_transition(tr.src + off, tr.input, tr.output, tr.dst + off);
  return u;
}

namespace {

std::vector<Word> all_words(const Word& alphabet, std::size_t max_len) {
  std::vector<Word> out{Word()};
  std::vector<Word> layer{Word()};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next_layer;
    for (const Word& w : layer)
      for (Letter a : alphabet) {
        next_layer.push_back(w + a);
        out.push_back(w + a);
      }
    layer = std::move(next_layer);
  }
  return out;
}

}  // namespace

bool relation_equal_bounded(const Transducer& t1, const Transducer& t2, std::size_t n) {
  Word alpha = t1.alphabet;
  for (Letter x : t2.alphabet)
    if (alpha.find(x) == Word::npos) alpha.push_back(x);
  std::sort(alpha.begin(), alpha.end());
  std::size_t m = std::max(t1.max_output_len(), t2.max_output_len());
  std::size_t cap = n * (m + 1) + m;
  for (const Word& u : all_words(alpha, n))
    if (enumerate_outputs(t1, u, cap) != enumerate_outputs(t2, u, cap)) return false;
  return true;
}

std::optional<Word> run_sequential(const Transducer& t, const Word& u) {
  if (!is_sequential(t)) throw input_error("transducer is not sequential");
  if (t.initial.empty()) return std::nullopt;
  int q = t.initial[0];
  Word out;
  for (Letter a : u) {
    const TransducerTransition* step = nullptr;
    for (const TransducerTransition& tr : t.transitions)
      if (tr.src == q && tr.input.size() == 1 && tr.input[0] == a) {
        step = &tr;
        break;
      }
    if (!step) return std::nullopt;
    out += step->output;
    q = step->dst;
  }
  if (!t.is_final(q)) return std::nullopt;
  return out + t.final_output[q];
}

std::string to_dot(const Transducer& t, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n";
  for (int q : t.initial) os << "  i" << q << " [shape=point]; i" << q << " -> " << q << ";\n";
  for (int q = 0; q < t.num_states; ++q) {
    os << "  " << q << " [shape=" << (t.is_final(q) ? "doublecircle" : "circle");
    if (t.is_final(q) && !t.final_output[q].empty())
      os << ",xlabel=\"" << t.final_output[q] << "\"";
    os << "];\n";
  }
  for (const TransducerTransition& tr : t.transitions)
    os << "  " << tr.src << " -> " << tr.dst << " [label=\""
       << (tr.input.empty() ? "eps" : tr.input) << " | "
       << (tr.output.empty() ? "eps" : tr.output) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace resync
