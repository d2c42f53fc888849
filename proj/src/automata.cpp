#include "resync/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace resync {

namespace {

void check_endpoints(const Nfa& a) {
  for (const NfaTransition& t : a.transitions)
    if (t.src < 0 || t.src >= a.num_states || t.dst < 0 || t.dst >= a.num_states)
      throw input_error("transition endpoint is not a declared state");
}

// Epsilon closure of a sorted state set, returned sorted.
std::vector<int> closure(const std::vector<std::vector<int>>& eps, std::vector<int> set) {
  std::vector<bool> seen(eps.size(), false);
  std::deque<int> work(set.begin(), set.end());
  for (int q : set) seen[q] = true;
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (int r : eps[q])
      if (!seen[r]) {
        seen[r] = true;
        set.push_back(r);
        work.push_back(r);
      }
  }
  std::sort(set.begin(), set.end());
  return set;
}

}  // namespace

bool Nfa::is_final(int q) const {
  return std::find(finals.begin(), finals.end(), q) != finals.end();
}

std::size_t Dfa::letter_index(Letter a) const {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), a);
  if (it == alphabet.end() || *it != a)
    throw input_error(std::string("letter not in alphabet: ") + a);
  return static_cast<std::size_t>(it - alphabet.begin());
}

int Dfa::run(const Word& w) const {
  int q = initial;
  for (Letter a : w) q = step(q, a);
  return q;
}

bool Dfa::accepts_word(const Word& w) const { return finals[run(w)]; }

Nfa letterize(const Nfa& a) {
  check_endpoints(a);
  Nfa b;
  b.alphabet = a.alphabet;
  b.num_states = a.num_states;
  b.initial = a.initial;
  std::vector<NfaTransition> eps;
  for (const NfaTransition& t : a.transitions) {
    if (t.label.size() <= 1) {
      if (t.label.empty())
        eps.push_back(t);
      else
        b.transitions.push_back(t);
      continue;
    }
    int prev = t.src;
    for (std::size_t i = 0; i + 1 < t.label.size(); ++i) {
      int mid = b.add_state();
      b.add_transition(prev, Word(1, t.label[i]), mid);
      prev = mid;
    }
    b.add_transition(prev, Word(1, t.label.back()), t.dst);
  }
  // Remove epsilon transitions via closures.
  Nfa c;
  c.alphabet = b.alphabet;
  c.num_states = b.num_states;
  std::vector<std::vector<int>> eps_succ(b.num_states);
  for (const NfaTransition& t : eps) eps_succ[t.src].push_back(t.dst);
  std::vector<std::vector<int>> cls(b.num_states);
  for (int q = 0; q < b.num_states; ++q) cls[q] = closure(eps_succ, {q});
  std::set<std::tuple<int, Word, int>> added;
  for (int q = 0; q < b.num_states; ++q)
    for (int r : cls[q])
      for (const NfaTransition& t : b.transitions)
        if (t.src == r && added.insert({q, t.label, t.dst}).second)
          c.add_transition(q, t.label, t.dst);
  c.initial = b.initial;
  std::set<int> fin(a.finals.begin(), a.finals.end());
  for (int q = 0; q < b.num_states; ++q)
    for (int r : cls[q])
      if (fin.count(r)) {
        c.finals.push_back(q);
        break;
      }
  std::sort(c.finals.begin(), c.finals.end());
  return c;
}

Dfa determinize(const Nfa& input, const Limits& limits) {
  Nfa a = letterize(input);
  Dfa d;
  d.alphabet = a.alphabet;
  std::sort(d.alphabet.begin(), d.alphabet.end());

  // letter -> (src -> dsts)
  std::map<Letter, std::vector<std::vector<int>>> step;
  for (Letter x : d.alphabet) step[x].assign(a.num_states, {});
  for (const NfaTransition& t : a.transitions) step[t.label[0]][t.src].push_back(t.dst);

  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> subsets;
  auto intern = [&](std::vector<int> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto [it, fresh] = ids.try_emplace(s, static_cast<int>(subsets.size()));
    if (fresh) {
      subsets.push_back(s);
      if (subsets.size() > limits.max_states)
        throw cap_exceeded("determinization exceeded the state cap");
    }
    return it->second;
  };

  std::vector<int> init = a.initial;
  d.initial = intern(init);
  std::deque<int> work{d.initial};
  std::vector<bool> queued(1, true);
  std::set<int> fin(a.finals.begin(), a.finals.end());
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    if (static_cast<std::size_t>(id) >= d.next.size()) d.next.resize(id + 1);
    d.next[id].assign(d.alphabet.size(), -1);
    std::vector<int> cur = subsets[id];
    for (std::size_t xi = 0; xi < d.alphabet.size(); ++xi) {
      std::vector<int> nxt;
      for (int q : cur) {
        const std::vector<int>& ds = step[d.alphabet[xi]][q];
        nxt.insert(nxt.end(), ds.begin(), ds.end());
      }
      int nid = intern(std::move(nxt));
      d.next[id][xi] = nid;
      if (static_cast<std::size_t>(nid) >= queued.size()) queued.resize(nid + 1, false);
      if (!queued[nid]) {
        queued[nid] = true;
        work.push_back(nid);
      }
    }
  }
  d.num_states = static_cast<int>(subsets.size());
  d.next.resize(d.num_states);
  d.finals.assign(d.num_states, false);
  for (int id = 0; id < d.num_states; ++id)
    for (int q : subsets[id])
      if (fin.count(q)) {
        d.finals[id] = true;
        break;
      }
  return d;
}

Dfa complement(const Dfa& d) {
  Dfa c = d;
  for (std::size_t i = 0; i < c.finals.size(); ++i) c.finals[i] = !c.finals[i];
  return c;
}

Nfa to_nfa(const Dfa& d) {
  Nfa a;
  a.alphabet = d.alphabet;
  a.num_states = d.num_states;
  a.initial = {d.initial};
  for (int q = 0; q < d.num_states; ++q) {
    if (d.finals[q]) a.finals.push_back(q);
    for (std::size_t xi = 0; xi < d.alphabet.size(); ++xi)
      a.add_transition(q, Word(1, d.alphabet[xi]), d.next[q][xi]);
  }
  return a;
}

Nfa intersect(const Nfa& a_in, const Nfa& b_in, const Limits& limits) {
  Nfa a = letterize(a_in);
  Nfa b = letterize(b_in);
  Word alpha = a.alphabet;
  for (Letter x : b.alphabet)
    if (alpha.find(x) == Word::npos) alpha.push_back(x);
  std::sort(alpha.begin(), alpha.end());

  Nfa p;
  p.alphabet = alpha;
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> work;
  auto intern = [&](int qa, int qb) {
    auto [it, fresh] = ids.try_emplace({qa, qb}, p.num_states);
    if (fresh) {
      p.add_state();
      if (static_cast<std::size_t>(p.num_states) > limits.max_states)
        throw cap_exceeded("product exceeded the state cap");
      work.push_back({qa, qb});
    }
    return it->second;
  };
  for (int qa : a.initial)
    for (int qb : b.initial) p.initial.push_back(intern(qa, qb));
  while (!work.empty()) {
    auto [qa, qb] = work.front();
    work.pop_front();
    int src = ids[{qa, qb}];
    if (a.is_final(qa) && b.is_final(qb)) p.finals.push_back(src);
    for (const NfaTransition& ta : a.transitions) {
      if (ta.src != qa) continue;
      for (const NfaTransition& tb : b.transitions) {
        if (tb.src != qb || tb.label != ta.label) continue;
        p.add_transition(src, ta.label, intern(ta.dst, tb.dst));
      }
    }
  }
  std::sort(p.finals.begin(), p.finals.end());
  p.finals.erase(std::unique(p.finals.begin(), p.finals.end()), p.finals.end());
  return p;
}

Nfa unite(const Nfa& a, const Nfa& b) {
  Nfa u;
  u.alphabet = a.alphabet;
  for (Letter x : b.alphabet)
    if (u.alphabet.find(x) == Word::npos) u.alphabet.push_back(x);
  std::sort(u.alphabet.begin(), u.alphabet.end());
  u.num_states = a.num_states + b.num_states;
  u.initial = a.initial;
  u.finals = a.finals;
  u.transitions = a.transitions;
  int off = a.num_states;
  for (int q : b.initial) u.initial.push_back(q + off);
  for (int q : b.finals) u.finals.push_back(q + off);
  for (const NfaTransition& t : b.transitions)
    u.add_transition(t.src + off, t.label, t.dst + off);
  return u;
}

InclusionResult includes(const Nfa& a, const Nfa& b, const Limits& limits) {
  Dfa db = determinize(b, limits);
  // Extend the complement to cover letters of a that b never mentions.
  Word alpha = db.alphabet;
  for (Letter x : a.alphabet)
    if (alpha.find(x) == Word::npos) alpha.push_back(x);
  std::sort(alpha.begin(), alpha.end());
  if (alpha != db.alphabet) {
    Dfa ext;
    ext.alphabet = alpha;
    ext.num_states = db.num_states + 1;  // extra dead state
    ext.initial = db.initial;
    ext.finals = db.finals;
    ext.finals.push_back(false);
    int dead = db.num_states;
    ext.next.assign(ext.num_states, std::vector<int>(alpha.size(), dead));
    for (int q = 0; q < db.num_states; ++q)
      for (std::size_t xi = 0; xi < db.alphabet.size(); ++xi)
        ext.next[q][ext.letter_index(db.alphabet[xi])] = db.next[q][xi];
    db = ext;
  }
  Nfa diff = intersect(a, to_nfa(complement(db)), limits);
  std::optional<Word> witness = shortest_accepted(diff);
  if (!witness) return {true, std::nullopt};
  return {false, witness};
}

bool is_empty(const Nfa& a) { return !shortest_accepted(a).has_value(); }

Nfa trim(const Nfa& a_in) {
  Nfa a = a_in;
  check_endpoints(a);
  std::vector<bool> acc(a.num_states, false), coacc(a.num_states, false);
  std::deque<int> work(a.initial.begin(), a.initial.end());
  for (int q : a.initial) acc[q] = true;
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (const NfaTransition& t : a.transitions)
      if (t.src == q && !acc[t.dst]) {
        acc[t.dst] = true;
        work.push_back(t.dst);
      }
  }
  for (int q : a.finals)
    if (!coacc[q]) {
      coacc[q] = true;
      work.push_back(q);
    }
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (const NfaTransition& t : a.transitions)
      if (t.dst == q && !coacc[t.src]) {
        coacc[t.src] = true;
        work.push_back(t.src);
      }
  }
  std::vector<int> remap(a.num_states, -1);
  Nfa b;
  b.alphabet = a.alphabet;
  for (int q = 0; q < a.num_states; ++q)
    if (acc[q] && coacc[q]) remap[q] = b.add_state();
  for (int q : a.initial)
    if (remap[q] >= 0) b.initial.push_back(remap[q]);
  for (int q : a.finals)
    if (remap[q] >= 0) b.finals.push_back(remap[q]);
  for (const NfaTransition& t : a.transitions)
    if (remap[t.src] >= 0 && remap[t.dst] >= 0)
      b.add_transition(remap[t.src], t.label, remap[t.dst]);
  return b;
}

std::optional<Word> shortest_accepted(const Nfa& a_in) {
  Nfa a = letterize(a_in);
  // BFS over subsets would lose run structure; BFS over states suffices for a
  // shortest word, expanding letters in alphabet order for deterministic ties.
  std::vector<std::optional<Word>> label(a.num_states);
  std::deque<int> work;
  for (int q : a.initial) {
    if (!label[q]) {
      label[q] = Word();
      work.push_back(q);
    }
  }
  Word alpha = a.alphabet;
  std::sort(alpha.begin(), alpha.end());
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    if (a.is_final(q)) return label[q];
    for (Letter x : alpha)
      for (const NfaTransition& t : a.transitions)
        if (t.src == q && t.label[0] == x && !label[t.dst]) {
          label[t.dst] = *label[q] + x;
          work.push_back(t.dst);
        }
  }
  return std::nullopt;
}

bool accepts(const Nfa& a_in, const Word& w) {
  Nfa a = letterize(a_in);
  std::set<int> cur(a.initial.begin(), a.initial.end());
  for (Letter x : w) {
    std::set<int> nxt;
    for (const NfaTransition& t : a.transitions)
      if (t.label[0] == x && cur.count(t.src)) nxt.insert(t.dst);
    cur = std::move(nxt);
    if (cur.empty()) return false;
  }
  for (int q : cur)
    if (a.is_final(q)) return true;
  return false;
}

std::uint64_t count_accepting_runs(const Nfa& a, const Word& w) {
  for (const NfaTransition& t : a.transitions)
    if (t.label.size() != 1) throw input_error("count_accepting_runs needs a letterized automaton");
  std::vector<std::uint64_t> cnt(a.num_states, 0);
  for (int q : a.initial) cnt[q] += 1;
  for (Letter x : w) {
    std::vector<std::uint64_t> nxt(a.num_states, 0);
    for (const NfaTransition& t : a.transitions)
      if (t.label[0] == x) nxt[t.dst] += cnt[t.src];
    cnt = std::move(nxt);
  }
  std::uint64_t total = 0;
  for (int q : a.finals) total += cnt[q];
  return total;
}

std::vector<Word> enumerate_language(const Nfa& a_in, std::size_t max_len) {
  Nfa a = letterize(a_in);
  Word alpha = a.alphabet;
  std::sort(alpha.begin(), alpha.end());
  std::vector<Word> out;
  std::vector<std::pair<Word, std::set<int>>> layer;
  layer.push_back({Word(), std::set<int>(a.initial.begin(), a.initial.end())});
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<std::pair<Word, std::set<int>>> next_layer;
    for (auto& [w, states] : layer) {
      for (int q : states)
        if (a.is_final(q)) {
          out.push_back(w);
          break;
        }
      if (len == max_len) continue;
      for (Letter x : alpha) {
        std::set<int> nxt;
        for (const NfaTransition& t : a.transitions)
          if (t.label[0] == x && states.count(t.src)) nxt.insert(t.dst);
        if (!nxt.empty()) next_layer.push_back({w + x, std::move(nxt)});
      }
    }
    layer = std::move(next_layer);
  }
  return out;
}

Nfa single_word_nfa(const Word& alphabet, const Word& w) {
  Nfa a;
  a.alphabet = alphabet;
  std::sort(a.alphabet.begin(), a.alphabet.end());
  a.num_states = static_cast<int>(w.size()) + 1;
  a.initial = {0};
  a.finals = {static_cast<int>(w.size())};
  for (std::size_t i = 0; i < w.size(); ++i)
    a.add_transition(static_cast<int>(i), Word(1, w[i]), static_cast<int>(i) + 1);
  return a;
}

namespace {

std::string dot_letter(char c) {
  std::string s;
  if (is_out(c)) s += "o.";
  char b = base_letter(c);
  if (b == endmarker)
    s += "-|";
  else
    s += b;
  return s;
}

}  // namespace

std::string to_dot(const Nfa& a, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n";
  for (int q : a.initial) os << "  i" << q << " [shape=point]; i" << q << " -> " << q << ";\n";
  for (int q = 0; q < a.num_states; ++q)
    os << "  " << q << " [shape=" << (a.is_final(q) ? "doublecircle" : "circle") << "];\n";
  for (const NfaTransition& t : a.transitions) {
    std::string lbl;
    if (t.label.empty())
      lbl = "eps";
    else
      for (char c : t.label) {
        if (!lbl.empty()) lbl += " ";
        lbl += dot_letter(c);
      }
    os << "  " << t.src << " -> " << t.dst << " [label=\"" << lbl << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace resync
