#include "resync/drat.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace resync {

std::size_t DetTransducer::ext_index(Letter a) const {
  if (a == endmarker) return alphabet.size();
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), a);
  if (it == alphabet.end() || *it != a)
    throw input_error(std::string("letter not in alphabet: ") + a);
  return static_cast<std::size_t>(it - alphabet.begin());
}

Letter DetTransducer::ext_letter(std::size_t i) const {
  return i == alphabet.size() ? endmarker : alphabet[i];
}

void DetTransducer::build_index() const {
  if (!input_pos_.empty() || num_states == 0) return;
  input_pos_.assign(num_states, -1);
  for (int q = 0; q < num_states; ++q)
    if (input_state[q]) {
      input_pos_[q] = static_cast<int>(input_states_.size());
      input_states_.push_back(q);
    }
}

const std::vector<int>& DetTransducer::input_states() const {
  build_index();
  return input_states_;
}

int DetTransducer::input_pos(int q) const {
  build_index();
  return input_pos_[q];
}

void DetTransducer::validate() const {
  if (initial < 0 || initial >= num_states) throw input_error("initial state undeclared");
  if (input_state.size() != static_cast<std::size_t>(num_states) ||
      finals.size() != static_cast<std::size_t>(num_states) ||
      next.size() != static_cast<std::size_t>(num_states))
    throw input_error("state tables have inconsistent sizes");
  for (int q = 0; q < num_states; ++q) {
    if (next[q].size() != ext_size()) throw input_error("transition function not total");
    for (int r : next[q])
      if (r < 0 || r >= num_states) throw input_error("transition target undeclared");
  }
}

DeltaStarResult delta_star(const DetTransducer& t, int q, Word u, Word v) {
  std::size_t i = 0, j = 0;
  while (true) {
    if (t.input_state[q]) {
      if (i == u.size()) break;
      q = t.step(q, u[i++]);
    } else {
      if (j == v.size()) break;
      q = t.step(q, v[j++]);
    }
  }
  return {q, u.substr(i), v.substr(j)};
}

bool dt_accepts(const DetTransducer& t, const Word& u, const Word& v) {
  for (Letter a : u)
    if (a == endmarker) throw input_error("input word contains the endmarker");
  for (Letter a : v)
    if (a == endmarker) throw input_error("output word contains the endmarker");
  DeltaStarResult r = delta_star(t, t.initial, u + endmarker, v + endmarker);
  return r.settled() && t.finals[r.state];
}

Transformation tau_of_letter(const DetTransducer& t, Letter a) {
  Transformation tau;
  tau.map.reserve(t.input_states().size());
  for (int q : t.input_states()) tau.map.push_back(t.step(q, a));
  return tau;
}

bool is_maximal(const DetTransducer& t, const Transformation& tau) {
  for (int v : tau.map)
    if (v >= 0 && !t.input_state[v]) return true;
  return false;
}

namespace {

// tau1 o tau2 for a non-maximal tau1 (all defined values are input states).
Transformation compose_tau(const DetTransducer& t, const Transformation& t1,
                           const Transformation& t2) {
  Transformation r;
  r.map.reserve(t1.map.size());
  for (int v : t1.map) r.map.push_back(v < 0 ? -1 : t2.map[t.input_pos(v)]);
  return r;
}

}  // namespace

TransformationSeq compose(const DetTransducer& t, const TransformationSeq& r1,
                          const TransformationSeq& r2) {
  // Left fold of single appends; a non-maximal boundary element is merged
  // into its successor, so composing reduced sequences stays reduced and the
  // operation is associative.
  TransformationSeq out = r1;
  for (const Transformation& tau : r2) {
    if (out.empty() || is_maximal(t, out.back()))
      out.push_back(tau);
    else
      out.back() = compose_tau(t, out.back(), tau);
  }
  return out;
}

TransformationSeq rho_of_word(const DetTransducer& t, const Word& u) {
  TransformationSeq rho;
  for (Letter a : u) rho = compose(t, rho, {tau_of_letter(t, a)});
  return rho;
}

bool is_reduced(const DetTransducer& t, const TransformationSeq& rho) {
  for (std::size_t i = 0; i + 1 < rho.size(); ++i)
    if (!is_maximal(t, rho[i])) return false;
  return true;
}

namespace {

// tau consistent with u: defined entries agree with the state transformation
// of u, and entries leading back to input states must be defined.
bool tau_consistent(const DetTransducer& t, const Transformation& tau, const Word& u) {
  const std::vector<int>& ins = t.input_states();
  for (std::size_t i = 0; i < ins.size(); ++i) {
    DeltaStarResult r = delta_star(t, ins[i], u, Word());
    bool settled = r.remaining_input.empty();
    if (tau.map[i] >= 0 && !(settled && r.state == tau.map[i])) return false;
    if (settled && t.input_state[r.state] && tau.map[i] < 0) return false;
  }
  return true;
}

}  // namespace

bool is_consistent(const DetTransducer& t, const TransformationSeq& rho, const Word& u) {
  std::size_t n = rho.size();
  // reach[j] holds the set of transformation counts realisable on u[0..j).
  std::vector<std::vector<bool>> reach(u.size() + 1, std::vector<bool>(n + 1, false));
  reach[0][0] = true;
  for (std::size_t j = 0; j <= u.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[j][i]) continue;
      for (std::size_t j2 = j; j2 <= u.size(); ++j2)
        if (!reach[j2][i + 1] && tau_consistent(t, rho[i], u.substr(j, j2 - j)))
          reach[j2][i + 1] = true;
    }
  return reach[u.size()][n];
}

Transformation reduce_seq(const DetTransducer& t, const TransformationSeq& rho) {
  if (rho.empty()) throw input_error("reduce_seq needs a non-empty sequence");
  auto strip = [&](const Transformation& tau) {
    Transformation r = tau;
    for (int& v : r.map)
      if (v >= 0 && !t.input_state[v]) v = -1;
    return r;
  };
  Transformation acc = rho.size() == 1 ? rho[0] : strip(rho[0]);
  for (std::size_t i = 1; i < rho.size(); ++i)
    acc = compose_tau(t, acc, i + 1 < rho.size() ? strip(rho[i]) : rho[i]);
  return acc;
}

Nfa lout_automaton(const DetTransducer& t, int p, const TransformationSeq& rho, int q) {
  std::size_t n = rho.size();
  Nfa a;
  a.alphabet = t.alphabet + endmarker;
  std::sort(a.alphabet.begin(), a.alphabet.end());
  a.num_states = static_cast<int>((n + 1) * t.num_states);
  auto id = [&](std::size_t layer, int s) {
    return static_cast<int>(layer * t.num_states + s);
  };
  a.initial = {id(0, p)};
  a.finals = {id(n, q)};
  for (std::size_t layer = 0; layer < n; ++layer)
    for (int s = 0; s < t.num_states; ++s) {
      if (t.input_state[s]) {
        int v = rho[layer].map[t.input_pos(s)];
        if (v >= 0) a.add_transition(id(layer, s), Word(), id(layer + 1, v));
      } else {
        for (std::size_t xi = 0; xi < t.ext_size(); ++xi)
          a.add_transition(id(layer, s), Word(1, t.ext_letter(xi)),
                           id(layer, t.next[s][xi]));
      }
    }
  return a;
}

std::optional<Word> shortest_traversal(const DetTransducer& t, int p,
                                       const TransformationSeq& rho, int q) {
  return shortest_accepted(lout_automaton(t, p, rho, q));
}

Profile profile(const DetTransducer& t, const TransformationSeq& rho) {
  Profile pr;
  pr.n = t.num_states;
  pr.cell.assign(static_cast<std::size_t>(pr.n) * pr.n, 0);
  for (int p = 0; p < t.num_states; ++p)
    for (int q = 0; q < t.num_states; ++q) {
      Nfa a = lout_automaton(t, p, rho, q);
      if (accepts(a, Word()))
        pr.set(p, q, 2);
      else if (!is_empty(a))
        pr.set(p, q, 1);
    }
  return pr;
}

Profile profile_mul(const Profile& p1, const Profile& p2) {
  Profile r;
  r.n = p1.n;
  r.cell.assign(static_cast<std::size_t>(r.n) * r.n, 0);
  for (int p = 0; p < r.n; ++p)
    for (int q = 0; q < r.n; ++q) {
      std::uint8_t best = 0;
      for (int m = 0; m < r.n; ++m) {
        std::uint8_t a = p1.get(p, m), b = p2.get(m, q);
        if (a == 0 || b == 0) continue;
        best = std::max(best, static_cast<std::uint8_t>(a == 2 && b == 2 ? 2 : 1));
      }
      r.set(p, q, best);
    }
  return r;
}

bool is_idempotent(const Profile& p) { return profile_mul(p, p) == p; }

Profile profile_of_word(const DetTransducer& t, const Word& u) {
  return profile(t, rho_of_word(t, u));
}

std::optional<std::pair<std::size_t, std::size_t>> find_saturation_witness(
    const DetTransducer& t, const TransformationSeq& rho,
    const std::vector<Profile>& profiles) {
  if (profiles.size() != rho.size())
    throw input_error("profile sequence length must match the transformation sequence");
  std::size_t n = rho.size();
  for (std::size_t len1 = 1; len1 < n; ++len1)
    for (std::size_t len2 = 2; len1 + len2 <= n; ++len2) {
      TransformationSeq r1(rho.begin(), rho.begin() + static_cast<long>(len1));
      TransformationSeq r2(rho.begin() + static_cast<long>(len1),
                           rho.begin() + static_cast<long>(len1 + len2));
      Profile p1 = profile(t, r1);
      Profile p2 = profile(t, r2);
      if (!is_idempotent(p2)) continue;
      if (!(profile_mul(p1, p2) == p1)) continue;
      Profile h1 = profiles[0];
      for (std::size_t i = 1; i < len1; ++i) h1 = profile_mul(h1, profiles[i]);
      Profile h2 = profiles[len1];
      for (std::size_t i = len1 + 1; i < len1 + len2; ++i) h2 = profile_mul(h2, profiles[i]);
      if (!(profile_mul(h1, h2) == h1)) continue;
      if (!(profile_mul(h2, h2) == h2)) continue;
      return std::make_pair(len1, len1 + len2);
    }
  return std::nullopt;
}

std::optional<Word> accepting_completion(const DetTransducer& t, int p) {
  // Breadth-first over the output-consuming walk; input states are absorbing.
  std::vector<char> seen(t.num_states, 0);
  std::deque<std::pair<int, Word>> work{{p, Word()}};
  seen[p] = 1;
  while (!work.empty()) {
    auto [q, z] = work.front();
    work.pop_front();
    if (t.finals[q]) return z;
    if (t.input_state[q]) continue;
    for (std::size_t xi = 0; xi < t.ext_size(); ++xi) {
      int r = t.next[q][xi];
      if (!seen[r]) {
        seen[r] = 1;
        work.push_back({r, z + t.ext_letter(xi)});
      }
    }
  }
  return std::nullopt;
}

DetTransducer normalize_endmarkers(const DetTransducer& t) {
  t.validate();
  // Candidate states (q, bi, bo): bi / bo record whether the input / output
  // endmarker has been consumed.  A letter after its track's endmarker, or a
  // second endmarker, falls into the rejecting sink.
  auto raw = [&](int q, int bi, int bo) { return (q * 2 + bi) * 2 + bo; };
  int total = t.num_states * 4;
  std::vector<int> succ(static_cast<std::size_t>(total) * t.ext_size(), -1);
  for (int q = 0; q < t.num_states; ++q)
    for (int bi = 0; bi < 2; ++bi)
      for (int bo = 0; bo < 2; ++bo)
        for (std::size_t xi = 0; xi < t.ext_size(); ++xi) {
          bool is_end = t.ext_letter(xi) == endmarker;
          int& slot = succ[raw(q, bi, bo) * t.ext_size() + xi];
          int seen = t.input_state[q] ? bi : bo;
          if (seen == 1) continue;  // track already closed: reject
          int ni = bi, no = bo;
          (t.input_state[q] ? ni : no) = is_end ? 1 : 0;
          slot = raw(t.next[q][xi], ni, no);
        }
  std::vector<char> final_raw(total, 0);
  for (int q = 0; q < t.num_states; ++q)
    if (t.finals[q]) final_raw[raw(q, 1, 1)] = 1;

  // Keep only useful states; everything else merges into the sink.
  std::vector<char> reach(total, 0), coreach(total, 0);
  std::deque<int> work{raw(t.initial, 0, 0)};
  reach[work.front()] = 1;
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    for (std::size_t xi = 0; xi < t.ext_size(); ++xi) {
      int n = succ[s * t.ext_size() + xi];
      if (n >= 0 && !reach[n]) {
        reach[n] = 1;
        work.push_back(n);
      }
    }
  }
  for (int s = 0; s < total; ++s)
    if (final_raw[s]) {
      coreach[s] = 1;
      work.push_back(s);
    }
  while (!work.empty()) {
    int s = work.front();
    work.pop_front();
    for (int p = 0; p < total; ++p)
      for (std::size_t xi = 0; xi < t.ext_size(); ++xi)
        if (succ[p * t.ext_size() + xi] == s && !coreach[p]) {
          coreach[p] = 1;
          work.push_back(p);
        }
  }

  DetTransducer n;
  n.alphabet = t.alphabet;
  std::vector<int> remap(total, -1);
  for (int s = 0; s < total; ++s)
    if (reach[s] && coreach[s]) {
      remap[s] = n.num_states++;
      n.input_state.push_back(t.input_state[s / 4]);
      n.finals.push_back(final_raw[s] != 0);
    }
  int sink = n.num_states++;
  n.input_state.push_back(true);
  n.finals.push_back(false);
  n.next.assign(n.num_states, std::vector<int>(n.ext_size(), sink));
  for (int s = 0; s < total; ++s) {
    if (remap[s] < 0) continue;
    for (std::size_t xi = 0; xi < t.ext_size(); ++xi) {
      int nx = succ[s * t.ext_size() + xi];
      n.next[remap[s]][xi] = nx >= 0 && remap[nx] >= 0 ? remap[nx] : sink;
    }
  }
  int init = raw(t.initial, 0, 0);
  n.initial = remap[init] >= 0 ? remap[init] : sink;
  n.validate();
  return n;
}

Dfa drat_domain_dfa(const DetTransducer& t, const Limits& limits) {
  t.validate();
  // Guess the output word; a flag records whether its endmarker has passed.
  Nfa a;
  a.alphabet = t.alphabet + endmarker;
  std::sort(a.alphabet.begin(), a.alphabet.end());
  a.num_states = 2 * t.num_states;
  auto id = [&](int q, int flag) { return 2 * q + flag; };
  a.initial = {id(t.initial, 0)};
  for (int q = 0; q < t.num_states; ++q)
    if (t.finals[q]) a.finals.push_back(id(q, 1));
  for (int q = 0; q < t.num_states; ++q) {
    if (t.input_state[q]) {
      for (std::size_t xi = 0; xi < t.ext_size(); ++xi) {
        a.add_transition(id(q, 0), Word(1, t.ext_letter(xi)), id(t.next[q][xi], 0));
        a.add_transition(id(q, 1), Word(1, t.ext_letter(xi)), id(t.next[q][xi], 1));
      }
    } else {
      for (std::size_t xi = 0; xi < t.ext_size(); ++xi) {
        bool is_end = t.ext_letter(xi) == endmarker;
        a.add_transition(id(q, 0), Word(), id(t.next[q][xi], is_end ? 1 : 0));
      }
    }
  }
  // Keep only words shaped (user letters)* endmarker.
  Nfa shape;
  shape.alphabet = a.alphabet;
  shape.num_states = 2;
  shape.initial = {0};
  shape.finals = {1};
  for (Letter x : t.alphabet) shape.add_transition(0, Word(1, x), 0);
  shape.add_transition(0, Word(1, endmarker), 1);
  return determinize(intersect(a, shape, limits), limits);
}

DratGame build_drat_game(const DetTransducer& raw, std::size_t big_k,
                         const Limits& limits) {
  raw.validate();
  DratGame dg;
  dg.machine = normalize_endmarkers(raw);
  const DetTransducer& t = dg.machine;
  dg.ext_alphabet.clear();
  for (std::size_t i = 0; i < t.ext_size(); ++i) dg.ext_alphabet.push_back(t.ext_letter(i));
  dg.domain_dfa = drat_domain_dfa(t, limits);
  for (int p = 0; p < t.num_states; ++p)
    dg.completion.push_back(accepting_completion(t, p));
  std::size_t max_len = 2 * big_k + 1;

  std::map<TransformationSeq, int> seq_ids;
  auto intern_seq = [&](const TransformationSeq& rho) {
    auto [it, fresh] = seq_ids.try_emplace(rho, static_cast<int>(dg.seqs.size()));
    if (fresh) dg.seqs.push_back(rho);
    return it->second;
  };

  std::map<std::tuple<char, int, int, int, Letter>, int> ids;
  std::deque<int> work;
  auto intern = [&](DratGame::Kind kind, int p, int rho_id, int d, Letter a) {
    auto [it, fresh] =
        ids.try_emplace({kind, p, rho_id, d, a}, static_cast<int>(dg.game.size()));
    if (fresh) {
      // Once the domain accepts, the lookahead must be gone and the reached
      // state must still have an output completion into acceptance (the
      // leftover output, endmarker included, that the transducer reads after
      // the last input letter).
      bool is_bad = false;
      if (kind == DratGame::input_vertex && dg.domain_dfa.finals[d])
        is_bad = !dg.seqs[rho_id].empty() || !dg.completion[p].has_value();
      dg.game.add_vertex(kind == DratGame::input_vertex ? Player::input : Player::output,
                         is_bad);
      dg.info.push_back({kind, p, rho_id, d, a});
      if (dg.game.size() > limits.max_states)
        throw cap_exceeded("lookahead game exceeded the vertex cap");
      work.push_back(it->second);
    }
    return it->second;
  };

  std::map<std::tuple<int, int, int>, std::optional<Word>> traversal;
  auto shortest = [&](int p, int rho_id, int q) -> const std::optional<Word>& {
    auto it = traversal.find({p, rho_id, q});
    if (it == traversal.end())
      it = traversal.emplace(std::make_tuple(p, rho_id, q),
                             shortest_traversal(t, p, dg.seqs[rho_id], q))
               .first;
    return it->second;
  };

  int empty_seq = intern_seq({});
  dg.game.initial =
      intern(DratGame::input_vertex, t.initial, empty_seq, dg.domain_dfa.initial, 0);
  while (!work.empty()) {
    int v = work.front();
    work.pop_front();
    DratGame::VertexInfo vi = dg.info[v];
    if (vi.kind == DratGame::input_vertex) {
      // (In): edge i carries the i-th extended letter.
      for (Letter a : dg.ext_alphabet) {
        int dst = intern(DratGame::output_vertex, vi.p, vi.rho, vi.d, a);
        dg.game.edges[v].push_back({dst, Word(1, a)});
      }
      continue;
    }
    const TransformationSeq rho = dg.seqs[vi.rho];
    int d_a = dg.domain_dfa.next[vi.d][dg.domain_dfa.letter_index(vi.a)];
    Transformation tau_a = tau_of_letter(t, vi.a);
    if (rho.empty()) {
      // (Out0): produce output matching the pending letter directly.
      int tau_id = intern_seq({tau_a});
      for (int q = 0; q < t.num_states; ++q)
        if (std::optional<Word> w = shortest(vi.p, tau_id, q)) {
          int dst = intern(DratGame::input_vertex, q, empty_seq, d_a, 0);
          dg.game.edges[v].push_back({dst, *w});
          dg.max_annotation = std::max(dg.max_annotation, w->size());
        }
    }
    // (Out1): extend the lookahead.
    TransformationSeq grown = compose(t, rho, {tau_a});
    if (grown.size() <= max_len) {
      int dst = intern(DratGame::input_vertex, vi.p, intern_seq(grown), d_a, 0);
      dg.game.edges[v].push_back({dst, Word()});
    }
    // (Out2): consume a prefix of the lookahead.
    for (std::size_t len1 = 1; len1 <= rho.size(); ++len1) {
      TransformationSeq r1(rho.begin(), rho.begin() + static_cast<long>(len1));
      TransformationSeq r2(rho.begin() + static_cast<long>(len1), rho.end());
      int r1_id = intern_seq(r1);
      int r2_id = intern_seq(r2);
      for (int q = 0; q < t.num_states; ++q)
        if (std::optional<Word> w = shortest(vi.p, r1_id, q)) {
          int dst = intern(DratGame::output_vertex, q, r2_id, vi.d, vi.a);
          dg.game.edges[v].push_back({dst, *w});
          dg.max_annotation = std::max(dg.max_annotation, w->size());
        }
    }
    // (Out3): reduce an infix of the lookahead.
    for (std::size_t len1 = 0; len1 + 2 <= rho.size(); ++len1)
      for (std::size_t len2 = 2; len1 + len2 <= rho.size(); ++len2) {
        TransformationSeq r(rho.begin(), rho.begin() + static_cast<long>(len1));
        r.push_back(reduce_seq(
            t, TransformationSeq(rho.begin() + static_cast<long>(len1),
                                 rho.begin() + static_cast<long>(len1 + len2))));
        r.insert(r.end(), rho.begin() + static_cast<long>(len1 + len2), rho.end());
        int dst = intern(DratGame::output_vertex, vi.p, intern_seq(r), vi.d, vi.a);
        dg.game.edges[v].push_back({dst, Word()});
      }
  }
  return dg;
}

namespace {

Word strip_endmarkers(const Word& w) {
  Word r;
  for (Letter a : w)
    if (a != endmarker) r.push_back(a);
  return r;
}

Transducer extract_drat_uniformizer(const DetTransducer& t, const DratGame& dg,
                                    const GameSolution& sol, DratAnswer& decode) {
  Transducer u;
  u.alphabet = t.alphabet;
  std::map<int, int> state_of;
  std::deque<int> work;
  auto intern = [&](int v) {
    auto [it, fresh] = state_of.try_emplace(v, u.num_states);
    if (fresh) {
      u.add_state();
      decode.state_p.push_back(dg.info[v].p);
      decode.state_rho.push_back(dg.seqs[dg.info[v].rho]);
      decode.state_d.push_back(dg.info[v].d);
      work.push_back(v);
    }
    return it->second;
  };
  u.initial = {intern(dg.game.initial)};
  while (!work.empty()) {
    int v = work.front();
    work.pop_front();
    int src = state_of[v];
    for (std::size_t xi = 0; xi < dg.ext_alphabet.size(); ++xi) {
      Letter a = dg.ext_alphabet[xi];
      int cur = dg.game.edges[v][xi].dst;
      Word out;
      while (dg.game.owner[cur] == Player::output) {
        const GameEdge& e = dg.game.edges[cur][sol.strategy[cur]];
        out += e.annotation;
        cur = e.dst;
      }
      if (a != endmarker) {
        u.add_transition(src, Word(1, a), strip_endmarkers(out), intern(cur));
      } else if (dg.domain_dfa.finals[dg.info[cur].d]) {
        u.finals.push_back(src);
        u.final_output[src] =
            strip_endmarkers(out + dg.completion[dg.info[cur].p].value());
      }
    }
  }
  return u;
}

}  // namespace

DratAnswer drat_uniformize(const DetTransducer& t, std::size_t big_k,
                           const Limits& limits, std::size_t check_len) {
  DratGame dg = build_drat_game(t, big_k, limits);
  GameSolution sol = solve_safety(dg.game);
  DratAnswer ans;
  ans.big_k = big_k;
  ans.machine = dg.machine;
  if (!sol.initial_winning(dg.game)) return ans;
  Transducer u = extract_drat_uniformizer(dg.machine, dg, sol, ans);
  if (!is_sequential(u)) throw std::logic_error("extracted uniformizer is not sequential");
  // Bounded simulation: on every short domain word the answer must be
  // accepted, and no word outside the domain may be accepted.
  std::deque<Word> work{Word()};
  while (!work.empty()) {
    Word w = work.front();
    work.pop_front();
    bool in_dom = dg.domain_dfa.accepts_word(w + endmarker);
    std::optional<Word> out = run_sequential(u, w);
    if (in_dom != out.has_value())
      throw std::logic_error("synthesized uniformizer has the wrong domain");
    if (out && !dt_accepts(t, w, *out))
      throw std::logic_error("synthesized uniformizer failed the acceptance check");
    if (w.size() < check_len)
      for (Letter a : t.alphabet) work.push_back(w + a);
  }
  ans.yes = true;
  ans.uniformizer = u;
  return ans;
}

std::size_t delay_bound(const DetTransducer& t, std::size_t big_k, const Limits& limits) {
  DratGame dg = build_drat_game(t, big_k, limits);
  return delay_bound_formula(big_k, dg.max_annotation);
}

BigInt ramsey3_bound(const BigInt& colors) {
  BigInt f = 1;
  for (BigInt i = 2; i <= colors; ++i) f *= i;
  BigInt b = 3 * f;
  return b < 3 ? BigInt(3) : b;
}

BigInt ramsey_K(const DetTransducer& raw, const Limits& limits) {
  raw.validate();
  DetTransducer t = normalize_endmarkers(raw);
  // Generate the profile monoid from the letter profiles.
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<Profile> elems;
  std::deque<Profile> work;
  auto push = [&](const Profile& p) {
    if (seen.insert(p.cell).second) {
      elems.push_back(p);
      work.push_back(p);
      if (elems.size() > limits.max_monoid)
        throw cap_exceeded("profile monoid exceeds the element cap");
    }
  };
  push(profile(t, {}));
  std::vector<Profile> gens;
  for (std::size_t i = 0; i < t.ext_size(); ++i)
    gens.push_back(profile(t, {tau_of_letter(t, t.ext_letter(i))}));
  while (!work.empty()) {
    Profile p = work.front();
    work.pop_front();
    for (const Profile& g : gens) push(profile_mul(p, g));
  }
  BigInt colors = BigInt(elems.size()) * BigInt(elems.size());
  return ramsey3_bound(colors);
}

std::string to_dot(const DetTransducer& t, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n";
  os << "  i [shape=point]; i -> " << t.initial << ";\n";
  for (int q = 0; q < t.num_states; ++q)
    os << "  " << q << " [shape=" << (t.finals[q] ? "doublecircle" : "circle")
       << ",style=" << (t.input_state[q] ? "solid" : "dashed") << "];\n";
  for (int q = 0; q < t.num_states; ++q)
    for (std::size_t xi = 0; xi < t.ext_size(); ++xi) {
      Letter a = t.ext_letter(xi);
      os << "  " << q << " -> " << t.next[q][xi] << " [label=\""
         << (a == endmarker ? std::string("-|") : std::string(1, a)) << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

std::string game_to_dot(const DratGame& dg) {
  std::ostringstream os;
  os << "digraph lookahead_game {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < dg.game.size(); ++v) {
    const DratGame::VertexInfo& vi = dg.info[v];
    os << "  " << v << " [shape="
       << (dg.game.owner[v] == Player::input ? "box" : "ellipse");
    if (dg.game.bad[v]) os << ",color=red";
    os << ",label=\"p" << vi.p << " r" << vi.rho << " d" << vi.d << "\"];\n";
  }
  for (std::size_t v = 0; v < dg.game.size(); ++v)
    for (const GameEdge& e : dg.game.edges[v])
      os << "  " << v << " -> " << e.dst << " [label=\""
         << (e.annotation.empty() ? "eps" : strip_endmarkers(e.annotation)) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace resync
