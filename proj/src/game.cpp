#include "resync/game.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace resync {

GameSolution solve_safety(const SafetyGame& g) {
  int n = static_cast<int>(g.size());
  std::vector<std::vector<int>> preds(n);
  std::vector<int> out_degree(n, 0);
  for (int v = 0; v < n; ++v) {
    out_degree[v] = static_cast<int>(g.edges[v].size());
    for (const GameEdge& e : g.edges[v]) preds[e.dst].push_back(v);
  }
  std::vector<char> attracted(n, 0);
  std::deque<int> work;
  auto attract = [&](int v) {
    if (!attracted[v]) {
      attracted[v] = 1;
      work.push_back(v);
    }
  };
  for (int v = 0; v < n; ++v) {
    if (g.bad[v]) attract(v);
    // A deadlocked vertex loses for its owner.
    if (g.owner[v] == Player::output && out_degree[v] == 0) attract(v);
  }
  std::vector<int> pending = out_degree;  // edges of Output vertices not yet attracted
  while (!work.empty()) {
    int v = work.front();
    work.pop_front();
    for (int p : preds[v]) {
      if (attracted[p]) continue;
      if (g.owner[p] == Player::input) {
        attract(p);
      } else if (--pending[p] == 0) {
        attract(p);
      }
    }
  }
  GameSolution sol;
  sol.winning.assign(n, 0);
  sol.strategy.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    sol.winning[v] = attracted[v] ? 0 : 1;
    if (sol.winning[v] && g.owner[v] == Player::output)
      for (std::size_t i = 0; i < g.edges[v].size(); ++i)
        if (!attracted[g.edges[v][i].dst]) {
          sol.strategy[v] = static_cast<int>(i);
          break;
        }
  }
  return sol;
}

namespace {

// Targets reachable from b through output-coloured edges within the bound,
// with the shortest (then lexicographically least) plain witness word.
std::vector<std::pair<int, Word>> output_reach(const Dfa& sync_dfa, const Word& alphabet,
                                               int b, std::size_t bound) {
  std::vector<std::pair<int, Word>> out;
  std::vector<char> seen(sync_dfa.num_states, 0);
  std::deque<std::pair<int, Word>> work{{b, Word()}};
  seen[b] = 1;
  while (!work.empty()) {
    auto [q, w] = work.front();
    work.pop_front();
    out.push_back({q, w});
    if (w.size() >= bound) continue;
    for (Letter a : alphabet) {
      int q2 = sync_dfa.step(q, out_letter(a));
      if (!seen[q2]) {
        seen[q2] = 1;
        work.push_back({q2, w + a});
      }
    }
  }
  return out;
}

}  // namespace

UniformizationGame build_uniformization_game(const Transducer& t,
                                             const Resynchronizer& s,
                                             const Limits& limits,
                                             std::size_t burst_bound) {
  if (s.universal) throw input_error("universal resynchronizer unsupported");
  UniformizationGame ug;
  ug.alphabet = t.alphabet;
  std::sort(ug.alphabet.begin(), ug.alphabet.end());
  ug.sync_dfa = determinize(apply(s, underlying_automaton(t), limits), limits);
  ug.domain_dfa = determinize(domain_automaton(t), limits);
  if (burst_bound == 0) burst_bound = static_cast<std::size_t>(ug.sync_dfa.num_states);

  std::map<std::tuple<char, int, int, Letter>, int> ids;
  std::deque<int> work;
  auto intern = [&](UniformizationGame::Kind kind, int b, int d, Letter a) {
    auto [it, fresh] = ids.try_emplace({kind, b, d, a}, static_cast<int>(ug.game.size()));
    if (fresh) {
      ug.game.add_vertex(kind == UniformizationGame::input_vertex ||
                                 kind == UniformizationGame::done_vertex
                             ? Player::input
                             : Player::output);
      ug.info.push_back({kind, b, d, a});
      if (ug.game.size() > limits.max_states)
        throw cap_exceeded("uniformization game exceeded the vertex cap");
      work.push_back(it->second);
    }
    return it->second;
  };

  ug.game.initial =
      intern(UniformizationGame::input_vertex, ug.sync_dfa.initial, ug.domain_dfa.initial, 0);
  while (!work.empty()) {
    int v = work.front();
    work.pop_front();
    UniformizationGame::VertexInfo vi = ug.info[v];
    switch (vi.kind) {
      case UniformizationGame::input_vertex: {
        for (Letter a : ug.alphabet) {
          int b2 = ug.sync_dfa.step(vi.b, in_letter(a));
          int d2 = ug.domain_dfa.step(vi.d, a);
          // intern may grow the edge table, so resolve the target first
          int dst = intern(UniformizationGame::output_vertex, b2, d2, a);
          ug.game.edges[v].push_back({dst, Word(1, a)});
        }
        if (ug.domain_dfa.finals[vi.d]) {
          int dst = intern(UniformizationGame::end_vertex, vi.b, vi.d, 0);
          ug.game.edges[v].push_back({dst, Word()});
        }
        break;
      }
      case UniformizationGame::output_vertex: {
        for (auto& [b2, w] : output_reach(ug.sync_dfa, ug.alphabet, vi.b, burst_bound)) {
          int dst = intern(UniformizationGame::input_vertex, b2, vi.d, 0);
          ug.game.edges[v].push_back({dst, w});
        }
        break;
      }
      case UniformizationGame::end_vertex: {
        // The input has ended; Output must flush into an accepting sync state.
        std::optional<std::pair<int, Word>> best;
        for (auto& [b2, w] : output_reach(ug.sync_dfa, ug.alphabet, vi.b, burst_bound))
          if (ug.sync_dfa.finals[b2]) {
            best = {b2, w};
            break;
          }
        if (best) {
          int dst = intern(UniformizationGame::done_vertex, best->first, vi.d, 0);
          ug.game.edges[v].push_back({dst, best->second});
        } else {
          ug.game.bad[v] = 1;
        }
        break;
      }
      case UniformizationGame::done_vertex:
        ug.game.edges[v].push_back({v, Word()});
        break;
    }
  }
  return ug;
}

Transducer extract_sequential_uniformizer(const UniformizationGame& ug,
                                          const GameSolution& sol) {
  if (!sol.initial_winning(ug.game))
    throw input_error("not uniformizable at this resynchronizer");
  Transducer u;
  u.alphabet = ug.alphabet;

  std::map<int, int> state_of;
  std::deque<int> work;
  auto intern = [&](int v) {
    auto [it, fresh] = state_of.try_emplace(v, u.num_states);
    if (fresh) {
      u.add_state();
      work.push_back(v);
    }
    return it->second;
  };
  u.initial = {intern(ug.game.initial)};
  while (!work.empty()) {
    int v = work.front();
    work.pop_front();
    int src = state_of[v];
    for (const GameEdge& e : ug.game.edges[v]) {
      const UniformizationGame::VertexInfo& ti = ug.info[e.dst];
      if (ti.kind == UniformizationGame::output_vertex) {
        int chosen = sol.strategy[e.dst];
        const GameEdge& burst = ug.game.edges[e.dst][chosen];
        u.add_transition(src, e.annotation, burst.annotation, intern(burst.dst));
      } else {  // end vertex: the flush word becomes the final output
        int chosen = sol.strategy[e.dst];
        u.finals.push_back(src);
        u.final_output[src] = ug.game.edges[e.dst][chosen].annotation;
      }
    }
  }
  return u;
}

std::optional<Transducer> seq_s_uniformizable(const Transducer& t,
                                              const Resynchronizer& s,
                                              const Limits& limits) {
  UniformizationGame ug = build_uniformization_game(t, s, limits);
  GameSolution sol = solve_safety(ug.game);
  if (!sol.initial_winning(ug.game)) return std::nullopt;
  Transducer u = extract_sequential_uniformizer(ug, sol);
  if (!verify_uniformizer(u, t, s, limits))
    throw std::logic_error("synthesized uniformizer failed verification");
  return u;
}

bool verify_uniformizer(const Transducer& u, const Transducer& t,
                        const Resynchronizer& s, const Limits& limits) {
  if (s.universal) throw input_error("universal resynchronizer unsupported");
  if (!includes(underlying_automaton(u), apply(s, underlying_automaton(t), limits), limits)
           .included)
    return false;
  Nfa du = domain_automaton(u);
  Nfa dt = domain_automaton(t);
  return includes(du, dt, limits).included && includes(dt, du, limits).included;
}

std::string game_to_dot(const UniformizationGame& ug) {
  std::ostringstream os;
  os << "digraph game {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < ug.game.size(); ++v) {
    const UniformizationGame::VertexInfo& vi = ug.info[v];
    os << "  " << v << " [shape="
       << (ug.game.owner[v] == Player::input ? "box" : "ellipse");
    if (ug.game.bad[v]) os << ",color=red";
    os << ",label=\"b" << vi.b << " d" << vi.d;
    if (vi.kind == UniformizationGame::output_vertex) os << " " << vi.a;
    if (vi.kind == UniformizationGame::end_vertex) os << " end";
    if (vi.kind == UniformizationGame::done_vertex) os << " ok";
    os << "\"];\n";
  }
  for (std::size_t v = 0; v < ug.game.size(); ++v)
    for (const GameEdge& e : ug.game.edges[v])
      os << "  " << v << " -> " << e.dst << " [label=\""
         << (e.annotation.empty() ? "eps" : e.annotation) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace resync
