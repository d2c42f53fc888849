#include "doctest.h"

#include "resync/game.hpp"
#include "resync/textio.hpp"
#include "support.hpp"

using namespace resync;
using resync::testing::Rng;
using resync::testing::words_up_to;

namespace {

// Independent brute-force attractor: iterate the defining fixpoint directly.
std::vector<char> slow_winning(const SafetyGame& g) {
  int n = static_cast<int>(g.size());
  std::vector<char> attr(g.bad.begin(), g.bad.end());
  for (int v = 0; v < n; ++v)
    if (g.owner[v] == Player::output && g.edges[v].empty()) attr[v] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (attr[v]) continue;
      bool into = false;
      if (g.owner[v] == Player::input) {
        for (const GameEdge& e : g.edges[v])
          if (attr[e.dst]) into = true;
      } else {
        into = !g.edges[v].empty();
        for (const GameEdge& e : g.edges[v])
          if (!attr[e.dst]) into = false;
      }
      if (into) {
        attr[v] = 1;
        changed = true;
      }
    }
  }
  std::vector<char> win(n);
  for (int v = 0; v < n; ++v) win[v] = attr[v] ? 0 : 1;
  return win;
}

SafetyGame random_game(Rng& rng, int n, double edge_prob, double bad_prob) {
  SafetyGame g;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int v = 0; v < n; ++v)
    g.add_vertex(coin(rng) < 0.5 ? Player::input : Player::output,
                 coin(rng) < bad_prob);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (coin(rng) < edge_prob) g.edges[v].push_back({w, Word()});
  g.initial = 0;
  return g;
}

Transducer single_pair(const Word& alphabet, const Word& u, const Word& v) {
  Transducer t;
  t.alphabet = alphabet;
  int a = t.add_state(), b = t.add_state();
  t.initial = {a};
  t.finals = {b};
  t.add_transition(a, u, v, b);
  return t;
}

}  // namespace

TEST_CASE("safety solving basics") {
  // no bad vertices: everything is winning
  SafetyGame g;
  g.add_vertex(Player::input);
  g.add_vertex(Player::output);
  g.edges[0].push_back({1, Word()});
  g.edges[1].push_back({0, Word()});
  GameSolution s = solve_safety(g);
  CHECK(s.winning == std::vector<char>{1, 1});

  // a bad initial vertex loses immediately
  SafetyGame h;
  h.add_vertex(Player::input, true);
  h.edges[0].push_back({0, Word()});
  CHECK(!solve_safety(h).initial_winning(h));
}

TEST_CASE("solver matches the brute-force fixpoint") {
  Rng rng(61);
  for (int it = 0; it < 60; ++it) {
    SafetyGame g = random_game(rng, 20, 0.15, 0.2);
    GameSolution s = solve_safety(g);
    CHECK(s.winning == slow_winning(g));
    // chosen strategy edges stay inside the region
    for (std::size_t v = 0; v < g.size(); ++v)
      if (s.winning[v] && g.owner[v] == Player::output) {
        REQUIRE(s.strategy[v] >= 0);
        CHECK(s.winning[g.edges[v][s.strategy[v]].dst]);
      }
  }
}

TEST_CASE("single-pair transduction synthesizes the obvious map") {
  Transducer t = single_pair("ab", "a", "b");
  Resynchronizer id = identity_resync("ab");
  std::optional<Transducer> u = seq_s_uniformizable(t, id);
  REQUIRE(u.has_value());
  CHECK(is_sequential(*u));
  CHECK(run_sequential(*u, "a") == Word("b"));
  CHECK(!run_sequential(*u, "b").has_value());
  CHECK(verify_uniformizer(*u, t, id));
}

TEST_CASE("the approximation family is not uniformizable at small delays") {
  Transducer t = resync::testing::fig_t();
  for (std::size_t k = 0; k <= 2; ++k) {
    Resynchronizer dk = build_dk(t.alphabet, k);
    CHECK(!seq_s_uniformizable(t, dk).has_value());
  }
}

TEST_CASE("the known uniformizer fails every small delay bound") {
  Transducer t = resync::testing::fig_t();
  Transducer u = resync::testing::fig_u();
  // classically, u is a uniformizer: same domain, outputs contained
  for (const Word& w : words_up_to("aAB", 8)) {
    std::optional<Word> out = run_sequential(u, w);
    std::set<Word> allowed = enumerate_outputs(t, w, 16);
    if (out) CHECK(allowed.count(*out) == 1);
    CHECK(out.has_value() == !allowed.empty());
  }
  // but the lag against t grows with n, so no bounded delay certifies it
  for (std::size_t k = 0; k <= 2; ++k)
    CHECK(!verify_uniformizer(u, t, build_dk(t.alphabet, k)));
  CHECK_THROWS_AS(verify_uniformizer(u, t, Resynchronizer::universal_marker()),
                  input_error);
}

TEST_CASE("synthesized uniformizers verify and respect monotonicity") {
  Rng rng(62);
  int synthesized = 0;
  for (int it = 0; it < 40; ++it) {
    Transducer t = resync::testing::random_transducer(rng, "ab", 2, 3, 1);
    if (is_empty(domain_automaton(t))) continue;
    Resynchronizer id = identity_resync("ab");
    Resynchronizer d1 = build_dk("ab", 1);
    std::optional<Transducer> u0;
    CHECK_NOTHROW(u0 = seq_s_uniformizable(t, id));
    std::optional<Transducer> u1 = seq_s_uniformizable(t, d1);
    if (u0) {
      ++synthesized;
      CHECK(verify_uniformizer(*u0, t, id));
      // success at the identity implies success at every delay bound
      CHECK(u1.has_value());
    }
    if (u1) CHECK(verify_uniformizer(*u1, t, d1));
  }
  CHECK(synthesized > 3);
}

TEST_CASE("burst bound beyond the state count never flips the winner") {
  Rng rng(63);
  for (int it = 0; it < 15; ++it) {
    Transducer t = resync::testing::random_transducer(rng, "ab", 2, 3, 1);
    if (is_empty(domain_automaton(t))) continue;
    Resynchronizer d1 = build_dk("ab", 1);
    UniformizationGame base = build_uniformization_game(t, d1);
    std::size_t nb = static_cast<std::size_t>(base.sync_dfa.num_states);
    bool w0 = solve_safety(base.game).initial_winning(base.game);
    UniformizationGame wider = build_uniformization_game(t, d1, {}, nb + 2);
    CHECK(solve_safety(wider.game).initial_winning(wider.game) == w0);
  }
}

TEST_CASE("extraction demands a winning initial vertex") {
  Transducer t = resync::testing::fig_t();
  Resynchronizer d0 = build_dk(t.alphabet, 0);
  UniformizationGame ug = build_uniformization_game(t, d0);
  GameSolution sol = solve_safety(ug.game);
  CHECK(!sol.initial_winning(ug.game));
  CHECK_THROWS_AS(extract_sequential_uniformizer(ug, sol), input_error);
}
