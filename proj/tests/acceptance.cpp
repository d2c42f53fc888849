// Acceptance suite: one pass/fail line per criterion, exact expectations.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <tuple>

#include "resync/drat.hpp"
#include "resync/game.hpp"
#include "resync/monoid.hpp"
#include "resync/textio.hpp"
#include "support.hpp"

using namespace resync;
using resync::testing::Rng;
using resync::testing::words_up_to;

namespace {

int failures = 0;
int current = 0;
bool current_ok = true;
std::vector<std::string> notes;

void expect(bool cond, const std::string& what) {
  if (!cond) {
    current_ok = false;
    notes.push_back(what);
  }
}

void criterion(int number, const std::string& title, const std::function<void()>& body) {
  current = number;
  current_ok = true;
  notes.clear();
  auto start = std::chrono::steady_clock::now();
  try {
    body();
  } catch (const std::exception& e) {
    current_ok = false;
    notes.push_back(std::string("exception: ") + e.what());
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::cout << (current_ok ? "PASS" : "FAIL") << " criterion " << number << " ("
            << title << ", " << ms << " ms)\n";
  for (const std::string& n : notes) std::cout << "     - " << n << "\n";
  if (!current_ok) ++failures;
}

SyncWord repeat_sync(const SyncWord& w, std::size_t n) {
  SyncWord r;
  for (std::size_t i = 0; i < n; ++i) r += w;
  return r;
}

Word power(const Word& w, std::size_t n) {
  Word r;
  for (std::size_t i = 0; i < n; ++i) r += w;
  return r;
}

}  // namespace

int main() {
  Transducer t1 = resync::testing::fig_t1();
  Transducer t2 = resync::testing::fig_t2();
  Transducer figt = resync::testing::fig_t();
  Transducer figu = resync::testing::fig_u();
  DetTransducer r1 = resync::testing::fig_r1();

  // 1. Bounded relation equality of the two doubling transducers, and their
  //    separation at every delay bound k in 0..4 with the lag-(2k+2) witness.
  criterion(1, "doubling transducers: equal relation, no bounded-delay equivalence", [&] {
    expect(relation_equal_bounded(t1, t2, 8), "relation_equal_bounded(t1, t2, 8)");
    for (std::size_t k = 0; k <= 4; ++k) {
      expect(!k_equivalent(t1, t2, k), "k_equivalent must fail at k=" + std::to_string(k));
      InclusionResult witness = k_included(t1, t2, k);
      expect(!witness.included && witness.counterexample.has_value(),
             "k_included must produce a counterexample at k=" + std::to_string(k));
      // The sync word for input a^{2k+2}: (i.a o.a o.a)^{k+1} (i.a)^{k+1}; its
      // unique partner in the second transducer sits at lag exactly 2k+2.
      SyncWord w1 = repeat_sync(parse_sync_word("i.a o.a o.a"), k + 1) +
                    repeat_sync(parse_sync_word("i.a"), k + 1);
      SyncWord w2 = repeat_sync(parse_sync_word("i.a"), k + 1) +
                    repeat_sync(parse_sync_word("i.a o.a o.a"), k + 1);
      expect(accepts(underlying_automaton(t1), w1), "witness is a sync word of t1");
      expect(accepts(underlying_automaton(t2), w2), "partner is a sync word of t2");
      expect(lag(w1, w2) == LagValue::finite(2 * k + 2),
             "lag of the witness pair must be " + std::to_string(2 * k + 2));
      Resynchronizer dk = build_dk("a", k);
      expect(!accepts(apply(dk, underlying_automaton(t2)), w1),
             "witness has no k-delay preimage at k=" + std::to_string(k));
    }
  });

  // 2. The choice transducer: its known uniformizer on the bounded oracle, and
  //    the refusal of the game at delays 0..2.
  criterion(2, "choice transducer: oracle-confirmed uniformizer, no small-delay synthesis", [&] {
    for (std::size_t n = 0; n <= 6; ++n)
      for (Letter alpha : Word("AB")) {
        Word u = power("a", n) + alpha;
        if (n == 0 && alpha == 'B') continue;  // outside the domain
        std::optional<Word> out = run_sequential(figu, u);
        expect(out == power("a", n), "u(a^n alpha) = a^n for n=" + std::to_string(n));
        expect(evaluate_pair(figt, u, power("a", n)),
               "a^n is an allowed output for n=" + std::to_string(n));
      }
    for (std::size_t k = 0; k <= 2; ++k)
      expect(!seq_s_uniformizable(figt, build_dk(figt.alphabet, k)).has_value(),
             "no sequential uniformizer at delay k=" + std::to_string(k));
  });

  // 3. The one-delay resynchronizer over one letter, and image membership as
  //    equivalence plus bounded lag on 200 random pairs.
  criterion(3, "k-delay resynchronizer: exact edge set and lag semantics", [&] {
    Resynchronizer d1 = build_dk("a", 1);
    expect(d1.carrier.num_states == 3, "three states");
    Word ai(1, in_letter('a')), ao(1, out_letter('a'));
    std::set<std::tuple<int, Word, Word, int>> got;
    for (const TransducerTransition& tr : d1.carrier.transitions)
      got.insert({tr.src, tr.input, tr.output, tr.dst});
    std::set<std::tuple<int, Word, Word, int>> core{
        {0, ai, ai, 0}, {1, ai, ai, 1}, {2, ai, ai, 2},          // copy moves
        {0, ao, ao, 0}, {0, ao, Word(), 1}, {0, ao, ao + ao, 2},  // output moves
        {1, ao, ao, 1}, {1, ao, ao + ao, 0}, {1, ao, ao + ao + ao, 2},
        {2, ao, Word(), 0}, {2, ao, ao, 2},
        {0, Word(), ao, 2},                                       // advance move
    };
    for (const auto& e : core)
      expect(got.count(e) == 1, "core transition present");
    expect(got.size() == core.size() + 2,
           "exactly the 9 output-moving and 3 copy core transitions, plus the "
           "two mid-word advance moves the relation needs");

    Rng rng(301);
    std::vector<Resynchronizer> dks{build_dk("ab", 0), build_dk("ab", 1), build_dk("ab", 2)};
    int tested = 0;
    while (tested < 200) {
      SyncWord w = resync::testing::random_sync_word(rng, "ab", 6);
      SyncWord w2 = tested % 2 ? resync::testing::random_equivalent(rng, w)
                               : resync::testing::random_sync_word(rng, "ab", 6);
      ++tested;
      LagValue l = lag(w, w2);
      for (std::size_t k = 0; k <= 2; ++k) {
        bool member = accepts(apply(dks[k], single_word_nfa(dks[k].carrier.alphabet, w)), w2);
        expect(member == (!l.infinite && l.value <= k),
               "membership mismatch at k=" + std::to_string(k));
      }
    }
  });

  // 4. Synthesis for the echo transducer at K = 1, with the bounded acceptance
  //    check and the pending-output delay bound.
  criterion(4, "lookahead game synthesis at K = 1 with bounded delay", [&] {
    DratAnswer ans = drat_uniformize(r1, 1, {}, 6);
    expect(ans.yes, "the game at K = 1 is winning");
    if (!ans.yes) return;
    const Transducer& u = *ans.uniformizer;
    expect(is_sequential(u), "extracted transducer is sequential");
    std::size_t bound = delay_bound(r1, 1);
    Dfa dom = drat_domain_dfa(r1);
    int checked = 0;
    for (const Word& w : words_up_to(r1.alphabet, 6)) {
      if (!dom.accepts_word(w + endmarker)) continue;
      ++checked;
      std::optional<Word> out = run_sequential(u, w);
      expect(out.has_value(), "uniformizer defined on " + w);
      if (!out) continue;
      expect(dt_accepts(r1, w, *out), "accepts(t, u, U(u)) on " + w);
      Word full_out = *out + endmarker;
      int s = u.initial[0];
      std::size_t produced = 0;
      for (std::size_t i = 0; i <= w.size(); ++i) {
        DeltaStarResult rr = delta_star(r1, r1.initial, w.substr(0, i), full_out);
        std::size_t consumed = full_out.size() - rr.remaining_output.size();
        expect(consumed <= produced + bound, "pending output within (2K+1)M on " + w);
        if (i < w.size())
          for (const TransducerTransition& tr : u.transitions)
            if (tr.src == s && tr.input == Word(1, w[i])) {
              produced += tr.output.size();
              s = tr.dst;
              break;
            }
      }
    }
    expect(checked > 50, "enough domain words exercised");
  });

  // 5. Profile algebra on 100 random small deterministic transducers.
  criterion(5, "profile multiplicativity and structural laws", [&] {
    Rng rng(305);
    for (int it = 0; it < 100; ++it) {
      DetTransducer t = resync::testing::random_det_transducer(rng, "ab", 4);
      TransformationSeq s1 = rho_of_word(t, resync::testing::random_word(rng, "ab", 4));
      TransformationSeq s2 = rho_of_word(t, resync::testing::random_word(rng, "ab", 4));
      TransformationSeq joined = s1;
      joined.insert(joined.end(), s2.begin(), s2.end());
      expect(profile(t, joined) == profile_mul(profile(t, s1), profile(t, s2)),
             "profile(rho1 rho2) = profile(rho1) profile(rho2)");
      Profile p = profile(t, joined);
      for (int q1 = 0; q1 < p.n; ++q1) {
        int eps_target = -1;
        for (int q2 = 0; q2 < p.n; ++q2)
          if (p.get(q1, q2) == 2) {
            expect(eps_target < 0 || eps_target == q2, "unique epsilon target");
            eps_target = q2;
          }
      }
      if (!joined.empty()) {
        Profile before = profile(t, joined);
        Profile after = profile(t, {reduce_seq(t, joined)});
        for (int pp = 0; pp < before.n; ++pp)
          for (int q = 0; q < before.n; ++q)
            expect((before.get(pp, q) == 2) == (after.get(pp, q) == 2),
                   "epsilon traversals survive reduction exactly");
      }
    }
  });

  // 6. Traversal soundness: inputs and traversal outputs drive delta-star to
  //    the predicted state, on at least 100 sampled triples.
  criterion(6, "traversal words simulate the transducer", [&] {
    Rng rng(306);
    int checked = 0;
    for (int it = 0; it < 400 && checked < 120; ++it) {
      DetTransducer t = it % 2 ? r1 : resync::testing::random_det_transducer(rng, "ab", 4);
      Word u = resync::testing::random_word(rng, t.alphabet, 4);
      TransformationSeq rho = rho_of_word(t, u);
      for (int p = 0; p < t.num_states && checked < 120; ++p)
        for (int q = 0; q < t.num_states && checked < 120; ++q) {
          Nfa a = lout_automaton(t, p, rho, q);
          for (const Word& v : enumerate_language(a, 4)) {
            expect(delta_star(t, p, u, v) == DeltaStarResult{q, "", ""},
                   "delta*(p, u, v) = (q, eps, eps)");
            ++checked;
            break;
          }
        }
    }
    expect(checked >= 100, "at least 100 sampled triples");
  });

  // 7. Monoid structure of unions of unambiguous transducers, and the
  //    image-preservation of the pumping functions with k = 1.
  criterion(7, "transition monoid shape and pumping invariance", [&] {
    Rng rng(307);
    int pumped = 0;
    for (int it = 0; it < 30; ++it) {
      Transducer t = resync::testing::random_union_of_unambiguous(rng, "ab", 2, 3, 1);
      if (t.num_states == 0) continue;
      for (const MonoidElement& m : generate_monoid(t)) {
        expect(!is_s_form(m), "no s-form in the generated monoid");
        if (!is_idempotent(m)) continue;
        for (int p = 0; p < m.n; ++p)
          for (int q = 0; q < m.n; ++q)
            if (m.get(p, q))
              expect(z_form_witness(m, p, q).has_value(), "z-form witness exists");
      }
      while (pumped < 100) {
        Word v = resync::testing::random_word(rng, "ab", 6);
        expect(sigma(t, phi(t, v, 1)) == sigma(t, v), "sigma(phi(v)) = sigma(v)");
        expect(sigma(t, rho_pump(t, v, 1)) == sigma(t, v), "sigma(rho(v)) = sigma(v)");
        ++pumped;
        if (pumped % 10 == 0) break;  // spread over several transducers
      }
    }
    expect(pumped >= 100, "100 pumped samples");
  });

  // 8. The delay laws, each over at least 500 random instances.
  criterion(8, "delay laws on random words", [&] {
    Rng rng(308);
    // triangle bound
    for (int it = 0; it < 500; ++it) {
      Word u1 = resync::testing::random_word(rng, "ab", 4);
      Word u2 = resync::testing::random_word(rng, "ab", 4);
      Word u3 = resync::testing::random_word(rng, "ab", 4);
      Word v1 = resync::testing::random_word(rng, "ab", 4);
      Word v2 = resync::testing::random_word(rng, "ab", 4);
      Word v3 = resync::testing::random_word(rng, "ab", 4);
      expect(del(u1 + u2 + u3, v1 + v2 + v3).size() <=
                 del(u1 + u2, v1 + v2).size() + u3.size() + v3.size(),
             "triangle bound");
    }
    // pairwise distinct iterated delays
    int folk = 0;
    for (int it = 0; folk < 500 && it < 20000; ++it) {
      Word v1 = resync::testing::random_word(rng, "ab", 4);
      Word v2 = resync::testing::random_word(rng, "ab", 3);
      Word w1 = resync::testing::random_word(rng, "ab", 4);
      Word w2 = resync::testing::random_word(rng, "ab", 3);
      if (del(v1, w1) == del(v1 + v2, w1 + w2)) continue;
      ++folk;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j <= 4; ++j)
          expect(del(v1 + power(v2, i), w1 + power(w2, i)) !=
                     del(v1 + power(v2, j), w1 + power(w2, j)),
                 "iterated delays pairwise distinct");
    }
    expect(folk >= 500, "500 divergent-iteration instances");
    // loop stability
    int stable = 0;
    for (int it = 0; stable < 500 && it < 40000; ++it) {
      Word x1 = resync::testing::random_word(rng, "ab", 3);
      Word x2 = resync::testing::random_word(rng, "ab", 2);
      Word x3 = resync::testing::random_word(rng, "ab", 3);
      Word y1 = resync::testing::random_word(rng, "ab", 3);
      Word y2 = it % 2 ? x2 : resync::testing::random_word(rng, "ab", 2);
      Word y3 = resync::testing::random_word(rng, "ab", 3);
      std::size_t n = 2;
      if (del(x1, y1).size() > n) continue;
      if (del(x1 + power(x2, 3 * n), y1 + power(y2, 3 * n)).size() > n) continue;
      ++stable;
      expect(del(x1 + power(x2, 3 * n) + x3, y1 + power(y2, 3 * n) + y3) ==
                 del(x1 + x3, y1 + y3),
             "loop-stable delay");
    }
    expect(stable >= 500, "500 loop-stability instances");
    // lag recursion
    for (int it = 0; it < 500; ++it) {
      Word in = resync::testing::random_word(rng, "ab", 3);
      SyncWord base;
      for (Letter a : in) base.push_back(in_letter(a));
      SyncWord u = resync::testing::random_equivalent(
          rng, base + colored(resync::testing::random_word(rng, "ab", 3), true));
      SyncWord v = resync::testing::random_equivalent(
          rng, base + colored(resync::testing::random_word(rng, "ab", 3), true));
      Word us = resync::testing::random_word(rng, "ab", 3);
      Word vs = resync::testing::random_word(rng, "ab", 3);
      SyncWord lu = u + SyncWord(1, in_letter('a')) + colored(us, true);
      SyncWord lv = v + SyncWord(1, in_letter('a')) + colored(vs, true);
      LagValue prefix = lag_aligned(u, v);
      std::size_t tail = del(project(u, true) + us, project(v, true) + vs).size();
      expect(!prefix.infinite &&
                 lag_aligned(lu, lv) == LagValue::finite(std::max(prefix.value, tail)),
             "lag recursion step");
    }
  });

  // 9. The attractor solver against a brute-force fixpoint on 50 random
  //    20-vertex games, and re-verification of every synthesized uniformizer.
  criterion(9, "game solver oracle and synthesis soundness", [&] {
    Rng rng(309);
    for (int it = 0; it < 50; ++it) {
      SafetyGame g;
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      for (int v = 0; v < 20; ++v)
        g.add_vertex(coin(rng) < 0.5 ? Player::input : Player::output, coin(rng) < 0.2);
      for (int v = 0; v < 20; ++v)
        for (int w = 0; w < 20; ++w)
          if (coin(rng) < 0.15) g.edges[v].push_back({w, Word()});
      GameSolution fast = solve_safety(g);
      // independent fixpoint iteration
      std::vector<char> attr(g.bad.begin(), g.bad.end());
      for (std::size_t v = 0; v < g.size(); ++v)
        if (g.owner[v] == Player::output && g.edges[v].empty()) attr[v] = 1;
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t v = 0; v < g.size(); ++v) {
          if (attr[v]) continue;
          bool into;
          if (g.owner[v] == Player::input) {
            into = false;
            for (const GameEdge& e : g.edges[v]) into = into || attr[e.dst];
          } else {
            into = !g.edges[v].empty();
            for (const GameEdge& e : g.edges[v]) into = into && attr[e.dst];
          }
          if (into) attr[v] = changed = true;
        }
      }
      for (std::size_t v = 0; v < g.size(); ++v)
        expect(fast.winning[v] == (attr[v] ? 0 : 1), "region matches brute force");
    }

    int synthesized = 0;
    for (int it = 0; it < 40; ++it) {
      Transducer t = resync::testing::random_transducer(rng, "ab", 2, 3, 1);
      if (is_empty(domain_automaton(t))) continue;
      for (const Resynchronizer& s : {identity_resync("ab"), build_dk("ab", 1)}) {
        std::optional<Transducer> u = seq_s_uniformizable(t, s);
        if (u) {
          ++synthesized;
          expect(verify_uniformizer(*u, t, s), "synthesized uniformizer verifies");
        }
      }
    }
    expect(synthesized >= 5, "several synthesized instances");
  });

  // 10. The bound formulas as exact big integers.
  criterion(10, "bound formulas on degenerate instances", [&] {
    Transducer one;
    one.alphabet = "a";
    int q = one.add_state();
    one.initial = {q};
    one.finals = {q};
    one.add_transition(q, "a", "a", q);
    expect(inclusion_bound_k(one, one, 1) == 12, "inclusion bound = 12");
    expect(nt_bound(one) == 16, "uniformization bound = 16");
    expect(ramsey4_bound(1) == 4, "clamped four-clique bound");
    expect(ramsey3_bound(1) == 3, "triangle bound at one colour");
    DetTransducer pair;
    pair.alphabet = "a";
    pair.num_states = 2;
    pair.input_state = {true, true};
    pair.finals = {true, false};
    pair.initial = 0;
    pair.next = {{1, 1}, {1, 1}};
    expect(ramsey_K(pair) >= 3, "saturation bound is at least 3");
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
            << "\n";
  return failures == 0 ? 0 : 1;
}
