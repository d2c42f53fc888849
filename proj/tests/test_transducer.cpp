#include "doctest.h"

#include "resync/textio.hpp"
#include "resync/transducer.hpp"
#include "support.hpp"

using namespace resync;
using resync::testing::Rng;
using resync::testing::words_up_to;

namespace {

// Brute-force relation membership by searching runs directly.
bool slow_pair(const Transducer& t, const Word& u, const Word& v) {
  std::set<std::tuple<int, std::size_t, std::size_t>> seen;
  std::deque<std::tuple<int, std::size_t, std::size_t>> work;
  for (int q : t.initial) work.push_back({q, 0, 0});
  while (!work.empty()) {
    auto [q, i, j] = work.front();
    work.pop_front();
    if (!seen.insert({q, i, j}).second) continue;
    if (i == u.size() && t.is_final(q) &&
        v.compare(j, Word::npos, t.final_output[q]) == 0)
      return true;
    for (const TransducerTransition& tr : t.transitions) {
      if (tr.src != q) continue;
      if (u.compare(i, tr.input.size(), tr.input) != 0 || i + tr.input.size() > u.size())
        continue;
      if (v.compare(j, tr.output.size(), tr.output) != 0 || j + tr.output.size() > v.size())
        continue;
      work.push_back({tr.dst, i + tr.input.size(), j + tr.output.size()});
    }
  }
  return false;
}

}  // namespace

TEST_CASE("underlying automaton of the doubling loop") {
  Transducer t;
  t.alphabet = "a";
  int p = t.add_state();
  t.initial = {p};
  t.finals = {p};
  t.add_transition(p, "a", "aa", p);
  Nfa a = underlying_automaton(t);
  CHECK(accepts(a, parse_sync_word("i.a o.a o.a")));
  CHECK(accepts(a, SyncWord()));
  CHECK(!accepts(a, parse_sync_word("i.a o.a")));

  Transducer none;
  none.alphabet = "a";
  none.add_state();
  none.initial = {0};
  CHECK(is_empty(underlying_automaton(none)));
}

TEST_CASE("sync words project to relation pairs") {
  Rng rng(21);
  for (int it = 0; it < 20; ++it) {
    Transducer t = resync::testing::random_transducer(rng, "ab", 3, 5, 2);
    Nfa a = underlying_automaton(t);
    std::set<Word> inputs;
    for (const Word& w : enumerate_language(a, 6)) {
      CHECK(slow_pair(t, project(w, false), project(w, true)));
      inputs.insert(project(w, false));
    }
    // the input projection of the sync language is the domain
    Nfa dom = domain_automaton(t);
    for (const Word& u : words_up_to("ab", 3))
      if (inputs.count(u)) CHECK(accepts(dom, u));
  }
}

TEST_CASE("nivat round trip") {
  // single word a^in b^out
  Nfa a = single_word_nfa(colored_alphabet("ab"),
                          SyncWord{in_letter('a'), out_letter('b')});
  Transducer t = from_sync_language(a);
  CHECK(evaluate_pair(t, "a", "b"));
  CHECK(!evaluate_pair(t, "a", "a"));
  CHECK(!evaluate_pair(t, "b", "b"));

  Nfa empty;
  empty.alphabet = colored_alphabet("ab");
  empty.num_states = 1;
  empty.initial = {0};
  CHECK(is_empty(domain_automaton(from_sync_language(empty))));

  // round trip on the shipped transducers and random ones
  Rng rng(22);
  std::vector<Transducer> pool{resync::testing::fig_t1(), resync::testing::fig_t2()};
  for (int it = 0; it < 10; ++it)
    pool.push_back(resync::testing::random_transducer(rng, "ab", 3, 5, 2));
  for (const Transducer& t0 : pool) {
    Transducer t1 = from_sync_language(underlying_automaton(t0));
    for (const Word& u : words_up_to(t0.alphabet, 5))
      for (const Word& v : words_up_to(t0.alphabet, 5))
        CHECK(slow_pair(t0, u, v) == slow_pair(t1, u, v));
  }
}

TEST_CASE("structural predicates on the shipped transducers") {
  CHECK(is_sequential(resync::testing::fig_u()));
  CHECK(is_real_time(resync::testing::fig_t1()));
  CHECK(is_real_time(resync::testing::fig_t()));
  CHECK(!is_sequential(resync::testing::fig_t()));

  // domain of T is a*A + a+ B (the epsilon-B edge needs one a first)
  Nfa dom = domain_automaton(resync::testing::fig_t());
  CHECK(accepts(dom, "A"));
  CHECK(accepts(dom, "aaA"));
  CHECK(accepts(dom, "aB"));
  CHECK(!accepts(dom, "B"));
  CHECK(!accepts(dom, "aa"));
  for (const Word& w : words_up_to("aAB", 6)) {
    bool expected = false;
    for (const Word& v : words_up_to("aAB", 6))
      if (slow_pair(resync::testing::fig_t(), w, v)) expected = true;
    CHECK(accepts(dom, w) == expected);
  }
}

TEST_CASE("real-time conversion") {
  Transducer t;
  t.alphabet = "abc";
  int p = t.add_state(), q = t.add_state();
  t.initial = {p};
  t.finals = {q};
  t.add_transition(p, "ab", "c", q);
  Transducer r = to_real_time(t);
  CHECK(is_real_time(r));
  CHECK(evaluate_pair(r, "ab", "c"));
  CHECK(!evaluate_pair(r, "a", "c"));

  // productive epsilon-input loop: {(a, a^n)} is not real-time
  Transducer bad;
  bad.alphabet = "a";
  int s = bad.add_state();
  bad.initial = {s};
  bad.finals = {s};
  bad.add_transition(s, "", "a", s);
  CHECK_THROWS_AS(to_real_time(bad), input_error);

  Rng rng(23);
  int converted = 0;
  for (int it = 0; it < 30; ++it) {
    Transducer x = resync::testing::random_transducer(rng, "ab", 3, 5, 2);
    // sprinkle epsilon-input transitions
    x.add_transition(0, "", "b", x.num_states - 1);
    Transducer y;
    try {
      y = to_real_time(x);
    } catch (const input_error&) {
      continue;
    }
    ++converted;
    CHECK(is_real_time(y));
    for (const Word& u : words_up_to("ab", 4))
      for (const Word& v : words_up_to("ab", 4))
        CHECK(slow_pair(x, u, v) == evaluate_pair(y, u, v));
  }
  CHECK(converted > 5);
}

TEST_CASE("output enumeration on the doubling transducer") {
  Transducer t1 = resync::testing::fig_t1();
  CHECK(enumerate_outputs(t1, "aaa", 10) == std::set<Word>{"", "aa", "aaaa"});
  CHECK(enumerate_outputs(t1, "", 10).empty());  // empty input not in dom
  Rng rng(24);
  for (int it = 0; it < 20; ++it) {
    Transducer t = resync::testing::random_transducer(rng, "ab", 3, 5, 2);
    for (const Word& u : words_up_to("ab", 4)) {
      std::set<Word> got = enumerate_outputs(t, u, 6);
      for (const Word& v : words_up_to("ab", 6)) {
        bool member = slow_pair(t, u, v);
        CHECK(got.count(v) == (member ? 1u : 0u));
      }
    }
  }
}

TEST_CASE("pair evaluation on the shipped transducers") {
  Transducer t1 = resync::testing::fig_t1();
  Transducer t2 = resync::testing::fig_t2();
  Transducer t = resync::testing::fig_t();
  CHECK(relation_equal_bounded(t1, t2, 6));
  CHECK(!evaluate_pair(t1, "a", "aa"));
  CHECK(evaluate_pair(t, "aA", "a"));
  CHECK(evaluate_pair(t, "aB", "a"));
  CHECK(!evaluate_pair(t, "aB", "aa"));  // outputs for a^1 B go up to a^1 only
  CHECK(evaluate_pair(t, "aaB", "aaa"));
}

TEST_CASE("sequential transducers have at most one output") {
  Transducer u = resync::testing::fig_u();
  for (const Word& w : words_up_to("aAB", 5)) {
    std::set<Word> outs = enumerate_outputs(u, w, 8);
    CHECK(outs.size() <= 1);
    std::optional<Word> run = run_sequential(u, w);
    if (run)
      CHECK(outs == std::set<Word>{*run});
    else
      CHECK(outs.empty());
  }
}

TEST_CASE("union and bounded relation equality") {
  Transducer t1 = resync::testing::fig_t1();
  Transducer t2 = resync::testing::fig_t2();
  Transducer both = unite(t1, t2);
  for (const Word& u : words_up_to("a", 5)) {
    std::set<Word> a = enumerate_outputs(t1, u, 12);
    std::set<Word> b = enumerate_outputs(t2, u, 12);
    std::set<Word> c = enumerate_outputs(both, u, 12);
    std::set<Word> ab = a;
    ab.insert(b.begin(), b.end());
    CHECK(c == ab);
  }
  CHECK(relation_equal_bounded(t1, unite(t1, t1), 5));
}
