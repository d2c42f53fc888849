// Safety games, the attractor solver, and sequential uniformiser synthesis.

#ifndef RESYNC_GAME_HPP
#define RESYNC_GAME_HPP

#include <optional>
#include <vector>

#include "resync/resynchronizer.hpp"
#include "resync/transducer.hpp"

namespace resync {

enum class Player { input, output };

struct GameEdge {
  int dst;
  Word annotation;
};

struct SafetyGame {
  std::vector<Player> owner;
  std::vector<char> bad;
  std::vector<std::vector<GameEdge>> edges;
  int initial = 0;

  int add_vertex(Player p, bool is_bad = false) {
    owner.push_back(p);
    bad.push_back(is_bad ? 1 : 0);
    edges.emplace_back();
    return static_cast<int>(owner.size()) - 1;
  }
  std::size_t size() const { return owner.size(); }
};

struct GameSolution {
  std::vector<char> winning;  // for the Output player
  std::vector<int> strategy;  // Output vertex -> chosen edge index, -1 outside

  bool initial_winning(const SafetyGame& g) const { return winning[g.initial] != 0; }
};

// Output wins from the complement of the least fixpoint attractor of the bad
// set for Input.  A vertex without moves loses for its owner.
GameSolution solve_safety(const SafetyGame& g);

// The uniformisation game for a transducer modulo a resynchroniser.  Player
// Input spells an input word (plus an explicit end move once the domain
// accepts); player Output answers with bounded output bursts tracked in the
// determinised automaton for S(L(T)).
struct UniformizationGame {
  SafetyGame game;
  Word alphabet;  // plain input alphabet

  enum Kind : char { input_vertex, output_vertex, end_vertex, done_vertex };
  struct VertexInfo {
    Kind kind;
    int b;  // state of the S(L(T)) DFA
    int d;  // state of the domain DFA
    Letter a;  // pending letter on output vertices
  };
  std::vector<VertexInfo> info;
  Dfa sync_dfa;    // over the coloured alphabet
  Dfa domain_dfa;  // over the plain alphabet
};

// burst_bound caps the length of output bursts; 0 means the number of states
// of the sync DFA, which already reaches everything a burst can reach.
UniformizationGame build_uniformization_game(const Transducer& t,
                                             const Resynchronizer& s,
                                             const Limits& limits = {},
                                             std::size_t burst_bound = 0);

// Reads the positional strategy off the winning region.  Requires the
// initial vertex to be winning.
Transducer extract_sequential_uniformizer(const UniformizationGame& ug,
                                          const GameSolution& sol);

// Solve-and-extract; every synthesised transducer is re-verified before it is
// returned, and a verification failure is a hard error.
std::optional<Transducer> seq_s_uniformizable(const Transducer& t,
                                              const Resynchronizer& s,
                                              const Limits& limits = {});

// L(u) <= S(L(t)) and dom(u) = dom(t); both checks are exact.
bool verify_uniformizer(const Transducer& u, const Transducer& t,
                        const Resynchronizer& s, const Limits& limits = {});

std::string game_to_dot(const UniformizationGame& ug);

}  // namespace resync

#endif  // RESYNC_GAME_HPP
