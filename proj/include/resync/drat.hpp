// Deterministic endmarked transducers, transformation sequences, profiles,
// and the lookahead game that decides their sequential uniformisation.

#ifndef RESYNC_DRAT_HPP
#define RESYNC_DRAT_HPP

#include <optional>
#include <utility>
#include <vector>

#include "resync/game.hpp"

namespace resync {

// States are partitioned into input-reading and output-reading ones; the
// transition function is total over the alphabet extended with the endmarker.
struct DetTransducer {
  Word alphabet;  // sorted user letters; the endmarker is implicit
  int num_states = 0;
  std::vector<bool> input_state;
  int initial = 0;
  std::vector<bool> finals;
  std::vector<std::vector<int>> next;  // next[state][extended letter index]

  std::size_t ext_size() const { return alphabet.size() + 1; }
  std::size_t ext_index(Letter a) const;  // the endmarker maps to the last slot
  Letter ext_letter(std::size_t i) const;
  int step(int q, Letter a) const { return next[q][ext_index(a)]; }

  // Input states in id order, and the position of a state in that list.
  const std::vector<int>& input_states() const;
  int input_pos(int q) const;  // -1 for output states

  void validate() const;  // partition, totality, initial declared

 private:
  mutable std::vector<int> input_states_;
  mutable std::vector<int> input_pos_;
  void build_index() const;
};

struct DeltaStarResult {
  int state;
  Word remaining_input;
  Word remaining_output;

  bool operator==(const DeltaStarResult&) const = default;
  bool settled() const { return remaining_input.empty() && remaining_output.empty(); }
};

// Applies the transition function to the next input letter from input states
// and to the next output letter from output states, as long as possible.
DeltaStarResult delta_star(const DetTransducer& t, int q, Word u, Word v);

// Membership of (u, v), endmarkers appended internally.  Words containing the
// endmarker are rejected as inputs.
bool dt_accepts(const DetTransducer& t, const Word& u, const Word& v);

// ---------------------------------------------------------------------------
// Transformation sequences.

// Partial map from input states to states; -1 encodes undefined.
struct Transformation {
  std::vector<int> map;  // indexed by input-state position

  bool operator==(const Transformation&) const = default;
  bool operator<(const Transformation& o) const { return map < o.map; }
};

using TransformationSeq = std::vector<Transformation>;

Transformation tau_of_letter(const DetTransducer& t, Letter a);
// Some input state is sent to an output state.
bool is_maximal(const DetTransducer& t, const Transformation& tau);

// The mixed concatenation / composition product on sequences.
TransformationSeq compose(const DetTransducer& t, const TransformationSeq& r1,
                          const TransformationSeq& r2);
TransformationSeq rho_of_word(const DetTransducer& t, const Word& u);
bool is_reduced(const DetTransducer& t, const TransformationSeq& rho);

bool is_consistent(const DetTransducer& t, const TransformationSeq& rho, const Word& u);

// <rho>: erase output-valued entries of all but the last transformation and
// compose everything into a single transformation.
Transformation reduce_seq(const DetTransducer& t, const TransformationSeq& rho);

// Automaton for L_out(p, rho, q), over the extended alphabet.
Nfa lout_automaton(const DetTransducer& t, int p, const TransformationSeq& rho, int q);

std::optional<Word> shortest_traversal(const DetTransducer& t, int p,
                                       const TransformationSeq& rho, int q);

// ---------------------------------------------------------------------------
// Profiles.

// cell(p, q): 0 = L_out empty, 1 = non-empty without eps, 2 = contains eps.
struct Profile {
  int n = 0;
  std::vector<std::uint8_t> cell;

  std::uint8_t get(int p, int q) const { return cell[static_cast<std::size_t>(p) * n + q]; }
  void set(int p, int q, std::uint8_t v) { cell[static_cast<std::size_t>(p) * n + q] = v; }
  bool operator==(const Profile&) const = default;
};

Profile profile(const DetTransducer& t, const TransformationSeq& rho);
Profile profile_mul(const Profile& p1, const Profile& p2);
bool is_idempotent(const Profile& p);
Profile profile_of_word(const DetTransducer& t, const Word& u);

// First split rho = rho1 rho2 rho3 with |rho1| >= 1, |rho2| >= 2, rho2
// idempotent and absorbed by rho1, and the same two conditions on the given
// per-position profile products.  Returns the boundary pair (|rho1|,
// |rho1| + |rho2|).
std::optional<std::pair<std::size_t, std::size_t>> find_saturation_witness(
    const DetTransducer& t, const TransformationSeq& rho,
    const std::vector<Profile>& profiles);

// ---------------------------------------------------------------------------
// The lookahead game.

struct DratGame {
  SafetyGame game;
  DetTransducer machine;  // endmarker-normalized copy the game runs on
  Word ext_alphabet;      // letters + endmarker
  Dfa domain_dfa;         // accepts dom . endmarker

  enum Kind : char { input_vertex, output_vertex };
  struct VertexInfo {
    Kind kind;
    int p;
    int rho;  // interned sequence id
    int d;
    Letter a;  // pending letter on output vertices
  };
  std::vector<VertexInfo> info;
  std::vector<TransformationSeq> seqs;  // intern pool
  std::size_t max_annotation = 0;       // longest traversal word on any edge
  // Per state, the shortest remaining output that drives it into acceptance;
  // a settled game position is good exactly when this exists.
  std::vector<std::optional<Word>> completion;
};

// Shortest z with delta*(p, eps, z) settled in an accepting state.
std::optional<Word> accepting_completion(const DetTransducer& t, int p);

// Equivalent machine that structurally rejects misplaced endmarkers: both
// endmarkers may occur once, at the end of their track, and acceptance
// requires both to have passed.  The relation is unchanged; the lookahead
// abstraction becomes sound for arbitrary inputs.
DetTransducer normalize_endmarkers(const DetTransducer& t);

// Domain automaton over the extended alphabet: accepts u . endmarker exactly
// when u is in the domain of the relation.
Dfa drat_domain_dfa(const DetTransducer& t, const Limits& limits = {});

DratGame build_drat_game(const DetTransducer& t, std::size_t big_k,
                         const Limits& limits = {});

struct DratAnswer {
  bool yes = false;
  std::size_t big_k = 0;
  std::optional<Transducer> uniformizer;  // set on yes
  // Per uniformizer state, the game vertex it came from; the components refer
  // to the normalized machine below.
  DetTransducer machine;
  std::vector<int> state_p;
  std::vector<TransformationSeq> state_rho;
  std::vector<int> state_d;
};

// Yes answers are sound for every K (the extracted transducer is checked by
// bounded simulation); No answers are only "no up to this K".
DratAnswer drat_uniformize(const DetTransducer& t, std::size_t big_k,
                           const Limits& limits = {},
                           std::size_t check_len = 6);

// (2K+1) * M with M the longest traversal annotation in the reachable game.
std::size_t delay_bound(const DetTransducer& t, std::size_t big_k,
                        const Limits& limits = {});
constexpr std::size_t delay_bound_formula(std::size_t big_k, std::size_t m) {
  return (2 * big_k + 1) * m;
}

// 3 c! with c the squared number of generated profile values: a coarse
// triangle Ramsey bound for the saturation length.
BigInt ramsey_K(const DetTransducer& t, const Limits& limits = {});
BigInt ramsey3_bound(const BigInt& colors);

std::string to_dot(const DetTransducer& t, const std::string& name = "drat");
std::string game_to_dot(const DratGame& dg);

}  // namespace resync

#endif  // RESYNC_DRAT_HPP
