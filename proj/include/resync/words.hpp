// Words, coloured synchronisation words, free-group reduction, delay and lag.

#ifndef RESYNC_WORDS_HPP
#define RESYNC_WORDS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace resync {

using Letter = char;
using Word = std::string;

// Endmarker used by deterministic transducers. Never part of a user alphabet.
constexpr Letter endmarker = '\x04';

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Coloured alphabet.  A letter of the two-coloured alphabet is packed into a
// single char: input-coloured letters keep their code, output-coloured
// letters have the high bit set.  User letters are restricted to the
// printable ASCII range, so the packing is injective.

constexpr char in_letter(Letter a) { return a; }

inline char out_letter(Letter a) {
  return static_cast<char>(static_cast<unsigned char>(a) | 0x80u);
}

inline bool is_out(char c) { return (static_cast<unsigned char>(c) & 0x80u) != 0; }

inline Letter base_letter(char c) {
  return static_cast<char>(static_cast<unsigned char>(c) & 0x7fu);
}

// The morphism u -> u^c.
Word colored(const Word& plain, bool out);

// Both colourings of every letter, in a fixed order (all inputs, all outputs).
Word colored_alphabet(const Word& plain_alphabet);

// A synchronisation word is a word over the coloured alphabet.
using SyncWord = Word;

// pi_in / pi_out: erase the letters of the other colour.
Word project(const SyncWord& w, bool out);

// w ~io w2: both projections agree.
bool io_equivalent(const SyncWord& w, const SyncWord& w2);

// ---------------------------------------------------------------------------
// Alphabets.

struct Alphabet {
  Word letters;  // sorted, duplicate-free

  explicit Alphabet(Word ls);

  bool contains(Letter a) const;
  std::size_t index_of(Letter a) const;  // throws input_error if absent
  std::size_t size() const { return letters.size(); }
};

// Checks every letter of w belongs to the alphabet.
void check_word(const Alphabet& sigma, const Word& w);

// ---------------------------------------------------------------------------
// Free group over the alphabet.

struct SignedLetter {
  Letter letter;
  bool inverse;

  auto operator<=>(const SignedLetter&) const = default;
};

// Irreducible word over Sigma u Sigma^-1; the carrier of delays.
class FreeGroupWord {
 public:
  FreeGroupWord() = default;

  // Reduces an arbitrary signed word to its unique irreducible form.
  static FreeGroupWord reduce(const std::vector<SignedLetter>& raw);
  // Embeds a plain word.
  static FreeGroupWord from_word(const Word& w);

  FreeGroupWord inverse() const;
  // Group product, reduced.
  FreeGroupWord concat(const FreeGroupWord& rhs) const;

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<SignedLetter>& letters() const { return letters_; }

  // u in Sigma^* (all exponents +1); the empty word counts as plain.
  bool is_plain() const;
  // u in (Sigma^-1)^*; the empty word counts here too.
  bool is_inverse() const;
  // The underlying plain word, ignoring signs.
  Word letters_word() const;

  bool operator==(const FreeGroupWord&) const = default;

 private:
  std::vector<SignedLetter> letters_;  // invariant: irreducible
};

// del(u, v) = reduce(u^-1 . v) for plain words u, v.
FreeGroupWord del(const Word& u, const Word& v);

// ---------------------------------------------------------------------------
// Lag.

// N u {oo}.  Infinity is a distinguished value, never a large integer.
struct LagValue {
  bool infinite = false;
  std::size_t value = 0;

  static LagValue inf() { return {true, 0}; }
  static LagValue finite(std::size_t v) { return {false, v}; }

  bool operator==(const LagValue&) const = default;
  bool operator<=(std::size_t k) const { return !infinite && value <= k; }
};

// Splits a sync word into its output blocks around the input letters:
// w = b_0 i_1 b_1 ... i_n b_n yields n+1 plain output blocks.
std::vector<Word> output_blocks(const SyncWord& w);

// Input letters of w, in order (plain word).
Word input_track(const SyncWord& w);

// Maximum |del| over input-aligned output prefixes (block boundaries and the
// word ends); oo when the input tracks differ.  This is the quantity the lag
// recursion speaks about, defined whether or not the outputs agree.
LagValue lag_aligned(const SyncWord& w, const SyncWord& w2);

// oo if not ~io-equivalent, else lag_aligned.
LagValue lag(const SyncWord& w, const SyncWord& w2);

// ---------------------------------------------------------------------------
// Resource limits shared by the state-space constructions.

struct Limits {
  std::size_t max_states = 1u << 20;     // determinisation / game vertices
  std::size_t max_monoid = 10000;        // transition-monoid generation
  std::size_t max_k = 32;                // largest k a decider will attempt
};

}  // namespace resync

#endif  // RESYNC_WORDS_HPP
