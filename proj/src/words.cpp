#include "resync/words.hpp"

#include <algorithm>

namespace resync {

Word colored(const Word& plain, bool out) {
  Word r;
  r.reserve(plain.size());
  for (Letter a : plain) r.push_back(out ? out_letter(a) : in_letter(a));
  return r;
}

Word colored_alphabet(const Word& plain_alphabet) {
  Word r;
  r.reserve(2 * plain_alphabet.size());
  for (Letter a : plain_alphabet) r.push_back(in_letter(a));
  for (Letter a : plain_alphabet) r.push_back(out_letter(a));
  return r;
}

Word project(const SyncWord& w, bool out) {
  Word r;
  for (char c : w)
    if (is_out(c) == out) r.push_back(base_letter(c));
  return r;
}

bool io_equivalent(const SyncWord& w, const SyncWord& w2) {
  return project(w, false) == project(w2, false) &&
         project(w, true) == project(w2, true);
}

Alphabet::Alphabet(Word ls) : letters(std::move(ls)) {
  std::sort(letters.begin(), letters.end());
  if (letters.empty()) throw input_error("alphabet must be non-empty");
  if (std::adjacent_find(letters.begin(), letters.end()) != letters.end())
    throw input_error("alphabet has duplicate letters");
  for (Letter a : letters) {
    unsigned char base = static_cast<unsigned char>(base_letter(a));
    if (base < 0x21 || base > 0x7e)
      throw input_error("alphabet letters must be printable ASCII");
  }
}

bool Alphabet::contains(Letter a) const {
  return std::binary_search(letters.begin(), letters.end(), a);
}

std::size_t Alphabet::index_of(Letter a) const {
  auto it = std::lower_bound(letters.begin(), letters.end(), a);
  if (it == letters.end() || *it != a)
    throw input_error(std::string("letter not in alphabet: ") + a);
  return static_cast<std::size_t>(it - letters.begin());
}

void check_word(const Alphabet& sigma, const Word& w) {
  for (Letter a : w)
    if (!sigma.contains(a))
      throw input_error(std::string("letter not in alphabet: ") + a);
}

FreeGroupWord FreeGroupWord::reduce(const std::vector<SignedLetter>& raw) {
  FreeGroupWord r;
  for (const SignedLetter& s : raw) {
    if (!r.letters_.empty() && r.letters_.back().letter == s.letter &&
        r.letters_.back().inverse != s.inverse) {
      r.letters_.pop_back();
    } else {
      r.letters_.push_back(s);
    }
  }
  return r;
}

FreeGroupWord FreeGroupWord::from_word(const Word& w) {
  FreeGroupWord r;
  r.letters_.reserve(w.size());
  for (Letter a : w) r.letters_.push_back({a, false});
  return r;
}

FreeGroupWord FreeGroupWord::inverse() const {
  FreeGroupWord r;
  r.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    r.letters_.push_back({it->letter, !it->inverse});
  return r;
}

FreeGroupWord FreeGroupWord::concat(const FreeGroupWord& rhs) const {
  // Both sides are irreducible, so cancellation happens at the seam only.
  std::size_t cut = 0;
  while (cut < letters_.size() && cut < rhs.letters_.size()) {
    const SignedLetter& l = letters_[letters_.size() - 1 - cut];
    const SignedLetter& r = rhs.letters_[cut];
    if (l.letter == r.letter && l.inverse != r.inverse)
      ++cut;
    else
      break;
  }
  FreeGroupWord out;
  out.letters_.assign(letters_.begin(), letters_.end() - static_cast<long>(cut));
  out.letters_.insert(out.letters_.end(), rhs.letters_.begin() + static_cast<long>(cut),
                      rhs.letters_.end());
  return out;
}

bool FreeGroupWord::is_plain() const {
  return std::none_of(letters_.begin(), letters_.end(),
                      [](const SignedLetter& s) { return s.inverse; });
}

bool FreeGroupWord::is_inverse() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](const SignedLetter& s) { return s.inverse; });
}

Word FreeGroupWord::letters_word() const {
  Word w;
  w.reserve(letters_.size());
  for (const SignedLetter& s : letters_) w.push_back(s.letter);
  return w;
}

FreeGroupWord del(const Word& u, const Word& v) {
  return FreeGroupWord::from_word(u).inverse().concat(FreeGroupWord::from_word(v));
}

std::vector<Word> output_blocks(const SyncWord& w) {
  std::vector<Word> blocks(1);
  for (char c : w) {
    if (is_out(c))
      blocks.back().push_back(base_letter(c));
    else
      blocks.emplace_back();
  }
  return blocks;
}

Word input_track(const SyncWord& w) { return project(w, false); }

LagValue lag_aligned(const SyncWord& w, const SyncWord& w2) {
  if (input_track(w) != input_track(w2)) return LagValue::inf();
  std::vector<Word> bu = output_blocks(w);
  std::vector<Word> bv = output_blocks(w2);
  // Equal input projections give the same number of blocks.
  // Running delay d_j = (u_0..u_j)^-1 (v_0..v_j) = u_j^-1 d_{j-1} v_j.
  FreeGroupWord d;
  std::size_t best = 0;
  for (std::size_t j = 0; j < bu.size(); ++j) {
    d = FreeGroupWord::from_word(bu[j]).inverse().concat(d).concat(
        FreeGroupWord::from_word(bv[j]));
    best = std::max(best, d.size());
  }
  return LagValue::finite(best);
}

LagValue lag(const SyncWord& w, const SyncWord& w2) {
  if (!io_equivalent(w, w2)) return LagValue::inf();
  return lag_aligned(w, w2);
}

}  // namespace resync
