// Transition monoids of real-time transducers, their idempotent structure,
// and the pumping functions used for finite-valued uniformisation bounds.

#ifndef RESYNC_MONOID_HPP
#define RESYNC_MONOID_HPP

#include <array>
#include <optional>
#include <vector>

#include "resync/resynchronizer.hpp"
#include "resync/transducer.hpp"

namespace resync {

// A binary relation on the state set, as a bit matrix.
struct MonoidElement {
  int n = 0;
  std::vector<std::uint64_t> bits;  // row-major, ceil(n/64) words per row

  static MonoidElement identity(int n);
  static MonoidElement empty(int n);

  bool get(int p, int q) const;
  void set(int p, int q);
  bool operator==(const MonoidElement&) const = default;
  bool operator<(const MonoidElement& o) const { return bits < o.bits; }
};

// The morphism sending a word to its state-pair reachability relation.
// Requires a real-time transducer.
MonoidElement sigma(const Transducer& t, const Word& w);
MonoidElement monoid_mul(const MonoidElement& a, const MonoidElement& b);
bool is_idempotent(const MonoidElement& m);

// Distinct q1 != q2 with (q1,q1), (q1,q2), (q2,q2) all in m.
bool is_s_form(const MonoidElement& m);

// For an idempotent m and (q1,q2) in m, some q with (q1,q), (q,q), (q,q2).
std::optional<int> z_form_witness(const MonoidElement& m, int q1, int q2);

// Breadth-first closure of the letter relations under multiplication.
// Throws cap_exceeded past limits.max_monoid elements.
std::vector<MonoidElement> generate_monoid(const Transducer& t, const Limits& limits = {});

// First quadruple of block boundaries 1 <= i1 < i2 < i3 < i4 <= n+1 whose
// three consecutive groups map to one common idempotent.
std::optional<std::array<std::size_t, 4>> find_idempotent_triple(
    const Transducer& t, const std::vector<Word>& blocks);

struct PumpQuad {
  Word w, x, y, z;  // v = wxyz, sigma(x) = sigma(y) idempotent, x,y non-empty
  bool operator==(const PumpQuad&) const = default;
};

struct PumpDecomposition {
  std::vector<PumpQuad> quads;  // U_v, in the prescribed order
  std::vector<Word> pieces;     // v = v_1 ... v_{n+1}
  std::size_t cut = 0;          // l: n+1, or the first d with z_d empty
};

PumpDecomposition decompose_for_pumping(const Transducer& t, const Word& v);

// v_1 y_1^{12k} ... v_n y_n^{12k} v_{n+1}.
Word phi(const Transducer& t, const Word& v, std::size_t k);
// y_l^{12k-1} v_{l+1} y_{l+1}^{12k} ... v_{n+1}; empty when l = n+1.
Word phi_prime(const Transducer& t, const Word& v, std::size_t k);
// rho(eps) = eps, rho(wa) = rho(w) a phi'(wa).
Word rho_pump(const Transducer& t, const Word& v, std::size_t k);

// Delay / lag between the outputs of the unique runs of v into p and q.
// Requires the runs to exist and be unique (trim union of unambiguous).
FreeGroupWord run_delay(const Transducer& t, const Word& v, int p, int q);
LagValue run_lag(const Transducer& t, const Word& v, int p, int q);

// N_T = 2 |Q| N_T' with N_T' = 2 C_T m_T; C_T is a coarse multicolour
// Ramsey bound for a monochromatic 4-clique over |M_T| colours.
BigInt nt_bound(const Transducer& t, const Limits& limits = {});
// The 4-clique colour bound itself, exposed for the bound tests.
BigInt ramsey4_bound(const BigInt& colors);

}  // namespace resync

#endif  // RESYNC_MONOID_HPP
