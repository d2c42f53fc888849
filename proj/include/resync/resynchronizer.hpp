// Resynchronisers over the coloured alphabet, the k-delay construction, and
// the inclusion / equivalence deciders modulo a resynchroniser.

#ifndef RESYNC_RESYNCHRONIZER_HPP
#define RESYNC_RESYNCHRONIZER_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include "resync/transducer.hpp"

namespace resync {

using BigInt = boost::multiprecision::cpp_int;

// A transducer over the coloured alphabet that contains the identity and
// preserves ~io.  The universal resynchroniser is not rational; it exists
// only as a marker and every decision routine rejects it.
struct Resynchronizer {
  bool universal = false;
  Transducer carrier;  // meaningful iff !universal

  static Resynchronizer universal_marker() { return {true, {}}; }
};

Resynchronizer identity_resync(const Word& alphabet);

// The k-delay resynchroniser: relates w to every w' with w ~io w' and
// lag(w, w') <= k.  States are the delays reachable within the bound.
Resynchronizer build_dk(const Word& alphabet, std::size_t k, const Limits& limits = {});

// S(L) for a regular L over the coloured alphabet.
Nfa apply(const Resynchronizer& s, const Nfa& l, const Limits& limits = {});

// L(t1) <= S(L(t2)); the counterexample is a sync word of t1 with no
// S-preimage in L(t2).
InclusionResult s_included(const Transducer& t1, const Transducer& t2,
                           const Resynchronizer& s, const Limits& limits = {});
bool s_equivalent(const Transducer& t1, const Transducer& t2,
                  const Resynchronizer& s, const Limits& limits = {});

InclusionResult k_included(const Transducer& t1, const Transducer& t2,
                           std::size_t k, const Limits& limits = {});
bool k_equivalent(const Transducer& t1, const Transducer& t2, std::size_t k,
                  const Limits& limits = {});

// The computable bound: inclusion of t1 in an m-ambiguous t2 holds iff it
// holds at delay 4 M |Q1| ((|D2||Q2|)^m 2^(|Q2||D2|) + 1).  Exact value.
BigInt inclusion_bound_k(const Transducer& t1, const Transducer& t2, unsigned m);

}  // namespace resync

#endif  // RESYNC_RESYNCHRONIZER_HPP
