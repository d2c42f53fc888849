#include "resync/monoid.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace resync {

namespace {

std::size_t row_words(int n) { return (static_cast<std::size_t>(n) + 63) / 64; }

}  // namespace

MonoidElement MonoidElement::identity(int n) {
  MonoidElement m = empty(n);
  for (int i = 0; i < n; ++i) m.set(i, i);
  return m;
}

MonoidElement MonoidElement::empty(int n) {
  MonoidElement m;
  m.n = n;
  m.bits.assign(row_words(n) * static_cast<std::size_t>(n), 0);
  return m;
}

bool MonoidElement::get(int p, int q) const {
  return (bits[static_cast<std::size_t>(p) * row_words(n) + static_cast<std::size_t>(q) / 64] >>
          (q % 64)) & 1u;
}

void MonoidElement::set(int p, int q) {
  bits[static_cast<std::size_t>(p) * row_words(n) + static_cast<std::size_t>(q) / 64] |=
      std::uint64_t(1) << (q % 64);
}

MonoidElement monoid_mul(const MonoidElement& a, const MonoidElement& b) {
  MonoidElement c = MonoidElement::empty(a.n);
  std::size_t w = row_words(a.n);
  for (int p = 0; p < a.n; ++p)
    for (int r = 0; r < a.n; ++r)
      if (a.get(p, r))
        for (std::size_t j = 0; j < w; ++j)
          c.bits[static_cast<std::size_t>(p) * w + j] |=
              b.bits[static_cast<std::size_t>(r) * w + j];
  return c;
}

bool is_idempotent(const MonoidElement& m) { return monoid_mul(m, m) == m; }

MonoidElement sigma(const Transducer& t, const Word& w) {
  if (!is_real_time(t)) throw input_error("sigma needs a real-time transducer");
  MonoidElement m = MonoidElement::identity(t.num_states);
  for (Letter a : w) {
    MonoidElement step = MonoidElement::empty(t.num_states);
    for (const TransducerTransition& tr : t.transitions)
      if (tr.input[0] == a) step.set(tr.src, tr.dst);
    m = monoid_mul(m, step);
  }
  return m;
}

bool is_s_form(const MonoidElement& m) {
  for (int q1 = 0; q1 < m.n; ++q1) {
    if (!m.get(q1, q1)) continue;
    for (int q2 = 0; q2 < m.n; ++q2)
      if (q2 != q1 && m.get(q1, q2) && m.get(q2, q2)) return true;
  }
  return false;
}

std::optional<int> z_form_witness(const MonoidElement& m, int q1, int q2) {
  if (!is_idempotent(m)) throw input_error("z_form_witness needs an idempotent");
  if (!m.get(q1, q2)) throw input_error("z_form_witness needs (q1,q2) in m");
  for (int q = 0; q < m.n; ++q)
    if (m.get(q1, q) && m.get(q, q) && m.get(q, q2)) return q;
  return std::nullopt;
}

std::vector<MonoidElement> generate_monoid(const Transducer& t, const Limits& limits) {
  if (!is_real_time(t)) throw input_error("monoid generation needs a real-time transducer");
  std::vector<MonoidElement> gens;
  for (Letter a : t.alphabet) gens.push_back(sigma(t, Word(1, a)));

  std::set<std::vector<std::uint64_t>> seen;
  std::vector<MonoidElement> elems;
  std::deque<MonoidElement> work;
  auto push = [&](const MonoidElement& m) {
    if (seen.insert(m.bits).second) {
      elems.push_back(m);
      work.push_back(m);
      if (elems.size() > limits.max_monoid)
        throw cap_exceeded("transition monoid exceeds the element cap");
    }
  };
  push(MonoidElement::identity(t.num_states));
  while (!work.empty()) {
    MonoidElement m = work.front();
    work.pop_front();
    for (const MonoidElement& g : gens) push(monoid_mul(m, g));
  }
  return elems;
}

std::optional<std::array<std::size_t, 4>> find_idempotent_triple(
    const Transducer& t, const std::vector<Word>& blocks) {
  std::size_t n = blocks.size();
  std::vector<MonoidElement> bs;
  for (const Word& b : blocks) bs.push_back(sigma(t, b));
  // seg[i][j] = sigma(v_i ... v_{j-1}) for 1-based boundaries i <= j <= n+1.
  std::vector<std::vector<MonoidElement>> segs(n + 2);
  for (std::size_t i = 1; i <= n + 1; ++i) {
    segs[i].assign(n + 2 - i, MonoidElement::identity(t.num_states));
    for (std::size_t j = i + 1; j <= n + 1; ++j)
      segs[i][j - i] = monoid_mul(segs[i][j - 1 - i], bs[j - 2]);
  }
  auto seg = [&](std::size_t i, std::size_t j) -> const MonoidElement& {
    return segs[i][j - i];
  };
  for (std::size_t i1 = 1; i1 <= n + 1; ++i1)
    for (std::size_t i2 = i1 + 1; i2 <= n + 1; ++i2)
      for (std::size_t i3 = i2 + 1; i3 <= n + 1; ++i3)
        for (std::size_t i4 = i3 + 1; i4 <= n + 1; ++i4) {
          MonoidElement a = seg(i1, i2);
          if (!is_idempotent(a)) continue;
          if (seg(i2, i3) == a && seg(i3, i4) == a) return std::array{i1, i2, i3, i4};
        }
  return std::nullopt;
}

PumpDecomposition decompose_for_pumping(const Transducer& t, const Word& v) {
  if (!is_real_time(t)) throw input_error("pumping needs a real-time transducer");
  std::size_t len = v.size();
  // sigma of every factor v[i..j).
  std::vector<std::vector<MonoidElement>> fac(len + 1);
  for (std::size_t i = 0; i <= len; ++i) {
    fac[i].assign(len + 1 - i, MonoidElement::identity(t.num_states));
    for (std::size_t j = i + 1; j <= len; ++j)
      fac[i][j - i] = monoid_mul(fac[i][j - 1 - i], sigma(t, Word(1, v[j - 1])));
  }
  auto factor = [&](std::size_t i, std::size_t j) -> const MonoidElement& {
    return fac[i][j - i];
  };

  PumpDecomposition d;
  // All decompositions v = wxyz with x, y non-empty factors sharing one
  // idempotent image.  The sort keys (|wx|, |y|, |x|) determine the quadruple.
  struct Key {
    std::size_t wx, ylen, xlen;
    bool operator<(const Key& o) const {
      return std::tie(wx, ylen, xlen) < std::tie(o.wx, o.ylen, o.xlen);
    }
  };
  std::vector<Key> keys;
  for (std::size_t wx = 1; wx <= len; ++wx)
    for (std::size_t xlen = 1; xlen <= wx; ++xlen)
      for (std::size_t ylen = 1; wx + ylen <= len; ++ylen) {
        const MonoidElement& mx = factor(wx - xlen, wx);
        if (!(mx == factor(wx, wx + ylen))) continue;
        if (!is_idempotent(mx)) continue;
        keys.push_back({wx, ylen, xlen});
      }
  std::sort(keys.begin(), keys.end());
  for (const Key& key : keys)
    d.quads.push_back({v.substr(0, key.wx - key.xlen),
                       v.substr(key.wx - key.xlen, key.xlen),
                       v.substr(key.wx, key.ylen),
                       v.substr(key.wx + key.ylen)});

  std::size_t n = d.quads.size();
  d.pieces.assign(n + 1, Word());
  std::size_t prev = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t end = d.quads[i].w.size() + d.quads[i].x.size();
    d.pieces[i] = v.substr(prev, end - prev);
    prev = end;
  }
  d.pieces[n] = v.substr(prev);

  d.cut = n + 1;
  for (std::size_t i = 0; i < n; ++i)
    if (d.quads[i].z.empty()) {
      d.cut = i + 1;
      break;
    }
  return d;
}

namespace {

Word repeat(const Word& w, std::size_t times) {
  Word r;
  r.reserve(w.size() * times);
  for (std::size_t i = 0; i < times; ++i) r += w;
  return r;
}

}  // namespace

Word phi(const Transducer& t, const Word& v, std::size_t k) {
  PumpDecomposition d = decompose_for_pumping(t, v);
  std::size_t n = d.quads.size();
  Word out;
  for (std::size_t i = 0; i < n; ++i) {
    out += d.pieces[i];
    out += repeat(d.quads[i].y, 12 * k);
  }
  out += d.pieces[n];
  return out;
}

Word phi_prime(const Transducer& t, const Word& v, std::size_t k) {
  if (k < 1) throw input_error("phi_prime needs k >= 1");
  PumpDecomposition d = decompose_for_pumping(t, v);
  std::size_t n = d.quads.size();
  if (d.cut == n + 1) return Word();
  Word out = repeat(d.quads[d.cut - 1].y, 12 * k - 1);
  for (std::size_t i = d.cut; i < n; ++i) {
    out += d.pieces[i];
    out += repeat(d.quads[i].y, 12 * k);
  }
  out += d.pieces[n];
  return out;
}

Word rho_pump(const Transducer& t, const Word& v, std::size_t k) {
  Word r;
  for (std::size_t i = 0; i < v.size(); ++i) {
    r.push_back(v[i]);
    r += phi_prime(t, v.substr(0, i + 1), k);
  }
  return r;
}

namespace {

struct Run {
  std::vector<int> states;  // length |v| + 1
  Word output;
};

// The unique accepting-prefix run of v from an initial state into q.
Run unique_run(const Transducer& t, const Word& v, int q) {
  if (!is_real_time(t)) throw input_error("run extraction needs a real-time transducer");
  std::vector<Run> found;
  struct Item {
    int state;
    std::size_t pos;
    std::vector<int> states;
    Word out;
  };
  std::deque<Item> work;
  for (int q0 : t.initial) work.push_back({q0, 0, {q0}, Word()});
  while (!work.empty()) {
    Item it = work.front();
    work.pop_front();
    if (it.pos == v.size()) {
      if (it.state == q) {
        found.push_back({it.states, it.out});
        if (found.size() > 1) throw input_error("run not unique");
      }
      continue;
    }
    for (const TransducerTransition& tr : t.transitions) {
      if (tr.src != it.state || tr.input[0] != v[it.pos]) continue;
      Item next = it;
      next.state = tr.dst;
      next.pos += 1;
      next.states.push_back(tr.dst);
      next.out += tr.output;
      work.push_back(std::move(next));
    }
  }
  if (found.empty()) throw input_error("no run");
  return found[0];
}

SyncWord run_sync_word(const Transducer& t, const Word& v, const Run& r) {
  SyncWord w;
  std::size_t out_pos = 0;
  int state = r.states[0];
  for (std::size_t i = 0; i < v.size(); ++i) {
    w.push_back(in_letter(v[i]));
    // Recover the transition taken to know the emitted block.
    for (const TransducerTransition& tr : t.transitions)
      if (tr.src == state && tr.dst == r.states[i + 1] && tr.input[0] == v[i] &&
          r.output.compare(out_pos, tr.output.size(), tr.output) == 0) {
        w += colored(tr.output, true);
        out_pos += tr.output.size();
        break;
      }
    state = r.states[i + 1];
  }
  return w;
}

}  // namespace

FreeGroupWord run_delay(const Transducer& t, const Word& v, int p, int q) {
  Run rp = unique_run(t, v, p);
  Run rq = unique_run(t, v, q);
  return del(rp.output, rq.output);
}

LagValue run_lag(const Transducer& t, const Word& v, int p, int q) {
  Run rp = unique_run(t, v, p);
  Run rq = unique_run(t, v, q);
  // Runs on the same input are compared on the aligned quantity; their
  // outputs are allowed to differ.
  return lag_aligned(run_sync_word(t, v, rp), run_sync_word(t, v, rq));
}

BigInt ramsey4_bound(const BigInt& colors) {
  // R(4; c) <= c^(4c), clamped so that four indices always fit.
  if (colors <= 0) return 4;
  unsigned exp = static_cast<unsigned>(4 * colors);
  BigInt b = boost::multiprecision::pow(colors, exp);
  return b < 4 ? BigInt(4) : b;
}

BigInt nt_bound(const Transducer& t, const Limits& limits) {
  std::vector<MonoidElement> monoid = generate_monoid(t, limits);
  BigInt colors = monoid.size();
  BigInt c_t = ramsey4_bound(colors);
  std::size_t m_t = std::max<std::size_t>(1, t.max_output_len());
  BigInt nt_prime = 2 * c_t * static_cast<std::size_t>(m_t);
  return 2 * BigInt(t.num_states) * nt_prime;
}

}  // namespace resync
