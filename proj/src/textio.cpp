#include "resync/textio.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace resync {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw input_error("line " + std::to_string(line) + ": " + msg);
}

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream ls(raw);
    Line l{number, {}};
    std::string tok;
    while (ls >> tok) l.tokens.push_back(tok);
    if (!l.tokens.empty()) lines.push_back(std::move(l));
  }
  return lines;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// Plain letters are single characters; the coloured alphabet is written with
// i.<letter> / o.<letter> tokens (and words over it as comma-separated
// tokens), so resynchronizer carriers serialize in the same format.
Letter parse_letter(int line, const std::string& tok) {
  char c;
  if (tok.size() == 1) {
    c = tok[0];
    if (c == '.' || c == ',') fail(line, "'.' and ',' cannot be letters");
  } else if (tok.size() == 3 && tok[1] == '.' && (tok[0] == 'i' || tok[0] == 'o')) {
    c = tok[0] == 'o' ? out_letter(tok[2]) : in_letter(tok[2]);
  } else {
    fail(line, "bad letter token '" + tok + "'");
  }
  if (base_letter(c) == endmarker) fail(line, "the endmarker cannot be a letter");
  return c;
}

Word parse_word(int line, const Alphabet& sigma, const std::string& tok) {
  if (tok == "eps") return Word();
  Word w;
  if (tok.find('.') != std::string::npos) {
    for (const std::string& piece : split_commas(tok)) w.push_back(parse_letter(line, piece));
  } else {
    w = tok;
  }
  for (char c : w)
    if (!sigma.contains(c))
      fail(line, std::string("letter not in alphabet: ") + base_letter(c));
  return w;
}

bool has_colored(const Word& alphabet) {
  return std::any_of(alphabet.begin(), alphabet.end(), [](char c) { return is_out(c); });
}

std::string letter_token(char c, bool colored) {
  if (!colored) return std::string(1, c);
  return std::string(is_out(c) ? "o." : "i.") + base_letter(c);
}

std::string word_token(const Word& w, bool colored) {
  if (w.empty()) return "eps";
  if (!colored) return w;
  std::string s;
  for (char c : w) {
    if (!s.empty()) s += ",";
    s += letter_token(c, true);
  }
  return s;
}

Transducer parse_transducer_body(const std::vector<Line>& lines, std::size_t at) {
  Transducer t;
  std::map<std::string, int> state_id;
  std::optional<Alphabet> sigma;
  auto lookup = [&](int line, const std::string& s) {
    auto it = state_id.find(s);
    if (it == state_id.end()) fail(line, "undeclared state '" + s + "'");
    return it->second;
  };
  for (std::size_t i = at; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& kw = l.tokens[0];
    if (kw == "alphabet") {
      if (l.tokens.size() != 2) fail(l.number, "alphabet takes one comma-separated list");
      Word letters;
      for (const std::string& s : split_commas(l.tokens[1]))
        letters.push_back(parse_letter(l.number, s));
      sigma.emplace(letters);
      t.alphabet = sigma->letters;
    } else if (kw == "states") {
      if (l.tokens.size() != 2) fail(l.number, "states takes one comma-separated list");
      for (const std::string& s : split_commas(l.tokens[1])) {
        if (state_id.count(s)) fail(l.number, "duplicate state '" + s + "'");
        state_id[s] = t.add_state();
      }
    } else if (kw == "initial") {
      for (std::size_t j = 1; j < l.tokens.size(); ++j)
        t.initial.push_back(lookup(l.number, l.tokens[j]));
    } else if (kw == "final") {
      if (l.tokens.size() < 2 || l.tokens.size() > 3) fail(l.number, "final <state> [word]");
      if (!sigma) fail(l.number, "alphabet must come before final outputs");
      int q = lookup(l.number, l.tokens[1]);
      t.finals.push_back(q);
      t.final_output[q] =
          l.tokens.size() == 3 ? parse_word(l.number, *sigma, l.tokens[2]) : Word();
    } else if (kw == "trans") {
      if (l.tokens.size() != 5) fail(l.number, "trans <src> <in> <out> <dst>");
      if (!sigma) fail(l.number, "alphabet must come before transitions");
      t.add_transition(lookup(l.number, l.tokens[1]),
                       parse_word(l.number, *sigma, l.tokens[2]),
                       parse_word(l.number, *sigma, l.tokens[3]),
                       lookup(l.number, l.tokens[4]));
    } else {
      fail(l.number, "unknown keyword '" + kw + "'");
    }
  }
  if (!sigma) throw input_error("missing alphabet line");
  return t;
}

DetTransducer parse_drat_body(const std::vector<Line>& lines, std::size_t at) {
  DetTransducer t;
  std::map<std::string, int> state_id;
  std::optional<Alphabet> sigma;
  bool saw_initial = false;
  auto lookup = [&](int line, const std::string& s) {
    auto it = state_id.find(s);
    if (it == state_id.end()) fail(line, "undeclared state '" + s + "'");
    return it->second;
  };
  auto add_states = [&](const Line& l, bool input) {
    for (const std::string& s : split_commas(l.tokens[1])) {
      if (state_id.count(s)) fail(l.number, "duplicate state '" + s + "'");
      state_id[s] = t.num_states++;
      t.input_state.push_back(input);
      t.finals.push_back(false);
    }
  };
  struct Delta {
    int line, src;
    Letter a;
    int dst;
  };
  std::vector<Delta> deltas;
  for (std::size_t i = at; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const std::string& kw = l.tokens[0];
    if (kw == "alphabet") {
      if (l.tokens.size() != 2) fail(l.number, "alphabet takes one comma-separated list");
      Word letters;
      for (const std::string& s : split_commas(l.tokens[1]))
        letters.push_back(parse_letter(l.number, s));
      sigma.emplace(letters);
      t.alphabet = sigma->letters;
    } else if (kw == "istate") {
      add_states(l, true);
    } else if (kw == "ostate") {
      add_states(l, false);
    } else if (kw == "initial") {
      if (l.tokens.size() != 2) fail(l.number, "initial takes one state");
      t.initial = lookup(l.number, l.tokens[1]);
      saw_initial = true;
    } else if (kw == "final") {
      for (std::size_t j = 1; j < l.tokens.size(); ++j)
        t.finals[lookup(l.number, l.tokens[j])] = true;
    } else if (kw == "delta") {
      if (l.tokens.size() != 4) fail(l.number, "delta <src> <letter|end> <dst>");
      if (!sigma) fail(l.number, "alphabet must come before delta");
      Letter a = l.tokens[2] == "end" ? endmarker : parse_letter(l.number, l.tokens[2]);
      if (a != endmarker && !sigma->contains(a))
        fail(l.number, std::string("letter not in alphabet: ") + a);
      deltas.push_back({l.number, lookup(l.number, l.tokens[1]), a,
                        lookup(l.number, l.tokens[3])});
    } else {
      fail(l.number, "unknown keyword '" + kw + "'");
    }
  }
  if (!sigma) throw input_error("missing alphabet line");
  if (!saw_initial) throw input_error("missing initial line");
  // Complete the transition function with a rejecting input-state sink.
  int sink = -1;
  t.next.assign(t.num_states, std::vector<int>(t.ext_size(), -1));
  for (const Delta& d : deltas) {
    int& slot = t.next[d.src][t.ext_index(d.a)];
    if (slot != -1) fail(d.line, "duplicate delta entry");
    slot = d.dst;
  }
  bool need_sink =
      std::any_of(t.next.begin(), t.next.end(), [](const std::vector<int>& row) {
        return std::any_of(row.begin(), row.end(), [](int v) { return v < 0; });
      });
  if (need_sink) {
    sink = t.num_states++;
    t.input_state.push_back(true);
    t.finals.push_back(false);
    t.next.emplace_back(t.ext_size(), sink);
    for (auto& row : t.next)
      for (int& v : row)
        if (v < 0) v = sink;
  }
  t.validate();
  return t;
}

}  // namespace

ParsedFile parse_file(const std::string& text) {
  std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw input_error("empty file");
  const Line& head = lines[0];
  if (head.tokens.size() != 2)
    fail(head.number, "expected 'transducer <name>' or 'drat <name>'");
  ParsedFile f;
  f.name = head.tokens[1];
  if (head.tokens[0] == "transducer")
    f.value = parse_transducer_body(lines, 1);
  else if (head.tokens[0] == "drat")
    f.value = parse_drat_body(lines, 1);
  else
    fail(head.number, "expected 'transducer' or 'drat', got '" + head.tokens[0] + "'");
  return f;
}

ParsedFile parse_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_file(buf.str());
}

namespace {

std::string state_name(int q) { return "q" + std::to_string(q); }

}  // namespace

std::string print_transducer(const Transducer& t, const std::string& name) {
  bool colored_letters = has_colored(t.alphabet);
  std::ostringstream os;
  os << "transducer " << name << "\n";
  os << "alphabet ";
  for (std::size_t i = 0; i < t.alphabet.size(); ++i)
    os << (i ? "," : "") << letter_token(t.alphabet[i], colored_letters);
  os << "\n";
  os << "states ";
  for (int q = 0; q < t.num_states; ++q) os << (q ? "," : "") << state_name(q);
  os << "\n";
  for (int q : t.initial) os << "initial " << state_name(q) << "\n";
  for (int q : t.finals)
    os << "final " << state_name(q) << " " << word_token(t.final_output[q], colored_letters)
       << "\n";
  for (const TransducerTransition& tr : t.transitions)
    os << "trans " << state_name(tr.src) << " " << word_token(tr.input, colored_letters)
       << " " << word_token(tr.output, colored_letters) << " " << state_name(tr.dst)
       << "\n";
  return os.str();
}

std::string print_drat(const DetTransducer& t, const std::string& name) {
  std::ostringstream os;
  os << "drat " << name << "\n";
  os << "alphabet ";
  for (std::size_t i = 0; i < t.alphabet.size(); ++i)
    os << (i ? "," : "") << t.alphabet[i];
  os << "\n";
  // One declaration per state, in id order, so reparsing keeps the numbering.
  for (int q = 0; q < t.num_states; ++q)
    os << (t.input_state[q] ? "istate " : "ostate ") << state_name(q) << "\n";
  os << "initial " << state_name(t.initial) << "\n";
  for (int q = 0; q < t.num_states; ++q)
    if (t.finals[q]) os << "final " << state_name(q) << "\n";
  for (int q = 0; q < t.num_states; ++q)
    for (std::size_t xi = 0; xi < t.ext_size(); ++xi) {
      Letter a = t.ext_letter(xi);
      os << "delta " << state_name(q) << " "
         << (a == endmarker ? std::string("end") : std::string(1, a)) << " "
         << state_name(t.next[q][xi]) << "\n";
    }
  return os.str();
}

std::string print_file(const ParsedFile& f) {
  return f.is_drat() ? print_drat(f.drat(), f.name)
                     : print_transducer(f.transducer(), f.name);
}

SyncWord parse_sync_word(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  SyncWord w;
  while (in >> tok) {
    if (tok.size() != 3 || tok[1] != '.' || (tok[0] != 'i' && tok[0] != 'o'))
      throw input_error("bad sync token '" + tok + "', expected i.<letter> or o.<letter>");
    w.push_back(tok[0] == 'o' ? out_letter(tok[2]) : in_letter(tok[2]));
  }
  return w;
}

std::string print_sync_word(const SyncWord& w) {
  std::string s;
  for (char c : w) {
    if (!s.empty()) s += " ";
    s += is_out(c) ? "o." : "i.";
    s += base_letter(c);
  }
  return s;
}

FreeGroupWord parse_group_word(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  std::vector<SignedLetter> raw;
  while (in >> tok) {
    if (tok.size() == 1) {
      raw.push_back({tok[0], false});
    } else if (tok.size() == 4 && tok.substr(1) == "^-1") {
      raw.push_back({tok[0], true});
    } else {
      throw input_error("bad group token '" + tok + "', expected <letter> or <letter>^-1");
    }
  }
  return FreeGroupWord::reduce(raw);
}

std::string print_group_word(const FreeGroupWord& w) {
  if (w.empty()) return "eps";
  std::string s;
  for (const SignedLetter& l : w.letters()) {
    if (!s.empty()) s += " ";
    s += l.letter;
    if (l.inverse) s += "^-1";
  }
  return s;
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["verdict"] = verdict;
  j["elapsed_ms"] = elapsed_ms;
  for (const auto& [k, v] : fields) j[k] = v;
  return j.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "verdict: " << verdict << "\n";
  for (const auto& [k, v] : fields) os << k << ": " << v << "\n";
  return os.str();
}

}  // namespace resync
