// Command line front end for the transducer deciders.

#include <chrono>
#include <fstream>
#include <iostream>
#include <variant>

#include "CLI11.hpp"
#include "resync/drat.hpp"
#include "resync/game.hpp"
#include "resync/monoid.hpp"
#include "resync/textio.hpp"

namespace {

using namespace resync;

struct Options {
  std::string format = "text";
  std::string dot_path;
  std::size_t max_len = 6;
  std::size_t cap = 0;  // 0 keeps the defaults
};

Limits make_limits(const Options& o) {
  Limits l;
  if (o.cap != 0) {
    l.max_states = o.cap;
    l.max_monoid = o.cap;
    l.max_k = o.cap;
  }
  return l;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write " + path);
  out << text;
}

Transducer load_transducer(const std::string& path) {
  ParsedFile f = parse_path(path);
  if (f.is_drat()) throw input_error(path + " holds a drat file, expected a transducer");
  return f.transducer();
}

DetTransducer load_drat(const std::string& path) {
  ParsedFile f = parse_path(path);
  if (!f.is_drat()) throw input_error(path + " holds a transducer, expected a drat file");
  return f.drat();
}

Resynchronizer resync_for(const Transducer& t1, const Transducer& t2, long k,
                          const Limits& limits) {
  Word alpha = t1.alphabet;
  for (Letter a : t2.alphabet)
    if (alpha.find(a) == Word::npos) alpha.push_back(a);
  if (k < 0) return identity_resync(alpha);
  if (static_cast<std::size_t>(k) > limits.max_k)
    throw cap_exceeded("k exceeds the configured cap; decision infeasible at this scale");
  return build_dk(alpha, static_cast<std::size_t>(k), limits);
}

int emit(const Options& o, Report r, std::chrono::steady_clock::time_point start) {
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  std::cout << (o.format == "json" ? r.to_json() : r.to_text());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-transducer decisions modulo delay resynchronizers"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--dot", opt.dot_path, "write a DOT dump of the main object");
  app.add_option("--max-len", opt.max_len, "bound for bounded enumeration checks");
  app.add_option("--cap", opt.cap, "cap for states, monoid elements and k");

  std::string word_u, word_v, out_path, alphabet_csv, pump_word;
  std::string file1, file2;
  long k_flag = -1;
  std::size_t big_k = 1;

  CLI::App* c_del = app.add_subcommand("del", "delay between two plain words");
  c_del->add_option("u", word_u)->required();
  c_del->add_option("v", word_v)->required();

  CLI::App* c_lag = app.add_subcommand("lag", "lag between two sync words");
  c_lag->add_option("w1", word_u)->required();
  c_lag->add_option("w2", word_v)->required();

  CLI::App* c_dk = app.add_subcommand("dk-build", "build the k-delay resynchronizer");
  c_dk->add_option("--alphabet", alphabet_csv)->required();
  c_dk->add_option("--k", k_flag)->required();
  c_dk->add_option("-o,--output", out_path);

  CLI::App* c_inc = app.add_subcommand("include", "inclusion modulo a resynchronizer");
  c_inc->add_option("t1", file1)->required();
  c_inc->add_option("t2", file2)->required();
  c_inc->add_option("--k", k_flag, "use the k-delay resynchronizer (default: identity)");

  CLI::App* c_eq = app.add_subcommand("equiv", "equivalence modulo a resynchronizer");
  c_eq->add_option("t1", file1)->required();
  c_eq->add_option("t2", file2)->required();
  c_eq->add_option("--k", k_flag, "use the k-delay resynchronizer (default: identity)");

  CLI::App* c_uni = app.add_subcommand("uniformize", "sequential uniformizer synthesis");
  c_uni->add_option("t", file1)->required();
  c_uni->add_option("--k", k_flag, "use the k-delay resynchronizer (default: identity)");
  c_uni->add_option("-o,--output", out_path, "file for the synthesized transducer");

  CLI::App* c_drat = app.add_subcommand("drat-uniformize",
                                        "sequential uniformization of a drat transducer");
  c_drat->add_option("t", file1)->required();
  c_drat->add_option("--K", big_k, "lookahead bound of the game")->required();
  c_drat->add_option("-o,--output", out_path, "file for the synthesized transducer");

  CLI::App* c_mon = app.add_subcommand("monoid", "transition monoid facts");
  c_mon->add_option("t", file1)->required();
  c_mon->add_option("--word", pump_word, "word to pump");
  c_mon->add_option("--k", k_flag, "pumping parameter (default 1)");

  CLI::App* c_chk = app.add_subcommand("check", "parse and validate a file");
  c_chk->add_option("file", file1)->required();

  CLI::App* c_enum = app.add_subcommand("enumerate", "bounded output enumeration");
  c_enum->add_option("t", file1)->required();
  c_enum->add_option("u", word_u)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit with 1, --help with 0
  }
  auto start = std::chrono::steady_clock::now();
  Limits limits = make_limits(opt);

  try {
    if (c_del->parsed()) {
      Report r{"del", "true", {}, 0};
      r.fields["delay"] = print_group_word(del(word_u, word_v));
      r.fields["length"] = std::to_string(del(word_u, word_v).size());
      return emit(opt, r, start);
    }
    if (c_lag->parsed()) {
      LagValue l = lag(parse_sync_word(word_u), parse_sync_word(word_v));
      Report r{"lag", "true", {}, 0};
      r.fields["lag"] = l.infinite ? "infinite" : std::to_string(l.value);
      return emit(opt, r, start);
    }
    if (c_dk->parsed()) {
      Word alpha;
      for (const std::string& s : {alphabet_csv}) {
        std::string cur;
        for (char c : s + ",") {
          if (c == ',') {
            if (cur.size() != 1) throw input_error("letters are single characters");
            alpha.push_back(cur[0]);
            cur.clear();
          } else {
            cur.push_back(c);
          }
        }
      }
      Resynchronizer dk = build_dk(alpha, static_cast<std::size_t>(k_flag), limits);
      Report r{"dk-build", "true", {}, 0};
      r.fields["states"] = std::to_string(dk.carrier.num_states);
      r.fields["transitions"] = std::to_string(dk.carrier.transitions.size());
      if (!out_path.empty()) {
        write_text_file(out_path, print_transducer(dk.carrier, "dk"));
        r.fields["output"] = out_path;
      }
      if (!opt.dot_path.empty()) write_text_file(opt.dot_path, to_dot(dk.carrier, "dk"));
      return emit(opt, r, start);
    }
    if (c_inc->parsed() || c_eq->parsed()) {
      Transducer t1 = load_transducer(file1);
      Transducer t2 = load_transducer(file2);
      Resynchronizer s = resync_for(t1, t2, k_flag, limits);
      Report r{c_inc->parsed() ? "include" : "equiv", "", {}, 0};
      InclusionResult fwd = s_included(t1, t2, s, limits);
      if (c_inc->parsed()) {
        r.verdict = fwd.included ? "true" : "false";
        if (fwd.counterexample)
          r.fields["counterexample"] = print_sync_word(*fwd.counterexample);
      } else {
        InclusionResult bwd = s_included(t2, t1, s, limits);
        r.verdict = fwd.included && bwd.included ? "true" : "false";
        if (fwd.counterexample)
          r.fields["counterexample"] = print_sync_word(*fwd.counterexample);
        else if (bwd.counterexample)
          r.fields["counterexample"] = print_sync_word(*bwd.counterexample);
      }
      return emit(opt, r, start);
    }
    if (c_uni->parsed()) {
      Transducer t = load_transducer(file1);
      Resynchronizer s = resync_for(t, t, k_flag, limits);
      if (!opt.dot_path.empty()) {
        UniformizationGame ug = build_uniformization_game(t, s, limits);
        write_text_file(opt.dot_path, game_to_dot(ug));
      }
      std::optional<Transducer> u = seq_s_uniformizable(t, s, limits);
      Report r{"uniformize", u ? "yes" : "false", {}, 0};
      if (u) {
        if (!verify_uniformizer(*u, t, s, limits))
          throw std::logic_error("self-check failed after synthesis");
        r.fields["states"] = std::to_string(u->num_states);
        if (!out_path.empty()) {
          write_text_file(out_path, print_transducer(*u, "uniformizer"));
          r.fields["output"] = out_path;
        }
      }
      return emit(opt, r, start);
    }
    if (c_drat->parsed()) {
      DetTransducer t = load_drat(file1);
      if (big_k > limits.max_k)
        throw cap_exceeded("K exceeds the configured cap");
      DratAnswer ans = drat_uniformize(t, big_k, limits, opt.max_len);
      Report r{"drat-uniformize", "", {}, 0};
      if (ans.yes) {
        r.verdict = "yes";
        r.fields["delay_bound"] = std::to_string(delay_bound(t, big_k, limits));
        r.fields["states"] = std::to_string(ans.uniformizer->num_states);
        if (!out_path.empty()) {
          write_text_file(out_path, print_transducer(*ans.uniformizer, "uniformizer"));
          r.fields["output"] = out_path;
        }
      } else {
        r.verdict = "no-up-to-K";
        r.fields["K"] = std::to_string(big_k);
        r.fields["note"] =
            "sound only if K reaches the saturation bound; see ramsey_K";
      }
      if (!opt.dot_path.empty())
        write_text_file(opt.dot_path, game_to_dot(build_drat_game(t, big_k, limits)));
      return emit(opt, r, start);
    }
    if (c_mon->parsed()) {
      Transducer t = load_transducer(file1);
      std::vector<MonoidElement> monoid = generate_monoid(t, limits);
      Report r{"monoid", "true", {}, 0};
      r.fields["size"] = std::to_string(monoid.size());
      std::size_t idem = 0, sforms = 0;
      for (const MonoidElement& m : monoid) {
        if (is_idempotent(m)) ++idem;
        if (is_s_form(m)) ++sforms;
      }
      r.fields["idempotents"] = std::to_string(idem);
      r.fields["s_forms"] = std::to_string(sforms);
      r.fields["nt_bound"] = nt_bound(t, limits).str();
      if (!pump_word.empty()) {
        std::size_t k = k_flag < 1 ? 1 : static_cast<std::size_t>(k_flag);
        r.fields["phi"] = phi(t, pump_word, k);
        r.fields["rho"] = rho_pump(t, pump_word, k);
      }
      return emit(opt, r, start);
    }
    if (c_chk->parsed()) {
      ParsedFile f = parse_path(file1);
      if (parse_file(print_file(f)).name != f.name)
        throw std::logic_error("round-trip changed the file");
      Report r{"check", "true", {}, 0};
      r.fields["name"] = f.name;
      r.fields["kind"] = f.is_drat() ? "drat" : "transducer";
      if (!opt.dot_path.empty())
        write_text_file(opt.dot_path, f.is_drat() ? to_dot(f.drat(), f.name)
                                                  : to_dot(f.transducer(), f.name));
      return emit(opt, r, start);
    }
    if (c_enum->parsed()) {
      Transducer t = load_transducer(file1);
      std::set<Word> outs = enumerate_outputs(t, word_u, opt.max_len);
      Report r{"enumerate", "true", {}, 0};
      std::string joined;
      for (const Word& w : outs) {
        if (!joined.empty()) joined += " ";
        joined += w.empty() ? "eps" : w;
      }
      r.fields["outputs"] = joined;
      r.fields["count"] = std::to_string(outs.size());
      return emit(opt, r, start);
    }
  } catch (const cap_exceeded& e) {
    Report r{"", "error", {{"error", e.what()}}, 0};
    std::cout << (opt.format == "json" ? r.to_json() : r.to_text());
    return 2;
  } catch (const input_error& e) {
    Report r{"", "error", {{"error", e.what()}}, 0};
    std::cout << (opt.format == "json" ? r.to_json() : r.to_text());
    return 1;
  } catch (const std::exception& e) {
    Report r{"", "error", {{"error", e.what()}}, 0};
    std::cout << (opt.format == "json" ? r.to_json() : r.to_text());
    return 1;
  }
  return 1;
}
