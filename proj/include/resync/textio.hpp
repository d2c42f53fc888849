// Text formats for transducers, sync words and group words, plus the
// machine-readable result record of the command line tool.

#ifndef RESYNC_TEXTIO_HPP
#define RESYNC_TEXTIO_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <variant>

#include "resync/drat.hpp"
#include "resync/transducer.hpp"

namespace resync {

struct ParsedFile {
  std::string name;
  std::variant<Transducer, DetTransducer> value;

  bool is_drat() const { return std::holds_alternative<DetTransducer>(value); }
  const Transducer& transducer() const { return std::get<Transducer>(value); }
  const DetTransducer& drat() const { return std::get<DetTransducer>(value); }
};

// Parses either a `transducer` or a `drat` file; errors carry line numbers.
// A drat file with a partial transition table is completed with a rejecting
// sink, so misplaced endmarkers fall off the accepting part.
ParsedFile parse_file(const std::string& text);
ParsedFile parse_path(const std::string& path);

std::string print_file(const ParsedFile& f);
std::string print_transducer(const Transducer& t, const std::string& name);
std::string print_drat(const DetTransducer& t, const std::string& name);

// Sync words: whitespace-separated `i.<letter>` / `o.<letter>` tokens.
SyncWord parse_sync_word(const std::string& text);
std::string print_sync_word(const SyncWord& w);

// Group words: `<letter>` / `<letter>^-1` tokens.
FreeGroupWord parse_group_word(const std::string& text);
std::string print_group_word(const FreeGroupWord& w);

// Verdicts: true | false | yes | no-up-to-K | error.
struct Report {
  std::string command;
  std::string verdict;
  std::map<std::string, std::string> fields;  // witness words, paths, bounds
  long long elapsed_ms = 0;

  std::string to_json() const;
  std::string to_text() const;
};

}  // namespace resync

#endif  // RESYNC_TEXTIO_HPP
