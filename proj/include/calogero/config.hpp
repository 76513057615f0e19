#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>

#include "calogero/model.hpp"
#include "calogero/quantum_numbers.hpp"

namespace calogero {

/// Parsed model file.
///
/// Grammar: one `key = value` per line; `#` starts a comment; blank lines are
/// ignored. Keys:
///   k, omega, mu            scalars (k integer)
///   lambda                  scalar coupling broadcast to every slot
///   lambda.<m>.<l>          coupling of slot (l, m); overrides the broadcast
///   state.<name>            optional default state, see parse_state()
/// Unknown or repeated keys are errors.
struct ModelFile {
  ModelParams params;
  std::optional<StateIndex> state;
};

/// Throws ConfigError with the line number of the first problem.
ModelFile parse_model_file(std::istream& in, const std::string& source_name = "<input>");
ModelFile load_model_file(const std::string& path);

/// State description: comma- or space-separated `name=value` items with names
/// n_r, n_alpha, Lambda.<m>.<l>, n.<m>.<l>. Unlisted entries are zero.
StateIndex parse_state(const std::string& text, int k);

/// Canonical text form accepted by parse_state (only nonzero entries).
std::string format_state(const StateIndex& s);

}  // namespace calogero
