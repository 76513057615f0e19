#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "calogero/model.hpp"
#include "calogero/oracle.hpp"
#include "calogero/quantum_numbers.hpp"
#include "calogero/wavefunction.hpp"

namespace calogero {

using Json = nlohmann::ordered_json;

// Schema identifiers carried in the "schema" field of every JSON document.
// The suffix is bumped whenever a field changes meaning or disappears.
inline constexpr const char* kSpectrumSchema = "calogero.spectrum/1";
inline constexpr const char* kVerifySchema = "calogero.verify/1";
inline constexpr const char* kSampleSchema = "calogero.sample/1";
inline constexpr const char* kEquivalenceSchema = "calogero.equivalence/1";

/// 12 significant digits, the precision of every printed energy.
std::string format_energy(double e);
/// The same value rounded through format_energy, for JSON number fields.
double rounded_energy(double e);
/// Shortest round-trip text of a double ("%.17g" trimmed); used for
/// diagnostics such as residuals where full precision matters.
std::string format_number(double x);

Json to_json(const ModelParams& p);
Json to_json(const StateIndex& s);
Json to_json(const K2Indices& q);
Json to_json(const SpectrumTable& t);
Json to_json(const ResidualReport& r);
Json to_json(const OracleCheck& c);
Json to_json(const EvaluatorComparison& c);
Json to_json(const OrthogonalitySweep& s);
Json to_json(const EquivalenceReport& r);

/// CSV with header `energy,degeneracy`.
void write_spectrum_csv(std::ostream& out, const SpectrumTable& t);

enum class OutputFormat { csv, json };

/// Format implied by the file extension; throws ConfigError for anything
/// other than .csv or .json.
OutputFormat format_for_path(const std::string& path);

/// Writes `text` to `path` (binary mode, so bytes are platform independent).
void write_file(const std::string& path, const std::string& text);

}  // namespace calogero
