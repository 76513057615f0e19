#include "calogero/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "calogero/config.hpp"
#include "calogero/errors.hpp"

namespace calogero {

std::string format_energy(double e) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", e);
  return buf;
}

double rounded_energy(double e) { return std::strtod(format_energy(e).c_str(), nullptr); }

std::string format_number(double x) {
  char buf[40];
  for (int digits = 1; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

namespace {

// JSON cannot carry inf/nan; nlohmann would print null silently.
Json number_or_string(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

Json slot_table_json(const SlotTable<double>& t, int k) {
  Json out = Json::object();
  const Hierarchy tree(k);
  for (const SlotId& s : tree.chain())
    out[std::to_string(s.level) + "." + std::to_string(s.ell)] = t[s];
  return out;
}

}  // namespace

Json to_json(const ModelParams& p) {
  Json j;
  j["k"] = p.k;
  j["omega"] = p.omega;
  j["mu"] = p.mu;
  j["lambda"] = slot_table_json(p.lambda, p.k);
  return j;
}

Json to_json(const StateIndex& s) {
  Json j;
  j["n_r"] = s.n_r;
  j["n_alpha"] = s.n_alpha;
  Json lam = Json::object();
  Json n = Json::object();
  const Hierarchy tree(s.k());
  for (const SlotId& id : tree.chain()) {
    const std::string key = std::to_string(id.level) + "." + std::to_string(id.ell);
    if (has_lambda(s.k(), id)) lam[key] = s.Lambda[id];
    n[key] = s.n[id];
  }
  j["Lambda"] = std::move(lam);
  j["n"] = std::move(n);
  j["text"] = format_state(s);
  return j;
}

Json to_json(const K2Indices& q) {
  return Json{{"k", q.k},     {"ell", q.ell}, {"j", q.j},     {"m", q.m},     {"i", q.i},
              {"n12", q.n12}, {"n11", q.n11}, {"n21", q.n21}, {"n31", q.n31}};
}

Json to_json(const SpectrumTable& t) {
  Json j;
  j["cutoff"] = rounded_energy(t.cutoff);
  j["model_hash"] = t.model_hash;
  j["levels_count"] = t.levels.size();
  j["total_states"] = t.total_states();
  Json levels = Json::array();
  for (const SpectrumLevel& l : t.levels) {
    Json reps = Json::array();
    for (const StateIndex& s : l.representatives) reps.push_back(to_json(s));
    levels.push_back(Json{{"energy", rounded_energy(l.energy)}, {"degeneracy", l.degeneracy}, {"representatives", reps}});
  }
  j["levels"] = std::move(levels);
  return j;
}

Json to_json(const ResidualReport& r) {
  return Json{{"points", r.points},
              {"h", r.h},
              {"energy", rounded_energy(r.energy)},
              {"max_relative", number_or_string(r.max_relative)},
              {"mean_relative", number_or_string(r.mean_relative)},
              {"skipped_near_nodes", r.skipped_near_nodes}};
}

Json to_json(const OracleCheck& c) {
  Json params = Json::object();
  for (const auto& [name, value] : c.parameters) params[name] = value;
  return Json{{"name", c.name},
              {"parameters", params},
              {"closed_form", c.closed_form},
              {"fd_coarse", c.fd_coarse},
              {"fd_fine", c.fd_fine},
              {"extrapolated", c.extrapolated},
              {"richardson_order", c.richardson_order},
              {"observed_order", number_or_string(c.observed_order)},
              {"relative_error", number_or_string(c.relative_error)},
              {"tolerance", c.tolerance},
              {"passed", c.passed}};
}

Json to_json(const EvaluatorComparison& c) {
  return Json{{"points", c.points},
              {"mean_ratio", c.mean_ratio},
              {"coefficient_of_variation", c.coefficient_of_variation},
              {"min_ratio", c.min_ratio},
              {"max_ratio", c.max_ratio}};
}

Json to_json(const OrthogonalitySweep& s) {
  return Json{{"max_index", s.max_index},
              {"pairs", s.pairs},
              {"pairs_evaluated", s.pairs_evaluated},
              {"max_overlap", s.max_overlap},
              {"worst_a", to_json(s.worst_a)},
              {"worst_b", to_json(s.worst_b)}};
}

Json to_json(const EquivalenceReport& r) {
  auto table = [](const SpectrumTable& t) {
    Json rows = Json::array();
    for (const SpectrumLevel& l : t.levels) rows.push_back(Json::array({rounded_energy(l.energy), l.degeneracy}));
    return rows;
  };
  Json j;
  j["equal"] = r.equal;
  j["levels_compared"] = r.levels_compared;
  j["first_discrepancy"] = r.first_discrepancy ? Json(*r.first_discrepancy) : Json(nullptr);
  j["hyperspherical"] = table(r.hyperspherical);
  j["cartesian"] = table(r.cartesian);
  return j;
}

void write_spectrum_csv(std::ostream& out, const SpectrumTable& t) {
  out << "energy,degeneracy\n";
  for (const SpectrumLevel& l : t.levels) out << format_energy(l.energy) << ',' << l.degeneracy << '\n';
}

OutputFormat format_for_path(const std::string& path) {
  auto ends_with = [&](const std::string& ext) {
    return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
  };
  if (ends_with(".csv")) return OutputFormat::csv;
  if (ends_with(".json")) return OutputFormat::json;
  throw ConfigError("output path '" + path + "' must end in .csv or .json");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error("write to '" + path + "' failed");
}

}  // namespace calogero
