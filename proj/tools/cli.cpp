#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "calogero/config.hpp"
#include "calogero/errors.hpp"
#include "calogero/model.hpp"
#include "calogero/oracle.hpp"
#include "calogero/quantum_numbers.hpp"
#include "calogero/report.hpp"
#include "calogero/wavefunction.hpp"

namespace calogero::cli {

namespace {

struct Options {
  std::string model_path;
  std::optional<double> emax;
  std::optional<double> window;
  std::optional<int> points;
  double step = 1e-3;
  int grid = 0;  // 0: command default
  std::uint64_t seed = 1;
  std::string out_path;

  // verify
  std::vector<std::string> states;
  double energy_shift = 0.0;
  int max_index = 2;
  bool skip_fd = false;

  // sample
  int cut = 0;  // 1-based particle index, 0 for random points
  std::vector<double> range{-3.0, 3.0};

  // sampling cuts
  std::optional<double> min_sine;
  std::optional<double> min_sin3phi;
  std::optional<double> min_separation;
  std::optional<double> node_clearance;
  std::vector<double> r_window;
};

struct Loaded {
  ValidatedModel model;
  std::optional<StateIndex> state;
};

Loaded load(const Options& o) {
  ModelFile f = load_model_file(o.model_path);
  return {ValidatedModel::validate(f.params), f.state};
}

SamplingCuts cuts_for(const Options& o, int k) {
  SamplingCuts c;
  // Deeper trees crowd the triples; the tighter separation keeps acceptance usable.
  if (k >= 3) c.min_separation = 0.1;
  if (o.min_sine) c.min_sine = c.min_cosine = *o.min_sine;
  if (o.min_sin3phi) c.min_abs_sin3phi = *o.min_sin3phi;
  if (o.min_separation) c.min_separation = *o.min_separation;
  if (o.r_window.size() == 2) {
    c.r_lo = o.r_window[0];
    c.r_hi = o.r_window[1];
  }
  return c;
}

// Writes the report to --out, or to stdout when no path was given.
void emit(const Options& o, std::ostream& out, const std::string& csv, const Json& json) {
  if (o.out_path.empty()) {
    out << csv;
    return;
  }
  write_file(o.out_path, format_for_path(o.out_path) == OutputFormat::csv ? csv : json.dump(2) + "\n");
}

Json document(const char* schema, const ValidatedModel& model) {
  Json j;
  j["schema"] = schema;
  j["model"] = to_json(model.params());
  j["model_hash"] = model.hash();
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// ---------------------------------------------------------------------------

double resolve_emax(const Options& o, const ValidatedModel& model, double default_window) {
  const double ground = energy(model, StateIndex::ground(model.k()));
  if (o.emax && o.window) throw ConfigError("give either --emax or --window, not both");
  const double e = o.emax ? *o.emax : ground + (o.window ? *o.window : default_window) * model.omega();
  if (!(e >= ground))
    throw ConfigError("energy cutoff " + format_energy(e) + " lies below the ground energy " + format_energy(ground));
  return e;
}

int cmd_spectrum(const Options& o, std::ostream& out, std::ostream& err) {
  const Loaded in = load(o);
  if (!o.emax && !o.window) throw ConfigError("spectrum needs --emax or --window");
  const double e_max = resolve_emax(o, in.model, 0.0);
  const SpectrumTable t = enumerate_spectrum(in.model, e_max);

  std::ostringstream csv;
  csv << "# ground_energy " << format_energy(t.levels.front().energy) << "\n";
  csv << "# levels " << t.levels.size() << "\n";
  write_spectrum_csv(csv, t);

  Json j = document(kSpectrumSchema, in.model);
  j["emax"] = rounded_energy(e_max);
  j["ground_energy"] = rounded_energy(t.levels.front().energy);
  const Json table = to_json(t);
  for (const auto& [key, value] : table.items()) j[key] = value;
  emit(o, out, csv.str(), j);
  if (!o.out_path.empty()) {
    out << "ground energy " << format_energy(t.levels.front().energy) << "\n";
    out << "levels " << t.levels.size() << "\n";
  }
  (void)err;
  return kExitPass;
}

// ---------------------------------------------------------------------------

struct CheckRow {
  std::string check;
  std::string item;
  double value = 0.0;
  std::string tolerance;
  bool passed = false;
};

std::string params_text(const std::vector<std::pair<std::string, double>>& params) {
  std::string s;
  for (const auto& [k, v] : params) s += (s.empty() ? "" : " ") + k + "=" + format_number(v);
  return s;
}

std::vector<StateIndex> default_states(int k) {
  if (k == 2) return {parse_state("", 2), parse_state("n_r=1", 2), parse_state("Lambda.2.1=1", 2), parse_state("n.2.1=2", 2)};
  return {parse_state("", k), parse_state("Lambda." + std::to_string(k) + ".1=1", k)};
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const Loaded in = load(o);
  const ValidatedModel& model = in.model;
  const int k = model.k();

  std::vector<StateIndex> states;
  for (const std::string& text : o.states) states.push_back(parse_state(text, k));
  if (states.empty() && in.state) states.push_back(*in.state);
  if (states.empty()) states = default_states(k);
  for (const StateIndex& s : states) s.check(k);

  std::vector<CheckRow> rows;
  Json j = document(kVerifySchema, model);
  Json checks = Json::object();

  auto add_fd = [&](const std::string& group, const std::vector<OracleCheck>& v) {
    Json arr = Json::array();
    for (const OracleCheck& c : v) {
      rows.push_back({c.name, params_text(c.parameters), c.relative_error, format_number(c.tolerance), c.passed});
      arr.push_back(to_json(c));
    }
    checks[group] = std::move(arr);
  };
  if (!o.skip_fd) {
    add_fd("angular", angular_sweep());
    add_fd("jacobi_type", jacobi_type_sweep());
    add_fd("gegenbauer_type", gegenbauer_type_sweep());
    add_fd("radial", radial_sweep());
  }
  add_fd("model", model_sweep(model, o.grid > 0 ? o.grid : 20000));

  constexpr double kOverlapTolerance = 1e-8;
  constexpr double kRatioCvTolerance = 1e-9;
  if (k == 2) {
    const OrthogonalitySweep sweep = orthogonality_sweep(model, o.max_index);
    rows.push_back({"orthogonality", "max_index=" + std::to_string(o.max_index) + " pairs=" + std::to_string(sweep.pairs),
                    sweep.max_overlap, format_number(kOverlapTolerance), sweep.max_overlap < kOverlapTolerance});
    checks["orthogonality"] = to_json(sweep);
  }

  const SamplingCuts cuts = cuts_for(o, k);
  const int n_points = o.points.value_or(k == 2 ? 100 : 20);
  const double residual_tol = k == 2 ? 1e-5 : 1e-4;
  constexpr double kHalvingLo = 2.2, kHalvingHi = 6.0;
  Json residuals = Json::array();
  Json evaluators = Json::array();
  for (const StateIndex& s : states) {
    const std::string label = format_state(s).empty() ? "ground" : format_state(s);
    if (k == 2) {
      const EvaluatorComparison cmp = compare_evaluators(model, s, n_points, o.seed, cuts);
      rows.push_back({"evaluator_ratio_cv", label, cmp.coefficient_of_variation, format_number(kRatioCvTolerance),
                      cmp.coefficient_of_variation < kRatioCvTolerance});
      Json e = to_json(cmp);
      e["state"] = label;
      evaluators.push_back(std::move(e));
    }

    ResidualOptions ro;
    ro.n_points = n_points;
    ro.h = o.step;
    ro.seed = o.seed;
    ro.cuts = cuts;
    ro.energy_shift = o.energy_shift;
    if (o.node_clearance) ro.min_node_clearance = *o.node_clearance;
    const ResidualReport coarse = hamiltonian_residual(model, s, ro);
    rows.push_back({"residual", label + " h=" + format_number(ro.h), coarse.max_relative, format_number(residual_tol),
                    coarse.max_relative < residual_tol});
    Json r = Json::object();
    r["state"] = label;
    r["coarse"] = to_json(coarse);
    if (k == 2) {
      // Halving h must shrink the truncation error by roughly four.
      ro.h = 0.5 * o.step;
      const ResidualReport fine = hamiltonian_residual(model, s, ro);
      const double ratio = coarse.max_relative / fine.max_relative;
      rows.push_back({"residual_halving", label, ratio,
                      "[" + format_number(kHalvingLo) + "," + format_number(kHalvingHi) + "]",
                      ratio >= kHalvingLo && ratio <= kHalvingHi});
      r["fine"] = to_json(fine);
      r["halving_ratio"] = std::isfinite(ratio) ? Json(ratio) : Json(format_number(ratio));
    }
    residuals.push_back(std::move(r));
  }
  checks["residual"] = std::move(residuals);
  if (k == 2) checks["evaluators"] = std::move(evaluators);

  std::ostringstream csv;
  csv << "check,item,value,tolerance,passed\n";
  Json failures = Json::array();
  bool all = true;
  for (const CheckRow& r : rows) {
    csv << csv_field(r.check) << ',' << csv_field(r.item) << ',' << format_number(r.value) << ','
        << csv_field(r.tolerance) << ',' << (r.passed ? "true" : "false") << '\n';
    if (!r.passed) {
      all = false;
      failures.push_back(r.check + " " + r.item);
      err << "FAIL " << r.check << " " << r.item << ": " << format_number(r.value) << " (tolerance " << r.tolerance
          << ")\n";
    }
  }
  j["checks"] = std::move(checks);
  j["failures"] = std::move(failures);
  j["passed"] = all;
  emit(o, out, csv.str(), j);
  if (!o.out_path.empty())
    out << (all ? "all " : "") << rows.size() - j["failures"].size() << " of " << rows.size() << " checks passed\n";
  return all ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------------------

int cmd_sample(const Options& o, std::ostream& out, std::ostream& err) {
  const Loaded in = load(o);
  const ValidatedModel& model = in.model;
  const int k = model.k();
  const int n = pow3(k);
  StateIndex state = StateIndex::ground(k);
  if (!o.states.empty()) {
    if (o.states.size() > 1) throw ConfigError("sample takes a single --state");
    state = parse_state(o.states.front(), k);
  } else if (in.state) {
    state = *in.state;
  }
  state.check(k);

  ConfigSampler sampler(k, model.omega(), cuts_for(o, k), o.seed);
  std::vector<CartesianConfig> configs;
  if (o.cut == 0) {
    const int count = o.points.value_or(100);
    if (count < 1) throw ConfigError("--points must be positive");
    for (int i = 0; i < count; ++i) configs.push_back(sampler.next());
  } else {
    if (o.cut < 1 || o.cut > n) throw ConfigError("--cut must name a particle in 1.." + std::to_string(n));
    if (o.range.size() != 2 || !(o.range[1] > o.range[0])) throw ConfigError("--range needs lo < hi");
    const int count = o.grid > 0 ? o.grid : 201;
    if (count < 2) throw ConfigError("--grid must be at least 2 for a cut");
    // The other particles stay at one sampled configuration.
    const CartesianConfig base = sampler.next();
    for (int i = 0; i < count; ++i) {
      CartesianConfig c = base;
      c.x[o.cut - 1] = o.range[0] + (o.range[1] - o.range[0]) * i / (count - 1);
      configs.push_back(std::move(c));
    }
  }

  std::ostringstream csv;
  for (int i = 1; i <= n; ++i) csv << 'x' << i << ',';
  csv << "psi_k2,psi_general,ratio\n";
  Json rows = Json::array();
  long long skipped = 0;
  for (const CartesianConfig& c : configs) {
    double general = 0.0, explicit_form = 0.0;
    try {
      general = eval_psi_general(model, state, c);
      if (k == 2) explicit_form = eval_psi_k2(model, state, c);
    } catch (const SingularConfiguration&) {
      ++skipped;
      continue;
    }
    const bool has_ratio = k == 2 && explicit_form != 0.0;
    const double ratio = has_ratio ? general / explicit_form : 0.0;
    for (double xi : c.x) csv << format_number(xi) << ',';
    csv << (k == 2 ? format_number(explicit_form) : "") << ',' << format_number(general) << ','
        << (has_ratio ? format_number(ratio) : "") << '\n';
    Json row;
    row["x"] = c.x;
    row["psi_k2"] = k == 2 ? Json(explicit_form) : Json(nullptr);
    row["psi_general"] = general;
    row["ratio"] = has_ratio ? Json(ratio) : Json(nullptr);
    rows.push_back(std::move(row));
  }
  std::string text = "# rows " + std::to_string(rows.size()) + "\n# skipped_singular " + std::to_string(skipped) + "\n";

  Json j = document(kSampleSchema, model);
  j["state"] = to_json(state);
  j["energy"] = rounded_energy(energy(model, state));
  j["mode"] = o.cut == 0 ? "random" : "cut";
  if (o.cut != 0) {
    j["cut_particle"] = o.cut;
    j["range"] = o.range;
  }
  j["seed"] = o.seed;
  j["skipped_singular"] = skipped;
  j["rows"] = std::move(rows);
  emit(o, out, (o.out_path.empty() ? text : "") + csv.str(), j);
  if (!o.out_path.empty()) out << text;
  (void)err;
  return kExitPass;
}

// ---------------------------------------------------------------------------

int cmd_equivalence(const Options& o, std::ostream& out, std::ostream& err) {
  const Loaded in = load(o);
  if (in.model.mu() != 0.0) throw ConfigError("equivalence compares against the separable spectrum and needs mu = 0");
  const double e_max = resolve_emax(o, in.model, 10.0);
  const EquivalenceReport rep = spectra_equivalence_mu0(in.model, e_max);

  // Merge both level lists on energy.
  std::map<std::string, std::pair<long long, long long>> merged;
  std::map<std::string, double> order;
  for (const SpectrumLevel& l : rep.hyperspherical.levels) {
    merged[format_energy(l.energy)].first = l.degeneracy;
    order[format_energy(l.energy)] = l.energy;
  }
  for (const SpectrumLevel& l : rep.cartesian.levels) {
    merged[format_energy(l.energy)].second = l.degeneracy;
    order.emplace(format_energy(l.energy), l.energy);
  }
  std::vector<std::string> keys;
  for (const auto& [key, e] : order) keys.push_back(key);
  std::sort(keys.begin(), keys.end(), [&](const std::string& a, const std::string& b) { return order[a] < order[b]; });

  std::ostringstream csv;
  csv << "# equal " << (rep.equal ? "true" : "false") << "\n";
  csv << "energy,degeneracy_hyperspherical,degeneracy_cartesian\n";
  for (const std::string& key : keys) csv << key << ',' << merged[key].first << ',' << merged[key].second << '\n';

  Json j = document(kEquivalenceSchema, in.model);
  j["emax"] = rounded_energy(e_max);
  const Json body = to_json(rep);
  for (const auto& [key, value] : body.items()) j[key] = value;
  emit(o, out, csv.str(), j);
  if (!o.out_path.empty())
    out << (rep.equal ? "spectra equal" : "spectra differ") << " over " << rep.levels_compared << " levels\n";
  if (!rep.equal) err << "FAIL equivalence: " << rep.first_discrepancy.value_or("level lists differ") << "\n";
  return rep.equal ? kExitPass : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact spectrum, eigenfunctions and numerical checks of the hierarchical 3^k-body Calogero model"};
  app.name("calogero");
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--model", o.model_path, "Model file (key = value)")->required()->check(CLI::ExistingFile);
    c->add_option("--out", o.out_path, "Output file; .csv or .json selects the format (default: CSV on stdout)");
    c->add_option("--seed", o.seed, "Random seed for sampled configurations");
  };
  auto cut_options = [&](CLI::App* c) {
    c->add_option("--min-sine", o.min_sine, "Lower bound on sin and cos of every hyperangle");
    c->add_option("--min-sin3phi", o.min_sin3phi, "Lower bound on |sin 3 phi| in every slot");
    c->add_option("--min-separation", o.min_separation, "Minimum distance within each triple, times 1/sqrt(omega)");
    c->add_option("--r-window", o.r_window, "Hyperradius window LO HI, times 1/sqrt(omega)")->expected(2);
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "Energy levels with degeneracies up to a cutoff");
  common(spectrum);
  spectrum->add_option("--emax", o.emax, "Energy cutoff");
  spectrum->add_option("--window", o.window, "Cutoff as ground energy + WINDOW * omega");

  CLI::App* verify = app.add_subcommand("verify", "Finite-difference, quadrature and residual checks");
  common(verify);
  cut_options(verify);
  verify->add_option("--points", o.points, "Sample points per residual test (default 100 for k=2, 20 above)");
  verify->add_option("--step", o.step, "Finite-difference step of the residual Laplacian");
  verify->add_option("--grid", o.grid, "Coarse grid size of the model-specific ODE checks (default 20000)");
  verify->add_option("--state", o.states, "State for the residual test (repeatable), e.g. n_r=1,Lambda.2.1=1");
  verify->add_option("--energy-shift", o.energy_shift, "Add this to every closed-form energy in the residual test");
  verify->add_option("--max-index", o.max_index, "Largest index in the k=2 orthogonality sweep");
  verify->add_option("--node-clearance", o.node_clearance, "Skip residual points this close to a node");
  verify->add_flag("--skip-fd", o.skip_fd, "Skip the model-independent ODE sweeps");

  CLI::App* sample = app.add_subcommand("sample", "Evaluate the wavefunction at random points or along a cut");
  common(sample);
  cut_options(sample);
  sample->add_option("--state", o.states, "State to evaluate (default: model file state, else ground)");
  sample->add_option("--points", o.points, "Number of random points (default 100)");
  sample->add_option("--cut", o.cut, "Move only this particle (1-based) across --range");
  sample->add_option("--range", o.range, "Cut interval LO HI")->expected(2);
  sample->add_option("--grid", o.grid, "Number of points along the cut (default 201)");

  CLI::App* equivalence = app.add_subcommand("equivalence", "Compare the hyperspherical and separable spectra at mu=0");
  common(equivalence);
  equivalence->add_option("--emax", o.emax, "Energy cutoff (default: ground + 10 omega)");
  equivalence->add_option("--window", o.window, "Cutoff as ground energy + WINDOW * omega");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (sample->parsed()) return cmd_sample(o, out, err);
    return cmd_equivalence(o, out, err);
  } catch (const ValidationError& e) {
    err << "invalid model:\n";
    for (const std::string& issue : e.issues()) err << "  " << issue << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace calogero::cli
