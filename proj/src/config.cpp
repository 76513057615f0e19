#include "calogero/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "calogero/errors.hpp"

namespace calogero {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  return out;
}

double to_double(const std::string& text, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE)
    throw ConfigError(where + ": '" + text + "' is not a number");
  return v;
}

int to_int(const std::string& text, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || v < -1000000 || v > 1000000)
    throw ConfigError(where + ": '" + text + "' is not an integer");
  return static_cast<int>(v);
}

// "<m>.<l>" suffix of a per-slot key.
SlotId slot_suffix(const std::string& suffix, const std::string& where) {
  const auto parts = split(suffix, '.');
  if (parts.size() != 2) throw ConfigError(where + ": expected <m>.<l> after the key prefix");
  return {to_int(parts[1], where), to_int(parts[0], where)};
}

void set_state_item(StateIndex& s, const std::string& name, int value, const std::string& where) {
  if (value < 0) throw ConfigError(where + ": quantum numbers must be non-negative");
  if (name == "n_r") {
    s.n_r = value;
  } else if (name == "n_alpha") {
    s.n_alpha = value;
  } else if (name.rfind("Lambda.", 0) == 0 || name.rfind("n.", 0) == 0) {
    const bool is_lambda = name[0] == 'L';
    const SlotId id = slot_suffix(name.substr(is_lambda ? 7 : 2), where);
    const Hierarchy h(s.k());
    if (!h.contains(id)) throw ConfigError(where + ": slot " + to_string(id) + " is not in the k=" + std::to_string(s.k()) + " tree");
    if (is_lambda) {
      if (!has_lambda(s.k(), id)) throw ConfigError(where + ": slot " + to_string(id) + " carries no Lambda");
      s.Lambda[id] = value;
    } else {
      s.n[id] = value;
    }
  } else {
    throw ConfigError(where + ": unknown state entry '" + name + "'");
  }
}

}  // namespace

StateIndex parse_state(const std::string& text, int k) {
  StateIndex s = StateIndex::ground(k);
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ',') c = ' ';
  std::istringstream ss(normalized);
  std::string item;
  std::set<std::string> seen;
  while (ss >> item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("state entry '" + item + "' is not name=value");
    const std::string name = item.substr(0, eq);
    if (!seen.insert(name).second) throw ConfigError("state entry '" + name + "' given twice");
    set_state_item(s, name, to_int(item.substr(eq + 1), "state entry '" + name + "'"), "state entry '" + name + "'");
  }
  return s;
}

std::string format_state(const StateIndex& st) {
  std::string out;
  auto add = [&](const std::string& item) { out += (out.empty() ? "" : ",") + item; };
  if (st.n_r != 0) add("n_r=" + std::to_string(st.n_r));
  if (st.n_alpha != 0) add("n_alpha=" + std::to_string(st.n_alpha));
  const Hierarchy h(st.k());
  for (const SlotId& s : h.chain())
    if (st.Lambda[s] != 0)
      add("Lambda." + std::to_string(s.level) + "." + std::to_string(s.ell) + "=" + std::to_string(st.Lambda[s]));
  for (const SlotId& s : h.chain())
    if (st.n[s] != 0) add("n." + std::to_string(s.level) + "." + std::to_string(s.ell) + "=" + std::to_string(st.n[s]));
  return out;
}

ModelFile parse_model_file(std::istream& in, const std::string& source_name) {
  struct Entry {
    std::string value;
    int line;
  };
  std::map<std::string, Entry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (value.empty()) throw ConfigError(where + ": key '" + key + "' has no value");
    if (entries.count(key)) throw ConfigError(where + ": key '" + key + "' repeated (first on line " +
                                              std::to_string(entries[key].line) + ")");
    entries[key] = {value, line_no};
  }

  auto where = [&](const std::string& key) { return source_name + ":" + std::to_string(entries.at(key).line); };

  ModelFile out;
  if (!entries.count("k")) throw ConfigError(source_name + ": missing key 'k'");
  out.params.k = to_int(entries.at("k").value, where("k"));
  const int k = out.params.k;
  if (k < 1 || k > 12) throw ConfigError(where("k") + ": k must lie in [1, 12]");
  if (entries.count("omega")) out.params.omega = to_double(entries.at("omega").value, where("omega"));
  if (entries.count("mu")) out.params.mu = to_double(entries.at("mu").value, where("mu"));

  const Hierarchy h(k);
  SlotTable<double> lambda(k, 0.0);
  SlotTable<int> given(k, 0);
  if (entries.count("lambda")) {
    lambda = SlotTable<double>(k, to_double(entries.at("lambda").value, where("lambda")));
    given = SlotTable<int>(k, 1);
  }
  std::vector<std::pair<std::string, std::string>> state_items;
  for (const auto& [key, e] : entries) {
    if (key == "k" || key == "omega" || key == "mu" || key == "lambda") continue;
    if (key.rfind("lambda.", 0) == 0) {
      const SlotId id = slot_suffix(key.substr(7), where(key));
      if (!h.contains(id)) throw ConfigError(where(key) + ": slot " + to_string(id) + " is not in the k=" + std::to_string(k) + " tree");
      lambda[id] = to_double(e.value, where(key));
      given[id] = 1;
    } else if (key.rfind("state.", 0) == 0) {
      state_items.emplace_back(key.substr(6), e.value);
    } else {
      throw ConfigError(where(key) + ": unknown key '" + key + "'");
    }
  }
  for (const SlotId& s : h.chain())
    if (!given[s])
      throw ConfigError(source_name + ": no coupling for slot " + to_string(s) + " (give 'lambda' or 'lambda." +
                        std::to_string(s.level) + "." + std::to_string(s.ell) + "')");
  out.params.lambda = std::move(lambda);

  if (!state_items.empty()) {
    StateIndex s = StateIndex::ground(k);
    for (const auto& [name, value] : state_items)
      set_state_item(s, name, to_int(value, where("state." + name)), where("state." + name));
    out.state = std::move(s);
  }
  return out;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file '" + path + "'");
  return parse_model_file(in, path);
}

}  // namespace calogero
