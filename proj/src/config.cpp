#include "lsflow/config.hpp"

#include "lsflow/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace lsflow {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const ConfigEntry& en) {
  const std::string v = trim(en.value);
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ParseError("config " + std::to_string(en.line) + ": key '" +
                     en.key + "' needs a number, got '" + en.value + "'");
  return out;
}

int parse_int(const ConfigEntry& en) {
  const std::string v = trim(en.value);
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ParseError("config " + std::to_string(en.line) + ": key '" +
                     en.key + "' needs an integer, got '" + en.value + "'");
  return out;
}

std::vector<int> parse_int_list(const ConfigEntry& en) {
  std::vector<int> out;
  std::stringstream ss(en.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    int v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || p != item.data() + item.size())
      throw ParseError("config " + std::to_string(en.line) + ": key '" +
                       en.key + "' needs comma-separated integers, got '" +
                       en.value + "'");
    out.push_back(v);
  }
  if (out.empty())
    throw ParseError("config " + std::to_string(en.line) + ": key '" +
                     en.key + "' needs at least one integer");
  return out;
}

using Setter = std::function<void(RunConfig&, const ConfigEntry&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"case",
       [](RunConfig& c, const ConfigEntry& e) { c.caseName = trim(e.value); }},
      {"order_u",
       [](RunConfig& c, const ConfigEntry& e) { c.orderU = parse_int(e); }},
      {"order_geom",
       [](RunConfig& c, const ConfigEntry& e) { c.orderGeom = parse_int(e); }},
      {"mu", [](RunConfig& c, const ConfigEntry& e) { c.mu = parse_double(e); }},
      {"rho",
       [](RunConfig& c, const ConfigEntry& e) { c.rho = parse_double(e); }},
      {"refine",
       [](RunConfig& c, const ConfigEntry& e) { c.refine = parse_int(e); }},
      {"mapping",
       [](RunConfig& c, const ConfigEntry& e) { c.mapping = parse_int(e); }},
      {"layers",
       [](RunConfig& c, const ConfigEntry& e) { c.layers = parse_int(e); }},
      {"torus_div",
       [](RunConfig& c, const ConfigEntry& e) {
         auto v = parse_int_list(e);
         if (v.size() != 3)
           throw ParseError("config " + std::to_string(e.line) +
                            ": torus_div needs exactly three integers");
         c.torusDiv = {v[0], v[1], v[2]};
       }},
      {"stabilization",
       [](RunConfig& c, const ConfigEntry& e) {
         c.stabilization = trim(e.value);
       }},
      {"penalty_prefactor",
       [](RunConfig& c, const ConfigEntry& e) {
         c.penaltyPrefactor = parse_double(e);
       }},
      {"solver",
       [](RunConfig& c, const ConfigEntry& e) { c.solver = trim(e.value); }},
      {"picard_tol",
       [](RunConfig& c, const ConfigEntry& e) {
         c.picardTol = parse_double(e);
       }},
      {"picard_max_iter",
       [](RunConfig& c, const ConfigEntry& e) {
         c.picardMaxIter = parse_int(e);
       }},
      {"picard_relax",
       [](RunConfig& c, const ConfigEntry& e) {
         c.picardRelax = parse_double(e);
       }},
      {"dt", [](RunConfig& c, const ConfigEntry& e) { c.dt = parse_double(e); }},
      {"t_end",
       [](RunConfig& c, const ConfigEntry& e) { c.tEnd = parse_double(e); }},
      {"write_every",
       [](RunConfig& c, const ConfigEntry& e) { c.writeEvery = parse_int(e); }},
      {"refines",
       [](RunConfig& c, const ConfigEntry& e) { c.refines = parse_int_list(e); }},
      {"csv",
       [](RunConfig& c, const ConfigEntry& e) { c.csv = trim(e.value); }},
      {"vtk",
       [](RunConfig& c, const ConfigEntry& e) { c.vtk = trim(e.value); }},
      {"quad_degree",
       [](RunConfig& c, const ConfigEntry& e) { c.quadDegree = parse_int(e); }},
  };
  return table;
}

}  // namespace

std::vector<ConfigEntry> parse_config_text(const std::string& text,
                                           const std::string& source) {
  std::vector<ConfigEntry> out;
  std::stringstream ss(text);
  std::string line;
  int ln = 0;
  while (std::getline(ss, line)) {
    ++ln;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(source + " line " + std::to_string(ln) +
                       ": expected key = value, got '" + line + "'");
    ConfigEntry en;
    en.key = trim(line.substr(0, eq));
    en.value = trim(line.substr(eq + 1));
    en.line = ln;
    if (en.key.empty())
      throw ParseError(source + " line " + std::to_string(ln) +
                       ": empty key");
    out.push_back(en);
  }
  return out;
}

std::vector<ConfigEntry> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

void apply_entries(RunConfig& cfg, const std::vector<ConfigEntry>& entries) {
  for (const auto& en : entries) {
    auto it = setters().find(en.key);
    if (it == setters().end()) {
      std::string known;
      for (const auto& [k, s] : setters()) known += k + " ";
      throw ParseError("config line " + std::to_string(en.line) +
                       ": unknown key '" + en.key + "' (known keys: " +
                       known + ")");
    }
    it->second(cfg, en);
  }
}

void apply_override(RunConfig& cfg, const std::string& keyValue) {
  auto eq = keyValue.find('=');
  if (eq == std::string::npos)
    throw ParseError("override '" + keyValue + "' is not of the form key=value");
  ConfigEntry en;
  en.key = trim(keyValue.substr(0, eq));
  en.value = trim(keyValue.substr(eq + 1));
  en.line = 0;
  apply_entries(cfg, {en});
}

void validate_config(const RunConfig& cfg) {
  static const std::vector<std::string> cases = {"axisym", "obstacle",
                                                 "cavity", "torus", "slab"};
  if (std::find(cases.begin(), cases.end(), cfg.caseName) == cases.end())
    throw ValidationError("unknown case '" + cfg.caseName +
                          "' (choose axisym, obstacle, cavity, torus, slab)");
  if (cfg.orderU != -1 && (cfg.orderU < 1 || cfg.orderU > 8))
    throw ValidationError("order_u out of range [1, 8]");
  if (cfg.orderGeom != -1 && (cfg.orderGeom < 1 || cfg.orderGeom > 8))
    throw ValidationError("order_geom out of range [1, 8]");
  if (!cfg.stabilization.empty() && cfg.stabilization != "none" &&
      cfg.stabilization != "pspg" && cfg.stabilization != "bp")
    throw ValidationError("stabilization must be none, pspg, or bp");
  if (cfg.solver != "direct" && cfg.solver != "iterative")
    throw ValidationError("solver must be direct or iterative");
  if (cfg.refine < 1) throw ValidationError("refine must be positive");
  if (!(cfg.dt > 0)) throw ValidationError("dt must be positive");
  if (!(cfg.tEnd > 0)) throw ValidationError("t_end must be positive");
  if (cfg.writeEvery < 1) throw ValidationError("write_every must be positive");
  if (cfg.refines.empty()) throw ValidationError("refines must be nonempty");
  for (int r : cfg.refines)
    if (r < 1) throw ValidationError("refines entries must be positive");
}

}  // namespace lsflow
