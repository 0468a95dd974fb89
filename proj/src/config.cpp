#include "ifem/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ifem {

namespace {

bool one_of(const std::string& v, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (v == a) return true;
  return false;
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (cfg.case_id != 1 && cfg.case_id != 2)
    throw std::invalid_argument("config: case must be 1 or 2");
  if (cfg.constrained < -1 || cfg.constrained > 1)
    throw std::invalid_argument("config: constrained must be 0 or 1");
  if (!(cfg.alpha > 0.0))
    throw std::invalid_argument("config: alpha must be positive (regularization)");
  if (!(cfg.beta_plus > 0.0) || !(cfg.beta_minus > 0.0))
    throw std::invalid_argument("config: beta coefficients must be positive");
  if (cfg.ns.empty()) throw std::invalid_argument("config: at least one mesh size required");
  for (int n : cfg.ns)
    if (n < 8) throw std::invalid_argument("config: mesh sizes must be >= 8");
  if (!one_of(cfg.solver, {"cg", "direct"}))
    throw std::invalid_argument("config: solver must be cg or direct");
  if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("config: tolerance must be positive");
  if (!one_of(cfg.enrichment, {"on", "off"}))
    throw std::invalid_argument("config: enrichment must be on or off");
  if (!one_of(cfg.mode, {"pc", "variational"}))
    throw std::invalid_argument("config: mode must be pc or variational");
  if (!one_of(cfg.variant, {"conforming", "nonconforming"}))
    throw std::invalid_argument("config: variant must be conforming or nonconforming");
  if (!one_of(cfg.timings, {"on", "off"}))
    throw std::invalid_argument("config: timings must be on or off");
  if (cfg.jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
}

std::vector<int> parse_mesh_sizes(const std::string& text) {
  std::vector<int> ns;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("config: bad mesh size '" + item + "'");
    }
    if (pos != item.size()) throw std::invalid_argument("config: bad mesh size '" + item + "'");
    ns.push_back(v);
  }
  if (ns.empty()) throw std::invalid_argument("config: empty mesh size list");
  return ns;
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
    line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(), key.end());
    value.erase(value.begin(), std::find_if(value.begin(), value.end(), notspace));

    auto as_double = [&](const char* what) {
      try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
      } catch (const std::exception&) {
        throw std::invalid_argument("config: bad value for " + std::string(what) + ": '" +
                                    value + "'");
      }
    };
    auto as_int = [&](const char* what) {
      try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
      } catch (const std::exception&) {
        throw std::invalid_argument("config: bad value for " + std::string(what) + ": '" +
                                    value + "'");
      }
    };

    if (key == "case")
      cfg.case_id = as_int("case");
    else if (key == "constrained")
      cfg.constrained = as_int("constrained");
    else if (key == "alpha")
      cfg.alpha = as_double("alpha");
    else if (key == "beta-plus")
      cfg.beta_plus = as_double("beta-plus");
    else if (key == "beta-minus")
      cfg.beta_minus = as_double("beta-minus");
    else if (key == "n")
      cfg.ns = parse_mesh_sizes(value);
    else if (key == "solver")
      cfg.solver = value;
    else if (key == "tol")
      cfg.tolerance = as_double("tol");
    else if (key == "enrichment")
      cfg.enrichment = value;
    else if (key == "mode")
      cfg.mode = value;
    else if (key == "variant")
      cfg.variant = value;
    else if (key == "timings")
      cfg.timings = value;
    else if (key == "jobs")
      cfg.jobs = as_int("jobs");
    else if (key == "out")
      cfg.out_study = value;
    else if (key == "control-out")
      cfg.out_control = value;
    else if (key == "iterations-out")
      cfg.out_iterations = value;
    else if (key == "vtk-out")
      cfg.out_vtk = value;
    else
      throw std::invalid_argument("config: unknown key '" + key + "' (line " +
                                  std::to_string(lineno) + ")");
  }
}

}  // namespace ifem
