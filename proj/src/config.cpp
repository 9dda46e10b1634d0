#include "bmf/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "numeric_io.hpp"

namespace bmf {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string token;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!token.empty()) out.push_back(token);
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) out.push_back(token);
  return out;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& message) {
  throw ConfigError(source + ":" + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& source, int line, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(source, line, "expected a number, got '" + value + "'");
  }
}

long long parse_int(const std::string& source, int line, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(source, line, "expected an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& source, int line, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail(source, line, "expected true/false, got '" + value + "'");
}

struct RawKey {
  std::string value;
  int line = 0;
};

struct RawSection {
  std::string name;
  int line = 0;
  std::map<std::string, RawKey> keys;
};

DistributionSpec build_dist(const std::string& source, const RawSection& sec) {
  const auto dist_it = sec.keys.find("dist");
  if (dist_it == sec.keys.end()) fail(source, sec.line, "missing required key 'dist'");
  const int line = dist_it->second.line;
  const auto tokens = split_list(dist_it->second.value);
  if (tokens.empty()) fail(source, line, "empty dist value");
  const std::string& kind = tokens[0];

  try {
    if (kind == "complex_gaussian") {
      if (tokens.size() != 1) fail(source, line, "complex_gaussian takes no parameters");
      return DistributionSpec::complex_gaussian();
    }
    if (kind == "real_gaussian") {
      if (tokens.size() != 1) fail(source, line, "real_gaussian takes no parameters");
      return DistributionSpec::real_gaussian();
    }
    if (kind == "rademacher") {
      if (tokens.size() != 1) fail(source, line, "rademacher takes no parameters");
      return DistributionSpec::rademacher();
    }
    if (kind == "uniform_symmetric") {
      if (tokens.size() != 2) {
        fail(source, line, "uniform_symmetric needs exactly one parameter (half width)");
      }
      return DistributionSpec::uniform_symmetric(parse_double(source, line, tokens[1]));
    }
    if (kind == "custom_discrete") {
      const auto atoms_it = sec.keys.find("atoms");
      if (atoms_it == sec.keys.end()) {
        fail(source, line, "custom_discrete requires an 'atoms' key (re im prob triples)");
      }
      const auto parts = split_list(atoms_it->second.value);
      if (parts.empty() || parts.size() % 3 != 0) {
        fail(source, atoms_it->second.line, "atoms must be 're im prob' triples");
      }
      std::vector<Atom> atoms;
      for (std::size_t i = 0; i < parts.size(); i += 3) {
        atoms.push_back({{parse_double(source, atoms_it->second.line, parts[i]),
                          parse_double(source, atoms_it->second.line, parts[i + 1])},
                         parse_double(source, atoms_it->second.line, parts[i + 2])});
      }
      return DistributionSpec::custom_discrete(std::move(atoms));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(source, line, e.what());
  }
  fail(source, line, "unknown distribution kind '" + kind + "'");
}

// Theorem-specific defaults for the norm, applied when p/radius are absent.
void apply_norm_defaults(ExperimentConfig& cfg, bool p_set, bool radius_set) {
  if (!p_set) {
    switch (cfg.theorem) {
      case TheoremId::T4:
      case TheoremId::T5:
        cfg.norm.p = std::numeric_limits<double>::infinity();
        break;
      default:
        cfg.norm.p = 2.0;
        break;
    }
  }
  if (!radius_set) {
    switch (cfg.theorem) {
      case TheoremId::T2:
      case TheoremId::P1:
        cfg.norm.radius = 0.5;
        break;
      case TheoremId::T3:
        cfg.norm.radius = 2.0;
        break;
      default:
        cfg.norm.radius = 1.0;
        break;
    }
  }
}

ExperimentConfig build_config(const std::string& source, const RawSection& sec) {
  static const std::vector<std::string> known = {"theorem", "dist",   "atoms",    "degrees",
                                                 "trials",  "seed",   "p",        "radius",
                                                 "quad_tol", "sup_eps"};
  ExperimentConfig cfg;
  cfg.name = sec.name;

  for (const auto& [key, raw] : sec.keys) {
    const bool is_known =
        std::find(known.begin(), known.end(), key) != known.end() ||
        key.rfind("tol.", 0) == 0 || key.rfind("moments.", 0) == 0;
    if (!is_known) fail(source, raw.line, "unknown key '" + key + "'");
  }

  const auto theorem_it = sec.keys.find("theorem");
  if (theorem_it == sec.keys.end()) fail(source, sec.line, "missing required key 'theorem'");
  try {
    cfg.theorem = theorem_from_name(theorem_it->second.value);
  } catch (const std::exception& e) {
    fail(source, theorem_it->second.line, e.what());
  }

  cfg.dist = build_dist(source, sec);

  const auto degrees_it = sec.keys.find("degrees");
  if (degrees_it == sec.keys.end()) fail(source, sec.line, "missing required key 'degrees'");
  for (const std::string& token : split_list(degrees_it->second.value)) {
    const long long v = parse_int(source, degrees_it->second.line, token);
    if (v < 0 || v > 1'000'000) fail(source, degrees_it->second.line, "degree out of range");
    cfg.degrees.push_back(static_cast<int>(v));
  }

  if (const auto it = sec.keys.find("trials"); it != sec.keys.end()) {
    const long long v = parse_int(source, it->second.line, it->second.value);
    if (v < 1 || v > 100'000'000) fail(source, it->second.line, "trials out of range");
    cfg.trials = static_cast<int>(v);
  }
  if (const auto it = sec.keys.find("seed"); it != sec.keys.end()) {
    try {
      cfg.seed = std::stoull(it->second.value);
    } catch (const std::exception&) {
      fail(source, it->second.line, "expected an unsigned integer seed");
    }
  }

  bool p_set = false;
  bool radius_set = false;
  if (const auto it = sec.keys.find("p"); it != sec.keys.end()) {
    p_set = true;
    if (it->second.value == "inf") {
      cfg.norm.p = std::numeric_limits<double>::infinity();
    } else {
      cfg.norm.p = parse_double(source, it->second.line, it->second.value);
    }
  }
  if (const auto it = sec.keys.find("radius"); it != sec.keys.end()) {
    radius_set = true;
    cfg.norm.radius = parse_double(source, it->second.line, it->second.value);
  }
  if (const auto it = sec.keys.find("quad_tol"); it != sec.keys.end()) {
    cfg.norm.quad_tol = parse_double(source, it->second.line, it->second.value);
  }
  if (const auto it = sec.keys.find("sup_eps"); it != sec.keys.end()) {
    cfg.norm.sup_eps = parse_double(source, it->second.line, it->second.value);
  }
  apply_norm_defaults(cfg, p_set, radius_set);

  for (const auto& [key, raw] : sec.keys) {
    if (key.rfind("tol.", 0) == 0) {
      cfg.tolerances[key.substr(4)] = parse_double(source, raw.line, raw.value);
    } else if (key.rfind("moments.", 0) == 0) {
      const std::string flag = key.substr(8);
      const bool v = parse_bool(source, raw.line, raw.value);
      if (flag == "finite_second") {
        cfg.dist.declared().finite_second_moment = v;
      } else if (flag == "finite_abs") {
        cfg.dist.declared().finite_abs_moment = v;
      } else if (flag == "finite_log") {
        cfg.dist.declared().finite_log_moment = v;
      } else if (flag == "finite_all") {
        cfg.dist.declared().finite_all_moments = v;
      } else {
        fail(source, raw.line, "unknown moments flag '" + flag + "'");
      }
    }
  }

  try {
    cfg.validate();
  } catch (const HypothesisError& e) {
    fail(source, sec.line, std::string("hypothesis violation: ") + e.what());
  } catch (const std::exception& e) {
    fail(source, sec.line, e.what());
  }
  return cfg;
}

std::vector<ExperimentConfig> parse_sections(std::istream& in, const std::string& source) {
  std::vector<RawSection> sections;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']' || text.size() < 3) fail(source, lineno, "malformed section header");
      const std::string name = trim(text.substr(1, text.size() - 2));
      if (name.empty()) fail(source, lineno, "empty section name");
      for (const RawSection& s : sections) {
        if (s.name == name) fail(source, lineno, "duplicate section '" + name + "'");
      }
      sections.push_back({name, lineno, {}});
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(source, lineno, "expected 'key = value' or '[section]'");
    if (sections.empty()) fail(source, lineno, "key outside of any [section]");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) fail(source, lineno, "empty key");
    if (value.empty()) fail(source, lineno, "empty value for key '" + key + "'");
    auto [it, inserted] = sections.back().keys.insert({key, {value, lineno}});
    if (!inserted) fail(source, lineno, "duplicate key '" + key + "'");
  }

  std::vector<ExperimentConfig> configs;
  configs.reserve(sections.size());
  for (const RawSection& sec : sections) configs.push_back(build_config(source, sec));
  return configs;
}

}  // namespace

std::vector<ExperimentConfig> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  return parse_sections(in, path);
}

std::vector<ExperimentConfig> parse_config_text(const std::string& text,
                                                const std::string& source) {
  std::istringstream in(text);
  return parse_sections(in, source);
}

std::string emit_config(const std::vector<ExperimentConfig>& configs) {
  std::ostringstream out;
  for (const ExperimentConfig& cfg : configs) {
    out << "[" << cfg.name << "]\n";
    out << "theorem = " << theorem_name(cfg.theorem) << "\n";
    out << "dist = " << cfg.dist.name() << "\n";
    if (cfg.dist.kind() == DistKind::custom_discrete) {
      out << "atoms =";
      for (const Atom& a : cfg.dist.atoms()) {
        out << " " << detail::format_double(a.value.real()) << " "
            << detail::format_double(a.value.imag()) << " " << detail::format_double(a.prob);
      }
      out << "\n";
    }
    out << "degrees =";
    for (int d : cfg.degrees) out << " " << d;
    out << "\n";
    out << "trials = " << cfg.trials << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "p = " << (cfg.norm.is_sup() ? "inf" : detail::format_double(cfg.norm.p)) << "\n";
    out << "radius = " << detail::format_double(cfg.norm.radius) << "\n";
    out << "quad_tol = " << detail::format_double(cfg.norm.quad_tol) << "\n";
    out << "sup_eps = " << detail::format_double(cfg.norm.sup_eps) << "\n";
    const auto& declared = cfg.dist.declared();
    if (declared.finite_second_moment) {
      out << "moments.finite_second = " << (*declared.finite_second_moment ? "true" : "false")
          << "\n";
    }
    if (declared.finite_abs_moment) {
      out << "moments.finite_abs = " << (*declared.finite_abs_moment ? "true" : "false") << "\n";
    }
    if (declared.finite_log_moment) {
      out << "moments.finite_log = " << (*declared.finite_log_moment ? "true" : "false") << "\n";
    }
    if (declared.finite_all_moments) {
      out << "moments.finite_all = " << (*declared.finite_all_moments ? "true" : "false") << "\n";
    }
    for (const auto& [key, value] : cfg.tolerances) {
      out << "tol." << key << " = " << detail::format_double(value) << "\n";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace bmf
