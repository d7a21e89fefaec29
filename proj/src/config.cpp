#include "maim/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "maim/errors.hpp"

namespace maim {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::pair<std::string, std::string> split_assignment(const std::string& text,
                                                     const std::string& where) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("expected key=value in " + where + ": " + text);
  const std::string key = trim(text.substr(0, eq));
  const std::string value = trim(text.substr(eq + 1));
  if (key.empty()) throw std::invalid_argument("empty key in " + where + ": " + text);
  return {key, value};
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad numeric value for " + key + ": '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer value for " + key + ": '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::invalid_argument("bad boolean value for " + key + ": '" + value + "'");
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument("empty entry in " + key);
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw std::invalid_argument(key + " must be a nonempty comma list");
  return out;
}

Scheme parse_scheme(const std::string& key, const std::string& value) {
  const long long v = parse_int(key, value);
  if (v < 1 || v > 6) throw std::invalid_argument(key + " must be a scheme number 1-6");
  return static_cast<Scheme>(v);
}

Detector parse_detector(const std::string& value) {
  if (value == "ml_full") return Detector::MLFull;
  if (value == "ml_anchor") return Detector::MLAnchor;
  if (value == "two_stage") return Detector::TwoStage;
  throw std::invalid_argument("detector must be ml_full, ml_anchor or two_stage, got '" + value +
                              "'");
}

}  // namespace

KeyValues parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open configuration file: " + path);
  KeyValues kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto [key, value] = split_assignment(line, path + ":" + std::to_string(line_no));
    if (!kv.emplace(key, value).second)
      throw std::invalid_argument("duplicate key '" + key + "' in " + path);
  }
  return kv;
}

void apply_override(KeyValues& kv, const std::string& assignment) {
  auto [key, value] = split_assignment(assignment, "override");
  kv[key] = value;
}

RunSpec make_run_spec(const KeyValues& kv) {
  RunSpec spec;
  SimConfig& s = spec.sim;
  for (const auto& [key, value] : kv) {
    if (key == "wavelength_m") s.wavelength = parse_double(key, value);
    else if (key == "half_extent_g_m") s.half_extent_G = parse_double(key, value);
    else if (key == "rho_tar") s.rho_tar = parse_double(key, value);
    else if (key == "paths_l") s.L = static_cast<int>(parse_int(key, value));
    else if (key == "mod_order_m") s.M = static_cast<int>(parse_int(key, value));
    else if (key == "index_cells_n") s.N = static_cast<int>(parse_int(key, value));
    else if (key == "scheme") s.scheme = parse_scheme(key, value);
    else if (key == "detector") s.detector = parse_detector(value);
    else if (key == "two_stage_k") s.two_stage_K = static_cast<int>(parse_int(key, value));
    else if (key == "snr_db_list") s.snr_db = parse_double_list(key, value);
    else if (key == "symbols_per_point") s.symbols_per_point = static_cast<long>(parse_int(key, value));
    else if (key == "channel_realizations") s.realizations = static_cast<int>(parse_int(key, value));
    else if (key == "seed") s.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "i_max_sweeps") s.I_max = static_cast<int>(parse_int(key, value));
    else if (key == "target_bit_errors") s.target_bit_errors = static_cast<long>(parse_int(key, value));
    else if (key == "unit_gains") s.unit_gains = parse_bool(key, value);
    else if (key == "include_bound") spec.include_bound = parse_bool(key, value);
    else if (key == "include_baseline") spec.include_baseline = parse_bool(key, value);
    else if (key == "scheme_list") {
      for (double v : parse_double_list(key, value)) {
        const long long n = static_cast<long long>(v);
        if (n != v || n < 1 || n > 6)
          throw std::invalid_argument("scheme_list entries must be scheme numbers 1-6");
        spec.scheme_list.push_back(static_cast<Scheme>(n));
      }
    } else {
      throw std::invalid_argument("unknown configuration key: " + key);
    }
  }
  if (spec.scheme_list.empty()) spec.scheme_list.push_back(s.scheme);
  validate(s);
  return spec;
}

}  // namespace maim
