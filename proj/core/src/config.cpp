#include "leaksim/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace leaksim {

namespace {

struct Value {
  enum class Kind { Number, Boolean, String, List } kind;
  double number = 0.0;
  bool boolean = false;
  std::string text;
  std::vector<double> list;
};

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& text, const std::string& key) {
  size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "': expected a number, got '" + text + "'");
  }
  if (pos != text.size()) {
    throw ValidationError("config key '" + key + "': trailing characters in number '" + text + "'");
  }
  return value;
}

Value parse_value(const std::string& raw, const std::string& key) {
  Value v;
  if (raw.empty()) throw ValidationError("config key '" + key + "': empty value");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') {
      throw ValidationError("config key '" + key + "': unterminated string");
    }
    v.kind = Value::Kind::String;
    v.text = raw.substr(1, raw.size() - 2);
    return v;
  }
  if (raw == "true" || raw == "false") {
    v.kind = Value::Kind::Boolean;
    v.boolean = raw == "true";
    return v;
  }
  if (raw.front() == '[') {
    if (raw.back() != ']') {
      throw ValidationError("config key '" + key + "': unterminated list");
    }
    v.kind = Value::Kind::List;
    std::string body = raw.substr(1, raw.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) throw ValidationError("config key '" + key + "': empty list element");
      v.list.push_back(parse_number(item, key));
    }
    return v;
  }
  v.kind = Value::Kind::Number;
  v.number = parse_number(raw, key);
  return v;
}

std::map<std::string, Value> tokenize(const std::string& text) {
  std::map<std::string, Value> out;
  std::stringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    // Strip comments, respecting quoted strings.
    bool in_quote = false;
    std::string body;
    for (char ch : line) {
      if (ch == '"') in_quote = !in_quote;
      if (ch == '#' && !in_quote) break;
      body += ch;
    }
    body = trim(body);
    if (body.empty()) continue;

    const size_t eq = body.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string raw = trim(body.substr(eq + 1));
    if (key.empty()) {
      throw ValidationError("config line " + std::to_string(line_no) + ": empty key");
    }
    if (out.count(key)) {
      throw ValidationError("config key '" + key + "': duplicated");
    }
    out.emplace(key, parse_value(raw, key));
  }
  return out;
}

const std::set<std::string> kKnownKeys = {
    "seed", "cycles", "readout", "log_populations", "initial_state",
    "eps1_ghz", "eps2_ghz", "eta1_ghz", "eta2_ghz", "g_ghz",
    "t_h_ns", "t_cz_ns",
    "noise_enabled", "t1_us", "dephasing_enabled",
    "theta", "xi1", "xi3", "xi4",
    "chi", "chi1", "chi2", "chi3", "chi4",
    "zeta", "zeta1", "zeta2", "zeta3", "zeta4",
    "phi",
    "pulse_t_ns", "pulse_eps1_ghz",
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Value> values) : values_(std::move(values)) {
    for (const auto& [key, value] : values_) {
      if (!kKnownKeys.count(key)) {
        throw ValidationError("unknown config key '" + key + "'");
      }
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::optional<double> number(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const Value& v = values_.at(key);
    if (v.kind != Value::Kind::Number) {
      throw ValidationError("config key '" + key + "': expected a number");
    }
    return v.number;
  }

  std::optional<bool> boolean(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const Value& v = values_.at(key);
    if (v.kind != Value::Kind::Boolean) {
      throw ValidationError("config key '" + key + "': expected true or false");
    }
    return v.boolean;
  }

  std::optional<std::string> string(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const Value& v = values_.at(key);
    if (v.kind != Value::Kind::String) return std::nullopt;
    return v.text;
  }

  std::optional<std::vector<double>> list(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const Value& v = values_.at(key);
    if (v.kind != Value::Kind::List) return std::nullopt;
    return v.list;
  }

 private:
  std::map<std::string, Value> values_;
};

std::array<double, 4> read_four(const Reader& reader, const std::string& scalar_key,
                                const std::string& base, std::array<double, 4> fallback) {
  const bool any_indexed = reader.has(base + "1") || reader.has(base + "2") ||
                           reader.has(base + "3") || reader.has(base + "4");
  if (reader.has(scalar_key) && any_indexed) {
    throw ValidationError("config key '" + scalar_key + "': give either the scalar or " +
                          base + "1.." + base + "4, not both");
  }
  if (reader.has(scalar_key)) {
    if (auto lst = reader.list(scalar_key)) {
      if (lst->size() != 4) {
        throw ValidationError("config key '" + scalar_key + "': list must have 4 entries");
      }
      return {(*lst)[0], (*lst)[1], (*lst)[2], (*lst)[3]};
    }
    const double v = *reader.number(scalar_key);
    return {v, v, v, v};
  }
  std::array<double, 4> out = fallback;
  for (int i = 0; i < 4; ++i) {
    if (auto v = reader.number(base + std::to_string(i + 1))) out[static_cast<size_t>(i)] = *v;
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  Reader reader(tokenize(text));
  ExperimentConfig config;

  if (reader.has("seed")) {
    const double seed = *reader.number("seed");
    if (seed < 0.0 || seed != std::floor(seed)) {
      throw ValidationError("config key 'seed': expected a non-negative integer");
    }
    config.seed = static_cast<std::uint64_t>(seed);
  }
  if (reader.has("cycles")) {
    const double cycles = *reader.number("cycles");
    if (cycles != std::floor(cycles)) {
      throw ValidationError("config key 'cycles': expected an integer");
    }
    config.n_cycles = static_cast<int>(cycles);
  }
  if (auto mode = reader.string("readout")) {
    if (*mode == "ternary") {
      config.readout = ReadoutMode::Ternary;
    } else if (*mode == "binary") {
      config.readout = ReadoutMode::Binary;
    } else {
      throw ValidationError("config key 'readout': expected \"ternary\" or \"binary\"");
    }
  } else if (reader.has("readout")) {
    throw ValidationError("config key 'readout': expected a string");
  }
  if (auto v = reader.boolean("log_populations")) config.log_populations = *v;

  if (reader.has("initial_state")) {
    if (auto preset = reader.string("initial_state")) {
      if (preset->size() != 1 || (*preset)[0] < '0' || (*preset)[0] > '2') {
        throw ValidationError("config key 'initial_state': preset must be \"0\", \"1\" or \"2\"");
      }
      config.initial_data = {Complex(0), Complex(0), Complex(0)};
      config.initial_data[static_cast<size_t>((*preset)[0] - '0')] = Complex(1);
    } else if (auto lst = reader.list("initial_state")) {
      if (lst->size() != 6) {
        throw ValidationError(
            "config key 'initial_state': expected [re0, im0, re1, im1, re2, im2]");
      }
      for (int i = 0; i < 3; ++i) {
        config.initial_data[static_cast<size_t>(i)] =
            Complex((*lst)[static_cast<size_t>(2 * i)], (*lst)[static_cast<size_t>(2 * i + 1)]);
      }
    } else {
      throw ValidationError("config key 'initial_state': expected a preset string or number list");
    }
  }

  DeviceParams defaults;
  auto ghz = [&](const std::string& key, double fallback_rad_ns) {
    if (auto v = reader.number(key)) return ghz_to_rad_ns(*v);
    return fallback_rad_ns;
  };
  config.device.eps1 = ghz("eps1_ghz", defaults.eps1);
  config.device.eps2 = ghz("eps2_ghz", defaults.eps2);
  config.device.eta1 = ghz("eta1_ghz", defaults.eta1);
  config.device.eta2 = ghz("eta2_ghz", defaults.eta2);
  config.device.g = ghz("g_ghz", defaults.g);

  if (auto v = reader.number("t_h_ns")) config.schedule.t_h_ns = *v;
  if (auto v = reader.number("t_cz_ns")) config.schedule.t_cz_ns = *v;

  if (auto v = reader.boolean("noise_enabled")) config.noise.enabled = *v;
  if (auto v = reader.number("t1_us")) config.noise.t1_us = *v;
  if (auto v = reader.boolean("dephasing_enabled")) config.noise.dephasing = *v;

  if (auto v = reader.number("theta")) config.cz.theta = *v;
  if (auto v = reader.number("xi1")) config.cz.xi1 = *v;
  if (auto v = reader.number("xi3")) config.cz.xi3 = *v;
  if (auto v = reader.number("xi4")) config.cz.xi4 = *v;

  config.cz.chi = read_four(reader, "chi", "chi", config.cz.chi);
  config.cz.zeta = read_four(reader, "zeta", "zeta", config.cz.zeta);

  if (reader.has("phi")) {
    auto lst = reader.list("phi");
    if (!lst || lst->size() != 4) {
      throw ValidationError("config key 'phi': expected a list of 4 angles");
    }
    config.cz.phi = std::array<double, 4>{(*lst)[0], (*lst)[1], (*lst)[2], (*lst)[3]};
  }

  if (reader.has("pulse_t_ns") != reader.has("pulse_eps1_ghz")) {
    throw ValidationError("config keys 'pulse_t_ns' and 'pulse_eps1_ghz' must appear together");
  }
  if (reader.has("pulse_t_ns")) {
    auto t = reader.list("pulse_t_ns");
    auto e = reader.list("pulse_eps1_ghz");
    if (!t || !e) {
      throw ValidationError("config keys 'pulse_t_ns'/'pulse_eps1_ghz': expected number lists");
    }
    PulseProfile profile;
    profile.t_ns = *t;
    profile.eps1.reserve(e->size());
    for (double f : *e) profile.eps1.push_back(ghz_to_rad_ns(f));
    profile.validate();
    config.cz.pulse = std::move(profile);
  }

  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string emit_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "seed = " << config.seed << "\n";
  out << "cycles = " << config.n_cycles << "\n";
  out << "readout = \"" << (config.readout == ReadoutMode::Ternary ? "ternary" : "binary")
      << "\"\n";
  out << "log_populations = " << (config.log_populations ? "true" : "false") << "\n";
  out << "initial_state = [";
  for (int i = 0; i < 3; ++i) {
    if (i) out << ", ";
    out << fmt(config.initial_data[static_cast<size_t>(i)].real()) << ", "
        << fmt(config.initial_data[static_cast<size_t>(i)].imag());
  }
  out << "]\n";

  out << "eps1_ghz = " << fmt(rad_ns_to_ghz(config.device.eps1)) << "\n";
  out << "eps2_ghz = " << fmt(rad_ns_to_ghz(config.device.eps2)) << "\n";
  out << "eta1_ghz = " << fmt(rad_ns_to_ghz(config.device.eta1)) << "\n";
  out << "eta2_ghz = " << fmt(rad_ns_to_ghz(config.device.eta2)) << "\n";
  out << "g_ghz = " << fmt(rad_ns_to_ghz(config.device.g)) << "\n";

  out << "t_h_ns = " << fmt(config.schedule.t_h_ns) << "\n";
  out << "t_cz_ns = " << fmt(config.schedule.t_cz_ns) << "\n";

  out << "noise_enabled = " << (config.noise.enabled ? "true" : "false") << "\n";
  out << "t1_us = " << fmt(config.noise.t1_us) << "\n";

  out << "theta = " << fmt(config.cz.theta) << "\n";
  out << "xi1 = " << fmt(config.cz.xi1) << "\n";
  out << "xi3 = " << fmt(config.cz.xi3) << "\n";
  out << "xi4 = " << fmt(config.cz.xi4) << "\n";
  for (int i = 0; i < 4; ++i) {
    out << "chi" << (i + 1) << " = " << fmt(config.cz.chi[static_cast<size_t>(i)]) << "\n";
  }
  for (int i = 0; i < 4; ++i) {
    out << "zeta" << (i + 1) << " = " << fmt(config.cz.zeta[static_cast<size_t>(i)]) << "\n";
  }
  if (config.cz.phi) {
    out << "phi = [";
    for (int i = 0; i < 4; ++i) {
      if (i) out << ", ";
      out << fmt((*config.cz.phi)[static_cast<size_t>(i)]);
    }
    out << "]\n";
  }
  if (config.cz.pulse) {
    out << "pulse_t_ns = [";
    for (size_t i = 0; i < config.cz.pulse->t_ns.size(); ++i) {
      if (i) out << ", ";
      out << fmt(config.cz.pulse->t_ns[i]);
    }
    out << "]\n";
    out << "pulse_eps1_ghz = [";
    for (size_t i = 0; i < config.cz.pulse->eps1.size(); ++i) {
      if (i) out << ", ";
      out << fmt(rad_ns_to_ghz(config.cz.pulse->eps1[i]));
    }
    out << "]\n";
  }
  return out.str();
}

}  // namespace leaksim
