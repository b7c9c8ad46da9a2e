#include "wmstate/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace wmstate {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ParameterError("config: '" + key + "' expects a number, got '" + std::string(text) + "'");
  }
  return v;
}

const std::map<std::string, std::string>& defaults() {
  static const std::map<std::string, std::string> d{
      {"g", "0.105"},
      {"alpha", "0.01"},
      {"epsilon", "0.1"},
      {"pointer", "coherent"},
      {"beta", "1"},
      {"theta", "0"},
      {"eta", "1"},
      {"phi", "0"},
      {"signal_cutoff", "0"},
      {"idler_cutoff", "0"},
      {"signal_margin", "8"},
      {"exact", "false"},
      {"quadrature_phi", "0"},
      {"grid_x_min", "-4"},
      {"grid_x_max", "4"},
      {"grid_p_min", "-4"},
      {"grid_p_max", "4"},
      {"grid_nx", "161"},
      {"grid_np", "161"},
      {"beta_min", "0"},
      {"beta_max", "4"},
      {"beta_points", "81"},
      {"eta_min", "0"},
      {"eta_max", "2"},
      {"eta_points", "41"},
      {"fig5_epsilons", "0.05,0.1,0.2"},
  };
  return d;
}

}  // namespace

Config::Config() : values_(defaults()) {}

Config Config::parse(std::istream& in, std::string_view source) {
  Config c;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    if (view.find('=') == std::string_view::npos) {
      throw ParameterError(std::string(source) + ":" + std::to_string(number) +
                           ": expected 'key = value'");
    }
    c.set(view);
  }
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  return parse(in, path.string());
}

void Config::set(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ParameterError("expected key=value, got '" + std::string(assignment) + "'");
  }
  set(std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1))));
}

void Config::set(const std::string& key, const std::string& value) {
  if (!defaults().count(key)) throw ParameterError("unknown config key '" + key + "'");
  if (value.empty()) throw ParameterError("config key '" + key + "' has an empty value");
  const std::string previous = values_[key];
  values_[key] = value;
  try {
    // Validate eagerly so errors point at the offending key.
    if (key == "pointer") {
      if (value != "vacuum" && value != "coherent" && value != "squeezed") {
        throw ParameterError("pointer must be vacuum, coherent or squeezed");
      }
    } else if (key == "exact") {
      flag(key);
    } else if (key == "fig5_epsilons") {
      numbers(key);
    } else if (key.ends_with("_cutoff") || key.ends_with("_points") || key == "grid_nx" ||
               key == "grid_np" || key == "signal_margin") {
      integer(key);
    } else {
      number(key);
    }
  } catch (...) {
    values_[key] = previous;
    throw;
  }
}

const std::string& Config::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ParameterError("unknown config key '" + key + "'");
  return it->second;
}

double Config::number(const std::string& key) const { return parse_double(key, text(key)); }

int Config::integer(const std::string& key) const {
  const std::string& t = text(key);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ParameterError("config: '" + key + "' expects an integer, got '" + t + "'");
  }
  return v;
}

bool Config::flag(const std::string& key) const {
  const std::string& t = text(key);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ParameterError("config: '" + key + "' expects true or false, got '" + t + "'");
}

std::vector<double> Config::numbers(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(text(key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw ParameterError("config: '" + key + "' is an empty list");
  return out;
}

ProtocolParams Config::protocol() const {
  ProtocolParams p;
  p.g = number("g");
  p.alpha = number("alpha");
  p.epsilon = number("epsilon");
  p.signal_cutoff = integer("signal_cutoff");
  p.idler_cutoff = integer("idler_cutoff");
  const std::string& kind = text("pointer");
  if (kind == "vacuum") {
    p.pointer = PointerInput::vacuum();
  } else if (kind == "coherent") {
    p.pointer = PointerInput::coherent(std::polar(number("beta"), number("theta")));
  } else {
    p.pointer = PointerInput::squeezed(number("eta"), number("phi"));
  }
  p.validate();
  return p;
}

ExactOptions Config::exact_options() const {
  ExactOptions o;
  o.signal_margin = integer("signal_margin");
  return o;
}

WignerGridSpec Config::grid() const {
  WignerGridSpec g{number("grid_x_min"), number("grid_x_max"), number("grid_p_min"),
                   number("grid_p_max"), integer("grid_nx"),   integer("grid_np")};
  g.validate();
  return g;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", value);
  return buf;
}

}  // namespace wmstate
