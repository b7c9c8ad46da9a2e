#pragma once

// Flat key = value run configuration shared by the CLI, figures and sweeps.
//
//   # comment
//   g = 0.105
//   pointer = coherent
//   fig5_epsilons = 0.05, 0.1, 0.2
//
// Every key has a default; unknown keys and malformed values are
// ParameterErrors. Values are kept as text so they round-trip unchanged
// into CSV headers and JSON sidecars.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wmstate/protocol.hpp"
#include "wmstate/wigner.hpp"

namespace wmstate {

class Config {
 public:
  /// All known keys with their default values.
  Config();

  static Config parse(std::istream& in, std::string_view source = "<config>");
  /// Throws IoError when the file cannot be read.
  static Config load(const std::filesystem::path& path);

  /// "key=value"; surrounding whitespace is ignored.
  void set(std::string_view assignment);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

  /// Protocol parameters; the pointer is built from `pointer`, `beta`,
  /// `theta`, `eta` and `phi`.
  ProtocolParams protocol() const;
  ExactOptions exact_options() const;
  ExpansionPath path() const { return flag("exact") ? ExpansionPath::kExact : ExpansionPath::kFirstOrder; }
  WignerGridSpec grid() const;

 private:
  std::map<std::string, std::string> values_;
};

/// Formats with 9 significant digits in scientific notation.
std::string format_number(double value);

}  // namespace wmstate
