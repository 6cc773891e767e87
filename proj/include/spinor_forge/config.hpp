#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinor_forge/geometry.hpp"
#include "spinor_forge/metric_dsl.hpp"

namespace spinor_forge {

/// Problem in a spacetime config file. Line and column are 1-based; 0 when
/// the problem is not tied to a location.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct CustomSpacetime {
  Spacetime spacetime;
  std::optional<Tetrad> tetrad;
  dsl::Coordinates coordinates;
};

CustomSpacetime parse_spacetime_config(const std::string& text);
CustomSpacetime load_custom_spacetime(const std::string& path);

/// Throws ConfigError unless g has signature (+,-,-,-) at every point.
void require_lorentzian(const Spacetime& s, const std::vector<Point>& points);

}  // namespace spinor_forge
