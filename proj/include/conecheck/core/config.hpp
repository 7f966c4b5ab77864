#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "conecheck/core/field.hpp"
#include "conecheck/core/system.hpp"

namespace conecheck {

struct GridConfig {
  std::size_t n = 64;
  double box = 32.0;
};

/// Optional initial data block used by `simulate`.
struct InitialData {
  enum class Kind { Gaussian, Constant };
  Kind kind = Kind::Gaussian;
  std::vector<double> amplitude;  // per component; empty means 1 everywhere
  double width = 0.0;             // gaussian standard deviation; 0 means box/16
};

struct Config {
  SystemSpec system;
  GridConfig grid;
  InitialData initial;
};

/// Parses a configuration document (JSON with // comments allowed):
///
///   { "d": 1, "N": 2, "A": [[..]], "Gamma": [[[..]]],
///     "reaction": {"kind": "zero"|"linear"|"polynomial", "L": .., "terms": ..},
///     "grid": {"n": 64, "box": 32.0},
///     "initial": {"kind": "gaussian"|"constant", "amplitude": [..], "width": 2.0} }
///
/// "grid" and "initial" are optional. Throws ParseError (with line and field),
/// DimensionError or PositivityError.
Config load_config(std::string_view text);
SystemSpec load_system(std::string_view text);

std::string serialize_config(const Config& config);
std::string serialize_system(const SystemSpec& spec);

Grid make_grid(const SystemSpec& spec, const GridConfig& grid);
Field make_initial_field(const SystemSpec& spec, const Grid& grid, const InitialData& initial);

std::string read_text_file(const std::string& path);

}  // namespace conecheck
