#include "conecheck/core/errors.hpp"

#include <sstream>

namespace conecheck {

namespace {
std::string format_parse(const std::string& field, const std::string& what, std::size_t line) {
  std::ostringstream os;
  os << "parse error";
  if (line > 0) os << " at line " << line;
  if (!field.empty()) os << " in field '" << field << "'";
  os << ": " << what;
  return os.str();
}

std::string format_positivity(double lambda) {
  std::ostringstream os;
  os.precision(17);
  os << "A + A^T is not positive definite: smallest eigenvalue of (A + A^T)/2 is " << lambda;
  return os.str();
}
}  // namespace

ParseError::ParseError(const std::string& field, const std::string& what, std::size_t line)
    : Error(format_parse(field, what, line)), field_(field), line_(line) {}

PositivityError::PositivityError(double smallest_eigenvalue)
    : Error(format_positivity(smallest_eigenvalue)), smallest_(smallest_eigenvalue) {}

}  // namespace conecheck
