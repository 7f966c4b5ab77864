#include "conecheck/core/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "conecheck/core/errors.hpp"

namespace conecheck {

namespace {

using nlohmann::json;

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset; ++i)
    if (text[i] == '\n') ++line;
  return line;
}

// nlohmann/json does not keep source positions; report the line of the first
// occurrence of the quoted key instead.
std::size_t line_of_key(std::string_view text, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    const auto dot = field.find('.');
    const auto root = field.substr(0, std::min(field.find('['), dot));
    throw ParseError(field, what, line_of_key(text_, root));
  }

  const json& require(const json& obj, const std::string& key, const std::string& path) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing required field");
    return *it;
  }

  double real(const json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "expected a finite number");
    return x;
  }

  long integer(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long>();
  }

  MatrixN matrix(const json& v, std::size_t n, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected a list of rows");
    if (v.size() != n) throw DimensionError(path + ": expected " + std::to_string(n) + " rows, got " + std::to_string(v.size()));
    std::vector<double> entries;
    entries.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      const auto rpath = path + "[" + std::to_string(r) + "]";
      const json& row = v[r];
      if (!row.is_array()) fail(rpath, "expected a row list");
      if (row.size() != n)
        throw DimensionError(rpath + ": expected " + std::to_string(n) + " entries, got " + std::to_string(row.size()));
      for (std::size_t c = 0; c < n; ++c) entries.push_back(real(row[c], rpath + "[" + std::to_string(c) + "]"));
    }
    return MatrixN(n, std::move(entries));
  }

  ReactionSpec reaction(const json& v, std::size_t n) const {
    const std::string kind_path = "reaction.kind";
    const json& kind = require(v, "kind", "reaction");
    if (!kind.is_string()) fail(kind_path, "expected a string");
    const auto k = kind.get<std::string>();
    if (k == "zero") return ReactionSpec::zero();
    if (k == "linear") return ReactionSpec::linear(matrix(require(v, "L", "reaction"), n, "reaction.L"));
    if (k == "polynomial") {
      const json& terms = require(v, "terms", "reaction");
      if (!terms.is_array()) fail("reaction.terms", "expected a list per component");
      if (terms.size() != n) throw DimensionError("reaction.terms: expected one monomial list per component");
      std::vector<std::vector<Monomial>> out(n);
      for (std::size_t c = 0; c < n; ++c) {
        const auto cpath = "reaction.terms[" + std::to_string(c) + "]";
        if (!terms[c].is_array()) fail(cpath, "expected a list of monomials");
        for (std::size_t m = 0; m < terms[c].size(); ++m) {
          const auto mpath = cpath + "[" + std::to_string(m) + "]";
          const json& mono = terms[c][m];
          Monomial mo;
          mo.coeff = real(require(mono, "coeff", mpath), mpath + ".coeff");
          const json& ex = require(mono, "exponents", mpath);
          if (!ex.is_array()) fail(mpath + ".exponents", "expected a list of integers");
          if (ex.size() != n) throw DimensionError(mpath + ".exponents: expected length N");
          for (std::size_t l = 0; l < n; ++l) {
            const long e = integer(ex[l], mpath + ".exponents[" + std::to_string(l) + "]");
            if (e < 0) fail(mpath + ".exponents", "exponents must be nonnegative");
            mo.exponents.push_back(static_cast<unsigned>(e));
          }
          out[c].push_back(std::move(mo));
        }
      }
      return ReactionSpec::polynomial(std::move(out));
    }
    fail(kind_path, "unknown reaction kind '" + k + "' (expected zero, linear or polynomial)");
  }

 private:
  std::string_view text_;
};

json matrix_json(const MatrixN& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.size(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json system_json(const SystemSpec& spec) {
  json j;
  j["d"] = spec.dim();
  j["N"] = spec.ncomp();
  j["A"] = matrix_json(spec.diffusion());
  json gammas = json::array();
  for (const auto& g : spec.transport()) gammas.push_back(matrix_json(g));
  j["Gamma"] = gammas;
  json r;
  r["kind"] = to_string(spec.reaction().kind());
  if (spec.reaction().kind() == ReactionKind::Linear) r["L"] = matrix_json(spec.reaction().linear_matrix());
  if (spec.reaction().kind() == ReactionKind::Polynomial) {
    json terms = json::array();
    for (const auto& comp : spec.reaction().polynomial_terms().terms) {
      json list = json::array();
      for (const auto& m : comp) list.push_back({{"coeff", m.coeff}, {"exponents", m.exponents}});
      terms.push_back(std::move(list));
    }
    r["terms"] = terms;
  }
  j["reaction"] = r;
  return j;
}

}  // namespace

Config load_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ParseError("", e.what(), line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  Reader rd(text);
  if (!root.is_object()) rd.fail("", "top level must be an object");

  const long d = rd.integer(rd.require(root, "d", ""), "d");
  const long n = rd.integer(rd.require(root, "N", ""), "N");
  if (d < 1 || d > Grid::kMaxDim) rd.fail("d", "d must be 1, 2 or 3");
  if (n < 1) rd.fail("N", "N must be positive");
  const auto N = static_cast<std::size_t>(n);

  MatrixN A = rd.matrix(rd.require(root, "A", ""), N, "A");
  const json& gj = rd.require(root, "Gamma", "");
  if (!gj.is_array()) rd.fail("Gamma", "expected a list of d matrices");
  if (gj.size() != static_cast<std::size_t>(d))
    throw DimensionError("Gamma: expected " + std::to_string(d) + " matrices (one per axis), got " + std::to_string(gj.size()));
  std::vector<MatrixN> gammas;
  for (std::size_t i = 0; i < gj.size(); ++i) gammas.push_back(rd.matrix(gj[i], N, "Gamma[" + std::to_string(i) + "]"));

  ReactionSpec reaction = ReactionSpec::zero();
  if (root.contains("reaction")) reaction = rd.reaction(root["reaction"], N);

  Config cfg{SystemSpec(static_cast<int>(d), std::move(A), std::move(gammas), std::move(reaction)), {}, {}};

  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (g.contains("n")) {
      const long gn = rd.integer(g["n"], "grid.n");
      if (gn < 8 || (gn & (gn - 1)) != 0) rd.fail("grid.n", "must be a power of two >= 8");
      cfg.grid.n = static_cast<std::size_t>(gn);
    }
    if (g.contains("box")) {
      cfg.grid.box = rd.real(g["box"], "grid.box");
      if (!(cfg.grid.box > 0.0)) rd.fail("grid.box", "must be positive");
    }
  }
  if (root.contains("initial")) {
    const json& in = root["initial"];
    if (in.contains("kind")) {
      const auto k = in["kind"].is_string() ? in["kind"].get<std::string>() : std::string();
      if (k == "gaussian")
        cfg.initial.kind = InitialData::Kind::Gaussian;
      else if (k == "constant")
        cfg.initial.kind = InitialData::Kind::Constant;
      else
        rd.fail("initial.kind", "expected \"gaussian\" or \"constant\"");
    }
    if (in.contains("amplitude")) {
      const json& a = in["amplitude"];
      if (!a.is_array() || a.size() != N) throw DimensionError("initial.amplitude: expected N values");
      for (std::size_t k = 0; k < N; ++k) cfg.initial.amplitude.push_back(rd.real(a[k], "initial.amplitude"));
    }
    if (in.contains("width")) cfg.initial.width = rd.real(in["width"], "initial.width");
  }
  return cfg;
}

SystemSpec load_system(std::string_view text) { return load_config(text).system; }

std::string serialize_system(const SystemSpec& spec) { return system_json(spec).dump(2) + "\n"; }

std::string serialize_config(const Config& config) {
  json j = system_json(config.system);
  j["grid"] = {{"n", config.grid.n}, {"box", config.grid.box}};
  json in;
  in["kind"] = config.initial.kind == InitialData::Kind::Gaussian ? "gaussian" : "constant";
  if (!config.initial.amplitude.empty()) in["amplitude"] = config.initial.amplitude;
  if (config.initial.width > 0.0) in["width"] = config.initial.width;
  j["initial"] = in;
  return j.dump(2) + "\n";
}

Grid make_grid(const SystemSpec& spec, const GridConfig& grid) { return Grid(spec.dim(), grid.n, grid.box); }

Field make_initial_field(const SystemSpec& spec, const Grid& grid, const InitialData& initial) {
  const std::size_t N = spec.ncomp();
  Field u(grid, N);
  const double width = initial.width > 0.0 ? initial.width : grid.box() / 16.0;
  for (std::size_t k = 0; k < N; ++k) {
    const double amp = initial.amplitude.empty() ? 1.0 : initial.amplitude[k];
    auto c = u.component(k);
    for (std::size_t p = 0; p < grid.point_count(); ++p) {
      if (initial.kind == InitialData::Kind::Constant) {
        c[p] = amp;
        continue;
      }
      const auto idx = grid.unflatten(p);
      double r2 = 0.0;
      for (int a = 0; a < grid.dim(); ++a) {
        const double x = grid.coordinate(idx[a]);
        r2 += x * x;
      }
      c[p] = amp * std::exp(-r2 / (2.0 * width * width));
    }
  }
  return u;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace conecheck
