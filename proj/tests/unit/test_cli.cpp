#include <catch_amalgamated.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "conecheck/cli/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kConfigs = std::string(CONECHECK_SOURCE_DIR) + "/configs/";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = conecheck::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("conecheck_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("conecheck_cfg_" + name + ".cfg");
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("audit exit codes") {
  SECTION("diagonal logistic passes") {
    const auto dir = scratch("audit_pass");
    const auto r = invoke({"audit", kConfigs + "diagonal_logistic.cfg", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "audit.json"));
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK(json::parse(slurp(dir / "audit.json"))["overall"] == true);
  }
  SECTION("Lotka-Volterra passes") {
    CHECK(invoke({"audit", kConfigs + "lotka_volterra.cfg", "--out", scratch("audit_lv").string()}).code == 0);
  }
  SECTION("coupled diffusion and transport fail") {
    const auto r = invoke({"audit", kConfigs + "coupled_diffusion.cfg", "--out", scratch("audit_cd").string(), "--json"});
    CHECK(r.code == 2);
    const auto j = json::parse(r.out);
    CHECK(j["overall"] == false);
    CHECK(j["violations"][0]["rule"] == "diag-A");
    CHECK(invoke({"audit", kConfigs + "coupled_transport.cfg", "--out", scratch("audit_ct").string()}).code == 2);
  }
  SECTION("warnings only") {
    const auto cfg = write_config("warn", R"({"d":1,"N":2,"A":[[1,0],[0,1]],"Gamma":[[[0,0],[0,0]]],
      "reaction":{"kind":"polynomial","terms":[[{"coeff":-1,"exponents":[0,400]}],[]]}})");
    CHECK(invoke({"audit", cfg.string(), "--out", scratch("audit_warn").string()}).code == 3);
  }
  SECTION("diagonality tolerance") {
    const auto cfg = write_config("tol", R"({"d":1,"N":2,"A":[[1,1e-9],[0,1]],"Gamma":[[[0,0],[0,0]]]})");
    CHECK(invoke({"audit", cfg.string(), "--out", scratch("audit_tol0").string()}).code == 2);
    CHECK(invoke({"audit", cfg.string(), "--tol", "1e-6", "--out", scratch("audit_tol1").string()}).code == 0);
  }
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == 4);
  CHECK(invoke({"frobnicate"}).code == 4);
  CHECK(invoke({"audit", kConfigs + "diagonal_logistic.cfg", "--bogus"}).code == 4);
  CHECK(invoke({"audit", "/nonexistent/file.cfg", "--out", scratch("missing").string()}).code == 4);
  const auto bad = write_config("bad", "{\"d\": 1,\n \"N\": }");
  const auto r = invoke({"audit", bad.string(), "--out", scratch("bad").string()});
  CHECK(r.code == 4);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(invoke({"probe", "--kind", "heat"}).code == 4);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("runs are reproducible") {
  const auto dir = scratch("repro");
  const auto cfg = write_config("repro", R"({"d":1,"N":2,"A":[[1,0],[0,1]],"Gamma":[[[0,0],[0,0]]],
    "reaction":{"kind":"polynomial","terms":[[{"coeff":1,"exponents":[0,1]},{"coeff":-2,"exponents":[0,3]}],[]]}})");
  const std::vector<std::string> args{"audit", cfg.string(), "--seed", "42", "--out", dir.string()};
  CHECK(invoke(args).code == 2);
  const std::string report = slurp(dir / "audit.json"), manifest = slurp(dir / "manifest.json");
  CHECK(invoke(args).code == 2);
  CHECK(slurp(dir / "audit.json") == report);
  CHECK(slurp(dir / "manifest.json") == manifest);
  const auto m = json::parse(manifest);
  CHECK(m["seed"] == 42);
  CHECK(m["version"] == conecheck::cli::kVersion);
  CHECK(m["config"]["N"] == 2);

  auto other = args;
  other[3] = "43";
  invoke(other);
  CHECK(slurp(dir / "audit.json") != report);
}

TEST_CASE("counterexample") {
  SECTION("diffusion slope") {
    const auto dir = scratch("ce_diff");
    const auto r = invoke({"counterexample", "--kind", "diffusion", "--k", "1", "--j", "2", "--a", "1.0", "--d", "1",
                           "--eps", "1,0.5,0.25", "--out", dir.string()});
    CHECK(r.code == 0);
    const auto j = json::parse(slurp(dir / "violation.json"));
    CHECK(std::abs(j["fitted_slope"].get<double>() + 6.0) < 0.1);
    CHECK(j["negativity_observed"] == true);
    CHECK(fs::exists(dir / "violation.csv"));
    CHECK(fs::exists(dir / "violation.gp"));
  }
  SECTION("transport and reaction") {
    CHECK(invoke({"counterexample", "--kind", "transport", "--gamma", "-1", "--out", scratch("ce_tr").string()}).code == 0);
    CHECK(invoke({"counterexample", "--kind", "reaction", "--out", scratch("ce_re").string()}).code == 0);
  }
  SECTION("no negativity at a vanishing probe time") {
    CHECK(invoke({"counterexample", "--kind", "transport", "--t-probe", "1e-12", "--out", scratch("ce_none").string()})
              .code == 2);
  }
}

TEST_CASE("probe") {
  const auto dir = scratch("probe");
  const auto r = invoke({"probe", "--kind", "diffusion", "--d", "3", "--eps", "1", "--n", "64", "--out", dir.string()});
  CHECK(r.code == 0);
  const auto j = json::parse(slurp(dir / "probe.json"));
  CHECK(std::abs(j["results"][0]["lap3_at_origin"].get<double>() + 27.0) < 0.27);
  CHECK(r.out.find("-27") != std::string::npos);
  const auto t = invoke({"probe", "--kind", "transport", "--d", "2", "--axis", "2", "--sign", "-1", "--n", "64",
                         "--out", scratch("probe_t").string(), "--json"});
  CHECK(t.code == 0);
  CHECK(std::abs(json::parse(t.out)["results"][0]["derivative_at_origin"].get<double>() - 1.0) < 1e-6);
}

TEST_CASE("simulate") {
  const auto dir = scratch("sim");
  const auto r = invoke({"simulate", kConfigs + "diagonal_logistic.cfg", "--t-end", "0.1", "--dt", "0.01", "--out",
                         dir.string()});
  CHECK(r.code == 0);
  std::ifstream csv(dir / "timeseries.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,component,min,argmin_index,mass,l2norm");
  CHECK(fs::exists(dir / "final_state.json"));
  CHECK(fs::exists(dir / "timeseries.gp"));
  CHECK(invoke({"simulate", kConfigs + "diagonal_logistic.cfg", "--t-end", "0.1", "--dt", "0.03", "--out",
                scratch("sim_bad").string()})
            .code == 5);
}

TEST_CASE("ode-check") {
  const auto cfg = write_config("ode", R"({"d":1,"N":2,"A":[[1,0],[0,1]],"Gamma":[[[0,0],[0,0]]],
    "reaction":{"kind":"linear","L":[[1,0.5],[0,1]]},
    "initial":{"kind":"constant","amplitude":[0.1,1.0]}})");
  const auto dir = scratch("ode");
  const auto r = invoke({"ode-check", cfg.string(), "--out", dir.string()});
  CHECK(r.code == 0);
  const auto j = json::parse(slurp(dir / "ode_check.json"));
  CHECK(j["agree"] == true);
  CHECK(j["first_negative_pde"].is_number());
  CHECK(invoke({"ode-check", kConfigs + "diagonal_logistic.cfg", "--u0", "0.2,0.4", "--out", scratch("ode2").string()})
            .code == 0);
  CHECK(invoke({"ode-check", cfg.string(), "--u0", "1", "--out", scratch("ode3").string()}).code == 4);
}
