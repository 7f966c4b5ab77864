#include "conecheck/stepper/time_series.hpp"

#include <cstdio>
#include <limits>
#include <ostream>

namespace conecheck::stepper {

Snapshot diagnose(const Field& u, std::size_t step, double t) {
  Snapshot snap;
  snap.step = step;
  snap.t = t;
  for (std::size_t k = 0; k < u.ncomp(); ++k) {
    const auto mn = min_component_value(u, k);
    snap.components.push_back({mn.value, mn.index, component_mass(u, k), component_l2_norm(u, k)});
  }
  return snap;
}

namespace {
void put(std::ostream& os, double v, bool enabled) {
  if (!enabled) {
    os << "nan";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}
}  // namespace

void write_csv(std::ostream& os, const TimeSeries& ts, bool with_min, bool with_mass, bool with_l2) {
  os << "t,component,min,argmin_index,mass,l2norm\n";
  for (const auto& snap : ts.snapshots) {
    for (std::size_t k = 0; k < snap.components.size(); ++k) {
      const auto& c = snap.components[k];
      put(os, snap.t, true);
      os << ',' << (k + 1) << ',';
      put(os, c.min, with_min);
      os << ',';
      if (with_min)
        os << c.argmin;
      else
        os << "nan";
      os << ',';
      put(os, c.mass, with_mass);
      os << ',';
      put(os, c.l2norm, with_l2);
      os << '\n';
    }
  }
}

void write_state(std::ostream& os, const Field& u, double t, std::size_t step, bool blew_up) {
  char buf[40];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  };
  const Grid& g = u.grid();
  os << "{\n  \"d\": " << g.dim() << ",\n  \"n\": " << g.n() << ",\n  \"box\": " << num(g.box())
     << ",\n  \"N\": " << u.ncomp() << ",\n  \"t\": " << num(t) << ",\n  \"step\": " << step
     << ",\n  \"blew_up\": " << (blew_up ? "true" : "false") << ",\n  \"layout\": \"component-major, row-major grid, axis 0 slowest\",\n  \"values\": [";
  for (std::size_t k = 0; k < u.ncomp(); ++k) {
    os << (k ? ",\n    [" : "\n    [");
    const auto c = u.component(k);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ',';
      os << num(c[i]);
    }
    os << ']';
  }
  os << "\n  ]\n}\n";
}

}  // namespace conecheck::stepper
