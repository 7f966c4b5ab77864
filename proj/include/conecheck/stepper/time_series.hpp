#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "conecheck/core/field.hpp"

namespace conecheck::stepper {

struct ComponentDiagnostics {
  double min = 0.0;
  std::size_t argmin = 0;
  double mass = 0.0;
  double l2norm = 0.0;
};

struct Snapshot {
  std::size_t step = 0;
  double t = 0.0;
  std::vector<ComponentDiagnostics> components;
};

struct TimeSeries {
  std::vector<Snapshot> snapshots;
  Field final_state;
  double final_time = 0.0;
  std::size_t final_step = 0;
  bool blew_up = false;
  std::string blowup_reason;
};

Snapshot diagnose(const Field& u, std::size_t step, double t);

/// CSV with header `t,component,min,argmin_index,mass,l2norm`, one row per
/// snapshot and component (components 1-based). Diagnostics that were not
/// recorded are written as `nan`.
void write_csv(std::ostream& os, const TimeSeries& ts, bool with_min = true, bool with_mass = true,
               bool with_l2 = true);

/// Final state as JSON: {"d","n","box","N","t","step","blew_up","values":[[...]...]}.
void write_state(std::ostream& os, const Field& u, double t, std::size_t step, bool blew_up);

}  // namespace conecheck::stepper
