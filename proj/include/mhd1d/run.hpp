#pragma once

// Time loop with snapshot/diagnostics recording. A failed step is retried
// once with half the step; a second consecutive failure aborts the run.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhd1d/config.hpp"
#include "mhd1d/diagnostics.hpp"
#include "mhd1d/error.hpp"
#include "mhd1d/integrator.hpp"
#include "mhd1d/scenario.hpp"
#include "mhd1d/state.hpp"

namespace mhd1d {

struct Trajectory {
  std::vector<State1D> snapshots;
  std::vector<DiagnosticsRecord> diagnostics;
  long steps = 0;

  const State1D& final_state() const { return snapshots.back(); }
};

class SimulationAborted : public std::runtime_error {
 public:
  SimulationAborted(const std::string& what, Trajectory partial, State1D last_good)
      : std::runtime_error(what), partial(std::move(partial)), last_good(std::move(last_good)) {}

  Trajectory partial;
  State1D last_good;
};

struct RunOptions {
  double t_end = 1.0;
  double cfl = 0.5;
  int cadence = 10;
  const State1D* reference = nullptr;  // equilibrium for the Sobolev distance
  bool diagnostics = true;
  std::function<void(const State1D&)> on_step;  // called after every accepted step
};

inline Trajectory integrate(const State1D& initial, const Model& m, const RunOptions& opt) {
  if (opt.cadence <= 0) throw InvalidParams("cadence must be > 0");
  if (!(opt.t_end >= initial.time)) throw InvalidParams("t_end precedes the initial time");
  m.validate(initial.coordinate());
  initial.check();

  Trajectory tr;
  auto record = [&](const State1D& s) {
    tr.snapshots.push_back(s);
    if (opt.diagnostics) tr.diagnostics.push_back(compute_diagnostics(s, m, opt.reference));
  };

  State1D s = initial;
  record(s);
  if (opt.on_step) opt.on_step(s);
  const double tiny = 1e-14 * std::max(1.0, std::abs(opt.t_end));
  bool recorded_last = true;
  while (opt.t_end - s.time > tiny) {
    double dt = std::min(stable_dt(s, m, opt.cfl), opt.t_end - s.time);
    if (opt.t_end - (s.time + dt) <= tiny) dt = opt.t_end - s.time;
    State1D next;
    try {
      next = step(s, dt, m);
    } catch (const std::exception&) {
      try {
        next = step(step(s, 0.5 * dt, m), 0.5 * dt, m);
      } catch (const std::exception& second) {
        throw SimulationAborted("step failed twice at t = " + detail::fmt17(s.time) + " (dt = " +
                                    detail::fmt17(dt) + "): " + second.what(),
                                tr, s);
      }
    }
    if (opt.t_end - next.time <= tiny) next.time = opt.t_end;
    s = std::move(next);
    ++tr.steps;
    if (opt.on_step) opt.on_step(s);
    recorded_last = tr.steps % opt.cadence == 0;
    if (recorded_last) record(s);
  }
  if (!recorded_last) record(s);
  return tr;
}

/// Runs a configuration from its scenario's initial state.
inline Trajectory run(const RunConfig& c, const std::function<void(const State1D&)>& on_step = {}) {
  const Model m = build_model(c);
  const State1D s0 = initial_state(c);
  const State1D ref = reference_equilibrium(c);
  RunOptions opt;
  opt.t_end = c.t_end;
  opt.cfl = c.cfl;
  opt.cadence = c.cadence;
  opt.reference = c.scenario == "manufactured" ? nullptr : &ref;
  opt.on_step = on_step;
  return integrate(s0, m, opt);
}

inline Trajectory run(RunConfig c, const EosParams& eos, const TransportParams& transport) {
  c.eos = eos;
  c.transport = transport;
  return run(c);
}

}  // namespace mhd1d
