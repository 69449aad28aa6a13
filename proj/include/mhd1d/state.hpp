#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mhd1d/error.hpp"
#include "mhd1d/thermo.hpp"
#include "mhd1d/transport.hpp"

namespace mhd1d {

enum class Coordinate { eulerian, lagrangian };

inline const char* to_string(Coordinate c) {
  return c == Coordinate::eulerian ? "eulerian-x" : "lagrangian-y";
}

struct Grid1D {
  int n_cells = 64;
  Coordinate coordinate = Coordinate::eulerian;
  double domain_length = 1.0;

  Grid1D() = default;
  Grid1D(int n, Coordinate c, double length = 1.0) : n_cells(n), coordinate(c), domain_length(length) {
    validate();
  }

  void validate() const {
    if (n_cells < 8) throw InvalidParams("grid needs at least 8 cells");
    if (!(domain_length > 0.0)) throw InvalidParams("domain length must be positive");
  }

  double dx() const { return domain_length / n_cells; }
  double center(int i) const { return (i + 0.5) * dx(); }
  double face(int i) const { return i * dx(); }
  bool operator==(const Grid1D&) const = default;
};

/// Cell-centred primitive fields. In Lagrangian coordinates the first field
/// holds the specific volume v = 1/rho; the longitudinal field component
/// b1 is identically 1.
struct State1D {
  static constexpr double b1 = 1.0;

  double time = 0.0;
  Grid1D grid;
  std::vector<double> density_or_volume;
  std::vector<double> u;
  std::vector<double> w1, w2;
  std::vector<double> theta;
  std::vector<double> b2, b3;

  State1D() = default;
  explicit State1D(const Grid1D& g, double t = 0.0) : time(t), grid(g) {
    const auto n = static_cast<size_t>(g.n_cells);
    density_or_volume.assign(n, 1.0);
    u.assign(n, 0.0);
    w1.assign(n, 0.0);
    w2.assign(n, 0.0);
    theta.assign(n, 1.0);
    b2.assign(n, 0.0);
    b3.assign(n, 0.0);
  }

  int size() const { return grid.n_cells; }
  Coordinate coordinate() const { return grid.coordinate; }
  bool lagrangian() const { return grid.coordinate == Coordinate::lagrangian; }

  double density(int i) const {
    return lagrangian() ? 1.0 / density_or_volume[i] : density_or_volume[i];
  }
  double volume(int i) const {
    return lagrangian() ? density_or_volume[i] : 1.0 / density_or_volume[i];
  }

  std::array<std::vector<double>*, 7> fields() {
    return {&density_or_volume, &u, &w1, &w2, &theta, &b2, &b3};
  }
  std::array<const std::vector<double>*, 7> fields() const {
    return {&density_or_volume, &u, &w1, &w2, &theta, &b2, &b3};
  }

  /// Throws PositivityError or NumericalError if the state is not admissible.
  void check() const {
    const auto n = static_cast<size_t>(size());
    for (auto* f : fields())
      if (f->size() != n) throw InvalidParams("state field length does not match grid");
    const char* names[] = {lagrangian() ? "v" : "rho", "u", "w1", "w2", "theta", "b2", "b3"};
    int k = 0;
    for (auto* f : fields()) {
      for (size_t i = 0; i < n; ++i)
        if (!std::isfinite((*f)[i]))
          throw NumericalError(std::string("non-finite ") + names[k] + " in cell " + std::to_string(i));
      ++k;
    }
    for (size_t i = 0; i < n; ++i) {
      if (!(density_or_volume[i] > 0.0))
        throw PositivityError(names[0], static_cast<int>(i), density_or_volume[i]);
      if (!(theta[i] > 0.0)) throw PositivityError("theta", static_cast<int>(i), theta[i]);
    }
  }

  bool operator==(const State1D&) const = default;
};

enum class BcKind { fixed_dirichlet, free_boundary, periodic };

inline const char* to_string(BcKind k) {
  switch (k) {
    case BcKind::fixed_dirichlet: return "fixed-dirichlet";
    case BcKind::free_boundary: return "free-boundary";
    case BcKind::periodic: return "periodic";
  }
  return "?";
}

struct BcSpec {
  BcKind kind = BcKind::fixed_dirichlet;
  double external_pressure = 1.0;

  void validate(Coordinate c) const {
    if (kind == BcKind::free_boundary && c != Coordinate::lagrangian)
      throw InvalidParams("free-boundary conditions require Lagrangian coordinates");
    if (!std::isfinite(external_pressure)) throw InvalidParams("external pressure must be finite");
  }
};

struct RegularizationParams {
  double epsilon = 0.0;
  double delta = 0.0;
  double Gamma = 0.0;

  bool active() const { return epsilon > 0.0 || delta > 0.0; }

  void validate() const {
    if (!(epsilon >= 0.0)) throw InvalidParams("epsilon must be >= 0");
    if (!(delta >= 0.0)) throw InvalidParams("delta must be >= 0");
    if (delta > 0.0 && !(Gamma > 8.0)) throw InvalidParams("Gamma required > 8 when delta > 0");
  }
};

struct GravityParams {
  double G = 0.0;
  bool enabled = false;

  void validate() const {
    if (!(G >= 0.0)) throw InvalidParams("gravitational constant must be >= 0");
  }
};

/// Switches for the individual operators; all on by default.
struct PhysicsToggles {
  bool hyperbolic = true;
  bool viscous = true;
  bool heat = true;
  bool resistive = true;
};

enum class Limiter { first_order, minmod, mc, unlimited };
enum class DiffusionMode { implicit, explicit_ };

inline const char* to_string(Limiter l) {
  switch (l) {
    case Limiter::first_order: return "first-order";
    case Limiter::minmod: return "minmod";
    case Limiter::mc: return "mc";
    case Limiter::unlimited: return "unlimited";
  }
  return "?";
}

/// Indices of the conserved variables. Eulerian: (rho, rho u, rho w, E, b);
/// Lagrangian: (v, u, w, vE, vb).
enum Var : int { kMass = 0, kMom = 1, kW1 = 2, kW2 = 3, kEnergy = 4, kB2 = 5, kB3 = 6, kNumVars = 7 };

struct Conserved {
  std::array<std::vector<double>, kNumVars> q;

  Conserved() = default;
  explicit Conserved(int n) {
    for (auto& v : q) v.assign(static_cast<size_t>(n), 0.0);
  }
  int size() const { return static_cast<int>(q[0].size()); }
  std::vector<double>& operator[](int k) { return q[static_cast<size_t>(k)]; }
  const std::vector<double>& operator[](int k) const { return q[static_cast<size_t>(k)]; }
};

/// Per-cell time derivatives of the conserved variables.
using Tendencies = Conserved;

/// Source hook: fills out[k] with the source of conserved variable k at
/// (t, s), s the cell-centre coordinate.
using SourceFn = std::function<void(double t, double s, std::array<double, kNumVars>& out)>;

struct SolverOptions {
  PhysicsToggles physics;
  Limiter limiter = Limiter::mc;
  DiffusionMode diffusion = DiffusionMode::implicit;
  int picard_iterations = 2;
  SourceFn source;
};

/// Everything the integrator needs besides the state.
struct Model {
  EosParams eos;
  TransportParams transport;
  BcSpec bc;
  RegularizationParams reg;
  GravityParams grav;
  SolverOptions options;

  void validate(Coordinate c) const {
    eos.validate();
    transport.validate();
    bc.validate(c);
    reg.validate();
    grav.validate();
    if (c == Coordinate::lagrangian && reg.active())
      throw InvalidParams("regularization terms are only available in Eulerian coordinates");
    if (c == Coordinate::lagrangian && grav.enabled && grav.G > 0.0)
      throw InvalidParams("gravity is only available in Eulerian coordinates");
    if (options.picard_iterations < 1) throw InvalidParams("picard_iterations must be >= 1");
  }

  bool has_energy() const { return eos.has_temperature(); }
  bool gravity_on() const { return grav.enabled && grav.G > 0.0; }
};

}  // namespace mhd1d
