#pragma once

// CSV emission: header row, comma separator, 17 significant digits.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "mhd1d/diagnostics.hpp"
#include "mhd1d/error.hpp"
#include "mhd1d/state.hpp"

namespace mhd1d {

namespace detail {
inline void put(std::ostream& os, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  os << buf;
}
}  // namespace detail

inline void write_fields_csv(std::ostream& os, const std::vector<State1D>& snapshots) {
  os << "t,cell,coordinate,density_or_volume,u,w1,w2,theta,b2,b3\n";
  for (const auto& s : snapshots) {
    for (int i = 0; i < s.size(); ++i) {
      detail::put(os, s.time);
      os << ',' << i << ',';
      detail::put(os, s.grid.center(i));
      for (const auto* f : s.fields()) {
        os << ',';
        detail::put(os, (*f)[i]);
      }
      os << '\n';
    }
  }
}

inline void write_diagnostics_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& rows) {
  os << "time,total_mass,total_energy,total_entropy,min_theta,min_density,min_entropy_production,"
        "sobolev_norm_s1\n";
  for (const auto& d : rows) {
    const double v[] = {d.time,      d.total_mass,  d.total_energy,           d.total_entropy,
                        d.min_theta, d.min_density, d.min_entropy_production, d.sobolev_norm_s1};
    for (size_t k = 0; k < 8; ++k) {
      if (k) os << ',';
      detail::put(os, v[k]);
    }
    os << '\n';
  }
}

inline void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                            const std::vector<std::vector<double>>& rows) {
  for (size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << '\n';
  for (const auto& r : rows) {
    if (r.size() != header.size()) throw InvalidParams("write_table_csv: row width differs from header");
    for (size_t k = 0; k < r.size(); ++k) {
      if (k) os << ',';
      detail::put(os, r[k]);
    }
    os << '\n';
  }
}

template <class Writer>
void write_file(const std::string& path, Writer&& w) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  w(f);
  f.flush();
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace mhd1d
