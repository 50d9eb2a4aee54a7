#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "allspeed/acoustics.hpp"
#include "allspeed/diagnostics.hpp"
#include "allspeed/grid.hpp"

/**
 * @file io.hpp
 * @brief Plain-text field dumps and CSV tables.
 *
 * Field dump: a first line "nx ny dx dy x0 y0 time" holding those values,
 * then one line "i j rho rho_u rho_v e" per interior cell, j outer, i inner.
 * Numbers use %.17g so a dump round-trips exactly.
 */
namespace allspeed {

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_dump(std::ostream& os, const Field& f) {
  const GridSpec& g = f.spec;
  os << g.nx << ' ' << g.ny << ' ' << format_number(g.dx) << ' ' << format_number(g.dy) << ' '
     << format_number(g.x0) << ' ' << format_number(g.y0) << ' ' << format_number(f.time) << '\n';
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const ConservedState& q = f(i, j);
      os << i << ' ' << j << ' ' << format_number(q.rho) << ' ' << format_number(q.rho_u) << ' '
         << format_number(q.rho_v) << ' ' << format_number(q.e) << '\n';
    }
}

inline void write_dump(const std::string& path, const Field& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_dump(os, f);
}

/// Reads a dump; boundary kinds are not stored, so they are set by the caller (default periodic).
inline Field read_dump(std::istream& is, BoundaryKind bc_x = BoundaryKind::periodic,
                       BoundaryKind bc_y = BoundaryKind::periodic) {
  GridSpec g;
  double time = 0.0;
  if (!(is >> g.nx >> g.ny >> g.dx >> g.dy >> g.x0 >> g.y0 >> time))
    throw std::runtime_error("dump: malformed header");
  g.bc_x = bc_x;
  g.bc_y = bc_y;
  Field f(g);
  f.time = time;
  for (long k = 0; k < static_cast<long>(g.nx) * g.ny; ++k) {
    int i = 0, j = 0;
    ConservedState q;
    if (!(is >> i >> j >> q.rho >> q.rho_u >> q.rho_v >> q.e))
      throw std::runtime_error("dump: truncated at record " + std::to_string(k));
    if (i < 0 || i >= g.nx || j < 0 || j >= g.ny)
      throw std::runtime_error("dump: cell index out of range at record " + std::to_string(k));
    f(i, j) = q;
  }
  fill_ghosts(f);
  return f;
}

inline Field read_dump(const std::string& path, BoundaryKind bc_x = BoundaryKind::periodic,
                       BoundaryKind bc_y = BoundaryKind::periodic) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_dump(is, bc_x, bc_y);
}

/// A numeric CSV table with a header row.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  [[nodiscard]] std::size_t column(const std::string& name) const {
    for (std::size_t k = 0; k < columns.size(); ++k)
      if (columns[k] == name) return k;
    throw std::out_of_range("no column '" + name + "'");
  }
};

inline void write_csv(std::ostream& os, const CsvTable& t) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_number(row[k]);
    os << '\n';
  }
}

inline void write_csv(const std::string& path, const CsvTable& t) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(os, t);
}

inline CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("csv: missing header");
  {
    std::stringstream ss(line);
    std::string name;
    while (std::getline(ss, name, ',')) t.columns.push_back(name);
  }
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      try {
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size() || cell.empty())
        throw std::runtime_error("csv: bad number '" + cell + "' on line " + std::to_string(lineno));
    }
    if (row.size() != t.columns.size())
      throw std::runtime_error("csv: wrong column count on line " + std::to_string(lineno));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline CsvTable diagnostics_table(const std::vector<DiagnosticsRecord>& recs) {
  CsvTable t{{"time", "l1_gradp_x", "l1_gradp_y", "l1_div_multid", "l1_div_central", "l1_d2u",
              "mass", "mom_x", "mom_y", "energy", "max_mach"},
             {}};
  for (const auto& d : recs)
    t.rows.push_back({d.time, d.l1_gradp_x, d.l1_gradp_y, d.l1_div_multid, d.l1_div_central,
                      d.l1_d2u, d.totals.rho, d.totals.rho_u, d.totals.rho_v, d.totals.e,
                      d.max_mach});
  return t;
}

inline CsvTable radial_table(const std::vector<RadialRecord>& recs) {
  CsvTable t{{"r", "rho", "vrad", "p"}, {}};
  for (const auto& r : recs) t.rows.push_back({r.r, r.rho, r.vrad, r.p});
  return t;
}

inline CsvTable stability_table(const std::vector<AmplificationProbe>& probes) {
  CsvTable t{{"beta_x", "beta_y", "spectral_radius"}, {}};
  for (const auto& p : probes) t.rows.push_back({p.beta_x, p.beta_y, p.spectral_radius});
  return t;
}

inline CsvTable toy_table(const std::vector<double>& q, double dt) {
  CsvTable t{{"n", "t", "q"}, {}};
  for (std::size_t k = 0; k < q.size(); ++k)
    t.rows.push_back({static_cast<double>(k), dt * static_cast<double>(k), q[k]});
  return t;
}

}  // namespace allspeed
