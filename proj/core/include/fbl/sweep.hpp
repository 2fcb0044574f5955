#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fbl/bounds.hpp"

namespace fbl {

enum class SweepAxis { blocklength, ebn0_db, energy, radius };

SweepAxis sweep_axis_from_string(const std::string& s);
const char* to_string(SweepAxis a);

struct SweepSpec {
  SystemConfig base;                // cfg template; the axis field is overridden
  SweepAxis axis = SweepAxis::blocklength;
  std::vector<double> grid;         // axis values, emitted in this order
  DistanceUnit unit = DistanceUnit::paper;
};

struct SweepRow {
  double axis_value = 0.0;
  int M = 0, n = 0, k = 0;
  double epsilon = 0.0, sigma2 = 0.0, E = 0.0, R = 0.0;
  int dmin_min = 0, dmin_max = 0;
  double log10_pcon_lb = 0.0, log10_pcon_ub = 0.0;
  double pers_lb = 0.0, pers_ub = 0.0;
  bool feasible = false;
};

// Parses "a,b,c" explicit lists or "start:stop:step" (integer axes) /
// "start:stop:count[:lin|log]" range expressions.
std::vector<double> make_grid(const std::string& expr, SweepAxis axis);

// Evaluates every grid point (concurrently; rows keep grid order).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Fixed column schema:
// axis_value,M,n,k,epsilon,sigma2,E,R,dmin_min,dmin_max,
// log10_pcon_lb,log10_pcon_ub,pers_lb,pers_ub,feasible
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

std::string rows_to_json(const std::vector<SweepRow>& rows);

SweepRow row_from_report(double axis_value, const PointReport& report);

}  // namespace fbl
