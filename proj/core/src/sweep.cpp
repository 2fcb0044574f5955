#include "fbl/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fbl/parallel.hpp"

namespace fbl {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_num(const std::string& s) {
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number in grid: " + s);
  return v;
}

SystemConfig config_for_axis(const SweepSpec& spec, double axis_value) {
  SystemConfig cfg = spec.base;
  switch (spec.axis) {
    case SweepAxis::blocklength: {
      double rounded = std::nearbyint(axis_value);
      if (std::fabs(axis_value - rounded) > 1e-9)
        throw std::invalid_argument("blocklength grid values must be integers");
      cfg.n = static_cast<int>(rounded);
      break;
    }
    case SweepAxis::ebn0_db:
      cfg.energy_mode = EnergyMode::ebn0_db;
      cfg.energy_value = axis_value;
      break;
    case SweepAxis::energy:
      cfg.energy_mode = EnergyMode::total_e;
      cfg.energy_value = axis_value;
      break;
    case SweepAxis::radius:
      break;  // handled by compute_point_at_radius
  }
  return cfg;
}

}  // namespace

SweepAxis sweep_axis_from_string(const std::string& s) {
  if (s == "blocklength" || s == "n") return SweepAxis::blocklength;
  if (s == "ebn0-db" || s == "ebn0_db") return SweepAxis::ebn0_db;
  if (s == "energy") return SweepAxis::energy;
  if (s == "radius") return SweepAxis::radius;
  throw std::invalid_argument("unknown sweep axis: " + s);
}

const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::blocklength:
      return "blocklength";
    case SweepAxis::ebn0_db:
      return "ebn0_db";
    case SweepAxis::energy:
      return "energy";
    case SweepAxis::radius:
      return "radius";
  }
  return "?";
}

std::vector<double> make_grid(const std::string& expr, SweepAxis axis) {
  if (expr.empty()) throw std::invalid_argument("empty grid expression");

  if (expr.find(':') == std::string::npos) {
    // explicit comma list
    std::vector<double> grid;
    for (const auto& part : split(expr, ',')) grid.push_back(parse_num(part));
    if (grid.empty()) throw std::invalid_argument("empty grid list");
    return grid;
  }

  auto parts = split(expr, ':');
  const bool integer_axis = axis == SweepAxis::blocklength;
  std::string scale = integer_axis ? "int" : "lin";
  if (parts.size() == 4) {
    scale = parts[3];
    parts.pop_back();
  }
  if (parts.size() == 2 && integer_axis) parts.push_back("1");
  if (parts.size() != 3)
    throw std::invalid_argument("grid must be start:stop:step|count[:scale]");

  const double start = parse_num(parts[0]);
  const double stop = parse_num(parts[1]);
  std::vector<double> grid;

  if (scale == "int") {
    const double step = parse_num(parts[2]);
    if (!(step > 0)) throw std::invalid_argument("grid step must be positive");
    for (double v = start; v <= stop + 1e-9; v += step)
      grid.push_back(std::nearbyint(v));
  } else if (scale == "lin" || scale == "log") {
    const int count = static_cast<int>(parse_num(parts[2]));
    if (count < 1) throw std::invalid_argument("grid count must be >= 1");
    if (count == 1) {
      grid.push_back(start);
    } else if (scale == "lin") {
      for (int i = 0; i < count; ++i)
        grid.push_back(start + (stop - start) * i / (count - 1));
    } else {
      if (!(start > 0 && stop > 0))
        throw std::invalid_argument("log grid needs positive endpoints");
      const double ls = std::log(start), le = std::log(stop);
      for (int i = 0; i < count; ++i)
        grid.push_back(std::exp(ls + (le - ls) * i / (count - 1)));
    }
  } else {
    throw std::invalid_argument("grid scale must be lin, log, or int");
  }
  if (grid.empty()) throw std::invalid_argument("grid produced no points");
  return grid;
}

SweepRow row_from_report(double axis_value, const PointReport& rep) {
  SweepRow row;
  row.axis_value = axis_value;
  row.M = rep.cfg.M;
  row.n = rep.cfg.n;
  row.k = rep.cfg.k;
  row.epsilon = rep.cfg.epsilon;
  row.sigma2 = rep.cfg.sigma2;
  row.E = rep.E;
  row.R = rep.R;
  row.dmin_min = rep.dist.dmin_min;
  row.dmin_max = rep.dist.dmin_max;
  row.log10_pcon_lb = rep.rates.pcon_lb.log10_value();
  row.log10_pcon_ub = rep.rates.pcon_ub.log10_value();
  row.pers_lb = rep.rates.pers_lb.value();
  row.pers_ub = rep.rates.pers_ub.value();
  row.feasible = rep.rates.feasible;
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  // rows come out ordered by axis value whatever the grid or completion order
  SweepSpec sorted = spec;
  std::sort(sorted.grid.begin(), sorted.grid.end());
  const std::size_t count = sorted.grid.size();
  std::vector<SweepRow> rows(count);
  std::exception_ptr error;
  std::mutex error_mutex;

  parallel_chunks(count, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      try {
        const double v = sorted.grid[i];
        const SystemConfig cfg = config_for_axis(sorted, v);
        const PointReport rep =
            sorted.axis == SweepAxis::radius
                ? compute_point_at_radius(cfg, v, sorted.unit)
                : compute_point(cfg, sorted.unit);
        rows[i] = row_from_report(v, rep);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  });
  if (error) std::rethrow_exception(error);
  return rows;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "axis_value,M,n,k,epsilon,sigma2,E,R,dmin_min,dmin_max,"
        "log10_pcon_lb,log10_pcon_ub,pers_lb,pers_ub,feasible\n";
  for (const auto& r : rows) {
    os << fmt_double(r.axis_value) << ',' << r.M << ',' << r.n << ',' << r.k
       << ',' << fmt_double(r.epsilon) << ',' << fmt_double(r.sigma2) << ','
       << fmt_double(r.E) << ',' << fmt_double(r.R) << ',' << r.dmin_min << ','
       << r.dmin_max << ',' << fmt_double(r.log10_pcon_lb) << ','
       << fmt_double(r.log10_pcon_ub) << ',' << fmt_double(r.pers_lb) << ','
       << fmt_double(r.pers_ub) << ',' << (r.feasible ? 1 : 0) << '\n';
  }
}

std::string rows_to_json(const std::vector<SweepRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["axis_value"] = r.axis_value;
    j["M"] = r.M;
    j["n"] = r.n;
    j["k"] = r.k;
    j["epsilon"] = r.epsilon;
    j["sigma2"] = r.sigma2;
    j["E"] = r.E;
    j["R"] = r.R;
    j["dmin_min"] = r.dmin_min;
    j["dmin_max"] = r.dmin_max;
    j["log10_pcon_lb"] =
        std::isinf(r.log10_pcon_lb) ? ordered_json() : ordered_json(r.log10_pcon_lb);
    j["log10_pcon_ub"] =
        std::isinf(r.log10_pcon_ub) ? ordered_json() : ordered_json(r.log10_pcon_ub);
    j["pers_lb"] = r.pers_lb;
    j["pers_ub"] = r.pers_ub;
    j["feasible"] = r.feasible;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace fbl
