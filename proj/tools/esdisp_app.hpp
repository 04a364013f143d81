#pragma once

// Command-line front end. Everything lives in run() so the test suite can
// drive it with in-memory streams.
//
// exit codes: 0 ok, 1 usage, 2 numerical failure, 3 empty discrete spectrum.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "esdisp/esdisp.hpp"

namespace esdisp::app {

enum exit_code : int { ok = 0, usage = 1, numerical = 2, empty_spectrum = 3 };

// Reference column of the table command, for diffing only.
inline constexpr double reference_omega_star[11] = {0.733, 0.717, 0.717, 0.691, 0.681, 0.672,
                                                    0.662, 0.654, 0.648, 0.642, 0.637};

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline double round12(double v) { return std::strtod(fmt(v).c_str(), nullptr); }

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> points() const {
    std::vector<double> out;
    const long n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
      out.push_back(start + static_cast<double>(i) * step);
    }
    return out;
  }
};

inline Grid parse_grid(const std::string& text) {
  Grid g;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &g.start, &g.stop, &g.step, &tail) != 3) {
    throw CLI::ValidationError("--grid", "expected start:stop:step, got '" + text + "'");
  }
  if (!(g.step > 0.0) || !(g.stop >= g.start) || !std::isfinite(g.stop)) {
    throw CLI::ValidationError("--grid", "need step > 0 and stop >= start");
  }
  return g;
}

/// Open grid (0, upper) with the given step, as used for the zero figures.
inline std::vector<double> open_grid(double upper, double step) {
  std::vector<double> out;
  for (long k = 1;; ++k) {
    const double w = static_cast<double>(k) * step;
    if (w >= upper - 1e-12) {
      break;
    }
    out.push_back(w);
  }
  return out;
}

// One table cell: empty, number or text.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
  std::vector<std::pair<std::string, Cell>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    return fmt(*d);
  }
  if (const auto* s = std::get_if<std::string>(&c)) {
    return *s;
  }
  return {};
}

inline nlohmann::json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::abs(*d) < 1e15 && *d == std::trunc(*d)) {
      return static_cast<long long>(*d);
    }
    return round12(*d);
  }
  if (const auto* s = std::get_if<std::string>(&c)) {
    return *s;
  }
  return nullptr;
}

inline std::string render(const Table& t, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.metadata) {
      meta[k] = cell_json(v);
    }
    doc["metadata"] = meta;
    doc["columns"] = t.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        obj[t.columns[i]] = cell_json(r[i]);
      }
      rows.push_back(obj);
    }
    doc["rows"] = rows;
    os << doc.dump(2) << '\n';
    return os.str();
  }
  for (const auto& [k, v] : t.metadata) {
    os << "# " << k << '=' << cell_text(v) << '\n';
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? "," : "") << t.columns[i];
  }
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << (i ? "," : "") << cell_text(r[i]);
    }
    os << '\n';
  }
  return os.str();
}

struct RunConfig {
  std::string command;
  double omega = 0.0;
  std::optional<double> a;
  std::optional<double> prandtl;
  std::optional<std::string> grid;
  std::string format;
  std::string out;
  int figure = 0;
  int eval_point = 1;
  std::optional<double> z_re;
  std::optional<double> z_im;
  QuadratureSpec quad;
};

// Raised for numerical failures tied to one output row.
struct row_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void add_quadrature_metadata(Table& t, const QuadratureSpec& q) {
  t.metadata.emplace_back("tau_max", q.tau_max);
  t.metadata.emplace_back("rel_tol", q.rel_tol);
  t.metadata.emplace_back("abs_tol", q.abs_tol);
  t.metadata.emplace_back("max_subdivisions", static_cast<double>(q.max_subdivisions));
}

inline double resolved_a(const RunConfig& c) {
  if (c.prandtl) {
    return FlowParams::from_prandtl(0.0, *c.prandtl).a();
  }
  return c.a.value_or(0.0);
}

inline void add_param_metadata(Table& t, const RunConfig& c, bool with_omega) {
  const double a = resolved_a(c);
  if (with_omega) {
    t.metadata.emplace_back("omega", c.omega);
  }
  t.metadata.emplace_back("a", a);
  t.metadata.emplace_back("prandtl", FlowParams::prandtl_from_a(a));
}

inline Table cmd_eval(const RunConfig& c) {
  const FlowParams p = FlowParams::from_a(c.omega, resolved_a(c));
  Table t;
  t.metadata.emplace_back("command", std::string("eval"));
  add_param_metadata(t, c, true);
  add_quadrature_metadata(t, c.quad);
  const complex linf = lambda_infinity(p);
  t.metadata.emplace_back("lambda_inf_re", linf.real());
  t.metadata.emplace_back("lambda_inf_im", linf.imag());
  if (c.z_re) {
    const complex z(*c.z_re, *c.z_im);
    const complex v = lambda_at(p, z, c.quad);
    t.columns = {"z_re", "z_im", "lambda_re", "lambda_im"};
    t.rows.push_back({z.real(), z.imag(), v.real(), v.imag()});
    return t;
  }
  const Grid g = parse_grid(c.grid.value_or("-4:4:0.02"));
  t.columns = {"mu", "plus_re", "plus_im", "minus_re", "minus_im"};
  for (const double mu : g.points()) {
    const BoundaryValues bv = lambda_boundary(p, mu);
    t.rows.push_back({mu, bv.plus.real(), bv.plus.imag(), bv.minus.real(), bv.minus.imag()});
  }
  return t;
}

inline Table cmd_zero(const RunConfig& c) {
  const FlowParams p = FlowParams::from_a(c.omega, resolved_a(c));
  const ZeroPair exact = eta0_exact(p, c.eval_point, c.quad);
  const ZeroPair as = eta0_asymptotic(p, c.quad);
  const CriticalFrequency cf = critical_frequency(p.a(), c.quad);
  Table t;
  t.metadata.emplace_back("command", std::string("zero"));
  add_param_metadata(t, c, true);
  t.metadata.emplace_back("N", static_cast<double>(c.eval_point));
  add_quadrature_metadata(t, c.quad);
  t.columns = {"kappa", "omega_star", "eta0_re", "eta0_im", "eta0_abs", "residual",
               "eta0_as_re", "eta0_as_im", "eta0_as_abs", "O_signed"};
  t.rows.push_back({1.0, cf.omega_star, exact.eta0.real(), exact.eta0.imag(),
                    std::abs(exact.eta0), exact.residual, as.eta0.real(), as.eta0.imag(),
                    std::abs(as.eta0), error_function(exact, as)});
  return t;
}

inline Table cmd_critical(const RunConfig& c) {
  const double a = resolved_a(c);
  const CriticalFrequency cf = critical_frequency(a, c.quad);
  Table t;
  t.metadata.emplace_back("command", std::string("critical"));
  add_param_metadata(t, c, false);
  add_quadrature_metadata(t, c.quad);
  t.columns = {"prandtl", "a", "omega_star", "argmax_tau"};
  t.rows.push_back({FlowParams::prandtl_from_a(a), a, cf.omega_star, cf.argmax_tau});
  return t;
}

inline Table cmd_table(const RunConfig& c) {
  Table t;
  t.metadata.emplace_back("command", std::string("table"));
  add_quadrature_metadata(t, c.quad);
  t.columns = {"prandtl", "a", "omega_star", "argmax_tau", "paper_value"};
  for (int k = 0; k <= 10; ++k) {
    const double a = k / 10.0;
    try {
      const CriticalFrequency cf = critical_frequency(a, c.quad);
      t.rows.push_back({FlowParams::prandtl_from_a(a), a, cf.omega_star, cf.argmax_tau,
                        reference_omega_star[k]});
    } catch (const error& e) {
      throw row_failure("row a=" + fmt(a) + ": " + to_string(e.code()) + ": " + e.what());
    }
  }
  return t;
}

struct Curve {
  double a;
  double omega;
};

inline Table cmd_figure(const RunConfig& c) {
  Table t;
  t.metadata.emplace_back("command", std::string("figure"));
  t.metadata.emplace_back("figure", static_cast<double>(c.figure));
  add_quadrature_metadata(t, c.quad);

  if (c.figure <= 5) {
    const Grid g = parse_grid(c.grid.value_or("-4:4:0.02"));
    std::vector<Curve> curves;
    if (c.figure <= 2) {
      curves = {{1.0, 0.637}, {0.0, 0.637}};
    } else if (c.figure <= 4) {
      curves = {{1.0, 0.1}, {1.0, 1.0}, {0.0, 0.637}};
    } else {
      curves = {{1.0, 0.1}, {1.0, 0.5}};
    }
    static const char* quantity[] = {"", "re_lambda_plus", "re_lambda_minus", "im_lambda_plus",
                                     "im_lambda_minus", "theta"};
    t.metadata.emplace_back("quantity", std::string(quantity[c.figure]));
    t.columns = {"curve", "prandtl", "a", "omega", "x", "value"};
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const FlowParams p = FlowParams::from_a(curves[i].omega, curves[i].a);
      std::optional<ThetaBranch> branch;
      if (c.figure == 5) {
        branch.emplace(p, c.quad);
      }
      for (const double x : g.points()) {
        double v = 0.0;
        try {
          if (branch) {
            v = (*branch)(x);
          } else {
            const BoundaryValues bv = lambda_boundary(p, x);
            const complex side = (c.figure % 2 == 1) ? bv.plus : bv.minus;
            v = c.figure <= 2 ? side.real() : side.imag();
          }
        } catch (const error& e) {
          throw row_failure("curve " + std::to_string(i + 1) + " x=" + fmt(x) + ": " +
                            to_string(e.code()) + ": " + e.what());
        }
        t.rows.push_back({static_cast<double>(i + 1), p.prandtl(), p.a(), p.omega(), x, v});
      }
    }
    return t;
  }

  // Figures 6 and 7: zero moduli and their relative deviation at Pr = 2/3.
  const double a = 1.0;
  std::vector<double> omegas;
  if (c.grid) {
    omegas = parse_grid(*c.grid).points();
  } else {
    omegas = open_grid(critical_frequency(a, c.quad).omega_star, 0.005);
  }
  t.metadata.emplace_back("a", a);
  t.metadata.emplace_back("prandtl", FlowParams::prandtl_from_a(a));
  t.metadata.emplace_back("N", static_cast<double>(c.eval_point));
  if (c.figure == 6) {
    t.columns = {"omega", "eta0_abs", "eta0_as_abs"};
  } else {
    t.columns = {"omega", "O_signed", "O_abs"};
  }
  for (const SweepRow& row : zero_sweep(a, omegas, c.quad, c.eval_point)) {
    if (row.status != "ok") {
      throw row_failure("omega=" + fmt(row.omega) + ": " + row.status);
    }
    if (c.figure == 6) {
      t.rows.push_back({row.omega, std::abs(row.exact->eta0), std::abs(row.asymptotic->eta0)});
    } else {
      t.rows.push_back({row.omega, *row.error_percent, std::abs(*row.error_percent)});
    }
  }
  return t;
}

inline Table cmd_sweep(const RunConfig& c) {
  const double a = resolved_a(c);
  std::vector<double> omegas;
  if (c.grid) {
    omegas = parse_grid(*c.grid).points();
  } else {
    omegas = open_grid(critical_frequency(a, c.quad).omega_star, 0.005);
  }
  Table t;
  t.metadata.emplace_back("command", std::string("sweep"));
  add_param_metadata(t, c, false);
  t.metadata.emplace_back("N", static_cast<double>(c.eval_point));
  add_quadrature_metadata(t, c.quad);
  t.columns = {"omega",      "eta0_re",    "eta0_im",  "eta0_abs", "eta0_as_re", "eta0_as_im",
               "eta0_as_abs", "O_signed", "O_abs",    "residual", "status"};
  for (const SweepRow& row : zero_sweep(a, omegas, c.quad, c.eval_point)) {
    if (row.status != "ok") {
      std::vector<Cell> r(t.columns.size());
      r.front() = row.omega;
      r.back() = row.status;
      t.rows.push_back(std::move(r));
      continue;
    }
    const complex e = row.exact->eta0;
    const complex s = row.asymptotic->eta0;
    t.rows.push_back({row.omega, e.real(), e.imag(), std::abs(e), s.real(), s.imag(), std::abs(s),
                      *row.error_percent, std::abs(*row.error_percent), row.exact->residual,
                      row.status});
  }
  return t;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dispersion function of the ES kinetic model for Stokes' second problem", "esdisp"};
  app.require_subcommand(1);

  RunConfig c;
  std::string grid_text;
  double tau_max = c.quad.tau_max;
  double rel_tol = c.quad.rel_tol;
  double a_value = 0.0;
  double pr_value = 1.0;

  struct Opts {
    CLI::Option* a = nullptr;
    CLI::Option* prandtl = nullptr;
    CLI::Option* grid = nullptr;
    CLI::Option* format = nullptr;
    std::string default_format;
  };
  std::map<std::string, Opts> opts;

  auto common = [&](CLI::App* sub, bool params, bool omega, const char* format_default) {
    Opts o;
    if (omega) {
      sub->add_option("--omega", c.omega, "dimensionless frequency")
          ->required()
          ->check(CLI::Range(0.0, 2.0));
    }
    if (params) {
      o.a = sub->add_option("--a", a_value, "ES model parameter")->check(CLI::Range(0.0, 1.0));
      o.prandtl = sub->add_option("--prandtl", pr_value, "Prandtl number, Pr = 2/(2+a)")
                      ->check(CLI::Range(2.0 / 3.0 - 1e-12, 1.0));
      o.a->excludes(o.prandtl);
    }
    o.default_format = format_default;
    o.format = sub->add_option("--format", c.format, "csv or json")
                   ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out, "write output here instead of stdout");
    sub->add_option("--tau-max", tau_max, "truncation point of the integrals")
        ->check(CLI::Range(6.0, 50.0));
    sub->add_option("--rel-tol", rel_tol, "relative quadrature tolerance")
        ->check(CLI::Range(1e-15, 1e-2));
    opts[sub->get_name()] = o;
  };

  auto* eval = app.add_subcommand("eval", "boundary values on a real grid, or lambda(z) off axis");
  common(eval, true, true, "csv");
  eval->add_option("--grid", grid_text, "start:stop:step");
  auto* zre = eval->add_option("--z-re", c.z_re, "real part of an off-axis point");
  auto* zim = eval->add_option("--z-im", c.z_im, "imaginary part of an off-axis point");
  zre->needs(zim);
  zim->needs(zre);

  auto* zero = app.add_subcommand("zero", "exact and asymptotic zero eta0");
  common(zero, true, true, "json");
  zero->add_option("--eval-point", c.eval_point, "N of the evaluation point z = N i")
      ->check(CLI::Range(1, 50));

  auto* critical = app.add_subcommand("critical", "critical frequency for one a");
  common(critical, true, false, "json");

  auto* table = app.add_subcommand("table", "critical-frequency table for a = 0, 0.1, ..., 1");
  common(table, false, false, "csv");

  auto* figure = app.add_subcommand("figure", "data series behind figures 1-7");
  common(figure, false, false, "csv");
  figure->add_option("--figure", c.figure, "figure number")->required()->check(CLI::Range(1, 7));
  figure->add_option("--grid", grid_text, "start:stop:step");
  figure->add_option("--eval-point", c.eval_point, "N of the evaluation point z = N i")
      ->check(CLI::Range(1, 50));

  auto* sweep = app.add_subcommand("sweep", "zeros over a frequency grid");
  common(sweep, true, false, "csv");
  sweep->add_option("--grid", grid_text, "start:stop:step");
  sweep->add_option("--eval-point", c.eval_point, "N of the evaluation point z = N i")
      ->check(CLI::Range(1, 50));

  std::vector<const char*> argv{"esdisp"};
  for (const auto& s : args) {
    argv.push_back(s.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    const Opts& o = opts[c.command];
    if (o.format->count() == 0) {
      c.format = o.default_format;
    }
    if (o.a) {
      if (o.a->count() == 0 && o.prandtl->count() == 0) {
        throw CLI::ValidationError("--a/--prandtl", "exactly one of --a and --prandtl is required");
      }
      if (o.a->count()) {
        c.a = a_value;
      } else {
        c.prandtl = pr_value;
      }
    }
    if (!grid_text.empty()) {
      parse_grid(grid_text);
      c.grid = grid_text;
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  c.quad.tau_max = tau_max;
  c.quad.rel_tol = rel_tol;

  Table t;
  try {
    if (c.command == "eval") {
      t = cmd_eval(c);
    } else if (c.command == "zero") {
      t = cmd_zero(c);
    } else if (c.command == "critical") {
      t = cmd_critical(c);
    } else if (c.command == "table") {
      t = cmd_table(c);
    } else if (c.command == "figure") {
      t = cmd_figure(c);
    } else {
      t = cmd_sweep(c);
    }
  } catch (const error& e) {
    if (e.code() == errc::no_discrete_spectrum) {
      err << "no discrete spectrum (kappa=0)\n";
      return empty_spectrum;
    }
    err << "esdisp: " << to_string(e.code()) << ": " << e.what() << '\n';
    return numerical;
  } catch (const row_failure& e) {
    err << "esdisp: failed at " << e.what() << "; no output written\n";
    return numerical;
  }

  const std::string text = render(t, c.format);
  if (c.out.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f || !(f << text)) {
      err << "esdisp: cannot write " << c.out << '\n';
      return usage;
    }
  }
  return ok;
}

}  // namespace esdisp::app
