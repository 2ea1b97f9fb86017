// SPDX-License-Identifier: Apache-2.0
//
// qwell — command-line front end: single-point variational/exact energies,
// parameter sweeps as CSV, shallow-series and deep-expansion reports,
// critical-strength and curve-crossing finders.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qwell/errors.hpp"
#include "qwell/expansions.hpp"
#include "qwell/oracle.hpp"
#include "qwell/trial.hpp"
#include "qwell/wells.hpp"

namespace {

using json = nlohmann::ordered_json;

// All floating output carries 12 significant digits for reproducible diffs.
std::string g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) { return std::strtod(g12(x).c_str(), nullptr); }

qwell::WellShape parse_well(const std::string& name) {
  return name == "square" ? qwell::WellShape::square(1.0)
                          : qwell::WellShape::gaussian();
}

qwell::Family family_for(const std::string& method, int state) {
  if (method == "harmonic")
    return state == 0 ? qwell::Family::harmonic_even : qwell::Family::harmonic_odd;
  return state == 0 ? qwell::Family::exponential_even : qwell::Family::exponential_odd;
}

qwell::Family parse_family(const std::string& name) {
  if (name == "harm-even") return qwell::Family::harmonic_even;
  if (name == "harm-odd") return qwell::Family::harmonic_odd;
  if (name == "exp-even") return qwell::Family::exponential_even;
  return qwell::Family::exponential_odd;
}

struct Row {
  double v0;
  int state;
  std::string method;
  std::optional<double> a_opt;
  double energy;
};

Row solve_row(const qwell::WellShape& shape, double v0, int state,
              const std::string& method) {
  if (method == "numerov") {
    // Exact oracle: Numerov shooting for the Gaussian well, the
    // transcendental matching equations for the square box.
    const auto r = shape.kind == qwell::Shape::gaussian
                       ? qwell::numerov_eigen(qwell::Potential{shape, v0}, state)
                       : qwell::square_transcendental(v0, state);
    return {v0, state, method, std::nullopt, r.energy};
  }
  const auto opt = qwell::optimize_parameter(family_for(method, state), shape, v0);
  return {v0, state, method, opt.a_opt, opt.energy};
}

std::string rows_csv(const std::vector<Row>& rows) {
  std::ostringstream os;
  os << "v0,state,method,a_opt,energy\n";
  for (const auto& r : rows) {
    os << g12(r.v0) << ',' << r.state << ',' << r.method << ','
       << (r.a_opt ? g12(*r.a_opt) : std::string()) << ',' << g12(r.energy) << '\n';
  }
  return os.str();
}

json rows_json(const std::vector<Row>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["v0"] = round12(r.v0);
    j["state"] = r.state;
    j["method"] = r.method;
    if (r.a_opt)
      j["a_opt"] = round12(*r.a_opt);
    else
      j["a_opt"] = nullptr;
    j["energy"] = round12(r.energy);
    arr.push_back(j);
  }
  return arr;
}

json series_json(const qwell::Series& s) {
  json arr = json::array();
  for (int k = 0; k <= s.order(); ++k) arr.push_back(round12(s[k]));
  return arr;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << text;
}

void emit_report(const json& j, const std::string& format, const std::string& csv,
                 const std::string& out_path) {
  emit(format == "json" ? j.dump(2) + "\n" : csv, out_path);
}

int run(int argc, char** argv) {
  CLI::App app{"Variational and numerically exact bound states of 1D quantum wells"};
  app.require_subcommand(1);

  std::string well = "gaussian", method = "harmonic", format = "csv", out;
  std::string family_name, methods_arg = "all";
  double v0 = 1.0, v0_min = 0.5, v0_max = 8.0;
  int state = 0, points = 16, order = 8;
  bool exact = false;

  const std::vector<std::string> wells{"gaussian", "square"};
  const std::vector<std::string> methods_all{"harmonic", "exponential", "numerov"};

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out, "output path (default: stdout)");
  };

  auto* c_energy = app.add_subcommand("energy", "one optimized or exact energy");
  c_energy->add_option("--well", well)->check(CLI::IsMember(wells));
  c_energy->add_option("--v0", v0, "well strength")
      ->required()
      ->check(CLI::PositiveNumber);
  c_energy->add_option("--state", state)->check(CLI::Range(0, 1));
  c_energy->add_option("--method", method)->check(CLI::IsMember(methods_all));
  add_io(c_energy);

  auto* c_sweep = app.add_subcommand("sweep", "energy curves over a strength grid");
  c_sweep->add_option("--well", well)->check(CLI::IsMember(wells));
  c_sweep->add_option("--v0-min", v0_min)->required()->check(CLI::PositiveNumber);
  c_sweep->add_option("--v0-max", v0_max)->required()->check(CLI::PositiveNumber);
  c_sweep->add_option("--points", points)->required()->check(CLI::Range(1, 100000));
  std::vector<int> states{0};
  c_sweep->add_option("--states", states, "states to include")
      ->delimiter(',')
      ->check(CLI::Range(0, 1));
  c_sweep->add_option("--methods", methods_arg,
                      "comma list of harmonic,exponential,numerov or 'all'");
  add_io(c_sweep);

  auto* c_series = app.add_subcommand("series", "shallow-well expansion coefficients");
  c_series->add_option("--family", family_name, "trial family or 'exact'")
      ->required()
      ->check(CLI::IsMember({"harm-even", "exp-even", "exact"}));
  c_series->add_option("--order", order)->check(CLI::Range(2, 40));
  c_series->add_option("--well", well)->check(CLI::IsMember(wells));
  add_io(c_series);

  auto* c_deep = app.add_subcommand("deep", "deep-well expansion: fit vs closed form");
  c_deep->add_option("--family", family_name)
      ->required()
      ->check(CLI::IsMember({"harm-even", "harm-odd"}));
  add_io(c_deep);

  auto* c_critical = app.add_subcommand("critical", "critical well strength");
  c_critical->add_option("--family", family_name, "variational family")
      ->check(CLI::IsMember({"harm-odd", "exp-odd"}));
  c_critical->add_flag("--exact", exact, "numerically exact threshold");
  c_critical->add_option("--state", state)->check(CLI::Range(0, 1));
  c_critical->add_option("--well", well)->check(CLI::IsMember(wells));
  add_io(c_critical);

  auto* c_crossing =
      app.add_subcommand("crossing", "harmonic/exponential curve crossing");
  c_crossing->add_option("--state", state)->required()->check(CLI::Range(0, 1));
  add_io(c_crossing);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return 2;
  }

  const qwell::WellShape shape = parse_well(well);

  if (app.got_subcommand(c_energy)) {
    const Row row = solve_row(shape, v0, state, method);
    json j;
    j["inputs"] = {{"well", well}, {"v0", round12(v0)}, {"state", state},
                   {"method", method}};
    j["results"] = {{"rows", rows_json({row})}};
    j["diagnostics"] = json::object();
    emit_report(j, format, rows_csv({row}), out);
    return 0;
  }

  if (app.got_subcommand(c_sweep)) {
    if (v0_max < v0_min)
      throw CLI::ValidationError("sweep", "--v0-max must be >= --v0-min");
    std::vector<std::string> methods;
    {
      std::stringstream ss(methods_arg);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (tok == "all") {
          methods = methods_all;
          break;
        }
        if (std::find(methods_all.begin(), methods_all.end(), tok) ==
            methods_all.end())
          throw CLI::ValidationError("sweep", "unknown method: " + tok);
        methods.push_back(tok);
      }
      if (methods.empty()) methods = methods_all;
    }
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());

    // Rows come out sorted by (state, method, v0) with the fixed method
    // order harmonic, exponential, numerov.
    std::vector<Row> rows;
    json skipped = json::array();
    for (int st : states) {
      for (const auto& m : methods_all) {
        if (std::find(methods.begin(), methods.end(), m) == methods.end()) continue;
        for (int i = 0; i < points; ++i) {
          const double v =
              points == 1 ? v0_min : v0_min + i * (v0_max - v0_min) / (points - 1);
          try {
            rows.push_back(solve_row(shape, v, st, m));
          } catch (const qwell::no_bound_state&) {
            skipped.push_back({{"v0", round12(v)}, {"state", st}, {"method", m},
                               {"reason", "no bound state"}});
          } catch (const qwell::numeric_error&) {
            skipped.push_back({{"v0", round12(v)}, {"state", st}, {"method", m},
                               {"reason", "no stationary point"}});
          }
        }
      }
    }
    json j;
    j["inputs"] = {{"well", well},     {"v0_min", round12(v0_min)},
                   {"v0_max", round12(v0_max)}, {"points", points},
                   {"states", states}, {"methods", methods}};
    j["results"] = {{"rows", rows_json(rows)}};
    j["diagnostics"] = {{"skipped", skipped}};
    emit_report(j, format, rows_csv(rows), out);
    return 0;
  }

  if (app.got_subcommand(c_series)) {
    qwell::ShallowSeries s;
    if (family_name == "exact") {
      if (well != "gaussian")
        throw CLI::ValidationError("series", "exact reference series is Gaussian");
      s = qwell::reference_exact_shallow();
    } else {
      s = qwell::shallow_expansion(parse_family(family_name), order, shape);
    }
    std::ostringstream csv;
    csv << "power,coefficient\n";
    for (int k = 0; k <= s.energy.order(); ++k)
      csv << k << ',' << g12(s.energy[k]) << '\n';

    json j;
    j["inputs"] = {{"family", family_name}, {"order", order}, {"well", well}};
    j["results"] = {{"powers_of", "v0"}, {"coefficients", series_json(s.energy)}};
    json diag = json::object();
    if (family_name != "exact") {
      diag["internal_variable"] =
          s.variable == qwell::ShallowVariable::sqrt_a ? "sqrt(a)" : "a";
      diag["strength_of_u"] = series_json(s.strength_of_u);
      diag["u_of_strength"] = series_json(s.u_of_strength);
      diag["energy_of_u"] = series_json(s.energy_of_u);
    }
    j["diagnostics"] = diag;
    emit_report(j, format, csv.str(), out);
    return 0;
  }

  if (app.got_subcommand(c_deep)) {
    const auto fit = qwell::deep_expansion_fit(parse_family(family_name));
    std::ostringstream csv;
    csv << "coefficient,analytic,fitted\n";
    csv << "A," << g12(fit.analytic.A) << ',' << g12(fit.fitted.A) << '\n';
    csv << "B," << g12(fit.analytic.B) << ',' << g12(fit.fitted.B) << '\n';
    csv << "C," << g12(fit.analytic.C) << ',' << g12(fit.fitted.C) << '\n';
    csv << "a1," << g12(fit.a1_analytic) << ',' << g12(fit.a1_fitted) << '\n';
    csv << "a2," << g12(fit.a2_analytic) << ',' << g12(fit.a2_fitted) << '\n';

    json j;
    j["inputs"] = {{"family", family_name}};
    j["results"] = {
        {"analytic",
         {{"A", round12(fit.analytic.A)},
          {"B", round12(fit.analytic.B)},
          {"C", round12(fit.analytic.C)},
          {"a1", round12(fit.a1_analytic)},
          {"a2", round12(fit.a2_analytic)}}},
        {"fitted",
         {{"A", round12(fit.fitted.A)},
          {"B", round12(fit.fitted.B)},
          {"C", round12(fit.fitted.C)},
          {"a1", round12(fit.a1_fitted)},
          {"a2", round12(fit.a2_fitted)}}}};
    json ladder = json::array(), resid = json::array();
    for (double v : fit.ladder) ladder.push_back(round12(v));
    for (double r : fit.residuals) resid.push_back(round12(r));
    j["diagnostics"] = {{"ladder", ladder}, {"residuals", resid}};
    emit_report(j, format, csv.str(), out);
    return 0;
  }

  if (app.got_subcommand(c_critical)) {
    if (exact == !family_name.empty())
      throw CLI::ValidationError("critical",
                                 "choose exactly one of --family or --exact");
    std::ostringstream csv;
    csv << "mode,family,state,a_c,v0_c\n";
    json j;
    if (exact) {
      if (state == 0)
        throw CLI::ValidationError("critical",
                                   "the even ground state has no threshold");
      const double vc = qwell::critical_strength_exact(shape, state);
      csv << "exact,," << state << ",," << g12(vc) << '\n';
      j["inputs"] = {{"mode", "exact"}, {"well", well}, {"state", state}};
      j["results"] = {{"v0_c", round12(vc)}};
    } else {
      const auto c = qwell::variational_critical(parse_family(family_name));
      csv << "variational," << family_name << ",1," << g12(c.a_c) << ','
          << g12(c.strength_c) << '\n';
      j["inputs"] = {{"mode", "variational"}, {"family", family_name}};
      j["results"] = {{"a_c", round12(c.a_c)}, {"v0_c", round12(c.strength_c)}};
    }
    j["diagnostics"] = json::object();
    emit_report(j, format, csv.str(), out);
    return 0;
  }

  if (app.got_subcommand(c_crossing)) {
    const auto c = qwell::crossing_point(state);
    std::ostringstream csv;
    csv << "state,v_c,lo,hi\n";
    csv << c.state << ',' << g12(c.v_c) << ',' << g12(c.lo) << ',' << g12(c.hi)
        << '\n';
    json j;
    j["inputs"] = {{"state", state}};
    j["results"] = {{"v_c", round12(c.v_c)},
                    {"bracket_lo", round12(c.lo)},
                    {"bracket_hi", round12(c.hi)}};
    j["diagnostics"] = json::object();
    emit_report(j, format, csv.str(), out);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Validation errors raised after parsing (inconsistent flag combinations).
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qwell::no_bound_state& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qwell::no_threshold& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qwell::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
