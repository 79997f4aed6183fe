#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "laserent/dynamics.hpp"
#include "laserent/engine.hpp"
#include "laserent/entropy.hpp"
#include "laserent/errors.hpp"
#include "laserent/fock.hpp"
#include "output.hpp"
#include "units.hpp"

namespace laserent::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using fock::FockDistribution;

std::string cell(const std::string& s) {
  std::string out = s;
  std::replace(out.begin(), out.end(), ',', ';');
  std::replace(out.begin(), out.end(), '\n', ' ');
  return out;
}

void report_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

Json table_to_json(const CsvTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row = Json::object();
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      const std::string& v = r[i];
      if (v == "nan" || v == "inf" || v == "-inf") {
        row[t.header[i]] = nullptr;
        continue;
      }
      char* end = nullptr;
      const double d = std::strtod(v.c_str(), &end);
      if (!v.empty() && end == v.c_str() + v.size()) {
        row[t.header[i]] = d;
      } else {
        row[t.header[i]] = v;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Runs fn(i) for i in [0, n) on up to `threads` workers; results keep index order.
template <class T>
std::vector<T> parallel_rows(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

// ---- laser -------------------------------------------------------------

enum class LaserRegime { above, below, threshold };

std::string_view regime_name(LaserRegime r) {
  switch (r) {
    case LaserRegime::above: return "above_threshold";
    case LaserRegime::below: return "below_threshold";
    case LaserRegime::threshold: return "threshold";
  }
  return "";
}

LaserRegime regime_of(const fock::LaserParams& p) {
  if (p.alpha > p.gamma) return LaserRegime::above;
  if (p.alpha < p.gamma) return LaserRegime::below;
  return LaserRegime::threshold;
}

/// n̄ of the regime's closed forms: A − B above threshold, α/(γ−α) below.
double regime_occupation(const fock::LaserParams& p, LaserRegime r) {
  switch (r) {
    case LaserRegime::above: return p.n_bar();
    case LaserRegime::below: return dynamics::below_threshold_occupation(p);
    case LaserRegime::threshold: return kNaN;
  }
  return kNaN;
}

struct LaserSummary {
  LaserRegime regime;
  double n_bar;
  std::optional<entropy::EntropyValue> closed;
  double linewidth = kNaN;
  double flux = kNaN;
  std::string flux_kind;
  std::vector<std::string> warnings;
};

LaserSummary summarize_laser(const fock::LaserParams& p, double kappa) {
  LaserSummary s{regime_of(p), regime_occupation(p, regime_of(p)), std::nullopt, kNaN, kNaN, "", {}};
  switch (s.regime) {
    case LaserRegime::above:
      s.closed = entropy::laser_entropy_closed_form(p);
      s.linewidth = dynamics::linewidth(p, dynamics::Regime::above_threshold).fwhm;
      s.flux = entropy::entropy_flux_maser(s.n_bar, kappa).value;
      s.flux_kind = "kappa/(2 n_bar)";
      break;
    case LaserRegime::below:
      s.closed = entropy::thermal_entropy_closed_form(s.n_bar);
      s.linewidth = dynamics::linewidth(p, dynamics::Regime::below_threshold).fwhm;
      s.flux = entropy::entropy_flux_thermal(s.n_bar, kappa).value;
      s.flux_kind = "kappa/n_bar";
      break;
    case LaserRegime::threshold:
      s.warnings.push_back("alpha == gamma: closed-form entropy and linewidth are singular at threshold");
      break;
  }
  if (s.closed && s.closed->warning) s.warnings.push_back(*s.closed->warning);
  return s;
}

struct NamedDistribution {
  std::string name;
  std::optional<FockDistribution> dist;
  std::string failure;
};

}  // namespace

void cmd_laser(const LaserOptions& o, std::ostream& out, std::ostream& err) {
  const fock::LaserParams p{o.alpha, o.beta, o.gamma};
  p.validate();
  const fock::TruncationOptions trunc{o.trunc_tol};
  trunc.validate();
  double kappa = o.kappa;
  if (o.power_w != 0.0 || o.frequency_hz != 0.0) {
    if (!(o.power_w >= 0.0)) throw DomainError("power must be nonnegative");
    kappa = units::photon_rate_from_power(o.power_w, o.frequency_hz);
  }

  LaserSummary summary = summarize_laser(p, kappa);

  // The exact distribution is the report's reference; its failure is fatal.
  std::vector<NamedDistribution> dists;
  dists.push_back({"exact", fock::laser_exact_distribution(p, trunc), ""});
  auto try_add = [&](const std::string& name, auto build) {
    try {
      dists.push_back({name, build(), ""});
    } catch (const NumericalError& e) {
      dists.push_back({name, std::nullopt, e.what()});
      summary.warnings.push_back(name + " not computed: " + e.what());
    }
  };
  try_add("shifted_poisson", [&] { return fock::laser_shifted_poisson(p, trunc); });
  try_add("gaussian", [&] { return fock::laser_gaussian(p, trunc); });
  if (summary.regime == LaserRegime::below) {
    try_add("thermal", [&] { return fock::thermal_distribution(summary.n_bar, trunc); });
  }

  CsvTable table;
  table.header = {"distribution", "n_bar", "mean", "variance", "mode", "n_max", "tail_mass_bound",
                  "S_direct", "S_closed", "S_closed_method", "linewidth", "entropy_flux"};
  Json jd = Json::array();
  double s_exact = kNaN;
  for (const auto& nd : dists) {
    if (!nd.dist) {
      table.rows.push_back({nd.name, format_number(summary.n_bar), "nan", "nan", "nan", "nan", "nan",
                            "nan", "nan", "", "nan", "nan"});
      jd.push_back({{"name", nd.name}, {"error", nd.failure}});
      continue;
    }
    const auto& d = *nd.dist;
    for (const auto& w : d.warnings()) summary.warnings.push_back(nd.name + ": " + w);
    const auto m = fock::moments(d);
    const double s_direct = entropy::von_neumann_entropy(d).value;
    if (nd.name == "exact") s_exact = s_direct;

    double s_closed = kNaN;
    std::string method;
    double lw = kNaN, flux = kNaN;
    if (nd.name == "exact") {
      if (summary.closed) {
        s_closed = summary.closed->value;
        method = std::string(entropy::to_string(summary.closed->method));
      }
      lw = summary.linewidth;
      flux = summary.flux;
    } else if (nd.name == "thermal") {
      s_closed = summary.closed->value;
      method = std::string(entropy::to_string(summary.closed->method));
    }
    table.rows.push_back({nd.name, format_number(summary.n_bar), format_number(m.mean),
                          format_number(m.variance), std::to_string(m.mode),
                          std::to_string(d.n_max()), format_number(d.tail_mass_bound()),
                          format_number(s_direct), format_number(s_closed), method,
                          format_number(lw), format_number(flux)});
    jd.push_back({{"name", nd.name},
                  {"mean", m.mean},
                  {"variance", m.variance},
                  {"mode", m.mode},
                  {"n_max", d.n_max()},
                  {"tail_mass_bound", json_number(d.tail_mass_bound())},
                  {"entropy_direct", s_direct},
                  {"total_variation_to_exact", fock::total_variation(d, *dists.front().dist)}});
  }

  const Json params = {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}};
  if (!o.dist_out.empty()) {
    auto it = std::find_if(dists.begin(), dists.end(),
                           [&](const NamedDistribution& nd) { return nd.name == o.dist; });
    if (it == dists.end()) throw DomainError("no distribution named '" + o.dist + "' in this regime");
    if (!it->dist) throw NumericalError(o.dist + " distribution failed: " + it->failure);
    write_distribution_file(o.dist_out, *it->dist, params, trunc.tolerance);
  }

  report_warnings(err, summary.warnings);
  if (o.format == Format::csv) {
    table.write(out);
    return;
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "laser";
  j["params"] = params;
  j["derived"] = {{"A", p.a()},
                  {"B", p.b()},
                  {"pump_ratio", p.pump_ratio()},
                  {"excess", p.excess()},
                  {"regime", regime_name(summary.regime)},
                  {"n_bar", json_number(summary.n_bar)}};
  j["truncation"] = {{"tolerance", trunc.tolerance}, {"hard_cap", trunc.hard_cap}};
  j["distributions"] = std::move(jd);
  Json je = {{"direct", s_exact}};
  if (summary.closed) {
    je["closed"] = summary.closed->value;
    je["closed_method"] = entropy::to_string(summary.closed->method);
    je["closed_minus_direct"] = summary.closed->value - s_exact;
  } else {
    je["closed"] = nullptr;
    je["closed_method"] = nullptr;
    je["closed_minus_direct"] = nullptr;
  }
  j["entropy"] = std::move(je);
  j["linewidth"] = {{"fwhm", json_number(summary.linewidth)}, {"n_bar", json_number(summary.n_bar)}};
  j["entropy_flux"] = {{"kappa", kappa}, {"value", json_number(summary.flux)},
                       {"form", summary.flux_kind}};
  j["warnings"] = summary.warnings;
  write_json(out, j);
}

// ---- bec ---------------------------------------------------------------

namespace {

const std::vector<std::string> kBecColumns = {"N", "t", "H", "mean", "variance", "S_direct",
                                              "S_closed", "S_closed_method", "S_bulk",
                                              "S_ratio", "note"};

std::vector<std::string> bec_row(std::int64_t n, double t, double kappa, double exponent,
                                 double h_floor, std::vector<std::string>* warnings) {
  const fock::BecParams p{n, t, kappa, exponent};
  p.validate();
  const auto d = fock::bec_ground_distribution(p);
  const auto m = fock::moments(d);
  const double s_direct = entropy::von_neumann_entropy(d).value;
  const auto closed = entropy::bec_ground_entropy_closed_form(p, {h_floor});
  const double s_bulk = entropy::bulk_bose_gas_entropy(static_cast<double>(n), t, exponent).value;
  const double ratio = s_bulk > 0.0 ? closed.value / s_bulk : kNaN;
  std::string note;
  for (const auto& w : d.warnings()) note += (note.empty() ? "" : "; ") + w;
  if (closed.warning) note += (note.empty() ? "" : "; ") + *closed.warning;
  if (warnings && !note.empty()) warnings->push_back(note);
  return {std::to_string(n),         format_number(t),
          format_number(p.h()),      format_number(m.mean),
          format_number(m.variance), format_number(s_direct),
          format_number(closed.value), std::string(entropy::to_string(closed.method)),
          format_number(s_bulk),     format_number(ratio),
          cell(note)};
}

void emit_table(const std::string& command, const CsvTable& t, Format f, std::ostream& out,
                Json extra = Json::object()) {
  if (f == Format::csv) {
    t.write(out);
    return;
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  j["columns"] = t.header;
  j["rows"] = table_to_json(t);
  write_json(out, j);
}

}  // namespace

void cmd_bec(const BecOptions& o, std::ostream& out, std::ostream& err) {
  if (!(o.h_floor >= 0.0)) throw DomainError("H floor must be nonnegative");
  CsvTable table;
  table.header = kBecColumns;
  std::vector<std::string> warnings;
  if (o.sweep_t.empty()) {
    table.rows.push_back(bec_row(o.n, o.t, o.kappa, o.exponent, o.h_floor, &warnings));
  } else {
    for (double t : parse_range(o.sweep_t)) {
      table.rows.push_back(bec_row(o.n, t, o.kappa, o.exponent, o.h_floor, nullptr));
    }
  }
  report_warnings(err, warnings);
  emit_table("bec", table, o.format, out,
             {{"params", {{"N", o.n}, {"kappa", o.kappa}, {"exponent", o.exponent},
                          {"h_floor", o.h_floor}}}});
}

// ---- engine ------------------------------------------------------------

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open scenario file '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

nlohmann::json parse_json_with_position(const std::string& text, const std::string& path) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    throw DomainError(path + ":" + std::to_string(line) + ":" + std::to_string(column) +
                      ": malformed JSON: " + msg);
  }
}

double require_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw DomainError(std::string("scenario is missing '") + key + "'");
  if (!j.at(key).is_number()) throw DomainError(std::string("scenario field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

std::string optional_string(const nlohmann::json& j, const char* key, const char* fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw DomainError(std::string("scenario field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

}  // namespace

void cmd_engine(const EngineOptions& o, std::ostream& out, std::ostream&) {
  const auto j = parse_json_with_position(read_file(o.scenario), o.scenario);
  if (!j.is_object()) throw DomainError(o.scenario + ": scenario must be a JSON object");

  const std::string nu_unit = optional_string(j, "nu_unit", "eV");
  const std::string t_unit = optional_string(j, "T_unit", "eV");
  const engine::ReservoirPhoton hot{units::photon_energy_ev(require_number(j, "nu_h"), nu_unit),
                                    units::thermal_energy_ev(require_number(j, "T_h"), t_unit)};
  const engine::ReservoirPhoton cold{units::photon_energy_ev(require_number(j, "nu_c"), nu_unit),
                                     units::thermal_energy_ev(require_number(j, "T_c"), t_unit)};
  const double photon_rate = j.contains("photon_rate") ? require_number(j, "photon_rate") : 1.0;
  auto s = engine::make_scenario(hot, cold, require_number(j, "n_bar_m"), photon_rate);
  if (j.contains("nu_m")) {
    s.maser_frequency = units::photon_energy_ev(require_number(j, "nu_m"), nu_unit);
    engine::validate(s);
  }

  const double ds_m = entropy::delta_s_maser(s.maser_occupation);
  const double budget = engine::cycle_entropy_budget(s, ds_m);
  const double budget_threshold = engine::cycle_entropy_budget(s, 0.0);
  const auto carnot = engine::carnot_quantum_bound(s);
  const auto flux = engine::flux_inequality(s);

  CsvTable t;
  t.header = {"quantity", "value"};
  auto row = [&t](const std::string& k, const std::string& v) { t.rows.push_back({k, v}); };
  row("nu_h_ev", format_number(s.hot.frequency));
  row("nu_c_ev", format_number(s.cold.frequency));
  row("nu_m_ev", format_number(s.maser_frequency));
  row("kT_h_ev", format_number(s.hot.temperature));
  row("kT_c_ev", format_number(s.cold.temperature));
  row("x_h", format_number(s.hot.x()));
  row("x_c", format_number(s.cold.x()));
  row("n_bar_m", format_number(s.maser_occupation));
  row("photon_rate", format_number(s.photon_rate));
  row("delta_s_maser", format_number(ds_m));
  row("budget_per_cycle", format_number(budget));
  row("budget_per_cycle_threshold", format_number(budget_threshold));
  row("carnot_efficiency", format_number(carnot.efficiency));
  row("carnot_bound", format_number(carnot.bound));
  row("carnot_satisfied", carnot.satisfied ? "true" : "false");
  row("carnot_at_equality", carnot.at_equality ? "true" : "false");
  row("flux_lhs", format_number(flux.lhs));
  row("flux_satisfied", flux.satisfied ? "true" : "false");
  row("flux_hot_term", format_number(flux.hot_term));
  row("flux_maser_term", format_number(flux.maser_term));
  row("flux_cold_term", format_number(flux.cold_term));
  row("n_bar_hot", format_number(flux.n_bar_hot));
  row("maser_to_hot_ratio", format_number(flux.maser_to_hot_ratio));
  row("verdict", std::string(engine::to_string(flux.verdict)));

  if (o.format == Format::csv) {
    t.write(out);
    return;
  }
  Json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = "engine";
  r["scenario"] = {{"nu_h_ev", s.hot.frequency},   {"nu_c_ev", s.cold.frequency},
                   {"nu_m_ev", s.maser_frequency}, {"kT_h_ev", s.hot.temperature},
                   {"kT_c_ev", s.cold.temperature}, {"x_h", s.hot.x()},
                   {"x_c", s.cold.x()},            {"n_bar_m", s.maser_occupation},
                   {"photon_rate", s.photon_rate}};
  r["per_cycle"] = {{"delta_s_maser", ds_m},
                    {"budget", budget},
                    {"budget_threshold", budget_threshold}};
  r["carnot"] = {{"efficiency", carnot.efficiency},
                 {"bound", carnot.bound},
                 {"satisfied", carnot.satisfied},
                 {"at_equality", carnot.at_equality}};
  r["flux"] = {{"lhs", flux.lhs},
               {"satisfied", flux.satisfied},
               {"hot_term", flux.hot_term},
               {"maser_term", flux.maser_term},
               {"cold_term", flux.cold_term},
               {"n_bar_hot", flux.n_bar_hot},
               {"maser_to_hot_ratio", flux.maser_to_hot_ratio},
               {"negligible_fraction", engine::kNegligibleFraction}};
  r["verdict"] = engine::to_string(flux.verdict);
  write_json(out, r);
}

// ---- evolve ------------------------------------------------------------

namespace {

void read_rate_table(const std::string& path, std::vector<double>& gain, std::vector<double>& loss) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open rate table '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
    const auto parts = split(line, ',');
    if (parts.size() != 3) {
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected n,gain,loss");
    }
    try {
      const long n = std::stol(parts[0]);
      if (n != static_cast<long>(gain.size())) {
        throw DomainError(path + ":" + std::to_string(lineno) + ": rows must list n = 0, 1, 2, ... in order");
      }
      gain.push_back(std::stod(parts[1]));
      loss.push_back(std::stod(parts[2]));
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const DomainError*>(&e)) throw;
      throw DomainError(path + ":" + std::to_string(lineno) + ": not numeric");
    }
  }
  if (gain.empty()) throw DomainError("rate table '" + path + "' has no rows");
}

dynamics::LadderModel build_model(const EvolveOptions& o) {
  if (o.model == "laser") {
    const fock::LaserParams p{o.alpha, o.beta, o.gamma};
    p.validate();
    const auto n_max = o.n_max > 0 ? o.n_max : dynamics::suggested_laser_n_max(p);
    return dynamics::laser_model(p, n_max);
  }
  if (o.model == "bec") {
    const fock::BecParams p{o.n, o.t, o.kappa, o.exponent};
    p.validate();
    return dynamics::bec_model(p);
  }
  if (o.n_max <= 0) throw DomainError("--n-max is required for the " + o.model + " model");
  if (o.model == "constant") return dynamics::constant_model(o.gain, o.loss, o.n_max);
  if (o.model == "table") {
    std::vector<double> gain, loss;
    read_rate_table(o.table, gain, loss);
    return dynamics::table_model(std::move(gain), std::move(loss), o.n_max);
  }
  throw DomainError("unknown model '" + o.model + "'");
}

FockDistribution build_initial(const std::string& spec, std::int64_t n_max) {
  if (spec == "vacuum") return FockDistribution::point_mass(0);
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (kind == "point") {
      std::size_t used = 0;
      const long long n = std::stoll(arg, &used);
      if (used != arg.size() || n < 0 || n > n_max) throw DomainError("");
      return FockDistribution::point_mass(n);
    }
    if (kind == "thermal") {
      std::size_t used = 0;
      const double n_bar = std::stod(arg, &used);
      if (used != arg.size()) throw DomainError("");
      const auto d = fock::thermal_distribution(n_bar);
      if (d.n_max() <= n_max) return d;
      const auto p = d.probs();
      return FockDistribution::from_weights(
          std::vector<double>(p.begin(), p.begin() + n_max + 1));
    }
  } catch (const std::logic_error&) {
  }
  throw DomainError("initial state '" + spec +
                    "' must be vacuum, point:N (0 <= N <= n_max) or thermal:NBAR");
}

struct Sample {
  double t, mean, variance, entropy, tv;
};

Sample sample_of(double t, std::span<const double> p, std::span<const double> steady) {
  Sample s{t, 0.0, 0.0, 0.0, fock::total_variation(p, steady)};
  for (std::size_t n = 0; n < p.size(); ++n) s.mean += static_cast<double>(n) * p[n];
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double dn = static_cast<double>(n) - s.mean;
    s.variance += dn * dn * p[n];
    if (p[n] > 0.0) s.entropy -= p[n] * std::log(p[n]);
  }
  return s;
}

}  // namespace

void cmd_evolve(const EvolveOptions& o, std::ostream& out, std::ostream&) {
  if (!(o.t_final > 0.0) || !std::isfinite(o.t_final)) throw DomainError("--t-final must be positive");
  if (o.dt < 0.0) throw DomainError("--dt must be positive");
  if (o.stride < 0) throw DomainError("--stride must be positive");
  const auto model = build_model(o);
  const auto steady = dynamics::steady_state(model);
  const auto initial = build_initial(o.initial, model.n_max());

  const double dt_guess = o.dt > 0.0 ? o.dt : dynamics::stable_time_step(model);
  const double steps_guess = std::ceil(o.t_final / dt_guess);
  dynamics::EvolveOptions eo;
  eo.dt = o.dt;
  eo.sample_stride =
      o.stride > 0 ? o.stride : std::max<std::int64_t>(1, static_cast<std::int64_t>(steps_guess / 100));
  std::vector<Sample> samples;
  eo.observer = [&](double t, std::span<const double> p) {
    samples.push_back(sample_of(t, p, steady.probs()));
  };
  const auto ev = dynamics::evolve(model, initial, o.t_final, eo);
  const auto steady_m = fock::moments(steady);
  const double steady_s = entropy::von_neumann_entropy(steady).value;
  const double final_tv = fock::total_variation(ev.final_state, steady);

  if (o.format == Format::csv) {
    out << "t,mean,variance,entropy,tv_to_steady\n";
    for (const auto& s : samples) {
      out << format_number(s.t) << ',' << format_number(s.mean) << ',' << format_number(s.variance)
          << ',' << format_number(s.entropy) << ',' << format_number(s.tv) << '\n';
    }
    return;
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "evolve";
  j["model"] = {{"name", model.name()}, {"n_max", model.n_max()}};
  j["initial"] = o.initial;
  j["integration"] = {{"t_final", o.t_final},
                      {"dt", ev.dt},
                      {"steps", ev.steps},
                      {"norm_drift", ev.norm_drift},
                      {"clipped_mass", ev.clipped_mass}};
  j["steady_state"] = {{"mean", steady_m.mean}, {"variance", steady_m.variance}, {"entropy", steady_s}};
  Json js = Json::array();
  for (const auto& s : samples) {
    js.push_back({{"t", s.t}, {"mean", s.mean}, {"variance", s.variance}, {"entropy", s.entropy},
                  {"tv_to_steady", s.tv}});
  }
  j["samples"] = std::move(js);
  j["final_tv_to_steady"] = final_tv;
  write_json(out, j);
}

// ---- table1 ------------------------------------------------------------

void cmd_table1(const Table1Options& o, std::ostream& out, std::ostream&) {
  const auto t = dynamics::linewidth_entropy_table(o.n_h, o.n_l, o.nu_over_q, o.kappa);
  const auto eq = dynamics::linewidth_entropy_table(o.n_h, o.n_h, o.nu_over_q, o.kappa);
  constexpr double kTol = 1e-12;
  const bool lw_two = std::abs(eq.linewidth_ratio() - 2.0) <= kTol;
  const bool flux_two = o.kappa == 0.0 || std::abs(eq.flux_ratio() - 2.0) <= kTol;
  if (!lw_two || !flux_two) {
    throw NumericalError("factor-of-two check failed at equal occupations");
  }

  CsvTable table;
  table.header = {"quantity", "below_threshold", "above_threshold", "ratio"};
  table.rows.push_back({"linewidth", format_number(t.linewidth_below), format_number(t.linewidth_above),
                        format_number(t.linewidth_ratio())});
  table.rows.push_back({"entropy_flux", format_number(t.flux_below), format_number(t.flux_above),
                        format_number(o.kappa == 0.0 ? kNaN : t.flux_ratio())});
  if (o.format == Format::csv) {
    table.write(out);
    return;
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "table1";
  j["params"] = {{"n_h", o.n_h}, {"n_l", o.n_l}, {"nu_over_q", o.nu_over_q}, {"kappa", o.kappa}};
  j["linewidth"] = {{"below", {{"value", t.linewidth_below}, {"form", "(nu/Q)/n_h"}}},
                    {"above", {{"value", t.linewidth_above}, {"form", "(nu/Q)/(2 n_l)"}}},
                    {"ratio", json_number(t.linewidth_ratio())}};
  j["entropy_flux"] = {{"below", {{"value", t.flux_below}, {"form", "kappa/n_h"}}},
                       {"above", {{"value", t.flux_above}, {"form", "kappa/(2 n_l)"}}},
                       {"ratio", json_number(o.kappa == 0.0 ? kNaN : t.flux_ratio())}};
  j["equal_occupation"] = {{"linewidth_ratio", eq.linewidth_ratio()},
                           {"flux_ratio", json_number(o.kappa == 0.0 ? kNaN : eq.flux_ratio())},
                           {"factor_of_two", true}};
  write_json(out, j);
}

// ---- sweep -------------------------------------------------------------

namespace {

using Row = std::vector<std::string>;

Row failed_row(std::size_t columns, const std::string& first, const std::string& message) {
  Row r(columns, "nan");
  r.front() = first;
  r.back() = cell(message);
  return r;
}

Row pump_row(double ratio, const SweepOptions& o) {
  const fock::LaserParams p{ratio * o.gamma, o.beta, o.gamma};
  p.validate();
  const auto s = summarize_laser(p, o.kappa);
  const auto d = fock::laser_exact_distribution(p, {o.trunc_tol});
  const auto m = fock::moments(d);
  const double direct = entropy::von_neumann_entropy(d).value;
  const double closed = s.closed ? s.closed->value : kNaN;
  std::string note;
  for (const auto& w : s.warnings) note += (note.empty() ? "" : "; ") + w;
  return {format_number(ratio),
          format_number(p.alpha),
          format_number(p.a()),
          format_number(p.b()),
          std::string(regime_name(s.regime)),
          format_number(s.n_bar),
          format_number(m.mean),
          format_number(m.variance),
          format_number(direct),
          format_number(closed),
          s.closed ? std::string(entropy::to_string(s.closed->method)) : "",
          format_number(closed - direct),
          format_number(s.linewidth),
          format_number(s.flux),
          cell(note)};
}

Row occupation_row(double n_bar, const SweepOptions& o) {
  const double closed = entropy::thermal_entropy_closed_form(n_bar).value;
  const double high_t = entropy::thermal_entropy_high_t(n_bar).value;
  double direct = kNaN;
  std::string note;
  try {
    direct = entropy::von_neumann_entropy(fock::thermal_distribution(n_bar, {o.trunc_tol})).value;
  } catch (const NumericalError& e) {
    note = std::string("direct sum: ") + e.what();
  }
  return {format_number(n_bar),
          format_number(closed),
          format_number(high_t),
          format_number(direct),
          format_number(entropy::delta_s_thermal(n_bar)),
          format_number(entropy::delta_s_maser(n_bar)),
          format_number(entropy::entropy_flux_thermal(n_bar, o.kappa).value),
          format_number(entropy::entropy_flux_maser(n_bar, o.kappa).value),
          cell(note)};
}

}  // namespace

void cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream&) {
  const auto values = parse_range(o.range);
  CsvTable table;
  std::function<Row(double)> row_fn;
  if (o.param == "pump") {
    table.header = {"pump_ratio", "alpha", "A", "B", "regime", "n_bar", "mean", "variance",
                    "S_direct", "S_closed", "S_closed_method", "closed_minus_direct",
                    "linewidth", "entropy_flux", "note"};
    row_fn = [&o](double v) { return pump_row(v, o); };
  } else if (o.param == "temperature") {
    table.header = kBecColumns;
    row_fn = [&o](double v) { return bec_row(o.n, v, o.kappa, o.exponent, o.h_floor, nullptr); };
  } else if (o.param == "occupation") {
    table.header = {"n_bar", "S_thermal_closed", "S_thermal_high_t", "S_thermal_direct",
                    "delta_s_thermal", "delta_s_maser", "flux_thermal", "flux_maser", "note"};
    row_fn = [&o](double v) { return occupation_row(v, o); };
  } else {
    throw DomainError("unknown sweep parameter '" + o.param + "'");
  }
  if (!o.outputs.empty()) table.select(o.outputs);  // reject bad names before computing

  const std::size_t cols = table.header.size();
  table.rows = parallel_rows<Row>(values.size(), o.threads, [&](std::size_t i) {
    try {
      return row_fn(values[i]);
    } catch (const std::exception& e) {
      return failed_row(cols, format_number(values[i]), e.what());
    }
  });
  const CsvTable shown = o.outputs.empty() ? table : table.select(o.outputs);
  emit_table("sweep", shown, o.format, out, {{"param", o.param}, {"range", o.range}});
}

}  // namespace laserent::cli
