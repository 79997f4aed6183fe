#include <fstream>
#include <map>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "cli.hpp"
#include "commands.hpp"
#include "json_config.hpp"
#include "laserent/errors.hpp"

namespace laserent::cli {

namespace {

struct Common {
  std::map<const CLI::App*, std::string> format;
  std::string output;
};

void add_common(CLI::App* sub, Common& common, const char* default_format) {
  common.format[sub] = default_format;
  sub->add_option("--format", common.format[sub], "Report format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("-o,--output", common.output, "Write the report to this file instead of stdout");
  sub->footer("Any option may also be read from a JSON file given with --config.");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon- and atom-number statistics, entropy and entropy flux of lasers, masers "
               "and condensates"};
  app.name("laserent");
  app.config_formatter(std::make_shared<JsonConfig>([&app] {
    const auto parsed = app.get_subcommands();
    return parsed.empty() ? std::string() : parsed.front()->get_name();
  }));
  app.set_config("--config", "",
                 "JSON file of option values; top-level keys apply to the subcommand being run");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();
  app.require_subcommand(1);

  Common common;

  LaserOptions laser;
  auto* c_laser = app.add_subcommand("laser", "Steady-state photon statistics and entropy of a laser");
  c_laser->add_option("--alpha", laser.alpha, "Linear gain α")->required();
  c_laser->add_option("--beta", laser.beta, "Saturation coefficient β")->required();
  c_laser->add_option("--gamma", laser.gamma, "Cavity loss γ")->required();
  c_laser->add_option("--trunc-tol", laser.trunc_tol, "Ladder truncation tolerance")
      ->capture_default_str();
  c_laser->add_option("--kappa", laser.kappa, "Photon throughput for the entropy flux")
      ->capture_default_str();
  c_laser->add_option("--power-w", laser.power_w, "Output power in W (with --frequency-hz sets kappa)");
  c_laser->add_option("--frequency-hz", laser.frequency_hz, "Laser frequency in Hz");
  c_laser->add_option("--dist", laser.dist, "Distribution written by --dist-out")
      ->check(CLI::IsMember({"exact", "shifted_poisson", "gaussian", "thermal"}))
      ->capture_default_str();
  c_laser->add_option("--dist-out", laser.dist_out, "Distribution file (.csv, .json or .dat)");
  add_common(c_laser, common, "csv");

  BecOptions bec;
  auto* c_bec = app.add_subcommand("bec", "Condensate number statistics and entropy");
  c_bec->add_option("--n", bec.n, "Total atom number N")->required();
  auto* bec_t = c_bec->add_option("--t", bec.t, "Reduced temperature T/T_c");
  auto* bec_sweep = c_bec->add_option("--sweep-t", bec.sweep_t, "start:stop:steps");
  bec_t->excludes(bec_sweep);
  c_bec->add_option("--kappa", bec.kappa, "Per-atom transition rate")->capture_default_str();
  c_bec->add_option("--exponent", bec.exponent, "Condensate-fraction exponent")->capture_default_str();
  c_bec->add_option("--floor", bec.h_floor, "Smallest H for the closed-form entropy")
      ->capture_default_str();
  add_common(c_bec, common, "csv");

  EngineOptions eng;
  auto* c_engine = app.add_subcommand("engine", "Entropy budget and Carnot check of a maser heat engine");
  c_engine->add_option("--scenario", eng.scenario, "Scenario JSON file")->required();
  add_common(c_engine, common, "json");

  EvolveOptions ev;
  auto* c_evolve = app.add_subcommand("evolve", "Integrate the diagonal master equation");
  c_evolve->add_option("--model", ev.model, "laser, bec, constant or table")
      ->check(CLI::IsMember({"laser", "bec", "constant", "table"}))
      ->capture_default_str();
  c_evolve->add_option("--alpha", ev.alpha, "Laser linear gain α");
  c_evolve->add_option("--beta", ev.beta, "Laser saturation coefficient β");
  c_evolve->add_option("--gamma", ev.gamma, "Laser cavity loss γ");
  c_evolve->add_option("--n", ev.n, "BEC total atom number N");
  c_evolve->add_option("--t", ev.t, "BEC reduced temperature");
  c_evolve->add_option("--kappa", ev.kappa, "BEC per-atom transition rate")->capture_default_str();
  c_evolve->add_option("--exponent", ev.exponent, "BEC condensate-fraction exponent")
      ->capture_default_str();
  c_evolve->add_option("--gain", ev.gain, "Constant model gain G");
  c_evolve->add_option("--loss", ev.loss, "Constant model loss L");
  c_evolve->add_option("--table", ev.table, "CSV with n,gain,loss rows");
  c_evolve->add_option("--n-max", ev.n_max, "Top rung of the ladder");
  c_evolve->add_option("--initial", ev.initial, "vacuum, point:N or thermal:NBAR")
      ->capture_default_str();
  c_evolve->add_option("--t-final", ev.t_final, "Integration time")->required();
  c_evolve->add_option("--dt", ev.dt, "Time step (default: stability limit)");
  c_evolve->add_option("--stride", ev.stride, "Steps between samples (default: about 100 samples)");
  add_common(c_evolve, common, "csv");

  Table1Options t1;
  auto* c_table1 = app.add_subcommand("table1", "Linewidth and entropy flux below and above threshold");
  c_table1->add_option("--n-h", t1.n_h, "Thermal occupation below threshold")->required();
  c_table1->add_option("--n-l", t1.n_l, "Laser occupation above threshold")->required();
  c_table1->add_option("--nu-over-q", t1.nu_over_q, "Cavity loss rate ν/Q")->required();
  c_table1->add_option("--kappa", t1.kappa, "Photon throughput")->capture_default_str();
  add_common(c_table1, common, "csv");

  SweepOptions sw;
  auto* c_sweep = app.add_subcommand("sweep", "Parameter sweep across threshold, T/T_c or occupation");
  c_sweep->add_option("--param", sw.param, "pump, temperature or occupation")
      ->check(CLI::IsMember({"pump", "temperature", "occupation"}))
      ->required();
  c_sweep->add_option("--range", sw.range, "start:stop:steps")->required();
  c_sweep->add_option("--outputs", sw.outputs, "Columns to keep")->delimiter(',');
  c_sweep->add_option("--beta", sw.beta, "Laser saturation coefficient (pump)")->capture_default_str();
  c_sweep->add_option("--gamma", sw.gamma, "Laser cavity loss (pump)")->capture_default_str();
  c_sweep->add_option("--n", sw.n, "Total atom number (temperature)")->capture_default_str();
  c_sweep->add_option("--exponent", sw.exponent, "Condensate-fraction exponent")->capture_default_str();
  c_sweep->add_option("--floor", sw.h_floor, "Smallest H for the BEC closed form")->capture_default_str();
  c_sweep->add_option("--kappa", sw.kappa, "Photon or atom throughput")->capture_default_str();
  c_sweep->add_option("--trunc-tol", sw.trunc_tol, "Ladder truncation tolerance")->capture_default_str();
  c_sweep->add_option("--threads", sw.threads, "Worker threads (default: all cores)");
  add_common(c_sweep, common, "csv");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    const auto parsed = app.get_subcommands();
    err << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitUsage;
  }
  if (c_bec->parsed() && bec_t->count() == 0 && bec_sweep->count() == 0) {
    err << "bec: one of --t or --sweep-t is required\n" << c_bec->help();
    return kExitUsage;
  }

  auto* chosen = app.get_subcommands().front();
  const Format format = common.format[chosen] == "json" ? Format::json : Format::csv;
  laser.format = bec.format = eng.format = ev.format = t1.format = sw.format = format;

  std::ofstream file;
  std::ostream* sink = &out;
  if (!common.output.empty()) {
    file.open(common.output);
    if (!file) {
      err << "invalid input: cannot open '" << common.output << "' for writing\n";
      return kExitValidation;
    }
    sink = &file;
  }

  try {
    if (c_laser->parsed()) cmd_laser(laser, *sink, err);
    else if (c_bec->parsed()) cmd_bec(bec, *sink, err);
    else if (c_engine->parsed()) cmd_engine(eng, *sink, err);
    else if (c_evolve->parsed()) cmd_evolve(ev, *sink, err);
    else if (c_table1->parsed()) cmd_table1(t1, *sink, err);
    else if (c_sweep->parsed()) cmd_sweep(sw, *sink, err);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace laserent::cli
