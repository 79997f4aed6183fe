#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace laserent::cli {

enum class Format { csv, json };

struct LaserOptions {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double trunc_tol = 1e-12;
  double kappa = 1.0;
  double power_w = 0.0;       ///< with frequency_hz, overrides kappa by P/(h f)
  double frequency_hz = 0.0;
  std::string dist = "exact";
  std::string dist_out;
  Format format = Format::csv;
};

struct BecOptions {
  std::int64_t n = 0;
  double t = 0.0;
  double kappa = 1.0;
  double exponent = 3.0;
  double h_floor = 1.0;
  std::string sweep_t;
  Format format = Format::csv;
};

struct EngineOptions {
  std::string scenario;
  Format format = Format::json;
};

struct EvolveOptions {
  std::string model = "laser";
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  std::int64_t n = 0;
  double t = 0.0;
  double kappa = 1.0;
  double exponent = 3.0;
  double gain = 0.0, loss = 0.0;
  std::string table;
  std::int64_t n_max = 0;  ///< zero: model default
  std::string initial = "vacuum";
  double t_final = 0.0;
  double dt = 0.0;
  std::int64_t stride = 0;  ///< zero: about 100 samples
  Format format = Format::csv;
};

struct Table1Options {
  double n_h = 0.0;
  double n_l = 0.0;
  double nu_over_q = 0.0;
  double kappa = 1.0;
  Format format = Format::csv;
};

struct SweepOptions {
  std::string param;
  std::string range;
  std::vector<std::string> outputs;
  double beta = 1e-4;
  double gamma = 1.0;
  std::int64_t n = 1000;
  double exponent = 3.0;
  double h_floor = 1.0;
  double kappa = 1.0;
  double trunc_tol = 1e-12;
  unsigned threads = 0;  ///< zero: hardware concurrency
  Format format = Format::csv;
};

void cmd_laser(const LaserOptions& o, std::ostream& out, std::ostream& err);
void cmd_bec(const BecOptions& o, std::ostream& out, std::ostream& err);
void cmd_engine(const EngineOptions& o, std::ostream& out, std::ostream& err);
void cmd_evolve(const EvolveOptions& o, std::ostream& out, std::ostream& err);
void cmd_table1(const Table1Options& o, std::ostream& out, std::ostream& err);
void cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err);

}  // namespace laserent::cli
