// Acceptance checks. One PASS/FAIL line per criterion; the process exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "laserent/dynamics.hpp"
#include "laserent/engine.hpp"
#include "laserent/entropy.hpp"
#include "laserent/fock.hpp"
#include "laserent/numerics.hpp"

using namespace laserent;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& title, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s -- %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Laser parameters with the given A = α²/(βγ) and α/γ, γ = 1.
fock::LaserParams laser_from(double a, double pump_ratio) {
  const double alpha = pump_ratio;
  return {alpha, alpha * alpha / a, 1.0};
}

// ---------------------------------------------------------------------------

void steady_state_oracle() {
  constexpr double kTv = 1e-6;
  constexpr double kSeconds = 60.0;
  constexpr int kSets = 20;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<fock::LaserParams> sets;
  while (static_cast<int>(sets.size()) < kSets) {
    const double r = 0.3 + 2.7 * unit(rng);
    if (r >= 0.98 && r <= 1.02) continue;
    // Below threshold the ladder length follows α/(γ − α), not A, so A can
    // reach 1e5. Above threshold explicit integration costs ~A² rung-steps.
    const double log_a_max = r < 1.0 ? 5.0 : 3.5;
    const double a = std::pow(10.0, 1.5 + (log_a_max - 1.5) * unit(rng));
    sets.push_back(laser_from(a, r));
  }

  double max_a = 0.0, max_a_above = 0.0;
  int above = 0;
  for (const auto& p : sets) {
    max_a = std::max(max_a, p.a());
    if (p.alpha > p.gamma) {
      ++above;
      max_a_above = std::max(max_a_above, p.a());
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  auto one = [](const fock::LaserParams& p) {
    const auto model = dynamics::laser_model(p, dynamics::suggested_laser_n_max(p));
    const auto steady = dynamics::steady_state(model);
    // slowest relaxation: γ − α below threshold, γ(α − γ)/α above
    const double rate = p.alpha < p.gamma ? p.gamma - p.alpha : p.gamma * (p.alpha - p.gamma) / p.alpha;
    const auto final_state =
        dynamics::evolve_diagonal(model, fock::FockDistribution::point_mass(0), 40.0 / rate);
    return fock::total_variation(final_state, steady);
  };
  std::vector<std::future<double>> jobs;
  for (const auto& p : sets) jobs.push_back(std::async(std::launch::async, one, p));
  double worst = 0.0;
  for (auto& j : jobs) worst = std::max(worst, j.get());
  const double elapsed = seconds_since(t0);

  report(1, worst < kTv && elapsed < kSeconds, "steady state vs long-time integration",
         fmt("20 sets (%.0f above threshold), A up to %.3g", above, max_a) +
             fmt(" (%.3g above)", max_a_above) + fmt(", max TV %.3g (< 1e-6)", worst) + fmt(", %.2f s (< 60 s)", elapsed));
}

void normalization_identity() {
  // ln 1F1(1; B+1; A), mpmath at 40 digits
  struct Case {
    double a, b, log_z;
  };
  const Case cases[] = {
      {10, 1, 7.6973695060455838},       {10, 10, 1.4662020352813038},
      {10, 100, 0.10414315554004764},    {10, 37.5, 0.29776035130763561},
      {100, 1, 95.394829814011909},      {100, 10, 69.052710713194602},
      {100, 100, 2.555459806169064},     {100, 37.5, 28.452234181310885},
      {1000, 1, 993.09224472101786},     {1000, 10, 946.02685978325414},
      {1000, 100, 672.96384765734978},   {1000, 37.5, 842.10529319403443},
      {10000, 1, 9990.7896596280238},    {10000, 10, 9923.0010088533137},
      {10000, 100, 9442.7053383579452},  {10000, 37.5, 9755.7583522067577},
  };
  constexpr double kRel = 1e-8;
  double worst = 0.0, worst_series = 0.0;
  for (const auto& c : cases) {
    const auto d = fock::laser_exact_distribution(laser_from(c.a, c.a / c.b));
    worst = std::max(worst, std::abs(std::expm1(d.log_normalization() - c.log_z)));
    const auto s = numerics::hypergeometric_1f1_1(c.b + 1.0, c.a);
    worst_series = std::max(worst_series, std::abs(std::expm1(d.log_normalization() - s.value)));
  }
  report(2, worst < kRel && worst_series < kRel, "recursion-built Z equals 1F1(1; B+1; A)",
         fmt("16 (A, B) pairs, max rel. error %.3g vs reference", worst) +
             fmt(", %.3g vs series (< 1e-8)", worst_series));
}

void asymptotic_limit() {
  constexpr double kRel = 1e-3;
  // Once the true error drops below double precision the comparison measures
  // roundoff in ln Z, which grows like ε |ln Z|.
  auto roundoff = [](double log_z) { return 1e-12 + 64.0 * DBL_EPSILON * std::abs(log_z); };
  double worst = 0.0;
  bool decreasing = true;
  for (double b : {50.0, 100.0, 200.0, 500.0}) {
    double previous = INFINITY;
    for (double ratio : {1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
      const double a = ratio * b;
      const auto d = fock::laser_exact_distribution(laser_from(a, a / b));
      const double err =
          std::abs(std::expm1(numerics::log_hypergeometric_1f1_1_asymptotic(b, a) - d.log_normalization()));
      if (ratio >= 10.0) worst = std::max(worst, err);
      if (err > previous + roundoff(d.log_normalization())) decreasing = false;
      previous = err;
    }
  }
  report(3, worst < kRel && decreasing, "B! e^A A^-B approximates Z",
         fmt("max rel. error %.3g for A >= 10B, B >= 50 (< 1e-3)", worst) +
             (decreasing ? ", non-increasing in A" : ", NOT decreasing in A"));
}

void laser_closed_form() {
  constexpr double kInside = 0.02;
  constexpr double kBreakdown = 0.1;
  double worst = 0.0;
  for (double excess : {0.1, 0.2, 0.5, 1.0, 2.0}) {
    for (double a : {1e3, 1e4, 1e5}) {
      const auto p = laser_from(a, 1.0 + excess);
      const double direct = entropy::von_neumann_entropy(fock::laser_exact_distribution(p)).value;
      worst = std::max(worst, std::abs(entropy::laser_entropy_closed_form(p).value - direct));
    }
  }
  const auto near = laser_from(1e3, 1.01);
  const double near_direct = entropy::von_neumann_entropy(fock::laser_exact_distribution(near)).value;
  const double near_closed = entropy::laser_entropy_closed_form(near).value;
  const double gap = near_closed - near_direct;
  report(4, worst < kInside && gap > kBreakdown, "closed-form laser entropy",
         fmt("max |S_closed - S_direct| %.3g on (a-g)/g in [0.1, 2], A >= 1e3 (< 0.02)", worst) +
             fmt("; at (a-g)/g = 0.01, A = 1e3 closed exceeds direct by %.3g (> 0.1)", gap));
}

void thermal_entropy() {
  double worst = 0.0;
  for (double n : {0.1, 1.0, 10.0, 1e3}) {
    const double direct = entropy::von_neumann_entropy(fock::thermal_distribution(n)).value;
    worst = std::max(worst, std::abs(entropy::thermal_entropy_closed_form(n).value - direct));
  }
  const double high = std::abs(entropy::thermal_entropy_high_t(1e6).value -
                               entropy::thermal_entropy_closed_form(1e6).value);
  report(5, worst < 1e-6 && high < 1e-3, "thermal entropy",
         fmt("max |closed - direct| %.3g (< 1e-6)", worst) + fmt("; high-T gap at 1e6 %.3g (< 1e-3)", high));
}

std::string cli_verdict(const std::string& scenario) {
  std::ostringstream out, err;
  const int code = cli::run({"engine", "--scenario", std::string(LASERENT_SOURCE_DIR) + "/scenarios/" + scenario,
                             "--format", "csv"},
                            out, err);
  if (code != 0) return "exit " + std::to_string(code);
  const std::string text = out.str();
  const auto pos = text.find("verdict,");
  if (pos == std::string::npos) return "missing";
  return text.substr(pos + 8, text.find('\n', pos) - pos - 8);
}

void per_photon_entropy() {
  const double ds_m = entropy::delta_s_maser(1e6);
  const double ds_t = entropy::delta_s_thermal(1e6);
  const std::string optical = cli_verdict("optical.json");
  const std::string maser = cli_verdict("maser.json");
  const bool pass = ds_m == 0.5e-6 && ds_t == 1e-6 && optical == "negligible" && maser == "comparable";
  report(6, pass, "per-photon entropy and regime verdicts",
         fmt("dS_maser %.17g, dS_thermal %.17g", ds_m, ds_t) + ", optical '" + optical + "', maser '" +
             maser + "'");
}

void factor_of_two() {
  constexpr double kTol = 1e-12;
  double worst = 0.0;
  for (double n : {1.0, 3.7, 100.0, 1e4, 1e6}) {
    const auto t = dynamics::linewidth_entropy_table(n, n, 1e6, 2.5e15);
    worst = std::max({worst, std::abs(t.linewidth_ratio() - 2.0), std::abs(t.flux_ratio() - 2.0)});
    worst = std::max(worst, std::abs(dynamics::linewidth_below(0.9, n) / dynamics::linewidth_above(0.9, n) - 2.0));
    worst = std::max(worst, std::abs(entropy::entropy_flux_thermal(n, 7.0).value /
                                         entropy::entropy_flux_maser(n, 7.0).value -
                                     2.0));
  }
  report(7, worst <= kTol, "factor of two below vs above threshold",
         fmt("max |ratio - 2| %.3g (<= 1e-12)", worst));
}

void bec_mesoscopic() {
  const fock::BecParams p{1000, 0.1};
  const double h = p.h();
  const double s_g = entropy::bec_ground_entropy_closed_form(p).value;
  const double s_bulk = entropy::bulk_bose_gas_entropy(1000.0, 0.1).value;
  const double ratio = s_g / s_bulk;
  const bool pass = std::abs(h - 1.0) < 1e-12 && std::abs(s_g - 1.4189) <= 1e-3 &&
                    std::abs(s_bulk - 3.6) < 1e-12 && ratio >= 0.3 && ratio <= 0.5;
  report(8, pass, "mesoscopic condensate vs bulk gas",
         fmt("H %.15g, S_g %.6f", h, s_g) + fmt(", S_bulk %.15g, ratio %.4f", s_bulk, ratio));
}

void bec_closed_vs_exact() {
  double worst = 0.0;
  for (double t = 0.2; t <= 0.6 + 1e-9; t += 0.05) {
    const fock::BecParams p{1000, t};
    const double direct = entropy::von_neumann_entropy(fock::bec_ground_distribution(p)).value;
    worst = std::max(worst, std::abs(entropy::bec_ground_entropy_closed_form(p).value - direct));
  }
  bool shrinking = true;
  double previous = INFINITY;
  for (double t : {0.1, 0.05, 0.02, 0.01, 0.005, 0.0}) {
    const double s = entropy::von_neumann_entropy(fock::bec_ground_distribution({1000, t})).value;
    if (!(s < previous)) shrinking = s == 0.0 && previous == 0.0 ? shrinking : false;
    previous = s;
  }
  const double at_001 = entropy::von_neumann_entropy(fock::bec_ground_distribution({1000, 0.01})).value;
  const bool first = worst < 0.05;
  const bool second = shrinking && at_001 < 1e-3;
  report(9, first && second, "condensate closed form vs exact",
         fmt("max |closed - direct| %.3g on t in [0.2, 0.6] (< 0.05)", worst) +
             fmt("; S_direct(t = 0.01) = %.3g (< 1e-3 required)", at_001) +
             (shrinking ? ", decreasing to 0 at t = 0" : ", NOT decreasing"));
}

void bec_dynamics() {
  const auto t0 = std::chrono::steady_clock::now();
  const fock::BecParams p{200, 0.3};
  const auto model = dynamics::bec_model(p);
  const auto final_state = dynamics::evolve_diagonal(model, fock::FockDistribution::point_mass(0), 2.0);
  const double mean = fock::moments(final_state).mean;
  const double target = 200.0 * (1.0 - 0.027);
  const double rel = std::abs(mean / target - 1.0);
  const double elapsed = seconds_since(t0);
  report(10, rel < 0.01 && elapsed < 30.0, "condensate growth from an empty ground state",
         fmt("mean %.4f vs N(1 - t^3) = %.1f", mean, target) + fmt(", rel. error %.3g, %.2f s", rel, elapsed));
}

void carnot_bound() {
  using engine::make_scenario;
  // ν_c/ν_h = T_c/T_h exactly
  const auto eq = engine::carnot_quantum_bound(make_scenario({2.0, 1.0}, {1.0, 0.5}, 1e6, 1.0));
  const auto eq2 = engine::carnot_quantum_bound(make_scenario({1.5, 0.75}, {0.6, 0.3}, 1e6, 1.0));
  // efficiency above the bound by 1e-9 and by 1e-14
  const auto over = engine::carnot_quantum_bound(make_scenario({1.0, 1.0}, {0.5 - 1e-9, 0.5}, 1e6, 1.0));
  const auto hair = engine::carnot_quantum_bound(make_scenario({1.0, 1.0}, {0.5 - 1e-14, 0.5}, 1e6, 1.0));
  const auto under = engine::carnot_quantum_bound(make_scenario({1.0, 1.0}, {0.6, 0.5}, 1e6, 1.0));
  const bool pass = eq.at_equality && eq.satisfied && eq2.at_equality && !over.satisfied && hair.satisfied &&
                    under.satisfied && !under.at_equality;
  report(11, pass, "quantum Carnot bound",
         std::string("equality ") + (eq.at_equality && eq2.at_equality ? "detected" : "MISSED") +
             ", +1e-9 excess " + (over.satisfied ? "NOT flagged" : "flagged") + ", +1e-14 excess " +
             (hair.satisfied ? "tolerated" : "flagged") + ", slack case " +
             (under.satisfied && !under.at_equality ? "satisfied" : "WRONG"));
}

void coherence_linewidth() {
  const double nu = 1.0;
  const double d = 1e-3 * nu;
  const double fwhm = dynamics::sampled_spectrum_fwhm(nu, d);
  const double rel = std::abs(fwhm / (2.0 * d) - 1.0);
  report(12, rel < 0.01, "sampled spectrum width equals 2D",
         fmt("FWHM %.6g vs 2D = %.6g", fwhm, 2.0 * d) + fmt(", rel. error %.3g (< 1%%)", rel));
}

bool same_tree(const fs::path& a, const fs::path& b, std::string& why) {
  std::vector<fs::path> fa, fb;
  for (const auto& e : fs::recursive_directory_iterator(a)) fa.push_back(fs::relative(e.path(), a));
  for (const auto& e : fs::recursive_directory_iterator(b)) fb.push_back(fs::relative(e.path(), b));
  std::sort(fa.begin(), fa.end());
  std::sort(fb.begin(), fb.end());
  if (fa != fb) {
    why = "file lists differ";
    return false;
  }
  for (const auto& rel : fa) {
    if (fs::is_directory(a / rel)) continue;
    std::ifstream x(a / rel, std::ios::binary), y(b / rel, std::ios::binary);
    const std::string sx{std::istreambuf_iterator<char>(x), {}};
    const std::string sy{std::istreambuf_iterator<char>(y), {}};
    if (sx != sy) {
      why = rel.string() + " differs";
      return false;
    }
  }
  why = std::to_string(fa.size()) + " files identical";
  return !fa.empty();
}

void determinism() {
  const fs::path base = fs::temp_directory_path() / "laserent_acceptance";
  fs::remove_all(base);
  std::string why;
  bool pass = true;
  for (const char* run : {"run1", "run2"}) {
    const std::string cmd = std::string("bash \"") + LASERENT_SOURCE_DIR + "/scripts/reproduce.sh\" \"" +
                            (base / run).string() + "\" \"" + LASERENT_CLI_BINARY + "\"";
    if (std::system(cmd.c_str()) != 0) {
      pass = false;
      why = std::string("reproduce.sh failed in ") + run;
    }
  }
  if (pass) pass = same_tree(base / "run1", base / "run2", why);
  report(13, pass, "reproduction script output is byte-identical across runs", why);
}

}  // namespace

int main() {
  steady_state_oracle();
  normalization_identity();
  asymptotic_limit();
  laser_closed_form();
  thermal_entropy();
  per_photon_entropy();
  factor_of_two();
  bec_mesoscopic();
  bec_closed_vs_exact();
  bec_dynamics();
  carnot_bound();
  coherence_linewidth();
  determinism();
  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
