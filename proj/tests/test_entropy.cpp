#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "laserent/entropy.hpp"
#include "laserent/errors.hpp"
#include "laserent/fock.hpp"
#include "laserent/numerics.hpp"
#include "oracles.hpp"

using namespace laserent;
using namespace laserent::entropy;
using fock::FockDistribution;
using fock::LaserParams;

namespace {

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

LaserParams above(double excess, double a) {
  const double alpha = 1.0 + excess;
  return {alpha, alpha * alpha / a, 1.0};
}

}  // namespace

TEST_CASE("direct-sum entropy basics") {
  CHECK(von_neumann_entropy(FockDistribution::point_mass(7)).value == 0.0);
  CHECK(von_neumann_entropy(FockDistribution::point_mass(7)).method == Method::direct_sum);

  for (int w : {1, 2, 10, 1000}) {
    const auto uniform = FockDistribution::from_weights(std::vector<double>(w, 1.0));
    CHECK(von_neumann_entropy(uniform).value == doctest::Approx(std::log(w)).epsilon(1e-13));
  }
  const auto thermal = fock::thermal_distribution(1.0);
  CHECK(von_neumann_entropy(thermal).value == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-10));
  CHECK(von_neumann_entropy(thermal).value == doctest::Approx(oracle::shannon(thermal.probs())));
}

TEST_CASE("direct sum is bounded, permutation and padding invariant, concave") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t len = 1 + rng() % 60;
    std::vector<double> w(len), v(len);
    for (auto& x : w) x = u(rng) < 0.2 ? 0.0 : u(rng);
    for (auto& x : v) x = u(rng);
    w[0] += 1e-3;
    const auto d1 = FockDistribution::from_weights(w);
    const auto d2 = FockDistribution::from_weights(v);
    const double s1 = von_neumann_entropy(d1).value;
    const double s2 = von_neumann_entropy(d2).value;
    REQUIRE(s1 >= 0.0);
    REQUIRE(s1 <= std::log(static_cast<double>(len)) + 1e-12);

    auto shuffled = std::vector<double>(d1.probs().begin(), d1.probs().end());
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled.resize(len + 17, 0.0);
    REQUIRE(von_neumann_entropy(FockDistribution::from_weights(shuffled)).value ==
            doctest::Approx(s1).epsilon(1e-12));

    std::vector<double> mix(len);
    for (std::size_t i = 0; i < len; ++i) mix[i] = 0.5 * d1.probs()[i] + 0.5 * d2.probs()[i];
    REQUIRE(von_neumann_entropy(FockDistribution::from_weights(mix)).value >=
            0.5 * s1 + 0.5 * s2 - 1e-12);
  }
}

TEST_CASE("laser closed form") {
  const auto p = above(1.0, 1e4);
  const auto s = laser_entropy_closed_form(p);
  CHECK(s.method == Method::closed_form_laser);
  CHECK_FALSE(s.warning);
  CHECK(s.value == doctest::Approx(6.0241087191927640).epsilon(1e-13));
  CHECK(std::abs(s.value - von_neumann_entropy(fock::laser_exact_distribution(p)).value) < 1e-2);

  const auto q = above(0.5, 1e4);
  CHECK(std::abs(laser_entropy_closed_form(q).value -
                 von_neumann_entropy(fock::laser_exact_distribution(q)).value) < 0.02);

  // both ways of writing it agree: A = n̄ α/(α−γ)
  CHECK(laser_entropy_from_occupation(q.alpha / (q.alpha - q.gamma), q.n_bar()) ==
        doctest::Approx(laser_entropy_closed_form(q).value).epsilon(1e-14));

  const auto near = above(0.01, 1e3);
  const auto sn = laser_entropy_closed_form(near);
  CHECK(sn.warning);
  CHECK(sn.value - von_neumann_entropy(fock::laser_exact_distribution(near)).value > 0.1);
}

TEST_CASE("Stirling derivation chain reaches the closed form") {
  // Term-by-term evaluation of the expansion steps on the shifted Poisson
  // distribution; none of these sums share code with the closed form.
  const auto p = above(1.0, 1e4);
  const double a = p.a(), b = p.b();
  const auto d = fock::laser_shifted_poisson(p);
  long double exact_log = 0.0L, stirling = 0.0L, second_order = 0.0L;
  const double n_bar = a - b;
  for (std::int64_t n = 0; n <= d.n_max(); ++n) {
    const double rho = d[n];
    if (rho == 0.0) continue;
    const double m = n + b;
    exact_log -= rho * (m * std::log(a) - a - numerics::log_factorial(m));
    stirling += rho * (0.5 * std::log(2.0 * std::numbers::pi * m) + m * (std::log(m) - std::log(a)));
    const double dn = n - n_bar;
    const double ln_m = std::log(a) + dn / a - dn * dn / (2.0 * a * a);
    second_order += rho * (0.5 * std::log(2.0 * std::numbers::pi * m) + m * (ln_m - std::log(a)));
  }
  const double closed = laser_entropy_closed_form(p).value;
  CHECK(static_cast<double>(exact_log) == doctest::Approx(von_neumann_entropy(d).value).epsilon(1e-9));
  CHECK(std::abs(static_cast<double>(stirling) - static_cast<double>(exact_log)) < 1e-4);
  CHECK(std::abs(static_cast<double>(second_order) - closed) < 1e-3);
}

TEST_CASE("maser entropy is not extensive") {
  const double ratio = 3.0;  // α/(α−γ)
  for (double n_bar : {1e2, 1e4, 1e6}) {
    const double diff =
        laser_entropy_from_occupation(ratio, n_bar) - laser_entropy_from_occupation(ratio, 2 * n_bar);
    CHECK(std::abs(diff + 0.5 * std::log(2.0)) < 0.01);
  }
}

TEST_CASE("thermal closed form") {
  CHECK(thermal_entropy_closed_form(0.0).value == 0.0);
  CHECK(thermal_entropy_closed_form(1.0).value == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
  CHECK(std::abs(thermal_entropy_closed_form(1e6).value - (std::log(1e6) + 1.0)) < 1e-5);
  CHECK(thermal_entropy_high_t(1e6).method == Method::closed_form_high_t);
  for (double n_bar : {0.1, 1.0, 10.0, 1e3}) {
    CAPTURE(n_bar);
    const double direct = von_neumann_entropy(fock::thermal_distribution(n_bar)).value;
    CHECK(std::abs(thermal_entropy_closed_form(n_bar).value - direct) < 1e-6);
  }
  CHECK_THROWS_AS(thermal_entropy_closed_form(-0.5), DomainError);
}

TEST_CASE("entropy fluxes and per-photon changes") {
  CHECK(delta_s_maser(1e6) == 0.5e-6);
  CHECK(delta_s_maser(1e6, -1.0) == -0.5e-6);
  CHECK(entropy_flux_maser(1e6, 0.0).value == 0.0);
  CHECK(delta_s_thermal(1.0) == 1.0);
  CHECK(delta_s_thermal(1e6) == 1e-6);
  CHECK(entropy_flux_thermal(1e6, 0.0).value == 0.0);
  for (double n : {1.0, 37.0, 1e6}) {
    CHECK(entropy_flux_thermal(n, 3.0).value / entropy_flux_maser(n, 3.0).value ==
          doctest::Approx(2.0).epsilon(1e-15));
  }
  const auto f = entropy_flux_maser(10.0, -4.0);
  CHECK(f.value < 0.0);
  CHECK(f.kappa == -4.0);
  CHECK_THROWS_AS(entropy_flux_maser(0.0, 1.0), DomainError);
}

TEST_CASE("BEC ground-state entropy") {
  const fock::BecParams meso{1000, 0.1};
  const auto s = bec_ground_entropy_closed_form(meso);
  CHECK(s.method == Method::closed_form_bec);
  CHECK(s.value == doctest::Approx(kHalfLog2Pi + 0.5).epsilon(1e-12));
  CHECK(std::abs(s.value - 1.4189) < 1e-3);

  const auto frozen = bec_ground_entropy_closed_form({1000, 0.0});
  CHECK(frozen.method == Method::direct_sum);
  CHECK(frozen.warning);
  CHECK(frozen.value == 0.0);

  for (double t = 0.2; t <= 0.6 + 1e-9; t += 0.05) {
    const fock::BecParams p{1000, t};
    const double direct = von_neumann_entropy(fock::bec_ground_distribution(p)).value;
    CHECK(std::abs(bec_ground_entropy_closed_form(p).value - direct) < 0.05);
  }
}

TEST_CASE("bulk Bose gas entropy") {
  CHECK(bulk_bose_gas_entropy(1000.0, 0.1).value == doctest::Approx(3.6).epsilon(1e-12));
  CHECK(bulk_bose_gas_entropy(1000.0, 0.0).value == 0.0);
  const double macro = bulk_bose_gas_entropy(1e23, 0.1).value;
  CHECK(macro == doctest::Approx(3.6e20));
  // S_g ~ ln N is negligible against the extensive bulk term
  CHECK(0.5 * std::log(2.0 * std::numbers::pi * 1e20) + 0.5 < 1e-15 * macro);
  CHECK_THROWS_AS(bulk_bose_gas_entropy(1000.0, 1.0), DomainError);
}
