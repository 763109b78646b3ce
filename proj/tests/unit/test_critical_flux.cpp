#include <cmath>
#include <vector>

#include "doctest.h"
#include "subflow/critical_flux.hpp"
#include "subflow/error.hpp"
#include "subflow/log.hpp"

using namespace subflow;

namespace {

const GasModel kGas = GasModel::polytropic(2.0, 0.5);

NozzleGeometry constricted() {
  FourierSeries f1, f2;
  f2.mean = 1.0;
  f2.sin = {-0.1};
  return NozzleGeometry(1.0, f1, f2);
}

}  // namespace

TEST_CASE("flat sweep matches the one-dimensional flow") {
  const Grid g(8, 8, 1.0);
  const auto rows = sweep(kGas, NozzleGeometry::flat_channel(), g, 1.5, {0.0, 0.2, 0.5, 0.8}, {});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].max_mach == 0.0);
  // rho = H(m^2, 1.5), Mach = (m / rho) / sqrt(rho)
  CHECK(rows[1].max_mach == doctest::Approx(0.109853018019748046).epsilon(1e-10));
  CHECK(rows[2].max_mach == doctest::Approx(0.289444523187370374).epsilon(1e-10));
  CHECK(rows[3].max_mach == doctest::Approx(0.530564989003997683).epsilon(1e-10));
  for (const auto& r : rows) {
    CHECK(r.converged);
    CHECK_FALSE(r.near_sonic);
  }
  CHECK(mach_monotone(rows));
}

TEST_CASE("constricted sweep is monotone, serial or threaded") {
  const Grid g(16, 16, 1.0);
  const std::vector<double> ms = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.65, 0.68};
  SweepOptions serial;
  SweepOptions threaded;
  threaded.threads = 3;
  const auto a = sweep(kGas, constricted(), g, 1.5, ms, serial);
  const auto b = sweep(kGas, constricted(), g, 1.5, ms, threaded);
  REQUIRE(a.size() == ms.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].m == ms[k]);
    CHECK(a[k].converged);
    CHECK(a[k].max_mach < 1.0);
    CHECK(a[k].max_mach == b[k].max_mach);
    if (k > 0) CHECK(a[k].max_mach > a[k - 1].max_mach);
  }
  // Constriction speeds the flow up relative to the flat channel.
  const auto flat = sweep(kGas, NozzleGeometry::flat_channel(), g, 1.5, {0.5}, serial);
  CHECK(a[4].max_mach > flat[0].max_mach);
}

TEST_CASE("sweep input validation and monotonicity helper") {
  const Grid g(8, 8, 1.0);
  CHECK_THROWS_AS(sweep(kGas, constricted(), g, 1.5, {0.2, 0.1}, {}), DomainError);
  CHECK_THROWS_AS(sweep(kGas, constricted(), g, 1.5, {-0.1, 0.1}, {}), DomainError);

  std::vector<SweepRecord> r(3);
  for (auto& x : r) x.converged = true;
  r[0].max_mach = 0.1;
  r[1].max_mach = 0.3;
  r[2].max_mach = 0.2;
  CHECK_FALSE(mach_monotone(r));
  r[2].converged = false;
  CHECK(mach_monotone(r));
}

TEST_CASE("flat channel critical flux is Sigma(Bbar)") {
  const Grid g(8, 8, 1.0);
  for (double Bbar : {1.5, 3.0}) {
    const double sigma = critical_state(kGas, Bbar).sigma;
    const CriticalResult r = find_critical(kGas, NozzleGeometry::flat_channel(), g, Bbar, {});
    CHECK(r.bracket_converged);
    CHECK((r.m_hi - r.m_lo) <= 1e-3 * r.m_hi);
    CHECK(std::abs(0.5 * (r.m_lo + r.m_hi) - sigma) <= 1e-3 * sigma);
    CHECK(r.reached_target);
    REQUIRE_FALSE(r.sequence.empty());
    CHECK(r.sequence.back().max_mach >= 0.98);
    for (std::size_t k = 1; k < r.sequence.size(); ++k) {
      CHECK(r.sequence[k].m > r.sequence[k - 1].m);
      CHECK(r.sequence[k].max_mach > r.sequence[k - 1].max_mach);
    }
    // Bracket ends: accepted below, rejected above.
    bool lo_ok = false, hi_rejected = false;
    for (const auto& p : r.probes) {
      if (p.m == r.m_lo) lo_ok = p.accepted();
      if (p.m == r.m_hi) hi_rejected = !p.accepted();
    }
    CHECK(lo_ok);
    CHECK(hi_rejected);
  }
}

TEST_CASE("constricted critical flux lies below the flat value") {
  const Grid g(16, 16, 1.0);
  CriticalOptions o;
  o.bracket_tol = 1e-2;
  const CriticalResult r = find_critical(kGas, constricted(), g, 1.5, o);
  CHECK(r.bracket_converged);
  CHECK(r.m_hi < 1.0);
  CHECK(r.m_lo > 0.5);
}

TEST_CASE("unusable starting flux is a configuration error") {
  const Grid g(8, 8, 1.0);
  CriticalOptions o;
  o.m_start = 1.5;
  CHECK_THROWS_AS(find_critical(kGas, NozzleGeometry::flat_channel(), g, 1.5, o), ConfigError);
}
