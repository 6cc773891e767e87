#include <cmath>
#include <cstdlib>
#include <limits>

#include "doctest.h"
#include "spinor_forge/constraints.hpp"
#include "spinor_forge/spacetimes.hpp"

using namespace spinor_forge;

namespace {

// Inertial observers whose spatial axes turn with position along x3.
Tetrad twisted_tetrad(double rate) {
  return Tetrad("twisted", [rate](const Point& x) {
    const double th = rate * x[3];
    Mat4 h = Mat4::Identity();
    h(1, 1) = std::cos(th);
    h(1, 2) = std::sin(th);
    h(2, 1) = -std::sin(th);
    h(2, 2) = std::cos(th);
    return h;
  });
}

ConstraintReport run(const Spacetime& s, const Tetrad& t, int n = 16) {
  const Tolerances tol;
  return build_report(s.name(), evaluate_points(s, t, sample_points(s, n, 1), tol), tol);
}

const CheckSummary& get(const std::vector<CheckSummary>& list, const std::string& name) {
  for (const auto& c : list) {
    if (c.name == name) return c;
  }
  FAIL("missing " << name);
  return list.front();
}

bool all_implications_hold(const ConstraintReport& r) {
  for (const auto& i : r.implications) {
    if (!i.holds) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("status bands") {
  CHECK(status_for(1e-5, 1e-5) == Status::Pass);
  CHECK(status_for(5e-5, 1e-5) == Status::Inconclusive);
  CHECK(status_for(1e-4, 1e-5) == Status::Inconclusive);
  CHECK(status_for(1.01e-4, 1e-5) == Status::Fail);
  CHECK(status_for(std::numeric_limits<double>::quiet_NaN(), 1e-5) == Status::Fail);
  CHECK(to_string(Status::Inconclusive) == "INCONCLUSIVE");
  CHECK(to_string(Classification::GeodesicFermi) == "GEODESIC_FERMI");
  CHECK(to_string(Classification::InertialE0Only) == "INERTIAL_E0_ONLY");
}

TEST_CASE("classification precedence") {
  auto make = [](bool tele, bool inertial, bool geodesic, bool fermi) {
    std::vector<CheckSummary> c;
    auto add = [&c](const char* n, bool ok) { c.push_back({n, ok ? 0.0 : 1.0, 1e-5, ok ? Status::Pass : Status::Fail, false}); };
    add("teleparallel", tele);
    add("inertial", inertial);
    add("geodesic", geodesic);
    add("fermi", fermi);
    return c;
  };
  CHECK(classify(make(true, true, true, true)) == Classification::Teleparallel);
  CHECK(classify(make(false, true, true, true)) == Classification::InertialE0Only);
  CHECK(classify(make(false, false, true, true)) == Classification::GeodesicFermi);
  CHECK(classify(make(false, false, true, false)) == Classification::None);
  auto inconclusive = make(false, false, true, true);
  inconclusive[3].status = Status::Inconclusive;
  CHECK(classify(inconclusive) == Classification::None);
}

TEST_CASE("built-in classification matrix") {
  const ConstraintReport flat = run(minkowski(), inertial_tetrad());
  CHECK(flat.classification == Classification::Teleparallel);
  CHECK(all_implications_hold(flat));

  const ConstraintReport sch = run(schwarzschild(1.0), static_tetrad(1.0));
  CHECK(sch.classification == Classification::None);
  CHECK(get(sch.conditions, "ricci_condition").status == Status::Pass);
  CHECK(get(sch.conditions, "inertial").status == Status::Fail);
  CHECK(get(sch.identities, "sachs_total_derivative").status == Status::Pass);
  CHECK(all_implications_hold(sch));

  const ConstraintReport eds = run(einstein_de_sitter(), comoving_tetrad());
  CHECK(eds.classification == Classification::GeodesicFermi);
  CHECK(get(eds.conditions, "ricci_condition").status == Status::Fail);
  CHECK(get(eds.conditions, "inertial").status == Status::Fail);
  CHECK(all_implications_hold(eds));
}

TEST_CASE("twisted inertial frame in flat space") {
  const ConstraintReport r = run(minkowski(), twisted_tetrad(0.3));
  CHECK(r.classification == Classification::InertialE0Only);
  CHECK(get(r.conditions, "teleparallel").status == Status::Fail);
  CHECK(get(r.conditions, "pauli_constancy").status == Status::Fail);
  CHECK(get(r.conditions, "pauli_constancy_alt").status == Status::Fail);
  CHECK(get(r.conditions, "e0_parallel_frame").status == Status::Pass);
  CHECK(all_implications_hold(r));
  for (const auto& id : r.identities) {
    CAPTURE(id.name);
    if (id.required) CHECK(id.status == Status::Pass);
  }
}

TEST_CASE("Ricci condition residual at t = 1 in Einstein-de Sitter") {
  const Spacetime s = einstein_de_sitter();
  const SpinConnectionAtPoint sc = spin_connection(s, comoving_tetrad(), {1.0, 0.0, 0.0, 0.0});
  const ConstraintResiduals c = constraint_residuals(s, sc, riemann(s, {1.0, 0.0, 0.0, 0.0}));
  // Ric(e_0, e_0) = -3 addot / a = 2/3, the only nonzero Ric(e_0, e_a)
  CHECK(c.ricci_condition == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(c.geodesic < 1e-10);
  CHECK(c.fermi < 1e-10);
  CHECK(c.inertial == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("parallel evaluation is independent of the thread count") {
  const Spacetime s = schwarzschild(1.0);
  const auto points = sample_points(s, 12, 3);
  setenv("SPINOR_FORGE_THREADS", "1", 1);
  CHECK(max_threads() == 1);
  const auto serial = evaluate_points(s, static_tetrad(1.0), points, {});
  setenv("SPINOR_FORGE_THREADS", "4", 1);
  CHECK(max_threads() == 4);
  const auto threaded = evaluate_points(s, static_tetrad(1.0), points, {});
  unsetenv("SPINOR_FORGE_THREADS");
  REQUIRE(serial.size() == threaded.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].residuals == threaded[i].residuals);
    CHECK(serial[i].values == threaded[i].values);
  }
}

TEST_CASE("worker exceptions propagate") {
  setenv("SPINOR_FORGE_THREADS", "3", 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  unsetenv("SPINOR_FORGE_THREADS");
  // a point too close to the horizon for the stencils
  const Spacetime s = schwarzschild(1.0);
  CHECK_THROWS(evaluate_points(s, static_tetrad(1.0), {{0.0, 2.0000001, 1.0, 0.0}}, {}));
}
