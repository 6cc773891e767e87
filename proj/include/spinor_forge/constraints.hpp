#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "spinor_forge/geometry.hpp"
#include "spinor_forge/spin_connection.hpp"

namespace spinor_forge {

enum class Status { Pass, Inconclusive, Fail };
std::string to_string(Status s);

/// PASS when value <= threshold, FAIL when value > 10 * threshold.
Status status_for(double value, double threshold);

enum class Classification { Teleparallel, InertialE0Only, GeodesicFermi, None };
std::string to_string(Classification c);

struct Tolerances {
  double alg = 1e-9;
  double geo = 1e-5;
};

/// Residuals of the frame conditions at one point.
struct ConstraintResiduals {
  double inertial = 0.0;         // max_a |D_{e_a} e_0|
  double ricci_condition = 0.0;  // max_a |Ric(e_0, e_a)|
  double pauli_constancy = 0.0;  // max_{nu,i} |D_nu (e_i e_0)|
  double pauli_constancy_alt = 0.0;  // max_{nu,i} |D_nu e_i - e_i (D_nu e_0) e_0|
  double geodesic = 0.0;         // |D_{e_0} e_0|
  double fermi = 0.0;            // max_i |D_{e_0} e_i|
  double e0_parallel_frame = 0.0;  // max_a |D_{e_0} e_a|
  double teleparallel = 0.0;     // max_{a,b} |D_{e_a} e_b|
  double riemann = 0.0;          // max |R^alpha_{beta mu nu}|
};

ConstraintResiduals constraint_residuals(const Spacetime& s, const SpinConnectionAtPoint& sc,
                                         const Riemann& r);

/// Everything evaluated at one sample point, keyed by check name.
struct PointRecord {
  Point x{};
  std::map<std::string, double> residuals;
  std::map<std::string, double> values;
};

/// Evaluates every geometry identity, spin-connection identity, kinematic
/// quantity of the tetrad's e_0 observer and frame condition at x.
PointRecord evaluate_point(const Spacetime& s, const Tetrad& t, const Point& x,
                           const Tolerances& tol);

/// Runs `fn(i)` for i in [0, n) on up to max_threads() threads; the first
/// exception thrown is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);
/// SPINOR_FORGE_THREADS when set to a positive integer, else the hardware
/// concurrency (at least 1).
unsigned max_threads();

std::vector<PointRecord> evaluate_points(const Spacetime& s, const Tetrad& t,
                                         const std::vector<Point>& points, const Tolerances& tol);

struct CheckSummary {
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  Status status = Status::Pass;
  /// Identities that must hold; false for diagnostics and for frame
  /// conditions, whose failure is a finding rather than an error.
  bool required = true;
};

struct Implication {
  std::string name;
  bool holds = true;
};

struct ConstraintReport {
  std::string configuration;
  std::vector<PointRecord> records;
  std::vector<CheckSummary> identities;
  std::vector<CheckSummary> conditions;
  Classification classification = Classification::None;
  std::vector<Implication> implications;
};

/// Threshold and required flag for each identity residual name.
struct IdentitySpec {
  std::string name;
  bool algebraic;  // tol.alg when true, tol.geo otherwise
  bool required;
};
const std::vector<IdentitySpec>& identity_specs();
const std::vector<std::string>& condition_names();

ConstraintReport build_report(const std::string& configuration, std::vector<PointRecord> records,
                              const Tolerances& tol);

/// Precedence TELEPARALLEL > INERTIAL_E0_ONLY > GEODESIC_FERMI > NONE, using
/// PASS statuses only.
Classification classify(const std::vector<CheckSummary>& conditions);

}  // namespace spinor_forge
