#include "spinor_forge/constraints.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "spinor_forge/spacetimes.hpp"

namespace spinor_forge {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "PASS";
    case Status::Inconclusive:
      return "INCONCLUSIVE";
    case Status::Fail:
      return "FAIL";
  }
  return "?";
}

Status status_for(double value, double threshold) {
  if (value <= threshold) return Status::Pass;
  if (value > 10.0 * threshold || std::isnan(value)) return Status::Fail;
  return Status::Inconclusive;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Teleparallel:
      return "TELEPARALLEL";
    case Classification::InertialE0Only:
      return "INERTIAL_E0_ONLY";
    case Classification::GeodesicFermi:
      return "GEODESIC_FERMI";
    case Classification::None:
      return "NONE";
  }
  return "?";
}

namespace {

Multivector frame_derivative(const SpinConnectionAtPoint& sc, int a, int b) {
  Multivector out(sta::signature());
  for (int c = 0; c < 4; ++c) out += sc.coeff[a][b][c] * sta::m(c);
  return out;
}

// D_nu e_b along coordinate direction nu.
Multivector coordinate_derivative(const SpinConnectionAtPoint& sc, int nu, int b) {
  Multivector out(sta::signature());
  for (int a = 0; a < 4; ++a) out += sc.geo.h(a, nu) * frame_derivative(sc, a, b);
  return out;
}

}  // namespace

ConstraintResiduals constraint_residuals(const Spacetime& s, const SpinConnectionAtPoint& sc,
                                         const Riemann& r) {
  (void)s;
  ConstraintResiduals out;
  const Mat4 ric = ricci_from(r);
  const Vec4 e0 = sc.geo.h_inv.col(0);
  for (int a = 0; a < 4; ++a) {
    out.inertial = std::max(out.inertial, frame_derivative_norm(sc, a, 0));
    out.ricci_condition =
        std::max(out.ricci_condition, std::abs(e0.dot(ric * sc.geo.h_inv.col(a))));
    out.e0_parallel_frame = std::max(out.e0_parallel_frame, frame_derivative_norm(sc, 0, a));
    for (int b = 0; b < 4; ++b) out.teleparallel = std::max(out.teleparallel, frame_derivative_norm(sc, a, b));
  }
  out.geodesic = frame_derivative_norm(sc, 0, 0);
  for (int i = 1; i < 4; ++i) out.fermi = std::max(out.fermi, frame_derivative_norm(sc, 0, i));
  const Multivector& m0 = sta::m(0);
  for (int nu = 0; nu < 4; ++nu) {
    const Multivector d_e0 = coordinate_derivative(sc, nu, 0);
    for (int i = 1; i < 4; ++i) {
      const Multivector d16 = 0.5 * commutator(sc.coordinate[nu], sta::sigma(i));
      const Multivector d15 = coordinate_derivative(sc, nu, i) - sta::m(i) * d_e0 * m0;
      out.pauli_constancy = std::max(out.pauli_constancy, max_abs(d16));
      out.pauli_constancy_alt = std::max(out.pauli_constancy_alt, max_abs(d15));
    }
  }
  out.riemann = max_abs(r);
  return out;
}

namespace {

// Fixed low-degree polynomial coefficient fields for the Leibniz checks.
Multivector polynomial_even_field(const Point& x, int salt) {
  Multivector out(sta::signature());
  int j = 0;
  for (unsigned mask = 0; mask < 16; ++mask) {
    if (grade_of(mask) % 2 != 0) continue;
    const int k = (j + salt) % 4;
    const int l = (j + 2 * salt + 1) % 4;
    const double c = 0.25 * (1 + (j + salt) % 3) + 0.05 * x[k] - 0.02 * (j + 1) * x[l] +
                     0.003 * x[k] * x[l];
    out += Multivector::blade(sta::signature(), mask, c);
    ++j;
  }
  return out;
}

double max_over_pairs(const std::function<double(int, int)>& f) {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) worst = std::max(worst, f(a, b));
  }
  return worst;
}

double max_abs4(const std::array<Mat4, 4>& m) {
  double worst = 0.0;
  for (const auto& x : m) worst = std::max(worst, x.cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

PointRecord evaluate_point(const Spacetime& s, const Tetrad& t, const Point& x,
                           const Tolerances& tol) {
  PointRecord rec;
  rec.x = x;
  auto& res = rec.residuals;
  auto& val = rec.values;

  const SpinConnectionAtPoint sc = spin_connection(s, t, x, tol.alg);
  const Mat4& g = sc.geo.g;

  // Geometry.
  res["tetrad_metric"] = tetrad_residual(s, t, x);
  const QSquare qs = q_tensor_square(s, t, x, tol.alg);
  res["q_square_symmetric"] = q_square_residual(qs, g);
  const FComponents f = f_components(qs);
  const FComponents fc = f_components_closed_form(sc.geo.h);
  double f_gap = 0.0;
  for (int k = 1; k < 4; ++k) {
    f_gap = std::max(f_gap, (f.rotation[k] - fc.rotation[k]).cwiseAbs().maxCoeff());
    f_gap = std::max(f_gap, (f.boost[k] - fc.boost[k]).cwiseAbs().maxCoeff());
  }
  res["f_closed_form"] = f_gap;
  res["metric_compatibility"] = metric_compatibility_residual(s, x, sc.geo.gamma);
  if (s.has_analytic_christoffel()) {
    const Christoffel num = christoffel_numeric(s, x);
    double gap = 0.0;
    for (int a = 0; a < 4; ++a) gap = std::max(gap, (num[a] - sc.geo.gamma[a]).cwiseAbs().maxCoeff());
    res["christoffel_cross_check"] = gap;
  }
  const Riemann r = riemann(s, x);
  val["ricci_max"] = ricci_from(r).cwiseAbs().maxCoeff();
  val["f_rotation_max"] = max_abs4(f.rotation);
  val["f_boost_max"] = max_abs4(f.boost);

  // Spin connection identities.
  res["omega_antisymmetry"] = antisymmetry_residual(sc);
  const HermitianResiduals herm = hermitian_checks(sc);
  res["hermitian_dagger"] = herm.dagger_rep;
  res["hermitian_epsilon_conjugate"] = herm.epsilon_conjugate;
  res["hermitian_epsilon_transpose"] = herm.epsilon_transpose;

  double total = 0.0;
  double total_matrix = 0.0;
  double product_rule = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      total = std::max(total, max_abs(sachs_total_deriv(sc, mu, nu)));
      total_matrix = std::max(total_matrix, max_abs(sachs_total_deriv_matrix(sc, mu, nu)));
      product_rule = std::max(product_rule, max_abs(product_rule_residual(sc, mu, nu)));
    }
  }
  res["sachs_total_derivative"] = total;
  res["sachs_total_derivative_matrix"] = total_matrix;
  res["clifford_product_rule"] = product_rule;

  double from_q = 0.0;
  double from_q_right = 0.0;
  for (int rho = 0; rho < 4; ++rho) {
    from_q = std::max(from_q, max_abs_diff(omega_from_q(sc, rho), sc.coordinate[rho]));
    from_q_right = std::max(from_q_right, max_abs_diff(omega_from_q_right(sc, rho), sc.coordinate[rho]));
  }
  res["omega_from_q"] = from_q;
  res["omega_from_q_right"] = from_q_right;

  const TraceResiduals tr = trace_identities(sc);
  res["trace_q_qcheck"] = tr.q_qcheck;
  res["trace_q_omega_qcheck"] = tr.q_omega_qcheck;
  res["trace_q_qcheck_matrix"] = tr.matrix_q_qcheck;
  res["trace_q_omega_qcheck_matrix"] = tr.matrix_q_omega_qcheck;

  res["dirac_identity"] = max_over_pairs([&](int a, int b) { return dirac_identity_residual(sc, a, b); });
  res["dirac_identity_matrix"] =
      max_over_pairs([&](int a, int b) { return dirac_identity_matrix_residual(sc, a, b); });

  const MultivectorField phi = [](const Point& y) { return polynomial_even_field(y, 1) * sta::e_plus(); };
  const MultivectorField xi = [](const Point& y) { return sta::e_plus() * polynomial_even_field(y, 2); };
  const MultivectorField p = [](const Point& y) { return polynomial_even_field(y, 3); };
  const MultivectorField q = [](const Point& y) { return polynomial_even_field(y, 5); };
  double leibniz = 0.0;
  for (int a = 0; a < 4; ++a) {
    leibniz = std::max(leibniz, leibniz_iota_residual(s, sc, a, phi, xi));
    leibniz = std::max(leibniz, leibniz_product_residual(s, sc, a, p, q));
  }
  res["leibniz"] = leibniz;

  // Kinematics of the e_0 observers.
  const FrameKinematics k = frame_kinematics(s, frame_time_vector(t), x, tol.alg);
  res["kinematics_reassembly"] = k.reassembly_residual;
  val["expansion"] = k.expansion;
  val["acceleration_max"] = k.acceleration.cwiseAbs().maxCoeff();
  val["rotation_max"] = k.rotation.cwiseAbs().maxCoeff();
  val["shear_max"] = k.shear.cwiseAbs().maxCoeff();

  // Frame conditions.
  const ConstraintResiduals c = constraint_residuals(s, sc, r);
  res["inertial"] = c.inertial;
  res["ricci_condition"] = c.ricci_condition;
  res["pauli_constancy"] = c.pauli_constancy;
  res["pauli_constancy_alt"] = c.pauli_constancy_alt;
  res["geodesic"] = c.geodesic;
  res["fermi"] = c.fermi;
  res["e0_parallel_frame"] = c.e0_parallel_frame;
  res["teleparallel"] = c.teleparallel;
  res["riemann"] = c.riemann;
  return rec;
}

unsigned max_threads() {
  if (const char* env = std::getenv("SPINOR_FORGE_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(max_threads(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<PointRecord> evaluate_points(const Spacetime& s, const Tetrad& t,
                                         const std::vector<Point>& points, const Tolerances& tol) {
  std::vector<PointRecord> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = evaluate_point(s, t, points[i], tol); });
  return out;
}

const std::vector<IdentitySpec>& identity_specs() {
  static const std::vector<IdentitySpec> specs = {
      {"tetrad_metric", true, true},
      {"q_square_symmetric", true, true},
      {"f_closed_form", true, true},
      {"metric_compatibility", false, true},
      {"christoffel_cross_check", false, true},
      {"omega_antisymmetry", false, true},
      {"hermitian_dagger", true, true},
      {"hermitian_epsilon_transpose", true, true},
      {"hermitian_epsilon_conjugate", true, false},
      {"sachs_total_derivative", false, true},
      {"sachs_total_derivative_matrix", false, true},
      {"clifford_product_rule", false, true},
      {"omega_from_q", false, false},
      {"omega_from_q_right", false, true},
      {"trace_q_qcheck", true, true},
      {"trace_q_omega_qcheck", true, true},
      {"trace_q_qcheck_matrix", true, true},
      {"trace_q_omega_qcheck_matrix", true, true},
      {"dirac_identity", false, true},
      {"dirac_identity_matrix", false, true},
      {"leibniz", false, true},
      {"kinematics_reassembly", false, true},
  };
  return specs;
}

const std::vector<std::string>& condition_names() {
  static const std::vector<std::string> names = {
      "inertial",  "ricci_condition",   "pauli_constancy", "pauli_constancy_alt", "geodesic",
      "fermi",     "e0_parallel_frame", "teleparallel"};
  return names;
}

namespace {

double column_max(const std::vector<PointRecord>& records, const std::string& name, bool* present) {
  double worst = 0.0;
  *present = false;
  for (const auto& r : records) {
    const auto it = r.residuals.find(name);
    if (it == r.residuals.end()) continue;
    *present = true;
    if (std::isnan(it->second) || it->second > worst) worst = it->second;
    if (std::isnan(worst)) break;
  }
  return worst;
}

const CheckSummary* find(const std::vector<CheckSummary>& list, const std::string& name) {
  for (const auto& c : list) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool passes(const std::vector<CheckSummary>& list, const std::string& name) {
  const CheckSummary* c = find(list, name);
  if (c == nullptr) throw std::logic_error("missing check '" + name + "'");
  return c->status == Status::Pass;
}

}  // namespace

Classification classify(const std::vector<CheckSummary>& conditions) {
  if (passes(conditions, "teleparallel")) return Classification::Teleparallel;
  if (passes(conditions, "inertial")) return Classification::InertialE0Only;
  if (passes(conditions, "geodesic") && passes(conditions, "fermi")) return Classification::GeodesicFermi;
  return Classification::None;
}

ConstraintReport build_report(const std::string& configuration, std::vector<PointRecord> records,
                              const Tolerances& tol) {
  if (records.empty()) throw std::invalid_argument("no sample points");
  ConstraintReport rep;
  rep.configuration = configuration;
  rep.records = std::move(records);
  for (const auto& spec : identity_specs()) {
    bool present = false;
    const double worst = column_max(rep.records, spec.name, &present);
    if (!present) continue;
    const double threshold = spec.algebraic ? tol.alg : tol.geo;
    rep.identities.push_back({spec.name, worst, threshold, status_for(worst, threshold), spec.required});
  }
  for (const auto& name : condition_names()) {
    bool present = false;
    const double worst = column_max(rep.records, name, &present);
    if (!present) throw std::logic_error("missing condition residual '" + name + "'");
    rep.conditions.push_back({name, worst, tol.geo, status_for(worst, tol.geo), false});
  }
  rep.classification = classify(rep.conditions);

  bool present = false;
  const double riemann = column_max(rep.records, "riemann", &present);
  const bool tele = passes(rep.conditions, "teleparallel");
  const bool inertial = passes(rep.conditions, "inertial");
  const bool ricci = passes(rep.conditions, "ricci_condition");
  const bool geodesic = passes(rep.conditions, "geodesic");
  const bool fermi = passes(rep.conditions, "fermi");
  const bool parallel = passes(rep.conditions, "e0_parallel_frame");
  const Status d16 = find(rep.conditions, "pauli_constancy")->status;
  const Status d15 = find(rep.conditions, "pauli_constancy_alt")->status;
  const double r16 = find(rep.conditions, "pauli_constancy")->max_residual;
  const double r15 = find(rep.conditions, "pauli_constancy_alt")->max_residual;
  const bool within_10x = (r16 <= tol.geo && r15 <= tol.geo) ||
                          (r16 <= 10.0 * r15 && r15 <= 10.0 * r16);
  rep.implications = {
      {"teleparallel_implies_inertial", !tele || inertial},
      {"inertial_implies_ricci_condition", !inertial || ricci},
      {"teleparallel_implies_flat", !tele || riemann <= tol.geo},
      {"e0_parallel_frame_iff_geodesic_and_fermi", parallel == (geodesic && fermi)},
      {"pauli_constancy_forms_agree", d16 == d15 && within_10x},
  };
  return rep;
}

}  // namespace spinor_forge
