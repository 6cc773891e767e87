#include "spinor_forge/report.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "spinor_forge/config.hpp"
#include "spinor_forge/matrix_rep.hpp"
#include "spinor_forge/spacetimes.hpp"
#include "spinor_forge/spin_connection.hpp"
#include "spinor_forge/spinor_ideals.hpp"

#ifndef SPINOR_FORGE_VERSION
#define SPINOR_FORGE_VERSION "0.0.0"
#endif

namespace spinor_forge {

using nlohmann::json;

std::string tool_version() { return SPINOR_FORGE_VERSION; }

void validate(const RunConfig& cfg) {
  if (cfg.points < 1) throw std::invalid_argument("--points must be at least 1");
  if (!(cfg.tol.alg > 0.0) || !(cfg.tol.geo > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (!(cfg.mass > 0.0)) throw std::invalid_argument("--mass must be positive");
  if (cfg.format != "json" && cfg.format != "text") {
    throw std::invalid_argument("--format must be json or text");
  }
}

namespace {

json matrix_json(const C2Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int j = 0; j < 2; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

json conventions_block() {
  json c;
  c["quaternion_orientation_sign"] = quaternion_orientation_sign();
  c["quaternion_units"] = "i_hat = i sigma^1, j_hat = i sigma^2, k_hat = i sigma^3";
  const C2Matrix e = rep(sta::e_plus());
  c["rep_e"] = matrix_json(e);
  std::string projector = "other";
  if (max_abs(C2Matrix(e - C2Matrix(Eigen::Vector2cd(0.0, 1.0).asDiagonal()))) == 0.0) projector = "diag(0,1)";
  if (max_abs(C2Matrix(e - C2Matrix(Eigen::Vector2cd(1.0, 0.0).asDiagonal()))) == 0.0) projector = "diag(1,0)";
  c["rep_e_projector"] = projector;
  c["spinor_column"] = "second column of rep(phi); dotted row is the second row of rep(xi)";
  c["raise_lower_sign"] = raise_lower_sign();

  const Spacetime flat = minkowski();
  const QSquare qs = q_tensor_square(flat, inertial_tetrad(), {0, 0, 0, 0});
  const FComponents f = f_components(qs);
  c["f_definition"] = "F_{mu nu} = (q_mu qcheck_nu - q_nu qcheck_mu)/2";
  c["f_rotation_closed_form"] = "coefficient of i sigma_k = -eps_{ijk} h^i_mu h^j_nu";
  c["f_boost_closed_form"] = "coefficient of sigma_k = h^0_mu h^k_nu - h^k_mu h^0_nu";
  c["f_rotation_3_12_identity_tetrad"] = f.rotation[3](1, 2);

  const auto theta = reconstruction_residuals(SpinorBasis::Theta);
  const auto aligned = reconstruction_residuals(SpinorBasis::MatrixAligned);
  c["spinor_basis_theta_reconstruction_residuals"] = theta;
  c["spinor_basis_aligned_reconstruction_residuals"] = aligned;
  c["spinor_basis"] = "s_1 = -sigma_1 e, s_2 = e, s^1dot = -e sigma_1, s^2dot = e";
  c["omega_dagger"] = "-m^0 omega m^0";
  c["multivector_norm"] = "max absolute blade coefficient";
  return c;
}

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 * 2.0 - 1.0; }
  double dyadic() { return static_cast<double>(static_cast<int>(rng_() % 33) - 16) / 4.0; }
  Multivector multivector(Signature sig) {
    std::array<double, kMaxBlades> c{};
    for (int i = 0; i < sig.blade_count(); ++i) c[i] = uniform();
    return Multivector(sig, std::span<const double>(c.data(), sig.blade_count()));
  }
  Multivector even(bool dyadic_values = false) {
    std::array<double, 16> c{};
    for (unsigned i = 0; i < 16; ++i) {
      if (grade_of(i) % 2 == 0) c[i] = dyadic_values ? dyadic() : uniform();
    }
    return Multivector(sta::signature(), c);
  }
  Multivector bivector() { return grade_projection(even(), 2); }

 private:
  std::mt19937_64 rng_;
};

struct Tracker {
  std::vector<SuiteResult> results;
  void add(const std::string& name, double residual, double threshold = 1e-12) {
    results.push_back({name, residual, threshold, status_for(residual, threshold)});
  }
};

double eta_up(int mu, int nu) { return eta()(mu, nu); }

double levi_civita(int i, int j, int k) { return (i - j) * (j - k) * (k - i) / 2.0; }

}  // namespace

std::vector<SuiteResult> algebra_suites(std::uint64_t seed, int samples) {
  Sampler rnd(seed);
  Tracker t;
  const Signature sigs[] = {Signature(1, 3), Signature(3, 0), Signature(0, 2)};
  const char* names[] = {"cl13", "cl30", "cl02"};
  for (int s = 0; s < 3; ++s) {
    double worst = 0.0;
    for (int n = 0; n < samples; ++n) {
      const Multivector a = rnd.multivector(sigs[s]);
      const Multivector b = rnd.multivector(sigs[s]);
      const Multivector c = rnd.multivector(sigs[s]);
      worst = std::max(worst, max_abs_diff((a * b) * c, a * (b * c)));
    }
    t.add(std::string("associativity_") + names[s], worst);
  }

  double anti = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const Multivector lhs = sta::m_up(mu) * sta::m_up(nu) + sta::m_up(nu) * sta::m_up(mu);
      anti = std::max(anti, max_abs(lhs - Multivector::scalar(sta::signature(), 2.0 * eta_up(mu, nu))));
    }
  }
  double pauli = 0.0;
  double products = 0.0;
  const Multivector& i = sta::pseudoscalar();
  for (int a = 1; a < 4; ++a) {
    for (int b = 1; b < 4; ++b) {
      const Multivector& sa = sta::sigma_up(a);
      const Multivector& sb = sta::sigma_up(b);
      const double delta = a == b ? 1.0 : 0.0;
      pauli = std::max(pauli, max_abs(sa * sb + sb * sa - Multivector::scalar(sta::signature(), 2.0 * delta)));
      Multivector rhs = Multivector::scalar(sta::signature(), delta);
      for (int k = 1; k < 4; ++k) rhs += levi_civita(a, b, k) * (i * sta::sigma_up(k));
      products = std::max(products, max_abs_diff(sa * sb, rhs));
    }
  }
  t.add("anticommutation_spacetime", anti);
  t.add("anticommutation_pauli", pauli);
  t.add("pauli_products", products);

  double para = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Multivector lhs = sta::sigma(a) * sta::sigma_check(b) + sta::sigma(b) * sta::sigma_check(a);
      para = std::max(para, max_abs(lhs + Multivector::scalar(sta::signature(), 2.0 * eta()(a, b))));
    }
  }
  t.add("paravector_relation", para);

  double central = max_abs(i * i + sta::one());
  for (int n = 0; n < samples; ++n) {
    const Multivector e = rnd.even();
    central = std::max(central, max_abs_diff(i * e, e * i));
  }
  t.add("pseudoscalar_central", central);
  const double grade2 = max_abs(grade_projection(sta::sigma(1) * sta::sigma(2), 2));
  t.add("paravector_non_closure", grade2 > 0.5 ? 0.0 : 1.0);

  double hom_p = 0.0;
  double hom_q = 0.0;
  double composite = 0.0;
  for (int n = 0; n < samples; ++n) {
    const Multivector a = rnd.multivector(Signature(3, 0));
    const Multivector b = rnd.multivector(Signature(3, 0));
    hom_p = std::max(hom_p, max_abs_diff(embed_pauli(a * b), embed_pauli(a) * embed_pauli(b)));
    hom_p = std::max(hom_p, max_abs(odd_part(embed_pauli(a))));
    const Multivector p = rnd.multivector(Signature(0, 2));
    const Multivector q = rnd.multivector(Signature(0, 2));
    hom_q = std::max(hom_q, max_abs_diff(embed_quaternion(p * q), embed_quaternion(p) * embed_quaternion(q)));
    composite = std::max(composite, max_abs_diff(embed_pauli(quaternion_to_pauli(p)), embed_quaternion(p)));
    composite = std::max(composite, max_abs(odd_part(quaternion_to_pauli(p))));
  }
  t.add("embed_pauli_homomorphism", hom_p);
  t.add("embed_quaternion_homomorphism", hom_q);
  t.add("quaternion_composite", composite);

  double rep_hom = 0.0;
  for (int k = 1; k < 4; ++k) rep_hom = std::max(rep_hom, max_abs(C2Matrix(rep(sta::sigma_up(k)) - pauli_matrix(k))));
  rep_hom = std::max(rep_hom, max_abs(C2Matrix(rep(i) - Complex(0, 1) * C2Matrix::Identity())));
  double round_trip = 0.0;
  for (int n = 0; n < samples; ++n) {
    const Multivector a = rnd.even();
    const Multivector b = rnd.even();
    rep_hom = std::max(rep_hom, max_abs(C2Matrix(rep(a * b) - rep(a) * rep(b))));
    const Multivector d = rnd.even(true);
    round_trip = std::max(round_trip, max_abs_diff(unrep(rep(d)), d));
  }
  t.add("rep_homomorphism", rep_hom);
  t.add("rep_unrep_round_trip", round_trip);

  Eigen::Matrix<double, 8, 8> images;
  int col = 0;
  for (unsigned mask = 0; mask < 16; ++mask) {
    if (grade_of(mask) % 2 != 0) continue;
    const C2Matrix m = rep(Multivector::blade(sta::signature(), mask));
    for (int r = 0; r < 4; ++r) {
      images(2 * r, col) = m(r / 2, r % 2).real();
      images(2 * r + 1, col) = m(r / 2, r % 2).imag();
    }
    ++col;
  }
  t.add("rep_faithful", Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>>(images).rank() == 8 ? 0.0 : 1.0);
  const C2Matrix& eps = epsilon();
  double eps_res = max_abs(C2Matrix(eps * eps + C2Matrix::Identity()));
  eps_res = std::max(eps_res, max_abs(C2Matrix(eps - Complex(0, 1) * pauli_matrix(2))));
  t.add("epsilon", eps_res);

  const Multivector& e = sta::e_plus();
  t.add("idempotent", std::max(max_abs_diff(e * e, e), max_abs(e * sta::e_minus())));
  const C2Matrix re = rep(e);
  t.add("rep_e_rank_one", std::max(max_abs(C2Matrix(re * re - re)),
                                   Eigen::FullPivLU<C2Matrix>(re).rank() == 1 ? 0.0 : 1.0));

  double closure = 0.0;
  double decompose_rt = 0.0;
  double complex_structure = 0.0;
  double iota_kron = 0.0;
  double components_rt = 0.0;
  for (int n = 0; n < samples; ++n) {
    const AlgebraicSpinor phi = project_left(rnd.even());
    const Multivector big_e = rnd.even();
    closure = std::max(closure, max_abs_diff((big_e * phi.value()) * e, big_e * phi.value()));
    const ComplexPair c = decompose(phi);
    decompose_rt = std::max(decompose_rt, max_abs_diff(reconstruct(c).value(), phi.value()));
    const ComplexPair ci = decompose(AlgebraicSpinor(i * phi.value()));
    for (int k = 0; k < 2; ++k) {
      complex_structure = std::max(complex_structure, std::abs(ci[k] - Complex(0, 1) * c[k]));
    }
    const DottedAlgebraicSpinor xi = project_right(rnd.even());
    const C2Matrix lhs = rep(iota(phi, xi));
    iota_kron = std::max(iota_kron, max_abs(C2Matrix(lhs - kronecker(column_of(phi.value()), row_of(xi.value())))));
    const Multivector p = rnd.even();
    const auto [x, y] = spinor_components_from_pauli(p);
    components_rt = std::max(components_rt, max_abs_diff(pauli_from_spinor_components(x, y), p));
  }
  t.add("ideal_closure", closure);
  t.add("decompose_round_trip", decompose_rt);
  t.add("complex_structure", complex_structure);
  t.add("iota_kronecker", iota_kron);
  t.add("spinor_components_round_trip", components_rt);

  const auto recon = reconstruction_residuals(SpinorBasis::MatrixAligned);
  t.add("reconstruction_identities", *std::max_element(recon.begin(), recon.end()));

  Eigen::Matrix<double, 16, 4> basis;
  const std::array<Multivector, 4> gens{theta(1), i * theta(1), theta(2), i * theta(2)};
  for (int c = 0; c < 4; ++c) {
    for (int k = 0; k < 16; ++k) basis(k, c) = gens[c][k];
  }
  t.add("ideal_rank", Eigen::FullPivLU<Eigen::Matrix<double, 16, 4>>(basis).rank() == 4 ? 0.0 : 1.0);

  double dag = 0.0;
  double transpose = 0.0;
  for (int n = 0; n < samples; ++n) {
    const HermitianResiduals h = hermitian_checks(rnd.bivector());
    dag = std::max(dag, h.dagger_rep);
    transpose = std::max(transpose, h.epsilon_transpose);
  }
  t.add("bivector_dagger_rep", dag);
  t.add("bivector_epsilon_transpose", transpose);
  return t.results;
}

namespace {

std::string worst_status(const std::vector<Status>& statuses) {
  bool inconclusive = false;
  for (Status s : statuses) {
    if (s == Status::Fail) return "FAIL";
    if (s == Status::Inconclusive) inconclusive = true;
  }
  return inconclusive ? "INCONCLUSIVE" : "PASS";
}

json header(const std::string& command) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["tool"] = {{"name", "spinor-forge"}, {"version", tool_version()}};
  doc["command"] = command;
  doc["conventions"] = conventions_block();
  return doc;
}

json tolerance_json(const Tolerances& tol) { return {{"tol_alg", tol.alg}, {"tol_geo", tol.geo}}; }

}  // namespace

int exit_code_for(const std::string& verdict) {
  if (verdict == "PASS") return 0;
  if (verdict == "INCONCLUSIVE") return 2;
  return 1;
}

CommandResult cmd_algebra_selftest(const RunConfig& cfg) {
  validate(cfg);
  std::vector<SuiteResult> suites;
  if (cfg.inject_fault) {
    // m_1 m_1 flipped to +1 in Cl(1,3).
    const ProductTable corrupted = product_table(sta::signature()).with_flipped_sign(0b10, 0b10);
    testing::ScopedProductTableOverride guard(corrupted);
    suites = algebra_suites(cfg.seed, 200);
  } else {
    suites = algebra_suites(cfg.seed, 200);
  }
  json doc = header("selftest");
  doc["configuration"] = {{"seed", cfg.seed}, {"samples", 200}, {"inject_fault", cfg.inject_fault}};
  json out = json::object();
  std::vector<Status> statuses;
  for (const auto& s : suites) {
    out[s.name] = {{"max_residual", s.max_residual},
                   {"threshold", s.threshold},
                   {"status", to_string(s.status)}};
    statuses.push_back(s.status);
  }
  doc["suites"] = out;
  const std::string verdict = worst_status(statuses);
  doc["verdict"] = verdict;
  return {doc, exit_code_for(verdict)};
}

CommandResult cmd_report(const RunConfig& cfg) {
  validate(cfg);
  std::optional<Spacetime> spacetime;
  std::optional<Tetrad> tetrad;
  json configuration;
  if (!cfg.config_path.empty()) {
    CustomSpacetime custom = load_custom_spacetime(cfg.config_path);
    spacetime = custom.spacetime;
    if (cfg.tetrad == "default" || cfg.tetrad == "config") {
      if (custom.tetrad) {
        tetrad = *custom.tetrad;
      } else if (cfg.tetrad == "config") {
        throw UnknownNameError("config file has no [tetrad] section");
      } else {
        tetrad = orthonormal_tetrad(*spacetime);
      }
    } else if (cfg.tetrad == "orthonormal") {
      tetrad = orthonormal_tetrad(*spacetime);
    } else {
      throw UnknownNameError("unknown tetrad '" + cfg.tetrad + "' for a config spacetime");
    }
    configuration["config_file"] = cfg.config_path;
  } else {
    spacetime = builtin_spacetime(cfg.spacetime, cfg.mass);
    tetrad = builtin_tetrad(cfg.spacetime, cfg.tetrad, cfg.mass);
    if (cfg.spacetime == "schwarzschild") configuration["mass"] = cfg.mass;
  }
  configuration["spacetime"] = spacetime->name();
  configuration["tetrad"] = tetrad->name();
  configuration["points"] = cfg.points;
  configuration["seed"] = cfg.seed;
  configuration["tolerances"] = tolerance_json(cfg.tol);

  const std::vector<Point> points = sample_points(*spacetime, cfg.points, cfg.seed);
  if (!cfg.config_path.empty()) require_lorentzian(*spacetime, points);
  std::vector<PointRecord> records = evaluate_points(*spacetime, *tetrad, points, cfg.tol);
  const ConstraintReport rep =
      build_report(spacetime->name() + "/" + tetrad->name(), std::move(records), cfg.tol);

  json doc = header("report");
  doc["configuration"] = configuration;
  json identities = json::object();
  std::vector<Status> statuses;
  for (const auto& c : rep.identities) {
    identities[c.name] = {{"max_residual", c.max_residual},
                          {"threshold", c.threshold},
                          {"status", to_string(c.status)},
                          {"required", c.required}};
    if (c.required) statuses.push_back(c.status);
  }
  json conditions = json::object();
  for (const auto& c : rep.conditions) {
    conditions[c.name] = {{"max_residual", c.max_residual},
                          {"threshold", c.threshold},
                          {"status", to_string(c.status)}};
  }
  json implications = json::object();
  for (const auto& imp : rep.implications) {
    implications[imp.name] = imp.holds;
    if (!imp.holds) statuses.push_back(Status::Fail);
  }
  json per_point = json::array();
  for (const auto& r : rep.records) {
    per_point.push_back({{"x", r.x}, {"residuals", r.residuals}, {"values", r.values}});
  }
  doc["identities"] = identities;
  doc["conditions"] = conditions;
  doc["classification"] = to_string(rep.classification);
  doc["implications"] = implications;
  doc["points"] = per_point;
  const std::string verdict = worst_status(statuses);
  doc["verdict"] = verdict;
  return {doc, exit_code_for(verdict)};
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

std::string render_text(const json& doc) {
  std::ostringstream out;
  out << "spinor-forge " << doc["tool"]["version"].get<std::string>() << " "
      << doc["command"].get<std::string>() << "\n";
  const json& conv = doc["conventions"];
  out << "conventions: quaternion sign " << conv["quaternion_orientation_sign"].get<int>()
      << ", rep(e) " << conv["rep_e_projector"].get<std::string>() << ", raise(lower(x)) = "
      << (conv["raise_lower_sign"].get<int>() > 0 ? "+x" : "-x") << "\n";
  auto table = [&out](const char* title, const json& rows) {
    out << title << ":\n";
    for (const auto& [name, row] : rows.items()) {
      char line[160];
      std::snprintf(line, sizeof line, "  %-32s %-12s %.3e (threshold %.1e)%s\n", name.c_str(),
                    row["status"].get<std::string>().c_str(), row["max_residual"].get<double>(),
                    row["threshold"].get<double>(),
                    row.contains("required") && !row["required"].get<bool>() ? " [diagnostic]" : "");
      out << line;
    }
  };
  if (doc.contains("suites")) table("suites", doc["suites"]);
  if (doc.contains("identities")) table("identities", doc["identities"]);
  if (doc.contains("conditions")) table("conditions", doc["conditions"]);
  if (doc.contains("classification")) {
    out << "classification: " << doc["classification"].get<std::string>() << "\n";
  }
  if (doc.contains("implications")) {
    for (const auto& [name, holds] : doc["implications"].items()) {
      out << "  implication " << name << ": " << (holds.get<bool>() ? "holds" : "VIOLATED") << "\n";
    }
  }
  out << "verdict: " << doc["verdict"].get<std::string>() << "\n";
  return out.str();
}

}  // namespace spinor_forge
