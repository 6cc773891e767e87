#include "spinor_forge/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

namespace spinor_forge {

ConfigError::ConfigError(int line, int column, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + message
                                  : message),
      line_(line),
      column_(column) {}

namespace {

struct Located {
  std::string text;
  int line = 0;
  int column = 0;  // 1-based column where `text` starts
};

std::string trim(const std::string& s, std::size_t* lead = nullptr) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (lead) *lead = b;
  return s.substr(b, e - b);
}

dsl::Expr parse_located(const Located& src, const dsl::Coordinates& coords) {
  try {
    return dsl::parse(src.text, coords);
  } catch (const dsl::ParseError& e) {
    throw ConfigError(src.line, src.column + static_cast<int>(e.offset()), e.what());
  }
}

struct RawConfig {
  std::map<std::string, Located> top;
  std::map<std::string, Located> metric;
  std::vector<Located> domain;
  std::map<std::string, Located> box;
  std::map<std::string, Located> tetrad;
};

RawConfig read_sections(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t lead = 0;
    const std::string body = trim(line, &lead);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(number, static_cast<int>(lead) + 1, "unterminated section header");
      section = trim(body.substr(1, body.size() - 2));
      if (section != "metric" && section != "domain" && section != "box" && section != "tetrad") {
        throw ConfigError(number, static_cast<int>(lead) + 2, "unknown section '" + section + "'");
      }
      continue;
    }
    if (section == "domain") {
      raw.domain.push_back({body, number, static_cast<int>(lead) + 1});
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(number, static_cast<int>(lead) + 1, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    std::size_t value_lead = 0;
    const std::string value = trim(line.substr(eq + 1), &value_lead);
    if (key.empty()) throw ConfigError(number, static_cast<int>(lead) + 1, "empty key");
    const Located loc{value, number, static_cast<int>(eq + 2 + value_lead)};
    std::map<std::string, Located>* target = nullptr;
    if (section.empty()) target = &raw.top;
    if (section == "metric") target = &raw.metric;
    if (section == "box") target = &raw.box;
    if (section == "tetrad") target = &raw.tetrad;
    if (!target->emplace(key, loc).second) {
      throw ConfigError(number, static_cast<int>(lead) + 1, "duplicate key '" + key + "'");
    }
  }
  return raw;
}

// "g01" style keys: prefix followed by two digits 0..3.
bool index_pair(const std::string& key, char prefix, int* i, int* j) {
  if (key.size() != 3 || key[0] != prefix) return false;
  if (key[1] < '0' || key[1] > '3' || key[2] < '0' || key[2] > '3') return false;
  *i = key[1] - '0';
  *j = key[2] - '0';
  return true;
}

dsl::Coordinates read_coordinates(const RawConfig& raw) {
  dsl::Coordinates coords;
  const auto it = raw.top.find("coordinates");
  if (it == raw.top.end()) return coords;
  std::istringstream names(it->second.text);
  std::string name;
  int k = 0;
  while (names >> name) {
    if (k == 4) throw ConfigError(it->second.line, it->second.column, "more than four coordinate names");
    const bool valid = std::isalpha(static_cast<unsigned char>(name[0])) &&
                       std::all_of(name.begin(), name.end(), [](char c) {
                         return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                       });
    if (!valid) throw ConfigError(it->second.line, it->second.column, "invalid coordinate name '" + name + "'");
    coords.names[k++] = name;
  }
  if (k != 4) throw ConfigError(it->second.line, it->second.column, "expected four coordinate names");
  return coords;
}

int coordinate_of(const std::string& key, const dsl::Coordinates& coords) {
  static const char* kDefault[4][2] = {{"x0", "t"}, {"x1", "r"}, {"x2", "th"}, {"x3", "ph"}};
  for (int k = 0; k < 4; ++k) {
    if (key == coords.names[k]) return k;
  }
  for (int k = 0; k < 4; ++k) {
    if (key == kDefault[k][0] || key == kDefault[k][1]) return k;
  }
  return -1;
}

double constant(const Located& src, const dsl::Coordinates& coords) {
  const dsl::Expr e = parse_located(src, coords);
  try {
    return dsl::eval(e, {0.0, 0.0, 0.0, 0.0});
  } catch (const dsl::DomainError& err) {
    throw ConfigError(src.line, src.column, err.what());
  }
}

std::pair<int, int> signature_counts(const Mat4& g) {
  const Eigen::SelfAdjointEigenSolver<Mat4> eig(g);
  const Vec4 ev = eig.eigenvalues();
  return {static_cast<int>((ev.array() > 0.0).count()), static_cast<int>((ev.array() < 0.0).count())};
}

bool lorentzian(const Mat4& g) { return signature_counts(g) == std::pair<int, int>{1, 3}; }

std::string signature_text(const Mat4& g) {
  const auto [positive, negative] = signature_counts(g);
  return "(" + std::to_string(positive) + " positive, " + std::to_string(negative) + " negative)";
}

}  // namespace

CustomSpacetime parse_spacetime_config(const std::string& text) {
  const RawConfig raw = read_sections(text);
  for (const auto& [key, loc] : raw.top) {
    if (key != "name" && key != "coordinates") {
      throw ConfigError(loc.line, 1, "unknown top-level key '" + key + "'");
    }
  }
  const std::string name = raw.top.count("name") ? raw.top.at("name").text : "custom";
  const dsl::Coordinates coords = read_coordinates(raw);

  std::array<std::array<dsl::Expr, 4>, 4> g{};
  for (const auto& [key, loc] : raw.metric) {
    int i = 0;
    int j = 0;
    if (!index_pair(key, 'g', &i, &j)) throw ConfigError(loc.line, 1, "unknown metric key '" + key + "'");
    if (g[i][j]) throw ConfigError(loc.line, 1, "component " + key + " given twice (g is symmetric)");
    g[i][j] = g[j][i] = parse_located(loc, coords);
  }
  for (int k = 0; k < 4; ++k) {
    if (!g[k][k]) {
      throw ConfigError(0, 0, "missing metric component g" + std::to_string(k) + std::to_string(k));
    }
  }
  const dsl::Expr zero = dsl::number(0.0);
  for (auto& row : g) {
    for (auto& e : row) {
      if (!e) e = zero;
    }
  }

  std::vector<dsl::Expr> domain;
  for (const auto& loc : raw.domain) domain.push_back(parse_located(loc, coords));

  Box box;
  for (int k = 0; k < 4; ++k) {
    bool found = false;
    for (const auto& [key, loc] : raw.box) {
      const int c = coordinate_of(key, coords);
      if (c < 0) throw ConfigError(loc.line, 1, "unknown coordinate '" + key + "' in [box]");
      if (c != k) continue;
      std::istringstream parts(loc.text);
      std::string lo;
      std::string hi;
      std::string extra;
      if (!(parts >> lo >> hi) || (parts >> extra)) {
        throw ConfigError(loc.line, loc.column, "expected 'lo hi' for " + key);
      }
      box.lo[k] = constant({lo, loc.line, loc.column}, coords);
      box.hi[k] = constant({hi, loc.line, loc.column + static_cast<int>(loc.text.find(hi, lo.size()))}, coords);
      if (!(box.lo[k] <= box.hi[k])) throw ConfigError(loc.line, loc.column, "box range has lo > hi");
      found = true;
    }
    if (!found) throw ConfigError(0, 0, "missing [box] range for coordinate " + std::to_string(k));
  }

  auto metric = [g](const Point& x) -> Mat4 {
    Mat4 m;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) m(i, j) = dsl::eval(g[i][j], x);
    }
    return m;
  };
  Spacetime::DomainFn domain_fn;
  if (!domain.empty()) {
    domain_fn = [domain](const Point& x) {
      for (const auto& e : domain) {
        try {
          if (!(dsl::eval(e, x) > 0.0)) return false;
        } catch (const dsl::DomainError&) {
          return false;
        }
      }
      return true;
    };
  }
  // Metric components outside their own domain also leave the domain.
  Spacetime::DomainFn guarded = [domain_fn, metric](const Point& x) {
    if (domain_fn && !domain_fn(x)) return false;
    try {
      const Mat4 m = metric(x);
      return m.allFinite();
    } catch (const dsl::DomainError&) {
      return false;
    }
  };
  Spacetime s(name, metric, guarded, box);

  Point center;
  for (int k = 0; k < 4; ++k) center[k] = 0.5 * (box.lo[k] + box.hi[k]);
  if (!guarded(center)) throw ConfigError(0, 0, "box center lies outside the domain");
  if (!lorentzian(metric(center))) {
    throw ConfigError(0, 0, "metric signature at the box center is " + signature_text(metric(center)) +
                                "; expected (+,-,-,-)");
  }

  std::optional<Tetrad> tetrad;
  if (!raw.tetrad.empty()) {
    std::array<std::array<dsl::Expr, 4>, 4> h{};
    for (const auto& [key, loc] : raw.tetrad) {
      int a = 0;
      int mu = 0;
      if (!index_pair(key, 'h', &a, &mu)) throw ConfigError(loc.line, 1, "unknown tetrad key '" + key + "'");
      h[a][mu] = parse_located(loc, coords);
    }
    for (auto& row : h) {
      for (auto& e : row) {
        if (!e) e = zero;
      }
    }
    tetrad = Tetrad("config", [h](const Point& x) -> Mat4 {
      Mat4 m;
      for (int a = 0; a < 4; ++a) {
        for (int mu = 0; mu < 4; ++mu) m(a, mu) = dsl::eval(h[a][mu], x);
      }
      return m;
    });
  }
  return CustomSpacetime{std::move(s), std::move(tetrad), coords};
}

CustomSpacetime load_custom_spacetime(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, 0, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spacetime_config(buffer.str());
}

void require_lorentzian(const Spacetime& s, const std::vector<Point>& points) {
  for (const Point& x : points) {
    const Mat4 g = s.metric(x);
    if (!lorentzian(g)) {
      std::ostringstream where;
      where << "(" << x[0] << ", " << x[1] << ", " << x[2] << ", " << x[3] << ")";
      throw ConfigError(0, 0, "metric signature at " + where.str() + " is " + signature_text(g) +
                                  "; expected (+,-,-,-)");
    }
  }
}

}  // namespace spinor_forge
