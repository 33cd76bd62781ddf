#include "uavnoma/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "uavnoma/errors.hpp"

namespace uavnoma {

using nlohmann::json;

Point2 Box::clamp(const Point2& p) const {
  return {std::clamp(p.x, xmin, xmax), std::clamp(p.y, ymin, ymax)};
}

Scenario Scenario::with_r_star(double r) const {
  Scenario out = *this;
  out.r_star = r;
  validate(out);
  return out;
}

Scenario Scenario::with_p_max(double p) const {
  Scenario out = *this;
  out.p_max = p;
  validate(out);
  return out;
}

Box default_area(const std::vector<Point2>& users, double margin) {
  if (users.empty()) throw ValidationError("users must be non-empty");
  Box b{users[0].x, users[0].y, users[0].x, users[0].y};
  for (const auto& u : users) {
    b.xmin = std::min(b.xmin, u.x);
    b.ymin = std::min(b.ymin, u.y);
    b.xmax = std::max(b.xmax, u.x);
    b.ymax = std::max(b.ymax, u.y);
  }
  b.xmin -= margin;
  b.ymin -= margin;
  b.xmax += margin;
  b.ymax += margin;
  return b;
}

void validate(const Scenario& s) {
  if (s.users.empty()) throw ValidationError("users must be non-empty");
  const Box& a = s.area;
  if (!(std::isfinite(a.xmin) && std::isfinite(a.ymin) && std::isfinite(a.xmax) &&
        std::isfinite(a.ymax)) ||
      !(a.xmin < a.xmax && a.ymin < a.ymax)) {
    throw ValidationError("area must be a finite non-degenerate box (xmin < xmax, ymin < ymax)");
  }
  for (std::size_t i = 0; i < s.users.size(); ++i) {
    const auto& u = s.users[i];
    if (!std::isfinite(u.x) || !std::isfinite(u.y)) {
      throw ValidationError("user " + std::to_string(i + 1) + " has non-finite coordinates");
    }
    if (!a.contains(u)) {
      throw ValidationError("user " + std::to_string(i + 1) + " lies outside the search area");
    }
  }
  if (!(s.altitude_h >= 1.0) || !std::isfinite(s.altitude_h)) {
    throw ValidationError("altitude_h must be >= 1 m");
  }
  if (!(s.gamma0 > 0.0) || !std::isfinite(s.gamma0)) throw ValidationError("gamma0 must be > 0");
  if (!(s.p_max > 0.0) || !std::isfinite(s.p_max)) throw ValidationError("p_max must be > 0");
  if (!(s.r_star > 0.0) || !std::isfinite(s.r_star)) throw ValidationError("r_star must be > 0");
}

Scenario make_scenario(std::vector<Point2> users, double altitude_h, double gamma0, double p_max,
                       double r_star, std::optional<Box> area) {
  Scenario s;
  s.area = area ? *area : default_area(users);
  s.users = std::move(users);
  s.altitude_h = altitude_h;
  s.gamma0 = gamma0;
  s.p_max = p_max;
  s.r_star = r_star;
  validate(s);
  return s;
}

namespace {

double number_field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ParseError(std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed scenario JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario document must be a JSON object");

  if (!doc.contains("users") || !doc.at("users").is_array()) {
    throw ParseError("missing key 'users' (array of [x, y] pairs)");
  }
  std::vector<Point2> users;
  for (const auto& item : doc.at("users")) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw ParseError("each user must be an [x, y] pair of numbers");
    }
    users.push_back({item[0].get<double>(), item[1].get<double>()});
  }

  double gamma0 = 0.0;
  const bool has_split = doc.contains("beta0") || doc.contains("sigma2");
  if (doc.contains("gamma0")) {
    if (has_split) throw ParseError("give either 'gamma0' or 'beta0'/'sigma2', not both");
    gamma0 = number_field(doc, "gamma0");
  } else if (has_split) {
    const double beta0 = number_field(doc, "beta0");
    const double sigma2 = number_field(doc, "sigma2");
    if (!(sigma2 > 0.0)) throw ValidationError("sigma2 must be > 0");
    gamma0 = beta0 / sigma2;
  } else {
    throw ParseError("missing key 'gamma0'");
  }

  std::optional<Box> area;
  if (doc.contains("area")) {
    const auto& a = doc.at("area");
    if (!a.is_array() || a.size() != 4) {
      throw ParseError("'area' must be [xmin, ymin, xmax, ymax]");
    }
    for (const auto& v : a) {
      if (!v.is_number()) throw ParseError("'area' entries must be numbers");
    }
    area = Box{a[0].get<double>(), a[1].get<double>(), a[2].get<double>(), a[3].get<double>()};
  }

  if (users.empty()) throw ValidationError("users must be non-empty");
  return make_scenario(std::move(users), number_field(doc, "altitude_h"), gamma0,
                       number_field(doc, "p_max"), number_field(doc, "r_star"), area);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string scenario_to_json(const Scenario& s) {
  json doc;
  doc["users"] = json::array();
  for (const auto& u : s.users) doc["users"].push_back({u.x, u.y});
  doc["altitude_h"] = s.altitude_h;
  doc["gamma0"] = s.gamma0;
  doc["p_max"] = s.p_max;
  doc["r_star"] = s.r_star;
  doc["area"] = {s.area.xmin, s.area.ymin, s.area.xmax, s.area.ymax};
  return doc.dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file '" + path.string() + "'");
  out << scenario_to_json(s);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

Scenario generate_scenario(std::uint64_t seed, std::size_t m, const Box& area) {
  if (m == 0) throw ValidationError("m must be >= 1");
  if (!(area.xmin < area.xmax && area.ymin < area.ymax)) {
    throw ValidationError("area must be non-degenerate");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(area.xmin, area.xmax);
  std::uniform_real_distribution<double> uy(area.ymin, area.ymax);
  std::vector<Point2> users;
  users.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = ux(rng);
    users.push_back({x, uy(rng)});
  }
  return make_scenario(std::move(users), 100.0, 1e6, 1.0, 0.5, area);
}

Scenario reference_scenario(double r_star) {
  return make_scenario({{50.0, 50.0}, {350.0, 80.0}, {200.0, 320.0}, {120.0, 180.0}}, 100.0, 1e6,
                       1.0, r_star, Box{0.0, 0.0, 400.0, 400.0});
}

std::vector<double> SweepSpec::axis() const {
  validate(*this);
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

void validate(const SweepSpec& spec) {
  if (!std::isfinite(spec.start) || !std::isfinite(spec.stop) || !(spec.start <= spec.stop)) {
    throw ValidationError("sweep requires start <= stop");
  }
  if (!(spec.step > 0.0) || !std::isfinite(spec.step)) {
    throw ValidationError("sweep requires step > 0");
  }
  if (spec.schemes.empty()) throw ValidationError("sweep requires at least one scheme");
  static const std::array<std::string, 5> known{"njdp", "nlc", "nfdp", "fdma", "oracle"};
  for (const auto& s : spec.schemes) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw ValidationError("unknown scheme '" + s + "' (expected njdp, nlc, nfdp, fdma, oracle)");
    }
  }
}

}  // namespace uavnoma
