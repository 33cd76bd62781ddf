#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace uavnoma {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Axis-aligned rectangle in meters.
struct Box {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  bool contains(const Point2& p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
  Point2 clamp(const Point2& p) const;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  friend bool operator==(const Box&, const Box&) = default;
};

/// One problem instance: ground users, UAV altitude, the reference SNR
/// gamma0 = beta0 / sigma^2, the total power budget and the per-user QoS rate.
/// Construct through make_scenario (or the loaders), which validates.
struct Scenario {
  std::vector<Point2> users;
  double altitude_h = 100.0;
  double gamma0 = 1e6;
  double p_max = 1.0;
  double r_star = 0.5;
  Box area;

  std::size_t size() const { return users.size(); }
  Scenario with_r_star(double r) const;
  Scenario with_p_max(double p) const;
};

/// Users' bounding box grown by `margin` meters on every side.
Box default_area(const std::vector<Point2>& users, double margin = 100.0);

/// Validates every invariant and returns the scenario. When `area` is empty
/// the default search area is used. Throws ValidationError.
Scenario make_scenario(std::vector<Point2> users, double altitude_h, double gamma0,
                       double p_max, double r_star, std::optional<Box> area = std::nullopt);

void validate(const Scenario& s);

Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& s);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

/// Users i.i.d. uniform over `area`, deterministic per seed. Defaults
/// H=100, gamma0=1e6, p_max=1, r*=0.5.
Scenario generate_scenario(std::uint64_t seed, std::size_t m, const Box& area);

/// Four-user instance used by the acceptance suite and the README examples.
Scenario reference_scenario(double r_star = 0.5);

enum class SweepVariable { r_star, p_max };

struct SweepSpec {
  SweepVariable variable = SweepVariable::r_star;
  double start = 0.1;
  double stop = 1.0;
  double step = 0.1;
  std::vector<std::string> schemes;

  /// Axis values start, start+step, ... up to stop (inclusive within 1e-9 steps).
  std::vector<double> axis() const;
};

void validate(const SweepSpec& spec);

}  // namespace uavnoma
