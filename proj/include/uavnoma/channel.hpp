#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uavnoma/scenario.hpp"

namespace uavnoma {

/// Horizontal UAV position; the altitude comes from the scenario.
using UavPosition = Point2;

/// Per-user SNR slope h_i = gamma0 / (H^2 + |Q - q_i|^2), in 1/W.
struct ChannelGains {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Transmit powers in watts, in user order.
struct PowerAllocation {
  std::vector<double> watts;

  std::size_t size() const { return watts.size(); }
  double operator[](std::size_t i) const { return watts[i]; }
  double total() const;
};

/// SIC decoding order. at(i, j) == 1 means user j is still undecoded (treated
/// as interference) while user i is decoded, i.e. i is the stronger user.
class DecodingOrder {
 public:
  explicit DecodingOrder(std::size_t m) : m_(m), alpha_(m * m, 0) {}

  std::size_t size() const { return m_; }
  int at(std::size_t i, std::size_t j) const { return alpha_[i * m_ + j]; }
  void set(std::size_t i, std::size_t j, int v) { alpha_[i * m_ + j] = v; }

  /// Zero diagonal, binary entries and alpha_ij + alpha_ji = 1 off the diagonal.
  bool is_valid() const;

  friend bool operator==(const DecodingOrder&, const DecodingOrder&) = default;

 private:
  std::size_t m_;
  std::vector<int> alpha_;
};

/// H^2 + |Q - q_i|^2 per user.
std::vector<double> squared_distances(const Scenario& s, const UavPosition& pos);

ChannelGains gains(const Scenario& s, const UavPosition& pos);

/// alpha_ij = 1 iff (d_i^2, i) < (d_j^2, j) lexicographically.
DecodingOrder decoding_order(const Scenario& s, const UavPosition& pos);
DecodingOrder decoding_order_from_distances(std::span<const double> d2);

/// User indices sorted weakest first. Among equal gains the higher index comes
/// first, so the last entry is the user decoding_order ranks strongest.
std::vector<std::size_t> ascending_gain_order(const ChannelGains& g);

/// log2(1 + P_i h_i / (1 + sum_{j != i} alpha_ij h_j P_j)).
std::vector<double> user_rates(const ChannelGains& g, const DecodingOrder& order,
                               const PowerAllocation& p);

/// log2(1 + sum_i P_i h_i); equals the sum of user_rates for any valid order.
double sum_rate(const ChannelGains& g, const PowerAllocation& p);

}  // namespace uavnoma
