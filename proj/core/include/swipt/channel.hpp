#pragma once

#include <cstdint>
#include <vector>

#include "swipt/config.hpp"
#include "swipt/linalg.hpp"

namespace swipt {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point2& a, const Point2& b);

struct Geometry {
  Point2 ap_position{0.0, 0.0};
  Point2 irs_position{5.0, 5.0};
  Point2 psr_center{5.0, 0.0};
  double psr_scatter_radius = 1.0;
  // Rows of the IRS rectangular array; 0 picks the largest divisor of N
  // not exceeding sqrt(N).
  int irs_rows = 0;

  void validate() const;
};

struct ChannelSet {
  ComplexMatrix f;               // N x M_b, AP -> IRS
  std::vector<ComplexMatrix> d;  // K of M_b x M_u, AP -> PSR
  std::vector<ComplexMatrix> r;  // K of N x M_u, IRS -> PSR
  std::vector<Point2> psr_positions;

  int m_b() const { return static_cast<int>(f.cols()); }
  int n() const { return static_cast<int>(f.rows()); }
  int k() const { return static_cast<int>(d.size()); }
  int m_u() const { return d.empty() ? 0 : static_cast<int>(d.front().cols()); }
};

struct RicianWeights {
  double los;
  double nlos;
};

RicianWeights rician_weights(double beta_db);

double path_loss(double distance_m, double exponent, double c0_db, double d0);

ComplexVector steering_vector_ula(double angle, int m, double spacing_over_lambda);

ComplexVector steering_vector_ura(double azimuth, double elevation, int n_h, int n_v,
                                  double spacing_over_lambda);

// Split of N into (n_h, n_v) used for the IRS array.
std::pair<int, int> ura_shape(int n, int rows_hint);

ChannelSet generate_channels(const SystemConfig& config, const Geometry& geometry,
                             std::uint64_t seed);

// Copy with every IRS -> PSR link zeroed.
ChannelSet without_irs(const ChannelSet& channels);

}  // namespace swipt
