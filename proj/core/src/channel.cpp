#include "swipt/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "swipt/error.hpp"
#include "swipt/rng.hpp"

namespace swipt {

namespace {

// Stream tags; each link has its own stream so changing N or K leaves the
// other links untouched.
constexpr std::uint64_t kTagPositions = 1;
constexpr std::uint64_t kTagApIrs = 2;
constexpr std::uint64_t kTagDirect = 0x100;
constexpr std::uint64_t kTagReflect = 0x200;

double bearing(const Point2& from, const Point2& to) {
  return std::atan2(to.y - from.y, to.x - from.x);
}

bool finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void Geometry::validate() const {
  if (!finite(ap_position) || !finite(irs_position) || !finite(psr_center)) {
    throw SolverError(ErrorCode::kInvalidGeometry, "coordinates must be finite");
  }
  if (!(psr_scatter_radius > 0.0) || !std::isfinite(psr_scatter_radius)) {
    throw SolverError(ErrorCode::kInvalidGeometry, "psr_scatter_radius must be positive");
  }
  if (irs_rows < 0) {
    throw SolverError(ErrorCode::kInvalidGeometry, "irs_rows must be non-negative");
  }
}

RicianWeights rician_weights(double beta_db) {
  const double beta = db_to_linear(beta_db);
  if (std::isinf(beta)) return {1.0, 0.0};
  return {std::sqrt(beta / (beta + 1.0)), std::sqrt(1.0 / (beta + 1.0))};
}

double path_loss(double distance_m, double exponent, double c0_db, double d0) {
  if (!(distance_m > 0.0) || !(d0 > 0.0)) {
    std::ostringstream os;
    os << "path loss needs positive distances, got d = " << distance_m << ", d0 = " << d0;
    throw SolverError(ErrorCode::kInvalidGeometry, os.str());
  }
  return db_to_linear(c0_db) * std::pow(distance_m / d0, -exponent);
}

ComplexVector steering_vector_ula(double angle, int m, double spacing_over_lambda) {
  ComplexVector a(m);
  const double phase = 2.0 * std::numbers::pi * spacing_over_lambda * std::sin(angle);
  for (int p = 0; p < m; ++p) a(p) = std::polar(1.0, phase * p);
  return a;
}

ComplexVector steering_vector_ura(double azimuth, double elevation, int n_h, int n_v,
                                  double spacing_over_lambda) {
  const double two_pi_s = 2.0 * std::numbers::pi * spacing_over_lambda;
  const double ph = two_pi_s * std::sin(azimuth) * std::cos(elevation);
  const double pv = two_pi_s * std::sin(elevation);
  ComplexVector a(static_cast<Eigen::Index>(n_h) * n_v);
  for (int p = 0; p < n_h; ++p) {
    for (int q = 0; q < n_v; ++q) a(p * n_v + q) = std::polar(1.0, ph * p + pv * q);
  }
  return a;
}

std::pair<int, int> ura_shape(int n, int rows_hint) {
  if (n <= 0) return {0, 0};
  if (rows_hint > 0) {
    if (n % rows_hint != 0) {
      std::ostringstream os;
      os << "irs_rows = " << rows_hint << " does not divide N = " << n;
      throw SolverError(ErrorCode::kInvalidGeometry, os.str());
    }
    return {n / rows_hint, rows_hint};
  }
  int rows = 1;
  for (int v = 1; v * v <= n; ++v) {
    if (n % v == 0) rows = v;
  }
  return {n / rows, rows};
}

ChannelSet generate_channels(const SystemConfig& config, const Geometry& geometry,
                             std::uint64_t seed) {
  geometry.validate();
  const int m_b = config.m_b;
  const int m_u = config.m_u;
  const int n = config.n;
  const double s = config.spacing_over_lambda;
  const RicianWeights mix = rician_weights(config.rician_beta_db);
  const auto [n_h, n_v] = ura_shape(n, geometry.irs_rows);

  ChannelSet out;

  RandomStream positions(derive_seed(seed, kTagPositions));
  out.psr_positions.reserve(config.k);
  for (int k = 0; k < config.k; ++k) {
    const double radius = geometry.psr_scatter_radius * std::sqrt(positions.uniform());
    const double angle = 2.0 * std::numbers::pi * positions.uniform();
    out.psr_positions.push_back({geometry.psr_center.x + radius * std::cos(angle),
                                 geometry.psr_center.y + radius * std::sin(angle)});
  }

  const Point2& ap = geometry.ap_position;
  const Point2& irs = geometry.irs_position;

  // AP -> IRS
  {
    RandomStream nlos(derive_seed(seed, kTagApIrs));
    ComplexMatrix g = nlos.complex_normal_matrix(n, m_b);
    if (n > 0) {
      const double pl = path_loss(distance(ap, irs), config.chi_relate, config.c0_db, config.d0);
      const ComplexVector a_irs = steering_vector_ura(bearing(irs, ap), 0.0, n_h, n_v, s);
      const ComplexVector a_ap = steering_vector_ula(bearing(ap, irs), m_b, s);
      out.f = std::sqrt(pl) * (mix.los * (a_irs * a_ap.adjoint()) + mix.nlos * g);
    } else {
      out.f = ComplexMatrix::Zero(0, m_b);
    }
  }

  out.d.reserve(config.k);
  out.r.reserve(config.k);
  for (int k = 0; k < config.k; ++k) {
    const Point2& psr = out.psr_positions[k];
    const ComplexVector a_ap = steering_vector_ula(bearing(ap, psr), m_b, s);
    const ComplexVector a_psr_from_ap = steering_vector_ula(bearing(psr, ap), m_u, s);

    RandomStream direct(derive_seed(seed, kTagDirect + static_cast<std::uint64_t>(k)));
    const ComplexMatrix gd = direct.complex_normal_matrix(m_b, m_u);
    const double pl_d = path_loss(distance(ap, psr), config.chi_direct, config.c0_db, config.d0);
    out.d.push_back(std::sqrt(pl_d) * (mix.los * (a_ap * a_psr_from_ap.adjoint()) + mix.nlos * gd));

    RandomStream reflect(derive_seed(seed, kTagReflect + static_cast<std::uint64_t>(k)));
    const ComplexMatrix gr = reflect.complex_normal_matrix(n, m_u);
    if (n > 0) {
      const double pl_r = path_loss(distance(irs, psr), config.chi_relate, config.c0_db, config.d0);
      const ComplexVector a_irs = steering_vector_ura(bearing(irs, psr), 0.0, n_h, n_v, s);
      const ComplexVector a_psr = steering_vector_ula(bearing(psr, irs), m_u, s);
      out.r.push_back(std::sqrt(pl_r) * (mix.los * (a_irs * a_psr.adjoint()) + mix.nlos * gr));
    } else {
      out.r.push_back(ComplexMatrix::Zero(0, m_u));
    }
  }
  return out;
}

ChannelSet without_irs(const ChannelSet& channels) {
  ChannelSet out = channels;
  for (auto& r : out.r) r.setZero();
  return out;
}

}  // namespace swipt
