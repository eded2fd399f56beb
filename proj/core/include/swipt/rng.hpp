#pragma once

// Seeded random streams. Distribution transforms are written out by hand
// because std:: distributions are not reproducible across standard libraries.

#include <cstdint>
#include <random>

#include "swipt/linalg.hpp"

namespace swipt {

std::uint64_t splitmix64(std::uint64_t x);

// Child seed for an independent stream identified by `tag`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform();
  double standard_normal();
  // Circularly symmetric CN(0, 1).
  Complex complex_normal();
  // rows x cols of CN(0, 1), filled row by row.
  ComplexMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace swipt
