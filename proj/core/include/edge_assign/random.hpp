#pragma once

#include <cstdint>

namespace edge_assign {

// Counter-based generator: every (seed, kind, index) triple names its own
// stream, so the draws of entity k never depend on how many other entities
// exist or in which order they are generated. The transforms below are
// written out by hand because the standard distributions are not
// bit-identical across library implementations.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t kind, std::uint64_t index);

  std::uint64_t next();
  // Uniform on [0, 1).
  double uniform();
  // Uniform on [lo, hi); returns lo exactly when lo == hi.
  double uniform(double lo, double hi);
  // Uniform integer on [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double exponential(double mean);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace edge_assign
