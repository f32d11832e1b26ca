#include "edge_assign/random.hpp"

#include <cmath>

namespace edge_assign {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Stream::Stream(std::uint64_t seed, std::uint64_t kind, std::uint64_t index)
    : key_(splitmix64(splitmix64(splitmix64(seed) ^ kind) ^ index)) {}

std::uint64_t Stream::next() {
  return splitmix64(key_ + 0x632be59bd9b4e019ULL * ++counter_);
}

double Stream::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Stream::uniform(double lo, double hi) {
  const double u = uniform();
  if (lo == hi) return lo;
  return lo + (hi - lo) * u;
}

std::int64_t Stream::uniform_int(std::int64_t lo, std::int64_t hi) {
  const double u = uniform();
  if (hi <= lo) return lo;
  const auto span = static_cast<double>(hi - lo + 1);
  const auto k = static_cast<std::int64_t>(std::floor(u * span));
  return lo + (k > hi - lo ? hi - lo : k);
}

double Stream::exponential(double mean) {
  return -mean * std::log1p(-uniform());
}

}  // namespace edge_assign
