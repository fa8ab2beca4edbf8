#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mapsel {

// Single random stream for a run. A scripted instance replays a fixed list of
// uniform draws, which lets fixtures pin every random decision of a round.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng scripted(std::vector<double> uniforms);

  // Uniform on [0, 1).
  double uniform01();
  double uniform_real(double lo, double hi);
  // Uniform on {lo, ..., hi}.
  int uniform_int(int lo, int hi);
  // Uniform on {0, ..., n - 1}; n must be positive.
  std::size_t uniform_index(std::size_t n);
  bool bernoulli(double p);
  std::uint64_t poisson(double mean);

  bool is_scripted() const { return scripted_; }

 private:
  Rng() = default;

  std::mt19937_64 engine_;
  bool scripted_ = false;
  std::vector<double> script_;
  std::size_t cursor_ = 0;
};

}  // namespace mapsel
