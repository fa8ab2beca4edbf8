#include "mapsel/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace mapsel {

Rng Rng::scripted(std::vector<double> uniforms) {
  Rng r;
  r.scripted_ = true;
  r.script_ = std::move(uniforms);
  return r;
}

double Rng::uniform01() {
  if (scripted_) {
    if (cursor_ >= script_.size()) throw std::logic_error("scripted rng exhausted");
    return script_[cursor_++];
  }
  // 53 random mantissa bits; identical across standard libraries.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::size_t>(hi - lo) + 1;
  return lo + static_cast<int>(uniform_index(span));
}

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
  return std::min(i, n - 1);
}

bool Rng::bernoulli(double p) { return uniform01() < p; }

std::uint64_t Rng::poisson(double mean) {
  if (mean <= 0) return 0;
  if (scripted_) throw std::logic_error("scripted rng cannot draw poisson variates");
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(engine_);
}

}  // namespace mapsel
