#pragma once

#include <random>

#include "cpk/moebius.hpp"

namespace cpk::testutil {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed);
  return gen;
}

inline double unit_real() {
  static std::uniform_real_distribution<double> d(-1.0, 1.0);
  return d(rng());
}

inline cx rand_cx() { return {unit_real(), unit_real()}; }

inline Sl2Elem rand_sl2() { return {rand_cx(), rand_cx(), rand_cx()}; }

inline MoebiusMap rand_moebius() { return exp_sl2(rand_sl2()); }

inline HermMatrix rand_herm() {
  return {unit_real(), rand_cx(), unit_real()};
}

inline DS3Point rand_disk() {
  return act_on_disk(rand_moebius(), DS3Point::unit_disk());
}

inline RP1Point rand_point() {
  return RP1Point(rand_cx(), rand_cx());
}

}  // namespace cpk::testutil
