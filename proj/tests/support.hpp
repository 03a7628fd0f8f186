#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "slag/cubic.hpp"

namespace slag::testing {

inline Rotation3 random_rotation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return Rotation3::from_uniforms(u(rng), u(rng), u(rng));
}

inline HarmonicCubic random_cubic(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, 1.0);
  SymmetricCubic t;
  for (auto& c : t.coeffs) c = scale * n(rng);
  return project_traceless(t);
}

// Polynomial value by explicit summation over all 27 index triples.
inline double poly_value(const HarmonicCubic& h, const Vec3& x) {
  double v = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) v += h.at(i, j, k) * x(i) * x(j) * x(k);
  return v;
}

struct CorpusEntry {
  std::string name;
  HarmonicCubic h;
  StabilizerType type;
  double r, s;
};

// Classification corpus: one or more representatives of each stabilizer type.
inline std::vector<CorpusEntry> classification_corpus() {
  using cubics::cubic3;
  using cubics::xyz6;
  using cubics::zonal;
  const double rt2 = std::sqrt(2.0);
  return {
      {"zero", HarmonicCubic(), StabilizerType::Full, 0, 0},
      {"zonal", zonal(), StabilizerType::Circle, 1, 0},
      {"zonal_scaled", 0.7 * zonal(), StabilizerType::Circle, 0.7, 0},
      {"xyz", xyz6(), StabilizerType::A4, 0, 1},
      {"xyz_scaled", 1.8 * xyz6(), StabilizerType::A4, 0, 1.8},
      {"cubic3", cubic3(), StabilizerType::S3, 0, 1},
      {"cubic3_scaled", 2.5 * cubic3(), StabilizerType::S3, 0, 2.5},
      {"n_1_2", cubics::normal_z2(1, 2), StabilizerType::Z2, 1, 2},
      {"n_1_05", cubics::normal_z2(1, 0.5), StabilizerType::Z2, 1, 0.5},
      {"n_03_1", cubics::normal_z2(0.3, 1.0), StabilizerType::Z2, 0.3, 1.0},
      {"m_1_3", cubics::normal_z3(1, 3), StabilizerType::Z3, 1, 3},
      {"m_1_05", cubics::normal_z3(1, 0.5), StabilizerType::Z3, 1, 0.5},
      {"m_04_13", cubics::normal_z3(0.4, 1.3), StabilizerType::Z3, 0.4, 1.3},
      {"n_1_1", cubics::normal_z2(1, 1), StabilizerType::S3, 0, 2},
      {"m_1_rt2", cubics::normal_z3(1, rt2), StabilizerType::A4, 0, std::sqrt(3.0)},
      {"generic", project_traceless({{0.3, -0.7, 0.2, 0.9, 0.4, -0.1, 0.5, -0.6, 0.8, 0.25}}),
       StabilizerType::Trivial, 0, 0},
      {"perturbed_z2", cubics::normal_z2(1, 2) + 0.2 * cubics::cubic3(), StabilizerType::Trivial, 0, 0},
  };
}

}  // namespace slag::testing
