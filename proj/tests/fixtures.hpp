#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>

#include "prymker/analysis.hpp"

namespace prymker::testing {

// Built fixtures are cached per process: building is cheap but not free.
inline const BuiltCover& fixture(const std::string& name) {
  static std::map<std::string, BuiltCover> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  CyclicCoverSpec spec;
  if (name == "pirola")
    spec = pirola_spec();
  else if (name == "bielliptic_g4")
    spec = bielliptic_g4_spec();
  else
    spec = bielliptic_g3_spec();
  return cache.emplace(name, build_cover(spec)).first->second;
}

inline const PipelineResults& results(const std::string& name) {
  static std::map<std::string, PipelineResults> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  return cache.emplace(name, run_pipeline(fixture(name).datum)).first->second;
}

inline const char* const kFixtures[] = {"pirola", "bielliptic_g4", "bielliptic_g3"};

// Small random values from a fixed-seed engine.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  mpq_class rational(long bound = 9) {
    mpq_class q(integer(-bound, bound), integer(1, bound));
    q.canonicalize();
    return q;
  }

  Scalar scalar(const FieldSpec& field, long bound = 9) {
    std::vector<mpq_class> c;
    for (int i = 0; i < field.degree(); ++i) c.push_back(rational(bound));
    return Scalar::from_coefficients(field, std::move(c));
  }

  Scalar nonzero_rational(long bound = 9) {
    for (;;) {
      const mpq_class q = rational(bound);
      if (q != 0) return Scalar(q);
    }
  }

  Vector vector(std::size_t n, const FieldSpec& field) {
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(scalar(field, 5));
    return v;
  }

  Matrix invertible(std::size_t n) {
    for (;;) {
      Matrix m(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = Scalar(integer(-3, 3));
      if (rank(m) == n) return m;
    }
  }

  // c0 + c1 v + ... + c_{len-1} v^{len-1} with c0 != 0, exact.
  TruncatedSeries unit(int len) {
    std::vector<Scalar> c{nonzero_rational(4)};
    for (int i = 1; i < len; ++i) c.push_back(Scalar(rational(4)));
    return TruncatedSeries::polynomial(std::move(c));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace prymker::testing
