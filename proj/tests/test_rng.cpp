#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "sirw/rng.hpp"

using namespace sirw;

TEST_CASE("counter rng random access matches sequential") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i)
    CHECK(a.next_u64() == b.at_u64(static_cast<std::uint64_t>(i)));
}

TEST_CASE("uniform stays in the open unit interval") {
  Rng r(7);
  for (int i = 0; i < 10000; ++i) {
    double u = r.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("exponential is positive and has roughly the right mean") {
  Rng r(9);
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double x = r.exponential(2.0);
    CHECK(x > 0.0);
    sum += x;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("derive_key is order sensitive") {
  CHECK(derive_key(1, {2, 3}) != derive_key(1, {3, 2}));
  CHECK(derive_key(1, {2}) != derive_key(2, {2}));
}

TEST_CASE("distinct substreams are uncorrelated") {
  // Cross-correlation of centered uniforms over 1e4 draws, bound 4 sigma.
  const int n = 10000;
  double sd = std::sqrt(static_cast<double>(n)) / 12.0;
  std::uint64_t keys[3] = {derive_key(42, {hash_string("a"), 0}),
                           derive_key(42, {hash_string("a"), 1}),
                           derive_key(42, {hash_string("b"), 0})};
  for (int p = 0; p < 3; ++p)
    for (int q = p + 1; q < 3; ++q) {
      Rng a(keys[p]), b(keys[q]);
      double s = 0;
      for (int i = 0; i < n; ++i) s += (a.uniform() - 0.5) * (b.uniform() - 0.5);
      CHECK(std::abs(s) < 4.0 * sd);
    }
}

TEST_CASE("hash_string distinguishes role names") {
  CHECK(hash_string("walk") != hash_string("urn"));
  CHECK(hash_string("") == 1469598103934665603ULL);
}
