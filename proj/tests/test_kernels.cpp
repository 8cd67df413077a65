#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "lagns/kernels.hpp"

using namespace lagns::kernels;

namespace {

// Deterministic, irregular positive data.
std::vector<double> wave(std::size_t n, double base, double amp, double freq) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = base + amp * std::sin(freq * i + 0.3 * std::cos(2.1 * i));
  return x;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar table is always available") {
    CHECK(isa_available(Isa::Scalar));
    CHECK(table(Isa::Scalar).isa == Isa::Scalar);
    CHECK(to_string(Isa::Scalar) == "scalar");
  }

  TEST_CASE("avx2 kernels match the scalar reference") {
    if (!isa_available(Isa::Avx2)) {
      MESSAGE("AVX2 not available on this machine; equivalence not exercised");
      return;
    }
    const KernelTable& s = table(Isa::Scalar);
    const KernelTable& a = table(Isa::Avx2);

    // sizes around the vector width to hit every tail length
    for (std::size_t n : {4u, 5u, 6u, 7u, 8u, 13u, 64u, 1001u}) {
      CAPTURE(n);
      const auto v = wave(n, 1.3, 0.5, 0.71);
      const auto theta = wave(n, 1.0, 0.6, 1.37);
      const auto u = wave(n + 1, 0.0, 0.4, 0.53);
      const auto K = wave(n + 1, 2.0, 1.0, 0.29);

      std::vector<double> o1(n), o2(n);
      s.mass_update(v.data(), u.data(), 0.37, o1.data(), n);
      a.mass_update(v.data(), u.data(), 0.37, o2.data(), n);
      CHECK(same_bits(o1, o2));

      CHECK(s.max_wave_speed(v.data(), theta.data(), 2.0, n) ==
            a.max_wave_speed(v.data(), theta.data(), 2.0, n));

      std::vector<double> l1(n, 0), d1(n, 0), u1(n, 0), r1(n, 0);
      std::vector<double> l2(n, 0), d2(n, 0), u2(n, 0), r2(n, 0);
      s.momentum_rows(v.data(), theta.data(), u.data(), 0.8, 0.05, 1.4, l1.data(), d1.data(), u1.data(),
                      r1.data(), n);
      a.momentum_rows(v.data(), theta.data(), u.data(), 0.8, 0.05, 1.4, l2.data(), d2.data(), u2.data(),
                      r2.data(), n);
      CHECK(same_bits(l1, l2));
      CHECK(same_bits(d1, d2));
      CHECK(same_bits(u1, u2));
      CHECK(same_bits(r1, r2));

      std::vector<double> tm1(n + 1, 0), iv1(n + 1, 0), tm2(n + 1, 0), iv2(n + 1, 0);
      s.edge_means(theta.data(), v.data(), tm1.data(), iv1.data(), n);
      a.edge_means(theta.data(), v.data(), tm2.data(), iv2.data(), n);
      CHECK(same_bits(tm1, tm2));
      CHECK(same_bits(iv1, iv2));

      s.heat_rows(K.data(), v.data(), u.data(), theta.data(), 0.9, 0.02, 0.03, 1.5, l1.data(), d1.data(),
                  u1.data(), r1.data(), n);
      a.heat_rows(K.data(), v.data(), u.data(), theta.data(), 0.9, 0.02, 0.03, 1.5, l2.data(), d2.data(),
                  u2.data(), r2.data(), n);
      CHECK(same_bits(l1, l2));
      CHECK(same_bits(d1, d2));
      CHECK(same_bits(u1, u2));
      CHECK(same_bits(r1, r2));

      // reductions are reassociated; agree to rounding
      CHECK(a.viscous_dissipation_sum(v.data(), theta.data(), u.data(), n) ==
            doctest::Approx(s.viscous_dissipation_sum(v.data(), theta.data(), u.data(), n)).epsilon(1e-13));
      CHECK(a.sum_sq_dev(v.data(), 1.0, n) == doctest::Approx(s.sum_sq_dev(v.data(), 1.0, n)).epsilon(1e-13));
      CHECK(a.max_abs_dev(theta.data(), 1.0, n) == s.max_abs_dev(theta.data(), 1.0, n));
      CHECK(a.sum_sq_diff(u.data(), n + 1) == doctest::Approx(s.sum_sq_diff(u.data(), n + 1)).epsilon(1e-13));
    }
  }

  TEST_CASE("scalar kernels against direct formulas") {
    const KernelTable& s = table(Isa::Scalar);
    const std::vector<double> v{1.0, 2.0, 4.0};
    const std::vector<double> th{1.0, 0.5, 2.0};
    const std::vector<double> u{0.0, 1.0, -1.0, 0.5};
    std::vector<double> out(3);
    s.mass_update(v.data(), u.data(), 0.5, out.data(), 3);
    CHECK(out == std::vector<double>{1.5, 1.0, 4.75});
    CHECK(s.max_wave_speed(v.data(), th.data(), 2.0, 3) == doctest::Approx(1.0 * std::sqrt(2.0)));
    CHECK(s.viscous_dissipation_sum(v.data(), th.data(), u.data(), 3) ==
          doctest::Approx(1.0 + 4.0 / 1.0 + 2.25 / 8.0));
    CHECK(s.sum_sq_dev(th.data(), 1.0, 3) == doctest::Approx(1.25));
    CHECK(s.max_abs_dev(v.data(), 1.0, 3) == 3.0);
    CHECK(s.sum_sq_diff(u.data(), 4) == doctest::Approx(1.0 + 4.0 + 2.25));
  }

  TEST_CASE("forcing an ISA switches the active table") {
    const Isa before = active().isa;
    force_isa(Isa::Scalar);
    CHECK(active().isa == Isa::Scalar);
    if (isa_available(before)) force_isa(before);
    CHECK(active().isa == before);
  }
}
