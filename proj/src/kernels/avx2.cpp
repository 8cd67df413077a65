// AVX2 variants. This translation unit is compiled with -mavx2; it is only
// ever entered after the dispatcher has confirmed AVX2 support at runtime.

#include "lagns/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace lagns::kernels {
namespace {

inline double hsum(__m256d x) {
  const __m128d lo = _mm256_castpd256_pd128(x);
  const __m128d hi = _mm256_extractf128_pd(x, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d x) {
  const __m128d lo = _mm256_castpd256_pd128(x);
  const __m128d hi = _mm256_extractf128_pd(x, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

void mass_update(const double* v_in, const double* u, double r, double* v_out, std::size_t n) {
  const __m256d vr = _mm256_set1_pd(r);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d du = _mm256_sub_pd(_mm256_loadu_pd(u + i + 1), _mm256_loadu_pd(u + i));
    _mm256_storeu_pd(v_out + i, _mm256_add_pd(_mm256_loadu_pd(v_in + i), _mm256_mul_pd(vr, du)));
  }
  for (; i < n; ++i) v_out[i] = v_in[i] + r * (u[i + 1] - u[i]);
}

double max_wave_speed(const double* v, const double* theta, double c, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_sqrt_pd(_mm256_mul_pd(vc, _mm256_loadu_pd(theta + i)));
    acc = _mm256_max_pd(acc, _mm256_div_pd(s, _mm256_loadu_pd(v + i)));
  }
  double m = hmax(acc);
  for (; i < n; ++i) m = std::max(m, std::sqrt(c * theta[i]) / v[i]);
  return m;
}

void momentum_rows(const double* v, const double* theta, const double* u, double r, double s,
                   double R, double* lower, double* diag, double* upper, double* rhs,
                   std::size_t n_cells) {
  const __m256d neg_r = _mm256_set1_pd(-r);
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d vR = _mm256_set1_pd(R);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t j = 1;
  for (; j + 4 <= n_cells; j += 4) {
    const __m256d v_l = _mm256_loadu_pd(v + j - 1);
    const __m256d v_r = _mm256_loadu_pd(v + j);
    const __m256d lo = _mm256_div_pd(neg_r, v_l);
    const __m256d up = _mm256_div_pd(neg_r, v_r);
    const __m256d p_r = _mm256_div_pd(_mm256_mul_pd(vR, _mm256_loadu_pd(theta + j)), v_r);
    const __m256d p_l = _mm256_div_pd(_mm256_mul_pd(vR, _mm256_loadu_pd(theta + j - 1)), v_l);
    _mm256_storeu_pd(lower + j - 1, lo);
    _mm256_storeu_pd(upper + j - 1, up);
    _mm256_storeu_pd(diag + j - 1, _mm256_sub_pd(_mm256_sub_pd(one, lo), up));
    _mm256_storeu_pd(rhs + j - 1, _mm256_sub_pd(_mm256_loadu_pd(u + j),
                                                _mm256_mul_pd(vs, _mm256_sub_pd(p_r, p_l))));
  }
  for (; j < n_cells; ++j) {
    const double lo = -r / v[j - 1];
    const double up = -r / v[j];
    const double p_right = R * theta[j] / v[j];
    const double p_left = R * theta[j - 1] / v[j - 1];
    lower[j - 1] = lo;
    upper[j - 1] = up;
    diag[j - 1] = 1.0 - lo - up;
    rhs[j - 1] = u[j] - s * (p_right - p_left);
  }
}

void edge_means(const double* theta, const double* v, double* theta_mean, double* inv_v_mean,
                std::size_t n_cells) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t j = 1;
  for (; j + 4 <= n_cells; j += 4) {
    const __m256d t = _mm256_add_pd(_mm256_loadu_pd(theta + j - 1), _mm256_loadu_pd(theta + j));
    _mm256_storeu_pd(theta_mean + j, _mm256_mul_pd(half, t));
    const __m256d w = _mm256_add_pd(_mm256_div_pd(one, _mm256_loadu_pd(v + j - 1)),
                                    _mm256_div_pd(one, _mm256_loadu_pd(v + j)));
    _mm256_storeu_pd(inv_v_mean + j, _mm256_mul_pd(half, w));
  }
  for (; j < n_cells; ++j) {
    theta_mean[j] = 0.5 * (theta[j - 1] + theta[j]);
    inv_v_mean[j] = 0.5 * (1.0 / v[j - 1] + 1.0 / v[j]);
  }
}

void heat_rows(const double* K, const double* v, const double* u, const double* phi_old,
               double s, double a, double b, double c_v, double* lower, double* diag,
               double* upper, double* rhs, std::size_t n_cells) {
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d neg_s = _mm256_set1_pd(-s);
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d vcv = _mm256_set1_pd(c_v);
  std::size_t i = 0;
  for (; i + 4 <= n_cells; i += 4) {
    const __m256d k_l = _mm256_loadu_pd(K + i);
    const __m256d k_r = _mm256_loadu_pd(K + i + 1);
    const __m256d vi = _mm256_loadu_pd(v + i);
    const __m256d g = _mm256_sub_pd(_mm256_loadu_pd(u + i + 1), _mm256_loadu_pd(u + i));
    _mm256_storeu_pd(lower + i, _mm256_mul_pd(neg_s, k_l));
    _mm256_storeu_pd(upper + i, _mm256_mul_pd(neg_s, k_r));
    const __m256d d = _mm256_add_pd(_mm256_add_pd(vcv, _mm256_div_pd(_mm256_mul_pd(va, g), vi)),
                                    _mm256_mul_pd(vs, _mm256_add_pd(k_l, k_r)));
    _mm256_storeu_pd(diag + i, d);
    const __m256d src = _mm256_div_pd(_mm256_mul_pd(_mm256_sub_pd(_mm256_mul_pd(vb, g), va), g), vi);
    _mm256_storeu_pd(rhs + i, _mm256_add_pd(_mm256_mul_pd(vcv, _mm256_loadu_pd(phi_old + i)), src));
  }
  for (; i < n_cells; ++i) {
    const double g = u[i + 1] - u[i];
    lower[i] = -s * K[i];
    upper[i] = -s * K[i + 1];
    diag[i] = c_v + a * g / v[i] + s * (K[i] + K[i + 1]);
    rhs[i] = c_v * phi_old[i] + (b * g - a) * g / v[i];
  }
}

double viscous_dissipation_sum(const double* v, const double* theta, const double* u,
                               std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d g = _mm256_sub_pd(_mm256_loadu_pd(u + i + 1), _mm256_loadu_pd(u + i));
    const __m256d w = _mm256_mul_pd(_mm256_loadu_pd(v + i), _mm256_loadu_pd(theta + i));
    acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_mul_pd(g, g), w));
  }
  double sum = hsum(acc);
  for (; i < n; ++i) {
    const double g = u[i + 1] - u[i];
    sum += g * g / (v[i] * theta[i]);
  }
  return sum;
}

double sum_sq_dev(const double* x, double target, std::size_t n) {
  const __m256d t = _mm256_set1_pd(target);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), t);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double sum = hsum(acc);
  for (; i < n; ++i) {
    const double d = x[i] - target;
    sum += d * d;
  }
  return sum;
}

double max_abs_dev(const double* x, double target, std::size_t n) {
  const __m256d t = _mm256_set1_pd(target);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_max_pd(acc, vabs(_mm256_sub_pd(_mm256_loadu_pd(x + i), t)));
  }
  double m = hmax(acc);
  for (; i < n; ++i) m = std::max(m, std::fabs(x[i] - target));
  return m;
}

double sum_sq_diff(const double* x, std::size_t n) {
  if (n < 2) return 0.0;
  const std::size_t m = n - 1;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i + 1), _mm256_loadu_pd(x + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double sum = hsum(acc);
  for (; i < m; ++i) {
    const double d = x[i + 1] - x[i];
    sum += d * d;
  }
  return sum;
}

constexpr KernelTable kAvx2{
    Isa::Avx2,   mass_update,         max_wave_speed,          momentum_rows,
    edge_means,  heat_rows,           viscous_dissipation_sum, sum_sq_dev,
    max_abs_dev, sum_sq_diff,
};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kAvx2; }
}  // namespace detail

}  // namespace lagns::kernels

#else

namespace lagns::kernels::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace lagns::kernels::detail

#endif
