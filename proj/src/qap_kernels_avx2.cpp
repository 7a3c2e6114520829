#include "qapeda/qap_kernels.hpp"

#include <stdexcept>

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace qapeda::kernels {

namespace {

// 32x32 -> 64 bit multiply-accumulate of all 8 int32 lanes, split into the
// even and odd 64-bit accumulators.
__attribute__((target("avx2"))) inline void mul_accum(__m256i a, __m256i b,
                                                      __m256i& acc_even, __m256i& acc_odd) {
  acc_even = _mm256_add_epi64(acc_even, _mm256_mul_epi32(a, b));
  acc_odd = _mm256_add_epi64(acc_odd,
                             _mm256_mul_epi32(_mm256_srli_epi64(a, 32), _mm256_srli_epi64(b, 32)));
}

__attribute__((target("avx2"))) inline std::int64_t reduce(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

}  // namespace

__attribute__((target("avx2")))
std::int64_t evaluate_avx2(const QapInstance& inst, const std::int32_t* sigma) {
  const std::size_t n = inst.n();
  const std::int32_t* dist = inst.distance32();
  const std::int32_t* flow = inst.flow32();

  __m256i acc_even = _mm256_setzero_si256();
  __m256i acc_odd = _mm256_setzero_si256();
  std::int64_t tail = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t* drow = dist + i * n;
    const std::int32_t* frow = flow + static_cast<std::size_t>(sigma[i]) * n;
    std::size_t j = 0;
    for (; j + 8 <= n; j += 8) {
      __m256i sj = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sigma + j));
      __m256i h = _mm256_i32gather_epi32(frow, sj, 4);
      __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(drow + j));
      mul_accum(d, h, acc_even, acc_odd);
    }
    for (; j < n; ++j)
      tail += static_cast<std::int64_t>(drow[j]) *
              frow[static_cast<std::size_t>(sigma[j])];
  }
  return reduce(_mm256_add_epi64(acc_even, acc_odd)) + tail;
}

__attribute__((target("avx2")))
std::int64_t swap_delta_avx2(const QapInstance& inst, const std::int32_t* sigma,
                             std::size_t i1, std::size_t i2) {
  const std::size_t n = inst.n();
  const std::int32_t* dist = inst.distance32();
  const std::int32_t* dist_t = inst.distance32_t();
  const std::int32_t* flow = inst.flow32();
  const std::int32_t* flow_t = inst.flow32_t();
  const auto u1 = static_cast<std::size_t>(sigma[i1]);
  const auto u2 = static_cast<std::size_t>(sigma[i2]);

  // Same sweep as the scalar kernel. Column entries D[i][i1], D[i][i2] are
  // rows of the transposed mirror; flow lookups by sigma(i) are gathers, two
  // against flow rows u1/u2 and two against transposed-flow rows u1/u2.
  const std::int32_t* dt1 = dist_t + i1 * n;
  const std::int32_t* dt2 = dist_t + i2 * n;
  const std::int32_t* d1 = dist + i1 * n;
  const std::int32_t* d2 = dist + i2 * n;
  const std::int32_t* ft1 = flow_t + u1 * n;
  const std::int32_t* ft2 = flow_t + u2 * n;
  const std::int32_t* f1 = flow + u1 * n;
  const std::int32_t* f2 = flow + u2 * n;

  __m256i pos_even = _mm256_setzero_si256(), pos_odd = _mm256_setzero_si256();
  __m256i neg_even = _mm256_setzero_si256(), neg_odd = _mm256_setzero_si256();
  std::int64_t tail = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i si = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sigma + i));
    __m256i ht_u1 = _mm256_i32gather_epi32(ft1, si, 4);  // flow[sigma(i)][u1]
    __m256i ht_u2 = _mm256_i32gather_epi32(ft2, si, 4);  // flow[sigma(i)][u2]
    __m256i h_u1 = _mm256_i32gather_epi32(f1, si, 4);    // flow[u1][sigma(i)]
    __m256i h_u2 = _mm256_i32gather_epi32(f2, si, 4);    // flow[u2][sigma(i)]
    __m256i vdt1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dt1 + i));
    __m256i vdt2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dt2 + i));
    __m256i vd1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(d1 + i));
    __m256i vd2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(d2 + i));

    mul_accum(vdt1, ht_u2, pos_even, pos_odd);
    mul_accum(vdt2, ht_u1, pos_even, pos_odd);
    mul_accum(vd1, h_u2, pos_even, pos_odd);
    mul_accum(vd2, h_u1, pos_even, pos_odd);
    mul_accum(vdt1, ht_u1, neg_even, neg_odd);
    mul_accum(vdt2, ht_u2, neg_even, neg_odd);
    mul_accum(vd1, h_u1, neg_even, neg_odd);
    mul_accum(vd2, h_u2, neg_even, neg_odd);
  }
  for (; i < n; ++i) {
    const auto si = static_cast<std::size_t>(sigma[i]);
    tail += static_cast<std::int64_t>(dt1[i]) * (flow_t[u2 * n + si] - flow_t[u1 * n + si]);
    tail += static_cast<std::int64_t>(dt2[i]) * (flow_t[u1 * n + si] - flow_t[u2 * n + si]);
    tail += static_cast<std::int64_t>(d1[i]) * (flow[u2 * n + si] - flow[u1 * n + si]);
    tail += static_cast<std::int64_t>(d2[i]) * (flow[u1 * n + si] - flow[u2 * n + si]);
  }

  std::int64_t delta = reduce(_mm256_add_epi64(pos_even, pos_odd)) -
                       reduce(_mm256_add_epi64(neg_even, neg_odd)) + tail;

  // 2x2 block fix, identical to the scalar kernel.
  const std::int64_t* dist64 = inst.distance_data().data();
  const std::int64_t* flow64 = inst.flow_data().data();
  const std::size_t idx[2] = {i1, i2};
  const std::size_t pre[2] = {u1, u2};
  const std::size_t post[2] = {u2, u1};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      std::int64_t d = dist64[idx[a] * n + idx[b]];
      delta -= d * (flow64[post[a] * n + pre[b]] - flow64[pre[a] * n + pre[b]]);
      delta -= d * (flow64[pre[a] * n + post[b]] - flow64[pre[a] * n + pre[b]]);
      delta += d * (flow64[post[a] * n + post[b]] - flow64[pre[a] * n + pre[b]]);
    }
  }
  return delta;
}

}  // namespace qapeda::kernels

#else  // non-x86: stubs, never selected because detect() reports scalar

namespace qapeda::kernels {

std::int64_t evaluate_avx2(const QapInstance&, const std::int32_t*) {
  throw std::runtime_error("avx2 kernels unavailable on this architecture");
}

std::int64_t swap_delta_avx2(const QapInstance&, const std::int32_t*, std::size_t, std::size_t) {
  throw std::runtime_error("avx2 kernels unavailable on this architecture");
}

}  // namespace qapeda::kernels

#endif
