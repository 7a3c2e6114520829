#include "qapeda/qap_kernels.hpp"

#include <atomic>

namespace qapeda::kernels {

namespace {

std::atomic<int> g_active{-1};  // -1 = not yet detected

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace

Isa detect() { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

Isa active() {
  int cur = g_active.load(std::memory_order_relaxed);
  if (cur < 0) {
    cur = static_cast<int>(detect());
    g_active.store(cur, std::memory_order_relaxed);
  }
  return static_cast<Isa>(cur);
}

void set_active(Isa isa) { g_active.store(static_cast<int>(isa), std::memory_order_relaxed); }

std::string isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

std::int64_t evaluate_scalar(const QapInstance& inst, const std::int32_t* sigma) {
  const std::size_t n = inst.n();
  const std::int64_t* dist = inst.distance_data().data();
  const std::int64_t* flow = inst.flow_data().data();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t* drow = dist + i * n;
    const std::int64_t* frow = flow + static_cast<std::size_t>(sigma[i]) * n;
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < n; ++j)
      acc += drow[j] * frow[static_cast<std::size_t>(sigma[j])];
    total += acc;
  }
  return total;
}

std::int64_t swap_delta_scalar(const QapInstance& inst, const std::int32_t* sigma,
                               std::size_t i1, std::size_t i2) {
  const std::size_t n = inst.n();
  const std::int64_t* dist = inst.distance_data().data();
  const std::int64_t* flow = inst.flow_data().data();
  const auto u1 = static_cast<std::size_t>(sigma[i1]);  // facility leaving i1
  const auto u2 = static_cast<std::size_t>(sigma[i2]);

  // Row and column sweeps: add the cross terms the swapped assignment
  // contributes, subtract the ones the current assignment contributes.
  std::int64_t delta = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto si = static_cast<std::size_t>(sigma[i]);
    delta += dist[i * n + i1] * (flow[si * n + u2] - flow[si * n + u1]);
    delta += dist[i * n + i2] * (flow[si * n + u1] - flow[si * n + u2]);
    delta += dist[i1 * n + i] * (flow[u2 * n + si] - flow[u1 * n + si]);
    delta += dist[i2 * n + i] * (flow[u1 * n + si] - flow[u2 * n + si]);
  }

  // The sweeps above counted every term with both indices in {i1, i2} twice
  // (once via its row, once via its column), and also used the pre-swap
  // sigma on the inner index there. Replace that 2x2 block wholesale.
  const std::size_t idx[2] = {i1, i2};
  const std::size_t pre[2] = {u1, u2};
  const std::size_t post[2] = {u2, u1};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      std::int64_t d = dist[idx[a] * n + idx[b]];
      // remove both double-counted sweep contributions for this entry
      delta -= d * (flow[post[a] * n + pre[b]] - flow[pre[a] * n + pre[b]]);
      delta -= d * (flow[pre[a] * n + post[b]] - flow[pre[a] * n + pre[b]]);
      // and add the true change
      delta += d * (flow[post[a] * n + post[b]] - flow[pre[a] * n + pre[b]]);
    }
  }
  return delta;
}

std::int64_t evaluate(const QapInstance& inst, const std::int32_t* sigma) {
  if (active() == Isa::avx2 && inst.fits32()) return evaluate_avx2(inst, sigma);
  return evaluate_scalar(inst, sigma);
}

std::int64_t swap_delta(const QapInstance& inst, const std::int32_t* sigma,
                        std::size_t i1, std::size_t i2) {
  if (active() == Isa::avx2 && inst.fits32()) return swap_delta_avx2(inst, sigma, i1, i2);
  return swap_delta_scalar(inst, sigma, i1, i2);
}

}  // namespace qapeda::kernels
