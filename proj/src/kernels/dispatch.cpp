#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "lagns/kernels.hpp"

namespace lagns::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  const char* env = std::getenv("LAGNS_ISA");
  if (env != nullptr) {
    const std::string want(env);
    if (want == "scalar") return &detail::scalar_table();
    if (want == "avx2" && isa_available(Isa::Avx2)) return detail::avx2_table();
  }
  if (isa_available(Isa::Avx2)) return detail::avx2_table();
  return &detail::scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
      return detail::avx2_table() != nullptr && cpu_has_avx2();
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("kernel ISA '" + std::string(to_string(isa)) +
                                "' is not available on this machine");
  }
  return isa == Isa::Avx2 ? *detail::avx2_table() : detail::scalar_table();
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void force_isa(Isa isa) { current().store(&table(isa), std::memory_order_release); }

}  // namespace lagns::kernels
