#include "rydcat/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace rydcat::kernels {

#if !defined(RYDCAT_HAVE_AVX2)
const KernelTable* avx2_table() { return nullptr; }
#endif

bool cpu_has_avx2() {
#if defined(RYDCAT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const KernelTable* pick_default() {
  if (const char* env = std::getenv("RYDCAT_ISA"); env && std::string(env) == "scalar") {
    return &scalar_table();
  }
  if (cpu_has_avx2() && avx2_table()) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> table{pick_default()};
  return table;
}

} // namespace

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

bool select(Isa isa) {
  if (isa == Isa::scalar) {
    slot().store(&scalar_table(), std::memory_order_release);
    return true;
  }
  if (!cpu_has_avx2() || !avx2_table()) return false;
  slot().store(avx2_table(), std::memory_order_release);
  return true;
}

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

} // namespace rydcat::kernels
