#include <cstdlib>
#include <string_view>

#include "ptqm/kernels.hpp"

namespace ptqm::kernels {

#if !defined(PTQM_HAVE_AVX2_TU)
const Backend* avx2_backend() { return nullptr; }
#endif

const Backend& active() {
  static const Backend* chosen = [] {
    if (const char* env = std::getenv("PTQM_KERNEL")) {
      std::string_view want(env);
      if (want == "scalar") return &scalar_backend();
      if (want == "avx2" && avx2_backend()) return avx2_backend();
    }
    if (const Backend* simd = avx2_backend()) return simd;
    return &scalar_backend();
  }();
  return *chosen;
}

}  // namespace ptqm::kernels
