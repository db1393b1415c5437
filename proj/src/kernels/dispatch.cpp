#include "qmeta/kernels/dispatch.hpp"

#include <cstdlib>
#include <string>

namespace qmeta::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

const KernelTable* kernels_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &scalar_kernels();
    case Isa::avx2:
#if defined(QMETA_HAVE_AVX2)
      __builtin_cpu_init();
      if (__builtin_cpu_supports("avx2")) return &avx2_kernels();
#endif
      return nullptr;
    case Isa::neon:
#if defined(QMETA_HAVE_NEON)
      return &neon_kernels();  // mandatory on AArch64
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (kernels_for(isa) != nullptr) out.push_back(isa);
  }
  return out;
}

namespace {

const KernelTable& select() {
  if (const char* env = std::getenv("QMETA_ISA")) {
    const std::string want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == to_string(isa)) {
        const KernelTable* t = kernels_for(isa);
        return t != nullptr ? *t : scalar_kernels();
      }
    }
  }
  const std::vector<Isa> isas = available_isas();
  return *kernels_for(isas.back());
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace qmeta::kernels
