#pragma once

#include <string_view>
#include <vector>

#include "qmeta/kernels/abi.hpp"

namespace qmeta::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);

// Variants compiled into this binary that the running CPU can execute.
std::vector<Isa> available_isas();

// nullptr when the variant is not compiled in or not supported by the CPU.
const KernelTable* kernels_for(Isa isa);

// Best available variant. The environment variable QMETA_ISA=scalar|avx2|neon
// forces a specific one (falls back to scalar when it is unavailable).
const KernelTable& active_kernels();

}  // namespace qmeta::kernels
