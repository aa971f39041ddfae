#include <cstdlib>
#include <string_view>

#include "bsv/kernels/kernels.hpp"

namespace bsv::kernels {

#if !defined(BSV_HAVE_AVX2)
const Table* avx2_table() { return nullptr; }
#endif
#if !defined(BSV_HAVE_NEON)
const Table* neon_table() { return nullptr; }
#endif

namespace {

const Table& select() {
  const char* env = std::getenv("BSV_KERNELS");
  const std::string_view request = env ? env : "";
  if (request == "scalar") return scalar_table();
  if (const Table* t = avx2_table()) return *t;
  if (const Table* t = neon_table()) return *t;
  return scalar_table();
}

}  // namespace

const Table& active() {
  static const Table& table = select();
  return table;
}

Backend active_backend() { return active().backend; }

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

}  // namespace bsv::kernels
