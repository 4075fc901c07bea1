#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "fqst/errors.hpp"
#include "fqst/kernels.hpp"

namespace fqst::kernels {

namespace {

struct Table {
  Isa isa;
  double (*weighted_sq_dist_sum)(const double*, const double*, const double*, const double*,
                                 const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
};

constexpr Table kScalarTable{Isa::scalar, &scalar::weighted_sq_dist_sum, &scalar::axpy,
                             &scalar::dot};
#ifdef FQST_HAVE_AVX2_KERNELS
constexpr Table kAvx2Table{Isa::avx2, &avx2::weighted_sq_dist_sum, &avx2::axpy, &avx2::dot};
#endif

bool cpu_has_avx2() {
#if defined(FQST_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table* detect() {
  const char* forced = std::getenv("FQST_ISA");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    return &kScalarTable;
  }
#ifdef FQST_HAVE_AVX2_KERNELS
  if (cpu_has_avx2()) {
    return &kAvx2Table;
  }
#endif
  return &kScalarTable;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{detect()};
  return table;
}

const Table& table() { return *current().load(std::memory_order_relaxed); }

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
  }
  return false;
}

Isa active_isa() { return table().isa; }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw DomainError(std::string("kernel ISA not supported here: ") + isa_name(isa));
  }
#ifdef FQST_HAVE_AVX2_KERNELS
  if (isa == Isa::avx2) {
    current().store(&kAvx2Table);
    return;
  }
#endif
  current().store(&kScalarTable);
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

double weighted_sq_dist_sum(std::span<const double> ax, std::span<const double> ay,
                            std::span<const double> bx, std::span<const double> by,
                            std::span<const double> w) {
  return table().weighted_sq_dist_sum(ax.data(), ay.data(), bx.data(), by.data(), w.data(),
                                      w.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  table().axpy(alpha, x.data(), y.data(), y.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
  return table().dot(a.data(), b.data(), a.size());
}

}  // namespace fqst::kernels
