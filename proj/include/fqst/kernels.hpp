#pragma once

// Data-parallel inner loops used by the solvers. Each kernel has a scalar
// reference implementation and, on x86-64, an AVX2+FMA variant. The variant
// is chosen once at runtime from the CPU features; set_isa() overrides the
// choice (tests use it to compare variants). The environment variable
// FQST_ISA=scalar forces the reference path.

#include <span>

namespace fqst::kernels {

enum class Isa { scalar, avx2 };

bool isa_supported(Isa isa);
Isa active_isa();
// Throws DomainError if the requested ISA is not available on this CPU/build.
void set_isa(Isa isa);
const char* isa_name(Isa isa);

// sum_i w[i] * ((ax[i]-bx[i])^2 + (ay[i]-by[i])^2); all spans have equal length.
double weighted_sq_dist_sum(std::span<const double> ax, std::span<const double> ay,
                            std::span<const double> bx, std::span<const double> by,
                            std::span<const double> w);

// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

double dot(std::span<const double> a, std::span<const double> b);

namespace scalar {
double weighted_sq_dist_sum(const double* ax, const double* ay, const double* bx,
                            const double* by, const double* w, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define FQST_HAVE_AVX2_KERNELS 1
namespace avx2 {
double weighted_sq_dist_sum(const double* ax, const double* ay, const double* bx,
                            const double* by, const double* w, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
}  // namespace avx2
#endif

}  // namespace fqst::kernels
