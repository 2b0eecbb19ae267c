#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace qclus {

using cplx = std::complex<double>;
using i64 = std::int64_t;

/// Hot loops shared by the simulation and optimization modules.
///
/// Every kernel has two implementations:
///   kernels::serial::*  - plain reference loops, kept for tests and as the
///                         benchmark baseline;
///   kernels::*          - production versions, OpenMP-parallel when enabled.
///
/// Reductions in the production versions accumulate over a fixed block
/// decomposition (kReductionBlocks blocks, combined in block order), so the
/// result is bit-identical for any thread count, including one.  Elementwise
/// kernels are bit-identical to the serial reference by construction.
namespace kernels {

inline constexpr int kReductionBlocks = 256;

bool parallel_enabled();
void set_parallel(bool on);
int max_threads();

namespace serial {

void kron(const cplx* a, i64 na, const cplx* b, i64 nb, cplx* out);
void apply_diag_phase(const double* diag, double t, cplx* amps, i64 n);
// y = A x, A row-major n x n.
void matvec(const cplx* a, i64 n, const cplx* x, cplx* y);
// out[k] = <col_k|x> for V column-major n x n (i.e. out = V^dagger x).
void adjoint_apply(const cplx* v, i64 n, const cplx* x, cplx* out);
// out[i] = sum_k c[k] V[k*n+i] for V column-major (i.e. out = V c).
void column_apply(const cplx* v, i64 n, const cplx* c, cplx* out);
cplx cdot(const cplx* a, const cplx* b, i64 n);
double sum_sq(const cplx* a, i64 n);

}  // namespace serial

void kron(const cplx* a, i64 na, const cplx* b, i64 nb, cplx* out);
void apply_diag_phase(const double* diag, double t, cplx* amps, i64 n);
void matvec(const cplx* a, i64 n, const cplx* x, cplx* y);
void adjoint_apply(const cplx* v, i64 n, const cplx* x, cplx* out);
void column_apply(const cplx* v, i64 n, const cplx* c, cplx* out);
cplx cdot(const cplx* a, const cplx* b, i64 n);
double sum_sq(const cplx* a, i64 n);

namespace detail {
struct Range {
    i64 begin;
    i64 end;
};
inline Range block_range(i64 n, int block) {
    const i64 b = static_cast<i64>(block);
    const i64 nb = static_cast<i64>(kReductionBlocks);
    return Range{n * b / nb, n * (b + 1) / nb};
}
}  // namespace detail

/// out[i] = f(i) for i in [0, n), parallel over i.
template <typename F>
void fill(i64 n, F&& f, double* out) {
#pragma omp parallel for schedule(static) if (parallel_enabled())
    for (i64 i = 0; i < n; ++i) out[i] = f(i);
}

namespace serial_ref {
template <typename F>
void fill(i64 n, F&& f, double* out) {
    for (i64 i = 0; i < n; ++i) out[i] = f(i);
}
}  // namespace serial_ref

struct ScanResult {
    double value;
    i64 index;
};

/// Deterministic blocked argmin of f over [0, n); ties go to the lowest
/// index regardless of thread count.
template <typename F>
ScanResult min_scan(i64 n, F&& f) {
    ScanResult partial[kReductionBlocks];
#pragma omp parallel for schedule(static) if (parallel_enabled())
    for (int b = 0; b < kReductionBlocks; ++b) {
        auto [begin, end] = detail::block_range(n, b);
        ScanResult best{0.0, -1};
        for (i64 i = begin; i < end; ++i) {
            const double v = f(i);
            if (best.index < 0 || v < best.value) best = ScanResult{v, i};
        }
        partial[b] = best;
    }
    ScanResult best{0.0, -1};
    for (int b = 0; b < kReductionBlocks; ++b) {
        if (partial[b].index < 0) continue;
        if (best.index < 0 || partial[b].value < best.value) best = partial[b];
    }
    return best;
}

template <typename F>
ScanResult max_scan(i64 n, F&& f) {
    auto r = min_scan(n, [&](i64 i) { return -f(i); });
    return ScanResult{-r.value, r.index};
}

/// Deterministic blocked sum of f over [0, n).
template <typename F>
double sum_scan(i64 n, F&& f) {
    double partial[kReductionBlocks];
#pragma omp parallel for schedule(static) if (parallel_enabled())
    for (int b = 0; b < kReductionBlocks; ++b) {
        auto [begin, end] = detail::block_range(n, b);
        double s = 0.0;
        for (i64 i = begin; i < end; ++i) s += f(i);
        partial[b] = s;
    }
    double total = 0.0;
    for (int b = 0; b < kReductionBlocks; ++b) total += partial[b];
    return total;
}

}  // namespace kernels
}  // namespace qclus
