#include "qclus/kernels.hpp"

#include <atomic>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qclus::kernels {

namespace {
std::atomic<bool> g_parallel{true};
}

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }

void set_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

int max_threads() {
#ifdef _OPENMP
    return parallel_enabled() ? omp_get_max_threads() : 1;
#else
    return 1;
#endif
}

namespace serial {

void kron(const cplx* a, i64 na, const cplx* b, i64 nb, cplx* out) {
    for (i64 i = 0; i < na; ++i)
        for (i64 j = 0; j < nb; ++j) out[i * nb + j] = a[i] * b[j];
}

void apply_diag_phase(const double* diag, double t, cplx* amps, i64 n) {
    for (i64 i = 0; i < n; ++i) {
        const double phase = -diag[i] * t;
        amps[i] *= cplx(std::cos(phase), std::sin(phase));
    }
}

void matvec(const cplx* a, i64 n, const cplx* x, cplx* y) {
    for (i64 i = 0; i < n; ++i) {
        cplx acc{0.0, 0.0};
        const cplx* row = a + i * n;
        for (i64 j = 0; j < n; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void adjoint_apply(const cplx* v, i64 n, const cplx* x, cplx* out) {
    for (i64 k = 0; k < n; ++k) {
        cplx acc{0.0, 0.0};
        const cplx* col = v + k * n;
        for (i64 i = 0; i < n; ++i) acc += std::conj(col[i]) * x[i];
        out[k] = acc;
    }
}

void column_apply(const cplx* v, i64 n, const cplx* c, cplx* out) {
    for (i64 i = 0; i < n; ++i) out[i] = cplx{0.0, 0.0};
    for (i64 k = 0; k < n; ++k) {
        const cplx ck = c[k];
        const cplx* col = v + k * n;
        for (i64 i = 0; i < n; ++i) out[i] += ck * col[i];
    }
}

cplx cdot(const cplx* a, const cplx* b, i64 n) {
    cplx acc{0.0, 0.0};
    for (i64 i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double sum_sq(const cplx* a, i64 n) {
    double acc = 0.0;
    for (i64 i = 0; i < n; ++i) acc += std::norm(a[i]);
    return acc;
}

}  // namespace serial

void kron(const cplx* a, i64 na, const cplx* b, i64 nb, cplx* out) {
#pragma omp parallel for schedule(static) if (parallel_enabled())
    for (i64 i = 0; i < na; ++i)
        for (i64 j = 0; j < nb; ++j) out[i * nb + j] = a[i] * b[j];
}

void apply_diag_phase(const double* diag, double t, cplx* amps, i64 n) {
#pragma omp parallel for schedule(static) if (parallel_enabled())
    for (i64 i = 0; i < n; ++i) {
        const double phase = -diag[i] * t;
        amps[i] *= cplx(std::cos(phase), std::sin(phase));
    }
}

void matvec(const cplx* a, i64 n, const cplx* x, cplx* y) {
#pragma omp parallel for schedule(static) if (parallel_enabled())
    for (i64 i = 0; i < n; ++i) {
        cplx acc{0.0, 0.0};
        const cplx* row = a + i * n;
        for (i64 j = 0; j < n; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void adjoint_apply(const cplx* v, i64 n, const cplx* x, cplx* out) {
#pragma omp parallel for schedule(static) if (parallel_enabled())
    for (i64 k = 0; k < n; ++k) {
        cplx acc{0.0, 0.0};
        const cplx* col = v + k * n;
        for (i64 i = 0; i < n; ++i) acc += std::conj(col[i]) * x[i];
        out[k] = acc;
    }
}

void column_apply(const cplx* v, i64 n, const cplx* c, cplx* out) {
#pragma omp parallel for schedule(static) if (parallel_enabled())
    for (i64 i = 0; i < n; ++i) {
        cplx acc{0.0, 0.0};
        for (i64 k = 0; k < n; ++k) acc += c[k] * v[k * n + i];
        out[i] = acc;
    }
}

cplx cdot(const cplx* a, const cplx* b, i64 n) {
    cplx partial[kReductionBlocks];
#pragma omp parallel for schedule(static) if (parallel_enabled())
    for (int blk = 0; blk < kReductionBlocks; ++blk) {
        auto [begin, end] = detail::block_range(n, blk);
        cplx acc{0.0, 0.0};
        for (i64 i = begin; i < end; ++i) acc += std::conj(a[i]) * b[i];
        partial[blk] = acc;
    }
    cplx total{0.0, 0.0};
    for (int blk = 0; blk < kReductionBlocks; ++blk) total += partial[blk];
    return total;
}

double sum_sq(const cplx* a, i64 n) {
    double partial[kReductionBlocks];
#pragma omp parallel for schedule(static) if (parallel_enabled())
    for (int blk = 0; blk < kReductionBlocks; ++blk) {
        auto [begin, end] = detail::block_range(n, blk);
        double acc = 0.0;
        for (i64 i = begin; i < end; ++i) acc += std::norm(a[i]);
        partial[blk] = acc;
    }
    double total = 0.0;
    for (int blk = 0; blk < kReductionBlocks; ++blk) total += partial[blk];
    return total;
}

}  // namespace qclus::kernels
