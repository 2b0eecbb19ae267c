#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "qclus/statevector.hpp"

namespace qclus {

/// Binary tree of squared-magnitude partial sums over dyadic blocks.
/// levels[0] holds the root (= ||v||^2); each deeper level splits every
/// block in two, down to the per-entry leaves.  Parents equal the sum of
/// their children exactly as computed.
struct SubnormTree {
    std::vector<std::vector<double>> levels;

    static SubnormTree build(const std::vector<double>& squared_magnitudes);
    double root() const { return levels.front().front(); }
    int depth() const { return static_cast<int>(levels.size()); }
};

/// Metered access to the stored data, standing in for qRAM.  Counters are
/// monotone and atomically incremented, safe for concurrent charging.
class QueryLedger {
public:
    void charge_amplitude(i64 n = 1) { amplitude_.fetch_add(n, std::memory_order_relaxed); }
    void charge_norm(i64 n = 1) { norm_.fetch_add(n, std::memory_order_relaxed); }
    void charge_subnorm(i64 n = 1) { subnorm_.fetch_add(n, std::memory_order_relaxed); }

    i64 amplitude_reads() const { return amplitude_.load(std::memory_order_relaxed); }
    i64 norm_reads() const { return norm_.load(std::memory_order_relaxed); }
    i64 subnorm_reads() const { return subnorm_.load(std::memory_order_relaxed); }

private:
    std::atomic<i64> amplitude_{0};
    std::atomic<i64> norm_{0};
    std::atomic<i64> subnorm_{0};
};

struct QueryReport {
    i64 amplitude_reads = 0;
    i64 norm_reads = 0;
    i64 subnorm_reads = 0;
    i64 data_size = 0;

    i64 total_reads() const { return amplitude_reads + norm_reads + subnorm_reads; }
};

/// M stored vectors of common power-of-two dimension N.  Entries are kept as
/// magnitude/phase pairs; real input encodes its sign in the phase (0 or pi).
/// Immutable after construction.
class DataSet {
public:
    /// Builds from complex rows; rows are zero-padded to the next power of
    /// two (the original width is retained in original_dim()).
    static DataSet from_vectors(std::vector<std::vector<cplx>> rows);
    static DataSet from_real(const std::vector<std::vector<double>>& rows);

    i64 size() const { return static_cast<i64>(norms_.size()); }        // M
    i64 dimension() const { return dim_; }                              // N
    i64 original_dim() const { return original_dim_; }

    double norm_of(i64 j) const { return norms_[static_cast<size_t>(j)]; }
    double magnitude(i64 j, i64 i) const { return magnitude_[static_cast<size_t>(j)][static_cast<size_t>(i)]; }
    double phase(i64 j, i64 i) const { return phase_[static_cast<size_t>(j)][static_cast<size_t>(i)]; }
    cplx entry(i64 j, i64 i) const;
    std::vector<cplx> vector_of(i64 j) const;
    const SubnormTree& tree_of(i64 j) const { return trees_[static_cast<size_t>(j)]; }

private:
    DataSet() = default;
    i64 dim_ = 0;
    i64 original_dim_ = 0;
    std::vector<std::vector<double>> magnitude_;
    std::vector<std::vector<double>> phase_;
    std::vector<double> norms_;
    std::vector<SubnormTree> trees_;
};

/// Loads a CSV of one vector per row (comma-separated decimal floats, UTF-8,
/// optional header auto-detected by a non-numeric first row).  Rows are
/// padded with zeros to the next power of two.  Throws on ragged rows,
/// non-numeric fields, empty files and all-zero rows.
DataSet load_csv(const std::string& path);

/// Amplitude-encodes vector j: a state over a single register ("data", dim N)
/// with amplitude v_i / ||v|| at index i.  Charges the ledger the cost of the
/// sub-norm tree walk: 2*log2(N) - 1 subnorm reads and log2(N)
/// amplitude/phase reads.
StateVector encode_vector(const DataSet& data, i64 j, QueryLedger* ledger = nullptr);

/// The labeled superposition over an (M+1)-level ancilla and the data register:
///   (1/sqrt 2) ( |0>|u> + (1/sqrt M) sum_j |j>|v_subset[j-1]> ).
/// The ledger is charged one encode-formula per superposition branch (the |u>
/// branch and the data branch, whose M vectors load in quantum parallel).
StateVector labeled_superposition(const StateVector& u, const DataSet& data,
                                  const std::vector<i64>& subset,
                                  QueryLedger* ledger = nullptr);

/// Query totals plus dataset size M*N for ratio reporting.
QueryReport report_queries(const QueryLedger& ledger, const DataSet& data);

/// Register-name constants shared across modules.
inline constexpr const char* kDataRegister = "data";
inline constexpr const char* kAncillaRegister = "ancilla";

}  // namespace qclus
