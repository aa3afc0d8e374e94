#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ets::bench {

struct BenchConfig {
    std::vector<std::int64_t> sizes;            // plant counts
    std::vector<std::int64_t> violation_counts{0};
    int reps = 10;
    std::vector<std::string> rule_ids; // empty: the four conformance rules
    std::uint64_t seed_base = 1;

    /// The size sweep of the empirical design.
    static std::vector<std::int64_t> paper_sizes();
    /// The violation sweep at the fixed 3000-plant size.
    static std::vector<std::int64_t> paper_violation_counts();
    static std::int64_t paper_fixed_size() { return 3000; }

    static const std::vector<std::string>& default_rules();
};

struct BenchCell {
    std::string rule;
    std::int64_t size = 0;
    std::int64_t violations = 0;
    std::vector<double> millis; // one per rep, per-execution wall-clock time
    std::string note;           // set when the grid point was skipped

    double mean() const;
    double stddev() const;
    double min() const;
    double max() const;
};

struct BenchReport {
    std::vector<BenchCell> cells;
    std::string environment;

    void merge(const BenchReport& other);
    const BenchCell* find(const std::string& rule, std::int64_t size,
                          std::int64_t violations) const;
};

/// Runs the sizes x violation-counts grid. Per grid point and rep a fresh
/// seeded dataset is generated; timing covers rule execution only.
/// Infeasible injection counts are skipped with a note.
BenchReport run_bench(const BenchConfig& config);

struct PropertyVerdict {
    std::string name; // "P1:<rule>", "P2:<rule>", "P3:<rule>"
    bool applicable = false;
    bool pass = false;
    std::string detail;
};

/// P1: plant-bound rules' mean time grows with size (Spearman > 0.9).
/// P2: size-independent rules stay flat (max/min mean ratio <= 2).
/// P3: at a fixed size, mean-time spread across violation counts stays
/// within 20% of the grand mean.
std::vector<PropertyVerdict> check_scaling_properties(const BenchReport& report);

/// Long-format CSV: rule,size,violations,rep,millis.
std::string to_long_csv(const BenchReport& report);
BenchReport from_long_csv(const std::string& text);

/// Spearman rank correlation with average ranks on ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

inline constexpr double kSpearmanThreshold = 0.9;
inline constexpr double kFlatRatioLimit = 2.0;
inline constexpr double kSpreadLimit = 0.20;

} // namespace ets::bench
