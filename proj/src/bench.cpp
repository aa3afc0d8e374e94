#include "ets/bench.hpp"

#include "ets/datagen.hpp"
#include "ets/errors.hpp"
#include "ets/rng.hpp"
#include "ets/rules.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

namespace ets::bench {

std::vector<std::int64_t> BenchConfig::paper_sizes() {
    return {10, 100, 500, 1000, 2000, 3000, 4000, 5000, 20000};
}

std::vector<std::int64_t> BenchConfig::paper_violation_counts() {
    return {0, 10, 100, 1000, 2000, 3000};
}

const std::vector<std::string>& BenchConfig::default_rules() {
    static const std::vector<std::string> rules = {"R-APP-1", "R-VER-2", "R-POL-T1", "R-IMP-2"};
    return rules;
}

double BenchCell::mean() const {
    if (millis.empty()) return 0.0;
    return std::accumulate(millis.begin(), millis.end(), 0.0) / static_cast<double>(millis.size());
}

double BenchCell::stddev() const {
    if (millis.size() < 2) return 0.0;
    double m = mean();
    double acc = 0.0;
    for (double v : millis) acc += (v - m) * (v - m);
    return std::sqrt(acc / static_cast<double>(millis.size() - 1));
}

double BenchCell::min() const {
    return millis.empty() ? 0.0 : *std::min_element(millis.begin(), millis.end());
}

double BenchCell::max() const {
    return millis.empty() ? 0.0 : *std::max_element(millis.begin(), millis.end());
}

void BenchReport::merge(const BenchReport& other) {
    for (const auto& cell : other.cells) cells.push_back(cell);
    if (environment.empty()) environment = other.environment;
}

const BenchCell* BenchReport::find(const std::string& rule, std::int64_t size,
                                   std::int64_t violations) const {
    for (const auto& cell : cells)
        if (cell.rule == rule && cell.size == size && cell.violations == violations) return &cell;
    return nullptr;
}

namespace {

rules::RuleDef concrete_rule(const std::string& id) {
    const rules::RuleDef& rule = rules::find_rule(id);
    if (!rule.is_template()) return rule;
    // Benchmark defaults: the conformance parameters for the policy
    // template, a mid-range threshold for the sector-impact template.
    if (id == "R-POL-T1")
        return rules::instantiate_template(rule, {{"V1", 0.1}, {"V2", 0.001}, {"DY", 1.0}});
    if (id == "R-IMP-1") return rules::instantiate_template(rule, {{"X", 50000.0}});
    throw Error("no benchmark parameters for template " + id);
}

/// Per-execution time in milliseconds. Short runs are repeated until the
/// measured span clears the timer noise floor; the recorded value stays a
/// single-execution duration.
double time_rule_ms(const rules::RuleDef& rule, const store::Dataset& data,
                    const mapping::MappingSpec& spec) {
    using clock = std::chrono::steady_clock;
    int executions = 1;
    for (;;) {
        auto start = clock::now();
        for (int i = 0; i < executions; ++i) {
            auto findings = rules::run_rule(rule, data, spec);
            (void)findings;
        }
        auto elapsed = std::chrono::duration<double, std::milli>(clock::now() - start).count();
        if (elapsed >= 20.0 || executions >= 4096)
            return elapsed / static_cast<double>(executions);
        executions *= 4;
    }
}

std::string environment_descriptor() {
    std::ostringstream out;
    out << "threads=" << std::thread::hardware_concurrency()
        << " timer=steady_clock build=" <<
#ifdef NDEBUG
        "release";
#else
        "debug";
#endif
    return out.str();
}

} // namespace

BenchReport run_bench(const BenchConfig& config) {
    if (config.sizes.empty() || config.violation_counts.empty())
        throw Error("bench grid must name at least one size and one violation count");
    if (config.reps < 1) throw Error("reps must be >= 1");

    std::vector<rules::RuleDef> rule_set;
    const auto& ids = config.rule_ids.empty() ? BenchConfig::default_rules() : config.rule_ids;
    for (const auto& id : ids) rule_set.push_back(concrete_rule(id));

    const auto& spec = mapping::MappingSpec::standard();

    BenchReport report;
    report.environment = environment_descriptor();
    for (std::int64_t size : config.sizes) {
        for (std::int64_t violations : config.violation_counts) {
            std::vector<BenchCell> cells;
            cells.reserve(rule_set.size());
            for (const auto& rule : rule_set) cells.push_back({rule.id, size, violations, {}, ""});

            for (int rep = 0; rep < config.reps; ++rep) {
                datagen::GenConfig gen;
                gen.n_plants = size;
                std::uint64_t mix = config.seed_base;
                mix ^= rng::splitmix64(mix) + static_cast<std::uint64_t>(size);
                mix ^= rng::splitmix64(mix) + static_cast<std::uint64_t>(violations);
                mix ^= rng::splitmix64(mix) + static_cast<std::uint64_t>(rep);
                gen.seed = rng::splitmix64(mix);
                if (violations > 0) {
                    gen.injected["R-APP-1"] = violations;
                    gen.injected["R-VER-2"] = violations;
                }
                store::Dataset data;
                try {
                    data = datagen::generate_dataset(gen).first;
                } catch (const Error& e) {
                    for (auto& cell : cells) cell.note = e.what(); // infeasible grid point
                    break;
                }
                for (std::size_t i = 0; i < rule_set.size(); ++i)
                    cells[i].millis.push_back(time_rule_ms(rule_set[i], data, spec));
            }
            for (auto& cell : cells) report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw Error("spearman needs two equal-length series");
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> order(v.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> rank(v.size());
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
            double average = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) rank[order[k]] = average;
            i = j + 1;
        }
        return rank;
    };
    std::vector<double> rx = ranks(x);
    std::vector<double> ry = ranks(y);
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(rx.size());
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(ry.size());
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        cov += (rx[i] - mx) * (ry[i] - my);
        vx += (rx[i] - mx) * (rx[i] - mx);
        vy += (ry[i] - my) * (ry[i] - my);
    }
    if (vx == 0.0 || vy == 0.0) return 0.0;
    return cov / std::sqrt(vx * vy);
}

std::vector<PropertyVerdict> check_scaling_properties(const BenchReport& report) {
    // Rules whose inputs grow with the plant count vs. rules over
    // fixed-size price/sector/scenario tables.
    static const std::vector<std::string> growing = {"R-APP-1", "R-VER-2"};
    static const std::vector<std::string> flat = {"R-POL-T1", "R-IMP-2"};

    std::vector<PropertyVerdict> verdicts;

    auto size_means = [&](const std::string& rule) {
        // means over sizes at the smallest violation count present per size
        std::map<std::int64_t, std::pair<std::int64_t, double>> by_size; // size -> (violations, mean)
        for (const auto& cell : report.cells) {
            if (cell.rule != rule || cell.millis.empty()) continue;
            auto it = by_size.find(cell.size);
            if (it == by_size.end() || cell.violations < it->second.first)
                by_size[cell.size] = {cell.violations, cell.mean()};
        }
        return by_size;
    };

    for (const auto& rule : growing) {
        PropertyVerdict v;
        v.name = "P1:" + rule;
        auto means = size_means(rule);
        if (means.size() >= 3) {
            std::vector<double> sizes, times;
            for (const auto& [size, vm] : means) {
                sizes.push_back(static_cast<double>(size));
                times.push_back(vm.second);
            }
            double rho = spearman(sizes, times);
            v.applicable = true;
            v.pass = rho > kSpearmanThreshold;
            std::ostringstream detail;
            detail << "spearman=" << rho << " over " << sizes.size() << " sizes";
            v.detail = detail.str();
        } else {
            v.detail = "needs >= 3 sizes";
        }
        verdicts.push_back(std::move(v));
    }

    for (const auto& rule : flat) {
        PropertyVerdict v;
        v.name = "P2:" + rule;
        auto means = size_means(rule);
        if (means.size() >= 3) {
            double lo = 0.0, hi = 0.0;
            bool first = true;
            for (const auto& [size, vm] : means) {
                if (first) {
                    lo = hi = vm.second;
                    first = false;
                } else {
                    lo = std::min(lo, vm.second);
                    hi = std::max(hi, vm.second);
                }
            }
            double ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
            v.applicable = true;
            v.pass = ratio <= kFlatRatioLimit;
            std::ostringstream detail;
            detail << "max/min=" << ratio << " over " << means.size() << " sizes";
            v.detail = detail.str();
        } else {
            v.detail = "needs >= 3 sizes";
        }
        verdicts.push_back(std::move(v));
    }

    for (const auto& rule : growing) {
        PropertyVerdict v;
        v.name = "P3:" + rule;
        // pick the size with the most violation counts
        std::map<std::int64_t, std::vector<double>> counts_by_size;
        for (const auto& cell : report.cells)
            if (cell.rule == rule && !cell.millis.empty())
                counts_by_size[cell.size].push_back(cell.mean());
        std::int64_t best_size = -1;
        std::size_t best = 1;
        for (const auto& [size, means] : counts_by_size) {
            if (means.size() > best) {
                best = means.size();
                best_size = size;
            }
        }
        if (best_size >= 0 && best >= 2) {
            const auto& means = counts_by_size[best_size];
            double lo = *std::min_element(means.begin(), means.end());
            double hi = *std::max_element(means.begin(), means.end());
            double grand = std::accumulate(means.begin(), means.end(), 0.0) /
                           static_cast<double>(means.size());
            double spread = grand > 0.0 ? (hi - lo) / grand : 0.0;
            v.applicable = true;
            v.pass = spread <= kSpreadLimit;
            std::ostringstream detail;
            detail << "spread=" << spread << " at size " << best_size << " over " << best
                   << " violation counts";
            v.detail = detail.str();
        } else {
            v.detail = "needs >= 2 violation counts at one size";
        }
        verdicts.push_back(std::move(v));
    }
    return verdicts;
}

std::string to_long_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "rule,size,violations,rep,millis\n";
    for (const auto& cell : report.cells) {
        for (std::size_t rep = 0; rep < cell.millis.size(); ++rep) {
            out << cell.rule << ',' << cell.size << ',' << cell.violations << ',' << rep << ','
                << cell.millis[rep] << '\n';
        }
        if (cell.millis.empty() && !cell.note.empty())
            out << cell.rule << ',' << cell.size << ',' << cell.violations << ",skipped,\n";
    }
    return out.str();
}

BenchReport from_long_csv(const std::string& text) {
    BenchReport report;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("rule,size,violations,rep,millis", 0) != 0)
        throw ParseError("bench csv: missing header");
    auto cell_of = [&](const std::string& rule, std::int64_t size,
                       std::int64_t violations) -> BenchCell& {
        for (auto& cell : report.cells)
            if (cell.rule == rule && cell.size == size && cell.violations == violations) return cell;
        report.cells.push_back({rule, size, violations, {}, ""});
        return report.cells.back();
    };
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string rule, size_s, violations_s, rep_s, millis_s;
        if (!std::getline(ls, rule, ',') || !std::getline(ls, size_s, ',') ||
            !std::getline(ls, violations_s, ',') || !std::getline(ls, rep_s, ',') ||
            !std::getline(ls, millis_s))
            throw ParseError("bench csv: malformed row", lineno);
        BenchCell& cell = cell_of(rule, std::stoll(size_s), std::stoll(violations_s));
        if (rep_s == "skipped") cell.note = "skipped";
        else cell.millis.push_back(std::stod(millis_s));
    }
    return report;
}

} // namespace ets::bench
