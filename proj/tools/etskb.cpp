// etskb: command-line front end for the ETS knowledge-base engine.
// Subcommands: gen, validate, analyze, rules, query, ontology, bench.
// Exit codes: 0 success, 1 violations under --strict (or failed checks),
// 2 usage or I/O errors.

#include "ets/bench.hpp"
#include "ets/datagen.hpp"
#include "ets/errors.hpp"
#include "ets/mapping.hpp"
#include "ets/ontology.hpp"
#include "ets/query.hpp"
#include "ets/rules.hpp"
#include "ets/store.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string now_iso8601() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    for (const auto& item : split_commas(text)) out.push_back(std::stoll(item));
    return out;
}

std::map<std::string, std::int64_t> parse_violations(const std::vector<std::string>& specs) {
    std::map<std::string, std::int64_t> out;
    for (const auto& s : specs) {
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ets::Error("expected RULE=COUNT, got '" + s + "'");
        out[s.substr(0, eq)] = std::stoll(s.substr(eq + 1));
    }
    return out;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& specs) {
    std::map<std::string, double> out;
    for (const auto& s : specs) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ets::Error("expected K=V, got '" + s + "'");
        out[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ets::Error("cannot write " + path);
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ETS knowledge-base engine"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset directory");
    std::int64_t gen_plants = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    std::vector<std::string> gen_violations;
    std::int64_t gen_sectors = 10;
    gen->add_option("--plants", gen_plants, "Number of plants")->required();
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--out", gen_out, "Output directory")->required();
    gen->add_option("--violations", gen_violations, "Injected violations, RULE=COUNT");
    gen->add_option("--sectors", gen_sectors, "Number of industrial sectors");

    // validate
    auto* validate = app.add_subcommand("validate", "Run the data-acquisition rules");
    std::string val_data, val_report, val_now, val_rules;
    bool val_strict = false;
    validate->add_option("--data", val_data, "Dataset directory")->required();
    validate->add_option("--report", val_report, "Report output file")->required();
    validate->add_flag("--strict", val_strict, "Exit 1 when violations are found");
    validate->add_option("--rules", val_rules, "Comma-separated rule ids to run");
    validate->add_option("--now", val_now, "Timestamp to record (for reproducible reports)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Run one data-analysis rule");
    std::string an_data, an_rule, an_report, an_now;
    std::vector<std::string> an_params;
    analyze->add_option("--data", an_data, "Dataset directory")->required();
    analyze->add_option("--rule", an_rule, "Rule id")->required();
    analyze->add_option("--param", an_params, "Template parameter, K=V");
    analyze->add_option("--report", an_report, "Report output file")->required();
    analyze->add_option("--now", an_now, "Timestamp to record");

    // rules list
    auto* rules_cmd = app.add_subcommand("rules", "Catalogue operations");
    auto* rules_list = rules_cmd->add_subcommand("list", "List catalogue rules");
    std::string rules_taxonomy;
    rules_list->add_option("--taxonomy", rules_taxonomy, "Filter by taxonomy path prefix");

    // query
    auto* query_cmd = app.add_subcommand("query", "Run a query file against a dataset");
    std::string q_data, q_file;
    bool q_naive = false;
    query_cmd->add_option("--data", q_data, "Dataset directory")->required();
    query_cmd->add_option("--file", q_file, "Query file")->required();
    query_cmd->add_flag("--naive", q_naive, "Use the naive oracle evaluator");

    // ontology check
    auto* onto_cmd = app.add_subcommand("ontology", "Ontology operations");
    auto* onto_check = onto_cmd->add_subcommand("check", "Check structural consistency");
    std::string onto_file;
    onto_check->add_option("--file", onto_file, "Ontology file (default: built-in seed)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run the rule benchmark grid");
    std::string b_sizes, b_violations, b_out;
    int b_reps = 10;
    std::uint64_t b_seed = 1;
    bool b_check = false;
    bench_cmd->add_option("--sizes", b_sizes, "Comma-separated plant counts")->required();
    bench_cmd->add_option("--reps", b_reps, "Repetitions per grid point");
    bench_cmd->add_option("--violations", b_violations, "Comma-separated violation counts");
    bench_cmd->add_option("--out", b_out, "Long-format CSV output file")->required();
    bench_cmd->add_option("--seed", b_seed, "Seed base");
    bench_cmd->add_flag("--check", b_check, "Evaluate scaling-shape properties");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::stringstream out;
        int code = app.exit(e, out, out);
        std::cerr << out.str();
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            ets::datagen::GenConfig config;
            config.n_plants = gen_plants;
            config.seed = gen_seed;
            config.n_sectors = gen_sectors;
            config.injected = parse_violations(gen_violations);
            ets::datagen::write_dataset(config, gen_out);
            std::cerr << "wrote dataset (" << gen_plants << " plants) to " << gen_out << "\n";
            return 0;
        }

        if (*validate) {
            auto data = ets::store::ingest_csv(val_data);
            auto report = ets::rules::run_acquisition_service(
                data, ets::mapping::MappingSpec::standard(), val_data,
                val_now.empty() ? now_iso8601() : val_now, split_commas(val_rules));
            write_text(val_report, report.to_json());
            std::size_t violations = report.violation_findings();
            std::cerr << "findings: " << report.total_findings() << " (" << violations
                      << " violations) -> " << val_report << "\n";
            if (val_strict && violations > 0) return 1;
            return 0;
        }

        if (*analyze) {
            auto data = ets::store::ingest_csv(an_data);
            std::map<std::string, std::map<std::string, double>> params;
            auto parsed = parse_params(an_params);
            if (!parsed.empty()) params[an_rule] = parsed;
            auto report = ets::rules::run_analysis_service(
                data, ets::mapping::MappingSpec::standard(), {an_rule}, params, an_data,
                an_now.empty() ? now_iso8601() : an_now);
            write_text(an_report, report.to_json());
            std::cerr << "findings: " << report.total_findings() << " -> " << an_report << "\n";
            return 0;
        }

        if (*rules_cmd) {
            auto prefix = ets::rules::TaxonomyPath::parse(rules_taxonomy);
            for (const auto& rule : ets::rules::load_catalogue()) {
                if (!prefix.segments.empty() && !rule.taxonomy.has_prefix(prefix)) continue;
                std::cout << rule.id << "\t" << rule.taxonomy.str() << "\t"
                          << ets::rules::polarity_name(rule.polarity) << "\t"
                          << (rule.body_kind == ets::rules::RuleDef::BodyKind::Query ? "query"
                                                                                     : "native")
                          << (rule.params.empty() ? "" : " (template)") << "\t"
                          << rule.description << "\n";
            }
            return 0;
        }

        if (*query_cmd) {
            std::ifstream in(q_file, std::ios::binary);
            if (!in) throw ets::Error("cannot open " + q_file);
            std::ostringstream buf;
            buf << in.rdbuf();
            auto data = ets::store::ingest_csv(q_data);
            const auto& spec = ets::mapping::MappingSpec::standard();
            auto ast = ets::query::parse_query(buf.str());
            ets::query::ResultSet result =
                q_naive ? ets::query::evaluate_naive(ast, spec, data)
                        : ets::query::execute_plan(ets::query::plan_query(ast, spec), data);
            std::cout << ets::query::to_csv(result);
            if (result.filter_error_count > 0)
                std::cerr << "rows dropped on filter evaluation errors: "
                          << result.filter_error_count << "\n";
            return 0;
        }

        if (*onto_cmd) {
            auto onto = onto_file.empty() ? ets::ontology::Ontology::seed()
                                          : ets::ontology::Ontology::load(onto_file);
            auto findings = onto.check_consistency();
            for (const auto& f : findings) std::cout << f.invariant << ": " << f.message << "\n";
            std::cerr << (findings.empty() ? "consistent" : "inconsistent") << " ("
                      << onto.concepts().size() << " concepts, " << onto.relations().size()
                      << " relations)\n";
            return findings.empty() ? 0 : 1;
        }

        if (*bench_cmd) {
            ets::bench::BenchConfig config;
            config.sizes = parse_int_list(b_sizes);
            if (!b_violations.empty()) config.violation_counts = parse_int_list(b_violations);
            config.reps = b_reps;
            config.seed_base = b_seed;
            auto report = ets::bench::run_bench(config);
            write_text(b_out, ets::bench::to_long_csv(report));
            std::cerr << "bench cells: " << report.cells.size() << " -> " << b_out << " ["
                      << report.environment << "]\n";
            if (b_check) {
                bool all_pass = true;
                for (const auto& v : ets::bench::check_scaling_properties(report)) {
                    std::cout << v.name << ": "
                              << (v.applicable ? (v.pass ? "pass" : "FAIL") : "not-applicable")
                              << " (" << v.detail << ")\n";
                    if (v.applicable && !v.pass) all_pass = false;
                }
                return all_pass ? 0 : 1;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
