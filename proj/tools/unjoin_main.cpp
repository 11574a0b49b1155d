// Command-line frontend: mine approximate MVDs from a CSV table, synthesize
// and evaluate acyclic schemas, and extract Pareto fronts from reports.
//
// Exit codes: 0 success, 1 input/parse/validation errors, 2 budget
// truncation (partial results are still written).

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "unjoin/artifacts.hpp"
#include "unjoin/entropy_oracle.hpp"
#include "unjoin/errors.hpp"
#include "unjoin/metrics.hpp"
#include "unjoin/miner.hpp"
#include "unjoin/relation.hpp"
#include "unjoin/schema_synth.hpp"

namespace {

using nlohmann::json;
using namespace unjoin;

struct CommonOptions {
    std::string input;
    bool no_header = false;
    bool no_dedup = false;
    std::string null_token;
    std::string delimiter = ",";
    int block_size = 10;
    std::size_t cache_budget = std::size_t{512} << 20;
    int threads = 1;
};

void add_input_options(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--input", opt.input, "input CSV file")->required();
    cmd->add_flag("--no-header", opt.no_header, "first row is data, not attribute names");
    cmd->add_flag("--no-dedup", opt.no_dedup, "keep duplicate rows (multiset semantics)");
    cmd->add_option("--null-token", opt.null_token,
                    "token standing for null; treated as an ordinary value (default: empty)");
    cmd->add_option("--delimiter", opt.delimiter, "field delimiter (default ',')");
    cmd->add_option("--block-size", opt.block_size,
                    "attributes per precomputed partition-table block (default 10)");
    cmd->add_option("--cache-budget", opt.cache_budget,
                    "byte budget for the composed-table cache (default 512 MiB)");
    cmd->add_option("--threads", opt.threads, "worker threads for pair-level mining");
}

CsvOptions csv_options(const CommonOptions& opt) {
    CsvOptions c;
    c.has_header = !opt.no_header;
    c.dedup = !opt.no_dedup;
    c.null_token = opt.null_token;
    if (opt.delimiter.size() != 1) throw CsvError("delimiter must be a single character");
    c.delimiter = opt.delimiter[0];
    return c;
}

OracleConfig oracle_config(const CommonOptions& opt) {
    OracleConfig c;
    c.block_size = opt.block_size;
    c.cache_budget_bytes = opt.cache_budget;
    c.thread_safe = opt.threads > 1;
    return c;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

int run_mine_mvds(const CommonOptions& opt, double epsilon, double budget_secs,
                  const std::string& output, bool timings) {
    const Relation rel = Relation::load_csv(opt.input, csv_options(opt));
    const EntropyOracle oracle(rel, oracle_config(opt));

    MineOptions mine;
    mine.threads = opt.threads;
    if (budget_secs >= 0)
        mine.budget = std::chrono::milliseconds(static_cast<long long>(budget_secs * 1000.0));
    const auto start = std::chrono::steady_clock::now();
    MiningResult result = mine_all(oracle, epsilon, mine);
    const auto elapsed = std::chrono::steady_clock::now() - start;

    MvdsArtifact artifact;
    artifact.input_path = opt.input;
    artifact.input_checksum = file_checksum(opt.input);
    artifact.attribute_count = rel.attribute_count();
    artifact.row_count = rel.row_count();
    artifact.epsilon = epsilon;
    artifact.block_size = opt.block_size;
    artifact.dedup = !opt.no_dedup;
    artifact.truncated = result.truncated;
    artifact.attribute_names = rel.attribute_names();
    artifact.mvds = std::move(result.mvds);
    if (timings)
        artifact.wall_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();

    write_text(output, to_stable_string(mvds_artifact_to_json(artifact)) + "\n");
    std::cerr << "mine-mvds: " << artifact.mvds.size() << " full MVDs"
              << (result.truncated ? " (truncated)" : "") << "\n";
    return result.truncated ? 2 : 0;
}

int run_mine_schemes(const CommonOptions& opt, const std::string& mvds_path,
                     std::size_t max_schemas, double budget_secs, const std::string& output) {
    std::ifstream in(mvds_path);
    if (!in) throw Error("cannot open " + mvds_path);
    json artifact_json = json::parse(in);

    CommonOptions load_opt = opt;
    // The artifact records the dedup mode it was mined with; reuse it so the
    // measure agrees.
    load_opt.no_dedup = !artifact_json.at("meta").at("dedup").get<bool>();
    const Relation rel = Relation::load_csv(opt.input, csv_options(load_opt));
    const MvdsArtifact artifact = mvds_artifact_from_json(artifact_json, rel);

    if (file_checksum(opt.input) != artifact.input_checksum)
        throw Error("input checksum does not match the mvds artifact (different file?)");

    const EntropyOracle oracle(rel, oracle_config(opt));
    std::vector<Mvd> mvds;
    mvds.reserve(artifact.mvds.size());
    for (const MinedMvd& m : artifact.mvds) mvds.push_back(m.mvd);

    EnumerateLimits limits;
    limits.max_schemas = max_schemas;
    if (budget_secs >= 0)
        limits.deadline = std::chrono::steady_clock::now() +
                          std::chrono::milliseconds(static_cast<long long>(budget_secs * 1000.0));
    EnumerationResult schemas = enumerate_schemas(mvds, oracle, limits);

    std::vector<std::pair<double, double>> points;
    std::vector<json> lines;
    for (std::size_t i = 0; i < schemas.schemas.size(); ++i) {
        const SchemaResult& s = schemas.schemas[i];
        char id[32];
        std::snprintf(id, sizeof id, "s%05zu", i);
        SchemaReport report = evaluate_schema(rel, oracle, s.schema, s.tree, id);
        report.j_bits = s.j_bits;
        points.emplace_back(report.cell_savings_pct, report.spurious_pct);
        lines.push_back(schema_report_to_json(report, s.tree, s.support_mvds,
                                              rel.attribute_names(), false, true));
    }
    std::vector<char> on_front(lines.size(), 0);
    for (std::size_t i : pareto_indices(points)) on_front[i] = 1;
    std::string text;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        lines[i]["pareto"] = on_front[i] != 0;
        text += to_stable_string(lines[i]);
        text += '\n';
    }
    write_text(output, text);
    std::cerr << "mine-schemes: " << lines.size() << " schemas"
              << (schemas.truncated ? " (truncated)" : "") << "\n";
    return schemas.truncated ? 2 : 0;
}

AcyclicSchema parse_schema_spec(const std::string& spec, const Relation& rel) {
    std::vector<AttributeSet> bags;
    std::stringstream groups(spec);
    std::string group;
    while (std::getline(groups, group, ';')) {
        AttributeSet bag;
        std::stringstream names(group);
        std::string name;
        while (std::getline(names, name, ',')) {
            if (name.empty()) continue;
            auto idx = rel.attribute_index(name);
            if (!idx) throw StructureError("unknown attribute name: " + name);
            bag.insert(*idx);
        }
        if (!bag.empty()) bags.push_back(bag);
    }
    if (bags.empty()) throw StructureError("empty schema spec");
    return AcyclicSchema::from_bags(std::move(bags));
}

int run_evaluate(const CommonOptions& opt, const std::string& schema_spec,
                 const std::string& output) {
    const Relation rel = Relation::load_csv(opt.input, csv_options(opt));
    const AcyclicSchema schema = parse_schema_spec(schema_spec, rel);
    if (schema.all_attributes() != rel.all_attributes())
        throw StructureError("schema must cover all attributes of the input");
    const JoinTree tree = join_tree_for(schema);
    const EntropyOracle oracle(rel, oracle_config(opt));
    const SchemaReport report = evaluate_schema(rel, oracle, schema, tree, "eval");
    json obj = schema_report_to_json(report, tree, mvd_support(tree), rel.attribute_names(),
                                     false, false);
    write_text(output, to_stable_string(obj) + "\n");
    return 0;
}

int run_pareto(const std::string& reports_path, const std::string& output,
               const std::string& csv_out) {
    std::ifstream in(reports_path);
    if (!in) throw Error("cannot open " + reports_path);
    std::vector<json> records;
    std::vector<std::pair<double, double>> points;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json rec = json::parse(line);
        points.emplace_back(rec.at("cell_savings_pct").get<double>(),
                            rec.at("spurious_pct").get<double>());
        records.push_back(std::move(rec));
    }
    std::vector<char> on_front(records.size(), 0);
    for (std::size_t i : pareto_indices(points)) on_front[i] = 1;

    std::string text;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!on_front[i]) continue;
        records[i]["pareto"] = true;
        text += to_stable_string(records[i]);
        text += '\n';
    }
    write_text(output, text);

    if (!csv_out.empty()) {
        std::string csv = "schema_id,j_bits,cell_savings_pct,spurious_pct,relation_count,"
                          "width,int_width,pareto\n";
        for (std::size_t i = 0; i < records.size(); ++i) {
            const json& r = records[i];
            std::ostringstream row;
            row << r.value("schema_id", std::string("?")) << ','
                << r.value("j_bits", 0.0) << ',' << r.at("cell_savings_pct").get<double>()
                << ',' << r.at("spurious_pct").get<double>() << ','
                << r.value("relation_count", 0) << ',' << r.value("width", 0) << ','
                << r.value("int_width", 0) << ',' << (on_front[i] ? 1 : 0) << '\n';
            csv += row.str();
        }
        write_text(csv_out, csv);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate multivalued-dependency and acyclic-schema discovery"};
    app.require_subcommand(1);

    CommonOptions opt;
    double epsilon = 0.0;
    double budget_secs = -1.0;
    std::size_t max_schemas = SIZE_MAX;
    std::string output;
    std::string mvds_path = "mvds.json";
    std::string schema_spec;
    std::string reports_path;
    std::string csv_out;
    bool timings = false;

    CLI::App* mine = app.add_subcommand("mine-mvds", "discover full MVDs with minimal keys");
    add_input_options(mine, opt);
    mine->add_option("--epsilon", epsilon, "J-measure threshold in bits (default 0)");
    mine->add_option("--budget-secs", budget_secs, "wall-clock budget; omit for unlimited");
    mine->add_option("--output", output, "output path (default mvds.json)");
    mine->add_flag("--timings", timings, "record wall time in the artifact (non-reproducible)");

    CLI::App* schemes = app.add_subcommand("mine-schemes",
                                           "enumerate acyclic schemas from mined MVDs");
    add_input_options(schemes, opt);
    schemes->add_option("--mvds", mvds_path, "mvds.json produced by mine-mvds");
    schemes->add_option("--max-schemas", max_schemas, "stop after this many schemas");
    schemes->add_option("--budget-secs", budget_secs, "wall-clock budget; omit for unlimited");
    schemes->add_option("--output", output, "output path (default schemes.jsonl)");

    CLI::App* evaluate = app.add_subcommand("evaluate", "score one schema against the input");
    add_input_options(evaluate, opt);
    evaluate->add_option("--schema", schema_spec,
                         "schema spec: relations separated by ';', attributes by ','")
        ->required();
    evaluate->add_option("--output", output, "output path (default stdout)");

    CLI::App* pareto = app.add_subcommand("pareto", "filter schema reports to the Pareto front");
    pareto->add_option("--reports", reports_path, "schemes.jsonl to filter")->required();
    pareto->add_option("--output", output, "output path (default stdout)");
    pareto->add_option("--csv", csv_out, "also write a savings-vs-spurious CSV for plotting");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mine->parsed()) {
            if (output.empty()) output = "mvds.json";
            return run_mine_mvds(opt, epsilon, budget_secs, output, timings);
        }
        if (schemes->parsed()) {
            if (output.empty()) output = "schemes.jsonl";
            return run_mine_schemes(opt, mvds_path, max_schemas, budget_secs, output);
        }
        if (evaluate->parsed()) {
            if (output.empty()) output = "-";
            return run_evaluate(opt, schema_spec, output);
        }
        if (pareto->parsed()) {
            if (output.empty()) output = "-";
            return run_pareto(reports_path, output, csv_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
