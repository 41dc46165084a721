#include "twistcert/cli.hpp"
#include "twistcert/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace twistcert;
using namespace twistcert::cli;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_json(const std::string& path, const Json& j) {
    if (path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

struct Flags {
    std::string file;
    std::string json_out;
    bool emit_forms = false;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string only;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--json", f.json_out, "Write the JSON report to this path ('-' for stdout)");
    cmd->add_flag("--emit-forms", f.emit_forms, "Print omega and every eta in the canonical form grammar");
    cmd->add_option("--seed", f.seed, "Seed for weights that a problem file leaves out");
    cmd->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::Range(1U, 256U));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact certificates for twisted cohomology of divisor complements"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);
    Flags f;

    auto* verify = app.add_subcommand("verify", "Run the pipeline of a problem file's mode");
    verify->add_option("file", f.file, "Problem file (JSON)")->required();
    add_common(verify, f);
    auto* arrangement = app.add_subcommand("arrangement", "Lattice, beta, chambers and dense edges");
    arrangement->add_option("file", f.file, "Problem file (JSON)")->required();
    add_common(arrangement, f);
    auto* aomoto = app.add_subcommand("aomoto", "Orlik-Solomon algebra and Aomoto complex ranks");
    aomoto->add_option("file", f.file, "Problem file (JSON)")->required();
    add_common(aomoto, f);
    auto* corpus_cmd = app.add_subcommand("corpus", "Run the bundled examples");
    corpus_cmd->add_option("--only", f.only, "Run one example id, or every id with this prefix");
    add_common(corpus_cmd, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const RunOptions options{f.emit_forms, f.seed, f.jobs};
    try {
        Report report;
        if (corpus_cmd->parsed()) {
            report = run_corpus(f.only.empty() ? std::nullopt : std::optional<std::string>(f.only), options);
        } else {
            const std::string text = read_file(f.file);
            const ProblemFile file = parse_problem(text);
            const std::string d = digest(text);
            if (verify->parsed()) report = run(file, options, d);
            else if (arrangement->parsed()) report = run_arrangement(file, options, d);
            else report = run_aomoto(file, options, d);
        }
        if (f.json_out != "-") std::cout << report.summary;
        if (!f.json_out.empty()) write_json(f.json_out, report.json);
        return report.passed ? kOk : kCheckFailed;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    }
}
