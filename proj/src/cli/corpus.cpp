#include "twistcert/cli.hpp"

#include "twistcert/errors.hpp"

#include <future>
#include <mutex>
#include <sstream>

namespace twistcert::cli {

namespace detail {
struct EmbeddedFile {
    const char* filename;
    const char* text;
};
extern const EmbeddedFile kCorpusFiles[];
extern const std::size_t kCorpusFileCount;
} // namespace detail

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> out;
        for (std::size_t i = 0; i < detail::kCorpusFileCount; ++i) {
            const auto& f = detail::kCorpusFiles[i];
            out.push_back({parse_problem(f.text).id, f.filename, f.text});
        }
        return out;
    }();
    return entries;
}

std::vector<CorpusEntry> select_corpus(const std::optional<std::string>& only) {
    std::vector<CorpusEntry> out;
    for (const auto& e : corpus())
        if (!only || e.id == *only || (e.id.size() > only->size() && e.id.compare(0, only->size(), *only) == 0 &&
                                       e.id[only->size()] == '-'))
            out.push_back(e);
    if (out.empty()) throw UsageError("no corpus entry matches '" + only.value_or("") + "'");
    return out;
}

Report run_corpus(const std::optional<std::string>& only, const RunOptions& options) {
    const std::vector<CorpusEntry> entries = select_corpus(only);
    std::vector<std::optional<Report>> reports(entries.size());
    std::vector<std::string> errors(entries.size());
    const unsigned width = std::max(1U, options.jobs);
    RunOptions inner = options;
    inner.jobs = 1;

    auto work = [&](std::size_t i) {
        try {
            const ProblemFile file = parse_problem(entries[i].text);
            reports[i] = run(file, inner, digest(entries[i].text));
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    };
    std::vector<std::future<void>> pending;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (pending.size() == width) {
            for (auto& f : pending) f.get();
            pending.clear();
        }
        pending.push_back(std::async(std::launch::async, work, i));
    }
    for (auto& f : pending) f.get();

    Report out;
    out.passed = true;
    Json examples = Json::array();
    std::ostringstream os;
    std::size_t passed = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (reports[i]) {
            examples.push_back(reports[i]->json);
            os << reports[i]->summary << "\n";
            passed += reports[i]->passed ? 1 : 0;
            out.passed = out.passed && reports[i]->passed;
        } else {
            examples.push_back(Json{{"id", entries[i].id}, {"error", errors[i]}, {"passed", false}});
            os << entries[i].id << "\n  error: " << errors[i] << "\nFAIL\n\n";
            out.passed = false;
        }
    }
    os << "corpus: " << passed << "/" << entries.size() << " examples passed\n";
    out.json = Json{{"tool", "twistcert"},
                    {"version", tool_version()},
                    {"schema_version", kSchemaVersion},
                    {"verb", "corpus"},
                    {"seed", options.seed},
                    {"only", only ? Json(*only) : Json(nullptr)},
                    {"examples", std::move(examples)},
                    {"passed", out.passed}};
    out.summary = os.str();
    return out;
}

} // namespace twistcert::cli
