#pragma once

#include "twistcert/arrangement.hpp"
#include "twistcert/linear_systems.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace twistcert::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";
std::string tool_version();

enum class Mode { divisor_system, arrangement, aomoto, affine };
std::string to_string(Mode m);

struct LineFactor {
    MultiPoly form;
    int multiplicity = 1;
};

struct DivisorPayload {
    int n = 0;
    int d = 0;
    int s = 0;
    std::vector<MultiPoly> divisors;
    /// Drawn from the run seed when absent.
    std::optional<std::vector<Scalar>> weights;
    std::optional<std::vector<Scalar>> base_point;
    /// Linear factors of each divisor; the lines form the support arrangement.
    std::optional<std::vector<std::vector<LineFactor>>> factors;
};

/// Shared by the arrangement and aomoto modes.
struct ArrangementPayload {
    int ambient = 0;
    ArrangementKind kind = ArrangementKind::central;
    /// [a_1, .., a_l, c] for the hyperplane a . x = c.
    std::vector<std::vector<Scalar>> hyperplanes;
    std::optional<std::vector<Scalar>> weights;
    /// 1-based order of the hyperplanes for the OS basis.
    std::optional<std::vector<std::size_t>> order;
};

struct AffinePayload {
    int n = 0;
    int s = 0;
    std::vector<MultiPoly> polynomials;
    std::optional<std::vector<Scalar>> weights;
    /// Affine point u; the base point is [1 : u].
    std::optional<std::vector<Scalar>> base_point;
};

struct Expectation {
    std::string name;
    Json value;
};

struct ProblemFile {
    std::string id;
    std::string description;
    const FieldSpec* field = FieldSpec::rationals();
    Mode mode = Mode::divisor_system;
    std::variant<DivisorPayload, ArrangementPayload, AffinePayload> payload;
    std::vector<Expectation> expectations;
};

/// Strict reader: unknown fields, wrong types and malformed polynomials raise
/// ParseError with the 1-based line and column of the offending value.
ProblemFile parse_problem(std::string_view text);
/// Canonical JSON, two-space indent, trailing newline.
std::string print_problem(const ProblemFile& file);

/// 64-bit FNV-1a as 16 hex digits.
std::string digest(std::string_view bytes);

struct RunOptions {
    bool emit_forms = false;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

struct Report {
    Json json;
    std::string summary;
    bool passed = false;
};

/// Runs the pipeline of the file's mode and compares the expectations.
/// `input_digest` is recorded verbatim.
Report run(const ProblemFile& file, const RunOptions& options, const std::string& input_digest = "");
/// Arrangement analysis for arrangement and aomoto files, and for divisor systems with factors.
Report run_arrangement(const ProblemFile& file, const RunOptions& options, const std::string& input_digest = "");
/// Aomoto cohomology for arrangement and aomoto files with weights.
Report run_aomoto(const ProblemFile& file, const RunOptions& options, const std::string& input_digest = "");

struct CorpusEntry {
    std::string id;
    std::string filename;
    std::string_view text;
};

/// Bundled examples in a fixed order.
const std::vector<CorpusEntry>& corpus();

/// Entries whose id equals `only` or starts with `only` followed by '-'.
std::vector<CorpusEntry> select_corpus(const std::optional<std::string>& only);

/// Runs the selected entries, up to options.jobs at a time; output order is the corpus order.
Report run_corpus(const std::optional<std::string>& only, const RunOptions& options);

/// Drops every "timing_ms" member, recursively.
Json without_timing(Json report);

} // namespace twistcert::cli
