#include "twistcert/cli.hpp"

#include "twistcert/errors.hpp"
#include "twistcert/poly_io.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace twistcert::cli {

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

std::string bare_message(const ParseError& e) {
    std::string what = e.what();
    if (auto pos = what.rfind(" (line "); pos != std::string::npos) what.resize(pos);
    return what;
}

std::string escape_pointer_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

/// Start offset of every value in a syntactically valid JSON text, keyed by JSON pointer.
class OffsetScanner {
public:
    explicit OffsetScanner(std::string_view text) : text_(text) {
        skip_ws();
        value("");
    }
    std::map<std::string, std::size_t> take() { return std::move(offsets_); }

private:
    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n' || text_[pos_] == '\r' || text_[pos_] == '\t'))
            ++pos_;
    }
    std::string string_token() {
        std::string raw;
        ++pos_;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\') raw += text_[pos_++];
            raw += text_[pos_++];
        }
        ++pos_;
        try {
            return Json::parse("\"" + raw + "\"").get<std::string>();
        } catch (const Json::exception&) {
            return raw;
        }
    }
    void value(const std::string& pointer) {
        offsets_[pointer] = pos_;
        if (pos_ >= text_.size()) return;
        const char c = text_[pos_];
        if (c == '{') {
            ++pos_;
            skip_ws();
            while (pos_ < text_.size() && text_[pos_] != '}') {
                const std::string key = string_token();
                skip_ws();
                ++pos_; // ':'
                skip_ws();
                value(pointer + "/" + escape_pointer_token(key));
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
                skip_ws();
            }
            ++pos_;
        } else if (c == '[') {
            ++pos_;
            skip_ws();
            std::size_t index = 0;
            while (pos_ < text_.size() && text_[pos_] != ']') {
                value(pointer + "/" + std::to_string(index++));
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
                skip_ws();
            }
            ++pos_;
        } else if (c == '"') {
            string_token();
        } else {
            while (pos_ < text_.size() && std::string_view(",]} \n\r\t").find(text_[pos_]) == std::string_view::npos) ++pos_;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::map<std::string, std::size_t> offsets_;
};

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text), offsets_(OffsetScanner(text).take()) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& message, std::size_t inner_column = 0) const {
        std::string p = pointer;
        auto it = offsets_.find(p);
        while (it == offsets_.end() && !p.empty()) {
            p = p.substr(0, p.rfind('/'));
            it = offsets_.find(p);
        }
        const std::size_t offset = it == offsets_.end() ? 0 : it->second;
        auto [line, column] = line_column(text_, offset);
        if (inner_column > 0) column += inner_column;
        throw ParseError((pointer.empty() ? std::string("document") : pointer) + ": " + message, line, column);
    }

    void object(const Json& j, const std::string& pointer, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional) const {
        if (!j.is_object()) fail(pointer, "expected an object");
        for (const auto& [key, _] : j.items()) {
            const bool known = std::any_of(required.begin(), required.end(), [&](const char* k) { return key == k; }) ||
                               std::any_of(optional.begin(), optional.end(), [&](const char* k) { return key == k; });
            if (!known) fail(pointer + "/" + escape_pointer_token(key), "unknown field '" + key + "'");
        }
        for (const char* k : required)
            if (!j.contains(k)) fail(pointer, std::string("missing field '") + k + "'");
    }

    std::string string(const Json& j, const std::string& pointer) const {
        if (!j.is_string()) fail(pointer, "expected a string");
        return j.get<std::string>();
    }

    int integer(const Json& j, const std::string& pointer, int lo, int hi) const {
        if (!j.is_number_integer()) fail(pointer, "expected an integer");
        const auto v = j.get<long long>();
        if (v < lo || v > hi) fail(pointer, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return static_cast<int>(v);
    }

    const Json& array(const Json& j, const std::string& pointer) const {
        if (!j.is_array()) fail(pointer, "expected an array");
        return j;
    }

    MultiPoly poly(const Json& j, const std::string& pointer, int nvars, const FieldSpec* field) const {
        const std::string s = string(j, pointer);
        try {
            return parse_poly(s, nvars, field);
        } catch (const ParseError& e) {
            fail(pointer, bare_message(e), e.column());
        } catch (const UsageError& e) {
            fail(pointer, e.what());
        }
    }

    Scalar scalar(const Json& j, const std::string& pointer, const FieldSpec* field) const {
        const std::string s = string(j, pointer);
        try {
            return parse_scalar(s, field);
        } catch (const ParseError& e) {
            fail(pointer, bare_message(e), e.column());
        } catch (const UsageError& e) {
            fail(pointer, e.what());
        }
    }

    std::vector<Scalar> scalars(const Json& j, const std::string& pointer, const FieldSpec* field) const {
        std::vector<Scalar> out;
        std::size_t i = 0;
        for (const auto& x : array(j, pointer)) out.push_back(scalar(x, pointer + "/" + std::to_string(i++), field));
        return out;
    }

    std::vector<MultiPoly> polys(const Json& j, const std::string& pointer, int nvars, const FieldSpec* field) const {
        std::vector<MultiPoly> out;
        std::size_t i = 0;
        for (const auto& x : array(j, pointer)) out.push_back(poly(x, pointer + "/" + std::to_string(i++), nvars, field));
        return out;
    }

private:
    std::string_view text_;
    std::map<std::string, std::size_t> offsets_;
};

Mode parse_mode(const Reader& r, const Json& j) {
    const std::string m = r.string(j, "/mode");
    if (m == "divisor_system") return Mode::divisor_system;
    if (m == "arrangement") return Mode::arrangement;
    if (m == "aomoto") return Mode::aomoto;
    if (m == "affine") return Mode::affine;
    r.fail("/mode", "unknown mode '" + m + "'");
}

const char* payload_key(Mode m) {
    switch (m) {
    case Mode::divisor_system:
        return "divisor_system";
    case Mode::affine:
        return "affine";
    default:
        return "arrangement";
    }
}

constexpr int kMaxDim = 14;

DivisorPayload read_divisor(const Reader& r, const Json& j, const FieldSpec* field) {
    const std::string p = "/divisor_system";
    r.object(j, p, {"n", "d", "s", "divisors"}, {"weights", "base_point", "factors"});
    DivisorPayload out;
    out.n = r.integer(j["n"], p + "/n", 1, kMaxDim);
    out.d = r.integer(j["d"], p + "/d", 1, 64);
    out.s = r.integer(j["s"], p + "/s", 1, 64);
    out.divisors = r.polys(j["divisors"], p + "/divisors", out.n + 1, field);
    if (j.contains("weights")) out.weights = r.scalars(j["weights"], p + "/weights", field);
    if (j.contains("base_point")) out.base_point = r.scalars(j["base_point"], p + "/base_point", field);
    if (j.contains("factors")) {
        std::vector<std::vector<LineFactor>> all;
        std::size_t i = 0;
        for (const auto& per : r.array(j["factors"], p + "/factors")) {
            const std::string pi = p + "/factors/" + std::to_string(i++);
            std::vector<LineFactor> fs;
            std::size_t k = 0;
            for (const auto& f : r.array(per, pi)) {
                const std::string pk = pi + "/" + std::to_string(k++);
                r.object(f, pk, {"form"}, {"multiplicity"});
                LineFactor lf;
                lf.form = r.poly(f["form"], pk + "/form", out.n + 1, field);
                if (f.contains("multiplicity")) lf.multiplicity = r.integer(f["multiplicity"], pk + "/multiplicity", 1, 64);
                fs.push_back(std::move(lf));
            }
            all.push_back(std::move(fs));
        }
        out.factors = std::move(all);
    }
    return out;
}

ArrangementPayload read_arrangement(const Reader& r, const Json& j, const FieldSpec* field) {
    const std::string p = "/arrangement";
    r.object(j, p, {"ambient", "kind", "hyperplanes"}, {"weights", "order"});
    ArrangementPayload out;
    out.ambient = r.integer(j["ambient"], p + "/ambient", 1, kMaxDim);
    try {
        out.kind = parse_arrangement_kind(r.string(j["kind"], p + "/kind"));
    } catch (const UsageError& e) {
        r.fail(p + "/kind", e.what());
    }
    std::size_t i = 0;
    for (const auto& h : r.array(j["hyperplanes"], p + "/hyperplanes")) {
        const std::string ph = p + "/hyperplanes/" + std::to_string(i++);
        auto row = r.scalars(h, ph, field);
        if (row.size() != static_cast<std::size_t>(out.ambient) + 1)
            r.fail(ph, "expected " + std::to_string(out.ambient + 1) + " entries [a_1, .., a_l, c]");
        out.hyperplanes.push_back(std::move(row));
    }
    if (j.contains("weights")) out.weights = r.scalars(j["weights"], p + "/weights", field);
    if (j.contains("order")) {
        std::vector<std::size_t> order;
        std::size_t k = 0;
        for (const auto& x : r.array(j["order"], p + "/order"))
            order.push_back(static_cast<std::size_t>(r.integer(x, p + "/order/" + std::to_string(k++), 1, 64)));
        out.order = std::move(order);
    }
    return out;
}

AffinePayload read_affine(const Reader& r, const Json& j, const FieldSpec* field) {
    const std::string p = "/affine";
    r.object(j, p, {"n", "s", "polynomials"}, {"weights", "base_point"});
    AffinePayload out;
    out.n = r.integer(j["n"], p + "/n", 1, kMaxDim);
    out.s = r.integer(j["s"], p + "/s", 1, 64);
    out.polynomials = r.polys(j["polynomials"], p + "/polynomials", out.n, field);
    if (j.contains("weights")) out.weights = r.scalars(j["weights"], p + "/weights", field);
    if (j.contains("base_point")) out.base_point = r.scalars(j["base_point"], p + "/base_point", field);
    return out;
}

Json scalar_array(const std::vector<Scalar>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(x.to_string());
    return out;
}

Json poly_array(const std::vector<MultiPoly>& ps) {
    Json out = Json::array();
    for (const auto& p : ps) out.push_back(p.to_string());
    return out;
}

} // namespace

std::string tool_version() { return TWISTCERT_VERSION; }

std::string to_string(Mode m) {
    switch (m) {
    case Mode::divisor_system:
        return "divisor_system";
    case Mode::arrangement:
        return "arrangement";
    case Mode::aomoto:
        return "aomoto";
    case Mode::affine:
        return "affine";
    }
    return "";
}

ProblemFile parse_problem(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        auto [line, column] = line_column(text, offset);
        std::string what = e.what();
        if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
        throw ParseError("malformed JSON: " + what, line, column);
    }
    const Reader r(text);
    r.object(j, "", {"schema_version", "id", "field", "mode"},
             {"description", "divisor_system", "arrangement", "affine", "expectations"});
    if (r.string(j["schema_version"], "/schema_version") != kSchemaVersion)
        r.fail("/schema_version", std::string("unsupported schema version; expected \"") + kSchemaVersion + "\"");
    ProblemFile out;
    out.id = r.string(j["id"], "/id");
    if (out.id.empty()) r.fail("/id", "id must be nonempty");
    if (j.contains("description")) out.description = r.string(j["description"], "/description");
    try {
        out.field = parse_field(r.string(j["field"], "/field"));
    } catch (const ParseError& e) {
        r.fail("/field", bare_message(e), e.column());
    } catch (const UsageError& e) {
        r.fail("/field", e.what());
    }
    out.mode = parse_mode(r, j["mode"]);
    const char* key = payload_key(out.mode);
    for (const char* other : {"divisor_system", "arrangement", "affine"})
        if (std::string(other) != key && j.contains(other))
            r.fail(std::string("/") + other, "field does not belong to mode '" + to_string(out.mode) + "'");
    if (!j.contains(key)) r.fail("", std::string("missing field '") + key + "'");
    switch (out.mode) {
    case Mode::divisor_system:
        out.payload = read_divisor(r, j[key], out.field);
        break;
    case Mode::affine:
        out.payload = read_affine(r, j[key], out.field);
        break;
    default:
        out.payload = read_arrangement(r, j[key], out.field);
    }
    if (j.contains("expectations")) {
        std::size_t i = 0;
        for (const auto& e : r.array(j["expectations"], "/expectations")) {
            const std::string p = "/expectations/" + std::to_string(i++);
            r.object(e, p, {"name", "value"}, {});
            out.expectations.push_back({r.string(e["name"], p + "/name"), e["value"]});
        }
    }
    return out;
}

std::string print_problem(const ProblemFile& file) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["id"] = file.id;
    if (!file.description.empty()) j["description"] = file.description;
    j["field"] = file.field->to_string();
    j["mode"] = to_string(file.mode);
    Json p;
    if (const auto* d = std::get_if<DivisorPayload>(&file.payload)) {
        p["n"] = d->n;
        p["d"] = d->d;
        p["s"] = d->s;
        p["divisors"] = poly_array(d->divisors);
        if (d->weights) p["weights"] = scalar_array(*d->weights);
        if (d->base_point) p["base_point"] = scalar_array(*d->base_point);
        if (d->factors) {
            Json all = Json::array();
            for (const auto& per : *d->factors) {
                Json fs = Json::array();
                for (const auto& f : per) {
                    Json o;
                    o["form"] = f.form.to_string();
                    if (f.multiplicity != 1) o["multiplicity"] = f.multiplicity;
                    fs.push_back(std::move(o));
                }
                all.push_back(std::move(fs));
            }
            p["factors"] = std::move(all);
        }
    } else if (const auto* a = std::get_if<ArrangementPayload>(&file.payload)) {
        p["ambient"] = a->ambient;
        p["kind"] = to_string(a->kind);
        p["hyperplanes"] = Json::array();
        for (const auto& h : a->hyperplanes) p["hyperplanes"].push_back(scalar_array(h));
        if (a->weights) p["weights"] = scalar_array(*a->weights);
        if (a->order) p["order"] = *a->order;
    } else if (const auto* f = std::get_if<AffinePayload>(&file.payload)) {
        p["n"] = f->n;
        p["s"] = f->s;
        p["polynomials"] = poly_array(f->polynomials);
        if (f->weights) p["weights"] = scalar_array(*f->weights);
        if (f->base_point) p["base_point"] = scalar_array(*f->base_point);
    }
    j[payload_key(file.mode)] = std::move(p);
    if (!file.expectations.empty()) {
        Json es = Json::array();
        for (const auto& e : file.expectations) es.push_back(Json{{"name", e.name}, {"value", e.value}});
        j["expectations"] = std::move(es);
    }
    return j.dump(2) + "\n";
}

std::string digest(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json without_timing(Json report) {
    if (report.is_object()) {
        report.erase("timing_ms");
        for (auto& [_, v] : report.items()) v = without_timing(v);
    } else if (report.is_array()) {
        for (auto& v : report) v = without_timing(v);
    }
    return report;
}

} // namespace twistcert::cli
