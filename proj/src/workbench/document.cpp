#include "thedra/workbench/document.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "thedra/error.hpp"

namespace thedra::workbench {

using nlohmann::json;
using smooth::Interval;
using smooth::ScalarFunction;

namespace {

constexpr std::size_t kResampleCount = 257;

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
    throw Error(ErrorCode::SchemaViolation, path + ": " + message, path);
}

const json& member(const json& object, const std::string& key, const std::string& path) {
    if (!object.is_object()) schema_error(path, "expected an object");
    const auto it = object.find(key);
    if (it == object.end()) schema_error(path + "." + key, "missing");
    return *it;
}

void require_keys(const json& object, const std::set<std::string>& allowed, const std::string& path) {
    if (!object.is_object()) schema_error(path, "expected an object");
    for (const auto& [key, value] : object.items())
        if (!allowed.count(key)) schema_error(path + "." + key, "unknown key");
}

double number(const json& value, const std::string& path) {
    if (!value.is_number()) schema_error(path, "expected a number");
    const double x = value.get<double>();
    if (!std::isfinite(x)) schema_error(path, "expected a finite number");
    return x;
}

std::vector<double> numbers(const json& value, const std::string& path) {
    if (!value.is_array()) schema_error(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(value.size());
    for (std::size_t k = 0; k < value.size(); ++k) out.push_back(number(value[k], path + "[" + std::to_string(k) + "]"));
    return out;
}

std::size_t count(const json& value, const std::string& path) {
    if (!value.is_number_integer() || value.get<long long>() < 0) schema_error(path, "expected a nonnegative integer");
    return value.get<std::size_t>();
}

std::string text(const json& value, const std::string& path) {
    if (!value.is_string()) schema_error(path, "expected a string");
    return value.get<std::string>();
}

// ---- discrete ----------------------------------------------------------------

json discrete_payload(const DesignData& d) {
    return {{"m", d.m()}, {"n", d.n()}, {"phi", d.phi}, {"psi", d.psi}, {"f0", d.f0}, {"g0", d.g0}, {"z", d.z}};
}

DesignData parse_discrete(const json& p) {
    const std::string base = "payload";
    require_keys(p, {"m", "n", "phi", "psi", "f0", "g0", "z"}, base);
    const std::size_t m = count(member(p, "m", base), base + ".m");
    const std::size_t n = count(member(p, "n", base), base + ".n");
    DesignData d;
    d.phi = numbers(member(p, "phi", base), base + ".phi");
    d.psi = numbers(member(p, "psi", base), base + ".psi");
    d.f0 = numbers(member(p, "f0", base), base + ".f0");
    d.g0 = numbers(member(p, "g0", base), base + ".g0");
    d.z = numbers(member(p, "z", base), base + ".z");
    const auto expect = [&](const std::vector<double>& v, std::size_t size, const char* key) {
        if (v.size() != size)
            schema_error(base + "." + key, "expected " + std::to_string(size) + " entries, got " + std::to_string(v.size()));
    };
    expect(d.phi, m, "phi");
    expect(d.psi, m, "psi");
    expect(d.g0, m, "g0");
    expect(d.f0, n, "f0");
    expect(d.z, n + 1, "z");
    try {
        validate_design(d);
    } catch (const Error& e) {
        const std::string path = e.field().empty() ? base : base + "." + e.field();
        throw Error(ErrorCode::InvariantViolation, std::string(to_string(e.code())) + ": " + e.what(), path);
    }
    return d;
}

// ---- smooth --------------------------------------------------------------------

json function_json(const ScalarFunction& f) {
    const ScalarFunction stored = f.serializable() ? f : f.resampled(kResampleCount);
    return {{"kind", stored.kind()}, {"domain", {stored.domain().lo, stored.domain().hi}}, {"parameters", stored.parameters()}};
}

ScalarFunction parse_function(const json& value, const std::string& path) {
    require_keys(value, {"kind", "domain", "parameters"}, path);
    const std::string kind = text(member(value, "kind", path), path + ".kind");
    const std::vector<double> domain = numbers(member(value, "domain", path), path + ".domain");
    if (domain.size() != 2 || !(domain[0] < domain[1])) schema_error(path + ".domain", "expected [lo, hi] with lo < hi");
    const Interval I{domain[0], domain[1]};
    const std::vector<double> params = numbers(member(value, "parameters", path), path + ".parameters");
    const auto arity = [&](std::size_t size) {
        if (params.size() != size)
            schema_error(path + ".parameters", kind + " takes " + std::to_string(size) + " parameters");
    };
    if (kind == "polynomial") {
        if (params.empty()) schema_error(path + ".parameters", "polynomial needs at least one coefficient");
        return ScalarFunction::polynomial(params, I);
    }
    if (kind == "sine") {
        arity(4);
        return ScalarFunction::sine(params[0], params[1], params[2], params[3], I);
    }
    if (kind == "exponential") {
        arity(3);
        return ScalarFunction::exponential(params[0], params[1], params[2], I);
    }
    if (kind == "sampled") {
        if (params.size() < 16) schema_error(path + ".parameters", "sampled functions need at least 16 samples");
        return ScalarFunction::sampled(params, I);
    }
    schema_error(path + ".kind", "unknown function kind '" + kind + "'");
}

std::vector<std::pair<std::string, ScalarFunction>> named_functions(const smooth::Surface& s) {
    return std::visit(
        [](const auto& x) -> std::vector<std::pair<std::string, ScalarFunction>> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, smooth::TranslationalSurface>)
                return {{"x", x.x}, {"y", x.y}, {"f", x.f}, {"z", x.z}};
            else if constexpr (std::is_same_v<T, smooth::MoldingSurface>)
                return {{"g", x.g}, {"psi", x.psi}, {"f", x.f}, {"z", x.z}};
            else if constexpr (std::is_same_v<T, smooth::AxialSurface>)
                return {{"c", x.c}, {"phi", x.phi}, {"f", x.f}, {"z", x.z}};
            else if constexpr (std::is_same_v<T, smooth::RevolutionSurface>)
                return {{"phi", x.phi}, {"f", x.f}, {"z", x.z}};
            else
                return {{"g", x.g}, {"psi", x.psi}, {"c", x.c}, {"phi", x.phi}, {"f", x.f}, {"z", x.z}};
        },
        s);
}

json smooth_payload(const smooth::Surface& s) {
    json functions = json::object();
    for (const auto& [name, f] : named_functions(s)) functions[name] = function_json(f);
    return {{"class", std::string(smooth::class_name(s))}, {"functions", functions}};
}

std::string function_path(const std::string& name) { return "payload.functions." + name; }

smooth::Surface parse_smooth(const json& p) {
    const std::string base = "payload";
    require_keys(p, {"class", "functions"}, base);
    const std::string cls = text(member(p, "class", base), base + ".class");
    const json& fs = member(p, "functions", base);
    const std::map<std::string, std::vector<std::string>> layout = {
        {"translational", {"x", "y", "f", "z"}}, {"molding", {"g", "psi", "f", "z"}},
        {"axial", {"c", "phi", "f", "z"}},       {"revolution", {"phi", "f", "z"}},
        {"general", {"g", "psi", "c", "phi", "f", "z"}}};
    const auto it = layout.find(cls);
    if (it == layout.end()) schema_error(base + ".class", "unknown surface class '" + cls + "'");
    require_keys(fs, std::set<std::string>(it->second.begin(), it->second.end()), base + ".functions");
    std::map<std::string, ScalarFunction> f;
    for (const std::string& name : it->second) f[name] = parse_function(member(fs, name, base + ".functions"), function_path(name));

    const auto same_domain = [&](const std::vector<std::string>& names) {
        for (const std::string& name : names)
            if (!(f[name].domain() == f[names.front()].domain()))
                throw Error(ErrorCode::InvariantViolation, "domain differs from " + names.front() + "'s",
                            function_path(name) + ".domain");
    };
    smooth::Surface s;
    try {
        if (cls == "translational") {
            same_domain({"x", "y"});
            same_domain({"f", "z"});
            s = smooth::TranslationalSurface{f["x"], f["y"], f["f"], f["z"]};
        } else if (cls == "molding") {
            same_domain({"g", "psi"});
            same_domain({"f", "z"});
            s = smooth::MoldingSurface(f["g"], f["psi"], f["f"], f["z"]);
        } else if (cls == "axial") {
            same_domain({"c", "phi"});
            same_domain({"f", "z"});
            s = smooth::AxialSurface{f["c"], f["phi"], f["f"], f["z"]};
        } else if (cls == "revolution") {
            same_domain({"f", "z"});
            s = smooth::RevolutionSurface{f["phi"], f["f"], f["z"]};
        } else {
            same_domain({"g", "psi", "c", "phi"});
            same_domain({"f", "z"});
            s = smooth::SmoothSpec(f["g"], f["psi"], f["c"], f["phi"], f["f"], f["z"]);
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvariantViolation) throw;
        throw Error(ErrorCode::InvariantViolation, e.what(), e.field().empty() ? base : function_path(e.field()));
    }

    static constexpr const char* issue_fields[] = {"", "f", "z", "z", "psi", "phi", "c", "g"};
    std::vector<smooth::SpecIssue> issues;
    try {
        issues = smooth::check_spec(smooth::to_spec(s));
    } catch (const Error& e) {
        throw Error(ErrorCode::InvariantViolation, e.what(), e.field().empty() ? base : function_path(e.field()));
    }
    // The special classes are valid by construction apart from degenerate
    // profiles; the general class must satisfy every condition.
    for (const smooth::SpecIssue& issue : issues) {
        if (cls != "general" && issue.condition != 2 && issue.condition != 3) continue;
        throw Error(ErrorCode::InvariantViolation, issue.message, function_path(issue_fields[issue.condition]));
    }
    return s;
}

}  // namespace

std::string to_json(const DesignDocument& doc) {
    json j;
    j["schema_version"] = doc.schema_version;
    j["kind"] = std::string(doc.kind());
    j["payload"] = doc.discrete() ? discrete_payload(doc.design()) : smooth_payload(doc.surface());
    j["metadata"] = {{"name", doc.metadata.name}, {"created_at", doc.metadata.created_at}};
    return j.dump(2) + "\n";
}

DesignDocument from_json(std::string_view text_in) {
    json j;
    try {
        j = json::parse(text_in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SchemaViolation, std::string("invalid JSON: ") + e.what(), "");
    }
    require_keys(j, {"schema_version", "kind", "payload", "metadata"}, "document");
    DesignDocument doc;
    const json& version = member(j, "schema_version", "document");
    if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
        schema_error("schema_version", "unsupported schema version");
    const std::string kind = text(member(j, "kind", "document"), "kind");
    const json& payload = member(j, "payload", "document");
    if (kind == "discrete") doc.payload = parse_discrete(payload);
    else if (kind == "smooth") doc.payload = parse_smooth(payload);
    else schema_error("kind", "expected 'discrete' or 'smooth'");
    if (j.contains("metadata")) {
        const json& meta = j["metadata"];
        require_keys(meta, {"name", "created_at"}, "metadata");
        if (meta.contains("name")) doc.metadata.name = text(meta["name"], "metadata.name");
        if (meta.contains("created_at")) doc.metadata.created_at = text(meta["created_at"], "metadata.created_at");
    }
    return doc;
}

void save(const DesignDocument& doc, const std::filesystem::path& path) {
    const std::string body = to_json(doc);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing", "path");
    out << body;
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string(), "path");
}

DesignDocument load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string(), "path");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json(buffer.str());
}

std::string content_id(const DesignDocument& doc) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char ch : to_json(doc)) {
        hash ^= ch;
        hash *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace thedra::workbench
