#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "thedra/design.hpp"
#include "thedra/smooth/surfaces.hpp"

namespace thedra::workbench {

inline constexpr int kSchemaVersion = 1;

struct Metadata {
    std::string name;
    std::string created_at;  // ISO 8601, stored verbatim

    bool operator==(const Metadata&) const = default;
};

// A discrete design or a smooth T-surface plus metadata. Smooth functions
// without a closed form are stored as 257 uniform samples.
struct DesignDocument {
    int schema_version = kSchemaVersion;
    std::variant<DesignData, smooth::Surface> payload;
    Metadata metadata;

    bool discrete() const noexcept { return payload.index() == 0; }
    std::string_view kind() const noexcept { return discrete() ? "discrete" : "smooth"; }
    const DesignData& design() const { return std::get<DesignData>(payload); }
    const smooth::Surface& surface() const { return std::get<smooth::Surface>(payload); }
};

// Canonical JSON text (two-space indent, keys sorted, trailing newline).
std::string to_json(const DesignDocument& doc);
// Parses and validates. Errors: SchemaViolation for malformed structure,
// InvariantViolation when the data break a module invariant; the error field
// is a path such as "payload.z[2]".
DesignDocument from_json(std::string_view text);

void save(const DesignDocument& doc, const std::filesystem::path& path);
DesignDocument load(const std::filesystem::path& path);

// 16 hex digits of FNV-1a over the canonical JSON.
std::string content_id(const DesignDocument& doc);

// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace thedra::workbench
