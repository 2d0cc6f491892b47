#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "imodel/cascade.hpp"

namespace imodel {

enum class CascadeFormat { json, csv };

// Accepts "json" or "csv"; anything else is a ValidationError.
CascadeFormat parse_cascade_format(const std::string& name);

struct LoadOptions {
    // CSV carries no component count; when unset it is inferred as
    // max id + 1. JSON files state it explicitly.
    std::optional<ComponentId> n_components;
    // Keep the first occurrence of a component seen in several generations
    // instead of rejecting the cascade.
    bool dedupe_first = false;
};

CascadeSet load_cascades(const std::filesystem::path& path, CascadeFormat format,
                         const LoadOptions& opts = {});
void save_cascades(const CascadeSet& cs, const std::filesystem::path& path, CascadeFormat format);

// String codecs behind the file API, exposed for tests and bindings.
// Loaders normalize and validate; writers emit the canonical sorted form.
CascadeSet cascades_from_json(const std::string& text, const LoadOptions& opts = {});
std::string cascades_to_json(const CascadeSet& cs);
CascadeSet cascades_from_csv(const std::string& text, const LoadOptions& opts = {});
std::string cascades_to_csv(const CascadeSet& cs);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace imodel
