#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "niforge/state_space.hpp"
#include "niforge/types.hpp"

namespace niforge {

// On-disk model: JSON with "kind", "name" and named 2-D arrays under
// "matrices". Rejects non-finite entries; writes full numeric precision.
struct ModelFile
{
    std::string kind;  // "statespace" | "uncertain_plant"
    std::string name;
    std::map<std::string, RealMatrix> matrices;

    StateSpace to_state_space() const;
    UncertainPlant to_uncertain_plant() const;

    static ModelFile from_state_space(const StateSpace& sys, std::string name);
    static ModelFile from_uncertain_plant(const UncertainPlant& plant, std::string name);
};

ModelFile load_model(const std::filesystem::path& path);
ModelFile parse_model(const std::string& text, const std::string& origin = "<string>");

std::string format_model(const ModelFile& model);
void save_model(const ModelFile& model, const std::filesystem::path& path);

// Atomic write (temp file + rename), used for every report/data output.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace niforge
