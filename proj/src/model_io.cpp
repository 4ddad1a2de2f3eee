#include "niforge/model_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace niforge {

namespace {

using nlohmann::json;

RealMatrix matrix_from_json(const json& array, const std::string& key, const std::string& origin)
{
    if (!array.is_array() || array.empty())
        throw ParseError(origin + ": matrix \"" + key + "\" must be a non-empty array of rows");
    const std::size_t rows = array.size();
    if (!array[0].is_array() || array[0].empty())
        throw ParseError(origin + ": matrix \"" + key + "\" row 0 must be a non-empty array");
    const std::size_t cols = array[0].size();

    RealMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = array[i];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(origin + ": matrix \"" + key + "\" row " + std::to_string(i) +
                             " is not rectangular (expected " + std::to_string(cols) + " entries)");
        for (std::size_t j = 0; j < cols; ++j) {
            const json& cell = row[j];
            if (!cell.is_number())
                throw ParseError(origin + ": matrix \"" + key + "\" entry (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") is not a number");
            const double value = cell.get<double>();
            if (!std::isfinite(value))
                throw ParseError(origin + ": matrix \"" + key + "\" entry (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") is not finite");
            m(static_cast<Index>(i), static_cast<Index>(j)) = value;
        }
    }
    return m;
}

json matrix_to_json(const RealMatrix& m)
{
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

const RealMatrix& pick(const ModelFile& model, const std::string& key)
{
    auto it = model.matrices.find(key);
    if (it == model.matrices.end()) throw ParseError("model \"" + model.name + "\" is missing matrix \"" + key + "\"");
    return it->second;
}

}  // namespace

StateSpace ModelFile::to_state_space() const
{
    if (kind != "statespace") throw ParseError("model \"" + name + "\" has kind \"" + kind + "\", expected statespace");
    return StateSpace(pick(*this, "A"), pick(*this, "B"), pick(*this, "C"), pick(*this, "D"));
}

UncertainPlant ModelFile::to_uncertain_plant() const
{
    if (kind != "uncertain_plant")
        throw ParseError("model \"" + name + "\" has kind \"" + kind + "\", expected uncertain_plant");
    return UncertainPlant(pick(*this, "A"), pick(*this, "B1"), pick(*this, "B2"), pick(*this, "C1"));
}

ModelFile ModelFile::from_state_space(const StateSpace& sys, std::string name)
{
    ModelFile model;
    model.kind = "statespace";
    model.name = std::move(name);
    model.matrices = {{"A", sys.A}, {"B", sys.B}, {"C", sys.C}, {"D", sys.D}};
    return model;
}

ModelFile ModelFile::from_uncertain_plant(const UncertainPlant& plant, std::string name)
{
    ModelFile model;
    model.kind = "uncertain_plant";
    model.name = std::move(name);
    model.matrices = {{"A", plant.A}, {"B1", plant.B1}, {"B2", plant.B2}, {"C1", plant.C1}};
    return model;
}

ModelFile parse_model(const std::string& text, const std::string& origin)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ParseError(origin + ": " + err.what());
    }
    if (!doc.is_object()) throw ParseError(origin + ": model file must be a JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string()) throw ParseError(origin + ": missing string field \"kind\"");

    ModelFile model;
    model.kind = doc["kind"].get<std::string>();
    if (model.kind != "statespace" && model.kind != "uncertain_plant")
        throw ParseError(origin + ": unknown kind \"" + model.kind + "\"");
    model.name = doc.value("name", std::string("unnamed"));

    if (!doc.contains("matrices") || !doc["matrices"].is_object())
        throw ParseError(origin + ": missing object field \"matrices\"");
    for (const auto& [key, value] : doc["matrices"].items())
        model.matrices.emplace(key, matrix_from_json(value, key, origin));

    // Validate dimensions eagerly so parse failures carry file context.
    if (model.kind == "statespace")
        (void)model.to_state_space();
    else
        (void)model.to_uncertain_plant();
    return model;
}

ModelFile load_model(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str(), path.string());
}

std::string format_model(const ModelFile& model)
{
    json doc;
    doc["kind"] = model.kind;
    doc["name"] = model.name;
    json matrices = json::object();
    for (const auto& [key, value] : model.matrices) matrices[key] = matrix_to_json(value);
    doc["matrices"] = std::move(matrices);
    return doc.dump(2) + "\n";
}

void save_model(const ModelFile& model, const std::filesystem::path& path)
{
    write_file_atomic(path, format_model(model));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace niforge
