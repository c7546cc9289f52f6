#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "fusionkit/fusion_frame.hpp"

namespace fusionkit {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

struct SystemFile {
    FusionSystem system;
    Json metadata = Json::object();
};

// Parses SystemFile JSON text. Each basis block is orthonormalized on load;
// order and weights are preserved. Throws MalformedFile naming the line or
// field at fault, ZeroSubspace, or NonpositiveWeight.
SystemFile parse_system(std::string_view text, const Tolerances& tol = {});

// Writes "real" when every entry has a zero imaginary part, else "complex".
Json system_to_json(const FusionSystem& sys, const Json& metadata = Json::object());
std::string serialize_system(const FusionSystem& sys, const Json& metadata = Json::object());

// Operator files carry the same envelope with a single `matrix` key (rows).
Matrix parse_operator(std::string_view text);
std::string serialize_operator(const Matrix& m);

// Reads a whole file; throws MalformedFile when it cannot be opened.
std::string read_file(const std::string& path);

} // namespace fusionkit
