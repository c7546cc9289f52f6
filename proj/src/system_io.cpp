#include "fusionkit/system_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fusionkit {

namespace {

[[noreturn]] void malformed(const std::string& where, const std::string& what)
{
    throw Error(ErrorCode::MalformedFile, where + ": " + what);
}

int line_of(std::string_view text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        malformed("line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)), e.what());
    }
}

const Json& require(const Json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object())
        malformed(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        malformed(where, std::string("missing key '") + key + "'");
    return *it;
}

double number_at(const Json& v, const std::string& where)
{
    if (!v.is_number())
        malformed(where, "expected a number");
    return v.get<double>();
}

Complex scalar_at(const Json& v, bool complex_field, const std::string& where)
{
    if (!complex_field)
        return {number_at(v, where), 0.0};
    if (!v.is_array() || v.size() != 2)
        malformed(where, "expected an [re, im] pair");
    return {number_at(v[0], where + "[0]"), number_at(v[1], where + "[1]")};
}

bool read_field(const Json& doc, const std::string& where)
{
    const Json& f = require(doc, "field", where);
    if (f == "complex")
        return true;
    if (f == "real")
        return false;
    malformed(where + ".field", "expected \"complex\" or \"real\"");
}

void check_schema(const Json& doc)
{
    const Json& v = require(doc, "schema_version", "$");
    if (!v.is_number_integer() || v.get<int>() != schema_version)
        malformed("$.schema_version", "unsupported schema version (expected 1)");
}

bool is_real(const Matrix& m)
{
    return (m.imag().array() == 0.0).all();
}

Json scalar_json(Complex z, bool real)
{
    if (real)
        return z.real();
    return Json::array({z.real(), z.imag()});
}

} // namespace

SystemFile parse_system(std::string_view text, const Tolerances& tol)
{
    const Json doc = parse_json(text);
    check_schema(doc);
    const bool complex_field = read_field(doc, "$");
    const Json& nj = require(doc, "ambient_dim", "$");
    if (!nj.is_number_integer() || nj.get<long long>() < 1)
        malformed("$.ambient_dim", "expected a positive integer");
    const auto n = static_cast<Eigen::Index>(nj.get<long long>());

    const Json& subs = require(doc, "subspaces", "$");
    if (!subs.is_array() || subs.empty())
        malformed("$.subspaces", "expected a non-empty array");

    std::vector<Member> members;
    for (std::size_t j = 0; j < subs.size(); ++j) {
        const std::string where = "$.subspaces[" + std::to_string(j) + "]";
        const double weight = number_at(require(subs[j], "weight", where), where + ".weight");
        if (!(weight > 0.0))
            throw Error(ErrorCode::NonpositiveWeight, where + ".weight must be > 0");
        const Json& basis = require(subs[j], "basis", where);
        if (!basis.is_array() || basis.empty())
            malformed(where + ".basis", "expected a non-empty array of columns");
        Matrix raw(n, static_cast<Eigen::Index>(basis.size()));
        for (std::size_t c = 0; c < basis.size(); ++c) {
            const std::string cw = where + ".basis[" + std::to_string(c) + "]";
            if (!basis[c].is_array() || static_cast<Eigen::Index>(basis[c].size()) != n)
                malformed(cw, "column length must equal ambient_dim");
            for (Eigen::Index r = 0; r < n; ++r)
                raw(r, static_cast<Eigen::Index>(c)) =
                    scalar_at(basis[c][static_cast<std::size_t>(r)], complex_field, cw + "[" + std::to_string(r) + "]");
        }
        std::string label;
        if (auto it = subs[j].find("label"); it != subs[j].end() && it->is_string())
            label = it->get<std::string>();
        try {
            members.push_back({orthonormalize(raw, tol, label), weight});
        } catch (const Error& e) {
            throw Error(e.code(), where + ".basis: columns are numerically null");
        }
    }

    SystemFile out{FusionSystem(std::move(members))};
    if (auto it = doc.find("metadata"); it != doc.end()) {
        if (!it->is_object())
            malformed("$.metadata", "expected an object");
        out.metadata = *it;
    }
    return out;
}

Json system_to_json(const FusionSystem& sys, const Json& metadata)
{
    bool real = true;
    for (const auto& m : sys.members())
        real = real && is_real(m.subspace.basis());

    Json subs = Json::array();
    for (const auto& m : sys.members()) {
        Json cols = Json::array();
        const Matrix& b = m.subspace.basis();
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
            Json col = Json::array();
            for (Eigen::Index r = 0; r < b.rows(); ++r)
                col.push_back(scalar_json(b(r, c), real));
            cols.push_back(std::move(col));
        }
        Json entry = {{"weight", m.weight}, {"basis", std::move(cols)}};
        if (!m.subspace.label().empty())
            entry["label"] = m.subspace.label();
        subs.push_back(std::move(entry));
    }
    Json doc = {{"schema_version", schema_version},
                {"field", real ? "real" : "complex"},
                {"ambient_dim", sys.ambient_dim()},
                {"subspaces", std::move(subs)}};
    if (!metadata.empty())
        doc["metadata"] = metadata;
    return doc;
}

std::string serialize_system(const FusionSystem& sys, const Json& metadata)
{
    return system_to_json(sys, metadata).dump(2) + "\n";
}

Matrix parse_operator(std::string_view text)
{
    const Json doc = parse_json(text);
    check_schema(doc);
    const bool complex_field = read_field(doc, "$");
    const Json& rows = require(doc, "matrix", "$");
    if (!rows.is_array() || rows.empty())
        malformed("$.matrix", "expected a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const std::string rw = "$.matrix[" + std::to_string(r) + "]";
        const Json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            malformed(rw, "operator must be square");
        for (Eigen::Index c = 0; c < n; ++c)
            m(r, c) = scalar_at(row[static_cast<std::size_t>(c)], complex_field, rw + "[" + std::to_string(c) + "]");
    }
    return m;
}

std::string serialize_operator(const Matrix& m)
{
    const bool real = is_real(m);
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(scalar_json(m(r, c), real));
        rows.push_back(std::move(row));
    }
    Json doc = {{"schema_version", schema_version}, {"field", real ? "real" : "complex"}, {"matrix", std::move(rows)}};
    return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::MalformedFile, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace fusionkit
