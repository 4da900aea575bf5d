#pragma once

#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "family.hpp"
#include "numbers.hpp"
#include "search.hpp"

namespace mpfam {

/// Insertion-ordered JSON so emitted documents keep their key order stable
/// across runs; canonical bytes depend on it.
using Json = nlohmann::ordered_json;

/// Counts are exact and may exceed 64 bits; such values are emitted as
/// decimal strings, everything smaller as plain JSON integers.
inline Json count_to_json(const BigCount& v) {
    if (v >= 0 && v <= BigCount(std::numeric_limits<std::uint64_t>::max()))
        return static_cast<std::uint64_t>(v);
    return v.str();
}

inline Json structure_to_json(const PartStructure& ps) {
    Json parts = Json::array();
    for (int s = 1; s <= ps.parts(); ++s) parts.push_back(Json{{"n", ps.n(s)}, {"k", ps.k(s)}});
    return parts;
}

/// The interchange document: {"parts":[{"n":..,"k":..},...],"sets":[...]}
/// with one entry per member, each a list of p sorted per-part value lists.
inline Json family_to_json(const Family& fam) {
    const PartStructure& ps = fam.structure();
    Json doc;
    doc["parts"] = structure_to_json(ps);
    Json sets = Json::array();
    for (const MultiPartSet& m : fam.members()) sets.push_back(m.values(ps));
    doc["sets"] = std::move(sets);
    return doc;
}

/// Canonical serialized form: compact dump plus one trailing newline.
/// Members are stored in canonical order, so equal families always produce
/// identical bytes.
inline std::string canonical_bytes(const Family& fam) { return family_to_json(fam).dump() + "\n"; }

namespace detail {

inline int json_int(const Json& j, const char* what) {
    if (!j.is_number_integer())
        throw ParseError(std::string("expected an integer for ") + what);
    return j.get<int>();
}

}  // namespace detail

inline PartStructure structure_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("parts"))
        throw ParseError("family document: missing \"parts\"");
    const Json& parts = doc["parts"];
    if (!parts.is_array() || parts.empty())
        throw ParseError("family document: \"parts\" must be a nonempty list");
    std::vector<int> n, k;
    for (const Json& part : parts) {
        if (!part.is_object() || !part.contains("n") || !part.contains("k"))
            throw ParseError("family document: each part needs \"n\" and \"k\"");
        n.push_back(detail::json_int(part["n"], "\"n\""));
        k.push_back(detail::json_int(part["k"], "\"k\""));
    }
    return PartStructure(std::move(n), std::move(k));
}

/// Parse the interchange document. Shape violations raise ParseError; value
/// lists of the wrong size for their part raise StructureMismatchError, as
/// the document is well-formed but describes sets outside the layer.
inline Family family_from_json(const Json& doc) {
    PartStructure ps = structure_from_json(doc);
    if (!doc.contains("sets") || !doc["sets"].is_array())
        throw ParseError("family document: missing \"sets\" list");
    std::vector<MultiPartSet> members;
    for (const Json& set : doc["sets"]) {
        if (!set.is_array() || static_cast<int>(set.size()) != ps.parts())
            throw ParseError("family document: each set needs one value list per part");
        std::vector<std::vector<int>> lists;
        for (const Json& lst : set) {
            if (!lst.is_array()) throw ParseError("family document: part values must be a list");
            std::vector<int> vals;
            for (const Json& v : lst) vals.push_back(detail::json_int(v, "a set value"));
            lists.push_back(std::move(vals));
        }
        members.emplace_back(ps, lists);
    }
    return Family(std::move(ps), std::move(members));
}

inline Family family_from_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return family_from_json(doc);
}

inline Family read_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return family_from_text(buf.str());
}

/// Search report document with pinned key order:
/// {"instance":{"n":[..],"k":[..]},"mode":..,"size":..,"status":..,
///  "matches_m_max":..,"nodes":..,"ms":..}
/// matches_m_max is null when no closed-form candidate applies.
inline Json report_to_json(const PartStructure& ps, SearchMode mode, const SearchResult& res,
                           std::optional<bool> matches_m_max) {
    Json instance;
    instance["n"] = ps.sizes();
    instance["k"] = ps.uniformities();
    Json doc;
    doc["instance"] = std::move(instance);
    doc["mode"] = to_string(mode);
    doc["size"] = res.size;
    doc["status"] = to_string(res.status);
    doc["matches_m_max"] = matches_m_max ? Json(*matches_m_max) : Json(nullptr);
    doc["nodes"] = res.nodes;
    doc["ms"] = res.ms;
    return doc;
}

}  // namespace mpfam
