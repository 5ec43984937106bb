#pragma once

// Catalog ingestion: one JSON object per line, fields per the file format in
// the README (type, p, q, seifert, alexander, flags, name).

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "krl/knots.hpp"

namespace krl {

struct catalog_parse_error : error {
    int line;
    catalog_parse_error(int line_no, const std::string& what) : error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

struct Catalog {
    std::vector<KnotDescriptor> entries;
};

inline KnotDescriptor knot_from_json(const nlohmann::json& j) {
    std::string type = j.at("type").get<std::string>();
    KnotDescriptor k;
    if (type == "torus") {
        k = KnotDescriptor::torus(j.at("p").get<long>(), j.at("q").get<long>());
    } else if (type == "two_bridge") {
        k = KnotDescriptor::two_bridge(j.at("p").get<long>(), j.at("q").get<long>());
    } else if (type == "seifert") {
        auto rows = j.at("seifert");
        int n = static_cast<int>(rows.size());
        IMat V(n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n) throw invalid_descriptor("seifert matrix must be square");
            for (int c = 0; c < n; ++c) V.at(i, c) = Int(rows[i][c].get<long>());
        }
        k = KnotDescriptor::seifert(std::move(V));
    } else if (type == "raw") {
        k = KnotDescriptor::raw(Laurent::parse(j.at("alexander").get<std::string>()));
    } else {
        throw invalid_descriptor("unknown knot type '" + type + "'");
    }
    if (j.contains("flags"))
        for (auto& f : j.at("flags")) k.flags.insert(f.get<std::string>());
    if (j.contains("name")) k.name = j.at("name").get<std::string>();
    return k;
}

inline Catalog load_catalog_text(const std::string& text) {
    Catalog cat;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::set<std::string> names;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            cat.entries.push_back(knot_from_json(nlohmann::json::parse(line)));
        } catch (const catalog_parse_error&) {
            throw;
        } catch (const std::exception& e) {
            throw catalog_parse_error(line_no, e.what());
        }
        const std::string& name = cat.entries.back().name;
        if (!name.empty() && !names.insert(name).second) throw catalog_parse_error(line_no, "duplicate name '" + name + "'");
    }
    return cat;
}

inline Catalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open catalog file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_catalog_text(buf.str());
}

}  // namespace krl
