#pragma once

#include "geocover/geometry.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace geocover {

struct Instance {
    FamilyKind family = FamilyKind::line2;
    int k = 1;
    std::vector<Point> points;
    nlohmann::json metadata = nlohmann::json::object();

    int dimension() const { return ambient_dimension(family); }
    FamilySpec spec() const { return family_spec(family, k); }

    friend bool operator==(const Instance& a, const Instance& b)
    {
        return a.family == b.family && a.k == b.k && a.points == b.points && a.metadata == b.metadata;
    }
};

struct ParseOptions {
    // drop repeated points with a warning instead of rejecting the file
    bool dedup = false;
    std::ostream* warnings = nullptr;
};

std::string serialize_instance(const Instance& inst);
Instance parse_instance(std::string_view text, const ParseOptions& opts = {});

Instance read_instance(const std::string& path, const ParseOptions& opts = {});
void write_text_file(const std::string& path, const std::string& text);

} // namespace geocover
