#include "geocover/instance.hpp"

#include "geocover/errors.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace geocover {

using nlohmann::json;

std::string serialize_instance(const Instance& inst)
{
    json pts = json::array();
    for (const auto& p : inst.points) {
        json coords = json::array();
        for (const auto& c : p.coords())
            coords.push_back(format_rational(c));
        pts.push_back(std::move(coords));
    }
    json doc = {
        {"dimension", inst.dimension()},
        {"family", std::string(family_name(inst.family))},
        {"k", inst.k},
        {"points", std::move(pts)},
        {"metadata", inst.metadata},
    };
    return doc.dump(2) + "\n";
}

namespace {

const json& field(const json& doc, const char* name)
{
    auto it = doc.find(name);
    if (it == doc.end())
        throw InvalidInput(std::string("instance is missing '") + name + "'");
    return *it;
}

} // namespace

Instance parse_instance(std::string_view text, const ParseOptions& opts)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed instance: ") + e.what());
    }
    if (!doc.is_object())
        throw InvalidInput("instance must be a JSON object");
    Instance inst;
    const auto& fam = field(doc, "family");
    const auto& dim = field(doc, "dimension");
    const auto& k = field(doc, "k");
    const auto& pts = field(doc, "points");
    if (!fam.is_string() || !dim.is_number_integer() || !k.is_number_integer() || !pts.is_array())
        throw InvalidInput("instance fields have the wrong types");
    inst.family = parse_family(fam.get<std::string>());
    if (dim.get<int>() != inst.dimension())
        throw InvalidInput("dimension does not match the family");
    inst.k = k.get<int>();
    if (inst.k < 0)
        throw InvalidInput("k must be nonnegative");
    std::set<Point> seen;
    for (const auto& p : pts) {
        if (!p.is_array() || static_cast<int>(p.size()) != inst.dimension())
            throw InvalidInput("every point needs " + std::to_string(inst.dimension()) + " coordinates");
        std::vector<Rational> coords;
        for (const auto& c : p) {
            if (!c.is_string())
                throw InvalidInput("coordinates are fraction strings");
            coords.push_back(parse_rational(c.get<std::string>()));
        }
        Point q(std::move(coords));
        if (!seen.insert(q).second) {
            if (!opts.dedup)
                throw InvalidInput("duplicate point " + q.to_string());
            if (opts.warnings)
                *opts.warnings << "warning: dropping duplicate point " << q.to_string() << "\n";
            continue;
        }
        inst.points.push_back(std::move(q));
    }
    if (auto it = doc.find("metadata"); it != doc.end()) {
        if (!it->is_object())
            throw InvalidInput("metadata must be an object");
        inst.metadata = *it;
    }
    return inst;
}

Instance read_instance(const std::string& path, const ParseOptions& opts)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str(), opts);
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidInput("cannot write " + path);
    out << text;
}

} // namespace geocover
