#include "plan.hpp"

#include <set>
#include <stdexcept>

#include "json.hpp"

#include "domany/io.hpp"

namespace domany::cli {

namespace {

using nlohmann::json;

[[noreturn]] void plan_error(const std::string& what) {
    throw std::runtime_error("plan: " + what);
}

// Scalar-or-array field -> vector of T via per-element converter.
template <class T, class Conv>
std::vector<T> as_list(const json& value, const char* key, Conv conv) {
    std::vector<T> out;
    if (value.is_array()) {
        for (const auto& item : value) out.push_back(conv(item));
    } else {
        out.push_back(conv(value));
    }
    if (out.empty()) plan_error(std::string("'") + key + "' must not be empty");
    return out;
}

std::string as_string(const json& v, const char* key) {
    if (!v.is_string()) plan_error(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

} // namespace

PlanOverlay parse_plan(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        plan_error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) plan_error("top level must be an object");

    static const std::set<std::string> known{
        "observable", "model",  "p",    "n",      "L",          "boundary",
        "replicates", "seed",   "workers", "separations", "pair",   "graph",
        "sub",        "radius", "dir",  "sign",
    };
    for (const auto& [key, value] : doc.items())
        if (!known.count(key)) plan_error("unknown key '" + key + "'");

    PlanOverlay o;
    for (const auto& [key, value] : doc.items()) {
        if (key == "observable") {
            o.observable = as_string(value, "observable");
        } else if (key == "model") {
            o.model = as_string(value, "model");
        } else if (key == "boundary") {
            o.boundary = as_string(value, "boundary");
        } else if (key == "pair") {
            o.pair = as_string(value, "pair");
        } else if (key == "graph") {
            o.graph = as_string(value, "graph");
        } else if (key == "sub") {
            o.sub = as_string(value, "sub");
        } else if (key == "dir") {
            o.dir = as_string(value, "dir");
        } else if (key == "p") {
            o.ps = as_list<double>(value, "p", [](const json& v) {
                if (!v.is_number()) plan_error("'p' entries must be numbers");
                return v.get<double>();
            });
        } else if (key == "n") {
            o.times = as_list<std::string>(value, "n", [](const json& v) {
                if (v.is_string()) return v.get<std::string>();
                if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
                plan_error("'n' entries must be integers or \"inf\"");
            });
        } else if (key == "L") {
            o.sizes = as_list<std::int32_t>(value, "L", [](const json& v) {
                if (!v.is_number_integer()) plan_error("'L' entries must be integers");
                return std::int32_t(v.get<std::int64_t>());
            });
        } else if (key == "separations") {
            o.separations = as_list<std::int64_t>(value, "separations", [](const json& v) {
                if (!v.is_number_integer()) plan_error("'separations' entries must be integers");
                return v.get<std::int64_t>();
            });
        } else if (key == "replicates") {
            if (!value.is_number_integer()) plan_error("'replicates' must be an integer");
            o.replicates = value.get<std::int64_t>();
        } else if (key == "seed") {
            if (!value.is_number_unsigned() && !value.is_number_integer())
                plan_error("'seed' must be an integer");
            o.seed = value.get<std::uint64_t>();
        } else if (key == "workers") {
            if (!value.is_number_integer()) plan_error("'workers' must be an integer");
            o.workers = value.get<int>();
        } else if (key == "radius") {
            if (!value.is_number()) plan_error("'radius' must be a number");
            o.radius = value.get<double>();
        } else if (key == "sign") {
            if (!value.is_number_integer()) plan_error("'sign' must be +1 or -1");
            o.sign = value.get<int>();
        }
    }
    return o;
}

void apply_overlay(const PlanOverlay& o, MeasureOptions& opt) {
    if (o.observable) opt.observable = *o.observable;
    if (o.model) opt.model = parse_model(*o.model);
    if (o.boundary) opt.boundary = parse_boundary(*o.boundary);
    if (o.pair) opt.pair = parse_pair(*o.pair);
    if (o.graph) opt.graph = parse_graph(*o.graph);
    if (o.sub) opt.center_sub = parse_sub(*o.sub);
    if (o.dir) opt.dir = parse_dir(*o.dir);
    if (o.ps) opt.ps = *o.ps;
    if (o.times) {
        opt.times.clear();
        for (const std::string& t : *o.times) opt.times.push_back(parse_time(t));
    }
    if (o.sizes) opt.sizes = *o.sizes;
    if (o.separations) opt.separations = *o.separations;
    if (o.replicates) opt.replicates = *o.replicates;
    if (o.seed) opt.seed = *o.seed;
    if (o.workers) opt.workers = *o.workers;
    if (o.radius) opt.radius = *o.radius;
    if (o.sign) opt.sign = *o.sign;
}

Model parse_model(const std::string& s) {
    if (s == "domany") return Model::domany;
    if (s == "independent") return Model::independent;
    throw std::invalid_argument("model must be 'domany' or 'independent', got '" + s + "'");
}

Boundary parse_boundary(const std::string& s) {
    if (s == "periodic") return Boundary::periodic;
    if (s == "free") return Boundary::free;
    throw std::invalid_argument("boundary must be 'periodic' or 'free', got '" + s + "'");
}

PairKind parse_pair(const std::string& s) {
    if (s == "BB") return PairKind::BB;
    if (s == "AA") return PairKind::AA;
    if (s == "AB") return PairKind::AB;
    throw std::invalid_argument("pair must be 'BB', 'AA' or 'AB', got '" + s + "'");
}

GraphKind parse_graph(const std::string& s) {
    if (s == "hex") return GraphKind::hex;
    if (s == "tri") return GraphKind::tri;
    throw std::invalid_argument("graph must be 'hex' or 'tri', got '" + s + "'");
}

Sub parse_sub(const std::string& s) {
    if (s == "A") return Sub::A;
    if (s == "B") return Sub::B;
    throw std::invalid_argument("sub must be 'A' or 'B', got '" + s + "'");
}

CrossDir parse_dir(const std::string& s) {
    if (s == "u") return CrossDir::u;
    if (s == "v") return CrossDir::v;
    throw std::invalid_argument("dir must be 'u' or 'v', got '" + s + "'");
}

std::string to_string(Boundary b) {
    return b == Boundary::periodic ? "periodic" : "free";
}
std::string to_string(Sub s) {
    return s == Sub::A ? "A" : "B";
}
std::string to_string(GraphKind g) {
    return g == GraphKind::hex ? "hex" : "tri";
}
std::string to_string(CrossDir d) {
    return d == CrossDir::u ? "u" : "v";
}

} // namespace domany::cli
