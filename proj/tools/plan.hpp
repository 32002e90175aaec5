#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "domany/estimators.hpp"

namespace domany::cli {

// Everything the measure command needs; the p/n/L axes are grids and
// multiply out into one run per combination.
struct MeasureOptions {
    std::string observable = "theta"; // theta|tau|chi|xi|fliptail|crossing
    Model model = Model::domany;
    std::vector<double> ps = {0.5};
    std::vector<TimeSpec> times = {TimeSpec::at(1)};
    std::vector<std::int32_t> sizes = {64}; // square boxes, L x L cells
    Boundary boundary = Boundary::periodic;
    std::int64_t replicates = 1000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::vector<std::int64_t> separations = {1, 2, 3, 4, 6, 8};
    PairKind pair = PairKind::BB;
    GraphKind graph = GraphKind::hex;
    Sub center_sub = Sub::B;
    double radius = -1.0;
    CrossDir dir = CrossDir::u;
    int sign = +1;
};

// Plan-file contents: each field optional, applied beneath explicit
// command-line flags (flags win).
struct PlanOverlay {
    std::optional<std::string> observable, model, boundary, pair, graph, sub, dir;
    std::optional<std::vector<double>> ps;
    std::optional<std::vector<std::string>> times;
    std::optional<std::vector<std::int32_t>> sizes;
    std::optional<std::int64_t> replicates;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::vector<std::int64_t>> separations;
    std::optional<double> radius;
    std::optional<int> sign;
};

// Parses the JSON text of a plan file.  Unknown keys and mistyped values
// are errors (std::runtime_error with the key name).
PlanOverlay parse_plan(const std::string& json_text);

// Folds plan values into options; called before flag overrides are applied.
void apply_overlay(const PlanOverlay& overlay, MeasureOptions& opt);

// Enum spellings shared by flags, plan files and CSV output.
Model parse_model(const std::string& s);
Boundary parse_boundary(const std::string& s);
PairKind parse_pair(const std::string& s);
GraphKind parse_graph(const std::string& s);
Sub parse_sub(const std::string& s);
CrossDir parse_dir(const std::string& s);

std::string to_string(Boundary b);
std::string to_string(Sub s);
std::string to_string(GraphKind g);
std::string to_string(CrossDir d);

} // namespace domany::cli
