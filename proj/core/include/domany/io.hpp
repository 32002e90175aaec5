#pragma once

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "domany/automaton.hpp"
#include "domany/estimators.hpp"

namespace domany {

// One measured number with enough context to reproduce it.  Serialized as a
// CSV row under the header
//   observable,model,p,n,L,boundary,param,value,stderr,replicates,seed
// where n is a sweep count or "inf" and param is a free-form qualifier such
// as "k=8" or "sub=A" (no commas).
struct ObservationRecord {
    std::string observable;
    std::string model;
    double p = 0.0;
    TimeSpec n = TimeSpec::at(1);
    std::int32_t L = 0;
    std::string boundary; // "periodic" | "free"
    std::string param;
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t replicates = 0;
    std::uint64_t seed = 0;
};

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double x);

// "inf" or a non-negative integer.  Throws std::invalid_argument otherwise.
TimeSpec parse_time(const std::string& text);

// Writes header plus rows sorted by (observable, model, p, n, L, boundary,
// param) so identical result sets serialize byte-identically regardless of
// production order.
void write_observations_csv(std::ostream& os, std::vector<ObservationRecord> records);

// Inverse of write_observations_csv; throws std::runtime_error naming the
// offending line on malformed input.
std::vector<ObservationRecord> read_observations_csv(std::istream& is);

// Per-sweep log of one relaxation: header n,sublattice,flips,energy.
void write_trace_csv(std::ostream& os, const DynamicsTrace& trace);

// Whitespace-separated numeric table with a commented header line, the
// format gnuplot consumes directly.
void write_plot_table(std::ostream& os, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

} // namespace domany
