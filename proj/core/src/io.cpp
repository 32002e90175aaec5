#include "domany/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace domany {

namespace {

constexpr const char* kHeader = "observable,model,p,n,L,boundary,param,value,stderr,replicates,seed";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

[[noreturn]] void bad_line(std::size_t lineno, const std::string& what) {
    throw std::runtime_error("csv line " + std::to_string(lineno) + ": " + what);
}

double parse_double(const std::string& s, std::size_t lineno, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        bad_line(lineno, std::string("bad ") + what + " '" + s + "'");
    }
}

std::int64_t parse_int(const std::string& s, std::size_t lineno, const char* what) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        bad_line(lineno, std::string("bad ") + what + " '" + s + "'");
    }
}

std::uint64_t parse_uint(const std::string& s, std::size_t lineno, const char* what) {
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        bad_line(lineno, std::string("bad ") + what + " '" + s + "'");
    }
}

auto sort_key(const ObservationRecord& r) {
    // Fixation sorts after every finite time.
    std::int64_t n_key = r.n.is_fixation() ? std::numeric_limits<std::int64_t>::max() : r.n.n();
    return std::make_tuple(r.observable, r.model, r.p, n_key, r.L, r.boundary, r.param);
}

} // namespace

std::string format_double(double x) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

TimeSpec parse_time(const std::string& text) {
    if (text == "inf") return TimeSpec::fixation();
    std::size_t pos = 0;
    std::int64_t n = 0;
    try {
        n = std::stoll(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("time must be 'inf' or a non-negative integer, got '" +
                                    text + "'");
    }
    if (pos != text.size() || n < 0)
        throw std::invalid_argument("time must be 'inf' or a non-negative integer, got '" +
                                    text + "'");
    return TimeSpec::at(n);
}

void write_observations_csv(std::ostream& os, std::vector<ObservationRecord> records) {
    for (const ObservationRecord& r : records) {
        for (const std::string* s : {&r.observable, &r.model, &r.boundary, &r.param})
            if (s->find(',') != std::string::npos || s->find('\n') != std::string::npos)
                throw std::invalid_argument("text fields must not contain commas or newlines");
    }
    std::sort(records.begin(), records.end(),
              [](const ObservationRecord& a, const ObservationRecord& b) {
                  return sort_key(a) < sort_key(b);
              });
    os << kHeader << '\n';
    for (const ObservationRecord& r : records) {
        os << r.observable << ',' << r.model << ',' << format_double(r.p) << ','
           << r.n.to_string() << ',' << r.L << ',' << r.boundary << ',' << r.param << ','
           << format_double(r.value) << ',' << format_double(r.std_error) << ',' << r.replicates
           << ',' << r.seed << '\n';
    }
}

std::vector<ObservationRecord> read_observations_csv(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) throw std::runtime_error("csv: empty input");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader)
        throw std::runtime_error("csv: unexpected header '" + line + "'");

    std::vector<ObservationRecord> out;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 11) bad_line(lineno, "expected 11 fields, got " + std::to_string(f.size()));
        ObservationRecord r;
        r.observable = f[0];
        r.model = f[1];
        r.p = parse_double(f[2], lineno, "p");
        try {
            r.n = parse_time(f[3]);
        } catch (const std::invalid_argument& e) {
            bad_line(lineno, e.what());
        }
        r.L = std::int32_t(parse_int(f[4], lineno, "L"));
        r.boundary = f[5];
        r.param = f[6];
        r.value = parse_double(f[7], lineno, "value");
        r.std_error = parse_double(f[8], lineno, "stderr");
        r.replicates = parse_int(f[9], lineno, "replicates");
        r.seed = parse_uint(f[10], lineno, "seed");
        out.push_back(std::move(r));
    }
    return out;
}

void write_trace_csv(std::ostream& os, const DynamicsTrace& trace) {
    os << "n,sublattice,flips,energy\n";
    os << "0,-,0," << trace.initial_energy << '\n';
    for (const TraceEntry& e : trace.steps)
        os << e.n << ',' << (e.updated == Sub::A ? 'A' : 'B') << ',' << e.flips << ','
           << e.energy << '\n';
}

void write_plot_table(std::ostream& os, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
    os << '#';
    for (const std::string& c : columns) os << ' ' << c;
    os << '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::invalid_argument("plot row width does not match column count");
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? " " : "") << format_double(row[i]);
        os << '\n';
    }
}

} // namespace domany
