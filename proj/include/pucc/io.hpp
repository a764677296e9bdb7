#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "pucc/core.hpp"
#include "pucc/driver.hpp"

namespace pucc {

struct ParseError : std::runtime_error {
    int line;
    ParseError(const std::string& what, int line_no)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

namespace detail {

/// Shortest decimal representation that parses back to the same double.
/// Locale-independent by construction.
inline std::string num(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view tok, int line_no) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw ParseError("expected a number, got '" + std::string(tok) + "'", line_no);
    return v;
}

/// Data lines of a text file: comment ('#') and blank lines skipped,
/// original line numbers kept for error messages.
inline std::vector<std::pair<std::string, int>> data_lines(const std::string& text) {
    std::vector<std::pair<std::string, int>> lines;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view t = trim(raw);
        if (t.empty() || t.front() == '#') continue;
        lines.emplace_back(std::string(t), line_no);
    }
    return lines;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Instance files: first data line holds n, the next n lines one radius each.
// ---------------------------------------------------------------------------

inline Instance load_instance(const std::string& text, const std::string& name = "") {
    const auto lines = detail::data_lines(text);
    if (lines.empty()) throw ParseError("empty instance file", 1);
    const double n_val = detail::parse_double(lines[0].first, lines[0].second);
    const int n = static_cast<int>(n_val);
    if (n_val != n || n < 2)
        throw ParseError("disk count must be an integer >= 2", lines[0].second);
    if (static_cast<int>(lines.size()) - 1 < n)
        throw ParseError("expected " + std::to_string(n) + " radii, found " +
                             std::to_string(lines.size() - 1),
                         lines.back().second);
    if (static_cast<int>(lines.size()) - 1 > n)
        throw ParseError("unexpected extra line", lines[n + 1].second);
    std::vector<double> radii(n);
    for (int i = 0; i < n; ++i) {
        radii[i] = detail::parse_double(lines[i + 1].first, lines[i + 1].second);
        if (!(radii[i] > 0.0) || !std::isfinite(radii[i]))
            throw ParseError("radius must be positive", lines[i + 1].second);
    }
    return make_instance(std::move(radii), name);
}

inline std::string write_instance(const Instance& inst) {
    std::string out;
    if (!inst.name.empty()) out += "# " + inst.name + "\n";
    out += std::to_string(inst.n()) + "\n";
    for (double r : inst.radii) out += detail::num(r) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Solution files: first data line holds R, the next n lines "x y" per disk
// in the instance's sorted order.
// ---------------------------------------------------------------------------

inline std::string write_solution(const Solution& sol) {
    std::string out;
    if (!sol.instance_name.empty()) out += "# " + sol.instance_name + "\n";
    out += detail::num(sol.radius) + "\n";
    for (int i = 0; i < sol.pattern.size(); ++i)
        out += detail::num(sol.pattern.x(i)) + " " + detail::num(sol.pattern.y(i)) + "\n";
    return out;
}

/// Reads a solution for the given instance; the recorded violation is
/// recomputed from the coordinates, never trusted from the file.
inline Solution load_solution(const std::string& text, const Instance& inst) {
    const auto lines = detail::data_lines(text);
    if (lines.empty()) throw ParseError("empty solution file", 1);
    if (static_cast<int>(lines.size()) != inst.n() + 1)
        throw ParseError("expected radius plus " + std::to_string(inst.n()) +
                             " center lines, found " + std::to_string(lines.size()),
                         lines.back().second);
    Solution sol;
    sol.instance_name = inst.name;
    sol.radius = detail::parse_double(lines[0].first, lines[0].second);
    sol.pattern = Pattern(inst.n());
    for (int i = 0; i < inst.n(); ++i) {
        const std::string& ln = lines[i + 1].first;
        const auto split = ln.find_first_of(" \t");
        if (split == std::string::npos)
            throw ParseError("expected 'x y'", lines[i + 1].second);
        sol.pattern.x(i) = detail::parse_double(detail::trim(ln.substr(0, split)),
                                                lines[i + 1].second);
        sol.pattern.y(i) = detail::parse_double(detail::trim(ln.substr(split + 1)),
                                                lines[i + 1].second);
    }
    sol.max_violation = max_violation(sol.pattern, inst, sol.radius);
    return sol;
}

// ---------------------------------------------------------------------------
// Verification: an independent recomputation of every overlap, sharing no
// code with the solver's energy evaluation beyond the distance formulas.
// ---------------------------------------------------------------------------

struct VerifyReport {
    bool feasible = false;
    double max_violation = 0.0;
    int worst_i = -1;  // offending disk (container term when worst_j < 0)
    int worst_j = -1;
};

inline VerifyReport verify_solution(const Instance& inst, const Solution& sol,
                                    double tol = 1e-9) {
    if (sol.pattern.size() != inst.n())
        throw std::invalid_argument("verify_solution: pattern size mismatch");
    VerifyReport rep;
    const int n = inst.n();
    for (int i = 0; i < n; ++i) {
        const double depth = std::hypot(sol.pattern.x(i), sol.pattern.y(i)) + inst.radii[i] -
                             sol.radius;
        if (depth > rep.max_violation) {
            rep.max_violation = depth;
            rep.worst_i = i;
            rep.worst_j = -1;
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double depth = inst.radii[i] + inst.radii[j] -
                                 std::hypot(sol.pattern.x(i) - sol.pattern.x(j),
                                            sol.pattern.y(i) - sol.pattern.y(j));
            if (depth > rep.max_violation) {
                rep.max_violation = depth;
                rep.worst_i = i;
                rep.worst_j = j;
            }
        }
    }
    rep.feasible = rep.max_violation <= tol;
    return rep;
}

// ---------------------------------------------------------------------------
// SVG rendering: the container plus one labeled circle per disk, viewport
// padded by 5%. Deterministic byte-for-byte for fixed input.
// ---------------------------------------------------------------------------

inline std::string render_svg(const Instance& inst, const Solution& sol) {
    const double R = sol.radius;
    const double half = 1.05 * R;
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"" +
         detail::num(-half) + " " + detail::num(-half) + " " + detail::num(2 * half) + " " +
         detail::num(2 * half) + "\">\n";
    s += "  <circle cx=\"0\" cy=\"0\" r=\"" + detail::num(R) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"" + detail::num(0.004 * R) +
         "\"/>\n";
    for (int i = 0; i < inst.n(); ++i) {
        s += "  <circle cx=\"" + detail::num(sol.pattern.x(i)) + "\" cy=\"" +
             detail::num(sol.pattern.y(i)) + "\" r=\"" + detail::num(inst.radii[i]) +
             "\" fill=\"#7fb3d5\" fill-opacity=\"0.75\" stroke=\"#1b4f72\" stroke-width=\"" +
             detail::num(0.003 * R) + "\"/>\n";
        s += "  <text x=\"" + detail::num(sol.pattern.x(i)) + "\" y=\"" +
             detail::num(sol.pattern.y(i)) + "\" font-size=\"" + detail::num(0.9 * inst.radii[i]) +
             "\" text-anchor=\"middle\" dominant-baseline=\"central\">" + std::to_string(i + 1) +
             "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

// ---------------------------------------------------------------------------
// CSV exports
// ---------------------------------------------------------------------------

inline std::string write_trace_csv(const std::vector<TraceRecord>& records) {
    std::string out = "restart,round,iteration,event,energy,best_energy\n";
    for (const TraceRecord& r : records) {
        out += std::to_string(r.restart) + "," + std::to_string(r.round) + "," +
               std::to_string(r.iteration) + "," + detail::csv_field(r.event) + "," +
               detail::num(r.energy) + "," + detail::num(r.best_energy) + "\n";
    }
    return out;
}

inline std::string write_history_csv(const std::vector<HistoryRow>& rows) {
    std::string out = "radius,outcome,elapsed_s\n";
    for (const HistoryRow& r : rows)
        out += detail::num(r.radius) + "," + detail::csv_field(r.outcome) + "," +
               detail::num(r.elapsed_seconds) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// File helpers
// ---------------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

}  // namespace pucc
