#pragma once

// Textual state-file format.
//
//   # '#' starts a comment that runs to end of line; blank lines are ignored
//   dims: d1 d2 ... dN          integer d_i >= 2
//   kind: pure | mixed
//   a <index> <re> <im>         pure body: amplitude at flat index
//   m <row> <col> <re> <im>     mixed body: matrix entry
//
// Unspecified amplitudes/entries are zero; a duplicate index or position is an
// error. Mixed files must specify (r,c) and (c,r) together or not at all;
// Hermiticity is validated, never inferred. Serialization emits the same
// grammar with 17-significant-digit floats.

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ebar/state.hpp"

namespace ebar {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    explicit ParseError(const std::string& message) : std::runtime_error(message), line_(0) {}

    // 0 when the error is not tied to a single line.
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct ParsedState {
    State state;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        if (i > start) {
            tokens.push_back(line.substr(start, i - start));
        }
    }
    return tokens;
}

inline std::size_t parse_index(std::string_view token, std::size_t lineno, const char* what) {
    std::size_t value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(lineno, std::string("expected an unsigned integer for ") + what +
                                     ", got '" + std::string(token) + "'");
    }
    return value;
}

inline double parse_float(std::string_view token, std::size_t lineno, const char* what) {
    const std::string buf(token);
    char* end = nullptr;
    const double value = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty()) {
        throw ParseError(lineno, std::string("expected a decimal float for ") + what + ", got '" +
                                     buf + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(lineno, std::string(what) + " must be finite");
    }
    return value;
}

inline void format_float(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace detail

inline ParsedState parse_state(std::istream& in) {
    std::string raw;
    std::size_t lineno = 0;

    struct Line {
        std::size_t number;
        std::vector<std::string_view> tokens;
        std::string storage;
    };

    auto next_line = [&](Line& out) -> bool {
        while (std::getline(in, raw)) {
            ++lineno;
            if (auto hash = raw.find('#'); hash != std::string::npos) {
                raw.erase(hash);
            }
            out.storage = raw;
            out.tokens = detail::tokenize(out.storage);
            if (!out.tokens.empty()) {
                out.number = lineno;
                return true;
            }
        }
        return false;
    };

    Line line;
    if (!next_line(line)) {
        throw ParseError(lineno, "expected 'dims:' line before end of input");
    }
    if (line.tokens[0] != "dims:" || line.tokens.size() < 2) {
        throw ParseError(line.number, "expected 'dims: d1 d2 ...'");
    }
    std::vector<std::size_t> dims;
    for (std::size_t k = 1; k < line.tokens.size(); ++k) {
        dims.push_back(detail::parse_index(line.tokens[k], line.number, "a dimension"));
    }
    std::size_t dims_line = line.number;

    if (!next_line(line)) {
        throw ParseError(lineno, "expected 'kind:' line before end of input");
    }
    if (line.tokens[0] != "kind:" || line.tokens.size() != 2 ||
        (line.tokens[1] != "pure" && line.tokens[1] != "mixed")) {
        throw ParseError(line.number, "expected 'kind: pure' or 'kind: mixed'");
    }
    const bool pure = line.tokens[1] == "pure";

    SubsystemShape shape = [&] {
        try {
            return SubsystemShape(dims);
        } catch (const std::invalid_argument& e) {
            throw ParseError(dims_line, e.what());
        }
    }();
    const std::size_t total = shape.total();

    std::vector<Complex> amplitudes(pure ? total : 0);
    ComplexMatrix matrix(pure ? 0 : total, pure ? 0 : total);
    std::vector<bool> seen(pure ? total : total * total, false);

    while (next_line(line)) {
        const auto& t = line.tokens;
        if (pure) {
            if (t[0] != "a" || t.size() != 4) {
                throw ParseError(line.number, "expected 'a <index> <re> <im>'");
            }
            const std::size_t idx = detail::parse_index(t[1], line.number, "an amplitude index");
            if (idx >= total) {
                throw ParseError(line.number, "amplitude index " + std::to_string(idx) +
                                                  " out of range (total dimension " +
                                                  std::to_string(total) + ")");
            }
            if (seen[idx]) {
                throw ParseError(line.number,
                                 "duplicate amplitude index " + std::to_string(idx));
            }
            seen[idx] = true;
            amplitudes[idx] = Complex(detail::parse_float(t[2], line.number, "the real part"),
                                      detail::parse_float(t[3], line.number, "the imaginary part"));
        } else {
            if (t[0] != "m" || t.size() != 5) {
                throw ParseError(line.number, "expected 'm <row> <col> <re> <im>'");
            }
            const std::size_t row = detail::parse_index(t[1], line.number, "a row");
            const std::size_t col = detail::parse_index(t[2], line.number, "a column");
            if (row >= total || col >= total) {
                throw ParseError(line.number, "entry (" + std::to_string(row) + "," +
                                                  std::to_string(col) +
                                                  ") out of range (total dimension " +
                                                  std::to_string(total) + ")");
            }
            if (seen[row * total + col]) {
                throw ParseError(line.number, "duplicate entry (" + std::to_string(row) + "," +
                                                  std::to_string(col) + ")");
            }
            seen[row * total + col] = true;
            matrix(row, col) = Complex(detail::parse_float(t[3], line.number, "the real part"),
                                       detail::parse_float(t[4], line.number, "the imaginary part"));
        }
    }

    std::vector<std::string> warnings;
    if (pure) {
        double norm2 = 0.0;
        for (const Complex& a : amplitudes) {
            norm2 += std::norm(a);
        }
        const double norm = std::sqrt(norm2);
        const double dev = std::abs(norm - 1.0);
        if (dev > 1e-6) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.3e", dev);
            throw ParseError(std::string("pure state norm deviates from 1 by ") + buf +
                             " (limit 1e-06)");
        }
        if (dev > 1e-12) {
            for (Complex& a : amplitudes) {
                a /= norm;
            }
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.3e", dev);
            warnings.push_back(std::string("state norm deviated from 1 by ") + buf +
                               "; renormalized");
        }
        return ParsedState{State(PureState(std::move(shape), std::move(amplitudes))),
                           std::move(warnings)};
    }

    // Both (r,c) and (c,r) must be given, or neither; conjugate-filling one
    // from the other would hide input errors.
    for (std::size_t r = 0; r < total; ++r) {
        for (std::size_t c = r + 1; c < total; ++c) {
            if (seen[r * total + c] != seen[c * total + r]) {
                const auto present = seen[r * total + c] ? std::make_pair(r, c)
                                                         : std::make_pair(c, r);
                throw ParseError("entry (" + std::to_string(present.first) + "," +
                                 std::to_string(present.second) +
                                 ") specified without its conjugate partner (" +
                                 std::to_string(present.second) + "," +
                                 std::to_string(present.first) + ")");
            }
        }
    }
    try {
        return ParsedState{State(DensityMatrix(std::move(shape), std::move(matrix))),
                           std::move(warnings)};
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline ParsedState parse_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open state file '" + path + "'");
    }
    return parse_state(in);
}

namespace detail {

inline void serialize_header(std::string& out, const SubsystemShape& shape, bool pure) {
    out += "dims:";
    for (std::size_t d : shape.dims()) {
        out += ' ';
        out += std::to_string(d);
    }
    out += "\nkind: ";
    out += pure ? "pure" : "mixed";
    out += '\n';
}

}  // namespace detail

inline void serialize_state(const PureState& psi, std::ostream& out) {
    std::string buf;
    detail::serialize_header(buf, psi.shape(), true);
    const auto& a = psi.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) {
            continue;
        }
        buf += "a ";
        buf += std::to_string(i);
        buf += ' ';
        detail::format_float(buf, a[i].real());
        buf += ' ';
        detail::format_float(buf, a[i].imag());
        buf += '\n';
    }
    out << buf;
}

inline void serialize_state(const DensityMatrix& rho, std::ostream& out) {
    std::string buf;
    detail::serialize_header(buf, rho.shape(), false);
    const std::size_t n = rho.shape().total();
    const auto& m = rho.matrix();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            // Emit (r,c) whenever (r,c) or its partner (c,r) is nonzero, so
            // the structural pairing rule above always round-trips.
            if (m(r, c) == 0.0 && m(c, r) == 0.0) {
                continue;
            }
            buf += "m ";
            buf += std::to_string(r);
            buf += ' ';
            buf += std::to_string(c);
            buf += ' ';
            detail::format_float(buf, m(r, c).real());
            buf += ' ';
            detail::format_float(buf, m(r, c).imag());
            buf += '\n';
        }
    }
    out << buf;
}

inline void serialize_state(const State& s, std::ostream& out) {
    std::visit([&](const auto& v) { serialize_state(v, out); }, s);
}

}  // namespace ebar
