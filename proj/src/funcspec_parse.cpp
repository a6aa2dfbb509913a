#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "tpc/funcspec.hpp"

namespace tpc {

namespace {

struct Line {
    std::size_t number;
    std::string text;
};

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Non-empty lines with comments stripped.
std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++number;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        if (auto t = trim(raw); !t.empty()) out.push_back({number, std::move(t)});
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

// "key: value" -> value, or throws.
std::string header_value(const Line& line, std::string_view key) {
    const auto colon = line.text.find(':');
    if (colon == std::string::npos || trim(std::string_view(line.text).substr(0, colon)) != key)
        throw ParseError(line.number, "expected '" + std::string(key) + ": ...'");
    return trim(std::string_view(line.text).substr(colon + 1));
}

bool parse_size(const std::string& tok, std::size_t& out) {
    const char* end = tok.data() + tok.size();
    auto [p, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc() && p == end;
}

bool parse_int64(std::string_view tok, std::int64_t& out) {
    const char* end = tok.data() + tok.size();
    auto [p, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc() && p == end && !tok.empty();
}

}  // namespace

Rational parse_rational(std::string_view token) {
    const auto bad = [&] { return std::invalid_argument("'" + std::string(token) + "' is not a rational number"); };
    if (token.empty()) throw bad();
    if (const auto slash = token.find('/'); slash != std::string_view::npos) {
        std::int64_t num = 0, den = 0;
        if (!parse_int64(token.substr(0, slash), num) || !parse_int64(token.substr(slash + 1), den) || den == 0)
            throw bad();
        return Rational(num, den);
    }
    bool negative = false;
    std::string_view body = token;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto dot = body.find('.');
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw bad();
    if (frac.size() > 15 || whole.size() > 3) throw bad();
    std::int64_t w = 0, fr = 0, scale = 1;
    if (!whole.empty() && !parse_int64(whole, w)) throw bad();
    if (!frac.empty() && !parse_int64(frac, fr)) throw bad();
    for (std::size_t d = 0; d < frac.size(); ++d) scale *= 10;
    for (char c : whole) if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    for (char c : frac) if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    Rational r(w * scale + fr, scale);
    return negative ? -r : r;
}

FunctionSpec parse_function_file(std::string_view text) {
    const auto lines = content_lines(text);
    const std::size_t last_line = lines.empty() ? 1 : lines.back().number;
    if (lines.size() < 4) throw ParseError(last_line, "incomplete header (need type, sided, inputs, outcomes)");

    Kind kind;
    if (const auto v = header_value(lines[0], "type"); v == "deterministic") kind = Kind::deterministic;
    else if (v == "probabilistic") kind = Kind::probabilistic;
    else throw ParseError(lines[0].number, "type must be 'deterministic' or 'probabilistic'");

    Sidedness sided;
    if (const auto v = header_value(lines[1], "sided"); v == "one") sided = Sidedness::one;
    else if (v == "two") sided = Sidedness::two;
    else throw ParseError(lines[1].number, "sided must be 'one' or 'two'");

    std::size_t na = 0, nb = 0, nk = 0;
    {
        const auto t = tokens(header_value(lines[2], "inputs"));
        if (t.size() != 2 || !parse_size(t[0], na) || !parse_size(t[1], nb) || na == 0 || nb == 0)
            throw ParseError(lines[2].number, "inputs must be two positive integers");
        const auto o = tokens(header_value(lines[3], "outcomes"));
        if (o.size() != 1 || !parse_size(o[0], nk) || nk == 0)
            throw ParseError(lines[3].number, "outcomes must be a positive integer");
        if (na > 64 || nb > 64 || nk > 64) throw ParseError(lines[2].number, "arities above 64 are not supported");
    }

    std::size_t cursor = 4;
    auto read_row = [&](std::size_t expected) {
        if (cursor >= lines.size()) throw ParseError(last_line, "missing table row");
        const auto& line = lines[cursor++];
        auto t = tokens(line.text);
        if (t.size() != expected)
            throw ParseError(line.number, "expected " + std::to_string(expected) + " entries, found " +
                                              std::to_string(t.size()));
        return std::make_pair(line.number, std::move(t));
    };

    if (kind == Kind::deterministic) {
        std::vector<int> out(na * nb);
        for (std::size_t j = 0; j < nb; ++j) {
            auto [number, row] = read_row(na);
            for (std::size_t i = 0; i < na; ++i) {
                std::size_t v = 0;
                if (!parse_size(row[i], v)) throw ParseError(number, "'" + row[i] + "' is not an outcome label");
                if (v >= nk) throw ParseError(number, "outcome label " + row[i] + " out of range");
                out[j * na + i] = static_cast<int>(v);
            }
        }
        if (cursor < lines.size()) throw ParseError(lines[cursor].number, "unexpected trailing content");
        return FunctionSpec::deterministic(sided, na, nb, nk, std::move(out));
    }

    std::vector<Rational> probs(nk * nb * na, Rational(0));
    std::vector<bool> present(nk, false);
    std::vector<std::size_t> row_line(nb, last_line);
    while (cursor < lines.size()) {
        const auto& head = lines[cursor++];
        std::size_t k = 0;
        const auto v = tokens(header_value(head, "k"));
        if (v.size() != 1 || !parse_size(v[0], k)) throw ParseError(head.number, "outcome label must be an integer");
        if (k >= nk) throw ParseError(head.number, "outcome label " + v[0] + " out of range");
        if (present[k]) throw ParseError(head.number, "outcome block " + v[0] + " repeated");
        present[k] = true;
        for (std::size_t j = 0; j < nb; ++j) {
            auto [number, row] = read_row(na);
            row_line[j] = number;
            for (std::size_t i = 0; i < na; ++i) {
                Rational p;
                try {
                    p = parse_rational(row[i]);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(number, e.what());
                }
                if (p < Rational(0) || p > Rational(1)) throw ParseError(number, "probability " + row[i] + " outside [0,1]");
                probs[(k * nb + j) * na + i] = p;
            }
        }
    }

    for (std::size_t k = 0; k + 1 < nk; ++k)
        if (!present[k]) throw ParseError(last_line, "outcome block " + std::to_string(k) + " missing");
    const bool infer_last = !present[nk - 1];
    for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t i = 0; i < na; ++i) {
            Rational sum = 0;
            for (std::size_t k = 0; k + (infer_last ? 1 : 0) < nk; ++k) sum += probs[(k * nb + j) * na + i];
            if (infer_last) {
                if (sum > Rational(1))
                    throw ParseError(row_line[j], "probabilities for (i=" + std::to_string(i) + ", j=" +
                                                      std::to_string(j) + ") exceed 1");
                probs[((nk - 1) * nb + j) * na + i] = 1 - sum;
            } else if (sum != Rational(1)) {
                throw ParseError(row_line[j], "probabilities for (i=" + std::to_string(i) + ", j=" +
                                                  std::to_string(j) + ") do not sum to 1");
            }
        }
    return FunctionSpec::probabilistic(sided, na, nb, nk, std::move(probs));
}

std::string format_function_file(const FunctionSpec& f) {
    std::ostringstream os;
    os << "type: " << (f.kind() == Kind::deterministic ? "deterministic" : "probabilistic") << '\n'
       << "sided: " << (f.sidedness() == Sidedness::one ? "one" : "two") << '\n'
       << "inputs: " << f.alice_arity() << ' ' << f.bob_arity() << '\n'
       << "outcomes: " << f.outcome_count() << '\n';
    if (f.kind() == Kind::deterministic) {
        for (std::size_t j = 0; j < f.bob_arity(); ++j) {
            for (std::size_t i = 0; i < f.alice_arity(); ++i) os << (i ? " " : "") << f.outcome(i, j);
            os << '\n';
        }
        return os.str();
    }
    for (std::size_t k = 0; k < f.outcome_count(); ++k) {
        os << "k: " << k << '\n';
        for (std::size_t j = 0; j < f.bob_arity(); ++j) {
            for (std::size_t i = 0; i < f.alice_arity(); ++i) {
                const auto p = f.prob(k, i, j);
                os << (i ? " " : "") << p.numerator();
                if (p.denominator() != 1) os << '/' << p.denominator();
            }
            os << '\n';
        }
    }
    return os.str();
}

namespace {

constexpr std::string_view kOt = R"(# Oblivious transfer: Alice sends bit i, Bob receives i or '?'.
type: probabilistic
sided: one
inputs: 2 1
outcomes: 3
k: 0
1/2 0
k: 1
0 1/2
# k: 2 is '?', inferred by complement
)";

constexpr std::string_view kCounterexample = R"(# Two-sided binary table; the uniform superposition gives no advantage at q0 = 1/2.
# rows j, columns i: p(0|i,j)
type: probabilistic
sided: two
inputs: 2 2
outcomes: 2
k: 0
47/150 8/9
103/150 5/9
)";

constexpr std::string_view kNeq3 = R"(# f(i,j) = 1 - delta_ij
type: deterministic
sided: two
inputs: 3 3
outcomes: 2
0 1 1
1 0 1
1 1 0
)";

}  // namespace

std::string_view builtin_function_text(std::string_view name) {
    if (name == "ot") return kOt;
    if (name == "counterexample") return kCounterexample;
    if (name == "neq3") return kNeq3;
    return {};
}

FunctionSpec builtin_function(std::string_view name) {
    const auto text = builtin_function_text(name);
    if (text.empty()) throw std::invalid_argument("unknown built-in function '@" + std::string(name) + "'");
    return parse_function_file(text);
}

}  // namespace tpc
