#include "tpc/povm_io.hpp"

#include <cctype>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "tpc/funcspec.hpp"
#include "tpc/report.hpp"

namespace tpc {

namespace {

bool read_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    std::string tmp(s);
    char* end = nullptr;
    out = std::strtod(tmp.c_str(), &end);
    return end == tmp.c_str() + tmp.size();
}

}  // namespace

Complex parse_complex(std::string_view token) {
    const auto bad = [&] { return std::invalid_argument("'" + std::string(token) + "' is not a complex number"); };
    if (token.empty()) throw bad();
    if (token.back() != 'i') {
        double re = 0.0;
        if (!read_double(token, re)) throw bad();
        return {re, 0.0};
    }
    std::string_view body = token.substr(0, token.size() - 1);
    // Split at the last sign that is not part of an exponent or the leading sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t p = body.size(); p-- > 1;) {
        if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
            split = p;
            break;
        }
    }
    double re = 0.0, im = 0.0;
    std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
    if (split != std::string_view::npos && !read_double(body.substr(0, split), re)) throw bad();
    if (im_part == "+" || im_part == "" ) im = 1.0;
    else if (im_part == "-") im = -1.0;
    else if (!read_double(im_part, im)) throw bad();
    return {re, im};
}

std::vector<ComplexMatrix> parse_povm_elements(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    std::size_t number = 0;
    std::size_t dim = 0;
    std::vector<ComplexMatrix> elements;
    std::size_t row = 0;
    while (std::getline(is, line)) {
        ++number;
        if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        if (dim == 0) {
            if (toks.size() != 2 || toks[0] != "dim:") throw ParseError(number, "expected 'dim: <d>'");
            const auto& v = toks[1];
            auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), dim);
            if (ec != std::errc() || p != v.data() + v.size() || dim == 0 || dim > 4096)
                throw ParseError(number, "dimension must be a positive integer");
            continue;
        }
        if (toks.size() != dim)
            throw ParseError(number, "expected " + std::to_string(dim) + " entries, found " + std::to_string(toks.size()));
        if (row == 0) elements.emplace_back(ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
        for (std::size_t c = 0; c < dim; ++c) {
            try {
                elements.back()(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(c)) = parse_complex(toks[c]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(number, e.what());
            }
        }
        row = (row + 1) % dim;
    }
    if (dim == 0) throw ParseError(number == 0 ? 1 : number, "missing 'dim:' header");
    if (row != 0) throw ParseError(number, "incomplete POVM element");
    if (elements.empty()) throw ParseError(number, "POVM has no elements");
    return elements;
}

Povm parse_povm_file(std::string_view text) { return Povm::make(parse_povm_elements(text)); }

std::string format_povm_file(const Povm& povm) {
    std::ostringstream os;
    os << "dim: " << povm.dim() << '\n';
    for (std::size_t e = 0; e < povm.size(); ++e) {
        os << "# element " << e << " (label " << povm.labels()[e] << ")\n";
        const auto& m = povm.elements()[e];
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            for (Eigen::Index c = 0; c < m.cols(); ++c) {
                const double im = m(r, c).imag();
                os << (c ? " " : "") << format_number(m(r, c).real()) << (im < 0 || std::signbit(im) ? "-" : "+")
                   << format_number(std::abs(im)) << 'i';
            }
            os << '\n';
        }
    }
    return os.str();
}

}  // namespace tpc
