#pragma once

// Reference computations written without the library's own shortcuts. They
// are slow and only meant for the small sizes used in the tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "tpc/blackbox.hpp"
#include "tpc/discrim.hpp"
#include "tpc/funcspec.hpp"
#include "tpc/qmat.hpp"

namespace oracle {

using tpc::ComplexMatrix;
using tpc::ComplexVector;
using tpc::FunctionSpec;

// Best classical guess by trying every deterministic map outcome -> guess.
inline double honest_bruteforce(const FunctionSpec& f, const std::vector<double>& q) {
    const std::size_t n = f.bob_arity(), m = f.alice_arity(), K = f.outcome_count();
    std::size_t rules = 1;
    for (std::size_t k = 0; k < K; ++k) rules *= n;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t r = 0; r < rules; ++r) {
            std::size_t code = r;
            double p = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                std::size_t guess = code % n;
                code /= n;
                p += q[guess] * f.probability(k, i, guess);
            }
            best = std::max(best, p);
        }
    }
    return best;
}

// Plain index-loop partial trace of a two-factor operator over the second factor.
inline ComplexMatrix trace_second(const ComplexMatrix& m, std::size_t da, std::size_t db) {
    ComplexMatrix r = ComplexMatrix::Zero(da, da);
    for (std::size_t a = 0; a < da; ++a)
        for (std::size_t a2 = 0; a2 < da; ++a2)
            for (std::size_t b = 0; b < db; ++b) r(a, a2) += m(a * db + b, a2 * db + b);
    return r;
}

inline ComplexMatrix trace_first(const ComplexMatrix& m, std::size_t da, std::size_t db) {
    ComplexMatrix r = ComplexMatrix::Zero(db, db);
    for (std::size_t b = 0; b < db; ++b)
        for (std::size_t b2 = 0; b2 < db; ++b2)
            for (std::size_t a = 0; a < da; ++a) r(b, b2) += m(a * db + b, a * db + b2);
    return r;
}

// Runs the whole box on (input_A, |j>_B, |0>, |0>) and traces out Bob's input
// and his copy of the outcome. Register layout (A in, B in, A out, B out).
inline ComplexMatrix purified_alice_state(const FunctionSpec& f, const ComplexVector& a, std::size_t j) {
    const std::size_t nA = f.alice_arity(), nB = f.bob_arity(), K = f.outcome_count();
    const std::size_t D = nA * nB * K * K;
    ComplexVector psi = ComplexVector::Zero(D);
    for (std::size_t i = 0; i < nA; ++i)
        for (std::size_t k = 0; k < K; ++k) {
            std::size_t idx = ((i * nB + j) * K + k) * K + k;
            psi(idx) += a(i) * std::sqrt(f.probability(k, i, j));
        }
    ComplexMatrix rho = psi * psi.adjoint();
    auto st = tpc::DensityState::make(rho, {nA, nB, K, K});
    const std::array<std::size_t, 2> keep{0, 2};
    return tpc::partial_trace(st, keep).matrix();
}

// Every 3x3 table over labels 0..5 that meets both conditions, reduced to a
// class key = minimum over row/column permutations of its first-appearance
// relabelling. Independent of the canonical-form construction.
inline std::size_t count_valid_3x3_naive() {
    auto relabel = [](const std::array<int, 9>& t) {
        std::array<int, 9> out{};
        std::array<int, 6> map;
        map.fill(-1);
        int next = 0;
        for (int c = 0; c < 9; ++c) {
            if (map[t[c]] < 0) map[t[c]] = next++;
            out[c] = map[t[c]];
        }
        return out;
    };
    std::array<std::array<int, 3>, 6> perms{};
    {
        std::array<int, 3> p{0, 1, 2};
        int n = 0;
        do perms[n++] = p; while (std::next_permutation(p.begin(), p.end()));
    }
    std::set<std::array<int, 9>> classes;
    std::array<int, 9> t{};
    std::uint64_t total = 1;
    for (int c = 0; c < 9; ++c) total *= 6;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t x = code;
        for (int c = 0; c < 9; ++c) {
            t[c] = static_cast<int>(x % 6);
            x /= 6;
        }
        auto at = [&](int r, int c) { return t[r * 3 + c]; };
        bool ok = true;
        for (int r = 0; r < 3 && ok; ++r)
            ok = at(r, 0) == at(r, 1) || at(r, 0) == at(r, 2) || at(r, 1) == at(r, 2);
        for (int c = 0; c < 3 && ok; ++c)
            ok = at(0, c) == at(1, c) || at(0, c) == at(2, c) || at(1, c) == at(2, c);
        for (int r = 0; r < 3 && ok; ++r)
            for (int r2 = r + 1; r2 < 3 && ok; ++r2)
                ok = !(at(r, 0) == at(r2, 0) && at(r, 1) == at(r2, 1) && at(r, 2) == at(r2, 2));
        for (int c = 0; c < 3 && ok; ++c)
            for (int c2 = c + 1; c2 < 3 && ok; ++c2)
                ok = !(at(0, c) == at(0, c2) && at(1, c) == at(1, c2) && at(2, c) == at(2, c2));
        if (!ok) continue;
        std::array<int, 9> best{};
        best.fill(99);
        for (const auto& rp : perms)
            for (const auto& cp : perms) {
                std::array<int, 9> s{};
                for (int r = 0; r < 3; ++r)
                    for (int c = 0; c < 3; ++c) s[r * 3 + c] = at(rp[r], cp[c]);
                best = std::min(best, relabel(s));
            }
        classes.insert(best);
    }
    return classes.size();
}

// Eigenvalues of a Hermitian matrix through the real symmetric embedding
// [[Re, -Im], [Im, Re]], which doubles each eigenvalue's multiplicity.
inline std::vector<double> eigenvalues_via_real_embedding(const ComplexMatrix& m) {
    const Eigen::Index n = m.rows();
    Eigen::MatrixXd r(2 * n, 2 * n);
    r << m.real(), -m.imag(), m.imag(), m.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + 2 * n);
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); k += 2) out.push_back(0.5 * (v[k] + v[k + 1]));
    return out;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = {g(rng), g(rng)};
    return (m + m.adjoint()) * 0.5;
}

// Random density matrix of the given rank.
inline ComplexMatrix random_density(std::mt19937_64& rng, std::size_t n, std::size_t rank) {
    std::normal_distribution<double> g;
    ComplexMatrix g_mat(n, rank);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < rank; ++c) g_mat(r, c) = {g(rng), g(rng)};
    ComplexMatrix rho = g_mat * g_mat.adjoint();
    return rho / rho.trace().real();
}

// Random probability with denominator up to 60, strictly inside (0, 1) unless
// allow_edges is set.
inline tpc::Rational random_rational(std::mt19937_64& rng, bool allow_edges = false) {
    std::uniform_int_distribution<std::int64_t> den_d(2, 60);
    std::int64_t den = den_d(rng);
    std::uniform_int_distribution<std::int64_t> num_d(allow_edges ? 0 : 1, allow_edges ? den : den - 1);
    return tpc::Rational(num_d(rng), den);
}

// Binary table from p(0|i,j) given as pij[i][j].
inline FunctionSpec binary_spec(tpc::Sidedness s, const std::array<std::array<tpc::Rational, 2>, 2>& pij) {
    std::vector<tpc::Rational> probs(8);
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < 2; ++i) {
            probs[(0 * 2 + j) * 2 + i] = pij[i][j];
            probs[(1 * 2 + j) * 2 + i] = tpc::Rational(1) - pij[i][j];
        }
    return FunctionSpec::probabilistic(s, 2, 2, 2, probs);
}

}  // namespace oracle
