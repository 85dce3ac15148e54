#include "clusterlab/quiver.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "clusterlab/matrix.hpp"

namespace clusterlab {

Quiver Quiver::from_arrows(int n, const std::vector<std::tuple<int, int, long long>>& arrows) {
    Quiver q(n);
    std::vector<std::vector<long long>> fwd(static_cast<size_t>(n), std::vector<long long>(static_cast<size_t>(n), 0));
    for (auto [i, j, m] : arrows) {
        if (i < 0 || i >= n || j < 0 || j >= n) throw ArgumentError("arrow vertex out of range");
        if (i == j) throw ArgumentError("loops are not allowed");
        if (m <= 0) throw ArgumentError("arrow multiplicity must be positive");
        fwd[static_cast<size_t>(i)][static_cast<size_t>(j)] += m;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i < j && fwd[static_cast<size_t>(i)][static_cast<size_t>(j)] > 0 &&
                fwd[static_cast<size_t>(j)][static_cast<size_t>(i)] > 0)
                throw ArgumentError("arrows form a 2-cycle");
            q.b[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                fwd[static_cast<size_t>(i)][static_cast<size_t>(j)] - fwd[static_cast<size_t>(j)][static_cast<size_t>(i)];
        }
    q.validate();
    return q;
}

void Quiver::validate() const {
    if (static_cast<int>(b.size()) != n) throw ArgumentError("exchange matrix has wrong size");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(b[static_cast<size_t>(i)].size()) != n)
            throw ArgumentError("exchange matrix has wrong size");
        if (b[static_cast<size_t>(i)][static_cast<size_t>(i)] != 0)
            throw ArgumentError("exchange matrix has a loop");
        for (int j = 0; j < n; ++j)
            if (b[static_cast<size_t>(i)][static_cast<size_t>(j)] != -b[static_cast<size_t>(j)][static_cast<size_t>(i)])
                throw ArgumentError("exchange matrix is not skew-symmetric");
    }
}

bool Quiver::is_acyclic() const {
    // Kahn's algorithm on the arrow digraph (positive entries).
    std::vector<int> indeg(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (b[static_cast<size_t>(i)][static_cast<size_t>(j)] > 0) ++indeg[static_cast<size_t>(j)];
    std::deque<int> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[static_cast<size_t>(v)] == 0) ready.push_back(v);
    int seen = 0;
    while (!ready.empty()) {
        int v = ready.front();
        ready.pop_front();
        ++seen;
        for (int j = 0; j < n; ++j)
            if (b[static_cast<size_t>(v)][static_cast<size_t>(j)] > 0 && --indeg[static_cast<size_t>(j)] == 0)
                ready.push_back(j);
    }
    return seen == n;
}

bool Quiver::is_finite_type() const {
    // Symmetrized Cartan matrix 2I - (A + A^T); positive definite iff all
    // leading principal minors are positive (exact rational elimination).
    Matrix<Rat> c(n, n);
    for (int i = 0; i < n; ++i) {
        c.at(i, i) = Rat(2);
        for (int j = 0; j < n; ++j)
            if (i != j) {
                long long m = b[static_cast<size_t>(i)][static_cast<size_t>(j)];
                c.at(i, j) = Rat(-(m > 0 ? m : -m));
            }
    }
    // Gaussian elimination without pivoting tracks the minor signs: after
    // eliminating column k, the pivot equals minor_{k+1}/minor_k.
    for (int k = 0; k < n; ++k) {
        if (c.at(k, k) <= 0) return false;
        for (int i = k + 1; i < n; ++i) {
            Rat f = c.at(i, k) / c.at(k, k);
            for (int j = k; j < n; ++j) c.at(i, j) -= f * c.at(k, j);
        }
    }
    return true;
}

Quiver mutate_quiver(const Quiver& q, int k) {
    if (k < 0 || k >= q.n) throw ArgumentError("mutation vertex out of range");
    Quiver r(q.n);
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j) {
            long long bij = q.b[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (i == k || j == k) {
                r.b[static_cast<size_t>(i)][static_cast<size_t>(j)] = -bij;
            } else {
                long long bik = q.b[static_cast<size_t>(i)][static_cast<size_t>(k)];
                long long bkj = q.b[static_cast<size_t>(k)][static_cast<size_t>(j)];
                long long sgn = bik > 0 ? 1 : (bik < 0 ? -1 : 0);
                long long prod = bik * bkj;
                r.b[static_cast<size_t>(i)][static_cast<size_t>(j)] = bij + sgn * std::max(0LL, prod);
            }
        }
    return r;
}

Quiver parse_quiver(std::istream& in) {
    std::vector<std::tuple<int, int, long long>> arrows;
    std::string line;
    int lineno = 0;
    int maxv = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        int i = 0;
        std::string arrow;
        if (!(ls >> i)) continue; // blank / comment-only line
        if (!(ls >> arrow) || arrow != "->") throw ParseError(lineno, "expected '->'");
        int j = 0;
        if (!(ls >> j)) throw ParseError(lineno, "expected target vertex");
        long long m = 1;
        std::string mult;
        if (ls >> mult) {
            if (mult.size() < 2 || mult[0] != '*') throw ParseError(lineno, "expected '*m' multiplicity");
            try {
                m = std::stoll(mult.substr(1));
            } catch (...) {
                throw ParseError(lineno, "bad multiplicity");
            }
            std::string extra;
            if (ls >> extra) throw ParseError(lineno, "trailing tokens");
        }
        if (i < 1 || j < 1) throw ParseError(lineno, "vertices are 1-indexed");
        if (i == j) throw ParseError(lineno, "loops are not allowed");
        if (m < 1) throw ParseError(lineno, "multiplicity must be >= 1");
        maxv = std::max(maxv, std::max(i, j));
        arrows.emplace_back(i - 1, j - 1, m);
    }
    if (arrows.empty()) throw ParseError(lineno, "no arrows found");
    // Reject explicit 2-cycles in the input.
    for (const auto& [i, j, m] : arrows)
        for (const auto& [i2, j2, m2] : arrows)
            if (i == j2 && j == i2)
                throw ParseError(0, "input contains a 2-cycle");
    return Quiver::from_arrows(maxv, arrows);
}

Quiver parse_quiver_text(const std::string& text) {
    std::istringstream in(text);
    return parse_quiver(in);
}

std::string quiver_to_text(const Quiver& q) {
    std::string out;
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j) {
            long long m = q.b[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (m > 0) {
                out += std::to_string(i + 1) + " -> " + std::to_string(j + 1);
                if (m > 1) out += " *" + std::to_string(m);
                out += "\n";
            }
        }
    return out;
}

ArrowList arrows_of_acyclic(const Quiver& q) {
    if (!q.is_acyclic()) throw ArgumentError("quiver is not acyclic");
    ArrowList al;
    al.n = q.n;
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j) {
            long long m = q.b[static_cast<size_t>(i)][static_cast<size_t>(j)];
            for (long long t = 0; t < m; ++t) al.arrows.emplace_back(i, j);
        }
    // Topological order.
    std::vector<int> indeg(static_cast<size_t>(q.n), 0);
    for (auto [i, j] : al.arrows) ++indeg[static_cast<size_t>(j)];
    std::deque<int> ready;
    for (int v = 0; v < q.n; ++v)
        if (indeg[static_cast<size_t>(v)] == 0) ready.push_back(v);
    while (!ready.empty()) {
        int v = ready.front();
        ready.pop_front();
        al.topo.push_back(v);
        for (auto [i, j] : al.arrows)
            if (i == v && --indeg[static_cast<size_t>(j)] == 0) ready.push_back(j);
    }
    return al;
}

} // namespace clusterlab
