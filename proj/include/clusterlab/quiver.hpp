#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "clusterlab/errors.hpp"

namespace clusterlab {

// Finite quiver given by its skew-symmetric exchange matrix:
// b[i][j] = #arrows i->j minus #arrows j->i.  Vertices are 0-indexed here and
// 1-indexed in all I/O.
struct Quiver {
    int n = 0;
    std::vector<std::vector<long long>> b;

    Quiver() = default;
    explicit Quiver(int n_) : n(n_), b(static_cast<size_t>(n_), std::vector<long long>(static_cast<size_t>(n_), 0)) {}

    static Quiver from_arrows(int n, const std::vector<std::tuple<int, int, long long>>& arrows);

    void validate() const; // skew-symmetry, no loops
    bool is_acyclic() const;
    // Positive definiteness of the Tits form of the underlying graph;
    // equivalent to Dynkin (finite) type for a connected simply-laced quiver.
    bool is_finite_type() const;

    friend bool operator==(const Quiver& a, const Quiver& c) { return a.n == c.n && a.b == c.b; }
};

// Fomin-Zelevinsky matrix mutation at vertex k:
// b'[i][j] = -b[i][j] if k in {i,j}, else b[i][j] + sgn(b[i][k])*max(0, b[i][k]*b[k][j]).
Quiver mutate_quiver(const Quiver& q, int k);

// Text format: one arrow per line, "i -> j" or "i -> j *m"; '#' comments and
// blank lines ignored; vertices 1-indexed, n inferred from the largest index.
Quiver parse_quiver(std::istream& in);
Quiver parse_quiver_text(const std::string& text);
std::string quiver_to_text(const Quiver& q);

// Arrow list of an acyclic quiver (multiplicities expanded) plus a
// topological order of the vertices.
struct ArrowList {
    int n = 0;
    std::vector<std::pair<int, int>> arrows; // (source, target)
    std::vector<int> topo;
};
ArrowList arrows_of_acyclic(const Quiver& q);

} // namespace clusterlab
