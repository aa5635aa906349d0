#include "envcert/zonotope.hpp"

#include "envcert/error.hpp"

#include <algorithm>
#include <numeric>

namespace envcert {

Zonotope::Zonotope(RationalVector center, RationalMatrix generators, std::vector<std::string> row_labels)
    : c(std::move(center)), G(std::move(generators)), labels(std::move(row_labels)) {
    if (G.rows() != c.size() && !(G.rows() == 0 && G.cols() == 0))
        throw DimensionMismatch("generator matrix has " + std::to_string(G.rows()) + " rows, center has " +
                                std::to_string(c.size()));
    if (G.rows() == 0) G = RationalMatrix(c.size(), 0);
    if (!labels.empty() && labels.size() != c.size()) throw DimensionMismatch("one label per row expected");
}

Zonotope project(const Zonotope& z, std::span<const std::size_t> rows) {
    if (rows.empty()) throw DimensionMismatch("projection onto no rows");
    RationalVector c;
    std::vector<std::string> labels;
    for (std::size_t r : rows) {
        if (r >= z.dim()) throw DimensionMismatch("projection row out of range");
        c.push_back(z.c[r]);
        if (!z.labels.empty()) labels.push_back(z.labels[r]);
    }
    return Zonotope(std::move(c), z.G.select_rows(rows), std::move(labels));
}

Zonotope project(const Zonotope& z, std::span<const std::string> labels) {
    std::vector<std::size_t> rows;
    for (const auto& l : labels) {
        auto it = std::find(z.labels.begin(), z.labels.end(), l);
        if (it == z.labels.end()) throw DimensionMismatch("zonotope has no row labelled '" + l + "'");
        rows.push_back(static_cast<std::size_t>(it - z.labels.begin()));
    }
    return project(z, rows);
}

Box interval_hull(const Zonotope& z) {
    Box box;
    box.reserve(z.dim());
    for (std::size_t i = 0; i < z.dim(); ++i) {
        Rational spread(0);
        for (const Rational& g : z.G.row(i)) spread += abs(g);
        box.emplace_back(Rational(z.c[i] - spread), Rational(z.c[i] + spread));
    }
    return box;
}

namespace {

Rational cross(const Point2& a, const Point2& b) { return a[0] * b[1] - a[1] * b[0]; }

}  // namespace

std::vector<Point2> vertices_2d(const Zonotope& z, std::size_t r0, std::size_t r1) {
    if (r0 >= z.dim() || r1 >= z.dim() || r0 == r1) throw DimensionMismatch("vertices_2d needs two distinct rows");

    // Generators flipped into the upper half-plane (angle in [0, pi)).
    std::vector<Point2> gens;
    for (std::size_t j = 0; j < z.generators(); ++j) {
        Point2 g{z.G(r0, j), z.G(r1, j)};
        if (sgn(g[0]) == 0 && sgn(g[1]) == 0) continue;
        if (sgn(g[1]) < 0 || (sgn(g[1]) == 0 && sgn(g[0]) < 0)) g = {Rational(-g[0]), Rational(-g[1])};
        gens.push_back(std::move(g));
    }
    std::stable_sort(gens.begin(), gens.end(), [](const Point2& a, const Point2& b) { return sgn(cross(a, b)) > 0; });

    // Parallel generators add up to one edge.
    std::vector<Point2> edges;
    for (const auto& g : gens) {
        if (!edges.empty() && sgn(cross(edges.back(), g)) == 0) {
            edges.back()[0] += g[0];
            edges.back()[1] += g[1];
        } else {
            edges.push_back(g);
        }
    }

    Point2 v{z.c[r0], z.c[r1]};
    for (const auto& e : edges) {
        v[0] -= e[0];
        v[1] -= e[1];
    }
    std::vector<Point2> out;
    if (edges.empty()) {
        out.push_back(v);
        return out;
    }
    for (int sign : {2, -2}) {
        for (const auto& e : edges) {
            out.push_back(v);
            v[0] += sign * e[0];
            v[1] += sign * e[1];
        }
    }
    return out;
}

LinearAbstraction linear_abstraction(const Polynomial& p, std::span<const std::size_t> vars, const Box& domain,
                                     unsigned subdivision_depth) {
    if (domain.size() != p.space()->size()) throw DomainMismatch("abstraction box arity");
    for (std::size_t v : vars) {
        if (v >= domain.size()) throw DomainMismatch("abstraction variable out of range");
        if (!domain[v].contains(Rational(0)))
            throw DomainMismatch("abstraction domain must contain the expansion point 0");
    }
    Polynomial affine(p.space());
    Polynomial residue(p.space());
    for (const auto& [m, c] : p.terms()) {
        unsigned deg = 0;
        for (std::size_t v : vars) deg += m[v];
        (deg <= 1 ? affine : residue).add_term(m, c);
    }
    return {std::move(affine), iv_eval_poly(residue, domain, subdivision_depth)};
}

LinearAbstraction linear_abstraction(const Polynomial& p, const Box& domain, unsigned subdivision_depth) {
    std::vector<std::size_t> all(p.space()->size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return linear_abstraction(p, all, domain, subdivision_depth);
}

}  // namespace envcert
