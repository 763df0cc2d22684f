#include "oscint/cone.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <set>

#include "oscint/simplex_lp.hpp"

namespace oscint {

namespace {

std::vector<std::int64_t> primitive(std::vector<std::int64_t> v) {
    std::int64_t g = 0;
    for (auto e : v) g = std::gcd(g, e < 0 ? -e : e);
    if (g > 1)
        for (auto& e : v) e /= g;
    return v;
}

// --- exact linear algebra over Rational (small dense systems) ---

// Solve M y = rhs (square).  Returns false when singular.
bool solve_square(std::vector<std::vector<Rational>> M, std::vector<Rational> rhs, std::vector<Rational>& out) {
    const int n = static_cast<int>(M.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return false;
        std::swap(M[static_cast<std::size_t>(col)], M[static_cast<std::size_t>(piv)]);
        std::swap(rhs[static_cast<std::size_t>(col)], rhs[static_cast<std::size_t>(piv)]);
        Rational inv = Rational(1) / M[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        for (int c = col; c < n; ++c) M[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)] *= inv;
        rhs[static_cast<std::size_t>(col)] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Rational f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int c = col; c < n; ++c)
                M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    f * M[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
            rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
        }
    }
    out = std::move(rhs);
    return true;
}

int rank_of(std::vector<std::vector<Rational>> M) {
    if (M.empty()) return 0;
    const int rows = static_cast<int>(M.size());
    const int cols = static_cast<int>(M[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[static_cast<std::size_t>(rank)], M[static_cast<std::size_t>(piv)]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            Rational f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                         M[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int c = col; c < cols; ++c)
                M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    f * M[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
        }
        ++rank;
    }
    return rank;
}

using Vertex = std::vector<Rational>;

// Affine dimension of a vertex subset.
int affine_dim(const std::vector<Vertex>& verts, const std::vector<int>& subset) {
    if (subset.empty()) return -1;
    if (subset.size() == 1) return 0;
    std::vector<std::vector<Rational>> diffs;
    const Vertex& v0 = verts[static_cast<std::size_t>(subset[0])];
    for (std::size_t i = 1; i < subset.size(); ++i) {
        std::vector<Rational> d(v0.size());
        const Vertex& v = verts[static_cast<std::size_t>(subset[i])];
        for (std::size_t c = 0; c < v0.size(); ++c) d[c] = v[c] - v0[c];
        diffs.push_back(std::move(d));
    }
    return rank_of(std::move(diffs));
}

// All cross-section vertices: pick n-1 halfspaces tight plus sum y = -1.
std::vector<Vertex> enumerate_vertices(const PolyCone& cone) {
    const int n = cone.dim;
    const int m = static_cast<int>(cone.halfspaces.size());
    std::vector<Vertex> verts;

    auto try_subset = [&](const std::vector<int>& sub) {
        std::vector<std::vector<Rational>> M;
        std::vector<Rational> rhs;
        for (int s : sub) {
            std::vector<Rational> row(static_cast<std::size_t>(n));
            for (int c = 0; c < n; ++c) row[static_cast<std::size_t>(c)] =
                Rational(cone.halfspaces[static_cast<std::size_t>(s)].normal[static_cast<std::size_t>(c)]);
            M.push_back(std::move(row));
            rhs.emplace_back(0);
        }
        M.emplace_back(static_cast<std::size_t>(n), Rational(1)); // sum y = -1
        rhs.emplace_back(-1);
        std::vector<Rational> y;
        if (!solve_square(std::move(M), std::move(rhs), y)) return;
        for (const auto& h : cone.halfspaces) {
            Rational dot(0);
            for (int c = 0; c < n; ++c) dot += Rational(h.normal[static_cast<std::size_t>(c)]) * y[static_cast<std::size_t>(c)];
            if (dot > 0) return;
        }
        if (std::find(verts.begin(), verts.end(), y) == verts.end()) verts.push_back(std::move(y));
    };

    if (n == 1) {
        try_subset({});
    } else {
        std::vector<int> sub(static_cast<std::size_t>(n - 1));
        // standard subset iteration
        std::vector<int> pos(static_cast<std::size_t>(n - 1));
        for (int i = 0; i < n - 1; ++i) pos[static_cast<std::size_t>(i)] = i;
        if (m >= n - 1) {
            for (;;) {
                for (int i = 0; i < n - 1; ++i) sub[static_cast<std::size_t>(i)] = pos[static_cast<std::size_t>(i)];
                try_subset(sub);
                int i = n - 2;
                while (i >= 0 && pos[static_cast<std::size_t>(i)] == m - (n - 1) + i) --i;
                if (i < 0) break;
                ++pos[static_cast<std::size_t>(i)];
                for (int j = i + 1; j < n - 1; ++j) pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
    }
    std::sort(verts.begin(), verts.end());
    return verts;
}

// Fan triangulation of the face spanned by `face` (affine dimension d):
// cone the lexicographically smallest vertex over the facets avoiding it.
void triangulate_face(const std::vector<Vertex>& verts, const PolyCone& cone, const std::vector<int>& face, int d,
                      std::vector<std::vector<int>>& out) {
    if (static_cast<int>(face.size()) == d + 1) {
        out.push_back(face);
        return;
    }
    const int apex = face[0]; // face is sorted; verts are in lex order

    std::set<std::vector<int>> facets;
    for (const auto& h : cone.halfspaces) {
        std::vector<int> tight;
        for (int vi : face) {
            Rational dot(0);
            for (std::size_t c = 0; c < verts[static_cast<std::size_t>(vi)].size(); ++c)
                dot += Rational(h.normal[c]) * verts[static_cast<std::size_t>(vi)][c];
            if (dot == 0) tight.push_back(vi);
        }
        if (static_cast<int>(tight.size()) < d) continue;
        if (tight.size() == face.size()) continue; // h is tight on the whole face
        if (affine_dim(verts, tight) != d - 1) continue;
        facets.insert(std::move(tight));
    }

    for (const auto& facet : facets) {
        if (std::find(facet.begin(), facet.end(), apex) != facet.end()) continue;
        std::vector<std::vector<int>> sub;
        triangulate_face(verts, cone, facet, d - 1, sub);
        for (auto& s : sub) {
            s.push_back(apex);
            std::sort(s.begin(), s.end());
            out.push_back(std::move(s));
        }
    }
}

std::vector<std::int64_t> vertex_to_primitive_ray(const Vertex& v) {
    Int l(1);
    for (const auto& q : v) l = boost::multiprecision::lcm(l, rat_den(q));
    std::vector<std::int64_t> ray(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) ray[i] = to_int64(rat_num(v[i]) * (l / rat_den(v[i])));
    return primitive(std::move(ray));
}

SimplicialCone cone_from_rays(std::vector<std::vector<std::int64_t>> rays) {
    const int n = static_cast<int>(rays.size());
    std::sort(rays.begin(), rays.end());

    IntMatrix R(n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) R(r, c) = rays[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    Int detR = R.det();
    if (detR == 0) throw invariant_error("degenerate-simplex", "triangulation produced dependent rays");
    IntMatrix adj = R.adjugate();
    const int sign = detR > 0 ? 1 : -1;

    // h_l = -sign(det R) * (row l of adj R), made primitive: then
    // h_l . ray_k = -sign*det*delta_{lk} = -|det|*delta_{lk}.
    IntMatrix H(n);
    for (int l = 0; l < n; ++l) {
        std::vector<std::int64_t> h(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c) h[static_cast<std::size_t>(c)] = -sign * adj(l, c);
        h = primitive(std::move(h));
        for (int r = 0; r < n; ++r) H(r, l) = h[static_cast<std::size_t>(r)];
    }

    SimplicialCone out;
    out.H = std::move(H);
    out.rays = std::move(rays);
#ifndef NDEBUG
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
            Int dot(0);
            for (int r = 0; r < n; ++r) dot += Int(out.H(r, l)) * out.rays[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)];
            assert(l == k ? dot < 0 : dot == 0);
        }
#endif
    return out;
}

} // namespace

PolyCone cone_from_ratios(const std::vector<LaurentMonomial>& ratios, const std::vector<RatioSign>& signs) {
    if (ratios.size() != signs.size())
        throw input_error("dimension-mismatch", "one sign is required per ratio");
    int n = ratios.empty() ? 0 : ratios.front().dimension();
    for (const auto& r : ratios)
        if (r.dimension() != n) throw input_error("dimension-mismatch", "ratios of inconsistent dimension");
    if (n == 0) throw input_error("empty-input", "cannot build a cone in dimension zero");

    PolyCone cone;
    cone.dim = n;
    std::set<std::vector<std::int64_t>> seen;
    auto push = [&](std::vector<std::int64_t> normal) {
        normal = primitive(std::move(normal));
        if (seen.insert(normal).second) cone.halfspaces.push_back(HalfSpace{std::move(normal)});
    };
    for (int m = 0; m < n; ++m) {
        std::vector<std::int64_t> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(m)] = 1;
        push(std::move(e));
    }
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (ratios[i].is_constant())
            throw input_error("constant-ratio", "ratio " + std::to_string(i) + " has zero exponent vector");
        std::vector<std::int64_t> a = ratios[i].exponents;
        if (signs[i] == RatioSign::above)
            for (auto& e : a) e = -e;
        push(std::move(a));
    }
    return cone;
}

bool cone_nonempty(const PolyCone& cone) {
    // Substitute y = -u, u >= 0 (sound: the coordinate halfspaces force
    // y <= -s <= 0 on the feasible set).  max s s.t. -a.u + s <= 0, sum u <= 1.
    const int n = cone.dim;
    const int nv = n + 1; // u_1..u_n, s
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (const auto& h : cone.halfspaces) {
        std::vector<Rational> row(static_cast<std::size_t>(nv), Rational(0));
        for (int c = 0; c < n; ++c) row[static_cast<std::size_t>(c)] = Rational(-h.normal[static_cast<std::size_t>(c)]);
        row[static_cast<std::size_t>(n)] = 1;
        A.push_back(std::move(row));
        b.emplace_back(0);
    }
    {
        std::vector<Rational> row(static_cast<std::size_t>(nv), Rational(1));
        row[static_cast<std::size_t>(n)] = 0;
        A.push_back(std::move(row));
        b.emplace_back(1);
    }
    std::vector<Rational> c(static_cast<std::size_t>(nv), Rational(0));
    c[static_cast<std::size_t>(n)] = 1;
    LpSolution sol = lp_maximize(A, b, c);
    return sol.status == LpSolution::Status::optimal && sol.objective > 0;
}

PolyCone remove_redundant(const PolyCone& cone) {
    // Halfspace k is redundant iff a_k.y <= 0 holds on the cone cut by the
    // others; tested on the box y in [-2,2]^n via y = u - 2, u >= 0 (valid
    // because the relaxed cone is a cone, so any violation scales into the box).
    const int n = cone.dim;
    PolyCone current = cone;
    for (std::size_t k = 0; k < current.halfspaces.size();) {
        std::vector<std::vector<Rational>> A;
        std::vector<Rational> b;
        for (std::size_t l = 0; l < current.halfspaces.size(); ++l) {
            if (l == k) continue;
            const auto& a = current.halfspaces[l].normal;
            std::vector<Rational> row(static_cast<std::size_t>(n));
            Rational rowsum(0);
            for (int c = 0; c < n; ++c) {
                row[static_cast<std::size_t>(c)] = Rational(a[static_cast<std::size_t>(c)]);
                rowsum += Rational(a[static_cast<std::size_t>(c)]);
            }
            A.push_back(std::move(row));
            b.push_back(2 * rowsum);
        }
        for (int c = 0; c < n; ++c) { // u_c <= 4
            std::vector<Rational> row(static_cast<std::size_t>(n), Rational(0));
            row[static_cast<std::size_t>(c)] = 1;
            A.push_back(std::move(row));
            b.emplace_back(4);
        }
        const auto& ak = current.halfspaces[k].normal;
        std::vector<Rational> c(static_cast<std::size_t>(n));
        Rational aksum(0);
        for (int i = 0; i < n; ++i) {
            c[static_cast<std::size_t>(i)] = Rational(ak[static_cast<std::size_t>(i)]);
            aksum += Rational(ak[static_cast<std::size_t>(i)]);
        }
        LpSolution sol = lp_maximize(A, b, c);
        const bool redundant =
            sol.status == LpSolution::Status::optimal && sol.objective - 2 * aksum <= 0;
        if (redundant)
            current.halfspaces.erase(current.halfspaces.begin() + static_cast<std::ptrdiff_t>(k));
        else
            ++k;
    }
    return current;
}

std::vector<SimplicialCone> triangulate(const PolyCone& cone) {
    if (!cone_nonempty(cone)) throw input_error("empty-cone", "cannot triangulate an empty cone");
    PolyCone reduced = remove_redundant(cone);

    std::vector<Vertex> verts = enumerate_vertices(reduced);
    const int n = reduced.dim;
    if (static_cast<int>(verts.size()) < n)
        throw invariant_error("vertex-enumeration", "nonempty cone cross-section with too few vertices");

    std::vector<int> all(verts.size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<int>> simplices;
    triangulate_face(verts, reduced, all, n - 1, simplices);

    std::vector<SimplicialCone> out;
    out.reserve(simplices.size());
    for (const auto& s : simplices) {
        std::vector<std::vector<std::int64_t>> rays;
        rays.reserve(s.size());
        for (int vi : s) rays.push_back(vertex_to_primitive_ray(verts[static_cast<std::size_t>(vi)]));
        out.push_back(cone_from_rays(std::move(rays)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

MonomialMap monomial_map_for(const SimplicialCone& cone) {
    Int detH = cone.H.det();
    if (detH == 0) throw input_error("singular-matrix", "facet matrix is singular");
    IntMatrix eps = cone.H.adjugate();
    if (detH < 0)
        for (int r = 0; r < eps.size(); ++r)
            for (int c = 0; c < eps.size(); ++c) eps(r, c) = -eps(r, c);
    for (int r = 0; r < eps.size(); ++r)
        for (int c = 0; c < eps.size(); ++c)
            if (eps(r, c) < 0)
                throw invariant_error("negative-exponent",
                                      "adjugate produced a negative exponent; cone not inside the negative octant");
    MonomialMap map;
    map.N = to_int64(detH < 0 ? Int(-detH) : detH);
    map.eps = std::move(eps);
#ifndef NDEBUG
    {
        IntMatrix prod = map.eps.mul(cone.H);
        for (int r = 0; r < prod.size(); ++r)
            for (int c = 0; c < prod.size(); ++c) assert(prod(r, c) == (r == c ? map.N : 0));
    }
#endif
    return map;
}

std::vector<std::int64_t> pullback_exponents(const std::vector<std::int64_t>& exps, const MonomialMap& map) {
    return map.eps.apply(exps);
}

LaurentMonomial pullback(const LaurentMonomial& m, const MonomialMap& map) {
    if (m.dimension() != map.eps.size())
        throw input_error("dimension-mismatch", "monomial dimension does not match map");
    return LaurentMonomial(m.coefficient, pullback_exponents(m.exponents, map));
}

LaurentMonomial jacobian_of(const MonomialMap& map) {
    Int det_eps = map.eps.det();
    std::vector<std::int64_t> exps = map.eps.row_sums();
    for (auto& e : exps) e -= 1;
    return LaurentMonomial(Rational(det_eps < 0 ? Int(-det_eps) : det_eps), std::move(exps));
}

std::vector<ConeCell> decompose_domain(const std::vector<LaurentMonomial>& ratios) {
    if (ratios.empty()) throw input_error("empty-input", "decompose_domain needs at least one ratio");
    const int n = ratios.front().dimension();
    for (const auto& r : ratios) {
        if (r.dimension() != n) throw input_error("dimension-mismatch", "ratios of inconsistent dimension");
        if (r.is_constant()) throw input_error("constant-ratio", "constant ratios carry no geometric content");
    }
    const std::size_t L = ratios.size();
    if (L > 20) throw budget_error("too-many-ratios", "sign-pattern enumeration over 2^" + std::to_string(L));

    std::vector<ConeCell> cells;
    for (std::size_t mask = 0; mask < (1u << L); ++mask) {
        std::vector<RatioSign> signs(L);
        for (std::size_t i = 0; i < L; ++i)
            signs[i] = (mask >> i) & 1 ? RatioSign::above : RatioSign::below;
        PolyCone cone = cone_from_ratios(ratios, signs);
        if (!cone_nonempty(cone)) continue; // empty sign pattern, skipped silently
        for (auto& sc : triangulate(cone)) {
            ConeCell cell;
            cell.sign_pattern = signs;
            cell.map = monomial_map_for(sc);
            cell.jacobian = jacobian_of(cell.map);
            cell.cone = std::move(sc);
#ifndef NDEBUG
            for (std::size_t i = 0; i < L; ++i) {
                auto pb = pullback_exponents(ratios[i].exponents, cell.map);
                if (signs[i] == RatioSign::above)
                    for (auto& e : pb) e = -e;
                for (auto e : pb) assert(e >= 0);
            }
#endif
            cells.push_back(std::move(cell));
        }
    }
    return cells; // already canonical: masks ascending, cones sorted per mask
}

int cell_membership(const ConeCell& cell, const std::vector<double>& x, double margin) {
    const int n = cell.map.eps.size();
    if (static_cast<int>(x.size()) != n)
        throw input_error("dimension-mismatch", "point dimension does not match cell");
    // ln z = (eps^T)^{-1} ln x; row d uses column d of adj(eps) over det(eps).
    IntMatrix adj = cell.map.eps.adjugate();
    const double det = to_double(Rational(cell.map.eps.det()));
    std::vector<double> lx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) lx[static_cast<std::size_t>(i)] = std::log(x[static_cast<std::size_t>(i)]);
    int state = 1;
    for (int d = 0; d < n; ++d) {
        double acc = 0;
        for (int i = 0; i < n; ++i) acc += static_cast<double>(adj(i, d)) * lx[static_cast<std::size_t>(i)];
        double lnz = acc / det;
        if (std::abs(lnz) <= margin) state = std::min(state, 0);
        else if (lnz > 0) return -1;
    }
    return state;
}

} // namespace oscint
