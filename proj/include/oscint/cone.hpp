#ifndef OSCINT_CONE_HPP
#define OSCINT_CONE_HPP

#include <cstdint>
#include <vector>

#include "oscint/int_matrix.hpp"
#include "oscint/laurent_monomial.hpp"

namespace oscint {

// Homogeneous open halfspace  normal . y < 0  in log coordinates y = ln x.
// Normals are primitive: nonzero with gcd of entries equal to 1.
struct HalfSpace {
    std::vector<std::int64_t> normal;

    friend bool operator==(const HalfSpace& a, const HalfSpace& b) { return a.normal == b.normal; }
    friend bool operator<(const HalfSpace& a, const HalfSpace& b) { return a.normal < b.normal; }
};

// Intersection of halfspaces; always carries the n coordinate halfspaces
// y_m < 0, so the cone lies in the open negative octant.
struct PolyCone {
    int dim = 0;
    std::vector<HalfSpace> halfspaces;
};

// Simplicial cone spanned by n linearly independent rays inside the negative
// octant.  H holds the facet normals as columns; ray l annihilates every
// column except column l.
struct SimplicialCone {
    IntMatrix H;
    std::vector<std::vector<std::int64_t>> rays; // primitive integers, entries <= 0

    friend bool operator<(const SimplicialCone& a, const SimplicialCone& b) { return a.rays < b.rays; }
};

// Substitution x_i = prod_d z_d^{eps(d,i)} with eps nonnegative and
// eps * H = N * I for the source cone's facet matrix.
struct MonomialMap {
    IntMatrix eps;
    std::int64_t N = 1;
};

enum class RatioSign { below, above };

// One cell of the unit-cube decomposition: substitution plus the unit
// rectangle image and the Jacobian monomial |det eps| * prod z_d^{sigma_d-1}.
struct ConeCell {
    std::vector<RatioSign> sign_pattern; // one entry per input ratio
    SimplicialCone cone;
    MonomialMap map;
    LaurentMonomial jacobian;
};

// Log-coordinate transcription of monomial constraints: a "below" sign for
// ratio r contributes the normal exponent(r), "above" the negated normal;
// the n coordinate halfspaces are always included.
PolyCone cone_from_ratios(const std::vector<LaurentMonomial>& ratios, const std::vector<RatioSign>& signs);

// Strict feasibility, decided exactly: maximize s subject to a.y <= -s for
// every halfspace, sum |y_i| <= 1, s >= 0; nonempty iff the optimum is > 0.
bool cone_nonempty(const PolyCone& cone);

// Drop halfspaces implied by the others (exact LP certificates).
PolyCone remove_redundant(const PolyCone& cone);

// Exact vertex enumeration on the cross-section {sum y = -1} followed by a
// fan triangulation from the lexicographically smallest vertex.  Requires a
// nonempty cone; the returned cones partition it up to measure zero.
std::vector<SimplicialCone> triangulate(const PolyCone& cone);

// eps = sign(det H) * adjugate(H), N = |det H|.
MonomialMap monomial_map_for(const SimplicialCone& cone);

// Exponent vectors transform by  new_d = sum_i eps(d,i) * old_i; the
// coefficient is unchanged.
LaurentMonomial pullback(const LaurentMonomial& m, const MonomialMap& map);
std::vector<std::int64_t> pullback_exponents(const std::vector<std::int64_t>& exps, const MonomialMap& map);

LaurentMonomial jacobian_of(const MonomialMap& map);

// Full decomposition of (0,1)^n: every feasible sign pattern is triangulated
// and mapped; on each cell every ratio (or its reciprocal, per the recorded
// sign) pulls back to a nonnegative-exponent monomial.
std::vector<ConeCell> decompose_domain(const std::vector<LaurentMonomial>& ratios);

// Membership of a point of (0,1)^n in the image of a cell's map, decided in
// log coordinates with exact rational matrix data and float logs.  Returns
// +1 inside, 0 within `margin` of the boundary, -1 outside.
int cell_membership(const ConeCell& cell, const std::vector<double>& x, double margin = 1e-12);

} // namespace oscint

#endif
