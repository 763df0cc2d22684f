#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oscint/sublevel.hpp"
#include "oscint/transfer.hpp"
#include "oscint/verify.hpp"

using namespace oscint;

namespace {

Rational rat(long n, long d = 1) { return Rational(n, d); }
MultiIndex mi(std::vector<long> v) { return MultiIndex(std::move(v)); }

SublevelProblem problem(std::vector<MonomialPhase> phases, PolynomialAmplitude amp) {
    SublevelProblem p;
    p.dimension = amp.dimension();
    p.phases = std::move(phases);
    p.amplitude = std::move(amp);
    return p;
}

PolynomialAmplitude unit_amp(int n) { return PolynomialAmplitude::constant(n, Rational(1)); }

} // namespace

TEST_CASE("monomial_cell_volume closed forms") {
    // n=1, m=2: vol{y^2 < t} = t^{1/2}
    SublevelFunction a = monomial_cell_volume(mi({0}), mi({2}));
    CHECK(a.germ == LogPowerSum::single(rat(1, 2), 0, rat(1)));
    CHECK(a.total_mass == rat(1));
    CHECK(a.exact_everywhere);

    // n=2, m=(1,1): t - t ln t
    SublevelFunction b = monomial_cell_volume(mi({0, 0}), mi({1, 1}));
    LogPowerSum expect_b;
    expect_b.add_term(rat(1), 0, rat(1));
    expect_b.add_term(rat(1), 1, rat(-1));
    CHECK(b.germ == expect_b);
    CHECK(b.total_mass == rat(1));

    // n=2, m=(2,1): 2 t^{1/2} - t
    SublevelFunction c = monomial_cell_volume(mi({0, 0}), mi({2, 1}));
    LogPowerSum expect_c;
    expect_c.add_term(rat(1, 2), 0, rat(2));
    expect_c.add_term(rat(1), 0, rat(-1));
    CHECK(c.germ == expect_c);

    // inactive variables contribute 1/(alpha_i + 1)
    SublevelFunction d = monomial_cell_volume(mi({2, 0}), mi({0, 2}));
    CHECK(d.germ == LogPowerSum::single(rat(1, 2), 0, rat(1, 3)));
    CHECK(d.total_mass == rat(1, 3));
}

TEST_CASE("monomial_cell_volume germ structure") {
    // log powers bounded by n-1, exponents positive, mass = prod 1/(alpha_i+1)
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> ndist(1, 4);
    std::uniform_int_distribution<long> edist(0, 4);
    for (int trial = 0; trial < 30; ++trial) {
        int n = ndist(rng);
        std::vector<long> alpha(static_cast<std::size_t>(n)), m(static_cast<std::size_t>(n));
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            alpha[static_cast<std::size_t>(i)] = edist(rng);
            m[static_cast<std::size_t>(i)] = edist(rng);
            nonzero = nonzero || m[static_cast<std::size_t>(i)] > 0;
        }
        if (!nonzero) m[0] = 1;
        SublevelFunction f = monomial_cell_volume(mi(alpha), mi(m));
        CHECK(f.germ.max_log_power() <= n - 1);
        CHECK(f.germ.min_exponent() > 0);
        Rational mass(1);
        for (int i = 0; i < n; ++i) mass /= rat(alpha[static_cast<std::size_t>(i)] + 1);
        CHECK(f.total_mass == mass);
        // saturation: the germ evaluated at t = 1 equals the full mass
        CHECK(f.germ.value_at_one() == mass);
    }
}

TEST_CASE("leading exponent law") {
    // smallest exponent = min (alpha_i+1)/m_i over active i; log power = multiplicity - 1
    std::mt19937 rng(62831);
    std::uniform_int_distribution<int> ndist(1, 4);
    std::uniform_int_distribution<long> adist(0, 4), mdist(1, 4);
    for (int trial = 0; trial < 40; ++trial) {
        int n = ndist(rng);
        std::vector<long> alpha(static_cast<std::size_t>(n)), m(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            alpha[static_cast<std::size_t>(i)] = adist(rng);
            m[static_cast<std::size_t>(i)] = mdist(rng);
        }
        SublevelFunction f = monomial_cell_volume(mi(alpha), mi(m));
        Rational lead(alpha[0] + 1, m[0]);
        int mult = 0;
        for (int i = 0; i < n; ++i) lead = std::min(lead, rat(alpha[static_cast<std::size_t>(i)] + 1, m[static_cast<std::size_t>(i)]));
        for (int i = 0; i < n; ++i)
            if (rat(alpha[static_cast<std::size_t>(i)] + 1, m[static_cast<std::size_t>(i)]) == lead) ++mult;
        CHECK(f.germ.min_exponent() == lead);
        int lead_logpower = 0;
        for (const auto& [key, c] : f.germ.terms())
            if (key.s == lead) lead_logpower = std::max(lead_logpower, key.k);
        CHECK(lead_logpower == mult - 1);
    }
}

TEST_CASE("sublevel_expansion single-phase examples") {
    // phase x^2, amplitude 1
    SublevelFunction a = sublevel_expansion(problem({MonomialPhase(rat(1), mi({2}))}, unit_amp(1)));
    CHECK(a.germ == LogPowerSum::single(rat(1, 2), 0, rat(1)));
    CHECK(a.scale == rat(1));

    // phase x^2, amplitude x: int_0^{sqrt t} y dy = t/2
    PolynomialAmplitude amp_x(1);
    amp_x.add_term(mi({1}), rat(1));
    SublevelFunction b = sublevel_expansion(problem({MonomialPhase(rat(1), mi({2}))}, amp_x));
    CHECK(b.germ == LogPowerSum::single(rat(1), 0, rat(1, 2)));

    // phase 4 x1 x2: germ in u = t/4 with unit-scale shape u - u ln u
    SublevelFunction c = sublevel_expansion(problem({MonomialPhase(rat(4), mi({1, 1}))}, unit_amp(2)));
    LogPowerSum expect_c;
    expect_c.add_term(rat(1), 0, rat(1));
    expect_c.add_term(rat(1), 1, rat(-1));
    CHECK(c.germ == expect_c);
    CHECK(c.scale == rat(4));
    CHECK(c.threshold == rat(4));
    CHECK(c.total_mass == rat(1));

    // numeric check of the scaled evaluation against quadrature
    QuadratureSpec spec;
    spec.method = QuadMethod::adaptive;
    spec.tolerance = 1e-10;
    SublevelProblem p4 = problem({MonomialPhase(rat(4), mi({1, 1}))}, unit_amp(2));
    for (double t : {0.1, 0.5, 2.0}) {
        NumericResult r = numeric_sublevel(p4, t, spec);
        CHECK(c.value(t) == doctest::Approx(r.value).epsilon(1e-8));
    }
}

TEST_CASE("amplitude linearity of the expansion") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<long> edist(0, 3), cdist(-5, 5);
    for (int trial = 0; trial < 10; ++trial) {
        PolynomialAmplitude a1(2), a2(2);
        for (int terms = 0; terms < 3; ++terms) {
            a1.add_term(mi({edist(rng), edist(rng)}), rat(cdist(rng)));
            a2.add_term(mi({edist(rng), edist(rng)}), rat(cdist(rng)));
        }
        if (a1.is_zero() || a2.is_zero()) continue;
        PolynomialAmplitude sum = a1;
        for (const auto& [key, c] : a2.terms()) sum.add_term(key, c);
        if (sum.is_zero()) continue;
        MonomialPhase phase(rat(1), mi({2, 1}));
        SublevelFunction f1 = sublevel_expansion(problem({phase}, a1));
        SublevelFunction f2 = sublevel_expansion(problem({phase}, a2));
        SublevelFunction fs = sublevel_expansion(problem({phase}, sum));
        CHECK(fs.germ == (f1.germ + f2.germ));
    }
}

TEST_CASE("mellin identity: expansion transform equals the product formula") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> ndist(1, 4);
    std::uniform_int_distribution<long> edist(0, 5);
    for (int trial = 0; trial < 20; ++trial) {
        int n = ndist(rng);
        std::vector<long> beta(static_cast<std::size_t>(n)), m(static_cast<std::size_t>(n));
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            beta[static_cast<std::size_t>(i)] = edist(rng);
            m[static_cast<std::size_t>(i)] = edist(rng);
            nonzero = nonzero || m[static_cast<std::size_t>(i)] > 0;
        }
        if (!nonzero) m[0] = 1;
        SublevelFunction E = monomial_cell_volume(mi(beta), mi(m));
        auto poles = mellin_meromorphic(E);
        auto oracle = mellin_product_oracle(mi(beta), mi(m)).partial_fractions();
        CHECK(poles == oracle);
    }
}

TEST_CASE("positivity and monotonicity for nonnegative amplitudes") {
    SublevelFunction f = monomial_cell_volume(mi({1, 0}), mi({2, 3}));
    double prev = 0.0;
    for (double t : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
        double v = f.germ.evaluate(t);
        CHECK(v > 0.0);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("dominant_phase_per_cell examples") {
    // phases {x1, x2}: two cells, each dominated by the larger coordinate
    std::vector<MonomialPhase> xy{MonomialPhase(rat(1), mi({1, 0})), MonomialPhase(rat(1), mi({0, 1}))};
    auto cells = dominant_phase_per_cell(xy);
    REQUIRE(cells.size() == 2);
    for (const auto& dc : cells) {
        // the dominant pullback exponents must majorize the other phase's
        auto dom = pullback_exponents({dc.dominant_index == 0 ? 1 : 0, dc.dominant_index == 0 ? 0 : 1}, dc.cell.map);
        auto oth = pullback_exponents({dc.dominant_index == 0 ? 0 : 1, dc.dominant_index == 0 ? 1 : 0}, dc.cell.map);
        for (std::size_t i = 0; i < dom.size(); ++i) CHECK(oth[i] >= dom[i]);
    }
    CHECK(cells[0].dominant_index != cells[1].dominant_index);

    // duplicates rejected
    std::vector<MonomialPhase> dup{MonomialPhase(rat(1), mi({2})), MonomialPhase(rat(1), mi({2}))};
    CHECK_THROWS_WITH_AS(dominant_phase_per_cell(dup), doctest::Contains("duplicate-phase"), EngineError);

    // global domination skips the decomposition entirely
    std::vector<MonomialPhase> nested{MonomialPhase(rat(1), mi({1, 0})), MonomialPhase(rat(1), mi({1, 1}))};
    auto single = dominant_phase_per_cell(nested);
    REQUIRE(single.size() == 1);
    CHECK(single[0].dominant_index == 0);
    CHECK(single[0].cell.map.eps == IntMatrix::identity(2));
}

TEST_CASE("dominance verified by sampling") {
    std::vector<MonomialPhase> phases{MonomialPhase(rat(1), mi({2, 1})), MonomialPhase(rat(1), mi({1, 2}))};
    auto cells = dominant_phase_per_cell(phases);
    CHECK(cells.size() == 3);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (const auto& dc : cells) {
        for (int i = 0; i < 10000; ++i) {
            // sample z in the cell cube, push forward to x through eps
            std::vector<double> z{uni(rng), uni(rng)};
            std::vector<double> x(2, 1.0);
            for (int xi = 0; xi < 2; ++xi)
                for (int d = 0; d < 2; ++d)
                    x[static_cast<std::size_t>(xi)] *=
                        std::pow(z[static_cast<std::size_t>(d)], static_cast<double>(dc.cell.map.eps(d, xi)));
            double f0 = phases[0].evaluate(x), f1 = phases[1].evaluate(x);
            double fd = dc.dominant_index == 0 ? f0 : f1;
            CHECK(fd >= std::max(f0, f1) * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("expand_multi: max of coordinates has volume t^2") {
    SublevelProblem p = problem({MonomialPhase(rat(1), mi({1, 0})), MonomialPhase(rat(1), mi({0, 1}))}, unit_amp(2));
    MultiPhaseExpansion e = expand_multi_detailed(p);
    CHECK(e.combined.germ == LogPowerSum::single(rat(2), 0, rat(1)));
    CHECK(e.combined.total_mass == rat(1));
    CHECK(e.cells.size() == 2);
}

TEST_CASE("expand_multi: single-phase passthrough") {
    SublevelProblem p = problem({MonomialPhase(rat(1), mi({1, 1}))}, unit_amp(2));
    SublevelFunction f = expand_multi(p);
    LogPowerSum expect;
    expect.add_term(rat(1), 0, rat(1));
    expect.add_term(rat(1), 1, rat(-1));
    CHECK(f.germ == expect);
}

TEST_CASE("expand_multi: globally dominated phase is pruned") {
    SublevelProblem p = problem({MonomialPhase(rat(1), mi({1, 0})), MonomialPhase(rat(1), mi({1, 1}))}, unit_amp(2));
    MultiPhaseExpansion e = expand_multi_detailed(p);
    CHECK(e.combined.germ == LogPowerSum::single(rat(1), 0, rat(1))); // vol{x1 < t} = t
    CHECK(e.pruned == std::vector<int>{1});
}

TEST_CASE("expand_multi is invariant under phase permutation and relabeling") {
    PolynomialAmplitude amp(2);
    amp.add_term(mi({0, 0}), rat(1));
    amp.add_term(mi({1, 1}), rat(2));
    std::vector<MonomialPhase> ph{MonomialPhase(rat(1), mi({2, 1})), MonomialPhase(rat(1), mi({1, 2}))};
    SublevelFunction forward = expand_multi(problem(ph, amp));
    std::swap(ph[0], ph[1]);
    SublevelFunction swapped = expand_multi(problem(ph, amp));
    CHECK(forward.germ == swapped.germ);

    // relabel coordinates x1 <-> x2 (the data is symmetric under the swap)
    std::vector<MonomialPhase> relabeled{MonomialPhase(rat(1), mi({1, 2})), MonomialPhase(rat(1), mi({2, 1}))};
    CHECK(expand_multi(problem(relabeled, amp)).germ == forward.germ);
}

TEST_CASE("expand_multi agrees with Monte Carlo on a mixed problem") {
    PolynomialAmplitude amp(2);
    amp.add_term(mi({1, 0}), rat(2));
    amp.add_term(mi({0, 2}), rat(1));
    SublevelProblem p = problem({MonomialPhase(rat(1), mi({2, 1})), MonomialPhase(rat(1), mi({1, 2}))}, amp);
    SublevelFunction f = expand_multi(p);
    QuadratureSpec spec;
    spec.method = QuadMethod::monte_carlo;
    spec.samples = 400000;
    spec.seed = 20240818;
    for (double t : {0.05, 0.2}) {
        NumericResult r = numeric_sublevel(p, t, spec);
        CHECK(std::abs(f.value(t) - r.value) <= 3.5 * r.error);
    }
}

TEST_CASE("incomparable constants are rejected") {
    std::vector<MonomialPhase> ph{MonomialPhase(rat(1, 2), mi({1, 0})), MonomialPhase(rat(1), mi({0, 1}))};
    CHECK_THROWS_WITH_AS(dominant_phase_per_cell(ph), doctest::Contains("incomparable-phases"), EngineError);
}

TEST_CASE("total mass equals the amplitude cube mass across cells") {
    PolynomialAmplitude amp(3);
    amp.add_term(mi({1, 0, 2}), rat(3));
    amp.add_term(mi({0, 1, 0}), rat(1, 2));
    SublevelProblem p = problem(
        {MonomialPhase(rat(1), mi({1, 0, 0})), MonomialPhase(rat(1), mi({0, 1, 0})), MonomialPhase(rat(1), mi({0, 0, 1}))},
        amp);
    MultiPhaseExpansion e = expand_multi_detailed(p);
    CHECK(e.combined.total_mass == amp.cube_mass());
    // vol{max(x1,x2,x3) < t} with the amplitude: exact germ evaluates to the
    // amplitude integral over (0,t)^3 — cross-check at a point
    QuadratureSpec spec;
    spec.method = QuadMethod::adaptive;
    spec.tolerance = 1e-9;
    NumericResult r = numeric_sublevel(p, 0.3, spec);
    CHECK(e.combined.value(0.3) == doctest::Approx(r.value).epsilon(1e-7));
}
