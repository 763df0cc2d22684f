#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oscint/int_matrix.hpp"
#include "oscint/log_power_sum.hpp"
#include "oscint/sublevel_function.hpp"

using namespace oscint;

namespace {

Rational rat(long n, long d = 1) { return Rational(n, d); }

std::mt19937 rng(20240817);

Rational random_rational(long max_abs = 9) {
    std::uniform_int_distribution<long> num(-max_abs, max_abs);
    std::uniform_int_distribution<long> den(1, max_abs);
    return Rational(num(rng), den(rng));
}

LogPowerSum random_sum(int max_terms = 5) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> kdist(0, 2);
    std::uniform_int_distribution<long> sdist(0, 6);
    LogPowerSum g;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) g.add_term(Rational(sdist(rng), 2), kdist(rng), random_rational());
    return g;
}

SublevelFunction exact_function(LogPowerSum germ) {
    SublevelFunction f;
    f.total_mass = germ.value_at_one();
    f.germ = std::move(germ);
    f.scale = 1;
    f.threshold = 1;
    f.exact_everywhere = true;
    return f;
}

} // namespace

TEST_CASE("rational normalization invariants") {
    Rational q = make_rational(6, -4);
    CHECK(rat_num(q) == -3);
    CHECK(rat_den(q) == 2);
    CHECK(rat_to_string(q) == "-3/2");
    CHECK(parse_rational("-3/2") == q);
    CHECK(rat_pow(rat(2, 3), -2) == rat(9, 4));
}

TEST_CASE("log power sum arithmetic examples") {
    // additive inverse cancels to an empty sum
    LogPowerSum a = LogPowerSum::single(rat(1), 0, rat(1));
    LogPowerSum b = LogPowerSum::single(rat(1), 0, rat(-1));
    CHECK((a + b).empty());

    // scalar linearity
    CHECK(LogPowerSum::single(rat(1), 1, rat(1)).scaled(rat(3)) == LogPowerSum::single(rat(1), 1, rat(3)));

    // exponent/log-power addition under term multiplication
    CHECK(LogPowerSum::single(rat(1), 0, rat(1)).term_shifted(rat(1, 2), 1) ==
          LogPowerSum::single(rat(3, 2), 1, rat(1)));
}

TEST_CASE("term ordering keeps the leading term first") {
    LogPowerSum g;
    g.add_term(rat(2), 0, rat(1));
    g.add_term(rat(1, 2), 1, rat(5));
    g.add_term(rat(1, 2), 0, rat(3));
    CHECK(g.min_exponent() == rat(1, 2));
    auto it = g.terms().begin();
    CHECK(it->first.k == 0);
    CHECK(it->second == rat(3));
}

TEST_CASE("integrate_scaled: hand-integrated oracle cases") {
    // int_0^1 min(1, t/y) dy = t - t ln t
    SublevelFunction g = exact_function(LogPowerSum::single(rat(1), 0, rat(1)));
    SublevelFunction f = integrate_scaled(g, 0, 1);
    LogPowerSum expect;
    expect.add_term(rat(1), 0, rat(1));
    expect.add_term(rat(1), 1, rat(-1));
    CHECK(f.germ == expect);
    CHECK(f.total_mass == rat(1));
    CHECK(f.exact_everywhere);

    // constant input: int_0^1 y^2 dy = 1/3
    SublevelFunction one = exact_function(LogPowerSum::constant(rat(1)));
    SublevelFunction third = integrate_scaled(one, 2, 1);
    CHECK(third.germ == LogPowerSum::constant(rat(1, 3)));
    CHECK(third.total_mass == rat(1, 3));

    // germ t^{1/2} under b = 2 hits the log mechanism at p = -1:
    // int_0^1 min(1, (t/y^2)^{1/2}) dy = t^{1/2} - (1/2) t^{1/2} ln t
    SublevelFunction h = integrate_scaled(exact_function(LogPowerSum::single(rat(1, 2), 0, rat(1))), 0, 2);
    LogPowerSum expect_h;
    expect_h.add_term(rat(1, 2), 0, rat(1));
    expect_h.add_term(rat(1, 2), 1, rat(-1, 2));
    CHECK(h.germ == expect_h);

    // and under b = 4 stays log-free: 2 t^{1/4} - t^{1/2}
    SublevelFunction q = integrate_scaled(exact_function(LogPowerSum::single(rat(1, 2), 0, rat(1))), 0, 4);
    LogPowerSum expect_q;
    expect_q.add_term(rat(1, 4), 0, rat(2));
    expect_q.add_term(rat(1, 2), 0, rat(-1));
    CHECK(q.germ == expect_q);
}

TEST_CASE("integrate_scaled rejects non-integrable germs") {
    SublevelFunction g = exact_function(LogPowerSum::single(rat(-1), 0, rat(1)));
    CHECK_THROWS_WITH_AS(integrate_scaled(g, 0, 1), doctest::Contains("divergent-recursion"), EngineError);
}

TEST_CASE("integrate_scaled is linear") {
    for (int trial = 0; trial < 25; ++trial) {
        LogPowerSum g1 = random_sum();
        LogPowerSum g2 = random_sum();
        std::uniform_int_distribution<long> adist(0, 3), bdist(1, 3);
        long a = adist(rng), b = bdist(rng);
        SublevelFunction s1 = exact_function(g1);
        SublevelFunction s2 = exact_function(g2);
        SublevelFunction sum = exact_function(g1 + g2);
        CHECK(integrate_scaled(sum, a, b).germ == (integrate_scaled(s1, a, b).germ + integrate_scaled(s2, a, b).germ));
    }
}

TEST_CASE("log power increases exactly on the resonant exponent") {
    std::uniform_int_distribution<long> adist(0, 4), bdist(1, 4), sdist(0, 8);
    for (int trial = 0; trial < 50; ++trial) {
        long a = adist(rng), b = bdist(rng);
        Rational s(sdist(rng), 2);
        SublevelFunction g = exact_function(LogPowerSum::single(s, 0, rat(1)));
        SublevelFunction f = integrate_scaled(g, a, b);
        const bool resonant = (Rational(a) - Rational(b) * s) == -1;
        CHECK(f.germ.max_log_power() == (resonant ? 1 : 0));
    }
}

TEST_CASE("termwise derivative matches hand results") {
    LogPowerSum g;
    g.add_term(rat(1), 0, rat(1));
    g.add_term(rat(1), 1, rat(-1));
    SublevelFunction f = exact_function(g);
    CHECK(termwise_derivative(f, 1) == LogPowerSum::single(rat(0), 1, rat(-1))); // -ln t

    SublevelFunction h = exact_function(LogPowerSum::single(rat(1, 2), 0, rat(1)));
    CHECK(termwise_derivative(h, 1) == LogPowerSum::single(rat(-1, 2), 0, rat(1, 2)));

    SublevelFunction c = exact_function(LogPowerSum::constant(rat(7)));
    CHECK(termwise_derivative(c, 1).empty());
    CHECK(termwise_derivative(f, 0) == f.germ);
}

TEST_CASE("derivative of antiderivative is the identity") {
    for (int trial = 0; trial < 30; ++trial) {
        LogPowerSum g = random_sum();
        // drop constant terms: they are the kernel of d/dt
        LogPowerSum no_const;
        for (const auto& [key, c] : g.terms())
            if (!(key.s == 0 && key.k == 0)) no_const.add_term(key.s, key.k, c);
        CHECK(derivative(antiderivative(no_const)) == no_const);
    }
}

TEST_CASE("exact matrix determinant and adjugate") {
    IntMatrix m(2, {2, -1, -1, 2});
    CHECK(m.det() == 3);
    IntMatrix adj = m.adjugate();
    CHECK(adj == IntMatrix(2, {2, 1, 1, 2}));
    CHECK(IntMatrix::identity(3).det() == 1);

    // adj(H) * H = det(H) * I on random integer matrices
    std::uniform_int_distribution<int> entry(-9, 9);
    std::uniform_int_distribution<int> size(2, 4);
    int checked = 0;
    while (checked < 100) {
        int n = size(rng);
        IntMatrix h(n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) h(r, c) = entry(rng);
        Int d = h.det();
        if (d == 0) continue;
        IntMatrix prod = h.adjugate().mul(h);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) CHECK(Int(prod(r, c)) == (r == c ? d : Int(0)));
        ++checked;
    }
}

TEST_CASE("serialization round-trips exactly") {
    for (int trial = 0; trial < 50; ++trial) {
        LogPowerSum g = random_sum(8);
        CHECK(log_power_sum_from_text(to_text(g)) == g);
    }
    LogPowerSum g;
    g.add_term(rat(-1, 2), 3, rat(-22, 7));
    CHECK(log_power_sum_from_text(to_text(g)) == g);
}

TEST_CASE("pretty printing") {
    LogPowerSum g;
    g.add_term(rat(1), 0, rat(1));
    g.add_term(rat(1), 1, rat(-1));
    CHECK(pretty(g) == "t - t*ln(t)");
    CHECK(pretty(g, "t/4") == "(t/4) - (t/4)*ln(t/4)");
    CHECK(pretty(LogPowerSum{}) == "0");
    LogPowerSum h;
    h.add_term(rat(1, 2), 0, rat(3, 2));
    CHECK(pretty(h) == "3/2*t^(1/2)");
}

TEST_CASE("evaluation agrees with the closed form") {
    LogPowerSum g;
    g.add_term(rat(1), 0, rat(1));
    g.add_term(rat(1), 1, rat(-1));
    double t = 0.01;
    CHECK(g.evaluate(t) == doctest::Approx(t - t * std::log(t)).epsilon(1e-14));
    CHECK(g.value_at_one() == rat(1));
}
