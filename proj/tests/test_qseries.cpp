#include <doctest.h>

#include "haupt/forms.hpp"
#include "haupt/qseries.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace haupt;
using support::error_of;
using support::ints;

TEST_SUITE("qseries")
{
    TEST_CASE("sums")
    {
        const auto a = LaurentSeries::monomial(1, -1);
        CHECK(add(a, -a).is_zero());

        const auto j = j_function(10);
        const auto jj = add(j, LaurentSeries::constant(744));
        CHECK(jj.coeff(0) == 744);
        CHECK(jj.coeff(1) == 196884);

        const auto s = add(ints(-1, {1, 0, 2}), ints(-1, {0, 0, 3}));
        CHECK(s.coeff(-1) == 1);
        CHECK(s.coeff(1) == 5);
        CHECK(s.high() == 2);
    }

    TEST_CASE("sum windows")
    {
        const auto a = ints(0, {1, 2, 3, 4});
        const auto b = ints(0, {1, 1});
        CHECK(add(a, b).high() == 2);
        CHECK(add(a, LaurentSeries()).high() == 4);
        CHECK(add(ints(5, {1}), ints(0, {1, 2})).high() == 2);
        CHECK(error_of([] { LaurentSeries::zero(3, 3); }) == Errc::EmptyWindow);
    }

    TEST_CASE("products")
    {
        CHECK(mul(LaurentSeries::monomial(1, -1), LaurentSeries::monomial(1, 1)).coeff(0) == 1);

        const auto delta = expand_eta_quotient(parse_eta_quotient("1^24"), 60);
        const auto one = mul(delta, recip(delta));
        CHECK(one.low() == 0);
        CHECK(one.coeff(0) == 1);
        for (long n = 1; n < one.high(); ++n)
            CHECK(one.coeff(n) == 0);

        std::vector<mpz_class> ones(30, 1);
        const auto geo = LaurentSeries::from_integers(0, ones);
        const auto prod = mul(ints(0, {1, -1}, true), geo);
        CHECK(prod.high() == 30);
        CHECK(prod.coeff(0) == 1);
        for (long n = 1; n < 30; ++n)
            CHECK(prod.coeff(n) == 0);
    }

    TEST_CASE("product window")
    {
        const auto a = ints(-1, {1, 2, 3, 4, 5});  // [-1, 4)
        const auto b = ints(2, {1, 1, 1});         // [2, 5)
        CHECK(mul(a, b).low() == 1);
        CHECK(mul(a, b).high() == std::min(-1 + 5, 2 + 4));
    }

    TEST_CASE("kronecker agrees with schoolbook")
    {
        std::mt19937_64 rng(7);
        for (int t = 0; t < 40; ++t) {
            const long la = static_cast<long>(rng() % 5) - 2, lb = static_cast<long>(rng() % 5) - 2;
            const auto a = support::random_sparse(rng, la, la + 20 + static_cast<long>(rng() % 200), 0.6);
            auto b = support::random_sparse(rng, lb, lb + 20 + static_cast<long>(rng() % 200), 0.6);
            if (t % 3 == 0)
                b = scale(b, mpq_class(-3, 7));
            const auto s = mul_schoolbook(a, b), k = mul_kronecker(a, b);
            CHECK(s.low() == k.low());
            CHECK(s.high() == k.high());
            CHECK(s.numerators() == k.numerators());
            CHECK(s.denominator() == k.denominator());
        }
    }

    TEST_CASE("reciprocals")
    {
        const auto r = recip(LaurentSeries::monomial(1, -1));
        CHECK(r.coeff(1) == 1);
        CHECK(r.low() == 1);

        const auto g = recip(ints(0, {1, -1}, true), 20);
        for (long n = 0; n < 20; ++n)
            CHECK(g.coeff(n) == 1);

        const auto frak = expand_eta_quotient(parse_eta_quotient("1^4*2^4*3^-4*6^-4"), 40);
        CHECK(recip(frak).low() == 1);

        CHECK(error_of([] { recip(ints(0, {0, 1})); }) == Errc::ZeroLeadingCoefficient);
    }

    TEST_CASE("U_p")
    {
        const auto u = u_p(ints(-1, {1, 0, 0, 0}), 2);
        CHECK(u.is_zero());

        const auto j = j_function(20);
        CHECK(u_p(j, 2).coeff(1) == mpz_class("21493760"));

        const auto f = ints(-3, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10});  // [-3, 7)
        const auto g = u_p(f, 3);
        CHECK(g.low() == -1);
        CHECK(g.high() == 3);
        CHECK(g.coeff(-1) == 1);
        CHECK(g.coeff(0) == 4);
        CHECK(g.coeff(2) == 10);

        CHECK(error_of([] { u_p(ints(0, {1, 2}), 1); }) == Errc::OutOfRange);
        CHECK(error_of([] { u_p(ints(1, {1}), 3); }) == Errc::EmptyWindow);
    }

    TEST_CASE("V_m")
    {
        const auto v = v_m(LaurentSeries::monomial(1, -1), 3);
        CHECK(v.coeff(-3) == 1);
        CHECK(v.coeff(0) == 0);

        const auto c = v_m(ints(0, {1, 0, 0}), 5);
        CHECK(c.coeff(0) == 1);
        CHECK(c.is_zero() == false);
        CHECK(c.high() == 11);

        const auto d1 = expand_eta_quotient(parse_eta_quotient("1^24"), 50);
        const auto d2 = expand_eta_quotient(parse_eta_quotient("2^24"), 99);
        CHECK(equal_on_overlap(v_m(d1, 2), d2));
        CHECK(v_m(d1, 2).low() == 2);
        CHECK(v_m(d1, 2).high() == 2 * 49 + 1);
    }

    TEST_CASE("U_p V_p identity")
    {
        std::mt19937_64 rng(11);
        for (long p : {2, 3, 5, 7, 13}) {
            const auto f = support::random_sparse(rng, -2, 40, 0.3);
            const auto g = u_p(v_m(f, p), p);
            CHECK(g.low() == f.low());
            CHECK(g.high() == f.high());
            CHECK(g.numerators() == f.numerators());
        }
    }

    TEST_CASE("valuations")
    {
        const auto j = j_function(400);
        const auto v = valuation_p(u_p(j, 2), 2);
        CHECK_FALSE(v.infinite);
        CHECK(v.value >= 11);

        CHECK(valuation_p(LaurentSeries::zero(0, 10), 7).infinite);

        const auto f = ints(0, {9, 18, 5});
        CHECK(valuation_p(scale(f, 3), 3).value == 1 + valuation_p(f, 3).value);

        CHECK(error_of([] { valuation_p(scale(ints(0, {1}), mpq_class(1, 2)), 2); }) == Errc::NonPIntegral);
        CHECK(valuation_p(scale(ints(0, {3}), mpq_class(1, 2)), 3).value == 1);
    }

    TEST_CASE("Gauss inequality on windows")
    {
        std::mt19937_64 rng(5);
        for (int t = 0; t < 20; ++t) {
            const auto f = scale(support::random_sparse(rng, 0, 30, 0.5), 4);
            const auto g = scale(support::random_sparse(rng, 0, 30, 0.5), 2);
            if (f.is_zero() || g.is_zero())
                continue;
            const auto v = valuation_p(mul(f, g), 2);
            CHECK(v.at_least(valuation_p(f, 2).value + valuation_p(g, 2).value));
        }
    }

    TEST_CASE("reduction")
    {
        const auto d1 = expand_eta_quotient(parse_eta_quotient("1^24"), 200);
        const auto d5 = expand_eta_quotient(parse_eta_quotient("5^24"), 200);
        const auto g = mul(pow(d1, 5), recip(d5));
        const auto r = reduce_mod(g, 5, 1);
        CHECK(r.coeff(0) == 1);
        for (long n = 1; n < r.high(); ++n)
            CHECK(r.coeff(n) == 0);

        CHECK(reduce_mod(LaurentSeries(), 3, 2).is_zero());

        const auto m = reduce_mod(ints(-1, {1, 0, 8}), 2, 3);
        CHECK(m.coeff(-1) == 1);
        CHECK(m.coeff(1) == 0);
        CHECK(reduce_mod(ints(0, {-1}), 5, 2).coeff(0) == 24);
    }

    TEST_CASE("comparison needs an overlap")
    {
        CHECK(first_difference(ints(0, {1}), ints(3, {1})) == 0);
        CHECK(first_difference(ints(0, {1, 2}), ints(0, {1, 2, 5})) == std::nullopt);
        CHECK(first_difference(ints(0, {1, 2, 3}), ints(0, {1, 2, 4})) == 2);
    }

    TEST_CASE("coefficients outside the window")
    {
        const auto f = ints(0, {1, 2});
        CHECK(f.coeff(-5) == 0);
        CHECK(error_of([&] { f.coeff(2); }) == Errc::OutOfRange);
        CHECK(LaurentSeries::monomial(3, 2).coeff(1000) == 0);
    }

    TEST_CASE("text round trip")
    {
        const auto f = scale(ints(-1, {1, 0, 3, 0, -7}), mpq_class(2, 3));
        const std::string t = to_text(f);
        CHECK(t.rfind("# low=-1 high=4\n", 0) == 0);
        CHECK(t.find("-1\t2/3\n") != std::string::npos);
        CHECK(t.find("\n0\t") == std::string::npos);
        const auto g = from_text(t);
        CHECK(g.low() == f.low());
        CHECK(g.high() == f.high());
        CHECK(equal_on_overlap(f, g));

        CHECK(error_of([] { from_text("# low=0 high=3\n2\t1\n1\t1\n"); }) == Errc::Malformed);
        CHECK(error_of([] { from_text("0\t1\n"); }) == Errc::Malformed);
    }

    TEST_CASE("integral series keep a unit denominator")
    {
        const auto f = mul(ints(0, {1, 2, 3}), ints(0, {4, 5, 6}));
        CHECK(f.integral());
        CHECK(scale(scale(f, mpq_class(1, 3)), 3).integral());
    }
}
