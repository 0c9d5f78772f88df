#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "haupt/annihilation.hpp"
#include "haupt/catalog.hpp"
#include "haupt/error.hpp"
#include "haupt/forms.hpp"
#include "haupt/moonshine.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace haupt;

namespace {

struct Outcome
{
    bool ok = true;
    std::ostringstream note;

    void require(bool cond, const std::string &what)
    {
        if (!cond && ok) {
            ok = false;
            note << "failed: " << what << "; ";
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool constant_mod(const LaurentSeries &f, long p, long c)
{
    const auto r = reduce_mod(f, p, 1);
    for (long n = r.low(); n < r.high(); ++n)
        if (r.coeff(n) != (n == 0 ? c : 0))
            return false;
    return true;
}

void j_coefficients(Outcome &o, std::uint64_t)
{
    const auto t0 = Clock::now();
    const Catalog fresh = parse_catalog("1\tj\t\n", "");
    const auto j = fresh.hauptmodul("1", 1000);
    const double dt = seconds_since(t0);
    const char *want[] = {"196884", "21493760", "864299970", "20245856256"};
    for (long n = 1; n <= 4; ++n)
        o.require(j.coeff(n) == mpz_class(want[n - 1]), "c(" + std::to_string(n) + ")");
    o.require(j.coeff(-1) == 1 && j.coeff(0) == 0, "normalisation");
    o.require(dt < 1.0, "1000 coefficients within 1 s");
    o.note << "prec 1000 in " << dt << " s";
}

void congruences(Outcome &o, std::uint64_t)
{
    const auto &cat = bundled_catalog();
    for (long p : {2, 3, 5, 7, 11}) {
        const auto r = check_congruence_family(cat, p, lehner_atkin_exponent(p), 2, 100);
        o.require(r.passed(), "p = " + std::to_string(p));
    }
    o.note << "alpha 1..2 for every p, window 100";
}

void cycle_at_13(Outcome &o, std::uint64_t)
{
    const auto &cat = bundled_catalog();
    const auto j = cat.hauptmodul("1", 169 * 49 + 1);
    const auto u1 = u_p(j, 13).truncate(50);
    const auto u2 = u_p(u_p(j, 13), 13).truncate(50);
    const auto r1 = reduce_mod(u1, 13, 1), r2 = reduce_mod(u2, 13, 1);
    o.require(!r1.is_zero(), "J|U13 nonzero mod 13");
    // the literal congruence, compared as stated
    o.require(reduce_mod(sub(u2, u1), 13, 1).is_zero(), "J|U13^2 = J|U13 mod 13 on [0, 50)");
    const auto c = detect_mod_p_cycle(cat, "1", 13, 2, 50);
    o.note << "unit-scalar cycle " << (c.passed() ? "holds" : "absent");
    if (c.passed())
        o.note << " with scalar " << c.detail["scalar"].dump();
}

void functional_equations(Outcome &o, std::uint64_t)
{
    const auto t0 = Clock::now();
    for (const auto &d : lehner_data())
        o.require(check_lehner_functional(bundled_catalog(), d, 600).passed(), d.symbol.str());
    const double dt = seconds_since(t0);
    o.require(dt < 60, "within 1 min");
    o.note << "six rows through 600 in " << dt << " s";
}

void polynomial_relations(Outcome &o, std::uint64_t)
{
    for (const auto &d : lehner_data())
        o.require(check_lehner_polynomial(bundled_catalog(), d, 600).passed(), d.symbol.str());
    const auto b = lehner_datum("6+2").scaled_b();
    o.require(b == std::vector<mpz_class>{18, 324, 2187}, "6+2 scaled coefficients");
    o.note << "six rows through 600; 6+2 -> [18, 324, 2187]";
}

void rate_bounds(Outcome &o, std::uint64_t)
{
    const auto t0 = Clock::now();
    for (const auto &d : lehner_data())
        o.require(check_rate_bound(bundled_catalog(), d.symbol.str(), d.p, d.alpha(), 5, 100).passed(),
                  d.symbol.str());
    o.note << "n <= 5, base 100, " << seconds_since(t0) << " s";
}

void delta_quotient(Outcome &o, std::uint64_t)
{
    for (long p : {5, 7}) {
        const auto g = delta_quotient_g(parse_symbol("1"), p, 2000);
        o.require(g.series.high() >= 2000, "window");
        o.require(constant_mod(g.series.truncate(2000), p, 1), "g = 1 mod " + std::to_string(p));
        const auto v = valuation_p(g.series_slash_wp, p);
        o.require(!v.infinite && v.value == 6 * (p + 1), "v_p(g|W_p) = 6(p+1)");
        o.note << "v_" << p << " = " << (v.infinite ? std::string("inf") : std::to_string(v.value)) << " ";
    }
}

void symmetrised_eisenstein(Outcome &o, std::uint64_t)
{
    const auto f = hat_f(parse_symbol("2+"), 5, 2000);
    o.require(f.high() >= 2000, "window");
    o.require(constant_mod(f.truncate(2000), 5, 2), "2 mod 5");
    o.note << "2000 coefficients";
}

void trace_formula(Outcome &o, std::uint64_t)
{
    const long window = 503;
    const FormExpr f = FormExpr::delta(1) * FormExpr::delta(5);
    const FormExpr fw = slash_we(f, 5, 5);
    const auto tr = trace_down(f.expand(window), fw.expand(5 * window), 24, 5).truncate(window);

    const auto e4 = eisenstein(4, window), delta = FormExpr::delta(1).expand(window);
    const auto e4_3 = mul(mul(e4, e4), e4);
    const std::vector<LaurentSeries> basis{mul(e4_3, e4_3), mul(e4_3, delta), mul(delta, delta)};
    // basis is upper triangular at q^0, q^1, q^2
    std::vector<mpq_class> c(3);
    for (long n = 0; n < 3; ++n) {
        mpq_class rest = tr.coeff(n);
        for (long m = 0; m < n; ++m)
            rest -= c[m] * basis[m].coeff(n);
        c[n] = rest / basis[n].coeff(n);
    }
    LaurentSeries fit = LaurentSeries::zero(0, window);
    for (std::size_t i = 0; i < 3; ++i)
        fit = add(fit, scale(basis[i], c[i]));
    const auto diff = first_difference(fit, tr);
    o.require(tr.high() >= window && !diff.has_value(), "fit holds on [0, 503)");
    o.note << "fit on 3, verified on " << window - 3 << "; coefficients " << c[0].get_str() << ", "
           << c[1].get_str() << ", " << c[2].get_str();
}

void compression(Outcome &o, std::uint64_t)
{
    const auto &cat = bundled_catalog();
    o.require(cat.at("3|3").kind == Construction::FormalRoot, "3|3 is a formal root");
    const auto r = check_compression(cat, CompressionCase::B, parse_symbol("6|3"), 2, 1000);
    o.require(r.passed(), "4 T|U_2^2 = T_{6|3} - T_{3|3}");
    o.note << "through 1000";
}

void a5_moonshine(Outcome &o, std::uint64_t)
{
    const auto t0 = Clock::now();
    const auto t = bundled_a5();
    const auto a = table_assignment(t);
    o.require(t.power_map(t.index("5a"), 2) == t.index("5b"), "5a^2 = 5b");
    const auto rep = check_padic_moonshine(t, a, bundled_catalog(), 5, 200, 3);
    o.require(rep.assignment.passed(), "assignment");
    o.require(rep.integrality.passed(), "integrality on 200");
    for (std::size_t chi : {0, 1})
        for (long n = 1; n <= 4; ++n)
            o.require(rep.series[chi].coeff(n) == oracle::a5_multiplicities[chi][static_cast<std::size_t>(n - 1)],
                      "M_" + std::to_string(chi) + " at q^" + std::to_string(n));
    o.require(!first_difference(rep.series[3], rep.series[4]).has_value(), "M_chi3 = M_chi4");
    o.require(rep.moonshine(), "5-adic moonshine");
    const double dt = seconds_since(t0);
    o.require(dt < 30, "within 30 s");
    o.note << rep.conclusion << ", " << dt << " s";
}

void exponent_groups(Outcome &o, std::uint64_t)
{
    for (const auto &row : oracle::exponent_rows) {
        const auto v = exponent_divisibility(bundled_catalog(), row.symbol, row.q, 500);
        o.require(v.at_least(row.r), std::string(row.symbol) + " at " + std::to_string(row.q));
        o.note << row.symbol << ":" << (v.infinite ? std::string("inf") : std::to_string(v.value)) << " ";
    }
}

void property_suites(Outcome &o, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const long primes[] = {2, 3, 5, 7, 11, 13};
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const long p = primes[rng() % 6];
        const long low = static_cast<long>(rng() % 7) - 3;
        const auto f = support::random_sparse(rng, low, low + 1 + static_cast<long>(rng() % 60), 0.3);
        const auto g = u_p(v_m(f, p), p);
        if (g.low() != f.low() || g.high() != f.high() || g.numerators() != f.numerators())
            ++bad;
    }
    o.require(bad == 0, "U_p V_p = id");

    bad = 0;
    for (int t = 0; t < 100; ++t) {
        auto random_quotient = [&] {
            EtaQuotient q;
            long off = 0;
            for (int i = 0; i < 3; ++i) {
                const long d = 1 + static_cast<long>(rng() % 12), r = static_cast<long>(rng() % 13) - 6;
                q.terms.emplace_back(d, r);
                off += d * r;
            }
            const long fix = ((off % 24) + 24) % 24;
            if (fix)
                q.terms.emplace_back(1, 24 - fix);
            return q;
        };
        const auto a = random_quotient(), b = random_quotient();
        const auto ab = expand_eta_quotient(concat(a, b), 40);
        const auto sep = mul(expand_eta_quotient(a, 40), expand_eta_quotient(b, 40));
        if (!equal_on_overlap(ab, sep))
            ++bad;
    }
    o.require(bad == 0, "eta multiplicativity");

    for (long p : {5, 7, 11, 13})
        o.require(constant_mod(eisenstein(p - 1, 500), p, 1), "E_" + std::to_string(p - 1) + " = 1 mod p");

    const auto symbols = bundled_catalog().symbols();
    std::set<std::string> present(symbols.begin(), symbols.end());
    for (const auto &s : symbols) {
        const auto g = parse_symbol(s);
        for (long a = 1; a <= 12; ++a)
            for (long b = 1; b <= 12; ++b)
                o.require(power_group(power_group(g, a), b) == power_group(g, a * b), "power composition " + s);
    }

    int edges = 0;
    for (const auto &e : oracle::figure_edges) {
        if (!present.count(e.a) || !present.count(e.b))
            continue;
        ++edges;
        const auto a = parse_symbol(e.a), b = parse_symbol(e.b);
        bool linked = false;
        for (long d = 2; d <= 200 && !linked; ++d)
            linked = power_group(a, d) == b || power_group(b, d) == a;
        o.require(linked, std::string("edge ") + e.a + " - " + e.b);
    }

    const auto t = bundled_a5();
    const auto asg = table_assignment(t);
    std::vector<LaurentSeries> m;
    for (std::size_t chi = 0; chi < t.characters.size(); ++chi)
        m.push_back(multiplicity_series(t, asg, chi, bundled_catalog(), 100));
    for (std::size_t c = 0; c < t.classes.size(); ++c)
        o.require(equal_on_overlap(schur_roundtrip(t, m, c), bundled_catalog().hauptmodul(asg[c].str(), 100)),
                  "Schur roundtrip at " + t.classes[c].name);
    o.note << "seed " << seed << ", " << edges << " figure edges";
}

struct Criterion
{
    int id;
    const char *name;
    std::function<void(Outcome &, std::uint64_t)> run;
    // Set when the statement is known to be false as written; the line still
    // prints FAIL but does not change the exit status.
    const char *known = nullptr;
};

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"acceptance checks"};
    std::uint64_t seed = 20240611;
    app.add_option("--seed", seed, "seed for the property suites");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{
        {1, "J coefficients", j_coefficients},
        {2, "congruence family", congruences},
        {3, "non-annihilation at 13", cycle_at_13, "the true relation is J|U13^2 = 8 J|U13 mod 13"},
        {4, "functional equations", functional_equations},
        {5, "polynomial relations", polynomial_relations},
        {6, "rate bounds", rate_bounds},
        {7, "Delta quotient", delta_quotient},
        {8, "symmetrised Eisenstein", symmetrised_eisenstein},
        {9, "trace to level 1", trace_formula},
        {10, "compression 6|3", compression},
        {11, "A5 moonshine", a5_moonshine},
        {12, "exponent divisibility", exponent_groups},
        {13, "property suites", property_suites},
    };

    int unexpected = 0;
    for (const auto &c : all) {
        Outcome o;
        try {
            c.run(o, seed);
        } catch (const Error &e) {
            o.ok = false;
            o.note << errc_name(e.code()) << ": " << e.what();
        }
        std::string note = o.note.str();
        while (!note.empty() && (note.back() == ' ' || note.back() == ';'))
            note.pop_back();
        if (!o.ok && c.known)
            note += " [known: " + std::string(c.known) + "]";
        std::cout << (o.ok ? "PASS" : "FAIL") << ' ' << c.id << ' ' << c.name << ": " << note << std::endl;
        if (!o.ok && !c.known)
            ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
