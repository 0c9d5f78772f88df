#include <sstream>

#include "haupt/bundled.hpp"
#include "haupt/error.hpp"
#include "haupt/moonshine.hpp"

namespace haupt {

Assignment make_assignment(const CharacterTable &table, const std::map<std::string, std::string> &by_class)
{
    Assignment a(table.classes.size());
    std::vector<bool> seen(table.classes.size());
    for (const auto &[cname, sym] : by_class) {
        const std::size_t c = table.index(cname);
        a[c] = parse_symbol(sym);
        seen[c] = true;
    }
    for (std::size_t c = 0; c < seen.size(); ++c)
        if (!seen[c])
            fail(Errc::Malformed, "no symbol assigned to class " + table.classes[c].name);
    return a;
}

Assignment table_assignment(const CharacterTable &table)
{
    if (table.assignment.empty())
        fail(Errc::Malformed, "group file carries no assignment");
    return make_assignment(table, table.assignment);
}

std::set<std::string> parse_monster_symbols(const std::string &text)
{
    std::set<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') {
            std::getline(in, tok);
            continue;
        }
        out.insert(canonical_symbol(tok));
    }
    return out;
}

const std::set<std::string> &monster_symbols()
{
    static const std::set<std::string> s = [] {
        auto b = bundled::file("monster_classes.txt");
        if (!b)
            fail(Errc::FileError, "bundled monster class list missing");
        return parse_monster_symbols(std::string(*b));
    }();
    return s;
}

CheckReport validate_assignment(const CharacterTable &table, const Assignment &a, const std::set<std::string> &allowed)
{
    CheckReport r;
    r.name = "assignment";
    r.params = {{"group", table.name}};
    r.verdict = Verdict::Pass;
    nlohmann::json problems = nlohmann::json::array();
    auto flag = [&](nlohmann::json item, long m) {
        if (r.verdict == Verdict::Pass)
            r.witness = m;
        r.verdict = Verdict::Fail;
        problems.push_back(std::move(item));
    };
    if (a.size() != table.classes.size())
        fail(Errc::Malformed, "assignment does not cover every class");
    for (std::size_t c = 0; c < a.size(); ++c) {
        const auto &cls = table.classes[c];
        const std::string sym = a[c].str();
        if (a[c].element_order() != cls.order || !allowed.count(sym))
            flag({{"class", cls.name}, {"symbol", sym}, {"problem", "not an order-" + std::to_string(cls.order) +
                                                                         " monster class"}},
                 1);
        for (long m = 1; m <= cls.order; ++m) {
            const std::size_t t = table.power_map(c, m);
            const GroupSymbol want = power_group(a[c], m);
            if (!(want == a[t]))
                flag({{"class", cls.name},
                      {"m", m},
                      {"expected", want.str()},
                      {"assigned", a[t].str()},
                      {"image", table.classes[t].name}},
                     m);
        }
    }
    if (!problems.empty())
        r.detail = {{"problems", problems}};
    return r;
}

namespace {

struct Parts
{
    LaurentSeries rational;
    LaurentSeries irrational;
};

Parts weighted_sum(const std::vector<QuadNum> &w, const std::vector<LaurentSeries> &f)
{
    Parts out{LaurentSeries(), LaurentSeries()};
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].a() != 0)
            out.rational = add(out.rational, scale(f[i], w[i].a()));
        if (w[i].b() != 0)
            out.irrational = add(out.irrational, scale(f[i], w[i].b()));
    }
    return out;
}

} // namespace

LaurentSeries multiplicity_series(const CharacterTable &table, const Assignment &a, std::size_t chi,
                                  const Catalog &cat, long high)
{
    if (chi >= table.characters.size())
        fail(Errc::OutOfRange, "no character " + std::to_string(chi));
    std::vector<QuadNum> w;
    std::vector<LaurentSeries> f;
    for (std::size_t c = 0; c < table.classes.size(); ++c) {
        w.push_back(QuadNum(table.classes[c].size) * table.characters[chi][c].conj());
        f.push_back(cat.hauptmodul(a.at(c).str(), high));
    }
    Parts s = weighted_sum(w, f);
    if (auto k = s.irrational.first_nonzero(); k && !s.irrational.is_zero())
        fail(Errc::IrrationalResidue, "sqrt(" + std::to_string(table.quad_d) + ") part survives at q^" +
                                          std::to_string(*k) + " for character " + std::to_string(chi));
    return scale(s.rational, mpq_class(1, table.group_order));
}

LaurentSeries schur_roundtrip(const CharacterTable &table, const std::vector<LaurentSeries> &m, std::size_t c)
{
    std::vector<QuadNum> w;
    for (std::size_t chi = 0; chi < table.characters.size(); ++chi)
        w.push_back(table.characters[chi][c]);
    Parts s = weighted_sum(w, m);
    if (auto k = s.irrational.first_nonzero(); k && !s.irrational.is_zero())
        fail(Errc::IrrationalResidue, "irrational part survives at q^" + std::to_string(*k));
    return s.rational;
}

bool MultiplicityReport::moonshine() const
{
    if (!assignment.passed() || !integrality.passed() || !positivity.passed())
        return false;
    for (const auto &r : annihilation)
        if (!r.passed())
            return false;
    return true;
}

std::vector<CheckReport> MultiplicityReport::checks() const
{
    std::vector<CheckReport> out{assignment, integrality, positivity};
    out.insert(out.end(), annihilation.begin(), annihilation.end());
    CheckReport summary;
    summary.name = "moonshine";
    summary.params = {{"group", group}, {"p", p}};
    summary.window = window;
    summary.verdict = aggregate(out);
    summary.detail = {{"conclusion", conclusion}};
    out.push_back(summary);
    return out;
}

MultiplicityReport check_padic_moonshine(const CharacterTable &table, const Assignment &a, const Catalog &cat,
                                         long p, long high, int n_max, long base_window)
{
    MultiplicityReport rep;
    rep.group = table.name;
    rep.p = p;
    rep.window = high;
    rep.assignment = validate_assignment(table, a);

    for (std::size_t chi = 0; chi < table.characters.size(); ++chi)
        rep.series.push_back(multiplicity_series(table, a, chi, cat, high));

    rep.integrality.name = "integrality";
    rep.integrality.window = high;
    rep.integrality.verdict = Verdict::Pass;
    rep.positivity.name = "positivity_to_precision";
    rep.positivity.window = high;
    rep.positivity.verdict = Verdict::Pass;
    for (std::size_t chi = 0; chi < rep.series.size(); ++chi) {
        const LaurentSeries &m = rep.series[chi];
        for (long n = m.low(); n < m.high(); ++n) {
            const mpq_class c = m.coeff(n);
            if (c.get_den() != 1 && rep.integrality.verdict == Verdict::Pass) {
                rep.integrality.verdict = Verdict::Fail;
                rep.integrality.witness = n;
                rep.integrality.detail = {{"character", chi}, {"coefficient", c.get_str()}};
            }
            if (c < 0 && rep.positivity.verdict == Verdict::Pass) {
                rep.positivity.verdict = Verdict::Fail;
                rep.positivity.witness = n;
                rep.positivity.detail = {{"character", chi}, {"coefficient", c.get_str()}};
            }
        }
    }

    // One valuation sequence per distinct symbol.
    std::set<std::string> done;
    for (const auto &g : a) {
        const std::string s = g.str();
        if (!done.insert(s).second)
            continue;
        CheckReport r;
        r.name = "annihilation_evidence";
        r.params = {{"symbol", s}, {"p", p}, {"n_max", n_max}};
        r.window = base_window;
        const auto seq = valuation_sequence(cat, s, p, n_max, base_window);
        r.valuations = seq;
        if (seq.empty()) {
            r.verdict = Verdict::Indeterminate;
        } else {
            const auto &first = seq.front(), &last = seq.back();
            const bool grows = last.infinite || (!first.infinite && last.value > first.value) ||
                               (seq.size() == 1 && last.value >= 1);
            r.verdict = grows ? Verdict::Pass : Verdict::Indeterminate;
        }
        rep.annihilation.push_back(std::move(r));
    }
    rep.conclusion = rep.moonshine() ? table.name + " has " + std::to_string(p) + "-adic moonshine"
                                     : table.name + " is not shown to have " + std::to_string(p) +
                                           "-adic moonshine";
    return rep;
}

CheckReport check_weak_annihilation(const Catalog &cat, const std::string &symbol, long p, int n_max, long window,
                                    long cap)
{
    if (!is_prime(p))
        fail(Errc::HypothesisViolated, std::to_string(p) + " is not prime");
    CheckReport r;
    r.name = "weak";
    r.params = {{"symbol", canonical_symbol(symbol)}, {"p", p}, {"n_max", n_max}};
    r.window = window;
    long pn = 1;
    LaurentSeries last;
    for (int n = 1; n <= n_max; ++n) {
        pn *= p;
        const long high = pn * (window - 1) + 1;
        if (high > cap)
            fail(Errc::PrecisionExhausted, "needs " + std::to_string(high) + " coefficients, cap is " +
                                               std::to_string(cap));
        LaurentSeries f = cat.hauptmodul(symbol, high);
        for (int k = 0; k < n; ++k)
            f = u_p(f, p);
        f = f.truncate(window);
        if (reduce_mod(f, p, 1).is_zero()) {
            r.verdict = Verdict::Pass;
            r.detail = {{"n", n}};
            return r;
        }
        last = std::move(f);
    }
    r.verdict = Verdict::Fail;
    if (n_max >= 1)
        r.witness = reduce_mod(last, p, 1).first_nonzero();
    r.detail = {{"n", nullptr}};
    return r;
}

ValuationP exponent_divisibility(const Catalog &cat, const std::string &symbol, long q, long window)
{
    const LaurentSeries J = cat.hauptmodul("1", window);
    const LaurentSeries T = cat.hauptmodul(symbol, window);
    return valuation_p(sub(J, T), q);
}

Feasibility order_bound_feasible(const Catalog &cat, const std::vector<std::string> &candidates, long q, long r,
                                 long window)
{
    if (!is_prime(q))
        fail(Errc::HypothesisViolated, std::to_string(q) + " is not prime");
    if (r < 0)
        fail(Errc::OutOfRange, "modulus exponent must be non-negative");
    const LaurentSeries J = cat.hauptmodul("1", window);
    std::vector<LaurentSeries> T;
    for (const auto &s : candidates)
        T.push_back(cat.hauptmodul(s, window));
    // sum a_i T_i = -J
    std::vector<std::vector<mpz_class>> A;
    std::vector<mpz_class> b;
    for (long n = -1; n < window; ++n) {
        std::vector<mpz_class> row;
        for (const auto &t : T)
            row.push_back(t.numerator(n));
        A.push_back(std::move(row));
        b.push_back(-J.numerator(n));
    }
    Feasibility out;
    out.witness = solve_mod_prime_power(std::move(A), std::move(b), q, r);
    out.feasible = out.witness.has_value();
    return out;
}

} // namespace haupt
