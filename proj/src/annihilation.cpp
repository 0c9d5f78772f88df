#include "haupt/annihilation.hpp"

#include "haupt/error.hpp"

namespace haupt {

namespace {

long checked_power(long p, long k)
{
    long r = 1;
    for (long i = 0; i < k; ++i) {
        if (r > (1L << 40) / p)
            fail(Errc::PrecisionExhausted, std::to_string(p) + "^" + std::to_string(k) + " is out of reach");
        r *= p;
    }
    return r;
}

void require_prime(long p)
{
    if (!is_prime(p))
        fail(Errc::HypothesisViolated, std::to_string(p) + " is not prime");
}

// Input window [-1, high) so that U_p^k lands on exponents [0, window].
long input_high(long p, long k, long window, long cap)
{
    const long pk = checked_power(p, k);
    if (window > (1L << 40) / pk)
        fail(Errc::PrecisionExhausted, "window too large");
    const long high = pk * window + 1;
    if (high > cap)
        fail(Errc::PrecisionExhausted, "needs " + std::to_string(high) + " coefficients, cap is " +
                                           std::to_string(cap));
    return high;
}

long floor_mul(long n, const mpq_class &a)
{
    mpz_class num = a.get_num() * n, q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), a.get_den().get_mpz_t());
    return q.get_si();
}

mpz_class power(long p, unsigned long k)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), k);
    return r;
}

nlohmann::json series_head(const LaurentSeries &f, long count)
{
    nlohmann::json a = nlohmann::json::array();
    for (long n = f.low(); n < f.high() && n < f.low() + count; ++n)
        a.push_back(f.coeff(n).get_str());
    return a;
}

CheckReport compare(CheckReport r, const LaurentSeries &lhs, const LaurentSeries &rhs, long window)
{
    const LaurentSeries a = lhs.truncate(window), b = rhs.truncate(window);
    const auto [lo, hi] = overlap(a, b);
    r.detail = {{"exponents", {lo, hi - 1}}};
    if (auto k = first_difference(a, b)) {
        r.verdict = Verdict::Fail;
        r.witness = *k;
        r.detail["lhs"] = a.coeff(*k).get_str();
        r.detail["rhs"] = b.coeff(*k).get_str();
    } else {
        r.verdict = Verdict::Pass;
    }
    return r;
}

} // namespace

std::vector<ValuationP> valuation_sequence(const Catalog &cat, const std::string &symbol, long p, int iters,
                                           long base_window, long cap)
{
    require_prime(p);
    if (iters < 0 || base_window < 1)
        fail(Errc::OutOfRange, "iterations must be non-negative and the window positive");
    std::vector<ValuationP> out;
    if (iters == 0)
        return out;
    LaurentSeries f = cat.hauptmodul(symbol, input_high(p, iters, base_window, cap));
    for (int n = 1; n <= iters; ++n) {
        f = u_p(f, p);
        out.push_back(valuation_p(f, p));
    }
    return out;
}

std::function<long(long)> lehner_atkin_exponent(long p)
{
    switch (p) {
    case 2: return [](long a) { return 3 * a + 8; };
    case 3: return [](long a) { return 2 * a + 3; };
    case 5: return [](long a) { return a + 1; };
    case 7:
    case 11: return [](long a) { return a; };
    default: fail(Errc::HypothesisViolated, "no congruence family for p = " + std::to_string(p));
    }
}

CheckReport check_congruence_family(const Catalog &cat, long p, const std::function<long(long)> &exp_fn,
                                    long alpha_max, long window, long cap)
{
    require_prime(p);
    CheckReport r;
    r.name = "congruence";
    r.params = {{"p", p}, {"alpha_max", alpha_max}};
    r.window = window;
    r.verdict = Verdict::Pass;
    r.detail = nlohmann::json::array();
    if (alpha_max <= 0)
        return r;
    LaurentSeries f = cat.hauptmodul("1", input_high(p, alpha_max, window, cap));
    std::vector<ValuationP> vals;
    for (long a = 1; a <= alpha_max; ++a) {
        f = u_p(f, p);
        // c(p^a n) for n = 1..window
        const long need = exp_fn(a);
        ValuationP m;
        m.window_high = window + 1;
        for (long n = 1; n <= window; ++n) {
            const mpz_class &c = f.numerator(n);
            if (c == 0)
                continue;
            const long v = p_adic_valuation(c, p);
            if (m.infinite || v < m.value) {
                m.infinite = false;
                m.value = v;
            }
            if (v < need && r.verdict == Verdict::Pass) {
                r.verdict = Verdict::Fail;
                r.witness = n;
            }
        }
        vals.push_back(m);
        r.detail.push_back({{"alpha", a}, {"required", need}, {"min_valuation", to_json(m)}});
    }
    r.valuations = vals;
    return r;
}

CompressionCase parse_compression_case(const std::string &s)
{
    if (s == "a")
        return CompressionCase::A;
    if (s == "b")
        return CompressionCase::B;
    if (s == "c")
        return CompressionCase::C;
    if (s == "d")
        return CompressionCase::D;
    if (s == "conway")
        return CompressionCase::Conway;
    fail(Errc::Malformed, "compression case must be a, b, c, d or conway, got '" + s + "'");
}

const char *compression_case_name(CompressionCase c)
{
    switch (c) {
    case CompressionCase::A: return "a";
    case CompressionCase::B: return "b";
    case CompressionCase::C: return "c";
    case CompressionCase::D: return "d";
    case CompressionCase::Conway: return "conway";
    }
    return "?";
}

CheckReport check_compression(const Catalog &cat, CompressionCase which, const GroupSymbol &gamma, long p,
                              long window)
{
    require_prime(p);
    const std::string g = gamma.str();
    if (gamma.h % p == 0)
        fail(Errc::HypothesisViolated, std::to_string(p) + " divides h for " + g);
    long r = 0;
    for (long m = gamma.n; m % p == 0; m /= p)
        ++r;
    const long pr = checked_power(p, r);
    bool p_free = true;
    for (long e : gamma.fricke)
        if (e % p == 0)
            p_free = false;
    auto need = [&](bool ok, const std::string &why) {
        if (!ok)
            fail(Errc::HypothesisViolated, std::string("case ") + compression_case_name(which) + " needs " + why +
                                               " (" + g + ", p = " + std::to_string(p) + ")");
    };

    CheckReport rep;
    rep.name = "compression";
    rep.params = {{"case", compression_case_name(which)}, {"symbol", g}, {"p", p}};
    rep.window = window;
    const long big = 1L << 40;
    const long cap = big;
    LaurentSeries lhs, rhs;
    switch (which) {
    case CompressionCase::A: {
        need(r == 1 && p_free, "r = 1 and p not dividing any Atkin-Lehner index");
        const GroupSymbol plus = adjoin_we(gamma, p);
        const long H = input_high(p, 1, window, cap);
        lhs = scale(u_p(cat.hauptmodul(g, H), p), p);
        rhs = sub(cat.hauptmodul(g, window), cat.hauptmodul(plus.str(), window));
        rep.params["other"] = plus.str();
        break;
    }
    case CompressionCase::B: {
        need(r == 1 && p_free, "r = 1 and p not dividing any Atkin-Lehner index");
        const GroupSymbol down = power_group(gamma, p);
        const long H = input_high(p, 2, window, cap);
        lhs = scale(u_p(u_p(cat.hauptmodul(g, H), p), p), p * p);
        rhs = sub(cat.hauptmodul(g, window), cat.hauptmodul(down.str(), window));
        rep.params["other"] = down.str();
        break;
    }
    case CompressionCase::C: {
        need(r > 1 && gamma.fricke.count(pr) != 0, "r > 1 and w_{p^r} in the group");
        const GroupSymbol down = power_group(gamma, p);
        const GroupSymbol up = adjoin_we(down, pr / p);
        const long H = input_high(p, 1, window, cap);
        lhs = scale(u_p(cat.hauptmodul(g, H), p), p);
        rhs = sub(cat.hauptmodul(up.str(), window), cat.hauptmodul(down.str(), window));
        rep.params["other"] = {up.str(), down.str()};
        break;
    }
    case CompressionCase::D: {
        need(r == 2 && gamma.fricke.count(pr) != 0, "r = 2 and w_{p^2} in the group");
        const GroupSymbol down = power_group(gamma, p);
        const long H = input_high(p, 1, window, cap);
        lhs = u_p(cat.hauptmodul(g, H), p);
        rhs = -u_p(cat.hauptmodul(down.str(), H), p);
        rep.params["other"] = down.str();
        break;
    }
    case CompressionCase::Conway: {
        need(gamma.fricke.count(p) != 0, "w_p in the group");
        const GroupSymbol down = power_group(gamma, p);
        const long H = input_high(p, 1, window, cap);
        lhs = scale(u_p(cat.hauptmodul(g, H), p), p);
        rhs = sub(cat.hauptmodul(down.str(), window), cat.hauptmodul(g, window));
        rep.params["other"] = down.str();
        break;
    }
    }
    return compare(std::move(rep), lhs, rhs, window);
}

std::vector<mpz_class> LehnerDatum::scaled_b() const
{
    std::vector<mpz_class> out;
    for (std::size_t j = 0; j < b_coeff.size(); ++j) {
        if (b_coeff[j] == 0) {
            out.emplace_back(0);
            continue;
        }
        const long half = b_half[j] + alpha2;
        if (half % 2 != 0 || half < 0)
            fail(Errc::InvariantViolation, "p^alpha b_j is not an integer for " + symbol.str());
        out.push_back(b_coeff[j] * power(p, static_cast<unsigned long>(half / 2)));
    }
    return out;
}

const std::vector<LehnerDatum> &lehner_data()
{
    static const std::vector<LehnerDatum> rows = [] {
        auto row = [](const char *sym, long p, long alpha2, long e, const char *eta, std::vector<long> c,
                      std::vector<long> h) {
            return LehnerDatum{parse_symbol(sym), p, alpha2, e, parse_eta_quotient(eta), std::move(c), std::move(h)};
        };
        // b_j = c_j p^{h_j/2}
        return std::vector<LehnerDatum>{
            row("6+2", 3, 3, 4, "1^4*2^4*3^-4*6^-4", {2, 4, 1}, {1, 5, 11}),
            row("6+3", 2, 2, 6, "1^6*3^6*2^-6*6^-6", {3, 1}, {0, 8}),
            row("10+5", 2, 3, 4, "1^4*5^4*2^-4*10^-4", {1, 1}, {1, 3}),
            row("22+11", 2, 1, 2, "1^2*11^2*2^-2*22^-2", {1, 1}, {1, 1}),
            row("6|3", 2, 3, 4, "3^8*6^-8", {0, 1}, {0, 3}),
            row("24|4+2", 3, 1, 1, "4^1*8^1*12^-1*24^-1", {0, 0, 1}, {0, 0, 1}),
        };
    }();
    return rows;
}

const LehnerDatum &lehner_datum(const std::string &symbol)
{
    std::string key;
    try {
        key = canonical_symbol(symbol);
    } catch (const Error &) {
        fail(Errc::UnknownDatum, "no functional-equation data for '" + symbol + "'");
    }
    for (const auto &d : lehner_data())
        if (d.symbol.str() == key)
            return d;
    fail(Errc::UnknownDatum, "no functional-equation data for " + key);
}

namespace {

CheckReport lehner_base(const char *name, const LehnerDatum &d, long window)
{
    CheckReport r;
    r.name = name;
    r.params = {{"symbol", d.symbol.str()}, {"p", d.p}, {"e", d.e}, {"alpha", d.alpha().get_str()}};
    r.window = window;
    return r;
}

} // namespace

CheckReport check_lehner_functional(const Catalog &, const LehnerDatum &d, long window)
{
    CheckReport r = lehner_base("lehner_functional", d, window);
    const long H = input_high(d.p, 1, window, 1L << 40);
    const LaurentSeries frak = expand_eta_quotient(d.eta, H);
    const LaurentSeries T = normalise_hauptmodul(frak, d.symbol.str());
    const LaurentSeries Z = recip(frak.truncate(window + 1));
    const LaurentSeries s = add(scale(u_p(T, d.p), d.p), scale(Z, mpq_class(power(d.p, d.e)))).truncate(window + 1);
    const mpq_class c = s.coeff(0);
    r.detail = {{"c", c.get_str()}, {"exponents", {0, s.high() - 1}}};
    r.verdict = Verdict::Pass;
    for (long n = 1; n < s.high(); ++n)
        if (s.numerator(n) != 0) {
            r.verdict = Verdict::Fail;
            r.witness = n;
            break;
        }
    return r;
}

CheckReport check_lehner_polynomial(const Catalog &, const LehnerDatum &d, long window)
{
    CheckReport r = lehner_base("lehner_polynomial", d, window);
    const auto b = d.scaled_b();
    nlohmann::json bj = nlohmann::json::array();
    for (const auto &x : b)
        bj.push_back(x.get_str());
    r.params["scaled_b"] = bj;
    // Z on [1, p window + 2) so Z|U_p reaches q^window.
    const LaurentSeries frak = expand_eta_quotient(d.eta, d.p * window);
    const LaurentSeries Z = recip(frak);
    const LaurentSeries lhs = u_p(Z, d.p).truncate(window + 1);
    const LaurentSeries z = Z.truncate(window + 1);
    LaurentSeries rhs = LaurentSeries::zero(1, window + 1);
    LaurentSeries zj = z;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (j > 0)
            zj = mul(zj, z);
        if (b[j] != 0)
            rhs = add(rhs, scale(zj, mpq_class(b[j])));
    }
    return compare(std::move(r), lhs, rhs, window + 1);
}

CheckReport check_lehner(const Catalog &cat, const LehnerDatum &d, long window)
{
    CheckReport f = check_lehner_functional(cat, d, window);
    CheckReport g = check_lehner_polynomial(cat, d, window);
    CheckReport r = lehner_base("lehner", d, window);
    r.params["scaled_b"] = g.params["scaled_b"];
    r.detail = {{"functional", to_json(f)}, {"polynomial", to_json(g)}};
    if (f.verdict == Verdict::Fail || g.verdict == Verdict::Fail) {
        r.verdict = Verdict::Fail;
        r.witness = f.verdict == Verdict::Fail ? f.witness : g.witness;
    } else {
        r.verdict = Verdict::Pass;
    }
    return r;
}

CheckReport check_rate_bound(const Catalog &cat, const std::string &symbol, long p, const mpq_class &alpha,
                             int n_max, long base_window, long cap)
{
    CheckReport r;
    r.name = "rate";
    r.params = {{"symbol", canonical_symbol(symbol)}, {"p", p}, {"alpha", alpha.get_str()}, {"n_max", n_max}};
    r.window = base_window;
    r.verdict = Verdict::Pass;
    if (n_max <= 0)
        return r;
    const auto seq = valuation_sequence(cat, symbol, p, n_max, base_window, cap);
    nlohmann::json bounds = nlohmann::json::array();
    for (int n = 1; n <= n_max; ++n) {
        const long need = floor_mul(n, alpha);
        bounds.push_back(need);
        if (!seq[static_cast<std::size_t>(n - 1)].at_least(need) && r.verdict == Verdict::Pass) {
            r.verdict = Verdict::Fail;
            r.witness = n;
        }
    }
    r.valuations = seq;
    r.detail = {{"bounds", bounds}};
    return r;
}

CheckReport check_increment(const Catalog &cat, const std::string &symbol, long p, int m, int n_max,
                            long base_window, long cap)
{
    CheckReport r;
    r.name = "increment";
    r.params = {{"symbol", canonical_symbol(symbol)}, {"p", p}, {"m", m}, {"n_max", n_max}};
    r.window = base_window;
    if (m < 0)
        fail(Errc::OutOfRange, "m must be non-negative");
    const auto seq = valuation_sequence(cat, symbol, p, n_max, base_window, cap);
    r.valuations = seq;
    if (m + 2 > n_max) {
        r.verdict = Verdict::Indeterminate;
        return r;
    }
    r.verdict = Verdict::Pass;
    for (int l = 1; l + m + 1 <= n_max; ++l) {
        const ValuationP &a = seq[static_cast<std::size_t>(l - 1)];
        const ValuationP &b = seq[static_cast<std::size_t>(l + m)];
        const bool ok = b.infinite || (!a.infinite && b.value >= a.value + 1);
        if (!ok) {
            r.verdict = Verdict::Fail;
            r.witness = l;
            break;
        }
    }
    return r;
}

CheckReport detect_mod_p_cycle(const Catalog &cat, const std::string &symbol, long p, int n_max, long window,
                               long cap)
{
    require_prime(p);
    CheckReport r;
    r.name = "cycle";
    r.params = {{"symbol", canonical_symbol(symbol)}, {"p", p}, {"n_max", n_max}};
    r.window = window;
    r.verdict = Verdict::Indeterminate;
    if (n_max < 2)
        return r;
    LaurentSeries f = cat.hauptmodul(symbol, input_high(p, n_max, window, cap));
    std::vector<LaurentSeries> res;
    for (int n = 1; n <= n_max; ++n) {
        f = u_p(f, p);
        res.push_back(reduce_mod(f.truncate(window), p, 1));
    }
    for (int n2 = 2; n2 <= n_max; ++n2)
        for (int n1 = 1; n1 < n2; ++n1) {
            const LaurentSeries &a = res[static_cast<std::size_t>(n1 - 1)];
            if (a.is_zero())
                continue;
            // b = s a mod p for a unit s keeps every later iterate nonzero too
            const LaurentSeries &b = res[static_cast<std::size_t>(n2 - 1)];
            const long k = *a.first_nonzero();
            mpz_class s = b.numerator(k), ak = a.numerator(k), pz = p;
            mpz_invert(ak.get_mpz_t(), ak.get_mpz_t(), pz.get_mpz_t());
            s = (s * ak) % pz;
            if (s != 0 && reduce_mod(sub(b, scale(a, mpq_class(s))), p, 1).is_zero()) {
                r.verdict = Verdict::Pass;
                r.detail = {{"n1", n1}, {"n2", n2}, {"scalar", s.get_si()}, {"residues", series_head(a, 8)}};
                return r;
            }
        }
    r.detail = {{"note", "no repeated nonzero residue"}};
    return r;
}

} // namespace haupt
