#include <algorithm>
#include <map>
#include <numeric>

#include "haupt/error.hpp"
#include "haupt/forms.hpp"

namespace haupt {

mpq_class bernoulli(long n)
{
    // sum_{k=0}^{n} C(n+1, k) B_k = 0, B_0 = 1 (so B_1 = -1/2)
    if (n < 0)
        fail(Errc::OutOfRange, "Bernoulli index must be non-negative");
    std::vector<mpq_class> B(static_cast<std::size_t>(n + 1));
    B[0] = 1;
    for (long m = 1; m <= n; ++m) {
        mpq_class s = 0;
        mpz_class c = 1; // C(m+1, k)
        for (long k = 0; k < m; ++k) {
            s += mpq_class(c) * B[static_cast<std::size_t>(k)];
            c = c * (m + 1 - k) / (k + 1);
        }
        B[static_cast<std::size_t>(m)] = -s / mpq_class(m + 1);
    }
    return B[static_cast<std::size_t>(n)];
}

namespace {

LaurentSeries sigma_series(long k, long high, const mpq_class &c)
{
    if (high <= 0)
        fail(Errc::EmptyWindow, "Eisenstein series with no coefficients");
    std::vector<mpz_class> sig(static_cast<std::size_t>(high));
    mpz_class dk;
    for (long d = 1; d < high; ++d) {
        mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k - 1));
        for (long m = d; m < high; m += d)
            sig[static_cast<std::size_t>(m)] += dk;
    }
    // 1 + c sum sigma_{k-1}(n) q^n, over the denominator of c
    const mpz_class &cn = c.get_num(), &cd = c.get_den();
    sig[0] = cd;
    for (long m = 1; m < high; ++m)
        sig[static_cast<std::size_t>(m)] *= cn;
    return LaurentSeries::from_parts(0, std::move(sig), cd, false);
}

} // namespace

LaurentSeries eisenstein(long k, long high)
{
    if (k < 4 || k % 2 != 0)
        fail(Errc::BadWeight, "Eisenstein series needs even k >= 4, got " + std::to_string(k));
    return sigma_series(k, high, mpq_class(-2 * k) / bernoulli(k));
}

LaurentSeries eisenstein_e2(long high) { return sigma_series(2, high, -24); }

LaurentSeries j_function(long high)
{
    if (high < 0)
        fail(Errc::EmptyWindow, "J needs high >= 0");
    const LaurentSeries e4 = eisenstein(4, high + 1);
    const LaurentSeries e4sq = mul(e4, e4);
    const LaurentSeries inv_delta = expand_eta_quotient(EtaQuotient{{{1, -24}}}, high);
    const LaurentSeries j = mul(mul(e4sq, e4), inv_delta);
    return sub(j, LaurentSeries::constant(744));
}

long Factor::weight2() const
{
    switch (gen) {
    case Generator::Eta: return k * power;
    case Generator::Eisenstein: return 2 * k * power;
    case Generator::Delta: return 24 * power;
    }
    return 0;
}

namespace {

long monomial_weight2(const Monomial &m)
{
    long w = 0;
    for (const auto &f : m.factors)
        w += f.weight2();
    return w;
}

bool factor_less(const Factor &a, const Factor &b)
{
    return std::tie(a.gen, a.k, a.d, a.power) < std::tie(b.gen, b.k, b.d, b.power);
}

} // namespace

FormExpr::FormExpr(std::vector<Monomial> terms) : terms_(std::move(terms))
{
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        for (const auto &f : terms_[i].factors) {
            if (f.d < 1)
                fail(Errc::Malformed, "generator scale must be positive");
            if (f.gen == Generator::Eisenstein && (f.k < 4 || f.k % 2 != 0))
                fail(Errc::BadWeight, "Eisenstein generator needs even k >= 4");
        }
        const long w = monomial_weight2(terms_[i]);
        if (i == 0)
            weight2_ = w;
        else if (w != weight2_)
            fail(Errc::BadWeight, "terms of different weight in one form");
    }
}

FormExpr FormExpr::delta(long d, long power)
{
    return FormExpr({Monomial{1, {Factor{Generator::Delta, 12, d, power}}}});
}

FormExpr FormExpr::eisenstein(long k, long d)
{
    return FormExpr({Monomial{1, {Factor{Generator::Eisenstein, k, d, 1}}}});
}

FormExpr FormExpr::eta_power(long k, long d) { return FormExpr({Monomial{1, {Factor{Generator::Eta, k, d, 1}}}}); }

FormExpr FormExpr::operator*(const FormExpr &o) const
{
    std::vector<Monomial> out;
    for (const auto &a : terms_)
        for (const auto &b : o.terms_) {
            Monomial m{a.scalar * b.scalar, a.factors};
            m.factors.insert(m.factors.end(), b.factors.begin(), b.factors.end());
            out.push_back(std::move(m));
        }
    return FormExpr(std::move(out)).simplified();
}

FormExpr FormExpr::operator+(const FormExpr &o) const
{
    std::vector<Monomial> out = terms_;
    out.insert(out.end(), o.terms_.begin(), o.terms_.end());
    return FormExpr(std::move(out)).simplified();
}

FormExpr FormExpr::scaled(const mpq_class &c) const
{
    std::vector<Monomial> out = terms_;
    for (auto &m : out)
        m.scalar *= c;
    return FormExpr(std::move(out)).simplified();
}

FormExpr FormExpr::simplified() const
{
    std::vector<Monomial> out;
    for (const auto &m : terms_) {
        std::map<std::tuple<Generator, long, long>, long> powers;
        for (const auto &f : m.factors)
            powers[{f.gen, f.k, f.d}] += f.power;
        Monomial s{m.scalar, {}};
        for (const auto &[key, pw] : powers)
            if (pw != 0)
                s.factors.push_back(Factor{std::get<0>(key), std::get<1>(key), std::get<2>(key), pw});
        std::sort(s.factors.begin(), s.factors.end(), factor_less);
        auto it = std::find_if(out.begin(), out.end(), [&](const Monomial &o) { return o.factors == s.factors; });
        if (it == out.end())
            out.push_back(std::move(s));
        else
            it->scalar += s.scalar;
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Monomial &m) { return m.scalar == 0; }), out.end());
    FormExpr r;
    r.terms_ = std::move(out);
    r.weight2_ = weight2_;
    return r;
}

LaurentSeries FormExpr::expand(long high) const
{
    LaurentSeries total;
    bool first = true;
    for (const auto &m : terms_) {
        EtaQuotient eq;
        std::vector<Factor> eis;
        for (const auto &f : m.factors) {
            if (f.gen == Generator::Eta)
                eq.terms.emplace_back(f.d, f.k * f.power);
            else if (f.gen == Generator::Delta)
                eq.terms.emplace_back(f.d, 24 * f.power);
            else
                eis.push_back(f);
        }
        LaurentSeries s = expand_eta_quotient(eq, high);
        const long L = eq.offset24() / 24;
        for (const auto &f : eis) {
            // E_k(d tau) must be known on [0, high - L).
            const long need = high - L;
            const long base_high = (need - 1 + f.d - 1) / f.d + 1;
            LaurentSeries e = v_m(haupt::eisenstein(f.k, std::max(base_high, 1L)), f.d);
            if (f.power < 0)
                e = recip(e);
            e = pow(e, static_cast<unsigned long>(std::labs(f.power)));
            s = mul(s, e);
        }
        s = scale(s, m.scalar);
        total = first ? s : add(total, s);
        first = false;
    }
    return total;
}

namespace {

void add_prime_exponents(std::map<long, long> &acc, long x, long mult)
{
    for (long l = 2; l * l <= x; ++l)
        while (x % l == 0) {
            acc[l] += mult;
            x /= l;
        }
    if (x > 1)
        acc[x] += mult;
}

} // namespace

FormExpr slash_we(const FormExpr &f, long e, long N)
{
    if (N < 1 || !is_exact_divisor(e, N))
        fail(Errc::NotExactDivisor, std::to_string(e) + " is not an exact divisor of " + std::to_string(N));
    std::vector<Monomial> out;
    for (const auto &m : f.terms()) {
        // 4 * exponent of each prime in the scalar
        std::map<long, long> acc4;
        Monomial r{m.scalar, {}};
        for (const auto &fac : m.factors) {
            if (N % fac.d != 0)
                fail(Errc::NotExactDivisor,
                     "scale " + std::to_string(fac.d) + " does not divide level " + std::to_string(N));
            if (fac.gen == Generator::Eta && (fac.k * fac.power) % 24 != 0)
                fail(Errc::IrrationalScalar, "eta power " + std::to_string(fac.k * fac.power) +
                                                 " carries a nontrivial multiplier");
            const long d2 = star(fac.d, e);
            // ratio d2/d raised to weight/2 = weight2/4
            add_prime_exponents(acc4, d2, fac.weight2());
            add_prime_exponents(acc4, fac.d, -fac.weight2());
            Factor g = fac;
            g.d = d2;
            r.factors.push_back(g);
        }
        mpq_class s = 1;
        for (const auto &[l, a4] : acc4) {
            if (a4 % 4 != 0)
                fail(Errc::IrrationalScalar, "slash scalar involves " + std::to_string(l) + "^(" +
                                                 std::to_string(a4) + "/4)");
            const long ex = a4 / 4;
            mpz_class pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(l), static_cast<unsigned long>(std::labs(ex)));
            if (ex >= 0)
                s *= pw;
            else
                s /= pw;
        }
        r.scalar *= s;
        out.push_back(std::move(r));
    }
    return FormExpr(std::move(out)).simplified();
}

DeltaQuotient delta_quotient_g(const GroupSymbol &gamma, long p, long high)
{
    if (!is_prime(p))
        fail(Errc::BadGroup, std::to_string(p) + " is not prime");
    // Either the base group (p not dividing nh) or the level-p group over it.
    GroupSymbol base_group = gamma;
    if (gamma.level() % p == 0) {
        if (gamma.h % p == 0 || (gamma.n / p) % p == 0)
            fail(Errc::BadGroup, "p must divide the level of " + gamma.str() + " exactly once");
        for (long e : gamma.fricke)
            if (e % p == 0)
                fail(Errc::BadGroup, "p divides an Atkin-Lehner index of " + gamma.str());
        base_group = make_symbol(gamma.n / p, gamma.h, gamma.fricke);
    }
    const auto al = al_set(base_group);
    const long N = p * base_group.level();
    const long h = base_group.h;
    const FormExpr base = FormExpr::delta(h, p) * FormExpr::delta(p * h, -1);
    FormExpr g;
    bool first = true;
    for (long E : al) {
        const FormExpr t = slash_we(base, E, N);
        g = first ? t : g * t;
        first = false;
    }
    DeltaQuotient out{g.expand(high), g.weight(), LaurentSeries(), g, slash_we(g, p, N)};
    out.series_slash_wp = out.form_slash_wp.expand(high);
    return out;
}

int legendre(long a, long p)
{
    mpz_class A = a, P = p;
    return mpz_legendre(A.get_mpz_t(), P.get_mpz_t());
}

FormExpr hat_f_form(const GroupSymbol &gamma, long p)
{
    if (p < 5 || !is_prime(p))
        fail(Errc::BadGroup, "symmetrised Eisenstein series needs a prime p >= 5");
    if (gamma.level() % p == 0)
        fail(Errc::BadGroup, "p divides nh for " + gamma.str());
    const FormExpr F = FormExpr::eisenstein(p - 1, gamma.h);
    FormExpr out;
    bool first = true;
    for (long E : al_set(gamma)) {
        const FormExpr t = slash_we(F, E, gamma.level()).scaled(legendre(E, p));
        out = first ? t : out + t;
        first = false;
    }
    return out;
}

LaurentSeries hat_f(const GroupSymbol &gamma, long p, long high) { return hat_f_form(gamma, p).expand(high); }

LaurentSeries trace_down(const LaurentSeries &f, const LaurentSeries &f_slash_wp, long k, long p)
{
    if (k % 2 != 0)
        fail(Errc::OddWeight, "trace needs even weight, got " + std::to_string(k));
    // p^{1 - k/2}
    const long ex = 1 - k / 2;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(std::labs(ex)));
    const mpq_class c = ex >= 0 ? mpq_class(pw) : mpq_class(1, 1) / mpq_class(pw);
    return add(f, scale(u_p(f_slash_wp, p), c));
}

} // namespace haupt
