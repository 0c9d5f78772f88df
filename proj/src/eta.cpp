#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

#include "haupt/error.hpp"
#include "haupt/forms.hpp"
#include "kernels.hpp"

namespace haupt {

long EtaQuotient::offset24() const
{
    long s = 0;
    for (const auto &[d, r] : terms)
        s += d * r;
    return s;
}

long EtaQuotient::weight2() const
{
    long s = 0;
    for (const auto &[d, r] : terms)
        s += r;
    return s;
}

std::string EtaQuotient::str() const
{
    std::string s;
    for (const auto &[d, r] : terms) {
        if (!s.empty())
            s += "*";
        s += std::to_string(d) + "^" + std::to_string(r);
    }
    return s;
}

EtaQuotient parse_eta_quotient(const std::string &text)
{
    EtaQuotient eq;
    if (text.empty())
        return eq;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, '*')) {
        const auto caret = item.find('^');
        long d = 0, r = 1;
        try {
            std::size_t used = 0;
            const std::string ds = item.substr(0, caret);
            d = std::stol(ds, &used);
            if (used != ds.size())
                throw std::invalid_argument("d");
            if (caret != std::string::npos) {
                const std::string rs = item.substr(caret + 1);
                r = std::stol(rs, &used);
                if (used != rs.size())
                    throw std::invalid_argument("r");
            }
        } catch (const std::exception &) {
            fail(Errc::Malformed, "bad eta factor '" + item + "' in '" + text + "'");
        }
        if (d < 1)
            fail(Errc::Malformed, "eta scale must be positive in '" + text + "'");
        eq.terms.emplace_back(d, r);
    }
    return eq;
}

EtaQuotient concat(const EtaQuotient &a, const EtaQuotient &b)
{
    EtaQuotient c = a;
    c.terms.insert(c.terms.end(), b.terms.begin(), b.terms.end());
    return c;
}

namespace {

std::map<long, long> merged(const EtaQuotient &eq)
{
    std::map<long, long> m;
    for (const auto &[d, r] : eq.terms) {
        if (d < 1)
            fail(Errc::Malformed, "eta scale must be positive");
        m[d] += r;
    }
    return m;
}

long checked_offset(const EtaQuotient &eq)
{
    const long o = eq.offset24();
    if (o % 24 != 0)
        fail(Errc::FractionalOffset, "q-offset of " + eq.str() + " is " + std::to_string(o) + "/24");
    return o / 24;
}

} // namespace

LaurentSeries expand_eta_quotient(const EtaQuotient &eq, long high)
{
    const long L = checked_offset(eq);
    if (eq.terms.empty())
        return LaurentSeries::constant(1);
    if (high <= L)
        fail(Errc::EmptyWindow, "eta quotient " + eq.str() + " starts at q^" + std::to_string(L));
    const auto len = static_cast<std::size_t>(high - L);
    std::vector<mpz_class> g(len);
    g[0] = 1;
    for (const auto &[d, r] : merged(eq)) {
        if (r == 0)
            continue;
        const long a = std::labs(r) / 3, b = std::labs(r) % 3;
        if (a > 0) {
            const auto f = detail::jacobi_factor(d, len);
            for (long i = 0; i < a; ++i)
                r > 0 ? detail::mul_sparse(g, f) : detail::div_sparse(g, f);
        }
        if (b > 0) {
            const auto f = detail::euler_factor(d, len);
            for (long i = 0; i < b; ++i)
                r > 0 ? detail::mul_sparse(g, f) : detail::div_sparse(g, f);
        }
    }
    return LaurentSeries::from_integers(L, std::move(g), false);
}

LaurentSeries expand_eta_quotient_naive(const EtaQuotient &eq, long high)
{
    const long L = checked_offset(eq);
    if (eq.terms.empty())
        return LaurentSeries::constant(1);
    if (high <= L)
        fail(Errc::EmptyWindow, "eta quotient " + eq.str() + " starts at q^" + std::to_string(L));
    const auto len = static_cast<std::size_t>(high - L);
    std::vector<mpz_class> g(len);
    g[0] = 1;
    for (const auto &[d, r] : eq.terms) {
        for (long i = 0; i < std::labs(r); ++i) {
            for (auto m = static_cast<std::size_t>(d); m < len; m += static_cast<std::size_t>(d)) {
                if (r > 0) {
                    for (std::size_t n = len; n-- > m;)
                        g[n] -= g[n - m];
                } else {
                    for (std::size_t n = m; n < len; ++n)
                        g[n] += g[n - m];
                }
            }
        }
    }
    return LaurentSeries::from_integers(L, std::move(g), false);
}

} // namespace haupt
