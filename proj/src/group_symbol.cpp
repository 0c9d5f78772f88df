#include "haupt/group_symbol.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "haupt/error.hpp"

namespace haupt {

bool is_exact_divisor(long e, long m)
{
    return e >= 1 && m % e == 0 && std::gcd(e, m / e) == 1;
}

std::vector<long> exact_divisors(long m)
{
    std::vector<long> out;
    for (long e = 2; e <= m; ++e)
        if (is_exact_divisor(e, m))
            out.push_back(e);
    return out;
}

long star(long e1, long e2)
{
    const long g = std::gcd(e1, e2);
    return (e1 / g) * (e2 / g);
}

namespace {

std::set<long> star_closure(std::set<long> s)
{
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<long> cur(s.begin(), s.end());
        for (long a : cur)
            for (long b : cur) {
                const long c = star(a, b);
                if (c != 1 && s.insert(c).second)
                    grew = true;
            }
    }
    return s;
}

} // namespace

GroupSymbol make_symbol(long n, long h, std::set<long> fricke)
{
    if (n < 1 || h < 1)
        fail(Errc::InvariantViolation, "n and h must be positive");
    if (std::gcd(n, 24L) % h != 0)
        fail(Errc::InvariantViolation, "h = " + std::to_string(h) + " does not divide gcd(n, 24)");
    const long m = n / h;
    for (long e : fricke) {
        if (e == 1)
            fail(Errc::InvariantViolation, "w_1 is implicit");
        if (!is_exact_divisor(e, m))
            fail(Errc::InvariantViolation, std::to_string(e) + " is not an exact divisor of " + std::to_string(m));
    }
    if (star_closure(fricke) != fricke)
        fail(Errc::InvariantViolation, "Atkin-Lehner set is not closed under *");
    return GroupSymbol{n, h, std::move(fricke)};
}

std::string GroupSymbol::str() const
{
    std::string s = std::to_string(n);
    if (h != 1)
        s += "|" + std::to_string(h);
    if (fricke.empty())
        return s;
    const auto all = exact_divisors(n / h);
    if (std::set<long>(all.begin(), all.end()) == fricke)
        return s + "+";
    s += "+";
    bool first = true;
    for (long e : fricke) {
        if (!first)
            s += ",";
        s += std::to_string(e);
        first = false;
    }
    return s;
}

GroupSymbol parse_symbol(const std::string &text)
{
    std::size_t i = 0;
    auto number = [&](const char *what) {
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            fail(Errc::Malformed, std::string("expected ") + what + " in symbol '" + text + "'");
        long v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + (text[i] - '0');
            if (v > 1000000000L)
                fail(Errc::Malformed, "number too large in symbol '" + text + "'");
            ++i;
        }
        return v;
    };
    const long n = number("n");
    long h = 1;
    if (i < text.size() && text[i] == '|') {
        ++i;
        h = number("h");
    }
    std::set<long> fricke;
    if (i < text.size() && text[i] == '+') {
        ++i;
        if (i == text.size()) {
            if (n % h != 0)
                fail(Errc::InvariantViolation, "h does not divide n");
            for (long e : exact_divisors(n / h))
                fricke.insert(e);
        } else {
            while (true) {
                fricke.insert(number("Atkin-Lehner index"));
                if (i == text.size())
                    break;
                if (text[i] != ',')
                    fail(Errc::Malformed, "unexpected character in symbol '" + text + "'");
                ++i;
            }
        }
    }
    if (i != text.size())
        fail(Errc::Malformed, "trailing characters in symbol '" + text + "'");
    if (n < 1 || h < 1)
        fail(Errc::Malformed, "zero in symbol '" + text + "'");
    return make_symbol(n, h, std::move(fricke));
}

std::string canonical_symbol(const std::string &text) { return parse_symbol(text).str(); }

GroupSymbol power_group(const GroupSymbol &g, long d)
{
    if (d < 1)
        fail(Errc::OutOfRange, "power must be positive");
    const long n2 = g.n / std::gcd(g.n, d);
    const long h2 = g.h / std::gcd(g.h, d);
    std::set<long> fr;
    for (long e : g.fricke)
        if (e != 1 && is_exact_divisor(e, n2 / h2))
            fr.insert(e);
    return make_symbol(n2, h2, std::move(fr));
}

GroupSymbol adjoin_we(const GroupSymbol &g, long e)
{
    if (e == 1)
        return g;
    if (!is_exact_divisor(e, g.n / g.h))
        fail(Errc::NotExactDivisor, std::to_string(e) + " is not an exact divisor of " + std::to_string(g.n / g.h));
    std::set<long> s = g.fricke;
    s.insert(e);
    return make_symbol(g.n, g.h, star_closure(std::move(s)));
}

std::set<long> al_set(const GroupSymbol &g)
{
    std::set<long> out{1};
    for (long e : g.fricke) {
        long he = 1;
        long rest = std::gcd(e, g.h);
        for (long l = 2; rest > 1; ++l) {
            if (rest % l != 0)
                continue;
            while (rest % l == 0)
                rest /= l;
            long hh = g.h;
            while (hh % l == 0) {
                hh /= l;
                he *= l;
            }
        }
        out.insert(e * he * he);
    }
    return out;
}

long sturm_index(long N)
{
    if (N < 1)
        fail(Errc::OutOfRange, "level must be positive");
    long idx = N, m = N;
    for (long l = 2; l * l <= m; ++l) {
        if (m % l != 0)
            continue;
        while (m % l == 0)
            m /= l;
        idx = idx / l * (l + 1);
    }
    if (m > 1)
        idx = idx / m * (m + 1);
    return idx;
}

} // namespace haupt
