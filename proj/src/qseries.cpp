#include "haupt/qseries.hpp"

#include <algorithm>
#include <climits>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "haupt/error.hpp"
#include "kernels.hpp"

namespace haupt {

namespace {

constexpr long unbounded = LONG_MAX;

long eff_high(const LaurentSeries &s) { return s.exact() ? unbounded : s.high(); }

bool exact_zero(const LaurentSeries &s) { return s.exact() && s.is_zero(); }

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

} // namespace

LaurentSeries::LaurentSeries() = default;

LaurentSeries LaurentSeries::from_parts(long low, std::vector<mpz_class> nums, mpz_class den, bool exact)
{
    LaurentSeries s;
    if (nums.empty()) {
        if (exact)
            return s;
        fail(Errc::EmptyWindow, "series with no coefficients");
    }
    if (den == 0)
        fail(Errc::Malformed, "zero denominator");
    if (den < 0) {
        den = -den;
        for (auto &x : nums)
            x = -x;
    }
    s.low_ = low;
    s.high_ = low + static_cast<long>(nums.size());
    s.exact_ = exact;
    s.num_ = std::move(nums);
    s.den_ = std::move(den);
    s.normalise();
    return s;
}

void LaurentSeries::normalise()
{
    if (den_ != 1) {
        mpz_class g = den_;
        for (const auto &x : num_) {
            if (g == 1)
                break;
            if (x != 0)
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        }
        if (g != 1) {
            for (auto &x : num_)
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
            den_ /= g;
        }
    }
    if (!exact_)
        return;
    std::size_t first = 0;
    while (first < num_.size() && num_[first] == 0)
        ++first;
    if (first == num_.size()) {
        *this = LaurentSeries();
        return;
    }
    std::size_t last = num_.size();
    while (num_[last - 1] == 0)
        --last;
    if (first > 0 || last < num_.size()) {
        std::vector<mpz_class> t(std::make_move_iterator(num_.begin() + static_cast<long>(first)),
                                 std::make_move_iterator(num_.begin() + static_cast<long>(last)));
        num_ = std::move(t);
        low_ += static_cast<long>(first);
    }
    high_ = low_ + static_cast<long>(num_.size());
}

LaurentSeries LaurentSeries::zero(long low, long high)
{
    if (low >= high)
        fail(Errc::EmptyWindow, "zero series on an empty window");
    return from_parts(low, std::vector<mpz_class>(static_cast<std::size_t>(high - low)), 1, false);
}

LaurentSeries LaurentSeries::constant(const mpq_class &c) { return monomial(c, 0); }

LaurentSeries LaurentSeries::monomial(const mpq_class &c, long e)
{
    return from_parts(e, {c.get_num()}, c.get_den(), true);
}

LaurentSeries LaurentSeries::polynomial(const std::map<long, mpq_class> &terms)
{
    if (terms.empty())
        return LaurentSeries();
    long lo = terms.begin()->first, hi = terms.rbegin()->first + 1;
    mpz_class den = 1;
    for (const auto &[e, c] : terms)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> nums(static_cast<std::size_t>(hi - lo));
    for (const auto &[e, c] : terms)
        nums[static_cast<std::size_t>(e - lo)] = c.get_num() * (den / c.get_den());
    return from_parts(lo, std::move(nums), den, true);
}

LaurentSeries LaurentSeries::from_integers(long low, std::vector<mpz_class> nums, bool exact)
{
    return from_parts(low, std::move(nums), 1, exact);
}

LaurentSeries LaurentSeries::from_rationals(long low, const std::vector<mpq_class> &coeffs, bool exact)
{
    mpz_class den = 1;
    for (const auto &c : coeffs)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> nums;
    nums.reserve(coeffs.size());
    for (const auto &c : coeffs)
        nums.push_back(c.get_num() * (den / c.get_den()));
    return from_parts(low, std::move(nums), den, exact);
}

mpq_class LaurentSeries::coeff(long n) const
{
    if (n < low_)
        return 0;
    if (n >= high_) {
        if (exact_)
            return 0;
        fail(Errc::OutOfRange, "coefficient " + std::to_string(n) + " lies above the precision bound " +
                                   std::to_string(high_));
    }
    mpq_class r(numerator(n), den_);
    r.canonicalize();
    return r;
}

bool LaurentSeries::is_zero() const
{
    return std::all_of(num_.begin(), num_.end(), [](const mpz_class &x) { return x == 0; });
}

std::optional<long> LaurentSeries::first_nonzero() const
{
    for (std::size_t i = 0; i < num_.size(); ++i)
        if (num_[i] != 0)
            return low_ + static_cast<long>(i);
    return std::nullopt;
}

LaurentSeries LaurentSeries::truncate(long new_high) const
{
    if (new_high >= high_)
        return *this;
    if (new_high <= low_)
        fail(Errc::EmptyWindow, "truncation below the lowest exponent");
    std::vector<mpz_class> nums(num_.begin(), num_.begin() + (new_high - low_));
    return from_parts(low_, std::move(nums), den_, false);
}

LaurentSeries LaurentSeries::trim_low() const
{
    if (exact_)
        return *this;
    std::size_t first = 0;
    while (first + 1 < num_.size() && num_[first] == 0)
        ++first;
    if (first == 0)
        return *this;
    std::vector<mpz_class> nums(num_.begin() + static_cast<long>(first), num_.end());
    return from_parts(low_ + static_cast<long>(first), std::move(nums), den_, false);
}

LaurentSeries LaurentSeries::shift(long k) const
{
    LaurentSeries s = *this;
    if (exact_zero(s))
        return s;
    s.low_ += k;
    s.high_ += k;
    return s;
}

LaurentSeries LaurentSeries::operator-() const
{
    LaurentSeries s = *this;
    for (auto &x : s.num_)
        x = -x;
    return s;
}

LaurentSeries add(const LaurentSeries &a, const LaurentSeries &b)
{
    if (exact_zero(a))
        return b;
    if (exact_zero(b))
        return a;
    const bool exact = a.exact() && b.exact();
    const long lo = std::min(a.low(), b.low());
    const long hi = exact ? std::max(a.high(), b.high()) : std::min(eff_high(a), eff_high(b));
    if (lo >= hi)
        fail(Errc::EmptyWindow, "sum has an empty precision window");
    mpz_class den;
    mpz_lcm(den.get_mpz_t(), a.denominator().get_mpz_t(), b.denominator().get_mpz_t());
    const mpz_class fa = den / a.denominator(), fb = den / b.denominator();
    std::vector<mpz_class> nums(static_cast<std::size_t>(hi - lo));
    auto accumulate = [&](const LaurentSeries &s, const mpz_class &f) {
        const long top = std::min(s.high(), hi);
        for (long n = s.low(); n < top; ++n) {
            const mpz_class &x = s.numerator(n);
            if (x == 0)
                continue;
            auto &slot = nums[static_cast<std::size_t>(n - lo)];
            if (f == 1)
                slot += x;
            else
                mpz_addmul(slot.get_mpz_t(), x.get_mpz_t(), f.get_mpz_t());
        }
    };
    accumulate(a, fa);
    accumulate(b, fb);
    return LaurentSeries::from_parts(lo, std::move(nums), den, exact);
}

LaurentSeries sub(const LaurentSeries &a, const LaurentSeries &b) { return add(a, -b); }

LaurentSeries scale(const LaurentSeries &a, const mpq_class &c)
{
    mpq_class cc = c;
    cc.canonicalize();
    if (cc == 0) {
        if (a.exact())
            return LaurentSeries();
        return LaurentSeries::zero(a.low(), a.high());
    }
    std::vector<mpz_class> nums = a.numerators();
    const mpz_class &cn = cc.get_num();
    if (cn != 1)
        for (auto &x : nums)
            x *= cn;
    return LaurentSeries::from_parts(a.low(), std::move(nums), a.denominator() * cc.get_den(), a.exact());
}

long product_high(const LaurentSeries &a, const LaurentSeries &b)
{
    if (a.exact() && b.exact())
        return a.high() + b.high() - 1;
    long h = unbounded;
    if (!a.exact())
        h = std::min(h, b.low() + a.high());
    if (!b.exact())
        h = std::min(h, a.low() + b.high());
    return h;
}

namespace {

enum class MulPath { Auto, Schoolbook, Kronecker };

LaurentSeries mul_impl(const LaurentSeries &a, const LaurentSeries &b, MulPath path)
{
    if (exact_zero(a) || exact_zero(b))
        return LaurentSeries();
    const long lo = a.low() + b.low();
    const long hi = product_high(a, b);
    if (lo >= hi)
        fail(Errc::EmptyWindow, "product has an empty precision window");
    const auto len = static_cast<std::size_t>(hi - lo);
    std::vector<mpz_class> c;
    switch (path) {
    case MulPath::Schoolbook:
        c = detail::conv_schoolbook(a.numerators(), b.numerators(), len);
        break;
    case MulPath::Kronecker:
        c = detail::conv_kronecker(a.numerators(), b.numerators(), len);
        break;
    case MulPath::Auto:
        c = detail::conv(a.numerators(), b.numerators(), len);
        break;
    }
    return LaurentSeries::from_parts(lo, std::move(c), a.denominator() * b.denominator(), a.exact() && b.exact());
}

} // namespace

LaurentSeries mul(const LaurentSeries &a, const LaurentSeries &b) { return mul_impl(a, b, MulPath::Auto); }

LaurentSeries mul_schoolbook(const LaurentSeries &a, const LaurentSeries &b)
{
    return mul_impl(a, b, MulPath::Schoolbook);
}

LaurentSeries mul_kronecker(const LaurentSeries &a, const LaurentSeries &b)
{
    return mul_impl(a, b, MulPath::Kronecker);
}

LaurentSeries recip(const LaurentSeries &a, std::optional<long> terms)
{
    const long L = a.low();
    const mpz_class &a0 = a.numerator(L);
    if (a0 == 0)
        fail(Errc::ZeroLeadingCoefficient, "leading coefficient at q^" + std::to_string(L) + " is zero");
    if (a.exact() && a.size() == 1)
        return LaurentSeries::from_parts(-L, {a.denominator()}, a0, true);
    long P;
    if (a.exact()) {
        if (!terms)
            fail(Errc::OutOfRange, "inverse of a polynomial needs an explicit number of terms");
        P = *terms;
    } else {
        P = a.high() - L;
        if (terms)
            P = std::min(P, *terms);
    }
    if (P <= 0)
        fail(Errc::EmptyWindow, "inverse with no terms");
    const auto n = static_cast<std::size_t>(P);
    const auto &A = a.numerators();
    auto Ak = [&](std::size_t k) -> const mpz_class & {
        static const mpz_class zero_value = 0;
        return k < A.size() ? A[k] : zero_value;
    };
    std::vector<mpz_class> C(n);
    mpz_class den;
    if (a0 == 1 || a0 == -1) {
        // B_0 = a0, B_m = -a0 * sum_{k=1}^{m} A_k B_{m-k}
        C[0] = a0;
        mpz_class acc;
        for (std::size_t m = 1; m < n; ++m) {
            acc = 0;
            const std::size_t kmax = std::min(m, A.size() - 1);
            for (std::size_t k = 1; k <= kmax; ++k)
                if (A[k] != 0)
                    mpz_addmul(acc.get_mpz_t(), A[k].get_mpz_t(), C[m - k].get_mpz_t());
            C[m] = a0 == 1 ? mpz_class(-acc) : acc;
        }
        den = 1;
    } else {
        // B_m = C_m / a0^{m+1}, C_0 = 1, C_m = -sum_{k=1}^{m} A_k C_{m-k} a0^{k-1}
        std::vector<mpz_class> pw(n);
        pw[0] = 1;
        for (std::size_t k = 1; k < n; ++k)
            pw[k] = pw[k - 1] * a0;
        C[0] = 1;
        mpz_class acc, t;
        for (std::size_t m = 1; m < n; ++m) {
            acc = 0;
            for (std::size_t k = 1; k <= m; ++k) {
                const mpz_class &ak = Ak(k);
                if (ak == 0)
                    continue;
                t = ak * C[m - k];
                mpz_addmul(acc.get_mpz_t(), t.get_mpz_t(), pw[k - 1].get_mpz_t());
            }
            C[m] = -acc;
        }
        // Common denominator a0^n.
        for (std::size_t m = 0; m < n; ++m)
            C[m] *= pw[n - 1 - m];
        den = pw[n - 1] * a0;
    }
    for (auto &x : C)
        x *= a.denominator();
    return LaurentSeries::from_parts(-L, std::move(C), den, false);
}

LaurentSeries pow(const LaurentSeries &a, unsigned long k)
{
    LaurentSeries result = LaurentSeries::constant(1);
    LaurentSeries base = a;
    bool first = true;
    while (k > 0) {
        if (k & 1UL) {
            result = first ? base : mul(result, base);
            first = false;
        }
        k >>= 1;
        if (k > 0)
            base = mul(base, base);
    }
    return result;
}

LaurentSeries u_p(const LaurentSeries &f, long p)
{
    if (p < 2)
        fail(Errc::OutOfRange, "U_p needs p >= 2");
    if (exact_zero(f))
        return f;
    const long lo = ceil_div(f.low(), p);
    const long hi = floor_div(f.high() - 1, p) + 1;
    if (lo >= hi) {
        if (f.exact())
            return LaurentSeries();
        fail(Errc::EmptyWindow, "U_" + std::to_string(p) + " leaves no known coefficient");
    }
    std::vector<mpz_class> nums;
    nums.reserve(static_cast<std::size_t>(hi - lo));
    for (long n = lo; n < hi; ++n)
        nums.push_back(f.numerator(p * n));
    return LaurentSeries::from_parts(lo, std::move(nums), f.denominator(), f.exact());
}

LaurentSeries u_p_iter(const LaurentSeries &f, long p, int n)
{
    LaurentSeries g = f;
    for (int i = 0; i < n; ++i)
        g = u_p(g, p);
    return g;
}

LaurentSeries v_m(const LaurentSeries &f, long m)
{
    if (m < 1)
        fail(Errc::OutOfRange, "V_m needs m >= 1");
    if (m == 1 || exact_zero(f))
        return f;
    const long lo = m * f.low();
    const long hi = m * (f.high() - 1) + 1;
    std::vector<mpz_class> nums(static_cast<std::size_t>(hi - lo));
    for (long n = f.low(); n < f.high(); ++n)
        nums[static_cast<std::size_t>(m * n - lo)] = f.numerator(n);
    return LaurentSeries::from_parts(lo, std::move(nums), f.denominator(), f.exact());
}

long p_adic_valuation(const mpz_class &x, long p)
{
    if (x == 0)
        return LONG_MAX;
    if (p == 2)
        return static_cast<long>(mpz_scan1(x.get_mpz_t(), 0));
    if (!mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p)))
        return 0;
    mpz_class t, pp = p;
    return static_cast<long>(mpz_remove(t.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

std::string ValuationP::str() const { return infinite ? std::string("inf") : std::to_string(value); }

ValuationP valuation_p(const LaurentSeries &f, long p)
{
    if (mpz_divisible_ui_p(f.denominator().get_mpz_t(), static_cast<unsigned long>(p)))
        fail(Errc::NonPIntegral, "denominator divisible by " + std::to_string(p));
    ValuationP v;
    v.window_high = f.high();
    for (const auto &x : f.numerators()) {
        if (x == 0)
            continue;
        const long k = p_adic_valuation(x, p);
        if (v.infinite || k < v.value) {
            v.infinite = false;
            v.value = k;
            if (k == 0)
                break;
        }
    }
    return v;
}

LaurentSeries reduce_mod(const LaurentSeries &f, long p, long k)
{
    if (k < 1)
        fail(Errc::OutOfRange, "reduce_mod needs k >= 1");
    mpz_class M;
    mpz_ui_pow_ui(M.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    if (mpz_divisible_ui_p(f.denominator().get_mpz_t(), static_cast<unsigned long>(p)))
        fail(Errc::NonPIntegral, "denominator divisible by " + std::to_string(p));
    mpz_class inv = 1;
    if (f.denominator() != 1)
        mpz_invert(inv.get_mpz_t(), f.denominator().get_mpz_t(), M.get_mpz_t());
    std::vector<mpz_class> nums(f.numerators().size());
    for (std::size_t i = 0; i < nums.size(); ++i) {
        const mpz_class &x = f.numerators()[i];
        if (x == 0)
            continue;
        if (inv == 1)
            mpz_mod(nums[i].get_mpz_t(), x.get_mpz_t(), M.get_mpz_t());
        else {
            nums[i] = x * inv;
            mpz_mod(nums[i].get_mpz_t(), nums[i].get_mpz_t(), M.get_mpz_t());
        }
    }
    return LaurentSeries::from_parts(f.low(), std::move(nums), 1, f.exact());
}

std::pair<long, long> overlap(const LaurentSeries &a, const LaurentSeries &b)
{
    const long lo = std::min(a.low(), b.low());
    const long hi = (a.exact() && b.exact()) ? std::max(a.high(), b.high()) : std::min(eff_high(a), eff_high(b));
    if (lo >= hi)
        fail(Errc::EmptyWindow, "comparison on an empty window");
    return {lo, hi};
}

std::optional<long> first_difference(const LaurentSeries &a, const LaurentSeries &b)
{
    const auto [lo, hi] = overlap(a, b);
    const bool same_den = a.denominator() == b.denominator();
    static const mpz_class zero_value = 0;
    auto num = [](const LaurentSeries &s, long n) -> const mpz_class & {
        return (n < s.low() || n >= s.high()) ? zero_value : s.numerator(n);
    };
    mpz_class x, y;
    for (long n = lo; n < hi; ++n) {
        const mpz_class &u = num(a, n), &v = num(b, n);
        if (same_den) {
            if (u != v)
                return n;
            continue;
        }
        x = u * b.denominator();
        y = v * a.denominator();
        if (x != y)
            return n;
    }
    return std::nullopt;
}

bool equal_on_overlap(const LaurentSeries &a, const LaurentSeries &b) { return !first_difference(a, b); }

std::string to_text(const LaurentSeries &f)
{
    std::ostringstream os;
    os << f;
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const LaurentSeries &f)
{
    os << "# low=" << f.low() << " high=" << f.high() << '\n';
    for (long n = f.low(); n < f.high(); ++n) {
        const mpq_class c = f.coeff(n);
        if (c == 0)
            continue;
        os << n << '\t' << c.get_num();
        if (c.get_den() != 1)
            os << '/' << c.get_den();
        os << '\n';
    }
    return os;
}

LaurentSeries from_text(const std::string &text)
{
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    long low = 0, high = 0, last = LONG_MIN;
    std::map<long, mpq_class> coeffs;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            if (!have_header && line.rfind("# low=", 0) == 0) {
                if (std::sscanf(line.c_str(), "# low=%ld high=%ld", &low, &high) != 2)
                    fail(Errc::Malformed, "bad series header: " + line);
                if (low >= high)
                    fail(Errc::Malformed, "series header with low >= high");
                have_header = true;
            }
            continue;
        }
        if (!have_header)
            fail(Errc::Malformed, "coefficient line before the '# low= high=' header");
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            fail(Errc::Malformed, "line " + std::to_string(lineno) + ": expected exponent<TAB>coefficient");
        long e;
        try {
            std::size_t used;
            e = std::stol(line.substr(0, tab), &used);
            if (used != tab)
                throw std::invalid_argument("trailing");
        } catch (const std::exception &) {
            fail(Errc::Malformed, "line " + std::to_string(lineno) + ": bad exponent");
        }
        if (e <= last)
            fail(Errc::Malformed, "line " + std::to_string(lineno) + ": exponents must increase");
        if (e < low || e >= high)
            fail(Errc::Malformed, "line " + std::to_string(lineno) + ": exponent outside the header window");
        mpq_class c;
        if (c.set_str(line.substr(tab + 1), 10) != 0)
            fail(Errc::Malformed, "line " + std::to_string(lineno) + ": bad coefficient");
        if (c.get_den() == 0)
            fail(Errc::Malformed, "line " + std::to_string(lineno) + ": zero denominator");
        c.canonicalize();
        coeffs[e] = c;
        last = e;
    }
    if (!have_header)
        fail(Errc::Malformed, "missing '# low= high=' header");
    std::vector<mpq_class> v(static_cast<std::size_t>(high - low));
    for (const auto &[e, c] : coeffs)
        v[static_cast<std::size_t>(e - low)] = c;
    return LaurentSeries::from_rationals(low, v, false);
}

bool is_prime(long p)
{
    if (p < 2)
        return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

} // namespace haupt
