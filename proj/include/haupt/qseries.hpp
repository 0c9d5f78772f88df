#ifndef HAUPT_QSERIES_HPP
#define HAUPT_QSERIES_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace haupt {

// Truncated Laurent series sum_{n >= low} a(n) q^n, known on [low, high).
//
// Coefficients are stored as integer numerators over one positive common
// denominator kept in lowest terms, so integral series never carry
// per-coefficient denominators. An exact series is a Laurent polynomial: every
// coefficient outside [low, high) is known to vanish.
class LaurentSeries
{
public:
    // Exact zero.
    LaurentSeries();

    // Zero known only on [low, high).
    static LaurentSeries zero(long low, long high);
    static LaurentSeries constant(const mpq_class &c);
    static LaurentSeries monomial(const mpq_class &c, long e);
    static LaurentSeries polynomial(const std::map<long, mpq_class> &terms);
    static LaurentSeries from_integers(long low, std::vector<mpz_class> nums, bool exact = false);
    static LaurentSeries from_rationals(long low, const std::vector<mpq_class> &coeffs, bool exact = false);
    // nums / den on [low, low + nums.size()); normalised on construction.
    static LaurentSeries from_parts(long low, std::vector<mpz_class> nums, mpz_class den, bool exact);

    long low() const { return low_; }
    long high() const { return high_; }
    bool exact() const { return exact_; }
    std::size_t size() const { return num_.size(); }

    // Throws OutOfRange for an exponent above the window of an inexact series.
    mpq_class coeff(long n) const;
    // Numerator at n relative to denominator(); n must lie in [low, high).
    const mpz_class &numerator(long n) const { return num_[static_cast<std::size_t>(n - low_)]; }
    const std::vector<mpz_class> &numerators() const { return num_; }
    const mpz_class &denominator() const { return den_; }
    bool integral() const { return den_ == 1; }

    bool is_zero() const;
    // Lowest exponent in the window with a nonzero coefficient.
    std::optional<long> first_nonzero() const;

    // Same coefficients, window cut to [low, min(high, new_high)).
    LaurentSeries truncate(long new_high) const;
    // Drop leading zero coefficients so that low() is the true valuation
    // (keeps at least one slot).
    LaurentSeries trim_low() const;
    // Multiply by q^k.
    LaurentSeries shift(long k) const;

    LaurentSeries operator-() const;

private:
    void normalise();

    long low_ = 0;
    long high_ = 1;
    bool exact_ = true;
    std::vector<mpz_class> num_{mpz_class(0)};
    mpz_class den_ = 1;
};

LaurentSeries add(const LaurentSeries &a, const LaurentSeries &b);
LaurentSeries sub(const LaurentSeries &a, const LaurentSeries &b);
LaurentSeries scale(const LaurentSeries &a, const mpq_class &c);

// Window of a product; exact operands count as infinitely precise.
long product_high(const LaurentSeries &a, const LaurentSeries &b);

LaurentSeries mul(const LaurentSeries &a, const LaurentSeries &b);
// Reference O(n^2) Cauchy product.
LaurentSeries mul_schoolbook(const LaurentSeries &a, const LaurentSeries &b);
// Kronecker substitution; bit-identical to mul_schoolbook.
LaurentSeries mul_kronecker(const LaurentSeries &a, const LaurentSeries &b);

// Multiplicative inverse. An exact operand with more than one term has an
// infinite inverse; `terms` then fixes how many coefficients to produce. For
// inexact input the window is dictated by the input and `terms` may only
// shrink it.
LaurentSeries recip(const LaurentSeries &a, std::optional<long> terms = std::nullopt);

// Positive integer power by repeated squaring.
LaurentSeries pow(const LaurentSeries &a, unsigned long k);

LaurentSeries u_p(const LaurentSeries &f, long p);
LaurentSeries u_p_iter(const LaurentSeries &f, long p, int n);
LaurentSeries v_m(const LaurentSeries &f, long m);

struct ValuationP
{
    bool infinite = true;
    long value = 0;
    long window_high = 0;

    bool at_least(long k) const { return infinite || value >= k; }
    std::string str() const;
};

ValuationP valuation_p(const LaurentSeries &f, long p);
LaurentSeries reduce_mod(const LaurentSeries &f, long p, long k);

// Exponent range [lo, hi) on which both are known; throws EmptyWindow if empty.
std::pair<long, long> overlap(const LaurentSeries &a, const LaurentSeries &b);
// First exponent in the overlap where a and b differ.
std::optional<long> first_difference(const LaurentSeries &a, const LaurentSeries &b);
bool equal_on_overlap(const LaurentSeries &a, const LaurentSeries &b);

std::string to_text(const LaurentSeries &f);
LaurentSeries from_text(const std::string &text);
std::ostream &operator<<(std::ostream &os, const LaurentSeries &f);

long p_adic_valuation(const mpz_class &x, long p);
bool is_prime(long p);

} // namespace haupt

#endif
