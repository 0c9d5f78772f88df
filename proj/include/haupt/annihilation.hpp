#ifndef HAUPT_ANNIHILATION_HPP
#define HAUPT_ANNIHILATION_HPP

#include <functional>
#include <string>
#include <vector>

#include "haupt/catalog.hpp"
#include "haupt/report.hpp"

namespace haupt {

// Upper limit on the number of input coefficients any check may request.
// Requests above it fail with PrecisionExhausted.
inline constexpr long kDefaultCoefficientCap = 60000;

// [v_p(T|U_p^n) for n = 1..iters], the n-th over at least base_window + 1
// coefficients.
std::vector<ValuationP> valuation_sequence(const Catalog &cat, const std::string &symbol, long p, int iters,
                                           long base_window, long cap = kDefaultCoefficientCap);

// c(p^a n) = 0 mod p^{exp(a)}: 3a+8, 2a+3, a+1, a, a for p = 2, 3, 5, 7, 11.
std::function<long(long)> lehner_atkin_exponent(long p);

CheckReport check_congruence_family(const Catalog &cat, long p, const std::function<long(long)> &exp_fn,
                                    long alpha_max, long window, long cap = kDefaultCoefficientCap);

enum class CompressionCase { A, B, C, D, Conway };

CompressionCase parse_compression_case(const std::string &s);
const char *compression_case_name(CompressionCase c);

// The identity for the case, coefficientwise on exponents [-1, window).
CheckReport check_compression(const Catalog &cat, CompressionCase which, const GroupSymbol &gamma, long p,
                              long window);

// A row of the Lehner-type tables. Each b_j is b_coeff[j] * p^{b_half[j]/2}.
struct LehnerDatum
{
    GroupSymbol symbol;
    long p = 0;
    long alpha2 = 0; // 2 alpha
    long e = 0;
    EtaQuotient eta; // the unnormalised Hauptmodul
    std::vector<long> b_coeff;
    std::vector<long> b_half;

    mpq_class alpha() const { return mpq_class(alpha2, 2); }
    // p^alpha b_j, which are integers.
    std::vector<mpz_class> scaled_b() const;
};

const std::vector<LehnerDatum> &lehner_data();
// UnknownDatum unless the symbol is one of the six rows.
const LehnerDatum &lehner_datum(const std::string &symbol);

// p (T|U_p) + p^e / frakT is constant on [0, window].
CheckReport check_lehner_functional(const Catalog &cat, const LehnerDatum &d, long window);
// Z|U_p = sum p^alpha b_j Z^j on [1, window] with Z = 1/frakT.
CheckReport check_lehner_polynomial(const Catalog &cat, const LehnerDatum &d, long window);
// Both of the above; passes when both pass.
CheckReport check_lehner(const Catalog &cat, const LehnerDatum &d, long window);

// v_p(T|U_p^n) >= floor(n alpha) for n <= n_max.
CheckReport check_rate_bound(const Catalog &cat, const std::string &symbol, long p, const mpq_class &alpha,
                             int n_max, long base_window, long cap = kDefaultCoefficientCap);

// v_p(T|U_p^{l+m+1}) >= v_p(T|U_p^l) + 1 for l + m + 1 <= n_max. Infinite
// valuations satisfy every bound.
CheckReport check_increment(const Catalog &cat, const std::string &symbol, long p, int m, int n_max,
                            long base_window, long cap = kDefaultCoefficientCap);

// Searches n1 < n2 <= n_max with T|U_p^n2 = s T|U_p^n1 != 0 mod p on [0, window)
// for some unit s.
// A hit passes as evidence of non-annihilation; no hit is indeterminate.
CheckReport detect_mod_p_cycle(const Catalog &cat, const std::string &symbol, long p, int n_max, long window,
                               long cap = kDefaultCoefficientCap);

} // namespace haupt

#endif
