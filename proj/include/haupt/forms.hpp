#ifndef HAUPT_FORMS_HPP
#define HAUPT_FORMS_HPP

#include <string>
#include <utility>
#include <vector>

#include "haupt/group_symbol.hpp"
#include "haupt/qseries.hpp"

namespace haupt {

// prod eta(d tau)^r
struct EtaQuotient
{
    std::vector<std::pair<long, long>> terms; // (d, r)

    // 24 times the q-offset.
    long offset24() const;
    // Twice the weight.
    long weight2() const;
    std::string str() const;
};

EtaQuotient parse_eta_quotient(const std::string &text);
EtaQuotient concat(const EtaQuotient &a, const EtaQuotient &b);

// Window [offset, high).
LaurentSeries expand_eta_quotient(const EtaQuotient &eq, long high);
// Factor-by-factor reference: multiply or divide by (1 - q^m) one m at a time.
LaurentSeries expand_eta_quotient_naive(const EtaQuotient &eq, long high);

// E_k for even k >= 4, on [0, high).
LaurentSeries eisenstein(long k, long high);
// E_2 = 1 - 24 sum sigma_1(n) q^n (quasimodular), on [0, high).
LaurentSeries eisenstein_e2(long high);
mpq_class bernoulli(long n);

// Normalised J = E_4^3 / Delta - 744 on [-1, high).
LaurentSeries j_function(long high);

enum class Generator { Eta, Eisenstein, Delta };

// gen(d tau)^power; for Eta, k is the eta exponent; for Eisenstein, the weight.
struct Factor
{
    Generator gen = Generator::Delta;
    long k = 12;
    long d = 1;
    long power = 1;

    long weight2() const; // twice the weight of gen(d tau)^power

    friend bool operator==(const Factor &, const Factor &) = default;
};

struct Monomial
{
    mpq_class scalar = 1;
    std::vector<Factor> factors;
};

// Sum of scalar multiples of products of scaled level-one generators, one weight.
class FormExpr
{
public:
    FormExpr() = default;
    explicit FormExpr(std::vector<Monomial> terms);

    static FormExpr delta(long d, long power = 1);
    static FormExpr eisenstein(long k, long d);
    static FormExpr eta_power(long k, long d);

    const std::vector<Monomial> &terms() const { return terms_; }
    long weight() const { return weight2_ / 2; }
    long weight2() const { return weight2_; }

    FormExpr operator*(const FormExpr &o) const;
    FormExpr operator+(const FormExpr &o) const;
    FormExpr scaled(const mpq_class &c) const;

    // Collect equal factor lists; merge powers within a monomial.
    FormExpr simplified() const;

    LaurentSeries expand(long high) const;

private:
    std::vector<Monomial> terms_;
    long weight2_ = 0;
};

// f(d tau)|_k W_e = ((d*e)/d)^{k/2} f((d*e) tau) applied factor by factor.
FormExpr slash_we(const FormExpr &f, long e, long N);

struct DeltaQuotient
{
    LaurentSeries series;
    long weight = 0;
    LaurentSeries series_slash_wp;
    FormExpr form;
    FormExpr form_slash_wp;
};

DeltaQuotient delta_quotient_g(const GroupSymbol &gamma, long p, long high);
LaurentSeries hat_f(const GroupSymbol &gamma, long p, long high);
FormExpr hat_f_form(const GroupSymbol &gamma, long p);
LaurentSeries trace_down(const LaurentSeries &f, const LaurentSeries &f_slash_wp, long k, long p);

int legendre(long a, long p);

} // namespace haupt

#endif
