#ifndef HAUPT_GROUP_SYMBOL_HPP
#define HAUPT_GROUP_SYMBOL_HPP

#include <set>
#include <string>
#include <vector>

namespace haupt {

// Gamma_0(n|h)+e,f,...  written n|h+e,f,...
struct GroupSymbol
{
    long n = 1;
    long h = 1;
    std::set<long> fricke; // e > 1 with w_e in the group

    long level() const { return n * h; }
    // Element order of the monster class carrying this symbol.
    long element_order() const { return n; }
    std::string str() const;

    friend bool operator==(const GroupSymbol &, const GroupSymbol &) = default;
};

// Validating constructor; throws InvariantViolation.
GroupSymbol make_symbol(long n, long h, std::set<long> fricke);

GroupSymbol parse_symbol(const std::string &text);
// Parse and render; the canonical spelling used as catalog key.
std::string canonical_symbol(const std::string &text);

GroupSymbol power_group(const GroupSymbol &g, long d);
GroupSymbol adjoin_we(const GroupSymbol &g, long e);
std::set<long> al_set(const GroupSymbol &g);
long sturm_index(long N);

bool is_exact_divisor(long e, long m);
std::vector<long> exact_divisors(long m); // all e > 1 with e || m
long star(long e1, long e2);              // e1 e2 / gcd(e1, e2)^2

} // namespace haupt

#endif
