#ifndef HAUPT_MOONSHINE_HPP
#define HAUPT_MOONSHINE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "haupt/annihilation.hpp"
#include "haupt/catalog.hpp"
#include "haupt/quadnum.hpp"
#include "haupt/report.hpp"

namespace haupt {

struct ClassInfo
{
    std::string name;
    long size = 1;
    long order = 1;
};

class CharacterTable
{
public:
    std::string name;
    long group_order = 1;
    long quad_d = 1;
    std::vector<ClassInfo> classes;
    std::vector<std::vector<QuadNum>> characters; // rows are irreducibles
    std::vector<std::map<long, std::size_t>> power_entries;
    std::map<std::string, std::string> assignment; // optional class -> symbol

    std::size_t index(const std::string &class_name) const;
    std::size_t identity() const;
    // Class of g^m for g in class c.
    std::size_t power_map(std::size_t c, long m) const;

    // Order sum, orthogonality and power maps; throws on failure.
    void validate() const;
};

CharacterTable parse_group(const nlohmann::json &j);
CharacterTable parse_group_text(const std::string &text);
CharacterTable load_group(const std::string &path);
CharacterTable bundled_a5();

// Per class, indexed like table.classes.
using Assignment = std::vector<GroupSymbol>;

Assignment make_assignment(const CharacterTable &table, const std::map<std::string, std::string> &by_class);
// The assignment stored with the table; Malformed if absent.
Assignment table_assignment(const CharacterTable &table);

// Symbols that occur as monster classes, from the bundled list unless given.
const std::set<std::string> &monster_symbols();
std::set<std::string> parse_monster_symbols(const std::string &text);

CheckReport validate_assignment(const CharacterTable &table, const Assignment &a,
                                const std::set<std::string> &allowed = monster_symbols());

// M_chi = (1/|G|) sum size conj(chi(c)) T_c on [-1, high).
LaurentSeries multiplicity_series(const CharacterTable &table, const Assignment &a, std::size_t chi,
                                  const Catalog &cat, long high);
// sum_chi chi(c) M_chi; irrational parts must cancel.
LaurentSeries schur_roundtrip(const CharacterTable &table, const std::vector<LaurentSeries> &m, std::size_t c);

struct MultiplicityReport
{
    std::string group;
    long p = 0;
    long window = 0;
    std::vector<LaurentSeries> series;
    CheckReport assignment;
    CheckReport integrality;
    CheckReport positivity; // on the window only
    std::vector<CheckReport> annihilation;
    std::string conclusion;

    bool moonshine() const;
    std::vector<CheckReport> checks() const;
};

MultiplicityReport check_padic_moonshine(const CharacterTable &table, const Assignment &a, const Catalog &cat,
                                         long p, long high, int n_max, long base_window = 50);

// Least n in [1, n_max] with T|U_p^n = 0 mod p on [0, window).
CheckReport check_weak_annihilation(const Catalog &cat, const std::string &symbol, long p, int n_max,
                                    long window, long cap = kDefaultCoefficientCap);

// Window minimum of v_q over J - T on [-1, window).
ValuationP exponent_divisibility(const Catalog &cat, const std::string &symbol, long q, long window);

struct Feasibility
{
    bool feasible = false;
    std::optional<std::vector<mpz_class>> witness; // a_i in [0, q^r)
};

// J + sum a_i T_i = 0 mod q^r on [-1, window).
Feasibility order_bound_feasible(const Catalog &cat, const std::vector<std::string> &candidates, long q, long r,
                                 long window);

// x with A x = b mod q^r, by diagonalising with minimal-valuation pivots.
std::optional<std::vector<mpz_class>> solve_mod_prime_power(std::vector<std::vector<mpz_class>> A,
                                                            std::vector<mpz_class> b, long q, long r);

} // namespace haupt

#endif
