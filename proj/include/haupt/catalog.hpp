#ifndef HAUPT_CATALOG_HPP
#define HAUPT_CATALOG_HPP

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "haupt/forms.hpp"
#include "haupt/group_symbol.hpp"
#include "haupt/qseries.hpp"

namespace haupt {

enum class Construction {
    J,          // E_4^3 / Delta - 744
    EtaProduct, // normalised eta quotient
    EtaPower,   // (eta(tau)/eta(N tau))^{24/(N-1)}
    FrickeSym,  // t + N^{12/(N-1)} / t with t the EtaPower function
    FormalRoot, // R^h = T_base(scale tau) + shift, R = q^-1 (1 + ...)
    CoeffFile,  // serialized expansion
};

const char *construction_name(Construction c);

struct HauptmodulDef
{
    GroupSymbol symbol;
    Construction kind = Construction::J;
    EtaQuotient eta;     // EtaProduct, and the t of EtaPower / FrickeSym
    long N = 0;          // EtaPower, FrickeSym
    long root_h = 1;     // FormalRoot
    std::string base;    // FormalRoot
    long root_scale = 1; // FormalRoot
    mpz_class root_shift = 0;
    std::string file;      // CoeffFile, as written in the catalog
    std::string file_text; // CoeffFile contents, read at load
};

HauptmodulDef eta_power_def(const GroupSymbol &g, long N);
HauptmodulDef fricke_sym_def(const GroupSymbol &g, long N);

// Registry keyed by canonical symbol. Expansions are memoised; lookups and
// expansions may run concurrently.
class Catalog
{
public:
    Catalog() = default;
    Catalog(const Catalog &o);
    Catalog &operator=(const Catalog &o);

    void insert(HauptmodulDef def);
    bool contains(const std::string &symbol) const;
    const HauptmodulDef &at(const std::string &symbol) const;
    std::vector<std::string> symbols() const;
    std::size_t size() const { return defs_.size(); }
    bool empty() const { return defs_.empty(); }

    // Normalised q^-1 + O(q) on [-1, high).
    LaurentSeries hauptmodul(const std::string &symbol, long high) const;

private:
    LaurentSeries build(const HauptmodulDef &def, long high) const;

    std::map<std::string, HauptmodulDef> defs_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, LaurentSeries> cache_;
};

// base_dir resolves file: payloads; an empty base_dir reads bundled files.
Catalog parse_catalog(const std::string &text, const std::string &base_dir);
Catalog load_catalog(const std::string &path);
const Catalog &bundled_catalog();

// Constant removed, low = -1 and a(-1) = 1 checked.
LaurentSeries normalise_hauptmodul(const LaurentSeries &f, const std::string &what);
// a(k) = 0 unless k = -1 mod h; returns the first violating exponent.
std::optional<long> support_violation(const LaurentSeries &f, long h);

} // namespace haupt

#endif
