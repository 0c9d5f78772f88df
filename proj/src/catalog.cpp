#include "haupt/catalog.hpp"

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "haupt/bundled.hpp"
#include "haupt/error.hpp"

namespace haupt {

const char *construction_name(Construction c)
{
    switch (c) {
    case Construction::J: return "j";
    case Construction::EtaProduct: return "eta";
    case Construction::EtaPower: return "etapower";
    case Construction::FrickeSym: return "fricke";
    case Construction::FormalRoot: return "root";
    case Construction::CoeffFile: return "file";
    }
    return "?";
}

namespace {

long parse_long(const std::string &s, const std::string &ctx)
{
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception &) {
    }
    fail(Errc::Malformed, "expected an integer, got '" + s + "' in " + ctx);
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

long exponent_for(long N)
{
    if (N < 2 || 24 % (N - 1) != 0)
        fail(Errc::Malformed, "N - 1 must divide 24, got N = " + std::to_string(N));
    return 24 / (N - 1);
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(Errc::FileError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// N^{12/(N-1)}, which must be an integer.
mpz_class fricke_constant(long N)
{
    long num = 12, den = N - 1;
    const long g = std::gcd(num, den);
    num /= g;
    den /= g;
    mpz_class x;
    mpz_ui_pow_ui(x.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(num));
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(den)) == 0)
        fail(Errc::Malformed, "N^{12/(N-1)} is irrational for N = " + std::to_string(N));
    return r;
}

EtaQuotient inverse(const EtaQuotient &eq)
{
    EtaQuotient r = eq;
    for (auto &t : r.terms)
        t.second = -t.second;
    return r;
}

// g with g^h = s and g_0 = 1, for s_0 = 1, on [0, len).
std::vector<mpz_class> integral_root(const LaurentSeries &s, long h, long len, const std::string &what)
{
    std::vector<mpz_class> g(static_cast<std::size_t>(len));
    g[0] = 1;
    mpz_class acc, t;
    for (long n = 1; n < len; ++n) {
        acc = 0;
        for (long k = 1; k <= n; ++k) {
            const mpz_class &sk = s.numerator(k);
            if (sk == 0)
                continue;
            t = sk * g[static_cast<std::size_t>(n - k)];
            t *= (k - h * (n - k));
            acc += t;
        }
        const mpz_class d = h * n;
        if (!mpz_divisible_p(acc.get_mpz_t(), d.get_mpz_t()))
            fail(Errc::RootMismatch, what + ": root coefficient at q^" + std::to_string(n) + " is not integral");
        mpz_divexact(g[static_cast<std::size_t>(n)].get_mpz_t(), acc.get_mpz_t(), d.get_mpz_t());
    }
    return g;
}

} // namespace

HauptmodulDef eta_power_def(const GroupSymbol &g, long N)
{
    const long r = exponent_for(N);
    HauptmodulDef d;
    d.symbol = g;
    d.kind = Construction::EtaPower;
    d.N = N;
    d.eta.terms = {{1, r}, {N, -r}};
    return d;
}

HauptmodulDef fricke_sym_def(const GroupSymbol &g, long N)
{
    HauptmodulDef d = eta_power_def(g, N);
    d.kind = Construction::FrickeSym;
    fricke_constant(N);
    return d;
}

LaurentSeries normalise_hauptmodul(const LaurentSeries &f, const std::string &what)
{
    if (f.low() > -1 || f.high() <= 0)
        fail(Errc::InvariantViolation, what + ": expansion does not reach q^0");
    for (long n = f.low(); n < -1; ++n)
        if (f.coeff(n) != 0)
            fail(Errc::InvariantViolation, what + ": pole of order above one");
    if (f.coeff(-1) != 1)
        fail(Errc::InvariantViolation, what + ": leading coefficient is not 1");
    if (!f.integral())
        fail(Errc::InvariantViolation, what + ": non-integral coefficients");
    LaurentSeries g = sub(f, LaurentSeries::constant(f.coeff(0)));
    std::vector<mpz_class> nums(g.numerators().begin() + (-1 - g.low()), g.numerators().end());
    return LaurentSeries::from_integers(-1, std::move(nums), false);
}

std::optional<long> support_violation(const LaurentSeries &f, long h)
{
    if (h <= 1)
        return std::nullopt;
    for (long k = f.low(); k < f.high(); ++k)
        if (((k + 1) % h + h) % h != 0 && f.numerator(k) != 0)
            return k;
    return std::nullopt;
}

Catalog::Catalog(const Catalog &o)
{
    std::lock_guard<std::mutex> lock(o.mutex_);
    defs_ = o.defs_;
    cache_ = o.cache_;
}

Catalog &Catalog::operator=(const Catalog &o)
{
    if (this == &o)
        return *this;
    std::scoped_lock lock(mutex_, o.mutex_);
    defs_ = o.defs_;
    cache_ = o.cache_;
    return *this;
}

void Catalog::insert(HauptmodulDef def)
{
    const std::string key = def.symbol.str();
    if (!defs_.emplace(key, std::move(def)).second)
        fail(Errc::DuplicateSymbol, "symbol " + key + " appears twice");
}

bool Catalog::contains(const std::string &symbol) const
{
    try {
        return defs_.count(canonical_symbol(symbol)) != 0;
    } catch (const Error &) {
        return false;
    }
}

const HauptmodulDef &Catalog::at(const std::string &symbol) const
{
    std::string key;
    try {
        key = canonical_symbol(symbol);
    } catch (const Error &e) {
        fail(Errc::MissingCatalogEntry, "no catalog entry for '" + symbol + "' (" + e.what() + ")");
    }
    auto it = defs_.find(key);
    if (it == defs_.end())
        fail(Errc::MissingCatalogEntry, "no catalog entry for " + key);
    return it->second;
}

std::vector<std::string> Catalog::symbols() const
{
    std::vector<std::string> out;
    for (const auto &[k, v] : defs_)
        out.push_back(k);
    return out;
}

LaurentSeries Catalog::hauptmodul(const std::string &symbol, long high) const
{
    if (high < 0)
        fail(Errc::EmptyWindow, "hauptmodul window must reach q^-1");
    const HauptmodulDef &def = at(symbol);
    const std::string key = def.symbol.str();
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end() && it->second.high() >= high)
            return it->second.truncate(high);
    }
    LaurentSeries f = build(def, high);
    std::lock_guard<std::mutex> lock(mutex_);
    auto &slot = cache_[key];
    if (slot.exact() || slot.high() < f.high())
        slot = f;
    return f.truncate(high);
}

LaurentSeries Catalog::build(const HauptmodulDef &def, long high) const
{
    const std::string what = def.symbol.str();
    LaurentSeries raw;
    switch (def.kind) {
    case Construction::J:
        raw = j_function(high);
        break;
    case Construction::EtaProduct:
    case Construction::EtaPower:
        raw = expand_eta_quotient(def.eta, high);
        break;
    case Construction::FrickeSym: {
        const LaurentSeries t = expand_eta_quotient(def.eta, high);
        const LaurentSeries inv = expand_eta_quotient(inverse(def.eta), high);
        raw = add(t, scale(inv, mpq_class(fricke_constant(def.N))));
        break;
    }
    case Construction::FormalRoot: {
        const long h = def.root_h;
        if (def.root_scale != h)
            fail(Errc::RootMismatch, what + ": the scaled base must have a pole of order " + std::to_string(h));
        // s = q^h (T_base(scale tau) + shift) needs exponents up to high.
        const long need = high - h + 1;
        const long base_high = (need - 1 + def.root_scale - 1) / def.root_scale + 1;
        const LaurentSeries base = hauptmodul(def.base, std::max(base_high, 1L));
        LaurentSeries s = add(v_m(base, def.root_scale), LaurentSeries::constant(mpq_class(def.root_shift)));
        s = s.shift(h);
        if (s.low() != 0 || s.high() < high + 1 || s.coeff(0) != 1)
            fail(Errc::RootMismatch, what + ": base does not start with q^-" + std::to_string(h));
        std::vector<mpz_class> g = integral_root(s, h, high + 1, what);
        raw = LaurentSeries::from_integers(-1, std::move(g), false);
        break;
    }
    case Construction::CoeffFile: {
        raw = from_text(def.file_text);
        if (raw.high() < high)
            fail(Errc::PrecisionExhausted, what + ": coefficient file " + def.file + " stops at q^" +
                                               std::to_string(raw.high() - 1) + ", need q^" +
                                               std::to_string(high - 1));
        raw = raw.truncate(high);
        break;
    }
    }
    LaurentSeries f = normalise_hauptmodul(raw, what);
    if (def.kind == Construction::EtaProduct || def.kind == Construction::FormalRoot) {
        if (auto k = support_violation(f, def.symbol.h))
            fail(Errc::InvariantViolation,
                 what + ": nonzero coefficient at q^" + std::to_string(*k) + " breaks the n|h support rule");
    }
    return f;
}

Catalog parse_catalog(const std::string &text, const std::string &base_dir)
{
    Catalog cat;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        const std::string ctx = "catalog line " + std::to_string(lineno);
        const auto fields = split(line, '\t');
        std::string kind, payload;
        if (fields.size() == 3) {
            kind = fields[1];
            payload = fields[2];
        } else if (fields.size() == 2) {
            const auto colon = fields[1].find(':');
            kind = fields[1].substr(0, colon);
            if (colon != std::string::npos)
                payload = fields[1].substr(colon + 1);
        } else {
            fail(Errc::Malformed, ctx + ": expected symbol<TAB>kind<TAB>payload");
        }
        GroupSymbol g;
        try {
            g = parse_symbol(fields[0]);
        } catch (const Error &e) {
            fail(Errc::Malformed, ctx + ": " + e.what());
        }
        HauptmodulDef def;
        if (kind == "j") {
            def.symbol = g;
            def.kind = Construction::J;
        } else if (kind == "eta") {
            def.symbol = g;
            def.kind = Construction::EtaProduct;
            def.eta = parse_eta_quotient(payload);
            if (def.eta.terms.empty())
                fail(Errc::Malformed, ctx + ": empty eta quotient");
        } else if (kind == "etapower") {
            def = eta_power_def(g, parse_long(payload, ctx));
        } else if (kind == "fricke") {
            def = fricke_sym_def(g, parse_long(payload, ctx));
        } else if (kind == "root") {
            const auto parts = split(payload, ':');
            if (parts.size() != 3 && parts.size() != 4)
                fail(Errc::Malformed, ctx + ": root payload is h:base:scale[:shift]");
            def.symbol = g;
            def.kind = Construction::FormalRoot;
            def.root_h = parse_long(parts[0], ctx);
            def.base = parts[1];
            def.root_scale = parse_long(parts[2], ctx);
            if (parts.size() == 4 && def.root_shift.set_str(parts[3], 10) != 0)
                fail(Errc::Malformed, ctx + ": bad root shift '" + parts[3] + "'");
            if (def.root_h < 1 || def.root_scale < 1)
                fail(Errc::Malformed, ctx + ": root degree and scale must be positive");
        } else if (kind == "file") {
            if (payload.empty())
                fail(Errc::Malformed, ctx + ": file payload is empty");
            def.symbol = g;
            def.kind = Construction::CoeffFile;
            def.file = payload;
            if (base_dir.empty()) {
                auto b = bundled::file(payload);
                if (!b)
                    fail(Errc::FileError, ctx + ": no bundled file " + payload);
                def.file_text = std::string(*b);
            } else {
                def.file_text = read_file((std::filesystem::path(base_dir) / payload).string());
            }
            // A coefficient file must say where it came from.
            if (def.file_text.find("# source:") == std::string::npos)
                fail(Errc::Malformed, ctx + ": coefficient file " + payload + " lacks a '# source:' line");
        } else {
            fail(Errc::Malformed, ctx + ": unknown kind '" + kind + "'");
        }
        cat.insert(std::move(def));
    }
    // Root bases must resolve inside this catalog.
    for (const auto &s : cat.symbols()) {
        const auto &d = cat.at(s);
        if (d.kind == Construction::FormalRoot && !cat.contains(d.base))
            fail(Errc::Malformed, "root entry " + s + " refers to missing base " + d.base);
    }
    return cat;
}

Catalog load_catalog(const std::string &path)
{
    const std::string text = read_file(path);
    std::string dir = std::filesystem::path(path).parent_path().string();
    if (dir.empty())
        dir = ".";
    return parse_catalog(text, dir);
}

const Catalog &bundled_catalog()
{
    static const Catalog cat = [] {
        auto text = bundled::file("catalog.tsv");
        if (!text)
            fail(Errc::FileError, "bundled catalog missing");
        return parse_catalog(std::string(*text), "");
    }();
    return cat;
}

} // namespace haupt
