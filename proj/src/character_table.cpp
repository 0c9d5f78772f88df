#include <fstream>
#include <numeric>
#include <sstream>

#include "haupt/bundled.hpp"
#include "haupt/error.hpp"
#include "haupt/moonshine.hpp"

namespace haupt {

namespace {

using nlohmann::json;

mpq_class rational(const json &v, const std::string &ctx)
{
    mpq_class q;
    if (v.is_number_integer()) {
        q = mpq_class(mpz_class(std::to_string(v.get<long long>())));
    } else if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.empty() || q.set_str(s, 10) != 0)
            fail(Errc::Malformed, ctx + ": bad rational '" + s + "'");
        if (q.get_den() == 0)
            fail(Errc::Malformed, ctx + ": zero denominator");
        q.canonicalize();
    } else {
        fail(Errc::Malformed, ctx + ": expected an integer or a rational string");
    }
    return q;
}

long positive(const json &j, const char *key, const std::string &ctx)
{
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long>() < 1)
        fail(Errc::Malformed, ctx + ": '" + key + "' must be a positive integer");
    return j[key].get<long>();
}

} // namespace

std::size_t CharacterTable::index(const std::string &class_name) const
{
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].name == class_name)
            return i;
    fail(Errc::Malformed, "unknown class '" + class_name + "'");
}

std::size_t CharacterTable::identity() const
{
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].order == 1)
            return i;
    fail(Errc::Malformed, "no identity class");
}

std::size_t CharacterTable::power_map(std::size_t c, long m) const
{
    const long ord = classes.at(c).order;
    const long r = ((m % ord) + ord) % ord;
    if (r == 0)
        return identity();
    if (r == 1)
        return c;
    auto entry = [&](long k) -> std::optional<std::size_t> {
        for (const auto &[e, target] : power_entries.at(c))
            if (((e % ord) + ord) % ord == k)
                return target;
        return std::nullopt;
    };
    if (auto t = entry(r))
        return *t;
    // g^{ab} = (g^a)^b through a listed prime power a.
    for (long l = 2; l < r; ++l)
        if (r % l == 0 && is_prime(l))
            if (auto t = entry(l))
                return power_map(*t, r / l);
    // The order of g^r pins the class when only one class has that order.
    const long want = ord / std::gcd(ord, r);
    std::optional<std::size_t> only;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].order == want) {
            if (only)
                fail(Errc::PowerMapInconsistent,
                     "power map of " + classes[c].name + " at " + std::to_string(m) + " is not determined");
            only = i;
        }
    if (!only)
        fail(Errc::PowerMapInconsistent, "no class of order " + std::to_string(want) + " for " + classes[c].name +
                                             "^" + std::to_string(m));
    return *only;
}

void CharacterTable::validate() const
{
    if (classes.empty())
        fail(Errc::Malformed, "group with no classes");
    long sum = 0, identities = 0;
    for (const auto &c : classes) {
        sum += c.size;
        if (c.order == 1) {
            ++identities;
            if (c.size != 1)
                fail(Errc::Malformed, "identity class must have size 1");
        }
        if (group_order % c.size != 0 || group_order % c.order != 0)
            fail(Errc::Malformed, "class " + c.name + " has size or order not dividing the group order");
    }
    if (sum != group_order)
        fail(Errc::Malformed, "class sizes sum to " + std::to_string(sum) + ", not " + std::to_string(group_order));
    if (identities != 1)
        fail(Errc::Malformed, "need exactly one identity class");
    if (characters.size() != classes.size())
        fail(Errc::Malformed, "character table is not square");
    for (const auto &row : characters)
        if (row.size() != classes.size())
            fail(Errc::Malformed, "character row of the wrong length");
    for (std::size_t i = 0; i < characters.size(); ++i)
        for (std::size_t j = i; j < characters.size(); ++j) {
            QuadNum s;
            for (std::size_t c = 0; c < classes.size(); ++c)
                s = s + QuadNum(classes[c].size) * characters[i][c] * characters[j][c].conj();
            const QuadNum want(i == j ? group_order : 0);
            if (!(s == want))
                fail(Errc::OrthogonalityFailure, "rows " + std::to_string(i) + " and " + std::to_string(j) +
                                                     " pair to " + s.str());
        }
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const long ord = classes[c].order;
        for (const auto &[m, target] : power_entries[c]) {
            const long want = ord / std::gcd(ord, m);
            if (classes[target].order != want)
                fail(Errc::PowerMapInconsistent, classes[c].name + "^" + std::to_string(m) + " = " +
                                                     classes[target].name + " has the wrong order");
        }
        for (long m = 0; m < ord; ++m) {
            const std::size_t t = power_map(c, m);
            if (classes[t].order != ord / std::gcd(ord, m))
                fail(Errc::PowerMapInconsistent, classes[c].name + "^" + std::to_string(m) + " has the wrong order");
            // values on g^m are Galois images of values on g, so sizes agree
            if (std::gcd(ord, m) == 1 && classes[t].size != classes[c].size)
                fail(Errc::PowerMapInconsistent, classes[c].name + "^" + std::to_string(m) + " changes class size");
        }
    }
}

CharacterTable parse_group(const json &j)
{
    if (!j.is_object())
        fail(Errc::Malformed, "group file must hold a JSON object");
    CharacterTable t;
    t.name = j.value("name", std::string("G"));
    t.group_order = positive(j, "order", "group");
    t.quad_d = j.contains("quad_d") ? j["quad_d"].get<long>() : 1;
    if (!is_squarefree(t.quad_d))
        fail(Errc::Malformed, "quad_d must be squarefree");
    if (!j.contains("classes") || !j["classes"].is_array())
        fail(Errc::Malformed, "group needs a 'classes' array");
    for (const auto &c : j["classes"]) {
        ClassInfo ci;
        if (!c.contains("name") || !c["name"].is_string())
            fail(Errc::Malformed, "class without a name");
        ci.name = c["name"].get<std::string>();
        ci.size = positive(c, "size", "class " + ci.name);
        ci.order = positive(c, "order", "class " + ci.name);
        for (const auto &o : t.classes)
            if (o.name == ci.name)
                fail(Errc::Malformed, "duplicate class " + ci.name);
        t.classes.push_back(ci);
    }
    if (!j.contains("characters") || !j["characters"].is_array())
        fail(Errc::Malformed, "group needs a 'characters' array");
    for (const auto &row : j["characters"]) {
        if (!row.is_array())
            fail(Errc::Malformed, "character rows must be arrays");
        std::vector<QuadNum> vals;
        for (const auto &v : row) {
            const std::string ctx = "character " + std::to_string(t.characters.size());
            if (v.is_array()) {
                if (v.size() != 2)
                    fail(Errc::Malformed, ctx + ": values are [a, b] pairs");
                vals.emplace_back(rational(v[0], ctx), rational(v[1], ctx), t.quad_d);
            } else {
                vals.emplace_back(rational(v, ctx), 0, t.quad_d);
            }
        }
        t.characters.push_back(std::move(vals));
    }
    t.power_entries.resize(t.classes.size());
    if (j.contains("power_map")) {
        if (!j["power_map"].is_object())
            fail(Errc::Malformed, "'power_map' must be an object");
        for (const auto &[cname, entries] : j["power_map"].items()) {
            const std::size_t c = t.index(cname);
            if (!entries.is_object())
                fail(Errc::Malformed, "power map of " + cname + " must be an object");
            for (const auto &[ms, target] : entries.items()) {
                long m = 0;
                try {
                    m = std::stol(ms);
                } catch (const std::exception &) {
                    fail(Errc::Malformed, "bad power '" + ms + "' for " + cname);
                }
                if (!target.is_string())
                    fail(Errc::Malformed, "power map targets are class names");
                t.power_entries[c][m] = t.index(target.get<std::string>());
            }
        }
    }
    if (j.contains("assignment")) {
        for (const auto &[cname, sym] : j["assignment"].items()) {
            t.index(cname);
            if (!sym.is_string())
                fail(Errc::Malformed, "assignment values are symbols");
            t.assignment[cname] = sym.get<std::string>();
        }
    }
    t.validate();
    return t;
}

CharacterTable parse_group_text(const std::string &text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        fail(Errc::Malformed, std::string("group file is not valid JSON: ") + e.what());
    }
    return parse_group(j);
}

CharacterTable load_group(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        // A bare name may refer to a bundled table.
        if (auto b = bundled::file(path))
            return parse_group_text(std::string(*b));
        fail(Errc::FileError, "cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_group_text(ss.str());
}

CharacterTable bundled_a5()
{
    auto b = bundled::file("a5.json");
    if (!b)
        fail(Errc::FileError, "bundled a5.json missing");
    return parse_group_text(std::string(*b));
}

} // namespace haupt
