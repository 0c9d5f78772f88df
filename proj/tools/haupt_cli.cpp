#include <atomic>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "haupt/annihilation.hpp"
#include "haupt/catalog.hpp"
#include "haupt/error.hpp"
#include "haupt/moonshine.hpp"

using namespace haupt;
using nlohmann::json;

namespace {

constexpr const char *kVersion = "0.1.0";

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kIndeterminate = 3 };

struct Options
{
    std::string catalog;
    std::string format = "json";
    int jobs = 1;

    // per-suite
    std::vector<long> p;
    long q = 0;
    long r = -1;
    long window = 0;
    long prec = 10;
    int iters = 3;
    int n_max = 0;
    long alpha_max = 2;
    int m = -1;
    bool all = false;
    std::vector<std::string> symbols;
    std::string which_case;
    std::string alpha;
    std::string group = "a5.json";
    std::vector<std::string> candidates;
    unsigned long seed = 20240611;
};

bool precision_error(Errc c) { return c == Errc::PrecisionExhausted || c == Errc::EmptyWindow; }

int error_exit(Errc c)
{
    if (precision_error(c))
        return kIndeterminate;
    return kUsage;
}

const Catalog &catalog_for(const Options &o)
{
    static Catalog loaded;
    static bool have = false;
    std::string path = o.catalog;
    if (path.empty())
        if (const char *env = std::getenv("HAUPT_CATALOG"))
            path = env;
    if (path.empty())
        return bundled_catalog();
    if (!have) {
        loaded = load_catalog(path);
        have = true;
    }
    return loaded;
}

using Task = std::function<CheckReport()>;

// Runs tasks on up to `jobs` threads; results keep task order. Precision
// errors turn into indeterminate reports, anything else is rethrown.
std::vector<CheckReport> run(const std::vector<Task> &tasks, int jobs)
{
    std::vector<CheckReport> out(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < tasks.size();) {
            try {
                out[i] = tasks[i]();
            } catch (const Error &e) {
                if (precision_error(e.code())) {
                    out[i].name = "aborted";
                    out[i].verdict = Verdict::Indeterminate;
                    out[i].error = e.what();
                } else {
                    errors[i] = std::current_exception();
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

json config_json(const Options &o, const std::string &command)
{
    return {{"command", command},
            {"catalog", o.catalog.empty() ? (std::getenv("HAUPT_CATALOG") ? std::getenv("HAUPT_CATALOG") : "bundled")
                                          : o.catalog},
            {"format", o.format},
            {"jobs", o.jobs},
            {"seed", o.seed},
            {"default_windows",
             {{"congruences", 100}, {"compression", 2500}, {"lehner", 600}, {"rates", 100}, {"cycle", 50},
              {"weak", 3500}, {"moonshine", 200}, {"orderbound", 500}, {"valuations", 100}}}};
}

int emit(const Options &o, const std::string &command, const std::vector<CheckReport> &reports)
{
    if (o.format == "tsv") {
        for (const auto &r : reports) {
            if (r.valuations) {
                const std::string sym = r.params.value("symbol", std::string("1"));
                const long p = r.params.value("p", 0L);
                for (std::size_t n = 0; n < r.valuations->size(); ++n)
                    std::cout << sym << '\t' << p << '\t' << n + 1 << '\t' << (*r.valuations)[n].str() << '\n';
            } else {
                std::cout << r.name << '\t' << verdict_name(r.verdict) << '\t'
                          << (r.witness ? std::to_string(*r.witness) : "-") << '\n';
            }
        }
    } else {
        json env = {{"tool", "haupt"}, {"version", kVersion}, {"config", config_json(o, command)}};
        env["checks"] = json::array();
        for (const auto &r : reports)
            env["checks"].push_back(to_json(r));
        std::cout << env.dump(2) << '\n';
    }
    switch (aggregate(reports)) {
    case Verdict::Pass: return kPass;
    case Verdict::Fail: return kFail;
    case Verdict::Indeterminate: return kIndeterminate;
    }
    return kFail;
}

long or_default(long v, long d) { return v > 0 ? v : d; }

std::vector<long> primes_or(const Options &o, std::vector<long> d) { return o.p.empty() ? d : o.p; }

// suites

std::vector<Task> congruence_tasks(const Options &o, const Catalog &cat)
{
    std::vector<Task> t;
    const long window = or_default(o.window, 100);
    for (long p : primes_or(o, {2, 3, 5, 7, 11})) {
        t.push_back([&cat, p, amax = o.alpha_max, window] {
            return check_congruence_family(cat, p, lehner_atkin_exponent(p), amax, window);
        });
    }
    return t;
}

struct CompressionJob
{
    const char *which;
    const char *symbol;
    long p;
};

const std::vector<CompressionJob> &compression_suite()
{
    static const std::vector<CompressionJob> jobs{
        {"a", "2", 2},       {"a", "3", 3},     {"a", "5", 5},       {"a", "7", 7},     {"b", "2", 2},
        {"b", "3", 3},       {"b", "6|3", 2},   {"b", "6+3", 2},     {"b", "6+2", 3},   {"b", "10+5", 2},
        {"c", "4+", 2},      {"c", "9+", 3},    {"d", "4+", 2},      {"d", "9+", 3},    {"conway", "2+", 2},
        {"conway", "3+", 3}, {"conway", "5+", 5}, {"conway", "7+", 7},
    };
    return jobs;
}

std::vector<Task> compression_tasks(const Options &o, const Catalog &cat)
{
    std::vector<Task> t;
    const long window = or_default(o.window, 2500);
    if (o.all) {
        for (const auto &j : compression_suite())
            t.push_back([&cat, j, window] {
                return check_compression(cat, parse_compression_case(j.which), parse_symbol(j.symbol), j.p, window);
            });
        return t;
    }
    if (o.symbols.empty() || o.p.empty() || o.which_case.empty())
        fail(Errc::Malformed, "check compression needs --symbol, --p and --case (or --all)");
    const CompressionCase c = parse_compression_case(o.which_case);
    for (const auto &s : o.symbols)
        for (long p : o.p)
            t.push_back([&cat, c, s, p, window] { return check_compression(cat, c, parse_symbol(s), p, window); });
    return t;
}

std::vector<Task> lehner_tasks(const Options &o, const Catalog &cat)
{
    std::vector<Task> t;
    const long window = or_default(o.window, 600);
    std::vector<const LehnerDatum *> rows;
    if (o.all || o.symbols.empty())
        for (const auto &d : lehner_data())
            rows.push_back(&d);
    else
        for (const auto &s : o.symbols)
            rows.push_back(&lehner_datum(s));
    for (const auto *d : rows)
        t.push_back([&cat, d, window] { return check_lehner(cat, *d, window); });
    return t;
}

mpq_class parse_alpha(const std::string &s)
{
    mpq_class a;
    if (a.set_str(s, 10) != 0 || a.get_den() == 0)
        fail(Errc::Malformed, "bad --alpha '" + s + "'");
    a.canonicalize();
    return a;
}

std::vector<Task> rate_tasks(const Options &o, const Catalog &cat)
{
    std::vector<Task> t;
    const long window = or_default(o.window, 100);
    const int n_max = o.n_max > 0 ? o.n_max : 5;
    if (o.m >= 0) {
        if (o.symbols.empty() || o.p.empty())
            fail(Errc::Malformed, "--m needs --symbol and --p");
        for (const auto &s : o.symbols)
            for (long p : o.p)
                t.push_back([&cat, s, p, m = o.m, n_max, window] {
                    return check_increment(cat, s, p, m, n_max, window);
                });
        return t;
    }
    if (o.all || o.symbols.empty()) {
        for (const auto &d : lehner_data())
            t.push_back([&cat, &d, n_max, window] {
                return check_rate_bound(cat, d.symbol.str(), d.p, d.alpha(), n_max, window);
            });
        return t;
    }
    for (const auto &s : o.symbols) {
        long p = 0;
        mpq_class alpha;
        if (!o.alpha.empty() && !o.p.empty()) {
            p = o.p.front();
            alpha = parse_alpha(o.alpha);
        } else {
            const auto &d = lehner_datum(s);
            p = d.p;
            alpha = d.alpha();
        }
        t.push_back([&cat, s, p, alpha, n_max, window] { return check_rate_bound(cat, s, p, alpha, n_max, window); });
    }
    return t;
}

std::vector<Task> cycle_tasks(const Options &o, const Catalog &cat)
{
    std::vector<Task> t;
    const long window = or_default(o.window, 50);
    const int n_max = o.n_max > 0 ? o.n_max : 2;
    const auto symbols = o.symbols.empty() ? std::vector<std::string>{"1"} : o.symbols;
    for (const auto &s : symbols)
        for (long p : primes_or(o, {13}))
            t.push_back([&cat, s, p, n_max, window] { return detect_mod_p_cycle(cat, s, p, n_max, window); });
    return t;
}

std::vector<Task> weak_tasks(const Options &o, const Catalog &cat)
{
    std::vector<Task> t;
    const long window = or_default(o.window, 3500);
    const int n_max = o.n_max > 0 ? o.n_max : 3;
    if (o.symbols.empty() || o.p.empty())
        fail(Errc::Malformed, "check weak needs --symbol and --p");
    for (const auto &s : o.symbols)
        for (long p : o.p)
            t.push_back([&cat, s, p, n_max, window] { return check_weak_annihilation(cat, s, p, n_max, window); });
    return t;
}

std::vector<CheckReport> moonshine_reports(const Options &o, const Catalog &cat)
{
    const CharacterTable table = load_group(o.group);
    const Assignment a = table_assignment(table);
    const long p = o.p.empty() ? 5 : o.p.front();
    const long high = or_default(o.window, 200);
    const int n_max = o.n_max > 0 ? o.n_max : 2;
    const MultiplicityReport rep = check_padic_moonshine(table, a, cat, p, high, n_max);
    auto checks = rep.checks();
    json series = json::array();
    for (std::size_t chi = 0; chi < rep.series.size(); ++chi) {
        json coeffs = json::array();
        for (long n = -1; n <= 4 && n < rep.series[chi].high(); ++n)
            coeffs.push_back(rep.series[chi].coeff(n).get_str());
        series.push_back(coeffs);
    }
    checks.back().detail["multiplicities_head"] = series;
    return checks;
}

std::vector<Task> orderbound_tasks(const Options &o, const Catalog &cat)
{
    if (o.q == 0 || o.r < 0)
        fail(Errc::Malformed, "check orderbound needs --q and --r");
    const long window = or_default(o.window, 500);
    return {[&cat, cands = o.candidates, q = o.q, r = o.r, window] {
        CheckReport rep;
        rep.name = "orderbound";
        rep.params = {{"candidates", cands}, {"q", q}, {"r", r}};
        rep.window = window;
        const Feasibility f = order_bound_feasible(cat, cands, q, r, window);
        rep.verdict = f.feasible ? Verdict::Pass : Verdict::Fail;
        if (!f.feasible)
            rep.witness = r;
        if (f.witness) {
            json w = json::array();
            for (const auto &x : *f.witness)
                w.push_back(x.get_str());
            rep.detail = {{"feasible", true}, {"coefficients", w}};
        } else {
            rep.detail = {{"feasible", false}};
        }
        return rep;
    }};
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Hauptmodul expansions, U_p valuations and congruence checks"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--catalog", o.catalog, "catalog file (default: HAUPT_CATALOG, then the bundled one)");
    auto *format = app.add_option("--format", o.format, "json or tsv; expand prints series text unless json is asked for")
                       ->check(CLI::IsMember({"json", "tsv"}));
    app.add_option("--jobs", o.jobs, "parallel checks")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "seed for randomised checks");

    std::string symbol;
    auto *expand = app.add_subcommand("expand", "print a normalised Hauptmodul");
    expand->add_option("symbol", symbol)->required();
    expand->add_option("--prec", o.prec, "coefficients through q^(prec-1)")->check(CLI::NonNegativeNumber);

    auto *vals = app.add_subcommand("valuations", "v_p(T|U_p^n) for n = 1..iters");
    vals->add_option("symbol", symbol)->required();
    vals->add_option("--p", o.p)->required()->expected(1);
    vals->add_option("--iters", o.iters)->check(CLI::NonNegativeNumber);
    vals->add_option("--window", o.window);

    auto *check = app.add_subcommand("check", "run a family of checks");
    std::string suite;
    check->add_option("suite", suite)
        ->required()
        ->check(CLI::IsMember({"congruences", "compression", "lehner", "rates", "cycle", "moonshine", "weak",
                               "orderbound"}));
    check->add_option("--p", o.p, "prime(s)")->delimiter(',');
    check->add_option("--q", o.q);
    check->add_option("--r", o.r);
    check->add_option("--window", o.window);
    check->add_option("--alpha-max", o.alpha_max);
    check->add_option("--alpha", o.alpha);
    check->add_option("--n-max", o.n_max);
    check->add_option("--m", o.m, "increment test lag (rates)");
    check->add_flag("--all", o.all);
    check->add_option("--symbol", o.symbols)->delimiter(',');
    check->add_option("--case", o.which_case);
    check->add_option("--group", o.group);
    check->add_option("--candidates", o.candidates)->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        const Catalog &cat = catalog_for(o);
        if (*expand) {
            const LaurentSeries f = cat.hauptmodul(symbol, o.prec);
            if (format->count() && o.format == "json") {
                json c = json::object();
                for (long n = f.low(); n < f.high(); ++n)
                    if (f.numerator(n) != 0)
                        c[std::to_string(n)] = f.numerator(n).get_str();
                std::cout << json{{"symbol", canonical_symbol(symbol)}, {"low", f.low()}, {"high", f.high()},
                                  {"coefficients", c}}
                                 .dump(2)
                          << '\n';
            } else {
                std::cout << to_text(f);
            }
            return kPass;
        }
        if (*vals) {
            CheckReport r;
            r.name = "valuations";
            r.params = {{"symbol", canonical_symbol(symbol)}, {"p", o.p.front()}, {"iters", o.iters}};
            r.window = or_default(o.window, 100);
            r.valuations = valuation_sequence(cat, symbol, o.p.front(), o.iters, r.window);
            r.verdict = Verdict::Pass;
            return emit(o, "valuations", {r});
        }
        std::vector<CheckReport> reports;
        if (suite == "congruences")
            reports = run(congruence_tasks(o, cat), o.jobs);
        else if (suite == "compression")
            reports = run(compression_tasks(o, cat), o.jobs);
        else if (suite == "lehner")
            reports = run(lehner_tasks(o, cat), o.jobs);
        else if (suite == "rates")
            reports = run(rate_tasks(o, cat), o.jobs);
        else if (suite == "cycle")
            reports = run(cycle_tasks(o, cat), o.jobs);
        else if (suite == "weak")
            reports = run(weak_tasks(o, cat), o.jobs);
        else if (suite == "orderbound")
            reports = run(orderbound_tasks(o, cat), o.jobs);
        else
            reports = moonshine_reports(o, cat);
        return emit(o, "check " + suite, reports);
    } catch (const Error &e) {
        std::cerr << "haupt: " << e.what() << '\n';
        return error_exit(e.code());
    }
}
