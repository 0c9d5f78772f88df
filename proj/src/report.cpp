#include "haupt/report.hpp"

namespace haupt {

const char *verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

nlohmann::json to_json(const ValuationP &v)
{
    if (v.infinite)
        return "inf";
    return v.value;
}

nlohmann::json to_json(const CheckReport &r)
{
    nlohmann::json j;
    j["name"] = r.name;
    j["params"] = r.params;
    j["window"] = r.window;
    j["verdict"] = verdict_name(r.verdict);
    j["witness"] = r.witness ? nlohmann::json(*r.witness) : nlohmann::json(nullptr);
    if (r.valuations) {
        nlohmann::json vs = nlohmann::json::array();
        for (const auto &v : *r.valuations)
            vs.push_back(to_json(v));
        j["valuations"] = vs;
    }
    if (!r.detail.is_null())
        j["detail"] = r.detail;
    if (!r.error.empty())
        j["error"] = r.error;
    return j;
}

Verdict aggregate(const std::vector<CheckReport> &reports)
{
    bool indeterminate = false;
    for (const auto &r : reports) {
        if (r.verdict == Verdict::Fail)
            return Verdict::Fail;
        if (r.verdict == Verdict::Indeterminate)
            indeterminate = true;
    }
    return indeterminate ? Verdict::Indeterminate : Verdict::Pass;
}

} // namespace haupt
