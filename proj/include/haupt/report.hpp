#ifndef HAUPT_REPORT_HPP
#define HAUPT_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "haupt/qseries.hpp"

namespace haupt {

enum class Verdict { Pass, Fail, Indeterminate };

const char *verdict_name(Verdict v);

struct CheckReport
{
    std::string name;
    nlohmann::json params = nlohmann::json::object();
    long window = 0;
    Verdict verdict = Verdict::Indeterminate;
    std::optional<long> witness;
    std::optional<std::vector<ValuationP>> valuations;
    nlohmann::json detail; // null when absent
    std::string error;     // set when the check aborted with an Error

    bool passed() const { return verdict == Verdict::Pass; }
};

// A number, or the string "inf".
nlohmann::json to_json(const ValuationP &v);
nlohmann::json to_json(const CheckReport &r);

// Verdict of a whole run: any fail wins, then indeterminate.
Verdict aggregate(const std::vector<CheckReport> &reports);

} // namespace haupt

#endif
