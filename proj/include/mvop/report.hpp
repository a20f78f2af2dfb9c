#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mvop {

enum class Status { Pass, Fail, Skip };

inline std::string to_string(Status s)
{
    switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
    }
    return "?";
}

struct Check {
    std::string name;
    Status status = Status::Pass;
    std::string witness;
    std::optional<std::size_t> first_failure_n;
};

struct Report {
    std::vector<Check> checks;
    std::vector<std::string> notes;

    Check& add(std::string name, bool ok, std::string witness = {}, std::optional<std::size_t> first_failure = {})
    {
        checks.push_back({std::move(name), ok ? Status::Pass : Status::Fail, std::move(witness), first_failure});
        return checks.back();
    }
    void skip(std::string name, std::string why) { checks.push_back({std::move(name), Status::Skip, std::move(why), {}}); }

    void merge(const Report& other, const std::string& prefix = {})
    {
        for (auto c : other.checks) {
            c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
        for (const auto& n : other.notes)
            if (std::find(notes.begin(), notes.end(), n) == notes.end())
                notes.push_back(n);
    }

    bool all_pass() const
    {
        for (const auto& c : checks)
            if (c.status != Status::Pass)
                return false;
        return true;
    }
    std::size_t count(Status s) const
    {
        std::size_t k = 0;
        for (const auto& c : checks)
            k += c.status == s;
        return k;
    }
};

} // namespace mvop
