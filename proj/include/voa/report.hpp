#pragma once

#include <map>
#include <string>
#include <vector>

#include "voa/errors.hpp"
#include "voa/rational.hpp"

namespace voa {

/// One verified identity. `anchor` is the identity itself in the expression
/// grammar (or a short formula), so reports are self-describing; `residual`
/// holds the canonical difference when the check fails; `flagged` marks items
/// that pass only under a recorded source-text correction.
struct CheckItem {
    std::string label;
    std::string anchor;
    enum class Status { Pass, Fail, Flagged } status = Status::Pass;
    std::string residual;
    std::string note;

    static CheckItem pass(std::string label, std::string anchor, std::string note = "") {
        return {std::move(label), std::move(anchor), Status::Pass, "", std::move(note)};
    }
    static CheckItem fail(std::string label, std::string anchor, std::string residual,
                          std::string note = "") {
        return {std::move(label), std::move(anchor), Status::Fail, std::move(residual),
                std::move(note)};
    }
    static CheckItem flagged(std::string label, std::string anchor, std::string note) {
        return {std::move(label), std::move(anchor), Status::Flagged, "", std::move(note)};
    }
    static CheckItem of(bool ok, std::string label, std::string anchor,
                        std::string residual = "", std::string note = "") {
        return ok ? pass(std::move(label), std::move(anchor), std::move(note))
                  : fail(std::move(label), std::move(anchor), std::move(residual),
                         std::move(note));
    }
};

struct SuiteConfig {
    int order = 10;       // q-series truncation order
    int max_weight = 4;   // highest-weight checks bound
    int jobs = 1;         // parallel items
    std::string check;    // char sub-check filter
    std::map<std::string, Rat> params; // optional specialization
};

struct SuiteReport {
    std::string suite;
    std::string presentation_hash;
    std::map<std::string, std::string> config;
    std::vector<CheckItem> items;
    long elapsed_ms = 0;

    bool passed() const {
        for (const auto& i : items)
            if (i.status == CheckItem::Status::Fail) return false;
        return true;
    }
};

/// Known suite names, in execution order for `all`.
const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

std::string render_text(const SuiteReport& report);
std::string render_json(const SuiteReport& report);

} // namespace voa
