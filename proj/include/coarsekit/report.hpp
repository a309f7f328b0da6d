#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coarsekit/components.hpp"
#include "coarsekit/ext_real.hpp"
#include "coarsekit/point_set.hpp"
#include "coarsekit/space.hpp"

namespace coarsekit {

// Verification record for one construction run: named scales, the subsets
// involved, per-set certificates, measured quantities, and named pass/fail
// verdicts. Everything needed to re-verify the run is embedded, and insertion
// order is preserved so serialization is deterministic.
struct Report {
    std::string construction;
    SpacePtr space;
    std::vector<std::pair<std::string, double>> scales;
    std::vector<std::pair<std::string, PointSet>> sets;
    std::vector<std::pair<std::string, Dim0Certificate>> certs;
    std::vector<std::pair<std::string, ExtReal>> measures;
    std::vector<std::pair<std::string, bool>> verdicts;

    void add_scale(std::string name, double v) {
        scales.emplace_back(std::move(name), v);
    }
    void add_set(std::string name, PointSet s) {
        sets.emplace_back(std::move(name), std::move(s));
    }
    void add_cert(std::string name, Dim0Certificate c) {
        certs.emplace_back(std::move(name), std::move(c));
    }
    void add_measure(std::string name, ExtReal v) {
        measures.emplace_back(std::move(name), std::move(v));
    }
    void add_verdict(std::string name, bool ok) {
        verdicts.emplace_back(std::move(name), ok);
    }

    bool pass() const {
        for (const auto& [name, ok] : verdicts)
            if (!ok) return false;
        return true;
    }
    std::string first_failure() const {
        for (const auto& [name, ok] : verdicts)
            if (!ok) return name;
        return {};
    }
    const bool* verdict(const std::string& name) const {
        for (const auto& [k, v] : verdicts)
            if (k == name) return &v;
        return nullptr;
    }
};

}  // namespace coarsekit
