#pragma once

#include <string>

#include <json.hpp>

#include "coarsekit/profiles.hpp"
#include "coarsekit/report.hpp"
#include "coarsekit/space.hpp"

namespace coarsekit {

using ordered_json = nlohmann::ordered_json;

// Numbers with "inf" standing in for an infinite value.
ordered_json extended_to_json(double v);
double extended_from_json(const ordered_json& j);

// Spaces serialize by construction kind and parse back to an equal space;
// shortest-path graph input materializes as a distance table.
ordered_json space_to_json(const SpacePtr& X);
SpacePtr space_from_json(const ordered_json& j);

// { "n": capacity, "points": sorted indices }.
ordered_json point_set_to_json(const PointSet& s);
PointSet point_set_from_json(const ordered_json& j);

// A single step function as [[threshold, value], ...].
ordered_json profile_fn_to_json(const ProfileFn& f);
ProfileFn profile_fn_from_json(const ordered_json& j);

ordered_json profile_to_json(const Profile& p);
Profile profile_from_json(const ordered_json& j);

ordered_json schedule_to_json(const Schedule& s);

// Reports carry the construction name under "type" plus everything needed
// to re-run the verification: the space, named scales, sets, certificates,
// measures, and verdicts.
ordered_json report_to_json(const Report& rep);
Report report_from_json(const ordered_json& j);

// Re-runs the report's construction from its embedded inputs and returns
// the fresh report. A construction that no longer runs at all comes back as
// a single failed "construction_reruns" verdict.
Report reverify(const Report& rep, Exec ex = Exec::Serial);

// Exact comparison of every recorded field; empty string when identical,
// otherwise a description of the first difference.
std::string report_diff(const Report& a, const Report& b);

inline bool reports_match(const Report& a, const Report& b) {
    return report_diff(a, b).empty();
}

}  // namespace coarsekit
