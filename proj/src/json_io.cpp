#include "coarsekit/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "coarsekit/decomposition.hpp"
#include "coarsekit/errors.hpp"

namespace coarsekit {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ValidationError(what); }

const ordered_json& field(const ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
    return *it;
}

std::string kind_name(MetricKind k) {
    switch (k) {
        case MetricKind::Table: return "table";
        case MetricKind::Interval: return "interval";
        case MetricKind::Grid: return "grid";
        case MetricKind::DisjointUnion: return "disjoint_union";
        case MetricKind::Product: return "product";
        case MetricKind::WeightedProduct: return "weighted_product";
        case MetricKind::Subspace: return "subspace";
    }
    bad("unknown metric kind");
}

std::string norm_name(Norm n) { return n == Norm::L1 ? "l1" : "sup"; }

Norm norm_from(const ordered_json& j) {
    std::string s = j.get<std::string>();
    if (s == "l1") return Norm::L1;
    if (s == "sup") return Norm::Sup;
    bad("norm must be \"l1\" or \"sup\"");
}

}  // namespace

ordered_json extended_to_json(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}

double extended_from_json(const ordered_json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInfinity;
        bad("numeric field holds an unrecognized string");
    }
    if (!j.is_number()) bad("expected a number or \"inf\"");
    return j.get<double>();
}

ordered_json space_to_json(const SpacePtr& X) {
    ordered_json j;
    j["name"] = X->name();
    j["points"] = X->labels();
    ordered_json m;
    m["kind"] = kind_name(X->kind());
    switch (X->kind()) {
        case MetricKind::Table: {
            ordered_json vals = ordered_json::array();
            for (double v : X->table()) vals.push_back(extended_to_json(v));
            m["values"] = std::move(vals);
            break;
        }
        case MetricKind::Interval:
            m["n"] = X->n();
            m["scale"] = X->scale();
            break;
        case MetricKind::Grid:
            m["dims"] = X->dims();
            m["norm"] = norm_name(X->norm());
            m["scale"] = X->scale();
            break;
        case MetricKind::DisjointUnion: {
            ordered_json parts = ordered_json::array();
            for (const auto& c : X->children())
                parts.push_back(space_to_json(c));
            m["parts"] = std::move(parts);
            break;
        }
        case MetricKind::Product:
        case MetricKind::WeightedProduct: {
            ordered_json fac = ordered_json::array();
            for (const auto& c : X->children())
                fac.push_back(space_to_json(c));
            m["factors"] = std::move(fac);
            if (X->kind() == MetricKind::Product) {
                m["norm"] = norm_name(X->norm());
            } else {
                m["weights"] = X->weights();
                m["weighted_kind"] =
                    X->weighted_kind() == WeightedKind::Asymptotic
                        ? "asymptotic"
                        : "reduced";
            }
            break;
        }
        case MetricKind::Subspace: {
            m["parent"] = space_to_json(X->parent());
            m["points_of_parent"] = X->subspace_map();
            break;
        }
    }
    j["metric"] = std::move(m);
    return j;
}

SpacePtr space_from_json(const ordered_json& j) {
    if (!j.is_object()) bad("space must be an object");
    std::string name = field(j, "name").get<std::string>();
    std::vector<std::string> labels =
        field(j, "points").get<std::vector<std::string>>();
    const ordered_json& m = field(j, "metric");
    std::string kind = field(m, "kind").get<std::string>();

    SpacePtr X;
    if (kind == "table") {
        std::vector<double> vals;
        for (const auto& v : field(m, "values"))
            vals.push_back(extended_from_json(v));
        return make_table(std::move(labels), std::move(vals),
                          std::move(name));
    } else if (kind == "graph") {
        std::vector<std::tuple<int, int, double>> edges;
        for (const auto& e : field(m, "edges")) {
            if (!e.is_array() || e.size() != 3)
                bad("graph edges must be [u, v, w] triples");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>(),
                               extended_from_json(e[2]));
        }
        return make_graph(std::move(labels), edges, std::move(name));
    } else if (kind == "interval") {
        X = make_interval(field(m, "n").get<int>(),
                          field(m, "scale").get<double>(), std::move(name));
    } else if (kind == "grid") {
        X = make_grid(field(m, "dims").get<std::vector<std::int64_t>>(),
                      norm_from(field(m, "norm")),
                      field(m, "scale").get<double>(), std::move(name));
    } else if (kind == "disjoint_union") {
        std::vector<SpacePtr> parts;
        for (const auto& p : field(m, "parts"))
            parts.push_back(space_from_json(p));
        X = make_disjoint_union(std::move(parts), std::move(name));
    } else if (kind == "product") {
        std::vector<SpacePtr> factors;
        for (const auto& f : field(m, "factors"))
            factors.push_back(space_from_json(f));
        X = make_product(std::move(factors), norm_from(field(m, "norm")),
                         std::move(name));
    } else if (kind == "weighted_product") {
        std::vector<SpacePtr> factors;
        for (const auto& f : field(m, "factors"))
            factors.push_back(space_from_json(f));
        std::string wk = field(m, "weighted_kind").get<std::string>();
        if (wk != "asymptotic" && wk != "reduced")
            bad("weighted_kind must be \"asymptotic\" or \"reduced\"");
        X = make_weighted_product(
            std::move(factors),
            field(m, "weights").get<std::vector<double>>(),
            wk == "asymptotic" ? WeightedKind::Asymptotic
                               : WeightedKind::Reduced,
            std::move(name));
    } else if (kind == "subspace") {
        SpacePtr parent = space_from_json(field(m, "parent"));
        PointSet pts(parent->n());
        for (const auto& v : field(m, "points_of_parent"))
            pts.set(v.get<int>());
        X = make_subspace(parent, pts, std::move(name));
    } else {
        bad("unknown metric kind \"" + kind + "\"");
    }

    if (X->labels() != labels) X = relabel(X, std::move(labels));
    return X;
}

ordered_json point_set_to_json(const PointSet& s) {
    ordered_json j;
    j["n"] = s.capacity();
    ordered_json idx = ordered_json::array();
    s.for_each([&](int i) { idx.push_back(i); });
    j["points"] = std::move(idx);
    return j;
}

PointSet point_set_from_json(const ordered_json& j) {
    PointSet s(field(j, "n").get<int>());
    for (const auto& v : field(j, "points")) s.set(v.get<int>());
    return s;
}

ordered_json profile_fn_to_json(const ProfileFn& f) {
    ordered_json bp = ordered_json::array();
    for (const auto& [t, v] : f.breakpoints())
        bp.push_back(ordered_json::array({t, v}));
    return bp;
}

ProfileFn profile_fn_from_json(const ordered_json& j) {
    if (!j.is_array()) bad("profile function must be an array of pairs");
    std::vector<std::pair<double, double>> bp;
    for (const auto& b : j) {
        if (!b.is_array() || b.size() != 2)
            bad("profile breakpoints must be [threshold, value] pairs");
        bp.emplace_back(b[0].get<double>(), b[1].get<double>());
    }
    return ProfileFn(std::move(bp));
}

ordered_json profile_to_json(const Profile& p) {
    ordered_json fns = ordered_json::array();
    for (const ProfileFn& f : p.fns()) fns.push_back(profile_fn_to_json(f));
    ordered_json j;
    j["fns"] = std::move(fns);
    return j;
}

Profile profile_from_json(const ordered_json& j) {
    std::vector<ProfileFn> fns;
    for (const auto& f : field(j, "fns"))
        fns.push_back(profile_fn_from_json(f));
    return Profile(std::move(fns));
}

ordered_json schedule_to_json(const Schedule& s) {
    ordered_json j;
    j["mode"] = s.mode == ScheduleMode::Repaired ? "repaired" : "literal";
    j["c"] = s.c;
    j["p"] = s.p;
    j["t"] = s.t;
    ordered_json slots = ordered_json::array();
    for (const auto& slot : s.slots) {
        ordered_json o;
        o["slot"] = slot.slot;
        o["part"] = slot.part;
        o["scale"] = slot.scale;
        o["required"] = slot.required;
        slots.push_back(std::move(o));
    }
    j["slots"] = std::move(slots);
    return j;
}

ordered_json report_to_json(const Report& rep) {
    ordered_json j;
    j["type"] = rep.construction;
    j["space"] = space_to_json(rep.space);
    ordered_json scales = ordered_json::object();
    for (const auto& [k, v] : rep.scales) scales[k] = v;
    j["scales"] = std::move(scales);
    ordered_json sets = ordered_json::object();
    for (const auto& [k, v] : rep.sets) sets[k] = point_set_to_json(v);
    j["sets"] = std::move(sets);
    ordered_json certs = ordered_json::object();
    for (const auto& [k, v] : rep.certs) {
        ordered_json c;
        c["scale"] = v.scale;
        c["bound"] = extended_to_json(v.bound.value());
        certs[k] = std::move(c);
    }
    j["certs"] = std::move(certs);
    ordered_json measures = ordered_json::object();
    for (const auto& [k, v] : rep.measures)
        measures[k] = extended_to_json(v.value());
    j["measures"] = std::move(measures);
    ordered_json verdicts = ordered_json::object();
    for (const auto& [k, v] : rep.verdicts) verdicts[k] = v;
    j["verdicts"] = std::move(verdicts);
    j["pass"] = rep.pass();
    return j;
}

Report report_from_json(const ordered_json& j) {
    Report rep;
    rep.construction = field(j, "type").get<std::string>();
    rep.space = space_from_json(field(j, "space"));
    for (const auto& [k, v] : field(j, "scales").items())
        rep.add_scale(k, v.get<double>());
    for (const auto& [k, v] : field(j, "sets").items())
        rep.add_set(k, point_set_from_json(v));
    for (const auto& [k, v] : field(j, "certs").items()) {
        Dim0Certificate c;
        c.scale = field(v, "scale").get<double>();
        c.bound = ExtReal(extended_from_json(field(v, "bound")));
        rep.add_cert(k, c);
    }
    for (const auto& [k, v] : field(j, "measures").items())
        rep.add_measure(k, ExtReal(extended_from_json(v)));
    for (const auto& [k, v] : field(j, "verdicts").items())
        rep.add_verdict(k, v.get<bool>());
    return rep;
}

namespace {

// --- reverify helpers: pull named pieces back out of a report ---

const PointSet& need_set(const Report& rep, const std::string& name) {
    for (const auto& [k, v] : rep.sets)
        if (k == name) return v;
    bad("report is missing set \"" + name + "\"");
}

double need_scale(const Report& rep, const std::string& name) {
    for (const auto& [k, v] : rep.scales)
        if (k == name) return v;
    bad("report is missing scale \"" + name + "\"");
}

ExtReal need_measure(const Report& rep, const std::string& name) {
    for (const auto& [k, v] : rep.measures)
        if (k == name) return v;
    bad("report is missing measure \"" + name + "\"");
}

const Dim0Certificate& need_cert(const Report& rep, const std::string& name) {
    for (const auto& [k, v] : rep.certs)
        if (k == name) return v;
    bad("report is missing certificate \"" + name + "\"");
}

int int_measure(const Report& rep, const std::string& name) {
    ExtReal v = need_measure(rep, name);
    if (!v.is_finite()) bad("measure \"" + name + "\" must be finite");
    return static_cast<int>(v.value());
}

SubsetArray named_array(const Report& rep, const SpacePtr& over,
                        const std::string& prefix, int count) {
    SubsetArray arr(over, IndexSet::numbered(count));
    for (int i = 0; i < count; ++i)
        arr.entry(i) = need_set(rep, prefix + std::to_string(i));
    return arr;
}

IndexSet augmented_cols(int w) {
    std::vector<std::string> labels{"b"};
    for (int c = 1; c < w; ++c) labels.push_back("a" + std::to_string(c));
    return IndexSet(std::move(labels));
}

Report rerun(const Report& rep, Exec ex) {
    const SpacePtr& X = rep.space;
    const std::string& c = rep.construction;

    if (c == "perp_array") {
        int entries = int_measure(rep, "entries");
        SubsetArray yperp = named_array(rep, X, "perp_", entries);
        return verify_perp(X, need_set(rep, "y"), yperp,
                           need_scale(rep, "s"), ex);
    }
    if (c == "perp_split") {
        int entries = int_measure(rep, "entries");
        SubsetArray z = named_array(rep, X, "z_", entries);
        SubsetArray yperp = named_array(rep, X, "perp_", entries);
        return perp_split(X, need_set(rep, "y"), z, yperp,
                          need_scale(rep, "r"), ex)
            .report;
    }
    if (c == "asdim_matrix") {
        int m = int_measure(rep, "rows"), w = int_measure(rep, "cols");
        double r = need_scale(rep, "r");
        AugmentedMatrix M;
        M.matrix = SubsetMatrix(X, IndexSet::numbered(m), augmented_cols(w));
        M.scale = r;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < w; ++j) {
                std::string name = "entry_" + std::to_string(i) + "_" +
                                   std::to_string(j);
                M.matrix.entry(i, j) = need_set(rep, name);
                M.certs.push_back(need_cert(rep, name));
            }
        }
        return verify_asdim_matrix(M, r, ex);
    }
    if (c == "refine_disjoint") {
        Dim0Certificate cert;
        cert.scale = need_scale(rep, "r");
        cert.bound = need_measure(rep, "input_bound");
        return refine_disjoint(X, need_set(rep, "input"), cert,
                               need_scale(rep, "s"), ex)
            .report;
    }
    if (c == "product_split" || c == "truncated_product") {
        if (X->children().size() != 2)
            bad("product report needs a two-factor product space");
        if (c == "truncated_product") {
            int truncation = int_measure(rep, "truncation");
            int head = int_measure(rep, "head_factors");
            std::vector<SpacePtr> factors;
            if (head == 1)
                factors.push_back(X->children()[0]);
            else
                for (const auto& f : X->children()[0]->children())
                    factors.push_back(f);
            if (truncation - head == 1)
                factors.push_back(X->children()[1]);
            else
                for (const auto& f : X->children()[1]->children())
                    factors.push_back(f);
            return truncated_product_decomposition(
                       factors, head, need_scale(rep, "s"), truncation,
                       X->norm(), ex)
                .report;
        }
        ProductHandle P(X);
        int m = int_measure(rep, "factor_rows");
        int w = int_measure(rep, "entries");
        AugmentedMatrix Mx;
        Mx.matrix = SubsetMatrix(P.left(), IndexSet::numbered(m),
                                 augmented_cols(w));
        Mx.scale = need_scale(rep, "r");
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < w; ++j) {
                Mx.matrix.entry(i, j) = need_set(
                    rep,
                    "mx_" + std::to_string(i) + "_" + std::to_string(j));
                Mx.certs.push_back(dim0_certificate(
                    P.left(), Mx.matrix.entry(i, j), Mx.scale, ex));
            }
        SubsetArray yparts = named_array(rep, P.right(), "y_", m);
        return product_split(P, Mx, yparts, need_scale(rep, "s"), ex).report;
    }
    if (c == "profile_instance") {
        int m = int_measure(rep, "parts");
        std::vector<double> r_arr;
        std::vector<ProfileFn> fns;
        std::vector<SubsetArray> piece_sets;
        std::vector<ExtReal> bounds;
        SubsetArray parts = named_array(rep, X, "part_", m);
        for (int i = 0; i < m; ++i) {
            r_arr.push_back(need_scale(rep, "r_" + std::to_string(i)));
            ExtReal budget = need_measure(rep, "budget_" + std::to_string(i));
            if (!budget.is_finite()) bad("piece budgets must be finite");
            fns.push_back(ProfileFn::constant(budget.value()));
            bounds.push_back(need_measure(rep, "bound_" + std::to_string(i)));
            int cnt = 0;
            std::string prefix = "piece_" + std::to_string(i) + "_";
            for (const auto& [k, v] : rep.sets)
                if (k.rfind(prefix, 0) == 0) ++cnt;
            piece_sets.push_back(named_array(rep, X, prefix, cnt));
        }
        return verify_profile_instance(X, Profile(std::move(fns)), r_arr,
                                       parts, piece_sets, bounds, ex);
    }
    bad("no re-verification for construction \"" + c + "\"");
}

}  // namespace

Report reverify(const Report& rep, Exec ex) {
    try {
        return rerun(rep, ex);
    } catch (const Error&) {
        Report failed;
        failed.construction = rep.construction;
        failed.space = rep.space;
        failed.add_verdict("construction_reruns", false);
        return failed;
    }
}

std::string report_diff(const Report& a, const Report& b) {
    if (a.construction != b.construction)
        return "construction differs: " + a.construction + " vs " +
               b.construction;
    if (!a.space->same_space(*b.space)) return "space differs";

    if (a.scales != b.scales) return "scales differ";
    for (std::size_t i = 0; i < std::min(a.sets.size(), b.sets.size()); ++i) {
        if (a.sets[i].first != b.sets[i].first)
            return "set order differs at \"" + a.sets[i].first + "\"";
        if (!(a.sets[i].second == b.sets[i].second))
            return "set \"" + a.sets[i].first + "\" differs";
    }
    if (a.sets.size() != b.sets.size()) return "set count differs";
    for (std::size_t i = 0; i < std::min(a.certs.size(), b.certs.size());
         ++i) {
        if (a.certs[i].first != b.certs[i].first)
            return "certificate order differs at \"" + a.certs[i].first +
                   "\"";
        if (a.certs[i].second.scale != b.certs[i].second.scale ||
            !(a.certs[i].second.bound == b.certs[i].second.bound))
            return "certificate \"" + a.certs[i].first + "\" differs";
    }
    if (a.certs.size() != b.certs.size()) return "certificate count differs";
    for (std::size_t i = 0;
         i < std::min(a.measures.size(), b.measures.size()); ++i) {
        if (a.measures[i].first != b.measures[i].first)
            return "measure order differs at \"" + a.measures[i].first + "\"";
        if (!(a.measures[i].second == b.measures[i].second))
            return "measure \"" + a.measures[i].first + "\" differs";
    }
    if (a.measures.size() != b.measures.size())
        return "measure count differs";
    if (a.verdicts != b.verdicts) return "verdicts differ";
    return "";
}

}  // namespace coarsekit
