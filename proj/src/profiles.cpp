#include "coarsekit/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>

#include "coarsekit/components.hpp"
#include "coarsekit/errors.hpp"

namespace coarsekit {

namespace {

std::vector<std::pair<double, double>> collapse(
    std::vector<std::pair<double, double>> bp) {
    std::vector<std::pair<double, double>> out;
    for (const auto& [t, v] : bp) {
        if (!out.empty() && out.back().second == v) continue;
        out.emplace_back(t, v);
    }
    return out;
}

// Keeps the last value when consecutive breakpoints land on one threshold.
std::vector<std::pair<double, double>> dedupe_thresholds(
    std::vector<std::pair<double, double>> bp) {
    std::vector<std::pair<double, double>> out;
    for (const auto& [t, v] : bp) {
        if (!out.empty() && out.back().first == t)
            out.back().second = v;
        else
            out.emplace_back(t, v);
    }
    return out;
}

}  // namespace

ProfileFn::ProfileFn(std::vector<std::pair<double, double>> breakpoints) {
    if (breakpoints.empty())
        throw ValidationError("a profile fn needs at least one breakpoint");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        const auto& [t, v] = breakpoints[i];
        if (!std::isfinite(t) || t < 0.0)
            throw ValidationError(
                "profile fn thresholds must be finite and non-negative");
        if (!std::isfinite(v))
            throw ValidationError("profile fn values must be finite");
        if (i > 0 && !(breakpoints[i - 1].first < t))
            throw ValidationError(
                "profile fn thresholds must be strictly increasing");
        if (i > 0 && breakpoints[i - 1].second > v)
            throw ValidationError("profile fn values must be non-decreasing");
    }
    bp_ = collapse(std::move(breakpoints));
}

double ProfileFn::operator()(double r) const {
    double value = bp_.front().second;
    for (const auto& [t, v] : bp_) {
        if (t <= r)
            value = v;
        else
            break;
    }
    return value;
}

namespace {

template <class Op>
ProfileFn merge_pointwise(const ProfileFn& a, const ProfileFn& b, Op op) {
    std::set<double> grid;
    for (const auto& [t, v] : a.breakpoints()) grid.insert(t);
    for (const auto& [t, v] : b.breakpoints()) grid.insert(t);
    std::vector<std::pair<double, double>> bp;
    for (double t : grid) bp.emplace_back(t, op(a(t), b(t)));
    return ProfileFn(std::move(bp));
}

}  // namespace

ProfileFn pointwise_max(const ProfileFn& a, const ProfileFn& b) {
    return merge_pointwise(a, b,
                           [](double x, double y) { return std::max(x, y); });
}

ProfileFn pointwise_product_plus_sum(const ProfileFn& a, const ProfileFn& b) {
    return merge_pointwise(a, b,
                           [](double x, double y) { return x * y + x + y; });
}

ProfileFn compose(const ProfileFn& a, const ProfileFn& b) {
    std::vector<std::pair<double, double>> bp;
    for (const auto& [t, v] : b.breakpoints()) bp.emplace_back(t, a(v));
    return ProfileFn(std::move(bp));
}

Profile::Profile(std::vector<ProfileFn> fns) : fns_(std::move(fns)) {
    if (fns_.empty()) throw ValidationError("a profile needs at least one fn");
    if (!fns_[0].is_constant())
        throw ValidationError("the base budget of a profile must be constant");
}

const ProfileFn& Profile::fn(int i) const {
    if (i < 0 || i >= static_cast<int>(fns_.size()))
        throw ValidationError("profile index out of range");
    return fns_[i];
}

double eval(const Profile& p, int i, double r) {
    const ProfileFn& f = p.fn(i);
    return i == 0 ? f(0.0) : f(r);
}

Profile normalize(const Profile& p) {
    double base = eval(p, 0, 0.0);
    if (base < 1.0)
        throw ValidationError(
            "the base budget must be at least 1 to normalize");
    std::vector<ProfileFn> fns;
    fns.push_back(ProfileFn::constant(1.0));
    fns.push_back(ProfileFn::constant(base - 1.0));
    for (std::size_t i = 1; i < p.fns().size(); ++i) fns.push_back(p.fns()[i]);
    return Profile(std::move(fns));
}

Profile to_integral(const Profile& p) {
    std::vector<ProfileFn> fns;
    for (const ProfileFn& f : p.fns()) {
        std::vector<std::pair<double, double>> bp;
        for (const auto& [t, v] : f.breakpoints())
            bp.emplace_back(std::ceil(t), std::floor(v));
        fns.push_back(ProfileFn(dedupe_thresholds(std::move(bp))));
    }
    return Profile(std::move(fns));
}

Profile from_integral(const Profile& p) {
    std::vector<ProfileFn> fns;
    for (const ProfileFn& f : p.fns()) {
        std::vector<std::pair<double, double>> bp;
        for (const auto& [t, v] : f.breakpoints())
            bp.emplace_back(std::max(0.0, std::ceil(t - 1.0)), v);
        fns.push_back(ProfileFn(dedupe_thresholds(std::move(bp))));
    }
    return Profile(std::move(fns));
}

Profile pullback(const Profile& p, const ProfileFn& beta) {
    std::vector<ProfileFn> fns;
    fns.push_back(p.fns()[0]);  // constants absorb the reparameterization
    for (std::size_t i = 1; i < p.fns().size(); ++i)
        fns.push_back(compose(p.fns()[i], beta));
    return Profile(std::move(fns));
}

namespace {

void require_pair_shape(const Profile& p, const char* what) {
    if (p.k() != 1 || eval(p, 0, 0.0) != 1.0)
        throw ValidationError(std::string(what) +
                              " needs profiles of shape (1, fn)");
}

}  // namespace

Profile union_profile(const Profile& p, const Profile& q) {
    require_pair_shape(p, "union_profile");
    require_pair_shape(q, "union_profile");
    return Profile(
        {ProfileFn::constant(2.0), pointwise_max(p.fn(1), q.fn(1))});
}

Profile product_profile(const Profile& p, const Profile& q) {
    require_pair_shape(p, "product_profile");
    require_pair_shape(q, "product_profile");
    return Profile({ProfileFn::constant(2.0),
                    pointwise_product_plus_sum(p.fn(1), q.fn(1))});
}

long long pieces(double v) {
    if (!(v > 0.0)) return 0;
    double fl = std::floor(v);
    if (fl == v) return static_cast<long long>(fl);
    return std::max<long long>(
        0, static_cast<long long>(std::ceil(v - 1.0)));
}

Schedule apc_schedule(const Profile& prof, const std::vector<double>& r_seq,
                      ScheduleMode mode) {
    for (std::size_t i = 0; i < r_seq.size(); ++i) {
        if (!std::isfinite(r_seq[i]) || r_seq[i] <= 0.0)
            throw ValidationError("scales must be finite and positive");
        if (i > 0 && r_seq[i] < r_seq[i - 1])
            throw ValidationError("the scale list must be non-decreasing");
    }
    // 1-based lookup; indices <= 0 fall back to the first scale.
    auto at = [&](long long idx) {
        long long need = std::max<long long>(idx, 1);
        if (static_cast<long long>(r_seq.size()) < need)
            throw ValidationError(
                "scale list too short: needs at least " +
                std::to_string(need) + " entries, got " +
                std::to_string(r_seq.size()));
        return r_seq[static_cast<std::size_t>(need - 1)];
    };

    Schedule s;
    s.mode = mode;
    int k = prof.k();
    if (mode == ScheduleMode::Repaired) {
        s.c.push_back(pieces(eval(prof, 0, 0.0)));
        s.p.push_back(s.c[0]);
        s.t.push_back(at(s.p[0]));
        for (int i = 1; i <= k; ++i) {
            s.c.push_back(pieces(eval(prof, i, s.t[i - 1])));
            s.p.push_back(s.p[i - 1] + s.c[i]);
            s.t.push_back(at(s.p[i]));
        }
        long long prev = 0;
        for (int i = 0; i <= k; ++i) {
            for (long long j = prev + 1; j <= s.p[i]; ++j)
                s.slots.push_back(
                    {j, i, s.t[i], r_seq[static_cast<std::size_t>(j - 1)]});
            prev = s.p[i];
        }
    } else {
        s.c.push_back(pieces(eval(prof, 0, 1.0)));
        s.t.push_back(at(s.c[0]));
        long long run = 0;
        for (int i = 1; i <= k; ++i) {
            s.c.push_back(pieces(eval(prof, i, s.t[i - 1])));
            run += s.c[i];
            s.p.push_back(run);
            if (i < k) s.t.push_back(at(run));
        }
    }
    return s;
}

Profile uniformize(double alpha0, const std::vector<ScaleFamilyFn>& family,
                   long long r_max) {
    if (!std::isfinite(alpha0) || alpha0 < 0.0)
        throw ValidationError(
            "the base budget must be a finite non-negative constant");
    if (r_max < 0)
        throw ValidationError("the tabulation range must be non-negative");
    const int k = static_cast<int>(family.size());
    constexpr long long kMaxTuples = 2'000'000;

    std::vector<std::vector<long long>> vals(
        static_cast<std::size_t>(k) + 1);
    for (long long r = 0; r <= r_max; ++r) {
        std::vector<long long> caps(static_cast<std::size_t>(k) + 1);
        caps[0] = static_cast<long long>(std::floor(alpha0));
        for (int i = 1; i <= k; ++i) {
            long long best = 0;
            long long iters = 0;
            std::vector<long long> tup(static_cast<std::size_t>(i));
            std::function<void(int, long long)> rec = [&](int j,
                                                          long long lo) {
                if (j == i) {
                    double v = family[static_cast<std::size_t>(i - 1)](tup);
                    if (std::isfinite(v))
                        best = std::max(
                            best, static_cast<long long>(std::floor(v)));
                    return;
                }
                for (long long tj = lo;
                     tj <= caps[static_cast<std::size_t>(j)]; ++tj) {
                    if (++iters > kMaxTuples)
                        throw ValidationError(
                            "scale family enumeration too large");
                    tup[static_cast<std::size_t>(j)] = tj;
                    rec(j + 1, tj);
                }
            };
            rec(0, 0);
            caps[static_cast<std::size_t>(i)] = best;
        }
        for (int i = 0; i <= k; ++i)
            vals[static_cast<std::size_t>(i)].push_back(
                caps[static_cast<std::size_t>(i)]);
    }

    std::vector<ProfileFn> fns;
    for (int i = 0; i <= k; ++i) {
        std::vector<std::pair<double, double>> bp;
        for (long long r = 0; r <= r_max; ++r)
            bp.emplace_back(static_cast<double>(r),
                            static_cast<double>(
                                vals[static_cast<std::size_t>(i)]
                                    [static_cast<std::size_t>(r)]));
        fns.push_back(ProfileFn(std::move(bp)));
    }
    return Profile(std::move(fns));
}

Report verify_profile_instance(const SpacePtr& X, const Profile& prof,
                               const std::vector<double>& r_arr,
                               const SubsetArray& parts,
                               const std::vector<SubsetArray>& piece_sets,
                               const std::vector<ExtReal>& bounds,
                               Exec ex) {
    const int m = prof.k() + 1;
    if (!parts.space()->same_space(*X))
        throw ValidationError("the parts are over a different space");
    if (parts.size() != m)
        throw ValidationError("expected one part per profile fn");
    if (static_cast<int>(r_arr.size()) != m)
        throw ValidationError("expected one scale per part");
    if (static_cast<int>(piece_sets.size()) != m)
        throw ValidationError("expected one piece array per part");
    if (static_cast<int>(bounds.size()) != m)
        throw ValidationError("expected one bound per part");
    for (int i = 0; i < m; ++i) {
        if (!std::isfinite(r_arr[i]) || r_arr[i] <= 0.0)
            throw ValidationError("scales must be finite and positive");
        if (i > 0 && r_arr[i] < r_arr[i - 1])
            throw ValidationError("the scale list must be non-decreasing");
        if (!piece_sets[i].space()->same_space(*X))
            throw ValidationError("a piece array is over a different space");
    }

    Report rep;
    rep.construction = "profile_instance";
    rep.space = X;
    for (int i = 0; i < m; ++i)
        rep.add_scale("r_" + std::to_string(i), r_arr[i]);

    bool cover_ok = set_norm(parts) == PointSet::full(X->n());
    bool pieces_cover_ok = true;
    bool counts_ok = true;
    bool bounds_ok = true;
    long long max_count = 0;
    ExtReal max_bound = ExtReal::zero();
    std::vector<long long> budgets;

    for (int i = 0; i < m; ++i) {
        rep.add_set("part_" + std::to_string(i), parts.entry(i));
        const SubsetArray& ps = piece_sets[i];
        pieces_cover_ok &= set_norm(ps) == parts.entry(i);
        long long nonempty = 0;
        for (int j = 0; j < ps.size(); ++j)
            if (!ps.entry(j).empty()) ++nonempty;
        max_count = std::max(max_count, nonempty);
        long long budget =
            pieces(eval(prof, i, i == 0 ? 0.0 : r_arr[i - 1]));
        budgets.push_back(budget);
        counts_ok &= nonempty <= budget;
        for (int j = 0; j < ps.size(); ++j) {
            std::string name =
                "piece_" + std::to_string(i) + "_" + std::to_string(j);
            Dim0Certificate cert =
                dim0_certificate(X, ps.entry(j), r_arr[i], ex);
            bounds_ok &= cert.bound <= bounds[i];
            max_bound = std::max(max_bound, cert.bound);
            rep.add_set(name, ps.entry(j));
            rep.add_cert(name, cert);
        }
    }

    rep.add_measure("parts", ExtReal(static_cast<double>(m)));
    for (int i = 0; i < m; ++i) {
        rep.add_measure("budget_" + std::to_string(i),
                        ExtReal(static_cast<double>(budgets[i])));
        rep.add_measure("bound_" + std::to_string(i), bounds[i]);
    }
    rep.add_measure("max_piece_count",
                    ExtReal(static_cast<double>(max_count)));
    rep.add_measure("max_piece_bound", max_bound);
    rep.add_verdict("parts_cover_space", cover_ok);
    rep.add_verdict("pieces_cover_parts", pieces_cover_ok);
    rep.add_verdict("piece_counts_within_profile", counts_ok);
    rep.add_verdict("piece_bounds_within_limits", bounds_ok);
    return rep;
}

}  // namespace coarsekit
