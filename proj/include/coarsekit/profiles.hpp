#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "coarsekit/algebra.hpp"
#include "coarsekit/ext_real.hpp"
#include "coarsekit/report.hpp"
#include "coarsekit/space.hpp"

namespace coarsekit {

// Non-decreasing step function on [0, inf), stored as sorted breakpoints.
// Arguments below the first threshold evaluate to the first value.
class ProfileFn {
  public:
    ProfileFn() : ProfileFn({{0.0, 0.0}}) {}
    explicit ProfileFn(std::vector<std::pair<double, double>> breakpoints);

    static ProfileFn constant(double v) { return ProfileFn({{0.0, v}}); }

    double operator()(double r) const;
    const std::vector<std::pair<double, double>>& breakpoints() const {
        return bp_;
    }
    bool is_constant() const { return bp_.size() == 1; }

    friend bool operator==(const ProfileFn& a, const ProfileFn& b) {
        return a.bp_ == b.bp_;
    }

  private:
    std::vector<std::pair<double, double>> bp_;
};

ProfileFn pointwise_max(const ProfileFn& a, const ProfileFn& b);
// r -> a(r) * b(r) + a(r) + b(r).
ProfileFn pointwise_product_plus_sum(const ProfileFn& a, const ProfileFn& b);
// r -> a(b(r)).
ProfileFn compose(const ProfileFn& a, const ProfileFn& b);

// Decomposition budget: fn 0 caps the pieces of the base part and must be
// constant; fn i caps the pieces of part i as a function of the previous
// part's scale.
class Profile {
  public:
    explicit Profile(std::vector<ProfileFn> fns);

    int k() const { return static_cast<int>(fns_.size()) - 1; }
    const std::vector<ProfileFn>& fns() const { return fns_; }
    const ProfileFn& fn(int i) const;

    friend bool operator==(const Profile& a, const Profile& b) {
        return a.fns_ == b.fns_;
    }

  private:
    std::vector<ProfileFn> fns_;
};

// Budget for part i at previous scale r; the argument is ignored for i = 0.
double eval(const Profile& p, int i, double r);

// (a0, rest...) -> (1, a0 - 1, rest...); requires a0 >= 1.
Profile normalize(const Profile& p);

// Floors values and moves thresholds up to the next integer, so the result
// agrees with floor(original) on integer arguments.
Profile to_integral(const Profile& p);
// Precomposes every fn with r -> floor(r) + 1.
Profile from_integral(const Profile& p);

// Composes every fn with the non-decreasing reparameterization beta.
Profile pullback(const Profile& p, const ProfileFn& beta);

// (1, a) and (1, b) -> (2, pointwise max); both inputs must have k = 1 with
// base budget 1.
Profile union_profile(const Profile& p, const Profile& q);
// (1, a) and (1, b) -> (2, a * b + a + b); same shape requirement.
Profile product_profile(const Profile& p, const Profile& q);

// Number of scale-0 pieces a part with budget v may use: 0 for v <= 0, v for
// natural v, and otherwise one more than the largest integer below v - 1.
long long pieces(double v);

enum class ScheduleMode {
    Repaired,  // every part's scale is drawn at its own running piece total
    Literal    // historical recurrence; raw arrays only, no slot guarantee
};

struct ScheduleSlot {
    long long slot = 0;     // 1-based position in the requested scale list
    int part = 0;           // profile part the piece comes from
    double scale = 0.0;     // scale the piece is certified at
    double required = 0.0;  // scale the slot asks for
};

// c: pieces per part; p: running totals; t: assigned scales per part.
struct Schedule {
    ScheduleMode mode = ScheduleMode::Repaired;
    std::vector<long long> c;
    std::vector<long long> p;
    std::vector<double> t;
    std::vector<ScheduleSlot> slots;
};

// Turns a profile plus a non-decreasing positive scale list into a piece
// schedule. In Repaired mode slot j's piece is certified at a scale >= the
// requested r_j; throws when the scale list is too short, naming the length
// reached.
Schedule apc_schedule(const Profile& p, const std::vector<double>& r_seq,
                      ScheduleMode mode = ScheduleMode::Repaired);

// Budget defined on a non-decreasing tuple of non-negative integer scales.
using ScaleFamilyFn = std::function<double(const std::vector<long long>&)>;

// Collapses tuple-argument budgets into single-argument ones: fn i's value
// at r is the maximum of family[i-1] over tuples capped coordinatewise by
// the earlier collapsed fns at r. Tabulated exactly over 0..r_max.
Profile uniformize(double alpha0, const std::vector<ScaleFamilyFn>& family,
                   long long r_max);

// Checks a concrete decomposition against a profile: the parts cover the
// space, part i's supplied pieces cover it, the non-empty piece count stays
// within the budget at the previous scale, and every piece's measured
// component diameter at scale r_i stays within bounds[i].
Report verify_profile_instance(const SpacePtr& X, const Profile& prof,
                               const std::vector<double>& r_arr,
                               const SubsetArray& parts,
                               const std::vector<SubsetArray>& piece_sets,
                               const std::vector<ExtReal>& bounds,
                               Exec ex = Exec::Serial);

}  // namespace coarsekit
