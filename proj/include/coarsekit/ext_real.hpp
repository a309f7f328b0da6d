#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

#include "coarsekit/errors.hpp"

namespace coarsekit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Non-negative extended real: a finite value or infinity. Distances,
// diameters and certificate bounds live here. Arithmetic absorbs infinity;
// comparisons are exact (generators only emit integers and halves, which
// doubles represent exactly).
class ExtReal {
  public:
    constexpr ExtReal() : v_(0.0) {}
    ExtReal(double v) : v_(v) {
        if (std::isnan(v_) || v_ < 0.0)
            throw ValidationError("ExtReal requires a non-negative value");
    }

    static constexpr ExtReal inf() {
        ExtReal r;
        r.v_ = kInfinity;
        return r;
    }
    static constexpr ExtReal zero() { return ExtReal(); }

    bool is_inf() const { return std::isinf(v_); }
    bool is_finite() const { return !std::isinf(v_); }
    double value() const { return v_; }

    ExtReal operator+(ExtReal o) const {
        ExtReal r;
        r.v_ = v_ + o.v_;  // inf absorbs
        return r;
    }
    ExtReal& operator+=(ExtReal o) {
        v_ += o.v_;
        return *this;
    }

    friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
    friend auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }
    friend ExtReal max(ExtReal a, ExtReal b) { return a.v_ >= b.v_ ? a : b; }
    friend ExtReal min(ExtReal a, ExtReal b) { return a.v_ <= b.v_ ? a : b; }

    std::string str() const {
        if (is_inf()) return "inf";
        if (v_ == static_cast<long long>(v_))
            return std::to_string(static_cast<long long>(v_));
        return std::to_string(v_);
    }

  private:
    double v_;
};

}  // namespace coarsekit
