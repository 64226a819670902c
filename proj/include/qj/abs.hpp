#pragma once

#include <string>

#include "qj/errors.hpp"

namespace qj {

/// Absolute value at the infinite place, kept symbolically as a power of q.
/// |x| = q^log for finite nonzero x, 0 for exact zero, or Indeterminate when
/// a series is zero to its precision floor without being exactly zero.
class AbsValue {
public:
    enum class Kind { zero, finite, indeterminate };

    static AbsValue zero() { return AbsValue(Kind::zero, 0); }
    static AbsValue finite(int log) { return AbsValue(Kind::finite, log); }
    static AbsValue indeterminate() { return AbsValue(Kind::indeterminate, 0); }

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::zero; }
    bool is_finite() const { return kind_ == Kind::finite; }
    bool is_indeterminate() const { return kind_ == Kind::indeterminate; }

    /// Exponent k with |x| = q^k. Only meaningful for finite values.
    int log() const {
        if (kind_ != Kind::finite)
            throw domain_error("absolute value has no exponent");
        return log_;
    }

    bool operator==(const AbsValue& o) const {
        if (kind_ != o.kind_) return false;
        return kind_ != Kind::finite || log_ == o.log_;
    }
    bool operator!=(const AbsValue& o) const { return !(*this == o); }

    /// Total order on determinate values: 0 < q^a < q^b for a < b.
    bool operator<(const AbsValue& o) const {
        if (kind_ == Kind::indeterminate || o.kind_ == Kind::indeterminate)
            throw domain_error("cannot compare indeterminate absolute values");
        if (kind_ == Kind::zero) return o.kind_ == Kind::finite;
        if (o.kind_ == Kind::zero) return false;
        return log_ < o.log_;
    }
    bool operator<=(const AbsValue& o) const { return *this < o || *this == o; }
    bool operator>(const AbsValue& o) const { return o < *this; }
    bool operator>=(const AbsValue& o) const { return o <= *this; }

    /// Renders as "0", "q^k" or "indeterminate".
    std::string str() const {
        switch (kind_) {
            case Kind::zero: return "0";
            case Kind::indeterminate: return "indeterminate";
            default: break;
        }
        if (log_ == 0) return "1";
        return "q^(" + std::to_string(log_) + ")";
    }

private:
    AbsValue(Kind k, int log) : kind_(k), log_(log) {}
    Kind kind_;
    int log_;
};

} // namespace qj
