#pragma once

#include <memory>
#include <optional>
#include <shared_mutex>
#include <variant>
#include <vector>

#include "qj/laurent.hpp"
#include "qj/poly.hpp"

namespace qj {

/// Continued fraction [a0; a1, a2, ...] with polynomial partial quotients.
/// deg(a_i) >= 1 for every i >= 1. A present period_start marks the first
/// index i >= 1 of the repeating block partials[period_start-1 ..], making
/// the expansion eventually periodic (a quadratic irrational). `complete`
/// marks a finite expansion that provably ends (a rational).
struct CFExpansion {
    Poly a0;
    std::vector<Poly> partials; // a_1 .. a_k
    std::optional<std::size_t> period_start;
    bool complete = false;

    CFExpansion() = default;
    CFExpansion(Poly a0_, std::vector<Poly> partials_,
                std::optional<std::size_t> period = std::nullopt,
                bool complete_ = false);

    const Field& field() const { return a0.field(); }

    bool is_periodic() const { return period_start.has_value(); }
    std::size_t stored_terms() const { return partials.size(); } // a_1..a_k
    std::size_t period_len() const;
    /// Number of partial quotients before the period (counting a_0).
    std::size_t preperiod_len() const;

    /// True when a_i can be produced (unrolling the period if present).
    bool has_term(std::size_t i) const;
    /// a_i with the period unrolled. Throws domain_error past the end of a
    /// complete expansion, precision_error past a truncated one.
    const Poly& term(std::size_t i) const;
};

enum class CFClass { rational, quadratic, undetermined };

/// rational for complete finite expansions, quadratic for periodic ones,
/// undetermined for truncated windows (never guesses periodicity).
CFClass cf_classify(const CFExpansion& cf);

/// Row n of the convergent table.
struct ConvergentRow {
    Poly q;        // denominator of best approximation q_n
    Poly qperp;    // dual: the matching numerator
    Fq c;          // scalar with qbar = c * q monic
    Poly qbar;     // monic normalization
    Poly qbarperp; // c * qperp
    int degsum;    // S_n = sum of deg(a_i), i <= n; equals deg(q_n)
};

/// Incrementally grown table of convergents for one expansion.
/// Safe for concurrent readers; extension is serialized internally.
class ConvergentTable {
public:
    explicit ConvergentTable(CFExpansion cf);

    const CFExpansion& cf() const { return cf_; }
    ConvergentRow row(std::size_t n) const;
    /// S_n = deg(q_n).
    int degsum(std::size_t n) const { return row(n).degsum; }
    /// log_q of ||q_n f|| = -S_{n+1}. Needs a_{n+1}.
    int errlog(std::size_t n) const;

private:
    void ensure(std::size_t n) const;
    CFExpansion cf_;
    mutable std::shared_mutex mutex_;
    mutable std::vector<ConvergentRow> rows_;
};

struct CFExpandResult {
    CFExpansion cf;
    bool hit_max_terms = false;
    bool precision_exhausted = false;
};

/// Certified expansion of a truncated series: partial quotients are emitted
/// only while the residual's valuation and polynomial part are exact.
CFExpandResult cf_expand_laurent(const LaurentSeries& f, std::size_t max_terms);

/// Exact representation of an element of k_inf: a reduced rational a/b, a
/// quadratic given by its eventually periodic continued fraction, or a
/// truncated Laurent series. Immutable; expansion caches are shared between
/// copies and grow monotonically.
class RealHandle {
public:
    enum class Kind { rational, quadratic, truncated };

    /// Reduced at construction: gcd removed, denominator monic.
    static RealHandle rational(const Poly& num, const Poly& den);
    static RealHandle quadratic(CFExpansion cf); // requires a period
    static RealHandle truncated(LaurentSeries ls);

    Kind kind() const;
    const Field& field() const;
    bool is_rational() const { return kind() == Kind::rational; }
    bool is_quadratic() const { return kind() == Kind::quadratic; }
    bool is_truncated() const { return kind() == Kind::truncated; }
    bool is_exact() const { return !is_truncated(); }

    const Poly& num() const; // rational only
    const Poly& den() const;

    /// The (cached) expansion: Euclid for rationals, the stored form for
    /// quadratics, the certified expansion for truncated series.
    const CFExpansion& cf() const;
    const ConvergentTable& convergents() const;

    /// cf_expand with an explicit term budget.
    CFExpandResult expand(std::size_t max_terms) const;

    /// The series to floor -P, exact only for rationals whose expansion
    /// terminates above the floor.
    LaurentSeries laurent(int P) const;

    /// The stored window of a truncated handle.
    const LaurentSeries& series() const;

    /// Handle of the complete quotient f_j = [a_j; a_{j+1}, ...].
    /// Quadratic handles only; j = 0 returns *this.
    RealHandle shifted(std::size_t j) const;

    bool operator==(const RealHandle& o) const;

private:
    struct Rational {
        Poly num, den;
    };
    struct Quadratic {
        CFExpansion cf;
    };
    struct Truncated {
        LaurentSeries ls;
    };
    struct Caches;
    RealHandle(std::variant<Rational, Quadratic, Truncated> v);

    std::variant<Rational, Quadratic, Truncated> v_;
    std::shared_ptr<Caches> caches_;
};

/// ||q_n f|| = q^{-S_{n+1}} as an absolute value.
AbsValue cf_error(const ConvergentTable& table, std::size_t n);

/// Value of a complete finite expansion as a reduced rational handle.
RealHandle cf_value(const CFExpansion& cf);

} // namespace qj
