#include "qj/cf.hpp"

#include <algorithm>
#include <mutex>

namespace qj {

CFExpansion::CFExpansion(Poly a0_, std::vector<Poly> partials_,
                         std::optional<std::size_t> period, bool complete_)
    : a0(std::move(a0_)), partials(std::move(partials_)),
      period_start(period), complete(complete_) {
    for (const Poly& a : partials)
        if (a.degree() < 1)
            throw domain_error("partial quotients a_i (i >= 1) must have degree >= 1");
    if (period_start) {
        if (*period_start < 1 || *period_start > partials.size())
            throw domain_error("period start out of range");
        if (complete)
            throw domain_error("a periodic expansion cannot be complete");
    }
}

std::size_t CFExpansion::period_len() const {
    if (!period_start) return 0;
    return partials.size() - (*period_start - 1);
}

std::size_t CFExpansion::preperiod_len() const {
    if (!period_start) return partials.size() + 1;
    return *period_start; // a_0 .. a_{period_start-1}
}

bool CFExpansion::has_term(std::size_t i) const {
    return i <= partials.size() || is_periodic();
}

const Poly& CFExpansion::term(std::size_t i) const {
    if (i == 0) return a0;
    if (i <= partials.size()) return partials[i - 1];
    if (is_periodic()) {
        const std::size_t start = *period_start;
        const std::size_t len = period_len();
        return partials[start - 1 + (i - start) % len];
    }
    if (complete)
        throw domain_error("continued fraction ends at index " +
                           std::to_string(partials.size()));
    throw precision_error("continued fraction certified only through index " +
                          std::to_string(partials.size()));
}

CFClass cf_classify(const CFExpansion& cf) {
    if (cf.is_periodic()) return CFClass::quadratic;
    if (cf.complete) return CFClass::rational;
    return CFClass::undetermined;
}

// --- convergent table ---------------------------------------------------

ConvergentTable::ConvergentTable(CFExpansion cf) : cf_(std::move(cf)) {}

void ConvergentTable::ensure(std::size_t n) const {
    std::unique_lock lock(mutex_);
    const Field& F = cf_.field();
    while (rows_.size() <= n) {
        const std::size_t i = rows_.size();
        ConvergentRow r;
        if (i == 0) {
            r.q = Poly::one(F);
            r.qperp = cf_.a0;
            r.degsum = 0;
        } else if (i == 1) {
            const Poly& a1 = cf_.term(1);
            r.q = a1;
            r.qperp = a1 * cf_.a0 + Poly::one(F);
            r.degsum = a1.degree();
        } else {
            const Poly& ai = cf_.term(i);
            r.q = ai * rows_[i - 1].q + rows_[i - 2].q;
            r.qperp = ai * rows_[i - 1].qperp + rows_[i - 2].qperp;
            r.degsum = rows_[i - 1].degsum + ai.degree();
        }
        auto [c, qbar] = r.q.monicize();
        r.c = c;
        r.qbar = qbar;
        r.qbarperp = r.qperp.scaled(c);
        rows_.push_back(std::move(r));
    }
}

ConvergentRow ConvergentTable::row(std::size_t n) const {
    {
        std::shared_lock lock(mutex_);
        if (n < rows_.size()) return rows_[n];
    }
    ensure(n);
    std::shared_lock lock(mutex_);
    return rows_[n];
}

int ConvergentTable::errlog(std::size_t n) const {
    const int sn = degsum(n);
    return -(sn + cf_.term(n + 1).degree());
}

AbsValue cf_error(const ConvergentTable& table, std::size_t n) {
    return AbsValue::finite(table.errlog(n));
}

// --- expansion ----------------------------------------------------------

namespace {

// Euclidean algorithm on a reduced pair; always terminates.
CFExpansion expand_rational(const Poly& num, const Poly& den) {
    auto [a0, rem] = num.divmod(den);
    std::vector<Poly> partials;
    Poly x = den, y = rem;
    while (!y.is_zero()) {
        auto [quot, r2] = x.divmod(y);
        partials.push_back(quot);
        x = y;
        y = r2;
    }
    return CFExpansion(a0, std::move(partials), std::nullopt, true);
}

} // namespace

CFExpandResult cf_expand_laurent(const LaurentSeries& f, std::size_t max_terms) {
    const Field& F = f.field();
    if (f.exact()) {
        // a Laurent polynomial is a rational; expand exactly
        const int fl = f.has_terms() ? std::min(f.floor_log(), 0) : 0;
        Poly num(F);
        if (f.has_terms()) {
            std::vector<Fq> c;
            for (int k = fl; k <= f.top(); ++k) c.push_back(f.coeff(k));
            num = Poly(F, std::move(c));
        }
        Poly den = Poly::monomial(F, -fl);
        CFExpandResult res{expand_rational(num, den), false, false};
        if (res.cf.partials.size() > max_terms) res.hit_max_terms = true;
        return res;
    }

    CFExpandResult res;
    Poly a0(F);
    std::vector<Poly> partials;
    LaurentSeries cur = f;
    for (std::size_t i = 0;; ++i) {
        Poly ai(F);
        try {
            ai = cur.polypart();
        } catch (const precision_error&) {
            res.precision_exhausted = true;
            break;
        }
        if (i >= 1 && ai.degree() < 1) {
            // |f_i| > 1 for every true remainder; a constant here means the
            // input series was not the expansion of anything
            throw domain_error("residual with |f_i| <= 1: not a valid series");
        }
        if (i == 0)
            a0 = ai;
        else
            partials.push_back(ai);
        LaurentSeries g = cur - LaurentSeries::from_poly(ai);
        if (g.is_exact_zero()) {
            res.cf = CFExpansion(a0, std::move(partials), std::nullopt, true);
            return res;
        }
        if (!g.has_terms()) {
            // zero to precision: cannot certify another term or termination
            res.precision_exhausted = true;
            break;
        }
        if (partials.size() >= max_terms) {
            res.hit_max_terms = true;
            break;
        }
        cur = g.inv(std::numeric_limits<int>::min() / 2);
    }
    res.cf = CFExpansion(a0, std::move(partials), std::nullopt, false);
    return res;
}

// --- handles ------------------------------------------------------------

struct RealHandle::Caches {
    std::mutex mutex;
    std::optional<CFExpansion> cf;
    std::shared_ptr<const ConvergentTable> table;
    std::optional<LaurentSeries> deepest; // deepest Laurent expansion so far
};

RealHandle::RealHandle(std::variant<Rational, Quadratic, Truncated> v)
    : v_(std::move(v)), caches_(std::make_shared<Caches>()) {}

RealHandle RealHandle::rational(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw domain_error("rational handle with zero denominator");
    Poly n = num, d = den;
    Poly g = gcd(n, d);
    if (!g.is_constant()) {
        n = n / g;
        d = d / g;
    }
    Fq c = d.field().inv(d.lead());
    n = n.scaled(c);
    d = d.scaled(c);
    return RealHandle(Rational{std::move(n), std::move(d)});
}

RealHandle RealHandle::quadratic(CFExpansion cf) {
    if (!cf.is_periodic())
        throw domain_error("quadratic handle requires a periodic expansion");
    return RealHandle(Quadratic{std::move(cf)});
}

RealHandle RealHandle::truncated(LaurentSeries ls) {
    if (!ls.valid()) throw domain_error("invalid series");
    return RealHandle(Truncated{std::move(ls)});
}

RealHandle::Kind RealHandle::kind() const {
    if (std::holds_alternative<Rational>(v_)) return Kind::rational;
    if (std::holds_alternative<Quadratic>(v_)) return Kind::quadratic;
    return Kind::truncated;
}

const Field& RealHandle::field() const {
    if (auto* r = std::get_if<Rational>(&v_)) return r->num.field();
    if (auto* s = std::get_if<Quadratic>(&v_)) return s->cf.field();
    return std::get<Truncated>(v_).ls.field();
}

const Poly& RealHandle::num() const {
    if (auto* r = std::get_if<Rational>(&v_)) return r->num;
    throw domain_error("not a rational handle");
}

const Poly& RealHandle::den() const {
    if (auto* r = std::get_if<Rational>(&v_)) return r->den;
    throw domain_error("not a rational handle");
}

const CFExpansion& RealHandle::cf() const {
    if (auto* s = std::get_if<Quadratic>(&v_)) return s->cf;
    std::lock_guard lock(caches_->mutex);
    if (!caches_->cf) {
        if (auto* r = std::get_if<Rational>(&v_)) {
            caches_->cf = expand_rational(r->num, r->den);
        } else {
            const auto& t = std::get<Truncated>(v_);
            caches_->cf = cf_expand_laurent(t.ls, SIZE_MAX).cf;
        }
    }
    return *caches_->cf;
}

const ConvergentTable& RealHandle::convergents() const {
    const CFExpansion& e = cf();
    std::lock_guard lock(caches_->mutex);
    if (!caches_->table)
        caches_->table = std::make_shared<const ConvergentTable>(e);
    return *caches_->table;
}

CFExpandResult RealHandle::expand(std::size_t max_terms) const {
    if (auto* t = std::get_if<Truncated>(&v_))
        return cf_expand_laurent(t->ls, max_terms);
    CFExpandResult res{cf(), false, false};
    if (!res.cf.is_periodic() && res.cf.partials.size() > max_terms)
        res.hit_max_terms = true;
    return res;
}

LaurentSeries RealHandle::laurent(int P) const {
    if (P < 0) throw domain_error("precision must be nonnegative");
    if (auto* r = std::get_if<Rational>(&v_))
        return LaurentSeries::from_rational(r->num, r->den, P);
    if (auto* t = std::get_if<Truncated>(&v_)) {
        if (!t->ls.exact() && t->ls.floor_log() > -P)
            throw precision_error("requested precision exceeds the stored series");
        return t->ls.truncated(-P);
    }

    {
        std::lock_guard lock(caches_->mutex);
        if (caches_->deepest && caches_->deepest->floor_log() <= -P)
            return caches_->deepest->truncated(-P);
    }
    // pick n with S_n + S_{n+1} > P so the convergent matches f above -P
    const ConvergentTable& tab = convergents();
    std::size_t n = 0;
    while (tab.degsum(n) + tab.degsum(n + 1) <= P) ++n;
    const ConvergentRow rn = tab.row(n);
    const LaurentSeries conv =
        LaurentSeries::from_rational(rn.qbarperp, rn.qbar, P);
    // the convergent agrees with f above -P but f goes on below it
    const int hi = conv.has_terms() ? conv.top() : -P - 1;
    std::vector<Fq> c;
    for (int k = -P; k <= hi; ++k) c.push_back(conv.coeff(k));
    LaurentSeries out = LaurentSeries::from_coeffs(field(), -P, false, std::move(c));
    std::lock_guard lock(caches_->mutex);
    if (!caches_->deepest || caches_->deepest->floor_log() > -P)
        caches_->deepest = out;
    return out;
}

const LaurentSeries& RealHandle::series() const {
    if (auto* t = std::get_if<Truncated>(&v_)) return t->ls;
    throw domain_error("not a truncated handle");
}

RealHandle RealHandle::shifted(std::size_t j) const {
    if (j == 0) return *this;
    auto* s = std::get_if<Quadratic>(&v_);
    if (!s) throw domain_error("shift is defined for quadratic handles only");
    const CFExpansion& e = s->cf;
    const std::size_t pre = *e.period_start; // first periodic index
    const std::size_t len = e.period_len();
    Poly a0 = e.term(j);
    std::vector<Poly> partials;
    std::size_t start;
    if (j >= pre) {
        for (std::size_t i = 1; i <= len; ++i) partials.push_back(e.term(j + i));
        start = 1; // purely periodic
    } else {
        const std::size_t last = pre + len - 1;
        for (std::size_t i = j + 1; i <= last; ++i) partials.push_back(e.term(i));
        start = pre - j;
    }
    return quadratic(CFExpansion(std::move(a0), std::move(partials), start));
}

bool RealHandle::operator==(const RealHandle& o) const {
    if (kind() != o.kind()) return false;
    if (auto* r = std::get_if<Rational>(&v_)) {
        const auto& q = std::get<Rational>(o.v_);
        return r->num == q.num && r->den == q.den;
    }
    if (auto* s = std::get_if<Quadratic>(&v_)) {
        const auto& q = std::get<Quadratic>(o.v_);
        return s->cf.a0 == q.cf.a0 && s->cf.partials == q.cf.partials &&
               s->cf.period_start == q.cf.period_start;
    }
    return std::get<Truncated>(v_).ls == std::get<Truncated>(o.v_).ls;
}

RealHandle cf_value(const CFExpansion& cf) {
    if (!cf.complete) throw domain_error("value of an incomplete expansion");
    ConvergentTable table(cf);
    const std::size_t last = cf.partials.size();
    const ConvergentRow r = table.row(last);
    return RealHandle::rational(r.qperp, r.q);
}

} // namespace qj
