#include "qj/invariant.hpp"

#include "qj/zetafast.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace qj {

namespace {

// Truncated product of coefficient windows: out[k] = sum a[i]*b[k-i], len
// entries. Windows are "descending" from a common top exponent.
void conv_truncated(const Field& F, const std::vector<Fq>& a,
                    const std::vector<Fq>& b, std::vector<Fq>& out,
                    std::size_t len) {
    out.assign(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == 0) continue;
        const std::size_t lim = std::min(len - i, b.size());
        for (std::size_t k = 0; k < lim; ++k)
            if (b[k] != 0) out[i + k] = F.add(out[i + k], F.mul(a[i], b[k]));
    }
}

// Adds lambda^(-n) to acc (acc[i] is the coefficient of T^(i - P)) for a
// monic lambda of degree d given by its coefficient buffer.
void add_term(const Field& F, const std::vector<Fq>& lam, int d, int n, int P,
              std::vector<Fq>& acc, std::vector<Fq>& s, std::vector<Fq>& w,
              std::vector<Fq>& tmp) {
    const int len = P - n * d + 1; // coefficients of exponent >= -P
    if (len <= 0) return;
    // s[j]: coefficient of T^(-d-j) in 1/lambda (lambda monic)
    s.assign(len, 0);
    s[0] = 1;
    for (int j = 1; j < len; ++j) {
        Fq a = 0;
        const int lim = std::min(j, d);
        for (int i = 1; i <= lim; ++i) {
            const Fq u = lam[d - i];
            if (u != 0 && s[j - i] != 0) a = F.add(a, F.mul(u, s[j - i]));
        }
        s[j] = F.neg(a);
    }
    const std::vector<Fq>* contrib = &s;
    if (n > 1) {
        // w = s^n truncated to len coefficients
        w.assign(len, 0);
        w[0] = 1;
        std::vector<Fq> base = s;
        long long e = n;
        while (e > 0) {
            if (e & 1) {
                conv_truncated(F, w, base, tmp, len);
                w.swap(tmp);
            }
            if (e >>= 1) {
                conv_truncated(F, base, base, tmp, len);
                base.swap(tmp);
            }
        }
        contrib = &w;
    }
    const int top_index = P - n * d; // index of exponent -n*d
    for (int j = 0; j < len; ++j) {
        const Fq c = (*contrib)[j];
        if (c != 0) acc[top_index - j] = F.add(acc[top_index - j], c);
    }
}

// Sum of value^(-n) over all monic combinations of the entries (top entry
// with coefficient 1, lower entries free over F_q), floor -P.
LaurentSeries zeta_sum(const Field& F, const std::vector<Poly>& entries,
                       int n, int P) {
    if (entries.empty() || -n * entries.front().degree() < -P)
        return LaurentSeries::zero_to_precision(F, -P);
    const Fq q = static_cast<Fq>(F.q());
    const int hi = -n * entries.front().degree();
    std::vector<Fq> acc(P + hi + 1, 0);

    std::vector<Fq> lam(entries.back().degree() + 1, 0);
    std::vector<Fq> s, w, tmp, digits;
    for (std::size_t j = 0; j < entries.size(); ++j) {
        const int d = entries[j].degree();
        digits.assign(j, 0);
        std::fill(lam.begin(), lam.end(), 0);
        std::copy(entries[j].coeffs().begin(), entries[j].coeffs().end(),
                  lam.begin());
        for (;;) {
            add_term(F, lam, d, n, P, acc, s, w, tmp);
            std::size_t pos = 0;
            for (; pos < j; ++pos) {
                const Fq old = digits[pos];
                const Fq next = (old + 1 == q) ? 0 : old + 1;
                digits[pos] = next;
                const Fq delta = F.sub(next, old);
                const auto& ec = entries[pos].coeffs();
                for (std::size_t k = 0; k < ec.size(); ++k)
                    if (ec[k] != 0) lam[k] = F.add(lam[k], F.mul(delta, ec[k]));
                if (next != 0) break;
            }
            if (pos == j) break;
        }
    }
    return LaurentSeries::from_coeffs(F, -P, false, std::move(acc));
}

} // namespace

namespace {

std::vector<Poly> basis_values(const RealHandle& f, EpsIndex e, int cutoff) {
    LambdaBasis basis = lambda_basis(f, e, cutoff);
    std::vector<Poly> entries;
    entries.reserve(basis.entries.size());
    for (auto& be : basis.entries) entries.push_back(be.value);
    return entries;
}

} // namespace

ZetaValue zeta_eps_direct(const RealHandle& f, EpsIndex e, int n, int P) {
    if (n < 1) throw domain_error("zeta exponent must be >= 1");
    if (P < 1) throw domain_error("precision must be >= 1");
    const int cutoff = P / n;
    return ZetaValue{zeta_sum(f.field(), basis_values(f, e, cutoff), n, P),
                     n, e, -n * (cutoff + 1)};
}

ZetaValue zeta_eps(const RealHandle& f, EpsIndex e, int n, int P) {
    if (n < 1) throw domain_error("zeta exponent must be >= 1");
    if (P < 1) throw domain_error("precision must be >= 1");
    const int q = f.field().q();
    if (n != q - 1 && n != q * q - 1) return zeta_eps_direct(f, e, n, P);
    const int cutoff = P / n;
    auto entries = basis_values(f, e, cutoff);
    auto [z1, z2] = (n == q - 1)
                        ? zeta_pair_linearized(f.field(), entries, P, 1)
                        : zeta_pair_linearized(f.field(), entries, 1, P);
    return ZetaValue{n == q - 1 ? std::move(z1) : std::move(z2), n, e,
                     -n * (cutoff + 1)};
}

ZetaValue zeta_A(const Field& F, int n, int P) {
    if (n < 1) throw domain_error("zeta exponent must be >= 1");
    if (P < 1) throw domain_error("precision must be >= 1");
    const int cutoff = P / n;
    std::vector<Poly> entries;
    for (int d = 0; d <= cutoff; ++d) entries.push_back(Poly::monomial(F, d));
    return ZetaValue{zeta_sum(F, entries, n, P), n, std::nullopt,
                     -n * (cutoff + 1)};
}

Fq zeta_scalar(const Field& F, int n) {
    Fq acc = 0;
    for (Fq c = 1; c < static_cast<Fq>(F.q()); ++c)
        acc = F.add(acc, F.pow(c, -static_cast<long long>(n)));
    return acc;
}

DeltaG delta_g_eps(const RealHandle& f, EpsIndex e, int P) {
    const Field& F = f.field();
    const int q = F.q();
    const EpsInfo info = eps_info(f, e);
    const int S = info.min_degree;
    const int R = P - (q - 1) * S; // relative depth of z1 below its top
    if (R < q)
        throw precision_error(
            "precision insufficient to determine delta at this index; need "
            "P >= " + std::to_string((q - 1) * S + q));
    // z2 is computed at the depth that matches z1's relative precision;
    // both come out of one subspace-product pass over the union entry list
    const int P2 = (q * q - 1) * S + R;
    const int cutoff = std::max(P / (q - 1), P2 / (q * q - 1));
    auto entries = basis_values(f, e, cutoff);
    auto [v1, v2] = zeta_pair_linearized(F, entries, P, P2);
    ZetaValue z1{std::move(v1), q - 1, e, -(q - 1) * (cutoff + 1)};
    ZetaValue z2{std::move(v2), q * q - 1, e, -(q * q - 1) * (cutoff + 1)};

    const LaurentSeries tq = LaurentSeries::from_poly(
        Poly::monomial(F, q) - Poly::monomial(F, 1));
    const LaurentSeries tq_pow_q = LaurentSeries::from_poly(
        (Poly::monomial(F, q) - Poly::monomial(F, 1)).pow(q));
    const LaurentSeries tq2 = LaurentSeries::from_poly(
        Poly::monomial(F, q * q) - Poly::monomial(F, 1));

    LaurentSeries z1p = z1.value.pow(q + 1);
    LaurentSeries delta = -(tq2 * z2.value) + tq_pow_q * z1p;
    LaurentSeries g = -(tq * z1.value);
    return DeltaG{std::move(delta), std::move(g), std::move(z1), std::move(z2)};
}

namespace {

constexpr int kDeepFloor = std::numeric_limits<int>::min() / 2;

// For a rational handle in the ideal regime, confirm Lambda_eps = bA on a
// small degree window through the brute-force oracle.
void verify_ideal_lattice(const RealHandle& f, EpsIndex e) {
    const Poly& b = f.den();
    const int deg_bound = b.degree() + 1;
    std::set<Poly> expect;
    for_each_poly(f.field(), deg_bound - b.degree(),
                  [&](const Poly& a) { expect.insert(a * b); });
    auto members = lambda_member_oracle(f, e, deg_bound);
    std::set<Poly> got(members.begin(), members.end());
    if (got != expect)
        throw error("internal: ideal lattice verification failed");
}

// J~ = z2 / z1^{q+1} from precomputed zeta values.
LaurentSeries jtilde_from(const Field& F, const DeltaG& dg) {
    const int q = F.q();
    LaurentSeries z1p = dg.z1.value.pow(q + 1);
    return dg.z2.value * z1p.inv(kDeepFloor);
}

} // namespace

JResult j_eps(const RealHandle& f, EpsIndex e, int P) {
    const Field& F = f.field();
    const int q = F.q();
    const EpsInfo info = eps_info(f, e);
    if (info.ideal) {
        verify_ideal_lattice(f, e);
        JResult r;
        r.kind = JResult::Kind::infinity;
        r.certified = true;
        r.eps = e;
        return r;
    }
    DeltaG dg = delta_g_eps(f, e, P);
    if (!dg.delta.has_terms()) {
        JResult r;
        r.kind = JResult::Kind::infinity;
        r.certified = false;
        r.eps = e;
        return r;
    }
    LaurentSeries j = dg.g.pow(q + 1) * dg.delta.inv(kDeepFloor);

    // cross-check: j = 1/(1/(T^q-T) - J_eps) on every shared coefficient
    const LaurentSeries jt = jtilde_from(F, dg);
    const int guard = jt.floor_log() - 2 * q * q - 4;
    const LaurentSeries tq = LaurentSeries::from_poly(
        Poly::monomial(F, q) - Poly::monomial(F, 1));
    const LaurentSeries c_factor =
        LaurentSeries::from_poly(Poly::monomial(F, q * q) -
                                 Poly::monomial(F, 1)) *
        LaurentSeries::from_poly(
            (Poly::monomial(F, q) - Poly::monomial(F, 1)).pow(q + 1))
            .inv(guard);
    const LaurentSeries w = tq.inv(guard) - c_factor * jt;
    if (w.has_terms()) {
        const LaurentSeries j2 = w.inv(kDeepFloor);
        if (!j.agrees_with(j2))
            throw error("internal: the two j-invariant routes disagree");
    }

    JResult r;
    r.kind = JResult::Kind::finite;
    r.eps = e;
    r.abs_log = j.abs().log();
    r.value = std::move(j);
    return r;
}

LaurentSeries j_tilde(const RealHandle& f, EpsIndex e, int P) {
    return jtilde_from(f.field(), delta_g_eps(f, e, P));
}

LimitSet jqt_limit_set(const RealHandle& f, int N_max, int P) {
    if (f.is_truncated())
        throw domain_error("limit sets require exact handles");
    if (P < 1) throw domain_error("precision must be >= 1");
    if (N_max < 1) throw domain_error("N_max must be >= 1");
    LimitSet out;
    out.precision = P;

    if (f.is_rational()) {
        // j_eps is certified infinity on the whole tail of the schedule
        const int K = static_cast<int>(f.cf().partials.size());
        const int sK = f.convergents().degsum(static_cast<std::size_t>(K));
        EpsIndex ideal{K, sK >= 1 ? 1 : 2};
        JResult jr = j_eps(f, ideal, P);
        LimitClass c;
        c.infinite = true;
        c.certified = jr.certified;
        c.achieved.push_back(ideal);
        out.classes.push_back(std::move(c));
        out.stabilized = true;
        return out;
    }

    const int q = f.field().q();
    const auto schedule = eps_schedule(f, N_max);
    std::map<std::string, std::size_t> class_of;
    std::vector<std::string> key_by_index;
    for (EpsIndex e : schedule) {
        const EpsInfo info = eps_info(f, e);
        // finite values must be comparable down to -P; the cancellation depth
        // in delta varies by index, so retry with a deeper budget as needed
        JResult jr = [&] {
            int Pidx = (q - 1) * info.min_degree + P + 3 * q + 2;
            for (int attempt = 0;; ++attempt) {
                JResult r = j_eps(f, e, Pidx);
                if (r.is_infinity() || r.value->floor_log() <= -P) return r;
                if (attempt >= 6)
                    throw precision_error(
                        "limit-set value did not reach the comparison depth");
                Pidx += r.value->floor_log() + P + 4;
            }
        }();
        std::string key;
        LimitClass proto;
        if (jr.is_infinity()) {
            key = "inf";
            proto.infinite = true;
            proto.certified = jr.certified;
        } else {
            LaurentSeries v = jr.value->truncated(-P);
            key.reserve(16);
            for (int k = -P; k <= (v.has_terms() ? v.top() : -P - 1); ++k) {
                key += std::to_string(v.coeff(k));
                key += ',';
            }
            proto.value = std::move(v);
        }
        auto [it, inserted] = class_of.try_emplace(key, out.classes.size());
        if (inserted) out.classes.push_back(std::move(proto));
        out.classes[it->second].achieved.push_back(e);
        key_by_index.push_back(key);
    }

    // stabilized: one more full period of N-values introduced no new class
    // and repeated the previous period's class pattern
    const int plen = static_cast<int>(f.cf().period_len());
    const int window_lo = N_max - plen + 1;
    bool stable = true;
    for (const LimitClass& c : out.classes)
        if (c.achieved.front().N >= window_lo) stable = false;
    std::map<std::pair<int, int>, std::string> key_at;
    for (std::size_t i = 0; i < schedule.size(); ++i)
        key_at[{schedule[i].N, schedule[i].l}] = key_by_index[i];
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i].N < window_lo) continue;
        auto prev = key_at.find({schedule[i].N - plen, schedule[i].l});
        if (prev == key_at.end() || prev->second != key_by_index[i])
            stable = false;
    }
    out.stabilized = stable;
    return out;
}

// --- Mobius action -------------------------------------------------------

Mobius Mobius::identity(const Field& F) {
    return Mobius{Poly::one(F), Poly::zero(F), Poly::zero(F), Poly::one(F)};
}

Mobius Mobius::translation(const Poly& t) {
    const Field& F = t.field();
    return Mobius{Poly::one(F), t, Poly::zero(F), Poly::one(F)};
}

Mobius Mobius::inversion(const Field& F) {
    return Mobius{Poly::zero(F), Poly::one(F), Poly::one(F), Poly::zero(F)};
}

Mobius Mobius::compose(const Mobius& o) const {
    return Mobius{a * o.a + b * o.c, a * o.b + b * o.d,
                  c * o.a + d * o.c, c * o.b + d * o.d};
}

namespace {

struct MobiusState {
    Poly a, b, c, d;

    void normalize(const Field& F) {
        const Poly* first = nullptr;
        for (const Poly* p : {&a, &b, &c, &d})
            if (!p->is_zero()) {
                first = p;
                break;
            }
        if (!first) return;
        const Fq s = F.inv(first->lead());
        if (s == 1) return;
        a = a.scaled(s);
        b = b.scaled(s);
        c = c.scaled(s);
        d = d.scaled(s);
    }

    int max_degree() const {
        return std::max(std::max(a.degree(), b.degree()),
                        std::max(c.degree(), d.degree()));
    }

    std::string key() const {
        std::string k;
        for (const Poly* p : {&a, &b, &c, &d}) {
            for (Fq coeff : p->coeffs()) {
                k += std::to_string(coeff);
                k += '.';
            }
            k += ';';
        }
        return k;
    }
};

void check_unit_det(const Mobius& M) {
    const Poly det = M.a * M.d - M.b * M.c;
    if (det.is_zero() || det.degree() != 0)
        throw domain_error("matrix determinant must be a nonzero scalar");
}

// Exact Mobius action on a quadratic handle. The state g_i = M_i(f_{j_i})
// walks a Gosper-style automaton: a partial quotient is emitted when the
// image of the input ball a_j + B(q^-deg(a_{j+1})) has radius < 1 (so its
// polynomial part is constant on the ball), otherwise one input quotient is
// absorbed. States repeat because f's complete quotients do; a repeat of
// (M, j mod period) certifies the output period.
RealHandle pgl_quadratic(const RealHandle& f, const Mobius& M) {
    const Field& F = f.field();
    const CFExpansion& cf = f.cf();
    const std::size_t pre = *cf.period_start;
    const std::size_t plen = cf.period_len();
    const auto j_class = [&](std::size_t j) {
        return j < pre ? j : pre + (j - pre) % plen;
    };

    MobiusState m{M.a, M.b, M.c, M.d};
    m.normalize(F);
    std::size_t j = 0;
    bool have_b0 = false;
    Poly b0(F);
    std::vector<Poly> emitted;
    std::map<std::pair<std::string, std::size_t>, std::size_t> seen;

    constexpr std::size_t kStepCap = 20000;
    constexpr int kDegreeCap = 512;
    for (std::size_t step = 0; step < kStepCap; ++step) {
        if (m.max_degree() > kDegreeCap)
            throw domain_error("period re-detection failure: state growth");
        const Poly& aj = cf.term(j);
        const int dnext = cf.term(j + 1).degree();
        const Poly den0 = m.c * aj + m.d;
        bool can_emit = !den0.is_zero();
        if (can_emit && !m.c.is_zero() &&
            m.c.degree() - dnext >= den0.degree())
            can_emit = false;
        if (can_emit && -dnext - 2 * den0.degree() >= 0) // image radius >= 1
            can_emit = false;
        if (!can_emit) {
            // absorb: f_j = (a_j f_{j+1} + 1) / f_{j+1}
            MobiusState nm;
            nm.a = m.a * aj + m.b;
            nm.b = m.a;
            nm.c = m.c * aj + m.d;
            nm.d = m.c;
            m = nm;
            m.normalize(F);
            ++j;
            continue;
        }
        const Poly num0 = m.a * aj + m.b;
        const Poly bi = num0.divmod(den0).first; // polypart of the image center
        if (have_b0 && bi.degree() < 1)
            throw domain_error("period re-detection failure: constant quotient");
        if (have_b0)
            emitted.push_back(bi);
        else {
            b0 = bi;
            have_b0 = true;
        }
        MobiusState nm;
        nm.a = m.c;
        nm.b = m.d;
        nm.c = m.a - bi * m.c;
        nm.d = m.b - bi * m.d;
        m = nm;
        m.normalize(F);

        auto key = std::make_pair(m.key(), j_class(j));
        auto [it, inserted] = seen.try_emplace(key, emitted.size());
        if (!inserted) {
            const std::size_t i0 = it->second;
            return RealHandle::quadratic(
                CFExpansion(b0, emitted, i0 + 1));
        }
    }
    throw domain_error("period re-detection failure: no repeat within budget");
}

} // namespace

RealHandle pgl_transform(const RealHandle& f, const Mobius& M) {
    check_unit_det(M);
    switch (f.kind()) {
        case RealHandle::Kind::rational: {
            const Poly num = M.a * f.num() + M.b * f.den();
            const Poly den = M.c * f.num() + M.d * f.den();
            if (den.is_zero())
                throw domain_error("transform sends f to infinity");
            return RealHandle::rational(num, den);
        }
        case RealHandle::Kind::quadratic:
            return pgl_quadratic(f, M);
        case RealHandle::Kind::truncated:
        default: {
            const LaurentSeries& ls = f.series();
            const LaurentSeries num = LaurentSeries::from_poly(M.a) * ls +
                                      LaurentSeries::from_poly(M.b);
            const LaurentSeries den = LaurentSeries::from_poly(M.c) * ls +
                                      LaurentSeries::from_poly(M.d);
            const int den_top = den.has_terms() ? den.top() : 0;
            const int target = (ls.exact() ? -8 : ls.floor_log()) -
                               2 * std::max(0, den_top) - 4;
            return RealHandle::truncated(num * den.inv(target));
        }
    }
}

} // namespace qj
