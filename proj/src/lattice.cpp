#include "qj/lattice.hpp"

#include <algorithm>

namespace qj {

namespace {

// Index of the last partial quotient of a complete (rational) expansion,
// or -1 for handles with unbounded expansions.
long long last_index(const RealHandle& f) {
    const CFExpansion& cf = f.cf();
    if (cf.complete) return static_cast<long long>(cf.partials.size());
    return -1;
}

} // namespace

EpsInfo eps_info(const RealHandle& f, EpsIndex e) {
    if (e.N < 0) throw domain_error("breakpoint index N must be >= 0");
    if (e.l < 1) throw domain_error("breakpoint parameter l must be >= 1");
    const long long K = last_index(f);
    const ConvergentTable& tab = f.convergents();
    if (K >= 0 && e.N == K) {
        const int sK = tab.degsum(static_cast<std::size_t>(K));
        const int log_eps = 1 - e.l - sK;
        if (log_eps >= 0)
            throw domain_error("eps must be < 1 (raise l)");
        return EpsInfo{e, log_eps, sK, true};
    }
    if (K >= 0 && e.N > K)
        throw domain_error("breakpoint N exceeds the expansion length");
    // needs a_{N+1}; throws precision_error on truncated handles
    const int deg_next = f.cf().term(static_cast<std::size_t>(e.N) + 1).degree();
    if (e.l > deg_next)
        throw domain_error("l exceeds deg(a_{N+1}) = " + std::to_string(deg_next));
    const int sN = tab.degsum(static_cast<std::size_t>(e.N));
    const int log_eps = e.l - (sN + deg_next);
    if (log_eps >= 0)
        throw domain_error("eps must be < 1 (only l < deg(a_1) is valid at N = 0)");
    return EpsInfo{e, log_eps, sN, false};
}

std::vector<EpsIndex> eps_schedule(const RealHandle& f, int N_max) {
    if (N_max < 0) throw domain_error("N_max must be >= 0");
    const long long K = last_index(f);
    // log_eps -> index; equal-eps collisions keep the larger N (they cannot
    // occur for valid l, but the canonical choice is pinned here)
    std::map<int, EpsIndex, std::greater<int>> by_log;
    for (int N = 0; N <= N_max; ++N) {
        if (K >= 0 && N >= K) break;
        const int deg_next = f.cf().term(static_cast<std::size_t>(N) + 1).degree();
        for (int l = deg_next; l >= 1; --l) {
            EpsIndex e{N, l};
            try {
                by_log.insert_or_assign(eps_info(f, e).log_eps, e);
            } catch (const domain_error&) {
                // eps >= 1 at the N = 0 boundary; skipped
            }
        }
    }
    if (K >= 0 && K <= N_max) {
        const int sK = f.convergents().degsum(static_cast<std::size_t>(K));
        EpsIndex ideal{static_cast<int>(K), sK >= 1 ? 1 : 2};
        by_log.insert_or_assign(eps_info(f, ideal).log_eps, ideal);
    }
    std::vector<EpsIndex> out;
    out.reserve(by_log.size());
    for (const auto& [log, e] : by_log) out.push_back(e);
    return out;
}

LambdaBasis lambda_basis(const RealHandle& f, EpsIndex e, int deg_bound) {
    const EpsInfo info = eps_info(f, e);
    const ConvergentTable& tab = f.convergents();
    const long long K = last_index(f);
    LambdaBasis basis{info, deg_bound, {}};

    auto push_block = [&](int n, int r_count) {
        // entries T^r qbar_n for r = 0 .. r_count-1, degree-capped
        const ConvergentRow row = tab.row(static_cast<std::size_t>(n));
        for (int r = 0; r < r_count; ++r) {
            const int degree = row.degsum + r;
            if (degree > deg_bound) break;
            BasisEntry entry;
            entry.r = r;
            entry.n = n;
            entry.value = row.qbar.shifted(r);
            entry.degree = degree;
            if (K < 0 || n < K)
                entry.errlog = r - tab.degsum(static_cast<std::size_t>(n) + 1);
            basis.entries.push_back(std::move(entry));
        }
    };

    for (int n = info.ideal ? static_cast<int>(K) : e.N;; ++n) {
        if (tab.degsum(static_cast<std::size_t>(n)) > deg_bound) break;
        if (K >= 0 && n == K) {
            push_block(n, deg_bound - tab.degsum(static_cast<std::size_t>(K)) + 1);
            break;
        }
        int r_count;
        if (n == e.N && !info.ideal)
            r_count = e.l;
        else
            r_count = f.cf().term(static_cast<std::size_t>(n) + 1).degree();
        push_block(n, r_count);
    }
    return basis;
}

std::vector<Poly> lambda_member_oracle(const RealHandle& f, EpsIndex e,
                                       int deg_bound) {
    const EpsInfo info = eps_info(f, e);
    const int L = info.log_eps;
    // need lambda*f known down to exponent L: floor -P + deg_bound <= L - 1
    const int P = deg_bound - L + 1;
    const LaurentSeries fl = f.laurent(P);
    std::vector<Poly> members;
    for_each_poly(f.field(), deg_bound, [&](const Poly& lambda) {
        const LaurentSeries prod = fl * LaurentSeries::from_poly(lambda);
        // member iff no nonzero coefficient at exponents [L, -1]: then
        // ||lambda f|| <= q^(L-1) < eps, else >= q^L = eps
        for (int k = L; k <= -1; ++k)
            if (prod.coeff(k) != 0) return;
        members.push_back(lambda);
    });
    return members;
}

bool LatticeElement::is_zero() const {
    for (const auto& [n, c] : comps)
        if (!c.is_zero()) return false;
    return true;
}

int LatticeElement::top_block() const {
    int top = -1;
    for (const auto& [n, c] : comps)
        if (!c.is_zero()) top = std::max(top, n);
    if (top < 0) throw domain_error("zero lattice element has no top block");
    return top;
}

Poly lattice_value(const LatticeElement& elem, const ConvergentTable& table) {
    Poly acc(table.cf().field());
    for (const auto& [n, c] : elem.comps)
        if (!c.is_zero())
            acc = acc + c * table.row(static_cast<std::size_t>(n)).qbar;
    return acc;
}

Poly lambda_dual(const LatticeElement& elem, const ConvergentTable& table) {
    Poly acc(table.cf().field());
    for (const auto& [n, c] : elem.comps)
        if (!c.is_zero())
            acc = acc + c * table.row(static_cast<std::size_t>(n)).qbarperp;
    return acc;
}

AbsValue lambda_error(const LatticeElement& elem, const RealHandle& f) {
    if (elem.is_zero()) throw domain_error("error of the zero element");
    const ConvergentTable& tab = f.convergents();
    const long long K = last_index(f);
    bool any = false;
    int best = 0;
    for (const auto& [n, c] : elem.comps) {
        if (c.is_zero()) continue;
        if (K >= 0 && n == K) continue; // exact tail: ||c qbar_K f|| = 0
        const int cap = f.cf().term(static_cast<std::size_t>(n) + 1).degree() - 1;
        if (c.degree() > cap)
            throw domain_error("component degree exceeds the concise-form bound");
        const int errlog = c.degree() - tab.degsum(static_cast<std::size_t>(n) + 1);
        best = any ? std::max(best, errlog) : errlog;
        any = true;
    }
    // the per-entry error logs are pairwise distinct, so the ultrametric
    // maximum is attained exactly
    return any ? AbsValue::finite(best) : AbsValue::zero();
}

void lambda_enumerate_monic(
    const LambdaBasis& basis, int deg_bound,
    const std::function<void(const LatticeElement&, const Poly&)>& fn) {
    const Field& F = basis.entries.empty() ? Field::get(2, 1)
                                           : basis.entries[0].value.field();
    const int q = F.q();
    for (std::size_t j = 0; j < basis.entries.size(); ++j) {
        if (basis.entries[j].degree > deg_bound) break;
        // top coefficient 1, lower entries range over all of F_q
        std::vector<Fq> digits(j, 0);
        for (;;) {
            LatticeElement elem;
            Poly value = basis.entries[j].value;
            auto add_part = [&](std::size_t i, Fq coeff) {
                const BasisEntry& be = basis.entries[i];
                Poly& c = elem.comps.try_emplace(be.n, Poly(F)).first->second;
                c = c + Poly::monomial(F, be.r, coeff);
            };
            add_part(j, 1);
            for (std::size_t i = 0; i < j; ++i) {
                if (digits[i] == 0) continue;
                add_part(i, digits[i]);
                value = value + basis.entries[i].value.scaled(digits[i]);
            }
            fn(elem, value);
            // counting order: entry 0 varies fastest
            std::size_t pos = 0;
            while (pos < j) {
                digits[pos] = static_cast<Fq>((digits[pos] + 1) % q);
                if (digits[pos] != 0) break;
                ++pos;
            }
            if (pos == j) break;
        }
        if (j == 63) throw domain_error("enumeration too large"); // 2^64 guard
    }
}

} // namespace qj
