#include "qmod/supermixed.hpp"

#include <algorithm>

namespace qmod {

std::vector<std::string> validate_supermixed(const Quiver& q, const SymmetricStructure& s) {
    std::vector<std::string> bad;
    int nv = q.vertex_count(), na = q.arrow_count();
    if (static_cast<int>(s.vertex_involution.size()) != nv ||
        static_cast<int>(s.vertex_signs.size()) != nv) {
        bad.push_back("vertex maps do not cover every vertex");
        return bad;
    }
    if (static_cast<int>(s.arrow_involution.size()) != na ||
        static_cast<int>(s.arrow_signs.size()) != na) {
        bad.push_back("arrow maps do not cover every arrow");
        return bad;
    }
    auto vname = [&](int i) { return q.vertices[i]; };
    auto aname = [&](int a) { return q.arrows[a].name; };

    for (int i = 0; i < nv; ++i) {
        int si = s.vertex_involution[i];
        if (si < 0 || si >= nv) {
            bad.push_back("vertex involution out of range at " + vname(i));
            continue;
        }
        if (s.vertex_involution[si] != i)
            bad.push_back("vertex involution not self-inverse at " + vname(i));
        if (s.vertex_signs[i] != 1 && s.vertex_signs[i] != -1)
            bad.push_back("vertex sign at " + vname(i) + " must be +1 or -1");
        else if (s.vertex_signs[i] * s.vertex_signs[si] != 1)
            bad.push_back("vertex sign product on orbit {" + vname(i) + "," + vname(si) +
                          "} is not +1");
    }
    for (int a = 0; a < na; ++a) {
        int sa = s.arrow_involution[a];
        if (sa < 0 || sa >= na) {
            bad.push_back("arrow involution out of range at " + aname(a));
            continue;
        }
        if (s.arrow_involution[sa] != a)
            bad.push_back("arrow involution not self-inverse at " + aname(a));
        if (s.arrow_signs[a] != 1 && s.arrow_signs[a] != -1)
            bad.push_back("arrow sign at " + aname(a) + " must be +1 or -1");
        else if (s.arrow_signs[a] * s.arrow_signs[sa] != 1)
            bad.push_back("arrow sign product on orbit {" + aname(a) + "," + aname(sa) +
                          "} is not +1");
        // sigma t(a) = h(sigma a) and sigma h(a) = t(sigma a)
        if (s.vertex_involution[q.arrows[a].tail] != q.arrows[sa].head)
            bad.push_back("sigma t(" + aname(a) + ") != h(sigma " + aname(a) + ")");
        if (s.vertex_involution[q.arrows[a].head] != q.arrows[sa].tail)
            bad.push_back("sigma h(" + aname(a) + ") != t(sigma " + aname(a) + ")");
        // fixed-arrow rule
        if (q.arrows[a].tail == s.vertex_involution[q.arrows[a].head] && sa != a)
            bad.push_back("arrow " + aname(a) + " has t(a) = sigma h(a) but is not fixed");
    }
    return bad;
}

VertexClassification VertexClassification::make(const Quiver& q, const SymmetricStructure& s) {
    VertexClassification c;
    for (int i = 0; i < q.vertex_count(); ++i) {
        int si = s.vertex_involution[i];
        if (si == i) {
            (s.vertex_signs[i] == 1 ? c.O : c.S).push_back(i);
        } else if (i < si) {
            c.G.push_back(i);
        }
    }
    return c;
}

Rational isotropic_slope(const StabilityParam& theta, const VertexClassification& cls,
                         const DimensionVector& d) {
    detail::require_same_size(theta.size(), d.size(), "isotropic_slope");
    for (int i : cls.O)
        if (theta[i] != 0) throw DomainError("isotropic_slope: theta nonzero on an O vertex");
    for (int i : cls.S)
        if (theta[i] != 0) throw DomainError("isotropic_slope: theta nonzero on an S vertex");
    long long num = 0, den = 0;
    for (int i : cls.G) {
        num += theta[i] * d[i];
        den += d[i];
    }
    if (den == 0)
        throw DomainError("isotropic_slope: dim' = 0, slope undefined");
    return Rational(num, den);
}

long long example_codim(long long n, long long n1) {
    if (n1 < 1 || 2 * n1 > n)
        throw DomainError("example_codim: need 1 <= n1 and 2 n1 <= n");
    long long n2 = n - 2 * n1;
    return (n * n + n + 2) / 2 - n1 * n1 - n1 - n2 * (n2 - 1) / 2 - 1;
}

std::vector<ExampleStratum> example_strata(long long n, long long theta1, long long theta2) {
    if (n < 1) throw DomainError("example_strata: n must be >= 1");
    if (theta1 == theta2)
        throw DomainError("example_strata: trivial character, no strata");
    std::vector<ExampleStratum> out;
    for (long long n1 = 1; 2 * n1 <= n; ++n1) {
        long long n2 = n - 2 * n1;
        GroupSpec levi{{{GroupFactor::Kind::GL, n1}, {GroupFactor::Kind::O, n2}}};
        long long d = example_codim(n, n1);
        if (theta1 < theta2) {
            out.push_back({1, n1, n2, d, levi});
            out.push_back({2, n1, n2, d, levi});
        } else {
            out.push_back({2, n1, n2, d, levi});
        }
    }
    return out;
}

DimensionVector sigma_dual(const SymmetricStructure& s, const DimensionVector& d) {
    DimensionVector out(std::vector<long long>(d.size(), 0));
    for (int v = 0; v < d.size(); ++v) out.entries[s.vertex_involution[v]] = d[v];
    return out;
}

std::vector<std::string> validate_isotropic_hn_type(const Quiver& q,
                                                    const SymmetricStructure& s,
                                                    const StabilityParam& theta,
                                                    const DimensionVector& ambient,
                                                    const IsotropicHNType& t) {
    std::vector<std::string> bad;
    VertexClassification cls = VertexClassification::make(q, s);
    DimensionVector sum(std::vector<long long>(ambient.size(), 0));
    Rational ambient_slope = isotropic_slope(theta, cls, ambient);
    Rational prev;
    for (size_t k = 0; k < t.pieces.size(); ++k) {
        const DimensionVector& p = t.pieces[k];
        if (p.is_zero()) {
            bad.push_back("piece " + std::to_string(k) + " is zero");
            continue;
        }
        Rational sl = isotropic_slope(theta, cls, p);
        if (sl <= ambient_slope)
            bad.push_back("piece " + std::to_string(k) + " has slope <= ambient slope");
        if (k > 0 && !(sl < prev))
            bad.push_back("piece slopes not strictly decreasing at " + std::to_string(k));
        prev = sl;
        sum = sum + p + sigma_dual(s, p);
    }
    if (!(sigma_dual(s, t.residue) == t.residue))
        bad.push_back("residue is not sigma self-dual");
    if (!(sum + t.residue == ambient))
        bad.push_back("pieces, duals and residue do not sum to the ambient vector");
    return bad;
}

TruncatedSeries example_series(long long n, long long theta1, long long theta2,
                               int trunc_degree, const BaseCaseProvider& base) {
    GroupSpec g{{{GroupFactor::Kind::GL, 1}, {GroupFactor::Kind::O, n}}};
    TruncatedSeries out = classifying_series(g, trunc_degree);
    for (const auto& st : example_strata(n, theta1, theta2)) {
        auto b = base(st.n1);
        if (!b)
            throw DomainError("example_series: unresolved base case (n1=" +
                              std::to_string(st.n1) + ", levi=" + group_to_string(st.levi) +
                              ")");
        if (2 * st.codim > trunc_degree) continue;
        out -= TruncatedSeries::monomial(static_cast<int>(2 * st.codim), 1, trunc_degree) * *b;
    }
    return out;
}

namespace {

void require_odd_field(int q) {
    if (q % 2 == 0)
        throw DomainError("supermixed forms need an odd field, got q=" + std::to_string(q));
}

// Pairing matrix P_x between V_x and V_{sigma(x)}: C(u,v) = u^T P_x v.
// Two-element orbits pair by the identity from the representative side and
// by eps * identity from the other; fixed vertices carry the split form.
FFMatrix pairing_matrix(const SymmetricStructure& s, const DimensionVector& d,
                        int x, int fq) {
    int sx = s.vertex_involution[x];
    int nx = static_cast<int>(d[x]);
    int nsx = static_cast<int>(d[sx]);
    FFMatrix p(nx, nsx, fq);
    if (sx != x) {
        if (nx != nsx)
            throw StructuralError("pairing_matrix: dimensions differ across a sigma-orbit");
        bool rep_side = x < sx;
        uint8_t v = rep_side ? 1 : static_cast<uint8_t>(s.vertex_signs[x] == 1 ? 1 : fq - 1);
        for (int i = 0; i < nx; ++i) p.set(i, i, v);
        return p;
    }
    if (s.vertex_signs[x] == 1) {
        for (int i = 0; i < nx; ++i) p.set(i, nx - 1 - i, 1);
    } else {
        require_odd_field(fq);
        if (nx % 2 != 0)
            throw StructuralError("pairing_matrix: symplectic vertex of odd dimension");
        for (int i = 0; i < nx / 2; ++i) p.set(i, nx - 1 - i, 1);
        for (int i = nx / 2; i < nx; ++i) p.set(i, nx - 1 - i, static_cast<uint8_t>(fq - 1));
    }
    return p;
}

} // namespace

bool supermixed_compatible(const Quiver& q, const SymmetricStructure& s, const FFRep& r) {
    require_odd_field(r.q);
    int fq = r.q;
    for (int a = 0; a < q.arrow_count(); ++a) {
        int sa = s.arrow_involution[a];
        // phi_a^T P_{h(a)} + P_{t(a)} phi_{sa} = 0
        FFMatrix ph = pairing_matrix(s, r.dim, q.arrows[a].head, fq);
        FFMatrix pt = pairing_matrix(s, r.dim, q.arrows[a].tail, fq);
        const FFMatrix& f = r.mats[a];
        const FFMatrix& g = r.mats[sa];
        // lhs(i,j) = sum_k f(k,i) ph(k,j) + sum_k pt(i,k) g(k,j)
        if (f.cols() != pt.rows() || g.cols() != ph.cols()) return false;
        for (int i = 0; i < pt.rows(); ++i)
            for (int j = 0; j < ph.cols(); ++j) {
                int v = 0;
                for (int k = 0; k < f.rows(); ++k) v += f.at(k, i) * ph.at(k, j);
                for (int k = 0; k < g.rows(); ++k) v += pt.at(i, k) * g.at(k, j);
                if (v % fq != 0) return false;
            }
    }
    return true;
}

namespace {

bool step_phi_stable(const Quiver& q, const FFRep& r, const std::vector<Subspace>& step) {
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Subspace& wt = step[q.arrows[a].tail];
        const Subspace& wh = step[q.arrows[a].head];
        for (int i = 0; i < wt.basis.rows(); ++i)
            if (!in_span(wh.basis, r.mats[a].apply(wt.basis.row(i)))) return false;
    }
    return true;
}

bool step_isotropic(const Quiver& q, const SymmetricStructure& s, const DimensionVector& d,
                    int fq, const std::vector<Subspace>& step) {
    for (int x = 0; x < q.vertex_count(); ++x) {
        int sx = s.vertex_involution[x];
        FFMatrix p = pairing_matrix(s, d, x, fq);
        const Subspace& wx = step[x];
        const Subspace& wsx = step[sx];
        for (int i = 0; i < wx.basis.rows(); ++i) {
            auto u = wx.basis.row(i);
            for (int j = 0; j < wsx.basis.rows(); ++j) {
                auto v = wsx.basis.row(j);
                int val = 0;
                for (int a = 0; a < p.rows(); ++a)
                    for (int b = 0; b < p.cols(); ++b) val += u[a] * p.at(a, b) * v[b];
                if (val % fq != 0) return false;
            }
        }
    }
    return true;
}

// (W^perp)_x = { u in V_x : C(u, W_{sigma x}) = 0 }.
std::vector<Subspace> perp_step(const Quiver& q, const SymmetricStructure& s,
                                const DimensionVector& d, int fq,
                                const std::vector<Subspace>& step) {
    std::vector<Subspace> out;
    for (int x = 0; x < q.vertex_count(); ++x) {
        int sx = s.vertex_involution[x];
        FFMatrix p = pairing_matrix(s, d, x, fq);
        const Subspace& wsx = step[sx];
        FFMatrix rows(wsx.basis.rows(), static_cast<int>(d[x]), fq);
        for (int j = 0; j < wsx.basis.rows(); ++j) {
            auto v = wsx.basis.row(j);
            for (int a = 0; a < p.rows(); ++a) {
                int val = 0;
                for (int b = 0; b < p.cols(); ++b) val += p.at(a, b) * v[b];
                rows.set(j, a, static_cast<uint8_t>(val % fq));
            }
        }
        out.push_back(kernel_of(rows));
    }
    return out;
}

} // namespace

bool check_isotropic_flag(const Quiver& q, const SymmetricStructure& s, const FFRep& r,
                          const IsotropicFlag& flag) {
    require_odd_field(r.q);
    int nv = q.vertex_count();
    for (const auto& step : flag.steps) {
        if (static_cast<int>(step.size()) != nv)
            throw StructuralError("check_isotropic_flag: step misses vertices");
        for (int v = 0; v < nv; ++v)
            if (step[v].ambient() != r.dim[v])
                throw StructuralError("check_isotropic_flag: subspace ambient dimension "
                                      "does not match the representation");
    }
    for (size_t k = 0; k + 1 < flag.steps.size(); ++k)
        for (int v = 0; v < nv; ++v)
            if (!subspace_contained(flag.steps[k][v], flag.steps[k + 1][v])) return false;

    for (const auto& step : flag.steps) {
        if (!step_phi_stable(q, r, step)) return false;
        if (!step_isotropic(q, s, r.dim, r.q, step)) return false;
        if (!step_phi_stable(q, r, perp_step(q, s, r.dim, r.q, step))) return false;
    }
    return true;
}

} // namespace qmod
