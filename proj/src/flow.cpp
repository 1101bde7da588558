#include "qmod/flow.hpp"

#include <algorithm>
#include <cmath>

namespace qmod {

CRep zero_crep(const Quiver& q, const DimensionVector& d) {
    CRep r;
    r.dim = d;
    for (const auto& a : q.arrows)
        r.mats.push_back(Eigen::MatrixXcd::Zero(d[a.head], d[a.tail]));
    return r;
}

void validate_crep(const Quiver& q, const CRep& r) {
    detail::require_same_size(r.dim.size(), q.vertex_count(), "validate_crep");
    if (static_cast<int>(r.mats.size()) != q.arrow_count())
        throw StructuralError("complex representation: arrow count mismatch");
    for (int a = 0; a < q.arrow_count(); ++a) {
        if (r.mats[a].rows() != r.dim[q.arrows[a].head] ||
            r.mats[a].cols() != r.dim[q.arrows[a].tail])
            throw StructuralError("complex representation: matrix shape mismatch on arrow '" +
                                  q.arrows[a].name + "'");
        if (!r.mats[a].allFinite())
            throw DomainError("complex representation: non-finite entries on arrow '" +
                              q.arrows[a].name + "'");
    }
}

MomentValue moment_value(const Quiver& q, const CRep& r, const StabilityParam& theta) {
    validate_crep(q, r);
    detail::require_same_size(theta.size(), q.vertex_count(), "moment_value");
    MomentValue mu;
    for (int i = 0; i < q.vertex_count(); ++i)
        mu.push_back(Eigen::MatrixXcd::Identity(r.dim[i], r.dim[i]) *
                     static_cast<double>(theta[i]));
    for (int a = 0; a < q.arrow_count(); ++a) {
        const auto& m = r.mats[a];
        mu[q.arrows[a].head] += m * m.adjoint();
        mu[q.arrows[a].tail] -= m.adjoint() * m;
    }
    for (auto& m : mu) m = 0.5 * (m + m.adjoint().eval());
    return mu;
}

double energy(const Quiver& q, const CRep& r, const StabilityParam& theta) {
    double f = 0;
    for (const auto& m : moment_value(q, r, theta)) f += m.squaredNorm();
    return f;
}

std::vector<Eigen::MatrixXcd> energy_gradient(const Quiver& q, const CRep& r,
                                              const StabilityParam& theta) {
    MomentValue mu = moment_value(q, r, theta);
    std::vector<Eigen::MatrixXcd> g;
    for (int a = 0; a < q.arrow_count(); ++a)
        g.push_back(4.0 * (mu[q.arrows[a].head] * r.mats[a] -
                           r.mats[a] * mu[q.arrows[a].tail]));
    return g;
}

FlowResult flow_to_critical(const Quiver& q, const CRep& start, const StabilityParam& theta,
                            const FlowOptions& opts) {
    validate_crep(q, start);
    FlowResult out;
    out.limit = start;
    double f = energy(q, out.limit, theta);
    out.energy_trace.push_back(f);

    const double armijo = 1e-4;
    double step = opts.initial_step;
    long long it = 0;
    for (; it < opts.max_iters; ++it) {
        MomentValue mu = moment_value(q, out.limit, theta);
        double g2 = 0;
        for (int a = 0; a < q.arrow_count(); ++a)
            g2 += 16.0 * (mu[q.arrows[a].head] * out.limit.mats[a] -
                          out.limit.mats[a] * mu[q.arrows[a].tail])
                             .squaredNorm();
        if (std::sqrt(g2) < opts.tol) {
            out.converged = true;
            break;
        }
        // The descent direction is the infinitesimal action of -4 mu, so the
        // update moves along the symmetry orbit: phi_a gets conjugated by
        // exp(-4 s mu). This agrees with the Euler step to first order and
        // keeps orbit invariants (characteristic polynomials of loops) exact.
        std::vector<Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>> es;
        es.reserve(mu.size());
        for (const auto& m : mu) es.emplace_back(m);
        auto exp_mu = [&](int v, double s) {
            Eigen::VectorXd lam = es[v].eigenvalues();
            Eigen::VectorXcd d(lam.size());
            for (int i = 0; i < lam.size(); ++i) d(i) = std::exp(-4.0 * s * lam(i));
            return (es[v].eigenvectors() * d.asDiagonal() *
                    es[v].eigenvectors().adjoint())
                .eval();
        };
        step *= 2.0;
        bool accepted = false;
        for (int bt = 0; bt < 80; ++bt) {
            CRep trial = out.limit;
            for (int a = 0; a < q.arrow_count(); ++a)
                trial.mats[a] = exp_mu(q.arrows[a].head, step) * out.limit.mats[a] *
                                exp_mu(q.arrows[a].tail, -step);
            double ft = energy(q, trial, theta);
            if (ft <= f - armijo * step * g2) {
                out.limit = std::move(trial);
                f = ft;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break; // no descent representable at this scale
        out.energy_trace.push_back(f);
    }
    out.iterations = it;

    MomentValue mu = moment_value(q, out.limit, theta);
    out.residual = 0;
    for (int a = 0; a < q.arrow_count(); ++a) {
        double c = (mu[q.arrows[a].head] * out.limit.mats[a] -
                    out.limit.mats[a] * mu[q.arrows[a].tail])
                       .norm();
        out.residual = std::max(out.residual, c);
    }
    for (int i = 0; i < q.vertex_count(); ++i) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mu[i]);
        std::vector<double> ev(es.eigenvalues().data(),
                               es.eigenvalues().data() + es.eigenvalues().size());
        out.beta_spectrum.push_back(std::move(ev));
    }
    return out;
}

HNType classify_critical(const FlowResult& f, const ClassifyOptions& opts) {
    if (f.residual > opts.residual_tol)
        throw DomainError("classify_critical: residual " + std::to_string(f.residual) +
                          " exceeds tolerance; flow has not reached a critical point");
    // pool eigenvalues from all vertices, cluster by gaps
    std::vector<double> pool;
    for (const auto& ev : f.beta_spectrum) pool.insert(pool.end(), ev.begin(), ev.end());
    if (pool.empty())
        throw DomainError("classify_critical: empty spectrum");
    std::sort(pool.begin(), pool.end());
    std::vector<std::pair<double, double>> clusters; // [lo, hi]
    for (double v : pool) {
        if (clusters.empty() || v - clusters.back().second > opts.cluster_tol)
            clusters.push_back({v, v});
        else
            clusters.back().second = v;
    }
    for (const auto& [lo, hi] : clusters)
        if (hi - lo > opts.cluster_tol)
            throw DomainError("classify_critical: degenerate cluster of width " +
                              std::to_string(hi - lo) + " at value " + std::to_string(lo));

    HNType t;
    // decreasing cluster value
    for (auto it = clusters.rbegin(); it != clusters.rend(); ++it) {
        std::vector<long long> piece(f.beta_spectrum.size(), 0);
        for (size_t i = 0; i < f.beta_spectrum.size(); ++i)
            for (double v : f.beta_spectrum[i])
                if (v >= it->first - opts.cluster_tol / 2 && v <= it->second + opts.cluster_tol / 2)
                    ++piece[i];
        t.pieces.push_back(DimensionVector(std::move(piece)));
    }
    return t;
}

} // namespace qmod
