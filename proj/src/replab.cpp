#include "qmod/replab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace qmod {

long long rep_space_dim(const Quiver& q, const DimensionVector& d) {
    detail::require_same_size(d.size(), q.vertex_count(), "rep_space_dim");
    long long s = 0;
    for (const auto& a : q.arrows) s += d[a.tail] * d[a.head];
    return s;
}

double rep_count(const Quiver& q, const DimensionVector& d, int fq) {
    return std::pow(static_cast<double>(fq), static_cast<double>(rep_space_dim(q, d)));
}

FFRep zero_rep(const Quiver& q, const DimensionVector& d, int fq) {
    FFRep r;
    r.q = fq;
    r.dim = d;
    for (const auto& a : q.arrows)
        r.mats.emplace_back(static_cast<int>(d[a.head]), static_cast<int>(d[a.tail]), fq);
    return r;
}

void for_each_rep(const Quiver& q, const DimensionVector& d, int fq, double budget,
                  const std::function<void(const FFRep&)>& fn) {
    double count = rep_count(q, d, fq);
    if (count > budget)
        throw BudgetError("enumerate_reps: " + std::to_string(count) +
                              " representations exceed budget of " + std::to_string(budget),
                          count);
    FFRep r = zero_rep(q, d, fq);
    // flat odometer over all matrix entries, arrow-major then row-major
    struct Slot { int arrow, i, j; };
    std::vector<Slot> slots;
    for (int a = 0; a < q.arrow_count(); ++a)
        for (int i = 0; i < r.mats[a].rows(); ++i)
            for (int j = 0; j < r.mats[a].cols(); ++j) slots.push_back({a, i, j});
    while (true) {
        fn(r);
        size_t t = slots.size();
        bool rolled = true;
        while (t > 0) {
            --t;
            const Slot& s = slots[t];
            uint8_t v = r.mats[s.arrow].at(s.i, s.j);
            if (v + 1 < fq) {
                r.mats[s.arrow].set(s.i, s.j, static_cast<uint8_t>(v + 1));
                for (size_t u = t + 1; u < slots.size(); ++u)
                    r.mats[slots[u].arrow].set(slots[u].i, slots[u].j, 0);
                rolled = false;
                break;
            }
        }
        if (rolled) break;
    }
}

namespace {

void check_enumeration_budget(const DimensionVector& d, int fq) {
    long long total = d.total();
    long long per_vertex_max = 0;
    for (long long x : d.entries) per_vertex_max = std::max(per_vertex_max, x);
    if (total > 12 || per_vertex_max > 8) {
        double c = std::pow(static_cast<double>(fq), static_cast<double>(total));
        throw BudgetError("subspace enumeration infeasible for dimension vector of total " +
                              std::to_string(total),
                          c);
    }
}

bool subrep_tuple_stable(const Quiver& q, const FFRep& r,
                         const std::vector<const Subspace*>& w) {
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Subspace& wt = *w[q.arrows[a].tail];
        const Subspace& wh = *w[q.arrows[a].head];
        for (int i = 0; i < wt.basis.rows(); ++i)
            if (!in_span(wh.basis, r.mats[a].apply(wt.basis.row(i)))) return false;
    }
    return true;
}

DimensionVector tuple_dim(const std::vector<const Subspace*>& w) {
    std::vector<long long> e;
    e.reserve(w.size());
    for (const Subspace* s : w) e.push_back(s->dim());
    return DimensionVector(std::move(e));
}

// RREF basis in a layout tuned for repeated membership tests: pivot columns
// precomputed, rows additionally packed as bitmasks when q = 2.
struct PackedBasis {
    int n = 0;
    int q = 2;
    std::vector<int> piv;                 // pivot column per row
    std::vector<uint32_t> bits;           // row bitmasks (q = 2 only)
    std::vector<std::vector<uint8_t>> rw; // raw rows (q > 2 only)

    static PackedBasis pack(const FFMatrix& m) {
        PackedBasis p;
        p.n = m.cols();
        p.q = m.field();
        for (int i = 0; i < m.rows(); ++i) {
            int pc = -1;
            for (int j = 0; j < p.n; ++j)
                if (m.at(i, j)) { pc = j; break; }
            if (pc < 0) continue;
            p.piv.push_back(pc);
            if (p.q == 2) {
                uint32_t b = 0;
                for (int j = 0; j < p.n; ++j)
                    if (m.at(i, j)) b |= (1u << j);
                p.bits.push_back(b);
            } else {
                p.rw.push_back(m.row(i));
            }
        }
        return p;
    }

    bool bits_in_span(uint32_t b) const {
        if (static_cast<int>(piv.size()) == n) return true;
        if (piv.empty()) return b == 0;
        for (size_t i = 0; i < piv.size(); ++i)
            if ((b >> piv[i]) & 1u) b ^= bits[i];
        return b == 0;
    }

    bool row_in_span(const uint8_t* v, std::vector<uint8_t>& scratch) const {
        if (static_cast<int>(piv.size()) == n) return true;
        if (piv.empty()) {
            for (int j = 0; j < n; ++j)
                if (v[j]) return false;
            return true;
        }
        scratch.assign(v, v + n);
        for (size_t i = 0; i < piv.size(); ++i) {
            int f = scratch[piv[i]];
            if (!f) continue;
            const uint8_t* row = rw[i].data();
            for (int j = piv[i]; j < n; ++j)
                scratch[j] = static_cast<uint8_t>((scratch[j] + (q - f) * row[j]) % q);
        }
        for (int j = 0; j < n; ++j)
            if (scratch[j]) return false;
        return true;
    }
};

// packed bases for every subspace list in the static cache, keyed like it
const std::vector<PackedBasis>& packed_subspaces(int q, int n) {
    static std::map<std::pair<int, int>, std::vector<PackedBasis>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(q, n);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::vector<PackedBasis> out;
    for (const Subspace& s : all_subspaces(q, n)) out.push_back(PackedBasis::pack(s.basis));
    return cache.emplace(key, std::move(out)).first->second;
}

// Enumerates the phi-stable subspace tuples of representations sharing one
// (dimension vector, field). All buffers are allocated once; scanning a
// representation only refills the flat image tables, so a census can reuse
// the scanner across millions of representations.
class TupleScanner {
public:
    TupleScanner(const Quiver& q, const DimensionVector& dim, int fq)
        : q_(&q), dim_(dim), fq_(fq) {
        check_enumeration_budget(dim, fq);
        nv_ = q.vertex_count();
        na_ = q.arrow_count();
        lists_.resize(nv_);
        packed_.resize(nv_);
        for (int v = 0; v < nv_; ++v) {
            lists_[v] = &all_subspaces(fq, static_cast<int>(dim[v]));
            packed_[v] = &packed_subspaces(fq, static_cast<int>(dim[v]));
        }
        row_off_.resize(na_);
        img_bits_.resize(na_);
        img_rows_.resize(na_);
        for (int a = 0; a < na_; ++a) {
            const auto& tail_list = *lists_[q.arrows[a].tail];
            auto& off = row_off_[a];
            off.reserve(tail_list.size() + 1);
            off.push_back(0);
            for (const auto& s : tail_list) off.push_back(off.back() + s.dim());
            long long nh = dim[q.arrows[a].head];
            if (fq == 2)
                img_bits_[a].assign(static_cast<size_t>(off.back()), 0);
            else
                img_rows_[a].assign(static_cast<size_t>(off.back()) * nh, 0);
        }
        idx_.assign(nv_, 0);
        tuple_.assign(nv_, nullptr);
    }

    const std::vector<Subspace>& list(int v) const { return *lists_[v]; }

    template <class Fn>
    void scan(const FFRep& r, Fn&& fn) {
        fill_images(r);
        std::fill(idx_.begin(), idx_.end(), 0);
        while (true) {
            bool stable = true;
            for (int a = 0; a < na_ && stable; ++a) {
                size_t ti = idx_[q_->arrows[a].tail];
                const PackedBasis& head =
                    (*packed_[q_->arrows[a].head])[idx_[q_->arrows[a].head]];
                int from = row_off_[a][ti], to = row_off_[a][ti + 1];
                if (fq_ == 2) {
                    const uint32_t* rb = img_bits_[a].data();
                    for (int i = from; i < to; ++i)
                        if (!head.bits_in_span(rb[i])) {
                            stable = false;
                            break;
                        }
                } else {
                    int nh = static_cast<int>(dim_[q_->arrows[a].head]);
                    const uint8_t* rr = img_rows_[a].data();
                    for (int i = from; i < to; ++i)
                        if (!head.row_in_span(rr + static_cast<size_t>(i) * nh, scratch_)) {
                            stable = false;
                            break;
                        }
                }
            }
            if (stable) {
                for (int v = 0; v < nv_; ++v) tuple_[v] = &(*lists_[v])[idx_[v]];
                fn(const_cast<const std::vector<const Subspace*>&>(tuple_));
            }
            int v = nv_ - 1;
            while (v >= 0) {
                if (++idx_[v] < lists_[v]->size()) break;
                idx_[v] = 0;
                --v;
            }
            if (v < 0) break;
        }
    }

private:
    void fill_images(const FFRep& r) {
        for (int a = 0; a < na_; ++a) {
            int tv = q_->arrows[a].tail;
            int nh = static_cast<int>(dim_[q_->arrows[a].head]);
            int nt = static_cast<int>(dim_[tv]);
            const auto& tail_list = *lists_[tv];
            if (fq_ == 2) {
                uint32_t phi_rows[32] = {0};
                for (int i = 0; i < nh; ++i) {
                    uint32_t b = 0;
                    for (int j = 0; j < nt; ++j)
                        if (r.mats[a].at(i, j)) b |= (1u << j);
                    phi_rows[i] = b;
                }
                const auto& tail_packed = *packed_[tv];
                uint32_t* out = img_bits_[a].data();
                for (size_t s = 0; s < tail_list.size(); ++s) {
                    uint32_t* o = out + row_off_[a][s];
                    const auto& rows = tail_packed[s].bits;
                    for (size_t i = 0; i < rows.size(); ++i) {
                        uint32_t y = 0;
                        for (int h = 0; h < nh; ++h)
                            y |= static_cast<uint32_t>(
                                     std::popcount(phi_rows[h] & rows[i]) & 1)
                                 << h;
                        o[i] = y;
                    }
                }
            } else {
                uint8_t* out = img_rows_[a].data();
                for (size_t s = 0; s < tail_list.size(); ++s) {
                    const FFMatrix& basis = tail_list[s].basis;
                    for (int i = 0; i < basis.rows(); ++i) {
                        const uint8_t* x = basis.row_ptr(i);
                        uint8_t* y =
                            out + (static_cast<size_t>(row_off_[a][s]) + i) * nh;
                        for (int h = 0; h < nh; ++h) {
                            int acc = 0;
                            for (int j = 0; j < nt; ++j) acc += r.mats[a].at(h, j) * x[j];
                            y[h] = static_cast<uint8_t>(acc % fq_);
                        }
                    }
                }
            }
        }
    }

    const Quiver* q_;
    DimensionVector dim_;
    int fq_, nv_ = 0, na_ = 0;
    std::vector<const std::vector<Subspace>*> lists_;
    std::vector<const std::vector<PackedBasis>*> packed_;
    std::vector<std::vector<int>> row_off_;       // per arrow: row offset per tail subspace
    std::vector<std::vector<uint32_t>> img_bits_; // q = 2: image rows as bitmasks
    std::vector<std::vector<uint8_t>> img_rows_;  // q > 2: image rows, nh bytes each
    std::vector<size_t> idx_;
    std::vector<const Subspace*> tuple_;
    std::vector<uint8_t> scratch_;
};

// scanners keyed by dimension vector, reused across representations
struct ScannerCache {
    const Quiver& q;
    int fq;
    std::map<std::vector<long long>, std::unique_ptr<TupleScanner>> scanners;

    TupleScanner& get(const DimensionVector& d) {
        auto it = scanners.find(d.entries);
        if (it == scanners.end())
            it = scanners.emplace(d.entries, std::make_unique<TupleScanner>(q, d, fq)).first;
        return *it->second;
    }
};

// Restriction of r to the subrep spanned by w, in the bases of w.
FFRep restrict_rep(const Quiver& q, const FFRep& r, const std::vector<const Subspace*>& w) {
    FFRep out;
    out.q = r.q;
    out.dim = tuple_dim(w);
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Subspace& wt = *w[q.arrows[a].tail];
        const Subspace& wh = *w[q.arrows[a].head];
        FFMatrix m(wh.dim(), wt.dim(), r.q);
        for (int j = 0; j < wt.dim(); ++j) {
            auto img = r.mats[a].apply(wt.basis.row(j));
            auto c = coords_in_basis(wh.basis, img);
            if (!c)
                throw ConsistencyError("restrict_rep: image escapes the subspace");
            for (int i = 0; i < wh.dim(); ++i) m.set(i, j, (*c)[i]);
        }
        out.mats.push_back(std::move(m));
    }
    return out;
}

// Quotient of r by the subrep w, in the non-pivot standard coordinates.
FFRep quotient_rep(const Quiver& q, const FFRep& r, const std::vector<const Subspace*>& w) {
    int nv = q.vertex_count();
    // per vertex: the non-pivot columns give quotient coordinates
    std::vector<std::vector<int>> coord_cols(nv);
    for (int v = 0; v < nv; ++v) {
        const FFMatrix& b = w[v]->basis;
        std::vector<char> is_piv(b.cols(), 0);
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j)
                if (b.at(i, j)) { is_piv[j] = 1; break; }
        for (int j = 0; j < b.cols(); ++j)
            if (!is_piv[j]) coord_cols[v].push_back(j);
    }
    FFRep out;
    out.q = r.q;
    std::vector<long long> dims;
    for (int v = 0; v < nv; ++v) dims.push_back(static_cast<long long>(coord_cols[v].size()));
    out.dim = DimensionVector(std::move(dims));
    for (int a = 0; a < q.arrow_count(); ++a) {
        int tv = q.arrows[a].tail, hv = q.arrows[a].head;
        const auto& tc = coord_cols[tv];
        const auto& hc = coord_cols[hv];
        FFMatrix m(static_cast<int>(hc.size()), static_cast<int>(tc.size()), r.q);
        for (size_t j = 0; j < tc.size(); ++j) {
            std::vector<uint8_t> e(static_cast<size_t>(r.mats[a].cols()), 0);
            e[tc[j]] = 1;
            auto img = reduce_against(w[hv]->basis, r.mats[a].apply(e));
            for (size_t i = 0; i < hc.size(); ++i)
                m.set(static_cast<int>(i), static_cast<int>(j), img[hc[i]]);
        }
        out.mats.push_back(std::move(m));
    }
    return out;
}

HNWitness hn_type_ff_impl(const Quiver& q, const FFRep& r, const StabilityParam& theta,
                          ScannerCache& cache) {
    const int nv = q.vertex_count();
    HNWitness out;
    FFRep cur = r;
    while (!cur.dim.is_zero()) {
        // maximal slope, then maximal total dimension, over nonzero subreps
        long long best_tv = 0, best_total = -1;
        int best_count = 0;
        std::vector<Subspace> best_copy;
        std::vector<long long> best_dims;
        cache.get(cur.dim).scan(cur, [&](const std::vector<const Subspace*>& w) {
            long long total = 0, tv = 0;
            for (int v = 0; v < nv; ++v) {
                long long k = w[v]->dim();
                total += k;
                tv += theta[v] * k;
            }
            if (total == 0) return;
            if (best_total >= 0) {
                long long lhs = tv * best_total, rhs = best_tv * total;
                if (lhs < rhs) return;
                if (lhs == rhs) {
                    if (total < best_total) return;
                    if (total == best_total) {
                        ++best_count;
                        return;
                    }
                }
            }
            best_tv = tv;
            best_total = total;
            best_count = 1;
            best_copy.clear();
            best_dims.clear();
            for (const Subspace* s : w) {
                best_copy.push_back(*s);
                best_dims.push_back(s->dim());
            }
        });
        if (best_count != 1)
            throw ConsistencyError(
                "hn_type_ff: maximal destabilizing subrepresentation is not unique (" +
                std::to_string(best_count) + " maximizers)");
        SubrepWitness step;
        step.bases = best_copy;
        step.dim = DimensionVector(best_dims);
        out.steps.push_back(step);
        out.type.pieces.push_back(step.dim);
        if (step.dim == cur.dim) break; // semistable stage
        std::vector<const Subspace*> tuple;
        for (const auto& s : step.bases) tuple.push_back(&s);
        cur = quotient_rep(q, cur, tuple);
    }
    if (out.type.pieces.empty()) out.type.pieces.push_back(r.dim); // zero rep of zero dim
    return out;
}

} // namespace

void for_each_subrep(const Quiver& q, const FFRep& r,
                     const std::function<void(const std::vector<const Subspace*>&)>& fn) {
    TupleScanner(q, r.dim, r.q).scan(r, fn);
}

std::vector<std::pair<DimensionVector, SubrepWitness>> subrep_dims(const Quiver& q,
                                                                   const FFRep& r) {
    std::map<DimensionVector, SubrepWitness> found;
    for_each_subrep(q, r, [&](const std::vector<const Subspace*>& w) {
        DimensionVector dv = tuple_dim(w);
        if (found.count(dv)) return;
        SubrepWitness wit;
        for (const Subspace* s : w) wit.bases.push_back(*s);
        wit.dim = dv;
        found.emplace(std::move(dv), std::move(wit));
    });
    return {found.begin(), found.end()};
}

bool check_subrep_witness(const Quiver& q, const FFRep& r, const SubrepWitness& w) {
    if (static_cast<int>(w.bases.size()) != q.vertex_count()) return false;
    std::vector<const Subspace*> tuple;
    for (const auto& s : w.bases) tuple.push_back(&s);
    for (int v = 0; v < q.vertex_count(); ++v)
        if (tuple[v]->ambient() != r.dim[v] || tuple[v]->dim() != w.dim[v]) return false;
    return subrep_tuple_stable(q, r, tuple);
}

HNWitness hn_type_ff(const Quiver& q, const FFRep& r, const StabilityParam& theta) {
    detail::require_same_size(theta.size(), q.vertex_count(), "hn_type_ff");
    ScannerCache cache{q, r.q, {}};
    return hn_type_ff_impl(q, r, theta, cache);
}

std::vector<std::pair<DimensionVector, FFRep>> jh_graded_ff(const Quiver& q, const FFRep& r,
                                                            const StabilityParam& theta,
                                                            TieBreak tie) {
    ScannerCache cache{q, r.q, {}};
    HNWitness hn = hn_type_ff_impl(q, r, theta, cache);
    if (!hn.type.trivial())
        throw DomainError("jh_graded_ff: representation is unstable");
    std::vector<std::pair<DimensionVector, FFRep>> out;
    const int nv = q.vertex_count();
    FFRep cur = r;
    // quotients by equal-slope subreps keep the ambient slope, so comparing
    // against cur.dim compares against the original slope throughout
    while (!cur.dim.is_zero()) {
        long long cur_tv = theta_value(theta, cur.dim);
        long long cur_total = cur.dim.total();
        long long best_total = -1;
        std::vector<Subspace> best_copy;
        std::vector<long long> best_dims;
        cache.get(cur.dim).scan(cur, [&](const std::vector<const Subspace*>& w) {
            long long total = 0, tv = 0;
            for (int v = 0; v < nv; ++v) {
                long long k = w[v]->dim();
                total += k;
                tv += theta[v] * k;
            }
            if (total == 0) return;
            if (tv * cur_total != cur_tv * total) return; // slope differs
            if (best_total >= 0) {
                if (total > best_total) return;
                if (total == best_total && tie == TieBreak::First) return;
            }
            best_total = total;
            best_copy.clear();
            best_dims.clear();
            for (const Subspace* s : w) {
                best_copy.push_back(*s);
                best_dims.push_back(s->dim());
            }
        });
        if (best_total < 0)
            throw ConsistencyError("jh_graded_ff: no equal-slope subrepresentation found");
        std::vector<const Subspace*> tuple;
        for (const auto& s : best_copy) tuple.push_back(&s);
        DimensionVector piece_dim(best_dims);
        out.emplace_back(piece_dim, restrict_rep(q, cur, tuple));
        if (piece_dim == cur.dim) break;
        cur = quotient_rep(q, cur, tuple);
    }
    return out;
}

long long gaussian_binomial(int n, int k, int q) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) {
        long long num = 1, den = 1;
        for (int e = 0; e < n - i; ++e) num *= q;
        for (int e = 0; e < i + 1; ++e) den *= q;
        r = r * (num - 1) / (den - 1);
    }
    return r;
}

namespace {

long long gaussian_multinomial(int n, const std::vector<long long>& parts, int q) {
    long long r = 1;
    int rem = n;
    for (long long p : parts) {
        r *= gaussian_binomial(rem, static_cast<int>(p), q);
        rem -= static_cast<int>(p);
    }
    return r;
}

struct ModelCounter {
    const Quiver& q;
    int fq;
    std::map<std::pair<std::vector<long long>, std::vector<long long>>, long long> memo;

    long long pow_q(long long e) const {
        long long r = 1;
        for (long long i = 0; i < e; ++i) r *= fq;
        return r;
    }

    // dim(Rep cap u_P): blocks mapping a later piece at the tail into an
    // earlier piece at the head.
    long long upper_block_dim(const HNType& t) const {
        long long s = 0;
        for (size_t k = 0; k < t.pieces.size(); ++k)
            for (size_t l = k + 1; l < t.pieces.size(); ++l)
                for (const auto& a : q.arrows)
                    s += t.pieces[l][a.tail] * t.pieces[k][a.head];
        return s;
    }

    long long stratum_count(const DimensionVector& d, const HNType& t,
                            const StabilityParam& theta) {
        long long flags = 1;
        for (int i = 0; i < q.vertex_count(); ++i) {
            std::vector<long long> parts;
            for (const auto& p : t.pieces) parts.push_back(p[i]);
            flags *= gaussian_multinomial(static_cast<int>(d[i]), parts, fq);
        }
        long long c = flags * pow_q(upper_block_dim(t));
        for (const auto& piece : t.pieces)
            c *= semistable_count(piece, shifted_theta(theta, piece));
        return c;
    }

    long long semistable_count(const DimensionVector& d, const StabilityParam& theta) {
        StabilityParam norm = normalize_theta(theta);
        auto key = std::make_pair(d.entries, norm.weights);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        long long total = pow_q(rep_space_dim(q, d));
        for (const auto& t : enumerate_hn_types(q, d, norm)) {
            if (t.trivial()) continue;
            total -= stratum_count(d, t, norm);
        }
        memo.emplace(key, total);
        return total;
    }
};

} // namespace

CensusReport strata_census(const Quiver& q, const DimensionVector& d,
                           const StabilityParam& theta, int fq, double budget) {
    CensusReport rep;
    rep.field = fq;
    rep.dim = d;
    rep.theta = theta;

    for (const auto& t : enumerate_hn_types(q, d, theta)) rep.empirical[t] = 0;

    ScannerCache cache{q, fq, {}};
    long long seen = 0;
    for_each_rep(q, d, fq, budget, [&](const FFRep& r) {
        HNWitness w = hn_type_ff_impl(q, r, theta, cache);
        ++rep.empirical[w.type];
        ++seen;
    });
    rep.total = seen;

    ModelCounter model{q, fq, {}};
    for (const auto& [t, _] : rep.empirical)
        rep.predicted[t] = t.trivial() ? model.semistable_count(d, theta)
                                       : model.stratum_count(d, t, theta);

    long long expected_total = model.pow_q(rep_space_dim(q, d));
    rep.match = (rep.total == expected_total) && (rep.empirical == rep.predicted);
    return rep;
}

} // namespace qmod
