#include "polycomm/dd.hpp"

#include <algorithm>
#include <cstdint>

namespace polycomm {

namespace {

struct Bits {
    std::vector<std::uint64_t> w;

    explicit Bits(std::size_t nbits = 0) : w((nbits + 63) / 64, 0) {}
    void ensure(std::size_t nbits) { w.resize((nbits + 63) / 64, 0); }
    void set(std::size_t i) { w[i / 64] |= (1ull << (i % 64)); }
    bool get(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1ull; }
};

int popcount_and(const Bits& a, const Bits& b) {
    int c = 0;
    std::size_t n = std::min(a.w.size(), b.w.size());
    for (std::size_t i = 0; i < n; ++i) c += __builtin_popcountll(a.w[i] & b.w[i]);
    return c;
}

Bits intersect(const Bits& a, const Bits& b) {
    Bits r;
    std::size_t n = std::min(a.w.size(), b.w.size());
    r.w.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.w[i] = a.w[i] & b.w[i];
    return r;
}

// a subset-of b over the first nbits?
bool subset_of(const Bits& a, const Bits& b, std::size_t nwords) {
    for (std::size_t i = 0; i < nwords; ++i) {
        std::uint64_t aw = i < a.w.size() ? a.w[i] : 0;
        std::uint64_t bw = i < b.w.size() ? b.w[i] : 0;
        if (aw & ~bw) return false;
    }
    return true;
}

struct Ray {
    VecQ v;
    Bits tight;
};

}  // namespace

ConeDescription cone_rays(const MatQ& rows_in, int dim) {
    MatQ rows = rows_in;
    for (auto& r : rows) make_primitive(r);

    std::size_t nrows = rows.size();
    std::size_t nwords = (nrows + 63) / 64;

    MatQ lin;
    lin.reserve(dim);
    for (int i = 0; i < dim; ++i) {
        VecQ e(dim, Rat(0));
        e[i] = 1;
        lin.push_back(std::move(e));
    }
    std::vector<Ray> rays;

    for (std::size_t idx = 0; idx < nrows; ++idx) {
        const VecQ& a = rows[idx];

        // Reduce the lineality space first if the row cuts it.
        int pivot = -1;
        for (std::size_t i = 0; i < lin.size(); ++i)
            if (dot(a, lin[i]) != 0) {
                pivot = static_cast<int>(i);
                break;
            }
        if (pivot >= 0) {
            VecQ l0 = lin[pivot];
            Rat s = dot(a, l0);
            if (s < 0) {
                for (auto& x : l0) x = -x;
                s = -s;
            }
            lin.erase(lin.begin() + pivot);
            for (auto& l : lin) {
                Rat t = dot(a, l);
                if (t == 0) continue;
                Rat f = t / s;
                for (int j = 0; j < dim; ++j) l[j] -= f * l0[j];
                make_primitive(l);
            }
            for (auto& r : rays) {
                Rat t = dot(a, r.v);
                if (t != 0) {
                    Rat f = t / s;
                    for (int j = 0; j < dim; ++j) r.v[j] -= f * l0[j];
                    make_primitive(r.v);
                }
                r.tight.ensure(nrows);
                r.tight.set(idx);
            }
            Ray nr{std::move(l0), Bits(nrows)};
            for (std::size_t j = 0; j < idx; ++j) nr.tight.set(j);
            make_primitive(nr.v);
            rays.push_back(std::move(nr));
            continue;
        }

        // Classify rays against the new halfspace.
        std::vector<Rat> val(rays.size());
        std::vector<int> pos, neg;
        bool any_neg = false;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i].v);
            int s = sgn(val[i]);
            if (s < 0) {
                any_neg = true;
                neg.push_back(static_cast<int>(i));
            } else if (s > 0) {
                pos.push_back(static_cast<int>(i));
            }
        }
        if (!any_neg) {
            for (std::size_t i = 0; i < rays.size(); ++i) {
                rays[i].tight.ensure(nrows);
                if (val[i] == 0) rays[i].tight.set(idx);
            }
            continue;
        }

        int needed = dim - static_cast<int>(lin.size()) - 2;
        std::vector<Ray> created;
        for (int p : pos) {
            for (int m : neg) {
                if (needed > 0 && popcount_and(rays[p].tight, rays[m].tight) < needed) continue;
                Bits common = intersect(rays[p].tight, rays[m].tight);
                bool dominated = false;
                for (std::size_t t = 0; t < rays.size(); ++t) {
                    if (static_cast<int>(t) == p || static_cast<int>(t) == m) continue;
                    if (subset_of(common, rays[t].tight, nwords)) {
                        dominated = true;
                        break;
                    }
                }
                if (dominated) continue;
                // Algebraic decision: tight rows at both must have rank
                // dim - |lineality| - 2.
                MatQ sub;
                for (std::size_t j = 0; j < idx; ++j)
                    if (common.get(j)) sub.push_back(rows[j]);
                if (rank_q(std::move(sub)) != needed) continue;

                VecQ w(dim);
                for (int j = 0; j < dim; ++j) w[j] = val[p] * rays[m].v[j] - val[m] * rays[p].v[j];
                make_primitive(w);
                bool zero = true;
                for (const Rat& x : w)
                    if (x != 0) {
                        zero = false;
                        break;
                    }
                if (zero) continue;
                Ray nr{std::move(w), Bits(nrows)};
                nr.tight = common;
                nr.tight.ensure(nrows);
                nr.tight.set(idx);
                for (std::size_t j = 0; j < idx; ++j) {
                    if (nr.tight.get(j)) continue;
                    if (dot(rows[j], nr.v) == 0) nr.tight.set(j);
                }
                created.push_back(std::move(nr));
            }
        }

        std::vector<Ray> next;
        next.reserve(pos.size() + created.size() + rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (sgn(val[i]) < 0) continue;
            rays[i].tight.ensure(nrows);
            if (val[i] == 0) rays[i].tight.set(idx);
            next.push_back(std::move(rays[i]));
        }
        for (auto& r : created) next.push_back(std::move(r));
        rays = std::move(next);
    }

    ConeDescription out;
    for (auto& l : lin) {
        make_primitive(l);
        out.lineality.push_back(std::move(l));
    }
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    std::sort(out.rays.begin(), out.rays.end(), VecQLess{});
    std::sort(out.lineality.begin(), out.lineality.end(), VecQLess{});
    return out;
}

}  // namespace polycomm
