#include "polycomm/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "polycomm/dd.hpp"

namespace polycomm {

using nlohmann::json;

void HPolyhedron::add_ineq(VecQ a, Rat b) {
    if (static_cast<int>(a.size()) != dim) throw DimensionMismatch("inequality row length != dim");
    ineq_lhs.push_back(std::move(a));
    ineq_rhs.push_back(std::move(b));
}

void HPolyhedron::add_eq(VecQ c, Rat d) {
    if (static_cast<int>(c.size()) != dim) throw DimensionMismatch("equality row length != dim");
    eq_lhs.push_back(std::move(c));
    eq_rhs.push_back(std::move(d));
}

bool facet_lex_less(const CanonicalFacet& a, const CanonicalFacet& b) {
    if (a.coeffs != b.coeffs) return lex_less(a.coeffs, b.coeffs);
    return a.bound < b.bound;
}

std::string facet_key(const CanonicalFacet& f) {
    std::string s;
    for (const Rat& c : f.coeffs) {
        s += rat_str(c);
        s += ',';
    }
    s += '|';
    s += rat_str(f.bound);
    return s;
}

VecQ CoordinatePermutation::apply(const VecQ& v) const {
    VecQ w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[perm[i]] = v[i];
    return w;
}

CoordinatePermutation CoordinatePermutation::inverse() const {
    CoordinatePermutation inv;
    inv.perm.resize(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv.perm[perm[i]] = static_cast<int>(i);
    return inv;
}

void CoordinatePermutation::validate(const VPolytope& v) const {
    if (static_cast<int>(perm.size()) != v.dim)
        throw DimensionMismatch("permutation length != polytope dim");
    std::set<VecQ, VecQLess> orig(v.vertices.begin(), v.vertices.end());
    for (const VecQ& vert : v.vertices)
        if (!orig.count(apply(vert)))
            throw InvalidSymmetry("permutation does not map the vertex set onto itself");
}

VPolytope h_to_v(const HPolyhedron& h) {
    int n = h.dim;

    // Restrict to the affine subspace cut by the equalities.
    VecQ x0(n, Rat(0));
    MatQ basis;
    if (!h.eq_lhs.empty()) {
        auto part = solve_particular(h.eq_lhs, h.eq_rhs);
        if (!part) throw Infeasible("equality system inconsistent");
        x0 = *part;
        basis = kernel_basis(h.eq_lhs, n);
    } else {
        for (int i = 0; i < n; ++i) {
            VecQ e(n, Rat(0));
            e[i] = 1;
            basis.push_back(std::move(e));
        }
    }
    int k = static_cast<int>(basis.size());

    // Homogenized cone over (y, t): for each a·x <= b the row
    // (-a·basis, b - a·x0), plus t >= 0.
    MatQ rows;
    rows.reserve(h.ineq_lhs.size() + 1);
    for (std::size_t i = 0; i < h.ineq_lhs.size(); ++i) {
        VecQ row(k + 1);
        for (int j = 0; j < k; ++j) row[j] = -dot(h.ineq_lhs[i], basis[j]);
        row[k] = h.ineq_rhs[i] - dot(h.ineq_lhs[i], x0);
        rows.push_back(std::move(row));
    }
    {
        VecQ trow(k + 1, Rat(0));
        trow[k] = 1;
        rows.push_back(std::move(trow));
    }
    std::sort(rows.begin(), rows.end(), VecQLess{});

    ConeDescription cone = cone_rays(rows, k + 1);
    if (!cone.lineality.empty()) throw Unbounded("feasible set contains a line");

    VPolytope out;
    out.dim = n;
    bool has_recession = false;
    for (const VecQ& r : cone.rays) {
        const Rat& t = r[k];
        if (t == 0) {
            has_recession = true;
            continue;
        }
        VecQ x = x0;
        for (int j = 0; j < k; ++j)
            if (r[j] != 0)
                for (int c = 0; c < n; ++c) x[c] += (r[j] / t) * basis[j][c];
        out.vertices.push_back(std::move(x));
    }
    if (out.vertices.empty()) throw Infeasible("empty polyhedron");
    if (has_recession) throw Unbounded("recession ray found");
    std::sort(out.vertices.begin(), out.vertices.end(), VecQLess{});
    out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
    return out;
}

CanonicalFacet canonicalize_row(VecQ coeffs, Rat bound, const std::vector<CanonicalFacet>& equalities,
                                bool sign_fix) {
    // The equality list is kept in RREF (unit pivot, pivot column cleared
    // elsewhere), so one pass eliminates each pivot coordinate.
    for (const CanonicalFacet& eq : equalities) {
        int p = -1;
        for (std::size_t j = 0; j < eq.coeffs.size(); ++j)
            if (eq.coeffs[j] != 0) {
                p = static_cast<int>(j);
                break;
            }
        if (p < 0) continue;
        if (coeffs[p] == 0) continue;
        Rat f = coeffs[p] / eq.coeffs[p];
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            if (eq.coeffs[j] != 0) coeffs[j] -= f * eq.coeffs[j];
        bound -= f * eq.bound;
    }
    make_primitive_joint(coeffs, bound);
    if (sign_fix) {
        for (const Rat& c : coeffs) {
            if (c == 0) continue;
            if (c < 0) {
                for (Rat& x : coeffs) x = -x;
                bound = -bound;
            }
            break;
        }
    }
    return CanonicalFacet{std::move(coeffs), std::move(bound)};
}

FacetSystem v_to_facets(const VPolytope& v) {
    if (v.vertices.empty()) throw Infeasible("empty vertex list");
    int n = v.dim;

    MatQ rows;
    rows.reserve(v.vertices.size());
    for (const VecQ& vert : v.vertices) {
        VecQ row(n + 1);
        for (int j = 0; j < n; ++j) row[j] = -vert[j];
        row[n] = 1;
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), VecQLess{});

    ConeDescription cone = cone_rays(rows, n + 1);

    FacetSystem out;
    // Lineality pairs +/-(c, d) are the affine hull equalities c·x = d.
    MatQ eqs;
    for (const VecQ& l : cone.lineality) {
        VecQ row(l.begin(), l.begin() + n);
        row.push_back(-l[n]);  // c·x - d = 0 homogeneous form
        eqs.push_back(std::move(row));
    }
    rref_q(eqs);
    for (VecQ& e : eqs) {
        VecQ c(e.begin(), e.begin() + n);
        Rat d = -e[n];
        CanonicalFacet ceq = canonicalize_row(std::move(c), std::move(d), {}, true);
        out.equalities.push_back(std::move(ceq));
    }
    std::sort(out.equalities.begin(), out.equalities.end(), facet_lex_less);

    for (const VecQ& r : cone.rays) {
        VecQ a(r.begin(), r.begin() + n);
        Rat b = r[n];
        CanonicalFacet f = canonicalize_row(std::move(a), std::move(b), out.equalities, false);
        bool zero = std::all_of(f.coeffs.begin(), f.coeffs.end(), [](const Rat& c) { return c == 0; });
        if (zero) continue;  // the trivial 0 <= 1 ray of the polar cone
        out.facets.push_back(std::move(f));
    }
    std::sort(out.facets.begin(), out.facets.end(), facet_lex_less);
    out.facets.erase(std::unique(out.facets.begin(), out.facets.end()), out.facets.end());
    return out;
}

int affine_dimension(const VPolytope& v) {
    if (v.vertices.empty()) return -1;
    MatQ diffs;
    for (std::size_t i = 1; i < v.vertices.size(); ++i) {
        VecQ d(v.dim);
        for (int j = 0; j < v.dim; ++j) d[j] = v.vertices[i][j] - v.vertices[0][j];
        diffs.push_back(std::move(d));
    }
    return rank_q(std::move(diffs));
}

FacetCheck validate_facet(const VPolytope& v, const CanonicalFacet& f) {
    if (static_cast<int>(f.coeffs.size()) != v.dim)
        throw DimensionMismatch("facet length != polytope dim");
    FacetCheck res;
    res.valid = true;
    MatQ tight;
    for (const VecQ& vert : v.vertices) {
        Rat lhs = dot(f.coeffs, vert);
        if (lhs > f.bound) res.valid = false;
        if (lhs == f.bound) tight.push_back(vert);
    }
    res.tight_count = static_cast<int>(tight.size());
    if (!tight.empty()) {
        MatQ diffs;
        for (std::size_t i = 1; i < tight.size(); ++i) {
            VecQ d(v.dim);
            for (int j = 0; j < v.dim; ++j) d[j] = tight[i][j] - tight[0][j];
            diffs.push_back(std::move(d));
        }
        res.tight_rank = rank_q(std::move(diffs)) + 1;
    }
    res.is_facet = res.valid && res.tight_rank == affine_dimension(v);
    return res;
}

std::vector<FacetOrbit> orbit_classify(const std::vector<CanonicalFacet>& facets,
                                       const std::vector<CoordinatePermutation>& generators,
                                       const std::vector<CanonicalFacet>& equalities,
                                       const VPolytope* validate_against) {
    if (validate_against)
        for (const auto& g : generators) g.validate(*validate_against);

    std::map<std::string, int> index_of;
    for (std::size_t i = 0; i < facets.size(); ++i) index_of[facet_key(facets[i])] = static_cast<int>(i);

    std::vector<int> orbit_id(facets.size(), -1);
    std::vector<FacetOrbit> orbits;
    for (std::size_t s = 0; s < facets.size(); ++s) {
        if (orbit_id[s] >= 0) continue;
        int id = static_cast<int>(orbits.size());
        FacetOrbit orb;
        std::vector<int> queue{static_cast<int>(s)};
        orbit_id[s] = id;
        orb.representative = facets[s];
        while (!queue.empty()) {
            int cur = queue.back();
            queue.pop_back();
            orb.member_indices.push_back(cur);
            if (facet_lex_less(facets[cur], orb.representative)) orb.representative = facets[cur];
            for (const auto& g : generators) {
                CanonicalFacet img = canonicalize_row(g.apply(facets[cur].coeffs), facets[cur].bound,
                                                      equalities, false);
                auto it = index_of.find(facet_key(img));
                if (it == index_of.end())
                    throw InvalidSymmetry("permutation image of a facet is not in the facet list");
                if (orbit_id[it->second] < 0) {
                    orbit_id[it->second] = id;
                    queue.push_back(it->second);
                }
            }
        }
        orb.orbit_size = static_cast<int>(orb.member_indices.size());
        std::sort(orb.member_indices.begin(), orb.member_indices.end());
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

namespace {

json rows_to_json(const MatQ& lhs, const VecQ& rhs) {
    json arr = json::array();
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        json row = json::array();
        for (const Rat& x : lhs[i]) row.push_back(rat_str(x));
        row.push_back(rat_str(rhs[i]));
        arr.push_back(std::move(row));
    }
    return arr;
}

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw std::invalid_argument("rational entries must be integers or strings");
}

}  // namespace

std::string h_to_json(const HPolyhedron& h) {
    json j;
    j["dim"] = h.dim;
    j["inequalities"] = rows_to_json(h.ineq_lhs, h.ineq_rhs);
    j["equalities"] = rows_to_json(h.eq_lhs, h.eq_rhs);
    return j.dump(2);
}

HPolyhedron h_from_json(const std::string& text) {
    json j = json::parse(text);
    HPolyhedron h;
    h.dim = j.at("dim").get<int>();
    for (const json& row : j.value("inequalities", json::array())) {
        VecQ a;
        for (std::size_t i = 0; i + 1 < row.size(); ++i) a.push_back(rat_from_json(row[i]));
        h.add_ineq(std::move(a), rat_from_json(row.back()));
    }
    for (const json& row : j.value("equalities", json::array())) {
        VecQ c;
        for (std::size_t i = 0; i + 1 < row.size(); ++i) c.push_back(rat_from_json(row[i]));
        h.add_eq(std::move(c), rat_from_json(row.back()));
    }
    return h;
}

std::string v_to_json(const VPolytope& v) {
    json j;
    j["dim"] = v.dim;
    json arr = json::array();
    for (const VecQ& vert : v.vertices) {
        json row = json::array();
        for (const Rat& x : vert) row.push_back(rat_str(x));
        arr.push_back(std::move(row));
    }
    j["vertices"] = arr;
    return j.dump(2);
}

VPolytope v_from_json(const std::string& text) {
    json j = json::parse(text);
    VPolytope v;
    v.dim = j.at("dim").get<int>();
    for (const json& row : j.at("vertices")) {
        VecQ x;
        for (const json& e : row) x.push_back(rat_from_json(e));
        if (static_cast<int>(x.size()) != v.dim) throw DimensionMismatch("vertex length != dim");
        v.vertices.push_back(std::move(x));
    }
    std::sort(v.vertices.begin(), v.vertices.end(), VecQLess{});
    return v;
}

}  // namespace polycomm
