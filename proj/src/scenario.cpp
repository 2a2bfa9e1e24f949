#include "polycomm/scenario.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "polycomm/simplex.hpp"

namespace polycomm {

using nlohmann::json;

void ScenarioSpec::validate() const {
    if (senders.empty()) throw std::invalid_argument("scenario needs at least one sender");
    if (n_y < 1 || n_z < 1) throw std::invalid_argument("n_y and n_z must be >= 1");
    for (const auto& s : senders) {
        if (s.n_x < 1) throw std::invalid_argument("n_x must be >= 1");
        if (static_cast<int>(s.prior.size()) != s.n_x)
            throw std::invalid_argument("prior length != n_x");
        Rat sum(0);
        for (const Rat& q : s.prior) {
            if (q < 0) throw std::invalid_argument("negative prior");
            sum += q;
        }
        if (sum != 1) throw std::invalid_argument("prior does not sum to 1");
        if (s.messages() < 1) throw std::invalid_argument("n_m must be >= 1");
    }
}

Rat ScenarioSpec::resource_floor(int sender) const {
    const auto& q = senders[sender].prior;
    if (kind == ConstraintKind::Distinguishability) {
        Rat m = q[0];
        for (const Rat& x : q) m = std::max(m, x);
        return m;
    }
    Rat m = q[0];
    for (const Rat& x : q) m = std::min(m, x);
    return Rat(1) - m;
}

ScenarioSpec make_uniform_scenario(std::vector<int> n_x_per_sender, int n_z, ConstraintKind kind,
                                   int n_y) {
    ScenarioSpec spec;
    for (int nx : n_x_per_sender) {
        SenderSpec s;
        s.n_x = nx;
        s.prior.assign(nx, Rat(1, nx));
        spec.senders.push_back(std::move(s));
    }
    spec.n_y = n_y;
    spec.n_z = n_z;
    spec.kind = kind;
    spec.validate();
    return spec;
}

namespace {

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw std::invalid_argument("rational entries must be integers or strings");
}

}  // namespace

ScenarioSpec scenario_from_json(const std::string& text) {
    json j = json::parse(text);
    ScenarioSpec spec;
    for (const json& sj : j.at("senders")) {
        SenderSpec s;
        s.n_x = sj.at("n_x").get<int>();
        if (sj.contains("prior"))
            for (const json& q : sj["prior"]) s.prior.push_back(rat_from_json(q));
        else
            s.prior.assign(s.n_x, Rat(1, s.n_x));
        if (sj.contains("n_m")) s.n_m = sj["n_m"].get<int>();
        spec.senders.push_back(std::move(s));
    }
    spec.n_y = j.value("n_y", 1);
    spec.n_z = j.at("n_z").get<int>();
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "D")
        spec.kind = ConstraintKind::Distinguishability;
    else if (kind == "A")
        spec.kind = ConstraintKind::AntiDistinguishability;
    else
        throw std::invalid_argument("kind must be \"D\" or \"A\"");
    spec.validate();
    return spec;
}

std::string scenario_to_json(const ScenarioSpec& spec) {
    json j;
    j["senders"] = json::array();
    for (const auto& s : spec.senders) {
        json sj;
        sj["n_x"] = s.n_x;
        sj["prior"] = json::array();
        for (const Rat& q : s.prior) sj["prior"].push_back(rat_str(q));
        sj["n_m"] = s.messages();
        j["senders"].push_back(std::move(sj));
    }
    j["n_y"] = spec.n_y;
    j["n_z"] = spec.n_z;
    j["kind"] = spec.kind == ConstraintKind::Distinguishability ? "D" : "A";
    return j.dump(2);
}

BehaviorIndex::BehaviorIndex(const ScenarioSpec& spec) {
    n_z = spec.n_z;
    for (const auto& s : spec.senders) n_x.push_back(s.n_x);
    n_y = spec.n_y;
}

int BehaviorIndex::n_inputs() const {
    int p = 1;
    for (int nx : n_x) p *= nx;
    return p;
}

int BehaviorIndex::n_behavior() const { return n_z * n_inputs() * n_y; }

int BehaviorIndex::index(int z, const std::vector<int>& xs, int y) const {
    int idx = z;
    for (std::size_t i = 0; i < n_x.size(); ++i) idx = idx * n_x[i] + xs[i];
    return idx * n_y + y;
}

std::string BehaviorIndex::coord_key(int flat) const {
    int y = flat % n_y;
    flat /= n_y;
    std::vector<int> xs(n_x.size());
    for (int i = static_cast<int>(n_x.size()) - 1; i >= 0; --i) {
        xs[i] = flat % n_x[i];
        flat /= n_x[i];
    }
    int z = flat;
    std::ostringstream os;
    os << z + 1 << "|";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) os << ",";
        os << xs[i] + 1;
    }
    if (n_y > 1) os << "," << y + 1;
    return os.str();
}

int BehaviorIndex::coord_from_key(const std::string& key) const {
    auto bar = key.find('|');
    if (bar == std::string::npos) throw std::invalid_argument("bad coordinate key: " + key);
    int z = std::stoi(key.substr(0, bar)) - 1;
    std::vector<int> parts;
    std::string rest = key.substr(bar + 1);
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(std::stoi(tok) - 1);
    int y = 0;
    if (static_cast<int>(parts.size()) == static_cast<int>(n_x.size()) + 1) {
        y = parts.back();
        parts.pop_back();
    }
    if (parts.size() != n_x.size()) throw std::invalid_argument("bad coordinate key: " + key);
    if (z < 0 || z >= n_z || y < 0 || y >= n_y) throw std::invalid_argument("key out of range: " + key);
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i] < 0 || parts[i] >= n_x[i]) throw std::invalid_argument("key out of range: " + key);
    return index(z, parts, y);
}

FigureOfMerit fom_from_json(const std::string& text, const BehaviorIndex& idx) {
    json j = json::parse(text);
    FigureOfMerit fom;
    fom.coeffs.assign(idx.n_behavior(), Rat(0));
    for (auto it = j.at("coeffs").begin(); it != j.at("coeffs").end(); ++it)
        fom.coeffs[idx.coord_from_key(it.key())] = rat_from_json(it.value());
    return fom;
}

std::string fom_to_json(const FigureOfMerit& fom, const BehaviorIndex& idx) {
    json j;
    j["coeffs"] = json::object();
    for (int k = 0; k < static_cast<int>(fom.coeffs.size()); ++k)
        if (fom.coeffs[k] != 0) j["coeffs"][idx.coord_key(k)] = rat_str(fom.coeffs[k]);
    return j.dump(2);
}

namespace {

// All maps [count] -> [range] as digit vectors, lexicographic.
bool next_map(std::vector<int>& digits, int range) {
    for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
        if (++digits[i] < range) return true;
        digits[i] = 0;
    }
    return false;
}

long checked_pow(long base, long exp, long cap) {
    long v = 1;
    for (long i = 0; i < exp; ++i) {
        if (v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

}  // namespace

HPolyhedron build_encoding_polytope(const ScenarioSpec& spec, int sender) {
    const SenderSpec& s = spec.senders[sender];
    int n_m = s.messages(), n_x = s.n_x;
    long selectors = checked_pow(n_x, n_m, spec.caps.selector_cap);
    if (selectors > spec.caps.selector_cap)
        throw SizeOverflow("selector count exceeds cap for sender " + std::to_string(sender + 1));

    int dim = n_m * n_x + 1;
    int rcol = n_m * n_x;
    HPolyhedron h;
    h.dim = dim;
    auto pcol = [&](int m, int x) { return m * n_x + x; };

    for (int m = 0; m < n_m; ++m)
        for (int x = 0; x < n_x; ++x) {
            VecQ row(dim, Rat(0));
            row[pcol(m, x)] = -1;
            h.add_ineq(std::move(row), Rat(0));
        }
    for (int x = 0; x < n_x; ++x) {
        VecQ row(dim, Rat(0));
        for (int m = 0; m < n_m; ++m) row[pcol(m, x)] = 1;
        h.add_eq(std::move(row), Rat(1));
    }

    Rat floor = spec.resource_floor(sender);
    {
        VecQ row(dim, Rat(0));
        row[rcol] = 1;
        h.add_ineq(std::move(row), Rat(1));
        VecQ row2(dim, Rat(0));
        row2[rcol] = -1;
        h.add_ineq(std::move(row2), -floor);
    }

    bool dist = spec.kind == ConstraintKind::Distinguishability;
    std::vector<int> sel(n_m, 0);
    do {
        VecQ row(dim, Rat(0));
        for (int m = 0; m < n_m; ++m) {
            int x = sel[m];
            row[pcol(m, x)] += dist ? s.prior[x] : -s.prior[x];
        }
        row[rcol] = -1;
        // dist: sum_m q_{s(m)} p(m|s(m)) <= R; anti: 1 - sum <= R.
        h.add_ineq(std::move(row), dist ? Rat(0) : Rat(-1));
    } while (next_map(sel, n_x));

    return h;
}

Rat tight_resource(const ScenarioSpec& spec, int sender, const MatQ& p) {
    const SenderSpec& s = spec.senders[sender];
    int n_m = s.messages(), n_x = s.n_x;
    Rat acc(0);
    for (int m = 0; m < n_m; ++m) {
        Rat best = s.prior[0] * p[m][0];
        for (int x = 1; x < n_x; ++x) {
            Rat v = s.prior[x] * p[m][x];
            if (spec.kind == ConstraintKind::Distinguishability ? v > best : v < best) best = v;
        }
        acc += best;
    }
    return spec.kind == ConstraintKind::Distinguishability ? acc : Rat(1) - acc;
}

std::vector<EncodingVertex> encoding_vertices(const ScenarioSpec& spec, int sender) {
    const SenderSpec& s = spec.senders[sender];
    int n_m = s.messages(), n_x = s.n_x;
    VPolytope verts = h_to_v(build_encoding_polytope(spec, sender));

    std::map<VecQ, bool, VecQLess> seen;
    std::vector<EncodingVertex> out;
    for (const VecQ& v : verts.vertices) {
        VecQ part(v.begin(), v.begin() + n_m * n_x);
        if (seen.count(part)) continue;
        seen[part] = true;
        EncodingVertex ev;
        ev.p.assign(n_m, VecQ(n_x));
        for (int m = 0; m < n_m; ++m)
            for (int x = 0; x < n_x; ++x) ev.p[m][x] = v[m * n_x + x];
        ev.resource = tight_resource(spec, sender, ev.p);
        out.push_back(std::move(ev));
    }
    return out;  // already lex-sorted by part since verts is lex-sorted
}

long decoder_count(const ScenarioSpec& spec) {
    long domain = spec.n_y;
    for (const auto& s : spec.senders) domain *= s.messages();
    return checked_pow(spec.n_z, domain, spec.caps.decoder_cap);
}

std::vector<std::vector<std::uint8_t>> enumerate_decoders(const ScenarioSpec& spec) {
    long count = decoder_count(spec);
    if (count > spec.caps.decoder_cap) throw SizeOverflow("decoder count exceeds cap");
    long domain = spec.n_y;
    for (const auto& s : spec.senders) domain *= s.messages();

    std::vector<std::vector<std::uint8_t>> out;
    out.reserve(count);
    std::vector<int> digits(domain, 0);
    do {
        out.emplace_back(digits.begin(), digits.end());
    } while (next_map(digits, spec.n_z));
    return out;
}

ExtendedVertexSet extended_vertices(const ScenarioSpec& spec) {
    spec.validate();
    ExtendedVertexSet ext;
    ext.spec = spec;
    ext.index = BehaviorIndex(spec);
    int N = spec.n_senders();

    std::vector<std::vector<EncodingVertex>> enc(N);
    long tuple_count = 1;
    for (int i = 0; i < N; ++i) {
        enc[i] = encoding_vertices(spec, i);
        tuple_count *= static_cast<long>(enc[i].size());
    }
    auto decoders = enumerate_decoders(spec);
    if (tuple_count > spec.caps.vertex_cap / static_cast<long>(decoders.size()))
        throw SizeOverflow("extended vertex count exceeds cap");

    int n_inputs = ext.index.n_inputs();
    long n_msgs = 1;
    for (const auto& s : spec.senders) n_msgs *= s.messages();
    int n_beh = ext.index.n_behavior();
    int n_y = spec.n_y;

    // Decompositions of flat input / message indices.
    std::vector<std::vector<int>> xs_of(n_inputs, std::vector<int>(N));
    for (int xf = 0; xf < n_inputs; ++xf) {
        int t = xf;
        for (int i = N - 1; i >= 0; --i) {
            xs_of[xf][i] = t % spec.senders[i].n_x;
            t /= spec.senders[i].n_x;
        }
    }
    std::vector<std::vector<int>> ms_of(n_msgs, std::vector<int>(N));
    for (long mf = 0; mf < n_msgs; ++mf) {
        long t = mf;
        for (int i = N - 1; i >= 0; --i) {
            ms_of[mf][i] = static_cast<int>(t % spec.senders[i].messages());
            t /= spec.senders[i].messages();
        }
    }

    std::map<VecQ, int, VecQLess> seen;
    std::vector<int> tuple(N, 0);
    MatQ joint(n_msgs, VecQ(n_inputs));
    bool more = true;
    while (more) {
        for (long mf = 0; mf < n_msgs; ++mf)
            for (int xf = 0; xf < n_inputs; ++xf) {
                Rat prod(1);
                for (int i = 0; i < N; ++i) {
                    prod *= enc[i][tuple[i]].p[ms_of[mf][i]][xs_of[xf][i]];
                    if (prod == 0) break;
                }
                joint[mf][xf] = prod;
            }
        VecQ resources(N);
        for (int i = 0; i < N; ++i) resources[i] = enc[i][tuple[i]].resource;

        for (std::size_t d = 0; d < decoders.size(); ++d) {
            const auto& g = decoders[d];
            VecQ beh(n_beh, Rat(0));
            for (long mf = 0; mf < n_msgs; ++mf)
                for (int y = 0; y < n_y; ++y) {
                    int z = g[mf * n_y + y];
                    for (int xf = 0; xf < n_inputs; ++xf) {
                        const Rat& pr = joint[mf][xf];
                        if (pr != 0) beh[(static_cast<long>(z) * n_inputs + xf) * n_y + y] += pr;
                    }
                }
            VecQ key = beh;
            key.insert(key.end(), resources.begin(), resources.end());
            if (seen.emplace(std::move(key), 1).second) {
                ExtendedVertex v;
                v.behavior = std::move(beh);
                v.resources = resources;
                v.encoding_index = tuple;
                v.decoder_index = static_cast<long>(d);
                ext.vertices.push_back(std::move(v));
            }
        }
        more = false;
        for (int i = N - 1; i >= 0; --i) {
            if (++tuple[i] < static_cast<int>(enc[i].size())) {
                more = true;
                break;
            }
            tuple[i] = 0;
        }
    }

    std::sort(ext.vertices.begin(), ext.vertices.end(), [](const ExtendedVertex& a, const ExtendedVertex& b) {
        if (a.behavior != b.behavior) return lex_less(a.behavior, b.behavior);
        return lex_less(a.resources, b.resources);
    });
    return ext;
}

VPolytope ExtendedVertexSet::as_vpolytope() const {
    VPolytope v;
    v.dim = index.total_dim();
    for (const auto& ev : vertices) {
        VecQ row = ev.behavior;
        row.insert(row.end(), ev.resources.begin(), ev.resources.end());
        v.vertices.push_back(std::move(row));
    }
    std::sort(v.vertices.begin(), v.vertices.end(), VecQLess{});
    return v;
}

std::vector<CoordinatePermutation> standard_generators(const ScenarioSpec& spec) {
    BehaviorIndex idx(spec);
    int total = idx.total_dim();
    int N = spec.n_senders();

    auto remap = [&](auto&& coord_map, auto&& res_map) {
        CoordinatePermutation g;
        g.perm.resize(total);
        for (int z = 0; z < idx.n_z; ++z)
            for (int xf = 0; xf < idx.n_inputs(); ++xf)
                for (int y = 0; y < idx.n_y; ++y) {
                    std::vector<int> xs(N);
                    int t = xf;
                    for (int i = N - 1; i >= 0; --i) {
                        xs[i] = t % idx.n_x[i];
                        t /= idx.n_x[i];
                    }
                    int from = idx.index(z, xs, y);
                    g.perm[from] = coord_map(z, xs, y);
                }
        for (int i = 0; i < N; ++i) g.perm[idx.resource_index(i)] = idx.resource_index(res_map(i));
        return g;
    };
    auto ident_res = [](int i) { return i; };

    std::vector<CoordinatePermutation> gens;
    for (int i = 0; i < N; ++i)
        for (int a = 0; a + 1 < spec.senders[i].n_x; ++a) {
            if (spec.senders[i].prior[a] != spec.senders[i].prior[a + 1]) continue;
            gens.push_back(remap(
                [&, i, a](int z, std::vector<int> xs, int y) {
                    if (xs[i] == a)
                        xs[i] = a + 1;
                    else if (xs[i] == a + 1)
                        xs[i] = a;
                    return idx.index(z, xs, y);
                },
                ident_res));
        }
    for (int a = 0; a + 1 < idx.n_z; ++a)
        gens.push_back(remap(
            [&, a](int z, const std::vector<int>& xs, int y) {
                int zz = z == a ? a + 1 : (z == a + 1 ? a : z);
                return idx.index(zz, xs, y);
            },
            ident_res));
    for (int a = 0; a + 1 < idx.n_y; ++a)
        gens.push_back(remap(
            [&, a](int z, const std::vector<int>& xs, int y) {
                int yy = y == a ? a + 1 : (y == a + 1 ? a : y);
                return idx.index(z, xs, yy);
            },
            ident_res));
    for (int i = 0; i + 1 < N; ++i) {
        const auto& a = spec.senders[i];
        const auto& b = spec.senders[i + 1];
        if (a.n_x != b.n_x || a.prior != b.prior || a.messages() != b.messages()) continue;
        gens.push_back(remap(
            [&, i](int z, std::vector<int> xs, int y) {
                std::swap(xs[i], xs[i + 1]);
                return idx.index(z, xs, y);
            },
            [i, N](int r) { return r == i ? i + 1 : (r == i + 1 ? i : r); }));
    }
    return gens;
}

namespace {

// Coefficient part reduced modulo the affine hull, primitive, sign-fixed:
// used to recognize single-coordinate (trivial) facets.
VecQ reduced_coeff_form(VecQ coeffs, const std::vector<CanonicalFacet>& eqs) {
    for (const CanonicalFacet& eq : eqs) {
        int p = -1;
        for (std::size_t j = 0; j < eq.coeffs.size(); ++j)
            if (eq.coeffs[j] != 0) {
                p = static_cast<int>(j);
                break;
            }
        if (p < 0 || coeffs[p] == 0) continue;
        Rat f = coeffs[p] / eq.coeffs[p];
        for (std::size_t j = 0; j < coeffs.size(); ++j)
            if (eq.coeffs[j] != 0) coeffs[j] -= f * eq.coeffs[j];
    }
    make_primitive(coeffs);
    for (const Rat& c : coeffs) {
        if (c == 0) continue;
        if (c < 0)
            for (Rat& x : coeffs) x = -x;
        break;
    }
    return coeffs;
}

}  // namespace

int FacetTable::trivial_count() const {
    int c = 0;
    for (bool t : trivial) c += t ? 1 : 0;
    return c;
}

int FacetTable::nontrivial_class_count() const {
    int c = 0;
    for (const auto& cl : classes) c += cl.trivial ? 0 : 1;
    return c;
}

FacetTable facet_table(const ExtendedVertexSet& ext,
                       const std::vector<CoordinatePermutation>& generators) {
    FacetTable table;
    VPolytope vp = ext.as_vpolytope();
    table.system = v_to_facets(vp);

    int dim = ext.index.total_dim();
    std::vector<VecQ> unit_forms;
    for (int k = 0; k < dim; ++k) {
        VecQ e(dim, Rat(0));
        e[k] = 1;
        unit_forms.push_back(reduced_coeff_form(std::move(e), table.system.equalities));
    }
    table.trivial.resize(table.system.facets.size());
    for (std::size_t i = 0; i < table.system.facets.size(); ++i) {
        VecQ form = reduced_coeff_form(table.system.facets[i].coeffs, table.system.equalities);
        bool triv = false;
        for (const VecQ& u : unit_forms)
            if (form == u) {
                triv = true;
                break;
            }
        table.trivial[i] = triv;
    }

    auto orbits = orbit_classify(table.system.facets, generators, table.system.equalities, &vp);
    for (const auto& orb : orbits) {
        FacetClass cls;
        cls.representative = orb.representative;
        cls.orbit_size = orb.orbit_size;
        cls.trivial = table.trivial[orb.member_indices.front()];
        table.classes.push_back(std::move(cls));
    }
    std::sort(table.classes.begin(), table.classes.end(), [](const FacetClass& a, const FacetClass& b) {
        if (a.trivial != b.trivial) return a.trivial > b.trivial;
        return facet_lex_less(a.representative, b.representative);
    });
    return table;
}

namespace {

json facet_row_json(const CanonicalFacet& f, const BehaviorIndex& idx) {
    json row;
    row["coeffs"] = json::object();
    for (int k = 0; k < idx.n_behavior(); ++k)
        if (f.coeffs[k] != 0) row["coeffs"][idx.coord_key(k)] = rat_str(f.coeffs[k]);
    json res = json::array();
    for (std::size_t i = 0; i < idx.n_x.size(); ++i)
        res.push_back(rat_str(-f.coeffs[idx.resource_index(static_cast<int>(i))]));
    row["resource_coeffs"] = res;
    row["constant"] = rat_str(f.bound);
    return row;
}

std::string facet_row_text(const CanonicalFacet& f, const BehaviorIndex& idx, const char* rname) {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < idx.n_behavior(); ++k) {
        const Rat& c = f.coeffs[k];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0)
            os << "-";
        Rat a = abs(c);
        if (a != 1) os << rat_str(a) << " ";
        os << "p(" << idx.coord_key(k) << ")";
        first = false;
    }
    if (first) os << "0";
    os << " <= ";
    first = true;
    for (std::size_t i = 0; i < idx.n_x.size(); ++i) {
        Rat r = -f.coeffs[idx.resource_index(static_cast<int>(i))];
        if (r == 0) continue;
        if (!first) os << (r > 0 ? " + " : " - ");
        else if (r < 0)
            os << "-";
        Rat a = abs(r);
        if (a != 1) os << rat_str(a);
        os << rname << (i + 1);
        first = false;
    }
    if (f.bound != 0 || first) {
        if (!first) os << (f.bound >= 0 ? " + " : " - ");
        os << rat_str(first ? f.bound : abs(f.bound));
    }
    return os.str();
}

}  // namespace

std::string facet_table_to_json(const FacetTable& table, const BehaviorIndex& idx,
                                ConstraintKind kind) {
    json j;
    j["facet_count"] = table.facet_count();
    j["trivial_count"] = table.trivial_count();
    j["class_count"] = static_cast<int>(table.classes.size());
    j["nontrivial_class_count"] = table.nontrivial_class_count();
    j["resource_symbol"] = kind == ConstraintKind::Distinguishability ? "D" : "A";
    j["equalities"] = json::array();
    for (const auto& eq : table.system.equalities) j["equalities"].push_back(facet_row_json(eq, idx));
    j["classes"] = json::array();
    for (const auto& cls : table.classes) {
        json row = facet_row_json(cls.representative, idx);
        row["orbit_size"] = cls.orbit_size;
        row["trivial"] = cls.trivial;
        j["classes"].push_back(std::move(row));
    }
    return j.dump(2);
}

std::string facet_table_to_text(const FacetTable& table, const BehaviorIndex& idx,
                                ConstraintKind kind) {
    const char* rname = kind == ConstraintKind::Distinguishability ? "D" : "A";
    std::ostringstream os;
    os << "facets: " << table.facet_count() << " total, " << table.trivial_count() << " trivial, "
       << table.nontrivial_class_count() << " nontrivial classes\n";
    for (const auto& cls : table.classes) {
        if (cls.trivial) continue;
        os << "  orbit " << cls.orbit_size << ":  " << facet_row_text(cls.representative, idx, rname)
           << "\n";
    }
    return os.str();
}

Rat classical_value(const ExtendedVertexSet& ext, const FigureOfMerit& fom, const VecQ& resources) {
    int N = ext.spec.n_senders();
    if (static_cast<int>(resources.size()) != N)
        throw std::invalid_argument("resources length != sender count");
    for (int i = 0; i < N; ++i) {
        if (resources[i] < ext.spec.resource_floor(i) || resources[i] > 1)
            throw InfeasibleResources("resource " + std::to_string(i + 1) + " outside its bounds");
    }
    std::size_t n = ext.vertices.size();
    MatQ A(1 + N, VecQ(n));
    std::vector<int> rel(1 + N);
    VecQ b(1 + N), c(n);
    for (std::size_t v = 0; v < n; ++v) {
        A[0][v] = 1;
        for (int i = 0; i < N; ++i) A[1 + i][v] = ext.vertices[v].resources[i];
        c[v] = dot(fom.coeffs, ext.vertices[v].behavior);
    }
    rel[0] = 0;
    b[0] = 1;
    for (int i = 0; i < N; ++i) {
        rel[1 + i] = -1;
        b[1 + i] = resources[i];
    }
    LpResult lp = lp_maximize(A, rel, b, c);
    if (lp.status != LpStatus::Optimal) throw InfeasibleResources("classical LP infeasible");
    return lp.value;
}

namespace {

// min over vertex mixtures of the mean resource of `minimize_sender`, with the
// other senders' mean resources capped and the objective pinned >= s.
std::optional<Rat> inner_min_resource(const ExtendedVertexSet& ext, const VecQ& values,
                                      int minimize_sender, const std::vector<std::pair<int, Rat>>& caps,
                                      const Rat& s) {
    std::size_t n = ext.vertices.size();
    int m = 2 + static_cast<int>(caps.size());
    MatQ A(m, VecQ(n));
    std::vector<int> rel(m);
    VecQ b(m), c(n);
    for (std::size_t v = 0; v < n; ++v) {
        A[0][v] = 1;
        A[1][v] = values[v];
        for (std::size_t k = 0; k < caps.size(); ++k)
            A[2 + k][v] = ext.vertices[v].resources[caps[k].first];
        c[v] = -ext.vertices[v].resources[minimize_sender];
    }
    rel[0] = 0;
    b[0] = 1;
    rel[1] = 1;
    b[1] = s;
    for (std::size_t k = 0; k < caps.size(); ++k) {
        rel[2 + k] = -1;
        b[2 + k] = caps[k].second;
    }
    LpResult lp = lp_maximize(A, rel, b, c);
    if (lp.status != LpStatus::Optimal) return std::nullopt;
    Rat r = -lp.value;
    if (r > 1) return std::nullopt;
    return r;
}

Rat rat_from_double(double x) {
    Rat r;
    mpq_set_d(r.get_mpq_t(), x);
    return r;
}

}  // namespace

TotalResourceResult classical_total(const ExtendedVertexSet& ext, const FigureOfMerit& fom,
                                    const Rat& s_target) {
    int N = ext.spec.n_senders();
    VecQ values(ext.vertices.size());
    for (std::size_t v = 0; v < ext.vertices.size(); ++v)
        values[v] = dot(fom.coeffs, ext.vertices[v].behavior);

    {
        VecQ ones(N, Rat(1));
        if (classical_value(ext, fom, ones) < s_target)
            throw Unachievable("target value not classically achievable at full resources");
    }

    TotalResourceResult res;
    if (N == 1) {
        auto r = inner_min_resource(ext, values, 0, {}, s_target);
        if (!r) throw Unachievable("target value not achievable");
        res.resources = {*r};
        res.product = rat_double(*r);
        return res;
    }
    if (N == 2) {
        auto eval = [&](const Rat& d1) -> std::pair<double, std::optional<Rat>> {
            auto d2 = inner_min_resource(ext, values, 1, {{0, d1}}, s_target);
            if (!d2) return {1e30, std::nullopt};
            return {rat_double(d1) * rat_double(*d2), d2};
        };
        Rat lo = ext.spec.resource_floor(0);
        double lo_d = rat_double(lo);
        const int grid = 128;
        double best = 1e30, best_d1 = 1.0;
        for (int k = 0; k <= grid; ++k) {
            double d1 = lo_d + (1.0 - lo_d) * k / grid;
            auto [p, d2] = eval(rat_from_double(d1));
            if (p < best) {
                best = p;
                best_d1 = d1;
            }
        }
        double step = (1.0 - lo_d) / grid;
        double a = std::max(lo_d, best_d1 - step), b = std::min(1.0, best_d1 + step);
        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
        double f1 = eval(rat_from_double(x1)).first, f2 = eval(rat_from_double(x2)).first;
        while (b - a > 1e-10) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - invphi * (b - a);
                f1 = eval(rat_from_double(x1)).first;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + invphi * (b - a);
                f2 = eval(rat_from_double(x2)).first;
            }
        }
        double mid = (a + b) / 2;
        auto [p, d2] = eval(rat_from_double(mid));
        if (p > best + 1e-12) {
            mid = best_d1;
            std::tie(p, d2) = eval(rat_from_double(mid));
        }
        if (!d2) throw Unachievable("target value not achievable");
        res.resources = {rat_from_double(mid), *d2};
        res.product = p;
        return res;
    }

    // N > 2: coordinate descent from full resources.
    VecQ cur(N, Rat(1));
    for (int sweep = 0; sweep < 64; ++sweep) {
        bool changed = false;
        for (int i = 0; i < N; ++i) {
            std::vector<std::pair<int, Rat>> caps;
            for (int j = 0; j < N; ++j)
                if (j != i) caps.emplace_back(j, cur[j]);
            auto r = inner_min_resource(ext, values, i, caps, s_target);
            if (!r) throw Unachievable("target value not achievable");
            if (*r != cur[i]) {
                cur[i] = *r;
                changed = true;
            }
        }
        if (!changed) break;
    }
    res.resources = cur;
    res.product = 1.0;
    for (const Rat& r : cur) res.product *= rat_double(r);
    return res;
}

Rat operational_relaxation(const ScenarioSpec& spec, const FigureOfMerit& fom,
                           const VecQ& resources) {
    BehaviorIndex idx(spec);
    int n = idx.n_behavior();
    int N = spec.n_senders();

    MatQ A;
    std::vector<int> rel;
    VecQ b;
    for (int xf = 0; xf < idx.n_inputs(); ++xf)
        for (int y = 0; y < spec.n_y; ++y) {
            VecQ row(n, Rat(0));
            std::vector<int> xs(N);
            int t = xf;
            for (int i = N - 1; i >= 0; --i) {
                xs[i] = t % idx.n_x[i];
                t /= idx.n_x[i];
            }
            for (int z = 0; z < spec.n_z; ++z) row[idx.index(z, xs, y)] = 1;
            A.push_back(std::move(row));
            rel.push_back(0);
            b.push_back(Rat(1));
        }

    bool dist = spec.kind == ConstraintKind::Distinguishability;
    for (int i = 0; i < N; ++i) {
        long selectors = checked_pow(spec.senders[i].n_x, spec.n_z, spec.caps.selector_cap);
        if (selectors > spec.caps.selector_cap) throw SizeOverflow("selector count exceeds cap");
        // Enumerate the other senders' inputs.
        std::vector<int> others;
        for (int j = 0; j < N; ++j)
            if (j != i) others.push_back(j);
        long other_count = 1;
        for (int j : others) other_count *= idx.n_x[j];
        for (long of = 0; of < other_count; ++of) {
            std::vector<int> xs(N, 0);
            long t = of;
            for (int k = static_cast<int>(others.size()) - 1; k >= 0; --k) {
                xs[others[k]] = static_cast<int>(t % idx.n_x[others[k]]);
                t /= idx.n_x[others[k]];
            }
            for (int y = 0; y < spec.n_y; ++y) {
                std::vector<int> sel(spec.n_z, 0);
                do {
                    VecQ row(n, Rat(0));
                    for (int z = 0; z < spec.n_z; ++z) {
                        xs[i] = sel[z];
                        row[idx.index(z, xs, y)] += spec.senders[i].prior[sel[z]];
                    }
                    if (dist) {
                        A.push_back(std::move(row));
                        rel.push_back(-1);
                        b.push_back(resources[i]);
                    } else {
                        A.push_back(std::move(row));
                        rel.push_back(1);
                        b.push_back(Rat(1) - resources[i]);
                    }
                } while (next_map(sel, idx.n_x[i]));
            }
        }
    }

    LpResult lp = lp_maximize(A, rel, b, fom.coeffs);
    if (lp.status != LpStatus::Optimal) throw InfeasibleResources("operational LP infeasible");
    return lp.value;
}

}  // namespace polycomm
