#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polycomm/polytope.hpp"
#include "polycomm/rational.hpp"

namespace polycomm {

struct SizeOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InfeasibleResources : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Unachievable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ConstraintKind { Distinguishability, AntiDistinguishability };

struct SenderSpec {
    int n_x = 2;
    VecQ prior;   // length n_x, sums to 1
    int n_m = 0;  // 0 -> default 2^(n_x-1)

    int messages() const { return n_m > 0 ? n_m : (1 << (n_x - 1)); }
};

struct Caps {
    long selector_cap = 1000000;
    long decoder_cap = 1000000;
    long vertex_cap = 5000000;
};

struct ScenarioSpec {
    std::vector<SenderSpec> senders;
    int n_y = 1;
    int n_z = 2;
    ConstraintKind kind = ConstraintKind::Distinguishability;
    Caps caps;

    int n_senders() const { return static_cast<int>(senders.size()); }
    void validate() const;

    // Lower end of the admissible resource interval for sender i:
    // max_x q_x for distinguishability, 1 - min_x q_x for anti.
    Rat resource_floor(int sender) const;
};

ScenarioSpec scenario_from_json(const std::string& text);
std::string scenario_to_json(const ScenarioSpec& spec);

ScenarioSpec make_uniform_scenario(std::vector<int> n_x_per_sender, int n_z, ConstraintKind kind,
                                   int n_y = 1);

// Fixed coordinate order of behaviors: lexicographic in (z, x1..xN, y),
// z-major. Resource coordinates follow, one per sender.
struct BehaviorIndex {
    int n_z = 0;
    std::vector<int> n_x;
    int n_y = 1;

    explicit BehaviorIndex(const ScenarioSpec& spec);
    BehaviorIndex() = default;

    int n_inputs() const;
    int n_behavior() const;
    int total_dim() const { return n_behavior() + static_cast<int>(n_x.size()); }
    int index(int z, const std::vector<int>& xs, int y) const;  // all 0-based
    int resource_index(int sender) const { return n_behavior() + sender; }
    std::string coord_key(int flat_index) const;  // "z|x1,x2[,y]" (1-based)
    int coord_from_key(const std::string& key) const;
};

// Linear functional over behavior coordinates (exact coefficients).
struct FigureOfMerit {
    VecQ coeffs;  // length n_behavior
};

FigureOfMerit fom_from_json(const std::string& text, const BehaviorIndex& idx);
std::string fom_to_json(const FigureOfMerit& fom, const BehaviorIndex& idx);

// Encoding polytope over (p_e(m|x) for m, x; resource): positivity, per-x
// normalization, the resource box, and one linearized resource row per
// selector function s : messages -> inputs.
HPolyhedron build_encoding_polytope(const ScenarioSpec& spec, int sender);

struct EncodingVertex {
    MatQ p;        // p[m][x]
    Rat resource;  // tight value recomputed from p
};

// Distinct encoding parts of the vertices of the encoding polytope, each with
// its tight resource value.
std::vector<EncodingVertex> encoding_vertices(const ScenarioSpec& spec, int sender);

// All deterministic decoders g : (m tuple, y) -> z in lexicographic order,
// encoded as digit strings over the domain points ordered by (m1..mN, y).
std::vector<std::vector<std::uint8_t>> enumerate_decoders(const ScenarioSpec& spec);
long decoder_count(const ScenarioSpec& spec);

struct ExtendedVertex {
    VecQ behavior;
    VecQ resources;
    std::vector<int> encoding_index;  // per sender, into encoding_vertices
    long decoder_index = -1;
};

struct ExtendedVertexSet {
    ScenarioSpec spec;
    BehaviorIndex index;
    std::vector<ExtendedVertex> vertices;  // deduplicated, lex-sorted

    VPolytope as_vpolytope() const;
};

ExtendedVertexSet extended_vertices(const ScenarioSpec& spec);

// Standard relabelling symmetries of a scenario: transpositions of each
// sender's inputs, of the outcomes, of the receiver inputs, and the sender
// exchange (with resource swap) whenever two senders are identical.
std::vector<CoordinatePermutation> standard_generators(const ScenarioSpec& spec);

struct FacetClass {
    CanonicalFacet representative;
    int orbit_size = 0;
    bool trivial = false;
};

struct FacetTable {
    FacetSystem system;             // over behavior + resource coordinates
    std::vector<bool> trivial;      // per facet
    std::vector<FacetClass> classes;
    int facet_count() const { return static_cast<int>(system.facets.size()); }
    int trivial_count() const;
    int nontrivial_class_count() const;
};

FacetTable facet_table(const ExtendedVertexSet& ext,
                       const std::vector<CoordinatePermutation>& generators);

std::string facet_table_to_json(const FacetTable& table, const BehaviorIndex& idx,
                                ConstraintKind kind);
std::string facet_table_to_text(const FacetTable& table, const BehaviorIndex& idx,
                                ConstraintKind kind);

// Exact best classical value at fixed resources: an LP over the extended
// vertex list (weights in the simplex, per-sender mean resource bounded).
Rat classical_value(const ExtendedVertexSet& ext, const FigureOfMerit& fom, const VecQ& resources);

struct TotalResourceResult {
    VecQ resources;
    double product = 0.0;
};

// Minimal product of per-sender resources subject to classical_value >= S.
TotalResourceResult classical_total(const ExtendedVertexSet& ext, const FigureOfMerit& fom,
                                    const Rat& s_target);

// LP upper bound on the operational value: positivity + normalization +
// selector-linearized resource rows, sender independence dropped.
Rat operational_relaxation(const ScenarioSpec& spec, const FigureOfMerit& fom,
                           const VecQ& resources);

// Tight resource value of an explicit encoding table under the scenario kind.
Rat tight_resource(const ScenarioSpec& spec, int sender, const MatQ& p);

}  // namespace polycomm
