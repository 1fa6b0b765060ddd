// Complete regular fans, toric models and fixed points on torus orbits.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equitor/group.hpp"

namespace equitor {

struct MalformedFan : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RayOutsideSupport : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConeNotStabilized : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FanNotInvariant : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Cone = std::vector<int>;  // sorted ray indices

// Simplicial fan in N = Z^n; only maximal cones are stored, faces are implied.
struct Fan {
    size_t n = 0;
    std::vector<IntVec> rays;
    std::vector<Cone> max_cones;

    // validates rays (primitive, distinct), indices, and linear independence per cone
    static Fan make(size_t n, std::vector<IntVec> rays, std::vector<Cone> cones);

    std::vector<Cone> all_cones() const;   // every face, origin first, sorted by dimension
    size_t count_cones(size_t dim) const;  // cones of a given dimension
    IntMatrix cone_matrix(const Cone& c) const;
    int ray_index(const IntVec& v) const;  // -1 if absent
    Fan transformed(const IntMatrix& X) const;  // rays v -> v*X
    bool same_as(const Fan& other) const;  // equal ray sets and cone sets
};

bool is_smooth(const Fan& f);
// facet pairing: pure, each facet in exactly two maximal cones on opposite sides, connected
bool complete_by_facets(const Fan& f);
// covering degree: every sample direction lies in exactly one maximal cone
bool complete_by_covering(const Fan& f);
// both checks; throws std::logic_error if they disagree
bool is_complete(const Fan& f);

// ray permutation induced by A (v -> v*A), if A maps rays and cones onto themselves
std::optional<std::vector<int>> ray_permutation(const Fan& f, const IntMatrix& A);
bool is_invariant(const Fan& f, const std::vector<IntMatrix>& gens);
IntMatrix permutation_matrix(const std::vector<int>& perm);  // e_i -> e_perm[i]
std::vector<IntMatrix> automorphism_group(const Fan& f);

Fan star_subdivide(const Fan& f, const IntVec& ray);

struct QuotientFan {
    Fan fan;             // in N(sigma) = N / span(sigma)
    IntMatrix basis;     // unimodular, first rows are the rays of sigma
    IntMatrix projection;  // n x (n-k): x -> x*projection
    std::vector<IntMatrix> action;  // induced matrices for the given group
};
QuotientFan quotient_fan(const Fan& f, const Cone& sigma, const std::vector<IntMatrix>& gens);

struct ToricModel {
    std::string name;
    Fan fan;
    IntMatrix m_embedding;     // n x R, rows are images of the M basis in PL
    IntMatrix section;         // r x R, rows lambda(p_k)
    IntMatrix pic_projection;  // R x r, x -> Pic coordinates
    size_t pic_rank() const { return section.rows(); }
    size_t pl_rank() const { return fan.rays.size(); }
    // standard M embedding and a Smith-form section
    static ToricModel from_fan(std::string name, Fan fan);
    // given section; checks that [section; m_embedding] is a basis of PL
    static ToricModel with_section(std::string name, Fan fan, IntMatrix section);
};

std::vector<std::string> model_names();
ToricModel build_model(const std::string& name);
Fan braid_fan();  // P^3 blown up in 4 points and then 6 lines, in the basis e1,e2,e3 of Z^4/(1,1,1,1)

// Fixed points. Throws ConeNotStabilized if some matrix part moves sigma.
bool stabilizes(const Fan& f, const Cone& sigma, const IntMatrix& A);
bool orbit_fixed_point(const Fan& f, const std::vector<GroupElement>& gens, const Cone& sigma);
// brute force over torsion points of the orbit torus with the given denominator
bool orbit_fixed_point_bruteforce(const Fan& f, const std::vector<GroupElement>& gens, const Cone& sigma,
                                  long denominator);
bool has_fixed_point(const Fan& f, const std::vector<GroupElement>& gens);

struct ConditionAResult {
    bool holds = true;
    Subset witness;      // failing abelian subgroup (element indices of G)
    size_t checked = 0;  // number of abelian subgroups examined
};
// all abelian subgroups unless representatives_only
ConditionAResult condition_A(const Fan& f, const AffineGroup& G, bool representatives_only = false);

// text format: "n <dim>", "ray ..." lines, "cone i j k" lines (1-based)
std::string fan_to_text(const Fan& f);
Fan fan_from_text(const std::string& text);

}  // namespace equitor
