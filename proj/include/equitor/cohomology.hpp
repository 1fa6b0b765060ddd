// Group cohomology through small free resolutions.
#pragma once

#include <map>
#include <memory>

#include "equitor/lattice.hpp"

namespace equitor {

struct DegreeOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadParameters : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConversionFailed : std::logic_error {
    using std::logic_error::logic_error;
};

using RingElt = std::map<int, Int>;  // sum c_g g in Z[G]

RingElt ring_mul(const FiniteGroup& G, const RingElt& a, const RingElt& b);
RingElt ring_add(const RingElt& a, const RingElt& b, const Int& scale = 1);
RingElt ring_unit(int g, const Int& c = 1);

// Truncated free resolution F_K -> ... -> F_0 -> Z of right Z[G]-modules.
// boundary[k][j][i] = r_ji with d(b_i) = sum_j b_j r_ji (b_i in F_k, b_j in F_{k-1}).
struct Resolution {
    GroupPtr G;
    std::string kind;
    std::vector<size_t> ranks;
    std::vector<std::vector<std::vector<RingElt>>> boundary;  // index 0 unused

    size_t length() const { return ranks.size() - 1; }
    // rows i*|G|+g hold the coordinates of d(b_i g) in F_{k-1}; k = 0 gives the augmentation column
    IntMatrix z_matrix(size_t k) const;
    // d d = 0 and augmentation d_1 = 0
    bool verify() const;
    // ker d_k = im d_{k+1} over Z, for 0 <= k < length (k = 0: kernel of the augmentation)
    bool exact_at(size_t k) const;
};

Resolution greedy_resolution(GroupPtr G, size_t length);
// normalized bar resolution; generators of F_k are k-tuples of non-identity elements
Resolution bar_resolution(GroupPtr G, size_t length);

enum class Family { Q, D, SD };
Family parse_family(const std::string& s);
std::string family_name(Family f);
// Q_{2^n} (n >= 3), D_{2^{n-1}} (n >= 2), SD_{2^n} (n >= 4) as x^a y^b words; x = 1, y = 2^{n-1}
struct FamilyGroup {
    GroupPtr G;
    int x = 0, y = 0;
    std::vector<std::pair<int, int>> words;  // element -> (a, b)
};
FamilyGroup family_group(Family f, int n);
// one term c * w of a group ring element; w is a word in x (0) and y (1), read left to right
struct WordTerm {
    long coef = 0;
    std::vector<int> letters;
};
using WordElt = std::vector<WordTerm>;
using PeriodicWords = std::vector<std::vector<std::vector<WordElt>>>;  // [k-1][j][i] for d_k
// the printed boundary maps d_1..d_length as words
PeriodicWords periodic_words(Family f, int n, size_t length);
// the printed periodic resolution for generators x, y of G satisfying the family relations
Resolution periodic_resolution(Family f, int n, GroupPtr G, int x, int y, size_t length = 4);

// Cochains are row vectors; x -> x * d[i] maps C^i to C^{i+1}.
struct CochainComplex {
    std::vector<size_t> dims;
    std::vector<IntMatrix> d;
    bool verify() const;  // d[i] * d[i+1] == 0
    size_t top() const { return dims.size() - 1; }
};
// Hom_G(F, L); block (j,i) of d^k is L(r_ji) from boundary[k+1]
CochainComplex cochain_complex(const Resolution& R, const GLattice& L);
// refuses beyond |G| <= 32 and a dense-entry budget
CochainComplex bar_complex(const GLattice& L, size_t max_degree);
CochainComplex periodic_complex(Family f, int n, const GLattice& L, int x, int y);

// H^i = ker d^i / im d^{i-1}. At the top degree (i >= 1) the kernel is taken as the
// saturation of the image, which is exact for finite groups.
class CohomologyGroup {
public:
    size_t degree = 0;
    IntVec invariants;  // torsion factors > 1, then 0 per free summand
    IntMatrix cycles;   // basis rows of Z^i

    bool is_trivial() const { return invariants.empty(); }
    bool is_cocycle(const IntVec& c) const;
    // coordinates in the invariant factor generators, reduced; throws if c is not a cocycle
    IntVec coordinates(const IntVec& c) const;
    bool is_coboundary(const IntVec& c) const;
    std::string str() const;

private:
    friend CohomologyGroup cohomology(const CochainComplex& C, size_t i);
    IntMatrix proj_;   // cycle coordinates -> invariant coordinates
    IntMatrix image_;  // rows of d^{i-1}, or empty
    IntMatrix next_;   // d^i, or empty at the top degree
};
CohomologyGroup cohomology(const CochainComplex& C, size_t i);

// Q/Z coefficients on the same complex
bool is_cocycle_mod1(const CochainComplex& C, size_t i, const RatVec& c);
// route (a): x * d^{i-1} = c mod 1
bool is_coboundary_mod1(const CochainComplex& C, size_t i, const RatVec& c, RatVec* witness = nullptr);
// connecting map of 0 -> Z -> Q -> Q/Z -> 0 with the [0,1) lift: returns lift(c) * d^i
IntVec qz_shift(const CochainComplex& C, size_t i, const RatVec& c);
// route (b): qz_shift(c) in the image of d^i over Z
bool qz_shift_vanishes(const CochainComplex& C, size_t i, const RatVec& c, IntVec* witness = nullptr);

// Chain map from a resolution of H <= G into the restriction of a resolution of G.
// psi[k][i][j]: psi(b_i) = sum_j b_j psi[k][i][j] with b_j generators of dst.
struct ComparisonMap {
    Subset H;  // element indices of G, in the labelling of src
    std::vector<size_t> src_ranks, dst_ranks;
    std::vector<std::vector<std::vector<RingElt>>> psi;
};
// the bar target uses its contracting homotopy; other targets are solved over Z
ComparisonMap comparison_map(const Resolution& src, const Subset& H, const Resolution& dst, size_t length);
// matrix of c -> c o psi_k on cochains, C^k(G, L) -> C^k(H, L|H)
IntMatrix restriction_matrix(const ComparisonMap& f, const GLattice& L, size_t k);

// classes of H^d(G, L) killed by restriction to every listed subgroup (d = 1, 2, 3)
struct JointKernel {
    IntVec invariants;  // of the common kernel
    IntVec ambient;     // of H^d(G, L)
};
JointKernel restriction_kernel(const GLattice& L, const std::vector<Subset>& subgroups, size_t d, int jobs = 1);

struct BogomolovResult {
    size_t degree = 0;
    IntVec invariants;                // of B^degree(G, L)
    IntVec ambient;                   // of H^degree(G, L)
    std::vector<Subset> subgroups;    // maximal abelian subgroups used (up to conjugacy)
    bool is_trivial() const { return invariants.empty(); }
    std::string str() const;
};
// integral degree 2 or 3; qz = true computes B^degree(G, L (x) Q/Z) = B^{degree+1}(G, L)
BogomolovResult bogomolov(const GLattice& L, size_t degree, bool qz = false, int jobs = 1);

std::string invariants_str(const IntVec& inv);

}  // namespace equitor
