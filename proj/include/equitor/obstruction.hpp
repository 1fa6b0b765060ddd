// The obstruction class beta(X, G) in H^2(G, Pic^vee (x) Q/Z) = H^3(G, Pic^vee).
#pragma once

#include "equitor/cohomology.hpp"

namespace equitor {

struct SectionInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotK9 : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonCyclicTorusPart : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Torsion monomial c * t^m; written additively as (c, m) with c in Q/Z.
struct MonomialUnit {
    Rat c;
    IntVec m;
};
MonomialUnit operator+(const MonomialUnit& a, const MonomialUnit& b);
bool operator==(const MonomialUnit& a, const MonomialUnit& b);
// (c, m).(s, A) = (c - s.(A^{-1} m), A^{-1} m), reduced mod 1
MonomialUnit act(const MonomialUnit& u, const GroupElement& g);

// Pic^vee matrix C_g = R_g^{-T} of a lattice map A preserving the fan
IntMatrix pic_dual_matrix(const ToricModel& model, const IntMatrix& A);

// Stage 1: phi(b_i) = Lambda . d(b_i) for the generators of F_1, each as an r x n matrix
// whose row k is the M-part attached to e_k.
std::vector<IntMatrix> stage1_cocycle(const ToricModel& model, const AffineGroup& G, const Resolution& R);
// Stage 2: lift through m -> (shift, m), apply d^1 with the unit action, keep the Q/Z part.
// Result has r_2 * r entries (block i, entry k). shift, if given, has r_1 * r entries.
RatVec stage2_cocycle(const ToricModel& model, const AffineGroup& G, const Resolution& R,
                      const std::vector<IntMatrix>& stage1, const RatVec& shift = {});

struct ObstructionReport {
    std::string model;
    std::string group_hash;
    int group_order = 0;
    std::string resolution;
    std::vector<size_t> ranks;
    std::vector<IntMatrix> stage1;
    RatVec stage2;
    IntVec integral;           // qz_shift of stage2, a 3-cocycle in Pic^vee
    bool vanishes = false;
    RatVec witness_mod1;       // route (a): x with x d^1 = stage2 mod 1
    IntVec witness_integral;   // route (b): y with y d^2 = integral
    IntVec h3_invariants;      // of H^3(G, Pic^vee)
    IntVec certificate;        // class coordinates, nonzero when beta does not vanish
    double seconds = 0;
};

struct BetaOptions {
    size_t max_order = 64;
    bool periodic = false;  // use the printed resolution of a family
    Family family = Family::Q;
    int n = 0, x = -1, y = -1;  // family parameters and generator indices in G
    RatVec shift;               // alternative monomial set-section (tests)
    size_t max_nonzeros = 0;    // cap on coboundary matrix nonzeros, 0 = none
    double time_budget = 0;     // seconds, 0 = none; checked between stages
};
ObstructionReport beta(const ToricModel& model, const AffineGroup& G, const BetaOptions& opt = {});

// normalization of a group with pi*(G) conjugate to K9
struct K9Normalization {
    Rat b2, c2, c3;  // mod-1 logarithms
    Family family = Family::D;
    int n = 0;
    IntMatrix X;  // coordinates t -> t X carry pi*(G) onto K9
    RatVec r;     // then t -> t + r achieves b1 = b3 = c1 = 0
    GroupElement sigma1, sigma2;
    AffineGroup minimal;  // normalized minimal subgroup surjecting onto K9
};
K9Normalization normalize_k9(const AffineGroup& G);

struct Section6Report {
    Family family = Family::Q;
    int n = 0;
    GroupElement sigma1, sigma2, x, y;
    int order = 0;
    std::vector<IntMatrix> stage1;
    bool stage1_matches_printed = false;
    std::vector<RatVec> stage2_printed_lift;  // per F_2 generator, printed lift in [0,1) + gamma*log(b2)
    IntVec beta_printed_lift, beta_canonical;
    bool beta_matches_printed = false;
    bool beta_in_image = true;          // printed lift against im(nu)
    bool canonical_in_image = true;
    bool lifts_same_class = false;
    bool route_a_vanishes = true;
    bool printed_generators_match = false;  // Z[G]-span of the printed vectors equals the target lattice
    int printed_block = -1;                 // block of (Pic^vee)^r3 compared with the printed intersection
    IntMatrix image_or_intersection;        // HNF of im(nu) or of its intersection with printed_block
    bool beta_in_intersection = true;
    std::vector<IntVec> printed;
    bool nonvanishing = false;
};
Section6Report reproduce_section6(Family f, int n);

// frozen printed data
IntVec printed_beta_Q();
std::vector<IntVec> printed_generators(Family f);
std::vector<IntMatrix> printed_stage1();

}  // namespace equitor
