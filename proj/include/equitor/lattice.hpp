// Z-lattices with a right action of a finite group.
#pragma once

#include <memory>
#include <random>

#include "equitor/fan.hpp"
#include "equitor/group.hpp"

namespace equitor {

struct GroupMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotASubgroup : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// v -> v * act[g] on row vectors, one matrix per element of the group table
class GLattice {
public:
    GLattice() = default;
    GLattice(GroupPtr G, std::vector<IntMatrix> act);
    // extend generator images multiplicatively; throws if they violate a relation
    static GLattice from_generators(GroupPtr G, const std::vector<int>& gens, const std::vector<IntMatrix>& images);
    static GLattice trivial(GroupPtr G, size_t rank);

    size_t rank() const { return rank_; }
    const GroupPtr& group() const { return G_; }
    const IntMatrix& action(int g) const { return act_[g]; }
    const std::vector<IntMatrix>& actions() const { return act_; }
    // sum_g c_g act[g] for a group ring element
    IntMatrix ring_action(const std::map<int, Int>& r) const;
    // every relation act[g]*act[h] = act[gh] and unimodularity
    bool verify() const;

private:
    GroupPtr G_;
    size_t rank_ = 0;
    std::vector<IntMatrix> act_;
};

IntMatrix kronecker(const IntMatrix& A, const IntMatrix& B);

GLattice dual(const GLattice& L);
GLattice tensor(const GLattice& a, const GLattice& b);  // basis index i*rank(b)+j
GLattice direct_sum(const GLattice& a, const GLattice& b);
// restriction to the subgroup H (sorted element indices); the result lives on G.restrict_to(H)
GLattice restrict(const GLattice& L, const Subset& H);
// induced module from H to G for right cosets H t_j; reps empty means compute them
GLattice induced(const GLattice& L0, GroupPtr G, const Subset& H, std::vector<int> reps = {});
std::vector<int> right_coset_representatives(const FiniteGroup& G, const Subset& H);
IntMatrix fixed_sublattice(const GLattice& L);  // rows form a basis

// Lattices attached to an affine group acting on a toric model.
struct ModelLattices {
    GroupPtr group;
    GLattice N, M, PL, Pic, PicDual;
    std::vector<std::vector<int>> ray_perm;  // per element
};
ModelLattices model_lattices(const ToricModel& model, const AffineGroup& G);
ModelLattices model_lattices(const ToricModel& model, const AffineGroup& G, GroupPtr table);

// unimodular X with A[i]*X = X*B[i] for all i (bounded search); rank up to 16
std::optional<IntMatrix> find_intertwiner(const std::vector<IntMatrix>& A, const std::vector<IntMatrix>& B,
                                          long budget = 200000);

// random products of elementary matrices
IntMatrix random_unimodular(size_t n, std::mt19937& rng);
// direct sum of sign characters and (duals of) small permutation modules, rank 2..4,
// in a random basis
GLattice random_lattice(GroupPtr G, std::mt19937& rng);

}  // namespace equitor
