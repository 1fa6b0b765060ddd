// Finite subgroups of (Q/Z)^n x| GL_n(Z) and GL_n(Z)-conjugacy.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "equitor/linalg.hpp"

namespace equitor {

// (s, A): t -> t*A + s on row vectors; (s,A)*(s',A') = (s*A' + s', A*A').
struct GroupElement {
    RatVec s;
    IntMatrix A;

    static GroupElement identity(size_t n);
    static GroupElement matrix(const IntMatrix& A);
    static GroupElement translation(const RatVec& s);
    size_t dim() const { return A.rows(); }
    bool is_translation() const { return A.is_identity(); }
    std::string str() const;
};

GroupElement operator*(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& g);
bool operator==(const GroupElement& a, const GroupElement& b);
bool operator<(const GroupElement& a, const GroupElement& b);
RatVec act_point(const RatVec& t, const GroupElement& g);

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconclusiveConjugacy : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// default cap 1024, overridden by EQUITOR_MAX_ORDER
size_t default_order_cap();
void set_order_cap(size_t cap);

using Subset = std::vector<int>;  // sorted element indices

// Abstract finite group as a multiplication table; element 0 is the identity.
class FiniteGroup {
public:
    FiniteGroup() = default;
    explicit FiniteGroup(std::vector<std::vector<int>> table);

    int order() const { return static_cast<int>(mul_.size()); }
    int mul(int a, int b) const { return mul_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    int elem_order(int a) const { return ord_[a]; }
    int conj(int a, int g) const { return mul(mul(inv(g), a), g); }  // g^-1 a g
    bool commute(int a, int b) const { return mul(a, b) == mul(b, a); }
    int power(int a, long k) const;

    Subset generate(const std::vector<int>& gens) const;
    bool is_abelian(const Subset& H) const;
    bool is_abelian() const;
    Subset conjugate(const Subset& H, int g) const;
    // all subgroups, or only abelian ones; sorted by order then lexicographically
    std::vector<Subset> subgroups(bool abelian_only = false) const;
    std::vector<Subset> conjugacy_representatives(const std::vector<Subset>& subs) const;
    Subset sylow(int p) const;
    std::vector<int> small_generating_set(const Subset& H) const;
    // table of the subgroup H relabelled 0..|H|-1 in the order of H
    FiniteGroup restrict_to(const Subset& H) const;
    std::vector<int> element_orders_sorted() const;

private:
    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_, ord_;
};

class AffineGroup {
public:
    AffineGroup() = default;
    static AffineGroup close(const std::vector<GroupElement>& gens, size_t cap = 0);
    static AffineGroup from_matrices(const std::vector<IntMatrix>& mats, size_t cap = 0);

    size_t dim() const { return n_; }
    int order() const { return static_cast<int>(elems_.size()); }
    const std::vector<GroupElement>& elements() const { return elems_; }
    const GroupElement& element(int i) const { return elems_[i]; }
    const std::vector<GroupElement>& generators() const { return gens_; }
    const FiniteGroup& table() const { return table_; }
    int index_of(const GroupElement& g) const;  // -1 if absent
    std::vector<int> generator_indices() const;

    AffineGroup subgroup(const Subset& H) const;
    Subset torus_kernel() const;               // G_T
    AffineGroup torus_part() const;
    std::vector<IntMatrix> image() const;      // pi*(G), distinct matrices sorted
    AffineGroup image_group() const;
    bool is_matrix_group() const;
    bool is_abelian() const { return table_.is_abelian(); }
    std::string hash() const;

private:
    size_t n_ = 0;
    std::vector<GroupElement> gens_;
    std::vector<GroupElement> elems_;
    std::map<GroupElement, int> index_;
    FiniteGroup table_;
    void build_table();
};

// Abelian subgroups of G as element subsets of G.
std::vector<Subset> abelian_subgroups(const AffineGroup& G, bool up_to_conjugacy = false);
AffineGroup sylow(const AffineGroup& G, int p);

// GL_n(Z) conjugacy of finite matrix groups.
struct ConjugacyVerdict {
    enum Kind { Conjugate, NotConjugate, Inconclusive } kind = Inconclusive;
    IntMatrix witness;          // X with X^-1 H1 X = H2
    std::string certificate;    // distinguishing invariant for NotConjugate
};
struct LatticeInvariants {
    std::map<std::string, std::string> values;
};
LatticeInvariants conjugacy_invariants(const std::vector<IntMatrix>& H);
ConjugacyVerdict glnz_conjugate(const std::vector<IntMatrix>& H1, const std::vector<IntMatrix>& H2);
// subgroups of Gbar conjugate to target; throws InconclusiveConjugacy
bool contains_conjugate_subgroup(const std::vector<IntMatrix>& Gbar, const std::vector<IntMatrix>& target,
                                 IntMatrix* witness = nullptr);
std::vector<IntMatrix> close_matrices(const std::vector<IntMatrix>& gens, size_t cap = 0);

// Named groups.
struct CatalogueEntry {
    std::string name;
    std::string role;
    std::vector<GroupElement> generators;
    size_t dim() const { return generators.empty() ? 0 : generators[0].dim(); }
    AffineGroup group() const { return AffineGroup::close(generators); }
    std::vector<IntMatrix> matrices() const;
};
const std::vector<CatalogueEntry>& catalogue();
const CatalogueEntry& catalogue_entry(const std::string& name);
IntMatrix named_matrix(const std::string& name);

// JSON-facing helpers: torus entries as "p/q" strings.
RatVec parse_torus(const std::vector<std::string>& entries);
std::vector<std::string> torus_strings(const RatVec& s);

}  // namespace equitor
