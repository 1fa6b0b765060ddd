#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "equitor/lattice.hpp"

using namespace equitor;

static GroupPtr table_of(const AffineGroup& G) { return std::make_shared<FiniteGroup>(G.table()); }

static GLattice natural(const AffineGroup& G, GroupPtr T) {
    std::vector<IntMatrix> act;
    for (auto& g : G.elements()) act.push_back(g.A);
    return GLattice(T, act);
}

TEST_CASE("constructions") {
    auto G = catalogue_entry("sylow_C").group();
    auto T = table_of(G);
    auto N = natural(G, T);
    CHECK(N.verify());
    auto M = dual(N);
    CHECK(M.verify());
    auto MM = dual(M);
    for (int g = 0; g < G.order(); ++g) CHECK(MM.action(g) == N.action(g));
    auto NM = tensor(N, M);
    CHECK(NM.rank() == 9);
    CHECK(NM.verify());
    auto S = direct_sum(N, GLattice::trivial(T, 2));
    CHECK(S.rank() == 5);
    CHECK(S.verify());
    // N tensor M = End(N) has invariants = commutant; for the full group this is rank 1 per isotypic part
    CHECK(fixed_sublattice(NM).rows() >= 1);
    CHECK(fixed_sublattice(S).rows() == fixed_sublattice(N).rows() + 2);

    auto one = restrict(N, Subset{0});
    CHECK(one.group()->order() == 1);
    CHECK(fixed_sublattice(one).rows() == 3);
    CHECK_THROWS_AS(restrict(N, Subset{0, 1}), NotASubgroup);
    CHECK_THROWS_AS(tensor(N, natural(catalogue_entry("K9").group(), table_of(catalogue_entry("K9").group()))),
                    GroupMismatch);
}

TEST_CASE("from generators") {
    auto G = AffineGroup::from_matrices({IntMatrix{{0, 1}, {1, 0}}});
    auto T = table_of(G);
    int g = G.index_of(GroupElement::matrix(IntMatrix{{0, 1}, {1, 0}}));
    auto L = GLattice::from_generators(T, {g}, {IntMatrix{{-1}}});
    CHECK(L.action(g) == IntMatrix{{-1}});
    CHECK(fixed_sublattice(L).rows() == 0);
    CHECK_THROWS_AS(GLattice::from_generators(T, {g}, {IntMatrix{{1, 1}, {0, 1}}}), GroupMismatch);
}

TEST_CASE("induced modules") {
    auto G = AffineGroup::from_matrices({IntMatrix{{0, 1}, {1, 0}}});
    auto T = table_of(G);
    auto triv = GLattice::trivial(std::make_shared<FiniteGroup>(T->restrict_to({0})), 1);
    auto ind = induced(triv, T, {0});
    CHECK(ind.rank() == 2);
    CHECK(ind.verify());
    // the swap module
    CHECK(ind.action(1) == IntMatrix{{0, 1}, {1, 0}});
    auto fx = fixed_sublattice(ind);
    REQUIRE(fx.rows() == 1);
    CHECK(primitive(fx.row(0)) == IntVec{Int(1), Int(1)});

    // Res Ind from an index-2 subgroup of D4 is the sum of two conjugates
    auto D = catalogue_entry("s_D4").group();
    auto TD = table_of(D);
    auto N = natural(D, TD);
    Subset H;
    for (auto& s : TD->subgroups())
        if (s.size() == 4 && !TD->is_abelian(s)) H = s;
    if (H.empty())
        for (auto& s : TD->subgroups())
            if (s.size() == 4) H = s;
    REQUIRE(H.size() == 4);
    auto L0 = restrict(N, H);
    auto I = induced(L0, TD, H);
    CHECK(I.rank() == 4);
    CHECK(I.verify());
    auto RI = restrict(I, H);
    auto reps = right_coset_representatives(*TD, H);
    REQUIRE(reps.size() == 2);
    std::vector<IntMatrix> target;
    for (size_t i = 0; i < H.size(); ++i) {
        int h = H[i];
        IntMatrix m(4, 4);
        m.set_block(0, 0, N.action(h));
        m.set_block(2, 2, N.action(TD->conj(h, TD->inv(reps[1]))));
        target.push_back(m);
    }
    CHECK(find_intertwiner(RI.actions(), target).has_value());
    // rank additivity of invariants for the induced module
    CHECK(fixed_sublattice(I).rows() == fixed_sublattice(L0).rows());
}

TEST_CASE("model lattices") {
    auto dP6 = build_model("dP6");
    auto G = catalogue_entry("s_D6").group();
    auto ml = model_lattices(dP6, G);
    CHECK(ml.Pic.rank() == 4);
    CHECK(ml.Pic.verify());
    CHECK(ml.PL.verify());
    CHECK(fixed_sublattice(ml.Pic).rows() == 1);
    CHECK(fixed_sublattice(ml.PL).rows() == 1);

    auto D = build_model("D4cone");
    auto GD = AffineGroup::from_matrices(catalogue_entry("D4_tau").matrices());
    auto mdl = model_lattices(D, GD);
    CHECK(mdl.Pic.rank() == 3);
    CHECK(mdl.Pic.verify());
    // Pic is self-dual here
    CHECK(find_intertwiner(mdl.Pic.actions(), mdl.PicDual.actions()).has_value());
    // permutation module: invariant rank = number of ray orbits
    std::vector<int> seen(6, 0);
    size_t orbits = 0;
    for (int i = 0; i < 6; ++i) {
        if (seen[i]) continue;
        ++orbits;
        for (auto& p : mdl.ray_perm) seen[p[i]] = 1;
    }
    CHECK(orbits == 3);
    CHECK(fixed_sublattice(mdl.PL).rows() == orbits);

    CHECK_THROWS_AS(model_lattices(build_model("C"), catalogue_entry("K9").group()), FanNotInvariant);
}

TEST_CASE("intertwiner negative") {
    auto G = AffineGroup::from_matrices({IntMatrix{{0, 1}, {1, 0}}});
    auto T = table_of(G);
    auto sw = natural(G, T);
    std::vector<IntMatrix> diag{IntMatrix::identity(2), IntMatrix{{1, 0}, {0, -1}}};
    // Z[C2] is not Z + Z_-
    CHECK(!find_intertwiner(sw.actions(), diag).has_value());
}
