#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "equitor/fan.hpp"

using namespace equitor;

static std::vector<IntMatrix> mats(const std::string& name) { return catalogue_entry(name).matrices(); }

TEST_CASE("all models are smooth and complete") {
    for (auto& name : model_names()) {
        INFO(name);
        auto m = build_model(name);
        CHECK(is_smooth(m.fan));
        CHECK(complete_by_facets(m.fan));
        CHECK(complete_by_covering(m.fan));
        CHECK(is_complete(m.fan));
        // Pic -> PL -> Pic is the identity
        CHECK((m.section * m.pic_projection).is_identity());
        CHECK((m.m_embedding * m.pic_projection).is_zero());
        CHECK(m.pic_rank() == m.pl_rank() - m.fan.n);
    }
}

TEST_CASE("model statistics") {
    auto S = build_model("S");
    CHECK(S.fan.rays.size() == 14);
    CHECK(S.fan.max_cones.size() == 24);
    CHECK(S.fan.count_cones(2) == 36);
    CHECK(S.fan.all_cones().size() == 75);
    CHECK(S.pic_rank() == 11);
    // printed M embedding
    IntMatrix m{{-1, -1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, -1, -1},
                {0, 1, -1, 0, 0, 1, -1, 0, 0, -1, -1, 1, 1, 0},
                {0, 0, 1, -1, 1, -1, 0, 0, -1, 1, 0, 0, -1, 1}};
    CHECK(S.m_embedding == m);
    auto sm = smith_form(m);
    CHECK(sm.diagonal() == IntVec{Int(1), Int(1), Int(1)});

    auto P = build_model("P");
    CHECK(P.fan.rays.size() == 18);
    CHECK(P.fan.max_cones.size() == 32);
    CHECK(P.fan.count_cones(2) == 48);
    CHECK(P.fan.all_cones().size() == 99);
    CHECK(P.pic_rank() == 15);

    auto D = build_model("D4cone");
    CHECK(D.fan.rays.size() == 6);
    CHECK(D.fan.max_cones.size() == 8);
    CHECK(is_invariant(D.fan, mats("D4_tau")));
}

TEST_CASE("invariance") {
    auto P3 = build_model("P3");
    CHECK(is_invariant(P3.fan, {IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}}));
    auto C = build_model("C");
    CHECK(is_invariant(C.fan, mats("sylow_C")));
    CHECK(!is_invariant(C.fan, mats("K9")));
    // negative control: perturbed generator
    CHECK(!is_invariant(C.fan, {IntMatrix{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}));
    auto S = build_model("S");
    auto autS = automorphism_group(S.fan);
    CHECK(autS.size() == 48);
    CHECK(is_invariant(S.fan, autS));
    CHECK(automorphism_group(C.fan).size() == 48);
    CHECK(automorphism_group(build_model("P").fan).size() == 48);
    CHECK(automorphism_group(build_model("F").fan).size() == 24);
    CHECK(automorphism_group(build_model("dP6").fan).size() == 12);
    CHECK(is_invariant(build_model("dP6").fan, mats("s_D6")));
    // (P) group is the contragredient of the (S) group
    std::vector<IntMatrix> contra;
    for (auto& A : autS) contra.push_back(inverse_unimodular(A).transpose());
    CHECK(glnz_conjugate(contra, automorphism_group(build_model("P").fan)).kind == ConjugacyVerdict::Conjugate);
    CHECK(glnz_conjugate(autS, automorphism_group(build_model("P").fan)).kind == ConjugacyVerdict::NotConjugate);
    // the permutation module is a representation
    auto pa = ray_permutation(S.fan, autS[3]);
    auto pb = ray_permutation(S.fan, autS[7]);
    auto pab = ray_permutation(S.fan, autS[3] * autS[7]);
    REQUIRE((pa && pb && pab));
    CHECK(permutation_matrix(*pa) * permutation_matrix(*pb) == permutation_matrix(*pab));
}

TEST_CASE("star subdivision") {
    auto P2 = build_model("P2").fan;
    auto b = star_subdivide(P2, IntVec{Int(1), Int(1)});
    CHECK(b.max_cones.size() == 4);
    CHECK(is_smooth(b));
    CHECK(is_complete(b));

    auto P3 = build_model("P3").fan;
    Fan f = P3;
    for (auto& c : P3.max_cones) {
        IntVec v(3);
        for (int i : c)
            for (int k = 0; k < 3; ++k) v[k] += P3.rays[i][k];
        f = star_subdivide(f, v);
    }
    CHECK(f.max_cones.size() == 12);
    CHECK(is_smooth(f));
    CHECK(is_complete(f));

    Fan br = braid_fan();
    CHECK(br.max_cones.size() == 24);
    CHECK(is_smooth(br));
    CHECK(is_complete(br));

    Fan p1 = Fan::make(1, {IntVec{Int(1)}}, {{0}});
    CHECK_THROWS_AS(star_subdivide(p1, IntVec{Int(-1)}), RayOutsideSupport);
}

TEST_CASE("quotient fans") {
    auto D = build_model("D4cone");
    // the tau-group fixes v1 = (-1,0,-1) and moves v5
    CHECK_THROWS_AS(quotient_fan(D.fan, {4}, mats("D4_tau")), ConeNotStabilized);
    auto q5 = quotient_fan(D.fan, {4}, {});
    CHECK(is_complete(q5.fan));
    CHECK(automorphism_group(q5.fan).size() != 8);  // not P1 x P1
    auto q = quotient_fan(D.fan, {0}, mats("D4_tau"));
    CHECK(q.fan.n == 2);
    CHECK(q.fan.rays.size() == 4);
    CHECK(q.fan.max_cones.size() == 4);
    CHECK(is_smooth(q.fan));
    CHECK(is_complete(q.fan));
    CHECK(automorphism_group(q.fan).size() == 8);  // P1 x P1
    CHECK(is_invariant(q.fan, q.action));

    auto o = quotient_fan(D.fan, {}, {});
    CHECK(o.fan.same_as(D.fan));
    auto pt = quotient_fan(D.fan, D.fan.max_cones[0], {});
    CHECK(pt.fan.n == 0);
    CHECK(pt.fan.rays.empty());

    CHECK_THROWS_AS(quotient_fan(D.fan, {0}, {IntMatrix{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}}), ConeNotStabilized);
}

TEST_CASE("fixed points on orbits") {
    Fan p1 = Fan::make(1, {IntVec{Int(1)}, IntVec{Int(-1)}}, {{0}, {1}});
    GroupElement g{{Rat(1, 2)}, IntMatrix{{-1}}};
    CHECK(orbit_fixed_point(p1, {g}, {}));
    CHECK(orbit_fixed_point_bruteforce(p1, {g}, {}, 4));
    GroupElement t = GroupElement::translation({Rat(1, 2)});
    CHECK(!orbit_fixed_point(p1, {t}, {}));
    CHECK(has_fixed_point(p1, {t}));

    // theta2 with (1/2,0,0) on P1 x Q: no fixed point anywhere
    auto C = build_model("P1xQ");
    std::vector<GroupElement> gens{GroupElement::matrix(named_matrix("theta2")),
                                   GroupElement::translation({Rat(1, 2), Rat(0), Rat(0)})};
    CHECK(!has_fixed_point(C.fan, gens));
}

TEST_CASE("orbit fixed points agree with brute force") {
    std::mt19937 rng(17);
    std::vector<std::string> ms{"P1xP1", "dP6", "P2"};
    std::vector<std::string> gs{"s_iota1", "s_iota2", "s_iota3", "s_C3", "s_D4", "s_S3"};
    int compared = 0;
    for (auto& mn : ms)
        for (auto& gn : gs) {
            auto m = build_model(mn);
            auto entry = catalogue_entry(gn);
            if (!is_invariant(m.fan, entry.matrices())) continue;
            for (int it = 0; it < 6; ++it) {
                std::vector<GroupElement> gens = entry.generators;
                std::uniform_int_distribution<int> d(0, 3);
                for (auto& g : gens) g.s = reduce_mod1({rat(d(rng), 4), rat(d(rng), 4)});
                AffineGroup G;
                try {
                    G = AffineGroup::close(gens, 256);
                } catch (const CapExceeded&) {
                    continue;
                }
                long D = 2 * G.order() * 4;
                for (auto& c : m.fan.all_cones()) {
                    bool st = true;
                    for (auto& g : gens) st = st && stabilizes(m.fan, c, g.A);
                    if (!st) continue;
                    CHECK(orbit_fixed_point(m.fan, gens, c) == orbit_fixed_point_bruteforce(m.fan, gens, c, D));
                    ++compared;
                }
            }
        }
    CHECK(compared > 50);

    // random n = 3 instances on (C)
    auto C = build_model("C");
    auto W = catalogue_entry("sylow_C").group();
    for (int it = 0; it < 25; ++it) {
        std::uniform_int_distribution<int> pick(0, W.order() - 1), d(0, 1);
        std::vector<GroupElement> gens{W.element(pick(rng)), W.element(pick(rng))};
        for (auto& g : gens) g.s = {rat(d(rng), 2), rat(d(rng), 2), rat(d(rng), 2)};
        AffineGroup G;
        try {
            G = AffineGroup::close(gens, 64);
        } catch (const CapExceeded&) {
            continue;
        }
        if (G.order() > 8) continue;
        for (auto& c : C.fan.all_cones()) {
            bool st = true;
            for (auto& g : gens) st = st && stabilizes(C.fan, c, g.A);
            if (!st) continue;
            CHECK(orbit_fixed_point(C.fan, gens, c) ==
                  orbit_fixed_point_bruteforce(C.fan, gens, c, 2 * G.order() * 2));
        }
    }
}

TEST_CASE("condition A, order-2 cases") {
    auto C = build_model("C");
    auto with_torus = [](const std::string& m, std::vector<RatVec> ts) {
        std::vector<GroupElement> gens{GroupElement::matrix(named_matrix(m))};
        for (auto& t : ts) gens.push_back(GroupElement::translation(t));
        return AffineGroup::close(gens);
    };
    auto G1 = with_torus("iota1", {{Rat(0), Rat(1, 2), Rat(0)}});
    CHECK(!condition_A(C.fan, G1).holds);
    auto G2 = with_torus("iota1", {{Rat(1, 2), Rat(0), Rat(0)}});
    CHECK(condition_A(C.fan, G2).holds);
    auto G3 = with_torus("iota3", {{Rat(1, 2), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1, 2)}});
    CHECK(condition_A(C.fan, G3).holds);
    // eta with a 2-torsion translation
    auto G4 = with_torus("eta", {{Rat(1, 2), Rat(1, 2), Rat(0)}});
    auto r = condition_A(C.fan, G4);
    CHECK(!r.holds);
    CHECK(!r.witness.empty());
    CHECK_THROWS_AS(condition_A(C.fan, catalogue_entry("K9").group()), FanNotInvariant);

    // the dihedral example on model (S)
    auto S = build_model("S");
    auto E = catalogue_entry("example_D4").group();
    CHECK(condition_A(S.fan, E).holds);
    CHECK(condition_A(S.fan, E, true).holds);
}

TEST_CASE("text round trip") {
    for (auto& name : model_names()) {
        auto f = build_model(name).fan;
        auto g = fan_from_text(fan_to_text(f));
        CHECK(g.same_as(f));
    }
    CHECK_THROWS_AS(fan_from_text("ray 1 0\n"), MalformedFan);
    CHECK_THROWS_AS(fan_from_text("n 2\nray 2 0\n"), MalformedFan);
}
