#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "equitor/classifier.hpp"

using namespace equitor;

namespace {

GroupElement tr(std::vector<long> num, long d) {
    RatVec s;
    for (long a : num) s.push_back(rat(a, d));
    return GroupElement::translation(s);
}

GroupElement lift(const std::string& name, std::vector<long> num, long d) {
    RatVec s;
    for (long a : num) s.push_back(rat(a, d));
    return {s, named_matrix(name)};
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

const SweepResult& small_sweep() {
    static const SweepResult r = [] {
        SweepSpec sp;
        sp.classes = {"iota1", "iota4", "theta1", "theta3", "K2", "K5", "K7", "K9", "D4_tau", "C3_P1xP2", "eta",
                      "bad_C2xC4", "example_D4"};
        sp.denominators = {2, 3};
        sp.max_order = 24;
        sp.jobs = 2;
        return sweep(sp);
    }();
    return r;
}

}  // namespace

TEST_CASE("threefold examples") {
    SUBCASE("dihedral example") {
        Verdict v = classify(catalogue_entry("example_D4").group());
        CHECK(v.condition_A);
        CHECK_FALSE(v.U);
        CHECK_FALSE(v.SL);
        CHECK(v.contains_k9);
        REQUIRE(v.beta_vanishes.has_value());
        CHECK_FALSE(*v.beta_vanishes);
        CHECK(v.criterion_agrees == std::optional<bool>(true));
        REQUIRE(v.cross_check.has_value());
        CHECK(v.cross_check->find("NonVanishing") != std::string::npos);
        CHECK(v.model == "S");
    }
    SUBCASE("C2 x D4 on (C), trivial torus part") {
        Verdict v = classify(catalogue_entry("sylow_C").group());
        CHECK(v.torus_order == 1);
        CHECK(v.condition_A);
        CHECK(v.U);
        CHECK(v.SL);
        CHECK(v.beta_vanishes == std::optional<bool>(true));
    }
    SUBCASE("the C2 x C4 group of the criterion") {
        Verdict v = classify(catalogue_entry("bad_C2xC4").group());
        CHECK(v.condition_A);
        CHECK(v.U);
        CHECK_FALSE(v.SL);
        CHECK(v.bad_groups == std::vector<std::string>{"bad_C2xC4"});
    }
    SUBCASE("K9 with odd torus part stays unirational") {
        auto G = AffineGroup::close({GroupElement::matrix(catalogue_entry("K9").generators[0].A),
                                     GroupElement::matrix(catalogue_entry("K9").generators[1].A),
                                     tr({1, 1, 1}, 3)});
        Verdict v = classify(G);
        CHECK(v.torus_order % 2 == 1);
        CHECK(v.U == v.condition_A);
        CHECK_FALSE(v.SL);
        if (v.beta_vanishes) CHECK(*v.beta_vanishes == v.U);
    }
    SUBCASE("wrong dimension") {
        CHECK_THROWS_AS(classify_threefold(catalogue_entry("s_D4").group()), DimensionMismatch);
        CHECK_THROWS_AS(classify_surface(catalogue_entry("K9").group()), DimensionMismatch);
    }
}

TEST_CASE("model choice") {
    // K9 in scrambled coordinates is carried back into Aut(S)
    IntMatrix X{{1, 1, 0}, {0, 1, 0}, {2, 0, 1}};
    AffineGroup G = catalogue_entry("example_D4").group();
    AffineGroup H = change_coordinates(G, X);
    CHECK(H.order() == G.order());
    CHECK_FALSE(is_invariant(build_model("S").fan, H.image()));
    ModelChoice mc = choose_model(H);
    CHECK(mc.model.name == "S");
    CHECK(is_invariant(mc.model.fan, mc.group.image()));
    Verdict a = classify(G), b = classify(H);
    CHECK(a.condition_A == b.condition_A);
    CHECK(a.U == b.U);
    CHECK(a.SL == b.SL);

    // smallest model first
    CHECK(choose_model(catalogue_entry("C3_P3").group()).model.name == "P3");
    CHECK(choose_model(catalogue_entry("D4_tau").group()).model.name == "D4cone");
    CHECK(choose_model(catalogue_entry("sylow_SP").group()).model.name == "S");

    // verdict stability across two invariant models
    ClassifyOptions opt;
    opt.second_model = true;
    opt.cross_check = false;
    int compared = 0;
    for (auto& [cls, K] : sweep_groups({3, {"iota1", "iota3", "K7", "theta4", "K9"}, {2}, 16, 0, 1, opt})) {
        Verdict v = classify(K, opt);
        if (!v.models_agree) continue;
        ++compared;
        CHECK_MESSAGE(*v.models_agree, cls << " " << v.group_hash);
    }
    CHECK(compared >= 20);
}

TEST_CASE("sweep invariants") {
    const SweepResult& r = small_sweep();
    REQUIRE(r.rows.size() > 60);
    CHECK(r.errors == 0);
    CHECK(r.disagreements == 0);
    CHECK(r.agreements > 30);
    int lemma54 = 0, dichotomy = 0;
    for (auto& row : r.rows) {
        REQUIRE(row.verdict);
        const Verdict& v = *row.verdict;
        // SL => U => A, every verdict justified
        CHECK((!v.SL || v.U));
        CHECK((!v.U || v.condition_A));
        CHECK(v.justification.size() >= 3);
        // eta with a nontrivial 2-part of G_T fails (A)
        auto img = row.group.image();
        bool has_eta = std::find(img.begin(), img.end(), named_matrix("eta")) != img.end();
        if (has_eta && v.torus_order % 2 == 0) {
            ++lemma54;
            CHECK_FALSE(v.condition_A);
        }
        // 2-groups with (A): U fails exactly for nontrivial G_T and pi*(G) conjugate to K9
        if (is_power_of_two(v.order) && v.condition_A) {
            bool k9 = glnz_conjugate(img, catalogue_entry("K9").matrices()).kind == ConjugacyVerdict::Conjugate;
            CHECK(v.U == !(v.torus_order > 1 && k9));
            dichotomy += !v.U;
        }
        // a fixed point gives beta = 0
        if (v.beta_vanishes && has_fixed_point(choose_model(row.group).model.fan,
                                               choose_model(row.group).group.generators()))
            CHECK(*v.beta_vanishes);
    }
    CHECK(lemma54 > 0);
    CHECK(dichotomy > 0);

    CHECK(sweep(std::vector<std::pair<std::string, AffineGroup>>{}, {}).rows.empty());
    SweepSpec none;
    CHECK(sweep_groups(none).empty());
}

TEST_CASE("beta when (A) fails") {
    // (A) fails, so U fails and beta cannot vanish
    ClassifyOptions opt;
    opt.beta_when_A_fails = true;
    int checked = 0;
    for (auto& [cls, G] : sweep_groups({3, {"K5", "theta2", "iota1"}, {2}, 16, 0, 1, opt})) {
        Verdict v = classify(G, opt);
        if (v.condition_A || !v.beta_vanishes) continue;
        ++checked;
        CHECK_FALSE(*v.beta_vanishes);
    }
    CHECK(checked >= 3);
}

TEST_CASE("three-groups") {
    int checked = 0;
    for (auto& [cls, G] : sweep_groups({3, {"C3_P3", "C3_P1xP2"}, {3}, 27, 0, 1, {}})) {
        Verdict v = classify(G);
        CHECK(v.U == v.condition_A);
        if (v.beta_vanishes) {
            ++checked;
            CHECK(*v.beta_vanishes == v.condition_A);
        }
    }
    CHECK(checked >= 5);
}

TEST_CASE("order-2 characterization") {
    auto groups = iota_half_groups();
    REQUIRE(groups.size() > 100);
    std::map<std::string, std::pair<int, int>> seen;
    for (auto& [cls, G] : groups) {
        std::string found;
        auto pred = remark_alt_predicate(G, &found);
        REQUIRE(pred.has_value());
        CHECK(found == cls);
        ModelChoice mc = choose_model(G);
        bool A = condition_A(mc.model.fan, mc.group, true).holds;
        CHECK_MESSAGE(*pred == A, cls << " |G| = " << G.order());
        (A ? seen[cls].first : seen[cls].second)++;
        if (cls != "iota4") CHECK(A == has_fixed_point(mc.model.fan, mc.group.generators()));
    }
    for (auto cls : {"iota1", "iota2", "iota4"}) {
        CHECK(seen[cls].first > 0);
        CHECK(seen[cls].second > 0);
    }
    CHECK(seen["iota3"].second == 0);
    CHECK_FALSE(remark_alt_predicate(catalogue_entry("K1").group()).has_value());
}

TEST_CASE("surfaces") {
    SUBCASE("swap, rank 1") {
        auto G = AffineGroup::close({lift("s_iota3", {1, 0}, 2), tr({1, 1}, 3)});
        Verdict v = classify(G);
        CHECK(v.model == "P1xP1");
        CHECK(v.pic_invariant_rank == 1);
        CHECK(v.linearizable == std::optional<bool>(true));
        CHECK(v.SL == v.condition_A);
    }
    SUBCASE("C3 with 3 | |G_T|") {
        auto G = AffineGroup::close({GroupElement::matrix(named_matrix("s_C3")), tr({1, 2}, 3)});
        Verdict v = classify(G);
        CHECK(v.model == "dP6");
        CHECK(v.pic_invariant_rank == 2);
        CHECK(v.torus_order % 3 == 0);
        CHECK(v.linearizable == std::optional<bool>(false));
        auto G0 = AffineGroup::close({GroupElement::matrix(named_matrix("s_C3")), tr({1, 0}, 2)});
        CHECK(classify(G0).linearizable == std::optional<bool>(true));
    }
    SUBCASE("S3 with trivial torus part") {
        // rotation and the reflection exchanging the two ray orbits of the hexagon
        auto G = AffineGroup::from_matrices({named_matrix("s_C3"), IntMatrix{{0, -1}, {-1, 0}}});
        Verdict v = classify(G);
        CHECK(v.torus_order == 1);
        CHECK(v.order == 6);
        CHECK(v.pic_invariant_rank == 1);
        CHECK(v.linearizable == std::optional<bool>(true));
        CHECK(v.SL);
        // the other S3 class fixes a ray orbit split: rank 2, 3 does not divide |G_T| = 1
        Verdict w = classify(catalogue_entry("s_S3").group());
        CHECK(w.pic_invariant_rank == 2);
        CHECK(w.linearizable == std::optional<bool>(true));
    }
    SUBCASE("non-split Klein four group") {
        auto G = AffineGroup::close({lift("s_iota1", {1, 1}, 2), GroupElement::matrix(named_matrix("s_iota2"))});
        CHECK(G.order() == 4);
        CHECK_FALSE(conjugate_to_matrix_group(G));
        Verdict v = classify(G);
        CHECK_FALSE(v.condition_A);
        CHECK(v.linearizable == std::optional<bool>(false));
        CHECK(v.table_agrees == std::optional<bool>(true));
    }
    SUBCASE("table sweep") {
        SweepSpec sp;
        sp.dim = 2;
        sp.classes = {"s_iota1", "s_iota2", "s_iota3", "s_iota12", "s_D4", "s_C3", "s_S3", "s_D6"};
        sp.denominators = {2, 3, 4};
        sp.max_order = 48;
        sp.options.second_model = true;
        auto r = sweep(sp);
        CHECK(r.errors == 0);
        int tables = 0, decided = 0;
        for (auto& row : r.rows) {
            const Verdict& v = *row.verdict;
            CHECK(v.SL == v.U);
            CHECK(v.U == v.condition_A);
            if (v.table_agrees) {
                ++tables;
                CHECK(*v.table_agrees);
            }
            if (v.models_agree) CHECK(*v.models_agree);
            if (v.linearizable) {
                ++decided;
                CHECK((!*v.linearizable || v.SL));
            }
        }
        CHECK(tables > 40);
        CHECK(decided == static_cast<int>(r.rows.size()));
    }
}

TEST_CASE("census") {
    auto c4 = census("C4", false);
    CHECK(c4.classes.size() == 4);
    CHECK(c4.certificates.size() == 6);
    CHECK_THROWS_AS(census("C3", false), std::invalid_argument);
}
