// Unirationality and stable linearizability verdicts for toric surfaces and threefolds.
#pragma once

#include <optional>

#include "equitor/obstruction.hpp"

namespace equitor {

struct Verdict {
    size_t dim = 0;
    bool condition_A = false;
    bool U = false;
    bool SL = false;
    std::optional<bool> linearizable;  // surfaces only
    std::vector<std::string> justification;
    std::optional<std::string> cross_check;  // beta report id: "<hash>:<model>:<verdict>"

    std::string group_hash;
    int order = 0;
    int torus_order = 0;
    int image_order = 0;
    std::string model;
    IntMatrix conjugator;  // t -> t X carries pi*(G) into Aut(model)
    size_t pic_invariant_rank = 0;

    bool contains_k9 = false;
    std::vector<std::string> bad_groups;  // excluded groups contained in pi*(G)
    std::optional<bool> beta_vanishes;    // all Sylow subgroups
    std::optional<bool> criterion_agrees; // beta_vanishes == U
    std::optional<bool> models_agree;     // Condition (A) on a second invariant model
    std::optional<bool> table_agrees;     // surfaces: printed p-group table against condition_A
};

struct ClassifyOptions {
    size_t beta_max_order = 64;  // largest Sylow subgroup sent to beta
    bool cross_check = true;
    bool beta_when_A_fails = false;  // also confirm beta != 0 when (A) fails
    bool second_model = false;       // recompute (A) on another invariant model
};

struct ModelChoice {
    ToricModel model;
    IntMatrix X;       // coordinate change
    AffineGroup group; // G in the new coordinates
};
// first model in preference order whose automorphism group contains a conjugate of pi*(G)
ModelChoice choose_model(const AffineGroup& G, const std::vector<std::string>& exclude = {});
// some translation conjugates G to a group of matrices
bool conjugate_to_matrix_group(const AffineGroup& G);
AffineGroup change_coordinates(const AffineGroup& G, const IntMatrix& X);
std::vector<std::string> model_preference(size_t dim);

Verdict classify_threefold(const AffineGroup& G, const ClassifyOptions& opt = {});
Verdict classify_surface(const AffineGroup& G, const ClassifyOptions& opt = {});
Verdict classify(const AffineGroup& G, const ClassifyOptions& opt = {});

// Printed (A)-characterization for pi*(G) of order 2 (the four iota classes); nullopt for
// other images. Evaluated after conjugating pi*(G) onto the catalogue representative.
std::optional<bool> remark_alt_predicate(const AffineGroup& G, std::string* cls = nullptr);

struct SweepSpec {
    size_t dim = 3;
    std::vector<std::string> classes;  // catalogue names of pi*(G)
    std::vector<long> denominators{2};
    size_t max_order = 32;
    size_t max_groups = 0;  // 0 = no limit
    int jobs = 0;           // 0 = hardware concurrency
    ClassifyOptions options;
};
struct SweepRow {
    std::string cls;
    AffineGroup group;
    std::optional<Verdict> verdict;
    std::string error;  // exception text when classification failed
};
struct SweepResult {
    std::vector<SweepRow> rows;
    size_t agreements = 0, disagreements = 0, unchecked = 0, errors = 0;
};
// deterministic enumeration: lifts of the first generator and one extra translation
std::vector<std::pair<std::string, AffineGroup>> sweep_groups(const SweepSpec& spec);
SweepResult sweep(const SweepSpec& spec);
// the four iota classes with every lift in (1/2 Z/Z)^3 and every subgroup of (1/2 Z/Z)^3 adjoined
std::vector<std::pair<std::string, AffineGroup>> iota_half_groups();
SweepResult sweep(const std::vector<std::pair<std::string, AffineGroup>>& groups, const ClassifyOptions& opt,
                  int jobs = 0);

// conjugacy classes of finite subgroups of GL_3(Z) of a given isomorphism type, found inside
// the maximal groups of the models C, S, P, F
struct CensusEntry {
    std::vector<IntMatrix> generators;
    std::string found_in;
};
struct CensusResult {
    std::vector<CensusEntry> classes;
    std::vector<std::string> certificates;  // one per distinct pair, for NotConjugate
    size_t pairs_compared = 0;
};
// type: "C2", "C4", "C2^2", "D4"; exclude_eta drops groups containing -I
CensusResult census(const std::string& type, bool exclude_eta);

}  // namespace equitor
