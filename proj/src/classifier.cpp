#include "equitor/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <thread>

namespace equitor {

namespace {

struct ModelData {
    ToricModel model;
    AffineGroup aut;
    std::vector<Subset> subgroups;
};

const ModelData& model_data(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<ModelData>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return *it->second;
    auto d = std::make_unique<ModelData>();
    d->model = build_model(name);
    d->aut = AffineGroup::from_matrices(automorphism_group(d->model.fan));
    d->subgroups = d->aut.table().subgroups();
    return *(cache[name] = std::move(d));
}

std::vector<IntMatrix> subgroup_matrices(const AffineGroup& G, const Subset& S) {
    std::vector<IntMatrix> out;
    for (int i : S) out.push_back(G.element(i).A);
    std::sort(out.begin(), out.end());
    return out;
}

std::string image_key(const std::vector<IntMatrix>& mats) {
    std::string k;
    for (auto& A : mats) k += A.str() + ";";
    return k;
}

std::vector<int> prime_factors(int n) {
    std::vector<int> ps;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

bool is_power_of(int n, int p) {
    while (n > 1 && n % p == 0) n /= p;
    return n == 1;
}

const std::vector<IntMatrix>& closed_catalogue(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, std::vector<IntMatrix>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    return cache[name] = close_matrices(catalogue_entry(name).matrices());
}

// conjugate G so that pi*(G) equals the catalogue group exactly; nullopt if not conjugate
std::optional<AffineGroup> onto_class(const AffineGroup& G, const std::string& name) {
    auto v = glnz_conjugate(G.image(), closed_catalogue(name));
    if (v.kind == ConjugacyVerdict::Inconclusive) throw InconclusiveConjugacy("class test against " + name);
    if (v.kind == ConjugacyVerdict::NotConjugate) return std::nullopt;
    return change_coordinates(G, v.witness);
}

std::vector<RatVec> torus_translations(const AffineGroup& G) {
    std::vector<RatVec> out;
    for (int i : G.torus_kernel()) out.push_back(G.element(i).s);
    return out;
}

bool odd_denominator(const Rat& q) { return q.get_den() % 2 != 0; }

size_t invariant_pic_rank(const ToricModel& model, const AffineGroup& G) {
    return fixed_sublattice(model_lattices(model, G).Pic).rows();
}

std::string verdict_word(bool vanishes) { return vanishes ? "Vanishes" : "NonVanishing"; }

// beta on every Sylow subgroup; nullopt if some Sylow subgroup exceeds the cap
std::optional<bool> sylow_beta(const ToricModel& model, const AffineGroup& G, size_t cap,
                               std::vector<std::string>& notes) {
    bool vanishes = true;
    for (int p : prime_factors(G.order())) {
        AffineGroup P = sylow(G, p);
        if (p >= 5) {
            // only translations have order prime to 6; they fix a boundary point
            if (P.image().size() != 1)
                throw std::logic_error("Sylow subgroup for p >= 5 has a nontrivial matrix part");
            if (!has_fixed_point(model.fan, P.generators()))
                throw std::logic_error("translation subgroup without a fixed point");
            notes.push_back("p = " + std::to_string(p) + ": translations only, fixed point on the boundary");
            continue;
        }
        if (static_cast<size_t>(P.order()) > cap) return std::nullopt;
        BetaOptions bo;
        bo.max_order = cap;
        ObstructionReport rep = beta(model, P, bo);
        notes.push_back("p = " + std::to_string(p) + ": beta on the Sylow subgroup of order " +
                        std::to_string(P.order()) + " " + verdict_word(rep.vanishes) +
                        (rep.vanishes ? "" : ", certificate " + vec_str(rep.certificate)));
        vanishes = vanishes && rep.vanishes;
    }
    return vanishes;
}

}  // namespace

bool conjugate_to_matrix_group(const AffineGroup& G) {
    size_t n = G.dim();
    auto gens = G.generators();
    if (gens.empty()) return true;
    // r (I - A_i) = -s_i mod 1 for every generator
    IntMatrix M(n, n * gens.size());
    RatVec rhs;
    for (size_t k = 0; k < gens.size(); ++k) {
        M.set_block(0, k * n, IntMatrix::identity(n) - gens[k].A);
        for (auto& x : gens[k].s) rhs.push_back(-x);
    }
    return solve_mod1(M.transpose(), rhs).has_value();
}

std::vector<std::string> model_preference(size_t dim) {
    if (dim == 2) return {"P1xP1", "dP6", "P2"};
    if (dim == 3) return {"P3", "P1xP2", "C", "D4cone", "S", "P", "F"};
    throw DimensionMismatch("no toric models in dimension " + std::to_string(dim));
}

AffineGroup change_coordinates(const AffineGroup& G, const IntMatrix& X) {
    IntMatrix Xi = inverse_unimodular(X);
    std::vector<GroupElement> gens;
    for (auto& g : G.generators()) gens.push_back({X.left_mul(g.s), Xi * g.A * X});
    if (gens.empty()) gens.push_back(GroupElement::identity(G.dim()));
    return AffineGroup::close(gens, G.order() + 1);
}

ModelChoice choose_model(const AffineGroup& G, const std::vector<std::string>& exclude) {
    std::vector<IntMatrix> gbar = G.image();
    static std::mutex mu;
    static std::map<std::string, std::pair<std::string, IntMatrix>> memo;
    std::string key = image_key(gbar);
    for (auto& e : exclude) key += "|" + e;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) {
            const ModelData& d = model_data(it->second.first);
            return {d.model, it->second.second, change_coordinates(G, it->second.second)};
        }
    }
    bool inconclusive = false;
    for (auto& name : model_preference(G.dim())) {
        if (std::find(exclude.begin(), exclude.end(), name) != exclude.end()) continue;
        const ModelData& d = model_data(name);
        std::optional<IntMatrix> X;
        if (is_invariant(d.model.fan, gbar)) {
            X = IntMatrix::identity(G.dim());
        } else if (d.aut.order() % static_cast<int>(gbar.size()) == 0) {
            for (auto& S : d.subgroups) {
                if (S.size() != gbar.size()) continue;
                auto v = glnz_conjugate(gbar, subgroup_matrices(d.aut, S));
                if (v.kind == ConjugacyVerdict::Inconclusive) inconclusive = true;
                if (v.kind != ConjugacyVerdict::Conjugate) continue;
                X = v.witness;
                break;
            }
        }
        if (!X) continue;
        {
            std::lock_guard<std::mutex> lock(mu);
            memo[key] = {name, *X};
        }
        AffineGroup H = change_coordinates(G, *X);
        if (!is_invariant(d.model.fan, H.image())) throw std::logic_error("conjugated group moves the fan");
        return {d.model, *X, H};
    }
    if (inconclusive) throw InconclusiveConjugacy("model search: conjugacy test inconclusive");
    throw FanNotInvariant("no catalogue model carries a conjugate of pi*(G)");
}

Verdict classify_threefold(const AffineGroup& G, const ClassifyOptions& opt) {
    if (G.dim() != 3) throw DimensionMismatch("classify_threefold needs n = 3");
    Verdict v;
    v.dim = 3;
    v.group_hash = G.hash();
    v.order = G.order();
    v.torus_order = static_cast<int>(G.torus_kernel().size());
    std::vector<IntMatrix> gbar = G.image();
    v.image_order = static_cast<int>(gbar.size());

    ModelChoice mc = choose_model(G);
    v.model = mc.model.name;
    v.conjugator = mc.X;
    v.pic_invariant_rank = invariant_pic_rank(mc.model, mc.group);
    ConditionAResult a = condition_A(mc.model.fan, mc.group, true);
    v.condition_A = a.holds;
    if (a.holds)
        v.justification.push_back("Condition (A) holds on model " + v.model + " (" + std::to_string(a.checked) +
                                  " abelian subgroups up to conjugacy have fixed points)");
    else
        v.justification.push_back("Condition (A) fails on model " + v.model + ": an abelian subgroup of order " +
                                  std::to_string(a.witness.size()) + " has no fixed point");

    if (opt.second_model) {
        try {
            ModelChoice mc2 = choose_model(G, {mc.model.name});
            bool a2 = condition_A(mc2.model.fan, mc2.group, true).holds;
            v.models_agree = a2 == a.holds;
            v.justification.push_back("Condition (A) on model " + mc2.model.name + ": " +
                                      (a2 ? "holds" : "fails"));
        } catch (const FanNotInvariant&) {
        }
    }

    v.contains_k9 = contains_conjugate_subgroup(gbar, closed_catalogue("K9"));
    for (std::string bad : {"K9", "bad_C2xC4", "bad_C2^3"})
        if (bad == "K9" ? v.contains_k9 : contains_conjugate_subgroup(gbar, closed_catalogue(bad)))
            v.bad_groups.push_back(bad);
    bool even_torus = v.torus_order % 2 == 0;

    if (!v.condition_A) {
        v.U = false;
        v.justification.push_back("U fails: Condition (A) is necessary");
    } else if (v.contains_k9 && even_torus) {
        v.U = false;
        v.justification.push_back("U fails: pi*(G) contains a conjugate of K9 and the 2-Sylow subgroup has "
                                  "a nontrivial torus part");
    } else if (v.contains_k9) {
        v.U = true;
        v.justification.push_back("U holds: pi*(G) contains a conjugate of K9 but G_T has odd order, so the "
                                  "2-Sylow subgroup meets the torus trivially and (A) suffices");
    } else {
        v.U = true;
        v.justification.push_back("U holds: (A) and pi*(G) contains no conjugate of K9");
    }
    if (!v.U) {
        v.SL = false;
        v.justification.push_back("SL fails: SL implies U");
    } else if (!v.bad_groups.empty()) {
        v.SL = false;
        v.justification.push_back("SL fails: pi*(G) contains a conjugate of " + v.bad_groups.front() +
                                  ", Pic is not stably permutation");
    } else {
        v.SL = true;
        v.justification.push_back("SL holds: U and Pic is stably permutation (none of the three groups)");
    }

    if (opt.cross_check && (v.condition_A || opt.beta_when_A_fails)) {
        std::vector<std::string> notes;
        v.beta_vanishes = sylow_beta(mc.model, mc.group, opt.beta_max_order, notes);
        if (v.beta_vanishes) {
            v.criterion_agrees = *v.beta_vanishes == v.U;
            v.cross_check = v.group_hash + ":" + v.model + ":" + verdict_word(*v.beta_vanishes);
            for (auto& n : notes) v.justification.push_back("beta, " + n);
        } else {
            v.justification.push_back("beta not computed: a Sylow subgroup exceeds order " +
                                      std::to_string(opt.beta_max_order));
        }
    }
    return v;
}

std::optional<bool> remark_alt_predicate(const AffineGroup& G, std::string* cls) {
    if (G.dim() != 3 || G.image().size() != 2) return std::nullopt;
    for (std::string name : {"iota1", "iota2", "iota3", "iota4"}) {
        auto H = onto_class(G, name);
        if (!H) continue;
        if (cls) *cls = name;
        const Rat half = rat(1, 2);
        for (auto& s : torus_translations(*H)) {
            if (name == "iota1" && (s[1] != 0 || s[2] != 0)) return false;
            if (name == "iota2" && s[2] != 0) return false;
            if (name == "iota4" && s[0] == s[1] && s[2] == half) return false;
        }
        return true;
    }
    return std::nullopt;  // eta
}

Verdict classify_surface(const AffineGroup& G, const ClassifyOptions& opt) {
    if (G.dim() != 2) throw DimensionMismatch("classify_surface needs n = 2");
    Verdict v;
    v.dim = 2;
    v.group_hash = G.hash();
    v.order = G.order();
    v.torus_order = static_cast<int>(G.torus_kernel().size());
    std::vector<IntMatrix> gbar = G.image();
    v.image_order = static_cast<int>(gbar.size());

    ModelChoice mc = choose_model(G);
    v.model = mc.model.name;
    v.conjugator = mc.X;
    v.pic_invariant_rank = invariant_pic_rank(mc.model, mc.group);
    ConditionAResult a = condition_A(mc.model.fan, mc.group, true);
    v.condition_A = v.U = v.SL = a.holds;
    v.justification.push_back(std::string("Condition (A) ") + (a.holds ? "holds" : "fails") + " on model " +
                              v.model);
    v.justification.push_back("surfaces: SL, U and (A) are equivalent");
    if (opt.second_model) {
        try {
            ModelChoice mc2 = choose_model(G, {mc.model.name});
            v.models_agree = condition_A(mc2.model.fan, mc2.group, true).holds == a.holds;
        } catch (const FanNotInvariant&) {
        }
    }

    // printed unirationality table for p-groups
    auto is_class = [&](const std::string& name) { return onto_class(G, name).has_value(); };
    std::optional<bool> table;
    if (v.order == 1) {
        table = true;
    } else if (is_power_of(v.order, 3)) {
        table = v.image_order == 1 || v.torus_order == 1;
    } else if (is_power_of(v.order, 2)) {
        if (v.image_order == 1 || is_class("s_iota3")) {
            table = true;
        } else if (auto H = onto_class(G, "s_iota2")) {
            auto ts = torus_translations(*H);
            table = std::all_of(ts.begin(), ts.end(), [](const RatVec& s) { return s[0] == 0; });
        } else {
            table = v.torus_order == 1 && conjugate_to_matrix_group(G);
        }
    }
    if (table) {
        v.table_agrees = *table == a.holds;
        v.justification.push_back(std::string("p-group table: ") + (*table ? "unirational" : "not unirational"));
    }

    // linearizability tables
    size_t rk = v.pic_invariant_rank;
    bool odd_torus = v.torus_order % 2 == 1;
    if (v.model == "P1xP1") {
        if (rk == 1) {
            v.linearizable = is_class("s_iota3");
            v.justification.push_back("rk Pic^G = 1 on P1xP1: linearizable iff pi*(G) is conjugate to <iota3>");
        } else if (v.image_order == 1) {
            v.linearizable = true;
            v.justification.push_back("pi*(G) = 1: translations act linearly on P1xP1 (derived)");
        } else if (auto H = onto_class(G, "s_iota2")) {
            auto ts = torus_translations(*H);
            v.linearizable = std::all_of(ts.begin(), ts.end(), [](const RatVec& s) { return odd_denominator(s[0]); });
            v.justification.push_back("rk Pic^G = 2, pi*(G) = <iota2>: linearizable iff ord(t1) is odd on G_T");
        } else if (is_class("s_iota1") || is_class("s_iota12")) {
            v.linearizable = odd_torus;
            v.justification.push_back("rk Pic^G = 2, pi*(G) = <iota1> or <iota1, iota2>: linearizable iff |G_T| is odd");
        }
    } else if (v.model == "dP6") {
        bool c3_or_s3 = v.image_order == 3 || (v.image_order == 6 && !AffineGroup::from_matrices(gbar).is_abelian());
        if (rk == 1) {
            bool iso = v.torus_order == 1 && v.order == 6;  // then G = pi*(G), C6 or S3
            v.linearizable = iso;
            v.justification.push_back("rk Pic^G = 1 on dP6: linearizable iff G_T = 1 and G is C6 or S3");
        } else if (rk == 2 && c3_or_s3) {
            v.linearizable = v.torus_order % 3 != 0;
            v.justification.push_back("rk Pic^G = 2, pi*(G) = C3 or S3: linearizable iff 3 does not divide |G_T|");
        }
    }
    if (v.linearizable && *v.linearizable && !v.condition_A) {
        // the printed rows assume the lift is split; a linearizable action satisfies (A)
        v.linearizable = false;
        v.justification.push_back("not linearizable: (A) fails although the table row matches");
    }
    return v;
}

Verdict classify(const AffineGroup& G, const ClassifyOptions& opt) {
    if (G.dim() == 2) return classify_surface(G, opt);
    return classify_threefold(G, opt);
}

std::vector<std::pair<std::string, AffineGroup>> sweep_groups(const SweepSpec& spec) {
    std::vector<std::pair<std::string, AffineGroup>> out;
    std::set<std::string> seen;
    size_t n = spec.dim;
    for (auto& cls : spec.classes) {
        const CatalogueEntry& e = catalogue_entry(cls);
        if (e.dim() != n) throw DimensionMismatch("class " + cls + " has the wrong dimension");
        for (long d : spec.denominators) {
            std::vector<RatVec> pool{RatVec(n, Rat(0))};
            for (size_t i = 0; i < n; ++i) {
                RatVec s(n, Rat(0));
                s[i] = rat(1, d);
                pool.push_back(s);
            }
            pool.push_back(RatVec(n, rat(1, d)));
            for (auto& lift : pool)
                for (size_t k = 0; k < pool.size(); ++k) {
                    std::vector<GroupElement> gens = e.generators;
                    for (size_t i = 0; i < n; ++i) gens[0].s[i] += lift[i];
                    if (k > 0) gens.push_back(GroupElement::translation(pool[k]));
                    AffineGroup G;
                    try {
                        G = AffineGroup::close(gens, spec.max_order);
                    } catch (const CapExceeded&) {
                        continue;
                    }
                    if (!seen.insert(G.hash()).second) continue;
                    out.emplace_back(cls, std::move(G));
                    if (spec.max_groups && out.size() >= spec.max_groups) return out;
                }
        }
    }
    return out;
}

std::vector<std::pair<std::string, AffineGroup>> iota_half_groups() {
    std::vector<GroupElement> halves;
    for (int i = 0; i < 3; ++i) {
        RatVec s(3, Rat(0));
        s[i] = rat(1, 2);
        halves.push_back(GroupElement::translation(s));
    }
    AffineGroup V = AffineGroup::close(halves);
    std::vector<Subset> subs = V.table().subgroups();
    std::vector<std::pair<std::string, AffineGroup>> out;
    std::set<std::string> seen;
    for (std::string cls : {"iota1", "iota2", "iota3", "iota4"}) {
        IntMatrix A = named_matrix(cls);
        for (auto& H : subs)
            for (int lift = 0; lift < V.order(); ++lift) {
                std::vector<GroupElement> gens{{V.element(lift).s, A}};
                for (int i : V.table().small_generating_set(H)) gens.push_back(V.element(i));
                AffineGroup G = AffineGroup::close(gens);
                if (seen.insert(G.hash()).second) out.emplace_back(cls, std::move(G));
            }
    }
    return out;
}

SweepResult sweep(const std::vector<std::pair<std::string, AffineGroup>>& groups, const ClassifyOptions& opt,
                  int jobs) {
    SweepResult res;
    res.rows.resize(groups.size());
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (size_t i = next++; i < groups.size(); i = next++) {
            SweepRow& row = res.rows[i];
            row.cls = groups[i].first;
            row.group = groups[i].second;
            try {
                row.verdict = classify(row.group, opt);
            } catch (const std::exception& ex) {
                row.error = ex.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs && static_cast<size_t>(t) < groups.size(); ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    for (auto& row : res.rows) {
        if (!row.verdict) {
            ++res.errors;
        } else if (!row.verdict->criterion_agrees) {
            ++res.unchecked;
        } else if (*row.verdict->criterion_agrees) {
            ++res.agreements;
        } else {
            ++res.disagreements;
        }
    }
    return res;
}

SweepResult sweep(const SweepSpec& spec) { return sweep(sweep_groups(spec), spec.options, spec.jobs); }

CensusResult census(const std::string& type, bool exclude_eta) {
    size_t order;
    if (type == "C2") order = 2;
    else if (type == "C4" || type == "C2^2") order = 4;
    else if (type == "D4") order = 8;
    else throw std::invalid_argument("census type must be C2, C4, C2^2 or D4");
    auto matches = [&](const AffineGroup& H) {
        if (static_cast<size_t>(H.order()) != order) return false;
        std::vector<int> ords = H.table().element_orders_sorted();
        int maxo = ords.back();
        if (type == "C4") return maxo == 4;
        if (type == "C2^2") return maxo == 2;
        if (type == "D4") return !H.is_abelian();
        return true;
    };
    IntMatrix eta = named_matrix("eta");
    CensusResult res;
    for (std::string name : {"C", "S", "P", "F"}) {
        const ModelData& d = model_data(name);
        for (auto& S : d.subgroups) {
            if (S.size() != order) continue;
            std::vector<IntMatrix> K = subgroup_matrices(d.aut, S);
            if (!matches(AffineGroup::from_matrices(K))) continue;
            if (exclude_eta && std::find(K.begin(), K.end(), eta) != K.end()) continue;
            bool known = false;
            for (auto& c : res.classes) {
                auto v = glnz_conjugate(c.generators, K);
                if (v.kind == ConjugacyVerdict::Inconclusive) throw InconclusiveConjugacy("census: " + type);
                if (v.kind == ConjugacyVerdict::Conjugate) {
                    known = true;
                    break;
                }
            }
            if (!known) res.classes.push_back({K, name});
        }
    }
    for (size_t i = 0; i < res.classes.size(); ++i)
        for (size_t j = i + 1; j < res.classes.size(); ++j) {
            auto v = glnz_conjugate(res.classes[i].generators, res.classes[j].generators);
            ++res.pairs_compared;
            if (v.kind != ConjugacyVerdict::NotConjugate || v.certificate.empty())
                throw std::logic_error("census representatives are not certified distinct");
            res.certificates.push_back(v.certificate);
        }
    return res;
}

}  // namespace equitor
