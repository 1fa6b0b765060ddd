#include "equitor/obstruction.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace equitor {

MonomialUnit operator+(const MonomialUnit& a, const MonomialUnit& b) {
    if (a.m.size() != b.m.size()) throw DimensionMismatch("monomial dimensions differ");
    MonomialUnit r{frac(a.c + b.c), a.m};
    for (size_t i = 0; i < r.m.size(); ++i) r.m[i] += b.m[i];
    return r;
}

bool operator==(const MonomialUnit& a, const MonomialUnit& b) { return frac(a.c - b.c) == 0 && a.m == b.m; }

namespace {

IntMatrix k9_generator(int i) { return catalogue_entry("K9").generators[i].A; }

// m -> m A^{-T} on row vectors, and the constant picked up from the translation
std::pair<IntVec, Rat> move_character(const IntVec& m, const GroupElement& g, const IntMatrix& Ainv_T) {
    IntVec mp = Ainv_T.left_mul(m);
    Rat c = 0;
    for (size_t i = 0; i < mp.size(); ++i) c += g.s[i] * Rat(mp[i]);
    return {mp, c};
}

// unreduced product, used for the printed lifts
GroupElement raw_mul(const GroupElement& a, const GroupElement& b) {
    GroupElement r;
    r.s = b.A.left_mul(a.s);
    for (size_t i = 0; i < r.s.size(); ++i) r.s[i] += b.s[i];
    r.A = a.A * b.A;
    return r;
}

GroupElement raw_inverse(const GroupElement& g) {
    GroupElement r;
    r.A = inverse_unimodular(g.A);
    r.s = r.A.left_mul(g.s);
    for (auto& v : r.s) v = -v;
    return r;
}

}  // namespace

MonomialUnit act(const MonomialUnit& u, const GroupElement& g) {
    IntMatrix AiT = inverse_unimodular(g.A).transpose();
    auto [mp, c] = move_character(u.m, g, AiT);
    return {frac(u.c - c), mp};
}

IntMatrix pic_dual_matrix(const ToricModel& model, const IntMatrix& A) {
    auto perm = ray_permutation(model.fan, A);
    if (!perm) throw FanNotInvariant("fan is not invariant under the matrix");
    IntMatrix R = model.section * permutation_matrix(*perm) * model.pic_projection;
    return inverse_unimodular(R).transpose();
}

namespace {

// sum_k e_k (x) (c_k, m_k): c has r entries, W is r x n
struct UnitTensor {
    RatVec c;
    IntMatrix W;
};

struct ActionData {
    IntMatrix C, AiT;
};

UnitTensor act_tensor(const UnitTensor& u, const GroupElement& g, const ActionData& d) {
    size_t r = u.W.rows(), n = u.W.cols();
    UnitTensor out{RatVec(r, Rat(0)), IntMatrix(r, n)};
    for (size_t k = 0; k < r; ++k) {
        auto [mp, cs] = move_character(u.W.row(k), g, d.AiT);
        Rat ck = u.c[k] - cs;
        for (size_t L = 0; L < r; ++L) {
            const Int& e = d.C(k, L);
            if (e == 0) continue;
            out.c[L] += Rat(e) * ck;
            for (size_t a = 0; a < n; ++a) out.W(L, a) += e * mp[a];
        }
    }
    return out;
}

void accumulate(UnitTensor& acc, const UnitTensor& t, const Int& coef) {
    for (size_t k = 0; k < acc.c.size(); ++k) acc.c[k] += Rat(coef) * t.c[k];
    acc.W += t.W.scaled(coef);
}

IntMatrix basis_inverse(const ToricModel& model) {
    return inverse_unimodular(IntMatrix::vstack(model.section, model.m_embedding));
}

// Lambda . h as an r x R matrix
IntMatrix section_moved(const ToricModel& model, const IntMatrix& C, const IntMatrix& P) {
    return C.transpose() * model.section * P;
}

IntMatrix to_character_part(const ToricModel& model, const IntMatrix& Z, const IntMatrix& Binv) {
    size_t r = model.pic_rank(), n = model.fan.n;
    IntMatrix X = Z * Binv;
    if (!X.block(0, 0, r, r).is_zero()) throw SectionInvalid("section defect does not lie in M");
    return X.block(0, r, r, n);
}

IntVec flatten_stage1(const std::vector<IntMatrix>& W) {
    IntVec v;
    for (auto& w : W)
        for (size_t a = 0; a < w.cols(); ++a)
            for (size_t k = 0; k < w.rows(); ++k) v.push_back(w(k, a));
    return v;
}

}  // namespace

std::vector<IntMatrix> stage1_cocycle(const ToricModel& model, const AffineGroup& G, const Resolution& R) {
    auto ml = model_lattices(model, G, R.G);
    IntMatrix Binv = basis_inverse(model);
    std::vector<IntMatrix> out;
    for (size_t i = 0; i < R.ranks[1]; ++i) {
        IntMatrix Z(model.pic_rank(), model.pl_rank());
        for (auto& [h, c] : R.boundary[1][0][i]) {
            Z += section_moved(model, ml.PicDual.action(h), ml.PL.action(h)).scaled(c);
        }
        out.push_back(to_character_part(model, Z, Binv));
    }
    // cocycle identity in M (x) Pic^vee, basis index a*r + k
    auto MP = tensor(ml.M, ml.PicDual);
    auto C = cochain_complex(R, MP);
    for (auto& v : C.d[1].left_mul(flatten_stage1(out)))
        if (v != 0) throw SectionInvalid("stage-1 values fail the cocycle identity");
    return out;
}

namespace {

// apply d^1 to the lifted stage-1 cochain; elem(h) gives the group element of a term
template <class Terms>
RatVec lifted_coboundary(const ToricModel& model, const std::vector<IntMatrix>& stage1, const RatVec& shift,
                         size_t r2, const Terms& terms_of) {
    size_t r = model.pic_rank(), n = model.fan.n;
    std::vector<UnitTensor> phi;
    for (size_t j = 0; j < stage1.size(); ++j) {
        UnitTensor u{RatVec(r, Rat(0)), stage1[j]};
        if (!shift.empty())
            for (size_t k = 0; k < r; ++k) u.c[k] = shift[j * r + k];
        phi.push_back(u);
    }
    std::map<IntMatrix, ActionData> cache;
    RatVec out;
    for (size_t i = 0; i < r2; ++i) {
        UnitTensor acc{RatVec(r, Rat(0)), IntMatrix(r, n)};
        for (size_t j = 0; j < phi.size(); ++j) {
            for (auto& [g, coef] : terms_of(j, i)) {
                auto it = cache.find(g.A);
                if (it == cache.end())
                    it = cache.emplace(g.A, ActionData{pic_dual_matrix(model, g.A),
                                                       inverse_unimodular(g.A).transpose()}).first;
                accumulate(acc, act_tensor(phi[j], g, it->second), coef);
            }
        }
        if (!acc.W.is_zero()) throw ConversionFailed("stage-2 values have a nonzero M-part");
        out.insert(out.end(), acc.c.begin(), acc.c.end());
    }
    return out;
}

}  // namespace

RatVec stage2_cocycle(const ToricModel& model, const AffineGroup& G, const Resolution& R,
                      const std::vector<IntMatrix>& stage1, const RatVec& shift) {
    if (R.length() < 2) throw DegreeOutOfRange("stage 2 needs a resolution of length 2");
    auto terms = [&](size_t j, size_t i) {
        std::vector<std::pair<GroupElement, Int>> t;
        for (auto& [h, c] : R.boundary[2][j][i]) t.push_back({G.element(h), c});
        return t;
    };
    return reduce_mod1(lifted_coboundary(model, stage1, shift, R.ranks[2], terms));
}

ObstructionReport beta(const ToricModel& model, const AffineGroup& G, const BetaOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    if (!opt.periodic && static_cast<size_t>(G.order()) > opt.max_order)
        throw CapExceeded("group order " + std::to_string(G.order()) + " exceeds the beta cap");
    auto T = std::make_shared<FiniteGroup>(G.table());
    auto ml = model_lattices(model, G, T);
    Resolution R = opt.periodic ? periodic_resolution(opt.family, opt.n, T, opt.x, opt.y, 3) : greedy_resolution(T, 3);

    ObstructionReport rep;
    rep.model = model.name;
    rep.group_hash = G.hash();
    rep.group_order = G.order();
    rep.resolution = R.kind;
    rep.ranks = R.ranks;
    rep.stage1 = stage1_cocycle(model, G, R);
    rep.stage2 = stage2_cocycle(model, G, R, rep.stage1, opt.shift);

    auto over_time = [&] {
        if (opt.time_budget > 0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > opt.time_budget)
            throw CapExceeded("beta exceeded its time budget");
    };
    over_time();
    auto C = cochain_complex(R, ml.PicDual);
    if (opt.max_nonzeros)
        for (auto& d : C.d)
            if (d.nonzeros() > opt.max_nonzeros)
                throw CapExceeded("coboundary matrix has " + std::to_string(d.nonzeros()) + " nonzeros");
    over_time();
    if (!is_cocycle_mod1(C, 2, rep.stage2)) throw ConversionFailed("stage-2 values are not a cocycle");
    rep.integral = qz_shift(C, 2, rep.stage2);
    bool a = is_coboundary_mod1(C, 2, rep.stage2, &rep.witness_mod1);
    bool b = qz_shift_vanishes(C, 2, rep.stage2, &rep.witness_integral);
    if (a != b) throw ConversionFailed("the degree-2 and degree-3 vanishing tests disagree");
    rep.vanishes = a;
    over_time();
    auto H3 = cohomology(C, 3);
    rep.h3_invariants = H3.invariants;
    rep.certificate = H3.coordinates(rep.integral);
    bool zero = true;
    for (auto& v : rep.certificate) zero = zero && v == 0;
    if (zero != rep.vanishes) throw ConversionFailed("class coordinates disagree with the vanishing test");
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---------------------------------------------------------------------------
// normalization over K9

namespace {

bool is_pow2(long v) { return v > 0 && (v & (v - 1)) == 0; }

long order_mod1(const Rat& q) { return frac(q) == 0 ? 1 : frac(q).get_den().get_si(); }

GroupElement change_coordinates(const GroupElement& g, const IntMatrix& X, const IntMatrix& Xi) {
    return {reduce_mod1(X.left_mul(g.s)), Xi * g.A * X};
}

GroupElement translate_coordinates(const GroupElement& g, const RatVec& r) {
    // t' = t + r gives s' = s + r (I - A)
    RatVec s = g.s;
    RatVec rA = g.A.left_mul(r);
    for (size_t i = 0; i < s.size(); ++i) s[i] += r[i] - rA[i];
    return {reduce_mod1(s), g.A};
}

bool is_cyclic_translations(const AffineGroup& T) {
    for (auto& g : T.elements()) {
        long o = 1;
        for (auto& v : g.s) o = std::lcm(o, order_mod1(v));
        if (o == T.order()) return true;
    }
    return T.order() == 1;
}

// unimodular matrices commuting with K9; the commutant is an order in Q^3, so its units are finite
std::vector<IntMatrix> k9_centralizer() {
    std::vector<IntVec> eqs;
    for (int t = 0; t < 2; ++t) {
        IntMatrix K = k9_generator(t);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 3; ++j) {
                IntVec e(9);
                for (size_t k = 0; k < 3; ++k) {
                    e[k * 3 + j] += K(i, k);
                    e[i * 3 + k] -= K(k, j);
                }
                eqs.push_back(e);
            }
    }
    IntMatrix B = right_kernel(IntMatrix::from_rows(eqs, 9));
    std::vector<IntVec> basis;
    for (size_t i = 0; i < B.rows(); ++i) basis.push_back(B.row(i));
    lll_reduce(basis);
    std::vector<IntMatrix> out;
    std::vector<long> c(basis.size(), -3);
    while (true) {
        IntMatrix X(3, 3);
        for (size_t b = 0; b < basis.size(); ++b)
            for (size_t k = 0; k < 9; ++k) X(k / 3, k % 3) += c[b] * basis[b][k];
        Int d = X.det();
        if ((d == 1 || d == -1) && std::find(out.begin(), out.end(), X) == out.end()) out.push_back(X);
        size_t b = 0;
        while (b < c.size() && c[b] == 3) c[b++] = -3;
        if (b == c.size()) break;
        ++c[b];
    }
    return out;
}

std::optional<Family> family_of(const Rat& c2, const Rat& c3) {
    Rat h = rat(1, 2);
    if (c2 == 0 && c3 == h) return Family::Q;
    if (c2 == 0 && c3 == 0) return Family::D;
    if (c2 == h && c3 == h) return Family::SD;
    return std::nullopt;
}

}  // namespace

K9Normalization normalize_k9(const AffineGroup& G) {
    if (G.dim() != 3) throw NotK9("not a threefold group");
    auto K9 = close_matrices(catalogue_entry("K9").matrices());
    auto verdict = glnz_conjugate(G.image(), K9);
    if (verdict.kind == ConjugacyVerdict::Inconclusive) throw InconclusiveConjugacy("K9 test inconclusive");
    if (verdict.kind == ConjugacyVerdict::NotConjugate) throw NotK9("pi*(G) is not conjugate to K9: " + verdict.certificate);
    if (!is_cyclic_translations(G.torus_part())) throw NonCyclicTorusPart("G_T is not cyclic");

    IntMatrix X1 = verdict.witness, X1i = inverse_unimodular(X1);
    std::vector<GroupElement> moved;
    for (auto& g : G.elements()) moved.push_back(change_coordinates(g, X1, X1i));
    IntMatrix K1 = k9_generator(0), K2 = k9_generator(1);

    // translation solving b1 = b3 = c1 = 0 is unique modulo A^{-1} Z^3
    IntMatrix A{{1, -1, 0}, {1, 1, 2}, {2, 1, 1}};
    auto Ainv = *rational_inverse(A);
    std::vector<RatVec> kernel;
    for (int e0 = 0; e0 < 4; ++e0)
        for (int e1 = 0; e1 < 4; ++e1)
            for (int e2 = 0; e2 < 4; ++e2) {
                RatVec d(3, Rat(0));
                int e[3] = {e0, e1, e2};
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) d[i] += Ainv[i][j] * e[j];
                d = reduce_mod1(d);
                if (std::find(kernel.begin(), kernel.end(), d) == kernel.end()) kernel.push_back(d);
            }

    static const std::vector<IntMatrix> centralizer = k9_centralizer();
    std::vector<IntMatrix> nonid;
    for (auto& M : K9)
        if (!M.is_identity()) nonid.push_back(M);
    std::optional<K9Normalization> best;
    for (auto& P : nonid)
        for (auto& Q : nonid) {
            if (P == Q) continue;
            auto X0 = find_intertwiner({P, Q}, {K1, K2});
            if (!X0) continue;
            for (auto& Z : centralizer) {
            IntMatrix X2 = *X0 * Z, X2i = inverse_unimodular(X2);
            std::vector<GroupElement> s1s, s2s;
            for (auto& g : moved) {
                if (g.A == P) s1s.push_back(change_coordinates(g, X2, X2i));
                if (g.A == Q) s2s.push_back(change_coordinates(g, X2, X2i));
            }
            for (auto& a : s1s)
                for (auto& b : s2s) {
                    RatVec v{-a.s[0], -a.s[2], -b.s[0]};
                    auto r0 = solve_mod1(A, v);
                    if (!r0) continue;
                    for (auto& d : kernel) {
                        RatVec r = *r0;
                        for (int i = 0; i < 3; ++i) r[i] += d[i];
                        r = reduce_mod1(r);
                        auto na = translate_coordinates(a, r), nb = translate_coordinates(b, r);
                        if (na.s[0] != 0 || na.s[2] != 0 || nb.s[0] != 0) throw std::logic_error("normalization failed");
                        auto fam = family_of(nb.s[1], nb.s[2]);

                        if (!fam) continue;
                        long ob = order_mod1(na.s[1]);
                        if (!is_pow2(ob)) continue;
                        int n = 2;
                        while ((1L << (n - 2)) < ob) ++n;
                        if (*fam == Family::Q && n < 3) continue;
                        if (*fam == Family::SD && n < 4) continue;
                        if (best && best->minimal.order() <= (1 << n)) continue;
                        auto H = AffineGroup::close({na, nb});
                        if (H.order() != (1 << n)) continue;
                        K9Normalization out;
                        out.b2 = na.s[1];
                        out.c2 = nb.s[1];
                        out.c3 = nb.s[2];
                        out.family = *fam;
                        out.n = n;
                        out.X = X1 * X2;
                        out.r = r;
                        out.sigma1 = na;
                        out.sigma2 = nb;
                        out.minimal = H;
                        best = out;
                    }
                }
            }
        }
    if (!best) throw std::logic_error("no normalized generating pair over K9");
    return *best;
}

// ---------------------------------------------------------------------------
// the printed data of the K9 case

IntVec printed_beta_Q() {
    IntVec v;
    for (long x : {-1, 0, 1, 0, 0, 0, -1, 0, 0, 1, 0}) v.push_back(x);
    return v;
}

std::vector<IntVec> printed_generators(Family f) {
    std::vector<std::vector<long>> rows;
    if (f == Family::Q) {
        rows = {{0, 0, 0, 0, 0, 0, 2, 0, 0, -2, 0}, {1, 0, 0, 0, 0, 0, 1, 0, 0, -2, 1},
                {0, 1, 0, 0, 0, 0, 1, -1, 0, -1, 1}, {0, 0, 1, 0, 0, 0, 1, 0, 0, -2, 1},
                {0, 0, 0, 1, 0, 0, 1, -1, 0, -1, 1}, {0, 0, 0, 0, 1, 0, 1, -1, 0, -2, 0},
                {0, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0}};
    } else if (f == Family::D) {
        rows = {{1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 1, 1, 0, 1, 1, 0, 0, 0},
                {0, 0, 0, 0, 2, 0, 2, 2, 0, 0, 0}, {0, 0, 0, 0, 0, 2, 0, 0, 2, 0, 0}};
    } else {
        rows = {{1, 1, -1, -1, 1, 0, 1, -1, 0, -2, 0}, {0, 2, 0, -2, 0, 0, 0, 0, 0, 0, 0}};
    }
    std::vector<IntVec> out;
    for (auto& r : rows) {
        IntVec v;
        for (long x : r) v.push_back(x);
        out.push_back(v);
    }
    return out;
}

std::vector<IntMatrix> printed_stage1() {
    IntMatrix a(11, 3), b(11, 3);
    // a = (-m2 - m3) (x) e3
    a(2, 1) = -1;
    a(2, 2) = -1;
    // b = (m2 + m3) e1 + m2 e2 + m1 e4 - (m2 + m3) e10 + (m2 + m3) e11
    b(0, 1) = b(0, 2) = 1;
    b(1, 1) = 1;
    b(3, 0) = 1;
    b(9, 1) = b(9, 2) = -1;
    b(10, 1) = b(10, 2) = 1;
    return {a, b};
}

namespace {

GroupElement word_value(const std::vector<int>& letters, const GroupElement& x, const GroupElement& y) {
    GroupElement g = GroupElement::identity(3);
    for (int l : letters) g = raw_mul(g, l ? y : x);
    return g;
}

// stage-2 values through the printed words with x = sigma1^-1, y = sigma2^-1 left unreduced
RatVec printed_word_stage2(const ToricModel& model, Family f, int n, const std::vector<IntMatrix>& stage1,
                           const Rat& ell, const Rat& c2, const Rat& c3) {
    IntMatrix K1 = k9_generator(0), K2 = k9_generator(1);
    GroupElement s1{RatVec{Rat(0), ell, Rat(0)}, K1}, s2{RatVec{Rat(0), c2, c3}, K2};
    GroupElement x = raw_inverse(s1), y = raw_inverse(s2);
    auto words = periodic_words(f, n, 2);
    auto terms = [&](size_t j, size_t i) {
        std::vector<std::pair<GroupElement, Int>> t;
        for (auto& w : words[1][j][i]) t.push_back({word_value(w.letters, x, y), Int(w.coef)});
        return t;
    };
    return lifted_coboundary(model, stage1, {}, words[1][0].size(), terms);
}

IntMatrix orbit_span(const std::vector<IntVec>& vs, const GLattice& L) {
    std::vector<IntVec> rows;
    for (auto& v : vs)
        for (auto& A : L.actions()) rows.push_back(A.left_mul(v));
    return row_basis(IntMatrix::from_rows(rows, L.rank()));
}

// rows of im(nu) supported in one block, restricted to that block
IntMatrix block_intersection(const IntMatrix& image, size_t block, size_t r) {
    std::vector<size_t> other, inside;
    for (size_t c = 0; c < image.cols(); ++c) (c / r == block ? inside : other).push_back(c);
    IntMatrix K = other.empty() ? IntMatrix::identity(image.rows()) : left_kernel(image.select_cols(other));
    if (K.rows() == 0) return IntMatrix(0, r);
    return row_basis((K * image).select_cols(inside));
}

}  // namespace

Section6Report reproduce_section6(Family f, int n) {
    if ((f == Family::Q && (n < 3 || n > 10)) || (f == Family::D && (n < 3 || n > 10)) ||
        (f == Family::SD && (n < 4 || n > 10)))
        throw BadParameters("n out of range for the K9 reproduction");
    Section6Report rep;
    rep.family = f;
    rep.n = n;
    Rat ell = rat(1, 1L << (n - 2));
    Rat h = rat(1, 2);
    Rat c2 = f == Family::SD ? h : Rat(0);
    Rat c3 = f == Family::D ? Rat(0) : h;
    IntMatrix K1 = k9_generator(0), K2 = k9_generator(1);
    rep.sigma1 = {reduce_mod1({Rat(0), ell, Rat(0)}), K1};
    rep.sigma2 = {reduce_mod1({Rat(0), c2, c3}), K2};
    rep.x = inverse(rep.sigma1);
    rep.y = inverse(rep.sigma2);
    auto G = AffineGroup::close({rep.sigma1, rep.sigma2});
    rep.order = G.order();
    if (rep.order != (1 << n)) throw std::logic_error("K9 family group has the wrong order");
    auto T = std::make_shared<FiniteGroup>(G.table());
    int xi = G.index_of(rep.x), yi = G.index_of(rep.y);
    size_t len = f == Family::Q ? 4 : 3;
    auto R = periodic_resolution(f, n, T, xi, yi, len);
    auto model = build_model("S");
    auto ml = model_lattices(model, G, T);
    size_t r = model.pic_rank();

    rep.stage1 = stage1_cocycle(model, G, R);
    rep.stage1_matches_printed = rep.stage1 == printed_stage1();

    // printed lift: constants reduced into [0,1), the b2-dependent part kept as ell times its coefficient
    RatVec v0 = printed_word_stage2(model, f, n, rep.stage1, Rat(0), c2, c3);
    RatVec v1 = printed_word_stage2(model, f, n, rep.stage1, ell, c2, c3);
    RatVec lift(v0.size());
    for (size_t i = 0; i < v0.size(); ++i) lift[i] = frac(v0[i]) + (v1[i] - v0[i]);
    for (size_t i = 0; i < R.ranks[2]; ++i)
        rep.stage2_printed_lift.push_back(RatVec(lift.begin() + static_cast<long>(i * r), lift.begin() + static_cast<long>((i + 1) * r)));

    auto C = cochain_complex(R, ml.PicDual);
    RatVec canon = stage2_cocycle(model, G, R, rep.stage1);
    if (reduce_mod1(lift) != canon) throw std::logic_error("printed lift differs from the canonical cochain mod 1");
    if (!is_cocycle_mod1(C, 2, canon)) throw ConversionFailed("stage-2 values are not a cocycle");
    // lift * d^2 is integral
    rep.beta_canonical = qz_shift(C, 2, canon);
    RatVec bp = C.d[2].left_mul(lift);
    for (auto& q : bp) {
        if (q.get_den() != 1) throw ConversionFailed("printed lift does not give an integral cocycle");
        rep.beta_printed_lift.push_back(q.get_num());
    }

    RowSolver image(C.d[2]);
    rep.beta_in_image = image.contains(rep.beta_printed_lift);
    rep.canonical_in_image = image.contains(rep.beta_canonical);
    IntVec diff(rep.beta_printed_lift.size());
    for (size_t i = 0; i < diff.size(); ++i) diff[i] = rep.beta_printed_lift[i] - rep.beta_canonical[i];
    rep.lifts_same_class = image.contains(diff);
    rep.route_a_vanishes = is_coboundary_mod1(C, 2, canon);

    rep.printed = printed_generators(f);
    IntMatrix span = orbit_span(rep.printed, ml.PicDual);
    if (f == Family::Q) {
        rep.printed_block = 0;
        rep.image_or_intersection = row_basis(C.d[2]);
        rep.beta_matches_printed = rep.beta_printed_lift == printed_beta_Q();
        rep.printed_generators_match = rep.image_or_intersection == span;
        rep.beta_in_intersection = rep.beta_in_image;
    } else {
        size_t blocks = C.dims[3] / r;
        for (size_t b = 0; b < blocks && rep.printed_block < 0; ++b) {
            IntMatrix I = block_intersection(C.d[2], b, r);
            if (I == span) {
                rep.printed_block = static_cast<int>(b);
                rep.image_or_intersection = I;
                rep.printed_generators_match = true;
            }
        }
        size_t b = f == Family::D ? 1 : 0;
        // nonmembership through the block: beta supported in block b and its block not in the intersection
        bool supported = true;
        IntVec part(rep.beta_printed_lift.begin() + static_cast<long>(b * r), rep.beta_printed_lift.begin() + static_cast<long>((b + 1) * r));
        for (size_t i = 0; i < rep.beta_printed_lift.size(); ++i)
            if (i / r != b && rep.beta_printed_lift[i] != 0) supported = false;
        if (rep.printed_block == static_cast<int>(b)) {
            RowSolver inter(rep.image_or_intersection);
            rep.beta_in_intersection = !supported || inter.contains(part);
        }
        if (f == Family::D) {
            rep.beta_matches_printed = supported && part[1] % 2 != 0 && part[3] % 2 != 0 && part[1] == part[3];
        } else {
            IntVec want(r, Int(0));
            want[1] = 1;
            want[3] = -1;
            rep.beta_matches_printed = part == want;
        }
    }
    auto H3 = cohomology(C, 3);
    IntVec coords = H3.coordinates(rep.beta_printed_lift);
    bool zero = true;
    for (auto& v : coords) zero = zero && v == 0;
    rep.nonvanishing = !rep.beta_in_image && !rep.canonical_in_image && rep.lifts_same_class && !rep.route_a_vanishes && !zero;
    return rep;
}

}  // namespace equitor
