#include "equitor/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace equitor {

// ---------------------------------------------------------------------------
// elements

GroupElement GroupElement::identity(size_t n) { return {RatVec(n), IntMatrix::identity(n)}; }

GroupElement GroupElement::matrix(const IntMatrix& A) { return {RatVec(A.rows()), A}; }

GroupElement GroupElement::translation(const RatVec& s) {
    return {reduce_mod1(s), IntMatrix::identity(s.size())};
}

std::string GroupElement::str() const { return "(" + vec_str(s) + ", " + A.str() + ")"; }

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("group elements of different dimension");
    RatVec s = b.A.left_mul(a.s);
    for (size_t i = 0; i < s.size(); ++i) s[i] += b.s[i];
    return {reduce_mod1(s), a.A * b.A};
}

GroupElement inverse(const GroupElement& g) {
    IntMatrix Ai = inverse_unimodular(g.A);
    RatVec s = Ai.left_mul(g.s);
    for (auto& x : s) x = -x;
    return {reduce_mod1(s), Ai};
}

bool operator==(const GroupElement& a, const GroupElement& b) { return a.A == b.A && a.s == b.s; }

bool operator<(const GroupElement& a, const GroupElement& b) {
    if (a.A != b.A) return a.A < b.A;
    return a.s < b.s;
}

RatVec act_point(const RatVec& t, const GroupElement& g) {
    RatVec u = g.A.left_mul(t);
    for (size_t i = 0; i < u.size(); ++i) u[i] += g.s[i];
    return reduce_mod1(u);
}

static size_t g_cap = 0;

size_t default_order_cap() {
    if (g_cap) return g_cap;
    if (const char* e = std::getenv("EQUITOR_MAX_ORDER")) {
        long v = std::atol(e);
        if (v > 0) return static_cast<size_t>(v);
    }
    return 1024;
}

void set_order_cap(size_t cap) { g_cap = cap; }

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table) : mul_(std::move(table)) {
    int n = order();
    inv_.assign(n, -1);
    ord_.assign(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mul_[a][b] == 0) {
                inv_[a] = b;
                break;
            }
    for (int a = 0; a < n; ++a) {
        int k = 1, x = a;
        while (x != 0) {
            x = mul_[x][a];
            ++k;
        }
        ord_[a] = k;
    }
}

int FiniteGroup::power(int a, long k) const {
    int o = ord_[a];
    long e = ((k % o) + o) % o;
    int x = 0;
    for (long i = 0; i < e; ++i) x = mul(x, a);
    return x;
}

Subset FiniteGroup::generate(const std::vector<int>& gens) const {
    std::vector<char> in(order(), 0);
    std::vector<int> out{0};
    in[0] = 1;
    for (size_t k = 0; k < out.size(); ++k)
        for (int g : gens) {
            int y = mul(out[k], g);
            if (!in[y]) {
                in[y] = 1;
                out.push_back(y);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

bool FiniteGroup::is_abelian(const Subset& H) const {
    for (size_t i = 0; i < H.size(); ++i)
        for (size_t j = i + 1; j < H.size(); ++j)
            if (!commute(H[i], H[j])) return false;
    return true;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order(); ++a)
        for (int b = a + 1; b < order(); ++b)
            if (!commute(a, b)) return false;
    return true;
}

Subset FiniteGroup::conjugate(const Subset& H, int g) const {
    Subset out;
    out.reserve(H.size());
    for (int h : H) out.push_back(conj(h, g));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Subset> FiniteGroup::subgroups(bool abelian_only) const {
    std::set<Subset> seen;
    std::vector<Subset> all;
    std::vector<std::vector<int>> gens;
    auto push = [&](Subset S, std::vector<int> gs) {
        if (seen.insert(S).second) {
            all.push_back(std::move(S));
            gens.push_back(std::move(gs));
        }
    };
    push(Subset{0}, {});
    std::vector<int> cyc_gen;
    for (int g = 1; g < order(); ++g) {
        Subset C = generate({g});
        if (seen.count(C)) continue;
        push(C, {g});
        cyc_gen.push_back(g);
    }
    for (size_t k = 1; k < all.size(); ++k) {
        for (int g : cyc_gen) {
            const Subset& H = all[k];
            if (std::binary_search(H.begin(), H.end(), g)) continue;
            if (abelian_only) {
                bool ok = true;
                for (int h : gens[k])
                    if (!commute(h, g)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
            }
            std::vector<int> gs = gens[k];
            gs.push_back(g);
            Subset K = generate(gs);
            if (!seen.count(K)) push(std::move(K), std::move(gs));
        }
    }
    std::sort(all.begin(), all.end(), [](const Subset& a, const Subset& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return all;
}

std::vector<Subset> FiniteGroup::conjugacy_representatives(const std::vector<Subset>& subs) const {
    std::set<Subset> covered;
    std::vector<Subset> reps;
    for (const Subset& H : subs) {
        if (covered.count(H)) continue;
        reps.push_back(H);
        for (int g = 0; g < order(); ++g) covered.insert(conjugate(H, g));
    }
    return reps;
}

Subset FiniteGroup::sylow(int p) const {
    auto is_ppow = [p](long m) {
        while (m % p == 0) m /= p;
        return m == 1;
    };
    Subset P{0};
    std::vector<int> gens;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int g = 1; g < order(); ++g) {
            if (!is_ppow(elem_order(g)) || std::binary_search(P.begin(), P.end(), g)) continue;
            std::vector<int> gs = gens;
            gs.push_back(g);
            Subset Q = generate(gs);
            if (is_ppow(static_cast<long>(Q.size()))) {
                P = Q;
                gens = gs;
                grew = true;
            }
        }
    }
    return P;
}

std::vector<int> FiniteGroup::small_generating_set(const Subset& H) const {
    std::vector<int> cand(H.begin(), H.end());
    std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return elem_order(a) > elem_order(b); });
    std::vector<int> gens;
    Subset S{0};
    for (int x : cand) {
        if (std::binary_search(S.begin(), S.end(), x)) continue;
        gens.push_back(x);
        S = generate(gens);
        if (S.size() == H.size()) break;
    }
    return gens;
}

FiniteGroup FiniteGroup::restrict_to(const Subset& H) const {
    std::map<int, int> pos;
    for (size_t i = 0; i < H.size(); ++i) pos[H[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> t(H.size(), std::vector<int>(H.size()));
    for (size_t i = 0; i < H.size(); ++i)
        for (size_t j = 0; j < H.size(); ++j) t[i][j] = pos.at(mul(H[i], H[j]));
    return FiniteGroup(std::move(t));
}

std::vector<int> FiniteGroup::element_orders_sorted() const {
    std::vector<int> o(ord_.begin(), ord_.end());
    std::sort(o.begin(), o.end());
    return o;
}

// ---------------------------------------------------------------------------
// AffineGroup

AffineGroup AffineGroup::close(const std::vector<GroupElement>& gens, size_t cap) {
    if (gens.empty()) throw std::invalid_argument("close needs at least one generator");
    if (!cap) cap = default_order_cap();
    AffineGroup G;
    G.n_ = gens[0].dim();
    for (auto& g : gens) {
        if (g.dim() != G.n_) throw DimensionMismatch("generators of different dimension");
        Int d = g.A.det();
        if (d != 1 && d != -1) throw std::invalid_argument("generator matrix is not unimodular");
        G.gens_.push_back({reduce_mod1(g.s), g.A});
    }
    G.elems_.push_back(GroupElement::identity(G.n_));
    G.index_[G.elems_[0]] = 0;
    for (size_t k = 0; k < G.elems_.size(); ++k)
        for (auto& g : G.gens_) {
            GroupElement y = G.elems_[k] * g;
            if (G.index_.count(y)) continue;
            if (G.elems_.size() >= cap) throw CapExceeded("group closure exceeds cap " + std::to_string(cap));
            G.index_[y] = static_cast<int>(G.elems_.size());
            G.elems_.push_back(std::move(y));
        }
    G.build_table();
    return G;
}

AffineGroup AffineGroup::from_matrices(const std::vector<IntMatrix>& mats, size_t cap) {
    std::vector<GroupElement> gens;
    for (auto& A : mats) gens.push_back(GroupElement::matrix(A));
    if (gens.empty()) throw std::invalid_argument("from_matrices needs generators");
    return close(gens, cap);
}

void AffineGroup::build_table() {
    int n = order();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto it = index_.find(elems_[a] * elems_[b]);
            if (it == index_.end()) throw std::logic_error("closure is not closed");
            t[a][b] = it->second;
        }
    table_ = FiniteGroup(std::move(t));
}

int AffineGroup::index_of(const GroupElement& g) const {
    auto it = index_.find(g);
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> AffineGroup::generator_indices() const {
    std::vector<int> out;
    for (auto& g : gens_) out.push_back(index_of(g));
    return out;
}

AffineGroup AffineGroup::subgroup(const Subset& H) const {
    std::vector<int> gi = table_.small_generating_set(H);
    std::vector<GroupElement> gens;
    for (int i : gi) gens.push_back(elems_[i]);
    if (gens.empty()) gens.push_back(GroupElement::identity(n_));
    return close(gens);
}

Subset AffineGroup::torus_kernel() const {
    Subset out;
    for (int i = 0; i < order(); ++i)
        if (elems_[i].is_translation()) out.push_back(i);
    return out;
}

AffineGroup AffineGroup::torus_part() const { return subgroup(torus_kernel()); }

std::vector<IntMatrix> AffineGroup::image() const {
    std::set<IntMatrix> s;
    for (auto& g : elems_) s.insert(g.A);
    return {s.begin(), s.end()};
}

AffineGroup AffineGroup::image_group() const {
    std::vector<IntMatrix> mats;
    for (auto& g : gens_) mats.push_back(g.A);
    return from_matrices(mats);
}

bool AffineGroup::is_matrix_group() const {
    for (auto& g : elems_)
        for (auto& x : g.s)
            if (sgn(x)) return false;
    return true;
}

std::string AffineGroup::hash() const {
    std::vector<std::string> parts;
    for (auto& g : elems_) parts.push_back(g.str());
    std::sort(parts.begin(), parts.end());
    unsigned long long h = 1469598103934665603ULL;
    for (auto& p : parts)
        for (unsigned char c : p) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::vector<Subset> abelian_subgroups(const AffineGroup& G, bool up_to_conjugacy) {
    auto subs = G.table().subgroups(true);
    if (up_to_conjugacy) return G.table().conjugacy_representatives(subs);
    return subs;
}

AffineGroup sylow(const AffineGroup& G, int p) { return G.subgroup(G.table().sylow(p)); }

std::vector<IntMatrix> close_matrices(const std::vector<IntMatrix>& gens, size_t cap) {
    if (gens.empty()) return {};
    return AffineGroup::from_matrices(gens, cap).image();
}

// ---------------------------------------------------------------------------
// conjugacy invariants

namespace {

std::string divisors_str(const IntVec& d) {
    std::string s;
    for (auto& x : d)
        if (x != 1) s += (s.empty() ? "" : ",") + x.get_str();
    return s.empty() ? "0" : s;
}

IntMatrix contragredient(const IntMatrix& A) { return inverse_unimodular(A).transpose(); }

// H^1 torsion: elementary divisors of v -> (v - v g)_g
std::string h1_string(const std::vector<IntMatrix>& H) {
    size_t n = H[0].rows();
    IntMatrix D(n, 0);
    for (auto& g : H) {
        if (g.is_identity()) continue;
        D = IntMatrix::hstack(D, IntMatrix::identity(n) - g);
    }
    if (D.cols() == 0) return "0";
    return divisors_str(elementary_divisors(D));
}

// H^2 torsion from the normalized bar differential d^1
std::string h2_string(const std::vector<IntMatrix>& H) {
    size_t n = H[0].rows();
    std::vector<IntMatrix> G;
    for (auto& g : H)
        if (!g.is_identity()) G.push_back(g);
    size_t m = G.size();
    if (m == 0) return "0";
    std::map<IntMatrix, int> idx;
    for (size_t i = 0; i < m; ++i) idx[G[i]] = static_cast<int>(i);
    IntMatrix D(m * n, m * m * n);
    // (d f)(g,h) = f(h) - f(gh) + f(g) h
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b) {
            size_t col = (a * m + b) * n;
            for (size_t k = 0; k < n; ++k) D(b * n + k, col + k) += 1;
            IntMatrix gh = G[a] * G[b];
            auto it = idx.find(gh);
            if (it != idx.end())
                for (size_t k = 0; k < n; ++k) D(it->second * n + k, col + k) -= 1;
            for (size_t k = 0; k < n; ++k)
                for (size_t l = 0; l < n; ++l) D(a * n + k, col + l) += G[b](k, l);
        }
    return divisors_str(elementary_divisors(D));
}

std::string class_data(const std::vector<IntMatrix>& H) {
    std::vector<std::string> items;
    for (auto& g : H) {
        int o = 1;
        IntMatrix x = g;
        while (!x.is_identity()) {
            x = x * g;
            ++o;
        }
        Int tr = 0;
        for (size_t i = 0; i < g.rows(); ++i) tr += g(i, i);
        items.push_back(std::to_string(o) + ":" + tr.get_str() + ":" + g.det().get_str());
    }
    std::sort(items.begin(), items.end());
    std::string s;
    for (auto& x : items) s += x + " ";
    return s;
}

size_t fixed_rank(const std::vector<IntMatrix>& H) {
    size_t n = H[0].rows();
    IntMatrix D(n, 0);
    for (auto& g : H) D = IntMatrix::hstack(D, g - IntMatrix::identity(n));
    if (D.cols() == 0) return n;
    return n - hermite_form(D, false).rank;
}

std::string smith_sum(const std::vector<IntMatrix>& H) {
    size_t n = H[0].rows();
    IntMatrix S(n, n);
    for (auto& g : H) S += g;
    IntVec d = elementary_divisors(S);
    std::string s = "rank" + std::to_string(d.size()) + ":";
    for (auto& x : d) s += x.get_str() + ",";
    return s;
}

std::vector<IntMatrix> contragredient_group(const std::vector<IntMatrix>& H) {
    std::vector<IntMatrix> out;
    for (auto& g : H) out.push_back(contragredient(g));
    return out;
}

std::string subgroup_signature(const std::vector<IntMatrix>& H) {
    return std::to_string(H.size()) + "|" + class_data(H) + "|" + h1_string(H) + "|" +
           h1_string(contragredient_group(H)) + "|" + std::to_string(fixed_rank(H)) + "|" + smith_sum(H);
}

// isomorphisms H1 -> H2 preserving element order and trace
void enumerate_isomorphisms(const std::vector<IntMatrix>& H1, const std::vector<IntMatrix>& H2,
                            const std::function<bool(const std::vector<int>&)>& visit) {
    AffineGroup A1 = AffineGroup::from_matrices(H1);
    AffineGroup A2 = AffineGroup::from_matrices(H2);
    const FiniteGroup& t1 = A1.table();
    const FiniteGroup& t2 = A2.table();
    int n = t1.order();
    Subset all1;
    for (int i = 0; i < n; ++i) all1.push_back(i);
    std::vector<int> gens = t1.small_generating_set(all1);
    auto trace = [](const IntMatrix& M) {
        Int t = 0;
        for (size_t i = 0; i < M.rows(); ++i) t += M(i, i);
        return t;
    };
    std::vector<std::vector<int>> cand(gens.size());
    for (size_t k = 0; k < gens.size(); ++k)
        for (int y = 0; y < n; ++y)
            if (t2.elem_order(y) == t1.elem_order(gens[k]) &&
                trace(A2.element(y).A) == trace(A1.element(gens[k]).A) &&
                A2.element(y).A.det() == A1.element(gens[k]).A.det())
                cand[k].push_back(y);
    std::vector<int> choice(gens.size());
    std::function<bool(size_t)> rec = [&](size_t k) -> bool {
        if (k == gens.size()) {
            // extend along the Cayley graph
            std::vector<int> phi(n, -1);
            phi[0] = 0;
            std::vector<int> queue{0};
            for (size_t q = 0; q < queue.size(); ++q) {
                int x = queue[q];
                for (size_t g = 0; g < gens.size(); ++g) {
                    int y = t1.mul(x, gens[g]);
                    int im = t2.mul(phi[x], choice[g]);
                    if (phi[y] < 0) {
                        phi[y] = im;
                        queue.push_back(y);
                    } else if (phi[y] != im) {
                        return true;
                    }
                }
            }
            std::vector<char> hit(n, 0);
            for (int x = 0; x < n; ++x) {
                if (hit[phi[x]]) return true;
                hit[phi[x]] = 1;
            }
            for (int x = 0; x < n; ++x)
                if (trace(A2.element(phi[x]).A) != trace(A1.element(x).A)) return true;
            // map as indices into the caller's vectors
            std::vector<int> out(n);
            for (int x = 0; x < n; ++x) {
                auto i1 = std::find(H1.begin(), H1.end(), A1.element(x).A) - H1.begin();
                auto i2 = std::find(H2.begin(), H2.end(), A2.element(phi[x]).A) - H2.begin();
                out[i1] = static_cast<int>(i2);
            }
            return visit(out);
        }
        for (int y : cand[k]) {
            choice[k] = y;
            if (!rec(k + 1)) return false;
        }
        return true;
    };
    rec(0);
}

std::optional<IntMatrix> search_witness(const std::vector<IntMatrix>& H1, const std::vector<IntMatrix>& H2,
                                        const std::vector<int>& phi, long budget) {
    size_t n = H1[0].rows();
    // unknown X (n x n) flattened row-major; equations g X - X phi(g) = 0
    std::vector<IntVec> eqs;
    for (size_t gi = 0; gi < H1.size(); ++gi) {
        const IntMatrix& g = H1[gi];
        const IntMatrix& h = H2[phi[gi]];
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                IntVec e(n * n);
                for (size_t k = 0; k < n; ++k) {
                    e[k * n + j] += g(i, k);
                    e[i * n + k] -= h(k, j);
                }
                eqs.push_back(e);
            }
    }
    IntMatrix E = IntMatrix::from_rows(eqs);
    IntMatrix K = right_kernel(E);
    size_t d = K.rows();
    if (d == 0) return std::nullopt;
    std::vector<IntVec> basis;
    for (size_t r = 0; r < d; ++r) basis.push_back(K.row(r));
    lll_reduce(basis);
    std::vector<std::vector<long>> lb(d, std::vector<long>(n * n));
    for (size_t r = 0; r < d; ++r)
        for (size_t c = 0; c < n * n; ++c) {
            if (!basis[r][c].fits_slong_p()) return std::nullopt;
            lb[r][c] = basis[r][c].get_si();
        }
    auto det_long = [n](const std::vector<long>& x) -> long {
        if (n == 1) return x[0];
        if (n == 2) return x[0] * x[3] - x[1] * x[2];
        return x[0] * (x[4] * x[8] - x[5] * x[7]) - x[1] * (x[3] * x[8] - x[5] * x[6]) +
               x[2] * (x[3] * x[7] - x[4] * x[6]);
    };
    long spent = 0;
    for (long B = 1; B <= 6; ++B) {
        long per = 1;
        for (size_t r = 0; r < d; ++r) per *= (2 * B + 1);
        if (spent + per > budget) break;
        spent += per;
        std::vector<long> c(d, -B);
        std::vector<long> x(n * n);
        for (;;) {
            long mx = 0;
            for (long v : c) mx = std::max(mx, std::labs(v));
            if (mx == B) {
                std::fill(x.begin(), x.end(), 0);
                for (size_t r = 0; r < d; ++r)
                    if (c[r])
                        for (size_t t = 0; t < n * n; ++t) x[t] += c[r] * lb[r][t];
                long dt = det_long(x);
                if (dt == 1 || dt == -1) {
                    IntMatrix X(n, n);
                    for (size_t i = 0; i < n; ++i)
                        for (size_t j = 0; j < n; ++j) X(i, j) = x[i * n + j];
                    return X;
                }
            }
            size_t p = 0;
            while (p < d && c[p] == B) c[p++] = -B;
            if (p == d) break;
            ++c[p];
        }
    }
    return std::nullopt;
}

}  // namespace

LatticeInvariants conjugacy_invariants(const std::vector<IntMatrix>& H) {
    LatticeInvariants inv;
    inv.values["0_order"] = std::to_string(H.size());
    inv.values["1_classes"] = class_data(H);
    inv.values["2_smith_sum"] = smith_sum(H);
    inv.values["3_fixed_rank"] = std::to_string(fixed_rank(H));
    inv.values["4_H1_N"] = h1_string(H);
    inv.values["5_H1_M"] = h1_string(contragredient_group(H));
    if (H.size() <= 16) {
        inv.values["6_H2_N"] = h2_string(H);
        inv.values["7_H2_M"] = h2_string(contragredient_group(H));
    }
    if (H.size() <= 16) {
        AffineGroup A = AffineGroup::from_matrices(H);
        std::vector<std::string> sigs;
        for (auto& S : A.table().subgroups()) {
            std::vector<IntMatrix> K;
            for (int i : S) K.push_back(A.element(i).A);
            sigs.push_back(subgroup_signature(K));
        }
        std::sort(sigs.begin(), sigs.end());
        std::string all;
        for (auto& s : sigs) all += s + ";";
        inv.values["8_subgroups"] = all;
    }
    return inv;
}

ConjugacyVerdict glnz_conjugate(const std::vector<IntMatrix>& H1in, const std::vector<IntMatrix>& H2in) {
    if (H1in.empty() || H2in.empty()) throw std::invalid_argument("empty group");
    if (H1in[0].rows() != H2in[0].rows()) throw DimensionMismatch("groups of different dimension");
    std::vector<IntMatrix> H1 = close_matrices(H1in), H2 = close_matrices(H2in);
    ConjugacyVerdict v;
    if (H1.size() != H2.size()) {
        v.kind = ConjugacyVerdict::NotConjugate;
        v.certificate = "0_order: " + std::to_string(H1.size()) + " vs " + std::to_string(H2.size());
        return v;
    }
    // cheap invariants first, expensive ones only when needed
    auto i1 = conjugacy_invariants(H1), i2 = conjugacy_invariants(H2);
    for (auto& [k, a] : i1.values) {
        const std::string& b = i2.values[k];
        if (a != b) {
            v.kind = ConjugacyVerdict::NotConjugate;
            v.certificate = k + ": " + a + " vs " + b;
            return v;
        }
    }
    std::optional<IntMatrix> found;
    enumerate_isomorphisms(H1, H2, [&](const std::vector<int>& phi) {
        found = search_witness(H1, H2, phi, 400000);
        return !found.has_value();
    });
    if (found) {
        IntMatrix Xi = inverse_unimodular(*found);
        std::set<IntMatrix> h2(H2.begin(), H2.end());
        for (auto& g : H1)
            if (!h2.count(Xi * g * *found)) throw std::logic_error("conjugacy witness failed verification");
        v.kind = ConjugacyVerdict::Conjugate;
        v.witness = *found;
        return v;
    }
    v.kind = ConjugacyVerdict::Inconclusive;
    v.certificate = "invariants agree and bounded search found no witness";
    return v;
}

bool contains_conjugate_subgroup(const std::vector<IntMatrix>& Gbar, const std::vector<IntMatrix>& target,
                                 IntMatrix* witness) {
    std::vector<IntMatrix> T = close_matrices(target);
    AffineGroup G = AffineGroup::from_matrices(Gbar);
    if (G.order() % static_cast<int>(T.size()) != 0) return false;
    std::string cls = class_data(T);
    bool inconclusive = false;
    for (auto& S : G.table().subgroups()) {
        if (S.size() != T.size()) continue;
        std::vector<IntMatrix> K;
        for (int i : S) K.push_back(G.element(i).A);
        if (class_data(K) != cls) continue;
        ConjugacyVerdict v = glnz_conjugate(T, K);
        if (v.kind == ConjugacyVerdict::Conjugate) {
            if (witness) *witness = v.witness;
            return true;
        }
        if (v.kind == ConjugacyVerdict::Inconclusive) inconclusive = true;
    }
    if (inconclusive) throw InconclusiveConjugacy("conjugacy test inconclusive for some subgroup");
    return false;
}

// ---------------------------------------------------------------------------
// catalogue

std::vector<IntMatrix> CatalogueEntry::matrices() const {
    std::vector<IntMatrix> out;
    for (auto& g : generators) out.push_back(g.A);
    return out;
}

namespace {

GroupElement M(std::initializer_list<std::initializer_list<long>> rows) { return GroupElement::matrix(IntMatrix(rows)); }

GroupElement MT(std::initializer_list<std::initializer_list<long>> rows, RatVec s) {
    return {reduce_mod1(s), IntMatrix(rows)};
}

std::vector<CatalogueEntry> build_catalogue() {
    std::vector<CatalogueEntry> c;
    auto add = [&](std::string name, std::string role, std::vector<GroupElement> g) {
        c.push_back({std::move(name), std::move(role), std::move(g)});
    };
    GroupElement eta = M({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}});
    GroupElement k9a = M({{0, 1, -1}, {1, 0, -1}, {0, 0, -1}});
    GroupElement k9b = M({{-1, 0, 0}, {-1, 0, 1}, {-1, 1, 0}});
    add("K9", "exceptional Klein four group", {k9a, k9b});
    add("bad_C2xC4", "second group in the stable linearizability criterion",
        {M({{0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}), eta});
    add("bad_C2^3", "third group in the stable linearizability criterion",
        {M({{0, 0, 1}, {-1, -1, -1}, {1, 0, 0}}), M({{-1, -1, -1}, {0, 0, 1}, {0, 1, 0}}), eta});
    add("eta", "central involution", {eta});
    add("iota1", "order 2 class", {M({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}})});
    add("iota2", "order 2 class", {M({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}})});
    add("iota3", "order 2 class", {M({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}})});
    add("iota4", "order 2 class", {M({{0, 1, 0}, {1, 0, 0}, {0, 0, -1}})});
    add("theta1", "C4 class", {M({{1, 0, 0}, {0, 0, 1}, {0, -1, 0}})});
    add("theta2", "C4 class", {M({{-1, 0, 0}, {0, 0, 1}, {0, -1, 0}})});
    add("theta3", "C4 class", {M({{-1, -1, -1}, {1, 0, 0}, {0, 1, 0}})});
    add("theta4", "C4 class", {M({{1, 1, 1}, {-1, 0, 0}, {0, -1, 0}})});
    add("K1", "C2^2 class", {M({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}), M({{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}})});
    add("K2", "C2^2 class", {M({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}), M({{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}})});
    add("K3", "C2^2 class", {M({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}), M({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})});
    add("K4", "C2^2 class", {M({{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}}), M({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}})});
    add("K5", "C2^2 class", {M({{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}}), M({{0, 0, 1}, {0, -1, 0}, {1, 0, 0}})});
    add("K6", "C2^2 class", {M({{0, 0, 1}, {-1, -1, -1}, {1, 0, 0}}), M({{-1, -1, -1}, {0, 0, 1}, {0, 1, 0}})});
    add("K7", "C2^2 class", {M({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}), M({{1, 0, 0}, {0, 1, 0}, {-1, -1, -1}})});
    add("K8", "C2^2 class", {M({{1, 1, 1}, {0, 0, -1}, {0, -1, 0}}), M({{0, 0, 1}, {-1, -1, -1}, {1, 0, 0}})});
    add("tau1", "D4 generator", {M({{1, 0, 0}, {-1, -1, -1}, {0, 0, 1}})});
    add("tau2", "D4 generator", {M({{1, 1, 1}, {-1, 0, 0}, {0, -1, 0}})});
    add("D4_tau", "dihedral group of the quadric cone model",
        {M({{1, 0, 0}, {-1, -1, -1}, {0, 0, 1}}), M({{1, 1, 1}, {-1, 0, 0}, {0, -1, 0}})});
    add("D4_iota2_theta1", "dihedral group on the cube model",
        {M({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}), M({{1, 0, 0}, {0, 0, 1}, {0, -1, 0}})});
    add("sylow_C", "maximal 2-group realised on (P1)^3",
        {M({{0, 0, 1}, {0, 1, 0}, {-1, 0, 0}}), eta, M({{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}})});
    add("sylow_SP", "maximal 2-group of the second class",
        {M({{0, 0, 1}, {-1, -1, -1}, {1, 0, 0}}), eta, M({{1, 0, 0}, {0, 1, 0}, {-1, -1, -1}})});
    add("C3_P3", "order 3 class realised on P3", {M({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})});
    add("C3_P1xP2", "order 3 class realised on P1xP2", {M({{1, 0, 0}, {0, -1, -1}, {0, 1, 0}})});
    add("example_D4", "dihedral example with nontrivial torus part",
        {MT({{0, 1, -1}, {1, 0, -1}, {0, 0, -1}}, {Rat(0), Rat(1, 2), Rat(0)}), k9b});
    // surfaces
    add("s_iota1", "plane involution -1", {M({{-1, 0}, {0, -1}})});
    add("s_iota2", "plane reflection", {M({{-1, 0}, {0, 1}})});
    add("s_iota3", "plane swap", {M({{0, 1}, {1, 0}})});
    add("s_D4", "maximal plane group of order 8", {M({{-1, 0}, {0, 1}}), M({{0, 1}, {1, 0}})});
    add("s_iota12", "plane diagonal Klein four group", {M({{-1, 0}, {0, -1}}), M({{-1, 0}, {0, 1}})});
    add("s_D6", "maximal plane group of order 12", {M({{1, 1}, {-1, 0}}), M({{0, 1}, {1, 0}})});
    add("s_C3", "plane rotation of order 3", {M({{0, 1}, {-1, -1}})});
    add("s_S3", "plane S3 on the hexagon", {M({{0, 1}, {-1, -1}}), M({{0, 1}, {1, 0}})});
    return c;
}

}  // namespace

const std::vector<CatalogueEntry>& catalogue() {
    static const std::vector<CatalogueEntry> c = build_catalogue();
    return c;
}

const CatalogueEntry& catalogue_entry(const std::string& name) {
    for (auto& e : catalogue())
        if (e.name == name) return e;
    throw std::out_of_range("no catalogue entry named " + name);
}

IntMatrix named_matrix(const std::string& name) {
    const auto& e = catalogue_entry(name);
    if (e.generators.size() != 1) throw std::out_of_range(name + " is not a single matrix");
    return e.generators[0].A;
}

RatVec parse_torus(const std::vector<std::string>& entries) {
    RatVec s;
    for (auto& e : entries) {
        Rat q;
        if (q.set_str(e, 10) != 0) throw std::invalid_argument("bad torus entry '" + e + "'");
        q.canonicalize();
        s.push_back(frac(q));
    }
    return s;
}

std::vector<std::string> torus_strings(const RatVec& s) {
    std::vector<std::string> out;
    for (auto& x : s) out.push_back(frac(x).get_str());
    return out;
}

}  // namespace equitor
