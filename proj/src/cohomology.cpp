#include "equitor/cohomology.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace equitor {

RingElt ring_mul(const FiniteGroup& G, const RingElt& a, const RingElt& b) {
    RingElt out;
    for (auto& [g, c] : a)
        for (auto& [h, d] : b) {
            Int& e = out[G.mul(g, h)];
            e += c * d;
        }
    for (auto it = out.begin(); it != out.end();) it = sgn(it->second) ? std::next(it) : out.erase(it);
    return out;
}

RingElt ring_add(const RingElt& a, const RingElt& b, const Int& scale) {
    RingElt out = a;
    for (auto& [g, c] : b) out[g] += scale * c;
    for (auto it = out.begin(); it != out.end();) it = sgn(it->second) ? std::next(it) : out.erase(it);
    return out;
}

RingElt ring_unit(int g, const Int& c) {
    RingElt r;
    if (sgn(c)) r[g] = c;
    return r;
}

// ---------------------------------------------------------------------------
// resolutions

IntMatrix Resolution::z_matrix(size_t k) const {
    size_t N = G->order();
    if (k == 0) {
        IntMatrix A(N, 1);
        for (size_t g = 0; g < N; ++g) A(g, 0) = 1;
        return A;
    }
    size_t rk = ranks[k], rp = ranks[k - 1];
    IntMatrix A(rk * N, rp * N);
    for (size_t i = 0; i < rk; ++i)
        for (size_t j = 0; j < rp; ++j)
            for (auto& [h, c] : boundary[k][j][i])
                for (size_t g = 0; g < N; ++g) A(i * N + g, j * N + G->mul(h, static_cast<int>(g))) += c;
    return A;
}

bool Resolution::verify() const {
    for (size_t i = 0; i < ranks[1] && length() >= 1; ++i) {
        Int s = 0;
        for (auto& [h, c] : boundary[1][0][i]) s += c;
        if (sgn(s)) return false;
    }
    for (size_t k = 2; k <= length(); ++k)
        for (size_t i = 0; i < ranks[k]; ++i)
            for (size_t l = 0; l < ranks[k - 2]; ++l) {
                RingElt acc;
                for (size_t j = 0; j < ranks[k - 1]; ++j) {
                    if (boundary[k][j][i].empty() || boundary[k - 1][l][j].empty()) continue;
                    acc = ring_add(acc, ring_mul(*G, boundary[k - 1][l][j], boundary[k][j][i]));
                }
                if (!acc.empty()) return false;
            }
    return true;
}

bool Resolution::exact_at(size_t k) const {
    if (k >= length()) throw DegreeOutOfRange("exactness needs the next boundary");
    IntMatrix ker = left_kernel(z_matrix(k));
    IntMatrix im = row_basis(z_matrix(k + 1));
    return ker == im;
}

namespace {

IntVec translate(const IntVec& v, const FiniteGroup& G, int g) {
    size_t N = G.order();
    IntVec out(v.size());
    for (size_t p = 0; p < v.size(); ++p)
        if (sgn(v[p])) out[(p / N) * N + G.mul(static_cast<int>(p % N), g)] = v[p];
    return out;
}

void append_boundary(Resolution& R, const std::vector<IntVec>& images) {
    size_t N = R.G->order();
    size_t rp = R.ranks.back();
    std::vector<std::vector<RingElt>> b(rp, std::vector<RingElt>(images.size()));
    for (size_t i = 0; i < images.size(); ++i)
        for (size_t p = 0; p < images[i].size(); ++p)
            if (sgn(images[i][p])) b[p / N][i][static_cast<int>(p % N)] = images[i][p];
    R.ranks.push_back(images.size());
    R.boundary.push_back(std::move(b));
}

}  // namespace

Resolution greedy_resolution(GroupPtr G, size_t length) {
    Resolution R;
    R.G = G;
    R.kind = "greedy";
    R.ranks = {1};
    R.boundary.resize(1);
    for (size_t k = 1; k <= length; ++k) {
        IntMatrix K = left_kernel(R.z_matrix(k - 1));
        std::vector<IntVec> cand;
        for (size_t r = 0; r < K.rows(); ++r) cand.push_back(K.row(r));
        auto weight = [](const IntVec& v) {
            size_t nz = 0;
            Int l1 = 0;
            for (auto& x : v)
                if (sgn(x)) {
                    ++nz;
                    l1 += abs(x);
                }
            return std::make_pair(nz, l1);
        };
        std::stable_sort(cand.begin(), cand.end(),
                         [&](const IntVec& a, const IntVec& b) { return weight(a) < weight(b); });
        RowLattice span(K.cols());
        std::vector<IntVec> chosen;
        for (auto& v : cand) {
            if (span.contains(v)) continue;
            chosen.push_back(v);
            for (int g = 0; g < G->order(); ++g) span.add(translate(v, *G, g));
            if (span.rank() == K.rows()) {
                bool all = true;
                for (auto& w : cand)
                    if (!span.contains(w)) {
                        all = false;
                        break;
                    }
                if (all) break;
            }
        }
        append_boundary(R, chosen);
    }
    return R;
}

namespace {

long ipow(long b, size_t e) {
    long r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

Resolution bar_resolution(GroupPtr G, size_t length) {
    if (length > 3) throw CapExceeded("bar resolution is truncated at degree 3");
    long N = G->order(), B = N - 1;
    if (ipow(B, length) * ipow(B, length ? length - 1 : 0) > 4000000)
        throw CapExceeded("bar resolution too large for this group");
    Resolution R;
    R.G = G;
    R.kind = "bar";
    R.ranks = {1};
    R.boundary.resize(1);
    for (size_t k = 1; k <= length; ++k) {
        long rk = ipow(B, k), rp = ipow(B, k - 1);
        std::vector<std::vector<RingElt>> b(rp, std::vector<RingElt>(rk));
        for (long t = 0; t < rk; ++t) {
            std::vector<int> g(k);
            long u = t;
            for (size_t p = k; p-- > 0;) {
                g[p] = static_cast<int>(u % B) + 1;
                u /= B;
            }
            auto encode = [&](const std::vector<int>& tup) -> long {
                long idx = 0;
                for (int x : tup) {
                    if (x == 0) return -1;  // normalized: degenerate tuples vanish
                    idx = idx * B + (x - 1);
                }
                return idx;
            };
            auto add = [&](long idx, int h, long c) {
                if (idx < 0) return;
                Int& e = b[idx][t][h];
                e += c;
                if (!sgn(e)) b[idx][t].erase(h);
            };
            add(encode(std::vector<int>(g.begin() + 1, g.end())), 0, 1);
            for (size_t i = 0; i + 1 < k; ++i) {
                std::vector<int> m;
                for (size_t p = 0; p < k; ++p) {
                    if (p == i) {
                        m.push_back(G->mul(g[i], g[i + 1]));
                        ++p;
                    } else {
                        m.push_back(g[p]);
                    }
                }
                add(encode(m), 0, (i % 2 == 0) ? -1 : 1);
            }
            add(encode(std::vector<int>(g.begin(), g.end() - 1)), g[k - 1], (k % 2 == 0) ? 1 : -1);
        }
        R.ranks.push_back(rk);
        R.boundary.push_back(std::move(b));
    }
    return R;
}

// ---------------------------------------------------------------------------
// periodic families

Family parse_family(const std::string& s) {
    if (s == "Q") return Family::Q;
    if (s == "D") return Family::D;
    if (s == "SD") return Family::SD;
    throw BadParameters("unknown family " + s);
}

std::string family_name(Family f) { return f == Family::Q ? "Q" : f == Family::D ? "D" : "SD"; }

namespace {

void check_family(Family f, int n) {
    int lo = f == Family::Q ? 3 : f == Family::D ? 2 : 4;
    if (n < lo || n > 12) throw BadParameters("n out of range for family " + family_name(f));
}

// yx = x^t y and y^2 = x^z
std::pair<long, long> family_relations(Family f, int n) {
    long half = 1L << (n - 2);
    switch (f) {
        case Family::Q: return {-1, half};
        case Family::D: return {-1, 0};
        default: return {half - 1, 0};
    }
}

}  // namespace

FamilyGroup family_group(Family f, int n) {
    check_family(f, n);
    long m = 1L << (n - 1);
    auto [t, z] = family_relations(f, n);
    auto mod = [m](long a) { return ((a % m) + m) % m; };
    int N = static_cast<int>(2 * m);
    std::vector<std::vector<int>> table(N, std::vector<int>(N));
    for (int u = 0; u < N; ++u)
        for (int v = 0; v < N; ++v) {
            long a = u % m, b = u / m, c = v % m, d = v / m;
            long e = a + (b ? c * t : c);
            long yb = b + d;
            if (yb == 2) {
                e += z;
                yb = 0;
            }
            table[u][v] = static_cast<int>(mod(e) + m * yb);
        }
    FamilyGroup out;
    out.G = std::make_shared<FiniteGroup>(table);
    out.x = 1;
    out.y = static_cast<int>(m);
    for (int u = 0; u < N; ++u) out.words.push_back({static_cast<int>(u % m), static_cast<int>(u / m)});
    return out;
}

PeriodicWords periodic_words(Family f, int n, size_t length) {
    check_family(f, n);
    long m = 1L << (n - 1);
    size_t maxlen = f == Family::Q ? 4 : 3;
    if (length > maxlen) throw DegreeOutOfRange("printed resolution has length " + std::to_string(maxlen));
    auto xs = [](long k) { return std::vector<int>(static_cast<size_t>(k), 0); };
    auto xy = [&](long k) {
        auto w = xs(k);
        w.push_back(1);
        return w;
    };
    const std::vector<int> e, x{0}, y{1}, yx{1, 0};
    auto Nx = [&](long count) {
        WordElt r;
        for (long k = 0; k < count; ++k) r.push_back({1, xs(k)});
        return r;
    };
    auto neg = [](WordElt r) {
        for (auto& t : r) t.coef = -t.coef;
        return r;
    };
    using Mat = std::vector<std::vector<WordElt>>;
    Mat d1{{{{1, e}, {-1, x}}, {{1, e}, {-1, y}}}};
    Mat d2, d3, d4;
    if (f == Family::Q) {
        d2 = {{Nx(m / 2), {{1, yx}, {1, e}}}, {{{-1, e}, {-1, y}}, {{1, x}, {-1, e}}}};
        d3 = {{{{1, e}, {-1, x}}}, {{{1, yx}, {-1, e}}}};
        // the norm element, one word per group element x^a y^b
        WordElt norm;
        for (long b = 0; b < 2; ++b)
            for (long a = 0; a < m; ++a) norm.push_back({1, b ? xy(a) : xs(a)});
        d4 = {{norm}};
    } else if (f == Family::D) {
        d2 = {{Nx(m), {{1, e}, {1, yx}}, {}}, {{}, {{1, x}, {-1, e}}, {{1, e}, {1, y}}}};
        d3 = {{{{1, e}, {-1, x}}, {{1, e}, {1, y}}, {}, {}},
              {{}, neg(Nx(m)), {{1, e}, {-1, yx}}, {}},
              {{}, {}, {{1, e}, {-1, x}}, {{1, e}, {-1, y}}}};
    } else {
        long h = 1L << (n - 3);
        WordElt L1{{1, xs(h + 1)}, {-1, e}};
        WordElt L2 = Nx(h + 1);
        for (long r = 0; r <= h - 2; ++r) L2.push_back({-1, xy(r)});
        // (x^{h-1} - 1)(1 + y) and (x^{h+1} - 1)(x^{h-1} - 1), expanded
        WordElt L3{{1, xs(h - 1)}, {1, xy(h - 1)}, {-1, e}, {-1, y}};
        WordElt L4{{1, xs(2 * h)}, {-1, xs(h + 1)}, {-1, xs(h - 1)}, {1, e}};
        d2 = {{L2, {}}, {L1, {{1, e}, {1, y}}}};
        d3 = {{neg(L3), {}}, {L4, {{1, e}, {-1, y}}}};
    }
    std::vector<Mat> all{d1, d2, d3, d4};
    PeriodicWords out(all.begin(), all.begin() + static_cast<long>(length));
    return out;
}

Resolution periodic_resolution(Family f, int n, GroupPtr G, int x, int y, size_t length) {
    check_family(f, n);
    const FiniteGroup& g = *G;
    long m = 1L << (n - 1);
    if (g.order() != 2 * m || g.elem_order(x) != m) throw BadParameters("x does not have the family order");
    auto [t, z] = family_relations(f, n);
    auto xp = [&](long k) { return g.power(x, ((k % m) + m) % m); };
    if (g.mul(y, x) != g.mul(xp(t), y) || g.mul(y, y) != xp(z) || static_cast<int>(g.generate({x, y}).size()) != g.order()) {
        throw BadParameters("generators do not satisfy the family relations");
    }
    auto words = periodic_words(f, n, length);
    Resolution R;
    R.G = G;
    R.kind = "periodic-" + family_name(f);
    R.ranks = {1};
    R.boundary.resize(1);
    for (auto& W : words) {
        std::vector<std::vector<RingElt>> b(W.size());
        for (size_t j = 0; j < W.size(); ++j)
            for (auto& w : W[j]) {
                RingElt r;
                for (auto& term : w) {
                    int el = 0;
                    for (int letter : term.letters) el = g.mul(el, letter ? y : x);
                    r = ring_add(r, ring_unit(el, term.coef));
                }
                b[j].push_back(r);
            }
        R.ranks.push_back(b[0].size());
        R.boundary.push_back(std::move(b));
    }
    if (!R.verify()) throw BadParameters("periodic resolution fails d^2 = 0");
    return R;
}

// ---------------------------------------------------------------------------
// cochains

bool CochainComplex::verify() const {
    for (size_t i = 0; i + 1 < d.size(); ++i)
        if (!(d[i] * d[i + 1]).is_zero()) return false;
    return true;
}

CochainComplex cochain_complex(const Resolution& R, const GLattice& L) {
    if (R.G->order() != L.group()->order()) throw GroupMismatch("resolution and lattice over different groups");
    size_t r = L.rank();
    CochainComplex C;
    for (size_t k = 0; k <= R.length(); ++k) C.dims.push_back(R.ranks[k] * r);
    for (size_t k = 0; k < R.length(); ++k) {
        IntMatrix D(C.dims[k], C.dims[k + 1]);
        for (size_t j = 0; j < R.ranks[k]; ++j)
            for (size_t i = 0; i < R.ranks[k + 1]; ++i) {
                const RingElt& e = R.boundary[k + 1][j][i];
                if (e.empty()) continue;
                D.set_block(j * r, i * r, L.ring_action(e));
            }
        C.d.push_back(std::move(D));
    }
    return C;
}

CochainComplex bar_complex(const GLattice& L, size_t max_degree) {
    if (L.group()->order() > 32) throw CapExceeded("bar complex needs |G| <= 32");
    long B = L.group()->order() - 1;
    size_t entries = 0;
    for (size_t k = 0; k < max_degree; ++k)
        entries += static_cast<size_t>(ipow(B, k) * ipow(B, k + 1)) * L.rank() * L.rank();
    if (entries > 20000000) throw CapExceeded("bar complex exceeds the dense entry budget");
    return cochain_complex(bar_resolution(L.group(), max_degree), L);
}

CochainComplex periodic_complex(Family f, int n, const GLattice& L, int x, int y) {
    return cochain_complex(periodic_resolution(f, n, L.group(), x, y, f == Family::Q ? 4 : 3), L);
}

// ---------------------------------------------------------------------------
// cohomology groups

bool CohomologyGroup::is_cocycle(const IntVec& c) const {
    if (c.size() != cycles.cols()) throw DimensionMismatch("cochain has the wrong length");
    if (next_.rows() == 0) return RowSolver(cycles).contains(c);
    return next_.left_mul(c) == IntVec(next_.cols());
}

IntVec CohomologyGroup::coordinates(const IntVec& c) const {
    auto y = RowSolver(cycles).solve(c);
    if (!y) throw std::invalid_argument("not a cocycle");
    IntVec out = proj_.left_mul(*y);
    for (size_t k = 0; k < out.size(); ++k)
        if (sgn(invariants[k])) mpz_fdiv_r(out[k].get_mpz_t(), out[k].get_mpz_t(), invariants[k].get_mpz_t());
    return out;
}

bool CohomologyGroup::is_coboundary(const IntVec& c) const {
    if (image_.rows() == 0) {
        for (auto& x : c)
            if (sgn(x)) return false;
        return true;
    }
    return RowSolver(image_).contains(c);
}

std::string invariants_str(const IntVec& inv) {
    if (inv.empty()) return "0";
    std::string s;
    for (size_t k = 0; k < inv.size(); ++k) {
        if (k) s += " x ";
        s += sgn(inv[k]) ? "Z/" + inv[k].get_str() : "Z";
    }
    return s;
}

std::string CohomologyGroup::str() const { return invariants_str(invariants); }

CohomologyGroup cohomology(const CochainComplex& C, size_t i) {
    if (i > C.top()) throw DegreeOutOfRange("degree beyond the complex");
    CohomologyGroup H;
    H.degree = i;
    size_t dim = C.dims[i];
    H.image_ = i ? C.d[i - 1] : IntMatrix(0, dim);
    if (i < C.top()) {
        H.next_ = C.d[i];
        H.cycles = left_kernel(C.d[i]);
        if (C.d[i].rows() == 0) H.cycles = IntMatrix(0, dim);
    } else if (i == 0) {
        H.cycles = IntMatrix::identity(dim);
    } else {
        // H^i is torsion, so the cycles are the saturation of the coboundaries
        H.cycles = row_basis(H.image_).rows() ? saturation(H.image_) : IntMatrix(0, dim);
    }
    size_t z = H.cycles.rows();
    IntMatrix Y(0, z);
    if (z && H.image_.rows()) {
        RowSolver cs(H.cycles);
        IntMatrix ib = row_basis(H.image_);
        for (size_t r = 0; r < ib.rows(); ++r) {
            auto y = cs.solve(ib.row(r));
            if (!y) throw std::logic_error("image not inside the cycles");
            Y.append_row(*y);
        }
    }
    if (z == 0) {
        H.proj_ = IntMatrix(0, 0);
        return H;
    }
    AbelianPresentation p = cokernel(Y.rows() ? Y : IntMatrix(0, z));
    H.invariants = p.invariants;
    H.proj_ = p.projection;
    return H;
}

bool is_cocycle_mod1(const CochainComplex& C, size_t i, const RatVec& c) {
    if (i >= C.top()) throw DegreeOutOfRange("cocycle test needs d^i");
    return is_zero_mod1(C.d[i].left_mul(c));
}

bool is_coboundary_mod1(const CochainComplex& C, size_t i, const RatVec& c, RatVec* witness) {
    if (i > C.top()) throw DegreeOutOfRange("degree beyond the complex");
    if (i == 0) return is_zero_mod1(c);
    auto x = solve_mod1(C.d[i - 1].transpose(), c);
    if (x && witness) *witness = *x;
    return x.has_value();
}

IntVec qz_shift(const CochainComplex& C, size_t i, const RatVec& c) {
    if (i >= C.top()) throw DegreeOutOfRange("shift needs d^i");
    RatVec lift = reduce_mod1(c);
    RatVec v = C.d[i].left_mul(lift);
    IntVec out(v.size());
    for (size_t k = 0; k < v.size(); ++k) {
        if (v[k].get_den() != 1) throw std::invalid_argument("not a cocycle mod 1");
        out[k] = v[k].get_num();
    }
    return out;
}

bool qz_shift_vanishes(const CochainComplex& C, size_t i, const RatVec& c, IntVec* witness) {
    IntVec s = qz_shift(C, i, c);
    auto y = RowSolver(C.d[i]).solve(s);
    if (y && witness) *witness = *y;
    return y.has_value();
}

// ---------------------------------------------------------------------------
// comparison maps

namespace {

using BarElt = std::map<std::pair<long, int>, Int>;  // (tuple index, g) -> coefficient

ComparisonMap comparison_to_bar(const Resolution& src, const Subset& H, const Resolution& dst, size_t length) {
    const FiniteGroup& G = *dst.G;
    long B = G.order() - 1;
    ComparisonMap f;
    f.H = H;
    f.src_ranks.assign(src.ranks.begin(), src.ranks.begin() + length + 1);
    f.dst_ranks.assign(dst.ranks.begin(), dst.ranks.begin() + length + 1);
    std::vector<std::vector<BarElt>> psi(length + 1);
    psi[0] = {BarElt{{{0, 0}, Int(1)}}};
    for (size_t k = 1; k <= length; ++k) {
        for (size_t i = 0; i < src.ranks[k]; ++i) {
            BarElt z;
            for (size_t j = 0; j < src.ranks[k - 1]; ++j)
                for (auto& [h, c] : src.boundary[k][j][i])
                    for (auto& [key, e] : psi[k - 1][j]) z[{key.first, G.mul(key.second, H[h])}] += c * e;
            BarElt s;
            long sign = (k % 2 == 0) ? 1 : -1;  // (-1)^{(k-1)+1}
            for (auto& [key, c] : z) {
                if (!sgn(c) || key.second == 0) continue;
                s[{key.first * B + (key.second - 1), 0}] += sign * c;
            }
            psi[k].push_back(std::move(s));
        }
    }
    f.psi.resize(length + 1);
    for (size_t k = 0; k <= length; ++k)
        for (auto& e : psi[k]) {
            std::vector<RingElt> v(dst.ranks[k]);
            for (auto& [key, c] : e)
                if (sgn(c)) v[key.first][key.second] += c;
            f.psi[k].push_back(std::move(v));
        }
    return f;
}

}  // namespace

ComparisonMap comparison_map(const Resolution& src, const Subset& H, const Resolution& dst, size_t length) {
    if (length > src.length() || length > dst.length()) throw DegreeOutOfRange("comparison map too long");
    if (static_cast<int>(H.size()) != src.G->order()) throw GroupMismatch("subgroup does not match the source");
    if (dst.kind == "bar") return comparison_to_bar(src, H, dst, length);
    const FiniteGroup& G = *dst.G;
    size_t N = G.order();
    ComparisonMap f;
    f.H = H;
    f.src_ranks.assign(src.ranks.begin(), src.ranks.begin() + length + 1);
    f.dst_ranks.assign(dst.ranks.begin(), dst.ranks.begin() + length + 1);
    f.psi.resize(length + 1);
    f.psi[0] = {std::vector<RingElt>{ring_unit(0)}};
    for (size_t k = 1; k <= length; ++k) {
        RowSolver solver(dst.z_matrix(k));
        for (size_t i = 0; i < src.ranks[k]; ++i) {
            IntVec rhs(dst.ranks[k - 1] * N);
            for (size_t j = 0; j < src.ranks[k - 1]; ++j)
                for (auto& [h, c] : src.boundary[k][j][i])
                    for (size_t l = 0; l < dst.ranks[k - 1]; ++l)
                        for (auto& [g, e] : f.psi[k - 1][j][l]) rhs[l * N + G.mul(g, H[h])] += c * e;
            auto x = solver.solve(rhs);
            if (!x) throw ConversionFailed("lifting system unsolvable");
            std::vector<RingElt> v(dst.ranks[k]);
            for (size_t p = 0; p < x->size(); ++p)
                if (sgn((*x)[p])) v[p / N][static_cast<int>(p % N)] = (*x)[p];
            f.psi[k].push_back(std::move(v));
        }
    }
    return f;
}

IntMatrix restriction_matrix(const ComparisonMap& f, const GLattice& L, size_t k) {
    size_t r = L.rank();
    size_t rs = f.src_ranks[k], rd = f.dst_ranks[k];
    IntMatrix Rm(rd * r, rs * r);
    for (size_t i = 0; i < rs; ++i)
        for (size_t l = 0; l < rd; ++l)
            if (!f.psi[k][i][l].empty()) Rm.set_block(l * r, i * r, L.ring_action(f.psi[k][i][l]));
    return Rm;
}

// ---------------------------------------------------------------------------
// Bogomolov multipliers

std::string BogomolovResult::str() const {
    return "B^" + std::to_string(degree) + " = " + invariants_str(invariants) + " inside " + invariants_str(ambient);
}

JointKernel restriction_kernel(const GLattice& L, const std::vector<Subset>& subgroups, size_t d, int jobs) {
    if (d < 1 || d > 3) throw DegreeOutOfRange("restriction kernels in degree 1 to 3 only");
    JointKernel out;
    Resolution RG = greedy_resolution(L.group(), d);
    CochainComplex CG = cochain_complex(RG, L);
    CohomologyGroup HG = cohomology(CG, d);
    out.ambient = HG.invariants;
    IntMatrix T = HG.cycles;
    IntMatrix I = row_basis(CG.d[d - 1]);

    auto kernel_for = [&](const Subset& A) -> IntMatrix {
        GLattice LA = restrict(L, A);
        Resolution RA = greedy_resolution(LA.group(), d);
        CochainComplex CA = cochain_complex(RA, LA);
        ComparisonMap f = comparison_map(RA, A, RG, d);
        IntMatrix TR = T * restriction_matrix(f, L, d);
        IntMatrix K = left_kernel(IntMatrix::vstack(TR, CA.d[d - 1]));
        if (K.rows() == 0) return IntMatrix(0, T.cols());
        return row_basis(K.block(0, 0, K.rows(), T.rows()) * T);
    };
    std::vector<IntMatrix> kernels(subgroups.size());
    if (jobs > 1) {
        std::vector<std::future<IntMatrix>> fut;
        for (auto& A : subgroups) fut.push_back(std::async(std::launch::async, kernel_for, A));
        for (size_t k = 0; k < fut.size(); ++k) kernels[k] = fut[k].get();
    } else {
        for (size_t k = 0; k < subgroups.size(); ++k) kernels[k] = kernel_for(subgroups[k]);
    }
    IntMatrix K = T;
    for (auto& Ka : kernels) K = intersect_lattices(K, Ka);
    if (K.rows() == 0) return out;
    RowSolver ks(K);
    IntMatrix Y(0, K.rows());
    for (size_t r = 0; r < I.rows(); ++r) {
        auto y = ks.solve(I.row(r));
        if (!y) throw std::logic_error("coboundaries not inside the restriction kernel");
        Y.append_row(*y);
    }
    out.invariants = cokernel(Y.rows() ? Y : IntMatrix(0, K.rows())).invariants;
    return out;
}

BogomolovResult bogomolov(const GLattice& L, size_t degree, bool qz, int jobs) {
    size_t d = qz ? degree + 1 : degree;
    if (d < 2 || d > 3) throw DegreeOutOfRange("Bogomolov multipliers in integral degree 2 or 3 only");
    const FiniteGroup& G = *L.group();
    if (G.order() > 64) throw CapExceeded("Bogomolov computation needs |G| <= 64");
    BogomolovResult out;
    out.degree = degree;
    auto subs = G.subgroups(true);
    std::vector<Subset> maximal;
    for (auto& A : subs) {
        bool contained = false;
        for (auto& B : subs)
            if (B.size() > A.size() && std::includes(B.begin(), B.end(), A.begin(), A.end())) {
                contained = true;
                break;
            }
        if (!contained) maximal.push_back(A);
    }
    // conjugate subgroups have the same restriction kernel
    out.subgroups = G.conjugacy_representatives(maximal);
    JointKernel jk = restriction_kernel(L, out.subgroups, d, jobs);
    out.invariants = jk.invariants;
    out.ambient = jk.ambient;
    return out;
}

}  // namespace equitor
