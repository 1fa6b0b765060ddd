#include "equitor/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace equitor {

namespace {

IntVec vec(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.push_back(Int(x));
    return v;
}

IntVec times(const IntVec& v, const IntMatrix& A) { return A.left_mul(v); }

std::vector<Cone> subsets_of_size(const Cone& c, size_t k) {
    std::vector<Cone> out;
    size_t m = c.size();
    if (k > m) return out;
    std::vector<int> pick(m, 0);
    std::fill(pick.begin(), pick.begin() + k, 1);
    do {
        Cone s;
        for (size_t i = 0; i < m; ++i)
            if (pick[i]) s.push_back(c[i]);
        out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

// unimodular matrix whose first rows are the given rows
IntMatrix complete_basis(const IntMatrix& C, size_t n) {
    if (C.rows() == 0) return IntMatrix::identity(n);
    auto s = smith_form(C);
    for (size_t i = 0; i < C.rows(); ++i)
        if (i >= s.rank || s.S(i, i) != 1) throw MalformedFan("cone is not part of a lattice basis");
    IntMatrix Vi = inverse_unimodular(s.V);
    IntMatrix B = C;
    for (size_t i = C.rows(); i < n; ++i) B.append_row(Vi.row(i));
    return B;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fan

Fan Fan::make(size_t n, std::vector<IntVec> rays, std::vector<Cone> cones) {
    Fan f;
    f.n = n;
    std::set<IntVec> seen;
    for (auto& r : rays) {
        if (r.size() != n) throw MalformedFan("ray of wrong dimension");
        Int g = gcd_vec(r);
        if (g != 1) throw MalformedFan("ray " + vec_str(r) + " is not primitive");
        if (!seen.insert(r).second) throw MalformedFan("repeated ray " + vec_str(r));
    }
    f.rays = std::move(rays);
    std::set<Cone> cs;
    for (auto c : cones) {
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw MalformedFan("repeated ray in cone");
        for (int i : c)
            if (i < 0 || i >= static_cast<int>(f.rays.size())) throw MalformedFan("cone index out of range");
        if (c.size() > n) throw MalformedFan("cone with more than n rays");
        if (!c.empty() && hermite_form(f.cone_matrix(c), false).rank != c.size())
            throw MalformedFan("cone is not simplicial");
        cs.insert(c);
    }
    // keep only maximal ones
    for (auto& c : cs) {
        bool sub = false;
        for (auto& d : cs)
            if (d.size() > c.size() && std::includes(d.begin(), d.end(), c.begin(), c.end())) {
                sub = true;
                break;
            }
        if (!sub) f.max_cones.push_back(c);
    }
    return f;
}

std::vector<Cone> Fan::all_cones() const {
    std::set<Cone> s;
    s.insert(Cone{});
    for (auto& c : max_cones)
        for (size_t k = 1; k <= c.size(); ++k)
            for (auto& f : subsets_of_size(c, k)) s.insert(f);
    std::vector<Cone> out(s.begin(), s.end());
    std::stable_sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) { return a.size() < b.size(); });
    return out;
}

size_t Fan::count_cones(size_t dim) const {
    size_t k = 0;
    for (auto& c : all_cones())
        if (c.size() == dim) ++k;
    return k;
}

IntMatrix Fan::cone_matrix(const Cone& c) const {
    std::vector<IntVec> r;
    for (int i : c) r.push_back(rays[i]);
    return IntMatrix::from_rows(r, n);
}

int Fan::ray_index(const IntVec& v) const {
    for (size_t i = 0; i < rays.size(); ++i)
        if (rays[i] == v) return static_cast<int>(i);
    return -1;
}

Fan Fan::transformed(const IntMatrix& X) const {
    std::vector<IntVec> r;
    for (auto& v : rays) r.push_back(times(v, X));
    return make(n, r, max_cones);
}

bool Fan::same_as(const Fan& o) const {
    if (n != o.n || rays.size() != o.rays.size()) return false;
    std::vector<int> m(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) {
        m[i] = o.ray_index(rays[i]);
        if (m[i] < 0) return false;
    }
    std::set<Cone> a, b(o.max_cones.begin(), o.max_cones.end());
    for (auto& c : max_cones) {
        Cone d;
        for (int i : c) d.push_back(m[i]);
        std::sort(d.begin(), d.end());
        a.insert(d);
    }
    return a == b;
}

bool is_smooth(const Fan& f) {
    for (auto& c : f.max_cones) {
        if (c.empty()) continue;
        IntVec d = elementary_divisors(f.cone_matrix(c));
        if (d.size() != c.size()) return false;
        for (auto& x : d)
            if (x != 1) return false;
    }
    return true;
}

bool complete_by_facets(const Fan& f) {
    if (f.n == 0) return f.max_cones.size() == 1;
    for (auto& c : f.max_cones)
        if (c.size() != f.n) return false;
    std::map<Cone, std::vector<int>> facets;
    for (size_t i = 0; i < f.max_cones.size(); ++i)
        for (auto& F : subsets_of_size(f.max_cones[i], f.n - 1)) facets[F].push_back(static_cast<int>(i));
    std::vector<std::vector<int>> adj(f.max_cones.size());
    for (auto& [F, cs] : facets) {
        if (cs.size() != 2) return false;
        // the two cones must lie on opposite sides of the facet hyperplane
        IntVec u;
        if (F.empty()) {
            u = IntVec{Int(1)};
        } else {
            IntMatrix K = right_kernel(f.cone_matrix(F));
            if (K.rows() != 1) return false;
            u = K.row(0);
        }
        int sides[2];
        for (int t = 0; t < 2; ++t) {
            const Cone& c = f.max_cones[cs[t]];
            int other = -1;
            for (int r : c)
                if (!std::binary_search(F.begin(), F.end(), r)) other = r;
            Int s = 0;
            for (size_t k = 0; k < f.n; ++k) s += u[k] * f.rays[other][k];
            sides[t] = sgn(s);
        }
        if (sides[0] * sides[1] != -1) return false;
        adj[cs[0]].push_back(cs[1]);
        adj[cs[1]].push_back(cs[0]);
    }
    std::vector<char> seen(f.max_cones.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    size_t count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x])
            if (!seen[y]) {
                seen[y] = 1;
                ++count;
                stack.push_back(y);
            }
    }
    return count == f.max_cones.size();
}

bool complete_by_covering(const Fan& f) {
    if (f.n == 0) return f.max_cones.size() == 1;
    std::vector<std::vector<RatVec>> inv;
    for (auto& c : f.max_cones) {
        if (c.size() != f.n) continue;
        auto ci = rational_inverse(f.cone_matrix(c));
        if (!ci) return false;
        inv.push_back(*ci);
    }
    unsigned long long state = 0x9e3779b97f4a7c15ULL;
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<long>((state >> 33) % 20001) - 10000;
    };
    int samples = 0, tries = 0;
    while (samples < 64 && tries < 1000) {
        ++tries;
        RatVec w(f.n);
        for (auto& x : w) x = next();
        int hits = 0;
        bool degenerate = false;
        for (auto& ci : inv) {
            bool inside = true;
            for (size_t j = 0; j < f.n; ++j) {
                Rat c = 0;
                for (size_t k = 0; k < f.n; ++k) c += w[k] * ci[k][j];
                if (sgn(c) == 0) degenerate = true;
                if (sgn(c) < 0) inside = false;
            }
            if (inside) ++hits;
        }
        if (degenerate) continue;
        ++samples;
        if (hits != 1) return false;
    }
    return samples > 0;
}

bool is_complete(const Fan& f) {
    bool a = complete_by_facets(f);
    bool b = complete_by_covering(f);
    if (a != b) throw std::logic_error("completeness checks disagree");
    return a;
}

std::optional<std::vector<int>> ray_permutation(const Fan& f, const IntMatrix& A) {
    std::map<IntVec, int> idx;
    for (size_t i = 0; i < f.rays.size(); ++i) idx[f.rays[i]] = static_cast<int>(i);
    std::vector<int> perm(f.rays.size());
    for (size_t i = 0; i < f.rays.size(); ++i) {
        auto it = idx.find(times(f.rays[i], A));
        if (it == idx.end()) return std::nullopt;
        perm[i] = it->second;
    }
    std::set<Cone> cones(f.max_cones.begin(), f.max_cones.end());
    for (auto& c : f.max_cones) {
        Cone d;
        for (int i : c) d.push_back(perm[i]);
        std::sort(d.begin(), d.end());
        if (!cones.count(d)) return std::nullopt;
    }
    return perm;
}

bool is_invariant(const Fan& f, const std::vector<IntMatrix>& gens) {
    for (auto& A : gens) {
        if (A.rows() != f.n) throw DimensionMismatch("matrix and fan of different dimension");
        if (!ray_permutation(f, A)) return false;
    }
    return true;
}

IntMatrix permutation_matrix(const std::vector<int>& perm) {
    IntMatrix P(perm.size(), perm.size());
    for (size_t i = 0; i < perm.size(); ++i) P(i, perm[i]) = 1;
    return P;
}

std::vector<IntMatrix> automorphism_group(const Fan& f) {
    const Cone* base = nullptr;
    for (auto& c : f.max_cones)
        if (c.size() == f.n) {
            IntVec d = elementary_divisors(f.cone_matrix(c));
            if (d.size() == f.n && d.back() == 1) {
                base = &c;
                break;
            }
        }
    if (!base) throw MalformedFan("automorphism search needs a unimodular maximal cone");
    IntMatrix Bi = inverse_unimodular(f.cone_matrix(*base));
    std::set<IntMatrix> out;
    size_t R = f.rays.size();
    std::vector<int> pick(f.n);
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == f.n) {
            std::vector<IntVec> img;
            for (int i : pick) img.push_back(f.rays[i]);
            IntMatrix A = Bi * IntMatrix::from_rows(img, f.n);
            Int d = A.det();
            if ((d == 1 || d == -1) && ray_permutation(f, A)) out.insert(A);
            return;
        }
        for (size_t r = 0; r < R; ++r) {
            if (std::find(pick.begin(), pick.begin() + k, static_cast<int>(r)) != pick.begin() + k) continue;
            pick[k] = static_cast<int>(r);
            rec(k + 1);
        }
    };
    rec(0);
    return {out.begin(), out.end()};
}

Fan star_subdivide(const Fan& f, const IntVec& ray_in) {
    IntVec v = primitive(ray_in);
    if (f.ray_index(v) >= 0) return f;
    std::vector<IntVec> rays = f.rays;
    int vi = static_cast<int>(rays.size());
    rays.push_back(v);
    std::vector<Cone> cones;
    bool found = false;
    for (auto& c : f.max_cones) {
        // coefficients of v in the cone's generators (cones are simplicial)
        IntMatrix C = f.cone_matrix(c);
        std::optional<RatVec> coef;
        if (!c.empty()) {
            // coef * C = v over Q via the Gram system, then check exactness
            RatVec x(c.size());
            IntMatrix G = C * C.transpose();
            auto Gi = rational_inverse(G);
            if (Gi) {
                IntVec Cv = C.right_mul(v);
                for (size_t i = 0; i < c.size(); ++i) {
                    Rat s = 0;
                    for (size_t j = 0; j < c.size(); ++j) s += (*Gi)[i][j] * Cv[j];
                    x[i] = s;
                }
                RatVec back(f.n);
                for (size_t i = 0; i < c.size(); ++i)
                    for (size_t k = 0; k < f.n; ++k) back[k] += x[i] * C(i, k);
                bool exact = true;
                for (size_t k = 0; k < f.n; ++k)
                    if (back[k] != v[k]) exact = false;
                if (exact) coef = x;
            }
        }
        bool inside = coef.has_value();
        if (inside)
            for (auto& x : *coef)
                if (sgn(x) < 0) inside = false;
        if (!inside) {
            cones.push_back(c);
            continue;
        }
        found = true;
        for (size_t i = 0; i < c.size(); ++i) {
            if (sgn((*coef)[i]) == 0) continue;
            Cone d;
            for (size_t j = 0; j < c.size(); ++j)
                if (j != i) d.push_back(c[j]);
            d.push_back(vi);
            cones.push_back(d);
        }
    }
    if (!found) throw RayOutsideSupport("ray " + vec_str(v) + " is outside the support of the fan");
    return Fan::make(f.n, rays, cones);
}

QuotientFan quotient_fan(const Fan& f, const Cone& sigma_in, const std::vector<IntMatrix>& gens) {
    Cone sigma = sigma_in;
    std::sort(sigma.begin(), sigma.end());
    size_t k = sigma.size();
    QuotientFan q;
    q.basis = complete_basis(f.cone_matrix(sigma), f.n);
    IntMatrix Bi = inverse_unimodular(q.basis);
    std::vector<size_t> tail;
    for (size_t i = k; i < f.n; ++i) tail.push_back(i);
    q.projection = Bi.select_cols(tail);
    for (auto& A : gens) {
        if (!stabilizes(f, sigma, A)) throw ConeNotStabilized("group element moves the cone");
        IntMatrix M = q.basis * A * Bi;
        q.action.push_back(M.block(k, k, f.n - k, f.n - k));
    }
    std::map<int, int> new_index;
    std::vector<IntVec> rays;
    std::vector<Cone> cones;
    for (auto& c : f.all_cones()) {
        if (!std::includes(c.begin(), c.end(), sigma.begin(), sigma.end())) continue;
        if (c.size() == k + 1)
            for (int r : c)
                if (!std::binary_search(sigma.begin(), sigma.end(), r)) {
                    new_index[r] = static_cast<int>(rays.size());
                    rays.push_back(primitive(q.projection.left_mul(f.rays[r])));
                }
    }
    for (auto& c : f.max_cones) {
        if (!std::includes(c.begin(), c.end(), sigma.begin(), sigma.end())) continue;
        Cone d;
        for (int r : c)
            if (!std::binary_search(sigma.begin(), sigma.end(), r)) d.push_back(new_index.at(r));
        cones.push_back(d);
    }
    q.fan = Fan::make(f.n - k, rays, cones);
    return q;
}

// ---------------------------------------------------------------------------
// models

ToricModel ToricModel::from_fan(std::string name, Fan fan) {
    ToricModel m;
    m.name = std::move(name);
    m.fan = std::move(fan);
    m.m_embedding = m.fan.cone_matrix([&] {
        Cone all(m.fan.rays.size());
        std::iota(all.begin(), all.end(), 0);
        return all;
    }()).transpose();
    auto s = smith_form(m.m_embedding);
    size_t n = m.fan.n, R = m.pl_rank();
    for (size_t i = 0; i < n; ++i)
        if (s.S(i, i) != 1) throw MalformedFan("M -> PL is not saturated");
    IntMatrix Vi = inverse_unimodular(s.V);
    std::vector<size_t> rest;
    for (size_t i = n; i < R; ++i) rest.push_back(i);
    m.section = Vi.select_rows(rest);
    m.pic_projection = s.V.select_cols(rest);
    return m;
}

ToricModel ToricModel::with_section(std::string name, Fan fan, IntMatrix section) {
    ToricModel m = from_fan(std::move(name), std::move(fan));
    IntMatrix B = IntMatrix::vstack(section, m.m_embedding);
    Int d = B.det();
    if (B.rows() != B.cols() || (d != 1 && d != -1)) throw MalformedFan("section does not complete M to a basis");
    IntMatrix Bi = inverse_unimodular(B);
    std::vector<size_t> first;
    for (size_t i = 0; i < section.rows(); ++i) first.push_back(i);
    m.section = section;
    m.pic_projection = Bi.select_cols(first);
    return m;
}

Fan braid_fan() {
    // P^3 with rays e1, e2, e3, e4 = -(e1+e2+e3)
    std::vector<IntVec> e{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}), vec({-1, -1, -1})};
    Fan f = Fan::make(3, e, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    auto add = [](IntVec a, const IntVec& b) {
        for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    };
    // four points, then the six lines
    for (int l = 3; l >= 0; --l) {
        IntVec v(3);
        for (int i = 0; i < 4; ++i)
            if (i != l) v = add(v, e[i]);
        f = star_subdivide(f, v);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) f = star_subdivide(f, add(e[i], e[j]));
    return f;
}

namespace {

Fan model_S_fan() {
    std::vector<IntVec> printed{vec({-1, 0, 0}), vec({-1, 1, 0}), vec({0, -1, 1}), vec({0, 0, -1}), vec({0, 0, 1}),
                                vec({0, 1, -1}),  vec({1, -1, 0}), vec({1, 0, 0}),  vec({1, 0, -1}), vec({1, -1, 1}),
                                vec({0, -1, 0}),  vec({0, 1, 0}),  vec({-1, 1, -1}), vec({-1, 0, 1})};
    Fan b = braid_fan();
    std::set<IntVec> target(printed.begin(), printed.end());
    // images of e1, e2, e3 (rays 0,1,2 of the braid fan) among the printed rays
    for (auto& a : printed)
        for (auto& c : printed)
            for (auto& d : printed) {
                IntMatrix X = IntMatrix::from_rows({a, c, d}, 3);
                Int det = X.det();
                if (det != 1 && det != -1) continue;
                bool ok = true;
                for (auto& r : b.rays)
                    if (!target.count(X.left_mul(r))) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                Fan t = b.transformed(X);
                std::vector<Cone> cones;
                for (auto& cone : t.max_cones) {
                    Cone e;
                    for (int i : cone) e.push_back(static_cast<int>(std::find(printed.begin(), printed.end(), t.rays[i]) - printed.begin()));
                    cones.push_back(e);
                }
                return Fan::make(3, printed, cones);
            }
    throw std::logic_error("no transport of the braid fan onto the printed rays");
}

Fan model_P_fan() {
    // hyperplane x1+x2+x3+x4 = 0 of the (P^1)^4 fan, basis e_i - e_4
    auto coords = [](const std::vector<long>& x) { return vec({x[0], x[1], x[2]}); };
    auto diff = [](int i, int j) {
        std::vector<long> x(4, 0);
        x[i] += 1;
        x[j] -= 1;
        return x;
    };
    std::vector<IntVec> rays;
    std::map<std::pair<int, int>, int> dr;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) {
                dr[{i, j}] = static_cast<int>(rays.size());
                rays.push_back(coords(diff(i, j)));
            }
    std::vector<Cone> cones;
    for (int i = 0; i < 4; ++i) {
        Cone a, b;
        for (int j = 0; j < 4; ++j)
            if (j != i) {
                a.push_back(dr[{i, j}]);
                b.push_back(dr[{j, i}]);
            }
        cones.push_back(a);
        cones.push_back(b);
    }
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            std::vector<int> neg;
            for (int c = 0; c < 4; ++c)
                if (c != a && c != b) neg.push_back(c);
            int c = neg[0], d = neg[1];
            std::vector<long> z(4, -1);
            z[a] = z[b] = 1;
            int zi = static_cast<int>(rays.size());
            rays.push_back(coords(z));
            int sq[4] = {dr[{a, c}], dr[{a, d}], dr[{b, d}], dr[{b, c}]};
            for (int k = 0; k < 4; ++k) cones.push_back({zi, sq[k], sq[(k + 1) % 4]});
        }
    return Fan::make(3, rays, cones);
}

Fan hexagon_fan() {
    std::vector<IntVec> h{vec({1, 0}), vec({1, 1}), vec({0, 1}), vec({-1, 0}), vec({-1, -1}), vec({0, -1})};
    std::vector<Cone> c;
    for (int k = 0; k < 6; ++k) c.push_back({k, (k + 1) % 6});
    return Fan::make(2, h, c);
}

// product of a fan with the P^1 fan in front
Fan p1_times(const Fan& g) {
    std::vector<IntVec> rays{IntVec(g.n + 1), IntVec(g.n + 1)};
    rays[0][0] = 1;
    rays[1][0] = -1;
    for (auto& r : g.rays) {
        IntVec v(g.n + 1);
        for (size_t i = 0; i < g.n; ++i) v[i + 1] = r[i];
        rays.push_back(v);
    }
    std::vector<Cone> cones;
    for (int s = 0; s < 2; ++s)
        for (auto& c : g.max_cones) {
            Cone d{s};
            for (int i : c) d.push_back(i + 2);
            cones.push_back(d);
        }
    return Fan::make(g.n + 1, rays, cones);
}

Fan projective_space(size_t n) {
    std::vector<IntVec> rays;
    for (size_t i = 0; i < n; ++i) {
        IntVec v(n);
        v[i] = 1;
        rays.push_back(v);
    }
    rays.push_back(IntVec(n, Int(-1)));
    std::vector<Cone> cones;
    for (size_t skip = 0; skip <= n; ++skip) {
        Cone c;
        for (size_t i = 0; i <= n; ++i)
            if (i != skip) c.push_back(static_cast<int>(i));
        cones.push_back(c);
    }
    return Fan::make(n, rays, cones);
}

Fan p1_fan() { return Fan::make(1, {vec({1}), vec({-1})}, {{0}, {1}}); }

}  // namespace

std::vector<std::string> model_names() {
    return {"C", "S", "P", "F", "P3", "P1xP2", "P1xQ", "D4cone", "P1xP1", "dP6", "P2"};
}

ToricModel build_model(const std::string& name) {
    if (name == "C" || name == "P1cubed" || name == "P1xQ") {
        return ToricModel::from_fan(name, p1_times(p1_times(p1_fan())));
    }
    if (name == "S") {
        Fan f = model_S_fan();
        // p_i -> v_{4+i} (i = 1..9), p10 -> v4 - v5, p11 -> -v4 + v5 - v9 + v14
        IntMatrix lam(11, 14);
        for (int i = 0; i < 9; ++i) lam(i, 4 + i) = 1;
        lam(9, 3) = 1;
        lam(9, 4) = -1;
        lam(10, 3) = -1;
        lam(10, 4) = 1;
        lam(10, 8) = -1;
        lam(10, 13) = 1;
        return ToricModel::with_section("S", f, lam);
    }
    if (name == "P") return ToricModel::from_fan(name, model_P_fan());
    if (name == "F") return ToricModel::from_fan(name, p1_times(hexagon_fan()));
    if (name == "P3") return ToricModel::from_fan(name, projective_space(3));
    if (name == "P1xP2") return ToricModel::from_fan(name, p1_times(projective_space(2)));
    if (name == "D4cone") {
        std::vector<IntVec> rays{vec({-1, 0, -1}), vec({0, -1, 0}), vec({0, 0, 1}),
                                 vec({1, 0, 0}),   vec({1, 1, 1}),  vec({1, 0, 1})};
        std::vector<Cone> cones{{0, 3, 4}, {0, 2, 4}, {0, 1, 2}, {0, 1, 3}, {3, 4, 5}, {2, 4, 5}, {1, 2, 5}, {1, 3, 5}};
        return ToricModel::from_fan(name, Fan::make(3, rays, cones));
    }
    if (name == "P1xP1") return ToricModel::from_fan(name, p1_times(p1_fan()));
    if (name == "dP6") return ToricModel::from_fan(name, hexagon_fan());
    if (name == "P2") return ToricModel::from_fan(name, projective_space(2));
    throw std::invalid_argument("unknown model '" + name + "'");
}

// ---------------------------------------------------------------------------
// fixed points

bool stabilizes(const Fan& f, const Cone& sigma, const IntMatrix& A) {
    std::set<IntVec> s;
    for (int i : sigma) s.insert(f.rays[i]);
    for (int i : sigma)
        if (!s.count(times(f.rays[i], A))) return false;
    return true;
}

namespace {

struct OrbitSystem {
    std::vector<IntMatrix> Abar;
    std::vector<RatVec> sbar;
    size_t dim = 0;
};

OrbitSystem orbit_system(const Fan& f, const std::vector<GroupElement>& gens, const Cone& sigma) {
    OrbitSystem o;
    size_t k = sigma.size();
    o.dim = f.n - k;
    IntMatrix B = complete_basis(f.cone_matrix(sigma), f.n);
    IntMatrix Bi = inverse_unimodular(B);
    for (auto& g : gens) {
        if (!stabilizes(f, sigma, g.A)) throw ConeNotStabilized("group element moves the cone");
        IntMatrix M = B * g.A * Bi;
        o.Abar.push_back(M.block(k, k, o.dim, o.dim));
        RatVec s = Bi.left_mul(g.s);
        o.sbar.emplace_back(s.begin() + k, s.end());
    }
    return o;
}

}  // namespace

bool orbit_fixed_point(const Fan& f, const std::vector<GroupElement>& gens, const Cone& sigma) {
    OrbitSystem o = orbit_system(f, gens, sigma);
    if (o.dim == 0 || gens.empty()) return true;
    // u (Abar - I) = -sbar mod 1 for every generator, written column-wise
    IntMatrix A(0, o.dim);
    RatVec v;
    for (size_t g = 0; g < gens.size(); ++g) {
        IntMatrix D = (o.Abar[g] - IntMatrix::identity(o.dim)).transpose();
        A = IntMatrix::vstack(A, D);
        for (auto& x : o.sbar[g]) v.push_back(-x);
    }
    return solve_mod1(A, v).has_value();
}

bool orbit_fixed_point_bruteforce(const Fan& f, const std::vector<GroupElement>& gens, const Cone& sigma,
                                  long D) {
    OrbitSystem o = orbit_system(f, gens, sigma);
    if (o.dim == 0 || gens.empty()) return true;
    // u = c / D; the translation parts must then lie in (1/D)Z as well
    std::vector<std::vector<long>> A, s;
    for (size_t g = 0; g < gens.size(); ++g) {
        A.push_back({});
        s.push_back({});
        for (size_t i = 0; i < o.dim; ++i)
            for (size_t j = 0; j < o.dim; ++j) A[g].push_back(o.Abar[g](i, j).get_si());
        for (auto& x : o.sbar[g]) {
            Rat y = x * D;
            if (y.get_den() != 1) return false;
            s[g].push_back(y.get_num().get_si());
        }
    }
    std::vector<long> c(o.dim, 0);
    for (;;) {
        bool fixed = true;
        for (size_t g = 0; g < gens.size() && fixed; ++g)
            for (size_t j = 0; j < o.dim && fixed; ++j) {
                long w = s[g][j] - c[j];
                for (size_t i = 0; i < o.dim; ++i) w += c[i] * A[g][i * o.dim + j];
                if (w % D != 0) fixed = false;
            }
        if (fixed) return true;
        size_t p = 0;
        while (p < o.dim && c[p] == D - 1) c[p++] = 0;
        if (p == o.dim) break;
        ++c[p];
    }
    return false;
}

bool has_fixed_point(const Fan& f, const std::vector<GroupElement>& gens) {
    for (auto& c : f.all_cones()) {
        bool stable = true;
        for (auto& g : gens)
            if (!stabilizes(f, c, g.A)) {
                stable = false;
                break;
            }
        if (stable && orbit_fixed_point(f, gens, c)) return true;
    }
    return false;
}

ConditionAResult condition_A(const Fan& f, const AffineGroup& G, bool representatives_only) {
    std::vector<IntMatrix> gm;
    for (auto& g : G.generators()) gm.push_back(g.A);
    if (!is_invariant(f, gm)) throw FanNotInvariant("fan is not invariant under pi*(G)");
    const FiniteGroup& T = G.table();
    auto subs = T.subgroups(true);
    if (representatives_only) subs = T.conjugacy_representatives(subs);
    ConditionAResult r;
    for (auto& H : subs) {
        ++r.checked;
        std::vector<GroupElement> gens;
        for (int i : T.small_generating_set(H)) gens.push_back(G.element(i));
        if (gens.empty()) continue;
        if (!has_fixed_point(f, gens)) {
            r.holds = false;
            r.witness = H;
            return r;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// text format

std::string fan_to_text(const Fan& f) {
    std::ostringstream os;
    os << "n " << f.n << "\n";
    for (auto& r : f.rays) {
        os << "ray";
        for (auto& x : r) os << " " << x.get_str();
        os << "\n";
    }
    for (auto& c : f.max_cones) {
        os << "cone";
        for (int i : c) os << " " << (i + 1);
        os << "\n";
    }
    return os.str();
}

Fan fan_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    size_t n = 0;
    bool have_n = false;
    std::vector<IntVec> rays;
    std::vector<Cone> cones;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "n") {
            if (!(ls >> n)) throw MalformedFan("bad dimension line");
            have_n = true;
        } else if (key == "ray") {
            IntVec v;
            std::string tok;
            while (ls >> tok) v.push_back(Int(tok));
            rays.push_back(v);
        } else if (key == "cone") {
            Cone c;
            long i;
            while (ls >> i) c.push_back(static_cast<int>(i - 1));
            cones.push_back(c);
        } else {
            throw MalformedFan("unknown line '" + key + "'");
        }
    }
    if (!have_n) throw MalformedFan("missing dimension line");
    return Fan::make(n, rays, cones);
}

}  // namespace equitor
