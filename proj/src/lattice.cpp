#include "equitor/lattice.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace equitor {

GLattice::GLattice(GroupPtr G, std::vector<IntMatrix> act) : G_(std::move(G)), act_(std::move(act)) {
    if (!G_ || static_cast<int>(act_.size()) != G_->order()) throw GroupMismatch("one matrix per group element expected");
    rank_ = act_[0].rows();
}

GLattice GLattice::from_generators(GroupPtr G, const std::vector<int>& gens, const std::vector<IntMatrix>& images) {
    if (gens.size() != images.size() || images.empty()) throw GroupMismatch("generator images do not match");
    size_t r = images[0].rows();
    std::vector<IntMatrix> act(G->order());
    std::vector<char> done(G->order(), 0);
    act[0] = IntMatrix::identity(r);
    done[0] = 1;
    std::vector<int> queue{0};
    for (size_t q = 0; q < queue.size(); ++q) {
        int x = queue[q];
        for (size_t k = 0; k < gens.size(); ++k) {
            int y = G->mul(x, gens[k]);
            IntMatrix m = act[x] * images[k];
            if (!done[y]) {
                done[y] = 1;
                act[y] = std::move(m);
                queue.push_back(y);
            } else if (act[y] != m) {
                throw GroupMismatch("generator images violate a group relation");
            }
        }
    }
    if (static_cast<int>(queue.size()) != G->order()) throw GroupMismatch("generators do not generate the group");
    GLattice L(std::move(G), std::move(act));
    if (!L.verify()) throw GroupMismatch("generator images do not define an action");
    return L;
}

GLattice GLattice::trivial(GroupPtr G, size_t rank) {
    std::vector<IntMatrix> act(G->order(), IntMatrix::identity(rank));
    return GLattice(std::move(G), std::move(act));
}

IntMatrix GLattice::ring_action(const std::map<int, Int>& r) const {
    IntMatrix out(rank_, rank_);
    for (auto& [g, c] : r)
        if (sgn(c)) out += act_[g].scaled(c);
    return out;
}

bool GLattice::verify() const {
    int n = G_->order();
    for (int g = 0; g < n; ++g) {
        Int d = act_[g].det();
        if (d != 1 && d != -1) return false;
        for (int h = 0; h < n; ++h)
            if (act_[g] * act_[h] != act_[G_->mul(g, h)]) return false;
    }
    return act_[0].is_identity();
}

IntMatrix kronecker(const IntMatrix& A, const IntMatrix& B) {
    IntMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (size_t i = 0; i < A.rows(); ++i)
        for (size_t j = 0; j < A.cols(); ++j) {
            if (!sgn(A(i, j))) continue;
            for (size_t k = 0; k < B.rows(); ++k)
                for (size_t l = 0; l < B.cols(); ++l) K(i * B.rows() + k, j * B.cols() + l) = A(i, j) * B(k, l);
        }
    return K;
}

GLattice dual(const GLattice& L) {
    std::vector<IntMatrix> act;
    for (auto& A : L.actions()) act.push_back(inverse_unimodular(A).transpose());
    return GLattice(L.group(), std::move(act));
}

GLattice tensor(const GLattice& a, const GLattice& b) {
    if (a.group() != b.group()) throw GroupMismatch("tensor of lattices over different groups");
    std::vector<IntMatrix> act;
    for (int g = 0; g < a.group()->order(); ++g) act.push_back(kronecker(a.action(g), b.action(g)));
    return GLattice(a.group(), std::move(act));
}

GLattice direct_sum(const GLattice& a, const GLattice& b) {
    if (a.group() != b.group()) throw GroupMismatch("direct sum of lattices over different groups");
    std::vector<IntMatrix> act;
    for (int g = 0; g < a.group()->order(); ++g) {
        IntMatrix m(a.rank() + b.rank(), a.rank() + b.rank());
        m.set_block(0, 0, a.action(g));
        m.set_block(a.rank(), a.rank(), b.action(g));
        act.push_back(m);
    }
    return GLattice(a.group(), std::move(act));
}

GLattice restrict(const GLattice& L, const Subset& H) {
    const FiniteGroup& G = *L.group();
    if (G.generate(H) != H) throw NotASubgroup("restriction to a subset that is not a subgroup");
    auto T = std::make_shared<FiniteGroup>(G.restrict_to(H));
    std::vector<IntMatrix> act;
    for (int h : H) act.push_back(L.action(h));
    return GLattice(T, std::move(act));
}

std::vector<int> right_coset_representatives(const FiniteGroup& G, const Subset& H) {
    std::vector<char> covered(G.order(), 0);
    std::vector<int> reps;
    for (int t = 0; t < G.order(); ++t) {
        if (covered[t]) continue;
        reps.push_back(t);
        for (int h : H) covered[G.mul(h, t)] = 1;
    }
    return reps;
}

GLattice induced(const GLattice& L0, GroupPtr G, const Subset& H, std::vector<int> reps) {
    if (G->generate(H) != H) throw NotASubgroup("induction from a subset that is not a subgroup");
    if (static_cast<int>(H.size()) != L0.group()->order()) throw GroupMismatch("module is not over H");
    if (reps.empty()) reps = right_coset_representatives(*G, H);
    size_t m = reps.size(), r = L0.rank();
    if (m * H.size() != static_cast<size_t>(G->order())) throw NotASubgroup("bad coset representatives");
    std::map<int, int> pos;
    for (size_t i = 0; i < H.size(); ++i) pos[H[i]] = static_cast<int>(i);
    std::vector<IntMatrix> act;
    for (int g = 0; g < G->order(); ++g) {
        IntMatrix M(m * r, m * r);
        for (size_t j = 0; j < m; ++j) {
            // t_j g = h t_k
            int tg = G->mul(reps[j], g);
            bool found = false;
            for (size_t k = 0; k < m && !found; ++k) {
                int h = G->mul(tg, G->inv(reps[k]));
                auto it = pos.find(h);
                if (it == pos.end()) continue;
                M.set_block(j * r, k * r, L0.action(it->second));
                found = true;
            }
            if (!found) throw NotASubgroup("coset representatives do not cover G");
        }
        act.push_back(M);
    }
    return GLattice(G, std::move(act));
}

IntMatrix fixed_sublattice(const GLattice& L) {
    size_t r = L.rank();
    IntMatrix D(r, 0);
    for (auto& A : L.actions())
        if (!A.is_identity()) D = IntMatrix::hstack(D, A - IntMatrix::identity(r));
    if (D.cols() == 0) return IntMatrix::identity(r);
    return left_kernel(D);
}

ModelLattices model_lattices(const ToricModel& model, const AffineGroup& G) {
    return model_lattices(model, G, std::make_shared<FiniteGroup>(G.table()));
}

ModelLattices model_lattices(const ToricModel& model, const AffineGroup& G, GroupPtr table) {
    ModelLattices out;
    out.group = table;
    std::vector<IntMatrix> n, m, pl, pic;
    for (auto& g : G.elements()) {
        auto perm = ray_permutation(model.fan, g.A);
        if (!perm) throw FanNotInvariant("fan is not invariant under pi*(G)");
        IntMatrix P = permutation_matrix(*perm);
        n.push_back(g.A);
        m.push_back(inverse_unimodular(g.A).transpose());
        pl.push_back(P);
        pic.push_back(model.section * P * model.pic_projection);
        out.ray_perm.push_back(*perm);
    }
    out.N = GLattice(table, n);
    out.M = GLattice(table, m);
    out.PL = GLattice(table, pl);
    out.Pic = GLattice(table, pic);
    out.PicDual = dual(out.Pic);
    return out;
}

std::optional<IntMatrix> find_intertwiner(const std::vector<IntMatrix>& A, const std::vector<IntMatrix>& B,
                                          long budget) {
    if (A.empty() || A.size() != B.size()) return std::nullopt;
    size_t n = A[0].rows();
    std::vector<IntVec> eqs;
    for (size_t t = 0; t < A.size(); ++t)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                IntVec e(n * n);
                for (size_t k = 0; k < n; ++k) {
                    e[k * n + j] += A[t](i, k);
                    e[i * n + k] -= B[t](k, j);
                }
                eqs.push_back(e);
            }
    IntMatrix K = right_kernel(IntMatrix::from_rows(eqs, n * n));
    size_t d = K.rows();
    if (d == 0) return std::nullopt;
    std::vector<IntVec> basis;
    for (size_t r = 0; r < d; ++r) basis.push_back(K.row(r));
    lll_reduce(basis);
    long spent = 0;
    for (long bound = 1; bound <= 4; ++bound) {
        long per = 1;
        for (size_t r = 0; r < d && per <= budget; ++r) per *= (2 * bound + 1);
        if (spent + per > budget) break;
        spent += per;
        std::vector<long> c(d, -bound);
        for (;;) {
            long mx = 0;
            for (long v : c) mx = std::max(mx, std::labs(v));
            if (mx == bound) {
                IntMatrix X(n, n);
                for (size_t r = 0; r < d; ++r)
                    if (c[r])
                        for (size_t t = 0; t < n * n; ++t) X(t / n, t % n) += basis[r][t] * c[r];
                Int det = X.det();
                if (det == 1 || det == -1) return X;
            }
            size_t p = 0;
            while (p < d && c[p] == bound) c[p++] = -bound;
            if (p == d) break;
            ++c[p];
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// random test lattices

IntMatrix random_unimodular(size_t n, std::mt19937& rng) {
    IntMatrix X = IntMatrix::identity(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), coef(-1, 1);
    for (int t = 0; t < 3 * static_cast<int>(n); ++t) {
        int a = pick(rng), b = pick(rng);
        if (a == b) continue;
        IntMatrix E = IntMatrix::identity(n);
        E(a, b) = coef(rng);
        X = X * E;
    }
    return X;
}

GLattice random_lattice(GroupPtr G, std::mt19937& rng) {
    std::vector<GLattice> parts;
    // characters to +-1
    std::vector<GLattice> chars;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            auto gens = G->small_generating_set([&] {
                Subset all;
                for (int g = 0; g < G->order(); ++g) all.push_back(g);
                return all;
            }());
            std::vector<IntMatrix> imgs;
            for (size_t k = 0; k < gens.size(); ++k) imgs.push_back(IntMatrix{{(k == 0 ? a : b) ? -1 : 1}});
            try {
                chars.push_back(GLattice::from_generators(G, gens, imgs));
            } catch (const GroupMismatch&) {
            }
        }
    std::vector<Subset> small;
    for (auto& H : G->subgroups())
        if (G->order() / static_cast<int>(H.size()) <= 4) small.push_back(H);
    size_t rank = 0;
    std::uniform_int_distribution<int> kind(0, 2);
    while (rank < 2) {
        GLattice piece;
        int k = kind(rng);
        if (k == 0) {
            piece = chars[std::uniform_int_distribution<size_t>(0, chars.size() - 1)(rng)];
        } else {
            auto& H = small[std::uniform_int_distribution<size_t>(0, small.size() - 1)(rng)];
            auto T = std::make_shared<FiniteGroup>(G->restrict_to(H));
            piece = induced(GLattice::trivial(T, 1), G, H);
            if (k == 2) piece = dual(piece);
        }
        if (rank + piece.rank() > 4) continue;
        parts.push_back(piece);
        rank += piece.rank();
    }
    GLattice L = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) L = direct_sum(L, parts[i]);
    IntMatrix X = random_unimodular(L.rank(), rng), Xi = inverse_unimodular(X);
    std::vector<IntMatrix> act;
    for (auto& A : L.actions()) act.push_back(X * A * Xi);
    return GLattice(L.group(), act);
}

}  // namespace equitor
