#pragma once

// The computable avatar of the moduli groupoid of pairs over X:
// registered homeomorphism actions on pair classes, orbit components with
// a canonical section, automorphism descriptors, the 2-truncated nerve
// with its edge-path groups, the degree-2 loop-correspondence group, and
// the doubled-geometry descriptor.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ttd/pairs.hpp"

namespace ttd {

// ---------------------------------------------------------------------
// homeomorphism data

struct HomeoData {
    std::string name;
    IntMat m1, m2, m3;  // induced action on H^1, H^2, H^3 coordinates
    std::optional<IntMat> m4;
    std::optional<long> declared_order;  // 0 encodes "infinite"
};

// Reduce every column so equal actions compare equal.
inline IntMat normalize_action(const FgAbelianGroup& g, const IntMat& m) {
    IntMat r = m;
    for (std::size_t j = 0; j < m.cols(); ++j) r.set_col(j, g.reduce(m.col(j)));
    return r;
}

// Inverse of an automorphism action modulo the group relations.
inline IntMat action_inverse(const FgAbelianGroup& g, const IntMat& m) {
    std::size_t n = g.coord_dim();
    IntMat ext = m.hcat(g.relation_matrix());
    IntMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> e(n, Int(0));
        e[i] = 1;
        auto x = solve(ext, e);
        if (!x) throw ContractError("action_inverse: matrix is not invertible");
        for (std::size_t r = 0; r < n; ++r) inv(r, i) = (*x)[r];
    }
    return normalize_action(g, inv);
}

// The part of a homeo action that moves pair classes: (M2, M3) normalized.
struct ActionKey {
    IntMat m2, m3;
    bool operator==(const ActionKey& o) const { return m2 == o.m2 && m3 == o.m3; }
    bool operator<(const ActionKey& o) const {
        auto tup = [](const IntMat& m) {
            std::vector<Int> v;
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
            return v;
        };
        auto a = tup(m2), b = tup(m3), c = tup(o.m2), d = tup(o.m3);
        if (a != c) return a < c;
        return b < d;
    }
};

inline ActionKey make_action_key(const SimplicialComplex& x, const IntMat& m2,
                                 const IntMat& m3) {
    return ActionKey{normalize_action(x.cohomology(2).group, m2),
                     normalize_action(x.cohomology(3).group, m3)};
}

inline ActionKey identity_action_key(const SimplicialComplex& x) {
    return make_action_key(x, IntMat::identity(x.cohomology(2).group.coord_dim()),
                           IntMat::identity(x.cohomology(3).group.coord_dim()));
}

inline ActionKey compose_actions(const SimplicialComplex& x, const ActionKey& outer,
                                 const ActionKey& inner) {
    return make_action_key(x, outer.m2 * inner.m2, outer.m3 * inner.m3);
}

inline ActionKey invert_action(const SimplicialComplex& x, const ActionKey& a) {
    return ActionKey{action_inverse(x.cohomology(2).group, a.m2),
                     action_inverse(x.cohomology(3).group, a.m3)};
}

// Smallest k > 0 with (M2^k, M3^k) = identity on the groups; 0 = infinite.
inline unsigned action_order(const SimplicialComplex& x, const ActionKey& a,
                             unsigned limit = 256) {
    auto k2 = order_of_action(x.cohomology(2).group, a.m2, limit);
    auto k3 = order_of_action(x.cohomology(3).group, a.m3, limit);
    if (!k2 || !k3) return 0;
    return std::lcm(*k2, *k3);
}

// ---------------------------------------------------------------------
// validation

// Ring consistency M3[a cup b] = [M1 a cup M2 b] on H^1 x H^2 generator
// pairs, and existence of a compatible H^4 action when H^4 is nontrivial.
inline void validate_homeo(const SimplicialComplex& x, const HomeoData& h) {
    const auto& h1 = x.cohomology(1).group;
    const auto& h2 = x.cohomology(2).group;
    const auto& h3 = x.cohomology(3).group;
    const auto& h4 = x.cohomology(4).group;

    auto dims_ok = [](const IntMat& m, std::size_t n) {
        return m.rows() == n && m.cols() == n;
    };
    if (!dims_ok(h.m1, h1.coord_dim()) || !dims_ok(h.m2, h2.coord_dim()) ||
        !dims_ok(h.m3, h3.coord_dim()))
        throw ValidationError("homeo '" + h.name + "': matrix shape mismatch");
    if (!is_automorphism(h1, h.m1))
        throw ValidationError("homeo '" + h.name + "': m1 is not unimodular");
    if (!is_automorphism(h2, h.m2))
        throw ValidationError("homeo '" + h.name + "': m2 is not unimodular");
    if (!is_automorphism(h3, h.m3))
        throw ValidationError("homeo '" + h.name + "': m3 is not unimodular");

    auto e = [](std::size_t dim, std::size_t i) {
        std::vector<Int> v(dim, Int(0));
        v[i] = 1;
        return v;
    };
    for (std::size_t i = 0; i < h1.coord_dim(); ++i)
        for (std::size_t j = 0; j < h2.coord_dim(); ++j) {
            auto lhs = h3.reduce(
                h.m3.mul_vec(cup_classes(x, 1, e(h1.coord_dim(), i), 2,
                                         e(h2.coord_dim(), j))));
            auto rhs = h3.reduce(cup_classes(x, 1, h.m1.col(i), 2, h.m2.col(j)));
            if (lhs != rhs)
                throw ValidationError("homeo '" + h.name +
                                      "': ring consistency fails on generator pair (H1:g" +
                                      std::to_string(i) + ", H2:g" + std::to_string(j) + ")");
        }

    if (h4.is_trivial()) return;
    // collect H^2 x H^2 cup pairs and their images
    std::vector<std::vector<Int>> u, v;
    for (std::size_t i = 0; i < h2.coord_dim(); ++i)
        for (std::size_t j = 0; j < h2.coord_dim(); ++j) {
            u.push_back(h4.reduce(cup_classes(x, 2, e(h2.coord_dim(), i), 2,
                                              e(h2.coord_dim(), j))));
            v.push_back(h4.reduce(cup_classes(x, 2, h.m2.col(i), 2, h.m2.col(j))));
        }
    if (h.m4) {
        if (!dims_ok(*h.m4, h4.coord_dim()) || !is_automorphism(h4, *h.m4))
            throw ValidationError("homeo '" + h.name + "': m4 is not unimodular");
        for (std::size_t k = 0; k < u.size(); ++k)
            if (h4.reduce(h.m4->mul_vec(u[k])) != v[k])
                throw ValidationError("homeo '" + h.name +
                                      "': m4 inconsistent on generator pair " +
                                      std::to_string(k));
    } else {
        // a compatible M4 exists iff every relation among the u_k kills v_k
        IntMat um = IntMat::from_cols(h4.coord_dim(), u);
        IntMat vm = IntMat::from_cols(h4.coord_dim(), v);
        IntMat ker = kernel_lattice(um.hcat(h4.relation_matrix()));
        for (std::size_t j = 0; j < ker.cols(); ++j) {
            std::vector<Int> lam(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) lam[i] = ker(i, j);
            if (!h4.is_zero(vm.mul_vec(lam)))
                throw ValidationError("homeo '" + h.name +
                                      "': no H^4 action is compatible with m2");
        }
    }
}

inline HomeoData homeo_from_matrices(const SimplicialComplex& x, std::string name,
                                     IntMat m1, IntMat m2, IntMat m3,
                                     std::optional<IntMat> m4 = std::nullopt,
                                     std::optional<long> declared_order = std::nullopt) {
    HomeoData h{std::move(name), std::move(m1), std::move(m2), std::move(m3),
                std::move(m4), declared_order};
    validate_homeo(x, h);
    return h;
}

inline HomeoData homeo_from_simplicial(const SimplicialComplex& x, std::string name,
                                       const SimplicialMap& f,
                                       std::optional<long> declared_order = std::nullopt) {
    if (!f.source().same_complex(x) || !f.target().same_complex(x))
        throw ValidationError("homeo '" + name + "': map is not a self-map of X");
    if (!f.is_homeomorphism_candidate())
        throw ValidationError("homeo '" + name +
                              "': vertex map is not a simplicial automorphism");
    HomeoData h{std::move(name), induced_map(f, 1), induced_map(f, 2),
                induced_map(f, 3),
                x.cohomology(4).group.is_trivial()
                    ? std::nullopt
                    : std::make_optional(induced_map(f, 4)),
                declared_order};
    validate_homeo(x, h);
    return h;
}

// ---------------------------------------------------------------------
// the groupoid model

inline PairClass homeo_act(const SimplicialComplex& x, const IntMat& m2,
                           const IntMat& m3, const PairClass& p) {
    if (!p.base.same_complex(x))
        throw ContractError("homeo_act: class lives over a different base");
    std::vector<Int> c = m2.mul_vec(p.c);
    std::vector<Int> d = m2.mul_vec(p.d);
    std::vector<Int> t_lift = m3.mul_vec(p.t_group.lift(p.t));
    TQuotient tq(x, x.cohomology(2).group.reduce(c),
                 x.cohomology(2).group.reduce(d));
    return make_pair_class(x, c, d, tq.coords_of(t_lift));
}

inline PairClass homeo_act(const HomeoData& h, const PairClass& p) {
    return homeo_act(p.base, h.m2, h.m3, p);
}

struct ComponentsResult {
    std::vector<PairClass> window;        // sorted lexicographically
    std::vector<std::size_t> component;   // object index -> component id
    std::vector<std::size_t> section;     // component id -> minimal object index
    std::size_t component_count = 0;
};

// A word in the free product of cyclic groups generated by the registered
// homeo actions, in normal form: syllables (generator, exponent) with
// exponent nonzero mod the generator's order and adjacent generators distinct.
struct FreeProductWord {
    std::vector<std::pair<int, long>> syllables;
    bool operator==(const FreeProductWord& o) const { return syllables == o.syllables; }
    bool operator<(const FreeProductWord& o) const { return syllables < o.syllables; }
};

inline void fp_append(FreeProductWord& w, int gen, long exp,
                      const std::vector<unsigned>& orders) {
    if (!w.syllables.empty() && w.syllables.back().first == gen) {
        exp += w.syllables.back().second;
        w.syllables.pop_back();
    }
    unsigned k = orders[gen];
    if (k) exp = ((exp % static_cast<long>(k)) + k) % k;
    if (exp != 0) w.syllables.emplace_back(gen, exp);
}

inline FreeProductWord fp_mul(const FreeProductWord& a, const FreeProductWord& b,
                              const std::vector<unsigned>& orders) {
    FreeProductWord r = a;
    for (const auto& [g, e] : b.syllables) fp_append(r, g, e, orders);
    return r;
}

inline FreeProductWord fp_inverse(const FreeProductWord& a,
                                  const std::vector<unsigned>& orders) {
    FreeProductWord r;
    for (auto it = a.syllables.rbegin(); it != a.syllables.rend(); ++it)
        fp_append(r, it->first, -it->second, orders);
    return r;
}

struct AutGenerator {
    std::string word;        // homeo name, or a composite like "b*a"
    unsigned order = 0;      // order of the action on classes; 0 = infinite
    bool composite = false;  // not a single registered homeo
    FreeProductWord letters; // the word over the registered homeo alphabet
};

struct AutDescriptor {
    PairClass x;
    std::vector<AutGenerator> generators;  // actions fixing x
    GysinGroup gauge_loop_group;           // degree-2 Gysin data over (X, c)
};

struct NerveEdge {
    std::size_t src = 0, dst = 0;
    int homeo = -1;   // generator index
    long power = 1;   // arrow = action of homeo^power
    ActionKey action;
};

struct NerveTriangle {
    // 2-cell g.f = h among 1-cells; h_identity marks g.f = id
    std::size_t f = 0, g = 0, h = 0;
    bool h_identity = false;
};

struct Nerve {
    std::vector<PairClass> cells0;
    std::vector<NerveEdge> cells1;
    std::vector<NerveTriangle> cells2;
    std::vector<std::string> homeo_names;
    std::vector<unsigned> homeo_orders;  // action orders; 0 = infinite
};

struct Presentation {
    std::vector<std::string> generator_names;
    // each generator's class as a word over the registered homeo letters
    std::vector<FreeProductWord> generator_words;
    // relators over the presentation's own generators: (index, exponent)
    std::vector<std::vector<std::pair<int, int>>> relators;
};

class GroupoidModel {
public:
    explicit GroupoidModel(SimplicialComplex base, unsigned composition_depth = 4)
        : base_(std::move(base)), depth_(composition_depth) {}

    const SimplicialComplex& base() const { return base_; }
    const std::vector<HomeoData>& homeos() const { return homeos_; }
    unsigned composition_depth() const { return depth_; }

    GroupoidModel& register_homeo(const HomeoData& h) {
        validate_homeo(base_, h);
        if (h.declared_order && *h.declared_order > 0) {
            unsigned k = action_order(base_, ActionKey{
                normalize_action(base_.cohomology(2).group, h.m2),
                normalize_action(base_.cohomology(3).group, h.m3)});
            if (k == 0 || *h.declared_order % k != 0)
                throw ValidationError("homeo '" + h.name +
                                      "': declared order is incompatible with the "
                                      "order of the induced action");
        }
        homeos_.push_back(h);
        homeos_.back().m2 = normalize_action(base_.cohomology(2).group, h.m2);
        homeos_.back().m3 = normalize_action(base_.cohomology(3).group, h.m3);
        return *this;
    }

    // All pair classes (c, d, t) with kernel-coordinates of c, d and t in
    // the bound window, sorted lexicographically.
    std::vector<PairClass> object_window(long bound) const {
        const auto& h2 = base_.cohomology(2).group;
        std::vector<PairClass> window;
        for (const auto& c : enumerate_elements(h2, bound)) {
            auto fc = classify_fiber(base_, c, bound);
            for (auto& p : fc.window) window.push_back(std::move(p));
        }
        std::sort(window.begin(), window.end());
        window.erase(std::unique(window.begin(), window.end()), window.end());
        return window;
    }

    // Distinct arrow actions reachable by words of length <= depth, each
    // with a shortest realizing word over the homeo letters.
    std::vector<std::pair<ActionKey, FreeProductWord>> action_closure() const {
        auto orders = action_orders();
        std::map<ActionKey, FreeProductWord> seen;
        ActionKey id = identity_action_key(base_);
        seen.emplace(id, FreeProductWord{});
        std::vector<ActionKey> frontier = {id};
        for (unsigned step = 0; step < depth_; ++step) {
            std::vector<ActionKey> next;
            for (const auto& a : frontier)
                for (std::size_t g = 0; g < homeos_.size(); ++g)
                    for (int sgn : {1, -1}) {
                        ActionKey gk = generator_action(g);
                        if (sgn < 0) gk = invert_action(base_, gk);
                        ActionKey comp = compose_actions(base_, gk, a);
                        if (seen.count(comp)) continue;
                        FreeProductWord w = seen.at(a);
                        FreeProductWord letter;
                        fp_append(letter, static_cast<int>(g), sgn, orders);
                        seen.emplace(comp, fp_mul(letter, w, orders));
                        next.push_back(comp);
                    }
            frontier = std::move(next);
            if (frontier.empty()) break;
        }
        std::vector<std::pair<ActionKey, FreeProductWord>> out(seen.begin(), seen.end());
        return out;
    }

    ActionKey generator_action(std::size_t g) const {
        return ActionKey{homeos_[g].m2, homeos_[g].m3};
    }

    std::vector<unsigned> action_orders() const {
        std::vector<unsigned> orders;
        for (std::size_t g = 0; g < homeos_.size(); ++g)
            orders.push_back(action_order(base_, generator_action(g)));
        return orders;
    }

    ComponentsResult components(long bound) const {
        ComponentsResult res;
        res.window = object_window(bound);
        std::map<std::vector<Int>, std::size_t> lookup;
        for (std::size_t i = 0; i < res.window.size(); ++i)
            lookup.emplace(flatten(res.window[i]), i);

        std::vector<std::size_t> parent(res.window.size());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
            while (parent[i] != i) i = parent[i] = parent[parent[i]];
            return i;
        };
        auto unite = [&](std::size_t a, std::size_t b) {
            a = find(a);
            b = find(b);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        };

        auto closure = action_closure();
        for (std::size_t i = 0; i < res.window.size(); ++i)
            for (const auto& [act, word] : closure) {
                PairClass img = homeo_act(base_, act.m2, act.m3, res.window[i]);
                auto it = lookup.find(flatten(img));
                if (it != lookup.end()) unite(i, it->second);
            }

        std::map<std::size_t, std::size_t> roots;  // root -> component id
        res.component.resize(res.window.size());
        for (std::size_t i = 0; i < res.window.size(); ++i) {
            std::size_t r = find(i);
            auto [it, fresh] = roots.emplace(r, roots.size());
            res.component[i] = it->second;
            if (fresh) res.section.push_back(i);  // window sorted: first = minimal
        }
        res.component_count = roots.size();
        return res;
    }

    // Registered homeos (and depth-limited composites outside the subgroup
    // they generate) whose action fixes x, with action orders.
    AutDescriptor aut_group(const PairClass& x) const {
        AutDescriptor res{x, {}, gysin_group(base_, x.c, 2)};
        auto orders = action_orders();
        auto flat = flatten(x);
        std::set<ActionKey> fixing_subgroup;  // generated by listed actions
        fixing_subgroup.insert(identity_action_key(base_));
        std::vector<ActionKey> fixer_gens;
        auto grow = [&](const ActionKey& a) {
            // bounded closure under all fixer generators found so far
            fixer_gens.push_back(a);
            fixer_gens.push_back(invert_action(base_, a));
            std::vector<ActionKey> frontier(fixing_subgroup.begin(),
                                            fixing_subgroup.end());
            for (unsigned step = 0; step < 64 && !frontier.empty(); ++step) {
                std::vector<ActionKey> next;
                for (const auto& b : frontier)
                    for (const auto& g : fixer_gens) {
                        ActionKey m = compose_actions(base_, g, b);
                        if (fixing_subgroup.insert(m).second) next.push_back(m);
                    }
                frontier = std::move(next);
            }
        };
        for (std::size_t g = 0; g < homeos_.size(); ++g) {
            ActionKey a = generator_action(g);
            PairClass img = homeo_act(homeos_[g], x);
            if (flatten(img) != flat) continue;
            FreeProductWord letter;
            fp_append(letter, static_cast<int>(g), 1, orders);
            res.generators.push_back(
                {homeos_[g].name, action_order(base_, a), false, letter});
            grow(a);
        }
        // composite fixers not generated by the singles
        for (const auto& [act, word] : action_closure()) {
            if (word.syllables.size() < 2) continue;
            if (fixing_subgroup.count(act)) continue;
            PairClass img = homeo_act(base_, act.m2, act.m3, x);
            if (flatten(img) != flat) continue;
            res.generators.push_back(
                {word_name(word), action_order(base_, act), true, word});
            grow(act);
        }
        return res;
    }

    struct P1Report {
        ComponentsResult components;
        // one descriptor per canonical section representative
        std::vector<AutDescriptor> automorphisms;
    };

    // P_1(X) as a skeletal groupoid: the component section plus the
    // automorphism descriptor at each representative.
    P1Report p1_report(long bound) const {
        P1Report rep{components(bound), {}};
        for (std::size_t idx : rep.components.section)
            rep.automorphisms.push_back(aut_group(rep.components.window[idx]));
        return rep;
    }

    Nerve nerve_export(long bound) const {
        Nerve n;
        n.cells0 = object_window(bound);
        for (const auto& h : homeos_) n.homeo_names.push_back(h.name);
        n.homeo_orders = action_orders();

        std::map<std::vector<Int>, std::size_t> lookup;
        for (std::size_t i = 0; i < n.cells0.size(); ++i)
            lookup.emplace(flatten(n.cells0[i]), i);

        ActionKey id = identity_action_key(base_);
        // 1-cells: powers of single generators with nontrivial action
        std::set<std::pair<std::size_t, ActionKey>> edge_keys;
        for (std::size_t g = 0; g < homeos_.size(); ++g) {
            unsigned ord = n.homeo_orders[g];
            long max_pow = ord ? static_cast<long>(ord) - 1
                               : static_cast<long>(depth_);
            ActionKey a = generator_action(g);
            ActionKey p = id;
            for (long e = 1; e <= max_pow; ++e) {
                p = compose_actions(base_, a, p);
                if (p == id) break;
                for (std::size_t u = 0; u < n.cells0.size(); ++u) {
                    PairClass img = homeo_act(base_, p.m2, p.m3, n.cells0[u]);
                    auto it = lookup.find(flatten(img));
                    if (it == lookup.end()) continue;
                    if (!edge_keys.emplace(u, p).second) continue;
                    n.cells1.push_back({u, it->second, static_cast<int>(g), e, p});
                }
            }
            if (ord == 0) {
                // negative powers of infinite-order actions
                ActionKey ai = invert_action(base_, a);
                ActionKey q = id;
                for (long e = 1; e <= static_cast<long>(depth_); ++e) {
                    q = compose_actions(base_, ai, q);
                    if (q == id) break;
                    for (std::size_t u = 0; u < n.cells0.size(); ++u) {
                        PairClass img = homeo_act(base_, q.m2, q.m3, n.cells0[u]);
                        auto it = lookup.find(flatten(img));
                        if (it == lookup.end()) continue;
                        if (!edge_keys.emplace(u, q).second) continue;
                        n.cells1.push_back({u, it->second, static_cast<int>(g), -e, q});
                    }
                }
            }
        }
        // deterministic edge order
        std::sort(n.cells1.begin(), n.cells1.end(),
                  [](const NerveEdge& a, const NerveEdge& b) {
                      return std::tie(a.src, a.homeo, a.power, a.dst) <
                             std::tie(b.src, b.homeo, b.power, b.dst);
                  });

        // 2-cells: composable pairs whose composite is again a 1-cell
        // (or the identity)
        std::map<std::pair<std::size_t, std::vector<Int>>, std::size_t> edge_by_action;
        for (std::size_t e = 0; e < n.cells1.size(); ++e) {
            std::vector<Int> key;
            auto collect = [&key](const IntMat& m) {
                for (std::size_t i = 0; i < m.rows(); ++i)
                    for (std::size_t j = 0; j < m.cols(); ++j)
                        key.push_back(m(i, j));
            };
            collect(n.cells1[e].action.m2);
            collect(n.cells1[e].action.m3);
            edge_by_action.emplace(std::make_pair(n.cells1[e].src, key), e);
        }
        auto action_vec = [](const ActionKey& a) {
            std::vector<Int> key;
            for (const IntMat* m : {&a.m2, &a.m3})
                for (std::size_t i = 0; i < m->rows(); ++i)
                    for (std::size_t j = 0; j < m->cols(); ++j)
                        key.push_back((*m)(i, j));
            return key;
        };
        for (std::size_t f = 0; f < n.cells1.size(); ++f)
            for (std::size_t g = 0; g < n.cells1.size(); ++g) {
                if (n.cells1[g].src != n.cells1[f].dst) continue;
                ActionKey comp =
                    compose_actions(base_, n.cells1[g].action, n.cells1[f].action);
                if (comp == id) {
                    if (n.cells1[f].src == n.cells1[g].dst)
                        n.cells2.push_back({f, g, 0, true});
                    continue;
                }
                auto it = edge_by_action.find(
                    std::make_pair(n.cells1[f].src, action_vec(comp)));
                if (it != edge_by_action.end() &&
                    n.cells1[it->second].dst == n.cells1[g].dst)
                    n.cells2.push_back({f, g, it->second, false});
            }
        return n;
    }

private:
    static std::vector<Int> flatten(const PairClass& p) {
        std::vector<Int> v = p.c;
        v.insert(v.end(), p.d.begin(), p.d.end());
        v.insert(v.end(), p.t.begin(), p.t.end());
        return v;
    }

    std::string word_name(const FreeProductWord& w) const {
        std::string s;
        for (auto it = w.syllables.begin(); it != w.syllables.end(); ++it) {
            if (it != w.syllables.begin()) s += "*";
            s += homeos_[it->first].name;
            if (it->second != 1) s += "^" + std::to_string(it->second);
        }
        return s.empty() ? "id" : s;
    }

    SimplicialComplex base_;
    std::vector<HomeoData> homeos_;
    unsigned depth_;
};

// ---------------------------------------------------------------------
// edge-path group of the exported 2-truncation

// Edge-path presentation of the component of cell x0 in the nerve:
// spanning-tree edges become trivial, remaining edges are generators,
// 2-cells give the relations.
inline Presentation pi1_from_nerve(const Nerve& n, std::size_t x0) {
    const std::size_t N = n.cells0.size();
    if (x0 >= N) throw ContractError("pi1_from_nerve: cell index out of range");

    // undirected adjacency for BFS tree
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(N);
    for (std::size_t e = 0; e < n.cells1.size(); ++e) {
        adj[n.cells1[e].src].push_back({n.cells1[e].dst, e});
        adj[n.cells1[e].dst].push_back({n.cells1[e].src, e});
    }
    std::vector<long> tree_edge(N, -1);  // edge used to reach the vertex
    std::vector<int> tree_dir(N, 0);     // +1: edge points toward the vertex
    std::vector<bool> visited(N, false);
    std::vector<std::size_t> order = {x0};
    visited[x0] = true;
    std::set<std::size_t> tree;
    for (std::size_t head = 0; head < order.size(); ++head) {
        std::size_t u = order[head];
        for (const auto& [v, e] : adj[u]) {
            if (visited[v]) continue;
            visited[v] = true;
            tree_edge[v] = static_cast<long>(e);
            tree_dir[v] = (n.cells1[e].dst == v) ? +1 : -1;
            tree.insert(e);
            order.push_back(v);
        }
    }

    // word of the tree path x0 -> u over the homeo letters
    std::function<FreeProductWord(std::size_t)> path_word = [&](std::size_t u) {
        FreeProductWord w;
        std::vector<std::pair<std::size_t, int>> hops;
        std::size_t cur = u;
        while (cur != x0) {
            std::size_t e = static_cast<std::size_t>(tree_edge[cur]);
            hops.push_back({e, tree_dir[cur]});
            cur = (tree_dir[cur] > 0) ? n.cells1[e].src : n.cells1[e].dst;
        }
        std::reverse(hops.begin(), hops.end());
        for (const auto& [e, dir] : hops)
            fp_append(w, n.cells1[e].homeo, dir * n.cells1[e].power, n.homeo_orders);
        return w;
    };

    Presentation pres;
    std::map<std::size_t, int> gen_index;  // edge -> generator index
    for (std::size_t e = 0; e < n.cells1.size(); ++e) {
        if (!visited[n.cells1[e].src] || tree.count(e)) continue;
        gen_index[e] = static_cast<int>(pres.generator_names.size());
        std::string nm = n.homeo_names[n.cells1[e].homeo];
        if (n.cells1[e].power != 1) nm += "^" + std::to_string(n.cells1[e].power);
        pres.generator_names.push_back("[" + std::to_string(n.cells1[e].src) + ":" +
                                       nm + "]");
        // loop class: path(x0->src) then edge then path(dst->x0)
        FreeProductWord w = path_word(n.cells1[e].src);
        fp_append(w, n.cells1[e].homeo, n.cells1[e].power, n.homeo_orders);
        w = fp_mul(fp_inverse(path_word(n.cells1[e].dst), n.homeo_orders), w,
                   n.homeo_orders);
        // note: group elements act on the left, so the loop is
        // path_back^{-1} * edge * path_in read right to left
        pres.generator_words.push_back(w);
    }

    auto symbol = [&](std::size_t e) -> std::optional<std::pair<int, int>> {
        if (tree.count(e)) return std::nullopt;  // trivial in pi1
        return std::make_pair(gen_index.at(e), 1);
    };
    for (const auto& cell : n.cells2) {
        if (!visited[n.cells1[cell.f].src]) continue;
        std::vector<std::pair<int, int>> relator;
        auto push = [&](std::optional<std::pair<int, int>> s, int sgn) {
            if (!s) return;
            if (!relator.empty() && relator.back().first == s->first) {
                relator.back().second += sgn;
                if (relator.back().second == 0) relator.pop_back();
                return;
            }
            relator.push_back({s->first, sgn});
        };
        // relator g * f * h^{-1}
        push(symbol(cell.g), +1);
        push(symbol(cell.f), +1);
        if (!cell.h_identity) push(symbol(cell.h), -1);
        if (!relator.empty()) pres.relators.push_back(relator);
    }
    std::sort(pres.relators.begin(), pres.relators.end());
    pres.relators.erase(std::unique(pres.relators.begin(), pres.relators.end()),
                        pres.relators.end());
    return pres;
}

inline std::string pair_label(const PairClass& p) {
    auto vec = [](const std::vector<Int>& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
        return s + ")";
    };
    return "c=" + vec(p.c) + " d=" + vec(p.d) + " t=" + vec(p.t);
}

inline std::string nerve_to_dot(const Nerve& n) {
    std::string s = "digraph nerve {\n";
    for (std::size_t i = 0; i < n.cells0.size(); ++i)
        s += "  n" + std::to_string(i) + " [label=\"" + pair_label(n.cells0[i]) +
             "\"];\n";
    for (const auto& e : n.cells1) {
        s += "  n" + std::to_string(e.src) + " -> n" + std::to_string(e.dst) +
             " [label=\"" + n.homeo_names[e.homeo];
        if (e.power != 1) s += "^" + std::to_string(e.power);
        s += "\"];\n";
    }
    s += "}\n";
    return s;
}

// Ball of radius `len` (in generator letters) inside the free product of
// cyclic groups, starting from the given generator words.
inline std::set<FreeProductWord> word_ball(const std::vector<FreeProductWord>& gens,
                                           const std::vector<unsigned>& orders,
                                           unsigned len) {
    std::set<FreeProductWord> ball;
    ball.insert(FreeProductWord{});
    std::vector<FreeProductWord> frontier(ball.begin(), ball.end());
    for (unsigned step = 0; step < len; ++step) {
        std::vector<FreeProductWord> next;
        for (const auto& w : frontier)
            for (const auto& g : gens)
                for (const auto& m :
                     {fp_mul(w, g, orders), fp_mul(w, fp_inverse(g, orders), orders)})
                    if (ball.insert(m).second) next.push_back(m);
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return ball;
}

// ---------------------------------------------------------------------
// loop-correspondence group, triples map, doubled geometry

// Thm-level bookkeeping: loops at a class correspond to H^2(E) classes;
// reported as the unresolved degree-2 Gysin data of the bundle.
inline GysinGroup loop_count_group(const SimplicialComplex& x,
                                   const std::vector<Int>& c) {
    return gysin_group(x, c, 2);
}

struct TripleImage {
    PairClass pair;
    std::string loop_tag;  // phi_b labeled by b's (quot, sub) coordinates
};

inline TripleImage triple_to_p0p1(const SimplicialComplex& x,
                                  const std::vector<Int>& c, const FluxElement& h,
                                  const std::vector<Int>& b_quot,
                                  const std::vector<Int>& b_sub) {
    GysinGroup g2 = loop_count_group(x, c);
    if (b_quot.size() != g2.quot().group().coord_dim() ||
        b_sub.size() != g2.sub().coord_dim())
        throw ContractError("triple_to_p0p1: b does not lie in the loop group");
    auto q = g2.quot().group().reduce(b_quot);
    auto s = g2.sub().reduce(b_sub);
    std::string tag = "phi_b[q=(";
    for (std::size_t i = 0; i < q.size(); ++i)
        tag += (i ? "," : "") + q[i].get_str();
    tag += "),s=(";
    for (std::size_t i = 0; i < s.size(); ++i)
        tag += (i ? "," : "") + s[i].get_str();
    tag += ")]";
    return {pair_class(x, c, h), tag};
}

struct GysinPieces {
    int degree;
    FgAbelianGroup sub, quot;
};

struct DoubledDescriptor {
    std::string base;
    std::vector<Int> torus_class_c, torus_class_d;
    bool swap_symmetry = true;  // the Z_2 exchange marker of the fiber product
    std::string flux_matching;
    std::vector<GysinPieces> bundle_e;       // degrees 0..3 over c
    std::vector<GysinPieces> bundle_e_dual;  // degrees 0..3 over d
};

// Class bookkeeping for the correspondence space E x_X E#.
inline DoubledDescriptor doubled_descriptor(const PairClass& p) {
    DoubledDescriptor d;
    d.base = p.base.name();
    d.torus_class_c = p.c;
    d.torus_class_d = p.d;
    d.flux_matching =
        "pi_! of the fluxes on E and E# equal d and c respectively";
    for (int k = 0; k <= 3; ++k) {
        auto ge = gysin_group(p.base, p.c, k);
        auto gd = gysin_group(p.base, p.d, k);
        d.bundle_e.push_back({k, ge.sub(), ge.quot().group()});
        d.bundle_e_dual.push_back({k, gd.sub(), gd.quot().group()});
    }
    return d;
}

}  // namespace ttd
