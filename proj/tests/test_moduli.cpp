#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ttd/corpus.hpp"
#include "ttd/moduli.hpp"

using namespace ttd;

namespace {

struct OctFixture {
    SimplicialComplex oct = corpus::octahedron();
    HomeoData antipodal =
        homeo_from_simplicial(oct, "antipodal", corpus::octahedron_antipodal(oct), 2);
};

const OctFixture& oct_fixture() {
    static const OctFixture f;
    return f;
}

struct T3Fixture {
    SimplicialComplex t3 = corpus::torus3();
    HomeoData swap_xy, swap_yz, rot;

    T3Fixture() : t3(corpus::torus3()) {
        auto relabel = [&](auto&& pick) {
            std::map<std::string, std::string> m;
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y)
                    for (int z = 0; z < 3; ++z) {
                        auto lab = [](int a, int b, int c) {
                            return "v" + std::to_string(a) + std::to_string(b) +
                                   std::to_string(c);
                        };
                        m[lab(x, y, z)] = pick(lab, x, y, z);
                    }
            return SimplicialMap(t3, t3, m);
        };
        swap_xy = homeo_from_simplicial(
            t3, "sxy", relabel([](auto lab, int x, int y, int z) { return lab(y, x, z); }));
        swap_yz = homeo_from_simplicial(
            t3, "syz", relabel([](auto lab, int x, int y, int z) { return lab(x, z, y); }));
        rot = homeo_from_simplicial(
            t3, "rot", relabel([](auto lab, int x, int y, int z) { return lab(y, z, x); }));
    }
};

const T3Fixture& t3_fixture() {
    static const T3Fixture f;
    return f;
}

FreeProductWord relator_image(const std::vector<std::pair<int, int>>& rel,
                              const Presentation& pres,
                              const std::vector<unsigned>& orders) {
    FreeProductWord w;
    for (const auto& [g, e] : rel) {
        FreeProductWord letter = e >= 0 ? pres.generator_words[g]
                                        : fp_inverse(pres.generator_words[g], orders);
        for (int k = 0; k < std::abs(e); ++k) w = fp_mul(w, letter, orders);
    }
    return w;
}

PairClass simple_class(const SimplicialComplex& x, std::vector<Int> c,
                       std::vector<Int> d) {
    TQuotient tq(x, x.cohomology(2).group.reduce(c), x.cohomology(2).group.reduce(d));
    return make_pair_class(x, std::move(c), std::move(d), tq.group().zero());
}

}  // namespace

TEST_CASE("homeo validation") {
    const auto& f = oct_fixture();
    const auto& t = t3_fixture();
    IntMat none(0, 0);

    SECTION("matrix homeos over the sphere") {
        auto h = homeo_from_matrices(f.oct, "flip", none, IntMat::from_rows({{-1}}),
                                     none);
        REQUIRE(h.m2 == IntMat::from_rows({{-1}}));
    }
    SECTION("non-unimodular matrices are rejected") {
        REQUIRE_THROWS_AS(
            homeo_from_matrices(f.oct, "dbl", none, IntMat::from_rows({{2}}), none),
            ValidationError);
    }
    SECTION("shape mismatches are rejected") {
        REQUIRE_THROWS_AS(homeo_from_matrices(f.oct, "bad", none,
                                              IntMat::identity(2), none),
                          ValidationError);
    }
    SECTION("ring consistency is checked on generator pairs") {
        // flipping H^3 alone cannot come from a homeomorphism of T^3
        REQUIRE_THROWS_WITH(
            homeo_from_matrices(t.t3, "h3flip", IntMat::identity(3),
                                IntMat::identity(3), IntMat::from_rows({{-1}})),
            Catch::Matchers::ContainsSubstring("ring consistency"));
    }
    SECTION("non-bijective simplicial maps are rejected") {
        std::map<std::string, std::string> collapse;
        for (const auto& l : f.oct.vertex_labels()) collapse[l] = "px";
        REQUIRE_THROWS_AS(homeo_from_simplicial(f.oct, "collapse",
                                                SimplicialMap(f.oct, f.oct, collapse)),
                          ValidationError);
    }
    SECTION("declared order must be a multiple of the action order") {
        GroupoidModel m(f.oct);
        HomeoData h = f.antipodal;
        h.declared_order = 4;
        REQUIRE_NOTHROW(GroupoidModel(f.oct).register_homeo(h));
        h.declared_order = 3;
        REQUIRE_THROWS_AS(GroupoidModel(f.oct).register_homeo(h), ValidationError);
    }
}

TEST_CASE("action helpers") {
    const auto& f = oct_fixture();
    const auto& t = t3_fixture();
    const auto& h2t3 = t.t3.cohomology(2).group;

    SECTION("orders") {
        REQUIRE(action_order(f.oct, make_action_key(f.oct, f.antipodal.m2,
                                                    f.antipodal.m3)) == 2);
        REQUIRE(action_order(t.t3, make_action_key(t.t3, t.swap_xy.m2,
                                                   t.swap_xy.m3)) == 2);
        REQUIRE(action_order(t.t3,
                             make_action_key(t.t3, t.rot.m2, t.rot.m3)) == 3);
    }
    SECTION("inverse actions compose to the identity") {
        IntMat inv = action_inverse(h2t3, t.rot.m2);
        REQUIRE(normalize_action(h2t3, inv * t.rot.m2) ==
                normalize_action(h2t3, IntMat::identity(3)));
    }
}

TEST_CASE("components of the sphere model") {
    const auto& f = oct_fixture();
    GroupoidModel model(f.oct);
    model.register_homeo(f.antipodal);

    SECTION("bound 1: five components of nine classes") {
        auto res = model.components(1);
        REQUIRE(res.window.size() == 9);
        REQUIRE(res.component_count == 5);
        // the basepoint is alone in its component
        std::size_t zero_idx = 9;
        for (std::size_t i = 0; i < res.window.size(); ++i)
            if (res.window[i].c == std::vector<Int>{Int(0)} &&
                res.window[i].d == std::vector<Int>{Int(0)})
                zero_idx = i;
        REQUIRE(zero_idx < 9);
        std::size_t mates = 0;
        for (std::size_t i = 0; i < res.window.size(); ++i)
            if (res.component[i] == res.component[zero_idx]) ++mates;
        REQUIRE(mates == 1);
        // section entries are the minimal window index of their component
        for (std::size_t cid = 0; cid < res.component_count; ++cid) {
            std::size_t first = res.window.size();
            for (std::size_t i = 0; i < res.window.size(); ++i)
                if (res.component[i] == cid) {
                    first = i;
                    break;
                }
            REQUIRE(res.section[cid] == first);
        }
    }
    SECTION("bound 2: thirteen components of twenty-five classes") {
        auto res = model.components(2);
        REQUIRE(res.window.size() == 25);
        REQUIRE(res.component_count == 13);
    }
    SECTION("a second homeo with the same action changes nothing") {
        IntMat none(0, 0);
        GroupoidModel two(f.oct);
        two.register_homeo(
            homeo_from_matrices(f.oct, "flip", none, IntMat::from_rows({{-1}}), none));
        two.register_homeo(f.antipodal);
        auto a = model.components(1);
        auto b = two.components(1);
        REQUIRE(a.component_count == b.component_count);
        REQUIRE(a.component == b.component);
        REQUIRE(a.section == b.section);
    }
    SECTION("p1 report carries one automorphism descriptor per component") {
        auto rep = model.p1_report(1);
        REQUIRE(rep.automorphisms.size() == rep.components.component_count);
    }
}

TEST_CASE("torus model with trivial class actions") {
    auto t2 = corpus::torus7();
    IntMat none(0, 0);
    GroupoidModel model(t2);
    // mapping-class generators act through det = 1 on H^2
    model.register_homeo(homeo_from_matrices(
        t2, "S", IntMat::from_rows({{0, -1}, {1, 0}}), IntMat::from_rows({{1}}), none));
    model.register_homeo(homeo_from_matrices(
        t2, "T", IntMat::from_rows({{1, 1}, {0, 1}}), IntMat::from_rows({{1}}), none));

    auto res = model.components(2);
    REQUIRE(res.window.size() == 25);
    REQUIRE(res.component_count == 25);  // all actions are trivial on classes

    auto aut = model.aut_group(res.window[7]);
    REQUIRE(aut.generators.size() == 2);
    for (const auto& g : aut.generators) {
        REQUIRE(g.order == 1);
        REQUIRE_FALSE(g.composite);
    }

    auto nerve = model.nerve_export(2);
    REQUIRE(nerve.cells0.size() == 25);
    REQUIRE(nerve.cells1.empty());
    auto pres = pi1_from_nerve(nerve, 0);
    REQUIRE(pres.generator_names.empty());
}

TEST_CASE("aut group of the sphere model") {
    const auto& f = oct_fixture();
    GroupoidModel model(f.oct);
    model.register_homeo(f.antipodal);

    SECTION("the basepoint has one order-two automorphism") {
        auto aut = model.aut_group(simple_class(f.oct, {Int(0)}, {Int(0)}));
        REQUIRE(aut.generators.size() == 1);
        REQUIRE(aut.generators[0].word == "antipodal");
        REQUIRE(aut.generators[0].order == 2);
        REQUIRE_FALSE(aut.generators[0].composite);
        REQUIRE(aut.gauge_loop_group.sub().same_type(
            loop_count_group(f.oct, {Int(0)}).sub()));
    }
    SECTION("moved classes have trivial automorphisms") {
        auto aut = model.aut_group(simple_class(f.oct, {Int(1)}, {Int(0)}));
        REQUIRE(aut.generators.empty());
    }
}

TEST_CASE("sphere nerve and its edge-path groups") {
    const auto& f = oct_fixture();
    GroupoidModel model(f.oct);
    model.register_homeo(f.antipodal);
    auto nerve = model.nerve_export(1);

    REQUIRE(nerve.cells0.size() == 9);
    REQUIRE(nerve.cells1.size() == 9);  // one antipodal arrow per object
    REQUIRE(nerve.cells2.size() == 9);  // a^2 = id over every object
    for (const auto& cell : nerve.cells2) REQUIRE(cell.h_identity);

    SECTION("composite arrows have at most one filling 2-cell") {
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (const auto& cell : nerve.cells2)
            REQUIRE(seen.insert({cell.f, cell.g}).second);
    }
    SECTION("edge-path group at the basepoint is Z/2") {
        std::size_t zero_idx = 9;
        for (std::size_t i = 0; i < nerve.cells0.size(); ++i)
            if (nerve.cells0[i].c == std::vector<Int>{Int(0)} &&
                nerve.cells0[i].d == std::vector<Int>{Int(0)})
                zero_idx = i;
        auto pres = pi1_from_nerve(nerve, zero_idx);
        REQUIRE(pres.generator_names.size() == 1);
        auto ball = word_ball(pres.generator_words, nerve.homeo_orders, 6);
        REQUIRE(ball.size() == 2);
        // matches the automorphism group at the same object
        auto aut = model.aut_group(nerve.cells0[zero_idx]);
        std::vector<FreeProductWord> letters(aut.generators.size());
        for (auto& w : letters)
            fp_append(w, 0, 1, nerve.homeo_orders);  // antipodal is homeo 0
        REQUIRE(word_ball(letters, nerve.homeo_orders, 6) == ball);
    }
    SECTION("edge-path group at a moved class is trivial") {
        // (1,0) and (-1,0) form one component joined by two arrows
        std::size_t idx = 9;
        for (std::size_t i = 0; i < nerve.cells0.size(); ++i)
            if (nerve.cells0[i].c == std::vector<Int>{Int(1)} &&
                nerve.cells0[i].d == std::vector<Int>{Int(0)})
                idx = i;
        auto pres = pi1_from_nerve(nerve, idx);
        auto ball = word_ball(pres.generator_words, nerve.homeo_orders, 6);
        // relator a@x . a@y = id kills the only loop
        for (const auto& rel : pres.relators)
            REQUIRE(relator_image(rel, pres, nerve.homeo_orders).syllables.empty());
        REQUIRE(ball.size() == 1);
    }
    SECTION("nerve export is deterministic") {
        auto again = model.nerve_export(1);
        REQUIRE(again.cells0.size() == nerve.cells0.size());
        for (std::size_t e = 0; e < nerve.cells1.size(); ++e) {
            REQUIRE(again.cells1[e].src == nerve.cells1[e].src);
            REQUIRE(again.cells1[e].dst == nerve.cells1[e].dst);
            REQUIRE(again.cells1[e].homeo == nerve.cells1[e].homeo);
            REQUIRE(again.cells1[e].power == nerve.cells1[e].power);
        }
    }
    SECTION("dot export lists every object and arrow") {
        std::string dot = nerve_to_dot(nerve);
        REQUIRE(dot.find("digraph") != std::string::npos);
        REQUIRE(dot.find("antipodal") != std::string::npos);
        std::size_t arrows = 0, pos = 0;
        while ((pos = dot.find("->", pos)) != std::string::npos) {
            ++arrows;
            pos += 2;
        }
        REQUIRE(arrows == nerve.cells1.size());
    }
}

TEST_CASE("three-torus symmetries") {
    const auto& t = t3_fixture();

    SECTION("two commuting-in-no-way involutions give Z/2 * Z/2") {
        GroupoidModel model(t.t3);
        model.register_homeo(t.swap_xy);
        model.register_homeo(t.swap_yz);

        auto base = model.object_window(0);
        REQUIRE(base.size() == 1);

        auto aut = model.aut_group(base[0]);
        REQUIRE(aut.generators.size() == 2);
        REQUIRE(aut.generators[0].order == 2);
        REQUIRE(aut.generators[1].order == 2);
        // the composed 3-cycle fixes the basepoint but is already generated
        for (const auto& g : aut.generators) REQUIRE_FALSE(g.composite);

        auto nerve = model.nerve_export(0);
        REQUIRE(nerve.cells1.size() == 2);
        auto pres = pi1_from_nerve(nerve, 0);
        REQUIRE(pres.generator_names.size() == 2);
        auto ball = word_ball(pres.generator_words, nerve.homeo_orders, 6);
        REQUIRE(ball.size() == 13);  // alternating words in Z/2 * Z/2
        std::vector<FreeProductWord> letters(2);
        fp_append(letters[0], 0, 1, nerve.homeo_orders);
        fp_append(letters[1], 1, 1, nerve.homeo_orders);
        REQUIRE(word_ball(letters, nerve.homeo_orders, 6) == ball);
    }
    SECTION("an order-three rotation gives Z/3 through its power arrows") {
        GroupoidModel model(t.t3);
        model.register_homeo(t.rot);
        auto nerve = model.nerve_export(0);
        REQUIRE(nerve.cells1.size() == 2);  // rot and rot^2
        REQUIRE(nerve.cells2.size() == 4);
        auto pres = pi1_from_nerve(nerve, 0);
        for (const auto& rel : pres.relators)
            REQUIRE(relator_image(rel, pres, nerve.homeo_orders).syllables.empty());
        auto ball = word_ball(pres.generator_words, nerve.homeo_orders, 6);
        REQUIRE(ball.size() == 3);
    }
    SECTION("composite words can fix classes the generators move") {
        GroupoidModel model(t.t3);
        model.register_homeo(t.swap_xy);
        model.register_homeo(t.rot);
        const auto& h2 = t.t3.cohomology(2).group;

        IntMat comp = t.swap_xy.m2 * t.rot.m2;
        IntMat diff = comp + (-IntMat::identity(3));
        IntMat fixed = kernel_lattice(diff);
        REQUIRE(fixed.cols() >= 1);
        std::vector<Int> v;
        for (std::size_t j = 0; j < fixed.cols(); ++j) {
            auto cand = h2.reduce(fixed.col(j));
            if (h2.reduce(t.swap_xy.m2.mul_vec(cand)) != cand &&
                h2.reduce(t.rot.m2.mul_vec(cand)) != cand) {
                v = cand;
                break;
            }
        }
        REQUIRE_FALSE(v.empty());

        auto x = simple_class(t.t3, v, h2.zero());
        auto aut = model.aut_group(x);
        REQUIRE(aut.generators.size() == 1);
        REQUIRE(aut.generators[0].composite);
        REQUIRE(aut.generators[0].order == 2);
    }
}

TEST_CASE("homeo action laws") {
    const auto& f = oct_fixture();
    GroupoidModel model(f.oct);
    model.register_homeo(f.antipodal);
    auto window = model.object_window(2);

    SECTION("the action commutes with t-duality") {
        for (const auto& p : window) {
            auto lhs = t_dual(homeo_act(f.antipodal, p));
            auto rhs = homeo_act(f.antipodal, t_dual(p));
            REQUIRE(lhs == rhs);
        }
    }
    SECTION("an involution acts as one") {
        for (const auto& p : window)
            REQUIRE(homeo_act(f.antipodal, homeo_act(f.antipodal, p)) == p);
    }
    SECTION("stepwise application matches the composed matrices") {
        const auto& t = t3_fixture();
        auto p = simple_class(t.t3, {Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)});
        auto stepwise = homeo_act(t.swap_xy, homeo_act(t.rot, p));
        auto composed = homeo_act(t.t3, t.swap_xy.m2 * t.rot.m2,
                                  t.swap_xy.m3 * t.rot.m3, p);
        REQUIRE(stepwise == composed);
    }
}

TEST_CASE("loop groups, triples and the doubled descriptor") {
    auto s2 = corpus::delta3_boundary();
    std::vector<Int> c2 = {Int(2)};

    SECTION("loop count group is the degree-two gysin data") {
        auto g = loop_count_group(s2, c2);
        REQUIRE(g.sub().invariant_factors() == std::vector<Int>{Int(2)});
        REQUIRE(g.quot().group().is_trivial());
        auto g0 = loop_count_group(s2, {Int(0)});
        REQUIRE(g0.sub().free_rank() == 1);
        REQUIRE(loop_count_group(s2, {Int(1)}).sub().is_trivial());
    }
    SECTION("triples map to a class and a labeled loop") {
        auto h = make_flux(s2, c2, {Int(1)}, {});
        auto img = triple_to_p0p1(s2, c2, h, {}, {Int(3)});
        REQUIRE(img.pair.c == c2);
        REQUIRE(img.loop_tag == "phi_b[q=(),s=(1)]");  // 3 reduces mod 2
        REQUIRE_THROWS_AS(triple_to_p0p1(s2, c2, h, {Int(1)}, {Int(0)}),
                          ContractError);
    }
    SECTION("doubled descriptor swaps the two bundles") {
        auto p = simple_class(s2, {Int(3)}, {Int(0)});
        auto d = doubled_descriptor(p);
        REQUIRE(d.base == s2.name());
        REQUIRE(d.swap_symmetry);
        REQUIRE(d.torus_class_c == p.c);
        REQUIRE(d.torus_class_d == p.d);
        // degree 2: Z/3 from the c-side bundle, Z from the trivial d-side
        REQUIRE(d.bundle_e[2].sub.invariant_factors() == std::vector<Int>{Int(3)});
        REQUIRE(d.bundle_e_dual[2].sub.free_rank() == 1);
        auto q = doubled_descriptor(t_dual(p));
        REQUIRE(q.torus_class_c == p.d);
        REQUIRE(q.bundle_e[2].sub.same_type(d.bundle_e_dual[2].sub));
    }
}
