// Command-line front end: load complexes, compute cohomology, classify
// pairs, apply T-duality, build moduli models, export reports and graphs.
//
// Exit codes: 0 success, 2 input error, 3 internal contract violation.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ttd/corpus.hpp"
#include "ttd/json_io.hpp"

using namespace ttd;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

SimplicialComplex load_complex(const std::string& path) {
    return complex_from_json(load_json(path));
}

std::vector<Int> parse_coords(const std::string& text) {
    std::vector<Int> v;
    if (text.empty()) return v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.emplace_back(item);
        } catch (const std::invalid_argument&) {
            throw ValidationError("invalid integer coordinate: " + item);
        }
    }
    return v;
}

std::string group_str(const FgAbelianGroup& g) {
    std::string s;
    if (g.free_rank() == 1) s = "Z";
    if (g.free_rank() > 1) s = "Z^" + std::to_string(g.free_rank());
    for (const auto& d : g.invariant_factors()) {
        if (!s.empty()) s += " (+) ";
        s += "Z/" + d.get_str();
    }
    return s.empty() ? "0" : s;
}

std::string coords_str(const std::vector<Int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
}

void require_coord_dim(const std::vector<Int>& v, const FgAbelianGroup& g,
                       const std::string& what) {
    if (v.size() != g.coord_dim())
        throw ValidationError(what + " has " + std::to_string(v.size()) +
                              " coordinates, expected " +
                              std::to_string(g.coord_dim()));
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

// -------------------------------------------------------------------

int cmd_homology(const std::string& path, int degree, bool as_json) {
    auto x = load_complex(path);
    int lo = 0, hi = x.dim();
    if (degree >= 0) lo = hi = degree;
    if (as_json) {
        json out{{"complex", x.name()}, {"basis_hash", basis_hash(x)}};
        json groups = json::array();
        for (int k = lo; k <= hi; ++k) {
            const auto& b = x.cohomology(k);
            groups.push_back(json{{"degree", k},
                                  {"group", group_str(b.group)},
                                  {"rank", b.group.free_rank()},
                                  {"torsion", coords_to_json(b.group.invariant_factors())},
                                  {"generators", b.generator_ids}});
        }
        out["cohomology"] = groups;
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "complex: " << x.name() << "\n";
    std::cout << "basis: " << basis_hash(x) << "\n";
    for (int k = lo; k <= hi; ++k) {
        const auto& b = x.cohomology(k);
        std::cout << "H" << k << " = " << group_str(b.group);
        if (!b.generator_ids.empty()) {
            std::cout << "  [";
            for (std::size_t i = 0; i < b.generator_ids.size(); ++i)
                std::cout << (i ? " " : "") << b.generator_ids[i];
            std::cout << "]";
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_pairs(const std::string& path, const std::string& c_text, long bound,
              bool as_json) {
    auto x = load_complex(path);
    auto c = parse_coords(c_text);
    require_coord_dim(c, x.cohomology(2).group, "--c");
    auto fc = classify_fiber(x, x.cohomology(2).group.reduce(c), bound);
    if (as_json) {
        json rows = json::array();
        for (const auto& p : fc.window) rows.push_back(pair_to_json(p));
        json out{{"complex", x.name()},
                 {"basis_hash", basis_hash(x)},
                 {"c", coords_to_json(c)},
                 {"bound", bound},
                 {"d_kernel", group_str(fc.d_kernel.group())},
                 {"classes", rows}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "complex: " << x.name() << "\n";
    std::cout << "basis: " << basis_hash(x) << "\n";
    std::cout << "fiber over c = " << coords_str(c)
              << ", d ranges over ker(. cup c) = " << group_str(fc.d_kernel.group())
              << "\n";
    for (const auto& p : fc.window)
        std::cout << "c=" << coords_str(p.c) << " d=" << coords_str(p.d)
                  << " t=" << coords_str(p.t) << " in "
                  << group_str(p.t_group.group()) << "\n";
    std::cout << fc.window.size() << " classes in window (bound " << bound << ")\n";
    return 0;
}

int cmd_tdual(const std::string& pair_path, const std::string& complex_path) {
    auto x = load_complex(complex_path);
    auto p = pair_from_json(load_json(pair_path), x);
    std::cout << pair_to_json(t_dual(p)).dump(2) << "\n";
    return 0;
}

int cmd_moduli(const std::string& path, const std::vector<std::string>& homeo_paths,
               long bound, unsigned depth, const std::string& report,
               const std::string& dot_path, const std::string& c_text,
               long object_idx) {
    auto x = load_complex(path);
    GroupoidModel model(x, depth);
    for (const auto& hp : homeo_paths)
        model.register_homeo(homeo_from_json(x, load_json(hp)));

    if (report == "loops") {
        auto c = parse_coords(c_text);
        require_coord_dim(c, x.cohomology(2).group, "--c");
        auto g = loop_count_group(x, x.cohomology(2).group.reduce(c));
        std::cout << "complex: " << x.name() << "\n";
        std::cout << "basis: " << basis_hash(x) << "\n";
        std::cout << "H2(E) over c = " << coords_str(c) << ": "
                  << group_str(g.sub()) << " (+) (quot " << group_str(g.quot().group())
                  << ")\n";
        return 0;
    }

    std::cout << "complex: " << x.name() << "\n";
    std::cout << "basis: " << basis_hash(x) << "\n";
    std::cout << "homeos:";
    for (const auto& h : model.homeos()) std::cout << " " << h.name;
    std::cout << "\n";
    std::cout << "answers relative to composition depth " << depth << "\n";

    if (report == "aut") {
        auto window = model.object_window(bound);
        if (object_idx < 0 || static_cast<std::size_t>(object_idx) >= window.size())
            throw ValidationError("--object index out of range for this window");
        auto aut = model.aut_group(window[object_idx]);
        std::cout << "object " << object_idx << ": " << pair_label(aut.x) << "\n";
        for (const auto& g : aut.generators)
            std::cout << "  gen " << g.word << " order "
                      << (g.order ? std::to_string(g.order) : std::string("inf"))
                      << (g.composite ? " (composite)" : "") << "\n";
        std::cout << "  gauge loops: " << group_str(aut.gauge_loop_group.sub())
                  << " (+) (quot " << group_str(aut.gauge_loop_group.quot().group())
                  << ")\n";
    } else if (report == "p1") {
        auto rep = model.p1_report(bound);
        for (std::size_t cid = 0; cid < rep.components.component_count; ++cid) {
            const auto& aut = rep.automorphisms[cid];
            std::cout << "component " << cid << " rep " << pair_label(aut.x) << ":";
            if (aut.generators.empty()) std::cout << " trivial";
            for (const auto& g : aut.generators)
                std::cout << " " << g.word << "(order "
                          << (g.order ? std::to_string(g.order) : std::string("inf"))
                          << ")";
            std::cout << "\n";
        }
    } else {  // p0
        auto res = model.components(bound);
        std::cout << res.window.size() << " window classes, "
                  << res.component_count << " components\n";
        for (std::size_t cid = 0; cid < res.component_count; ++cid)
            std::cout << "A(X)[" << cid << "] = "
                      << pair_label(res.window[res.section[cid]]) << "\n";
        for (std::size_t i = 0; i < res.window.size(); ++i)
            std::cout << "phi: " << pair_label(res.window[i]) << " -> component "
                      << res.component[i] << "\n";
    }

    if (!dot_path.empty()) {
        auto nerve = model.nerve_export(bound);
        write_output(dot_path, nerve_to_dot(nerve));
    }
    return 0;
}

int cmd_doubled(const std::string& pair_path, const std::string& complex_path) {
    auto x = load_complex(complex_path);
    auto p = pair_from_json(load_json(pair_path), x);
    auto d = doubled_descriptor(p);
    auto pieces = [](const std::vector<GysinPieces>& v) {
        json a = json::array();
        for (const auto& g : v)
            a.push_back(json{{"degree", g.degree},
                             {"sub", group_str(g.sub)},
                             {"quot", group_str(g.quot)}});
        return a;
    };
    json out{{"base", d.base},
             {"basis_hash", basis_hash(p.base)},
             {"torus_class_c", coords_to_json(d.torus_class_c)},
             {"torus_class_d", coords_to_json(d.torus_class_d)},
             {"swap_symmetry", d.swap_symmetry},
             {"flux_matching", d.flux_matching},
             {"bundle_e", pieces(d.bundle_e)},
             {"bundle_e_dual", pieces(d.bundle_e_dual)}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_mapping_torus(const std::string& map_path, const std::string& source_path) {
    auto x = load_complex(source_path);
    auto f = map_from_json(load_json(map_path), x, x);
    auto torus = mapping_torus(x, f);
    std::cout << complex_to_json(torus).dump(2) << "\n";
    return 0;
}

int cmd_restrict(const std::string& pair_path, const std::string& complex_path,
                 const std::string& sub_path, const std::string& incl_path) {
    auto x = load_complex(complex_path);
    auto a = load_complex(sub_path);
    auto incl = map_from_json(load_json(incl_path), a, x);
    auto p = pair_from_json(load_json(pair_path), x);
    std::cout << pair_to_json(restrict_pair(p, incl)).dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact classification of T-duality pairs over finite simplicial complexes"};
    app.require_subcommand(1);

    std::string complex_path, pair_path, sub_path, incl_path, map_path;
    std::string c_text, report = "p0", dot_path;
    std::vector<std::string> homeo_paths;
    int degree = -1;
    long bound = 1, object_idx = -1;
    unsigned depth = 4;
    bool as_json = false;

    auto* homology = app.add_subcommand("homology", "cohomology groups of a complex");
    homology->add_option("complex", complex_path)->required();
    homology->add_option("--degree", degree);
    homology->add_flag("--json", as_json);

    auto* pairs = app.add_subcommand("pairs", "pair classes in the fiber over c");
    pairs->add_option("complex", complex_path)->required();
    pairs->add_option("--c", c_text)->required();
    pairs->add_option("--bound", bound);
    pairs->add_flag("--json", as_json);

    auto* tdual = app.add_subcommand("tdual", "T-dual of a pair-class record");
    tdual->add_option("pair", pair_path)->required();
    tdual->add_option("--complex", complex_path)->required();

    auto* moduli = app.add_subcommand("moduli", "moduli groupoid reports");
    moduli->add_option("complex", complex_path)->required();
    moduli->add_option("--homeo", homeo_paths);
    moduli->add_option("--bound", bound);
    moduli->add_option("--depth", depth);
    moduli->add_option("--report", report)
        ->check(CLI::IsMember({"p0", "p1", "aut", "loops"}));
    moduli->add_option("--dot", dot_path);
    moduli->add_option("--c", c_text);
    moduli->add_option("--object", object_idx);

    auto* doubled = app.add_subcommand("doubled", "doubled-geometry descriptor");
    doubled->add_option("pair", pair_path)->required();
    doubled->add_option("--complex", complex_path)->required();

    auto* mtorus = app.add_subcommand("mapping-torus", "mapping torus of a self-map");
    mtorus->add_option("map", map_path)->required();
    mtorus->add_option("--source", complex_path)->required();

    auto* restrict_cmd = app.add_subcommand("restrict", "restrict a class to a subcomplex");
    restrict_cmd->add_option("pair", pair_path)->required();
    restrict_cmd->add_option("--complex", complex_path)->required();
    restrict_cmd->add_option("--sub", sub_path)->required();
    restrict_cmd->add_option("--inclusion", incl_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (homology->parsed()) return cmd_homology(complex_path, degree, as_json);
        if (pairs->parsed()) return cmd_pairs(complex_path, c_text, bound, as_json);
        if (tdual->parsed()) return cmd_tdual(pair_path, complex_path);
        if (moduli->parsed())
            return cmd_moduli(complex_path, homeo_paths, bound, depth, report,
                              dot_path, c_text, object_idx);
        if (doubled->parsed()) return cmd_doubled(pair_path, complex_path);
        if (mtorus->parsed()) return cmd_mapping_torus(map_path, complex_path);
        if (restrict_cmd->parsed())
            return cmd_restrict(pair_path, complex_path, sub_path, incl_path);
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
