#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(TTD_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WEXITSTATUS(status);
    return r;
}

std::string data(const std::string& name) {
    return std::string(TTD_DATA_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/ttd_cli_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("homology command") {
    SECTION("sphere") {
        auto r = run_cli("homology " + data("s2_delta3.json"));
        REQUIRE(r.code == 0);
        REQUIRE(r.out.find("H0 = Z ") != std::string::npos);
        REQUIRE(r.out.find("H1 = 0") != std::string::npos);
        REQUIRE(r.out.find("H2 = Z ") != std::string::npos);
        REQUIRE(r.out.find("basis: ") != std::string::npos);
        REQUIRE(r.out.find("H2:g0") != std::string::npos);
    }
    SECTION("projective plane torsion") {
        auto r = run_cli("homology " + data("rp2_6.json") + " --degree 2");
        REQUIRE(r.code == 0);
        REQUIRE(r.out.find("H2 = Z/2") != std::string::npos);
    }
    SECTION("missing file names the path") {
        auto r = run_cli("homology /nonexistent/nowhere.json");
        REQUIRE(r.code == 2);
    }
    SECTION("json output") {
        auto r = run_cli("homology " + data("t2_csaszar.json") + " --json");
        REQUIRE(r.code == 0);
        REQUIRE(r.out.find("\"basis_hash\"") != std::string::npos);
        REQUIRE(r.out.find("\"Z^2\"") != std::string::npos);
    }
}

TEST_CASE("pairs command") {
    SECTION("T^3 fiber over 2g0 at bound 0 has two classes") {
        auto r = run_cli("pairs " + data("t3_freudenthal.json") +
                         " --c 2,0,0 --bound 0");
        REQUIRE(r.code == 0);
        REQUIRE(r.out.find("Z/2") != std::string::npos);
        REQUIRE(r.out.find("2 classes in window") != std::string::npos);
    }
    SECTION("trivial sphere bundle at bound 1 has three classes") {
        auto r = run_cli("pairs " + data("s2_delta3.json") + " --c 0 --bound 1");
        REQUIRE(r.code == 0);
        REQUIRE(r.out.find("3 classes in window") != std::string::npos);
    }
    SECTION("wrong c dimension is an input error") {
        auto r = run_cli("pairs " + data("s2_delta3.json") + " --c 1,2 --bound 1");
        REQUIRE(r.code == 2);
    }
}

TEST_CASE("tdual command") {
    std::string base = "tdual " + data("pair_oct_c1_d0.json") + " --complex " +
                       data("s2_octahedron.json");
    SECTION("swaps c and d") {
        auto r = run_cli(base);
        REQUIRE(r.code == 0);
        auto cpos = r.out.find("\"c\"");
        auto dpos = r.out.find("\"d\"");
        REQUIRE(r.out.substr(cpos, r.out.find(']', cpos) - cpos).find("\"0\"") !=
                std::string::npos);
        REQUIRE(r.out.substr(dpos, r.out.find(']', dpos) - dpos).find("\"1\"") !=
                std::string::npos);
    }
    SECTION("applying twice is byte-identical to the input record") {
        auto once = run_cli(base);
        REQUIRE(once.code == 0);
        auto tmp = temp_file("dual.json", once.out);
        auto twice =
            run_cli("tdual " + tmp + " --complex " + data("s2_octahedron.json"));
        REQUIRE(twice.code == 0);
        REQUIRE(twice.out == slurp(data("pair_oct_c1_d0.json")));
    }
    SECTION("a stale basis hash is rejected") {
        std::string rec = slurp(data("pair_oct_c1_d0.json"));
        auto pos = rec.find("\"basis_hash\": \"");
        REQUIRE(pos != std::string::npos);
        rec[pos + 15] = rec[pos + 15] == '0' ? '1' : '0';
        auto tmp = temp_file("stale.json", rec);
        auto r = run_cli("tdual " + tmp + " --complex " + data("s2_octahedron.json"));
        REQUIRE(r.code == 2);
    }
    SECTION("wrong complex is rejected") {
        auto r = run_cli("tdual " + data("pair_oct_c1_d0.json") + " --complex " +
                         data("s2_delta3.json"));
        REQUIRE(r.code == 2);
    }
}

TEST_CASE("moduli command") {
    SECTION("sphere with antipodal homeo has five components") {
        auto r = run_cli("moduli " + data("s2_octahedron.json") + " --homeo " +
                         data("homeo_antipodal.json") + " --bound 1");
        REQUIRE(r.code == 0);
        REQUIRE(r.out.find("9 window classes, 5 components") != std::string::npos);
        REQUIRE(r.out.find("A(X)[4]") != std::string::npos);
        REQUIRE(r.out.find("composition depth 4") != std::string::npos);
    }
    SECTION("torus mapping-class generators act trivially") {
        auto r = run_cli("moduli " + data("t2_csaszar.json") + " --homeo " +
                         data("homeo_t2_s.json") + " --homeo " +
                         data("homeo_t2_t.json") + " --bound 2 --report p1");
        REQUIRE(r.code == 0);
        REQUIRE(r.out.find("S(order 1)") != std::string::npos);
        REQUIRE(r.out.find("T(order 1)") != std::string::npos);
    }
    SECTION("aut report at the basepoint") {
        auto r = run_cli("moduli " + data("s2_octahedron.json") + " --homeo " +
                         data("homeo_antipodal.json") +
                         " --bound 1 --report aut --object 4");
        REQUIRE(r.code == 0);
        REQUIRE(r.out.find("gen antipodal order 2") != std::string::npos);
    }
    SECTION("loop report") {
        auto r = run_cli("moduli " + data("s2_delta3.json") +
                         " --report loops --c 2");
        REQUIRE(r.code == 0);
        REQUIRE(r.out.find("H2(E) over c = (2): Z/2 (+) (quot 0)") !=
                std::string::npos);
    }
    SECTION("dot export") {
        auto r = run_cli("moduli " + data("s2_octahedron.json") + " --homeo " +
                         data("homeo_antipodal.json") + " --bound 1 --dot -");
        REQUIRE(r.code == 0);
        REQUIRE(r.out.find("digraph nerve") != std::string::npos);
        REQUIRE(r.out.find("antipodal") != std::string::npos);
    }
}

TEST_CASE("doubled command") {
    auto r = run_cli("doubled " + data("pair_oct_c1_d0.json") + " --complex " +
                     data("s2_octahedron.json"));
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("\"swap_symmetry\": true") != std::string::npos);
    REQUIRE(r.out.find("\"bundle_e\"") != std::string::npos);
    REQUIRE(r.out.find("\"bundle_e_dual\"") != std::string::npos);
}

TEST_CASE("mapping-torus command") {
    SECTION("identity gluing gives the 2-torus") {
        auto r = run_cli("mapping-torus " + data("map_circle_identity.json") +
                         " --source " + data("s1_circle4.json"));
        REQUIRE(r.code == 0);
        auto tmp = temp_file("torus.json", r.out);
        auto h = run_cli("homology " + tmp);
        REQUIRE(h.code == 0);
        REQUIRE(h.out.find("H1 = Z^2") != std::string::npos);
    }
    SECTION("reflection gluing gives the Klein bottle") {
        auto r = run_cli("mapping-torus " + data("map_circle_reflection.json") +
                         " --source " + data("s1_circle4.json"));
        REQUIRE(r.code == 0);
        auto tmp = temp_file("klein.json", r.out);
        auto h = run_cli("homology " + tmp + " --degree 2");
        REQUIRE(h.code == 0);
        REQUIRE(h.out.find("H2 = Z/2") != std::string::npos);
    }
}

TEST_CASE("restrict command") {
    auto r = run_cli("restrict " + data("pair_oct_c1_d0.json") + " --complex " +
                     data("s2_octahedron.json") + " --sub " +
                     data("s1_equator.json") + " --inclusion " +
                     data("map_equator_inclusion.json"));
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("\"complex\": \"S1_equator\"") != std::string::npos);
    REQUIRE(r.out.find("\"c\": []") != std::string::npos);
}

TEST_CASE("determinism") {
    for (const std::string cmd :
         {"pairs " + data("t2_csaszar.json") + " --c 0 --bound 2 --json",
          "moduli " + data("s2_octahedron.json") + " --homeo " +
              data("homeo_antipodal.json") + " --bound 1",
          "homology " + data("t3_freudenthal.json") + " --json"}) {
        auto a = run_cli(cmd);
        auto b = run_cli(cmd);
        REQUIRE(a.code == 0);
        REQUIRE(a.out == b.out);
        REQUIRE_FALSE(a.out.empty());
    }
}
