// Integration checks for the command-line front end: exit-code contract,
// stdout claims, artifact determinism, and round-trip of emitted instances.
// Usage: test_cli <path-to-cli> <data-dir>

#include "hexmotion/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using hexmotion::json;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
    std::cout << (ok ? "  ok: " : "  FAIL: ") << what << "\n";
    if (!ok) ++g_failures;
}

struct ProcResult {
    int exit_code = -1;
    std::string output;
};

ProcResult run(const std::string& cmd) {
    ProcResult r;
    FILE* p = popen((cmd + " 2>&1").c_str(), "r");
    if (!p) return r;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, p)) r.output.append(buf, n);
    int status = pclose(p);
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
    std::ofstream f(p, std::ios::binary);
    f << s;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

size_t line_count(const std::string& s) {
    size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: test_cli <cli-binary> <data-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path data = argv[2];
    const fs::path work = fs::temp_directory_path() / "hexmotion_cli_test";
    fs::remove_all(work);
    fs::create_directories(work);
    const std::string pair = (data / "fixture_pair.json").string();
    const std::string hexa = (data / "fixture_hexapod.json").string();
    auto out = [&](const std::string& sub) { return (work / sub).string(); };

    std::cout << "moebius\n";
    {
        auto r = run(cli + " moebius " + pair + " --out " + out("moebius"));
        check(r.exit_code == 0, "exit 0");
        check(contains(r.output, "base: birational-6"), "base classified birational-6");
        json rep = json::parse(slurp(work / "moebius" / "moebius_report.json"));
        check(rep["base"]["pencil_dimension"] == 2, "pencil dimension 2");
        check(rep["platform"]["segre_identity"] == true, "platform on the Segre cubic");
    }

    std::cout << "verify\n";
    {
        auto r = run(cli + " verify " + pair + " --out " + out("verify"));
        check(r.exit_code == 0, "exit 0");
        check(contains(r.output, "verify: pass (matched 14, residual 14"), "14 matched = 14 residual");
    }

    std::cout << "gamma\n";
    {
        auto r1 = run(cli + " gamma " + pair + " --out " + out("gamma1"));
        auto r2 = run(cli + " gamma " + pair + " --out " + out("gamma2"));
        check(r1.exit_code == 0, "exit 0");
        check(contains(r1.output, "\n1\n"), "prints the scale 1");
        std::string a = slurp(work / "gamma1" / "gamma_report.json");
        std::string b = slurp(work / "gamma2" / "gamma_report.json");
        check(!a.empty() && a == b, "byte-identical report across runs");
        json rep = json::parse(a);
        check(rep["gammas"] == json::array({"1"}), "report lists exactly {1}");
        check(rep["bonds"] == 14, "14 bonds");
    }

    std::cout << "legs\n";
    {
        auto r = run(cli + " legs " + pair + " --out " + out("legs"));
        check(r.exit_code == 0, "exit 0");
        check(contains(r.output, "legs: dimension 3"), "subspace dimension 3");
        std::string rep = slurp(work / "legs" / "legs_report.json");
        check(contains(rep, "71/92") && contains(rep, "-535801/676062"), "reduced relations exact");
    }

    std::cout << "certify\n";
    {
        auto r = run(cli + " certify " + hexa + " --out " + out("certify"));
        check(r.exit_code == 0, "exit 0");
        check(contains(r.output, "movable"), "certificate passes");
        json rep = json::parse(slurp(work / "certify" / "certify_report.json"));
        check(rep["total_contact"].get<int>() > rep["ambient_degree"].get<int>(),
              "contact exceeds ambient degree");
        check(rep["motion_poly_degree"] == 10, "deg J = 10 attached");
    }

    std::cout << "motion\n";
    {
        auto r1 = run(cli + " motion " + hexa + " --out " + out("motion1"));
        auto r2 = run(cli + " motion " + hexa + " --out " + out("motion2"));
        check(r1.exit_code == 0, "exit 0");
        check(contains(r1.output, "deg J = 10"), "special legs give deg J = 10");
        std::string csv = slurp(work / "motion1" / "motion_samples.csv");
        check(line_count(csv) >= 201, "CSV holds at least 200 poses");
        check(contains(csv, "sweep,e0,e1,e2,e3,f0,f1,f2,f3,residual"), "CSV header");
        check(csv == slurp(work / "motion2" / "motion_samples.csv"), "byte-identical CSV across runs");
        check(slurp(work / "motion1" / "motion_report.json") == slurp(work / "motion2" / "motion_report.json"),
              "byte-identical report across runs");
    }

    std::cout << "motion in another chart\n";
    {
        auto r = run(cli + " motion " + hexa + " --chart 1 --poses 25 --out " + out("chart"));
        check(r.exit_code == 0, "exit 0");
        json rep = json::parse(slurp(work / "chart" / "motion_report.json"));
        check(rep["chart"] == 1, "chart recorded");
        check(rep["poses"].get<int>() >= 25, "pose count honored");
    }

    std::cout << "family lines round-trip\n";
    {
        auto r = run(cli + " family lines " + (data / "params_lines.json").string() + " --out " + out("flines"));
        check(r.exit_code == 0, "exit 0");
        check(contains(r.output, "gamma -1"), "scale -1");
        std::string emitted = slurp(work / "flines" / "family_lines.json");
        auto in = hexmotion::input_from_json(json::parse(emitted));
        check(in.platform && in.gamma && in.legs_squared, "instance is a full hexapod document");
        check(*in.gamma == hexmotion::Rat(-1), "gamma parses back to -1");
        std::string again = hexmotion::input_to_json(in).dump(2) + "\n";
        check(again == emitted, "re-serialization is byte-identical");
        auto c = run(cli + " certify " + (work / "flines" / "family_lines.json").string() + " --out " +
                     out("flines_cert"));
        check(c.exit_code == 0, "emitted instance certifies as movable");
    }

    std::cout << "family order3 round-trip\n";
    {
        auto r = run(cli + " family order3 " + (data / "params_order3.json").string() + " --out " + out("fo3"));
        check(r.exit_code == 0, "exit 0");
        check(contains(r.output, "gamma 1"), "scale 1");
        std::string emitted = slurp(work / "fo3" / "family_order3.json");
        auto in = hexmotion::input_from_json(json::parse(emitted));
        std::string again = hexmotion::input_to_json(in).dump(2) + "\n";
        check(again == emitted, "re-serialization is byte-identical");
    }

    std::cout << "input errors exit 1\n";
    {
        check(run(cli + " gamma " + (work / "absent.json").string()).exit_code == 1, "missing file");
        spit(work / "dup.json", R"({"base": [[1,0,0],[1,0,0],[0,1,0],[0,0,1],[1,1,0],[0,1,1]]})");
        check(run(cli + " moebius " + (work / "dup.json").string() + " --out " + out("err")).exit_code == 1,
              "duplicate points");
        spit(work / "badrat.json", R"({"base": [["1~2",0,0],[2,0,0],[0,1,0],[0,0,1],[1,1,0],[0,1,1]]})");
        check(run(cli + " moebius " + (work / "badrat.json").string() + " --out " + out("err")).exit_code == 1,
              "malformed rational");
        spit(work / "float.json", R"({"base": [[0.5,0,0],[2,0,0],[0,1,0],[0,0,1],[1,1,0],[0,1,1]]})");
        check(run(cli + " moebius " + (work / "float.json").string() + " --out " + out("err")).exit_code == 1,
              "float literal rejected");
        spit(work / "nobase.json", R"({"platform": [[1,0,0],[2,0,0],[0,1,0],[0,0,1],[1,1,0],[0,1,1]]})");
        check(run(cli + " gamma " + (work / "nobase.json").string() + " --out " + out("err")).exit_code == 1,
              "missing base field");
        check(run(cli + " gamma " + pair + " --precision 100 --out " + out("err")).exit_code == 1,
              "precision floor for liaison commands");
        check(run(cli + " verify " + hexa + " --precision banana --out " + out("err")).exit_code == 1,
              "unparsable flag");
    }

    std::cout << "mathematical failures exit 2\n";
    {
        json rigid = json::parse(slurp(data / "fixture_hexapod.json"));
        rigid["legs_squared"] = {"9", "11", "10", "1", "1", "1"};
        spit(work / "rigid.json", rigid.dump(2));
        auto m = run(cli + " motion " + (work / "rigid.json").string() + " --out " + out("rigid"));
        check(m.exit_code == 2, "rigid legs: motion exits 2");
        check(contains(m.output, "rigid"), "rigid reported");
        auto c = run(cli + " certify " + (work / "rigid.json").string() + " --out " + out("rigid"));
        check(c.exit_code == 2, "rigid legs: certify exits 2");
    }

    std::cout << "all\n";
    {
        auto r = run(cli + " all " + pair + " --out " + out("all"));
        check(r.exit_code == 0, "exit 0");
        check(contains(r.output, "verify: pass"), "verify stage");
        check(contains(r.output, "gamma: 1"), "gamma stage");
        check(contains(r.output, "legs: dimension 3"), "legs stage");
        check(contains(r.output, "certify: movable"), "certify stage");
        check(contains(r.output, "deg J = 12"), "generic legs give deg J = 12");
        json rep = json::parse(slurp(work / "all" / "all_report.json"));
        check(rep["pass"] == true, "aggregate pass flag");
        check(rep["motion"]["poses"].get<int>() >= 200, "trajectory sampled");
    }

    if (g_failures) {
        std::cout << g_failures << " failure(s)\n";
        return 1;
    }
    std::cout << "all cli checks passed\n";
    return 0;
}
