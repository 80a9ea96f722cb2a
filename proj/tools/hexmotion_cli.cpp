#include "hexmotion/families.hpp"
#include "hexmotion/json_io.hpp"
#include "hexmotion/study.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hexmotion;
namespace fs = std::filesystem;

namespace {

constexpr int kPass = 0;
constexpr int kInputError = 1;
constexpr int kMathFail = 2;

struct Options {
    std::string input;
    long precision = 256;
    std::string den_bound = "1000000000000";
    int chart = 3;
    int workers = 1;
    std::string out_dir = ".";
    unsigned long poses = 200;

    mpfr_prec_t prec() const { return static_cast<mpfr_prec_t>(precision); }
    Int den() const { return Int(den_bound); }
    // One coordinate is pinned to 1, a second is swept; the motion polynomial
    // is solved for the third.
    int sweep() const { return chart == 3 ? 2 : 3; }
};

// --------------------------------------------------------------------------
// I/O helpers
// --------------------------------------------------------------------------

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open input file: " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

void write_artifact(const Options& opt, const std::string& name, const std::string& bytes) {
    fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    fs::path file = dir / name;
    std::ofstream f(file, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write artifact: " + file.string());
    f << bytes;
    std::cout << "wrote " << file.string() << "\n";
}

void write_report(const Options& opt, const std::string& name, const json& doc) {
    write_artifact(opt, name, doc.dump(2) + "\n");
}

InputDocument load_input(const Options& opt) { return input_from_json(read_json_file(opt.input)); }

const SixTuple& need_platform(const InputDocument& in) {
    if (!in.platform) throw std::invalid_argument("input: this command needs a \"platform\" tuple");
    return *in.platform;
}

const std::array<Rat, 6>& need_legs(const InputDocument& in) {
    if (!in.legs_squared) throw std::invalid_argument("input: this command needs \"legs_squared\"");
    return *in.legs_squared;
}

/// The bond machinery needs enough bits to separate matched directions.
void need_liaison_precision(const Options& opt) {
    if (opt.precision < 128)
        throw std::invalid_argument("precision must be at least 128 for this command");
}

/// The platform scale: taken from the input when present, recovered from the
/// second-order tangency system otherwise (and then required to be unique).
Rat resolve_gamma(const InputDocument& in, const Options& opt) {
    if (in.gamma) return *in.gamma;
    auto t2 = tang2_solve(in.base, need_platform(in), opt.prec(), opt.den());
    if (t2.gammas.size() != 1)
        throw std::domain_error("platform scale is not unique; pass \"gamma\" in the input");
    return t2.gammas[0];
}

// --------------------------------------------------------------------------
// Report serialization
// --------------------------------------------------------------------------

json complex_to_json(const BigComplex& z) {
    return json{{"re", z.re.str(30)}, {"im", z.im.str(30)}};
}

json map_to_json(const PhotographicMap& m) {
    json j;
    j["classification"] = m.classification;
    j["map_degree"] = m.map_degree;
    j["image_degree"] = m.image_degree;
    j["form_degree"] = m.form_degree;
    j["segre_identity"] = segre_check(m);
    if (m.map_degree == 1) {
        auto pencil = quadric_pencil(m);
        j["pencil_dimension"] = pencil.dim();
        json basis = json::array();
        for (const auto& q : pencil.basis) {
            json row = json::array();
            for (const auto& c : q) row.push_back(rat_str(c));
            basis.push_back(row);
        }
        j["pencil"] = basis;
    }
    return j;
}

json verify_to_json(const VerifyReport& rep) {
    json j;
    j["pass"] = rep.pass;
    j["base_class"] = rep.base_class;
    j["platform_class"] = rep.platform_class;
    j["pencil_dimension"] = rep.pencil_dim;
    j["platform_on_pencil"] = rep.platform_on_pencil;
    j["matched_multiplicity"] = rep.matched_multiplicity;
    j["residual_count"] = rep.residual_count;
    j["node_free"] = rep.node_free;
    return j;
}

json tang2_to_json(const Tang2Result& t2) {
    json j;
    json gs = json::array();
    for (const auto& g : t2.gammas) gs.push_back(rat_str(g));
    j["gammas"] = gs;
    j["bonds"] = t2.bonds;
    j["residual"] = t2.residual.str(10);
    j["precision_used"] = static_cast<long>(t2.precision_used);
    return j;
}

json tang3_to_json(const Tang3Result& t3) {
    json j;
    j["solvable"] = t3.solvable;
    j["dimension"] = t3.dim;
    json rel = json::array();
    for (const auto& row : t3.relations) {
        json r;
        r["pivot"] = row.pivot + 1;  // legs are 1-based in reports
        json terms = json::array();
        for (size_t k = 0; k < row.free_vars.size(); ++k)
            terms.push_back(json{{"leg", row.free_vars[k] + 1}, {"coef", rat_str(row.coef[k])}});
        r["terms"] = terms;
        r["constant"] = rat_str(row.cst);
        rel.push_back(r);
    }
    j["relations"] = rel;
    j["precision_used"] = static_cast<long>(t3.precision_used);
    return j;
}

json certificate_to_json(const MovabilityCertificate& cert) {
    json j;
    j["movable"] = cert.movable;
    j["bond_count"] = cert.bond_count;
    j["total_contact"] = cert.total_contact;
    j["ambient_degree"] = cert.ambient_degree;
    if (cert.motion_poly_degree >= 0) j["motion_poly_degree"] = cert.motion_poly_degree;
    json bonds = json::array();
    for (const auto& b : cert.bonds) {
        json bj;
        bj["u"] = b.u_inf ? json("inf") : complex_to_json(b.u);
        bj["s"] = b.s_inf ? json("inf") : complex_to_json(b.s);
        bj["multiplicity"] = b.multiplicity;
        bj["jet_order"] = b.jet_order;
        bj["residual"] = b.residual.str(10);
        bonds.push_back(bj);
    }
    j["bonds"] = bonds;
    return j;
}

json motion_to_json(const MotionPolynomial& mp) {
    json j;
    j["rigid"] = mp.rigid;
    j["j_degree"] = mp.rigid ? 0 : mp.degree;
    j["s_degree"] = mp.elim.S.total_degree();
    j["s_e0_degree"] = mp.s_e0_degree;
    j["linear_pencil"] = mp.elim.linear_pencil;
    j["alternating_sum_zero"] = alternating_g_sum(mp.elim).is_zero();
    if (mp.elim.has_vertex) {
        json v = json::array();
        for (const auto& c : mp.elim.vertex) v.push_back(rat_str(c));
        j["vertex"] = v;
    }
    json res = json::array();
    for (size_t c = 0; c < 3; ++c)
        res.push_back(json{{"resultant_degree", mp.f_degree[c]},
                           {"octic_e0_degree", mp.e_e0_degree[c]},
                           {"norm_power_removed", mp.norm_power[c]}});
    j["eliminations"] = res;
    return j;
}

std::string samples_to_csv(const std::vector<MotionSample>& samples) {
    std::ostringstream csv;
    csv << "sweep,e0,e1,e2,e3,f0,f1,f2,f3,residual\n";
    for (const auto& s : samples) {
        csv << rat_str(s.sweep);
        for (const auto& v : s.e) csv << "," << v.str(30);
        for (const auto& v : s.f) csv << "," << v.str(30);
        csv << "," << s.residual.str(10) << "\n";
    }
    return csv.str();
}

// --------------------------------------------------------------------------
// Subcommands
// --------------------------------------------------------------------------

int cmd_moebius(const Options& opt) {
    auto in = load_input(opt);
    json rep;
    rep["command"] = "moebius";
    bool ok = true;
    auto handle = [&](const char* role, const SixTuple& t) {
        auto m = photographic_map(t);
        rep[role] = map_to_json(m);
        std::cout << role << ": " << m.classification;
        if (rep[role].contains("pencil_dimension"))
            std::cout << " (pencil dimension " << rep[role]["pencil_dimension"].get<int>() << ")";
        std::cout << "\n";
        if (m.classification == "degenerate") ok = false;
    };
    handle("base", in.base);
    if (in.platform) handle("platform", *in.platform);
    rep["pass"] = ok;
    write_report(opt, "moebius_report.json", rep);
    return ok ? kPass : kMathFail;
}

int cmd_verify(const Options& opt) {
    need_liaison_precision(opt);
    auto in = load_input(opt);
    auto rep = verify_residual_platform(in.base, need_platform(in), opt.prec());
    json j{{"command", "verify"}};
    j.update(verify_to_json(rep));
    write_report(opt, "verify_report.json", j);
    std::cout << "verify: " << (rep.pass ? "pass" : "fail") << " (matched " << rep.matched_multiplicity
              << ", residual " << rep.residual_count << ", pencil dimension " << rep.pencil_dim << ")\n";
    return rep.pass ? kPass : kMathFail;
}

int cmd_gamma(const Options& opt) {
    need_liaison_precision(opt);
    auto in = load_input(opt);
    auto t2 = tang2_solve(in.base, need_platform(in), opt.prec(), opt.den());
    json j{{"command", "gamma"}};
    j.update(tang2_to_json(t2));
    write_report(opt, "gamma_report.json", j);
    for (const auto& g : t2.gammas) std::cout << rat_str(g) << "\n";
    return t2.gammas.empty() ? kMathFail : kPass;
}

int cmd_legs(const Options& opt) {
    need_liaison_precision(opt);
    auto in = load_input(opt);
    Rat gamma = resolve_gamma(in, opt);
    auto t3 = tang3_solve(in.base, need_platform(in), gamma, opt.prec(), opt.den());
    json j{{"command", "legs"}, {"gamma", rat_str(gamma)}};
    j.update(tang3_to_json(t3));
    bool ok = t3.solvable;
    if (in.legs_squared) {
        bool member = true;
        for (const auto& row : t3.relations) {
            Rat v = row.cst;
            for (size_t k = 0; k < row.free_vars.size(); ++k)
                v += row.coef[k] * (*in.legs_squared)[static_cast<size_t>(row.free_vars[k])];
            if (v != (*in.legs_squared)[static_cast<size_t>(row.pivot)]) member = false;
        }
        j["legs_on_subspace"] = member;
        ok = ok && member;
    }
    write_report(opt, "legs_report.json", j);
    std::cout << "legs: " << (t3.solvable ? "dimension " + std::to_string(t3.dim) : "unsolvable") << "\n";
    return ok ? kPass : kMathFail;
}

int cmd_certify(const Options& opt) {
    need_liaison_precision(opt);
    auto in = load_input(opt);
    Hexapod hex{in.base, need_platform(in), need_legs(in)};
    Rat gamma = resolve_gamma(in, opt);
    auto cert = movability_certificate(hex, gamma, opt.prec());
    auto mp = motion_gcd(hex, gamma);
    cert.motion_poly_degree = mp.rigid ? 0 : mp.degree;
    json j{{"command", "certify"}, {"gamma", rat_str(gamma)}};
    j.update(certificate_to_json(cert));
    write_report(opt, "certify_report.json", j);
    bool ok = cert.movable && !mp.rigid;
    std::cout << "certify: " << (ok ? "movable" : "not movable") << " (contact " << cert.total_contact
              << " over " << cert.bond_count << " bonds, deg J = " << cert.motion_poly_degree << ")\n";
    return ok ? kPass : kMathFail;
}

int cmd_motion(const Options& opt) {
    auto in = load_input(opt);
    Hexapod hex{in.base, need_platform(in), need_legs(in)};
    Rat gamma = resolve_gamma(in, opt);
    auto mp = motion_gcd(hex, gamma);
    json j{{"command", "motion"}, {"gamma", rat_str(gamma)}};
    j.update(motion_to_json(mp));
    if (mp.rigid) {
        write_report(opt, "motion_report.json", j);
        std::cout << "motion: rigid (constant motion polynomial)\n";
        return kMathFail;
    }
    auto samples = sample_motion(hex, gamma, opt.poses, opt.prec(), opt.chart, opt.sweep());
    BigFloat worst(opt.prec());
    for (const auto& s : samples)
        if (worst < s.residual) worst = s.residual;
    j["poses"] = samples.size();
    j["worst_residual"] = worst.str(10);
    j["chart"] = opt.chart;
    write_report(opt, "motion_report.json", j);
    write_artifact(opt, "motion_samples.csv", samples_to_csv(samples));
    std::cout << "motion: deg J = " << mp.degree << ", " << samples.size()
              << " poses, worst residual " << worst.str(6) << "\n";
    return kPass;
}

Rat param_field(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key))
        throw std::invalid_argument(std::string("family params: missing field \"") + key + "\"");
    return rat_from_json(doc.at(key));
}

int cmd_family(const Options& opt, bool lines) {
    json doc = read_json_file(opt.input);
    FamilyInstance fam = lines
        ? lines_family({param_field(doc, "A1"), param_field(doc, "mu1"), param_field(doc, "A3"),
                        param_field(doc, "B3"), param_field(doc, "mu3"), param_field(doc, "A5"),
                        param_field(doc, "B5"), param_field(doc, "C5"), param_field(doc, "mu5"),
                        param_field(doc, "d1_sq"), param_field(doc, "d3_sq"), param_field(doc, "d5_sq")})
        : order3_family({param_field(doc, "a"), param_field(doc, "b"), param_field(doc, "c"),
                         param_field(doc, "A"), param_field(doc, "B"), param_field(doc, "C"),
                         param_field(doc, "d1_sq"), param_field(doc, "d2_sq"), param_field(doc, "d3_sq")});
    std::string name = lines ? "family_lines.json" : "family_order3.json";
    write_report(opt, name, hexapod_to_json(fam.hex, fam.gamma));
    std::cout << "family " << (lines ? "lines" : "order3") << ": gamma " << rat_str(fam.gamma) << "\n";
    return kPass;
}

int cmd_all(const Options& opt) {
    need_liaison_precision(opt);
    auto in = load_input(opt);
    const SixTuple& platform = need_platform(in);
    json rep;
    rep["command"] = "all";

    auto finish = [&](int code) {
        rep["pass"] = code == kPass;
        write_report(opt, "all_report.json", rep);
        return code;
    };

    auto A = photographic_map(in.base);
    auto B = photographic_map(platform);
    rep["moebius"] = json{{"base", map_to_json(A)}, {"platform", map_to_json(B)}};
    std::cout << "moebius: base " << A.classification << ", platform " << B.classification << "\n";

    auto vrep = verify_residual_platform(in.base, platform, opt.prec());
    rep["verify"] = verify_to_json(vrep);
    std::cout << "verify: " << (vrep.pass ? "pass" : "fail") << " (matched " << vrep.matched_multiplicity
              << ")\n";
    if (!vrep.pass) return finish(kMathFail);

    auto t2 = tang2_solve(in.base, platform, opt.prec(), opt.den());
    rep["gamma"] = tang2_to_json(t2);
    Rat gamma;
    if (in.gamma) {
        gamma = *in.gamma;
        if (std::find(t2.gammas.begin(), t2.gammas.end(), gamma) == t2.gammas.end()) {
            std::cout << "gamma: input scale " << rat_str(gamma) << " is not admissible\n";
            return finish(kMathFail);
        }
    } else if (t2.gammas.size() == 1) {
        gamma = t2.gammas[0];
    } else {
        std::cout << "gamma: scale not unique, pass \"gamma\" in the input\n";
        return finish(kMathFail);
    }
    rep["gamma"]["selected"] = rat_str(gamma);
    std::cout << "gamma: " << rat_str(gamma) << "\n";

    auto t3 = tang3_solve(in.base, platform, gamma, opt.prec(), opt.den());
    rep["legs"] = tang3_to_json(t3);
    std::cout << "legs: " << (t3.solvable ? "dimension " + std::to_string(t3.dim) : "unsolvable") << "\n";
    if (!t3.solvable) return finish(kMathFail);

    // Leg choice: the input legs when given, otherwise a generic point of the
    // admissible subspace (distinct small integers on the free coordinates).
    std::array<Rat, 6> legs;
    if (in.legs_squared) {
        legs = *in.legs_squared;
        for (const auto& row : t3.relations) {
            Rat v = row.cst;
            for (size_t k = 0; k < row.free_vars.size(); ++k)
                v += row.coef[k] * legs[static_cast<size_t>(row.free_vars[k])];
            if (v != legs[static_cast<size_t>(row.pivot)]) {
                std::cout << "legs: input legs_squared leave the admissible subspace\n";
                rep["legs"]["legs_on_subspace"] = false;
                return finish(kMathFail);
            }
        }
        rep["legs"]["legs_on_subspace"] = true;
    } else {
        std::array<bool, 6> pivot{};
        for (const auto& row : t3.relations) pivot[static_cast<size_t>(row.pivot)] = true;
        int next = 9;
        for (size_t i = 0; i < 6; ++i)
            if (!pivot[i]) legs[i] = Rat(next++);
        for (const auto& row : t3.relations) {
            Rat v = row.cst;
            for (size_t k = 0; k < row.free_vars.size(); ++k)
                v += row.coef[k] * legs[static_cast<size_t>(row.free_vars[k])];
            legs[static_cast<size_t>(row.pivot)] = v;
        }
    }
    json lj = json::array();
    for (const auto& l : legs) lj.push_back(rat_str(l));
    rep["legs"]["selected"] = lj;

    Hexapod hex{in.base, platform, legs};
    auto cert = movability_certificate(hex, gamma, opt.prec());
    auto mp = motion_gcd(hex, gamma);
    cert.motion_poly_degree = mp.rigid ? 0 : mp.degree;
    rep["certify"] = certificate_to_json(cert);
    rep["motion"] = motion_to_json(mp);
    std::cout << "certify: " << (cert.movable ? "movable" : "not movable") << " (contact "
              << cert.total_contact << ")\n";
    if (!cert.movable || mp.rigid) return finish(kMathFail);

    auto samples = sample_motion(hex, gamma, opt.poses, opt.prec(), opt.chart, opt.sweep());
    BigFloat worst(opt.prec());
    for (const auto& s : samples)
        if (worst < s.residual) worst = s.residual;
    rep["motion"]["poses"] = samples.size();
    rep["motion"]["worst_residual"] = worst.str(10);
    write_artifact(opt, "motion_samples.csv", samples_to_csv(samples));
    std::cout << "motion: deg J = " << mp.degree << ", " << samples.size()
              << " poses, worst residual " << worst.str(6) << "\n";
    return finish(kPass);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact mobility analysis for hexapod platforms"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", opt.input, "input JSON file")->required();
        sub->add_option("--precision", opt.precision, "working precision in bits")
            ->capture_default_str()
            ->check(CLI::Range(64L, 65536L));
        sub->add_option("--den-bound", opt.den_bound,
                        "denominator bound for rational reconstruction")
            ->capture_default_str();
        sub->add_option("--workers", opt.workers,
                        "worker threads reserved for module-level parallelism (currently serial)")
            ->capture_default_str();
        sub->add_option("--out", opt.out_dir, "directory for JSON/CSV artifacts")->capture_default_str();
        return sub;
    };
    auto add_motion_flags = [&](CLI::App* sub) {
        sub->add_option("--chart", opt.chart, "rotation coordinate pinned to 1 when sampling")
            ->capture_default_str()
            ->check(CLI::Range(1, 3));
        sub->add_option("--poses", opt.poses, "number of poses to sample")->capture_default_str();
        return sub;
    };

    auto* c_moebius = add_common(app.add_subcommand("moebius", "classify the photographic map and its quadric pencil"));
    auto* c_verify = add_common(app.add_subcommand("verify", "check that the platform is a liaison partner of the base"));
    auto* c_gamma = add_common(app.add_subcommand("gamma", "recover admissible platform scales (second-order tangency)"));
    auto* c_legs = add_common(app.add_subcommand("legs", "recover the admissible squared-leg subspace (third-order tangency)"));
    auto* c_certify = add_common(app.add_subcommand("certify", "movability certificate for a full hexapod"));
    auto* c_motion = add_motion_flags(add_common(
        app.add_subcommand("motion", "motion polynomial and sampled self-motion trajectories")));
    auto* c_family = app.add_subcommand("family", "generate a movable hexapod from a known family");
    c_family->require_subcommand(1);
    auto* c_lines = add_common(c_family->add_subcommand("lines", "concurrent-lines family"));
    add_common(c_family->add_subcommand("order3", "order-three symmetry family"));
    auto* c_all = add_motion_flags(add_common(
        app.add_subcommand("all", "full pipeline on a base/platform pair")));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (app.got_subcommand(c_moebius)) return cmd_moebius(opt);
        if (app.got_subcommand(c_verify)) return cmd_verify(opt);
        if (app.got_subcommand(c_gamma)) return cmd_gamma(opt);
        if (app.got_subcommand(c_legs)) return cmd_legs(opt);
        if (app.got_subcommand(c_certify)) return cmd_certify(opt);
        if (app.got_subcommand(c_motion)) return cmd_motion(opt);
        if (app.got_subcommand(c_family)) return cmd_family(opt, c_family->got_subcommand(c_lines));
        if (app.got_subcommand(c_all)) return cmd_all(opt);
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return kMathFail;
    }
    return kInputError;
}
