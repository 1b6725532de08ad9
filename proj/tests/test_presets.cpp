// Keeps presets/*.cfg in sync with the frozen experiment constants and with
// the CLI option names. Each preset declares its command in the first header
// line ("# s2flow <command...> --preset ..."); keys must belong to that
// command and load-bearing values must match s2flow::experiments.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "s2flow/errors.hpp"
#include "s2flow/experiments.hpp"

using namespace s2flow;
namespace ex = s2flow::experiments;
namespace fs = std::filesystem;

namespace {

struct Preset {
    std::string command;                      // e.g. "rigid-body table"
    std::vector<std::pair<std::string, std::string>> entries;

    bool has(const std::string& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return true;
        return false;
    }
    std::string get(const std::string& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return v;
        throw config_error("preset lacks key: " + key);
    }
    double num(const std::string& key) const { return std::stod(get(key)); }
    std::vector<double> list(const std::string& key) const {
        std::vector<double> out;
        std::stringstream ss(get(key));
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
        return out;
    }
};

std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Same grammar as the loader in the CLI tool: key = value, '#' comments,
// optional double quotes around the value.
Preset load(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    Preset p;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (first) {
            first = false;
            std::stringstream ss(t);
            std::string tok;
            ss >> tok;
            REQUIRE(tok == "#");
            ss >> tok;
            REQUIRE(tok == "s2flow");
            while (ss >> tok && tok.rfind("--", 0) != 0)
                p.command += (p.command.empty() ? "" : " ") + tok;
            continue;
        }
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        REQUIRE(eq != std::string::npos);
        std::string value = trim(t.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        p.entries.emplace_back(trim(t.substr(0, eq)), value);
    }
    return p;
}

// Long option names per subcommand, minus the leading dashes. Renaming a CLI
// option must update this table and the preset files together.
const std::map<std::string, std::set<std::string>>& option_names() {
    static const std::set<std::string> chain = {
        "n",  "amp",       "jitter", "jitter-seed", "stencil",   "mu0",
        "k-anis", "easy-axis", "field",  "lambda",      "overdamped"};
    static const std::set<std::string> scheme = {"scheme", "generator", "sigma", "exp",
                                                 "correction"};
    static const std::set<std::string> rb = {"inertia", "m0"};
    static std::map<std::string, std::set<std::string>> m;
    if (m.empty()) {
        auto add = [](std::set<std::string> base, const std::set<std::string>& extra) {
            base.insert(extra.begin(), extra.end());
            return base;
        };
        m["rigid-body table"] = {"preset", "family", "kind",        "dt",     "t-final",
                                 "ensemble", "seed", "trajectories", "stride", "out"};
        m["rigid-body separatrix"] = {"preset",  "inertia",  "branch", "phase", "dt",
                                      "t-final", "ensemble", "seed",   "out"};
        m["llg run"] = add(add({"preset", "dt", "t-final", "stride", "track-site",
                                "baseline", "baseline-dt", "out"},
                               chain),
                           scheme);
        m["convergence"] =
            add(add(add({"preset", "system", "dt", "t-final", "out"}, chain), scheme), rb);
        m["sigma-sweep"] = add(
            add(add({"preset", "system", "sigmas", "dt", "t-final", "out"}, chain), scheme),
            rb);
        m["norm-drift"] = add(add({"preset", "system", "scheme", "generator", "sigma", "dt",
                                   "t-final", "stride", "out"},
                                  chain),
                              rb);
    }
    return m;
}

std::map<std::string, Preset> load_all() {
    std::map<std::string, Preset> all;
    for (const auto& entry : fs::directory_iterator(PRESET_DIR)) {
        if (entry.path().extension() != ".cfg") continue;
        all[entry.path().stem().string()] = load(entry.path());
    }
    return all;
}

}  // namespace

TEST_CASE("every preset parses, names a real command, and uses its options") {
    const auto all = load_all();
    CHECK(all.size() == 22);
    for (const auto& [name, p] : all) {
        INFO("preset ", name);
        const auto cmd = option_names().find(p.command);
        REQUIRE(cmd != option_names().end());
        for (const auto& [k, v] : p.entries) {
            INFO("key ", k);
            CHECK(cmd->second.count(k) == 1);
            CHECK_FALSE(v.empty());
        }
        // one output directory per preset, named after it
        CHECK(p.get("out") == "out/" + name);
    }
}

TEST_CASE("rigid body table presets pin the frozen ensemble") {
    const auto all = load_all();
    for (const std::string name :
         {"rb-euler-ensemble-triaxial", "rb-euler-ensemble-axisym", "rb-heun-ensemble-triaxial",
          "rb-heun-ensemble-axisym", "rb-fourth-ensemble-triaxial",
          "rb-fourth-ensemble-axisym"}) {
        INFO("preset ", name);
        const Preset& p = all.at(name);
        CHECK(p.num("t-final") == ex::kTableTFinal);
        CHECK(p.num("ensemble") == ex::kTableEnsemble);
        CHECK(p.num("seed") == static_cast<double>(ex::kTableSeed));
        // the checked slopes and ratios live on the frozen step lists; the
        // fourth order family stops a decade earlier
        const std::vector<double> dts = p.list("dt");
        const std::vector<double> need = name.rfind("rb-fourth", 0) == 0
                                             ? std::vector<double>{1.0, 0.1}
                                             : ex::dts_table_higher();
        for (double dt : need) CHECK(std::count(dts.begin(), dts.end(), dt) == 1);
    }
    CHECK(all.at("rb-euler-ensemble-triaxial").list("dt") == ex::dts_table_euler());
}

TEST_CASE("separatrix preset pins the slow body") {
    const Preset p = load(fs::path(PRESET_DIR) / "rb-separatrix.cfg");
    const InertiaTensor body = ex::rb_separatrix_body();
    const std::vector<double> moments = p.list("inertia");
    REQUIRE(moments.size() == 3);
    CHECK(moments[0] == body.i1);
    CHECK(moments[1] == body.i2);
    CHECK(moments[2] == body.i3);
    CHECK(p.num("branch") == ex::kSeparatrixBranch);
    CHECK(p.num("phase") == ex::kSeparatrixPhase);
    CHECK(p.num("t-final") == ex::kSeparatrixTFinal);
    const std::vector<double> dts = p.list("dt");
    CHECK(std::count(dts.begin(), dts.end(), ex::kSeparatrixDt) == 1);
}

TEST_CASE("convergence and sweep presets pin the fitted windows") {
    const auto all = load_all();

    const Preset& sy4 = all.at("rb-sy4-convergence");
    CHECK(sy4.list("dt") == ex::dts_rb_convergence());
    CHECK(sy4.num("t-final") == ex::kRbConvergenceTFinal);
    const std::vector<double> moments = sy4.list("inertia");
    CHECK(moments[0] == ex::rb_reference_body().i1);

    const Preset& conv = all.at("llg-rkmk4-convergence");
    CHECK(conv.list("dt") == ex::dts_chain_fast());
    CHECK(conv.num("t-final") == ex::kConvergenceTFinal);
    CHECK(conv.num("amp") == ex::chain_smooth().profile_amp);

    for (const char* name : {"llg-heun-sweep", "llg-heun-sweep-orth"}) {
        const Preset& p = all.at(name);
        CHECK(p.list("dt") == ex::dts_sweep());
        CHECK(p.list("sigmas") == ex::sweep_sigmas());
        CHECK(p.num("t-final") == ex::kConvergenceTFinal);
        CHECK(p.num("amp") == ex::chain_smooth().profile_amp);
    }
    CHECK(all.at("llg-heun-sweep-orth").get("generator") == "orthogonal");
    CHECK(all.at("llg-rkmk4-sweep").list("sigmas") == ex::sweep_sigmas());
}

TEST_CASE("chain presets pin the frozen model parameters") {
    const auto all = load_all();

    // relaxation presets ride on the CLI defaults, which equal chain_relax()
    const Preset& relax = all.at("llg-relax");
    CHECK_FALSE(relax.has("amp"));
    CHECK_FALSE(relax.has("lambda"));
    CHECK_FALSE(relax.has("field"));
    CHECK(relax.num("dt") == ex::kGeoDt);
    CHECK(relax.num("baseline-dt") == ex::kBaselineDt);
    CHECK(relax.num("t-final") == ex::kRelaxTFinal);
    CHECK(all.at("llg-relax-shift10").get("sigma") == "const:10");

    const ex::ChainSpec weak = ex::chain_overdamped_weak();
    const Preset& ow = all.at("llg-overdamped-weak");
    CHECK(ow.has("overdamped"));
    CHECK(ow.num("lambda") == weak.lambda);
    CHECK(ow.list("field") == std::vector<double>{weak.h_app.x, weak.h_app.y, weak.h_app.z});
    CHECK(ow.num("t-final") == ex::kOverdampedWeakTFinal);
    CHECK(all.at("llg-overdamped-strong").num("t-final") == ex::kOverdampedStrongTFinal);

    const ex::ChainSpec rough = ex::chain_rough();
    const Preset& drift = all.at("llg-norm-drift-rk4");
    CHECK(drift.num("amp") == rough.profile_amp);
    CHECK(drift.num("jitter") == rough.jitter);
    CHECK(drift.num("jitter-seed") == static_cast<double>(rough.jitter_seed));
    CHECK(drift.num("stencil") == rough.stencil_factor);
    CHECK(drift.num("t-final") == ex::kDriftTFinal);

    const Preset& eul = all.at("llg-norm-drift-euler");
    CHECK(eul.list("dt") == std::vector<double>{ex::kGeoDt, ex::kBaselineDt});
    CHECK(eul.num("t-final") == ex::kRelaxTFinal);
}
