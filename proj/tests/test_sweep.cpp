#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "etsim/sweep.hpp"

using namespace etsim;

namespace {

std::string small_config() {
    return "solver = master\n"
           "pump = incoherent\n"
           "Gamma = 0.001\n"
           "Delta = 10\n"
           "kappa = 1\n"
           "sweep.Omega = 0.5,2.0,4,lin\n"
           "outputs = J,p_D\n"
           "out = small.csv\n";
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
    const SweepConfig c = parse_config("sweep.Omega = 0.1,1,3,lin\nGamma = 0.01\n");
    CHECK(c.solver == SolverKind::Master);
    CHECK(c.pump == PumpMode::Incoherent);
    CHECK(c.outputs == std::vector<std::string>{"J"});
    CHECK(c.per_pump);
    CHECK(c.n_cav == 1);
    CHECK(c.axes.size() == 1);
    CHECK(c.axes[0].values.size() == 3);
    CHECK(c.param("gamma", {}) == 1.0);
}

TEST_CASE("unknown keys are reported with their line") {
    try {
        parse_config("Delta = 1\ngammma = 2\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("gammma") != std::string::npos);
    }
}

TEST_CASE("axis grammar") {
    const SweepConfig lin = parse_config("sweep.Delta = 0,10,3,lin\nGamma=0.01\n");
    CHECK(lin.axes[0].values == std::vector<double>{0, 5, 10});

    const SweepConfig lst = parse_config("sweep.gamma_prime = 0;0.1;1;10\nGamma=0.01\n");
    CHECK(lst.axes[0].values == std::vector<double>{0, 0.1, 1, 10});

    CHECK_THROWS_AS(parse_config("sweep.Delta = 0,10,1,lin\n"), ParseError);
    CHECK_THROWS_AS(parse_config("sweep.Delta = 0,10,4,cubic\n"), ParseError);
    CHECK_THROWS_AS(parse_config("sweep.Delta = -1,10,4,log\n"), ParseError);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(parse_config("orientation = parallel\nOmega = 1\nsweep.d = 0.1,0.2,3,lin\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("d = 0.1\n"), ConfigError);  // d without orientation
    CHECK_THROWS_AS(parse_config("solver = moments\noutputs = C\n"), ConfigError);
}

TEST_CASE("geometry resolution feeds Omega and gamma_bar") {
    const SweepConfig c = parse_config(
        "orientation = perpendicular\n"
        "d = 0.1\n"
        "Gamma = 0.001\n"
        "outputs = J\n");
    const SystemSpec spec = resolve_point(c, {});
    CHECK(spec.Omega != 0.0);
    CHECK(spec.gamma_bar != 0.0);

    SweepConfig off = c;
    off.fixed["collective"] = 0.0;
    CHECK(resolve_point(off, {}).gamma_bar == 0.0);
    CHECK(resolve_point(off, {}).Omega == spec.Omega);
}

TEST_CASE("shipped preset files match the built-in table") {
    for (const auto& name : preset_names()) {
        const SweepConfig builtin = builtin_preset(name);
        std::ifstream in(std::string(ETSIM_PRESET_DIR) + "/" + name + ".cfg");
        REQUIRE_MESSAGE(in.good(), name.c_str());
        std::stringstream buf;
        buf << in.rdbuf();
        const SweepConfig parsed = parse_config(buf.str());
        CHECK_MESSAGE(parsed == builtin, ("preset file drifted: " + name).c_str());
    }
}

TEST_CASE("config text round-trips") {
    for (const auto& name : preset_names()) {
        const SweepConfig builtin = builtin_preset(name);
        CHECK(parse_config(to_config_text(builtin)) == builtin);
    }
}

TEST_CASE("sweep runs are deterministic and thread-count independent") {
    const SweepConfig cfg = parse_config(small_config());
    const SweepResult a = run_sweep(cfg, 1);
    const SweepResult b = run_sweep(cfg, 1);
    const SweepResult c = run_sweep(cfg, 3);
    CHECK(to_csv(a) == to_csv(b));
    CHECK(to_csv(a) == to_csv(c));
    CHECK(a.rows.size() == 4);
    CHECK(a.columns == std::vector<std::string>{"Omega", "J", "p_D", "status"});
}

TEST_CASE("row order is row-major over the axes") {
    SweepConfig cfg = parse_config(
        "solver = analytic\n"
        "Gamma = 0.001\n"
        "sweep.Delta = 0,1,2,lin\n"
        "sweep.Omega = 1,2,2,lin\n"
        "outputs = J\n");
    const SweepResult r = run_sweep(cfg, 1);
    REQUIRE(r.rows.size() == 4);
    CHECK(r.rows[0][0] == 0.0);  // Delta slow axis
    CHECK(r.rows[0][1] == 1.0);  // Omega fast axis
    CHECK(r.rows[1][0] == 0.0);
    CHECK(r.rows[1][1] == 2.0);
    CHECK(r.rows[2][0] == 1.0);
    CHECK(r.rows[3][1] == 2.0);
}

TEST_CASE("per-point solver failures land in the status column") {
    // the Dicke point gamma_bar = gamma with Gamma = 0 has a degenerate kernel
    SweepConfig cfg = parse_config(
        "solver = master\n"
        "pump = incoherent\n"
        "Gamma = 0\n"
        "Omega = 1\n"
        "kappa = 1\n"
        "sweep.gamma_bar = 0.5;1.0\n"
        "outputs = J\n");
    const SweepResult r = run_sweep(cfg, 1);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.status[0] == "ok");
    CHECK(r.status[1] != "ok");
    CHECK(std::isnan(r.rows[1][1]));
}

TEST_CASE("auto truncation doubling converges and reports the final cutoff") {
    SweepConfig cfg = parse_config(
        "solver = master\n"
        "pump = incoherent\n"
        "Gamma = 0.001\n"
        "Delta = 5\n"
        "g = 0.5\n"
        "kappa = 20\n"
        "delta = 2\n"
        "auto_ncav = on\n"
        "n_cav = 1\n"
        "sweep.Omega = 0.5,1.5,3,lin\n"
        "outputs = J,n\n");
    const SweepResult r = run_sweep(cfg, 1);
    CHECK(r.rows.size() == 3);
    // the bad-cavity point converges on the first doubling
    bool saw_ncav2 = false;
    for (const auto& m : r.meta) saw_ncav2 |= (m == "n_cav = 2");
    CHECK(saw_ncav2);
    for (const auto& st : r.status) CHECK(st == "ok");
}

TEST_CASE("csv shape: metadata, header, one line per row") {
    const SweepConfig cfg = parse_config(small_config());
    const std::string csv = to_csv(run_sweep(cfg, 1));
    std::istringstream in(csv);
    std::string line;
    int meta = 0, data = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            ++meta;
            CHECK(!header_seen);  // metadata precedes the header
        } else if (!header_seen) {
            header_seen = true;
            CHECK(line == "Omega,J,p_D,status");
        } else {
            ++data;
            CHECK(line.find("ok") != std::string::npos);
        }
    }
    CHECK(meta > 3);
    CHECK(data == 4);
}
