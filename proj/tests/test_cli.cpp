#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// end-to-end checks of the installed command line; the binary path arrives
// via the PATCHNOISE_CLI environment variable

namespace {

std::string cli() {
    const char* p = std::getenv("PATCHNOISE_CLI");
    REQUIRE(p != nullptr);
    return p;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args) {
    const std::string out_path = "cli_test_stdout.txt";
    const std::string err_path = "cli_test_stderr.txt";
    const std::string cmd = cli() + " " + args + " >" + out_path + " 2>" + err_path;
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (rc >= 256) ? rc / 256 : rc; // WEXITSTATUS without the macro fuss
    auto slurp = [](const std::string& p) {
        std::ifstream is(p);
        std::ostringstream os;
        os << is.rdbuf();
        return os.str();
    };
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

} // namespace

TEST_CASE("point: machine-readable single line") {
    auto r = run("point --geometry sphere --mode r --patch pp --D 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("sphere,r,pp,closed,1,0.0501043339,", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);

    r = run("point --geometry hole --mode z --patch ip --D 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "hole,z,ip,closed,2,0.0625,2\n");
}

TEST_CASE("point: vanishing factor reports a numerical failure") {
    const auto r = run("point --geometry plane --mode z --patch ip --D 1");
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("log of zero") != std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
    CHECK(run("point --geometry klein-bottle --mode z --patch pp --D 1").exit_code == 2);
    CHECK(run("point --geometry sphere --mode z --patch pp --D 1").exit_code == 2); // wrong label
    CHECK(run("sweep --preset fig99").exit_code == 2);
    CHECK(run("point --geometry prolate:0.5 --mode xi --patch pp --D 1").exit_code == 2);
    CHECK(run("--not-a-command").exit_code == 2);
}

TEST_CASE("sweep: csv schema and optional svg") {
    const std::string cfg = "cli_test_cfg.json";
    {
        std::ofstream os(cfg);
        os << R"({"geometry":"sphere","mode":"r","patches":["ip","pp"],
                 "grid":{"min":0.5,"max":2.0,"points":3}})";
    }
    auto r = run("sweep --config " + cfg + " --svg cli_test_plot.svg");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "geometry,mode,patch,backend,D,lambda,alpha");
    int rows = 0;
    bool saw_pp = false;
    while (std::getline(is, line)) {
        ++rows;
        if (line.rfind("sphere,r,pp,closed,", 0) == 0) saw_pp = true;
    }
    CHECK(rows == 6);
    CHECK(saw_pp);

    std::ifstream svg("cli_test_plot.svg");
    REQUIRE(svg.good());
    std::ostringstream os;
    os << svg.rdbuf();
    CHECK(os.str().find("<svg") != std::string::npos);
    CHECK(os.str().find("polyline") != std::string::npos);
    CHECK(os.str().find("stroke-dasharray=\"8,4\"") != std::string::npos); // alpha = 4 reference
    svg.close();
    std::remove("cli_test_plot.svg");
    std::remove(cfg.c_str());
}

TEST_CASE("validate subcommand") {
    auto r = run("validate --subset noise");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS noise-layer") != std::string::npos);
    CHECK(r.out.find("all checks passed") != std::string::npos);
}

TEST_CASE("flag overrides beat preset values") {
    // fig11 preset pins delta = 0.1; the flag must win
    auto r = run("point --preset fig11 --mode xi --patch pp --D 1 --delta 0.2 --lmax 64");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("oblate,xi,pp,spectral,1,", 0) == 0);
}
