#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ifem/config.hpp"

using namespace ifem;

namespace {

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << body;
}

}  // namespace

TEST_CASE("mesh size lists parse and reject junk") {
  CHECK(parse_mesh_sizes("32") == std::vector<int>{32});
  CHECK(parse_mesh_sizes("32,64,128") == (std::vector<int>{32, 64, 128}));
  CHECK_THROWS_AS((void)parse_mesh_sizes("32,abc"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_mesh_sizes(""), std::invalid_argument);
}

TEST_CASE("defaults validate and each knob is range-checked") {
  RunConfig cfg;
  CHECK_NOTHROW(validate_config(cfg));

  auto broken = [] { return RunConfig{}; };
  {
    RunConfig c = broken();
    c.case_id = 3;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  }
  {
    RunConfig c = broken();
    c.constrained = 2;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  }
  {
    RunConfig c = broken();
    c.alpha = 0.0;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  }
  {
    RunConfig c = broken();
    c.beta_minus = -1.0;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  }
  {
    RunConfig c = broken();
    c.ns = {32, 4};  // below the supported resolution floor
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  }
  {
    RunConfig c = broken();
    c.ns.clear();
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  }
  {
    RunConfig c = broken();
    c.solver = "umfpack";
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  }
  {
    RunConfig c = broken();
    c.tolerance = 0.0;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  }
  {
    RunConfig c = broken();
    c.enrichment = "maybe";
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  }
  {
    RunConfig c = broken();
    c.mode = "newton";
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  }
  {
    RunConfig c = broken();
    c.variant = "standard";  // only conforming | nonconforming exist
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  }
  {
    RunConfig c = broken();
    c.timings = "fast";
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  }
  {
    RunConfig c = broken();
    c.jobs = 0;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  }
}

TEST_CASE("config files override fields, tolerate comments, reject bad input") {
  const std::string path = "config_test.cfg";
  write_file(path,
             "# study setup\n"
             "case = 2\n"
             "constrained=1\n"
             "alpha = 0.5   # inline comment\n"
             "beta-plus = 7\n"
             "beta-minus = 0.25\n"
             "n = 16,32\n"
             "\n"
             "solver = direct\n"
             "tol = 1e-10\n"
             "enrichment = off\n"
             "mode = variational\n"
             "variant = nonconforming\n"
             "timings = off\n"
             "jobs = 2\n"
             "out = study.csv\n");
  RunConfig cfg;
  apply_config_file(path, cfg);
  CHECK(cfg.case_id == 2);
  CHECK(cfg.constrained == 1);
  CHECK(cfg.alpha == 0.5);
  CHECK(cfg.beta_plus == 7.0);
  CHECK(cfg.beta_minus == 0.25);
  CHECK(cfg.ns == (std::vector<int>{16, 32}));
  CHECK(cfg.solver == "direct");
  CHECK(cfg.tolerance == 1e-10);
  CHECK(cfg.enrichment == "off");
  CHECK(cfg.mode == "variational");
  CHECK(cfg.variant == "nonconforming");
  CHECK(cfg.timings == "off");
  CHECK(cfg.jobs == 2);
  CHECK(cfg.out_study == "study.csv");
  CHECK_NOTHROW(validate_config(cfg));

  write_file(path, "case 2\n");
  RunConfig c1;
  CHECK_THROWS_AS(apply_config_file(path, c1), std::invalid_argument);

  write_file(path, "granularity = 3\n");
  RunConfig c2;
  CHECK_THROWS_AS(apply_config_file(path, c2), std::invalid_argument);

  write_file(path, "alpha = two\n");
  RunConfig c3;
  CHECK_THROWS_AS(apply_config_file(path, c3), std::invalid_argument);

  RunConfig c4;
  CHECK_THROWS_AS(apply_config_file("no_such_file.cfg", c4), std::invalid_argument);
  std::remove(path.c_str());
}
