#include "holonome/cli.hpp"
#include "holonome/json_io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace holonome;

TEST_SUITE("json") {
  TEST_CASE("matrix and number round trips") {
    QMatrix m(2, 3);
    m(0, 1) = frac(-3, 4);
    m(1, 2) = 5;
    CHECK(qmatrix_from_json(to_json(m)) == m);
    CHECK(to_json(m)[0][1] == "-3/4");
    const cplx z(0.25, -1.5);
    CHECK(cplx_from_json(to_json(z)) == z);
    CHECK(cplx_from_json(json(2.0)) == cplx(2.0));
    CHECK_THROWS_AS(cplx_from_json(json("x")), std::invalid_argument);
    CHECK_THROWS_AS(qmatrix_from_json(json::parse("[[1, 2], [3]]")), std::invalid_argument);
  }

  TEST_CASE("representation round trip") {
    const Representation rep = build_rep(parse_root_system("B2"), parse_rep_kind("adjoint"));
    const Representation back = representation_from_json(json::parse(representation_to_json(rep).dump()));
    CHECK(back.dim == rep.dim);
    CHECK(back.weights == rep.weights);
    for (std::size_t a = 0; a < rep.e.size(); ++a) {
      CHECK(back.e[a] == rep.e[a]);
      CHECK(back.f[a] == rep.f[a]);
      CHECK(back.h[a] == rep.h[a]);
    }
    json broken = representation_to_json(rep);
    broken["e"].erase(0);
    CHECK_THROWS(representation_from_json(broken));
  }

  TEST_CASE("connection round trip keeps flatness") {
    const auto rep = build_rep(parse_root_system("A1"), parse_rep_kind("vector"));
    const auto conn = build_kz(rep, 3, cplx(0.1, 0.2));
    const auto back = connection_from_json(connection_to_json(conn));
    CHECK(back.exact_residues.size() == conn.exact_residues.size());
    CHECK(back.exact_residues[1] == conn.exact_residues[1]);
    CHECK(back.class_coupling.front() == conn.class_coupling.front());
    CHECK(kohno_flatness_check(back).pass);
  }

  TEST_CASE("representation cache") {
    const auto dir = std::filesystem::temp_directory_path() / "holonome_cache_test";
    std::filesystem::remove_all(dir);
    ::setenv("HOLONOME_CACHE", dir.c_str(), 1);
    const RootSystem rs = parse_root_system("A2");
    const Representation first = cached_build_rep(rs, parse_rep_kind("adjoint"));
    REQUIRE(std::filesystem::exists(dir));
    const auto file = std::filesystem::directory_iterator(dir)->path();
    const Representation second = cached_build_rep(rs, parse_rep_kind("adjoint"));
    CHECK(second.e[0] == first.e[0]);
    std::ofstream(file) << "{ not json";
    const Representation rebuilt = cached_build_rep(rs, parse_rep_kind("adjoint"));
    CHECK(rebuilt.e[0] == first.e[0]);
    ::unsetenv("HOLONOME_CACHE");
    std::filesystem::remove_all(dir);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("job parsing") {
    const JobSpec job = job_from_json(json::parse(R"({"task": "flatness", "algebra": "A2", "n": 4, "h": [0.1, 0.2]})"));
    CHECK(job.algebra == "A2");
    CHECK(job.h == cplx(0.1, 0.2));
    const JobSpec again = job_from_json(job_to_json(job));
    CHECK(job_to_json(again) == job_to_json(job));
    CHECK_THROWS_AS(job_from_json(json::parse(R"({"task": "flatness", "colour": 1})")), JobError);
    CHECK_THROWS_AS(job_from_json(json::parse(R"({"algebra": "A2"})")), JobError);
    CHECK_THROWS_AS(job_from_json(json::parse(R"({"task": "flatness", "n": "four"})")), JobError);
    CHECK_THROWS_AS(job_from_json(json::parse(R"({"task": "nope"})")), JobError);
    CHECK_THROWS_AS(job_from_json(json::parse(R"({"task": "flatness", "tol": -1})")), JobError);
  }

  TEST_CASE("word lists are 1-based") {
    const JobSpec job = job_from_json(json::parse(R"({"task": "kd-compare", "word_list": [[1, 2], [2]]})"));
    REQUIRE(job.word_list.size() == 2);
    CHECK(job.word_list[0] == Word{0, 1});
    CHECK_THROWS_AS(job_from_json(json::parse(R"({"task": "kd-compare", "word_list": [[0]]})")), JobError);
  }

  TEST_CASE("malformed JSON names the position") {
    try {
      parse_json_text("{\n  \"task\": ,\n}");
      FAIL("expected a JobError");
    } catch (const JobError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }

  TEST_CASE("flatness jobs pass and fail as expected") {
    JobSpec job;
    job.task = "flatness";
    job.algebra = "A2";
    job.rep = "adjoint";
    job.connection = "casimir";
    const JobOutcome ok = run_job(job);
    CHECK(ok.pass);
    CHECK(ok.report["schema"] == "1");
    CHECK(ok.report["task"] == "flatness");
    CHECK(!ok.report["checks"].empty());
    job.perturb = true;
    CHECK_FALSE(run_job(job).pass);
  }

  TEST_CASE("numeric jobs report their tolerances") {
    JobSpec job;
    job.task = "hecke";
    job.algebra = "A2";
    job.n = 3;
    job.h = 0.1;
    const JobOutcome out = run_job(job);
    CHECK(out.pass);
    for (const auto& c : out.report["checks"])
      if (c.contains("value")) CHECK(c["value"].get<double>() <= c["tol"].get<double>());
  }

  TEST_CASE("fixed-step reports are reproducible") {
    JobSpec job;
    job.task = "monodromy";
    job.algebra = "A1";
    job.n = 3;
    job.fixed_step = true;
    job.tol = 1e-6;
    CHECK(run_job(job).report.dump() == run_job(job).report.dump());
  }

  TEST_CASE("suites and help") {
    CHECK(!suite_jobs("paper-exact").empty());
    CHECK(suite_jobs("all").size() == suite_jobs("paper-exact").size() + suite_jobs("paper-numeric").size());
    CHECK_THROWS_AS(suite_jobs("nope"), JobError);
    CHECK_THROWS_AS(describe("nope"), JobError);
    for (const auto& t : task_names()) CHECK(!describe(t).empty());
    const JobOutcome suite = run_suite("paper-exact", 2);
    CHECK(suite.pass);
    CHECK(suite.report["jobs"].size() == suite_jobs("paper-exact").size());
  }
}
