#pragma once

// Batch job runner behind the holonome command-line tool.

#include "holonome/cmatrix.hpp"
#include "holonome/json_io.hpp"
#include "holonome/transport.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace holonome {

/// Invalid job specification (exit code 2).
class JobError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct JobSpec {
  std::string task;
  std::string label;
  std::string algebra = "A1";
  std::string normalization;  // empty: "trace" for bmw, "basic" otherwise
  std::string rep = "vector";
  std::string connection = "kz";  // kz, casimir or ckz
  std::size_t n = 3;
  cplx h = 0.1;
  std::optional<cplx> q;
  std::optional<double> kappa;
  double tol = 1e-10;
  std::optional<double> check_tol;
  bool fixed_step = false;
  std::size_t fixed_steps = 400;
  unsigned workers = 1;
  std::optional<std::size_t> k;
  IntVec lambda, mu;
  std::size_t max_word_length = 3;
  std::vector<Word> word_list;
  bool perturb = false;
  std::string qweyl_normalization;  // empty: literal, except casimir for Casimir comparisons
  bool full_matrices = false;
  std::string output;
};

const std::vector<std::string>& task_names();

/// Throws JobError on unknown keys, wrong types or missing task-specific fields.
JobSpec job_from_json(const json& j);
json job_to_json(const JobSpec& job);
/// Task-specific validation; throws JobError.
void validate_job(const JobSpec& job);

struct JobOutcome {
  bool pass = false;
  json report;
};

/// Runs one job. Invalid input raises JobError; numerical breakdowns are reported as failures.
JobOutcome run_job(const JobSpec& job);

/// Jobs of the named suite ("paper-exact", "paper-numeric" or "all"); throws JobError otherwise.
std::vector<JobSpec> suite_jobs(const std::string& name);
/// Runs a suite with at most `workers` jobs in flight; reports keep the suite order.
JobOutcome run_suite(const std::string& name, unsigned workers = 1);

/// Usage text for a task; throws JobError for unknown tasks.
std::string describe(const std::string& task);

/// Parses JSON text; malformed input raises JobError naming the line and column.
json parse_json_text(const std::string& text);

}  // namespace holonome
