#pragma once

// Benchmark runners behind the CLI subcommands. Each validates its whole
// configuration before computing and returns a CSV report.

#include <string>
#include <vector>

#include "common.hpp"

namespace varkernel {

struct CsvReport {
  std::vector<std::string> comments;  // written as "# " lines
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
};

/// 17 significant digits, locale independent.
std::string format_double(double v);
/// Shortest text that reads back to the same double (used when echoing flags).
std::string format_shortest(double v);

struct HilbertConfig {
  std::string variety;
  int n_max = 5;
  std::string verify = "none";  // none | monomials | rank | both
  std::uint64_t seed = 0;
};

struct ApproxConfig {
  std::string variety;
  std::string kernel = "gaussian:sigma=1";
  double eps = 1e-6;
  std::string method = "cheb";  // taylor | cheb | nystrom
  int rank = 0;                 // required for nystrom; caps the degree for taylor
  std::size_t audit_pairs = 100'000;
  double jitter = 1e-10;
  std::uint64_t seed = 0;
};

struct RffBenchConfig {
  std::string variety;
  std::string kernel = "gaussian:sigma=1";
  std::vector<int> ranks{64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384};
  std::size_t pairs = 100'000;
  double eps = 0.1;
  std::uint64_t seed = 0;
};

struct FeketeConfig {
  std::string variety;
  int n = 2;
  int a = 1;
  int trials = 200;
  int candidates = 0;  // 0 selects 10 * hf(a n)
  int sup_sample = 20'000;
  std::uint64_t seed = 0;
};

struct Fig1Config {
  int d = 20;
  int k = 1;
  double sigma = 1.0;
  double jitter = 1e-10;
  int runs = 50;
  std::size_t pairs = 100'000;
  int n_max = 3;
  std::uint64_t seed = 0;
};

struct Fig2Config {
  std::vector<int> k_list{1, 2, 4};
  std::vector<int> d_list{32, 64, 128};
  std::vector<int> ranks{64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384};
  std::size_t pairs = 100'000;
  double eps = 0.1;
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

struct Fig3Config {
  int n_max = 8;
};

/// Validation only; throws InputError on the first problem.
void validate(const HilbertConfig& c);
void validate(const ApproxConfig& c);
void validate(const RffBenchConfig& c);
void validate(const FeketeConfig& c);
void validate(const Fig1Config& c);
void validate(const Fig2Config& c);
void validate(const Fig3Config& c);

CsvReport cmd_hilbert(const HilbertConfig& c);
CsvReport cmd_approx(const ApproxConfig& c);
CsvReport cmd_rff_bench(const RffBenchConfig& c);
CsvReport cmd_fekete(const FeketeConfig& c);
CsvReport cmd_fig1(const Fig1Config& c);
CsvReport cmd_fig2(const Fig2Config& c);
CsvReport cmd_fig3(const Fig3Config& c);

}  // namespace varkernel
