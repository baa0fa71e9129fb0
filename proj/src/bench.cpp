#include "bench.hpp"

#include <chrono>
#include <charconv>
#include <cmath>
#include <sstream>

#include "hilbert.hpp"
#include "kernels.hpp"
#include "lowrank.hpp"
#include "norming.hpp"
#include "rff.hpp"
#include "varieties.hpp"

namespace varkernel {

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

CsvReport make_report(const std::string& command, const std::string& flags, std::vector<std::string> columns) {
  CsvReport r;
  r.comments.push_back(std::string("varkernel ") + kVersion);
  r.comments.push_back("command: " + command + flags);
  r.columns = std::move(columns);
  return r;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

std::string param_or_empty(const VarietySpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? std::string() : std::to_string(it->second);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_shortest(double v) {
  if (!std::isfinite(v)) return format_double(v);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string CsvReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_cell(columns[i]);
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  return os.str();
}

void validate(const HilbertConfig& c) {
  parse_variety(c.variety);
  require(c.n_max >= 0, "--n-max must be >= 0");
  require(c.verify == "none" || c.verify == "monomials" || c.verify == "rank" || c.verify == "both",
          "--verify must be one of none, monomials, rank, both");
}

void validate(const ApproxConfig& c) {
  const VarietySpec spec = parse_variety(c.variety);
  const IsotropicKernel k = parse_kernel(c.kernel, spec.ambient_dim);
  require(c.eps > 0.0 && std::isfinite(c.eps), "--eps must be > 0");
  require(c.method == "taylor" || c.method == "cheb" || c.method == "nystrom",
          "--method must be one of taylor, cheb, nystrom");
  require(c.rank >= 0, "--rank must be >= 0");
  require(c.method != "nystrom" || c.rank >= 1, "--method nystrom requires --rank >= 1");
  require(c.method != "taylor" || k.family == KernelFamily::gaussian, "--method taylor requires a gaussian kernel");
  require(c.jitter >= 0.0, "--jitter must be >= 0");
}

void validate(const RffBenchConfig& c) {
  const VarietySpec spec = parse_variety(c.variety);
  const IsotropicKernel k = parse_kernel(c.kernel, spec.ambient_dim);
  require(k.has_spectral_sampler(), "rff-bench requires a kernel with a spectral sampler (gaussian)");
  require(!c.ranks.empty(), "--ranks must not be empty");
  for (int r : c.ranks) require(r >= 1 && r <= (1 << 20), "--ranks entries must be in [1, 2^20]");
  require(c.pairs >= 1 && c.pairs <= 1'000'000, "--pairs must be in [1, 1e6]");
  require(c.eps > 0.0 && std::isfinite(c.eps), "--eps must be > 0");
}

void validate(const FeketeConfig& c) {
  const VarietySpec spec = parse_variety(c.variety);
  require(c.n >= 0, "--n must be >= 0");
  require(c.a >= 1, "--a must be >= 1");
  require(c.trials >= 100, "--trials must be >= 100");
  require(c.sup_sample >= 1, "--sup-sample must be >= 1");
  require(c.candidates >= 0, "--candidates must be >= 0");
  const BigInt m = spec.hf_closed_form(c.a * c.n);
  if (m > 20000) throw CapabilityError("fekete: hf(a n) = " + varkernel::to_string(m) + " exceeds the dense limit 20000");
  require(c.candidates == 0 || c.candidates >= 10 * m, "--candidates must be >= 10 * hf(a n)");
}

void validate(const Fig1Config& c) {
  builtin("sparse", {{"d", c.d}, {"k", c.k}});
  require(c.sigma > 0.0, "--sigma must be > 0");
  require(c.jitter >= 0.0, "--jitter must be >= 0");
  require(c.runs >= 1, "--runs must be >= 1");
  require(c.pairs >= 1, "--pairs must be >= 1");
  require(c.n_max >= 0 && c.n_max <= 8, "--n-max must be in [0, 8]");
}

void validate(const Fig2Config& c) {
  require(!c.k_list.empty() && !c.d_list.empty() && !c.ranks.empty(), "fig2 grids must not be empty");
  for (int d : c.d_list)
    for (int k : c.k_list) builtin("sparse", {{"d", d}, {"k", k}});
  for (int r : c.ranks) require(r >= 1 && r <= (1 << 20), "--ranks entries must be in [1, 2^20]");
  require(c.pairs >= 1 && c.pairs <= 1'000'000, "--pairs must be in [1, 1e6]");
  require(c.eps > 0.0, "--eps must be > 0");
  require(c.sigma > 0.0, "--sigma must be > 0");
}

void validate(const Fig3Config& c) { require(c.n_max >= 0 && c.n_max <= 64, "--n-max must be in [0, 64]"); }

CsvReport cmd_hilbert(const HilbertConfig& c) {
  validate(c);
  const VarietySpec spec = parse_variety(c.variety);
  std::ostringstream flags;
  flags << " --variety " << spec.name << " --n-max " << c.n_max << " --verify " << c.verify << " --seed " << c.seed;
  CsvReport r = make_report("hilbert", flags.str(),
                            {"variety", "n", "hf_closed", "hf_monomials", "hf_rank", "ambient_bound", "degree_bound"});
  if (c.verify != "none" && c.verify != "rank" && !spec.lt_generators)
    r.comments.push_back("hf_monomials is empty: no leading-term ideal is built in for " + spec.name);
  const bool count = (c.verify == "monomials" || c.verify == "both") && spec.lt_generators;
  const bool rank = c.verify == "rank" || c.verify == "both";
  for (int n = 0; n <= c.n_max; ++n) {
    std::vector<std::string> row{spec.name, std::to_string(n), varkernel::to_string(hf(spec, n).value)};
    row.push_back(count ? varkernel::to_string(count_standard_monomials(*spec.lt_generators, spec.ambient_dim, n)) : "");
    row.push_back(rank ? varkernel::to_string(hf_via_rank(spec, n, 4, derive_seed(c.seed, n)).value) : "");
    const auto bounds = ambient_bound(spec.ambient_dim, std::max(spec.intrinsic_dim, 1), spec.degree, n);
    row.push_back(varkernel::to_string(bounds.second));
    row.push_back(varkernel::to_string(bounds.first));
    r.rows.push_back(std::move(row));
  }
  return r;
}

CsvReport cmd_approx(const ApproxConfig& c) {
  validate(c);
  const VarietySpec spec = parse_variety(c.variety);
  const IsotropicKernel kernel = parse_kernel(c.kernel, spec.ambient_dim);
  std::ostringstream flags;
  flags << " --variety " << spec.name << " --kernel " << c.kernel << " --eps " << format_shortest(c.eps) << " --method "
        << c.method << " --rank " << c.rank << " --audit-pairs " << c.audit_pairs << " --jitter "
        << format_double(c.jitter) << " --seed " << c.seed;
  CsvReport r = make_report("approx", flags.str(),
                            {"method", "rank", "measured_sup_error", "certified_eps", "build_time"});
  r.comments.push_back("build_time is wall-clock seconds and varies between runs");
  const AuditOptions audit{c.audit_pairs, derive_seed(c.seed, 1000)};

  const auto start = std::chrono::steady_clock::now();
  LowRankFactorization f;
  std::string certified;
  if (c.method == "cheb") {
    ApproximationResult res = approximate_on_variety(kernel, spec, c.eps, c.seed, AuditOptions{0, audit.seed});
    f = std::move(res.factorization);
    certified = format_double(res.fit.sup_error);
  } else if (c.method == "taylor") {
    int n = 0;
    if (c.rank > 0) {
      if (spec.hf_closed_form(0) > c.rank) throw InputError("--rank is below hf(0)");
      while (n < 200 && spec.hf_closed_form(n + 1) <= c.rank) ++n;
    } else {
      while (n < 200 && taylor_sup_error_bound(n, kernel.sigma) > c.eps) ++n;
    }
    f = taylor_on_variety(spec, n, kernel.sigma, c.seed);
    certified = format_double(taylor_sup_error_bound(n, kernel.sigma));
  } else {
    f = nystrom(kernel, spec.sample(c.rank, derive_seed(c.seed, 1)), c.jitter);
  }
  const double build = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double measured = audit_sup_error(f, kernel, spec, audit);
  r.rows.push_back({c.method, std::to_string(f.rank), format_double(measured), certified, format_double(build)});
  return r;
}

CsvReport cmd_rff_bench(const RffBenchConfig& c) {
  validate(c);
  const VarietySpec spec = parse_variety(c.variety);
  const IsotropicKernel kernel = parse_kernel(c.kernel, spec.ambient_dim);
  std::ostringstream flags;
  flags << " --variety " << spec.name << " --kernel " << c.kernel << " --ranks " << join_ints(c.ranks) << " --pairs "
        << c.pairs << " --eps " << format_shortest(c.eps) << " --seed " << c.seed;
  CsvReport r = make_report("rff-bench", flags.str(), {"variety", "d", "k", "rank", "max_err", "q25", "q50", "q75"});
  for (const auto& row : sup_error_profile(kernel, spec, c.ranks, c.pairs, c.eps, c.seed)) {
    r.rows.push_back({spec.name, std::to_string(spec.ambient_dim), param_or_empty(spec, "k"), std::to_string(row.rank),
                      format_double(row.max_err), format_double(row.q25), format_double(row.q50),
                      format_double(row.q75)});
  }
  return r;
}

CsvReport cmd_fekete(const FeketeConfig& c) {
  validate(c);
  const VarietySpec spec = parse_variety(c.variety);
  const int m = static_cast<int>(to_int64(spec.hf_closed_form(c.a * c.n), "HF"));
  const int candidates = c.candidates > 0 ? c.candidates : std::max(10 * m, 64);
  std::ostringstream flags;
  flags << " --variety " << spec.name << " --n " << c.n << " --a " << c.a << " --trials " << c.trials
        << " --candidates " << candidates << " --sup-sample " << c.sup_sample << " --seed " << c.seed;
  CsvReport r = make_report("fekete", flags.str(),
                            {"variety", "n", "a", "set_size", "certified_slack", "empirical_slack"});
  const NormingSet ns = norming_set(spec, c.n, c.a, candidates, c.seed);
  const SlackAudit audit = audit_slack(ns, spec, c.n, c.trials, c.sup_sample, derive_seed(c.seed, 1));
  r.rows.push_back({spec.name, std::to_string(c.n), std::to_string(c.a), std::to_string(ns.size),
                    format_double(ns.certified_slack), format_double(audit.empirical)});
  return r;
}

CsvReport cmd_fig1(const Fig1Config& c) {
  validate(c);
  const VarietySpec spec = builtin("sparse", {{"d", c.d}, {"k", c.k}});
  const IsotropicKernel kernel = gaussian(c.sigma, c.d);
  std::ostringstream flags;
  flags << " --d " << c.d << " --k " << c.k << " --sigma " << format_shortest(c.sigma) << " --jitter "
        << format_double(c.jitter) << " --runs " << c.runs << " --pairs " << c.pairs << " --n-max " << c.n_max
        << " --seed " << c.seed;
  CsvReport r = make_report("fig1", flags.str(),
                            {"n", "rank", "taylor_sup_err", "taylor_certificate", "nystrom_mean_sup_err", "ratio"});
  r.comments.push_back("sup errors are maxima over sampled pairs (underestimates of the true sup)");
  for (int n = 0; n <= c.n_max; ++n) {
    const LowRankFactorization t = taylor_on_variety(spec, n, c.sigma, derive_seed(c.seed, 10 + n));
    const double terr = audit_sup_error(t, kernel, spec, {c.pairs, derive_seed(c.seed, 1000 + n)});
    double total = 0.0;
    for (int run = 0; run < c.runs; ++run) {
      const std::uint64_t s = derive_seed(c.seed, 100000 + 1000 * n + run);
      const LowRankFactorization ny = nystrom(kernel, spec.sample(t.rank, derive_seed(s, 0)), c.jitter);
      total += audit_sup_error(ny, kernel, spec, {c.pairs, derive_seed(s, 1)});
    }
    const double nerr = total / c.runs;
    r.rows.push_back({std::to_string(n), std::to_string(t.rank), format_double(terr),
                      format_double(t.certificate.certified), format_double(nerr), format_double(nerr / terr)});
  }
  return r;
}

CsvReport cmd_fig2(const Fig2Config& c) {
  validate(c);
  std::ostringstream flags;
  flags << " --k-list " << join_ints(c.k_list) << " --d-list " << join_ints(c.d_list) << " --ranks "
        << join_ints(c.ranks) << " --pairs " << c.pairs << " --eps " << format_shortest(c.eps) << " --sigma "
        << format_double(c.sigma) << " --seed " << c.seed;
  CsvReport r = make_report("fig2", flags.str(), {"variety", "d", "k", "rank", "max_err", "q25", "q50", "q75"});
  std::uint64_t stream = 0;
  for (int k : c.k_list) {
    for (int d : c.d_list) {
      const VarietySpec spec = builtin("sparse", {{"d", d}, {"k", k}});
      const IsotropicKernel kernel = gaussian(c.sigma, d);
      for (const auto& row : sup_error_profile(kernel, spec, c.ranks, c.pairs, c.eps, derive_seed(c.seed, stream++))) {
        r.rows.push_back({spec.name, std::to_string(d), std::to_string(k), std::to_string(row.rank),
                          format_double(row.max_err), format_double(row.q25), format_double(row.q50),
                          format_double(row.q75)});
      }
    }
  }
  return r;
}

CsvReport cmd_fig3(const Fig3Config& c) {
  validate(c);
  CsvReport r = make_report("fig3", " --n-max " + std::to_string(c.n_max), {"variety", "n", "hf", "ambient"});
  for (const VarietySpec& spec : {builtin("trig", {{"d", 100}}), builtin("so3", {})}) {
    for (int n = 0; n <= c.n_max; ++n) {
      r.rows.push_back({spec.name, std::to_string(n), varkernel::to_string(hf(spec, n).value),
                        varkernel::to_string(binomial(n + spec.ambient_dim, spec.ambient_dim))});
    }
  }
  return r;
}

}  // namespace varkernel
