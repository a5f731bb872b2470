// Command-line front end: generate synthetic low-rank matrices, factor them
// hierarchically, benchmark against a full decomposition, and compare the
// two pipelines on a single configuration.

#include <charconv>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hsvd/bench.hpp"
#include "hsvd/dense_matrix.hpp"
#include "hsvd/generate.hpp"
#include "hsvd/hierarchy.hpp"
#include "hsvd/kernels.hpp"
#include "hsvd/matrix_io.hpp"
#include "hsvd/refine.hpp"
#include "hsvd/svd_factor.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct PrintOptions {
  bool precise = false;  // 17 significant digits when set

  std::string num(double v) const {
    char buf[40];
    std::snprintf(buf, sizeof(buf), precise ? "%.17g" : "%.6g", v);
    return buf;
  }
};

hsvd::SpectrumSpec parse_decay(const std::string& decay) {
  hsvd::SpectrumSpec spec;
  const auto colon = decay.find(':');
  const std::string kind = decay.substr(0, colon);
  double value = 0.0;
  if (colon != std::string::npos) {
    const std::string rest = decay.substr(colon + 1);
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (ec != std::errc{} || ptr != rest.data() + rest.size())
      throw CLI::ValidationError("--decay", "malformed parameter in '" + decay + "'");
  }
  if (kind == "exp") {
    spec.kind = hsvd::SpectrumSpec::Kind::Exponential;
    spec.ratio = colon == std::string::npos ? 0.5 : value;
  } else if (kind == "pow") {
    spec.kind = hsvd::SpectrumSpec::Kind::PowerLaw;
    spec.exponent = colon == std::string::npos ? 1.0 : value;
  } else {
    throw CLI::ValidationError("--decay", "expected exp:RATIO or pow:EXPONENT, got '" + decay + "'");
  }
  return spec;
}

std::vector<hsvd::GridPoint> parse_grid(const std::string& grid_text) {
  if (grid_text.empty()) throw CLI::ValidationError("--grid", "grid is empty");
  std::vector<hsvd::GridPoint> grid;
  std::size_t pos = 0;
  while (pos < grid_text.size()) {
    auto comma = grid_text.find(',', pos);
    if (comma == std::string::npos) comma = grid_text.size();
    const std::string item = grid_text.substr(pos, comma - pos);
    const auto x = item.find('x');
    long d = 0, c = 0;
    bool ok = x != std::string::npos;
    if (ok) {
      const auto r1 = std::from_chars(item.data(), item.data() + x, d);
      const auto r2 = std::from_chars(item.data() + x + 1, item.data() + item.size(), c);
      ok = r1.ec == std::errc{} && r1.ptr == item.data() + x &&
           r2.ec == std::errc{} && r2.ptr == item.data() + item.size() &&
           d > 0 && c > 0;
    }
    if (!ok)
      throw CLI::ValidationError("--grid", "expected d1xc1,d2xc2,... got '" + item + "'");
    grid.push_back({static_cast<hsvd::Index>(d), static_cast<hsvd::Index>(c)});
    pos = comma + 1;
  }
  return grid;
}

hsvd::DenseMatrix load_input(const std::string& path, const std::string& format) {
  const hsvd::MatrixFormat fmt = format.empty() ? hsvd::format_for_path(path)
                                                : hsvd::format_from_name(format);
  return hsvd::load_matrix(path, fmt);
}

void print_sigma_row(const std::string& label, const hsvd::Vector& sigma,
                     const PrintOptions& po) {
  std::cout << label;
  const hsvd::Index n = std::min<hsvd::Index>(sigma.size(), 10);
  for (hsvd::Index i = 0; i < n; ++i) std::cout << ' ' << po.num(sigma(i));
  std::cout << '\n';
}

int run_gen(long rows, long cols, long rank, const std::string& decay,
            double noise_floor, std::uint64_t seed, const std::string& out,
            const std::string& format) {
  hsvd::SpectrumSpec spec = parse_decay(decay);
  spec.rank = rank;
  spec.noise_floor = noise_floor;
  spec.seed = seed;
  const hsvd::GeneratedMatrix gen = hsvd::gen_low_rank(rows, cols, spec);
  const hsvd::MatrixFormat fmt = format.empty() ? hsvd::format_for_path(out)
                                                : hsvd::format_from_name(format);
  hsvd::save_matrix(gen.x, out, fmt);
  std::cout << "wrote " << rows << "x" << cols << " matrix (rank " << rank
            << ") to " << out << '\n';
  return kExitOk;
}

int run_svd(const std::string& input, const std::string& format, double gamma,
            long row_block, long col_block, bool refine, double eps,
            int max_iters, const std::string& out_prefix, const PrintOptions& po) {
  const hsvd::DenseMatrix x = load_input(input, format);

  hsvd::MatConfig cfg;
  cfg.gamma = gamma;
  cfg.row_block_rows = row_block;
  cfg.col_block_cols = col_block;
  cfg.epsilon = eps;
  cfg.max_iters = max_iters;

  hsvd::SvdFactor right = hsvd::hierarchical_svd(x, cfg);
  hsvd::SvdFactor factor;
  if (refine) {
    const hsvd::RefineResult res =
        hsvd::refine_factors(x, *right.v, right.sigma, eps, max_iters);
    factor = res.factor;
    std::cout << "refined in " << res.iterations << " iteration(s), final error "
              << po.num(res.final_error)
              << (res.converged ? "" : " (not converged)") << '\n';
  } else {
    factor = hsvd::recover_left_vectors(x, *right.v);
  }
  hsvd::normalize_signs(factor);

  std::cout << "rank " << factor.rank() << '\n';
  print_sigma_row("sigma:", factor.sigma, po);

  if (!out_prefix.empty()) {
    const hsvd::DenseMatrix sigma_col = factor.sigma;
    hsvd::save_matrix(*factor.u, out_prefix + "_U.hsvd", hsvd::MatrixFormat::Hsvd1);
    hsvd::save_matrix(sigma_col, out_prefix + "_S.hsvd", hsvd::MatrixFormat::Hsvd1);
    hsvd::save_matrix(*factor.v, out_prefix + "_V.hsvd", hsvd::MatrixFormat::Hsvd1);
    hsvd::save_matrix(sigma_col, out_prefix + "_sigma.csv", hsvd::MatrixFormat::Csv);
    std::cout << "wrote " << out_prefix << "_{U,S,V}.hsvd and "
              << out_prefix << "_sigma.csv\n";
  }
  return kExitOk;
}

int run_bench(const std::string& input, const std::string& format, double gamma,
              const std::string& grid_text, int repeats, bool refine,
              double eps, int max_iters, const std::string& json_path,
              const PrintOptions& po) {
  const std::vector<hsvd::GridPoint> grid = parse_grid(grid_text);
  const hsvd::DenseMatrix x = load_input(input, format);

  hsvd::MatConfig cfg;
  cfg.gamma = gamma;
  cfg.epsilon = eps;
  cfg.max_iters = max_iters;

  const hsvd::BenchReport report = hsvd::run_benchmark(x, cfg, grid, repeats, refine);

  for (const hsvd::BenchEntry& e : report.entries) {
    std::cout << e.block_rows << "x" << e.block_cols << ": ";
    if (!e.error.empty()) {
      std::cout << "error: " << e.error << '\n';
      continue;
    }
    std::cout << "rank " << e.recovered_rank << ", rel_error " << po.num(e.rel_error)
              << ", speedup " << po.num(e.speedup);
    if (e.speedup_refined)
      std::cout << ", refined rel_error " << po.num(*e.rel_error_refined)
                << ", refined speedup " << po.num(*e.speedup_refined);
    std::cout << '\n';
  }

  if (!json_path.empty()) {
    const std::string text = hsvd::report_to_json(report);
    const std::vector<std::string> violations = hsvd::validate_report_json(text);
    if (!violations.empty())
      throw std::runtime_error("report failed schema validation: " + violations.front());
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw hsvd::IoError("cannot open for writing: " + json_path);
    out << text;
    std::cout << "wrote report to " << json_path << '\n';
  }
  return kExitOk;
}

int run_compare(const std::string& input, const std::string& format, double gamma,
                long d, long c, const PrintOptions& po) {
  const hsvd::DenseMatrix x = load_input(input, format);

  hsvd::MatConfig cfg;
  cfg.gamma = gamma;
  cfg.row_block_rows = d;
  cfg.col_block_cols = c;

  std::vector<hsvd::GridPoint> grid{{cfg.row_block_rows, cfg.col_block_cols}};
  const hsvd::BenchReport report = hsvd::run_benchmark(x, cfg, grid, 1, false);
  const hsvd::BenchEntry& e = report.entries.front();
  if (!e.error.empty()) throw std::runtime_error(e.error);

  const hsvd::SvdFactor full = hsvd::full_svd(x);
  std::cout << "rank " << e.recovered_rank << '\n'
            << "rel_error " << po.num(e.rel_error) << '\n'
            << "speedup " << po.num(e.speedup) << '\n';
  print_sigma_row("sigma (hierarchical):",
                  Eigen::Map<const hsvd::Vector>(e.sigma_head.data(),
                                                 static_cast<hsvd::Index>(e.sigma_head.size())),
                  po);
  print_sigma_row("sigma (full):", full.sigma, po);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical truncated SVD toolkit"};
  app.require_subcommand(1);
  PrintOptions po;
  app.add_flag("--precise", po.precise, "print numbers with 17 significant digits");

  // gen
  long g_rows = 0, g_cols = 0, g_rank = 1;
  std::string g_decay = "exp:0.5", g_out, g_format;
  double g_noise = 0.0;
  std::uint64_t g_seed = 0;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic low-rank matrix");
  gen->add_option("--rows", g_rows, "matrix rows")->required()->check(CLI::PositiveNumber);
  gen->add_option("--cols", g_cols, "matrix columns")->required()->check(CLI::PositiveNumber);
  gen->add_option("--rank", g_rank, "target rank")->required()->check(CLI::PositiveNumber);
  gen->add_option("--decay", g_decay, "spectrum decay: exp:RATIO or pow:EXPONENT");
  gen->add_option("--noise-floor", g_noise, "singular values beyond the rank");
  gen->add_option("--seed", g_seed, "RNG seed");
  gen->add_option("--out", g_out, "output path")->required();
  gen->add_option("--format", g_format, "csv or hsvd (default: from extension)");

  // svd
  std::string s_input, s_format, s_prefix;
  double s_gamma = 1e-2, s_eps = 1e-3;
  long s_d = 0, s_c = 0;
  int s_iters = 10;
  bool s_refine = false;
  CLI::App* svd = app.add_subcommand("svd", "hierarchical truncated SVD of a matrix file");
  svd->add_option("--input", s_input, "matrix file")->required();
  svd->add_option("--format", s_format, "csv or hsvd (default: from extension)");
  svd->add_option("--gamma", s_gamma, "relative truncation threshold");
  svd->add_option("--row-block", s_d, "rows per block (0 = all rows)");
  svd->add_option("--col-block", s_c, "columns per block (0 = all columns)");
  svd->add_flag("--refine", s_refine, "run iterative refinement");
  svd->add_option("--eps", s_eps, "refinement convergence threshold");
  svd->add_option("--max-iters", s_iters, "refinement iteration cap");
  svd->add_option("--out-prefix", s_prefix, "write PREFIX_{U,S,V}.hsvd and PREFIX_sigma.csv");

  // bench
  std::string b_input, b_format, b_grid, b_json;
  double b_gamma = 1e-2, b_eps = 1e-3;
  int b_repeats = 5, b_iters = 10;
  bool b_refine = false;
  CLI::App* bench = app.add_subcommand("bench", "benchmark block-size grids against a full SVD");
  bench->add_option("--input", b_input, "matrix file")->required();
  bench->add_option("--format", b_format, "csv or hsvd (default: from extension)");
  bench->add_option("--gamma", b_gamma, "relative truncation threshold");
  bench->add_option("--grid", b_grid, "block grid, d1xc1,d2xc2,...")->required();
  bench->add_option("--repeats", b_repeats, "runs to average")->check(CLI::PositiveNumber);
  bench->add_flag("--refine", b_refine, "also time the refined pipeline");
  bench->add_option("--eps", b_eps, "refinement convergence threshold");
  bench->add_option("--max-iters", b_iters, "refinement iteration cap");
  bench->add_option("--json", b_json, "write the report as JSON to this path");

  // compare
  std::string c_input, c_format;
  double c_gamma = 1e-2;
  long c_d = 0, c_c = 0;
  CLI::App* compare = app.add_subcommand("compare", "one configuration vs the full SVD");
  compare->add_option("--input", c_input, "matrix file")->required();
  compare->add_option("--format", c_format, "csv or hsvd (default: from extension)");
  compare->add_option("--gamma", c_gamma, "relative truncation threshold");
  compare->add_option("--d", c_d, "rows per block (0 = all rows)");
  compare->add_option("--c", c_c, "columns per block (0 = all columns)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help lands here too; CLI11 maps it to exit 0.
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed())
      return run_gen(g_rows, g_cols, g_rank, g_decay, g_noise, g_seed, g_out, g_format);
    if (svd->parsed())
      return run_svd(s_input, s_format, s_gamma, s_d, s_c, s_refine, s_eps, s_iters,
                     s_prefix, po);
    if (bench->parsed())
      return run_bench(b_input, b_format, b_gamma, b_grid, b_repeats, b_refine, b_eps,
                       b_iters, b_json, po);
    if (compare->parsed())
      return run_compare(c_input, c_format, c_gamma, c_d, c_c, po);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
