#include "hecke/cli.hpp"

#include <sys/file.h>
#include <fcntl.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hecke/arith.hpp"
#include "hecke/gamma0.hpp"
#include "hecke/hyperbolic.hpp"
#include "hecke/lseries.hpp"
#include "hecke/parallel.hpp"
#include "hecke/pell.hpp"
#include "hecke/qforms.hpp"
#include "hecke/scattering.hpp"
#include "hecke/transform.hpp"

namespace hecke {

const char* const kRefusalMessage =
    "refused: traces of Hecke operators and residues of L_n(s) need the analytic "
    "continuation of L_n(s) to Re s <= 1, and a truncated Dirichlet series does not "
    "determine it. Only truncated values at Re s > 1 are computed (see 'lseries').";

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json integer_cell(const Integer& x) {
  if (x >= Integer(std::numeric_limits<long long>::min()) &&
      x <= Integer(std::numeric_limits<long long>::max())) {
    return x.convert_to<long long>();
  }
  return x.str();
}

std::string cell_text(const json& cell) {
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(15) << cell.get<double>();
    return os.str();
  }
  return cell.dump();
}

// A result table plus summary lines, rendered in the requested format.
struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::vector<std::pair<std::string, json>> summary;

  void emit(std::ostream& out, OutputFormat format) const {
    switch (format) {
      case OutputFormat::json: {
        json j;
        j["schema"] = kSchemaVersion;
        j["command"] = command;
        j["columns"] = columns;
        j["rows"] = rows;
        json s = json::object();
        for (const auto& [k, v] : summary) s[k] = v;
        j["summary"] = s;
        out << j.dump() << '\n';
        break;
      }
      case OutputFormat::csv: {
        out << "# " << kSchemaVersion << ' ' << command << '\n';
        for (const auto& [k, v] : summary) out << "# " << k << '=' << cell_text(v) << '\n';
        for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
        out << '\n';
        for (const auto& row : rows) {
          for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
          out << '\n';
        }
        break;
      }
      case OutputFormat::plain: {
        out << "# " << kSchemaVersion << ' ' << command << '\n';
        std::vector<std::size_t> width(columns.size());
        std::vector<std::vector<std::string>> text;
        for (std::size_t i = 0; i < columns.size(); ++i) width[i] = columns[i].size();
        for (const auto& row : rows) {
          text.emplace_back();
          for (std::size_t i = 0; i < row.size(); ++i) {
            text.back().push_back(cell_text(row[i]));
            width[i] = std::max(width[i], text.back().back().size());
          }
        }
        auto line = [&](const std::vector<std::string>& cells) {
          for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << cells[i];
          }
          out << '\n';
        };
        if (!columns.empty()) line(columns);
        for (const auto& t : text) line(t);
        for (const auto& [k, v] : summary) out << k << ": " << cell_text(v) << '\n';
        break;
      }
    }
  }
};

json complex_cell(Complex z) { return json::array({z.real(), z.imag()}); }

std::string complex_text(Complex z) {
  std::ostringstream os;
  os << std::setprecision(15) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

json complex_value(Complex z, OutputFormat f) {
  return f == OutputFormat::json ? complex_cell(z) : json(complex_text(z));
}

Integer parse_integer(const std::string& text, const char* what) {
  const std::size_t digits_from = !text.empty() && text[0] == '-' ? 1 : 0;
  if (text.size() == digits_from || text.find_first_not_of("0123456789", digits_from) != std::string::npos) {
    throw UsageError(std::string(what) + " must be an integer, got '" + text + "'");
  }
  return Integer(text);
}

Integer positive(const std::string& text, const char* what) {
  Integer x = parse_integer(text, what);
  if (x < 1) throw UsageError(std::string(what) + " must be positive");
  return x;
}

Integer squarefree_level(const std::string& text) {
  Integer level = positive(text, "N");
  if (!is_squarefree(level)) throw UsageError("N must be square-free, got " + level.str());
  return level;
}

void require_coprime(const Integer& n, const Integer& level) {
  if (gcd(n, level) != 1) throw UsageError("n and N must be coprime");
}

// Holds an exclusive advisory lock on "<path>.lock" while the cache is written.
class CacheLock {
 public:
  explicit CacheLock(const std::string& path) {
    fd_ = ::open((path + ".lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~CacheLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  CacheLock(const CacheLock&) = delete;
  CacheLock& operator=(const CacheLock&) = delete;

 private:
  int fd_ = -1;
};

struct Context {
  RunConfig config;
  ClassDataCache cache;
  std::ostream& out;
  std::ostream& err;

  void load_cache() {
    if (!config.cache_path.empty() && std::filesystem::exists(config.cache_path)) {
      cache.load(config.cache_path);
    }
  }
  void save_cache() {
    if (config.cache_path.empty()) return;
    CacheLock lock(config.cache_path);
    cache.save(config.cache_path);
  }
};

std::string real_text(const Real& x, unsigned digits) {
  std::ostringstream os;
  os << std::setprecision(static_cast<int>(digits)) << x;
  return os.str();
}

std::vector<ClassDataCache::Record> class_records(Context& ctx, const std::vector<Integer>& ds) {
  return parallel_map(ds.size(), ctx.config.parallelism,
                      [&](std::size_t i) { return ctx.cache.get(Discriminant(ds[i])); });
}

int cmd_classnum(Context& ctx, const std::string& dmax_text) {
  const Integer dmax = parse_integer(dmax_text, "dmax");
  if (dmax > Integer(100000)) throw UsageError("dmax above the supported bound 100000");
  Report r{"classnum", {"d", "h_d", "v0", "u0", "log_eps"}, {}, {}};
  std::vector<Integer> ds;
  for (Integer d = 5; d <= dmax; ++d) {
    if (is_in_omega(d)) ds.push_back(d);
  }
  const auto records = class_records(ctx, ds);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& rec = records[i];
    const Real le = log_unit(ds[i], rec.v0, rec.u0, ctx.config.precision_digits);
    r.rows.push_back({integer_cell(ds[i]), integer_cell(rec.h), integer_cell(rec.v0),
                      integer_cell(rec.u0), real_text(le, ctx.config.precision_digits)});
  }
  ctx.save_cache();
  r.emit(ctx.out, ctx.config.format);
  return kExitOk;
}

int cmd_pell(Context& ctx, const std::string& d_text) {
  const Integer d = parse_integer(d_text, "d");
  if (!is_in_omega(d)) throw UsageError("d must be a positive non-square congruent to 0 or 1 mod 4");
  const PellFundamental pf = pell_fundamental(Discriminant(d), ctx.config.precision_digits);
  Report r{"pell", {"d", "v0", "u0", "log_eps"}, {}, {}};
  r.rows.push_back({integer_cell(d), integer_cell(pf.v0), integer_cell(pf.u0),
                    real_text(pf.log_eps, ctx.config.precision_digits)});
  r.emit(ctx.out, ctx.config.format);
  return kExitOk;
}

int cmd_cusps(Context& ctx, const std::string& n_text) {
  const Integer level = positive(n_text, "N");
  Report r{"cusps", {"u", "w"}, {}, {}};
  for (const auto& c : enumerate_cusps(level)) r.rows.push_back({integer_cell(c.u), integer_cell(c.w)});
  r.summary.push_back({"nu", integer_cell(cusp_count(level))});
  r.emit(ctx.out, ctx.config.format);
  return kExitOk;
}

int cmd_hd(Context& ctx, const std::string& n_text, const std::string& dmax_text, bool verify) {
  const Integer level = squarefree_level(n_text);
  const Integer dmax = parse_integer(dmax_text, "dmax");
  Report r{"hd", {"d", "H_d"}, {}, {}};
  if (verify) r.columns.push_back("oracle_H_d");
  std::vector<Integer> ds;
  for (Integer d = 5; d <= dmax; ++d) {
    if (is_in_omega(d)) ds.push_back(d);
  }
  struct Row {
    Integer formula;
    Integer oracle;
  };
  const auto rows = parallel_map(ds.size(), ctx.config.parallelism, [&](std::size_t i) {
    const Discriminant d(ds[i]);
    return Row{capital_h(d, level), verify ? capital_h_oracle(d, level) : Integer(0)};
  });
  bool ok = true;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    std::vector<json> row{integer_cell(ds[i]), integer_cell(rows[i].formula)};
    if (verify) {
      row.push_back(integer_cell(rows[i].oracle));
      ok = ok && rows[i].oracle == rows[i].formula;
    }
    r.rows.push_back(row);
  }
  if (verify) r.summary.push_back({"verified", ok});
  r.emit(ctx.out, ctx.config.format);
  return ok ? kExitOk : kExitVerification;
}

int cmd_lseries(Context& ctx, const std::string& n_text, const std::string& small_n_text, Complex s,
                const std::string& t_text, bool compare) {
  const Integer level = squarefree_level(n_text);
  const Integer n = positive(small_n_text, "n");
  require_coprime(n, level);
  const Integer t_max = positive(t_text, "t-max");
  if (s.real() <= 1) {
    throw UsageError("L_n(s) converges absolutely only for Re s > 1; refusing s with Re s = " +
                     std::to_string(s.real()));
  }
  ctx.load_cache();
  const LnEvaluation eval = ln_series(level, n, s, t_max, &ctx.cache, ctx.config.parallelism);
  ctx.save_cache();
  int code = kExitOk;
  if (ctx.config.format == OutputFormat::json && !compare) {
    ctx.out << ln_evaluation_json(eval) << '\n';
    return code;
  }
  Report r{"lseries", {"m", "k", "t", "d", "u", "re", "im"}, {}, {}};
  for (const auto& t : eval.terms) {
    r.rows.push_back({integer_cell(t.m), integer_cell(t.k), integer_cell(t.t), integer_cell(t.d),
                      integer_cell(t.u), t.contribution.real(), t.contribution.imag()});
  }
  r.summary.push_back({"value", complex_value(eval.value, ctx.config.format)});
  r.summary.push_back({"tail_bound", ln_series_tail_bound(level, n, s.real(), t_max)});
  if (compare) {
    const LnEvaluation collapsed = collapsed_class_sum(level, n, s, t_max, &ctx.cache, ctx.config.parallelism);
    const ClassSum classes = class_sum(n, level, s, t_max, ctx.config.parallelism);
    double scale = 0;
    for (const auto& t : collapsed.terms) scale += std::abs(t.contribution);
    for (const auto& e : classes.ledger) scale += std::abs(e.weight);
    const double deviation = scale > 0 ? std::abs(collapsed.value - classes.value) / scale : 0.0;
    r.summary.push_back({"collapsed_sum", complex_value(collapsed.value, ctx.config.format)});
    r.summary.push_back({"class_sum", complex_value(classes.value, ctx.config.format)});
    r.summary.push_back({"max_relative_deviation", deviation});
    if (deviation > 1e-9) code = kExitVerification;
  }
  r.emit(ctx.out, ctx.config.format);
  return code;
}

int cmd_hyperbolic(Context& ctx, const std::string& n_text, const std::string& small_n_text, Complex s,
                   const std::string& t_text, bool verify) {
  const Integer level = squarefree_level(n_text);
  const Integer n = positive(small_n_text, "n");
  require_coprime(n, level);
  const Integer t_max = positive(t_text, "t-max");
  if (s.real() <= 1) throw UsageError("the class sum converges only for Re s > 1");
  const ClassSum sum = class_sum(n, level, s, t_max, ctx.config.parallelism);
  if (ctx.config.format == OutputFormat::csv && !verify) {
    ctx.out << "# " << kSchemaVersion << " hyperbolic\n" << class_ledger_csv(sum);
    return kExitOk;
  }
  Report r{"hyperbolic", {"t", "d", "u", "k", "form", "h_d", "log_eps", "weight_re", "weight_im"}, {}, {}};
  for (const auto& e : sum.ledger) {
    std::ostringstream form;
    form << e.hyp.form;
    r.rows.push_back({integer_cell(e.hyp.v), integer_cell(e.hyp.d), integer_cell(e.hyp.u),
                      integer_cell(e.hyp.k), form.str(), integer_cell(e.h_d), e.log_eps,
                      e.weight.real(), e.weight.imag()});
  }
  r.summary.push_back({"value", complex_value(sum.value, ctx.config.format)});
  int code = kExitOk;
  if (verify) {
    std::vector<ClassSignature> mine;
    for (const auto& e : sum.ledger) mine.push_back(signature_of(e.hyp));
    std::sort(mine.begin(), mine.end());
    const auto oracle = conjugacy_oracle(n, level, Integer(3 * t_max), t_max);
    const bool ok = mine == oracle;
    r.summary.push_back({"oracle_classes", static_cast<long long>(oracle.size())});
    r.summary.push_back({"verified", ok});
    if (!ok) code = kExitVerification;
  }
  r.emit(ctx.out, ctx.config.format);
  return code;
}

int cmd_scattering(Context& ctx, const std::string& n_text, Complex s) {
  const Integer level = squarefree_level(n_text);
  const ScatteringMatrix m = scattering_matrix(level, s);
  Report r{"scattering", {"i", "j", "w_i", "w_j", "re", "im"}, {}, {}};
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.entries.cols(); ++j) {
      r.rows.push_back({static_cast<long long>(i), static_cast<long long>(j),
                        integer_cell(m.cusps[i].w), integer_cell(m.cusps[j].w),
                        m.entries(i, j).real(), m.entries(i, j).imag()});
    }
  }
  r.summary.push_back({"diagonal_sum", complex_value(m.entries.diagonal().sum(), ctx.config.format)});
  if (std::abs(s.real() - 0.5) < 1e-12) {
    const Eigen::MatrixXcd defect =
        m.entries * m.entries.adjoint() - Eigen::MatrixXcd::Identity(m.entries.rows(), m.entries.cols());
    r.summary.push_back({"unitarity_defect", defect.norm()});
  }
  r.emit(ctx.out, ctx.config.format);
  return kExitOk;
}

int cmd_transform(Context& ctx, Complex s, double r_value, double u_value, bool verify) {
  if (s.real() <= 0.5) throw UsageError("the transform needs Re s > 1/2");
  Report r{"transform", {"quantity", "argument", "closed_re", "closed_im"}, {}, {}};
  const Complex g = transform_g(u_value, s);
  const Complex h = transform_h(r_value, s);
  if (verify) {
    r.columns.insert(r.columns.end(), {"quadrature_re", "quadrature_im", "delta"});
  }
  std::vector<json> g_row{"g", u_value, g.real(), g.imag()};
  std::vector<json> h_row{"h", r_value, h.real(), h.imag()};
  int code = kExitOk;
  if (verify) {
    const auto gq = g_by_quadrature(u_value, s);
    const auto hq = h_by_quadrature(r_value, s);
    const double dg = std::abs(gq.value - g);
    const double dh = std::abs(hq.value - h);
    g_row.insert(g_row.end(), {gq.value.real(), gq.value.imag(), dg});
    h_row.insert(h_row.end(), {hq.value.real(), hq.value.imag(), dh});
    if (dg > 1e-9 * std::max(1.0, std::abs(g)) || dh > 1e-8 * std::max(1.0, std::abs(h))) {
      code = kExitVerification;
    }
  }
  r.rows.push_back(g_row);
  r.rows.push_back(h_row);
  r.emit(ctx.out, ctx.config.format);
  return code;
}

int cmd_geometric(Context& ctx, const std::string& n_text, const std::string& small_n_text, Complex s,
                  const std::string& t_text) {
  const Integer level = squarefree_level(n_text);
  const Integer n = positive(small_n_text, "n");
  require_coprime(n, level);
  const Integer t_max = positive(t_text, "t-max");
  if (s.real() <= 1) throw UsageError("the geometric side is assembled only for Re s > 1");
  const GeometricSide side = geometric_side(level, n, s, t_max, {}, ctx.config.parallelism);
  Report r{"geometric", {"component", "re", "im", "included", "error_estimate"}, {}, {}};
  for (const auto& c : side.components) {
    r.rows.push_back({c.label, c.value.real(), c.value.imag(), c.included ? "yes" : "not-enumerated",
                      c.error_estimate});
  }
  r.summary.push_back({"total", complex_value(side.total, ctx.config.format)});
  r.summary.push_back({"integration_cutoff", side.integration_cutoff});
  r.emit(ctx.out, ctx.config.format);
  return kExitOk;
}

// Brute-force cross-checks; each exits 2 on the first disagreement.
int cmd_oracle(Context& ctx, const std::string& kind, const std::vector<std::string>& params) {
  auto param = [&](std::size_t i, const char* what) {
    if (i >= params.size()) throw UsageError(std::string("oracle ") + kind + ": missing " + what);
    return params[i];
  };
  Report r{"oracle " + kind, {}, {}, {}};
  bool ok = true;
  if (kind == "pell") {
    const Integer dmax = positive(param(0, "dmax"), "dmax");
    r.columns = {"d", "v0", "u0", "scan_agrees"};
    for (Integer d = 5; d <= dmax; ++d) {
      if (!is_in_omega(d)) continue;
      const PellFundamental pf = pell_fundamental(Discriminant(d));
      const auto scan = pell_general(d, 4, pf.u0);
      const bool agree = !scan.empty() && scan.front() == PellSolution{pf.v0, pf.u0};
      ok = ok && agree;
      r.rows.push_back({integer_cell(d), integer_cell(pf.v0), integer_cell(pf.u0), agree});
    }
  } else if (kind == "hd") {
    const Integer level = squarefree_level(param(0, "N"));
    const Integer dmax = positive(param(1, "dmax"), "dmax");
    r.columns = {"d", "H_d", "oracle_H_d"};
    for (Integer d = 5; d <= dmax; ++d) {
      if (!is_in_omega(d)) continue;
      const Integer a = capital_h(Discriminant(d), level);
      const Integer b = capital_h_oracle(Discriminant(d), level);
      ok = ok && a == b;
      r.rows.push_back({integer_cell(d), integer_cell(a), integer_cell(b)});
    }
  } else if (kind == "hyperbolic") {
    const Integer level = squarefree_level(param(0, "N"));
    const Integer n = positive(param(1, "n"), "n");
    require_coprime(n, level);
    const Integer t_max = positive(param(2, "t-max"), "t-max");
    r.columns = {"signature", "enumerated", "oracle"};
    std::vector<ClassSignature> mine;
    for (const auto& c : enumerate_classes(n, level, t_max, ctx.config.parallelism)) mine.push_back(signature_of(c));
    std::sort(mine.begin(), mine.end());
    const auto oracle = conjugacy_oracle(n, level, Integer(3 * t_max), t_max);
    std::vector<ClassSignature> all = mine;
    all.insert(all.end(), oracle.begin(), oracle.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (const auto& sig : all) {
      std::ostringstream os;
      os << sig;
      const bool in_mine = std::binary_search(mine.begin(), mine.end(), sig);
      const bool in_oracle = std::binary_search(oracle.begin(), oracle.end(), sig);
      ok = ok && in_mine && in_oracle;
      r.rows.push_back({os.str(), in_mine, in_oracle});
    }
  } else {
    throw UsageError("unknown oracle '" + kind + "' (expected pell, hd or hyperbolic)");
  }
  r.summary.push_back({"verified", ok});
  r.emit(ctx.out, ctx.config.format);
  return ok ? kExitOk : kExitVerification;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric side of the trace formula for Hecke operators on Gamma0(N)", "hecke-trace"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format = "plain";
  app.add_option("--format", format, "plain, json or csv")
      ->check(CLI::IsMember({"plain", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--precision", config.precision_digits, "decimal digits for logarithms (>= 30)")
      ->check(CLI::Range(30U, 100000U))
      ->capture_default_str();
  app.add_option("--cache", config.cache_path, "class data cache file");
  app.add_option("--parallelism", config.parallelism, "worker threads (>= 1)")
      ->check(CLI::Range(1U, 1024U))
      ->capture_default_str();

  std::string n1, n2, n3;
  double s_re = 2.0, s_im = 0.0, r_value = 1.0, u_value = 1.0;
  std::string t_text = "10";
  bool verify = false, compare = false, residue = false;

  auto add_s = [&](CLI::App* sub) {
    sub->add_option("--s", s_re, "Re s")->capture_default_str();
    sub->add_option("--s-im", s_im, "Im s")->capture_default_str();
  };

  auto* classnum = app.add_subcommand("classnum", "h_d, v0, u0, ln eps_d for d <= dmax");
  classnum->add_option("dmax", n1)->required();
  auto* pell = app.add_subcommand("pell", "fundamental solution of v^2 - d u^2 = 4");
  pell->add_option("d", n1)->required();
  auto* cusps = app.add_subcommand("cusps", "cusps of Gamma0(N)");
  cusps->add_option("N", n1)->required();
  auto* hd = app.add_subcommand("hd", "Gamma0(N) class counts H_d");
  hd->add_option("N", n1)->required();
  hd->add_option("dmax", n2)->required();
  hd->add_flag("--verify", verify, "compare with the exhaustive count");
  auto* lseries = app.add_subcommand("lseries", "truncated L_n(s) with its term ledger");
  lseries->add_option("N", n1)->required();
  lseries->add_option("n", n2)->required();
  add_s(lseries);
  lseries->add_option("--t-max", t_text, "largest trace")->capture_default_str();
  lseries->add_flag("--compare-classes", compare, "check the collapsed sum against the class sum");
  lseries->add_flag("--residue,--trace", residue, "refused; see the documentation");
  auto* hyperbolic = app.add_subcommand("hyperbolic", "hyperbolic class sum and ledger");
  hyperbolic->add_option("N", n1)->required();
  hyperbolic->add_option("n", n2)->required();
  add_s(hyperbolic);
  hyperbolic->add_option("--t-max", t_text, "largest trace")->capture_default_str();
  hyperbolic->add_flag("--verify", verify, "compare with the matrix enumeration");
  auto* scattering = app.add_subcommand("scattering", "scattering matrix at s");
  scattering->add_option("N", n1)->required();
  add_s(scattering);
  auto* transform = app.add_subcommand("transform", "g(u) and h(r) for the kernel (1 + t/4)^-s");
  add_s(transform);
  transform->add_option("--r", r_value, "spectral parameter")->capture_default_str();
  transform->add_option("--u", u_value, "argument of g")->capture_default_str();
  transform->add_flag("--verify-quadrature", verify, "compare closed forms with quadrature");
  auto* geometric = app.add_subcommand("geometric", "components of the geometric side");
  geometric->add_option("N", n1)->required();
  geometric->add_option("n", n2)->required();
  add_s(geometric);
  geometric->add_option("--t-max", t_text, "largest trace")->capture_default_str();
  auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks: pell DMAX | hd N DMAX | hyperbolic N n TMAX");
  std::vector<std::string> oracle_params;
  oracle->add_option("kind", n3)->required();
  oracle->add_option("params", oracle_params);
  auto* trace = app.add_subcommand("trace", "refused; see the documentation");
  trace->allow_extras()->fallthrough(false);
  auto* res = app.add_subcommand("residue", "refused; see the documentation");
  res->allow_extras()->fallthrough(false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << '\n';
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (format == "json") config.format = OutputFormat::json;
  if (format == "csv") config.format = OutputFormat::csv;

  Context ctx{config, {}, out, err};
  const Complex s(s_re, s_im);
  try {
    if (trace->parsed() || res->parsed() || residue) {
      err << kRefusalMessage << '\n';
      return kExitUsage;
    }
    if (classnum->parsed()) {
      ctx.load_cache();
      return cmd_classnum(ctx, n1);
    }
    if (pell->parsed()) return cmd_pell(ctx, n1);
    if (cusps->parsed()) return cmd_cusps(ctx, n1);
    if (hd->parsed()) return cmd_hd(ctx, n1, n2, verify);
    if (lseries->parsed()) return cmd_lseries(ctx, n1, n2, s, t_text, compare);
    if (hyperbolic->parsed()) return cmd_hyperbolic(ctx, n1, n2, s, t_text, verify);
    if (scattering->parsed()) return cmd_scattering(ctx, n1, s);
    if (transform->parsed()) return cmd_transform(ctx, s, r_value, u_value, verify);
    if (geometric->parsed()) return cmd_geometric(ctx, n1, n2, s, t_text);
    if (oracle->parsed()) return cmd_oracle(ctx, n3, oracle_params);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hecke
