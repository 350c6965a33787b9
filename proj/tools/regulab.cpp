#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "regulab/divisors.hpp"
#include "regulab/elliptic_dilog.hpp"
#include "regulab/errors.hpp"
#include "regulab/lfunctions.hpp"
#include "regulab/mahler.hpp"
#include "regulab/periods.hpp"
#include "regulab/report.hpp"

using namespace regulab;

namespace {

struct Options {
  std::string family;
  double alpha = std::nan("");
  std::string grid;
  std::string method = "jensen";
  double tol = 1e-6;
  bool json = false;
  bool csv = false;
  bool no_timing = false;
  unsigned threads = 0;
  std::string overrides_path;
  std::string target;
};

std::string num(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

// Runs job(x) for every grid value on up to `threads` workers and concatenates
// the records in grid order. The first exception in grid order is rethrown.
std::vector<CheckRecord> sweep(const std::vector<double>& grid,
                               const std::function<std::vector<CheckRecord>(double)>& job, unsigned threads) {
  std::vector<std::vector<CheckRecord>> out(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  std::size_t next = 0;
  std::mutex lock;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> g(lock);
        if (next >= grid.size()) return;
        i = next++;
      }
      try {
        out[i] = job(grid[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<CheckRecord> flat;
  for (auto& v : out) flat.insert(flat.end(), v.begin(), v.end());
  return flat;
}

std::vector<double> grid_or(const Options& o, std::vector<double> fallback) {
  if (!o.grid.empty()) return parse_grid(o.grid);
  if (!std::isnan(o.alpha)) return {o.alpha};
  return fallback;
}

double mahler_of(Family f, double a, double tol) {
  return mahler_quadratic_y(family_poly(f, a), Tolerance{std::clamp(tol * 1e-3, 1e-14, 1e-10)}).value;
}

std::string regime_warning(Family f, double a) {
  switch (f) {
    case Family::P:
    case Family::S:
      if (a > -1.0 && a < 0.0) return "a in (-1, 0) lies outside both regimes of the S/P identity";
      if (a > 4.0) return "a > 4 lies outside both regimes of the S/P identity";
      break;
    case Family::Q:
      if (a < 4.0) return "a < 4 is below the regime of the Q/R identity; the Mahler measure is still defined";
      break;
    case Family::R:
      if (a < 6.0) return "b < 6 is below the regime of the Q/R identity; the Mahler measure is still defined";
      break;
  }
  return "";
}

void cmd_mahler(const Options& o, Report& rep) {
  if (o.family.empty()) throw DomainError("mahler needs --family");
  Family f = parse_family(o.family);
  rep.params["family"] = family_name(f);
  rep.params["method"] = o.method;
  if (o.method != "jensen" && o.method != "torus") throw DomainError("method must be jensen or torus");
  auto grid = grid_or(o, {});
  if (grid.empty()) throw DomainError("mahler needs --alpha or --grid");
  for (double a : grid) {
    auto w = regime_warning(f, a);
    if (!w.empty()) rep.warnings.push_back(w);
  }
  rep.records = sweep(
      grid,
      [&](double a) {
        BivariatePoly p = family_poly(f, a);
        QuadratureResult r = o.method == "jensen" ? mahler_quadratic_y(p, Tolerance{std::clamp(o.tol * 1e-3, 1e-14, 1e-10)})
                                                  : mahler_torus2(p, Tolerance{o.tol * 0.1});
        std::string name = "m(" + family_name(f) + "_" + num(a) + ") " + o.method;
        return std::vector<CheckRecord>{make_residual_record(name, r.value, r.value, r.error_estimate, o.tol)};
      },
      o.threads);
}

void require_regime(bool ok, const std::string& what) {
  if (!ok) throw UnsupportedRegime(what);
}

void verify_bz1(const Options& o, Report& rep) {
  auto grid = grid_or(o, {-10, -5, -2, -1.5, 0.5, 1, 2, 3, 3.5});
  for (double a : grid)
    require_regime(a <= -1.0 || (a >= 0.0 && a <= 4.0), "bz1 grid value " + num(a) + " is outside 0<=a<=4 and a<=-1");
  rep.records = sweep(
      grid,
      [&](double a) {
        double s = mahler_of(Family::S, a, o.tol), p = mahler_of(Family::P, a, o.tol);
        if (a >= 0.0) return std::vector<CheckRecord>{make_record("m(S_a) = 2 m(P_a), a=" + num(a), s, 2 * p, o.tol)};
        return std::vector<CheckRecord>{make_record("m(S_a) = m(P_a), a=" + num(a), s, p, o.tol)};
      },
      o.threads);
}

void verify_bz2(const Options& o, Report& rep) {
  auto grid = grid_or(o, {4, 5, 6.5, 10});
  for (double a : grid) require_regime(a >= 4.0, "bz2 grid value " + num(a) + " is below a=4");
  rep.records = sweep(
      grid,
      [&](double a) {
        double q = mahler_of(Family::Q, a, o.tol), r = mahler_of(Family::R, a + 2, o.tol);
        return std::vector<CheckRecord>{make_record("m(Q_a) = m(R_a+2), a=" + num(a), q, r, o.tol)};
      },
      o.threads);
}

std::vector<CheckRecord> period_checks(double a, double tol, bool quotient_only) {
  std::vector<CheckRecord> out;
  double t = tol;
  if (!quotient_only) {
    if (a > 0 && a < 8) out.push_back(verify_period_identity(PeriodIdentity::Doubled, a, t));
    if (a < -1) out.push_back(verify_period_identity(PeriodIdentity::Negative, a, t));
    for (auto id : all_variable_changes())
      if (id != VariableChange::QuarticPair && variable_change_applies(id, a))
        out.push_back(change_of_variable_check(id, a, t));
  } else {
    out.push_back(verify_period_identity(PeriodIdentity::QuotientPair, a, t));
    out.push_back(change_of_variable_check(VariableChange::QuarticPair, a, t));
  }
  return out;
}

void verify_lemma32(const Options& o, Report& rep) {
  auto grid = grid_or(o, {-20, -5, -2, -1.5, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5, 5.5, 6, 6.5, 7, 7.5});
  for (double a : grid)
    require_regime((a > 0 && a < 8) || a < -1, "lemma32 grid value " + num(a) + " is outside 0<a<8 and a<-1");
  rep.records = sweep(grid, [&](double a) { return period_checks(a, o.tol, false); }, o.threads);
}

void verify_sec42(const Options& o, Report& rep) {
  auto grid = grid_or(o, {4, 5, 8, 12});
  for (double a : grid) require_regime(a >= 4, "sec42 grid value " + num(a) + " is below a=4");
  rep.records = sweep(grid, [&](double a) { return period_checks(a, o.tol, true); }, o.threads);
}

void verify_table1(const Options& o, Report& rep) {
  std::map<long, int> overrides;
  if (!o.overrides_path.empty()) overrides = read_ap_overrides(o.overrides_path);
  const auto& rows = table1_rows();
  std::vector<double> idx;
  for (std::size_t i = 0; i < rows.size(); ++i) idx.push_back(static_cast<double>(i));
  rep.records = sweep(
      idx,
      [&](double i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        auto r = evaluate_table1_row(row, 200, overrides);
        std::string name = "m(P_a)/L'(E_a,0) = r, a=" + std::to_string(row.alpha) + " N=" + std::to_string(row.conductor) +
                           " eps=" + std::to_string(r.epsilon);
        return std::vector<CheckRecord>{make_record(name, r.ratio, row.r(), o.tol)};
      },
      o.threads);
}

void verify_diamonds(const Options&, Report& rep) {
  for (auto chain : {DerivationChain::SFamily, DerivationChain::QRFamilies}) {
    auto d = derive_equivalence(chain);
    for (auto& s : d.steps) {
      auto r = make_residual_record(d.chain + ": " + s.name, 0, 0, s.pass ? 0 : 1, 0);
      rep.records.push_back(r);
      if (!s.two_torsion_residue.empty())
        rep.warnings.push_back(d.chain + ": " + s.name + " differs by 2-torsion " + s.two_torsion_residue);
    }
  }
}

void verify_steinberg(const Options& o, Report& rep) {
  auto grid = grid_or(o, {1, 3});
  rep.records = sweep(
      grid,
      [&](double a) {
        std::vector<CheckRecord> out;
        for (Family f : {Family::S, Family::R}) {
          auto cat = family_divisor_catalog(f);
          DivisorEmbedding e = embed_generators(family_models(f, a).curve, family_generators(f, a));
          double d = elliptic_dilog_divisor(e, cat.statement("steinberg"), Tolerance{1e-14});
          out.push_back(make_record("D^E((f)<>(1-f)) " + family_name(f) + " a=" + num(a), d, 0.0, o.tol));
        }
        return out;
      },
      o.threads);
}

void cmd_verify(const Options& o, Report& rep) {
  rep.command = "verify " + o.target;
  if (!o.grid.empty()) rep.params["grid"] = o.grid;
  static const std::map<std::string, void (*)(const Options&, Report&)> targets = {
      {"bz1", verify_bz1},         {"bz2", verify_bz2},           {"lemma32", verify_lemma32},
      {"sec42", verify_sec42},     {"table1", verify_table1},     {"diamonds", verify_diamonds},
      {"steinberg", verify_steinberg}};
  auto it = targets.find(o.target);
  if (it == targets.end()) throw DomainError("unknown verify target '" + o.target + "'");
  it->second(o, rep);
}

void cmd_regulator(const Options& o, Report& rep) {
  auto grid = grid_or(o, {});
  if (grid.empty()) throw DomainError("regulator needs --alpha or --grid");
  auto cat = family_divisor_catalog(Family::P);
  const FormalDivisor& xy = cat.statement("(x)<>(y)");
  std::vector<double> ratios(grid.size());
  auto recs = sweep(
      grid,
      [&](double a) {
        double m = mahler_of(Family::P, a, o.tol);
        DivisorEmbedding e = embed_generators(family_models(Family::P, a).curve, family_generators(Family::P, a));
        double d = elliptic_dilog_divisor(e, xy, Tolerance{1e-14});
        double ratio = 2 * kPi * m / std::abs(d);
        std::string tag = " a=" + num(a);
        return std::vector<CheckRecord>{
            make_residual_record("2 pi m(P_a)" + tag, 2 * kPi * m, 2 * kPi * m, 0, o.tol),
            make_residual_record("D^E(-6(P)-6(2P))" + tag, d, d, 0, o.tol),
            make_residual_record("2 pi m(P_a) / |D^E| (expected magnitude 1)" + tag, ratio, 1.0,
                                 std::abs(ratio - 1.0), std::max(o.tol, 1e-4))};
      },
      o.threads);
  rep.records = recs;
  // Constancy across the grid, relative to the first value.
  for (std::size_t i = 1; i < grid.size(); ++i)
    rep.records.push_back(make_record("ratio constancy a=" + num(grid[i]) + " vs a=" + num(grid[0]),
                                      recs[3 * i + 2].lhs, recs[2].lhs, std::max(o.tol, 1e-4)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mahler measures, regulators and L-values for genus-one families"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  o.threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--family", o.family, "P, S, Q or R");
  app.add_option("--alpha", o.alpha, "family parameter (beta for R)");
  app.add_option("--grid", o.grid, "a:b:step");
  app.add_option("--tol", o.tol, "tolerance for every record")->check(CLI::PositiveNumber);
  app.add_flag("--json", o.json, "JSON report");
  app.add_flag("--csv", o.csv, "CSV report");
  app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--ap-overrides", o.overrides_path, "file of 'p a_p' lines for bad primes");
  app.add_flag("--no-timing", o.no_timing, "report 0 seconds so output is byte-for-byte reproducible");
  auto* mahler = app.add_subcommand("mahler", "Mahler measure of one family member");
  mahler->add_option("--method", o.method, "jensen or torus");
  auto* verify = app.add_subcommand("verify", "verification campaigns");
  verify->add_option("target", o.target, "bz1, bz2, lemma32, sec42, table1, diamonds or steinberg")->required();
  app.add_subcommand("regulator", "2 pi m(P_a) against the elliptic dilogarithm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (o.json && o.csv) {
    std::cerr << "error: --json and --csv are exclusive\n";
    return 2;
  }

  Report rep;
  rep.params["tol"] = o.tol;
  if (!std::isnan(o.alpha)) rep.params["alpha"] = o.alpha;
  if (!o.family.empty()) rep.params["family"] = o.family;
  rep.params["precision"] = precision_from_env() == Precision::DoubleDouble ? "dd" : "double";
  auto start = std::chrono::steady_clock::now();
  try {
    if (mahler->parsed()) {
      rep.command = "mahler";
      cmd_mahler(o, rep);
    } else if (verify->parsed()) {
      cmd_verify(o, rep);
    } else {
      rep.command = "regulator";
      cmd_regulator(o, rep);
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 1;
  }
  rep.seconds = o.no_timing ? 0.0 : std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (o.json) std::cout << rep.to_json().dump(2) << '\n';
  else if (o.csv) std::cout << rep.to_csv();
  else std::cout << rep.to_table();
  if (const CheckRecord* bad = rep.first_failure()) {
    std::cerr << "first failing record: " << bad->name << " (residual " << bad->residual << " > " << bad->tol
              << ")\n";
    return 1;
  }
  return 0;
}
