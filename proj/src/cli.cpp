#include "nvol/cli.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <regex>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nvol/catalog.hpp"
#include "nvol/error.hpp"
#include "nvol/optimizer.hpp"
#include "nvol/reproduce.hpp"
#include "nvol/screener.hpp"
#include "nvol/support.hpp"
#include "nvol/valuation.hpp"

namespace nvol::cli {

namespace {

using json = nlohmann::json;

constexpr const char* kSchema = "nvol/1";

enum class Format { kPretty, kJson, kTsv };

// What a subcommand produced. Every format is rendered from the same data.
struct Report {
  json body = json::object();
  std::vector<std::string> tsv_header;
  std::vector<std::vector<std::string>> tsv_rows;
  std::string pretty;
  int exit_code = 0;
};

std::string fmt(double x, int precision = 12) {
  std::ostringstream os;
  os << std::setprecision(precision) << x;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct PolyInput {
  std::string poly;
  std::string poly_file;
  int nvars = 0;
};

// Largest variable index mentioned, but at least 4 (threefold germs).
int infer_nvars(const std::string& text) {
  static const std::regex var(R"(x(\d+))");
  int n = 4;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it) {
    const auto digits = (*it)[1].str();
    n = std::max(n, digits.size() > 6 ? 1000000 : std::stoi(digits));
  }
  return n;
}

PolySupport load_poly(const PolyInput& in) {
  if (in.poly.empty() == in.poly_file.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "give exactly one of --poly and --poly-file");
  }
  if (!in.poly_file.empty()) {
    json j;
    try {
      j = json::parse(read_file(in.poly_file));
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::kSyntax, std::string("poly file: ") + e.what());
    }
    PolySupport f = support_from_json(j);
    if (in.nvars != 0 && in.nvars != f.nvars()) {
      throw Error(ErrorKind::kDimensionMismatch, "--nvars disagrees with the poly file");
    }
    return f;
  }
  return parse_polynomial(in.poly, in.nvars != 0 ? in.nvars : infer_nvars(in.poly));
}

void add_poly_options(CLI::App* cmd, PolyInput& in) {
  cmd->add_option("--poly", in.poly, "polynomial in x1..xm, e.g. \"x1*x2 + x3^2*x4\"");
  cmd->add_option("--poly-file", in.poly_file, "support as JSON {nvars, terms:[{exp, coef}]}");
  cmd->add_option("--nvars", in.nvars, "ambient dimension (default: max(4, largest index))")
      ->check(CLI::Range(2, 1000));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(item);
  if (!text.empty() && text.back() == ',') out.emplace_back();
  return out;
}

double parse_decimal(const std::string& token) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(token, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::kSyntax, "not a number: '" + token + "'");
  }
  if (token.find_first_not_of(" \t", used) != std::string::npos) {
    throw Error(ErrorKind::kSyntax, "not a number: '" + token + "'");
  }
  return x;
}

// "22", "351/16" or a terminating decimal such as "22.5", read exactly.
Rational parse_exact_number(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational::parse(text);
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorKind::kSyntax, "not a number: '" + text + "'");
  }
  const bool negative = !whole.empty() && whole[0] == '-';
  const Rational w = whole.empty() || whole == "-" || whole == "+" ? Rational(0) : Rational::parse(whole);
  const Rational f = Rational::parse(frac) / Rational(10).pow(static_cast<unsigned>(frac.size()));
  return negative ? w - f : w + f;
}

using AnyWeight = std::variant<ExactWeight, NumericWeight>;

AnyWeight parse_weight(const std::string& text) {
  const auto tokens = split_list(text);
  const bool numeric = text.find_first_of(".eE") != std::string::npos;
  if (numeric) {
    std::vector<double> w;
    for (const auto& t : tokens) w.push_back(parse_decimal(t));
    return NumericWeight(std::move(w));
  }
  std::vector<Rational> w;
  for (const auto& t : tokens) w.push_back(Rational::parse(t));
  return ExactWeight(std::move(w));
}

json exponents_json(const std::vector<ExponentVector>& active) {
  json out = json::array();
  for (const auto& a : active) out.push_back(std::vector<int>(a.entries().begin(), a.entries().end()));
  return out;
}

std::string exponents_text(const std::vector<ExponentVector>& active) {
  std::string out;
  for (const auto& a : active) out += (out.empty() ? "" : " ") + a.to_string();
  return out;
}

std::string scalar_text(const Rational& x) { return x.to_string(); }
std::string scalar_text(double x) { return fmt(x); }

template <typename Scalar>
Report bound_report(const PolySupport& f, const WeightVector<Scalar>& w, std::optional<int> n) {
  const auto e = nv_bound(f, w, n);
  constexpr bool exact = std::is_same_v<Scalar, Rational>;
  Report r;
  json weight = json::array();
  for (const auto& x : w.entries()) weight.push_back(scalar_text(x));
  r.body = {{"poly", f.to_string()},
            {"weight", weight},
            {"exact", exact},
            {"n", e.n},
            {"v", scalar_text(e.v)},
            {"w_sum", scalar_text(e.w_sum)},
            {"w_prod", scalar_text(e.w_prod)},
            {"ld_factor", scalar_text(e.ld_factor)},
            {"bound", scalar_text(e.bound)},
            {"bound_numeric", to_double(e.bound)},
            {"active", exponents_json(e.active)}};
  r.tsv_header = {"v", "w_sum", "w_prod", "ld_factor", "n", "bound", "bound_numeric"};
  r.tsv_rows.push_back({scalar_text(e.v), scalar_text(e.w_sum), scalar_text(e.w_prod), scalar_text(e.ld_factor),
                        std::to_string(e.n), scalar_text(e.bound), fmt(to_double(e.bound))});
  std::ostringstream os;
  os << "f          " << f.to_string() << "\n"
     << "v_w(f)     " << scalar_text(e.v) << "\n"
     << "sum w - v  " << scalar_text(e.ld_factor) << "\n"
     << "prod w     " << scalar_text(e.w_prod) << "\n"
     << "bound      " << scalar_text(e.bound);
  if (exact) os << "  (" << fmt(to_double(e.bound)) << ")";
  os << "\nactive     " << exponents_text(e.active) << "\n";
  r.pretty = os.str();
  return r;
}

Report minimize_report(const PolySupport& f, const OptimizerOptions& opts) {
  const auto res = minimize_bound(f, opts);
  Report r;
  std::vector<double> witness = res.witness.entries();
  json oracle = res.oracle_value ? json(res.oracle_value->to_string()) : json(nullptr);
  r.body = {{"poly", f.to_string()},
            {"value", res.value},
            {"witness", witness},
            {"active", exponents_json(res.active)},
            {"status", to_string(res.status)},
            {"oracle_value", oracle},
            {"oracle_numeric", res.oracle_value ? json(res.oracle_value->to_double()) : json(nullptr)},
            {"iterations", res.iterations},
            {"options",
             {{"grid_denominator", opts.grid_denominator},
              {"tol", opts.tol},
              {"max_iters", opts.max_iters},
              {"restarts", opts.restarts},
              {"seed", opts.seed}}}};
  std::string wtext;
  for (double x : witness) wtext += (wtext.empty() ? "" : ",") + fmt(x);
  r.tsv_header = {"value", "status", "oracle_value", "witness", "iterations"};
  r.tsv_rows.push_back({fmt(res.value), to_string(res.status),
                        res.oracle_value ? res.oracle_value->to_string() : "", wtext,
                        std::to_string(res.iterations)});
  std::ostringstream os;
  os << "f        " << f.to_string() << "\n"
     << "minimum  " << fmt(res.value) << "  [" << to_string(res.status) << "]\n"
     << "witness  (" << wtext << ")\n"
     << "active   " << exponents_text(res.active) << "\n";
  if (res.oracle_value) os << "grid     " << res.oracle_value->to_string() << "  (" << fmt(res.oracle_value->to_double()) << ")\n";
  r.pretty = os.str();
  return r;
}

Report oracle_report(const PolySupport& f, int denominator) {
  const auto g = grid_search(f, denominator);
  Report r;
  json witness = json::array();
  std::string wtext;
  for (const auto& x : g.witness.entries()) {
    witness.push_back(x.to_string());
    wtext += (wtext.empty() ? "" : ",") + x.to_string();
  }
  r.body = {{"poly", f.to_string()},
            {"denominator", denominator},
            {"value", g.value.to_string()},
            {"value_numeric", g.value.to_double()},
            {"witness", witness},
            {"points_evaluated", g.points_evaluated},
            {"points_skipped", g.points_skipped}};
  r.tsv_header = {"value", "value_numeric", "witness", "points_evaluated", "points_skipped"};
  r.tsv_rows.push_back({g.value.to_string(), fmt(g.value.to_double()), wtext, std::to_string(g.points_evaluated),
                        std::to_string(g.points_skipped)});
  r.pretty = "grid minimum  " + g.value.to_string() + "  (" + fmt(g.value.to_double()) + ")\nwitness       (" + wtext +
             ")\npoints        " + std::to_string(g.points_evaluated) + " evaluated, " +
             std::to_string(g.points_skipped) + " invalid\n";
  return r;
}

Report classify_report(const std::string& text, const OptimizerOptions& opts) {
  const auto d = parse_descriptor(text);
  const auto c = classify_volume_ge_9(d, opts);
  Report r;
  r.body = {{"descriptor", to_string(d)}, {"volume_ge_9", c.ge9}, {"reason", c.reason}};
  r.tsv_header = {"descriptor", "volume_ge_9", "reason"};
  r.tsv_rows.push_back({to_string(d), c.ge9 ? "true" : "false", c.reason});
  r.pretty = to_string(d) + ": volume " + (c.ge9 ? ">= 9" : "< 9") + "\n  " + c.reason + "\n";
  return r;
}

Report catalog_report(const std::string& filter, bool known_volumes) {
  Report r;
  if (known_volumes) {
    const auto list = known_volume_list();
    json values = json::array();
    std::ostringstream os;
    r.tsv_header = {"value", "numeric", "witnesses"};
    for (const auto& kv : list.values) {
      json witnesses = json::array();
      std::string wtext;
      for (const auto& d : kv.witnesses) {
        witnesses.push_back(to_string(d));
        wtext += (wtext.empty() ? "" : " ") + to_string(d);
      }
      values.push_back({{"value", kv.value.to_string()}, {"numeric", kv.value.to_double()}, {"witnesses", witnesses}});
      r.tsv_rows.push_back({kv.value.to_string(), fmt(kv.value.to_double()), wtext});
      os << std::left << std::setw(12) << kv.value.to_string() << std::setw(16) << fmt(kv.value.to_double(), 10)
         << wtext << "\n";
    }
    r.body = {{"values", values}, {"exhaustive", list.exhaustive}};
    os << "(known values only; the list is not claimed to be exhaustive)\n";
    r.pretty = os.str();
    return r;
  }
  std::vector<CatalogEntry> entries;
  for (const auto& d : standard_descriptors()) {
    if (!filter.empty() && to_string(d).find(filter) == std::string::npos) continue;
    entries.push_back(catalog_volume(d));
  }
  r.body = {{"entries", catalog_to_json(entries)}};
  r.tsv_header = {"descriptor", "volume", "volume_numeric", "mld", "source"};
  std::ostringstream os;
  for (const auto& e : entries) {
    const std::string mld = e.mld ? e.mld->to_string() : "";
    r.tsv_rows.push_back({to_string(e.descriptor), to_string(e.volume), fmt(numeric_value(e.volume)), mld, e.source});
    os << std::left << std::setw(16) << to_string(e.descriptor) << std::setw(18) << to_string(e.volume)
       << std::setw(16) << fmt(numeric_value(e.volume), 10) << std::setw(6) << mld << e.source << "\n";
  }
  r.pretty = os.str();
  return r;
}

Report mld_report(const std::string& text) {
  const auto d = parse_descriptor(text);
  const auto check = check_nv_mld(d);
  Report r;
  const Rational cap = Rational(9) * check.mld;
  r.body = {{"descriptor", to_string(d)},
            {"mld", check.mld.to_string()},
            {"volume", check.volume.to_string()},
            {"nine_mld", cap.to_string()},
            {"holds", check.holds},
            {"equality", check.equality}};
  r.tsv_header = {"descriptor", "mld", "volume", "nine_mld", "holds", "equality"};
  r.tsv_rows.push_back({to_string(d), check.mld.to_string(), check.volume.to_string(), cap.to_string(),
                        check.holds ? "true" : "false", check.equality ? "true" : "false"});
  r.pretty = to_string(d) + ": mld " + check.mld.to_string() + ", volume " + check.volume.to_string() +
             (check.equality ? " = " : (check.holds ? " <= " : " > ")) + "9*mld = " + cap.to_string() + "\n";
  return r;
}

void add_screen_rows(Report& r, const std::string& family, const ScreeningReport& s) {
  std::string regimes;
  for (auto g : s.regimes) regimes += (regimes.empty() ? "" : ",") + std::string(to_string(g));
  std::string allowed;
  for (const auto& a : s.allowed) allowed += (allowed.empty() ? "" : ",") + a.tag;
  r.tsv_rows.push_back({family, s.volume.to_string(), s.liu_bound.to_string(), regimes, allowed});
}

std::string screen_pretty(const ScreeningReport& s) {
  std::ostringstream os;
  os << "V = " << s.volume << ": every local volume >= 27V/64 = " << s.liu_bound << " (" << fmt(s.liu_bound.to_double())
     << ")\n";
  if (s.unrestricted) os << "  no threshold applies\n";
  for (const auto& j : s.justifications) {
    os << "  " << to_string(j.regime) << ": " << j.lhs << (j.holds ? " > " : " <= ") << j.rhs << "\n";
  }
  for (const auto& a : s.allowed) os << "  allowed " << a.tag << "  -- " << a.citation << "\n";
  if (!s.constraint.empty()) os << "  constraint: " << s.constraint << "\n";
  if (s.smoothable) os << "  (Q-Gorenstein smoothable: 1/2(1,1,1) excluded)\n";
  return os.str();
}

Report screen_report(const std::string& volume, const std::string& table, bool smoothable) {
  if (volume.empty() == table.empty()) throw Error(ErrorKind::kInvalidArgument, "give exactly one of --volume and --table");
  Report r;
  r.tsv_header = {"family", "volume", "liu_bound", "regimes", "allowed"};
  if (!volume.empty()) {
    const auto s = screen_fano(parse_exact_number(volume), smoothable);
    r.body = to_json(s);
    add_screen_rows(r, "", s);
    r.pretty = screen_pretty(s);
    return r;
  }
  json rows = json::array();
  for (const auto& row : screen_table(read_file(table), smoothable)) {
    rows.push_back({{"family", row.family}, {"report", to_json(row.report)}});
    add_screen_rows(r, row.family, row.report);
    r.pretty += row.family + "\n" + screen_pretty(row.report);
  }
  r.body = {{"rows", rows}};
  return r;
}

Report reproduce_report(const std::optional<std::string>& section, const OptimizerOptions& opts) {
  const auto claims = reproduce(section, opts);
  Report r;
  json rows = json::array();
  int failed = 0;
  r.tsv_header = {"id", "location", "expected", "computed", "delta", "tolerance", "result"};
  for (const auto& c : claims) {
    rows.push_back(to_json(c));
    failed += !c.pass;
    r.tsv_rows.push_back({c.id, c.location, c.expected, c.computed, fmt(c.delta, 3),
                          c.exact ? "exact" : fmt(c.tolerance, 3), c.pass ? "pass" : "FAIL"});
  }
  std::array<std::size_t, 4> width{5, 8, 8, 7};
  for (const auto& row : r.tsv_rows) {
    width[0] = std::max(width[0], row[0].size());
    width[1] = std::max(width[1], row[2].size());
    width[2] = std::max(width[2], row[3].size());
    width[3] = std::max(width[3], row[4].size());
  }
  std::ostringstream os;
  auto line = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                  const std::string& e) {
    os << std::left << std::setw(static_cast<int>(width[0] + 2)) << a << std::setw(static_cast<int>(width[1] + 2))
       << b << std::setw(static_cast<int>(width[2] + 2)) << c << std::setw(static_cast<int>(width[3] + 2)) << d << e
       << "\n";
  };
  line("claim", "expected", "computed", "|delta|", "result");
  for (const auto& row : r.tsv_rows) line(row[0], row[2], row[3], row[4], row[6]);
  os << claims.size() - failed << "/" << claims.size() << " claims pass\n";
  r.body = {{"claims", rows},
            {"total", claims.size()},
            {"failed", failed},
            {"all_pass", failed == 0}};
  r.pretty = os.str();
  r.exit_code = failed == 0 ? 0 : 1;
  return r;
}

void emit(const Report& r, Format format, const std::string& command, std::ostream& out) {
  switch (format) {
    case Format::kJson: {
      json doc = r.body;
      doc["schema"] = kSchema;
      doc["command"] = command;
      out << doc.dump(2) << "\n";
      break;
    }
    case Format::kTsv: {
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "\t" : "") << cells[i];
        out << "\n";
      };
      line(r.tsv_header);
      for (const auto& row : r.tsv_rows) line(row);
      break;
    }
    case Format::kPretty:
      out << r.pretty;
      break;
  }
}

void add_optimizer_options(CLI::App* cmd, OptimizerOptions& opts) {
  cmd->add_option("--grid-denominator", opts.grid_denominator, "grid oracle denominator D")->capture_default_str();
  cmd->add_option("--tol", opts.tol, "simplex convergence tolerance")->capture_default_str();
  cmd->add_option("--max-iters", opts.max_iters, "iteration cap per local search")->capture_default_str();
  cmd->add_option("--restarts", opts.restarts, "random restarts")->capture_default_str();
  cmd->add_option("--seed", opts.seed, "restart seed")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"nvol: local volume bounds for threefold singularities"};
  app.require_subcommand(1);
  app.fallthrough();

  Format format = Format::kPretty;
  const std::map<std::string, Format> formats{{"pretty", Format::kPretty}, {"json", Format::kJson}, {"tsv", Format::kTsv}};
  app.add_option("--format", format, "output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  PolyInput poly;
  OptimizerOptions opts;
  std::string weight_text;
  std::optional<int> n;
  int denominator = 60;
  std::string descriptor;
  std::string filter;
  bool known_volumes = false;
  std::string volume;
  std::string table;
  bool smoothable = false;
  std::optional<std::string> section;

  auto* bound = app.add_subcommand("bound", "evaluate the volume bound at one weight");
  add_poly_options(bound, poly);
  bound->add_option("--weight", weight_text, "comma-separated weights, rationals (exact) or decimals")->required();
  bound->add_option("--n", n, "exponent n (default nvars - 1)");

  auto* minimize = app.add_subcommand("minimize", "minimize the bound over weights");
  add_poly_options(minimize, poly);
  add_optimizer_options(minimize, opts);

  auto* oracle = app.add_subcommand("oracle", "exact grid minimum over weights k/D");
  add_poly_options(oracle, poly);
  oracle->add_option("--denominator", denominator, "grid denominator D")->capture_default_str();

  auto* classify = app.add_subcommand("classify", "decide whether the local volume is at least 9");
  classify->add_option("--descriptor", descriptor, "e.g. A2, Dinf, cA3, 1/3(1,1,2), hyp:x1*x2+x3^3+x4^4")->required();
  add_optimizer_options(classify, opts);

  auto* catalog = app.add_subcommand("catalog", "closed-form local volumes");
  catalog->add_option("--filter", filter, "substring of the descriptor name");
  catalog->add_flag("--known-volumes", known_volumes, "sorted list of known volumes in [9, 27]");

  auto* mld = app.add_subcommand("mld", "minimal log discrepancy and vol <= 9 mld");
  mld->add_option("--descriptor", descriptor, "descriptor")->required();

  auto* screen = app.add_subcommand("screen", "restrict singularities of a K-semistable Fano threefold");
  screen->add_option("--volume", volume, "anticanonical volume V (integer, p/q or decimal)");
  screen->add_option("--table", table, "file of 'family,volume' lines");
  screen->add_flag("--smoothable", smoothable, "the Fano is Q-Gorenstein smoothable");

  auto* repro = app.add_subcommand("reproduce", "recompute every reference value");
  repro->add_option("--section", section, "one section: " + [] {
    std::string s;
    for (const auto& name : reproduce_sections()) s += (s.empty() ? "" : ", ") + name;
    return s;
  }());

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  try {
    Report report;
    if (chosen == bound) {
      const PolySupport f = load_poly(poly);
      const AnyWeight w = parse_weight(weight_text);
      report = std::visit([&](const auto& ww) { return bound_report(f, ww, n); }, w);
    } else if (chosen == minimize) {
      const PolySupport f = load_poly(poly);
      report = minimize_report(f, opts);
    } else if (chosen == oracle) {
      report = oracle_report(load_poly(poly), denominator);
    } else if (chosen == classify) {
      report = classify_report(descriptor, opts);
    } else if (chosen == catalog) {
      report = catalog_report(filter, known_volumes);
    } else if (chosen == mld) {
      report = mld_report(descriptor);
    } else if (chosen == screen) {
      report = screen_report(volume, table, smoothable);
    } else {
      report = reproduce_report(section, opts);
    }
    emit(report, format, command, out);
    return report.exit_code;
  } catch (const Error& e) {
    err << "nvol " << command << ": " << to_string(e.kind()) << ": " << e.what() << "\n";
    return is_validation_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "nvol " << command << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nvol::cli
