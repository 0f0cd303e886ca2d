#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "satotate/equidist.hpp"
#include "satotate/error.hpp"
#include "satotate/frobenius.hpp"
#include "satotate/galois_cm.hpp"
#include "satotate/lseries.hpp"
#include "satotate/st_groups.hpp"

namespace satotate::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr u64 kMaxBound = u64{1} << 31;

struct Common {
  std::string format = "json";
  u64 seed = 0;
  unsigned threads = 1;
  double z_threshold = kDefaultZThreshold;
  int k_max = 6;
  int bins = 40;
};

// Where class points come from: a curve scan, an input file of normalized
// traces, Haar samples, or the identity class (zeta).
struct Source {
  std::string curve;
  std::string ab;
  std::string input;
  u64 bound = 0;
  std::size_t haar = 0;
  bool zeta = false;
};

struct Samples {
  std::string description;
  int genus = 1;
  std::vector<double> traces;
  std::vector<ClassPoint> points;      // empty for --input
  std::vector<LabeledClass> labeled;   // empty unless p is known
  std::vector<u64> bad_primes;
  std::vector<TraceDatum> ec;
  std::vector<LocalFactorG2> g2;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

template <class T>
std::string num(T v)
  requires std::is_integral_v<T>
{
  return std::to_string(v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_table(std::ostream& out, const Table& t) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
    out << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json moment_rows_json(const std::vector<MomentRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"stat", to_string(r.stat)}, {"k", r.k}, {"empirical", r.empirical},
                   {"theoretical", r.theoretical}, {"z", r.z}});
  }
  return out;
}

void moment_rows_table(Table& t, const std::string& group, const std::vector<MomentRow>& rows) {
  for (const auto& r : rows) {
    t.rows.push_back({group, to_string(r.stat), num(r.k), num(r.empirical), num(r.theoretical), num(r.z)});
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string strip(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

long long parse_int(const std::string& text, const std::string& what) {
  const std::string s = strip(text);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorKind::InvalidArgument, "bad integer '" + text + "' in " + what);
  }
  return v;
}

std::vector<int> parse_index_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  if (strip(text).empty()) return out;
  for (const auto& part : split(text, ',')) out.push_back(static_cast<int>(parse_int(part, what)));
  return out;
}

double parse_rational(const std::string& text) {
  const std::string s = strip(text);
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return std::stod(s);
    const double den = std::stod(s.substr(slash + 1));
    if (den == 0.0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + text + "'");
    return std::stod(s.substr(0, slash)) / den;
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "bad density '" + text + "'");
  }
}

using Curve = std::variant<EllipticCurveQ, HyperCurveQ>;

std::optional<Curve> parse_curve(const Source& src) {
  if (!src.ab.empty()) {
    const auto parts = split(src.ab, ',');
    if (parts.size() != 2) throw Error(ErrorKind::InvalidArgument, "--ab expects 'a,b'");
    return EllipticCurveQ(parse_int(parts[0], "--ab"), parse_int(parts[1], "--ab"));
  }
  if (src.curve.empty()) return std::nullopt;
  const IntPoly f = IntPoly::parse(src.curve);
  if (f.degree() == 3) {
    if (f.leading() != 1 || f[2] != 0) {
      throw Error(ErrorKind::InvalidArgument, "genus-1 curves must be given as x^3 + a*x + b");
    }
    return EllipticCurveQ(f[1], f[0]);
  }
  if (f.degree() == 5 || f.degree() == 6) return HyperCurveQ(f);
  throw Error(ErrorKind::InvalidArgument, "curve polynomial must have degree 3, 5 or 6");
}

std::vector<double> read_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string s = strip(line);
    if (s.empty() || s.front() == '#') continue;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorKind::InvalidArgument, "bad value '" + line + "' in " + path);
    }
    out.push_back(v);
  }
  return out;
}

class Runner {
 public:
  Runner(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
      : args_(args), out_(out), err_(err) {}

  int run();

 private:
  json header() const {
    return json{{"tool_version", kToolVersion}, {"argv", args_}, {"seed", common_.seed}};
  }
  void emit(json doc, const Table& table) {
    if (common_.format == "csv") {
      write_table(out_, table);
    } else {
      json full = header();
      full.update(doc);
      out_ << full.dump(2) << '\n';
    }
  }

  void add_common(CLI::App* sub) {
    sub->add_option("--format", common_.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", common_.seed, "seed for sampled data");
    sub->add_option("--threads", common_.threads, "worker threads")->check(CLI::Range(1U, 256U));
    sub->add_option("--z-threshold", common_.z_threshold, "moment |z| cut-off")
        ->check(CLI::PositiveNumber);
    sub->add_option("--k-max", common_.k_max, "highest moment compared")->check(CLI::Range(1, kMaxDiagnosticMoment));
    sub->add_option("--bins", common_.bins, "histogram bins")->check(CLI::Range(1, 1000000));
  }
  void add_source(CLI::App* sub, bool allow_input, bool allow_haar, bool allow_zeta) {
    auto* curve = sub->add_option("--curve", source_.curve, "right-hand side f(x) of y^2 = f(x)");
    auto* ab = sub->add_option("--ab", source_.ab, "y^2 = x^3 + a x + b as 'a,b'");
    curve->excludes(ab);
    sub->add_option("--bound", source_.bound, "largest prime scanned")->check(CLI::Range(u64{3}, kMaxBound));
    if (allow_input) sub->add_option("--input", source_.input, "file of normalized traces, one per line");
    if (allow_haar) sub->add_option("--haar", source_.haar, "draw N Haar samples of --group")
                        ->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
    if (allow_zeta) sub->add_flag("--zeta", source_.zeta, "use the identity class at every prime");
  }

  Samples load(const std::optional<GroupSpec>& group);
  GroupSpec group_or_default(int genus) const {
    if (group_name_.empty()) return GroupSpec::catalog(genus == 2 ? GroupId::USp4 : GroupId::SU2);
    return GroupSpec::parse(group_name_);
  }

  void ec_scan_cmd();
  void g2_scan_cmd();
  void power_seq_cmd();
  void moments_cmd();
  void classify_cmd();
  void char_sums_cmd();
  void euler_cmd();
  void chi_profile_cmd();
  void cebotarev_cmd();
  void pattern_cmd();
  void cm_rank_cmd();
  void st3_audit_cmd();
  void histogram_cmd();

  const std::vector<std::string>& args_;
  std::ostream& out_;
  std::ostream& err_;
  Common common_;
  Source source_;

  std::string group_name_;
  std::vector<std::string> irreps_;
  bool classify_ = false;
  bool with_data_ = false;
  std::string hybrid_;
  u64 q_ = 0;
  i64 a_q_ = 0;
  u64 count_ = 0;
  int k_ = 0;
  std::string stat_ = "a1";
  double s_ = 2.0;
  bool approach_ = false;
  u64 modulus_ = 0;
  std::string poly_;
  std::string expected_;
  std::string H_ = "trivial";
  std::string c_;
  std::string S_;
  bool all_ = false;
  std::optional<double> lo_, hi_;
};

Samples Runner::load(const std::optional<GroupSpec>& group) {
  Samples s;
  const auto curve = parse_curve(source_);
  const int sources = (curve ? 1 : 0) + (source_.input.empty() ? 0 : 1) + (source_.haar ? 1 : 0) + (source_.zeta ? 1 : 0);
  if (sources != 1) throw Error(ErrorKind::InvalidArgument, "give exactly one data source");
  if ((curve || source_.zeta) && source_.bound == 0) throw Error(ErrorKind::InvalidArgument, "--bound is required");

  if (curve && std::holds_alternative<EllipticCurveQ>(*curve)) {
    const auto& e = std::get<EllipticCurveQ>(*curve);
    auto scan = ec_scan(e, source_.bound, {common_.threads});
    s.description = e.to_string();
    s.bad_primes = std::move(scan.bad_primes);
    s.ec = std::move(scan.data);
    for (const auto& d : s.ec) s.traces.push_back(d.normalized);
    s.points = to_class_points(s.ec);
    s.labeled = label_classes(s.ec);
  } else if (curve) {
    const auto& h = std::get<HyperCurveQ>(*curve);
    auto scan = g2_scan(h, source_.bound, {common_.threads});
    s.description = h.to_string();
    s.genus = 2;
    s.bad_primes = std::move(scan.bad_primes);
    s.g2 = std::move(scan.data);
    for (const auto& d : s.g2) s.traces.push_back(d.a1());
    s.points = to_class_points(s.g2);
    s.labeled = label_classes(s.g2);
  } else if (!source_.input.empty()) {
    s.description = source_.input;
    s.traces = read_values(source_.input);
  } else if (source_.haar) {
    if (!group) throw Error(ErrorKind::InvalidArgument, "--haar needs --group");
    s.description = "haar:" + group->name();
    s.genus = group->genus();
    s.points = haar_sample(*group, source_.haar, common_.seed);
    for (const auto& x : s.points) s.traces.push_back(group->trace(x));
  } else {
    s.description = "zeta";
    s.labeled = identity_classes(source_.bound);
    for (const auto& l : s.labeled) {
      s.points.push_back(l.x);
      s.traces.push_back(2.0);
    }
  }
  if (!s.bad_primes.empty()) {
    err_ << "skipped primes:";
    for (u64 p : s.bad_primes) err_ << ' ' << p;
    err_ << '\n';
  }
  err_ << "loaded " << s.traces.size() << " samples from " << s.description << '\n';
  return s;
}

void Runner::ec_scan_cmd() {
  auto curve = parse_curve(source_);
  if (!curve || !std::holds_alternative<EllipticCurveQ>(*curve)) {
    throw Error(ErrorKind::InvalidArgument, "ec-scan needs a genus-1 --curve or --ab");
  }
  if (source_.bound == 0) throw Error(ErrorKind::InvalidArgument, "--bound is required");
  std::optional<std::pair<u64, u64>> hybrid;
  if (!hybrid_.empty()) {
    const auto parts = split(hybrid_, ',');
    if (parts.size() != 2) throw Error(ErrorKind::InvalidArgument, "--hybrid expects 'n,r'");
    const auto n = parse_int(parts[0], "--hybrid"), r = parse_int(parts[1], "--hybrid");
    if (n < 1 || r < 0) throw Error(ErrorKind::InvalidArgument, "--hybrid needs n >= 1 and r >= 0");
    hybrid = std::pair{static_cast<u64>(n), static_cast<u64>(r)};
  }
  const GroupSpec group = group_or_default(1);
  if (group.genus() != 1) throw Error(ErrorKind::InvalidArgument, "ec-scan compares against a genus-1 group");

  const auto& e = std::get<EllipticCurveQ>(*curve);
  auto scan = ec_scan(e, source_.bound, {common_.threads});
  if (!scan.bad_primes.empty()) {
    err_ << "skipped primes:";
    for (u64 p : scan.bad_primes) err_ << ' ' << p;
    err_ << '\n';
  }
  std::vector<TraceDatum> data = std::move(scan.data);
  if (hybrid) data = hybrid_filter(data, hybrid->first, hybrid->second);
  err_ << "ec-scan: " << data.size() << " primes\n";

  if (common_.format == "csv") {
    Table t{{"p", "a_p", "normalized"}, {}};
    for (const auto& d : data) t.rows.push_back({num(d.p), num(d.a_p), num(d.normalized)});
    emit({}, t);
    return;
  }

  std::vector<double> traces;
  std::size_t zeros = 0;
  for (const auto& d : data) {
    traces.push_back(d.normalized);
    zeros += d.a_p == 0 ? 1 : 0;
  }
  json doc{{"curve", e.to_string()}, {"bound", source_.bound}, {"n", data.size()},
           {"bad_primes", scan.bad_primes.size()}};
  if (hybrid) doc["hybrid"] = {{"n", hybrid->first}, {"residue", hybrid->second}};
  doc["zero_fraction"] = data.empty() ? 0.0 : static_cast<double>(zeros) / static_cast<double>(data.size());
  if (traces.empty()) {
    doc["verdict"] = to_string(Verdict::Inconclusive);
  } else if (classify_) {
    const auto c = classify_g1(traces, common_.z_threshold);
    json rows = json::object();
    for (const auto& [name, r] : c.rows) rows[name] = moment_rows_json(r);
    doc["verdict"] = to_string(c.result);
    if (c.result != G1Class::Inconclusive) {
      const GroupSpec winner = GroupSpec::parse(to_string(c.result));
      doc["moments"] = moment_rows_json(c.rows.at(winner.name()));
      doc["discrepancy"] = cdf_discrepancy(traces, winner);
    } else {
      doc["moments"] = json::array();
    }
    doc["classification"] = rows;
  } else {
    const auto rows = compare_moments(traces, group, common_.k_max);
    doc["group"] = group.name();
    doc["moments"] = moment_rows_json(rows);
    doc["discrepancy"] = cdf_discrepancy(traces, group);
    doc["verdict"] = to_string(moment_verdict(rows, traces.size(), common_.z_threshold));
  }
  if (with_data_) {
    json arr = json::array();
    for (const auto& d : data) arr.push_back({{"p", d.p}, {"a_p", d.a_p}, {"normalized", d.normalized}});
    doc["data"] = arr;
  }
  emit(doc, {});
}

void Runner::g2_scan_cmd() {
  auto curve = parse_curve(source_);
  if (!curve || !std::holds_alternative<HyperCurveQ>(*curve)) {
    throw Error(ErrorKind::InvalidArgument, "g2-scan needs a --curve of degree 5 or 6");
  }
  if (source_.bound == 0) throw Error(ErrorKind::InvalidArgument, "--bound is required");
  const GroupSpec group = group_or_default(2);
  if (group.genus() != 2) throw Error(ErrorKind::InvalidArgument, "g2-scan compares against a genus-2 group");
  const Samples s = load(group);

  if (common_.format == "csv") {
    Table t{{"p", "e1", "e2", "theta1", "theta2", "a1", "a2"}, {}};
    for (const auto& d : s.g2) {
      t.rows.push_back({num(d.p), num(d.e1), num(d.e2), num(d.theta1), num(d.theta2), num(d.a1()), num(d.a2())});
    }
    emit({}, t);
    return;
  }
  json doc{{"curve", s.description}, {"bound", source_.bound}, {"n", s.g2.size()},
           {"bad_primes", s.bad_primes.size()}, {"group", group.name()}};
  if (s.traces.empty()) {
    doc["verdict"] = to_string(Verdict::Inconclusive);
  } else {
    DiagnoseOptions opts;
    opts.k_max = common_.k_max;
    opts.z_threshold = common_.z_threshold;
    const auto report = diagnose(s.points, s.traces, group, opts);
    doc["moments"] = moment_rows_json(report.moments);
    doc["discrepancy"] = report.discrepancy;
    doc["verdict"] = to_string(report.verdict);
  }
  if (with_data_) {
    json arr = json::array();
    for (const auto& d : s.g2) {
      arr.push_back({{"p", d.p}, {"e1", d.e1}, {"e2", d.e2}, {"theta1", d.theta1}, {"theta2", d.theta2}});
    }
    doc["data"] = arr;
  }
  emit(doc, {});
}

void Runner::power_seq_cmd() {
  const GroupSpec group = group_name_.empty() ? GroupSpec::catalog(GroupId::U1) : GroupSpec::parse(group_name_);
  if (group.genus() != 1) throw Error(ErrorKind::InvalidArgument, "power-seq compares against a genus-1 group");
  const PowerSeq seq = power_sequence(q_, a_q_, count_);
  err_ << "power-seq: " << seq.terms.size() << " terms\n";
  if (common_.format == "csv") {
    Table t{{"n", "term", "angle"}, {}};
    for (std::size_t i = 0; i < seq.terms.size(); ++i) t.rows.push_back({num(i + 1), num(seq.terms[i]), num(seq.angles[i])});
    emit({}, t);
    return;
  }
  const auto rows = compare_moments(seq.terms, group, common_.k_max);
  json doc{{"q", q_}, {"a_q", a_q_}, {"n", count_}, {"ordinary", is_ordinary(q_, a_q_)},
           {"alpha", complex_json(seq.alpha)}, {"group", group.name()}, {"moments", moment_rows_json(rows)},
           {"discrepancy", cdf_discrepancy(seq.terms, group)},
           {"verdict", to_string(moment_verdict(rows, seq.terms.size(), common_.z_threshold))}};
  emit(doc, {});
}

void Runner::moments_cmd() {
  if (group_name_.empty()) throw Error(ErrorKind::InvalidArgument, "--group is required");
  const GroupSpec group = GroupSpec::parse(group_name_);
  const Statistic stat = stat_ == "a2" ? Statistic::A2 : Statistic::A1;
  if (stat == Statistic::A2 && group.genus() != 2) throw Error(ErrorKind::InvalidArgument, "a2 needs a genus-2 group");
  double value = 0.0;
  MomentMethod method = MomentMethod::Quadrature;
  if (stat == Statistic::A1) {
    const auto m = trace_moment(group, k_);
    value = m.value;
    method = m.method;
  } else {
    value = statistic_moment(group, stat, k_);
  }
  Table t{{"group", "stat", "k", "value", "method"}, {{group.name(), to_string(stat), num(k_), num(value), to_string(method)}}};
  emit({{"group", group.name()}, {"stat", to_string(stat)}, {"k", k_}, {"value", value}, {"method", to_string(method)}}, t);
}

void Runner::classify_cmd() {
  const Samples s = load(std::nullopt);
  if (s.genus != 1) throw Error(ErrorKind::InvalidArgument, "classify handles genus-1 data");
  const auto c = classify_g1(s.traces, common_.z_threshold);
  Table t{{"group", "stat", "k", "empirical", "theoretical", "z"}, {}};
  json rows = json::object();
  for (const auto& [name, r] : c.rows) {
    rows[name] = moment_rows_json(r);
    moment_rows_table(t, name, r);
  }
  emit({{"source", s.description}, {"n", s.traces.size()}, {"verdict", to_string(c.result)}, {"rows", rows}}, t);
}

void Runner::char_sums_cmd() {
  if (irreps_.empty()) throw Error(ErrorKind::InvalidArgument, "--irrep is required");
  if (source_.haar && group_name_.empty()) throw Error(ErrorKind::InvalidArgument, "--haar needs --group");
  std::optional<GroupSpec> haar_group;
  if (source_.haar) haar_group = GroupSpec::parse(group_name_);
  const Samples s = load(haar_group);
  if (s.points.empty()) throw Error(ErrorKind::InvalidArgument, "char-sums needs class points, not --input");
  const GroupSpec group = haar_group ? *haar_group : group_or_default(s.genus);
  if (group.genus() != s.genus) throw Error(ErrorKind::InvalidArgument, "group genus does not match the data");

  Table t{{"irrep", "n", "re", "im"}, {}};
  json series = json::object();
  for (const auto& text : irreps_) {
    const IrrepSpec irrep = IrrepSpec::parse(text, group);
    json arr = json::array();
    for (const auto& pt : char_sum_series(s.points, irrep, group)) {
      arr.push_back({{"n", pt.n}, {"re", pt.mean.real()}, {"im", pt.mean.imag()}});
      t.rows.push_back({irrep.label(), num(pt.n), num(pt.mean.real()), num(pt.mean.imag())});
    }
    series[irrep.label()] = arr;
  }
  emit({{"source", s.description}, {"group", group.name()}, {"n", s.points.size()}, {"series", series}}, t);
}

void Runner::euler_cmd() {
  if (irreps_.empty()) irreps_.push_back("trivial");
  if (!source_.zeta && source_.ab.empty() && source_.curve.empty()) {
    throw Error(ErrorKind::InvalidArgument, "euler needs --curve, --ab or --zeta");
  }
  const std::vector<double> grid = approach_ ? approach_grid() : std::vector<double>{s_};
  for (double s : grid) {
    if (!(s > 1.0)) throw Error(ErrorKind::InvalidArgument, "--s must exceed 1");
  }
  const Samples data = load(std::nullopt);
  const GroupSpec group = group_or_default(data.genus);
  std::vector<IrrepSpec> irreps;
  for (const auto& text : irreps_) irreps.push_back(IrrepSpec::parse(text, group));

  Table t{{"s", "log_re", "log_im", "terms_used", "F_re", "F_im"}, {}};
  json evals = json::array();
  for (double s : grid) {
    const EulerEval e = partial_euler(data.labeled, irreps, s, source_.bound);
    std::complex<double> F = 0.0;
    for (const auto& r : irreps) F += dirichlet_F(data.labeled, r, s, source_.bound);
    evals.push_back({{"s", s}, {"log_value", complex_json(e.log_value)}, {"terms_used", e.terms_used},
                     {"F", complex_json(F)}});
    t.rows.push_back({num(s), num(e.log_value.real()), num(e.log_value.imag()), num(e.terms_used), num(F.real()),
                      num(F.imag())});
  }
  json labels = json::array();
  for (const auto& r : irreps) labels.push_back(r.label());
  emit({{"source", data.description}, {"bound", source_.bound}, {"irreps", labels}, {"evaluations", evals}}, t);
}

void Runner::chi_profile_cmd() {
  if (irreps_.size() != 1) throw Error(ErrorKind::InvalidArgument, "chi-profile needs exactly one --irrep");
  if (!source_.zeta && source_.ab.empty() && source_.curve.empty()) {
    throw Error(ErrorKind::InvalidArgument, "chi-profile needs --curve, --ab or --zeta");
  }
  const Samples data = load(std::nullopt);
  const GroupSpec group = group_or_default(data.genus);
  const IrrepSpec irrep = IrrepSpec::parse(irreps_.front(), group);
  const ChiProfile profile = chi_sum_profile(data.labeled, irrep);
  Table t{{"n", "value"}, {}};
  json points = json::array();
  for (const auto& [n, v] : profile.points) {
    points.push_back({{"n", n}, {"value", v}});
    t.rows.push_back({num(n), num(v)});
  }
  emit({{"source", data.description}, {"bound", source_.bound}, {"irrep", irrep.label()}, {"points", points},
        {"trend_slope", profile.trend_slope}, {"trend_is_heuristic", true}},
       t);
}

json density_json(const DensityReport& r, Table& t) {
  t.header = {"class", "count", "empirical", "theoretical"};
  json classes = json::array();
  for (const auto& c : r.classes) {
    json row{{"class", c.label}, {"count", c.count}, {"empirical", c.empirical}};
    row["theoretical"] = c.theoretical ? json(*c.theoretical) : json(nullptr);
    classes.push_back(row);
    t.rows.push_back({c.label, num(c.count), num(c.empirical), c.theoretical ? num(*c.theoretical) : ""});
  }
  json doc{{"descriptor", r.descriptor}, {"bound", r.bound}, {"total", r.total}, {"classes", classes}};
  doc["max_deviation"] = r.max_deviation();
  return doc;
}

void Runner::cebotarev_cmd() {
  if (source_.bound == 0) throw Error(ErrorKind::InvalidArgument, "--bound is required");
  const auto report = cyclotomic_densities(modulus_, source_.bound, common_.threads);
  Table t;
  emit(density_json(report, t), t);
}

void Runner::pattern_cmd() {
  if (source_.bound == 0) throw Error(ErrorKind::InvalidArgument, "--bound is required");
  const IntPoly f = IntPoly::parse(poly_);
  std::optional<std::map<std::vector<int>, double>> expected;
  if (!expected_.empty()) {
    expected.emplace();
    for (const auto& item : split(expected_, ';')) {
      if (strip(item).empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::InvalidArgument, "--expected items look like '1,2=1/2'");
      auto pattern = parse_index_list(item.substr(0, eq), "--expected");
      std::sort(pattern.begin(), pattern.end());
      (*expected)[pattern] = parse_rational(item.substr(eq + 1));
    }
  }
  const auto report = pattern_densities(f, source_.bound, expected, common_.threads);
  Table t;
  emit(density_json(report, t), t);
}

void Runner::cm_rank_cmd() {
  if (group_name_.empty()) throw Error(ErrorKind::InvalidArgument, "--group is required");
  FiniteGroup g = FiniteGroup::from_spec(group_name_);

  if (all_) {
    const auto specs = all_cm_types(g);
    Table t{{"H", "c", "S", "nu", "rank", "oracle_rank"}, {}};
    json rows = json::array();
    bool agree = true;
    for (const auto& spec : specs) {
      const auto r = cm_rank(spec);
      const int oracle = cm_rank_oracle(spec);
      agree = agree && oracle == r.cm_rank;
      rows.push_back({{"H", spec.H}, {"c", spec.c}, {"S", spec.S}, {"nu", r.nu}, {"rank", r.cm_rank},
                      {"oracle_rank", oracle}});
      auto list = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
        return s;
      };
      t.rows.push_back({list(spec.H), num(spec.c), list(spec.S), num(r.nu), num(r.cm_rank), num(oracle)});
    }
    emit({{"group", g.name()}, {"count", specs.size()}, {"ranks_agree", agree}, {"types", rows}}, t);
    return;
  }

  CMTypeSpec spec{g, {}, 0, {}};
  spec.H = H_ == "trivial" ? std::vector<int>{g.identity()} : parse_index_list(H_, "--H");
  std::sort(spec.H.begin(), spec.H.end());
  if (c_.empty()) throw Error(ErrorKind::InvalidArgument, "--c is required");
  spec.c = static_cast<int>(parse_int(c_.front() == 'g' ? c_.substr(1) : c_, "--c"));
  spec.S = parse_index_list(S_, "--S");
  const auto r = cm_rank(spec);
  const int oracle = cm_rank_oracle(spec);
  Table t{{"nu", "rank", "torus_dim", "oracle_rank"}, {{num(r.nu), num(r.cm_rank), num(r.nu), num(oracle)}}};
  emit({{"group", g.name()},
        {"H", spec.H},
        {"c", spec.c},
        {"S", spec.S},
        {"cosets", g.right_cosets(spec.H)},
        {"translate", r.translate},
        {"S_used", r.S},
        {"reflex_stabilizer", r.reflex_stabilizer},
        {"R", r.R},
        {"D", r.D},
        {"nu", r.nu},
        {"rank", r.cm_rank},
        {"torus_dim", r.nu},
        {"oracle_rank", oracle}},
       t);
}

void Runner::st3_audit_cmd() {
  std::vector<GroupSpec> groups;
  if (group_name_.empty()) {
    groups = GroupSpec::catalog_all();
  } else {
    groups.push_back(GroupSpec::parse(group_name_));
  }
  Table t{{"group", "component", "selector", "value", "imag", "integer"}, {}};
  json rows = json::array();
  bool all_pass = true;
  for (const auto& g : groups) {
    for (const auto& row : st3_audit(g)) {
      all_pass = all_pass && row.result.is_integer;
      rows.push_back({{"group", row.group}, {"component", row.component}, {"selector", row.selector},
                      {"value", row.result.value}, {"imag", row.result.imag}, {"integer", row.result.is_integer}});
      t.rows.push_back({row.group, row.component, row.selector, num(row.result.value), num(row.result.imag),
                        row.result.is_integer ? "true" : "false"});
    }
  }
  emit({{"all_pass", all_pass}, {"rows", rows}}, t);
}

void Runner::histogram_cmd() {
  std::optional<GroupSpec> group;
  if (!group_name_.empty()) group = GroupSpec::parse(group_name_);
  const Samples s = load(group);
  const double bound = group ? group->trace_bound() : (s.genus == 2 ? 4.0 : 2.0);
  const double lo = lo_.value_or(-bound), hi = hi_.value_or(bound);
  const auto rows = histogram(s.traces, common_.bins, lo, hi, group ? &*group : nullptr);
  Table t{{"bin_left", "bin_right", "count", "empirical_density", "theoretical_density"}, {}};
  json arr = json::array();
  for (const auto& r : rows) {
    json row{{"bin_left", r.left}, {"bin_right", r.right}, {"count", r.count}, {"empirical_density", r.empirical_density}};
    row["theoretical_density"] = r.theoretical_density ? json(*r.theoretical_density) : json(nullptr);
    arr.push_back(row);
    t.rows.push_back({num(r.left), num(r.right), num(r.count), num(r.empirical_density),
                      r.theoretical_density ? num(*r.theoretical_density) : ""});
  }
  json doc{{"source", s.description}, {"n", s.traces.size()}, {"bins", common_.bins}, {"rows", arr}};
  doc["group"] = group ? json(group->name()) : json(nullptr);
  emit(doc, t);
}

int Runner::run() {
  CLI::App app{"Frobenius statistics and Sato-Tate diagnostics", "satotate"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::map<CLI::App*, std::function<void()>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, void (Runner::*fn)()) {
    auto* s = app.add_subcommand(name, help);
    add_common(s);
    handlers[s] = [this, fn] { (this->*fn)(); };
    return s;
  };

  auto* ec = sub("ec-scan", "Frobenius traces of an elliptic curve", &Runner::ec_scan_cmd);
  add_source(ec, false, false, false);
  ec->add_flag("--classify", classify_, "classify as U1, NU1 or SU2");
  ec->add_option("--group", group_name_, "group to compare against (default SU2)");
  ec->add_option("--hybrid", hybrid_, "keep primes p = r mod n, given as 'n,r'");
  ec->add_flag("--data", with_data_, "include every trace in the JSON");

  auto* g2 = sub("g2-scan", "local factors of a genus-2 curve", &Runner::g2_scan_cmd);
  add_source(g2, false, false, false);
  g2->add_option("--group", group_name_, "group to compare against (default USp4)");
  g2->add_flag("--data", with_data_, "include every local factor in the JSON");

  auto* ps = sub("power-seq", "normalized traces a_{q^n} of one Frobenius", &Runner::power_seq_cmd);
  ps->add_option("--q", q_, "prime power q")->required()->check(CLI::Range(u64{2}, kMaxBound));
  ps->add_option("--aq", a_q_, "trace a_q")->required();
  ps->add_option("--n", count_, "number of powers")->required()->check(CLI::Range(u64{1}, u64{100000000}));
  ps->add_option("--group", group_name_, "group to compare against (default U1)");

  auto* mo = sub("moments", "Haar moments of trace or a2", &Runner::moments_cmd);
  mo->add_option("--group", group_name_, "catalog group")->required();
  mo->add_option("--k", k_, "moment order")->required()->check(CLI::Range(0, 24));
  mo->add_option("--stat", stat_, "a1 or a2")->check(CLI::IsMember({"a1", "a2"}));

  auto* cl = sub("classify", "classify genus-1 trace data by moments", &Runner::classify_cmd);
  add_source(cl, true, false, false);

  auto* cs = sub("char-sums", "partial means of irreducible characters", &Runner::char_sums_cmd);
  add_source(cs, false, true, false);
  cs->add_option("--group", group_name_, "group the characters live on");
  cs->add_option("--irrep", irreps_, "phi:a, sym:m, gamma:a,b or trivial")->required();

  auto* eu = sub("euler", "partial Euler products and F(s)", &Runner::euler_cmd);
  add_source(eu, false, false, true);
  eu->add_option("--group", group_name_, "group the representations live on");
  eu->add_option("--irrep", irreps_, "representation(s); several give a direct sum");
  auto* s_opt = eu->add_option("--s", s_, "real s > 1");
  eu->add_flag("--approach", approach_, "evaluate on s = 1 + 2^-j, j = 1..8")->excludes(s_opt);

  auto* cp = sub("chi-profile", "S(n) log n / n for one character", &Runner::chi_profile_cmd);
  add_source(cp, false, false, true);
  cp->add_option("--group", group_name_, "group the representation lives on");
  cp->add_option("--irrep", irreps_, "representation")->required();

  auto* cb = sub("cebotarev", "prime densities in residue classes mod n", &Runner::cebotarev_cmd);
  cb->add_option("--n", modulus_, "modulus")->required()->check(CLI::Range(u64{3}, u64{1000000}));
  cb->add_option("--bound", source_.bound, "largest prime")->required()->check(CLI::Range(u64{3}, kMaxBound));

  auto* pa = sub("pattern", "factorization-pattern densities of a polynomial", &Runner::pattern_cmd);
  pa->add_option("--poly", poly_, "integer polynomial in x")->required();
  pa->add_option("--bound", source_.bound, "largest prime")->required()->check(CLI::Range(u64{3}, kMaxBound));
  pa->add_option("--expected", expected_, "predicted densities, e.g. '1,1,1=1/6;1,2=1/2;3=1/3'");

  auto* cm = sub("cm-rank", "rank of a CM type", &Runner::cm_rank_cmd);
  cm->add_option("--group", group_name_, "cyclic:n, dihedral:n, quaternion, product:A*B or table:path")->required();
  cm->add_option("--H", H_, "subgroup as element indices, or 'trivial'");
  cm->add_option("--c", c_, "complex conjugation, element index (gK means index K)");
  cm->add_option("--S", S_, "CM type as right-coset indices");
  cm->add_flag("--all", all_, "enumerate every CM type of the group");

  auto* st = sub("st3-audit", "integrality of component moments", &Runner::st3_audit_cmd);
  st->add_option("--group", group_name_, "catalog group (default: all)");

  auto* hi = sub("histogram", "binned trace distribution", &Runner::histogram_cmd);
  add_source(hi, true, true, false);
  hi->add_option("--group", group_name_, "group for the theoretical column");
  hi->add_option("--lo", lo_, "left end of the range");
  hi->add_option("--hi", hi_, "right end of the range");

  try {
    std::vector<std::string> reversed(args_.rbegin(), args_.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_, err_);
    if (code == 0) return 0;
    const CLI::App* target = &app;
    for (const auto* s : app.get_subcommands()) target = s;
    err_ << target->help();
    return 2;
  }

  try {
    for (auto* s : app.get_subcommands()) handlers.at(s)();
  } catch (const Error& e) {
    err_ << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.is_validation() ? 2 : 3;
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Runner(args, out, err).run();
}

}  // namespace satotate::cli
