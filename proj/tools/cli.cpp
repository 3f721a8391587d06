#include "cli.hpp"

#include <glob.h>
#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "hyparr/coxeter.hpp"
#include "hyparr/derivations.hpp"
#include "hyparr/error.hpp"
#include "hyparr/freeness.hpp"
#include "hyparr/io.hpp"
#include "hyparr/lattice.hpp"

#ifndef HYPARR_VERSION
#define HYPARR_VERSION "0.0.0"
#endif

namespace hyparr::cli {

namespace {

using nlohmann::json;

/// Bad file names, unreadable files and malformed option values.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Outcome {
  json result = json::object();
  std::optional<json> certificate;
  std::string text;
};

struct Input {
  std::string bytes;
  std::string digest;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return "sha256:" + os.str();
}

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return to_string(z);
}

json exponents_json(const std::vector<int>& e) { return json(e); }

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i > 0 ? " " : "") + std::to_string(v[i]);
  return s;
}

json certificate_json(const FreenessCertificate& c, std::span<const std::string> vars) {
  json j;
  j["status"] = to_string(c.status);
  j["exponents"] = c.exponents ? exponents_json(*c.exponents) : json(nullptr);
  if (c.basis) {
    json b = json::array();
    for (const auto& f : *c.basis) b.push_back(f.to_string(vars));
    j["basis"] = b;
  } else {
    j["basis"] = nullptr;
  }
  j["obstruction"] = c.obstruction ? integer_json(*c.obstruction) : json(nullptr);
  j["method"] = to_string(c.method);
  j["charpoly"] = c.charpoly ? json(c.charpoly->to_string()) : json(nullptr);
  json checks = json::array();
  for (const auto& ch : c.checks) checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
  j["checks"] = checks;
  return j;
}

std::string certificate_text(const FreenessCertificate& c, std::span<const std::string> vars) {
  std::ostringstream os;
  os << "status: " << to_string(c.status) << "\n";
  if (c.exponents) os << "exponents: " << join_ints(*c.exponents) << "\n";
  os << "method: " << to_string(c.method) << "\n";
  if (c.obstruction) os << "obstruction: " << to_string(*c.obstruction) << "\n";
  if (c.charpoly) os << "charpoly: " << c.charpoly->to_string() << "\n";
  if (c.basis) {
    for (const auto& f : *c.basis) os << "basis: " << f.to_string(vars) << "\n";
  }
  for (const auto& ch : c.checks) {
    os << "check: " << ch.name << " " << (ch.passed ? "pass" : "fail");
    if (!ch.detail.empty()) os << " (" << ch.detail << ")";
    os << "\n";
  }
  for (const auto& n : c.notes) os << "note: " << n << "\n";
  return os.str();
}

void attach_certificate(Outcome& o, const FreenessCertificate& c, std::span<const std::string> vars) {
  o.certificate = certificate_json(c, vars);
  o.result["notes"] = c.notes;
  o.text = certificate_text(c, vars);
}

std::pair<int, int> parse_window(const std::string& w) {
  const auto colon = w.find(':');
  if (colon == std::string::npos) throw UsageError("window must be LO:HI, got '" + w + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string lo = w.substr(0, colon), hi = w.substr(colon + 1);
    const int a = std::stoi(lo, &p1), b = std::stoi(hi, &p2);
    if (p1 != lo.size() || p2 != hi.size()) throw std::invalid_argument("trailing");
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("window must be LO:HI with integers, got '" + w + "'");
  }
}

CharpolyMethod parse_method(const std::string& m) {
  if (m == "mobius") return CharpolyMethod::mobius;
  if (m == "delres") return CharpolyMethod::delres;
  if (m == "ff") return CharpolyMethod::finitefield;
  throw UsageError("unknown charpoly method '" + m + "'");
}

std::vector<std::string> glob_files(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> out;
  if (::glob(pattern.c_str(), 0, nullptr, &g) == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  return out;  // glob sorts its matches
}

struct Settings {
  bool json = false;
  bool timing = false;
  std::optional<std::size_t> budget;
  std::optional<std::uint64_t> seed;

  FreenessOptions freeness() const {
    FreenessOptions o;
    if (budget) o.derivations.unknown_budget = *budget;
    return o;
  }
  DerivationOptions derivations() const { return freeness().derivations; }
};

json flats_json(const IntersectionLattice& lat) {
  json ranks = json::array();
  for (int r = 0; r <= lat.top_rank(); ++r) {
    json flats = json::array();
    const auto& fs = lat.flats(r);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      flats.push_back({{"members", fs[i].members}, {"mobius", integer_json(lat.mobius(r, i))}});
    }
    ranks.push_back({{"rank", r}, {"flats", flats}});
  }
  return ranks;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact invariants and freeness certificates for hyperplane arrangements", "hyparr"};
  app.require_subcommand(1);
  Settings s;
  app.add_flag("--json", s.json, "Print a JSON report");
  app.add_flag("--timing", s.timing, "Include wall-clock time in the report");
  app.add_option("--budget", s.budget, "Largest number of unknowns per graded piece")->check(CLI::PositiveNumber);
  app.add_option("--seed", s.seed, "Seed recorded for randomized property runs");
  app.set_version_flag("--version", std::string(HYPARR_VERSION));

  std::string file, method = "mobius", basis_file, type, window, check, family, op = "exponents2";
  std::size_t pivot = 0;
  int max_degree = 0, rank = 0;
  bool ziegler_flag = false, cone_flag = false, out_of_domain = false;
  std::optional<std::size_t> free_pivot;

  const auto with_file = [&](CLI::App* sub) {
    sub->add_option("file", file, "Arrangement file")->required();
    sub->fallthrough();
    return sub;
  };
  auto* charpoly_cmd = with_file(app.add_subcommand("charpoly", "Characteristic polynomial"));
  charpoly_cmd->add_option("--method", method, "mobius, delres or ff");
  auto* lattice_cmd = with_file(app.add_subcommand("lattice", "Intersection lattice with Moebius values"));
  auto* chambers_cmd = with_file(app.add_subcommand("chambers", "Chambers and bounded chambers"));
  auto* betti_cmd = with_file(app.add_subcommand("betti", "Betti numbers"));
  auto* cone_cmd = with_file(app.add_subcommand("cone", "Cone over an affine arrangement"));
  auto* restrict_cmd = with_file(app.add_subcommand("restrict", "Restriction to a hyperplane"));
  restrict_cmd->add_option("--pivot", pivot, "Hyperplane index")->required();
  restrict_cmd->add_flag("--ziegler", ziegler_flag, "Ziegler multirestriction");
  auto* hilbert_cmd = with_file(app.add_subcommand("hilbert", "Hilbert function of D(A, m)"));
  hilbert_cmd->add_option("--max-degree", max_degree, "Largest degree")->required()->check(CLI::NonNegativeNumber);
  auto* exp2_cmd = with_file(app.add_subcommand("exponents2", "Exponents of a rank-2 multiarrangement"));
  auto* saito_cmd = with_file(app.add_subcommand("saito", "Saito's criterion on a candidate basis"));
  saito_cmd->add_option("--basis", basis_file, "Basis file, one vector field per line")->required();
  auto* free_cmd = with_file(app.add_subcommand("freetest", "Freeness decision with certificate"));
  free_cmd->add_option("--pivot", free_pivot, "Only test this pivot");
  auto* coxeter_cmd = app.add_subcommand("coxeter", "Truncated affine Weyl arrangement");
  auto* conj_cmd = app.add_subcommand("conjecture", "Exact conjecture checks");
  for (auto* sub : {coxeter_cmd, conj_cmd}) {
    sub->add_option("--type", type, "A, B, C, D or G")->required();
    sub->add_option("--rank", rank, "Rank")->required();
    sub->add_option("--window", window, "LO:HI")->required();
    sub->fallthrough();
  }
  coxeter_cmd->add_flag("--cone", cone_flag, "Print the cone");
  conj_cmd->add_option("--check", check, "rh, fe or hshift")->required()->check(CLI::IsMember({"rh", "fe", "hshift"}));
  conj_cmd->add_flag("--allow-out-of-domain", out_of_domain, "Run rh outside 0 <= a < b");
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an operation over many files");
  sweep_cmd->add_option("--family", family, "File glob")->required();
  sweep_cmd->add_option("--op", op, "Operation")->check(CLI::IsMember({"exponents2"}));
  sweep_cmd->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Exit::ok : Exit::usage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  std::string command;
  std::string digest_bytes;
  try {
    const auto load = [&] {
      digest_bytes = read_file(file);
      return parse_arrangement(digest_bytes);
    };
    if (charpoly_cmd->parsed()) {
      command = "charpoly";
      const auto f = load();
      const UniPoly chi = charpoly(f.arrangement, parse_method(method));
      o.result["charpoly"] = chi.to_string();
      o.result["method"] = method;
      o.text = chi.to_string() + "\n";
    } else if (lattice_cmd->parsed()) {
      command = "lattice";
      const auto f = load();
      const auto lat = intersection_lattice(f.arrangement);
      o.result["ranks"] = flats_json(lat);
      o.result["size"] = lat.size();
      std::ostringstream os;
      for (int r = 0; r <= lat.top_rank(); ++r) os << "rank " << r << ": " << lat.flats(r).size() << " flats\n";
      o.text = os.str();
    } else if (chambers_cmd->parsed()) {
      command = "chambers";
      const auto c = chamber_counts(load().arrangement);
      o.result["chambers"] = integer_json(c.chambers);
      o.result["bounded"] = integer_json(c.bounded);
      o.text = "chambers: " + to_string(c.chambers) + "\nbounded: " + to_string(c.bounded) + "\n";
    } else if (betti_cmd->parsed()) {
      command = "betti";
      const auto b = betti(load().arrangement);
      json arr = json::array();
      std::string t;
      for (const auto& x : b) {
        arr.push_back(integer_json(x));
        t += (t.empty() ? "" : " ") + to_string(x);
      }
      o.result["betti"] = arr;
      o.text = t + "\n";
    } else if (cone_cmd->parsed()) {
      command = "cone";
      const auto f = load();
      const Arrangement c = cone(f.arrangement);
      const std::string txt = serialize_arrangement(c, Multiplicity::constant(c.size(), 1));
      o.result["arrangement"] = txt;
      o.text = txt;
    } else if (restrict_cmd->parsed()) {
      command = "restrict";
      const auto f = load();
      if (pivot >= f.arrangement.size()) throw DimensionError("pivot " + std::to_string(pivot) + " out of range");
      std::string txt;
      int chart_pivot = 0;
      if (ziegler_flag) {
        const auto z = ziegler(f.arrangement, pivot);
        txt = serialize_arrangement(z.arrangement, z.multiplicity);
        chart_pivot = z.chart.pivot;
        o.result["multiplicity"] = z.multiplicity.values;
      } else {
        const auto r = restrict(f.arrangement, pivot);
        txt = serialize_arrangement(r.arrangement, Multiplicity::constant(r.arrangement.size(), 1));
        chart_pivot = r.chart.pivot;
        o.result["sources"] = r.sources;
      }
      o.result["arrangement"] = txt;
      o.result["chart_pivot"] = chart_pivot;
      o.text = txt;
    } else if (hilbert_cmd->parsed()) {
      command = "hilbert";
      const auto f = load();
      const auto h = hilbert(f.arrangement, f.multiplicity, max_degree, s.derivations());
      json arr = json::array();
      std::ostringstream os;
      for (const auto& [d, n] : h) {
        arr.push_back({{"degree", d}, {"dim", n}});
        os << d << " " << n << "\n";
      }
      o.result["hilbert"] = arr;
      o.text = os.str();
    } else if (exp2_cmd->parsed()) {
      command = "exponents2";
      const auto f = load();
      const auto [d1, d2] = exponents_rank2(f.arrangement, f.multiplicity, s.derivations());
      o.result["exponents"] = {d1, d2};
      o.text = std::to_string(d1) + " " + std::to_string(d2) + "\n";
    } else if (saito_cmd->parsed()) {
      command = "saito";
      const auto f = load();
      const std::string basis_text = read_file(basis_file);
      digest_bytes += basis_text;
      const auto basis = parse_basis(basis_text, f.variables);
      attach_certificate(o, saito_check(f.arrangement, f.multiplicity, basis), f.variables);
    } else if (free_cmd->parsed()) {
      command = "freetest";
      const auto f = load();
      FreenessOptions opt = s.freeness();
      opt.pivot = free_pivot;
      attach_certificate(o, free_test(f.arrangement, opt), f.variables);
    } else if (coxeter_cmd->parsed()) {
      command = "coxeter";
      const auto phi = positive_roots(parse_family(type), rank);
      const auto [lo, hi] = parse_window(window);
      Arrangement a = deformation(DeformationSpec{phi, lo, hi});
      if (cone_flag) a = cone(a);
      const std::string txt = serialize_arrangement(a, Multiplicity::constant(a.size(), 1));
      digest_bytes = type + std::to_string(rank) + window;
      o.result["root_system"] = phi.name();
      o.result["exponents"] = phi.exponents;
      o.result["coxeter_number"] = phi.coxeter_number;
      o.result["window"] = {lo, hi};
      o.result["cone"] = cone_flag;
      o.result["arrangement"] = txt;
      o.text = txt;
    } else if (conj_cmd->parsed()) {
      command = "conjecture";
      const auto phi = positive_roots(parse_family(type), rank);
      const auto [lo, hi] = parse_window(window);
      digest_bytes = type + std::to_string(rank) + window + check;
      const int a = -lo, b = hi;
      ConjectureResult r;
      if (check == "rh") r = conjecture_rh(phi, a, b, out_of_domain);
      if (check == "fe") r = conjecture_fe(phi, a, b);
      if (check == "hshift") r = conjecture_hshift(phi, a, b);
      o.result["check"] = check;
      o.result["root_system"] = phi.name();
      o.result["window"] = {lo, hi};
      o.result["holds"] = r.holds;
      o.result["in_domain"] = r.in_domain;
      o.result["charpoly"] = r.charpoly.to_string();
      o.result["center"] = r.center ? json(to_string(*r.center)) : json(nullptr);
      o.result["witness"] = r.witness;
      std::ostringstream os;
      os << "holds: " << (r.holds ? "true" : "false") << "\n";
      if (r.center) os << "center: " << to_string(*r.center) << "\n";
      os << "charpoly: " << r.charpoly.to_string() << "\n";
      if (!r.in_domain) os << "note: outside the conjecture's stated domain\n";
      if (!r.witness.empty()) os << "witness: " << r.witness << "\n";
      o.text = os.str();
    } else if (sweep_cmd->parsed()) {
      command = "sweep";
      const auto files = glob_files(family);
      if (files.empty()) throw UsageError("no files match '" + family + "'");
      json results = json::array();
      std::ostringstream os;
      for (const auto& path : files) {
        const std::string bytes = read_file(path);
        digest_bytes += bytes;
        json entry = {{"file", path}};
        try {
          const auto f = parse_arrangement(bytes);
          const auto [d1, d2] = exponents_rank2(f.arrangement, f.multiplicity, s.derivations());
          entry["exponents"] = {d1, d2};
          os << path << ": " << d1 << " " << d2 << "\n";
        } catch (const ResourceError&) {
          throw;
        } catch (const Error& e) {
          entry["error"] = e.what();
          os << path << ": error: " << e.what() << "\n";
        }
        results.push_back(entry);
      }
      o.result["op"] = op;
      o.result["results"] = results;
      o.text = os.str();
    }
  } catch (const ResourceError& e) {
    err << "hyparr: resource budget exceeded: " << e.what() << "\n";
    return Exit::resource;
  } catch (const InvariantViolation& e) {
    err << "hyparr: internal invariant violated: " << e.what() << "\n";
    return Exit::internal;
  } catch (const Error& e) {
    err << "hyparr: " << e.what() << "\n";
    return Exit::usage;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (s.json) {
    json report;
    report["command"] = command;
    report["input_digest"] = sha256(digest_bytes);
    report["result"] = o.result;
    if (o.certificate) report["certificate"] = *o.certificate;
    report["tool_version"] = HYPARR_VERSION;
    if (s.seed) report["seed"] = *s.seed;
    if (s.timing) report["timing"] = {{"seconds", seconds}};
    out << report.dump(2) << "\n";
  } else {
    out << o.text;
    if (s.timing) out << "time: " << seconds << " s\n";
  }
  return Exit::ok;
}

}  // namespace hyparr::cli
