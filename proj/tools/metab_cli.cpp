// metab: command-line front end.
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource ceiling.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "metab/elem.hpp"
#include "metab/ia.hpp"
#include "metab/ksym.hpp"
#include "metab/magnus.hpp"
#include "metab/verify.hpp"
#include "metab/witness_io.hpp"

using nlohmann::json;
using namespace metab;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kCeiling = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int n = 4;
  long m = 2;
  bool json = false;
  bool timing = false;
  std::uint64_t seed = 1;
  std::string output;
};

class Clock {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// Items are sorted by name so the report does not depend on execution order.
json report(const std::string& command, const Config& c, std::vector<json> items, const Clock& clock) {
  std::stable_sort(items.begin(), items.end(),
                   [](const json& a, const json& b) { return a.at("name").get<std::string>() < b.at("name").get<std::string>(); });
  bool pass = std::all_of(items.begin(), items.end(), [](const json& i) { return i.at("pass").get<bool>(); });
  json r = {{"tool", "metab"}, {"version", kVersion}, {"command", command}, {"n", c.n},
            {"m", c.m},        {"seed", c.seed},      {"items", items},     {"pass", pass}};
  if (c.timing) r["wall_time_ms"] = clock.ms();
  return r;
}

void emit(const Config& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw UsageError("cannot write " + c.output);
  f << text;
}

void emit_json(const Config& c, const json& j) { emit(c, j.dump(2) + "\n"); }

int exit_for(const json& r) { return r.at("pass").get<bool>() ? kOk : kFail; }

void check_n(int n, int lo) {
  if (n < lo) throw UsageError("--n must be at least " + std::to_string(lo));
}

void check_m(long m) {
  if (m < 2) throw UsageError("--m must be at least 2");
}

// ---------------------------------------------------------------- verify

struct VerifyOpts {
  std::vector<std::string> chains;
  bool list = false;
  int universality = 0;
};

json step_json(const StepReport& s) {
  json j = {{"index", s.index}, {"kind", s.kind}, {"line", s.line}, {"pass", s.pass}, {"detail", s.detail}};
  if (s.row) j["entry"] = {s.row, s.col};
  if (!s.witnesses.empty()) j["witnesses"] = s.witnesses;
  return j;
}

int cmd_verify(const Config& c, const VerifyOpts& o) {
  Clock clock;
  check_m(c.m);
  const auto& entries = builtin_suite_entries();
  if (o.list) {
    std::vector<json> items;
    std::ostringstream os;
    for (const auto& e : entries) {
      items.push_back({{"name", e.name}, {"display", e.display}, {"note", e.note}, {"pass", true}});
      os << e.name << "\t" << e.display << (e.note.empty() ? "" : "\t[" + e.note + "]") << "\n";
    }
    if (c.json)
      emit_json(c, report("verify --list", c, items, clock));
    else
      emit(c, os.str());
    return kOk;
  }
  std::vector<std::string> names = o.chains;
  if (names.empty())
    for (const auto& e : entries) names.push_back(e.name);
  std::vector<ChainScript> scripts;
  for (const auto& n : names) {
    const SuiteEntry* e = find_suite_entry(n);
    if (!e) throw UsageError("unknown chain '" + n + "'");
    scripts.push_back(parse_script(e->text));
  }
  std::vector<ChainReport> reps = run_suite(scripts, c.m);

  // Universality: re-check each script with random constraint-respecting
  // bindings; seeds derive from the script position so results are stable.
  std::vector<std::pair<int, std::string>> uni(scripts.size(), {0, ""});
  if (o.universality > 0) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < scripts.size(); ++k) {
      std::mt19937_64 rng(c.seed * 1000003u + k);
      for (int t = 0; t < o.universality; ++t) {
        auto b = random_bindings(scripts[k], c.m, rng);
        auto r = chain_check(universality_instantiate(scripts[k], b, c.m), c.m);
        if (r.pass) {
          ++uni[k].first;
        } else if (uni[k].second.empty()) {
          uni[k].second = "binding " + std::to_string(t) + " fails at step " + std::to_string(r.first_failure());
        }
      }
    }
  }

  std::vector<json> items;
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const auto& r = reps[k];
    json steps = json::array();
    for (const auto& s : r.steps) steps.push_back(step_json(s));
    bool pass = r.pass && uni[k].first == o.universality;
    json it = {{"name", r.name}, {"pass", pass}, {"symbolic_pass", r.pass}, {"steps", steps}};
    if (o.universality > 0) it["universality"] = {{"bindings", o.universality}, {"passed", uni[k].first}};
    items.push_back(it);
  }
  json rep = report("verify", c, items, clock);
  if (c.json) {
    emit_json(c, rep);
  } else {
    std::ostringstream os;
    int passed = 0;
    for (const auto& it : rep["items"]) {
      bool p = it["pass"].get<bool>();
      passed += p;
      os << (p ? "PASS " : "FAIL ") << it["name"].get<std::string>() << " (" << it["steps"].size() << " steps";
      if (it.contains("universality"))
        os << ", " << it["universality"]["passed"].get<int>() << "/" << o.universality << " bindings";
      os << ")\n";
      for (const auto& s : it["steps"])
        if (!s["pass"].get<bool>()) {
          os << "  step " << s["index"].get<int>() << " (" << s["kind"].get<std::string>() << ", line "
             << s["line"].get<int>() << "): " << s["detail"].get<std::string>() << "\n";
          break;
        }
    }
    os << passed << "/" << rep["items"].size() << " chains pass at m=" << c.m << "\n";
    emit(c, os.str());
  }
  std::cerr << "wall time " << static_cast<long>(clock.ms()) << " ms\n";
  return exit_for(rep);
}

// ---------------------------------------------------------------- gen

struct GenOpts {
  std::vector<std::string> args;
  int u = 1;
  std::vector<int> ij{2, 3};
  int k = 0;
  std::string f = "1";
  bool witness = false;
  bool validate = false;
};

int parse_index(const std::string& s) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw UsageError("");
    return v;
  } catch (...) {
    throw UsageError("expected an integer, got '" + s + "'");
  }
}

int cmd_gen(const Config& c, const GenOpts& o) {
  Clock clock;
  check_n(c.n, 2);
  if (o.args.empty()) throw UsageError("gen needs a generator kind: E or sec6");
  const std::string& kind = o.args[0];
  Mat value;
  std::optional<IAmWitness> witness;
  std::string name;
  if (kind == "E") {
    if (o.args.size() != 4) throw UsageError("usage: gen E r s t");
    int r = parse_index(o.args[1]), s = parse_index(o.args[2]), t = parse_index(o.args[3]);
    try {
      value = ia_generator_E(r, s, t, c.n).mat();
    } catch (const RingError& e) {
      throw UsageError(e.what());
    }
    name = "E(" + o.args[1] + "," + o.args[2] + "," + o.args[3] + ")";
  } else if (kind == "sec6") {
    check_n(c.n, 4);
    check_m(c.m);
    if (o.args.size() != 2) throw UsageError("usage: gen sec6 FAMILY --u U --ij I J [--k K] [--f POLY]");
    int fam = parse_index(o.args[1]);
    if (fam < 1 || fam > 3) throw UsageError("family must be 1, 2 or 3");
    if (o.ij.size() != 2) throw UsageError("--ij takes two indices");
    int i = o.ij[0], j = o.ij[1];
    for (int x : {o.u, i, j})
      if (x < 1 || x > c.n) throw UsageError("index out of range");
    if (i == j || i == o.u || j == o.u) throw UsageError("u, i, j must be distinct");
    if (fam == 2 && (o.k < 1 || o.k > c.n)) throw UsageError("family 2 needs --k in 1..n");
    Poly f;
    try {
      f = parse_poly(o.f, c.n);
    } catch (const RingError& e) {
      throw UsageError(e.what());
    }
    Sec6Params p{fam, o.u, i, j, o.k, f};
    Sec6Result res = sec6_generator(p, c.m, c.n);
    value = res.matrix.mat();
    witness = res.witness;
    name = "sec6-" + o.args[1];
  } else {
    throw UsageError("unknown generator kind '" + kind + "'");
  }

  json item = {{"name", name}, {"matrix", value.str()}, {"pass", true}};
  if (o.validate) {
    IAReport r = ia_check(value, c.n);
    item["ia_valid"] = r.ok;
    if (!r.ok) {
      item["ia_reason"] = r.reason;
      item["pass"] = false;
    }
  }
  if (witness && o.witness) {
    std::string detail;
    bool ok = witness_verify(*witness, value, c.m, c.n, &detail);
    item["witness"] = witness_to_json(*witness, c.m, c.n);
    item["witness_verified"] = ok;
    if (!ok) item["pass"] = false;
  }
  json rep = report("gen", c, {item}, clock);
  if (c.json) {
    emit_json(c, rep);
  } else {
    std::ostringstream os;
    os << value.str() << "\n";
    if (item.contains("ia_valid"))
      os << "ia_validate: " << (item["ia_valid"].get<bool>() ? "ok" : "FAIL " + item["ia_reason"].get<std::string>()) << "\n";
    if (item.contains("witness")) {
      os << item["witness"].dump(2) << "\n";
      os << "witness: " << (item["witness_verified"].get<bool>() ? "verified" : "FAIL") << "\n";
    }
    emit(c, os.str());
  }
  return exit_for(rep);
}

// ---------------------------------------------------------------- probe

struct ProbeOpts {
  std::string what;
  int samples = 100;
  int i = 0;  // 0: every index
  double ceiling = 1 << 22;
};

int cmd_probe(const Config& c, const ProbeOpts& o) {
  Clock clock;
  check_m(c.m);
  std::vector<json> items;
  std::ostringstream os;
  os << "seed " << c.seed << "\n";
  if (o.what == "rho-ig") {
    check_n(c.n, 3);
    if (o.samples < 1) throw UsageError("--samples must be positive");
    if (o.i < 0 || o.i > c.n) throw UsageError("--i out of range");
    int lo = o.i ? o.i : 1, hi = o.i ? o.i : c.n;
    for (int i = lo; i <= hi; ++i) {
      RhoIgReport r = rho_ig_probe(i, c.m, c.n, o.samples, c.seed + static_cast<std::uint64_t>(i));
      json it = {{"name", "rho-ig i=" + std::to_string(i)},
                 {"samples", r.samples},
                 {"passed", r.passed},
                 {"seed", r.seed},
                 {"failures", r.failures},
                 {"pass", r.ok()}};
      os << (r.ok() ? "PASS " : "FAIL ") << it["name"].get<std::string>() << ": " << r.passed << "/" << r.samples
         << " samples\n";
      for (const auto& f : r.failures) os << "  " << f << "\n";
      items.push_back(it);
    }
  } else if (o.what == "psi") {
    check_n(c.n, 1);
    double count = psi_candidate_count(c.n, c.m);
    std::vector<PsiElement> set;
    try {
      set = psi_enumerate(c.n, c.m, o.ceiling);
    } catch (const CeilingExceeded& e) {
      std::cerr << "resource ceiling: " << e.what() << "\n";
      return kCeiling;
    }
    bool closed = psi_closed_parallel(set);
    json it = {{"name", "psi n=" + std::to_string(c.n) + " m=" + std::to_string(c.m)},
               {"candidates", count},
               {"cardinality", set.size()},
               {"closed", closed},
               {"pass", closed}};
    os << (closed ? "PASS " : "FAIL ") << it["name"].get<std::string>() << ": " << set.size() << " elements from "
       << static_cast<long long>(count) << " candidates, closure " << (closed ? "holds" : "fails") << "\n";
    items.push_back(it);
  } else {
    throw UsageError("unknown probe '" + o.what + "' (rho-ig, psi)");
  }
  json rep = report("probe " + o.what, c, items, clock);
  if (c.json)
    emit_json(c, rep);
  else
    emit(c, os.str());
  return exit_for(rep);
}

// ---------------------------------------------------------------- symbol

struct SymbolOpts {
  std::vector<std::string> args;
  std::string ring = "z5";
  int d = 3;
  int i = 1, j = 2;
  bool lift = false;
  long p = 2;
  int l = 1;
};

// z<m>, z<m>[z<m>^<k>], s-mod-j<m>, sbar:<p>,<l>
struct RingChoice {
  QuotRing quotient;
  std::optional<QuotRing> lifted;
};

RingChoice parse_ring(const std::string& s) {
  std::smatch mt;
  try {
    if (std::regex_match(s, mt, std::regex(R"(z(\d+))"))) return {QuotRing::zmod(std::stol(mt[1])), QuotRing::integers()};
    if (std::regex_match(s, mt, std::regex(R"(z(\d+)\[z(\d+)\^(\d+)\])"))) {
      if (mt[1] != mt[2]) throw UsageError("group ring needs matching moduli");
      return {QuotRing::group_ring(std::stol(mt[1]), std::stoi(mt[3])), std::nullopt};
    }
    if (std::regex_match(s, mt, std::regex(R"(s-mod-j(\d+))")))
      return {QuotRing::group_ring(std::stol(mt[1]), 1), QuotRing::laurent()};
    if (std::regex_match(s, mt, std::regex(R"(sbar:(\d+),(\d+))")))
      return {QuotRing::sbar(std::stol(mt[1]), std::stoi(mt[2])), std::nullopt};
  } catch (const RingError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown ring '" + s + "' (z<m>, z<m>[z<m>^<k>], s-mod-j<m>, sbar:<p>,<l>)");
}

int cmd_symbol(const Config& c, const SymbolOpts& o) {
  Clock clock;
  std::ostringstream os;
  std::vector<json> items;
  if (!o.args.empty() && o.args[0] == "sbar") {
    if (o.args.size() != 1) throw UsageError("usage: symbol sbar --p P --l L");
    std::optional<SBarRing> r;
    try {
      r.emplace(o.p, o.l);
    } catch (const RingError& e) {
      std::string what = e.what();
      if (what.find("ceiling") != std::string::npos) {
        std::cerr << "resource ceiling: " << what << "\n";
        return kCeiling;
      }
      throw UsageError(what);
    }
    bool ok = r->verify_unit_identity();
    long e = 1;
    for (int k = 0; k <= o.l; ++k) e *= o.p;
    json it = {{"name", "sbar p=" + std::to_string(o.p) + " l=" + std::to_string(o.l)},
               {"exponent", e},
               {"unit_identity", ok},
               {"pass", ok}};
    os << "(y+1)^" << e << " = 1 in Z[y]/(" << o.p * o.p << ", y^" << r->size() << "): " << (ok ? "verified" : "FAILS")
       << "\n";
    items.push_back(it);
  } else {
    if (o.args.size() != 2) throw UsageError("usage: symbol U V --ring RING [--d D] [--lift]");
    RingChoice rc = parse_ring(o.ring);
    const QuotRing& R = rc.quotient;
    if (o.d < 2) throw UsageError("--d must be at least 2");
    if (o.i < 1 || o.j < 1 || o.i > o.d || o.j > o.d || o.i == o.j) throw UsageError("symbol indices out of range");
    Poly u, v;
    try {
      // one-variable rings print their variable as x (y for SBar)
      auto read = [&](const std::string& t) {
        if (R.nvars() == 1) return R.reduce(parse_poly(t, std::vector<std::string>{"x"}));
        return R.reduce(parse_poly(t, R.nvars()));
      };
      u = read(o.args[0]);
      v = read(o.args[1]);
    } catch (const RingError& e) {
      throw UsageError(e.what());
    }
    for (const Poly* a : {&u, &v})
      if (!R.is_unit(*a)) throw UsageError(R.str(*a) + " is not a unit of " + R.name());
    SteinbergWord w = st_symbol_word(R, u, v, o.i, o.j);
    Mat img = st_eval(w, o.d, R);
    bool trivial = img.is_identity();
    std::string name = "{" + R.str(u) + "," + R.str(v) + "} over " + R.name();
    json it = {{"name", name}, {"tokens", w.size()}, {"phi_identity", trivial}, {"pass", trivial}};
    os << name << ": " << w.size() << " tokens, phi_" << o.d << " image " << (trivial ? "= I" : "!= I") << "\n";
    if (o.lift) {
      if (!rc.lifted) throw UsageError("no lift ring for " + o.ring + " (use z<m> or s-mod-j<m>)");
      if (o.i != 1 || o.j != 2) throw UsageError("--lift needs the symbol in positions (1,2)");
      Mat a = st_lift_eval(w, R, *rc.lifted, o.d);
      LiftCheck lc = check_lift(a, R);
      std::string shown = a.nvars() == 1 ? a.str({"x"}) : a.str();
      it["lift"] = {{"ring", rc.lifted->name()},
                    {"matrix", shown},
                    {"block_form", lc.block_form},
                    {"congruent", lc.congruent},
                    {"det_one", lc.det_one}};
      if (!lc.ok()) it["pass"] = false;
      os << "lift over " << rc.lifted->name() << ":\n" << shown << "\n"
         << "block form " << (lc.block_form ? "ok" : "FAIL") << ", congruent to I " << (lc.congruent ? "ok" : "FAIL")
         << ", det 1 " << (lc.det_one ? "ok" : "FAIL") << "\n";
    }
    items.push_back(it);
  }
  json rep = report("symbol", c, items, clock);
  if (c.json)
    emit_json(c, rep);
  else
    emit(c, os.str());
  return exit_for(rep);
}

// ---------------------------------------------------------------- reduce, rho, magnus

int cmd_reduce(const Config& c, const std::string& poly) {
  Clock clock;
  check_m(c.m);
  Poly f;
  try {
    f = parse_poly(poly, c.n);
  } catch (const RingError& e) {
    throw UsageError(e.what());
  }
  ModPoly r = lp_reduce_mod_Hm(f, c.m);
  json rep = report("reduce", c, {{{"name", poly}, {"reduced", r.str()}, {"pass", true}}}, clock);
  if (c.json)
    emit_json(c, rep);
  else
    emit(c, r.str() + "\n");
  return kOk;
}

int cmd_rho(const Config& c, int i, const std::string& matrix) {
  Clock clock;
  check_n(c.n, 2);
  if (i < 1 || i > c.n) throw UsageError("--i out of range");
  Mat a;
  try {
    a = parse_matrix(matrix, c.n);
  } catch (const RingError& e) {
    throw UsageError(e.what());
  }
  if (a.dim() != c.n) throw UsageError("matrix must be n x n");
  IAReport chk = ia_check(a, c.n);
  if (!chk.ok) {
    json rep = report("rho", c, {{{"name", "rho_" + std::to_string(i)}, {"pass", false}, {"reason", chk.reason}}}, clock);
    if (c.json)
      emit_json(c, rep);
    else
      emit(c, "not in IA: " + chk.reason + "\n");
    return kFail;
  }
  Mat r = ia_rho(i, IAMatrix::trusted(a));
  json rep = report("rho", c, {{{"name", "rho_" + std::to_string(i)}, {"matrix", r.str()}, {"pass", true}}}, clock);
  if (c.json)
    emit_json(c, rep);
  else
    emit(c, r.str() + "\n");
  return kOk;
}

int cmd_magnus(const Config& c, const std::string& word) {
  Clock clock;
  check_n(c.n, 1);
  MagnusElement g;
  try {
    g = mg_eval(parse_word(word), c.n);
  } catch (const RingError& e) {
    throw UsageError(e.what());
  }
  json rep = report("magnus", c, {{{"name", word}, {"element", g.str()}, {"pass", g.constraint_ok()}}}, clock);
  if (c.json)
    emit_json(c, rep);
  else
    emit(c, g.str() + "\n");
  return exit_for(rep);
}

// ---------------------------------------------------------------- factor

struct FactorOpts {
  std::string input;
  bool example = false;
  int gens = 2;
};

int cmd_factor(const Config& c, const FactorOpts& o) {
  Clock clock;
  if (o.example) {
    check_n(c.n, 3);
    check_m(c.m);
    FactorInput in;
    in.n = c.n;
    in.m = c.m;
    in.generators = random_tm_witness(c.n, c.m, c.seed, o.gens);
    in.matrix = Mat::identity(c.n - 1, c.n);
    for (const auto& g : in.generators) in.matrix = in.matrix * suslin_eval(g);
    emit_json(c, factor_input_to_json(in));
    return kOk;
  }
  if (o.input.empty()) throw UsageError("factor needs --input FILE or --example");
  std::ifstream f(o.input);
  if (!f) throw UsageError("cannot read " + o.input);
  FactorInput in;
  try {
    in = factor_input_from_json(json::parse(f));
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed input: ") + e.what());
  } catch (const WitnessError& e) {
    throw UsageError(std::string("malformed input: ") + e.what());
  } catch (const RingError& e) {
    throw UsageError(std::string("malformed input: ") + e.what());
  }
  json item = {{"name", o.input}};
  std::ostringstream os;
  try {
    Decomposition d = decompose_form(in.matrix, in.generators, in.m, in.n);
    Mat prod = product_of(d.factors, in.matrix.dim(), in.matrix.nvars());
    bool round_trip = prod == in.matrix && d.residual.is_identity();
    std::vector<std::string> bad;
    for (const auto& ff : d.factors) {
      std::string why;
      if (!ff.ideal_ok(in.m, in.n, &why)) bad.push_back(why);
    }
    item["decomposition"] = decomposition_to_json(d);
    item["round_trip"] = round_trip;
    item["ideal_failures"] = bad;
    item["pass"] = round_trip && bad.empty();
    os << d.factors.size() << " factors\n";
    for (const auto& ff : d.factors)
      os << "  form " << ff.form << " " << ff.role_name() << " (" << ff.i << "," << ff.j << ") h = " << ff.h.str()
         << (ff.form >= 3 ? ", f = " + ff.f.str() : "") << "\n";
    os << "product equals input: " << (round_trip ? "yes" : "NO") << "\n";
    for (const auto& b : bad) os << "  ideal check failed: " << b << "\n";
  } catch (const WitnessError& e) {
    item["pass"] = false;
    item["error"] = e.what();
    os << "witness rejected: " << e.what() << "\n";
  }
  json rep = report("factor", c, {item}, clock);
  if (c.json)
    emit_json(c, rep);
  else
    emit(c, os.str());
  return exit_for(rep);
}

void add_common(CLI::App* sub, Config& c) {
  sub->add_option("--n", c.n, "number of generators")->capture_default_str();
  sub->add_option("--m", c.m, "modulus")->capture_default_str();
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_flag("--json", c.json, "emit a JSON report");
  sub->add_flag("--timing", c.timing, "include wall time in the JSON report");
  sub->add_option("-o,--output", c.output, "write the report to a file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the free metabelian group and its IA automorphisms"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Config c;

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "run the chain-script suite");
  add_common(verify, c);
  verify->add_option("--chain", vo.chains, "script name (repeatable)");
  verify->add_flag("--list", vo.list, "print the coverage manifest");
  verify->add_option("--universality", vo.universality, "random bindings per script")->check(CLI::NonNegativeNumber);

  GenOpts go;
  auto* gen = app.add_subcommand("gen", "print a generator matrix");
  add_common(gen, c);
  gen->add_option("args", go.args, "E r s t | sec6 FAMILY")->required();
  gen->add_option("--u", go.u, "row of the sec6 matrix");
  gen->add_option("--ij", go.ij, "index pair of the sec6 matrix")->expected(2);
  gen->add_option("--k", go.k, "diagonal index (family 2)");
  gen->add_option("--f", go.f, "coefficient polynomial");
  gen->add_flag("--witness", go.witness, "emit and re-verify the <IA^m> witness");
  gen->add_flag("--validate", go.validate, "run ia_validate");

  ProbeOpts po;
  auto* probe = app.add_subcommand("probe", "finite-level probes");
  add_common(probe, c);
  probe->add_option("what", po.what, "rho-ig | psi")->required();
  probe->add_option("--samples", po.samples, "samples per index")->capture_default_str();
  probe->add_option("--i", po.i, "index for rho-ig (0: all)");
  probe->add_option("--ceiling", po.ceiling, "candidate ceiling for psi")->capture_default_str();

  SymbolOpts so;
  auto* symbol = app.add_subcommand("symbol", "Steinberg symbols and the SBar unit identity");
  add_common(symbol, c);
  symbol->add_option("args", so.args, "U V | sbar")->required();
  symbol->add_option("--ring", so.ring, "z<m> | z<m>[z<m>^<k>] | s-mod-j<m> | sbar:<p>,<l>")->capture_default_str();
  symbol->add_option("--d", so.d, "matrix size")->capture_default_str();
  symbol->add_option("--i", so.i, "first index")->capture_default_str();
  symbol->add_option("--j", so.j, "second index")->capture_default_str();
  symbol->add_flag("--lift", so.lift, "lift into SL_d(R,H) and check the block form");
  symbol->add_option("--p", so.p, "SBar prime")->capture_default_str();
  symbol->add_option("--l", so.l, "SBar exponent")->capture_default_str();

  std::string poly;
  auto* reduce = app.add_subcommand("reduce", "reduce a polynomial modulo H_m");
  add_common(reduce, c);
  reduce->add_option("poly", poly, "polynomial")->required();

  int rho_i = 1;
  std::string matrix;
  auto* rho = app.add_subcommand("rho", "apply rho_i to an IA matrix");
  add_common(rho, c);
  rho->add_option("--i", rho_i, "index")->capture_default_str();
  rho->add_option("matrix", matrix, "rows separated by ';', entries by ','")->required();

  std::string word;
  auto* magnus = app.add_subcommand("magnus", "Magnus image of a group word");
  add_common(magnus, c);
  magnus->add_option("word", word, "e.g. 'g1 g2^-1 g1'")->required();

  FactorOpts fo;
  auto* factor = app.add_subcommand("factor", "decompose a witnessed matrix into Forms 1-4");
  add_common(factor, c);
  factor->add_option("--input", fo.input, "input JSON");
  factor->add_flag("--example", fo.example, "print a random input document instead");
  factor->add_option("--gens", fo.gens, "generators in the example")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(c, vo);
    if (*gen) return cmd_gen(c, go);
    if (*probe) return cmd_probe(c, po);
    if (*symbol) return cmd_symbol(c, so);
    if (*reduce) return cmd_reduce(c, poly);
    if (*rho) return cmd_rho(c, rho_i, matrix);
    if (*magnus) return cmd_magnus(c, word);
    if (*factor) return cmd_factor(c, fo);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CeilingExceeded& e) {
    std::cerr << "resource ceiling: " << e.what() << "\n";
    return kCeiling;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
