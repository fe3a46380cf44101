// fbpir: command-line front end. Exit codes: 0 ok, 1 invalid input,
// 2 budget exhausted, 3 provably unservable or claim refuted, 4 seed integrity.

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fbpir/acceptance.hpp"
#include "fbpir/bounds.hpp"
#include "fbpir/cache.hpp"
#include "fbpir/constructions.hpp"
#include "fbpir/errors.hpp"
#include "fbpir/io.hpp"
#include "fbpir/serve.hpp"
#include "fbpir/solver.hpp"

using namespace fbpir;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kBudget = 2, kUnservable = 3, kSeed = 4 };

struct Globals {
  std::uint64_t q_cap = kDefaultFieldCap;
  double max_seconds = 0;
  std::uint64_t max_nodes = 0;
  std::string cache_path;
  std::string seed_file;
  std::shared_ptr<ValueCache> cache;
};

std::uint32_t checked_q(const Globals& g, std::int64_t q) {
  if (q < 2 || !prime_power(static_cast<std::uint64_t>(q))) throw NotPrimePower(std::to_string(q) + " is not a prime power");
  if (static_cast<std::uint64_t>(q) > g.q_cap) throw CapExceeded("q exceeds --q-cap");
  return static_cast<std::uint32_t>(q);
}

SearchOptions search_options(const Globals& g) {
  SearchOptions o;
  o.max_nodes = g.max_nodes;
  o.max_seconds = g.max_seconds;
  return o;
}

std::string interval(std::int64_t lb, std::int64_t ub) {
  return lb == ub ? std::to_string(lb) : std::to_string(lb) + "–" + std::to_string(ub);
}

std::string sources(const std::vector<BoundSource>& v) {
  std::string s;
  for (const auto& b : v) s += (s.empty() ? "" : ", ") + b.name + "=" + std::to_string(b.value);
  return s;
}

// "2..5" or "5,10" or "3"
std::vector<std::int64_t> parse_range(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string part;
  try {
    while (std::getline(ss, part, ',')) {
      const auto dots = part.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stoll(part));
      } else {
        const auto lo = std::stoll(part.substr(0, dots));
        const auto hi = std::stoll(part.substr(dots + 2));
        if (hi < lo) throw InvalidInput("empty range '" + part + "'");
        for (auto x = lo; x <= hi; ++x) out.push_back(x);
      }
    }
  } catch (const std::logic_error&) {
    throw InvalidInput("cannot parse range '" + text + "'");
  }
  if (out.empty()) throw InvalidInput("empty range");
  return out;
}

std::map<std::string, std::int64_t> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, std::int64_t> out;
  for (const auto& it : items) {
    const auto eq = it.find('=');
    if (eq == std::string::npos) throw InvalidInput("parameter '" + it + "' is not of the form name=value");
    try {
      out[it.substr(0, eq)] = std::stoll(it.substr(eq + 1));
    } catch (const std::logic_error&) {
      throw InvalidInput("parameter '" + it + "' has a non-integer value");
    }
  }
  return out;
}

std::int64_t need(const std::map<std::string, std::int64_t>& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) throw InvalidInput("missing parameter " + name + "=");
  if (it->second < 1) throw InvalidInput("parameter " + name + " must be positive");
  return it->second;
}

void record(const Globals& g, const SearchResult& r) {
  if (g.cache) g.cache->record(ValueCache::from_search(r));
}

// ------------------------------------------------------------------ value

int cmd_value(const Globals& g, const std::string& kind_s, std::int64_t k, std::int64_t t, std::int64_t q_in,
              bool exact, bool systematic) {
  const auto kind = parse_kind(kind_s);
  const auto q = checked_q(g, q_in);
  const auto rec = eval_bounds(kind, k, t, q);
  if (!exact) {
    if (rec.exact) {
      std::cout << rec.exact->value << " (exact, " << rec.exact->provenance << ")\n";
    } else if (rec.is_exact()) {
      std::cout << rec.lb << " (exact, bounds meet)\n";
    } else {
      std::cout << interval(rec.lb, rec.ub) << " (interval; lower: " << sources(rec.lb_sources)
                << "; upper: " << sources(rec.ub_sources) << ")\n";
    }
    return kOk;
  }
  auto opts = search_options(g);
  opts.systematic = systematic;
  try {
    const auto r = min_length(kind, static_cast<std::size_t>(k), static_cast<std::size_t>(t), q, opts);
    record(g, r);
    std::cout << r.n_min << " (exact, search" << (r.exhausted_below ? ", n-1 exhausted" : "") << ", "
              << r.candidates << " candidates)\n";
    return kOk;
  } catch (const BudgetExceeded& e) {
    std::cout << interval(std::max(rec.lb, e.lower()), rec.ub) << " (budget exhausted: " << e.what() << ")\n";
    return kBudget;
  } catch (const InstanceTooLarge& e) {
    std::cout << interval(rec.lb, rec.ub) << " (budget exhausted: " << e.what() << ")\n";
    return kBudget;
  }
}

// ----------------------------------------------------------------- bounds

int cmd_bounds(const Globals& g, const std::string& kind_s, std::int64_t k, std::int64_t t, std::int64_t q_in,
               bool as_json) {
  const auto kind = parse_kind(kind_s);
  const auto q = checked_q(g, q_in);
  const auto rec = eval_bounds(kind, k, t, q);
  if (as_json) {
    json j{{"kind", to_string(kind)}, {"k", k}, {"t", t}, {"q", q}, {"lb", rec.lb}, {"ub", rec.ub}};
    json lbs = json::array(), ubs = json::array();
    for (const auto& s : rec.lb_sources) lbs.push_back(json{{"name", s.name}, {"value", s.value}});
    for (const auto& s : rec.ub_sources) ubs.push_back(json{{"name", s.name}, {"value", s.value}});
    j["lb_sources"] = lbs;
    j["ub_sources"] = ubs;
    if (rec.exact) j["exact"] = json{{"value", rec.exact->value}, {"provenance", rec.exact->provenance}};
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << to_string(kind) << "(" << k << "," << t << "," << q << ") in [" << rec.lb << ", " << rec.ub << "]\n";
  for (const auto& s : rec.lb_sources) std::cout << "  lower " << s.name << " = " << s.value << "\n";
  for (const auto& s : rec.ub_sources) std::cout << "  upper " << s.name << " = " << s.value << "\n";
  if (rec.exact) std::cout << "  exact " << rec.exact->value << " (" << rec.exact->provenance << ")\n";
  std::printf("  lowbound real form = %.4f\n", lowbound_real(k, t, q));
  return kOk;
}

// ------------------------------------------------------------ serve-check

int cmd_serve_check(const Globals& g, const std::string& matrix_file, const std::string& requests_file,
                    const std::string& plan_out) {
  const auto m = load_matrix(matrix_file, g.q_cap);
  const auto l = load_requests(requests_file, m.field_ptr(), m.k());
  const auto res = try_serve(m, l, g.max_nodes);
  switch (res.status) {
    case ServeStatus::kServed: {
      if (!verify_plan(m, l, *res.plan)) throw Error("internal: plan failed verification");
      const auto j = plan_to_json(*res.plan);
      if (!plan_out.empty()) write_file(plan_out, j.dump(2) + "\n");
      std::cout << "servable (" << res.plan->assignments.size() << " requests, " << res.nodes << " nodes)\n";
      if (plan_out.empty()) std::cout << j.dump() << "\n";
      return kOk;
    }
    case ServeStatus::kUnservable:
      std::cout << "unservable (exhaustive, " << res.nodes << " nodes)\n";
      return kUnservable;
    case ServeStatus::kBudgetExhausted:
      std::cout << "undecided (node budget exhausted)\n";
      return kBudget;
  }
  return kInvalid;
}

// -------------------------------------------------------------- construct

int cmd_construct(const Globals& g, const std::string& name_s, const std::vector<std::string>& param_items,
                  const std::string& out, bool verify, const std::string& requests_file, std::string plan_out) {
  const auto name = parse_construction(name_s);
  const auto p = parse_params(param_items);
  auto q_of = [&] { return checked_q(g, need(p, "q")); };
  Construction c = [&] {
    switch (name) {
      case ConstructionName::kK2Projective:
        return construct_k2(static_cast<std::size_t>(need(p, "t")), q_of());
      case ConstructionName::kBinaryT2Even:
      case ConstructionName::kBinaryT2Odd: {
        const auto k = need(p, "k");
        if ((k % 2 == 0) != (name == ConstructionName::kBinaryT2Even))
          throw InvalidInput(name_s + " needs an " + (k % 2 ? "even" : "odd") + " k... got k=" + std::to_string(k));
        return construct_binary_t2(static_cast<std::size_t>(k));
      }
      case ConstructionName::kAllNonzeroRepeated:
        return construct_all_nonzero(static_cast<std::size_t>(need(p, "k")), q_of(),
                                     p.count("s") ? static_cast<std::size_t>(need(p, "s")) : 1);
      case ConstructionName::kDoubleAllNonzero:
        return construct_double_all_nonzero(static_cast<std::size_t>(need(p, "k")), q_of());
    }
    throw InvalidInput("unknown construction");
  }();

  const auto mj = matrix_to_json(c.matrix);
  if (!out.empty())
    write_file(out, mj.dump(2) + "\n");
  else
    std::cout << mj.dump() << "\n";
  std::cout << to_string(c.name) << ": " << c.matrix.n() << " columns, k=" << c.k << ", q=" << c.q << ", claimed "
            << to_string(c.claimed_kind) << " t=" << c.claimed_t << "\n";

  if (verify) {
    bool ok;
    std::string witness;
    if (c.claimed_kind == CodeKind::kFB) {
      const auto r = is_functional_batch(c.matrix, c.claimed_t);
      ok = r.ok;
      if (!ok) witness = requests_to_json(*r.witness).dump();
    } else {
      const auto r = is_functional_pir(c.matrix, c.claimed_t);
      ok = r.ok;
      if (!ok) witness = json(r.witness->rep).dump();
    }
    if (!ok) {
      std::cerr << "VERIFICATION FAILED: " << to_string(c.name) << " does not serve " << witness << "\n";
      return kUnservable;
    }
    std::cout << "verified: every request list of size " << c.claimed_t << " is served\n";
  }

  if (!requests_file.empty()) {
    const auto l = load_requests(requests_file, c.matrix.field_ptr(), c.k);
    std::optional<RecoveryPlan> plan;
    if (c.name == ConstructionName::kDoubleAllNonzero && l.total() == c.claimed_t) {
      plan = plan_batch_double(c.k, c.q, l);
    } else if ((c.name == ConstructionName::kBinaryT2Even || c.name == ConstructionName::kBinaryT2Odd) &&
               l.total() == 2) {
      const auto e = l.expanded();
      plan = plan_binary_t2(c.k, e[0], e[1]);
    } else if (c.name == ConstructionName::kAllNonzeroRepeated && l.entries().size() == 1 &&
               l.total() == c.claimed_t) {
      plan = plan_pir_partition(c.k, c.q, l.entries()[0].point, c.s);
    } else {
      plan = can_serve(c.matrix, l);
    }
    if (!plan || !verify_plan(c.matrix, l, *plan)) {
      std::cout << "unservable request list\n";
      return kUnservable;
    }
    if (plan_out.empty()) plan_out = out.empty() ? "plan.json" : out + ".plan.json";
    write_file(plan_out, plan_to_json(*plan).dump(2) + "\n");
    std::cout << "plan written to " << plan_out << "\n";
  }
  return kOk;
}

// ----------------------------------------------------------------- search

int cmd_search(const Globals& g, const std::string& kind_s, std::int64_t k, std::int64_t t, std::int64_t q_in,
               bool systematic, std::int64_t claim, const std::string& out) {
  const auto kind = parse_kind(kind_s);
  const auto q = checked_q(g, q_in);
  if (k < 1 || t < 1) throw InvalidInput("k and t must be at least 1");
  auto opts = search_options(g);
  opts.systematic = systematic;
  if (claim > 0) {
    const auto v = verify_value(kind, static_cast<std::size_t>(k), static_cast<std::size_t>(t), q, claim, opts);
    std::cout << to_string(v.status) << ": " << v.detail << "\n";
    if (v.witness) {
      if (!out.empty())
        write_file(out, matrix_to_json(*v.witness).dump(2) + "\n");
      else
        std::cout << matrix_to_json(*v.witness).dump() << "\n";
    }
    switch (v.status) {
      case VerifyStatus::kConfirmed:
        return kOk;
      case VerifyStatus::kUndecided:
        return kBudget;
      default:
        return kUnservable;
    }
  }
  try {
    const auto r = min_length(kind, static_cast<std::size_t>(k), static_cast<std::size_t>(t), q, opts);
    record(g, r);
    std::cout << to_string(kind) << "(" << k << "," << t << "," << q << ") = " << r.n_min << "\n";
    std::cout << "start length " << r.start_length << ", n-1 exhausted: " << (r.exhausted_below ? "yes" : "no")
              << ", candidates " << r.candidates << "\n";
    std::printf("seconds %.3f\n", r.seconds);
    if (!out.empty())
      write_file(out, matrix_to_json(r.witness).dump(2) + "\n");
    else
      std::cout << matrix_to_json(r.witness).dump() << "\n";
    return kOk;
  } catch (const BudgetExceeded& e) {
    std::cout << "budget exhausted; proven interval [" << e.lower() << ", " << e.upper() << "]\n";
    return kBudget;
  } catch (const InstanceTooLarge& e) {
    std::cout << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  }
}

// ------------------------------------------------------------------ table

int cmd_table(const Globals& g, const std::string& kind_s, const std::string& ks, const std::string& ts,
              const std::string& qs, const std::string& format) {
  const auto kind = parse_kind(kind_s);
  if (format != "md" && format != "csv") throw InvalidInput("format must be md or csv");
  const auto kr = parse_range(ks);
  const auto tr = parse_range(ts);
  const auto qr = parse_range(qs);
  const bool md = format == "md";
  std::ostringstream os;
  if (md) {
    os << "| q | k |";
    for (auto t : tr) os << " t=" << t << " |";
    os << "\n|---|---|";
    for (std::size_t i = 0; i < tr.size(); ++i) os << "---|";
    os << "\n";
  } else {
    os << "q,k";
    for (auto t : tr) os << ",t=" << t;
    os << "\n";
  }
  for (auto q_in : qr) {
    const auto q = checked_q(g, q_in);
    for (auto k : kr) {
      os << (md ? "| " : "") << q << (md ? " | " : ",") << k << (md ? " |" : "");
      for (auto t : tr) {
        const auto rec = eval_bounds(kind, k, t, q);
        const auto cell = rec.exact ? std::to_string(rec.exact->value) : interval(rec.lb, rec.ub);
        os << (md ? " " : ",") << cell << (md ? " |" : "");
      }
      os << "\n";
    }
  }
  std::cout << os.str();
  return kOk;
}

// ----------------------------------------------------------- verify-paper

int cmd_verify_paper(const std::string& suite_s, int only) {
  const auto suite = parse_suite(suite_s);
  std::vector<CriterionResult> results;
  auto show = [](const CriterionResult& r) {
    std::printf("[%s] criterion %2d: %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
    if (!r.detail.empty()) std::printf("       %s\n", r.detail.c_str());
    std::fflush(stdout);
  };
  if (only > 0) {
    results.push_back(run_criterion(only, suite));
    show(results.back());
  } else {
    results = run_acceptance(suite, show);
  }
  int failed = 0;
  double total = 0;
  for (const auto& r : results) {
    failed += !r.pass;
    total += r.seconds;
  }
  std::printf("%zu criteria, %d failed, %.2f s total\n", results.size(), failed, total);
  return failed ? kUnservable : kOk;
}

// ------------------------------------------------------------- conjecture

int cmd_conjecture(const Globals& g, const std::string& problem_s, std::int64_t k, std::int64_t q_in,
                   std::int64_t t) {
  const auto problem = parse_problem(problem_s);
  const auto q = checked_q(g, q_in);
  ConjectureBudget budget;
  if (g.max_nodes) budget.max_nodes = g.max_nodes;
  if (g.max_seconds > 0) budget.max_seconds = g.max_seconds;
  const auto r = conjecture_check(problem, k, q, budget, KnowledgeBase::active(),
                                  t > 0 ? std::optional<std::int64_t>(t) : std::nullopt);
  std::cout << to_string(problem) << " k=" << k << " q=" << q << " t=" << r.t << ": " << to_string(r.outcome)
            << " (" << r.method << ")";
  if (problem == ConjectureProblem::kFbVsSwap) std::cout << (r.separated ? " separated" : " not separated");
  std::cout << "\n  " << r.detail << "\n";
  return r.outcome == ConjectureOutcome::kUndecided ? kBudget : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Functional PIR and batch code workbench"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--q-cap", g.q_cap, "Largest field order accepted");
  app.add_option("--max-seconds", g.max_seconds, "Wall-clock budget per search length");
  app.add_option("--max-nodes", g.max_nodes, "Candidate (search) or node (serve) budget");
  app.add_option("--cache", g.cache_path, "JSON-lines value cache");
  app.add_option("--seed-file", g.seed_file, "External seed file replacing the built-in one");

  std::string kind, name, matrix_file, requests_file, plan_out, out, format = "md", ks, ts, qs, suite = "fast",
                                                                    problem;
  std::int64_t k = 0, t = 0, q = 0, claim = 0;
  bool exact = false, systematic = false, as_json = false, verify = false;
  int criterion = 0;
  std::vector<std::string> params;

  auto* value = app.add_subcommand("value", "Exact value or proven interval");
  value->add_option("kind", kind)->required();
  value->add_option("k", k)->required();
  value->add_option("t", t)->required();
  value->add_option("q", q)->required();
  value->add_flag("--exact", exact, "Run the exhaustive solver");
  value->add_flag("--systematic", systematic, "Restrict the solver to systematic candidates");

  auto* bounds = app.add_subcommand("bounds", "Every bound source");
  bounds->add_option("kind", kind)->required();
  bounds->add_option("k", k)->required();
  bounds->add_option("t", t)->required();
  bounds->add_option("q", q)->required();
  bounds->add_flag("--json", as_json);

  auto* serve = app.add_subcommand("serve-check", "Can a matrix serve a request list");
  serve->add_option("matrix", matrix_file)->required();
  serve->add_option("requests", requests_file)->required();
  serve->add_option("--plan-out", plan_out);

  auto* construct = app.add_subcommand("construct", "Emit a named construction");
  construct->add_option("name", name)->required();
  construct->add_option("params", params, "name=value pairs, e.g. k=4 t=5 q=3 s=2");
  construct->add_option("--out", out);
  construct->add_flag("--verify", verify);
  construct->add_option("--requests", requests_file);
  construct->add_option("--plan-out", plan_out);

  auto* search = app.add_subcommand("search", "Exhaustive minimum-length search");
  search->add_option("kind", kind)->required();
  search->add_option("k", k)->required();
  search->add_option("t", t)->required();
  search->add_option("q", q)->required();
  search->add_flag("--systematic", systematic);
  search->add_option("--claim", claim, "Confirm or refute a claimed value instead");
  search->add_option("--out", out, "Witness matrix file");

  auto* table = app.add_subcommand("table", "Grid of values and intervals");
  table->add_option("kind", kind)->required();
  table->add_option("--k", ks)->required();
  table->add_option("--t", ts)->required();
  table->add_option("--q", qs)->required();
  table->add_option("--format", format);

  auto* vp = app.add_subcommand("verify-paper", "Run the acceptance criteria");
  vp->add_option("--suite", suite);
  vp->add_option("--criterion", criterion);

  auto* conj = app.add_subcommand("conjecture", "Check OP1, OP2 or FB_vs_swap on small cases");
  conj->add_option("problem", problem)->required();
  conj->add_option("k", k)->required();
  conj->add_option("q", q)->required();
  conj->add_option("--t", t);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (!g.cache_path.empty()) g.cache = std::make_shared<ValueCache>(g.cache_path);
    if (!g.seed_file.empty()) {
      auto kb = std::make_shared<KnowledgeBase>(KnowledgeBase::from_file(g.seed_file, g.cache));
      KnowledgeBase::set_active(kb);
    } else {
      auto kb = std::make_shared<KnowledgeBase>(KnowledgeBase::builtin());
      kb->set_cache(g.cache);
      KnowledgeBase::set_active(kb);
    }

    if (*value) return cmd_value(g, kind, k, t, q, exact, systematic);
    if (*bounds) return cmd_bounds(g, kind, k, t, q, as_json);
    if (*serve) return cmd_serve_check(g, matrix_file, requests_file, plan_out);
    if (*construct) return cmd_construct(g, name, params, out, verify, requests_file, plan_out);
    if (*search) return cmd_search(g, kind, k, t, q, systematic, claim, out);
    if (*table) return cmd_table(g, kind, ks, ts, qs, format);
    if (*vp) return cmd_verify_paper(suite, criterion);
    if (*conj) return cmd_conjecture(g, problem, k, q, t);
  } catch (const SeedIntegrityError& e) {
    std::cerr << "seed integrity failure: " << e.what() << "\n";
    return kSeed;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << " [" << e.lower() << ", " << e.upper() << "]\n";
    return kBudget;
  } catch (const InstanceTooLarge& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
