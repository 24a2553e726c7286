#include "transchrome/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include "transchrome/acceptance.hpp"
#include "transchrome/arith.hpp"
#include "transchrome/charfun.hpp"
#include "transchrome/decomp.hpp"
#include "transchrome/error.hpp"
#include "transchrome/fgl.hpp"
#include "transchrome/permcore.hpp"
#include "transchrome/zpsets.hpp"

namespace transchrome {

namespace {

void print_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

/// "S4", "S2^2", "S2xS2", "e", or "<(0 1 2 3)>" (generators; needs a degree).
PermGroup parse_group(const std::string& spec, std::optional<std::size_t> degree) {
  std::smatch m;
  static const std::regex sym(R"(S(\d+))"), power(R"(S(\d+)\^(\d+))"), product(R"(S(\d+)(xS\d+)+)"),
      gens(R"(<(.*)>)");
  if (std::regex_match(spec, m, sym)) return PermGroup::symmetric(std::stoul(m[1]));
  if (std::regex_match(spec, m, power)) return PermGroup::block_symmetric(std::stoul(m[1]), std::stoul(m[2]));
  if (std::regex_match(spec, m, product)) {
    const auto size = std::stoul(m[1]);
    std::size_t count = 0;
    std::stringstream parts(spec);
    for (std::string part; std::getline(parts, part, 'x');) {
      if (part != "S" + std::to_string(size))
        throw Error(ErrorKind::BadParameters, "only products of equal symmetric groups are supported: " + spec);
      ++count;
    }
    return PermGroup::block_symmetric(size, count);
  }
  if (spec == "e" || spec == "1") {
    if (!degree) throw Error(ErrorKind::BadParameters, "the trivial group needs a degree");
    return PermGroup::block_symmetric(1, *degree);
  }
  if (std::regex_match(spec, m, gens)) {
    if (!degree) throw Error(ErrorKind::BadParameters, "generated groups need a degree");
    const auto perms = parse_perm_list(m[1].str(), *degree);
    return PermGroup::generate(*degree, perms);
  }
  throw Error(ErrorKind::ParseError, "unrecognised group \"" + spec + "\"");
}

struct LambdaOptions {
  unsigned p = 2, h = 1;
  std::optional<unsigned> k;

  Lambda build(std::size_t degree) const {
    unsigned kk = 0;
    if (k) {
      kk = *k;
    } else if (auto e = exact_log(degree, p)) {
      kk = *e;
    } else {
      throw Error(ErrorKind::BadParameters, "degree is not a power of p; pass --k");
    }
    return Lambda(p, h, kk);
  }
};

void add_lambda_options(CLI::App* cmd, LambdaOptions& o) {
  cmd->add_option("--p", o.p, "prime p")->required();
  cmd->add_option("--h", o.h, "rank h of Z_p^h")->default_val(1);
  cmd->add_option("--k", o.k, "exponent level (default: log_p of the degree)");
}

// ---------------------------------------------------------------- homs

int cmd_homs(unsigned p, unsigned h, unsigned k, bool json, std::ostream& out) {
  const auto classes = enumerate_hom_classes(p, h, k);
  if (json) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& hc : classes) {
      std::vector<std::string> rep;
      for (const auto& s : realize(hc).perms) rep.push_back(s.to_string());
      list.push_back({{"class_id", hc.id()},
                      {"centralizer_order", centralizer_order(hc)},
                      {"minimal_level", minimal_level(hc)},
                      {"isotypic", is_isotypic(hc)},
                      {"representative", rep}});
    }
    print_json(out, {{"p", p}, {"h", h}, {"k", k}, {"classes", list}});
    return kExitOk;
  }
  std::size_t width = 5;
  for (const auto& hc : classes) width = std::max(width, hc.id().size());
  out << pad("class", width) << "  " << pad("|C|", 10) << pad("m", 3) << pad("isotypic", 10) << "representative\n";
  for (const auto& hc : classes)
    out << pad(hc.id(), width) << "  " << pad(std::to_string(centralizer_order(hc)), 10)
        << pad(std::to_string(minimal_level(hc)), 3) << pad(is_isotypic(hc) ? "yes" : "no", 10)
        << format_perm_list(realize(hc).perms) << "\n";
  out << classes.size() << " classes\n";
  return kExitOk;
}

// ---------------------------------------------------------------- decompose

int cmd_decompose(unsigned p, unsigned n, unsigned t, unsigned k, bool json, bool serial, std::ostream& out) {
  const auto report = decompose(p, n, t, k, DecomposeOptions{!serial});
  const auto check = verify_triangle(report);
  if (json) {
    auto j = to_json(report);
    j["triangle"] = {{"ok", check.ok}, {"diagnostic", check.diagnostic}};
    print_json(out, j);
  } else {
    out << render_table(report);
    out << "triangle: " << (check.ok ? "verified" : "FAILED, " + check.diagnostic) << "\n";
  }
  return check.ok ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------- transfer / induce

struct GroupOptions {
  std::string G, H;
  std::optional<std::size_t> degree;
};

std::pair<PermGroup, PermGroup> groups_of(const GroupOptions& g) {
  PermGroup G = parse_group(g.G, g.degree);
  PermGroup H = parse_group(g.H, G.degree());
  return {G, H};
}

nlohmann::json datum_json(const TransferDatum& d, unsigned p) {
  nlohmann::json orbits = nlohmann::json::array();
  for (const auto& o : d.orbits)
    orbits.push_back({{"coset_representative", o.coset_representative.to_string()},
                      {"subgroup_class", o.subgroup_class},
                      {"stabilizer_order", o.stabilizer_order},
                      {"index", o.index}});
  return {{"class_id", d.alpha_class},
          {"centralizer_order", d.centralizer_order},
          {"fixed_cosets", d.fixed_coset_count},
          {"orbits", orbits},
          {"ideal_trivial", {{"t_zero", ideal_trivial(d, p, true)}, {"t_positive", ideal_trivial(d, p, false)}}}};
}

int cmd_transfer(const GroupOptions& g, const LambdaOptions& lo, const std::string& class_id,
                 const std::string& alpha, bool json, std::ostream& out) {
  const auto [G, H] = groups_of(g);
  const Lambda lambda = lo.build(G.degree());
  const Induction ind(ClassIndex::build(H, lambda), ClassIndex::build(G, lambda));
  std::size_t pos = 0;
  if (!alpha.empty()) {
    pos = ind.group_classes().position_of(parse_perm_list(alpha, G.degree()));
  } else {
    auto found = ind.group_classes().find(class_id);
    if (!found) throw Error(ErrorKind::BadParameters, "unknown class " + class_id);
    pos = *found;
  }
  const auto& d = ind.datum(pos);
  if (json) {
    auto j = datum_json(d, lambda.p());
    j["G"] = g.G;
    j["H"] = g.H;
    print_json(out, j);
    return kExitOk;
  }
  out << "class " << d.alpha_class << " of " << g.G << ", transfer from " << g.H << "\n";
  out << "|C_G(im alpha)| = " << d.centralizer_order << ", fixed cosets: " << d.fixed_coset_count
      << ", orbits: " << d.orbits.size() << "\n";
  for (const auto& o : d.orbits)
    out << "  g = " << pad(o.coset_representative.to_string(), 16) << " index " << pad(std::to_string(o.index), 6)
        << " |stabilizer| " << pad(std::to_string(o.stabilizer_order), 8) << o.subgroup_class << "\n";
  out << "ideal trivial: t = 0 " << (ideal_trivial(d, lambda.p(), true) ? "yes" : "no") << ", t > 0 "
      << (ideal_trivial(d, lambda.p(), false) ? "yes" : "no") << "\n";
  return kExitOk;
}

nlohmann::json read_json_file(const std::string& path) {
  try {
    if (path == "-") return nlohmann::json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

int cmd_induce(const GroupOptions& g, const LambdaOptions& lo, const std::string& input, bool json,
               std::ostream& out) {
  const auto [G, H] = groups_of(g);
  const Lambda lambda = lo.build(G.degree());
  const Induction ind(ClassIndex::build(H, lambda), ClassIndex::build(G, lambda));
  const auto chi = GenClassFunction::from_json(ind.subgroup_index(), read_json_file(input));
  const auto plain = ind.induce(chi);
  const auto grouped = ind.induce_grouped(chi);
  const bool agree = plain == grouped;
  if (json) {
    print_json(out, {{"G", g.G}, {"H", g.H}, {"induced", plain.to_json()}, {"grouped_agrees", agree}});
  } else {
    std::size_t width = 5;
    for (const auto& e : ind.group_classes().classes()) width = std::max(width, e.id.size());
    for (std::size_t i = 0; i < plain.values().size(); ++i)
      out << pad(ind.group_classes().classes()[i].id, width) << "  " << to_string(plain.at(i)) << "\n";
    out << "orbit-grouped formula " << (agree ? "agrees" : "DISAGREES") << "\n";
  }
  return agree ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------- count-sub

int cmd_count_sub(unsigned h, unsigned p, unsigned m, bool json, std::ostream& out) {
  const auto formula = count_sublattices(h, p, m);
  std::optional<std::uint64_t> brute;
  if (auto size = checked_pow(p, m * h); size && *size <= 10'000)
    brute = enumerate_subgroups(h, p, m, ipow(p, m)).size();
  const bool agree = !brute || *brute == formula;
  if (json) {
    print_json(out, {{"h", h},
                     {"p", p},
                     {"m", m},
                     {"formula", formula},
                     {"enumerated", brute ? nlohmann::json(*brute) : nlohmann::json(nullptr)},
                     {"agree", brute ? nlohmann::json(agree) : nlohmann::json(nullptr)}});
  } else {
    out << formula << "\n";
    if (brute)
      out << "enumeration: " << *brute << (agree ? " (agrees)" : " (DISAGREES)") << "\n";
    else
      out << "enumeration: skipped, p^{mh} > 10^4\n";
  }
  return agree ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------- fgl

struct FglOptions {
  unsigned p = 2, n = 1, k = 1, a = 4, b = 3;
  std::optional<std::size_t> D;
  bool multiplicative = false;
};

int cmd_fgl(const FglOptions& o, bool json, std::ostream& out) {
  if (!is_prime(o.p)) throw Error(ErrorKind::NotPrime, std::to_string(o.p) + " is not prime");
  const unsigned height = o.multiplicative ? 1 : o.n;
  std::size_t D = 0;
  if (o.D) {
    D = *o.D;
  } else {
    const auto a = checked_pow(o.p, 2 * height), b = checked_pow(o.p, o.k * height);
    if (!a || !b || std::max(*a, *b) > 4096) throw Error(ErrorKind::ResourceLimit, "default truncation too large");
    D = static_cast<std::size_t>(std::max(*a, *b)) + 1;
  }
  const FGLContext ctx = o.multiplicative ? FGLContext::multiplicative(o.p, o.a, D)
                                          : FGLContext::build_ptypical(o.p, o.n, o.a, o.b, D);
  const auto pk = ipow(o.p, o.k);
  const TruncSeries g = n_series(ctx, pk);
  const auto expected = ipow(o.p, o.k * height);
  const auto rank = torsion_rank(ctx, o.k);
  const auto prep = weierstrass_prep(ctx, g, rank);
  const bool honda = honda_reduction_holds(ctx);
  const bool ok = rank == expected && honda;
  const std::string kind = o.multiplicative ? "multiplicative" : "p-typical";
  const std::string contract = "below degree " + std::to_string(D) + ", mod p^" + std::to_string(ctx.ring()->precision()) +
                               ", mod u-degree " + std::to_string(ctx.ring()->u_truncation());
  if (json) {
    print_json(out, {{"kind", kind},
                     {"p", o.p},
                     {"height", height},
                     {"k", o.k},
                     {"contract", contract},
                     {"series", g.to_json()},
                     {"torsion_rank", rank},
                     {"expected_rank", expected},
                     {"weierstrass", {{"f", prep.f.to_json()}, {"iterations", prep.iterations}}},
                     {"honda_reduction", honda}});
  } else {
    out << kind << " law, p = " << o.p << ", height " << height << "; equalities hold " << contract << "\n";
    out << "[" << pk << "](x) = " << g.to_string() << "\n";
    out << "f = " << prep.f.to_string() << "\n";
    out << "torsion rank " << rank << " (p^{kn} = " << expected << ")\n";
    out << "[p](x) = x^{p^n} mod (p, u): " << (honda ? "yes" : "no") << "\n";
  }
  return ok ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------- reproduce

int cmd_reproduce(std::uint64_t seed, const std::vector<unsigned>& only, bool json, std::ostream& out) {
  std::vector<CriterionResult> results;
  for (unsigned i = 1; i <= kCriterionCount; ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), i) == only.end()) continue;
    results.push_back(run_criterion(i, seed));
    if (!json) out << format_result(results.back()) << std::endl;
  }
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  if (json) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& r : results)
      list.push_back({{"criterion", r.number}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    print_json(out, {{"seed", seed}, {"results", list}});
  } else {
    out << passed << "/" << results.size() << " criteria passed\n";
  }
  return passed == static_cast<long>(results.size()) ? kExitOk : kExitVerification;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ResourceLimit:
      return kExitResource;
    case ErrorKind::InternalMismatch:
    case ErrorKind::IntegralityFailure:
      return kExitVerification;
    default:
      return kExitDomain;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hom-classes into symmetric groups, transfer data, subgroup counts and formal group laws"};
  app.name("transchrome");
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  std::optional<std::size_t> max_elements;
  app.add_option("--max-elements", max_elements, "cap on group sizes (overrides TRANSCHROME_MAX_ELEMENTS)");

  bool json = false;
  auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", json, "JSON output"); };

  unsigned p = 2, h = 1, k = 1, n = 2, t = 1, m = 1;
  auto* homs = app.add_subcommand("homs", "classes of homomorphisms Z_p^h -> Sigma_{p^k}");
  homs->add_option("--p", p, "prime")->required();
  homs->add_option("--h", h, "rank")->required();
  homs->add_option("--k", k, "Sigma_{p^k}")->required();
  add_json(homs);

  bool serial = false;
  auto* dec = app.add_subcommand("decompose", "component decomposition with the triangle check");
  dec->add_option("--p", p, "prime")->required();
  dec->add_option("--n", n, "height n")->required();
  dec->add_option("--t", t, "height t < n")->required();
  dec->add_option("--k", k, "subgroup order p^k")->required();
  dec->add_flag("--serial", serial, "compute fiber ranks on one thread");
  add_json(dec);

  GroupOptions groups;
  LambdaOptions lambda_opts;
  std::string class_id, alpha;
  auto* tr = app.add_subcommand("transfer", "transfer datum of one class");
  tr->add_option("--G", groups.G, "ambient group: S4, S2xS2, S3^3, <(0 1 2 3)>, e")->required();
  tr->add_option("--H", groups.H, "subgroup, same syntax")->required();
  tr->add_option("--degree", groups.degree, "degree for generated ambient groups");
  add_lambda_options(tr, lambda_opts);
  auto* class_opt = tr->add_option("--class", class_id, "class id");
  tr->add_option("--alpha", alpha, "class given by permutations, e.g. \"(0 1)(2 3)\"")->excludes(class_opt);
  add_json(tr);

  std::string input;
  auto* ind = app.add_subcommand("induce", "induce a class function from H to G");
  ind->add_option("--G", groups.G, "ambient group")->required();
  ind->add_option("--H", groups.H, "subgroup")->required();
  ind->add_option("--degree", groups.degree, "degree for generated ambient groups");
  add_lambda_options(ind, lambda_opts);
  ind->add_option("--input", input, "JSON {class_id: \"a/b\"} on H, or - for stdin")->required();
  add_json(ind);

  auto* cs = app.add_subcommand("count-sub", "order-p^m subgroups of (Q_p/Z_p)^h");
  cs->add_option("--h", h, "rank")->required();
  cs->add_option("--p", p, "prime")->required();
  cs->add_option("--m", m, "order p^m")->required();
  add_json(cs);

  FglOptions fo;
  auto* fg = app.add_subcommand("fgl", "p^k-series, Weierstrass preparation and torsion rank");
  fg->add_option("--p", fo.p, "prime")->required();
  fg->add_option("--n", fo.n, "height of the p-typical law")->default_val(1);
  fg->add_option("--k", fo.k, "series [p^k](x)")->default_val(1);
  fg->add_option("--a", fo.a, "coefficients mod p^a")->default_val(4);
  fg->add_option("--b", fo.b, "drop u-monomials of degree >= b")->default_val(3);
  fg->add_option("--D", fo.D, "x-degree truncation (default max(p^{2n}, p^{kn}) + 1)");
  fg->add_flag("--multiplicative", fo.multiplicative, "use F = x + y + xy");
  add_json(fg);

  std::uint64_t seed = 1;
  std::vector<unsigned> only;
  auto* rep = app.add_subcommand("reproduce", "run every acceptance criterion");
  rep->add_option("--seed", seed, "seed for the random class functions")->default_val(1);
  rep->add_option("--only", only, "run only these criteria");
  add_json(rep);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (max_elements) setenv("TRANSCHROME_MAX_ELEMENTS", std::to_string(*max_elements).c_str(), 1);
    if (*homs) return cmd_homs(p, h, k, json, out);
    if (*dec) return cmd_decompose(p, n, t, k, json, serial, out);
    if (*tr) {
      if (class_id.empty() && alpha.empty()) {
        err << "usage error: transfer needs --class or --alpha\n";
        return kExitUsage;
      }
      return cmd_transfer(groups, lambda_opts, class_id, alpha, json, out);
    }
    if (*ind) return cmd_induce(groups, lambda_opts, input, json, out);
    if (*cs) return cmd_count_sub(h, p, m, json, out);
    if (*fg) return cmd_fgl(fo, json, out);
    if (*rep) return cmd_reproduce(seed, only, json, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace transchrome
