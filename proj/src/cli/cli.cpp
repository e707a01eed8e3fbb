#include "refring/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "refring/errors.hpp"
#include "refring/monoid.hpp"
#include "refring/principality.hpp"
#include "refring/theorems.hpp"

namespace refring::cli {

namespace {

using nlohmann::json;

Budget budget_from_env() {
  Budget b;
  if (const char* env = std::getenv("REFRING_SEARCH_BUDGET")) {
    try {
      const long long v = std::stoll(env);
      if (v <= 0) throw std::invalid_argument("nonpositive");
      b.search = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw ParseError(std::string("REFRING_SEARCH_BUDGET must be a positive integer, got '") + env + "'");
    }
  }
  return b;
}

std::string read_source(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (source[first] == '{' || source[first] == '[')) return source;
  std::stringstream ss;
  if (source == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(source);
    if (!in) throw ParseError("cannot open '" + source + "'");
    ss << in.rdbuf();
  }
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string entry_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  throw ParseError("matrix entries must be strings or integers, got " + j.dump());
}

std::vector<std::uint32_t> parse_counts(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit))
      throw ParseError("expected a comma-separated list of nonnegative integers, got '" + text + "'");
    out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  if (out.empty()) throw ParseError("empty vector");
  return out;
}

// ------------------------------------------------------------ matrices

struct MatrixInput {
  std::string source;
  std::string matrix;
  std::string ring = "integers";
};

void add_matrix_options(CLI::App* cmd, MatrixInput& in) {
  cmd->add_option("--input,-i", in.source, "Matrix document: JSON text, a file, or - for stdin");
  cmd->add_option("--matrix,-m", in.matrix, "Nested JSON rows, e.g. [[2,4],[4,6]]");
  cmd->add_option("--ring,-r", in.ring, "Ring descriptor used with --matrix");
}

Matrix load_matrix(const MatrixInput& in) {
  if (in.source.empty() == in.matrix.empty()) throw ParseError("give exactly one of --input and --matrix");
  if (!in.matrix.empty()) {
    const json rows = parse_json(in.matrix);
    if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty())
      throw ParseError("--matrix expects a nonempty array of nonempty rows");
    std::vector<std::string> entries;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != rows[0].size()) throw ParseError("matrix rows differ in length");
      for (const auto& x : row) entries.push_back(entry_text(x));
    }
    return Matrix::parse(Ring::parse(in.ring), rows.size(), rows[0].size(), entries);
  }
  const json doc = parse_json(read_source(in.source));
  if (!doc.is_object() || !doc.contains("ring") || !doc.contains("rows") || !doc.contains("cols") ||
      !doc.contains("entries"))
    throw ParseError("matrix document needs ring, rows, cols and entries");
  const auto rows = doc["rows"].get<long long>(), cols = doc["cols"].get<long long>();
  if (rows <= 0 || cols <= 0) throw ParseError("matrix dimensions must be positive");
  std::vector<std::string> entries;
  for (const auto& x : doc["entries"]) entries.push_back(entry_text(x));
  if (entries.size() != static_cast<std::size_t>(rows * cols))
    throw ParseError("expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(entries.size()));
  return Matrix::parse(Ring::parse(doc["ring"].get<std::string>()), static_cast<std::size_t>(rows),
                       static_cast<std::size_t>(cols), entries);
}

json matrix_doc(const Matrix& m) {
  return json{{"ring", m.ring().name()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", m.entry_strings()}};
}

int print_reduction(const Matrix& a, const DiagonalReduction& red, bool emit_witness, bool as_json,
                    std::ostream& out) {
  const bool verified = verify_reduction(a, red);
  std::optional<bool> chain;
  try {
    chain = elementary_divisor_chain_check(red);
  } catch (const UnsupportedDescriptor&) {
  }
  std::vector<std::string> diag;
  for (const auto& d : red.D.diagonal_entries()) diag.push_back(d.to_string());
  if (as_json) {
    json doc{{"input", matrix_doc(a)}, {"D", matrix_doc(red.D)}, {"diagonal", diag}, {"verified", verified}};
    doc["divisibility_chain"] = chain ? json(*chain) : json(nullptr);
    if (emit_witness) {
      doc["P"] = matrix_doc(red.P);
      doc["P_inv"] = matrix_doc(red.P_inv);
      doc["Q"] = matrix_doc(red.Q);
      doc["Q_inv"] = matrix_doc(red.Q_inv);
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "ring: " << a.ring().name() << '\n'
        << "shape: " << a.rows() << "x" << a.cols() << '\n'
        << "A: " << a.to_string() << '\n'
        << "D: " << red.D.to_string() << '\n'
        << "diagonal: [";
    for (std::size_t i = 0; i < diag.size(); ++i) out << (i ? ", " : "") << diag[i];
    out << "]\n"
        << "divisibility-chain: " << (chain ? (*chain ? "holds" : "fails") : "unsupported") << '\n';
    if (emit_witness) {
      out << "P: " << red.P.to_string() << '\n'
          << "P_inv: " << red.P_inv.to_string() << '\n'
          << "Q: " << red.Q.to_string() << '\n'
          << "Q_inv: " << red.Q_inv.to_string() << '\n';
    }
    out << "verified: " << (verified ? "true" : "false") << '\n';
  }
  return verified ? kOk : kViolated;
}

// ------------------------------------------------------------ monoids

struct MonoidInput {
  std::string presentation;
  std::size_t free_rank = 0;
};

void add_monoid_options(CLI::App* cmd, MonoidInput& in) {
  cmd->add_option("--presentation,-p", in.presentation,
                  "Presentation document {\"generators\":k,\"relations\":[[lhs,rhs],...]}: JSON text or file");
  cmd->add_option("--free", in.free_rank, "Free commutative monoid of this rank");
}

PresentationPtr load_presentation(const MonoidInput& in) {
  if (in.presentation.empty() == (in.free_rank == 0))
    throw ParseError("give exactly one of --presentation and --free");
  if (in.free_rank) return MonoidPresentation::free(in.free_rank);
  const json doc = parse_json(read_source(in.presentation));
  if (!doc.is_object() || !doc.contains("generators")) throw ParseError("presentation needs a generator count");
  const auto k = doc["generators"].get<long long>();
  if (k <= 0) throw ParseError("generator count must be positive");
  std::vector<Relation> rels;
  if (doc.contains("relations"))
    for (const auto& r : doc["relations"]) {
      if (!r.is_array() || r.size() != 2) throw ParseError("a relation is a pair of exponent vectors");
      rels.push_back(Relation{r[0].get<Exponents>(), r[1].get<Exponents>()});
    }
  return MonoidPresentation::make(static_cast<std::size_t>(k), std::move(rels));
}

MonoidElement monoid_element(const PresentationPtr& p, const std::string& text) {
  auto v = parse_counts(text);
  return MonoidElement(p, Exponents(v.begin(), v.end()));
}

// ------------------------------------------------------------ modules

BasisPtr basis_of(const Ring& r, const Budget& budget) {
  return std::make_shared<const IdempotentBasis>(primitive_idempotent_decomposition(r, budget));
}

bool is_count_list(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(c) || c == ',' || c == ' '; });
}

// Sum of summands: R, R^n, ideal(a), ann(a), quot(a) (= R/aR).
FiniteModule parse_module(const Ring& r, const std::string& text, const Budget& budget) {
  std::vector<FiniteModule> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '+')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    auto arg = [&](const std::string& head) -> std::optional<Element> {
      if (item.rfind(head + "(", 0) != 0 || item.back() != ')') return std::nullopt;
      return r.parse_element(item.substr(head.size() + 1, item.size() - head.size() - 2));
    };
    if (item == "R") {
      parts.push_back(FiniteModule::free(r, 1, budget));
    } else if (item.rfind("R^", 0) == 0) {
      parts.push_back(FiniteModule::free(r, std::stoul(item.substr(2)), budget));
    } else if (auto a = arg("ideal")) {
      parts.push_back(FiniteModule::from_ideal(r, principal_ideal(*a, budget), budget));
    } else if (auto a2 = arg("ann")) {
      Ideal ann;
      for (const auto& x : r.elements(budget))
        if ((*a2 * x).is_zero()) ann.push_back(x);
      parts.push_back(FiniteModule::from_ideal(r, ann, budget));
    } else if (auto a3 = arg("quot")) {
      parts.push_back(FiniteModule::ring_quotient(r, principal_ideal(*a3, budget), budget));
    } else {
      throw ParseError("unknown module summand '" + item + "' (use R, R^n, ideal(a), ann(a), quot(a))");
    }
  }
  if (parts.empty()) throw ParseError("empty module expression");
  return FiniteModule::direct_sum(parts, r, budget);
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::holds: return kOk;
    case Verdict::violated: return kViolated;
    case Verdict::inconclusive: return kInconclusive;
  }
  return kViolated;
}

void print_principality(const PrincipalityVerdict& v, std::ostream& out) {
  out << "verdict: " << v.to_string() << '\n' << "candidates-checked: " << v.candidates_checked << '\n';
  if (v.kind == PrincipalityVerdict::Kind::principal_witness) {
    out << "generator: " << v.generator->to_string() << '\n' << "combination: ";
    for (std::size_t i = 0; i < v.combination.size(); ++i) out << (i ? ", " : "") << v.combination[i].to_string();
    out << "\nre-verified: true\n";
  } else {
    out << "evidence: bounded evidence only; no generator of degree <= " << v.degree_bound
        << " with cofactors and combination coefficients of degree <= " << v.degree_bound
        << "; this does not prove the ideal non-principal\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact diagonal reduction and structure checks over computable commutative rings", "refring"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  MatrixInput snf_in, reduce_in;
  bool emit_witness = false, emit_json = false, hermite = false;
  auto* snf = app.add_subcommand("snf", "Smith normal form over integers or F_p[X]");
  add_matrix_options(snf, snf_in);
  snf->add_flag("--emit-witness", emit_witness, "Print P, P_inv, Q, Q_inv");
  snf->add_flag("--json", emit_json, "Emit JSON");

  auto* reduce = app.add_subcommand("reduce", "Witnessed diagonal reduction");
  add_matrix_options(reduce, reduce_in);
  reduce->add_flag("--emit-witness", emit_witness, "Print P, P_inv, Q, Q_inv");
  reduce->add_flag("--json", emit_json, "Emit JSON");
  reduce->add_flag("--hermite", hermite, "Bezout-built reduction of a 1x2 or 2x1 matrix");

  std::string ring_text = "integers";
  std::vector<std::string> pair;
  auto* bez = app.add_subcommand("bezout", "Bezout identity s a + t b = d");
  bez->add_option("--ring,-r", ring_text, "Ring descriptor");
  bez->add_option("operands", pair, "a b")->expected(2)->required();

  MonoidInput refine_in;
  std::string x1, x2, y1, y2;
  std::uint32_t refine_bound = 10;
  auto* ref = app.add_subcommand("refine", "2x2 refinement of x1 + x2 = y1 + y2");
  add_monoid_options(ref, refine_in);
  ref->add_option("--x1", x1, "Exponent vector, e.g. 2,0")->required();
  ref->add_option("--x2", x2)->required();
  ref->add_option("--y1", y1)->required();
  ref->add_option("--y2", y2)->required();
  ref->add_option("--bound", refine_bound, "Largest exponent tried in any z entry");

  MonoidInput canc_in;
  std::string unit_text, canc_ring;
  std::uint32_t canc_max = 3;
  std::vector<std::string> canc_candidates;
  std::size_t rewrite_steps = kDefaultRewriteSteps;
  auto* canc = app.add_subcommand("check-cancellation", "2u + A = u + B implies u + A = B");
  add_monoid_options(canc, canc_in);
  canc->add_option("--ring,-r", canc_ring, "Use V(R) with u = [R] instead of a presentation");
  canc->add_option("--unit,-u", unit_text, "The element u");
  canc->add_option("--max-exponent", canc_max, "Candidates: every element with exponents up to this");
  canc->add_option("--candidate,-c", canc_candidates, "Explicit candidate (repeatable)");
  canc->add_option("--rewrite-steps", rewrite_steps, "Rewriting search bound for presented monoids");

  std::string loc_ring, loc_mult, loc_ideal, loc_element;
  std::optional<std::size_t> loc_index;
  auto* loc = app.add_subcommand("localize", "Localize a projective module");
  loc->add_option("--ring,-r", loc_ring, "Finite ring descriptor")->required();
  loc->add_option("--multiplicities,-t", loc_mult, "Multiplicities over the primitive idempotents")->required();
  auto* loc_group = loc->add_option_group("target");
  loc_group->add_option("--maximal", loc_index, "Index into the maximal ideals");
  loc_group->add_option("--ideal", loc_ideal, "Maximal ideal as comma-separated elements");
  loc_group->add_option("--element", loc_element, "Invert the powers of this element");
  loc_group->require_option(0, 1);

  std::string iso_ring, iso_left, iso_right;
  auto* iso = app.add_subcommand("iso", "Module isomorphism");
  iso->add_option("--ring,-r", iso_ring, "Finite ring descriptor")->required();
  iso->add_option("--left", iso_left, "Multiplicities (1,2) or a module sum such as ann(3)+ideal(3)")->required();
  iso->add_option("--right", iso_right)->required();

  std::string verify_ring;
  SuiteOptions suite;
  auto* ver = app.add_subcommand("verify", "Theorem suite over a finite ring");
  ver->add_option("--ring,-r", verify_ring, "Finite ring descriptor")->required();
  ver->add_option("--bound,-b", suite.bound, "Multiplicity bound")->check(CLI::PositiveNumber);
  ver->add_option("--samples", suite.refine_samples, "Random refinement splittings");
  ver->add_option("--max-matrices", suite.max_matrices, "Largest exhaustive 2x2 matrix family");

  std::string which;
  unsigned degree = 0, height = 2;
  std::int64_t prime = 2;
  auto* cex = app.add_subcommand("counterexample", "Bounded searches behind the non-Bezout and non-Hermite examples");
  cex->add_option("example", which, "ex31 | ex33 | ex34")->required()->check(CLI::IsMember({"ex31", "ex33", "ex34"}));
  cex->add_option("--degree,-d", degree, "Degree bound (ex31: 3, ex33: 2)");
  cex->add_option("--prime,-p", prime, "Field size for ex33");
  cex->add_option("--height", height, "Entry height bound for ex34");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const Budget budget = budget_from_env();

    if (*snf) {
      const Matrix a = load_matrix(snf_in);
      return print_reduction(a, smith_normal_form(a), emit_witness, emit_json, out);
    }
    if (*reduce) {
      const Matrix a = load_matrix(reduce_in);
      return print_reduction(a, hermite ? hermite_reduce(a) : diagonal_reduction(a), emit_witness, emit_json, out);
    }
    if (*bez) {
      const Ring r = Ring::parse(ring_text);
      const Element a = r.parse_element(pair[0]), b = r.parse_element(pair[1]);
      const Bezout res = bezout_gcd(a, b);
      const bool ok = res.s * a + res.t * b == res.d;
      out << "d: " << res.d.to_string() << "\ns: " << res.s.to_string() << "\nt: " << res.t.to_string()
          << "\nidentity: (" << res.s.to_string() << ")*(" << a.to_string() << ") + (" << res.t.to_string() << ")*("
          << b.to_string() << ") = " << res.d.to_string() << "\nverified: " << (ok ? "true" : "false") << '\n';
      return ok ? kOk : kViolated;
    }
    if (*ref) {
      const auto p = load_presentation(refine_in);
      const auto a1 = monoid_element(p, x1), a2 = monoid_element(p, x2), b1 = monoid_element(p, y1),
                 b2 = monoid_element(p, y2);
      const auto w = refine(a1, a2, b1, b2, refine_bound, budget);
      out << "presentation: " << p->to_string() << '\n';
      if (!w) {
        out << "result: exhausted\nbound: " << refine_bound << '\n';
        return kInconclusive;
      }
      out << "result: refined\n"
          << "z: [[" << w->z[0][0].to_string() << ", " << w->z[0][1].to_string() << "], [" << w->z[1][0].to_string()
          << ", " << w->z[1][1].to_string() << "]]\n"
          << "verified: " << (w->reproduces(a1, a2, b1, b2) ? "true" : "false") << '\n';
      return kOk;
    }
    if (*canc) {
      PresentationPtr p;
      std::optional<MonoidElement> unit;
      if (!canc_ring.empty()) {
        const ProjectiveMonoid v = projective_monoid(Ring::parse(canc_ring), budget);
        p = v.presentation;
        unit = v.unit();
      } else {
        p = load_presentation(canc_in);
        if (unit_text.empty()) throw ParseError("--unit is required with a presentation");
      }
      if (!unit_text.empty()) unit = monoid_element(p, unit_text);
      std::vector<MonoidElement> cands;
      if (canc_candidates.empty()) {
        cands = elements_up_to(p, canc_max, budget);
      } else {
        for (const auto& c : canc_candidates) cands.push_back(monoid_element(p, c));
      }
      const auto rep = cancellation_law_check(*unit, cands, rewrite_steps);
      out << "presentation: " << p->to_string() << "\nunit: " << unit->to_string()
          << "\ncandidates: " << cands.size() << "\npairs-checked: " << rep.pairs_checked << '\n';
      switch (rep.status) {
        case CancellationReport::Status::holds: out << "result: holds\n"; return kOk;
        case CancellationReport::Status::counterexample:
          out << "result: counterexample\nA: " << rep.pair->first.to_string() << "\nB: " << rep.pair->second.to_string()
              << '\n';
          return kViolated;
        case CancellationReport::Status::inconclusive:
          out << "result: inconclusive\nA: " << rep.pair->first.to_string() << "\nB: "
              << rep.pair->second.to_string() << '\n';
          return kInconclusive;
      }
    }
    if (*loc) {
      const Ring r = Ring::parse(loc_ring);
      const ProjectiveModule m(basis_of(r, budget), parse_counts(loc_mult));
      std::vector<LocalizedView> views;
      if (loc_index) {
        views.push_back(localize_at_maximal(m, *loc_index, budget));
      } else if (!loc_ideal.empty()) {
        Ideal ideal;
        std::stringstream ss(loc_ideal);
        std::string item;
        while (std::getline(ss, item, ',')) ideal.push_back(r.parse_element(item));
        views.push_back(localize_at_maximal(m, ideal, budget));
      } else if (!loc_element.empty()) {
        views.push_back(localize_at_element(m, r.parse_element(loc_element), budget));
      } else {
        for (std::size_t i = 0; i < m.basis()->size(); ++i) views.push_back(localize_at_maximal(m, i, budget));
      }
      out << "ring: " << r.name() << "\nmodule: " << m.to_string() << '\n';
      for (const auto& v : views)
        out << "localization: " << v.target << " idempotent=" << v.idempotent.to_string()
            << " local-ring=" << v.local_ring().name() << " module=" << v.projective->to_string() << '\n';
      return kOk;
    }
    if (*iso) {
      const Ring r = Ring::parse(iso_ring);
      bool result;
      if (is_count_list(iso_left) && is_count_list(iso_right)) {
        const BasisPtr b = basis_of(r, budget);
        result = module_iso(ProjectiveModule(b, parse_counts(iso_left)), ProjectiveModule(b, parse_counts(iso_right)));
        out << "kind: projective\n";
      } else {
        const FiniteModule a = parse_module(r, iso_left, budget), c = parse_module(r, iso_right, budget);
        const auto map = find_module_iso(a, c, budget);
        result = map.has_value();
        out << "kind: finite\nleft-size: " << a.size() << "\nright-size: " << c.size() << '\n';
        if (map) {
          out << "witness:";
          for (std::size_t x = 0; x < a.size(); ++x)
            out << ' ' << a.format(static_cast<ModIndex>(x)) << "->" << c.format((*map)[x]);
          out << '\n';
        }
      }
      out << "isomorphic: " << (result ? "true" : "false") << '\n';
      return kOk;
    }
    if (*ver) {
      const Ring r = Ring::parse(verify_ring);
      const Report rep = theorem_suite(r, suite, budget);
      out << rep << "overall: " << to_string(rep.overall()) << '\n';
      return verdict_exit(rep.overall());
    }
    if (*cex) {
      if (which == "ex31") {
        const unsigned d = degree ? degree : 3;
        const Ring r = Ring::parse("poly(modular(4), bound=" + std::to_string(d) + ")");
        const auto v = bounded_principality_check(r, {r.parse_element("2"), r.parse_element("X")}, d, budget);
        out << "ring: " << r.name() << "\nideal: (2, X)\n";
        print_principality(v, out);
        const JacobsonQuotient jq = jacobson_radical_and_quotient(Ring::modular(4), budget);
        const Ring bar = Ring::polynomials(jq.quotient(), d);
        const auto vb = bounded_principality_check(bar, {bar.parse_element("0"), bar.parse_element("X")}, d, budget);
        out << "residue-ring: " << bar.name() << " image-ideal: (0, X) verdict: " << vb.to_string() << '\n';
        return v.kind == PrincipalityVerdict::Kind::not_principal_up_to ? kOk : kViolated;
      }
      if (which == "ex33") {
        const unsigned d = degree ? degree : 2;
        if (prime < 2) throw ParseError("--prime must be a prime");
        const Ring r = Ring::parse("bipoly(prime(" + std::to_string(prime) + "), bound=" + std::to_string(d) + ")");
        const auto v = bounded_principality_check(r, {r.parse_element("X"), r.parse_element("Y")}, d, budget);
        out << "ring: " << r.name() << "\nideal: (X, Y)\n";
        print_principality(v, out);
        return v.kind == PrincipalityVerdict::Kind::not_principal_up_to ? kOk : kViolated;
      }
      const auto s = trivial_extension_row_search(height, budget);
      out << "ring: " << Ring::trivial_extension(Ring::integers()).name() << "\nrow: ((2,0), (0,1))\nheight: "
          << height << "\ncandidates: " << s.candidates << '\n';
      if (s.found) {
        out << "result: reduction found\nQ: " << s.found->Q.to_string() << "\nD: " << s.found->D.to_string() << '\n';
        return kViolated;
      }
      out << "result: no reduction found within bounds (bounded evidence only)\n";
      return kOk;
    }
  } catch (const BudgetExceeded& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace refring::cli
