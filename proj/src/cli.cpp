#include "gmf/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gmf/error.hpp"
#include "gmf/etaforms.hpp"
#include "gmf/gmfcore.hpp"
#include "gmf/json_io.hpp"
#include "gmf/subgroup.hpp"

namespace gmf::cli {

namespace {

using nlohmann::json;

struct Options {
  std::optional<Exponent> prec;
  std::string group;
  std::string field;
  std::string basis;
  std::string prefix;
  std::string output;
  std::string f;
  std::string g;
  std::string dec;
  std::int64_t exponent = 1;
  std::uint64_t level = 0;
  int jobs = 1;
  std::vector<std::string> positional;
};

class Runner {
 public:
  Runner(const Options& o, std::istream& in) : o_(o), in_(in) {}

  json dispatch(const std::string& verb) {
    if (verb == "kappa") return kappa_verb();
    if (verb == "cosets") return cosets_verb();
    if (verb == "cusps") return cusps_verb();
    if (verb == "eta-expand") return eta_expand_verb();
    if (verb == "logderiv") return io::series_to_json(theta_logderiv(series(input(false))));
    if (verb == "exp-logderiv") {
      const QExpansion g = series(input(false));
      return io::series_to_json(exp_from_logderiv(g, o_.prec.value_or(g.precision())));
    }
    if (verb == "mul") return io::series_to_json(mul(series(input(false)), series(require(o_.g, "--g"))));
    if (verb == "inv") {
      const QExpansion f = series(input(false));
      return io::series_to_json(o_.prec ? inverse(f, *o_.prec) : inverse(f));
    }
    if (verb == "pow") return io::series_to_json(pow(series(input(false)), o_.exponent));
    if (verb == "rescale") return rescale_verb();
    if (verb == "decompose") return decompose_verb();
    if (verb == "certify") return certify_verb();
    if (verb == "verify") return verify_verb();
    if (verb == "galois-norm") return io::series_to_json(galois_norm(pgmf(input(false))).expansion);
    if (verb == "k-op") return io::series_to_json(k_operator(pgmf(input(false))).expansion);
    if (verb == "denom-primes") return denom_primes_verb();
    if (verb == "validate-basis") return validate_basis_verb();
    throw std::logic_error("unhandled verb " + verb);
  }

  bool failed() const { return failed_; }

 private:
  static const std::string& require(const std::string& value, const char* flag) {
    if (value.empty()) throw CLI::ValidationError(flag, "is required for this verb");
    return value;
  }

  GroupDescriptor group() const {
    if (!o_.group.empty()) return GroupDescriptor::parse(o_.group);
    if (!o_.positional.empty()) return GroupDescriptor::parse(o_.positional[0]);
    throw CLI::ValidationError("--group", "a group descriptor is required");
  }

  // --f, else the first positional not taken by the group descriptor.
  std::string input(bool group_verb) const {
    if (!o_.f.empty()) return o_.f;
    const std::size_t skip = group_verb && o_.group.empty() ? 1 : 0;
    return o_.positional.size() > skip ? o_.positional[skip] : std::string();
  }

  json load(const std::string& path) {
    if (path.empty() || path == "-") {
      std::ostringstream ss;
      ss << in_.rdbuf();
      return io::parse(ss.str());
    }
    return io::read_file(path);
  }

  QExpansion series(const std::string& path) {
    QExpansion f = io::series_from_json(load(path));
    if (!o_.field.empty()) f = promote(f, io::parse_field(o_.field));
    return f;
  }

  PGMF pgmf(const std::string& path) {
    const auto g = o_.group.empty() ? GroupDescriptor::sl2z() : group();
    return PGMF::make(series(path), g);
  }

  CuspFormBasis basis_for(const GroupDescriptor& g, Exponent precision) {
    if (o_.basis.empty()) return load_basis(g, precision);
    CuspFormBasis b = io::basis_from_json(io::read_file(o_.basis));
    if (!(b.group == g)) {
      throw Error(ErrorKind::group_mismatch,
                  "basis file is for " + to_string(b.group) + ", expected " + to_string(g));
    }
    Exponent have = 0;
    for (const auto& f : b.forms) have = std::max(have, f.precision());
    return prepare_basis(std::move(b), have);
  }

  Exponent working_precision(const GroupDescriptor& g) const {
    return o_.prec.value_or(default_working_precision(gmf::kappa(g)));
  }

  // Precision the cofactor series needs when f has lead h.
  static Exponent basis_precision(Exponent w, const QExpansion& f) {
    return w - std::min<Exponent>(f.lead(), 0);
  }

  json kappa_verb() {
    const auto g = group();
    return json{{"cusps", cusp_count(g)}, {"kappa", gmf::kappa(g)}, {"p_index", p_index(g)}};
  }

  json cosets_verb() {
    const auto g = group();
    const auto table = coset_table(g);
    json reps = json::array();
    for (const auto& m : table->reps)
      reps.push_back(json::array({m.a.get_str(), m.b.get_str(), m.c.get_str(), m.d.get_str()}));
    return json{{"group", to_string(g)},
                {"p_index", table->reps.size()},
                {"reps", reps},
                {"s_action", table->s_action},
                {"t_action", table->t_action}};
  }

  json cusps_verb() {
    const auto g = group();
    const auto table = coset_table(g);
    const auto inv = invariants(g);
    std::vector<std::size_t> widths;
    for (const auto& orbit : table->cusp_orbits) widths.push_back(orbit.size());
    return json{{"contains_minus_identity", inv.contains_minus_identity},
                {"cusps", inv.cusp_count},
                {"elliptic2", inv.elliptic2},
                {"elliptic3", inv.elliptic3},
                {"genus", inv.genus},
                {"group", to_string(g)},
                {"kappa", inv.kappa},
                {"p_index", inv.p_index},
                {"widths", widths}};
  }

  json eta_expand_verb() {
    if (o_.positional.empty()) throw CLI::ValidationError("quotient", "an eta quotient such as \"1^2 11^2\" is required");
    std::string text;
    for (const auto& p : o_.positional) text += (text.empty() ? "" : " ") + p;
    const EtaQuotient eq = EtaQuotient::parse(text, o_.level);
    QExpansion f = eta_quotient_expansion(eq, o_.prec.value_or(20));
    if (!o_.field.empty()) f = promote(f, io::parse_field(o_.field));
    return io::series_to_json(f);
  }

  json rescale_verb() {
    const QExpansion f = series(input(false));
    if (o_.level == 0) throw CLI::ValidationError("--level", "target level is required");
    if (o_.level % f.level() == 0) return io::series_to_json(rescale_level(f, o_.level));
    return io::series_to_json(reduce_level(f, o_.level));
  }

  json decompose_verb() {
    const auto g = group();
    const auto prefix = io::prefix_from_json(load(require(o_.prefix, "--prefix")));
    const PGMF f = PGMF::make(series(input(true)), g);
    const Exponent w = working_precision(g);
    const CuspFormBasis basis = basis_for(g, basis_precision(w, f.expansion));
    const auto dec = decompose_with_prefix(f, prefix, basis, w);
    return io::decomposition_to_json(dec, verify_decomposition(f, dec, &basis));
  }

  json certify_verb() {
    std::vector<std::string> files = o_.positional;
    if (o_.group.empty() && !files.empty()) files.erase(files.begin());  // group given positionally
    if (!o_.f.empty()) files.insert(files.begin(), o_.f);
    const auto g = group();
    const Exponent w = working_precision(g);
    std::optional<std::vector<FieldElement>> prefix;
    if (!o_.prefix.empty()) prefix = io::prefix_from_json(load(o_.prefix));
    if (files.size() <= 1) {
      const PGMF f = PGMF::make(series(files.empty() ? "" : files[0]), g);
      const CuspFormBasis basis = basis_for(g, basis_precision(w, f.expansion));
      return io::certificate_to_json(finite_order_certificate(f, basis, w, prefix));
    }
    // Independent inputs: parse serially, certify in parallel.
    std::vector<PGMF> inputs;
    Exponent need = w;
    for (const auto& path : files) {
      inputs.push_back(PGMF::make(series(path), g));
      need = std::max(need, basis_precision(w, inputs.back().expansion));
    }
    const CuspFormBasis basis = basis_for(g, need);
    std::vector<json> results(files.size());
    const int jobs = std::max(1, o_.jobs);
#pragma omp parallel for num_threads(jobs) schedule(dynamic)
    for (std::size_t i = 0; i < files.size(); ++i) {
      json r;
      try {
        r = io::certificate_to_json(finite_order_certificate(inputs[i], basis, w, prefix));
      } catch (const Error& e) {
        r = json{{"error_kind", to_string(e.kind())}, {"message", e.what()}};
      }
      r["file"] = files[i];
      results[i] = std::move(r);
    }
    for (const auto& r : results)
      if (r.contains("error_kind")) failed_ = true;
    return json(results);
  }

  json verify_verb() {
    const auto g = group();
    const PGMF f = PGMF::make(series(input(true)), g);
    const auto dec = io::decomposition_from_json(load(require(o_.dec, "--dec")), g);
    std::optional<CuspFormBasis> basis;
    try {
      basis = basis_for(g, dec.g0.precision());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::no_basis_available) throw;
    }
    const auto report = verify_decomposition(f, dec, basis ? &*basis : nullptr);
    failed_ = !report.ok();
    return io::report_to_json(report);
  }

  json denom_primes_verb() {
    const auto r = denominator_prime_report(pgmf(input(false)));
    json primes = json::array();
    for (const auto& p : r.primes) primes.push_back(p.get_str());
    return json{{"from_cyclotomic_coordinates", r.from_cyclotomic_coordinates}, {"primes", primes}};
  }

  json validate_basis_verb() {
    const auto g = group();
    CuspFormBasis b;
    if (o_.basis.empty()) {
      b = load_basis(g, o_.prec.value_or(default_working_precision(gmf::kappa(g))));
    } else {
      b = io::basis_from_json(io::read_file(o_.basis));
      if (!(b.group == g)) {
        throw Error(ErrorKind::group_mismatch,
                    "basis file is for " + to_string(b.group) + ", expected " + to_string(g));
      }
    }
    const auto report = validate_basis(b);
    json out = io::basis_report_to_json(report);
    out["dimension"] = b.dimension();
    out["group"] = to_string(g);
    if (!report.ok()) {
      out["error_kind"] = to_string(ErrorKind::corrupt_basis);
      failed_ = true;
    }
    return out;
  }

  const Options& o_;
  std::istream& in_;
  bool failed_ = false;
};

const std::vector<std::pair<std::string, std::string>> kVerbs{
    {"kappa", "index, cusp count and kappa of a group"},
    {"cosets", "coset representatives and the S, T action"},
    {"cusps", "cusp widths and the invariants of the modular curve"},
    {"eta-expand", "q-expansion of an eta quotient \"d1^r1 d2^r2 ...\""},
    {"logderiv", "theta log-derivative of a series"},
    {"exp-logderiv", "series with the given log-derivative and constant term 1"},
    {"mul", "product of --f and --g"},
    {"inv", "multiplicative inverse"},
    {"pow", "power --exp"},
    {"rescale", "rewrite a series at --level"},
    {"decompose", "canonical decomposition from an f1 prefix"},
    {"certify", "finite-order certificate for one or more series"},
    {"verify", "replay the identities of a decomposition"},
    {"galois-norm", "product of the Galois conjugates"},
    {"k-op", "K operator: conjugate the coefficients"},
    {"denom-primes", "primes dividing a coefficient denominator"},
    {"validate-basis", "check a cusp form basis"},
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact q-expansion arithmetic for generalized modular functions", "gmf"};
  app.require_subcommand(1);
  Options o;
  for (const auto& [verb, help] : kVerbs) {
    auto* sub = app.add_subcommand(verb, help);
    sub->add_option("--prec", o.prec, "working precision in q_N exponent units");
    sub->add_option("--group", o.group, "gamma0:N, gamma1:N or gamma:N");
    sub->add_option("--field", o.field, "rational or cyclotomic:<m>");
    sub->add_option("--basis", o.basis, "cusp form basis file");
    sub->add_option("--prefix", o.prefix, "f1 prefix file");
    sub->add_option("--jobs", o.jobs, "parallel jobs for certify")->check(CLI::PositiveNumber);
    sub->add_option("--output", o.output, "write the result to a file");
    sub->add_option("--f", o.f, "input series file (default: standard input)");
    sub->add_option("--g", o.g, "second series file");
    sub->add_option("--dec", o.dec, "decomposition file");
    sub->add_option("--exp", o.exponent, "exponent for pow");
    sub->add_option("--level", o.level, "target or ambient level");
    sub->add_option("args", o.positional, "group descriptor, eta quotient or input files");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "run 'gmf --help' for usage\n";
    return kUsage;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  Runner runner(o, in);
  json result;
  try {
    result = runner.dispatch(verb);
  } catch (const CLI::Error& e) {
    err << verb << ": " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    out << json{{"error_kind", to_string(e.kind())}, {"message", e.what()}}.dump() << "\n";
    return kDomainError;
  } catch (const nlohmann::json::exception& e) {
    out << json{{"error_kind", to_string(ErrorKind::parse_error)}, {"message", e.what()}}.dump() << "\n";
    return kDomainError;
  }

  const std::string text = result.dump() + "\n";
  if (o.output.empty()) {
    out << text;
  } else {
    std::ofstream file(o.output);
    if (!file || !(file << text)) {
      out << json{{"error_kind", to_string(ErrorKind::io_error)}, {"message", "cannot write '" + o.output + "'"}}.dump()
          << "\n";
      return kDomainError;
    }
  }
  return runner.failed() ? kDomainError : kOk;
}

}  // namespace gmf::cli
