#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "projcalc/error.hpp"
#include "projcalc/index_calculus.hpp"
#include "projcalc/projection_pair.hpp"
#include "projcalc/rep_builder.hpp"
#include "projcalc/spectral.hpp"
#include "projcalc/tolerance.hpp"
#include "projcalc/words.hpp"

namespace projcalc::cli {

using nlohmann::json;

namespace {

struct Options {
  ToleranceConfig tol;
  unsigned k_max = 3;
  std::uint64_t seed = 0;
  std::string out_prefix;
  std::string p_path;
  std::string q_path;
  std::string spec_path;
  std::size_t m11 = 0, m00 = 0, m10 = 0, m01 = 0;
  std::vector<std::string> points;  // "theta:mult" or "theta"
  std::vector<std::string> words;
  std::vector<std::string> projections;
  bool crossed = false;
};

// Everything a report needs besides the payload.
struct Session {
  std::string command;
  std::vector<std::string> argv;
  const Options* opts = nullptr;
  json inputs = json::array();
  json outputs = json::array();
};

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::ParseError:
    case Errc::LengthExceeded:
    case Errc::MismatchedArity:
      return kParseError;
    case Errc::NotSquare:
    case Errc::NotHermitian:
    case Errc::ValidationFailed:
    case Errc::InconsistentDims:
    case Errc::InvalidSpec:
      return kValidationError;
    case Errc::NoConvergence:
    case Errc::PairingFailure:
    case Errc::DegenerateAngle:
      return kCheckFailed;
  }
  return kCheckFailed;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(Session& s, const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, "cannot write " + path);
  out << text;
  if (!out) throw Error(Errc::ParseError, "write to " + path + " failed");
  s.outputs.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
}

json load_json(Session& s, const std::string& path) {
  const std::string text = read_file(path);
  s.inputs.push_back({{"path", path}, {"sha256", sha256_hex(text)}});
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

DenseMatrix load_matrix(Session& s, const std::string& path) {
  try {
    return matrix_from_json(load_json(s, path));
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

ProjectionPair load_pair(Session& s, const Options& o) {
  DenseMatrix p = load_matrix(s, o.p_path);
  DenseMatrix q = load_matrix(s, o.q_path);
  return {std::move(p), std::move(q), o.tol};
}

RepSpec load_spec(Session& s, const Options& o) {
  if (!o.spec_path.empty()) return spec_from_json(load_json(s, o.spec_path));
  RepSpec spec;
  spec.m11 = o.m11;
  spec.m00 = o.m00;
  spec.m10 = o.m10;
  spec.m01 = o.m01;
  for (const std::string& text : o.points) {
    SpectralPoint pt;
    const auto colon = text.find(':');
    try {
      std::size_t used = 0;
      const std::string theta = text.substr(0, colon);
      pt.theta = std::stod(theta, &used);
      if (used != theta.size()) throw std::invalid_argument(text);
      if (colon != std::string::npos) {
        const std::string mult = text.substr(colon + 1);
        const long long m = std::stoll(mult, &used);
        if (used != mult.size() || m < 0) throw std::invalid_argument(text);
        pt.mult = static_cast<std::size_t>(m);
      }
    } catch (const std::logic_error&) {
      throw Error(Errc::ParseError, "point must read theta or theta:mult, got \"" + text + "\"");
    }
    spec.points.push_back(pt);
  }
  return spec;
}

json tolerances_json(const ToleranceConfig& t) {
  return {{"tol_validate", t.tol_validate},
          {"tol_cluster", t.tol_cluster},
          {"tol_rank", t.tol_rank},
          {"tol_report", t.tol_report}};
}

json report(const Session& s, json result, json flags, int exit_code) {
  json r;
  r["schema"] = kSchema;
  r["command"] = {{"name", s.command}, {"argv", s.argv}};
  r["inputs"] = s.inputs;
  if (!s.outputs.empty()) r["outputs"] = s.outputs;
  r["tolerances"] = tolerances_json(s.opts->tol);
  r["result"] = std::move(result);
  r["flags"] = std::move(flags);
  r["exit_code"] = exit_code;
  return r;
}

struct Outcome {
  json result;
  json flags;
  int code = kOk;
};

Outcome pass_fail(json result, bool passed) {
  return {std::move(result), {{"passed", passed}}, passed ? kOk : kCheckFailed};
}

json decomposition_json(const HalmosDecomposition& dec) {
  return {{"m11", dec.m11},
          {"m00", dec.m00},
          {"m10", dec.m10},
          {"m01", dec.m01},
          {"angles", dec.angles},
          {"near_degenerate", dec.near_degenerate},
          {"basis", matrix_to_json(dec.basis)}};
}

json spectrum_json(const SpectrumReport& sr) {
  json paired = json::array();
  for (const auto& p : sr.paired) paired.push_back({{"lambda", p.lambda}, {"multiplicity", p.multiplicity}});
  return {{"plus_ones", sr.plus_ones},
          {"minus_ones", sr.minus_ones},
          {"zeros", sr.zeros},
          {"paired", std::move(paired)},
          {"residual", sr.residual}};
}

json estimate_json(const IntegerEstimate& e) {
  return {{"value", e.value}, {"rounded", e.rounded}, {"residual", e.residual}};
}

json certificate_json(const IndexCertificate& c) {
  json by_trace = json::array();
  json by_pairing = json::array();
  for (const auto& e : c.index_by_trace) by_trace.push_back(estimate_json(e));
  for (const auto& e : c.index_by_pairing) by_pairing.push_back(estimate_json(e));
  return {{"index_by_rank", c.index_by_rank},
          {"index_by_trace", std::move(by_trace)},
          {"index_by_pairing", std::move(by_pairing)},
          {"agree", c.agree}};
}

json trace_json(const TraceStabilityReport& t) {
  json traces = json::array();
  for (double x : t.traces) traces.push_back(estimate_json(to_integer_estimate(x)));
  return {{"traces", std::move(traces)},
          {"max_deviation", t.max_deviation},
          {"max_imaginary", t.max_imaginary},
          {"passed", t.passed}};
}

Outcome cmd_decompose(Session& s, const Options& o) {
  const ProjectionPair pair = load_pair(s, o);
  const SpectrumReport spectrum = difference_spectrum(pair, o.tol);
  const HalmosDecomposition dec = halmos_decompose(pair, o.tol);
  const double residual = verify_decomposition(pair, dec);
  json result = {{"dim", pair.dim()},
                 {"decomposition", decomposition_json(dec)},
                 {"spectrum", spectrum_json(spectrum)},
                 {"verification_residual", residual}};
  return pass_fail(std::move(result), residual <= o.tol.tol_report);
}

Outcome cmd_index(Session& s, const Options& o) {
  const ProjectionPair pair = load_pair(s, o);
  const IndexCertificate cert = index_theorem_check(pair, o.k_max, o.tol);
  return pass_fail({{"dim", pair.dim()}, {"k_max", o.k_max}, {"certificate", certificate_json(cert)}},
                   cert.agree);
}

Outcome cmd_trace_powers(Session& s, const Options& o) {
  const ProjectionPair pair = load_pair(s, o);
  const TraceStabilityReport t = trace_stability_check(pair, o.k_max, o.tol);
  return pass_fail({{"dim", pair.dim()}, {"k_max", o.k_max}, {"trace_powers", trace_json(t)}}, t.passed);
}

bool looks_crossed(const std::string& text) {
  return text.find_first_of("VW") != std::string::npos;
}

std::size_t largest_index(const std::vector<std::string>& words, bool crossed) {
  std::size_t k = 0;
  for (const auto& w : words) {
    k = std::max(k, crossed ? parse_crossed(w).word.m : parse_free_product(w).n);
  }
  return k;
}

Outcome cmd_word_multiply(const Options& o) {
  if (o.words.empty()) throw Error(Errc::ParseError, "multiply needs at least one word");
  const bool crossed = o.crossed || std::any_of(o.words.begin(), o.words.end(), looks_crossed);
  const std::size_t k = largest_index(o.words, crossed);
  json result;
  if (crossed) {
    CrossedElement acc = cp_identity(k);
    for (const auto& w : o.words) acc = cp_multiply(acc, parse_crossed(w, k));
    result = {{"kind", "crossed"}, {"m", k}, {"word", to_string(acc)}, {"eps", acc.eps},
              {"length", acc.word.length()}};
  } else {
    FreeProductWord acc{k, {}};
    for (const auto& w : o.words) acc = fp_multiply(acc, parse_free_product(w, k));
    result = {{"kind", "free_product"}, {"n", k}, {"word", to_string(acc)}, {"letters", acc.letters}};
  }
  return pass_fail(std::move(result), true);
}

Outcome cmd_word_iso(const Options& o) {
  if (o.words.size() != 1) throw Error(Errc::ParseError, "iso takes exactly one word");
  const std::string& text = o.words.front();
  json result;
  if (o.crossed || looks_crossed(text)) {
    const CrossedElement x = parse_crossed(text);
    // The crossed product on m generators matches the free product of m + 1 symmetries.
    const FreeProductWord image = iso_to_free_product(x);
    const bool round_trip = iso_from_free_product(image) == x;
    result = {{"direction", "crossed_to_free_product"}, {"input", to_string(x)}, {"n", image.n},
              {"image", to_string(image)}, {"round_trip_exact", round_trip}};
    return pass_fail(std::move(result), round_trip);
  }
  FreeProductWord a = parse_free_product(text);
  if (a.n == 0) a.n = 1;
  const CrossedElement image = iso_from_free_product(a);
  const bool round_trip = iso_to_free_product(image) == a;
  result = {{"direction", "free_product_to_crossed"}, {"input", to_string(a)}, {"m", image.word.m},
            {"image", to_string(image)}, {"round_trip_exact", round_trip}};
  return pass_fail(std::move(result), round_trip);
}

Outcome cmd_word_eval(Session& s, const Options& o) {
  if (o.words.size() != 1) throw Error(Errc::ParseError, "eval takes exactly one word");
  if (o.projections.empty()) throw Error(Errc::ParseError, "eval needs --proj files");
  std::vector<DenseMatrix> ps;
  for (const auto& path : o.projections) ps.push_back(load_matrix(s, path));
  const std::string& text = o.words.front();
  DenseMatrix value;
  json result;
  double route_residual = 0.0;
  if (o.crossed || looks_crossed(text)) {
    const CrossedElement x = parse_crossed(text, ps.size() - 1);
    value = evaluate_cp(x, ps, o.tol.tol_validate);
    route_residual = operator_norm(value - evaluate_cp_direct(x, ps, o.tol.tol_validate));
    result["word"] = to_string(x);
  } else {
    const FreeProductWord a = parse_free_product(text, ps.size());
    value = evaluate_fp(a, ps, o.tol.tol_validate);
    result["word"] = to_string(a);
  }
  const double unitarity = operator_norm(adjoint_times(value, value) - DenseMatrix::identity(value.rows()));
  const double bound = o.tol.tol_report * std::max<double>(1.0, static_cast<double>(value.rows()));
  result["matrix"] = matrix_to_json(value);
  result["unitarity_residual"] = unitarity;
  result["route_residual"] = route_residual;
  return pass_fail(std::move(result), unitarity <= bound && route_residual <= bound);
}

json verification_json(const RepVerification& v) {
  return {{"p1_residual", v.p1_residual},
          {"p2_residual", v.p2_residual},
          {"v_symmetry_residual", v.v_symmetry_residual},
          {"v_definition_residual", v.v_definition_residual},
          {"relation_residual", v.relation_residual},
          {"conjugation_residual", v.conjugation_residual},
          {"atomic_spectrum_residual", v.atomic_spectrum_residual},
          {"passed", v.passed}};
}

const char* sector_name(SectorKind k) {
  switch (k) {
    case SectorKind::Both: return "11";
    case SectorKind::Neither: return "00";
    case SectorKind::FirstOnly: return "10";
    case SectorKind::SecondOnly: return "01";
    case SectorKind::Cell: return "cell";
  }
  return "cell";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Outcome cmd_build_rep(Session& s, const Options& o) {
  const RepSpec spec = load_spec(s, o);
  const BuiltRepresentation rep = build_representation(spec);
  const RepVerification v = verify_built(rep);
  json layout = json::array();
  for (const auto& b : rep.layout) {
    json block = {{"kind", sector_name(b.kind)}, {"offset", b.offset}, {"size", b.size}};
    if (b.kind == SectorKind::Cell) block["theta"] = b.theta;
    layout.push_back(std::move(block));
  }
  if (!o.out_prefix.empty()) {
    write_file(s, o.out_prefix + "P.json", dump(matrix_to_json(rep.p1)));
    write_file(s, o.out_prefix + "Q.json", dump(matrix_to_json(rep.p2)));
    write_file(s, o.out_prefix + "V.json", dump(matrix_to_json(rep.v)));
  }
  json result = {{"spec", spec_to_json(spec)},
                 {"dim", spec.dim()},
                 {"layout", std::move(layout)},
                 {"p1", matrix_to_json(rep.p1)},
                 {"p2", matrix_to_json(rep.p2)},
                 {"v", matrix_to_json(rep.v)},
                 {"verification", verification_json(v)}};
  return pass_fail(std::move(result), v.passed);
}

// Eigenvalues of P - Q predicted by the spec, ascending.
std::vector<double> predicted_difference_spectrum(const RepSpec& spec) {
  std::vector<double> ev(spec.m10, 1.0);
  ev.insert(ev.end(), spec.m01, -1.0);
  ev.insert(ev.end(), spec.m11 + spec.m00, 0.0);
  for (const auto& pt : spec.points) {
    const double s = std::sin(pt.theta / 2.0);
    ev.insert(ev.end(), pt.mult, s);
    ev.insert(ev.end(), pt.mult, -s);
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

Outcome cmd_gen(Session& s, const Options& o) {
  const RepSpec spec = load_spec(s, o);
  const ProjectionPair pair = random_pair_from_spec(spec, o.seed);
  const std::vector<double> expected = predicted_difference_spectrum(spec);
  const std::vector<double> measured = hermitian_eigenvalues(pair.difference());
  double residual = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    residual = std::max(residual, std::abs(expected[i] - measured[i]));
  }
  const json truth = {{"schema", kSchema},
                      {"spec", spec_to_json(spec)},
                      {"seed", o.seed},
                      {"dim", spec.dim()},
                      {"index", static_cast<std::int64_t>(spec.m10) - static_cast<std::int64_t>(spec.m01)},
                      {"difference_eigenvalues", expected},
                      {"eigenvalue_residual", residual}};
  write_file(s, o.out_prefix + "P.json", dump(matrix_to_json(pair.p())));
  write_file(s, o.out_prefix + "Q.json", dump(matrix_to_json(pair.q())));
  write_file(s, o.out_prefix + "truth.json", dump(truth));
  return pass_fail(truth, residual <= o.tol.tol_report);
}

json module_axioms(const ProjectionPair& pair) {
  const FredholmModuleData m = build_fredholm_module(pair);
  const DenseMatrix id = DenseMatrix::identity(m.big_dim);
  const bool gamma_sq = matmul(m.gamma, m.gamma) == id;
  const bool f_sq = matmul(m.f, m.f) == id;
  const bool anti = matmul(m.gamma, m.f) + matmul(m.f, m.gamma) == DenseMatrix(m.big_dim, m.big_dim);
  const DenseMatrix comm = commutator(m.f, m.pi_p1);
  const DenseMatrix d = pair.difference();
  const DenseMatrix d2 = matmul(d, d);
  const double commutator_residual = operator_norm(matmul(comm, comm) + direct_sum(d2, d2));
  return {{"gamma_squared_exact", gamma_sq},
          {"f_squared_exact", f_sq},
          {"anticommute_exact", anti},
          {"commutator_square_residual", commutator_residual},
          {"passed", gamma_sq && f_sq && anti && commutator_residual <= 1e-12}};
}

Outcome cmd_check(Session& s, const Options& o) {
  const ProjectionPair pair = load_pair(s, o);
  json checks = json::object();
  bool all = true;
  auto run = [&](const char* name, auto&& body) {
    json entry;
    try {
      entry = body();
    } catch (const Error& e) {
      entry = {{"passed", false}, {"error", {{"code", to_string(e.code())}, {"message", e.what()}}}};
    }
    all = all && entry.value("passed", false);
    checks[name] = std::move(entry);
  };

  const auto vp = validate_projection(pair.p(), o.tol.tol_validate);
  const auto vq = validate_projection(pair.q(), o.tol.tol_validate);
  checks["validation"] = {{"p_algebraic_residual", vp.algebraic_residual},
                          {"p_adjoint_residual", vp.adjoint_residual},
                          {"q_algebraic_residual", vq.algebraic_residual},
                          {"q_adjoint_residual", vq.adjoint_residual},
                          {"passed", vp.passed && vq.passed}};
  all = all && vp.passed && vq.passed;
  run("spectrum_symmetry", [&] {
    const SpectrumReport sr = difference_spectrum(pair, o.tol);
    json j = spectrum_json(sr);
    j["passed"] = sr.residual <= o.tol.tol_cluster;
    return j;
  });
  run("decomposition", [&] {
    const HalmosDecomposition dec = halmos_decompose(pair, o.tol);
    const double residual = verify_decomposition(pair, dec);
    return json{{"m11", dec.m11}, {"m00", dec.m00}, {"m10", dec.m10}, {"m01", dec.m01},
                {"angles", dec.angles}, {"verification_residual", residual},
                {"passed", residual <= o.tol.tol_report}};
  });
  run("trace_stability", [&] { return trace_json(trace_stability_check(pair, o.k_max, o.tol)); });
  run("index", [&] {
    json j = certificate_json(index_theorem_check(pair, o.k_max, o.tol));
    j["passed"] = j["agree"];
    return j;
  });
  run("module_axioms", [&] { return module_axioms(pair); });
  return pass_fail({{"dim", pair.dim()}, {"k_max", o.k_max}, {"checks", std::move(checks)}}, all);
}

void add_tolerances(CLI::App* cmd, Options& o) {
  const auto& pos = CLI::PositiveNumber;
  cmd->add_option("--tol-validate", o.tol.tol_validate, "projection / symmetry residual bound")->check(pos);
  cmd->add_option("--tol-cluster", o.tol.tol_cluster, "eigenvalue clustering width")->check(pos);
  cmd->add_option("--tol-rank", o.tol.tol_rank, "relative singular-value cutoff")->check(pos);
  cmd->add_option("--tol-report", o.tol.tol_report, "certificate residual bound")->check(pos);
}

void add_pair(CLI::App* cmd, Options& o) {
  cmd->add_option("P", o.p_path, "matrix file for P")->required();
  cmd->add_option("Q", o.q_path, "matrix file for Q")->required();
  add_tolerances(cmd, o);
}

void add_spec(CLI::App* cmd, Options& o) {
  auto* file = cmd->add_option("--spec", o.spec_path, "RepSpec JSON file");
  for (auto [name, field] : {std::pair{"--m11", &o.m11}, std::pair{"--m00", &o.m00},
                             std::pair{"--m10", &o.m10}, std::pair{"--m01", &o.m01}}) {
    cmd->add_option(name, *field, "atomic sector multiplicity")->excludes(file);
  }
  cmd->add_option("--point", o.points, "cell point theta[:mult], repeatable")->excludes(file);
  add_tolerances(cmd, o);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Numerical calculus of pairs of projections"};
  app.name("projcalc");
  app.require_subcommand(1);

  auto* decompose = app.add_subcommand("decompose", "canonical decomposition of a pair");
  add_pair(decompose, o);
  auto* index = app.add_subcommand("index", "index certificate by rank, traces and pairings");
  add_pair(index, o);
  index->add_option("--k-max", o.k_max, "largest power index k")->capture_default_str();
  auto* traces = app.add_subcommand("trace-powers", "tr (P - Q)^{2k+1} for k = 0..k-max");
  add_pair(traces, o);
  traces->add_option("--k-max", o.k_max, "largest power index k")->capture_default_str();
  auto* check = app.add_subcommand("check", "run every invariant on one pair");
  add_pair(check, o);
  check->add_option("--k-max", o.k_max, "largest power index k")->capture_default_str();

  auto* word = app.add_subcommand("word", "word calculus");
  word->require_subcommand(1);
  auto* multiply = word->add_subcommand("multiply", "reduced product of words");
  auto* iso = word->add_subcommand("iso", "image under the isomorphism");
  auto* eval = word->add_subcommand("eval", "evaluate on projections");
  for (auto* sub : {multiply, iso, eval}) {
    sub->add_option("words", o.words, "words, e.g. \"U1 U2\" or \"V W1^-1\"")->required();
    sub->add_flag("--crossed", o.crossed, "read words as crossed-product elements");
    add_tolerances(sub, o);
  }
  eval->add_option("--proj", o.projections, "projection matrix files P1 .. Pn")->required();

  auto* build = app.add_subcommand("build-rep", "build a representation from sector data");
  add_spec(build, o);
  build->add_option("--out-prefix", o.out_prefix, "also write <prefix>P.json, Q.json, V.json");
  auto* gen = app.add_subcommand("gen", "seeded random pair with known decomposition");
  add_spec(gen, o);
  gen->add_option("--seed", o.seed, "generator seed")->capture_default_str();
  gen->add_option("--out-prefix", o.out_prefix, "output prefix for P.json, Q.json, truth.json");

  std::vector<std::string> argv_store{"projcalc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  Session s;
  s.argv = args;
  s.opts = &o;
  for (auto* sub : app.get_subcommands()) {
    s.command = sub->get_name();
    for (auto* inner : sub->get_subcommands()) s.command += " " + inner->get_name();
  }

  Outcome outcome;
  try {
    o.tol.check();
    if (decompose->parsed()) outcome = cmd_decompose(s, o);
    else if (index->parsed()) outcome = cmd_index(s, o);
    else if (traces->parsed()) outcome = cmd_trace_powers(s, o);
    else if (check->parsed()) outcome = cmd_check(s, o);
    else if (multiply->parsed()) outcome = cmd_word_multiply(o);
    else if (iso->parsed()) outcome = cmd_word_iso(o);
    else if (eval->parsed()) outcome = cmd_word_eval(s, o);
    else if (build->parsed()) outcome = cmd_build_rep(s, o);
    else if (gen->parsed()) outcome = cmd_gen(s, o);
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    err << "projcalc " << s.command << ": " << e.what() << '\n';
    out << report(s, json::object(),
                  {{"passed", false}, {"error", {{"code", to_string(e.code())}, {"message", e.what()}}}},
                  code)
               .dump(2)
        << '\n';
    return code;
  }
  out << report(s, std::move(outcome.result), std::move(outcome.flags), outcome.code).dump(2) << '\n';
  return outcome.code;
}

}  // namespace projcalc::cli
