#include "cli.hpp"

#include <CLI11.hpp>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "torlink/errors.hpp"
#include "torlink/search/sweep.hpp"
#include "torlink/smith.hpp"

namespace torlink::cli {

std::string_view to_string(Summary s) {
  switch (s) {
    case Summary::SomeLagrangianVanishes: return "SomeLagrangianVanishes";
    case Summary::NoLagrangianVanishes: return "NoLagrangianVanishes";
    case Summary::NoLagrangiansExist: return "NoLagrangiansExist";
  }
  return "?";
}

std::atomic<bool>& interrupt_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}

ObstructionVerdict obstruct(const ManifoldModel& model) {
  if (!model.triple) throw ValidationError("lambda3: obstruct needs a lambda3 entry in the model");
  ObstructionVerdict verdict;
  bool any = false;
  for (auto& l : enumerate_lagrangians(model.form)) {
    bool v = vanishes_on(*model.triple, l);
    any = any || v;
    verdict.rows.push_back({std::move(l), v});
  }
  if (verdict.rows.empty())
    verdict.summary = Summary::NoLagrangiansExist;
  else
    verdict.summary = any ? Summary::SomeLagrangianVanishes : Summary::NoLagrangianVanishes;
  return verdict;
}

namespace {

IntegerMatrix parse_matrix_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("matrix: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw ValidationError("matrix: expected a nonempty array of rows");
  const std::size_t n = j.size();
  IntegerMatrix a(n, j[0].is_array() ? j[0].size() : 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != a.cols())
      throw ValidationError("matrix[" + std::to_string(i) + "]: rows must have equal length");
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& e = j[i][k];
      if (e.is_number_integer())
        a(i, k) = Integer(e.get<long>());
      else if (e.is_string())
        a(i, k) = parse_integer(e.get<std::string>());
      else
        throw ValidationError("matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]: expected an integer");
    }
  }
  return a;
}

std::vector<Integer> parse_coordinates(std::string text) {
  std::erase_if(text, [](char c) { return c == '[' || c == ']' || c == ' '; });
  std::vector<Integer> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    try {
      out.push_back(parse_integer(text.substr(start, end - start)));
    } catch (const std::invalid_argument&) {
      throw ValidationError("bad coordinate vector '" + text + "'");
    }
    start = end + 1;
  }
  return out;
}

GroupElement resolve_element(const ManifoldModel& model, const std::string& spec) {
  if (auto it = model.named_elements.find(spec); it != model.named_elements.end()) return it->second;
  if (spec.empty() || !(std::isdigit(static_cast<unsigned char>(spec[0])) || spec[0] == '[' || spec[0] == '-'))
    throw ValidationError("unknown element name '" + spec + "'");
  return element_from_coordinates(model, parse_coordinates(spec));
}

std::string contained_names(const ManifoldModel& model, const Subgroup& l) {
  const FiniteAbelianGroup& g = model.form.group();
  std::string names;
  for (const auto& [name, e] : model.named_elements) {
    if (e == g.zero() || !l.contains(e)) continue;
    names += (names.empty() ? "" : ", ") + name;
  }
  return names;
}

std::string group_text(const FiniteAbelianGroup& g) { return g.rank() == 0 ? "0" : g.to_string(); }

void print_gram(std::ostream& out, const LinkingForm& form) {
  out << "lambda2:\n";
  for (const auto& row : form.gram()) {
    out << "  [";
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? ", " : "") << row[j];
    out << "]\n";
  }
}

struct Inputs {
  std::string model_path;
  std::string matrix;
};

IntegerMatrix matrix_input(const Inputs& in) {
  if (!in.matrix.empty()) return parse_matrix_text(in.matrix);
  if (in.model_path.empty()) throw ValidationError("give a model file or --matrix");
  ManifoldModel m = load_model(in.model_path);
  if (!m.linking_matrix) throw ValidationError("linking_matrix: model " + m.name + " has no linking matrix");
  return *m.linking_matrix;
}

int cmd_snf(const Inputs& in, std::ostream& out) {
  IntegerMatrix a = matrix_input(in);
  SmithForm s = smith_normal_form(a);
  out << "U = " << s.U << "\nD = " << s.D << "\nV = " << s.V << "\n";
  if (a.rows() == a.cols() && a.determinant() != 0) out << "coker = " << group_text(cokernel_presentation(a).group) << "\n";
  return kExitOk;
}

int cmd_linking_form(const Inputs& in, std::ostream& out) {
  if (!in.matrix.empty()) {
    LinkingPresentation pres = linking_form_from_matrix(parse_matrix_text(in.matrix));
    out << "group: " << group_text(pres.form.group()) << "\n";
    print_gram(out, pres.form);
    for (std::size_t i = 0; i < pres.meridian_images.size(); ++i)
      out << "mu_" << i + 1 << " = " << to_string(pres.meridian_images[i]) << "\n";
    return kExitOk;
  }
  ManifoldModel m = load_model(in.model_path);
  out << "model: " << m.name << "\ngroup: " << group_text(m.form.group()) << "\n";
  print_gram(out, m.form);
  for (std::size_t i = 0; i < m.meridian_images.size(); ++i)
    out << "mu_" << i + 1 << " = " << to_string(m.meridian_images[i]) << "\n";
  return kExitOk;
}

int cmd_lagrangians(const std::string& path, bool count_only, std::ostream& out) {
  ManifoldModel m = load_model(path);
  auto ls = enumerate_lagrangians(m.form);
  out << "lagrangians: " << ls.size() << "\n";
  if (count_only) return kExitOk;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    out << "L" << i + 1 << " = " << ls[i].to_string();
    if (auto names = contained_names(m, ls[i]); !names.empty()) out << "  contains " << names;
    out << "\n";
  }
  return kExitOk;
}

int cmd_triple_eval(const std::string& path, const std::vector<std::string>& elems, std::ostream& out) {
  ManifoldModel m = load_model(path);
  if (!m.triple) throw ValidationError("lambda3: model " + m.name + " has no lambda3");
  if (elems.size() != 3) throw ValidationError("triple-eval takes exactly three elements");
  QmodZ v = evaluate_triple(*m.triple, resolve_element(m, elems[0]), resolve_element(m, elems[1]),
                            resolve_element(m, elems[2]));
  out << v << "\n";
  return kExitOk;
}

int cmd_obstruct(const std::string& path, bool summary_only, std::ostream& out) {
  ManifoldModel m = load_model(path);
  ObstructionVerdict verdict = obstruct(m);
  if (!summary_only) {
    std::size_t i = 0;
    for (const auto& row : verdict.rows) {
      ++i;
      out << "L" << i << " = " << row.lagrangian.to_string();
      if (auto names = contained_names(m, row.lagrangian); !names.empty()) out << " [" << names << "]";
      if (row.lambda3_vanishes)
        out << ": lambda3 vanishes\n";
      else
        out << ": lambda3 does not vanish; " << m.name
            << " cannot bound a rational homology 4-ball W with H2(W)=0 realizing L" << i << " = ker(H1(" << m.name
            << ") -> H1(W))\n";
    }
  }
  std::size_t vanishing = 0;
  for (const auto& row : verdict.rows) vanishing += row.lambda3_vanishes;
  out << "summary: " << to_string(verdict.summary);
  switch (verdict.summary) {
    case Summary::SomeLagrangianVanishes:
      out << " (" << vanishing << " of " << verdict.rows.size()
          << " Lagrangians carry vanishing lambda3; no obstruction from lambda3)\n";
      break;
    case Summary::NoLagrangianVanishes:
      out << "; " << m.name << " bounds no rational homology 4-ball with H2(W)=0 at all\n";
      break;
    case Summary::NoLagrangiansExist:
      out << "; lambda2 has no Lagrangian, so " << m.name << " bounds no rational homology 4-ball\n";
      break;
  }
  return kExitOk;
}

struct SweepArgs {
  std::uint32_t p = 0;
  std::size_t n = 3;
  std::string mode = "exhaustive";
  std::uint64_t count = 0;
  std::uint64_t seed = 1;
  std::uint64_t chunks = 0;
  unsigned workers = 1;
  std::string resume;
  std::string kernel = "auto";
  std::uint64_t max_chunks = 0;
  std::string range;
  std::string exception_log;
  std::size_t witnesses = 16;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  search::SweepOptions opt;
  try {
    opt.mode = search::parse_sweep_mode(a.mode);
    opt.kernel = search::parse_kernel_kind(a.kernel);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  if (opt.mode == search::SweepMode::sample && a.count == 0) throw ValidationError("--count: sample mode needs a count");
  opt.sample_count = a.count;
  opt.seed = a.seed;
  opt.min_chunks = a.chunks;
  opt.workers = std::max(1u, a.workers);
  opt.witness_cap = a.witnesses;
  opt.checkpoint_path = a.resume;
  opt.max_new_chunks = a.max_chunks;
  opt.stop = &interrupt_flag();
  if (!a.range.empty()) {
    unsigned long long lo = 0, hi = 0;
    char tail = 0;
    if (std::sscanf(a.range.c_str(), "%llu:%llu%c", &lo, &hi, &tail) != 2 || lo >= hi)
      throw ValidationError("--range: expected FIRST:LAST with FIRST < LAST");
    opt.first_chunk = lo;
    opt.last_chunk = hi;
  }
  std::ofstream log;
  if (!a.exception_log.empty()) {
    log.open(a.exception_log, std::ios::app);
    if (!log) throw ValidationError("--exception-log: cannot open " + a.exception_log);
    opt.exception_log = &log;
  }

  ClasperFamily fam = family(a.p, a.n);
  search::ChunkPlan plan = search::plan_chunks(fam, opt);
  if (opt.last_chunk && *opt.last_chunk > plan.chunk_count)
    throw ValidationError("--range: only " + std::to_string(plan.chunk_count) + " chunks");
  search::LagrangianFunctionalSet fs = search::lagrangian_functionals(fam);
  search::SweepReport r = search::sweep(fam, fs, opt);

  out << "p=" << r.p << " n=" << r.n << " dimension=" << r.parameter_dimension << " mode=" << search::to_string(r.mode)
      << " lagrangians=" << fs.lagrangian_count() << " kernel=" << r.kernel << " chunks=" << r.chunks.size() << "/"
      << (r.last_chunk - r.first_chunk) << "\n";
  for (const auto& e : r.exceptions) out << "exception chunk=" << e.chunk << " v=" << search::format_parameter(e.v) << "\n";
  if (r.exception_count > r.exceptions.size())
    out << "(" << r.exception_count - r.exceptions.size() << " further exceptions not listed)\n";
  out << "total=" << r.total_vectors << " exceptions=" << r.exception_count << "\n";
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016" PRIx64, r.checksum());
  out << "checksum=" << digest << " seconds=" << r.wall_seconds << "\n";
  if (r.interrupted) {
    err << "sweep interrupted with " << r.chunks.size() << " of " << (r.last_chunk - r.first_chunk)
        << " chunks done";
    if (!a.resume.empty())
      err << "; progress saved, rerun with --resume " << a.resume << "\n";
    else
      err << "; no checkpoint file was given\n";
    return kExitInterrupted;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Torsion linking forms, triple linking forms and clasper-family sweeps", "torlink"};
  app.require_subcommand(1);

  Inputs snf_in, lf_in;
  auto* snf = app.add_subcommand("snf", "Smith normal form U*A*V = D of an integer matrix");
  snf->add_option("model", snf_in.model_path, "model file with a linking_matrix");
  snf->add_option("--matrix", snf_in.matrix, "matrix as JSON, e.g. [[2,1],[1,2]]");

  auto* lf = app.add_subcommand("linking-form", "H_1 and lambda_2 of a model or surgery matrix");
  lf->add_option("model", lf_in.model_path, "model file");
  lf->add_option("--matrix", lf_in.matrix, "surgery linking matrix as JSON");

  std::string lag_path;
  bool count_only = false;
  auto* lag = app.add_subcommand("lagrangians", "enumerate the Lagrangians of lambda_2");
  lag->add_option("model", lag_path, "model file")->required();
  lag->add_flag("--count", count_only, "print only the count");

  std::string te_path;
  std::vector<std::string> te_elems;
  auto* te = app.add_subcommand("triple-eval", "evaluate lambda_3 on three classes");
  te->add_option("model", te_path, "model file")->required();
  te->add_option("elements", te_elems, "three element names or coordinate vectors like 1,0,0")->expected(3)->required();

  std::string ob_path;
  bool summary_only = false;
  auto* ob = app.add_subcommand("obstruct", "lambda_3 obstruction verdict for every Lagrangian");
  ob->add_option("model", ob_path, "model file")->required();
  ob->add_flag("--summary", summary_only, "print only the summary line");

  SweepArgs sa;
  auto* sw = app.add_subcommand("sweep", "check every (or sampled) member of the clasper family (p, n)");
  sw->add_option("--p", sa.p, "prime")->required();
  sw->add_option("--n", sa.n, "number of L(p,1) # -L(p,1) summands")->capture_default_str();
  sw->add_option("--mode", sa.mode, "exhaustive or sample")->capture_default_str();
  sw->add_option("--count", sa.count, "samples (sample mode)");
  sw->add_option("--seed", sa.seed, "sample seed")->capture_default_str();
  sw->add_option("--chunks", sa.chunks, "minimum number of chunks (exhaustive)");
  sw->add_option("--workers", sa.workers, "worker threads")->capture_default_str();
  sw->add_option("--resume", sa.resume, "checkpoint file to resume from and append to");
  sw->add_option("--kernel", sa.kernel, "auto, scalar or avx2")->capture_default_str();
  sw->add_option("--max-chunks", sa.max_chunks, "stop after this many new chunks");
  sw->add_option("--range", sa.range, "chunk index range FIRST:LAST (half-open)");
  sw->add_option("--exception-log", sa.exception_log, "append every exception to this file");
  sw->add_option("--witnesses", sa.witnesses, "exceptions kept in the report")->capture_default_str();

  auto* ex = app.add_subcommand("export-m0", "print the model file of M0");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (snf->parsed()) return cmd_snf(snf_in, out);
    if (lf->parsed()) {
      if (lf_in.matrix.empty() && lf_in.model_path.empty()) throw ValidationError("give a model file or --matrix");
      return cmd_linking_form(lf_in, out);
    }
    if (lag->parsed()) return cmd_lagrangians(lag_path, count_only, out);
    if (te->parsed()) return cmd_triple_eval(te_path, te_elems, out);
    if (ob->parsed()) return cmd_obstruct(ob_path, summary_only, out);
    if (sw->parsed()) return cmd_sweep(sa, out, err);
    if (ex->parsed()) {
      out << serialize_model(model_from_m0());
      return kExitOk;
    }
  } catch (const UnsupportedScope& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace torlink::cli
