#include "plat/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "plat/error.hpp"
#include "plat/families.hpp"
#include "plat/lattice.hpp"
#include "plat/report.hpp"
#include "plat/suite.hpp"

namespace plat {

namespace {

struct Caps {
  std::size_t order_cap = kDefaultOrderCap;
  std::size_t lattice_cap = kDefaultLatticeCap;
};

std::size_t env_size(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    const auto n = std::stoull(v, &used);
    if (used != std::string_view(v).size() || n == 0) throw std::invalid_argument(v);
    return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw Error(Errc::UsageError, std::string(name) + " must be a positive integer, got '" + v + "'");
  }
}

struct CorpusArgs {
  unsigned prime = 2;
  std::size_t max_order = 0;
  std::string corpus_path;
  std::size_t jobs = 1;
  std::string format = "text";
  std::string classes;
};

void add_corpus_flags(CLI::App* cmd, CorpusArgs& a, std::size_t default_order, std::string default_classes) {
  a.max_order = default_order;
  a.classes = std::move(default_classes);
  cmd->add_option("-p,--prime", a.prime, "prime of the builtin corpus")->capture_default_str();
  cmd->add_option("--max-order", a.max_order, "largest group order in the builtin corpus")->capture_default_str();
  cmd->add_option("--corpus", a.corpus_path, "corpus file (replaces the builtin corpus)");
  cmd->add_option("--classes", a.classes, "comma-separated class suite")->capture_default_str();
  cmd->add_option("--format", a.format, "text, csv or structured")->capture_default_str();
  cmd->add_option("-j,--jobs", a.jobs, "worker threads")->capture_default_str();
}

Corpus resolve_corpus(const CorpusArgs& a, const Caps& caps) {
  if (a.jobs < 1) throw Error(Errc::UsageError, "--jobs must be at least 1");
  const CorpusOptions copts{caps.order_cap, caps.lattice_cap};
  if (!a.corpus_path.empty()) return load_corpus(a.corpus_path, copts);
  if (!is_prime(a.prime)) throw Error(Errc::UsageError, std::to_string(a.prime) + " is not prime");
  std::size_t o = 1;
  while (o < a.max_order) o *= a.prime;
  if (o != a.max_order || a.max_order < a.prime)
    throw Error(Errc::UsageError,
                "--max-order " + std::to_string(a.max_order) + " is not a power of " + std::to_string(a.prime));
  return builtin_corpus(a.prime, a.max_order, copts);
}

std::shared_ptr<const Group> resolve_group(const std::string& family_text, const std::string& corpus_path,
                                           const std::string& name, const Caps& caps) {
  if (family_text.empty() == corpus_path.empty())
    throw Error(Errc::UsageError, "give exactly one of --family or --corpus");
  if (!family_text.empty())
    return std::make_shared<const Group>(build_group(parse_family(family_text), {caps.order_cap, 2}));
  if (name.empty()) throw Error(Errc::UsageError, "--corpus needs --name");
  const Corpus c = load_corpus(corpus_path, {caps.order_cap, caps.lattice_cap});
  for (const auto& e : c.entries)
    if (e.spec.name == name) return std::make_shared<const Group>(build_group(e.spec, {caps.order_cap, c.prime}));
  throw Error(Errc::UsageError, "no entry named '" + name + "' in " + corpus_path);
}

int cmd_lattice(const std::string& family_text, const std::string& corpus_path, const std::string& name,
                const Caps& caps, std::ostream& out) {
  const auto g = resolve_group(family_text, corpus_path, name, caps);
  const SubgroupLattice lat = enumerate_lattice(g, {caps.lattice_cap});
  export_lattice(out, lat);
  std::size_t normal = 0;
  for (SubgroupId h = 0; h < lat.size(); ++h) normal += lat.is_normal(h) ? 1 : 0;
  out << "summary group=" << g->name() << " order=" << g->order() << " nodes=" << lat.size()
      << " normal=" << normal << " classes=" << lat.conj_class_count() << '\n';
  return 0;
}

int cmd_corpus(const CorpusArgs& a, const std::string& save_path, const Caps& caps, std::ostream& out) {
  const Corpus c = resolve_corpus(a, caps);
  if (!save_path.empty()) save_corpus(c, save_path);
  for (const auto& e : c.entries) {
    const auto lat = enumerate_lattice(build_group(e.spec, {caps.order_cap, c.prime}), {caps.lattice_cap});
    out << e.spec.name << '\t' << e.provenance << '\t' << fingerprint(lat).to_string() << '\n';
  }
  for (const auto& n : c.notes) out << "# " << n << '\n';
  out << "entries " << c.entries.size() << '\n';
  return 0;
}

int cmd_verify(const CorpusArgs& a, const std::string& checks_text, const std::string& expect_path, bool timing,
               const Caps& caps, std::ostream& out, std::ostream& err) {
  const auto fmt = output_format_from_name(a.format);
  const auto classes = parse_class_suite(a.classes);
  const auto checks = CheckSelection::parse(checks_text);
  const Expectations expectations = expect_path.empty() ? Expectations::defaults() : Expectations::load(expect_path);
  const Corpus corpus = resolve_corpus(a, caps);
  for (const auto& n : corpus.notes)
    if (n.starts_with("warning:")) err << n << '\n';

  const auto reports = run_suite(corpus, classes, checks, {a.jobs, caps.order_cap, caps.lattice_cap});
  write_reports(out, reports, fmt, timing);
  const auto summary = summarize(reports);
  if (fmt == OutputFormat::Text) write_summary(out, summary);

  int code = 0;
  for (const auto& r : reports)
    if (r.theorem_violation()) {
      err << "theorem-level violation: " << r.group << " [" << r.class_label << "]\n";
      code = 1;
    }
  if (code) return code;
  for (const auto& r : reports)
    if (r.error) {
      err << r.group << " [" << r.class_label << "]: " << *r.error << '\n';
      code = 2;
    }
  if (code) return code;
  const auto unexpected = unexpected_failures(reports, expectations);
  for (const auto& u : unexpected) err << "unexpected failure: " << u << '\n';
  return unexpected.empty() ? 0 : 1;
}

int cmd_search(const std::string& problem_text, const CorpusArgs& a, const Caps& caps, std::ostream& out) {
  const Problem problem = problem_from_name(problem_text);
  const auto fmt = output_format_from_name(a.format);
  const auto classes = parse_class_suite(a.classes);
  const Corpus corpus = resolve_corpus(a, caps);
  const auto result = search_problem(corpus, problem, classes, {a.jobs, caps.order_cap, caps.lattice_cap});
  write_search(out, result, fmt);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"subgroup lattice census and verification tool", "plattice"};
  app.require_subcommand(1);

  Caps caps;
  std::optional<std::size_t> order_cap, lattice_cap;
  app.add_option("--order-cap", order_cap, "largest group order accepted (env PLAT_ORDER_CAP)");
  app.add_option("--lattice-cap", lattice_cap, "largest lattice accepted (env PLAT_LATTICE_CAP)");

  std::string family_text, corpus_path, entry_name;
  auto* lattice = app.add_subcommand("lattice", "print the subgroup lattice of one group");
  lattice->add_option("--family", family_text, "family recipe, e.g. dihedral:3 or dihedral:3*cyclic:2,1");
  lattice->add_option("--corpus", corpus_path, "corpus file");
  lattice->add_option("--name", entry_name, "entry name inside --corpus");

  CorpusArgs corpus_args;
  std::string save_path;
  auto* corpus = app.add_subcommand("corpus", "list (and optionally save) a builtin corpus");
  add_corpus_flags(corpus, corpus_args, 16, "abelian");
  corpus->add_option("--save", save_path, "write the corpus file here");

  CorpusArgs verify_args;
  std::string checks_text = "A,B,C,thmA,thmB", expect_path;
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "run verifiers over a corpus");
  add_corpus_flags(verify, verify_args, 64, "abelian");
  verify->add_option("--checks", checks_text, "comma-separated checks")->capture_default_str();
  verify->add_option("--expect", expect_path, "expectations file (default: builtin rules)");
  verify->add_flag("--timing", timing, "include elapsed times (breaks byte-identical output)");

  CorpusArgs search_args;
  std::string problem_text;
  auto* search = app.add_subcommand("search", "collect data for an open problem");
  search->add_option("problem", problem_text, "problem1, question2 or question3")->required();
  add_corpus_flags(search, search_args, 16, "cyclic");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    for (auto* sub : app.get_subcommands()) {
      err << sub->help();
      return 2;
    }
    err << app.help();
    return 2;
  }

  try {
    caps.order_cap = order_cap.value_or(env_size("PLAT_ORDER_CAP", kDefaultOrderCap));
    caps.lattice_cap = lattice_cap.value_or(env_size("PLAT_LATTICE_CAP", kDefaultLatticeCap));
    if (*lattice) return cmd_lattice(family_text, corpus_path, entry_name, caps, out);
    if (*corpus) return cmd_corpus(corpus_args, save_path, caps, out);
    if (*verify) return cmd_verify(verify_args, checks_text, expect_path, timing, caps, out, err);
    if (*search) return cmd_search(problem_text, search_args, caps, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace plat
