// Command-line front end: folding, membership, ranks, bases, indices,
// intersections, free-by-finite subgroup calculus, bound tables, chains,
// endomorphism dynamics and the seeded experiment suites.
//
// Exit codes: 0 success, 1 mathematically negative answers (member says no,
// an experiment finds a violation), 2 input errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fg/bounds.hpp"
#include "fg/chains.hpp"
#include "fg/dynamics.hpp"
#include "fg/experiment.hpp"
#include "fg/extension.hpp"
#include "fg/stallings.hpp"
#include "fg/vfsub.hpp"

using json = nlohmann::ordered_json;
using namespace fg;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Alphabet parse_alphabet(const std::string& text) {
  std::vector<std::string> names;
  std::string tok;
  std::istringstream is(text);
  while (std::getline(is, tok, ',')) {
    std::istringstream ws(tok);
    std::string name;
    while (ws >> name) names.push_back(name);
  }
  if (names.size() == 1) {
    // a bare number means the first k lowercase letters
    bool numeric = !names[0].empty();
    for (char c : names[0]) numeric = numeric && c >= '0' && c <= '9';
    if (numeric) return Alphabet::lowercase(std::stoi(names[0]));
  }
  return Alphabet(std::move(names));
}

std::vector<std::string> read_data_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

// Inline "w1, w2, ..." or the name of a file with one generator per line.
std::vector<Word> load_generators(const Alphabet& a, const std::string& arg) {
  std::vector<std::string> texts;
  if (std::ifstream probe(arg); probe.good()) {
    texts = read_data_lines(arg);
  } else {
    std::string tok;
    std::istringstream is(arg);
    while (std::getline(is, tok, ',')) texts.push_back(tok);
  }
  std::vector<Word> gens;
  for (const auto& t : texts) {
    Word w = parse_word(a, t);
    if (!w.empty()) gens.push_back(w);
  }
  return gens;
}

// One element per line; an optional leading "extension <path>" line names the
// ambient extension (relative to the subgroup file).
struct SubgroupFile {
  std::string extension_path;
  std::vector<std::string> element_lines;
};

SubgroupFile read_subgroup_file(const std::string& path) {
  SubgroupFile out;
  for (const auto& line : read_data_lines(path)) {
    if (line.rfind("extension", 0) == 0 &&
        (line.size() == 9 || line[9] == ' ' || line[9] == '\t')) {
      std::string ref = line.substr(9);
      std::size_t b = ref.find_first_not_of(" \t");
      if (b == std::string::npos) throw InputError(path + ": empty extension reference");
      ref = ref.substr(b);
      auto slash = path.find_last_of('/');
      out.extension_path = slash == std::string::npos ? ref : path.substr(0, slash + 1) + ref;
    } else {
      out.element_lines.push_back(line);
    }
  }
  return out;
}

std::vector<ExtensionElement> parse_elements(const ExtensionData& G,
                                             const std::vector<std::string>& lines) {
  std::vector<ExtensionElement> out;
  for (const auto& line : lines) out.push_back(G.parse_element(line));
  return out;
}

void write_dot_file(const StallingsAutomaton& aut, const std::string& path,
                    const std::string& name) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  aut.write_dot(out, name);
}

json automaton_json(const StallingsAutomaton& aut) {
  json j;
  j["vertices"] = aut.vertex_count();
  j["edges"] = aut.edge_count();
  j["rank"] = aut.rank();
  auto idx = aut.index();
  j["index"] = idx ? json(*idx) : json("infinite");
  json basis = json::array();
  for (const Word& b : aut.basis()) basis.push_back(format_word(aut.alphabet(), b));
  j["basis"] = basis;
  return j;
}

void print_automaton(const StallingsAutomaton& aut) {
  std::cout << "vertices: " << aut.vertex_count() << "\n";
  std::cout << "positive edges: " << aut.edge_count() << "\n";
  std::cout << "rank: " << aut.rank() << "\n";
  auto idx = aut.index();
  std::cout << "index: " << (idx ? std::to_string(*idx) : std::string("infinite")) << "\n";
  std::cout << "basis:";
  for (const Word& b : aut.basis()) std::cout << " " << format_word(aut.alphabet(), b);
  std::cout << "\n";
}

json handle_json(const SubgroupHandle& h) {
  const ExtensionData& G = *h.data();
  json j;
  json gens = json::array();
  for (const auto& g : h.generators()) gens.push_back(G.format(g));
  j["generators"] = gens;
  j["q_image"] = h.q_image();
  json reps = json::array();
  for (int q : h.q_image()) {
    const RepWitness& r = h.rep(q);
    json rj;
    rj["q"] = q;
    rj["element"] = G.format(r.element);
    rj["witness"] = r.witness;
    reps.push_back(rj);
  }
  j["representatives"] = reps;
  json kb = json::array();
  for (const Word& b : h.k_basis()) kb.push_back(format_word(G.alphabet(), b));
  j["k_basis"] = kb;
  j["k_rank"] = h.k_automaton().rank();
  j["rank_upper_bound"] = h.rank_upper_bound();
  j["inside_free_part"] = h.inside_free_part();
  return j;
}

std::string bounds_to_string(const bounds::Int& v) { return v.str(); }

// ---------------------------------------------------------------------------

struct GlobalOptions {
  std::string alphabet_text = "a,b";
  bool json_output = false;
  std::string dot_path;
  std::uint64_t seed = 1;

  Alphabet alphabet() const { return parse_alphabet(alphabet_text); }
};

int cmd_fold(const GlobalOptions& g, const std::string& subgroup) {
  Alphabet a = g.alphabet();
  StallingsAutomaton aut = subgroup_automaton(a, load_generators(a, subgroup));
  if (!g.dot_path.empty()) write_dot_file(aut, g.dot_path, "subgroup");
  if (g.json_output)
    std::cout << automaton_json(aut).dump(2) << "\n";
  else
    print_automaton(aut);
  return 0;
}

int cmd_member(const GlobalOptions& g, const std::string& subgroup, const std::string& word) {
  Alphabet a = g.alphabet();
  StallingsAutomaton aut = subgroup_automaton(a, load_generators(a, subgroup));
  bool yes = aut.member(parse_word(a, word));
  if (g.json_output)
    std::cout << json{{"member", yes}}.dump(2) << "\n";
  else
    std::cout << (yes ? "true" : "false") << "\n";
  return yes ? 0 : 1;
}

int cmd_scalar(const GlobalOptions& g, const std::string& subgroup, const std::string& what) {
  Alphabet a = g.alphabet();
  StallingsAutomaton aut = subgroup_automaton(a, load_generators(a, subgroup));
  if (!g.dot_path.empty()) write_dot_file(aut, g.dot_path, "subgroup");
  if (what == "rank") {
    if (g.json_output)
      std::cout << json{{"rank", aut.rank()}}.dump(2) << "\n";
    else
      std::cout << aut.rank() << "\n";
  } else if (what == "index") {
    auto idx = aut.index();
    if (g.json_output)
      std::cout << json{{"index", idx ? json(*idx) : json("infinite")}}.dump(2) << "\n";
    else
      std::cout << (idx ? std::to_string(*idx) : std::string("infinite")) << "\n";
  } else {  // basis
    if (g.json_output) {
      json basis = json::array();
      for (const Word& b : aut.basis()) basis.push_back(format_word(a, b));
      std::cout << json{{"basis", basis}}.dump(2) << "\n";
    } else {
      for (const Word& b : aut.basis()) std::cout << format_word(a, b) << "\n";
    }
  }
  return 0;
}

int cmd_intersect(const GlobalOptions& g, const std::string& s1, const std::string& s2) {
  Alphabet a = g.alphabet();
  StallingsAutomaton h1 = subgroup_automaton(a, load_generators(a, s1));
  StallingsAutomaton h2 = subgroup_automaton(a, load_generators(a, s2));
  StallingsAutomaton meet = intersect(h1, h2);
  if (!g.dot_path.empty()) write_dot_file(meet, g.dot_path, "intersection");
  if (g.json_output) {
    json j;
    j["rank1"] = h1.rank();
    j["rank2"] = h2.rank();
    j["intersection"] = automaton_json(meet);
    j["hnc_bound"] =
        bounds_to_string(bounds::hnc_bound(std::max<std::int64_t>(h1.rank(), 1),
                                           std::max<std::int64_t>(h2.rank(), 1)));
    std::cout << j.dump(2) << "\n";
  } else {
    print_automaton(meet);
  }
  return 0;
}

int cmd_vf(const GlobalOptions& g, std::string extension_path,
           const std::vector<std::string>& subgroup_paths, const std::string& element_text,
           bool zakharov, int max_free_len) {
  std::vector<SubgroupFile> files;
  for (const auto& path : subgroup_paths) {
    files.push_back(read_subgroup_file(path));
    if (extension_path.empty()) extension_path = files.back().extension_path;
  }
  if (extension_path.empty())
    throw InputError("no extension given: use --extension or an 'extension <path>' line");
  auto G = load_extension_file(extension_path);
  std::vector<SubgroupHandle> handles;
  for (const auto& file : files)
    handles.push_back(close_subgroup(G, parse_elements(*G, file.element_lines)));
  if (handles.empty()) throw InputError("vf needs at least one --subgroup file");

  json out;
  out["extension"] = extension_path;
  out["m"] = G->quotient().order();
  json hs = json::array();
  for (const auto& h : handles) hs.push_back(handle_json(h));
  out["subgroups"] = hs;

  int exit_code = 0;
  if (!element_text.empty()) {
    ExtensionElement x = G->parse_element(element_text);
    bool yes = submember(handles[0], x);
    out["member"] = {{"element", G->format(x)}, {"result", yes}};
    if (!yes) exit_code = 1;
  }

  if (handles.size() >= 2) {
    SubgroupIntersection meet = subintersect(handles[0], handles[1]);
    json mj;
    mj["k_rank"] = meet.certificate.rank_k;
    json kb = json::array();
    for (const Word& b : meet.certificate.k_basis) kb.push_back(format_word(G->alphabet(), b));
    mj["k_basis"] = kb;
    json layers = json::array();
    for (const auto& layer : meet.certificate.layers) {
      json lj;
      lj["q"] = layer.q;
      lj["status"] = layer.nonempty ? "element" : "empty";
      if (layer.representative)
        lj["representative"] = format_word(G->alphabet(), *layer.representative);
      if (layer.generator) lj["generator"] = G->format(*layer.generator);
      layers.push_back(lj);
    }
    mj["layers"] = layers;
    mj["rank_upper_bound"] = meet.certificate.rank_upper_bound;
    mj["exact"] = meet.certificate.exact;
    json gens = json::array();
    for (const auto& gen : meet.subgroup.generators()) gens.push_back(G->format(gen));
    mj["generators"] = gens;

    IntersectionBoundCheck bound = check_intersection_bound(handles[0], handles[1],
                                                            meet.certificate);
    json bj;
    bj["n1"] = bound.n1;
    bj["n2"] = bound.n2;
    bj["m"] = bound.m;
    bj["vfree"] = bounds_to_string(bound.vfree_value);
    bj["observed"] = bound.observed;
    bj["skipped_cyclic"] = bound.skipped_cyclic;
    bj["pass"] = bound.pass;
    mj["bound_check"] = bj;

    if (zakharov) {
      ZakharovReport zak = zakharov_trace(handles[0], handles[1], max_free_len);
      json zj;
      zj["n_max"] = zak.n_max;
      zj["free_len_budget"] = zak.free_len_budget;
      zj["first_bound"] = bounds_to_string(zak.first_bound);
      zj["second_bound"] = bounds_to_string(zak.second_bound);
      zj["vfree"] = bounds_to_string(zak.vfree_value);
      json ps = json::array();
      for (const auto& p : zak.subgroups) {
        json pj;
        json elems = json::array();
        for (const auto& e : p.elements) elems.push_back(G->format(e));
        pj["elements"] = elems;
        pj["trace_on_product"] = p.in_product;
        ps.push_back(pj);
      }
      zj["finite_subgroups"] = ps;
      mj["zakharov"] = zj;
    }
    out["intersection"] = mj;
    if (!bound.pass) exit_code = 1;
  }

  if (g.json_output) {
    std::cout << out.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < handles.size(); ++i) {
      const auto& h = handles[i];
      std::cout << "subgroup " << i + 1 << ": |Q_H| = " << h.coset_count()
                << ", rk(K) = " << h.k_automaton().rank()
                << ", rank upper bound = " << h.rank_upper_bound() << "\n";
    }
    if (out.contains("member"))
      std::cout << "member: " << (out["member"]["result"].get<bool>() ? "true" : "false") << "\n";
    if (out.contains("intersection")) {
      const auto& mj = out["intersection"];
      std::cout << "intersection: rk(K) = " << mj["k_rank"] << ", upper bound = "
                << mj["rank_upper_bound"] << (mj["exact"].get<bool>() ? " (exact)" : "") << "\n";
      std::cout << "k basis:";
      for (const auto& b : mj["k_basis"]) std::cout << " " << b.get<std::string>();
      std::cout << "\n";
      for (const auto& lj : mj["layers"])
        std::cout << "layer q=" << lj["q"] << ": " << lj["status"].get<std::string>() << "\n";
      std::cout << "extension bound: " << mj["bound_check"]["vfree"].get<std::string>()
                << " (observed " << mj["bound_check"]["observed"] << ")\n";
      if (mj.contains("zakharov"))
        std::cout << "zakharov: n = " << mj["zakharov"]["n_max"]
                  << ", first bound " << mj["zakharov"]["first_bound"].get<std::string>()
                  << ", second bound " << mj["zakharov"]["second_bound"].get<std::string>()
                  << "\n";
    }
  }
  return exit_code;
}

struct Range {
  long long lo = 2, hi = 2;
};

Range parse_range(const std::string& text) {
  Range r;
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    r.lo = r.hi = std::stoll(text);
  } else {
    r.lo = std::stoll(text.substr(0, colon));
    r.hi = std::stoll(text.substr(colon + 1));
  }
  if (r.lo > r.hi) throw InputError("empty range " + text);
  return r;
}

int cmd_bounds(const GlobalOptions& g, const std::string& n1_text, const std::string& n2_text,
               const std::string& m_text, std::optional<long long> nilpotency,
               std::optional<long long> prk, std::optional<long long> hirsch) {
  using namespace fg::bounds;
  Range n1r = parse_range(n1_text), n2r = parse_range(n2_text), mr = parse_range(m_text);
  json rows = json::array();
  for (long long n1 = n1r.lo; n1 <= n1r.hi; ++n1)
    for (long long n2 = n2r.lo; n2 <= n2r.hi; ++n2)
      for (long long m = mr.lo; m <= mr.hi; ++m) {
        json row;
        row["n1"] = n1;
        row["n2"] = n2;
        row["m"] = m;
        row["howson"] = bounds_to_string(howson_bound(n1, n2));
        row["hanna_neumann"] = bounds_to_string(hanna_neumann_bound(n1, n2));
        row["hnc"] = bounds_to_string(hnc_bound(n1, n2));
        row["vfree"] = bounds_to_string(vfree_bound(n1, n2, m));
        row["zakharov_index_form"] = bounds_to_string(zakharov_bound(m, n1, n2));
        row["vfree_beats_zakharov"] = vfree_beats_zakharov(n1, n2, m);
        if (nilpotency && std::min(n1, n2) >= 2)
          row["vnilpotent"] = bounds_to_string(vnilpotent_bound(n1, n2, m, *nilpotency));
        if (prk) row["vpolycyclic"] = bounds_to_string(vpolycyclic_bound(*prk, m));
        if (hirsch) {
          row["free_product"] = bounds_to_string(polycyclic_free_product_bound(*hirsch, n1, n2));
          row["graph_of_groups"] = bounds_to_string(graph_of_groups_bound(*hirsch, m, n1, n2));
        }
        rows.push_back(row);
      }
  if (g.json_output) {
    std::cout << rows.dump(2) << "\n";
  } else {
    for (const auto& row : rows) {
      std::cout << "n1=" << row["n1"] << " n2=" << row["n2"] << " m=" << row["m"];
      for (auto& [key, value] : row.items()) {
        if (key == "n1" || key == "n2" || key == "m") continue;
        std::cout << " " << key << "=";
        if (value.is_string())
          std::cout << value.get<std::string>();
        else
          std::cout << value;
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_chain(const GlobalOptions& g, int strict_stages,
              const std::vector<std::string>& stage_files) {
  Alphabet a = g.alphabet();
  std::optional<Chain> chain;
  if (strict_stages > 0) {
    chain = strict_rank_chain(strict_stages);
  } else {
    if (stage_files.empty()) throw InputError("chain needs --strict N or stage files");
    std::vector<StallingsAutomaton> stages;
    for (const auto& path : stage_files)
      stages.push_back(subgroup_automaton(a, load_generators(a, path)));
    chain = Chain::from_automata(std::move(stages));
  }

  auto canonical = stabilization_index(*chain, ChainEquality::kCanonical);
  auto membership = stabilization_index(*chain, ChainEquality::kMutualMembership);
  json j;
  j["stages"] = chain->size();
  j["ranks"] = chain->ranks();
  j["stabilizes_at"] = canonical ? json(*canonical) : json("no stabilization within given stages");
  j["equality_tests_agree"] = canonical == membership;

  if (!g.dot_path.empty()) {
    for (std::size_t i = 0; i < chain->size(); ++i)
      write_dot_file(chain->stages()[i], g.dot_path + "." + std::to_string(i + 1) + ".dot",
                     "stage" + std::to_string(i + 1));
  }
  if (g.json_output) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "stages: " << chain->size() << "\nranks:";
    for (auto r : chain->ranks()) std::cout << " " << r;
    std::cout << "\nstabilizes: ";
    if (canonical)
      std::cout << "at stage " << *canonical << "\n";
    else
      std::cout << "no stabilization within given stages\n";
    std::cout << "equality tests agree: " << (canonical == membership ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_dynamics(const GlobalOptions& g, const std::string& endo_path,
                 const std::string& extension_path, std::optional<long long> fixed_power,
                 bool factorial_chain, const std::string& containment_text, int max_len, int k_max,
                 std::optional<std::int64_t> rank_bound) {
  SearchBudget budget;
  budget.max_len = max_len;

  if (!extension_path.empty()) {
    auto G = load_extension_file(extension_path);
    std::ifstream in(endo_path);
    if (!in) throw InputError("cannot open " + endo_path);
    GEndomorphism phi = load_g_endomorphism(G, in);
    GPeriodicReport report = g_periodic_search(phi, k_max, budget, rank_bound);
    json j;
    j["k_max"] = k_max;
    j["max_len"] = max_len;
    json found = json::array();
    for (const auto& e : report.found)
      found.push_back({{"element", G->format(e.element)}, {"period", e.period}});
    j["periodic"] = found;
    j["rank_upper_bound"] = report.rank_upper_bound;
    j["r_phi_estimate"] = report.r_phi_estimate;
    j["budget_skipped"] = report.budget_skipped;
    if (rank_bound) {
      j["rank_bound_supplied"] = *rank_bound;
      j["within_supplied_bound"] = report.within_supplied_bound;
    }
    if (g.json_output)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << "periodic elements: " << report.found.size()
                << ", rank upper bound: " << report.rank_upper_bound
                << ", period lcm: " << report.r_phi_estimate << "\n";
    return rank_bound && !report.within_supplied_bound ? 1 : 0;
  }

  Alphabet a = g.alphabet();
  std::ifstream in(endo_path);
  if (!in) throw InputError("cannot open " + endo_path);
  Endomorphism phi = load_endomorphism(a, in);

  json j;
  int exit_code = 0;
  if (fixed_power) {
    FixedSearchResult fix = fixed_search(phi, a, *fixed_power, budget);
    j["power"] = *fixed_power;
    j["fixed_words_found"] = fix.fixed_words.size();
    j["budget_skipped"] = fix.budget_skipped;
    j["approximation"] = automaton_json(fix.approximation);
    if (!g.dot_path.empty()) write_dot_file(fix.approximation, g.dot_path, "fixed");
  } else if (!containment_text.empty()) {
    auto comma = containment_text.find(',');
    if (comma == std::string::npos) throw InputError("--containment wants M,MP");
    long long m = std::stoll(containment_text.substr(0, comma));
    long long mp = std::stoll(containment_text.substr(comma + 1));
    bool ok = check_fix_power_containment(phi, a, m, mp, budget);
    j["m"] = m;
    j["m_prime"] = mp;
    j["contained"] = ok;
    if (!ok) exit_code = 1;
  } else if (factorial_chain) {
    FixChain chain = fix_chain(phi, a, k_max, budget);
    json stages = json::array();
    for (std::size_t i = 0; i < chain.chain.size(); ++i) {
      json s;
      s["exponent"] = chain.stages[i].exponent;
      s["rank"] = chain.chain.ranks()[i];
      s["budget_skipped"] = chain.stages[i].budget_skipped;
      stages.push_back(s);
    }
    j["stages"] = stages;
    auto stab = stabilization_index(chain.chain, ChainEquality::kCanonical);
    j["stabilizes_at"] = stab ? json(*stab) : json("no stabilization within given stages");
  } else {
    PeriodicReport report = periodic_search(phi, a, k_max, budget);
    j["k_max"] = k_max;
    j["max_len"] = max_len;
    json found = json::array();
    for (const auto& e : report.found)
      found.push_back({{"word", format_word(a, e.word)}, {"period", e.period}});
    j["periodic"] = found;
    j["rank"] = report.rank;
    j["r_phi_estimate"] = report.r_phi_estimate;
    j["budget_skipped"] = report.budget_skipped;
    j["approximation"] = automaton_json(report.approximation);
    if (!g.dot_path.empty()) write_dot_file(report.approximation, g.dot_path, "periodic");
  }

  if (g.json_output) {
    std::cout << j.dump(2) << "\n";
  } else if (fixed_power) {
    std::cout << "fixed words found: " << j["fixed_words_found"] << ", rank "
              << j["approximation"]["rank"] << ", budget skipped " << j["budget_skipped"] << "\n";
  } else if (!containment_text.empty()) {
    std::cout << (j["contained"].get<bool>() ? "contained" : "NOT contained") << "\n";
  } else if (factorial_chain) {
    std::cout << "stages:";
    for (const auto& s : j["stages"])
      std::cout << " [" << s["exponent"] << "] rank " << s["rank"];
    std::cout << "\n";
  } else {
    std::cout << "periodic words: " << j["periodic"].size() << ", rank " << j["rank"]
              << ", period lcm " << j["r_phi_estimate"] << "\n";
  }
  return exit_code;
}

int cmd_experiment(const GlobalOptions& g, const std::string& suite, int trials,
                   const std::string& extension_path, int min_gens, int max_gens, int min_len,
                   int max_len, int threads) {
  ExperimentConfig cfg;
  cfg.seed = g.seed;
  cfg.trials = trials;
  cfg.alphabet_size = g.alphabet().size();
  cfg.min_generators = min_gens;
  cfg.max_generators = max_gens;
  cfg.min_word_len = min_len;
  cfg.max_word_len = max_len;
  cfg.threads = threads;

  json j;
  j["suite"] = suite;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  int violations = 0;

  if (suite == "hnc") {
    HncReport report = run_hnc_suite(cfg);
    violations = report.violations;
    json ts = json::array();
    for (const auto& t : report.trials)
      ts.push_back({{"rank1", t.rank1},
                    {"rank2", t.rank2},
                    {"rank_meet", t.rank_meet},
                    {"bound", t.bound},
                    {"pass", t.pass}});
    j["records"] = ts;
  } else if (suite == "index") {
    IndexRankReport report = run_index_rank_suite(cfg);
    violations = report.violations;
    json ts = json::array();
    for (const auto& t : report.trials)
      ts.push_back({{"index", t.index},
                    {"rank", t.rank},
                    {"expected", t.expected},
                    {"generators_used", t.generators_used},
                    {"pass", t.pass}});
    j["records"] = ts;
  } else if (suite == "confluence") {
    ConfluenceReport report = run_confluence_suite(cfg);
    violations = report.violations;
    j["orders_per_trial"] = report.orders_per_trial;
  } else if (suite == "vfree") {
    if (extension_path.empty()) throw InputError("vfree suite needs --extension");
    auto G = load_extension_file(extension_path);
    if (G->alphabet().size() != cfg.alphabet_size)
      cfg.alphabet_size = G->alphabet().size();
    VfreeBoundReport report = run_vfree_bound_suite(cfg, G);
    violations = report.violations;
    json ts = json::array();
    for (const auto& t : report.trials)
      ts.push_back({{"n1", t.n1},
                    {"n2", t.n2},
                    {"rank_k1", t.rank_k1},
                    {"rank_k2", t.rank_k2},
                    {"observed", t.observed},
                    {"bound", t.bound},
                    {"pass", t.intersection_pass && t.k_bound_pass}});
    j["records"] = ts;
  } else {
    throw InputError("unknown suite " + suite + " (want hnc, index, confluence or vfree)");
  }

  j["violations"] = violations;
  if (g.json_output) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "suite " << suite << ": " << trials << " trials, " << violations
              << " violations\n";
  }
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact subgroup calculus for free and free-by-finite groups"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--alphabet", g.alphabet_text,
                 "positive letters, e.g. 'a,b,c' or a count like '3'")
      ->capture_default_str();
  app.add_flag("--json", g.json_output, "machine-readable output");
  app.add_option("--dot", g.dot_path, "write the resulting automaton as DOT");
  app.add_option("--seed", g.seed, "seed for the experiment suites")->capture_default_str();

  std::string subgroup, subgroup2, word;
  auto* fold = app.add_subcommand("fold", "fold a generating set into its automaton");
  fold->add_option("generators", subgroup, "inline 'w1, w2' or a file")->required();
  auto* member = app.add_subcommand("member", "decide membership in a subgroup");
  member->add_option("generators", subgroup, "inline 'w1, w2' or a file")->required();
  member->add_option("word", word, "word to test")->required();
  auto* rank = app.add_subcommand("rank", "rank of the subgroup");
  rank->add_option("generators", subgroup)->required();
  auto* basis = app.add_subcommand("basis", "free basis of the subgroup");
  basis->add_option("generators", subgroup)->required();
  auto* index = app.add_subcommand("index", "index in the ambient free group, or 'infinite'");
  index->add_option("generators", subgroup)->required();
  auto* isect = app.add_subcommand("intersect", "intersection of two subgroups");
  isect->add_option("first", subgroup)->required();
  isect->add_option("second", subgroup2)->required();

  std::string extension_path, element_text;
  std::vector<std::string> subgroup_paths;
  bool zakharov = false;
  int max_free_len = 2;
  auto* vf = app.add_subcommand("vf", "subgroup calculus in a free-by-finite extension");
  vf->add_option("--extension", extension_path,
                 "extension description file (or an 'extension' line in the subgroup file)");
  vf->add_option("--subgroup", subgroup_paths, "subgroup file (repeat for an intersection)");
  vf->add_option("--element", element_text, "element to test against the first subgroup");
  vf->add_flag("--zakharov", zakharov, "search finite subgroups and report the trace bound");
  vf->add_option("--max-free-len", max_free_len, "torsion search horizon")
      ->capture_default_str();

  std::string n1_text = "2:4", n2_text = "2:4", m_text = "1:3";
  std::optional<long long> nilpotency, prk, hirsch;
  auto* bounds_cmd = app.add_subcommand("bounds", "closed-form rank bound tables");
  bounds_cmd->add_option("--n1", n1_text, "range lo:hi")->capture_default_str();
  bounds_cmd->add_option("--n2", n2_text, "range lo:hi")->capture_default_str();
  bounds_cmd->add_option("--m", m_text, "index range lo:hi")->capture_default_str();
  bounds_cmd->add_option("--nilpotency", nilpotency, "nilpotency class column");
  bounds_cmd->add_option("--prk", prk, "polycyclic rank column");
  bounds_cmd->add_option("--hirsch", hirsch, "free-product Hirsch bound column");

  int strict_stages = 0;
  std::vector<std::string> stage_files;
  auto* chain = app.add_subcommand("chain", "ascending chain reports");
  chain->add_option("--strict", strict_stages, "build the strict rank-4 demonstration chain");
  chain->add_option("stages", stage_files, "stage files (one generator list per stage)");

  std::string endo_path, containment_text, dyn_extension;
  std::optional<long long> fixed_power;
  bool factorial_chain = false;
  int max_len = 8, k_max = 6;
  auto* dynamics = app.add_subcommand(
      "dynamics", "bounded fixed/periodic subgroup search (periodic report by default)");
  dynamics->add_option("--endo", endo_path, "endomorphism file")->required();
  dynamics->add_option("--extension", dyn_extension, "extension file (search over it instead)");
  dynamics->add_option("--power", fixed_power, "approximate Fix(phi^N) instead");
  dynamics->add_flag("--fix-chain", factorial_chain, "factorial chain of fixed approximations");
  dynamics->add_option("--containment", containment_text, "check Fix(phi^M) <= Fix(phi^MP); value M,MP");
  dynamics->add_option("--max-len", max_len, "word length budget")->capture_default_str();
  dynamics->add_option("--k-max", k_max, "maximal period / chain length")->capture_default_str();
  std::optional<std::int64_t> rank_bound;
  dynamics->add_option("--rank-bound", rank_bound,
                       "compare the extension-search rank bound against this value");

  std::string suite = "hnc", exp_extension;
  int trials = 100, min_gens = 2, max_gens = 4, min_len = 1, exp_max_len = 6, threads = 0;
  auto* experiment = app.add_subcommand("experiment", "seeded property-experiment suites");
  experiment->add_option("--suite", suite, "hnc | index | confluence | vfree")
      ->capture_default_str();
  experiment->add_option("--trials", trials)->capture_default_str();
  experiment->add_option("--extension", exp_extension, "extension file for the vfree suite");
  experiment->add_option("--min-gens", min_gens)->capture_default_str();
  experiment->add_option("--max-gens", max_gens)->capture_default_str();
  experiment->add_option("--min-len", min_len)->capture_default_str();
  experiment->add_option("--max-len", exp_max_len)->capture_default_str();
  experiment->add_option("--threads", threads, "0 = hardware")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fold->parsed()) return cmd_fold(g, subgroup);
    if (member->parsed()) return cmd_member(g, subgroup, word);
    if (rank->parsed()) return cmd_scalar(g, subgroup, "rank");
    if (basis->parsed()) return cmd_scalar(g, subgroup, "basis");
    if (index->parsed()) return cmd_scalar(g, subgroup, "index");
    if (isect->parsed()) return cmd_intersect(g, subgroup, subgroup2);
    if (vf->parsed())
      return cmd_vf(g, extension_path, subgroup_paths, element_text, zakharov, max_free_len);
    if (bounds_cmd->parsed())
      return cmd_bounds(g, n1_text, n2_text, m_text, nilpotency, prk, hirsch);
    if (chain->parsed()) return cmd_chain(g, strict_stages, stage_files);
    if (dynamics->parsed())
      return cmd_dynamics(g, endo_path, dyn_extension, fixed_power, factorial_chain,
                          containment_text, max_len, k_max, rank_bound);
    if (experiment->parsed())
      return cmd_experiment(g, suite, trials, exp_extension, min_gens, max_gens, min_len,
                            exp_max_len, threads);
  } catch (const WordParseError& e) {
    std::cerr << "error: " << e.what() << " (column " << e.column << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
