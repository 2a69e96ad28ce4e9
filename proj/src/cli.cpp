#include "pseudoseg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <memory>
#include <random>
#include <sstream>

#include "pseudoseg/arrangement.hpp"
#include "pseudoseg/census.hpp"
#include "pseudoseg/constructions.hpp"
#include "pseudoseg/errors.hpp"
#include "pseudoseg/io.hpp"
#include "pseudoseg/setsystem.hpp"

namespace pseudoseg::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Input {
 public:
  Input(const std::string& path, std::istream& fallback, bool binary = false) {
    if (path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ifstream>(path, binary ? std::ios::binary : std::ios::in);
    if (!*file_) throw InvalidInput("cannot open '" + path + "'");
    stream_ = file_.get();
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

void emit(const std::string& path, std::ostream& fallback, const std::string& data) {
  if (path == "-") {
    fallback << data;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  f << data;
}

std::string dump(json j) {
  j["version"] = kVersion;
  return j.dump(2) + "\n";
}

std::string csv_header() { return std::string("# ") + kVersion + "\n"; }

Rat parse_rat(const std::string& s, const char* flag) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rat::parse(s);
    return Rat::parse(s.substr(0, slash), s.substr(slash + 1));
  } catch (const std::exception&) {
    throw UsageError(std::string("--") + flag + ": expected an integer or p/q, got '" + s + "'");
  }
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, const std::string& what) {
  if (!seed) throw UsageError(what + " is randomized and requires --seed");
  return *seed;
}

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

json rat_or_null(const std::optional<Rat>& r) { return r ? rat_to_json(*r) : json(nullptr); }

json wall_json(const Wall& w) {
  static const char* names[] = {"ground", "crossing", "endpoint"};
  return {{"x", rat_to_json(w.x)}, {"origin", names[static_cast<int>(w.origin)]}};
}

json diagram_json(const WiringDiagram& w) {
  json swaps = json::array();
  for (const auto& s : w.swaps()) swaps.push_back(json::array({s.pos, s.lower, s.upper}));
  return {{"wires", w.wires()}, {"swaps", std::move(swaps)}, {"canonical", x_iso_canonical(w)}};
}

WiringDiagram diagram_from_json(const json& j) {
  if (!j.is_object() || !j.contains("wires") || !j.contains("swaps")) {
    throw InvalidInput("wiring diagram JSON needs \"wires\" and \"swaps\"");
  }
  std::vector<Swap> swaps;
  for (const auto& s : j["swaps"]) {
    if (!s.is_array() || s.size() != 3) throw InvalidInput("swap entries are [pos, lower, upper]");
    swaps.push_back({s[0].get<std::size_t>(), s[1].get<std::string>(), s[2].get<std::string>()});
  }
  return WiringDiagram(j["wires"].get<std::vector<std::string>>(), std::move(swaps));
}

WiringDiagram read_diagram(std::istream& in) {
  const std::string text = read_all(in);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return diagram_from_json(json::parse(text));
  std::istringstream s(text);
  return read_wiring_text(s);
}

json decomposition_json(const VerticalDecomposition& d) {
  json cells = json::array();
  for (const auto& c : d.cells) {
    cells.push_back({{"gap", c.gap},
                     {"bottom", c.bottom ? json(*c.bottom) : json("-inf")},
                     {"top", c.top ? json(*c.top) : json("+inf")},
                     {"left", wall_json(c.left)},
                     {"right", wall_json(c.right)},
                     {"crossings", c.crossings}});
  }
  json adj = json::array();
  for (auto [a, b] : d.adjacency) adj.push_back(json::array({a, b}));
  return {{"strip", json::array({rat_to_json(d.strip.x0), rat_to_json(d.strip.x1)})},
          {"cell_count", d.size()},
          {"cells", std::move(cells)},
          {"adjacency", std::move(adj)}};
}

json split_json(const SplitTree& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes) {
    nodes.push_back({{"strip", json::array({rat_to_json(n.strip.x0), rat_to_json(n.strip.x1)})},
                     {"through", n.through},
                     {"endpoint", n.endpoint},
                     {"p", n.p},
                     {"depth", n.depth},
                     {"children", n.leaf() ? json(nullptr) : json::array({*n.left, *n.right})}});
  }
  return {{"nodes", std::move(nodes)}, {"depth", t.depth()}, {"leaves", t.leaves()}};
}

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

struct Options {
  std::string in = "-";
  std::string out = "-";
  std::string format;
  std::optional<std::uint64_t> seed;
  long n = 0, k = 0, h = 0, m = 0, d = 0;
  std::size_t z = 0, z_max = 0;
  std::string choices = "all-cross";
  std::string scale, c, r, x0, x1, wire, family;
  std::optional<std::uint64_t> code;
  std::uint64_t limit = 1'000'000;
  bool dual = false, sort = false, geometric = false, random = false;
};

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const auto* a : allowed) {
    if (f == a) return;
  }
  throw UsageError("unsupported --format '" + f + "'");
}

void dispatch(const std::string& cmd, Options& o, std::istream& in, std::ostream& out) {
  if (cmd == "gen-grid") {
    const auto g = build_grid(o.n, o.k);
    DetourChoice choice;
    if (o.choices == "all-cross") {
      choice = uniform_choice(g, Detour::Cross);
    } else if (o.choices == "all-avoid") {
      choice = uniform_choice(g, Detour::Avoid);
    } else if (o.choices == "random") {
      std::mt19937_64 rng(require_seed(o.seed, "--choices random"));
      choice = random_choice(g, rng);
    } else if (o.choices.rfind("bits:", 0) == 0) {
      try {
        choice = choice_from_bits(g, std::stoull(o.choices.substr(5)));
      } catch (const std::logic_error&) {
        throw UsageError("--choices bits:N needs an unsigned integer");
      }
    } else {
      throw UsageError("--choices must be all-cross, all-avoid, random or bits:N");
    }
    const Rat scale = o.scale.empty() ? default_grid_scale(g) : parse_rat(o.scale, "scale");
    emit(o.out, out, dump(family_to_json(realize_geometric(g, choice, scale))));
  } else if (cmd == "gen-staircase") {
    if (o.k < 1 || o.h < 1) throw BadParams("staircase needs k, h >= 1");
    StaircaseParams p;
    if (o.random) {
      std::mt19937_64 rng(require_seed(o.seed, "--random"));
      std::uniform_int_distribution<long> pick(1, o.k);
      p.k = o.k;
      for (long t = 0; t < o.h; ++t) p.choices.push_back({pick(rng), pick(rng), pick(rng)});
    } else {
      p = staircase_params_from_index(o.k, o.h, o.code.value_or(0));
    }
    emit(o.out, out, dump(family_to_json(staircase_build(p))));
  } else if (cmd == "graph") {
    Input src(o.in, in);
    emit(o.out, out, dump(graph_to_json(intersection_graph(family_from_json(read_json(src.get()))))));
  } else if (cmd == "validate") {
    Input src(o.in, in);
    const auto f = family_from_json(read_json(src.get()));
    const auto chk = is_pseudosegment_family(f);
    json j{{"curves", f.size()}, {"pseudosegment", chk.ok()}};
    j["violation"] = chk.ok() ? json(nullptr) : json::array({chk.violation->first, chk.violation->second});
    try {
      const Strip s = grounds_of(f);
      j["double_grounded"] = true;
      j["grounds"] = json::array({rat_to_json(s.x0), rat_to_json(s.x1)});
    } catch (const NotDoubleGrounded&) {
      j["double_grounded"] = false;
      j["grounds"] = nullptr;
    }
    emit(o.out, out, dump(j));
  } else if (cmd == "shatter" || cmd == "vc") {
    check_format(o.format.empty() ? "json" : o.format, {"json", "csv"});
    Input src(o.in, in);
    const auto f = read_set_family(src.get());
    const bool csv = o.format == "csv";
    if (cmd == "shatter") {
      const std::size_t v = o.dual ? dual_shatter(f, o.z) : primal_shatter(f, o.z);
      const char* kind = o.dual ? "dual" : "primal";
      emit(o.out, out,
           csv ? csv_header() + "kind,z,value\n" + kind + "," + std::to_string(o.z) + "," + std::to_string(v) + "\n"
               : dump({{"kind", kind}, {"z", o.z}, {"value", v}}));
    } else {
      const std::size_t v = vc_dimension(f);
      emit(o.out, out, csv ? csv_header() + "vc_dimension\n" + std::to_string(v) + "\n" : dump({{"vc_dimension", v}}));
    }
  } else if (cmd == "encode") {
    Input src(o.in, in);
    const auto c = encode(read_set_family(src.get()));
    emit(o.out, out, std::string(c.bytes.begin(), c.bytes.end()));
  } else if (cmd == "decode") {
    Input src(o.in, in, true);
    const std::string raw = read_all(src.get());
    auto f = decode(CodecOutput::from_bytes(std::vector<std::uint8_t>(raw.begin(), raw.end())));
    if (o.sort) f = SetFamily(f.n(), f.sorted_rows());
    std::ostringstream s;
    write_set_family(s, f);
    emit(o.out, out, s.str());
  } else if (cmd == "pack-check") {
    check_format(o.format.empty() ? "json" : o.format, {"json", "csv"});
    Input src(o.in, in);
    const auto rep = packing_check(read_set_family(src.get()), parse_rat(o.c, "c"), o.d, o.z_max);
    if (o.format == "csv") {
      std::string s = csv_header() + "i,delta,ratio\n";
      for (const auto& e : rep.per_prefix) {
        s += std::to_string(e.i) + "," + std::to_string(e.delta) + "," + format_double(e.ratio.to_double()) + "\n";
      }
      emit(o.out, out, s);
    } else {
      json rows = json::array();
      for (const auto& e : rep.per_prefix) rows.push_back({{"i", e.i}, {"delta", e.delta}, {"ratio", rat_to_json(e.ratio)}});
      json j{{"max_ratio", rat_or_null(rep.max_ratio)}, {"per_prefix", std::move(rows)}};
      j["max_ratio_value"] = rep.max_ratio ? json(rep.max_ratio->to_double()) : json(nullptr);
      emit(o.out, out, dump(j));
    }
  } else if (cmd == "sweep") {
    check_format(o.format.empty() ? "text" : o.format, {"text", "json"});
    Input src(o.in, in);
    const auto w = sweep(family_from_json(read_json(src.get())));
    if (o.format == "json") {
      emit(o.out, out, dump(diagram_json(w)));
    } else {
      std::ostringstream s;
      write_wiring_text(s, w);
      emit(o.out, out, s.str());
    }
  } else if (cmd == "zone") {
    Input src(o.in, in);
    const auto w = read_diagram(src.get());
    std::vector<std::string> wires = o.wire.empty() ? w.wires() : std::vector<std::string>{o.wire};
    json zones = json::array();
    double worst = 0;
    for (const auto& label : wires) {
      const std::size_t z = zone_complexity(w, label);
      zones.push_back({{"wire", label}, {"complexity", z}});
      if (w.m() > 0) worst = std::max(worst, static_cast<double>(z) / static_cast<double>(w.m()));
    }
    emit(o.out, out, dump({{"m", w.m()}, {"zones", std::move(zones)}, {"max_ratio", worst}}));
  } else if (cmd == "vdecomp") {
    Input src(o.in, in);
    const auto f = family_from_json(read_json(src.get()));
    Strip s = (o.x0.empty() || o.x1.empty()) ? grounds_of(f) : Strip{parse_rat(o.x0, "x0"), parse_rat(o.x1, "x1")};
    emit(o.out, out, dump(decomposition_json(vertical_decomposition(f, s.x0, s.x1))));
  } else if (cmd == "cut") {
    const std::uint64_t seed = require_seed(o.seed, "cut");
    Input src(o.in, in);
    const auto f = family_from_json(read_json(src.get()));
    const Rat r = parse_rat(o.r, "r");
    const auto res = weak_cutting(f, r, seed);
    const Rat threshold = Rat(static_cast<long>(f.size())) / r;
    emit(o.out, out,
         dump({{"sample", res.sample},
               {"sample_size", res.sample.size()},
               {"cell_count", res.decomposition.size()},
               {"max_cell_crossing", res.max_crossing},
               {"threshold", rat_to_json(threshold)},
               {"threshold_value", threshold.to_double()},
               {"attempts", res.attempts},
               {"r", rat_to_json(r)},
               {"seed", seed}}));
  } else if (cmd == "split") {
    Input src(o.in, in);
    emit(o.out, out, dump(split_json(strip_split(family_from_json(read_json(src.get()))))));
  } else if (cmd == "census") {
    check_format(o.format.empty() ? "csv" : o.format, {"json", "csv"});
    long n = 0, k = 0;
    std::size_t incidences = 0;
    double lg = 0;
    bool verified = false;
    std::string count;
    if (o.family == "grid") {
      const auto c = grid_census(build_grid(o.n, o.k), o.limit, o.geometric);
      n = o.n;
      k = o.k;
      incidences = c.incidences;
      lg = c.count_log2();
      verified = c.verified;
      count = c.count ? std::to_string(*c.count) : "";
    } else if (o.family == "staircase") {
      const auto c = staircase_census(o.k, o.h, o.limit);
      n = 3 * o.k + o.h;
      k = o.k;
      incidences = static_cast<std::size_t>(3 * o.h);
      lg = c.count_log2();
      verified = c.verified;
      count = c.count ? std::to_string(*c.count) : "";
    } else {
      throw UsageError("--family must be grid or staircase");
    }
    if (o.format == "json") {
      emit(o.out, out,
           dump({{"family", o.family}, {"n", n}, {"k", k}, {"I", incidences}, {"count_log2", lg},
                 {"count", count.empty() ? json(nullptr) : json(count)}, {"verified", verified}}));
    } else {
      emit(o.out, out,
           csv_header() + "n,k,I,count_log2,verified\n" + std::to_string(n) + "," + std::to_string(k) + "," +
               std::to_string(incidences) + "," + format_double(lg) + "," + (verified ? "true" : "false") + "\n");
    }
  } else if (cmd == "verify-eq1") {
    const auto h = verify_h_relation(static_cast<int>(o.n), static_cast<int>(o.m), parse_rat(o.c, "c"), o.d);
    emit(o.out, out, dump({{"n", o.n}, {"m", o.m}, {"lhs", h.lhs}, {"rhs", h.rhs}, {"holds", h.holds()}}));
    if (!h.holds()) throw Error("identity fails: " + std::to_string(h.lhs) + " != " + std::to_string(h.rhs));
  } else if (cmd == "bound-table") {
    Input src(o.in, in);
    std::ostringstream s;
    s << csv_header();
    bound_table(read_json(src.get()), s);
    emit(o.out, out, s.str());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudo-segment families, set-system codecs and arrangement tools", "pseudoseg"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto io = [&](CLI::App* s, bool output = true) {
    s->add_option("--in", o.in, "input path, - for stdin");
    if (output) s->add_option("--out", o.out, "output path, - for stdout");
  };
  auto* gen_grid = app.add_subcommand("gen-grid", "grid/detour family as curve JSON");
  gen_grid->add_option("--n", o.n)->required();
  gen_grid->add_option("--k", o.k)->required();
  gen_grid->add_option("--choices", o.choices, "all-cross | all-avoid | random | bits:N");
  gen_grid->add_option("--scale", o.scale, "detour scale p/q, default 1/(2k)");
  gen_grid->add_option("--seed", o.seed);
  gen_grid->add_option("--out", o.out);

  auto* gen_stair = app.add_subcommand("gen-staircase", "staircase bipartite family as curve JSON");
  gen_stair->set_help_flag("--help", "print this help");  // -h would clash with --h
  gen_stair->add_option("--k", o.k)->required();
  gen_stair->add_option("--h", o.h)->required();
  auto* code_opt = gen_stair->add_option("--code", o.code, "choice vector index");
  gen_stair->add_flag("--random", o.random)->excludes(code_opt);
  gen_stair->add_option("--seed", o.seed);
  gen_stair->add_option("--out", o.out);

  io(app.add_subcommand("graph", "intersection graph of a curve family"));
  io(app.add_subcommand("validate", "pseudo-segment and grounding report"));

  auto* shatter = app.add_subcommand("shatter", "exact primal or dual shatter function");
  io(shatter);
  shatter->add_option("--z", o.z)->required();
  shatter->add_flag("--dual", o.dual);
  shatter->add_option("--format", o.format, "json | csv");

  auto* vc = app.add_subcommand("vc", "VC-dimension of a set family");
  io(vc);
  vc->add_option("--format", o.format, "json | csv");

  io(app.add_subcommand("encode", "set family text to the binary codec"));
  auto* dec = app.add_subcommand("decode", "binary codec to set family text");
  io(dec);
  dec->add_flag("--sort", o.sort, "sort rows");

  auto* pack = app.add_subcommand("pack-check", "greedy packing ratios under a shatter bound c*z^d");
  io(pack);
  pack->add_option("--c", o.c)->required();
  pack->add_option("--d", o.d)->required();
  pack->add_option("--z-max", o.z_max);
  pack->add_option("--format", o.format, "json | csv");

  auto* sw = app.add_subcommand("sweep", "wiring diagram of a double-grounded family");
  io(sw);
  sw->add_option("--format", o.format, "text | json");

  auto* zone = app.add_subcommand("zone", "zone complexity in a wiring diagram");
  io(zone);
  zone->add_option("--wire", o.wire, "wire label, default all");

  auto* vd = app.add_subcommand("vdecomp", "vertical decomposition");
  io(vd);
  vd->add_option("--x0", o.x0);
  vd->add_option("--x1", o.x1);

  auto* cut = app.add_subcommand("cut", "random-sampling weak cutting");
  io(cut);
  cut->add_option("--r", o.r)->required();
  cut->add_option("--seed", o.seed);

  io(app.add_subcommand("split", "recursive strip split"));

  auto* census = app.add_subcommand("census", "labelled graph census");
  census->set_help_flag("--help", "print this help");
  census->add_option("--family", o.family, "grid | staircase")->required();
  census->add_option("--n", o.n);
  census->add_option("--k", o.k)->required();
  census->add_option("--h", o.h);
  census->add_option("--limit", o.limit, "enumerate when the count is at most this");
  census->add_flag("--geometric", o.geometric, "also realize every grid choice");
  census->add_option("--format", o.format, "csv | json");
  census->add_option("--out", o.out);

  auto* eq1 = app.add_subcommand("verify-eq1", "multiset/set shatter-count identity");
  eq1->add_option("--n", o.n)->required();
  eq1->add_option("--m", o.m)->required();
  eq1->add_option("--c", o.c)->required();
  eq1->add_option("--d", o.d)->required();
  eq1->add_option("--out", o.out);

  io(app.add_subcommand("bound-table", "census summary CSV from an experiment description"));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    dispatch(cmd, o, in, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: " << msg << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pseudoseg::cli
