#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <variant>

#include "jcn/flow.hpp"
#include "jcn/format.hpp"
#include "jcn/gadgets.hpp"
#include "jcn/oracle.hpp"
#include "jcn/planarity.hpp"
#include "jcn/reductions.hpp"

using namespace jcn;

namespace {

/// Failed self-check or violated input contract: exit code 1.
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Weight parse_weight(const std::string& text, const std::string& flag) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw CLI::ValidationError(flag, "expected a non-negative decimal integer, got '" + text + "'");
  }
  return Weight(text);
}

std::vector<Weight> parse_list(const std::string& text, const std::string& flag) {
  std::vector<Weight> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    bool negative = !item.empty() && item[0] == '-';
    Weight w = parse_weight(negative ? item.substr(1) : item, flag);
    out.push_back(negative ? Weight(-w) : w);
  }
  return out;
}

std::string kind_name(const Instance& inst) {
  return std::visit(
      [](const auto& i) -> std::string {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, AnchoredInstance>) return "anchored";
        if constexpr (std::is_same_v<T, FaJointInstance>) return "face-anchored";
        if constexpr (std::is_same_v<T, SurfaceJointInstance>) return "surface";
        return "graph";
      },
      inst);
}

std::string sizes(const Instance& inst) {
  return std::visit(
      [](const auto& i) -> std::string {
        using T = std::decay_t<decltype(i)>;
        auto vs = [](const WeightedMultigraph& g) {
          return std::to_string(g.vertex_count()) + "/" + std::to_string(g.edge_count());
        };
        if constexpr (std::is_same_v<T, GraphInstance>) {
          return "V/E " + vs(i.graph);
        } else if constexpr (std::is_same_v<T, SurfaceJointInstance>) {
          return "V/E " + vs(i.h1) + " + " + vs(i.h2);
        } else {
          return "V/E " + vs(i.g1) + " + " + vs(i.g2);
        }
      },
      inst);
}

Instance load(const std::string& path) { return parse_instance(read_file(path)); }

template <class T>
T load_as(const std::string& path, const std::string& what) {
  Instance inst = load(path);
  if (!std::holds_alternative<T>(inst)) {
    throw InstanceError(path + " holds a " + kind_name(inst) + " instance, expected " + what);
  }
  return std::get<T>(inst);
}

std::string hex_hash(const Instance& inst) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(instance_hash(inst)));
  return buf;
}

/// Writes the instance (stdout when no path) and prints a summary line.
void emit(const Instance& inst, const std::string& out, bool check) {
  const std::string text = serialize(inst);
  if (check) {
    Instance back = parse_instance(text);
    if (auto* s = std::get_if<SurfaceJointInstance>(&back)) s->receipt = std::get<SurfaceJointInstance>(inst).receipt;
    if (!(back == inst)) throw CheckFailure("written instance does not parse back to itself");
  }
  if (out.empty()) {
    std::cout << text;
    return;
  }
  write_file(out, text);
  std::cout << "wrote " << out << ": " << kind_name(inst) << ", " << sizes(inst) << ", hash " << hex_hash(inst) << '\n';
}

void emit_receipt(const ReductionReceipt& r, const std::string& path, bool check) {
  if (path.empty()) return;
  const std::string text = serialize_receipt(r);
  if (check && !(parse_receipt(text) == r)) throw CheckFailure("receipt does not parse back to itself");
  write_file(path, text);
  std::cout << "receipt " << path << ": stages";
  for (const auto& s : r.stages) std::cout << ' ' << s;
  std::cout << '\n';
}

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure("check failed: " + what);
}

void check_surface(const SurfaceJointInstance& s, bool three_connected) {
  validate(s);
  require(euler_genus(s.h1, s.rotation1) == s.genus, "genus of the first embedding");
  require(euler_genus(s.h2, s.rotation2) == s.genus, "genus of the second embedding");
  if (three_connected) {
    require(is_simple(s.h1) && is_simple(s.h2), "simplicity");
    require(is_three_connected(s.h1) && is_three_connected(s.h2), "3-connectivity");
  }
}

std::vector<VertexIndex> vertex_list(const WeightedMultigraph& g, const std::string& names) {
  std::vector<VertexIndex> out;
  std::stringstream in(names);
  std::string n;
  while (std::getline(in, n, ',')) out.push_back(g.vertex(n));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint crossing number reductions: gadget generators, reductions with receipts, verifiers and a "
               "brute-force oracle for tiny instances."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string in, out, receipt_path;
  bool check = false;
  auto add_out = [&](CLI::App* c) {
    c->add_option("-o,--out", out, "Output file (standard output when omitted)");
    c->add_flag("--check", check, "Re-validate the produced artifact");
  };
  auto add_in = [&](CLI::App* c) { c->add_option("--in", in, "Input instance file")->required()->check(CLI::ExistingFile); };

  // gen
  auto* gen = app.add_subcommand("gen", "Build a gadget");
  gen->require_subcommand(1);
  int p = 3, q = 3, k = 2, gi = 1, gh = 1;
  std::size_t cycle_length = 4;
  std::string T_text = "1", weight_text = "1";
  auto* g_grid = gen->add_subcommand("grid", "Toroidal p x q grid");
  g_grid->add_option("--p", p, "Rows")->required()->check(CLI::Range(3, 1000));
  g_grid->add_option("--q", q, "Columns")->required()->check(CLI::Range(3, 1000));
  auto* g_fkt = gen->add_subcommand("fkt", "The face-anchored ladder instance F_{k,T}");
  auto* g_fplus = gen->add_subcommand("fplus", "F+ (F_{k,T} joined with its mirror)");
  for (auto* c : {g_fkt, g_fplus}) {
    c->add_option("--k", k, "Ladder length")->required()->check(CLI::Range(2, 10000));
    c->add_option("--T", T_text, "Weight base (decimal)")->required();
  }
  auto* g_torus = gen->add_subcommand("torus-gadget", "T_i: cycle C_i' with the attached torus part");
  g_torus->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  g_torus->add_option("--i", gi, "Anchor index (1-based)")->required()->check(CLI::Range(1, 1000));
  g_torus->add_option("--h", gh, "Number of anchors")->required()->check(CLI::Range(1, 1000));
  g_torus->add_option("--cycle-length", cycle_length, "Length of C_i'")->check(CLI::Range(4, 100000));
  auto* g_l = gen->add_subcommand("l-gadget", "L_i: K3,3 with two weight-1 edges, on the torus");
  g_l->add_option("--weight", weight_text, "Thick weight t_i (decimal)")->required();
  for (auto* c : {g_grid, g_fkt, g_fplus, g_torus, g_l}) add_out(c);

  // reduce
  auto* red = app.add_subcommand("reduce", "Apply a reduction");
  red->require_subcommand(1);
  bool subdivide = false;
  std::string bound_text = "10000000", expand_text = "within-bound";
  int genus = 6;
  auto* r_weights = red->add_subcommand("weights", "Unary expansion of edge weights");
  r_weights->add_flag("--subdivide", subdivide, "Subdivide bunch edges and join them by a path (simple output)");
  r_weights->add_option("--unary-bound", bound_text, "Largest weight written out in unary");
  auto* r_3conn = red->add_subcommand("3conn", "Wheel blow-up of a surface instance");
  auto* r_fa2s = red->add_subcommand("fa2surface", "Face-anchored planar instance to a surface instance");
  auto* r_a2fa6 = red->add_subcommand("anchored2fa6", "Anchored instance to six face anchors");
  auto* r_full = red->add_subcommand("full", "Anchored instance to a simple 3-connected surface instance");
  r_full->add_option("--genus", genus, "Target genus (extra handles become dummy anchors)")->check(CLI::Range(6, 1000));
  r_full->add_option("--expand", expand_text, "Unary expansion: always, never, within-bound")
      ->check(CLI::IsMember({"always", "never", "within-bound"}));
  r_full->add_option("--unary-bound", bound_text, "Largest weight written out in unary");
  for (auto* c : {r_weights, r_3conn, r_fa2s, r_a2fa6, r_full}) {
    add_in(c);
    add_out(c);
    c->add_option("--receipt", receipt_path, "Receipt sidecar file");
  }

  // verify
  auto* ver = app.add_subcommand("verify", "Evaluate and cross-check formulas and invariants");
  ver->require_subcommand(1);
  std::string source_names, sink_names, a_text, b_text, perm_text;
  auto* v_counts = ver->add_subcommand("counts", "gamma, beta and canonical counts against their sums");
  v_counts->add_option("--k", k, "Ladder length")->required()->check(CLI::Range(1, 100000));
  v_counts->add_option("--T", T_text, "Weight base (decimal)")->required();
  auto* v_cuts = ver->add_subcommand("cuts", "Minimum cuts: the ladder corners, or --source/--sink in a file");
  v_cuts->add_option("--k", k, "Ladder length")->check(CLI::Range(2, 100000));
  v_cuts->add_option("--in", in, "Graph or joint instance file (first graph is used)")->check(CLI::ExistingFile);
  v_cuts->add_option("--source", source_names, "Comma-separated vertex names");
  v_cuts->add_option("--sink", sink_names, "Comma-separated vertex names");
  auto* v_genus = ver->add_subcommand("genus", "Genus of the embeddings in an instance");
  add_in(v_genus);
  auto* v_width = ver->add_subcommand("edge-width", "Dual edge-width of a toroidal embedding");
  v_width->add_option("--in", in, "Embedded graph instance file")->check(CLI::ExistingFile);
  v_width->add_option("--p", p, "Grid rows (instead of --in)")->check(CLI::Range(3, 1000));
  v_width->add_option("--q", q, "Grid columns (instead of --in)")->check(CLI::Range(3, 1000));
  auto* v_a2 = ver->add_subcommand("a2", "Condition (A2) of an anchored instance by max flow");
  add_in(v_a2);
  auto* v_order = ver->add_subcommand("ordering", "Ordering gap of a permutation");
  v_order->add_option("--a", a_text, "Strictly increasing list, comma-separated")->required();
  v_order->add_option("--b", b_text, "Strictly decreasing list, comma-separated")->required();
  v_order->add_option("--perm", perm_text, "Permutation of 0..n-1, comma-separated")->required();

  // oracle
  auto* orc = app.add_subcommand("oracle", "Exact face-anchored joint planar crossing number of a tiny instance");
  add_in(orc);
  std::string max_text = "4";
  OracleOptions oracle_options;
  orc->add_option("--max-crossings", max_text, "Give up above this weighted count");
  orc->add_option("--max-edge-product", oracle_options.max_edge_product, "Refuse instances with |E1| |E2| above this");
  orc->add_option("--multiplicity-cap", oracle_options.multiplicity_cap, "Crossings allowed per edge pair");

  // export-dot
  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of an instance");
  add_in(dot);
  dot->add_option("-o,--out", out, "Output file (standard output when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      if (g_grid->parsed()) {
        auto t = toroidal_grid(p, q);
        GraphInstance g{"grid", t.graph, t.rotation};
        if (check) require(euler_genus(g.graph, *g.rotation) == 1, "toroidal grid genus");
        emit(g, out, check);
      } else if (g_fkt->parsed() || g_fplus->parsed()) {
        LadderParams params{k, parse_weight(T_text, "--T")};
        auto fa = build_fa_instance(params);
        if (g_fkt->parsed()) {
          if (check) {
            require(euler_genus(fa.instance.g1, *fa.instance.promise1) == 0, "F1 plane");
            require(euler_genus(fa.instance.g2, *fa.instance.promise2) == 0, "F2 plane");
          }
          emit(fa.instance, out, check);
        } else {
          auto fp = mirror_join(fa);
          if (check) {
            require(euler_genus(fp.instance.g1, *fp.instance.promise1) == 0, "F1+ plane");
            require(euler_genus(fp.instance.g2, *fp.instance.promise2) == 0, "F2+ plane");
          }
          emit(fp.instance, out, check);
        }
      } else if (g_torus->parsed()) {
        if (gi > gh) throw CLI::ValidationError("--i", "must not exceed --h");
        auto t = torus_gadget({gi, gh}, cycle_length);
        GraphInstance g{"T" + std::to_string(gi), t.embedded.graph, t.embedded.rotation};
        if (check) require(euler_genus(g.graph, *g.rotation) == 1, "torus gadget genus");
        emit(g, out, check);
      } else if (g_l->parsed()) {
        auto l = l_gadget(parse_weight(weight_text, "--weight"));
        GraphInstance g{"L", l.embedded.graph, l.embedded.rotation};
        if (check) require(!is_planar(g.graph).planar && euler_genus(g.graph, *g.rotation) == 1, "L gadget on the torus");
        emit(g, out, check);
      }
      return 0;
    }

    if (red->parsed()) {
      ExpandOptions eo;
      eo.unary_bound = parse_weight(bound_text, "--unary-bound");
      if (r_weights->parsed()) {
        eo.preserve_simple_3conn = subdivide;
        Instance src = load(in);
        ReductionReceipt r;
        if (auto* s = std::get_if<SurfaceJointInstance>(&src)) r = s->receipt;
        Instance res = expand_weights(src, eo, &r);
        if (auto* s = std::get_if<SurfaceJointInstance>(&res)) r = s->receipt;
        if (check) {
          validate(res);
          std::visit(
              [&](const auto& i) {
                using T = std::decay_t<decltype(i)>;
                if constexpr (std::is_same_v<T, GraphInstance>) {
                  require(i.graph.is_unit_weighted(), "unit weights");
                } else if constexpr (std::is_same_v<T, SurfaceJointInstance>) {
                  require(i.h1.is_unit_weighted() && i.h2.is_unit_weighted(), "unit weights");
                } else {
                  require(i.g1.is_unit_weighted() && i.g2.is_unit_weighted(), "unit weights");
                }
              },
              res);
        }
        emit(res, out, check);
        emit_receipt(r, receipt_path, check);
      } else if (r_3conn->parsed()) {
        auto res = three_connectify(load_as<SurfaceJointInstance>(in, "a surface instance"));
        if (check) check_surface(res, true);
        emit(res, out, check);
        emit_receipt(res.receipt, receipt_path, check);
      } else if (r_fa2s->parsed()) {
        auto res = fa_to_surface(load_as<FaJointInstance>(in, "a face-anchored instance"));
        if (check) check_surface(res, false);
        emit(res, out, check);
        emit_receipt(res.receipt, receipt_path, check);
      } else if (r_a2fa6->parsed()) {
        auto res = anchored_to_fa6(load_as<AnchoredInstance>(in, "an anchored instance"));
        if (check) {
          validate(res.instance);
          require(res.instance.anchors.size() == 6, "six anchors");
          require(euler_genus(res.instance.g1, *res.instance.promise1) == 0, "first promise plane");
          require(euler_genus(res.instance.g2, *res.instance.promise2) == 0, "second promise plane");
        }
        emit(res.instance, out, check);
        emit_receipt(res.receipt, receipt_path, check);
      } else if (r_full->parsed()) {
        PipelineOptions po;
        po.genus = genus;
        po.expand = expand_text == "always" ? ExpandMode::always
                    : expand_text == "never" ? ExpandMode::never
                                             : ExpandMode::within_bound;
        po.expand_options = eo;
        po.expand_options.preserve_simple_3conn = true;
        auto res = full_pipeline(load_as<AnchoredInstance>(in, "an anchored instance"), po);
        if (po.expand == ExpandMode::within_bound && !res.receipt.has_stage("expand_weights")) {
          std::cerr << "note: weights exceed the unary bound " << eo.unary_bound
                    << "; the output keeps its weights (--expand always to insist)\n";
        }
        if (check) check_surface(res, !res.receipt.has_stage("expand_weights"));
        emit(res, out, check);
        emit_receipt(res.receipt, receipt_path, check);
      }
      return 0;
    }

    if (ver->parsed()) {
      if (v_counts->parsed()) {
        Weight T = parse_weight(T_text, "--T");
        const Weight fa = canonical_fa_count(k, T), fa_cuts = canonical_fa_count_from_cuts(k, T);
        const Weight b = beta(k, T), bs = beta_sum(k, T);
        std::cout << "gamma(" << k << ") = " << gamma(k) << "\n"
                  << "gamma sum = " << gamma_sum(k) << "\n"
                  << "beta(" << k << ", " << T << ") = " << b << "\n"
                  << "beta sum = " << bs << "\n"
                  << "canonical F count = " << fa << "\n"
                  << "canonical F count from cuts = " << fa_cuts << "\n"
                  << "canonical F+ count = " << canonical_fplus_count(k, T) << "\n";
        const bool ok = gamma(k) == gamma_sum(k) && b == bs && fa == fa_cuts;
        std::cout << "closed forms equal sums: " << (ok ? "yes" : "NO") << "\n";
        return ok ? 0 : 1;
      }
      if (v_cuts->parsed()) {
        if (!in.empty()) {
          if (source_names.empty() || sink_names.empty()) throw CLI::ValidationError("--source/--sink", "both required with --in");
          Instance inst = load(in);
          const WeightedMultigraph* g = std::visit(
              [](const auto& i) -> const WeightedMultigraph* {
                using T = std::decay_t<decltype(i)>;
                if constexpr (std::is_same_v<T, GraphInstance>) return &i.graph;
                else if constexpr (std::is_same_v<T, SurfaceJointInstance>) return &i.h1;
                else return &i.g1;
              },
              inst);
          std::cout << "min cut = " << min_cut_weight(*g, vertex_list(*g, source_names), vertex_list(*g, sink_names)) << "\n";
          return 0;
        }
        auto f2 = build_f2({k, 1});
        const auto& g = f2.embedded.graph;
        const Weight t0 = Weight(k) * k * k, tk = t0 + Weight(k) * (k + 1) / 2;
        bool ok = true;
        for (int i = 0; i < 4; ++i) {
          std::vector<VertexIndex> rest;
          for (int j = 0; j < 4; ++j)
            if (j != i) rest.push_back(f2.anchors[j]);
          const Weight cut = min_cut_weight(g, {f2.anchors[i]}, rest);
          const Weight want = (i == 1 || i == 2) ? t0 : tk;
          ok = ok && cut == want;
          std::cout << "a" << i + 1 << ": min cut " << cut << ", expected " << want << (cut == want ? "" : "  MISMATCH") << "\n";
        }
        return ok ? 0 : 1;
      }
      if (v_genus->parsed()) {
        Instance inst = load(in);
        std::visit(
            [](const auto& i) {
              using T = std::decay_t<decltype(i)>;
              auto show = [](const std::string& name, const WeightedMultigraph& g, const std::optional<RotationSystem>& r) {
                std::cout << name << ": ";
                if (r) std::cout << "genus " << total_genus(g, *r) << "\n";
                else std::cout << (is_planar(g).planar ? "no embedding given, planar" : "no embedding given, nonplanar") << "\n";
              };
              if constexpr (std::is_same_v<T, GraphInstance>) {
                show(i.name, i.graph, i.rotation);
              } else if constexpr (std::is_same_v<T, SurfaceJointInstance>) {
                show(i.name1, i.h1, i.rotation1);
                show(i.name2, i.h2, i.rotation2);
              } else {
                show(i.name1, i.g1, i.promise1);
                show(i.name2, i.g2, i.promise2);
              }
            },
            inst);
        return 0;
      }
      if (v_width->parsed()) {
        if (!in.empty()) {
          auto g = load_as<GraphInstance>(in, "an embedded graph instance");
          if (!g.rotation) throw InstanceError("the instance carries no embedding");
          std::cout << "edge-width " << dual_edge_width_torus(g.graph, *g.rotation) << "\n";
        } else {
          auto t = toroidal_grid(p, q);
          std::cout << "edge-width " << dual_edge_width_torus(t.graph, t.rotation) << "\n";
        }
        return 0;
      }
      if (v_a2->parsed()) {
        auto rep = validate_a2(load_as<AnchoredInstance>(in, "an anchored instance"));
        for (const auto& g : rep.groups) {
          std::cout << "group " << g.group << ": min cut " << g.min_cut << ", incident weight " << g.incident
                    << (g.ok ? ", ok" : ", FAILS") << "\n";
        }
        std::cout << "(A2) " << (rep.ok ? "holds" : "fails") << "\n";
        return rep.ok ? 0 : 1;
      }
      if (v_order->parsed()) {
        auto a = parse_list(a_text, "--a"), b = parse_list(b_text, "--b");
        std::vector<std::size_t> perm;
        for (const auto& x : parse_list(perm_text, "--perm")) perm.push_back(static_cast<std::size_t>(x));
        const Weight gap = ordering_gap(a, b, perm);
        bool identity = true;
        for (std::size_t i = 0; i < perm.size(); ++i) identity = identity && perm[i] == i;
        Weight least = -1;
        for (std::size_t i = 0; i + 1 < a.size(); ++i) {
          const Weight d = a[i + 1] - a[i];
          if (least < 0 || d < least) least = d;
        }
        std::cout << "gap = " << gap << "\n";
        if (least >= 0) std::cout << "least difference in a = " << least << "\n";
        const bool ok = identity ? gap == 0 : gap >= least;
        std::cout << (ok ? "consistent with the ordering lemma" : "VIOLATES the ordering lemma") << "\n";
        return ok ? 0 : 1;
      }
    }

    if (orc->parsed()) {
      auto inst = load_as<FaJointInstance>(in, "a face-anchored instance");
      auto res = fa_joint_planar_oracle(inst, parse_weight(max_text, "--max-crossings"), oracle_options);
      std::cout << oracle_report_line(inst, res) << "\n";
      return 0;
    }

    if (dot->parsed()) {
      const std::string text = to_dot(load(in));
      if (out.empty()) {
        std::cout << text;
      } else {
        write_file(out, text);
        std::cout << "wrote " << out << "\n";
      }
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << in << ": " << e.what() << "\n";
    return 1;
  } catch (const InstanceError& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return 1;
  } catch (const CheckFailure& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
