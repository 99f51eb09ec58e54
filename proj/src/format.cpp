#include "jcn/format.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace jcn {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> words;
};

struct RawGraph {
  std::string name;
  std::size_t line = 0;
  WeightedMultigraph graph;
};

struct RawAnchor {
  std::size_t line = 0;
  std::vector<std::string> cycle;
  std::string vertex;
};

struct RawRotation {
  std::string graph;
  std::size_t line = 0;
  std::vector<Line> rows;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line line{number, {}};
    std::string w;
    while (words >> w) line.words.push_back(w);
    if (!line.words.empty()) out.push_back(std::move(line));
  }
  return out;
}

VertexIndex resolve(const WeightedMultigraph& g, const std::string& name, std::size_t line, const std::string& where) {
  if (!g.has_vertex(name)) throw ParseError(line, where + " references unknown vertex '" + name + "'");
  return g.vertex(name);
}

RotationSystem build_rotation(const WeightedMultigraph& g, const RawRotation& raw) {
  RotationSystem rs;
  rs.order.resize(g.vertex_count());
  std::vector<bool> listed(g.vertex_count(), false);
  for (const auto& row : raw.rows) {
    if (row.words.size() < 2 || row.words[0] != "rot") throw ParseError(row.number, "expected 'rot <v> <edge ids>'");
    VertexIndex v = resolve(g, row.words[1], row.number, "rotation");
    if (listed[v]) throw ParseError(row.number, "rotation of '" + row.words[1] + "' given twice");
    listed[v] = true;
    for (std::size_t i = 2; i < row.words.size(); ++i) {
      if (!g.has_edge(row.words[i])) throw ParseError(row.number, "rotation references unknown edge '" + row.words[i] + "'");
      EdgeIndex e = g.edge_index(row.words[i]);
      if (g.edge(e).u != v && g.edge(e).v != v) {
        throw ParseError(row.number, "edge '" + row.words[i] + "' is not incident to '" + row.words[1] + "'");
      }
      rs.order[v].push_back(e);
    }
  }
  try {
    validate_rotation(g, rs);
  } catch (const InstanceError& err) {
    throw ParseError(raw.line, err.what());
  }
  return rs;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  auto lines = tokenize(text);
  std::vector<RawGraph> graphs;
  std::vector<RawAnchor> anchors;
  bool has_anchors = false;
  std::optional<Line> boundary, partition, genus;
  std::vector<RawRotation> rotations;

  std::size_t i = 0;
  auto expect_end = [&](std::size_t opened, const std::string& what) {
    if (i >= lines.size()) throw ParseError(opened, what + " block is missing 'end'");
  };
  while (i < lines.size()) {
    const Line& head = lines[i];
    const std::string& kw = head.words[0];
    if (kw == "graph") {
      if (head.words.size() != 2) throw ParseError(head.number, "expected 'graph <name>'");
      for (const auto& g : graphs) {
        if (g.name == head.words[1]) throw ParseError(head.number, "duplicate graph name '" + head.words[1] + "'");
      }
      RawGraph g{head.words[1], head.number, {}};
      ++i;
      for (; i < lines.size() && lines[i].words[0] != "end"; ++i) {
        const Line& l = lines[i];
        try {
          if (l.words[0] == "v" && l.words.size() == 2) {
            g.graph.add_vertex(l.words[1]);
          } else if (l.words[0] == "e" && l.words.size() == 5) {
            g.graph.add_edge(l.words[1], l.words[2], l.words[3], parse_decimal(l.words[4]));
          } else {
            throw ParseError(l.number, "expected 'v <id>' or 'e <id> <u> <v> <weight>'");
          }
        } catch (const InstanceError& err) {
          throw ParseError(l.number, err.what());
        }
      }
      expect_end(head.number, "graph");
      graphs.push_back(std::move(g));
    } else if (kw == "anchors") {
      if (head.words.size() != 1) throw ParseError(head.number, "expected 'anchors'");
      if (has_anchors) throw ParseError(head.number, "second anchors block");
      has_anchors = true;
      ++i;
      for (; i < lines.size() && lines[i].words[0] != "end"; ++i) {
        const Line& l = lines[i];
        auto& w = l.words;
        if (w[0] != "face" || w.size() < 3 || w[w.size() - 2] != "vertex") {
          throw ParseError(l.number, "expected 'face <ids> vertex <id>'");
        }
        anchors.push_back({l.number, {w.begin() + 1, w.end() - 2}, w.back()});
      }
      expect_end(head.number, "anchors");
    } else if (kw == "boundary") {
      if (boundary) throw ParseError(head.number, "second boundary line");
      boundary = head;
    } else if (kw == "partition") {
      if (partition) throw ParseError(head.number, "second partition line");
      partition = head;
    } else if (kw == "genus") {
      if (genus) throw ParseError(head.number, "second genus line");
      if (head.words.size() != 2) throw ParseError(head.number, "expected 'genus <h>'");
      genus = head;
    } else if (kw == "promise-embedding") {
      if (head.words.size() != 2) throw ParseError(head.number, "expected 'promise-embedding <graph-name>'");
      RawRotation r{head.words[1], head.number, {}};
      ++i;
      for (; i < lines.size() && lines[i].words[0] != "end"; ++i) r.rows.push_back(lines[i]);
      expect_end(head.number, "promise-embedding");
      rotations.push_back(std::move(r));
    } else {
      throw ParseError(head.number, "unknown keyword '" + kw + "'");
    }
    ++i;
  }

  if (graphs.empty()) throw ParseError(1, "no graph block");
  if (graphs.size() > 2) throw ParseError(graphs[2].line, "at most two graphs per instance");
  std::map<std::string, RotationSystem> rot_by_graph;
  for (const auto& r : rotations) {
    const RawGraph* g = nullptr;
    for (const auto& cand : graphs) {
      if (cand.name == r.graph) g = &cand;
    }
    if (!g) throw ParseError(r.line, "promise embedding for unknown graph '" + r.graph + "'");
    if (rot_by_graph.count(r.graph)) throw ParseError(r.line, "second promise embedding for '" + r.graph + "'");
    rot_by_graph[r.graph] = build_rotation(g->graph, r);
  }
  auto promise = [&](const RawGraph& g) -> std::optional<RotationSystem> {
    auto it = rot_by_graph.find(g.name);
    if (it == rot_by_graph.end()) return std::nullopt;
    return it->second;
  };

  Instance result;
  if (graphs.size() == 1) {
    if (has_anchors || boundary || partition || genus) {
      throw ParseError(graphs[0].line, "a single-graph file cannot carry anchors, boundary, partition or genus");
    }
    result = GraphInstance{graphs[0].name, graphs[0].graph, promise(graphs[0])};
  } else if (genus) {
    if (has_anchors || boundary || partition) throw ParseError(genus->number, "genus line mixed with anchor data");
    SurfaceJointInstance s;
    s.name1 = graphs[0].name;
    s.name2 = graphs[1].name;
    try {
      Weight h = parse_decimal(genus->words[1]);
      if (h > 1000000) throw InstanceError("genus out of range");
      s.genus = static_cast<int>(h);
    } catch (const InstanceError& err) {
      throw ParseError(genus->number, err.what());
    }
    s.h1 = graphs[0].graph;
    s.h2 = graphs[1].graph;
    auto r1 = promise(graphs[0]), r2 = promise(graphs[1]);
    if (!r1 || !r2) throw ParseError(genus->number, "surface instance needs both embeddings");
    s.rotation1 = *r1;
    s.rotation2 = *r2;
    result = std::move(s);
  } else if (boundary || partition) {
    if (has_anchors) throw ParseError(boundary ? boundary->number : partition->number, "boundary mixed with anchors");
    if (!boundary) throw ParseError(partition->number, "partition without boundary");
    if (!partition) throw ParseError(boundary->number, "boundary without partition");
    AnchoredInstance a;
    a.name1 = graphs[0].name;
    a.name2 = graphs[1].name;
    a.g1 = graphs[0].graph;
    a.g2 = graphs[1].graph;
    for (const auto& name : a.g1.vertex_names()) {
      if (a.g2.has_vertex(name)) {
        throw ParseError(graphs[1].line, "anchored instances need disjoint vertex ids; '" + name + "' is in both graphs");
      }
    }
    for (std::size_t w = 1; w < boundary->words.size(); ++w) {
      const auto& name = boundary->words[w];
      if (a.g1.has_vertex(name)) {
        a.sigma.push_back({1, a.g1.vertex(name)});
      } else if (a.g2.has_vertex(name)) {
        a.sigma.push_back({2, a.g2.vertex(name)});
      } else {
        throw ParseError(boundary->number, "boundary references unknown vertex '" + name + "'");
      }
    }
    int group = 0;
    bool fresh = true;
    for (std::size_t w = 1; w < partition->words.size(); ++w) {
      const auto& word = partition->words[w];
      if (word == "|") {
        if (fresh) throw ParseError(partition->number, "empty partition group");
        ++group;
        fresh = true;
        if (group > 3) throw ParseError(partition->number, "more than four partition groups");
        continue;
      }
      a.partition[group].push_back(resolve(a.g2, word, partition->number, "partition"));
      fresh = false;
    }
    if (fresh || group != 3) throw ParseError(partition->number, "partition needs four nonempty groups");
    a.promise1 = promise(graphs[0]);
    a.promise2 = promise(graphs[1]);
    result = std::move(a);
  } else if (has_anchors) {
    FaJointInstance fa;
    fa.name1 = graphs[0].name;
    fa.name2 = graphs[1].name;
    fa.g1 = graphs[0].graph;
    fa.g2 = graphs[1].graph;
    for (const auto& raw : anchors) {
      FaceAnchor a;
      for (const auto& name : raw.cycle) a.cycle.push_back(resolve(fa.g1, name, raw.line, "anchor cycle"));
      a.anchor = resolve(fa.g2, raw.vertex, raw.line, "anchor");
      fa.anchors.push_back(std::move(a));
    }
    fa.promise1 = promise(graphs[0]);
    fa.promise2 = promise(graphs[1]);
    result = std::move(fa);
  } else {
    throw ParseError(graphs[1].line, "two graphs need an anchors block, a boundary and partition, or a genus line");
  }
  validate(result);
  return result;
}

namespace {

void write_graph(std::ostream& out, const std::string& name, const WeightedMultigraph& g) {
  out << "graph " << name << '\n';
  for (const auto& v : g.vertex_names()) out << "v " << v << '\n';
  for (const auto& e : g.edges()) {
    out << "e " << e.id << ' ' << g.vertex_name(e.u) << ' ' << g.vertex_name(e.v) << ' ' << e.weight << '\n';
  }
  out << "end\n";
}

void write_rotation(std::ostream& out, const std::string& name, const WeightedMultigraph& g, const RotationSystem& rs) {
  out << "promise-embedding " << name << '\n';
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    out << "rot " << g.vertex_name(v);
    for (auto e : rs.order[v]) out << ' ' << g.edge(e).id;
    out << '\n';
  }
  out << "end\n";
}

struct Writer {
  std::ostringstream out;

  void operator()(const GraphInstance& x) {
    write_graph(out, x.name, x.graph);
    if (x.rotation) write_rotation(out, x.name, x.graph, *x.rotation);
  }
  void operator()(const FaJointInstance& x) {
    write_graph(out, x.name1, x.g1);
    write_graph(out, x.name2, x.g2);
    out << "anchors\n";
    for (const auto& a : x.anchors) {
      out << "face";
      for (auto v : a.cycle) out << ' ' << x.g1.vertex_name(v);
      out << " vertex " << x.g2.vertex_name(a.anchor) << '\n';
    }
    out << "end\n";
    if (x.promise1) write_rotation(out, x.name1, x.g1, *x.promise1);
    if (x.promise2) write_rotation(out, x.name2, x.g2, *x.promise2);
  }
  void operator()(const AnchoredInstance& x) {
    write_graph(out, x.name1, x.g1);
    write_graph(out, x.name2, x.g2);
    out << "boundary";
    for (const auto& b : x.sigma) out << ' ' << (b.side == 1 ? x.g1 : x.g2).vertex_name(b.v);
    out << "\npartition";
    for (int i = 0; i < 4; ++i) {
      if (i) out << " |";
      for (auto v : x.partition[i]) out << ' ' << x.g2.vertex_name(v);
    }
    out << '\n';
    if (x.promise1) write_rotation(out, x.name1, x.g1, *x.promise1);
    if (x.promise2) write_rotation(out, x.name2, x.g2, *x.promise2);
  }
  void operator()(const SurfaceJointInstance& x) {
    write_graph(out, x.name1, x.h1);
    write_graph(out, x.name2, x.h2);
    out << "genus " << x.genus << '\n';
    write_rotation(out, x.name1, x.h1, x.rotation1);
    write_rotation(out, x.name2, x.h2, x.rotation2);
  }
};

std::string quoted(const std::string& graph, const std::string& v) { return "\"" + graph + ":" + v + "\""; }

void dot_graph(std::ostream& out, const std::string& name, const WeightedMultigraph& g) {
  out << "  subgraph cluster_" << name << " {\n";
  out << "    label=\"" << name << "\";\n";
  for (const auto& v : g.vertex_names()) out << "    " << quoted(name, v) << " [label=\"" << v << "\"];\n";
  for (const auto& e : g.edges()) {
    out << "    " << quoted(name, g.vertex_name(e.u)) << " -- " << quoted(name, g.vertex_name(e.v)) << " [label=\""
        << e.weight << "\"];\n";
  }
  out << "  }\n";
}

}  // namespace

std::string serialize(const Instance& inst) {
  Writer w;
  std::visit(w, inst);
  return w.out.str();
}

std::string to_dot(const Instance& inst) {
  std::ostringstream out;
  out << "graph instance {\n";
  std::visit(
      [&](const auto& x) {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, GraphInstance>) {
          dot_graph(out, x.name, x.graph);
        } else if constexpr (std::is_same_v<X, SurfaceJointInstance>) {
          dot_graph(out, x.name1, x.h1);
          dot_graph(out, x.name2, x.h2);
        } else {
          dot_graph(out, x.name1, x.g1);
          dot_graph(out, x.name2, x.g2);
        }
        if constexpr (std::is_same_v<X, FaJointInstance>) {
          for (std::size_t i = 0; i < x.anchors.size(); ++i) {
            const auto& a = x.anchors[i];
            out << "  subgraph cluster_anchor" << i + 1 << " {\n";
            out << "    style=dashed;\n";
            out << "    label=\"anchor " << i + 1 << "\";\n";
            for (auto v : a.cycle) out << "    " << quoted(x.name1, x.g1.vertex_name(v)) << ";\n";
            out << "    " << quoted(x.name2, x.g2.vertex_name(a.anchor)) << ";\n";
            out << "  }\n";
          }
        }
      },
      inst);
  out << "}\n";
  return out.str();
}

std::uint64_t instance_hash(const Instance& inst) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : serialize(inst)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace jcn
