#include "genelink/postprocess.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace genelink {

namespace {

bool is_role(const std::string& element) {
  return element == kRoleTheme || element == kRoleCause;
}

// Document event graph: genes and events as nodes, argument arcs as
// undirected role-labeled edges. Gene nodes are terminals; paths may only
// pass through event nodes.
struct EventGraph {
  std::vector<std::string> node_ids;
  std::vector<bool> is_event;
  std::vector<std::vector<std::pair<int, std::string>>> adj;  // (node, role)
  std::unordered_map<std::string, int> gene_index;
  std::unordered_map<std::string, int> event_index;

  int add_node(const std::string& id, bool event) {
    auto& index = event ? event_index : gene_index;
    auto it = index.find(id);
    if (it != index.end()) return it->second;
    int n = static_cast<int>(node_ids.size());
    node_ids.push_back(id);
    is_event.push_back(event);
    adj.emplace_back();
    index.emplace(id, n);
    return n;
  }

  void add_edge(int a, int b, std::string_view role) {
    adj[a].emplace_back(b, std::string(role));
    adj[b].emplace_back(a, std::string(role));
  }
};

EventGraph build_graph(const AnnotatedDocument& doc) {
  EventGraph g;
  for (const auto& gene : doc.genes) g.add_node(gene, false);
  for (const auto& e : doc.events) g.add_node(e.event_id, true);
  for (const auto& e : doc.events) {
    int u = g.event_index.at(e.event_id);
    auto connect = [&](const Argument& a, std::string_view role) {
      int v = a.kind == ArgKind::Gene ? g.gene_index.at(a.target) : g.event_index.at(a.target);
      g.add_edge(u, v, role);
    };
    for (const auto& a : e.themes) connect(a, kRoleTheme);
    for (const auto& a : e.causes) connect(a, kRoleCause);
  }
  return g;
}

// All shortest paths between two gene terminals; interior nodes are events.
// Returns the element sequences serialized from src to dst, deduplicated.
std::set<std::vector<std::string>> shortest_path_elements(
    const EventGraph& g, const std::unordered_map<std::string, std::string>& event_types,
    int src, int dst) {
  const int n = static_cast<int>(g.node_ids.size());
  std::vector<int> dist(n, -1);
  std::vector<int> queue;
  dist[src] = 0;
  queue.push_back(src);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    if (u != src && !g.is_event[u]) continue;  // genes are terminals
    for (const auto& [v, role] : g.adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  std::set<std::vector<std::string>> out;
  if (dist[dst] < 0) return out;

  // Walk backwards from dst along the BFS layering, enumerating every
  // role-labeled edge choice. `elements` accumulates in reverse order.
  std::vector<std::string> elements;
  auto expand = [&](auto&& self, int v) -> void {
    if (v == src) {
      out.insert(std::vector<std::string>(elements.rbegin(), elements.rend()));
      return;
    }
    for (const auto& [u, role] : g.adj[v]) {
      if (dist[u] != dist[v] - 1) continue;
      if (u != src && !g.is_event[u]) continue;
      elements.push_back(role);
      if (g.is_event[u]) elements.push_back(event_types.at(g.node_ids[u]));
      self(self, u);
      if (g.is_event[u]) elements.pop_back();
      elements.pop_back();
    }
  };
  expand(expand, dst);
  return out;
}

}  // namespace

std::string RawPath::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) s += ':';
    s += elements[i];
  }
  return s;
}

std::vector<SigToken> parse_signature(const std::string& signature) {
  std::vector<SigToken> tokens;
  if (signature.empty()) throw std::invalid_argument("empty signature");
  for (const auto& part : [&] {
         std::vector<std::string> parts;
         std::size_t start = 0;
         while (true) {
           std::size_t pos = signature.find(':', start);
           if (pos == std::string::npos) {
             parts.push_back(signature.substr(start));
             break;
           }
           parts.push_back(signature.substr(start, pos - start));
           start = pos + 1;
         }
         return parts;
       }()) {
    if (part.empty()) throw std::invalid_argument("empty token in signature '" + signature + "'");
    std::size_t digits = 0;
    while (digits < part.size() && std::isdigit(static_cast<unsigned char>(part[part.size() - 1 - digits])))
      ++digits;
    SigToken tok;
    tok.relation = part.substr(0, part.size() - digits);
    tok.run = digits == 0 ? 1 : std::stoi(part.substr(part.size() - digits));
    if (tok.relation.empty() || tok.run < 1)
      throw std::invalid_argument("malformed token '" + part + "'");
    for (char ch : tok.relation)
      if (!std::isalpha(static_cast<unsigned char>(ch)) && ch != '_')
        throw std::invalid_argument("malformed token '" + part + "'");
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

std::string signature_string(const std::vector<SigToken>& tokens) {
  std::string s;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) s += ':';
    s += tokens[i].relation;
    if (tokens[i].run > 1) s += std::to_string(tokens[i].run);
  }
  return s;
}

std::string decompress(const std::string& signature) {
  std::string s;
  bool first = true;
  for (const auto& tok : parse_signature(signature)) {
    for (int i = 0; i < tok.run; ++i) {
      if (!first) s += ':';
      s += tok.relation;
      first = false;
    }
  }
  return s;
}

std::vector<RawPath> rdfify(const AnnotatedDocument& doc) {
  std::vector<RawPath> out;
  if (doc.events.empty() || doc.genes.size() < 2) return out;

  EventGraph g = build_graph(doc);
  std::unordered_map<std::string, std::string> event_types;
  for (const auto& e : doc.events) event_types[e.event_id] = e.event_type;

  // Distinct genes in first-mention order; the earlier mention is the subject.
  std::vector<std::string> ordered;
  for (const auto& gene : doc.genes)
    if (std::find(ordered.begin(), ordered.end(), gene) == ordered.end()) ordered.push_back(gene);

  for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
    for (std::size_t j = i + 1; j < ordered.size(); ++j) {
      int src = g.gene_index.at(ordered[i]);
      int dst = g.gene_index.at(ordered[j]);
      for (const auto& elements : shortest_path_elements(g, event_types, src, dst)) {
        RawPath p;
        p.subject = ordered[i];
        p.object = ordered[j];
        p.elements = elements;
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

RawPath simplify(RawPath path) {
  std::erase_if(path.elements, [](const std::string& e) { return is_role(e); });
  return path;
}

std::string generalize_type(const std::string& event_type) {
  static const std::unordered_map<std::string, std::string> table = {
      {"Gene_expression", "Expression"}, {"Transcription", "Expression"},
      {"Protein_catabolism", "Catabolism"}, {"Localization", "Localization"},
      {"Binding", "Binding"}, {"Phosphorylation", "Binding"},
      {"Regulation", "Reg"}, {"Positive_regulation", "Reg"},
      {"Negative_regulation", "Reg"},
      // coarse relations are fixed points, making generalization idempotent
      {"Expression", "Expression"}, {"Catabolism", "Catabolism"}, {"Reg", "Reg"}};
  auto it = table.find(event_type);
  if (it == table.end()) throw std::invalid_argument("unknown event type '" + event_type + "'");
  return it->second;
}

RawPath generalize(RawPath path) {
  for (auto& e : path.elements) e = generalize_type(e);
  return path;
}

std::string compress(const std::string& signature) {
  std::vector<SigToken> merged;
  for (auto& tok : parse_signature(signature)) {
    if (!merged.empty() && merged.back().relation == tok.relation)
      merged.back().run += tok.run;
    else
      merged.push_back(std::move(tok));
  }
  return signature_string(merged);
}

std::string compose_signatures(const std::string& first, const std::string& second) {
  return compress(first + ":" + second);
}

std::vector<GeneTriple> extract_interactions(const AnnotatedDocument& doc) {
  std::set<GeneTriple> triples;
  for (const auto& raw : rdfify(doc)) {
    RawPath generalized = generalize(simplify(raw));
    triples.insert({generalized.subject, compress(generalized.to_string()), generalized.object});
  }
  return {triples.begin(), triples.end()};
}

std::vector<GeneTriple> join_paths(const std::vector<GeneTriple>& triples) {
  std::set<GeneTriple> out(triples.begin(), triples.end());
  std::map<std::string, std::vector<const GeneTriple*>> by_subject;
  for (const auto& t : triples) by_subject[t.subject].push_back(&t);
  for (const auto& t1 : triples) {
    auto it = by_subject.find(t1.object);
    if (it == by_subject.end()) continue;
    for (const GeneTriple* t2 : it->second) {
      if (t1.subject == t2->object) continue;
      out.insert({t1.subject, compose_signatures(t1.signature, t2->signature), t2->object});
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace genelink
