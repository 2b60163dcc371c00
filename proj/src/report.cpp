#include "formadp/report.hpp"

#include <sstream>

#include "json.hpp"

namespace formadp {

namespace {

using nlohmann::json;

std::string ids_of(const std::vector<Rule>& rules) {
  std::string out = "{";
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(rules[i].id);
  }
  return out + "}";
}

std::string ids_of(const std::vector<int>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(ids[i]);
  }
  return out + "}";
}

std::string poly_str(const std::string& name, const LinearPoly& p) {
  std::string out = name;
  if (!p.coeffs.empty()) {
    out += "(";
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
      if (i) out += ",";
      out += "x" + std::to_string(i + 1);
    }
    out += ")";
  }
  out += " = ";
  bool first = true;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (p.coeffs[i] == 0) continue;
    if (!first) out += " + ";
    first = false;
    if (p.coeffs[i] != 1) out += std::to_string(p.coeffs[i]) + "*";
    out += "x" + std::to_string(i + 1);
  }
  if (p.constant != 0 || first) {
    if (!first) out += " + ";
    out += std::to_string(p.constant);
    first = false;
  }
  return out;
}

void render_text(const ProofNode& node, int depth, std::ostringstream& out) {
  std::string pad(2 * depth, ' ');
  out << pad << "problem (" << to_string(node.problem.f1) << ", "
      << to_string(node.problem.f2) << "): pairs "
      << ids_of(node.problem.pairs) << " rules " << ids_of(node.problem.rules)
      << "\n";
  out << pad << "  " << node.processor;
  if (!node.note.empty()) out << ": " << node.note;
  out << "\n";

  if (const auto* trim = std::get_if<TrimCertificate>(&node.cert)) {
    out << pad << "  kept " << ids_of(trim->kept_rule_ids) << " removed "
        << ids_of(trim->removed_rule_ids) << "\n";
  } else if (const auto* g = std::get_if<GraphCertificate>(&node.cert)) {
    out << pad << "  components:";
    for (const std::vector<int>& comp : g->scc_pair_ids)
      out << " " << ids_of(comp);
    if (g->scc_pair_ids.empty()) out << " none";
    if (!g->removed_pair_ids.empty())
      out << "; dropped " << ids_of(g->removed_pair_ids);
    out << "\n";
  } else if (const auto* rp = std::get_if<RedPairCertificate>(&node.cert)) {
    out << pad << "  rule set: " << to_string(rp->strategy)
        << (rp->tcap ? " (capped)" : "") << "\n";
    out << pad << "  filtering: " << rp->pi.to_string(rp->constraint_sig)
        << "\n";
    for (const auto& [f, poly] : rp->interp.polys)
      out << pad << "  [" << poly_str(rp->constraint_sig.symbol_name(f), poly)
          << "]\n";
    out << pad << "  strictly oriented, removed: "
        << ids_of(rp->removed_pair_ids) << "\n";
  }

  for (const ProofNode& child : node.children)
    render_text(child, depth + 1, out);
}

json cert_json(const Certificate& cert) {
  if (const auto* trim = std::get_if<TrimCertificate>(&cert)) {
    return json{{"kind", "formative-trim"},
                {"kept", trim->kept_rule_ids},
                {"removed", trim->removed_rule_ids},
                {"downgraded_minimality", trim->downgraded_minimality},
                {"dropped_innermost", trim->dropped_innermost}};
  }
  if (const auto* g = std::get_if<GraphCertificate>(&cert)) {
    return json{{"kind", "dependency-graph"},
                {"components", g->scc_pair_ids},
                {"removed", g->removed_pair_ids}};
  }
  if (const auto* rp = std::get_if<RedPairCertificate>(&cert)) {
    json filtering = json::object();
    for (const auto& [f, regarded] : rp->pi.entries())
      filtering[rp->constraint_sig.symbol_name(f)] = regarded;
    json interp = json::object();
    for (const auto& [f, poly] : rp->interp.polys)
      interp[rp->constraint_sig.symbol_name(f)] =
          json{{"coeffs", poly.coeffs}, {"constant", poly.constant}};
    json constraints = json::array();
    for (const OrientationConstraint& c : rp->constraints.pair_cs)
      constraints.push_back(
          json{{"id", c.id},
               {"lhs", c.lhs.to_string(rp->constraint_sig)},
               {"rhs", c.rhs.to_string(rp->constraint_sig)},
               {"kind", "pair"}});
    for (const OrientationConstraint& c : rp->constraints.rule_cs)
      constraints.push_back(
          json{{"id", c.id},
               {"lhs", c.lhs.to_string(rp->constraint_sig)},
               {"rhs", c.rhs.to_string(rp->constraint_sig)},
               {"kind", "rule"}});
    return json{{"kind", "reduction-pair"},
                {"strategy", to_string(rp->strategy)},
                {"tcap", rp->tcap},
                {"filtering", filtering},
                {"interpretation", interp},
                {"removed", rp->removed_pair_ids},
                {"constraints", constraints},
                {"notes", rp->notes}};
  }
  return json();
}

json node_json(const ProofNode& node) {
  std::vector<int> pair_ids, rule_ids;
  for (const Rule& p : node.problem.pairs) pair_ids.push_back(p.id);
  for (const Rule& r : node.problem.rules) rule_ids.push_back(r.id);
  json j{{"pairs", pair_ids},
         {"rules", rule_ids},
         {"minimality", to_string(node.problem.f1)},
         {"strategy_flag", to_string(node.problem.f2)},
         {"processor", node.processor}};
  if (!node.note.empty()) j["note"] = node.note;
  json cert = cert_json(node.cert);
  if (!cert.is_null()) j["certificate"] = cert;
  if (!node.children.empty()) {
    json kids = json::array();
    for (const ProofNode& child : node.children)
      kids.push_back(node_json(child));
    j["children"] = kids;
  }
  return j;
}

}  // namespace

std::string proof_text(const ProveResult& result) {
  std::ostringstream out;
  for (const std::string& note : result.notes) out << note << "\n";
  render_text(result.root, 0, out);
  return out.str();
}

std::string proof_json(const ProveResult& result) {
  json j{{"verdict", to_string(result.verdict)},
         {"notes", result.notes},
         {"nodes", result.nodes},
         {"elapsed_secs", result.elapsed_secs},
         {"proof", node_json(result.root)}};
  return j.dump(2);
}

}  // namespace formadp
