#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "freelocus/containment.hpp"
#include "freelocus/hermitian.hpp"
#include "freelocus/linearize.hpp"
#include "freelocus/parse.hpp"
#include "freelocus/slack.hpp"

namespace freelocus {

using Json = nlohmann::ordered_json;

inline Json to_json(const Scalar& s) { return to_string(s); }

inline Scalar scalar_from_string(const std::string& text) {
  MatrixPoly p = parse_poly(text);
  if (!p.is_constant() || p.rows() != 1) throw SyntaxError("scalar expected", 0);
  return p.constant_term()(0, 0);
}

inline Json to_json(const Mat<Scalar>& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();  // row-major
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) entries.push_back(to_string(m(i, k)));
  j["entries"] = std::move(entries);
  return j;
}

inline Json to_json(const Signature& s) {
  return Json{{"pos", s.pos}, {"neg", s.neg}, {"zero", s.zero}};
}

inline Json to_json(const LinearPencil& l) {
  // array of coefficient matrices A0, A1, ..., row-major entries
  Json coeffs = Json::array();
  coeffs.push_back(to_json(l.a0));
  for (const auto& a : l.a) coeffs.push_back(to_json(a));
  Json j;
  j["size"] = l.d;
  j["variables"] = l.var_count();
  j["epic"] = l.is_epic();
  j["monic"] = l.is_monic();
  j["coefficients"] = std::move(coeffs);
  return j;
}

inline Json to_json(const MatrixTuple& t) {
  Json mats = Json::array();
  for (const auto& m : t.mats) mats.push_back(to_json(m));
  Json j;
  j["mode"] = t.mode == EvalMode::Star ? "star" : "free";
  j["size"] = t.n;
  j["matrices"] = std::move(mats);
  return j;
}

template <class K>
inline Json to_json(const UniPoly<K>& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_string(Scalar(c)));
  return Json{{"degree", p.degree()}, {"ascending_coefficients", std::move(coeffs)}};
}

inline Json to_json(const AffineLine& l) {
  return Json{{"base", to_json(l.base)}, {"direction", to_json(l.direction)}};
}

inline Json to_json(const EquivalenceWitness& w) {
  return Json{{"p", to_json(w.p)},
              {"q", to_json(w.q)},
              {"solution_dim", w.solution_dim}};
}

inline Json to_json(const LinearizationResult& r) {
  return Json{{"pencil", to_json(r.pencil)},
              {"alpha", to_string(r.alpha)},
              {"higman_padding", r.padding_rows},
              {"stripped", r.stripped}};
}

inline Json to_json(const RefutationWitness& w) {
  Json j;
  j["size"] = w.size;
  if (w.point) j["point"] = to_json(*w.point);
  if (w.line) j["line"] = to_json(*w.line);
  if (w.factor) j["offending_factor"] = to_json(*w.factor);
  return j;
}

inline Json to_json(const AtomicDecomposition& d) {
  Json leaves = Json::array();
  for (const auto& l : d.leaves) leaves.push_back(to_json(l));
  Json classes = Json::array();
  for (const auto& [rep, mult] : d.classes)
    classes.push_back(Json{{"block", to_json(rep)}, {"multiplicity", mult}});
  Json j;
  j["base_point"] = to_json(d.base_point);
  j["alpha"] = to_string(d.alpha);
  j["complete"] = d.complete;
  j["blocks"] = std::move(classes);
  j["leaves"] = std::move(leaves);
  if (!d.undecomposed.empty()) j["undecomposed_leaves"] = d.undecomposed;
  return j;
}

inline Json to_json(const ContainmentVerdict& v) {
  Json j;
  switch (v.status) {
    case Containment::Proved: j["status"] = "proved"; break;
    case Containment::Refuted: j["status"] = "refuted"; break;
    case Containment::ConsistentUpTo: j["status"] = "consistent-up-to-budget"; break;
  }
  j["note"] = v.note;
  j["via_certified"] = v.via_certified;
  if (v.refutation) j["witness"] = to_json(*v.refutation);
  if (!v.certificate.empty()) {
    Json cert = Json::array();
    for (const auto& m : v.certificate)
      cert.push_back(Json{{"f_block", m.f_class},
                          {"h_block", m.h_class},
                          {"equivalence", to_json(m.witness)}});
    j["certificate"] = std::move(cert);
  }
  if (v.status == Containment::ConsistentUpTo) j["failure_bound"] = v.failure_bound;
  return j;
}

inline Json to_json(const UnsignaturedWitness& w) {
  return Json{{"size", w.n},
              {"x", to_json(w.x)},
              {"y", to_json(w.y)},
              {"sig_x", to_json(w.sig_x)},
              {"sig_y", to_json(w.sig_y)}};
}

inline Json to_json(const RealProbeResult& r) {
  Json j;
  j["refuted"] = r.refuted;
  j["note"] = r.note;
  if (r.line) j["line"] = to_json(*r.line);
  if (r.obstruction) j["obstruction"] = to_json(*r.obstruction);
  if (r.interval)
    j["isolating_interval"] = Json::array({rat_str(r.interval->first),
                                           rat_str(r.interval->second)});
  return j;
}

/// Certificate files: {"f": "...", "fj": ["...", ...], "h": "..."}.
inline void parse_psatz_json(const std::string& text, MatrixPoly& f, MatrixPoly& h,
                             PsatzCertificate& cert) {
  Json j = Json::parse(text);
  if (!j.contains("f") || !j.contains("h") || !j.contains("fj"))
    throw MalformedCertificate("certificate must contain f, h and fj");
  std::vector<std::string> texts{j["f"].get<std::string>(), j["h"].get<std::string>()};
  for (const auto& e : j["fj"]) texts.push_back(e.get<std::string>());
  std::vector<MatrixPoly> polys = parse_polys(texts);
  f = polys[0];
  h = polys[1];
  cert.fj.assign(polys.begin() + 2, polys.end());
}

}  // namespace freelocus
