// Command-line front end: parses polynomial expressions, dispatches to the
// decision procedures, and emits versioned JSON verdicts with replayable
// seeds.  Exit codes: 0 affirmative/proved, 1 negative/refuted,
// 2 inconclusive, 3 input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freelocus/containment.hpp"
#include "freelocus/hermitian.hpp"
#include "freelocus/jsonio.hpp"
#include "freelocus/linearize.hpp"
#include "freelocus/oracle.hpp"
#include "freelocus/parse.hpp"
#include "freelocus/slack.hpp"
#include "freelocus/structure.hpp"

using namespace freelocus;

namespace {

struct Options {
  std::uint64_t seed = 1;
  std::size_t max_size = 4;
  std::size_t trials = 20;
  std::uint64_t prime = kDefaultPrime;
  bool certified = false;
  bool text = false;
  bool json = false;  // accepted for symmetry; JSON is the default
};

SearchBudget budget_of(const Options& o) {
  SearchBudget b;
  b.n_max = o.max_size;
  b.trials = o.trials;
  b.bound = 10;
  return b;
}

ContainConfig contain_config(const Options& o) {
  ContainConfig c;
  c.budget = budget_of(o);
  c.certified = o.certified;
  c.seed = o.seed;
  return c;
}

Json base_body(const Options& o, const std::string& command) {
  Json j;
  j["schema"] = "freelocus/1";
  j["command"] = command;
  j["seed"] = o.seed;
  j["config"] = Json{{"max_size", o.max_size},
                     {"trials", o.trials},
                     {"prime", o.prime},
                     {"certified", o.certified}};
  return j;
}

void emit(const Options& o, const Json& body, const std::string& text_line) {
  if (o.text)
    std::cout << text_line << "\n";
  else
    std::cout << body.dump(2) << "\n";
}

int containment_exit(Containment s) {
  switch (s) {
    case Containment::Proved: return 0;
    case Containment::Refuted: return 1;
    default: return 2;
  }
}

int tri_exit(Tri t) {
  switch (t) {
    case Tri::Yes: return 0;
    case Tri::No: return 1;
    default: return 2;
  }
}

LinearPencil parse_pencil(const MatrixPoly& p) {
  if (p.degree() > 1)
    throw SyntaxError("a linear pencil (degree <= 1) is required", 0);
  return LinearPencil::from_poly(p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact decision procedures for noncommutative matrix polynomials"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--seed", opt.seed, "RNG seed (verdicts embed it)");
  app.add_option("--max-size", opt.max_size, "largest sampled matrix size");
  app.add_option("--trials", opt.trials, "samples per size");
  app.add_option("--prime", opt.prime, "prime for the mod-p backend (3 mod 4)");
  app.add_flag("--certified", opt.certified, "prefer certified containment routes");
  app.add_flag("--text", opt.text, "human-readable one-line output");
  app.add_flag("--json", opt.json, "JSON output (default)");

  std::string arg_f, arg_g;
  std::vector<std::string> arg_at;
  bool flag_free = false;
  std::size_t probe_size = 2;

  auto* c_full = app.add_subcommand("full", "fullness test");
  c_full->add_option("f", arg_f)->required();
  auto* c_unit = app.add_subcommand("unit", "invertibility test");
  c_unit->add_option("f", arg_f)->required();
  auto* c_atom = app.add_subcommand("atom", "atomicity test");
  c_atom->add_option("f", arg_f)->required();
  auto* c_blocks = app.add_subcommand("blocks", "atomic block decomposition");
  c_blocks->add_option("f", arg_f)->required();
  auto* c_lin = app.add_subcommand("linearize", "Higman linearization + minimization");
  c_lin->add_option("f", arg_f)->required();
  auto* c_equiv = app.add_subcommand("equiv", "pencil equivalence M = P L Q");
  c_equiv->add_option("L", arg_f)->required();
  c_equiv->add_option("M", arg_g)->required();
  auto* c_sa = app.add_subcommand("stable-assoc", "stable associativity of atoms");
  c_sa->add_option("f", arg_f)->required();
  c_sa->add_option("g", arg_g)->required();
  auto* c_contain = app.add_subcommand("contain", "free locus containment");
  c_contain->add_option("f", arg_f)->required();
  c_contain->add_option("hpoly", arg_g)->required();
  auto* c_cra = app.add_subcommand("contain-real-analytic", "real locus containment, analytic f");
  c_cra->add_option("f", arg_f)->required();
  c_cra->add_option("hpoly", arg_g)->required();
  auto* c_crh = app.add_subcommand("contain-real-hermitian",
                                   "real locus containment, unsignatured hermitian f");
  c_crh->add_option("f", arg_f)->required();
  c_crh->add_option("hpoly", arg_g)->required();
  auto* c_gl = app.add_subcommand("gleich", "linear Gleichstellensatz, analytic L");
  c_gl->add_option("L", arg_f)->required();
  c_gl->add_option("M", arg_g)->required();
  auto* c_glh = app.add_subcommand("gleich-hermitian", "hermitian linear Gleichstellensatz");
  c_glh->add_option("L", arg_f)->required();
  c_glh->add_option("M", arg_g)->required();
  auto* c_sig = app.add_subcommand("signature", "hermitian signature of a constant matrix");
  c_sig->add_option("H", arg_f)->required();
  auto* c_uns = app.add_subcommand("unsignatured", "unsignatured witness search");
  c_uns->add_option("f", arg_f)->required();
  auto* c_sred = app.add_subcommand("slack-reduce", "normal form modulo (f - y'y)");
  c_sred->add_option("hpoly", arg_f)->required();
  c_sred->add_option("f", arg_g)->required();
  auto* c_smem = app.add_subcommand("slack-member", "membership in (f - y'y)");
  c_smem->add_option("hpoly", arg_f)->required();
  c_smem->add_option("f", arg_g)->required();
  auto* c_psatz = app.add_subcommand("psatz-verify", "verify a Positivstellensatz certificate");
  c_psatz->add_option("certificate", arg_f, "inline JSON or a file path")->required();
  auto* c_eval = app.add_subcommand("eval", "evaluate at a matrix tuple");
  c_eval->add_option("f", arg_f)->required();
  c_eval->add_option("--at", arg_at, "matrix literal per variable, in order")
      ->required()
      ->allow_extra_args(false);
  c_eval->add_flag("--free", flag_free, "treat starred letters as independent entries");
  auto* c_probe = app.add_subcommand("probe-real", "real line probe for hermitian f");
  c_probe->add_option("f", arg_f)->required();
  c_probe->add_option("hpoly", arg_g)->required();
  c_probe->add_option("--size", probe_size, "matrix size for the probe lines");

  // global flags remain valid after the subcommand name
  for (CLI::App* sc : {c_full, c_unit, c_atom, c_blocks, c_lin, c_equiv, c_sa,
                       c_contain, c_cra, c_crh, c_gl, c_glh, c_sig, c_uns, c_sred,
                       c_smem, c_psatz, c_eval, c_probe})
    sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (opt.prime != kDefaultPrime &&
        (!is_probable_prime(opt.prime) || opt.prime % 4 != 3))
      throw std::invalid_argument("--prime must be a prime congruent to 3 mod 4");
    SearchBudget b = budget_of(opt);

    if (c_full->parsed()) {
      MatrixPoly f = parse_poly(arg_f);
      Json j = base_body(opt, "full");
      FullnessVerdict v = fullness_test(f, b, opt.seed, opt.prime);
      j["verdict"] = v.full ? "full" : (f.is_zero() ? "not-full" : "probably-not-full");
      j["note"] = v.note;
      if (v.witness) {
        j["witness"] = to_json(*v.witness);
        j["witness_det"] = to_string(v.witness_det);
      } else {
        j["failure_bound"] = v.failure_bound;
      }
      emit(opt, j, std::string("full: ") + j["verdict"].get<std::string>());
      return v.full ? 0 : (f.is_zero() ? 1 : 2);
    }
    if (c_unit->parsed()) {
      MatrixPoly f = parse_poly(arg_f);
      Json j = base_body(opt, "unit");
      UnitVerdict v = unit_test(f, b, opt.seed);
      j["verdict"] = v.probably_unit ? "probably-unit" : "not-unit";
      j["note"] = v.note;
      if (v.line_witness) {
        j["line"] = to_json(*v.line_witness);
        j["det_along_line"] = to_json(*v.line_poly);
      }
      if (v.point_witness) j["point"] = to_json(*v.point_witness);
      emit(opt, j, std::string("unit: ") + j["verdict"].get<std::string>());
      return v.probably_unit ? 2 : 1;
    }
    if (c_atom->parsed()) {
      MatrixPoly f = parse_poly(arg_f);
      Json j = base_body(opt, "atom");
      AtomVerdict v = is_atom(f, b, opt.seed);
      j["verdict"] = v.status == Tri::Yes ? "atom"
                    : v.status == Tri::No ? "not-atom"
                                          : "inconclusive";
      j["reason"] = v.reason;
      if (v.cert) {
        j["certificate"] = Json{{"base_point", to_json(v.cert->base_point)},
                                {"pencil_size", v.cert->pencil.d},
                                {"closure_dim", v.cert->closure_dim}};
      }
      emit(opt, j, std::string("atom: ") + j["verdict"].get<std::string>());
      return tri_exit(v.status);
    }
    if (c_blocks->parsed()) {
      MatrixPoly f = parse_poly(arg_f);
      Json j = base_body(opt, "blocks");
      AtomicDecomposition d = atomic_blocks(f, b, opt.seed);
      j["decomposition"] = to_json(d);
      emit(opt, j, "blocks: " + std::to_string(d.leaves.size()) + " leaves, " +
                       std::to_string(d.classes.size()) + " classes");
      return d.complete ? 0 : 2;
    }
    if (c_lin->parsed()) {
      MatrixPoly f = parse_poly(arg_f);
      Json j = base_body(opt, "linearize");
      LinearizationResult raw = linearize(f);
      LinearizationResult epic = minimize(raw.pencil, raw.alpha);
      epic.padding_rows = raw.padding_rows;
      j["higman"] = to_json(raw);
      j["epic"] = to_json(epic);
      emit(opt, j, "linearize: size " + std::to_string(raw.pencil.d) + " -> epic size " +
                       std::to_string(epic.pencil.d));
      return 0;
    }
    if (c_equiv->parsed()) {
      auto polys = parse_polys({arg_f, arg_g});
      LinearPencil l = parse_pencil(polys[0]), m = parse_pencil(polys[1]);
      Json j = base_body(opt, "equiv");
      auto w = pencil_equiv(l, m, opt.seed);
      j["verdict"] = w ? "equivalent" : "no-witness";
      if (w) j["witness"] = to_json(*w);
      emit(opt, j, std::string("equiv: ") + j["verdict"].get<std::string>());
      return w ? 0 : 1;
    }
    if (c_sa->parsed()) {
      auto polys = parse_polys({arg_f, arg_g});
      Json j = base_body(opt, "stable-assoc");
      AtomVerdict af = is_atom(polys[0], b, opt.seed);
      AtomVerdict ag = is_atom(polys[1], b, opt.seed ^ 0x5e5e5e5eu);
      if (af.status != Tri::Yes || ag.status != Tri::Yes) {
        j["error"] = "inputs must be certified atoms";
        j["f_atom"] = af.reason;
        j["g_atom"] = ag.reason;
        emit(opt, j, "stable-assoc: inputs must be atoms");
        return 3;
      }
      StableAssocResult r = stable_assoc(polys[0], polys[1], b, opt.seed);
      j["verdict"] = r.status == Tri::Yes ? "stably-associated"
                    : r.status == Tri::No ? "not-stably-associated"
                                          : "inconclusive";
      j["note"] = r.note;
      if (r.witness) j["witness"] = to_json(*r.witness);
      if (r.base_point) j["base_point"] = to_json(*r.base_point);
      emit(opt, j, std::string("stable-assoc: ") + j["verdict"].get<std::string>());
      return tri_exit(r.status);
    }
    if (c_contain->parsed()) {
      auto polys = parse_polys({arg_f, arg_g});
      Json j = base_body(opt, "contain");
      ContainmentVerdict v = locus_contains(polys[0], polys[1], contain_config(opt));
      j["verdict"] = to_json(v);
      emit(opt, j, std::string("contain: ") + j["verdict"]["status"].get<std::string>());
      return containment_exit(v.status);
    }
    if (c_cra->parsed()) {
      auto polys = parse_polys({arg_f, arg_g});
      Json j = base_body(opt, "contain-real-analytic");
      ContainConfig cfg = contain_config(opt);
      cfg.certified = true;
      RealContainmentVerdict v = real_containment_analytic(polys[0], polys[1], cfg);
      j["verdict"] = v.status == Containment::Proved ? "proved"
                    : v.status == Containment::Refuted ? "refuted"
                                                        : "consistent-up-to-budget";
      j["route"] = v.route == RealRoute::ViaF ? "f"
                  : v.route == RealRoute::ViaFStar ? "f*"
                                                   : "none";
      j["note"] = v.note;
      if (v.real_witness) j["real_witness"] = to_json(*v.real_witness);
      emit(opt, j, std::string("contain-real-analytic: ") + j["verdict"].get<std::string>() +
                       " via " + j["route"].get<std::string>());
      return containment_exit(v.status);
    }
    if (c_crh->parsed()) {
      auto polys = parse_polys({arg_f, arg_g});
      Json j = base_body(opt, "contain-real-hermitian");
      UnsignaturedResult uw = unsignatured_search(polys[0], b, opt.seed ^ 0x1234u);
      if (!uw.witness) {
        j["verdict"] = "no-unsignatured-witness";
        j["note"] = "hermitian theorem inapplicable without an unsignatured witness; "
                    "reporting the Monte-Carlo real-locus check instead";
        RealProbeResult probe = real_line_probe(polys[0], polys[1], opt.max_size,
                                                opt.trials, 4, opt.seed);
        j["monte_carlo_probe"] = to_json(probe);
        emit(opt, j, "contain-real-hermitian: no unsignatured witness (fallback reported)");
        return 2;
      }
      ContainConfig cfg = contain_config(opt);
      cfg.certified = true;
      RealContainmentVerdict v =
          real_containment_hermitian(polys[0], polys[1], *uw.witness, cfg);
      j["witness_used"] = to_json(*uw.witness);
      j["verdict"] = v.status == Containment::Proved ? "proved"
                    : v.status == Containment::Refuted ? "refuted"
                                                        : "consistent-up-to-budget";
      j["note"] = v.note;
      if (v.real_witness) j["real_witness"] = to_json(*v.real_witness);
      emit(opt, j, std::string("contain-real-hermitian: ") + j["verdict"].get<std::string>());
      return containment_exit(v.status);
    }
    if (c_gl->parsed()) {
      auto polys = parse_polys({arg_f, arg_g});
      LinearPencil l = parse_pencil(polys[0]), m = parse_pencil(polys[1]);
      Json j = base_body(opt, "gleich");
      auto w = gleichstellensatz_analytic(l, m, opt.seed);
      j["verdict"] = w ? "equivalent" : "no-witness";
      if (w) {
        j["via"] = w->via_adjoint ? "L*" : "L";
        j["witness"] = to_json(w->w);
      }
      emit(opt, j, std::string("gleich: ") + j["verdict"].get<std::string>());
      return w ? 0 : 1;
    }
    if (c_glh->parsed()) {
      auto polys = parse_polys({arg_f, arg_g});
      LinearPencil l = parse_pencil(polys[0]), m = parse_pencil(polys[1]);
      Json j = base_body(opt, "gleich-hermitian");
      UnsignaturedResult uw = unsignatured_search(l.to_poly(), b, opt.seed ^ 0x4321u);
      if (!uw.witness) {
        j["verdict"] = "no-unsignatured-witness";
        j["note"] = uw.note;
        emit(opt, j, "gleich-hermitian: no unsignatured witness");
        return 2;
      }
      auto w = gleichstellensatz_hermitian(l, m, *uw.witness, opt.seed);
      j["verdict"] = w ? "congruent" : "no-witness";
      if (w) {
        j["sign"] = w->sign;
        j["p"] = to_json(w->p);
      }
      emit(opt, j, std::string("gleich-hermitian: ") + j["verdict"].get<std::string>());
      return w ? 0 : 1;
    }
    if (c_sig->parsed()) {
      MatrixPoly h = parse_poly(arg_f);
      if (!h.is_constant()) throw SyntaxError("signature expects a constant matrix", 0);
      Json j = base_body(opt, "signature");
      Signature s = hermitian_signature(h.constant_term());
      j["signature"] = to_json(s);
      emit(opt, j, "signature: (" + std::to_string(s.pos) + "," + std::to_string(s.neg) +
                       "," + std::to_string(s.zero) + ")");
      return 0;
    }
    if (c_uns->parsed()) {
      MatrixPoly f = parse_poly(arg_f);
      Json j = base_body(opt, "unsignatured");
      UnsignaturedResult r = unsignatured_search(f, b, opt.seed);
      j["verdict"] = r.status == UnsignaturedStatus::WitnessFound ? "unsignatured"
                    : r.status == UnsignaturedStatus::KnownByMonicPencil
                        ? "unsignatured-by-monic-pencil"
                        : "unknown";
      j["note"] = r.note;
      j["samples"] = r.samples;
      if (r.witness) j["witness"] = to_json(*r.witness);
      Json obs = Json::array();
      for (const auto& [n, sig] : r.observed)
        obs.push_back(Json{{"size", n}, {"signature", to_json(sig)}});
      j["observed_signatures"] = std::move(obs);
      emit(opt, j, std::string("unsignatured: ") + j["verdict"].get<std::string>());
      return r.status == UnsignaturedStatus::Unknown ? 2 : 0;
    }
    if (c_sred->parsed()) {
      auto polys = parse_polys({arg_f, arg_g});
      Json j = base_body(opt, "slack-reduce");
      MatrixPoly nf = slack_reduce(polys[0], polys[1]);
      j["normal_form"] = print_poly(nf);
      emit(opt, j, "slack-reduce: " + print_poly(nf));
      return 0;
    }
    if (c_smem->parsed()) {
      auto polys = parse_polys({arg_f, arg_g});
      Json j = base_body(opt, "slack-member");
      MembershipVerdict v = is_member(polys[0], polys[1]);
      j["verdict"] = v.member ? "member" : "not-member";
      if (!v.member) j["normal_form"] = print_poly(v.normal_form);
      emit(opt, j, std::string("slack-member: ") + j["verdict"].get<std::string>());
      return v.member ? 0 : 1;
    }
    if (c_psatz->parsed()) {
      std::string text = arg_f;
      if (!text.empty() && text[0] != '{') {
        std::ifstream in(text);
        if (!in) throw std::invalid_argument("cannot open certificate file: " + text);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
      }
      MatrixPoly f, h;
      PsatzCertificate cert;
      parse_psatz_json(text, f, h, cert);
      Json j = base_body(opt, "psatz-verify");
      PsatzResult r = verify_psatz(h, f, cert, b, opt.seed);
      j["verdict"] = r.accepted ? "accept" : "reject";
      j["note"] = r.note;
      if (!r.accepted) j["residual"] = print_poly(r.residual_normal_form);
      if (r.accepted) {
        j["spot_check"] = Json{{"samples", r.spot_samples},
                               {"min_eigenvalue", r.spot_min_eig},
                               {"ok", r.spot_check_ok}};
      }
      emit(opt, j, std::string("psatz-verify: ") + j["verdict"].get<std::string>());
      return r.accepted ? 0 : 1;
    }
    if (c_eval->parsed()) {
      MatrixPoly f = parse_poly(arg_f);
      std::vector<Mat<Scalar>> mats;
      for (const auto& s : arg_at) {
        MatrixPoly m = parse_poly(s);
        if (!m.is_constant()) throw SyntaxError("--at expects constant matrices", 0);
        mats.push_back(m.constant_term());
      }
      MatrixTuple X = flag_free ? MatrixTuple::free_tuple(mats) : MatrixTuple::star(mats);
      Json j = base_body(opt, "eval");
      Mat<Scalar> v = evaluate(f, X);
      j["value"] = to_json(v);
      Scalar d = v.is_square() ? det(v) : Scalar(0);
      if (v.is_square()) j["det"] = to_string(d);
      emit(opt, j, "eval: det = " + to_string(d));
      return 0;
    }
    if (c_probe->parsed()) {
      auto polys = parse_polys({arg_f, arg_g});
      Json j = base_body(opt, "probe-real");
      RealProbeResult r = real_line_probe(polys[0], polys[1], probe_size, opt.trials, 4,
                                          opt.seed);
      j["verdict"] = r.refuted ? "refuted" : "consistent";
      j["probe"] = to_json(r);
      emit(opt, j, std::string("probe-real: ") + j["verdict"].get<std::string>());
      return r.refuted ? 1 : 2;
    }
    std::cerr << "no subcommand selected\n";
    return 3;
  } catch (const std::exception& ex) {
    Json j;
    j["schema"] = "freelocus/1";
    j["error"] = ex.what();
    if (opt.text)
      std::cerr << "error: " << ex.what() << "\n";
    else
      std::cout << j.dump(2) << "\n";
    return 3;
  }
}
