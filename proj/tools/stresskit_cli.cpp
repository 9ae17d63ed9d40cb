#include <CLI11.hpp>
#include <json.hpp>

#include "stresskit/document.hpp"
#include "stresskit/lp.hpp"
#include "stresskit/trace.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace stresskit;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitAmbiguous = 4;

struct Common {
  std::string input;
  std::string mode = "exact";
  double tol = 1e-9;
  uint64_t seed = 0;
  std::string output;
};

void add_common(CLI::App* cmd, Common& c, bool needs_input = true) {
  auto* in = cmd->add_option("--input", c.input, "input complex document");
  if (needs_input) in->required();
  cmd->add_option("--mode", c.mode, "exact|float")->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--tol", c.tol, "floating tolerance");
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--output", c.output, "result document path");
}

NumberMode mode_of(const Common& c) {
  return c.mode == "exact" ? NumberMode::Exact : NumberMode::Floating;
}

double effective_tol(const Common& c) {
  if (const char* env = std::getenv("STRESSKIT_TOL")) return std::atof(env);
  return c.tol;
}

Instantiated load_input(const Common& c) {
  ComplexDocument doc = load_document(c.input);
  return instantiate(doc, mode_of(c), effective_tol(c));
}

void emit(const Common& c, const json& result) {
  if (!c.output.empty()) {
    std::ofstream out(c.output + ".tmp");
    out << result.dump(2) << "\n";
    out.close();
    std::rename((c.output + ".tmp").c_str(), c.output.c_str());
  }
}

StressAssignment pick_stress(const ComplexDocument& doc, const std::string& name) {
  auto it = doc.stresses.find(name);
  if (it == doc.stresses.end())
    throw ComplexError("no stress named '" + name + "' in the document");
  return it->second;
}

json fvector_json(const FVector& f) {
  json arr = json::array();
  for (int k = 0; k <= f.top_dim(); ++k) arr.push_back(f[k]);
  return arr;
}

int cmd_check(const Common& c) {
  auto [K, R] = load_input(c);
  json rep;
  rep["dimension"] = K.dim();
  rep["f_vector"] = fvector_json(f_vector(K));
  rep["simplicial"] = K.simplicial();
  rep["closed"] = K.closed();

  auto flat = validate_flatness(K, R);
  rep["flat"] = flat.ok;
  auto defect = manifold_defect(K);
  rep["manifold"] = !defect.has_value();
  if (defect) rep["manifold_defect"] = *defect;
  auto O = orient(K);
  rep["orientable"] = O.has_value();
  json h = json::array();
  for (int k = 0; k <= K.dim(); ++k) h.push_back(homology_rank_mod2(K, k));
  rep["homology_mod2"] = h;

  emit(c, rep);
  std::cout << "dim " << K.dim() << (K.simplicial() ? ", simplicial" : "")
            << (K.closed() ? ", closed" : ", with boundary")
            << (flat.ok ? ", flat" : ", NON-FLAT CELLS")
            << (defect ? ", NOT a homology manifold" : ", homology manifold")
            << (O ? ", orientable" : ", non-orientable") << "\n";
  if (!flat.ok || defect) return kExitValidation;
  return 0;
}

int cmd_fvector(const Common& c, int ambient) {
  auto inst = load_input(c);
  FVector f = f_vector(inst.K);
  json rep;
  rep["f_vector"] = fvector_json(f);
  json g = json::array(), h = json::array();
  for (int k = 0; k <= inst.K.dim() + 1; ++k) {
    g.push_back(g_number(f, k, ambient));
    h.push_back(h_number(f, k, ambient));
  }
  rep["g"] = g;
  rep["h"] = h;
  rep["euler"] = euler_characteristic(f);
  emit(c, rep);
  std::cout << "f = (";
  for (int k = 0; k <= f.top_dim(); ++k) std::cout << (k ? ", " : "") << f[k];
  std::cout << "), chi = " << euler_characteristic(f) << "\n";
  return 0;
}

int cmd_dim(const Common& c, int k) {
  auto [K, R] = load_input(c);
  StressBasis b = stress_basis(K, R, k);
  json rep;
  rep["k"] = k;
  rep["dimension"] = b.basis.size();
  rep["spectral_gap"] = b.spectral_gap;
  rep["ambiguous"] = b.ambiguous;
  emit(c, rep);
  std::cout << "dim Stress_" << k << " = " << b.basis.size() << "\n";
  if (R.mode == NumberMode::Floating && b.ambiguous) return kExitAmbiguous;
  return 0;
}

int cmd_basis(const Common& c, int k) {
  auto [K, R] = load_input(c);
  StressBasis b = stress_basis(K, R, k);
  ComplexDocument doc = make_document(K, R);
  for (size_t i = 0; i < b.basis.size(); ++i)
    doc.stresses["basis_" + std::to_string(i)] = b.basis[i];
  if (!c.output.empty()) save_document(c.output, doc);
  std::cout << "dim Stress_" << k << " = " << b.basis.size()
            << (c.output.empty() ? " (no --output given)" : ", basis written") << "\n";
  if (R.mode == NumberMode::Floating && b.ambiguous) return kExitAmbiguous;
  return 0;
}

int cmd_verify(const Common& c, int k, const std::string& name) {
  ComplexDocument doc = load_document(c.input);
  auto inst = instantiate(doc, mode_of(c), effective_tol(c));
  StressAssignment s = pick_stress(doc, name);
  if (s.level != k) throw ComplexError("stress level does not match --k");
  VerifyReport rep = verify_stress(s, inst.K, inst.R);
  json out;
  out["max_relative_residual"] = rep.max_relative_residual;
  out["exact_zero"] = rep.exact_zero;
  emit(c, out);
  std::cout << "max relative residual " << rep.max_relative_residual
            << (rep.exact_zero ? " (exactly zero)" : "") << "\n";
  return rep.max_relative_residual <= effective_tol(c) ? 0 : 1;
}

int cmd_reciprocal(const Common& c, const std::string& name, const std::string& geometry) {
  ComplexDocument doc = load_document(c.input);
  auto inst = instantiate(doc, mode_of(c), effective_tol(c));
  StressAssignment s = pick_stress(doc, name);
  auto O = orient(inst.K);
  if (!O) throw ComplexError("complex is not orientable");
  auto rr = build_reciprocal(s, inst.K, inst.R, *O);
  if (rr.status != ReciprocalStatus::Ok) {
    std::cout << "reciprocal failed: " << rr.message << "\n";
    return kExitValidation;
  }
  json rep;
  rep["cells"] = rr.rec.cells;
  json pts = json::array();
  for (const auto& p : rr.rec.points) pts.push_back(p);
  rep["points"] = pts;
  rep["max_closure_residual"] = rr.rec.max_closure_residual;
  int proper = 0, improper = 0, degenerate = 0;
  for (const auto& e : rr.rec.edges)
    (e.label == EdgeLabel::Proper ? proper
     : e.label == EdgeLabel::Improper ? improper : degenerate)++;
  rep["proper_edges"] = proper;
  rep["improper_edges"] = improper;
  rep["degenerate_edges"] = degenerate;
  emit(c, rep);
  if (!geometry.empty()) {
    std::vector<std::pair<int, int>> segs;
    for (const auto& e : rr.rec.edges)
      segs.push_back({rr.rec.index_of[size_t(e.from_cell)],
                      rr.rec.index_of[size_t(e.to_cell)]});
    save_polyline(geometry, rr.rec.points, segs);
  }
  std::cout << rr.rec.points.size() << " points, " << proper << " proper / "
            << improper << " improper / " << degenerate
            << " degenerate edges, closure residual "
            << rr.rec.max_closure_residual << "\n";
  return 0;
}

int cmd_trace(const Common& c, int k, const std::string& name, const std::string& geometry) {
  ComplexDocument doc = load_document(c.input);
  auto inst = instantiate(doc, mode_of(c), effective_tol(c));
  StressAssignment s = pick_stress(doc, name);
  auto O = orient(inst.K);
  if (!O) throw ComplexError("complex is not orientable");
  TraceResult t = trace(s, inst.K, inst.R, *O, k);
  json rep;
  rep["k"] = k;
  rep["weighted"] = t.stress.weighted;
  rep["max_relative_residual"] = t.residuals.max_relative_residual;
  rep["exact_zero"] = t.residuals.exact_zero;
  emit(c, rep);
  if (!c.output.empty()) {
    ComplexDocument out = doc;
    out.stresses["trace_" + std::to_string(k)] = t.stress;
    save_document(c.output, out);
  }
  if (!geometry.empty()) {
    std::vector<VecD> pts;
    for (size_t v = 0; v < inst.K.count(0); ++v) pts.push_back(inst.R.coord_d(int(v)));
    std::vector<std::pair<int, int>> segs;
    for (size_t e = 0; e < inst.K.count(1); ++e)
      segs.push_back({inst.K.cell(1, int(e)).vertices[0], inst.K.cell(1, int(e)).vertices[1]});
    save_polyline(geometry, pts, segs);
  }
  std::cout << "trace to level " << k << ": max residual "
            << t.residuals.max_relative_residual
            << (t.residuals.exact_zero ? " (exactly zero)" : "") << "\n";
  return 0;
}

int cmd_minkowski(const Common& c) {
  auto [K, R] = load_input(c);
  if (K.dim() + 1 != R.ambient || !K.closed()) {
    std::cout << "minkowski check expects a closed (ambient-1)-complex\n";
    return kExitValidation;
  }
  int d = R.ambient;
  VecQ centroid(size_t(d), Rational(0));
  for (const auto& p : R.coords) centroid = vadd(centroid, p);
  centroid = vscale(Rational(1, unsigned(R.coords.size())), centroid);

  VecD acc(size_t(d), 0.0);
  double total = 0;
  for (size_t f = 0; f < K.count(K.dim()); ++f) {
    std::vector<VecQ> pts;
    for (int v : K.cell(K.dim(), int(f)).vertices) pts.push_back(R.coords[size_t(v)]);
    std::vector<VecQ> edges;
    for (size_t i = 1; i < pts.size(); ++i) edges.push_back(vsub(pts[i], pts[0]));
    VecD n = to_vecd(generalized_cross(d, edges));
    double nn = norm_d(n);
    if (nn == 0) continue;
    for (auto& x : n) x /= nn;
    if (vdot(n, to_vecd(vsub(pts[0], centroid))) < 0)
      for (auto& x : n) x = -x;
    double vol = cell_volume(K, R, K.dim(), int(f));
    total += vol;
    for (int t = 0; t < d; ++t) acc[size_t(t)] += vol * n[size_t(t)];
  }
  double rel = norm_d(acc) / total;
  json rep;
  rep["relative_residual"] = rel;
  emit(c, rep);
  std::cout << "minkowski residual " << rel << " (relative)\n";
  return rel <= 1e-9 ? 0 : 1;
}

int cmd_spiderweb(const Common& c, int k) {
  auto [K, R] = load_input(c);
  PositiveStressResult res = find_positive_stress(K, R, k);
  json rep;
  switch (res.status) {
    case PositiveStressStatus::Found: {
      rep["status"] = "found";
      rep["min_coefficient"] = to_double(res.min_coefficient);
      rep["weighted"] = res.stress.weighted;
      emit(c, rep);
      std::cout << "positive stress found (pre-normalization min coefficient "
                << to_double(res.min_coefficient) << ")\n";
      return 0;
    }
    case PositiveStressStatus::Infeasible: {
      rep["status"] = "infeasible";
      json cert = json::array();
      for (const auto& [cell, y] : res.certificate)
        cert.push_back({{"cell", cell}, {"weight", rational_to_string(y)}});
      rep["certificate"] = cert;
      emit(c, rep);
      std::cout << "no positive stress; separating functional on "
                << res.certificate.size() << " cells\n";
      return kExitInfeasible;
    }
    default:
      rep["status"] = "ambiguous";
      emit(c, rep);
      std::cout << "numerically ambiguous; rerun in exact mode\n";
      return kExitAmbiguous;
  }
}

int cmd_jacobian(const Common& c, int k) {
  auto [K, R] = load_input(c);
  auto O = orient(K);
  if (!O) throw ComplexError("complex is not orientable");
  int d = K.dim();
  StressBasis b = stress_basis(K, R, d);
  if (b.basis.empty()) {
    std::cout << "Stress_" << d << " is trivial; nothing to differentiate\n";
    return kExitValidation;
  }
  std::mt19937_64 rng(c.seed);
  StressAssignment base = b.basis[0];
  base.density.reset();
  for (size_t j = 1; j < b.basis.size(); ++j) {
    double t = double(rng() % 2001) / 1000.0 - 1.0;
    base = axpy_stress(base, t, b.basis[j]);
  }
  JacobianReport rep = jacobian_rank(K, R, *O, k, base);
  json out;
  out["rank"] = rep.rank;
  out["max_possible"] = rep.max_possible;
  out["gap"] = rep.gap;
  out["singular_values"] = rep.singular_values;
  out["step_ok"] = rep.step_ok;
  emit(c, out);
  std::cout << "jacobian rank " << rep.rank << " (max possible "
            << rep.max_possible << "), gap " << rep.gap << "\n";
  if (!rep.step_ok) return kExitAmbiguous;
  return 0;
}

int cmd_gen(const Common& c, GeneratorConfig cfg) {
  cfg.seed = c.seed;
  cfg.mode = mode_of(c);
  Generated g = generate(cfg);
  ComplexDocument doc = to_document(g);
  doc.provenance["seed"] = std::to_string(cfg.seed);
  doc.provenance["n"] = std::to_string(cfg.n);
  doc.provenance["ambient"] = std::to_string(cfg.ambient);
  doc.provenance["denominator_bound"] = std::to_string(cfg.denominator_bound);
  if (c.output.empty()) {
    std::cout << serialize_document(doc);
  } else {
    save_document(c.output, doc);
    std::cout << "wrote " << c.output << " (" << g.family << ", "
              << g.K.count(0) << " vertices)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stress spaces, reciprocal diagrams and trace maps on PL cell complexes"};
  app.require_subcommand(1);

  Common c;
  int k = 2, ambient = 3;
  std::string stress_name = "induced", geometry;
  GeneratorConfig cfg;

  auto* check = app.add_subcommand("check", "validate a complex document");
  add_common(check, c);
  auto* fvec = app.add_subcommand("fvector", "f-vector and g/h numbers");
  add_common(fvec, c);
  fvec->add_option("--ambient", ambient, "ambient dimension for g/h");
  auto* dim = app.add_subcommand("dim", "dimension of Stress_k");
  add_common(dim, c);
  dim->add_option("--k", k)->required();
  auto* basis = app.add_subcommand("basis", "basis of Stress_k");
  add_common(basis, c);
  basis->add_option("--k", k)->required();
  auto* verify = app.add_subcommand("verify", "verify a named stress");
  add_common(verify, c);
  verify->add_option("--k", k)->required();
  verify->add_option("--stress", stress_name);
  auto* rec = app.add_subcommand("reciprocal", "build the reciprocal diagram");
  add_common(rec, c);
  rec->add_option("--stress", stress_name);
  rec->add_option("--geometry", geometry, "polyline export path");
  auto* tr = app.add_subcommand("trace", "trace a d-stress to level k");
  add_common(tr, c);
  tr->add_option("--k", k)->required();
  tr->add_option("--stress", stress_name);
  tr->add_option("--geometry", geometry, "polyline export path");
  auto* mink = app.add_subcommand("minkowski", "Minkowski identity residual");
  add_common(mink, c);
  auto* web = app.add_subcommand("spiderweb", "search for a positive stress");
  add_common(web, c);
  web->add_option("--k", k)->required();
  auto* jac = app.add_subcommand("jacobian", "numerical Jacobian rank of the trace");
  add_common(jac, c);
  jac->add_option("--k", k)->required();
  auto* gen = app.add_subcommand("gen", "generate an example complex");
  add_common(gen, c, false);
  gen->add_option("family", cfg.family,
                  "cross-polytope|schlegel-simplex|stacked-sphere|convex-polytope|"
                  "lifted-grid|twisted-hexagon")
      ->required();
  gen->add_option("--n", cfg.n, "size parameter");
  gen->add_option("--ambient", cfg.ambient, "ambient dimension");
  gen->add_option("--denominator-bound", cfg.denominator_bound);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(c);
    if (fvec->parsed()) return cmd_fvector(c, ambient);
    if (dim->parsed()) return cmd_dim(c, k);
    if (basis->parsed()) return cmd_basis(c, k);
    if (verify->parsed()) return cmd_verify(c, k, stress_name);
    if (rec->parsed()) return cmd_reciprocal(c, stress_name, geometry);
    if (tr->parsed()) return cmd_trace(c, k, stress_name, geometry);
    if (mink->parsed()) return cmd_minkowski(c);
    if (web->parsed()) return cmd_spiderweb(c, k);
    if (jac->parsed()) return cmd_jacobian(c, k);
    if (gen->parsed()) return cmd_gen(c, cfg);
  } catch (const ComplexError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
