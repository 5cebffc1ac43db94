#include "sympos/cli.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "sympos/validate.hpp"

namespace sympos {

namespace {

Json admissibility_json(const AdmissibilityReport& a) {
  return Json{{"densely_defined", a.densely_defined},
              {"dense_margin", a.dense_margin},
              {"convolution_convergent", a.convolution_convergent},
              {"convolution_margin", a.convolution_margin},
              {"nondegenerate", a.nondegenerate},
              {"det_abs", a.det_abs},
              {"marginal", a.marginal}};
}

Json run_weight(const Json& payload, const CliOptions& opts) {
  const QuadraticWeight w = parse_weight(payload.at("Phi"));
  const auto [herm, plh] = split_herm_plh(w);
  const HolomorphicQuadraticForm psi = polarize(w);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> dist;
  double max_err = 0.0;
  for (int k = 0; k < 20; ++k) {
    CVector x(w.dim());
    for (int i = 0; i < w.dim(); ++i) x(i) = Complex(dist(rng), dist(rng));
    CVector xz(2 * w.dim());
    xz << x, x.conjugate();
    const double err = std::abs(psi(xz) - Complex(w(x), 0.0));
    max_err = std::max(max_err, err / (1.0 + x.squaredNorm()));
  }

  return Json{{"dim", w.dim()},
              {"strictly_plurisubharmonic", w.strictly_plurisubharmonic(opts.tol)},
              {"levi_min_eigenvalue", w.levi_min_eigenvalue()},
              {"pluriharmonic", w.is_pluriharmonic(opts.tol)},
              {"split", Json{{"herm", to_json(herm)}, {"plh", to_json(plh)}}},
              {"polarization_Q", to_json(psi.hessian())},
              {"polarization_identity_max_error", max_err}};
}

Json run_lagrangian(const Json& payload, const CliOptions& opts) {
  const QuadraticWeight phi0 = parse_weight(payload.at("Phi0"));
  CMatrix basis;
  try {
    basis = parse_cmatrix(payload.at("basis"), 2 * phi0.dim(), phi0.dim());
    const CLagrangianPlane plane(basis);
    return Json{{"positivity", to_json(lagrangian_positivity(plane, phi0, opts.tol))}};
  } catch (const NotLagrangian& e) {
    throw InvalidInstance(std::string("lagrangian instance: ") + e.what(),
                          e.offending_value());
  }
}

Json run_map(const Json& payload, const CliOptions& opts) {
  const QuadraticWeight phi1 = parse_weight(payload.at("Phi1"));
  const QuadraticWeight phi2 = parse_weight(payload.at("Phi2"));
  ComplexCanonicalMap M = [&] {
    try {
      return ComplexCanonicalMap(parse_cmatrix(payload.at("M"), 2 * phi1.dim(), 2 * phi1.dim()));
    } catch (const NotSymplectic& e) {
      throw InvalidInstance(std::string("map instance: ") + e.what(), e.offending_value());
    }
  }();
  Json out{{"positivity", to_json(map_positivity(M, phi1, phi2, opts.tol))}};
  try {
    const TriEquivalence p = positivity_tri_equivalence(M, phi1, phi2, opts.tol);
    out["tri_equivalence"] = Json{{"direct", to_string(p.direct)},
                         {"lagrangian", to_string(p.lagrangian)},
                         {"sign_check", to_string(p.sign_check)},
                         {"margins", Json::array({p.margins[0], p.margins[1], p.margins[2]})},
                         {"agree", p.agree}};
  } catch (const Error& e) {
    out["tri_equivalence"] = Json{{"error", e.what()}};
  }
  return out;
}

Json run_fio(const Json& payload, const CliOptions& opts) {
  const Json& pj = payload.at("phase");
  const QuadraticWeight phi2 = parse_weight(payload.at("Phi2"));
  const int nx = pj.at("n_x").get<int>();
  const int ny = pj.at("n_y").get<int>();
  const int nt = pj.at("n_theta").get<int>();
  NondegeneratePhase phase = [&] {
    try {
      return NondegeneratePhase(
          nx, ny, nt,
          HolomorphicQuadraticForm(parse_cmatrix(pj.at("Q"), nx + ny + nt, nx + ny + nt)));
    } catch (const DegeneratePhase& e) {
      throw InvalidInstance(std::string("fio instance: ") + e.what(), e.offending_value());
    }
  }();

  const ImageWeightResult iw = image_weight(phase, phi2);
  const BergmanKernel kernel = kernel_from_phase(phase, phi2);
  const DominationReport dom =
      kernel_domination_check(kernel.Psi, iw.weight, phi2, opts.tol);

  Json out{{"image_weight", to_json(iw.weight)},
           {"eliminated_signature",
            Json::array({iw.eliminated_positive, iw.eliminated_negative, iw.eliminated_zero})},
           {"kernel", Json{{"amplitude", to_json(kernel.amplitude)},
                           {"Psi_Q", to_json(kernel.Psi.hessian())}}},
           {"domination", Json{{"min_eigenvalue", dom.min_eigenvalue},
                               {"kernel_dim", dom.kernel_dim},
                               {"psd", dom.psd}}}};
  if (nx == ny) {
    const ComplexCanonicalMap kappa = canonical_map_of_phase(phase);
    out["kappa"] = to_json(kappa.matrix());
    out["kappa_recovered_residual"] =
        (map_from_kernel(kernel.Psi, polarize(phi2)).matrix() - kappa.matrix()).norm();
  }
  return out;
}

Json run_toeplitz(const Json& payload, const CliOptions& opts) {
  const QuadraticWeight phi0 = parse_weight(payload.at("Phi0"));
  const ComplexQuadraticSymbolExponent q = parse_symbol(payload.at("q"));
  const ToeplitzReport rep = analyze(q, phi0, opts.tol);

  Json out{{"admissibility", admissibility_json(rep.admissible)},
           {"trace_class", rep.trace_class},
           {"unitary_up_to_phase", rep.unitary_up_to_phase}};
  if (rep.weyl) {
    out["weyl"] = Json{{"amplitude", to_json(rep.weyl->amplitude)},
                       {"F_Q", to_json(rep.weyl->phase.hessian())},
                       {"lambda_exponent", to_json(rep.weyl->lambda_exponent)}};
    out["unitary_amplitude_defect"] = rep.unitary_amplitude_defect;
  }
  if (rep.kappa) {
    out["kappa"] = to_json(rep.kappa->matrix());
    out["kappa_cayley_residual"] = rep.kappa_cayley_residual;
  }
  if (rep.bounded) out["bounded"] = to_json(*rep.bounded);
  out["trace"] = rep.trace ? to_json(*rep.trace) : Json(nullptr);
  return out;
}

Json run_validate(const Json& payload, const CliOptions& opts) {
  const ComplexQuadraticSymbolExponent q = parse_symbol(payload.at("q"));
  std::optional<EntryMethod> force;
  if (payload.contains("method")) {
    const std::string m = payload.at("method").get<std::string>();
    if (m == "analytic")
      force = EntryMethod::Analytic;
    else if (m == "quadrature")
      force = EntryMethod::Quadrature;
    else
      throw InvalidInstance("validate instance: unknown method " + m);
  }
  const TruncatedOperator T = truncated_matrix(q, opts.truncation, force);
  const SpectralReport rep = spectral_report(T);

  Json out{{"N", T.N},
           {"method", T.method == EntryMethod::Analytic ? "analytic" : "quadrature"},
           {"operator_norm", rep.operator_norm},
           {"singular_values", to_json(rep.singular_values)},
           {"trace_partial", to_json(rep.trace_partial)},
           {"unitary_defect", rep.unitary_defect},
           {"decay_ratio", rep.decay_ratio}};

  if (payload.contains("compare_report")) {
    std::ifstream in(payload.at("compare_report").get<std::string>());
    if (!in) throw InvalidInstance("validate instance: cannot open compare_report");
    Json prior = Json::parse(in);
    Json cmp;
    const Json& res = prior.at("results").at(0);
    if (res.contains("bounded") && res["bounded"].contains("status"))
      cmp["symbolic_status"] = res["bounded"]["status"];
    if (res.contains("trace") && !res["trace"].is_null()) {
      const Complex t = parse_complex(res["trace"]);
      cmp["trace_abs_difference"] = std::abs(t - rep.trace_partial);
    }
    cmp["unitary_flag_consistent"] =
        !res.value("unitary_up_to_phase", false) || rep.unitary_defect < 1e-6;
    out["comparison"] = cmp;
  }
  return out;
}

void render_element(const std::string& kind, const Json& e, std::ostream& os) {
  auto margin = [](const Json& v) {
    std::ostringstream s;
    s << v["status"].get<std::string>() << " (margin " << v["min_eigenvalue"].get<double>()
      << ", routes " << (v["route_agreement"].get<bool>() ? "agree" : "DISAGREE") << ")";
    return s.str();
  };
  if (kind == "weight") {
    os << "  strictly psh: " << (e["strictly_plurisubharmonic"].get<bool>() ? "yes" : "no")
       << "  levi min eig: " << e["levi_min_eigenvalue"].get<double>()
       << "  pluriharmonic: " << (e["pluriharmonic"].get<bool>() ? "yes" : "no")
       << "  polarization err: " << e["polarization_identity_max_error"].get<double>() << "\n";
  } else if (kind == "lagrangian") {
    os << "  positivity: " << margin(e["positivity"]) << "\n";
  } else if (kind == "map") {
    os << "  positivity: " << margin(e["positivity"]) << "\n";
    if (e.contains("tri_equivalence") && !e["tri_equivalence"].contains("error"))
      os << "  tri-equivalence: " << e["tri_equivalence"]["direct"].get<std::string>() << " / "
         << e["tri_equivalence"]["lagrangian"].get<std::string>() << " / "
         << e["tri_equivalence"]["sign_check"].get<std::string>()
         << (e["tri_equivalence"]["agree"].get<bool>() ? " (equal)" : " (MISMATCH)") << "\n";
  } else if (kind == "fio") {
    os << "  kernel amplitude: [" << e["kernel"]["amplitude"][0].get<double>() << ", "
       << e["kernel"]["amplitude"][1].get<double>() << "]"
       << "  domination min eig: " << e["domination"]["min_eigenvalue"].get<double>()
       << " (kernel dim " << e["domination"]["kernel_dim"].get<int>() << ")\n";
  } else if (kind == "toeplitz") {
    os << "  densely defined: "
       << (e["admissibility"]["densely_defined"].get<bool>() ? "yes" : "no");
    if (e.contains("bounded")) os << "  bounded: " << margin(e["bounded"]);
    os << "  trace class: " << (e["trace_class"].get<bool>() ? "yes" : "no")
       << "  unitary(phase): " << (e["unitary_up_to_phase"].get<bool>() ? "yes" : "no");
    if (!e["trace"].is_null())
      os << "  trace: [" << e["trace"][0].get<double>() << ", " << e["trace"][1].get<double>()
         << "]";
    os << "\n";
  } else if (kind == "validate") {
    os << "  N=" << e["N"].get<int>() << " (" << e["method"].get<std::string>() << ")"
       << "  norm: " << e["operator_norm"].get<double>()
       << "  trace: [" << e["trace_partial"][0].get<double>() << ", "
       << e["trace_partial"][1].get<double>() << "]"
       << "  unitary defect: " << e["unitary_defect"].get<double>()
       << "  decay ratio: " << e["decay_ratio"].get<double>() << "\n";
  }
}

}  // namespace

Json run_element(const std::string& kind, const Json& payload, const CliOptions& opts) {
  if (kind == "weight") return run_weight(payload, opts);
  if (kind == "lagrangian") return run_lagrangian(payload, opts);
  if (kind == "map") return run_map(payload, opts);
  if (kind == "fio") return run_fio(payload, opts);
  if (kind == "toeplitz") return run_toeplitz(payload, opts);
  if (kind == "validate") return run_validate(payload, opts);
  throw InvalidInstance("unknown instance kind: " + kind);
}

Json run_instance(const Json& instance, const CliOptions& opts) {
  if (!instance.is_object() || !instance.contains("kind") || !instance.contains("payload"))
    throw InvalidInstance("instance must contain kind and payload");
  const std::string kind = instance["kind"].get<std::string>();

  CliOptions local = opts;
  if (instance.contains("options")) {
    const Json& o = instance["options"];
    if (o.contains("tol")) local.tol = o["tol"].get<double>();
    if (o.contains("seed")) local.seed = o["seed"].get<std::uint64_t>();
    if (o.contains("truncation")) local.truncation = o["truncation"].get<int>();
  }

  const auto t0 = std::chrono::steady_clock::now();
  Json results = Json::array();
  if (instance.contains("sweep")) {
    if (!instance["sweep"].is_array())
      throw InvalidInstance("sweep must be an array of payload patches");
    for (const auto& patch : instance["sweep"]) {
      Json payload = instance["payload"];
      payload.merge_patch(patch);
      results.push_back(run_element(kind, payload, local));
    }
  } else {
    results.push_back(run_element(kind, instance["payload"], local));
  }
  const auto t1 = std::chrono::steady_clock::now();

  Json report{{"schema_version", "1"},
              {"kind", kind},
              {"options", Json{{"tol", local.tol},
                               {"seed", local.seed},
                               {"truncation", local.truncation}}},
              {"results", std::move(results)}};
  report["timing_ms"] =
      opts.timings
          ? Json(std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count())
          : Json(0);
  return report;
}

std::string render_text(const Json& report) {
  std::ostringstream os;
  const std::string kind = report["kind"].get<std::string>();
  os << "kind: " << kind << "  (tol " << report["options"]["tol"].get<double>() << ", seed "
     << report["options"]["seed"].get<std::uint64_t>() << ", truncation "
     << report["options"]["truncation"].get<int>() << ")\n";
  int idx = 0;
  for (const auto& e : report["results"]) {
    os << "[" << idx++ << "]\n";
    render_element(kind, e, os);
  }
  return os.str();
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"positivity of complex canonical transformations and Gaussian Toeplitz "
               "operators on Bargmann spaces"};
  app.require_subcommand(1);

  CliOptions opts;
  std::string instance_path;
  app.add_option("--tol", opts.tol, "verdict tolerance (scaled by input norms)");
  app.add_option("--seed", opts.seed, "seed for sampled self-checks");
  app.add_option("--truncation", opts.truncation, "truncation order for the oracle");
  app.add_option("--format", opts.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", opts.output, "write the JSON report to this file");
  app.add_flag("--timings", opts.timings, "record wall-clock timing in the report");

  const char* kinds[] = {"weight", "lagrangian", "map", "fio", "toeplitz", "validate"};
  for (const char* k : kinds) {
    auto* sub = app.add_subcommand(k, std::string("run a ") + k + " instance");
    sub->fallthrough();
    sub->add_option("instance", instance_path, "instance JSON file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    std::ifstream in(instance_path);
    if (!in) throw InvalidInstance("cannot open instance file: " + instance_path);
    Json instance;
    try {
      instance = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw InvalidInstance(std::string("instance is not valid JSON: ") + e.what());
    }
    const std::string sub = app.get_subcommands().front()->get_name();
    if (instance.value("kind", sub) != sub)
      throw InvalidInstance("instance kind does not match the subcommand");
    if (!instance.contains("kind")) instance["kind"] = sub;

    const Json report = run_instance(instance, opts);
    const std::string canonical = canonical_dump(report, 2);
    if (!opts.output.empty()) {
      std::ofstream out(opts.output);
      if (!out) throw InvalidInstance("cannot open output file: " + opts.output);
      out << canonical;
    }
    if (opts.format == "json")
      std::fputs(canonical.c_str(), stdout);
    else
      std::fputs(render_text(report).c_str(), stdout);
    return kExitOk;
  } catch (const InvalidInstance& e) {
    std::fprintf(stderr, "error (invalid input): %s\n", e.what());
    return kExitInvalid;
  } catch (const Error& e) {
    std::fprintf(stderr, "error (numerical): %s [offending value %.3e]\n", e.what(),
                 e.offending_value());
    return kExitNumerical;
  }
}

}  // namespace sympos
