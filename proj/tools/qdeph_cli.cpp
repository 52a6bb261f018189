#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdeph/dynamics.hpp"
#include "qdeph/ensembles.hpp"
#include "qdeph/io.hpp"
#include "qdeph/model.hpp"
#include "qdeph/pt.hpp"
#include "qdeph/spectral.hpp"
#include "qdeph/tomography.hpp"
#include "qdeph/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qdeph;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;      // validation / usage errors
constexpr int kExitContract = 2;     // numerical-contract failures

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write: " + out_path);
  out << text;
}

Bipartition parse_partition(int n, const std::string& spec) {
  std::vector<int> qubits;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ','))
    qubits.push_back(std::stoi(item));
  return Bipartition::make(n, qubits);
}

std::string partition_string(const Bipartition& part) {
  std::string s;
  for (size_t i = 0; i < part.qubits.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(part.qubits[i]);
  }
  return s;
}

DensityMatrix parse_state(int n, const std::string& spec) {
  if (spec == "plus") return product_plus_state(n);
  auto parse_pair = [&](const std::string& body) {
    auto comma = body.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("state pair must be i,j");
    return std::pair<int, int>{std::stoi(body.substr(0, comma)),
                               std::stoi(body.substr(comma + 1))};
  };
  if (spec.rfind("bell:", 0) == 0) {
    auto [i, j] = parse_pair(spec.substr(5));
    return bell_state(i, j, n);
  }
  if (spec.rfind("bar:", 0) == 0) {
    auto [i, j] = parse_pair(spec.substr(4));
    return bar_state(i, j, n);
  }
  throw std::invalid_argument("unknown state spec: " + spec);
}

struct Args {
  std::string model_path;
  std::string out_path;
  std::string partition;
  bool all = false;
  bool csv = false;
  int n = 3;
  int n_min = 4, n_max = 24;
  double t = 0.5, tmax = 10.0, theta = 0.0, r = 1.0, alpha = 0.0;
  double sigma = 0.0;
  double max_dev = 0.02;
  int points = 60;
  int64_t samples = 10000, traj = 100000;
  uint64_t seed = 1;  // fixed default, never wall-clock
  int threads = 0;
  std::string state = "plus";
  std::string case_name;
};

int run_case(const Args& a) {
  DephasingModel m;
  if (a.case_name == "c1")
    m = case_c1(a.n);
  else if (a.case_name == "c2")
    m = case_c2(a.n);
  else if (a.case_name == "c3")
    m = case_c3(a.n);
  else if (a.case_name == "gtheta")
    m = g_theta(a.theta);
  else if (a.case_name == "twoqubit")
    m = two_qubit_family(a.r, a.alpha);
  else if (a.case_name == "ginibre")
    m = sample_ginibre(a.n, a.seed);
  else
    throw std::invalid_argument("unknown case: " + a.case_name);
  emit(model_to_json(m), a.out_path);
  return kExitOk;
}

int run_witness(const Args& a) {
  DephasingModel m = read_model(a.model_path);
  struct Row {
    std::string part;
    double lambda;
    bool entangling;
  };
  std::vector<Row> rows;
  double tol = entangling_threshold(m.C);
  if (a.all) {
    for (const Bipartition& part : enumerate_bipartitions(m.n)) {
      double lam = witness(m, part);
      rows.push_back({partition_string(part), lam, lam < -tol});
    }
  } else {
    Bipartition part = a.partition.empty()
                           ? Bipartition::make(m.n, {0})
                           : parse_partition(m.n, a.partition);
    double lam = witness(m, part);
    rows.push_back({partition_string(part), lam, lam < -tol});
  }

  std::string text;
  if (a.csv) {
    text = "partition,lambda_min,entangling\n";
    for (const Row& r : rows)
      text += "\"" + r.part + "\"," + format_double(r.lambda) + "," +
              (r.entangling ? "1" : "0") + "\n";
  } else {
    ordered_json doc = ordered_json::array();
    for (const Row& r : rows)
      doc.push_back({{"partition", r.part},
                     {"lambda_min", r.lambda},
                     {"entangling", r.entangling}});
    text = doc.dump(2) + "\n";
  }
  emit(text, a.out_path);
  return kExitOk;
}

int run_evolve(const Args& a) {
  DephasingModel m = read_model(a.model_path);
  DensityMatrix rho = evolve(parse_state(m.n, a.state), m, a.t);
  ordered_json doc;
  doc["n"] = rho.n;
  doc["t"] = a.t;
  ordered_json re = ordered_json::array(), im = ordered_json::array();
  for (Eigen::Index i = 0; i < rho.rho.rows(); ++i) {
    ordered_json rrow = ordered_json::array(), irow = ordered_json::array();
    for (Eigen::Index j = 0; j < rho.rho.cols(); ++j) {
      rrow.push_back(rho.rho(i, j).real());
      irow.push_back(rho.rho(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  doc["rho_re"] = std::move(re);
  doc["rho_im"] = std::move(im);
  emit(doc.dump(2) + "\n", a.out_path);
  return kExitOk;
}

int run_negativity(const Args& a) {
  DephasingModel m = read_model(a.model_path);
  Bipartition part = a.partition.empty() ? Bipartition::make(m.n, {0})
                                         : parse_partition(m.n, a.partition);
  auto grid = geometric_grid(1e-3, a.tmax, a.points);
  auto trace = negativity_trace(m, parse_state(m.n, a.state), part, grid);
  std::string text = "t,E_N\n";
  for (const auto& [t, en] : trace)
    text += format_double(t) + "," + format_double(en) + "\n";
  emit(text, a.out_path);
  return kExitOk;
}

int run_ensemble_fig2(const Args& a) {
  ScanConfig config{3, a.samples, a.seed, 0.02, a.threads};
  Fig2Result result = fig2_scan(config);
  std::string text = "rel_imag_norm,lambda_min\n";
  for (const EnsembleRecord& rec : result.records)
    text += format_double(rec.rel_imag_norm) + "," +
            format_double(rec.lambda_min) + "\n";
  emit(text, a.out_path);
  return kExitOk;
}

int run_ensemble_fig3(const Args& a) {
  ScanConfig config{a.n, a.samples, a.seed, 0.02, a.threads};
  auto rows = fig3_scan(config);
  std::string text = "rank_proxy,lambda_min\n";
  for (const auto& [proxy, lam] : rows)
    text += format_double(proxy) + "," + format_double(lam) + "\n";
  emit(text, a.out_path);
  return kExitOk;
}

int run_ensemble_fvsn(const Args& a) {
  auto rows = fraction_vs_n(a.n_min, a.n_max, a.samples, a.seed, a.threads);
  std::string text = "n,f,stderr\n";
  for (const FractionPoint& p : rows)
    text += std::to_string(p.n) + "," + format_double(p.f) + "," +
            format_double(p.stderr_f) + "\n";
  emit(text, a.out_path);
  return kExitOk;
}

int run_tomo_predict(const Args& a) {
  DephasingModel m = read_model(a.model_path);
  MeasurementSet meas = predict_measurements(m);
  ordered_json doc;
  doc["n"] = meas.n;
  auto vec = [](const RealVector& v) {
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
  };
  doc["gamma_single"] = vec(meas.gamma_single);
  doc["gamma_pair"] = vec(meas.gamma_pair);
  doc["omega_pair"] = vec(meas.omega_pair);
  doc["gamma_bar"] = vec(meas.gamma_bar);
  doc["omega_bar"] = vec(meas.omega_bar);
  emit(doc.dump(2) + "\n", a.out_path);
  return kExitOk;
}

int run_tomo_roundtrip(const Args& a) {
  DephasingModel m = read_model(a.model_path);
  auto grid = geometric_grid(0.01, 1.0, 40);
  RoundtripReport report = roundtrip(m, a.sigma, grid, a.seed);
  ordered_json doc;
  doc["err_re_c"] = report.err_re_c;
  doc["err_im_c"] = report.err_im_c;
  doc["err_h"] = report.err_h;
  doc["rank"] = report.rank;
  emit(doc.dump(2) + "\n", a.out_path);
  return kExitOk;
}

int run_verify_classical(const Args& a) {
  DephasingModel m = read_model(a.model_path);
  ClassicalMcResult result = classical_mc(m, product_plus_state(m.n), a.t,
                                          a.traj, a.seed, a.threads);
  bool pass = result.max_dev <= a.max_dev;
  ordered_json doc;
  doc["deviation"] = result.max_dev;
  doc["pass"] = pass;
  emit(doc.dump(2) + "\n", a.out_path);
  return pass ? kExitOk : kExitContract;
}

int run_verify_feedforward(const Args& a) {
  DephasingModel m = read_model(a.model_path);
  double worst = 0.0;
  for (const LindbladComponent& comp : lindblad_decomposition(m.C))
    worst = std::max(worst, feedforward_equiv(z_sum_operator(comp.l)));
  bool pass = worst <= 1e-12;
  ordered_json doc;
  doc["deviation"] = worst;
  doc["pass"] = pass;
  emit(doc.dump(2) + "\n", a.out_path);
  return pass ? kExitOk : kExitContract;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdeph: correlated dephasing environments, partial-transpose "
               "entanglement witness, dynamics, tomography"};
  app.require_subcommand(1);
  Args a;
  app.add_option("--threads", a.threads,
                 "worker threads (0 = auto; QDEPH_THREADS env fallback)");

  auto* c_case = app.add_subcommand(
      "case", "Build a canonical model. Output schema: model JSON "
              "{n, c_re, c_im, h}");
  c_case->add_option("name", a.case_name, "c1|c2|c3|gtheta|twoqubit|ginibre")
      ->required();
  c_case->add_option("--n", a.n, "qubit count");
  c_case->add_option("--theta", a.theta, "angle for gtheta");
  c_case->add_option("--r", a.r, "amplitude for twoqubit");
  c_case->add_option("--alpha", a.alpha, "phase for twoqubit");
  c_case->add_option("--seed", a.seed, "seed for ginibre");
  c_case->add_option("--out", a.out_path, "output path (default stdout)");

  auto* c_wit = app.add_subcommand(
      "witness", "Entanglement witness. Output schema: records "
                 "{partition, lambda_min, entangling}");
  c_wit->add_option("--model", a.model_path)->required();
  c_wit->add_option("--partition", a.partition, "comma-separated qubits");
  c_wit->add_flag("--all", a.all, "all bipartitions containing qubit 0");
  c_wit->add_flag("--csv", a.csv, "CSV instead of JSON");
  c_wit->add_option("--out", a.out_path);

  auto* c_evolve = app.add_subcommand(
      "evolve", "Exact state evolution. Output schema: JSON "
                "{n, t, rho_re, rho_im}");
  c_evolve->add_option("--model", a.model_path)->required();
  c_evolve->add_option("--state", a.state, "plus|bell:i,j|bar:i,j");
  c_evolve->add_option("--t", a.t, "evolution time");
  c_evolve->add_option("--out", a.out_path);

  auto* c_neg = app.add_subcommand(
      "negativity", "Logarithmic negativity trace. Output schema: CSV "
                    "columns t,E_N");
  c_neg->add_option("--model", a.model_path)->required();
  c_neg->add_option("--partition", a.partition);
  c_neg->add_option("--state", a.state, "plus|bell:i,j|bar:i,j");
  c_neg->add_option("--tmax", a.tmax);
  c_neg->add_option("--points", a.points);
  c_neg->add_option("--csv,--out", a.out_path, "output CSV path");

  auto* c_ens = app.add_subcommand("ensemble", "Random-environment scans");
  c_ens->require_subcommand(1);
  auto* c_fig2 = c_ens->add_subcommand(
      "fig2", "Three-qubit scan. Output schema: CSV columns "
              "rel_imag_norm,lambda_min");
  auto* c_fig3 = c_ens->add_subcommand(
      "fig3", "Rank-proxy scan. Output schema: CSV columns "
              "rank_proxy,lambda_min");
  auto* c_fvsn = c_ens->add_subcommand(
      "fvsn", "Entangling fraction vs size. Output schema: CSV columns "
              "n,f,stderr");
  for (CLI::App* sub : {c_fig2, c_fig3, c_fvsn}) {
    sub->add_option("--samples", a.samples);
    sub->add_option("--seed", a.seed);
    sub->add_option("--out", a.out_path);
  }
  c_fig3->add_option("--n", a.n, "qubit count");
  c_fvsn->add_option("--nmin", a.n_min);
  c_fvsn->add_option("--nmax", a.n_max);

  auto* c_tomo = app.add_subcommand("tomo", "Tomography protocol");
  c_tomo->require_subcommand(1);
  auto* c_pred = c_tomo->add_subcommand(
      "predict", "Predicted observables. Output schema: JSON {n, "
                 "gamma_single, gamma_pair, omega_pair, gamma_bar, omega_bar}");
  c_pred->add_option("--model", a.model_path)->required();
  c_pred->add_option("--out,--json", a.out_path);
  auto* c_round = c_tomo->add_subcommand(
      "roundtrip", "End-to-end recovery. Output schema: JSON "
                   "{err_re_c, err_im_c, err_h, rank}");
  c_round->add_option("--model", a.model_path)->required();
  c_round->add_option("--sigma", a.sigma, "measurement noise");
  c_round->add_option("--seed", a.seed);
  c_round->add_option("--out,--json", a.out_path);

  auto* c_verify = app.add_subcommand("verify", "Equivalence verifications");
  c_verify->require_subcommand(1);
  auto* c_cl = c_verify->add_subcommand(
      "classical", "Classical-noise Monte Carlo vs analytic evolution. "
                   "Output schema: JSON {deviation, pass}");
  c_cl->add_option("--model", a.model_path)->required();
  c_cl->add_option("--t", a.t);
  c_cl->add_option("--traj", a.traj);
  c_cl->add_option("--seed", a.seed);
  c_cl->add_option("--max-dev", a.max_dev, "pass threshold");
  c_cl->add_option("--out", a.out_path);
  auto* c_ff = c_verify->add_subcommand(
      "feedforward", "Measurement-and-feedforward identity per Lindblad "
                     "component. Output schema: JSON {deviation, pass}");
  c_ff->add_option("--model", a.model_path)->required();
  c_ff->add_option("--out", a.out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitInvalid : kExitOk;
  }

  try {
    if (*c_case) return run_case(a);
    if (*c_wit) return run_witness(a);
    if (*c_evolve) return run_evolve(a);
    if (*c_neg) return run_negativity(a);
    if (*c_fig2) return run_ensemble_fig2(a);
    if (*c_fig3) return run_ensemble_fig3(a);
    if (*c_fvsn) return run_ensemble_fvsn(a);
    if (*c_pred) return run_tomo_predict(a);
    if (*c_round) return run_tomo_roundtrip(a);
    if (*c_cl) return run_verify_classical(a);
    if (*c_ff) return run_verify_feedforward(a);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
